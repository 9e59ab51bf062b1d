"""Independent brute-force oracles for the test suite.

Everything here deliberately avoids the package's algorithms:

* the group law is computed from line intersections by scanning cubic
  roots with multiplicity (no slope/third-abscissa formula; tangents are
  found by brute-force search over all lines through the point);
* minimal vectors come from literal enumeration of place quadruples;
* the quotient order comes from a Smith normal form over the sum-zero
  basis, not from HNF pivots;
* determinants are computed by Gaussian elimination over Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

INF = None  # oracle-side marker for the place at infinity


def f_eval(p, coeffs, x):
    c3, c2, c1, c0 = coeffs
    return (((c3 * x + c2) * x + c1) * x + c0) % p


def brute_places(p, coeffs):
    """Places by scanning all (x, y) pairs; infinity first, then lex."""
    pts = [INF]
    for x in range(p):
        for y in range(p):
            if y * y % p == f_eval(p, coeffs, x):
                pts.append((x, y))
    return pts


def _root_multiplicities(poly, p):
    """{x0: multiplicity} by repeated synthetic division, scanning all x."""
    out = {}
    for x0 in range(p):
        cur = list(poly)
        mult = 0
        while len(cur) > 1:
            rem = 0
            quot = [0] * (len(cur) - 1)
            for i in range(len(cur) - 1, -1, -1):
                rem = (rem * x0 + cur[i]) % p
                if i:
                    quot[i - 1] = rem
            if rem:
                break
            mult += 1
            cur = quot
        if mult:
            out[x0] = mult
    return out


def _line_through(p, coeffs, a, b):
    """(lam, mu) of the non-vertical line through a and b (or tangent at
    a when a == b), found without derivative formulas: the tangent slope
    is the unique lam making x(a) a double root of f - line^2."""
    (xa, ya), (xb, yb) = a, b
    if a != b:
        inv = pow((xb - xa) % p, p - 2, p)
        lam = (yb - ya) * inv % p
        return lam, (ya - lam * xa) % p
    c3, c2, c1, c0 = coeffs
    for lam in range(p):
        mu = (ya - lam * xa) % p
        g = [
            (c0 - mu * mu) % p,
            (c1 - 2 * lam * mu) % p,
            (c2 - lam * lam) % p,
            c3 % p,
        ]
        mults = _root_multiplicities(g, p)
        if mults.get(xa, 0) >= 2:
            return lam, mu
    raise AssertionError("no tangent line found")


def oracle_add(p, coeffs, a, b):
    """Group sum via collinearity and root multiplicity only."""
    if a is INF:
        return b
    if b is INF:
        return a
    (xa, ya), (xb, yb) = a, b
    if xa == xb and (ya + yb) % p == 0:
        return INF
    lam, mu = _line_through(p, coeffs, a, b)
    c3, c2, c1, c0 = coeffs
    g = [
        (c0 - mu * mu) % p,
        (c1 - 2 * lam * mu) % p,
        (c2 - lam * lam) % p,
        c3 % p,
    ]
    mults = _root_multiplicities(g, p)
    assert sum(mults.values()) == 3, "line must meet the cubic three times"
    mults = dict(mults)
    for known in (xa, xb):
        mults[known] -= 1
    x3 = next(x for x, m in mults.items() if m > 0)
    y_line = (lam * x3 + mu) % p
    return (x3, (-y_line) % p)


def oracle_table(p, coeffs):
    """Full addition table over the oracle places, as index pairs."""
    places = brute_places(p, coeffs)
    idx = {pt: i for i, pt in enumerate(places)}
    n = len(places)
    table = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            table[i][j] = idx[oracle_add(p, coeffs, places[i], places[j])]
    return places, table


def oracle_minimal_vectors(table):
    """Literal quadruple enumeration: every 4-subset of places, every
    split into two unordered pairs with equal group sums."""
    n = len(table)
    vectors = set()
    for quad in combinations(range(n), 4):
        a, b, c, d = quad
        for (p1, p2), (q1, q2) in (
            ((a, b), (c, d)),
            ((a, c), (b, d)),
            ((a, d), (b, c)),
        ):
            if table[p1][p2] == table[q1][q2]:
                v = [0] * n
                v[p1] = v[p2] = 1
                v[q1] = v[q2] = -1
                vectors.add(tuple(v))
                vectors.add(tuple(-x for x in v))
    return vectors


def oracle_det_gram(rows):
    """det(B B^T) by Fraction Gaussian elimination."""
    k = len(rows)
    if k == 0:
        return 1
    g = [
        [Fraction(sum(x * y for x, y in zip(r1, r2))) for r2 in rows]
        for r1 in rows
    ]
    det = Fraction(1)
    for i in range(k):
        piv = next((j for j in range(i, k) if g[j][i]), None)
        if piv is None:
            return 0
        if piv != i:
            g[i], g[piv] = g[piv], g[i]
            det = -det
        det *= g[i][i]
        inv = 1 / g[i][i]
        for j in range(i + 1, k):
            factor = g[j][i] * inv
            if factor:
                g[j] = [a - factor * b for a, b in zip(g[j], g[i])]
    assert det.denominator == 1
    return int(det)


def smith_normal_form(mat):
    """Elementary divisors of an integer matrix (full row+column SNF)."""
    m = [list(map(int, row)) for row in mat]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    divisors = []
    top = 0
    while top < min(rows, cols):
        # locate the smallest nonzero entry in the remaining block
        best = None
        for i in range(top, rows):
            for j in range(top, cols):
                if m[i][j] and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        m[top], m[bi] = m[bi], m[top]
        for row in m:
            row[top], row[bj] = row[bj], row[top]
        dirty = False
        for i in range(top + 1, rows):
            q = m[i][top] // m[top][top]
            if q:
                m[i] = [a - q * b for a, b in zip(m[i], m[top])]
            if m[i][top]:
                dirty = True
        for j in range(top + 1, cols):
            q = m[top][j] // m[top][top]
            if q:
                for row in m:
                    row[j] -= q * row[top]
            if m[top][j]:
                dirty = True
        if dirty:
            continue
        # entry must divide the rest of the block for true SNF; enforce
        pivot = m[top][top]
        fixup = False
        for i in range(top + 1, rows):
            for j in range(top + 1, cols):
                if m[i][j] % pivot:
                    m[top] = [a + b for a, b in zip(m[top], m[i])]
                    fixup = True
                    break
            if fixup:
                break
        if fixup:
            continue
        divisors.append(abs(pivot))
        top += 1
    return divisors


def oracle_quotient_order(gen_rows, n):
    """|A_{n-1} / span(gen_rows)| via SNF over the sum-zero basis
    a_j = e_j - e_{j+1}; None when the span has deficient rank."""
    coords = []
    for v in gen_rows:
        prefix = 0
        row = []
        for j in range(n - 1):
            prefix += v[j]
            row.append(prefix)
        coords.append(row)
    divisors = smith_normal_form(coords)
    if len(divisors) < n - 1:
        return None
    order = 1
    for d in divisors:
        order *= d
    return order
