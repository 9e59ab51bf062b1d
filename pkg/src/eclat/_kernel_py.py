"""Pure-Python kernels: the fallback twin of the compiled extension.

Every function here mirrors one in ``_speedups.pyx`` line for line and
must produce identical output (bit-identical for the decoder).  The
compiled module is preferred at import time; this one keeps the package
fully functional without a compiler and serves as the benchmark baseline.

Kernels operate on plain integers and numpy arrays only -- no classes
from the object layer -- so that both twins stay self-contained.
"""

from __future__ import annotations

import math

import numpy as np

IMPLEMENTATION = "python"


def _inv_mod(a: int, p: int) -> int:
    a %= p
    s, old_s = 0, 1
    r, old_r = p, a
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    return old_s % p


def group_tables(p: int, c3: int, c2: int, c1: int, c0: int):
    """Places, full ordered addition table, negation, orders, 2-torsion.

    Returns (n, eps, xs, ys, add, neg, orders).  Place 0 is the point at
    infinity (xs[0] = ys[0] = -1); affine places follow in lexicographic
    (x, y) order.  The table is computed for every ordered pair so the
    symmetry check downstream is meaningful.
    """
    c3 %= p
    c2 %= p
    c1 %= p
    c0 %= p
    fvals = [(((c3 * x + c2) * x + c1) * x + c0) % p for x in range(p)]
    sqrt_lists: dict[int, list[int]] = {}
    for y in range(p):
        sqrt_lists.setdefault(y * y % p, []).append(y)
    xs, ys = [-1], [-1]
    for x in range(p):
        for y in sorted(sqrt_lists.get(fvals[x], ())):
            xs.append(x)
            ys.append(y)
    n = len(xs)
    index_of = {(xs[i], ys[i]): i for i in range(1, n)}

    add = np.empty((n, n), dtype=np.int32)
    for i in range(n):
        add[i, 0] = i
        add[0, i] = i
    for i in range(1, n):
        xi, yi = xs[i], ys[i]
        for j in range(1, n):
            xj, yj = xs[j], ys[j]
            if xi == xj and (yi + yj) % p == 0:
                add[i, j] = 0
                continue
            if i == j:
                lam = (
                    ((3 * c3 * xi + 2 * c2) * xi + c1)
                    * _inv_mod(2 * yi, p)
                ) % p
            else:
                lam = (yj - yi) * _inv_mod(xj - xi, p) % p
            x3 = ((lam * lam - c2) * _inv_mod(c3, p) - xi - xj) % p
            y3 = -(yi + lam * (x3 - xi)) % p
            add[i, j] = index_of[(x3, y3)]

    neg = np.empty(n, dtype=np.int32)
    neg[0] = 0
    for i in range(1, n):
        neg[i] = index_of[(xs[i], (p - ys[i]) % p)]

    orders = np.empty(n, dtype=np.int32)
    for i in range(n):
        k, acc = 1, i
        while acc != 0:
            acc = int(add[acc, i])
            k += 1
        orders[i] = k

    eps = 1 + sum(1 for x in range(p) if fvals[x] == 0)
    doubled = sum(1 for i in range(n) if add[i, i] == 0)
    if eps != doubled or n % eps:
        raise RuntimeError("2-torsion bookkeeping is inconsistent")
    return (
        n,
        eps,
        np.array(xs, dtype=np.int64),
        np.array(ys, dtype=np.int64),
        add,
        neg,
        orders,
    )


def multiples_table(add: np.ndarray, orders: np.ndarray):
    """mult_flat[mult_off[i] + r] = index of r * P_i for r in [0, order_i)."""
    n = add.shape[0]
    off = np.zeros(n + 1, dtype=np.int32)
    for i in range(n):
        off[i + 1] = off[i] + int(orders[i])
    flat = np.empty(int(off[n]), dtype=np.int32)
    for i in range(n):
        acc = 0
        for r in range(int(orders[i])):
            flat[off[i] + r] = acc
            acc = int(add[acc, i])
    return flat, off


def group_point(add, orders, mult_flat, mult_off, v) -> int:
    """Index of sum(v[i] * P_i) under the group law."""
    acc = 0
    n = add.shape[0]
    for i in range(1, n):
        r = int(v[i]) % int(orders[i])
        if r:
            acc = int(add[acc, int(mult_flat[int(mult_off[i]) + r])])
    return acc


def group_point_batch(add, orders, mult_flat, mult_off, vs) -> np.ndarray:
    m = vs.shape[0]
    out = np.empty(m, dtype=np.int32)
    for k in range(m):
        out[k] = group_point(add, orders, mult_flat, mult_off, vs[k])
    return out


def minimal_vector_matrix(add: np.ndarray) -> np.ndarray:
    """Enumerate the minimal vectors (n >= 3) as +-1 pattern rows.

    n >= 4: pairs of places are bucketed by group sum; every ordered
    choice of two disjoint unordered pairs in a bucket gives a vector.
    n = 3: the six explicit norm-6 vectors.
    """
    n = add.shape[0]
    if n == 3:
        rows = []
        for a, b, c in ((-2, 1, 1), (1, -2, 1), (1, 1, -2)):
            rows.append((a, b, c))
            rows.append((-a, -b, -c))
        return np.array(rows, dtype=np.int64)
    buckets: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            buckets[int(add[i, j])].append((i, j))
    rows = []
    for pairs in buckets:
        for a in range(len(pairs)):
            pa, qa = pairs[a]
            for b in range(a + 1, len(pairs)):
                pb, qb = pairs[b]
                if pa == pb or pa == qb or qa == pb or qa == qb:
                    continue
                v = [0] * n
                v[pa] = v[qa] = 1
                v[pb] = v[qb] = -1
                rows.append(tuple(v))
                rows.append(tuple(-x for x in v))
    if not rows:
        return np.zeros((0, n), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


def generator_matrix(add: np.ndarray) -> np.ndarray:
    """Distinct nonzero vectors e_i + e_j - e_r - e_0, unordered (i, j)."""
    n = add.shape[0]
    rows = []
    seen = set()
    for i in range(1, n):
        for j in range(i, n):
            r = int(add[i, j])
            v = [0] * n
            v[i] += 1
            v[j] += 1
            v[r] -= 1
            v[0] -= 1
            key = tuple(v)
            if any(key) and key not in seen:
                seen.add(key)
                rows.append(key)
    if not rows:
        return np.zeros((0, n), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


def hnf_i64(mat: np.ndarray) -> np.ndarray:
    """Row HNF with positive pivots and reduced entries above, int64."""
    work = [list(map(int, row)) for row in mat]
    m = len(work)
    if m == 0:
        return np.zeros((0, mat.shape[1] if mat.ndim == 2 else 0), dtype=np.int64)
    n = len(work[0])
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            piv, best = -1, 0
            for i in range(r, m):
                v = abs(work[i][c])
                if v and (piv < 0 or v < best):
                    piv, best = i, v
            if piv < 0:
                break
            work[r], work[piv] = work[piv], work[r]
            clean = True
            for i in range(r + 1, m):
                if work[i][c]:
                    q = work[i][c] // work[r][c]
                    for l in range(n):
                        work[i][l] -= q * work[r][l]
                    if work[i][c]:
                        clean = False
            if clean:
                break
        if work[r][c]:
            if work[r][c] < 0:
                for l in range(n):
                    work[r][l] = -work[r][l]
            for i in range(r):
                q = work[i][c] // work[r][c]
                if q:
                    for l in range(n):
                        work[i][l] -= q * work[r][l]
            r += 1
    return np.array(work[:r], dtype=np.int64).reshape(r, n)


def hnf_pivot_cols(h: np.ndarray) -> np.ndarray:
    rows, cols = h.shape
    out = np.empty(rows, dtype=np.int32)
    for i in range(rows):
        c = 0
        while h[i, c] == 0:
            c += 1
        out[i] = c
    return out


def gram_det(h: np.ndarray) -> int:
    """det(H H^T), Bareiss fraction-free; Python ints, no overflow."""
    b = [list(map(int, row)) for row in h]
    k = len(b)
    if k == 0:
        return 1
    g = [[sum(x * y for x, y in zip(r1, r2)) for r2 in b] for r1 in b]
    prev = 1
    for i in range(k - 1):
        if g[i][i] == 0:
            return 0
        for j in range(i + 1, k):
            for l in range(i + 1, k):
                g[j][l] = (g[j][l] * g[i][i] - g[j][i] * g[i][l]) // prev
            g[j][i] = 0
        prev = g[i][i]
    return g[k - 1][k - 1]


def hnf_member(h: np.ndarray, pivots: np.ndarray, v) -> bool:
    w = [int(x) for x in v]
    rows = h.shape[0]
    n = h.shape[1]
    for i in range(rows):
        c = int(pivots[i])
        piv = int(h[i, c])
        if w[c] % piv:
            return False
        q = w[c] // piv
        if q:
            for l in range(n):
                w[l] -= q * int(h[i, l])
    return not any(w)


def hnf_member_batch(h, vs) -> np.ndarray:
    pivots = hnf_pivot_cols(h)
    m = vs.shape[0]
    out = np.empty(m, dtype=np.uint8)
    for k in range(m):
        out[k] = 1 if hnf_member(h, pivots, vs[k]) else 0
    return out


def reduce_mod_hnf(h: np.ndarray, pivots: np.ndarray, v) -> tuple[int, ...]:
    w = [int(x) for x in v]
    rows = h.shape[0]
    n = h.shape[1]
    for i in range(rows):
        c = int(pivots[i])
        q = w[c] // int(h[i, c])
        if q:
            for l in range(n):
                w[l] -= q * int(h[i, l])
    return tuple(w)


def structural_summary(p: int, c3: int, c2: int, c1: int, c0: int) -> dict:
    """One-pass exact analysis of a single curve's lattice.

    Bundles everything the family scan verifies per curve so that one
    call covers tables, minimal vectors, basis, determinant, cosets,
    degenerate-generator decompositions and the group-law checks.
    """
    n, eps, xs, ys, add, neg, orders = group_tables(p, c3, c2, c1, c0)
    mult_flat, mult_off = multiples_table(add, orders)

    gens = generator_matrix(add)
    gen_hnf = hnf_i64(gens) if gens.size else np.zeros((0, n), dtype=np.int64)
    rank = gen_hnf.shape[0]
    pivots = hnf_pivot_cols(gen_hnf)
    gram = gram_det(gen_hnf)
    index = 1
    for i in range(rank):
        index *= int(gen_hnf[i, pivots[i]])

    coset_reps = set()
    for i in range(n):
        v = [0] * n
        v[i] += 1
        v[0] -= 1
        coset_reps.add(reduce_mod_hnf(gen_hnf, pivots, v))
    coset_distinct = len(coset_reps)

    norm2_ok = True
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            v = [0] * n
            v[i], v[j] = 1, -1
            by_group = int(add[i, neg[j]]) == 0
            by_hnf = hnf_member(gen_hnf, pivots, v)
            if by_group != by_hnf:
                raise RuntimeError("membership oracles disagree on a norm-2 vector")
            if by_group:
                norm2_ok = False

    if n >= 3:
        minimal = minimal_vector_matrix(add)
        min_hnf = hnf_i64(minimal) if minimal.size else np.zeros((0, n), np.int64)
        minimal_rank = min_hnf.shape[0]
        min_hnf_equal = min_hnf.shape == gen_hnf.shape and bool(
            (min_hnf == gen_hnf).all()
        )
        witness_ok = False
        if minimal.shape[0]:
            w = minimal[0]
            d2 = 6 if n == 3 else 4
            norm = int((w * w).sum())
            member = (
                int(w.sum()) == 0
                and group_point(add, orders, mult_flat, mult_off, w) == 0
                and hnf_member(gen_hnf, pivots, w)
            )
            witness_ok = norm == d2 and member
    else:
        minimal = np.zeros((0, n), dtype=np.int64)
        minimal_rank = 0
        min_hnf_equal = False
        witness_ok = False

    decomp_total, decomp_ok = _decomposition_check(add, neg) if n >= 5 else (0, True)
    assoc_checked = n <= 12
    assoc_ok = _group_law_check(add) if assoc_checked else True
    torsion_ok = _torsion_divisor_check(add, orders)

    return {
        "n": n,
        "eps": eps,
        "xs": xs,
        "ys": ys,
        "add": add,
        "neg": neg,
        "orders": orders,
        "mult_flat": mult_flat,
        "mult_off": mult_off,
        "minimal": minimal,
        "minimal_count": int(minimal.shape[0]),
        "gen_hnf": gen_hnf,
        "rank": rank,
        "minimal_rank": minimal_rank,
        "min_hnf_equal": bool(min_hnf_equal),
        "gram_det": gram,
        "index": index,
        "coset_distinct": coset_distinct,
        "norm2_excluded": bool(norm2_ok),
        "witness_ok": bool(witness_ok),
        "decomp_total": decomp_total,
        "decomp_ok": bool(decomp_ok),
        "assoc_checked": assoc_checked,
        "assoc_ok": bool(assoc_ok),
        "torsion_ok": bool(torsion_ok),
    }


def _group_law_check(add: np.ndarray) -> bool:
    """Exhaustive identity, commutativity and associativity on the table."""
    n = add.shape[0]
    for i in range(n):
        if add[i, 0] != i or add[0, i] != i:
            return False
        for j in range(n):
            if add[i, j] != add[j, i]:
                return False
    for i in range(n):
        for j in range(n):
            ij = add[i, j]
            for k in range(n):
                if add[ij, k] != add[i, add[j, k]]:
                    return False
    return True


def _torsion_divisor_check(add: np.ndarray, orders: np.ndarray) -> bool:
    """Torsion-word divisors must telescope to -k e_P + k e_0."""
    n = add.shape[0]
    for j in range(1, n):
        k = int(orders[j])
        acc = [0] * n
        t = j
        for _ in range(1, k):
            r = int(add[j, t])
            acc[j] -= 1
            acc[t] -= 1
            acc[r] += 1
            acc[0] += 1
            t = r
        expect = [0] * n
        expect[j] = -k
        expect[0] = k
        if acc != expect:
            return False
    return True


def _decomposition_check(add: np.ndarray, neg: np.ndarray) -> tuple[int, bool]:
    """Verify the two-minimal-vector split of every degenerate generator."""
    n = add.shape[0]
    total = 0
    for i in range(1, n):
        for j in range(i, n):
            r = int(add[i, j])
            if i != j and r != 0:
                continue
            total += 1
            if i == j:
                banned = {0, i, int(add[i, i]), int(neg[i])}
                u = _first_free(n, banned)
                s = int(add[i, u])
                # 2e_i - e_r - e_0 = (e_i + e_s - e_r - e_u) - (e_s + e_0 - e_i - e_u)
                if not _is_minimal_pattern(add, i, s, r, u):
                    return total, False
                if not _is_minimal_pattern(add, s, 0, i, u):
                    return total, False
                ok = _combo_matches(
                    n, (i, j, r), [(1, (i, s), (r, u)), (-1, (s, 0), (i, u))]
                )
            else:
                banned = {0, i, j, int(add[i, i])}
                u = _first_free(n, banned)
                s = int(add[j, u])
                # e_i + e_j - 2e_0 = (e_j + e_u - e_s - e_0) + (e_i + e_s - e_u - e_0)
                if not _is_minimal_pattern(add, j, u, s, 0):
                    return total, False
                if not _is_minimal_pattern(add, i, s, u, 0):
                    return total, False
                ok = _combo_matches(
                    n, (i, j, r), [(1, (j, u), (s, 0)), (1, (i, s), (u, 0))]
                )
            if not ok:
                return total, False
    return total, True


def _first_free(n: int, banned: set[int]) -> int:
    for u in range(n):
        if u not in banned:
            return u
    raise RuntimeError("no auxiliary place available (n < 5?)")


def _is_minimal_pattern(add, a, b, c, d) -> bool:
    return len({a, b, c, d}) == 4 and add[a, b] == add[c, d]


def _combo_matches(n, gen, terms) -> bool:
    v = [0] * n
    i, j, r = gen
    v[i] += 1
    v[j] += 1
    v[r] -= 1
    v[0] -= 1
    for sign, plus, minus in terms:
        for t in plus:
            v[t] -= sign
        for t in minus:
            v[t] += sign
    return not any(v)


def decode_one(add, orders, mult_flat, mult_off, r):
    """One covering-decoder step; returns (w1, S, j, w2, distance).

    r must already lie in the sum-zero span.  Rounding takes the floor on
    half-integers; the anchoring place j is the group sum of the rounded
    vector, and the output differs from the rounding only at coordinates
    0 and j.
    """
    n = add.shape[0]
    w1 = [math.ceil(float(r[i]) - 0.5) for i in range(n)]
    s = 0
    for i in range(n):
        s += w1[i]
    j = group_point(add, orders, mult_flat, mult_off, w1)
    rest = s - w1[0]
    w2 = list(w1)
    if j != 0:
        w2[0] = -rest + 1
        w2[j] -= 1
    else:
        w2[0] = -rest
    acc = 0.0
    for i in range(n):
        d = float(r[i]) - w2[i]
        acc += d * d
    return (
        np.array(w1, dtype=np.int64),
        s,
        j,
        np.array(w2, dtype=np.int64),
        math.sqrt(acc),
    )


def decode_batch(add, orders, mult_flat, mult_off, rs):
    """Decode a batch of span vectors.

    Inputs are re-projected to exact sum zero (subtracting the mean).
    Returns (distances, ok) where ok[k] confirms the internal invariants:
    rounding error squared <= n/4, |sum of rounding| <= n/2, and the
    output is a lattice member by the group criterion.
    """
    m, n = rs.shape
    dist = np.empty(m, dtype=np.float64)
    ok = np.empty(m, dtype=np.uint8)
    for k in range(m):
        row = rs[k]
        total = 0.0
        for i in range(n):
            total += float(row[i])
        mean = total / n
        r = [float(row[i]) - mean for i in range(n)]
        w1, s, j, w2, d = decode_one(add, orders, mult_flat, mult_off, r)
        dist[k] = d
        err = 0.0
        for i in range(n):
            e = r[i] - int(w1[i])
            err += e * e
        member = int(w2.sum()) == 0 and (
            group_point(add, orders, mult_flat, mult_off, w2) == 0
        )
        ok[k] = 1 if (err <= n / 4.0 + 1e-9 and 2 * abs(s) <= n and member) else 0
    return dist, ok


def factor_check_batch(add, neg, orders, mult_flat, mult_off, ds) -> np.ndarray:
    """Factor each principal divisor and verify the word reproduces it.

    The construction is the two-phase one: torsion words clear negative
    coordinates (minimal repetition count), then the positive part is
    peeled along running partial sums.  Entry k of the result is 1 iff
    the accumulated word divisor equals ds[k] exactly.
    """
    m, n = ds.shape
    out = np.empty(m, dtype=np.uint8)
    for kk in range(m):
        d = [int(x) for x in ds[kk]]
        if sum(d) != 0 or group_point(add, orders, mult_flat, mult_off, d) != 0:
            out[kk] = 0
            continue
        acc = [0] * n
        work = list(d)
        for j in range(1, n):
            if work[j] < 0:
                k = int(orders[j])
                reps = (-work[j] + k - 1) // k
                t = j
                for _ in range(1, k):
                    r = int(add[j, t])
                    acc[j] -= reps
                    acc[t] -= reps
                    acc[r] += reps
                    acc[0] += reps
                    t = r
                work[j] += reps * k
                work[0] -= reps * k
        # phase-2 factors carry exponent -1 in the word, so their divisor
        # contributions enter with flipped signs
        positives = [i for i in range(1, n) for _ in range(work[i])]
        good = True
        if positives:
            t = positives[-1]
            for i in range(len(positives) - 2, -1, -1):
                qi = positives[i]
                r = int(add[qi, t])
                acc[qi] += 1
                acc[t] += 1
                acc[r] -= 1
                acc[0] -= 1
                t = r
            good = t == 0
        out[kk] = 1 if (good and acc == d) else 0
    return out
