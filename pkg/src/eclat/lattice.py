"""The lattice of principal divisors supported on the rational places.

Everything here is exact integer arithmetic: the canonical basis is a
row-style Hermite normal form of the generator matrix, the Gram
determinant comes from fraction-free (Bareiss) elimination, and
membership is decided twice -- by the group-sum criterion and by an
integer solve against the HNF -- with any disagreement treated as fatal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curve import GroupStructure, PlaceTable
from .funcfield import Divisor


def hnf(rows) -> np.ndarray:
    """Row-style Hermite normal form: positive pivots, entries above a
    pivot reduced into [0, pivot), zero rows dropped.

    Arithmetic uses Python ints, so there is no overflow regardless of
    input size.
    """
    mat = [[int(x) for x in row] for row in rows]
    m = len(mat)
    if m == 0:
        n = rows.shape[1] if isinstance(rows, np.ndarray) and rows.ndim == 2 else 0
        return np.zeros((0, n), dtype=np.int64)
    n = len(mat[0])
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            piv, best = -1, 0
            for i in range(r, m):
                v = abs(mat[i][c])
                if v and (piv < 0 or v < best):
                    piv, best = i, v
            if piv < 0:
                break
            mat[r], mat[piv] = mat[piv], mat[r]
            clean = True
            for i in range(r + 1, m):
                if mat[i][c]:
                    q = mat[i][c] // mat[r][c]
                    mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
                    if mat[i][c]:
                        clean = False
            if clean:
                break
        if mat[r][c]:
            if mat[r][c] < 0:
                mat[r] = [-a for a in mat[r]]
            for i in range(r):
                q = mat[i][c] // mat[r][c]
                if q:
                    mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
            r += 1
    return np.array(mat[:r], dtype=np.int64).reshape(r, n)


def hnf_pivot_cols(h: np.ndarray) -> list[int]:
    cols = []
    for row in h:
        nz = np.nonzero(row)[0]
        cols.append(int(nz[0]))
    return cols


def hnf_solve(h: np.ndarray, v) -> bool:
    """True iff v is an integer combination of the HNF rows."""
    v = [int(x) for x in v]
    for row, c in zip(h, hnf_pivot_cols(h)):
        piv = int(row[c])
        if v[c] % piv:
            return False
        q = v[c] // piv
        if q:
            v = [a - q * int(b) for a, b in zip(v, row)]
    return not any(v)


def hnf_reduce(h: np.ndarray, v) -> tuple[int, ...]:
    """Canonical coset representative: pivot coordinates land in
    [0, pivot).  Representatives are equal iff the cosets are."""
    v = [int(x) for x in v]
    for row, c in zip(h, hnf_pivot_cols(h)):
        q = v[c] // int(row[c])
        if q:
            v = [a - q * int(b) for a, b in zip(v, row)]
    return tuple(v)


def gram_det(rows) -> int:
    """det(B B^T) by Bareiss fraction-free elimination, exact."""
    b = [[int(x) for x in row] for row in rows]
    k = len(b)
    if k == 0:
        return 1
    g = [[sum(x * y for x, y in zip(r1, r2)) for r2 in b] for r1 in b]
    prev = 1
    for i in range(k - 1):
        if g[i][i] == 0:
            swap = next((j for j in range(i + 1, k) if g[j][i]), None)
            if swap is None:
                return 0
            g[i], g[swap] = g[swap], g[i]
            for row in g:
                row[i], row[swap] = row[swap], row[i]
        for j in range(i + 1, k):
            for l in range(i + 1, k):
                g[j][l] = (g[j][l] * g[i][i] - g[j][i] * g[i][l]) // prev
            g[j][i] = 0
        prev = g[i][i]
    return g[k - 1][k - 1]


def generators(table: PlaceTable) -> list[Divisor]:
    """All distinct nonzero vectors e_P + e_Q - e_R - e_0 with R the group
    sum of P and Q, over unordered pairs (P = Q allowed)."""
    n = table.n
    seen = set()
    out = []
    for i in range(1, n):
        for j in range(i, n):
            r = table.add_idx(i, j)
            coeffs = [0] * n
            coeffs[i] += 1
            coeffs[j] += 1
            coeffs[r] -= 1
            coeffs[0] -= 1
            key = tuple(coeffs)
            if any(key) and key not in seen:
                seen.add(key)
                out.append(Divisor(key))
    return out


@dataclass(frozen=True)
class LatticeBasis:
    rows: np.ndarray  # (n-1) x n, row HNF
    gram_det: int

    @property
    def rank(self) -> int:
        return self.rows.shape[0]

    @property
    def n(self) -> int:
        return self.rows.shape[1]

    @property
    def index_in_root_lattice(self) -> int:
        out = 1
        for row, c in zip(self.rows, hnf_pivot_cols(self.rows)):
            out *= int(row[c])
        return out


def basis(table: PlaceTable) -> LatticeBasis:
    if table.n < 2:
        raise ValueError("need at least two places to span a lattice")
    gens = generators(table)
    h = hnf([g.coeffs for g in gens])
    if h.shape[0] != table.n - 1:
        raise RuntimeError(
            f"generator rank {h.shape[0]} != n-1 = {table.n - 1}"
        )
    return LatticeBasis(h, gram_det(h.tolist()))


def contains(table: PlaceTable, b: LatticeBasis, v) -> bool:
    """Membership by the group-sum criterion, cross-checked against the
    HNF integer solve; disagreement means a broken invariant."""
    v = [int(x) for x in v]
    by_group = sum(v) == 0 and table.point_sum(v) == 0
    by_hnf = sum(v) == 0 and hnf_solve(b.rows, v)
    if by_group != by_hnf:
        raise RuntimeError(f"membership oracles disagree on {v}")
    return by_group


@dataclass(frozen=True)
class LatticeReport:
    n: int
    epsilon: int
    det_squared: int
    index_in_An1: int
    h_F: int
    det_bound_ok: bool


def report(table: PlaceTable, b: LatticeBasis, gs: GroupStructure) -> LatticeReport:
    """Index, class number and the determinant bound.

    The class number is n itself: for genus one the degree-0 class group
    is in bijection with the rational points.  det^2 = index^2 * n since
    the ambient sum-zero lattice has determinant sqrt(n).
    """
    n = table.n
    quot, rem = divmod(b.gram_det, n)
    if rem:
        raise RuntimeError("Gram determinant is not divisible by n")
    idx = _exact_isqrt(quot)
    if idx is None:
        raise RuntimeError("det^2 / n is not a perfect square")
    if idx != b.index_in_root_lattice:
        raise RuntimeError("pivot-product index disagrees with Gram index")
    return LatticeReport(
        n=n,
        epsilon=gs.epsilon,
        det_squared=b.gram_det,
        index_in_An1=idx,
        h_F=n,
        det_bound_ok=idx <= n,
    )


def coset_count(table: PlaceTable, b: LatticeBasis) -> int:
    """Count the cosets of the lattice inside the sum-zero lattice.

    The vectors e_i - e_0 are reduced to canonical representatives; their
    count is a lower bound on the number of cosets, while the basis index
    is the exact total.  Both must agree at n for the class-group
    bijection to hold.
    """
    n = table.n
    reps = set()
    for i in range(n):
        v = [0] * n
        v[i] += 1
        v[0] -= 1
        reps.add(hnf_reduce(b.rows, v))
    distinct = len(reps)
    if distinct != b.index_in_root_lattice:
        raise RuntimeError(
            f"{distinct} distinct cosets hit but lattice index is "
            f"{b.index_in_root_lattice}"
        )
    return distinct


def _exact_isqrt(x: int) -> int | None:
    if x < 0:
        return None
    r = math.isqrt(x)
    return r if r * r == x else None


def format_matrix_plain(mat: np.ndarray) -> str:
    """First line "n rank", then one row per line, space-separated."""
    rank, n = mat.shape
    lines = [f"{n} {rank}"]
    for row in mat:
        lines.append(" ".join(str(int(x)) for x in row))
    return "\n".join(lines) + "\n"


def format_matrix_bracket(mat: np.ndarray) -> str:
    """Single-line bracketed form: [[r00 r01 ...][r10 ...]]."""
    rows = ["[" + " ".join(str(int(x)) for x in row) + "]" for row in mat]
    return "[" + "".join(rows) + "]\n"


def parse_matrix_bracket(text: str) -> np.ndarray:
    """Whitespace-tolerant parser for the bracketed matrix form."""
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ValueError("not a bracketed matrix")
    body = body[1:-1].strip()
    rows = []
    while body:
        if not body.startswith("["):
            raise ValueError("malformed bracketed matrix")
        end = body.index("]")
        rows.append([int(tok) for tok in body[1:end].split()])
        body = body[end + 1 :].strip()
    if not rows:
        return np.zeros((0, 0), dtype=np.int64)
    if len({len(r) for r in rows}) != 1:
        raise ValueError("ragged rows in bracketed matrix")
    return np.array(rows, dtype=np.int64)
