"""Minimum distance, minimal vectors, well-roundedness and packing density.

The minimal vectors for n >= 4 are exactly the vectors
e_P + e_Q - e_R - e_S over four distinct places with equal pair sums;
they are enumerated by grouping place pairs by their group sum, which is
an O(n^3)-ish sweep that doubles as the independent check of the closed
count formula.  For n = 3 the set is the six explicit norm-6 vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .curve import PlaceTable
from .funcfield import Divisor
from .lattice import LatticeBasis, contains, hnf


class VerificationError(RuntimeError):
    """A structural identity the construction guarantees failed to hold."""


@dataclass(frozen=True)
class MinimalVectorSet:
    vectors: tuple[Divisor, ...]
    d_squared: int

    def __post_init__(self):
        object.__setattr__(self, "_lookup", frozenset(self.vectors))

    @property
    def count(self) -> int:
        return len(self.vectors)

    def __contains__(self, div: Divisor) -> bool:
        return div in self._lookup


def minimal_vectors(table: PlaceTable) -> MinimalVectorSet:
    n = table.n
    if n < 3:
        raise ValueError("minimal vectors are defined for n >= 3 here")
    if n == 3:
        vecs = []
        for a, b, c in ((-2, 1, 1), (1, -2, 1), (1, 1, -2)):
            vecs.append(Divisor((a, b, c)))
            vecs.append(Divisor((-a, -b, -c)))
        return MinimalVectorSet(tuple(vecs), 6)
    by_sum: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            by_sum[table.add_idx(i, j)].append((i, j))
    vecs = []
    for pairs in by_sum:
        for (p, q), (r, s) in combinations(pairs, 2):
            if p in (r, s) or q in (r, s):
                continue
            coeffs = [0] * n
            coeffs[p] = coeffs[q] = 1
            coeffs[r] = coeffs[s] = -1
            vecs.append(Divisor(tuple(coeffs)))
            vecs.append(Divisor(tuple(-c for c in coeffs)))
    return MinimalVectorSet(tuple(vecs), 4)


def minimal_count_formula(n: int, epsilon: int) -> int:
    """Closed-form count of minimal vectors for n >= 4.

    Splits the pair sums by whether they are doubled points: a doubled
    point has epsilon preimages under doubling, which removes epsilon
    pairs from the disjoint-pair count.
    """
    if n < 4:
        raise ValueError("the count formula needs n >= 4")
    if n % epsilon:
        raise ValueError(f"epsilon={epsilon} must divide n={n}")
    image = n // epsilon
    in_image = image * ((n - epsilon) * (n - epsilon - 2) // 4)
    off_image = (n - image) * (n * (n - 2) // 4)
    return in_image + off_image


def sum_zero_vectors_of_norm(n: int, norm_sq: int):
    """All sum-zero integer vectors of a given small squared norm.

    Only norms 2, 4 and 6 appear below the minimum-distance thresholds:
    norm 2 is e_i - e_j, norm 4 four distinct +-1 entries, norm 6 either
    six +-1 entries or a +-2 with two balancing +-1s.
    """
    if norm_sq == 2:
        for i in range(n):
            for j in range(n):
                if i != j:
                    v = [0] * n
                    v[i], v[j] = 1, -1
                    yield tuple(v)
    elif norm_sq == 4:
        for quad in combinations(range(n), 4):
            for plus in combinations(quad, 2):
                v = [0] * n
                for i in quad:
                    v[i] = 1 if i in plus else -1
                yield tuple(v)
    elif norm_sq == 6:
        for quad in combinations(range(n), 6):
            for plus in combinations(quad, 3):
                v = [0] * n
                for i in quad:
                    v[i] = 1 if i in plus else -1
                yield tuple(v)
        for i in range(n):
            for pair in combinations(range(n), 2):
                if i in pair:
                    continue
                for sign in (1, -1):
                    v = [0] * n
                    v[i] = 2 * sign
                    v[pair[0]] = v[pair[1]] = -sign
                    yield tuple(v)
    else:
        raise ValueError(f"unsupported norm {norm_sq}")


def minimum_distance(table: PlaceTable, b: LatticeBasis) -> tuple[int, float]:
    """The minimum distance: 4 (squared) for n >= 4, 6 for n = 3.

    Both directions are verified by brute force: every shorter sum-zero
    vector is confirmed to lie outside the lattice, and one vector of the
    stated norm is exhibited inside it.
    """
    n = table.n
    if n < 3:
        raise ValueError("minimum distance handled for n >= 3")
    d_sq = 6 if n == 3 else 4
    for norm in (2, 4):
        if norm >= d_sq:
            break
        for v in sum_zero_vectors_of_norm(n, norm):
            if contains(table, b, v):
                raise VerificationError(
                    f"lattice vector {v} of squared norm {norm} < {d_sq}"
                )
    witness = minimal_vectors(table).vectors[0]
    if witness.norm_sq != d_sq or not contains(table, b, witness.coeffs):
        raise VerificationError(f"no lattice vector of squared norm {d_sq} found")
    return d_sq, math.sqrt(d_sq)


def is_well_rounded(mvs: MinimalVectorSet, n: int) -> bool:
    """True iff the minimal vectors span the full rank n-1."""
    if not mvs.vectors:
        return False
    return hnf([v.coeffs for v in mvs.vectors]).shape[0] == n - 1


def generated_by_minimal(mvs: MinimalVectorSet, b: LatticeBasis) -> bool:
    """True iff the minimal vectors span the whole lattice (equal HNFs)."""
    h = hnf([v.coeffs for v in mvs.vectors])
    return h.shape == b.rows.shape and bool((h == b.rows).all())


@dataclass(frozen=True)
class Decomposition:
    target: Divisor
    terms: tuple[tuple[int, Divisor], tuple[int, Divisor]]


def decompose_generator(
    table: PlaceTable, mvs: MinimalVectorSet, v: Divisor
) -> Decomposition:
    """Split a non-minimal generator into two minimal vectors.

    Mirrors the constructive argument: an auxiliary place U (smallest
    eligible index) is paired with the repeated or cancelled place, so
    that the repeated-place generator becomes a difference, and the
    cancelled-infinity generator a sum, of two minimal vectors.
    """
    n = table.n
    if n < 5:
        raise ValueError("decomposition requires at least five places")
    if v in mvs:
        raise ValueError(f"{v} is already minimal")
    sign, (p, q, r) = _generator_shape(table, v)
    if p == q:
        # -2P + R + Q_inf = (-P - U + S + Q_inf) - (P + S - R - U)
        banned = {0, p, table.add_idx(p, p), table.neg_idx(p)}
        u = _first_eligible(n, banned)
        s = table.add_idx(p, u)
        t1 = _four_term(n, (s, 0), (p, u))
        t2 = _four_term(n, (p, s), (r, u))
        terms = ((-sign, t1), (sign, t2))
    elif r == 0:
        # P + Q - 2Q_inf = (Q + U - S - Q_inf) + (P + S - U - Q_inf)
        banned = {0, p, q, table.add_idx(p, p)}
        u = _first_eligible(n, banned)
        s = table.add_idx(q, u)
        t1 = _four_term(n, (q, u), (s, 0))
        t2 = _four_term(n, (p, s), (u, 0))
        terms = ((sign, t1), (sign, t2))
    else:
        raise ValueError(f"{v} is not a degenerate generator")
    total = Divisor.zero(n)
    for sgn, term in terms:
        if term not in mvs:
            raise VerificationError(f"decomposition term {term} is not minimal")
        total = total + (term if sgn > 0 else -term)
    if total != v:
        raise VerificationError("decomposition terms do not reproduce the target")
    return Decomposition(v, terms)


def _generator_shape(table: PlaceTable, v: Divisor):
    """Match v against +-(e_P + e_Q - e_R - e_0) with R the sum of P, Q.

    Returns (sign, (p, q, r)); sign=+1 means v is the positive
    orientation e_P + e_Q - e_R - e_0 itself.
    """
    for sign in (1, -1):
        w = v if sign > 0 else -v
        pos, neg = [], []
        for i, c in enumerate(w.coeffs):
            pos.extend([i] * c)
            neg.extend([i] * -c)
        if len(pos) != 2 or len(neg) != 2 or 0 not in neg:
            continue
        p, q = pos
        r = neg[0] if neg[1] == 0 else neg[1]
        if table.add_idx(p, q) == r:
            return sign, (p, q, r)
    raise ValueError(f"{v} is not of generator shape")


def _first_eligible(n: int, banned: set[int]) -> int:
    for u in range(n):
        if u not in banned:
            return u
    raise ValueError("no eligible auxiliary place (needs n >= 5)")


def _four_term(n: int, plus: tuple[int, int], minus: tuple[int, int]) -> Divisor:
    coeffs = [0] * n
    for i in plus:
        coeffs[i] += 1
    for i in minus:
        coeffs[i] -= 1
    return Divisor(tuple(coeffs))


def packing_density(n: int, d: float, det: float) -> float:
    """Ball-volume density of the packing at radius d/2 in rank n-1."""
    k = n - 1
    if d <= 0 or det <= 0:
        raise ValueError("d and det must be positive")
    unit_ball = math.pi ** (k / 2) / math.gamma(k / 2 + 1)
    return unit_ball * (d / 2) ** k / det
