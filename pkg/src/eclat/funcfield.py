"""Divisors supported on the rational places and the structured functions
that realize them.

A :class:`PairFunction` is the rational function attached to a pair of
places (P, Q): its divisor is -P - Q + R + P_0 where R is the group sum
of P and Q and P_0 the place at infinity.  Products of these functions
are kept in factored form (:class:`FunctionWord`); all verification
happens at the divisor level, functions are never expanded symbolically.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curve import CurvePoint, LineFunction, PlaceTable, line_m


@dataclass(frozen=True)
class Divisor:
    """Integer multiplicities indexed by the place table."""

    coeffs: tuple[int, ...]

    @staticmethod
    def zero(n: int) -> "Divisor":
        return Divisor((0,) * n)

    @staticmethod
    def unit(i: int, n: int) -> "Divisor":
        return Divisor(tuple(1 if j == i else 0 for j in range(n)))

    @property
    def degree(self) -> int:
        return sum(self.coeffs)

    @property
    def norm_sq(self) -> int:
        return sum(c * c for c in self.coeffs)

    def __add__(self, other: "Divisor") -> "Divisor":
        return Divisor(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Divisor") -> "Divisor":
        return Divisor(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Divisor":
        return Divisor(tuple(-a for a in self.coeffs))

    def scale(self, k: int) -> "Divisor":
        return Divisor(tuple(k * a for a in self.coeffs))

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __repr__(self) -> str:
        return f"Divisor{self.coeffs}"


class NotPrincipalError(ValueError):
    pass


_ONE = LineFunction("one", 0, 0, 1)


@dataclass(frozen=True)
class PairFunction:
    """The generator function of a place pair, stored as two lines.

    kind "generic":          (x - x(R)) / line(P, Q)
    kind "inverse_vertical": 1 / (x - x(P))          (when R is infinity)
    kind "one":              the constant 1          (when P or Q is infinity)
    """

    p_idx: int
    q_idx: int
    r_idx: int
    kind: str
    numerator: LineFunction
    denominator: LineFunction
    divisor: Divisor


def pair_function(table: PlaceTable, p_idx: int, q_idx: int) -> PairFunction:
    n = table.n
    r_idx = table.add_idx(p_idx, q_idx)
    coeffs = [0] * n
    coeffs[p_idx] -= 1
    coeffs[q_idx] -= 1
    coeffs[r_idx] += 1
    coeffs[0] += 1
    div = Divisor(tuple(coeffs))
    if p_idx == 0 or q_idx == 0:
        return PairFunction(p_idx, q_idx, r_idx, "one", _ONE, _ONE, div)
    pp, qq = table.places[p_idx], table.places[q_idx]
    den = line_m(table.curve, pp, qq)
    if r_idx == 0:
        return PairFunction(p_idx, q_idx, r_idx, "inverse_vertical", _ONE, den, div)
    x_r = table.places[r_idx].x
    num = LineFunction("vertical", 1, 0, -x_r % table.curve.p)
    return PairFunction(p_idx, q_idx, r_idx, "generic", num, den, div)


@dataclass(frozen=True)
class FunctionWord:
    """A formal product of pair functions with nonzero integer exponents."""

    factors: tuple[tuple[PairFunction, int], ...]

    def divisor(self, n: int | None = None) -> Divisor:
        if not self.factors:
            if n is None:
                raise ValueError("empty word needs an explicit length")
            return Divisor.zero(n)
        acc = [0] * len(self.factors[0][0].divisor)
        for f, e in self.factors:
            for i, c in enumerate(f.divisor.coeffs):
                acc[i] += e * c
        return Divisor(tuple(acc))

    def to_records(self) -> list[dict]:
        return [
            {"p_index": f.p_idx, "q_index": f.q_idx, "exponent": e}
            for f, e in self.factors
        ]

    def __len__(self) -> int:
        return len(self.factors)


def word_divisor(word: FunctionWord, n: int) -> Divisor:
    return word.divisor(n)


def torsion_word(table: PlaceTable, p_idx: int, k: int) -> FunctionWord:
    """The product of F(P, j*P) for j = 1..k-1; requires k = order(P).

    Its divisor is -k*P + k*P_0, which is what makes it the negative-
    coefficient eraser in :func:`factor_principal`.
    """
    if k < 2:
        raise ValueError(f"torsion words need order >= 2, got k={k}")
    if k != table.orders[p_idx]:
        raise ValueError(
            f"k={k} is not the order of place {p_idx} "
            f"(order {table.orders[p_idx]})"
        )
    factors = []
    acc = p_idx
    for _ in range(1, k):
        factors.append((pair_function(table, p_idx, acc), 1))
        acc = table.add_idx(p_idx, acc)
    return FunctionWord(tuple(factors))


def is_principal(table: PlaceTable, div: Divisor) -> bool:
    """Degree-0 divisor is principal iff its group sum is the identity."""
    if div.degree != 0:
        raise ValueError(f"divisor has degree {div.degree}, expected 0")
    return table.point_sum(div.coeffs) == 0


def factor_principal(table: PlaceTable, div: Divisor) -> FunctionWord:
    """Write a principal divisor as a word in pair functions.

    Phase 1 raises every negative non-infinity coordinate above zero by
    mixing in torsion words (minimal repetition count per place); phase 2
    peels the remaining positive part along its running partial sums.
    The resulting word's divisor is checked against the input before
    returning.
    """
    if not is_principal(table, div):
        raise NotPrincipalError(f"{div} is not principal")
    n = table.n
    work = list(div.coeffs)
    factors: list[tuple[PairFunction, int]] = []
    for j in range(1, n):
        if work[j] < 0:
            k = table.orders[j]
            reps = (-work[j] + k - 1) // k
            for f, e in torsion_word(table, j, k).factors:
                factors.append((f, e * reps))
            work[j] += reps * k
            work[0] -= reps * k

    positives = [i for i in range(1, n) for _ in range(work[i])]
    t = len(positives)
    if t:
        acc = positives[-1]
        for i in range(t - 2, -1, -1):
            factors.append((pair_function(table, positives[i], acc), -1))
            acc = table.add_idx(positives[i], acc)
        if acc != 0:
            raise RuntimeError("partial sums did not close at the identity")

    word = FunctionWord(tuple(factors))
    if word.divisor(n) != div:
        raise RuntimeError("factorization does not reproduce the divisor")
    return word


def rr_nontrivial(
    table: PlaceTable, p_idx: int, q_idx: int, r_idx: int
) -> PairFunction | None:
    """The spanning pair function when R is the group sum of P and Q,
    otherwise None (the associated function space is trivial)."""
    if table.add_idx(p_idx, q_idx) != r_idx:
        return None
    return pair_function(table, p_idx, q_idx)


def line_divisor(table: PlaceTable, line: LineFunction) -> Divisor:
    """Divisor of a line function: affine zeros with multiplicity, poles
    at infinity (2 for verticals, 3 otherwise)."""
    n = table.n
    curve = table.curve
    p = curve.p
    if line.kind == "one":
        return Divisor.zero(n)
    coeffs = [0] * n
    if line.kind == "vertical":
        x0 = -line.c % p
        fx = curve.f(x0)
        roots = curve.field.square_roots(fx)
        if not roots:
            raise ValueError("vertical line misses the curve's rational points")
        mult = 2 if len(roots) == 1 else 1
        for y in roots:
            coeffs[table.index_of[CurvePoint(x0, y)]] += mult
        coeffs[0] -= 2
        return Divisor(tuple(coeffs))
    # chord: y = -(a x + c)/b, intersect with y^2 = f(x)
    fld = curve.field
    b_inv = fld.inv(line.b)
    u = line.a * b_inv % p
    v = line.c * b_inv % p
    c3, c2, c1, c0 = curve.coeffs
    g = [
        (c0 - v * v) % p,
        (c1 - 2 * u * v) % p,
        (c2 - u * u) % p,
        c3,
    ]
    total = 0
    for x0 in range(p):
        mult = _root_multiplicity(g, x0, p)
        if mult:
            y0 = -(u * x0 + v) % p
            coeffs[table.index_of[CurvePoint(x0, y0)]] += mult
            total += mult
    if total != 3:
        raise RuntimeError("chord does not meet the curve in three rational points")
    coeffs[0] -= 3
    return Divisor(tuple(coeffs))


def _root_multiplicity(poly: list[int], x0: int, p: int) -> int:
    """Multiplicity of x0 as a root, by repeated synthetic division."""
    mult = 0
    cur = list(poly)
    while len(cur) > 1:
        rem = 0
        quot = [0] * (len(cur) - 1)
        for i in range(len(cur) - 1, -1, -1):
            rem = (rem * x0 + cur[i]) % p
            if i:
                quot[i - 1] = rem
        # synthetic division: rem is now poly(x0)
        if rem != 0:
            break
        mult += 1
        cur = quot
    return mult
