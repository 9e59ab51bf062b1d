"""Elliptic curves y^2 = f(x) over GF(p), p an odd prime.

f may be any square-free cubic (not only short Weierstrass form), so the
chord-tangent group law uses the generalized relation
x1 + x2 + x3 = (lambda^2 - c2) / c3 for the three intersection abscissae
of a non-vertical line with the curve.

The group identity is the single point at infinity, which is also the
distinguished place P_0 of the place table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .field import PrimeField


@dataclass(frozen=True)
class CurvePoint:
    """A rational point: the point at infinity, or an affine pair (x, y)."""

    x: int | None
    y: int | None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __repr__(self) -> str:
        return "Inf" if self.is_infinity else f"({self.x},{self.y})"


INFINITY = CurvePoint(None, None)


def _poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(a: list[int], b: list[int], field: PrimeField) -> list[int]:
    """Remainder of a by b; coefficient lists are low-to-high degree."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    inv_lb = field.inv(lb)
    while len(a) - 1 >= db and _poly_trim(a):
        da = len(a) - 1
        factor = field.mul(a[-1], inv_lb)
        for i in range(db + 1):
            a[da - db + i] = field.sub(a[da - db + i], field.mul(factor, b[i]))
        _poly_trim(a)
    return a


def poly_gcd(a: list[int], b: list[int], field: PrimeField) -> list[int]:
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, field)
    return a


class Curve:
    """y^2 = c3*x^3 + c2*x^2 + c1*x + c0 over GF(p), square-free cubic."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: PrimeField, coeffs):
        c3, c2, c1, c0 = (c % field.p for c in coeffs)
        if c3 == 0:
            raise ValueError("leading coefficient is zero: f must have degree 3")
        f = [c0, c1, c2, c3]
        fp = [c1, field.mul(2, c2), field.mul(3, c3) % field.p]
        g = poly_gcd(f, _poly_trim(fp), field)
        if len(g) != 1:
            raise ValueError("f has a repeated root: curve is not square-free")
        self.field = field
        self.coeffs = (c3, c2, c1, c0)

    @property
    def p(self) -> int:
        return self.field.p

    def f(self, x: int) -> int:
        c3, c2, c1, c0 = self.coeffs
        return (((c3 * x + c2) * x + c1) * x + c0) % self.p

    def f_prime(self, x: int) -> int:
        c3, c2, c1, c0 = self.coeffs
        return ((3 * c3 * x + 2 * c2) * x + c1) % self.p

    def contains(self, point: CurvePoint) -> bool:
        if point.is_infinity:
            return True
        return point.y * point.y % self.p == self.f(point.x)

    def check(self, point: CurvePoint) -> None:
        if not self.contains(point):
            raise ValueError(f"point {point} is not on the curve")

    def __repr__(self) -> str:
        c3, c2, c1, c0 = self.coeffs
        return f"Curve(p={self.p}, f={c3}x^3+{c2}x^2+{c1}x+{c0})"


def point_negate(curve: Curve, point: CurvePoint) -> CurvePoint:
    if point.is_infinity:
        return INFINITY
    return CurvePoint(point.x, -point.y % curve.p)


def point_add(curve: Curve, a: CurvePoint, b: CurvePoint) -> CurvePoint:
    """Group sum by the chord-tangent construction."""
    curve.check(a)
    curve.check(b)
    if a.is_infinity:
        return b
    if b.is_infinity:
        return a
    p = curve.p
    fld = curve.field
    if a.x == b.x and (a.y + b.y) % p == 0:
        return INFINITY
    if a == b:
        lam = fld.div(curve.f_prime(a.x), 2 * a.y % p)
    else:
        lam = fld.div(b.y - a.y, b.x - a.x)
    c3, c2 = curve.coeffs[0], curve.coeffs[1]
    x3 = (fld.div(lam * lam - c2, c3) - a.x - b.x) % p
    y3 = -(a.y + lam * (x3 - a.x)) % p
    return CurvePoint(x3, y3)


def scalar_mul(curve: Curve, k: int, point: CurvePoint) -> CurvePoint:
    """k-fold group sum; negative k negates first, 0 gives infinity."""
    if k < 0:
        point, k = point_negate(curve, point), -k
    acc = INFINITY
    addend = point
    while k:
        if k & 1:
            acc = point_add(curve, acc, addend)
        k >>= 1
        if k:
            addend = point_add(curve, addend, addend)
    return acc


@dataclass(frozen=True)
class LineFunction:
    """a*x + b*y + c, or the constant 1 (kind "one") for pairs with infinity.

    kind "vertical" means x - x0 (a=1, b=0); "chord" covers secants and
    tangents.
    """

    kind: str  # "one" | "vertical" | "chord"
    a: int
    b: int
    c: int

    def value_at(self, point: CurvePoint, p: int) -> int:
        return (self.a * point.x + self.b * point.y + self.c) % p


def line_m(curve: Curve, a: CurvePoint, b: CurvePoint) -> LineFunction:
    """The line through two points of the curve (tangent when they agree).

    Pairs involving infinity get the constant 1; mutually inverse points
    (including doubling a 2-torsion point) get the vertical x - x(a).
    """
    curve.check(a)
    curve.check(b)
    p = curve.p
    if a.is_infinity or b.is_infinity:
        return LineFunction("one", 0, 0, 1)
    if a.x == b.x and (a.y + b.y) % p == 0:
        return LineFunction("vertical", 1, 0, -a.x % p)
    if a == b:
        lam = curve.field.div(curve.f_prime(a.x), 2 * a.y % p)
    else:
        lam = curve.field.div(b.y - a.y, b.x - a.x)
    return LineFunction("chord", lam, p - 1, (a.y - lam * a.x) % p)


class PlaceTable:
    """The ordered rational places: P_0 = infinity, then affine points in
    lexicographic (x, y) order.  Index-level group operations are served
    from a cached addition table."""

    def __init__(self, curve: Curve, places: list[CurvePoint]):
        self.curve = curve
        self.places = places
        self.n = len(places)
        self.index_of = {pt: i for i, pt in enumerate(places)}
        q = curve.p
        if (self.n - (q + 1)) ** 2 > 4 * q:
            raise RuntimeError("Hasse bound violated; enumeration is broken")

    @cached_property
    def add_table(self) -> np.ndarray:
        t = np.empty((self.n, self.n), dtype=np.int32)
        for i, a in enumerate(self.places):
            for j in range(i, self.n):
                s = self.index_of[point_add(self.curve, a, self.places[j])]
                t[i, j] = s
                t[j, i] = s
        return t

    @cached_property
    def neg_index(self) -> np.ndarray:
        t = np.empty(self.n, dtype=np.int32)
        for i, pt in enumerate(self.places):
            t[i] = self.index_of[point_negate(self.curve, pt)]
        return t

    @cached_property
    def orders(self) -> tuple[int, ...]:
        out = []
        for i in range(self.n):
            k, acc = 1, i
            while acc != 0:
                acc = int(self.add_table[acc, i])
                k += 1
            out.append(k)
        return tuple(out)

    def add_idx(self, i: int, j: int) -> int:
        return int(self.add_table[i, j])

    def neg_idx(self, i: int) -> int:
        return int(self.neg_index[i])

    def mul_idx(self, k: int, i: int) -> int:
        if k < 0:
            k, i = -k, self.neg_idx(i)
        k %= self.orders[i]
        acc = 0
        for _ in range(k):
            acc = self.add_idx(acc, i)
        return acc

    def point_sum(self, coeffs) -> int:
        """Index of sum(coeffs[i] * P_i) under the group law."""
        acc = 0
        for i, c in enumerate(coeffs):
            if c:
                acc = self.add_idx(acc, self.mul_idx(int(c), i))
        return acc

    def __repr__(self) -> str:
        return f"PlaceTable(n={self.n}, {self.curve!r})"


def enumerate_places(curve: Curve) -> PlaceTable:
    """Scan all x, attach the square roots of f(x); infinity comes first."""
    places = [INFINITY]
    for x in range(curve.p):
        for y in curve.field.square_roots(curve.f(x)):
            places.append(CurvePoint(x, y))
    return PlaceTable(curve, places)


@dataclass(frozen=True)
class GroupStructure:
    n: int
    epsilon: int
    doubling_image_size: int
    orders: tuple[int, ...]


def group_structure(curve: Curve, table: PlaceTable) -> GroupStructure:
    """2-torsion count from the roots of f, point orders from the table.

    epsilon = 1 + #roots because the affine 2-torsion points are exactly
    those with y = 0; a cross-check against exhaustive doubling guards
    the table.
    """
    eps = 1 + sum(1 for x in range(curve.p) if curve.f(x) == 0)
    doubled = sum(1 for i in range(table.n) if table.add_idx(i, i) == 0)
    if eps != doubled:
        raise RuntimeError(f"2-torsion mismatch: roots give {eps}, doubling {doubled}")
    if table.n % eps:
        raise RuntimeError(f"2-torsion count {eps} does not divide n={table.n}")
    return GroupStructure(table.n, eps, table.n // eps, table.orders)


def hasse_interval(p: int) -> tuple[int, int]:
    w = math.isqrt(4 * p)  # floor(2 sqrt p)
    return p + 1 - w, p + 1 + w
