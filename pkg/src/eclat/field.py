"""Exact arithmetic in the prime field GF(p) for odd primes p.

Two surfaces are provided: :class:`PrimeField` works directly on Python
ints (used by the rest of the package), and :class:`FieldElement` is a
thin operator-overloading wrapper for interactive use and tests.
"""

from __future__ import annotations


def is_prime(n: int) -> bool:
    """Trial-division primality test; plenty for desk-scale moduli."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


class PrimeField:
    """GF(p) for an odd prime p >= 3.

    A table of all square roots is built once at construction (one pass
    over the field), so ``square_roots`` is an exact O(1) lookup.
    """

    __slots__ = ("p", "_roots")

    def __init__(self, p: int):
        p = int(p)
        if p < 3 or p % 2 == 0 or not is_prime(p):
            raise ValueError(f"modulus must be an odd prime >= 3, got {p}")
        self.p = p
        roots: dict[int, tuple[int, ...]] = {}
        for y in range(p):
            sq = y * y % p
            roots.setdefault(sq, ())
            roots[sq] = roots[sq] + (y,)
        self._roots = roots

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def inv(self, a: int) -> int:
        """Multiplicative inverse via the extended Euclidean algorithm."""
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        s, old_s = 0, 1
        r, old_r = self.p, a
        while r:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
        return old_s % self.p

    def div(self, a: int, b: int) -> int:
        return a * self.inv(b) % self.p

    def square_roots(self, a: int) -> tuple[int, ...]:
        """All y with y^2 = a, sorted; empty for non-residues, (0,) for a=0."""
        return self._roots.get(a % self.p, ())

    def element(self, value: int) -> "FieldElement":
        return FieldElement(value, self)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


class FieldElement:
    """A value in [0, p) tied to its field; arithmetic via operators."""

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: PrimeField):
        self.field = field
        self.value = int(value) % field.p

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.value
        return int(other) % self.field.p

    def __add__(self, other):
        return FieldElement(self.value + self._coerce(other), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.value - self._coerce(other), self.field)

    def __rsub__(self, other):
        return FieldElement(self._coerce(other) - self.value, self.field)

    def __mul__(self, other):
        return FieldElement(self.value * self._coerce(other), self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(
            self.value * self.field.inv(self._coerce(other)), self.field
        )

    def __neg__(self):
        return FieldElement(-self.value, self.field)

    def __pow__(self, k: int):
        return FieldElement(pow(self.value, k, self.field.p), self.field)

    def inv(self) -> "FieldElement":
        return FieldElement(self.field.inv(self.value), self.field)

    def square_roots(self) -> tuple["FieldElement", ...]:
        return tuple(
            FieldElement(y, self.field) for y in self.field.square_roots(self.value)
        )

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.p, self.value))

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"FieldElement({self.value} mod {self.field.p})"
