"""Constructive covering-radius decoder.

Any point of the sum-zero span is moved to a lattice point within
(1/2)(sqrt(n^2 + 4n + 8) + sqrt(n)): round each coordinate (half-integers
take the floor), locate the place j that the rounded vector sums to under
the group law, then repair coordinates 0 and j.  Integer inputs from the
sum-zero lattice land within sqrt(2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._kernel import get_kernel
from .curve import PlaceTable
from .geometry import VerificationError

SUM_TOLERANCE = 1e-9


def covering_bound(n: int) -> float:
    """Upper bound for the covering radius at n rational places."""
    if n < 3:
        raise ValueError("covering bound stated for n >= 3")
    return 0.5 * (math.sqrt(n * n + 4 * n + 8) + math.sqrt(n))


@dataclass(frozen=True)
class DecodeTrace:
    v: tuple[float, ...]  # input after exact re-projection to sum zero
    w1: tuple[int, ...]  # rounded vector
    s: int  # coordinate sum of w1
    j: int  # place index the rounding sums to
    w2: tuple[int, ...]  # decoded lattice vector
    distance: float


def decode(table: PlaceTable, v) -> DecodeTrace:
    """Decode one span vector; raises on inputs off the span.

    The trace invariants are checked on every call: rounding error at
    most sqrt(n)/2, |s| at most n/2, output in the lattice, distance
    within the covering bound (and within sqrt(2) for integer inputs).
    """
    n = table.n
    v = [float(x) for x in v]
    if len(v) != n:
        raise ValueError(f"vector length {len(v)} != n = {n}")
    total = 0.0
    for x in v:
        total += x
    if abs(total) >= SUM_TOLERANCE:
        raise ValueError(f"coordinate sum {total} is not ~0: not in the span")
    mean = total / n
    r = [x - mean for x in v]

    w1 = [math.ceil(x - 0.5) for x in r]
    s = 0
    for a in w1:
        s += a
    j = table.point_sum(w1)
    rest = s - w1[0]
    w2 = list(w1)
    if j != 0:
        w2[0] = -rest + 1
        w2[j] -= 1
    else:
        w2[0] = -rest
    acc = 0.0
    for x, b in zip(r, w2):
        d = x - b
        acc += d * d
    distance = math.sqrt(acc)

    round_err = sum((x - a) ** 2 for x, a in zip(r, w1))
    if round_err > n / 4.0 + 1e-9:
        raise VerificationError("rounding error exceeded sqrt(n)/2")
    if 2 * abs(s) > n:
        raise VerificationError("|rounded coordinate sum| exceeded n/2")
    if sum(w2) != 0 or table.point_sum(w2) != 0:
        raise VerificationError("decoder output is not a lattice member")
    if distance > covering_bound(n) + 1e-9:
        raise VerificationError("decode distance exceeded the covering bound")
    if all(x == a for x, a in zip(r, w1)) and distance > math.sqrt(2) + 1e-12:
        raise VerificationError("integer input decoded farther than sqrt(2)")
    return DecodeTrace(tuple(r), tuple(w1), s, j, tuple(w2), distance)


@dataclass(frozen=True)
class CoveringReport:
    n: int
    bound: float
    standard_bound: int  # n - 1, from minimum distance + rank alone
    max_observed: float
    a_n1_max: float
    samples: int
    seed: int

    @property
    def bound_beats_standard(self) -> bool:
        return self.bound < self.standard_bound


def kernel_context(table: PlaceTable, kern=None):
    """(kernel, add, orders, mult_flat, mult_off) arrays for batch calls."""
    kern = kern or get_kernel()
    add = np.ascontiguousarray(table.add_table, dtype=np.int32)
    orders = np.array(table.orders, dtype=np.int32)
    mult_flat, mult_off = kern.multiples_table(add, orders)
    return kern, add, orders, mult_flat, mult_off


def covering_report_from_tables(
    kern, add, orders, mult_flat, mult_off, p: int, coeffs, samples: int, seed: int
) -> CoveringReport:
    """Sampled verification of the covering bound on raw kernel tables.

    `samples` random span vectors (coordinates in [-10, 10], projected)
    and as many random sum-zero integer vectors are decoded; the maxima
    must respect the bound and sqrt(2) respectively or the report raises.
    The per-curve stream is derived from (seed, p, coefficients) so scan
    results are order-independent and reproducible.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    n = add.shape[0]
    rng = np.random.default_rng([seed, p, *coeffs, 1])
    span = rng.uniform(-10.0, 10.0, size=(samples, n))
    span -= span.mean(axis=1, keepdims=True)
    dist_span, ok_span = kern.decode_batch(add, orders, mult_flat, mult_off, span)

    ints = rng.integers(-10, 11, size=(samples, n))
    ints[:, -1] -= ints.sum(axis=1)
    dist_int, ok_int = kern.decode_batch(
        add, orders, mult_flat, mult_off, ints.astype(np.float64)
    )

    if not (bool(ok_span.all()) and bool(ok_int.all())):
        raise VerificationError("a decode violated its internal invariants")
    max_observed = float(dist_span.max())
    a_n1_max = float(dist_int.max())
    bound = covering_bound(n)
    if max_observed > bound + 1e-9:
        raise VerificationError(
            f"span decode at distance {max_observed} > bound {bound}"
        )
    if a_n1_max > math.sqrt(2) + 1e-12:
        raise VerificationError(f"integer decode at distance {a_n1_max} > sqrt(2)")
    return CoveringReport(
        n=n,
        bound=bound,
        standard_bound=n - 1,
        max_observed=max_observed,
        a_n1_max=a_n1_max,
        samples=samples,
        seed=seed,
    )


def covering_report(
    table: PlaceTable, samples: int = 10_000, seed: int = 0, kern=None
) -> CoveringReport:
    """Sampled covering-bound verification for a place table."""
    kern, add, orders, mult_flat, mult_off = kernel_context(table, kern)
    return covering_report_from_tables(
        kern,
        add,
        orders,
        mult_flat,
        mult_off,
        table.curve.p,
        table.curve.coeffs,
        samples,
        seed,
    )
