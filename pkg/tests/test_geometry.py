import math

import numpy as np
import pytest

from oracles import oracle_minimal_vectors, oracle_table

from eclat.funcfield import Divisor
from eclat.geometry import (
    VerificationError,
    decompose_generator,
    generated_by_minimal,
    is_well_rounded,
    minimal_count_formula,
    minimal_vectors,
    minimum_distance,
    packing_density,
    sum_zero_vectors_of_norm,
)
from eclat.lattice import basis, contains, generators, hnf


def test_minimal_vectors_anchor_counts(t9, t8):
    assert minimal_vectors(t9).count == 108
    assert minimal_vectors(t8).count == 76


@pytest.mark.parametrize("fixture", ["t9", "t8", "t5"])
def test_minimal_vectors_match_quadruple_oracle(fixture, request):
    table = request.getfixturevalue(fixture)
    coeffs = table.curve.coeffs
    _, otable = oracle_table(table.curve.p, coeffs)
    expected = oracle_minimal_vectors(otable)
    got = {v.coeffs for v in minimal_vectors(table).vectors}
    assert got == expected


def test_minimal_vectors_structure(t9):
    mvs = minimal_vectors(t9)
    assert mvs.d_squared == 4
    b = basis(t9)
    seen = set()
    for v in mvs.vectors:
        assert v.norm_sq == 4
        assert sorted(v.coeffs) == [-1, -1] + [0] * (t9.n - 4) + [1, 1]
        assert -v in mvs
        assert contains(t9, b, v.coeffs)
        assert v.coeffs not in seen
        seen.add(v.coeffs)
    assert mvs.count % 2 == 0


def test_minimal_vectors_n3(t3):
    mvs = minimal_vectors(t3)
    assert mvs.d_squared == 6 and mvs.count == 6
    expected = {
        (-2, 1, 1), (2, -1, -1), (1, -2, 1), (-1, 2, -1), (1, 1, -2), (-1, -1, 2),
    }
    assert {v.coeffs for v in mvs.vectors} == expected
    b = basis(t3)
    for v in mvs.vectors:
        assert contains(t3, b, v.coeffs)


def test_minimal_count_formula_values():
    assert minimal_count_formula(9, 1) == 108
    assert minimal_count_formula(8, 4) == 2 * 2 + 6 * 12 == 76
    assert minimal_count_formula(4, 4) == 6
    with pytest.raises(ValueError, match="divide"):
        minimal_count_formula(9, 2)
    with pytest.raises(ValueError, match="n >= 4"):
        minimal_count_formula(3, 1)


@pytest.mark.parametrize("fixture", ["t9", "t8", "t4", "t5"])
def test_count_matches_formula(fixture, request):
    table = request.getfixturevalue(fixture)
    from eclat.curve import group_structure

    eps = group_structure(table.curve, table).epsilon
    assert minimal_vectors(table).count == minimal_count_formula(table.n, eps)


def test_minimum_distance(t9, t8, t3):
    assert minimum_distance(t9, basis(t9)) == (4, 2.0)
    assert minimum_distance(t8, basis(t8)) == (4, 2.0)
    d2, d = minimum_distance(t3, basis(t3))
    assert d2 == 6 and d == math.sqrt(6)


def test_norm2_vectors_never_members(t9):
    b = basis(t9)
    for v in sum_zero_vectors_of_norm(t9.n, 2):
        assert not contains(t9, b, v)


def test_sum_zero_vector_generator():
    n = 5
    for norm in (2, 4, 6):
        vs = list(sum_zero_vectors_of_norm(n, norm))
        assert len(vs) == len(set(vs))
        for v in vs:
            assert sum(v) == 0
            assert sum(x * x for x in v) == norm
    assert len(list(sum_zero_vectors_of_norm(3, 4))) == 0
    assert len(list(sum_zero_vectors_of_norm(3, 6))) == 6


def test_well_rounded_and_generated(t9, t8, t5, t3):
    for table in (t9, t8, t5):
        mvs = minimal_vectors(table)
        assert is_well_rounded(mvs, table.n)
        assert generated_by_minimal(mvs, basis(table))
    # n = 3: the six vectors span rank 2
    assert is_well_rounded(minimal_vectors(t3), 3)
    empty = minimal_vectors(t9).__class__(vectors=(), d_squared=4)
    assert not is_well_rounded(empty, t9.n)


def test_single_minimal_vector_does_not_generate(t9):
    mvs = minimal_vectors(t9)
    one = mvs.__class__(vectors=mvs.vectors[:1], d_squared=4)
    assert not generated_by_minimal(one, basis(t9))


def test_hnf_of_minimal_equals_hnf_of_generators(t9, t8, t5):
    for table in (t9, t8, t5):
        h_min = hnf([v.coeffs for v in minimal_vectors(table).vectors])
        h_gen = hnf([g.coeffs for g in generators(table)])
        assert np.array_equal(h_min, h_gen)


def _nonminimal_generators(table, mvs):
    return [g for g in generators(table) if g not in mvs]


def test_decompose_all_nonminimal_generators(t9, t8, t5):
    for table in (t9, t8, t5):
        mvs = minimal_vectors(table)
        nonmin = _nonminimal_generators(table, mvs)
        assert nonmin, "expected degenerate generators"
        for g in nonmin:
            dec = decompose_generator(table, mvs, g)
            total = Divisor.zero(table.n)
            for sign, term in dec.terms:
                assert term in mvs
                total = total + (term if sign > 0 else -term)
            assert total == g
            # negated orientation decomposes too
            dec2 = decompose_generator(table, mvs, -g)
            total2 = Divisor.zero(table.n)
            for sign, term in dec2.terms:
                assert term in mvs
                total2 = total2 + (term if sign > 0 else -term)
            assert total2 == -g


def test_decompose_rejects_minimal_and_small_n(t9, t4):
    mvs = minimal_vectors(t9)
    minimal_gen = next(g for g in generators(t9) if g in mvs)
    with pytest.raises(ValueError, match="already minimal"):
        decompose_generator(t9, mvs, minimal_gen)
    mvs4 = minimal_vectors(t4)
    some = generators(t4)[0]
    with pytest.raises(ValueError, match="five"):
        decompose_generator(t4, mvs4, some)


def test_packing_density():
    assert packing_density(2, 2.0, 1.0) == pytest.approx(2.0)  # rank 1 ball = 2r
    expected = (math.pi**4 / 24) / 27
    assert packing_density(9, 2.0, 27.0) == pytest.approx(expected, rel=1e-12)
    assert packing_density(9, 2.0, 54.0) == pytest.approx(expected / 2, rel=1e-12)
    with pytest.raises(ValueError):
        packing_density(9, 0.0, 27.0)


def test_minimum_distance_detects_planted_violation(t9):
    """A fake basis containing a norm-2 vector must trip the brute force."""
    fake = basis(t9)
    rows = fake.rows.copy()
    rows[0] = 0
    rows[0, 0], rows[0, 1] = 1, -1
    bad = fake.__class__(rows=hnf(rows), gram_det=fake.gram_det)
    with pytest.raises((VerificationError, RuntimeError)):
        minimum_distance(t9, bad)
