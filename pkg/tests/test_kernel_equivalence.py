"""The compiled kernels and the pure-Python fallback must agree exactly,
and both must agree with the object layer."""

import numpy as np
import pytest

from eclat import _kernel_py
from eclat._kernel import HAVE_SPEEDUPS, get_kernel
from eclat.analysis import iter_curve_coeffs

pytestmark = pytest.mark.skipif(
    not HAVE_SPEEDUPS, reason="compiled extension not built"
)

from eclat import _speedups  # noqa: E402  (guarded by the skip above)

SCALAR_KEYS = [
    "n", "eps", "minimal_count", "rank", "minimal_rank", "min_hnf_equal",
    "gram_det", "index", "coset_distinct", "norm2_excluded", "witness_ok",
    "decomp_total", "decomp_ok", "assoc_checked", "assoc_ok", "torsion_ok",
]
ARRAY_KEYS = [
    "xs", "ys", "add", "neg", "orders", "mult_flat", "mult_off",
    "minimal", "gen_hnf",
]


def curve_sample():
    cases = [(5, c) for c in iter_curve_coeffs(5)]
    for p in (7, 11, 13):
        coeffs = list(iter_curve_coeffs(p))
        cases.extend((p, c) for c in coeffs[:: max(1, len(coeffs) // 8)])
    return cases


@pytest.mark.parametrize("p,coeffs", curve_sample())
def test_structural_summary_twins_agree(p, coeffs):
    a = _kernel_py.structural_summary(p, *coeffs)
    b = _speedups.structural_summary(p, *coeffs)
    for key in SCALAR_KEYS:
        assert a[key] == b[key], key
    for key in ARRAY_KEYS:
        assert np.array_equal(a[key], b[key]), key


def _tables(kern, p, coeffs):
    n, eps, xs, ys, add, neg, orders = kern.group_tables(p, *coeffs)
    mult_flat, mult_off = kern.multiples_table(add, orders)
    return add, neg, orders, mult_flat, mult_off


@pytest.mark.parametrize("p,coeffs", [(5, (1, 0, 1, 1)), (7, (1, 2, 3, 4)),
                                      (13, (1, 0, 0, 1))])
def test_batch_functions_twins_agree(p, coeffs):
    ctx_a = _tables(_kernel_py, p, coeffs)
    ctx_b = _tables(_speedups, p, coeffs)
    for arr_a, arr_b in zip(ctx_a, ctx_b):
        assert np.array_equal(arr_a, arr_b)
    add, neg, orders, mult_flat, mult_off = ctx_a
    n = add.shape[0]
    rng = np.random.default_rng(100)

    vs = rng.integers(-8, 9, size=(500, n))
    pa = _kernel_py.group_point_batch(add, orders, mult_flat, mult_off, vs)
    pb = _speedups.group_point_batch(add, orders, mult_flat, mult_off, vs)
    assert np.array_equal(pa, pb)

    gens = _kernel_py.generator_matrix(add)
    h = _kernel_py.hnf_i64(gens)
    sums = vs.sum(axis=1)
    members = vs - np.outer(sums, np.eye(n, dtype=np.int64)[0])
    ma = _kernel_py.hnf_member_batch(h, members)
    mb = _speedups.hnf_member_batch(h, members)
    assert np.array_equal(ma, mb)

    reals = rng.uniform(-10, 10, size=(500, n))
    da, oka = _kernel_py.decode_batch(add, orders, mult_flat, mult_off, reals)
    db, okb = _speedups.decode_batch(add, orders, mult_flat, mult_off, reals)
    assert oka.all() and okb.all()
    assert np.array_equal(da, db)  # bit-identical doubles

    one = reals[0] - reals[0].sum() / n
    ra = _kernel_py.decode_one(add, orders, mult_flat, mult_off, one)
    rb = _speedups.decode_one(add, orders, mult_flat, mult_off, one)
    assert np.array_equal(ra[0], rb[0]) and np.array_equal(ra[3], rb[3])
    assert ra[1] == rb[1] and ra[2] == rb[2] and ra[4] == rb[4]

    # principal divisors for the factorization batch
    ds = rng.integers(-5, 6, size=(300, n))
    ds[:, 0] = 0
    pts = _kernel_py.group_point_batch(add, orders, mult_flat, mult_off, ds)
    rows = np.arange(300)
    ds[rows[pts != 0], pts[pts != 0]] -= 1
    ds[:, 0] = -ds[:, 1:].sum(axis=1)
    fa = _kernel_py.factor_check_batch(add, neg, orders, mult_flat, mult_off, ds)
    fb = _speedups.factor_check_batch(add, neg, orders, mult_flat, mult_off, ds)
    assert fa.all() and np.array_equal(fa, fb)


@pytest.mark.parametrize("kern_name", ["python", "cython"])
def test_hnf_matches_object_layer(kern_name):
    from eclat.lattice import hnf as hnf_ref

    kern = _kernel_py if kern_name == "python" else _speedups
    rng = np.random.default_rng(200)
    for _ in range(100):
        m = rng.integers(1, 7)
        mat = rng.integers(-9, 10, size=(m, 5)).astype(np.int64)
        assert np.array_equal(kern.hnf_i64(mat), hnf_ref(mat))


@pytest.mark.parametrize("kern_name", ["python", "cython"])
def test_gram_det_matches_object_layer(kern_name):
    from eclat.lattice import gram_det as gram_ref

    kern = _kernel_py if kern_name == "python" else _speedups
    rng = np.random.default_rng(300)
    for _ in range(100):
        mat = rng.integers(-6, 7, size=(5, 8)).astype(np.int64)
        assert kern.gram_det(mat) == gram_ref(mat.tolist())


def test_group_tables_match_object_layer(t9, t8):
    for table in (t9, t8):
        p = table.curve.p
        for kern in (_kernel_py, _speedups):
            n, eps, xs, ys, add, neg, orders = kern.group_tables(
                p, *table.curve.coeffs
            )
            assert n == table.n
            assert np.array_equal(add, table.add_table)
            assert np.array_equal(neg, table.neg_index)
            assert tuple(orders.tolist()) == table.orders
            places = [(int(x), int(y)) for x, y in zip(xs[1:], ys[1:])]
            assert places == [(q.x, q.y) for q in table.places[1:]]


def test_minimal_matrix_matches_object_layer(t9, t3):
    from eclat.geometry import minimal_vectors

    for table in (t9, t3):
        expected = [v.coeffs for v in minimal_vectors(table).vectors]
        for kern in (_kernel_py, _speedups):
            add = np.ascontiguousarray(table.add_table, dtype=np.int32)
            got = [tuple(row) for row in kern.minimal_vector_matrix(add).tolist()]
            assert sorted(got) == sorted(expected)


def test_generator_matrix_matches_object_layer(t9):
    from eclat.lattice import generators

    expected = [g.coeffs for g in generators(t9)]
    add = np.ascontiguousarray(t9.add_table, dtype=np.int32)
    for kern in (_kernel_py, _speedups):
        got = [tuple(row) for row in kern.generator_matrix(add).tolist()]
        assert got == expected


def test_get_kernel_dispatch(monkeypatch):
    assert get_kernel(pure=True) is _kernel_py
    assert get_kernel(pure=False) is _speedups
    monkeypatch.setenv("ECLAT_PURE", "1")
    assert get_kernel() is _kernel_py
    monkeypatch.setenv("ECLAT_PURE", "0")
    assert get_kernel() is _speedups
