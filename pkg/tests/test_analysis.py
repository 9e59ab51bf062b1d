import math

import pytest

from eclat._kernel import get_kernel
from eclat.analysis import (
    AnalysisReport,
    CurveSpec,
    analyze_curve,
    cubic_discriminant,
    factorization_roundtrip,
    is_valid_curve,
    iter_curve_coeffs,
    membership_agreement,
    primes_in,
    scan_curves,
)
from eclat.curve import Curve
from eclat.field import PrimeField

JSON_KEYS = {
    "curve", "n", "epsilon", "d_squared", "minimal_count", "det_squared",
    "index", "verdicts", "covering",
}


def test_curve_spec_parse_roundtrip():
    spec = CurveSpec.parse("5:1,0,1,1")
    assert spec.p == 5 and spec.coeffs == (1, 0, 1, 1)
    assert str(spec) == "5:1,0,1,1"
    assert CurveSpec.parse("5:1,0,-1,0").coeffs == (1, 0, 4, 0)


@pytest.mark.parametrize("bad", ["", "5", "5:1,0,1", "4:1,0,1,1", "2:1,0,1,1",
                                 "x:1,0,1,1", "5:1,0,1,one", "9999999:1,0,1,1"])
def test_curve_spec_rejects(bad):
    with pytest.raises(ValueError):
        CurveSpec.parse(bad)


def test_primes_in():
    assert list(primes_in(3, 13)) == [3, 5, 7, 11, 13]
    assert list(primes_in(4, 4)) == []


@pytest.mark.parametrize("p", [3, 5, 7])
def test_discriminant_matches_poly_gcd(p):
    """The scan's discriminant filter agrees with the gcd-based
    square-free validation of the object layer, over every cubic."""
    field = PrimeField(p)
    for c3 in range(1, p):
        for c2 in range(p):
            for c1 in range(p):
                for c0 in range(p):
                    by_disc = cubic_discriminant(p, c3, c2, c1, c0) != 0
                    try:
                        Curve(field, (c3, c2, c1, c0))
                        by_gcd = True
                    except ValueError:
                        by_gcd = False
                    assert by_disc == by_gcd


@pytest.mark.parametrize(
    "p,count", [(3, 36), (5, 400), (7, 1764)]
)
def test_square_free_family_sizes(p, count):
    # (p-1)^2 * p^2 square-free cubics over GF(p)
    assert count == (p - 1) ** 2 * p**2
    assert sum(1 for _ in iter_curve_coeffs(p)) == count


def test_analyze_anchor_curve():
    report = analyze_curve(CurveSpec.parse("5:1,0,1,1"), samples=1000, seed=1)
    assert report.n == 9 and report.epsilon == 1
    assert report.d_squared == 4
    assert report.minimal_count == 108 == report.minimal_count_formula
    assert report.det_squared == 729 and report.index == 9 == report.h_F
    assert report.coset_count == 9
    assert report.well_rounded and report.generated_by_minimal
    assert report.packing_density == pytest.approx((math.pi**4 / 24) / 27, rel=1e-12)
    assert all(v == "pass" for v in report.verdicts.values())
    assert report.overall_pass
    assert report.covering is not None and report.covering.bound == pytest.approx(
        0.5 * (math.sqrt(125) + 3)
    )


def test_analyze_second_anchor():
    report = analyze_curve(CurveSpec.parse("5:1,0,-1,0"), samples=500, seed=1)
    assert report.n == 8 and report.epsilon == 4
    assert report.minimal_count == 76 == report.minimal_count_formula
    assert report.det_squared == 512 and report.index == 8
    assert report.overall_pass


def test_analyze_rejects_invalid():
    with pytest.raises(ValueError, match="square-free"):
        analyze_curve(CurveSpec(5, (1, 0, 0, 0)))
    with pytest.raises(ValueError, match="degree"):
        analyze_curve(CurveSpec(5, (0, 1, 1, 1)))


def test_json_schema(t9):
    report = analyze_curve(CurveSpec.parse("5:1,0,1,1"), samples=200, seed=0)
    d = report.to_json_dict()
    assert JSON_KEYS <= set(d)
    assert d["curve"] == "5:1,0,1,1"
    assert set(d["verdicts"]) == {"Lemma3.1", "Thm3.2", "Thm3.3", "Thm3.4", "Eq1.3"}
    assert set(d["covering"]) == {"bound", "max_observed", "a_n1_max", "seed"}
    import json

    json.dumps(d)  # serializable


def test_analyze_low_n_verdicts_not_applicable(t3):
    spec = CurveSpec(t3.curve.p, t3.curve.coeffs)
    report = analyze_curve(spec, samples=300, seed=0)
    assert report.n == 3
    assert report.verdicts["Lemma3.1"] == "pass"  # n=3 has its own statement
    assert report.verdicts["Thm3.2"] == "not-applicable"
    assert report.verdicts["Thm3.3"] == "not-applicable"
    assert report.verdicts["Thm3.4"] == "pass"
    assert report.verdicts["Eq1.3"] == "pass"
    assert report.d_squared == 6 and report.minimal_count == 6
    assert report.overall_pass


def test_analyze_n4_reported_not_asserted(t4):
    spec = CurveSpec(t4.curve.p, t4.curve.coeffs)
    report = analyze_curve(spec, samples=300, seed=0)
    assert report.n == 4
    assert report.verdicts["Thm3.2"] == "pass"
    assert report.verdicts["Thm3.3"] == "not-applicable"
    assert report.well_rounded is not None  # computed and reported regardless


def test_analyze_zero_samples_skips_covering():
    report = analyze_curve(CurveSpec.parse("5:1,0,1,1"), samples=0)
    assert report.covering is None
    assert report.verdicts["Thm3.4"] == "not-applicable"
    assert report.overall_pass


def test_analyze_deterministic():
    a = analyze_curve(CurveSpec.parse("7:1,2,3,4"), samples=500, seed=3)
    b = analyze_curve(CurveSpec.parse("7:1,2,3,4"), samples=500, seed=3)
    assert a.to_json_dict() == b.to_json_dict()


def test_scan_small_prime():
    reports = list(scan_curves(3, 3, samples=50, seed=0))
    assert len(reports) == 36
    assert all(r.overall_pass for r in reports)
    assert all(r.hasse_ok for r in reports)
    # n can dip below theorem ranges at p=3; those verdicts go n/a
    small = [r for r in reports if r.n < 3]
    for r in small:
        assert r.verdicts["Lemma3.1"] == "not-applicable"
        assert r.verdicts["Thm3.4"] == "not-applicable"
        assert r.verdicts["Eq1.3"] == "pass"  # determinant identity still exact


def test_scan_filter():
    reports = list(scan_curves(5, 5, samples=0, seed=0, filter_n=9))
    assert reports
    assert all(r.n == 9 for r in reports)
    specs = {str(r.curve) for r in reports}
    assert "5:1,0,1,1" in specs


def test_membership_agreement_and_factorization(t9):
    kern = get_kernel()
    for p, coeffs in [(5, (1, 0, 1, 1)), (5, (1, 0, 4, 0)), (7, (1, 2, 3, 4))]:
        s = kern.structural_summary(p, *coeffs)
        assert membership_agreement(s, p, coeffs, samples=1000, seed=0, kern=kern)
        assert factorization_roundtrip(s, p, coeffs, samples=1000, seed=0, kern=kern)


def test_pure_kernel_full_pipeline():
    pure = get_kernel(pure=True)
    report = analyze_curve(
        CurveSpec.parse("5:1,0,1,1"), samples=300, seed=5, kern=pure
    )
    fast = analyze_curve(CurveSpec.parse("5:1,0,1,1"), samples=300, seed=5)
    assert report.to_json_dict() == fast.to_json_dict()
