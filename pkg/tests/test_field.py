import pytest
from hypothesis import given
from hypothesis import strategies as st

from eclat.field import FieldElement, PrimeField, is_prime

SMALL_PRIMES = [3, 5, 7, 11, 13]


@pytest.mark.parametrize("p", [4, 9, 15, 2, 1, 0, -5])
def test_rejects_non_odd_primes(p):
    with pytest.raises(ValueError):
        PrimeField(p)


def test_is_prime_basics():
    assert [q for q in range(2, 20) if is_prime(q)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_add_mul_sub_examples():
    f = PrimeField(5)
    assert f.add(3, 4) == 2  # 7 mod 5
    for a in range(5):
        assert f.mul(a, 1) == a
        assert f.sub(a, a) == 0


def test_inverse_examples():
    f = PrimeField(5)
    assert f.inv(3) == 2  # 3*2 = 6 = 1 mod 5
    assert f.inv(1) == 1
    assert f.inv(4) == 4  # (-1)^2 = 1
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_inverse_involution_and_product(p):
    f = PrimeField(p)
    for a in range(1, p):
        assert f.mul(a, f.inv(a)) == 1
        assert f.inv(f.inv(a)) == a


def test_square_roots_examples():
    f = PrimeField(5)
    assert f.square_roots(0) == (0,)
    # oracle: enumerate all y with y^2 = a
    assert f.square_roots(4) == tuple(y for y in range(5) if y * y % 5 == 4) == (2, 3)
    assert f.square_roots(3) == ()


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_square_roots_partition_field(p):
    f = PrimeField(p)
    sizes = [len(f.square_roots(a)) for a in range(p)]
    assert all(s in (0, 1, 2) for s in sizes)
    assert sum(sizes) == p  # every y squares to exactly one a
    for a in range(p):
        for y in f.square_roots(a):
            assert y * y % p == a


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_field_axioms_exhaustive(p):
    f = PrimeField(p)
    elems = range(p)
    for a in elems:
        for b in elems:
            assert f.add(a, b) == f.add(b, a)
            assert f.mul(a, b) == f.mul(b, a)
            for c in elems:
                assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
                assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


def test_element_operators():
    f = PrimeField(7)
    a, b = f.element(3), f.element(5)
    assert (a + b).value == 1
    assert (a - b).value == 5
    assert (a * b).value == 1
    assert (a / b).value == (3 * f.inv(5)) % 7
    assert (-a).value == 4
    assert (a**3).value == 27 % 7
    assert a.inv() * a == f.element(1)
    assert a == 3 and a == f.element(3)
    assert set(f.element(4).square_roots()) == {f.element(2), f.element(5)}


def test_mixed_field_operations_rejected():
    a = PrimeField(5).element(2)
    b = PrimeField(7).element(2)
    with pytest.raises(ValueError):
        _ = a + b


@given(st.sampled_from(SMALL_PRIMES), st.integers(min_value=-100, max_value=100))
def test_element_value_always_reduced(p, v):
    e = PrimeField(p).element(v)
    assert 0 <= e.value < p
    assert (e + (-e)).value == 0
