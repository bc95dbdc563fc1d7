import pytest

from hilbertkunz.errors import UserError
from hilbertkunz.field import FieldElement, FieldMismatchError, PrimeField, is_prime


@pytest.mark.parametrize("p", [2, 3, 5, 7, 101])
def test_field_axioms(p):
    """Spot-check the ring axioms and inverses on every residue."""
    F = PrimeField(p)
    for a in range(p):
        assert F.add(a, F.neg(a)) == 0
        assert F.mul(a, 1) == a
        if a:
            assert F.mul(a, F.inv(a)) == 1
    for a in range(p):
        for b in range(p):
            assert F.add(a, b) == (a + b) % p
            assert F.mul(a, b) == (a * b) % p
            assert F.sub(a, b) == F.add(a, F.neg(b))


def test_rejects_non_prime():
    for bad in (0, 1, 4, 6, 9, 1 << 31):
        with pytest.raises(UserError):
            PrimeField(bad)


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}
    for n in range(50):
        assert is_prime(n) == (n in primes)
    assert is_prime(2**31 - 1)  # Mersenne prime
    assert not is_prime(2**31 - 3)


def test_inverse_of_zero():
    F = PrimeField(7)
    with pytest.raises(ZeroDivisionError):
        F.inv(0)
    with pytest.raises(ZeroDivisionError):
        F.inv(14)


def test_element_wrapper():
    F = PrimeField(5)
    a = F.element(3)
    b = F.element(4)
    assert (a + b).value == 2
    assert (a * b).value == 2
    assert (-a).value == 2
    assert a.inv().value == 2
    assert not F.element(0)
    with pytest.raises(FieldMismatchError):
        a + PrimeField(7).element(1)


def test_field_is_hashable_and_frozen():
    assert PrimeField(5) == PrimeField(5)
    assert len({PrimeField(5), PrimeField(5), PrimeField(7)}) == 2
    assert isinstance(FieldElement(PrimeField(3), 2), FieldElement)
