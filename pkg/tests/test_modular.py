import pytest

from helpers import is_square_brute
from kkt.errors import ValidationError
from kkt.modular import (
    factorize,
    is_prime,
    is_square_unit,
    legendre,
    n_of_p,
    prime_power,
    sqrt_mod_prime_power,
    tonelli_shanks,
    two_adic_class,
)

PRIMES = [p for p in range(3, 1000) if is_prime(p)]


def test_small_values():
    assert (n_of_p(3), n_of_p(5), n_of_p(7)) == (2, 2, 3)


@pytest.mark.parametrize("bad", [2, 9, 1, 0, 15])
def test_n_of_p_rejects(bad):
    with pytest.raises(ValidationError):
        n_of_p(bad)


def test_n_of_p_minimality_below_1000():
    for p in PRIMES:
        squares = {x * x % p for x in range(1, p)}
        n = n_of_p(p)
        assert n not in squares
        assert all(a in squares for a in range(2, n))


def test_prime_helpers():
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert prime_power(27) == (3, 3) and prime_power(12) is None and prime_power(2) == (2, 1)
    assert factorize(360) == {2: 3, 3: 2, 5: 1}


def test_legendre_against_squares():
    for p in PRIMES[:25]:
        for a in range(1, p):
            assert (legendre(a, p) == 1) == is_square_brute(a, p)


def test_tonelli_shanks():
    for p in PRIMES[:60]:
        for a in range(1, p):
            if legendre(a, p) == 1:
                r = tonelli_shanks(a, p)
                assert r * r % p == a
            else:
                with pytest.raises(ValueError):
                    tonelli_shanks(a, p)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13, 17, 19, 23])
def test_sqrt_against_brute_force(p):
    k = 1
    while p**k <= 512:
        m = p**k
        for a in range(1, m):
            if a % p == 0:
                continue
            if is_square_brute(a, m):
                r = sqrt_mod_prime_power(a, p, k)
                assert r * r % m == a
                assert is_square_unit(a, p, k)
            else:
                assert not is_square_unit(a, p, k)
                with pytest.raises(ValueError):
                    sqrt_mod_prime_power(a, p, k)
        k += 1


def test_two_adic_classes():
    for k in range(1, 8):
        m = 2**k
        reps = {1} if k == 1 else ({1, 3} if k == 2 else {1, 3, -3, -1})
        for u in range(1, m, 2):
            c = two_adic_class(u, k)
            assert c in reps
            # u / c is a square unit
            assert is_square_brute(u * pow(c, -1, m) % m, m)
    with pytest.raises(ValidationError):
        two_adic_class(2, 3)
