"""Square roots and quadratic residues modulo prime powers."""

from functools import lru_cache

from .errors import ValidationError


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(n):
    """``(p, k)`` with ``n = p**k``, or ``None`` when ``n`` is not a prime power."""
    if n < 2:
        return None
    p = 2
    while p * p <= n and n % p:
        p += 1
    if n % p:
        p = n
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return (p, k) if n == 1 else None


def factorize(n):
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def legendre(a, p):
    """Legendre symbol for an odd prime ``p``: 1, -1 or 0."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


@lru_cache(maxsize=None)
def n_of_p(p):
    """Smallest quadratic non-residue in ``{2, ..., p-1}`` for an odd prime ``p``."""
    if not isinstance(p, int) or p == 2 or not is_prime(p):
        raise ValidationError(f"n(p) needs an odd prime, got {p!r}")
    for a in range(2, p):
        if legendre(a, p) == -1:
            return a
    raise AssertionError("unreachable: every odd prime has a non-residue")


def tonelli_shanks(a, p):
    """A square root of ``a`` modulo the odd prime ``p``; ``ValueError`` if none."""
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        raise ValueError(f"{a} is not a square mod {p}")
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    if s == 1:
        return pow(a, (p + 1) // 4, p)
    z = n_of_p(p)
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def sqrt_mod_prime_power(a, p, k):
    """A root of ``x^2 = a`` modulo ``p**k`` for a unit ``a``.

    Odd ``p``: Tonelli-Shanks modulo ``p`` then Hensel lifting. ``p = 2``:
    bitwise lifting, which needs ``a = 1 mod 8`` once ``k >= 3``.
    """
    mod = p**k
    a %= mod
    if a % p == 0:
        raise ValueError(f"{a} is not a unit mod {p}^{k}")
    if p == 2:
        if k == 1:
            return 1
        if k == 2:
            if a % 4 != 1:
                raise ValueError(f"{a} is not a square mod 4")
            return 1
        if a % 8 != 1:
            raise ValueError(f"{a} is not a square mod 2^{k}")
        r = 1
        for j in range(3, k):
            if (r * r - a) % (1 << (j + 1)):
                r += 1 << (j - 1)
        return r % mod
    r = tonelli_shanks(a, p)
    m = p
    while m < mod:
        m = min(m * m, mod)
        r = (r - (r * r - a) * pow(2 * r, -1, m)) % m
    return r % mod


def is_square_unit(a, p, k):
    """Whether the unit ``a`` is a square modulo ``p**k``."""
    if p == 2:
        return a % (1 << min(k, 3)) == 1 if k >= 2 else True
    return legendre(a, p) == 1


def two_adic_class(u, k):
    """Canonical representative of the odd unit ``u`` modulo squares mod ``2**k``.

    ``{1}`` for ``k = 1``, ``{1, 3}`` for ``k = 2``, ``{-3, -1, 1, 3}`` beyond.
    """
    if u % 2 == 0:
        raise ValidationError(f"{u} is not odd")
    if k == 1:
        return 1
    if k == 2:
        return u % 4
    return {1: 1, 3: 3, 5: -3, 7: -1}[u % 8]
