"""Exact integer helpers: factorization, totient, radical, CRT and geometric sums.

Everything here is integer-only. Inputs at desk scale are well below 10**6, so
factorization is plain trial division.
"""

from __future__ import annotations

from math import gcd, prod
from typing import NamedTuple


class PrimePower(NamedTuple):
    prime: int
    exponent: int


Factorization = list[PrimePower]


def factorize(n: int) -> Factorization:
    """Return the prime factorization of ``n`` as ascending ``(p, alpha)`` pairs.

    >>> factorize(45)
    [PrimePower(prime=3, exponent=2), PrimePower(prime=5, exponent=1)]
    >>> factorize(1)
    []
    """
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    pairs: Factorization = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            pairs.append(PrimePower(p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        pairs.append(PrimePower(n, 1))
    return pairs


def is_prime(p: int) -> bool:
    return p >= 2 and factorize(p) == [PrimePower(p, 1)]


def prime_support(n: int) -> set[int]:
    """The set of primes dividing ``n`` (empty for 1)."""
    return {p for p, _ in factorize(n)}


def radical(n: int) -> int:
    return prod(p for p, _ in factorize(n))


def totient(n: int) -> int:
    return prod((p - 1) * p ** (e - 1) for p, e in factorize(n))


def p_valuation(n: int, p: int) -> int:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError(f"p_valuation needs n >= 1, got {n}")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def is_burnside(n: int) -> bool:
    """True iff gcd(n, phi(n)) == 1."""
    return gcd(n, totient(n)) == 1


def coprime_factorizations(n: int) -> list[tuple[int, int]]:
    """All ``(k, l)`` with ``k*l == n`` and ``gcd(k, l) == 1``, ascending in k.

    Each prime power of ``n`` goes wholly to one side, so there are
    ``2**len(prime_support(n))`` pairs.
    """
    powers = [p**e for p, e in factorize(n)]
    ks = [1]
    for q in powers:
        ks += [k * q for k in ks]
    return [(k, n // k) for k in sorted(ks)]


def geometric_sum(gamma: int, delta: int, modulus: int) -> int:
    """``sum(gamma**i for i in range(delta)) % modulus``, in O(log delta) steps.

    Uses f(2d) = f(d) * (1 + gamma**d) and f(d + 1) = f(d) + gamma**d.
    """
    if modulus < 1:
        raise ValueError("modulus must be positive")
    if delta < 0:
        raise ValueError("delta must be non-negative")
    # invariant: total = f(d), power = gamma**d, both mod modulus
    total, power = 0, 1 % modulus
    for bit in bin(delta)[2:]:
        total = total * (1 + power) % modulus
        power = power * power % modulus
        if bit == "1":
            total = (total + power) % modulus
            power = power * gamma % modulus
    return total


def crt_project(x: int, n: int, p: int) -> int:
    """Image of ``x mod n`` in the p-primary component ``Z/p**v_p(n)``."""
    if n < 1 or p < 2 or n % p:
        raise ValueError(f"{p} does not divide {n}")
    return x % p ** p_valuation(n, p)


def crt_combine(components: list[tuple[int, int]]) -> int:
    """Solve ``x = r (mod m)`` for every ``(r, m)``; moduli must be pairwise coprime."""
    x, modulus = 0, 1
    for r, m in components:
        if m < 1:
            raise ValueError(f"bad modulus {m}")
        if gcd(modulus, m) != 1:
            raise ValueError(f"moduli not coprime: {modulus} and {m}")
        # x + modulus * u = r (mod m)
        u = (r - x) * pow(modulus, -1, m) % m
        x += modulus * u
        modulus *= m
    return x % modulus


def chi_coefficients(n: int) -> list[int]:
    """Coefficients of prod over p | n of (x + p**v_p(n)); index = power of x."""
    coeffs = [1]
    for p, e in factorize(n):
        q = p**e
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i] += c * q
            nxt[i + 1] += c
        coeffs = nxt
    return coeffs


def multiplicative_order(a: int, m: int) -> int:
    """Least n >= 1 with a**n = 1 (mod m); a must be a unit."""
    if m == 1:
        return 1
    if gcd(a, m) != 1:
        raise ValueError(f"{a} is not a unit mod {m}")
    order = totient(m)
    for p, _ in factorize(order):
        while order % p == 0 and pow(a, order // p, m) == 1:
            order //= p
    return order
