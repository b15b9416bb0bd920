"""Exact integer arithmetic: primality, Jacobi symbol, orders, totient.

Everything here is pure and deterministic.  Integers are arbitrary
precision; the primality test is exact below 2^64 and falls back to a
Baillie/PSW-style probable-prime test above, flagged as uncertified.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError


class Verdict(Enum):
    PRIME = "prime"
    COMPOSITE = "composite"
    NOT_PRIME = "not_prime"  # n <= 1


class Method(Enum):
    TRIAL_DIVISION = "trial_division"
    DETERMINISTIC_WITNESS_SET = "deterministic_witness_set"
    PROBABLE_PRIME = "probable_prime"


@dataclass(frozen=True)
class PrimalityResult:
    verdict: Verdict
    method: Method
    is_certified: bool

    def __bool__(self):
        return self.verdict is Verdict.PRIME


def _sieve_upto(limit):
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, int(limit**0.5) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(flags[p * p :: p]))
    return tuple(i for i in range(limit + 1) if flags[i])


SMALL_PRIMES = _sieve_upto(1000)
_SMALL_LIMIT = SMALL_PRIMES[-1] ** 2  # trial division is exact below this

# Deterministic strong-pseudoprime witness set valid for all n < 2^64
# (Sinclair's seven-witness set).
_WITNESSES_U64 = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)
DETERMINISTIC_LIMIT = 1 << 64


def pow_mod(base, exp, modulus):
    """base**exp mod modulus for nonnegative base, exp and modulus >= 1."""
    if modulus < 1:
        raise DomainError("modulus must be >= 1")
    if exp < 0:
        raise DomainError("exponent must be nonnegative")
    return pow(base, exp, modulus)


def _mr_composite(n, a, d, s):
    # n-1 = d * 2^s with d odd; returns True if a witnesses compositeness
    a %= n
    if a == 0:
        return False
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def _is_square(n):
    r = int(n**0.5)
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r * r == n


def _strong_lucas_prp(n):
    # Strong Lucas probable-prime test, Selfridge method A parameters.
    if _is_square(n):
        return False
    D = 5
    while True:
        j = jacobi(D, n)
        if j == 0:
            return abs(D) == n  # shared factor
        if j == -1:
            break
        D = -(D + 2) if D > 0 else -(D - 2)
    Q = (1 - D) // 4
    d = n + 1
    s = (d & -d).bit_length() - 1
    d >>= s
    # Compute U_d, V_d mod n by binary ladder.
    U, V, Qk = 1, 1, Q % n
    for bit in bin(d)[3:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = (U + V) % n, (V + D * U) % n
            if U & 1:
                U += n
            if V & 1:
                V += n
            U, V = (U >> 1) % n, (V >> 1) % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        if V == 0:
            return True
        Qk = Qk * Qk % n
    return False


# Cached verdicts: 0 composite, 1 certified prime (witness set),
# 2 probable prime, 3 prime by trial division, 4 composite by trial division.
@lru_cache(maxsize=1 << 21)
def _verdict(n):
    for p in SMALL_PRIMES:
        if n % p == 0:
            return 3 if n == p else 4
    if n < _SMALL_LIMIT:
        return 3
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    if n < DETERMINISTIC_LIMIT:
        for a in _WITNESSES_U64:
            if _mr_composite(n, a, d, s):
                return 0
        return 1
    if _mr_composite(n, 2, d, s):
        return 0
    return 2 if _strong_lucas_prp(n) else 0


_RESULTS = {
    0: PrimalityResult(Verdict.COMPOSITE, Method.DETERMINISTIC_WITNESS_SET, True),
    1: PrimalityResult(Verdict.PRIME, Method.DETERMINISTIC_WITNESS_SET, True),
    2: PrimalityResult(Verdict.PRIME, Method.PROBABLE_PRIME, False),
    3: PrimalityResult(Verdict.PRIME, Method.TRIAL_DIVISION, True),
    4: PrimalityResult(Verdict.COMPOSITE, Method.TRIAL_DIVISION, True),
}
_NOT_PRIME = PrimalityResult(Verdict.NOT_PRIME, Method.TRIAL_DIVISION, True)


def is_prime(n):
    """Primality verdict for n >= 0; exact below 2^64, BPSW-style above."""
    if n <= 1:
        return _NOT_PRIME
    return _RESULTS[_verdict(n)]


def is_prime_bool(n, allow_probable=True):
    """Convenience predicate; with allow_probable=False a probable prime
    does not count as prime."""
    r = is_prime(n)
    if not r:
        return False
    return allow_probable or r.is_certified


def jacobi(a, n):
    """Jacobi symbol (a|n) for odd n >= 1."""
    if n < 1 or n % 2 == 0:
        raise DomainError("n must be odd and positive")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def factorize(n):
    """Trial-division factorization; returns {prime: exponent}.

    Intended for desk-scale n (totient arguments, p-1 for small primes).
    """
    if n < 1:
        raise DomainError("n must be positive")
    factors = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def mult_order(a, p):
    """Least d >= 1 with a^d = 1 mod p, for prime p not dividing a."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if a % p == 0:
        raise DomainError(f"{p} divides {a}")
    d = p - 1
    for q in factorize(p - 1):
        while d % q == 0 and pow(a, d // q, p) == 1:
            d //= q
    return d


def totient(q):
    """Euler's phi via trial-division factorization."""
    if q < 1:
        raise DomainError("q must be positive")
    result = q
    for p in factorize(q):
        result -= result // p
    return result


# --- exact exponent-window helpers -----------------------------------------
#
# Window membership tests of the form m <= eps*log2(k) are decided in exact
# integer arithmetic: with eps = num/den, the condition is 2^(m*den) <= k^num.


def max_m_leq(epsilon: Fraction, k):
    """Largest integer m >= 0 with m <= epsilon*log2(k), i.e.
    floor(epsilon*log2(k)).  k >= 1."""
    if k < 1:
        raise DomainError("k must be positive")
    eps = Fraction(epsilon)
    if eps <= 0:
        raise DomainError("epsilon must be positive")
    target = k**eps.numerator
    m = 0
    while (1 << ((m + 1) * eps.denominator)) <= target:
        m += 1
    return m


def max_m_lt(epsilon: Fraction, x):
    """Largest integer m >= 0 with m < epsilon*log2(x) (strict); x >= 1."""
    if x < 1:
        raise DomainError("x must be positive")
    eps = Fraction(epsilon)
    if eps <= 0:
        raise DomainError("epsilon must be positive")
    target = x**eps.numerator
    m = 0
    while (1 << ((m + 1) * eps.denominator)) < target:
        m += 1
    return m
