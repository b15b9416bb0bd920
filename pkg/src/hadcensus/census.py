"""Counting functions and analytic ingredients at desk scale.

S-counts and their first/second moments, the sigma reindexing identity,
the N/M/M' censuses, primes in arithmetic progression by segmented sieve,
the von Mangoldt function and Chebyshev psi, and the logarithmic integral
with its Riemann-sum sandwich.  Exponent-window edges are decided in exact
rational arithmetic (see arith.max_m_leq / max_m_lt).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy import integrate

from . import arith
from .errors import DomainError, WindowError

# pi terms with bound at most this are cross-computed by an actual sieve;
# above it the progression is enumerated and each member primality-tested.
PI_SIEVE_LIMIT = 10**7
SEGMENT_SIZE_DEFAULT = 1 << 20


@dataclass(frozen=True)
class CensusParams:
    x: int
    epsilon: Fraction
    L: int  # floor(epsilon*log2(x)) - 1

    @classmethod
    def create(cls, x, epsilon):
        epsilon = Fraction(epsilon)
        if x < 1:
            raise DomainError("x must be positive")
        return cls(x, epsilon, arith.max_m_leq(epsilon, x) - 1)

    def require_window(self):
        if self.L < 1:
            raise WindowError(
                f"empty window: L = {self.L} for x = {self.x}, "
                f"epsilon = {self.epsilon}"
            )


@dataclass(frozen=True)
class CensusReport:
    params: CensusParams
    sigma: int
    pi_terms: tuple  # ((l, count), ...)
    sum_S_squared: int
    N: int
    M: int
    M_prime: int
    H_lower: int
    cs_lower_bound: Fraction
    upper_curve: float
    certified: bool
    degenerate_flags: tuple

    def to_json_dict(self):
        x = self.params.x
        return {
            "params": {
                "x": x,
                "epsilon": str(self.params.epsilon),
                "L": self.params.L,
            },
            "sigma": self.sigma,
            "pi_terms": [[l, c] for l, c in self.pi_terms],
            "sum_S_squared": self.sum_S_squared,
            "N": self.N,
            "M": self.M,
            "M_prime": self.M_prime,
            "H_lower": self.H_lower,
            "cs_lower_bound": float(self.cs_lower_bound),
            "upper_curve": self.upper_curve,
            "certified": self.certified,
            "degenerate_flags": list(self.degenerate_flags),
            "ratios": {
                "N_over_x": self.N / x,
                "M_over_x": self.M / x,
                "M_prime_over_x": self.M_prime / x,
                "H_lower_over_x": self.H_lower / x,
                "reference_curve": 2 * math.log2(1 + float(self.params.epsilon)),
            },
        }

    def to_csv(self):
        lines = ["l,pi_count"]
        lines += [f"{l},{c}" for l, c in self.pi_terms]
        return "\n".join(lines) + "\n"


# --- S counts and the sigma identity ----------------------------------------


def S_count(k, L, allow_probable=True):
    """Number of l in 1..L with 2^l*k - 1 prime (k odd)."""
    if k < 1 or k % 2 == 0:
        raise DomainError("k must be odd and positive")
    if L < 1:
        raise DomainError("L must be >= 1")
    return sum(
        1 for l in range(1, L + 1)
        if arith.is_prime_bool((k << l) - 1, allow_probable)
    )


def _s_moments(x, L, allow_probable=True):
    """(sum S, sum S^2, certified) over odd k <= x."""
    total = 0
    total_sq = 0
    certified = True
    for k in range(1, x + 1, 2):
        s = 0
        for l in range(1, L + 1):
            r = arith.is_prime((k << l) - 1)
            if r and (allow_probable or r.is_certified):
                s += 1
                certified = certified and r.is_certified
        total += s
        total_sq += s * s
    return total, total_sq, certified


def _progression_prime_count(l, x, allow_probable=True):
    """(count, certified): primes p <= 2^l*x with p = 2^l - 1 mod 2^(l+1).

    Such p are exactly 2^l*k - 1 for odd k <= x.  Small primes screen the
    bulk; survivors get an individual primality test.
    """
    ks = np.arange(1, x + 1, 2, dtype=np.int64)
    keep = np.ones(ks.size, dtype=bool)
    count = 0
    for p in arith.SMALL_PRIMES[1:]:
        t = pow(2, l, p)
        r = pow(t, -1, p)
        keep &= ks % p != r
        # re-admit the screened k whose value *is* the prime p itself
        if (p + 1) % (1 << l) == 0:
            k0 = (p + 1) >> l
            if k0 % 2 == 1 and k0 <= x:
                count += 1
    certified = True
    for k in ks[keep]:
        res = arith.is_prime((int(k) << l) - 1)
        if res and (allow_probable or res.is_certified):
            count += 1
            certified = certified and res.is_certified
    return count, certified


def _pi_terms(params: CensusParams, allow_probable=True):
    """Per-l progression prime counts; sieved exactly when the bound is
    small enough, enumerated otherwise."""
    terms = []
    certified = True
    for l in range(1, params.L + 1):
        bound = (1 << l) * params.x
        if bound <= PI_SIEVE_LIMIT:
            c = pi_count(bound, 1 << (l + 1), (1 << l) - 1)
        else:
            c, cert = _progression_prime_count(l, params.x, allow_probable)
            certified = certified and cert
        terms.append((l, c))
    return tuple(terms), certified


def sigma(params: CensusParams, allow_probable=True):
    """(sigma, pi_terms): sum of S(k, L) over odd k <= x, cross-checked
    against the per-l progression counts; raises on disagreement."""
    params.require_window()
    terms, _ = _pi_terms(params, allow_probable)
    direct, _, _ = _s_moments(params.x, params.L, allow_probable)
    pi_sum = sum(c for _, c in terms)
    if direct != pi_sum:
        raise ArithmeticError(
            f"sigma identity violated: direct {direct} != pi-sum {pi_sum}"
        )
    return direct, terms


def sum_S_squared(params: CensusParams, allow_probable=True):
    """Sum of S(k, L)^2 over odd k <= x."""
    params.require_window()
    _, total_sq, _ = _s_moments(params.x, params.L, allow_probable)
    return total_sq


# --- the N / M / M' censuses -------------------------------------------------


def _window_success(k, m_hi, allow_probable=True):
    """(success, certified_influence) for the first prime 2^m*k - 1 with
    1 <= m <= m_hi."""
    for m in range(1, m_hi + 1):
        r = arith.is_prime((k << m) - 1)
        if r and (allow_probable or r.is_certified):
            return True, r.is_certified
    return False, True


def N_eps(x, epsilon, allow_probable=True):
    """Odd k <= x with 2^m*k - 1 prime for some positive m < epsilon*log2(x)
    (strict window, fixed by x)."""
    epsilon = Fraction(epsilon)
    if x < 1:
        return 0
    m_hi = arith.max_m_lt(epsilon, x)
    return sum(
        1 for k in range(1, x + 1, 2)
        if _window_success(k, m_hi, allow_probable)[0]
    )


def _m_detail(x, epsilon, allow_probable=True):
    """(qualifying-k bool list indexed (k-1)//2, certified)."""
    epsilon = Fraction(epsilon)
    flags = []
    certified = True
    for k in range(1, x + 1, 2):
        ok, cert = _window_success(k, arith.max_m_leq(epsilon, k), allow_probable)
        flags.append(ok)
        certified = certified and cert
    return flags, certified


def M_eps(x, epsilon, allow_probable=True):
    """Odd k <= x with 2^m*k - 1 prime for some positive m <= epsilon*log2(k)
    (non-strict window, per-k)."""
    if x < 1:
        return 0
    return sum(_m_detail(x, epsilon, allow_probable)[0])


def property_p_census(x, epsilon, allow_probable=True):
    """M'(x): odd k <= x expressible as a product of factors that each pass
    the M-window condition individually (multiplicative closure)."""
    if x < 3:
        return 0
    flags, _ = _m_detail(x, epsilon, allow_probable)
    # Ascending closure: k has property P iff it qualifies directly or
    # splits as d * (k/d) with both factors already marked.
    has = list(flags)
    for k in range(3, x + 1, 2):
        i = (k - 1) // 2
        if has[i]:
            continue
        d = 3
        while d * d <= k:
            if k % d == 0 and has[(d - 1) // 2] and has[(k // d - 1) // 2]:
                has[i] = True
                break
            d += 2
    return sum(has)


def certified_H_lower(x, epsilon, allow_probable=True):
    """Count of odd k <= x for which the construction pipeline yields a
    plan: k = 1 (Sylvester order 4) plus every M-window success."""
    if x < 1:
        return 0
    return 1 + M_eps(x, epsilon, allow_probable)


# --- primes in arithmetic progression ---------------------------------------


@lru_cache(maxsize=8)
def _prime_flags(limit):
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return flags


def _segment_flags(lo, hi, base_primes):
    flags = np.ones(hi - lo + 1, dtype=bool)
    if lo <= 1:
        flags[: min(2 - lo, hi - lo + 1)] = False
    for p in base_primes:
        p = int(p)
        if p * p > hi:
            break
        start = max(p * p, ((lo + p - 1) // p) * p)
        flags[start - lo :: p] = False
    return flags


def pi_count(x, q, a, segment_size=SEGMENT_SIZE_DEFAULT):
    """Primes p <= x with p = a (mod q), by segmented sieve."""
    if q < 1:
        raise DomainError("q must be positive")
    if x < 2:
        return 0
    base = np.nonzero(_prime_flags(math.isqrt(x)))[0]
    a %= q
    count = 0
    for lo in range(2, x + 1, segment_size):
        hi = min(lo + segment_size - 1, x)
        flags = _segment_flags(lo, hi, base)
        vals = np.arange(lo, hi + 1, dtype=np.int64)
        count += int(np.count_nonzero(flags & (vals % q == a)))
    return count


def pi_prefix(limit, q, a, segment_size=SEGMENT_SIZE_DEFAULT):
    """Array c with c[x] = pi_count(x, q, a) for every x in 0..limit,
    built from the same segmented machinery."""
    if q < 1:
        raise DomainError("q must be positive")
    a %= q
    out = np.zeros(limit + 1, dtype=np.int64)
    if limit < 2:
        return out
    base = np.nonzero(_prime_flags(math.isqrt(limit)))[0]
    running = 0
    for lo in range(2, limit + 1, segment_size):
        hi = min(lo + segment_size - 1, limit)
        flags = _segment_flags(lo, hi, base)
        vals = np.arange(lo, hi + 1, dtype=np.int64)
        hits = (flags & (vals % q == a)).astype(np.int64)
        out[lo : hi + 1] = running + np.cumsum(hits)
        running = int(out[hi])
    return out


# --- the logarithmic integral and its sandwich -------------------------------


def I_closed(M, L, a):
    """Integral of a/(1 + l*a) for l from M to L: log((1+L*a)/(1+M*a))."""
    if a <= 0:
        raise DomainError("a must be positive")
    if M < 0 or L < M:
        raise DomainError("need L >= M >= 0")
    return math.log((1 + L * a) / (1 + M * a))


def I_quadrature(M, L, a):
    """Numerical twin of I_closed by adaptive quadrature."""
    if a <= 0:
        raise DomainError("a must be positive")
    if M < 0 or L < M:
        raise DomainError("need L >= M >= 0")
    value, _ = integrate.quad(lambda l: a / (1 + l * a), M, L,
                              epsabs=1e-13, epsrel=1e-13)
    return value


def riemann_tail_sum(M, L, a):
    """Sum of a/(1 + l*a) for integer l from M to L inclusive."""
    return sum(a / (1 + l * a) for l in range(M, L + 1))


# --- von Mangoldt and Chebyshev psi ------------------------------------------


def mangoldt(k):
    """((p, j) or None, log value): log p when k = p^j, else 0."""
    if k < 1:
        raise DomainError("k must be positive")
    if k == 1:
        return None, 0.0
    p = min(arith.factorize(k))
    v = k
    j = 0
    while v % p == 0:
        v //= p
        j += 1
    if v != 1:
        return None, 0.0
    return (p, j), math.log(p)


@lru_cache(maxsize=4)
def _spf(limit):
    """Smallest prime factor for 0..limit (0 for 0 and 1)."""
    spf = np.zeros(limit + 1, dtype=np.int64)
    for i in range(2, math.isqrt(limit) + 1):
        if spf[i] == 0:
            sl = spf[i * i :: i]
            sl[sl == 0] = i
    unset = spf == 0
    unset[:2] = False
    spf[unset] = np.nonzero(unset)[0]
    return spf


def psi_paths(x, q, a):
    """Chebyshev psi over the progression a mod q, two independent routes:
    per-k von Mangoldt summation and prime-power enumeration."""
    if q < 1:
        raise DomainError("q must be positive")
    a %= q
    if x < 1:
        return 0.0, 0.0
    # Route 1: Lambda(k) for each k in the progression via smallest-prime-
    # factor reduction (k is a prime power iff dividing out spf reaches 1).
    spf = _spf(x)
    start = a if a >= 2 else a + q * ((2 - a + q - 1) // q)
    ks = np.arange(start, x + 1, q, dtype=np.int64)
    direct = 0.0
    if ks.size:
        p = spf[ks]
        w = ks.copy()
        for _ in range(int(x).bit_length()):
            div = (w > 1) & (w % p == 0)
            if not div.any():
                break
            w = np.where(div, w // p, w)
        pp = w == 1
        direct = float(np.log(p[pp].astype(np.float64)).sum())
    # Route 2: enumerate primes and their powers, filter by residue.
    total = 0.0
    for prime in np.nonzero(_prime_flags(x))[0]:
        prime = int(prime)
        logp = math.log(prime)
        pk = prime
        while pk <= x:
            if pk % q == a:
                total += logp
            pk *= prime
    return direct, total


def psi(x, q, a, rel_tol=1e-9):
    """Chebyshev psi(x; q, a); both routes must agree to rel_tol."""
    direct, enumerated = psi_paths(x, q, a)
    scale = max(abs(direct), abs(enumerated), 1.0)
    if abs(direct - enumerated) > rel_tol * scale:
        raise ArithmeticError(
            f"psi paths disagree: {direct} vs {enumerated}"
        )
    return direct


# --- the assembled report -----------------------------------------------------


def density_report(x, epsilon, allow_probable=True) -> CensusReport:
    """All census statistics for (x, epsilon) in one report."""
    params = CensusParams.create(x, epsilon)
    params.require_window()
    terms, cert_pi = _pi_terms(params, allow_probable)
    s_sum, s_sq, cert_s = _s_moments(x, params.L, allow_probable)
    pi_sum = sum(c for _, c in terms)
    if s_sum != pi_sum:
        raise ArithmeticError(
            f"sigma identity violated: direct {s_sum} != pi-sum {pi_sum}"
        )
    flags_m, cert_m = _m_detail(x, params.epsilon, allow_probable)
    n_count = N_eps(x, params.epsilon, allow_probable)
    m_count = sum(flags_m)
    m_prime = property_p_census(x, params.epsilon, allow_probable)
    h_lower = 1 + m_count
    degenerate = []
    if s_sq > 0:
        cs = Fraction(s_sum * s_sum, s_sq)
    else:
        cs = Fraction(0)
        degenerate.append("cs_lower_bound_zero_denominator")
    return CensusReport(
        params=params,
        sigma=s_sum,
        pi_terms=terms,
        sum_S_squared=s_sq,
        N=n_count,
        M=m_count,
        M_prime=m_prime,
        H_lower=h_lower,
        cs_lower_bound=cs,
        upper_curve=2 * x * math.log2(1 + float(params.epsilon)),
        certified=cert_pi and cert_s and cert_m,
        degenerate_flags=tuple(degenerate),
    )
