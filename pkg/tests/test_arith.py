import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hadcensus import arith
from hadcensus.arith import Method, Verdict, is_prime, jacobi, mult_order, pow_mod, totient
from hadcensus.errors import DomainError


def trial_division_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class TestPowMod:
    def test_zero_exponent(self):
        for n in (2, 7, 1000):
            assert pow_mod(5, 0, n) == 1

    def test_examples(self):
        assert pow_mod(2, 10, 1000) == 24
        assert pow_mod(2, 5, 31) == 1

    def test_zero_modulus(self):
        with pytest.raises(DomainError):
            pow_mod(2, 3, 0)


class TestIsPrime:
    def test_examples(self):
        assert is_prime(9).verdict is Verdict.COMPOSITE
        assert is_prime(19).verdict is Verdict.PRIME
        assert is_prime(2147483647).verdict is Verdict.PRIME
        assert is_prime(1).verdict is Verdict.NOT_PRIME
        assert is_prime(0).verdict is Verdict.NOT_PRIME

    def test_matches_trial_division_dense(self):
        for n in range(200_000):
            assert bool(is_prime(n)) == trial_division_prime(n), n

    def test_matches_trial_division_sampled_to_1e7(self):
        rng = random.Random(7)
        for _ in range(2000):
            n = rng.randrange(2, 10**7)
            assert bool(is_prime(n)) == trial_division_prime(n), n

    def test_certification_invariants(self):
        r = is_prime(19)
        assert r.method is not Method.PROBABLE_PRIME and r.is_certified
        big = is_prime(2**89 - 1)  # Mersenne prime above the 64-bit line
        assert big.verdict is Verdict.PRIME
        assert big.method is Method.PROBABLE_PRIME
        assert not big.is_certified

    def test_large_composites_are_certified(self):
        # composite verdicts are exact regardless of size
        n = (2**89 - 1) * (2**107 - 1)
        r = is_prime(n)
        assert r.verdict is Verdict.COMPOSITE and r.is_certified

    def test_strong_pseudoprimes_to_base_2(self):
        for n in (2047, 3277, 4033, 4681, 8321, 15841, 65281):
            assert not is_prime(n)


ODD_PRIMES = [p for p in arith.SMALL_PRIMES if p > 2]


class TestJacobi:
    def test_examples(self):
        assert jacobi(0, 7) == 0
        assert jacobi(1, 7) == 1
        assert jacobi(3, 7) == -1
        assert jacobi(2, 7) == 1

    def test_even_modulus_rejected(self):
        with pytest.raises(DomainError):
            jacobi(3, 8)
        with pytest.raises(DomainError):
            jacobi(3, 0)

    @given(st.sampled_from(ODD_PRIMES), st.integers(min_value=1, max_value=10**6))
    def test_euler_criterion(self, p, a):
        if a % p == 0:
            return
        expected = pow(a, (p - 1) // 2, p)
        assert jacobi(a, p) % p == expected

    @given(
        st.integers(min_value=-100, max_value=100),
        st.integers(min_value=-100, max_value=100),
        st.integers(min_value=0, max_value=200),
    )
    def test_multiplicative(self, a, b, i):
        n = 2 * i + 1
        if n < 1:
            return
        assert jacobi(a * b, n) == jacobi(a, n) * jacobi(b, n)


class TestMultOrder:
    def test_examples(self):
        assert mult_order(2, 3) == 2
        assert mult_order(2, 7) == 3
        assert mult_order(2, 241) == 24

    def test_rejects_bad_inputs(self):
        with pytest.raises(DomainError):
            mult_order(2, 15)
        with pytest.raises(DomainError):
            mult_order(14, 7)

    @pytest.mark.parametrize("p", [p for p in ODD_PRIMES if p <= 500])
    def test_brute_force_minimality(self, p):
        for a in (2, 3, p - 1):
            if a % p == 0:
                continue
            d = mult_order(a, p)
            assert (p - 1) % d == 0
            assert pow(a, d, p) == 1
            assert all(pow(a, e, p) != 1 for e in range(1, d))


class TestTotient:
    def test_examples(self):
        assert totient(1) == 1
        assert totient(16) == 8
        assert totient(12) == 4

    def test_powers_of_two(self):
        for l in range(31):
            assert totient(2 ** (l + 1)) == 2**l

    def test_zero_rejected(self):
        with pytest.raises(DomainError):
            totient(0)

    @given(st.integers(min_value=1, max_value=3000))
    @settings(max_examples=60)
    def test_counts_coprimes(self, q):
        from math import gcd

        assert totient(q) == sum(1 for i in range(1, q + 1) if gcd(i, q) == 1)


class TestWindows:
    def test_floor_log2_window(self):
        import math

        for eps in (Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3, 4)):
            for k in range(1, 2000):
                exact = arith.max_m_leq(eps, k)
                approx = float(eps) * math.log2(k)
                # the float value can sit right on the boundary; exact
                # arithmetic must match the definition
                assert exact <= approx + 1e-9
                assert (k ** eps.numerator) >= (1 << (exact * eps.denominator))

    def test_boundary_exactness(self):
        # m <= 2*log2(k) at k = 4 admits exactly m = 4
        assert arith.max_m_leq(Fraction(2), 4) == 4
        # strict window m < 2*log2(4) = 4 stops at 3
        assert arith.max_m_lt(Fraction(2), 4) == 3
        assert arith.max_m_leq(Fraction(1), 1) == 0
        assert arith.max_m_lt(Fraction(1, 2), 2) == 0
