"""Randomized invariant suites, >= 1000 cases each.

Every suite draws from a fixed seed so a failure reproduces exactly.
"""

import math
import random

from hypothesis import given, settings, strategies as st

from pihall.arith import (
    PrimeSet,
    co_pi_part,
    factorize,
    is_prime,
    mult_order,
    pi_part,
    prime_divisors,
)
from pihall.catalog import group_order
from pihall.constructions import sylow_conjugates, sylow_subgroup
from pihall.oracle import CertKind, hall_search, verify_certificate
from pihall.permgrp import compose, inverse, normalizer_scan, perm_order

from propsuite import CONSTRUCTIBLE, SEARCH_POOL, group_for, random_subgroup

RELAXED = settings(max_examples=1000, deadline=None)


def check_factorization_round_trip(n):
    fact = factorize(n)
    assert fact.value == n
    assert math.prod(p**e for p, e in fact.factors) == n
    primes = [p for p, _ in fact.factors]
    assert primes == sorted(primes)
    assert all(is_prime(p) for p in primes)


def check_pi_part_decomposition(n, pi):
    part, rest = pi_part(n, pi), co_pi_part(n, pi)
    assert part * rest == n
    assert math.gcd(part, rest) == 1
    assert prime_divisors(part) <= PrimeSet(pi)
    assert not (prime_divisors(rest) & PrimeSet(pi))


def check_mult_order_divides_and_witnesses(q, r):
    if q % r == 0:
        return
    e = mult_order(q, r)
    assert (r - 1) % e == 0
    assert pow(q, e, r) == 1
    # e is minimal: dropping any prime from it breaks the congruence.
    for p, _ in factorize(e).factors:
        assert pow(q, e // p, r) != 1


def check_prime_set_round_trip(primes):
    s = PrimeSet(primes)
    assert PrimeSet.parse(s.render()) == s


class TestArithSuite:
    @RELAXED
    @given(st.integers(min_value=1, max_value=10**9))
    def test_factorization_round_trip(self, n):
        check_factorization_round_trip(n)

    @RELAXED
    @given(
        st.integers(min_value=1, max_value=10**9),
        st.sets(st.sampled_from((2, 3, 5, 7, 11, 13)), max_size=4),
    )
    def test_pi_part_decomposition(self, n, pi):
        check_pi_part_decomposition(n, pi)

    @RELAXED
    @given(
        st.integers(min_value=2, max_value=10**6),
        st.sampled_from((3, 5, 7, 11, 13, 17, 19, 23)),
    )
    def test_mult_order_divides_and_witnesses(self, q, r):
        check_mult_order_divides_and_witnesses(q, r)

    @RELAXED
    @given(st.sets(st.sampled_from((2, 3, 5, 7, 11, 13, 17, 19)), max_size=5))
    def test_prime_set_round_trip(self, primes):
        check_prime_set_round_trip(primes)


class TestPermGroupSuite:
    def test_lagrange_normalizer_sylow_derived(self):
        rng = random.Random(20260814)
        sylow_data = {}
        cases = 0
        for _ in range(1000):
            text = rng.choice(SEARCH_POOL)
            _, g = group_for(text)

            # Lagrange for a random subgroup, stable under conjugation.
            h = random_subgroup(g, rng)
            assert g.order % h.order == 0
            assert h.conjugated(g.random_element(rng)).order == h.order

            # Derived series strictly descends and diagnoses solvability.
            orders = [s.order for s in h.derived_series()]
            assert all(a % b == 0 and a > b for a, b in zip(orders, orders[1:]))
            assert h.is_solvable == (orders[-1] == 1)

            # Sylow third theorem plus the normalizer-index count.
            r = rng.choice([p for p in (2, 3, 5, 7, 11) if g.order % p == 0])
            if (text, r) not in sylow_data:
                syl = sylow_subgroup(g, r)
                n_r = len(sylow_conjugates(g, syl))
                norm_index = g.order // normalizer_scan(g, syl).order
                sylow_data[text, r] = (syl.order, n_r, norm_index)
            syl_order, n_r, norm_index = sylow_data[text, r]
            assert syl_order == pi_part(g.order, PrimeSet((r,)))
            assert n_r % r == 1
            assert g.order % n_r == 0
            assert norm_index == n_r

            cases += 1
        assert cases >= 1000


class TestConstructionSuite:
    def test_catalog_order_matches_kernel_for_every_descriptor(self):
        for text in CONSTRUCTIBLE:
            descriptor, g = group_for(text)
            assert g.order == group_order(descriptor).order.value, text

    def test_random_cases_catalog_vs_kernel(self):
        rng = random.Random(4111)
        cases = 0
        for _ in range(1000):
            text = rng.choice(CONSTRUCTIBLE)
            descriptor, g = group_for(text)
            assert g.order == group_order(descriptor).order.value

            # Random elements stay consistent with the exact order.
            x, y = g.random_element(rng), g.random_element(rng)
            assert g.order % perm_order(x) == 0
            assert g.order % perm_order(compose(x, y)) == 0
            assert compose(x, inverse(x)) == tuple(range(g.degree))
            cases += 1
        assert cases >= 1000


class TestOracleSuite:
    def test_certificates_verify_and_pair_witnesses_are_solvable(self):
        rng = random.Random(2026)
        found = exhausted = pair_witnesses = 0
        for _ in range(1000):
            _, g = group_for(rng.choice(SEARCH_POOL))
            spectrum = [p for p in (2, 3, 5, 7, 11) if g.order % p == 0]
            size = min(rng.choice((1, 2, 2, 2)), len(spectrum))
            sigma = PrimeSet(rng.sample(spectrum, size))

            cert = hall_search(g, sigma)
            # Re-checks the pi-number order, the pi'-number index, and
            # that the witness holds a full Sylow subgroup per prime.
            verify_certificate(g, cert)
            if cert.kind is CertKind.FOUND:
                found += 1
                assert cert.witness_order == pi_part(g.order, sigma)
                if len(sigma) == 2:
                    # Two-prime groups are solvable, and the flag says so.
                    assert cert.solvable is True
                    pair_witnesses += 1
            else:
                exhausted += 1
                assert cert.witness_generators is None
        assert found + exhausted >= 1000
        assert found and exhausted and pair_witnesses
