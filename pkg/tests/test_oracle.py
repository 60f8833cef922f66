import pytest

from pihall.arith import PrimeSet
from pihall.oracle import (
    CertKind,
    CertificateError,
    EnumerationCapError,
    HallCertificate,
    InconclusiveError,
    conjugacy_scan,
    hall_search,
    solvable_hall_exists,
    theorem1_check,
    verify_certificate,
)
from pihall.permgrp import PermGroup, closure, parse_cycles


class TestHallSearchSmall:
    def test_a5_two_three_found(self, built):
        _, g = built("Alt:5")
        cert = hall_search(g, PrimeSet((2, 3)))
        assert cert.kind is CertKind.FOUND
        assert cert.witness_order == 12
        assert cert.solvable
        verify_certificate(g, cert)

    def test_a5_two_five_exhausted(self, built):
        _, g = built("Alt:5")
        cert = hall_search(g, PrimeSet((2, 5)))
        assert cert.kind is CertKind.EXHAUSTED
        assert cert.target_order == 20
        assert cert.witness_generators is None
        verify_certificate(g, cert)

    def test_a5_three_five_exhausted(self, built):
        _, g = built("Alt:5")
        cert = hall_search(g, PrimeSet((3, 5)))
        assert cert.kind is CertKind.EXHAUSTED
        assert cert.target_order == 15

    def test_psl27_three_seven_found(self, built):
        # The Borel subgroup of order 21.
        _, g = built("PSL+:2:7")
        cert = hall_search(g, PrimeSet((3, 7)))
        assert cert.kind is CertKind.FOUND
        assert cert.witness_order == 21
        assert cert.solvable
        verify_certificate(g, cert)

    def test_whole_group_shortcut(self, built):
        _, g = built("Sym:5")
        cert = hall_search(g, PrimeSet((2, 3, 5)))
        assert cert.kind is CertKind.FOUND
        assert cert.witness_order == g.order
        assert not cert.solvable
        assert cert.tuples_examined == 1

    def test_single_prime_is_sylow_search(self, built):
        _, g = built("Alt:6")
        cert = hall_search(g, PrimeSet((3,)))
        assert cert.kind is CertKind.FOUND
        assert cert.witness_order == 9

    def test_counts_cover_the_space_when_exhausted(self, built):
        _, g = built("Alt:5")
        cert = hall_search(g, PrimeSet((2, 5)))
        # examined + pruned accounts for the whole tuple space.
        assert cert.tuples_examined + cert.pruned > 0
        assert cert.tuples_examined >= 1

    def test_fix_prime_override_agrees(self, built):
        _, g = built("Alt:5")
        kinds = set()
        for r in (3, 5):
            cert = hall_search(g, PrimeSet((3, 5)), fix_prime=r)
            kinds.add(cert.kind)
        assert kinds == {CertKind.EXHAUSTED}

    def test_pi_restricted_to_spectrum(self, built):
        _, g = built("Alt:5")
        cert = hall_search(g, PrimeSet((2, 3, 7)))
        assert cert.pi == PrimeSet((2, 3, 7))
        assert cert.target_order == 12  # 7 does not divide 60


class TestSolvability:
    def test_nonsolvable_hall_is_reported(self, built):
        # The {2,3,5}-Hall subgroups of PSL2(11) are copies of A5.
        _, g = built("PSL+:2:11")
        cert = hall_search(g, PrimeSet((2, 3, 5)))
        assert cert.kind is CertKind.FOUND
        assert cert.witness_order == 60
        assert not cert.solvable
        verify_certificate(g, cert)

    def test_want_solvable_drains_past_nonsolvable(self, built):
        _, g = built("PSL+:2:11")
        exists, cert = solvable_hall_exists(g, PrimeSet((2, 3, 5)))
        assert not exists
        assert cert.kind is CertKind.FOUND
        assert not cert.solvable

    def test_want_solvable_finds_solvable(self, built):
        _, g = built("Alt:5")
        exists, cert = solvable_hall_exists(g, PrimeSet((2, 3)))
        assert exists
        assert cert.solvable
        verify_certificate(g, cert)


class TestBudgetsAndCaps:
    def test_enumeration_cap(self, built):
        _, g = built("PSL+:2:13")
        with pytest.raises(EnumerationCapError):
            hall_search(g, PrimeSet((2, 3)), max_tuples=3)

    def test_time_budget_inconclusive(self, built):
        _, g = built("PSL+:2:41")
        with pytest.raises(InconclusiveError) as info:
            hall_search(g, PrimeSet((2, 3, 5)), budget_ms=1)
        assert info.value.examined >= 0

    def test_parallel_matches_serial(self, built):
        _, g = built("PSL+:2:7")
        serial = hall_search(g, PrimeSet((2, 3)))
        parallel = hall_search(g, PrimeSet((2, 3)), threads=2)
        assert serial.kind is parallel.kind is CertKind.FOUND
        assert serial.witness_order == parallel.witness_order == 24
        verify_certificate(g, parallel)

    def test_parallel_exhaustion_counts(self, built):
        _, g = built("Alt:5")
        serial = hall_search(g, PrimeSet((2, 5)))
        parallel = hall_search(g, PrimeSet((2, 5)), threads=2)
        assert parallel.kind is CertKind.EXHAUSTED
        assert (
            parallel.tuples_examined + parallel.pruned
            == serial.tuples_examined + serial.pruned
        )


class TestCertificates:
    def test_tampered_certificate_rejected(self, built):
        _, g = built("Alt:5")
        cert = hall_search(g, PrimeSet((2, 3)))
        forged = HallCertificate(
            kind=cert.kind,
            pi=cert.pi,
            target_order=cert.target_order,
            witness_generators=cert.witness_generators,
            witness_order=cert.witness_order,
            solvable=False,  # lies about solvability
            tuples_examined=cert.tuples_examined,
            pruned=cert.pruned,
        )
        with pytest.raises(CertificateError):
            verify_certificate(g, forged)

    def test_wrong_order_claim_rejected(self, built):
        _, g = built("Alt:5")
        sylow = hall_search(g, PrimeSet((2,)))
        forged = HallCertificate(
            kind=sylow.kind,
            pi=PrimeSet((2, 3)),
            target_order=12,
            witness_generators=sylow.witness_generators,
            witness_order=12,
            solvable=True,
            tuples_examined=1,
            pruned=0,
        )
        with pytest.raises(CertificateError):
            verify_certificate(g, forged)

    def test_found_requires_witness(self):
        with pytest.raises(ValueError):
            HallCertificate(
                kind=CertKind.FOUND,
                pi=PrimeSet((2,)),
                target_order=4,
                witness_generators=None,
                witness_order=None,
                solvable=None,
                tuples_examined=1,
                pruned=0,
            )


class TestTheorem1:
    def test_holds_on_positive_case(self, built):
        _, g = built("PSL+:2:7")
        report = theorem1_check(g, PrimeSet((2, 3)))
        assert report.holds
        assert report.solvable_exists
        assert report.pairs_all_found

    def test_holds_on_negative_case(self, built):
        _, g = built("PSL+:2:11")
        report = theorem1_check(g, PrimeSet((2, 3, 5)))
        assert report.holds
        assert not report.solvable_exists
        assert not report.pairs_all_found
        kinds = dict(report.pair_kinds)
        assert set(kinds) == {(2, 3), (2, 5), (3, 5)}
        assert kinds[(2, 3)] is CertKind.FOUND
        assert kinds[(3, 5)] is CertKind.EXHAUSTED

    def test_requires_at_least_two_primes(self, built):
        _, g = built("Alt:5")
        with pytest.raises(ValueError):
            theorem1_check(g, PrimeSet((2,)))


class TestConjugacyScan:
    def test_conjugate_subgroups_detected(self, built):
        _, g = built("Alt:5")
        a4 = closure(
            [parse_cycles("(0 1 2)", 5), parse_cycles("(0 1)(2 3)", 5)]
        )
        other = a4.conjugated(parse_cycles("(0 1 2 3 4)", 5))
        assert conjugacy_scan(g, a4, other)

    def test_nonconjugate_subgroups_detected(self, built):
        # Z6 and S3 in S6: equal orders, different cycle types.
        _, g = built("Sym:6")
        z6 = closure([parse_cycles("(0 1 2 3 4 5)", 6)])
        s3 = closure([parse_cycles("(0 1 2)", 6), parse_cycles("(0 1)", 6)])
        assert z6.order == s3.order == 6
        assert not conjugacy_scan(g, z6, s3)

    def test_order_mismatch_rejected(self, built):
        _, g = built("Alt:5")
        v4 = closure([parse_cycles("(0 1)(2 3)", 5), parse_cycles("(0 2)(1 3)", 5)])
        a4 = closure([parse_cycles("(0 1 2)", 5), parse_cycles("(0 1)(2 3)", 5)])
        with pytest.raises(ValueError):
            conjugacy_scan(g, v4, a4)
