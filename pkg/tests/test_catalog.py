import math

import pytest

from pihall.arith import PrimeSet
from pihall.catalog import (
    DescriptorError,
    Family,
    GroupDescriptor,
    UnsupportedFamilyError,
    borel_order,
    group_order,
    parse_descriptor,
    prime_spectrum,
)

# Orders from the standard tables of finite simple groups.
KNOWN_ORDERS = {
    "Alt:5": 60,
    "Alt:8": 20160,
    "Sym:7": 5040,
    "Spor:J1": 175560,
    "PSL+:2:7": 168,
    "PSL+:2:41": 34440,
    "PSL+:3:2": 168,
    "PSL+:3:4": 20160,
    "PSL+:4:2": 20160,
    "PSL-:3:3": 6048,
    "PSL-:4:2": 25920,
    "PSp:2:3": 25920,
    "PSp:3:2": 1451520,
    "POmega:7:3": 4585351680,
    "POmega+:8:2": 174182400,
    "POmega-:8:2": 197406720,
    "G2:3": 4245696,
    "G2:4": 251596800,
    "3D4:2": 211341312,
    "2B2:8": 29120,
    "2G2:27": 10073444472,
    "2F4:2": 35942400,
    "F4:2": 3311126603366400,
}


class TestParsing:
    @pytest.mark.parametrize("text", sorted(KNOWN_ORDERS))
    def test_render_round_trip(self, text):
        assert parse_descriptor(text).render() == text

    def test_sporadic(self):
        d = parse_descriptor("Spor:J1")
        assert d.family is Family.SPORADIC and d.sporadic_name == "J1"

    def test_signs(self):
        assert parse_descriptor("PSL-:3:5").sign == -1
        assert parse_descriptor("E6+:4").sign == 1
        assert parse_descriptor("POmega:7:3").sign == 0

    @pytest.mark.parametrize(
        "text",
        [
            "PSL:2:7",  # missing sign
            "PSL+:1:7",  # n too small
            "PSL+:2:6",  # q not a prime power
            "POmega:8:3",  # even dimension needs a sign
            "POmega+:7:3",  # odd dimension takes none
            "POmega:5:3",  # dimension too small
            "Alt:2",
            "Spor:M11",
            "2B2:4",  # needs odd exponent >= 3
            "2G2:9",
            "2F4:4",
            "E7:2:3",  # too many fields
            "G2",  # too few
            "Xyz:5",
        ],
    )
    def test_rejects(self, text):
        with pytest.raises(DescriptorError):
            parse_descriptor(text)

    def test_constructor_validates_too(self):
        with pytest.raises(DescriptorError):
            GroupDescriptor(Family.PSP, n=2, sign=1, q=3)


class TestGroupOrder:
    @pytest.mark.parametrize("text,order", sorted(KNOWN_ORDERS.items()))
    def test_known_orders(self, text, order):
        assert group_order(parse_descriptor(text)).order.value == order

    def test_generic_factors_multiply_to_order(self):
        for text in KNOWN_ORDERS:
            info = group_order(parse_descriptor(text))
            prod = math.prod(v for _, v in info.generic_factors)
            assert prod == info.order.value * info.divisor

    def test_naive_formula_cross_check(self):
        # Independent plain-integer formulas, against the factored assembly.
        def psl(n, q, s):
            num = q ** (n * (n - 1) // 2)
            for i in range(2, n + 1):
                num *= q**i - s**i
            return num // math.gcd(n, q - s)

        def psp(n, q):
            num = q ** (n * n)
            for i in range(1, n + 1):
                num *= q ** (2 * i) - 1
            return num // math.gcd(2, q - 1)

        for n in (2, 3, 4, 5):
            for q in (2, 3, 4, 5, 7, 9, 41):
                for s in (1, -1):
                    d = GroupDescriptor(Family.PSL, n=n, sign=s, q=q)
                    assert group_order(d).order.value == psl(n, q, s)
                d = GroupDescriptor(Family.PSP, n=n, q=q)
                assert group_order(d).order.value == psp(n, q)

        def pomega(n, q, s):
            m = n // 2
            if n % 2:
                return psp(m, q) if q % 2 else None
            num = q ** (m * (m - 1)) * (q**m - s)
            for i in range(1, m):
                num *= q ** (2 * i) - 1
            return num // math.gcd(4, q**m - s)

        for q in (2, 3, 5):
            for n, s in ((7, 0), (8, 1), (8, -1), (9, 0), (10, 1), (10, -1)):
                d = GroupDescriptor(Family.POMEGA, n=n, sign=s, q=q)
                expected = pomega(n, q, s or 1)
                if n % 2:
                    # Odd dimension in even characteristic is aliased to PSp.
                    expected = psp(n // 2, q)
                assert group_order(d).order.value == expected

    def test_exceptional_formulas(self):
        q = 5
        e6 = group_order(parse_descriptor("E6+:5")).order.value
        num = q**36
        for i in (12, 9, 8, 6, 5, 2):
            num *= q**i - 1
        assert e6 == num // math.gcd(3, q - 1)

        e6m = group_order(parse_descriptor("E6-:5")).order.value
        num = q**36
        for i, s in ((12, 1), (9, -1), (8, 1), (6, 1), (5, -1), (2, 1)):
            num *= q**i - s
        assert e6m == num // math.gcd(3, q + 1)

        suz = group_order(parse_descriptor("2B2:32")).order.value
        assert suz == 32**2 * (32**2 + 1) * (32 - 1)

        ree = group_order(parse_descriptor("2G2:27")).order.value
        assert ree == 27**3 * (27**3 + 1) * (27 - 1)

    def test_spectrum(self):
        assert prime_spectrum(parse_descriptor("PSL+:2:41")) == PrimeSet(
            (2, 3, 5, 7, 41)
        )
        assert prime_spectrum(parse_descriptor("2B2:8")) == PrimeSet((2, 5, 7, 13))

    def test_order_divides_ambient_for_alternating(self):
        assert group_order(parse_descriptor("Alt:7")).order.value * 2 == group_order(
            parse_descriptor("Sym:7")
        ).order.value


class TestBorelOrder:
    def test_psl2_anchors(self):
        assert borel_order(parse_descriptor("PSL+:2:7")).value == 21
        assert borel_order(parse_descriptor("PSL+:2:41")).value == 820

    def test_psl3(self):
        # q^3 (q-1)^2 / gcd(3, q-1)
        assert borel_order(parse_descriptor("PSL+:3:4")).value == 64 * 9 // 3

    def test_psp(self):
        assert borel_order(parse_descriptor("PSp:2:3")).value == 81 * 4 // 2

    def test_index_is_integral(self):
        for text in ("PSL+:2:7", "PSL+:3:4", "PSL+:4:5", "PSp:2:3", "PSp:3:2"):
            d = parse_descriptor(text)
            assert group_order(d).order.value % borel_order(d).value == 0

    def test_unsupported(self):
        with pytest.raises(UnsupportedFamilyError):
            borel_order(parse_descriptor("2B2:8"))
