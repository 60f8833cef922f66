"""Group descriptors and exact factored orders for the supported families.

The descriptor grammar is the package's wire format:

    Alt:<n>  Sym:<n>  Spor:J1
    PSL<sign>:<n>:<q>  PSp:<n>:<q>  POmega<sign>:<n>:<q>
    G2:<q>  F4:<q>  E6<sign>:<q>  E7:<q>  E8:<q>
    3D4:<q>  2B2:<q>  2G2:<q>  2F4:<q>

with sign in {+, -}; the POmega sign is written exactly when the dimension n
is even. PSp:<n>:<q> denotes the symplectic group on 2n dimensions; POmega
takes the ambient dimension itself.

Orders are assembled from factored symbolic terms. Each q^i - 1 / q^i + 1
style term is split into cyclotomic-polynomial values before factoring, and
prime factors of Phi_d(q) other than divisors of d satisfy r = 1 (mod d), so
trial division only needs to walk that residue class.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .arith import Factorization, PrimeSet, factorize, is_prime


class DescriptorError(ValueError):
    """Raised for text that does not parse to a valid descriptor."""


class UnsupportedFamilyError(ValueError):
    """Raised when an operation has no data for the descriptor's family."""


class Family(Enum):
    ALT = "Alt"
    SYM = "Sym"
    SPORADIC = "Spor"
    PSL = "PSL"
    PSP = "PSp"
    POMEGA = "POmega"
    G2 = "G2"
    F4 = "F4"
    E6 = "E6"
    E7 = "E7"
    E8 = "E8"
    D4_TRIALITY = "3D4"
    SUZUKI = "2B2"
    REE = "2G2"
    LARGE_REE = "2F4"


_SIGNED_FAMILIES = {Family.PSL, Family.E6}
_Q_ONLY_FAMILIES = {
    Family.G2,
    Family.F4,
    Family.E6,
    Family.E7,
    Family.E8,
    Family.D4_TRIALITY,
    Family.SUZUKI,
    Family.REE,
    Family.LARGE_REE,
}
_LIE_FAMILIES = _Q_ONLY_FAMILIES | {Family.PSL, Family.PSP, Family.POMEGA}


@dataclass(frozen=True)
class GroupDescriptor:
    """A validated descriptor for one group in the supported families."""

    family: Family
    n: int = 0
    sign: int = 0
    q: int = 0
    sporadic_name: str = ""

    def __post_init__(self):
        f = self.family
        if f in (Family.ALT, Family.SYM):
            low = 3 if f is Family.ALT else 1
            if self.n < low:
                raise DescriptorError(f"{f.value} requires n >= {low}, got {self.n}")
            if self.sign or self.q or self.sporadic_name:
                raise DescriptorError(f"{f.value} takes only n")
            return
        if f is Family.SPORADIC:
            if self.sporadic_name != "J1":
                raise DescriptorError(f"unsupported sporadic group {self.sporadic_name!r}")
            if self.n or self.sign or self.q:
                raise DescriptorError("Spor takes only a name")
            return
        p, a = _prime_power(self.q)
        if f is Family.PSL:
            if self.n < 2:
                raise DescriptorError(f"PSL requires n >= 2, got {self.n}")
            if self.sign not in (1, -1):
                raise DescriptorError("PSL requires a sign")
        elif f is Family.PSP:
            if self.n < 2:
                raise DescriptorError(f"PSp requires n >= 2, got {self.n}")
            if self.sign != 0:
                raise DescriptorError("PSp takes no sign")
        elif f is Family.POMEGA:
            if self.n < 7:
                raise DescriptorError(f"POmega requires dimension n >= 7, got {self.n}")
            if self.n % 2 == 0 and self.sign not in (1, -1):
                raise DescriptorError("even-dimensional POmega requires a sign")
            if self.n % 2 == 1 and self.sign != 0:
                raise DescriptorError("odd-dimensional POmega takes no sign")
        elif f in _Q_ONLY_FAMILIES:
            if self.n != 0:
                raise DescriptorError(f"{f.value} takes only q")
            if f is Family.E6:
                if self.sign not in (1, -1):
                    raise DescriptorError("E6 requires a sign")
            elif self.sign != 0:
                raise DescriptorError(f"{f.value} takes no sign")
            if f is Family.SUZUKI and not (p == 2 and a % 2 == 1 and a >= 3):
                raise DescriptorError("2B2 requires q = 2^(2k+1) with k >= 1")
            if f is Family.REE and not (p == 3 and a % 2 == 1 and a >= 3):
                raise DescriptorError("2G2 requires q = 3^(2k+1) with k >= 1")
            if f is Family.LARGE_REE and not (p == 2 and a % 2 == 1):
                raise DescriptorError("2F4 requires q = 2^(2k+1)")
        else:
            raise DescriptorError(f"unknown family {f}")

    @property
    def is_lie(self) -> bool:
        return self.family in _LIE_FAMILIES

    @property
    def characteristic(self) -> int:
        """Field characteristic p for Lie-type descriptors."""
        if not self.is_lie:
            raise UnsupportedFamilyError(f"{self.render()} has no field characteristic")
        return _prime_power(self.q)[0]

    @property
    def field_degree(self) -> int:
        if not self.is_lie:
            raise UnsupportedFamilyError(f"{self.render()} has no field")
        return _prime_power(self.q)[1]

    def render(self) -> str:
        f = self.family
        if f in (Family.ALT, Family.SYM):
            return f"{f.value}:{self.n}"
        if f is Family.SPORADIC:
            return f"Spor:{self.sporadic_name}"
        sign = {1: "+", -1: "-", 0: ""}[self.sign]
        if f in (Family.PSL, Family.POMEGA):
            return f"{f.value}{sign}:{self.n}:{self.q}"
        if f is Family.PSP:
            return f"PSp:{self.n}:{self.q}"
        return f"{f.value}{sign}:{self.q}"


def _prime_power(q: int) -> tuple[int, int]:
    """Return (p, a) with q = p^a; raise DescriptorError otherwise."""
    if q < 2:
        raise DescriptorError(f"q must be a prime power >= 2, got {q}")
    fact = factorize(q)
    if len(fact.factors) != 1:
        raise DescriptorError(f"q must be a prime power, got {q}")
    return fact.factors[0]


_HEADS = {
    "Alt": (Family.ALT, 0),
    "Sym": (Family.SYM, 0),
    "Spor": (Family.SPORADIC, 0),
    "PSL+": (Family.PSL, 1),
    "PSL-": (Family.PSL, -1),
    "PSp": (Family.PSP, 0),
    "POmega+": (Family.POMEGA, 1),
    "POmega-": (Family.POMEGA, -1),
    "POmega": (Family.POMEGA, 0),
    "G2": (Family.G2, 0),
    "F4": (Family.F4, 0),
    "E6+": (Family.E6, 1),
    "E6-": (Family.E6, -1),
    "E7": (Family.E7, 0),
    "E8": (Family.E8, 0),
    "3D4": (Family.D4_TRIALITY, 0),
    "2B2": (Family.SUZUKI, 0),
    "2G2": (Family.REE, 0),
    "2F4": (Family.LARGE_REE, 0),
}


def parse_descriptor(text: str) -> GroupDescriptor:
    """Parse the descriptor grammar; raises DescriptorError on any violation."""
    parts = text.strip().split(":")
    head = parts[0]
    if head not in _HEADS:
        raise DescriptorError(f"unknown family in {text!r}")
    family, sign = _HEADS[head]
    args = parts[1:]

    def as_int(s: str, what: str) -> int:
        try:
            return int(s)
        except ValueError:
            raise DescriptorError(f"bad {what} {s!r} in {text!r}") from None

    if family in (Family.ALT, Family.SYM):
        if len(args) != 1:
            raise DescriptorError(f"{head} takes exactly one field: {text!r}")
        return GroupDescriptor(family, n=as_int(args[0], "n"))
    if family is Family.SPORADIC:
        if len(args) != 1:
            raise DescriptorError(f"Spor takes exactly one field: {text!r}")
        return GroupDescriptor(family, sporadic_name=args[0])
    if family in (Family.PSL, Family.PSP, Family.POMEGA):
        if len(args) != 2:
            raise DescriptorError(f"{head} takes n and q: {text!r}")
        return GroupDescriptor(
            family, n=as_int(args[0], "n"), sign=sign, q=as_int(args[1], "q")
        )
    if len(args) != 1:
        raise DescriptorError(f"{head} takes exactly q: {text!r}")
    return GroupDescriptor(family, sign=sign, q=as_int(args[0], "q"))


# ---------------------------------------------------------------------------
# cyclotomic factoring


def _divisors(n: int) -> list[int]:
    divs = [d for d in range(1, int(math.isqrt(n)) + 1) if n % d == 0]
    return sorted(set(divs + [n // d for d in divs]))


def _moebius(n: int) -> int:
    mu = 1
    for _, e in factorize(n).factors:
        if e > 1:
            return 0
        mu = -mu
    return mu


def _cyclotomic_value(d: int, q: int) -> int:
    num = den = 1
    for e in _divisors(d):
        mu = _moebius(d // e)
        if mu == 1:
            num *= q**e - 1
        elif mu == -1:
            den *= q**e - 1
    return num // den


def _factor_residue_class(n: int, d: int) -> Factorization:
    """Factor n whose prime divisors either divide d or are = 1 (mod d)."""
    exps: dict[int, int] = {}
    rem = n
    for p, _ in factorize(d).factors:
        while rem % p == 0:
            rem //= p
            exps[p] = exps.get(p, 0) + 1
    if rem > 1 and is_prime(rem):
        exps[rem] = exps.get(rem, 0) + 1
        rem = 1
    c = d + 1
    while rem > 1 and c * c <= rem:
        while rem % c == 0:
            rem //= c
            exps[c] = exps.get(c, 0) + 1
            if rem > 1 and is_prime(rem):
                exps[rem] = exps.get(rem, 0) + 1
                rem = 1
        c += d
    if rem > 1:
        exps[rem] = exps.get(rem, 0) + 1
    return Factorization(n, tuple(sorted(exps.items())))


def _factor_phi(d: int, q: int) -> Factorization:
    v = _cyclotomic_value(d, q)
    if d <= 2 or v < 10**6:
        return factorize(v)
    return _factor_residue_class(v, d)


def _one() -> Factorization:
    return Factorization(1, ())


def _fact_q_minus(q: int, i: int) -> Factorization:
    """Factorization of q^i - 1."""
    out = _one()
    for d in _divisors(i):
        out = out * _factor_phi(d, q)
    return out


def _fact_q_plus(q: int, i: int) -> Factorization:
    """Factorization of q^i + 1."""
    out = _one()
    for d in _divisors(2 * i):
        if i % d != 0:
            out = out * _factor_phi(d, q)
    return out


def _fact_power(base_fact: Factorization, e: int) -> Factorization:
    out = _one()
    for _ in range(e):
        out = out * base_fact
    return out


def _fact_factorial(n: int) -> Factorization:
    factors = []
    for p in range(2, n + 1):
        if not is_prime(p):
            continue
        e, pk = 0, p
        while pk <= n:
            e += n // pk
            pk *= p
        factors.append((p, e))
    return Factorization(math.factorial(n), tuple(factors))


# ---------------------------------------------------------------------------
# orders


@dataclass(frozen=True)
class GroupOrder:
    """Exact factored order plus the symbolic terms it was assembled from."""

    order: Factorization
    generic_factors: tuple[tuple[str, int], ...]
    divisor: int


def _term(label: str, fact: Factorization):
    return (label, fact)


def _signed_term(q: int, i: int, sign: int) -> tuple[str, Factorization]:
    """q^i - sign^i as a factored term."""
    if sign == 1 or i % 2 == 0:
        return (f"q^{i}-1", _fact_q_minus(q, i))
    return (f"q^{i}+1", _fact_q_plus(q, i))


@lru_cache(maxsize=None)
def group_order(d: GroupDescriptor) -> GroupOrder:
    """The exact order of the group named by d, in factored form."""
    f, n, sign, q = d.family, d.n, d.sign, d.q
    if f is Family.SYM:
        fact = _fact_factorial(n)
        return GroupOrder(fact, ((f"{n}!", fact.value),), 1)
    if f is Family.ALT:
        fact = _fact_factorial(n)
        return GroupOrder(
            fact.divide_exact(factorize(2)), ((f"{n}!", fact.value),), 2
        )
    if f is Family.SPORADIC:
        fact = Factorization(175560, ((2, 3), (3, 1), (5, 1), (7, 1), (11, 1), (19, 1)))
        return GroupOrder(fact, (("|J1|", 175560),), 1)

    p, a = _prime_power(q)
    terms: list[tuple[str, Factorization]] = []
    divisor = 1

    def qpow(e: int):
        terms.append((f"q^{e}", Factorization(q**e, ((p, a * e),))))

    if f is Family.PSL:
        qpow(n * (n - 1) // 2)
        for i in range(2, n + 1):
            terms.append(_signed_term(q, i, sign))
        divisor = math.gcd(n, q - sign)
    elif f is Family.PSP or (f is Family.POMEGA and n % 2 == 1):
        m = n if f is Family.PSP else n // 2
        qpow(m * m)
        for i in range(1, m + 1):
            terms.append((f"q^{2 * i}-1", _fact_q_minus(q, 2 * i)))
        divisor = math.gcd(2, q - 1)
    elif f is Family.POMEGA:
        m = n // 2
        qpow(m * (m - 1))
        # The middle term is q^m - sign itself, not q^m - sign^m.
        if sign == 1:
            terms.append((f"q^{m}-1", _fact_q_minus(q, m)))
        else:
            terms.append((f"q^{m}+1", _fact_q_plus(q, m)))
        for i in range(1, m):
            terms.append((f"q^{2 * i}-1", _fact_q_minus(q, 2 * i)))
        divisor = math.gcd(4, q**m - sign)
    elif f is Family.G2:
        qpow(6)
        terms += [_signed_term(q, 6, 1), _signed_term(q, 2, 1)]
    elif f is Family.F4:
        qpow(24)
        terms += [_signed_term(q, i, 1) for i in (12, 8, 6, 2)]
    elif f is Family.E6:
        qpow(36)
        terms += [
            _signed_term(q, 12, 1),
            _signed_term(q, 9, sign),
            _signed_term(q, 8, 1),
            _signed_term(q, 6, 1),
            _signed_term(q, 5, sign),
            _signed_term(q, 2, 1),
        ]
        divisor = math.gcd(3, q - sign)
    elif f is Family.E7:
        qpow(63)
        terms += [_signed_term(q, i, 1) for i in (18, 14, 12, 10, 8, 6, 2)]
        divisor = math.gcd(2, q - 1)
    elif f is Family.E8:
        qpow(120)
        terms += [_signed_term(q, i, 1) for i in (30, 24, 20, 18, 14, 12, 8, 2)]
    elif f is Family.D4_TRIALITY:
        qpow(12)
        mid = _factor_phi(3, q) * _factor_phi(6, q) * _factor_phi(12, q)
        terms.append((f"q^8+q^4+1", mid))
        terms += [_signed_term(q, 6, 1), _signed_term(q, 2, 1)]
    elif f is Family.SUZUKI:
        qpow(2)
        terms += [(f"q^2+1", _fact_q_plus(q, 2)), _signed_term(q, 1, 1)]
    elif f is Family.REE:
        qpow(3)
        terms += [(f"q^3+1", _fact_q_plus(q, 3)), _signed_term(q, 1, 1)]
    elif f is Family.LARGE_REE:
        qpow(12)
        terms += [
            (f"q^6+1", _fact_q_plus(q, 6)),
            (f"q^4-1", _fact_q_minus(q, 4)),
            (f"q^3+1", _fact_q_plus(q, 3)),
            _signed_term(q, 1, 1),
        ]
    else:
        raise UnsupportedFamilyError(f"no order formula for {d.render()}")

    total = _one()
    for _, fact in terms:
        total = total * fact
    if divisor != 1:
        total = total.divide_exact(factorize(divisor))
    generic = tuple((label, fact.value) for label, fact in terms)
    return GroupOrder(total, generic, divisor)


def prime_spectrum(d: GroupDescriptor) -> PrimeSet:
    """pi(S): the primes dividing the group order."""
    return group_order(d).order.primes()


def borel_order(d: GroupDescriptor) -> Factorization:
    """Order of a Borel subgroup; supported for PSL (plus type) and PSp."""
    f, n, q = d.family, d.n, d.q
    if f is Family.PSL and d.sign == 1:
        p, a = _prime_power(q)
        fact = Factorization(q ** (n * (n - 1) // 2), ((p, a * n * (n - 1) // 2),))
        fact = fact * _fact_power(factorize(q - 1), n - 1)
        return fact.divide_exact(factorize(math.gcd(n, q - 1)))
    if f is Family.PSP:
        p, a = _prime_power(q)
        fact = Factorization(q ** (n * n), ((p, a * n * n),))
        fact = fact * _fact_power(factorize(q - 1), n)
        return fact.divide_exact(factorize(math.gcd(2, q - 1)))
    raise UnsupportedFamilyError(f"no Borel order data for {d.render()}")
