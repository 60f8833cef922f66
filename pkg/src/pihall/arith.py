"""Exact integer arithmetic: factorization, prime sets, pi-parts, multiplicative orders.

Everything here is deterministic and exact; no floats, no probabilistic
primality answers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

# Deterministic Miller-Rabin witness set, valid for all n < 3.3 * 10**24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test (Miller-Rabin with a fixed witness set)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeSet:
    """Immutable sorted set of distinct primes."""

    __slots__ = ("_primes",)

    def __init__(self, primes: Iterable[int] = ()):
        seen = sorted(set(primes))
        for p in seen:
            if not is_prime(p):
                raise ValueError(f"not a prime: {p}")
        object.__setattr__(self, "_primes", tuple(seen))

    @classmethod
    def parse(cls, text: str) -> "PrimeSet":
        """Parse a comma-separated prime list such as '2,3,5'."""
        parts = [s.strip() for s in text.split(",") if s.strip()]
        if not parts:
            return cls()
        try:
            return cls(int(s) for s in parts)
        except ValueError as exc:
            raise ValueError(f"bad prime set {text!r}: {exc}") from None

    def render(self) -> str:
        return ",".join(str(p) for p in self._primes)

    def __iter__(self) -> Iterator[int]:
        return iter(self._primes)

    def __len__(self) -> int:
        return len(self._primes)

    def __contains__(self, p: object) -> bool:
        return p in self._primes

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeSet) and self._primes == other._primes

    def __hash__(self) -> int:
        return hash(self._primes)

    def __le__(self, other: "PrimeSet") -> bool:
        return set(self._primes) <= set(other._primes)

    def __or__(self, other: "PrimeSet") -> "PrimeSet":
        return PrimeSet(self._primes + other._primes)

    def __and__(self, other: "PrimeSet") -> "PrimeSet":
        return PrimeSet(p for p in self._primes if p in other)

    def __sub__(self, other: "PrimeSet") -> "PrimeSet":
        return PrimeSet(p for p in self._primes if p not in other)

    def __repr__(self) -> str:
        return f"PrimeSet({{{', '.join(str(p) for p in self._primes)}}})"

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("PrimeSet is immutable")


@dataclass(frozen=True)
class Factorization:
    """An integer together with its prime factorization.

    factors is a tuple of (prime, exponent) pairs sorted by prime;
    the invariant value == prod(p**e) is checked on construction.
    """

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 0
        for p, e in self.factors:
            if p <= last or e < 1 or not is_prime(p):
                raise ValueError(f"malformed factor list: {self.factors}")
            last = p
            prod *= p**e
        if prod != self.value:
            raise ValueError(f"factors do not multiply to {self.value}")

    def primes(self) -> PrimeSet:
        return PrimeSet(p for p, _ in self.factors)

    def __mul__(self, other: "Factorization") -> "Factorization":
        exps: dict[int, int] = dict(self.factors)
        for p, e in other.factors:
            exps[p] = exps.get(p, 0) + e
        merged = tuple(sorted(exps.items()))
        return Factorization(self.value * other.value, merged)

    def divide_exact(self, other: "Factorization") -> "Factorization":
        """Exact quotient; raises if other does not divide self."""
        exps = dict(self.factors)
        for p, e in other.factors:
            if exps.get(p, 0) < e:
                raise ValueError(f"{other.value} does not divide {self.value}")
            exps[p] -= e
        merged = tuple((p, e) for p, e in sorted(exps.items()) if e > 0)
        return Factorization(self.value // other.value, merged)


def factorize(n: int) -> Factorization:
    """Factorize n >= 1 by deterministic trial division."""
    if n < 1:
        raise ValueError(f"factorize requires n >= 1, got {n}")
    m = n
    factors: list[tuple[int, int]] = []
    for p in (2, 3):
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e:
            factors.append((p, e))
    # Remaining factors are coprime to 6; step through 6k +/- 1 candidates.
    d = 5
    while d * d <= m:
        for cand in (d, d + 2):
            e = 0
            while m % cand == 0:
                m //= cand
                e += 1
            if e:
                factors.append((cand, e))
        d += 6
    if m > 1:
        factors.append((m, 1))
    return Factorization(n, tuple(sorted(factors)))


def prime_divisors(n: int) -> PrimeSet:
    """pi(n): the set of prime divisors of n >= 1."""
    return factorize(n).primes()


def pi_part(n: int, pi: Iterable[int]) -> int:
    """The pi-part of n: the largest divisor of n all of whose primes lie in pi."""
    if n < 1:
        raise ValueError(f"pi_part requires n >= 1, got {n}")
    part = 1
    for p in set(pi):
        while n % p == 0:
            n //= p
            part *= p
    return part


def co_pi_part(n: int, pi: Iterable[int]) -> int:
    """The pi'-part of n (the complement: n divided by its pi-part)."""
    return n // pi_part(n, pi)


def mult_order(q: int, r: int) -> int:
    """e(q, r): the multiplicative order of q modulo the prime r.

    For r = 2 the convention is e(q, 2) = 1 if q = 1 (mod 4), else 2.
    """
    if not is_prime(r):
        raise ValueError(f"modulus must be prime, got {r}")
    if q % r == 0:
        raise ValueError(f"{r} divides {q}; order undefined")
    if r == 2:
        return 1 if q % 4 == 1 else 2
    # Start from the full group order r-1 and strip prime factors while the
    # power stays 1.
    order = r - 1
    for p, _ in factorize(r - 1).factors:
        while order % p == 0 and pow(q, order // p, r) == 1:
            order //= p
    return order


def epsilon(q: int) -> int:
    """The sign with q = epsilon (mod 4); defined for odd q >= 3."""
    if q < 3 or q % 2 == 0:
        raise ValueError(f"epsilon requires odd q >= 3, got {q}")
    return 1 if q % 4 == 1 else -1
