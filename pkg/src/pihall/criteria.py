"""Decision rules for solvable Hall subgroups of finite simple groups.

``decide_solvable_hall(d, pi)`` reduces pi to sigma = pi intersected with
pi(S), then evaluates a closed catalog of arithmetic criteria and returns a
three-valued Verdict with a trace of rule firings. Yes and No answers are
sound transcriptions of the cited criteria, evaluated exactly; anything the
catalog does not cover lands on Unknown with a reason code rather than a
guess. Necessity checks always run before sufficiency checks, so a decided
verdict never contradicts the pairwise reduction.

``decide_pair`` specializes to two primes; ``combine_pairwise`` conjoins all
pair verdicts over sigma, realizing the pairwise existence criterion; and
``consistency_check`` asserts the two routes never disagree on decided
values.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations

from .arith import PrimeSet, epsilon, is_prime, mult_order, pi_part, prime_divisors
from .catalog import (
    Family,
    GroupDescriptor,
    UnsupportedFamilyError,
    borel_order,
    group_order,
    prime_spectrum,
)


class Decision(Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


class SolvableNote(Enum):
    SOLVABLE = "Solvable"
    SOLVABLE_BY_ODD_ORDER = "SolvableByOddOrder"
    SOLVABLE_BY_TWO_PRIME_ORDER = "SolvableByTwoPrimeOrder"
    NOT_APPLICABLE = "NotApplicable"


class ConjugacyNote(Enum):
    CONJUGATE_CLAIMED = "ConjugateClaimed"
    AUT_INVARIANT_CLAIMED = "AutInvariantClaimed"
    NO_CLAIM = "NoClaim"


# ---------------------------------------------------------------------------
# rule catalog


@dataclass(frozen=True)
class Rule:
    rule_id: str
    citation: str
    symbols: frozenset


def _rule(rule_id, citation, *symbols):
    return Rule(rule_id, citation, frozenset(symbols))


RULES = {
    r.rule_id: r
    for r in [
        _rule(
            "R0-sylow",
            "Sylow's theorem; a group of prime-power order is solvable",
            "sigma",
        ),
        _rule(
            "R-nonsimple-guard",
            "the criteria cover nonabelian finite simple groups; this descriptor "
            "denotes a group outside the simple range",
            "group",
        ),
        _rule(
            "R-full-spectrum",
            "a subgroup of pi'-index with pi containing every prime divisor of "
            "|S| is S itself, and nonabelian simple groups are not solvable",
            "sigma",
        ),
        _rule(
            "R1-sym",
            "P. Hall, Theorems like Sylow's, Proc. London Math. Soc. (3) 6 "
            "(1956), Theorem A4: S_n has a {2,3}-Hall subgroup exactly for "
            "n in {3,4,5,7,8}, and no other {p,q}-Hall subgroups",
            "n",
            "sigma",
            "magic_degrees",
        ),
        _rule(
            "R1-alt",
            "P. Hall (1956), Theorem A4, applied through the alternating "
            "subgroup: no {p,q}-Hall subgroups outside p=2, q=3",
            "n",
            "sigma",
        ),
        _rule(
            "R2-sporadic",
            "Revin-Vdovin, Hall subgroups of finite groups, Contemp. Math. 402 "
            "(2006), sporadic tables: J1 with {2,3,7} is the only sporadic "
            "solvable Hall case beyond pairs",
            "name",
            "sigma",
        ),
        _rule(
            "R3-borel",
            "D. O. Revin, Sib. Adv. Math. 9:2 (1999), Theorem 3.3: a pi-Hall "
            "subgroup with p in pi lies in a Borel subgroup or is parabolic, "
            "and a non-Borel parabolic has order divisible by 6",
            "p",
            "sigma_part_group",
            "sigma_part_borel",
        ),
        _rule(
            "R4-torus",
            "Vdovin-Revin, Algebra and Logic 41:1 (2002), Lemma 14: Suzuki/Ree "
            "torus table (sufficient sets for odd pi)",
            "family",
            "torus_set",
            "sigma",
        ),
        _rule(
            "R4-exceptional",
            "Vdovin-Revin, Algebra and Logic 41:1 (2002), Lemmas 7-13: odd-pi "
            "criteria for 3D4, E6, E7, E8, F4, G2",
            "r",
            "orders",
            "extra",
            "sigma",
        ),
        _rule(
            "R4-combine",
            "F. Gross, Math. Z. 220 (1995), Theorem 4.9: for classical groups "
            "and odd pi, existence reduces to pairs",
            "pairs",
        ),
        _rule(
            "R5-criterion",
            "Revin-Vdovin, Contemp. Math. 402 (2006), Theorem 5.2; also "
            "Vdovin-Revin, Russian Math. Surveys 66:5 (2011), Theorem 8.9: "
            "criteria for 2 in pi with 3 and p excluded",
            "eps",
            "t",
            "q_minus_eps",
            "condition",
            "sigma",
        ),
        _rule(
            "R5-ree",
            "Revin-Vdovin, Contemp. Math. 402 (2006), Theorem 5.2: the Ree "
            "groups 2G2(q) have solvable {2,7}-Hall subgroups",
            "sigma",
        ),
        _rule(
            "R-3s-pair",
            "F. Gross, Math. Z. 220 (1995), Theorems 4.1, 4.3, 4.5: {3,s}-Hall "
            "criteria for linear, unitary and symplectic groups",
            "case",
            "e3",
            "es",
            "s",
            "n",
            "three_part",
        ),
        _rule(
            "R6-psl2",
            "Revin-Vdovin, J. Algebra 324:12 (2010), Lemma 3.11: PSL2(q) with "
            "3 dividing q - eps has conjugate solvable Hall subgroups",
            "q_minus_eps",
            "tau",
        ),
        _rule(
            "R6-psln",
            "Revin-Vdovin, J. Algebra 324:12 (2010), Lemma 4.3: {2,3}-analysis "
            "for linear and unitary groups of rank at least 2",
            "condition",
            "eta",
            "n",
            "m",
            "sym",
            "gl2",
            "order3",
            "sigma",
        ),
        _rule(
            "R6-psp",
            "Revin-Vdovin, J. Algebra 324:12 (2010), Lemma 4.4: {2,3}-analysis "
            "for symplectic groups",
            "n",
            "q_minus_eps",
            "sym",
            "condition",
        ),
        _rule(
            "R6-pomega",
            "Revin-Vdovin, J. Algebra 324:12 (2010), Lemma 6.7: {2,3}-analysis "
            "for orthogonal groups",
            "condition",
            "m",
            "eta",
            "q_minus_eps",
        ),
        _rule(
            "R6-exceptional",
            "Revin-Vdovin, J. Algebra 324:12 (2010), Lemmas 7.1-7.6: "
            "{2,3}-analysis for exceptional groups",
            "family",
            "q_minus_eps",
            "sigma",
        ),
        _rule(
            "R-combine",
            "pairwise reduction: a solvable pi-Hall subgroup yields {r,s}-Hall "
            "subgroups for every pair (Hall theory in solvable groups); the "
            "family criteria supply the converse for simple groups",
            "pairs",
        ),
    ]
}


@dataclass(frozen=True)
class RuleFiring:
    rule_id: str
    citation: str
    bindings: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        rule = RULES.get(self.rule_id)
        if rule is None:
            raise ValueError(f"unknown rule id {self.rule_id!r}")
        if self.citation != rule.citation:
            raise ValueError(f"citation mismatch for {self.rule_id}")
        extra = {k for k, _ in self.bindings} - rule.symbols
        if extra:
            raise ValueError(f"undeclared binding symbols for {self.rule_id}: {extra}")


def _fire(rule_id: str, **bindings) -> RuleFiring:
    rule = RULES[rule_id]
    rendered = tuple((k, str(v)) for k, v in bindings.items())
    return RuleFiring(rule_id, rule.citation, rendered)


# ---------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class Verdict:
    decision: Decision
    solvable_note: SolvableNote
    conjugacy_note: ConjugacyNote
    trace: tuple[RuleFiring, ...]
    descriptor: GroupDescriptor
    pi: PrimeSet
    sigma: PrimeSet
    reason: str = ""

    def __post_init__(self):
        if not self.trace:
            raise ValueError("verdicts must carry a nonempty trace")
        if self.decision is Decision.UNKNOWN and not self.reason:
            raise ValueError("Unknown verdicts must carry a reason code")
        if self.decision is not Decision.UNKNOWN and self.reason:
            raise ValueError("reason codes are reserved for Unknown verdicts")
        if self.decision is not Decision.YES:
            if self.solvable_note is not SolvableNote.NOT_APPLICABLE:
                raise ValueError("solvability notes apply only to Yes verdicts")
            if self.conjugacy_note is not ConjugacyNote.NO_CLAIM:
                raise ValueError("conjugacy claims apply only to Yes verdicts")
        if not (self.sigma <= self.pi):
            raise ValueError("sigma must be contained in pi")


@dataclass(frozen=True)
class CriteriaContext:
    """Derived quantities shared by the rule rows."""

    descriptor: GroupDescriptor
    pi: PrimeSet
    sigma: PrimeSet
    tau: PrimeSet
    p: int | None
    eps: int | None
    t: int | None
    m: int
    order3part: int

    @property
    def q(self) -> int:
        return self.descriptor.q


def make_context(d: GroupDescriptor, pi: PrimeSet) -> CriteriaContext:
    sigma = pi & prime_spectrum(d)
    tau = sigma - PrimeSet((2, 3))
    p = d.characteristic if d.is_lie else None
    eps = epsilon(d.q) if d.is_lie and d.q % 2 == 1 else None
    odd = sigma - PrimeSet((2,))
    t = min(odd) if len(odd) else None
    if d.family in (Family.PSL, Family.POMEGA):
        m = d.n // 2
    elif d.family is Family.PSP:
        m = d.n
    else:
        m = 0
    order3 = pi_part(group_order(d).order.value, PrimeSet((3,)))
    return CriteriaContext(d, pi, sigma, tau, p, eps, t, m, order3)


def _notes_for_yes(sigma, *, conjugate=False, aut_invariant=False):
    if len(sigma) <= 1:
        return SolvableNote.SOLVABLE, ConjugacyNote.CONJUGATE_CLAIMED
    if len(sigma) == 2:
        note = ConjugacyNote.CONJUGATE_CLAIMED if conjugate else ConjugacyNote.NO_CLAIM
        return SolvableNote.SOLVABLE_BY_TWO_PRIME_ORDER, note
    solvable = (
        SolvableNote.SOLVABLE_BY_ODD_ORDER if 2 not in sigma else SolvableNote.SOLVABLE
    )
    if conjugate:
        return solvable, ConjugacyNote.CONJUGATE_CLAIMED
    if aut_invariant:
        return solvable, ConjugacyNote.AUT_INVARIANT_CLAIMED
    return solvable, ConjugacyNote.NO_CLAIM


def _yes(ctx, firings, *, conjugate=False, aut_invariant=False):
    solvable, conj = _notes_for_yes(
        ctx.sigma, conjugate=conjugate, aut_invariant=aut_invariant
    )
    return Verdict(
        Decision.YES, solvable, conj, tuple(firings), ctx.descriptor, ctx.pi, ctx.sigma
    )


def _no(ctx, firings):
    return Verdict(
        Decision.NO,
        SolvableNote.NOT_APPLICABLE,
        ConjugacyNote.NO_CLAIM,
        tuple(firings),
        ctx.descriptor,
        ctx.pi,
        ctx.sigma,
    )


def _unknown(ctx, reason, firings=()):
    return Verdict(
        Decision.UNKNOWN,
        SolvableNote.NOT_APPLICABLE,
        ConjugacyNote.NO_CLAIM,
        tuple(firings),
        ctx.descriptor,
        ctx.pi,
        ctx.sigma,
        reason,
    )


# ---------------------------------------------------------------------------
# helpers

SYM_HALL_DEGREES = frozenset({3, 4, 5, 7, 8})

_NONSIMPLE = frozenset(
    {"PSL+:2:2", "PSL+:2:3", "PSL-:2:2", "PSL-:2:3", "PSL-:3:2", "PSp:2:2", "G2:2", "2F4:2"}
)


def _is_known_simple(d: GroupDescriptor) -> bool:
    if d.family is Family.ALT:
        return d.n >= 5
    if d.family is Family.SYM:
        return False
    if d.family is Family.SPORADIC:
        return True
    return d.render() not in _NONSIMPLE


def _pi_of(v: int) -> PrimeSet:
    return prime_divisors(v)


def _factorial_primes(n: int) -> PrimeSet:
    return PrimeSet(p for p in range(2, n + 1) if is_prime(p))


def _sym_part(n: int, r: int) -> int:
    e, rk = 0, r
    while rk <= n:
        e += n // rk
        rk *= r
    return r**e


def _sym_in_e(n: int, primes: PrimeSet) -> bool:
    """Exact existence of a Hall subgroup of S_n for the given prime set."""
    relevant = primes & _factorial_primes(n)
    if len(relevant) <= 1:
        return True
    return relevant == PrimeSet((2, 3)) and n in SYM_HALL_DEGREES


def _gl2_two_three(q: int, eps: int) -> bool:
    # GL2-criterion: 3 in pi(q - eps) or the {2,3}-part of q^2 - 1 is 24
    return (q - eps) % 3 == 0 or pi_part(q * q - 1, PrimeSet((2, 3))) == 24


def _mod_matches(q: int, modulus: int, sign: int) -> bool:
    return q % modulus == sign % modulus


_TWO_THREE = PrimeSet((2, 3))


# ---------------------------------------------------------------------------
# rule rows


def _decide_alt_sym(ctx: CriteriaContext) -> Verdict:
    d, sigma = ctx.descriptor, ctx.sigma
    n = d.n
    if d.family is Family.SYM:
        firing = _fire(
            "R1-sym", n=n, sigma=sigma.render(), magic_degrees=sorted(SYM_HALL_DEGREES)
        )
        if sigma == _TWO_THREE and n in SYM_HALL_DEGREES:
            return _yes(ctx, [firing])
        return _no(ctx, [firing])
    firing = _fire("R1-alt", n=n, sigma=sigma.render())
    if sigma == _TWO_THREE:
        return _unknown(ctx, "alt-two-three-open", [firing])
    return _no(ctx, [firing])


def _decide_sporadic(ctx: CriteriaContext) -> Verdict:
    sigma = ctx.sigma
    firing = _fire("R2-sporadic", name=ctx.descriptor.sporadic_name, sigma=sigma.render())
    if len(sigma) == 2:
        return _unknown(ctx, "sporadic-pair-open", [firing])
    if sigma == PrimeSet((2, 3, 7)):
        return _yes(ctx, [firing], aut_invariant=True)
    return _no(ctx, [firing])


def _decide_characteristic(ctx: CriteriaContext) -> Verdict:
    d, sigma = ctx.descriptor, ctx.sigma
    try:
        b = borel_order(d)
    except UnsupportedFamilyError:
        firing = _fire(
            "R3-borel",
            p=ctx.p,
            sigma_part_group=pi_part(group_order(d).order.value, sigma),
            sigma_part_borel="unavailable for this family",
        )
        return _unknown(ctx, "borel-order-unsupported", [firing])
    group_part = pi_part(group_order(d).order.value, sigma)
    borel_part = pi_part(b.value, sigma)
    firing = _fire(
        "R3-borel", p=ctx.p, sigma_part_group=group_part, sigma_part_borel=borel_part
    )
    if group_part == borel_part:
        return _yes(ctx, [firing], conjugate=len(sigma) >= 3)
    if len(sigma) >= 3:
        return _no(ctx, [firing])
    return _unknown(ctx, "borel-pair-gap", [firing])


def _torus_sets(d: GroupDescriptor) -> list[tuple[str, PrimeSet]]:
    q = d.q
    k = (d.field_degree - 1) // 2  # q = p^(2k+1)
    if d.family is Family.SUZUKI:
        root = 2 ** (k + 1)
        vals = [("q-1", q - 1), ("q+r+1", q + root + 1), ("q-r+1", q - root + 1)]
    elif d.family is Family.REE:
        root = 3 ** (k + 1)
        vals = [("q-1", q - 1), ("q+r+1", q + root + 1), ("q-r+1", q - root + 1)]
    else:
        root = 2 ** (k + 1)
        big = 2 ** (3 * k + 2)  # q * root
        vals = [
            ("q^2+1", q * q + 1),
            ("q^2-1", q * q - 1),
            ("q+r+1", q + root + 1),
            ("q-r+1", q - root + 1),
            ("q^2+qr-r-1", q * q + big - root - 1),
            ("q^2-qr+r-1", q * q - big + root - 1),
            ("q^2+qr+q+r+1", q * q + big + q + root + 1),
            ("q^2-qr+q-r+1", q * q - big + q - root + 1),
        ]
    return [(label, _pi_of(v)) for label, v in vals]


def _r4_exceptional(ctx: CriteriaContext) -> Verdict:
    d, sigma, q = ctx.descriptor, ctx.sigma, ctx.q
    r = min(sigma)
    orders = {s: mult_order(q, s) for s in sigma}
    rendered = ";".join(f"e(q,{s})={orders[s]}" for s in sorted(sigma))
    uniform = all(orders[s] == orders[r] for s in sigma)
    extra_ok, extra = True, "none"
    if d.family is Family.E6:
        part = pi_part(q - d.sign, sigma)
        extra_ok = part % 15 != 0
        extra = f"(q-eta)_sigma={part} vs 15"
    elif d.family is Family.E7:
        part = pi_part(q - 1, sigma)
        extra_ok = orders[r] == 1 and all(part % k != 0 for k in (15, 21, 35))
        extra = f"e(q,r)={orders[r]}, (q-1)_sigma={part} vs 15,21,35"
    elif d.family is Family.E8:
        part = pi_part(q + 1, sigma)
        extra_ok = orders[r] == 2 and all(part % k != 0 for k in (15, 21, 35))
        extra = f"e(q,r)={orders[r]}, (q+1)_sigma={part} vs 15,21,35"
    firing = _fire(
        "R4-exceptional", r=r, orders=rendered, extra=extra, sigma=sigma.render()
    )
    if uniform and extra_ok:
        return _yes(ctx, [firing], aut_invariant=len(sigma) >= 3)
    return _no(ctx, [firing])


def _pair_three_s_classical(ctx: CriteriaContext, s: int):
    """Exact {3,s}-pair criterion for PSL/PSU/PSp; None when not applicable.

    Returns (ok, firing) with ok a bool, or None when the preconditions
    (odd q, s dividing q - eps, covered family) fail.
    """
    d, q = ctx.descriptor, ctx.q
    if d.family not in (Family.PSL, Family.PSP) or q % 2 == 0:
        return None
    eps = epsilon(q)
    if (q - eps) % s != 0:
        return None
    e3, es, n = mult_order(q, 3), mult_order(q, s), d.n
    three_part = pi_part(q * q - 1, PrimeSet((3,)))
    if d.family is Family.PSP:
        ok = e3 == es and n < s
        case = "symplectic: e(q,3)=e(q,s) and n<s"
    elif d.sign == 1:
        ok = (e3 == es and n < e3 * s) or (
            n == 3 and e3 == 2 and es == 1 and three_part == 3
        )
        case = "linear: e(q,3)=e(q,s)=a and n<as, or the n=3 exception"
    else:
        ok = (e3 == es and n < 2 * s) or (
            n == 3 and e3 == 1 and es == 2 and three_part == 3
        )
        case = "unitary: e(q,3)=e(q,s) and n<2s, or the n=3 exception"
    firing = _fire(
        "R-3s-pair", case=case, e3=e3, es=es, s=s, n=n, three_part=three_part
    )
    return ok, firing


def _decide_odd(ctx: CriteriaContext) -> Verdict:
    d, sigma = ctx.descriptor, ctx.sigma
    if d.family in (Family.SUZUKI, Family.REE, Family.LARGE_REE):
        for label, primes in _torus_sets(d):
            if sigma <= primes:
                firing = _fire(
                    "R4-torus",
                    family=d.family.value,
                    torus_set=label,
                    sigma=sigma.render(),
                )
                return _yes(ctx, [firing], aut_invariant=len(sigma) >= 3)
        firing = _fire(
            "R4-torus",
            family=d.family.value,
            torus_set="no listed torus spectrum contains sigma",
            sigma=sigma.render(),
        )
        return _unknown(ctx, "torus-table-sufficiency-gap", [firing])
    if d.family in (
        Family.D4_TRIALITY,
        Family.E6,
        Family.E7,
        Family.E8,
        Family.F4,
        Family.G2,
    ):
        return _r4_exceptional(ctx)

    # classical: reduce to pairs
    if len(sigma) == 2:
        r, s = sorted(sigma)
        if 3 not in sigma:
            firing = _fire(
                "R4-combine",
                pairs=f"{{{r},{s}}}:Unknown (no odd-pair criterion without 3)",
            )
            return _unknown(ctx, "classical-odd-pair-gap", [firing])
        result = _pair_three_s_classical(ctx, s)
        if result is None:
            firing = _fire(
                "R-3s-pair",
                case="preconditions not met (needs odd q, s | q-eps, PSL/PSp)",
                e3=mult_order(ctx.q, 3) if ctx.q % 3 else "-",
                es=mult_order(ctx.q, s) if ctx.q % s else "-",
                s=s,
                n=d.n,
                three_part=pi_part(ctx.q * ctx.q - 1, PrimeSet((3,))),
            )
            return _unknown(ctx, "three-s-precondition-gap", [firing])
        ok, firing = result
        return _yes(ctx, [firing]) if ok else _no(ctx, [firing])

    verdicts = {
        (r, s): decide_pair(d, r, s) for r, s in combinations(sorted(sigma), 2)
    }
    summary = ";".join(f"{{{r},{s}}}:{v.decision.value}" for (r, s), v in verdicts.items())
    firings = [_fire("R4-combine", pairs=summary)]
    for v in verdicts.values():
        firings.extend(v.trace)
    if any(v.decision is Decision.NO for v in verdicts.values()):
        return _no(ctx, firings)
    if all(v.decision is Decision.YES for v in verdicts.values()):
        return _yes(ctx, firings, aut_invariant=True)
    return _unknown(ctx, "classical-odd-pair-gap", firings)


def _r5_family_condition(ctx: CriteriaContext) -> tuple[bool, str]:
    d, eps, t = ctx.descriptor, ctx.eps, ctx.t
    n = d.n
    if d.family is Family.PSL:
        if d.sign == eps:
            return n < t, f"n<t: {n}<{t}"
        return n + 1 < 2 * t, f"(n+1)/2<t: ({n}+1)/2<{t}"
    if d.family is Family.PSP:
        return n < t, f"n<t: {n}<{t}"
    if d.family is Family.POMEGA:
        m = ctx.m
        if n % 2 == 1 or d.sign == eps:
            return m < t, f"m<t: {m}<{t}"
        return m % 2 == 1 and m - 1 < t, f"m odd and m-1<t: m={m}, t={t}"
    if d.family is Family.E6 and d.sign == -eps:
        return 5 not in ctx.sigma, "5 not in sigma"
    if d.family in (Family.E7, Family.E8):
        ok = 5 not in ctx.sigma and 7 not in ctx.sigma
        return ok, "5,7 not in sigma"
    return True, "no extra family condition"


def _decide_two_no_three(ctx: CriteriaContext) -> Verdict:
    d, sigma, q = ctx.descriptor, ctx.sigma, ctx.q
    if d.family is Family.REE and sigma == PrimeSet((2, 7)):
        return _yes(ctx, [_fire("R5-ree", sigma=sigma.render())])
    eps = ctx.eps
    q_minus = q - eps
    missing = [s for s in sigma if q_minus % s != 0]
    if missing:
        firing = _fire(
            "R5-criterion",
            eps=f"{eps:+d}",
            t=ctx.t,
            q_minus_eps=q_minus,
            condition=f"sigma not contained in pi(q-eps): {missing[0]} does not divide {q_minus}",
            sigma=sigma.render(),
        )
        return _no(ctx, [firing])
    ok, desc = _r5_family_condition(ctx)
    firing = _fire(
        "R5-criterion",
        eps=f"{eps:+d}",
        t=ctx.t,
        q_minus_eps=q_minus,
        condition=desc,
        sigma=sigma.render(),
    )
    if ok:
        return _yes(ctx, [firing], conjugate=len(sigma) >= 3)
    return _no(ctx, [firing])


def _two_s_pair_ok(ctx: CriteriaContext, s: int) -> tuple[bool, str]:
    """The {2,s}-pair condition for odd s > 3, at t = s."""
    d, q, eps = ctx.descriptor, ctx.q, ctx.eps
    if (q - eps) % s != 0:
        return False, f"{s} does not divide q-eps={q - eps}"
    n = d.n
    if d.family is Family.PSL:
        if d.sign == eps:
            return n < s, f"n<s: {n}<{s}"
        return n + 1 < 2 * s, f"(n+1)/2<s: ({n}+1)/2<{s}"
    if d.family is Family.PSP:
        return n < s, f"n<s: {n}<{s}"
    if d.family is Family.POMEGA:
        m = ctx.m
        if n % 2 == 1 or d.sign == eps:
            return m < s, f"m<s: {m}<{s}"
        return m % 2 == 1 and m - 1 < s, f"m odd and m-1<s: m={m}, s={s}"
    if d.family is Family.E6 and d.sign == -eps:
        return s != 5, "5 excluded for this form"
    if d.family in (Family.E7, Family.E8):
        return s not in (5, 7), "5,7 excluded for this family"
    return True, "no extra family condition"


def _two_s_failure(ctx, s, desc) -> Verdict:
    firing = _fire(
        "R5-criterion",
        eps=f"{ctx.eps:+d}",
        t=s,
        q_minus_eps=ctx.q - ctx.eps,
        condition=f"{{2,{s}}}-pair fails: {desc}",
        sigma=ctx.sigma.render(),
    )
    return _no(ctx, [firing])


def _r6_psl2(ctx: CriteriaContext) -> Verdict:
    q, eps, tau = ctx.q, ctx.eps, ctx.tau
    if len(tau) == 0:
        firing = _fire("R6-psl2", q_minus_eps=q - eps, tau="empty")
        return _unknown(ctx, "psl2-two-three-open", [firing])
    for s in sorted(tau):
        ok, desc = _two_s_pair_ok(ctx, s)
        if not ok:
            return _two_s_failure(ctx, s, desc)
    q_minus = q - eps
    if q_minus % 3 == 0:
        firing = _fire("R6-psl2", q_minus_eps=q_minus, tau=tau.render())
        return _yes(ctx, [firing], conjugate=True)
    s = min(tau)
    firing = _fire(
        "R-3s-pair",
        case="e(q,3)=e(q,s) required when s divides q-eps",
        e3=mult_order(q, 3),
        es=mult_order(q, s),
        s=s,
        n=2,
        three_part=pi_part(q * q - 1, PrimeSet((3,))),
    )
    return _no(ctx, [firing])


def _r6_psln(ctx: CriteriaContext) -> Verdict:
    d, q, eps, sigma, tau = ctx.descriptor, ctx.q, ctx.eps, ctx.sigma, ctx.tau
    eta, n, m = d.sign, d.n, d.n // 2
    for s in sorted(tau):
        ok, desc = _two_s_pair_ok(ctx, s)
        if not ok:
            return _two_s_failure(ctx, s, desc)
        result = _pair_three_s_classical(ctx, s)
        if result is not None and not result[0]:
            return _no(ctx, [result[1]])

    pqeta = _pi_of(q - eta)
    fact_primes = _factorial_primes(n)
    head = _mod_matches(q, 12, eta) or (n == 3 and _mod_matches(q, 4, eta))
    c1 = head and _sym_in_e(n, _TWO_THREE) and (3 in pqeta or ctx.order3part == 3)
    c2 = (
        _mod_matches(q, 3, -eta)
        and _sym_in_e(m, _TWO_THREE)
        and _gl2_two_three(q, eps)
    )
    c3 = (
        n == 11
        and pi_part(q * q - 1, _TWO_THREE) == 24
        and _mod_matches(q, 3, -eta)
        and _mod_matches(q, 4, eta)
    )
    if not (c1 or c2 or c3):
        firing = _fire(
            "R6-psln",
            condition=f"no {{2,3}}-route: c1={c1}, c2={c2}, c3={c3}",
            eta=f"{eta:+d}",
            n=n,
            m=m,
            sym=_sym_in_e(n, _TWO_THREE),
            gl2=_gl2_two_three(q, eps),
            order3=ctx.order3part,
            sigma=sigma.render(),
        )
        return _no(ctx, [firing])

    cond_a = (
        head
        and _sym_in_e(n, sigma)
        and sigma <= (pqeta | fact_primes)
        and all(
            pi_part(group_order(d).order.value, PrimeSet((r,))) == _sym_part(n, r)
            for r in (sigma & fact_primes) - pqeta
        )
    )
    gl2_pi = all((q - eps) % s == 0 for s in tau) and (q - eps) % 3 == 0
    cond_b = (
        _mod_matches(q, 3, -eta)
        and _sym_in_e(m, sigma)
        and sigma <= _pi_of(q * q - 1)
        and (gl2_pi or (len(tau) == 0 and pi_part(q * q - 1, _TWO_THREE) == 24))
    )
    if cond_a or cond_b:
        firing = _fire(
            "R6-psln",
            condition="A" if cond_a else "B",
            eta=f"{eta:+d}",
            n=n,
            m=m,
            sym=_sym_in_e(n if cond_a else m, sigma),
            gl2=gl2_pi,
            order3=ctx.order3part,
            sigma=sigma.render(),
        )
        return _yes(ctx, [firing], aut_invariant=True)
    firing = _fire(
        "R6-psln",
        condition="necessity holds but neither route A nor B applies",
        eta=f"{eta:+d}",
        n=n,
        m=m,
        sym=_sym_in_e(n, sigma),
        gl2=gl2_pi,
        order3=ctx.order3part,
        sigma=sigma.render(),
    )
    return _unknown(ctx, "psln-two-three-gap", [firing])


def _r6_psp(ctx: CriteriaContext) -> Verdict:
    d, q, eps, tau = ctx.descriptor, ctx.q, ctx.eps, ctx.tau
    n = d.n
    for s in sorted(tau):
        ok, desc = _two_s_pair_ok(ctx, s)
        if not ok:
            return _two_s_failure(ctx, s, desc)
        result = _pair_three_s_classical(ctx, s)
        if result is not None and not result[0]:
            return _no(ctx, [result[1]])
    if not _sym_in_e(n, _TWO_THREE):
        firing = _fire(
            "R6-psp",
            n=n,
            q_minus_eps=q - eps,
            sym=False,
            condition="S_n must have a {2,3}-Hall subgroup",
        )
        return _no(ctx, [firing])
    if (q - eps) % 3 == 0:
        firing = _fire(
            "R6-psp",
            n=n,
            q_minus_eps=q - eps,
            sym=True,
            condition="3 divides q-eps and all pair criteria hold",
        )
        return _yes(ctx, [firing], aut_invariant=True)
    firing = _fire(
        "R6-psp",
        n=n,
        q_minus_eps=q - eps,
        sym=True,
        condition="3 does not divide q-eps; no sufficiency route",
    )
    return _unknown(ctx, "psp-two-three-gap", [firing])


def _r6_pomega(ctx: CriteriaContext) -> Verdict:
    d, q, eps, tau = ctx.descriptor, ctx.q, ctx.eps, ctx.tau
    n, m, eta = d.n, ctx.m, d.sign
    if m < 3:
        firing = _fire(
            "R6-pomega",
            condition="m>=3 is necessary",
            m=m,
            eta=f"{eta:+d}" if eta else "none",
            q_minus_eps=q - eps,
        )
        return _no(ctx, [firing])
    for s in sorted(tau):
        ok, desc = _two_s_pair_ok(ctx, s)
        if not ok:
            return _two_s_failure(ctx, s, desc)
    three_div = (q - eps) % 3 == 0
    part24 = pi_part(q * q - 1, _TWO_THREE) == 24
    eps_m = eps if m % 2 == 1 else 1
    conds = {
        "1": n % 2 == 1 and three_div and _sym_in_e(m, _TWO_THREE),
        "2": n % 2 == 0 and eta == eps_m and three_div and _sym_in_e(m, _TWO_THREE),
        "3": n % 2 == 0 and eta == -eps_m and three_div and _sym_in_e(m - 1, _TWO_THREE),
        "4": n == 11 and three_div and part24,
        "5": n == 12 and eta == -1 and three_div and part24,
    }
    hit = next((name for name, ok in conds.items() if ok), None)
    if hit is not None:
        firing = _fire(
            "R6-pomega",
            condition=f"route {hit}",
            m=m,
            eta=f"{eta:+d}" if eta else "none",
            q_minus_eps=q - eps,
        )
        return _yes(ctx, [firing], aut_invariant=True)
    firing = _fire(
        "R6-pomega",
        condition="no sufficiency route (1)-(5) applies",
        m=m,
        eta=f"{eta:+d}" if eta else "none",
        q_minus_eps=q - eps,
    )
    return _unknown(ctx, "pomega-two-three-gap", [firing])


def _r6_exceptional(ctx: CriteriaContext) -> Verdict:
    d, q, eps, sigma, tau = ctx.descriptor, ctx.q, ctx.eps, ctx.sigma, ctx.tau
    allowed = d.family in (Family.F4, Family.G2, Family.D4_TRIALITY) or (
        d.family is Family.E6 and d.sign == -eps
    )
    q_minus = q - eps
    if not allowed:
        firing = _fire(
            "R6-exceptional",
            family=d.render(),
            q_minus_eps=q_minus,
            sigma=sigma.render(),
        )
        return _no(ctx, [firing])
    if q_minus % 3 != 0:
        firing = _fire(
            "R6-exceptional",
            family=d.render(),
            q_minus_eps=q_minus,
            sigma=sigma.render(),
        )
        return _no(ctx, [firing])
    for s in sorted(tau):
        ok, desc = _two_s_pair_ok(ctx, s)
        if not ok:
            return _two_s_failure(ctx, s, desc)
    firing = _fire(
        "R6-exceptional",
        family=d.render(),
        q_minus_eps=q_minus,
        sigma=sigma.render(),
    )
    return _yes(ctx, [firing], aut_invariant=True)


# ---------------------------------------------------------------------------
# entry points


def decide_solvable_hall(d: GroupDescriptor, pi: PrimeSet) -> Verdict:
    """Three-valued decision for the existence of a solvable pi-Hall subgroup."""
    if not isinstance(pi, PrimeSet):
        pi = PrimeSet(pi)
    if len(pi) == 0:
        raise ValueError("pi must be nonempty")
    ctx = make_context(d, pi)
    sigma = ctx.sigma
    if len(sigma) <= 1:
        return _yes(ctx, [_fire("R0-sylow", sigma=sigma.render() or "empty")])
    if not _is_known_simple(d) and d.is_lie:
        firing = _fire("R-nonsimple-guard", group=d.render())
        return _unknown(ctx, "non-simple-descriptor", [firing])
    if sigma == prime_spectrum(d) and _is_known_simple(d):
        return _no(ctx, [_fire("R-full-spectrum", sigma=sigma.render())])

    family = d.family
    if family in (Family.ALT, Family.SYM):
        return _decide_alt_sym(ctx)
    if family is Family.SPORADIC:
        return _decide_sporadic(ctx)
    if ctx.p in sigma:
        return _decide_characteristic(ctx)
    if 2 not in sigma:
        return _decide_odd(ctx)
    if 3 not in sigma:
        return _decide_two_no_three(ctx)
    return _decide_two_three(ctx)


def _decide_two_three(ctx: CriteriaContext) -> Verdict:
    family = ctx.descriptor.family
    if family is Family.PSL:
        return _r6_psl2(ctx) if ctx.descriptor.n == 2 else _r6_psln(ctx)
    if family is Family.PSP:
        return _r6_psp(ctx)
    if family is Family.POMEGA:
        return _r6_pomega(ctx)
    # twisted families have p in {2,3}, which lands in the characteristic row
    return _r6_exceptional(ctx)


def decide_pair(d: GroupDescriptor, r: int, s: int) -> Verdict:
    """Verdict for the existence of an {r,s}-Hall subgroup."""
    if r == s:
        raise ValueError("pair primes must be distinct")
    return decide_solvable_hall(d, PrimeSet((r, s)))


def combine_pairwise(d: GroupDescriptor, pi: PrimeSet) -> Verdict:
    """Conjunction of decide_pair over all pairs of sigma."""
    if not isinstance(pi, PrimeSet):
        pi = PrimeSet(pi)
    ctx = make_context(d, pi)
    sigma = ctx.sigma
    if len(sigma) < 2:
        raise ValueError("combine_pairwise needs at least two primes in sigma")
    verdicts = {(r, s): decide_pair(d, r, s) for r, s in combinations(sorted(sigma), 2)}
    summary = ";".join(
        f"{{{r},{s}}}:{v.decision.value}" for (r, s), v in verdicts.items()
    )
    firings = [_fire("R-combine", pairs=summary)]
    for v in verdicts.values():
        firings.extend(v.trace)
    if any(v.decision is Decision.NO for v in verdicts.values()):
        return _no(ctx, firings)
    if all(v.decision is Decision.YES for v in verdicts.values()):
        return _yes(ctx, firings, aut_invariant=True)
    return _unknown(ctx, "pair-coverage-gap", firings)


def sym_has_pair_hall(n: int, pi: PrimeSet) -> Verdict:
    """Hall-subgroup existence in S_n for the primes of pi."""
    return decide_solvable_hall(GroupDescriptor(Family.SYM, n=n), pi)


class CriteriaContradictionError(RuntimeError):
    """Engine and pairwise reduction produced opposite decided verdicts."""

    def __init__(self, engine: Verdict, pairwise: Verdict):
        self.engine = engine
        self.pairwise = pairwise
        super().__init__(
            f"contradiction on {engine.descriptor.render()} pi={engine.pi.render()}: "
            f"engine={engine.decision.value} trace={[f.rule_id for f in engine.trace]} "
            f"pairwise={pairwise.decision.value} "
            f"trace={[f.rule_id for f in pairwise.trace]}"
        )


@dataclass(frozen=True)
class ConsistencyReport:
    descriptor: GroupDescriptor
    pi: PrimeSet
    applicable: bool
    engine: Verdict | None
    pairwise: Verdict | None
    note: str


def consistency_check(d: GroupDescriptor, pi: PrimeSet) -> ConsistencyReport:
    """Assert engine and pairwise routes agree whenever both decide."""
    if not isinstance(pi, PrimeSet):
        pi = PrimeSet(pi)
    sigma = pi & prime_spectrum(d)
    if len(sigma) < 3:
        return ConsistencyReport(d, pi, False, None, None, "sigma has fewer than 3 primes")
    engine = decide_solvable_hall(d, pi)
    pairwise = combine_pairwise(d, pi)
    decided = {engine.decision, pairwise.decision}
    if Decision.YES in decided and Decision.NO in decided:
        raise CriteriaContradictionError(engine, pairwise)
    note = f"engine={engine.decision.value}, pairwise={pairwise.decision.value}"
    return ConsistencyReport(d, pi, True, engine, pairwise, note)
