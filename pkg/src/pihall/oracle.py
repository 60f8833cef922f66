"""Brute-force Hall-subgroup oracle for explicit permutation groups.

A pi-Hall subgroup contains a full Sylow r-subgroup of G for every prime r
in sigma = pi intersected with pi(G), so it equals the closure of one Sylow
per prime in suitable relative position. ``hall_search`` fixes the Sylow
subgroup with the most conjugates (removing the largest factor from the
tuple space), enumerates tuples of conjugates of the rest, and computes
incremental closures with sound pruning. Found returns the first witness;
Exhausted is produced only after complete enumeration and certifies
non-existence. A time budget expiring is a third outcome, raised as
InconclusiveError — never misreported as Exhausted.

Pruning never changes verdicts: a partial closure K can lie inside an
order-m Hall subgroup only if |K| divides m, every K-orbit length divides m,
and every element order in K divides m. Exact orders come from the kernel's
stabilizer chain; there is no probabilistic estimation anywhere.
"""

from __future__ import annotations

import math
import multiprocessing
import os
import time
from dataclasses import dataclass
from enum import Enum

from .arith import PrimeSet, pi_part
from .constructions import sylow_conjugates, sylow_subgroup
from .permgrp import Perm, PermGroup, closure, compose, conjugate_perm, perm_order

DEFAULT_MAX_TUPLES = 2_000_000


class CertKind(Enum):
    FOUND = "Found"
    EXHAUSTED = "Exhausted"


class InconclusiveError(RuntimeError):
    """The time budget expired before the search could decide."""

    def __init__(self, message: str, examined: int = 0, pruned: int = 0):
        super().__init__(message)
        self.examined = examined
        self.pruned = pruned


class EnumerationCapError(RuntimeError):
    """The tuple space exceeds the configured enumeration cap."""


class CertificateError(AssertionError):
    """A certificate failed its soundness re-check."""


@dataclass(frozen=True)
class HallCertificate:
    kind: CertKind
    pi: PrimeSet
    target_order: int
    witness_generators: tuple[Perm, ...] | None
    witness_order: int
    solvable: bool | None
    tuples_examined: int
    pruned: int

    def __post_init__(self):
        if self.kind is CertKind.FOUND:
            if self.witness_generators is None or self.solvable is None:
                raise ValueError("Found certificates need a witness and a solvable flag")
            if self.witness_order != self.target_order:
                raise ValueError("witness order must equal the target Hall order")
        else:
            if self.witness_generators is not None or self.solvable is not None:
                raise ValueError("Exhausted certificates carry no witness")
            if self.witness_order != 0:
                raise ValueError("Exhausted certificates have witness_order 0")


def verify_certificate(g: PermGroup, cert: HallCertificate) -> None:
    """Re-check a Found certificate's defining properties against g."""
    if cert.kind is not CertKind.FOUND:
        return
    h = PermGroup(cert.witness_generators, g.degree)
    if h.order != cert.witness_order:
        raise CertificateError("witness generators do not generate the claimed order")
    if pi_part(h.order, cert.pi) != h.order:
        raise CertificateError("witness order is not a pi-number")
    index = g.order // h.order
    if g.order % h.order or pi_part(index, cert.pi) != 1:
        raise CertificateError("witness index is not a pi'-number")
    for r in cert.pi:
        if g.order % r == 0:
            full = pi_part(g.order, PrimeSet((r,)))
            if sylow_subgroup(h, r).order != full:
                raise CertificateError(f"witness Sylow {r}-subgroup is not full")
    if h.is_solvable != cert.solvable:
        raise CertificateError("solvable flag does not match the derived series")


# ---------------------------------------------------------------------------
# search internals


@dataclass(frozen=True)
class _ClosureInfo:
    """Target-independent facts about one closure, memoized per prefix."""

    order: int
    orbit_sizes: tuple[int, ...]
    word_orders: tuple[int, ...]
    gens: tuple[Perm, ...]


def _orbit_sizes(gens, degree: int) -> tuple[int, ...]:
    seen = [False] * degree
    sizes = []
    for start in range(degree):
        if seen[start]:
            continue
        queue, seen[start] = [start], True
        for x in queue:
            for g in gens:
                y = g[x]
                if not seen[y]:
                    seen[y] = True
                    queue.append(y)
        sizes.append(len(queue))
    return tuple(sizes)


def _word_orders(old_gens, new_gens) -> tuple[int, ...]:
    # a few deterministic cross products; their orders must divide any
    # overgroup order, which makes them cheap Hall-target filters
    words = []
    for a in old_gens[:3]:
        for b in new_gens[:2]:
            words.append(compose(a, b))
    if old_gens and new_gens:
        words.append(compose(old_gens[-1], new_gens[-1]))
    return tuple(perm_order(w) for w in words[:7])


class _SearchState:
    """Per-group memo shared by every sigma-subset search on that group."""

    def __init__(self):
        self.closures: dict[frozenset, _ClosureInfo] = {}
        self.conjugates: dict[int, list[tuple[Perm, ...]]] = {}


def _state_of(g: PermGroup) -> _SearchState:
    state = getattr(g, "_search_state", None)
    if state is None:
        state = _SearchState()
        g._search_state = state
    return state


def _conjugate_lists(g: PermGroup, sigma) -> dict[int, list[tuple[Perm, ...]]]:
    state = _state_of(g)
    for r in sigma:
        if r not in state.conjugates:
            state.conjugates[r] = sylow_conjugates(g, sylow_subgroup(g, r))
    return {r: state.conjugates[r] for r in sigma}


class _Deadline:
    def __init__(self, budget_ms, at=None):
        if at is not None:
            self.at = at
        else:
            self.at = None if budget_ms is None else time.monotonic() + budget_ms / 1000.0

    def check(self, examined, pruned):
        if self.at is not None and time.monotonic() > self.at:
            raise InconclusiveError(
                "time budget exhausted before the search could decide",
                examined,
                pruned,
            )


def _closure_info(state, degree, base_gens, base_key, new_gens) -> _ClosureInfo:
    key = base_key | frozenset(new_gens)
    info = state.closures.get(key)
    if info is None:
        gens = tuple(base_gens) + tuple(p for p in new_gens if p not in base_gens)
        group = closure(gens, degree)
        info = _ClosureInfo(
            group.order,
            _orbit_sizes(gens, degree),
            _word_orders(base_gens, new_gens),
            group.gens if group.gens else gens,
        )
        state.closures[key] = info
    return info


class _Tally:
    __slots__ = ("examined", "pruned", "nonsolvable")

    def __init__(self):
        self.examined = 0
        self.pruned = 0
        self.nonsolvable: tuple[Perm, ...] | None = None


def _search_range(
    g,
    m,
    fixed_gens,
    rest_lists,
    want_solvable,
    deadline,
    tally,
    level0_range=None,
):
    """DFS over conjugate tuples; returns a witness generator tuple or None.

    ``tally`` collects leaf visits (examined) and subtree eliminations
    (pruned); in want_solvable mode a non-solvable Hall witness is recorded
    and the scan continues looking for a solvable one.
    """
    state = _state_of(g)
    degree = g.degree
    depth = len(rest_lists)
    suffix = [1] * (depth + 1)
    for i in range(depth - 1, -1, -1):
        suffix[i] = suffix[i + 1] * len(rest_lists[i])

    base_key = frozenset(fixed_gens)

    def descend(base_gens, base_key, level):
        choices = rest_lists[level]
        indices = level0_range if level == 0 and level0_range is not None else range(
            len(choices)
        )
        below = suffix[level + 1]
        for idx in indices:
            new_gens = choices[idx]
            deadline.check(tally.examined, tally.pruned)
            info = _closure_info(state, degree, base_gens, base_key, new_gens)
            at_leaf = level == depth - 1
            acceptable = (
                all(m % o == 0 for o in info.orbit_sizes)
                and all(m % w == 0 for w in info.word_orders)
                and m % info.order == 0
            )
            if at_leaf:
                tally.examined += 1
                if not acceptable:
                    continue
                # a leaf closure contains full Sylows for every prime of
                # sigma, so its order is a multiple of m; dividing m too
                # forces equality
                witness = info.gens
                if not want_solvable:
                    return witness
                if PermGroup(witness, degree).is_solvable:
                    return witness
                tally.nonsolvable = witness
                continue
            if not acceptable:
                tally.pruned += below
                continue
            if info.order == m:
                # the prefix already closed to a Hall subgroup; extensions
                # can only repeat it or overshoot m
                tally.pruned += below
                witness = info.gens
                if not want_solvable:
                    return witness
                if PermGroup(witness, degree).is_solvable:
                    return witness
                tally.nonsolvable = witness
                continue
            found = descend(
                info.gens, base_key | frozenset(new_gens), level + 1
            )
            if found is not None:
                return found
        return None

    if depth == 0:
        tally.examined += 1
        group = PermGroup(fixed_gens, degree)
        if group.order != m:
            return None
        if want_solvable and not group.is_solvable:
            tally.nonsolvable = tuple(group.gens)
            return None
        return tuple(group.gens) if group.gens else tuple(fixed_gens)
    return descend(tuple(fixed_gens), base_key, 0)


# ---------------------------------------------------------------------------
# parallel driver

_WORKER = {}


def _init_worker(payload):
    _WORKER.update(payload)


def _run_chunk(bounds):
    start, stop = bounds
    tally = _Tally()
    try:
        witness = _search_range(
            _WORKER["group"],
            _WORKER["m"],
            _WORKER["fixed_gens"],
            _WORKER["rest_lists"],
            _WORKER["want_solvable"],
            _Deadline(None, at=_WORKER["deadline_at"]),
            tally,
            level0_range=range(start, stop),
        )
    except InconclusiveError as err:
        return ("inconclusive", None, err.examined, err.pruned, tally.nonsolvable)
    return ("done", witness, tally.examined, tally.pruned, tally.nonsolvable)


def _parallel_search(g, m, fixed_gens, rest_lists, want_solvable, budget_ms, threads):
    total0 = len(rest_lists[0])
    chunks = max(1, min(total0, threads * 4))
    step = -(-total0 // chunks)
    bounds = [(i, min(i + step, total0)) for i in range(0, total0, step)]
    deadline_at = None if budget_ms is None else time.monotonic() + budget_ms / 1000.0
    payload = {
        "group": g,
        "m": m,
        "fixed_gens": fixed_gens,
        "rest_lists": rest_lists,
        "want_solvable": want_solvable,
        "deadline_at": deadline_at,
    }
    ctx = multiprocessing.get_context("fork")
    examined = pruned = 0
    witness = nonsolvable = None
    inconclusive = False
    # Pool.__exit__ terminates outstanding workers after an early break
    with ctx.Pool(threads, initializer=_init_worker, initargs=(payload,)) as pool:
        for status, found, ex, pr, nonsolv in pool.imap_unordered(_run_chunk, bounds):
            examined += ex
            pruned += pr
            if nonsolv is not None and nonsolvable is None:
                nonsolvable = nonsolv
            if status == "inconclusive":
                inconclusive = True
            elif found is not None:
                witness = found
                break
    return witness, nonsolvable, examined, pruned, inconclusive


# ---------------------------------------------------------------------------
# public operations


def hall_search(
    g: PermGroup,
    pi: PrimeSet,
    *,
    want_solvable: bool = False,
    budget_ms: int | None = None,
    threads: int = 1,
    max_tuples: int | None = None,
    fix_prime: int | None = None,
) -> HallCertificate:
    """Search for a pi-Hall subgroup of g; certify non-existence by exhaustion.

    With want_solvable the enumeration drains past non-solvable witnesses
    until a solvable one appears; the resulting Found certificate then has
    solvable=False only when every Hall subgroup was seen and none was
    solvable.
    """
    if not isinstance(pi, PrimeSet):
        pi = PrimeSet(pi)
    sigma = PrimeSet(r for r in pi if g.order % r == 0)
    if len(sigma) == 0:
        raise ValueError("sigma = pi intersect pi(G) must be nonempty")
    m = pi_part(g.order, sigma)

    if m == g.order:
        # the only subgroup of full pi-order is g itself
        witness = tuple(g.gens)
        return HallCertificate(
            CertKind.FOUND, pi, m, witness, m, g.is_solvable, 1, 0
        )

    lists = _conjugate_lists(g, sigma)
    fixed = (
        fix_prime
        if fix_prime is not None
        else max(sorted(sigma), key=lambda r: len(lists[r]))
    )
    if fixed not in sigma:
        raise ValueError(f"fix_prime {fixed} is not in sigma")
    rest = [r for r in sorted(sigma) if r != fixed]
    rest_lists = [lists[r] for r in rest]
    space = math.prod(len(l) for l in rest_lists)
    cap = DEFAULT_MAX_TUPLES if max_tuples is None else max_tuples
    if space > cap:
        raise EnumerationCapError(
            f"tuple space {space} exceeds the enumeration cap {cap}"
        )
    fixed_gens = tuple(sylow_subgroup(g, fixed).gens)

    if threads == 0:
        threads = os.cpu_count() or 1
    if threads > 1 and rest_lists:
        witness, nonsolvable, examined, pruned, inconclusive = _parallel_search(
            g, m, fixed_gens, rest_lists, want_solvable, budget_ms, threads
        )
        if witness is None and inconclusive:
            raise InconclusiveError(
                "time budget exhausted before the search could decide",
                examined,
                pruned,
            )
    else:
        tally = _Tally()
        witness = _search_range(
            g, m, fixed_gens, rest_lists, want_solvable, _Deadline(budget_ms), tally
        )
        nonsolvable, examined, pruned = tally.nonsolvable, tally.examined, tally.pruned

    if witness is not None:
        solvable = True if want_solvable else PermGroup(witness, g.degree).is_solvable
        return HallCertificate(
            CertKind.FOUND, pi, m, tuple(witness), m, solvable, examined, pruned
        )
    if want_solvable and nonsolvable is not None:
        return HallCertificate(
            CertKind.FOUND, pi, m, tuple(nonsolvable), m, False, examined, pruned
        )
    return HallCertificate(
        CertKind.EXHAUSTED, pi, m, None, 0, None, examined, pruned
    )


def solvable_hall_exists(
    g: PermGroup,
    pi: PrimeSet,
    *,
    budget_ms: int | None = None,
    threads: int = 1,
    max_tuples: int | None = None,
) -> tuple[bool, HallCertificate]:
    """Whether g has a solvable pi-Hall subgroup, with certificate evidence."""
    cert = hall_search(
        g,
        pi,
        want_solvable=True,
        budget_ms=budget_ms,
        threads=threads,
        max_tuples=max_tuples,
    )
    return (cert.kind is CertKind.FOUND and bool(cert.solvable), cert)


@dataclass(frozen=True)
class Theorem1Report:
    pi: PrimeSet
    sigma: PrimeSet
    solvable_exists: bool
    evidence: HallCertificate
    pair_kinds: tuple[tuple[tuple[int, int], CertKind], ...]

    @property
    def pairs_all_found(self) -> bool:
        return all(kind is CertKind.FOUND for _, kind in self.pair_kinds)

    @property
    def holds(self) -> bool:
        return self.solvable_exists == self.pairs_all_found


class Theorem1ViolationError(RuntimeError):
    """The two-prime biconditional failed on a concrete group.

    This would indicate a defect in the search kernel or the certificate
    bookkeeping, so it is surfaced loudly instead of being folded into a
    report field.
    """

    def __init__(self, report: Theorem1Report):
        self.report = report
        sides = ", ".join(
            f"{{{r},{s}}}:{kind.value}" for (r, s), kind in report.pair_kinds
        )
        super().__init__(
            f"biconditional violated for pi={report.pi.render()}: "
            f"solvable_exists={report.solvable_exists} but pairs [{sides}]"
        )


def theorem1_check(
    g: PermGroup,
    pi: PrimeSet,
    *,
    budget_ms: int | None = None,
    threads: int = 1,
    max_tuples: int | None = None,
) -> Theorem1Report:
    """Check 'solvable pi-Hall exists iff every pair has a Hall subgroup'."""
    if not isinstance(pi, PrimeSet):
        pi = PrimeSet(pi)
    sigma = PrimeSet(r for r in pi if g.order % r == 0)
    if len(sigma) < 2:
        raise ValueError("the biconditional needs at least two primes in sigma")
    kwargs = {"budget_ms": budget_ms, "threads": threads, "max_tuples": max_tuples}
    exists, evidence = solvable_hall_exists(g, pi, **kwargs)
    pairs = []
    primes = sorted(sigma)
    for i, r in enumerate(primes):
        for s in primes[i + 1 :]:
            cert = hall_search(g, PrimeSet((r, s)), **kwargs)
            pairs.append(((r, s), cert.kind))
    report = Theorem1Report(pi, sigma, exists, evidence, tuple(pairs))
    if not report.holds:
        raise Theorem1ViolationError(report)
    return report


def conjugacy_scan(g: PermGroup, h1: PermGroup, h2: PermGroup) -> bool:
    """Whether some element of g conjugates h1 onto h2."""
    if h1.order != h2.order:
        raise ValueError("conjugacy scan requires equal orders")
    target = frozenset(h2.elements())
    elems1 = h1.elements()
    if frozenset(elems1) == target:
        return True
    for x in g.elements():
        image = frozenset(conjugate_perm(e, x) for e in elems1)
        if image == target:
            return True
    return False
