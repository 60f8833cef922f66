"""Concrete permutation models for the small groups the oracle can touch.

Supported: Alt:n / Sym:n for n <= 10, and PSL+:2:q for prime q in 5..61
acting on the projective line (points 0..q-1 are field elements, point q
is infinity). Everything else raises UnsupportedConstructionError.
"""

from __future__ import annotations

from .arith import is_prime
from .catalog import Family, GroupDescriptor
from .permgrp import PermGroup, Perm, conjugate_perm, perm_from_cycles, perm_order

MAX_SYMMETRIC_N = 10
PSL2_PRIME_RANGE = (5, 61)


class UnsupportedConstructionError(ValueError):
    """No permutation model is available for the requested group."""


def build_group(d: GroupDescriptor) -> PermGroup:
    if d.family is Family.SYM:
        if d.n > MAX_SYMMETRIC_N:
            raise UnsupportedConstructionError(f"Sym:{d.n} exceeds n={MAX_SYMMETRIC_N}")
        if d.n == 1:
            return PermGroup([], 1)
        return PermGroup(
            [
                perm_from_cycles([[0, 1]], d.n),
                perm_from_cycles([list(range(d.n))], d.n),
            ]
        )
    if d.family is Family.ALT:
        if d.n > MAX_SYMMETRIC_N:
            raise UnsupportedConstructionError(f"Alt:{d.n} exceeds n={MAX_SYMMETRIC_N}")
        cycle = list(range(d.n)) if d.n % 2 == 1 else list(range(1, d.n))
        return PermGroup(
            [perm_from_cycles([[0, 1, 2]], d.n), perm_from_cycles([cycle], d.n)]
        )
    if d.family is Family.PSL and d.sign == 1 and d.n == 2:
        q = d.q
        lo, hi = PSL2_PRIME_RANGE
        if not (is_prime(q) and lo <= q <= hi):
            raise UnsupportedConstructionError(
                f"PSL2 model needs a prime q in {lo}..{hi}, got {q}"
            )
        return _psl2(q)
    raise UnsupportedConstructionError(f"no permutation model for {d.render()}")


def _psl2(q: int) -> PermGroup:
    """PSL(2,q) on the projective line; point q plays infinity."""
    inf = q
    translate = tuple([(x + 1) % q for x in range(q)] + [inf])
    flip = [0] * (q + 1)
    flip[0] = inf
    flip[inf] = 0
    for x in range(1, q):
        flip[x] = (-pow(x, -1, q)) % q
    return PermGroup([translate, tuple(flip)])


# ---------------------------------------------------------------------------
# Sylow subgroups


def _elements_with_orders(group: PermGroup) -> list[tuple[Perm, int]]:
    cached = getattr(group, "_elements_orders", None)
    if cached is None:
        cached = [(p, perm_order(p)) for p in group.elements()]
        group._elements_orders = cached
    return cached


def _is_power_of(n: int, r: int) -> bool:
    while n % r == 0:
        n //= r
    return n == 1


def sylow_subgroup(group: PermGroup, r: int) -> PermGroup:
    """A Sylow r-subgroup, grown by normalizer ascent from a cyclic seed."""
    cache = getattr(group, "_sylow_cache", None)
    if cache is None:
        cache = group._sylow_cache = {}
    if r in cache:
        return cache[r]

    target = 1
    rest = group.order
    while rest % r == 0:
        rest //= r
        target *= r
    if target == 1:
        result = PermGroup([], group.degree)
        cache[r] = result
        return result

    seed = max(
        (p for p, o in _elements_with_orders(group) if o > 1 and _is_power_of(o, r)),
        key=perm_order,
    )
    sub = PermGroup([seed], group.degree)
    while sub.order < target:
        normalizer = _normalizer(group, sub)
        for x in normalizer.elements():
            o = perm_order(x)
            if o > 1 and _is_power_of(o, r) and x not in sub:
                grown = PermGroup(list(sub.gens) + [x], group.degree)
                if _is_power_of(grown.order, r) and grown.order > sub.order:
                    sub = grown
                    break
        else:
            raise RuntimeError(f"normalizer ascent stalled at order {sub.order}")
    cache[r] = sub
    return sub


def _normalizer(group: PermGroup, sub: PermGroup) -> PermGroup:
    norm = [
        g
        for g, _ in _elements_with_orders(group)
        if all(conjugate_perm(h, g) in sub for h in sub.gens)
    ]
    return PermGroup(norm, group.degree)


def sylow_conjugates(group: PermGroup, sub: PermGroup) -> list[tuple[Perm, ...]]:
    """Generator tuples for every conjugate of sub, via orbit BFS.

    Deduplication keys on the full element set, so the count is the exact
    number of distinct conjugate subgroups.
    """
    base = sub.elements()
    first = frozenset(base)
    seen = {first}
    out = [tuple(sub.gens)]
    queue = [(base, tuple(sub.gens))]
    while queue:
        elems, gens = queue.pop()
        for s in group.gens:
            new_elems = [conjugate_perm(p, s) for p in elems]
            key = frozenset(new_elems)
            if key not in seen:
                seen.add(key)
                new_gens = tuple(conjugate_perm(p, s) for p in gens)
                out.append(new_gens)
                queue.append((new_elems, new_gens))
    return out
