"""Permutation-group kernel: BSGS via deterministic Schreier-Sims.

Permutations are tuples of images on 0..n-1, composed left-to-right:
``compose(p, q)`` applies p first. The chain is built eagerly at
construction and every query (order, membership, enumeration) runs off it.

Degrees are capped at DEGREE_CAP and full element enumeration at ENUM_CAP;
both are module constants so callers with bigger budgets can raise them.
"""

from __future__ import annotations

import math
from collections import Counter

Perm = tuple[int, ...]

DEGREE_CAP = 128
ENUM_CAP = 200_000


def identity(degree: int) -> Perm:
    return tuple(range(degree))


def compose(p: Perm, q: Perm) -> Perm:
    """Apply p, then q."""
    return tuple(map(q.__getitem__, p))


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def conjugate_perm(p: Perm, g: Perm) -> Perm:
    """g^-1 p g."""
    return compose(compose(inverse(g), p), g)


def commutator(p: Perm, q: Perm) -> Perm:
    """p^-1 q^-1 p q."""
    return compose(compose(compose(inverse(p), inverse(q)), p), q)


def perm_order(p: Perm) -> int:
    order = 1
    seen = [False] * len(p)
    for start in range(len(p)):
        if seen[start]:
            continue
        length, x = 0, start
        while not seen[x]:
            seen[x] = True
            length += 1
            x = p[x]
        order = math.lcm(order, length)
    return order


def moved_points(p: Perm) -> list[int]:
    return [i for i, j in enumerate(p) if i != j]


def perm_from_cycles(cycles, degree: int) -> Perm:
    images = list(range(degree))
    touched = set()
    for cycle in cycles:
        for x in cycle:
            if not 0 <= x < degree:
                raise ValueError(f"point {x} outside degree {degree}")
            if x in touched:
                raise ValueError(f"point {x} repeated across cycles")
            touched.add(x)
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            images[a] = b
    return tuple(images)


def format_cycles(p: Perm) -> str:
    seen = [False] * len(p)
    parts = []
    for start in range(len(p)):
        if seen[start] or p[start] == start:
            seen[start] = True
            continue
        cycle, x = [], start
        while not seen[x]:
            seen[x] = True
            cycle.append(x)
            x = p[x]
        parts.append("(" + " ".join(map(str, cycle)) + ")")
    return "".join(parts) or "()"


def parse_cycles(text: str, degree: int) -> Perm:
    text = text.strip()
    if text in ("()", ""):
        return identity(degree)
    if not (text.startswith("(") and text.endswith(")")):
        raise ValueError(f"bad cycle notation {text!r}")
    cycles = []
    for chunk in text[1:-1].split(")("):
        points = chunk.replace(",", " ").split()
        cycles.append([int(x) for x in points])
    return perm_from_cycles(cycles, degree)


class _Level:
    __slots__ = ("point", "gens", "transversal", "inv_transversal")

    def __init__(self, point: int):
        self.point = point
        self.gens: list[Perm] = []
        self.transversal: dict[int, Perm] = {}
        self.inv_transversal: dict[int, Perm] = {}


def _first_moved(p: Perm) -> int:
    for i, j in enumerate(p):
        if i != j:
            return i
    raise ValueError("identity has no moved point")


class PermGroup:
    """Finite permutation group with an eagerly built stabilizer chain."""

    def __init__(self, gens, degree: int | None = None):
        gens = [tuple(g) for g in gens]
        if degree is None:
            if not gens:
                raise ValueError("degree required for an empty generating set")
            degree = len(gens[0])
        if degree > DEGREE_CAP:
            raise ValueError(f"degree {degree} exceeds DEGREE_CAP={DEGREE_CAP}")
        for g in gens:
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise ValueError(f"not a permutation of degree {degree}: {g!r}")
        self.degree = degree
        ident = identity(degree)
        seen: set[Perm] = set()
        self.gens: tuple[Perm, ...] = tuple(
            g for g in gens if g != ident and not (g in seen or seen.add(g))
        )
        self._levels: list[_Level] = []
        self._build_chain()
        self._order = math.prod(len(l.transversal) for l in self._levels)

    # -- chain construction ------------------------------------------------

    def _new_level(self, point: int):
        self._levels.append(_Level(point))

    def _compute_transversal(self, level: _Level):
        ident = identity(self.degree)
        level.transversal = {level.point: ident}
        level.inv_transversal = {level.point: ident}
        queue = [level.point]
        for x in queue:
            u = level.transversal[x]
            for s in level.gens:
                y = s[x]
                if y not in level.transversal:
                    rep = compose(u, s)
                    level.transversal[y] = rep
                    level.inv_transversal[y] = inverse(rep)
                    queue.append(y)

    def _strip(self, p: Perm, start: int) -> tuple[Perm, int]:
        for j in range(start, len(self._levels)):
            level = self._levels[j]
            a = p[level.point]
            if a not in level.transversal:
                return p, j
            p = compose(p, level.inv_transversal[a])
        return p, len(self._levels)

    def _build_chain(self):
        ident = identity(self.degree)
        for g in self.gens:
            if all(g[l.point] == l.point for l in self._levels):
                self._new_level(_first_moved(g))
        for g in self.gens:
            for level in self._levels:
                level.gens.append(g)
                if g[level.point] != level.point:
                    break
        for level in self._levels:
            self._compute_transversal(level)

        i = len(self._levels) - 1
        while i >= 0:
            level = self._levels[i]
            self._compute_transversal(level)
            changed = False
            for pt, u in list(level.transversal.items()):
                for s in level.gens:
                    schreier = compose(compose(u, s), level.inv_transversal[s[pt]])
                    if schreier == ident:
                        continue
                    residue, stuck = self._strip(schreier, i + 1)
                    if residue == ident:
                        continue
                    if stuck == len(self._levels):
                        self._new_level(_first_moved(residue))
                        self._compute_transversal(self._levels[-1])
                    for j in range(i + 1, stuck + 1):
                        self._levels[j].gens.append(residue)
                    i = stuck
                    changed = True
                    break
                if changed:
                    break
            if not changed:
                i -= 1

    # -- queries -----------------------------------------------------------

    @property
    def order(self) -> int:
        return self._order

    def __contains__(self, p) -> bool:
        p = tuple(p)
        if len(p) != self.degree:
            return False
        residue, stuck = self._strip(p, 0)
        return stuck == len(self._levels) and residue == identity(self.degree)

    def base(self) -> tuple[int, ...]:
        return tuple(l.point for l in self._levels)

    def elements(self, cap: int = ENUM_CAP) -> list[Perm]:
        """All elements, in a deterministic order. Raises if order > cap."""
        if self._order > cap:
            raise ValueError(f"order {self._order} exceeds enumeration cap {cap}")
        elems = [identity(self.degree)]
        for level in reversed(self._levels):
            reps = list(level.transversal.values())
            elems = [compose(x, u) for x in elems for u in reps]
        return elems

    def element_order_counts(self, cap: int = ENUM_CAP) -> Counter:
        """Multiset of element orders; memoized on the instance."""
        cached = getattr(self, "_order_counts", None)
        if cached is None:
            cached = Counter(perm_order(p) for p in self.elements(cap))
            self._order_counts = cached
        return cached

    def random_element(self, rng) -> Perm:
        p = identity(self.degree)
        for level in self._levels:
            reps = list(level.transversal.values())
            p = compose(p, reps[rng.randrange(len(reps))])
        return p

    def conjugated(self, g: Perm) -> "PermGroup":
        return PermGroup([conjugate_perm(s, g) for s in self.gens], self.degree)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(g in other for g in self.gens)

    # -- derived series ----------------------------------------------------

    def normal_closure(self, seeds) -> "PermGroup":
        """Smallest normal subgroup of self containing the seed elements."""
        ident = identity(self.degree)
        gens = [tuple(s) for s in seeds if tuple(s) != ident]
        group = PermGroup(gens, self.degree)
        queue = list(group.gens)
        while queue:
            h = queue.pop()
            for s in self.gens:
                c = conjugate_perm(h, s)
                if c not in group:
                    gens.append(c)
                    group = PermGroup(gens, self.degree)
                    queue.append(c)
        return group

    def derived_subgroup(self) -> "PermGroup":
        comms = [commutator(s, t) for s in self.gens for t in self.gens]
        return self.normal_closure(comms)

    def derived_series(self, max_steps: int = 64) -> list["PermGroup"]:
        series = [self]
        while series[-1].order > 1 and len(series) <= max_steps:
            nxt = series[-1].derived_subgroup()
            if nxt.order == series[-1].order:
                break
            series.append(nxt)
        return series

    @property
    def is_solvable(self) -> bool:
        return self.derived_series()[-1].order == 1

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self._order})"


def closure(gens, degree: int | None = None) -> PermGroup:
    return PermGroup(gens, degree)


def normalizer_scan(group: PermGroup, sub: PermGroup, cap: int = ENUM_CAP) -> PermGroup:
    """Normalizer of sub in group by full element scan; needs order <= cap."""
    norm = [
        g
        for g in group.elements(cap)
        if all(conjugate_perm(h, g) in sub for h in sub.gens)
    ]
    return PermGroup(norm, group.degree)
