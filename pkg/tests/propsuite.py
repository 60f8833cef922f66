"""Shared generators for the randomized property suites.

Each suite draws from a fixed-seed RNG so failures reproduce exactly.
Groups are built once per pool entry; the oracle's closure memo then
makes repeated searches on the same instance cheap.
"""

from pihall.catalog import parse_descriptor
from pihall.constructions import build_group
from pihall.permgrp import PermGroup

CONSTRUCTIBLE = tuple(
    [f"Sym:{n}" for n in range(2, 11)]
    + [f"Alt:{n}" for n in range(3, 11)]
    + [f"PSL+:2:{q}" for q in (5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61)]
)

# Small enough that element enumeration and subgroup closures stay cheap.
SEARCH_POOL = (
    "Sym:3", "Sym:4", "Sym:5", "Sym:6",
    "Alt:4", "Alt:5", "Alt:6",
    "PSL+:2:5", "PSL+:2:7", "PSL+:2:11",
)

_cache = {}


def group_for(text):
    if text not in _cache:
        d = parse_descriptor(text)
        _cache[text] = (d, build_group(d))
    return _cache[text]


def random_subgroup(g, rng, max_gens=3):
    """Closure of a few random elements; biased toward proper subgroups."""
    k = rng.randint(1, max_gens)
    gens = [g.random_element(rng) for _ in range(k)]
    return PermGroup(gens, g.degree)
