"""Shared fixtures and independent brute-force oracles.

The oracles here deliberately avoid the package's own algorithms:
closures iterate all pairwise products to a fixed point, and commutator
subgroups enumerate every commutator pair, so they stay independent of
the generator-based implementations they check.
"""

from __future__ import annotations

import pytest

from lienilp.catalog import Catalog
from lienilp.groups import FiniteGroup, commutator


def brute_closure(g: FiniteGroup, seed) -> frozenset[int]:
    """Fixed point of taking all pairwise products, starting from the
    seed plus the identity."""
    current = frozenset(seed) | {0}
    while True:
        nxt = current | {g.multiply(x, y) for x in current for y in current}
        if nxt == current:
            return current
        current = nxt


def brute_commutator_subgroup(g: FiniteGroup, h_members) -> frozenset[int]:
    """Closure of every commutator (x, y) with x in h, y anywhere."""
    comms = {commutator(g, x, y)
             for x in h_members for y in range(g.order)}
    return brute_closure(g, comms)


def brute_lower_central(g: FiniteGroup) -> list[frozenset[int]]:
    series = [frozenset(range(g.order))]
    while True:
        nxt = brute_commutator_subgroup(g, series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)
        if len(nxt) == 1:
            return series


@pytest.fixture(scope="session")
def catalog() -> Catalog:
    return Catalog.load()


@pytest.fixture(scope="session")
def built(catalog):
    def _build(name: str) -> FiniteGroup:
        return catalog.build(name)
    return _build
