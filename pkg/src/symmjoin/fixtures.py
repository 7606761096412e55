"""Named instances and seeded generators of balanced families."""

from __future__ import annotations

import itertools
import random
from math import comb

from .complexes import (
    Complex,
    alexander_dual,
    balanced_from_missing,
    from_facets,
    rp2_minimal,
    skeleton,
    subsets_of_size,
)
from .joins import Family, JoinCell

SEED = 20181


def point_pair() -> Complex:
    """Two isolated vertices on m = 2."""
    return from_facets(2, [[1], [2]])


def tiny_family() -> Family:
    return Family((point_pair(), point_pair()))


def example_K1() -> Complex:
    """All 2-subsets and all 3-subsets of [9] except {7, 8, 9}."""
    return balanced_from_missing(9, 2, [[7, 8, 9]])


def example_K2() -> Complex:
    """All 2-subsets of [9] plus the triangles of the six-vertex RP^2."""
    pairs = [list(p) for p in itertools.combinations(range(1, 10), 2)]
    return from_facets(9, pairs + [list(f) for f in rp2_minimal().facets()])


def example_family_K() -> Family:
    K2 = example_K2()
    return Family((example_K1(), K2, K2))


def example_family_L() -> Family:
    return Family((skeleton(9, 3), skeleton(9, 2), skeleton(9, 2)))


def example_cell() -> JoinCell:
    """The cell (789, 34, 12; 56)."""
    return JoinCell.make(9, [[7, 8, 9], [3, 4], [1, 2]], [5, 6])


FAMILIES = {
    "tiny-m2r2": tiny_family,
    "example-3-2-K": example_family_K,
    "example-3-2-L": example_family_L,
}

COMPLEXES = {
    "rp2": rp2_minimal,
    "point-pair": point_pair,
    "example-3-2-K1": example_K1,
    "example-3-2-K2": example_K2,
}


def random_missing(m: int, k: int, rng: random.Random) -> list[int]:
    """A random set of missing (k+1)-subsets; its size is drawn uniformly first."""
    pool = list(subsets_of_size(m, k + 1))
    t = rng.randint(0, len(pool))
    return rng.sample(pool, t)


def random_balanced(m: int, k: int, rng: random.Random) -> Complex:
    return balanced_from_missing(m, k, random_missing(m, k, rng))


def bier_pair(K: Complex) -> Family:
    return Family((K, alexander_dual(K)))


def balanced_families(m: int, k: int, r: int, cap: int, rng: random.Random):
    """Balanced r-tuples on (m, k): all of them when there are at most ``cap``,
    otherwise ``cap`` seeded random draws."""
    pool = list(subsets_of_size(m, k + 1))
    n = len(pool)
    total = 2 ** (n * r)
    if total <= cap:
        for bits in range(total):
            comps = []
            for i in range(r):
                chunk = (bits >> (i * n)) & ((1 << n) - 1)
                comps.append(balanced_from_missing(m, k, [pool[b] for b in range(n) if chunk >> b & 1]))
            yield Family(tuple(comps))
        return
    for _ in range(cap):
        yield Family(tuple(random_balanced(m, k, rng) for _ in range(r)))


def n_balanced_choices(m: int, k: int) -> int:
    return comb(m, k + 1)

