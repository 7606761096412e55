"""Collective r-unavoidability: exhaustive search and the Kneser-graph test.

A family ``(K_1, ..., K_r)`` on [m] is collectively unavoidable when every
ordered tuple of pairwise disjoint subsets has some ``A_i ∈ K_i``.  Because
complexes are downward closed it is enough to look at partitions of [m]
into ``r`` (possibly empty) blocks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import NamedTuple

from . import kernels
from .complexes import (
    ParameterError,
    balance_levels,
    is_balanced,
    members,
    missing_sets,
    skeleton,
)
from .joins import Family

BRUTE = "brute"
DEFICIENCY = "deficiency"
CLIQUE = "clique"


@dataclass
class Certificate:
    verdict: bool
    method: str
    witness: object = None  # partition (list of vertex tuples) or clique (list of (part, set))

    def to_json(self) -> dict:
        if self.witness is None:
            witness = None
        elif self.method == CLIQUE:
            witness = [{"part": i + 1, "set": list(s)} for i, s in self.witness]
        else:
            witness = [list(b) for b in self.witness]
        return {"verdict": self.verdict, "method": self.method, "witness": witness}


def is_collectively_unavoidable_bruteforce(fam: Family) -> Certificate:
    """Search all r**m block assignments for one with A_i ∉ K_i for every i."""
    labels = kernels.bruteforce_witness(fam.m, fam.r, fam.tables)
    if labels is None:
        return Certificate(True, BRUTE)
    blocks = [tuple(v + 1 for v in range(fam.m) if labels[v] == i) for i in range(fam.r)]
    return Certificate(False, BRUTE, blocks)


def witness_is_sound(fam: Family, blocks) -> bool:
    """Blocks are pairwise disjoint and A_i ∉ K_i for every i."""
    seen: set = set()
    for b in blocks:
        if seen & set(b):
            return False
        seen |= set(b)
    return all(tuple(b) not in K for b, K in zip(blocks, fam.complexes))


@dataclass
class KneserGraph:
    """r-partite graph on missing (k+1)-sets; adjacency is disjointness across parts."""

    parts: list  # parts[i] = sorted list of masks missing from K_{i+1}
    k: int

    @property
    def r(self) -> int:
        return len(self.parts)

    def vertices(self) -> list[tuple[int, int]]:
        """Labels (i, j), both 1-based."""
        return [(i + 1, j + 1) for i, part in enumerate(self.parts) for j in range(len(part))]

    def edges(self) -> set[frozenset]:
        out = set()
        for i, pi in enumerate(self.parts):
            for i2 in range(i + 1, len(self.parts)):
                for j, a in enumerate(pi):
                    for j2, b in enumerate(self.parts[i2]):
                        if not a & b:
                            out.add(frozenset({(i + 1, j + 1), (i2 + 1, j2 + 1)}))
        return out

    def label_set(self, label: tuple[int, int]) -> tuple[int, ...]:
        i, j = label
        return members(self.parts[i - 1][j - 1])


def build_kneser_graph(fam: Family, k: int) -> KneserGraph:
    for i, K in enumerate(fam.complexes):
        if not is_balanced(K, k):
            raise ParameterError(f"complex {i + 1} is not ({fam.m}, {k})-balanced")
    return KneserGraph([missing_sets(K, k + 1) for K in fam.complexes], k)


def has_d_clique(G: KneserGraph, d: int):
    """Pairwise-disjoint missing sets from ``d`` distinct parts.

    Returns the clique as ``[(part_index, vertex_tuple), ...]`` (0-based part
    index) or ``None``.  Parts are tried smallest first.
    """
    if d < 1:
        raise ParameterError("clique size must be at least 1")
    order = sorted((i for i in range(G.r) if G.parts[i]), key=lambda i: len(G.parts[i]))
    chosen: list[tuple[int, int]] = []

    def rec(pos: int, used: int) -> bool:
        if len(chosen) == d:
            return True
        if len(order) - pos < d - len(chosen):
            return False
        i = order[pos]
        for a in G.parts[i]:
            if not a & used:
                chosen.append((i, a))
                if rec(pos + 1, used | a):
                    return True
                chosen.pop()
        return rec(pos + 1, used)

    if rec(0, 0):
        return sorted((i, members(a)) for i, a in chosen)
    return None


class DeficiencyClass(NamedTuple):
    d: int
    case: str  # "always" | "never" | "full-skeleta-only" | "clique-test"
    all_full: bool | None = None


def deficiency(m: int, r: int, k: int) -> int:
    return r * (k + 2) - m


def classify_deficiency(fam: Family, k: int) -> DeficiencyClass:
    d = deficiency(fam.m, fam.r, k)
    if d > fam.r:
        return DeficiencyClass(d, "always")
    if d < 1:
        return DeficiencyClass(d, "never")
    if d == 1:
        top = skeleton(fam.m, k + 1)
        return DeficiencyClass(d, "full-skeleta-only", all(K == top for K in fam.complexes))
    return DeficiencyClass(d, "clique-test")


def common_balance_level(fam: Family) -> int | None:
    """Largest k for which every member is (m, k)-balanced, if any."""
    levels = set(balance_levels(fam.complexes[0]))
    for K in fam.complexes[1:]:
        levels &= set(balance_levels(K))
    return max(levels) if levels else None


def is_collectively_unavoidable(fam: Family, k: int | None = None) -> Certificate:
    """Decide unavoidability; balanced families use the deficiency/clique criterion."""
    if k is None:
        k = common_balance_level(fam)
    elif not all(is_balanced(K, k) for K in fam.complexes):
        k = None
    if k is None:
        return is_collectively_unavoidable_bruteforce(fam)
    cls = classify_deficiency(fam, k)
    if cls.case == "always":
        return Certificate(True, DEFICIENCY)
    if cls.case == "never":
        return Certificate(False, DEFICIENCY, _large_partition(fam.m, fam.r, [k + 2] * fam.r))
    if cls.case == "full-skeleta-only":
        if cls.all_full:
            return Certificate(True, DEFICIENCY)
        return Certificate(False, DEFICIENCY, _full_skeleta_witness(fam, k))
    clique = has_d_clique(build_kneser_graph(fam, k), cls.d)
    if clique is None:
        return Certificate(True, CLIQUE)
    return Certificate(False, CLIQUE, clique)


def _large_partition(m: int, r: int, minimum: list[int]) -> list[tuple[int, ...]]:
    """Consecutive blocks with at least ``minimum[i]`` elements; leftovers go to block 1."""
    blocks, start = [], 1
    for size in minimum:
        blocks.append(list(range(start, start + size)))
        start += size
    blocks[0] += list(range(start, m + 1))
    return [tuple(sorted(b)) for b in blocks]


def _full_skeleta_witness(fam: Family, k: int) -> list[tuple[int, ...]]:
    """For d = 1: a missing (k+1)-set B of some K_i, completed by (k+2)-blocks."""
    for i, K in enumerate(fam.complexes):
        gaps = missing_sets(K, k + 1)
        if gaps:
            b = gaps[0]
            rest = [v for v in range(1, fam.m + 1) if not b >> (v - 1) & 1]
            blocks: list[tuple[int, ...]] = []
            for j in range(fam.r):
                if j == i:
                    blocks.append(members(b))
                else:
                    blocks.append(tuple(rest[: k + 2]))
                    rest = rest[k + 2:]
            return blocks
    raise AssertionError("d = 1 family without a missing set")


class SkeletaFamily(NamedTuple):
    family: Family
    sizes: tuple
    condition: bool  # m == sum(sizes) + r - 1


def skeleta_family(m: int, sizes) -> SkeletaFamily:
    sizes = tuple(int(s) for s in sizes)
    fam = Family(tuple(skeleton(m, s) for s in sizes))
    return SkeletaFamily(fam, sizes, m == sum(sizes) + len(sizes) - 1)


def is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            return n == 1
        p += 1
    return True


@dataclass
class VKFReport:
    r: int
    d: int
    k: int
    s: int
    N: int
    m: int
    r_prime_power: bool
    dimension_ok: bool  # N >= (r-1)(d+2)
    tight_degree: bool  # rk + s == (r-1)d
    tight_dimension: bool  # N == (r-1)(d+2)
    degree_ok: bool  # rk + s >= (r-1)d
    equivalence_holds: bool
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return dict(self.__dict__)


def vkf_parameters(r: int, d: int, k: int, s: int) -> VKFReport:
    """Arithmetic of the balanced Van Kampen-Flores setting; no topology.

    ``m = s(k+2) + (r-s)(k+1) + r - 1`` is the ground size making the
    balanced skeleta family unavoidable, and ``N = m - 1``.
    """
    m = s * (k + 2) + (r - s) * (k + 1) + r - 1
    N = m - 1
    tight_degree = r * k + s == (r - 1) * d
    tight_dimension = N == (r - 1) * (d + 2)
    notes = []
    if not 0 <= s < r:
        notes.append("s outside [0, r)")
    if k < 0:
        notes.append("k negative")
    return VKFReport(
        r=r,
        d=d,
        k=k,
        s=s,
        N=N,
        m=m,
        r_prime_power=is_prime_power(r),
        dimension_ok=N >= (r - 1) * (d + 2),
        tight_degree=tight_degree,
        tight_dimension=tight_dimension,
        degree_ok=r * k + s >= (r - 1) * d,
        equivalence_holds=tight_degree == tight_dimension,
        notes=notes,
    )


def count_balanced(m: int, k: int) -> int:
    """Number of (m, k)-balanced complexes: one per choice of missing (k+1)-sets."""
    return 2 ** comb(m, k + 1)
