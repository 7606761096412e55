"""Discrete Morse matching on symmetrized deleted joins.

The matching is built in ``r`` global steps.  At step ``k`` a cell's pivot
is the ``k``-th passport entry, and the cell is paired with the cell obtained
by moving the pivot between ``B`` and ``A_k``, provided both cells belong to
the complex and neither was matched at an earlier step.

The verifiers (:func:`verify_matching`, :func:`verify_acyclicity`) work on
any object exposing ``cell_keys``, ``cell_dim`` and ``cell_facets``, which
both :class:`~symmjoin.complexes.Complex` and
:class:`~symmjoin.joins.JoinComplex` provide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

from . import kernels
from .complexes import members, popcount
from .joins import JoinCell, JoinComplex

INF = math.inf


class NoCertificate(ValueError):
    """The critical cells do not support a connectivity certificate."""


def passport(cell: JoinCell) -> tuple:
    """Stepwise minima (a_1, ..., a_r); ``math.inf`` once the candidate set is empty."""
    out = []
    a = 0
    for block in cell.blocks:
        if a == INF:
            out.append(INF)
            continue
        cand = (block | cell.rest) >> a
        if cand:
            a = a + ((cand & -cand).bit_length())
            out.append(a)
        else:
            a = INF
            out.append(INF)
    return tuple(out)


def step_types(cell: JoinCell) -> tuple[str, ...]:
    """Per step: 'type1' if the pivot lies in B, 'type2' if in A_k, 'inf' otherwise."""
    out = []
    for k, a in enumerate(passport(cell)):
        if a == INF:
            out.append("inf")
        elif cell.rest >> (a - 1) & 1:
            out.append("type1")
        else:
            out.append("type2")
    return tuple(out)


def is_large(cell: JoinCell) -> bool:
    return popcount(cell.rest) <= cell.r - 1


def base_cell(m: int, r: int) -> JoinCell:
    return JoinCell((1,) + (0,) * (r - 1), ((1 << m) - 1) ^ 1)


class Pair(NamedTuple):
    lower: object
    upper: object
    step: int
    pivot: int


@dataclass(frozen=True, eq=False)
class GradientField:
    """Matched pairs over a complex, keyed by the complex's cell keys.

    ``pairs`` holds ``(lower_key, upper_key, step, pivot)`` tuples.  Fields
    built by hand may violate the matching conditions; see
    :func:`verify_matching`.
    """

    complex: object
    pairs: tuple

    @cached_property
    def up(self) -> dict:
        return {p[0]: p[1] for p in self.pairs}

    @cached_property
    def down(self) -> dict:
        return {p[1]: p[0] for p in self.pairs}

    @cached_property
    def matched(self) -> frozenset:
        return frozenset(k for p in self.pairs for k in p[:2])

    def unmatched(self) -> list:
        matched = self.matched
        return [k for k in self.complex.cell_keys() if k not in matched]

    def records(self) -> list[Pair]:
        """Pairs with cells decoded to the complex's public cell type."""
        cx = self.complex
        if isinstance(cx, JoinComplex):
            return [Pair(cx.cell(lo), cx.cell(hi), s, a) for lo, hi, s, a in self.pairs]
        return [Pair(members(lo), members(hi), s, a) for lo, hi, s, a in self.pairs]

    def unmatched_cells(self) -> list:
        cx = self.complex
        if isinstance(cx, JoinComplex):
            return [cx.cell(k) for k in self.unmatched()]
        return [members(k) for k in self.unmatched()]

    @classmethod
    def from_cells(cls, cx, pairs) -> "GradientField":
        """Hand-built field from (lower, upper) cell pairs; step and pivot are left 0."""
        if isinstance(cx, JoinComplex):
            from .joins import encode

            key = lambda c: encode(c, cx.r)  # noqa: E731
        else:
            from .complexes import to_mask

            key = lambda c: c if isinstance(c, int) else to_mask(c, cx.m)  # noqa: E731
        return cls(cx, tuple((key(lo), key(hi), 0, 0) for lo, hi in pairs))


def build_matching(J: JoinComplex) -> GradientField:
    """Run steps 1..r of the pivot matching over the materialized complex."""
    partner, step, pivot, is_lower = kernels.build_matching(J.codes, J.m, J.r)
    lows = np.flatnonzero(is_lower)
    codes = J.codes
    pairs = tuple(
        (int(codes[i]), int(codes[partner[i]]), int(step[i]), int(pivot[i])) for i in lows
    )
    return GradientField(J, pairs)


def verify_matching(J, G: GradientField) -> bool:
    """Each cell matched at most once; each lower cell is a facet of its partner."""
    keys = set(J.cell_keys())
    seen = set()
    for lo, hi, _, _ in G.pairs:
        if lo not in keys or hi not in keys:
            return False
        if lo in seen or hi in seen or lo == hi:
            return False
        seen.add(lo)
        seen.add(hi)
        if lo not in J.cell_facets(hi):
            return False
    return True


def _successors(J, up: dict, lower):
    beta = up[lower]
    return [f for f in J.cell_facets(beta) if f != lower and f in up]


def find_closed_path(J, G: GradientField) -> list:
    """Lower cells of a closed gradient path, or [] if the field is acyclic.

    Arcs run ``α -> α'`` when ``α`` is matched up to ``β`` and ``α'`` is
    another facet of ``β`` that is itself matched upward.  Assumes
    :func:`verify_matching` holds.
    """
    if isinstance(J, JoinComplex) and J is G.complex:
        index = J._index
        partner = np.full(len(J), -1, dtype=np.int64)
        is_lower = np.zeros(len(J), dtype=np.uint8)
        for lo, hi, _, _ in G.pairs:
            i, j = index[lo], index[hi]
            partner[i], partner[j] = j, i
            is_lower[i] = 1
        cycle = kernels.find_cycle(J.codes, partner, is_lower, J.m, J.r)
        return [int(J.codes[i]) for i in cycle]
    up = G.up
    color: dict = {}
    for root in up:
        if color.get(root):
            continue
        color[root] = 1
        stack = [(root, iter(_successors(J, up, root)))]
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[node] = 2
                stack.pop()
            elif color.get(nxt) == 1:
                path = [s[0] for s in stack]
                return path[path.index(nxt):]
            elif not color.get(nxt):
                color[nxt] = 1
                stack.append((nxt, iter(_successors(J, up, nxt))))
    return []


def verify_acyclicity(J, G: GradientField) -> bool:
    return not find_closed_path(J, G)


@dataclass
class CriticalReport:
    base: JoinCell | None
    large_criticals: list
    violations: list
    m: int
    r: int

    @property
    def holds(self) -> bool:
        return not self.violations

    def counts_by_dim(self) -> dict[int, int]:
        out: dict[int, int] = {}
        cells = ([self.base] if self.base is not None else []) + self.large_criticals + self.violations
        for c in cells:
            out[c.dimension] = out.get(c.dimension, 0) + 1
        return dict(sorted(out.items()))

    def to_json(self) -> dict:
        return {
            "base": None if self.base is None else str(self.base),
            "large": len(self.large_criticals),
            "critical_by_dim": {str(d): n for d, n in self.counts_by_dim().items()},
            "violations": [
                {"cell": str(c), "steps": list(step_types(c))} for c in self.violations
            ],
            "holds": self.holds,
        }


def critical_report(J: JoinComplex, G: GradientField) -> CriticalReport:
    """Sort the unmatched cells into the base vertex, large cells and the rest."""
    expected = base_cell(J.m, J.r)
    base = None
    large, bad = [], []
    for cell in sorted(G.unmatched_cells(), key=lambda c: (c.dimension, c.blocks)):
        if cell == expected:
            base = cell
        elif is_large(cell):
            large.append(cell)
        else:
            bad.append(cell)
    return CriticalReport(base, large, bad, J.m, J.r)


def connectivity_lower_bound(report: CriticalReport, m: int, r: int) -> int:
    """Connectivity certified by the critical cells.

    One critical vertex (the base vertex when present) serves as the
    basepoint; the bound is the least dimension among the remaining critical
    cells minus one.  With no other critical cell the complex collapses to a
    point and the top dimension ``m - 1`` is returned.
    """
    if report.violations:
        raise NoCertificate(
            f"{len(report.violations)} critical cell(s) are neither the base vertex nor large"
        )
    rest = sorted(c.dimension for c in report.large_criticals)
    if report.base is None:
        if not rest or rest[0] != 0:
            raise NoCertificate("no critical vertex; the complex is empty")
        rest = rest[1:]
    if not rest:
        return m - 1
    return rest[0] - 1


def passport_monotone_check(J: JoinComplex, G: GradientField, samples: int = 10**6) -> bool:
    """Check that passports never increase along gradient-path steps.

    Every path is a concatenation of steps ``α ↗ β ↘ α'``, so inspecting
    each such step (up to ``samples`` of them) covers every path.
    """
    budget = samples
    for lo, hi, _, _ in G.pairs:
        p_lo = passport(J.cell(lo))
        p_hi = passport(J.cell(hi))
        if p_hi > p_lo:
            return False
        for f in J.cell_facets(hi):
            if f == lo:
                continue
            if budget <= 0:
                return True
            budget -= 1
            if passport(J.cell(f)) > p_hi:
                return False
    return True


def emit_dot(J, G: GradientField) -> str:
    """Modified Hasse diagram: matched arcs point up, other facet arcs down."""
    critical = set(G.unmatched())
    up = G.up
    lines = ["digraph gradient {", "  rankdir=BT;", "  node [shape=box, fontname=monospace];"]
    keys = sorted(J.cell_keys(), key=lambda k: (J.cell_dim(k), k))
    for k in keys:
        style = ', style=filled, fillcolor="#f4a582"' if k in critical else ""
        lines.append(f'  c{k} [label="{J.format_cell(k)}"{style}];')
    for dim in sorted({J.cell_dim(k) for k in keys}):
        lines.append(f"  subgraph dim{dim} {{ rank=same; " + " ".join(
            f"c{k};" for k in keys if J.cell_dim(k) == dim) + " }")
    for k in keys:
        for f in J.cell_facets(k):
            if up.get(f) == k:
                lines.append(f'  c{f} -> c{k} [color="#2166ac", penwidth=2, label="match"];')
            else:
                lines.append(f"  c{k} -> c{f} [color=gray];")
    lines.append("}")
    return "\n".join(lines) + "\n"
