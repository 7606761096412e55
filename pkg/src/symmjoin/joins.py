"""Deleted joins and symmetrized deleted joins of families of complexes.

A cell is an ordered partition ``(A_1, ..., A_r; B)`` of [m] with at least
one nonempty block; its dimension is ``m - |B| - 1``.  Inside a
:class:`JoinComplex` cells are handled as integer codes (see
:mod:`symmjoin._pykernels`), and converted to :class:`JoinCell` at the
boundary.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple

import numpy as np

from . import kernels
from .complexes import Complex, ParameterError, full_mask, members, popcount, read_json, to_mask

MAX_TABLE_GROUND = 24
DELETED = "deleted-join"
SYMMETRIC = "symmetrized-deleted-join"


class CapExceeded(RuntimeError):
    """The requested materialization would exceed the configured cell cap."""


def _fmt(mask: int) -> str:
    return "{" + ",".join(map(str, members(mask))) + "}"


class JoinCell(NamedTuple):
    blocks: tuple  # bitmasks A_1..A_r
    rest: int  # bitmask B

    @classmethod
    def make(cls, m: int, blocks: Iterable, rest=None) -> "JoinCell":
        """Build a cell from vertex collections (or masks); B defaults to the complement."""
        masks = tuple(b if isinstance(b, int) else to_mask(b, m) for b in blocks)
        used = 0
        for b in masks:
            if b & used:
                raise ParameterError("join blocks must be pairwise disjoint")
            used |= b
        if used >> m:
            raise ParameterError(f"block vertex outside [1, {m}]")
        if rest is None:
            rest_mask = full_mask(m) ^ used
        else:
            rest_mask = rest if isinstance(rest, int) else to_mask(rest, m)
            if rest_mask & used or (rest_mask | used) != full_mask(m):
                raise ParameterError("blocks and remainder must partition [m]")
        if not used:
            raise ParameterError("the empty join simplex is not a cell")
        return cls(masks, rest_mask)

    @property
    def r(self) -> int:
        return len(self.blocks)

    @property
    def dimension(self) -> int:
        return sum(popcount(b) for b in self.blocks) - 1

    def sets(self) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
        return tuple(members(b) for b in self.blocks), members(self.rest)

    def permuted(self, perm) -> "JoinCell":
        """Blocks reordered so that new block ``i`` is old block ``perm[i]`` (0-based)."""
        return JoinCell(tuple(self.blocks[p] for p in perm), self.rest)

    def to_json(self) -> dict:
        blocks, rest = self.sets()
        return {"A": [list(b) for b in blocks], "B": list(rest)}

    def __str__(self) -> str:
        return "(" + ",".join(_fmt(b) for b in self.blocks) + ";" + _fmt(self.rest) + ")"


def cell_from_json(obj, m: int) -> JoinCell:
    return JoinCell.make(m, obj["A"], obj.get("B"))


def faces_of(cell: JoinCell) -> list[JoinCell]:
    """Cells obtained by moving one element from some block into B."""
    out = []
    if cell.dimension == 0:
        return out
    for i, b in enumerate(cell.blocks):
        g = b
        while g:
            bit = g & -g
            blocks = list(cell.blocks)
            blocks[i] = b ^ bit
            out.append(JoinCell(tuple(blocks), cell.rest | bit))
            g ^= bit
    return out


@dataclass(frozen=True)
class Family:
    """An ordered tuple of complexes on a common ground set."""

    complexes: tuple

    def __post_init__(self):
        object.__setattr__(self, "complexes", tuple(self.complexes))
        if not self.complexes:
            raise ParameterError("a family needs at least one complex")
        grounds = {K.m for K in self.complexes}
        if len(grounds) != 1:
            raise ParameterError(f"family members have different ground sizes {sorted(grounds)}")

    @property
    def r(self) -> int:
        return len(self.complexes)

    @property
    def m(self) -> int:
        return self.complexes[0].m

    def __getitem__(self, i: int) -> Complex:
        return self.complexes[i]

    def __iter__(self):
        return iter(self.complexes)

    def permuted(self, perm) -> "Family":
        return Family(tuple(self.complexes[p] for p in perm))

    @cached_property
    def tables(self) -> np.ndarray:
        """uint8 membership tables, shape (r, 2**m), indexed by face mask."""
        if self.m > MAX_TABLE_GROUND:
            raise CapExceeded(f"membership tables need m <= {MAX_TABLE_GROUND}")
        tab = np.zeros((self.r, 1 << self.m), dtype=np.uint8)
        for i, K in enumerate(self.complexes):
            if K.faces:
                tab[i, np.fromiter(K.faces, dtype=np.int64)] = 1
        return tab

    def to_json(self) -> dict:
        return {"m": self.m, "complexes": [{"facets": K.to_json()["facets"]} for K in self.complexes]}


def read_family(obj) -> Family:
    """Parse ``{"m": int, "complexes": [{"facets": ...}, ...]}``."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        m = obj["m"]
        return Family(tuple(read_json({"m": m, "facets": c["facets"]}) for c in obj["complexes"]))
    except (KeyError, TypeError) as exc:
        raise ParameterError(f"malformed family JSON: {exc}") from exc


def _check_cell(cell: JoinCell, fam: Family) -> None:
    if cell.r != fam.r:
        raise ParameterError(f"cell has {cell.r} blocks, family has {fam.r} complexes")
    used = cell.rest
    for b in cell.blocks:
        used |= b
    if used != full_mask(fam.m):
        raise ParameterError("cell ground does not match the family ground")


def in_deleted_join(cell: JoinCell, fam: Family) -> bool:
    _check_cell(cell, fam)
    return all(a in K.faces for a, K in zip(cell.blocks, fam.complexes))


def phi_set(cell: JoinCell, fam: Family) -> list[tuple[int, ...]]:
    """Permutations φ (as 1-based image tuples) with A_i ∈ K_φ(i) for every i."""
    _check_cell(cell, fam)
    fits = [[a in K.faces for K in fam.complexes] for a in cell.blocks]
    return [
        tuple(p + 1 for p in perm)
        for perm in itertools.permutations(range(fam.r))
        if all(fits[i][perm[i]] for i in range(fam.r))
    ]


def encode(cell: JoinCell, r: int) -> int:
    code = 0
    base = r + 1
    for i, b in enumerate(cell.blocks, start=1):
        v = 0
        while b:
            if b & 1:
                code += i * base**v
            b >>= 1
            v += 1
    return code


def decode(code: int, m: int, r: int) -> JoinCell:
    base = r + 1
    blocks = [0] * r
    rest = 0
    for v in range(m):
        code, lab = divmod(code, base)
        if lab:
            blocks[lab - 1] |= 1 << v
        else:
            rest |= 1 << v
    return JoinCell(tuple(blocks), rest)


@dataclass(frozen=True, eq=False)
class JoinComplex:
    """Materialized (symmetrized) deleted join; ``codes`` is sorted ascending."""

    family: Family
    kind: str
    codes: np.ndarray = field(repr=False)

    @property
    def m(self) -> int:
        return self.family.m

    @property
    def r(self) -> int:
        return self.family.r

    def __len__(self) -> int:
        return len(self.codes)

    @cached_property
    def powers(self) -> np.ndarray:
        return (self.r + 1) ** np.arange(self.m, dtype=np.int64)

    @cached_property
    def labels(self) -> np.ndarray:
        """(n, m) block labels per cell: 0 for B, i for A_i."""
        if not len(self.codes):
            return np.zeros((0, self.m), dtype=np.int8)
        return ((self.codes[:, None] // self.powers[None, :]) % (self.r + 1)).astype(np.int8)

    @cached_property
    def dims(self) -> np.ndarray:
        return (self.labels != 0).sum(axis=1).astype(np.int64) - 1

    @cached_property
    def _index(self) -> dict:
        return {int(c): i for i, c in enumerate(self.codes)}

    @property
    def dimension(self) -> int:
        return int(self.dims.max()) if len(self.codes) else -1

    def index_of(self, code: int) -> int:
        return self._index.get(code, -1)

    def __contains__(self, cell: JoinCell) -> bool:
        return encode(cell, self.r) in self._index

    def cell(self, code: int) -> JoinCell:
        return decode(int(code), self.m, self.r)

    def cells(self, dim: int | None = None) -> list[JoinCell]:
        codes = self.codes if dim is None else self.codes[self.dims == dim]
        return [self.cell(c) for c in codes]

    def counts_by_dim(self) -> list[int]:
        if not len(self.codes):
            return []
        return np.bincount(self.dims, minlength=self.dimension + 1).tolist()

    # generic cell-complex protocol (keys are codes)
    def cell_keys(self) -> list[int]:
        return [int(c) for c in self.codes]

    def cell_dim(self, key: int) -> int:
        return self.cell(key).dimension

    def cell_facets(self, key: int) -> list[int]:
        base = self.r + 1
        out = []
        rest, v = key, 0
        while rest:
            rest, lab = divmod(rest, base)
            if lab:
                face = key - lab * base**v
                if face:
                    out.append(face)
            v += 1
        return out

    def format_cell(self, key: int) -> str:
        return str(self.cell(key))

    def to_json(self) -> dict:
        by_dim: dict[str, list] = {}
        for code, d in zip(self.codes, self.dims):
            by_dim.setdefault(str(int(d)), []).append(self.cell(int(code)).to_json())
        return {"family": self.family.to_json(), "kind": self.kind, "cells": by_dim}


def estimate_cells(m: int, r: int) -> int:
    """Upper bound (r + 1)**m on the number of ordered partitions."""
    return (r + 1) ** m


def _materialize(fam: Family, symmetric: bool, max_cells: int | None) -> JoinComplex:
    if max_cells is not None and estimate_cells(fam.m, fam.r) > max_cells:
        raise CapExceeded(f"(r+1)^m = {estimate_cells(fam.m, fam.r)} exceeds the cap of {max_cells} cells")
    perms = np.array(list(itertools.permutations(range(fam.r))), dtype=np.int64)
    codes = kernels.enumerate_cells(fam.m, fam.r, fam.tables, symmetric, perms)
    return JoinComplex(fam, SYMMETRIC if symmetric else DELETED, codes)


def symm_deleted_join(fam: Family, max_cells: int | None = None) -> JoinComplex:
    """Union over all orderings of the family of the deleted joins."""
    return _materialize(fam, True, max_cells)


def deleted_join(fam: Family, max_cells: int | None = None) -> JoinComplex:
    return _materialize(fam, False, max_cells)
