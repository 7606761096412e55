"""Exact reduced integral homology of complexes and join complexes.

Boundary matrices are kept sparse (one ``{row: value}`` dict per column).
Invariant factors are computed by eliminating unit pivots first, which
handles nearly all of a simplicial boundary matrix, and then running a
dense Smith normal form on whatever block is left.  Python integers keep
everything exact.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from math import gcd

from .complexes import Complex, popcount
from .joins import JoinComplex


@dataclass
class ChainComplex:
    """Augmented chain complex: ``bases[0]`` is the single (-1)-cell ∅.

    ``boundaries[p]`` maps chains of ``bases[p]`` to chains of
    ``bases[p - 1]``; list index ``p`` corresponds to dimension ``p - 1``.
    """

    bases: list
    boundaries: list

    @property
    def top_dim(self) -> int:
        return len(self.bases) - 2

    def sizes(self) -> list[int]:
        """Cell counts in dimensions 0, 1, ..."""
        return [len(b) for b in self.bases[1:]]

    def boundary(self, dim: int) -> list[dict]:
        """Columns of ∂ on ``dim``-chains (``dim = 0`` is the augmentation)."""
        return self.boundaries[dim + 1]

    def dense(self, dim: int) -> list[list[int]]:
        cols = self.boundary(dim)
        nrows = len(self.bases[dim])
        mat = [[0] * len(cols) for _ in range(nrows)]
        for j, col in enumerate(cols):
            for i, v in col.items():
                mat[i][j] = v
        return mat

    def boundary_squared_is_zero(self) -> bool:
        for p in range(1, len(self.boundaries) - 1):
            lower = self.boundaries[p]
            for col in self.boundaries[p + 1]:
                acc: dict = {}
                for i, v in col.items():
                    for i2, w in lower[i].items():
                        acc[i2] = acc.get(i2, 0) + v * w
                if any(acc.values()):
                    return False
        return True

    def triplets(self, dim: int) -> str:
        """Sparse dump of ∂ on ``dim``-chains: ``row col value`` per line, 0-based."""
        lines = []
        for j, col in enumerate(self.boundary(dim)):
            for i in sorted(col):
                lines.append(f"{i} {j} {col[i]}")
        return "\n".join(lines) + ("\n" if lines else "")


def _complex_cells(K: Complex):
    by_dim: dict[int, list[int]] = {}
    for f in K.faces:
        if f:
            by_dim.setdefault(popcount(f) - 1, []).append(f)
    top = max(by_dim) if by_dim else -1
    bases = [sorted(by_dim.get(d, [])) for d in range(top + 1)]

    def boundary(f: int):
        out = []
        pos, g = 0, f
        while g:
            bit = g & -g
            if f ^ bit:
                out.append((f ^ bit, -1 if pos % 2 else 1))
            g ^= bit
            pos += 1
        return out

    return bases, boundary


def _join_cells(J: JoinComplex):
    codes = [int(c) for c in J.codes]
    dims = J.dims.tolist()
    labels = J.labels.tolist()
    top = J.dimension
    bases: list[list[int]] = [[] for _ in range(top + 1)]
    lab_of = {}
    for c, d, lab in zip(codes, dims, labels):
        bases[d].append(c)
        lab_of[c] = lab
    pw = [int(x) for x in J.powers]
    r = J.r

    def boundary(code: int):
        # vertex order: A_1 ascending, then A_2 ascending, ...
        lab = lab_of[code]
        out = []
        pos = 0
        for block in range(1, r + 1):
            for v, x in enumerate(lab):
                if x == block:
                    face = code - block * pw[v]
                    if face:
                        out.append((face, -1 if pos % 2 else 1))
                    pos += 1
        return out

    return bases, boundary


def chain_complex(X) -> ChainComplex:
    if isinstance(X, JoinComplex):
        bases, boundary = _join_cells(X)
    elif isinstance(X, Complex):
        bases, boundary = _complex_cells(X)
    else:
        raise TypeError(f"cannot build a chain complex from {type(X).__name__}")
    all_bases = [[None] if any(bases) else []] + bases
    boundaries: list[list[dict]] = [[]]
    boundaries.append([{0: 1} for _ in bases[0]] if bases else [])
    for d in range(1, len(bases)):
        index = {c: i for i, c in enumerate(bases[d - 1])}
        cols = []
        for c in bases[d]:
            cols.append({index[f]: s for f, s in boundary(c)})
        boundaries.append(cols)
    return ChainComplex(all_bases, boundaries)


def _dense_invariants(mat: list[list[int]]) -> list[int]:
    """Nonzero invariant factors of a small dense integer matrix."""
    a = [row[:] for row in mat if any(row)]
    if not a:
        return []
    nr, nc = len(a), len(a[0])
    diag = []
    t = 0
    while t < min(nr, nc):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, nr):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, nc):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    done = False
            if done:
                break
            # a remainder smaller than the pivot is left somewhere; move it to (t, t)
            best = None
            for i in range(t, nr):
                if a[i][t] and (best is None or abs(a[i][t]) < abs(best[2])):
                    best = (i, t, a[i][t])
            for j in range(t, nc):
                if a[t][j] and abs(a[t][j]) < abs(best[2]):
                    best = (t, j, a[t][j])
            i, j, _ = best
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    # enforce the divisibility chain
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            g = gcd(diag[i], diag[j])
            diag[i], diag[j] = g, diag[i] * diag[j] // g
    return sorted(diag)


def invariant_factors(columns: list[dict], nrows: int) -> list[int]:
    """Nonzero invariant factors of a sparse integer matrix (given by columns)."""
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, dict[int, int]] = {}
    for j, col in enumerate(columns):
        c = {i: v for i, v in col.items() if v}
        if c:
            cols[j] = c
            for i, v in c.items():
                rows.setdefault(i, {})[j] = v
    units = 0
    # rows with a single entry eliminate without fill-in, so they go first;
    # otherwise the shortest column (lazy heap) supplies the pivot
    singles = [i for i, row in rows.items() if len(row) == 1]
    heap = [(len(c), j) for j, c in cols.items()]
    heapq.heapify(heap)
    while True:
        pivot = None
        while singles and pivot is None:
            i = singles.pop()
            row = rows.get(i)
            if row is not None and len(row) == 1:
                (j, v), = row.items()
                if v in (1, -1):
                    pivot = (i, j)
        while heap and pivot is None:
            n, j = heapq.heappop(heap)
            col = cols.get(j)
            if col is None or len(col) != n:
                continue
            best = None
            for i, v in col.items():
                if v in (1, -1) and (best is None or len(rows[i]) < len(rows[best])):
                    best = i
            if best is not None:
                pivot = (best, j)
        if pivot is None:
            break
        pi, pj = pivot
        prow = rows.pop(pi)
        a = prow[pj]
        for i, v in list(cols[pj].items()):
            if i == pi:
                continue
            factor = v * a  # a is ±1
            row = rows[i]
            for jj, w in prow.items():
                nv = row.get(jj, 0) - factor * w
                cj = cols[jj]
                if nv:
                    row[jj] = nv
                    cj[i] = nv
                else:
                    del row[jj]
                    del cj[i]
            if not row:
                del rows[i]
            elif len(row) == 1:
                singles.append(i)
        for jj in prow:
            cj = cols[jj]
            cj.pop(pi, None)
            if jj != pj:
                if cj:
                    heapq.heappush(heap, (len(cj), jj))
                else:
                    del cols[jj]
        del cols[pj]
        units += 1
    rest_cols = [j for j, c in cols.items() if c]
    if not rest_cols:
        return [1] * units
    rest_rows = sorted({i for j in rest_cols for i in cols[j]})
    rindex = {i: n for n, i in enumerate(rest_rows)}
    mat = [[0] * len(rest_cols) for _ in rest_rows]
    for n, j in enumerate(rest_cols):
        for i, v in cols[j].items():
            mat[rindex[i]][n] = v
    return [1] * units + _dense_invariants(mat)


@dataclass
class HomologyProfile:
    """Reduced homology per dimension 0..top: Betti numbers and torsion factors."""

    betti: list = field(default_factory=list)
    torsion: list = field(default_factory=list)
    empty: bool = False

    def is_sphere(self, dim: int) -> bool:
        if self.empty:
            return dim == -1
        return all(
            b == (1 if p == dim else 0) and not t
            for p, (b, t) in enumerate(zip(self.betti, self.torsion))
        ) and dim < len(self.betti)

    def vanishes_through(self, c: int) -> bool:
        if self.empty:
            return c < -1
        return all(
            self.betti[p] == 0 and not self.torsion[p] for p in range(min(c + 1, len(self.betti)))
        )

    def to_json(self) -> dict:
        out = {"betti": list(self.betti), "torsion": [list(t) for t in self.torsion]}
        if self.empty:
            out["empty"] = True
        return out


def homology_profile(C: ChainComplex, max_dim: int | None = None) -> HomologyProfile:
    sizes = [len(b) for b in C.bases]  # index p <-> dimension p - 1
    if not any(sizes[1:]):
        return HomologyProfile(empty=True)
    top = C.top_dim if max_dim is None else min(max_dim, C.top_dim)
    factors = {}
    for p in range(1, min(top + 3, len(C.boundaries))):
        factors[p] = invariant_factors(C.boundaries[p], sizes[p - 1])
    betti, torsion = [], []
    for d in range(top + 1):
        p = d + 1
        rank_out = len(factors.get(p, []))
        into = factors.get(p + 1, [])
        betti.append(sizes[p] - rank_out - len(into))
        torsion.append([f for f in into if f > 1])
    return HomologyProfile(betti, torsion)


def profile_of(X, max_dim: int | None = None) -> HomologyProfile:
    return homology_profile(chain_complex(X), max_dim)


def _is_nonempty(X) -> bool:
    if isinstance(X, JoinComplex):
        return len(X) > 0
    return any(X.faces)


def verify_connectivity_homology(X, c: int) -> bool:
    """Reduced homology vanishes in dimensions <= c (c = -1: X is nonempty)."""
    if c < -1:
        raise ValueError("connectivity level must be >= -1")
    if not _is_nonempty(X):
        return False
    if c == -1:
        return True
    return profile_of(X, max_dim=c).vanishes_through(c)


def euler_from_profile(profile: HomologyProfile) -> int:
    """Reduced Euler characteristic from the free part."""
    return sum((-1) ** p * b for p, b in enumerate(profile.betti))


def reduced_euler_from_cells(C: ChainComplex) -> int:
    return sum((-1) ** (p - 1) * n for p, n in enumerate(len(b) for b in C.bases))
