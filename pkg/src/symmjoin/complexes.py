"""Simplicial complexes on the ground set [m] = {1, ..., m}.

Faces are stored as integer bitmasks: vertex ``v`` is bit ``v - 1``.  The
public functions accept plain iterables of vertex labels wherever a single
face is expected and return sorted tuples when faces leave the module.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from math import comb
from typing import Iterable

MAX_GROUND = 30


class ParameterError(ValueError):
    """Raised when an operation is called outside its documented domain."""


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def to_mask(vertices: Iterable[int], m: int | None = None) -> int:
    """Bitmask of a vertex collection; validates the range when ``m`` is given."""
    mask = 0
    for v in vertices:
        v = int(v)
        if v < 1 or (m is not None and v > m):
            raise ParameterError(f"vertex {v} outside [1, {m}]")
        bit = 1 << (v - 1)
        if mask & bit:
            raise ParameterError(f"duplicate vertex {v}")
        mask |= bit
    return mask


def members(mask: int) -> tuple[int, ...]:
    """Sorted vertex labels of a bitmask."""
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def full_mask(m: int) -> int:
    return (1 << m) - 1


def _check_ground(m: int) -> None:
    if not 1 <= m <= MAX_GROUND:
        raise ParameterError(f"ground size must be in [1, {MAX_GROUND}], got {m}")


def _as_mask(face, m: int) -> int:
    if isinstance(face, int):
        if face < 0 or face >> m:
            raise ParameterError(f"mask {face:#x} outside ground [1, {m}]")
        return face
    return to_mask(face, m)


@dataclass(frozen=True)
class Complex:
    """A downward-closed family of subsets of [m].

    ``faces`` holds bitmasks.  A complex with no faces at all (the empty
    complex) is distinct from ``{∅}``.
    """

    m: int
    faces: frozenset

    def __post_init__(self):
        _check_ground(self.m)

    def __contains__(self, face) -> bool:
        return _as_mask(face, self.m) in self.faces

    def __len__(self) -> int:
        return len(self.faces)

    def __iter__(self):
        return iter(sorted(self.faces, key=lambda f: (popcount(f), members(f))))

    def contains(self, face) -> bool:
        return face in self

    @property
    def is_empty(self) -> bool:
        return not self.faces

    @property
    def dimension(self) -> int:
        """Largest face cardinality minus one; -1 for ``{∅}``, -2 when empty."""
        if not self.faces:
            return -2
        return max(popcount(f) for f in self.faces) - 1

    def f_vector(self) -> list[int]:
        """Face counts by cardinality 0, 1, ..., dimension + 1."""
        counts = [0] * (self.dimension + 2 if self.faces else 0)
        for f in self.faces:
            counts[popcount(f)] += 1
        return counts

    def facets(self) -> list[tuple[int, ...]]:
        """Inclusion-maximal faces in lexicographic order."""
        faces = self.faces
        out = []
        for f in faces:
            rest = full_mask(self.m) & ~f
            maximal = True
            while rest:
                bit = rest & -rest
                if f | bit in faces:
                    maximal = False
                    break
                rest ^= bit
            if maximal:
                out.append(members(f))
        return sorted(out)

    def euler_characteristic(self) -> int:
        """Unreduced Euler characteristic (the empty face is not counted)."""
        return sum((-1) ** (popcount(f) - 1) for f in self.faces if f)

    def is_downward_closed(self) -> bool:
        faces = self.faces
        if faces and 0 not in faces:
            return False
        for f in faces:
            g = f
            while g:
                bit = g & -g
                if f ^ bit not in faces:
                    return False
                g ^= bit
        return True

    # keys for the generic cell-complex protocol used by the Morse verifiers
    def cell_keys(self):
        return [f for f in self.faces if f]

    def cell_dim(self, key: int) -> int:
        return popcount(key) - 1

    def cell_facets(self, key: int) -> list[int]:
        out = []
        g = key
        while g:
            bit = g & -g
            if key ^ bit:
                out.append(key ^ bit)
            g ^= bit
        return out

    def format_cell(self, key: int) -> str:
        return "{" + ",".join(map(str, members(key))) + "}"

    def to_json(self) -> dict:
        return {"m": self.m, "facets": [list(f) for f in self.facets()]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _closure(m: int, masks: Iterable[int]) -> frozenset:
    faces: set[int] = set()
    stack = list(masks)
    while stack:
        f = stack.pop()
        if f in faces:
            continue
        faces.add(f)
        g = f
        while g:
            bit = g & -g
            if f ^ bit not in faces:
                stack.append(f ^ bit)
            g ^= bit
    return frozenset(faces)


def from_facets(m: int, facets: Iterable[Iterable[int]]) -> Complex:
    """Downward closure of the given faces (plus ∅ when any face is given)."""
    _check_ground(m)
    masks = [_as_mask(f, m) for f in facets]
    return Complex(m, _closure(m, masks))


def from_faces(m: int, faces: Iterable[int]) -> Complex:
    """Wrap an already downward-closed family of masks; closure is enforced."""
    _check_ground(m)
    return Complex(m, _closure(m, faces))


def subsets_of_size(m: int, c: int):
    for combo in itertools.combinations(range(m), c):
        mask = 0
        for i in combo:
            mask |= 1 << i
        yield mask


def skeleton(m: int, c: int) -> Complex:
    """All subsets of [m] with cardinality at most ``c``."""
    _check_ground(m)
    if not 0 <= c <= m:
        raise ParameterError(f"skeleton cardinality {c} outside [0, {m}]")
    faces = [f for size in range(c + 1) for f in subsets_of_size(m, size)]
    return Complex(m, frozenset(faces))


def is_balanced(K: Complex, k: int) -> bool:
    """True iff skeleton(m, k) ⊆ K ⊆ skeleton(m, k + 1)."""
    if not 0 <= k <= K.m - 1:
        raise ParameterError(f"balance parameter {k} outside [0, {K.m - 1}]")
    low = 0
    for f in K.faces:
        size = popcount(f)
        if size > k + 1:
            return False
        if size <= k:
            low += 1
    return low == sum(comb(K.m, i) for i in range(k + 1))


def balance_levels(K: Complex) -> list[int]:
    """Every ``k`` for which ``K`` is (m, k)-balanced."""
    return [k for k in range(K.m) if is_balanced(K, k)]


def alexander_dual(K: Complex) -> Complex:
    """{A ⊆ [m] : [m] ∖ A ∉ K}; the empty complex when K is the full simplex."""
    full = full_mask(K.m)
    faces = K.faces
    return Complex(K.m, frozenset(a for a in range(full + 1) if full ^ a not in faces))


def missing_sets(K: Complex, size: int) -> list[int]:
    """Subsets of the given cardinality that are not faces, ascending by mask."""
    return sorted(f for f in subsets_of_size(K.m, size) if f not in K.faces)


def balanced_from_missing(m: int, k: int, missing: Iterable) -> Complex:
    """skeleton(m, k + 1) with the listed (k + 1)-sets removed."""
    drop = {_as_mask(a, m) for a in missing}
    for a in drop:
        if popcount(a) != k + 1:
            raise ParameterError(f"missing set {members(a)} does not have {k + 1} elements")
    base = skeleton(m, k + 1)
    return Complex(m, base.faces - drop)


def _icosahedron_triangles():
    phi = (1 + 5 ** 0.5) / 2
    verts = []
    for a, b in itertools.product((-1.0, 1.0), repeat=2):
        verts += [(0.0, a, b * phi), (a, b * phi, 0.0), (b * phi, 0.0, a)]

    def dist2(p, q):
        return sum((x - y) ** 2 for x, y in zip(p, q))

    tris = [
        t
        for t in itertools.combinations(range(12), 3)
        if all(abs(dist2(verts[i], verts[j]) - 4.0) < 1e-9 for i, j in itertools.combinations(t, 2))
    ]
    return verts, tris


def rp2_minimal() -> Complex:
    """Six-vertex triangulation of the projective plane.

    Built as the quotient of the icosahedron by the antipodal map; vertex
    classes are labelled 1..6 in order of first appearance.
    """
    verts, tris = _icosahedron_triangles()
    label: dict[int, int] = {}
    for i, p in enumerate(verts):
        if i in label:
            continue
        j = next(j for j, q in enumerate(verts) if all(abs(x + y) < 1e-9 for x, y in zip(p, q)))
        label[i] = label[j] = len(set(label.values())) + 1
    facets = {tuple(sorted({label[i] for i in t})) for t in tris}
    return from_facets(6, sorted(facets))


def read_json(obj) -> Complex:
    """Parse ``{"m": int, "facets": [[...], ...]}`` (dict or JSON text)."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        m = int(obj["m"])
        facets = obj["facets"]
    except (KeyError, TypeError) as exc:
        raise ParameterError(f"malformed complex JSON: {exc}") from exc
    return from_facets(m, facets)
