import itertools
import random

import pytest

from symmjoin import fixtures
from symmjoin.complexes import ParameterError, from_facets, skeleton
from symmjoin.joins import (
    CapExceeded,
    Family,
    JoinCell,
    decode,
    deleted_join,
    encode,
    faces_of,
    in_deleted_join,
    phi_set,
    read_family,
    symm_deleted_join,
)

from conftest import brute_cells, random_complex


def cell(m, *blocks):
    return JoinCell.make(m, blocks)


def test_cell_validation():
    with pytest.raises(ParameterError):
        JoinCell.make(3, [[1], [1]])
    with pytest.raises(ParameterError):
        JoinCell.make(3, [[], []])
    with pytest.raises(ParameterError):
        JoinCell.make(3, [[1], [2]], [2, 3])


def test_dimension_formula():
    c = fixtures.example_cell()
    assert c.dimension == 9 - 2 - 1 == 3 + 2 + 2 - 1
    assert str(c) == "({7,8,9},{3,4},{1,2};{5,6})"


def test_encode_decode_round_trip():
    rng = random.Random(3)
    for _ in range(200):
        m, r = rng.randint(1, 9), rng.randint(1, 4)
        labels = [rng.randint(0, r) for _ in range(m)]
        if not any(labels):
            continue
        c = JoinCell.make(m, [[v + 1 for v in range(m) if labels[v] == i + 1] for i in range(r)])
        assert decode(encode(c, r), m, r) == c


def test_faces_of():
    assert set(faces_of(cell(2, [1], [2]))) == {cell(2, [], [2]), cell(2, [1], [])}
    assert faces_of(cell(2, [1], [])) == []
    assert set(faces_of(cell(2, [1, 2], []))) == {cell(2, [1], []), cell(2, [2], [])}


def test_named_cell_memberships():
    c = fixtures.example_cell()
    L, K = fixtures.example_family_L(), fixtures.example_family_K()
    assert in_deleted_join(c, L)
    assert phi_set(c, L) == [(1, 2, 3), (1, 3, 2)]
    assert not in_deleted_join(c, K)
    assert phi_set(c, K) == []


def test_point_complex_membership():
    P = fixtures.point_pair()
    assert in_deleted_join(cell(2, [1], []), Family((P, P)))


def test_phi_set_symmetric_family():
    K = skeleton(4, 2)
    fam = Family((K, K, K))
    assert len(phi_set(cell(4, [1], [], []), fam)) == 6


def test_ground_mismatch():
    with pytest.raises(ParameterError):
        in_deleted_join(cell(3, [1], []), Family((skeleton(2, 1), skeleton(2, 1))))
    with pytest.raises(ParameterError):
        Family((skeleton(2, 1), skeleton(3, 1)))


def test_tiny_symmetric_join():
    J = symm_deleted_join(fixtures.tiny_family())
    assert J.counts_by_dim() == [4, 2]
    assert set(J.cells(1)) == {cell(2, [1], [2]), cell(2, [2], [1])}


def test_equal_family_join_is_its_deleted_join():
    K = skeleton(4, 2)
    fam = Family((K, K))
    J, D = symm_deleted_join(fam), deleted_join(fam)
    assert list(J.codes) == list(D.codes)
    assert set(J.cells()) == brute_cells(fam, True)


def test_cell_cap():
    with pytest.raises(CapExceeded):
        symm_deleted_join(fixtures.example_family_L(), max_cells=1000)


@pytest.mark.parametrize("m,r", [(m, r) for m in range(1, 7) for r in (1, 2, 3) if (r + 1) ** m <= 5000])
def test_permutation_union_and_brute_force(m, r):
    rng = random.Random(m * 10 + r)
    for _ in range(4):
        fam = Family(tuple(random_complex(m, rng) for _ in range(r)))
        J = symm_deleted_join(fam)
        union = set()
        for perm in itertools.permutations(range(r)):
            union |= set(deleted_join(fam.permuted(perm)).cells())
        assert set(J.cells()) == union == brute_cells(fam, True)
        assert set(deleted_join(fam).cells()) == brute_cells(fam, False)


@pytest.mark.parametrize("m,r", [(6, 2), (7, 3), (9, 2)])
def test_face_closure_and_dimension(m, r):
    rng = random.Random(m + r)
    fam = Family(tuple(random_complex(m, rng, p=0.7) for _ in range(r)))
    for J in (symm_deleted_join(fam), deleted_join(fam)):
        for c, d in zip(J.cells(), J.dims):
            assert c.dimension == d == m - bin(c.rest).count("1") - 1
            assert all(f in J for f in faces_of(c))


def test_monotonicity_under_enlargement():
    rng = random.Random(11)
    for _ in range(10):
        K1, K2 = random_complex(5, rng), random_complex(5, rng)
        bigger = from_facets(5, K1.facets() + [rng.sample(range(1, 6), 2)])
        small = Family((K1, K2))
        large = Family((bigger, K2))
        assert set(symm_deleted_join(small).cells()) <= set(symm_deleted_join(large).cells())
        assert set(deleted_join(small).cells()) <= set(deleted_join(large).cells())


def test_json_surfaces():
    fam = fixtures.tiny_family()
    assert read_family(fam.to_json()) == fam
    J = symm_deleted_join(fam)
    obj = J.to_json()
    assert obj["kind"] == "symmetrized-deleted-join"
    assert {"A": [[2], [1]], "B": []} in obj["cells"]["1"]
    assert fixtures.example_cell().to_json() == {"A": [[7, 8, 9], [3, 4], [1, 2]], "B": [5, 6]}
