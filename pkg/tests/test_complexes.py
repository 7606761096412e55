import itertools
import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symmjoin.complexes import (
    Complex,
    ParameterError,
    alexander_dual,
    balanced_from_missing,
    from_facets,
    is_balanced,
    read_json,
    rp2_minimal,
    skeleton,
    to_mask,
)
from symmjoin.homology import profile_of

from conftest import random_complex


def brute_dual(K):
    m = K.m
    ground = set(range(1, m + 1))
    out = set()
    for c in range(m + 1):
        for s in itertools.combinations(range(1, m + 1), c):
            if tuple(sorted(ground - set(s))) not in K:
                out.add(s)
    return out


def as_sets(K):
    return {tuple(sorted(f)) for f in (tuple(v for v in range(1, K.m + 1) if mask >> (v - 1) & 1) for mask in K.faces)}


def test_skeleton_counts():
    assert len(skeleton(4, 2)) == 1 + 4 + 6
    assert skeleton(3, 0).faces == frozenset({0})
    assert len(skeleton(3, 3)) == 8


@pytest.mark.parametrize("c", [-1, 5])
def test_skeleton_rejects_bad_cardinality(c):
    with pytest.raises(ParameterError):
        skeleton(4, c)


def test_is_balanced_examples():
    assert is_balanced(skeleton(4, 2), 1)
    assert is_balanced(skeleton(4, 1), 1)
    K = from_facets(4, [[2], [3], [4]])
    assert not is_balanced(K, 1)


def test_dual_of_skeleton_brute_force():
    K = skeleton(5, 2)
    assert as_sets(alexander_dual(K)) == brute_dual(K)
    assert alexander_dual(K) == skeleton(5, 2)


@pytest.mark.parametrize("m", range(1, 7))
def test_skeleton_duality(m):
    for c in range(m):
        assert alexander_dual(skeleton(m, c)) == skeleton(m, m - c - 1)


def test_dual_of_one_missing_edge():
    K = balanced_from_missing(4, 1, [[3, 4]])
    assert sorted(alexander_dual(K).facets()) == [(1, 2), (3,), (4,)]


def test_dual_of_full_simplex_is_empty():
    assert alexander_dual(skeleton(3, 3)).is_empty


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.randoms(use_true_random=False))
def test_duality_is_involution(m, rnd):
    K = random_complex(m, rnd)
    if len(K) == 2**m:
        return
    D = alexander_dual(K)
    assert D.is_downward_closed()
    assert as_sets(D) == brute_dual(K)
    assert alexander_dual(D) == K


@pytest.mark.parametrize("k", [0, 1, 2])
def test_balanced_duals_stay_balanced(k):
    m = 2 * k + 2
    rng = random.Random(k)
    for _ in range(20):
        pool = list(itertools.combinations(range(1, m + 1), k + 1))
        K = balanced_from_missing(m, k, rng.sample(pool, rng.randint(0, len(pool))))
        assert is_balanced(alexander_dual(K), k)


def test_downward_closure_exhaustive():
    rng = random.Random(7)
    for m in (6, 9, 12):
        K = random_complex(m, rng, p=0.3)
        assert K.is_downward_closed()


class TestRP2:
    def test_counts(self):
        D = rp2_minimal()
        assert D.f_vector() == [1, 6, 15, 10]
        assert len(D.facets()) == 10
        assert D.euler_characteristic() == 1

    def test_self_dual_complementarity(self):
        D = rp2_minimal()
        for s in itertools.combinations(range(1, 7), 3):
            comp = tuple(sorted(set(range(1, 7)) - set(s)))
            assert (s in D) != (comp in D)
        assert alexander_dual(D) == D

    def test_torsion(self):
        prof = profile_of(rp2_minimal())
        assert prof.betti == [0, 0, 0]
        assert prof.torsion == [[], [2], []]


def test_from_facets_closure():
    K = from_facets(3, [[1, 2]])
    assert as_sets(K) == {(), (1,), (2,), (1, 2)}
    assert from_facets(3, []).is_empty
    assert from_facets(3, [[]]).faces == frozenset({0})


def test_from_facets_rejects_out_of_range():
    with pytest.raises(ParameterError):
        from_facets(3, [[1, 4]])


def test_example_K1_membership():
    pairs = [list(p) for p in itertools.combinations(range(1, 10), 2)]
    triples = [list(t) for t in itertools.combinations(range(1, 10), 3) if t != (7, 8, 9)]
    K1 = from_facets(9, pairs + triples)
    assert (7, 8, 9) not in K1
    assert K1.contains([1, 2, 3])
    assert () in K1
    assert not skeleton(4, 2).contains([1, 2, 3])


def test_json_round_trip():
    K = from_facets(5, [[3, 1], [2, 5, 4], [5]])
    obj = K.to_json()
    assert obj == {"m": 5, "facets": [[1, 3], [2, 4, 5]]}
    assert read_json(json.dumps(obj)) == K


def test_mask_helpers():
    assert to_mask([1, 3]) == 0b101
    with pytest.raises(ParameterError):
        to_mask([2, 2])
    with pytest.raises(ParameterError):
        Complex(31, frozenset())
