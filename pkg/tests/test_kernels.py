import itertools
import os
import random
import subprocess
import sys

import numpy as np
import pytest

from symmjoin import _pykernels, kernels
from symmjoin.complexes import skeleton
from symmjoin.joins import Family, encode, JoinCell

from conftest import _ckernels, random_complex

needs_c = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")


def perms(r):
    return np.array(list(itertools.permutations(range(r))), dtype=np.int64)


def random_family(m, r, rng, p=0.6):
    return Family(tuple(random_complex(m, rng, p) for _ in range(r)))


@needs_c
@pytest.mark.parametrize("seed", range(12))
def test_backends_agree(seed):
    rng = random.Random(seed)
    m, r = rng.randint(2, 8), rng.randint(1, 3)
    fam = random_family(m, r, rng)
    for symmetric in (True, False):
        a = _pykernels.enumerate_cells(m, r, fam.tables, symmetric, perms(r))
        b = _ckernels.enumerate_cells(m, r, fam.tables, symmetric, perms(r))
        assert np.array_equal(a, b)
        ma = _pykernels.build_matching(a, m, r)
        mb = _ckernels.build_matching(a, m, r)
        for x, y in zip(ma, mb):
            assert np.array_equal(np.asarray(x), np.asarray(y))
        partner, _, _, is_lower = ma
        assert _pykernels.find_cycle(a, partner, is_lower, m, r) == []
        assert list(_ckernels.find_cycle(a, partner, is_lower, m, r)) == []
    wa = _pykernels.bruteforce_witness(m, r, fam.tables)
    wb = _ckernels.bruteforce_witness(m, r, fam.tables)
    assert (wa is None) == (wb is None)
    if wa is not None:
        assert np.array_equal(wa, wb)


def test_cycle_detected(backend):
    # triangle boundary as a one-block join: {1}->{12}->{2}->{23}->{3}->{13}->{1}
    fam = Family((skeleton(3, 2),))
    codes = backend.enumerate_cells(3, 1, fam.tables, False, perms(1))
    index = {int(c): i for i, c in enumerate(codes)}
    enc = lambda *vs: index[encode(JoinCell.make(3, [list(vs)]), 1)]  # noqa: E731
    partner = np.full(len(codes), -1, dtype=np.int64)
    is_lower = np.zeros(len(codes), dtype=np.uint8)
    for lo, hi in ((enc(1), enc(1, 2)), (enc(2), enc(2, 3)), (enc(3), enc(1, 3))):
        partner[lo], partner[hi] = hi, lo
        is_lower[lo] = 1
    cycle = list(backend.find_cycle(codes, partner, is_lower, 3, 1))
    assert sorted(cycle) == sorted([enc(1), enc(2), enc(3)])


def test_witness_none_for_unavoidable(backend):
    K = skeleton(4, 2)
    assert backend.bruteforce_witness(4, 2, Family((K, K)).tables) is None
    w = backend.bruteforce_witness(4, 2, Family((skeleton(4, 1), skeleton(4, 1))).tables)
    assert w is not None and sorted(np.bincount(w, minlength=2)) == [2, 2]


def test_active_backend_reported():
    assert kernels.BACKEND in ("cython", "python")
    assert kernels.active is (kernels.compiled or kernels.pure)


def test_pure_switch():
    env = dict(os.environ, SYMMJOIN_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", "from symmjoin import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
