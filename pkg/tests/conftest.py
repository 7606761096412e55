import itertools
import random
import sys

import pytest

from symmjoin import _pykernels
from symmjoin.complexes import from_facets, members
from symmjoin.joins import JoinCell

try:
    from symmjoin import _ckernels
except ImportError:  # extension not built
    _ckernels = None


@pytest.fixture(params=["python", "cython"])
def backend(request):
    if request.param == "cython":
        if _ckernels is None:
            pytest.skip("compiled kernels not built")
        return _ckernels
    return _pykernels


@pytest.fixture
def rng():
    return random.Random(1234)


def random_complex(m, rng, p=0.5):
    """Downward closure of random facets; may be {∅} or the full simplex."""
    facets = [s for c in range(m + 1) for s in itertools.combinations(range(1, m + 1), c) if rng.random() < p / (c + 1)]
    return from_facets(m, facets or [[]])


def brute_cells(fam, symmetric):
    """Join cells by direct enumeration of all (r+1)^m labelings."""
    m, r = fam.m, fam.r
    out = set()
    for labels in itertools.product(range(r + 1), repeat=m):
        if not any(labels):
            continue
        blocks = [frozenset(v + 1 for v in range(m) if labels[v] == i + 1) for i in range(r)]
        perms = itertools.permutations(range(r)) if symmetric else [tuple(range(r))]
        if any(all(tuple(sorted(blocks[i])) in fam[p[i]] for i in range(r)) for p in perms):
            out.add(JoinCell.make(m, [sorted(b) for b in blocks]))
    return out


def cell_sets(cell):
    return tuple(frozenset(members(b)) for b in cell.blocks), frozenset(members(cell.rest))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
