"""Time the pure-Python and compiled kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import itertools
import time

import numpy as np

from symmjoin import _pykernels, fixtures
from symmjoin.unavoidability import skeleta_family

try:
    from symmjoin import _ckernels
except ImportError:
    _ckernels = None


def cases():
    yield "example-3-2-K (m=9, r=3)", fixtures.example_family_K()
    yield "skeleta 3,3 (m=7, r=2)", skeleta_family(7, (3, 3)).family
    yield "skeleta 2,2,2 (m=8, r=3)", skeleta_family(8, (2, 2, 2)).family


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    if _ckernels is None:
        print("compiled kernels not built; timing the Python fallback only")
    print(f"{'instance':28} {'kernel':16} " + " ".join(f"{n:>10}" for n, _ in backends) + "   speedup")
    for name, fam in cases():
        m, r = fam.m, fam.r
        perms = np.array(list(itertools.permutations(range(r))), dtype=np.int64)
        codes = _pykernels.enumerate_cells(m, r, fam.tables, True, perms)
        matching = _pykernels.build_matching(codes, m, r)
        jobs = {
            "enumerate": lambda k: k.enumerate_cells(m, r, fam.tables, True, perms),
            "match": lambda k: k.build_matching(codes, m, r),
            "find_cycle": lambda k: k.find_cycle(codes, matching[0], matching[3], m, r),
            "bruteforce": lambda k: k.bruteforce_witness(m, r, fam.tables),
        }
        for job, fn in jobs.items():
            times = [best_of(lambda: fn(k), args.repeat)[0] for _, k in backends]
            speed = f"{times[0] / times[1]:8.1f}x" if len(times) == 2 and times[1] > 0 else ""
            print(f"{name:28} {job:16} " + " ".join(f"{t:10.4f}" for t in times) + f"  {speed}")
        print(f"{'':28} {'cells':16} {len(codes):>10}")


if __name__ == "__main__":
    main()
