"""End-to-end reproduction pipelines for the named examples.

Each pipeline returns a report ``{"name", "checks": [...], "pass"}`` whose
checks carry a boolean ``pass`` and a JSON-serializable ``detail``.
"""

from __future__ import annotations

import itertools
import random

from . import fixtures
from .complexes import alexander_dual, is_balanced
from .homology import profile_of, verify_connectivity_homology
from .joins import Family, deleted_join, symm_deleted_join
from .morse import (
    NoCertificate,
    build_matching,
    connectivity_lower_bound,
    critical_report,
    verify_acyclicity,
    verify_matching,
)
from .unavoidability import (
    is_collectively_unavoidable,
    is_collectively_unavoidable_bruteforce,
    skeleta_family,
    vkf_parameters,
)

TARGETS = ("bier-3-1", "example-3-2", "skeleta-3-4", "tiny-m2r2")


class Report:
    def __init__(self, name: str):
        self.name = name
        self.checks: list[dict] = []

    def check(self, name: str, ok: bool, detail=None) -> bool:
        self.checks.append({"name": name, "pass": bool(ok), "detail": detail})
        return bool(ok)

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def to_json(self) -> dict:
        return {"name": self.name, "checks": self.checks, "pass": self.passed}


def morse_certificate(J):
    """(matching ok, acyclic, report, certificate or None)."""
    G = build_matching(J)
    ok = verify_matching(J, G)
    acyclic = verify_acyclicity(J, G)
    rep = critical_report(J, G)
    try:
        cert = connectivity_lower_bound(rep, J.m, J.r)
    except NoCertificate:
        cert = None
    return G, ok, acyclic, rep, cert


def repro_tiny(seed: int) -> Report:
    rep = Report("tiny-m2r2")
    fam = fixtures.tiny_family()
    J = symm_deleted_join(fam)
    rep.check("cells", len(J) == 6, {"by_dim": J.counts_by_dim()})
    G, ok, acyclic, crit, cert = morse_certificate(J)
    pairs = [(str(p.lower), str(p.upper), p.step, p.pivot) for p in G.records()]
    expected = {
        ("({},{1};{2})", "({2},{1};{})", 1, 2),
        ("({},{2};{1})", "({1},{2};{})", 1, 1),
    }
    rep.check("matching", set(pairs) == expected, {"pairs": sorted(pairs)})
    rep.check("matching-valid", ok and acyclic)
    rep.check(
        "criticals",
        crit.holds and [str(c) for c in crit.large_criticals] == ["({2},{};{1})"],
        {"base": str(crit.base), "large": [str(c) for c in crit.large_criticals]},
    )
    rep.check("certificate", cert == -1, {"certificate": cert})
    prof = profile_of(J)
    rep.check("homology", prof.betti == [1, 0], prof.to_json())
    return rep


def repro_example_3_2(seed: int) -> Report:
    rep = Report("example-3-2")
    famK, famL = fixtures.example_family_K(), fixtures.example_family_L()
    for label, fam in (("K", famK), ("L", famL)):
        fast = is_collectively_unavoidable(fam)
        brute = is_collectively_unavoidable_bruteforce(fam)
        rep.check(
            f"unavoidable-{label}",
            fast.verdict and brute.verdict,
            {"fast": fast.to_json(), "brute": brute.to_json()},
        )
    cell = fixtures.example_cell()
    JL = symm_deleted_join(famL)
    JK = symm_deleted_join(famK)
    rep.check(
        "cell-separates",
        cell in JL and cell not in JK,
        {"cell": str(cell), "in_L": cell in JL, "in_K": cell in JK},
    )
    G, ok, acyclic, crit, cert = morse_certificate(JK)
    rep.check("matching-valid", ok and acyclic, {"cells": len(JK), "pairs": len(G.pairs)})
    rep.check("criticals-large", crit.holds, crit.to_json())
    rep.check("certificate", cert == 5, {"certificate": cert, "expected": 9 - 3 - 1})
    return rep


def repro_bier(seed: int, samples: int = 5) -> Report:
    rep = Report("bier-3-1")
    rng = random.Random(seed)
    for m, k in ((4, 1), (6, 2)):
        for s in range(samples):
            K = fixtures.random_balanced(m, k, rng)
            Ko = alexander_dual(K)
            fam = Family((K, Ko))
            tag = f"m{m}-sample{s}"
            rep.check(f"{tag}-dual-balanced", is_balanced(Ko, k))
            rep.check(f"{tag}-unavoidable", is_collectively_unavoidable_bruteforce(fam).verdict)
            J = symm_deleted_join(fam)
            _, ok, acyclic, crit, cert = morse_certificate(J)
            rep.check(
                f"{tag}-symm-certificate",
                ok and acyclic and cert == m - 3,
                {"certificate": cert, "expected": m - 3, "criticals": crit.to_json()},
            )
            rep.check(f"{tag}-symm-homology", verify_connectivity_homology(J, m - 3))
            prof = profile_of(deleted_join(fam))
            rep.check(f"{tag}-bier-sphere", prof.is_sphere(m - 2), prof.to_json())
    return rep


def compositions(m: int, r: int):
    """Size tuples (m_1..m_r), 0 <= m_i <= m, with m = sum + r - 1."""
    for sizes in itertools.product(range(m + 1), repeat=r):
        if sum(sizes) + r - 1 == m:
            yield sizes


def repro_skeleta(seed: int, max_m: int = 9) -> Report:
    rep = Report("skeleta-3-4")
    failures = []
    n = 0
    for r in (1, 2, 3):
        for m in range(1, max_m + 1):
            for sizes in compositions(m, r):
                n += 1
                if not is_collectively_unavoidable_bruteforce(skeleta_family(m, sizes).family).verdict:
                    failures.append([m, list(sizes)])
    rep.check("compositions-unavoidable", not failures, {"families": n, "failures": failures})
    for r in (2, 3):
        for m in range(r, 9):
            for sizes in compositions(m, r):
                if max(sizes) - min(sizes) > 1 or min(sizes) < 1:
                    continue
                J = symm_deleted_join(skeleta_family(m, sizes).family)
                _, ok, acyclic, crit, cert = morse_certificate(J)
                rep.check(
                    f"balanced-skeleta-m{m}-{''.join(map(str, sizes))}",
                    ok and acyclic and cert is not None and cert >= m - r - 1,
                    {"certificate": cert, "bound": m - r - 1},
                )
    bad = []
    for r in (2, 3, 4, 5):
        for d in range(1, 7):
            for k in range(0, 2 * d + 2):
                for s in range(r):
                    v = vkf_parameters(r, d, k, s)
                    if not v.equivalence_holds:
                        bad.append([r, d, k, s])
    rep.check("vkf-equivalence", not bad, {"failures": bad})
    return rep


def run(name: str, seed: int = fixtures.SEED) -> Report:
    if name == "tiny-m2r2":
        return repro_tiny(seed)
    if name == "example-3-2":
        return repro_example_3_2(seed)
    if name == "bier-3-1":
        return repro_bier(seed)
    if name == "skeleta-3-4":
        return repro_skeleta(seed)
    raise KeyError(name)

