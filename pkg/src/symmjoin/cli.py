"""Command-line front end.

Exit codes: 0 success, 2 usage, 3 unreadable input, 4 cell cap exceeded,
5 a certificate or verdict failed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from . import fixtures, kernels, repro
from .complexes import (
    ParameterError,
    alexander_dual,
    from_facets,
    is_balanced,
    read_json,
    rp2_minimal,
    skeleton,
)
from .homology import chain_complex, homology_profile
from .joins import CapExceeded, Family, deleted_join, estimate_cells, read_family, symm_deleted_join
from .morse import (
    NoCertificate,
    build_matching,
    connectivity_lower_bound,
    critical_report,
    emit_dot,
    passport_monotone_check,
    verify_acyclicity,
    verify_matching,
)
from .unavoidability import (
    is_collectively_unavoidable,
    is_collectively_unavoidable_bruteforce,
    skeleta_family,
)

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_CAP, EXIT_CERT = 0, 2, 3, 4, 5
DEFAULT_MAX_CELLS = 5_000_000


class InputError(Exception):
    pass


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def emit(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def _load_json(source: str):
    try:
        with open(source) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{source} is not valid JSON: {exc}") from exc


def load_complex(source: str):
    if source in fixtures.COMPLEXES:
        return fixtures.COMPLEXES[source]()
    try:
        return read_json(_load_json(source))
    except ParameterError as exc:
        raise InputError(str(exc)) from exc


def load_family(args) -> Family:
    if getattr(args, "skeleta", None):
        if args.m is None:
            raise InputError("--skeleta needs --m")
        sizes = [int(x) for x in args.skeleta.split(",")]
        if args.r is not None and args.r != len(sizes):
            raise InputError(f"--r {args.r} does not match {len(sizes)} skeleton sizes")
        return skeleta_family(args.m, sizes).family
    source = args.input
    if source is None:
        raise InputError("a family file, builtin name or --skeleta is required")
    if source in fixtures.FAMILIES:
        return fixtures.FAMILIES[source]()
    try:
        return read_family(_load_json(source))
    except ParameterError as exc:
        raise InputError(str(exc)) from exc


def _check_cap(fam: Family, max_cells: int) -> None:
    if estimate_cells(fam.m, fam.r) > max_cells:
        raise CapExceeded(
            f"(r+1)^m = {estimate_cells(fam.m, fam.r)} exceeds --max-cells {max_cells}"
        )


def _join(fam: Family, kind: str, max_cells: int):
    _check_cap(fam, max_cells)
    return symm_deleted_join(fam) if kind == "symmetric" else deleted_join(fam)


def cmd_complex(args) -> int:
    if args.what == "skeleton":
        if args.m is None or args.card is None:
            raise InputError("skeleton needs --m and --card")
        K = skeleton(args.m, args.card)
    elif args.what == "rp2":
        K = rp2_minimal()
    elif args.what == "dual":
        K = alexander_dual(load_complex(args.input))
    else:
        if args.input:
            K = load_complex(args.input)
        else:
            if args.m is None or args.facets is None:
                raise InputError("from-facets needs an input file or --m and --facets")
            try:
                K = from_facets(args.m, json.loads(args.facets))
            except (json.JSONDecodeError, ParameterError) as exc:
                raise InputError(str(exc)) from exc
    emit(K.to_json(), args.out)
    return EXIT_OK


def cmd_check(args) -> int:
    if args.what == "balanced":
        K = load_complex(args.input)
        if args.k is None:
            raise InputError("balanced needs --k")
        ok = is_balanced(K, args.k)
        emit({"balanced": ok, "m": K.m, "k": args.k}, args.out)
        return EXIT_OK if ok else EXIT_CERT
    fam = load_family(args)
    if args.method == "brute":
        cert = is_collectively_unavoidable_bruteforce(fam)
    elif args.method == "deficiency":
        cert = is_collectively_unavoidable(fam, args.k)
        if cert.method == "brute":
            raise InputError("family is not balanced; the deficiency method does not apply")
    else:
        cert = is_collectively_unavoidable(fam, args.k)
    emit(cert.to_json(), args.out)
    return EXIT_OK if cert.verdict else EXIT_CERT


def cmd_join(args) -> int:
    fam = load_family(args)
    J = _join(fam, args.kind, args.max_cells)
    emit(J.to_json(), args.out)
    return EXIT_OK


def cmd_morse(args) -> int:
    fam = load_family(args)
    J = _join(fam, args.kind, args.max_cells)
    G = build_matching(J)
    matching_ok = verify_matching(J, G)
    acyclic = verify_acyclicity(J, G)
    rep = critical_report(J, G)
    try:
        cert = connectivity_lower_bound(rep, fam.m, fam.r)
    except NoCertificate:
        cert = None
    out = {
        "m": fam.m,
        "r": fam.r,
        "kind": J.kind,
        "cells": len(J),
        "pairs": len(G.pairs),
        "matching_valid": matching_ok,
        "acyclic": acyclic,
        "criticals": rep.to_json(),
        "certificate": cert,
        "theorem_bound": fam.m - fam.r - 1,
        "note": "connectivity via critical cells; homology is an independent partial check",
    }
    if args.passports:
        out["passports_monotone"] = passport_monotone_check(J, G, args.budget)
    if args.emit_dot:
        write_atomic(args.emit_dot, emit_dot(J, G))
    emit(out, args.out)
    good = matching_ok and acyclic and cert is not None and out.get("passports_monotone", True)
    return EXIT_OK if good else EXIT_CERT


def _homology_target(args):
    if args.join or args.skeleta or args.input in fixtures.FAMILIES:
        return _join(load_family(args), args.join or "symmetric", args.max_cells)
    if args.input is None:
        raise InputError("homology needs an input complex or family")
    if args.input in fixtures.COMPLEXES:
        return fixtures.COMPLEXES[args.input]()
    obj = _load_json(args.input)
    try:
        if isinstance(obj, dict) and "complexes" in obj:
            return _join(read_family(obj), "symmetric", args.max_cells)
        return read_json(obj)
    except ParameterError as exc:
        raise InputError(str(exc)) from exc


def cmd_homology(args) -> int:
    C = chain_complex(_homology_target(args))
    if not C.boundary_squared_is_zero():
        raise AssertionError("boundary of boundary is nonzero")
    prof = homology_profile(C, args.max_dim)
    if args.dump_matrices:
        os.makedirs(args.dump_matrices, exist_ok=True)
        for d in range(len(C.bases) - 1):
            write_atomic(os.path.join(args.dump_matrices, f"boundary_{d}.txt"), C.triplets(d))
    emit(prof.to_json(), args.out)
    return EXIT_OK


def cmd_repro(args) -> int:
    rep = repro.run(args.name, args.seed)
    emit(rep.to_json(), args.out)
    return EXIT_OK if rep.passed else EXIT_CERT


def cmd_info(args) -> int:
    emit({"backend": kernels.BACKEND}, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="symmjoin", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, family=False):
        sp.add_argument("--out", help="write JSON here instead of stdout")
        sp.add_argument("--seed", type=int, default=fixtures.SEED)
        sp.add_argument("--m", type=int)
        sp.add_argument("--k", type=int)
        sp.add_argument("--r", type=int)
        if family:
            sp.add_argument("input", nargs="?", help="family JSON file or builtin name")
            sp.add_argument("--skeleta", help="comma-separated skeleton cardinalities, with --m")
            sp.add_argument("--max-cells", type=int, default=DEFAULT_MAX_CELLS)

    sp = sub.add_parser("complex", help="build a complex")
    sp.add_argument("what", choices=["skeleton", "dual", "rp2", "from-facets"])
    sp.add_argument("input", nargs="?")
    sp.add_argument("--card", type=int, help="largest face cardinality for skeleton")
    sp.add_argument("--facets", help="JSON list of facets for from-facets")
    common(sp)
    sp.set_defaults(func=cmd_complex)

    sp = sub.add_parser("check", help="balanced / unavoidable predicates")
    sp.add_argument("what", choices=["balanced", "unavoidable"])
    sp.add_argument("--method", choices=["auto", "brute", "deficiency"], default="auto")
    common(sp, family=True)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("join", help="materialize a (symmetrized) deleted join")
    sp.add_argument("kind", choices=["deleted", "symmetric"])
    common(sp, family=True)
    sp.set_defaults(func=cmd_join)

    sp = sub.add_parser("morse", help="build and certify the pivot matching")
    sp.add_argument("--kind", choices=["deleted", "symmetric"], default="symmetric")
    sp.add_argument("--emit-dot", metavar="PATH")
    sp.add_argument("--passports", action="store_true", help="also check passport monotonicity")
    sp.add_argument("--budget", type=int, default=10**6, help="path-step budget for --passports")
    common(sp, family=True)
    sp.set_defaults(func=cmd_morse)

    sp = sub.add_parser("homology", help="reduced integral homology")
    sp.add_argument("--join", choices=["deleted", "symmetric"], help="treat input as a family")
    sp.add_argument("--max-dim", type=int)
    sp.add_argument("--dump-matrices", metavar="DIR")
    common(sp, family=True)
    sp.set_defaults(func=cmd_homology)

    sp = sub.add_parser("repro", help="run a named end-to-end reproduction")
    sp.add_argument("name", choices=repro.TARGETS)
    common(sp)
    sp.set_defaults(func=cmd_repro)

    sp = sub.add_parser("info", help="report the kernel backend")
    common(sp)
    sp.set_defaults(func=cmd_info)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
