"""Command-line front end.

Exit codes: 0 on success (including a clean "infeasible" verdict), 1 on usage
errors, and 2 exclusively for theorem violations, i.e. a proven identity
failing on a concrete instance.  Points in JSON output are 1-based; internal
permutations and ranks are 0-based Lehmer order.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from math import factorial

from . import birkhoff, engine, extremal, group_algebra, spectrum
from .characters import character_table
from .errors import TheoremViolation
from .group_algebra import GroupFunction, format_rational
from .partitions import (
    classify,
    dim_irrep,
    fat_list,
    format_partition,
    parse_partition,
)

CAPS = {
    "chartab": 12,
    "engine": 14,
    "group_algebra": 7,
    "rank": 6,
    "explicit": 5,
    "search": 6,
}


class UsageError(Exception):
    pass


def _cap(name: str) -> int:
    env = os.environ.get("SNSPEC_MAX_N")
    return int(env) if env else CAPS[name]


def _check_cap(n: int, name: str) -> None:
    cap = _cap(name)
    if n > cap:
        raise UsageError(f"n={n} exceeds the {name} cap of {cap} "
                         f"(set SNSPEC_MAX_N to override)")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fr(x) -> str:
    return format_rational(Fraction(x))


def _partition_out(p) -> list[int]:
    return list(p)


def _cmd_chartab(args):
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    _check_cap(args.n, "chartab")
    table = character_table(args.n)
    if args.format == "csv":
        lines = ["partition," + ",".join(format_partition(p) for p in table.partitions)]
        for p, row in zip(table.partitions, table.rows):
            lines.append(format_partition(p) + "," + ",".join(str(x) for x in row))
        return "\n".join(lines) + "\n", False
    return table.to_json(), True


def _spectrum_entries(eigs, labels):
    return [{"partition": _partition_out(p), "value": _fr(v), "class": labels[p]}
            for p, v in eigs.items()]


def _cmd_spectrum(args):
    if args.n < 2:
        raise UsageError("--n must be >= 2")
    _check_cap(args.n, "engine")
    if args.cls is not None:
        ct = parse_partition(args.cls)
        if sum(ct) != args.n:
            raise UsageError(f"class {args.cls} is not a partition of {args.n}")
        table = character_table(args.n)
        spec = spectrum.class_spectrum(ct, table)
        info = spectrum.class_info(ct)
        labels = {p: (classify(p, args.k) if args.n >= 2 * args.k + 1 else "")
                  for p in spec.eigenvalues}
        return {"n": args.n, "class": _partition_out(ct), "size": info.size,
                "parity": info.parity, "fixed_points": info.fixed_points,
                "eigenvalues": _spectrum_entries(spec.eigenvalues, labels)}, True
    report = spectrum.fpf_spectrum(args.n, args.k)
    return {"n": args.n, "k": args.k,
            "classes": [_partition_out(c) for c in report.classes],
            "degree": report.degree,
            "eigenvalues": _spectrum_entries(report.eigenvalues, report.classification)}, True


def _cmd_build_y(args):
    if args.n <= 3 * args.k + 1:
        raise UsageError(f"build-y requires n > 3k+1 (n={args.n}, k={args.k})")
    _check_cap(args.n, "engine")
    table = character_table(args.n)
    combo, verdict = engine.build_y(args.n, args.k, args.variant, table)
    labels = {p: classify(p, args.k) for p in verdict.eigenvalues}
    return {"n": args.n, "k": args.k, "variant": args.variant,
            "generators": [_partition_out(g) for g, _ in combo.terms],
            "coefficients": [_fr(c) for _, c in combo.terms],
            "omega": _fr(verdict.omega),
            "spectrum": _spectrum_entries(verdict.eigenvalues, labels),
            "max_medium_abs": None if verdict.max_medium_abs is None
                              else _fr(verdict.max_medium_abs),
            "verdict": verdict.flags}, True


def _cmd_probe(args):
    if args.n <= 2 * args.k:
        raise UsageError(f"probe requires n > 2k (n={args.n}, k={args.k})")
    _check_cap(args.n, "engine")
    result = engine.feasibility_probe(args.n, args.k)
    out = {"n": args.n, "k": args.k, "feasible": result.feasible,
           "classes": [_partition_out(c) for c in result.classes]}
    if result.feasible:
        out["witness"] = [{"class": _partition_out(c), "coefficient": _fr(v)}
                          for c, v in result.witness.items()]
    else:
        out["certificate"] = [{"partition": _partition_out(p), "constraint": kind,
                               "multiplier": _fr(v)}
                              for p, kind, v in result.certificate]
    return out, True


def _cmd_hoffman(args):
    if not args.n > args.k >= 1:
        raise UsageError("need n > k >= 1")
    w = engine.omega(args.n, args.k)
    ratio = engine.hoffman_ratio(Fraction(1), w)
    out = {"n": args.n, "k": args.k, "omega": _fr(w), "ratio": _fr(ratio),
           "family_bound": factorial(args.n - args.k)}
    if args.cross:
        xr = engine.cross_ratio(Fraction(1), abs(w))
        out["cross_ratio"] = _fr(xr)
        out["product_bound"] = factorial(args.n - args.k) ** 2
    return out, True


def _cmd_vk(args):
    if args.n < args.k + 1:
        raise UsageError("need n > k")
    fats = fat_list(args.n, args.k)
    expected = sum(dim_irrep(p) ** 2 for p in fats)
    out = {"n": args.n, "k": args.k,
           "fat_partitions": [_partition_out(p) for p in fats],
           "dimension": expected}
    if args.check_rank:
        _check_cap(args.n, "rank")
        rank = group_algebra.coset_span_rank(args.n, args.k)
        out["rank"] = rank
        out["match"] = rank == expected
    return out, True


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _cmd_peel(args):
    data = _load_json(args.input)
    f = GroupFunction.from_json(data)
    if f.n != args.n:
        raise UsageError(f"--n {args.n} does not match input file n={f.n}")
    _check_cap(args.n, "rank")
    labels = birkhoff.boolean_peel(f, args.k)
    return {"n": args.n, "k": args.k,
            "cosets": [{"sources": [x + 1 for x in lab.sources],
                        "targets": [x + 1 for x in lab.targets]}
                       for lab in labels]}, True


def _cmd_birkhoff(args):
    data = _load_json(args.input)
    m = birkhoff.TupleMatrix.from_json(data)
    if args.check:
        ok, reason = birkhoff.check_k_bistochastic(m)
        out = {"n": m.n, "k": m.k, "k_bistochastic": ok}
        if not ok:
            out["reason"] = reason
        return out, True
    terms = (birkhoff.birkhoff_decompose(m) if m.k == 1
             else birkhoff.gen_birkhoff_decompose(m))
    return {"n": m.n, "k": m.k,
            "terms": [{"weight": _fr(w), "sigma": [x + 1 for x in s]}
                      for w, s in terms]}, True


def _cmd_search(args):
    if not 1 <= args.k < args.n:
        raise UsageError("need 1 <= k < n")
    _check_cap(args.n, "search")
    report = extremal.max_k_intersecting(args.n, args.k,
                                         all_extremal=args.all_extremal,
                                         symmetry_reduce=args.symmetry_reduce)
    return {"n": args.n, "k": args.k, "max_size": report.max_size,
            "family_count": len(report.families),
            "all_are_cosets": report.all_are_cosets,
            "families": [list(f) for f in report.families]}, True


def _cmd_certify(args):
    if args.mode == "cyclic":
        if args.n is None:
            raise UsageError("cyclic mode needs --n")
        cert = extremal.sharply_transitive_certificate("cyclic", n=args.n)
    else:
        if args.q is None:
            raise UsageError("affine mode needs --q")
        cert = extremal.sharply_transitive_certificate("affine", q=args.q)
    return {"mode": cert.mode, "n": cert.n,
            "cells": [list(c) for c in cert.cells],
            "cell_count": len(cert.cells),
            "agreement_bound": cert.agreement_bound,
            "max_internal_agreement": cert.max_internal_agreement,
            "verified": cert.verified}, True


def build_parser() -> _Parser:
    parser = _Parser(prog="snspec", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chartab", help="exact character table")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=_cmd_chartab)

    p = sub.add_parser("spectrum", help="Cayley spectra of agreement graphs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--class", dest="cls", default=None,
                   help='single class like "3+2"')
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("build-y", help="weighted pseudo-adjacency construction")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--variant", choices=["even", "odd", "combined"],
                   default="combined")
    p.set_defaults(func=_cmd_build_y)

    p = sub.add_parser("probe", help="exact LP feasibility of the eigenvalue design")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=_cmd_probe)

    p = sub.add_parser("hoffman", help="ratio bounds from the designed spectrum")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--cross", action="store_true")
    p.set_defaults(func=_cmd_hoffman)

    p = sub.add_parser("vk", help="span of coset indicators")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--check-rank", action="store_true")
    p.set_defaults(func=_cmd_vk)

    p = sub.add_parser("peel", help="write a Boolean function as disjoint cosets")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--input", required=True)
    p.set_defaults(func=_cmd_peel)

    p = sub.add_parser("birkhoff", help="check or decompose a tuple matrix")
    p.add_argument("--input", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--check", action="store_true")
    group.add_argument("--decompose", action="store_true")
    p.set_defaults(func=_cmd_birkhoff)

    p = sub.add_parser("search", help="exhaustive extremal families")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--all-extremal", action="store_true")
    p.add_argument("--symmetry-reduce", action="store_true")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("certify", help="sharply transitive partition certificates")
    p.add_argument("--mode", choices=["cyclic", "affine"], required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--q", type=int, default=None)
    p.set_defaults(func=_cmd_certify)

    return parser


def dispatch(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        payload, as_json = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except TheoremViolation as exc:
        print(json.dumps({"theorem_violation": True, "message": str(exc)}))
        return 2
    if as_json:
        print(json.dumps(payload))
    else:
        sys.stdout.write(payload)
    return 0


def main(argv=None) -> int:
    return dispatch(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
