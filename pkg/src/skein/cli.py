"""Command-line front end.

Exit status: 0 on success, 1 when a computation fails or a check does not
pass, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from math import gcd

from . import cache
from .category import (
    COH,
    SPIN,
    TWIST_FAMILIES,
    build_params,
    curl_relation_failures,
    dimension_homomorphism_failures,
    identity_suite,
    twist_relation_failures,
    verlinde_failures,
)
from .dimensions import count_colorings, verlinde_dim
from .errors import CalibrationFailure, SkeinError
from .invariants import refined_table, structure_kind, tau
from .manifolds import load_forest, structures

log = logging.getLogger("skein")


class UsageError(Exception):
    pass


def _auto_mode(N: int, K: int) -> str:
    d = gcd(N, K)
    return SPIN if d % 2 == 0 and (N // d) % 2 and (K // d) % 2 else COH


def _category(args):
    mode = args.mode or _auto_mode(args.rank, args.level)
    p = build_params(args.rank, args.level, mode, args.alpha, args.a_exp)
    kwargs = {}
    if getattr(args, "twist_family", None):
        kwargs["families"] = tuple(args.twist_family)
    if getattr(args, "skip_curl_relation", False):
        kwargs["curl"] = False
    if getattr(args, "skip_regression", False):
        kwargs["regression"] = False
    cache_dir = getattr(args, "cache_dir", None) or cache.default_cache_dir()
    return cache.load_or_build(p, cache_dir, **kwargs)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=1) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


# --------------------------------------------------------------------------
# subcommands


def cmd_category(args) -> int:
    cat = _category(args)
    if args.json:
        sys.stdout.write(cache.dumps(cat))
        return 0
    p = cat.params
    lines = [
        f"reduced SU({p.N}) level {p.K}, mode {p.mode}: d={p.d} alpha={p.alpha} beta={p.beta}",
        f"root order M={p.M}, s=zeta^{p.s_exp}, a=zeta^{p.a_exp}, twist {cat.convention.describe(p)}",
        f"eta^-2 = {cat.ctx.eta_squared_inverse}",
        f"{'color':<24} {'grading':>7} {'twist':>9}  qdim",
    ]
    for x, c in enumerate(cat.colors):
        lines.append(f"{str(c):<24} {cat.grading[x]:>7} {'z^' + str(cat.twist_exp[x]):>9}  {cat.qdim[x]}")
    _emit(args, {}, "\n".join(lines))
    return 0


def _mode_for_structures(args) -> str:
    return {"spin": "spin_d", "coh": "cohomology"}[args.mode or "spin"]


def cmd_structures(args) -> int:
    forest = load_forest(args.manifold)
    d = gcd(args.rank, args.level)
    kind = _mode_for_structures(args)
    found = structures(forest, d, kind)
    payload = {
        "kind": kind,
        "modulus": d,
        "ids": forest.ids,
        "structures": [list(s.values) for s in found],
    }
    text = "\n".join([f"{len(found)} {kind} structure(s) mod {d} on vertices {forest.ids}"]
                     + [" ".join(map(str, s.values)) for s in found])
    _emit(args, payload, text)
    return 0


def cmd_invariant(args) -> int:
    forest = load_forest(args.manifold)
    cat = _category(args)
    payload: dict = {}
    if args.refined:
        table = refined_table(cat, forest, threads=args.threads)
        value = table.tau
        payload["tau_refined"] = [
            {"s": list(s), "value": v.normalized().to_json()} for s, v in table.tau_refined.items()
        ]
        payload["refined"] = [
            {"s": list(s), "h": list(h), "value": z.normalized().to_json()}
            for (s, h), z in table.entries.items()
        ]
        payload["tv"] = table.tv.normalized().to_json()
        payload["checks"] = table.checks
    else:
        value = tau(cat, forest, threads=args.threads)
    payload["tau"] = value.normalized().to_json()
    lines = [f"tau = {value.normalized()}"]
    if args.refined:
        kind = structure_kind(cat)
        for s, v in table.tau_refined.items():
            lines.append(f"tau({kind} {list(s)}) = {v.normalized()}")
        lines.append(f"TV = {table.tv.normalized()}")
        lines.extend(f"check {k}: {v}" for k, v in table.checks.items())
    _emit(args, payload, "\n".join(lines))
    return 0


def _parse_grading(text: str | None):
    if text is None:
        return None
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"bad grading vector {text!r}") from exc


def cmd_dims(args) -> int:
    grading = _parse_grading(args.grading)
    if grading is not None and len(grading) != args.genus:
        raise UsageError(f"grading vector has {len(grading)} entries, genus is {args.genus}")
    cat = _category(args)
    if grading is None:
        value = verlinde_dim(cat, args.genus)
        dp = count_colorings(cat, args.genus)
        if dp != value:
            raise SkeinError(f"spine count {dp} differs from the Verlinde formula {value}")
    else:
        value = count_colorings(cat, args.genus, grading)
    _emit(args, {"genus": args.genus, "grading": grading, "dimension": value}, str(value))
    return 0


def cmd_check(args) -> int:
    try:
        cat = _category(args)
    except CalibrationFailure as exc:
        survivors = exc.survivors
        payload = {"calibration": "fail", "message": str(exc), "surviving_conventions": survivors}
        text = [f"FAIL calibration: {exc}"]
        text.append(f"surviving conventions ({len(survivors)}): " + (", ".join(survivors) or "none"))
        _emit(args, payload, "\n".join(text))
        return 1
    results = dict(identity_suite(cat))
    results["encircling"] = twist_relation_failures(cat)
    results["curl_relation"] = curl_relation_failures(cat)
    results["verlinde_fusion"] = verlinde_failures(cat)
    results["dimension_homomorphism"] = dimension_homomorphism_failures(cat)
    integrality = []
    for g in range(5):
        try:
            verlinde_dim(cat, g)
        except SkeinError as exc:
            integrality.append(str(exc))
    results["verlinde_integrality"] = integrality
    ok = all(not v for v in results.values())
    lines = [f"{'PASS' if not v else 'FAIL'} {k}" + (f": {v[0]}" if v else "") for k, v in results.items()]
    lines.append(f"calibration: {cat.calibration.get('chosen')}")
    payload = {
        "calibration": cat.calibration.get("chosen"),
        "checks": {k: ("pass" if not v else v) for k, v in results.items()},
        "ok": ok,
    }
    _emit(args, payload, "\n".join(lines))
    return 0 if ok else 1


# --------------------------------------------------------------------------
# parser


def _add_category_args(sp, mode_required=False):
    sp.add_argument("--rank", "-N", type=int, required=True, help="rank N of SU(N)")
    sp.add_argument("--level", "-K", type=int, required=True, help="level K")
    sp.add_argument("--mode", choices=[SPIN, COH], required=mode_required,
                    help="refinement type (default: spin when the spin conditions hold)")
    sp.add_argument("--alpha", type=int, help="factorization d = alpha*beta when several are valid")
    sp.add_argument("--a-exp", type=int, dest="a_exp", help="override the framing parameter a = zeta^a_exp")
    sp.add_argument("--cache-dir", help=f"category cache directory (default ${cache.CACHE_ENV})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="skein", description="Refined quantum invariants from the reduced SU(N,K) category.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("category", help="build and print the category tables")
    _add_category_args(sp)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_category)

    sp = sub.add_parser("structures", help="list spin^d structures or Z_d cohomology classes")
    sp.add_argument("--manifold", required=True, help="plumbing forest JSON file")
    sp.add_argument("--mode", choices=[SPIN, COH])
    sp.add_argument("--rank", "-N", type=int, default=2, help="rank; fixes d = gcd(N, K) (default 2)")
    sp.add_argument("--level", "-K", type=int, default=2, help="level; fixes d = gcd(N, K) (default 2)")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_structures)

    sp = sub.add_parser("invariant", help="compute tau and optionally the refined table")
    sp.add_argument("--manifold", required=True, help="plumbing forest JSON file")
    _add_category_args(sp)
    sp.add_argument("--refined", action="store_true")
    sp.add_argument("--threads", type=int, default=1)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_invariant)

    sp = sub.add_parser("dims", help="TQFT dimension of a closed genus-g surface")
    _add_category_args(sp)
    sp.add_argument("--genus", "-g", type=int, required=True)
    sp.add_argument("--grading", help="comma-separated grading of each loop, e.g. 0,1")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_dims)

    sp = sub.add_parser("check", help="run the identity suite; nonzero exit on failure")
    _add_category_args(sp)
    sp.add_argument("--twist-family", action="append", choices=list(TWIST_FAMILIES),
                    help="restrict calibration to a twist family (repeatable)")
    sp.add_argument("--skip-curl-relation", action="store_true",
                    help="do not use the kink relation to select the twist")
    sp.add_argument("--skip-regression", action="store_true",
                    help="do not use blow-down invariance during calibration")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verbose:
        logging.basicConfig(level=logging.INFO, format="%(name)s: %(message)s")
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be positive")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (SkeinError, OSError, ValueError) as exc:
        if getattr(args, "json", False):
            sys.stderr.write(json.dumps({"error": str(exc), "type": type(exc).__name__}) + "\n")
        else:
            sys.stderr.write(f"skein: error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
