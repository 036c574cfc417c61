"""Command-line interface: instance ingestion, subcommand dispatch, and
deterministic JSON reports.

Exit codes: 0 success, 2 input or validation error, 3 numerical bracket
failure (so scripts can tell input problems from numerical ones).
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from .conjugate import conjugate
from .duality import (
    DualDensity,
    dual_functional_norm,
    luxemburg_norm_bruteforce,
    orlicz_norm_bruteforce,
)
from .errors import BracketError, MonormError
from .gallery import GalleryConfig, gallery_report
from .generators import generator_bounds
from .geometry import (
    EPS_EQ,
    check_space_smoothness,
    classify_smooth_point,
    construct_support_functional,
    smoothness_gap_function,
    verify_support_functional,
)
from .instance import Instance, parse_instance
from .jsonio import jsonable, to_json
from .norms import KSetNonEmpty, delta2_check, luxemburg_norm, orlicz_amemiya_norm, theta

__all__ = ["run", "main"]


def _eps_eq() -> float:
    scale = float(os.environ.get("MO_TOL_OVERRIDE", "1.0"))
    return EPS_EQ * scale


def _function(inst: Instance, name: str):
    try:
        return inst.functions[name]
    except KeyError:
        raise MonormError(
            f"instance has no function '{name}' (available: {sorted(inst.functions)})"
        ) from None


def _norm_entry(inst: Instance, name: str) -> dict:
    u = _function(inst, name)
    lux = luxemburg_norm(inst.phi, inst.space, u)
    orl, ks = orlicz_amemiya_norm(inst.phi, inst.space, u)
    entry = {
        "luxemburg": lux,
        "orlicz": orl,
        "amemiya": orl,
        "degenerate": ks.is_degenerate,
        "k_star": None,
        "k_double_star": None,
        "theta": theta(inst.phi, inst.space, u),
    }
    if isinstance(ks, KSetNonEmpty):
        entry["k_star"] = ks.k_star
        entry["k_double_star"] = ks.k_double_star
    return entry


def _cmd_norm(args) -> dict:
    inst = parse_instance(args.instance)
    names = sorted(inst.functions) if args.function == "all" else [args.function]
    results = {}
    for name in names:
        entry = _norm_entry(inst, name)
        if args.which in ("luxemburg", "orlicz", "amemiya"):
            keep = {args.which, "degenerate", "k_star", "k_double_star"}
            if args.which == "luxemburg":
                keep = {"luxemburg"}
            entry = {k: v for k, v in entry.items() if k in keep}
        results[name] = entry
    return {"digest": inst.digest, "functions": results}


def _cmd_conjugate(args) -> dict:
    inst = parse_instance(args.instance)
    if not 0 <= args.atom < len(inst.space):
        raise MonormError(f"atom index {args.atom} out of range")
    t = inst.space.coords[args.atom]
    conj = conjugate(inst.phi)
    a, b = generator_bounds(conj, t)
    table = []
    for j in range(args.points):
        v = args.v_max * j / max(1, args.points - 1)
        table.append({"v": v, "phi_star": conj.phi(t, v)})
    return {
        "digest": inst.digest,
        "atom": args.atom,
        "t": t,
        "zero_bound": a,
        "finite_bound": b,
        "table": table,
    }


def _cmd_dual(args) -> dict:
    inst = parse_instance(args.instance)
    v = _function(inst, args.density)
    d = DualDensity(v, args.singular)
    return {
        "digest": inst.digest,
        "density": args.density,
        "singular": args.singular,
        "norm": dual_functional_norm(inst.phi, inst.space, d),
    }


def _cmd_oracle(args) -> dict:
    inst = parse_instance(args.instance)
    u = _function(inst, args.function)
    orl_bf = orlicz_norm_bruteforce(inst.phi, inst.space, u, args.resolution)
    lux_bf = luxemburg_norm_bruteforce(inst.phi, inst.space, u, args.resolution)
    lux = luxemburg_norm(inst.phi, inst.space, u)
    orl, _ = orlicz_amemiya_norm(inst.phi, inst.space, u)
    return {
        "digest": inst.digest,
        "function": args.function,
        "resolution": args.resolution,
        "orlicz": orl,
        "orlicz_bruteforce": orl_bf,
        "orlicz_gap": orl - orl_bf,
        "luxemburg": lux,
        "luxemburg_bruteforce": lux_bf,
        "luxemburg_gap": lux - lux_bf,
    }


def _cmd_support(args) -> dict:
    inst = parse_instance(args.instance)
    u = _function(inst, args.function)
    eps = _eps_eq()
    sf = construct_support_functional(inst.phi, inst.space, u, eps_eq=eps)
    report = verify_support_functional(
        inst.phi, inst.space, u, DualDensity(sf.density, sf.s_norm), eps_eq=eps
    )
    return {
        "digest": inst.digest,
        "function": args.function,
        "density": list(sf.density.values),
        "s_norm": sf.s_norm,
        "norm_value": sf.norm_value,
        "achieved": sf.achieved,
        "limit_construct": sf.limit_construct,
        "verified": report.passed,
        "clauses": [
            {
                "name": c.name,
                "value": c.value,
                "target": c.target,
                "passed": c.passed,
                "note": c.note,
            }
            for c in report.clauses
        ],
    }


def _cmd_smooth_point(args) -> dict:
    inst = parse_instance(args.instance)
    u = _function(inst, args.function)
    rep = classify_smooth_point(inst.phi, inst.space, u, eps_eq=_eps_eq())
    return {
        "digest": inst.digest,
        "function": args.function,
        "smooth": rep.smooth,
        "branch": rep.branch,
        "conditions": {
            k: {"value": c.value, "target": c.target, "passed": c.passed}
            for k, c in rep.conditions.items()
        },
        "witnesses": None
        if rep.witnesses is None
        else [list(w.values) for w in rep.witnesses],
        "note": rep.note,
    }


def _cmd_smooth_space(args) -> dict:
    inst = parse_instance(args.instance)
    rep = check_space_smoothness(inst.phi, inst.space, eps_eq=_eps_eq())
    return {
        "digest": inst.digest,
        "smooth": rep.smooth,
        "conditions": {
            "a": {"passed": rep.cond_a.passed, "name": rep.cond_a.name},
            "b": {"passed": rep.cond_b.passed, "name": rep.cond_b.name, "note": rep.cond_b.note},
            "c": {"passed": rep.cond_c.passed, "name": rep.cond_c.name},
        },
        "failing": sorted(rep.failing()),
    }


def _cmd_delta2(args) -> dict:
    inst = parse_instance(args.instance)
    f = _function(inst, args.f_function) if args.f_function else args.f_const
    verdict = delta2_check(
        inst.phi, inst.space, args.K, f, u_max=args.horizon
    )
    out = {
        "digest": inst.digest,
        "K": args.K,
        "holds_on_sample": verdict.holds,
        "checked": verdict.checked,
    }
    if verdict.witness is not None:
        w = verdict.witness
        out["witness"] = {
            "t": w.t,
            "u": w.u,
            "phi_2u": w.lhs,
            "K_phi_u": w.rhs,
            "ratio": w.ratio,
        }
    return out


def _cmd_gap(args) -> dict:
    inst = parse_instance(args.instance)
    prof = smoothness_gap_function(inst.phi, inst.space, args.delta)
    return {
        "digest": inst.digest,
        "delta": args.delta,
        "locations": list(prof.locations),
        "finite_mask": list(prof.finite_mask),
    }


def _cmd_gallery(args) -> dict:
    ladder = tuple(int(x) for x in args.ladder.split(","))
    return gallery_report(GalleryConfig(resolutions=ladder))


def _cmd_selftest(args) -> dict:
    from .selfcheck import run_all

    results = run_all(verbose=not args.json)
    report = {"passed": all(r.passed for r in results)}
    if args.json:
        report["criteria"] = [
            {"name": r.name, "passed": r.passed, "detail": r.detail} for r in results
        ]
    return report


def _render_text(report: dict, indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    for key, value in report.items():
        value = jsonable(value)
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.append(_render_text(value, indent + 1))
        elif isinstance(value, list):
            lines.append(f"{pad}{key}: {value}")
        else:
            lines.append(f"{pad}{key}: {value}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monorm",
        description="Musielak-Orlicz norm computations on grid instances",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        return p

    p = add("norm", _cmd_norm, help="Luxemburg/Orlicz/Amemiya norms and theta")
    p.add_argument("--instance", required=True)
    p.add_argument("--function", required=True, help="function name or 'all'")
    p.add_argument(
        "--which",
        choices=["luxemburg", "orlicz", "amemiya", "all"],
        default="all",
    )

    p = add("conjugate", _cmd_conjugate, help="table of conjugate values at one atom")
    p.add_argument("--instance", required=True)
    p.add_argument("--atom", type=int, default=0)
    p.add_argument("--v-max", type=float, default=4.0)
    p.add_argument("--points", type=int, default=9)

    p = add("dual", _cmd_dual, help="norm of a dual functional (density + singular mass)")
    p.add_argument("--instance", required=True)
    p.add_argument("--density", required=True)
    p.add_argument("--singular", type=float, default=0.0)

    p = add("oracle", _cmd_oracle, help="brute-force dual-norm oracles vs analytic values")
    p.add_argument("--instance", required=True)
    p.add_argument("--function", required=True)
    p.add_argument("--resolution", type=int, default=400)

    p = add("support", _cmd_support, help="construct and verify a support functional")
    p.add_argument("--instance", required=True)
    p.add_argument("--function", required=True)

    p = add("smooth-point", _cmd_smooth_point, help="classify a smooth point")
    p.add_argument("--instance", required=True)
    p.add_argument("--function", required=True)

    p = add("smooth-space", _cmd_smooth_space, help="space smoothness criterion")
    p.add_argument("--instance", required=True)

    p = add("delta2", _cmd_delta2, help="sampled doubling-condition check")
    p.add_argument("--instance", required=True)
    p.add_argument("--K", type=float, required=True)
    p.add_argument("--f-const", type=float, default=0.0)
    p.add_argument("--f-function", default=None)
    p.add_argument("--horizon", type=float, default=16.0)

    p = add("gap", _cmd_gap, help="first derivative-gap location per atom")
    p.add_argument("--instance", required=True)
    p.add_argument("--delta", type=float, required=True)

    p = add("gallery", _cmd_gallery, help="variable-exponent divergence gallery")
    p.add_argument("--ladder", default="256,1024,4096")

    p = add("selftest", _cmd_selftest, help="run the acceptance criteria")
    return parser


def run(argv) -> int:
    """Dispatch a command line; returns the exit code and prints the report."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    started = time.perf_counter()
    try:
        report = args.fn(args)
    except BracketError as exc:
        print(f"numerical bracket failure: {exc}", file=sys.stderr)
        return 3
    except MonormError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = {"command": args.command, **report}
    if args.json:
        print(to_json(report))
    else:
        print(_render_text(report))
        elapsed = time.perf_counter() - started
        print(f"wall_time_s: {elapsed:.3f}")
    if args.command == "selftest" and not report["passed"]:
        return 1
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))
