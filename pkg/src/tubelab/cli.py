"""Command line driver.

Exit codes: 0 success, 2 configuration or guard error, 3 mathematical
condition failed, 4 numerical convergence failure.  All floating-point output
uses 17 significant digits so reports are diffable; there is no RNG anywhere,
so identical invocations produce identical files.
"""

from __future__ import annotations

import argparse
import configparser
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import catalog
from .curvature import gray_vanhecke_A, gray_vanhecke_B_einstein_geodesic, stein_check
from .curves import (
    CurveSpec,
    arc_r3,
    general_curve_tube_volume,
    great_circle_s3,
    line_r3,
    small_circle_s3,
)
from .damek_ricci import (
    DamekRicciSpace,
    build_heisenberg,
    euler_arnold_residual,
    tube_surface_area,
    tube_volume_closed_form,
)
from .lie import ad_power_trace, ad_power_trace_eigen, so3_so3_symmetric_pair
from .quadrature import monomial_sphere_integral, sphere_area, sphere_rule
from .series import PoleGuardError, SeriesConvergenceError
from .tubes import geodesic_tube_volume, tube_property_scan
from .verify import ALL_CHECKS, run_checks

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CONDITION = 3
EXIT_CONVERGENCE = 4


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _output_dir() -> Path:
    return Path(os.environ.get("TUBELAB_OUTPUT_DIR", "."))


def _write_json(name: str, payload: dict) -> Path:
    path = _output_dir() / name
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    return path


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise ValueError(f"config file {path!r} not found or unreadable")
    merged = dict(parser.defaults())
    if parser.has_section("tubelab"):
        merged.update(dict(parser.items("tubelab")))
    return merged


def _merge_config(args: argparse.Namespace, config: dict, argv: list[str]):
    """Config fills any argument not given explicitly on the command line."""
    for key, raw in config.items():
        attr = key.replace("-", "_")
        if not hasattr(args, attr) or attr in ("func", "command", "config"):
            continue
        if f"--{key.replace('_', '-')}" in argv:
            continue  # explicit flag wins
        current = getattr(args, attr)
        if isinstance(current, bool):
            value = raw.lower() in ("1", "true", "yes", "on")
        elif isinstance(current, int):
            value = int(raw)
        elif isinstance(current, float):
            value = float(raw)
        else:
            value = raw
        setattr(args, attr, value)


def cmd_stein(args) -> int:
    R = catalog.get_space(args.space)
    report = stein_check(R)
    payload = {
        "space": args.space,
        "einstein_constant": report.einstein_constant,
        "einstein_deviation": report.einstein_deviation,
        "two_stein_constant": report.two_stein_constant,
        "two_stein_deviation": report.two_stein_deviation,
        "is_einstein": report.is_einstein(args.tol),
        "is_two_stein": report.is_two_stein(args.tol),
    }
    print(f"space {args.space}: einstein K = {_fmt(report.einstein_constant)} "
          f"(deviation {_fmt(report.einstein_deviation)})")
    print(f"  tr(R_u^2) = {_fmt(report.two_stein_constant)} "
          f"(deviation {_fmt(report.two_stein_deviation)})")
    if args.json:
        _write_json(args.json, payload)
    if not payload["is_two_stein"]:
        print("condition failed: not 2-stein")
        return EXIT_CONDITION
    return EXIT_OK


def _closed_form_reference(space: str, r: float, l: float) -> float | None:
    key = space.strip().lower()
    if key == "ch2":
        return tube_volume_closed_form(2, 1, r, l)
    import re

    m = re.fullmatch(r"(s|h|e|r)(\d+)", key)
    if m is None:
        return None
    kind, n = m.group(1), int(m.group(2))
    omega = sphere_area(n - 1) / (n - 1)
    if kind == "s":
        return omega * math.sin(r) ** (n - 1) * l
    if kind == "h":
        return omega * math.sinh(r) ** (n - 1) * l
    return omega * r ** (n - 1) * l


def cmd_tube(args) -> int:
    R = catalog.get_space(args.space)
    e = np.eye(R.dim)[args.e_index]
    volume, error = geodesic_tube_volume(R, e, args.r, args.l, degree=args.degree)
    print(f"tube volume: {_fmt(volume)} (error estimate {_fmt(error)})")
    payload = {
        "space": args.space,
        "r": args.r,
        "l": args.l,
        "volume": volume,
        "error_estimate": error,
    }
    code = EXIT_OK
    if error > max(1e-12, args.convergence_tol * abs(volume)):
        print("convergence failure: error estimate above tolerance")
        code = EXIT_CONVERGENCE
    if args.compare == "closed-form":
        ref = _closed_form_reference(args.space, args.r, args.l)
        if ref is None:
            raise ValueError(f"no closed form available for space {args.space!r}")
        rel = abs(volume - ref) / ref
        payload["reference"] = ref
        payload["rel_err"] = rel
        print(f"closed form: {_fmt(ref)} (relative error {_fmt(rel)})")
        if rel > args.tol:
            print("condition failed: closed-form mismatch")
            code = EXIT_CONDITION
    if args.json:
        _write_json(args.json, payload)
    return code


def cmd_tube_scan(args) -> int:
    R = catalog.get_space(args.space)
    report = tube_property_scan(R, args.r, degree=args.degree)
    print(f"space {args.space}, r = {_fmt(args.r)}: spread = {_fmt(report.spread)} "
          f"over {len(report.values)} directions")
    if args.csv:
        report.to_csv(_output_dir() / args.csv)
    if args.json:
        _write_json(args.json, json.loads(report.to_json()))
    if args.max_spread is not None and report.spread > args.max_spread:
        print("condition failed: spread above threshold")
        return EXIT_CONDITION
    return EXIT_OK


def cmd_tube_curve(args) -> int:
    if args.curve_file:
        curve = CurveSpec.from_csv(args.curve_file)
    elif args.curve == "line":
        curve = line_r3(length=args.length)
    elif args.curve == "arc":
        curve = arc_r3(radius=args.bend_radius, length=args.length)
    elif args.curve == "great-circle":
        curve = great_circle_s3(length=args.length)
    elif args.curve == "circle":
        curve = small_circle_s3(kappa=args.kappa, count=args.samples)
    else:
        raise ValueError(f"unknown curve {args.curve!r}")
    volume, error = general_curve_tube_volume(curve, args.radius, degree=args.degree)
    print(f"curve tube volume: {_fmt(volume)} (error estimate {_fmt(error)}, "
          f"length {_fmt(curve.length)})")
    if args.json:
        _write_json(
            args.json,
            {
                "curve": args.curve or args.curve_file,
                "radius": args.radius,
                "length": curve.length,
                "volume": volume,
                "error_estimate": error,
            },
        )
    if error > max(1e-12, 1e-6 * abs(volume)):
        print("convergence failure: error estimate above tolerance")
        return EXIT_CONVERGENCE
    return EXIT_OK


def cmd_damek_ricci(args) -> int:
    space = DamekRicciSpace(build_heisenberg(args.p, args.q))
    vol = tube_volume_closed_form(args.p, args.q, args.r, args.l)
    area = tube_surface_area(args.p, args.q, args.r, args.l)
    print(f"(p, q) = ({args.p}, {args.q}), dim = {space.dim}")
    print(f"tube volume  V({_fmt(args.r)}) = {_fmt(vol)}")
    print(f"surface area A({_fmt(args.r)}) = {_fmt(area)}")
    V = np.zeros(args.p)
    V[0] = 1.0 / math.sqrt(2.0)
    Z = np.zeros(args.q)
    Z[0] = 1.0 / math.sqrt(2.0)
    residual = euler_arnold_residual(space, V, Z, np.linspace(0.1, 1.5, 5))
    print(f"geodesic-equation residual: {_fmt(residual)}")
    if args.geodesic_csv:
        path = _output_dir() / args.geodesic_csv
        with open(path, "w", newline="") as fh:
            import csv as _csv

            writer = _csv.writer(fh)
            writer.writerow(
                ["t"]
                + [f"V{i}" for i in range(args.p)]
                + [f"Z{i}" for i in range(args.q)]
                + ["t_coord"]
            )
            for t in np.linspace(0.0, args.r, 65):
                g = space.geodesic_from_identity(V, Z, t)
                writer.writerow([_fmt(t)] + [_fmt(c) for c in g.coords()])
    if args.json:
        _write_json(
            args.json,
            {
                "p": args.p,
                "q": args.q,
                "r": args.r,
                "l": args.l,
                "volume": vol,
                "surface_area": area,
                "euler_arnold_residual": residual,
            },
        )
    if residual > 1e-7:
        print("condition failed: geodesic-equation residual too large")
        return EXIT_CONDITION
    return EXIT_OK


def cmd_coeffs(args) -> int:
    R = catalog.get_space(args.space)
    e = np.eye(R.dim)[args.e_index]
    A = gray_vanhecke_A(R, e)
    B = gray_vanhecke_B_einstein_geodesic(R, e)
    print(f"space {args.space}: A = {_fmt(A)}, B = {_fmt(B)}")
    if args.json:
        _write_json(args.json, {"space": args.space, "A": A, "B": B})
    return EXIT_OK


def cmd_quad_audit(args) -> int:
    rule = sphere_rule(args.n, np.eye(args.n)[-1], args.degree)
    flat = rule.nodes @ rule.basis
    worst = 0.0
    from .verify import _even_exponents

    for alphas in _even_exponents(args.n - 1, args.degree):
        exact = monomial_sphere_integral(alphas)
        approx = rule.integrate(np.prod(flat ** np.array(alphas), axis=1))
        worst = max(worst, abs(approx - exact))
    print(f"n = {args.n}, degree = {args.degree}, nodes = {len(rule.nodes)}: "
          f"max monomial error = {_fmt(worst)}")
    if args.csv:
        rule.to_csv(_output_dir() / args.csv)
    if worst > 1e-11:
        print("convergence failure: quadrature not exact")
        return EXIT_CONVERGENCE
    return EXIT_OK


def cmd_ad_trace(args) -> int:
    L = so3_so3_symmetric_pair()
    a1 = np.zeros(6)
    a1[0] = 1.0
    a2 = np.zeros(6)
    a2[0] = 1.0
    a2[3] = 2.0
    ok = True
    for k in range(1, args.max_k + 1):
        val = ad_power_trace(L, a1, a2, k)
        ref = ad_power_trace_eigen(L, a1, a2, k)
        err = abs(val - ref)
        print(f"k = {k}: trace = {_fmt(val.real)}{val.imag:+.17g}i "
              f"(eigenvalue check {_fmt(err)})")
        ok = ok and abs(val) > 1e-6 and err <= 1e-10
    if not ok:
        print("condition failed: trace vanished or eigenvalue check failed")
        return EXIT_CONDITION
    return EXIT_OK


def cmd_verify_all(args) -> int:
    names = args.only.split(",") if args.only else None
    results = run_checks(names)
    for res in results:
        print(res.summary_line())
    payload = {
        res.name: {"passed": res.passed, "elapsed": res.elapsed, **{
            k: (v if isinstance(v, str) else float(v)) for k, v in res.details.items()
        }}
        for res in results
    }
    if args.json:
        _write_json(args.json, payload)
    if all(res.passed for res in results):
        print(f"all {len(results)} checks passed")
        return EXIT_OK
    failed = [res.name for res in results if not res.passed]
    print(f"failed: {', '.join(failed)}")
    return EXIT_CONDITION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tubelab",
        description="Tube volumes, curvature conditions and solvable-group models.",
    )
    parser.add_argument("--config", help="INI config file; flags override its values")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stein", help="Einstein / 2-stein condition report")
    p.add_argument("--space", required=True)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--json")
    p.set_defaults(func=cmd_stein)

    p = sub.add_parser("tube", help="geodesic tube volume")
    p.add_argument("--space", required=True)
    p.add_argument("--r", type=float, default=0.5)
    p.add_argument("--l", type=float, default=1.0)
    p.add_argument("--e-index", type=int, default=0)
    p.add_argument("--degree", type=int, default=12)
    p.add_argument("--compare", choices=["closed-form"], default=None)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--convergence-tol", type=float, default=1e-6)
    p.add_argument("--json")
    p.set_defaults(func=cmd_tube)

    p = sub.add_parser("tube-scan", help="per-direction tube volumes and spread")
    p.add_argument("--space", required=True)
    p.add_argument("--r", type=float, default=0.5)
    p.add_argument("--degree", type=int, default=12)
    p.add_argument("--max-spread", type=float, default=None)
    p.add_argument("--csv")
    p.add_argument("--json")
    p.set_defaults(func=cmd_tube_scan)

    p = sub.add_parser("tube-curve", help="tube volume about a non-geodesic curve")
    p.add_argument("--space", choices=["s3", "r3"], default="s3")
    p.add_argument("--curve", choices=["circle", "great-circle", "line", "arc"],
                   default="circle")
    p.add_argument("--curve-file")
    p.add_argument("--kappa", type=float, default=0.5)
    p.add_argument("--radius", type=float, default=0.3)
    p.add_argument("--length", type=float, default=1.0)
    p.add_argument("--bend-radius", type=float, default=2.0)
    p.add_argument("--samples", type=int, default=129)
    p.add_argument("--degree", type=int, default=10)
    p.add_argument("--json")
    p.set_defaults(func=cmd_tube_curve)

    p = sub.add_parser("damek-ricci", help="solvable-model closed forms and residuals")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--r", type=float, default=0.5)
    p.add_argument("--l", type=float, default=1.0)
    p.add_argument("--geodesic-csv")
    p.add_argument("--json")
    p.set_defaults(func=cmd_damek_ricci)

    p = sub.add_parser("coeffs", help="small-radius tube expansion coefficients")
    p.add_argument("--space", required=True)
    p.add_argument("--e-index", type=int, default=0)
    p.add_argument("--json")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("quad-audit", help="sphere-rule exactness audit")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--degree", type=int, default=12)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_quad_audit)

    p = sub.add_parser("ad-trace", help="complexified ad-power trace witness")
    p.add_argument("--max-k", type=int, default=4)
    p.set_defaults(func=cmd_ad_trace)

    p = sub.add_parser("verify-all", help="run the full acceptance suite")
    p.add_argument("--only", help="comma-separated subset of check names")
    p.add_argument("--json")
    p.set_defaults(func=cmd_verify_all)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args.config)
        if config:
            _merge_config(args, config, list(argv if argv is not None else sys.argv[1:]))
        return args.func(args)
    except PoleGuardError as exc:
        print(f"guard error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SeriesConvergenceError as exc:
        print(f"convergence error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
