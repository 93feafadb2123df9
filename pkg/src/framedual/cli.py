"""Command-line front end.

Exit codes: 0 when the asserted property holds, 1 when it fails (a valid
negative result), 2 on usage, parse, shape, or gate errors.  JSON output
is byte-identical for identical configurations.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import FixtureParseError, FrameDualError
from .fixtures import FIXTURE_IDS, run_repro
from .frames import VectorFamily, analyze, load_family
from .gabor import (
    GaborLattice,
    duality_check,
    gabor_system,
    promote_to_r_dual,
    run_exploration,
    tight_gabor_weak_r_dual,
)
from .numerics import Tolerance
from .rduality import (
    build_orthonormal_v,
    build_parseval_v,
    certify_weak_r_dual,
    characterize,
    weak_r_dual,
)

SCHEMA_VERSION = 1


def _report(payload: dict) -> dict:
    return {"schema_version": SCHEMA_VERSION, **payload}


def _emit(report: dict, args: argparse.Namespace) -> None:
    if args.table:
        lines = _as_table(report)
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps(report, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _as_table(obj, prefix: str = "") -> list[str]:
    lines = []
    if isinstance(obj, dict):
        for key in sorted(obj):
            lines.extend(_as_table(obj[key], f"{prefix}{key}."))
    elif isinstance(obj, list):
        for i, item in enumerate(obj):
            lines.extend(_as_table(item, f"{prefix}{i}."))
    else:
        lines.append(f"{prefix[:-1]:<48} {obj}")
    return lines


def _tolerance(args: argparse.Namespace) -> Tolerance:
    return Tolerance(rel_eps=args.tol, abs_floor=args.abs_floor)


def _load(path: str) -> VectorFamily:
    return load_family(path)


def _window(spec: str, n: int, normalize: bool) -> np.ndarray:
    if spec == "delta":
        w = np.zeros(n, dtype=np.complex128)
        w[0] = 1.0
    else:
        fam = load_family(spec)
        if fam.ambient_dim != n or fam.count != 1:
            raise FixtureParseError(
                f"window fixture must hold one vector of length {n}"
            )
        w = np.asarray(fam.vectors[0])
    if normalize:
        w = w / np.linalg.norm(w)
    return w


# ----------------------------------------------------------------------
# Commands
# ----------------------------------------------------------------------


def _cmd_analyze(args: argparse.Namespace) -> int:
    fam = _load(args.fixture)
    result = analyze(fam, _tolerance(args))
    _emit(_report({"analysis": result.to_json_dict(), "label": fam.label}), args)
    return 0


def _cmd_wrd(args: argparse.Namespace) -> int:
    tol = _tolerance(args)
    if args.wrd_command == "build":
        f, u, v = _load(args.f), _load(args.u), _load(args.v)
        w, cert = weak_r_dual(f, u, v, tol)
        _emit(_report({"certificate": cert.to_json_dict()}), args)
        return 0 if cert.passes() else 1
    if args.wrd_command == "check":
        w, f, u, v = _load(args.w), _load(args.f), _load(args.u), _load(args.v)
        cert = certify_weak_r_dual(w, f, u, v, tol)
        _emit(_report({"certificate": cert.to_json_dict()}), args)
        return 0 if cert.passes() else 1
    if args.wrd_command == "characterize":
        w, f, u, v = _load(args.w), _load(args.f), _load(args.u), _load(args.v)
        cert = characterize(w, f, u, v, tol)
        _emit(_report({"certificate": cert.to_json_dict()}), args)
        return 0 if cert.characterization_verdict != "NotWeakRDual" else 1
    if args.wrd_command == "construct-v":
        w, f, u = _load(args.w), _load(args.f), _load(args.u)
        build = build_orthonormal_v if args.onb else build_parseval_v
        v = build(w, f, u, tol)
        cert = certify_weak_r_dual(w, f, u, v, tol)
        _emit(
            _report(
                {
                    "certificate": cert.to_json_dict(),
                    "v": [[ [z.real, z.imag] for z in row] for row in v.vectors],
                }
            ),
            args,
        )
        return 0 if cert.passes() else 1
    if args.wrd_command == "promote":
        w, f, u = _load(args.w), _load(args.f), _load(args.u)
        v = _load(args.v) if args.v else None
        result = promote_to_r_dual(w, f, u, tol, v=v)
        _emit(_report({"certificate": result.certificate.to_json_dict()}), args)
        return 0 if result.certificate.verdict == "RDual" else 1
    raise AssertionError(f"unhandled subcommand {args.wrd_command}")


def _cmd_repro(args: argparse.Namespace) -> int:
    ids = FIXTURE_IDS if args.id == "all" else (args.id,)
    reports = [run_repro(fid, _tolerance(args)) for fid in ids]
    _emit(_report({"repro": reports}), args)
    return 0 if all(r["all_passed"] for r in reports) else 1


def _cmd_gabor(args: argparse.Namespace) -> int:
    tol = _tolerance(args)
    if args.gabor_command == "explore":
        report = run_exploration(
            _parse_n_values(args.N), seed=args.seed, trials=args.trials, tol=tol
        )
        _emit(_report(report), args)
        return 0
    lattice = GaborLattice(args.N_single, args.a, args.b)
    window = _window(args.window, lattice.N, args.normalize)
    sys_ = gabor_system(lattice, window)
    if args.gabor_command == "duality":
        report = duality_check(sys_, tol)
        _emit(_report({"duality": report.to_json_dict()}), args)
        return 0 if report.match else 1
    if args.gabor_command == "tight-wrd":
        result = tight_gabor_weak_r_dual(sys_, tol=tol)
        va = analyze(result.v, tol)
        _emit(
            _report(
                {
                    "tight_weak_r_dual": result.to_json_dict(),
                    "v_is_onb": va.is_onb,
                }
            ),
            args,
        )
        return 0 if result.certificate.passes() and not va.is_onb else 1
    raise AssertionError(f"unhandled subcommand {args.gabor_command}")


def _parse_n_values(spec: str) -> list[int]:
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(part) for part in spec.split(",") if part]


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tol", type=float, default=1e-9, help="relative tolerance")
    parser.add_argument(
        "--abs-floor", type=float, default=1e-12, help="absolute tolerance floor"
    )
    parser.add_argument("--seed", type=int, default=0, help="RNG seed")
    parser.add_argument("--json", dest="table", action="store_false", default=False)
    parser.add_argument("--table", dest="table", action="store_true")
    parser.add_argument("--out", type=str, default=None, help="write report to a file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="framedual",
        description="Finite-dimensional weak R-dual toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_an = sub.add_parser("analyze", help="classify a family fixture")
    p_an.add_argument("fixture")
    _add_common(p_an)
    p_an.set_defaults(func=_cmd_analyze)

    p_wrd = sub.add_parser("wrd", help="weak R-dual operations")
    wrd_sub = p_wrd.add_subparsers(dest="wrd_command", required=True)
    for name, needs in (
        ("build", "fuv"),
        ("check", "wfuv"),
        ("characterize", "wfuv"),
        ("construct-v", "wfu"),
        ("promote", "wfu"),
    ):
        p = wrd_sub.add_parser(name)
        for letter in needs:
            p.add_argument(f"--{letter}", required=True, help=f"fixture for {letter}")
        if name == "construct-v":
            p.add_argument("--onb", action="store_true", help="orthonormal output")
        if name == "promote":
            p.add_argument("--v", required=False, default=None)
        _add_common(p)
        p.set_defaults(func=_cmd_wrd)

    p_re = sub.add_parser("repro", help="run a built-in reproduction fixture")
    p_re.add_argument("id", choices=list(FIXTURE_IDS) + ["all"])
    _add_common(p_re)
    p_re.set_defaults(func=_cmd_repro)

    p_ga = sub.add_parser("gabor", help="Gabor operations on Z_N")
    ga_sub = p_ga.add_subparsers(dest="gabor_command", required=True)
    for name in ("duality", "tight-wrd"):
        p = ga_sub.add_parser(name)
        p.add_argument("--N", dest="N_single", type=int, required=True)
        p.add_argument("--a", type=int, required=True)
        p.add_argument("--b", type=int, required=True)
        p.add_argument("--window", type=str, default="delta")
        p.add_argument("--normalize", action="store_true")
        _add_common(p)
        p.set_defaults(func=_cmd_gabor)
    p_ex = ga_sub.add_parser("explore")
    p_ex.add_argument("--N", type=str, required=True, help="e.g. 4..8 or 4,6,8")
    p_ex.add_argument("--trials", type=int, default=100)
    p_ex.add_argument("--normalize", action="store_true")
    _add_common(p_ex)
    p_ex.set_defaults(func=_cmd_gabor)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FrameDualError, ValueError) as exc:
        error = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        sys.stdout.write(json.dumps(_report(error), sort_keys=True) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
