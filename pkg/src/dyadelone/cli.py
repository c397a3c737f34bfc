"""Command line front end.

Subcommands mirror the library layers: ``construct`` runs the stage
driver and writes a stage directory, ``entropy``/``patchrep`` produce the
counting series as CSV, ``freq`` evaluates exact patch frequencies,
``diffract`` computes finite volume spectra, and ``verify`` re-certifies
the extension clauses of a built stage directory (exit code 1 on any
failed clause).

Exit codes: 0 success, 1 verification failure, 2 usage or parameter
error.  All outputs are deterministic for a fixed argument list.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from pathlib import Path

from . import serialize
from .construct import ExtensionStep, build, extend, schedule
from .diffraction import autocorr, pp_mass, spectrum
from .dyadic import dyadic_from_json
from .patches import entropy_series, frequency, frequency_sorted
from .patchrep import pat_series
from .pointset import point_set, random_well_placed
from .balls import transversal
from .verify import verify_extension


def _target(text: str) -> float:
    if text.strip().lower() in ("inf", "infinity"):
        return math.inf
    try:
        value = float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid entropy target {text!r}") from exc
    if value < 0 or math.isnan(value):
        raise argparse.ArgumentTypeError("entropy targets must be >= 0")
    return value


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="dyadelone",
        description="Construct and analyse Delone sets in the 2-adic numbers.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="run the stage driver, write stage files")
    p.add_argument("--r", type=_target, required=True, help="upper entropy target or 'inf'")
    p.add_argument("--s", type=_target, required=True, help="lower entropy target or 'inf'")
    p.add_argument("--stages", type=int, required=True)
    p.add_argument("--size-cap", type=int, default=1 << 20, help="maximum points per stage")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path, required=True, help="output stage directory")

    p = sub.add_parser("entropy", help="patch counting series of a stage directory")
    p.add_argument("--stages", type=Path, required=True, help="stage directory")
    p.add_argument("--out", type=Path, default=None, help="CSV path (default stdout)")

    p = sub.add_parser("freq", help="exact patch frequency at a stage")
    p.add_argument("--stages", type=Path, required=True, help="stage directory")
    p.add_argument("--patch", type=Path, required=True, help="patch JSON file")
    p.add_argument("--n", type=int, required=True, help="stage index to evaluate at")
    p.add_argument("--region", type=Path, default=None,
                   help="JSON list of coset representatives (enables sorted mode)")
    p.add_argument("--m-stage", type=int, default=None,
                   help="larger stage carrying the region (sorted mode)")
    p.add_argument("--out", type=Path, default=None, help="JSON result path")

    p = sub.add_parser("patchrep", help="blurred patch representation series")
    p.add_argument("--stages", type=Path, required=True, help="stage directory")
    p.add_argument("--scale-k", type=int, required=True, help="blur scale exponent k")
    p.add_argument("--out", type=Path, default=None, help="CSV path (default stdout)")

    p = sub.add_parser("diffract", help="finite volume spectrum of a point set")
    p.add_argument("--points", type=Path, required=True, help="point set JSON file")
    p.add_argument("--a", type=int, required=True, help="ambient ball exponent")
    p.add_argument("--resolution-m", type=int, required=True, help="dual resolution M")
    p.add_argument("--top", type=int, default=None, help="report mass of top J bins")
    p.add_argument("--autocorr-out", type=Path, default=None,
                   help="also write exact autocorrelation JSON")
    p.add_argument("--multiplicity-free", action="store_true",
                   help="autocorrelation without pair multiplicities")
    p.add_argument("--out", type=Path, default=None, help="CSV path (default stdout)")

    p = sub.add_parser("verify", help="re-certify extension clauses")
    p.add_argument("--stages", type=Path, default=None, help="stage directory to verify")
    p.add_argument("--n", type=int, default=None, help="single step: core exponent")
    p.add_argument("--a", type=int, default=None, help="single step: ambient exponent")
    p.add_argument("--d", type=int, default=None, help="single step: depth")
    p.add_argument("--random-f", action="store_true",
                   help="single step: seeded random well placed input")
    p.add_argument("--sample-budget", type=int, default=10_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path, default=None, help="JSON report path")

    return ap


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)


def _cmd_construct(args) -> int:
    if args.s > args.r:
        print("error: targets must satisfy s <= r", file=sys.stderr)
        return 2
    sched = schedule(args.r, args.s, max(args.stages, 8))
    result = build(sched, args.stages, args.size_cap)
    serialize.write_stage_dir(args.out, sched, result, args.seed)
    built = len(result.stages)
    note = " (truncated by size cap)" if result.truncated else ""
    print(f"built {built} stage(s) in {args.out}{note}")
    return 0


def _cmd_entropy(args) -> int:
    stages = serialize.read_stage_dir(args.stages)
    rows = entropy_series(stages)
    _emit(serialize.entropy_csv(rows), args.out)
    return 0


def _cmd_freq(args) -> int:
    stages = {st.n: st for st in serialize.read_stage_dir(args.stages)}
    if args.n not in stages:
        raise ValueError(f"stage {args.n} not found in {args.stages}")
    P = serialize.patch_from_json(serialize.load_json(args.patch))
    target = stages[args.n]
    if args.region is None:
        value = frequency(target.omega, P)
        mode = {"mode": "ball", "n": args.n}
    else:
        if args.m_stage is None:
            raise ValueError("sorted mode needs --m-stage alongside --region")
        if args.m_stage not in stages:
            raise ValueError(f"stage {args.m_stage} not found in {args.stages}")
        region = [dyadic_from_json(o) for o in serialize.load_json(args.region)]
        value = frequency_sorted(stages[args.m_stage].omega, region, P, target.a)
        mode = {"mode": "sorted", "n": args.n, "m_stage": args.m_stage}
    print(f"frequency = {value.numerator}/{value.denominator}")
    if args.out is not None:
        report = dict(mode)
        report["frequency"] = [str(value.numerator), str(value.denominator)]
        serialize.dump_json(args.out, report)
    return 0


def _cmd_patchrep(args) -> int:
    stages = serialize.read_stage_dir(args.stages)
    rows = pat_series(stages, args.scale_k)
    _emit(serialize.pat_csv(rows, args.scale_k), args.out)
    return 0


def _cmd_diffract(args) -> int:
    S = serialize.fps_from_json(serialize.load_json(args.points))
    spec = spectrum(S, args.a, args.resolution_m)
    _emit(serialize.spectrum_csv(spec), args.out)
    if args.top is not None:
        print(f"pp_mass(top {args.top}) = {pp_mass(spec, args.top)!r}")
    if args.autocorr_out is not None:
        ac = autocorr(S, args.a, multiplicity=not args.multiplicity_free)
        serialize.dump_json(args.autocorr_out, serialize.autocorr_to_json(ac))
    return 0


def _cmd_verify(args) -> int:
    reports = []
    if args.stages is not None:
        stages = serialize.read_stage_dir(args.stages)
        for st, nxt in zip(stages, stages[1:]):
            if st.v_assignment is None:
                continue
            step = ExtensionStep(
                n=st.n, a=st.a, d=st.d, r=st.r,
                v_assignment=st.v_assignment, result=nxt.omega,
            )
            rep = verify_extension(
                st.omega, step, sample_budget=args.sample_budget, seed=args.seed
            )
            reports.append((f"stage {st.n} -> {nxt.n}", rep))
    else:
        if None in (args.n, args.a, args.d):
            raise ValueError("verify needs --stages or all of --n/--a/--d")
        if args.random_f:
            F = random_well_placed(args.a, random.Random(args.seed))
        else:
            F = point_set(transversal(args.a), scale=args.a)
        step = extend(F, args.n, args.a, args.d)
        rep = verify_extension(
            F, step, sample_budget=args.sample_budget, seed=args.seed
        )
        reports.append((f"single step n={args.n} a={args.a} d={args.d}", rep))

    payload = {
        "seed": args.seed,
        "sample_budget": args.sample_budget,
        "checks": [
            {
                "step": name,
                "clause_a": rep.clause_a,
                "clause_b": rep.clause_b,
                "clause_c": rep.clause_c,
                "clause_d": rep.clause_d,
                "b_exhaustive": rep.b_exhaustive,
                "b_checked": rep.b_checked,
                "detail": list(rep.detail),
            }
            for name, rep in reports
        ],
        "passed": all(rep.passed for _, rep in reports),
    }
    text = json.dumps(payload, indent=2) + "\n"
    if args.out is not None:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if payload["passed"] else 1


_DISPATCH = {
    "construct": _cmd_construct,
    "entropy": _cmd_entropy,
    "freq": _cmd_freq,
    "patchrep": _cmd_patchrep,
    "diffract": _cmd_diffract,
    "verify": _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
