"""JSON and CSV encodings for every artifact the package emits.

All writers are deterministic: fixed key order, fixed float repr, newline
terminated.  Exact values travel as decimal strings so arbitrary-size
integers survive any JSON consumer.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from .construct import BuildResult, StageSchedule, StageSet
from .diffraction import Autocorrelation, Spectrum
from .dyadic import Dyadic, dyadic_from_json, dyadic_to_json
from .patches import EntropyRow, Patch, make_patch
from .patchrep import PatRow
from .pointset import fps_from_json, fps_to_json


def dump_json(path: Path, obj) -> None:
    path.write_text(json.dumps(obj, indent=2) + "\n")


def load_json(path: Path):
    return json.loads(path.read_text())


# === patches ===


def patch_to_json(P: Patch) -> dict:
    return {"m": P.radius_exp, "points": [dyadic_to_json(p) for p in P.points]}


def patch_from_json(obj: dict) -> Patch:
    if not isinstance(obj, dict) or "m" not in obj or "points" not in obj:
        raise ValueError("expected a patch object with 'm' and 'points'")
    return make_patch([dyadic_from_json(p) for p in obj["points"]], int(obj["m"]))


# === stages ===


def stage_to_json(st: StageSet) -> dict:
    return {
        "n": st.n,
        "a": st.a,
        "d": st.d,
        "r": st.r,
        "v": None
        if st.v_assignment is None
        else [[dyadic_to_json(g), dyadic_to_json(v)] for g, v in st.v_assignment],
        "omega": fps_to_json(st.omega),
    }


def stage_from_json(obj: dict) -> StageSet:
    v = obj.get("v")
    return StageSet(
        n=int(obj["n"]),
        a=int(obj["a"]),
        d=int(obj["d"]),
        omega=fps_from_json(obj["omega"]),
        r=None if obj.get("r") is None else int(obj["r"]),
        v_assignment=None
        if v is None
        else tuple((dyadic_from_json(g), dyadic_from_json(w)) for g, w in v),
    )


def manifest_to_json(
    sched: StageSchedule, result: BuildResult, seed: int
) -> dict:
    return {
        "r": repr(sched.r_target),
        "s": repr(sched.s_target),
        "d": list(sched.d[1:]),
        "a": list(sched.a[1:]),
        "spikes": sorted(sched.spikes),
        "stages_requested": result.requested,
        "stages_built": len(result.stages),
        "truncated": result.truncated,
        "size_cap": result.size_cap,
        "seed": seed,
    }


def write_stage_dir(
    out_dir: Path, sched: StageSchedule, result: BuildResult, seed: int
) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    dump_json(out_dir / "manifest.json", manifest_to_json(sched, result, seed))
    for st in result.stages:
        dump_json(out_dir / f"stage_{st.n:02d}.json", stage_to_json(st))


def read_stage_dir(stage_dir: Path) -> list[StageSet]:
    files = sorted(stage_dir.glob("stage_*.json"))
    if not files:
        raise ValueError(f"no stage files found in {stage_dir}")
    stages = [stage_from_json(load_json(f)) for f in files]
    stages.sort(key=lambda st: st.n)
    return stages


# === CSV ===


def entropy_csv(rows: Iterable[EntropyRow]) -> str:
    lines = ["n,count,theta,ratio_natural_log"]
    for row in rows:
        lines.append(f"{row.n},{row.count},{row.theta},{row.ratio!r}")
    return "\n".join(lines) + "\n"


def pat_csv(rows: Iterable[PatRow], k: int) -> str:
    lines = ["n,k,pat_count,exact_flag,lower_bound,ratio"]
    for row in rows:
        flag = "true" if row.exact else "false"
        lines.append(f"{row.n},{k},{row.count},{flag},{row.lower_bound},{row.ratio!r}")
    return "\n".join(lines) + "\n"


def spectrum_csv(spec: Spectrum) -> str:
    lines = ["k,intensity"]
    for k, val in enumerate(spec.intensities):
        lines.append(f"{k},{float(val)!r}")
    return "\n".join(lines) + "\n"


def autocorr_to_json(ac: Autocorrelation) -> list:
    out = []
    for g, eta in ac.coeffs.items():
        out.append(
            {
                "g": dyadic_to_json(g),
                "eta": [str(eta.numerator), str(eta.denominator)],
            }
        )
    return out


def autocorr_from_json(obj: list) -> dict[Dyadic, Fraction]:
    out: dict[Dyadic, Fraction] = {}
    for item in obj:
        g = dyadic_from_json(item["g"])
        num, den = item["eta"]
        out[g] = Fraction(int(num), int(den))
    return out
