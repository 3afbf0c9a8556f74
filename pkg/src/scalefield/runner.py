"""Execute scenario tasks in order and write CSV results plus summary.json.

Output layout: one CSV per task, named {index:02d}_{type}.csv, next to a
summary.json holding per-task status, resolved parameters (every default
echoed, so a run is self-describing), and headline scalars.  All file
content is deterministic for a fixed scenario and seed: no timestamps, no
absolute paths, sorted JSON keys, fixed float formatting.

Exit codes: 0 all tasks ok, 1 a task failed, 2 parse error, 3 validation
error.
"""

from __future__ import annotations

import dataclasses
import json
import os
import sys
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .axioms import axiom_suite
from .errors import ScaleFieldError, ScenarioParseError, ScenarioValidationError
from .csvio import render_csv
from .fields import eval_f
from .gauge import invariance_residual
from .geodesics import GeodesicState, integrate_geodesic
from .manifold import Manifold
from .outcomes import Outcome, compare_outcomes
from .packets import gaussian_packet, packet_norm_squared, scale_wave_packet
from .paths import PolylinePath, SegmentPath, local_path_length, scaled_path_length
from .scenario import (
    OutcomeSpec,
    RuntimeScenario,
    Scenario,
    Task,
    parse_scenario,
    validate_scenario,
)
from .structures import BaseNumber, structure

EXIT_OK = 0
EXIT_TASK_FAILURE = 1
EXIT_PARSE_ERROR = 2
EXIT_VALIDATION_ERROR = 3

OUTPUT_ENV_VAR = "SCALEFIELD_OUT"


def _jsonable(value: Any) -> Any:
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return _jsonable(dataclasses.asdict(value))
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, complex):
        return [float(value.real), float(value.imag)]
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    return value


def _outcome(spec: OutcomeSpec) -> Outcome:
    if spec.kind == "complex":
        number = BaseNumber.complex(*spec.payload)
    else:
        number = BaseNumber(spec.kind, spec.payload)
    return Outcome(np.array(spec.location), number)


def _complex_cells(z: Optional[complex]) -> Tuple[Optional[float], Optional[float]]:
    if z is None:
        return None, None
    return float(z.real), float(z.imag)


# -- task handlers: each returns (header, rows, results dict) -----------------


def _run_axioms(task: Task, rt: RuntimeScenario, seed: Optional[int]):
    p = task.params
    st = structure(p["kind"], p["t"], p["s"], p["stride"])
    report = axiom_suite(st, samples=p["samples"], seed=seed or 0)
    rows = [(r.name, r.checks, r.failures) for r in report.results]
    results = {
        "all_passed": report.all_passed,
        "failed_axioms": [r.name for r in report.results if r.failures],
    }
    return ("axiom", "checks", "failures"), rows, results


def _run_geodesic(task: Task, rt: RuntimeScenario, seed: Optional[int]):
    p = task.params
    state = GeodesicState(np.array(p["position"]), np.array(p["velocity"]))
    tr = integrate_geodesic(state, rt.field, p["tau_end"], p["h_tau"],
                            drag_contraction=p["drag_contraction"])
    dim = rt.manifold.dimension
    header = ("tau", *(f"q{m}" for m in range(dim)),
              *(f"v{m}" for m in range(dim)))
    rows = [(float(tr.taus[k]), *map(float, tr.positions[k]),
             *map(float, tr.velocities[k])) for k in range(len(tr))]
    results = {
        "left_domain": tr.left_domain,
        "steps": len(tr) - 1,
        "final_position": list(map(float, tr.final.position)),
        "final_velocity": list(map(float, tr.final.velocity)),
    }
    return header, rows, results


def _build_path(spec: Dict[str, Any]):
    if spec["kind"] == "segment":
        return SegmentPath(np.array(spec["start"]), np.array(spec["end"]))
    return PolylinePath(np.array(spec["vertices"]))


def _run_pathlen(task: Task, rt: RuntimeScenario, seed: Optional[int]):
    p = task.params
    q = _build_path(p["path"])
    x_ref = np.array(p["x_ref"]) if p["x_ref"] is not None \
        else q.position(np.array(0.0))
    local = local_path_length(q, rt.manifold, p["steps"])
    scaled = scaled_path_length(q, rt.field, x_ref, p["steps"])
    rows = [(p["steps"], local, scaled)]
    results = {
        "local_length": local,
        "scaled_length": scaled,
        "x_ref": list(map(float, x_ref)),
    }
    return ("steps", "local_length", "scaled_length"), rows, results


def _run_wavepacket(task: Task, rt: RuntimeScenario, seed: Optional[int]):
    p = task.params
    psi = gaussian_packet(rt.manifold, p["center"], p["width"],
                          momentum=p["momentum"], time_slice=p["time_slice"])
    scaled = scale_wave_packet(psi, rt.field, np.array(p["x0"]))
    spatial = psi.points()[..., list(rt.manifold.spatial_axes)].reshape(-1, 3)
    amp = scaled.amplitudes.reshape(-1)
    header = ("w1", "w2", "w3", "re_psi", "im_psi")
    rows = [(float(w[0]), float(w[1]), float(w[2]),
             float(a.real), float(a.imag))
            for w, a in zip(spatial, amp)]
    results = {
        "norm_squared_before": packet_norm_squared(psi),
        "norm_squared_after": packet_norm_squared(scaled),
    }
    return header, rows, results


def _run_gauge_check(task: Task, rt: RuntimeScenario, seed: Optional[int]):
    stride = task.params["stride"]
    pts = rt.manifold.interior_grid_points()[::stride]
    res = invariance_residual(rt.field, rt.gauge_config, rt.gauge_transform,
                              pts)
    dim = rt.manifold.dimension
    header = (*(f"x{m}" for m in range(dim)), "residual")
    rows = [(*map(float, x), float(r)) for x, r in zip(pts, res)]
    results = {
        "points": int(pts.shape[0]),
        "max_residual": float(np.max(res)),
    }
    return header, rows, results


def _run_compare(task: Task, rt: RuntimeScenario, seed: Optional[int]):
    p = task.params
    r = _outcome(p["reference"])
    t = _outcome(p["target"])
    report = compare_outcomes(r, t, rt.field, mode=p["mode"])
    ratio = _complex_cells(report.ratio)
    transported = _complex_cells(report.transported)
    mismatch = _complex_cells(report.mismatch_factor)
    header = ("mode", "equal", "ratio_re", "ratio_im", "transported_re",
              "transported_im", "mismatch_re", "mismatch_im", "values_match")
    rows = [(report.mode, report.equal, *ratio, *transported, *mismatch,
             report.values_match)]
    results = {
        "equal": report.equal,
        "ratio": report.ratio,
        "transported": report.transported,
        "mismatch_factor": report.mismatch_factor,
        "values_match": report.values_match,
        "field_ratio_check": complex(
            eval_f(rt.field, np.array(p["target"].location))
            / eval_f(rt.field, np.array(p["reference"].location)))
        if p["mode"] == "parallel-transform" else None,
    }
    return header, rows, results


_HANDLERS = {
    "axioms": _run_axioms,
    "geodesic": _run_geodesic,
    "pathlen": _run_pathlen,
    "wavepacket": _run_wavepacket,
    "gauge-check": _run_gauge_check,
    "compare": _run_compare,
}


def _manifold_summary(m: Manifold) -> Dict[str, Any]:
    return {
        "dimension": m.dimension,
        "bounds": [list(b) for b in m.bounds],
        "spacing": list(m.spacing),
        "signature": "minkowski" if m.dimension == 4 else "euclidean",
    }


def resolve_output_dir(scenario: Scenario, scenario_path: str,
                       out: Optional[str] = None) -> str:
    """--out beats SCALEFIELD_OUT beats the scenario's own output field."""
    if out:
        return out
    env = os.environ.get(OUTPUT_ENV_VAR)
    if env:
        return env
    if scenario.output:
        base = os.path.dirname(os.path.abspath(scenario_path))
        return os.path.join(base, scenario.output)
    stem = os.path.splitext(os.path.basename(scenario_path))[0]
    return os.path.join(os.path.dirname(os.path.abspath(scenario_path)),
                        f"{stem}_out")


def run_scenario(path: str, out: Optional[str] = None,
                 seed: Optional[int] = None, verbose: bool = False) -> int:
    """Parse, validate, run every task, write results; returns the exit code."""
    try:
        scenario = parse_scenario(path)
    except ScenarioParseError as err:
        print(f"parse error: {err}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    try:
        rt = validate_scenario(scenario)
    except ScenarioValidationError as err:
        print(f"validation error: {err}", file=sys.stderr)
        return EXIT_VALIDATION_ERROR

    run_seed = seed if seed is not None else scenario.seed
    out_dir = resolve_output_dir(scenario, path, out)
    os.makedirs(out_dir, exist_ok=True)

    entries: List[Dict[str, Any]] = []
    all_ok = True
    for index, task in enumerate(scenario.tasks):
        csv_name = f"{index:02d}_{task.type}.csv"
        task_seed = run_seed + index if run_seed is not None else None
        entry: Dict[str, Any] = {
            "index": index,
            "type": task.type,
            "csv": csv_name,
            "seed": task_seed,
            "params": _jsonable(task.params),
        }
        try:
            header, rows, results = _HANDLERS[task.type](task, rt, task_seed)
            with open(os.path.join(out_dir, csv_name), "w",
                      encoding="utf-8", newline="") as fh:
                fh.write(render_csv(header, rows))
            ok = results.get("all_passed", True)
            entry["status"] = "ok" if ok else "failed"
            if not ok:
                entry["error"] = "axiom failures: " + ", ".join(
                    results["failed_axioms"])
            entry["results"] = _jsonable(results)
        except (ScaleFieldError, ValueError, ZeroDivisionError) as err:
            entry["status"] = "failed"
            entry["error"] = str(err)
            print(f"task {index} ({task.type}) failed: {err}",
                  file=sys.stderr)
        all_ok = all_ok and entry["status"] == "ok"
        if verbose:
            print(f"[{index:02d}] {task.type}: {entry['status']}")
        entries.append(entry)

    summary = {
        "status": "ok" if all_ok else "failed",
        "seed": run_seed,
        "manifold": _manifold_summary(rt.manifold),
        "gradient_mode": rt.field.gradient_mode,
        "tasks": entries,
    }
    summary_path = os.path.join(out_dir, "summary.json")
    with open(summary_path, "w", encoding="utf-8", newline="") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    if verbose:
        print(f"wrote {len(entries)} task results to {out_dir}")
    return EXIT_OK if all_ok else EXIT_TASK_FAILURE
