"""
Command-line front end.

    qwroute plan   --target 3 --n min
    qwroute run    --config scenario.json --out-dir out/
    qwroute sweep  --n 12 --trials 5 --seed 7
    qwroute oracle-check --target 1,3 --n 5 --coin 0:0,0.6:0,0.8:0,0:0

Exit status: 0 success, 1 verification failure, 2 invalid config or
infeasible request. ``QWROUTE_TOLERANCE`` overrides the success tolerance.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .planner import (FeasibilityError, RoutePlan, feasible, nearest_feasible_n, plan_between,
                      shared_min_steps)
from .state import WalkState, random_coin_vector
from .verification import (DEFAULT_TOLERANCE, fidelity, norm_drift, run_plan, trace_vs_oracle,
                           transfer_report)

FORMAT_VERSION = 1
MAX_DIMS = 4
INPUT_NORM_ATOL = 1e-9

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2


class ConfigError(ValueError):
    pass


@dataclass
class ScenarioConfig:
    dims: int
    source: list[int]
    target: list[int]
    steps: int | str
    coin: np.ndarray
    mode: str = "one-way"
    trace_path: str | None = None
    report_path: str | None = None


def tolerance() -> float:
    raw = os.environ.get("QWROUTE_TOLERANCE")
    if raw is None:
        return DEFAULT_TOLERANCE
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"QWROUTE_TOLERANCE={raw!r} is not a number") from None


def _parse_ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise ConfigError(f"expected comma-separated integers, got {text!r}") from None


def _parse_coin_flag(text: str) -> list[list[float]]:
    pairs = []
    for item in text.split(","):
        re_, _, im = item.partition(":")
        try:
            pairs.append([float(re_), float(im or 0.0)])
        except ValueError:
            raise ConfigError(f"bad coin entry {item!r}; expected re:im") from None
    return pairs


def _load_coin(pairs, dims: int) -> np.ndarray:
    try:
        vec = np.array([complex(float(re_), float(im)) for re_, im in pairs])
    except (TypeError, ValueError):
        raise ConfigError("coin must be a list of [re, im] pairs") from None
    if vec.size != 2**dims:
        raise ConfigError(f"coin needs {2**dims} entries for {dims} walker(s), got {vec.size}")
    norm2 = float(np.vdot(vec, vec).real)
    if abs(norm2 - 1.0) > INPUT_NORM_ATOL:
        raise ConfigError(f"coin squared norm {norm2!r} is not 1 within {INPUT_NORM_ATOL}")
    return vec / np.sqrt(norm2)


def load_config(args: argparse.Namespace) -> ScenarioConfig:
    """Merge an optional JSON config with command-line overrides."""
    doc: dict = {}
    if args.config:
        try:
            doc = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from None
        version = doc.get("format_version", FORMAT_VERSION)
        if version != FORMAT_VERSION:
            raise ConfigError(f"unsupported format_version {version}")
    if args.target is not None:
        doc["target"] = _parse_ints(args.target)
    if args.source is not None:
        doc["source"] = _parse_ints(args.source)
    if args.n is not None:
        doc["steps"] = args.n
    if args.coin is not None:
        doc["coin"] = _parse_coin_flag(args.coin)
    if args.mode is not None:
        doc["mode"] = args.mode

    if "target" not in doc:
        raise ConfigError("a target is required")
    target = [int(t) for t in doc["target"]]
    dims = int(doc.get("dims", len(target)))
    source = [int(s) for s in doc.get("source", [0] * dims)]
    if not 1 <= dims <= MAX_DIMS:
        raise ConfigError(f"dims must be in 1..{MAX_DIMS}, got {dims}")
    if len(target) != dims or len(source) != dims:
        raise ConfigError(f"source and target need {dims} coordinates")
    steps = doc.get("steps", "min")
    if steps != "min":
        try:
            steps = int(steps)
        except (TypeError, ValueError):
            raise ConfigError(f"steps must be an integer or 'min', got {steps!r}") from None
    mode = doc.get("mode", "one-way")
    if mode not in ("one-way", "round-trip"):
        raise ConfigError(f"mode must be 'one-way' or 'round-trip', got {mode!r}")
    if "coin" in doc:
        coin = _load_coin(doc["coin"], dims)
    else:
        coin = np.zeros(2**dims, dtype=np.complex128)
        coin[0] = 1.0
    outputs = doc.get("outputs", {})
    return ScenarioConfig(dims, source, target, steps, coin, mode,
                          outputs.get("trace"), outputs.get("report"))


def build_plan(cfg: ScenarioConfig) -> RoutePlan:
    """
    Compile the scenario; "min" picks the smallest budget shared by all walkers.

    Raises
    ------
    FeasibilityError
        With a message naming the constraint and the nearest feasible budget.
    """
    offsets = [t - s for s, t in zip(cfg.source, cfg.target)]
    n = shared_min_steps(offsets) if cfg.steps == "min" else cfg.steps
    try:
        return plan_between(cfg.source, cfg.target, n, round_trip=cfg.mode == "round-trip")
    except FeasibilityError as exc:
        near = nearest_feasible_n(offsets, n)
        hint = (f"nearest feasible n = {near}" if near is not None
                else "no feasible n exists (mixed parity)")
        raise FeasibilityError(f"{exc}; {hint}", exc.constraint, exc.coordinate) from None


def plan_document(plan: RoutePlan) -> dict:
    return {"format_version": FORMAT_VERSION, **plan.to_dict()}


def format_trace(trace: Sequence[WalkState]) -> str:
    """One line per (step, positions, coin index, re, im), labels sorted."""
    dims = trace[0].dims
    cols = ["step"] + [f"pos_{d + 1}" for d in range(dims)] + ["coin_index", "re", "im"]
    lines = ["# " + " ".join(cols)]
    for s in trace:
        for label, amp in s.sorted_items():
            pos = " ".join(str(p) for p in label.positions)
            lines.append(f"{s.step} {pos} {label.coin_index} {amp.real:.17g} {amp.imag:.17g}")
    return "\n".join(lines) + "\n"


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _out_path(explicit: str | None, out_dir: str | None, default_name: str) -> Path | None:
    if explicit:
        return Path(explicit)
    if out_dir:
        return Path(out_dir) / default_name
    return None


def _write(path: Path | None, text: str) -> None:
    if path is None:
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def cmd_plan(args) -> int:
    cfg = load_config(args)
    plan = build_plan(cfg)
    text = _dump(plan_document(plan))
    sys.stdout.write(text)
    _write(_out_path(None, args.out_dir, "plan.json"), text)
    return EXIT_OK


def cmd_run(args) -> int:
    cfg = load_config(args)
    plan = build_plan(cfg)
    tol = tolerance()
    trace = run_plan(plan, cfg.coin)
    report = transfer_report(plan, cfg.coin, tolerance=tol)
    doc = {"format_version": FORMAT_VERSION, **report.to_dict()}
    text = _dump(doc)
    _write(_out_path(cfg.trace_path, args.out_dir, "trace.txt"), format_trace(trace))
    _write(_out_path(cfg.report_path, args.out_dir, "report.json"), text)
    sys.stdout.write(text)
    ok = report.success and report.per_step_norm_drift <= tol
    return EXIT_OK if ok else EXIT_FAILED


def cmd_oracle_check(args) -> int:
    cfg = load_config(args)
    plan = build_plan(cfg)
    tol = tolerance()
    dev = trace_vs_oracle(plan, cfg.coin)
    status = "ok" if dev <= tol else "FAIL"
    sys.stdout.write(f"max oracle deviation {dev:.3e} over {plan.total_steps} steps: {status}\n")
    return EXIT_OK if dev <= tol else EXIT_FAILED


def sweep(n_max: int, trials: int, seed: int, tol: float = DEFAULT_TOLERANCE):
    """
    Verify every feasible one-walker (n, x) with n <= n_max.

    Returns
    -------
    rows : list of tuple
        ``(n, x, min_fidelity, max_norm_drift, max_oracle_deviation, ok)``
        sorted by (n, x).
    """
    if n_max < 2 or trials < 1:
        raise ConfigError("sweep needs n_max >= 2 and trials >= 1")
    rng = np.random.default_rng(seed)
    rows = []
    for n in range(2, n_max + 1):
        for x in range(-n, n + 1):
            if not feasible(n, x):
                continue
            plan = plan_between([0], [x], n)
            min_fid, drift, dev = 1.0, 0.0, 0.0
            for _ in range(trials):
                coin = random_coin_vector(1, rng)
                trace = run_plan(plan, coin)
                min_fid = min(min_fid, fidelity(trace[-1], [x], coin))
                drift = max(drift, norm_drift(trace))
                dev = max(dev, trace_vs_oracle(plan, coin, trace=trace))
            ok = min_fid >= 1.0 - tol and drift <= tol and dev <= tol
            rows.append((n, x, min_fid, drift, dev, ok))
    return sorted(rows)


def format_sweep(rows) -> str:
    lines = [f"{'n':>4} {'x':>4} {'min_fidelity':>20} {'max_norm_drift':>15} "
             f"{'max_oracle_dev':>15} status"]
    for n, x, fid, drift, dev, ok in rows:
        lines.append(f"{n:>4} {x:>4} {fid:>20.17f} {drift:>15.3e} {dev:>15.3e} "
                     f"{'ok' if ok else 'FAIL'}")
    failures = sum(not r[-1] for r in rows)
    lines.append(f"feasible pairs: {len(rows)}  failures: {failures}")
    return "\n".join(lines) + "\n"


def cmd_sweep(args) -> int:
    n_max = 12 if args.n is None else int(args.n)
    rows = sweep(n_max, args.trials, args.seed, tolerance())
    text = format_sweep(rows)
    sys.stdout.write(text)
    _write(_out_path(None, args.out_dir, "sweep.txt"), text)
    return EXIT_OK if all(r[-1] for r in rows) else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qwroute",
                                     description="Perfect-transfer quantum walk routing.")
    sub = parser.add_subparsers(dest="command", required=True)

    def scenario(p):
        p.add_argument("--config", help="JSON scenario file")
        p.add_argument("--n", help="step budget or 'min'")
        p.add_argument("--target", help="comma-separated target sites")
        p.add_argument("--source", help="comma-separated source sites")
        p.add_argument("--coin", help="comma-separated re:im amplitudes")
        p.add_argument("--mode", choices=["one-way", "round-trip"])
        p.add_argument("--out-dir")

    for name, fn in (("plan", cmd_plan), ("run", cmd_run), ("oracle-check", cmd_oracle_check)):
        p = sub.add_parser(name)
        scenario(p)
        p.set_defaults(func=fn)

    p = sub.add_parser("sweep")
    p.add_argument("--n", type=int, help="largest step budget (default 12)")
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, FeasibilityError, ValueError) as exc:
        sys.stderr.write(f"qwroute: error: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
