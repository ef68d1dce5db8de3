"""Command-line front end.

    l2plan plan QUERY.json [--out plan.json] [--csv dump.csv] [--svg plot.svg]
    l2plan plan --p0 -1 0 --v0 0 0 --pG 0 0 --vG zero --a-m 1 --v-m 10
    l2plan plan --verify plan.json
    l2plan batch QUERIES.json [--out plans.json]
    l2plan benchmark [--seed 0] [--n 10000] [--e-min 1e-12] [--out stats.json]
    l2plan compare [--speed 0.5] [--directions 360] [--csv sweep.csv]

Exit codes: 0 success, 2 bad input, 3 solver failure, 4 validation failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import kernels
from .baseline_linf import solve_linf
from .core import GoalMode, PhaseKind, Plan, Query, SolverConfig, simulate, validate
from .errors import PlanningError
from .planner import plan as plan_query
from .rendezvous import no_cruise_candidates, rendezvous_cruise, switch_speed
from .svg import profile_svg
from .trajectory import from_plan, from_synced

EXIT_OK, EXIT_PARSE, EXIT_SOLVER, EXIT_INVALID = 0, 2, 3, 4
QUERY_KEYS = {"p0", "v0", "pG", "vG", "a_m", "v_m"}
RECORD_KEYS = QUERY_KEYS | {"id"}


class InputError(ValueError):
    pass


# -- query parsing ---------------------------------------------------------------

def _vec2(x, name):
    if not (isinstance(x, list) and len(x) == 2 and all(isinstance(c, (int, float)) and not isinstance(c, bool)
                                                         for c in x)):
        raise InputError(f"{name} must be a list of two numbers")
    return [float(c) for c in x]


def _num(x, name):
    if not isinstance(x, (int, float)) or isinstance(x, bool):
        raise InputError(f"{name} must be a number")
    return float(x)


def parse_query(obj) -> tuple[Query, object]:
    """Strictly parse one query record; returns (query, id or None)."""
    if not isinstance(obj, dict):
        raise InputError("a query must be a JSON object")
    unknown = set(obj) - RECORD_KEYS
    if unknown:
        raise InputError(f"unknown query fields: {sorted(unknown)}")
    missing = QUERY_KEYS - set(obj)
    if missing:
        raise InputError(f"missing query fields: {sorted(missing)}")
    vG = obj["vG"]
    if isinstance(vG, str):
        if vG not in ("zero", "free"):
            raise InputError('vG must be [x, y], "zero" or "free"')
    else:
        vG = _vec2(vG, "vG")
    try:
        q = Query.make(_vec2(obj["p0"], "p0"), _vec2(obj["v0"], "v0"), _vec2(obj["pG"], "pG"), vG,
                       _num(obj["a_m"], "a_m"), _num(obj["v_m"], "v_m"))
    except InputError:
        raise
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return q, obj.get("id")


def query_to_json(q: Query) -> dict:
    if q.goal_mode is GoalMode.VECTOR:
        vG = [float(x) for x in q.goal_velocity]
    else:
        vG = q.goal_mode.value
    return {"p0": [float(x) for x in q.start.position], "v0": [float(x) for x in q.start.velocity],
            "pG": [float(x) for x in q.goal_position], "vG": vG,
            "a_m": q.limits.a_m, "v_m": q.limits.v_m}


def _load_json(path):
    try:
        text = sys.stdin.read() if str(path) == "-" else Path(path).read_text(encoding="utf-8")
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


# -- plan records ----------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.floating, float)):
        return float(x) if math.isfinite(x) else None
    if isinstance(x, (np.integer, int)) and not isinstance(x, bool):
        return int(x)
    return x


def plan_record(q: Query, p: Plan, tol: float = 1e-9, qid=None) -> dict:
    report = validate(p, q, tol)
    end = simulate(q.start, p.phases, q.limits.a_m)
    rec = {}
    if qid is not None:
        rec["id"] = qid
    rec.update({
        "query": query_to_json(q),
        "case_tag": p.case_tag.value,
        "T": p.total_time,
        "phases": [{"kind": ph.kind.value, "theta": ph.theta, "duration": ph.duration} for ph in p.phases],
        "validation": report.as_dict(),
        "terminal_state": {"p": [float(x) for x in end.position], "v": [float(x) for x in end.velocity]},
        "info": _jsonable({k: v for k, v in p.info.items() if k not in ("sextic", "quartic")}),
    })
    return rec


def plan_from_record(rec) -> tuple[Query, list]:
    from .core import Phase
    q, _ = parse_query(rec["query"])
    phases = []
    for ph in rec["phases"]:
        kind = PhaseKind(ph["kind"])
        phases.append(Phase(kind, float(ph["duration"]), ph.get("theta") if kind is PhaseKind.THRUST else None))
    return q, phases


# -- trajectory dumps --------------------------------------------------------------

DUMP_HEADER = ["t", "px", "py", "vx", "vy", "ux", "uy", "speed", "accel"]


def dump_rows(traj, dt: float | None = None):
    T = traj.total_time
    if dt is None or dt <= 0:
        dt = T / 1000.0 if T > 0 else 1.0
    n = int(math.floor(T / dt + 1e-9)) if T > 0 else 0
    times = np.union1d(np.arange(n + 1) * dt, traj.switch_times())
    times = times[times <= T]
    pos, vel, acc = traj.sample(times)
    if len(traj.segments) and times.size and times[-1] == T:
        # the closing row reports the thrust that brought the particle there
        last = traj.segments[-1]
        acc[-1] = (last.ax, last.ay)
    speed = np.hypot(vel[:, 0], vel[:, 1])
    accel = np.hypot(acc[:, 0], acc[:, 1])
    return np.column_stack([times, pos, vel, acc, speed, accel])


def write_csv(rows, path):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(DUMP_HEADER)
        for r in rows:
            w.writerow([repr(float(x)) for x in r])


def write_svg(rows, path, v_m, a_m):
    Path(path).write_text(profile_svg(rows[:, 0], rows[:, 1:3], rows[:, 3:5], rows[:, 5:7], v_m, a_m),
                          encoding="utf-8")


# -- subcommands -------------------------------------------------------------------

def _cfg(args) -> SolverConfig:
    return SolverConfig(e_min=args.e_min)


def _emit(obj, out):
    text = json.dumps(obj, indent=2) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _inline_query(args) -> dict:
    need = {"p0": args.p0, "pG": args.pG}
    if any(v is None for v in need.values()):
        raise InputError("give a query file or at least --p0 and --pG")
    vG = args.vG
    if vG not in ("zero", "free"):
        try:
            vG = [float(x) for x in vG.split(",")]
        except ValueError as exc:
            raise InputError('--vG takes "zero", "free" or x,y') from exc
    return {"p0": args.p0, "v0": args.v0 or [0.0, 0.0], "pG": args.pG, "vG": vG,
            "a_m": args.a_m, "v_m": args.v_m}


def cmd_plan(args) -> int:
    if args.verify:
        return _verify(args.verify)
    obj = _load_json(args.query) if args.query else _inline_query(args)
    q, qid = parse_query(obj)
    try:
        p = plan_query(q, _cfg(args))
    except PlanningError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    rec = plan_record(q, p, args.tol, qid)
    _emit(rec, args.out)
    if args.csv or args.svg:
        rows = dump_rows(from_plan(p, q.start, q.limits.a_m), args.dt)
        if args.csv:
            write_csv(rows, args.csv)
        if args.svg:
            write_svg(rows, args.svg, q.limits.v_m, q.limits.a_m)
    return EXIT_OK if rec["validation"]["passed"] else EXIT_INVALID


def _verify(path) -> int:
    rec = _load_json(path)
    try:
        q, phases = plan_from_record(rec)
        stored = rec["terminal_state"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"not a plan record: {exc}") from exc
    end = simulate(q.start, phases, q.limits.a_m)
    err = max(float(np.max(np.abs(end.position - np.array(stored["p"])))),
              float(np.max(np.abs(end.velocity - np.array(stored["v"])))))
    ok = err <= 1e-12 * max(1.0, q.distance)
    print(json.dumps({"verified": ok, "max_abs_difference": err}))
    return EXIT_OK if ok else EXIT_INVALID


def cmd_batch(args) -> int:
    data = _load_json(args.queries)
    if isinstance(data, dict) and set(data) == {"queries"}:
        data = data["queries"]
    if not isinstance(data, list):
        raise InputError('a batch file is a list of queries or {"queries": [...]}')
    parsed = [parse_query(obj) for obj in data]  # reject the whole file before solving anything
    cfg = _cfg(args)
    records, code = [], EXIT_OK
    for q, qid in parsed:
        try:
            rec = plan_record(q, plan_query(q, cfg), args.tol, qid)
            if not rec["validation"]["passed"]:
                code = max(code, EXIT_INVALID)
        except PlanningError as exc:
            rec = {"query": query_to_json(q), "error": f"{type(exc).__name__}: {exc}"}
            if qid is not None:
                rec = {"id": qid, **rec}
            code = EXIT_SOLVER if code == EXIT_OK else code
        records.append(rec)
    _emit(records, args.out)
    return code


def _disk(rng, r):
    while True:
        x = rng.uniform(-r, r, 2)
        if x @ x <= r * r:
            return x


def benchmark_stats(seed: int, n: int, radius_p: float = 2.0, radius_v: float = 1.0, e_min: float = 1e-12,
                    a_m: float = 1.0, v_m: float = 1.0, max_samples: int = 128) -> dict:
    """Convergence statistics of the cruise-heading search on random queries
    that need a cruise phase. Deterministic for a given seed."""
    cfg = SolverConfig(e_min=e_min, max_vdc_samples=max_samples)
    counts: dict[int, int] = {}
    failures = revalidated = drawn = 0
    t0 = time.perf_counter()
    while sum(counts.values()) + failures < n:
        rng = np.random.default_rng([seed, drawn])
        drawn += 1
        # positions scaled with the bounds so the default a_m = v_m = 1 case matches the disks
        q = Query.make(_disk(rng, radius_p), _disk(rng, radius_v) * v_m, _disk(rng, radius_p),
                       _disk(rng, radius_v) * v_m, a_m, v_m)
        sols = no_cruise_candidates(q, cfg)
        if sols and switch_speed(q, sols[0]) <= v_m * (1.0 + 1e-12):
            continue
        try:
            p = rendezvous_cruise(q, cfg)
        except PlanningError:
            failures += 1
            continue
        k = p.info["vdc_samples"]
        counts[k] = counts.get(k, 0) + 1
        if validate(p, q, tol=10 * e_min).passed:
            revalidated += 1
    wall = time.perf_counter() - t0
    converged = sum(counts.values())
    cum = lambda m: sum(c for k, c in counts.items() if k <= m)  # noqa: E731
    mean = sum(k * c for k, c in counts.items()) / converged if converged else math.nan
    return {
        "seed": seed, "n": n, "queries_drawn": drawn, "e_min": e_min, "max_vdc_samples": max_samples,
        "converged": converged, "no_convergence": failures,
        "first_sample": cum(1), "within_two": cum(2), "within_five": cum(5),
        "mean_samples": mean, "max_samples_used": max(counts) if counts else 0,
        "samples_histogram": {str(k): counts[k] for k in sorted(counts)},
        "revalidated_at_10x_e_min": revalidated,
        "wall_time_s": wall,
    }


def cmd_benchmark(args) -> int:
    if args.n < 1:
        raise InputError("--n must be at least 1")
    kernels.warmup()
    stats = benchmark_stats(args.seed, args.n, args.radius_p, args.radius_v, args.e_min,
                            max_samples=args.max_samples)
    _emit(stats, args.out)
    return EXIT_OK


COMPARE_HEADER = ["direction_deg", "T_L2", "T_linf", "pathlen_L2", "pathlen_linf", "reason"]


def compare_rows(p0, pG, speed, directions, a_m=1.0, v_m=1.0, box_a=None, box_v=None, vG=(0.0, 0.0)):
    box_a = a_m / math.sqrt(2.0) if box_a is None else box_a
    box_v = v_m / math.sqrt(2.0) if box_v is None else box_v
    rows = []
    for k in range(directions):
        deg = 360.0 * k / directions
        ang = math.radians(deg)
        v0 = (speed * math.cos(ang), speed * math.sin(ang))
        row = [deg, math.nan, math.nan, math.nan, math.nan, ""]
        try:
            q = Query.make(p0, v0, pG, list(vG), a_m, v_m)
            p = plan_query(q)
            row[1] = p.total_time
            row[3] = from_plan(p, q.start, a_m).path_length()
            sp = solve_linf(q, box_a, box_v)
            row[2] = sp.T_sync
            row[4] = from_synced(sp, q.start, box_a).path_length()
        except (PlanningError, ValueError) as exc:
            row[5] = f"{type(exc).__name__}: {exc}"
        rows.append(row)
    return rows


def cmd_compare(args) -> int:
    rows = compare_rows(args.p0 or [1.0, 1.0], args.pG or [-1.0, -1.0], args.speed, args.directions,
                        args.a_m, args.v_m, args.box_a, args.box_v)
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(COMPARE_HEADER)
    for r in rows:
        w.writerow([repr(x) if isinstance(x, float) else x for x in r])
    if args.csv:
        Path(args.csv).write_text(buf.getvalue(), encoding="utf-8")
    else:
        sys.stdout.write(buf.getvalue())
    return EXIT_SOLVER if any(r[5] for r in rows) else EXIT_OK


# -- argument parsing ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="l2plan", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--e-min", type=float, default=1e-12, help="terminal error bound for the cruise search")
        p.add_argument("--tol", type=float, default=1e-9, help="validation tolerance")
        p.add_argument("--out", help="write JSON here instead of stdout")

    p = sub.add_parser("plan", help="plan a single query")
    p.add_argument("query", nargs="?", help="query JSON file ('-' for stdin)")
    p.add_argument("--p0", type=float, nargs=2)
    p.add_argument("--v0", type=float, nargs=2)
    p.add_argument("--pG", type=float, nargs=2)
    p.add_argument("--vG", default="zero", help='"zero", "free" or x,y')
    p.add_argument("--a-m", type=float, default=1.0)
    p.add_argument("--v-m", type=float, default=1.0)
    p.add_argument("--csv", help="trajectory dump")
    p.add_argument("--svg", help="profile plot")
    p.add_argument("--dt", type=float, help="dump spacing (default T/1000)")
    p.add_argument("--verify", metavar="PLAN_JSON", help="re-simulate a stored plan record")
    common(p)
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("batch", help="plan every query in a file")
    p.add_argument("queries")
    common(p)
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("benchmark", help="cruise-heading convergence statistics")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=10000)
    p.add_argument("--radius-p", type=float, default=2.0)
    p.add_argument("--radius-v", type=float, default=1.0)
    p.add_argument("--max-samples", type=int, default=128)
    common(p)
    p.set_defaults(func=cmd_benchmark)

    p = sub.add_parser("compare", help="L2 versus box-bounded sweep over start-velocity direction")
    p.add_argument("--p0", type=float, nargs=2)
    p.add_argument("--pG", type=float, nargs=2)
    p.add_argument("--speed", type=float, default=0.5, help="start speed")
    p.add_argument("--directions", type=int, default=360)
    p.add_argument("--a-m", type=float, default=1.0)
    p.add_argument("--v-m", type=float, default=1.0)
    p.add_argument("--box-a", type=float)
    p.add_argument("--box-v", type=float)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_compare)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
