"""Job-driven command line: reads one JSON job document, emits one JSON report.

Commands: eval, convergence, residual, solutions, cauchy, check.
Exit codes: 0 ok (and all checks passed), 1 domain/math error, 2 schema error.
Reports serialize canonically (sorted keys, %.17g floats) so parse -> emit
round-trips byte-identically.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import cauchy, checks, frobenius, named, pde, series
from .errors import DegenerateError, KampeError, SchemaError

_COMMANDS = ("eval", "convergence", "residual", "solutions", "cauchy", "check")
_FUNCTIONS = ("F1211", "F0211", "XI2")
_PARAM_KEYS = {"F1211": "abcdefg", "F0211": "bcdeg", "XI2": "bce"}
_GRID_LIMIT = 10**6


def canonical_dumps(obj) -> str:
    """Deterministic JSON: sorted keys, %.17g floats, compact separators."""
    out = []
    _emit(obj, out)
    return "".join(out)


def _emit(obj, out: list) -> None:
    if obj is None or isinstance(obj, bool):
        out.append(json.dumps(obj))
    elif isinstance(obj, int):
        out.append(repr(obj))
    elif isinstance(obj, float):
        out.append(f"{obj:.17g}" if math.isfinite(obj) else json.dumps(repr(obj)))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        out.append("{")
        for i, key in enumerate(sorted(obj)):
            if i:
                out.append(",")
            out.append(json.dumps(str(key)))
            out.append(":")
            _emit(obj[key], out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, item in enumerate(obj):
            if i:
                out.append(",")
            _emit(item, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialise {type(obj).__name__}")


def _fail(path: str, expected: str):
    raise SchemaError(f"{path}: {expected}")


def _number(job, path: str, value) -> float:
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        _fail(path, "expected a number")
    return float(value)


def _points(job) -> list[tuple[float, float]]:
    if "points" in job:
        pts = job["points"]
        if not isinstance(pts, list) or not pts:
            _fail("points", "expected a non-empty list of [x, y] pairs")
        out = []
        for i, p in enumerate(pts):
            if not isinstance(p, list) or len(p) != 2:
                _fail(f"points[{i}]", "expected [x, y]")
            out.append((_number(job, f"points[{i}][0]", p[0]),
                        _number(job, f"points[{i}][1]", p[1])))
        return out
    if "grid" in job:
        g = job["grid"]
        if not isinstance(g, dict):
            _fail("grid", "expected an object")
        for key in ("x_min", "x_max", "nx", "y_min", "y_max", "ny"):
            if key not in g:
                _fail(f"grid.{key}", "missing")
        nx, ny = int(g["nx"]), int(g["ny"])
        if nx < 1 or ny < 1 or nx * ny > _GRID_LIMIT:
            _fail("grid", f"grid size must be in [1, {_GRID_LIMIT}]")
        x0, x1 = _number(job, "grid.x_min", g["x_min"]), _number(job, "grid.x_max", g["x_max"])
        y0, y1 = _number(job, "grid.y_min", g["y_min"]), _number(job, "grid.y_max", g["y_max"])
        xs = [x0 + (x1 - x0) * i / max(nx - 1, 1) for i in range(nx)]
        ys = [y0 + (y1 - y0) * j / max(ny - 1, 1) for j in range(ny)]
        return [(x, y) for x in xs for y in ys]
    _fail("points", "missing (provide points or grid)")


def _policy(job, args) -> series.TruncationPolicy:
    raw = job.get("policy", {})
    if not isinstance(raw, dict):
        _fail("policy", "expected an object")
    kwargs = {}
    if "rel_tol" in raw:
        kwargs["rel_tol"] = _number(job, "policy.rel_tol", raw["rel_tol"])
    if "max_diagonal" in raw:
        kwargs["max_diagonal"] = int(raw["max_diagonal"])
    if "consecutive_small" in raw:
        kwargs["consecutive_small"] = int(raw["consecutive_small"])
    if args.tol is not None:
        kwargs["rel_tol"] = args.tol
    if args.max_diagonal is not None:
        kwargs["max_diagonal"] = args.max_diagonal
    try:
        return series.TruncationPolicy(**kwargs)
    except KampeError as exc:
        raise SchemaError(f"policy: {exc}") from exc


def _params(job, fn: str):
    raw = job.get("params")
    if not isinstance(raw, dict):
        _fail("params", "expected an object")
    keys = _PARAM_KEYS[fn]
    vals = {}
    for key in keys:
        if key not in raw:
            _fail(f"params.{key}", "missing")
        vals[key] = _number(job, f"params.{key}", raw[key])
    cls = {"F1211": named.ParamsF1211, "F0211": named.ParamsF0211,
           "XI2": named.ParamsXi2}[fn]
    return cls(**vals)


def _function(job) -> str:
    fn = job.get("function")
    if fn not in _FUNCTIONS:
        _fail("function", f"expected one of {_FUNCTIONS}")
    return fn


def _shape_from_job(job) -> series.KdFShape:
    if "shape" in job:
        raw = job["shape"]
        if not isinstance(raw, dict):
            _fail("shape", "expected an object of six parameter lists")
        groups = {}
        for key in ("upper_joint", "upper_x", "upper_y",
                    "lower_joint", "lower_x", "lower_y"):
            vals = raw.get(key, [])
            if not isinstance(vals, list):
                _fail(f"shape.{key}", "expected a list of numbers")
            groups[key] = tuple(_number(job, f"shape.{key}[{i}]", v)
                                for i, v in enumerate(vals))
        return series.KdFShape(**groups)
    fn = _function(job)
    params = _params(job, fn)
    return {"F1211": named.shape_f1211, "F0211": named.shape_f0211,
            "XI2": named.shape_xi2}[fn](params)


def _shape_dict(shape: series.KdFShape) -> dict:
    return {"upper_joint": list(shape.upper_joint), "upper_x": list(shape.upper_x),
            "upper_y": list(shape.upper_y), "lower_joint": list(shape.lower_joint),
            "lower_x": list(shape.lower_x), "lower_y": list(shape.lower_y)}


def _cmd_eval(job, args):
    shape = _shape_from_job(job)
    policy = _policy(job, args)
    rows = []
    for (x, y) in _points(job):
        try:
            res = series.kdf_eval(shape, (x, y), policy)
            rows.append({"x": x, "y": y, "value": res.value,
                         "status": res.status.value, "diagonals": res.diagonals_used,
                         "tail": res.tail_estimate})
        except KampeError as exc:
            rows.append({"x": x, "y": y, "value": math.nan,
                         "status": "diverged", "diagonals": 0, "tail": math.inf,
                         "error": str(exc)})
    return {"command": "eval", "results": rows}


def _cmd_convergence(job, args):
    shape = _shape_from_job(job)
    region = series.classify_convergence(shape)

    def radius(rad: float):
        return "inf" if math.isinf(rad) else rad

    return {"command": "convergence",
            "region": {"x_radius": radius(region.x_radius),
                       "y_radius": radius(region.y_radius),
                       "coupled_exponent_base": region.coupled}}


def _cmd_solutions(job, args):
    fn = _function(job)
    if fn == "XI2":
        _fail("function", "solutions supports F1211 and F0211")
    params = _params(job, fn)
    builder = (frobenius.solution_pair_f1211 if fn == "F1211"
               else frobenius.solution_pair_f0211)
    try:
        pair = builder(params)
    except DegenerateError as exc:
        u1 = exc.first_solution
        return {"command": "solutions", "degenerate": True, "message": str(exc),
                "solutions": [{"tau": u1.exponents.tau, "nu": u1.exponents.nu,
                               "shape": _shape_dict(u1.shape)}]}
    return {"command": "solutions", "degenerate": False,
            "solutions": [{"tau": s.exponents.tau, "nu": s.exponents.nu,
                           "shape": _shape_dict(s.shape)} for s in pair]}


def _cmd_residual(job, args):
    fn = _function(job)
    if fn == "XI2":
        _fail("function", "residual supports F1211 and F0211")
    params = _params(job, fn)
    which = job.get("solution", "u1")
    if which not in ("u1", "u2"):
        _fail("solution", "expected 'u1' or 'u2'")
    pair = (frobenius.solution_pair_f1211(params) if fn == "F1211"
            else frobenius.solution_pair_f0211(params))
    sol = pair[0 if which == "u1" else 1]
    system = (pde.expanded_system_f1211(params) if fn == "F1211"
              else pde.expanded_system_f0211(params))
    policy = _policy(job, args)
    ev = frobenius.solution_evaluator(sol, policy)
    rows = []
    for pt in _points(job):
        for i, res in enumerate(pde.residual(system, ev, pt)):
            rows.append({"x": pt[0], "y": pt[1], "equation": i + 1,
                         "residual": res.value, "scale": res.scale,
                         "ratio": abs(res.value) / max(res.scale, 1e-300)})
    return {"command": "residual", "solution": which, "results": rows}


def _cmd_cauchy(job, args):
    raw = job.get("problem")
    if not isinstance(raw, dict):
        _fail("problem", "expected an object")
    for key in ("alpha", "beta"):
        if key not in raw:
            _fail(f"problem.{key}", "missing")
    tau = raw.get("tau", [])
    nu = raw.get("nu", [])
    if not isinstance(tau, list) or not isinstance(nu, list):
        _fail("problem.tau", "expected polynomial coefficient lists")
    try:
        problem = cauchy.CauchyProblem(
            alpha=_number(job, "problem.alpha", raw["alpha"]),
            beta=_number(job, "problem.beta", raw["beta"]),
            lam=_number(job, "problem.lambda", raw.get("lambda", 0.0)),
            tau_data=tuple(_number(job, f"problem.tau[{i}]", v) for i, v in enumerate(tau)),
            nu_data=tuple(_number(job, f"problem.nu[{i}]", v) for i, v in enumerate(nu)))
    except KampeError as exc:
        raise SchemaError(f"problem: {exc}") from exc
    nodes = args.nodes if args.nodes is not None else int(job.get("nodes", 64))
    policy = _policy(job, args)
    rows = []
    for (xi, eta) in _points(job):
        rows.append({"x": xi, "y": eta,
                     "value": cauchy.solve_point(problem, (xi, eta), nodes, policy)})
    return {"command": "cauchy", "nodes": nodes, "results": rows}


def _cmd_check(job, args):
    seed = args.seed if args.seed is not None else int(job.get("seed", 42))
    nodes = args.nodes if args.nodes is not None else int(job.get("nodes", 64))
    names = job.get("checks")
    if names is not None:
        if not isinstance(names, list):
            _fail("checks", "expected a list of check names")
        unknown = [n for n in names if n not in checks.ALL_CHECKS]
        if unknown:
            _fail("checks", f"unknown names {unknown}; available: {sorted(checks.ALL_CHECKS)}")
    results = checks.run_checks(names, seed=seed, nodes=nodes)
    return {"command": "check", "seed": seed,
            "all_passed": all(r.passed for r in results),
            "results": [{"name": r.name, "passed": r.passed, "worst": r.worst,
                         "tolerance": r.tolerance, "detail": r.detail}
                        for r in results]}


_DISPATCH = {"eval": _cmd_eval, "convergence": _cmd_convergence,
             "residual": _cmd_residual, "solutions": _cmd_solutions,
             "cauchy": _cmd_cauchy, "check": _cmd_check}


def run(job: dict, args) -> dict:
    if not isinstance(job, dict):
        _fail("$", "job document must be an object")
    command = job.get("command")
    if command not in _COMMANDS:
        _fail("command", f"expected one of {_COMMANDS}")
    return _DISPATCH[command](job, args)


def _write_csv(report: dict, path: str) -> None:
    rows = report.get("results", [])
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("x,y,value,status\n")
        for row in rows:
            if "x" not in row:
                continue
            value = row.get("value", row.get("ratio", math.nan))
            status = row.get("status", "ok")
            fh.write(f"{row['x']:.17g},{row['y']:.17g},{value:.17g},{status}\n")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="kampe",
        description="Evaluate double hypergeometric series, verify their PDE systems, "
                    "and solve the associated degenerate hyperbolic Cauchy problem.")
    parser.add_argument("--job", help="path to the JSON job document (default: stdin)")
    parser.add_argument("--tol", type=float, help="override series relative tolerance")
    parser.add_argument("--max-diagonal", type=int, help="override series diagonal cap")
    parser.add_argument("--nodes", type=int, help="override quadrature node count")
    parser.add_argument("--seed", type=int, help="seed for randomized checks (default 42)")
    parser.add_argument("--csv", help="also write per-point results as CSV")
    args = parser.parse_args(argv)

    try:
        if args.job:
            with open(args.job, encoding="utf-8") as fh:
                text = fh.read()
        else:
            text = sys.stdin.read()
        try:
            job = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"$: invalid JSON ({exc})") from exc
        report = run(job, args)
    except SchemaError as exc:
        sys.stdout.write(canonical_dumps({"error": "schema", "message": str(exc)}) + "\n")
        return 2
    except KampeError as exc:
        sys.stdout.write(canonical_dumps(
            {"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return 1
    except OSError as exc:
        sys.stdout.write(canonical_dumps({"error": "io", "message": str(exc)}) + "\n")
        return 2

    sys.stdout.write(canonical_dumps(report) + "\n")
    if args.csv:
        _write_csv(report, args.csv)
    if report.get("command") == "check" and not report["all_passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
