"""Command-line surface: subcommand dispatch with exact JSON output.

Every JSON response carries {"op", "inputs", "result" | "error"} plus a
top-level "completeness" key when the operation reports one.  Exact
rationals are rendered as "p/q" strings, never as decimals; heights are
the one exception (decimal value with an explicit radius).  Exit codes:
0 success, 1 domain errors, 2 usage errors.

Batch mode reads a JSON array of job objects ({"op": ..., "args":
{...}}) and streams one result object per line, executing jobs
concurrently up to a worker cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import chebdickson, decomp, heights, intersect, lines, normal_forms, siegel
from .intfactor import FactorizationError
from .parser import PolyParseError, format_poly, parse_poly
from .poly import LinearMap, RatPoly, compose, iterate
from .scalars import as_fraction

__all__ = ["main", "dispatch"]


class UsageError(ValueError):
    pass


def _rat(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {text!r} ({exc})")


def _poly(text: str) -> RatPoly:
    try:
        return parse_poly(text)
    except PolyParseError as exc:
        raise UsageError(f"bad polynomial {text!r}: {exc}")


def _fmt_rat(x: Fraction) -> str:
    return str(Fraction(x))


def _json_poly(p: RatPoly) -> str:
    return format_poly(p)


def _json_linear(ell: LinearMap) -> str:
    return format_poly(ell.to_poly())


def _json_value(v):
    if isinstance(v, Fraction):
        return _fmt_rat(v)
    return v


# -- subcommand handlers ------------------------------------------------------
# each returns (inputs, result, completeness-or-None)


def _op_compose(args):
    outer, inner = _poly(args.outer), _poly(args.inner)
    return ({"outer": args.outer, "inner": args.inner},
            _json_poly(compose(outer, inner)), None)


def _op_iterate(args):
    f = _poly(args.f)
    if args.n < 0:
        raise UsageError("--n must be nonnegative")
    return ({"f": args.f, "n": args.n}, _json_poly(iterate(f, args.n)), None)


def _op_cheb(args):
    if args.n < 0:
        raise UsageError("--n must be nonnegative")
    return ({"n": args.n}, _json_poly(chebdickson.chebyshev_t(args.n)), None)


def _op_dickson(args):
    if args.n < 0:
        raise UsageError("--n must be nonnegative")
    a = _rat(args.a)
    return ({"n": args.n, "a": args.a},
            _json_poly(chebdickson.dickson(args.n, a)), None)


def _op_decompose(args):
    f = _poly(args.f)
    inputs = {"f": args.f}
    if args.at is not None:
        inputs["at"] = args.at
        pair = decomp.decompose_at(f, args.at)
        result = None if pair is None else {
            "outer": _json_poly(pair.outer), "inner": _json_poly(pair.inner)}
        return inputs, result, None
    if args.complete:
        inputs["complete"] = True
        chains = decomp.complete_decompositions(f, args.cap)
        return inputs, [[_json_poly(g) for g in c.factors] for c in chains], None
    pairs = decomp.bidecompositions(f)
    return inputs, [{"outer": _json_poly(p.outer), "inner": _json_poly(p.inner)}
                    for p in pairs], None


def _fmt_normal_form(report) -> dict:
    if isinstance(report, normal_forms.PowerLike):
        return {"kind": "PowerLike", "alpha": _fmt_rat(report.alpha),
                "witness": _json_linear(report.witness), "n": report.n}
    if isinstance(report, normal_forms.ChebyshevLike):
        return {"kind": "ChebyshevLike", "epsilon": report.epsilon,
                "witness": _json_linear(report.witness), "n": report.n}
    if isinstance(report, normal_forms.ChebSquareExceptional):
        return {"kind": "ExceptionalSquare", "n": report.n,
                "note": "degree-2 second iterates do not determine the form"}
    return {"kind": "General", "n": report.n}


def _op_normal_form(args):
    f = _poly(args.f)
    inputs = {"f": args.f}
    if args.iterate is not None:
        inputs["iterate"] = args.iterate
        report = normal_forms.iterate_root_form(f, args.iterate)
        return inputs, None if report is None else _fmt_normal_form(report), None
    return inputs, _fmt_normal_form(normal_forms.conjugacy_normal_form(f)), None


def _op_classify_pair(args):
    f, g = _poly(args.f), _poly(args.g)
    wit = siegel.classify_pair(f, g)
    inputs = {"f": args.f, "g": args.g}
    if wit is None:
        return inputs, None, None
    result = {
        "kind": wit.params.kind,
        "m": wit.params.m, "n": wit.params.n, "r": wit.params.r,
        "p": None if wit.params.p is None else _json_poly(wit.params.p),
        "E": _json_poly(wit.E),
        "mu": _json_linear(wit.mu), "nu": _json_linear(wit.nu),
        "F1": _json_poly(wit.F1), "G1": _json_poly(wit.G1),
        "swapped": wit.swapped,
    }
    return inputs, result, None


def _params_from_args(args) -> siegel.StandardPairParams:
    p = _poly(args.p) if args.p is not None else None
    return siegel.StandardPairParams(kind=args.kind, m=args.m, n=args.n,
                                     r=args.r, p=p)


def _op_verify_witness(args):
    params = _params_from_args(args)
    f1, g1 = siegel.standard_pair(params)
    phi, psi, ring = siegel.siegel_witness(params)
    ok = siegel.verify_composition_identity(f1, phi, g1, psi)
    inputs = {"kind": args.kind, "m": args.m, "n": args.n, "r": args.r,
              "p": args.p}
    result = {"F1": _json_poly(f1), "G1": _json_poly(g1),
              "ring": repr(ring) if ring is not None else "Q",
              "verified": ok}
    return inputs, result, None


def _op_orbit(args):
    f = _poly(args.f)
    x0 = _rat(args.x0)
    budget = intersect.OrbitBudget(args.max_steps, args.max_height)
    trace = intersect.orbit(f, x0, budget)
    status = ({"kind": "Preperiodic", "tail_length": trace.status.tail_length,
               "cycle_length": trace.status.cycle_length}
              if isinstance(trace.status, intersect.Preperiodic)
              else {"kind": "Wandering", "steps": trace.status.steps})
    return ({"f": args.f, "x0": args.x0},
            {"points": [_fmt_rat(p) for p in trace.points], "status": status},
            None)


def _op_height(args):
    f = _poly(args.f)
    x = _rat(args.x)
    hv = heights.canonical_height(f, x, args.radius)
    return ({"f": args.f, "x": args.x, "radius": args.radius},
            {"value": hv.value, "radius": hv.radius, "exact_zero": hv.exact_zero},
            None)


def _op_preperiodic(args):
    f = _poly(args.f)
    x = _rat(args.x)
    return ({"f": args.f, "x": args.x}, heights.is_preperiodic(f, x), None)


def _fmt_point(p: intersect.FinitePoint) -> dict:
    return {"value": None if p.value is None else _fmt_rat(p.value),
            "m": p.m, "n": p.n}


def _fmt_intersection(rep: intersect.IntersectionReport):
    result = {"finite_points": [_fmt_point(p) for p in rep.finite_points]}
    if rep.infinite_family is not None:
        fam = rep.infinite_family
        result["infinite_family"] = {
            "base": list(fam.base), "step": list(fam.step),
            "witness": None if fam.witness is None else _json_poly(fam.witness),
        }
    if rep.note:
        result["note"] = rep.note
    return result


def _op_intersect(args):
    f, g = _poly(args.f), _poly(args.g)
    x0, y0 = _rat(args.x0), _rat(args.y0)
    budget = intersect.OrbitBudget(args.max_steps, args.max_height)
    rep = intersect.orbit_intersection(f, g, x0, y0, budget)
    return ({"f": args.f, "g": args.g, "x0": args.x0, "y0": args.y0},
            _fmt_intersection(rep), rep.completeness)


def _op_common_iterate(args):
    f, g = _poly(args.f), _poly(args.g)
    got = intersect.common_iterate(f, g, K=args.bound)
    inputs = {"f": args.f, "g": args.g}
    if isinstance(got, intersect.CommonIterateFound):
        return inputs, {"verdict": "Found", "m1": got.m1, "m2": got.m2,
                        "witness": _json_poly(got.witness)}, None
    if isinstance(got, intersect.CommonIterateNever):
        return inputs, {"verdict": "Never", "reason": got.reason}, None
    return inputs, {"verdict": "Unknown", "bound": got.bound}, None


def _parse_line(text: str) -> lines.LineSpec:
    coords: list = []
    for part in text.split(";"):
        part = part.strip()
        if part == "id":
            coords.append(lines.Linked(LinearMap.identity()))
        elif part.startswith("c:"):
            coords.append(lines.Constant(_rat(part[2:])))
        else:
            p = _poly(part)
            if p.degree != 1:
                raise UsageError(f"linked coordinate needs a degree-1 map, got {part!r}")
            coords.append(lines.Linked(LinearMap.from_poly(p)))
    try:
        return lines.LineSpec(tuple(coords))
    except ValueError as exc:
        raise UsageError(str(exc))


def _op_line_invariance(args):
    fs = [_poly(t) for t in args.fs.split(";")]
    line = _parse_line(args.line)
    inputs = {"fs": args.fs, "line": args.line}
    if args.ms is not None:
        ms = [int(t) for t in args.ms.split(",")]
        inputs["ms"] = args.ms
        return inputs, lines.line_invariant_check(fs, ms, line), None
    got = lines.find_invariant_exponents(fs, line, bound=args.bound)
    return inputs, None if got is None else list(got), None


def _op_line_intersect(args):
    fs = [_poly(t) for t in args.fs.split(";")]
    line = _parse_line(args.line)
    alpha = [_rat(t) for t in args.alpha.split(",")]
    budget = intersect.OrbitBudget(args.max_steps, args.max_height)
    rep = lines.intersection_cosets(fs, alpha, line, budget)
    result = {
        "cosets": [{"offsets": list(c.offsets), "period": list(c.period)}
                   for c in rep.cosets],
        "extras": [{"indices": list(h.indices),
                    "point": [_fmt_rat(v) for v in h.point]}
                   for h in rep.extras],
    }
    if rep.note:
        result["note"] = rep.note
    return ({"fs": args.fs, "alpha": args.alpha, "line": args.line},
            result, rep.completeness)


_HANDLERS = {
    "compose": _op_compose,
    "iterate": _op_iterate,
    "cheb": _op_cheb,
    "dickson": _op_dickson,
    "decompose": _op_decompose,
    "normal-form": _op_normal_form,
    "classify-pair": _op_classify_pair,
    "verify-witness": _op_verify_witness,
    "orbit": _op_orbit,
    "height": _op_height,
    "preperiodic": _op_preperiodic,
    "intersect": _op_intersect,
    "common-iterate": _op_common_iterate,
    "line-invariance": _op_line_invariance,
    "line-intersect": _op_line_intersect,
}


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="orbitlab",
        description="Exact polynomial-orbit toolkit: composition algebra, "
                    "decomposition, heights, and orbit-intersection solvers.")
    top.add_argument("--json", action="store_true", help="emit JSON output")
    top.add_argument("--batch", metavar="FILE",
                     help="run a JSON array of jobs, one result per line")
    top.add_argument("--workers", type=int, default=4,
                     help="concurrent workers for batch mode")
    sub = top.add_subparsers(dest="op")

    def add(name, **flags):
        p = sub.add_parser(name)
        # accept --json after the subcommand as well
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        for flag, spec in flags.items():
            p.add_argument(f"--{flag}", **spec)
        return p

    add("compose", outer={"required": True}, inner={"required": True})
    add("iterate", f={"required": True}, n={"required": True, "type": int})
    add("cheb", n={"required": True, "type": int})
    add("dickson", n={"required": True, "type": int}, a={"default": "0"})
    add("decompose", f={"required": True},
        at={"type": int, "default": None},
        complete={"action": "store_true"},
        cap={"type": int, "default": 64})
    add("normal-form", f={"required": True},
        iterate={"type": int, "default": None})
    add("classify-pair", f={"required": True}, g={"required": True})
    add("verify-witness", kind={"required": True, "type": int},
        m={"type": int, "default": 1}, n={"type": int, "default": 1},
        r={"type": int, "default": 0}, p={"default": None})
    add("orbit", f={"required": True}, x0={"required": True},
        **{"max-steps": {"type": int, "default": 32, "dest": "max_steps"},
           "max-height": {"type": float, "default": 1e6, "dest": "max_height"}})
    add("height", f={"required": True}, x={"required": True},
        radius={"type": float, "default": 1e-9})
    add("preperiodic", f={"required": True}, x={"required": True})
    add("intersect", f={"required": True}, g={"required": True},
        x0={"required": True}, y0={"required": True},
        **{"max-steps": {"type": int, "default": 32, "dest": "max_steps"},
           "max-height": {"type": float, "default": 1e6, "dest": "max_height"}})
    add("common-iterate", f={"required": True}, g={"required": True},
        bound={"type": int, "default": 8})
    add("line-invariance", fs={"required": True}, line={"required": True},
        ms={"default": None}, bound={"type": int, "default": 8})
    add("line-intersect", fs={"required": True}, alpha={"required": True},
        line={"required": True},
        **{"max-steps": {"type": int, "default": 8, "dest": "max_steps"},
           "max-height": {"type": float, "default": 1e6, "dest": "max_height"}})
    return top


def _render_human(payload: dict) -> str:
    if "error" in payload:
        return f"error: {payload['error']}"
    result = payload["result"]
    lines_out = []
    if isinstance(result, str):
        lines_out.append(result)
    else:
        lines_out.append(json.dumps(result, indent=2, sort_keys=False))
    if payload.get("completeness"):
        lines_out.append(f"completeness: {payload['completeness']}")
    return "\n".join(lines_out)


def _run_single(op: str, args) -> tuple[int, dict]:
    handler = _HANDLERS[op]
    try:
        inputs, result, completeness = handler(args)
    except UsageError:
        raise
    except (PolyParseError,) as exc:
        raise UsageError(str(exc))
    except (ValueError, ZeroDivisionError, FactorizationError,
            decomp.ChainCapExceeded, siegel.ClassifyCapExceeded,
            heights.BitBudgetExceeded) as exc:
        payload = {"op": op, "inputs": {}, "error": f"{op}: {exc}"}
        return 1, payload
    payload = {"op": op, "inputs": inputs, "result": result}
    if completeness is not None:
        payload["completeness"] = completeness
    return 0, payload


def _batch_job(job: dict) -> tuple[int, dict]:
    op = job.get("op")
    if op not in _HANDLERS:
        return 2, {"op": op, "inputs": {}, "error": f"unknown op {op!r}"}
    parser = _build_parser()
    argv = [op]
    for key, value in job.get("args", {}).items():
        if value is True:
            argv.append(f"--{key}")
        else:
            argv.extend([f"--{key}", str(value)])
    try:
        ns = parser.parse_args(argv)
    except SystemExit:
        return 2, {"op": op, "inputs": job.get("args", {}),
                   "error": "bad arguments"}
    try:
        return _run_single(op, ns)
    except UsageError as exc:
        return 2, {"op": op, "inputs": job.get("args", {}), "error": str(exc)}


# flags whose values are expressions and may start with a minus sign
_VALUE_FLAGS = {"--f", "--g", "--outer", "--inner", "--p", "--x", "--x0",
                "--y0", "--a", "--alpha", "--fs", "--line", "--ms"}


def _join_negative_values(argv: list[str]) -> list[str]:
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and \
                argv[i + 1].startswith("-") and not argv[i + 1].startswith("--"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def dispatch(argv) -> tuple[int, str]:
    """Run one CLI invocation; returns (exit_status, output_text)."""
    parser = _build_parser()
    try:
        ns = parser.parse_args(_join_negative_values(list(argv)))
    except SystemExit as exc:
        return (exc.code if isinstance(exc.code, int) else 2), ""
    if not hasattr(ns, "json"):
        ns.json = False
    if ns.batch:
        try:
            with open(ns.batch, "r", encoding="utf-8") as fh:
                jobs = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            return 2, f"error: cannot read batch file: {exc}"
        if not isinstance(jobs, list):
            return 2, "error: batch file must hold a JSON array of jobs"
        with ThreadPoolExecutor(max_workers=max(1, ns.workers)) as pool:
            results = list(pool.map(_batch_job, jobs))
        out_lines = [json.dumps(payload, separators=(",", ":"))
                     for _, payload in results]
        status = max((code for code, _ in results), default=0)
        return status, "\n".join(out_lines)
    if not ns.op:
        parser.print_usage(sys.stderr)
        return 2, ""
    try:
        code, payload = _run_single(ns.op, ns)
    except UsageError as exc:
        return 2, f"usage error: {exc}"
    if ns.json:
        return code, json.dumps(payload, separators=(",", ":"))
    return code, _render_human(payload)


def main() -> None:
    code, output = dispatch(sys.argv[1:])
    if output:
        print(output)
    sys.exit(code)


if __name__ == "__main__":
    main()
