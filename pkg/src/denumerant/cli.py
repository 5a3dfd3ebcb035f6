"""Command-line front end.

Every subcommand prints one JSON envelope on stdout: the command name, an
echo of the instance (a, D, gcd), a command-specific result, and wall-clock
timing.  All integers in the JSON are decimal strings so no consumer ever
truncates at 64 bits; rationals carry a [numerator, denominator] pair plus a
decimal convenience string.  `--plain` switches to human-readable tables.

Exit codes: 0 success, 2 usage error, 3 enumeration-box guard tripped,
4 cross-route or self-check mismatch.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from fractions import Fraction

from .congruence import (
    DEFAULT_MAX_BOX,
    BoxTooLargeError,
    FiberIndex,
    Instance,
    build_fiber_index,
    fiber_index_from_json,
    fiber_index_to_json,
    make_instance,
)
from .frobenius import frobenius_general, frobenius_pair
from .partition import (
    p_oracle,
    p_oracle_upto,
    p_popoviciu,
    p_product,
    p_quasipoly,
    p_stirling,
    quasipoly,
)
from .polypart import (
    format_polynomial,
    polypart_bernoulli,
    polypart_box_average,
    polypart_from_residues,
    residues_bernoulli_barnes,
    residues_powersum,
)
from .selfcheck import run_selfcheck

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BOX = 3
EXIT_MISMATCH = 4

_EVAL_METHODS = ("auto", "product", "stirling", "quasipoly", "popoviciu", "oracle")
_POLYPART_METHODS = ("bernoulli", "box", "powersum", "barnes")
_RESIDUE_METHODS = ("barnes", "powersum")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# rendering helpers

def _intstr(x: int) -> str:
    return str(x)


def _decimal_str(q: Fraction, digits: int = 12) -> str:
    sign = "-" if q < 0 else ""
    q = abs(q)
    whole, rem = divmod(q.numerator, q.denominator)
    if rem == 0:
        return f"{sign}{whole}"
    frac = rem * 10**digits // q.denominator
    tail = f"{frac:0{digits}d}".rstrip("0")
    if not tail:
        tail = "0" * digits  # value smaller than the rendered precision
    return f"{sign}{whole}.{tail}"


def _frac_json(q: Fraction) -> dict:
    return {
        "frac": [_intstr(q.numerator), _intstr(q.denominator)],
        "decimal": _decimal_str(q),
    }


def _poly_json(poly) -> dict:
    return {
        "coeffs": [_frac_json(c) for c in poly.coeffs],
        "pretty": format_polynomial(poly),
    }


def _instance_json(inst: Instance) -> dict:
    return {
        "a": [_intstr(x) for x in inst.a],
        "D": _intstr(inst.D),
        "g": _intstr(inst.g),
    }


# ---------------------------------------------------------------------------
# argument parsing helpers

def _parse_weights(text: str) -> tuple[int, ...]:
    try:
        a = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise UsageError(f"-a expects comma-separated integers, got {text!r}")
    if not a or any(x < 1 for x in a):
        raise UsageError(f"-a expects positive integers, got {text!r}")
    return a


def _parse_n_range(text: str) -> list[int]:
    try:
        if ".." in text:
            lo_s, hi_s = text.split("..", 1)
            lo, hi = int(lo_s), int(hi_s)
            if lo > hi:
                raise UsageError(f"-n range has lo > hi: {text!r}")
            ns = list(range(lo, hi + 1))
        else:
            ns = [int(text)]
    except ValueError:
        raise UsageError(f"-n expects an integer or lo..hi, got {text!r}")
    if ns and ns[0] < 0:
        raise UsageError(f"-n values must be nonnegative, got {text!r}")
    return ns


def _parse_d_choice(text: str):
    if text in ("lcm", "product"):
        return text
    if text.startswith("explicit:"):
        try:
            return int(text.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"-d explicit:M needs an integer M, got {text!r}")
    raise UsageError(f"-d expects lcm, product, or explicit:M, got {text!r}")


def _make_instance(args) -> Instance:
    try:
        return make_instance(_parse_weights(args.a), _parse_d_choice(args.d))
    except ValueError as exc:
        raise UsageError(str(exc))


def _max_box(args) -> int:
    if getattr(args, "max_box", None) is not None:
        return args.max_box
    env = os.environ.get("DENUMERANT_MAX_BOX")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"DENUMERANT_MAX_BOX must be an integer, got {env!r}")
    return DEFAULT_MAX_BOX


# ---------------------------------------------------------------------------
# fiber index cache

def _cache_path(cache_dir: str, inst: Instance) -> str:
    key = hashlib.sha256(f"{inst.a}|{inst.D}".encode()).hexdigest()[:20]
    return os.path.join(cache_dir, f"fibers_{key}.json")


def _load_or_build_index(inst: Instance, max_box: int, workers: int, cache_dir: str | None) -> FiberIndex:
    if cache_dir:
        path = _cache_path(cache_dir, inst)
        if os.path.exists(path):
            try:
                with open(path) as fh:
                    index = fiber_index_from_json(json.load(fh))
                if index.instance == inst:
                    return index
            except (ValueError, KeyError, json.JSONDecodeError):
                pass  # stale or corrupt cache entry: rebuild below
    index = build_fiber_index(inst, max_box, workers=workers)
    if cache_dir:
        os.makedirs(cache_dir, exist_ok=True)
        with open(_cache_path(cache_dir, inst), "w") as fh:
            json.dump(fiber_index_to_json(index), fh)
    return index


# ---------------------------------------------------------------------------
# subcommand handlers: each returns (instance | None, result dict, exit code)

def _cmd_eval(args):
    inst = _make_instance(args)
    ns = _parse_n_range(args.n)
    max_box = _max_box(args)
    method = args.method

    if method == "popoviciu" and not (inst.r == 2 and inst.g == 1):
        raise UsageError(
            "--method popoviciu needs exactly two coprime weights; "
            f"got a={inst.a} with gcd {inst.g}"
        )

    def auto_method() -> str:
        if inst.r == 1:
            return "product"  # one-tuple box: this is the divisibility test
        if inst.r == 2 and inst.g == 1:
            return "popoviciu"
        return "product" if inst.box_size <= max_box else "oracle"

    resolved = auto_method() if method == "auto" else method
    values = []
    if resolved == "oracle":
        table = p_oracle_upto(inst.a, max(ns))
        values = [(n, table[n]) for n in ns]
    elif resolved == "popoviciu":
        values = [(n, p_popoviciu(inst.a[0], inst.a[1], n)) for n in ns]
    elif resolved == "quasipoly":
        index = _load_or_build_index(inst, max_box, args.workers, args.cache_dir)
        qp = quasipoly(inst.a, index=index)
        values = [(n, p_quasipoly(qp, n)) for n in ns]
    else:
        fn = p_product if resolved == "product" else p_stirling
        if len(ns) > 1 or args.cache_dir:
            index = _load_or_build_index(inst, max_box, args.workers, args.cache_dir)
            values = [(n, fn(inst.a, n, index=index)) for n in ns]
        else:
            values = [(n, fn(inst.a, n, inst.D, max_box=max_box)) for n in ns]

    result = {
        "method": method,
        "resolved_method": resolved,
        "values": [{"n": _intstr(n), "p": _intstr(v)} for n, v in values],
    }
    return inst, result, EXIT_OK


def _cmd_quasipoly(args):
    inst = _make_instance(args)
    index = _load_or_build_index(inst, _max_box(args), args.workers, args.cache_dir)
    qp = quasipoly(inst.a, index=index)
    result = {
        "a": [_intstr(x) for x in inst.a],
        "D": _intstr(inst.D),
        "coeffs": [_frac_json(c) for row in qp.coeffs for c in row],
    }
    return inst, result, EXIT_OK


def _polypart_route(name: str, inst: Instance, args):
    if name == "bernoulli":
        return polypart_bernoulli(inst.a)
    if name == "box":
        index = _load_or_build_index(inst, _max_box(args), args.workers, args.cache_dir)
        return polypart_box_average(inst.a, index=index)
    if name == "powersum":
        return polypart_from_residues(residues_powersum(inst.a, inst.D))
    return polypart_from_residues(residues_bernoulli_barnes(inst.a))


def _cmd_polypart(args):
    inst = _make_instance(args)
    poly = _polypart_route(args.method, inst, args)
    result = {"method": args.method, "polynomial": _poly_json(poly), "check": "not-run"}
    code = EXIT_OK
    if args.check:
        routes = {name: _polypart_route(name, inst, args) for name in _POLYPART_METHODS}
        if len({r.coeffs for r in routes.values()}) == 1:
            result["check"] = "pass"
        else:
            result["check"] = "fail"
            result["routes"] = {name: _poly_json(r) for name, r in routes.items()}
            code = EXIT_MISMATCH
    return inst, result, code


def _residue_route(name: str, inst: Instance):
    if name == "powersum":
        return residues_powersum(inst.a, inst.D)
    return residues_bernoulli_barnes(inst.a)


def _cmd_residues(args):
    inst = _make_instance(args)
    res = _residue_route(args.method, inst)
    result = {
        "method": args.method,
        "residues": {f"R_{m}": _frac_json(res.residue_at(m)) for m in range(1, inst.r + 1)},
        "check": "not-run",
    }
    code = EXIT_OK
    if args.check:
        routes = {name: _residue_route(name, inst) for name in _RESIDUE_METHODS}
        if len({r.values for r in routes.values()}) == 1:
            result["check"] = "pass"
        else:
            result["check"] = "fail"
            result["routes"] = {
                name: {f"R_{m}": _frac_json(r.residue_at(m)) for m in range(1, inst.r + 1)}
                for name, r in routes.items()
            }
            code = EXIT_MISMATCH
    return inst, result, code


def _cmd_frobenius(args):
    inst = _make_instance(args)
    if inst.g != 1:
        raise UsageError(f"Frobenius number undefined: gcd{inst.a} = {inst.g} > 1")
    if inst.r == 2:
        out = frobenius_pair(*inst.a)
        method = "pair"
    else:
        out = frobenius_general(inst.a, inst.D, max_box=_max_box(args))
        method = "fibers"
    result = {
        "method": method,
        "value": _intstr(out.value),
        "witness_residue": None if out.witness_residue is None else _intstr(out.witness_residue),
    }
    return inst, result, EXIT_OK


def _cmd_fibers(args):
    inst = _make_instance(args)
    index = _load_or_build_index(inst, _max_box(args), args.workers, args.cache_dir)
    return inst, fiber_index_to_json(index), EXIT_OK


def _cmd_selfcheck(args):
    report = run_selfcheck(
        max_r=args.max_r,
        max_entry=args.max_entry,
        max_n=args.max_n,
        seed=args.seed,
        instances=args.instances,
        box_budget=args.box_budget,
    )
    return None, report.to_json(), EXIT_OK if report.ok else EXIT_MISMATCH


def _bench_points(n_max: int, count: int) -> list[int]:
    if count <= 1 or n_max == 0:
        return [n_max]
    return sorted({round(i * n_max / (count - 1)) for i in range(count)})


def _cmd_bench(args):
    inst = _make_instance(args)
    ns = _parse_n_range(args.n)
    n_max = max(ns)
    points = _bench_points(n_max, args.points)
    max_box = _max_box(args)

    wanted = [m.strip() for m in args.methods.split(",")] if args.methods else []
    if not wanted:
        wanted = ["product", "stirling", "quasipoly", "oracle"]
        if inst.r == 2 and inst.g == 1:
            wanted.append("popoviciu")
    for m in wanted:
        if m not in _EVAL_METHODS or m == "auto":
            raise UsageError(f"--methods entries must be one of {_EVAL_METHODS[1:]}, got {m!r}")
        if m == "popoviciu" and not (inst.r == 2 and inst.g == 1):
            raise UsageError("popoviciu cannot run: weights are not a coprime pair")

    rows = []
    per_method_values = {}
    for method in wanted:
        setup_ms = 0.0
        t0 = time.perf_counter()
        if method in ("product", "stirling", "quasipoly"):
            index = build_fiber_index(inst, max_box)
            qp = quasipoly(inst.a, index=index) if method == "quasipoly" else None
            setup_ms = (time.perf_counter() - t0) * 1000.0
            t1 = time.perf_counter()
            if method == "quasipoly":
                vals = [p_quasipoly(qp, n) for n in points]
            else:
                fn = p_product if method == "product" else p_stirling
                vals = [fn(inst.a, n, index=index) for n in points]
            query_ms = (time.perf_counter() - t1) * 1000.0
        elif method == "popoviciu":
            vals = [p_popoviciu(inst.a[0], inst.a[1], n) for n in points]
            query_ms = (time.perf_counter() - t0) * 1000.0
        else:
            vals = [p_oracle(inst.a, n) for n in points]
            query_ms = (time.perf_counter() - t0) * 1000.0
        per_method_values[method] = vals
        rows.append(
            {
                "method": method,
                "setup_ms": round(setup_ms, 3),
                "query_ms": round(query_ms, 3),
                "total_ms": round(setup_ms + query_ms, 3),
            }
        )

    agree = len({tuple(v) for v in per_method_values.values()}) == 1
    result = {
        "n_max": _intstr(n_max),
        "points": [_intstr(n) for n in points],
        "methods": rows,
        "values_agree": agree,
        "values": [_intstr(v) for v in per_method_values[wanted[0]]],
        "note": (
            "setup_ms covers the one-time fiber-index (and coefficient-table) build;"
            " point queries amortize it"
        ),
    }
    return inst, result, EXIT_OK if agree else EXIT_MISMATCH


# ---------------------------------------------------------------------------
# plain-text rendering

def _plain_lines(command: str, instance: dict | None, result: dict) -> list[str]:
    lines = []
    if instance is not None:
        lines.append(
            f"a = ({', '.join(instance['a'])})   D = {instance['D']}   gcd = {instance['g']}"
        )
    if command == "eval":
        lines.append(f"method: {result['method']} -> {result['resolved_method']}")
        for rec in result["values"]:
            lines.append(f"  p({rec['n']}) = {rec['p']}")
    elif command == "quasipoly":
        d = int(result["D"])
        coeffs = result["coeffs"]
        r = len(coeffs) // d
        for m in range(r):
            row = coeffs[m * d : (m + 1) * d]
            cells = "  ".join("/".join(c["frac"]) for c in row)
            lines.append(f"  n^{m}: {cells}")
    elif command == "polypart":
        lines.append(f"P(n) = {result['polynomial']['pretty']}   [{result['method']}]")
        if result["check"] != "not-run":
            lines.append(f"cross-route check: {result['check']}")
    elif command == "residues":
        for name, val in result["residues"].items():
            lines.append(f"  {name} = {'/'.join(val['frac'])} ({val['decimal']})")
        if result["check"] != "not-run":
            lines.append(f"cross-route check: {result['check']}")
    elif command == "frobenius":
        lines.append(f"F = {result['value']} (witness residue {result['witness_residue']})")
    elif command == "fibers":
        for residue, tuples in result["fibers"].items():
            shown = ", ".join("(" + ",".join(t) + ")" for t in tuples[:8])
            extra = "" if len(tuples) <= 8 else f", ... ({len(tuples)} total)"
            lines.append(f"  residue {residue}: {shown}{extra}")
    elif command == "selfcheck":
        for chk in result["checks"]:
            lines.append(f"  {chk['name']}: {chk['cases']} cases ok")
        lines.append("self-check: PASS" if result["ok"] else f"self-check: FAIL {result['failure']}")
    elif command == "bench":
        lines.append(f"points: {', '.join(result['points'])}")
        for row in result["methods"]:
            lines.append(
                f"  {row['method']:<10} setup {row['setup_ms']:>10.3f} ms"
                f"   queries {row['query_ms']:>10.3f} ms"
            )
        lines.append(f"values agree: {result['values_agree']}")
        lines.append(result["note"])
    else:
        lines.append(json.dumps(result, indent=2))
    return lines


# ---------------------------------------------------------------------------
# parser

def _add_instance_args(sp, with_workers=True, with_cache=True):
    sp.add_argument("-a", required=True, help="comma-separated positive weights, e.g. 3,5")
    sp.add_argument("-d", default="lcm", help="period choice: lcm | product | explicit:M")
    sp.add_argument("--max-box", type=int, default=None,
                    help=f"enumeration guard (default {DEFAULT_MAX_BOX} or DENUMERANT_MAX_BOX)")
    if with_workers:
        sp.add_argument("--workers", type=int, default=1, help="threads for the box scan")
    if with_cache:
        sp.add_argument("--cache-dir", default=None,
                        help="directory for persisted fiber indexes, keyed by (a, D)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="denumerant",
        description="Exact restricted-partition computations with cross-checked routes.",
    )
    parser.add_argument("--plain", action="store_true", help="human-readable output instead of JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("eval", help="evaluate p_a(n) for one n or a range")
    _add_instance_args(sp)
    sp.add_argument("-n", required=True, help="target value or inclusive range lo..hi")
    sp.add_argument("--method", choices=_EVAL_METHODS, default="auto")
    sp.set_defaults(handler=_cmd_eval)

    sp = sub.add_parser("quasipoly", help="full quasi-polynomial coefficient table")
    _add_instance_args(sp)
    sp.set_defaults(handler=_cmd_quasipoly)

    sp = sub.add_parser("polypart", help="polynomial part of p_a")
    _add_instance_args(sp)
    sp.add_argument("--method", choices=_POLYPART_METHODS, default="bernoulli")
    sp.add_argument("--check", action="store_true", help="compare all routes; exit 4 on mismatch")
    sp.set_defaults(handler=_cmd_polypart)

    sp = sub.add_parser("residues", help="Dirichlet-series residues R_1..R_r")
    _add_instance_args(sp, with_workers=False, with_cache=False)
    sp.add_argument("--method", choices=_RESIDUE_METHODS, default="barnes")
    sp.add_argument("--check", action="store_true", help="compare both routes; exit 4 on mismatch")
    sp.set_defaults(handler=_cmd_residues)

    sp = sub.add_parser("frobenius", help="Frobenius number (gcd must be 1)")
    _add_instance_args(sp, with_workers=False, with_cache=False)
    sp.set_defaults(handler=_cmd_frobenius)

    sp = sub.add_parser("fibers", help="residue-bucketed box enumeration")
    _add_instance_args(sp)
    sp.set_defaults(handler=_cmd_fibers)

    sp = sub.add_parser("selfcheck", help="randomized cross-route verification; exit 4 on mismatch")
    sp.add_argument("--max-r", type=int, default=4)
    sp.add_argument("--max-entry", type=int, default=12)
    sp.add_argument("--max-n", type=int, default=200)
    sp.add_argument("--seed", type=int, default=2026)
    sp.add_argument("--instances", type=int, default=40)
    sp.add_argument("--box-budget", type=int, default=20_000)
    sp.set_defaults(handler=_cmd_selfcheck)

    sp = sub.add_parser("bench", help="time the evaluation routes against each other")
    _add_instance_args(sp, with_workers=False, with_cache=False)
    sp.add_argument("-n", required=True, help="largest n to benchmark (or lo..hi)")
    sp.add_argument("--methods", default=None, help="comma-separated subset of the eval methods")
    sp.add_argument("--points", type=int, default=5, help="number of sample points in 0..n")
    sp.set_defaults(handler=_cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse handles --help (0) and usage errors (2)
        code = exc.code if isinstance(exc.code, int) else EXIT_USAGE
        return code

    t0 = time.perf_counter()
    try:
        instance, result, code = args.handler(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BoxTooLargeError as exc:
        print(f"size guard: {exc}", file=sys.stderr)
        return EXIT_BOX
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    timing_ms = round((time.perf_counter() - t0) * 1000.0, 3)

    instance_json = None if instance is None else _instance_json(instance)
    if args.plain:
        for line in _plain_lines(args.command, instance_json, result):
            print(line)
    else:
        envelope = {
            "command": args.command,
            "instance": instance_json,
            "result": result,
            "timing_ms": timing_ms,
        }
        print(json.dumps(envelope, indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
