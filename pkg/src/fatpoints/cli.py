"""Command line interface.

Subcommands: gen, reduce, bounds, gms, betti, hilbert, check.  All of them
are pure: identical inputs produce byte-identical output.  Exit codes:
0 success, 2 malformed input, 3 violated precondition (e.g. a non-GMS
vector passed to betti), 4 a failed sandwich verdict in check.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import configs
from .betti import betti_table
from .bounds import F_upper, f_lower, gms_witness, is_nonincreasing, pattern_witness
from .errors import PreconditionError, SchemeFormatError, StructureError
from .oracle import hilbert_oracle, oracle_regularity
from .scheme import FatPointScheme, FieldSpec, ReductionTrace, dump_scheme, load_scheme

MAX_DEGREE_CAP = 64


def _parse_vector(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    try:
        entries = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise SchemeFormatError(f"bad vector {text!r}") from None
    if any(x < 0 for x in entries):
        raise SchemeFormatError("vector entries must be non-negative")
    return entries


def _parse_int_list(text: str) -> tuple:
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise SchemeFormatError(f"bad integer list {text!r}") from None


def _read_scheme(path: str) -> FatPointScheme:
    if path == "-":
        return load_scheme(sys.stdin.read())
    with open(path, "r", encoding="utf-8") as fh:
        return load_scheme(fh.read())


def _trace_for(args, scheme: FatPointScheme) -> ReductionTrace:
    if getattr(args, "lines", None):
        return scheme.reduce([name.strip() for name in args.lines.split(",")])
    if getattr(args, "greedy", False):
        if args.budget:
            budget = {}
            for item in args.budget.split(","):
                if "=" not in item:
                    raise SchemeFormatError(f"bad budget entry {item!r}")
                name, count = item.split("=", 1)
                try:
                    budget[name.strip()] = int(count)
                except ValueError:
                    raise SchemeFormatError(f"bad budget entry {item!r}") from None
        elif args.budget_uniform is not None:
            budget = {line.name: args.budget_uniform for line in scheme.lines}
        else:
            cap = scheme.degree()
            budget = {line.name: cap for line in scheme.lines}
        return configs.greedy_reduce(scheme, budget)
    raise SchemeFormatError("a line schedule is required (--lines or --greedy)")


def _emit(text: str) -> None:
    sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _require_flags(args, family: str, flags: tuple) -> None:
    missing = [f"--{name}" for name in flags if getattr(args, name) is None]
    if missing:
        raise SchemeFormatError(f"family {family} requires {', '.join(missing)}")


def cmd_gen(args) -> int:
    params = {}
    if args.family == "grid":
        _require_flags(args, "grid", ("rows", "cols"))
        params = {"rows": args.rows, "cols": args.cols}
        if args.doubles:
            params["doubles"] = tuple(x.strip() for x in args.doubles.split(","))
    elif args.family == "star-config":
        _require_flags(args, "star-config", ("s",))
        try:
            params = {"s": args.s, "m": int(args.m or 1)}
        except ValueError:
            raise SchemeFormatError(f"star-config needs an integer --m, got {args.m!r}") from None
    elif args.family == "linear-config":
        _require_flags(args, "linear-config", ("m",))
        params = {"m": _parse_int_list(args.m)}
    elif args.family == "line-count-config":
        _require_flags(args, "line-count-config", ("a", "m"))
        params = {"a": _parse_int_list(args.a), "m": _parse_int_list(args.m)}
    elif args.family == "projective-plane-fq":
        _require_flags(args, "projective-plane-fq", ("q",))
        params = {"q": args.q, "mult": args.mult}
    elif args.family == "dual-hesse":
        params = {"p": args.p, "mult": args.mult}
    elif args.family == "intersections":
        _require_flags(args, "intersections", ("e",))
        params = {"e": _parse_int_list(args.e), "mult": args.mult, "prime": args.prime}
        if args.coeffs:
            field = FieldSpec.prime(args.p) if args.p else FieldSpec.rationals()
            coeffs = []
            for chunk in args.coeffs.split(";"):
                coeffs.append(tuple(field.parse(x) for x in chunk.split(",")))
            params["coeffs"] = tuple(coeffs)
            params["field"] = field
        elif args.concurrences:
            groups = []
            try:
                for chunk in args.concurrences.split(";"):
                    groups.append(tuple(int(x) - 1 for x in chunk.split(",")))
            except ValueError:
                raise SchemeFormatError(f"bad concurrence list {args.concurrences!r}") from None
            params["concurrences"] = tuple(groups)
    scheme = configs.gen(configs.GeneratorSpec(family=args.family, params=params))
    text = dump_scheme(scheme)
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        _emit(text)
    return 0


def cmd_reduce(args) -> int:
    scheme = _read_scheme(args.scheme)
    trace = _trace_for(args, scheme)
    if args.json:
        doc = {
            "steps": [{"line": s.line, "degree": s.degree} for s in trace.steps],
            "vector": list(trace.vector),
            "full": trace.full,
            "warnings": list(trace.warnings),
        }
        _emit(json.dumps(doc, indent=2) + "\n")
        return 0
    for warning in trace.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    lines = ["step\tline\tdegree"]
    lines += [f"{i + 1}\t{s.line}\t{s.degree}" for i, s in enumerate(trace.steps)]
    lines.append("vector\t" + ",".join(str(d) for d in trace.vector))
    lines.append(f"full\t{'true' if trace.full else 'false'}")
    _emit("\n".join(lines) + "\n")
    return 0


def _vector_from_args(args) -> tuple:
    if args.vector is not None:
        return _parse_vector(args.vector)
    if args.scheme:
        scheme = _read_scheme(args.scheme)
        trace = _trace_for(args, scheme)
        if not trace.full:
            raise PreconditionError("line schedule does not totally reduce the scheme")
        return trace.vector
    raise SchemeFormatError("either --vector or --scheme is required")


def cmd_bounds(args) -> int:
    vector = _vector_from_args(args)
    lo, hi = f_lower(vector), F_upper(vector)
    if args.json:
        _emit(json.dumps({"f": lo.to_dict(), "F": hi.to_dict()}, indent=2) + "\n")
    else:
        _emit(f"f: {lo.render()}\nF: {hi.render()}\n")
    return 0


def cmd_gms(args) -> int:
    vector = _parse_vector(args.vector)
    witness = gms_witness(vector)
    if witness is None:
        _emit("true\n")
        return 0
    if is_nonincreasing(vector) and all(x >= 0 for x in vector):
        span = pattern_witness(vector)
        if span is not None:
            _emit("false: pattern (" + ",".join(str(x) for x in span) + ")\n")
            return 0
    _emit(f"false: pair ({witness[0]},{witness[1]})\n")
    return 0


def cmd_betti(args) -> int:
    vector = _parse_vector(args.vector)
    table = betti_table(vector)
    if args.json:
        doc = {
            "alpha": table.alpha,
            "reg": table.reg,
            "exact": table.exact,
            "nu": [[t, *table.nu_at(t)] for t in sorted(table.nu)],
            "sigma": [[t, *table.sigma_at(t)] for t in sorted(table.sigma)],
        }
        _emit(json.dumps(doc, indent=2) + "\n")
        return 0
    lines = [
        f"alpha\t{table.alpha}",
        f"reg\t{table.reg}",
        f"exact\t{'true' if table.exact else 'false'}",
        "t\tnu_lo\tnu_hi\tsigma_lo\tsigma_hi",
    ]
    lines += ["\t".join(str(x) for x in row) for row in table.rows()]
    _emit("\n".join(lines) + "\n")
    return 0


def _degree_span(args, scheme: FatPointScheme) -> int:
    if args.max_degree is not None:
        return args.max_degree
    return min(oracle_regularity(scheme, MAX_DEGREE_CAP), MAX_DEGREE_CAP)


def cmd_hilbert(args) -> int:
    scheme = _read_scheme(args.scheme)
    top = _degree_span(args, scheme)
    values = [(t, hilbert_oracle(scheme, t)) for t in range(top + 1)]
    if args.json:
        _emit(json.dumps({"values": [[t, h] for t, h in values]}, indent=2) + "\n")
        return 0
    lines = ["t\th"] + [f"{t}\t{h}" for t, h in values]
    _emit("\n".join(lines) + "\n")
    return 0


def cmd_check(args) -> int:
    scheme = _read_scheme(args.scheme)
    trace = _trace_for(args, scheme)
    if not trace.full:
        raise PreconditionError("line schedule does not totally reduce the scheme")
    lo, hi = f_lower(trace.vector), F_upper(trace.vector)
    top = args.max_degree if args.max_degree is not None else max(
        len(lo.prefix), len(hi.prefix), _degree_span(args, scheme)
    )
    rows = []
    ok = True
    for t in range(top + 1):
        h = hilbert_oracle(scheme, t)
        good = lo(t) <= h <= hi(t)
        ok = ok and good
        rows.append((t, lo(t), h, hi(t), "PASS" if good else "FAIL"))
    if args.json:
        doc = {
            "vector": list(trace.vector),
            "rows": [list(r) for r in rows],
            "result": "PASS" if ok else "FAIL",
        }
        _emit(json.dumps(doc, indent=2) + "\n")
    else:
        lines = ["t\tf\th\tF\tverdict"]
        lines += ["\t".join(str(x) for x in row) for row in rows]
        lines.append(f"result\t{'PASS' if ok else 'FAIL'}")
        _emit("\n".join(lines) + "\n")
    return 0 if ok else 4


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fatpoints",
        description="Hilbert function bounds for plane fat point schemes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a configuration family scheme")
    p_gen.add_argument("--family", required=True, choices=configs.FAMILIES)
    p_gen.add_argument("--rows", type=int)
    p_gen.add_argument("--cols", type=int)
    p_gen.add_argument("--doubles", help="grid doubles, e.g. V1H1,V1H2,V2H3")
    p_gen.add_argument("--s", type=int, help="number of lines")
    p_gen.add_argument("--m", help="multiplicity (or comma vector for line counts)")
    p_gen.add_argument("--a", help="comma vector of line multiplicities")
    p_gen.add_argument("--q", type=int, help="projective plane order")
    p_gen.add_argument("--p", type=int, help="prime field characteristic")
    p_gen.add_argument("--e", help="comma vector of line weights")
    p_gen.add_argument("--mult", type=int, default=1, help="uniform multiplier")
    p_gen.add_argument("--prime", action="store_true", help="reduced variant (weights minus one)")
    p_gen.add_argument("--coeffs", help="explicit lines a,b,c;a,b,c;...")
    p_gen.add_argument("--concurrences", help="concurrent line groups, 1-based: 1,2,3;1,4,5")
    p_gen.add_argument("-o", "--output", help="output file (default stdout)")
    p_gen.set_defaults(func=cmd_gen)

    def add_schedule_flags(p):
        p.add_argument("--lines", help="comma separated line names")
        p.add_argument("--greedy", action="store_true", help="greedy maximal-degree schedule")
        p.add_argument("--budget", help="per-line budgets, e.g. L1=2,L2=1")
        p.add_argument("--budget-uniform", type=int, dest="budget_uniform")

    p_reduce = sub.add_parser("reduce", help="residuate a scheme along a line schedule")
    p_reduce.add_argument("--scheme", required=True)
    add_schedule_flags(p_reduce)
    p_reduce.add_argument("--json", action="store_true")
    p_reduce.set_defaults(func=cmd_reduce)

    p_bounds = sub.add_parser("bounds", help="lower/upper Hilbert function bounds")
    p_bounds.add_argument("--vector")
    p_bounds.add_argument("--scheme")
    add_schedule_flags(p_bounds)
    p_bounds.add_argument("--json", action="store_true")
    p_bounds.set_defaults(func=cmd_bounds)

    p_gms = sub.add_parser("gms", help="test the generalized monotonicity criterion")
    p_gms.add_argument("--vector", required=True)
    p_gms.set_defaults(func=cmd_gms)

    p_betti = sub.add_parser("betti", help="graded Betti number bounds from a vector")
    p_betti.add_argument("--vector", required=True)
    p_betti.add_argument("--json", action="store_true")
    p_betti.set_defaults(func=cmd_betti)

    p_hilb = sub.add_parser("hilbert", help="exact Hilbert function via the oracle")
    p_hilb.add_argument("--scheme", required=True)
    p_hilb.add_argument("--max-degree", type=int, dest="max_degree")
    p_hilb.add_argument("--json", action="store_true")
    p_hilb.set_defaults(func=cmd_hilbert)

    p_check = sub.add_parser("check", help="compare bounds against the oracle")
    p_check.add_argument("--scheme", required=True)
    add_schedule_flags(p_check)
    p_check.add_argument("--max-degree", type=int, dest="max_degree")
    p_check.add_argument("--json", action="store_true")
    p_check.set_defaults(func=cmd_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SchemeFormatError, StructureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
