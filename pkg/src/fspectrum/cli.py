"""Command-line interface.

Exit codes: 0 success, 1 theorem violation (a report is still printed),
2 malformed input.
"""

from __future__ import annotations

import argparse
import sys
from typing import Any, Sequence

from . import battery
from .errors import DomainError, InputError, TheoremViolation
from .extension import SpectrumFunc, approximate, extend
from .filters import enumerate_F_filters, ultrafilters
from .ground import Algebra, GroundSet
from .ideals import (
    characters,
    enumerate_ideals,
    filter_from_ideal,
    spectrum_homeo,
)
from .instance import (
    dump,
    format_rational,
    load_instance,
    load_json,
    parse_rational,
    parse_table,
    values_json,
)
from .morphisms import EMBOPEN_MESSAGE, AlgebraPair, is_subalgebra, quotient_map
from .spectrum import build_spectrum, closure_eA, hat

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


def _labels(ground: GroundSet, subset) -> list[str]:
    return ground.labels(sorted(subset))


def _blocks(algebra: Algebra) -> list[list[str]]:
    return [_labels(algebra.ground, b) for b in algebra.blocks]


def cmd_algebra(args: argparse.Namespace) -> tuple[dict, list[str], int]:
    alg = load_instance(args.file).algebra()
    data = {"blocks": _blocks(alg), "dimension": alg.dimension}
    lines = [f"{alg.num_blocks} blocks, dimension {alg.dimension}"]
    lines += [f"  B{j}: {{{', '.join(b)}}}" for j, b in enumerate(data["blocks"])]
    return data, lines, EXIT_OK


def cmd_filters(args: argparse.Namespace) -> tuple[dict, list[str], int]:
    alg = load_instance(args.file).algebra()
    ground = alg.ground
    ff = enumerate_F_filters(alg)
    ultra = ultrafilters(alg)
    data = {
        "ultrafilters": [_labels(ground, u.block) for u in ultra],
        "F_filters": [_labels(ground, phi.generator) for phi in ff],
    }
    lines = [f"{len(ultra)} ultrafilters, {len(ff)} F-filters"]
    lines += [f"  <{{{', '.join(g)}}}>" + (" ultra" if len(phi.block_ids) == 1 else "")
              for g, phi in zip(data["F_filters"], ff)]
    return data, lines, EXIT_OK


def cmd_spectrum(args: argparse.Namespace) -> tuple[dict, list[str], int]:
    alg = load_instance(args.file).algebra()
    space = build_spectrum(alg)
    ground = alg.ground
    part = alg.partition
    rows = []
    for mask in range(1, 1 << len(space)):
        a = part.union(j for j in range(len(space)) if mask >> j & 1)
        rows.append({"set": _labels(ground, a), "hat": sorted(hat(space, a)), "closure": sorted(closure_eA(space, a))})
    data = {
        "points": [{"index": p, "block": _labels(ground, space.block(p))} for p in range(len(space))],
        "evaluation": {ground.elements[x]: space.e(x) for x in ground},
        "sets": rows,
    }
    lines = [f"{len(space)} points"]
    lines += [f"  p{d['index']} = block {{{', '.join(d['block'])}}}" for d in data["points"]]
    lines.append("  e: " + ", ".join(f"{k}->p{v}" for k, v in data["evaluation"].items()))
    lines.append("  saturated A | hat(A) | cl e(A)")
    lines += [f"  {{{', '.join(r['set'])}}} | {r['hat']} | {r['closure']}" for r in rows]
    return data, lines, EXIT_OK


def cmd_extend(args: argparse.Namespace) -> tuple[dict, list[str], int]:
    inst = load_instance(args.file)
    alg = inst.algebra()
    space = build_spectrum(alg)
    fhat = extend(space, inst.function(args.fn))
    data = {"function": args.fn, "values": values_json(fhat.values)}
    lines = [f"extension of {args.fn} to {len(space)} points"]
    lines += [f"  p{p}: {v}" for p, v in enumerate(fhat.values)]
    return data, lines, EXIT_OK


def _load_target(path: str, space) -> SpectrumFunc:
    obj = load_json(path)
    if not isinstance(obj, dict) or len(obj.keys() & {"function", "points"}) != 1:
        raise InputError('target must be an object with exactly one of "function" or "points"')
    if "points" in obj:
        table = obj["points"]
        if not isinstance(table, list) or len(table) != len(space):
            raise InputError(f"target needs {len(space)} point values")
        placeholder = GroundSet.of_size(len(space))
        return SpectrumFunc(space, parse_table(placeholder, table, "target").values)
    g = parse_table(space.algebra.ground, obj["function"], "target")
    for p in range(len(space)):
        if len(g.image(space.block(p))) != 1:
            raise InputError("target function is not constant on the blocks; it does not define a function on the spectrum")
    return SpectrumFunc(space, tuple(g.values[min(space.block(p))] for p in range(len(space))))


def cmd_approx(args: argparse.Namespace) -> tuple[dict, list[str], int]:
    alg = load_instance(args.file).algebra()
    space = build_spectrum(alg)
    g = _load_target(args.target, space)
    eps = parse_rational(args.epsilon)
    if eps <= 0:
        raise InputError("epsilon must be positive")
    f, trace = approximate(space, g, eps, reduce=True)
    err = (extend(space, f) - g).sup_norm_sq()
    data: dict[str, Any] = {
        "epsilon": format_rational(eps),
        "error_squared": format_rational(err),
        "within_epsilon": err <= eps * eps,
        "result": values_json(f.values),
        "reduction": trace.reduction,
    }
    exact = trace.error
    if exact is not None:
        data["error"] = format_rational(exact)
    lines = [
        f"achieved error {data.get('error', 'sqrt(' + data['error_squared'] + ')')} <= {data['epsilon']}"
        if data["within_epsilon"] else f"error^2 {data['error_squared']} exceeds {data['epsilon']}^2",
        "  f = [" + ", ".join(str(v) for v in f.values) + "]",
    ]
    if args.trace:
        data["trace"] = _trace_json(trace, alg.ground)
        lines += _trace_lines(trace, alg.ground)
    return data, lines, EXIT_OK if data["within_epsilon"] else EXIT_VIOLATION


def _trace_json(trace, ground: GroundSet) -> dict[str, Any]:
    return {
        "reduction": trace.reduction,
        "radius": format_rational(trace.radius),
        "inner_radius": format_rational(trace.inner_radius),
        "n": trace.n,
        "shift": format_rational(trace.shift),
        "scale": format_rational(trace.scale),
        "levels": [
            {
                "k": lv.k,
                "interval": [format_rational(lv.interval[0]), format_rational(lv.interval[1])],
                "A": _labels(ground, lv.A),
                "C": sorted(lv.C),
                "bumps": [{"point": p, "height": format_rational(h)} for p, h in lv.bumps],
            }
            for lv in trace.levels
        ],
        "parts": {k: _trace_json(t, ground) for k, t in sorted(trace.parts.items())},
    }


def _trace_lines(trace, ground: GroundSet, indent: str = "  ") -> list[str]:
    out = [f"{indent}{trace.reduction}: n={trace.n}, inner radius {format_rational(trace.inner_radius)}"]
    for lv in trace.levels:
        lo, hi = (format_rational(v) for v in lv.interval)
        out.append(f"{indent}  k={lv.k} I=[{lo}, {hi}] A={{{', '.join(_labels(ground, lv.A))}}} C={sorted(lv.C)}")
    for name, part in sorted(trace.parts.items()):
        if part.levels is not trace.levels:
            out += _trace_lines(part, ground, indent + f"  [{name}] ")
    return out


def cmd_ideals(args: argparse.Namespace) -> tuple[dict, list[str], int]:
    alg = load_instance(args.file).algebra()
    ground = alg.ground
    table = []
    for ideal in enumerate_ideals(alg):
        phi = filter_from_ideal(ideal)
        table.append({
            "vanishing_blocks": sorted(ideal.vanishing_blocks),
            "zero": ideal.is_zero,
            "maximal": ideal.is_maximal,
            "filter_generator": _labels(ground, phi.generator),
        })
    chars = characters(alg)
    homeo = spectrum_homeo(alg)
    data = {
        "ideals": table,
        "characters": [{"weights": list(mu.weights), "point": homeo[i]} for i, mu in enumerate(chars)],
        "maximal_ideals": [row["vanishing_blocks"] for row in table if row["maximal"]],
    }
    lines = [f"{len(table)} ideals, {len(chars)} characters, {len(data['maximal_ideals'])} maximal ideals"]
    for row in table:
        tag = " (zero)" if row["zero"] else " (maximal)" if row["maximal"] else ""
        lines.append(f"  vanishing on {row['vanishing_blocks']}{tag} <-> <{{{', '.join(row['filter_generator'])}}}>")
    return data, lines, EXIT_OK


def cmd_compare(args: argparse.Namespace) -> tuple[dict, list[str], int]:
    a1 = load_instance(args.file1).algebra()
    a2 = load_instance(args.file2).algebra()
    if a1.ground != a2.ground:
        raise InputError("instances have different ground sets")
    data: dict[str, Any] = {"first_in_second": is_subalgebra(a1, a2), "second_in_first": is_subalgebra(a2, a1)}
    lines = [f"first ⊆ second: {data['first_in_second']}", f"second ⊆ first: {data['second_in_first']}"]
    for key, fine, coarse in (("map_second_to_first", a2, a1), ("map_first_to_second", a1, a2)):
        if is_subalgebra(coarse, fine):
            fmap = quotient_map(AlgebraPair(fine, coarse))
            data[key] = list(fmap)
            lines.append(f"quotient map {key.split('_', 1)[1].replace('_', ' ')}: "
                         + ", ".join(f"p{p}->q{q}" for p, q in enumerate(fmap)))
    return data, lines, EXIT_OK


def cmd_verify(args: argparse.Namespace) -> tuple[dict, list[str], int]:
    if args.random:
        if args.file:
            raise InputError("give either FILE or --random, not both")
        if args.trials < 0 or args.max_size < 1:
            raise InputError("--trials must be >= 0 and --max-size >= 1")
        report = battery.verify_random(args.seed, args.trials, args.max_size)
    else:
        if not args.file:
            raise InputError("verify needs FILE or --random")
        report = battery.verify_instance(load_instance(args.file), args.seed)
    s = report["summary"]
    lines = [f"{s['pass']} passed, {s['fail']} failed, {s['skipped']} skipped"]
    lines += [
        f"  FAIL trial {e['trial']} {e['theorem']} ({e['instance_digest'][:12]})"
        for e in report["entries"] if e["status"] == "fail"
    ]
    return report, lines, EXIT_OK if report["passed"] else EXIT_VIOLATION


def cmd_embopen(args: argparse.Namespace) -> tuple[dict, list[str], int]:
    return {"implemented": False, "message": EMBOPEN_MESSAGE}, [EMBOPEN_MESSAGE], EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fspectrum", description="F-filters and spectra on finite ground sets.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.set_defaults(handler=handler)
        return p

    add("algebra", cmd_algebra, "blocks and dimension").add_argument("file")
    add("filters", cmd_filters, "F-filters and ultrafilters").add_argument("file")
    add("spectrum", cmd_spectrum, "points, hat and closure tables").add_argument("file")
    p = add("extend", cmd_extend, "extend a named function to the spectrum")
    p.add_argument("file")
    p.add_argument("--fn", required=True)
    p = add("approx", cmd_approx, "approximate a target on the spectrum")
    p.add_argument("file")
    p.add_argument("--target", required=True)
    p.add_argument("--epsilon", required=True, help="rational p/q")
    p.add_argument("--trace", action="store_true")
    add("ideals", cmd_ideals, "ideal-filter table, characters, maximal ideals").add_argument("file")
    p = add("compare", cmd_compare, "subalgebra test and quotient map")
    p.add_argument("file1")
    p.add_argument("file2")
    p = add("verify", cmd_verify, "run the theorem battery")
    p.add_argument("file", nargs="?")
    p.add_argument("--random", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-size", type=int, default=5)
    add("embopen", cmd_embopen, "explain why the C0(X) criterion is not computed")
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        data, lines, code = args.handler(args)
    except (InputError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TheoremViolation as exc:
        data = {"violation": str(exc), "counterexample": exc.counterexample}
        lines = [f"theorem violation: {exc}"]
        code = EXIT_VIOLATION
    if args.format == "json":
        print(dump(data))
    else:
        print("\n".join(lines))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
