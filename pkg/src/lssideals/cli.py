"""Command-line interface.

Subcommands: pmd, classify, asym, transfer, gens, gb, witness.  Graphs come
from a positional name (K5, K3,4, B4, C6, P5, nrad1..3), a file (--graph,
text or JSON), or an inline edge list (--edges "1-2,2-3").  Exit status 0
when the computation completed (whatever the verdict), 2 on parse errors,
3 on budget exhaustion under --strict.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time

from .classifier import (
    FieldAssumption,
    asym_bounds,
    classify,
    transfer_report,
)
from .graphs import (
    Clutter,
    Graph,
    clutter_from_json,
    graph_from_json,
    graph_from_text,
    named_graph,
)
from .groebner import (
    GBBudgetExhausted,
    buchberger,
    search_witness,
    witness_test,
)
from .ideals import (
    block_matrix_template,
    lss_generators,
    minor,
    stacked_minor_pool,
    twisted_lss_generators,
)
from .instances import NONRADICAL_INSTANCES
from .polynomials import (
    DEGREVLEX,
    LEX,
    custom_space,
    parse_polynomial,
    poly_to_text,
)
from .posmatch import exact_pmd, greedy_pm_decomposition, pmd_bounds

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_BUDGET = 3


class InputError(Exception):
    """Bad user input: unknown name, malformed file, malformed polynomial."""


# ---------------------------------------------------------------------------
# input resolution


def _edges_from_inline(text: str) -> list[tuple[int, ...]]:
    text = text.strip()
    if text in ("", "empty"):
        return []
    edges = []
    for chunk in text.split(","):
        verts = [p for p in re.split(r"[-\s]+", chunk.strip()) if p]
        if len(verts) < 2:
            raise InputError(f"edge {chunk.strip()!r} needs at least two vertices")
        try:
            edges.append(tuple(int(v) for v in verts))
        except ValueError:
            raise InputError(f"non-integer vertex in edge {chunk.strip()!r}") from None
    return edges


def _resolve_input(args) -> Graph | Clutter:
    sources = [s for s in (args.name, args.graph, args.edges) if s is not None]
    if len(sources) != 1:
        raise InputError("give exactly one of: graph name, --graph FILE, --edges LIST")
    if args.name is not None:
        inst = NONRADICAL_INSTANCES.get(args.name)
        if inst is not None:
            return inst.graph
        try:
            return named_graph(args.name)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    if args.graph is not None:
        try:
            with open(args.graph, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {args.graph}: {exc}") from None
        try:
            if text.lstrip().startswith("{"):
                data = json.loads(text)
                if any(len(e) != 2 for e in data.get("edges", ())):
                    return clutter_from_json(data)
                return graph_from_json(data)
            return graph_from_text(text)
        except (ValueError, KeyError, TypeError) as exc:
            raise InputError(f"malformed graph file: {exc}") from None
    edges = _edges_from_inline(args.edges)
    n = args.n if args.n is not None else max((v for e in edges for v in e), default=0)
    try:
        if any(len(set(e)) != 2 for e in edges):
            return Clutter.of(n, edges)
        return Graph.of(n, edges)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _require_graph(H) -> Graph:
    if isinstance(H, Graph):
        return H
    if H.is_uniform_graph():
        return H.as_graph()
    raise InputError("this command needs a graph, not a hypergraph")


def _field(args) -> FieldAssumption:
    try:
        return FieldAssumption.of(args.char)
    except ValueError as exc:
        raise InputError(str(exc)) from None


# ---------------------------------------------------------------------------
# polynomial parsing for gb / witness

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*(?:\[[0-9, ]+\])?")


def _split_polys(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def _parse_gens(text: str):
    pieces = _split_polys(text)
    if not pieces:
        raise InputError("no polynomials given")
    names = sorted({m.group(0) for piece in pieces for m in _NAME_RE.finditer(piece)})
    if not names:
        raise InputError("no variables found in the polynomials")
    space = custom_space(names)
    polys = []
    for piece in pieces:
        try:
            polys.append(parse_polynomial(space, piece))
        except ValueError as exc:
            raise InputError(f"bad polynomial {piece!r}: {exc}") from None
    return space, polys


# ---------------------------------------------------------------------------
# output helpers


def _emit(args, payload: dict, human: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(human)


def _decomposition_json(D) -> dict:
    return {
        "parts": [[list(e) for e in part] for part in D.parts],
        "certificates": [
            {str(v): f"{w.numerator}/{w.denominator}" for v, w in c.weights}
            for c in D.certificates
        ],
    }


# ---------------------------------------------------------------------------
# subcommands


def cmd_pmd(args) -> int:
    H = _resolve_input(args)
    greedy = greedy_pm_decomposition(H)
    res = exact_pmd(H, node_budget=args.pmd_budget)
    if isinstance(H, Graph):
        lower, upper = pmd_bounds(H)
        lower, upper = max(lower, res.lower), min(upper, res.upper)
    else:
        lower, upper = res.lower, res.upper
    best = res.decomposition if res.decomposition is not None else greedy
    payload = {
        "exact": res.exact,
        "lower": lower,
        "upper": upper,
        "value": res.value,
        "greedy_parts": len(greedy),
        **_decomposition_json(best),
    }
    if res.exact:
        human = f"pmd = {res.value}  (greedy used {len(greedy)} parts)"
    else:
        human = (
            f"pmd in [{lower}, {upper}]  (budget exhausted; "
            f"greedy used {len(greedy)} parts)"
        )
    _emit(args, payload, human)
    return EXIT_BUDGET if args.strict and not res.exact else EXIT_OK


def cmd_classify(args) -> int:
    G = _require_graph(_resolve_input(args))
    F = _field(args)
    verdict, justs = classify(G, args.d, args.prop, F)
    payload = {
        "property": args.prop,
        "d": args.d,
        "verdict": verdict.value,
        "justifications": [j.as_dict() for j in justs],
    }
    lines = [f"{args.prop} at d={args.d}: {verdict.value}"]
    for j in justs:
        lines.append(f"  [{j.rule}] {j.cite}" + (f" ({j.evidence})" if j.evidence else ""))
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_asym(args) -> int:
    G = _require_graph(_resolve_input(args))
    F = _field(args)
    ab = asym_bounds(G, args.prop, F, pmd_node_budget=args.pmd_budget)
    payload = ab.as_dict()
    _emit(args, payload, f"{args.prop} threshold in [{ab.lower}, {ab.upper}]")
    return EXIT_OK


def cmd_transfer(args) -> int:
    G = _require_graph(_resolve_input(args))
    F = _field(args)
    rep = transfer_report(G, args.d, F)
    payload = rep.as_dict()
    lines = []
    if not rep.applicable:
        lines.append("not applicable")
    for note in rep.notes:
        lines.append(f"note: {note}")
    for s in rep.statements:
        height = f" (height {s.height})" if s.height is not None else ""
        lines.append(f"{s.subject} is {s.conclusion}{height}  [{s.source}]")
    _emit(args, payload, "\n".join(lines) if lines else "nothing to report")
    return EXIT_OK


def _gens_payload(gs) -> dict:
    return {
        "provenance": gs.provenance,
        "variables": list(gs.space.names),
        "generators": [poly_to_text(f) for f in gs.generators],
    }


def cmd_gens(args) -> int:
    H = _resolve_input(args)
    if args.twisted:
        gs = twisted_lss_generators(_require_graph(H), args.d)
    else:
        gs = lss_generators(H, args.d)
    payload = _gens_payload(gs)
    human = "\n".join(poly_to_text(f) for f in gs.generators)
    _emit(args, payload, human)
    return EXIT_OK


def cmd_gb(args) -> int:
    space, polys = _parse_gens(args.gens)
    order = LEX if args.order == "lex" else DEGREVLEX
    try:
        gb = buchberger(polys, order, pair_budget=args.gb_budget)
    except GBBudgetExhausted as exc:
        print(f"budget exhausted after {exc.pairs_done} reductions", file=sys.stderr)
        return EXIT_BUDGET if args.strict else EXIT_OK
    payload = {
        "order": args.order,
        "variables": list(space.names),
        "basis": [poly_to_text(f, order) for f in gb.basis],
    }
    _emit(args, payload, "\n".join(poly_to_text(f, order) for f in gb.basis))
    return EXIT_OK


def _witness_inputs(args):
    if args.lss_example is not None:
        inst = NONRADICAL_INSTANCES[args.lss_example]
        J = lss_generators(inst.graph, inst.d)
        if args.pool is not None:
            m = re.fullmatch(r"minors:(\d+)", args.pool)
            if not m:
                raise InputError(f"bad pool spec {args.pool!r}, expected minors:k")
            pool = stacked_minor_pool(inst.graph.n, inst.d, int(m.group(1)))
            return J, None, pool
        T = block_matrix_template(inst.graph.n, inst.d)
        g = minor(T, inst.witness_rows, range(1, inst.d + 1))
        return J, g, None
    if args.gens is None or args.g is None:
        raise InputError("need --lss-example NAME, or --gens POLYS with --g POLY")
    space, polys = _parse_gens(args.gens)
    try:
        g = parse_polynomial(space, args.g)
    except ValueError as exc:
        raise InputError(f"bad witness polynomial: {exc}") from None
    return polys, g, None


def cmd_witness(args) -> int:
    J, g, pool = _witness_inputs(args)
    t0 = time.time()
    try:
        if pool is not None:
            hit = search_witness(J, pool, pair_budget=args.gb_budget)
            if hit is None:
                payload = {
                    "verdict": None,
                    "witness": None,
                    "elapsed_s": round(time.time() - t0, 3),
                }
                _emit(args, payload, "no witness found within budget")
                return EXIT_OK
            g, rep = hit
        else:
            rep = witness_test(J, g, pair_budget=args.gb_budget)
    except GBBudgetExhausted as exc:
        print(f"budget exhausted after {exc.pairs_done} reductions", file=sys.stderr)
        return EXIT_BUDGET if args.strict else EXIT_OK
    payload = {
        "ideal": rep.provenance,
        "witness": poly_to_text(g),
        "verdict": rep.verdict,
        "separator": None if rep.separator is None else poly_to_text(rep.separator),
        "elapsed_s": round(time.time() - t0, 3),
    }
    human = (
        f"verdict: {'true' if rep.verdict else 'false'}  "
        f"(witness {poly_to_text(g)}, {payload['elapsed_s']}s)"
    )
    _emit(args, payload, human)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("name", nargs="?", help="named graph: K5, K3,4, B4, C6, P5, nrad1..3")
    p.add_argument("--graph", help="graph file (text or JSON)")
    p.add_argument("--edges", help='inline edge list, e.g. "1-2,2-3" ("empty" for none)')
    p.add_argument("--n", type=int, help="vertex count for --edges (default: max vertex)")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("human", "json"), default="human")
    p.add_argument("--strict", action="store_true",
                   help="exit 3 when a budget runs out")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="lss", description=__doc__.splitlines()[0])
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pmd", help="positive matching decomposition number")
    _add_graph_args(p)
    p.add_argument("--pmd-budget", type=_positive, default=200000,
                   help="node budget for the exact search")
    _add_common(p)
    p.set_defaults(func=cmd_pmd)

    p = sub.add_parser("classify", help="radical / ci / prime verdict at level d")
    _add_graph_args(p)
    p.add_argument("--d", type=_positive, required=True)
    p.add_argument("--prop", choices=("radical", "ci", "prime"), required=True)
    p.add_argument("--char", default=None,
                   help="field characteristic: 0, 2, an odd prime, or unspecified")
    _add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("asym", help="bracket the level where a property stabilizes")
    _add_graph_args(p)
    p.add_argument("--prop", choices=("ci", "prime"), required=True)
    p.add_argument("--char", default=None)
    p.add_argument("--pmd-budget", type=_positive, default=20000)
    _add_common(p)
    p.set_defaults(func=cmd_asym)

    p = sub.add_parser("transfer", help="minor and Pfaffian section consequences")
    _add_graph_args(p)
    p.add_argument("--d", type=_positive, required=True)
    p.add_argument("--char", default="0")
    _add_common(p)
    p.set_defaults(func=cmd_transfer)

    p = sub.add_parser("gens", help="emit edge ideal generators")
    p.add_argument("--lss", dest="name", help="named graph for the plain generators")
    p.add_argument("--twisted", action="store_true",
                   help="use the twisted variant (graphs only)")
    p.add_argument("--graph", help="graph file (text or JSON)")
    p.add_argument("--edges", help="inline edge list")
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=_positive, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_gens)

    p = sub.add_parser("gb", help="reduced Groebner basis of inline generators")
    p.add_argument("--gens", required=True, help='comma-separated polynomials, e.g. "x^2, x*y"')
    p.add_argument("--order", choices=("degrevlex", "lex"), default="degrevlex")
    p.add_argument("--gb-budget", type=_positive, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_gb)

    p = sub.add_parser("witness", help="test or search non-radicality witnesses")
    p.add_argument("--lss-example", choices=sorted(NONRADICAL_INSTANCES))
    p.add_argument("--pool", help='candidate pool spec, e.g. "minors:3"')
    p.add_argument("--gens", help="inline ideal generators")
    p.add_argument("--g", help="explicit witness polynomial")
    p.add_argument("--gb-budget", type=_positive, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_witness)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
