"""Command-line front end: ``equidom <command> ...``.

Exit codes: 0 decided/completed, 1 negative decision, 2 usage or parse
error, 3 oracle budget refusal. ``--json`` switches any command to a single
JSON document carrying ``schema_version``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import generators as gen
from .errors import BudgetExceeded
from .graph import Graph, GraphFormatError, parse_graph, serialize_graph
from .hereditary import (
    format_tree,
    forbidden_subgraph_search,
    recognize_hereditary,
    rejection_reason,
    structure_from_tree,
)
from .kernel import Classified, GraphKernel, NotEquidominating, kernel_k, kernel_target_t, serialize_trace
from .oracle import (
    brute_force_k_equidominating,
    brute_force_target_t,
    enumerate_mds,
    verify_structure,
)
from .pseudo import pseudo_class_partition
from .pseudograph import build_pseudo_graph, serialize_pseudo_graph
from .solver import decide_k_equidomination, decide_target_t
from .structure import WeightStructure, parse_structure, serialize_structure
from .twins import twin_partition

SCHEMA_VERSION = 1
EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

# forbidden-subgraph witnesses are searched over all 5-subsets only up to this size
WITNESS_LIMIT = 60


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path: str) -> Graph:
    return parse_graph(_read(path))


def _ids(vs) -> list[int]:
    return [v + 1 for v in vs]


def _structure_json(s: WeightStructure) -> dict:
    return {"weights": {str(v + 1): s.weights[v] for v in sorted(s.weights)}, "t": s.t}


class Output:
    """Collects text lines or JSON fields; emitted once at the end."""

    def __init__(self, command: str, as_json: bool):
        self.as_json = as_json
        self.doc: dict = {"schema_version": SCHEMA_VERSION, "command": command}
        self.lines: list[str] = []

    def text(self, s: str) -> None:
        self.lines.append(s.rstrip("\n"))

    def set(self, **fields) -> None:
        self.doc.update(fields)

    def emit(self, stream=None) -> None:
        stream = stream or sys.stdout
        if self.as_json:
            stream.write(json.dumps(self.doc, indent=2, sort_keys=True) + "\n")
        elif self.lines:
            stream.write("\n".join(self.lines) + "\n")


# -- commands -----------------------------------------------------------------------

def cmd_analyze(args, out: Output) -> int:
    G = _load_graph(args.file)
    T = twin_partition(G)
    P = pseudo_class_partition(G, T)
    pclasses = [{"kind": p.kind, "vertices": _ids(p.vertices())} for p in P]
    out.set(n=G.n, m=G.m, pseudo_classes=pclasses)
    if args.pseudo:
        for p in pclasses:
            out.text(f"{p['kind']}: {{{', '.join(map(str, p['vertices']))}}}")
        return EXIT_OK
    PG = build_pseudo_graph(G, P)
    out.set(
        twin_classes=[{"kind": c.kind, "vertices": _ids(c.vertices())} for c in T],
        mu={str(v + 1): list(PG.mu[v]) for v in PG.elements},
    )
    out.text(f"graph: n={G.n} m={G.m}")
    out.text(f"twin classes ({len(T)}):")
    for c in T:
        out.text(f"  {c.kind}: {' '.join(map(str, _ids(c.vertices())))}")
    out.text(f"pseudo classes ({len(P)}):")
    for p in pclasses:
        out.text(f"  {p['kind']}: {' '.join(map(str, p['vertices']))}")
    out.text("pseudo graph:")
    out.text(serialize_pseudo_graph(PG))
    return EXIT_OK


def _decision(out: Output, result) -> int:
    if result:
        out.set(result="yes", structure=_structure_json(result.structure), info=result.info)
        out.text(serialize_structure(result.structure))
        return EXIT_OK
    out.set(result="no", reason=result.reason, info=result.info)
    out.text(f"no: {result.reason}")
    return EXIT_NO


def cmd_solve(args, out: Output) -> int:
    G = _load_graph(args.file)
    verify = not args.no_verify
    if args.k is not None:
        out.set(k=args.k)
        return _decision(out, decide_k_equidomination(G, args.k, verify=verify))
    out.set(target=args.target)
    return _decision(out, decide_target_t(G, args.target, verify=verify))


def cmd_kernel(args, out: Output) -> int:
    G = _load_graph(args.file)
    if args.k is not None:
        res = kernel_k(G, args.k)
        out.set(k=args.k)
    else:
        res = kernel_target_t(G, args.target)
        out.set(target=args.target)
    if isinstance(res, NotEquidominating):
        out.set(result="no", reason=res.reason, detail=res.detail)
        out.text(f"no: {res.reason}" + (f" ({res.detail})" if res.detail else ""))
        return EXIT_NO
    if isinstance(res, Classified):
        if res.structure is None:
            out.set(result="no", reason=res.reason)
            out.text(f"no: {res.reason}")
            return EXIT_NO
        out.set(result="classified", structure=_structure_json(res.structure))
        out.text("# decided without a kernel")
        out.text(serialize_structure(res.structure))
        return EXIT_OK
    if isinstance(res, GraphKernel):
        body = serialize_graph(res.graph, [f"kernel vertex j is input vertex kept[j]: {' '.join(map(str, _ids(res.trace.kept)))}"])
        kind = "graph"
    else:
        body = serialize_pseudo_graph(res.pseudo_graph)
        kind = "pseudo_graph"
    trace = serialize_trace(res.trace)
    out.set(result="kernel", kernel_format=kind, kernel=body, trace=trace,
            kept=_ids(res.trace.kept), isolated_class=_ids(res.trace.isolated_class))
    if args.output:
        Path(args.output).write_text(body)
        trace_path = args.trace or args.output + ".trace"
        Path(trace_path).write_text(trace)
        out.text(f"kernel ({kind}) written to {args.output}; trace written to {trace_path}")
    else:
        out.text(body)
        if args.trace:
            Path(args.trace).write_text(trace)
        else:
            out.text("# trace")
            out.text(trace)
    return EXIT_OK


def cmd_hereditary(args, out: Output) -> int:
    G = _load_graph(args.file)
    ok, tree = recognize_hereditary(G)
    if ok:
        out.set(result="yes", tree=format_tree(tree))
        out.text("yes")
        out.text(format_tree(tree))
        if args.structure:
            s = structure_from_tree(tree)
            out.set(structure=_structure_json(s))
            out.text(serialize_structure(s))
        return EXIT_OK
    out.set(result="no", reason=rejection_reason(G))
    out.text("no")
    if args.witness:
        if G.n > WITNESS_LIMIT:
            out.set(witness=None)
            out.text(f"# witness search skipped (n={G.n} > {WITNESS_LIMIT})")
        else:
            name, vs = forbidden_subgraph_search(G)
            out.set(witness={"graph": name, "vertices": _ids(vs)})
            out.text(f"witness {name}: {' '.join(map(str, _ids(vs)))}")
    return EXIT_NO


def _verify(G: Graph, path: str, out: Output) -> int:
    s = parse_structure(_read(path))
    if set(s.weights) != set(range(G.n)):
        raise UsageError("weight file must give one weight per vertex")
    ok = verify_structure(G, s)
    out.set(result="valid" if ok else "invalid", t=s.t)
    out.text("valid" if ok else "invalid")
    return EXIT_OK if ok else EXIT_NO


def cmd_verify(args, out: Output) -> int:
    return _verify(_load_graph(args.graph), args.weights, out)


def cmd_oracle(args, out: Output) -> int:
    G = _load_graph(args.file)
    out.set(mode=args.mode)
    if args.mode == "mds":
        sets = [_ids(m_bits) for m_bits in (
            [v for v in range(G.n) if m >> v & 1] for m in enumerate_mds(G))]
        out.set(count=len(sets), sets=sets)
        out.text(f"{len(sets)} minimal dominating sets")
        for s in sets:
            out.text(" ".join(map(str, s)))
        return EXIT_OK
    if args.mode == "verify":
        if args.arg is None:
            raise UsageError("oracle verify needs a weight file")
        return _verify(G, args.arg, out)
    if args.arg is None:
        raise UsageError(f"oracle {args.mode} needs an integer argument")
    try:
        value = int(args.arg)
    except ValueError:
        raise UsageError(f"expected an integer, got {args.arg!r}") from None
    if value < 1:
        raise UsageError("parameter must be >= 1")
    s = brute_force_k_equidominating(G, value) if args.mode == "k-equi" else brute_force_target_t(G, value)
    if s is None:
        out.set(result="no")
        out.text("no")
        return EXIT_NO
    out.set(result="yes", structure=_structure_json(s))
    out.text(serialize_structure(s))
    return EXIT_OK


def _generate_graph(args) -> tuple[Graph, list[str]]:
    kind = args.kind
    p = args.params
    notes = [f"generated: {kind} {' '.join(p)}".rstrip()]

    def ints(count: int) -> list[int]:
        if len(p) != count:
            raise UsageError(f"generate {kind} takes {count} argument(s)")
        try:
            vals = [int(x) for x in p]
        except ValueError:
            raise UsageError(f"generate {kind}: expected integers") from None
        if any(v < 1 for v in vals):
            raise UsageError(f"generate {kind}: arguments must be >= 1")
        return vals

    if kind in ("complete", "edgeless", "path"):
        (n,) = ints(1)
        return getattr(gen, kind)(n), notes
    if kind == "cycle":
        (n,) = ints(1)
        if n < 3:
            raise UsageError("cycle needs at least 3 vertices")
        return gen.cycle(n), notes
    if kind == "k2n-ne":
        (n,) = ints(1)
        if n < 2:
            raise UsageError("k2n-ne needs n >= 2")
        return gen.k2n_minus_ne(n), notes
    if kind == "corona":
        if len(p) != 1:
            raise UsageError("generate corona takes one graph file")
        return gen.corona(_load_graph(p[0])), notes
    if kind == "chain-join":
        if len(p) != 2:
            raise UsageError("generate chain-join takes two graph files")
        if args.nest is None:
            raise UsageError("generate chain-join needs --nest")
        try:
            nesting = gen.parse_nesting(args.nest)
            return gen.chain_join(_load_graph(p[0]), _load_graph(p[1]), nesting), notes
        except ValueError as exc:
            if isinstance(exc, GraphFormatError):
                raise
            raise UsageError(f"invalid nesting: {exc}") from None
    if kind in ("random", "hereditary"):
        if kind == "random":
            if len(p) != 2:
                raise UsageError("generate random takes n and p")
            try:
                n, prob = int(p[0]), float(p[1])
            except ValueError:
                raise UsageError("generate random: n must be an integer and p a float") from None
            if n < 1 or not 0.0 <= prob <= 1.0:
                raise UsageError("generate random: need n >= 1 and 0 <= p <= 1")
            G = gen.random_graph(n, prob, args.seed)
        else:
            (n,) = ints(1)
            G = gen.hereditary_instance(n, args.density, args.seed)
        notes.append(f"seed {args.seed} (Python random.Random, Mersenne Twister MT19937)")
        return G, notes
    raise UsageError(f"unknown generator {kind!r}")


GENERATORS = ("complete", "edgeless", "k2n-ne", "path", "cycle", "corona", "chain-join", "random", "hereditary")


def cmd_generate(args, out: Output) -> int:
    G, notes = _generate_graph(args)
    text = serialize_graph(G, notes)
    out.set(kind=args.kind, n=G.n, m=G.m, graph=text)
    if args.kind in ("random", "hereditary"):
        out.set(seed=args.seed, prng="MT19937")
    if args.output:
        Path(args.output).write_text(text)
        out.text(f"wrote {args.output} (n={G.n}, m={G.m})")
    else:
        out.text(text)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------------

def _positive(value: str) -> int:
    try:
        v = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {value!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="equidom", description="Equidominating graphs: analysis, kernels, solver and oracles."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.add_argument("--json", action="store_true", help="emit one JSON document")
        return p

    p = command("analyze", "twin classes, pseudo classes and mu-vectors")
    p.add_argument("file")
    p.add_argument("--pseudo", action="store_true", help="only list pseudo classes")
    p.set_defaults(func=cmd_analyze)

    for name, func, help_ in (("solve", cmd_solve, "decide k-equidomination or target-t"),
                              ("kernel", cmd_kernel, "compute a kernel plus its reduction trace")):
        p = command(name, help_)
        p.add_argument("file")
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--k", type=_positive, help="maximum weight")
        g.add_argument("--target", type=_positive, help="target value t")
        p.set_defaults(func=func)
        if name == "solve":
            p.add_argument("--no-verify", action="store_true",
                           help="skip the brute-force check of the returned structure")
        else:
            p.add_argument("-o", "--output", help="kernel file (trace goes to OUTPUT.trace)")
            p.add_argument("--trace", help="trace file path")

    p = command("hereditary", "recognize hereditarily equidominating graphs")
    p.add_argument("file")
    p.add_argument("--witness", action="store_true", help="on 'no', print a forbidden induced subgraph")
    p.add_argument("--structure", action="store_true", help="on 'yes', print an equidominating structure")
    p.set_defaults(func=cmd_hereditary)

    p = command("verify", "check a weight structure against a graph")
    p.add_argument("graph")
    p.add_argument("weights")
    p.set_defaults(func=cmd_verify)

    p = command("oracle", "brute-force reference routines (small graphs only)")
    p.add_argument("mode", choices=("mds", "verify", "k-equi", "target"))
    p.add_argument("file")
    p.add_argument("arg", nargs="?", help="weight file (verify) or k / t")
    p.set_defaults(func=cmd_oracle)

    p = command("generate", "write a graph from a named family")
    p.add_argument("kind", choices=GENERATORS)
    p.add_argument("params", nargs="*")
    p.add_argument("--nest", help="chain-join nesting 'i,c;j,d;...'")
    p.add_argument("--seed", type=int, default=0, help="PRNG seed (random, hereditary)")
    p.add_argument("--density", type=float, default=4.0, help="edges per vertex (hereditary)")
    p.add_argument("-o", "--output", help="output file")
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args.command, args.json)
    try:
        code = args.func(args, out)
    except (UsageError, GraphFormatError, ValueError) as exc:
        out.set(result="error", error=str(exc))
        if args.json:
            out.emit()
        else:
            print(f"equidom: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        out.set(result="refused", error=str(exc))
        if args.json:
            out.emit()
        else:
            print(f"equidom: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    out.set(exit_code=code)
    out.emit()
    return code


if __name__ == "__main__":
    sys.exit(main())
