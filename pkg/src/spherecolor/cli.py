"""Command-line entry point: ``spherecolor <subcommand> ...``.

Exit codes: 0 ok, 1 usage, 2 different components, 3 undecided,
4 validation failure, 5 oracle budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import connectivity, hardness, highdim, oracle, reconfigure
from .coloring import Coloring, ColoringError, dumps_coloring, is_balanced, loads_coloring, check_coloring
from .complex import (
    InvalidTriangulation,
    OrientedTriangulation2,
    barycentric_subdivision,
    double_wheel,
    dumps_json,
    dumps_tri2,
    glue_octahedra,
    loads_tri2,
    octahedron,
    tetrahedron,
)
from .kernels import BudgetExceeded

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DIFFERENT = 2
EXIT_UNDECIDED = 3
EXIT_INVALID = 4
EXIT_BUDGET = 5


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- io helpers -----------------------------------------------------------


def read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def read_complex(path: str):
    """A TRI2/JSON triangulation or a TRID complex, chosen by the header."""
    text = read_text(path)
    head = text.lstrip()[:4]
    if head == "trid":
        return highdim.loads_trid(text)
    return loads_tri2(text)


def read_coloring(path: str) -> Coloring:
    return loads_coloring(read_text(path))


class Output:
    def __init__(self, fmt: str):
        self.fmt = fmt

    def emit(self, verdict: str, **fields) -> None:
        if self.fmt == "json":
            doc = {"verdict": verdict}
            doc.update(fields)
            print(json.dumps(doc, sort_keys=True))
        else:
            extra = " ".join(f"{k}={_fmt(v)}" for k, v in fields.items())
            print(f"{verdict} {extra}".rstrip())


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, tuple)):
        return ",".join(map(str, v))
    return str(v)


# -- subcommands ----------------------------------------------------------


def cmd_validate(args, out: Output) -> int:
    K = read_complex(args.input)
    if isinstance(K, OrientedTriangulation2):
        out.emit("VALID", format="tri2", vertices=K.vertex_count, faces=K.face_count, even=K.is_even())
    else:
        out.emit(
            "VALID",
            format="trid",
            dimension=K.dimension,
            vertices=K.vertex_count,
            facets=K.facet_count,
            even=K.is_even(),
        )
    return EXIT_OK


def _seeded_glue(n_glue: int, seed: int) -> OrientedTriangulation2:
    rng = random.Random(seed)
    G = octahedron()
    for _ in range(n_glue):
        G = glue_octahedra(G, [rng.randrange(G.face_count)])
    return G


def _seeded_expansion(steps: int, seed: int) -> OrientedTriangulation2:
    rng = random.Random(seed)
    G = octahedron()
    for _ in range(steps):
        v = rng.randrange(G.vertex_count)
        d = G.degree(v)
        p = rng.choice(range(2, d - 1, 2))
        G = hardness.expand4(G, v, rng.randrange(d), p)
    return G


def cmd_gen(args, out: Output) -> int:
    kind = args.kind
    if kind == "octahedron":
        G = octahedron()
    elif kind == "tetrahedron":
        G = tetrahedron()
    elif kind == "double_wheel":
        if args.n is None:
            raise UsageError("double_wheel needs --n")
        G = double_wheel(args.n, even=not args.odd)
    elif kind == "glued":
        G = _seeded_glue(args.n or 1, args.seed)
    elif kind == "expanded":
        G = _seeded_expansion(args.n or 1, args.seed)
    elif kind == "barycentric":
        G = barycentric_subdivision(tetrahedron() if args.n is None else double_wheel(args.n, even=False))
    elif kind == "join":
        m, n = args.n or 4, args.m or 4
        write_text(args.output, highdim.dumps_trid(highdim.gen_join_cycles(m, n)))
        return EXIT_OK
    elif kind == "gadgetx":
        write_text(args.output, hardness.dumps_gadget_x(hardness.smallest_gadget_x()))
        return EXIT_OK
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(kind)
    write_text(args.output, dumps_json(G) if args.format == "json" and args.output is None else dumps_tri2(G))
    return EXIT_OK


def cmd_check(args, out: Output) -> int:
    K = read_complex(args.input)
    alpha = read_coloring(args.coloring)
    if isinstance(K, OrientedTriangulation2):
        check_coloring(K, alpha)
        ok = is_balanced(K, alpha)
    else:
        ok = highdim.balance_check_d(K, alpha)
    out.emit("BALANCED" if ok else "UNBALANCED")
    return EXIT_OK


def _require_tri2(K) -> OrientedTriangulation2:
    if not isinstance(K, OrientedTriangulation2):
        raise UsageError("this subcommand needs a 2-dimensional triangulation")
    return K


def cmd_solve(args, out: Output) -> int:
    G = _require_tri2(read_complex(args.input))
    alpha, beta = read_coloring(args.alpha), read_coloring(args.beta)
    res = reconfigure.solve(G, alpha, beta, oracle_fallback=args.oracle_fallback)
    if isinstance(res, reconfigure.SequenceFound):
        text = reconfigure.dumps_sequence(res.steps)
        if args.output:
            write_text(args.output, text)
        out.emit("SEQUENCE", steps=len(res.steps))
        if not args.output and out.fmt == "text":
            sys.stdout.write(text)
        return res.exit_code
    if isinstance(res, reconfigure.DifferentComponents):
        out.emit("DIFFERENT_COMPONENTS", balanced=list(res.balanced))
        return res.exit_code
    out.emit("UNDECIDED", reason=res.reason)
    return res.exit_code


def cmd_verify(args, out: Output) -> int:
    G = _require_tri2(read_complex(args.input))
    alpha = read_coloring(args.alpha)
    seq = reconfigure.loads_sequence(read_text(args.sequence))
    target = read_coloring(args.beta) if args.beta else None
    res = reconfigure.verify_sequence(G, alpha, seq, target)
    if res.ok:
        out.emit("OK", steps=len(seq))
        return EXIT_OK
    out.emit("FAIL", step=res.failed_step, reason=res.reason)
    return EXIT_INVALID


def cmd_connected(args, out: Output) -> int:
    G = _require_tri2(read_complex(args.input))
    if not G.is_even():
        raise UsageError("connectedness is decided for even triangulations only")
    ok = connectivity.decide_connected(G)
    if ok:
        out.emit("CONNECTED")
        return EXIT_OK
    if args.witness:
        write_text(args.witness, dumps_coloring(connectivity.unbalanced_witness(G)))
    out.emit("DISCONNECTED")
    return EXIT_OK


def cmd_witness(args, out: Output) -> int:
    G = _require_tri2(read_complex(args.input))
    if connectivity.decide_connected(G):
        out.emit("NONE")
        return EXIT_OK
    w = connectivity.unbalanced_witness(G)
    if args.output:
        write_text(args.output, dumps_coloring(w))
        out.emit("WITNESS", vertices=len(w))
    else:
        sys.stdout.write(dumps_coloring(w))
    return EXIT_OK


def _read_reduce_input(args) -> hardness.ListInstance:
    text = read_text(args.input)
    if text.lstrip().startswith("{"):
        X = hardness.loads_gadget_x(text)
        start = read_coloring(args.start).colors if args.start else None
        goal = read_coloring(args.goal).colors if args.goal else None
        return hardness.list_instance_from_gadget(X, start, goal)
    return hardness.loads_list_instance(text)


def cmd_reduce(args, out: Output) -> int:
    inst = _read_reduce_input(args)
    gadget = hardness.frozen_gadget(use_cache=not args.search, cap=args.cap, seed=args.seed)
    prep, red = hardness.reduce_list_instance(inst, args.k, gadget)
    prefix = args.output
    if isinstance(red.graph, OrientedTriangulation2):
        gpath, gtext = f"{prefix}.tri2", dumps_tri2(red.graph)
    else:
        gpath, gtext = f"{prefix}.trid", highdim.dumps_trid(red.graph)
    write_text(gpath, gtext)
    write_text(f"{prefix}.alpha.col", dumps_coloring(red.alpha))
    write_text(f"{prefix}.beta.col", dumps_coloring(red.beta))
    out.emit(
        "REDUCED",
        k=args.k,
        vertices=red.graph.vertex_count,
        h_vertices=red.h_vertex_count,
        hubs=len(red.hubs),
        graph=gpath,
    )
    return EXIT_OK


def _oracle_input(args):
    text = read_text(args.input)
    if text.lstrip().startswith("listinst"):
        inst = hardness.loads_list_instance(text)
        g = oracle.SimpleGraph(inst.vertex_count, inst.edges)
        return g, inst.lists, inst
    K = read_complex(args.input)
    if isinstance(K, highdim.OrientedComplexD):
        return oracle.SimpleGraph(K.vertex_count, K.edges), None, None
    return K, None, None


def cmd_oracle(args, out: Output) -> int:
    G, lists, inst = _oracle_input(args)
    k = args.k if lists is None else max(4, args.k)
    budget = args.budget
    if args.op == "enumerate":
        codes = oracle.enumerate_codes(G, k, lists, budget)
        out.emit("COUNT", k=k, states=int(codes.shape[0]))
        return EXIT_OK
    if args.op == "connected":
        ok = oracle.reconfig_connected(G, k, lists, budget)
        out.emit("CONNECTED" if ok else "DISCONNECTED", k=k)
        return EXIT_OK
    if inst is not None and not (args.alpha or args.beta):
        a, b = inst.start, inst.goal
    else:
        if not (args.alpha and args.beta):
            raise UsageError("oracle same needs --alpha and --beta")
        a, b = read_coloring(args.alpha).colors, read_coloring(args.beta).colors
    ok, path = oracle.same_component(G, k, a, b, lists, budget)
    if ok:
        if args.output:
            write_text(args.output, reconfigure.dumps_sequence(path))
        out.emit("SAME", k=k, steps=len(path))
        return EXIT_OK
    out.emit("DIFFERENT", k=k)
    return EXIT_DIFFERENT


def cmd_suspend(args, out: Output) -> int:
    K = read_complex(args.input)
    S = highdim.suspend(K)
    write_text(args.output, highdim.dumps_trid(S))
    for src, dst in ((args.alpha, args.alpha_out), (args.beta, args.beta_out)):
        if src:
            if not dst:
                raise UsageError("colorings need a matching --*-out path")
            col = read_coloring(src)
            _, lifted, _ = hardness.suspend_instance(K, col, col)
            write_text(dst, dumps_coloring(lifted))
    if args.output:
        out.emit("SUSPENDED", dimension=S.dimension, vertices=S.vertex_count, facets=S.facet_count)
    return EXIT_OK


# -- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--seed", type=int, default=0)

    p = _Parser(prog="spherecolor", description="Recoloring tools for even sphere triangulations.", parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", parents=[common], help="validate a TRI2/JSON/TRID file")
    s.add_argument("input")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("gen", parents=[common], help="generate a triangulation")
    s.add_argument(
        "kind",
        choices=["octahedron", "tetrahedron", "double_wheel", "glued", "expanded", "barycentric", "join", "gadgetx"],
    )
    s.add_argument("--n", type=int, help="size parameter (cycle length, glue or expansion steps)")
    s.add_argument("--m", type=int, help="second cycle length for join")
    s.add_argument("--odd", action="store_true", help="double wheel with an odd cycle")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("check", parents=[common], help="test the balanced condition")
    s.add_argument("input")
    s.add_argument("coloring")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("solve", parents=[common], help="recoloring sequence between two 4-colorings")
    s.add_argument("input")
    s.add_argument("alpha")
    s.add_argument("beta")
    s.add_argument("-o", "--output", help="sequence file")
    s.add_argument("--oracle-fallback", action="store_true", help="brute force when both are unbalanced")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("verify", parents=[common], help="replay a sequence file")
    s.add_argument("input")
    s.add_argument("alpha")
    s.add_argument("sequence")
    s.add_argument("--beta", help="expected final coloring")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("connected", parents=[common], help="decide connectivity of the 4-coloring graph")
    s.add_argument("input")
    s.add_argument("--witness", help="write an unbalanced coloring here when disconnected")
    s.set_defaults(func=cmd_connected)

    s = sub.add_parser("witness", parents=[common], help="emit an unbalanced 4-coloring if one exists")
    s.add_argument("input")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("reduce", parents=[common], help="build a hard recoloring instance")
    s.add_argument("input", help="gadgetx JSON or listinst file")
    s.add_argument("--k", type=int, default=4)
    s.add_argument("-o", "--output", required=True, help="output prefix")
    s.add_argument("--start", help="start list-coloring (col file) for gadgetx input")
    s.add_argument("--goal", help="goal list-coloring (col file) for gadgetx input")
    s.add_argument("--search", action="store_true", help="search for the frozen gadget instead of using the cache")
    s.add_argument("--cap", type=int, default=None, help="vertex cap for the gadget search")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("oracle", parents=[common], help="brute-force reconfiguration queries")
    s.add_argument("op", choices=["enumerate", "same", "connected"])
    s.add_argument("input", help="TRI2/TRID or listinst file")
    s.add_argument("--k", type=int, default=4)
    s.add_argument("--alpha")
    s.add_argument("--beta")
    s.add_argument("--budget", type=int, default=None)
    s.add_argument("-o", "--output", help="path file for 'same'")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("suspend", parents=[common], help="suspend a complex (TRID output)")
    s.add_argument("input")
    s.add_argument("-o", "--output")
    s.add_argument("--alpha")
    s.add_argument("--alpha-out")
    s.add_argument("--beta")
    s.add_argument("--beta-out")
    s.set_defaults(func=cmd_suspend)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args.format)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"spherecolor: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        out.emit("BUDGET_EXCEEDED", reason=str(exc))
        return EXIT_BUDGET
    except (InvalidTriangulation, ColoringError, hardness.HardnessError) as exc:
        out.emit("INVALID", reason=str(exc))
        return EXIT_INVALID
    except OSError as exc:
        print(f"spherecolor: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"spherecolor: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
