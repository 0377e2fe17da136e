"""colorfiber command line interface.

One verb per operation, plain key=value/text-record output by default,
line-delimited JSON with --json. Graphs, labels, and moves use the text
formats of colorfiber.textio; read from files or standard input ("-").

Exit codes: 0 success, 1 domain infeasibility (empty fiber, tripped
resource guard, failed verification), 2 usage or input-format error.

Guards are flags with safe defaults; COLORFIBER_MAX_EDGES overrides the
default enumeration guard. Backend selection: set COLORFIBER_PURE=1 to
force the pure-Python kernels.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from colorfiber import chain as chain_mod
from colorfiber import counting, fibers, moves, reduction, textio
from colorfiber._backend import active_backend
from colorfiber.graphs import (
    CDegSequence,
    ColorAssignment,
    EdgeVector,
    GuardExceeded,
    cdeg,
)
from colorfiber.ordering import Binomial

__all__ = ["main"]


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _parse_coloring_spec(spec: str, k: int | None) -> ColorAssignment:
    """Inline comma-separated colors, or a path to a `n k` + colors record."""
    if "," in spec:
        colors = [int(tok) for tok in spec.split(",") if tok.strip()]
        return ColorAssignment.from_sequence(colors, k)
    blocks = list(textio.iter_records(_read_text(spec).splitlines()))
    if len(blocks) != 1 or len(blocks[0]) != 2:
        raise ValueError(
            f"coloring file {spec!r} must hold one 'n k' line and one color line"
        )
    n_decl, k_decl = (int(t) for t in blocks[0][0].split())
    colors = [int(t) for t in blocks[0][1].split()]
    if len(colors) != n_decl:
        raise ValueError(f"coloring file {spec!r} declares n={n_decl}, has {len(colors)} colors")
    return ColorAssignment.from_sequence(colors, k if k is not None else k_decl)


def _default_max_edges() -> int:
    raw = os.environ.get("COLORFIBER_MAX_EDGES")
    if raw is None:
        return fibers.DEFAULT_MAX_EDGES
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"COLORFIBER_MAX_EDGES must be an integer, got {raw!r}") from exc


def _print_record(text: str) -> None:
    sys.stdout.write(text)
    sys.stdout.write("\n")


def _emit_json(obj: dict) -> None:
    print(json.dumps(obj, separators=(", ", ": ")))


def _label_and_coloring(args) -> tuple[CDegSequence, ColorAssignment]:
    label = textio.parse_label(_read_text(args.label))
    z = _parse_coloring_spec(args.coloring, getattr(args, "k", None))
    if z.n != label.n:
        raise ValueError(f"label has n={label.n}, coloring has n={z.n}")
    if z.k != label.k:
        raise ValueError(f"label has k={label.k}, coloring has k={z.k}")
    return label, z


# ---------------------------------------------------------------- realize


def _cmd_realize(args) -> int:
    label, z = _label_and_coloring(args)
    gamma = fibers.realize(label, z, simple_only=args.simple)
    if gamma is None:
        if args.json:
            _emit_json({"verb": "realize", "feasible": False})
        else:
            print("INFEASIBLE")
        return 1
    if args.json:
        _emit_json({"verb": "realize", "feasible": True, "graph": textio.graph_to_dict(z, gamma)})
    else:
        _print_record(textio.format_graph(z, gamma))
    return 0


# -------------------------------------------------------------- enumerate


def _cmd_enumerate(args) -> int:
    label, z = _label_and_coloring(args)
    fiber = fibers.enumerate_fiber(
        label, z, simple_only=args.simple, max_edges=args.max_edges
    )
    if args.json:
        _emit_json({"verb": "enumerate", "count": len(fiber), "simple": args.simple})
        if args.print_elements:
            for i, g in enumerate(fiber):
                _emit_json({"verb": "enumerate", "index": i, "graph": textio.graph_to_dict(z, g)})
    else:
        print(f"count={len(fiber)}")
        if args.print_elements:
            for g in fiber:
                print()
                _print_record(textio.format_graph(z, g))
    return 0


# ------------------------------------------------------------ verify-basis


def _cmd_verify_basis(args) -> int:
    label, z = _label_and_coloring(args)
    fiber = fibers.enumerate_fiber(
        label, z, simple_only=args.simple, max_edges=args.max_edges
    )
    moveset = moves.enumerate_quadratic_moves(label.n, z)
    graph = fibers.fiber_graph(fiber, moveset)
    comps = graph.component_count
    reps = graph.component_representatives()
    if args.json:
        _emit_json(
            {
                "verb": "verify-basis",
                "elements": len(fiber),
                "moves": len(moveset),
                "components": comps,
                "connected": comps <= 1,
            }
        )
        if comps > 1:
            for i in reps:
                _emit_json(
                    {"verb": "verify-basis", "component_of": i, "graph": textio.graph_to_dict(z, fiber[i])}
                )
    else:
        print(f"components={comps}")
        if comps > 1:
            for i in reps:
                print()
                _print_record(textio.format_graph(z, fiber[i]))
    return 0


# ------------------------------------------------------------------ moves


def _cmd_moves(args) -> int:
    z = _parse_coloring_spec(args.coloring, args.k)
    moveset = moves.enumerate_quadratic_moves(z.n, z)
    if args.json:
        _emit_json({"verb": "moves", "n": z.n, "k": z.k, "count": len(moveset)})
        if not args.count_only:
            for i, m in enumerate(moveset):
                _emit_json({"verb": "moves", "index": i, "move": textio.graph_to_dict(z, m.as_edge_vector())})
    else:
        print(f"count={len(moveset)}")
        if not args.count_only:
            for m in moveset:
                print()
                _print_record(textio.format_graph(z, m.as_edge_vector()))
    return 0


# ----------------------------------------------------------------- sample


def _sample_schedule(config: chain_mod.ChainConfig) -> int:
    if config.steps <= config.burn_in:
        return 0
    return (config.steps - config.burn_in) // config.thin


def _run_one_chain(start, moveset, config, simple_only):
    if len(moveset) == 0:
        # frozen chain: every step holds, the schedule emits the start
        count = _sample_schedule(config)
        if simple_only and not start.is_simple():
            count = 0
        samples = np.tile(start.entries, (count, 1))
        return chain_mod.RunResult(samples, 0, 0, start, config, moveset)
    return chain_mod.run(start, config, moveset, simple_samples_only=simple_only)


def _cmd_sample(args) -> int:
    if args.graph is not None:
        rec = textio.parse_graph(_read_text(args.graph))
        z, start = rec.z, rec.gamma
        label = cdeg(start, z)
    else:
        if args.label is None:
            raise ValueError("sample needs --label with --coloring, or --graph")
        label, z = _label_and_coloring(args)
        start = fibers.realize(label, z)
        if start is None:
            if args.json:
                _emit_json({"verb": "sample", "feasible": False})
            else:
                print("INFEASIBLE")
            return 1
    moveset = moves.enumerate_quadratic_moves(z.n, z)
    configs = [
        chain_mod.ChainConfig(
            seed=(args.seed + i) & ((1 << 64) - 1),
            steps=args.steps,
            burn_in=args.burn_in,
            thin=args.thin,
            lazy=args.lazy,
        )
        for i in range(args.chains)
    ]
    if args.chains == 1:
        results = [_run_one_chain(start, moveset, configs[0], args.simple_only)]
    else:
        with ThreadPoolExecutor(max_workers=args.chains) as pool:
            futures = [
                pool.submit(_run_one_chain, start, moveset, cfg, args.simple_only)
                for cfg in configs
            ]
            results = [f.result() for f in futures]

    for ci, res in enumerate(results):
        for si, row in enumerate(res.samples):
            g = EdgeVector(z.n, row)
            if args.json:
                _emit_json(
                    {"verb": "sample", "chain": ci, "index": si, "graph": textio.graph_to_dict(z, g)}
                )
            else:
                print(f"# chain={ci} index={si}")
                _print_record(textio.format_graph(z, g))
        summary = {
            "verb": "sample",
            "chain": ci,
            "seed": res.config.seed,
            "steps": res.config.steps,
            "accepted": res.accepted,
            "rejected": res.rejected,
            "held": res.held,
            "samples": int(res.samples.shape[0]),
        }
        if args.json:
            _emit_json(summary)
        else:
            print(
                f"# chain={ci} seed={res.config.seed} accepted={res.accepted} "
                f"rejected={res.rejected} held={res.held} samples={res.samples.shape[0]}"
            )

    if args.diagnose:
        fiber = fibers.enumerate_fiber(
            label, z, simple_only=args.simple_only, max_edges=args.max_edges
        )
        all_samples = (
            np.concatenate([r.samples for r in results])
            if results
            else np.zeros((0, start.entries.shape[0]), dtype=np.int64)
        )
        report = chain_mod.uniformity_diagnostic(all_samples, fiber)
        if args.json:
            _emit_json(
                {
                    "verb": "sample",
                    "diagnose": {
                        "elements": len(fiber),
                        "samples": report.total,
                        "chisq": report.chisq,
                        "dof": report.dof,
                        "pvalue": report.pvalue,
                        "tv": report.mean_tv_distance,
                    },
                }
            )
        else:
            print(f"# diagnose {report.summary()}")
    return 0


# -------------------------------------------------------------- normal-form


def _steplog_lines(result) -> list[str]:
    lines = []
    for i, ((r1, r2), (a1, a2)) in enumerate(result.log or ()):
        lines.append(
            f"step {i}: {r1[0]} {r1[1]} + {r2[0]} {r2[1]} -> "
            f"{a1[0]} {a1[1]} + {a2[0]} {a2[1]}"
        )
    return lines


def _cmd_normal_form(args) -> int:
    rec = textio.parse_graph(_read_text(args.graph))
    z = rec.z if args.coloring is None else _parse_coloring_spec(args.coloring, args.k)
    result = reduction.normal_form(rec.gamma, z, collect_log=True)
    if args.json:
        _emit_json(
            {
                "verb": "normal-form",
                "steps": result.steps,
                "permutation": list(result.permutation) if result.permutation else None,
                "log": [
                    [[list(r1), list(r2)], [list(a1), list(a2)]]
                    for (r1, r2), (a1, a2) in (result.log or ())
                ],
                "graph": textio.graph_to_dict(z, result.monomial),
            }
        )
    else:
        print(f"steps={result.steps}")
        if result.permutation is not None:
            print("permutation=" + ",".join(str(p) for p in result.permutation))
        if args.log:
            for line in _steplog_lines(result):
                print(f"# {line}")
        print()
        _print_record(textio.format_graph(z, result.monomial))
    return 0


# ---------------------------------------------------------------- in-ideal


def _cmd_in_ideal(args) -> int:
    rec = textio.parse_graph(_read_text(args.binomial), signed=True)
    z = rec.z if args.coloring is None else _parse_coloring_spec(args.coloring, args.k)
    binomial = Binomial.from_walk(rec.gamma)
    res = reduction.ideal_membership(binomial, z)
    if args.json:
        _emit_json(
            {
                "verb": "in-ideal",
                "member": res.member,
                "nf_plus": textio.graph_to_dict(z, res.nf_plus),
                "nf_minus": textio.graph_to_dict(z, res.nf_minus),
            }
        )
    else:
        print(f"member={'true' if res.member else 'false'}")
        print()
        print("# normal form of the positive side")
        _print_record(textio.format_graph(z, res.nf_plus))
        print("# normal form of the negative side")
        _print_record(textio.format_graph(z, res.nf_minus))
    return 0


# ---------------------------------------------------------------- contract


def _cmd_contract(args) -> int:
    rec = textio.parse_graph(_read_text(args.graph), signed=True)
    z = rec.z if args.coloring is None else _parse_coloring_spec(args.coloring, args.k)
    out = reduction.contract(rec.gamma, args.vertex, z)
    if args.json:
        _emit_json({"verb": "contract", "vertex": args.vertex, "graph": textio.graph_to_dict(z, out)})
    else:
        _print_record(textio.format_graph(z, out))
    return 0


# ------------------------------------------------------------------ prop31


def _cmd_prop31(args) -> int:
    fam = fibers.two_element_simple_fiber(args.k)
    if not args.verify:
        if args.json:
            _emit_json(
                {
                    "verb": "prop31",
                    "k": args.k,
                    "n": fam.n,
                    "label": textio.label_to_dict(fam.label),
                    "left": textio.graph_to_dict(fam.z, fam.left),
                    "right": textio.graph_to_dict(fam.z, fam.right),
                }
            )
        else:
            _print_record(textio.format_label(fam.label))
            _print_record(textio.format_graph(fam.z, fam.left))
            _print_record(textio.format_graph(fam.z, fam.right))
        return 0
    fiber = fibers.enumerate_fiber(fam.label, fam.z, simple_only=True)
    distance = fam.distance()
    verified = (
        len(fiber) == 2
        and fam.left in fiber
        and fam.right in fiber
        and distance == 2 * args.k
    )
    if args.json:
        _emit_json(
            {
                "verb": "prop31",
                "k": args.k,
                "fiber": len(fiber),
                "distance": distance,
                "verified": verified,
            }
        )
    else:
        print(f"fiber={len(fiber)} distance={distance} verified={'true' if verified else 'false'}")
    return 0 if verified else 1


# ------------------------------------------------------------------- count


def _cmd_count(args) -> int:
    if args.report:
        report = counting.discrepancy_report()
        if args.json:
            _emit_json({"verb": "count", "report": report.as_dict()})
        else:
            print(json.dumps(report.as_dict(), indent=2))
        return 0
    if args.n1 is None or args.n2 is None or args.r is None:
        raise ValueError("count needs --n1, --n2 and --r (or --report)")
    if args.check:
        chk = counting.check_closed_form(args.n1, args.n2, args.r)
        if args.json:
            _emit_json({"verb": "count", **chk.as_dict()})
        else:
            print(
                f"formula={chk.formula} oracle={chk.oracle} "
                f"match={'true' if chk.match else 'false'}"
            )
    else:
        value = counting.hilbert_k2(args.n1, args.n2, args.r)
        if args.json:
            _emit_json({"verb": "count", "n1": args.n1, "n2": args.n2, "r": args.r, "formula": value})
        else:
            print(f"formula={value}")
    return 0


# ------------------------------------------------------------------ parser


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="line-delimited JSON output")


def _add_label_coloring(p: argparse.ArgumentParser) -> None:
    p.add_argument("--label", required=True, help="label file ('d:'/'c:' lines), '-' for stdin")
    p.add_argument(
        "--coloring",
        required=True,
        help="inline colors '1,1,2,2' or a file with an 'n k' line and a color line",
    )
    p.add_argument("--k", type=int, default=None, help="color count override for inline colorings")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="colorfiber",
        description="explore, sample, and certify fibers of degree-color sequences",
        epilog=(
            "backend: %s (COLORFIBER_PURE=1 forces pure Python); "
            "COLORFIBER_MAX_EDGES overrides the enumeration guard default (%d). "
            "Simple-graph output is rejection filtering of the multigraph chain; "
            "quadratic moves are NOT irreducible on simple fibers."
            % (active_backend(), _default_max_edges())
        ),
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("realize", help="construct one graph with a given label")
    _add_label_coloring(p)
    p.add_argument("--simple", action="store_true", help="search simple graphs only")
    _add_common(p)
    p.set_defaults(func=_cmd_realize)

    p = sub.add_parser("enumerate", help="list every graph with a given label")
    _add_label_coloring(p)
    p.add_argument("--simple", action="store_true", help="simple graphs only")
    p.add_argument("--print-elements", action="store_true", help="print the elements, not just the count")
    p.add_argument("--max-edges", type=int, default=_default_max_edges(), help="enumeration guard")
    _add_common(p)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("verify-basis", help="connectivity of a fiber under the quadratic moves")
    _add_label_coloring(p)
    p.add_argument("--simple", action="store_true", help="restrict to simple graphs and simple-preserving steps")
    p.add_argument("--max-edges", type=int, default=_default_max_edges(), help="enumeration guard")
    _add_common(p)
    p.set_defaults(func=_cmd_verify_basis)

    p = sub.add_parser("moves", help="enumerate the quadratic moves of a coloring")
    p.add_argument("--coloring", required=True, help="inline colors '1,1,2,2' or a coloring file")
    p.add_argument("--k", type=int, default=None, help="color count override")
    p.add_argument("--count-only", action="store_true", help="print only the count")
    _add_common(p)
    p.set_defaults(func=_cmd_moves)

    p = sub.add_parser("sample", help="switch-chain samples from a multigraph fiber")
    p.add_argument("--label", default=None, help="label file; start graph found by realization")
    p.add_argument("--coloring", default=None, help="coloring for --label")
    p.add_argument("--k", type=int, default=None, help="color count override")
    p.add_argument("--graph", default=None, help="start graph record (alternative to --label)")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--burn-in", type=int, default=0)
    p.add_argument("--thin", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--chains", type=int, default=1, help="independent chains (seed+i), threaded")
    p.add_argument("--lazy", action="store_true", help="hold with probability 1/2 each step")
    p.add_argument(
        "--simple-only",
        action="store_true",
        help="emit only simple samples (rejection filter; NOT an in-fiber simple chain)",
    )
    p.add_argument("--diagnose", action="store_true", help="enumerate the fiber and print a uniformity report")
    p.add_argument("--max-edges", type=int, default=_default_max_edges(), help="guard for --diagnose")
    _add_common(p)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("normal-form", help="reduce a monomial to its normal form")
    p.add_argument("--graph", required=True, help="monomial as a graph record")
    p.add_argument("--coloring", default=None, help="coloring override")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--log", action="store_true", help="print the rewrite steps")
    _add_common(p)
    p.set_defaults(func=_cmd_normal_form)

    p = sub.add_parser("in-ideal", help="lattice-ideal membership of a signed vector")
    p.add_argument("--binomial", required=True, help="signed graph record")
    p.add_argument("--coloring", default=None, help="coloring override")
    p.add_argument("--k", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_in_ideal)

    p = sub.add_parser("contract", help="collapse a color class onto one vertex")
    p.add_argument("--graph", required=True, help="signed graph record")
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--coloring", default=None, help="coloring override")
    p.add_argument("--k", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_contract)

    p = sub.add_parser("prop31", help="the two-element simple fiber family")
    p.add_argument("--k", type=int, required=True, help="color count, k >= 3")
    p.add_argument("--verify", action="store_true", help="enumerate and certify fiber size and distance")
    _add_common(p)
    p.set_defaults(func=_cmd_prop31)

    p = sub.add_parser("count", help="two-color closed form vs exhaustive lattice count")
    p.add_argument("--n1", type=int, default=None)
    p.add_argument("--n2", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--check", action="store_true", help="also run the exhaustive oracle and compare")
    p.add_argument("--report", action="store_true", help="full formula-vs-oracle discrepancy report")
    _add_common(p)
    p.set_defaults(func=_cmd_count)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GuardExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
