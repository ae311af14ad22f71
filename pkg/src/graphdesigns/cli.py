"""Command-line front end: every command prints one JSON report on stdout.

Exit codes: 0 success, 2 bad input, 3 spectral or certification failure,
4 exact oracle cap exceeded, 5 disconnected product sent to design checks.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__, families
from .bounds import ALPHA_CAP, CHEEGER_CAP, SHARPNESS_TOL, bounds_report
from .design import DEFAULT_EPSILON, design_order, extremal_from_cheeger, extremal_from_hoffman, witness_basis
from .errors import (
    CapExceeded,
    CertificationError,
    DisconnectedGraphError,
    GraphDesignError,
    PreconditionError,
    SpectralError,
)
from .graph import (
    Graph,
    VertexSet,
    bipartition,
    format_graph,
    is_connected,
    read_graph,
    read_vertex_set,
    regular_degree,
    write_graph,
    write_vertex_set,
)
from .products import cartesian_product, verify_product_order, weak_product
from .spectral import DEFAULT_TAU, SpectralDecomposition, decompose

EXIT_OK, EXIT_INPUT, EXIT_SPECTRAL, EXIT_CAP, EXIT_DISCONNECTED = 0, 2, 3, 4, 5
SIGNIFICANT_DIGITS = 12
ZERO_SNAP = 1e-12


def round_numbers(obj):
    """Recursively round floats to 12 significant digits (and drop ``-0.0``)."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return None
        return float(f"{obj:.{SIGNIFICANT_DIGITS}g}") + 0.0
    if isinstance(obj, dict):
        return {k: round_numbers(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_numbers(v) for v in obj]
    return obj


def _snap(x: float) -> float:
    # eigenvalues that are zero up to roundoff print as 0
    return 0.0 if abs(x) < ZERO_SNAP else float(x)


def graph_summary(g: Graph) -> dict:
    connected = is_connected(g)
    return {
        "n": g.n,
        "m": g.m,
        "degree": regular_degree(g),
        "connected": connected,
        "bipartite": (bipartition(g) is not None) if connected else None,
    }


def spectrum_summary(dec: SpectralDecomposition) -> dict:
    return {
        "eigenvalues": [_snap(x) for x in dec.eigenvalues],
        "multiplicities": list(dec.multiplicities),
        "grouping_tolerance": dec.grouping_tolerance,
        "sweeps": dec.sweeps,
    }


class Run:
    """Accumulates the report of a single command."""

    def __init__(self, args: argparse.Namespace, argv: list[str]):
        self.report: dict = {
            "tool": "graphdesigns",
            "version": __version__,
            "command": args.command,
            "argv": list(argv),
        }
        if not args.no_timestamp:
            self.report["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
        self.warnings: list[str] = []

    def add_spectrum(self, dec: SpectralDecomposition) -> None:
        self.report["spectrum"] = spectrum_summary(dec)
        self.warnings.extend(dec.warnings)

    def emit(self, out) -> None:
        self.report["warnings"] = self.warnings
        json.dump(round_numbers(self.report), out, indent=2, sort_keys=False)
        out.write("\n")


def _read(args, path: str) -> Graph:
    return read_graph(path, strict=not args.lenient)


# --- commands -----------------------------------------------------------------

def _gen_graph(family: str, params: list[str]) -> tuple[Graph, dict[str, VertexSet]]:
    if family in families.FIXTURES:
        if params:
            raise PreconditionError(f"fixture {family} takes no parameters")
        return families.fixture(family)
    arity = {"complete": 1, "cycle": 1, "hypercube": 1, "derangement": 1, "kneser": 2}
    if family not in arity:
        known = ", ".join([*arity, *families.FIXTURES])
        raise PreconditionError(f"unknown family {family!r}; choose from {known}")
    if len(params) != arity[family]:
        raise PreconditionError(f"{family} takes {arity[family]} integer parameter(s)")
    try:
        nums = [int(p) for p in params]
    except ValueError as exc:
        raise PreconditionError(f"parameters must be integers: {exc}") from None
    if family == "complete":
        return families.complete(*nums), {}
    if family == "cycle":
        return families.cycle(*nums), {}
    if family == "hypercube":
        n = nums[0]
        if n < 2:
            return families.hypercube(n), {}
        return families.hypercube(n), {"design": families.hypercube_design(n, [1])[0]}
    if family == "derangement":
        return families.derangement_graph(*nums), {"design": families.permutation_stabilizer(nums[0], 1, 1)}
    n, k = nums
    return families.kneser(n, k), {"design": families.kneser_star(n, k, 1)}


def cmd_gen(args, run: Run) -> None:
    g, sets = _gen_graph(args.family, args.params)
    out = Path(args.out)
    write_graph(g, out)
    written = [str(out)]
    for suffix, s in sets.items():
        side = out.with_suffix(f".{suffix}")
        write_vertex_set(s, side)
        written.append(str(side))
    print(f"wrote {', '.join(written)}", file=sys.stderr)
    run.report["graph"] = graph_summary(g)
    run.report["files"] = written


def cmd_spectrum(args, run: Run) -> None:
    g = _read(args, args.graph)
    run.report["graph"] = graph_summary(g)
    run.add_spectrum(decompose(g, args.tau))


def cmd_analyze(args, run: Run) -> None:
    g = _read(args, args.graph)
    s = read_vertex_set(args.set, g.n)
    run.report["graph"] = graph_summary(g)
    dec = decompose(g, args.tau)
    run.add_spectrum(dec)
    rep = design_order(g, s, args.epsilon, dec=dec)
    design = rep.to_dict()
    for entry in design["active_eigenvalues"]:
        entry["eigenvalue"] = _snap(entry["eigenvalue"])
    run.report["design"] = design
    if args.witness_basis:
        basis = witness_basis(g, s, args.epsilon, dec=dec)
        run.report["witness_basis"] = {
            "size": basis.functions.shape[1],
            "satisfied": basis.satisfied,
            "max_inactive_mean_gap": float(basis.mean_gaps[1 + basis.order:].max(initial=0.0)),
            "eigenvalues": [_snap(x) for x in basis.eigenvalues],
        }
    if args.certify:
        certify = extremal_from_hoffman if args.certify == "hoffman" else extremal_from_cheeger
        run.report["certificate"] = certify(g, s, dec=dec, tol=args.sharpness_tol).to_dict()
    print(f"design order {rep.order}{' (extremal)' if rep.is_extremal else ''}", file=sys.stderr)


def cmd_bounds(args, run: Run) -> None:
    g = _read(args, args.graph)
    run.report["graph"] = graph_summary(g)
    dec = decompose(g, args.tau)
    run.add_spectrum(dec)
    witness = read_vertex_set(args.witness, g.n) if args.witness else None
    exact_alpha = args.exact_alpha or args.exact or witness is not None
    rep = bounds_report(
        g,
        exact_alpha=exact_alpha,
        exact_cheeger=args.exact_cheeger or args.exact,
        alpha_cap=args.alpha_cap,
        cheeger_cap=args.cheeger_cap,
        witness=witness,
        dec=dec,
        tol=args.sharpness_tol,
    )
    run.warnings.extend(rep.warnings)
    run.report["bounds"] = rep.to_dict()
    certs = []
    if rep.hoffman is not None and rep.hoffman.sharp:
        certs.append(extremal_from_hoffman(g, rep.hoffman.witness, dec=dec, tol=args.sharpness_tol).to_dict())
    if rep.cheeger_sharp is not None and rep.cheeger_sharp.sharp:
        certs.append(extremal_from_cheeger(g, rep.cheeger_sharp.witness, dec=dec, tol=args.sharpness_tol).to_dict())
    run.report["certificates"] = certs


def cmd_product(args, run: Run) -> None:
    g1, g2 = _read(args, args.graph1), _read(args, args.graph2)
    build = weak_product if args.kind == "weak" else cartesian_product
    g = build(g1, g2)
    run.report["graph"] = graph_summary(g)
    if args.out:
        write_graph(g, args.out)
        run.report["files"] = [args.out]
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        run.report["product_graph"] = format_graph(g)
    if (args.set1 is None) != (args.set2 is None):
        raise PreconditionError("--set1 and --set2 must be given together")
    if args.set1 is None:
        return
    if args.kind != "weak":
        raise PreconditionError("design-order verification is defined for weak products only")
    w1, w2 = read_vertex_set(args.set1, g1.n), read_vertex_set(args.set2, g2.n)
    record = verify_product_order(g1, w1, g2, w2, args.epsilon, cylinders=not args.no_cylinders, tau=args.tau)
    run.add_spectrum(decompose(g, args.tau))
    run.report["product"] = record.to_dict()


# --- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--no-timestamp", action="store_true", help="omit the timestamp field")
    common.add_argument("--lenient", action="store_true", help="deduplicate repeated edges instead of failing")

    spectral = argparse.ArgumentParser(add_help=False)
    spectral.add_argument("--tau", type=float, default=DEFAULT_TAU, help="eigenvalue grouping tolerance")

    parser = argparse.ArgumentParser(prog="graphdesigns", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="write a family graph (and its design sidecar)")
    p.add_argument("family")
    p.add_argument("params", nargs="*")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("spectrum", parents=[common, spectral], help="distinct eigenvalues and multiplicities")
    p.add_argument("graph")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("analyze", parents=[common, spectral], help="design order of a vertex set")
    p.add_argument("graph")
    p.add_argument("set")
    p.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON, help="activity threshold")
    p.add_argument("--witness-basis", action="store_true", help="build the adapted eigenbasis")
    p.add_argument("--certify", choices=["hoffman", "cheeger"], help="certify extremality from a sharp bound")
    p.add_argument("--sharpness-tol", type=float, default=SHARPNESS_TOL)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("bounds", parents=[common, spectral], help="Hoffman and Cheeger bounds")
    p.add_argument("graph")
    p.add_argument("--exact-alpha", action="store_true")
    p.add_argument("--exact-cheeger", action="store_true")
    p.add_argument("--exact", action="store_true", help="both exact oracles")
    p.add_argument("--alpha-cap", type=int, default=ALPHA_CAP)
    p.add_argument("--cheeger-cap", type=int, default=CHEEGER_CAP)
    p.add_argument("--witness", help="independent set to test against the Hoffman bound")
    p.add_argument("--sharpness-tol", type=float, default=SHARPNESS_TOL)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("product", parents=[common, spectral], help="weak or cartesian product")
    p.add_argument("kind", choices=["weak", "cartesian"])
    p.add_argument("graph1")
    p.add_argument("graph2")
    p.add_argument("--out")
    p.add_argument("--set1")
    p.add_argument("--set2")
    p.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    p.add_argument("--no-cylinders", action="store_true", help="skip the cylinder-set checks")
    p.set_defaults(func=cmd_product)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(argv)
    run = Run(args, argv)
    try:
        args.func(args, run)
    except CapExceeded as exc:
        return _fail(exc, EXIT_CAP)
    except DisconnectedGraphError as exc:
        return _fail(exc, EXIT_DISCONNECTED if args.command == "product" else EXIT_INPUT)
    except (SpectralError, CertificationError) as exc:
        return _fail(exc, EXIT_SPECTRAL)
    except (GraphDesignError, OSError, ValueError) as exc:
        return _fail(exc, EXIT_INPUT)
    run.emit(sys.stdout)
    return EXIT_OK


def _fail(exc: Exception, code: int) -> int:
    print(f"graphdesigns: error: {exc}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
