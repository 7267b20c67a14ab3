"""Command-line interface: ``annigraph <command> ...``.

Exit status is 0 on success, 1 when a verification fails and 2 on usage
errors (bad arguments, unparsable ring specs, unreadable inputs).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .aggraph import (
    build_ag,
    build_zdg,
    export_graph,
    square_zero_clique_witnesses,
    zero_product_bipartite_witnesses,
)
from .catalog import builtin_catalog
from .decompose import local_decomposition
from .genus import budget_from_env, genus_exact
from .graph import GraphError, graph_from_json
from .ideals import all_ideals, lattice_to_json, local_structure, maximal_ideals
from .rings import RingAxiomError, realize
from .spec import RingSpecError
from .suites import SUITES, enumerate_by_genus, residue_field_sizes, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_VERIFY_ORDER = 256


class UsageError(Exception):
    pass


def _ring(text: str):
    try:
        return realize(text)
    except RingSpecError as exc:
        raise UsageError(f"bad ring spec {text!r}: {exc}") from None


def _emit(text: str, out: Optional[str] = None) -> None:
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def cmd_ring(args) -> int:
    R = _ring(args.spec)
    L = all_ideals(R)
    maxes = maximal_ideals(L)
    D = local_decomposition(R)
    S = local_structure(R, L)
    doc = {
        "schema": 1,
        "ring": args.spec,
        "order": R.order,
        "local": len(maxes) == 1,
        "maximal_ideals": [L.label(M) for M in maxes],
        "residue_field_sizes": residue_field_sizes(R),
        "local_factor_orders": list(D.orders),
        "ideal_count": len(L),
        "verification": R.verification,
    }
    if S:
        doc["local_structure"] = S.summary()
    if args.json:
        print(json.dumps(doc, sort_keys=True))
        return EXIT_OK
    print(f"ring      {args.spec}")
    print(f"order     {R.order}")
    print(f"local     {'yes' if doc['local'] else 'no'}")
    print(f"maximal   {', '.join(doc['maximal_ideals'])}")
    print(f"residues  {doc['residue_field_sizes']}")
    print(f"factors   {list(D.orders)}")
    print(f"ideals    {len(L)}")
    if S:
        s = S.summary()
        print(f"q={s['q']} t={s['t']} vdim_steps={s['vdim_steps']} "
              f"gorenstein={s['gorenstein']} special_principal={s['special_principal']}")
    return EXIT_OK


def cmd_ideals(args) -> int:
    R = _ring(args.spec)
    L = all_ideals(R)
    if args.json:
        print(json.dumps(lattice_to_json(L, args.spec), sort_keys=True))
        return EXIT_OK
    for k, I in enumerate(L.ideals):
        print(f"{k:4d}  {L.label(I):20s}  size {I.size}")
    return EXIT_OK


def cmd_graph(args) -> int:
    R = _ring(args.spec)
    G = build_zdg(R) if args.kind == "zdg" else build_ag(R, all_ideals(R))
    _emit(export_graph(G, args.format).rstrip("\n"), args.out)
    return EXIT_OK


def cmd_genus(args) -> int:
    budget = args.budget_ms if args.budget_ms is not None else budget_from_env()
    hints = []
    if args.graph:
        try:
            G = graph_from_json(Path(args.graph).read_text())
        except (OSError, GraphError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read graph {args.graph!r}: {exc}") from None
    else:
        if not args.spec:
            raise UsageError("genus needs a ring spec or --graph PATH")
        R = _ring(args.spec)
        L = all_ideals(R)
        G = build_ag(R, L)
        ws = square_zero_clique_witnesses(L, G) + zero_product_bipartite_witnesses(L, G)
        hints = [w.hint(G) for w in ws]
    res = genus_exact(G, budget, hints=hints)
    print(json.dumps(res.to_json(), sort_keys=True))
    return EXIT_OK


def cmd_verify(args) -> int:
    catalog = builtin_catalog(args.max_order)
    reports = run_suite(args.suite, catalog)
    if not isinstance(reports, list):
        reports = [reports]
    if args.json:
        doc = [r.to_json() for r in reports]
        print(json.dumps(doc[0] if len(doc) == 1 else doc, sort_keys=True))
    else:
        for r in reports:
            print(r.to_text(verbose=not args.quiet))
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


def cmd_enumerate(args) -> int:
    budget = args.budget_ms if args.budget_ms is not None else budget_from_env()
    rep = enumerate_by_genus(args.genus, args.qmax, args.max_order, budget)
    if args.json:
        print(json.dumps(rep.to_json(), sort_keys=True))
    else:
        print(rep.to_text())
    return EXIT_OK


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="annigraph", description="Annihilating-ideal graphs of finite rings.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("ring", help="order, locality and maximal ideals of a ring")
    s.add_argument("spec")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_ring)

    s = sub.add_parser("ideals", help="list the ideal lattice")
    s.add_argument("spec")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_ideals)

    s = sub.add_parser("graph", help="export AG(R) or the zero-divisor graph")
    s.add_argument("spec")
    s.add_argument("--kind", choices=["ag", "zdg"], default="ag")
    s.add_argument("--format", choices=["dot", "json"], default="dot")
    s.add_argument("--out")
    s.set_defaults(func=cmd_graph)

    s = sub.add_parser("genus", help="genus of AG(R) or of a graph JSON file")
    s.add_argument("spec", nargs="?")
    s.add_argument("--graph", metavar="PATH")
    s.add_argument("--budget-ms", type=_nonneg)
    s.set_defaults(func=cmd_genus)

    s = sub.add_parser("verify", help="run a verification suite over the catalog")
    s.add_argument("--suite", required=True, choices=list(SUITES) + ["all"])
    s.add_argument("--max-order", type=_nonneg, default=DEFAULT_VERIFY_ORDER)
    s.add_argument("--json", action="store_true")
    s.add_argument("--quiet", action="store_true", help="print only the summary line per suite")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("enumerate", help="catalog rings whose AG(R) has a given genus")
    s.add_argument("--genus", type=_nonneg, required=True)
    s.add_argument("--qmax", type=_nonneg, required=True)
    s.add_argument("--max-order", type=_nonneg, required=True)
    s.add_argument("--budget-ms", type=_nonneg)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_enumerate)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors itself
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "graph", None) and getattr(args, "spec", None):
        print("annigraph: error: give a ring spec or --graph, not both", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"annigraph: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        if isinstance(exc, RingAxiomError):
            print(f"annigraph: ring axioms failed: {exc}", file=sys.stderr)
            return EXIT_FAIL
        print(f"annigraph: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
