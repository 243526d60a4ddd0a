"""Command line interface.

Subcommands: analyze, edge-graph, factor, verify-chain, k0, ksse,
full-units, compare, check-lemmas.  Output is deterministic byte for byte:
given the same inputs and flags, every run prints the same document,
terminated by exactly one newline; ``--json`` switches any command to a
single JSON document.

Exit codes: 0 success, 2 unreadable or unparsable input (including bad
command lines), 3 domain precondition failures, 4 failed verification or a
failing lemma instance, 10 a full-units check that stayed inconclusive,
20 a comparison that certified two matrices as distinct.  Errors are
written to stderr as ``ERROR <code>: <message>``.

``SSEKIT_THREADS`` is accepted for compatibility and has no effect:
execution is sequential, which is what keeps the output bytes stable.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ssekit import __version__
from ssekit.errors import (
    DomainError,
    MatrixFormatError,
    SsekitError,
    VerificationError,
)
from ssekit.factor import (
    SearchBudget,
    canonical_permutation_form,
    chain_from_json_obj,
    chain_to_json_obj,
    enumerate_factorizations,
    verify_chain,
)
from ssekit.graphs import edge_transition_matrix, graph_from_matrix, splitting_matrices
from ssekit.intmat import (
    IntMatrix,
    matrix_from_json_obj,
    matrix_from_text,
    matrix_to_json_obj,
    matrix_to_text,
    profile,
)
from ssekit.ksse import compare_invariant_pairs, full_units_check, ksse_enumerate
from ssekit.ktheory import class_of, det_i_minus, k0_group
from ssekit.lemmas import LemmaSuiteConfig, run_lemma_suite

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_VERIFY = 4
EXIT_NOT_FULL = 10
EXIT_DISTINGUISHED = 20


class UsageError(SsekitError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse would sys.exit(2) with bare usage text; route through the
    # common ERROR formatting instead
    def error(self, message):
        raise UsageError(message)


def _load_matrix(path: str) -> IntMatrix:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MatrixFormatError(f"cannot read {path}: {exc}") from exc
    if text.lstrip()[:1] == "{":
        return matrix_from_json_obj(_parse_json(text, path))
    return matrix_from_text(text)


def _parse_json(text: str, path: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"{path}: invalid JSON: {exc}") from exc


def _load_chain(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MatrixFormatError(f"cannot read {path}: {exc}") from exc
    return chain_from_json_obj(_parse_json(text, path))


def _yesno(flag: bool) -> str:
    return "yes" if flag else "no"


def _matrix_block(m: IntMatrix) -> str:
    return matrix_to_text(m).rstrip("\n")


def _coords_str(coords) -> str:
    return ",".join(str(c) for c in coords)


def _order_str(order) -> str:
    return "inf" if order is None else str(order)


def _group_json(pres) -> dict:
    return {
        "torsion": list(pres.torsion),
        "free_rank": pres.free_rank,
        "order": pres.order(),
        "group": pres.summands(),
    }


def _cmd_analyze(args) -> tuple[int, str]:
    m = _load_matrix(args.matrix)
    p = profile(m)
    if args.json:
        doc = {
            "rows": p.rows,
            "cols": p.cols,
            "square": p.is_square,
            "nonnegative": p.is_nonnegative,
            "zero": p.is_zero,
            "irreducible": p.is_irreducible,
            "permutation": p.is_permutation,
            "period": p.period,
            "entry_sum": p.total_entry_sum,
        }
        return EXIT_OK, json.dumps(doc)
    lines = [
        f"MATRIX {p.rows} {p.cols}",
        f"SQUARE {_yesno(p.is_square)}",
        f"NONNEGATIVE {_yesno(p.is_nonnegative)}",
        f"ZERO {_yesno(p.is_zero)}",
        f"IRREDUCIBLE {_yesno(p.is_irreducible)}",
        f"PERMUTATION {_yesno(p.is_permutation)}",
        f"PERIOD {p.period if p.period is not None else '-'}",
        f"ENTRY_SUM {p.total_entry_sum if p.total_entry_sum is not None else '-'}",
    ]
    return EXIT_OK, "\n".join(lines)


def _cmd_edge_graph(args) -> tuple[int, str]:
    m = _load_matrix(args.matrix)
    g = graph_from_matrix(m)
    ag = edge_transition_matrix(m)
    s, r = splitting_matrices(m)
    if args.json:
        doc = {
            "vertices": g.vertex_count,
            "edges": [[u + 1, v + 1] for u, v in g.edges],
            "edge_transition": matrix_to_json_obj(ag),
            "s": matrix_to_json_obj(s),
            "r": matrix_to_json_obj(r),
        }
        return EXIT_OK, json.dumps(doc)
    lines = [f"VERTICES {g.vertex_count}", f"EDGES {g.edge_count}", "EDGE_TABLE"]
    for k, (u, v) in enumerate(g.edges):
        lines.append(f"{k + 1}: {u + 1} -> {v + 1}")
    lines.append("EDGE_TRANSITION")
    lines.append(_matrix_block(ag))
    lines.append("S")
    lines.append(_matrix_block(s))
    lines.append("R")
    lines.append(_matrix_block(r))
    return EXIT_OK, "\n".join(lines)


def _cmd_factor(args) -> tuple[int, str]:
    m = _load_matrix(args.matrix)
    if args.max_entry is not None:
        max_entry = args.max_entry
    else:
        if not m.is_nonnegative():
            raise DomainError("need a nonnegative matrix")
        max_entry = max(m.max_abs(), 1)
    budget = SearchBudget(args.inner_dim, max_entry, args.max_results)
    certs = enumerate_factorizations(m, args.inner_dim, budget)
    if args.json:
        doc = {
            "matrix": matrix_to_json_obj(m),
            "inner_dim": args.inner_dim,
            "max_entry": max_entry,
            "max_results": args.max_results,
            "count": len(certs),
            "factorizations": [
                {
                    "C": matrix_to_json_obj(cert.c),
                    "D": matrix_to_json_obj(cert.d),
                    "B": matrix_to_json_obj(cert.b),
                }
                for cert in certs
            ],
        }
        return EXIT_OK, json.dumps(doc)
    lines = [
        f"MATRIX {m.rows} {m.cols}",
        f"INNER_DIM {args.inner_dim}",
        f"MAX_ENTRY {max_entry}",
        f"COUNT {len(certs)}",
    ]
    for idx, cert in enumerate(certs):
        lines.append(f"FACTORIZATION {idx + 1}")
        lines.append("C")
        lines.append(_matrix_block(cert.c))
        lines.append("D")
        lines.append(_matrix_block(cert.d))
        lines.append("B")
        lines.append(_matrix_block(cert.b))
    return EXIT_OK, "\n".join(lines)


def _cmd_verify_chain(args) -> tuple[int, str]:
    chain = _load_chain(args.chain)
    report = verify_chain(chain)
    first = chain.matrices[0]
    pres = k0_group(first)
    cls = class_of(report.unit_image, pres)
    if args.json:
        doc = {
            "lag": chain.lag,
            "dims": [m.rows for m in chain.matrices],
            "transfer": matrix_to_json_obj(report.transfer),
            "unit_image": list(report.unit_image),
            "unit_class": list(cls.coords),
            "ok": True,
        }
        return EXIT_OK, json.dumps(doc)
    lines = [
        f"LAG {chain.lag}",
        "DIMS " + " ".join(str(m.rows) for m in chain.matrices),
        "TRANSFER",
        _matrix_block(report.transfer),
        "UNIT_IMAGE " + " ".join(str(x) for x in report.unit_image),
        f"UNIT_CLASS {_coords_str(cls.coords)}",
        "OK",
    ]
    return EXIT_OK, "\n".join(lines)


def _cmd_k0(args) -> tuple[int, str]:
    m = _load_matrix(args.matrix)
    pres = k0_group(m)
    det = det_i_minus(m)
    ones = class_of((1,) * m.rows, pres)
    canon = canonical_permutation_form(m)
    if args.json:
        doc = {
            "matrix": matrix_to_json_obj(m),
            "group": _group_json(pres),
            "det_i_minus": det,
            "ones_class": list(ones.coords),
            "ones_order": ones.order(),
            "canonical_form": matrix_to_json_obj(canon.matrix),
            "canonical_exact": canon.exact,
        }
        return EXIT_OK, json.dumps(doc)
    lines = [
        f"MATRIX {m.rows} {m.cols}",
        f"GROUP {pres.summands()}",
        ("TORSION " + " ".join(str(d) for d in pres.torsion)).rstrip(),
        f"FREE_RANK {pres.free_rank}",
        f"ORDER {_order_str(pres.order())}",
        f"DET_I_MINUS {det}",
        f"ONES_CLASS {_coords_str(ones.coords)}",
        f"ONES_ORDER {_order_str(ones.order())}",
    ]
    return EXIT_OK, "\n".join(lines)


def _ksse_budget(args) -> SearchBudget:
    return SearchBudget(args.inner_max, args.entry_max, None)


def _cmd_ksse(args) -> tuple[int, str]:
    m = _load_matrix(args.matrix)
    result = ksse_enumerate(m, args.depth, _ksse_budget(args))
    pres = result.presentation
    if args.json:
        classes = []
        for cls in result.classes:
            entry = {"coords": list(cls.coords), "order": cls.order()}
            if args.witnesses:
                entry["witness"] = chain_to_json_obj(result.witnesses[cls.coords])
            classes.append(entry)
        doc = {
            "matrix": matrix_to_json_obj(m),
            "group": _group_json(pres),
            "depth": args.depth,
            "inner_max": args.inner_max,
            "entry_max": args.entry_max,
            "classes": classes,
            "saturated": result.saturated,
            "exhausted": result.exhausted,
            "states": result.states_visited,
        }
        return EXIT_OK, json.dumps(doc)
    lines = [
        f"MATRIX {m.rows} {m.cols}",
        f"GROUP {pres.summands()}",
        f"DEPTH {args.depth}",
        f"INNER_MAX {args.inner_max}",
        f"ENTRY_MAX {args.entry_max}",
        f"CLASSES {len(result.classes)}",
    ]
    for cls in result.classes:
        lines.append(f"CLASS {_coords_str(cls.coords)} order {_order_str(cls.order())}")
        if args.witnesses:
            chain = result.witnesses[cls.coords]
            lines.append(f"WITNESS lag {chain.lag}")
            lines.append(json.dumps(chain_to_json_obj(chain), separators=(",", ":")))
    lines.append(f"SATURATED {_yesno(result.saturated)}")
    lines.append(f"EXHAUSTED {_yesno(result.exhausted)}")
    lines.append(f"STATES {result.states_visited}")
    return EXIT_OK, "\n".join(lines)


def _cmd_full_units(args) -> tuple[int, str]:
    m = _load_matrix(args.matrix)
    report = full_units_check(m, args.depth, _ksse_budget(args))
    result = report.result
    code = EXIT_OK if report.certified_full else EXIT_NOT_FULL
    if args.json:
        doc = {
            "matrix": matrix_to_json_obj(m),
            "group": _group_json(result.presentation),
            "depth": args.depth,
            "inner_max": args.inner_max,
            "entry_max": args.entry_max,
            "classes_reached": len(result.classes),
            "saturated": result.saturated,
            "exhausted": result.exhausted,
            "verdict": report.verdict,
        }
        return code, json.dumps(doc)
    lines = [
        f"MATRIX {m.rows} {m.cols}",
        f"GROUP {result.presentation.summands()}",
        f"ORDER {_order_str(result.presentation.order())}",
        f"CLASSES_REACHED {len(result.classes)}",
        f"SATURATED {_yesno(result.saturated)}",
        f"EXHAUSTED {_yesno(result.exhausted)}",
        f"VERDICT {report.verdict}",
    ]
    return code, "\n".join(lines)


def _cmd_compare(args) -> tuple[int, str]:
    a = _load_matrix(args.matrix_a)
    b = _load_matrix(args.matrix_b)
    report = compare_invariant_pairs(a, b, args.depth, _ksse_budget(args))
    code = EXIT_DISTINGUISHED if report.verdict == "distinguished" else EXIT_OK
    if args.json:
        doc = {
            "a": matrix_to_json_obj(a),
            "b": matrix_to_json_obj(b),
            "group_a": _group_json(report.a_result.presentation),
            "group_b": _group_json(report.b_result.presentation),
            "groups_isomorphic": report.groups_isomorphic,
            "det_a": report.det_a,
            "det_b": report.det_b,
            "order_multiset_a": list(report.order_multiset_a),
            "order_multiset_b": list(report.order_multiset_b),
            "verdict": report.verdict,
            "reasons": list(report.reasons),
        }
        return code, json.dumps(doc)
    lines = [
        f"A {a.rows} {a.cols}",
        f"B {b.rows} {b.cols}",
        f"GROUP_A {report.a_result.presentation.summands()}",
        f"GROUP_B {report.b_result.presentation.summands()}",
        f"GROUPS_ISOMORPHIC {_yesno(report.groups_isomorphic)}",
        f"DET_A {report.det_a}",
        f"DET_B {report.det_b}",
        f"ORDERS_A {_coords_str(report.order_multiset_a)}",
        f"ORDERS_B {_coords_str(report.order_multiset_b)}",
    ]
    for reason in report.reasons:
        lines.append(f"REASON {reason}")
    lines.append(f"VERDICT {report.verdict}")
    return code, "\n".join(lines)


def _cmd_check_lemmas(args) -> tuple[int, str]:
    config = LemmaSuiteConfig(
        trials=args.trials,
        dim_max=args.dim_max,
        entry_max=args.entry_max,
        seed=args.seed,
    )
    report = run_lemma_suite(config)
    code = EXIT_OK if report.ok else EXIT_VERIFY
    if args.json:
        doc = {
            "config": {
                "trials": config.trials,
                "dim_max": config.dim_max,
                "entry_max": config.entry_max,
                "seed": config.seed,
            },
            "passes": {name: count for name, count in report.passes},
            "trials_run": report.trials_run,
            "ok": report.ok,
            "failure": None
            if report.failure is None
            else {
                "check": report.failure.check,
                "trial": report.failure.trial,
                "detail": report.failure.detail,
                "C": matrix_to_json_obj(report.failure.c),
                "D": matrix_to_json_obj(report.failure.d),
            },
        }
        return code, json.dumps(doc)
    lines = [
        "CONFIG "
        f"trials={config.trials} dim_max={config.dim_max} "
        f"entry_max={config.entry_max} seed={config.seed}"
    ]
    for name, count in report.passes:
        lines.append(f"PASS {name} {count}/{report.trials_run}")
    if report.failure is not None:
        f = report.failure
        lines.append(f"FAIL {f.check} trial {f.trial}")
        lines.append(f"DETAIL {f.detail}")
        lines.append("C")
        lines.append(_matrix_block(f.c))
        lines.append("D")
        lines.append(_matrix_block(f.d))
    lines.append(f"RESULT {'ok' if report.ok else 'failure'}")
    return code, "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ssekit", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"ssekit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        p.add_argument("--json", action="store_true", help="emit one JSON document")
        return p

    p = add("analyze", _cmd_analyze, "structural profile of a matrix")
    p.add_argument("matrix")

    p = add("edge-graph", _cmd_edge_graph, "edge graph, transition and splitting matrices")
    p.add_argument("matrix")

    p = add("factor", _cmd_factor, "enumerate factorizations A = C @ D")
    p.add_argument("matrix")
    p.add_argument("--inner-dim", type=int, required=True)
    p.add_argument("--max-entry", type=int, default=None,
                   help="entry bound for C and D (default: largest entry of A)")
    p.add_argument("--max-results", type=int, default=None)

    p = add("verify-chain", _cmd_verify_chain, "verify a chain file and report its transfer")
    p.add_argument("chain")

    p = add("k0", _cmd_k0, "cokernel of I - A^t, det(I - A), class of the ones vector")
    p.add_argument("matrix")

    def add_search_flags(p):
        p.add_argument("--depth", type=int, required=True)
        p.add_argument("--inner-max", type=int, required=True)
        p.add_argument("--entry-max", type=int, required=True)

    p = add("ksse", _cmd_ksse, "enumerate reachable unit classes")
    p.add_argument("matrix")
    add_search_flags(p)
    p.add_argument("--witnesses", action="store_true",
                   help="include one witness chain per class")

    p = add("full-units", _cmd_full_units, "certify that every unit class is reached")
    p.add_argument("matrix")
    add_search_flags(p)

    p = add("compare", _cmd_compare, "compare two matrices by certified invariants")
    p.add_argument("matrix_a")
    p.add_argument("matrix_b")
    add_search_flags(p)

    p = add("check-lemmas", _cmd_check_lemmas, "randomized exact identity checks")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--dim-max", type=int, default=4)
    p.add_argument("--entry-max", type=int, default=3)
    p.add_argument("--seed", type=int, default=42)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"ERROR {EXIT_PARSE}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        code, text = args.handler(args)
    except MatrixFormatError as exc:
        print(f"ERROR {EXIT_PARSE}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DomainError as exc:
        print(f"ERROR {EXIT_DOMAIN}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except VerificationError as exc:
        print(f"ERROR {EXIT_VERIFY}: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    sys.stdout.write(text.rstrip("\n") + "\n")
    return code


def entry() -> None:
    sys.exit(run())
