"""Command-line front end.

Exit codes: 0 verdict computed (true or false), 2 parse, namespace or
usage error, 3 inconsistent ABox, 4 tableau budget exhausted, 5 oracle
bounds exceeded or KB outside the oracle's fragment.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from typing import Sequence

from .bases import LEX, MP, closure_report, find_bases
from .concepts import Not, conjoin
from .errors import ResourceLimitExceeded
from .kb import KnowledgeBase, NamespaceError
from .oracle import (
    DEFAULT_MAX_ATOMS,
    DEFAULT_MAX_DOMAIN,
    OracleBounds,
    OracleError,
    VerificationError,
    oracle_rc_entails,
    oracle_s_entails,
)
from .parser import ParseError, parse_concept, parse_kb, parse_query
from .ranking import compute_ranking, concept_rank, rc_entails
from .tableau import abox_consistent, entails

EXIT_OK, EXIT_USAGE, EXIT_INCONSISTENT, EXIT_RESOURCE, EXIT_ORACLE = 0, 2, 3, 4, 5

METHODS = ("classical", "rc", "mp", "lex", "oracle-rc", "oracle-s")


class UsageError(Exception):
    pass


class InconsistentABox(Exception):
    pass


def _rank_json(rank):
    if rank is None:
        return None
    return "inf" if rank == math.inf else int(rank)


def _load(args) -> KnowledgeBase:
    try:
        with open(args.kb, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.kb}: {exc.strerror}") from exc
    kb = parse_kb(text)
    if not abox_consistent(kb, args.max_nodes):
        raise InconsistentABox(f"{args.kb}: the ABox is inconsistent with the strict TBox")
    return kb


def _strata_listing(ranking) -> list[list[str]]:
    return [[str(d) for d in layer] for layer in ranking.strata]


def cmd_check(args) -> dict:
    kb = _load(args)
    return {
        "consistent": True,
        "strict": len(kb.strict),
        "defeasible": len(kb.defeasible),
        "assertions": len(kb.concept_assertions) + len(kb.role_assertions),
    }


def cmd_rank(args) -> dict:
    kb = _load(args)
    concept = parse_concept(args.text)
    ranking = compute_ranking(kb, args.max_nodes)
    return {
        "concept": args.text,
        "rank": _rank_json(concept_rank(ranking, concept)),
        "strata": _strata_listing(ranking),
        "infinite": [str(d) for d in ranking.infinite_defaults],
    }


def cmd_entails(args) -> dict:
    kb = _load(args)
    q = parse_query(args.text)
    method = args.method
    out: dict = {
        "method": method,
        "query": str(q),
        "entailed": None,
        "rank_lhs": None,
        "rank_lhs_and_neg_rhs": None,
        "bases": None,
    }
    bounds = OracleBounds(args.max_atoms, args.max_domain)
    if method == "classical":
        if q.typical:
            raise UsageError("method 'classical' does not accept T(...) queries")
        out["entailed"] = entails(kb.strict, q, args.max_nodes)
        return out
    if method == "oracle-rc":
        out["entailed"] = oracle_rc_entails(kb, q, bounds)
        return out
    if method == "oracle-s":
        out["entailed"] = oracle_s_entails(kb, q, bounds)
        return out

    ranking = compute_ranking(kb, args.max_nodes)
    if q.typical:
        out["rank_lhs"] = _rank_json(concept_rank(ranking, q.lhs))
        out["rank_lhs_and_neg_rhs"] = _rank_json(
            concept_rank(ranking, conjoin([q.lhs, Not(q.rhs)]))
        )
    if method == "rc":
        out["entailed"] = rc_entails(kb, ranking, q)
        return out
    report = closure_report(kb, ranking, q, MP if method == "mp" else LEX)
    out["entailed"] = report.entailed
    if q.typical:
        out["bases"] = [[str(d) for d in base.full] for base, _ in report.bases]
        if args.explain:
            out["explanation"] = [
                {
                    "base": [
                        [str(d) for d in layer] for layer in base.selection
                    ],
                    "forced": [str(d) for d in base.forced],
                    "holds": ok,
                }
                for base, ok in report.bases
            ]
    return out


def cmd_bases(args) -> dict:
    kb = _load(args)
    if args.method not in (MP, LEX):
        raise UsageError("bases supports --method mp or lex")
    concept = parse_concept(args.text)
    ranking = compute_ranking(kb, args.max_nodes)
    found = find_bases(kb, ranking, concept, args.method)
    return {
        "method": args.method,
        "concept": args.text,
        "rank_lhs": _rank_json(concept_rank(ranking, concept)),
        "bases": [[str(d) for d in base.full] for base in found],
        "stratified": [
            {
                "selection": [[str(d) for d in layer] for layer in base.selection],
                "forced": [str(d) for d in base.forced],
            }
            for base in found
        ],
    }


def _render_text(command: str, result: dict) -> str:
    lines: list[str] = []
    if command == "check":
        lines.append(
            f"consistent: {result['strict']} strict, {result['defeasible']} defeasible, "
            f"{result['assertions']} assertions"
        )
    elif command == "rank":
        lines.append(f"rank({result['concept']}) = {result['rank']}")
        for i, layer in enumerate(result["strata"]):
            lines.append(f"D{i}: " + ("; ".join(layer) if layer else "(empty)"))
        if result["infinite"]:
            lines.append("inf: " + "; ".join(result["infinite"]))
    elif command == "entails":
        verdict = "true" if result["entailed"] else "false"
        lines.append(f"{result['query']}: {verdict} ({result['method']})")
        if result["rank_lhs"] is not None:
            lines.append(
                f"rank(lhs) = {result['rank_lhs']}, "
                f"rank(lhs and not rhs) = {result['rank_lhs_and_neg_rhs']}"
            )
        for i, item in enumerate(result.get("explanation", []), 1):
            chosen = [d for layer in item["base"] for d in layer]
            lines.append(f"base {i}: {{{'; '.join(chosen + item['forced'])}}}")
            for rank, layer in enumerate(item["base"]):
                lines.append(f"  stratum {rank}: " + ("; ".join(layer) if layer else "(none)"))
            lines.append("  forced: " + ("; ".join(item["forced"]) if item["forced"] else "(none)"))
            lines.append(f"  query holds: {'yes' if item['holds'] else 'no'}")
    elif command == "bases":
        lines.append(
            f"{len(result['bases'])} {result['method']} base(s) for {result['concept']} "
            f"(rank {result['rank_lhs']})"
        )
        for i, item in enumerate(result["stratified"], 1):
            lines.append(f"base {i}:")
            for rank, layer in enumerate(item["selection"]):
                lines.append(f"  stratum {rank}: " + ("; ".join(layer) if layer else "(none)"))
            lines.append("  forced: " + ("; ".join(item["forced"]) if item["forced"] else "(none)"))
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("kb", help="knowledge base file")
    common.add_argument("--json", action="store_true", help="print a JSON object")
    common.add_argument(
        "--max-nodes",
        type=int,
        default=None,
        help="tableau expansion budget (default: $DEFEASIBLE_ALC_MAX_NODES or 100000)",
    )
    common.add_argument("--max-atoms", type=int, default=DEFAULT_MAX_ATOMS)
    common.add_argument("--max-domain", type=int, default=DEFAULT_MAX_DOMAIN)

    parser = argparse.ArgumentParser(
        prog="defeasible-alc",
        description="Defeasible ALC reasoning: ranks, closures and a role-free model oracle.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("check", parents=[common], help="parse the KB and check ABox consistency")

    p = sub.add_parser("rank", parents=[common], help="rank of a concept and the strata")
    p.add_argument("text", metavar="concept")

    p = sub.add_parser("entails", parents=[common], help="decide a query")
    p.add_argument("text", metavar="query", help='"T(C) <= D" or "C <= D"')
    p.add_argument("--method", choices=METHODS, default="rc")
    p.add_argument("--explain", action="store_true", help="list bases and per-base outcomes")

    p = sub.add_parser("bases", parents=[common], help="preferred bases for a subject")
    p.add_argument("text", metavar="concept")
    p.add_argument("--method", choices=(MP, LEX), default=MP)
    return parser


COMMANDS = {"check": cmd_check, "rank": cmd_rank, "entails": cmd_entails, "bases": cmd_bases}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.max_nodes is not None and args.max_nodes <= 0:
        parser.error("--max-nodes must be positive")
    start = time.perf_counter()
    try:
        result = COMMANDS[args.command](args)
    except (ParseError, NamespaceError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InconsistentABox as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except ResourceLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except VerificationError:
        raise
    except OracleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    elapsed_ms = round((time.perf_counter() - start) * 1000, 3)
    if args.json:
        payload = {"command": args.command, **result, "elapsed_ms": elapsed_ms}
        print(json.dumps(payload, sort_keys=True))
    else:
        print(_render_text(args.command, result))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
