"""Command-line interface: ``treematch {gen,perturb,query,bench}``."""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path
from typing import Iterator, Optional, Sequence, TextIO

from .bench import CrossCheckError, format_json, format_table, run_bench
from .distance import CostError, CostParams
from .search import SearchParams, approx_search
from .synth import GenParams, PerturbParams, gen_database, perturb
from .tree import (
    Tree,
    TreeError,
    format_tree,
    linearize,
    parse_tree,
    read_database,
    write_database,
)
from .trie import build_trie

PROG = "treematch"
SEED_ENV = "TREEMATCH_SEED"


class CliError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise CliError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _fraction(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    return value


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {text}")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text}")
    return value


def _weights(text: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected three comma-separated weights: delete,insert,relabel")
    try:
        return tuple(float(p) for p in parts)  # type: ignore[return-value]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad weights {text!r}") from None


@contextmanager
def _output(path: str) -> Iterator[TextIO]:
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def _costs(args: argparse.Namespace) -> CostParams:
    return CostParams(c=args.cost_change, s=args.cost_indel)


def _seed(args: argparse.Namespace) -> int:
    return args.seed if args.seed is not None else _default_seed()


def _read_query(args: argparse.Namespace) -> Tree:
    if args.tree is not None:
        text, source = args.tree, "--tree"
    elif args.query == "-":
        text, source = sys.stdin.read(), "<stdin>"
    else:
        source = args.query
        text = Path(args.query).read_text(encoding="utf-8")
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if lines and "\t" in lines[0]:
        lines[0] = lines[0].split("\t", 1)[1]
    try:
        return parse_tree(" ".join(lines))
    except TreeError as exc:
        raise CliError(f"{source}: {exc}") from None


def cmd_gen(args: argparse.Namespace) -> int:
    params = GenParams(
        count=args.count,
        alp=args.alp,
        max_children=args.max_children,
        max_depth=args.max_depth,
        alphabet=args.alphabet,
        seed=_seed(args),
    )
    db = gen_database(params)
    with _output(args.out) as out:
        write_database(db, out)
    leaves = [tree.leaf_count() for _, tree in db]
    avg = sum(leaves) / len(leaves) if leaves else 0.0
    print(f"wrote {len(db)} trees (avg leaves {avg:.2f}, max leaves {max(leaves, default=0)})", file=sys.stderr)
    return 0


def cmd_perturb(args: argparse.Namespace) -> int:
    db = read_database(args.db)
    if len(db) == 0:
        raise CliError(f"{args.db}: database is empty")
    costs = _costs(args)
    rng = random.Random(_seed(args))
    params = PerturbParams(edits=args.edits, weights=args.weights, budget=args.budget)
    if args.count <= len(db):
        picks = rng.sample(range(len(db)), args.count)
    else:
        picks = rng.choices(range(len(db)), k=args.count)
    with _output(args.out) as out:
        for qi, index in enumerate(picks):
            source_id, tree = db[index]
            query, cost = perturb(tree, params, costs, rng=rng)
            out.write(f"# source-id={source_id}, applied-cost={cost}\n")
            out.write(f"{qi}\t{format_tree(query)}\n")
    return 0


def cmd_query(args: argparse.Namespace) -> int:
    db = read_database(args.db)
    query = _read_query(args)
    params = SearchParams(args.threshold, _costs(args))
    trie = build_trie(db)
    matches, _ = approx_search(trie, linearize(query), params)
    rows = [(m.distance, m.tree_id, format_tree(db.tree(m.tree_id))) for m in matches]
    with _output(args.out) as out:
        if args.format == "json":
            json.dump([{"id": i, "distance": d, "tree": t} for d, i, t in rows], out, indent=2)
            out.write("\n")
        else:
            for d, i, t in rows:
                out.write(f"{d}\t{i}\t{t}\n")
    if not matches and args.fail_empty:
        print(f"{PROG}: no trees within threshold {args.threshold}", file=sys.stderr)
        return 1
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    db = read_database(args.db)
    queries = [tree for _, tree in read_database(args.queries)]
    if not queries:
        raise CliError(f"{args.queries}: no queries")
    costs = _costs(args)
    trie = build_trie(db)
    name = Path(args.db).stem
    reports = [
        run_bench(db, queries, SearchParams(t, costs), repeat=args.repeat, trie=trie, database=name)
        for t in args.thresholds
    ]
    with _output(args.out) as out:
        out.write(format_json(reports) if args.format == "json" else format_table(reports))
        out.write("\n")
    return 0


def _add_costs(p: argparse.ArgumentParser) -> None:
    p.add_argument("--cost-change", type=_non_negative, default=1, metavar="C", help="leaf label change cost (default 1)")
    p.add_argument("--cost-indel", type=_positive, default=2, metavar="S", help="leaf insert/delete cost (default 2)")


def _add_seed(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=None, help=f"random seed (default ${SEED_ENV} or 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=PROG, description="Approximate retrieval of labeled trees.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a synthetic tree database")
    p.add_argument("--count", type=_non_negative, required=True)
    p.add_argument("--alp", type=_fraction, default=Fraction(1, 3), help="leaf probability per level, e.g. 1/3")
    p.add_argument("--max-children", type=_positive, default=8)
    p.add_argument("--max-depth", type=_positive, default=5)
    p.add_argument("--alphabet", type=_positive, default=26, help="number of distinct labels")
    _add_seed(p)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("perturb", help="sample database trees and perturb them into queries")
    p.add_argument("--db", required=True)
    p.add_argument("--count", type=_non_negative, default=100)
    p.add_argument("--edits", type=_non_negative, default=1, help="edits per query")
    p.add_argument("--budget", type=_non_negative, default=None, help="cap on the nominal cost per query")
    p.add_argument("--weights", type=_weights, default=(1.0, 1.0, 1.0), help="delete,insert,relabel")
    _add_costs(p)
    _add_seed(p)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_perturb)

    p = sub.add_parser("query", help="find database trees close to a query tree")
    p.add_argument("--db", required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--query", help="file holding the query tree ('-' for stdin)")
    src.add_argument("--tree", help="query tree text")
    p.add_argument("-t", "--threshold", type=_non_negative, default=2)
    _add_costs(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--fail-empty", action="store_true", help="exit 1 when nothing matches")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("bench", help="time searches for a query file at several thresholds")
    p.add_argument("--db", required=True)
    p.add_argument("--queries", required=True)
    p.add_argument("--thresholds", type=_non_negative, nargs="+", default=[2, 4])
    p.add_argument("--repeat", type=_positive, default=1, help="time each query as best of N runs")
    _add_costs(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "cost_change"):
        try:
            _costs(args)
        except CostError as exc:
            parser.error(str(exc))
    try:
        return args.func(args)
    except (CliError, CrossCheckError, ValueError, OSError) as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
