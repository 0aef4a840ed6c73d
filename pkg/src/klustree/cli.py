"""Command-line entry points.

    klustree index <graph.tsv>
    klustree search <graph.tsv> --q k1,k2 [--limit 25]
    klustree cluster <graph.tsv> --q k1,k2 --method lm|iso|ted [--heuristic ...]
    klustree eval ndcg --grades grades.json --clusters clusters.json
    klustree serve --port P --graph graph.tsv

Every command prints a JSON document to stdout.
"""

from __future__ import annotations

import argparse
import json
import sys

from .clustering import Heuristic
from .errors import KlusTreeError
from .evaluation import ndcg, parse_grades
from .graph_store import load_graph_path
from .keyword_search import KeywordQuery, enumerate_answer_trees, trees_to_json
from .pipeline import Method, PipelineConfig, run_pipeline


def _emit(document) -> None:
    print(json.dumps(document, sort_keys=True, indent=2))


def _keywords(raw: str) -> KeywordQuery:
    return KeywordQuery(tuple(k.strip() for k in raw.split(",") if k.strip()))


def cmd_index(args) -> int:
    g = load_graph_path(args.graph)
    _emit(
        {
            "triples": len(g.triples),
            "nodes": len(g.nodes),
            "predicates": len(g.predicates),
        }
    )
    return 0


def cmd_search(args) -> int:
    g = load_graph_path(args.graph)
    q = _keywords(args.q)
    trees = enumerate_answer_trees(g, q, args.limit)
    _emit(trees_to_json(q, trees))
    return 0


def cmd_cluster(args) -> int:
    cfg = PipelineConfig(
        graph_path=args.graph,
        method=Method(args.method),
        heuristic=Heuristic(args.heuristic),
        top_n=args.limit,
        k_min=args.k_min,
        k_max=args.k_max,
        seed=args.seed,
    )
    _emit(run_pipeline(cfg, _keywords(args.q)))
    return 0


def cmd_eval_ndcg(args) -> int:
    with open(args.grades, "r", encoding="utf-8") as fh:
        query, method, rel = parse_grades(json.load(fh))
    with open(args.clusters, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    order = [entry["id"] for entry in doc["clusters"]]
    _emit({"query": query, "method": method, "ndcg": ndcg(order, rel)})
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    cfg = PipelineConfig(graph_path=args.graph, seed=args.seed)
    uvicorn.run(create_app(cfg), host=args.host, port=args.port)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="klustree",
        description="Cluster keyword-search answer trees over a triple graph.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_index = sub.add_parser("index", help="load a graph and print its stats")
    p_index.add_argument("graph")
    p_index.set_defaults(func=cmd_index)

    p_search = sub.add_parser("search", help="enumerate ranked answer trees")
    p_search.add_argument("graph")
    p_search.add_argument("--q", required=True, help="comma-separated keywords")
    p_search.add_argument("--limit", type=int, default=25)
    p_search.set_defaults(func=cmd_search)

    p_cluster = sub.add_parser("cluster", help="run the full clustering pipeline")
    p_cluster.add_argument("graph")
    p_cluster.add_argument("--q", required=True, help="comma-separated keywords")
    p_cluster.add_argument("--method", choices=[m.value for m in Method], default="lm")
    p_cluster.add_argument(
        "--heuristic", choices=[h.value for h in Heuristic], default="best"
    )
    p_cluster.add_argument("--limit", type=int, default=25)
    p_cluster.add_argument("--k-min", type=int, default=2)
    p_cluster.add_argument("--k-max", type=int, default=15)
    p_cluster.add_argument("--seed", type=int, default=0)
    p_cluster.set_defaults(func=cmd_cluster)

    p_eval = sub.add_parser("eval", help="evaluation utilities")
    eval_sub = p_eval.add_subparsers(dest="eval_command", required=True)
    p_ndcg = eval_sub.add_parser("ndcg", help="score a clustering against grades")
    p_ndcg.add_argument("--grades", required=True)
    p_ndcg.add_argument("--clusters", required=True)
    p_ndcg.set_defaults(func=cmd_eval_ndcg)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--graph", required=True)
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--seed", type=int, default=0)
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (KlusTreeError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
