"""The end-to-end pipeline: search, tree models, distances, clusters, ranks.

``run_pipeline`` produces a JSON-ready document; ``run_pipeline_full`` also
returns the intermediate artifacts (trees, matrix, clustering, all four
rankings) that the HTTP service keeps cached per query.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Sequence

import numpy as np

from .baselines import canonical_form, isomorphism_clusters, ted_distance_matrix
from .clustering import (
    Clustering,
    ClusterRanking,
    DistanceMatrix,
    Heuristic,
    build_distance_matrix,
    rank_clusters,
    select_clustering,
)
from .errors import PipelineError
from .evaluation import JudgmentPair, generate_judgment_pairs
from .graph_store import Graph, load_graph_path
from .keyword_search import (
    AnswerTree,
    KeywordQuery,
    enumerate_answer_trees,
    tree_to_json,
)
from .language_models import LMParams, TreeLM, TreeLMBuilder


class Method(Enum):
    LM = "lm"
    ISO = "iso"
    TED = "ted"


METHOD_LABELS = {Method.LM: "lm", Method.ISO: "isomorphism", Method.TED: "ted"}


@dataclass(frozen=True)
class PipelineConfig:
    """Run settings.  The defaults are the evaluation setup: top 25 trees,
    lambda = gamma = 0.5, equal mixture weights, K selected in [2, 15]."""

    graph_path: str = ""
    params: LMParams = field(default_factory=LMParams)
    top_n: int = 25
    k_min: int = 2
    k_max: int = 15
    heuristic: Heuristic = Heuristic.BEST
    method: Method = Method.LM
    seed: int = 0
    max_path_edges: int = 4

    def __post_init__(self):
        if self.top_n < 1:
            raise ValueError("top_n must be >= 1")
        if self.k_min < 0 or self.k_max < self.k_min:
            raise ValueError("need 0 <= k_min <= k_max")


@dataclass
class PipelineResult:
    document: dict
    query: KeywordQuery
    trees: list[AnswerTree]
    matrix: DistanceMatrix | None
    clustering: Clustering | None
    rankings: dict[Heuristic, ClusterRanking]
    judgment_pairs: list[JudgmentPair]


@contextmanager
def _stage(name: str):
    try:
        yield
    except PipelineError:
        raise
    except Exception as exc:
        raise PipelineError(name, exc) from exc


def _iso_distance_matrix(trees: Sequence[AnswerTree]) -> DistanceMatrix:
    # 0/1 shape-identity distances; only feeds judgment-pair sampling
    forms = [canonical_form(t) for t in trees]
    n = len(trees)
    values = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            d = 0.0 if forms[i] == forms[j] else 1.0
            values[i, j] = values[j, i] = d
    return DistanceMatrix(values)


def _cluster_entries(
    clustering: Clustering,
    ranking: ClusterRanking,
    trees_json: Sequence[dict],
) -> list[dict]:
    members = clustering.clusters()
    entries = []
    for position, cid in enumerate(ranking.order, start=1):
        entries.append(
            {
                "id": cid,
                "rank_position": position,
                "representative": dict(trees_json[ranking.representatives[cid]]),
                "trees": list(members[cid]),
            }
        )
    return entries


def run_pipeline_full(
    cfg: PipelineConfig,
    keywords: KeywordQuery | Sequence[str],
    graph: Graph | None = None,
) -> PipelineResult:
    """Run every stage and keep the intermediates.  Fully deterministic for a
    fixed config and seed; errors carry the failing stage's name."""
    with _stage("load"):
        g = graph if graph is not None else load_graph_path(cfg.graph_path)
    with _stage("query"):
        q = keywords if isinstance(keywords, KeywordQuery) else KeywordQuery(tuple(keywords))
    with _stage("search"):
        trees = enumerate_answer_trees(
            g, q, cfg.top_n, max_path_edges=cfg.max_path_edges
        )
    trees_json = [tree_to_json(t) for t in trees]
    n = len(trees)

    matrix: DistanceMatrix | None = None
    clustering: Clustering | None = None
    if n == 0:
        pass
    elif n == 1:
        clustering = Clustering(k=1, assignment=(0,), ch_value=None)
        matrix = DistanceMatrix(np.zeros((1, 1)))
    elif cfg.method is Method.LM:
        with _stage("modeling"):
            builder = TreeLMBuilder(g, cfg.params)
            tree_lms: list[TreeLM] = [builder.tree_lm(t) for t in trees]
        with _stage("distances"):
            matrix = build_distance_matrix(tree_lms, cfg.params.gamma)
        with _stage("clustering"):
            clustering = select_clustering(matrix, cfg.k_min, cfg.k_max)
    elif cfg.method is Method.ISO:
        with _stage("clustering"):
            clustering = isomorphism_clusters(trees)
            matrix = _iso_distance_matrix(trees)
    else:
        with _stage("distances"):
            matrix = ted_distance_matrix(trees)
        with _stage("clustering"):
            clustering = select_clustering(matrix, cfg.k_min, cfg.k_max)

    rankings: dict[Heuristic, ClusterRanking] = {}
    pairs: list[JudgmentPair] = []
    if clustering is not None:
        with _stage("ranking"):
            ranks = [t.rank for t in trees]
            sizes = [t.size for t in trees]
            rankings = {
                h: rank_clusters(clustering, ranks, sizes, h) for h in Heuristic
            }
        with _stage("pairs"):
            pairs = generate_judgment_pairs(clustering, matrix, cfg.seed, ranks)

    params = cfg.params
    document = {
        "query": list(q.keywords),
        "method": METHOD_LABELS[cfg.method],
        "heuristic": cfg.heuristic.value,
        "params": {
            "lambda": params.lam,
            "mu": params.mu,
            "mu_s": params.mu_s,
            "mu_o": params.mu_o,
            "gamma": params.gamma,
            "top_n": cfg.top_n,
            "k_min": cfg.k_min,
            "k_max": cfg.k_max,
            "seed": cfg.seed,
        },
        "trees": trees_json,
        "k": clustering.k if clustering is not None else 0,
        "ch": clustering.ch_value if clustering is not None else None,
        "clusters": (
            _cluster_entries(clustering, rankings[cfg.heuristic], trees_json)
            if clustering is not None
            else []
        ),
        "rankings": {h.value: list(r.order) for h, r in rankings.items()},
    }
    return PipelineResult(
        document=document,
        query=q,
        trees=trees,
        matrix=matrix,
        clustering=clustering,
        rankings=rankings,
        judgment_pairs=pairs,
    )


def run_pipeline(
    cfg: PipelineConfig,
    keywords: KeywordQuery | Sequence[str],
    graph: Graph | None = None,
) -> dict:
    """Search, cluster, and rank; returns the JSON-ready result document."""
    return run_pipeline_full(cfg, keywords, graph).document


def config_with(cfg: PipelineConfig, **updates) -> PipelineConfig:
    """``dataclasses.replace`` with LMParams fields lifted to the top level."""
    param_fields = {"lam", "mu", "mu_s", "mu_o", "gamma", "delta_policy"}
    lm_updates = {k: v for k, v in updates.items() if k in param_fields}
    cfg_updates = {k: v for k, v in updates.items() if k not in param_fields}
    if lm_updates:
        cfg_updates["params"] = replace(cfg.params, **lm_updates)
    return replace(cfg, **cfg_updates)
