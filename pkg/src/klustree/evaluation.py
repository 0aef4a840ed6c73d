"""Judgment-pair sampling and NDCG scoring of cluster rankings.

Relevance grades always come from outside (a grades file or the judgments
endpoint); nothing here fabricates human input.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

from .clustering import Clustering, DistanceMatrix
from .errors import ContractError


class PairOrigin(Enum):
    WITHIN_MAX = "within_max"
    WITHIN_MIN = "within_min"
    CROSS_REPRESENTATIVE = "cross_representative"


@dataclass(frozen=True)
class JudgmentPair:
    """Two tree indices to show side by side, with where they came from."""

    a: int
    b: int
    origin: PairOrigin
    clusters: tuple[int, ...]


def generate_judgment_pairs(
    c: Clustering,
    m: DistanceMatrix,
    seed: int,
    tree_ranks: Sequence[int] | None = None,
) -> list[JudgmentPair]:
    """The pairs a rater sees: per multi-member cluster its maximum-distance
    and minimum-distance pair (collapsed to one when they coincide), plus one
    representative pair per unordered cluster combination.  Output order is a
    seeded shuffle; the whole result is a deterministic function of
    (clustering, matrix, seed)."""
    if c.n != m.n:
        raise ContractError("clustering and matrix sizes differ")
    ranks = list(tree_ranks) if tree_ranks is not None else list(range(1, c.n + 1))
    if len(ranks) != c.n:
        raise ContractError("ranks must cover every tree")
    members = c.clusters()
    pairs: list[JudgmentPair] = []
    for cid, mem in enumerate(members):
        if len(mem) < 2:
            continue
        candidates = [
            (float(m.values[i, j]), i, j)
            for pos, i in enumerate(mem)
            for j in mem[pos + 1:]
        ]
        max_d, max_i, max_j = max(candidates, key=lambda t: (t[0], (-t[1], -t[2])))
        min_d, min_i, min_j = min(candidates)
        pairs.append(JudgmentPair(max_i, max_j, PairOrigin.WITHIN_MAX, (cid,)))
        if (min_i, min_j) != (max_i, max_j):
            pairs.append(JudgmentPair(min_i, min_j, PairOrigin.WITHIN_MIN, (cid,)))
    representatives = [min(mem, key=lambda i: ranks[i]) for mem in members]
    for cid_a in range(c.k):
        for cid_b in range(cid_a + 1, c.k):
            pairs.append(
                JudgmentPair(
                    representatives[cid_a],
                    representatives[cid_b],
                    PairOrigin.CROSS_REPRESENTATIVE,
                    (cid_a, cid_b),
                )
            )
    random.Random(seed).shuffle(pairs)
    return pairs


def judgment_pairs_json(pairs: Sequence[JudgmentPair], trees_json: Sequence[Mapping]) -> list[dict]:
    """Export with both trees fully serialized for display."""
    return [
        {
            "a": dict(trees_json[p.a]),
            "b": dict(trees_json[p.b]),
            "origin": p.origin.value,
            "clusters": list(p.clusters),
        }
        for p in pairs
    ]


@dataclass(frozen=True)
class RelevanceVector:
    """Per-cluster relevance grades on the 1 (very uninteresting) to 5
    (highly interesting) scale."""

    grades: Mapping[int, int]

    def __post_init__(self):
        for cid, grade in self.grades.items():
            if not isinstance(grade, int) or not 1 <= grade <= 5:
                raise ContractError(f"grade for cluster {cid} must be an int in 1..5")


def ndcg(order: Sequence[int], rel: RelevanceVector | Mapping[int, int]) -> float:
    """Normalized discounted cumulative gain of a cluster ranking.

    Gain is the grade itself, discounted by ``1 / log2(position + 1)`` with
    1-based positions, normalized by the grade-descending ideal.  1.0 exactly
    when the presented order is grade-descending (up to equal-grade ties).
    """
    if not order:
        raise ContractError("empty ranking")
    grades = rel.grades if isinstance(rel, RelevanceVector) else rel
    missing = [cid for cid in order if cid not in grades]
    if missing:
        raise ContractError(f"grades missing for clusters: {missing}")
    gains = [grades[cid] for cid in order]
    dcg = sum(g / math.log2(pos + 1) for pos, g in enumerate(gains, start=1))
    ideal = sum(
        g / math.log2(pos + 1)
        for pos, g in enumerate(sorted(gains, reverse=True), start=1)
    )
    return dcg / ideal


def parse_grades(doc: Mapping) -> tuple[str, str, RelevanceVector]:
    """Read a grades document ``{"query": ..., "method": ..., "grades":
    {"<cluster id>": 1..5}}``."""
    try:
        grades = {int(cid): int(grade) for cid, grade in doc["grades"].items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise ContractError(f"malformed grades document: {exc}") from exc
    return str(doc.get("query", "")), str(doc.get("method", "")), RelevanceVector(grades)
