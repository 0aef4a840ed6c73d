"""Smoothed mixture language models for entities, relationships, and trees.

Every model is a sparse probability table over typed terms.  The typed term
spaces never overlap (an entity unigram, an entity bigram, a relationship
subject-unigram, ... are all distinct keys), which keeps each mixture a
proper distribution whose mass splits exactly along the mixture weights.
"""

from __future__ import annotations

import math
import threading
from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Union

from . import graph_store
from .errors import ContractError
from .graph_store import Graph, bigram, unigram
from .keyword_search import AnswerTree

ENTITY = "entity"
RELATIONSHIP = "relationship"

SUM_TOLERANCE = 1e-9
PRUNE_EPS = 1e-12

# Sparse term keys: ("u", label) entity unigram, ("s"/"o", label) relationship
# subject/object unigram, ("b", first, second) bigram on either side.
TermKey = tuple


@dataclass(frozen=True)
class LMParams:
    """Estimation weights; the defaults are an even split everywhere.

    ``lam`` interpolates document against corpus statistics, ``mu`` splits an
    entity model between unigram and bigram mass, ``mu_s``/``mu_o`` weight a
    relationship model's subject and object unigram components (the bigram
    component receives the remainder), and ``gamma`` weights the entity side
    against the relationship side in the tree distance.  ``delta_policy`` is
    either ``"equal"`` or an explicit node-label -> weight mapping.
    """

    lam: float = 0.5
    mu: float = 0.5
    mu_s: float = 1.0 / 3.0
    mu_o: float = 1.0 / 3.0
    gamma: float = 0.5
    delta_policy: Union[str, Mapping[str, float]] = "equal"

    def __post_init__(self):
        for name in ("lam", "mu", "mu_s", "mu_o", "gamma"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ContractError(f"{name} must lie in [0, 1], got {value}")
        if self.mu_s + self.mu_o > 1.0 + 1e-12:
            raise ContractError("mu_s + mu_o must not exceed 1")
        if isinstance(self.delta_policy, str) and self.delta_policy != "equal":
            raise ContractError(f"unknown delta policy {self.delta_policy!r}")


@dataclass(frozen=True)
class LanguageModel:
    """A sparse distribution over typed terms; sums to 1 within 1e-9, stores
    no zero entries, and is tagged with its vocabulary side."""

    kind: str
    probs: Mapping[TermKey, float]

    def __post_init__(self):
        if self.kind not in (ENTITY, RELATIONSHIP):
            raise ContractError(f"unknown LM kind {self.kind!r}")
        total = math.fsum(self.probs.values())
        for term, p in self.probs.items():
            if not 0.0 < p <= 1.0 + 1e-12:
                raise ContractError(f"probability out of (0, 1] for {term}: {p}")
        if abs(total - 1.0) > SUM_TOLERANCE:
            raise ContractError(f"probabilities sum to {total!r}, not 1")

    def __len__(self) -> int:
        return len(self.probs)


@dataclass(frozen=True)
class TreeLM:
    """Entity-side and relationship-side models of one answer tree.  A tree
    with no edges has no relationship side (``None``)."""

    entity_lm: LanguageModel
    relationship_lm: LanguageModel | None
    tree_rank: int


def _smoothed(doc_counts: Counter, bg_counts: Mapping, lam: float) -> dict:
    """Interpolate document frequency against corpus frequency, both
    normalized over the document's own (distinct) vocabulary."""
    doc_total = sum(doc_counts.values())
    bg_total = sum(bg_counts.values())
    out = {}
    for term, count in doc_counts.items():
        p = lam * (count / doc_total)
        if lam < 1.0:
            p += (1.0 - lam) * (bg_counts[term] / bg_total)
        out[term] = p
    return out


def _finish(kind: str, raw: dict) -> LanguageModel:
    kept = {t: v for t, v in raw.items() if v > PRUNE_EPS}
    total = math.fsum(kept.values())
    return LanguageModel(kind, {t: v / total for t, v in kept.items()})


def estimate_entity_lm(g: Graph, e: str, p: LMParams) -> LanguageModel:
    """Two-way mixture over an entity's unigrams (weight ``mu``) and bigrams
    (weight ``1 - mu``), each smoothed against corpus counts restricted to
    the entity's own vocabulary."""
    uni, bi = graph_store.entity_terms(g, e)
    uni_bg = {w: graph_store.corpus_count(g, unigram(w)) for w in uni}
    bi_bg = {pair: graph_store.corpus_count(g, bigram(*pair)) for pair in bi}
    uni_probs = _smoothed(uni, uni_bg, p.lam)
    bi_probs = _smoothed(bi, bi_bg, p.lam)
    mixed: dict[TermKey, float] = {}
    for w, prob in uni_probs.items():
        mixed[("u", w)] = p.mu * prob
    for pair, prob in bi_probs.items():
        mixed[("b", pair[0], pair[1])] = (1.0 - p.mu) * prob
    return _finish(ENTITY, mixed)


def estimate_relationship_lm(g: Graph, r: str, p: LMParams) -> LanguageModel:
    """Three-way mixture over a relationship's subject unigrams, object
    unigrams, and (subject, object) bigrams, weighted ``mu_s`` / ``mu_o`` /
    ``1 - mu_s - mu_o``."""
    subj, obj, pairs = graph_store.relationship_terms(g, r)
    subj_bg = {w: graph_store.corpus_count(g, unigram(w)) for w in subj}
    obj_bg = {w: graph_store.corpus_count(g, unigram(w)) for w in obj}
    pair_bg = {pair: graph_store.corpus_count(g, bigram(*pair)) for pair in pairs}
    mu_b = max(0.0, 1.0 - p.mu_s - p.mu_o)
    mixed: dict[TermKey, float] = {}
    for w, prob in _smoothed(subj, subj_bg, p.lam).items():
        mixed[("s", w)] = p.mu_s * prob
    for w, prob in _smoothed(obj, obj_bg, p.lam).items():
        mixed[("o", w)] = p.mu_o * prob
    for pair, prob in _smoothed(pairs, pair_bg, p.lam).items():
        mixed[("b", pair[0], pair[1])] = mu_b * prob
    return _finish(RELATIONSHIP, mixed)


def _deltas(nodes: list[str], policy) -> list[float]:
    if isinstance(policy, str):
        return [1.0 / len(nodes)] * len(nodes)
    missing = [n for n in nodes if n not in policy]
    if missing:
        raise ContractError(f"delta weights missing for nodes: {missing}")
    weights = [float(policy[n]) for n in nodes]
    if any(w < 0.0 for w in weights):
        raise ContractError("delta weights must be nonnegative")
    total = math.fsum(weights)
    if total <= 0.0:
        raise ContractError("delta weights must not all be zero")
    return [w / total for w in weights]


def _mix(components: list[tuple[LanguageModel, float]], kind: str) -> LanguageModel:
    acc: dict[TermKey, float] = {}
    for lm, weight in components:
        if weight == 0.0:
            continue
        for term, prob in lm.probs.items():
            acc[term] = acc.get(term, 0.0) + weight * prob
    return _finish(kind, acc)


def estimate_tree_lm(g: Graph, t: AnswerTree, p: LMParams) -> TreeLM:
    """Term-wise mixtures over a tree: its entity models weighted by the
    delta policy (equal by default), and its edge predicates' models weighted
    equally per edge occurrence, so a repeated predicate counts once per
    edge."""
    nodes = sorted(t.nodes)
    deltas = _deltas(nodes, p.delta_policy)
    entity = _mix(
        [(estimate_entity_lm(g, n, p), d) for n, d in zip(nodes, deltas)], ENTITY
    )
    predicates = sorted(e.predicate for e in t.edges)
    if predicates:
        weight = 1.0 / len(predicates)
        cache: dict[str, LanguageModel] = {}
        components = []
        for pred in predicates:
            if pred not in cache:
                cache[pred] = estimate_relationship_lm(g, pred, p)
            components.append((cache[pred], weight))
        relationship = _mix(components, RELATIONSHIP)
    else:
        relationship = None
    return TreeLM(entity_lm=entity, relationship_lm=relationship, tree_rank=t.rank)


class TreeLMBuilder:
    """Estimates tree models over one graph while memoizing the per-entity
    and per-predicate models.  Cached reads are safe under concurrency; the
    lock serializes inserts."""

    def __init__(self, g: Graph, params: LMParams):
        self.graph = g
        self.params = params
        self._entities: dict[str, LanguageModel] = {}
        self._relationships: dict[str, LanguageModel] = {}
        self._lock = threading.Lock()

    def entity_lm(self, e: str) -> LanguageModel:
        lm = self._entities.get(e)
        if lm is None:
            lm = estimate_entity_lm(self.graph, e, self.params)
            with self._lock:
                self._entities.setdefault(e, lm)
        return lm

    def relationship_lm(self, r: str) -> LanguageModel:
        lm = self._relationships.get(r)
        if lm is None:
            lm = estimate_relationship_lm(self.graph, r, self.params)
            with self._lock:
                self._relationships.setdefault(r, lm)
        return lm

    def tree_lm(self, t: AnswerTree) -> TreeLM:
        nodes = sorted(t.nodes)
        deltas = _deltas(nodes, self.params.delta_policy)
        entity = _mix(
            [(self.entity_lm(n), d) for n, d in zip(nodes, deltas)], ENTITY
        )
        predicates = sorted(e.predicate for e in t.edges)
        if predicates:
            weight = 1.0 / len(predicates)
            relationship = _mix(
                [(self.relationship_lm(p), weight) for p in predicates], RELATIONSHIP
            )
        else:
            relationship = None
        return TreeLM(entity_lm=entity, relationship_lm=relationship, tree_rank=t.rank)


def lm_to_json(lm: LanguageModel) -> dict:
    """Debug dump: terms sorted by descending probability, then text."""
    terms = []
    for key, p in lm.probs.items():
        if key[0] == "b":
            entry = {"t": f"({key[1]}, {key[2]})", "type": "bigram", "p": p}
        else:
            entry = {"t": key[1], "type": "unigram", "p": p}
        terms.append(entry)
    terms.sort(key=lambda d: (-d["p"], d["t"]))
    return {"kind": lm.kind, "terms": terms}
