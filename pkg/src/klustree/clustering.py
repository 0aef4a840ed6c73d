"""Tree distances, complete-link clustering, CH model selection, ranking.

Distances between trees are Jensen-Shannon divergences of their language
models (base-2 logs, so everything lives in [0, 1]), combined across the
entity and relationship sides by a gamma weight.  Cluster counts are chosen
by the pairwise-divergence form of the Calinski-Harabasz index over the
complete-link dendrogram's cuts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

import numpy as np

from .errors import ContractError, DegenerateInputError
from .language_models import LanguageModel, TreeLM


def js_divergence(p: LanguageModel, q: LanguageModel) -> float:
    """Jensen-Shannon divergence with base-2 logarithms over the union of
    supports; symmetric, zero exactly on equal distributions, at most 1.

    Uses exact float summation so the result does not depend on term order.
    """
    if p.kind != q.kind:
        raise ContractError(f"cannot compare a {p.kind} model with a {q.kind} model")
    pp, qq = p.probs, q.probs
    pieces = []
    for term in pp.keys() | qq.keys():
        a = pp.get(term, 0.0)
        b = qq.get(term, 0.0)
        m = 0.5 * (a + b)
        if a > 0.0:
            pieces.append(0.5 * a * math.log2(a / m))
        if b > 0.0:
            pieces.append(0.5 * b * math.log2(b / m))
    return max(math.fsum(pieces), 0.0)


def tree_distance(a: TreeLM, b: TreeLM, gamma: float) -> float:
    """``gamma * JS_entity + (1 - gamma) * JS_relationship``.  When either
    tree has no relationship model (edgeless tree), the entity divergence is
    used alone."""
    js_e = js_divergence(a.entity_lm, b.entity_lm)
    if a.relationship_lm is None or b.relationship_lm is None:
        return js_e
    js_r = js_divergence(a.relationship_lm, b.relationship_lm)
    return gamma * js_e + (1.0 - gamma) * js_r


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Symmetric nonnegative divergence table with a zero diagonal."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", v)
        if v.ndim != 2 or v.shape[0] != v.shape[1] or v.shape[0] == 0:
            raise ContractError("distance matrix must be square and non-empty")
        if not np.allclose(v, v.T, atol=1e-9):
            raise ContractError("distance matrix must be symmetric")
        if np.any(np.diag(v) != 0.0):
            raise ContractError("distance matrix diagonal must be zero")
        if float(v.min()) < 0.0 or float(v.max()) > 1.0 + 1e-9:
            raise ContractError("distance matrix entries must lie in [0, 1]")

    @property
    def n(self) -> int:
        return self.values.shape[0]


def build_distance_matrix(tree_lms: Sequence[TreeLM], gamma: float) -> DistanceMatrix:
    """Pairwise tree distances; permuting the input permutes rows/columns."""
    n = len(tree_lms)
    if n < 1:
        raise DegenerateInputError("need at least one tree")
    values = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            d = tree_distance(tree_lms[i], tree_lms[j], gamma)
            values[i, j] = values[j, i] = d
    return DistanceMatrix(values)


@dataclass(frozen=True)
class Dendrogram:
    """Complete-link merge history: ``n - 1`` merges of explicit member
    tuples at non-decreasing heights."""

    n: int
    merges: tuple[tuple[tuple[int, ...], tuple[int, ...], float], ...]

    def heights(self) -> list[float]:
        return [h for _, _, h in self.merges]

    def cut(self, k: int) -> list[tuple[int, ...]]:
        """The ``k``-cluster partition: the state after the first ``n - k``
        merges, ordered by smallest member."""
        if not 1 <= k <= self.n:
            raise ContractError(f"cut wants 1 <= k <= {self.n}, got {k}")
        clusters = {(i,) for i in range(self.n)}
        for left, right, _ in self.merges[: self.n - k]:
            clusters.remove(left)
            clusters.remove(right)
            clusters.add(tuple(sorted(left + right)))
        return sorted(clusters, key=lambda c: c[0])


def complete_link_dendrogram(m: DistanceMatrix) -> Dendrogram:
    """Agglomerative complete-link merges.

    Each step merges the pair of live clusters with the smallest maximum
    pairwise member distance; ties pick the pair whose (smaller, larger)
    min-member ids are lexicographically smallest, so runs are reproducible.
    """
    n = m.n
    if n < 2:
        raise DegenerateInputError("clustering needs at least 2 items")
    link = m.values.astype(float).copy()
    alive = [True] * n
    members: list[tuple[int, ...]] = [(i,) for i in range(n)]
    merges = []
    for _ in range(n - 1):
        best_key = None
        best_pair = (-1, -1)
        for ia in range(n):
            if not alive[ia]:
                continue
            for ib in range(ia + 1, n):
                if not alive[ib]:
                    continue
                lo, hi = members[ia][0], members[ib][0]
                if lo > hi:
                    lo, hi = hi, lo
                key = (link[ia, ib], lo, hi)
                if best_key is None or key < best_key:
                    best_key = key
                    best_pair = (ia, ib)
        ia, ib = best_pair
        left, right = members[ia], members[ib]
        if left[0] > right[0]:
            left, right = right, left
        merges.append((left, right, float(best_key[0])))
        members[ia] = tuple(sorted(left + right))
        alive[ib] = False
        link[ia, :] = np.maximum(link[ia, :], link[ib, :])
        link[:, ia] = link[ia, :]
        link[ia, ia] = 0.0
    return Dendrogram(n=n, merges=tuple(merges))


@dataclass(frozen=True)
class Clustering:
    """A partition of tree indices into ``k`` contiguous cluster ids, with
    the CH value of the cut when one was computed."""

    k: int
    assignment: tuple[int, ...]
    ch_value: float | None

    def __post_init__(self):
        if self.k < 1 or not self.assignment:
            raise ContractError("clustering needs k >= 1 and a non-empty assignment")
        seen = set(self.assignment)
        if seen != set(range(self.k)):
            raise ContractError("cluster ids must be contiguous 0..k-1 and non-empty")

    @property
    def n(self) -> int:
        return len(self.assignment)

    def clusters(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.k)]
        for idx, cid in enumerate(self.assignment):
            out[cid].append(idx)
        return out


def clustering_from_partition(partition: Sequence[Sequence[int]], n: int,
                              ch_value: float | None = None) -> Clustering:
    """Assign contiguous ids to a partition, ordered by smallest member."""
    parts = sorted((sorted(p) for p in partition), key=lambda p: p[0])
    assignment = [-1] * n
    for cid, part in enumerate(parts):
        for idx in part:
            assignment[idx] = cid
    if any(cid < 0 for cid in assignment):
        raise ContractError("partition does not cover all items")
    return Clustering(k=len(parts), assignment=tuple(assignment), ch_value=ch_value)


def ch_index(m: DistanceMatrix, c: Clustering) -> float:
    """Calinski-Harabasz index in its pairwise-divergence form.

    ``W`` is half the summed within-cluster divergences, ``B`` half the
    summed cross-cluster divergences, and ``CH = (N-K) * B / ((K-1) * W)``.
    Requires ``2 <= K <= N-1``; returns ``+inf`` when W is zero (all clusters
    internally identical).
    """
    n = m.n
    if c.n != n:
        raise ContractError("clustering and matrix sizes differ")
    k = c.k
    if not 2 <= k <= n - 1:
        raise ContractError(f"CH index needs 2 <= K <= N-1, got K={k}, N={n}")
    labels = np.asarray(c.assignment)
    same = labels[:, None] == labels[None, :]
    w = float(m.values[same].sum()) / 2.0
    b = float(m.values[~same].sum()) / 2.0
    if w == 0.0:
        return math.inf
    return (n - k) * b / ((k - 1) * w)


def select_clustering(m: DistanceMatrix, k_min: int = 2, k_max: int = 15) -> Clustering:
    """Cut the complete-link dendrogram at each feasible K and keep the cut
    with the highest CH value (ties go to the smallest K).

    The feasible range is ``[max(2, k_min), min(k_max, n-1)]``; a request
    entirely above it falls back to the finest feasible cut.  Two degenerate
    cases bypass CH: an all-zero matrix yields a single cluster, and n = 2
    yields the only possible 2-cluster split (CH is undefined for both).
    """
    n = m.n
    if n < 2:
        raise DegenerateInputError("clustering needs at least 2 items")
    if not np.any(m.values > 0.0):
        return Clustering(k=1, assignment=(0,) * n, ch_value=None)
    if n == 2:
        return Clustering(k=2, assignment=(0, 1), ch_value=None)
    dendrogram = complete_link_dendrogram(m)
    lo, hi = max(2, k_min), min(k_max, n - 1)
    if lo > hi:
        lo = hi = n - 1
    best: Clustering | None = None
    for k in range(lo, hi + 1):
        candidate = clustering_from_partition(dendrogram.cut(k), n)
        ch = ch_index(m, candidate)
        if best is None or ch > best.ch_value:
            best = Clustering(k=candidate.k, assignment=candidate.assignment, ch_value=ch)
    return best


class Heuristic(Enum):
    """Cluster-ranking heuristics driven by the member trees' search ranks
    (and, for LARGEST_SIZE, their node counts)."""

    BEST = "best"
    WORST = "worst"
    AVERAGE = "avg"
    LARGEST_SIZE = "size"


@dataclass(frozen=True)
class ClusterRanking:
    """An ordering of cluster ids plus, per cluster, the member tree with
    the best (smallest) search rank."""

    heuristic: Heuristic
    order: tuple[int, ...]
    representatives: tuple[int, ...]


def rank_clusters(
    c: Clustering,
    tree_ranks: Sequence[int],
    tree_sizes: Sequence[int],
    heuristic: Heuristic,
) -> ClusterRanking:
    """Order clusters by the chosen heuristic.

    BEST / WORST / AVERAGE sort ascending by the min / max / mean member
    rank.  LARGEST_SIZE sorts ascending by the largest member node count, so
    the cluster holding the biggest tree lands last.  Ties break by cluster
    id; representatives are always the min-rank member.
    """
    if len(tree_ranks) != c.n or len(tree_sizes) != c.n:
        raise ContractError("ranks/sizes must cover every tree")
    if any(r <= 0 for r in tree_ranks) or len(set(tree_ranks)) != c.n:
        raise ContractError("tree ranks must be distinct positive integers")
    members = c.clusters()

    def key(cid: int) -> float:
        ranks = [tree_ranks[i] for i in members[cid]]
        if heuristic is Heuristic.BEST:
            return min(ranks)
        if heuristic is Heuristic.WORST:
            return max(ranks)
        if heuristic is Heuristic.AVERAGE:
            return sum(ranks) / len(ranks)
        return max(tree_sizes[i] for i in members[cid])

    order = tuple(sorted(range(c.k), key=lambda cid: (key(cid), cid)))
    representatives = tuple(
        min(members[cid], key=lambda i: tree_ranks[i]) for cid in range(c.k)
    )
    return ClusterRanking(heuristic=heuristic, order=order, representatives=representatives)


def clustering_document(
    c: Clustering,
    ranking: ClusterRanking,
    trees_json: Sequence[Mapping],
    method: str | None = None,
) -> dict:
    """The clustering JSON: clusters in ranked order, each with its id, its
    1-based rank position, its representative tree, and its member ids."""
    members = c.clusters()
    clusters = []
    for position, cid in enumerate(ranking.order, start=1):
        clusters.append(
            {
                "id": cid,
                "rank_position": position,
                "representative": dict(trees_json[ranking.representatives[cid]]),
                "trees": list(members[cid]),
            }
        )
    doc = {"k": c.k, "ch": c.ch_value, "clusters": clusters}
    if method is not None:
        doc["method"] = method
    return doc
