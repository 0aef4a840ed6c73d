"""Comparison clusterers: structure-only isomorphism and tree edit distance.

The isomorphism baseline groups trees purely by the shape of their rooted
unordered structure (labels and edge orientation ignored).  The edit-distance
baseline scores labeled similarity via ordered tree edit distance on a
canonicalized child order, turns the similarity matrix into column-similarity
distances, and reuses the complete-link + CH machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .clustering import Clustering, DistanceMatrix, select_clustering
from .errors import ContractError, DegenerateInputError
from .keyword_search import AnswerTree


def _label_adjacency(t: AnswerTree) -> dict[str, list[tuple[str, str]]]:
    adj: dict[str, list[tuple[str, str]]] = {n: [] for n in t.nodes}
    for e in t.edges:
        adj[e.subject].append((e.object, e.predicate))
        adj[e.object].append((e.subject, e.predicate))
    return adj


def canonical_form(t: AnswerTree) -> str:
    """Canonical encoding of the unlabeled rooted unordered tree under
    ``t.root``: children encodings sorted before concatenation, so two trees
    share a form exactly when their rooted shapes are isomorphic."""
    adj = _label_adjacency(t)

    def encode(node: str, parent: str | None) -> str:
        codes = sorted(encode(c, node) for c, _ in adj[node] if c != parent)
        return "(" + "".join(codes) + ")"

    return encode(t.root, None)


def isomorphism_clusters(trees: Sequence[AnswerTree]) -> Clustering:
    """Partition by equal canonical form; cluster ids follow first
    occurrence in the input order."""
    if not trees:
        raise DegenerateInputError("need at least one tree")
    forms: dict[str, int] = {}
    assignment = []
    for t in trees:
        form = canonical_form(t)
        assignment.append(forms.setdefault(form, len(forms)))
    return Clustering(k=len(forms), assignment=tuple(assignment), ch_value=None)


def _folded_tree(t: AnswerTree):
    """Rooted ordered form for edit distance: each node's label is the
    (incoming predicate, node label) pair, and children are sorted by their
    recursive (label, subtree) order."""
    adj = _label_adjacency(t)

    def build(node: str, parent: str | None, pred_in: str):
        children = [build(c, node, pred) for c, pred in adj[node] if c != parent]
        children.sort()
        return ((pred_in, node), tuple(children))

    return build(t.root, None, "")


def _annotate(root):
    """Postorder labels, leftmost-leaf-descendant indexes, and keyroots."""
    labels: list = []
    lmds: list[int] = []

    def walk(node) -> int:
        label, children = node
        first_lmd = None
        for child in children:
            child_lmd = walk(child)
            if first_lmd is None:
                first_lmd = child_lmd
        index = len(labels)
        lmd = index if first_lmd is None else first_lmd
        labels.append(label)
        lmds.append(lmd)
        return lmd

    walk(root)
    last_for_lmd: dict[int, int] = {}
    for i, lmd in enumerate(lmds):
        last_for_lmd[lmd] = i
    keyroots = sorted(last_for_lmd.values())
    return labels, lmds, keyroots


def ordered_tree_edit_distance(a, b) -> int:
    """Minimum number of unit-cost node relabels, deletions, and insertions
    between two ordered trees given as nested ``(label, children)`` tuples
    (Zhang-Shasha keyroot dynamic program)."""
    la, lmda, kra = _annotate(a)
    lb, lmdb, krb = _annotate(b)
    na, nb = len(la), len(lb)
    td = np.zeros((na, nb), dtype=int)

    for i in kra:
        for j in krb:
            m = i - lmda[i] + 2
            n = j - lmdb[j] + 2
            fd = np.zeros((m, n), dtype=int)
            ioff = lmda[i] - 1
            joff = lmdb[j] - 1
            for x in range(1, m):
                fd[x, 0] = fd[x - 1, 0] + 1
            for y in range(1, n):
                fd[0, y] = fd[0, y - 1] + 1
            for x in range(1, m):
                for y in range(1, n):
                    if lmda[i] == lmda[x + ioff] and lmdb[j] == lmdb[y + joff]:
                        cost = 0 if la[x + ioff] == lb[y + joff] else 1
                        fd[x, y] = min(
                            fd[x - 1, y] + 1,
                            fd[x, y - 1] + 1,
                            fd[x - 1, y - 1] + cost,
                        )
                        td[x + ioff, y + joff] = fd[x, y]
                    else:
                        p = lmda[x + ioff] - 1 - ioff
                        q = lmdb[y + joff] - 1 - joff
                        fd[x, y] = min(
                            fd[x - 1, y] + 1,
                            fd[x, y - 1] + 1,
                            fd[p, q] + td[x + ioff, y + joff],
                        )
    return int(td[na - 1, nb - 1])


def tree_edit_distance(t1: AnswerTree, t2: AnswerTree) -> int:
    """Edit distance between two answer trees on their canonicalized ordered
    forms, with each edge label folded into its child node's label."""
    return ordered_tree_edit_distance(_folded_tree(t1), _folded_tree(t2))


def edit_similarity(t1: AnswerTree, t2: AnswerTree) -> float:
    """``1 - TED / (nodes(t1) + nodes(t2))``; 1 on identical trees."""
    ted = tree_edit_distance(t1, t2)
    return 1.0 - ted / (len(t1.nodes) + len(t2.nodes))


@dataclass(frozen=True, eq=False)
class SimilarityMatrix:
    """Pairwise edit similarities: symmetric, unit diagonal, values in [0, 1]."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", v)
        if v.ndim != 2 or v.shape[0] != v.shape[1] or v.shape[0] == 0:
            raise ContractError("similarity matrix must be square and non-empty")
        if not np.allclose(v, v.T, atol=1e-9):
            raise ContractError("similarity matrix must be symmetric")
        if np.any(np.diag(v) != 1.0):
            raise ContractError("similarity matrix diagonal must be one")
        if float(v.min()) < 0.0 or float(v.max()) > 1.0 + 1e-9:
            raise ContractError("similarity entries must lie in [0, 1]")

    @property
    def n(self) -> int:
        return self.values.shape[0]


def similarity_matrix(trees: Sequence[AnswerTree]) -> SimilarityMatrix:
    n = len(trees)
    if n < 1:
        raise DegenerateInputError("need at least one tree")
    values = np.ones((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            es = edit_similarity(trees[i], trees[j])
            values[i, j] = values[j, i] = es
    return SimilarityMatrix(values)


def column_similarity(m: SimilarityMatrix, i: int, j: int) -> float:
    """One minus the mean absolute difference between columns ``i`` and
    ``j`` of the similarity matrix."""
    if not (0 <= i < m.n and 0 <= j < m.n):
        raise ContractError("column index out of range")
    return 1.0 - float(np.abs(m.values[:, i] - m.values[:, j]).sum()) / m.n


def ted_distance_matrix(trees: Sequence[AnswerTree]) -> DistanceMatrix:
    """Column-similarity distances ``1 - cs(i, j)`` over the edit-similarity
    matrix."""
    sim = similarity_matrix(trees)
    n = sim.n
    values = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            d = 1.0 - column_similarity(sim, i, j)
            values[i, j] = values[j, i] = d
    return DistanceMatrix(values)


def ted_clusters(trees: Sequence[AnswerTree], k_min: int = 2, k_max: int = 15) -> Clustering:
    """Complete-link + CH selection over the column-similarity distances."""
    return select_clustering(ted_distance_matrix(trees), k_min, k_max)
