"""Keyword queries and enumeration of minimal answer trees.

An answer tree connects at least one matching node per query keyword and is
minimal: pruning any leaf breaks keyword coverage.  Triples are traversed in
both directions; each stored edge keeps its original orientation.  The
enumeration here is deliberately replaceable plumbing: anything that produces
ranked trees (including the JSON interchange format below) can feed the
downstream modeling and clustering.
"""

from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import ContractError, UnmatchedKeywordError
from .graph_store import Graph, Triple

_FIELD_SEP = "\x1f"
_EDGE_SEP = "\x1e"


@dataclass(frozen=True)
class KeywordQuery:
    """An ordered list of at least two keywords, unique after case-folding."""

    keywords: tuple[str, ...]

    def __post_init__(self):
        kws = tuple(self.keywords)
        object.__setattr__(self, "keywords", kws)
        if len(kws) < 2:
            raise ContractError("a keyword query needs at least 2 keywords")
        folded = [k.strip().lower() for k in kws]
        if any(not k for k in folded):
            raise ContractError("keywords must be non-empty")
        if len(set(folded)) != len(folded):
            raise ContractError("duplicate keywords after case-folding")

    @classmethod
    def of(cls, *keywords: str) -> "KeywordQuery":
        return cls(tuple(keywords))


@dataclass(frozen=True)
class AnswerTree:
    """A minimal rooted tree over graph nodes and edges, with its search rank.

    ``edges`` keep their stored orientation; the tree structure itself is
    undirected and ``root`` is a canonically chosen node from which every
    other node is reachable.
    """

    root: str
    edges: frozenset[Triple]
    rank: int
    score: int

    @cached_property
    def nodes(self) -> frozenset[str]:
        labels = {self.root}
        for t in self.edges:
            labels.add(t.subject)
            labels.add(t.object)
        return frozenset(labels)

    @property
    def size(self) -> int:
        return len(self.nodes)


def canonical_serialization(edges: Iterable[Triple], root: str) -> str:
    """Stable text form of a tree's edge set (plus the node for edgeless
    trees); equal serializations mean equal answers."""
    lines = sorted(_FIELD_SEP.join(t.as_tuple()) for t in edges)
    if not lines:
        return "@" + root
    return _EDGE_SEP.join(lines)


def match_keyword(g: Graph, k: str) -> set[str]:
    """Node labels containing ``k`` as a case-insensitive substring."""
    if not k:
        raise ContractError("keyword must be non-empty")
    needle = k.lower()
    return {n for n in g.nodes if needle in n.lower()}


def _undirected_adjacency(triples: Iterable[Triple]) -> dict[str, tuple]:
    adj: dict[str, list[tuple[str, Triple]]] = {}
    for t in triples:
        adj.setdefault(t.subject, []).append((t.object, t))
        adj.setdefault(t.object, []).append((t.subject, t))
    return {n: tuple(sorted(nbrs, key=lambda p: (p[0], p[1].as_tuple()))) for n, nbrs in adj.items()}


def _paths_to_matches(adj, start: str, targets: set[str], max_edges: int):
    """All node-simple undirected paths (as edge tuples) from ``start`` to any
    target, up to ``max_edges`` edges.  A path ending on one target may be the
    prefix of another ending on a farther target; both are reported."""
    found: list[tuple[Triple, ...]] = []
    path_edges: list[Triple] = []
    visited = {start}

    def dfs(node: str):
        if node in targets:
            found.append(tuple(path_edges))
        if len(path_edges) == max_edges:
            return
        for nbr, t in adj.get(node, ()):
            if nbr in visited:
                continue
            visited.add(nbr)
            path_edges.append(t)
            dfs(nbr)
            path_edges.pop()
            visited.remove(nbr)

    dfs(start)
    return found


def _covers(node_labels: Iterable[str], keywords: Sequence[str]) -> bool:
    lowered = [n.lower() for n in node_labels]
    return all(any(k.lower() in n for n in lowered) for k in keywords)


def _is_minimal_edges(edges: frozenset[Triple], nodes: frozenset[str], keywords) -> bool:
    if len(nodes) <= 1:
        return True
    degree: Counter[str] = Counter()
    for t in edges:
        degree[t.subject] += 1
        degree[t.object] += 1
    for leaf in nodes:
        if degree[leaf] != 1:
            continue
        if _covers(nodes - {leaf}, keywords):
            return False
    return True


def is_minimal(g: Graph, t: AnswerTree, q: KeywordQuery) -> bool:
    """True iff no leaf of ``t`` can be pruned with all keywords still
    covered.  Checking single-leaf removals is sufficient: any covering
    proper subtree leaves some prunable leaf behind."""
    return _is_minimal_edges(t.edges, t.nodes, q.keywords)


def _centers(adj: dict[str, list[str]]) -> list[str]:
    # iterative leaf peeling; 1 or 2 nodes remain
    degree = {n: len(nbrs) for n, nbrs in adj.items()}
    remaining = set(adj)
    layer = sorted(n for n, d in degree.items() if d <= 1)
    while len(remaining) > 2:
        next_layer = []
        for leaf in layer:
            remaining.discard(leaf)
            for nbr in adj[leaf]:
                if nbr in remaining:
                    degree[nbr] -= 1
                    if degree[nbr] == 1:
                        next_layer.append(nbr)
        layer = sorted(next_layer)
    return sorted(remaining)


def _shape_code(adj: dict[str, list[str]], node: str, parent: str | None) -> str:
    child_codes = sorted(
        _shape_code(adj, c, node) for c in adj[node] if c != parent
    )
    return "(" + "".join(child_codes) + ")"


def _canonical_root(edges: frozenset[Triple], lone_node: str) -> str:
    """Label-independent root: a tree center, disambiguated between the two
    possible centers by comparing their rooted shape encodings (equal
    encodings mean either choice yields the same rooted shape)."""
    if not edges:
        return lone_node
    adj: dict[str, list[str]] = {}
    for t in edges:
        adj.setdefault(t.subject, []).append(t.object)
        adj.setdefault(t.object, []).append(t.subject)
    centers = _centers(adj)
    return min(centers, key=lambda c: (_shape_code(adj, c, None), c))


def enumerate_answer_trees(
    g: Graph, q: KeywordQuery, limit: int, *, max_path_edges: int = 4
) -> list[AnswerTree]:
    """Up to ``limit`` distinct minimal answer trees, ranked by edge count
    ascending with ties broken by canonical serialization.

    Candidates are built by joining, at every connector node, one simple path
    per keyword to some matching node (paths capped at ``max_path_edges``
    edges); unions that are not trees are dropped, non-minimal candidates are
    pruned, and duplicates collapse through their canonical serialization.
    Output is deterministic and ``enumerate(limit=a)`` is always a prefix of
    ``enumerate(limit=b)`` for a <= b.  Intended for desk-scale graphs: the
    path join is exponential in the worst case.
    """
    if limit < 1:
        raise ContractError("limit must be >= 1")
    match_sets = []
    for k in q.keywords:
        m = match_keyword(g, k)
        if not m:
            raise UnmatchedKeywordError(k)
        match_sets.append(m)

    adj = _undirected_adjacency(g.triples)
    accepted: dict[str, tuple[frozenset[Triple], str]] = {}
    seen: set[str] = set()
    for start in sorted(g.nodes):
        per_keyword = []
        for matches in match_sets:
            paths = _paths_to_matches(adj, start, matches, max_path_edges)
            if not paths:
                per_keyword = None
                break
            per_keyword.append(paths)
        if per_keyword is None:
            continue
        for combo in itertools.product(*per_keyword):
            edges = set(itertools.chain.from_iterable(combo))
            nodes = {start}
            for t in edges:
                nodes.add(t.subject)
                nodes.add(t.object)
            if len(edges) != len(nodes) - 1:
                continue  # the path union closed a cycle
            frozen = frozenset(edges)
            canon = canonical_serialization(frozen, start)
            if canon in seen:
                continue
            seen.add(canon)
            if not _is_minimal_edges(frozen, frozenset(nodes), q.keywords):
                continue
            accepted[canon] = (frozen, start)

    ordered = sorted(accepted.items(), key=lambda kv: (len(kv[1][0]), kv[0]))
    trees = []
    for rank, (canon, (edges, seed_node)) in enumerate(ordered[:limit], start=1):
        root = _canonical_root(edges, seed_node)
        trees.append(AnswerTree(root=root, edges=edges, rank=rank, score=len(edges)))
    return trees


def validate_answer_tree(g: Graph, t: AnswerTree, q: KeywordQuery | None = None) -> None:
    """Raise ``ValueError`` unless ``t`` is a well-formed answer tree over
    ``g`` (and covers ``q`` when given)."""
    for edge in t.edges:
        if edge not in g:
            raise ValueError(f"edge not in graph: {edge}")
    if t.root not in t.nodes:
        raise ValueError("root is not a node of the tree")
    if t.root not in g.nodes and t.edges:
        raise ValueError("root is not a graph node")
    if len(t.edges) != len(t.nodes) - 1:
        raise ValueError("edge count does not match a tree")
    if t.edges:
        adj: dict[str, list[str]] = {}
        for e in t.edges:
            adj.setdefault(e.subject, []).append(e.object)
            adj.setdefault(e.object, []).append(e.subject)
        reached = {t.root}
        queue = deque([t.root])
        while queue:
            node = queue.popleft()
            for nbr in adj.get(node, ()):
                if nbr not in reached:
                    reached.add(nbr)
                    queue.append(nbr)
        if reached != set(t.nodes):
            raise ValueError("tree is not connected")
    if q is not None and not _covers(t.nodes, q.keywords):
        raise ValueError("tree does not cover every keyword")


def tree_to_json(t: AnswerTree) -> dict:
    return {
        "rank": t.rank,
        "score": t.score,
        "root": t.root,
        "edges": [
            {"s": e.subject, "p": e.predicate, "o": e.object}
            for e in sorted(t.edges, key=Triple.as_tuple)
        ],
    }


def trees_to_json(q: KeywordQuery, trees: Sequence[AnswerTree]) -> dict:
    return {"query": list(q.keywords), "trees": [tree_to_json(t) for t in trees]}


def tree_from_json(doc: dict) -> AnswerTree:
    edges = frozenset(Triple(e["s"], e["p"], e["o"]) for e in doc["edges"])
    return AnswerTree(
        root=doc["root"], edges=edges, rank=int(doc["rank"]), score=int(doc["score"])
    )


def trees_from_json(doc: dict, graph: Graph | None = None) -> tuple[KeywordQuery, list[AnswerTree]]:
    """Parse externally supplied answer trees; validated against ``graph``
    when one is given."""
    q = KeywordQuery(tuple(doc["query"]))
    trees = [tree_from_json(td) for td in doc["trees"]]
    if graph is not None:
        for t in trees:
            validate_answer_tree(graph, t, q)
    return q, trees
