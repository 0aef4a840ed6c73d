"""In-memory store for directed labeled triple graphs.

Parses TSV triple files, deduplicates, and indexes adjacency plus the
per-label and per-pair occurrence counts that language-model estimation
later draws its background statistics from.  A :class:`Graph` is immutable
once built, so every read operation here is safe for concurrent use.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import BinaryIO, Iterable, Union

from .errors import EmptyGraphError, GraphParseError, NotFoundError


class TermKind(Enum):
    """Vocabulary term flavours: a single node label, or an ordered pair."""

    UNIGRAM = "unigram"
    BIGRAM = "bigram"


@dataclass(frozen=True)
class Term:
    """A typed term.  Kind participates in identity, so a unigram never
    equals a bigram even when their rendered text would collide."""

    kind: TermKind
    parts: tuple[str, ...]

    def __post_init__(self):
        arity = 1 if self.kind is TermKind.UNIGRAM else 2
        if len(self.parts) != arity:
            raise ValueError(
                f"{self.kind.value} term takes {arity} part(s), got {len(self.parts)}"
            )


def unigram(label: str) -> Term:
    return Term(TermKind.UNIGRAM, (label,))


def bigram(first: str, second: str) -> Term:
    return Term(TermKind.BIGRAM, (first, second))


@dataclass(frozen=True)
class Triple:
    """One directed labeled edge.  Labels are trimmed of outer whitespace and
    must be non-empty; two triples with equal fields are the same triple."""

    subject: str
    predicate: str
    object: str

    def __post_init__(self):
        for name in ("subject", "predicate", "object"):
            value = getattr(self, name).strip()
            if not value:
                raise ValueError(f"triple {name} is empty")
            object.__setattr__(self, name, value)

    def as_tuple(self) -> tuple[str, str, str]:
        return (self.subject, self.predicate, self.object)


class Graph:
    """A deduplicated, fully indexed triple graph.

    Node labels are exact post-trim text; every node appears in at least one
    triple.  Unigram counts tally subject plus object occurrences per label;
    bigram counts tally, per ordered pair, its occurrences in each of the
    three defining projections (predicate-object, subject-predicate,
    subject-object), one per triple.
    """

    __slots__ = (
        "triples",
        "nodes",
        "_out",
        "_in",
        "_by_predicate",
        "_unigram_counts",
        "_bigram_counts",
        "_triple_set",
    )

    def __init__(self, triples: Iterable[Triple]):
        unique = sorted(set(triples), key=Triple.as_tuple)
        if not unique:
            raise EmptyGraphError("graph has no triples")
        self.triples: tuple[Triple, ...] = tuple(unique)
        self._triple_set = frozenset(unique)
        out: dict[str, list[Triple]] = {}
        inc: dict[str, list[Triple]] = {}
        byp: dict[str, list[Triple]] = {}
        ucounts: Counter[str] = Counter()
        bcounts: Counter[tuple[str, str]] = Counter()
        for t in unique:
            out.setdefault(t.subject, []).append(t)
            inc.setdefault(t.object, []).append(t)
            byp.setdefault(t.predicate, []).append(t)
            ucounts[t.subject] += 1
            ucounts[t.object] += 1
            bcounts[(t.predicate, t.object)] += 1
            bcounts[(t.subject, t.predicate)] += 1
            bcounts[(t.subject, t.object)] += 1
        self.nodes: frozenset[str] = frozenset(ucounts)
        self._out = {k: tuple(v) for k, v in out.items()}
        self._in = {k: tuple(v) for k, v in inc.items()}
        self._by_predicate = {k: tuple(v) for k, v in byp.items()}
        self._unigram_counts = ucounts
        self._bigram_counts = bcounts

    @property
    def predicates(self) -> frozenset[str]:
        return frozenset(self._by_predicate)

    def out_edges(self, node: str) -> tuple[Triple, ...]:
        return self._out.get(node, ())

    def in_edges(self, node: str) -> tuple[Triple, ...]:
        return self._in.get(node, ())

    def __contains__(self, triple: Triple) -> bool:
        return triple in self._triple_set

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._triple_set == other._triple_set

    def __hash__(self) -> int:
        return hash(self._triple_set)

    def __repr__(self) -> str:
        return f"Graph({len(self.triples)} triples, {len(self.nodes)} nodes)"


def load_graph(source: Union[bytes, str, BinaryIO]) -> Graph:
    """Parse UTF-8 TSV lines ``subject\\tpredicate\\tobject[\\tweight]``.

    Blank lines and ``#``-prefixed comment lines are skipped.  The optional
    fourth column (an edge weight) is accepted but ignored.  Line order never
    affects the result.

    Raises :class:`GraphParseError` for a malformed line (naming its 1-based
    line number) and :class:`EmptyGraphError` when no triples remain.
    """
    if isinstance(source, bytes):
        data = source
    elif isinstance(source, str):
        data = source.encode("utf-8")
    else:
        data = source.read()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise GraphParseError(0, f"input is not valid UTF-8: {exc}") from exc

    triples: list[Triple] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        fields = raw.split("\t")
        if len(fields) not in (3, 4):
            raise GraphParseError(
                line_no, f"expected 3 tab-separated fields, got {len(fields)}"
            )
        s, p, o = (f.strip() for f in fields[:3])
        if not (s and p and o):
            raise GraphParseError(line_no, "empty label")
        triples.append(Triple(s, p, o))
    if not triples:
        raise EmptyGraphError("no triples in input")
    return Graph(triples)


def load_graph_path(path) -> Graph:
    """Load a graph from a TSV file on disk."""
    with open(path, "rb") as fh:
        return load_graph(fh)


def entity_document(g: Graph, e: str) -> frozenset[Triple]:
    """All triples in which ``e`` occurs as subject or object."""
    if e not in g.nodes:
        raise NotFoundError("entity", e)
    return frozenset(g.out_edges(e)) | frozenset(g.in_edges(e))


def entity_terms(g: Graph, e: str) -> tuple[Counter, Counter]:
    """Unigram and bigram multisets of an entity's document.

    Unigrams are the objects of triples where ``e`` is subject plus the
    subjects of triples where ``e`` is object.  Bigrams are the matching
    (predicate, object) and (subject, predicate) pairs.  Multiplicities are
    preserved: one unigram and one bigram per document triple.
    """
    if e not in g.nodes:
        raise NotFoundError("entity", e)
    uni: Counter[str] = Counter()
    bi: Counter[tuple[str, str]] = Counter()
    for t in g.out_edges(e):
        uni[t.object] += 1
        bi[(t.predicate, t.object)] += 1
    for t in g.in_edges(e):
        uni[t.subject] += 1
        bi[(t.subject, t.predicate)] += 1
    return uni, bi


def relationship_document(g: Graph, r: str) -> frozenset[Triple]:
    """All triples carrying predicate ``r``."""
    if r not in g._by_predicate:
        raise NotFoundError("predicate", r)
    return frozenset(g._by_predicate[r])


def relationship_terms(g: Graph, r: str) -> tuple[Counter, Counter, Counter]:
    """Subject-unigram, object-unigram, and (subject, object) bigram
    multisets of a relationship's document."""
    if r not in g._by_predicate:
        raise NotFoundError("predicate", r)
    subj: Counter[str] = Counter()
    obj: Counter[str] = Counter()
    bi: Counter[tuple[str, str]] = Counter()
    for t in g._by_predicate[r]:
        subj[t.subject] += 1
        obj[t.object] += 1
        bi[(t.subject, t.object)] += 1
    return subj, obj, bi


def corpus_count(g: Graph, term: Term) -> int:
    """Occurrences of a term across the whole graph; 0 when absent.

    For a unigram this is the label's subject plus object occurrences.  For a
    bigram it is the count of the ordered pair in its defining projections.
    """
    if term.kind is TermKind.UNIGRAM:
        return g._unigram_counts.get(term.parts[0], 0)
    return g._bigram_counts.get((term.parts[0], term.parts[1]), 0)
