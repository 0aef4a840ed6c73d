"""Loading a triple graph and reading entity/relationship documents.

Every node and predicate in the graph gets a "pseudo-document": the set of
triples it occurs in.  Documents decompose into typed terms (unigrams and
bigrams) whose in-document and whole-graph counts drive all later language
model estimation.  Run from the repository root:

    python demos/01_graph_and_documents.py
"""

from pathlib import Path

from klustree import (
    bigram,
    corpus_count,
    entity_document,
    entity_terms,
    load_graph_path,
    relationship_document,
    relationship_terms,
    unigram,
)

graph = load_graph_path(Path(__file__).parent.parent / "data" / "mini_imdb.tsv")
print(f"Loaded {graph!r}")
print(f"nodes: {sorted(graph.nodes)}")
print(f"predicates: {sorted(graph.predicates)}")

print("\n--- Document of entity 'CorpseBride' (all triples it occurs in) ---")
for t in sorted(entity_document(graph, "CorpseBride"), key=lambda t: t.as_tuple()):
    print(f"  {t.subject}  --{t.predicate}-->  {t.object}")

uni, bi = entity_terms(graph, "CorpseBride")
print("\nunigrams (neighboring node labels):", dict(uni))
print("bigrams (predicate/label pairs):   ", dict(bi))

print("\n--- Document of relationship 'ActedIn' ---")
for t in sorted(relationship_document(graph, "ActedIn"), key=lambda t: t.as_tuple()):
    print(f"  {t.subject}  --{t.predicate}-->  {t.object}")

subj, obj, pairs = relationship_terms(graph, "ActedIn")
print("\nsubject unigrams:", dict(subj))
print("object unigrams: ", dict(obj))
print("bigrams:         ", dict(pairs))

print("\n--- Corpus counts (background statistics for smoothing) ---")
for label in sorted(graph.nodes):
    print(f"  c({label}) = {corpus_count(graph, unigram(label))}")
print(f"  c((DirectedBy, TimBurton)) = {corpus_count(graph, bigram('DirectedBy', 'TimBurton'))}")
total = sum(corpus_count(graph, unigram(n)) for n in graph.nodes)
print(f"\nsum of node counts = {total} = 2 x {len(graph.triples)} triples")
