import io
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from klustree import (
    EmptyGraphError,
    Graph,
    GraphParseError,
    NotFoundError,
    Triple,
    bigram,
    corpus_count,
    entity_document,
    entity_terms,
    load_graph,
    relationship_document,
    relationship_terms,
    unigram,
)
from klustree.graph_store import Term, TermKind

from .conftest import MINI_PATH, random_triples

MINI_TSV = MINI_PATH.read_bytes()

# The illustrative three-triple relationship document from the docs tables.
ACTEDIN_3 = (
    b"JohnnyDepp\tActedIn\tSleepyHollow\n"
    b"HelenaCarter\tActedIn\tCorpseBride\n"
    b"JohnnyDepp\tActedIn\tTheLoneRanger\n"
)


class TestLoadGraph:
    def test_mini_fixture_counts(self, mini_graph):
        assert len(mini_graph.triples) == 6
        assert len(mini_graph.nodes) == 7

    def test_duplicate_line_deduplicates(self, mini_graph):
        doubled = MINI_TSV + b"JohnnyDepp\tActedIn\tCorpseBride\n"
        assert load_graph(doubled) == mini_graph

    def test_malformed_line_names_line_number(self):
        with pytest.raises(GraphParseError, match="line 2"):
            load_graph(b"x\ty\tz\na\tb\n")

    def test_empty_input(self):
        with pytest.raises(EmptyGraphError):
            load_graph(b"")
        with pytest.raises(EmptyGraphError):
            load_graph(b"# only a comment\n\n")

    def test_comments_blank_lines_and_weight_column(self):
        g = load_graph(b"# header\n\na\tp\tb\t0.7\nc\tp\td\n")
        assert len(g.triples) == 2
        assert g.nodes == {"a", "b", "c", "d"}

    def test_field_trimming_and_empty_label(self):
        g = load_graph(b"  a \tp\t b \n")
        assert g.triples[0] == Triple("a", "p", "b")
        with pytest.raises(GraphParseError, match="line 1"):
            load_graph(b"a\t \tb\n")

    def test_line_order_is_irrelevant(self, mini_graph):
        lines = [ln for ln in MINI_TSV.splitlines() if ln and not ln.startswith(b"#")]
        rng = random.Random(7)
        for _ in range(5):
            rng.shuffle(lines)
            assert load_graph(b"\n".join(lines)) == mini_graph

    def test_accepts_binary_stream(self, mini_graph):
        assert load_graph(io.BytesIO(MINI_TSV)) == mini_graph


class TestTriplesAndTerms:
    def test_triple_is_a_value(self):
        assert Triple("a", "p", "b") == Triple(" a ", "p", "b")
        assert len({Triple("a", "p", "b"), Triple("a", "p", "b")}) == 1

    def test_triple_rejects_empty_labels(self):
        with pytest.raises(ValueError):
            Triple("", "p", "b")

    def test_unigram_never_equals_bigram(self):
        assert unigram("a") != Term(TermKind.BIGRAM, ("a", ""))

    def test_term_arity_checked(self):
        with pytest.raises(ValueError):
            Term(TermKind.UNIGRAM, ("a", "b"))


class TestEntityDocument:
    def test_corpse_bride_document(self, mini_graph):
        doc = entity_document(mini_graph, "CorpseBride")
        assert doc == {
            Triple("CorpseBride", "DirectedBy", "TimBurton"),
            Triple("HelenaCarter", "ActedIn", "CorpseBride"),
            Triple("JohnnyDepp", "ActedIn", "CorpseBride"),
            Triple("CorpseBride", "hasLanguage", "English"),
        }

    def test_johnny_depp_document(self, mini_graph):
        doc = entity_document(mini_graph, "JohnnyDepp")
        assert len(doc) == 3
        assert all(t.predicate == "ActedIn" for t in doc)

    def test_unknown_entity(self, mini_graph):
        with pytest.raises(NotFoundError):
            entity_document(mini_graph, "Gandalf")


class TestEntityTerms:
    def test_corpse_bride_terms(self, mini_graph):
        uni, bi = entity_terms(mini_graph, "CorpseBride")
        assert set(uni) == {"TimBurton", "HelenaCarter", "JohnnyDepp", "English"}
        assert set(bi) == {
            ("DirectedBy", "TimBurton"),
            ("HelenaCarter", "ActedIn"),
            ("JohnnyDepp", "ActedIn"),
            ("hasLanguage", "English"),
        }
        assert all(c == 1 for c in uni.values())

    def test_johnny_depp_terms(self, mini_graph):
        uni, bi = entity_terms(mini_graph, "JohnnyDepp")
        assert set(uni) == {"CorpseBride", "SleepyHollow", "TheLoneRanger"}
        assert set(bi) == {
            ("ActedIn", "CorpseBride"),
            ("ActedIn", "SleepyHollow"),
            ("ActedIn", "TheLoneRanger"),
        }

    def test_single_triple_node(self):
        g = load_graph(b"x\tp\ty\n")
        uni, bi = entity_terms(g, "x")
        assert dict(uni) == {"y": 1}
        assert dict(bi) == {("p", "y"): 1}


class TestRelationshipOps:
    def test_actedin_document(self, mini_graph):
        doc = relationship_document(mini_graph, "ActedIn")
        assert len(doc) == 4
        assert all(t.predicate == "ActedIn" for t in doc)

    def test_directedby_is_singleton(self, mini_graph):
        assert len(relationship_document(mini_graph, "DirectedBy")) == 1

    def test_unknown_predicate(self, mini_graph):
        with pytest.raises(NotFoundError):
            relationship_document(mini_graph, "MarriedTo")

    def test_terms_on_three_triple_document(self):
        g = load_graph(ACTEDIN_3)
        subj, obj, bi = relationship_terms(g, "ActedIn")
        assert set(subj) == {"JohnnyDepp", "HelenaCarter"}
        assert subj["JohnnyDepp"] == 2
        assert set(obj) == {"CorpseBride", "SleepyHollow", "TheLoneRanger"}
        assert set(bi) == {
            ("JohnnyDepp", "SleepyHollow"),
            ("JohnnyDepp", "TheLoneRanger"),
            ("HelenaCarter", "CorpseBride"),
        }

    def test_directedby_terms(self, mini_graph):
        subj, obj, bi = relationship_terms(mini_graph, "DirectedBy")
        assert dict(subj) == {"CorpseBride": 1}
        assert dict(obj) == {"TimBurton": 1}
        assert dict(bi) == {("CorpseBride", "TimBurton"): 1}

    def test_actedin_subject_multiset(self, mini_graph):
        subj, _, _ = relationship_terms(mini_graph, "ActedIn")
        assert dict(subj) == {"JohnnyDepp": 3, "HelenaCarter": 1}


class TestCorpusCounts:
    def test_hand_counts(self, mini_graph):
        assert corpus_count(mini_graph, unigram("JohnnyDepp")) == 3
        assert corpus_count(mini_graph, unigram("TimBurton")) == 1
        assert corpus_count(mini_graph, unigram("CorpseBride")) == 4
        assert corpus_count(mini_graph, unigram("Gandalf")) == 0

    def test_bigram_counts(self, mini_graph):
        assert corpus_count(mini_graph, bigram("DirectedBy", "TimBurton")) == 1
        assert corpus_count(mini_graph, bigram("JohnnyDepp", "ActedIn")) == 3
        assert corpus_count(mini_graph, bigram("JohnnyDepp", "CorpseBride")) == 1
        assert corpus_count(mini_graph, bigram("a", "b")) == 0


class TestInvariants:
    def test_document_size_matches_corpus_count(self, mini_graph):
        for node in mini_graph.nodes:
            assert len(entity_document(mini_graph, node)) == corpus_count(
                mini_graph, unigram(node)
            )

    def test_total_unigram_mass(self, mini_graph):
        total = sum(corpus_count(mini_graph, unigram(n)) for n in mini_graph.nodes)
        assert total == 2 * len(mini_graph.triples)

    def test_unigram_multiset_size_matches_document(self, mini_graph):
        for node in mini_graph.nodes:
            uni, bi = entity_terms(mini_graph, node)
            assert sum(uni.values()) == len(entity_document(mini_graph, node))
            assert sum(bi.values()) == sum(uni.values())

    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 10**6))
    def test_random_graph_identities(self, seed):
        g = Graph(random_triples(random.Random(seed)))
        total = sum(corpus_count(g, unigram(n)) for n in g.nodes)
        assert total == 2 * len(g.triples)
        for node in g.nodes:
            uni, _ = entity_terms(g, node)
            assert sum(uni.values()) == len(entity_document(g, node))
