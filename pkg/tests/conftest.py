import random
from pathlib import Path

import pytest

from klustree import Graph, KeywordQuery, Triple, load_graph_path

DATA_DIR = Path(__file__).resolve().parent.parent / "data"
MINI_PATH = DATA_DIR / "mini_imdb.tsv"
EXTENDED_PATH = DATA_DIR / "mini_imdb_extended.tsv"


@pytest.fixture(scope="session")
def mini_graph() -> Graph:
    return load_graph_path(MINI_PATH)


@pytest.fixture(scope="session")
def extended_graph() -> Graph:
    return load_graph_path(EXTENDED_PATH)


@pytest.fixture
def carter_depp() -> KeywordQuery:
    return KeywordQuery(("Carter", "Depp"))


def random_triples(rng: random.Random, max_triples: int = 50) -> list[Triple]:
    """A small random graph without self-loops (subject != object), so the
    document-size/corpus-count identities hold exactly."""
    n_nodes = rng.randint(2, 12)
    nodes = [f"n{i}" for i in range(n_nodes)]
    predicates = [f"p{i}" for i in range(rng.randint(1, 4))]
    triples = []
    for _ in range(rng.randint(1, max_triples)):
        s, o = rng.sample(nodes, 2)
        triples.append(Triple(s, rng.choice(predicates), o))
    return triples
