"""Clustered keyword search over directed labeled triple graphs.

The library answers multi-keyword relationship queries with minimal rooted
answer trees, represents each tree with smoothed language models, clusters
the trees by Jensen-Shannon divergence under complete linkage with CH-index
model selection, ranks the clusters, and ships isomorphism and tree-edit
-distance baselines plus the evaluation machinery (judgment pairs, NDCG).
"""

from .baselines import (
    SimilarityMatrix,
    canonical_form,
    column_similarity,
    edit_similarity,
    isomorphism_clusters,
    ordered_tree_edit_distance,
    similarity_matrix,
    ted_clusters,
    ted_distance_matrix,
    tree_edit_distance,
)
from .clustering import (
    Clustering,
    ClusterRanking,
    Dendrogram,
    DistanceMatrix,
    Heuristic,
    build_distance_matrix,
    ch_index,
    clustering_document,
    clustering_from_partition,
    complete_link_dendrogram,
    js_divergence,
    rank_clusters,
    select_clustering,
    tree_distance,
)
from .errors import (
    ContractError,
    DegenerateInputError,
    EmptyGraphError,
    GraphParseError,
    KlusTreeError,
    NotFoundError,
    PipelineError,
    UnmatchedKeywordError,
)
from .evaluation import (
    JudgmentPair,
    PairOrigin,
    RelevanceVector,
    generate_judgment_pairs,
    judgment_pairs_json,
    ndcg,
    parse_grades,
)
from .graph_store import (
    Graph,
    Term,
    TermKind,
    Triple,
    bigram,
    corpus_count,
    entity_document,
    entity_terms,
    load_graph,
    load_graph_path,
    relationship_document,
    relationship_terms,
    unigram,
)
from .keyword_search import (
    AnswerTree,
    KeywordQuery,
    canonical_serialization,
    enumerate_answer_trees,
    is_minimal,
    match_keyword,
    tree_to_json,
    trees_from_json,
    trees_to_json,
    validate_answer_tree,
)
from .language_models import (
    LanguageModel,
    LMParams,
    TreeLM,
    TreeLMBuilder,
    estimate_entity_lm,
    estimate_relationship_lm,
    estimate_tree_lm,
    lm_to_json,
)
from .pipeline import Method, PipelineConfig, run_pipeline, run_pipeline_full

__version__ = "0.1.0"
