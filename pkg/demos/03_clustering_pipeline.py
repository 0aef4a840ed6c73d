"""The full pipeline: search, tree models, JS distances, clusters, ranking.

The extended fixture yields six answers for {"Carter", "Depp"}: two coactor
stars, a producer chain through Walt Disney, and three five-node chains of
identical shape (two through actors, one through an award).  The model-based
distance pulls the award chain away from the actor chains even though all
three are isomorphic.  Run from the repository root:

    python demos/03_clustering_pipeline.py
"""

from pathlib import Path

from klustree import KeywordQuery, TreeLMBuilder, build_distance_matrix, complete_link_dendrogram, load_graph_path
from klustree.pipeline import Method, PipelineConfig, config_with, run_pipeline_full

graph_path = Path(__file__).parent.parent / "data" / "mini_imdb_extended.tsv"
graph = load_graph_path(graph_path)
query = KeywordQuery(("Carter", "Depp"))
cfg = PipelineConfig(graph_path=str(graph_path))

result = run_pipeline_full(cfg, query, graph=graph)
print(f"{len(result.trees)} ranked answer trees:")
for t in result.trees:
    print(f"  #{t.rank} ({t.score} edges) rooted at {t.root!r}: {sorted(t.nodes)}")

print("\n--- Pairwise tree distances (gamma = 0.5) ---")
builder = TreeLMBuilder(graph, cfg.params)
matrix = build_distance_matrix([builder.tree_lm(t) for t in result.trees], 0.5)
for row in matrix.values:
    print("  " + "  ".join(f"{v:.3f}" for v in row))

print("\n--- Complete-link merge history ---")
for left, right, height in complete_link_dendrogram(matrix).merges:
    print(f"  {left} + {right} at {height:.4f}")

print(f"\nCH selected K = {result.clustering.k} (CH = {result.clustering.ch_value:.2f})")
for entry in result.document["clusters"]:
    rep = entry["representative"]
    print(f"  cluster {entry['id']} (position {entry['rank_position']}): "
          f"trees {entry['trees']}, representative #{rep['rank']} rooted at {rep['root']!r}")

print("\n--- The structure-only baseline on the same trees ---")
iso = run_pipeline_full(config_with(cfg, method=Method.ISO), query, graph=graph)
print(f"isomorphism gives K = {iso.clustering.k}: assignment {iso.clustering.assignment}")
print("(the three five-node chains collapse into one shape class;")
print(" the model-based clustering above keeps the award chain apart)")

print("\n--- All four ranking heuristics, shipped together ---")
for name, order in result.document["rankings"].items():
    print(f"  {name:>5}: {order}")
