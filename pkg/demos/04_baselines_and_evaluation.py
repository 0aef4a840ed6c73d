"""Edit-distance machinery and the rating workflow.

Shows tree edit distance with its similarity matrix, the judgment pairs a
human rater would see (max/min pair per cluster plus representative pairs
across clusters), and NDCG scoring of a cluster ranking under relevance
grades.  Run from the repository root:

    python demos/04_baselines_and_evaluation.py
"""

from pathlib import Path

from klustree import (
    KeywordQuery,
    column_similarity,
    edit_similarity,
    generate_judgment_pairs,
    judgment_pairs_json,
    ndcg,
    similarity_matrix,
    tree_edit_distance,
    load_graph_path,
)
from klustree.pipeline import PipelineConfig, run_pipeline_full

graph_path = Path(__file__).parent.parent / "data" / "mini_imdb_extended.tsv"
graph = load_graph_path(graph_path)
query = KeywordQuery(("Carter", "Depp"))
result = run_pipeline_full(PipelineConfig(graph_path=str(graph_path), seed=11), query, graph=graph)
trees = result.trees

print("--- Tree edit distances between the first three answers ---")
for i in range(3):
    for j in range(i + 1, 3):
        ted = tree_edit_distance(trees[i], trees[j])
        es = edit_similarity(trees[i], trees[j])
        print(f"  TED(#{i + 1}, #{j + 1}) = {ted}, es = {es:.4f}")

sim = similarity_matrix(trees)
print("\ncolumn similarity cs(#1, #2) =", f"{column_similarity(sim, 0, 1):.4f}")
print("(two trees are column-similar when they relate to every other tree alike)")

print("\n--- Judgment pairs for the model-based clustering (seed 11) ---")
pairs = generate_judgment_pairs(result.clustering, result.matrix, seed=11,
                                tree_ranks=[t.rank for t in trees])
exported = judgment_pairs_json(pairs, result.document["trees"])
for pair in exported:
    a, b = pair["a"], pair["b"]
    print(f"  [{pair['origin']:>20}] #{a['rank']} ({a['root']}) vs #{b['rank']} ({b['root']})")
print("(a rater sees these shuffled, with no cluster provenance shown)")

print("\n--- NDCG of the shipped cluster order under made-up grades ---")
order = [entry["id"] for entry in result.document["clusters"]]
grades = {order[0]: 5, order[1]: 4, order[2]: 4, order[3]: 2}
print(f"cluster order {order} with grades {grades}")
print(f"NDCG = {ndcg(order, grades):.4f}")
worst_first = list(reversed(order))
print(f"reversed order scores {ndcg(worst_first, grades):.4f}")
