/** Root-down diagram of an answer tree: the root on top, children nested
 * below it, and every connector labeled with its edge's predicate. */

import type { TreeJson, TripleJson } from "./types.js";

interface Link {
  neighbor: string;
  predicate: string;
  edge: TripleJson;
}

function adjacency(tree: TreeJson): Map<string, Link[]> {
  const adj = new Map<string, Link[]>();
  const push = (from: string, link: Link) => {
    if (!adj.has(from)) adj.set(from, []);
    adj.get(from)!.push(link);
  };
  for (const edge of tree.edges) {
    push(edge.s, { neighbor: edge.o, predicate: edge.p, edge });
    push(edge.o, { neighbor: edge.s, predicate: edge.p, edge });
  }
  for (const links of adj.values()) {
    links.sort((a, b) => a.neighbor.localeCompare(b.neighbor));
  }
  return adj;
}

function nodeElement(label: string): HTMLElement {
  const el = document.createElement("span");
  el.className = "tree-node";
  el.textContent = label;
  return el;
}

function subtree(
  adj: Map<string, Link[]>,
  node: string,
  parent: string | null,
): HTMLElement {
  const container = document.createElement("div");
  container.className = "tree-level";
  container.appendChild(nodeElement(node));
  const children = (adj.get(node) ?? []).filter((link) => link.neighbor !== parent);
  if (children.length > 0) {
    const list = document.createElement("ul");
    list.className = "tree-children";
    for (const link of children) {
      const item = document.createElement("li");
      const edgeLabel = document.createElement("span");
      edgeLabel.className = "edge-label";
      edgeLabel.textContent = link.predicate;
      item.appendChild(edgeLabel);
      item.appendChild(subtree(adj, link.neighbor, node));
      list.appendChild(item);
    }
    container.appendChild(list);
  }
  return container;
}

export function renderTree(tree: TreeJson): HTMLElement {
  const root = document.createElement("div");
  root.className = "tree-diagram";
  root.appendChild(subtree(adjacency(tree), tree.root, null));
  return root;
}
