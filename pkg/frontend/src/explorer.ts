/** The result explorer: one panel per cluster in ranked order, headed by the
 * cluster's representative tree.  Switching the ranking heuristic reorders
 * panels locally from the rankings shipped with the document; no request is
 * made.  Service errors surface inline with the offending keyword
 * highlighted. */

import type { ApiClient } from "./api.js";
import { ApiError } from "./api.js";
import { renderTree } from "./tree_view.js";
import type {
  ClusterEntry,
  HeuristicName,
  MethodName,
  ResultDocument,
} from "./types.js";
import { HEURISTICS } from "./types.js";
import type { Action, ViewState } from "./state.js";
import { initialState, reduce } from "./state.js";

export class Explorer {
  state: ViewState = initialState;
  queryId: string | null = null;
  document_: ResultDocument | null = null;
  onStateChange: (state: ViewState) => void = () => {};

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
  ) {}

  private dispatch(action: Action): void {
    this.state = reduce(this.state, action);
    this.onStateChange(this.state);
    this.render();
  }

  async runQuery(keywords: string[], method: MethodName): Promise<void> {
    try {
      const response = await this.api.postQuery(keywords, method);
      this.queryId = response.id;
      this.document_ = response.document;
      this.dispatch({ type: "set_query", keywords, method });
    } catch (error) {
      this.renderError(error, keywords);
    }
  }

  switchHeuristic(heuristic: HeuristicName): void {
    this.dispatch({ type: "switch_heuristic", heuristic });
  }

  toggleCluster(cluster: number): void {
    this.dispatch({ type: "toggle_cluster", cluster });
  }

  /** Cluster entries reordered under the active heuristic, straight from the
   * shipped rankings. */
  orderedClusters(): ClusterEntry[] {
    const doc = this.document_;
    if (doc === null) return [];
    const byId = new Map(doc.clusters.map((entry) => [entry.id, entry]));
    const order = doc.rankings[this.state.heuristic] ?? doc.clusters.map((c) => c.id);
    return order.map((id, position) => {
      const entry = byId.get(id)!;
      return { ...entry, rank_position: position + 1 };
    });
  }

  render(): void {
    this.root.textContent = "";
    const doc = this.document_;
    if (doc === null) return;

    const toolbar = document.createElement("div");
    toolbar.className = "heuristic-switch";
    for (const heuristic of HEURISTICS) {
      const button = document.createElement("button");
      button.textContent = heuristic;
      button.dataset.heuristic = heuristic;
      if (heuristic === this.state.heuristic) button.classList.add("active");
      button.addEventListener("click", () => this.switchHeuristic(heuristic));
      toolbar.appendChild(button);
    }
    this.root.appendChild(toolbar);

    const entries = this.orderedClusters();
    if (entries.length <= 1) {
      const badge = document.createElement("p");
      badge.className = "badge";
      badge.textContent = "all results similar";
      this.root.appendChild(badge);
    }
    for (const entry of entries) {
      this.root.appendChild(this.panel(doc, entry));
    }
  }

  private panel(doc: ResultDocument, entry: ClusterEntry): HTMLElement {
    const panel = document.createElement("section");
    panel.className = "cluster-panel";
    panel.dataset.cluster = String(entry.id);

    const heading = document.createElement("h3");
    heading.textContent =
      `#${entry.rank_position} · cluster ${entry.id} · ` +
      `${entry.trees.length} tree${entry.trees.length === 1 ? "" : "s"}`;
    panel.appendChild(heading);

    const representative = document.createElement("div");
    representative.className = "representative";
    representative.appendChild(renderTree(entry.representative));
    panel.appendChild(representative);

    const expand = document.createElement("button");
    expand.className = "expand";
    const expanded = this.state.expandedCluster === entry.id;
    expand.textContent = expanded ? "collapse" : "show all members";
    expand.addEventListener("click", () => this.toggleCluster(entry.id));
    panel.appendChild(expand);

    if (expanded) {
      const members = document.createElement("div");
      members.className = "members";
      for (const treeIndex of entry.trees) {
        const member = document.createElement("div");
        member.className = "member";
        const caption = document.createElement("p");
        caption.textContent = `rank ${doc.trees[treeIndex].rank}`;
        member.appendChild(caption);
        member.appendChild(renderTree(doc.trees[treeIndex]));
        members.appendChild(member);
      }
      panel.appendChild(members);
    }
    return panel;
  }

  renderError(error: unknown, keywords: string[]): void {
    this.root.textContent = "";
    const box = document.createElement("div");
    box.className = "error";
    const message = error instanceof Error ? error.message : String(error);
    const text = document.createElement("p");
    text.textContent = message;
    box.appendChild(text);
    if (error instanceof ApiError) {
      const offender = keywords.find((k) => message.includes(k));
      if (offender !== undefined) {
        const highlight = document.createElement("p");
        const mark = document.createElement("mark");
        mark.textContent = offender;
        highlight.append("no results for ", mark);
        box.appendChild(highlight);
      }
    }
    this.root.appendChild(box);
  }
}
