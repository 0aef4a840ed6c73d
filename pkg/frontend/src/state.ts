/** View state as a pure value: every user action maps (state, action) to a
 * new state, and the whole state round-trips through the URL hash so a view
 * can be restored from a link. */

import type { HeuristicName, MethodName } from "./types.js";
import { HEURISTICS, METHODS } from "./types.js";

export interface ViewState {
  keywords: string[];
  method: MethodName;
  heuristic: HeuristicName;
  expandedCluster: number | null;
  /** index of the pair currently shown on the judging screen */
  pendingPair: number | null;
}

export const initialState: ViewState = {
  keywords: [],
  method: "lm",
  heuristic: "best",
  expandedCluster: null,
  pendingPair: null,
};

export type Action =
  | { type: "set_query"; keywords: string[]; method: MethodName }
  | { type: "switch_heuristic"; heuristic: HeuristicName }
  | { type: "toggle_cluster"; cluster: number }
  | { type: "start_judging" }
  | { type: "advance_pair"; next: number | null }
  | { type: "stop_judging" };

export function reduce(state: ViewState, action: Action): ViewState {
  switch (action.type) {
    case "set_query":
      return {
        ...initialState,
        keywords: [...action.keywords],
        method: action.method,
        heuristic: state.heuristic,
      };
    case "switch_heuristic":
      // reordering uses the rankings already shipped with the document
      return { ...state, heuristic: action.heuristic };
    case "toggle_cluster":
      return {
        ...state,
        expandedCluster: state.expandedCluster === action.cluster ? null : action.cluster,
      };
    case "start_judging":
      return { ...state, pendingPair: 0 };
    case "advance_pair":
      return { ...state, pendingPair: action.next };
    case "stop_judging":
      return { ...state, pendingPair: null };
  }
}

export function stateToUrl(state: ViewState): string {
  const params = new URLSearchParams();
  if (state.keywords.length > 0) params.set("q", state.keywords.join(","));
  params.set("method", state.method);
  params.set("heuristic", state.heuristic);
  if (state.expandedCluster !== null) params.set("open", String(state.expandedCluster));
  if (state.pendingPair !== null) params.set("pair", String(state.pendingPair));
  return "#" + params.toString();
}

function parseIntOrNull(raw: string | null): number | null {
  if (raw === null) return null;
  const value = Number.parseInt(raw, 10);
  return Number.isNaN(value) ? null : value;
}

export function stateFromUrl(hash: string): ViewState {
  const params = new URLSearchParams(hash.replace(/^#/, ""));
  const q = params.get("q");
  const method = params.get("method");
  const heuristic = params.get("heuristic");
  return {
    keywords: q ? q.split(",").filter((k) => k.length > 0) : [],
    method: METHODS.includes(method as MethodName) ? (method as MethodName) : "lm",
    heuristic: HEURISTICS.includes(heuristic as HeuristicName)
      ? (heuristic as HeuristicName)
      : "best",
    expandedCluster: parseIntOrNull(params.get("open")),
    pendingPair: parseIntOrNull(params.get("pair")),
  };
}
