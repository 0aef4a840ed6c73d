/** JSON shapes exchanged with the query service. */

export interface TripleJson {
  s: string;
  p: string;
  o: string;
}

export interface TreeJson {
  rank: number;
  score: number;
  root: string;
  edges: TripleJson[];
}

export interface ClusterEntry {
  id: number;
  rank_position: number;
  representative: TreeJson;
  trees: number[];
}

export type HeuristicName = "best" | "worst" | "avg" | "size";
export type MethodName = "lm" | "iso" | "ted";

export const HEURISTICS: HeuristicName[] = ["best", "worst", "avg", "size"];
export const METHODS: MethodName[] = ["lm", "iso", "ted"];

export interface ResultDocument {
  query: string[];
  method: string;
  heuristic: HeuristicName;
  params: Record<string, number>;
  trees: TreeJson[];
  k: number;
  ch: number | null;
  clusters: ClusterEntry[];
  rankings: Record<HeuristicName, number[]>;
}

export interface QueryResponse {
  id: string;
  document: ResultDocument;
}

export interface PairJson {
  a: TreeJson;
  b: TreeJson;
  origin: string;
  clusters: number[];
}

export interface PairsResponse {
  id: string;
  pairs: PairJson[];
}

export interface JudgmentPayload {
  query_id: string;
  kind: "pairs" | "clusters";
  method?: string;
  grades: Record<string, number>;
}
