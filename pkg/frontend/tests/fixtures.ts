/** A mocked service result: five trees in three clusters, with all four
 * ranking orders precomputed the way the service ships them. */

import type { FetchLike } from "../src/api.js";
import type { PairJson, ResultDocument, TreeJson } from "../src/types.js";

function star(root: string, left: string, right: string, rank: number): TreeJson {
  return {
    rank,
    score: 2,
    root,
    edges: [
      { s: left, p: "appearsIn", o: root },
      { s: right, p: "appearsIn", o: root },
    ],
  };
}

function chain(labels: string[], rank: number): TreeJson {
  const edges = [];
  for (let i = 0; i + 1 < labels.length; i += 1) {
    edges.push({ s: labels[i], p: "connects", o: labels[i + 1] });
  }
  return { rank, score: edges.length, root: labels[0], edges };
}

export const TREES: TreeJson[] = [
  star("Aurora Peak", "Brook Lane", "Cedar Grove", 1),
  star("Delta Quay", "Brook Lane", "Cedar Grove", 2),
  star("Ember Falls", "Brook Lane", "Cedar Grove", 3),
  chain(["Fern Hollow", "Granite Ridge", "Harbor Mill", "Ivy Bend", "Juniper Flat"], 4),
  chain(["Aurora Peak", "Brook Lane", "Delta Quay", "Cedar Grove"], 5),
];

export const DOCUMENT: ResultDocument = {
  query: ["Brook", "Cedar"],
  method: "lm",
  heuristic: "best",
  params: { lambda: 0.5, mu: 0.5, gamma: 0.5, top_n: 25, k_min: 2, k_max: 15, seed: 0 },
  trees: TREES,
  k: 3,
  ch: 17.5,
  clusters: [
    { id: 0, rank_position: 1, representative: TREES[0], trees: [0, 4] },
    { id: 1, rank_position: 2, representative: TREES[1], trees: [1, 2] },
    { id: 2, rank_position: 3, representative: TREES[3], trees: [3] },
  ],
  rankings: {
    best: [0, 1, 2],
    worst: [1, 2, 0],
    avg: [1, 0, 2],
    size: [1, 0, 2],
  },
};

export const PAIRS: PairJson[] = [
  { a: TREES[0], b: TREES[4], origin: "within_max", clusters: [0] },
  { a: TREES[1], b: TREES[2], origin: "within_min", clusters: [1] },
  { a: TREES[0], b: TREES[3], origin: "cross_representative", clusters: [0, 2] },
];

export interface RecordedCall {
  url: string;
  method: string;
  body: unknown;
}

export interface MockService {
  fetchFn: FetchLike;
  calls: RecordedCall[];
  failJudgments: boolean;
}

export function mockService(
  document: ResultDocument = DOCUMENT,
  pairs: PairJson[] = PAIRS,
): MockService {
  const service: MockService = { calls: [], failJudgments: false, fetchFn: null! };
  service.fetchFn = (url, init) => {
    const body = init?.body !== undefined ? JSON.parse(init.body) : undefined;
    service.calls.push({ url, method: init?.method ?? "GET", body });
    const respond = (status: number, payload: unknown) =>
      Promise.resolve({
        ok: status < 400,
        status,
        json: () => Promise.resolve(payload),
      });
    if (url.endsWith("/api/query") && init?.method === "POST") {
      return respond(200, { id: "q1", document });
    }
    if (url.includes("/pairs")) {
      return respond(200, { id: "q1", pairs });
    }
    if (url.endsWith("/api/judgments")) {
      if (service.failJudgments) {
        return Promise.reject(new Error("network down"));
      }
      return respond(200, { status: "stored", count: service.calls.length });
    }
    return respond(404, { detail: "unknown route" });
  };
  return service;
}

export function fakeStorage(): Storage {
  const data = new Map<string, string>();
  return {
    get length() {
      return data.size;
    },
    clear: () => data.clear(),
    getItem: (key: string) => (data.has(key) ? data.get(key)! : null),
    key: (index: number) => [...data.keys()][index] ?? null,
    removeItem: (key: string) => void data.delete(key),
    setItem: (key: string, value: string) => void data.set(key, value),
  } as Storage;
}
