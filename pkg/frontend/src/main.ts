/** Browser wiring: query form, explorer, judging screen, URL sync. */

import { ApiClient } from "./api.js";
import { Explorer } from "./explorer.js";
import { JudgeController } from "./judge.js";
import { stateFromUrl, stateToUrl } from "./state.js";
import type { MethodName } from "./types.js";
import { METHODS } from "./types.js";

declare global {
  interface Window {
    KLUSTREE_API?: string;
  }
}

function element<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (el === null) throw new Error(`missing element #${id}`);
  return el as T;
}

export function boot(): void {
  const api = new ApiClient(window.KLUSTREE_API ?? "");
  const explorer = new Explorer(element("results"), api);
  const judge = new JudgeController(element("judging"), api, window.localStorage);

  explorer.onStateChange = (state) => {
    history.replaceState(null, "", stateToUrl(state));
  };

  const form = element<HTMLFormElement>("query-form");
  const input = element<HTMLInputElement>("keywords");
  const methodSelect = element<HTMLSelectElement>("method");
  const judgeButton = element<HTMLButtonElement>("start-judging");

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const keywords = input.value
      .split(",")
      .map((k) => k.trim())
      .filter((k) => k.length > 0);
    const method = methodSelect.value as MethodName;
    void explorer.runQuery(keywords, METHODS.includes(method) ? method : "lm");
  });

  judgeButton.addEventListener("click", () => {
    if (explorer.queryId !== null) {
      void judge.load(explorer.queryId);
    }
  });

  const restored = stateFromUrl(location.hash);
  if (restored.keywords.length >= 2) {
    input.value = restored.keywords.join(",");
    methodSelect.value = restored.method;
    void explorer.runQuery(restored.keywords, restored.method).then(() => {
      if (restored.heuristic !== explorer.state.heuristic) {
        explorer.switchHeuristic(restored.heuristic);
      }
      if (restored.expandedCluster !== null) {
        explorer.toggleCluster(restored.expandedCluster);
      }
    });
  }
}

boot();
