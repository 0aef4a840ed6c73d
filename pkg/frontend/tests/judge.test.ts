import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { JudgeController } from "../src/judge.js";
import { fakeStorage, mockService, PAIRS } from "./fixtures.js";

describe("pair judging", () => {
  let root: HTMLElement;

  beforeEach(() => {
    root = document.createElement("div");
    document.body.textContent = "";
    document.body.appendChild(root);
  });

  it("shows the two trees side by side", async () => {
    const service = mockService();
    const judge = new JudgeController(root, new ApiClient("", service.fetchFn), fakeStorage());
    await judge.load("q1");
    expect(root.querySelectorAll(".pair-side").length).toBe(2);
    expect(root.textContent).toContain("Aurora Peak");
    expect(root.querySelectorAll("[data-grade]").length).toBe(5);
  });

  it("never reveals cluster ids, methods, or pair provenance while judging", async () => {
    const service = mockService();
    const judge = new JudgeController(root, new ApiClient("", service.fetchFn), fakeStorage());
    await judge.load("q1");
    for (let i = 0; i < PAIRS.length - 1; i += 1) {
      const text = root.textContent ?? "";
      const html = root.innerHTML;
      expect(text).not.toMatch(/cluster/i);
      expect(text).not.toMatch(/\b(lm|iso|isomorphism|ted)\b/i);
      expect(text).not.toMatch(/within_max|within_min|cross_representative/i);
      expect(html).not.toMatch(/data-cluster/);
      judge.skip();
    }
  });

  it("posts a grade payload matching the judgments schema and advances", async () => {
    const service = mockService();
    const judge = new JudgeController(root, new ApiClient("", service.fetchFn), fakeStorage());
    await judge.load("q1");
    await judge.grade(4);
    const post = service.calls.find((c) => c.url.endsWith("/api/judgments"));
    expect(post).toBeDefined();
    expect(post?.method).toBe("POST");
    expect(post?.body).toEqual({ query_id: "q1", kind: "pairs", grades: { "0": 4 } });
    expect(judge.current).toBe(1);
  });

  it("skipping posts nothing", async () => {
    const service = mockService();
    const judge = new JudgeController(root, new ApiClient("", service.fetchFn), fakeStorage());
    await judge.load("q1");
    judge.skip();
    expect(service.calls.some((c) => c.url.endsWith("/api/judgments"))).toBe(false);
  });

  it("queues failed posts and flushes them on the next load", async () => {
    const storage = fakeStorage();
    const service = mockService();
    service.failJudgments = true;
    const judge = new JudgeController(root, new ApiClient("", service.fetchFn), storage);
    await judge.load("q1");
    await judge.grade(5);
    expect(judge.pendingQueue()).toEqual([
      { query_id: "q1", kind: "pairs", grades: { "0": 5 } },
    ]);

    // a fresh controller (same storage, network back up) retries the queue
    service.failJudgments = false;
    const revived = new JudgeController(root, new ApiClient("", service.fetchFn), storage);
    await revived.load("q1");
    expect(revived.pendingQueue()).toEqual([]);
    const posts = service.calls.filter((c) => c.url.endsWith("/api/judgments"));
    expect(posts.at(-1)?.body).toEqual({ query_id: "q1", kind: "pairs", grades: { "0": 5 } });
  });

  it("finishes with per-origin averages", async () => {
    const service = mockService();
    const judge = new JudgeController(root, new ApiClient("", service.fetchFn), fakeStorage());
    await judge.load("q1");
    await judge.grade(5); // within_max
    await judge.grade(3); // within_min
    await judge.grade(1); // cross_representative
    expect(root.querySelector(".judge-summary")).not.toBeNull();
    const averages = judge.averagesByOrigin();
    expect(averages["within_max"]).toBe(5);
    expect(averages["within_min"]).toBe(3);
    expect(averages["cross_representative"]).toBe(1);
    expect(root.textContent).toContain("within_max: average 5.00");
  });
});
