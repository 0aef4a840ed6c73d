/** The blind pair-judging screen.
 *
 * Raters see two trees side by side in the service's seeded shuffle order
 * and grade their similarity from 1 (highly different) to 5 (highly
 * similar).  The screen never reveals cluster ids, clustering method, or
 * whether the pair came from inside one cluster; that provenance appears
 * only on the summary screen after the last pair.  Failed posts land in a
 * retry queue persisted to storage so a reload loses nothing. */

import type { ApiClient } from "./api.js";
import { renderTree } from "./tree_view.js";
import type { JudgmentPayload, PairJson } from "./types.js";

const QUEUE_KEY = "klustree.judgment.queue";
const GRADES_KEY = "klustree.judgment.grades";

interface StorageLike {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
  removeItem(key: string): void;
}

interface GradeRecord {
  pair: number;
  origin: string;
  grade: number;
}

export class JudgeController {
  pairs: PairJson[] = [];
  queryId = "";
  current = 0;
  grades: GradeRecord[] = [];
  onAdvance: (next: number | null) => void = () => {};

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
    private readonly storage: StorageLike,
  ) {
    const savedGrades = this.storage.getItem(GRADES_KEY);
    if (savedGrades !== null) {
      this.grades = JSON.parse(savedGrades) as GradeRecord[];
    }
  }

  async load(queryId: string): Promise<void> {
    this.queryId = queryId;
    const response = await this.api.getPairs(queryId);
    this.pairs = response.pairs;
    this.current = 0;
    await this.flushQueue();
    this.render();
  }

  pendingQueue(): JudgmentPayload[] {
    const raw = this.storage.getItem(QUEUE_KEY);
    return raw === null ? [] : (JSON.parse(raw) as JudgmentPayload[]);
  }

  private saveQueue(queue: JudgmentPayload[]): void {
    if (queue.length === 0) {
      this.storage.removeItem(QUEUE_KEY);
    } else {
      this.storage.setItem(QUEUE_KEY, JSON.stringify(queue));
    }
  }

  async flushQueue(): Promise<void> {
    const queue = this.pendingQueue();
    const remaining: JudgmentPayload[] = [];
    for (const payload of queue) {
      try {
        await this.api.postJudgments(payload);
      } catch {
        remaining.push(payload);
      }
    }
    this.saveQueue(remaining);
  }

  async grade(value: number): Promise<void> {
    const index = this.current;
    const pair = this.pairs[index];
    if (pair === undefined) return;
    this.grades.push({ pair: index, origin: pair.origin, grade: value });
    this.storage.setItem(GRADES_KEY, JSON.stringify(this.grades));
    const payload: JudgmentPayload = {
      query_id: this.queryId,
      kind: "pairs",
      grades: { [String(index)]: value },
    };
    try {
      await this.api.postJudgments(payload);
    } catch {
      this.saveQueue([...this.pendingQueue(), payload]);
    }
    this.advance();
  }

  skip(): void {
    this.advance();
  }

  private advance(): void {
    this.current += 1;
    this.onAdvance(this.current < this.pairs.length ? this.current : null);
    this.render();
  }

  /** Mean entered grade per pair origin (within vs cross). */
  averagesByOrigin(): Record<string, number> {
    const sums = new Map<string, { total: number; count: number }>();
    for (const record of this.grades) {
      const entry = sums.get(record.origin) ?? { total: 0, count: 0 };
      entry.total += record.grade;
      entry.count += 1;
      sums.set(record.origin, entry);
    }
    const out: Record<string, number> = {};
    for (const [origin, { total, count }] of sums) {
      out[origin] = total / count;
    }
    return out;
  }

  render(): void {
    this.root.textContent = "";
    if (this.current >= this.pairs.length) {
      this.renderSummary();
      return;
    }
    const pair = this.pairs[this.current];
    const screen = document.createElement("div");
    screen.className = "judge-screen";

    const progress = document.createElement("p");
    progress.className = "progress";
    progress.textContent = `pair ${this.current + 1} of ${this.pairs.length}`;
    screen.appendChild(progress);

    const sideBySide = document.createElement("div");
    sideBySide.className = "pair";
    for (const tree of [pair.a, pair.b]) {
      const side = document.createElement("div");
      side.className = "pair-side";
      side.appendChild(renderTree(tree));
      sideBySide.appendChild(side);
    }
    screen.appendChild(sideBySide);

    const prompt = document.createElement("p");
    prompt.textContent = "Do these two results convey similar information?";
    screen.appendChild(prompt);

    const scale = document.createElement("div");
    scale.className = "grade-scale";
    for (let value = 1; value <= 5; value += 1) {
      const button = document.createElement("button");
      button.dataset.grade = String(value);
      button.textContent =
        value === 1 ? "1 · highly different" : value === 5 ? "5 · highly similar" : String(value);
      button.addEventListener("click", () => void this.grade(value));
      scale.appendChild(button);
    }
    const skip = document.createElement("button");
    skip.className = "skip";
    skip.textContent = "skip";
    skip.addEventListener("click", () => this.skip());
    scale.appendChild(skip);
    screen.appendChild(scale);

    this.root.appendChild(screen);
  }

  private renderSummary(): void {
    const summary = document.createElement("div");
    summary.className = "judge-summary";
    const heading = document.createElement("h3");
    heading.textContent = "All pairs rated";
    summary.appendChild(heading);
    const list = document.createElement("ul");
    for (const [origin, average] of Object.entries(this.averagesByOrigin())) {
      const item = document.createElement("li");
      item.textContent = `${origin}: average ${average.toFixed(2)}`;
      list.appendChild(item);
    }
    summary.appendChild(list);
    const pending = this.pendingQueue().length;
    if (pending > 0) {
      const note = document.createElement("p");
      note.textContent = `${pending} grade(s) queued for retry`;
      summary.appendChild(note);
    }
    this.root.appendChild(summary);
  }
}
