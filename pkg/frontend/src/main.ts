/** Bootstrap: reviewer login prompt, queue inbox, case view with polling.
 * One reviewer session per tab; the server lease is the source of truth. */

import { CockpitApi } from "./api.js";
import { renderCase, type RenderCallbacks } from "./render.js";
import type { Section } from "./model.js";
import { CockpitViewModel } from "./viewmodel.js";

const DEFAULT_POLL_MS = 15_000;

function getPollInterval(): number {
  const params = new URLSearchParams(window.location.search);
  const raw = params.get("poll_ms");
  const value = raw ? Number(raw) : NaN;
  return Number.isFinite(value) && value > 0 ? value : DEFAULT_POLL_MS;
}

function promptReviewerId(): string {
  const stored = window.sessionStorage.getItem("reviewer_id");
  if (stored) return stored;
  const entered = window.prompt("Reviewer id:")?.trim() || "anonymous-reviewer";
  window.sessionStorage.setItem("reviewer_id", entered);
  return entered;
}

async function showQueue(root: HTMLElement, api: CockpitApi): Promise<void> {
  root.textContent = "";
  const heading = document.createElement("h1");
  heading.textContent = "Review queue";
  root.appendChild(heading);
  const list = document.createElement("ul");
  list.className = "queue-list";
  try {
    const entries = await api.queue();
    if (entries.length === 0) {
      const empty = document.createElement("p");
      empty.textContent = "No cases waiting.";
      root.appendChild(empty);
    }
    for (const entry of entries) {
      const item = document.createElement("li");
      const link = document.createElement("a");
      link.href = `?case=${encodeURIComponent(entry.case_id)}`;
      link.textContent = `${entry.case_id} — ${entry.chief_complaint ?? ""}`;
      item.appendChild(link);
      list.appendChild(item);
    }
    root.appendChild(list);
  } catch (err) {
    const banner = document.createElement("div");
    banner.className = "error-banner";
    banner.textContent = String(err);
    root.appendChild(banner);
  }
}

export function mountCaseView(
  root: HTMLElement,
  vm: CockpitViewModel,
  pollMs: number,
): () => void {
  let disposed = false;

  const callbacks: RenderCallbacks = {
    onClaim: () => void vm.claim().then(redraw),
    onDraftChange: (section: Section, text: string) => {
      vm.setDraft(section, text);
      // no full redraw while typing; the save button state updates on save
    },
    onSaveEdit: (section: Section) => void vm.submitEdit(section).then(redraw),
    onRate: (section: Section, value: number) =>
      void vm.submitSignificance(section, value).then(redraw),
    onDecision: (kind: string) => {
      vm.requestDecision(kind);
      redraw();
    },
    onConfirmDecision: () => void vm.confirmDecision().then(redraw),
    onCancelDecision: () => {
      vm.cancelDecision();
      redraw();
    },
  };

  function redraw(): void {
    if (disposed) return;
    root.textContent = "";
    root.appendChild(renderCase(vm, callbacks));
  }

  const timer = window.setInterval(() => {
    void vm.load().then(redraw);
  }, pollMs);
  void vm.load().then(redraw);
  return () => {
    disposed = true;
    window.clearInterval(timer);
  };
}

export async function start(root: HTMLElement): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const baseUrl = params.get("api") ?? "";
  const api = new CockpitApi(baseUrl, promptReviewerId());
  const caseId = params.get("case");
  if (!caseId) {
    await showQueue(root, api);
    return;
  }
  const vm = new CockpitViewModel(api, caseId);
  mountCaseView(root, vm, getPollInterval());
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  void start(document.getElementById("app")!);
}
