/** UI crawl: in every reachable state, the transcript pane and message B
 * carry no edit affordance of any kind, and every state renders read-only at
 * minimum. */

import { describe, expect, it } from "vitest";

import { CockpitApi } from "../src/api.js";
import { renderCase, type RenderCallbacks } from "../src/render.js";
import { CockpitViewModel } from "../src/viewmodel.js";
import { makeCase } from "./fixtures.js";

const NOOP_CALLBACKS: RenderCallbacks = {
  onClaim: () => {},
  onDraftChange: () => {},
  onSaveEdit: () => {},
  onRate: () => {},
  onDecision: () => {},
  onConfirmDecision: () => {},
  onCancelDecision: () => {},
};

const STATES: { kind: string; reviewer: string | null }[] = [
  { kind: "note_drafted", reviewer: null },
  { kind: "awaiting_oversight", reviewer: null },
  { kind: "under_review", reviewer: "rev-1" },
  { kind: "under_review", reviewer: "rev-other" },
  { kind: "decided", reviewer: "rev-1" },
];

function renderState(kind: string, reviewer: string | null): HTMLElement {
  const vm = new CockpitViewModel(new CockpitApi("", "rev-1"), "case-1");
  vm.caseData = makeCase("case-1", kind, reviewer);
  return renderCase(vm, NOOP_CALLBACKS);
}

const EDIT_AFFORDANCES = "textarea, input, select, button, [contenteditable]";

describe("immutability affordances", () => {
  it.each(STATES)("transcript pane has no edit affordance in $kind/$reviewer", (state) => {
    const root = renderState(state.kind, state.reviewer);
    const transcript = root.querySelector(".pane-transcript");
    expect(transcript).not.toBeNull();
    expect(transcript!.querySelectorAll(EDIT_AFFORDANCES).length).toBe(0);
  });

  it.each(STATES)("message B has no edit affordance in $kind/$reviewer", (state) => {
    const root = renderState(state.kind, state.reviewer);
    const messageB = root.querySelector(".message-b");
    expect(messageB).not.toBeNull();
    expect(messageB!.querySelectorAll(EDIT_AFFORDANCES).length).toBe(0);
  });

  it("no rendered input is ever wired to transcript or message_b sections", () => {
    // belt and braces: the section vocabulary itself excludes them
    for (const state of STATES) {
      const root = renderState(state.kind, state.reviewer);
      for (const card of root.querySelectorAll(".section-card")) {
        expect(card.className).not.toMatch(/transcript|message_b/);
      }
    }
  });
});

describe("state-dependent affordances", () => {
  it("editors exist only while this reviewer holds the lease", () => {
    expect(renderState("under_review", "rev-1").querySelectorAll("textarea").length).toBe(6);
    for (const [kind, reviewer] of [
      ["awaiting_oversight", null],
      ["under_review", "rev-other"],
      ["decided", "rev-1"],
    ] as const) {
      expect(renderState(kind, reviewer).querySelectorAll("textarea").length).toBe(0);
    }
  });

  it("a foreign lease shows the lock banner and no decision buttons", () => {
    const root = renderState("under_review", "rev-other");
    expect(root.querySelector(".lock-banner")?.textContent).toContain("rev-other");
    expect(root.querySelectorAll(".decision-button").length).toBe(0);
  });

  it("decided cases show the decision badge and nothing actionable", () => {
    const root = renderState("decided", "rev-1");
    expect(root.querySelector(".decision-badge")?.textContent).toContain("send_a");
    expect(root.querySelectorAll("button").length).toBe(0);
  });

  it("claimable cases offer exactly the claim action", () => {
    const root = renderState("awaiting_oversight", null);
    const buttons = [...root.querySelectorAll("button")];
    expect(buttons.map((b) => b.className)).toEqual(["claim-button"]);
  });

  it("diff highlighting marks working-vs-draft changes", () => {
    const vm = new CockpitViewModel(new CockpitApi("", "rev-1"), "case-1");
    const data = makeCase("case-1", "under_review", "rev-1");
    data.working_note.patient_message = "Thank you. An edited message with safeguarding advice.";
    vm.caseData = data;
    const root = renderCase(vm, NOOP_CALLBACKS);
    const messagePane = root.querySelector(".pane-messages")!;
    expect(messagePane.querySelectorAll("ins.diff-added").length).toBeGreaterThan(0);
    expect(messagePane.querySelectorAll("del.diff-removed").length).toBeGreaterThan(0);
  });
});

describe("decision confirmation preview", () => {
  it("follow-up B confirmation shows the fixed message text verbatim", () => {
    const vm = new CockpitViewModel(new CockpitApi("", "rev-1"), "case-1");
    vm.caseData = makeCase("case-1", "under_review", "rev-1");
    vm.requestDecision("request_follow_up_b");
    const root = renderCase(vm, NOOP_CALLBACKS);
    const preview = root.querySelector(".message-b-preview");
    expect(preview?.textContent).toBe(vm.caseData.message_b_text);
  });

  it("send-edited confirmation has no B preview", () => {
    const vm = new CockpitViewModel(new CockpitApi("", "rev-1"), "case-1");
    vm.caseData = makeCase("case-1", "under_review", "rev-1");
    vm.caseData.edits.push({
      section: "plan", before: "a", after: "b", timestamp: "2030-01-01T00:00:00+00:00",
    });
    vm.requestDecision("send_edited_a");
    const root = renderCase(vm, NOOP_CALLBACKS);
    expect(root.querySelector(".decision-confirm")).not.toBeNull();
    expect(root.querySelector(".message-b-preview")).toBeNull();
  });
});
