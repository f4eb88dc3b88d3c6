/** DOM rendering for the case view. Edit affordances exist only for the six
 * editable sections and only while this reviewer holds the lease; the
 * transcript pane and message B are built from plain text nodes, so there is
 * no code path that could submit an edit against them. */

import { diffWords } from "./diff.js";
import {
  EDITABLE_SECTIONS,
  SECTION_LABELS,
  type CaseJson,
  type Section,
  sectionText,
} from "./model.js";
import type { CockpitViewModel } from "./viewmodel.js";

export interface RenderCallbacks {
  onClaim(): void;
  onDraftChange(section: Section, text: string): void;
  onSaveEdit(section: Section): void;
  onRate(section: Section, value: number): void;
  onDecision(kind: string): void;
  onConfirmDecision(): void;
  onCancelDecision(): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className = "",
  text = "",
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text) node.textContent = text;
  return node;
}

function diffView(before: string, after: string): HTMLElement {
  const container = el("div", "diff-view");
  for (const span of diffWords(before, after)) {
    if (span.kind === "same") {
      container.appendChild(document.createTextNode(span.text));
    } else if (span.kind === "added") {
      container.appendChild(el("ins", "diff-added", span.text));
    } else {
      container.appendChild(el("del", "diff-removed", span.text));
    }
  }
  return container;
}

function stateBadge(data: CaseJson): HTMLElement {
  const badge = el("span", `badge state-${data.state.kind}`, data.state.kind);
  return badge;
}

function transcriptPane(data: CaseJson): HTMLElement {
  const pane = el("section", "pane pane-transcript");
  pane.appendChild(el("h2", "", "Consultation transcript"));
  const list = el("div", "transcript-turns");
  for (const turn of data.transcript.turns) {
    const row = el("div", `turn turn-${turn.speaker}`);
    row.appendChild(el("span", "turn-speaker", turn.speaker));
    row.appendChild(el("span", "turn-text", turn.text));
    list.appendChild(row);
  }
  pane.appendChild(list);
  return pane;
}

function significanceControl(
  vm: CockpitViewModel,
  section: Section,
  callbacks: RenderCallbacks,
): HTMLElement {
  const wrap = el("div", "significance");
  const stored = vm.caseData?.significance_ratings[section];
  wrap.appendChild(
    el("span", "significance-stored",
       stored ? `significance: ${stored}/5` : "significance: unrated"),
  );
  const select = el("select", "significance-select");
  for (let value = 1; value <= 5; value++) {
    const option = el("option", "", String(value));
    option.value = String(value);
    if (value === (vm.significanceDrafts[section] ?? stored ?? 3)) option.selected = true;
    select.appendChild(option);
  }
  const button = el("button", "rate-button", "Rate");
  button.addEventListener("click", () => callbacks.onRate(section, Number(select.value)));
  wrap.appendChild(select);
  wrap.appendChild(button);
  return wrap;
}

function sectionCard(
  vm: CockpitViewModel,
  section: Section,
  callbacks: RenderCallbacks,
): HTMLElement {
  const data = vm.caseData!;
  const card = el("div", `section-card section-${section}`);
  const header = el("div", "section-header");
  header.appendChild(el("h3", "", SECTION_LABELS[section]));
  if (vm.isDirty(section)) header.appendChild(el("span", "dirty-marker", "unsaved"));
  card.appendChild(header);

  card.appendChild(
    diffView(sectionText(data.draft_note, section), sectionText(data.working_note, section)),
  );

  if (vm.mode === "mine") {
    const textarea = el("textarea", "section-editor");
    textarea.value = vm.draftText(section);
    textarea.addEventListener("input", () =>
      callbacks.onDraftChange(section, textarea.value),
    );
    card.appendChild(textarea);
    const save = el("button", "save-button", "Save edit");
    save.disabled = !vm.isDirty(section);
    save.addEventListener("click", () => callbacks.onSaveEdit(section));
    card.appendChild(save);
    card.appendChild(significanceControl(vm, section, callbacks));
  }
  return card;
}

function decisionControls(vm: CockpitViewModel, callbacks: RenderCallbacks): HTMLElement {
  const data = vm.caseData!;
  const wrap = el("div", "decision-controls");
  wrap.appendChild(el("h3", "", "Decision"));
  if (vm.mode === "decided") {
    const decision = data.decision!;
    wrap.appendChild(el("div", "badge decision-badge", `decided: ${decision.kind}`));
    return wrap;
  }
  if (vm.mode !== "mine") {
    wrap.appendChild(
      el("p", "decision-note", "Claim the case to enable decisions."),
    );
    return wrap;
  }
  const sendA = el("button", "decision-button decision-send-a", "Send message A");
  sendA.disabled = !vm.canSendOriginal();
  sendA.addEventListener("click", () => callbacks.onDecision("send_a"));
  const sendEdited = el(
    "button",
    "decision-button decision-send-edited-a",
    "Send edited message A",
  );
  sendEdited.disabled = !vm.canSendEdited();
  sendEdited.addEventListener("click", () => callbacks.onDecision("send_edited_a"));
  const followUp = el(
    "button",
    "decision-button decision-follow-up-b",
    "Request follow-up (message B)",
  );
  followUp.addEventListener("click", () => callbacks.onDecision("request_follow_up_b"));
  wrap.appendChild(sendA);
  wrap.appendChild(sendEdited);
  wrap.appendChild(followUp);

  if (vm.pendingDecision) {
    const confirm = el("div", "decision-confirm");
    confirm.appendChild(
      el("p", "", `Confirm decision: ${vm.pendingDecision.replaceAll("_", " ")}`),
    );
    if (vm.pendingDecision === "request_follow_up_b") {
      confirm.appendChild(el("blockquote", "message-b-preview", data.message_b_text));
    }
    const yes = el("button", "confirm-button", "Confirm");
    yes.addEventListener("click", () => callbacks.onConfirmDecision());
    const no = el("button", "cancel-button", "Cancel");
    no.addEventListener("click", () => callbacks.onCancelDecision());
    confirm.appendChild(yes);
    confirm.appendChild(no);
    wrap.appendChild(confirm);
  }
  return wrap;
}

function messagesPane(vm: CockpitViewModel, callbacks: RenderCallbacks): HTMLElement {
  const data = vm.caseData!;
  const pane = el("section", "pane pane-messages");
  pane.appendChild(sectionCard(vm, "patient_message", callbacks));

  const messageB = el("div", "message-b");
  messageB.appendChild(el("h3", "", "Message B (fixed follow-up request)"));
  messageB.appendChild(el("p", "message-b-text", data.message_b_text));
  pane.appendChild(messageB);

  pane.appendChild(decisionControls(vm, callbacks));
  if (vm.outboundMessage !== null) {
    const sent = el("div", "outbound-message");
    sent.appendChild(el("h3", "", "Released to patient"));
    sent.appendChild(el("p", "", vm.outboundMessage));
    pane.appendChild(sent);
  }
  return pane;
}

export function renderCase(vm: CockpitViewModel, callbacks: RenderCallbacks): HTMLElement {
  const root = el("div", `cockpit mode-${vm.mode}`);
  if (!vm.caseData) {
    root.appendChild(el("p", "loading", vm.error ?? "Loading case..."));
    return root;
  }
  const data = vm.caseData;

  const header = el("header", "cockpit-header");
  header.appendChild(
    el("h1", "chief-complaint-banner", data.working_note.chief_complaint ?? "(no chief complaint)"),
  );
  const meta = el("div", "case-meta");
  meta.appendChild(el("span", "case-id", data.case_id));
  meta.appendChild(stateBadge(data));
  header.appendChild(meta);
  if (vm.mode === "locked") {
    header.appendChild(
      el("div", "lock-banner",
         `Under review by ${data.state.reviewer_id}; controls disabled.`),
    );
  }
  if (vm.claimable) {
    const claim = el("button", "claim-button", "Claim case");
    claim.addEventListener("click", () => callbacks.onClaim());
    header.appendChild(claim);
  }
  if (vm.error) header.appendChild(el("div", "error-banner", vm.error));
  if (vm.notice) header.appendChild(el("div", "notice-banner", vm.notice));
  root.appendChild(header);

  const panes = el("main", "panes");
  panes.appendChild(transcriptPane(data));

  const notePane = el("section", "pane pane-note");
  for (const section of EDITABLE_SECTIONS) {
    if (section === "patient_message") continue;
    notePane.appendChild(sectionCard(vm, section, callbacks));
  }
  panes.appendChild(notePane);
  panes.appendChild(messagesPane(vm, callbacks));
  root.appendChild(panes);
  return root;
}
