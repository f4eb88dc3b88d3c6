/** State and actions behind the case view. Mirrors the server's rules so the
 * UI can never offer an action the server would reject for an immutable
 * section, and so the send-original control is disabled whenever anything is
 * dirty or already edited. */

import { ApiError, CockpitApi, NetworkError } from "./api.js";
import { type CaseJson, type Section, sectionText } from "./model.js";

export type Mode = "loading" | "viewing" | "mine" | "locked" | "decided";

export class CockpitViewModel {
  caseData: CaseJson | null = null;
  /** Unsaved textarea contents, by section. Absent key = clean. */
  drafts: Partial<Record<Section, string>> = {};
  significanceDrafts: Partial<Record<Section, number>> = {};
  error: string | null = null;
  notice: string | null = null;
  outboundMessage: string | null = null;
  /** Decision kind awaiting confirmation (follow-up B shows its fixed text). */
  pendingDecision: string | null = null;

  constructor(
    readonly api: CockpitApi,
    readonly caseId: string,
  ) {}

  get mode(): Mode {
    const data = this.caseData;
    if (!data) return "loading";
    const state = data.state;
    if (state.kind === "decided") return "decided";
    if (state.kind === "under_review") {
      return state.reviewer_id === this.api.reviewerId ? "mine" : "locked";
    }
    return "viewing";
  }

  get claimable(): boolean {
    return this.caseData?.state.kind === "awaiting_oversight";
  }

  /** Current server-side text of a section (working note). */
  currentText(section: Section): string {
    if (!this.caseData) return "";
    return sectionText(this.caseData.working_note, section);
  }

  draftText(section: Section): string {
    return this.drafts[section] ?? this.currentText(section);
  }

  setDraft(section: Section, text: string): void {
    if (text === this.currentText(section)) delete this.drafts[section];
    else this.drafts[section] = text;
  }

  isDirty(section: Section): boolean {
    return section in this.drafts;
  }

  anyDirty(): boolean {
    return Object.keys(this.drafts).length > 0;
  }

  /** Mirror of the server's decision rules. */
  canSendOriginal(): boolean {
    return this.mode === "mine" && !this.anyDirty() && (this.caseData?.edits.length ?? 0) === 0;
  }

  canSendEdited(): boolean {
    return this.mode === "mine" && !this.anyDirty() && (this.caseData?.edits.length ?? 0) > 0;
  }

  canRequestFollowUp(): boolean {
    return this.mode === "mine";
  }

  private fail(err: unknown): void {
    if (err instanceof ApiError) this.error = `${err.code}: ${err.detail}`;
    else if (err instanceof NetworkError) this.error = err.message;
    else this.error = String(err);
  }

  /** Fetch the case; drafts survive a refresh (polling must not clobber). */
  async load(): Promise<void> {
    this.error = null;
    try {
      this.caseData = await this.api.getCase(this.caseId);
    } catch (err) {
      this.fail(err);
    }
  }

  async claim(): Promise<void> {
    this.error = null;
    try {
      this.caseData = await this.api.claim(this.caseId);
      this.notice = "Case claimed; the lease is yours.";
    } catch (err) {
      this.fail(err);
      await this.load();
    }
  }

  /** Optimistic submit: the server echo becomes the new truth. A stale edit
   * rolls the section back to the server's content with a visible notice. */
  async submitEdit(section: Section): Promise<void> {
    if (!this.caseData || !this.isDirty(section)) return;
    this.error = null;
    const before = this.currentText(section);
    const after = this.drafts[section] ?? "";
    try {
      this.caseData = await this.api.submitEdit(this.caseId, section, before, after);
      delete this.drafts[section];
      this.notice = `Saved ${section}.`;
    } catch (err) {
      if (err instanceof ApiError && err.code === "stale_edit") {
        delete this.drafts[section];
        await this.load();
        this.notice = `Someone changed ${section} since you loaded it; reloaded the latest version.`;
        return;
      }
      this.fail(err);
    }
  }

  async submitSignificance(section: Section, value: number): Promise<void> {
    this.error = null;
    try {
      this.caseData = await this.api.submitSignificance(this.caseId, section, value);
      this.significanceDrafts[section] = value;
      this.notice = `Rated ${section} significance ${value}.`;
    } catch (err) {
      this.fail(err);
    }
  }

  requestDecision(kind: string): void {
    this.pendingDecision = kind;
  }

  cancelDecision(): void {
    this.pendingDecision = null;
  }

  async confirmDecision(): Promise<void> {
    if (!this.pendingDecision) return;
    this.error = null;
    try {
      const result = await this.api.submitDecision(this.caseId, this.pendingDecision);
      this.outboundMessage = result.outbound_message;
      this.pendingDecision = null;
      await this.load();
    } catch (err) {
      this.pendingDecision = null;
      this.fail(err);
    }
  }
}
