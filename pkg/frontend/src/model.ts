/** Shapes of the oversight API's canonical JSON bodies, plus the canonical
 * serialization helpers the edit workflow depends on. `canonicalJson` must
 * produce byte-identical text to the server's key-ordered two-space format,
 * because edit requests carry the current section text as an optimistic
 * `before` snapshot. */

export type Json = null | boolean | number | string | Json[] | { [key: string]: Json };

export interface TurnJson {
  index: number;
  speaker: "patient" | "clinician";
  text: string;
  phase: string | null;
  screening: Json;
}

export interface NoteJson {
  chief_complaint: string | null;
  subjective: Json;
  objective: Json;
  assessment: Json;
  plan: Json;
  patient_message: string | null;
  [key: string]: Json;
}

export interface CaseStateJson {
  kind: string;
  reviewer_id: string | null;
  lease_expiry: string | null;
}

export interface EditJson {
  section: string;
  before: string;
  after: string;
  timestamp: string;
}

export interface DecisionJson {
  kind: string;
  reviewer_id: string;
  timestamp: string;
}

export interface CaseJson {
  case_id: string;
  transcript: { turns: TurnJson[] };
  draft_note: NoteJson;
  working_note: NoteJson;
  message_b_text: string;
  state: CaseStateJson;
  edits: EditJson[];
  decision: DecisionJson | null;
  significance_ratings: { [section: string]: number };
}

export interface QueueEntryJson {
  position: number;
  case_id: string;
  state: CaseStateJson;
  chief_complaint: string | null;
}

/** Sections the server accepts edits for. The transcript and message B are
 * deliberately absent: the UI cannot even name them as edit targets. */
export const EDITABLE_SECTIONS = [
  "chief_complaint",
  "subjective",
  "objective",
  "assessment",
  "plan",
  "patient_message",
] as const;

export type Section = (typeof EDITABLE_SECTIONS)[number];

export const SECTION_LABELS: Record<Section, string> = {
  chief_complaint: "Chief complaint",
  subjective: "Subjective",
  objective: "Objective",
  assessment: "Assessment",
  plan: "Plan",
  patient_message: "Patient message (A)",
};

const FREE_TEXT_SECTIONS: ReadonlySet<Section> = new Set([
  "chief_complaint",
  "patient_message",
]);

function escapeString(value: string): string {
  // JSON.stringify matches the server's escaping for strings (control
  // characters escaped, non-ASCII left as-is).
  return JSON.stringify(value);
}

function renderValue(value: Json, indent: number): string {
  const pad = " ".repeat(indent);
  const childPad = " ".repeat(indent + 2);
  if (value === null) return "null";
  if (typeof value === "boolean") return value ? "true" : "false";
  if (typeof value === "number") {
    if (!Number.isInteger(value)) {
      throw new Error(`non-integer numbers are not canonical: ${value}`);
    }
    return String(value);
  }
  if (typeof value === "string") return escapeString(value);
  if (Array.isArray(value)) {
    if (value.length === 0) return "[]";
    const items = value.map((item) => childPad + renderValue(item, indent + 2));
    return "[\n" + items.join(",\n") + "\n" + pad + "]";
  }
  const keys = Object.keys(value).sort();
  if (keys.length === 0) return "{}";
  const items = keys.map(
    (key) => childPad + escapeString(key) + ": " + renderValue(value[key] as Json, indent + 2),
  );
  return "{\n" + items.join(",\n") + "\n" + pad + "}";
}

/** Key-ordered, two-space-indented JSON with a trailing newline. */
export function canonicalJson(value: Json): string {
  return renderValue(value, 0) + "\n";
}

/** The editable text of one note section; mirrors the server's rendering. */
export function sectionText(note: NoteJson, section: Section): string {
  if (FREE_TEXT_SECTIONS.has(section)) {
    const raw = note[section];
    return typeof raw === "string" ? raw : "";
  }
  return canonicalJson(note[section] ?? null);
}
