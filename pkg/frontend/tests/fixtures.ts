/** Case fixtures mirroring the server's canonical shapes. */

import type { CaseJson, NoteJson } from "../src/model.js";

const CLEAN_SCREENING = { verdict: 1, revisions_used: 0, revision_texts: [] };

export function makeNote(): NoteJson {
  return {
    chief_complaint: "sore throat for three days",
    subjective: {
      chief_complaint: "sore throat for three days",
      hpi: {
        onset: "three days ago",
        location: "throat",
        duration: "constant",
        character: "scratchy pain",
        alleviating_aggravating: "worse when swallowing",
        radiation: "N/A",
        temporality: "steady",
        severity: "5/10",
      },
      past_medical_history: "N/A",
      surgical_history: "N/A",
      drug_history: "no regular medication",
      allergy_history: "no known allergies",
      social_history: "non-smoker",
    },
    objective: {
      vital_signs: ["temperature 37.9 C"],
      physical_examination: "N/A",
      lab_test: [],
      imaging_test_results: "N/A",
    },
    assessment: {
      analysis: "short febrile sore throat without red flags",
      differential: [
        { name: "viral pharyngitis", rank: 1 },
        { name: "strep throat", rank: 2 },
      ],
      justifications: [
        "justification for viral pharyngitis",
        "justification for strep throat",
      ],
    },
    plan: {
      investigations: ["throat swab"],
      treatments: ["rest and fluids"],
      referrals: [],
      follow_ups: ["review in 48 hours"],
      escalations: [],
    },
    patient_message:
      "Thank you for the consultation. A physician will follow up shortly.",
  };
}

export function makeCase(
  caseId: string,
  stateKind = "note_drafted",
  reviewer: string | null = null,
): CaseJson {
  const note = makeNote();
  const state =
    stateKind === "under_review"
      ? { kind: stateKind, reviewer_id: reviewer, lease_expiry: "2030-01-01T01:00:00+00:00" }
      : { kind: stateKind, reviewer_id: null, lease_expiry: null };
  return {
    case_id: caseId,
    transcript: {
      turns: [
        { index: 0, speaker: "patient", text: "My throat hurts.", phase: null, screening: null },
        {
          index: 1,
          speaker: "clinician",
          text: "How long has it hurt?",
          phase: "intake",
          screening: CLEAN_SCREENING,
        },
        { index: 2, speaker: "patient", text: "Three days now.", phase: null, screening: null },
        {
          index: 3,
          speaker: "clinician",
          text: "Any fevers at home?",
          phase: "intake",
          screening: CLEAN_SCREENING,
        },
      ],
    },
    draft_note: makeNote(),
    working_note: note,
    message_b_text:
      "Thank you for your consultation. The overseeing physician has reviewed your " +
      "case and would like to schedule a follow-up consultation to gather more " +
      "information before sharing a diagnosis and next steps.",
    state,
    edits: [],
    decision:
      stateKind === "decided"
        ? { kind: "send_a", reviewer_id: reviewer ?? "rev-x", timestamp: "2030-01-01T00:30:00+00:00" }
        : null,
    significance_ratings: {},
  };
}
