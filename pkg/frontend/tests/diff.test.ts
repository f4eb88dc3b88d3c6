import { describe, expect, it } from "vitest";

import { diffWords, hasChanges } from "../src/diff.js";

describe("diffWords", () => {
  it("identical texts yield a single same-span", () => {
    const spans = diffWords("rest and fluids", "rest and fluids");
    expect(spans).toEqual([{ kind: "same", text: "rest and fluids" }]);
    expect(hasChanges(spans)).toBe(false);
  });

  it("an appended phrase shows as added", () => {
    const spans = diffWords("rest", "rest and safeguarding information");
    expect(spans.filter((s) => s.kind === "added").map((s) => s.text).join("")).toContain(
      "safeguarding",
    );
    expect(spans.some((s) => s.kind === "removed")).toBe(false);
  });

  it("a removed phrase shows as removed", () => {
    const spans = diffWords("long justification of the differential", "long justification");
    expect(spans.filter((s) => s.kind === "removed").map((s) => s.text).join(" ")).toContain(
      "differential",
    );
  });

  it("replacement produces both kinds and reconstructs both sides", () => {
    const before = "review in 48 hours";
    const after = "review in one week";
    const spans = diffWords(before, after);
    const left = spans.filter((s) => s.kind !== "added").map((s) => s.text).join("");
    const right = spans.filter((s) => s.kind !== "removed").map((s) => s.text).join("");
    expect(left).toBe(before);
    expect(right).toBe(after);
  });

  it("handles empty sides", () => {
    expect(diffWords("", "new text")).toEqual([{ kind: "added", text: "new text" }]);
    expect(diffWords("old", "")).toEqual([{ kind: "removed", text: "old" }]);
    expect(diffWords("", "")).toEqual([]);
  });
});
