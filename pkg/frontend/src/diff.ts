/** Word-level diff between the original draft and the working text, rendered
 * in the note pane as underlined insertions and struck-through removals. */

export type DiffKind = "same" | "added" | "removed";

export interface DiffSpan {
  kind: DiffKind;
  text: string;
}

function tokenize(text: string): string[] {
  // words and whitespace runs as separate tokens, so spacing survives
  return text.match(/\S+|\s+/g) ?? [];
}

/** Longest-common-subsequence diff over word tokens. */
export function diffWords(before: string, after: string): DiffSpan[] {
  const a = tokenize(before);
  const b = tokenize(after);
  const rows = a.length + 1;
  const cols = b.length + 1;
  const lcs = new Array<number>(rows * cols).fill(0);
  for (let i = a.length - 1; i >= 0; i--) {
    for (let j = b.length - 1; j >= 0; j--) {
      lcs[i * cols + j] =
        a[i] === b[j]
          ? lcs[(i + 1) * cols + j + 1]! + 1
          : Math.max(lcs[(i + 1) * cols + j]!, lcs[i * cols + j + 1]!);
    }
  }
  const spans: DiffSpan[] = [];
  const push = (kind: DiffKind, text: string) => {
    const last = spans[spans.length - 1];
    if (last && last.kind === kind) last.text += text;
    else spans.push({ kind, text });
  };
  let i = 0;
  let j = 0;
  while (i < a.length && j < b.length) {
    if (a[i] === b[j]) {
      push("same", a[i]!);
      i++;
      j++;
    } else if (lcs[(i + 1) * cols + j]! >= lcs[i * cols + j + 1]!) {
      push("removed", a[i]!);
      i++;
    } else {
      push("added", b[j]!);
      j++;
    }
  }
  while (i < a.length) push("removed", a[i++]!);
  while (j < b.length) push("added", b[j++]!);
  return spans;
}

export function hasChanges(spans: DiffSpan[]): boolean {
  return spans.some((span) => span.kind !== "same" && span.text.trim() !== "");
}
