/** Display helpers. Numbers pass through String() untouched so every
 * rendered figure is the API value verbatim. */

import type { AttributeDoc, CellValue } from "./api.ts";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function num(value: number): string {
  return String(value);
}

export function bracketDegree(degree: number): string {
  return `[${num(degree)}]`;
}

export function cellText(value: CellValue): string {
  return value === null ? "?" : String(value);
}

export function channelClass(channel: "correct" | "incorrect"): string {
  return channel === "correct" ? "correct" : "incorrect";
}

/** name=value pairs for the hover expansion of a data row. */
export function describeValues(
  attributes: AttributeDoc[],
  values: CellValue[],
): string {
  return attributes
    .map((attribute, i) => `${attribute.name}=${cellText(values[i] ?? null)}`)
    .join(", ");
}
