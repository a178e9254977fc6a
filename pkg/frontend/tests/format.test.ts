import { describe, expect, it } from "vitest";

import type { AttributeDoc } from "../src/api.ts";
import {
  bracketDegree,
  cellText,
  channelClass,
  describeValues,
  escapeHtml,
  num,
} from "../src/format.ts";

describe("number display", () => {
  it("passes API numbers through verbatim", () => {
    expect(num(0.819672131148)).toBe("0.819672131148");
    expect(num(1)).toBe("1");
    expect(num(0.11)).toBe("0.11");
  });

  it("wraps degrees in brackets", () => {
    expect(bracketDegree(0.864406779661)).toBe("[0.864406779661]");
    expect(bracketDegree(1)).toBe("[1]");
  });
});

describe("cells and channels", () => {
  it("renders missing cells as a question mark", () => {
    expect(cellText(null)).toBe("?");
    expect(cellText(5.1)).toBe("5.1");
    expect(cellText("Iris-setosa")).toBe("Iris-setosa");
  });

  it("maps channels to the two color classes", () => {
    expect(channelClass("correct")).toBe("correct");
    expect(channelClass("incorrect")).toBe("incorrect");
  });
});

describe("escapeHtml", () => {
  it("escapes markup characters", () => {
    expect(escapeHtml(`a<b & "c"`)).toBe("a&lt;b &amp; &quot;c&quot;");
  });
});

describe("describeValues", () => {
  const attributes = [
    { name: "x", kind: "real", range: [0, 1], values: null, role: "input" },
    { name: "c", kind: "categorical", range: null, values: ["a"], role: "output" },
  ] as AttributeDoc[];

  it("pairs attribute names with row values", () => {
    expect(describeValues(attributes, [0.5, "a"])).toBe("x=0.5, c=a");
  });

  it("shows missing cells in the expansion", () => {
    expect(describeValues(attributes, [null, "a"])).toBe("x=?, c=a");
  });
});
