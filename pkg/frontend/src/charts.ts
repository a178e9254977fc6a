/** Client-rendered SVG charts built from the API's plot documents.
 * Geometry is computed here; every number a viewer reads (tooltips,
 * labels) is the API value verbatim. */

import type { PyramidDoc, ScatterDoc, ScatterPointDoc } from "./api.ts";
import { escapeHtml, num } from "./format.ts";

export const CORRECT_COLOR = "#1f77b4";
export const INCORRECT_COLOR = "#ff7f0e";
const REGION_COLOR = "#d62728";

function round(value: number): string {
  return value.toFixed(2).replace(/\.?0+$/, "");
}

interface Frame {
  width: number;
  height: number;
  left: number;
  right: number;
  top: number;
  bottom: number;
}

const SCATTER_FRAME: Frame = {
  width: 460,
  height: 380,
  left: 52,
  right: 18,
  top: 30,
  bottom: 46,
};

function scaleX(frame: Frame, value: number): number {
  return frame.left + (value / 100) * (frame.width - frame.left - frame.right);
}

function scaleY(frame: Frame, value: number): number {
  return (
    frame.height -
    frame.bottom -
    (value / 100) * (frame.height - frame.top - frame.bottom)
  );
}

function scatterPoint(frame: Frame, point: ScatterPointDoc): string {
  const cx = round(scaleX(frame, point.x));
  const cy = round(scaleY(frame, point.y));
  const cls = point.low_quality ? "pt pt-low" : "pt";
  const tooltip = escapeHtml(
    `rule ${point.rule_id}: FPr ${num(point.x)}%, TPr ${num(point.y)}%`,
  );
  return (
    `<g class="${cls}"><title>${tooltip}</title>` +
    `<circle cx="${cx}" cy="${cy}" r="5" fill="${CORRECT_COLOR}"></circle>` +
    `<text class="pt-label" x="${round(scaleX(frame, point.x) + 8)}" ` +
    `y="${round(scaleY(frame, point.y) - 8)}">${point.rule_id}</text></g>`
  );
}

function scatterAxes(frame: Frame): string {
  const parts: string[] = [];
  const x0 = frame.left;
  const x1 = frame.width - frame.right;
  const y0 = frame.height - frame.bottom;
  const y1 = frame.top;
  parts.push(
    `<line class="axis" x1="${x0}" y1="${y0}" x2="${x1}" y2="${y0}"></line>`,
    `<line class="axis" x1="${x0}" y1="${y0}" x2="${x0}" y2="${y1}"></line>`,
  );
  for (let tick = 0; tick <= 100; tick += 20) {
    const tx = round(scaleX(frame, tick));
    const ty = round(scaleY(frame, tick));
    parts.push(
      `<line class="tick" x1="${tx}" y1="${y0}" x2="${tx}" y2="${y0 + 5}"></line>`,
      `<text class="tick-label" x="${tx}" y="${y0 + 18}" text-anchor="middle">${tick}</text>`,
      `<line class="tick" x1="${x0 - 5}" y1="${ty}" x2="${x0}" y2="${ty}"></line>`,
      `<text class="tick-label" x="${x0 - 8}" y="${ty}" text-anchor="end" dominant-baseline="middle">${tick}</text>`,
    );
  }
  const midX = round((x0 + x1) / 2);
  const midY = round((y0 + y1) / 2);
  parts.push(
    `<text class="axis-label" x="${midX}" y="${frame.height - 8}" text-anchor="middle">FPr (%)</text>`,
    `<text class="axis-label" x="14" y="${midY}" text-anchor="middle" transform="rotate(-90 14 ${midY})">TPr (%)</text>`,
  );
  return parts.join("");
}

/** Rules at (FPr%, TPr%); the region at or below the diagonal is shaded
 * as low quality. */
export function scatterSvg(scatter: ScatterDoc, title = "Rule dispersion"): string {
  const frame = SCATTER_FRAME;
  const region = [
    [scaleX(frame, 0), scaleY(frame, 0)],
    [scaleX(frame, 100), scaleY(frame, 0)],
    [scaleX(frame, 100), scaleY(frame, 100)],
  ]
    .map(([x, y]) => `${round(x!)},${round(y!)}`)
    .join(" ");
  const body = [
    `<text class="chart-title" x="${frame.width / 2}" y="18" text-anchor="middle">${escapeHtml(title)}</text>`,
    `<polygon class="low-region" points="${region}" fill="${REGION_COLOR}" opacity="0.15"></polygon>`,
    `<line class="diagonal" x1="${round(scaleX(frame, 0))}" y1="${round(scaleY(frame, 0))}" ` +
      `x2="${round(scaleX(frame, 100))}" y2="${round(scaleY(frame, 100))}" stroke-dasharray="4 3"></line>`,
    scatterAxes(frame),
    ...scatter.points.map((point) => scatterPoint(frame, point)),
  ].join("");
  return (
    `<svg class="chart scatter-chart" viewBox="0 0 ${frame.width} ${frame.height}" ` +
    `role="img" aria-label="${escapeHtml(title)}">${body}</svg>`
  );
}

/** Single-rule variant of the dispersion plot for the detail view. */
export function ruleDotSvg(point: ScatterPointDoc): string {
  return scatterSvg(
    { points: [point], diagonal_region: "y<=x" },
    `Rule ${point.rule_id} position`,
  );
}

/** Mirrored horizontal bars: TPr grows left in blue, FPr grows right in
 * orange, one row per rule in file order. */
export function pyramidSvg(pyramid: PyramidDoc): string {
  const width = 460;
  const top = 40;
  const rowHeight = 28;
  const bottom = 44;
  const gutter = 44;
  const rightPad = 16;
  const half = (width - gutter - rightPad) / 2;
  const cx = gutter + half;
  const rows = pyramid.rows;
  const height = top + Math.max(rows.length, 1) * rowHeight + bottom;
  const parts: string[] = [];
  parts.push(
    `<text class="chart-title" x="${width / 2}" y="18" text-anchor="middle">TPr and FPr per rule</text>`,
    `<g class="legend"><rect x="${gutter}" y="26" width="10" height="10" fill="${CORRECT_COLOR}"></rect>` +
      `<text x="${gutter + 14}" y="35">TPr</text>` +
      `<rect x="${gutter + 54}" y="26" width="10" height="10" fill="${INCORRECT_COLOR}"></rect>` +
      `<text x="${gutter + 68}" y="35">FPr</text></g>`,
  );
  rows.forEach((row, i) => {
    const y = top + i * rowHeight + 5;
    const tprWidth = row.tpr * half;
    const fprWidth = row.fpr * half;
    const tooltip = escapeHtml(
      `rule ${row.rule_id}: TPr ${num(row.tpr)}, FPr ${num(row.fpr)}`,
    );
    parts.push(
      `<g class="pyramid-row"><title>${tooltip}</title>` +
        `<text class="row-label" x="${gutter - 8}" y="${y + 13}" text-anchor="end">${row.rule_id}</text>` +
        `<rect class="bar-tpr" x="${round(cx - tprWidth)}" y="${y}" width="${round(tprWidth)}" height="18" fill="${CORRECT_COLOR}"></rect>` +
        `<rect class="bar-fpr" x="${cx}" y="${y}" width="${round(fprWidth)}" height="18" fill="${INCORRECT_COLOR}"></rect></g>`,
    );
  });
  const axisY = height - bottom + 10;
  parts.push(`<line class="axis" x1="${cx}" y1="${top}" x2="${cx}" y2="${axisY - 6}"></line>`);
  for (const fraction of [-1, -0.5, 0, 0.5, 1]) {
    const x = round(cx + fraction * half);
    parts.push(
      `<text class="tick-label" x="${x}" y="${axisY + 8}" text-anchor="middle">${Math.abs(fraction)}</text>`,
    );
  }
  return (
    `<svg class="chart pyramid-chart" viewBox="0 0 ${width} ${height}" role="img" ` +
    `aria-label="TPr and FPr per rule">${parts.join("")}</svg>`
  );
}
