/** Per-rule detail: contingency and measure tables, the rule's position
 * in the dispersion plot, and the covered examples. All figures are API
 * values verbatim; fuzzy sessions add a bracketed degree column that
 * crisp sessions omit. */

import type { OverviewDoc, RuleDetailDoc } from "../api.ts";
import { ruleDotSvg } from "../charts.ts";
import {
  bracketDegree,
  cellText,
  channelClass,
  escapeHtml,
  num,
} from "../format.ts";
import { overviewPath } from "../router.ts";

function contingencyTable(detail: RuleDetailDoc): string {
  const table = detail.rule.table;
  const positive = escapeHtml(detail.rule.consequent);
  return `
<table class="contingency">
  <thead><tr><th></th><th>${positive}</th><th>Other classes</th></tr></thead>
  <tbody>
    <tr><th>Covered</th><td class="cell-tp">${table.tp}</td>
      <td class="cell-fp">${table.fp}</td></tr>
    <tr><th>Not covered</th><td class="cell-fn">${table.fn}</td>
      <td class="cell-tn">${table.tn}</td></tr>
    <tr><th>Total</th><td class="num">${table.positives}</td>
      <td class="num">${table.negatives}</td></tr>
  </tbody>
</table>
<p class="table-note">${table.total} examples in total</p>`;
}

function measureTable(detail: RuleDetailDoc): string {
  const measures = detail.rule.measures;
  const rows: [string, number][] = [
    ["TPr", measures.tpr],
    ["FPr", measures.fpr],
    ["Confidence", measures.confidence],
    ["WRAcc", measures.wracc_raw],
    ["WRAcc (normalized)", measures.wracc_norm],
  ];
  const body = rows
    .map(([label, value]) => `<tr><th>${label}</th><td class="num">${num(value)}</td></tr>`)
    .join("");
  return `<table class="measures"><tbody>${body}</tbody></table>`;
}

function coveredTable(detail: RuleDetailDoc, overview: OverviewDoc): string {
  const fuzzy = detail.dialect === "fuzzy";
  const attributeHeaders = overview.dataset.attributes
    .map((attribute) => `<th>${escapeHtml(attribute.name)}</th>`)
    .join("");
  const degreeHeader = fuzzy ? "<th>Degree</th>" : "";
  const rows = detail.covered
    .map((entry) => {
      const cells = entry.values
        .map((value) => `<td>${escapeHtml(cellText(value))}</td>`)
        .join("");
      const degreeCell = fuzzy
        ? `<td class="num degree">${bracketDegree(entry.degree)}</td>`
        : "";
      return (
        `<tr class="covered-row ${channelClass(entry.channel)}">` +
        `<td class="num">${entry.example_index}</td>${cells}${degreeCell}</tr>`
      );
    })
    .join("");
  return `
<section class="panel covered">
  <h3>Covered examples (${detail.covered.length})</h3>
  <table class="covered-table">
    <thead><tr><th>Example</th>${attributeHeaders}${degreeHeader}</tr></thead>
    <tbody>${rows}</tbody>
  </table>
</section>`;
}

export function renderRuleDetail(
  detail: RuleDetailDoc,
  overview: OverviewDoc,
): string {
  const rule = detail.rule;
  const point = overview.scatter.points.find((p) => p.rule_id === rule.id);
  const plot = point
    ? `<section class="panel plots"><figure>${ruleDotSvg(point)}</figure></section>`
    : "";
  return `
<header class="session-header">
  <h2>${escapeHtml(rule.name)}</h2>
  <p class="rule-text">IF ${escapeHtml(rule.antecedent)} THEN ${escapeHtml(rule.consequent)}</p>
  <p><a href="${escapeHtml(overviewPath(detail.session_id))}"
    data-nav="${escapeHtml(overviewPath(detail.session_id))}">Back to overview</a></p>
</header>
<section class="panel quality">
  <div class="table-row">
    ${contingencyTable(detail)}
    ${measureTable(detail)}
  </div>
</section>
${plot}
${coveredTable(detail, overview)}`;
}
