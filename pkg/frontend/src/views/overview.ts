/** Session overview: rule list, dispersion and pyramid plots, and the
 * paginated data coverage table. */

import type { CoveragePageDoc, CoverageRowDoc, OverviewDoc } from "../api.ts";
import { exportUrl } from "../api.ts";
import { pyramidSvg, scatterSvg } from "../charts.ts";
import {
  bracketDegree,
  channelClass,
  describeValues,
  escapeHtml,
  num,
} from "../format.ts";
import { rulePath } from "../router.ts";

function sessionHeader(doc: OverviewDoc): string {
  const algorithm = doc.algorithm;
  const labels =
    algorithm.dialect === "fuzzy" && algorithm.num_labels !== null
      ? `, ${algorithm.num_labels} labels`
      : "";
  const warnings =
    doc.dataset.range_warning_count > 0
      ? ` <span class="warning">${doc.dataset.range_warning_count} value(s) outside declared ranges</span>`
      : "";
  const distribution = doc.dataset.class_distribution
    .map((entry) => `${escapeHtml(entry.value)}: ${entry.count}`)
    .join(", ");
  return `
<header class="session-header">
  <h2>${escapeHtml(doc.dataset.relation)}</h2>
  <p>${doc.dataset.example_count} examples, target ${escapeHtml(doc.dataset.target)}
  (${distribution})${warnings}</p>
  <p>Algorithm ${escapeHtml(algorithm.name)} (${algorithm.dialect}${labels})
  <a class="button" href="${exportUrl(doc.id)}" download>Download report bundle</a></p>
</header>`;
}

function ruleTable(doc: OverviewDoc): string {
  const rows = doc.rules
    .map((rule) => {
      const target = rulePath(doc.id, rule.id);
      return (
        `<tr class="rule-row" data-nav="${escapeHtml(target)}" tabindex="0">` +
        `<td>${rule.id}</td>` +
        `<td class="antecedent">${escapeHtml(rule.antecedent)}</td>` +
        `<td>${escapeHtml(rule.consequent)}</td>` +
        `<td class="num">${num(rule.measures.tpr)}</td>` +
        `<td class="num">${num(rule.measures.fpr)}</td>` +
        `<td class="num">${num(rule.measures.confidence)}</td>` +
        `<td class="num">${num(rule.measures.wracc_norm)}</td></tr>`
      );
    })
    .join("");
  return `
<section class="panel rules">
  <h3>Rules (${doc.rules.length})</h3>
  <table class="rule-list">
    <thead><tr><th>Id</th><th>Antecedent</th><th>Consequent</th>
    <th>TPr</th><th>FPr</th><th>Conf</th><th>WRAcc</th></tr></thead>
    <tbody>${rows}</tbody>
  </table>
</section>`;
}

function plotRow(doc: OverviewDoc): string {
  return `
<section class="panel plots">
  <div class="plot-row">
    <figure>${scatterSvg(doc.scatter)}</figure>
    <figure>${pyramidSvg(doc.pyramid)}</figure>
  </div>
</section>`;
}

function coverageChips(row: CoverageRowDoc, fuzzy: boolean): string {
  return row.rules
    .map((chip) => {
      const degree = fuzzy ? ` ${bracketDegree(chip.degree)}` : "";
      return (
        `<span class="chip ${channelClass(chip.channel)}" ` +
        `title="rule ${chip.rule_id}, ${chip.channel}">${chip.rule_id}${degree}</span>`
      );
    })
    .join("");
}

function coverageTable(doc: OverviewDoc, page: CoveragePageDoc): string {
  const fuzzy = page.dialect === "fuzzy";
  const attributes = doc.dataset.attributes;
  const rows = page.rows
    .map((row) => {
      const expansion = escapeHtml(describeValues(attributes, row.values));
      return (
        `<tr class="data-row" title="${expansion}">` +
        `<td class="num">${row.example_index}` +
        `<span class="expand">${expansion}</span></td>` +
        `<td>${escapeHtml(row.class)}</td>` +
        `<td class="rule-chips">${coverageChips(row, fuzzy)}</td></tr>`
      );
    })
    .join("");
  const first = page.total === 0 ? 0 : page.offset + 1;
  const last = page.offset + page.rows.length;
  const prevOffset = Math.max(page.offset - page.limit, 0);
  const nextOffset = page.offset + page.limit;
  const prevDisabled = page.offset === 0 ? " disabled" : "";
  const nextDisabled = nextOffset >= page.total ? " disabled" : "";
  return `
<section class="panel coverage">
  <h3>Data coverage</h3>
  <div class="pager">
    <button type="button" data-page="${prevOffset}"${prevDisabled}>Previous</button>
    <span>Examples ${first} to ${last} of ${page.total}</span>
    <button type="button" data-page="${nextOffset}"${nextDisabled}>Next</button>
  </div>
  <table class="coverage-table">
    <thead><tr><th>Example</th><th>Class</th><th>Covering rules</th></tr></thead>
    <tbody>${rows}</tbody>
  </table>
</section>`;
}

export function renderOverview(doc: OverviewDoc, page: CoveragePageDoc): string {
  return (
    sessionHeader(doc) + ruleTable(doc) + plotRow(doc) + coverageTable(doc, page)
  );
}
