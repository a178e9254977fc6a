import type { ApiErrorDoc } from "../api.ts";
import { escapeHtml } from "../format.ts";

export function renderLoading(): string {
  return `<p class="loading">Loading…</p>`;
}

export function renderNotFound(title: string, message: string): string {
  return (
    `<section class="panel not-found"><h2>${escapeHtml(title)}</h2>` +
    `<p>${escapeHtml(message)}</p>` +
    `<p><a href="/" data-nav="/">Start a new session</a></p></section>`
  );
}

/** Inline banner for API diagnostics, naming the error class and the
 * offending file and line when the service reports them. */
export function renderErrorBanner(detail: ApiErrorDoc): string {
  const location: string[] = [];
  if (detail.file) {
    location.push(`${detail.file} file`);
  }
  if (detail.line !== null && detail.line !== undefined) {
    location.push(`line ${detail.line}`);
  }
  const suffix = location.length > 0 ? ` (${location.join(", ")})` : "";
  return (
    `<div class="banner error" role="alert"><strong>${escapeHtml(detail.error)}</strong> ` +
    `${escapeHtml(detail.message)}${escapeHtml(suffix)}</div>`
  );
}
