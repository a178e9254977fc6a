/** App bootstrap: path routing, data fetching, and event delegation.
 * Views are pure HTML-string renderers; this module owns the DOM. */

import { ApiError, createSession, getCoverage, getOverview, getRule } from "./api.ts";
import type { OverviewDoc } from "./api.ts";
import { overviewPath, parseRoute } from "./router.ts";
import type { Route } from "./router.ts";
import { renderErrorBanner, renderLoading, renderNotFound } from "./views/panels.ts";
import { renderOverview } from "./views/overview.ts";
import { renderRuleDetail } from "./views/rule.ts";
import { renderUpload } from "./views/upload.ts";

const COVERAGE_PAGE_SIZE = 100;

interface AppState {
  coverageOffset: number;
  overviewCache: { sessionId: string; doc: OverviewDoc } | null;
}

const state: AppState = { coverageOffset: 0, overviewCache: null };

function appRoot(): HTMLElement {
  const root = document.getElementById("app");
  if (!root) {
    throw new Error("missing #app container");
  }
  return root;
}

async function fetchOverview(sessionId: string): Promise<OverviewDoc> {
  if (state.overviewCache && state.overviewCache.sessionId === sessionId) {
    return state.overviewCache.doc;
  }
  const doc = await getOverview(sessionId);
  state.overviewCache = { sessionId, doc };
  return doc;
}

function describeFailure(error: unknown): string {
  if (error instanceof ApiError && error.detail) {
    return renderErrorBanner(error.detail);
  }
  const message = error instanceof Error ? error.message : String(error);
  return renderErrorBanner({ error: "RequestFailed", message, file: null, line: null });
}

async function showOverview(root: HTMLElement, sessionId: string): Promise<void> {
  try {
    const [doc, page] = await Promise.all([
      fetchOverview(sessionId),
      getCoverage(sessionId, state.coverageOffset, COVERAGE_PAGE_SIZE),
    ]);
    root.innerHTML = renderOverview(doc, page);
  } catch (error) {
    if (error instanceof ApiError && error.status === 404) {
      root.innerHTML = renderNotFound(
        "Session not found",
        "This session does not exist or the service was restarted.",
      );
      return;
    }
    root.innerHTML = describeFailure(error);
  }
}

async function showRule(
  root: HTMLElement,
  sessionId: string,
  ruleId: number,
): Promise<void> {
  try {
    const [overview, detail] = await Promise.all([
      fetchOverview(sessionId),
      getRule(sessionId, ruleId),
    ]);
    root.innerHTML = renderRuleDetail(detail, overview);
  } catch (error) {
    if (error instanceof ApiError && error.status === 404) {
      root.innerHTML = renderNotFound(
        "Not found",
        "No such rule or session.",
      );
      return;
    }
    root.innerHTML = describeFailure(error);
  }
}

async function render(): Promise<void> {
  const root = appRoot();
  const route: Route = parseRoute(window.location.pathname);
  switch (route.view) {
    case "upload":
      root.innerHTML = renderUpload();
      return;
    case "overview":
      root.innerHTML = renderLoading();
      await showOverview(root, route.sessionId);
      return;
    case "rule":
      root.innerHTML = renderLoading();
      await showRule(root, route.sessionId, route.ruleId);
      return;
    case "missing":
      root.innerHTML = renderNotFound("Page not found", `No view at ${route.path}.`);
      return;
  }
}

export function navigate(path: string): void {
  if (parseRoute(path).view !== "overview") {
    state.coverageOffset = 0;
  }
  window.history.pushState(null, "", path);
  void render();
}

async function submitUpload(form: HTMLFormElement): Promise<void> {
  const errorSlot = form.querySelector("#upload-error");
  const payload = new FormData();
  for (const name of ["data", "rules", "test"] as const) {
    const input = form.querySelector<HTMLInputElement>(`input[name="${name}"]`);
    const file = input?.files?.[0];
    if (file) {
      payload.append(name, file, file.name);
    }
  }
  try {
    const created = await createSession(payload);
    state.overviewCache = null;
    state.coverageOffset = 0;
    navigate(overviewPath(created.id));
  } catch (error) {
    if (errorSlot) {
      errorSlot.innerHTML = describeFailure(error);
    }
  }
}

function wireEvents(): void {
  document.addEventListener("click", (event) => {
    const target = event.target as Element | null;
    const nav = target?.closest<HTMLElement>("[data-nav]");
    if (nav) {
      event.preventDefault();
      navigate(nav.getAttribute("data-nav")!);
      return;
    }
    const pager = target?.closest<HTMLButtonElement>("button[data-page]");
    if (pager && !pager.disabled) {
      state.coverageOffset = Number(pager.getAttribute("data-page"));
      void render();
    }
  });
  document.addEventListener("submit", (event) => {
    const form = event.target as HTMLFormElement | null;
    if (form && form.id === "upload-form") {
      event.preventDefault();
      void submitUpload(form);
    }
  });
  window.addEventListener("popstate", () => {
    void render();
  });
}

wireEvents();
void render();
