/** Path-based routes served through the API server's single-page
 * fallback: every unknown path returns the app shell, so plain
 * pathnames work without a hash. */

export type Route =
  | { view: "upload" }
  | { view: "overview"; sessionId: string }
  | { view: "rule"; sessionId: string; ruleId: number }
  | { view: "missing"; path: string };

export function parseRoute(pathname: string): Route {
  const parts = pathname.split("/").filter((part) => part.length > 0);
  if (parts.length === 0) {
    return { view: "upload" };
  }
  if (parts[0] === "sessions" && parts.length === 2) {
    return { view: "overview", sessionId: parts[1]! };
  }
  if (
    parts[0] === "sessions" &&
    parts.length === 4 &&
    parts[2] === "rules" &&
    /^\d+$/.test(parts[3]!)
  ) {
    return { view: "rule", sessionId: parts[1]!, ruleId: Number(parts[3]) };
  }
  return { view: "missing", path: pathname };
}

export function overviewPath(sessionId: string): string {
  return `/sessions/${encodeURIComponent(sessionId)}`;
}

export function rulePath(sessionId: string, ruleId: number): string {
  return `/sessions/${encodeURIComponent(sessionId)}/rules/${ruleId}`;
}
