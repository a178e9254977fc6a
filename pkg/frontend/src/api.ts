/** Typed client for the evaluation service JSON API. */

export interface AttributeDoc {
  name: string;
  kind: "real" | "integer" | "categorical";
  range: [number, number] | null;
  values: string[] | null;
  role: "input" | "output";
}

export interface ClassCountDoc {
  value: string;
  count: number;
}

export interface DatasetDoc {
  relation: string;
  example_count: number;
  target: string;
  class_distribution: ClassCountDoc[];
  attributes: AttributeDoc[];
  range_warning_count: number;
}

export interface AlgorithmDoc {
  name: string;
  dialect: "fuzzy" | "crisp";
  num_labels: number | null;
}

export interface TableDoc {
  tp: number;
  fp: number;
  fn: number;
  tn: number;
  positives: number;
  negatives: number;
  total: number;
}

export interface MeasuresDoc {
  tpr: number;
  fpr: number;
  confidence: number;
  wracc_raw: number;
  wracc_norm: number;
}

export interface RuleDoc {
  id: number;
  name: string;
  antecedent: string;
  conditions: string[];
  consequent: string;
  table: TableDoc;
  measures: MeasuresDoc;
}

export interface ScatterPointDoc {
  rule_id: number;
  x: number;
  y: number;
  low_quality: boolean;
}

export interface ScatterDoc {
  points: ScatterPointDoc[];
  diagonal_region: string;
}

export interface PyramidRowDoc {
  rule_id: number;
  tpr: number;
  fpr: number;
}

export interface PyramidDoc {
  rows: PyramidRowDoc[];
}

export interface OverviewDoc {
  id: string;
  status: string;
  dataset: DatasetDoc;
  algorithm: AlgorithmDoc;
  rules: RuleDoc[];
  scatter: ScatterDoc;
  pyramid: PyramidDoc;
  coverage_count: number;
}

export type CellValue = number | string | null;

export interface CoveredExampleDoc {
  example_index: number;
  degree: number;
  channel: "correct" | "incorrect";
  values: CellValue[];
  class: string;
}

export interface RuleDetailDoc {
  session_id: string;
  dialect: "fuzzy" | "crisp";
  rule: RuleDoc;
  covered: CoveredExampleDoc[];
}

export interface CoverageChipDoc {
  rule_id: number;
  degree: number;
  channel: "correct" | "incorrect";
}

export interface CoverageRowDoc {
  example_index: number;
  values: CellValue[];
  class: string;
  rules: CoverageChipDoc[];
}

export interface CoveragePageDoc {
  offset: number;
  limit: number;
  total: number;
  dialect: "fuzzy" | "crisp";
  rows: CoverageRowDoc[];
}

export interface SessionCreatedDoc {
  id: string;
  status: "ready" | "pending";
  rule_count?: number;
}

export interface ApiErrorDoc {
  error: string;
  message: string;
  file: string | null;
  line: number | null;
}

/** HTTP failure carrying the service's diagnostic body when present. */
export class ApiError extends Error {
  status: number;
  detail: ApiErrorDoc | null;

  constructor(status: number, detail: ApiErrorDoc | null) {
    super(detail ? `${detail.error}: ${detail.message}` : `HTTP ${status}`);
    this.status = status;
    this.detail = detail;
  }
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  const response = await fetch(path, init);
  if (!response.ok) {
    let detail: ApiErrorDoc | null = null;
    try {
      detail = (await response.json()) as ApiErrorDoc;
    } catch {
      detail = null;
    }
    throw new ApiError(response.status, detail);
  }
  return (await response.json()) as T;
}

export function createSession(form: FormData): Promise<SessionCreatedDoc> {
  return request("/api/sessions", { method: "POST", body: form });
}

export function getOverview(sessionId: string): Promise<OverviewDoc> {
  return request(`/api/sessions/${encodeURIComponent(sessionId)}/overview`);
}

export function getRule(sessionId: string, ruleId: number): Promise<RuleDetailDoc> {
  return request(
    `/api/sessions/${encodeURIComponent(sessionId)}/rules/${ruleId}`,
  );
}

export function getCoverage(
  sessionId: string,
  offset: number,
  limit: number,
): Promise<CoveragePageDoc> {
  return request(
    `/api/sessions/${encodeURIComponent(sessionId)}/coverage?offset=${offset}&limit=${limit}`,
  );
}

/** The bundle link points straight at the API so the download is the
 * exact export the service produces. */
export function exportUrl(sessionId: string): string {
  return `/api/sessions/${encodeURIComponent(sessionId)}/export.zip`;
}
