/**
 * Typed client for the knowledge service. The client is the only place that
 * talks to the network; every view renders from what it returns, so the
 * browser holds no authoritative state.
 */

import type {
  FeasibilityName,
  KindName,
  RelationKindName,
  StateName,
  SubKindName,
} from "./kinds.js";

export interface KnowledgeObject {
  id: string;
  kind: KindName;
  sub_kind: SubKindName | null;
  name: string;
  description: string;
  state: StateName;
  feasibility: FeasibilityName;
  fragment_ids: string[];
  created_at: string;
  updated_at: string;
}

export interface Relation {
  id: string;
  kind: RelationKindName;
  source_id: string;
  target_id: string;
}

export interface DocumentSummary {
  id: string;
  title: string;
  checksum: string;
  imported_at: string;
}

export interface Document extends DocumentSummary {
  text: string;
}

export interface Fragment {
  id: string;
  document_id: string;
  start: number;
  end: number;
  excerpt: string;
  char_start: number;
  char_end: number;
}

export interface Finding {
  rule_id: string;
  severity: "Error" | "Warning";
  subject_id: string;
  message: string;
}

export interface LintReport {
  findings: Finding[];
  counts: { Error: number; Warning: number };
}

export interface Ratio {
  numerator: number;
  denominator: number;
  percent: number;
}

export interface ActivityCoverage {
  activity_id: string;
  covered_total: number;
  implemented: number;
  dismissed: number;
  ratio: Ratio;
}

export interface CoverageReport {
  per_activity: ActivityCoverage[];
  project_ratio: Ratio;
  state_histogram: Record<StateName, number>;
}

export interface StatesReport {
  total: number;
  histogram: Record<StateName, number>;
  by_kind: Record<string, Record<StateName, number>>;
}

export interface ForestNode {
  object_id: string;
  children: ForestNode[];
}

export interface ForestView {
  kind: KindName;
  relation: RelationKindName;
  roots: ForestNode[];
  notices: { object_id: string; chosen_parent_id: string; other_parent_ids: string[] }[];
  objects: Record<string, KnowledgeObject>;
}

export interface DiagramView {
  root_id: string;
  depth: number;
  node_ids: string[];
  edge_ids: string[];
  objects: Record<string, KnowledgeObject>;
  relations: Record<string, Relation>;
}

export interface NeighborPair {
  relation: Relation;
  object: KnowledgeObject;
}

/** A non-2xx response; `name` is the service's domain error name. */
export class ApiError extends Error {
  constructor(
    readonly name: string,
    message: string,
    readonly status: number,
  ) {
    super(message);
  }
}

export interface ObjectDraft {
  kind: KindName;
  sub_kind: SubKindName | null;
  name: string;
  description: string;
}

export class ApiClient {
  constructor(readonly baseUrl: string, private readonly fetchImpl: typeof fetch = fetch) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method,
      headers: body === undefined ? {} : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (response.status === 204) return undefined as T;
    const text = await response.text();
    const payload = text ? JSON.parse(text) : undefined;
    if (!response.ok) {
      if (payload && typeof payload.error === "string") {
        throw new ApiError(payload.error, String(payload.message ?? ""), response.status);
      }
      // request-validation failures and anything else without a domain name
      throw new ApiError("ValidationError", JSON.stringify(payload ?? text), response.status);
    }
    return payload as T;
  }

  // objects
  listObjects(params: { kind?: string; sub_kind?: string; state?: string; name?: string } = {}) {
    const query = new URLSearchParams(
      Object.entries(params).filter(([, v]) => v !== undefined) as [string, string][],
    ).toString();
    return this.request<{ objects: KnowledgeObject[] }>("GET", `/objects${query ? `?${query}` : ""}`);
  }

  createObject(draft: ObjectDraft) {
    return this.request<KnowledgeObject>("POST", "/objects", draft);
  }

  getObject(id: string) {
    return this.request<KnowledgeObject>("GET", `/objects/${id}`);
  }

  updateObject(id: string, patch: { name?: string; description?: string; feasibility?: FeasibilityName }) {
    return this.request<KnowledgeObject>("PATCH", `/objects/${id}`, patch);
  }

  setState(id: string, state: StateName) {
    return this.request<KnowledgeObject>("POST", `/objects/${id}/state`, { state });
  }

  neighbors(id: string, direction: "outgoing" | "incoming" | "both" = "both") {
    return this.request<{ neighbors: NeighborPair[] }>(
      "GET",
      `/objects/${id}/neighbors?direction=${direction}`,
    );
  }

  // relations
  createRelation(kind: RelationKindName, sourceId: string, targetId: string) {
    return this.request<Relation>("POST", "/relations", {
      kind,
      source_id: sourceId,
      target_id: targetId,
    });
  }

  deleteRelation(id: string) {
    return this.request<void>("DELETE", `/relations/${id}`);
  }

  // documents and fragments
  listDocuments() {
    return this.request<{ documents: DocumentSummary[] }>("GET", "/documents");
  }

  createDocument(title: string, text: string) {
    return this.request<Document>("POST", "/documents", { title, text });
  }

  getDocument(id: string) {
    return this.request<Document>("GET", `/documents/${id}`);
  }

  listFragments(documentId: string) {
    return this.request<{ fragments: Fragment[] }>("GET", `/documents/${documentId}/fragments`);
  }

  anchorFragment(documentId: string, start: number, end: number, objectId: string) {
    return this.request<Fragment>("POST", `/documents/${documentId}/fragments`, {
      start,
      end,
      object_id: objectId,
    });
  }

  // reports
  lintReport() {
    return this.request<LintReport>("GET", "/reports/lint");
  }

  coverageReport() {
    return this.request<CoverageReport>("GET", "/reports/coverage");
  }

  statesReport() {
    return this.request<StatesReport>("GET", "/reports/states");
  }

  // views
  forest(kind: KindName, relation: string) {
    return this.request<ForestView>("GET", `/views/forest?kind=${kind}&relation=${relation}`);
  }

  diagram(root: string, depth: number, relations?: string[]) {
    const extra = relations?.length ? `&relations=${relations.join(",")}` : "";
    return this.request<DiagramView>("GET", `/views/diagram?root=${root}&depth=${depth}${extra}`);
  }
}
