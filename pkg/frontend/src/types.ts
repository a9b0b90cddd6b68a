/** Wire types for the query service (schema_version 1). */

export type EntityKind = "term" | "subject" | "author" | "journal" | "cluster";

export const ALL_KINDS: readonly EntityKind[] = ["term", "subject", "author", "journal", "cluster"];

export interface NetworkNode {
  kind: EntityKind;
  key: string;
  display_label: string;
  score: number;
  count: number;
  x: number;
  y: number;
}

/** [source index, target index, cosine] into the nodes array. */
export type NetworkEdge = [number, number, number];

export interface NetworkResponse {
  schema_version: number;
  query: string;
  reason: string | null;
  truncated: boolean;
  nodes: NetworkNode[];
  edges: NetworkEdge[];
}

export interface SolutionInfo {
  id: string;
  clusters: number;
  articles?: number;
}

export interface SolutionsResponse {
  schema_version: number;
  solutions: SolutionInfo[];
}

export interface ErrorResponse {
  schema_version: number;
  error: string;
}
