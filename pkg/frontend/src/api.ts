/**
 * Request building and a latest-wins fetch client.
 *
 * The client never reinterprets server output; it only decides which
 * endpoint a view state maps to and keeps stale responses from landing.
 */

import { ALL_KINDS, NetworkNode, NetworkResponse, SolutionsResponse } from "./types.js";
import { ViewState, normalizeState } from "./state.js";

/** Bracket selector for a node; journals use the issn tag. */
export function selectorFor(node: Pick<NetworkNode, "kind" | "key">): string {
  const tag = node.kind === "journal" ? "issn" : node.kind;
  return `[${tag}:${node.key}]`;
}

export function isCompareMode(state: ViewState): boolean {
  return state.solutions.length > 0 && !state.query.trim();
}

export function requestUrlFor(state: ViewState, base = ""): string {
  const s = normalizeState(state);
  if (isCompareMode(s)) {
    const params = new URLSearchParams();
    params.set("solutions", s.solutions.join(","));
    params.set("show", String(s.show));
    return `${base}/compare?${params.toString()}`;
  }
  const params = new URLSearchParams();
  params.set("input", s.query);
  params.set("show", String(s.show));
  if (s.kinds.length !== ALL_KINDS.length) params.set("type", s.kinds.join(","));
  return `${base}/relate?${params.toString()}`;
}

export type FetchLike = (url: string) => Promise<{ status: number; json(): Promise<unknown> }>;

export class ApiClient {
  private sequence = 0;

  constructor(
    private fetchFn: FetchLike = (url) => fetch(url),
    private base = "",
  ) {}

  /** Fetch the network for a state; resolves null when superseded. */
  async fetchNetwork(state: ViewState): Promise<NetworkResponse | null> {
    const ticket = ++this.sequence;
    const response = await this.fetchFn(requestUrlFor(state, this.base));
    if (ticket !== this.sequence) return null; // a newer query took over
    const body = (await response.json()) as NetworkResponse & { error?: string };
    if (response.status !== 200) {
      throw new Error(body.error ?? `request failed with status ${response.status}`);
    }
    return body;
  }

  async fetchSolutions(): Promise<SolutionsResponse> {
    const response = await this.fetchFn(`${this.base}/solutions`);
    const body = (await response.json()) as SolutionsResponse & { error?: string };
    if (response.status !== 200) {
      throw new Error(body.error ?? `request failed with status ${response.status}`);
    }
    return body;
  }
}
