/**
 * View state <-> URL round-trip.
 *
 * Every view (query, node budget, kind filter, selected solutions, edge
 * threshold) is fully encoded in the URL search string, so any view is
 * shareable and reproducible. Defaults are omitted from the URL.
 */

import { ALL_KINDS, EntityKind } from "./types.js";

export interface ViewState {
  query: string;
  show: number;
  /** Kinds currently visible; canonical order, never empty. */
  kinds: EntityKind[];
  /** Solutions selected for the compare view; empty means relate mode. */
  solutions: string[];
  edgeThreshold: number;
}

export const DEFAULT_SHOW = 25;
export const DEFAULT_EDGE_THRESHOLD = 0.5;

export function defaultState(): ViewState {
  return {
    query: "",
    show: DEFAULT_SHOW,
    kinds: [...ALL_KINDS],
    solutions: [],
    edgeThreshold: DEFAULT_EDGE_THRESHOLD,
  };
}

/** Canonicalize: kinds in fixed order and non-empty, show >= 1. */
export function normalizeState(s: ViewState): ViewState {
  const kindSet = new Set(s.kinds);
  const kinds = ALL_KINDS.filter((k) => kindSet.has(k));
  return {
    query: s.query.trim(),
    show: Math.max(1, Math.round(s.show) || DEFAULT_SHOW),
    kinds: kinds.length ? kinds : [...ALL_KINDS],
    solutions: s.solutions.map((x) => x.trim().toLowerCase()).filter(Boolean),
    // two decimals: the slider step, and what the URL carries
    edgeThreshold: Math.round(Math.min(1, Math.max(0, s.edgeThreshold)) * 100) / 100,
  };
}

export function encodeState(state: ViewState): string {
  const s = normalizeState(state);
  const params = new URLSearchParams();
  if (s.query) params.set("q", s.query);
  if (s.show !== DEFAULT_SHOW) params.set("show", String(s.show));
  if (s.kinds.length !== ALL_KINDS.length) params.set("kinds", s.kinds.join(","));
  if (s.solutions.length) params.set("solutions", s.solutions.join(","));
  if (s.edgeThreshold !== DEFAULT_EDGE_THRESHOLD) params.set("edges", s.edgeThreshold.toFixed(2));
  const out = params.toString();
  return out ? `?${out}` : "";
}

export function decodeState(search: string): ViewState {
  const params = new URLSearchParams(search);
  const state = defaultState();
  const q = params.get("q");
  if (q) state.query = q;
  const show = Number(params.get("show"));
  if (Number.isFinite(show) && show >= 1) state.show = Math.round(show);
  const kinds = params.get("kinds");
  if (kinds) {
    const wanted = new Set(kinds.split(","));
    const valid = ALL_KINDS.filter((k) => wanted.has(k));
    if (valid.length) state.kinds = valid;
  }
  const solutions = params.get("solutions");
  if (solutions) state.solutions = solutions.split(",").map((x) => x.trim().toLowerCase()).filter(Boolean);
  const edges = Number(params.get("edges"));
  if (Number.isFinite(edges) && params.get("edges") !== null) {
    state.edgeThreshold = Math.min(1, Math.max(0, edges));
  }
  return normalizeState(state);
}
