/**
 * Pure presentation logic: filtering, colors, viewport scaling, messages.
 * Scores and positions come from the server untouched; only pixel mapping
 * happens here.
 */

import { EntityKind, NetworkEdge, NetworkNode, NetworkResponse } from "./types.js";

export const KIND_COLORS: Record<EntityKind, string> = {
  term: "#2c7fb8",
  subject: "#41ab5d",
  author: "#e6550d",
  journal: "#756bb1",
  cluster: "#d62728",
};

/** Clusters are colored per solution so competing solutions stand apart. */
export const SOLUTION_PALETTE = ["#d62728", "#9467bd", "#8c564b", "#e377c2", "#bcbd22", "#17becf"];

export function solutionOf(node: Pick<NetworkNode, "kind" | "key">): string | null {
  if (node.kind !== "cluster") return null;
  return node.key.split(" ", 1)[0] ?? null;
}

export function colorForNode(node: Pick<NetworkNode, "kind" | "key">, solutionOrder: string[]): string {
  const solution = solutionOf(node);
  if (solution !== null) {
    const i = solutionOrder.indexOf(solution);
    if (i >= 0) return SOLUTION_PALETTE[i % SOLUTION_PALETTE.length];
  }
  return KIND_COLORS[node.kind];
}

export interface VisibleNetwork {
  nodes: NetworkNode[];
  /** Edges re-indexed into the filtered node list. */
  edges: NetworkEdge[];
}

/** Drop nodes of unchecked kinds (and any edge touching them). */
export function visibleNetwork(
  nodes: NetworkNode[],
  edges: NetworkEdge[],
  kinds: Iterable<EntityKind>,
  edgeThreshold: number,
): VisibleNetwork {
  const allowed = new Set(kinds);
  const keptIndex = new Map<number, number>();
  const keptNodes: NetworkNode[] = [];
  nodes.forEach((node, i) => {
    if (allowed.has(node.kind)) {
      keptIndex.set(i, keptNodes.length);
      keptNodes.push(node);
    }
  });
  const keptEdges: NetworkEdge[] = [];
  for (const [a, b, w] of edges) {
    const ia = keptIndex.get(a);
    const ib = keptIndex.get(b);
    if (ia !== undefined && ib !== undefined && w >= edgeThreshold) {
      keptEdges.push([ia, ib, w]);
    }
  }
  return { nodes: keptNodes, edges: keptEdges };
}

/** Human message for an empty result; null when there is something to draw. */
export function emptyMessage(response: NetworkResponse): string | null {
  if (response.nodes.length > 0) return null;
  if (response.reason && response.reason.startsWith("no_resonance")) {
    const what = response.query || "this query";
    return `Nothing in this corpus resonates with “${what}”. Try another phrase or a [kind:key] selector.`;
  }
  return "No nodes to show.";
}

export function hoverText(node: NetworkNode): string {
  const occurrences = node.count === 1 ? "occurrence" : "occurrences";
  return `${node.display_label} (${node.kind}) — ${node.count} ${occurrences} in the corpus, score ${node.score.toFixed(3)}`;
}

/** Web search for an entity label, opened in a new tab by the shell. */
export function externalLookupUrl(label: string): string {
  return `https://scholar.google.com/scholar?q=${encodeURIComponent(label)}`;
}

export interface Viewport {
  width: number;
  height: number;
  padding: number;
}

/** Map server unit-square coordinates to pixels (y grows downward). */
export function toPixels(node: Pick<NetworkNode, "x" | "y">, vp: Viewport): { px: number; py: number } {
  const side = Math.min(vp.width, vp.height) - 2 * vp.padding;
  const ox = (vp.width - side) / 2;
  const oy = (vp.height - side) / 2;
  return { px: ox + node.x * side, py: oy + (1 - node.y) * side };
}

/** Node radius: gently scaled by corpus count so frequent entities pop. */
export function nodeRadius(count: number): number {
  return 4 + Math.min(8, Math.log10(Math.max(1, count)) * 3);
}
