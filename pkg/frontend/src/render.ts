/** SVG rendering of a context network at server-computed positions. */

import { NetworkNode } from "./types.js";
import {
  Viewport,
  VisibleNetwork,
  colorForNode,
  hoverText,
  nodeRadius,
  toPixels,
} from "./viewmodel.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface RenderHandlers {
  onClick(node: NetworkNode): void;
  onLookup(node: NetworkNode): void;
}

function el<K extends keyof SVGElementTagNameMap>(tag: K, attrs: Record<string, string>): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  return node;
}

export function renderNetwork(
  svg: SVGSVGElement,
  visible: VisibleNetwork,
  solutionOrder: string[],
  handlers: RenderHandlers,
): void {
  svg.replaceChildren();
  const vp: Viewport = {
    width: svg.clientWidth || Number(svg.getAttribute("width")) || 800,
    height: svg.clientHeight || Number(svg.getAttribute("height")) || 600,
    padding: 28,
  };
  const points = visible.nodes.map((n) => toPixels(n, vp));

  const edgeGroup = el("g", { class: "edges" });
  for (const [a, b, w] of visible.edges) {
    const line = el("line", {
      x1: String(points[a].px),
      y1: String(points[a].py),
      x2: String(points[b].px),
      y2: String(points[b].py),
      class: "edge",
      "stroke-opacity": (0.15 + 0.5 * w).toFixed(2),
    });
    edgeGroup.appendChild(line);
  }
  svg.appendChild(edgeGroup);

  const nodeGroup = el("g", { class: "nodes" });
  visible.nodes.forEach((node, i) => {
    const g = el("g", { class: "node", transform: `translate(${points[i].px},${points[i].py})` });
    const circle = el("circle", {
      r: String(nodeRadius(node.count)),
      fill: colorForNode(node, solutionOrder),
    });
    const title = el("title", {});
    title.textContent = hoverText(node);
    circle.appendChild(title);
    circle.addEventListener("click", () => handlers.onClick(node));
    circle.addEventListener("dblclick", (event) => {
      event.preventDefault();
      handlers.onLookup(node);
    });
    const label = el("text", { x: "0", y: String(-nodeRadius(node.count) - 3), class: "label" });
    label.textContent = node.display_label;
    g.appendChild(circle);
    g.appendChild(label);
    nodeGroup.appendChild(g);
  });
  svg.appendChild(nodeGroup);
}
