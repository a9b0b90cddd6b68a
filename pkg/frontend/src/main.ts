/** Browser shell: binds the controller to the DOM and the URL. */

import { ApiClient } from "./api.js";
import { Controller, HistoryLike, ViewUpdate } from "./controller.js";
import { renderNetwork } from "./render.js";
import { ALL_KINDS } from "./types.js";
import { KIND_COLORS, externalLookupUrl } from "./viewmodel.js";

const history: HistoryLike = {
  read: () => window.location.search,
  push: (search) => window.history.pushState(null, "", search || window.location.pathname),
  replace: (search) => window.history.replaceState(null, "", search || window.location.pathname),
};

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function draw(controller: Controller, update: ViewUpdate): void {
  const svg = byId<HTMLElement>("network") as unknown as SVGSVGElement;
  const message = byId<HTMLDivElement>("message");
  const status = byId<HTMLDivElement>("status");

  (byId<HTMLInputElement>("search")).value = update.state.query;
  (byId<HTMLInputElement>("show")).value = String(update.state.show);
  byId<HTMLSpanElement>("show-value").textContent = String(update.state.show);
  (byId<HTMLInputElement>("edges")).value = String(update.state.edgeThreshold);
  byId<HTMLSpanElement>("edges-value").textContent = update.state.edgeThreshold.toFixed(2);
  for (const kind of ALL_KINDS) {
    (byId<HTMLInputElement>(`kind-${kind}`)).checked = update.state.kinds.includes(kind);
  }
  document.querySelectorAll<HTMLInputElement>("#solutions input[type=checkbox]").forEach((box) => {
    box.checked = update.state.solutions.includes(box.value);
  });

  if (update.message) {
    message.textContent = update.message;
    message.hidden = false;
  } else {
    message.hidden = true;
  }

  const visible = controller.visible();
  const solutionOrder = update.solutions.map((s) => s.id);
  renderNetwork(svg, visible, solutionOrder, {
    onClick: (node) => void controller.clickNode(node),
    onLookup: (node) => window.open(externalLookupUrl(node.display_label), "_blank", "noopener"),
  });
  if (update.network) {
    const total = update.network.nodes.length;
    const suffix = update.network.truncated ? " (truncated)" : "";
    status.textContent = `${visible.nodes.length} of ${total} nodes shown${suffix} for ${update.network.query || "—"}`;
  } else {
    status.textContent = "Search for a phrase, an [author:name] or compare cluster solutions.";
  }
}

function buildControls(controller: Controller, update: ViewUpdate): void {
  const kindsBox = byId<HTMLDivElement>("kinds");
  kindsBox.replaceChildren();
  for (const kind of ALL_KINDS) {
    const label = document.createElement("label");
    const box = document.createElement("input");
    box.type = "checkbox";
    box.id = `kind-${kind}`;
    box.checked = update.state.kinds.includes(kind);
    box.addEventListener("change", () => void controller.toggleKind(kind, box.checked));
    const swatch = document.createElement("span");
    swatch.className = "swatch";
    swatch.style.background = KIND_COLORS[kind];
    label.append(box, swatch, ` ${kind}`);
    kindsBox.appendChild(label);
  }

  const solutionsBox = byId<HTMLDivElement>("solutions");
  solutionsBox.replaceChildren();
  if (!update.solutions.length) {
    solutionsBox.textContent = "no cluster solutions in this index";
  }
  for (const solution of update.solutions) {
    const label = document.createElement("label");
    const box = document.createElement("input");
    box.type = "checkbox";
    box.value = solution.id;
    box.checked = update.state.solutions.includes(solution.id);
    label.append(box, ` ${solution.id} (${solution.clusters} clusters)`);
    solutionsBox.appendChild(label);
  }
  byId<HTMLButtonElement>("compare").addEventListener("click", () => {
    const picked = Array.from(
      solutionsBox.querySelectorAll<HTMLInputElement>("input:checked"),
    ).map((box) => box.value);
    void controller.compareSolutions(picked);
  });
}

function main(): void {
  const api = new ApiClient();
  const controller = new Controller(api, history, (update) => draw(controller, update));

  byId<HTMLFormElement>("search-form").addEventListener("submit", (event) => {
    event.preventDefault();
    void controller.submitQuery(byId<HTMLInputElement>("search").value);
  });
  byId<HTMLInputElement>("show").addEventListener("change", (event) => {
    void controller.setShow(Number((event.target as HTMLInputElement).value));
  });
  byId<HTMLInputElement>("edges").addEventListener("input", (event) => {
    controller.setEdgeThreshold(Number((event.target as HTMLInputElement).value));
  });
  window.addEventListener("popstate", () => void controller.onPopState());

  void controller.start().then(() => buildControls(controller, controller.current()));
}

main();
