/**
 * DOM-free application logic: owns the view state, talks to the API,
 * and tells the shell what to draw. The URL is the single source of
 * truth for state; every mutation goes through navigate().
 */

import { ApiClient } from "./api.js";
import { selectorFor } from "./api.js";
import { ViewState, decodeState, encodeState, normalizeState } from "./state.js";
import { EntityKind, NetworkNode, NetworkResponse, SolutionInfo } from "./types.js";
import { emptyMessage, visibleNetwork } from "./viewmodel.js";

export interface ViewUpdate {
  state: ViewState;
  network: NetworkResponse | null;
  message: string | null;
  solutions: SolutionInfo[];
}

export interface HistoryLike {
  read(): string;
  push(search: string): void;
  replace(search: string): void;
}

export class Controller {
  private state: ViewState;
  private network: NetworkResponse | null = null;
  private solutions: SolutionInfo[] = [];
  private message: string | null = null;

  constructor(
    private api: ApiClient,
    private history: HistoryLike,
    private onUpdate: (update: ViewUpdate) => void = () => {},
  ) {
    this.state = decodeState(this.history.read());
  }

  current(): ViewUpdate {
    const update: ViewUpdate = {
      state: { ...this.state, kinds: [...this.state.kinds], solutions: [...this.state.solutions] },
      network: this.network,
      message: this.message,
      solutions: this.solutions,
    };
    return update;
  }

  async start(): Promise<void> {
    try {
      this.solutions = (await this.api.fetchSolutions()).solutions;
    } catch {
      this.solutions = [];
    }
    await this.refresh();
  }

  /** Re-read state from the URL (back/forward navigation). */
  async onPopState(): Promise<void> {
    this.state = decodeState(this.history.read());
    await this.refresh(false);
  }

  async navigate(next: Partial<ViewState>, push = true): Promise<void> {
    this.state = normalizeState({ ...this.state, ...next });
    const search = encodeState(this.state);
    if (push) this.history.push(search);
    else this.history.replace(search);
    await this.refresh(false);
  }

  /** Fetch whatever the current state points at and publish the result. */
  private async refresh(sync = true): Promise<void> {
    if (sync) this.history.replace(encodeState(this.state));
    if (!this.state.query.trim() && this.state.solutions.length === 0) {
      this.network = null;
      this.message = null;
      this.onUpdate(this.current());
      return;
    }
    try {
      const network = await this.api.fetchNetwork(this.state);
      if (network === null) return; // superseded by a newer request
      this.network = network;
      this.message = emptyMessage(network);
    } catch (err) {
      this.network = null;
      this.message = err instanceof Error ? err.message : String(err);
    }
    this.onUpdate(this.current());
  }

  /** Search box submit. Leaves compare mode. */
  async submitQuery(query: string): Promise<void> {
    await this.navigate({ query, solutions: [] });
  }

  /** Node click: one /relate for exactly that entity. */
  async clickNode(node: Pick<NetworkNode, "kind" | "key">): Promise<void> {
    await this.navigate({ query: selectorFor(node), solutions: [] });
  }

  async setShow(show: number): Promise<void> {
    await this.navigate({ show }, false);
  }

  async toggleKind(kind: EntityKind, enabled: boolean): Promise<void> {
    const kinds = new Set(this.state.kinds);
    if (enabled) kinds.add(kind);
    else kinds.delete(kind);
    await this.navigate({ kinds: [...kinds] }, false);
  }

  /** Compare view over the checked solutions. */
  async compareSolutions(ids: string[]): Promise<void> {
    await this.navigate({ query: "", solutions: ids });
  }

  /** Edge slider: pure re-render, no refetch needed. */
  setEdgeThreshold(threshold: number): void {
    this.state = normalizeState({ ...this.state, edgeThreshold: threshold });
    this.history.replace(encodeState(this.state));
    this.onUpdate(this.current());
  }

  /** What the shell should draw after kind filtering and edge pruning. */
  visible() {
    if (!this.network) return { nodes: [], edges: [] };
    return visibleNetwork(this.network.nodes, this.network.edges, this.state.kinds, this.state.edgeThreshold);
  }
}
