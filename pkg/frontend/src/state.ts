export type ViewKind = "tree" | "summarized" | "detailed" | "procedures" | "probe-log";

export const VIEW_KINDS: readonly ViewKind[] = [
  "tree",
  "summarized",
  "detailed",
  "procedures",
  "probe-log",
];

// The path views render nothing without a target to group on.
export function needsTarget(view: ViewKind): boolean {
  return view === "summarized" || view === "detailed";
}

export interface ViewState {
  selectedExample: string | null;
  selectedView: ViewKind;
  selectedTarget: string | null; // "probe:<id>" or "method:<module>/<name>"
  filterQuery: string;
  selection: number | null; // seq of the selected tree node
  hoveredHit: number | null; // seq of the hovered probe hit
}

export function initialViewState(): ViewState {
  return {
    selectedExample: null,
    selectedView: "tree",
    selectedTarget: null,
    filterQuery: "",
    selection: null,
    hoveredHit: null,
  };
}

export class Store {
  private listeners: Array<(state: ViewState) => void> = [];

  constructor(public state: ViewState = initialViewState()) {}

  update(partial: Partial<ViewState>): void {
    this.state = { ...this.state, ...partial };
    for (const listener of this.listeners) listener(this.state);
  }

  subscribe(listener: (state: ViewState) => void): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }
}

// Guard for async responses: a view only applies data fetched for the
// run it is currently showing. Each reload takes a new ticket; replies
// holding an old ticket (or another run's id) are dropped.
export class LatestOnly {
  private ticket = 0;
  private runId: string | null = null;

  begin(runId: string): number {
    this.ticket += 1;
    this.runId = runId;
    return this.ticket;
  }

  accepts(ticket: number, runId: string): boolean {
    return ticket === this.ticket && runId === this.runId;
  }
}
