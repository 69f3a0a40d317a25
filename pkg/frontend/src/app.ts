import { ApiClient } from "./api.js";
import { markSelection, renderCodeView, scrollToLine } from "./codeView.js";
import { renderInspector } from "./inspector.js";
import { markHovered, renderProbeLog, renderProcedures } from "./listViews.js";
import { closeMenu, showMenu } from "./menu.js";
import { renderDetailedPaths, renderSummarizedPaths } from "./pathsView.js";
import {
  renderExamplesPane,
  renderFilterInput,
  renderTargetSelect,
  renderViewSelector,
} from "./sidebar.js";
import { subscribeRuns } from "./sse.js";
import { LatestOnly, Store, needsTarget, type ViewKind } from "./state.js";
import { TreeView } from "./treeView.js";
import { methodKey } from "./types.js";
import type {
  AnnotationsPayload,
  ExampleEntry,
  ExamplesPayload,
  MethodRef,
  ProbeLogPayload,
  ProbeValueEntry,
  ProceduresPayload,
  RunSummary,
  Snapshot,
  SourcePayload,
  TreeNode,
  TreePayload,
} from "./types.js";

export type ApiLike = Pick<
  ApiClient,
  | "examples"
  | "source"
  | "tree"
  | "procedures"
  | "annotations"
  | "summarizedPaths"
  | "detailedPaths"
  | "probeValues"
  | "probeLog"
  | "succession"
  | "callees"
  | "find"
  | "run"
  | "setActive"
>;

export interface AppOptions {
  api: ApiLike;
  // Subscription to run updates; tests inject a manual trigger here.
  events?: (onRuns: (runIds: string[]) => void) => () => void;
}

export class App {
  readonly store = new Store();
  private readonly api: ApiLike;
  private readonly guard = new LatestOnly();

  private examplesPayload: ExamplesPayload | null = null;
  private run: RunSummary | null = null;
  private source: SourcePayload | null = null;
  private valuesByProbe: Record<string, ProbeValueEntry[]> = {};
  private treePayload: TreePayload | null = null;
  private annotations: AnnotationsPayload | null = null;
  private procedures: ProceduresPayload | null = null;
  private probeLogPayload: ProbeLogPayload | null = null;
  private treeView: TreeView | null = null;
  private treeKey = "";

  private readonly examplesHost: HTMLElement;
  private readonly controlsHost: HTMLElement;
  private readonly bodyHost: HTMLElement;
  private readonly codeHost: HTMLElement;
  private readonly statusHost: HTMLElement;
  private readonly mainHost: HTMLElement;

  readonly ready: Promise<void>;

  constructor(root: HTMLElement, options: AppOptions) {
    this.api = options.api;

    const layout = document.createElement("div");
    layout.className = "app";

    const sidebar = document.createElement("div");
    sidebar.className = "sidebar";
    this.examplesHost = document.createElement("div");
    this.examplesHost.className = "pane examples-host";
    this.controlsHost = document.createElement("div");
    this.controlsHost.className = "pane controls-host";
    this.bodyHost = document.createElement("div");
    this.bodyHost.className = "pane body-host";
    sidebar.append(this.examplesHost, this.controlsHost, this.bodyHost);

    this.mainHost = document.createElement("div");
    this.mainHost.className = "main";
    this.statusHost = document.createElement("div");
    this.statusHost.className = "run-status";
    this.codeHost = document.createElement("div");
    this.codeHost.className = "code-host";
    this.mainHost.append(this.statusHost, this.codeHost);

    layout.append(sidebar, this.mainHost);
    root.appendChild(layout);

    options.events?.((runIds) => void this.onRunsUpdated(runIds));
    this.ready = this.refreshExamples(true);
  }

  // -- data loading ---------------------------------------------------------

  private selectedEntry(): ExampleEntry | null {
    const id = this.store.state.selectedExample;
    if (!id || !this.examplesPayload) return null;
    return this.examplesPayload.examples.find((e) => e.id === id) ?? null;
  }

  private async refreshExamples(selectFirst: boolean): Promise<void> {
    this.examplesPayload = await this.api.examples();
    if (selectFirst) {
      const examples = this.examplesPayload.examples;
      const first = examples.find((e) => e.run) ?? examples[0];
      if (first) {
        await this.selectExample(first.id);
        return;
      }
    }
    this.renderExamples();
  }

  async selectExample(id: string): Promise<void> {
    this.store.update({ selectedExample: id, selection: null, hoveredHit: null });
    this.renderExamples();
    const entry = this.selectedEntry();
    if (!entry || !entry.run) {
      this.run = null;
      this.renderStatus();
      this.bodyHost.textContent = "";
      this.codeHost.textContent = "";
      return;
    }
    await this.loadRun(entry, entry.run);
  }

  private async loadRun(entry: ExampleEntry, run: RunSummary): Promise<void> {
    this.run = run;
    const ticket = this.guard.begin(run.run_id);
    const filter = this.store.state.filterQuery;
    const [source, tree, annotations, procedures, probeLog] = await Promise.all([
      this.api.source(entry.module),
      this.api.tree(run.run_id, filter ? { filter } : {}),
      this.api.annotations(run.run_id),
      this.api.procedures(run.run_id),
      this.api.probeLog(run.run_id),
    ]);
    if (!this.guard.accepts(ticket, tree.run_id)) return;

    const values = await Promise.all(
      source.probes.map((p) => this.api.probeValues(run.run_id, p.probe)),
    );
    if (!this.guard.accepts(ticket, tree.run_id)) return;

    this.source = source;
    this.treePayload = tree;
    this.annotations = annotations;
    this.procedures = procedures;
    this.probeLogPayload = probeLog;
    this.valuesByProbe = {};
    values.forEach((payload, i) => {
      this.valuesByProbe[source.probes[i].probe] = payload.values;
    });
    this.renderAll();
  }

  private async reloadTree(): Promise<void> {
    if (!this.run) return;
    const runId = this.run.run_id;
    const ticket = this.guard.begin(runId);
    const filter = this.store.state.filterQuery;
    const tree = await this.api.tree(runId, filter ? { filter } : {});
    if (!this.guard.accepts(ticket, tree.run_id)) return;
    this.treePayload = tree;
    this.renderBody();
  }

  private async onRunsUpdated(runIds: string[]): Promise<void> {
    this.examplesPayload = await this.api.examples();
    this.renderExamples();
    const entry = this.selectedEntry();
    if (!entry || !entry.run) return;
    if (entry.run.run_id !== this.run?.run_id || runIds.includes(entry.run.run_id)) {
      await this.loadRun(entry, entry.run);
    }
  }

  // -- rendering --------------------------------------------------------------

  private renderAll(): void {
    this.treeView = null;
    this.renderExamples();
    this.renderControls();
    this.renderBody();
    this.renderCode();
    this.renderStatus();
  }

  private renderExamples(): void {
    this.examplesHost.textContent = "";
    if (!this.examplesPayload) return;
    this.examplesHost.appendChild(
      renderExamplesPane(this.examplesPayload, this.store.state.selectedExample, {
        onSelectExample: (id) => void this.selectExample(id),
        onToggleActive: (id, active) =>
          void this.api.setActive(id, active).then(() => this.refreshExamples(false)),
        onRerun: (id) => void this.api.run(id).then(() => this.onRunsUpdated([])),
      }),
    );
  }

  private renderControls(): void {
    this.controlsHost.textContent = "";
    this.controlsHost.appendChild(
      renderViewSelector(this.store.state.selectedView, (view) => this.switchView(view)),
    );
    if (needsTarget(this.store.state.selectedView)) {
      this.controlsHost.appendChild(
        renderTargetSelect(this.annotations, this.procedures, this.store.state.selectedTarget, (target) => {
          this.store.update({ selectedTarget: target });
          this.renderBody();
        }),
      );
    }
    if (this.store.state.selectedView === "tree") {
      this.controlsHost.appendChild(
        renderFilterInput(this.store.state.filterQuery, (query) => {
          this.store.update({ filterQuery: query });
          void this.reloadTree();
        }),
      );
    }
  }

  switchView(view: ViewKind): void {
    this.store.update({ selectedView: view });
    this.renderControls();
    this.renderBody();
  }

  private renderBody(): void {
    this.bodyHost.textContent = "";
    const view = this.store.state.selectedView;
    if (!this.run) return;

    if (view === "tree") {
      if (!this.treePayload) return;
      const key = `${this.treePayload.run_id}:${this.treePayload.filter ?? ""}`;
      if (!this.treeView || this.treeKey !== key) {
        this.treeKey = key;
        this.treeView = new TreeView(this.treePayload, {
          onSelect: (node) => this.onTreeSelect(node),
          onRowDoubleClick: (node) => this.onTreeDoubleClick(node),
          onRowMenu: (node, x, y) => this.onTreeMenu(node, x, y),
          fetchChildren: (seq) =>
            this.api
              .tree(this.run!.run_id, { childrenOf: seq })
              .then((payload) => payload.children ?? []),
        });
      }
      this.bodyHost.appendChild(this.treeView.el);
      return;
    }

    if (view === "procedures") {
      if (this.procedures) {
        this.bodyHost.appendChild(
          renderProcedures(this.procedures, {
            onJumpToMethod: (method) => void this.jumpToMethod(method),
          }),
        );
      }
      return;
    }

    if (view === "probe-log") {
      if (this.probeLogPayload) {
        this.bodyHost.appendChild(
          renderProbeLog(this.probeLogPayload, {
            onSelectHit: (seq) => this.locateHit(seq),
            onHoverHit: (seq) => this.setHoveredHit(seq),
          }),
        );
      }
      return;
    }

    const target = this.store.state.selectedTarget;
    if (!target) {
      const hint = document.createElement("div");
      hint.className = "empty";
      hint.textContent = "choose a target to group paths";
      this.bodyHost.appendChild(hint);
      return;
    }
    void this.loadPaths(view, target);
  }

  private async loadPaths(view: "summarized" | "detailed", target: string): Promise<void> {
    const run = this.run;
    if (!run) return;
    const payload =
      view === "summarized"
        ? await this.api.summarizedPaths(run.run_id, target)
        : await this.api.detailedPaths(run.run_id, target);
    // Drop the response if the user moved on while it was in flight.
    const state = this.store.state;
    if (
      run.run_id !== this.run?.run_id ||
      state.selectedView !== view ||
      state.selectedTarget !== target
    ) {
      return;
    }
    this.bodyHost.textContent = "";
    this.bodyHost.appendChild(
      payload.mode === "summarized"
        ? renderSummarizedPaths(payload, { onSelectSeq: (seq) => this.locateHit(seq) })
        : renderDetailedPaths(payload, { onSelectSeq: (seq) => this.locateHit(seq) }),
    );
  }

  private renderCode(): void {
    this.codeHost.textContent = "";
    if (!this.source || !this.run) return;
    const runId = this.run.run_id;
    this.codeHost.appendChild(
      renderCodeView({
        source: this.source,
        valuesByProbe: this.valuesByProbe,
        getSuccession: (seq) => this.api.succession(runId, seq),
        onSelectHit: (seq) => this.locateHit(seq),
        onInspectValue: (probeId, entry) =>
          this.openInspector(`${probeId} @ seq ${entry.seq}`, entry.value),
        onHoverHit: (seq) => this.setHoveredHit(seq),
      }),
    );
    markSelection(this.codeHost, this.store.state.selection);
  }

  private renderStatus(): void {
    this.statusHost.textContent = "";
    this.statusHost.className = "run-status";
    if (!this.run) {
      this.statusHost.textContent = "no run";
      return;
    }
    this.statusHost.classList.add(this.run.status);
    const line = document.createElement("span");
    line.textContent =
      `${this.run.example_id}: ${this.run.status}` +
      (this.run.error ? ` (${this.run.error.kind}: ${this.run.error.message})` : "") +
      ` · ${this.run.event_count} events`;
    this.statusHost.appendChild(line);
    if (this.run.print_log.length > 0) {
      const log = document.createElement("pre");
      log.className = "print-log";
      log.textContent = this.run.print_log.join("\n");
      this.statusHost.appendChild(log);
    }
  }

  // -- jumps ------------------------------------------------------------------

  locateHit(seq: number): void {
    this.store.update({ selection: seq });
    if (this.store.state.selectedView !== "tree") this.switchView("tree");
    this.treeView?.setSelection(seq);
    markSelection(this.codeHost, seq);
  }

  private setHoveredHit(seq: number | null): void {
    this.store.update({ hoveredHit: seq });
    const log = this.bodyHost.querySelector<HTMLElement>(".probe-log-view");
    if (log) markHovered(log, seq);
  }

  async jumpToMethod(method: MethodRef, fromSeq = 0, dir: "next" | "prev" = "next"): Promise<void> {
    if (!this.run) return;
    const found = await this.api.find(this.run.run_id, methodKey(method), fromSeq, dir);
    if (found.node) this.locateHit(found.node.seq);
  }

  private onTreeSelect(node: TreeNode): void {
    this.store.update({ selection: node.seq });
    markSelection(this.codeHost, node.type === "probe" ? node.seq : null);
  }

  private onTreeDoubleClick(node: TreeNode): void {
    if (node.type === "probe") {
      this.openInspector(`${node.probe} @ seq ${node.seq}`, node.value);
      return;
    }
    // Jump the code pane to the procedure's definition.
    if (!this.source) return;
    if (node.method.module === this.source.module) {
      const fn = this.source.functions.find((f) => f.name === node.method.name);
      if (fn) scrollToLine(this.codeHost, fn.line);
    }
  }

  private onTreeMenu(node: TreeNode & { type: "call" }, x: number, y: number): void {
    const name = methodKey(node.method);
    showMenu(
      [
        {
          label: `next invocation of ${name}`,
          action: () => void this.jumpToMethod(node.method, node.seq, "next"),
        },
        {
          label: `previous invocation of ${name}`,
          action: () => void this.jumpToMethod(node.method, node.seq, "prev"),
        },
        {
          label: "recursive callees…",
          action: () => void this.showCallees(node.seq, x, y),
        },
      ],
      x,
      y,
    );
  }

  private async showCallees(seq: number, x: number, y: number): Promise<void> {
    if (!this.run) return;
    const payload = await this.api.callees(this.run.run_id, seq);
    if (payload.methods.length === 0) {
      showMenu([{ label: "(no callees)", action: closeMenu }], x, y);
      return;
    }
    showMenu(
      payload.methods.map((method) => ({
        label: methodKey(method),
        action: () => void this.jumpToMethod(method, seq, "next"),
      })),
      x,
      y,
    );
  }

  openInspector(title: string, value: Snapshot): void {
    this.mainHost.querySelector(".inspector")?.remove();
    this.mainHost.appendChild(renderInspector(value, { title }));
  }
}

export function bootstrap(root: HTMLElement): App {
  const params = new URLSearchParams(window.location.search);
  const base = params.get("api") ?? "http://127.0.0.1:8787";
  return new App(root, {
    api: new ApiClient(base),
    events: (onRuns) => subscribeRuns(base, onRuns),
  });
}
