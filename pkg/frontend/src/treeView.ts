import { colorSwatch } from "./palette.js";
import { formatValue } from "./format.js";
import { methodKey } from "./types.js";
import type { CallNode, TreeNode, TreePayload } from "./types.js";

export interface TreeViewOptions {
  onSelect?: (node: TreeNode) => void;
  onRowDoubleClick?: (node: TreeNode) => void;
  onRowMenu?: (node: CallNode, x: number, y: number) => void;
  // Lazy children for depth-limited payloads; grafted on first expand.
  fetchChildren?: (seq: number) => Promise<TreeNode[]>;
}

// Call-tree explorer. Without a filter the tree starts collapsed at the
// root and rows expand on demand; with a filter every visible row is
// shown at once, matching rows highlighted, ancestors providing context.
export class TreeView {
  readonly el: HTMLElement;
  private expanded = new Set<number>();
  private selection: number | null = null;

  constructor(
    private payload: TreePayload,
    private options: TreeViewOptions = {},
  ) {
    this.el = document.createElement("div");
    this.el.className = "tree-view";
    this.render();
  }

  setPayload(payload: TreePayload): void {
    this.payload = payload;
    this.render();
  }

  setSelection(seq: number | null): void {
    this.selection = seq;
    if (seq !== null) this.expandAncestors(seq);
    this.render();
  }

  toggle(seq: number): void {
    if (this.expanded.has(seq)) {
      this.expanded.delete(seq);
      this.render();
      return;
    }
    this.expanded.add(seq);
    const node = this.findNode(seq);
    if (node && node.type === "call" && node.truncated && !node.children && this.options.fetchChildren) {
      this.options.fetchChildren(seq).then((children) => {
        if (node.children) return;
        node.children = children;
        delete node.truncated;
        this.render();
      });
      return;
    }
    this.render();
  }

  private findNode(seq: number, node: TreeNode | null | undefined = this.payload.root): TreeNode | null {
    if (!node) return null;
    if (node.seq === seq) return node;
    if (node.type !== "call") return null;
    for (const child of node.children ?? []) {
      const found = this.findNode(seq, child);
      if (found) return found;
    }
    return null;
  }

  // Expand every call on the path from the root to seq so the row is
  // actually rendered; used by "reveal" jumps from other views.
  private expandAncestors(seq: number): void {
    const path: number[] = [];
    const walk = (node: TreeNode): boolean => {
      if (node.seq === seq) return true;
      if (node.type !== "call") return false;
      path.push(node.seq);
      for (const child of node.children ?? []) {
        if (walk(child)) return true;
      }
      path.pop();
      return false;
    };
    if (this.payload.root && walk(this.payload.root)) {
      for (const s of path) this.expanded.add(s);
    }
  }

  private render(): void {
    this.el.textContent = "";
    const root = this.payload.root;
    if (!root) {
      const empty = document.createElement("div");
      empty.className = "empty";
      empty.textContent = "no frames recorded";
      this.el.appendChild(empty);
      return;
    }
    const filtered = this.payload.filter !== undefined;
    this.renderNode(root, 0, filtered);
  }

  private renderNode(node: TreeNode, depth: number, filtered: boolean): void {
    if (filtered && node.visible === false) return;
    this.el.appendChild(this.renderRow(node, depth, filtered));
    if (node.type !== "call") return;
    if (!filtered && !this.expanded.has(node.seq)) return;
    for (const child of node.children ?? []) {
      this.renderNode(child, depth + 1, filtered);
    }
  }

  private renderRow(node: TreeNode, depth: number, filtered: boolean): HTMLElement {
    const row = document.createElement("div");
    row.className = `tree-row ${node.type === "call" ? "call" : "hit"}`;
    row.dataset.seq = String(node.seq);
    row.style.paddingLeft = `${depth * 14}px`;
    if (node.match) row.classList.add("match");
    if (node.seq === this.selection) row.classList.add("selected");

    if (node.type === "call" && node.child_count > 0 && !filtered) {
      const toggle = document.createElement("button");
      toggle.type = "button";
      toggle.className = "toggle";
      toggle.textContent = this.expanded.has(node.seq) ? "▾" : "▸";
      toggle.addEventListener("click", (ev) => {
        ev.stopPropagation();
        this.toggle(node.seq);
      });
      row.appendChild(toggle);
    } else {
      const spacer = document.createElement("span");
      spacer.className = "toggle-spacer";
      row.appendChild(spacer);
    }

    if (node.type === "call") {
      const label = document.createElement("span");
      label.className = "row-label";
      label.textContent = methodKey(node.method);
      row.appendChild(label);

      const frame = document.createElement("span");
      frame.className = "frame-id";
      frame.textContent = `[${node.frame}]`;
      row.appendChild(frame);

      if (node.exit_kind === "exception") {
        row.classList.add("exception");
        const flag = document.createElement("span");
        flag.className = "flag";
        flag.textContent = "!";
        row.appendChild(flag);
      } else {
        const result = document.createElement("span");
        result.className = "result";
        result.textContent = `→ ${formatValue(node.result, 30)}`;
        row.appendChild(result);
      }

      if (!filtered && node.child_count > 0 && !this.expanded.has(node.seq)) {
        const count = document.createElement("span");
        count.className = "child-count";
        count.textContent = `(${node.child_count})`;
        row.appendChild(count);
      }
    } else {
      if (node.path_index !== null) {
        row.appendChild(colorSwatch(node.path_index, "value-bar"));
      }
      const label = document.createElement("span");
      label.className = "row-label";
      label.textContent = formatValue(node.value, 30);
      row.appendChild(label);
      if (node.excerpt !== undefined) {
        const excerpt = document.createElement("span");
        excerpt.className = "probe-excerpt";
        excerpt.textContent = `[${node.excerpt}]`;
        row.appendChild(excerpt);
      }
    }

    row.addEventListener("click", () => {
      this.selection = node.seq;
      this.options.onSelect?.(node);
      this.render();
    });
    row.addEventListener("dblclick", () => this.options.onRowDoubleClick?.(node));
    if (node.type === "call" && this.options.onRowMenu) {
      row.addEventListener("contextmenu", (ev) => {
        ev.preventDefault();
        this.options.onRowMenu?.(node, ev.clientX, ev.clientY);
      });
    }
    return row;
  }
}
