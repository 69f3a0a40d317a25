// Wire types for the crosscut HTTP API. Field names match the JSON
// payloads exactly; keep them in sync with the server.

export interface MethodRef {
  module: string;
  name: string;
}

export function methodKey(m: MethodRef): string {
  return `${m.module}/${m.name}`;
}

// Recorded values are JSON with reserved "$" markers for the things
// plain JSON cannot say (functions, cycles, truncation, non-finite
// floats, error outcomes).
export type Snapshot =
  | number
  | string
  | boolean
  | null
  | Snapshot[]
  | { [key: string]: Snapshot };

export interface RunSummary {
  run_id: string;
  example_id: string;
  status: "completed" | "failed" | "overflowed";
  error: { kind: string; message: string } | null;
  stale: boolean;
  generation: number;
  traced_duration_ms: number;
  event_count: number;
  print_log: string[];
}

export interface ExampleEntry {
  id: string;
  module: string;
  name: string;
  active: boolean;
  has_setup: boolean;
  has_teardown: boolean;
  run: RunSummary | null;
}

export interface ExamplesPayload {
  examples: ExampleEntry[];
  generation: number;
  broken: Record<string, string>;
  scope: string[] | null;
}

export interface CallNode {
  type: "call";
  seq: number;
  frame: number;
  method: MethodRef;
  site: string | null;
  args: Snapshot[];
  exit_kind: "normal" | "exception";
  result: Snapshot;
  child_count: number;
  children?: TreeNode[];
  truncated?: boolean;
  match?: boolean;
  visible?: boolean;
}

export interface HitNode {
  type: "probe";
  seq: number;
  probe: string;
  frame: number;
  value: Snapshot;
  path_index: number | null;
  excerpt?: string;
  match?: boolean;
  visible?: boolean;
}

export type TreeNode = CallNode | HitNode;

export interface TreePayload {
  run_id: string;
  example_id: string;
  status: RunSummary["status"];
  error: RunSummary["error"];
  stale: boolean;
  generation: number;
  filter?: string;
  root?: TreeNode | null;
  children_of?: number;
  children?: TreeNode[];
}

export interface SummarizedPath {
  methods: MethodRef[];
  hit_count: number;
  color_index: number;
  member_seqs: number[];
  first_seq: number;
}

export interface SummarizedPathsPayload {
  run_id: string;
  target: string;
  mode: "summarized";
  common_ancestor_depth: number;
  context_sensitive_ancestor: number;
  paths: SummarizedPath[];
}

export interface DetailedFrame {
  frame: number;
  method: MethodRef;
}

export interface DetailedPath {
  frames: DetailedFrame[];
  terminal_seq: number;
  kind: "probe" | "call";
  value: Snapshot;
  exit_kind?: "normal" | "exception";
}

export interface DetailedPathsPayload {
  run_id: string;
  target: string;
  mode: "detailed";
  paths: DetailedPath[];
}

export interface ProbeValueEntry {
  value: Snapshot;
  seq: number;
  path_color_index: number | null;
}

export interface ProbeValuesPayload {
  run_id: string;
  probe: string;
  values: ProbeValueEntry[];
}

export interface ProbeLogEntry {
  probe: string;
  seq: number;
  value: Snapshot;
  excerpt?: string;
}

export interface ProbeLogPayload {
  run_id: string;
  entries: ProbeLogEntry[];
}

export interface ProcedureRow {
  method: MethodRef;
  count: number;
}

export interface ProceduresPayload {
  run_id: string;
  procedures: ProcedureRow[];
}

export interface AnnotationRow {
  probe: string;
  count: number;
  method?: MethodRef;
  excerpt?: string;
}

export interface AnnotationsPayload {
  run_id: string;
  annotations: AnnotationRow[];
}

export interface HitBrief {
  seq: number;
  probe: string;
  value: Snapshot;
  frame: number;
}

export interface SuccessionPayload {
  run_id: string;
  seq: number;
  prev: HitBrief | null;
  next: HitBrief | null;
}

export interface CalleesPayload {
  run_id: string;
  seq: number;
  methods: MethodRef[];
}

export interface FindPayload {
  run_id: string;
  node: CallNode | null;
}

export interface SourceProbe {
  probe: string;
  line: number;
  col: number;
  end_line: number;
  end_col: number;
  excerpt: string;
  method: MethodRef;
}

export interface SourceFunction {
  name: string;
  line: number;
  col: number;
}

export interface SourceExample {
  id: string;
  name: string;
  line: number;
  col: number;
}

export interface SourcePayload {
  module: string;
  text: string;
  probes: SourceProbe[];
  functions: SourceFunction[];
  examples: SourceExample[];
}

export interface RunsUpdatedEvent {
  type: "runs-updated";
  run_ids: string[];
}
