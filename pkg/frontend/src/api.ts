import type {
  AnnotationsPayload,
  CalleesPayload,
  DetailedPathsPayload,
  ExamplesPayload,
  FindPayload,
  ProbeLogPayload,
  ProbeValuesPayload,
  ProceduresPayload,
  RunSummary,
  SourcePayload,
  SuccessionPayload,
  SummarizedPathsPayload,
  TreePayload,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly code: string,
    message: string,
    readonly status: number,
    readonly detail?: unknown,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export interface TreeQuery {
  filter?: string;
  depth?: number;
  childrenOf?: number;
}

function buildQuery(params: Record<string, string | number | undefined>): string {
  const search = new URLSearchParams();
  for (const [key, value] of Object.entries(params)) {
    if (value !== undefined) search.set(key, String(value));
  }
  const text = search.toString();
  return text ? `?${text}` : "";
}

export class ApiClient {
  constructor(readonly base: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const res = await fetch(this.base + path, init);
    if (!res.ok) {
      let code = "http-error";
      let message = `${res.status} ${res.statusText}`;
      let detail: unknown;
      try {
        const body = await res.json();
        if (body && body.error) {
          code = body.error.code ?? code;
          message = body.error.message ?? message;
          detail = body.error.detail;
        }
      } catch {
        // non-JSON error body; keep the status line
      }
      throw new ApiError(code, message, res.status, detail);
    }
    return res.json() as Promise<T>;
  }

  private post<T>(path: string, body?: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: body === undefined ? "{}" : JSON.stringify(body),
    });
  }

  examples(): Promise<ExamplesPayload> {
    return this.request("/examples");
  }

  source(module: string): Promise<SourcePayload> {
    // module paths may contain slashes; those stay literal path segments
    return this.request(`/source/${module}`);
  }

  tree(runId: string, query: TreeQuery = {}): Promise<TreePayload> {
    const qs = buildQuery({
      filter: query.filter,
      depth: query.depth,
      "children-of": query.childrenOf,
    });
    return this.request(`/runs/${runId}/tree${qs}`);
  }

  procedures(runId: string): Promise<ProceduresPayload> {
    return this.request(`/runs/${runId}/procedures`);
  }

  annotations(runId: string): Promise<AnnotationsPayload> {
    return this.request(`/runs/${runId}/annotations`);
  }

  summarizedPaths(runId: string, target: string): Promise<SummarizedPathsPayload> {
    const qs = buildQuery({ target, mode: "summarized" });
    return this.request(`/runs/${runId}/paths${qs}`);
  }

  detailedPaths(runId: string, target: string): Promise<DetailedPathsPayload> {
    const qs = buildQuery({ target, mode: "detailed" });
    return this.request(`/runs/${runId}/paths${qs}`);
  }

  probeValues(runId: string, probeId: string): Promise<ProbeValuesPayload> {
    return this.request(`/runs/${runId}/probe/${encodeURIComponent(probeId)}/values`);
  }

  probeLog(runId: string): Promise<ProbeLogPayload> {
    return this.request(`/runs/${runId}/probe-log`);
  }

  succession(runId: string, seq: number): Promise<SuccessionPayload> {
    return this.request(`/runs/${runId}/node/${seq}/succession`);
  }

  callees(runId: string, seq: number): Promise<CalleesPayload> {
    return this.request(`/runs/${runId}/node/${seq}/callees`);
  }

  find(
    runId: string,
    method: string,
    fromSeq: number,
    dir: "next" | "prev",
  ): Promise<FindPayload> {
    const qs = buildQuery({ method, from: fromSeq, dir });
    return this.request(`/runs/${runId}/find${qs}`);
  }

  run(exampleId: string): Promise<RunSummary> {
    return this.post(`/run/${encodeURIComponent(exampleId)}`);
  }

  setActive(exampleId: string, active: boolean): Promise<{ example_id: string; active: boolean; run_id: string | null }> {
    return this.post(`/examples/${encodeURIComponent(exampleId)}/active`, { active });
  }

  setScope(modules: string[] | null): Promise<{ scope: string[] | null; run_ids: string[] }> {
    return this.post("/scope", { modules });
  }
}
