import type { RunsUpdatedEvent } from "./types.js";

export interface EventStream {
  onmessage: ((ev: MessageEvent<string>) => void) | null;
  close(): void;
}

// The server pushes one JSON object per message on /events. Only
// "runs-updated" is defined today; anything else is ignored so new
// event types never break old clients.
export function subscribeRuns(
  base: string,
  onRuns: (runIds: string[]) => void,
  makeStream: (url: string) => EventStream = (url) => new EventSource(url),
): () => void {
  const stream = makeStream(`${base}/events`);
  stream.onmessage = (ev) => {
    let parsed: unknown;
    try {
      parsed = JSON.parse(ev.data);
    } catch {
      return;
    }
    const event = parsed as Partial<RunsUpdatedEvent>;
    if (event && event.type === "runs-updated" && Array.isArray(event.run_ids)) {
      onRuns(event.run_ids);
    }
  };
  return () => stream.close();
}
