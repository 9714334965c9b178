// Thin typed client for the /v1 service API. The fetch implementation is
// injectable so tests can run against an in-memory service double.

import type {
  Answer, FeedbackResponse, GenerationReport, Health, PutResult, TrainResponse,
  Violation,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(public status: number, public detail: unknown) {
    super(`service returned ${status}: ${JSON.stringify(detail)}`);
  }
}

interface ViolationBody {
  violations?: Violation[];
}

export class ApiClient {
  constructor(private baseUrl: string, private fetchFn?: FetchLike) {}

  private fetcher(): FetchLike {
    return this.fetchFn ?? ((input, init) => fetch(input, init));
  }

  private url(path: string): string {
    return this.baseUrl.replace(/\/$/, "") + path;
  }

  private async json<T>(resp: Response): Promise<T> {
    if (!resp.ok) {
      let detail: unknown;
      try {
        detail = await resp.json();
      } catch {
        detail = await resp.text();
      }
      throw new ApiError(resp.status, detail);
    }
    return (await resp.json()) as T;
  }

  async health(): Promise<Health> {
    return this.json(await this.fetcher()(this.url("/v1/health")));
  }

  /** Raw document text, preserved byte-for-byte for the editors. */
  async getKbText(): Promise<string> {
    const resp = await this.fetcher()(this.url("/v1/kb"));
    if (!resp.ok) throw new ApiError(resp.status, await resp.text());
    return resp.text();
  }

  async getTemplatesText(): Promise<string> {
    const resp = await this.fetcher()(this.url("/v1/templates"));
    if (!resp.ok) throw new ApiError(resp.status, await resp.text());
    return resp.text();
  }

  /** PUT a document; 422 violation reports come back as a result, not a throw,
      so editors can echo them inline. */
  private async putDocument(path: string, document: string): Promise<PutResult> {
    const resp = await this.fetcher()(this.url(path), {
      method: "PUT",
      headers: { "content-type": "application/json" },
      body: document,
    });
    if (resp.status === 422) {
      const body = (await resp.json()) as ViolationBody;
      return { ok: false, violations: body.violations ?? [] };
    }
    const body = await this.json<{ version: number; violations: Violation[] }>(resp);
    return { ok: true, version: body.version, violations: body.violations ?? [] };
  }

  putKb(document: string): Promise<PutResult> {
    return this.putDocument("/v1/kb", document);
  }

  putTemplates(document: string): Promise<PutResult> {
    return this.putDocument("/v1/templates", document);
  }

  async generate(): Promise<GenerationReport> {
    const resp = await this.fetcher()(this.url("/v1/generate"), { method: "POST" });
    return this.json(resp);
  }

  async train(opts: { alpha?: number; holdout?: number; seed?: number } = {}): Promise<TrainResponse> {
    const resp = await this.fetcher()(this.url("/v1/train"), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(opts),
    });
    return this.json(resp);
  }

  async ask(question: string, threshold?: number): Promise<Answer> {
    const body: Record<string, unknown> = { question };
    if (threshold !== undefined) body.threshold = threshold;
    const resp = await this.fetcher()(this.url("/v1/ask"), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    return this.json(resp);
  }

  async feedback(question: string, intent: string): Promise<FeedbackResponse> {
    const resp = await this.fetcher()(this.url("/v1/feedback"), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ question, intent }),
    });
    return this.json(resp);
  }
}
