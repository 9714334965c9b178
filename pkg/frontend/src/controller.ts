// Console controller: every user action round-trips through the service API
// and the refreshed state lands in the session. The console never holds
// authoritative data, so a page reload (fresh session + refresh()) must
// reproduce everything except the session-local ask history.

import { ApiClient } from "./api.js";
import { ConsoleSession } from "./state.js";
import type {
  Answer, FeedbackResponse, GenerationReport, KbDocument, PutResult,
  TemplateRow, TrainResponse,
} from "./types.js";

export class ConsoleController {
  constructor(public api: ApiClient, public session: ConsoleSession) {}

  /** Pull all displayable state from the service (page load / reload). */
  async refresh(): Promise<void> {
    const health = await this.api.health();
    this.session.applyHealth(health);
    this.session.kbText = await this.api.getKbText();
    this.session.templatesText = await this.api.getTemplatesText();
  }

  /** Poll /v1/health; true when another actor moved the workspace version. */
  async pollVersion(): Promise<boolean> {
    const seen = this.session.version;
    const health = await this.api.health();
    this.session.applyHealth(health);
    return health.version !== seen;
  }

  kbDocument(): KbDocument {
    return JSON.parse(this.session.kbText) as KbDocument;
  }

  templateRows(): TemplateRow[] {
    return JSON.parse(this.session.templatesText) as TemplateRow[];
  }

  async saveKb(document: string): Promise<PutResult> {
    const result = await this.api.putKb(document);
    if (result.ok) {
      this.session.kbText = document;
      if (result.version !== undefined) this.session.version = result.version;
    }
    return result;
  }

  async saveTemplates(document: string): Promise<PutResult> {
    const result = await this.api.putTemplates(document);
    if (result.ok) {
      this.session.templatesText = document;
      if (result.version !== undefined) this.session.version = result.version;
    }
    return result;
  }

  async generate(): Promise<GenerationReport> {
    const report = await this.api.generate();
    this.session.lastGeneration = report;
    if (report.version !== undefined) this.session.version = report.version;
    return report;
  }

  async train(opts: { alpha?: number; holdout?: number; seed?: number } = {}): Promise<TrainResponse> {
    const result = await this.api.train(opts);
    this.session.version = result.version;
    this.session.modelLoaded = true;
    this.session.lastEval = result.eval;
    return result;
  }

  async ask(question: string, threshold?: number): Promise<Answer> {
    const answer = await this.api.ask(question, threshold);
    this.session.recordAsk(question, answer);
    return answer;
  }

  async sendFeedback(question: string, intent: string): Promise<FeedbackResponse> {
    return this.api.feedback(question, intent);
  }
}
