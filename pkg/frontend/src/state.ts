// Session state for one console tab. The console holds no authoritative
// data: everything here is reconstructable from service GETs, except the
// append-only ask history, which is deliberately session-local.

import type { Answer, EvalReport, GenerationReport, Health } from "./types.js";

export interface AskEntry {
  question: string;
  answer: Answer;
}

export class ConsoleSession {
  version = 0;
  modelLoaded = false;
  lastEval: EvalReport | null = null;
  lastGeneration: GenerationReport | null = null;
  kbText = "";
  templatesText = "";
  private history: AskEntry[] = [];

  constructor(public baseUrl: string) {}

  get askHistory(): readonly AskEntry[] {
    return this.history;
  }

  recordAsk(question: string, answer: Answer): void {
    this.history.push({ question, answer });
  }

  applyHealth(health: Health): void {
    this.version = health.version;
    this.modelLoaded = health.model_loaded;
  }
}
