// Payload types for the /v1 service API.

export interface Category {
  label: string;
  kind: "unstructured" | "structured";
}

export interface UnstructuredFact {
  id: number;
  label: string;
  keywords: string[];
  response_text: string;
  response_source: string;
}

export interface StructuredEntity {
  id: number;
  identified: string;
  object_keywords: string[];
  attributes: Record<string, string>;
}

export interface KbDocument {
  domain: string;
  categories: Category[];
  unstructured: UnstructuredFact[];
  structured: StructuredEntity[];
  attribute_patterns?: Record<string, string>;
}

export interface TemplateRow {
  id: number;
  intent: string;
  keyword_source: string | null;
  template: string;
  example: boolean;
}

export interface Violation {
  code: string;
  locator: string;
  message: string;
}

export interface PutResult {
  ok: boolean;
  version?: number;
  violations: Violation[];
}

export interface GenerationReport {
  raw_count: number;
  unique_count: number;
  per_intent_counts: Record<string, number>;
  conflicts: { question: string; intents: string[] }[];
  version?: number;
}

export interface ConfusionRow {
  gold: string;
  predicted: string;
  count: number;
}

export interface EvalReport {
  total: number;
  answered: number;
  correct_answered: number;
  coverage: number | null;
  precision: number | null;
  intent_accuracy: number | null;
  confusion: ConfusionRow[];
  threshold: number;
}

export interface TrainResponse {
  version: number;
  eval: EvalReport;
}

export interface Answer {
  question: string;
  intent: string;
  confidence: number;
  status: "answered" | "abstained";
  response_text?: string;
  response_source?: string;
  entity_id?: number;
  abstain_reason?: "LOW_CONFIDENCE" | "NO_ENTITY" | "MISSING_ATTRIBUTE" | "NO_FACT";
  version?: number;
}

export interface Health {
  status: string;
  version: number;
  model_loaded: boolean;
}

export interface FeedbackResponse {
  recorded: boolean;
  pending: number;
}
