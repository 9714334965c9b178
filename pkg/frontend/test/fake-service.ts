// In-memory double of the /v1 service contract, faithful enough for the
// console tests: versioned documents, validation echoes, generate/train
// gating, an exact-match "classifier", and the corrections loop.

import type { KbDocument, TemplateRow, Violation } from "../src/types.js";

interface Stored {
  question: string;
  intent: string;
}

function jsonResponse(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

function textResponse(status: number, body: string): Response {
  return new Response(body, { status, headers: { "content-type": "application/json" } });
}

export class FakeService {
  version = 1;
  kbText: string;
  templatesText = "[]";
  corrections: Stored[] = [];
  dataset: Stored[] | null = null;
  model: Map<string, string> | null = null;
  modelVersion: number | null = null;
  requests: string[] = [];

  constructor(kb?: KbDocument) {
    this.kbText = JSON.stringify(kb ?? {
      domain: "test course",
      categories: [
        { label: "teachingstaff", kind: "unstructured" },
        { label: "officehours", kind: "unstructured" },
        { label: "intellectualpropertypolicy", kind: "unstructured" },
        { label: "duedate", kind: "structured" },
      ],
      unstructured: [
        { id: 1, label: "teachingstaff", keywords: ["teaches"],
          response_text: "Dr. Gray teaches the course.", response_source: "syllabus" },
        { id: 2, label: "officehours", keywords: ["office hours"],
          response_text: "Fridays at noon.", response_source: "syllabus" },
        { id: 3, label: "intellectualpropertypolicy", keywords: ["share"],
          response_text: "Do not share solutions publicly.", response_source: "syllabus" },
      ],
      structured: [
        { id: 1, identified: "Assignment 1", object_keywords: ["assignment 1", "a1"],
          attributes: { duedate: "June 15" } },
      ],
    }, null, 2);
  }

  fetch = async (input: string, init?: RequestInit): Promise<Response> => {
    const method = (init?.method ?? "GET").toUpperCase();
    const path = new URL(input, "http://fake").pathname;
    const body = typeof init?.body === "string" ? init.body : "";
    this.requests.push(`${method} ${path}`);

    if (method === "GET" && path === "/v1/health") {
      return jsonResponse(200, {
        status: "ok", version: this.version, model_loaded: this.model !== null,
      });
    }
    if (method === "GET" && path === "/v1/kb") return textResponse(200, this.kbText);
    if (method === "GET" && path === "/v1/templates") return textResponse(200, this.templatesText);
    if (method === "PUT" && path === "/v1/kb") return this.putKb(body);
    if (method === "PUT" && path === "/v1/templates") return this.putTemplates(body);
    if (method === "POST" && path === "/v1/generate") return this.generate();
    if (method === "POST" && path === "/v1/train") return this.train();
    if (method === "POST" && path === "/v1/ask") return this.ask(body);
    if (method === "POST" && path === "/v1/feedback") return this.feedback(body);
    return jsonResponse(404, { detail: `no route ${method} ${path}` });
  };

  private putKb(body: string): Response {
    let doc: KbDocument;
    try {
      doc = JSON.parse(body) as KbDocument;
    } catch {
      return jsonResponse(422, {
        valid: false,
        violations: [{ code: "SYNTAX_ERROR", locator: "$", message: "bad JSON" }],
      });
    }
    const seen = new Set<string>();
    const violations: Violation[] = [];
    for (const category of doc.categories ?? []) {
      if (seen.has(category.label)) {
        violations.push({ code: "DUPLICATE_LABEL", locator: `categories`,
          message: `label '${category.label}' duplicated` });
      }
      seen.add(category.label);
    }
    if (violations.length > 0) return jsonResponse(422, { valid: false, violations });
    this.kbText = body;
    this.version += 1;
    return jsonResponse(200, { version: this.version, valid: true, violations: [] });
  }

  private putTemplates(body: string): Response {
    let rows: TemplateRow[];
    try {
      rows = JSON.parse(body) as TemplateRow[];
    } catch {
      return jsonResponse(422, {
        valid: false,
        violations: [{ code: "SYNTAX_ERROR", locator: "$", message: "bad JSON" }],
      });
    }
    const violations: Violation[] = [];
    rows.forEach((row, i) => {
      const slots = row.template.match(/\{[a-z][a-z0-9_]*\}/g) ?? [];
      if (slots.length > 1) {
        violations.push({ code: "MULTIPLE_SLOTS", locator: `templates[${i}] (id=${row.id})`,
          message: "template has more than one slot" });
      }
    });
    if (violations.length > 0) return jsonResponse(422, { valid: false, violations });
    this.templatesText = body;
    this.version += 1;
    return jsonResponse(200, { version: this.version, valid: true, violations: [] });
  }

  private generate(): Response {
    const rows = JSON.parse(this.templatesText) as TemplateRow[];
    this.dataset = rows
      .filter(row => !row.template.includes("{"))
      .map(row => ({ question: row.template, intent: row.intent }));
    this.version += 1;
    const perIntent: Record<string, number> = {};
    for (const row of this.dataset) {
      perIntent[row.intent] = (perIntent[row.intent] ?? 0) + 1;
    }
    return jsonResponse(200, {
      raw_count: this.dataset.length, unique_count: this.dataset.length,
      per_intent_counts: perIntent, conflicts: [], version: this.version,
    });
  }

  private train(): Response {
    if (this.dataset === null) {
      return jsonResponse(409, { detail: "run generate first" });
    }
    this.model = new Map();
    for (const row of [...this.dataset, ...this.corrections]) {
      this.model.set(row.question.toLowerCase(), row.intent);
    }
    this.version += 1;
    this.modelVersion = this.version;
    return jsonResponse(200, {
      version: this.version,
      eval: { total: this.dataset.length, answered: this.dataset.length,
        correct_answered: this.dataset.length, coverage: 1, precision: 1,
        intent_accuracy: 1, confusion: [], threshold: 0.5 },
    });
  }

  private ask(body: string): Response {
    const req = JSON.parse(body) as { question: string; threshold?: number };
    if (!req.question || req.question.trim() === "") {
      return jsonResponse(400, { detail: "question must be non-empty" });
    }
    if (this.model === null) {
      return jsonResponse(409, { detail: "no trained model yet" });
    }
    const intent = this.model.get(req.question.toLowerCase());
    if (intent === undefined) {
      return jsonResponse(200, {
        question: req.question, intent: "officehours", confidence: 0.2,
        status: "abstained", abstain_reason: "LOW_CONFIDENCE", version: this.modelVersion,
      });
    }
    return jsonResponse(200, {
      question: req.question, intent, confidence: 0.93, status: "answered",
      response_text: `response for ${intent}`, response_source: "syllabus",
      version: this.modelVersion,
    });
  }

  private feedback(body: string): Response {
    const req = JSON.parse(body) as { question: string; intent: string };
    const kb = JSON.parse(this.kbText) as KbDocument;
    if (!kb.categories.some(c => c.label === req.intent)) {
      return jsonResponse(422, { detail: `intent '${req.intent}' is not in the taxonomy` });
    }
    this.corrections.push({ question: req.question, intent: req.intent });
    this.version += 1;
    return jsonResponse(200, { recorded: true, pending: this.corrections.length });
  }
}
