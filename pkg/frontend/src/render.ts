// Pure HTML-string renderers. No DOM access here, so every view is unit
// testable in a plain node environment.

import { escapeHtml, highlightTemplate } from "./slots.js";
import type {
  Answer, EvalReport, GenerationReport, KbDocument, TemplateRow, Violation,
} from "./types.js";
import type { AskEntry } from "./state.js";

export function renderViolations(violations: Violation[]): string {
  if (violations.length === 0) {
    return `<p class="ok">valid</p>`;
  }
  const rows = violations.map(v =>
    `<li><code>${escapeHtml(v.code)}</code> at ${escapeHtml(v.locator)}: ` +
    `${escapeHtml(v.message)}</li>`).join("");
  return `<ul class="violations">${rows}</ul>`;
}

export function renderConfidenceBar(confidence: number): string {
  const pct = Math.round(confidence * 100);
  return `<div class="confidence"><div class="confidence-fill" style="width:${pct}%"></div>` +
    `<span>${pct}%</span></div>`;
}

export function renderAnswerCard(answer: Answer): string {
  const head =
    `<div class="answer-head"><span class="intent">${escapeHtml(answer.intent)}</span>` +
    renderConfidenceBar(answer.confidence) + `</div>`;
  let body: string;
  if (answer.status === "answered") {
    const source = answer.response_source
      ? `<div class="source">${escapeHtml(answer.response_source)}</div>` : "";
    body = `<div class="response">${escapeHtml(answer.response_text ?? "")}</div>${source}`;
  } else {
    body = `<div class="abstained">abstained: ` +
      `<code>${escapeHtml(answer.abstain_reason ?? "")}</code></div>`;
  }
  const version = answer.version !== undefined
    ? `<div class="version">snapshot v${answer.version}</div>` : "";
  const feedback =
    `<button class="feedback" data-question="${escapeHtml(answer.question)}">` +
    `wrong? teach the right intent</button>`;
  return `<div class="answer-card" data-status="${answer.status}">` +
    `${head}${body}${version}${feedback}</div>`;
}

export function renderKbTables(kb: KbDocument): string {
  const categories = kb.categories.map(c =>
    `<tr><td>${escapeHtml(c.label)}</td><td>${c.kind}</td></tr>`).join("");
  const facts = kb.unstructured.map(f =>
    `<tr><td>${f.id}</td><td>${escapeHtml(f.label)}</td>` +
    `<td>${escapeHtml(f.keywords.join(", "))}</td>` +
    `<td>${escapeHtml(f.response_text)}</td></tr>`).join("");
  const entities = kb.structured.map(e => {
    const attrs = Object.entries(e.attributes)
      .map(([k, v]) => `${escapeHtml(k)}=${escapeHtml(v)}`).join("; ");
    return `<tr><td>${e.id}</td><td>${escapeHtml(e.identified)}</td>` +
      `<td>${escapeHtml(e.object_keywords.join(", "))}</td><td>${attrs}</td></tr>`;
  }).join("");
  return `
<h3>categories (${kb.categories.length})</h3>
<table class="kb-categories"><tr><th>label</th><th>kind</th></tr>${categories}</table>
<h3>facts (${kb.unstructured.length})</h3>
<table class="kb-facts"><tr><th>id</th><th>label</th><th>keywords</th><th>response</th></tr>${facts}</table>
<h3>entities (${kb.structured.length})</h3>
<table class="kb-entities"><tr><th>id</th><th>identified</th><th>aliases</th><th>attributes</th></tr>${entities}</table>`;
}

export function perIntentTemplateCounts(templates: TemplateRow[]): Record<string, number> {
  const counts: Record<string, number> = {};
  for (const t of templates) {
    counts[t.intent] = (counts[t.intent] ?? 0) + 1;
  }
  return counts;
}

export function renderTemplateTable(templates: TemplateRow[]): string {
  const rows = templates.map(t =>
    `<tr><td>${t.id}</td><td>${escapeHtml(t.intent)}</td>` +
    `<td class="template-text">${highlightTemplate(t.template)}</td>` +
    `<td>${t.keyword_source ? escapeHtml(t.keyword_source) : "<em>none</em>"}</td>` +
    `<td>${t.example ? "yes" : ""}</td></tr>`).join("");
  const counts = perIntentTemplateCounts(templates);
  const countRows = Object.keys(counts).sort().map(intent =>
    `<tr><td>${escapeHtml(intent)}</td><td>${counts[intent]}</td></tr>`).join("");
  return `
<table class="templates"><tr><th>id</th><th>intent</th><th>template</th><th>source</th><th>example</th></tr>${rows}</table>
<h3>templates per intent</h3>
<table class="template-counts"><tr><th>intent</th><th>templates</th></tr>${countRows}</table>`;
}

export function renderGenerationReport(report: GenerationReport): string {
  const conflicts = report.conflicts.length === 0
    ? `<p class="ok">no cross-intent conflicts</p>`
    : `<ul class="conflicts">` + report.conflicts.map(c =>
        `<li>${escapeHtml(c.question)} &rarr; ${escapeHtml(c.intents.join(", "))}</li>`
      ).join("") + `</ul>`;
  return `<dl class="generation">` +
    `<dt>raw pairs</dt><dd>${report.raw_count}</dd>` +
    `<dt>unique pairs</dt><dd>${report.unique_count}</dd></dl>${conflicts}`;
}

function fmt(value: number | null): string {
  return value === null ? "n/a" : value.toFixed(4);
}

export function renderEvalReport(report: EvalReport): string {
  const wrong = report.confusion.filter(r => r.gold !== r.predicted);
  const confusion = wrong.length === 0 ? "" :
    `<h4>confusions</h4><table class="confusion">` +
    `<tr><th>gold</th><th>predicted</th><th>count</th></tr>` +
    wrong.map(r => `<tr><td>${escapeHtml(r.gold)}</td>` +
      `<td>${escapeHtml(r.predicted)}</td><td>${r.count}</td></tr>`).join("") +
    `</table>`;
  return `<dl class="eval">` +
    `<dt>test questions</dt><dd>${report.total}</dd>` +
    `<dt>coverage</dt><dd>${fmt(report.coverage)}</dd>` +
    `<dt>precision</dt><dd>${fmt(report.precision)}</dd>` +
    `<dt>intent accuracy</dt><dd>${fmt(report.intent_accuracy)}</dd></dl>${confusion}`;
}

export function renderHistory(history: readonly AskEntry[]): string {
  if (history.length === 0) {
    return `<p class="empty">no questions asked yet</p>`;
  }
  return history.map(entry =>
    `<div class="history-entry"><div class="q">${escapeHtml(entry.question)}</div>` +
    renderAnswerCard(entry.answer) + `</div>`).reverse().join("");
}
