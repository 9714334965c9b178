// Browser bootstrap: wires the controller to the page. All rendering goes
// through the pure functions in render.ts; this file is only DOM glue.

import { ApiClient } from "./api.js";
import { ConsoleController } from "./controller.js";
import {
  renderAnswerCard, renderEvalReport, renderGenerationReport, renderHistory,
  renderKbTables, renderTemplateTable, renderViolations,
} from "./render.js";
import { ConsoleSession } from "./state.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function resolveBaseUrl(): string {
  const fromQuery = new URLSearchParams(window.location.search).get("api");
  const stored = window.localStorage.getItem("faqforge-api");
  return fromQuery ?? stored ?? "http://localhost:8080";
}

async function bootstrap(): Promise<void> {
  const baseUrl = resolveBaseUrl();
  window.localStorage.setItem("faqforge-api", baseUrl);
  el<HTMLInputElement>("base-url").value = baseUrl;

  const controller = new ConsoleController(
    new ApiClient(baseUrl), new ConsoleSession(baseUrl));

  const status = el<HTMLElement>("status");
  const renderStatus = () => {
    const { version, modelLoaded } = controller.session;
    status.textContent =
      `workspace v${version} — model ${modelLoaded ? "loaded" : "not trained yet"}`;
  };

  const renderDocs = () => {
    el<HTMLTextAreaElement>("kb-editor").value = controller.session.kbText;
    el<HTMLTextAreaElement>("template-editor").value = controller.session.templatesText;
    try {
      el("kb-view").innerHTML = renderKbTables(controller.kbDocument());
      el("template-view").innerHTML = renderTemplateTable(controller.templateRows());
    } catch {
      // editors may hold in-progress invalid JSON; keep the last good view
    }
  };

  const renderReports = () => {
    const { lastGeneration, lastEval } = controller.session;
    el("generation-view").innerHTML =
      lastGeneration ? renderGenerationReport(lastGeneration) : "";
    el("eval-view").innerHTML = lastEval ? renderEvalReport(lastEval) : "";
  };

  const renderAsk = () => {
    el("history").innerHTML = renderHistory(controller.session.askHistory);
  };

  await controller.refresh();
  renderStatus();
  renderDocs();

  el("base-url-save").addEventListener("click", () => {
    window.localStorage.setItem(
      "faqforge-api", el<HTMLInputElement>("base-url").value);
    window.location.reload();
  });

  el("kb-save").addEventListener("click", async () => {
    const result = await controller.saveKb(el<HTMLTextAreaElement>("kb-editor").value);
    el("kb-validation").innerHTML = renderViolations(result.violations);
    renderStatus();
    if (result.ok) renderDocs();
  });

  el("template-save").addEventListener("click", async () => {
    const result = await controller.saveTemplates(
      el<HTMLTextAreaElement>("template-editor").value);
    el("template-validation").innerHTML = renderViolations(result.violations);
    renderStatus();
    if (result.ok) renderDocs();
  });

  el("generate").addEventListener("click", async () => {
    await controller.generate();
    renderStatus();
    renderReports();
  });

  el("train").addEventListener("click", async () => {
    await controller.train();
    renderStatus();
    renderReports();
  });

  el("ask-send").addEventListener("click", async () => {
    const question = el<HTMLInputElement>("ask-input").value.trim();
    if (!question) return;
    const answer = await controller.ask(question);
    el("ask-result").innerHTML = renderAnswerCard(answer);
    renderAsk();
  });

  // Feedback buttons are rendered into answer cards; delegate the clicks.
  document.addEventListener("click", async event => {
    const target = event.target as HTMLElement;
    if (!target.classList.contains("feedback")) return;
    const question = target.dataset.question ?? "";
    const intent = window.prompt(`correct intent for: ${question}`);
    if (!intent) return;
    try {
      const result = await controller.sendFeedback(question, intent);
      target.textContent = `recorded (${result.pending} pending; retrain to apply)`;
    } catch (err) {
      target.textContent = `rejected: ${String(err)}`;
    }
  });

  // Optimistic refresh when another actor bumps the workspace version.
  window.setInterval(async () => {
    try {
      if (await controller.pollVersion()) {
        await controller.refresh();
        renderStatus();
        renderDocs();
      }
    } catch {
      status.textContent = "service unreachable";
    }
  }, 3000);
}

bootstrap().catch(err => {
  document.body.insertAdjacentHTML(
    "afterbegin", `<p class="boot-error">cannot reach service: ${String(err)}</p>`);
});
