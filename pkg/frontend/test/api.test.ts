import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { FakeService } from "./fake-service.js";

function client(service: FakeService): ApiClient {
  return new ApiClient("http://fake", service.fetch);
}

describe("ApiClient", () => {
  it("reads health", async () => {
    const service = new FakeService();
    const health = await client(service).health();
    expect(health).toEqual({ status: "ok", version: 1, model_loaded: false });
  });

  it("round-trips documents byte-for-byte", async () => {
    const service = new FakeService();
    const api = client(service);
    const text = await api.getKbText();
    const result = await api.putKb(text);
    expect(result.ok).toBe(true);
    expect(await api.getKbText()).toBe(text);
  });

  it("returns violations instead of throwing on 422", async () => {
    const service = new FakeService();
    const api = client(service);
    const kb = JSON.parse(await api.getKbText());
    kb.categories.push({ label: "teachingstaff", kind: "unstructured" });
    const result = await api.putKb(JSON.stringify(kb));
    expect(result.ok).toBe(false);
    expect(result.violations.map(v => v.code)).toContain("DUPLICATE_LABEL");
  });

  it("throws ApiError with status for non-validation failures", async () => {
    const service = new FakeService();
    const api = client(service);
    await expect(api.train()).rejects.toThrowError(ApiError);
    await expect(api.train()).rejects.toMatchObject({ status: 409 });
  });

  it("asks with an optional threshold", async () => {
    const service = new FakeService();
    const api = client(service);
    await api.putTemplates(JSON.stringify([{
      id: 1, intent: "teachingstaff", keyword_source: null,
      template: "Who teaches this class?", example: true,
    }]));
    await api.generate();
    await api.train();
    const answer = await api.ask("Who teaches this class?", 0.1);
    expect(answer.status).toBe("answered");
    expect(answer.intent).toBe("teachingstaff");
  });
});
