// Client-side mirror of the template slot rules, used for live editor
// feedback before a document ever reaches the service.

const SLOT_NAME = /^[a-z][a-z0-9_]*$/;

export type SlotParse =
  | { ok: true; slot: string | null }
  | { ok: false; code: "MULTIPLE_SLOTS" | "MALFORMED_SLOT"; message: string };

export function parseSlots(template: string): SlotParse {
  let slot: string | null = null;
  let i = 0;
  while (i < template.length) {
    const ch = template[i];
    if (ch === "{") {
      const end = template.indexOf("}", i + 1);
      if (end === -1) {
        return { ok: false, code: "MALFORMED_SLOT", message: `unclosed '{' at index ${i}` };
      }
      const name = template.slice(i + 1, end);
      if (name.includes("{")) {
        return { ok: false, code: "MALFORMED_SLOT", message: `nested '{' at index ${i}` };
      }
      if (!SLOT_NAME.test(name)) {
        return { ok: false, code: "MALFORMED_SLOT", message: `bad slot name '${name}'` };
      }
      if (slot !== null) {
        return { ok: false, code: "MULTIPLE_SLOTS", message: "template has more than one slot" };
      }
      slot = name;
      i = end + 1;
    } else if (ch === "}") {
      return { ok: false, code: "MALFORMED_SLOT", message: `unmatched '}' at index ${i}` };
    } else {
      i += 1;
    }
  }
  return { ok: true, slot };
}

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** HTML with the slot wrapped in <span class="slot">; a bad template is
    wrapped in <span class="slot-error"> instead. */
export function highlightTemplate(template: string): string {
  const parsed = parseSlots(template);
  if (!parsed.ok) {
    return `<span class="slot-error" title="${escapeHtml(parsed.message)}">` +
      `${escapeHtml(template)}</span>`;
  }
  if (parsed.slot === null) {
    return escapeHtml(template);
  }
  const marker = `{${parsed.slot}}`;
  const at = template.indexOf(marker);
  const before = template.slice(0, at);
  const after = template.slice(at + marker.length);
  return `${escapeHtml(before)}<span class="slot">${escapeHtml(marker)}</span>` +
    `${escapeHtml(after)}`;
}
