"""Question templates: parsing the one-slot template DSL, expanding templates
against keyword sources, generating the labeled training dataset, and mining
template suggestions from corpora of real questions.
"""

import json
import re
from dataclasses import dataclass
from typing import Optional

from faqforge import kb as kbmod
from faqforge._kernels import normalize
from faqforge.dataset import Dataset, GeneratedExample
from faqforge.kb import ValidationReport, Violation

SLOT_NAME_RE = re.compile(r"^[a-z][a-z0-9_]*$")


class TemplateError(Exception):
    pass


class TemplateParseError(TemplateError):
    """Slot syntax error; ``code`` is MULTIPLE_SLOTS or MALFORMED_SLOT."""

    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


class TemplateSyntaxError(TemplateError):
    pass


class TemplateSchemaError(TemplateError):
    pass


class GenerationError(TemplateError):
    def __init__(self, message, template_id=None):
        super().__init__(message)
        self.template_id = template_id


@dataclass(frozen=True)
class ParsedTemplate:
    text: str
    slot: Optional[str]
    prefix: str
    suffix: str

    @property
    def has_slot(self):
        return self.slot is not None

    def render(self, fill=None):
        if self.slot is None:
            return self.text
        return self.prefix + fill + self.suffix


@dataclass(frozen=True)
class QuestionTemplate:
    id: int
    intent: str
    keyword_source: Optional[str]
    template: str
    example: bool = False


@dataclass(frozen=True)
class GenerationReport:
    raw_count: int
    unique_count: int
    per_intent_counts: dict
    conflicts: tuple  # of (question, (intent, ...)) sorted by question

    def to_dict(self):
        return {
            "raw_count": self.raw_count,
            "unique_count": self.unique_count,
            "per_intent_counts": {k: self.per_intent_counts[k] for k in sorted(self.per_intent_counts)},
            "conflicts": [
                {"question": q, "intents": list(intents)} for q, intents in self.conflicts
            ],
        }


@dataclass(frozen=True)
class TemplateSuggestion:
    skeleton: str
    support: int
    fills_observed: tuple

    def to_dict(self):
        return {
            "skeleton": self.skeleton,
            "support": self.support,
            "fills_observed": list(self.fills_observed),
        }


@dataclass(frozen=True)
class SuggestionReport:
    suggestions: tuple
    ngram_tables: dict  # label -> {n: [(gram, count), ...]}

    def to_dict(self):
        return {
            "suggestions": [s.to_dict() for s in self.suggestions],
            "ngram_tables": {
                label: {str(n): [{"ngram": g, "count": c} for g, c in grams]
                        for n, grams in tables.items()}
                for label, tables in sorted(self.ngram_tables.items())
            },
        }


# ---------------------------------------------------------------------------
# Template DSL
# ---------------------------------------------------------------------------

def parse_template(text: str) -> ParsedTemplate:
    """Split a template into literal segments around its optional {name} slot.

    Rejects templates with two or more slots (MULTIPLE_SLOTS) and any
    unbalanced or malformed brace sequence (MALFORMED_SLOT).
    """
    slot = None
    prefix = ""
    suffix_start = 0
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "{":
            end = text.find("}", i + 1)
            if end == -1:
                raise TemplateParseError("MALFORMED_SLOT", f"unclosed '{{' at index {i}")
            name = text[i + 1:end]
            if "{" in name:
                raise TemplateParseError("MALFORMED_SLOT", f"nested '{{' at index {i}")
            if not SLOT_NAME_RE.match(name):
                raise TemplateParseError(
                    "MALFORMED_SLOT", f"slot name {name!r} must match [a-z][a-z0-9_]*")
            if slot is not None:
                raise TemplateParseError("MULTIPLE_SLOTS", "template has more than one slot")
            slot = name
            prefix = text[:i]
            suffix_start = end + 1
            i = end + 1
        elif ch == "}":
            raise TemplateParseError("MALFORMED_SLOT", f"unmatched '}}' at index {i}")
        else:
            i += 1
    if slot is None:
        return ParsedTemplate(text=text, slot=None, prefix=text, suffix="")
    return ParsedTemplate(text=text, slot=slot, prefix=prefix, suffix=text[suffix_start:])


def expand_template(tpl: QuestionTemplate, fills, refs=None):
    """Expand one template. Slotless templates yield exactly one example and
    ignore ``fills``; slotted templates yield one example per fill, in order.
    """
    parsed = parse_template(tpl.template)
    if not parsed.has_slot:
        return [GeneratedExample(
            question=tpl.template, intent=tpl.intent,
            slot_value=None, template_id=tpl.id, source_ref=None,
        )]
    if refs is None:
        refs = [None] * len(fills)
    return [
        GeneratedExample(
            question=parsed.render(fill), intent=tpl.intent,
            slot_value=fill, template_id=tpl.id, source_ref=ref,
        )
        for fill, ref in zip(fills, refs)
    ]


# ---------------------------------------------------------------------------
# Template documents
# ---------------------------------------------------------------------------

_TEMPLATE_KEYS = ("id", "intent", "keyword_source", "template", "example")


def parse_templates(document: str):
    """Parse a templates JSON document (array of template objects)."""
    try:
        raw = json.loads(document)
    except json.JSONDecodeError as exc:
        raise TemplateSyntaxError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(raw, list):
        raise TemplateSchemaError("top level must be an array of templates")
    templates = []
    for i, item in enumerate(raw):
        path = f"$[{i}]"
        if not isinstance(item, dict):
            raise TemplateSchemaError(f"{path}: expected an object")
        for key in item:
            if key not in _TEMPLATE_KEYS:
                raise TemplateSchemaError(f"{path}: unknown key {key!r}")
        for key in _TEMPLATE_KEYS:
            if key not in item:
                raise TemplateSchemaError(f"{path}: missing required key {key!r}")
        if isinstance(item["id"], bool) or not isinstance(item["id"], int):
            raise TemplateSchemaError(f"{path}.id: expected an integer")
        if not isinstance(item["intent"], str):
            raise TemplateSchemaError(f"{path}.intent: expected a string")
        if item["keyword_source"] is not None and not isinstance(item["keyword_source"], str):
            raise TemplateSchemaError(f"{path}.keyword_source: expected a string or null")
        if not isinstance(item["template"], str):
            raise TemplateSchemaError(f"{path}.template: expected a string")
        if not isinstance(item["example"], bool):
            raise TemplateSchemaError(f"{path}.example: expected a boolean")
        templates.append(QuestionTemplate(
            id=item["id"], intent=item["intent"],
            keyword_source=item["keyword_source"],
            template=item["template"], example=item["example"],
        ))
    return templates


def templates_to_list(templates):
    return [
        {
            "id": t.id,
            "intent": t.intent,
            "keyword_source": t.keyword_source,
            "template": t.template,
            "example": t.example,
        }
        for t in templates
    ]


def serialize_templates(templates) -> str:
    return json.dumps(templates_to_list(templates), indent=2, ensure_ascii=False) + "\n"


def validate_templates(kb: kbmod.KnowledgeBase, templates) -> ValidationReport:
    """Check templates against the KB: slot syntax, slot/source pairing,
    intent labels, and keyword-source references."""
    violations = []

    def add(code, locator, message):
        violations.append(Violation(code, locator, message))

    known_labels = set(kb.labels())
    unstructured = set(kb.labels(kbmod.KIND_UNSTRUCTURED))
    seen_ids = {}
    for i, tpl in enumerate(templates):
        loc = f"templates[{i}] (id={tpl.id})"
        if tpl.id <= 0:
            add("BAD_ID", loc, f"id must be a positive integer, got {tpl.id}")
        if tpl.id in seen_ids:
            add("DUPLICATE_ID", loc, f"id {tpl.id} already used at {seen_ids[tpl.id]}")
        else:
            seen_ids[tpl.id] = loc
        if not tpl.template:
            add("EMPTY_TEMPLATE", loc, "template text must be non-empty")
            continue
        try:
            parsed = parse_template(tpl.template)
        except TemplateParseError as exc:
            add(exc.code, loc, str(exc))
            continue
        if parsed.has_slot and tpl.keyword_source is None:
            add("SLOT_SOURCE_MISMATCH", loc, "template has a slot but no keyword_source")
        if not parsed.has_slot and tpl.keyword_source is not None:
            add("SLOT_SOURCE_MISMATCH", loc, "template has a keyword_source but no slot")
        if tpl.intent not in known_labels:
            add("UNKNOWN_INTENT", loc, f"intent {tpl.intent!r} is not a declared category")
        if tpl.keyword_source is not None:
            try:
                source = kbmod.parse_selector(tpl.keyword_source)
            except kbmod.BadSelectorError as exc:
                add("BAD_SOURCE", loc, str(exc))
                continue
            if source.kind == "unstructured" and source.label not in unstructured:
                add("UNKNOWN_CATEGORY", loc,
                    f"keyword_source references unknown unstructured label {source.label!r}")
    return ValidationReport(violations=tuple(violations))


# ---------------------------------------------------------------------------
# Dataset generation
# ---------------------------------------------------------------------------

def generate_dataset(kb: kbmod.KnowledgeBase, templates):
    """Expand every template against the KB, in template-id order.

    Exact duplicate (question, intent) pairs are dropped keeping the first;
    the same question under two intents stays in the dataset and is surfaced
    in the report's conflicts.
    """
    report = validate_templates(kb, templates)
    if not report.valid:
        first = report.violations[0]
        match = re.search(r"id=(-?\d+)", first.locator)
        template_id = int(match.group(1)) if match else None
        raise GenerationError(
            f"invalid template at {first.locator}: [{first.code}] {first.message}",
            template_id=template_id,
        )

    raw_count = 0
    seen_pairs = set()
    examples = []
    intents_by_question = {}
    for tpl in sorted(templates, key=lambda t: t.id):
        parsed = parse_template(tpl.template)
        if parsed.has_slot:
            pairs = kbmod.resolve_source_refs(kb, tpl.keyword_source)
            batch = expand_template(tpl, [v for v, _ in pairs], [r for _, r in pairs])
        else:
            batch = expand_template(tpl, [])
        raw_count += len(batch)
        for ex in batch:
            intents_by_question.setdefault(ex.question, [])
            if ex.intent not in intents_by_question[ex.question]:
                intents_by_question[ex.question].append(ex.intent)
            key = (ex.question, ex.intent)
            if key in seen_pairs:
                continue
            seen_pairs.add(key)
            examples.append(ex)

    per_intent = {}
    for ex in examples:
        per_intent[ex.intent] = per_intent.get(ex.intent, 0) + 1
    conflicts = tuple(
        (question, tuple(sorted(intents)))
        for question, intents in sorted(intents_by_question.items())
        if len(intents) >= 2
    )
    report = GenerationReport(
        raw_count=raw_count,
        unique_count=len(examples),
        per_intent_counts=per_intent,
        conflicts=conflicts,
    )
    return Dataset(examples=tuple(examples)), report


# ---------------------------------------------------------------------------
# Template mining
# ---------------------------------------------------------------------------

def suggest_templates(corpus, min_support=2, max_slot_tokens=4,
                      ngram_top_k=20) -> SuggestionReport:
    """Mine one-slot template skeletons from a corpus of (question, label) pairs.

    Two normalized questions that agree on a (prefix, suffix) token split and
    differ only in the contiguous span between them (at most max_slot_tokens
    tokens) support the skeleton prefix + "{object}" + suffix. Skeletons with
    support >= min_support are returned, sorted by support descending then
    skeleton ascending. Per-label n-gram frequency tables (n = 1..4) ride
    along as auxiliary output.
    """
    if min_support < 2:
        raise ValueError("min_support must be >= 2")
    if max_slot_tokens < 1:
        raise ValueError("max_slot_tokens must be >= 1")

    normalized = []
    for question, label in corpus:
        norm = normalize(question)
        if norm:
            normalized.append((norm, label))

    # Skeletons come from distinct questions only: duplicates share no
    # differing span and must not inflate support.
    unique_questions = list(dict.fromkeys(q for q, _ in normalized))
    skeletons = {}
    for question in unique_questions:
        tokens = question.split(" ")
        n = len(tokens)
        for span in range(1, min(max_slot_tokens, n) + 1):
            for start in range(0, n - span + 1):
                prefix = tuple(tokens[:start])
                suffix = tuple(tokens[start + span:])
                if not prefix and not suffix:
                    continue  # a bare {object} skeleton anchors nothing
                fill = " ".join(tokens[start:start + span])
                skeletons.setdefault((prefix, suffix), []).append(fill)

    suggestions = []
    for (prefix, suffix), fills in skeletons.items():
        if len(fills) < min_support:
            continue
        skeleton = " ".join(prefix + ("{object}",) + suffix)
        suggestions.append(TemplateSuggestion(
            skeleton=skeleton, support=len(fills), fills_observed=tuple(fills),
        ))
    suggestions.sort(key=lambda s: (-s.support, s.skeleton))

    tables = {}
    for question, label in normalized:
        key = label if label is not None else "(unlabeled)"
        tokens = question.split(" ")
        per_n = tables.setdefault(key, {1: {}, 2: {}, 3: {}, 4: {}})
        for n in range(1, 5):
            grams = per_n[n]
            for i in range(len(tokens) - n + 1):
                gram = " ".join(tokens[i:i + n])
                grams[gram] = grams.get(gram, 0) + 1
    ngram_tables = {
        label: {
            n: sorted(grams.items(), key=lambda kv: (-kv[1], kv[0]))[:ngram_top_k]
            for n, grams in per_n.items()
        }
        for label, per_n in tables.items()
    }
    return SuggestionReport(suggestions=tuple(suggestions), ngram_tables=ngram_tables)
