"""Domain knowledge base: taxonomy of categories, unstructured facts, and
structured entities, plus the keyword-source selectors templates draw their
slot fills from.

A KnowledgeBase is immutable after construction; every mutation constructs a
new value. The on-disk form is a single JSON document (see parse_kb).
"""

import json
import re
from dataclasses import dataclass, field
from typing import Optional

from faqforge._kernels import normalize

LABEL_RE = re.compile(r"^[a-z][a-z0-9]*$")

KIND_UNSTRUCTURED = "unstructured"
KIND_STRUCTURED = "structured"


class KbError(Exception):
    """Base class for knowledge-base failures."""


class KbSyntaxError(KbError):
    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column


class KbSchemaError(KbError):
    def __init__(self, message, path=None):
        super().__init__(message)
        self.path = path


class UnknownLabelError(KbError):
    pass


class BadSelectorError(KbError):
    pass


@dataclass(frozen=True)
class Category:
    label: str
    kind: str  # KIND_UNSTRUCTURED or KIND_STRUCTURED


@dataclass(frozen=True)
class UnstructuredFact:
    id: int
    label: str
    keywords: tuple
    response_text: str
    response_source: str


@dataclass(frozen=True)
class StructuredEntity:
    id: int
    identified: str
    object_keywords: tuple
    attributes: dict = field(default_factory=dict)


@dataclass(frozen=True)
class KnowledgeBase:
    domain: str
    categories: tuple
    unstructured: tuple
    structured: tuple
    # Optional response patterns per structured attribute, e.g.
    # {"duedate": "{identified} is due {value}."}. Consumed by the responder.
    attribute_patterns: dict = field(default_factory=dict)

    def labels(self, kind=None):
        if kind is None:
            return [c.label for c in self.categories]
        return [c.label for c in self.categories if c.kind == kind]

    def category(self, label) -> Optional[Category]:
        for cat in self.categories:
            if cat.label == label:
                return cat
        return None


@dataclass(frozen=True)
class Violation:
    code: str
    locator: str
    message: str

    def to_dict(self):
        return {"code": self.code, "locator": self.locator, "message": self.message}


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple

    @property
    def valid(self):
        return not self.violations

    def codes(self):
        return [v.code for v in self.violations]

    def to_dict(self):
        return {"valid": self.valid, "violations": [v.to_dict() for v in self.violations]}


# ---------------------------------------------------------------------------
# Document parsing / serialization
# ---------------------------------------------------------------------------

_TOP_KEYS = ("domain", "categories", "unstructured", "structured")
_CATEGORY_KEYS = ("label", "kind")
_FACT_KEYS = ("id", "label", "keywords", "response_text", "response_source")
_ENTITY_KEYS = ("id", "identified", "object_keywords", "attributes")


def _expect(obj, keys, optional, path):
    if not isinstance(obj, dict):
        raise KbSchemaError(f"{path}: expected an object", path)
    for key in obj:
        if key not in keys and key not in optional:
            raise KbSchemaError(f"{path}: unknown key {key!r}", path)
    for key in keys:
        if key not in obj:
            raise KbSchemaError(f"{path}: missing required key {key!r}", path)


def _string(value, path):
    if not isinstance(value, str):
        raise KbSchemaError(f"{path}: expected a string, got {type(value).__name__}", path)
    return value


def _integer(value, path):
    if isinstance(value, bool) or not isinstance(value, int):
        raise KbSchemaError(f"{path}: expected an integer, got {type(value).__name__}", path)
    return value


def _string_array(value, path):
    if not isinstance(value, list):
        raise KbSchemaError(f"{path}: expected an array of strings", path)
    return tuple(_string(v, f"{path}[{i}]") for i, v in enumerate(value))


def parse_kb(document: str) -> KnowledgeBase:
    """Parse a KB JSON document. Raises KbSyntaxError / KbSchemaError."""
    try:
        raw = json.loads(document)
    except json.JSONDecodeError as exc:
        raise KbSyntaxError(
            f"line {exc.lineno}, column {exc.colno}: {exc.msg}",
            line=exc.lineno, column=exc.colno,
        ) from exc

    _expect(raw, _TOP_KEYS, ("attribute_patterns",), "$")
    domain = _string(raw["domain"], "$.domain")

    if not isinstance(raw["categories"], list):
        raise KbSchemaError("$.categories: expected an array", "$.categories")
    categories = []
    for i, item in enumerate(raw["categories"]):
        path = f"$.categories[{i}]"
        _expect(item, _CATEGORY_KEYS, (), path)
        kind = _string(item["kind"], f"{path}.kind")
        if kind not in (KIND_UNSTRUCTURED, KIND_STRUCTURED):
            raise KbSchemaError(f"{path}.kind: must be 'unstructured' or 'structured'", path)
        categories.append(Category(label=_string(item["label"], f"{path}.label"), kind=kind))

    if not isinstance(raw["unstructured"], list):
        raise KbSchemaError("$.unstructured: expected an array", "$.unstructured")
    facts = []
    for i, item in enumerate(raw["unstructured"]):
        path = f"$.unstructured[{i}]"
        _expect(item, _FACT_KEYS, (), path)
        facts.append(UnstructuredFact(
            id=_integer(item["id"], f"{path}.id"),
            label=_string(item["label"], f"{path}.label"),
            keywords=_string_array(item["keywords"], f"{path}.keywords"),
            response_text=_string(item["response_text"], f"{path}.response_text"),
            response_source=_string(item["response_source"], f"{path}.response_source"),
        ))

    if not isinstance(raw["structured"], list):
        raise KbSchemaError("$.structured: expected an array", "$.structured")
    entities = []
    for i, item in enumerate(raw["structured"]):
        path = f"$.structured[{i}]"
        _expect(item, _ENTITY_KEYS, (), path)
        attrs = item["attributes"]
        if not isinstance(attrs, dict):
            raise KbSchemaError(f"{path}.attributes: expected an object", path)
        attributes = {
            _string(k, f"{path}.attributes"): _string(v, f"{path}.attributes[{k!r}]")
            for k, v in attrs.items()
        }
        entities.append(StructuredEntity(
            id=_integer(item["id"], f"{path}.id"),
            identified=_string(item["identified"], f"{path}.identified"),
            object_keywords=_string_array(item["object_keywords"], f"{path}.object_keywords"),
            attributes=attributes,
        ))

    patterns = {}
    if "attribute_patterns" in raw:
        if not isinstance(raw["attribute_patterns"], dict):
            raise KbSchemaError("$.attribute_patterns: expected an object", "$.attribute_patterns")
        patterns = {
            _string(k, "$.attribute_patterns"): _string(v, f"$.attribute_patterns[{k!r}]")
            for k, v in raw["attribute_patterns"].items()
        }

    return KnowledgeBase(
        domain=domain,
        categories=tuple(categories),
        unstructured=tuple(facts),
        structured=tuple(entities),
        attribute_patterns=patterns,
    )


def kb_to_dict(kb: KnowledgeBase) -> dict:
    return {
        "domain": kb.domain,
        "categories": [{"label": c.label, "kind": c.kind} for c in kb.categories],
        "unstructured": [
            {
                "id": f.id,
                "label": f.label,
                "keywords": list(f.keywords),
                "response_text": f.response_text,
                "response_source": f.response_source,
            }
            for f in kb.unstructured
        ],
        "structured": [
            {
                "id": e.id,
                "identified": e.identified,
                "object_keywords": list(e.object_keywords),
                "attributes": dict(e.attributes),
            }
            for e in kb.structured
        ],
        "attribute_patterns": dict(kb.attribute_patterns),
    }


def serialize_kb(kb: KnowledgeBase) -> str:
    """Canonical JSON form; parse_kb(serialize_kb(kb)) == kb."""
    return json.dumps(kb_to_dict(kb), indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def validate_kb(kb: KnowledgeBase) -> ValidationReport:
    """Check every KB invariant; violations are data, not exceptions."""
    violations = []

    def add(code, locator, message):
        violations.append(Violation(code, locator, message))

    seen_labels = {}
    for i, cat in enumerate(kb.categories):
        loc = f"categories[{i}]"
        if not LABEL_RE.match(cat.label):
            add("BAD_LABEL_FORMAT", loc, f"label {cat.label!r} must match [a-z][a-z0-9]*")
        if cat.label in seen_labels:
            add("DUPLICATE_LABEL", loc,
                f"label {cat.label!r} already declared at {seen_labels[cat.label]}")
        else:
            seen_labels[cat.label] = loc

    unstructured_labels = {c.label for c in kb.categories if c.kind == KIND_UNSTRUCTURED}
    structured_labels = {c.label for c in kb.categories if c.kind == KIND_STRUCTURED}

    seen_fact_ids = {}
    for i, fact in enumerate(kb.unstructured):
        loc = f"unstructured[{i}]"
        if fact.id <= 0:
            add("BAD_ID", loc, f"id must be a positive integer, got {fact.id}")
        if fact.id in seen_fact_ids:
            add("DUPLICATE_ID", loc, f"id {fact.id} already used at {seen_fact_ids[fact.id]}")
        else:
            seen_fact_ids[fact.id] = loc
        if fact.label not in unstructured_labels:
            add("UNKNOWN_CATEGORY", loc,
                f"label {fact.label!r} is not a declared unstructured category")
        seen_kw = set()
        for kw in fact.keywords:
            norm = normalize(kw)
            if norm in seen_kw:
                add("DUPLICATE_KEYWORD", loc,
                    f"keyword {kw!r} duplicates another keyword after normalization")
            seen_kw.add(norm)

    seen_entity_ids = {}
    seen_identified = {}
    for i, entity in enumerate(kb.structured):
        loc = f"structured[{i}]"
        if entity.id <= 0:
            add("BAD_ID", loc, f"id must be a positive integer, got {entity.id}")
        if entity.id in seen_entity_ids:
            add("DUPLICATE_ID", loc, f"id {entity.id} already used at {seen_entity_ids[entity.id]}")
        else:
            seen_entity_ids[entity.id] = loc
        if not entity.identified:
            add("EMPTY_IDENTIFIED", loc, "identified name must be non-empty")
        elif entity.identified in seen_identified:
            add("DUPLICATE_IDENTIFIED", loc,
                f"identified {entity.identified!r} already used at {seen_identified[entity.identified]}")
        else:
            seen_identified[entity.identified] = loc
        if not entity.object_keywords:
            add("EMPTY_OBJECT_KEYWORDS", loc, "entity must have at least one object keyword")
        for key in entity.attributes:
            if key not in structured_labels:
                add("UNKNOWN_CATEGORY", f"{loc}.attributes[{key!r}]",
                    f"attribute {key!r} is not a declared structured category")

    for key in kb.attribute_patterns:
        if key not in structured_labels:
            add("UNKNOWN_CATEGORY", f"attribute_patterns[{key!r}]",
                f"pattern key {key!r} is not a declared structured category")

    return ValidationReport(violations=tuple(violations))


# ---------------------------------------------------------------------------
# Queries
# ---------------------------------------------------------------------------

def facts_for_label(kb: KnowledgeBase, label: str):
    """All unstructured facts carrying ``label``, in document order."""
    cat = kb.category(label)
    if cat is None or cat.kind != KIND_UNSTRUCTURED:
        raise UnknownLabelError(f"{label!r} is not a declared unstructured category")
    return [f for f in kb.unstructured if f.label == label]


@dataclass(frozen=True)
class KeywordSource:
    """Parsed selector naming where slot fills come from."""
    kind: str  # "unstructured" | "unstructured_all" | "identified" | "object_keywords" | "literal"
    label: Optional[str] = None
    values: tuple = ()

    @property
    def selector(self):
        if self.kind == "unstructured":
            return f"unstructured:{self.label}"
        if self.kind == "unstructured_all":
            return "unstructured:*"
        if self.kind == "identified":
            return "structured:identified"
        if self.kind == "object_keywords":
            return "structured:object_keywords"
        return "literal:" + "|".join(self.values)


def parse_selector(selector: str) -> KeywordSource:
    """Parse a keyword-source selector string.

    Grammar: unstructured:<label> | unstructured:* | structured:identified
           | structured:object_keywords | literal:v1|v2|...
    """
    if selector.startswith("unstructured:"):
        rest = selector[len("unstructured:"):]
        if rest == "*":
            return KeywordSource(kind="unstructured_all")
        if LABEL_RE.match(rest):
            return KeywordSource(kind="unstructured", label=rest)
        raise BadSelectorError(f"bad unstructured label in selector {selector!r}")
    if selector == "structured:identified":
        return KeywordSource(kind="identified")
    if selector == "structured:object_keywords":
        return KeywordSource(kind="object_keywords")
    if selector.startswith("literal:"):
        values = selector[len("literal:"):].split("|")
        if not values or any(v == "" for v in values):
            raise BadSelectorError(f"literal selector has empty values: {selector!r}")
        return KeywordSource(kind="literal", values=tuple(values))
    raise BadSelectorError(f"unparseable selector {selector!r}")


def resolve_source_refs(kb: KnowledgeBase, selector: str):
    """Resolve a selector to (fill value, provenance ref) pairs.

    Deduplicated on value, first occurrence wins. Refs are "unstructured:<id>"
    or "structured:<id>"; literal fills carry no ref.
    """
    source = parse_selector(selector)
    pairs = []
    if source.kind == "unstructured":
        if source.label not in set(kb.labels(KIND_UNSTRUCTURED)):
            raise UnknownLabelError(f"{source.label!r} is not a declared unstructured category")
        for fact in kb.unstructured:
            if fact.label == source.label:
                pairs.extend((kw, f"unstructured:{fact.id}") for kw in fact.keywords)
    elif source.kind == "unstructured_all":
        for fact in kb.unstructured:
            pairs.extend((kw, f"unstructured:{fact.id}") for kw in fact.keywords)
    elif source.kind == "identified":
        pairs = [(e.identified, f"structured:{e.id}") for e in kb.structured]
    elif source.kind == "object_keywords":
        for entity in kb.structured:
            pairs.extend((kw, f"structured:{entity.id}") for kw in entity.object_keywords)
    else:  # literal
        pairs = [(v, None) for v in source.values]

    seen = set()
    out = []
    for value, ref in pairs:
        if value not in seen:
            seen.add(value)
            out.append((value, ref))
    return out


def resolve_source(kb: KnowledgeBase, selector: str):
    """Ordered, deduplicated fill values for a selector."""
    return [value for value, _ in resolve_source_refs(kb, selector)]
