"""Knowledge-based answering: entity extraction by keyword match, response
assembly from the KB, and the abstention policy. answer() never raises; every
failure mode is an abstention with a reason code.
"""

from dataclasses import dataclass
from typing import Optional

from faqforge import classifier
from faqforge import kb as kbmod
from faqforge._kernels import tokenize

DEFAULT_THRESHOLD = 0.5
DEFAULT_ATTRIBUTE_PATTERN = "The {attribute} of {identified} is {value}."

STATUS_ANSWERED = "answered"
STATUS_ABSTAINED = "abstained"

REASON_LOW_CONFIDENCE = "LOW_CONFIDENCE"
REASON_NO_ENTITY = "NO_ENTITY"
REASON_MISSING_ATTRIBUTE = "MISSING_ATTRIBUTE"
REASON_NO_FACT = "NO_FACT"


class ResponderError(Exception):
    pass


class NoFactError(ResponderError):
    pass


class MissingAttributeError(ResponderError):
    pass


@dataclass(frozen=True)
class EntityMatch:
    entity_id: int
    matched_text: str
    span: tuple  # (token start, token end), end exclusive, in the normalized question


@dataclass(frozen=True)
class Answer:
    question: str
    intent: str
    confidence: float
    status: str
    response_text: Optional[str] = None
    response_source: Optional[str] = None
    entity: Optional[EntityMatch] = None
    abstain_reason: Optional[str] = None

    def to_dict(self):
        out = {
            "question": self.question,
            "intent": self.intent,
            "confidence": self.confidence,
            "status": self.status,
        }
        if self.response_text is not None:
            out["response_text"] = self.response_text
        if self.response_source is not None:
            out["response_source"] = self.response_source
        if self.entity is not None:
            out["entity_id"] = self.entity.entity_id
        if self.abstain_reason is not None:
            out["abstain_reason"] = self.abstain_reason
        return out


def extract_entity(kb: kbmod.KnowledgeBase, question: str) -> Optional[EntityMatch]:
    """Longest token-contiguous match of any entity alias in the question.

    Candidates are each entity's normalized object_keywords plus its
    normalized identified name. Ties break on earliest span start, then on
    lowest entity id.
    """
    tokens = tokenize(question)
    if not tokens:
        return None

    best = None  # (-length, start, entity_id, matched_text, span)
    for entity in kb.structured:
        aliases = list(entity.object_keywords) + [entity.identified]
        for alias in aliases:
            alias_tokens = tokenize(alias)
            width = len(alias_tokens)
            if width == 0 or width > len(tokens):
                continue
            for start in range(0, len(tokens) - width + 1):
                if tokens[start:start + width] == alias_tokens:
                    key = (-width, start, entity.id)
                    if best is None or key < best[0]:
                        best = (key, EntityMatch(
                            entity_id=entity.id,
                            matched_text=" ".join(alias_tokens),
                            span=(start, start + width),
                        ))
                    break  # earliest occurrence of this alias is enough
    return best[1] if best else None


def select_fact(kb: kbmod.KnowledgeBase, intent: str, question: str) -> kbmod.UnstructuredFact:
    """The fact under ``intent`` whose keywords overlap the question the most.

    Overlap counts how many of the fact's normalized keywords occur as a
    contiguous token phrase in the normalized question. Ties, including
    all-zero overlap, go to the lowest fact id.
    """
    facts = [f for f in kb.unstructured if f.label == intent]
    if not facts:
        raise NoFactError(f"no facts carry the label {intent!r}")
    tokens = tokenize(question)

    def overlap(fact):
        count = 0
        for kw in fact.keywords:
            kw_tokens = tokenize(kw)
            width = len(kw_tokens)
            if width == 0 or width > len(tokens):
                continue
            if any(tokens[i:i + width] == kw_tokens for i in range(len(tokens) - width + 1)):
                count += 1
        return count

    return min(facts, key=lambda f: (-overlap(f), f.id))


def render_attribute(entity: kbmod.StructuredEntity, attribute: str,
                     pattern: str = DEFAULT_ATTRIBUTE_PATTERN):
    """Render an entity attribute to (display text, raw value)."""
    if attribute not in entity.attributes:
        raise MissingAttributeError(
            f"entity {entity.identified!r} has no attribute {attribute!r}")
    value = entity.attributes[attribute]
    text = pattern.format(attribute=attribute, identified=entity.identified, value=value)
    return text, value


def answer(kb: kbmod.KnowledgeBase, model: classifier.IntentModel, question: str,
           threshold: float = DEFAULT_THRESHOLD) -> Answer:
    """Full ask pipeline: classify intent, then assemble a response from the KB.

    Below-threshold confidence, a missing entity, a missing attribute, and a
    label with no facts all abstain with the corresponding reason.
    """
    prediction = classifier.predict(model, question)
    intent = prediction.top
    confidence = prediction.confidence

    def abstained(reason):
        return Answer(question=question, intent=intent, confidence=confidence,
                      status=STATUS_ABSTAINED, abstain_reason=reason)

    if confidence < threshold:
        return abstained(REASON_LOW_CONFIDENCE)

    category = kb.category(intent)
    if category is not None and category.kind == kbmod.KIND_STRUCTURED:
        match = extract_entity(kb, question)
        if match is None:
            return abstained(REASON_NO_ENTITY)
        entity = next(e for e in kb.structured if e.id == match.entity_id)
        pattern = kb.attribute_patterns.get(intent, DEFAULT_ATTRIBUTE_PATTERN)
        try:
            text, _ = render_attribute(entity, intent, pattern)
        except MissingAttributeError:
            return Answer(question=question, intent=intent, confidence=confidence,
                          status=STATUS_ABSTAINED, entity=match,
                          abstain_reason=REASON_MISSING_ATTRIBUTE)
        return Answer(question=question, intent=intent, confidence=confidence,
                      status=STATUS_ANSWERED, response_text=text, entity=match)

    # Unstructured intent; unknown labels behave like labels with no facts.
    try:
        fact = select_fact(kb, intent, question)
    except NoFactError:
        return abstained(REASON_NO_FACT)
    return Answer(question=question, intent=intent, confidence=confidence,
                  status=STATUS_ANSWERED, response_text=fact.response_text,
                  response_source=fact.response_source)
