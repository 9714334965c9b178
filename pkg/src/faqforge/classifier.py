"""Statistical intent classifier: multinomial Naive Bayes over unigram and
bigram features with add-alpha smoothing.

Out-of-vocabulary features are skipped rather than smoothed, so a question
with no known features falls back exactly to the class priors. Ties in the
ranking break by label, ascending, for cross-platform determinism.
"""

import json
from dataclasses import dataclass
from math import exp

from faqforge import _kernels
from faqforge.dataset import Dataset

MODEL_FORMAT_VERSION = 1


class ClassifierError(Exception):
    pass


class ModelVersionError(ClassifierError):
    pass


class ModelFormatError(ClassifierError):
    pass


def normalize(text: str) -> str:
    """Lowercase; non-[a-z0-9] chars become spaces; runs collapsed; trimmed."""
    return _kernels.normalize(text)


def featurize(text: str) -> dict:
    """Unigram + adjacent-bigram counts of the normalized text."""
    return _kernels.feature_counts(text)


@dataclass(frozen=True)
class IntentModel:
    labels: tuple  # sorted ascending
    alpha: float
    class_counts: dict
    class_totals: dict
    feature_counts: dict  # label -> {feature: count}
    vocabulary: set
    total_examples: int


@dataclass(frozen=True)
class Prediction:
    ranked: tuple  # of (label, posterior), sorted posterior desc then label asc
    top: str
    confidence: float

    def posteriors(self):
        return dict(self.ranked)


def train(ds: Dataset, alpha: float = 1.0) -> IntentModel:
    """Accumulate n-gram counts per intent. Order-independent by construction."""
    if alpha <= 0:
        raise ValueError("alpha must be > 0")
    if len(ds) == 0:
        raise ClassifierError("cannot train on an empty dataset")

    class_counts = {}
    class_totals = {}
    feature_counts = {}
    for ex in ds:
        label = ex.intent
        class_counts[label] = class_counts.get(label, 0) + 1
        feats = feature_counts.setdefault(label, {})
        class_totals[label] = class_totals.get(label, 0) + _kernels.accumulate_features(feats, ex.question)

    vocabulary = set()
    for feats in feature_counts.values():
        vocabulary.update(feats)

    return IntentModel(
        labels=tuple(sorted(class_counts)),
        alpha=alpha,
        class_counts=class_counts,
        class_totals=class_totals,
        feature_counts=feature_counts,
        vocabulary=vocabulary,
        total_examples=len(ds),
    )


def predict(model: IntentModel, question: str) -> Prediction:
    """Posterior distribution over intents for one question.

    Log joint scores come from the kernel; the posterior is the numerically
    stable softmax of those scores (max subtracted before exponentiation).
    """
    counts = _kernels.feature_counts(question)
    scores = _kernels.nb_log_scores(
        counts, list(model.labels), model.class_counts, model.class_totals,
        model.feature_counts, model.vocabulary, model.alpha, model.total_examples,
    )
    peak = max(scores)
    exps = [exp(s - peak) for s in scores]
    total = sum(exps)
    posteriors = [e / total for e in exps]
    ranked = sorted(zip(model.labels, posteriors), key=lambda lp: (-lp[1], lp[0]))
    return Prediction(ranked=tuple(ranked), top=ranked[0][0], confidence=ranked[0][1])


# ---------------------------------------------------------------------------
# Persistence
# ---------------------------------------------------------------------------

def model_to_dict(model: IntentModel) -> dict:
    return {
        "format_version": MODEL_FORMAT_VERSION,
        "alpha": model.alpha,
        "labels": list(model.labels),
        "class_counts": dict(model.class_counts),
        "class_totals": dict(model.class_totals),
        "feature_counts": {label: dict(feats) for label, feats in model.feature_counts.items()},
    }


def serialize_model(model: IntentModel) -> str:
    """Canonical JSON; byte-identical for equal models regardless of training order."""
    return json.dumps(model_to_dict(model), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def save_model(model: IntentModel, sink):
    if hasattr(sink, "write"):
        sink.write(serialize_model(model))
    else:
        with open(sink, "w", encoding="utf-8") as fh:
            fh.write(serialize_model(model))


def model_from_dict(raw: dict) -> IntentModel:
    if not isinstance(raw, dict):
        raise ModelFormatError("model document must be a JSON object")
    version = raw.get("format_version")
    if version != MODEL_FORMAT_VERSION:
        raise ModelVersionError(
            f"unsupported model format_version {version!r} (expected {MODEL_FORMAT_VERSION})")
    try:
        alpha = raw["alpha"]
        labels = raw["labels"]
        class_counts = raw["class_counts"]
        class_totals = raw["class_totals"]
        feature_counts = raw["feature_counts"]
    except KeyError as exc:
        raise ModelFormatError(f"model document missing key {exc.args[0]!r}") from exc
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise ModelFormatError("labels must be an array of strings")
    if not isinstance(alpha, (int, float)) or isinstance(alpha, bool) or alpha <= 0:
        raise ModelFormatError("alpha must be a positive number")
    for name, mapping in (("class_counts", class_counts), ("class_totals", class_totals)):
        if not isinstance(mapping, dict) or sorted(mapping) != sorted(labels):
            raise ModelFormatError(f"{name} must map every label to a count")
    if not isinstance(feature_counts, dict) or sorted(feature_counts) != sorted(labels):
        raise ModelFormatError("feature_counts must map every label to a feature table")

    vocabulary = set()
    for feats in feature_counts.values():
        if not isinstance(feats, dict):
            raise ModelFormatError("feature tables must be objects")
        vocabulary.update(feats)
    return IntentModel(
        labels=tuple(sorted(labels)),
        alpha=float(alpha),
        class_counts={k: int(v) for k, v in class_counts.items()},
        class_totals={k: int(v) for k, v in class_totals.items()},
        feature_counts={k: {f: int(c) for f, c in v.items()} for k, v in feature_counts.items()},
        vocabulary=vocabulary,
        total_examples=sum(int(v) for v in class_counts.values()),
    )


def load_model(source) -> IntentModel:
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"malformed model document: {exc.msg}") from exc
    return model_from_dict(raw)
