"""Coverage / precision / intent-accuracy evaluation of a model+KB pair
against a labeled test set, with a per-intent confusion table.

Coverage is the fraction of questions answered (not abstained); precision is
the fraction of answered questions whose predicted intent matched gold.
Intent accuracy and the confusion table are computed at threshold 0, so they
are independent of the abstention threshold.
"""

from dataclasses import dataclass
from typing import Optional

from faqforge import classifier, responder
from faqforge import kb as kbmod


class EvalError(Exception):
    pass


@dataclass(frozen=True)
class EvalReport:
    total: int
    answered: int
    correct_answered: int
    coverage: float
    precision: Optional[float]  # None when nothing was answered
    intent_accuracy: float
    confusion: dict  # (gold, predicted) -> count
    threshold: float

    def to_dict(self):
        return {
            "total": self.total,
            "answered": self.answered,
            "correct_answered": self.correct_answered,
            "coverage": self.coverage,
            "precision": self.precision,
            "intent_accuracy": self.intent_accuracy,
            "confusion": [
                {"gold": gold, "predicted": pred, "count": count}
                for (gold, pred), count in sorted(self.confusion.items())
            ],
            "threshold": self.threshold,
        }


def evaluate(kb: kbmod.KnowledgeBase, model: classifier.IntentModel, testset,
             threshold: float = responder.DEFAULT_THRESHOLD) -> EvalReport:
    """Run the full answer pipeline over (question, gold_intent) pairs."""
    testset = list(testset)
    if not testset:
        raise EvalError("test set is empty")

    answered = 0
    correct_answered = 0
    correct_intent = 0
    confusion = {}
    for question, gold in testset:
        predicted = classifier.predict(model, question).top
        confusion[(gold, predicted)] = confusion.get((gold, predicted), 0) + 1
        if predicted == gold:
            correct_intent += 1
        result = responder.answer(kb, model, question, threshold=threshold)
        if result.status == responder.STATUS_ANSWERED:
            answered += 1
            if result.intent == gold:
                correct_answered += 1

    total = len(testset)
    return EvalReport(
        total=total,
        answered=answered,
        correct_answered=correct_answered,
        coverage=answered / total,
        precision=(correct_answered / answered) if answered else None,
        intent_accuracy=correct_intent / total,
        confusion=confusion,
        threshold=threshold,
    )


def empty_report(threshold: float) -> dict:
    """Null report used when a holdout split is empty (fraction 0)."""
    return {
        "total": 0,
        "answered": 0,
        "correct_answered": 0,
        "coverage": None,
        "precision": None,
        "intent_accuracy": None,
        "confusion": [],
        "threshold": threshold,
    }


def render_table(report_dict: dict) -> str:
    """Human-readable rendering of an EvalReport dict."""
    def fmt(value):
        return "n/a" if value is None else f"{value:.4f}"

    lines = [
        f"total:            {report_dict['total']}",
        f"answered:         {report_dict['answered']}",
        f"correct answered: {report_dict['correct_answered']}",
        f"coverage:         {fmt(report_dict['coverage'])}",
        f"precision:        {fmt(report_dict['precision'])}",
        f"intent accuracy:  {fmt(report_dict['intent_accuracy'])}",
        f"threshold:        {report_dict['threshold']}",
    ]
    confusion = report_dict.get("confusion") or []
    wrong = [row for row in confusion if row["gold"] != row["predicted"]]
    if wrong:
        lines.append("confusions (gold -> predicted):")
        for row in wrong:
            lines.append(f"  {row['gold']} -> {row['predicted']}: {row['count']}")
    return "\n".join(lines)
