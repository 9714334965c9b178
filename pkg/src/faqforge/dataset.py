"""Dataset container: generated (question, intent) examples, deterministic
stratified splitting, and JSONL persistence.

Split reproducibility is platform-independent by construction: a SplitMix64
stream seeded from (seed XOR FNV-1a(intent label)) drives a Fisher-Yates
shuffle, so no host PRNG is involved.
"""

import json
from dataclasses import dataclass
from typing import Optional

MASK64 = (1 << 64) - 1


class DatasetError(Exception):
    pass


class StratumTooSmallError(DatasetError):
    def __init__(self, intents):
        super().__init__(
            "cannot split: intents with fewer than 2 examples: " + ", ".join(sorted(intents))
        )
        self.intents = sorted(intents)


class JsonlError(DatasetError):
    def __init__(self, message, line):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class GeneratedExample:
    question: str
    intent: str
    slot_value: Optional[str] = None
    template_id: int = 0  # 0 marks externally labeled examples (corrections)
    source_ref: Optional[str] = None

    def to_dict(self):
        return {
            "question": self.question,
            "intent": self.intent,
            "slot_value": self.slot_value,
            "template_id": self.template_id,
            "source_ref": self.source_ref,
        }


@dataclass(frozen=True)
class Dataset:
    examples: tuple

    def __len__(self):
        return len(self.examples)

    def __iter__(self):
        return iter(self.examples)

    def intents(self):
        return sorted({ex.intent for ex in self.examples})


@dataclass(frozen=True)
class SplitSpec:
    holdout_fraction: float
    seed: int

    def __post_init__(self):
        if not 0 <= self.holdout_fraction < 1:
            raise ValueError("holdout_fraction must be in [0, 1)")


def fnv1a64(data: bytes) -> int:
    h = 0xCBF29CE484222325
    for byte in data:
        h ^= byte
        h = (h * 0x100000001B3) & MASK64
    return h


class SplitMix64:
    """Reference SplitMix64 stream."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)


def _shuffled(indices, rng: SplitMix64):
    out = list(indices)
    for i in range(len(out) - 1, 0, -1):
        j = rng.next() % (i + 1)
        out[i], out[j] = out[j], out[i]
    return out


def split(ds: Dataset, spec: SplitSpec):
    """Stratified split into (train, test).

    Per intent, floor(fraction * n) examples go to the test side, chosen by the
    deterministic per-intent shuffle. Output order preserves dataset order.
    """
    if spec.holdout_fraction == 0:
        return ds, Dataset(examples=())

    by_intent = {}
    for idx, ex in enumerate(ds.examples):
        by_intent.setdefault(ex.intent, []).append(idx)

    too_small = [intent for intent, idxs in by_intent.items() if len(idxs) < 2]
    if too_small:
        raise StratumTooSmallError(too_small)

    test_indices = set()
    for intent in sorted(by_intent):
        idxs = by_intent[intent]
        rng = SplitMix64(spec.seed ^ fnv1a64(intent.encode("utf-8")))
        shuffled = _shuffled(idxs, rng)
        n_test = int(spec.holdout_fraction * len(idxs))
        test_indices.update(shuffled[:n_test])

    train = tuple(ex for i, ex in enumerate(ds.examples) if i not in test_indices)
    test = tuple(ex for i, ex in enumerate(ds.examples) if i in test_indices)
    return Dataset(examples=train), Dataset(examples=test)


# ---------------------------------------------------------------------------
# JSONL persistence
# ---------------------------------------------------------------------------

_FIELDS = ("question", "intent", "slot_value", "template_id", "source_ref")


def example_to_line(ex: GeneratedExample) -> str:
    return json.dumps(ex.to_dict(), ensure_ascii=False)


def dumps_jsonl(ds: Dataset) -> str:
    return "".join(example_to_line(ex) + "\n" for ex in ds.examples)


def write_jsonl(ds: Dataset, sink):
    """Write one JSON object per line. ``sink`` is a path or a text file."""
    if hasattr(sink, "write"):
        sink.write(dumps_jsonl(ds))
    else:
        with open(sink, "w", encoding="utf-8") as fh:
            fh.write(dumps_jsonl(ds))


def loads_jsonl(text: str) -> Dataset:
    examples = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            raw = json.loads(line)
        except json.JSONDecodeError as exc:
            raise JsonlError(f"malformed JSON: {exc.msg}", lineno) from exc
        if not isinstance(raw, dict):
            raise JsonlError("expected a JSON object", lineno)
        for key in ("question", "intent"):
            if key not in raw:
                raise JsonlError(f"missing required key {key!r}", lineno)
        unknown = set(raw) - set(_FIELDS)
        if unknown:
            raise JsonlError(f"unknown keys: {sorted(unknown)}", lineno)
        examples.append(GeneratedExample(
            question=raw["question"],
            intent=raw["intent"],
            slot_value=raw.get("slot_value"),
            template_id=raw.get("template_id", 0),
            source_ref=raw.get("source_ref"),
        ))
    return Dataset(examples=tuple(examples))


def read_jsonl(source) -> Dataset:
    """Read a dataset back; ``source`` is a path or a text file."""
    if hasattr(source, "read"):
        return loads_jsonl(source.read())
    with open(source, "r", encoding="utf-8") as fh:
        return loads_jsonl(fh.read())
