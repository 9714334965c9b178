"""faqforge: build question-answering agents from a domain knowledge base.

The pipeline: author a knowledge base and question templates, combinatorially
generate a labeled question-intent dataset, train an n-gram intent classifier,
and serve a hybrid answering pipeline (statistical intent stage, then
knowledge-based response assembly) with an interactive teaching loop.
"""

__version__ = "0.1.0"

from faqforge._kernels import BACKEND as KERNEL_BACKEND
from faqforge.classifier import IntentModel, Prediction, featurize, load_model, normalize, predict, save_model, train
from faqforge.dataset import Dataset, GeneratedExample, SplitSpec, read_jsonl, split, write_jsonl
from faqforge.evalmod import EvalReport, evaluate
from faqforge.kb import (
    Category, KnowledgeBase, StructuredEntity, UnstructuredFact, ValidationReport,
    facts_for_label, parse_kb, resolve_source, serialize_kb, validate_kb,
)
from faqforge.responder import Answer, EntityMatch, answer, extract_entity, render_attribute, select_fact
from faqforge.templates import (
    GenerationReport, QuestionTemplate, TemplateSuggestion, expand_template,
    generate_dataset, parse_template, parse_templates, suggest_templates,
)

__all__ = [
    "KERNEL_BACKEND",
    "__version__",
    "Answer", "Category", "Dataset", "EntityMatch", "EvalReport",
    "GeneratedExample", "GenerationReport", "IntentModel", "KnowledgeBase",
    "Prediction", "QuestionTemplate", "SplitSpec", "StructuredEntity",
    "TemplateSuggestion", "UnstructuredFact", "ValidationReport",
    "answer", "evaluate", "expand_template", "extract_entity", "facts_for_label",
    "featurize", "generate_dataset", "load_model", "normalize", "parse_kb",
    "parse_template", "parse_templates", "predict", "read_jsonl",
    "render_attribute", "resolve_source", "save_model", "select_fact",
    "serialize_kb", "split", "suggest_templates", "train", "validate_kb",
    "write_jsonl",
]
