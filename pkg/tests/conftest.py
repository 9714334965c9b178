import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from faqforge import classifier, sample, templates
from faqforge.dataset import Dataset, GeneratedExample
from faqforge.kb import parse_kb


@pytest.fixture(scope="session")
def sample_kb():
    return sample.sample_kb()


@pytest.fixture(scope="session")
def sample_templates():
    return sample.sample_templates()


@pytest.fixture(scope="session")
def sample_dataset(sample_kb, sample_templates):
    ds, report = templates.generate_dataset(sample_kb, sample_templates)
    return ds, report


@pytest.fixture(scope="session")
def sample_model(sample_dataset):
    ds, _ = sample_dataset
    return classifier.train(ds, alpha=1.0)


TINY_KB_DOC = {
    "domain": "tiny course",
    "categories": [
        {"label": "teachingstaff", "kind": "unstructured"},
        {"label": "officehours", "kind": "unstructured"},
        {"label": "courseprerequisites", "kind": "unstructured"},
        {"label": "importantdates", "kind": "unstructured"},
        {"label": "duedate", "kind": "structured"},
        {"label": "url", "kind": "structured"},
    ],
    "unstructured": [
        {"id": 1, "label": "teachingstaff", "keywords": ["teaches", "instructor"],
         "response_text": "Dr. Gray teaches the course.", "response_source": "syllabus#staff"},
        {"id": 2, "label": "officehours", "keywords": ["office hours"],
         "response_text": "Office hours are Fridays at noon.", "response_source": "syllabus#hours"},
        {"id": 3, "label": "courseprerequisites", "keywords": ["python", "C"],
         "response_text": "Basic python is expected.", "response_source": "syllabus#prereq"},
        {"id": 4, "label": "importantdates", "keywords": ["withdraw date", "start date"],
         "response_text": "The withdraw date is July 9.", "response_source": "registrar"},
    ],
    "structured": [
        {"id": 1, "identified": "Assignment 1",
         "object_keywords": ["assignment 1", "a1"],
         "attributes": {"duedate": "June 15", "url": "http://x"}},
        {"id": 2, "identified": "Final Exam",
         "object_keywords": ["final exam", "final"],
         "attributes": {"duedate": "August 12"}},
    ],
    "attribute_patterns": {},
}


@pytest.fixture
def tiny_kb():
    return parse_kb(json.dumps(TINY_KB_DOC))


@pytest.fixture
def tiny_kb_doc():
    return json.loads(json.dumps(TINY_KB_DOC))


def make_dataset(pairs):
    return Dataset(examples=tuple(
        GeneratedExample(question=q, intent=intent) for q, intent in pairs))


@pytest.fixture
def two_class_model():
    ds = make_dataset([
        ("who teaches this class", "teachingstaff"),
        ("when are office hours", "officehours"),
    ])
    return classifier.train(ds, alpha=1.0)
