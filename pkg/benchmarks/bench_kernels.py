#!/usr/bin/env python3
"""Benchmark the compiled text kernels against the pure-Python fallback.

Times the three hot paths on the sample bundle's generated questions:
normalization + featurization, training count accumulation, and the
classifier scoring loop. Run from a checkout:

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import time

from faqforge import classifier, sample, templates
from faqforge._kernels import pure

try:
    from faqforge._kernels import _fast
except ImportError:
    _fast = None


def best_of(repeat, fn, *args):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def bench_featurize(kernel, questions):
    for q in questions:
        kernel.feature_counts(q)


def bench_accumulate(kernel, labeled):
    tables = {}
    for question, intent in labeled:
        kernel.accumulate_features(tables.setdefault(intent, {}), question)


def bench_scores(kernel, model, qcounts):
    labels = list(model.labels)
    for counts in qcounts:
        kernel.nb_log_scores(counts, labels, model.class_counts, model.class_totals,
                             model.feature_counts, model.vocabulary,
                             model.alpha, model.total_examples)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5, help="best-of repetitions")
    parser.add_argument("--scale", type=int, default=10,
                        help="duplicate the sample questions this many times")
    args = parser.parse_args()

    kb = sample.sample_kb()
    ds, _ = templates.generate_dataset(kb, sample.sample_templates())
    questions = [ex.question for ex in ds] * args.scale
    labeled = [(ex.question, ex.intent) for ex in ds] * args.scale
    model = classifier.train(ds, alpha=1.0)
    qcounts = [pure.feature_counts(q) for q in questions]

    backends = [("pure", pure)]
    if _fast is not None:
        backends.append(("cython", _fast))
    else:
        print("compiled kernel not available; timing pure only")

    stages = [
        ("normalize+featurize", bench_featurize, questions),
        ("train accumulation", bench_accumulate, labeled),
        ("nb scoring", bench_scores, None),  # args filled below
    ]

    print(f"{len(questions)} questions, best of {args.repeat}\n")
    print(f"{'stage':<22}" + "".join(f"{name:>12}" for name, _ in backends) + f"{'speedup':>10}")
    for label, fn, payload in stages:
        times = {}
        for name, kernel in backends:
            if label == "nb scoring":
                times[name] = best_of(args.repeat, fn, kernel, model, qcounts)
            else:
                times[name] = best_of(args.repeat, fn, kernel, payload)
        row = f"{label:<22}" + "".join(f"{times[name] * 1000:>10.1f}ms" for name, _ in backends)
        if "cython" in times:
            row += f"{times['pure'] / times['cython']:>9.2f}x"
        print(row)


if __name__ == "__main__":
    main()
