"""Pure-Python text kernels.

These are the hot inner loops of the toolkit: question normalization,
n-gram counting, and the classifier scoring loop. A compiled twin lives in
``_fast.pyx``; both implementations must produce bit-identical results
(same float operations in the same order), which test_kernels.py enforces.
"""

import re
from math import log

_NON_ALNUM = re.compile(r"[^a-z0-9]+")


def normalize(text):
    """Lowercase, map every char outside [a-z0-9] to a space, collapse runs, trim."""
    return _NON_ALNUM.sub(" ", text.lower()).strip()


def tokenize(text):
    norm = normalize(text)
    return norm.split(" ") if norm else []


def feature_counts(text):
    """Multiset of unigram and adjacent-bigram features as a dict.

    Keys are inserted unigrams-first then bigrams, each left to right, so the
    iteration order is identical across kernel backends.
    """
    tokens = tokenize(text)
    counts = {}
    for tok in tokens:
        counts[tok] = counts.get(tok, 0) + 1
    for i in range(len(tokens) - 1):
        bigram = tokens[i] + "_" + tokens[i + 1]
        counts[bigram] = counts.get(bigram, 0) + 1
    return counts


def accumulate_features(dst, text):
    """Add the feature counts of ``text`` into ``dst``; returns occurrences added."""
    counts = feature_counts(text)
    total = 0
    for feat, cnt in counts.items():
        dst[feat] = dst.get(feat, 0) + cnt
        total += cnt
    return total


def nb_log_scores(counts, labels, class_counts, class_totals, label_features,
                  vocabulary, alpha, total_examples):
    """Multinomial Naive Bayes log joint score per label.

    score(c) = log(prior) + sum over in-vocabulary features of
    count * log((feature_count + alpha) / (class_total + alpha * |V|)).
    Features outside the training vocabulary contribute nothing.
    """
    vocab_size = len(vocabulary)
    scores = []
    for label in labels:
        score = log(class_counts[label] / total_examples)
        denom = class_totals[label] + alpha * vocab_size
        feats = label_features[label]
        for feat, cnt in counts.items():
            if feat in vocabulary:
                score += cnt * log((feats.get(feat, 0) + alpha) / denom)
        scores.append(score)
    return scores
