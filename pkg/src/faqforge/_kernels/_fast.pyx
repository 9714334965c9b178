# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled text kernels: single-pass normalization, n-gram counting, and the
Naive Bayes scoring loop. Mirrors pure.py operation-for-operation; the float
arithmetic must stay bit-identical with the pure kernel (no fused multiply-add,
same libm log, same summation order)."""

from libc.math cimport log


cpdef str normalize(str text):
    """Lowercase, map every char outside [a-z0-9] to a space, collapse runs, trim."""
    cdef str lowered = text.lower()
    cdef Py_UCS4 ch
    cdef bint pending = False
    cdef bint started = False
    cdef bytearray out = bytearray()
    for ch in lowered:
        if (u'a' <= ch <= u'z') or (u'0' <= ch <= u'9'):
            if pending and started:
                out.append(32)  # ' '
            out.append(<unsigned char> ch)
            started = True
            pending = False
        else:
            pending = True
    return out.decode("ascii")


cpdef list tokenize(str text):
    cdef str norm = normalize(text)
    if not norm:
        return []
    return norm.split(" ")


cpdef dict feature_counts(str text):
    """Unigram + adjacent-bigram counts; insertion order matches pure.py."""
    cdef list tokens = tokenize(text)
    cdef dict counts = {}
    cdef Py_ssize_t i, n = len(tokens)
    cdef str tok, bigram
    for i in range(n):
        tok = <str> tokens[i]
        counts[tok] = counts.get(tok, 0) + 1
    for i in range(n - 1):
        bigram = (<str> tokens[i]) + "_" + (<str> tokens[i + 1])
        counts[bigram] = counts.get(bigram, 0) + 1
    return counts


cpdef long accumulate_features(dict dst, str text):
    """Add the feature counts of ``text`` into ``dst``; returns occurrences added."""
    cdef dict counts = feature_counts(text)
    cdef long total = 0
    cdef long cnt
    for feat, val in counts.items():
        cnt = <long> val
        dst[feat] = dst.get(feat, 0) + cnt
        total += cnt
    return total


cpdef list nb_log_scores(dict counts, list labels, dict class_counts,
                         dict class_totals, dict label_features,
                         set vocabulary, double alpha, long total_examples):
    """Multinomial Naive Bayes log joint score per label (see pure.py)."""
    cdef Py_ssize_t vocab_size = len(vocabulary)
    cdef list scores = []
    cdef double score, denom
    cdef long cnt, fc
    cdef dict feats
    for label in labels:
        score = log((<long> class_counts[label]) / (<double> total_examples))
        denom = (<long> class_totals[label]) + alpha * vocab_size
        feats = <dict> label_features[label]
        for feat, val in counts.items():
            if feat in vocabulary:
                cnt = <long> val
                fc = <long> feats.get(feat, 0)
                score += cnt * log((fc + alpha) / denom)
        scores.append(score)
    return scores
