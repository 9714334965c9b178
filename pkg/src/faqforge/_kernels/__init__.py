"""Kernel backend selection.

Imports the compiled extension when available, otherwise falls back to the
pure-Python implementation. Set FAQFORGE_PURE_PYTHON=1 to force the fallback
(useful for benchmarking and debugging).
"""

import os

if os.environ.get("FAQFORGE_PURE_PYTHON"):
    from faqforge._kernels.pure import (
        accumulate_features, feature_counts, nb_log_scores, normalize, tokenize,
    )
    BACKEND = "pure"
else:
    try:
        from faqforge._kernels._fast import (  # type: ignore[no-redef]
            accumulate_features, feature_counts, nb_log_scores, normalize, tokenize,
        )
        BACKEND = "cython"
    except ImportError:
        from faqforge._kernels.pure import (  # type: ignore[no-redef]
            accumulate_features, feature_counts, nb_log_scores, normalize, tokenize,
        )
        BACKEND = "pure"

__all__ = [
    "BACKEND",
    "accumulate_features",
    "feature_counts",
    "nb_log_scores",
    "normalize",
    "tokenize",
]
