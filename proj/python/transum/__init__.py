"""Query-oriented extractive summarization via weighted hypergraph transversals."""

from ._transum import (
    InputError,
    InternalError,
    __version__,
    bootstrap_ci,
    dump_hypergraph,
    evaluate,
    rouge_score,
    solve,
    summarize,
)

__all__ = [
    "InputError",
    "InternalError",
    "__version__",
    "bootstrap_ci",
    "dump_hypergraph",
    "evaluate",
    "rouge_score",
    "solve",
    "summarize",
]
