"""termcoder: dictionary-driven auto-coding of free-text reaction descriptions."""

from .coder import TermCoder
from .config import CoderConfig
from .selection import EncodingResult, Winner, encode
from .terminology import (
    MetaDictionary,
    TermEntry,
    Terminology,
    TerminologyError,
    build_meta_dict,
    load_stop_words,
    load_terminology,
)
from .textprep import CleanText, preprocess, stem_aggressive, stem_light

__version__ = "0.1.0"

__all__ = [
    "CleanText",
    "CoderConfig",
    "EncodingResult",
    "MetaDictionary",
    "TermCoder",
    "TermEntry",
    "Terminology",
    "TerminologyError",
    "Winner",
    "build_meta_dict",
    "encode",
    "load_stop_words",
    "load_terminology",
    "preprocess",
    "stem_aggressive",
    "stem_light",
    "__version__",
]
