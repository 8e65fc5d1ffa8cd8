"""Kitchen robot commands and queries in first-order logic with cardinality."""

import json
import os

from ._core import (
    Error,
    InconsistentWorld,
    Interpretation,
    KnowledgeBase,
    Lexicon,
    ParseError,
    SentenceIR,
    Service,
    Simulator,
    alpha_equivalent,
    canonical_wire,
    classify,
    enumerate_models,
    format_percent,
    normalize_formula,
    parse_ir,
    translate,
)
from . import _core

__all__ = [
    "Error",
    "InconsistentWorld",
    "Interpretation",
    "KnowledgeBase",
    "Lexicon",
    "ParseError",
    "SentenceIR",
    "Service",
    "Simulator",
    "alpha_equivalent",
    "canonical_wire",
    "classify",
    "data_path",
    "enumerate_models",
    "format_percent",
    "normalize_formula",
    "parse_ir",
    "run_command",
    "run_corpus",
    "translate",
]


def data_path(*parts):
    """Path inside the shipped data directory (installed wheel or source tree)."""
    here = os.path.dirname(__file__)
    for root in (os.path.join(here, "data"), os.environ.get("CARDINAL_DATA_DIR", "")):
        if root and os.path.isdir(root):
            return os.path.join(root, *parts)
    raise FileNotFoundError("no cardinal data directory; set CARDINAL_DATA_DIR")


def run_command(ir, simulator, knowledge):
    return json.loads(_core.run_command(ir, simulator, knowledge))


def run_corpus(path, lexicon, knowledge):
    return json.loads(_core.run_corpus(path, lexicon, knowledge))
