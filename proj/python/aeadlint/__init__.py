"""Python access to the aeadlint analyzer and its statistics helpers."""

import json
import os

from . import _core
from ._core import AeadlintError, chi_square, classify, wilson

__version__ = _core.__version__
__all__ = [
    "AeadlintError",
    "chi_square",
    "classify",
    "sarif",
    "scan",
    "scan_text",
    "validate",
    "wilson",
]


def scan_text(text, path="input.rs"):
    """Findings for one in-memory Rust source, as a list of dicts."""
    return json.loads(_core.scan_text_json(text, path))["files"][0]["findings"]


def scan(*paths):
    """Per-file scan results for the given Rust files."""
    return json.loads(_core.scan_paths_json([os.fspath(p) for p in paths]))["files"]


def sarif(*paths):
    return json.loads(_core.sarif([os.fspath(p) for p in paths]))


def validate(corpus, suite="benchmark"):
    """Validation scores for a labelled corpus directory."""
    return json.loads(_core.validate_json(os.fspath(corpus), suite))
