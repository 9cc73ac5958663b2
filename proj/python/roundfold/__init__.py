"""Round fold map descriptors, Reeb homology and classification.

Descriptors travel as .rfm text; structured results come back as dicts.
"""

import json

from . import _core
from ._core import Error, combine, decompose, euler, list_presets, normalize, preset, reeb_dot, run_cli, synthesize

__all__ = [
    "Error",
    "check",
    "classify",
    "combine",
    "decompose",
    "dim5",
    "euler",
    "homology",
    "list_presets",
    "normalize",
    "preset",
    "prop1",
    "reeb",
    "reeb_dot",
    "run_cli",
    "synthesize",
    "validate",
]


def check(text):
    """Diagnostics of a document, empty when it parses and validates."""
    return json.loads(_core.check(text))


def validate(text):
    return json.loads(_core.validate(text))


def homology(text):
    return json.loads(_core.homology(text))


def reeb(text):
    return json.loads(_core.reeb(text))


def prop1(text):
    return json.loads(_core.prop1(text))


def classify(text):
    return json.loads(_core.classify(text))


def dim5(expr):
    return json.loads(_core.dim5(expr))
