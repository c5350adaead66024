"""Exact rational homological perturbation toolkit.

Structures and perturbations are JSON documents (dicts or JSON text); results
come back as dicts.
"""

import json as _json

from . import _core
from ._core import Error, NonNilpotentError, ParseError, StructuralError

__all__ = [
    "Error",
    "NonNilpotentError",
    "ParseError",
    "StructuralError",
    "criterion_names",
    "enumerate_a0",
    "perturb",
    "standard_example",
    "transfer",
    "validate",
    "verify",
]


def _text(doc):
    return doc if isinstance(doc, str) else _json.dumps(doc)


def criterion_names():
    return list(_core.criterion_names())


def verify(name, order=0, seed=1, instances=200, threads=0):
    """Run one acceptance criterion; order 0 uses the default truncation order."""
    return _json.loads(_core.verify(name, order, seed, instances, threads))


def validate(document):
    """Axiom report for a complex, structure or kit document."""
    return _json.loads(_core.validate(_text(document)))


def perturb(structure, perturbation, cap=None):
    """Kit document, or the failing input report when the structure is invalid."""
    return _json.loads(_core.perturb(_text(structure), _text(perturbation), cap))


def transfer(algebra, bound=6, cap=None):
    return _json.loads(_core.transfer(algebra, bound, cap))


def enumerate_a0(order):
    return _json.loads(_core.enumerate(order))


def standard_example():
    """{"structure": ..., "perturbation": ...} for the three-cell example."""
    return _json.loads(_core.standard_example())
