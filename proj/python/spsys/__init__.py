"""Subproduct systems with two-dimensional fibers.

Documents (systems, graded algebras, triples, reports) are plain dicts in the
same JSON layout the ``spsys`` command-line tool reads and writes. Matrices
are complex numpy arrays.
"""

import json

from . import _core
from ._core import (
    DimensionError,
    FormatError,
    NotExtendableError,
    NotSubproductTripleError,
    PipelineError,
    PreconditionError,
    SpsysError,
    UnclassifiedChainError,
    default_eps,
    default_horizon,
    identity_residual,
    product_in_intersection,
    surviving_term_count,
    verify_identity,
)

__all__ = [
    "DimensionError",
    "FormatError",
    "NotExtendableError",
    "NotSubproductTripleError",
    "PipelineError",
    "PreconditionError",
    "SpsysError",
    "UnclassifiedChainError",
    "check",
    "classify",
    "classify_triple",
    "default_eps",
    "default_horizon",
    "dualize",
    "generate",
    "identity_residual",
    "product_in_intersection",
    "rank_of_plane",
    "surviving_term_count",
    "verify_identity",
]


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def generate(cls, lam=None, horizon=default_horizon, seed=None):
    """Canonical system for label ``cls`` (E1..E5), scrambled when ``seed`` is given."""
    if lam is not None:
        lam = complex(lam)
    return json.loads(_core.generate(cls, lam, horizon, seed))


def classify(doc, eps=default_eps):
    """Classification report for a subproduct system or a triple."""
    return json.loads(_core.classify(_text(doc), eps))


def check(doc, eps=default_eps):
    """Axiom report: injectivity and associativity at every index triple."""
    return json.loads(_core.check(_text(doc), eps))


def dualize(doc):
    """Transpose every level: subproduct system <-> graded algebra."""
    return json.loads(_core.dualize(_text(doc)))


def rank_of_plane(basis, eps=default_eps):
    """Rank of the determinant form on the plane spanned by the columns of ``basis`` (4 x 2)."""
    return json.loads(_core.rank_of_plane(basis, eps))


def classify_triple(e2, e3, eps=default_eps):
    """Classify the triple spanned by ``e2`` (4 x 2) and ``e3`` (8 x 2)."""
    return json.loads(_core.classify_triple(e2, e3, eps))
