"""Persistence of combinatorial multivector fields built from Markov chains."""

import json

from ._core import (
    Error,
    InvariantError,
    ParseError,
    TransitionMatrix,
    ValidationError,
    parse_matrix,
    perturb,
    random_chain,
    thresholds,
)
from . import _core

__all__ = [
    "Error",
    "InvariantError",
    "ParseError",
    "TransitionMatrix",
    "ValidationError",
    "bottleneck",
    "diagram",
    "diagram_svg",
    "load_matrix",
    "morse",
    "mvf",
    "parse_matrix",
    "perturb",
    "properties",
    "random_chain",
    "stability",
    "thresholds",
]


def _as_matrix(m):
    if isinstance(m, TransitionMatrix):
        return m
    return TransitionMatrix([list(map(float, row)) for row in m])


def _as_diagram(d):
    if isinstance(d, dict):
        return json.dumps(d)
    return _as_matrix(d)


def load_matrix(path, format="auto"):
    with open(path, encoding="utf-8") as f:
        return parse_matrix(f.read(), format)


def mvf(matrix, gamma):
    """Multivector field at gamma: {"gamma", "multivectors": [[cell names]]}."""
    return json.loads(_core._mvf(_as_matrix(matrix), gamma))


def morse(matrix, gamma):
    """Morse sets with topological indices and the strict Morse order."""
    return json.loads(_core._morse(_as_matrix(matrix), gamma))


def diagram(matrix):
    """Persistence diagram; essential points have death "inf"."""
    return json.loads(_core._diagram(_as_matrix(matrix)))


def diagram_svg(d):
    return _core._diagram_svg(_as_diagram(d))


def bottleneck(a, b):
    """Bottleneck distance and an optimal matching. Accepts matrices or diagram dicts."""
    result = json.loads(_core._bottleneck(_as_diagram(a), _as_diagram(b)))
    if result["distance"] == "inf":
        result["distance"] = float("inf")
    return result


def stability(matrix=None, *, random=None, trials=200, multi=0, delta=0.05,
              positive_only=False, allow_ties=False, seed=None):
    if (matrix is None) == (random is None):
        raise ValueError("pass exactly one of matrix or random")
    if matrix is not None:
        text = _core._stability_matrix(_as_matrix(matrix), trials, multi, delta,
                                       positive_only, allow_ties, seed or 0)
    else:
        text = _core._stability_random(random, trials, multi, delta, positive_only, allow_ties, seed)
    return json.loads(text)


def properties(random, trials=100, seed=None):
    return json.loads(_core._properties(random, trials, seed))
