"""Canonical JSON in and out.

Scalars, fractions and infinities are written as strings, keys are sorted and
separators fixed, so equal inputs give byte-identical output.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction

from .ktheory import INF, ChiWeights, KClass
from .lattice import Weights

__all__ = ["dumps", "load_arg", "weights_from", "class_from", "chi_from"]


def _default(x):
    if isinstance(x, Fraction):
        return str(x)
    if x == INF:
        return "inf"
    if hasattr(x, "to_json"):
        return x.to_json()
    return str(x)


def _canon(x):
    # json would write a float infinity as the non-standard token Infinity
    if isinstance(x, float) and x == INF:
        return "inf"
    if isinstance(x, dict):
        return {k: _canon(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_canon(v) for v in x]
    return x


def dumps(obj) -> str:
    return json.dumps(_canon(obj), sort_keys=True, separators=(",", ":"), default=_default, ensure_ascii=False, allow_nan=False)


def load_arg(text):
    """Inline JSON, ``@path`` for a file, or ``-`` for standard input."""
    if text is None or not isinstance(text, str):
        return text
    if text == "-":
        return json.load(sys.stdin)
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            return json.load(fh)
    return json.loads(text)


def weights_from(data) -> Weights:
    """Accept [2, 3], {"points": [{"name": .., "weight": ..}]} or the point list."""
    if isinstance(data, list) and all(isinstance(w, int) for w in data):
        return Weights.of(*data)
    return Weights.from_json(data)


def class_from(weights: Weights, data) -> KClass:
    """A class as {"rank", "d0", "slots"}; slots may be a list or keyed by point name."""
    return KClass.from_json(weights, data)


def chi_from(data) -> ChiWeights | None:
    if data is None:
        return None
    return ChiWeights(tuple(tuple(Fraction(x) for x in chain) for chain in data))
