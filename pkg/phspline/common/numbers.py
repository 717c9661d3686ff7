"""
Deterministic JSON rendering of numerical results.

Reals use Python's shortest round-trip repr (at most 17 significant digits),
complex numbers become [re, im] pairs and NumPy values are unwrapped.
"""

import json
import math
from enum import Enum
from typing import Any, List

import numpy as np


def clean_real(value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"non-finite value {value!r} cannot be serialized")
    # -0.0 and 0.0 render alike
    return value + 0.0


def pair(value: complex) -> List[float]:
    value = complex(value)
    return [clean_real(value.real), clean_real(value.imag)]


def to_jsonable(obj: Any) -> Any:
    """Recursively convert results into plain JSON types."""
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return pair(obj)
    if isinstance(obj, (float, np.floating)):
        return clean_real(obj)
    return obj


def dumps(doc: Any) -> str:
    return json.dumps(to_jsonable(doc), indent=2, ensure_ascii=False, allow_nan=False) + "\n"


__all__ = ["clean_real", "pair", "to_jsonable", "dumps"]
