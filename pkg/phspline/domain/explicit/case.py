"""
Index conventions shared by the closed-form coefficient tables.

Every table is written in terms of knot differences d_k and D_k = d_k + d_{k+1}.
Where d_0 starts depends on the case:

* clamped cubic:  d_k = t_{k+1} - t_k, so d_0 = d_{m+1} = 0
* clamped quintic: d_k = t_{k+2} - t_{k+1}, so d_0 = d_m = 0
* closed:          d_k = t_k - t_{k-1}, with t_{-1} and the last knot taken from rho
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from ...common.errors import DegenerateInput, UnsupportedCase
from ..knots import Mode, PartitionSet

SUPPORTED = ((1, Mode.CLAMPED), (2, Mode.CLAMPED), (1, Mode.CLOSED), (2, Mode.CLOSED))


@dataclass(frozen=True, eq=False)
class ExplicitCase:
    """Degree, mode, segment index ``m`` and knot differences of one explicit case."""

    n: int
    mode: Mode
    m: int
    d: np.ndarray
    partitions: PartitionSet

    @classmethod
    def from_partitions(cls, parts: PartitionSet) -> "ExplicitCase":
        n, mode = parts.n, parts.mode
        if (n, mode) not in SUPPORTED:
            raise UnsupportedCase(
                f"no closed-form tables for {mode.value} degree-{n} preimages; use the general pipeline"
            )
        t = parts.t
        if mode is Mode.CLAMPED:
            spans = np.diff(t)
            d = spans if n == 1 else spans[1:]
        else:
            rho = parts.rho.flat
            d = np.diff(np.concatenate([[rho[0]], t, [rho[-1]]]))
        case = cls(n=n, mode=mode, m=parts.m, d=np.asarray(d, dtype=float), partitions=parts)
        case.validate()
        return case

    @property
    def key(self) -> Tuple[int, Mode]:
        return self.n, self.mode

    @property
    def D(self) -> np.ndarray:
        return self.d[:-1] + self.d[1:]

    @property
    def preimage_size(self) -> int:
        return self.partitions.p + 1

    def validate(self) -> None:
        n, m, d = self.n, self.m, self.d
        if m < n:
            raise UnsupportedCase(f"degree-{n} explicit forms need m >= {n}, got m={m}")
        scale = float(np.max(np.abs(d)))
        tol = 1e-12 * scale
        if self.mode is Mode.CLAMPED:
            last = m + 1 if n == 1 else m
            if abs(d[0]) > tol or abs(d[last]) > tol:
                raise DegenerateInput(f"clamped knot differences must vanish at both ends, got {d.tolist()}")
            if np.any(d[1:last] <= 0):
                raise DegenerateInput("interior knot differences must be positive")
            return
        if np.any(d <= 0):
            raise DegenerateInput("closed knot differences must be positive")
        for k in (n, n + 1):
            if abs(d[m + 1 + k] - d[k]) > tol:
                raise DegenerateInput(
                    f"closed knots need d_{m + 1 + k} = d_{k}, got {d[m + 1 + k]} and {d[k]}"
                )

    def to_dict(self) -> dict:
        return {"n": self.n, "mode": self.mode.value, "m": self.m, "d": [float(x) for x in self.d]}


class TableBuilder:
    """Dense ``values[i, j, k]`` filled from sparse closed-form entries."""

    def __init__(self, rows: int, cols: int, size: int):
        self.values = np.zeros((rows, cols, size))

    def put(self, k: int, i: int, j: int, value: float, mirror: bool = False) -> None:
        # Entries that name a basis function outside the table are dropped.
        rows, cols, size = self.values.shape
        if not (0 <= k < size and 0 <= i < rows and 0 <= j < cols):
            return
        self.values[i, j, k] = value
        if mirror and 0 <= j < rows and 0 <= i < cols:
            self.values[j, i, k] = value


Blend = Tuple[Tuple[int, float], ...]


def one(i: int) -> Blend:
    return ((i, 1.0),)


def lerp(i: int, a: float, b: float) -> Blend:
    """(a x_{i+1} + b x_i) / (a + b)"""
    s = a + b
    return ((i + 1, a / s), (i, b / s))


def quad(i: int, a: float, b: float) -> Blend:
    """(a^2 x_{i+2} + 2ab x_{i+1} + b^2 x_i) / (a + b)^2"""
    s = (a + b) ** 2
    return ((i + 2, a * a / s), (i + 1, 2 * a * b / s), (i, b * b / s))


def _blend(values: np.ndarray, blend: Blend) -> complex:
    return sum((w * values[i] for i, w in blend if 0 <= i < values.size), 0j)


class OffsetBuilder:
    """
    Closed-form offset coefficients as sums of terms c R S, where R blends
    control points and S blends speed (or hodograph) coefficients:

        gamma_k = sum c S(sigma),   q_k = sum c (R(r) S(sigma) - i h S(p)).
    """

    def __init__(self, size: int):
        self.terms: List[List[Tuple[float, Blend, Blend]]] = [[] for _ in range(size)]

    def add(self, k: int, c: float, r: Blend, s: Blend) -> None:
        if 0 <= k < len(self.terms):
            self.terms[k].append((c, r, s))

    def weights(self, values: Sequence[complex]) -> np.ndarray:
        vals = np.asarray(values)
        return np.array([sum((c * _blend(vals, s) for c, _, s in row), 0j) for row in self.terms])

    def points(self, r: Sequence[complex], sigma: Sequence[float]) -> np.ndarray:
        rs, ss = np.asarray(r, dtype=complex), np.asarray(sigma, dtype=float)
        return np.array([sum((c * _blend(rs, a) * _blend(ss, s) for c, a, s in row), 0j) for row in self.terms])


def preimage_accessor(z: np.ndarray):
    """z_i for valid i and 0 for indices outside the coefficient list."""

    def at(i: int) -> complex:
        return complex(z[i]) if 0 <= i < z.size else 0j

    return at


__all__ = [
    "ExplicitCase",
    "TableBuilder",
    "OffsetBuilder",
    "Blend",
    "one",
    "lerp",
    "quad",
    "preimage_accessor",
    "SUPPORTED",
]
