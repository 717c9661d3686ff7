"""
Knot vectors and the four knot partitions used to build PH B-spline curves.

The preimage z(t) lives on mu. Its square (the hodograph) lives on nu, the
integrated curve on rho, and the offset numerator and denominator on tau.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..common.errors import DegenerateInput, ModeMismatch, NonIncreasing, TooFewKnots

logger = logging.getLogger(__name__)


class Mode(str, Enum):
    """Boundary behaviour of the preimage spline."""

    OPEN = "open"
    CLAMPED = "clamped"
    CLOSED = "closed"


@dataclass(frozen=True)
class KnotVector:
    """
    Non-decreasing knot sequence stored as distinct values with multiplicities.

    Two knots are the same knot only when their stored floats are equal.
    """

    values: Tuple[float, ...]
    multiplicities: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.values) != len(self.multiplicities):
            raise DegenerateInput("values and multiplicities must have equal length")
        if any(m < 1 for m in self.multiplicities):
            raise DegenerateInput("multiplicities must be positive")
        for left, right in zip(self.values, self.values[1:]):
            if not right > left:
                raise NonIncreasing(f"knot values must increase, got {left} then {right}")
        if len(self.values) < 2:
            raise DegenerateInput("a knot vector needs at least one span of positive length")

    @classmethod
    def from_flat(cls, knots: Iterable[float]) -> "KnotVector":
        values: List[float] = []
        mults: List[int] = []
        for raw in knots:
            knot = float(raw)
            if values and knot == values[-1]:
                mults[-1] += 1
                continue
            if values and knot < values[-1]:
                raise NonIncreasing(f"knot sequence decreases at {knot} after {values[-1]}")
            values.append(knot)
            mults.append(1)
        return cls(tuple(values), tuple(mults))

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[float, int]]) -> "KnotVector":
        items = list(pairs)
        return cls(tuple(float(v) for v, _ in items), tuple(int(m) for _, m in items))

    @cached_property
    def flat(self) -> np.ndarray:
        out = np.repeat(np.asarray(self.values, dtype=float), self.multiplicities)
        out.setflags(write=False)
        return out

    def __len__(self) -> int:
        return int(sum(self.multiplicities))

    def multiplicity(self, value: float) -> int:
        for v, m in zip(self.values, self.multiplicities):
            if v == value:
                return m
        return 0

    @property
    def max_multiplicity(self) -> int:
        return max(self.multiplicities)

    @property
    def interval(self) -> Tuple[float, float]:
        return self.values[0], self.values[-1]

    def basis_count(self, degree: int) -> int:
        return len(self) - degree - 1

    def check_degree(self, degree: int) -> None:
        """A degree-``degree`` spline allows knot multiplicities up to degree + 2."""
        if self.max_multiplicity > degree + 2:
            raise DegenerateInput(
                f"knot multiplicity {self.max_multiplicity} exceeds degree + 2 = {degree + 2} in {self!r}"
            )

    def to_dict(self, degree: Optional[int] = None, mode: Optional[Mode] = None) -> Dict[str, Any]:
        doc: Dict[str, Any] = {"knots": [float(k) for k in self.flat]}
        if degree is not None:
            doc["degree"] = degree
        if mode is not None:
            doc["mode"] = Mode(mode).value
        return doc

    @classmethod
    def from_dict(cls, doc: Dict[str, Any]) -> "KnotVector":
        return cls.from_flat(doc["knots"])

    def __repr__(self) -> str:
        pairs = ", ".join(
            f"{v:g}" if m == 1 else f"<{v:g}>^{m}" for v, m in zip(self.values, self.multiplicities)
        )
        return f"KnotVector({pairs})"


@dataclass(frozen=True)
class PartitionSet:
    """
    mu, nu, rho and tau for one preimage degree and mode.

    ``p + 1`` preimage coefficients, ``q + 1`` hodograph coefficients,
    ``q + 2`` curve control points and ``w + 1`` offset coefficients.
    ``m`` is the segment count (``p`` for open/clamped, ``p - n`` closed).
    """

    mu: KnotVector
    nu: KnotVector
    rho: KnotVector
    tau: KnotVector
    n: int
    mode: Mode
    p: int
    q: int
    w: int
    m: int

    @property
    def t(self) -> np.ndarray:
        """Knots of mu indexed as t_0, t_1, ..."""
        return self.mu.flat

    @property
    def domain(self) -> Tuple[float, float]:
        t = self.mu.flat
        return float(t[self.n]), float(t[self.p + 1])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "degree": self.n,
            "mode": self.mode.value,
            "mu": [float(k) for k in self.mu.flat],
            "nu": [float(k) for k in self.nu.flat],
            "rho": [float(k) for k in self.rho.flat],
            "tau": [float(k) for k in self.tau.flat],
            "p": self.p,
            "q": self.q,
            "w": self.w,
        }


def _check_degree(n: int) -> None:
    if int(n) != n or n < 1:
        raise DegenerateInput(f"preimage degree must be an integer >= 1, got {n}")


def _strictly_increasing(knots: Sequence[float]) -> np.ndarray:
    arr = np.asarray(knots, dtype=float)
    if arr.ndim != 1:
        raise NonIncreasing("knots must be a flat list")
    if arr.size > 1 and np.any(np.diff(arr) <= 0):
        raise NonIncreasing(f"knots must be strictly increasing: {arr.tolist()}")
    return arr


def build_mu(
    n: int,
    knots: Sequence[float],
    mode: Mode,
    bounds: Optional[Tuple[float, float]] = None,
) -> KnotVector:
    """
    Build the preimage knot vector mu.

    Open: ``knots`` is the whole strictly increasing list t_0..t_{p+n+1}.
    Clamped: ``knots`` are the interior knots and ``bounds`` the domain ends;
    the ends get multiplicity n+1.
    Closed: ``knots`` are t_0..t_{m+n}; n+1 knots are appended so that the
    spans d_{m+1+k} repeat d_k for k = n..2n.
    """
    _check_degree(n)
    mode = Mode(mode)
    arr = _strictly_increasing(knots)

    if mode is Mode.OPEN:
        if arr.size < 2 * n + 2:
            raise TooFewKnots(f"open degree-{n} preimage needs at least {2 * n + 2} knots")
        return KnotVector.from_flat(arr)

    if mode is Mode.CLAMPED:
        if bounds is None:
            raise TooFewKnots("clamped mode needs the domain end points")
        lo, hi = float(bounds[0]), float(bounds[1])
        if not hi > lo:
            raise NonIncreasing(f"domain end points must increase, got {lo}, {hi}")
        if arr.size and (arr[0] <= lo or arr[-1] >= hi):
            raise NonIncreasing("interior knots must lie strictly inside the domain")
        flat = [lo] * (n + 1) + arr.tolist() + [hi] * (n + 1)
        return KnotVector.from_flat(flat)

    m = arr.size - 1 - n
    if m < max(n, 1):
        raise TooFewKnots(f"closed degree-{n} preimage needs at least {2 * n + 1} knots")
    spans = np.diff(arr)  # spans[k - 1] = d_k
    flat = arr.tolist()
    for k in range(n, 2 * n + 1):
        flat.append(flat[-1] + float(spans[k - 1]))
    logger.debug(json.dumps({"event": "closed_mu_completed", "n": n, "m": m, "knots": flat}))
    return KnotVector.from_flat(flat)


EXTRA_KNOT_RULES = ("mirror", "mean")


def knot_differences(t: Sequence[float]) -> np.ndarray:
    """Consecutive spans of a flat knot sequence."""
    return np.diff(np.asarray(t, dtype=float))


def _extra_knots(t: np.ndarray, rule: str) -> Tuple[float, float]:
    if rule == "mirror":
        return float(2.0 * t[0] - t[1]), float(2.0 * t[-1] - t[-2])
    if rule == "mean":
        step = float(np.mean(knot_differences(t)))
        return float(t[0] - step), float(t[-1] + step)
    raise DegenerateInput(f"extra-knot rule must be one of {EXTRA_KNOT_RULES}, got {rule!r}")


def derive_partitions(
    mu: KnotVector,
    n: int,
    mode: Mode,
    extra_knots: Optional[Tuple[float, float]] = None,
    open_rule: str = "mirror",
) -> PartitionSet:
    """
    Derive nu, rho and tau from mu.

    Clamped mode uses the reduced partitions (end multiplicities 2n+1, 2n+2,
    4n+2). Open and closed mode pad rho and tau with one extra knot per end.
    Unless ``extra_knots`` is given, closed curves mirror the first and last
    span and open curves follow ``open_rule`` ("mirror" or "mean", one mean
    span beyond each end).
    """
    _check_degree(n)
    mode = Mode(mode)
    t = mu.flat
    values = mu.values
    mults = mu.multiplicities

    if mode is Mode.CLAMPED:
        if len(values) < 2 or mults[0] != n + 1 or mults[-1] != n + 1 or any(
            k != 1 for k in mults[1:-1]
        ):
            raise ModeMismatch(
                f"clamped mu must be <t_n>^{n + 1}, simple interior knots, <t_m+1>^{n + 1}; got {mu!r}"
            )
        m = len(t) - n - 2
        inner = list(values[1:-1])
        lo, hi = values[0], values[-1]
        nu = KnotVector.from_pairs([(lo, 2 * n + 1)] + [(v, n + 1) for v in inner] + [(hi, 2 * n + 1)])
        rho = KnotVector.from_pairs([(lo, 2 * n + 2)] + [(v, n + 1) for v in inner] + [(hi, 2 * n + 2)])
        tau = KnotVector.from_pairs([(lo, 4 * n + 2)] + [(v, 3 * n + 2) for v in inner] + [(hi, 4 * n + 2)])
        q = 2 * n + (n + 1) * (m - n)
        w = 4 * n + 1 + (m - n) * (3 * n + 2)
        return PartitionSet(mu, nu, rho, tau, n, mode, p=m, q=q, w=w, m=m)

    if any(k != 1 for k in mults):
        raise ModeMismatch(f"{mode.value} mu must have simple knots; got {mu!r}")
    p = len(t) - n - 2
    if p < n:
        raise TooFewKnots(f"degree-{n} preimage on {len(t)} knots has an empty domain")
    if mode is Mode.CLOSED and p - n < n:
        raise TooFewKnots(f"closed degree-{n} preimage needs m >= {n}")

    if extra_knots is None:
        t_minus, t_plus = _extra_knots(t, open_rule if mode is Mode.OPEN else "mirror")
    else:
        t_minus, t_plus = float(extra_knots[0]), float(extra_knots[1])
    if not (t_minus < t[0] and t_plus > t[-1]):
        raise NonIncreasing(f"extra knots must lie outside [{t[0]}, {t[-1]}]")

    nu = KnotVector.from_pairs([(v, n + 1) for v in values])
    rho = KnotVector.from_pairs([(t_minus, 1)] + [(v, n + 1) for v in values] + [(t_plus, 1)])
    tau = KnotVector.from_pairs(
        [(t_minus, 2 * n + 1)] + [(v, 3 * n + 2) for v in values] + [(t_plus, 2 * n + 1)]
    )
    q = (n + 1) * (p + n)
    w = (3 * n + 2) * (p + n + 2) - 1
    m = p - n if mode is Mode.CLOSED else p
    return PartitionSet(mu, nu, rho, tau, n, mode, p=p, q=q, w=w, m=m)


__all__ = [
    "Mode",
    "KnotVector",
    "PartitionSet",
    "build_mu",
    "derive_partitions",
    "knot_differences",
    "EXTRA_KNOT_RULES",
]
