"""Clamped cubic PH B-splines: degree-1 preimage over <0>^2 < t_2 < ... < <t_{m+1}>^2."""

from __future__ import annotations

from typing import Callable

import numpy as np

from .case import ExplicitCase, OffsetBuilder, TableBuilder, lerp, one, preimage_accessor


def chi(case: ExplicitCase) -> np.ndarray:
    m, q = case.m, case.partitions.q
    table = TableBuilder(m + 1, m + 1, q + 1)
    for k in range(m + 1):
        table.put(2 * k, k, k, 1.0)
    for k in range(m):
        table.put(2 * k + 1, k, k + 1, 0.5, mirror=True)
    return table.values


def zeta(case: ExplicitCase) -> np.ndarray:
    m = case.m
    parts = case.partitions
    d, D = case.d, case.D
    table = TableBuilder(parts.q + 2, parts.q + 1, parts.w + 1)
    for k in range(m + 1):
        table.put(5 * k, 2 * k, 2 * k, d[k + 1] / D[k])
        table.put(5 * k, 2 * k + 1, 2 * k, d[k] / D[k])
    for k in range(m):
        table.put(5 * k + 1, 2 * k, 2 * k + 1, 2 * d[k + 1] / (5 * D[k]))
        table.put(5 * k + 1, 2 * k + 1, 2 * k, 3 / 5)
        table.put(5 * k + 1, 2 * k + 1, 2 * k + 1, 2 * d[k] / (5 * D[k]))

        table.put(5 * k + 2, 2 * k, 2 * k + 2, d[k + 1] / (10 * D[k]))
        table.put(5 * k + 2, 2 * k + 1, 2 * k + 1, 3 / 5)
        table.put(5 * k + 2, 2 * k + 1, 2 * k + 2, d[k] / (10 * D[k]))
        table.put(5 * k + 2, 2 * k + 2, 2 * k, 3 / 10)

        table.put(5 * k + 3, 2 * k + 1, 2 * k + 2, 3 / 10)
        table.put(5 * k + 3, 2 * k + 2, 2 * k, d[k + 2] / (10 * D[k + 1]))
        table.put(5 * k + 3, 2 * k + 2, 2 * k + 1, 3 / 5)
        table.put(5 * k + 3, 2 * k + 3, 2 * k, d[k + 1] / (10 * D[k + 1]))

        table.put(5 * k + 4, 2 * k + 2, 2 * k + 1, 2 * d[k + 2] / (5 * D[k + 1]))
        table.put(5 * k + 4, 2 * k + 2, 2 * k + 2, 3 / 5)
        table.put(5 * k + 4, 2 * k + 3, 2 * k + 1, 2 * d[k + 1] / (5 * D[k + 1]))
    return table.values


def hodograph(case: ExplicitCase, z: np.ndarray, mul: Callable[[complex, complex], complex]) -> np.ndarray:
    """p_{2k} = z_k^2, p_{2k+1} = z_k z_{k+1} with products taken by ``mul``."""
    m = case.m
    zk = preimage_accessor(z)
    out = np.zeros(2 * m + 1, dtype=complex)
    for k in range(m + 1):
        out[2 * k] = mul(zk(k), zk(k))
    for k in range(m):
        out[2 * k + 1] = mul(zk(k), zk(k + 1))
    return out


def span_weights(case: ExplicitCase) -> np.ndarray:
    m, d = case.m, case.d
    w = np.zeros(2 * m + 1)
    for i in range(m + 1):
        w[2 * i] = d[i] + d[i + 1]
    for i in range(m):
        w[2 * i + 1] = d[i + 1]
    return w


def total_length(case: ExplicitCase, l: np.ndarray) -> float:
    return float(l[2 * case.m + 1])


def offset_period(terms: OffsetBuilder, d: np.ndarray, g: int, i: int, e: int, full: bool = True) -> None:
    """
    Offset entries g..g+4 of one segment: i indexes r and sigma, e indexes d.
    Only entry g when ``full`` is false.
    """
    here = lerp(i, d[e], d[e + 1])
    terms.add(g, 1.0, here, one(i))
    if not full:
        return
    ahead = lerp(i + 2, d[e + 1], d[e + 2])
    terms.add(g + 1, 3 / 5, one(i + 1), one(i))
    terms.add(g + 1, 2 / 5, here, one(i + 1))
    terms.add(g + 2, 3 / 10, one(i + 2), one(i))
    terms.add(g + 2, 3 / 5, one(i + 1), one(i + 1))
    terms.add(g + 2, 1 / 10, here, one(i + 2))
    terms.add(g + 3, 1 / 10, ahead, one(i))
    terms.add(g + 3, 3 / 5, one(i + 2), one(i + 1))
    terms.add(g + 3, 3 / 10, one(i + 1), one(i + 2))
    terms.add(g + 4, 2 / 5, ahead, one(i + 1))
    terms.add(g + 4, 3 / 5, one(i + 2), one(i + 2))


def offset_terms(case: ExplicitCase) -> OffsetBuilder:
    """gamma_0..gamma_{5m} and q_0..q_{5m}, with d_0 = d_{m+1} = 0."""
    m = case.m
    terms = OffsetBuilder(case.partitions.w + 1)
    for k in range(m + 1):
        offset_period(terms, case.d, 5 * k, 2 * k, k, full=k < m)
    return terms
