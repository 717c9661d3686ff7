"""Closed cubic PH B-splines: degree-1 preimage over 0 = t_0 < t_1 < ... < t_{m+3}."""

from __future__ import annotations

from typing import Callable

import numpy as np

from .case import ExplicitCase, OffsetBuilder, TableBuilder, one, preimage_accessor
from .clamped_cubic import offset_period


def chi(case: ExplicitCase) -> np.ndarray:
    m = case.m
    table = TableBuilder(m + 2, m + 2, case.partitions.q + 1)
    for k in range(m + 2):
        table.put(2 * k + 1, k, k, 1.0)
    for k in range(m + 1):
        table.put(2 * k + 2, k, k + 1, 0.5, mirror=True)
    return table.values


def zeta(case: ExplicitCase) -> np.ndarray:
    m = case.m
    parts = case.partitions
    d, D = case.d, case.D
    table = TableBuilder(parts.q + 2, parts.q + 1, parts.w + 1)

    table.put(3, 0, 0, 2 * d[0] / (5 * D[0]))
    table.put(4, 0, 0, 3 / 5)
    table.put(4, 0, 1, d[0] / (10 * D[0]))
    table.put(5, 0, 1, 3 / 10)
    table.put(5, 1, 0, 3 / 5)
    table.put(6, 1, 0, 2 * d[2] / (5 * D[1]))
    table.put(6, 1, 1, 3 / 5)
    table.put(6, 2, 0, 2 * d[1] / (5 * D[1]))

    for k in range(m + 2):
        table.put(5 * k + 7, 2 * k + 1, 2 * k + 1, d[k + 2] / D[k + 1])
        table.put(5 * k + 7, 2 * k + 2, 2 * k + 1, d[k + 1] / D[k + 1])
    for k in range(m + 1):
        table.put(5 * k + 8, 2 * k + 1, 2 * k + 2, 2 * d[k + 2] / (5 * D[k + 1]))
        table.put(5 * k + 8, 2 * k + 2, 2 * k + 1, 3 / 5)
        table.put(5 * k + 8, 2 * k + 2, 2 * k + 2, 2 * d[k + 1] / (5 * D[k + 1]))

        table.put(5 * k + 9, 2 * k + 1, 2 * k + 3, d[k + 2] / (10 * D[k + 1]))
        table.put(5 * k + 9, 2 * k + 2, 2 * k + 2, 3 / 5)
        table.put(5 * k + 9, 2 * k + 2, 2 * k + 3, d[k + 1] / (10 * D[k + 1]))
        table.put(5 * k + 9, 2 * k + 3, 2 * k + 1, 3 / 10)

        table.put(5 * k + 10, 2 * k + 2, 2 * k + 3, 3 / 10)
        table.put(5 * k + 10, 2 * k + 3, 2 * k + 1, d[k + 3] / (10 * D[k + 2]))
        table.put(5 * k + 10, 2 * k + 3, 2 * k + 2, 3 / 5)
        table.put(5 * k + 10, 2 * k + 4, 2 * k + 1, d[k + 2] / (10 * D[k + 2]))

        table.put(5 * k + 11, 2 * k + 3, 2 * k + 2, 2 * d[k + 3] / (5 * D[k + 2]))
        table.put(5 * k + 11, 2 * k + 3, 2 * k + 3, 3 / 5)
        table.put(5 * k + 11, 2 * k + 4, 2 * k + 2, 2 * d[k + 2] / (5 * D[k + 2]))

    table.put(5 * m + 13, 2 * m + 3, 2 * m + 4, 2 * d[m + 3] / (5 * D[m + 2]))
    table.put(5 * m + 13, 2 * m + 4, 2 * m + 3, 3 / 5)
    table.put(5 * m + 13, 2 * m + 4, 2 * m + 4, 2 * d[m + 2] / (5 * D[m + 2]))
    table.put(5 * m + 14, 2 * m + 4, 2 * m + 4, 3 / 5)
    table.put(5 * m + 14, 2 * m + 5, 2 * m + 3, 3 / 10)
    table.put(5 * m + 15, 2 * m + 5, 2 * m + 3, d[m + 4] / (10 * D[m + 3]))
    table.put(5 * m + 15, 2 * m + 5, 2 * m + 4, 3 / 5)
    table.put(5 * m + 16, 2 * m + 5, 2 * m + 4, 2 * d[m + 4] / (5 * D[m + 3]))
    return table.values


def hodograph(case: ExplicitCase, z: np.ndarray, mul: Callable[[complex, complex], complex]) -> np.ndarray:
    """p_0 = p_{2m+4} = 0, p_{2k+1} = z_k^2, p_{2k+2} = z_k z_{k+1}."""
    m = case.m
    zk = preimage_accessor(z)
    out = np.zeros(2 * m + 5, dtype=complex)
    for k in range(m + 2):
        out[2 * k + 1] = mul(zk(k), zk(k))
    for k in range(m + 1):
        out[2 * k + 2] = mul(zk(k), zk(k + 1))
    return out


def span_weights(case: ExplicitCase) -> np.ndarray:
    m, d = case.m, case.d
    w = np.zeros(2 * m + 5)
    w[0] = d[1]
    for i in range(m + 2):
        w[2 * i + 1] = d[i + 1] + d[i + 2]
    for i in range(m + 1):
        w[2 * i + 2] = d[i + 2]
    w[2 * m + 4] = d[m + 3]
    return w


def total_length(case: ExplicitCase, l: np.ndarray) -> float:
    """L = l_{2m+3} + (l_{2m+4} - l_{2m+3} - l_2) N_{2,rho}(t_1), where N_{2,rho}(t_1) = d_1 / D_1."""
    m = case.m
    alpha = case.d[1] / case.D[1]
    return float(l[2 * m + 3] + (l[2 * m + 4] - l[2 * m + 3] - l[2]) * alpha)


def offset_terms(case: ExplicitCase) -> OffsetBuilder:
    """gamma_0..gamma_{5m+19}; the first four and last four vanish since sigma_0 = sigma_{2m+4} = 0."""
    m, d, D = case.m, case.d, case.D
    terms = OffsetBuilder(case.partitions.w + 1)
    terms.add(4, d[0] / (10 * D[0]), one(0), one(1))
    terms.add(5, 3 / 10, one(0), one(1))
    terms.add(6, 3 / 5, one(1), one(1))
    for k in range(m + 2):
        offset_period(terms, d, 5 * k + 7, 2 * k + 1, k + 1, full=k < m + 1)
    terms.add(5 * m + 13, 3 / 5, one(2 * m + 4), one(2 * m + 3))
    terms.add(5 * m + 14, 3 / 10, one(2 * m + 5), one(2 * m + 3))
    terms.add(5 * m + 15, d[m + 4] / (10 * D[m + 3]), one(2 * m + 5), one(2 * m + 3))
    return terms
