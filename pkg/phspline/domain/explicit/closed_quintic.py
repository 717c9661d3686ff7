"""
Closed quintic PH B-splines: degree-2 preimage over 0 = t_0 < t_1 < ... < t_{m+5}.

The first and last few entries of every table are the repeating pattern
clipped to the existing basis functions, so each pattern is run one period
past both ends and out-of-range entries are dropped.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .case import ExplicitCase, OffsetBuilder, TableBuilder, one, preimage_accessor
from .clamped_quintic import offset_period


def chi(case: ExplicitCase) -> np.ndarray:
    m, d = case.m, case.d
    table = TableBuilder(m + 3, m + 3, case.partitions.q + 1)
    for k in range(m + 4):
        a, b, c = d[k], d[k + 1], d[k + 2]
        P = (a + b) * (b + c)
        table.put(3 * k, k - 2, k - 1, b * c / (6 * P), mirror=True)
        table.put(3 * k, k - 2, k, b**2 / (6 * P), mirror=True)
        table.put(3 * k, k - 1, k - 1, 2 / 3 + a * c / (3 * P))
        table.put(3 * k, k - 1, k, a * b / (6 * P), mirror=True)

        S = b + c
        table.put(3 * k + 1, k - 1, k - 1, c / S)
        table.put(3 * k + 1, k - 1, k, b / (2 * S), mirror=True)
        table.put(3 * k + 2, k - 1, k, c / (2 * S), mirror=True)
        table.put(3 * k + 2, k, k, b / S)
    return table.values


def zeta(case: ExplicitCase) -> np.ndarray:
    m = case.m
    parts = case.partitions
    d, D = case.d, case.D
    table = TableBuilder(parts.q + 2, parts.q + 1, parts.w + 1)
    for k in range(-1, m + 4):
        i = 3 * k
        a, b = d[k + 1], d[k + 2]
        D1 = D[k + 1]
        S = D1**2
        table.put(8 * k + 11, i + 1, i + 1, b**2 / S)
        table.put(8 * k + 11, i + 1, i + 2, 5 * a * b / (9 * S))
        table.put(8 * k + 11, i + 2, i + 1, 13 * a * b / (9 * S))
        table.put(8 * k + 11, i + 2, i + 2, 5 * a**2 / (9 * S))
        table.put(8 * k + 11, i + 3, i + 1, 4 * a**2 / (9 * S))

        table.put(8 * k + 12, i + 1, i + 2, 4 * b**2 / (9 * S))
        table.put(8 * k + 12, i + 2, i + 1, 5 * b**2 / (9 * S))
        table.put(8 * k + 12, i + 2, i + 2, 13 * a * b / (9 * S))
        table.put(8 * k + 12, i + 3, i + 1, 5 * a * b / (9 * S))
        table.put(8 * k + 12, i + 3, i + 2, a**2 / S)

        table.put(8 * k + 13, i + 1, i + 3, b**2 / (6 * S))
        table.put(8 * k + 13, i + 2, i + 2, 5 * b / (9 * D1))
        table.put(8 * k + 13, i + 2, i + 3, a * b / (3 * S))
        table.put(8 * k + 13, i + 3, i + 1, 5 * b / (18 * D1))
        table.put(8 * k + 13, i + 3, i + 2, 15 * a / (18 * D1))
        table.put(8 * k + 13, i + 3, i + 3, a**2 / (6 * S))

        table.put(8 * k + 14, i + 1, i + 4, b**2 / (21 * S))
        table.put(8 * k + 14, i + 2, i + 3, 5 * b / (14 * D1))
        table.put(8 * k + 14, i + 2, i + 4, 2 * a * b / (21 * S))
        table.put(8 * k + 14, i + 3, i + 2, 10 / 21)
        table.put(8 * k + 14, i + 3, i + 3, 5 * a / (14 * D1))
        table.put(8 * k + 14, i + 3, i + 4, a**2 / (21 * S))
        table.put(8 * k + 14, i + 4, i + 1, 5 * b / (42 * D1))
        table.put(8 * k + 14, i + 4, i + 2, 5 * a / (42 * D1))

        c = d[k + 3]
        D2 = D[k + 2]
        e = 126 * D1**2 * D2
        table.put(8 * k + 15, i + 1, i + 4, b**2 * c / e)
        table.put(8 * k + 15, i + 1, i + 5, b**3 / e)
        table.put(8 * k + 15, i + 2, i + 4, 2 * a * b * c / e + 10 * b / (63 * D1))
        table.put(8 * k + 15, i + 2, i + 5, 2 * a * b**2 / e)
        table.put(8 * k + 15, i + 3, i + 3, 10 / 21)
        table.put(8 * k + 15, i + 3, i + 4, a**2 * c / e + 10 * a / (63 * D1))
        table.put(8 * k + 15, i + 3, i + 5, a**2 * b / e)
        table.put(8 * k + 15, i + 4, i + 1, 5 * b * c / (126 * D1 * D2))
        table.put(8 * k + 15, i + 4, i + 2, 5 * a * c / (126 * D1 * D2) + 20 / 63)
        table.put(8 * k + 15, i + 5, i + 1, 5 * b**2 / (126 * D1 * D2))
        table.put(8 * k + 15, i + 5, i + 2, 5 * a * b / (126 * D1 * D2))

        e = 126 * D1 * D2**2
        table.put(8 * k + 16, i + 2, i + 4, 5 * b * c / (126 * D1 * D2))
        table.put(8 * k + 16, i + 2, i + 5, 5 * b**2 / (126 * D1 * D2))
        table.put(8 * k + 16, i + 3, i + 4, 5 * a * c / (126 * D1 * D2) + 20 / 63)
        table.put(8 * k + 16, i + 3, i + 5, 5 * a * b / (126 * D1 * D2))
        table.put(8 * k + 16, i + 4, i + 1, b * c**2 / e)
        table.put(8 * k + 16, i + 4, i + 2, a * c**2 / e + 10 * c / (63 * D2))
        table.put(8 * k + 16, i + 4, i + 3, 10 / 21)
        table.put(8 * k + 16, i + 5, i + 1, 2 * b**2 * c / e)
        table.put(8 * k + 16, i + 5, i + 2, 2 * a * b * c / e + 10 * b / (63 * D2))
        table.put(8 * k + 16, i + 6, i + 1, b**3 / e)
        table.put(8 * k + 16, i + 6, i + 2, a * b**2 / e)

        table.put(8 * k + 17, i + 3, i + 4, 5 * c / (42 * D2))
        table.put(8 * k + 17, i + 3, i + 5, 5 * b / (42 * D2))
        table.put(8 * k + 17, i + 4, i + 2, c**2 / (21 * D2**2))
        table.put(8 * k + 17, i + 4, i + 3, 5 * c / (14 * D2))
        table.put(8 * k + 17, i + 4, i + 4, 10 / 21)
        table.put(8 * k + 17, i + 5, i + 2, 2 * b * c / (21 * D2**2))
        table.put(8 * k + 17, i + 5, i + 3, 5 * b / (14 * D2))
        table.put(8 * k + 17, i + 6, i + 2, b**2 / (21 * D2**2))

        table.put(8 * k + 18, i + 4, i + 3, c**2 / (6 * D2**2))
        table.put(8 * k + 18, i + 4, i + 4, 15 * c / (18 * D2))
        table.put(8 * k + 18, i + 4, i + 5, 5 * b / (18 * D2))
        table.put(8 * k + 18, i + 5, i + 3, b * c / (3 * D2**2))
        table.put(8 * k + 18, i + 5, i + 4, 5 * b / (9 * D2))
        table.put(8 * k + 18, i + 6, i + 3, b**2 / (6 * D2**2))
    return table.values


def hodograph(case: ExplicitCase, z: np.ndarray, mul: Callable[[complex, complex], complex]) -> np.ndarray:
    """
    p_{3k}   = 2/3 z_{k-1}^2 + 1/3 A_k B_k
    p_{3k+1} = z_{k-1} B_k
    p_{3k+2} = z_k B_k

    with A_k = (d_{k+1} z_{k-2} + d_k z_{k-1}) / D_k and
    B_k = (d_{k+2} z_{k-1} + d_{k+1} z_k) / D_{k+1}; missing z are zero.
    """
    m, d = case.m, case.d
    zk = preimage_accessor(z)
    out = np.zeros(3 * m + 13, dtype=complex)
    for k in range(m + 4):
        left = (d[k + 1] * zk(k - 2) + d[k] * zk(k - 1)) / (d[k] + d[k + 1])
        blend = (d[k + 2] * zk(k - 1) + d[k + 1] * zk(k)) / (d[k + 1] + d[k + 2])
        out[3 * k] = 2 / 3 * mul(zk(k - 1), zk(k - 1)) + 1 / 3 * mul(left, blend)
        out[3 * k + 1] = mul(zk(k - 1), blend)
        out[3 * k + 2] = mul(zk(k), blend)
    return out


def span_weights(case: ExplicitCase) -> np.ndarray:
    m, d = case.m, case.d
    w = np.zeros(3 * m + 13)
    for i in range(m + 5):
        w[3 * i] = d[i + 1]
        if 3 * i + 2 < w.size:
            w[3 * i + 1] = w[3 * i + 2] = d[i + 1] + d[i + 2]
    return w


def total_length(case: ExplicitCase, l: np.ndarray) -> float:
    """L = sum_k (l_{3m+7+k} - l_{4+k}) B^2_k(alpha) with alpha = d_2 / D_2."""
    m = case.m
    alpha = case.d[2] / case.D[2]
    bern = np.array([(1 - alpha) ** 2, 2 * alpha * (1 - alpha), alpha**2])
    return float(sum((l[3 * m + 7 + k] - l[4 + k]) * bern[k] for k in range(3)))


def offset_terms(case: ExplicitCase) -> OffsetBuilder:
    """
    gamma_0..gamma_{8m+47}; the first seven and last seven vanish since
    sigma_0 = sigma_1 = sigma_{3m+11} = sigma_{3m+12} = 0.
    """
    m, d, D = case.m, case.d, case.D
    terms = OffsetBuilder(case.partitions.w + 1)
    head, lead = d[0] / D[0], d[1] / D[1]
    terms.add(7, head**2 * lead / 126, one(0), one(2))
    terms.add(8, 5 * head * lead / 126, one(0), one(2))
    terms.add(9, 5 * lead / 42, one(0), one(2))
    terms.add(10, 5 * lead / 18, one(1), one(2))
    for k in range(m + 4):
        offset_period(terms, d, 8 * k + 11, 3 * k + 1, k + 1, full=k < m + 3)
    tail, last = d[m + 5] / D[m + 4], d[m + 6] / D[m + 5]
    s = one(3 * m + 10)
    terms.add(8 * m + 37, 5 * tail / 18, one(3 * m + 12), s)
    terms.add(8 * m + 38, 5 * tail / 42, one(3 * m + 13), s)
    terms.add(8 * m + 39, 5 * last * tail / 126, one(3 * m + 13), s)
    terms.add(8 * m + 40, last**2 * tail / 126, one(3 * m + 13), s)
    return terms
