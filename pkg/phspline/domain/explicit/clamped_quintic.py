"""Clamped quintic PH B-splines: degree-2 preimage over <0>^3 < t_3 < ... < <t_{m+1}>^3."""

from __future__ import annotations

from typing import Callable

import numpy as np

from .case import ExplicitCase, OffsetBuilder, TableBuilder, lerp, one, preimage_accessor, quad


def chi(case: ExplicitCase) -> np.ndarray:
    m, d = case.m, case.d
    table = TableBuilder(m + 1, m + 1, case.partitions.q + 1)
    table.put(0, 0, 0, 1.0)
    table.put(1, 0, 1, 0.5, mirror=True)
    for k in range(1, m):
        P = (d[k - 1] + d[k]) * (d[k] + d[k + 1])
        table.put(3 * k - 1, k - 1, k, d[k] * d[k + 1] / (6 * P), mirror=True)
        table.put(3 * k - 1, k - 1, k + 1, d[k] ** 2 / (6 * P), mirror=True)
        table.put(3 * k - 1, k, k, 2 / 3 + d[k - 1] * d[k + 1] / (3 * P))
        table.put(3 * k - 1, k, k + 1, d[k - 1] * d[k] / (6 * P), mirror=True)
    for k in range(1, m - 1):
        S = d[k] + d[k + 1]
        table.put(3 * k, k, k, d[k + 1] / S)
        table.put(3 * k, k, k + 1, d[k] / (2 * S), mirror=True)
        table.put(3 * k + 1, k, k + 1, d[k + 1] / (2 * S), mirror=True)
        table.put(3 * k + 1, k + 1, k + 1, d[k] / S)
    table.put(3 * m - 3, m - 1, m, 0.5, mirror=True)
    table.put(3 * m - 2, m, m, 1.0)
    return table.values


def zeta(case: ExplicitCase) -> np.ndarray:
    m = case.m
    parts = case.partitions
    d, D = case.d, case.D
    table = TableBuilder(parts.q + 2, parts.q + 1, parts.w + 1)
    for k in range(m):
        a, b, S = d[k], d[k + 1], D[k] ** 2
        table.put(8 * k, 3 * k, 3 * k, b**2 / S)
        table.put(8 * k, 3 * k + 1, 3 * k, 13 * a * b / (9 * S))
        table.put(8 * k, 3 * k + 2, 3 * k, 4 * a**2 / (9 * S))
        table.put(8 * k, 3 * k, 3 * k + 1, 5 * a * b / (9 * S))
        table.put(8 * k, 3 * k + 1, 3 * k + 1, 5 * a**2 / (9 * S))

        table.put(8 * k + 1, 3 * k + 1, 3 * k, 5 * b**2 / (9 * S))
        table.put(8 * k + 1, 3 * k + 2, 3 * k, 5 * a * b / (9 * S))
        table.put(8 * k + 1, 3 * k + 1, 3 * k + 1, 13 * a * b / (9 * S))
        table.put(8 * k + 1, 3 * k + 2, 3 * k + 1, a**2 / S)
        table.put(8 * k + 1, 3 * k, 3 * k + 1, 4 * b**2 / (9 * S))

    for k in range(m - 1):
        d0, d1, d2 = d[k], d[k + 1], d[k + 2]
        D0, D1 = D[k], D[k + 1]

        table.put(8 * k + 2, 3 * k, 3 * k + 2, d1**2 / (6 * D0**2))
        table.put(8 * k + 2, 3 * k + 1, 3 * k + 2, d0 * d1 / (3 * D0**2))
        table.put(8 * k + 2, 3 * k + 2, 3 * k + 2, d0**2 / (6 * D0**2))
        table.put(8 * k + 2, 3 * k + 1, 3 * k + 1, 5 * d1 / (9 * D0))
        table.put(8 * k + 2, 3 * k + 2, 3 * k + 1, 15 * d0 / (18 * D0))
        table.put(8 * k + 2, 3 * k + 2, 3 * k, 5 * d1 / (18 * D0))

        table.put(8 * k + 3, 3 * k, 3 * k + 3, d1**2 / (21 * D0**2))
        table.put(8 * k + 3, 3 * k + 1, 3 * k + 3, 2 * d0 * d1 / (21 * D0**2))
        table.put(8 * k + 3, 3 * k + 2, 3 * k + 3, d0**2 / (21 * D0**2))
        table.put(8 * k + 3, 3 * k + 1, 3 * k + 2, 5 * d1 / (14 * D0))
        table.put(8 * k + 3, 3 * k + 2, 3 * k + 2, 5 * d0 / (14 * D0))
        table.put(8 * k + 3, 3 * k + 2, 3 * k + 1, 10 / 21)
        table.put(8 * k + 3, 3 * k + 3, 3 * k + 1, 5 * d0 / (42 * D0))
        table.put(8 * k + 3, 3 * k + 3, 3 * k, 5 * d1 / (42 * D0))

        c = 126 * D0**2 * D1
        table.put(8 * k + 4, 3 * k, 3 * k + 4, d1**3 / c)
        table.put(8 * k + 4, 3 * k + 1, 3 * k + 4, 2 * d0 * d1**2 / c)
        table.put(8 * k + 4, 3 * k + 2, 3 * k + 4, d0**2 * d1 / c)
        table.put(8 * k + 4, 3 * k, 3 * k + 3, d1**2 * d2 / c)
        table.put(8 * k + 4, 3 * k + 1, 3 * k + 3, 2 * d0 * d1 * d2 / c + 10 * d1 / (63 * D0))
        table.put(8 * k + 4, 3 * k + 2, 3 * k + 3, d0**2 * d2 / c + 10 * d0 / (63 * D0))
        table.put(8 * k + 4, 3 * k + 2, 3 * k + 2, 10 / 21)
        table.put(8 * k + 4, 3 * k + 3, 3 * k + 1, 5 * d0 * d2 / (126 * D0 * D1) + 20 / 63)
        table.put(8 * k + 4, 3 * k + 4, 3 * k + 1, 5 * d0 * d1 / (126 * D0 * D1))
        table.put(8 * k + 4, 3 * k + 3, 3 * k, 5 * d1 * d2 / (126 * D0 * D1))
        table.put(8 * k + 4, 3 * k + 4, 3 * k, 5 * d1**2 / (126 * D0 * D1))

        table.put(8 * k + 5, 3 * k + 1, 3 * k + 4, 5 * d1**2 / (126 * D0 * D1))
        table.put(8 * k + 5, 3 * k + 2, 3 * k + 4, 5 * d0 * d1 / (126 * D0 * D1))
        table.put(8 * k + 5, 3 * k + 1, 3 * k + 3, 5 * d1 * d2 / (126 * D0 * D1))
        table.put(8 * k + 5, 3 * k + 2, 3 * k + 3, 5 * d0 * d2 / (126 * D0 * D1) + 20 / 63)
        table.put(8 * k + 5, 3 * k + 3, 3 * k + 2, 10 / 21)
        c = 126 * D0 * D1**2
        table.put(8 * k + 5, 3 * k + 3, 3 * k + 1, d0 * d2**2 / c + 10 * d2 / (63 * D1))
        table.put(8 * k + 5, 3 * k + 4, 3 * k + 1, 2 * d0 * d1 * d2 / c + 10 * d1 / (63 * D1))
        table.put(8 * k + 5, 3 * k + 5, 3 * k + 1, d0 * d1**2 / c)
        table.put(8 * k + 5, 3 * k + 3, 3 * k, d1 * d2**2 / c)
        table.put(8 * k + 5, 3 * k + 4, 3 * k, 2 * d1**2 * d2 / c)
        table.put(8 * k + 5, 3 * k + 5, 3 * k, d1**3 / c)

        table.put(8 * k + 6, 3 * k + 2, 3 * k + 4, 5 * d1 / (42 * D1))
        table.put(8 * k + 6, 3 * k + 2, 3 * k + 3, 5 * d2 / (42 * D1))
        table.put(8 * k + 6, 3 * k + 3, 3 * k + 3, 10 / 21)
        table.put(8 * k + 6, 3 * k + 4, 3 * k + 2, 5 * d1 / (14 * D1))
        table.put(8 * k + 6, 3 * k + 3, 3 * k + 2, 5 * d2 / (14 * D1))
        table.put(8 * k + 6, 3 * k + 3, 3 * k + 1, d2**2 / (21 * D1**2))
        table.put(8 * k + 6, 3 * k + 4, 3 * k + 1, 2 * d1 * d2 / (21 * D1**2))
        table.put(8 * k + 6, 3 * k + 5, 3 * k + 1, d1**2 / (21 * D1**2))

        table.put(8 * k + 7, 3 * k + 3, 3 * k + 4, 5 * d1 / (18 * D1))
        table.put(8 * k + 7, 3 * k + 3, 3 * k + 3, 15 * d2 / (18 * D1))
        table.put(8 * k + 7, 3 * k + 4, 3 * k + 3, 5 * d1 / (9 * D1))
        table.put(8 * k + 7, 3 * k + 3, 3 * k + 2, d2**2 / (6 * D1**2))
        table.put(8 * k + 7, 3 * k + 4, 3 * k + 2, d1 * d2 / (3 * D1**2))
        table.put(8 * k + 7, 3 * k + 5, 3 * k + 2, d1**2 / (6 * D1**2))
    return table.values


def hodograph(case: ExplicitCase, z: np.ndarray, mul: Callable[[complex, complex], complex]) -> np.ndarray:
    m, d = case.m, case.d
    zk = preimage_accessor(z)
    out = np.zeros(3 * m - 1, dtype=complex)
    out[0] = mul(zk(0), zk(0))
    out[1] = mul(zk(0), zk(1))
    for k in range(1, m):
        left = (d[k] * zk(k - 1) + d[k - 1] * zk(k)) / (d[k - 1] + d[k])
        right = (d[k + 1] * zk(k) + d[k] * zk(k + 1)) / (d[k] + d[k + 1])
        out[3 * k - 1] = 2 / 3 * mul(zk(k), zk(k)) + 1 / 3 * mul(left, right)
    for k in range(1, m - 1):
        blend = (d[k + 1] * zk(k) + d[k] * zk(k + 1)) / (d[k] + d[k + 1])
        out[3 * k] = mul(zk(k), blend)
        out[3 * k + 1] = mul(zk(k + 1), blend)
    out[3 * m - 3] = mul(zk(m - 1), zk(m))
    out[3 * m - 2] = mul(zk(m), zk(m))
    return out


def span_weights(case: ExplicitCase) -> np.ndarray:
    m, d = case.m, case.d
    w = np.zeros(3 * m - 1)
    for i in range(m):
        w[3 * i] = w[3 * i + 1] = d[i] + d[i + 1]
    for i in range(1, m):
        w[3 * i - 1] = d[i]
    return w


def total_length(case: ExplicitCase, l: np.ndarray) -> float:
    return float(l[3 * case.m - 1])


def offset_period(terms: OffsetBuilder, d: np.ndarray, g: int, i: int, e: int, full: bool = True) -> None:
    """
    Offset entries g..g+7 of one segment: i indexes r and sigma, e indexes d.
    Only entries g and g+1 when ``full`` is false.
    """
    a, b = d[e], d[e + 1]
    blend, inner, square = lerp(i, a, b), lerp(i + 1, a, b), quad(i, a, b)
    terms.add(g, 4 / 9, square, one(i))
    terms.add(g, 5 / 9, blend, blend)
    terms.add(g + 1, 5 / 9, inner, blend)
    terms.add(g + 1, 4 / 9, square, one(i + 1))
    if not full:
        return
    c = d[e + 2]
    ahead, ahead_square = lerp(i + 3, b, c), quad(i + 3, b, c)
    terms.add(g + 2, 5 / 18, one(i + 2), blend)
    terms.add(g + 2, 5 / 9, inner, one(i + 1))
    terms.add(g + 2, 1 / 6, square, one(i + 2))

    terms.add(g + 3, 5 / 42, one(i + 3), blend)
    terms.add(g + 3, 10 / 21, one(i + 2), one(i + 1))
    terms.add(g + 3, 5 / 14, inner, one(i + 2))
    terms.add(g + 3, 1 / 21, square, one(i + 3))

    terms.add(g + 4, 5 / 126, ahead, blend)
    terms.add(g + 4, 20 / 63, one(i + 3), one(i + 1))
    terms.add(g + 4, 10 / 21, one(i + 2), one(i + 2))
    terms.add(g + 4, 10 / 63, inner, one(i + 3))
    terms.add(g + 4, 1 / 126, square, ahead)

    terms.add(g + 5, 1 / 126, ahead_square, blend)
    terms.add(g + 5, 10 / 63, ahead, one(i + 1))
    terms.add(g + 5, 10 / 21, one(i + 3), one(i + 2))
    terms.add(g + 5, 20 / 63, one(i + 2), one(i + 3))
    terms.add(g + 5, 5 / 126, inner, ahead)

    terms.add(g + 6, 1 / 21, ahead_square, one(i + 1))
    terms.add(g + 6, 5 / 14, ahead, one(i + 2))
    terms.add(g + 6, 10 / 21, one(i + 3), one(i + 3))
    terms.add(g + 6, 5 / 42, one(i + 2), ahead)

    terms.add(g + 7, 1 / 6, ahead_square, one(i + 2))
    terms.add(g + 7, 5 / 9, ahead, one(i + 3))
    terms.add(g + 7, 5 / 18, one(i + 3), ahead)


def offset_terms(case: ExplicitCase) -> OffsetBuilder:
    """gamma_0..gamma_{8m-7} and q_0..q_{8m-7}, with d_0 = d_m = 0."""
    m = case.m
    terms = OffsetBuilder(case.partitions.w + 1)
    for k in range(m):
        offset_period(terms, case.d, 8 * k, 3 * k, k, full=k < m - 1)
    return terms
