"""
Preimages that close a curve.

Closed cubics with m <= 3 have closed-form completions. Every other closed
case is completed by a damped Gauss-Newton iteration on the closing
residuals, which are holomorphic in the unknown coefficients.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence

import numpy as np

from ...common.errors import DegenerateDiscriminant, DegenerateInput, ModeMismatch, NoConvergence, ShapeMismatch
from ...common.settings import numerics
from ..knots import Mode, PartitionSet
from ..ph_curve import closing_residuals, hodograph_coefficients
from ..product import ProductTensor, solve_chi

logger = logging.getLogger(__name__)


class Wrap(str, Enum):
    """How the preimage itself wraps around: z_{m+1+k} = +z_k or -z_k."""

    CLOSED = "z-closed"
    OPEN = "z-open"

    @property
    def sign(self) -> float:
        return 1.0 if self is Wrap.CLOSED else -1.0


@dataclass(frozen=True)
class ClosureResult:
    z: np.ndarray
    residual: float
    iterations: int

    def to_dict(self) -> dict:
        return {
            "z": [[float(c.real), float(c.imag)] for c in self.z],
            "residual": self.residual,
            "iterations": self.iterations,
        }


def _principal_sqrt(value: complex, scale: float) -> complex:
    if abs(value) <= 1e-14 * max(scale, 1e-300):
        raise DegenerateDiscriminant(f"discriminant {value!r} vanishes; the two closing solutions coincide")
    return complex(np.sqrt(complex(value)))


def _r_discriminant(d: Sequence[float], z0: complex, z1: complex, sign: float) -> complex:
    d1, d2, d3 = d[1], d[2], d[3]
    return (
        -(4 * d1 * d2 + 4 * d1 * d3 + 4 * d2 * d3 + 3 * d1**2) * z0**2
        - (4 * d1 * d2 + sign * 2 * d1 * d3 + 4 * d2 * d3) * z0 * z1
        - (4 * d1 * d2 + 4 * d1 * d3 + 4 * d2 * d3 + 3 * d3**2) * z1**2
    )


def _big_r_discriminant(d: Sequence[float], z0: complex, z1: complex, z2: complex, sign: float) -> complex:
    d1, d2, d3, d4 = d[1], d[2], d[3], d[4]
    return (
        -(4 * d1 * d2 + 4 * d1 * d4 + 4 * d2 * d4 + 3 * d1**2) * z0**2
        - (4 * d1 * d2 + 4 * d2 * d4) * z0 * z1
        + sign * 2 * d1 * d4 * z0 * z2
        - (4 * d1 * d2 + 4 * d1 * d3 + 4 * d2 * d4 + 4 * d3 * d4) * z1**2
        - (4 * d1 * d3 + 4 * d3 * d4) * z1 * z2
        - (4 * d1 * d3 + 4 * d1 * d4 + 4 * d3 * d4 + 3 * d4**2) * z2**2
    )


def closed_cubic_preimage(
    m: int, variant: Wrap | str, free: Sequence[complex], d: Sequence[float]
) -> np.ndarray:
    """
    Complete a closed cubic preimage from its first m coefficients.

    ``d`` holds the knot differences with ``d[k] = t_k - t_{k-1}``; index 0 is
    never read. Returns z_0..z_{m+1} with z_{m+1} = +z_0 (z-closed) or -z_0
    (z-open). Square roots take the principal branch.
    """
    variant = Wrap(variant)
    if m not in (1, 2, 3):
        raise DegenerateInput(f"closed-form closure exists for m = 1, 2, 3; got m={m}")
    zs = [complex(v) for v in free]
    if len(zs) != m:
        raise ShapeMismatch(f"m={m} needs {m} free coefficients, got {len(zs)}")
    if len(d) < m + 2:
        raise ShapeMismatch(f"m={m} needs knot differences d_1..d_{m + 1}")
    if abs(zs[0]) == 0.0:
        raise DegenerateInput("z_0 must be nonzero")
    z0 = zs[0]
    closed = variant is Wrap.CLOSED
    scale = float(max(d[1 : m + 2])) ** 2 * max(abs(v) for v in zs) ** 2

    if m == 1:
        d1, d2 = d[1], d[2]
        if closed:
            last = (-1 - np.sqrt(3) * 1j) / 2 * z0
        else:
            root = np.sqrt((d1 + 3 * d2) * (3 * d1 + d2))
            last = (d1 - d2 + root * 1j) / (2 * (d1 + d2)) * z0
    elif m == 2:
        d1, d3 = d[1], d[3]
        z1 = zs[1]
        if closed:
            root = _principal_sqrt(_r_discriminant(d, z0, z1, -1.0), scale)
            last = -(d1 * z0 + d3 * z1 + root) / (2 * (d1 + d3))
        else:
            root = _principal_sqrt(_r_discriminant(d, z0, z1, +1.0), scale)
            last = (d1 * z0 - d3 * z1 + root) / (2 * (d1 + d3))
    else:
        d1, d4 = d[1], d[4]
        z1, z2 = zs[1], zs[2]
        if closed:
            root = _principal_sqrt(_big_r_discriminant(d, z0, z1, z2, +1.0), scale)
            last = -(d1 * z0 + d4 * z2 + root) / (2 * (d1 + d4))
        else:
            root = _principal_sqrt(_big_r_discriminant(d, z0, z1, z2, -1.0), scale)
            last = (d1 * z0 - d4 * z2 + root) / (2 * (d1 + d4))

    out = np.array(zs + [complex(last), variant.sign * z0], dtype=complex)
    logger.debug(json.dumps({"event": "closed_cubic_preimage", "m": m, "variant": variant.value}))
    return out


def _jacobian(z: np.ndarray, unknown: Sequence[int], chi: ProductTensor, parts: PartitionSet) -> np.ndarray:
    """d residual_k / d z_u; chi is symmetric so dp_j/dz_u = 2 sum_i chi_j^{u,i} z_i."""
    cols = []
    for u in unknown:
        dp = 2.0 * np.einsum("i,ij->j", z, chi.values[u])
        cols.append(closing_residuals(dp, parts))
    return np.stack(cols, axis=1)


def closed_preimage_newton(
    z_partial: Sequence[complex],
    partitions: PartitionSet,
    unknown_indices: Sequence[int],
    chi: Optional[ProductTensor] = None,
    max_iter: Optional[int] = None,
    tol: Optional[float] = None,
) -> ClosureResult:
    """
    Solve the closing conditions for the coefficients at ``unknown_indices``.

    Any 1..n+1 distinct indices are accepted. With fewer than n+1 unknowns the
    n+1 conditions are overdetermined; when no choice of the unknowns closes
    the curve, ``NoConvergence`` carries the best least-squares iterate.
    The values of ``z_partial`` at those indices seed the iteration; non-finite
    seeds start from the preceding coefficient. Each step is a least-squares
    Gauss-Newton step halved until the residual decreases.
    """
    parts = partitions
    if parts.mode is not Mode.CLOSED:
        raise ModeMismatch("closing conditions only apply to closed partitions")
    z = np.array(z_partial, dtype=complex)
    if z.size != parts.p + 1:
        raise ShapeMismatch(f"closed degree-{parts.n} preimage needs {parts.p + 1} coefficients, got {z.size}")
    unknown: List[int] = sorted({int(u) for u in unknown_indices})
    if not unknown or unknown[0] < 0 or unknown[-1] > parts.p:
        raise ShapeMismatch(f"unknown indices must lie in 0..{parts.p}")
    if len(unknown) > parts.n + 1:
        raise ShapeMismatch(f"at most {parts.n + 1} unknowns match the {parts.n + 1} closing conditions")
    for u in unknown:
        if not np.isfinite(z[u]):
            z[u] = z[u - 1] if u > 0 and np.isfinite(z[u - 1]) else 1.0

    chi = chi if chi is not None else solve_chi(parts)
    max_iter = numerics.newton_max_iter if max_iter is None else max_iter
    tol = numerics.newton_tol if tol is None else tol

    def residual(vec: np.ndarray) -> np.ndarray:
        return closing_residuals(hodograph_coefficients(vec, chi), parts)

    f = residual(z)
    norm = float(np.max(np.abs(f)))
    best, best_norm = z.copy(), norm
    iterations = 0
    while norm > tol and iterations < max_iter:
        iterations += 1
        jac = _jacobian(z, unknown, chi, parts)
        step, *_ = np.linalg.lstsq(jac, -f, rcond=None)
        damping = 1.0
        for _ in range(30):
            trial = z.copy()
            trial[unknown] += damping * step
            f_trial = residual(trial)
            trial_norm = float(np.max(np.abs(f_trial)))
            if trial_norm < norm:
                break
            damping *= 0.5
        else:
            break
        z, f, norm = trial, f_trial, trial_norm
        if norm < best_norm:
            best, best_norm = z.copy(), norm
        logger.debug(json.dumps({"event": "closure_step", "iteration": iterations, "residual": norm}))

    if best_norm > tol:
        raise NoConvergence(
            f"closing iteration stopped at residual {best_norm:.3e} after {iterations} steps",
            best=best,
            residual=best_norm,
        )
    return ClosureResult(best, best_norm, iterations)


def close_preimage(
    z_free: Sequence[complex],
    partitions: PartitionSet,
    variant: Wrap | str = Wrap.CLOSED,
    seed: Optional[complex] = None,
    chi: Optional[ProductTensor] = None,
) -> ClosureResult:
    """
    Complete z_0..z_{m-1} to a closing preimage.

    z_{m+1..m+n} = +-z_{0..n-1} is fixed by the wrap and z_m is solved for.
    """
    parts = partitions
    variant = Wrap(variant)
    n, m = parts.n, parts.m
    free = np.asarray(z_free, dtype=complex)
    if free.size != m:
        raise ShapeMismatch(f"closed degree-{n} preimage with m={m} needs {m} free coefficients")
    z = np.empty(parts.p + 1, dtype=complex)
    z[:m] = free
    z[m] = free[-1] if seed is None else complex(seed)
    z[m + 1 :] = variant.sign * free[:n]
    return closed_preimage_newton(z, parts, [m], chi=chi)


__all__ = [
    "Wrap",
    "ClosureResult",
    "closed_cubic_preimage",
    "closed_preimage_newton",
    "close_preimage",
]
