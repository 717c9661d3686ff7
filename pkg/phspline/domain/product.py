"""
Products of B-spline bases.

N_i N_j over mu is re-expanded on nu (chi), and N_{i,rho} N_{j,nu} on tau (zeta),
by solving Gramian systems ``A x = b``. Inner products are computed with
per-span Gauss-Legendre quadrature, which is exact for these piecewise
polynomial integrands. The symmetric positive definite banded Gramians are
factored once with LAPACK's banded Cholesky.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.linalg import LinAlgError, cho_solve_banded
from scipy.linalg import cholesky_banded as _lapack_cholesky_banded

from ..common.errors import NotPositiveDefinite, ShapeMismatch
from ..common.settings import numerics
from .bspline import basis_matrix
from .knots import KnotVector, PartitionSet

logger = logging.getLogger(__name__)


def gauss_nodes(breaks: Iterable[float], npts: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Gauss-Legendre nodes and weights on every positive-length span of ``breaks``.

    ``npts`` nodes integrate polynomials up to degree ``2 * npts - 1`` exactly.
    """
    points = np.unique(np.asarray(list(breaks), dtype=float))
    ref_x, ref_w = leggauss(max(int(npts), 1))
    lo, hi = points[:-1], points[1:]
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    nodes = (mid[:, None] + half[:, None] * ref_x[None, :]).ravel()
    weights = (half[:, None] * ref_w[None, :]).ravel()
    return nodes, weights


def _node_count(*degrees: int) -> int:
    return (sum(degrees) + 2) // 2


@dataclass(frozen=True, eq=False)
class BandedSymMatrix:
    """
    Symmetric banded matrix in LAPACK lower storage: ``bands[r, j] = a[j + r, j]``.
    """

    dim: int
    bandwidth: int
    bands: np.ndarray

    def __post_init__(self) -> None:
        if self.bands.shape != (self.bandwidth + 1, self.dim):
            raise ShapeMismatch(
                f"bands of shape {self.bands.shape} do not match dim={self.dim}, bandwidth={self.bandwidth}"
            )

    @classmethod
    def from_dense(cls, a: np.ndarray, bandwidth: int) -> "BandedSymMatrix":
        a = np.asarray(a, dtype=float)
        dim = a.shape[0]
        bands = np.zeros((bandwidth + 1, dim))
        for r in range(bandwidth + 1):
            bands[r, : dim - r] = np.diagonal(a, -r)
        return cls(dim, bandwidth, bands)

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.dim, self.dim))
        for r in range(self.bandwidth + 1):
            diag = self.bands[r, : self.dim - r]
            out += np.diag(diag, -r)
            if r:
                out += np.diag(diag, r)
        return out


@dataclass(frozen=True, eq=False)
class BandedFactor:
    """Lower banded Cholesky factor L with ``A = L L^T``, same storage as ``BandedSymMatrix``."""

    dim: int
    bandwidth: int
    bands: np.ndarray

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.dim, self.dim))
        for r in range(self.bandwidth + 1):
            out += np.diag(self.bands[r, : self.dim - r], -r)
        return out

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        """Solve ``L y = b`` then ``L^T x = y``."""
        return cho_solve_banded((self.bands, True), rhs, check_finite=False)


@dataclass(frozen=True, eq=False)
class ProductTensor:
    """
    Coefficients ``values[i, j, k]`` such that the product of the i-th and j-th
    factor basis functions equals ``sum_k values[i, j, k] N_k``.
    """

    values: np.ndarray
    symmetric: bool = False

    @property
    def shape(self) -> Tuple[int, int, int]:
        return tuple(self.values.shape)  # type: ignore[return-value]

    def entry(self, i: int, j: int, k: int) -> float:
        return float(self.values[i, j, k])

    def triples(self) -> List[Tuple[int, int, int, float]]:
        """Non-zero entries as ``(i, j, k, value)`` sorted by k, then i, then j."""
        idx = np.argwhere(self.values != 0.0)
        order = np.lexsort((idx[:, 1], idx[:, 0], idx[:, 2])) if idx.size else []
        return [(int(i), int(j), int(k), float(self.values[i, j, k])) for i, j, k in idx[order]]

    def contract(self, left: np.ndarray, right: np.ndarray) -> np.ndarray:
        """``sum_{i,j} left_i right_j values[i, j, k]`` for every k."""
        return np.einsum("i,j,ijk->k", left, right, self.values)

    def to_dict(self) -> dict:
        return {"shape": list(self.shape), "entries": [list(t) for t in self.triples()]}


def inner_product(
    kv_a: KnotVector, deg_a: int, i_a: int, kv_b: KnotVector, deg_b: int, i_b: int
) -> float:
    """Exact integral of N_{i_a}^{deg_a}(kv_a) * N_{i_b}^{deg_b}(kv_b)."""
    breaks = np.union1d(kv_a.values, kv_b.values)
    nodes, weights = gauss_nodes(breaks, _node_count(deg_a, deg_b))
    fa = basis_matrix(kv_a, deg_a, nodes)[:, i_a]
    fb = basis_matrix(kv_b, deg_b, nodes)[:, i_b]
    return float(np.sum(weights * fa * fb))


def assemble_gramian(kv: KnotVector, degree: int) -> BandedSymMatrix:
    """Gramian ``a[k, l] = <N_k, N_l>`` over the full knot range, bandwidth ``degree``."""
    nodes, weights = gauss_nodes(kv.values, _node_count(degree, degree))
    basis = basis_matrix(kv, degree, nodes)
    dense = basis.T @ (weights[:, None] * basis)
    return BandedSymMatrix.from_dense(dense, degree)


def cholesky_banded(a: BandedSymMatrix) -> BandedFactor:
    """Banded Cholesky ``A = L L^T``; raises ``NotPositiveDefinite`` on a non-positive pivot."""
    try:
        bands = _lapack_cholesky_banded(a.bands, lower=True, check_finite=True)
    except (LinAlgError, ValueError) as exc:
        raise NotPositiveDefinite(f"banded Cholesky failed: {exc}") from exc
    return BandedFactor(a.dim, a.bandwidth, bands)


def _expand_products(
    target: KnotVector,
    target_degree: int,
    target_basis: np.ndarray,
    left: np.ndarray,
    right: np.ndarray,
    weights: np.ndarray,
    threshold: float,
    label: str,
) -> np.ndarray:
    """
    Solve ``A x^{i,j} = b^{i,j}`` for all pairs against one factorization.

    ``left``, ``right`` and ``target_basis`` are basis values at the shared
    quadrature nodes.
    """
    gram = assemble_gramian(target, target_degree)
    factor = cholesky_banded(gram)
    rhs = np.einsum("s,si,sj,sl->lij", weights, left, right, target_basis)
    dim, ni, nj = rhs.shape
    solution = factor.solve(rhs.reshape(dim, ni * nj)).reshape(dim, ni, nj)
    values = np.ascontiguousarray(solution.transpose(1, 2, 0))
    col_max = np.max(np.abs(values), axis=2, keepdims=True)
    values[np.abs(values) < threshold * col_max] = 0.0
    logger.debug(
        json.dumps(
            {
                "event": "products_expanded",
                "tensor": label,
                "dim": dim,
                "pairs": ni * nj,
                "nonzero": int(np.count_nonzero(values)),
            }
        )
    )
    return values


def solve_chi(partitions: PartitionSet, threshold: Optional[float] = None) -> ProductTensor:
    """chi^{i,j}_k with N_{i,mu}^n N_{j,mu}^n = sum_k chi^{i,j}_k N_{k,nu}^{2n}."""
    n = partitions.n
    thr = numerics.product_threshold if threshold is None else threshold
    nodes, weights = gauss_nodes(partitions.nu.values, _node_count(n, n, 2 * n))
    b_mu = basis_matrix(partitions.mu, n, nodes)
    b_nu = basis_matrix(partitions.nu, 2 * n, nodes)
    values = _expand_products(partitions.nu, 2 * n, b_nu, b_mu, b_mu, weights, thr, "chi")
    lower_i, lower_j = np.tril_indices(values.shape[0], -1)
    values[lower_j, lower_i] = values[lower_i, lower_j]
    return ProductTensor(values, symmetric=True)


def solve_zeta(partitions: PartitionSet, threshold: Optional[float] = None) -> ProductTensor:
    """zeta^{i,j}_k with N_{i,rho}^{2n+1} N_{j,nu}^{2n} = sum_k zeta^{i,j}_k N_{k,tau}^{4n+1}."""
    n = partitions.n
    thr = numerics.product_threshold if threshold is None else threshold
    nodes, weights = gauss_nodes(partitions.tau.values, _node_count(2 * n + 1, 2 * n, 4 * n + 1))
    b_rho = basis_matrix(partitions.rho, 2 * n + 1, nodes)
    b_nu = basis_matrix(partitions.nu, 2 * n, nodes)
    b_tau = basis_matrix(partitions.tau, 4 * n + 1, nodes)
    values = _expand_products(partitions.tau, 4 * n + 1, b_tau, b_rho, b_nu, weights, thr, "zeta")
    return ProductTensor(values, symmetric=False)


__all__ = [
    "BandedSymMatrix",
    "BandedFactor",
    "ProductTensor",
    "gauss_nodes",
    "inner_product",
    "assemble_gramian",
    "cholesky_banded",
    "solve_chi",
    "solve_zeta",
]
