"""Vandermonde-like matrix in the normalized shifted Legendre basis, the
Lagrange-to-Legendre change of basis, mass matrices and their square-root
factors."""
from dataclasses import dataclass
from enum import Enum

import numpy as np
import scipy.linalg as sla

from .orthopoly import Family, table

__all__ = [
    "Functional",
    "MassFactor",
    "build_vandermonde",
    "lagrange_to_legendre",
    "mass_matrix",
    "cond2",
    "mass_factor",
]


class Functional(Enum):
    C = "C"
    I = "I"  # noqa: E741
    R = "R"


def _distinct(nodes) -> np.ndarray:
    x = np.asarray(getattr(nodes, "nodes", nodes), dtype=float).ravel()
    if x.size == 0:
        raise ValueError("need at least one node")
    if np.unique(x).size != x.size:
        raise ValueError("nodes must be distinct")
    return x


def build_vandermonde(nodes) -> np.ndarray:
    """V[i, nu] = Phat_nu(tau_i)."""
    x = _distinct(nodes)
    return table(Family.LegendreShiftedNormalized, x.size, x)[0]


def _pivoted_inverse(v: np.ndarray) -> np.ndarray:
    q, r, p = sla.qr(v, pivoting=True)
    d = np.abs(np.diag(r))
    if d[-1] <= v.shape[0] * np.finfo(float).eps * d[0]:
        raise np.linalg.LinAlgError("Vandermonde-like matrix singular to working precision")
    # V P = Q R  =>  V^{-1} = P R^{-1} Q^T
    x = sla.solve_triangular(r, q.T)
    out = np.empty_like(x)
    out[p] = x
    return out


def lagrange_to_legendre(nodes) -> np.ndarray:
    """Inverse of the Vandermonde-like matrix; column i holds the Legendre
    coefficients of the i-th Lagrange basis polynomial."""
    return _pivoted_inverse(build_vandermonde(nodes))


def mass_matrix(nodes) -> np.ndarray:
    a = lagrange_to_legendre(nodes)
    lr = a.T @ a
    return 0.5 * (lr + lr.T)


def cond2(matrix: np.ndarray) -> float:
    """Spectral condition number; +inf when numerically singular."""
    a = np.asarray(matrix, dtype=float)
    if not np.all(np.isfinite(a)):
        return np.inf
    s = np.linalg.svd(a, compute_uv=False)
    if s[-1] <= max(a.shape) * np.finfo(float).eps * s[0]:
        return np.inf
    return float(s[0] / s[-1])


@dataclass(frozen=True)
class MassFactor:
    functional: Functional
    factor: np.ndarray
    nodes: object

    @property
    def matrix(self) -> np.ndarray:
        return self.factor.T @ self.factor


def mass_factor(nodes, functional) -> MassFactor:
    """Square-root factor Lhat with L = Lhat^T Lhat for functional C, I or R."""
    f = Functional(functional.value if isinstance(functional, Enum) else functional)
    x = _distinct(nodes)
    M = x.size
    if f is Functional.C:
        lhat = np.eye(M) / np.sqrt(M)
    elif f is Functional.I:
        w = getattr(nodes, "weights", None)
        if w is None:
            w = lagrange_to_legendre(x)[0]
        w = np.asarray(w, dtype=float)
        if np.any(w <= 0.0):
            raise ValueError("functional I needs positive quadrature weights; "
                             "this node set has a nonpositive weight")
        lhat = np.diag(np.sqrt(w))
    else:
        lhat = lagrange_to_legendre(x)
    return MassFactor(f, lhat, nodes)
