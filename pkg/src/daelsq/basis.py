"""Reference-interval ansatz bases and their antiderivative companions.

Algebraic components use p_0..p_{N-1}; differentiated components use
pbar_0 = 1, pbar_i(rho) = int_0^rho p_{i-1}.  Every basis is stored as a
coefficient matrix over one of three families (Legendre P_nu(2 rho - 1),
Chebyshev T_nu(2 rho - 1), or monomials rho^nu).
"""
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from numpy.polynomial import polynomial as npoly

from .nodes import NodeKind, make_nodes
from .orthopoly import Family, PolySeries, antiderivative_coeffs, table
from .vandermonde import lagrange_to_legendre

__all__ = [
    "BasisKind",
    "BasisSpec",
    "eval_basis",
    "eval_antiderivative_basis",
    "scale_to_interval",
]

_SLACK = 64 * np.finfo(float).eps


class BasisKind(Enum):
    Monomial = "monomial"
    Legendre = "legendre"
    Chebyshev = "chebyshev"
    RungeKutta = "rk"


def _family_of(kind: BasisKind) -> str:
    return {BasisKind.Monomial: "monomial", BasisKind.Legendre: "legendre",
            BasisKind.Chebyshev: "chebyshev"}[kind]


def _antideriv(fam: str, c: np.ndarray) -> np.ndarray:
    """Coefficients of int_0^rho of the series c, same family."""
    if fam == "monomial":
        return np.concatenate([[0.0], c / np.arange(1, c.size + 1)])
    f = Family.Legendre if fam == "legendre" else Family.Chebyshev
    # d rho = du / 2 with u = 2 rho - 1; F(-1) = 0 pins rho = 0
    return 0.5 * antiderivative_coeffs(PolySeries(f, c)).c


def _rk_coeffs(fam: str, rho: np.ndarray) -> np.ndarray:
    """Rows: Lagrange basis polynomials on rho, expanded in `fam`."""
    N = rho.size
    if fam == "legendre":
        a = lagrange_to_legendre(rho)  # columns: coefficients over Phat
        return (a * np.sqrt(2.0 * np.arange(N) + 1.0)[:, None]).T
    if fam == "chebyshev":
        v = table(Family.Chebyshev, N, 2.0 * rho - 1.0)[0]
    else:
        v = np.vander(rho, N, increasing=True)
    return np.linalg.solve(v, np.eye(N)).T


@dataclass(frozen=True)
class BasisSpec:
    kind: BasisKind
    N: int
    interp_nodes: NodeKind = NodeKind.GaussLegendre
    representation: BasisKind = BasisKind.Legendre
    family: str = field(init=False, repr=False)
    P: np.ndarray = field(init=False, repr=False, compare=False)
    Pbar: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        kind = BasisKind(self.kind.value if isinstance(self.kind, Enum) else self.kind)
        rep = BasisKind(self.representation.value if isinstance(self.representation, Enum)
                        else self.representation)
        nk = NodeKind(self.interp_nodes.value if isinstance(self.interp_nodes, Enum)
                      else self.interp_nodes)
        if self.N < 1:
            raise ValueError("N must be positive")
        if rep is BasisKind.RungeKutta:
            raise ValueError("representation must be monomial, legendre or chebyshev")
        N = self.N
        if kind is BasisKind.RungeKutta:
            fam = _family_of(rep)
            rho = make_nodes(nk, N).nodes if N > 1 or nk is not NodeKind.UniformClosed \
                else np.array([0.5])
            P = _rk_coeffs(fam, np.asarray(rho))
        else:
            fam = _family_of(kind)
            P = np.eye(N)
            if kind is BasisKind.Legendre:
                P = np.diag(np.sqrt(2.0 * np.arange(N) + 1.0))
        Pbar = np.zeros((N + 1, N + 1))
        Pbar[0, 0] = 1.0
        for i in range(1, N + 1):
            Pbar[i] = _antideriv(fam, P[i - 1])
        P.setflags(write=False)
        Pbar.setflags(write=False)
        for k, v in (("kind", kind), ("representation", rep), ("interp_nodes", nk),
                     ("family", fam), ("P", P), ("Pbar", Pbar)):
            object.__setattr__(self, k, v)


def _check_rho(rho) -> np.ndarray:
    r = np.atleast_1d(np.asarray(rho, dtype=float))
    if np.any(r < 0.0) or np.any(r > 1.0) or not np.all(np.isfinite(r)):
        raise ValueError("rho must lie in [0, 1]")
    return r


def _series(spec: BasisSpec, coef: np.ndarray, rho: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Values and d/drho of the rows of coef at rho; shape (len(rho), rows)."""
    K = coef.shape[1]
    if spec.family == "monomial":
        # Horner on every basis function at once
        val = npoly.polyval(rho, coef.T).T
        der = npoly.polyval(rho, npoly.polyder(coef.T)).T if K > 1 else np.zeros_like(val)
        return np.atleast_2d(val).reshape(rho.size, -1), \
            np.atleast_2d(der).reshape(rho.size, -1)
    f = Family.Legendre if spec.family == "legendre" else Family.Chebyshev
    v, d = table(f, K, np.clip(2.0 * rho - 1.0, -1.0, 1.0))
    return v @ coef.T, 2.0 * (d @ coef.T)


def eval_basis(spec: BasisSpec, rho) -> tuple[np.ndarray, np.ndarray]:
    """p_0..p_{N-1} and their derivatives at rho (scalar -> 1-d, array -> 2-d)."""
    r = _check_rho(rho)
    v, d = _series(spec, spec.P, r)
    if np.ndim(rho) == 0:
        return v[0], d[0]
    return v, d


def eval_antiderivative_basis(spec: BasisSpec, rho) -> tuple[np.ndarray, np.ndarray]:
    """pbar_0..pbar_N and derivatives; pbar_i' = p_{i-1} by construction."""
    r = _check_rho(rho)
    v = _series(spec, spec.Pbar, r)[0]
    p = _series(spec, spec.P, r)[0]
    d = np.concatenate([np.zeros((r.size, 1)), p], axis=1)
    if np.ndim(rho) == 0:
        return v[0], d[0]
    return v, d


def scale_to_interval(spec: BasisSpec, j: int, partition, t):
    """Scaled basis on interval j (0-based): p_ji(t) = p_i(rho),
    pbar_ji(t) = h_j pbar_i(rho), rho = (t - t_j) / h_j.

    Returns ((p, dp/dt), (pbar, dpbar/dt)).
    """
    bp = np.asarray(getattr(partition, "t", partition), dtype=float)
    lo, hi = bp[j], bp[j + 1]
    h = hi - lo
    ta = np.atleast_1d(np.asarray(t, dtype=float))
    tol = _SLACK * max(abs(lo), abs(hi), h)
    if np.any(ta < lo - tol) or np.any(ta > hi + tol):
        raise ValueError(f"t outside interval [{lo}, {hi}]")
    rho = np.clip((ta - lo) / h, 0.0, 1.0)
    p, dp = eval_basis(spec, rho)
    pb, dpb = eval_antiderivative_basis(spec, rho)
    out = ((p, dp / h), (h * pb, dpb))
    if np.ndim(t) == 0:
        out = tuple((a[0], b[0]) for a, b in out)
    return out
