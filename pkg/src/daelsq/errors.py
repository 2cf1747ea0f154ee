"""Discrete solutions as functions; L2, Linf and H1_D error norms; orders."""
from dataclasses import dataclass, field

import numpy as np

from .assembly import _ansatz_rows
from .basis import BasisSpec
from .nodes import NodeKind, make_nodes

__all__ = ["AnsatzSolution", "evaluate", "error_norms", "convergence_order"]


@dataclass(frozen=True)
class AnsatzSolution:
    problem: object = field(repr=False)
    partition: object = field(repr=False)
    basis: BasisSpec
    coefficients: np.ndarray = field(repr=False)

    def __post_init__(self):
        n = self.partition.n
        s = self.problem.m * self.basis.N + self.problem.k
        c = np.asarray(self.coefficients, dtype=float)
        if c.size != n * s:
            raise ValueError(f"expected {n * s} coefficients, got {c.size}")
        c = c.reshape(n, s).copy()
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    @classmethod
    def from_system(cls, system, c: np.ndarray) -> "AnsatzSolution":
        return cls(system.problem, system.partition, system.basis, c)

    def on_interval(self, j: int, rho: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """x (p, m) and (Dx)' (p, k) at reference points rho of interval j."""
        h = self.partition.hs[j]
        a, da = _ansatz_rows(self.basis, self.problem.m, self.problem.k,
                             np.asarray(rho, dtype=float), h)
        c = self.coefficients[j]
        return a @ c, da @ c

    def __call__(self, t):
        return evaluate(self, t)


def evaluate(sol: AnsatzSolution, t):
    """(x, (Dx)') at t; interior breakpoints use the left interval."""
    bp = sol.partition.t
    ta = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(ta < bp[0]) or np.any(ta > bp[-1]):
        raise ValueError("t outside [a, b]")
    j = np.clip(np.searchsorted(bp, ta, side="left") - 1, 0, sol.partition.n - 1)
    x = np.empty((ta.size, sol.problem.m))
    dx = np.empty((ta.size, sol.problem.k))
    for jj in np.unique(j):
        sel = j == jj
        rho = np.clip((ta[sel] - bp[jj]) / sol.partition.hs[jj], 0.0, 1.0)
        x[sel], dx[sel] = sol.on_interval(jj, rho)
    if np.ndim(t) == 0:
        return x[0], dx[0]
    return x, dx


def _same_mesh(a, b) -> bool:
    return a.partition is b.partition or (
        a.partition.n == b.partition.n and np.array_equal(a.partition.t, b.partition.t))


def _exact_eval(exact, sol, j: int, rho: np.ndarray, t: np.ndarray):
    if isinstance(exact, AnsatzSolution):
        if _same_mesh(exact, sol):
            return exact.on_interval(j, rho)
        return evaluate(exact, t)
    if hasattr(exact, "exact_x"):
        if not exact.has_exact:
            raise ValueError("problem has no exact solution")
        return exact.exact_x(t), exact.exact_dx(t)
    x, dx = exact
    return x(t), dx(t)


def error_norms(sol: AnsatzSolution, exact=None, N_quad: int | None = None) -> dict:
    """l2, linf and h1d norms of sol - exact (composite Gauss, N_quad nodes per
    interval, default N + 2).  `exact` is a problem with an exact solution
    (default: sol's own problem), a pair of callables (x, dx), or another
    AnsatzSolution."""
    if exact is None:
        exact = sol.problem
    if N_quad is None:
        N_quad = sol.basis.N + 2
    g = make_nodes(NodeKind.GaussLegendre, N_quad)
    ends = np.array([0.0, 1.0])
    l2 = d2 = 0.0
    linf = 0.0
    bp = sol.partition.t
    for j in range(sol.partition.n):
        h = sol.partition.hs[j]
        t = bp[j] + g.nodes * h
        x, dx = sol.on_interval(j, g.nodes)
        xe, dxe = _exact_eval(exact, sol, j, g.nodes, t)
        e, de = x - xe, dx - dxe
        l2 += h * np.sum(g.weights[:, None] * e * e)
        d2 += h * np.sum(g.weights[:, None] * de * de)
        linf = max(linf, np.abs(e).max())
        te = bp[j] + ends * h
        te[-1] = bp[j + 1]
        xb, _ = sol.on_interval(j, ends)
        xbe = _exact_eval(exact, sol, j, ends, te)[0]
        linf = max(linf, np.abs(xb - xbe).max())
    return {"l2": float(np.sqrt(l2)), "linf": float(linf), "h1d": float(np.sqrt(l2 + d2))}


def convergence_order(errors, hs) -> float:
    """Least-squares slope of log(error) against log(h)."""
    e = np.asarray(errors, dtype=float)
    h = np.asarray(hs, dtype=float)
    if e.size < 2 or e.size != h.size:
        raise ValueError("need at least two (error, h) pairs")
    if np.any(e <= 0) or np.any(h <= 0):
        raise ValueError("errors and step sizes must be positive")
    return float(np.polyfit(np.log(h), np.log(e), 1)[0])
