"""Collocation node families on [0, 1], quadrature weights, Lebesgue constants."""
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import kernels
from .vandermonde import build_vandermonde, lagrange_to_legendre

__all__ = [
    "NodeKind",
    "NodeSet",
    "make_nodes",
    "interpolatory_weights",
    "lebesgue_constant",
    "nodal_poly_l2norm",
]

EPS = np.finfo(float).eps
MAX_NEWTON = 100


class NodeKind(Enum):
    GaussLegendre = "gle"
    GaussRadauRight = "radau"
    GaussLobatto = "lobatto"
    Chebyshev = "chebyshev"
    UniformClosed = "uniform-closed"
    UniformOpen = "uniform-open"
    Custom = "custom"


@dataclass(frozen=True)
class NodeSet:
    kind: NodeKind
    nodes: np.ndarray
    weights: np.ndarray | None = None

    def __post_init__(self):
        x = np.asarray(self.nodes, dtype=float).ravel()
        if x.size == 0 or np.any(np.diff(x) <= 0) or x[0] < 0 or x[-1] > 1:
            raise ValueError("nodes must be strictly increasing in [0, 1]")
        x.setflags(write=False)
        object.__setattr__(self, "nodes", x)
        if self.weights is not None:
            w = np.asarray(self.weights, dtype=float).ravel()
            if w.size != x.size:
                raise ValueError("weights and nodes differ in length")
            w.setflags(write=False)
            object.__setattr__(self, "weights", w)

    @property
    def M(self) -> int:
        return self.nodes.size


def _newton(f, x0: np.ndarray) -> np.ndarray:
    """Simultaneous Newton iteration; f returns (value, derivative)."""
    x = x0.copy()
    for _ in range(MAX_NEWTON):
        v, d = f(x)
        dx = v / d
        x -= dx
        if np.max(np.abs(dx), initial=0.0) <= 4 * EPS:
            return x
    raise RuntimeError("Newton iteration for the nodes did not converge")


def _legendre(count: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return kernels.legendre_table(x, count)


def _gauss_legendre(M: int) -> tuple[np.ndarray, np.ndarray]:
    i = np.arange(1, M + 1)
    x0 = np.cos((2 * i - 1) * np.pi / (2 * M))

    def f(x):
        v, d = _legendre(M + 1, x)
        return v[:, M], d[:, M]

    x = _newton(f, x0)
    x = np.sort(x)
    x = 0.5 * (x - x[::-1])
    d = _legendre(M + 1, x)[1][:, M]
    w = 2.0 / ((1.0 - x * x) * d * d)
    return x, w


def _gauss_lobatto(M: int) -> tuple[np.ndarray, np.ndarray]:
    N = M - 1
    x = np.array([-1.0, 1.0])
    if M > 2:
        x0 = np.cos(np.pi * np.arange(1, N) / N)

        def f(t):
            v, d = _legendre(N + 1, t)
            p, dp = v[:, N], d[:, N]
            # P_N'' from the Legendre differential equation
            ddp = (2.0 * t * dp - N * (N + 1) * p) / (1.0 - t * t)
            return dp, ddp

        inner = np.sort(_newton(f, x0))
        inner = 0.5 * (inner - inner[::-1])
        x = np.concatenate([[-1.0], inner, [1.0]])
    p = _legendre(N + 1, x)[0][:, N]
    w = 2.0 / (N * (N + 1) * p * p)
    return x, w


def _gauss_radau_right(M: int) -> tuple[np.ndarray, np.ndarray]:
    x = np.array([1.0])
    if M > 1:
        x0 = np.cos(2 * np.pi * np.arange(1, M) / (2 * M - 1))

        def f(t):
            v, d = _legendre(M + 1, t)
            return v[:, M - 1] - v[:, M], d[:, M - 1] - d[:, M]

        x = np.concatenate([np.sort(_newton(f, x0)), [1.0]])
    p = _legendre(M, x)[0][:, M - 1]
    w = (1.0 + x) / (M * M * p * p)
    w[-1] = 2.0 / (M * M)
    return x, w


def make_nodes(kind, M: int) -> NodeSet:
    kind = NodeKind(kind.value if isinstance(kind, Enum) else kind)
    lo = {NodeKind.GaussLobatto: 2, NodeKind.GaussRadauRight: 2,
          NodeKind.UniformClosed: 2}.get(kind, 1)
    if M < lo:
        raise ValueError(f"{kind.value} nodes need M >= {lo}")
    if kind is NodeKind.Custom:
        raise ValueError("custom node sets are built with NodeSet(...) directly")
    if kind in (NodeKind.GaussLegendre, NodeKind.GaussLobatto, NodeKind.GaussRadauRight):
        gen = {NodeKind.GaussLegendre: _gauss_legendre,
               NodeKind.GaussLobatto: _gauss_lobatto,
               NodeKind.GaussRadauRight: _gauss_radau_right}[kind]
        x, w = gen(M)
        tau = 0.5 * (x + 1.0)
        if kind is not NodeKind.GaussRadauRight:
            tau = 0.5 * (tau + (1.0 - tau[::-1]))
        if kind is not NodeKind.GaussLegendre:
            tau[-1] = 1.0
        if kind is NodeKind.GaussLobatto:
            tau[0] = 0.0
        return NodeSet(kind, tau, 0.5 * w)
    if kind is NodeKind.Chebyshev:
        i = np.arange(M, 0, -1)
        c = np.cos((2 * i - 1) * np.pi / (2 * M))
        c = 0.5 * (c - c[::-1])
        tau = 0.5 * (c + 1.0)
    elif kind is NodeKind.UniformClosed:
        tau = np.arange(M) / (M - 1.0)
    else:
        tau = (np.arange(1, M + 1) - 0.5) / M
    try:
        w = interpolatory_weights(tau)
    except np.linalg.LinAlgError:
        # interpolatory weights are not computable to working precision
        w = None
    return NodeSet(kind, tau, w)


def interpolatory_weights(nodes) -> np.ndarray:
    """Weights gamma of the interpolatory rule on [0,1], from V^T gamma = e_1."""
    x = np.asarray(getattr(nodes, "nodes", nodes), dtype=float)
    vinv = lagrange_to_legendre(x)
    g = vinv[0].copy()
    # equispaced rules have large weights of both signs; two refinement steps
    # with an extended-precision residual recover the lost digits
    vt = build_vandermonde(x).T.astype(np.longdouble)
    e = np.zeros(x.size, dtype=np.longdouble)
    e[0] = 1
    for _ in range(2):
        g = g + vinv.T @ (e - vt @ g.astype(np.longdouble)).astype(float)
    return g


def _bary_weights(x: np.ndarray) -> np.ndarray:
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, 1.0)
    logw = -np.log(np.abs(diff)).sum(axis=1)
    sign = np.prod(np.sign(diff), axis=1)
    return sign * np.exp(logw - logw.max())


def lebesgue_constant(nodes, samples: int = 64) -> float:
    """max over [0,1] of the Lebesgue function: dense sampling per gap, then
    golden-section refinement on each bracketing triple."""
    x = np.asarray(getattr(nodes, "nodes", nodes), dtype=float)
    if x.size == 1:
        return 1.0
    w = _bary_weights(x)
    lam = lambda t: kernels.lebesgue_function(x, w, t)  # noqa: E731
    edges = np.unique(np.concatenate([[0.0], x, [1.0]]))
    grid = np.unique(np.concatenate(
        [np.linspace(a, b, samples + 1) for a, b in zip(edges[:-1], edges[1:])]))
    vals = lam(grid)
    best = vals.max()
    # refine every local maximum of the sampled function
    k = np.arange(grid.size)
    left = np.r_[-np.inf, vals[:-1]]
    right = np.r_[vals[1:], -np.inf]
    peaks = k[(vals >= left) & (vals >= right)]
    lo = grid[np.maximum(peaks - 1, 0)]
    hi = grid[np.minimum(peaks + 1, grid.size - 1)]
    g = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = lo.copy(), hi.copy()
    c = b - g * (b - a)
    d = a + g * (b - a)
    fc, fd = lam(c), lam(d)
    for _ in range(80):
        up = fc > fd
        b = np.where(up, d, b)
        a = np.where(up, a, c)
        c_new = b - g * (b - a)
        d_new = a + g * (b - a)
        c, d = c_new, d_new
        fc, fd = lam(c), lam(d)
    best = max(best, fc.max(), fd.max())
    return float(best)


def nodal_poly_l2norm(nodes) -> float:
    """L2(0,1) norm of prod (rho - rho_i), via a Gauss rule with M+1 points."""
    x = np.asarray(getattr(nodes, "nodes", nodes), dtype=float)
    g = make_nodes(NodeKind.GaussLegendre, x.size + 1)
    om = np.prod(g.nodes[:, None] - x[None, :], axis=1)
    return float(np.sqrt(np.sum(g.weights * om * om)))
