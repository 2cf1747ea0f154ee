"""Assembly of the discrete equality-constrained least-squares problem

    minimize ||A c - r||^2  subject to  C c = 0

for a DAE, a mesh, an ansatz basis and a collocation configuration.
Coefficients are stored interval by interval; on each interval the block
c_j has length s = m N + k ordered (c_j10..c_j1N, c_j20.., .., c_jm,N-1).
"""
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import scipy.sparse as sp

from .basis import BasisSpec, eval_antiderivative_basis, eval_basis
from .nodes import NodeKind, NodeSet, make_nodes
from .vandermonde import Functional, mass_factor, mass_matrix

__all__ = [
    "CollocationConfig",
    "DiscreteSystem",
    "assemble",
    "interval_matrices",
    "functional_value",
    "write_matrix_market",
]


@dataclass(frozen=True)
class CollocationConfig:
    M: int
    node_kind: NodeKind = NodeKind.GaussLegendre
    functional: Functional = Functional.R
    alpha: float = 1.0

    def __post_init__(self):
        nk = self.node_kind
        object.__setattr__(self, "node_kind",
                           NodeKind(nk.value if isinstance(nk, Enum) else nk))
        f = self.functional
        object.__setattr__(self, "functional",
                           Functional(f.value if isinstance(f, Enum) else f))
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")

    def nodeset(self) -> NodeSet:
        return make_nodes(self.node_kind, self.M)


@dataclass(frozen=True)
class DiscreteSystem:
    A_mat: sp.csc_matrix
    C_mat: sp.csc_matrix
    rhs: np.ndarray
    n: int
    m: int
    k: int
    l: int  # noqa: E741
    N: int
    M: int
    problem: object = field(repr=False)
    partition: object = field(repr=False)
    basis: BasisSpec = field(repr=False)
    config: CollocationConfig = field(repr=False)

    @property
    def s(self) -> int:
        """Coefficients per interval."""
        return self.m * self.N + self.k

    @property
    def rows_per_interval(self) -> int:
        return self.m * self.M

    @property
    def shape(self) -> tuple[int, int, int]:
        """(rows of A, rows of C, unknowns)."""
        return self.A_mat.shape[0], self.C_mat.shape[0], self.A_mat.shape[1]

    @property
    def null_dim(self) -> int:
        return self.A_mat.shape[1] - self.C_mat.shape[0]


def _ansatz_rows(basis: BasisSpec, m: int, k: int, rho: np.ndarray, h: float):
    """a_j(t) (p, m, s) and D a_j'(t) (p, k, s) at the reference points rho."""
    N = basis.N
    s = m * N + k
    p, _ = eval_basis(basis, rho)
    pb, dpb = eval_antiderivative_basis(basis, rho)
    a = np.zeros((rho.size, m, s))
    da = np.zeros((rho.size, k, s))
    for kap in range(k):
        cols = slice(kap * (N + 1), (kap + 1) * (N + 1))
        a[:, kap, cols] = h * pb
        da[:, kap, cols] = dpb
    off = k * (N + 1)
    for kap in range(k, m):
        cols = slice(off + (kap - k) * N, off + (kap - k + 1) * N)
        a[:, kap, cols] = p
    return a, da


def interval_matrices(problem, partition, basis: BasisSpec, config: CollocationConfig,
                      j: int, lhat: np.ndarray, tau: np.ndarray):
    """Scaled residual block (mM x s), right-hand side (mM) and the structural
    sparsity mask of interval j.

    The mask marks entries that are nonzero in the unscaled block at some node
    reached by the mixing factor lhat, so cancellation zeros stay stored.
    """
    lo, h = partition.t[j], partition.hs[j]
    t = lo + tau * h
    a, da = _ansatz_rows(basis, problem.m, problem.k, tau, h)
    blk = np.einsum("pmk,pks->pms", problem.A(t), da) \
        + np.einsum("pmn,pns->pms", problem.B(t), a)
    mask = np.einsum("ab,bms->ams", (lhat != 0).astype(float), (blk != 0).astype(float)) > 0
    w = np.sqrt(h)
    blk = w * np.einsum("ab,bms->ams", lhat, blk)
    rhs = w * (lhat @ problem.q(t))
    s = blk.shape[-1]
    return blk.reshape(-1, s), rhs.reshape(-1), mask.reshape(-1, s)


def _coo(rows, cols, vals, shape, keep=None):
    r = np.concatenate(rows) if rows else np.zeros(0, int)
    c = np.concatenate(cols) if cols else np.zeros(0, int)
    v = np.concatenate(vals) if vals else np.zeros(0)
    keep = v != 0.0 if keep is None else np.concatenate(keep) | (v != 0.0)
    return sp.csc_matrix((v[keep], (r[keep], c[keep])), shape=shape)


def assemble(problem, partition, basis: BasisSpec, config: CollocationConfig) -> DiscreteSystem:
    m, k, l = problem.m, problem.k, problem.l  # noqa: E741
    N, M, n = basis.N, config.M, partition.n
    if M < N + 1:
        raise ValueError("need M >= N + 1 collocation nodes")
    if abs(partition.t[0] - problem.interval[0]) > 1e-14 * (1 + abs(partition.t[0])) or \
            abs(partition.t[-1] - problem.interval[1]) > 1e-14 * (1 + abs(partition.t[-1])):
        raise ValueError("partition does not span the problem interval")
    nodes = config.nodeset()
    lhat = mass_factor(nodes, config.functional).factor
    s = m * N + k
    rpi = m * M
    rows, cols, vals, keep = [], [], [], []
    rhs = np.zeros(n * rpi + l)
    # intervals are independent; built one by one and merged below
    for j in range(n):
        blk, r, mask = interval_matrices(problem, partition, basis, config, j, lhat,
                                         nodes.nodes)
        ii, jj = np.indices(blk.shape)
        rows.append((ii + j * rpi).ravel())
        cols.append((jj + j * s).ravel())
        vals.append(blk.ravel())
        keep.append(mask.ravel())
        rhs[j * rpi:(j + 1) * rpi] = r
    if l:
        wa = np.sqrt(config.alpha)
        a0 = _ansatz_rows(basis, m, k, np.array([0.0]), partition.hs[0])[0][0]
        a1 = _ansatz_rows(basis, m, k, np.array([1.0]), partition.hs[-1])[0][0]
        for blk, jb in ((wa * problem.G_a @ a0, 0), (wa * problem.G_b @ a1, n - 1)):
            ii, jj = np.indices(blk.shape)
            rows.append((ii + n * rpi).ravel())
            cols.append((jj + jb * s).ravel())
            vals.append(blk.ravel())
            keep.append(np.zeros(blk.size, bool))
        rhs[n * rpi:] = wa * problem.d
    A_mat = _coo(rows, cols, vals, (n * rpi + l, n * s), keep)

    rows, cols, vals = [], [], []
    pb1 = eval_antiderivative_basis(basis, 1.0)[0]
    pb0 = eval_antiderivative_basis(basis, 0.0)[0]
    hs = partition.hs
    for j in range(n - 1):
        for kap in range(k):
            r = j * k + kap
            c0 = j * s + kap * (N + 1)
            c1 = (j + 1) * s + kap * (N + 1)
            rows += [np.full(N + 1, r), np.full(N + 1, r)]
            cols += [np.arange(c0, c0 + N + 1), np.arange(c1, c1 + N + 1)]
            vals += [hs[j] * pb1, -hs[j + 1] * pb0]
    C_mat = _coo(rows, cols, vals, ((n - 1) * k, n * s))
    return DiscreteSystem(A_mat, C_mat, rhs, n, m, k, l, N, M,
                          problem, partition, basis, config)


def functional_value(system: DiscreteSystem, c: np.ndarray) -> float:
    """Phi of the ansatz function with coefficients c, evaluated from its
    definition: residual at the collocation points weighted by the functional,
    plus alpha |G_a x(a) + G_b x(b) - d|^2."""
    pr, part, basis, cfg = system.problem, system.partition, system.basis, system.config
    nodes = cfg.nodeset()
    tau, M = nodes.nodes, nodes.M
    if cfg.functional is Functional.C:
        L = np.eye(M) / M
    elif cfg.functional is Functional.I:
        L = np.diag(nodes.weights)
    else:
        L = mass_matrix(nodes)
    c = np.asarray(c, dtype=float).reshape(system.n, system.s)
    total = 0.0
    for j in range(system.n):
        lo, h = part.t[j], part.hs[j]
        t = lo + tau * h
        a, da = _ansatz_rows(basis, pr.m, pr.k, tau, h)
        x = a @ c[j]
        dx = da @ c[j]
        w = np.einsum("pmk,pk->pm", pr.A(t), dx) + np.einsum("pmn,pn->pm", pr.B(t), x) - pr.q(t)
        # sum_{i,i'} L[i,i'] w_i . w_i'
        total += h * np.einsum("ab,am,bm->", L, w, w)
    if pr.l:
        xa = _ansatz_rows(basis, pr.m, pr.k, np.array([0.0]), part.hs[0])[0][0] @ c[0]
        xb = _ansatz_rows(basis, pr.m, pr.k, np.array([1.0]), part.hs[-1])[0][0] @ c[-1]
        g = pr.G_a @ xa + pr.G_b @ xb - pr.d
        total += cfg.alpha * float(g @ g)
    return float(total)


def write_matrix_market(system: DiscreteSystem, prefix: str) -> list[str]:
    """Dump A, C and r as Matrix Market files <prefix>_A.mtx etc."""
    from scipy.io import mmwrite
    out = []
    for nm, mat in (("A", system.A_mat), ("C", system.C_mat),
                    ("r", system.rhs.reshape(-1, 1))):
        path = f"{prefix}_{nm}.mtx"
        mmwrite(path, mat)
        out.append(path)
    return out
