"""Equality-constrained least squares  min ||A c - r||  s.t.  C c = g.

Three solvers share one Householder QR with column pivoting:

* direct: restrict to the null space of C (dense orthonormal basis, or a
  block-by-block elimination that exploits the interval structure),
* weighted: free least squares for the stacked matrix [omega C; A],
* deferred: the weighted factorization reused for correction steps that
  drive the constraint residual to zero.
"""
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp
from scipy.linalg import lapack

__all__ = [
    "Ordering",
    "SolverReport",
    "PivotedQR",
    "BlockSweepQR",
    "solve_direct",
    "solve_weighted",
    "solve_deferred",
    "DEFAULT_RANK_TOL",
    "DEFERRED_OMEGA",
]

EPS = np.finfo(float).eps
DEFAULT_RANK_TOL = np.sqrt(EPS)
DEFERRED_OMEGA = EPS ** (-1.0 / 3.0)
# dense null-space basis below this many unknowns, block elimination above
DENSE_LIMIT = 2500


class Ordering(Enum):
    ConstraintsFirst = "constraints-first"
    Interleaved = "interleaved"


@dataclass(frozen=True)
class SolverReport:
    coefficients: np.ndarray = field(repr=False)
    residual_lsq: float
    residual_constraint: float
    iterations: int
    converged: bool
    solver: str
    omega: float | None = None
    ordering: str | None = None
    tol: float | None = None
    max_iter: int | None = None
    method: str = ""
    rank_deficient: bool = False
    constraint_rank: int | None = None
    null_dim: int | None = None
    notes: tuple = ()


# ---------------------------------------------------------------- dense QR

class PivotedQR:
    """A P = Q R by LAPACK geqp3; rank from |R_ii| > rank_tol * |R_00|
    (default rank_tol: 20 (rows + cols) eps), or |R_ii| > abs_tol if given.

    solve() returns the minimum-norm least-squares solution when the
    detected rank is deficient (complete orthogonal decomposition).
    """

    def __init__(self, a: np.ndarray, rank_tol: float | None = None,
                 overwrite: bool = False, abs_tol: float | None = None):
        a = np.asarray(a, dtype=float)
        if rank_tol is None:
            rank_tol = 20 * sum(a.shape) * EPS
        self.shape = a.shape
        (qr, tau), _, perm = sla.qr(a, mode="raw", pivoting=True,
                                 overwrite_a=overwrite, check_finite=False)
        self._qr, self._tau, self.perm = qr, tau, perm
        kmax = min(a.shape)
        d = np.abs(np.diag(qr)[:kmax])
        self.scale = float(d[0]) if kmax else 0.0
        thr = rank_tol * self.scale if abs_tol is None else abs_tol
        self.rank = int(np.sum(d > thr)) if kmax and self.scale > 0 else 0
        self.rank_deficient = self.rank < a.shape[1]
        self._cod = None
        if self.rank_deficient and self.rank > 0:
            r = np.triu(qr[:self.rank, :])
            # [R11 R12]^T = Z T  gives the minimum-norm solution
            self._cod = sla.qr(r.T, mode="economic")

    def qt(self, b: np.ndarray) -> np.ndarray:
        b = np.asarray(b, dtype=float)
        vec = b.ndim == 1
        c = np.asfortranarray(b.reshape(b.shape[0], -1).copy())
        if self._tau.size:
            lwork = int(lapack.dormqr("L", "T", self._qr, self._tau, c, -1)[1][0])
            c, _, info = lapack.dormqr("L", "T", self._qr, self._tau, c,
                                       max(lwork, 1), overwrite_c=1)
            if info != 0:
                raise np.linalg.LinAlgError(f"dormqr failed with info={info}")
        return c[:, 0] if vec else c

    def solve(self, b: np.ndarray) -> np.ndarray:
        y = self.qt(b)
        r = self.rank
        vec = y.ndim == 1
        y2 = y.reshape(y.shape[0], -1)[:r]
        out = np.zeros((self.shape[1], y2.shape[1]))
        if r:
            if self._cod is None:
                x = sla.solve_triangular(self._qr[:r, :r], y2, check_finite=False)
                out[self.perm[:r]] = x
            else:
                z, t = self._cod
                w = sla.solve_triangular(t, y2, trans="T", check_finite=False)
                out[self.perm] = z @ w
        return out[:, 0] if vec else out


# ------------------------------------------------------- block sweep QR

class BlockSweepQR:
    """Structured QR for systems whose unknowns split into n blocks of size s:
    interval rows touch one block, constraint rows touch blocks j and j+1,
    boundary rows touch the first and the last block.

    Blocks are eliminated left to right with a pivoted Householder QR on the
    current block; rows left over are compressed and carried to the next
    block.  With exact=True the constraint rows are eliminated exactly
    (direct elimination), otherwise they enter as rows omega*C.
    """

    def __init__(self, system, omega: float = 1.0, exact: bool = False,
                 rank_tol: float | None = None):
        self.n, self.s, self.k = system.n, system.s, system.k
        self.rpi, self.l = system.rows_per_interval, system.l
        self.exact, self.omega = exact, float(omega)
        n, s, k, rpi = self.n, self.s, self.k, self.rpi
        A = system.A_mat.tocsr()
        C = system.C_mat.tocsr()
        self.C = C
        scale = np.sqrt(np.max(np.asarray(A.multiply(A).sum(axis=0)).ravel(), initial=0.0))
        # the omega C rows are exact data: rank is judged relative to A only
        self.scale = scale
        self.rank_tol = rank_tol
        self.steps = []
        self.rank_deficient = False
        self.constraint_rank = 0
        border = n - 1
        carried = np.zeros((0, 0))
        carried_groups: list[int] = []
        for j in range(n):
            groups = [g for g in (j + 1, border) if j < g <= border]
            groups = list(dict.fromkeys(groups))
            cols = [j] + groups
            pos = {g: i for i, g in enumerate(cols)}
            width = s * len(cols)

            def place(block_rows, g):
                out = np.zeros((block_rows.shape[0], width))
                out[:, pos[g] * s:(pos[g] + 1) * s] = block_rows
                return out

            parts = []
            if carried.shape[0]:
                w = np.zeros((carried.shape[0], width))
                for i, g in enumerate(carried_groups):
                    w[:, pos[g] * s:(pos[g] + 1) * s] += carried[:, i * s:(i + 1) * s]
                parts.append(w)
            parts.append(place(A[j * rpi:(j + 1) * rpi, j * s:(j + 1) * s].toarray(), j))
            crow = None
            if j < n - 1:
                cl = C[j * k:(j + 1) * k, j * s:(j + 1) * s].toarray()
                cr = C[j * k:(j + 1) * k, (j + 1) * s:(j + 2) * s].toarray()
                crow = place(cl, j) + place(cr, j + 1)
                if not exact:
                    parts.append(self.omega * crow)
            if j == 0 and self.l:
                bl = A[n * rpi:, :s].toarray()
                br = A[n * rpi:, border * s:].toarray()
                parts.append(place(bl, 0) + place(br, border) if n > 1
                             else place(bl + 0.0, 0))
            W = np.vstack(parts)
            # heavy rows first (row sorting keeps Householder stable for large omega)
            order = np.argsort(-np.max(np.abs(W), axis=1), kind="stable")
            W = W[order]
            step = {"cols": cols, "nrows_carried": carried.shape[0], "order": order}
            # exact elimination of the constraint rows of this interface
            if exact and crow is not None:
                E = crow[:, :s]
                qe, re, pe = sla.qr(E, pivoting=True)
                de = np.abs(np.diag(re))
                ke = int(np.sum(de > DEFAULT_RANK_TOL * max(de[0], 1e-300)))
                self.constraint_rank += ke
                if ke < k:
                    self.rank_deficient = True
                # rows of Q_E^T C: [R1 R2 | G] on the pivoted block j columns
                T = qe.T @ crow
                T[:, :s] = T[:, :s][:, pe]
                T = T[:ke]
                R1 = np.triu(T[:, :ke])
                S_rhs = sla.solve_triangular(R1, np.eye(ke))  # R1^{-1}
                Wj = W[:, :s][:, pe]
                Sm = Wj[:, :ke] @ S_rhs  # W_p R1^{-1}
                Wred = np.hstack([Wj[:, ke:], W[:, s:]]) - Sm @ np.hstack([T[:, ke:s], T[:, s:]])
                step.update(exact=True, qe=qe[:, :ke], pe=pe, ke=ke, R1=R1, Tc=T, Sm=Sm)
                nfree = s - ke
            else:
                pe = np.arange(s)
                ke = 0
                Wred = W
                step.update(exact=False, pe=pe, ke=0)
                nfree = s
            # pivoted QR on the free columns of block j
            q1, r1, p1 = sla.qr(Wred[:, :nfree], pivoting=True)
            d = np.abs(np.diag(r1))
            # default mirrors sparse QR codes: 20 (rows + cols) eps max column norm
            tol = (20 * sum(Wred.shape) * EPS if rank_tol is None else rank_tol) * scale
            rj = int(np.sum(d > tol)) if tol > 0 else d.size
            if rj < nfree:
                self.rank_deficient = True
            rest = q1.T @ Wred[:, nfree:]
            step.update(q1=q1, p1=p1, rj=rj, R11=np.triu(r1[:rj, :rj]), RT=rest[:rj],
                         nfree=nfree)
            carried = rest[rj:]
            carried_groups = groups
            step["tw"] = carried.shape[1]
            if groups and carried.shape[0] > carried.shape[1]:
                q2, r2 = sla.qr(carried)
                step["q2"] = q2
                carried = np.triu(r2[:carried.shape[1]])
            else:
                step["q2"] = None
            self.steps.append(step)

    def solve(self, b_A: np.ndarray, b_C: np.ndarray | None = None) -> np.ndarray:
        """Solution for right-hand sides b_A (rows of A) and b_C (rows of C)."""
        n, s, k, rpi = self.n, self.s, self.k, self.rpi
        if b_C is None:
            b_C = np.zeros((n - 1) * k)
        ys = []
        carried = np.zeros(0)
        for j, st in enumerate(self.steps):
            parts = [carried, b_A[j * rpi:(j + 1) * rpi]]
            gj = b_C[j * k:(j + 1) * k] if j < n - 1 else None
            if gj is not None and not st["exact"]:
                parts.append(self.omega * gj)
            if j == 0 and self.l:
                parts.append(b_A[n * rpi:])
            b = np.concatenate(parts)[st["order"]]
            gh = None
            if st["exact"]:
                gh = st["qe"].T @ gj
                b = b - st["Sm"] @ gh
            y = st["q1"].T @ b
            ys.append((y[:st["rj"]], gh))
            carried = y[st["rj"]:]
            if st["q2"] is not None:
                carried = (st["q2"].T @ carried)[:st["tw"]]
        x = np.zeros((n, s))
        for j in range(n - 1, -1, -1):
            st = self.steps[j]
            y, gh = ys[j]
            xt = np.concatenate([x[g] for g in st["cols"][1:]]) if len(st["cols"]) > 1 \
                else np.zeros(0)
            rhs = y - (st["RT"] @ xt if xt.size else 0.0)
            z = np.zeros(st["nfree"])
            if st["rj"]:
                z[st["p1"][:st["rj"]]] = sla.solve_triangular(st["R11"], rhs)
            xb = np.zeros(s)
            if st["exact"]:
                ke = st["ke"]
                T = st["Tc"]
                # R1 c_p = gh - R2 c_f - G x_trailing
                cp = sla.solve_triangular(st["R1"], gh - T[:, ke:s] @ z - T[:, s:] @ xt)
                xp = np.concatenate([cp, z])
            else:
                xp = z
            xb[st["pe"]] = xp
            x[j] = xb
        return x.ravel()


# ---------------------------------------------------------------- solvers

def _report(system, c, solver, **kw) -> SolverReport:
    res = system.A_mat @ c - system.rhs
    rc = system.C_mat @ c
    return SolverReport(c, float(np.linalg.norm(res)), float(np.linalg.norm(rc)),
                        solver=solver, **kw)


def _null_space_basis(C: sp.spmatrix, ncols: int, rank_tol: float | None):
    """Orthonormal basis of null(C) from a pivoted QR of C^T; also the rank."""
    if C.shape[0] == 0:
        return None, 0
    rank_tol = DEFAULT_RANK_TOL if rank_tol is None else rank_tol
    q, r, _ = sla.qr(C.T.toarray(), pivoting=True)
    d = np.abs(np.diag(r))
    rank = int(np.sum(d > rank_tol * d[0])) if d.size and d[0] > 0 else 0
    return q[:, rank:], rank


def solve_direct(system, method: str = "auto",
                 rank_tol: float | None = None) -> SolverReport:
    """min ||A c - r|| subject to C c = 0 by direct elimination.

    method 'nullspace' restricts to an orthonormal null-space basis of C
    (dense); 'elimination' eliminates the constraints interface by interface
    inside the block sweep.  'auto' picks the dense route for small systems.
    """
    ncols = system.A_mat.shape[1]
    if method == "auto":
        method = "nullspace" if ncols <= DENSE_LIMIT or system.n == 1 else "elimination"
    notes = []
    if method == "nullspace":
        Z, crank = _null_space_basis(system.C_mat, ncols, rank_tol)
        if Z is None:
            qr = PivotedQR(system.A_mat.toarray())
            c = qr.solve(system.rhs)
        else:
            AZ = np.asarray(system.A_mat @ Z)
            qr = PivotedQR(AZ, overwrite=True)
            c = Z @ qr.solve(system.rhs)
        deficient = qr.rank_deficient or crank < system.C_mat.shape[0]
    elif method == "elimination":
        sw = BlockSweepQR(system, exact=True, rank_tol=rank_tol)
        crank = sw.constraint_rank
        c = sw.solve(system.rhs)
        deficient = sw.rank_deficient
    else:
        raise ValueError(f"unknown direct method {method!r}")
    if system.l:
        notes.append(f"null-space dimension {ncols - crank} "
                     f"(the nmN+k-l variant would give {ncols - crank - system.l})")
    return _report(system, c, "direct", iterations=0, converged=True, method=method,
                   rank_deficient=deficient, constraint_rank=crank,
                   null_dim=ncols - crank, notes=tuple(notes))


def _ordering(o) -> Ordering:
    return Ordering(o.value if isinstance(o, Enum) else o)


class _WeightedFactor:
    """Factorization of [omega C; A] in the requested row ordering."""

    def __init__(self, system, omega: float, ordering: Ordering, rank_tol: float | None):
        self.system, self.omega, self.ordering = system, omega, ordering
        if ordering is Ordering.Interleaved:
            self._sweep = BlockSweepQR(system, omega=omega, exact=False, rank_tol=rank_tol)
            self.rank_deficient = self._sweep.rank_deficient
        else:
            G = sp.vstack([omega * system.C_mat, system.A_mat]).toarray()
            A = system.A_mat
            a_scale = np.sqrt(np.max(np.asarray(A.multiply(A).sum(axis=0)).ravel(), initial=0.0))
            rt = 20 * sum(G.shape) * EPS if rank_tol is None else rank_tol
            self._qr = PivotedQR(G, overwrite=True, abs_tol=rt * a_scale)
            self.rank_deficient = self._qr.rank_deficient

    def solve(self, b_A: np.ndarray, b_C: np.ndarray) -> np.ndarray:
        """argmin ||omega (C c - b_C)||^2 + ||A c - b_A||^2."""
        if self.ordering is Ordering.Interleaved:
            return self._sweep.solve(b_A, b_C)
        return self._qr.solve(np.concatenate([self.omega * b_C, b_A]))


def solve_weighted(system, omega: float = 1.0, ordering="interleaved",
                   rank_tol: float | None = None) -> SolverReport:
    """Free least squares for the stacked matrix [omega C; A]."""
    if omega <= 0:
        raise ValueError("omega must be positive")
    o = _ordering(ordering)
    f = _WeightedFactor(system, omega, o, rank_tol)
    c = f.solve(system.rhs, np.zeros(system.C_mat.shape[0]))
    return _report(system, c, "weighted", iterations=0, converged=True, omega=omega,
                   ordering=o.value, rank_deficient=f.rank_deficient)


def _defect(C, c) -> float:
    """Normwise constraint backward error ||C c|| / (||C|| ||c||), inf-norms."""
    if C.shape[0] == 0:
        return 0.0
    den = abs(C).sum(axis=1).max() * np.max(np.abs(c), initial=0.0)
    num = np.max(np.abs(C @ c), initial=0.0)
    return float(num / den) if den > 0 else float(num > 0)


def solve_deferred(system, omega: float = DEFERRED_OMEGA, tol: float = 1e-15,
                   max_iter: int = 2, ordering="interleaved",
                   rank_tol: float | None = None) -> SolverReport:
    """Weighted solution refined by deferred correction.

    The constraint target is shifted by the accumulated defect, so the fixed
    point satisfies C c = 0 together with the constrained optimality
    condition.  One factorization serves every step.  Converged means two
    consecutive iterates have constraint backward error <= tol.
    """
    if omega <= 0 or tol <= 0 or max_iter < 1:
        raise ValueError("need omega > 0, tol > 0, max_iter >= 1")
    o = _ordering(ordering)
    f = _WeightedFactor(system, omega, o, rank_tol)
    A, C, r = system.A_mat, system.C_mat, system.rhs
    target = np.zeros(C.shape[0])
    c = f.solve(r, target)
    prev = _defect(C, c)
    converged = False
    it = 0
    while it < max_iter:
        it += 1
        target = target - C @ c
        c = c + f.solve(r - A @ c, target - C @ c)
        cur = _defect(C, c)
        if prev <= tol and cur <= tol:
            converged = True
            break
        prev = cur
    return _report(system, c, "deferred", iterations=it, converged=converged, omega=omega,
                   ordering=o.value, tol=tol, max_iter=max_iter,
                   rank_deficient=f.rank_deficient,
                   notes=("stopping rule: constraint backward error <= tol on two "
                          "consecutive iterates (stand-in)",))
