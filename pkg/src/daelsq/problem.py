"""Linear DAE boundary-value problems A(t)(Dx)'(t) + B(t)x(t) = q(t),
G_a x(a) + G_b x(b) = d, with D = [I 0]; meshes; built-in benchmarks.

Coefficient callables are vectorized: given a 1-d array t of length p they
return arrays of shape (p, m, k), (p, m, m), (p, m); exact solutions return
(p, m) for x and (p, k) for (Dx)'.
"""
import json
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

__all__ = [
    "DaeProblem",
    "Partition",
    "uniform_partition",
    "example_index3_l0",
    "example_campbell_moore",
    "example_index4_bvp",
    "load_problem_file",
    "EXAMPLES",
    "get_example",
]


@dataclass(frozen=True)
class DaeProblem:
    m: int
    k: int
    l: int  # noqa: E741
    interval: tuple[float, float]
    A: Callable
    B: Callable
    q: Callable
    G_a: np.ndarray
    G_b: np.ndarray
    d: np.ndarray
    index_mu: int | None = None
    exact_x: Callable | None = None
    exact_dx: Callable | None = None
    name: str = "custom"
    labels: tuple = field(default=())
    description: str = ""

    def __post_init__(self):
        if not (0 <= self.l <= self.k < self.m):
            raise ValueError("dimensions must satisfy 0 <= l <= k < m")
        a, b = map(float, self.interval)
        if not a < b:
            raise ValueError("interval must satisfy a < b")
        object.__setattr__(self, "interval", (a, b))
        for nm in ("G_a", "G_b"):
            g = np.asarray(getattr(self, nm), dtype=float).reshape(self.l, self.m)
            object.__setattr__(self, nm, g)
        object.__setattr__(self, "d", np.asarray(self.d, dtype=float).reshape(self.l))
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"x{i + 1}" for i in range(self.m)))

    @property
    def has_exact(self) -> bool:
        return self.exact_x is not None and self.exact_dx is not None

    def residual(self, t) -> np.ndarray:
        """A (Dx*)' + B x* - q at the points t (needs the exact solution)."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        return (np.einsum("pij,pj->pi", self.A(t), self.exact_dx(t))
                + np.einsum("pij,pj->pi", self.B(t), self.exact_x(t)) - self.q(t))

    def bc_residual(self) -> np.ndarray:
        a, b = self.interval
        return (self.G_a @ self.exact_x(np.array([a]))[0]
                + self.G_b @ self.exact_x(np.array([b]))[0] - self.d)


@dataclass(frozen=True)
class Partition:
    t: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.t, dtype=float).ravel()
        if t.size < 2 or np.any(np.diff(t) <= 0):
            raise ValueError("breakpoints must be strictly increasing")
        t.setflags(write=False)
        object.__setattr__(self, "t", t)

    @property
    def n(self) -> int:
        return self.t.size - 1

    @property
    def hs(self) -> np.ndarray:
        return np.diff(self.t)

    @property
    def h(self) -> float:
        return float(self.hs.max())

    @property
    def h_min(self) -> float:
        return float(self.hs.min())

    @property
    def ratio(self) -> float:
        return self.h / self.h_min


def uniform_partition(problem, n: int) -> Partition:
    if n < 1:
        raise ValueError("n must be at least 1")
    a, b = getattr(problem, "interval", problem)
    t = np.linspace(a, b, n + 1)
    t[0], t[-1] = a, b
    return Partition(t)


def _stack(rows, p):
    """Broadcast a nested list of scalars/arrays to shape (p, r, c)."""
    return np.stack([np.stack([np.broadcast_to(e, (p,)) for e in r], axis=-1)
                     for r in rows], axis=-2)


def example_index3_l0(eta: float = 1.0) -> DaeProblem:
    """Index-3 problem on [0,1] with l = 0.  State stored as (x2, x3, x1) so
    the differentiated components come first."""

    def A(t):
        p = t.size
        return _stack([[1.0, 0.0], [eta * t, 1.0], [0.0, 0.0]], p)

    def B(t):
        p = t.size
        return _stack([[0.0, 0.0, 1.0], [eta + 1.0, 0.0, 0.0], [eta * t, 1.0, 0.0]], p)

    def x(t):
        return np.stack([np.exp(-2 * t) * np.sin(t), np.exp(-t) * np.cos(t),
                         np.exp(-t) * np.sin(t)], axis=-1)

    def dx(t):
        return np.stack([np.exp(-2 * t) * (np.cos(t) - 2 * np.sin(t)),
                         -np.exp(-t) * (np.cos(t) + np.sin(t))], axis=-1)

    def q(t):
        e1, e2 = np.exp(-t), np.exp(-2 * t)
        s, c = np.sin(t), np.cos(t)
        return np.stack([
            e2 * (c - 2 * s) + e1 * s,
            eta * t * e2 * (c - 2 * s) - e1 * (c + s) + (eta + 1) * e2 * s,
            eta * t * e2 * s + e1 * c,
        ], axis=-1)

    return DaeProblem(3, 2, 0, (0.0, 1.0), A, B, q, np.zeros((0, 3)), np.zeros((0, 3)),
                      np.zeros(0), index_mu=3, exact_x=x, exact_dx=dx, name="index3_l0",
                      labels=("x2", "x3", "x1"),
                      description=f"index-3, l=0, eta={eta}; state reordered to (x2, x3, x1)")


def example_campbell_moore(rho: float = 5.0, t_end: float = 5.0) -> DaeProblem:
    """Linearized index-3 problem on [0, t_end] with four initial conditions.

    The published error tables for this problem are reproduced with t_end = 1.
    """

    def A(t):
        return np.broadcast_to(np.eye(7, 6), (t.size, 7, 6)).copy()

    def B(t):
        s, c = np.sin(t), np.cos(t)
        z = np.zeros_like(t)
        r2 = 2 * rho
        return _stack([
            [z, z, z, -1.0, z, z, z],
            [z, z, z, z, -1.0, z, z],
            [z, z, z, z, z, -1.0, z],
            [z, z, s, z, 1.0, -c, -r2 * c * c],
            [z, z, -c, -1.0, z, -s, -r2 * s * c],
            [z, z, 1.0, z, z, z, r2 * s],
            [r2 * c * c, r2 * s * c, -r2 * s, z, z, z, z],
        ], t.size)

    def x(t):
        s, c = np.sin(t), np.cos(t)
        return np.stack([s, c, 2 * c * c, c, -s, -2 * np.sin(2 * t), -s / rho], axis=-1)

    def dx(t):
        s, c = np.sin(t), np.cos(t)
        return np.stack([c, -s, -2 * np.sin(2 * t), -s, -c, -4 * np.cos(2 * t)], axis=-1)

    def q(t):
        z = np.zeros_like(t)
        return np.stack([z, z, z, 2 * np.sin(3 * t), -2 * np.cos(t) - 2 * np.cos(3 * t),
                         -2 * np.cos(2 * t), z], axis=-1)

    G_a = np.zeros((4, 7))
    for r, col in enumerate((1, 2, 4, 5)):
        G_a[r, col] = 1.0
    return DaeProblem(7, 6, 4, (0.0, t_end), A, B, q, G_a, np.zeros((4, 7)),
                      np.array([1.0, 2.0, 0.0, 0.0]), index_mu=3, exact_x=x, exact_dx=dx,
                      name="campbell_moore", description=f"index-3 initial value problem, rho={rho}, t in [0, {t_end}]")


def example_index4_bvp(lam: float = 5.0) -> DaeProblem:
    """Index-4 boundary-value problem on [0,1], state (x1, x2, y1, y2, y3, y4).

    The solution used satisfies the equations as written: y2 = -lam x2 and
    y4 = -lam^3 x2.
    """
    if lam <= 0:
        raise ValueError("lambda must be positive")

    def A(t):
        a = np.zeros((6, 5))
        a[0, 0] = a[1, 1] = a[3, 2] = a[4, 3] = a[5, 4] = 1.0
        return np.broadcast_to(a, (t.size, 6, 5)).copy()

    def B(t):
        b = np.zeros((6, 6))
        b[0, 1] = b[1, 0] = -lam
        b[2, 0] = -1.0
        b[2, 2] = b[3, 3] = b[4, 4] = b[5, 5] = 1.0
        return np.broadcast_to(b, (t.size, 6, 6)).copy()

    den = 1.0 + np.exp(lam)

    def x1(t):
        return (np.exp(lam * (1 - t)) + np.exp(lam * t)) / den

    def x2(t):
        return (np.exp(lam * t) - np.exp(lam * (1 - t))) / den

    def x(t):
        u, v = x1(t), x2(t)
        return np.stack([u, v, u, -lam * v, lam ** 2 * u, -lam ** 3 * v], axis=-1)

    def dx(t):
        u, v = x1(t), x2(t)
        return np.stack([lam * v, lam * u, lam * v, -lam ** 2 * u, lam ** 3 * v], axis=-1)

    def q(t):
        return np.zeros((t.size, 6))

    G_a = np.zeros((2, 6))
    G_b = np.zeros((2, 6))
    G_a[0, 0] = 1.0
    G_b[1, 0] = 1.0
    return DaeProblem(6, 5, 2, (0.0, 1.0), A, B, q, G_a, G_b, np.array([1.0, 1.0]),
                      index_mu=4, exact_x=x, exact_dx=dx, name="index4_bvp",
                      labels=("x1", "x2", "y1", "y2", "y3", "y4"),
                      description=f"index-4 boundary-value problem, lambda={lam}")


EXAMPLES = {
    "index3_l0": (example_index3_l0, "eta"),
    "campbell_moore": (example_campbell_moore, "rho"),
    "index4_bvp": (example_index4_bvp, "lam"),
}


def get_example(name: str, param: float | None = None,
                interval: tuple[float, float] | None = None) -> DaeProblem:
    """Built-in problem by name; `interval` overrides the default time span
    (the closed-form solution is valid on any interval)."""
    if name not in EXAMPLES:
        raise ValueError(f"unknown example {name!r}; choose from {sorted(EXAMPLES)}")
    fn, _ = EXAMPLES[name]
    pr = fn() if param is None else fn(param)
    if interval is not None:
        pr = replace(pr, interval=tuple(interval))
        if pr.l and np.max(np.abs(pr.bc_residual())) > 1e-12:
            raise ValueError(f"{name}: boundary data do not hold on {tuple(interval)}")
    return pr


def load_problem_file(path: str) -> DaeProblem:
    """Constant-coefficient problem from a JSON file.

    Keys: m, k, l, interval [a, b], A (m x k), B (m x m), G_a, G_b (l x m),
    d (l), q (m lists of ascending polynomial coefficients in t).
    """
    with open(path) as fh:
        cfg = json.load(fh)
    missing = {"m", "k", "l", "interval", "A", "B", "q"} - set(cfg)
    if missing:
        raise ValueError(f"problem file lacks fields {sorted(missing)}")
    m, k, l = int(cfg["m"]), int(cfg["k"]), int(cfg["l"])  # noqa: E741
    Am = np.asarray(cfg["A"], dtype=float)
    Bm = np.asarray(cfg["B"], dtype=float)
    if Am.shape != (m, k) or Bm.shape != (m, m):
        raise ValueError(f"A must be {m}x{k} and B {m}x{m}")
    qc = [np.asarray(c, dtype=float) for c in cfg["q"]]
    if len(qc) != m:
        raise ValueError(f"q needs {m} coefficient lists")

    def A(t):
        return np.broadcast_to(Am, (t.size, m, k)).copy()

    def B(t):
        return np.broadcast_to(Bm, (t.size, m, m)).copy()

    def q(t):
        return np.stack([np.polynomial.polynomial.polyval(t, c) for c in qc], axis=-1)

    return DaeProblem(m, k, l, tuple(cfg["interval"]), A, B, q,
                      np.asarray(cfg.get("G_a", np.zeros((l, m))), dtype=float),
                      np.asarray(cfg.get("G_b", np.zeros((l, m))), dtype=float),
                      np.asarray(cfg.get("d", np.zeros(l)), dtype=float),
                      index_mu=cfg.get("index"), name=cfg.get("name", path))
