"""Pure numpy versions of the recurrence kernels (fallback for the compiled core)."""
import numpy as np

__all__ = [
    "legendre_table",
    "chebyshev_table",
    "clenshaw_legendre",
    "clenshaw_chebyshev",
    "lebesgue_function",
]


def legendre_table(x: np.ndarray, count: int) -> tuple[np.ndarray, np.ndarray]:
    """Values and derivatives of P_0..P_{count-1} at x, stabilized recurrence."""
    x = np.asarray(x, dtype=float)
    v = np.zeros((x.size, count))
    d = np.zeros((x.size, count))
    v[:, 0] = 1.0
    if count > 1:
        v[:, 1] = x
        d[:, 1] = 1.0
    for nu in range(1, count - 1):
        f = nu / (nu + 1.0)
        v[:, nu + 1] = f * (x * v[:, nu] - v[:, nu - 1]) + x * v[:, nu]
        d[:, nu + 1] = (f * (v[:, nu] + x * d[:, nu] - d[:, nu - 1])
                        + v[:, nu] + x * d[:, nu])
    return v, d


def chebyshev_table(x: np.ndarray, count: int) -> tuple[np.ndarray, np.ndarray]:
    """Values and derivatives of T_0..T_{count-1} at x."""
    x = np.asarray(x, dtype=float)
    v = np.zeros((x.size, count))
    d = np.zeros((x.size, count))
    v[:, 0] = 1.0
    if count > 1:
        v[:, 1] = x
        d[:, 1] = 1.0
    for nu in range(1, count - 1):
        v[:, nu + 1] = 2.0 * x * v[:, nu] - v[:, nu - 1]
        d[:, nu + 1] = 2.0 * v[:, nu] + 2.0 * x * d[:, nu] - d[:, nu - 1]
    return v, d


def clenshaw_legendre(c: np.ndarray, x: np.ndarray) -> np.ndarray:
    c = np.asarray(c, dtype=float)
    x = np.asarray(x, dtype=float)
    b1 = np.zeros_like(x)
    b2 = np.zeros_like(x)
    for k in range(c.size - 1, -1, -1):
        # P_{k+1} = (2k+1)/(k+1) x P_k - k/(k+1) P_{k-1}
        alpha = (2.0 * k + 1.0) / (k + 1.0) * x
        beta = -(k + 1.0) / (k + 2.0)
        b1, b2 = c[k] + alpha * b1 + beta * b2, b1
    return b1


def clenshaw_chebyshev(c: np.ndarray, x: np.ndarray) -> np.ndarray:
    c = np.asarray(c, dtype=float)
    x = np.asarray(x, dtype=float)
    b1 = np.zeros_like(x)
    b2 = np.zeros_like(x)
    for k in range(c.size - 1, 0, -1):
        b1, b2 = c[k] + 2.0 * x * b1 - b2, b1
    return c[0] + x * b1 - b2


def lebesgue_function(nodes: np.ndarray, bary: np.ndarray, x: np.ndarray) -> np.ndarray:
    """sum_i |l_i(x)| via the second barycentric form."""
    nodes = np.asarray(nodes, dtype=float)
    x = np.asarray(x, dtype=float)
    diff = x[:, None] - nodes[None, :]
    hit = diff == 0.0
    diff[hit] = 1.0
    q = bary[None, :] / diff
    out = np.abs(q).sum(axis=1) / np.abs(q.sum(axis=1))
    out[hit.any(axis=1)] = 1.0
    return out
