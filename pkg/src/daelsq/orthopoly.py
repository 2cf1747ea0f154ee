"""Legendre and Chebyshev families: evaluation, derivatives, Clenshaw sums and
exact antiderivative coefficient maps."""
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import kernels

__all__ = [
    "Family",
    "PolySeries",
    "table",
    "eval_all",
    "eval_all_derivatives",
    "clenshaw",
    "antiderivative_coeffs",
]


class Family(Enum):
    Legendre = "legendre"
    LegendreShifted = "legendre-shifted"
    LegendreShiftedNormalized = "legendre-shifted-normalized"
    Chebyshev = "chebyshev"
    ChebyshevNormalized = "chebyshev-normalized"

    @property
    def domain(self) -> tuple[float, float]:
        if self in (Family.LegendreShifted, Family.LegendreShiftedNormalized):
            return 0.0, 1.0
        return -1.0, 1.0


@dataclass(frozen=True)
class PolySeries:
    family: Family
    coeffs: tuple

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float).ravel()
        if c.size == 0:
            raise ValueError("series needs at least one coefficient")
        if not np.all(np.isfinite(c)):
            raise ValueError("series coefficients must be finite")
        object.__setattr__(self, "coeffs", tuple(c.tolist()))

    @property
    def c(self) -> np.ndarray:
        return np.array(self.coeffs)


def _check(family: Family, t: np.ndarray, count: int | None = None) -> None:
    if count is not None and count < 1:
        raise ValueError("count must be positive")
    lo, hi = family.domain
    if t.size and (np.min(t) < lo or np.max(t) > hi or not np.all(np.isfinite(t))):
        raise ValueError(f"evaluation point outside [{lo}, {hi}] for {family.value}")


def _scale(family: Family, count: int) -> np.ndarray:
    nu = np.arange(count)
    if family is Family.LegendreShiftedNormalized:
        return np.sqrt(2.0 * nu + 1.0)
    if family is Family.ChebyshevNormalized:
        s = np.full(count, np.sqrt(2.0 / np.pi))
        s[0] = np.sqrt(1.0 / np.pi)
        return s
    return np.ones(count)


def table(family: Family, count: int, t) -> tuple[np.ndarray, np.ndarray]:
    """Values and derivatives of the first `count` members at each point of t.

    Returns two arrays of shape (len(t), count).
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    _check(family, t, count)
    if family in (Family.LegendreShifted, Family.LegendreShiftedNormalized):
        v, d = kernels.legendre_table(2.0 * t - 1.0, count)
        d = 2.0 * d
    elif family is Family.Legendre:
        v, d = kernels.legendre_table(t, count)
    else:
        v, d = kernels.chebyshev_table(t, count)
    s = _scale(family, count)
    return v * s, d * s


def eval_all(family: Family, count: int, t: float) -> np.ndarray:
    return table(family, count, [t])[0][0]


def eval_all_derivatives(family: Family, count: int, t: float) -> np.ndarray:
    return table(family, count, [t])[1][0]


def clenshaw(series: PolySeries, t):
    """Sum c_nu * member_nu(t) by the backward recurrence."""
    fam = series.family
    ta = np.asarray(t, dtype=float)
    _check(fam, np.atleast_1d(ta))
    c = series.c * _scale(fam, len(series.coeffs))
    if fam in (Family.LegendreShifted, Family.LegendreShiftedNormalized):
        out = kernels.clenshaw_legendre(c, 2.0 * np.atleast_1d(ta) - 1.0)
    elif fam is Family.Legendre:
        out = kernels.clenshaw_legendre(c, np.atleast_1d(ta))
    else:
        out = kernels.clenshaw_chebyshev(c, np.atleast_1d(ta))
    out = np.asarray(out).reshape(np.shape(ta))
    return float(out) if out.ndim == 0 else out


def _antideriv_legendre(c: np.ndarray) -> np.ndarray:
    out = np.zeros(c.size + 1)
    out[0] += c[0]
    out[1] += c[0]
    for nu in range(1, c.size):
        out[nu + 1] += c[nu] / (2 * nu + 1)
        out[nu - 1] -= c[nu] / (2 * nu + 1)
    return out


def _antideriv_chebyshev(c: np.ndarray) -> np.ndarray:
    out = np.zeros(c.size + 1)
    out[0] += c[0]
    out[1] += c[0]
    if c.size > 1:
        out[2] += c[1] / 4.0
        out[0] -= c[1] / 4.0
    for nu in range(2, c.size):
        den = 2.0 * (nu * nu - 1)
        out[nu + 1] += c[nu] * (nu - 1) / den
        out[nu - 1] -= c[nu] * (nu + 1) / den
        out[0] += c[nu] * 2.0 * (-1) ** (nu - 1) / den
    return out


def antiderivative_coeffs(series: PolySeries) -> PolySeries:
    """Coefficients of F(tau) = int_{-1}^{tau} s, same family, degree + 1."""
    if series.family is Family.Legendre:
        return PolySeries(Family.Legendre, _antideriv_legendre(series.c))
    if series.family is Family.Chebyshev:
        return PolySeries(Family.Chebyshev, _antideriv_chebyshev(series.c))
    raise ValueError(f"antiderivative map not available for {series.family.value}")
