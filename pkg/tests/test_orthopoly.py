import numpy as np
import pytest

import oracles
from daelsq import kernels
from daelsq.orthopoly import (Family, PolySeries, antiderivative_coeffs, clenshaw, eval_all,
                              eval_all_derivatives, table)


def test_legendre_at_minus_one_alternates():
    assert np.allclose(eval_all(Family.Legendre, 3, -1.0), [1, -1, 1])


def test_chebyshev_values_by_hand():
    assert np.allclose(eval_all(Family.Chebyshev, 4, 0.5), [1, 0.5, -0.5, -1])


def test_derivatives_by_hand():
    assert np.allclose(eval_all_derivatives(Family.Legendre, 3, 1.0), [0, 1, 3])
    assert np.allclose(eval_all_derivatives(Family.Chebyshev, 3, -1.0), [0, 1, -4])


def test_table_matches_scipy():
    x = np.linspace(-1, 1, 41)
    v, d = table(Family.Legendre, 25, x)
    assert np.allclose(v, oracles.legendre_values(25, x), atol=1e-13)
    assert np.allclose(d, oracles.legendre_derivs(25, x), rtol=1e-12, atol=1e-10)
    vc, _ = table(Family.Chebyshev, 25, x)
    assert np.allclose(vc, oracles.chebyshev_values(25, x), atol=1e-13)


def test_shifted_normalized_family():
    t = np.linspace(0, 1, 11)
    v, d = table(Family.LegendreShiftedNormalized, 6, t)
    ref = oracles.legendre_values(6, 2 * t - 1) * np.sqrt(2 * np.arange(6) + 1)
    assert np.allclose(v, ref, atol=1e-13)
    dref = oracles.legendre_derivs(6, 2 * t - 1) * 2 * np.sqrt(2 * np.arange(6) + 1)
    assert np.allclose(d, dref, atol=1e-11)


def test_clenshaw_example_and_agreement():
    assert clenshaw(PolySeries(Family.Chebyshev, [1, 2, 3]), 0.5) == pytest.approx(0.5)
    rng = np.random.default_rng(3)
    c = rng.standard_normal(15)
    x = np.linspace(-1, 1, 17)
    assert np.allclose(clenshaw(PolySeries(Family.Legendre, c), x),
                       np.polynomial.legendre.legval(x, c), atol=1e-13)
    assert np.allclose(clenshaw(PolySeries(Family.Chebyshev, c), x),
                       np.polynomial.chebyshev.chebval(x, c), atol=1e-13)


def test_antiderivative_examples():
    assert np.allclose(antiderivative_coeffs(PolySeries(Family.Legendre, [1])).c, [1, 1])
    assert np.allclose(antiderivative_coeffs(PolySeries(Family.Legendre, [0, 0, 1])).c,
                       [0, -0.2, 0, 0.2])
    assert np.allclose(antiderivative_coeffs(PolySeries(Family.Chebyshev, [0, 0, 1])).c,
                       [-1 / 3, -0.5, 0, 1 / 6])


def test_antiderivative_against_numpy():
    rng = np.random.default_rng(0)
    c = rng.standard_normal(9)
    ref = np.polynomial.Legendre(c).integ(lbnd=-1).coef
    assert np.allclose(antiderivative_coeffs(PolySeries(Family.Legendre, c)).c, ref, atol=1e-14)
    refc = np.polynomial.Chebyshev(c).integ(lbnd=-1).coef
    assert np.allclose(antiderivative_coeffs(PolySeries(Family.Chebyshev, c)).c, refc,
                       atol=1e-14)


def test_domain_errors():
    with pytest.raises(ValueError):
        eval_all(Family.Legendre, 3, 1.5)
    with pytest.raises(ValueError):
        eval_all(Family.LegendreShifted, 3, -0.1)
    with pytest.raises(ValueError):
        PolySeries(Family.Legendre, [])
    with pytest.raises(ValueError):
        antiderivative_coeffs(PolySeries(Family.LegendreShiftedNormalized, [1.0]))


def test_python_fallback_agrees_with_backend():
    from daelsq import _kernels_py as py
    x = np.linspace(-1, 1, 33)
    for name in ("legendre_table", "chebyshev_table"):
        a = getattr(kernels, name)(x, 12)
        b = getattr(py, name)(x, 12)
        assert np.allclose(a[0], b[0], atol=1e-14) and np.allclose(a[1], b[1], atol=1e-12)
    c = np.arange(1.0, 8.0)
    assert np.allclose(kernels.clenshaw_legendre(c, x), py.clenshaw_legendre(c, x))
    assert np.allclose(kernels.clenshaw_chebyshev(c, x), py.clenshaw_chebyshev(c, x))


def test_environment_forces_fallback():
    import os
    import subprocess
    import sys
    env = dict(os.environ, DAELSQ_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from daelsq import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True).stdout
    assert out.strip() == "python"
