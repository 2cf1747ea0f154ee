"""The frozen reference values are rederived here from their oracles."""
import math

import numpy as np
import pytest

import oracles
from oracles import FROZEN


def test_frozen_lebesgue():
    got = oracles.lebesgue_brute(np.linspace(0, 1, 5))
    assert got == pytest.approx(FROZEN["lebesgue_uniform_closed_5"], abs=1e-4)


@pytest.mark.slow
def test_frozen_cond_uniform_fifty():
    cnc = oracles.vandermonde_mp(np.linspace(0, 1, 50))
    onc = oracles.vandermonde_mp((np.arange(1, 51) - 0.5) / 50)
    assert cnc == pytest.approx(FROZEN["cond_cnc_50"], rel=1e-3)
    assert onc == pytest.approx(FROZEN["cond_onc_50"], rel=1e-3)


def test_frozen_nodal_norm():
    assert oracles.nodal_norm_formula(3) == pytest.approx(FROZEN["nodal_norm_3"], rel=1e-14)
    assert FROZEN["nodal_norm_3"] == pytest.approx(36 / (720 * math.sqrt(7)), rel=1e-14)


def test_frozen_exact_norms():
    def x3(t):
        return np.stack([np.exp(-2 * t) * np.sin(t), np.exp(-t) * np.cos(t),
                         np.exp(-t) * np.sin(t)], -1)

    def d3(t):
        return np.stack([np.exp(-2 * t) * (np.cos(t) - 2 * np.sin(t)),
                         -np.exp(-t) * (np.cos(t) + np.sin(t))], -1)

    def x7(t):
        s, c = np.sin(t), np.cos(t)
        return np.stack([s, c, 2 * c * c, c, -s, -2 * np.sin(2 * t), -s / 5], -1)

    def d7(t):
        s, c = np.sin(t), np.cos(t)
        return np.stack([c, -s, -2 * np.sin(2 * t), -s, -c, -4 * np.cos(2 * t)], -1)

    l2 = oracles.l2_norm_quad(x3, 0, 1)
    assert l2 == pytest.approx(FROZEN["index3_l2"], rel=1e-4)
    assert math.hypot(l2, oracles.l2_norm_quad(d3, 0, 1)) == pytest.approx(
        FROZEN["index3_h1d"], rel=1e-4)
    l2 = oracles.l2_norm_quad(x7, 0, 5)
    assert l2 == pytest.approx(FROZEN["cm_l2"], rel=1e-3)
    assert math.hypot(l2, oracles.l2_norm_quad(d7, 0, 5)) == pytest.approx(
        FROZEN["cm_h1d"], rel=1e-4)
