import numpy as np
import pytest

import oracles
from daelsq.nodes import (NodeKind, NodeSet, interpolatory_weights, lebesgue_constant,
                          make_nodes, nodal_poly_l2norm)
from daelsq.vandermonde import (build_vandermonde, cond2, lagrange_to_legendre, mass_factor,
                                mass_matrix)

KINDS = [k for k in NodeKind if k is not NodeKind.Custom]


@pytest.mark.parametrize("M", [1, 2, 5, 12, 30])
def test_gauss_legendre_against_scipy(M):
    ns = make_nodes("gle", M)
    x, w = oracles.gauss_legendre01(M)
    assert np.allclose(ns.nodes, x, atol=1e-15) and np.allclose(ns.weights, w, atol=1e-15)


@pytest.mark.parametrize("M", [2, 3, 6, 15])
def test_lobatto_and_radau_against_roots(M):
    assert np.allclose(make_nodes("lobatto", M).nodes, oracles.lobatto01(M), atol=1e-13)
    assert np.allclose(make_nodes("radau", M).nodes, oracles.radau_right01(M), atol=1e-13)


def test_small_rules():
    lo = make_nodes("lobatto", 3)
    assert np.allclose(lo.nodes, [0, 0.5, 1]) and np.allclose(lo.weights, [1 / 6, 2 / 3, 1 / 6])
    assert np.allclose(make_nodes("gle", 3).weights, [5 / 18, 8 / 18, 5 / 18], atol=1e-13)
    assert np.allclose(make_nodes("uniform-open", 4).nodes, [1 / 8, 3 / 8, 5 / 8, 7 / 8])


@pytest.mark.parametrize("kind", KINDS)
def test_weights_are_interpolatory(kind):
    ns = make_nodes(kind, 7)
    assert np.allclose(ns.weights, oracles.interpolatory_weights_quad(ns.nodes), atol=1e-12)
    assert ns.weights.sum() == pytest.approx(1.0, abs=1e-13)


def test_newton_cotes_nine_negative_and_rejected():
    ns = make_nodes("uniform-closed", 9)
    assert np.any(interpolatory_weights(ns) < 0)
    with pytest.raises(ValueError):
        mass_factor(ns, "I")


def test_nodeset_validation():
    with pytest.raises(ValueError):
        NodeSet(NodeKind.Custom, np.array([0.5, 0.2]))
    with pytest.raises(ValueError):
        NodeSet(NodeKind.Custom, np.array([0.1, 1.2]))
    with pytest.raises(ValueError):
        make_nodes("lobatto", 1)


@pytest.mark.parametrize("kind,M,value", [("chebyshev", 5, 1.989), ("gle", 20, 7.885),
                                          ("uniform-closed", 10, 17.849),
                                          ("lobatto", 15, 2.386)])
def test_lebesgue_printed(kind, M, value):
    assert lebesgue_constant(make_nodes(kind, M)) == pytest.approx(value, abs=5e-3)


@pytest.mark.parametrize("kind", ["chebyshev", "gle", "radau", "uniform-open"])
def test_lebesgue_against_brute_force(kind):
    ns = make_nodes(kind, 8)
    assert lebesgue_constant(ns) == pytest.approx(oracles.lebesgue_brute(ns.nodes), rel=1e-6)


def test_lebesgue_uniform_closed_five_is_classical():
    ns = make_nodes("uniform-closed", 5)
    assert lebesgue_constant(ns) == pytest.approx(oracles.FROZEN["lebesgue_uniform_closed_5"],
                                                  abs=1e-4)


@pytest.mark.parametrize("N", range(1, 11))
def test_nodal_norm_identity(N):
    got = nodal_poly_l2norm(make_nodes("gle", N))
    assert got == pytest.approx(oracles.nodal_norm_formula(N), rel=1e-12)


def test_nodal_norm_minimal_on_gauss():
    assert nodal_poly_l2norm(make_nodes("gle", 5)) < nodal_poly_l2norm(make_nodes("chebyshev", 5))


def test_vandermonde_two_nodes():
    V = build_vandermonde(np.array([0.0, 1.0]))
    s3 = np.sqrt(3.0)
    assert np.allclose(V, [[1, -s3], [1, s3]])
    assert np.allclose(lagrange_to_legendre(np.array([0.0, 1.0])),
                       [[0.5, 0.5], [-1 / (2 * s3), 1 / (2 * s3)]])
    assert np.allclose(mass_matrix(np.array([0.0, 1.0])), [[1 / 3, 1 / 6], [1 / 6, 1 / 3]])


def test_gauss_rows_orthogonal():
    V = build_vandermonde(make_nodes("gle", 8))
    G = V @ V.T
    assert np.allclose(G - np.diag(np.diag(G)), 0, atol=1e-12)


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("M", [2, 5, 10])
def test_mass_matrix_against_quadrature(kind, M):
    ns = make_nodes(kind, M)
    assert np.allclose(mass_matrix(ns), oracles.mass_matrix_quad(ns.nodes), atol=1e-12)


def test_first_row_is_weights():
    ns = make_nodes("radau", 6)
    assert np.allclose(lagrange_to_legendre(ns)[0], ns.weights, atol=1e-14)


@pytest.mark.parametrize("kind,M,value", [("gle", 5, 1.55), ("chebyshev", 20, 4.21),
                                          ("radau", 50, 8.86), ("uniform-closed", 5, 3.76),
                                          ("uniform-open", 20, 3.10e4)])
def test_cond2_printed(kind, M, value):
    assert cond2(build_vandermonde(make_nodes(kind, M))) == pytest.approx(value, rel=0.02)


def test_cond2_uniform_fifty_matches_high_precision():
    for kind, key in (("uniform-closed", "cond_cnc_50"), ("uniform-open", "cond_onc_50")):
        got = cond2(build_vandermonde(make_nodes(kind, 50)))
        assert got == pytest.approx(oracles.FROZEN[key], rel=0.02)


def test_cond2_singular_is_inf():
    assert cond2(build_vandermonde(make_nodes("uniform-closed", 100))) == np.inf
    assert cond2(np.array([[1.0, 1.0], [1.0, 1.0]])) == np.inf


def test_mass_factor_r_reproduces_mass():
    ns = make_nodes("gle", 2)
    f = mass_factor(ns, "R")
    assert np.allclose(f.matrix, mass_matrix(ns), atol=1e-13)
    assert np.allclose(mass_factor(ns, "C").matrix, np.eye(2) / 2)
    assert np.allclose(mass_factor(ns, "I").matrix, np.diag(ns.weights))
