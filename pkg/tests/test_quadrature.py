"""Quadrature rules: masses, moments, orthogonality integrals."""

import math

import numpy as np
import pytest

from qherm.hermite import b_n, h_nm_eval_q, h_nm_eval_z, h_nm_sequence, \
    hermite_normalized_sequence, hermite_z
from qherm.polynomials import poly1_eval
from qherm.quadrature import (
    QuadratureSpec,
    gauss_hermite,
    gram_deviation_from_identity,
    haar_su2,
    integrate_C,
    integrate_H,
    integrate_H_matrix,
    mc_two_index_norm,
    orders_for_degree,
    planar_gauss_lambda,
    planar_nu,
    quaternion_gram,
    rule_from_json,
    rule_to_json,
    slice_points,
    spec_gauss_lambda,
    spec_nu,
    worker_count,
)
from qherm.quaternion import Quaternion, quat_allclose


def test_gauss_hermite_basic_moments():
    rule = gauss_hermite(1, 1.0)
    assert rule.nodes[0] == pytest.approx(0.0)
    assert rule.weights[0] == pytest.approx(math.sqrt(math.pi))
    rule = gauss_hermite(8, 1.0)
    assert np.sum(rule.weights * rule.nodes ** 2) == pytest.approx(
        math.sqrt(math.pi) / 2.0, rel=1e-13)


def test_gauss_hermite_classical_norm():
    rule = gauss_hermite(12, 1.0)
    values = np.array([poly1_eval((0, -12, 0, 8), x) for x in rule.nodes])
    integral = np.sum(rule.weights * values * values)
    assert integral == pytest.approx(48.0 * math.sqrt(math.pi), rel=1e-12)


def test_gauss_hermite_alpha_scaling():
    rule = gauss_hermite(6, 2.5)
    assert rule.total_mass() == pytest.approx(math.sqrt(math.pi / 2.5),
                                              rel=1e-13)
    with pytest.raises(ValueError):
        gauss_hermite(0)
    with pytest.raises(ValueError):
        gauss_hermite(4, -1.0)


def test_planar_masses():
    s = 0.5
    rule = planar_nu(s, 40)
    assert rule.total_mass() == pytest.approx(b_n(s, 0), rel=1e-12)
    lam = planar_gauss_lambda(30)
    assert lam.total_mass() == pytest.approx(1.0, rel=1e-12)


def test_integrate_C_constant_and_norm():
    lam = planar_gauss_lambda(30)
    assert integrate_C(lambda z: np.ones_like(z, dtype=float), lam) \
        == pytest.approx(1.0, rel=1e-12)
    # squared norm of the (1,1) two-index member is 1!1! = 1
    val = integrate_C(lambda z: np.abs(h_nm_eval_z(1, 1, z)) ** 2, lam)
    assert val == pytest.approx(1.0, rel=1e-10)


def test_integrate_C_single_index_orthogonality():
    s = 0.5
    rule = planar_nu(s, 80)
    val = integrate_C(
        lambda z: hermite_z(1, z) * np.conj(hermite_z(2, z)), rule)
    assert abs(val) < 1e-10
    diag = integrate_C(
        lambda z: hermite_z(3, z) * np.conj(hermite_z(3, z)), rule)
    assert diag.real == pytest.approx(b_n(s, 3), rel=1e-12)


def test_haar_rule_mass_and_symmetry():
    rule = haar_su2(12, 24)
    assert rule.total_mass() == pytest.approx(1.0, rel=1e-13)
    # average of cos(phi) over the sphere vanishes
    assert np.sum(rule.weights * np.cos(rule.phi)) == pytest.approx(
        0.0, abs=1e-14)
    dirs = rule.unit_imaginaries()
    assert np.allclose(np.sum(rule.weights[:, None] * dirs, axis=0), 0.0,
                       atol=1e-14)


def test_haar_unitaries_average():
    rule = haar_su2(10, 16)
    u = rule.unitaries()
    w = rule.unitary_weights()
    # unitarity makes the u u^dagger average trivially the identity
    acc = np.einsum("k,kab->ab", w, u @ np.swapaxes(u.conj(), 1, 2))
    assert np.max(np.abs(acc - np.eye(2))) < 1e-12
    # a diagonal matrix averages to half its trace
    m = np.diag([1.0, 3.0]).astype(complex)
    avg = np.einsum("k,kab->ab", w, u @ m @ np.swapaxes(u.conj(), 1, 2))
    assert np.max(np.abs(avg - 2.0 * np.eye(2))) < 1e-12


def test_haar_three_angle_flag_for_off_diagonal():
    # off-diagonal integrands need the residual-phase average
    m = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    two = haar_su2(10, 16)
    u2 = two.unitaries()
    avg2 = np.einsum("k,kab->ab", two.unitary_weights(),
                     u2 @ m @ np.swapaxes(u2.conj(), 1, 2))
    assert np.max(np.abs(avg2)) > 0.1
    three = haar_su2(10, 16, n_alpha=4)
    u3 = three.unitaries()
    avg3 = np.einsum("k,kab->ab", three.unitary_weights(),
                     u3 @ m @ np.swapaxes(u3.conj(), 1, 2))
    assert np.max(np.abs(avg3)) < 1e-13


def test_spec_mass():
    spec = spec_nu(0.5, 40, 8, 16)
    one = Quaternion(1.0)
    val = integrate_H(lambda q: one, spec)
    assert val.x0 == pytest.approx(b_n(0.5, 0), rel=1e-12)
    assert abs(val.x1) + abs(val.x2) + abs(val.x3) < 1e-14


def test_integrate_H_single_index_norm():
    # resolves the normalization question: the squared norm of the
    # b_n-normalized member is 1 (no extra factorial)
    s = 0.5
    spec = spec_nu(s, 60, 10, 20)
    def f(q):
        e1 = hermite_normalized_sequence(q, s, 1)[1]
        return e1 * e1.conj()
    val = integrate_H(f, spec)
    assert val.x0 == pytest.approx(1.0, rel=1e-7)
    extra_factorial_candidate = math.factorial(1) * 1.0
    # for n=1 both candidates coincide; n=2 separates them
    def f2(q):
        e2 = hermite_normalized_sequence(q, s, 2)[2]
        return e2 * e2.conj()
    val2 = integrate_H(f2, spec)
    assert val2.x0 == pytest.approx(1.0, rel=1e-7)
    assert abs(val2.x0 - math.factorial(2)) > 0.5


def test_integrate_H_two_index_orthogonality():
    spec = spec_gauss_lambda(30, 10, 20)
    def cross(q):
        return h_nm_eval_q(1, 2, q) * h_nm_eval_q(2, 1, q).conj()
    val = integrate_H(cross, spec)
    assert float(val.norm()) < 1e-8
    def diag(q):
        v = h_nm_eval_q(2, 1, q)
        return v * v.conj()
    val = integrate_H(diag, spec)
    assert val.x0 == pytest.approx(2.0, rel=1e-10)


def test_integrate_H_matrix_form():
    spec = spec_gauss_lambda(20, 6, 12)
    mat = integrate_H_matrix(lambda q: Quaternion(1.0), spec)
    assert np.allclose(mat, np.eye(2), atol=1e-12)


def test_quaternion_gram_matches_pairwise():
    s = 0.5
    spec = spec_nu(s, 40, 10, 20)
    k = 4

    def members(q):
        return hermite_normalized_sequence(q, s, k - 1)

    gram = quaternion_gram(members, spec)
    assert gram.shape == (4, k, k)
    for i in range(k):
        for j in range(k):
            def pair(q, i=i, j=j):
                vals = hermite_normalized_sequence(q, s, k - 1)
                return vals[i] * vals[j].conj()
            direct = integrate_H(pair, spec)
            entry = Quaternion(*gram[:, i, j])
            assert quat_allclose(entry, direct, atol=1e-12)
    assert gram_deviation_from_identity(gram) < 1e-7


def test_quaternion_gram_conjugate_first():
    spec = spec_gauss_lambda(24, 8, 16)

    def members(q):
        return h_nm_sequence(q, 0, 3)

    gram = quaternion_gram(members, spec, conjugate="first")
    expected = np.diag([math.factorial(m) for m in range(4)])
    assert np.max(np.abs(gram[0] - expected)) < 1e-10
    assert np.max(np.abs(gram[1:])) < 1e-12


def test_doubling_stability():
    s = 0.5
    coarse = spec_nu(s, 40, 10, 20)
    fine = spec_nu(s, 80, 20, 40)
    def f(q):
        e = hermite_normalized_sequence(q, s, 3)[3]
        return e * e.conj()
    a = integrate_H(f, coarse)
    b = integrate_H(f, fine)
    assert float((a - b).norm()) < 1e-9


def test_mc_cross_check():
    for n, m in [(0, 0), (1, 1), (2, 3), (3, 3)]:
        est, err = mc_two_index_norm(n, m, 200_000, seed=123 + n + 10 * m)
        expected = math.factorial(n) * math.factorial(m)
        assert abs(est - expected) < 3.0 * err + 1e-12


def test_orders_for_degree_are_exact():
    planar, n_phi, n_psi = orders_for_degree(12)
    spec = spec_gauss_lambda(planar, n_phi, n_psi)
    def diag(q):
        v = h_nm_eval_q(3, 3, q)
        return v * v.conj()
    val = integrate_H(diag, spec)
    assert val.x0 == pytest.approx(36.0, rel=1e-11)


def test_threads_do_not_change_result(monkeypatch):
    spec = spec_gauss_lambda(20, 8, 16)
    def f(q):
        v = h_nm_eval_q(1, 1, q)
        return v * v.conj()
    serial = integrate_H(f, spec, threads=1)
    threaded = integrate_H(f, spec, threads=4)
    assert serial == threaded
    monkeypatch.setenv("QHERM_THREADS", "3")
    assert worker_count() == 3
    monkeypatch.setenv("QHERM_THREADS", "junk")
    assert worker_count() == 1


def test_rule_json_roundtrip():
    rule = gauss_hermite(5, 2.0)
    back = rule_from_json(rule_to_json(rule))
    assert np.array_equal(rule.nodes, back.nodes)
    assert np.array_equal(rule.weights, back.weights)
    assert back.kind == rule.kind


def test_slice_points_shape():
    spec = spec_gauss_lambda(10, 4, 8)
    pts = slice_points(spec, 0)
    assert np.shape(pts.x0) == (100,)
