"""Kernel series against closed forms and structural kernel properties."""

import math

import numpy as np
import pytest

from qherm.coherent import CanonicalFamily
from qherm.kernels import (
    K_n_series,
    K_s_closed_complex,
    K_s_closed_diagonal,
    K_s_printed_diagonal,
    K_s_series,
    K_s_series_complex,
    bargmann_kernel,
    expected_single_index_norm,
    frak_K_closed,
    frak_K_closed_diagonal,
    frak_K_series,
    idempotence_error,
    reproducing_error,
)
from qherm.quadrature import spec_gauss_lambda
from qherm.quaternion import (
    I as QI,
    J as QJ,
    Quaternion,
    q_exp,
    quat_allclose,
    random_quaternion,
    to_matrix,
)

RNG = np.random.default_rng(1618)
S = 0.5


def test_K_s_series_at_origin():
    got = K_s_series(Quaternion(0.0), Quaternion(0.0), S, n_max=60)
    expected = 0.75 / math.pi
    assert got.value.x0 == pytest.approx(expected, abs=1e-9)
    assert got.converged


def test_K_s_closed_at_origin():
    assert K_s_closed_complex(0.0, 0.0, S) == pytest.approx(0.75 / math.pi)
    assert K_s_closed_diagonal(Quaternion(0.0), S) == pytest.approx(
        0.75 / math.pi)


def test_K_s_series_hermitian_and_positive():
    for _ in range(20):
        q1 = random_quaternion(RNG, scale=0.6)
        q2 = random_quaternion(RNG, scale=0.6)
        k12 = K_s_series(q1, q2, S).value
        k21 = K_s_series(q2, q1, S).value
        assert quat_allclose(k12, k21.conj(), atol=1e-12)
        diag = K_s_series(q1, q1, S).value
        assert diag.x0 > 0.0
        assert abs(diag.x1) + abs(diag.x2) + abs(diag.x3) == 0.0


def test_complex_series_matches_closed_form():
    for _ in range(50):
        z = complex(RNG.uniform(-1.5, 1.5), RNG.uniform(-1.5, 1.5))
        w = complex(RNG.uniform(-1.5, 1.5), RNG.uniform(-1.5, 1.5))
        series = K_s_series_complex(z, w, S)
        closed = K_s_closed_complex(z, w, S)
        assert abs(series - closed) / abs(closed) < 1e-9


def test_quaternionic_diagonal_matches_closed_reduction():
    for _ in range(100):
        q = random_quaternion(RNG, scale=0.75)
        got = K_s_series(q, q, S).value
        mat = to_matrix(got)
        assert abs(mat[0, 1]) < 1e-10 and abs(mat[1, 0]) < 1e-10
        closed = K_s_closed_diagonal(q, S)
        assert abs(got.x0 - closed) / closed < 1e-9


def test_printed_diagonal_shortcut_disagrees():
    # recorded resolution: the shortcut exponent is inconsistent with the
    # off-diagonal closed form evaluated at w = z
    z = complex(0.8, 0.4)
    consistent = K_s_closed_complex(z, z, S).real
    shortcut = K_s_printed_diagonal(z, S)
    assert abs(K_s_closed_diagonal(Quaternion(z.real, z.imag), S)
               - consistent) < 1e-12 * consistent
    assert abs(shortcut - consistent) / consistent > 0.1


def test_frak_kernel_series_and_diagonal():
    assert frak_K_closed(0.0, 0.0, S) == pytest.approx(
        (1 - S * S) / (2 * math.pi * S))
    for _ in range(50):
        z = complex(RNG.uniform(-1.2, 1.2), RNG.uniform(-1.2, 1.2))
        w = complex(RNG.uniform(-1.2, 1.2), RNG.uniform(-1.2, 1.2))
        series = frak_K_series(z, w, S)
        closed = frak_K_closed(z, w, S)
        assert abs(series - closed) / abs(closed) < 1e-9
    z = complex(0.5, -0.3)
    assert frak_K_closed(z, z, S).real == pytest.approx(
        frak_K_closed_diagonal(z, S), rel=1e-12)
    assert abs(frak_K_closed(z, z, S).imag) < 1e-15


def test_K_n_series_diagonal_is_exponential():
    for _ in range(25):
        q = random_quaternion(RNG, scale=0.7)
        got = K_n_series(q, q, 0)
        expected = math.exp(q.norm_sq())
        assert got.value.x0 == pytest.approx(expected, rel=1e-9)
    assert K_n_series(Quaternion(0.0), Quaternion(0.0), 0).value.x0 \
        == pytest.approx(1.0)


def test_K_n_series_hermitian():
    for n in range(4):
        q1 = random_quaternion(RNG, scale=0.5)
        q2 = random_quaternion(RNG, scale=0.5)
        k12 = K_n_series(q1, q2, n).value
        k21 = K_n_series(q2, q1, n).value
        assert quat_allclose(k12, k21.conj(), atol=1e-10)


def test_truncation_monotone_on_diagonal():
    q = random_quaternion(RNG, scale=0.8)
    values = [K_s_series(q, q, S, n_max=n).value.x0 for n in range(1, 30)]
    diffs = np.diff(values)
    assert np.all(diffs >= -1e-15)


def test_bargmann_kernel_values():
    q = random_quaternion(RNG, scale=0.8)
    assert bargmann_kernel(q, Quaternion(0.0)).value == Quaternion(1.0)
    assert bargmann_kernel(Quaternion(0.0), q).value == Quaternion(1.0)
    diag = bargmann_kernel(q, q).value
    assert diag.x0 == pytest.approx(math.exp(q.norm_sq()), rel=1e-9)
    assert abs(diag.x1) + abs(diag.x2) + abs(diag.x3) == 0.0


def test_bargmann_noncommutativity_witness():
    series = bargmann_kernel(QI, QJ, n_max=20).value
    naive = q_exp(QI * QJ.conj())
    assert float((series - naive).norm()) > 0.5
    # the true value interleaves hyperbolic and trigonometric weights
    expected = Quaternion(math.cosh(1.0), 0.0, 0.0, -math.sinh(1.0))
    assert quat_allclose(series, expected, atol=1e-12)


def test_reproducing_property_canonical():
    family = CanonicalFamily()
    spec = spec_gauss_lambda(24, 8, 16)
    samples = [random_quaternion(RNG, scale=0.6) for _ in range(4)]
    basis_f = tuple([Quaternion(1.0)] + [Quaternion(0.0)] * 5)
    assert reproducing_error(family, spec, samples, basis_f, 5) < 1e-6
    zero = tuple(Quaternion(0.0) for _ in range(6))
    assert reproducing_error(family, spec, samples, zero, 5) == 0.0
    coeffs = tuple(Quaternion(*RNG.normal(size=4)) for _ in range(6))
    assert reproducing_error(family, spec, samples, coeffs, 5) < 1e-6


def test_kernel_idempotence():
    family = CanonicalFamily()
    spec = spec_gauss_lambda(28, 10, 20)
    xs = [random_quaternion(RNG, scale=0.5) for _ in range(2)]
    zs = [random_quaternion(RNG, scale=0.5) for _ in range(2)]
    assert idempotence_error(family, spec, xs, zs, 6) < 1e-6


def test_norm_convention_values():
    assert expected_single_index_norm(S, 2) == pytest.approx(
        math.pi * math.sqrt(2) * 36.0 * 2.0)
    assert expected_single_index_norm(S, 2, "extra_factorial") \
        == pytest.approx(math.pi * math.sqrt(2) * 36.0 * 4.0)
    with pytest.raises(ValueError):
        expected_single_index_norm(S, 2, "bogus")
