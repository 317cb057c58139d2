"""Coherent states: normalization, overlaps, resolution, ladder, structure."""

import math

import numpy as np
import pytest

from qherm.coherent import (
    BasisMismatch,
    CanonicalFamily,
    ConjugateCanonicalFamily,
    HermiteNMFamily,
    HermiteSFamily,
    LadderResult,
    TruncationInsufficient,
    antiregularity_report,
    cs_build,
    eval_bound_margin,
    family_by_tag,
    isometry_W,
    isometry_norm_error,
    ladder,
    overlap,
    reg_antireg_intersection,
    resolution_of_identity,
)
from qherm.kernels import bargmann_kernel
from qherm.quaternion import Quaternion, quat_allclose, random_quaternion
from qherm.series import Mode, cullen_derivative, QSeries, Side, eval_series

RNG = np.random.default_rng(31415)


def test_canonical_cs_at_origin():
    v = cs_build(CanonicalFamily(), Quaternion(0.0), m_max=10)
    assert v.coeffs[0] == Quaternion(1.0)
    assert all(c == Quaternion(0.0) for c in v.coeffs[1:])
    assert v.norm_factor == pytest.approx(1.0)


def clipped_sample(rng, scale=0.6, radius=1.5):
    q = random_quaternion(rng, scale=scale)
    r = float(q.norm())
    return q * (radius / r) if r > radius else q


@pytest.mark.parametrize("family", [
    CanonicalFamily(),
    HermiteSFamily(0.5),
    HermiteNMFamily(1),
])
def test_cs_normalized(family):
    for _ in range(10):
        q = clipped_sample(RNG)
        v = cs_build(family, q, m_max=40)
        value = overlap(v, v)
        assert value.x0 == pytest.approx(1.0, abs=1e-8)
        assert abs(value.x1) + abs(value.x2) + abs(value.x3) < 1e-10
        assert 0.0 < v.norm_factor < math.inf


def test_cs_truncation_guard():
    with pytest.raises(TruncationInsufficient):
        cs_build(CanonicalFamily(), Quaternion(2.0), m_max=2)


def test_overlap_basis_mismatch():
    q = random_quaternion(RNG, scale=0.3)
    a = cs_build(CanonicalFamily(), q, m_max=40)
    b = cs_build(HermiteSFamily(0.5), q, m_max=40)
    with pytest.raises(BasisMismatch):
        overlap(a, b)
    c = cs_build(CanonicalFamily(), q, m_max=41)
    with pytest.raises(BasisMismatch):
        overlap(a, c)


def test_canonical_overlap_with_origin():
    q = random_quaternion(RNG, scale=0.7)
    a = cs_build(CanonicalFamily(), Quaternion(0.0), m_max=30)
    b = cs_build(CanonicalFamily(), q, m_max=30)
    value = overlap(a, b)
    expected = math.exp(-q.norm_sq() / 2.0)
    assert value.x0 == pytest.approx(expected, rel=1e-9)
    assert abs(value.x1) + abs(value.x2) + abs(value.x3) < 1e-12


def test_overlap_reproduces_bargmann_kernel():
    for _ in range(10):
        q1 = random_quaternion(RNG, scale=0.6)
        q2 = random_quaternion(RNG, scale=0.6)
        a = cs_build(CanonicalFamily(), q1, m_max=40)
        b = cs_build(CanonicalFamily(), q2, m_max=40)
        scaled = overlap(a, b) * math.sqrt(a.norm_factor * b.norm_factor)
        kernel = bargmann_kernel(q1, q2).value
        assert float((scaled - kernel).norm()) < 1e-9 * max(
            1.0, float(kernel.norm()))


def test_resolution_of_identity_canonical():
    family = CanonicalFamily()
    report = resolution_of_identity(family, family.spec(5), m_max=5)
    assert report["max_deviation"] < 1e-6


def test_resolution_of_identity_hermite_s():
    family = HermiteSFamily(0.5)
    report = resolution_of_identity(family, family.spec(4), m_max=4)
    assert report["max_deviation"] < 1e-6


def test_resolution_of_identity_hermite_nm():
    family = HermiteNMFamily(1)
    report = resolution_of_identity(family, family.spec(4), m_max=4)
    assert report["max_deviation"] < 1e-6


def test_isometry_on_basis_vectors():
    family = CanonicalFamily()
    q = random_quaternion(RNG, scale=0.8)
    for m in range(4):
        coeffs = [Quaternion(0.0)] * 5
        coeffs[m] = Quaternion(1.0)
        image = isometry_W(tuple(coeffs), family, q)
        expected = q.conj() ** m * (1.0 / math.sqrt(math.factorial(m)))
        assert quat_allclose(image, expected, atol=1e-12)
    zero = tuple(Quaternion(0.0) for _ in range(5))
    assert isometry_W(zero, family, q) == Quaternion(0.0)


def test_isometry_preserves_norm():
    family = CanonicalFamily()
    coeffs = tuple(Quaternion(*RNG.normal(size=4)) for _ in range(5))
    err = isometry_norm_error(family, family.spec(4), coeffs)
    assert err < 1e-6


def test_eval_bound():
    family = CanonicalFamily()
    coeffs = tuple(Quaternion(*RNG.normal(size=4)) for _ in range(6))
    for _ in range(20):
        q = random_quaternion(RNG, scale=0.8)
        assert eval_bound_margin(family, coeffs, q) >= -1e-12


def test_antiregularity_of_w_images():
    family = CanonicalFamily()
    samples = [random_quaternion(RNG, scale=0.7) for _ in range(5)]
    report = antiregularity_report(family, samples, h=1e-4)
    assert report["max_residual"] < 1e-7


def test_conjugate_family_images_are_regular():
    family = ConjugateCanonicalFamily()
    samples = [random_quaternion(RNG, scale=0.7) for _ in range(5)]
    report = antiregularity_report(family, samples, h=1e-4,
                                   mode=Mode.REGULAR)
    assert report["max_residual"] < 1e-7


def test_ladder_operations():
    basis = lambda m, size: tuple(
        Quaternion(1.0) if k == m else Quaternion(0.0) for k in range(size))
    lowered = ladder("lower", basis(0, 5))
    assert all(c == Quaternion(0.0) for c in lowered.coeffs)
    lowered = ladder("lower", basis(3, 5))
    assert lowered.coeffs[2].x0 == pytest.approx(math.sqrt(3.0))
    raised = ladder("raise", basis(2, 5))
    assert raised.coeffs[3].x0 == pytest.approx(math.sqrt(3.0))
    assert raised.truncation_loss == 0.0
    spills = ladder("raise", basis(4, 5))
    assert spills.truncation_loss == pytest.approx(math.sqrt(5.0))
    with pytest.raises(ValueError):
        ladder("sideways", basis(0, 3))


def test_ladder_commutator_off_top():
    coeffs = tuple(Quaternion(*RNG.normal(size=4)) for _ in range(6))
    down_up = ladder("lower", ladder("raise", coeffs).coeffs).coeffs
    up_down = ladder("raise", ladder("lower", coeffs).coeffs).coeffs
    for m in range(5):  # the top index feels the truncation
        commutator = down_up[m] - up_down[m]
        assert quat_allclose(commutator, coeffs[m], atol=1e-12)


def test_lowering_matches_cullen_derivative():
    # realization e_m -> q^m / sqrt(m!): lowering is the slice derivative
    size = 6
    for m in range(1, size):
        poly = [0.0] * size
        poly[m] = 1.0 / math.sqrt(math.factorial(m))
        series = QSeries(Side.LEFT, tuple(poly))
        deriv = cullen_derivative(series)
        coeffs = tuple(Quaternion(1.0) if k == m else Quaternion(0.0)
                       for k in range(size))
        lowered = ladder("lower", coeffs)
        q = random_quaternion(RNG, scale=0.9)
        realized = Quaternion(0.0)
        for k, c in enumerate(lowered.coeffs):
            realized = realized + c * q ** k * (
                1.0 / math.sqrt(math.factorial(k)))
        assert quat_allclose(eval_series(deriv, q), realized, atol=1e-10)


def test_reg_antireg_intersection():
    report = reg_antireg_intersection(5)
    assert report["corner"] == pytest.approx(1.0, abs=1e-10)
    assert report["max_off_corner"] < 1e-7
    entries = np.asarray(report["entries"])
    assert entries[1, 2] < 1e-8


def test_family_by_tag():
    assert family_by_tag("canonical").tag == "canonical"
    assert family_by_tag("hermite-s", s=0.3).tag == "hermite-s(0.3)"
    assert family_by_tag("hermite-nm", n=2).tag == "hermite-nm(2)"
    with pytest.raises(ValueError):
        family_by_tag("nope")
