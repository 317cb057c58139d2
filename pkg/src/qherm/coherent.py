"""Coherent states over the left quaternionic Hilbert space conventions.

A frame family supplies functions Phi_m together with the weight N(q) =
sum_m |Phi_m(q)|^2 and the plane-times-group measure under which the Phi_m
are orthonormal.  Coherent-state coefficient vectors store the quaternions
N(q)^{-1/2} Phi_m(q) (scalars act from the left everywhere; overlaps are
sum_m a_m conj(b_m) in ascending m and are never commuted).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .hermite import h_nm_sequence, hermite_normalized_sequence
from .quadrature import (
    QuadratureSpec,
    gram_deviation_from_identity,
    orders_for_degree,
    quaternion_gram,
    spec_gauss_lambda,
    spec_nu,
)
from .quaternion import Quaternion
from .series import Mode, Side, regularity_residual


class TruncationInsufficient(RuntimeError):
    """The truncated coefficient tail exceeds the requested tolerance."""


class BasisMismatch(ValueError):
    """Operands were built over different families or truncations."""


class CanonicalFamily:
    """Phi_m(q) = q^m / sqrt(m!), weight exp(|q|^2)."""

    tag = "canonical"

    def phi(self, q: Quaternion, m_max: int):
        values = [q * 0 + 1.0]
        for m in range(1, m_max + 1):
            values.append(values[-1] * q * (1.0 / math.sqrt(m)))
        return values

    def norm_factor(self, q: Quaternion) -> float:
        return float(np.exp(q.norm_sq()))

    def member_degree(self, m_max: int) -> int:
        return m_max

    def spec(self, m_max: int) -> QuadratureSpec:
        planar, n_phi, n_psi = orders_for_degree(2 * m_max)
        return spec_gauss_lambda(planar, n_phi, n_psi)


class ConjugateCanonicalFamily:
    """Phi_m(q) = conj(q)^m / sqrt(m!); its W-images are regular instead of
    anti-regular, the mirror check of the main construction."""

    tag = "canonical-conjugate"

    def phi(self, q: Quaternion, m_max: int):
        qc = q.conj()
        values = [q * 0 + 1.0]
        for m in range(1, m_max + 1):
            values.append(values[-1] * qc * (1.0 / math.sqrt(m)))
        return values

    def norm_factor(self, q: Quaternion) -> float:
        return float(np.exp(q.norm_sq()))

    def member_degree(self, m_max: int) -> int:
        return m_max

    def spec(self, m_max: int) -> QuadratureSpec:
        planar, n_phi, n_psi = orders_for_degree(2 * m_max)
        return spec_gauss_lambda(planar, n_phi, n_psi)


class HermiteSFamily:
    """Phi_n(q) = H_n^s(q), weight = the single-index kernel diagonal."""

    def __init__(self, s: float):
        if not 0.0 < s < 1.0:
            raise ValueError("s must lie in (0, 1)")
        self.s = s
        self.tag = f"hermite-s({s})"

    def phi(self, q: Quaternion, m_max: int):
        return hermite_normalized_sequence(q, self.s, m_max)

    def norm_factor(self, q: Quaternion) -> float:
        return float(kernels.K_s_closed_diagonal(q, self.s))

    def member_degree(self, m_max: int) -> int:
        return m_max

    def spec(self, m_max: int) -> QuadratureSpec:
        planar, n_phi, n_psi = orders_for_degree(2 * m_max)
        return spec_nu(self.s, max(planar, 40), n_phi, n_psi)


class HermiteNMFamily:
    """Phi_m(q) = h_{n,m}(q, conj q) / sqrt(n! m!) for a fixed level n."""

    def __init__(self, n: int):
        if n < 0:
            raise ValueError("level must be nonnegative")
        self.n = n
        self.tag = f"hermite-nm({n})"

    def phi(self, q: Quaternion, m_max: int):
        seq = h_nm_sequence(q, self.n, m_max)
        fact_n = math.factorial(self.n)
        return [seq[m] * (1.0 / math.sqrt(fact_n * math.factorial(m)))
                for m in range(m_max + 1)]

    def norm_factor(self, q: Quaternion) -> float:
        return float(kernels.K_n_series(q, q, self.n).value.x0)

    def member_degree(self, m_max: int) -> int:
        return self.n + m_max

    def spec(self, m_max: int) -> QuadratureSpec:
        planar, n_phi, n_psi = orders_for_degree(2 * (self.n + m_max))
        return spec_gauss_lambda(planar, n_phi, n_psi)


def family_by_tag(tag: str, s: float = 0.5, n: int = 0):
    if tag == "canonical":
        return CanonicalFamily()
    if tag == "hermite-s":
        return HermiteSFamily(s)
    if tag == "hermite-nm":
        return HermiteNMFamily(n)
    raise ValueError(f"unknown family {tag!r}")


@dataclass(frozen=True)
class CSVector:
    """Truncated coherent-state coefficient vector in the abstract basis."""
    family_tag: str
    coeffs: tuple
    norm_factor: float
    truncation: int


def cs_build(family, q: Quaternion, m_max: int = 40,
             tail_rtol: float = 1e-10) -> CSVector:
    """Coefficients N(q)^{-1/2} Phi_m(q) for m = 0..m_max.

    Raises TruncationInsufficient when the weight not captured by the kept
    coefficients exceeds ``tail_rtol`` times N(q).
    """
    values = family.phi(q, m_max)
    weight = family.norm_factor(q)
    norms = [float(v.norm_sq()) for v in values]
    nonzero = [(m, v) for m, v in enumerate(norms) if v > 0.0]
    if len(nonzero) >= 2:
        (m_a, n_a), (m_b, n_b) = nonzero[-2:]
        ratio = (n_b / n_a) ** (1.0 / (m_b - m_a))
        tail = n_b * ratio / (1.0 - ratio) if ratio < 1.0 else math.inf
    else:
        tail = 0.0
    if tail > tail_rtol * weight:
        raise TruncationInsufficient(
            f"estimated tail {tail:.3e} exceeds {tail_rtol:.1e} * N = "
            f"{tail_rtol * weight:.3e}; increase m_max")
    scale = 1.0 / math.sqrt(weight)
    return CSVector(family.tag, tuple(v * scale for v in values),
                    weight, m_max)


def overlap(a: CSVector, b: CSVector) -> Quaternion:
    """Left-inner-product overlap sum_m a_m conj(b_m), ascending m."""
    if a.family_tag != b.family_tag or a.truncation != b.truncation:
        raise BasisMismatch(
            f"{a.family_tag}/{a.truncation} vs {b.family_tag}/{b.truncation}")
    total = Quaternion(0.0)
    for am, bm in zip(a.coeffs, b.coeffs):
        total = total + am * bm.conj()
    return total


def isometry_W(coeffs, family, q: Quaternion) -> Quaternion:
    """W f (q) = N(q)^{1/2} <f | eta_q> = sum_m f_m conj(Phi_m(q))."""
    values = family.phi(q, len(coeffs) - 1)
    total = None
    for fm, phi in zip(coeffs, values):
        term = fm * phi.conj()
        total = term if total is None else total + term
    return total if total is not None else Quaternion(0.0)


def resolution_of_identity(family, spec: QuadratureSpec, m_max: int) -> dict:
    """Weighted frame Gram integral of conj(Phi_i) Phi_j; reports max |G - I|.

    The coherent-state weight N(x) cancels against the two normalization
    factors of the states, leaving exactly this Gram.
    """
    gram = quaternion_gram(lambda q: family.phi(q, m_max), spec,
                           conjugate="first")
    deviation = gram_deviation_from_identity(gram)
    return {"family": family.tag, "m_max": m_max,
            "max_deviation": deviation,
            "gram_abs": np.sqrt(np.sum(gram ** 2, axis=0)).tolist()}


def isometry_norm_error(family, spec: QuadratureSpec, coeffs) -> float:
    """Relative mismatch between ||W f||_{L^2} and ||f||."""
    from .quadrature import _flatten_points

    points, weights = _flatten_points(spec, np.arange(
        spec.su2.weights.shape[0]))
    image = None
    for fm, phi in zip(coeffs, family.phi(points, len(coeffs) - 1)):
        term = fm * phi.conj()
        image = term if image is None else image + term
    norm_sq = float(weights @ np.asarray(image.norm_sq()))
    target = sum(float(c.norm_sq()) for c in coeffs)
    return abs(math.sqrt(norm_sq) - math.sqrt(target)) / math.sqrt(target)


def eval_bound_margin(family, coeffs, q: Quaternion) -> float:
    """N(q)^{1/2} ||f|| - |W f(q)|; nonnegative when the bound holds."""
    value = isometry_W(coeffs, family, q)
    bound = math.sqrt(family.norm_factor(q)) * math.sqrt(
        sum(float(c.norm_sq()) for c in coeffs))
    return bound - float(value.norm())


def antiregularity_report(family, sample_qs, h: float = 1e-4,
                          n_coeffs: int = 5, seed: int = 7,
                          mode: Mode = Mode.ANTI_REGULAR) -> dict:
    """Slice residuals of W-images of random coefficient vectors.

    The family members have real power-series coefficients, so their
    conjugates are series in conj(q) and the images must pass the
    anti-regularity test (left-coefficient convention).
    """
    rng = np.random.default_rng(seed)
    coeffs = tuple(Quaternion(*rng.normal(size=4)) for _ in range(n_coeffs))
    worst = 0.0
    for q in sample_qs:
        res = regularity_residual(
            lambda p: isometry_W(coeffs, family, p), q, mode, h,
            side=Side.LEFT)
        worst = max(worst, res.magnitude())
    return {"family": family.tag, "mode": mode.value, "step": h,
            "max_residual": worst}


@dataclass(frozen=True)
class LadderResult:
    coeffs: tuple
    truncation_loss: float


def ladder(op: str, coeffs) -> LadderResult:
    """Annihilation/creation on coefficient vectors over the m-basis.

    ``lower``: e_m -> sqrt(m) e_{m-1}; ``raise``: e_m -> sqrt(m+1) e_{m+1}.
    Raising pushes the top coefficient past the truncation; its weight is
    reported as ``truncation_loss``.
    """
    coeffs = tuple(coeffs)
    m_top = len(coeffs) - 1
    if op == "lower":
        out = tuple(coeffs[m + 1] * math.sqrt(m + 1) for m in range(m_top)) \
            + (Quaternion(0.0),)
        return LadderResult(out, 0.0)
    if op == "raise":
        out = (Quaternion(0.0),) + tuple(
            coeffs[m - 1] * math.sqrt(m) for m in range(1, m_top + 1))
        loss = math.sqrt(m_top + 1) * float(coeffs[m_top].norm())
        return LadderResult(out, loss)
    raise ValueError("op must be 'lower' or 'raise'")


def reg_antireg_intersection(m_max: int, spec: QuadratureSpec | None = None) -> dict:
    """Cross Gram of the regular basis {h_{0,i}/sqrt(i!)} against the
    anti-regular basis {h_{j,0}/sqrt(j!)}; only the (0, 0) entry survives."""
    if spec is None:
        planar, n_phi, n_psi = orders_for_degree(2 * m_max)
        spec = spec_gauss_lambda(planar, n_phi, n_psi)

    def regular_members(q):
        values = [q * 0 + 1.0]
        for m in range(1, m_max + 1):
            values.append(values[-1] * q * (1.0 / math.sqrt(m)))
        return values

    def antiregular_members(q):
        qc = q.conj()
        values = [q * 0 + 1.0]
        for n in range(1, m_max + 1):
            values.append(values[-1] * qc * (1.0 / math.sqrt(n)))
        return values

    gram = quaternion_gram(regular_members, spec, antiregular_members,
                           conjugate="second")
    entries = np.sqrt(np.sum(gram ** 2, axis=0))
    corner = float(gram[0, 0, 0])
    off = entries.copy()
    off[0, 0] = 0.0
    return {"corner": corner, "max_off_corner": float(np.max(off)),
            "entries": entries.tolist()}
