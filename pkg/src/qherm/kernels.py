"""Reproducing kernels: truncated series, closed forms, structural checks.

All series keep the printed operand order (value at the first argument times
the conjugate of the value at the second) and sum in ascending index with an
adaptive stop, so hermiticity of the diagonal is exact by construction.  The
closed forms are the Mehler-type resummations; the diagonal reduction used
throughout is re-derived from the off-diagonal closed form (see
``K_s_closed_diagonal``), and the verification suite records how the widely
quoted shortcut ``K_s_printed_diagonal`` differs from it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hermite import b_n, h_nm_sequence, hermite_normalized_sequence
from .quaternion import Quaternion, slice_decompose

#: Resolved single-index normalization: the squared norm of H_n under the
#: anisotropic plane measure is b_n(s) itself; the variant with an extra n!
#: (``convention="extra_factorial"``) is kept only so the suite can show it
#: fails.  See test_orthogonality_resolves_normalization.
NORM_CONVENTION = "plain"


def expected_single_index_norm(s: float, n: int,
                               convention: str = NORM_CONVENTION) -> float:
    if convention == "plain":
        return b_n(s, n)
    if convention == "extra_factorial":
        return b_n(s, n) * math.factorial(n)
    raise ValueError(f"unknown convention {convention!r}")


@dataclass(frozen=True)
class KernelValue:
    value: Quaternion
    truncation: int
    est_tail: float
    converged: bool = True


def usable_radius(s: float) -> float:
    """Largest |q| before the diagonal's Gaussian growth leaves double range.

    The diagonal grows like exp(((1-s)/s) y^2); beyond this radius values
    saturate to inf and grid exports are meaningless.
    """
    return math.sqrt(690.0 * s / (1.0 - s))


def _series_sum(term_fn, n_max: int, stop_rtol: float = 1e-14):
    """Ascending-order sum with a tail estimate from the last term ratio.

    Stops only after two consecutive sub-threshold terms, so families whose
    odd (or even) members vanish at special points are not cut short.
    """
    total = None
    prev_norm = 0.0
    last_norm = 0.0
    used = 0
    nonzero: list[tuple[int, float]] = []
    for n in range(n_max + 1):
        term = term_fn(n)
        total = term if total is None else total + term
        used = n
        prev_norm, last_norm = last_norm, float(np.max(term.norm()))
        if last_norm > 0.0:
            nonzero.append((n, last_norm))
            if len(nonzero) > 2:
                nonzero.pop(0)
        scale = float(np.max(total.norm()))
        threshold = stop_rtol * max(scale, 1e-300)
        if n >= 2 and last_norm < threshold and prev_norm < threshold:
            break
    if len(nonzero) == 2:
        (i_a, n_a), (i_b, n_b) = nonzero
        ratio = (n_b / n_a) ** (1.0 / (i_b - i_a))
    else:
        ratio = 0.0
    converged = ratio < 1.0
    if converged:
        est_tail = nonzero[-1][1] * ratio / (1.0 - ratio) if nonzero else 0.0
    else:
        est_tail = math.inf
    return KernelValue(total, used, est_tail, converged)


def K_s_series(q1: Quaternion, q2: Quaternion, s: float, n_max: int = 200,
               stop_rtol: float = 1e-14) -> KernelValue:
    """sum_n H_n^s(q1) conj(H_n^s(q2)), ascending n.

    Diagonal terms are built as |H_n^s(q)|^2, so the diagonal is exactly a
    real (scalar) quaternion.
    """
    e1 = hermite_normalized_sequence(q1, s, n_max)
    if q1 == q2:
        return _series_sum(lambda n: Quaternion(e1[n].norm_sq()),
                           n_max, stop_rtol)
    e2 = hermite_normalized_sequence(q2, s, n_max)
    return _series_sum(lambda n: e1[n] * e2[n].conj(), n_max, stop_rtol)


def K_s_series_complex(z: complex, w: complex, s: float,
                       n_max: int = 200) -> complex:
    """Complex-plane version of the same sum (oracle for the closed form)."""
    growth = 2.0 * (1.0 + s) / (1.0 - s)
    e_z = 1.0 / math.sqrt(b_n(s, 0))
    e_w = e_z
    total = e_z * np.conj(e_w)
    prev_z, prev_w = 0.0, 0.0
    cur_z, cur_w = e_z + 0.0j, e_w + 0.0j
    for k in range(n_max):
        r_next = math.sqrt(growth * (k + 1))
        nxt_z = 2.0 * z * cur_z / r_next
        nxt_w = 2.0 * w * cur_w / r_next
        if k:
            r_prev = math.sqrt(growth * k)
            nxt_z -= 2.0 * k * prev_z / (r_next * r_prev)
            nxt_w -= 2.0 * k * prev_w / (r_next * r_prev)
        term = nxt_z * np.conj(nxt_w)
        total += term
        if abs(term) < 1e-16 * max(abs(total), 1e-300):
            break
        prev_z, cur_z = cur_z, nxt_z
        prev_w, cur_w = cur_w, nxt_w
    return total


def K_s_closed_complex(z: complex, w: complex, s: float) -> complex:
    """Mehler resummation of the single-index kernel series."""
    if not 0.0 < s < 1.0:
        raise ValueError("s must lie in (0, 1)")
    pref = (1.0 - s * s) / (2.0 * math.pi * s)
    wbar = np.conj(w)
    exponent = (-((1.0 - s) ** 2 / (4.0 * s)) * (z * z + wbar * wbar)
                + ((1.0 - s * s) / (2.0 * s)) * z * wbar)
    return pref * np.exp(exponent)


def K_s_closed_diagonal(q, s: float) -> float:
    """Diagonal value through the slice of q: the closed form at w = z.

    Substituting w = z gives exp[(1-s) x^2 + ((1-s)/s) y^2] times the
    prefactor; this is the reduction consistent with the series.
    """
    if isinstance(q, Quaternion):
        sf = slice_decompose(q)
        x, y = sf.x, sf.y
    else:
        z = complex(q)
        x, y = z.real, z.imag
    pref = (1.0 - s * s) / (2.0 * math.pi * s)
    return pref * np.exp((1.0 - s) * x * x + ((1.0 - s) / s) * y * y)


def K_s_printed_diagonal(z: complex, s: float) -> float:
    """A diagonal shortcut that circulates in print:
    exp[(1-s)/2 x^2 + (s^2-3s+2)/(2s) y^2] times the prefactor.

    Inconsistent with the off-diagonal closed form at w = z (both exponent
    coefficients are off); kept so the suite can record the mismatch.
    """
    z = complex(z)
    pref = (1.0 - s * s) / (2.0 * math.pi * s)
    return pref * math.exp((1.0 - s) / 2.0 * z.real ** 2
                           + (s * s - 3.0 * s + 2.0) / (2.0 * s) * z.imag ** 2)


def frak_K_closed(z: complex, w: complex, s: float) -> complex:
    """Closed kernel of the Gaussian-dressed family b_n^{-1/2} e^{-z^2/2} H_n."""
    if not 0.0 < s < 1.0:
        raise ValueError("s must lie in (0, 1)")
    pref = (1.0 - s * s) / (2.0 * math.pi * s)
    wbar = np.conj(w)
    exponent = (-((1.0 + s * s) / (4.0 * s)) * (z * z + wbar * wbar)
                + ((1.0 - s * s) / (2.0 * s)) * z * wbar)
    return pref * np.exp(exponent)


def frak_K_series(z: complex, w: complex, s: float, n_max: int = 200) -> complex:
    """Series of the dressed family: the Gaussian factors pull out front."""
    dress = np.exp(-(z * z + np.conj(w) * np.conj(w)) / 2.0)
    return dress * K_s_series_complex(z, w, s, n_max)


def frak_K_closed_diagonal(z: complex, s: float) -> float:
    """Diagonal of the dressed kernel: exp[-s x^2 + y^2/s] times prefactor."""
    z = complex(z)
    pref = (1.0 - s * s) / (2.0 * math.pi * s)
    return pref * math.exp(-s * z.real ** 2 + z.imag ** 2 / s)


def K_n_series(q1: Quaternion, q2: Quaternion, n: int, m_max: int = 200,
               stop_rtol: float = 1e-14) -> KernelValue:
    """sum_m h_{n,m}(q1, .) conj(h_{n,m}(q2, .)) / (n! m!)."""
    seq1 = h_nm_sequence(q1, n, m_max)
    fact_n = math.factorial(n)
    if q1 == q2:
        return _series_sum(
            lambda m: Quaternion(
                seq1[m].norm_sq() / (fact_n * math.factorial(m))),
            m_max, stop_rtol)
    seq2 = h_nm_sequence(q2, n, m_max)

    def term(m):
        return seq1[m] * seq2[m].conj() * (1.0 / (fact_n * math.factorial(m)))

    return _series_sum(term, m_max, stop_rtol)


def bargmann_kernel(q1: Quaternion, q2: Quaternion, n_max: int = 200,
                    stop_rtol: float = 1e-14) -> KernelValue:
    """sum_n q1^n conj(q2)^n / n! in exactly this operand order.

    The operands need not commute, so this is *not* exp(q1 conj(q2)) in
    general; the diagonal is exp(|q|^2).
    """
    diagonal = q1 == q2
    q2c = q2.conj()
    state = {"p1": q1 * 0 + 1.0, "p2": q2 * 0 + 1.0, "fact": 1.0}

    def term(n):
        if n > 0:
            state["p1"] = state["p1"] * q1
            state["p2"] = state["p2"] * q2c
            state["fact"] *= n
        if diagonal:  # p1 * conj(p1) is |p1|^2: keep it exactly real
            return Quaternion(state["p1"].norm_sq() / state["fact"])
        return state["p1"] * state["p2"] * (1.0 / state["fact"])

    return _series_sum(term, n_max, stop_rtol)


# -- structural checks -----------------------------------------------------------


def reproducing_error(family, spec, x_samples, coeffs, m_terms: int) -> float:
    """max_x | integral of F(y) K(y, x) dmu(y) - F(x) |.

    F is the coefficient combination of the family's kernel-space basis
    (F = sum a_m conj(Phi_m)); K(y, x) = sum Phi_m(y) conj(Phi_m(x)).
    """
    from .quadrature import _flatten_points

    n_su2 = spec.su2.weights.shape[0]
    worst = 0.0
    points, weights = _flatten_points(spec, np.arange(n_su2))
    phis = family.phi(points, m_terms)
    f_on_nodes = None
    for a, phi in zip(coeffs, phis):
        term = a * phi.conj()
        f_on_nodes = term if f_on_nodes is None else f_on_nodes + term
    for x in x_samples:
        phix = family.phi(x, m_terms)
        kernel = None
        for phi, px in zip(phis, phix):
            term = phi * px.conj()
            kernel = term if kernel is None else kernel + term
        integrand = (f_on_nodes * kernel).components().reshape(-1, 4)
        integral = Quaternion(*(weights @ integrand))
        f_at_x = None
        for a, px in zip(coeffs, phix):
            term = a * px.conj()
            f_at_x = term if f_at_x is None else f_at_x + term
        worst = max(worst, float((integral - f_at_x).norm()))
    return worst


def idempotence_error(family, spec, x_samples, z_samples, m_terms: int) -> float:
    """max |integral of K(x, y) K(y, z) dmu(y) - K(x, z)| over sample pairs."""
    from .quadrature import _flatten_points

    n_su2 = spec.su2.weights.shape[0]
    points, weights = _flatten_points(spec, np.arange(n_su2))
    phis_y = family.phi(points, m_terms)
    worst = 0.0
    for x in x_samples:
        phix = family.phi(x, m_terms)
        k_xy = None
        for px, py in zip(phix, phis_y):
            term = px * py.conj()
            k_xy = term if k_xy is None else k_xy + term
        for z in z_samples:
            phiz = family.phi(z, m_terms)
            k_yz = None
            k_xz = None
            for py, pz, px in zip(phis_y, phiz, phix):
                term = py * pz.conj()
                k_yz = term if k_yz is None else k_yz + term
                direct = px * pz.conj()
                k_xz = direct if k_xz is None else k_xz + direct
            integrand = (k_xy * k_yz).components().reshape(-1, 4)
            integral = Quaternion(*(weights @ integrand))
            worst = max(worst, float((integral - k_xz).norm()))
    return worst
