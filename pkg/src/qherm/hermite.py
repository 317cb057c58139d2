"""The four Hermite families and the Landau operator algebra.

Exact constructions (arbitrary-precision coefficients) are the ground truth:

* ``hermite_real(n)``      -- H_n, integer coefficients, three-term recursion;
* ``h_nm_poly(n, m)``      -- two-index family from the Gaussian-derivative
  definition with exponent 1, realized as the recursion
  h_{n+1,m} = zbar*h_{n,m} - d/dz h_{n,m} from h_{0,0} = 1;
* ``H_nm_poly(n, m)``      -- the companion family with Gaussian exponent 1/2,
  recursion H_{n+1,m} = zbar*H_{n,m} - 2 d/dz H_{n,m}.

Floating evaluation always goes through value recursions, never the
alternating sums.  Printed closed-form variants that circulate for the
two-index family are kept behind ``h_nm_closed_sum`` so the verification
suite can record which one reproduces the derivative definition.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .polynomials import GaussPoly, ZZbarPoly
from .quaternion import Quaternion
from .series import QSeries, Side

MAX_FLOAT_DEGREE = 150

#: Which index of h_{n,m} carries the Landau level: the first one, i.e. the
#: number of z-derivatives in the Gaussian-derivative definition (the zbar
#: degree of the leading monomial z^m zbar^n).  Resolved by exact symbolic
#: application of the operator; see test_landau_eigenvalue_index.
LANDAU_LEVEL_INDEX = "first"

GAUSSIAN_EXPONENT_H = Fraction(1, 2)


# -- single-index family -------------------------------------------------------


@lru_cache(maxsize=None)
def hermite_real(n: int):
    """Integer coefficients of H_n, ascending degree."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n == 0:
        return (1,)
    if n == 1:
        return (0, 2)
    prev2 = hermite_real(n - 2)
    prev1 = hermite_real(n - 1)
    coeffs = [0] * (n + 1)
    for k, c in enumerate(prev1):
        coeffs[k + 1] += 2 * c
    for k, c in enumerate(prev2):
        coeffs[k] -= 2 * (n - 1) * c
    return tuple(coeffs)


def hermite_series(n: int) -> QSeries:
    """H_n as a left-coefficient quaternionic power series."""
    return QSeries(Side.LEFT, tuple(float(c) for c in hermite_real(n)))


def _hermite_eval(n: int, value):
    """Three-term recursion H_{k+1} = 2 v H_k - 2 k H_{k-1} on values."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n > MAX_FLOAT_DEGREE:
        raise OverflowError(
            f"H_{n} exceeds double range; raise MAX_FLOAT_DEGREE knowingly")
    prev = None
    current = value * 0 + 1.0
    for k in range(n):
        nxt = value * current * 2.0 - (2.0 * k) * prev if k else value * 2.0
        prev, current = current, nxt
    return current


def hermite_z(n: int, z):
    return _hermite_eval(n, z if np.ndim(z) else complex(z))


def hermite_q(n: int, q: Quaternion) -> Quaternion:
    return _hermite_eval(n, q)


def b_n(s: float, n: int) -> float:
    """Squared norm of H_n under the anisotropic Gaussian plane measure."""
    if not 0.0 < s < 1.0:
        raise ValueError("s must lie in (0, 1)")
    if n < 0:
        raise ValueError("n must be nonnegative")
    return (math.pi * math.sqrt(s) / (1.0 - s)
            * (2.0 * (1.0 + s) / (1.0 - s)) ** n * math.factorial(n))


def hermite_normalized_sequence(q, s: float, n_max: int):
    """[H_0^s(q), ..., H_nmax^s(q)] by a normalized, overflow-free recursion.

    H_n^s = H_n / sqrt(b_n(s)); consecutive ratios sqrt(b_{n}/b_{n-1}) =
    sqrt(2 n (1+s)/(1-s)) are folded into the three-term recursion.
    """
    if not 0.0 < s < 1.0:
        raise ValueError("s must lie in (0, 1)")
    growth = 2.0 * (1.0 + s) / (1.0 - s)
    values = [q * 0 + (1.0 / math.sqrt(b_n(s, 0)))]
    if n_max == 0:
        return values
    r_prev = 0.0
    prev = None
    current = values[0]
    for k in range(n_max):
        r_next = math.sqrt(growth * (k + 1))
        nxt = q * current * (2.0 / r_next)
        if k:
            nxt = nxt - prev * (2.0 * k / (r_next * r_prev))
        values.append(nxt)
        prev, current, r_prev = current, nxt, r_next
    return values


def hermite_q_normalized(n: int, q, s: float):
    return hermite_normalized_sequence(q, s, n)[n]


# -- two-index families ---------------------------------------------------------


@lru_cache(maxsize=None)
def h_nm_poly(n: int, m: int) -> ZZbarPoly:
    """Two-index polynomial from the exponent-1 Gaussian-derivative recursion."""
    if n < 0 or m < 0:
        raise ValueError("indices must be nonnegative")
    if n == 0 and m == 0:
        return ZZbarPoly.one()
    if n > 0:
        prev = h_nm_poly(n - 1, m)
        return prev.mul_zbar() - prev.dz()
    prev = h_nm_poly(0, m - 1)
    return prev.mul_z() - prev.dzbar()


@lru_cache(maxsize=None)
def H_nm_poly(n: int, m: int) -> ZZbarPoly:
    """Companion two-index family (Gaussian exponent 1/2)."""
    if n < 0 or m < 0:
        raise ValueError("indices must be nonnegative")
    if n == 0 and m == 0:
        return ZZbarPoly.one()
    if n > 0:
        prev = H_nm_poly(n - 1, m)
        return prev.mul_zbar() - prev.dz().scale(2)
    prev = H_nm_poly(0, m - 1)
    return prev.mul_z() - prev.dzbar().scale(2)


def h_nm_closed_sum(n: int, m: int, weighted: bool = True) -> ZZbarPoly:
    """Closed double-factorial sum for the two-index family.

    With ``weighted=True`` the terms carry (-1)^j / j!:

        n! m! sum_j (-1)^j / j! * zbar^{n-j}/(n-j)! * z^{m-j}/(m-j)!

    which reproduces the derivative definition.  ``weighted=False`` drops
    that factor (a variant that circulates in print) and does not.
    """
    data = {}
    for j in range(min(n, m) + 1):
        coeff = Fraction(math.factorial(n) * math.factorial(m),
                         math.factorial(n - j) * math.factorial(m - j))
        if weighted:
            coeff = coeff * Fraction((-1) ** j, math.factorial(j))
        key = (m - j, n - j)
        data[key] = data.get(key, 0) + coeff
    ints = {}
    for key, value in data.items():
        frac = Fraction(value)
        if frac.denominator != 1:
            raise ValueError("closed sum did not clear denominators")
        ints[key] = int(frac)
    return ZZbarPoly(ints)


def _two_index_values(q, n: int, m_list):
    """Values h_{n,m}(q, conj(q)) for every m in m_list, by value recursion.

    Row recursion in the first index: h_{k+1,m} = qbar*h_{k,m} - m*h_{k,m-1};
    row 0 is h_{0,m} = q^m.  Works for complex or (array-)quaternion q
    because q and conj(q) commute.
    """
    m_max = max(m_list)
    qc = q.conj() if isinstance(q, Quaternion) else np.conj(q)
    row = [q * 0 + 1.0]
    for m in range(1, m_max + 1):
        row.append(row[-1] * q)
    for _ in range(n):
        new_row = [row[0] * qc]
        for m in range(1, m_max + 1):
            new_row.append(row[m] * qc - row[m - 1] * float(m))
        row = new_row
    return [row[m] for m in m_list]


def h_nm_eval_q(n: int, m: int, q: Quaternion) -> Quaternion:
    if n + m > MAX_FLOAT_DEGREE:
        raise OverflowError("two-index degree exceeds double range")
    return _two_index_values(q, n, [m])[0]


def h_nm_eval_z(n: int, m: int, z):
    if n + m > MAX_FLOAT_DEGREE:
        raise OverflowError("two-index degree exceeds double range")
    value = z if np.ndim(z) else complex(z)
    return _two_index_values(value, n, [m])[0]


def h_nm_sequence(q, n: int, m_max: int):
    """[h_{n,0}(q,.), ..., h_{n,m_max}(q,.)] sharing one recursion sweep."""
    return _two_index_values(q, n, list(range(m_max + 1)))


# -- generating function and confluent form ------------------------------------


def gen_func_check(n_total: int) -> bool:
    """Expand exp[(a*zbar + abar*z - a*abar)/2] to total (a, abar) degree
    n_total and compare each coefficient against (a/2)^n (abar/2)^m/(n! m!)
    times the companion family, exactly."""
    half = Fraction(1, 2)
    # keys (p, q, i, j): powers of a, abar, z, zbar
    exponent = {(1, 0, 0, 1): half, (0, 1, 1, 0): half, (1, 1, 0, 0): -half}
    term = {(0, 0, 0, 0): Fraction(1)}
    series = dict(term)
    for k in range(1, n_total + 1):
        nxt = {}
        for key1, val1 in term.items():
            for key2, val2 in exponent.items():
                key = tuple(key1[t] + key2[t] for t in range(4))
                if key[0] + key[1] > n_total:
                    continue
                nxt[key] = nxt.get(key, Fraction(0)) + val1 * val2
        term = nxt
        scale = Fraction(1, math.factorial(k))
        for key, val in term.items():
            series[key] = series.get(key, Fraction(0)) + val * scale
    for p in range(n_total + 1):
        for q in range(n_total + 1 - p):
            collected = {}
            for (a_pow, ab_pow, i, j), val in series.items():
                if a_pow == p and ab_pow == q and val != 0:
                    collected[(i, j)] = val
            prefactor = Fraction(1, 2 ** (p + q)
                                 * math.factorial(p) * math.factorial(q))
            expected = {key: prefactor * Fraction(c)
                        for key, c in H_nm_poly(p, q).coeffs.items()}
            if collected != expected:
                return False
    return True


def kummer_poly(n: int, m: int) -> ZZbarPoly:
    """Terminating confluent-hypergeometric form of the companion family.

    (m!/(m-n)!) z^{m-n} (-2)^n 1F1(-n, m-n+1, z*zbar/2), exact coefficients.
    Requires m >= n.
    """
    if m < n:
        raise ValueError("requires m >= n")
    data = {}
    front = Fraction(math.factorial(m), math.factorial(m - n)) * (-2) ** n
    term = Fraction(1)
    for k in range(n + 1):
        if k > 0:
            # (-n)_k / ((m-n+1)_k k!) ratio step
            term = term * Fraction(-(n - k + 1), (m - n + k) * k)
        coeff = front * term * Fraction(1, 2 ** k)
        key = (m - n + k, k)
        data[key] = data.get(key, Fraction(0)) + coeff
    ints = {}
    for key, value in data.items():
        if value.denominator != 1:
            raise ValueError("confluent form did not clear denominators")
        ints[key] = int(value)
    return ZZbarPoly(ints)


def kummer_form(n: int, m: int, z: complex) -> complex:
    if m < n:
        raise ValueError("requires m >= n")
    return kummer_poly(n, m).eval_complex(complex(z))


def scaling_bridge_holds(n: int, m: int) -> bool:
    """Exact check H_{n,m}(z, zbar) = 2^{(n+m)/2} h_{n,m}(z/sqrt2, zbar/sqrt2).

    Monomial z^i zbar^j picks up 2^{(n+m-i-j)/2}, an integer power because
    i+j has the parity of n+m.
    """
    target = H_nm_poly(n, m)
    rescaled = {}
    for (i, j), coeff in h_nm_poly(n, m).coeffs.items():
        shift = n + m - i - j
        if shift % 2:
            return False
        rescaled[(i, j)] = coeff * 2 ** (shift // 2)
    return ZZbarPoly(rescaled) == target


# -- Landau operator -------------------------------------------------------------


def landau_apply(f: GaussPoly) -> GaussPoly:
    """Apply -(1/4){4 d2/dz dzbar + 2(z d/dz - zbar d/dzbar) - |z|^2} exactly."""
    mixed = f.dz().dzbar()
    drift = f.dz().mul_z() - f.dzbar().mul_zbar()
    radial = f.mul_z().mul_zbar()
    total = mixed.scale(4) + drift.scale(2) - radial
    return total.scale(Fraction(-1, 4))


def landau_eigenfunction(n: int, m: int) -> GaussPoly:
    """h_{n,m} times the Gaussian exp(-|z|^2/2)."""
    return GaussPoly(h_nm_poly(n, m), GAUSSIAN_EXPONENT_H)


def landau_eigenvalue(n: int, m: int) -> Fraction:
    """Exact Landau level of ``landau_eigenfunction(n, m)``: n + 1/2."""
    return Fraction(2 * n + 1, 2)
