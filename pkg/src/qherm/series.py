"""Truncated quaternionic power series and slice (Cullen) calculus.

A ``QSeries`` keeps its coefficients on one side of the powers:

* ``Side.LEFT``  : f(q) = sum_n a_n q^n   (monomials a q^n are slice *right*
  regular, so the slice operators act with the imaginary unit multiplying
  the y-derivative from the right);
* ``Side.RIGHT`` : f(q) = sum_n q^n a_n   (slice *left* regular; the unit
  multiplies from the left).

With real coefficients the two conventions coincide.  The finite-difference
operators below sample a callable on the slice through the evaluation point
and build the half-sum/half-difference combinations of d/dx and d/dy; which
of the two annihilates a given family is exactly the side distinction above.
"""

from __future__ import annotations

import numbers
import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .quaternion import (
    CANONICAL_IMAGINARY,
    Quaternion,
    UnitImaginary,
    slice_compose,
    slice_decompose,
)


class Side(Enum):
    LEFT = "left"
    RIGHT = "right"


class Mode(Enum):
    REGULAR = "regular"
    ANTI_REGULAR = "anti-regular"


class DegenerateStep(ValueError):
    """Finite-difference step too small to move the evaluation point."""


class NotPerpendicular(ValueError):
    """The two imaginary units handed to the splitting are not orthogonal."""


class NumericalNoiseWarning(UserWarning):
    """A finite-difference Taylor coefficient sits below the noise floor."""


def _as_quaternion(value) -> Quaternion:
    if isinstance(value, Quaternion):
        return value
    if isinstance(value, numbers.Real):
        return Quaternion(float(value))
    if isinstance(value, numbers.Complex):
        return Quaternion(value.real, value.imag)
    raise TypeError(f"cannot interpret {value!r} as a quaternion coefficient")


@dataclass(frozen=True)
class QSeries:
    """Finite quaternionic power series with a coefficient side tag."""
    side: Side
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs",
                           tuple(_as_quaternion(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        for n in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[n]
            if c.norm_sq() != 0.0:
                return n
        return -1

    def __call__(self, q) -> Quaternion:
        return eval_series(self, q)


def eval_series(series: QSeries, q) -> Quaternion:
    """Evaluate honoring the coefficient side, summing in ascending degree."""
    q = _as_quaternion(q) if not isinstance(q, Quaternion) else q
    shape = np.shape(q.x0)
    total = Quaternion(np.zeros(shape)) if shape else Quaternion(0.0)
    power = Quaternion(np.ones(shape)) if shape else Quaternion(1.0)
    for n, a in enumerate(series.coeffs):
        if n > 0:
            power = power * q
        term = a * power if series.side is Side.LEFT else power * a
        total = total + term
    return total


def cullen_derivative(series: QSeries) -> QSeries:
    """Coefficient map a_n -> n * a_n shifted down one degree, same side."""
    if len(series.coeffs) <= 1:
        return QSeries(series.side, (Quaternion(0.0),))
    new = tuple(c * float(n) for n, c in enumerate(series.coeffs))[1:]
    return QSeries(series.side, new)


def _slice_samples(f, q: Quaternion, h: float):
    sf = slice_decompose(q)
    if h <= 0:
        raise DegenerateStep("step must be positive")
    if sf.x + h == sf.x and sf.y + h == sf.y:
        raise DegenerateStep(f"step {h} underflows at {q!r}")
    unit = sf.imag
    fxp = f(slice_compose(sf.x + h, sf.y, unit))
    fxm = f(slice_compose(sf.x - h, sf.y, unit))
    fyp = f(slice_compose(sf.x, sf.y + h, unit))
    fym = f(slice_compose(sf.x, sf.y - h, unit))
    dx = (fxp - fxm) * (0.5 / h)
    dy = (fyp - fym) * (0.5 / h)
    return sf, dx, dy


def cullen_derivative_numeric(f, q: Quaternion, h: float = 1e-5,
                              side: Side = Side.LEFT) -> Quaternion:
    """Slice derivative (1/2)(d/dx f_I -+ I d/dy f_I) by central differences.

    The imaginary unit multiplies the y-derivative on the side opposite to
    the coefficients (see the module docstring); at a real point only the
    real-axis derivative is used.
    """
    sf = slice_decompose(q)
    if sf.y == 0.0:
        if h <= 0:
            raise DegenerateStep("step must be positive")
        if sf.x + h == sf.x:
            raise DegenerateStep(f"step {h} underflows at {q!r}")
        fp = f(Quaternion(sf.x + h))
        fm = f(Quaternion(sf.x - h))
        return (fp - fm) * (0.5 / h)
    sf, dx, dy = _slice_samples(f, q, h)
    unit = sf.imag.as_quaternion()
    if side is Side.LEFT:
        return (dx - dy * unit) * 0.5
    return (dx - unit * dy) * 0.5


@dataclass(frozen=True)
class SliceResidual:
    value: Quaternion
    step: float

    def magnitude(self) -> float:
        return float(self.value.norm())


def regularity_residual(f, q: Quaternion, mode: Mode, h: float = 1e-5,
                        side: Side = Side.LEFT) -> SliceResidual:
    """Slice Cauchy-Riemann residual; vanishes O(h^2) on the matching family.

    REGULAR mode annihilates power series in q, ANTI_REGULAR the series in
    conj(q), each with coefficients on the given side.  At a real point the
    slice through the canonical imaginary unit is used.
    """
    sf, dx, dy = _slice_samples(f, q, h)
    unit = sf.imag.as_quaternion()
    sign = 1.0 if mode is Mode.REGULAR else -1.0
    if side is Side.LEFT:
        value = (dx + dy * unit * sign) * 0.5
    else:
        value = (dx + unit * dy * sign) * 0.5
    return SliceResidual(value, h)


def slice_split(series: QSeries, unit_i: UnitImaginary,
                unit_j: UnitImaginary, tol: float = 1e-12):
    """Split a left-coefficient series into F + J G with F, G complex.

    Each coefficient a is resolved as a = alpha + J beta with alpha, beta in
    the I-slice by solving the 4x4 real system in the basis {1, I, J, IJ};
    the restriction to the slice then satisfies f_I(z) = F(z) + J G(z).
    """
    if series.side is not Side.LEFT:
        raise ValueError("slice_split applies to left-coefficient series")
    if abs(unit_i.dot(unit_j)) > tol:
        raise NotPerpendicular("imaginary units must be orthogonal")
    qi = unit_i.as_quaternion()
    qj = unit_j.as_quaternion()
    basis = np.column_stack([
        Quaternion(1.0).components(),
        qi.components(),
        qj.components(),
        (qi * qj).components(),
    ])
    f_coeffs = np.zeros(len(series.coeffs), dtype=complex)
    g_coeffs = np.zeros(len(series.coeffs), dtype=complex)
    for n, a in enumerate(series.coeffs):
        c0, c1, c2, c3 = np.linalg.solve(basis, a.components())
        # a = c0 + c1 I + c2 J + c3 IJ and J(b0 + b1 I) = b0 J - b1 IJ
        f_coeffs[n] = complex(c0, c1)
        g_coeffs[n] = complex(c2, -c3)
    return f_coeffs, g_coeffs


def eval_complex_series(coeffs: np.ndarray, z: complex) -> complex:
    total = 0.0 + 0.0j
    power = 1.0 + 0.0j
    for n, c in enumerate(coeffs):
        if n > 0:
            power *= z
        total += c * power
    return total


def embed_complex(value: complex, unit: UnitImaginary) -> Quaternion:
    """Map x + iy to x + y*I on the slice of ``unit``."""
    return slice_compose(value.real, value.imag, unit)


def _nth_derivative_stencil(f, n: int, h: float) -> Quaternion:
    """Central difference for the n-th derivative of f along the real axis."""
    from math import comb

    total = Quaternion(0.0)
    for k in range(n + 1):
        offset = (n / 2.0 - k) * h
        sample = f(Quaternion(offset))
        total = total + sample * float((-1) ** k * comb(n, k))
    return total * (h ** (-n))


def taylor_coeffs(f, n_max: int, h: float | None = None,
                  richardson: bool = True) -> QSeries:
    """Coefficients (1/n!) d^n f / dx^n (0) by real-axis central differences.

    With ``h=None`` a per-order step balancing truncation against roundoff is
    chosen.  Warns when the noise floor of a stencil exceeds the coefficient
    it produced.
    """
    eps = np.finfo(float).eps
    coeffs = []
    factorial = 1.0
    for n in range(n_max + 1):
        if n > 0:
            factorial *= n
        step = h if h is not None else eps ** (1.0 / (n + 4))
        if n == 0:
            value = f(Quaternion(0.0))
        else:
            d_h = _nth_derivative_stencil(f, n, step)
            if richardson:
                d_half = _nth_derivative_stencil(f, n, step / 2.0)
                value = (d_half * 4.0 - d_h) * (1.0 / 3.0)
            else:
                value = d_h
        coeff = value * (1.0 / factorial)
        noise = eps * (2.0 ** n) / (step ** n) / factorial
        if n > 0 and float(coeff.norm()) < noise:
            warnings.warn(
                f"Taylor coefficient {n} is below the stencil noise floor "
                f"({noise:.2e})", NumericalNoiseWarning, stacklevel=2)
        coeffs.append(coeff)
    return QSeries(Side.LEFT, tuple(coeffs))


# -- serialization -----------------------------------------------------------

def series_to_json(series: QSeries) -> dict:
    return {"side": series.side.value,
            "coeffs": [c.to_list() for c in series.coeffs]}


def series_from_json(payload: dict) -> QSeries:
    side = Side(payload["side"])
    coeffs = tuple(Quaternion(*map(float, c)) for c in payload["coeffs"])
    return QSeries(side, coeffs)
