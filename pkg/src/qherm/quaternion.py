"""Quaternion arithmetic and the matrix / polar / slice / SU(2) decompositions.

A quaternion ``q = x0 + x1*i + x2*j + x3*k`` is stored componentwise.  All
components may be plain floats or numpy arrays of a common shape, in which
case a ``Quaternion`` behaves as an array of quaternions and every operation
broadcasts elementwise.  Everything here is immutable and side-effect free.

The 2x2 complex matrix picture used throughout is

    M(q) = [[x0 + i*x3, -x2 + i*x1],
            [x2 + i*x1,  x0 - i*x3]],

a real-algebra isomorphism onto its image: M(p*q) = M(p) @ M(q) and
M(conj(q)) = M(q)^dagger.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass

import numpy as np


class PatternViolation(ValueError):
    """A 2x2 matrix does not have the quaternion component pattern."""


def _coerce(value):
    """Promote a real, complex or Quaternion value to a Quaternion.

    Complex numbers embed on the i-slice: a + bi -> (a, b, 0, 0).  Real numpy
    arrays are treated as arrays of real quaternions.
    """
    if isinstance(value, Quaternion):
        return value
    if isinstance(value, numbers.Real):
        return Quaternion(float(value))
    if isinstance(value, numbers.Complex):
        return Quaternion(value.real, value.imag)
    if isinstance(value, np.ndarray):
        if np.iscomplexobj(value):
            return Quaternion(value.real, value.imag)
        return Quaternion(value)
    return NotImplemented


class Quaternion:
    __slots__ = ("x0", "x1", "x2", "x3")

    def __init__(self, x0=0.0, x1=0.0, x2=0.0, x3=0.0):
        object.__setattr__(self, "x0", x0)
        object.__setattr__(self, "x1", x1)
        object.__setattr__(self, "x2", x2)
        object.__setattr__(self, "x3", x3)

    def __setattr__(self, name, value):
        raise AttributeError("Quaternion is immutable")

    # -- construction helpers ------------------------------------------------

    @classmethod
    def from_components(cls, comps) -> "Quaternion":
        """Build from an array-like whose last axis has length 4."""
        comps = np.asarray(comps, dtype=float)
        if comps.shape[-1] != 4:
            raise ValueError("expected last axis of length 4")
        parts = np.moveaxis(comps, -1, 0)
        parts = [p if p.ndim else float(p) for p in parts]
        return cls(*parts)

    def components(self) -> np.ndarray:
        """Components stacked along a trailing axis of length 4."""
        return np.stack(np.broadcast_arrays(
            np.asarray(self.x0, dtype=float),
            np.asarray(self.x1, dtype=float),
            np.asarray(self.x2, dtype=float),
            np.asarray(self.x3, dtype=float)), axis=-1)

    # -- algebra -------------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Quaternion(self.x0 + other.x0, self.x1 + other.x1,
                          self.x2 + other.x2, self.x3 + other.x3)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Quaternion(self.x0 - other.x0, self.x1 - other.x1,
                          self.x2 - other.x2, self.x3 - other.x3)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return Quaternion(-self.x0, -self.x1, -self.x2, -self.x3)

    def __mul__(self, other):
        if isinstance(other, numbers.Real):
            return Quaternion(self.x0 * other, self.x1 * other,
                              self.x2 * other, self.x3 * other)
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a0, a1, a2, a3 = self.x0, self.x1, self.x2, self.x3
        b0, b1, b2, b3 = other.x0, other.x1, other.x2, other.x3
        return Quaternion(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )

    def __rmul__(self, other):
        if isinstance(other, numbers.Real):
            return self * other
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self

    def __truediv__(self, other):
        if isinstance(other, numbers.Real):
            return self * (1.0 / other)
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, numbers.Integral):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = Quaternion(1.0)
        base = self
        n = int(n)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> "Quaternion":
        return Quaternion(self.x0, -self.x1, -self.x2, -self.x3)

    def norm_sq(self):
        return (self.x0 * self.x0 + self.x1 * self.x1
                + self.x2 * self.x2 + self.x3 * self.x3)

    def norm(self):
        return np.sqrt(self.norm_sq())

    def __abs__(self):
        return self.norm()

    def inverse(self) -> "Quaternion":
        n2 = self.norm_sq()
        return Quaternion(self.x0 / n2, -self.x1 / n2,
                          -self.x2 / n2, -self.x3 / n2)

    # -- predicates and conversions -------------------------------------------

    def imag_norm(self):
        return np.sqrt(self.x1 * self.x1 + self.x2 * self.x2
                       + self.x3 * self.x3)

    def is_scalar(self) -> bool:
        return all(np.ndim(getattr(self, f)) == 0
                   for f in ("x0", "x1", "x2", "x3"))

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (np.array_equal(self.x0, other.x0)
                and np.array_equal(self.x1, other.x1)
                and np.array_equal(self.x2, other.x2)
                and np.array_equal(self.x3, other.x3))

    def __repr__(self):
        return (f"Quaternion({self.x0!r}, {self.x1!r}, "
                f"{self.x2!r}, {self.x3!r})")

    def to_list(self):
        return [float(self.x0), float(self.x1), float(self.x2), float(self.x3)]


ZERO = Quaternion(0.0)
ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def quat_allclose(a, b, atol=1e-12, rtol=0.0) -> bool:
    a = _coerce(a)
    b = _coerce(b)
    return bool(np.all((a - b).norm() <= atol + rtol * b.norm()))


def from_list(values) -> Quaternion:
    x0, x1, x2, x3 = (float(v) for v in values)
    return Quaternion(x0, x1, x2, x3)


# -- matrix representation ----------------------------------------------------

def to_matrix(q: Quaternion) -> np.ndarray:
    """2x2 complex matrix of q (trailing matrix axes for array input)."""
    x0 = np.asarray(q.x0, dtype=float)
    x1 = np.asarray(q.x1, dtype=float)
    x2 = np.asarray(q.x2, dtype=float)
    x3 = np.asarray(q.x3, dtype=float)
    m = np.empty(np.broadcast(x0, x1, x2, x3).shape + (2, 2), dtype=complex)
    m[..., 0, 0] = x0 + 1j * x3
    m[..., 0, 1] = -x2 + 1j * x1
    m[..., 1, 0] = x2 + 1j * x1
    m[..., 1, 1] = x0 - 1j * x3
    return m


def from_matrix(m: np.ndarray, atol: float = 1e-12) -> Quaternion:
    """Invert ``to_matrix``; raises PatternViolation off the component pattern."""
    m = np.asarray(m, dtype=complex)
    if m.shape[-2:] != (2, 2):
        raise PatternViolation("expected a 2x2 matrix")
    x0 = (m[..., 0, 0].real + m[..., 1, 1].real) / 2.0
    x3 = (m[..., 0, 0].imag - m[..., 1, 1].imag) / 2.0
    x1 = (m[..., 0, 1].imag + m[..., 1, 0].imag) / 2.0
    x2 = (m[..., 1, 0].real - m[..., 0, 1].real) / 2.0
    q = Quaternion(x0 if x0.ndim else float(x0), x1 if x1.ndim else float(x1),
                   x2 if x2.ndim else float(x2), x3 if x3.ndim else float(x3))
    if not np.allclose(to_matrix(q), m, atol=atol, rtol=0.0):
        raise PatternViolation("matrix does not match the quaternion pattern")
    return q


# -- polar form -----------------------------------------------------------------

@dataclass(frozen=True)
class PolarForm:
    """Polar angles of a quaternion.

    Reconstruction: x0 = r cos(theta), x1 = r sin(theta) sin(phi) cos(psi),
    x2 = r sin(theta) sin(phi) sin(psi), x3 = r sin(theta) cos(phi), with
    theta, phi in [0, pi] and psi in [0, 2*pi).  Angles that the coordinates
    leave undetermined (r = 0, sin(theta) = 0, sin(phi) = 0) are set to 0.
    """
    r: float
    theta: float
    phi: float
    psi: float

    def quaternion(self) -> Quaternion:
        st = np.sin(self.theta)
        sp = np.sin(self.phi)
        return Quaternion(self.r * np.cos(self.theta),
                          self.r * st * sp * np.cos(self.psi),
                          self.r * st * sp * np.sin(self.psi),
                          self.r * st * np.cos(self.phi))


def polar(q: Quaternion) -> PolarForm:
    r = q.norm()
    y = q.imag_norm()
    theta = np.where(r > 0, np.arctan2(y, q.x0), 0.0)
    rho = np.hypot(q.x1, q.x2)
    phi = np.where(y > 0, np.arctan2(rho, q.x3), 0.0)
    psi = np.where(rho > 0, np.mod(np.arctan2(q.x2, q.x1), 2.0 * np.pi), 0.0)
    if np.ndim(theta) == 0:
        return PolarForm(float(r), float(theta), float(phi), float(psi))
    return PolarForm(r, theta, phi, psi)


# -- slice decomposition -----------------------------------------------------

@dataclass(frozen=True)
class UnitImaginary:
    """A point of the imaginary unit sphere; squares to -1 as a quaternion."""
    x1: float
    x2: float
    x3: float

    def as_quaternion(self) -> Quaternion:
        return Quaternion(0.0, self.x1, self.x2, self.x3)

    def dot(self, other: "UnitImaginary") -> float:
        return (self.x1 * other.x1 + self.x2 * other.x2
                + self.x3 * other.x3)


CANONICAL_IMAGINARY = UnitImaginary(1.0, 0.0, 0.0)


@dataclass(frozen=True)
class SliceForm:
    """q = x + y*I with y >= 0; real q carries y = 0 and the canonical I = i."""
    x: float
    y: float
    imag: UnitImaginary

    def quaternion(self) -> Quaternion:
        return Quaternion(self.x, self.y * self.imag.x1,
                          self.y * self.imag.x2, self.y * self.imag.x3)

    def complex_value(self) -> complex:
        return complex(self.x, self.y)


def slice_decompose(q: Quaternion) -> SliceForm:
    y = q.imag_norm()
    if np.ndim(y) == 0:
        if y > 0.0:
            unit = UnitImaginary(q.x1 / y, q.x2 / y, q.x3 / y)
        else:
            unit = CANONICAL_IMAGINARY
        return SliceForm(float(q.x0), float(y), unit)
    safe = np.where(y > 0, y, 1.0)
    unit = UnitImaginary(np.where(y > 0, q.x1 / safe, 1.0),
                         np.where(y > 0, q.x2 / safe, 0.0),
                         np.where(y > 0, q.x3 / safe, 0.0))
    return SliceForm(q.x0, y, unit)


def slice_compose(x, y, unit: UnitImaginary) -> Quaternion:
    return Quaternion(x, y * unit.x1, y * unit.x2, y * unit.x3)


# -- SU(2) diagonalization ------------------------------------------------------

def su2_factor(q: Quaternion):
    """Unitary eigendecomposition M(q) = U diag(z, conj(z)) U^dagger.

    Returns (U, z) with z = x0 + i*|imag(q)| (so Im z >= 0), U special
    unitary.  The columns of U are the analytically-known eigenvectors of the
    normal matrix M(q); a real q returns U = identity.
    """
    if not q.is_scalar():
        raise ValueError("su2_factor expects a scalar quaternion")
    y = float(q.imag_norm())
    z = complex(q.x0, y)
    if y == 0.0:
        return np.eye(2, dtype=complex), z
    pf = polar(q)
    c = math.cos(pf.phi / 2.0)
    s = math.sin(pf.phi / 2.0)
    phase = complex(math.cos(pf.psi), math.sin(pf.psi))
    u = np.array([[c, -s * phase], [s * np.conj(phase), c]], dtype=complex)
    return u, z


def euler_unitary_candidate(pf: PolarForm, lead_phase_offset: float = 0.0) -> np.ndarray:
    """Symmetric-phase Euler candidate D(psi/2 + offset) R(phi) D(psi/2).

    With offset 0 this is the classical-looking sandwich
    diag(e^{i psi/2}, e^{-i psi/2}) [[cos(phi/2), i sin(phi/2)],
    [i sin(phi/2), cos(phi/2)]] diag(e^{i psi/2}, e^{-i psi/2}).
    It does *not* diagonalize the quaternion matrix; advancing the leading
    phase by pi/4 (offset = pi/4) repairs it.  ``su2_factor`` never uses this
    construction; it exists for the diagnostic suite.
    """
    half = pf.psi / 2.0
    lead = np.diag([np.exp(1j * (half + lead_phase_offset)),
                    np.exp(-1j * (half + lead_phase_offset))])
    trail = np.diag([np.exp(1j * half), np.exp(-1j * half)])
    c = math.cos(pf.phi / 2.0)
    s = math.sin(pf.phi / 2.0)
    rot = np.array([[c, 1j * s], [1j * s, c]], dtype=complex)
    return lead @ rot @ trail


# -- exponential ----------------------------------------------------------------

def q_exp(q: Quaternion, tol: float = 1e-16, max_terms: int = 512) -> Quaternion:
    """exp(q) by the power series, summed until the term norm drops below tol.

    On the slice of q this agrees with e^{x} (cos y + I sin y).
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    term = Quaternion(np.ones(np.shape(q.x0)) if np.ndim(q.x0) else 1.0)
    total = term
    for n in range(1, max_terms):
        term = term * q * (1.0 / n)
        total = total + term
        if np.max(term.norm()) < tol:
            break
    return total


def random_quaternion(rng: np.random.Generator, scale: float = 1.0,
                      size=None) -> Quaternion:
    """Gaussian random quaternion(s) with componentwise std ``scale``."""
    comps = rng.normal(0.0, scale, size=(4,) if size is None else (4, size))
    if size is None:
        return Quaternion(*(float(c) for c in comps))
    return Quaternion(*comps)
