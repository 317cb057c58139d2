"""Exact-coefficient polynomial carriers for the Hermite/Landau algebra.

``ZZbarPoly`` is a bivariate polynomial in (z, zbar) with exact integer or
rational coefficients, stored sparsely as {(i, j): coeff} for the monomial
z^i zbar^j.  ``GaussPoly`` multiplies such a polynomial by a Gaussian factor
exp(-alpha*z*zbar) and stays closed under d/dz, d/dzbar and multiplication
by z, zbar.  Floating evaluation happens only at the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .quaternion import Quaternion


class ZZbarPoly:
    """Sparse exact polynomial in z and zbar."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        data = {}
        if coeffs:
            for key, value in coeffs.items():
                if value != 0:
                    i, j = key
                    data[(int(i), int(j))] = value
        object.__setattr__(self, "coeffs", data)

    def __setattr__(self, name, value):
        raise AttributeError("ZZbarPoly is immutable")

    @classmethod
    def monomial(cls, i: int, j: int, coeff=1) -> "ZZbarPoly":
        return cls({(i, j): coeff})

    @classmethod
    def one(cls) -> "ZZbarPoly":
        return cls({(0, 0): 1})

    def items(self):
        return sorted(self.coeffs.items())

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, ZZbarPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.items()))

    def __repr__(self):
        terms = " + ".join(f"{c}*z^{i}*zb^{j}" for (i, j), c in self.items())
        return f"ZZbarPoly({terms or '0'})"

    def __add__(self, other: "ZZbarPoly") -> "ZZbarPoly":
        data = dict(self.coeffs)
        for key, value in other.coeffs.items():
            data[key] = data.get(key, 0) + value
        return ZZbarPoly(data)

    def __sub__(self, other: "ZZbarPoly") -> "ZZbarPoly":
        data = dict(self.coeffs)
        for key, value in other.coeffs.items():
            data[key] = data.get(key, 0) - value
        return ZZbarPoly(data)

    def __neg__(self) -> "ZZbarPoly":
        return ZZbarPoly({k: -v for k, v in self.coeffs.items()})

    def scale(self, factor) -> "ZZbarPoly":
        return ZZbarPoly({k: v * factor for k, v in self.coeffs.items()})

    def mul_z(self) -> "ZZbarPoly":
        return ZZbarPoly({(i + 1, j): v for (i, j), v in self.coeffs.items()})

    def mul_zbar(self) -> "ZZbarPoly":
        return ZZbarPoly({(i, j + 1): v for (i, j), v in self.coeffs.items()})

    def dz(self) -> "ZZbarPoly":
        return ZZbarPoly({(i - 1, j): v * i
                          for (i, j), v in self.coeffs.items() if i > 0})

    def dzbar(self) -> "ZZbarPoly":
        return ZZbarPoly({(i, j - 1): v * j
                          for (i, j), v in self.coeffs.items() if j > 0})

    def conj_transpose(self) -> "ZZbarPoly":
        """The polynomial whose complex evaluation is the conjugate (i <-> j)."""
        return ZZbarPoly({(j, i): v for (i, j), v in self.coeffs.items()})

    def top_degree(self):
        if not self.coeffs:
            return (0, 0)
        return max(self.coeffs, key=lambda key: (key[0] + key[1], key))

    def eval_complex(self, z: complex) -> complex:
        zb = np.conj(z)
        total = 0.0 + 0.0j
        for (i, j), coeff in self.items():
            total = total + float(coeff) * z ** i * zb ** j
        return total

    def eval_quaternion(self, q: Quaternion) -> Quaternion:
        """Evaluate with z^i zbar^j read as q^i conj(q)^j (they commute)."""
        max_i = max((i for (i, _) in self.coeffs), default=0)
        max_j = max((j for (_, j) in self.coeffs), default=0)
        shape = np.shape(q.x0)
        one = Quaternion(np.ones(shape)) if shape else Quaternion(1.0)
        powers_q = [one]
        for _ in range(max_i):
            powers_q.append(powers_q[-1] * q)
        qc = q.conj()
        powers_qc = [one]
        for _ in range(max_j):
            powers_qc.append(powers_qc[-1] * qc)
        total = Quaternion(np.zeros(shape)) if shape else Quaternion(0.0)
        for (i, j), coeff in self.items():
            total = total + powers_q[i] * powers_qc[j] * float(coeff)
        return total

    def table_rows(self):
        """(i, j, coeff) rows in sorted order, for delimited export."""
        return [(i, j, c) for (i, j), c in self.items()]


@dataclass(frozen=True)
class GaussPoly:
    """poly(z, zbar) * exp(-alpha*z*zbar) with exact rational alpha."""
    poly: ZZbarPoly
    alpha: Fraction

    def dz(self) -> "GaussPoly":
        return GaussPoly(self.poly.dz()
                         - self.poly.mul_zbar().scale(self.alpha), self.alpha)

    def dzbar(self) -> "GaussPoly":
        return GaussPoly(self.poly.dzbar()
                         - self.poly.mul_z().scale(self.alpha), self.alpha)

    def mul_z(self) -> "GaussPoly":
        return GaussPoly(self.poly.mul_z(), self.alpha)

    def mul_zbar(self) -> "GaussPoly":
        return GaussPoly(self.poly.mul_zbar(), self.alpha)

    def __add__(self, other: "GaussPoly") -> "GaussPoly":
        if self.alpha != other.alpha:
            raise ValueError("Gaussian exponents differ")
        return GaussPoly(self.poly + other.poly, self.alpha)

    def __sub__(self, other: "GaussPoly") -> "GaussPoly":
        if self.alpha != other.alpha:
            raise ValueError("Gaussian exponents differ")
        return GaussPoly(self.poly - other.poly, self.alpha)

    def scale(self, factor) -> "GaussPoly":
        return GaussPoly(self.poly.scale(factor), self.alpha)

    def eval_complex(self, z: complex) -> complex:
        weight = np.exp(-float(self.alpha) * (z * np.conj(z)).real)
        return self.poly.eval_complex(z) * weight


# -- univariate exact polynomials (ascending integer coefficients) -----------

def poly1_derivative(coeffs):
    return tuple(n * c for n, c in enumerate(coeffs))[1:] or (0,)

def poly1_eval(coeffs, x):
    total = 0.0
    power = 1.0
    for n, c in enumerate(coeffs):
        if n > 0:
            power = power * x
        total = total + float(c) * power
    return total
