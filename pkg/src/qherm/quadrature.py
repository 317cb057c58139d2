"""Deterministic quadrature rules for every measure the library integrates.

Plane measures are Gauss-Hermite tensor rules; the group factor is a
Gauss-Legendre x uniform rule for the normalized area element
(1/4pi) sin(phi) dphi dpsi of the unit sphere of imaginary directions, which
is exactly the push-forward of the normalized SU(2) Haar measure through
q = u diag(z, zbar) u^dagger.  A full three-angle rule is available behind
the ``n_alpha`` flag for cross-checks that probe the unitaries themselves.

Node and weight layouts are fixed (row-major planar, phi-major sphere), and
every integration reduces in that order, so results are bit-reproducible for
a given rule regardless of worker count.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .quaternion import Quaternion


class QuadratureError(RuntimeError):
    """Node/weight construction failed to converge."""


def worker_count() -> int:
    """Worker cap from QHERM_THREADS (default 1: plain serial loops)."""
    raw = os.environ.get("QHERM_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@dataclass(frozen=True)
class Rule1D:
    nodes: np.ndarray
    weights: np.ndarray
    kind: str

    def total_mass(self) -> float:
        return float(np.sum(self.weights))


def gauss_hermite(n: int, alpha: float = 1.0) -> Rule1D:
    """Rule for integrals against exp(-alpha x^2) dx on the line.

    Exact for polynomials of degree <= 2n - 1.
    """
    if n < 1:
        raise ValueError("order must be at least 1")
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    try:
        nodes, weights = np.polynomial.hermite.hermgauss(n)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise QuadratureError(f"Gauss-Hermite order {n} failed") from exc
    root = np.sqrt(alpha)
    return Rule1D(nodes / root, weights / root, f"gauss-hermite({alpha})")


def gauss_legendre(n: int) -> Rule1D:
    if n < 1:
        raise ValueError("order must be at least 1")
    try:
        nodes, weights = np.polynomial.legendre.leggauss(n)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise QuadratureError(f"Gauss-Legendre order {n} failed") from exc
    return Rule1D(nodes, weights, "gauss-legendre")


def trapezoid_periodic(n: int, period: float) -> Rule1D:
    """Uniform rule on [0, period); exact for trig frequencies < n."""
    if n < 1:
        raise ValueError("order must be at least 1")
    nodes = np.arange(n) * (period / n)
    weights = np.full(n, period / n)
    return Rule1D(nodes, weights, "trapezoid")


@dataclass(frozen=True)
class PlanarRule:
    """Tensor rule on the plane z = x + iy with a measure tag."""
    rule_x: Rule1D
    rule_y: Rule1D
    measure: str
    scale: float = 1.0

    def nodes_z(self) -> np.ndarray:
        x, y = np.meshgrid(self.rule_x.nodes, self.rule_y.nodes,
                           indexing="ij")
        return (x + 1j * y).ravel()

    def weights(self) -> np.ndarray:
        wx, wy = np.meshgrid(self.rule_x.weights, self.rule_y.weights,
                             indexing="ij")
        return (self.scale * wx * wy).ravel()

    def total_mass(self) -> float:
        return float(np.sum(self.weights()))


def planar_gaussian(alpha_x: float, alpha_y: float, order: int,
                    scale: float = 1.0, measure: str = "gaussian") -> PlanarRule:
    return PlanarRule(gauss_hermite(order, alpha_x),
                      gauss_hermite(order, alpha_y), measure, scale)


def planar_nu(s: float, order: int = 80) -> PlanarRule:
    """exp[-(1-s) x^2 - (1/s - 1) y^2] dx dy."""
    if not 0.0 < s < 1.0:
        raise ValueError("s must lie in (0, 1)")
    return planar_gaussian(1.0 - s, (1.0 - s) / s, order, 1.0, f"nu({s})")


# the weighting of the single-index family's plane measure is the same
# Gaussian; keep the alias so both measure names appear where they are used
planar_mu_s = planar_nu


def planar_gauss_lambda(order: int = 40) -> PlanarRule:
    """exp(-|z|^2) d^2z / pi, total mass one."""
    return planar_gaussian(1.0, 1.0, order, 1.0 / np.pi, "gauss-lambda")


@dataclass(frozen=True)
class SU2Rule:
    """Rule for the group average, stored through the sphere angles.

    ``weights`` contains the (1/4pi) sin(phi) area weights; ``phi``/``psi``
    are paired flat arrays.  When ``alpha`` carries a third-angle grid the
    rule also averages the residual diagonal phase, which only matters for
    integrands that look at the unitaries rather than at q.
    """
    phi: np.ndarray
    psi: np.ndarray
    weights: np.ndarray
    alpha: np.ndarray | None = None

    def total_mass(self) -> float:
        return float(np.sum(self.weights))

    def unit_imaginaries(self) -> np.ndarray:
        """(K, 3) directions sin(phi)cos(psi), sin(phi)sin(psi), cos(phi)."""
        sp = np.sin(self.phi)
        return np.column_stack([sp * np.cos(self.psi),
                                sp * np.sin(self.psi),
                                np.cos(self.phi)])

    def unitaries(self) -> np.ndarray:
        """(K, 2, 2) special unitaries diagonalizing the slice directions."""
        c = np.cos(self.phi / 2.0)
        s = np.sin(self.phi / 2.0)
        phase = np.exp(1j * self.psi)
        base = np.empty(self.phi.shape + (2, 2), dtype=complex)
        base[:, 0, 0] = c
        base[:, 0, 1] = -s * phase
        base[:, 1, 0] = s / phase
        base[:, 1, 1] = c
        if self.alpha is None:
            return base
        out = []
        for a in self.alpha:
            twist = np.array([[np.exp(1j * a / 2.0), 0.0],
                              [0.0, np.exp(-1j * a / 2.0)]])
            out.append(base @ twist)
        return np.concatenate(out, axis=0)

    def unitary_weights(self) -> np.ndarray:
        if self.alpha is None:
            return self.weights
        return np.concatenate([self.weights / len(self.alpha)
                               for _ in self.alpha])


def haar_su2(n_phi: int, n_psi: int, n_alpha: int = 1) -> SU2Rule:
    """Gauss-Legendre in cos(phi) tensor uniform psi, normalized to mass 1."""
    if n_phi < 2 or n_psi < 2:
        raise ValueError("need at least two nodes per angle")
    gl = gauss_legendre(n_phi)
    psi_rule = trapezoid_periodic(n_psi, 2.0 * np.pi)
    phi = np.arccos(gl.nodes)
    phi_grid, psi_grid = np.meshgrid(phi, psi_rule.nodes, indexing="ij")
    w_phi, w_psi = np.meshgrid(gl.weights, psi_rule.weights, indexing="ij")
    weights = (w_phi * w_psi / (4.0 * np.pi)).ravel()
    alpha = None
    if n_alpha > 1:
        alpha = np.arange(n_alpha) * (2.0 * np.pi / n_alpha)
    return SU2Rule(phi_grid.ravel(), psi_grid.ravel(), weights, alpha)


@dataclass(frozen=True)
class QuadratureSpec:
    """Product rule: plane factor tensor group factor."""
    planar: PlanarRule
    su2: SU2Rule

    def total_mass(self) -> float:
        return self.planar.total_mass() * self.su2.total_mass()


def spec_nu(s: float, planar_order: int = 80, n_phi: int = 12,
            n_psi: int = 24) -> QuadratureSpec:
    return QuadratureSpec(planar_nu(s, planar_order), haar_su2(n_phi, n_psi))


def spec_gauss_lambda(planar_order: int = 40, n_phi: int = 12,
                      n_psi: int = 24) -> QuadratureSpec:
    return QuadratureSpec(planar_gauss_lambda(planar_order),
                          haar_su2(n_phi, n_psi))


def orders_for_degree(degree: int):
    """(planar, n_phi, n_psi) making the rules exact for polynomial
    integrands of the given total degree in q and conj(q) components."""
    planar = degree // 2 + 4
    n_phi = degree // 2 + 3
    n_psi = degree + 2
    return planar, n_phi, n_psi


# -- integration ---------------------------------------------------------------


def integrate_C(f, rule: PlanarRule):
    """Weighted sum of f over the plane nodes, row-major order.

    f maps a complex array to complex or (array-)Quaternion values.
    """
    z = rule.nodes_z()
    w = rule.weights()
    values = f(z)
    if isinstance(values, Quaternion):
        comps = values.components()
        flat = comps.reshape(-1, 4)
        out = w @ flat if flat.shape[0] == w.shape[0] else np.sum(
            w[:, None] * flat, axis=0)
        return Quaternion(*out)
    values = np.asarray(values)
    return np.sum(w * values)


def slice_points(spec: QuadratureSpec, su2_index: int) -> Quaternion:
    """Array-quaternion of all plane nodes pushed onto one sphere direction."""
    z = spec.planar.nodes_z()
    n1, n2, n3 = spec.su2.unit_imaginaries()[su2_index]
    x = z.real
    y = z.imag
    return Quaternion(x, y * n1, y * n2, y * n3)


def _integrate_H_chunk(f, spec, indices, w_planar):
    partial = np.zeros(4)
    w_su2 = spec.su2.weights
    for k in indices:
        values = f(slice_points(spec, k))
        comps = values.components().reshape(-1, 4)
        if comps.shape[0] == 1:
            inner = comps[0] * np.sum(w_planar)
        else:
            inner = w_planar @ comps
        partial += w_su2[k] * inner
    return partial


_SU2_CHUNK = 8


def integrate_H(f, spec: QuadratureSpec, threads: int | None = None) -> Quaternion:
    """Iterated integral over the quaternions: group factor outer, plane inner.

    f maps an array-quaternion of nodes to array-quaternion values; scalar
    constants are broadcast.  The reduction tree is fixed (chunks of
    ``_SU2_CHUNK`` sphere nodes summed in order), so results are bitwise
    independent of the worker count.
    """
    w_planar = spec.planar.weights()
    count = spec.su2.weights.shape[0]
    threads = worker_count() if threads is None else max(1, threads)
    chunks = [range(start, min(start + _SU2_CHUNK, count))
              for start in range(0, count, _SU2_CHUNK)]
    if threads == 1 or len(chunks) < 2:
        parts = [_integrate_H_chunk(f, spec, chunk, w_planar)
                 for chunk in chunks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(
                lambda idx: _integrate_H_chunk(f, spec, idx, w_planar),
                chunks))
    total = np.zeros(4)
    for part in parts:
        total += part
    return Quaternion(*total)


def integrate_H_matrix(f, spec: QuadratureSpec,
                       threads: int | None = None) -> np.ndarray:
    """Same integral exposed in the 2x2 matrix picture."""
    from .quaternion import to_matrix

    return to_matrix(integrate_H(f, spec, threads))


# quaternion bilinear contractions: components of a * conj(b) and conj(a) * b
_PROD_CONJ_SECOND = (
    ((0, 0, 1.0), (1, 1, 1.0), (2, 2, 1.0), (3, 3, 1.0)),
    ((0, 1, -1.0), (1, 0, 1.0), (2, 3, -1.0), (3, 2, 1.0)),
    ((0, 2, -1.0), (1, 3, 1.0), (2, 0, 1.0), (3, 1, -1.0)),
    ((0, 3, -1.0), (1, 2, -1.0), (2, 1, 1.0), (3, 0, 1.0)),
)
_PROD_CONJ_FIRST = (
    ((0, 0, 1.0), (1, 1, 1.0), (2, 2, 1.0), (3, 3, 1.0)),
    ((0, 1, 1.0), (1, 0, -1.0), (2, 3, -1.0), (3, 2, 1.0)),
    ((0, 2, 1.0), (1, 3, 1.0), (2, 0, -1.0), (3, 1, -1.0)),
    ((0, 3, 1.0), (1, 2, -1.0), (2, 1, 1.0), (3, 0, -1.0)),
)


def _flatten_points(spec: QuadratureSpec, indices):
    """All plane nodes pushed onto a block of sphere directions, flattened."""
    z = spec.planar.nodes_z()
    dirs = spec.su2.unit_imaginaries()[indices]
    x = np.tile(z.real, len(indices))
    y = z.imag
    comps = [(dirs[:, axis][:, None] * y[None, :]).ravel() for axis in range(3)]
    weights = (spec.su2.weights[indices][:, None]
               * spec.planar.weights()[None, :]).ravel()
    return Quaternion(x, *comps), weights


def quaternion_gram(members_a, spec: QuadratureSpec, members_b=None,
                    conjugate: str = "second",
                    chunk_nodes: int = 200_000) -> np.ndarray:
    """Gram tensor G[c, i, j] of quaternion component c of the pair integrals.

    ``conjugate="second"`` computes the left-inner-product ordering
    integral of A_i * conj(B_j); ``"first"`` computes conj(A_i) * B_j.
    ``members_a``/``members_b`` are callables mapping an array-quaternion of
    nodes to the list of member values.  Sphere blocks are processed in
    order and reduced with fixed topology; the pairwise contraction is a
    dense matmul over the flattened nodes.
    """
    if conjugate not in ("first", "second"):
        raise ValueError("conjugate must be 'first' or 'second'")
    table = _PROD_CONJ_SECOND if conjugate == "second" else _PROD_CONJ_FIRST
    same = members_b is None
    members_b = members_a if same else members_b
    n_planar = spec.planar.weights().shape[0]
    n_su2 = spec.su2.weights.shape[0]
    per_block = max(1, chunk_nodes // n_planar)
    moments = None
    for start in range(0, n_su2, per_block):
        indices = np.arange(start, min(start + per_block, n_su2))
        points, weights = _flatten_points(spec, indices)
        va = _stack_members(members_a(points), weights.shape[0])
        vb = va if same else _stack_members(members_b(points),
                                            weights.shape[0])
        ka, kb = va.shape[1], vb.shape[1]
        lhs = (va * weights[None, None, :]).reshape(4 * ka, -1)
        rhs = vb.reshape(4 * kb, -1)
        contrib = lhs @ rhs.T
        moments = contrib if moments is None else moments + contrib
    moments = moments.reshape(4, ka, 4, kb)
    gram = np.zeros((4, ka, kb))
    for comp, terms in enumerate(table):
        for alpha, beta, sign in terms:
            gram[comp] += sign * moments[alpha, :, beta, :]
    return gram


def _stack_members(values, n_nodes: int) -> np.ndarray:
    """Stack a list of (array-)quaternion member values to (4, K, nodes)."""
    rows = []
    for value in values:
        comps = value.components().reshape(-1, 4)
        if comps.shape[0] == 1:
            comps = np.repeat(comps, n_nodes, axis=0)
        rows.append(comps.T)
    return np.stack(rows, axis=1)


def gram_deviation_from_identity(gram: np.ndarray) -> float:
    """max_ij |G_ij - delta_ij| with quaternion entry norms."""
    k = gram.shape[1]
    target = np.zeros_like(gram)
    target[0] = np.eye(k, gram.shape[2])
    diff = gram - target
    return float(np.max(np.sqrt(np.sum(diff ** 2, axis=0))))


# -- Monte Carlo cross-check -----------------------------------------------------


def mc_two_index_norm(n: int, m: int, n_samples: int, seed: int):
    """MC estimate of the squared norm of the two-index member under the
    exponent-1 Gaussian plane measure times the group average.

    Returns (estimate, standard_error).
    """
    from .hermite import h_nm_eval_q

    rng = np.random.default_rng(seed)
    xy = rng.normal(0.0, np.sqrt(0.5), size=(2, n_samples))
    direction = rng.normal(size=(3, n_samples))
    direction /= np.linalg.norm(direction, axis=0, keepdims=True)
    q = Quaternion(xy[0],
                   xy[1] * direction[0],
                   xy[1] * direction[1],
                   xy[1] * direction[2])
    values = h_nm_eval_q(n, m, q)
    samples = values.norm_sq()
    return float(np.mean(samples)), float(np.std(samples) / np.sqrt(n_samples))


# -- serialization ----------------------------------------------------------------


def rule_to_json(rule: Rule1D) -> str:
    return json.dumps({"kind": rule.kind,
                       "nodes": rule.nodes.tolist(),
                       "weights": rule.weights.tolist()})


def rule_from_json(payload: str) -> Rule1D:
    data = json.loads(payload)
    return Rule1D(np.asarray(data["nodes"], dtype=float),
                  np.asarray(data["weights"], dtype=float),
                  data["kind"])
