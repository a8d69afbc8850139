"""Simultaneous polynomial root finding with residual certificates.

The solver is Aberth–Ehrlich: all roots are iterated together, each
step a Newton correction repelled by the other iterates.  Convergence
is certified in the backward sense: the scaled residual
|p(z)| / sum_k |c_k| |z|^k is the exact relative coefficient
perturbation that would make z a true root, so iterates below the
tolerance are roots of a polynomial indistinguishable from the input
at that precision.  Multiple roots are reported as clusters of simple
roots (their intrinsic resolution in coefficient form is eps**(1/m));
:func:`cluster_multiplicities` regroups them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .poly_core import Polynomial, derivative

__all__ = [
    "RootSet",
    "cluster_multiplicities",
    "find_roots",
    "find_roots_batch",
    "refine_root",
]

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 200


@dataclass(frozen=True, eq=False)
class RootSet:
    """Roots found by the solver, with per-root backward errors.

    ``converged`` is False when any residual still exceeds the requested
    tolerance after the iteration budget; the best iterates are returned
    regardless, never silently wrong values.
    """

    points: np.ndarray
    residuals: np.ndarray
    converged: bool

    def __post_init__(self):
        points = np.asarray(self.points, dtype=np.complex128)
        residuals = np.asarray(self.residuals, dtype=np.float64)
        if points.shape != residuals.shape:
            raise ValueError("points and residuals must have matching shapes")
        points.setflags(write=False)
        residuals.setflags(write=False)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "residuals", residuals)

    def __len__(self) -> int:
        return self.points.size


def _horner_batch(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Evaluate each row polynomial at the matching row of iterates.

    coeffs has shape (B, d+1) ascending; z has shape (B, d).
    """
    acc = np.zeros_like(z)
    for k in range(coeffs.shape[1] - 1, -1, -1):
        acc = acc * z + coeffs[:, k, None]
    return acc


def _aberth(coeffs: np.ndarray, tol: float, max_iter: int):
    """Core batched Aberth iteration on monic-normalized coefficient rows.

    Returns (points, residuals, iterations_used).  coeffs: (B, d+1).
    """
    b, w = coeffs.shape
    d = w - 1
    coeffs = coeffs / coeffs[:, -1, None]
    dcoeffs = coeffs[:, 1:] * np.arange(1, d + 1)
    abs_coeffs = np.abs(coeffs)

    # Cauchy bound radius; perturbed angles break root symmetries that
    # would otherwise trap the symmetric initial configuration.
    radius = 1.0 + np.max(abs_coeffs[:, :-1], axis=1)
    j = np.arange(d)
    angles = 2.0 * np.pi * j / d + np.pi / (2.0 * d) + 1e-3 * np.cos(3.0 * j)
    z = radius[:, None] * np.exp(1j * angles)[None, :]

    frozen = np.zeros((b, d), dtype=bool)
    iterations = 0
    for iterations in range(1, max_iter + 1):
        pv = _horner_batch(coeffs, z)
        scale = _horner_batch(abs_coeffs.astype(np.complex128), np.abs(z).astype(np.complex128)).real
        residual = np.abs(pv) / scale
        frozen |= residual <= tol
        if frozen.all():
            break
        pdv = _horner_batch(dcoeffs, z)
        bad = pdv == 0
        if bad.any():
            pdv = np.where(bad, 1e-300, pdv)
        wn = pv / pdv
        diff = z[:, :, None] - z[:, None, :]
        idx = np.arange(d)
        diff[:, idx, idx] = np.inf
        s = np.sum(1.0 / diff, axis=2)
        denom = 1.0 - wn * s
        denom = np.where(denom == 0, 1.0, denom)
        step = wn / denom
        step = np.where(frozen, 0.0, step)
        z = z - step
        lost = ~np.isfinite(z)
        if lost.any():
            z = np.where(lost, radius[:, None] * np.exp(1j * (angles[None, :] + 0.37)), z)

    pv = _horner_batch(coeffs, z)
    scale = _horner_batch(abs_coeffs.astype(np.complex128), np.abs(z).astype(np.complex128)).real
    residual = np.abs(pv) / scale
    return z, residual, iterations


def find_roots(p: Polynomial, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> RootSet:
    """Find all roots of p simultaneously.

    Exact zero coefficients at the low end are stripped first, so
    polynomials like z**n - z report their origin roots exactly.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    coeffs = p.coeffs
    k = 0
    while coeffs[k] == 0:
        k += 1
    d = p.degree - k
    zero_points = np.zeros(k, dtype=np.complex128)
    zero_residuals = np.zeros(k, dtype=np.float64)
    if d == 0:
        return RootSet(zero_points, zero_residuals, True)
    pts, res, _ = _aberth(coeffs[k:][None, :], tol, max_iter)
    points = np.concatenate([zero_points, pts[0]])
    residuals = np.concatenate([zero_residuals, res[0]])
    return RootSet(points, residuals, bool(np.all(residuals <= tol)))


def find_roots_batch(
    coeffs: np.ndarray, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER
):
    """Solve a batch of same-degree polynomials at once.

    Parameters
    ----------
    coeffs : ndarray of complex, shape (B, d+1)
        Ascending coefficient rows, nonzero leading and constant terms
        (strip exact zero roots before batching).

    Returns
    -------
    points : ndarray (B, d), residuals : ndarray (B, d), converged : ndarray (B,) of bool
    """
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    if coeffs.ndim != 2:
        raise ValueError("coeffs must be a 2-d array")
    if np.any(coeffs[:, -1] == 0) or np.any(coeffs[:, 0] == 0):
        raise ValueError("batched rows need nonzero leading and constant coefficients")
    pts, res, _ = _aberth(coeffs, tol, max_iter)
    return pts, res, np.all(res <= tol, axis=1)


class DerivativeVanishes(ArithmeticError):
    """Newton refinement hit a point where p' is exactly zero."""


def refine_root(p: Polynomial, z0: complex, steps: int = 20) -> complex:
    """Polish a single root estimate by damped Newton iteration.

    The residual |p(z)| never increases over accepted steps; a step that
    would increase it is halved (up to 40 times) and the iteration stops
    when no improvement is possible.  Raises :class:`DerivativeVanishes`
    when p'(z) = 0 exactly, the signature of a multiple root; callers
    should fall back to :func:`cluster_multiplicities`.
    """
    from .poly_core import evaluate

    dp = derivative(p)
    z = complex(z0)
    fz = abs(evaluate(p, z))
    for _ in range(steps):
        if fz == 0.0:
            return z
        pd = evaluate(dp, z)
        if pd == 0:
            raise DerivativeVanishes(f"p'({z!r}) = 0; possible multiple root")
        step = evaluate(p, z) / pd
        trial, ftrial = z - step, None
        for _ in range(40):
            ftrial = abs(evaluate(p, trial))
            if ftrial <= fz:
                break
            step /= 2.0
            trial = z - step
        if ftrial is None or ftrial > fz:
            return z
        z, fz = trial, ftrial
    return z


def cluster_multiplicities(rs: RootSet, eps: float) -> list[tuple[complex, int]]:
    """Group near-coincident roots into (centroid, multiplicity) pairs.

    Single-linkage: roots within eps of any member join the cluster.
    Cluster counts sum to the total root count; clusters are returned
    sorted by centroid (real part, then imaginary part).
    """
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    pts = rs.points
    m = pts.size
    parent = list(range(m))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    if m > 1:
        diff = np.abs(pts[:, None] - pts[None, :])
        close = diff <= eps
        for i in range(m):
            for jj in np.nonzero(close[i, i + 1 :])[0]:
                ri, rj = find(i), find(i + 1 + jj)
                if ri != rj:
                    parent[rj] = ri
    groups: dict[int, list[int]] = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(i)
    clusters = [
        (complex(np.mean(pts[idx])), len(idx)) for idx in groups.values()
    ]
    clusters.sort(key=lambda c: (c[0].real, c[0].imag))
    return clusters
