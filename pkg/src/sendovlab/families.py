"""Instance factories: extremal examples, near-counterexample family, ensembles.

The classical extremal configurations are z**n - 1 (every margin
exactly zero) and z**n - z (critical circle of radius n**(-1/(n-1))).
The near-counterexample family takes a zero at a = 1 - c1/n and
multiplies a perturbed binomial by a finite Blaschke-style factor:

    f(z) = (z + c2/n)**(n-m) P(z) - (a + c2/n)**(n-m) P(a),

with P monic of degree m vanishing on prescribed points lambda_j in
the closed lune.  Its zeros hug the circle |z + c2/n| = 1 to O(1/n)
with a computable logarithmic shift profile, and all of its critical
points sit at -c2/n (multiplicity n-m-1) plus the m zeros of
P + (z + c2/n) P'/(n-m), known analytically; the generic solver can
only resolve the fat multiple root to a cluster of radius
~eps**(1/(n-m-1)) from coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .measures import empirical_measure, summary
from .poly_core import (
    Polynomial,
    SendovInstance,
    evaluate,
    from_roots,
    normalize_sendov,
)
from .potential import circle_fourier_coeff, log_potential
from .rootfind import RootSet, find_roots
from .sendov_check import critical_points

__all__ = [
    "FamilyParams",
    "FamilyReport",
    "SecondMomentCheck",
    "example_circle",
    "example_origin",
    "family_critical_points",
    "miller_family",
    "predicted_zero_shift",
    "random_instance",
    "second_moment_test",
    "verify_family",
]


def example_circle(n: int) -> SendovInstance:
    """z**n - 1 with the zero at a = 1: every margin is exactly zero."""
    if n < 2:
        raise ValueError("n must be at least 2")
    coeffs = np.zeros(n + 1, dtype=np.complex128)
    coeffs[0] = -1.0
    coeffs[n] = 1.0
    roots = np.exp(2j * np.pi * np.arange(n) / n)
    return SendovInstance(Polynomial(coeffs, roots), 1.0)


def example_origin(n: int) -> SendovInstance:
    """z**n - z with the zero at a = 0.

    The critical points fill the circle of radius n**(-1/(n-1)), the
    extremal distance ~ 1 - log(n)/n from the origin zero.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    coeffs = np.zeros(n + 1, dtype=np.complex128)
    coeffs[1] = -1.0
    coeffs[n] = 1.0
    roots = np.concatenate(
        [[0.0], np.exp(2j * np.pi * np.arange(n - 1) / (n - 1))]
    )
    return SendovInstance(Polynomial(coeffs, roots), 0.0)


@dataclass(frozen=True, eq=False)
class FamilyParams:
    """Parameters (n, c1, c2, lambdas) of the near-counterexample family."""

    n: int
    c1: float
    c2: float
    lambdas: np.ndarray

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if not (0 < self.c1 <= self.c2):
            raise ValueError("need 0 < c1 <= c2")
        lams = np.atleast_1d(np.asarray(self.lambdas, dtype=np.complex128))
        if lams.size >= self.n:
            raise ValueError("need fewer than n prescribed zeros of P")
        if lams.size:
            if np.any(np.abs(lams) > 1.0 + 1e-10):
                raise ValueError("each lambda must lie in the closed unit disk")
            if np.any(np.abs(lams - 1.0) < 1.0 - 1e-10):
                raise ValueError("each lambda must avoid the open disk D(1, 1)")
            d = np.abs(lams[:, None] - lams[None, :])
            np.fill_diagonal(d, np.inf)
            if lams.size > 1 and d.min() == 0.0:
                raise ValueError("lambdas must be pairwise distinct")
        lams.setflags(write=False)
        object.__setattr__(self, "lambdas", lams)

    @property
    def m(self) -> int:
        return self.lambdas.size

    @property
    def a(self) -> float:
        return 1.0 - self.c1 / self.n


def _binomial_shift_coeffs(nm: int, s: float) -> np.ndarray:
    """Ascending coefficients of (z + s)**nm, stable for large nm.

    Binomials stay exact integers; entries whose s**(nm-k) underflows
    are genuinely negligible at working precision and flush to zero.
    """
    out = np.empty(nm + 1, dtype=np.float64)
    for k in range(nm + 1):
        j = nm - k
        try:
            out[k] = float(math.comb(nm, k)) * s**j
        except OverflowError:
            # comb too large for a float: combine in log space instead
            out[k] = math.exp(
                math.lgamma(nm + 1) - math.lgamma(k + 1) - math.lgamma(j + 1)
                + j * math.log(s)
            )
    return out


def miller_family(params: FamilyParams) -> SendovInstance:
    """Build the family member in coefficient form.

    The subtracted constant is computed in log space (log1p of the
    O(1/n) offset), which keeps |f(a)| at rounding level for all n;
    the construction asserts |f(a)| <= 1e-10 relative to the
    coefficient scale at a.  No root list is attached: the zeros of
    these instances intentionally stray O(1/n) outside the unit disk.
    """
    n, c1, c2, lams = params.n, params.c1, params.c2, params.lambdas
    m = params.m
    a = params.a
    nm = n - m
    shift = _binomial_shift_coeffs(nm, c2 / n).astype(np.complex128)
    if m:
        pcoeffs = from_roots(lams).coeffs
        coeffs = np.convolve(shift, pcoeffs)
        p_at_a = complex(np.prod(a - lams))
    else:
        coeffs = shift
        p_at_a = 1.0 + 0.0j
    # (a + c2/n)**nm = exp(nm * log1p((c2 - c1)/n)) exactly in log space
    const = p_at_a * math.exp(nm * math.log1p((c2 - c1) / n))
    coeffs[0] -= const
    f = Polynomial(coeffs)
    scale = 1.0 + float(np.polyval(np.abs(coeffs)[::-1], a).real)
    resid = abs(evaluate(f, a))
    if resid > 1e-10 * scale:
        raise AssertionError(f"family construction residual {resid:.3e} too large")
    return SendovInstance(f, a)


def family_critical_points(params: FamilyParams) -> RootSet:
    """All critical points, from the derivative's analytic factorization.

    f'(z) = (n-m) (z + c2/n)**(n-m-1) [ P(z) + (z + c2/n) P'(z)/(n-m) ],
    so the critical points are -c2/n with multiplicity n-m-1 plus the m
    zeros of the bracket.  The multiple root is exact by construction
    (residual 0), sidestepping its eps**(1/(n-m-1)) conditioning in
    coefficient form.
    """
    n, c2, lams = params.n, params.c2, params.lambdas
    m = params.m
    nm = n - m
    base = np.full(nm - 1, -c2 / n, dtype=np.complex128)
    if m == 0:
        return RootSet(base, np.zeros(nm - 1), True)
    pcoeffs = from_roots(lams).coeffs  # ascending, degree m
    q = np.zeros(m + 1, dtype=np.complex128)
    for k in range(m + 1):
        q[k] = pcoeffs[k] + k * pcoeffs[k] / nm
        if k + 1 <= m:
            q[k] += (c2 / n) * (k + 1) * pcoeffs[k + 1] / nm
    extra = find_roots(Polynomial(q))
    if not extra.converged:
        raise RuntimeError("bracket-factor root finding did not converge")
    return RootSet(
        np.concatenate([base, extra.points]),
        np.concatenate([np.zeros(nm - 1), extra.residuals]),
        True,
    )


def predicted_zero_shift(params: FamilyParams, theta) -> np.ndarray | float:
    """First-order radial shift profile t(theta) of the family's zeros.

    Zeros at angle theta of w = zeta + c2/n satisfy
    |w| = 1 + t(theta)/n + O(1/n^2) with
    t = c2 - c1 + sum_j log|(1 - lambda_j)/(e^{i theta} - lambda_j)|.
    """
    th = np.asarray(theta, dtype=float)
    t = np.full(th.shape, params.c2 - params.c1, dtype=float)
    for lam in params.lambdas:
        t += np.log(np.abs(1.0 - lam) / np.abs(np.exp(1j * th) - lam))
    if np.isscalar(theta) or np.asarray(theta).ndim == 0:
        return float(t)
    return t


@dataclass(frozen=True, eq=False)
class FamilyReport:
    """Numerical verdict on one family member.

    zero_radius_residuals stores n * ||zeta + c2/n| - 1| per zero (the
    O(1) magnitudes of the radial deviation); t_prediction_errors the
    per-zero gap between that deviation and the predicted profile
    (an O(1/n) quantity); ten_residuals the exact log identity each
    zero must satisfy (rounding-level when the solver is healthy).
    lamin_values samples t(theta) - c2 cos(theta) on a uniform grid;
    a counterexample would need this <= 0 everywhere, yet its mean is
    sum_j log|1 - lambda_j| >= 0, the heart of the obstruction.
    """

    params: FamilyParams
    ten_residuals: np.ndarray
    zero_radius_residuals: np.ndarray
    t_prediction_errors: np.ndarray
    lamin_thetas: np.ndarray
    lamin_values: np.ndarray
    arc_argument_ok: bool
    sum_lambda_sq: complex
    sum_abs_lambda_sq: float
    fine: dict


def verify_family(params: FamilyParams, theta_grid: int = 2048) -> FamilyReport:
    """Locate the zeros, test the radial law, and collect diagnostics."""
    inst = miller_family(params)
    n, c1, c2, lams = params.n, params.c1, params.c2, params.lambdas
    m = params.m
    a = params.a
    nm = n - m
    rs = find_roots(inst.f)
    if not rs.converged:
        raise RuntimeError("family zero finding did not converge")
    zeta = rs.points
    w = zeta + c2 / n
    radius = np.abs(w)
    theta = np.angle(w)

    # exact per-zero identity: log|w/(a + c2/n)| = (1/(n-m)) sum log|(a-l)/(z-l)|
    lhs = np.log(radius / (a + c2 / n))
    if m:
        rhs = np.sum(
            np.log(np.abs((a - lams[None, :]) / (zeta[:, None] - lams[None, :]))),
            axis=1,
        ) / nm
    else:
        rhs = np.zeros_like(lhs)
    ten = np.abs(lhs - rhs)

    t_pred = predicted_zero_shift(params, theta)
    zon = n * np.abs(radius - 1.0)
    terr = np.abs(n * (radius - 1.0) - t_pred)

    thetas = np.linspace(0.0, 2.0 * np.pi, theta_grid, endpoint=False)
    lamin = predicted_zero_shift(params, thetas) - c2 * np.cos(thetas)

    arc_ok = True
    for lam in lams:
        if lam == 0 or abs(abs(lam - 1.0) - 1.0) > 1e-9:
            continue
        if not (np.pi / 3 - 1e-9 <= abs(np.angle(lam)) <= np.pi / 2 + 1e-9):
            arc_ok = False

    crit = family_critical_points(params)
    mx = empirical_measure(crit.points)
    stats = summary(mx)
    fine = {
        "mu": stats.mean,
        "sigma2": stats.variance,
        "one_minus_a": 1.0 - a,
        "u_xi_at_a": log_potential(mx, complex(a)),
    }
    return FamilyReport(
        params=params,
        ten_residuals=ten,
        zero_radius_residuals=zon,
        t_prediction_errors=terr,
        lamin_thetas=thetas,
        lamin_values=lamin,
        arc_argument_ok=arc_ok,
        sum_lambda_sq=complex(np.sum(lams**2)) if m else 0j,
        sum_abs_lambda_sq=float(np.sum(np.abs(lams) ** 2)) if m else 0.0,
        fine=fine,
    )


@dataclass(frozen=True)
class SecondMomentCheck:
    """E xi^2 computed directly and through the circle Fourier route."""

    direct: complex
    from_fourier: complex
    difference: float
    variance: float
    re_ratio: float


def second_moment_test(
    inst: SendovInstance, crit: RootSet | None = None, N: int = 4096
) -> SecondMomentCheck:
    """Cross-check E xi^2 against 4x the k=2 Fourier coefficient of U_xi.

    The potential of the critical measure on the unit circle encodes
    the raw moments; the k = 2 coefficient times 4 equals E xi^2
    exactly.  Also reports Re E[xi^2] / Var as the anticoncentration
    ratio of interest on near-extremal instances.
    """
    if crit is None:
        crit = critical_points(inst.f)
        if not crit.converged:
            raise RuntimeError("critical point finding did not converge; pass crit=")
    mx = empirical_measure(crit.points)
    stats = summary(mx)
    direct = stats.second_moment
    four = 4.0 * circle_fourier_coeff(mx, 1.0, 2, N=N)
    var = stats.variance
    return SecondMomentCheck(
        direct=direct,
        from_fourier=complex(four),
        difference=abs(direct - four),
        variance=var,
        re_ratio=(direct.real / var) if var > 0 else math.inf,
    )


def random_instance(rng: np.random.Generator, n: int) -> SendovInstance:
    """A random instance with angularly separated zeros.

    Zeros at jittered equispaced angles with radii in [0.7, 1], rotated
    so the largest-modulus zero lands on the positive real axis.  The
    angular separation keeps the coefficient representation well
    conditioned (dense uniform configurations lose ~n digits in the
    products of pairwise distances), so computed roots and critical
    points carry ~1e-10 forward accuracy up to n ~ 32.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    angles = 2.0 * np.pi * (np.arange(n) + rng.uniform(0.15, 0.85, n)) / n
    radii = rng.uniform(0.7, 1.0, n)
    roots = radii * np.exp(1j * angles)
    p = from_roots(roots)
    return normalize_sendov(p, int(np.argmax(np.abs(roots))))
