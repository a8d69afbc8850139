"""Complex polynomials with a dual coefficient/root representation.

Coefficients are stored ascending by power and drive Horner evaluation
and differentiation.  An optional root list, when attached, is the
source of truth for log-domain work (overflow-free evaluation for
degrees in the hundreds) and is cross-checked against the coefficients
on construction for moderate degrees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "AtomCollisionError",
    "Polynomial",
    "SendovInstance",
    "attach_roots",
    "derivative",
    "eval_log_abs",
    "evaluate",
    "from_roots",
    "from_roots_batch",
    "normalize_sendov",
]

# Absolute slack on |leading - 1| below which a polynomial counts as monic.
MONIC_TOL = 1e-12
# Slack on |root| <= 1 when validating unit-disk membership.
DISK_TOL = 1e-10
# Root lists are expanded and checked against the coefficients up to this
# degree; beyond it the expansion itself is too noisy to be a useful check.
_EXPAND_CHECK_MAX_DEGREE = 64
_EXPAND_CHECK_RTOL = 1e-9


class AtomCollisionError(ValueError):
    """A query point coincides exactly with a zero or measure atom."""


def _as_complex_vector(values, name: str) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(values, dtype=np.complex128))
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def _horner(coeffs: np.ndarray, z):
    """Evaluate sum coeffs[k] z^k by Horner's rule (z scalar or array)."""
    acc = np.zeros_like(np.asarray(z, dtype=np.complex128))
    for c in coeffs[::-1]:
        acc = acc * z + c
    return acc


@dataclass(frozen=True, eq=False)
class Polynomial:
    """Degree-n polynomial over C, coefficients ascending by power.

    Attributes
    ----------
    coeffs : ndarray of complex, shape (n+1,)
        ``coeffs[k]`` multiplies z**k; the leading entry is nonzero.
    roots : ndarray of complex or None
        Optional multiset of zeros, stored verbatim.  When present it
        must reproduce ``coeffs`` on expansion (checked for n <= 64).
    """

    coeffs: np.ndarray
    roots: np.ndarray | None = None

    def __post_init__(self):
        coeffs = _as_complex_vector(self.coeffs, "coeffs")
        if coeffs.size < 2:
            raise ValueError("degree must be at least 1")
        if coeffs[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)
        if self.roots is not None:
            roots = _as_complex_vector(self.roots, "roots")
            if roots.size != self.degree:
                raise ValueError(
                    f"root count {roots.size} does not match degree {self.degree}"
                )
            roots.setflags(write=False)
            object.__setattr__(self, "roots", roots)
            if self.degree <= _EXPAND_CHECK_MAX_DEGREE:
                expanded = _expand_roots(roots, coeffs[-1])
                scale = np.max(np.abs(coeffs))
                err = np.max(np.abs(expanded - coeffs))
                if err > _EXPAND_CHECK_RTOL * scale:
                    raise ValueError(
                        "attached roots do not reproduce the coefficients: "
                        f"max deviation {err:.3e} vs scale {scale:.3e}"
                    )

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    @property
    def leading(self) -> complex:
        return complex(self.coeffs[-1])

    @property
    def monic(self) -> bool:
        return abs(self.leading - 1.0) <= MONIC_TOL


def _leja_order(roots: np.ndarray) -> np.ndarray:
    """Greedy max-distance-product ordering for stable expansion.

    Incremental convolution in caller order can grow intermediate
    coefficients exponentially (e.g. roots of unity sorted by angle);
    Leja ordering keeps the partial products tame.  The product itself
    is order-independent, so this only changes the floating-point path.
    """
    m = roots.size
    if m <= 2:
        return roots
    order = np.empty(m, dtype=np.intp)
    chosen = np.zeros(m, dtype=bool)
    first = int(np.argmax(np.abs(roots)))
    order[0] = first
    chosen[first] = True
    score = np.zeros(m)
    for k in range(1, m):
        with np.errstate(divide="ignore"):
            score += np.log(np.abs(roots - roots[order[k - 1]]))
        cand = np.flatnonzero(~chosen)
        nxt = int(cand[np.argmax(score[cand])])
        order[k] = nxt
        chosen[nxt] = True
    return roots[order]


def _expand_roots(roots: np.ndarray, leading: complex) -> np.ndarray:
    """Multiply out leading * prod (z - r) into ascending coefficients."""
    coeffs = np.array([leading], dtype=np.complex128)
    for r in _leja_order(roots):
        nxt = np.zeros(coeffs.size + 1, dtype=np.complex128)
        nxt[1:] = coeffs
        nxt[:-1] -= r * coeffs
        coeffs = nxt
    return coeffs


def _expand_roots_compensated(roots: np.ndarray, leading: complex) -> np.ndarray:
    """Same expansion with Kahan-compensated accumulation per step."""
    coeffs = np.array([leading], dtype=np.complex128)
    comp = np.zeros(1, dtype=np.complex128)
    for r in _leja_order(roots):
        nxt = np.zeros(coeffs.size + 1, dtype=np.complex128)
        nxt[1:] = coeffs
        nxt_comp = np.zeros_like(nxt)
        nxt_comp[1:] = comp
        delta = np.zeros_like(nxt)
        delta[:-1] = -r * coeffs
        delta[1:] += -r * comp
        y = delta - nxt_comp
        t = nxt + y
        comp = (t - nxt) - y
        coeffs = t
    return coeffs


def from_roots(roots, leading: complex = 1.0, compensated: bool = False) -> Polynomial:
    """Build a polynomial from its zero multiset.

    Parameters
    ----------
    roots : sequence of complex
        Zeros with multiplicity, any order.
    leading : complex
        Leading coefficient; must be nonzero.
    compensated : bool
        Use compensated accumulation in the expansion.  Worth switching
        on above degree ~512 where plain convolution loses digits.
    """
    roots = _as_complex_vector(roots, "roots")
    if roots.size == 0:
        raise ValueError("at least one root is required")
    leading = complex(leading)
    if leading == 0:
        raise ValueError("leading coefficient must be nonzero")
    expand = _expand_roots_compensated if compensated else _expand_roots
    coeffs = expand(roots, leading)
    return Polynomial(coeffs, roots)


def from_roots_batch(roots: np.ndarray) -> np.ndarray:
    """Expand a batch of monic polynomials from root rows.

    Parameters
    ----------
    roots : ndarray of complex, shape (B, n)
        One root multiset per row.

    Returns
    -------
    ndarray of complex, shape (B, n+1)
        Ascending coefficient rows (monic).
    """
    roots = np.asarray(roots, dtype=np.complex128)
    if roots.ndim != 2:
        raise ValueError("roots must be a 2-d array")
    b, n = roots.shape
    coeffs = np.zeros((b, n + 1), dtype=np.complex128)
    coeffs[:, 0] = 1.0
    for j in range(n):
        head = coeffs[:, : j + 1].copy()
        coeffs[:, 1 : j + 2] = head
        coeffs[:, 0] = 0.0
        coeffs[:, : j + 1] -= roots[:, j, None] * head
    return coeffs


def evaluate(p: Polynomial, z):
    """Evaluate p at z (scalar or array) by Horner's rule."""
    out = _horner(p.coeffs, z)
    if np.isscalar(z) or np.asarray(z).ndim == 0:
        return complex(out)
    return out


def eval_log_abs(p: Polynomial, z: complex) -> float:
    """Return log|p(z)| as log|leading| + sum log|z - root|.

    Requires the root list; stays finite for degrees where the
    coefficient form would overflow.  Raises :class:`AtomCollisionError`
    when z is exactly a stored root (log|p| = -inf there).
    """
    if p.roots is None:
        raise ValueError("eval_log_abs requires the root list")
    diffs = z - p.roots
    if np.any(diffs == 0):
        raise AtomCollisionError("z coincides with a root")
    terms = np.log(np.abs(diffs))
    return math.log(abs(p.leading)) + math.fsum(terms.tolist())


def derivative(p: Polynomial) -> Polynomial:
    """Formal derivative; any attached roots are dropped."""
    k = np.arange(1, p.coeffs.size)
    return Polynomial(p.coeffs[1:] * k)


def attach_roots(p: Polynomial, roots) -> Polynomial:
    """Return a copy of p with the given roots attached (and validated)."""
    return Polynomial(p.coeffs, _as_complex_vector(roots, "roots"))


@dataclass(frozen=True, eq=False)
class SendovInstance:
    """A monic polynomial paired with a distinguished real zero a in [0, 1].

    The classical normalization: after rotation, the zero under study
    sits at a on the positive real axis.  ``f(a) = 0`` is enforced up
    to a residual tolerance; when an explicit root list is attached,
    every zero must lie in the closed unit disk.  Instances built in
    coefficient form (no root list) skip the disk check, which lets the
    near-counterexample families carry zeros O(1/n) outside the disk.
    """

    f: Polynomial
    a: float

    def __post_init__(self):
        if not self.f.monic:
            raise ValueError("instance polynomial must be monic")
        a = float(self.a)
        if not (0.0 <= a <= 1.0 + 1e-12):
            raise ValueError("a must lie in [0, 1]")
        object.__setattr__(self, "a", min(a, 1.0))
        scale = 1.0 + float(_horner(np.abs(self.f.coeffs), a).real)
        residual = abs(evaluate(self.f, a))
        if residual > 1e-8 * scale:
            raise ValueError(f"f(a) residual {residual:.3e} exceeds tolerance")
        if self.f.roots is not None:
            top = float(np.max(np.abs(self.f.roots)))
            if top > 1.0 + DISK_TOL:
                raise ValueError(f"root modulus {top:.17g} outside closed unit disk")

    @property
    def n(self) -> int:
        return self.f.degree


def normalize_sendov(p: Polynomial, zero_index: int) -> SendovInstance:
    """Rotate and rescale so the selected zero lands on [0, 1].

    The polynomial is made monic and rotated by the unit conjugate
    phase of the selected zero; pairwise root distances are preserved.
    """
    if p.roots is None:
        raise ValueError("normalize_sendov requires the root list")
    if not (0 <= zero_index < p.roots.size):
        raise IndexError("zero_index out of range")
    z0 = complex(p.roots[zero_index])
    a = abs(z0)
    if a > 1.0 + DISK_TOL:
        raise ValueError("selected zero lies outside the closed unit disk")
    u = z0.conjugate() / a if z0 != 0 else 1.0
    rotated = p.roots * u
    rotated[zero_index] = a  # exact by construction: z0 * conj(z0)/|z0| = |z0|
    f = from_roots(rotated, 1.0)
    return SendovInstance(f, min(a, 1.0))
