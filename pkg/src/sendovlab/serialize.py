"""JSON and CSV conventions shared by the whole package.

Complex scalars serialize as [re, im] pairs; arrays of them as lists
of pairs.  CSV numeric fields use 17 significant digits, enough to
round-trip binary64 exactly, so reruns with identical inputs produce
byte-identical files.
"""

from __future__ import annotations

import json

import numpy as np

from .measures import EmpiricalMeasure
from .poly_core import Polynomial, SendovInstance
from .potential import CircleDensity
from .rootfind import RootSet
from .sendov_check import SendovReport

__all__ = [
    "cpair",
    "cpairs",
    "density_to_json",
    "dumps",
    "fmt17",
    "from_cpair",
    "instance_to_json",
    "measure_from_json",
    "measure_to_json",
    "poly_from_json",
    "poly_to_json",
    "report_to_json",
    "rootset_to_json",
]


def cpair(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def from_cpair(pair) -> complex:
    if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
        raise ValueError(f"expected a [re, im] pair, got {pair!r}")
    return complex(float(pair[0]), float(pair[1]))


def cpairs(arr) -> list[list[float]]:
    return [cpair(z) for z in np.asarray(arr, dtype=np.complex128)]


def fmt17(x) -> str:
    """17-significant-digit decimal, the exact round-trip width for binary64."""
    return format(float(x), ".17g")


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, fixed separators, 2-space indent."""
    return json.dumps(obj, sort_keys=True, indent=2, separators=(",", ": "))


def poly_to_json(p: Polynomial) -> dict:
    return {
        "coeffs": cpairs(p.coeffs),
        "roots": cpairs(p.roots) if p.roots is not None else None,
        "leading": cpair(p.leading),
    }


def poly_from_json(obj: dict) -> Polynomial:
    try:
        coeffs = [from_cpair(c) for c in obj["coeffs"]]
    except KeyError as exc:
        raise ValueError("polynomial JSON needs a 'coeffs' field") from exc
    roots = obj.get("roots")
    if roots is not None:
        roots = [from_cpair(r) for r in roots]
    p = Polynomial(np.array(coeffs), np.array(roots) if roots is not None else None)
    if "leading" in obj and from_cpair(obj["leading"]) != p.leading:
        raise ValueError("leading field disagrees with the last coefficient")
    return p


def measure_to_json(m: EmpiricalMeasure) -> dict:
    return {"points": cpairs(m.points), "weights": [float(w) for w in m.weights]}


def measure_from_json(obj: dict) -> EmpiricalMeasure:
    return EmpiricalMeasure(
        np.array([from_cpair(p) for p in obj["points"]]),
        np.array([float(w) for w in obj["weights"]]),
    )


def rootset_to_json(rs: RootSet) -> dict:
    return {
        "points": cpairs(rs.points),
        "residuals": [float(r) for r in rs.residuals],
        "converged": bool(rs.converged),
    }


def report_to_json(rep: SendovReport) -> dict:
    return {
        "margins": [float(v) for v in rep.margins],
        "min_margin": float(rep.min_margin),
        "holds": bool(rep.holds),
    }


def density_to_json(d: CircleDensity) -> dict:
    return {"R": float(d.R), "samples": [float(s) for s in d.samples]}


def instance_to_json(inst: SendovInstance) -> dict:
    return {"polynomial": poly_to_json(inst.f), "a": float(inst.a)}
