"""Polar duality: the dual domain, boundary correspondence, and dual measure.

The polar body D* = {z : Re<z, zeta> < 1 on D} of a domain generated by
(p(s), b2, b1) is generated by the conjugate profile p*(s) = p(s)/(p(s)-1)
with inverted scales (1/b2, 1/b1).  Along the boundary the correspondence T
preserves the parameter s and satisfies

    r1(T) = s / r1,   r2(T) = (1-s) / r2,

so r1 (r1 o T) + r2 (r2 o T) = 1.  Replacing omega by 1/omega carries an
admissible measure to an admissible measure on the polar, and the spectral
data of the transform are identical on the two sides: the three piece
integrals simply swap roles, I*(+1) = I(-1), I*(-1) = I(+1), I*(0) = I(0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .domain import ClassTag, DomainModel, DomainSpecError, from_generator
from .errors import NonAdmissibleMeasureError, UnsupportedClassError
from .measure import Admissibility, BoundaryMeasure, is_admissible
from .spectrum import piece_norm

__all__ = [
    "DualPair",
    "DualityReport",
    "polar",
    "t_map",
    "dual_measure",
    "dual_pair",
    "verify_duality",
]


def polar(d: DomainModel) -> DomainModel:
    """The polar domain, generated by the conjugate profile and inverted scales."""
    if d.class_tag is ClassTag.OUTSIDE_TILDE_R:
        raise UnsupportedClassError(
            "polar duality needs a TildeR (or better) domain")
    return from_generator(d.profile.conjugate(), 1.0 / d.b1, 1.0 / d.b2)


def t_map(d: DomainModel, s: float) -> Tuple[float, float]:
    """Coordinates (r1*, r2*) = (s/r1(s), (1-s)/r2(s)) of the boundary map.

    These equal the polar domain's radii at the same parameter s.
    """
    if not 0.0 < s < 1.0:
        raise DomainSpecError(f"t_map needs s in (0,1), got {s!r}")
    r1, r2 = d.radii(s)
    return s / r1, (1.0 - s) / r2


def dual_measure(m: BoundaryMeasure, polar_domain: DomainModel) -> BoundaryMeasure:
    """The measure on the polar with omega replaced by 1/omega.

    Requires m admissible (duality is stated for admissible measures); the
    dual is then admissible as well.  For an order-q measure the dual is an
    order-q measure of the polar domain -- the formula lambda(p, q, n) is
    p <-> p* symmetric at fixed q, which is exactly why the discrete
    spectral families coincide.
    """
    verdict = is_admissible(m)
    if verdict is not Admissibility.ADMISSIBLE:
        raise NonAdmissibleMeasureError(
            f"dual measure needs an admissible primal, got {verdict.value}")
    return m.dual(polar_domain)


@dataclass(frozen=True)
class DualPair:
    """A domain/measure pair together with its polar counterpart."""

    primal: DomainModel
    polar: DomainModel
    measure_primal: BoundaryMeasure
    measure_dual: BoundaryMeasure


def dual_pair(d: DomainModel, mu: BoundaryMeasure) -> DualPair:
    """Construct the full dual configuration for a domain and measure."""
    dstar = polar(d)
    return DualPair(primal=d, polar=dstar, measure_primal=mu,
                    measure_dual=dual_measure(mu, dstar))


@dataclass(frozen=True)
class DualityReport:
    """Piece-norm comparison between a pair and its polar configuration."""

    grid: Tuple[Tuple[int, int], ...]
    max_discrepancy: float
    arg_max: Tuple[int, int]
    threshold: float
    passed: bool


def verify_duality(pair: DualPair, grid: Sequence[Tuple[int, int]],
                   tol: float = 1e-11) -> DualityReport:
    """Compare ||L_nm||^2 on the primal and polar sides over an index grid.

    The two sides are computed by independent quadratures (the polar runs on
    its own reconstructed coordinates), so agreement checks the whole
    duality pipeline, not an algebraic identity of shared code.
    """
    worst, arg = 0.0, (0, 0)
    for n, m in grid:
        a = piece_norm(pair.primal, pair.measure_primal, n, m, tol).norm_sq
        b = piece_norm(pair.polar, pair.measure_dual, n, m, tol).norm_sq
        if abs(a - b) > worst:
            worst, arg = abs(a - b), (n, m)
    threshold = 1e-6 + 100.0 * tol
    return DualityReport(grid=tuple(grid), max_discrepancy=worst, arg_max=arg,
                         threshold=threshold, passed=worst < threshold)
