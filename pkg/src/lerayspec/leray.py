"""Leray kernel in boundary coordinates and its action on monomials.

In the coordinates (s, theta1, theta2) the kernel density against
ds dtheta1 dtheta2 is

    1 / (4 pi^2 (1 - e^{-i theta1} (s/r1) w1 - e^{-i theta2} ((1-s)/r2) w2)^2),

and on an (n,m)-monomial g(s) e^{i(n theta1 + m theta2)} the transform acts
as a rank-one operation: zero for negative n or m, otherwise

    ((n+m+1)!/(n! m!)) * Int_0^1 g(s) (s/r1)^n ((1-s)/r2)^m ds * w1^n w2^m.

Applied to the boundary values of z1^n z2^m this reproduces the monomial:
the radial integral collapses to the beta integral Int s^n (1-s)^m ds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .domain import DomainModel
from .errors import DomainSpecError, NearSingularityError, QuadratureError
from .numerics import (EndpointExponents, LogValue, integrate_peaked_log,
                       integrate_singular, log_gamma)

__all__ = [
    "MonomialFunction",
    "InteriorPoint",
    "leray_kernel_density",
    "apply_to_monomial",
    "reproduction_coefficient",
    "log_combinatorial_factor",
]

_INTERIOR_MARGIN = 1e-6
_FOUR_PI_SQ = 4.0 * math.pi ** 2


@dataclass(frozen=True)
class MonomialFunction:
    """Boundary function g(s) e^{i(n theta1 + m theta2)}."""

    n: int
    m: int
    g: Callable[[float], complex]

    @classmethod
    def coordinate_monomial(cls, d: DomainModel, n: int, m: int) -> "MonomialFunction":
        """Boundary restriction of z1^n z2^m, i.e. g(s) = r1(s)^n r2(s)^m."""
        if n < 0 or m < 0:
            raise DomainSpecError("coordinate monomials need n, m >= 0")

        def g(s: float) -> float:
            r1, r2 = d.radii(s)
            return r1 ** n * r2 ** m

        return cls(n=n, m=m, g=g)


@dataclass(frozen=True)
class InteriorPoint:
    """Candidate evaluation point w = (w1, w2) in the domain."""

    w1: complex
    w2: complex

    def hb_functional(self, d: DomainModel, s: np.ndarray) -> np.ndarray:
        """|w1| s/r1 + |w2| (1-s)/r2; < 1 on (0,1) iff w lies inside."""
        lnr1, lnr2 = d.log_radii(s)
        with np.errstate(divide="ignore"):
            t1 = np.exp(np.log(s) - lnr1)
            t2 = np.exp(np.log1p(-s) - lnr2)
        return abs(self.w1) * t1 + abs(self.w2) * t2

    def validate_interior(self, d: DomainModel, margin: float = _INTERIOR_MARGIN,
                          grid: int = 1024) -> None:
        """Raise unless the point clears the boundary by ``margin`` on a grid."""
        s = np.linspace(0.0, 1.0, grid + 1)
        worst = float(np.max(self.hb_functional(d, s)))
        if not worst < 1.0 - margin:
            raise DomainSpecError(
                f"point ({self.w1}, {self.w2}) is not strictly interior "
                f"(sup of the support functional = {worst:.6g})")


def leray_kernel_density(d: DomainModel, s: float, theta1: float, theta2: float,
                         w: InteriorPoint) -> complex:
    """Kernel density against ds dtheta1 dtheta2 at boundary parameter (s, thetas)."""
    if not 0.0 < s < 1.0:
        raise DomainSpecError(f"kernel evaluation needs s in (0,1), got {s!r}")
    r1, r2 = d.radii(s)
    denom_base = (1.0
                  - np.exp(-1j * theta1) * (s / r1) * w.w1
                  - np.exp(-1j * theta2) * ((1.0 - s) / r2) * w.w2)
    if abs(denom_base) ** 2 < 1e-12:
        raise NearSingularityError(
            f"kernel denominator too small (|.|^2 = {abs(denom_base)**2:.3e}); "
            "w is too close to the boundary point")
    return 1.0 / (_FOUR_PI_SQ * denom_base ** 2)


def log_combinatorial_factor(n: int, m: int) -> float:
    """ln((n+m+1)!/(n! m!)), the monomial normalization."""
    return log_gamma(n + m + 2.0) - log_gamma(n + 1.0) - log_gamma(m + 1.0)


def apply_to_monomial(d: DomainModel, f: MonomialFunction, w: InteriorPoint,
                      tol: float = 1e-11) -> complex:
    """Value of the transform of an (n,m)-monomial at the interior point w."""
    n, m = f.n, f.m
    if min(n, m) < 0:
        return 0.0 + 0.0j
    w.validate_interior(d)

    def weight(s: float) -> float:
        lnr1, lnr2 = d.log_radii(np.array([s]))
        acc = 0.0
        if n:
            acc += n * (math.log(s) - float(lnr1[0]))
        if m:
            acc += m * (math.log1p(-s) - float(lnr2[0]))
        return math.exp(acc)

    # complex g splits into two quadratures
    probe = f.g(0.5)
    exps = EndpointExponents(0.0, 0.0)
    if isinstance(probe, complex):
        re = integrate_singular(lambda s: (f.g(s) * weight(s)).real, exps, tol)
        im = integrate_singular(lambda s: (f.g(s) * weight(s)).imag, exps, tol)
        radial = complex(re, im)
    else:
        radial = complex(integrate_singular(lambda s: f.g(s) * weight(s), exps, tol))
    if not (math.isfinite(radial.real) and math.isfinite(radial.imag)):
        raise QuadratureError("radial integral of the monomial did not converge")
    factor = math.exp(log_combinatorial_factor(n, m))
    return factor * radial * (w.w1 ** n) * (w.w2 ** m)


def reproduction_coefficient(d: DomainModel, n: int, m: int,
                             tol: float = 1e-11) -> float:
    """((n+m+1)!/(n! m!)) * Int_0^1 s^n (1-s)^m ds; identically 1.

    This is the polynomial-reproduction identity: the radial weight of the
    transform applied to z1^n z2^m collapses to the beta integral, whatever
    the domain.  Computed in log space so it stays exact for large degrees;
    the persistent unit value is what the tests pin down.
    """
    if n < 0 or m < 0:
        raise DomainSpecError("reproduction_coefficient needs n, m >= 0")

    def log_f(s):
        out = np.zeros_like(s)
        if n:
            out = out + n * np.log(s)
        if m:
            out = out + m * np.log1p(-s)
        return out

    if n + m == 0:
        log_integral = LogValue.from_value(
            integrate_singular(lambda s: 1.0, EndpointExponents(0.0, 0.0), tol))
    else:
        peak = n / (n + m)
        width = math.sqrt(2.0 * n * m / (n + m) ** 3) if n * m else 1.0 / (n + m + 1)
        log_integral = integrate_peaked_log(log_f, peak, width,
                                            EndpointExponents(float(n), float(m)),
                                            tol)
    return math.exp(log_combinatorial_factor(n, m) + log_integral.log_magnitude)
