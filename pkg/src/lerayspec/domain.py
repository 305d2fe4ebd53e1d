"""Convex complete Reinhardt domains in C^2 via their boundary generator.

A domain here is determined by a profile p(s) on (0,1) (the exponent of the
osculating weighted p-ball as a function of the boundary parameter s) plus
two scale constants b1, b2.  The boundary coordinate functions are

    r1(s) = b1 * exp(-Int_s^1 dt / (t p(t))),
    r2(s) = b2 * exp(-Int_0^s dt / ((1-t) p(t))),

so r1 increases from 0 to b1 and r2 decreases from b2 to 0.  Profiles that
are constant give weighted p-balls with closed-form coordinates; everything
else is reconstructed numerically on a logarithmic grid and interpolated.

Class tags follow the containment chain

    P (weighted p-balls)  <  R  <  TildeR  <  everything else,

where R requires the profile to extend continuously into (1,oo) at both
endpoints with convergent Dini integrals, and TildeR requires only the four
stretch integrals Int ds/(s p), Int ds/((1-s) p), and their conjugate-
exponent twins to diverge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import cumulative_simpson
from scipy.interpolate import CubicSpline, PchipInterpolator

from .errors import (DomainSpecError, InconclusiveClassificationError,
                     UnsupportedClassError)

__all__ = [
    "ClassTag",
    "EndpointRegularity",
    "GeneratorProfile",
    "ConstantProfile",
    "TabulatedProfile",
    "ClosedFormProfile",
    "DomainModel",
    "OsculationData",
    "CurvatureData",
    "from_pball",
    "from_generator",
    "classify",
    "builtin_example",
    "conjugate_exponent",
]


class ClassTag(str, Enum):
    P = "P"
    R = "R"
    TILDE_R = "TildeR"
    OUTSIDE_TILDE_R = "OutsideTildeR"


class EndpointRegularity(str, Enum):
    DINI_CONVERGENT = "dini_convergent"
    DINI_DIVERGENT = "dini_divergent"
    UNKNOWN = "unknown"


def conjugate_exponent(p: float) -> float:
    """p* with 1/p + 1/p* = 1; maps 1 -> inf and inf -> 1."""
    if p == math.inf:
        return 1.0
    if p <= 1.0:
        return math.inf
    return p / (p - 1.0)


# ---------------------------------------------------------------------------
# profiles
# ---------------------------------------------------------------------------


class GeneratorProfile:
    """Base class: the exponent profile p(s) plus endpoint metadata.

    Subclasses provide vectorized evaluation and declare what is known about
    the endpoints; classification never guesses silently.
    """

    endpoint_p0: float
    endpoint_p1: float
    regularity0: EndpointRegularity
    regularity1: EndpointRegularity

    def p_values(self, s: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def p_at(self, s: float) -> float:
        return float(self.p_values(np.array([float(s)]))[0])

    def conjugate(self) -> "GeneratorProfile":
        raise NotImplementedError

    def spec_dict(self) -> dict:
        raise NotImplementedError

    # interior structure used by classification; overridden where relevant
    def interior_min_p(self) -> float:
        raise NotImplementedError

    def interior_p_unbounded_at(self) -> Optional[float]:
        """s-value of an interior point where p -> infinity, if any."""
        return None

    # power of |s - s0| with which p degenerates at special interior points,
    # used for measure endpoint/interior metadata: list of (s0, local_power)
    def interior_degeneracies(self) -> Sequence[Tuple[float, float]]:
        return ()


@dataclass(frozen=True)
class ConstantProfile(GeneratorProfile):
    """p(s) = p; generates the weighted p-balls."""

    p: float

    def __post_init__(self):
        if not (self.p > 1.0 and math.isfinite(self.p)):
            raise DomainSpecError(f"constant profile requires p > 1, got {self.p}")
        object.__setattr__(self, "endpoint_p0", self.p)
        object.__setattr__(self, "endpoint_p1", self.p)
        object.__setattr__(self, "regularity0", EndpointRegularity.DINI_CONVERGENT)
        object.__setattr__(self, "regularity1", EndpointRegularity.DINI_CONVERGENT)

    def p_values(self, s):
        return np.full_like(np.asarray(s, dtype=float), self.p)

    def conjugate(self):
        return ConstantProfile(conjugate_exponent(self.p))

    def interior_min_p(self):
        return self.p

    def spec_dict(self):
        return {"type": "constant", "p": self.p}


class TabulatedProfile(GeneratorProfile):
    """Profile given by samples on [0,1], interpolated monotone-safely.

    Monotone piecewise-cubic (PCHIP) interpolation never overshoots the
    data, which protects against spurious dips of p below 1 between nodes.
    Endpoint Dini regularity may be declared; when left unknown it is probed
    numerically by :func:`classify`.
    """

    def __init__(self, s_grid, p_grid,
                 regularity0: EndpointRegularity = EndpointRegularity.UNKNOWN,
                 regularity1: EndpointRegularity = EndpointRegularity.UNKNOWN):
        s_grid = np.asarray(s_grid, dtype=float)
        p_grid = np.asarray(p_grid, dtype=float)
        if s_grid.ndim != 1 or s_grid.shape != p_grid.shape or s_grid.size < 4:
            raise DomainSpecError("tabulated profile needs matching 1-d grids (>= 4 nodes)")
        if s_grid[0] != 0.0 or s_grid[-1] != 1.0 or np.any(np.diff(s_grid) <= 0):
            raise DomainSpecError("s grid must increase strictly from 0 to 1")
        if np.any(~np.isfinite(p_grid)) or np.any(p_grid < 1.0):
            raise DomainSpecError("tabulated p values must be finite and >= 1")
        self.s_grid = s_grid
        self.p_grid = p_grid
        self._interp = PchipInterpolator(s_grid, p_grid, extrapolate=False)
        self.endpoint_p0 = float(p_grid[0])
        self.endpoint_p1 = float(p_grid[-1])
        self.regularity0 = regularity0
        self.regularity1 = regularity1

    def p_values(self, s):
        s = np.asarray(s, dtype=float)
        out = self._interp(np.clip(s, 0.0, 1.0))
        return np.asarray(out, dtype=float)

    def conjugate(self):
        if np.any(self.p_grid <= 1.0):
            raise UnsupportedClassError(
                "cannot conjugate a tabulated profile that touches p = 1")
        # the Dini integrands of p and p* differ only by sign, so declared
        # endpoint regularity carries over unchanged
        return TabulatedProfile(self.s_grid, self.p_grid / (self.p_grid - 1.0),
                                self.regularity0, self.regularity1)

    def interior_min_p(self):
        return float(np.min(self.p_grid[1:-1]))

    def spec_dict(self):
        return {
            "type": "tabulated",
            "s_grid": self.s_grid.tolist(),
            "p_values": self.p_grid.tolist(),
            "endpoint_regularity": [self.regularity0.value, self.regularity1.value],
        }


class ClosedFormProfile(GeneratorProfile):
    """Named closed-form profile with fully declared metadata.

    Used for the built-in example domains and their polars.  ``fn`` must be
    vectorized; may return inf where the profile is unbounded.
    """

    def __init__(self, name: str, fn: Callable[[np.ndarray], np.ndarray],
                 endpoint_p0: float, endpoint_p1: float,
                 regularity0: EndpointRegularity, regularity1: EndpointRegularity,
                 min_interior: float,
                 params: Optional[dict] = None,
                 unbounded_at: Optional[float] = None,
                 degeneracies: Sequence[Tuple[float, float]] = (),
                 stretch_all_divergent: Optional[bool] = None,
                 kernel_behavior: Optional[tuple] = None,
                 conjugate_factory: Optional[Callable[[], "GeneratorProfile"]] = None):
        self.name = name
        self.fn = fn
        self.endpoint_p0 = endpoint_p0
        self.endpoint_p1 = endpoint_p1
        self.regularity0 = regularity0
        self.regularity1 = regularity1
        self._min_interior = min_interior
        self.params = dict(params or {})
        self._unbounded_at = unbounded_at
        self._degeneracies = tuple(degeneracies)
        self.stretch_all_divergent = stretch_all_divergent
        # ((power, log_power) at s=0, same at s=1) of r1^2 r2^2/(p s (1-s)),
        # when the generic finite-endpoint rule does not apply
        self.kernel_behavior = kernel_behavior
        self._conjugate_factory = conjugate_factory

    def p_values(self, s):
        return np.asarray(self.fn(np.asarray(s, dtype=float)), dtype=float)

    def conjugate(self):
        if self._conjugate_factory is None:
            raise UnsupportedClassError(
                f"closed-form profile {self.name!r} does not define a conjugate")
        return self._conjugate_factory()

    def interior_min_p(self):
        return self._min_interior

    def interior_p_unbounded_at(self):
        return self._unbounded_at

    def interior_degeneracies(self):
        return self._degeneracies

    def spec_dict(self):
        return {"type": self.name, **self.params}


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

_DINI_TOL = 1e-8


def _dini_tail_verdict(profile: GeneratorProfile, side: int) -> EndpointRegularity:
    """Numerical Dini test at one endpoint of a tabulated profile.

    Integrates (1/p(t) - 1/p(end)) dt/t over dyadic shells approaching the
    endpoint and inspects the shell sums: geometric decay means the improper
    integral converges, non-decaying shells mean divergence.  Anything else
    is reported as inconclusive rather than guessed.
    """
    p_end = profile.endpoint_p0 if side == 0 else profile.endpoint_p1
    shells = []
    for j in range(3, 40):
        hi, lo = 2.0 ** (-j), 2.0 ** (-j - 1)
        t = np.linspace(lo, hi, 33)
        x = t if side == 0 else 1.0 - t
        integrand = (1.0 / profile.p_values(x) - 1.0 / p_end) / t
        shells.append(float(np.trapezoid(integrand, t)))
    mags = np.abs(np.array(shells))
    recent = mags[-10:]
    if np.all(recent < 1e-15):
        return EndpointRegularity.DINI_CONVERGENT
    ratios = recent[1:] / np.maximum(recent[:-1], 1e-300)
    if np.max(ratios) <= 0.85:
        return EndpointRegularity.DINI_CONVERGENT
    if np.min(ratios) >= 0.88 and recent[-1] > 1e-13:
        return EndpointRegularity.DINI_DIVERGENT
    raise InconclusiveClassificationError(
        f"Dini tail at endpoint {side} is numerically inconclusive "
        f"(shell sums ~ {recent[-1]:.2e}, within 10x of tolerance); "
        "declare endpoint_regularity")


def _endpoint_regularity(profile: GeneratorProfile, side: int) -> EndpointRegularity:
    declared = profile.regularity0 if side == 0 else profile.regularity1
    if declared is not EndpointRegularity.UNKNOWN:
        return declared
    if isinstance(profile, TabulatedProfile):
        return _dini_tail_verdict(profile, side)
    raise InconclusiveClassificationError(
        "closed-form profile with undeclared endpoint regularity")


def classify(profile: GeneratorProfile) -> ClassTag:
    """Class tag of the domain a profile generates.

    Constant profiles are exactly the weighted p-balls.  Otherwise the
    profile must stay in (1, oo) on the open interval to generate a TildeR
    domain at all; R additionally needs continuous endpoint values in
    (1, oo) and convergent Dini integrals at both ends.
    """
    if isinstance(profile, ConstantProfile):
        return ClassTag.P
    if profile.interior_p_unbounded_at() is not None:
        return ClassTag.OUTSIDE_TILDE_R
    if profile.interior_min_p() <= 1.0:
        return ClassTag.OUTSIDE_TILDE_R
    p0, p1 = profile.endpoint_p0, profile.endpoint_p1
    finite0 = math.isfinite(p0) and p0 > 1.0
    finite1 = math.isfinite(p1) and p1 > 1.0
    if finite0 and finite1:
        # the four stretch integrals diverge automatically here
        reg0 = _endpoint_regularity(profile, 0)
        reg1 = _endpoint_regularity(profile, 1)
        if (reg0 is EndpointRegularity.DINI_CONVERGENT
                and reg1 is EndpointRegularity.DINI_CONVERGENT):
            return ClassTag.R
        return ClassTag.TILDE_R
    # endpoint value 1 or infinity: outside R for sure; TildeR iff all four
    # stretch integrals diverge, which must be declared for closed forms
    if isinstance(profile, ClosedFormProfile) and profile.stretch_all_divergent is not None:
        return ClassTag.TILDE_R if profile.stretch_all_divergent else ClassTag.OUTSIDE_TILDE_R
    raise InconclusiveClassificationError(
        "endpoint exponent 1 or infinity: declare whether the four stretch "
        "integrals diverge (stretch_all_divergent) to classify")


# ---------------------------------------------------------------------------
# domain model
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OsculationData:
    """Parameters (p, a1, a2) of the weighted p-ball osculating at s."""

    s: float
    p: float
    a1: float
    a2: float


@dataclass(frozen=True)
class CurvatureData:
    """Principal curvatures of the boundary at parameter s."""

    s: float
    kappa1: float
    kappa2: float
    kappa3: float


_UGRID_MIN = -36.0
_UGRID_N = 16385
_LOG_HALF = math.log(0.5)


class DomainModel:
    """Immutable domain: profile + scales + cached boundary reconstruction.

    Use :func:`from_pball` / :func:`from_generator` / :func:`builtin_example`
    instead of constructing directly.  All queries are read-only.
    """

    def __init__(self, profile: GeneratorProfile, b1: float, b2: float,
                 class_tag: ClassTag):
        if not (b1 > 0.0 and b2 > 0.0):
            raise DomainSpecError("scale constants b1, b2 must be positive")
        self.profile = profile
        self.b1 = float(b1)
        self.b2 = float(b2)
        self.class_tag = class_tag
        self._is_pball = isinstance(profile, ConstantProfile)
        if not self._is_pball:
            self._build_tables()

    # -- construction of the log-radius tables --------------------------------

    def _build_tables(self) -> None:
        """Cumulative reconstruction of ln r1, ln r2 on logarithmic grids.

        Each half of (0,1) is integrated in the variable that absorbs the
        endpoint structure: u = ln s on (0, 1/2], v = ln(1-s) on [1/2, 1).
        Profiles whose endpoint behavior involves powers of log(1/s) become
        polynomial in these variables, so composite Simpson converges at
        full order.  Truncation below u, v = -36 contributes ~e^-36, handled
        by linear/constant extension of the splines.
        """
        u = np.linspace(_UGRID_MIN, _LOG_HALF, _UGRID_N)
        su = np.exp(u)
        pu = self.profile.p_values(su)
        v = np.linspace(_UGRID_MIN, _LOG_HALF, _UGRID_N)
        sv = 1.0 - np.exp(v)
        pv = self.profile.p_values(sv)

        # Int_s^{1/2} dt/(t p) on the u side; Int_{-inf}^{v} e^v/((1-e^v) p) dv
        # continues it across [1/2, 1)
        c1u = cumulative_simpson(1.0 / pu, x=u, initial=0.0)
        g1v = np.exp(v) / ((1.0 - np.exp(v)) * pv)
        c1v = cumulative_simpson(g1v, x=v, initial=0.0)
        i_r1_half = float(c1v[-1])  # Int_{1/2}^{1} dt/(t p), up to e^-36
        lnb1 = math.log(self.b1)
        self._lnr1_u = CubicSpline(u, lnb1 - (i_r1_half + (c1u[-1] - c1u)))
        self._lnr1_v = CubicSpline(v, lnb1 - c1v)
        self._lnr1_u_lo = float(lnb1 - (i_r1_half + c1u[-1]))
        self._lnr1_u_slope = float(1.0 / pu[0])

        # mirror image for r2
        c2v = cumulative_simpson(1.0 / pv, x=v, initial=0.0)
        g2u = np.exp(u) / ((1.0 - np.exp(u)) * pu)
        c2u = cumulative_simpson(g2u, x=u, initial=0.0)
        i_r2_half = float(c2u[-1])
        lnb2 = math.log(self.b2)
        self._lnr2_v = CubicSpline(v, lnb2 - (i_r2_half + (c2v[-1] - c2v)))
        self._lnr2_u = CubicSpline(u, lnb2 - c2u)
        self._lnr2_v_lo = float(lnb2 - (i_r2_half + c2v[-1]))
        self._lnr2_v_slope = float(1.0 / pv[0])

    # -- profile passthrough ---------------------------------------------------

    def p_values(self, s) -> np.ndarray:
        return self.profile.p_values(s)

    def p_at(self, s: float) -> float:
        return self.profile.p_at(s)

    @property
    def endpoint_p(self) -> Tuple[float, float]:
        return (self.profile.endpoint_p0, self.profile.endpoint_p1)

    # -- radii -----------------------------------------------------------------

    def log_radii(self, s) -> Tuple[np.ndarray, np.ndarray]:
        """(ln r1(s), ln r2(s)), vectorized; -inf at the vanishing ends."""
        s = np.asarray(s, dtype=float)
        if self._is_pball:
            p = self.profile.p  # type: ignore[attr-defined]
            with np.errstate(divide="ignore"):
                lnr1 = math.log(self.b1) + np.log(s) / p
                lnr2 = math.log(self.b2) + np.log1p(-s) / p
            return lnr1, lnr2
        with np.errstate(divide="ignore", invalid="ignore"):
            u = np.log(s)
            v = np.log1p(-s)
        uc = np.clip(u, _UGRID_MIN, _LOG_HALF)
        vc = np.clip(v, _UGRID_MIN, _LOG_HALF)
        left = s <= 0.5  # use the u-side splines on the left half
        lnr1 = np.where(left, self._lnr1_u(uc), self._lnr1_v(vc))
        lnr2 = np.where(left, self._lnr2_u(uc), self._lnr2_v(vc))
        # below-grid extensions: r1 continues log-linearly toward s=0 and is
        # pinned at b1 toward s=1 (and symmetrically for r2)
        lnr1 = np.where(u < _UGRID_MIN,
                        self._lnr1_u_lo + self._lnr1_u_slope * (u - _UGRID_MIN), lnr1)
        lnr1 = np.where(v < _UGRID_MIN, math.log(self.b1), lnr1)
        lnr2 = np.where(v < _UGRID_MIN,
                        self._lnr2_v_lo + self._lnr2_v_slope * (v - _UGRID_MIN), lnr2)
        lnr2 = np.where(u < _UGRID_MIN, math.log(self.b2), lnr2)
        return np.asarray(lnr1, dtype=float), np.asarray(lnr2, dtype=float)

    def radii(self, s: float) -> Tuple[float, float]:
        """(r1(s), r2(s)) with the exact endpoint values."""
        if not 0.0 <= s <= 1.0:
            raise DomainSpecError(f"s must lie in [0, 1], got {s!r}")
        if s == 0.0:
            return 0.0, self.b2
        if s == 1.0:
            return self.b1, 0.0
        lnr1, lnr2 = self.log_radii(np.array([s]))
        return float(np.exp(lnr1[0])), float(np.exp(lnr2[0]))

    def bracket(self, s) -> np.ndarray:
        """(s/r1)^2 + ((1-s)/r2)^2, the recurring tangential factor."""
        s = np.asarray(s, dtype=float)
        lnr1, lnr2 = self.log_radii(s)
        with np.errstate(divide="ignore"):
            t1 = np.exp(2.0 * (np.log(s) - lnr1))
            t2 = np.exp(2.0 * (np.log1p(-s) - lnr2))
        return t1 + t2

    def s_of_r1(self, r1: float) -> float:
        """Inverse of the strictly increasing map s -> r1(s)."""
        if not 0.0 <= r1 <= self.b1 * (1.0 + 1e-12):
            raise DomainSpecError(f"r1 must lie in [0, b1={self.b1}], got {r1!r}")
        if r1 <= 0.0:
            return 0.0
        if r1 >= self.b1:
            return 1.0
        if self._is_pball:
            return (r1 / self.b1) ** self.profile.p  # type: ignore[attr-defined]
        target = math.log(r1)
        if target < self._lnr1_u_lo:
            u = _UGRID_MIN + (target - self._lnr1_u_lo) / self._lnr1_u_slope
            return math.exp(u)

        def lnr1_at(sv: float) -> float:
            return float(self.log_radii(np.array([sv]))[0][0])

        lo, hi = math.exp(_UGRID_MIN), 1.0
        for _ in range(120):
            mid = 0.5 * (lo + hi)
            if lnr1_at(mid) < target:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    # -- second-order geometry --------------------------------------------------

    def osculate(self, s: float) -> OsculationData:
        """Exponent and weights (p, a1, a2) of the osculating p-ball at s.

        Derived from the second-order match of the generating curve; in
        s-coordinates the weights collapse to a1 = s r1^-p, a2 = (1-s) r2^-p.
        """
        if not 0.0 < s < 1.0:
            raise DomainSpecError(f"osculation needs s in (0,1), got {s!r}")
        p = self.p_at(s)
        if math.isinf(p):
            raise UnsupportedClassError(
                "no osculating p-ball at a point where p is infinite")
        r1, r2 = self.radii(s)
        a1 = s * r1 ** (-p)
        a2 = (1.0 - s) * r2 ** (-p)
        return OsculationData(s=s, p=p, a1=a1, a2=a2)

    def curvatures(self, s: float) -> CurvatureData:
        """Principal curvatures (kappa1, kappa2, kappa3) at parameter s."""
        if not 0.0 < s < 1.0:
            raise DomainSpecError(f"curvatures need s in (0,1), got {s!r}")
        p = self.p_at(s)
        r1, r2 = self.radii(s)
        br = float(self.bracket(np.array([s]))[0])
        sq = math.sqrt(br)
        k1 = s / (r1 * r1 * sq)
        k2 = (1.0 - s) / (r2 * r2 * sq)
        if math.isinf(p):
            k3 = math.inf
        else:
            k3 = (p - 1.0) * s * (1.0 - s) / (r1 * r1 * r2 * r2 * br * sq)
        return CurvatureData(s=s, kappa1=k1, kappa2=k2, kappa3=k3)

    # -- analytic endpoint behavior for measures ---------------------------------

    def kernel_endpoint_behavior(self):
        """(power, log-power) of r1^2 r2^2/(p s(1-s)) at each endpoint, or None.

        Known exactly for constant profiles and class-R endpoints
        (power 2/p_end - 1, no log) and for closed-form profiles that
        declare an override.
        """
        if isinstance(self.profile, ClosedFormProfile) and self.profile.kernel_behavior:
            return self.profile.kernel_behavior
        p0, p1 = self.endpoint_p
        # a finite endpoint exponent with a convergent Dini integral makes
        # r_j a true power there, so the kernel is one as well; this holds
        # endpoint-by-endpoint even when the global class tag is weaker
        ok0 = (math.isfinite(p0) and p0 > 1.0
               and self.profile.regularity0 is EndpointRegularity.DINI_CONVERGENT)
        ok1 = (math.isfinite(p1) and p1 > 1.0
               and self.profile.regularity1 is EndpointRegularity.DINI_CONVERGENT)
        b0 = (2.0 / p0 - 1.0, 0.0) if ok0 else None
        b1 = (2.0 / p1 - 1.0, 0.0) if ok1 else None
        return (b0, b1)

    def interior_kernel_degeneracies(self) -> Sequence[Tuple[float, float]]:
        """Interior points where the order-measure kernel degenerates.

        Each entry is (s0, power): near s0 the kernel behaves like
        |s-s0|^power times a positive continuous factor (power = nu for a
        profile blowing up like |s-s0|^-nu).
        """
        return self.profile.interior_degeneracies()

    # -- serialization -----------------------------------------------------------

    def spec_dict(self) -> dict:
        if self._is_pball:
            p = self.profile.p  # type: ignore[attr-defined]
            return {"kind": "pball", "p": p,
                    "a1": self.b1 ** (-p), "a2": self.b2 ** (-p)}
        return {"kind": "generator", "b1": self.b1, "b2": self.b2,
                "profile": self.profile.spec_dict()}

    def __repr__(self) -> str:
        return (f"DomainModel(class={self.class_tag.value}, b1={self.b1:.6g}, "
                f"b2={self.b2:.6g}, profile={self.profile.spec_dict().get('type', '?')})")


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def from_pball(p: float, a1: float, a2: float) -> DomainModel:
    """Weighted p-ball a1 |z1|^p + a2 |z2|^p < 1.

    Coordinates are closed-form: r1 = b1 s^(1/p), r2 = b2 (1-s)^(1/p) with
    b_j = a_j^(-1/p); no quadrature is involved.
    """
    if not (p > 1.0 and math.isfinite(p)):
        raise DomainSpecError(f"p-ball exponent must satisfy 1 < p < inf, got {p}")
    if not (a1 > 0.0 and a2 > 0.0):
        raise DomainSpecError("p-ball weights a1, a2 must be positive")
    return DomainModel(ConstantProfile(p), a1 ** (-1.0 / p), a2 ** (-1.0 / p),
                       ClassTag.P)


def from_generator(profile: GeneratorProfile, b1: float, b2: float) -> DomainModel:
    """Domain generated by (profile, b1, b2); classifies and reconstructs."""
    return DomainModel(profile, b1, b2, classify(profile))


# ---------------------------------------------------------------------------
# built-in example domains
# ---------------------------------------------------------------------------


def _smoothstep(x: np.ndarray) -> np.ndarray:
    """Quintic smoothstep: 0 for x<=0, 1 for x>=1, C^2 in between."""
    x = np.clip(x, 0.0, 1.0)
    return x * x * x * (10.0 + x * (-15.0 + 6.0 * x))


def example1_profile(curvature: float = 2.0,
                     blend: Tuple[float, float] = (0.12, 0.18)) -> ClosedFormProfile:
    """Smooth profile with p(1/2) = 1, p > 1 elsewhere, and p = 2 near the ends.

    The middle branch is 1 + curvature*(2s-1)^2; it is blended into the
    constant value 2 over the window ``blend`` (mirrored on the right).  Any
    smooth blend meeting those three conditions is acceptable; this is the
    default choice, exposed through the parameters.
    """
    lo, hi = blend
    if not (0.0 < lo < hi < 0.5):
        raise DomainSpecError("blend window must satisfy 0 < lo < hi < 1/2")
    c = float(curvature)
    if c <= 0.0:
        raise DomainSpecError("curvature parameter must be positive")

    def fn(s):
        s = np.asarray(s, dtype=float)
        mid = 1.0 + c * (2.0 * s - 1.0) ** 2
        d = np.minimum(s, 1.0 - s)  # distance to the nearer endpoint
        ramp = _smoothstep((d - lo) / (hi - lo))
        return 2.0 + ramp * (mid - 2.0)

    return ClosedFormProfile(
        "example1", fn,
        endpoint_p0=2.0, endpoint_p1=2.0,
        regularity0=EndpointRegularity.DINI_CONVERGENT,
        regularity1=EndpointRegularity.DINI_CONVERGENT,
        min_interior=1.0,
        params={"curvature": c, "blend": [lo, hi]},
    )


def example2_profile(nu: float) -> ClosedFormProfile:
    """Profile blowing up like |s-1/2|^-nu at s = 1/2, equal to 2 near the ends.

    Exactly |s-1/2|^-nu inside 0.8*d1 of the center (d1 = 2^(-1/nu), where
    that power equals 2), exactly 2 outside 1.2*d1, smoothstep-blended in
    between; hence p >= 2 everywhere with a single interior pole.
    """
    if not 0.0 < nu < 1.0:
        raise DomainSpecError(f"example 2 requires 0 < nu < 1, got {nu}")
    d1 = 2.0 ** (-1.0 / nu)
    lo, hi = 0.8 * d1, min(1.2 * d1, 0.49)

    def fn(s):
        s = np.asarray(s, dtype=float)
        d = np.abs(s - 0.5)
        with np.errstate(divide="ignore", over="ignore"):
            pole = np.where(d > 0.0, d ** (-nu), np.inf)
        ramp = _smoothstep((hi - d) / (hi - lo))
        return 2.0 + ramp * (pole - 2.0)

    return ClosedFormProfile(
        "example2", fn,
        endpoint_p0=2.0, endpoint_p1=2.0,
        regularity0=EndpointRegularity.DINI_CONVERGENT,
        regularity1=EndpointRegularity.DINI_CONVERGENT,
        min_interior=2.0,
        params={"nu": nu},
        unbounded_at=0.5,
        degeneracies=((0.5, nu),),
    )


def example3_profile() -> ClosedFormProfile:
    """p(s) = log(10/s) / (log(10/s) - 1/2): tends to 1 at s = 0.

    Together with b1 = sqrt(log 10), b2 = 1 this generates a TildeR domain
    that is not in R; the first coordinate reconstructs in closed form as
    r1 = s sqrt(log(10/s)).
    """

    def fn(s):
        s = np.asarray(s, dtype=float)
        with np.errstate(divide="ignore"):
            L = np.log(10.0) - np.log(s)
        return np.where(np.isinf(L), 1.0, L / np.where(np.isinf(L), 1.0, L - 0.5))

    p1 = math.log(10.0) / (math.log(10.0) - 0.5)

    def conj() -> ClosedFormProfile:
        def conj_fn(s):
            s = np.asarray(s, dtype=float)
            with np.errstate(divide="ignore"):
                return 2.0 * (np.log(10.0) - np.log(s))

        prof = ClosedFormProfile(
            "dual:example3", conj_fn,
            endpoint_p0=math.inf, endpoint_p1=conjugate_exponent(p1),
            regularity0=EndpointRegularity.UNKNOWN,
            regularity1=EndpointRegularity.DINI_CONVERGENT,
            min_interior=2.0 * (math.log(10.0) - 0.0),
            stretch_all_divergent=True,
            # r1* = 1/sqrt(log(10/s)) gives kernel ~ s^-1 log^-2 at s=0
            kernel_behavior=((-1.0, -2.0), (2.0 / conjugate_exponent(p1) - 1.0, 0.0)),
        )
        prof._conjugate_factory = example3_profile
        return prof

    return ClosedFormProfile(
        "example3", fn,
        endpoint_p0=1.0, endpoint_p1=p1,
        regularity0=EndpointRegularity.UNKNOWN,
        regularity1=EndpointRegularity.DINI_CONVERGENT,
        min_interior=1.0 + 0.5 / math.log(10.0),  # infimum, approached as s->0
        params={},
        stretch_all_divergent=True,
        # r1^2 = s^2 log(10/s) gives kernel ~ s^1 log^1 at s=0
        kernel_behavior=((1.0, 1.0), (2.0 / p1 - 1.0, 0.0)),
        conjugate_factory=conj,
    )


def builtin_example(which: str, nu: Optional[float] = None, **params) -> DomainModel:
    """The three reference domains: 'example1', 'example2' (needs nu), 'example3'."""
    if which == "example1":
        return from_generator(example1_profile(**params), 1.0, 1.0)
    if which == "example2":
        if nu is None:
            raise DomainSpecError("example 2 requires the blow-up rate nu")
        return from_generator(example2_profile(nu), 1.0, 1.0)
    if which == "example3":
        return from_generator(example3_profile(), math.sqrt(math.log(10.0)), 1.0)
    raise DomainSpecError(f"unknown builtin example {which!r}")
