"""Quadrature and special-function backbone.

Three building blocks used everywhere else in the package:

* ``log_gamma`` -- ln Gamma(x) for x > 0, implemented in-repo (Lanczos) so the
  accuracy floor does not depend on the platform math library.
* ``integrate_singular`` -- integrals over (0,1) whose integrand behaves like
  s^B1 near 0 and (1-s)^B2 near 1 (B > -1).  Endpoint singularities are
  removed by the power substitution s = t^kappa; the residual mass below the
  floating-point floor is supplied analytically from the declared exponent.
* ``integrate_peaked_log`` -- integrals of exp(log_f) where the integrand is
  sharply concentrated around an interior (or endpoint) peak and its extreme
  values overflow or underflow doubles.  All accumulation happens in log
  space via max-shifted sums; panels are laid out geometrically around the
  peak and refined adaptively until the log-integrand has dropped far below
  its maximum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import quad
from scipy.special import logsumexp

from .errors import DivergentIntegralError, QuadratureError

__all__ = [
    "LogValue",
    "EndpointExponents",
    "log_gamma",
    "log_beta",
    "integrate_singular",
    "integrate_peaked_log",
]


# ---------------------------------------------------------------------------
# log-gamma (Lanczos, g = 607/128, 15 coefficients)
# ---------------------------------------------------------------------------

_LANCZOS_G = 607.0 / 128.0
_LANCZOS_C = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)


def log_gamma(x: float) -> float:
    """Natural log of Gamma(x) for real x > 0.

    Relative error is at the 1e-14 level across [1e-3, 1e4], comfortably
    inside the 1e-12 contract.  Raises ValueError for non-positive or
    non-finite arguments.
    """
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise ValueError(f"log_gamma requires finite x > 0, got {x!r}")
    if x < 0.5:
        # reflection keeps the Lanczos sum well conditioned for tiny x
        return _LOG_PI - math.log(math.sin(math.pi * x)) - log_gamma(1.0 - x)
    z = x - 1.0
    acc = _LANCZOS_C[0]
    for k in range(1, len(_LANCZOS_C)):
        acc += _LANCZOS_C[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * math.log(t) - t + math.log(acc)


def log_beta(a: float, b: float) -> float:
    """ln B(a, b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a+b)."""
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b)


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LogValue:
    """A non-negative quantity stored as its natural log.

    ``is_zero`` marks an exact zero; otherwise exp(log_magnitude) is the
    (finite, positive) value, which may not be representable as a double.
    """

    log_magnitude: float
    is_zero: bool = False

    @classmethod
    def from_value(cls, value: float) -> "LogValue":
        if value < 0.0:
            raise ValueError("LogValue represents non-negative quantities")
        if value == 0.0:
            return cls.zero()
        return cls(math.log(value))

    @classmethod
    def zero(cls) -> "LogValue":
        return cls(float("-inf"), True)

    def value(self) -> float:
        """exp(log_magnitude); overflows to inf for very large magnitudes."""
        if self.is_zero:
            return 0.0
        try:
            return math.exp(self.log_magnitude)
        except OverflowError:
            return float("inf")

    def __float__(self) -> float:
        return self.value()


@dataclass(frozen=True)
class EndpointExponents:
    """Power behavior of an integrand at the two endpoints of (0,1).

    The integrand is assumed to be s^B1 (1-s)^B2 times a factor that extends
    continuously (and positively) to [0,1].  Integrability requires B > -1
    at each end.
    """

    B1: float = 0.0
    B2: float = 0.0

    def swapped(self) -> "EndpointExponents":
        return EndpointExponents(self.B2, self.B1)

    def negated(self) -> "EndpointExponents":
        return EndpointExponents(-self.B1, -self.B2)


# ---------------------------------------------------------------------------
# endpoint-singular quadrature
# ---------------------------------------------------------------------------

# Smallest endpoint distances at which integrands are still evaluated.  On
# the left, s itself is the distance and stays representable down to 1e-280;
# on the right the distance is 1 - s, which doubles cannot resolve below
# ~2e-16, so the floor sits at 1e-14.  Below the floor the integrand is
# continued analytically from its declared endpoint exponent.
_LEFT_FLOOR = 1e-280
_RIGHT_FLOOR = 1e-14


def _half_axis_integral(fd: Callable[[float], float], B: float, floor: float,
                        tol: float, noise_rel: float) -> float:
    """Integral over distance x in (0, 1/2] of fd(x) ~ x^B * continuous.

    Below ``floor`` the integrand is continued analytically as C x^B with C
    matched at the floor; ``noise_rel`` is the relative accuracy floor the
    evaluations of fd can support (limited near s=1 by the resolution of
    1-s in doubles).
    """
    if B >= 2.0:
        kappa = 1
    else:
        kappa = max(1, math.ceil(3.0 / (1.0 + B)))
    upper = 0.5 ** (1.0 / kappa)
    tail_exp = kappa * (1.0 + B) - 1.0
    state = {}

    def transformed(t: float) -> float:
        x = t ** kappa
        if x < floor:
            c = state.get("c")
            if c is None:
                c = fd(floor) * floor ** (-B)
                state["c"] = c
            return kappa * c * t ** tail_exp
        return kappa * t ** (kappa - 1) * fd(x)

    out = quad(transformed, 0.0, upper, epsabs=0.0,
               epsrel=max(tol, 1e-13), limit=400, full_output=1)
    value, abserr = out[0], out[1]
    if not math.isfinite(value):
        raise QuadratureError("singular quadrature produced a non-finite value")
    if abserr > max(100.0 * max(tol, 1e-13), noise_rel) * abs(value) + 1e-300:
        raise QuadratureError(
            f"singular quadrature did not converge (estimate {value!r}, "
            f"error {abserr!r})")
    return value


def integrate_singular(f: Callable[[float], float],
                       exps: EndpointExponents,
                       tol: float = 1e-9) -> float:
    """Integrate f over (0,1) when f ~ s^B1 near 0 and (1-s)^B2 near 1.

    The endpoint powers must be integrable (B > -1); otherwise a
    DivergentIntegralError is raised so callers can report an infinite
    integral.  Converges for exponents down to -0.99.  Near s=1 the value of
    1-s is only resolved to ~2e-16 by the float argument, so for strongly
    singular right exponents (B2 < -0.25) the attainable relative accuracy
    degrades gracefully to ~1e-8 as B2 approaches -1; the left endpoint has
    no such limit.
    """
    B1, B2 = exps.B1, exps.B2
    if not (B1 > -1.0 and B2 > -1.0):
        raise DivergentIntegralError(
            f"integrand with endpoint exponents ({B1}, {B2}) is not integrable")
    left = _half_axis_integral(f, B1, _LEFT_FLOOR, 0.5 * tol, 1e-12)
    if B2 > -0.25:
        right_cut, right_noise = _RIGHT_FLOOR, 1e-12
    else:
        # keep evaluations away from the cancellation zone of 1-s and let the
        # declared power supply the (large) analytic tail below the cut
        right_cut, right_noise = 1e-8, 3e-7
    right = _half_axis_integral(lambda x: f(1.0 - x), B2, right_cut,
                                0.5 * tol, right_noise)
    return left + right


# ---------------------------------------------------------------------------
# peaked quadrature in log space
# ---------------------------------------------------------------------------

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(32)
_LOG_GL_WEIGHTS = np.log(_GL_WEIGHTS)
_MAX_PANEL_DEPTH = 26


def _check_log_values(v: np.ndarray) -> None:
    if np.any(np.isnan(v)) or np.any(np.isposinf(v)):
        raise QuadratureError("log-integrand returned nan/+inf at an interior node")


def _panel_log(log_f: Callable[[np.ndarray], np.ndarray], a: float, b: float) -> float:
    """Single 32-point Gauss-Legendre pass, accumulated in log space."""
    h = 0.5 * (b - a)
    if h <= 0.0:
        return -math.inf
    s = a + h * (_GL_NODES + 1.0)
    v = np.asarray(log_f(s), dtype=float)
    _check_log_values(v)
    return float(logsumexp(v + _LOG_GL_WEIGHTS + math.log(h)))


def _adaptive_panel_log(log_f, a: float, b: float, tol: float,
                        prune_log: float = -math.inf,
                        unresolved: Optional[list] = None,
                        depth: int = 0, whole: Optional[float] = None,
                        parent_err: Optional[float] = None) -> float:
    if whole is None:
        whole = _panel_log(log_f, a, b)
    mid = 0.5 * (a + b)
    if not a < mid < b:
        return float(whole)  # panel at float resolution, cannot subdivide
    left = _panel_log(log_f, a, mid)
    right = _panel_log(log_f, mid, b)
    combined = np.logaddexp(left, right)
    if combined == -math.inf and whole == -math.inf:
        return float(combined)
    if max(float(combined), float(whole)) < prune_log:
        return float(combined)  # negligible against the running total
    err = abs(float(combined) - float(whole))
    if err <= tol:
        return float(combined)
    # quadrature nodes are placed on the float grid of a+h*(x+1); close to
    # s=1 the placement jitter ulp(1)/(b-a), times the log-slope across the
    # panel, is an error floor that subdividing only makes worse
    slope = abs(float(left) - float(right))
    if not math.isfinite(slope):
        slope = 1.0
    noise_tol = 4e-16 * max(abs(a), abs(b)) / (b - a) * (slope + 1.0)
    stalled = (depth >= 8 and parent_err is not None and err >= 0.9 * parent_err)
    if err <= noise_tol or stalled or depth >= _MAX_PANEL_DEPTH:
        if unresolved is not None and err > tol:
            unresolved.append(float(combined) + math.log(min(err, 1.0)))
        return float(combined)
    lv = _adaptive_panel_log(log_f, a, mid, tol, prune_log, unresolved,
                             depth + 1, left, err)
    rv = _adaptive_panel_log(log_f, mid, b, tol, prune_log, unresolved,
                             depth + 1, right, err)
    return float(np.logaddexp(lv, rv))


def _scalar_log(log_f, s: float) -> float:
    v = np.asarray(log_f(np.array([s])), dtype=float)
    _check_log_values(v)
    return float(v[0])


class _PanelPlan:
    """Edge ladder around the peak plus analytic sub-floor tail terms."""

    def __init__(self) -> None:
        self.edges: set[float] = set()
        self.tail_logs: list[float] = []
        self.skip_spans: list[Tuple[float, float]] = []


_ENDPOINT_STEPS = 24


def _endpoint_ladder(plan: _PanelPlan, log_f, side: int, start_dist: float,
                     B: float, cutoff: float) -> None:
    """Geometric panel edges approaching an endpoint of (0,1).

    ``side`` is 0 for the endpoint s=0 and 1 for s=1; ``start_dist`` is the
    distance from the endpoint at which ordinary panels stop resolving.
    Edges are added at distances start_dist/4^i until the bound on the
    remaining mass falls below ``cutoff``, the floating-point floor is
    reached, or the step budget runs out; the mass below the stopping
    distance is then supplied analytically from the declared power B
    (raises if B <= -1: the integral diverges at that endpoint).
    """
    if B <= -1.0:
        raise DivergentIntegralError(
            f"integrand diverges at endpoint s={side} (exponent {B})")
    if side == 0:
        floor = _LEFT_FLOOR
    else:
        # near s=1 the distance 1-s is resolved only to ~2e-16 by the float
        # argument; for strongly singular powers, stop well above that and
        # let the analytic tail carry the rest
        floor = _RIGHT_FLOOR if B > -0.25 else 1e-8

    def at(dist: float) -> float:
        return dist if side == 0 else 1.0 - dist

    def remaining_bound(dist: float, v: float) -> float:
        # log of ∫_0^dist C x^B dx with C matched to the probe value v
        return v + math.log(dist) - math.log1p(min(B, 0.0))

    d = start_dist
    for _ in range(_ENDPOINT_STEPS):
        nxt = d * 0.25
        if nxt <= floor:
            d = floor
            break
        plan.edges.add(at(nxt))
        v = _scalar_log(log_f, at(nxt))
        d = nxt
        if remaining_bound(nxt, v) < cutoff:
            break
    # analytic closure of [0, d]; relies on the declared power dominating
    # below the smallest resolved distance
    v_stop = _scalar_log(log_f, at(d))
    plan.tail_logs.append(v_stop + math.log(d) - math.log1p(B))
    plan.edges.add(at(d))
    if side == 0:
        plan.skip_spans.append((0.0, at(d)))
    else:
        plan.skip_spans.append((at(d), 1.0))


def integrate_peaked_log(log_f: Callable[[np.ndarray], np.ndarray],
                         peak: float,
                         width: float,
                         exps: Optional[EndpointExponents] = None,
                         tol: float = 1e-11,
                         singular_points: Sequence[Tuple[float, float]] = ()) -> LogValue:
    """Integrate exp(log_f) over (0,1) entirely in log space.

    ``log_f`` must be vectorized over numpy arrays and return the natural log
    of a positive integrand (-inf is accepted and treated as an exact zero).
    The integrand is assumed concentrated around ``peak`` with scale
    ``width``; ``peak`` may sit at 0 or 1 for one-sided (Watson-type)
    profiles.  ``exps`` declares endpoint powers so that endpoint mass below
    the floating-point floor can be supplied analytically.  Optional
    ``singular_points`` are interior abscissae where the integrand behaves
    like |s - s0|^b with b in (-1, 1); panels are refined geometrically
    around them.

    Returns the integral as a :class:`LogValue`, correct even when the peak
    value of the integrand overflows or underflows double precision.
    """
    if not 0.0 <= peak <= 1.0:
        raise ValueError(f"peak must lie in [0, 1], got {peak!r}")
    B1, B2 = (exps.B1, exps.B2) if exps is not None else (0.0, 0.0)
    w = min(max(float(width), 1e-9), 0.2)
    drop = max(40.0, -math.log(max(tol, 1e-15)) + 15.0)

    lo_lim = _LEFT_FLOOR
    hi_lim = 1.0 - _RIGHT_FLOOR
    core_lo = max(lo_lim, peak - 0.5 * w)
    core_hi = min(hi_lim, peak + 0.5 * w)

    plan = _PanelPlan()
    plan.edges.update((core_lo, core_hi))

    # outward ladders with doubling step; no value-based stopping, the edge
    # count is logarithmic in 1/w anyway
    for direction in (+1, -1):
        edge = core_hi if direction > 0 else core_lo
        step = w
        while lo_lim < edge < hi_lim:
            nxt = min(edge + step, hi_lim) if direction > 0 else max(edge - step, lo_lim)
            if nxt == edge:
                break
            plan.edges.add(nxt)
            edge = nxt
            step *= 2.0

    # first pass: single Gauss-Legendre sweep over the coarse panels gives a
    # sound magnitude estimate that endpoint handling can be gauged against
    coarse = sorted(plan.edges)
    hint = -math.inf
    for a, b in zip(coarse[:-1], coarse[1:]):
        if b > a:
            hint = float(np.logaddexp(hint, _panel_log(log_f, a, b)))

    # geometric refinement toward both endpoints plus analytic sub-floor mass
    inner_lo = min(x for x in plan.edges if x > lo_lim)
    inner_hi = max(x for x in plan.edges if x < hi_lim)
    _endpoint_ladder(plan, log_f, 0, inner_lo, B1, hint - drop)
    _endpoint_ladder(plan, log_f, 1, 1.0 - inner_hi, B2, hint - drop)

    # geometric refinement around declared interior singular points
    for s0, b0 in singular_points:
        if not 0.0 < s0 < 1.0:
            raise ValueError("interior singular points must lie in (0,1)")
        if b0 <= -1.0:
            raise DivergentIntegralError(
                f"integrand diverges at interior point s={s0} (exponent {b0})")
        cut = 1e-10  # below this, |s - s0| is too noisy to evaluate
        lo_edge = max((x for x in plan.edges if x < s0 - 1e-9), default=core_lo)
        hi_edge = min((x for x in plan.edges if x > s0 + 1e-9), default=core_hi)
        for sgn, far in ((-1, s0 - lo_edge), (+1, hi_edge - s0)):
            d = abs(far)
            while d > cut:
                plan.edges.add(s0 + sgn * max(d, cut))
                d *= 0.25
            plan.edges.add(s0 + sgn * cut)
            # analytic two-sided tail below the smallest resolved distance
            v = _scalar_log(log_f, s0 + sgn * cut)
            plan.tail_logs.append(v + math.log(cut) - math.log1p(b0))
        plan.skip_spans.append((s0 - cut, s0 + cut))

    # second pass: single-sweep all panels, then refine only those that
    # contribute within `drop` nats of the total
    edges = sorted(plan.edges)
    panels = []
    total = -math.inf
    for a, b in zip(edges[:-1], edges[1:]):
        if b - a <= 0.0:
            continue
        if any(lo <= a and b <= hi for lo, hi in plan.skip_spans):
            continue  # covered by an analytic tail
        first = _panel_log(log_f, a, b)
        panels.append((a, b, first))
        total = float(np.logaddexp(total, first))
    for t in plan.tail_logs:
        total = float(np.logaddexp(total, t))
    if total == -math.inf:
        return LogValue.zero()

    panel_tol = max(tol, 1e-14) * 0.25
    prune_log = total - drop
    unresolved: list[float] = []
    refined = -math.inf
    for a, b, first in panels:
        if first >= prune_log:
            value = _adaptive_panel_log(log_f, a, b, panel_tol, prune_log,
                                        unresolved, whole=first)
        else:
            value = first
        refined = float(np.logaddexp(refined, value))
    for t in plan.tail_logs:
        refined = float(np.logaddexp(refined, t))
    if unresolved:
        residual = float(logsumexp(unresolved))
        if residual > refined + math.log(1e-4):
            raise QuadratureError(
                f"unresolved panel error at relative level "
                f"{math.exp(residual - refined):.2e}")
    return LogValue(refined)
