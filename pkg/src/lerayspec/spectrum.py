"""Fourier-piece norms and essential spectra of the transform.

For each Fourier index pair (n, m) the transform restricts to a rank-one
projection whose squared norm factors into three integrals,

    ||L_nm||^2 = I(-1) I(+1) / I(0)^2,
    I(k) = Int_0^1 (r1^{2k} s^{1-k})^n (r2^{2k} (1-s)^{1-k})^m omega^k ds,

with I(0) the exact beta integral.  The k = +-1 integrals concentrate near
s = n/(n+m) at scale A = sqrt(2nm / (c_k (n+m)^3)), c_k = 2k/p + 1 - k, and
are computed by peaked log-space quadrature.

Limits of the piece norms assemble the essential spectrum: a continuous
branch sqrt(p(s) p*(s))/2 from diagonal-type index sequences, and for each
boundary axis a discrete eigenvalue family

    lambda_{p,q,n} = Gamma(2n/p + 1 + q d) Gamma(2n/p* + 1 - q d)
                     / (Gamma(n+1)^2 (2/p)^{...} (2/p*)^{...}),
    d = 1/p - 1/p*,

from sequences with one index pinned.  The Kerzman-Stein operator has the
same data mapped through sqrt(lambda - 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .domain import ClassTag, DomainModel, conjugate_exponent
from .errors import (DivergentIntegralError, DomainSpecError,
                     NonAdmissibleMeasureError, UnsupportedClassError)
from .measure import Admissibility, BoundaryMeasure, is_admissible
from .numerics import (EndpointExponents, LogValue, integrate_peaked_log,
                       integrate_singular, log_beta, log_gamma)

__all__ = [
    "PieceNorm",
    "SpectrumReport",
    "OperatorNormEstimate",
    "piece_norm",
    "lambda_pqn",
    "asymptotic_diagonal_limit",
    "essential_spectrum",
    "operator_norm_estimate",
    "ks_piece_norm",
    "is_szego",
]

DEFAULT_TOL = 1e-11


@dataclass(frozen=True)
class PieceNorm:
    """Squared norm of one Fourier piece plus its three log-integrals."""

    n: int
    m: int
    logI_minus1: LogValue
    logI_0: LogValue
    logI_plus1: LogValue
    norm_sq: float

    @property
    def ks_norm(self) -> float:
        """Norm of the Kerzman-Stein piece: sqrt(||L_nm||^2 - 1)."""
        return math.sqrt(max(self.norm_sq - 1.0, 0.0))

    @property
    def angle(self) -> float:
        """Angle between the two defining boundary functions; sec = ||L_nm||."""
        return math.acos(min(1.0, 1.0 / math.sqrt(max(self.norm_sq, 1.0))))


def _c_factor(k: int, p: float) -> float:
    """2k/p + 1 - k: the slope factor of the k-integrand (0 < c <= 2)."""
    if math.isinf(p):
        return float(1 - k)
    return 2.0 * k / p + 1.0 - k


def _log_integrand(d: DomainModel, mu: BoundaryMeasure, n: int, m: int, k: int):
    def log_f(s: np.ndarray) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        lnr1, lnr2 = d.log_radii(s)
        out = np.zeros_like(s)
        with np.errstate(divide="ignore", invalid="ignore"):
            if n:
                out = out + n * (2.0 * k * lnr1 + (1 - k) * np.log(s))
            if m:
                out = out + m * (2.0 * k * lnr2 + (1 - k) * np.log1p(-s))
        if k != 0:
            out = out + k * mu.log_omega(s)
        return out

    return log_f


def _endpoint_exponent(d: DomainModel, mu: BoundaryMeasure, n: int, m: int,
                       k: int, side: int) -> float:
    """Power of the k-integrand at endpoint ``side`` (best analytic effort)."""
    p_end = d.endpoint_p[side]
    idx = n if side == 0 else m
    acc = idx * _c_factor(k, p_end)
    behavior = mu.endpoint_behavior[side]
    if k != 0 and behavior is not None:
        acc += k * behavior[0]
    return acc


def piece_norm(d: DomainModel, mu: BoundaryMeasure, n: int, m: int,
               tol: float = DEFAULT_TOL) -> PieceNorm:
    """The three integrals I(-1), I(0), I(+1) and the assembled norm.

    I(0) is the exact beta integral; the other two are peaked log-space
    quadratures localized at s = n/(n+m).  Divergence of an endpoint power
    (a non-admissible measure for this piece) raises
    NonAdmissibleMeasureError naming k and the endpoint.
    """
    if n < 0 or m < 0:
        raise DomainSpecError("piece_norm needs n, m >= 0")
    if mu.domain is not d:
        raise DomainSpecError("measure was built for a different domain")
    logI0 = LogValue(log_beta(n + 1.0, m + 1.0))
    logs = {0: logI0}
    for k in (-1, 1):
        exps = []
        for side in (0, 1):
            B = _endpoint_exponent(d, mu, n, m, k, side)
            if B <= -1.0:
                raise NonAdmissibleMeasureError(
                    f"I({k:+d}) diverges at s={side} for (n,m)=({n},{m}): "
                    f"endpoint power {B:.4g} <= -1")
            exps.append(B)
        log_f = _log_integrand(d, mu, n, m, k)
        sing = tuple((s0, k * pw) for s0, pw in mu.interior_singularities)
        for s0, pw in sing:
            if pw <= -1.0:
                raise NonAdmissibleMeasureError(
                    f"I({k:+d}) diverges at interior s={s0} for (n,m)=({n},{m})")
        if n + m == 0:
            try:
                val = integrate_singular(
                    lambda s: float(np.exp(log_f(np.array([s]))[0])),
                    EndpointExponents(exps[0], exps[1]), max(tol, 1e-12))
            except DivergentIntegralError as exc:
                raise NonAdmissibleMeasureError(str(exc)) from exc
            logs[k] = LogValue.from_value(val)
            continue
        peak = n / (n + m)
        if n and m:
            # c -> 0 when p degenerates at the peak (width formula blows
            # up); clamp and let the adaptive panels absorb the difference
            c = max(_c_factor(k, d.p_at(peak)), 0.05)
            width = math.sqrt(2.0 * n * m / (c * (n + m) ** 3))
        else:
            # one-sided (Watson) regime: decay scale of the dominant factor
            p_end = d.endpoint_p[0 if m else 1]
            c = _c_factor(k, p_end)
            width = 1.0 / (max(n, m) * max(c, 0.05))
        try:
            logs[k] = integrate_peaked_log(
                log_f, peak, width, EndpointExponents(exps[0], exps[1]),
                tol, singular_points=sing)
        except DivergentIntegralError as exc:
            raise NonAdmissibleMeasureError(str(exc)) from exc
    norm_sq = math.exp(logs[-1].log_magnitude + logs[1].log_magnitude
                       - 2.0 * logs[0].log_magnitude)
    return PieceNorm(n=n, m=m, logI_minus1=logs[-1], logI_0=logs[0],
                     logI_plus1=logs[1], norm_sq=norm_sq)


def ks_piece_norm(pn: PieceNorm) -> float:
    """Norm of the Kerzman-Stein piece, sqrt(max(||L_nm||^2 - 1, 0))."""
    return pn.ks_norm


def lambda_pqn(p: float, q: float, n: int) -> float:
    """Discrete eigenvalue family of the axis limits.

    Requires both Gamma arguments positive, which is the admissibility bound
    |q| < |p/(p-2)| when n = 0.  Satisfies lambda(p,q,n) = lambda(p*,q,n)
    exactly and tends to sqrt(p p*)/2 as n grows.
    """
    if not (p > 1.0 and math.isfinite(p)):
        raise DomainSpecError(f"lambda_pqn needs 1 < p < inf, got {p}")
    if n < 0:
        raise DomainSpecError("lambda_pqn needs n >= 0")
    ps = conjugate_exponent(p)
    delta = 1.0 / p - 1.0 / ps
    a = 2.0 * n / p + 1.0 + q * delta
    a_star = 2.0 * n / ps + 1.0 - q * delta
    if a <= 0.0 or a_star <= 0.0:
        raise NonAdmissibleMeasureError(
            f"Gamma argument non-positive (a={a:.4g}, a*={a_star:.4g}): "
            f"|q| must stay below |p/(p-2)| = {abs(p/(p-2.0)) if p != 2 else math.inf:.4g}")
    return math.exp(log_gamma(a) + log_gamma(a_star) - 2.0 * log_gamma(n + 1.0)
                    - a * math.log(2.0 / p) - a_star * math.log(2.0 / ps))


def _branch_value(p: float) -> float:
    """sqrt(p p*)/2 with the degenerate limits mapped to +inf."""
    if math.isinf(p) or p <= 1.0:
        return math.inf
    return p / (2.0 * math.sqrt(p - 1.0))


def asymptotic_diagonal_limit(d: DomainModel, u: float) -> float:
    """Limit of ||L_nm||^2 along n/m -> u: sqrt(p(s) p*(s))/2 at s = u/(1+u).

    Reports +inf when the profile leaves (1, oo) at that point (the
    transform is unbounded there).
    """
    if u < 0.0:
        raise DomainSpecError(f"index ratio u must be >= 0, got {u!r}")
    s = 1.0 if math.isinf(u) else u / (1.0 + u)
    if s in (0.0, 1.0):
        p = d.endpoint_p[0 if s == 0.0 else 1]
    else:
        p = d.p_at(s)
    return _branch_value(p)


@dataclass(frozen=True)
class SpectrumReport:
    """Essential spectrum of L*L (or the Kerzman-Stein magnitudes).

    For L*L: the continuous branch is the closed interval of values
    sqrt(p(s) p*(s))/2, the two discrete families are lambda_{p_j, q, n} for
    the endpoint exponents p_1, p_2, zero always belongs, and the essential
    norm is the square root of the largest essential value.  For the
    Kerzman-Stein operator all listed values are magnitudes sqrt(lambda-1)
    (the spectrum itself is +-i times them) and the essential norm is the
    largest magnitude.
    """

    operator_kind: str
    p1: float
    p2: float
    q: float
    branch_lo: float
    branch_hi: float
    branch_arg_lo: float
    branch_arg_hi: float
    discrete_family_1: Tuple[float, ...]
    discrete_family_2: Tuple[float, ...]
    includes_zero: bool
    essential_norm: float

    def as_dict(self) -> dict:
        return {
            "operator_kind": self.operator_kind,
            "p1": self.p1,
            "p2": self.p2,
            "q": self.q,
            "continuous_branch": {
                "lo": self.branch_lo, "hi": self.branch_hi,
                "arg_lo": self.branch_arg_lo, "arg_hi": self.branch_arg_hi,
            },
            "discrete_family_1": list(self.discrete_family_1),
            "discrete_family_2": list(self.discrete_family_2),
            "includes_zero": self.includes_zero,
            "essential_norm": self.essential_norm,
        }


_BRANCH_GRID = 2049


def essential_spectrum(d: DomainModel, mu: BoundaryMeasure, kind: str = "lstarl",
                       n_report: int = 32) -> SpectrumReport:
    """Assemble the essential spectrum of L*L or the Kerzman-Stein operator.

    Requires a class P or R domain and an order-q measure with q inside the
    admissibility bound; refuses otherwise (piece-norm sweeps remain
    available for the wilder cases).
    """
    kind = kind.lower()
    if kind not in ("lstarl", "ks"):
        raise DomainSpecError(f"kind must be 'lstarl' or 'ks', got {kind!r}")
    if d.class_tag not in (ClassTag.P, ClassTag.R):
        raise UnsupportedClassError(
            f"essential spectrum needs a class P or R domain, got "
            f"{d.class_tag.value}; use piece-norm sweeps instead")
    if mu.order_q is None:
        raise DomainSpecError(
            "essential spectrum needs a measure with a declared order q")
    q = mu.order_q
    p1, p2 = d.endpoint_p
    for p_end in (p1, p2):
        if p_end != 2.0 and abs(q) >= abs(p_end / (p_end - 2.0)):
            raise NonAdmissibleMeasureError(
                f"order q={q:g} violates the admissibility bound at endpoint "
                f"exponent p={p_end:g}")

    s_grid = np.linspace(0.0, 1.0, _BRANCH_GRID)
    p_vals = np.asarray(d.p_values(s_grid), dtype=float)
    p_vals[0], p_vals[-1] = p1, p2
    branch = np.array([_branch_value(float(p)) for p in p_vals])
    i_lo, i_hi = int(np.argmin(branch)), int(np.argmax(branch))
    branch_lo, branch_hi = float(branch[i_lo]), float(branch[i_hi])

    fam1 = [lambda_pqn(p1, q, n) for n in range(n_report)]
    fam2 = [lambda_pqn(p2, q, n) for n in range(n_report)]
    # the families converge to the endpoint branch values; scan far enough
    # that the essential supremum cannot hide beyond the reported window
    fam_sup = max(max(lambda_pqn(p1, q, n) for n in range(max(n_report, 256))),
                  max(lambda_pqn(p2, q, n) for n in range(max(n_report, 256))))
    ess_max = max(branch_hi, fam_sup)

    if kind == "lstarl":
        return SpectrumReport(
            operator_kind="LstarL", p1=p1, p2=p2, q=q,
            branch_lo=branch_lo, branch_hi=branch_hi,
            branch_arg_lo=float(s_grid[i_lo]), branch_arg_hi=float(s_grid[i_hi]),
            discrete_family_1=tuple(fam1), discrete_family_2=tuple(fam2),
            includes_zero=True,
            essential_norm=math.sqrt(ess_max),
        )
    to_mag = lambda lam: math.sqrt(max(lam - 1.0, 0.0))
    return SpectrumReport(
        operator_kind="KerzmanStein", p1=p1, p2=p2, q=q,
        branch_lo=to_mag(branch_lo), branch_hi=to_mag(branch_hi),
        branch_arg_lo=float(s_grid[i_lo]), branch_arg_hi=float(s_grid[i_hi]),
        discrete_family_1=tuple(to_mag(x) for x in fam1),
        discrete_family_2=tuple(to_mag(x) for x in fam2),
        includes_zero=True,
        essential_norm=to_mag(ess_max),
    )


@dataclass(frozen=True)
class OperatorNormEstimate:
    """Grid sup of piece norms combined with the asymptotic ceiling."""

    sup_observed: float
    arg: Tuple[int, int]
    saturated: bool
    unbounded_trend: bool
    diagonal_tail: Tuple[float, ...]


def operator_norm_estimate(d: DomainModel, mu: BoundaryMeasure, n_max: int,
                           tol: float = DEFAULT_TOL) -> OperatorNormEstimate:
    """sup of ||L_nm|| over [0, n_max]^2 plus essential-spectrum ceilings.

    ``saturated`` means the grid has reached the asymptotic ceiling (within
    1e-4) or the sup sits at small indices; a monotone-increasing diagonal
    whose maximum is at the grid corner is flagged as an unbounded trend
    instead (the transform fails to be bounded in that case).
    """
    if is_admissible(mu) is Admissibility.NOT_ADMISSIBLE:
        raise NonAdmissibleMeasureError(
            f"measure {mu.label} is not admissible on this domain")
    best, arg = -math.inf, (0, 0)
    diag = []
    for n in range(n_max + 1):
        for m in range(n_max + 1):
            val = math.sqrt(piece_norm(d, mu, n, m, tol).norm_sq)
            if val > best:
                best, arg = val, (n, m)
            if n == m:
                diag.append(val)
    sup_observed = best
    ceiling = None
    try:
        report = essential_spectrum(d, mu, "lstarl")
        ceiling = report.essential_norm
        sup_observed = max(sup_observed, ceiling)
    except (UnsupportedClassError, DomainSpecError, NonAdmissibleMeasureError):
        pass
    tail = diag[-5:]
    increasing_tail = all(b > a for a, b in zip(tail[:-1], tail[1:]))
    unbounded_trend = (ceiling is None and increasing_tail
                       and max(arg) == n_max)
    saturated = False
    if ceiling is not None:
        saturated = (abs(best - ceiling) <= 1e-4
                     or max(arg) <= n_max // 2)
    return OperatorNormEstimate(
        sup_observed=sup_observed, arg=arg, saturated=saturated,
        unbounded_trend=unbounded_trend, diagonal_tail=tuple(tail))


def is_szego(d: DomainModel, mu: BoundaryMeasure, grid: int = 257,
             rtol: float = 1e-9) -> bool:
    """Whether the transform is the orthogonal (Szego) projection for mu.

    Happens exactly for ellipsoids (constant profile with p = 2) carrying a
    constant-omega measure; equivalently every piece norm equals 1.
    """
    if d.class_tag is not ClassTag.P or d.p_at(0.5) != 2.0:
        return False
    s = np.linspace(1.0 / grid, 1.0 - 1.0 / grid, grid)
    vals = mu.log_omega(s)
    return bool(np.max(vals) - np.min(vals) <= rtol)
