"""Spectral theory of the Leray transform on convex Reinhardt domains in C^2.

Build a domain from its generator data, attach a rotation-invariant boundary
measure, and compute Fourier-piece norms, essential spectra, and polar-dual
comparisons:

    >>> import lerayspec as ls
    >>> d = ls.from_pball(4, 1, 1)
    >>> mu = ls.order_q_measure(d, 0.0)
    >>> ls.piece_norm(d, mu, 0, 40).norm_sq     # -> approaches 4/3
    >>> ls.essential_spectrum(d, mu).essential_norm
"""

from .domain import (ClassTag, ConstantProfile, ClosedFormProfile, CurvatureData,
                     DomainModel, EndpointRegularity, GeneratorProfile,
                     OsculationData, TabulatedProfile, builtin_example, classify,
                     conjugate_exponent, from_generator, from_pball)
from .duality import (DualPair, DualityReport, dual_measure, dual_pair, polar,
                      t_map, verify_duality)
from .errors import (DivergentIntegralError, DomainSpecError,
                     InconclusiveClassificationError, LeraySpecError,
                     NearSingularityError, NonAdmissibleMeasureError,
                     QuadratureError, UnsupportedClassError)
from .leray import (InteriorPoint, MonomialFunction, apply_to_monomial,
                    leray_kernel_density, reproduction_coefficient)
from .measure import (Admissibility, BoundaryMeasure, admissibility_threshold,
                      fefferman_measure, flat_measure, is_admissible, levi_norm,
                      order_q_measure, surface_measure)
from .numerics import (EndpointExponents, LogValue, integrate_peaked_log,
                       integrate_singular, log_beta, log_gamma)
from .spectrum import (OperatorNormEstimate, PieceNorm, SpectrumReport,
                       asymptotic_diagonal_limit, essential_spectrum, is_szego,
                       ks_piece_norm, lambda_pqn, operator_norm_estimate,
                       piece_norm)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
