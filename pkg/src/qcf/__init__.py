"""q-continued fractions: the Entry 12 product identity, its J-fraction and polynomials.

Exact (``fractions.Fraction``) and floating evaluation of q-series, continued
fractions and the associated orthogonal polynomials, plus residual checks for
the identities connecting them.
"""
__version__ = "0.1.0"

from .errors import (ConditioningError, DegenerateError, DivergenceError,
                     DomainError, MassPointWarning, PoleError, VerificationError)
from .scalars import BigRational, ScaledValue, rat, rat_arith, scaled_normalize
from .qseries import (PhiSeriesSpec, TailBound, TruncatedSeries, heine_residual,
                      phi_eval, qbinomial_residual, qpoch_finite, qpoch_infinite,
                      qpoch_multi, ts_arith)
from .cfrac import (CFLimit, CFSpec, ConvergentState, convergents_forward,
                    determinant_check, equivalence_transform, eval_backward,
                    limit_detect)
from .entry12 import (DsValue, Entry12Params, C_limit, D_sum, H1_closed, H_limit,
                      K_limit, cf_C_spec, cf_K_spec, entry12_residual,
                      invert_params, invert_q, jfrac_H_spec, kc_residual,
                      product_side, recursion_residual, star_residual,
                      step1_residual, step2_residual, theorem1_residual,
                      twostar_residual)
from .orthopoly import (BranchData, GammaPair, RecurrenceCoeffs, ScalingConstants,
                        F_series, G_series, H1_asymptotic_check, ND_polys,
                        P_polys, Pstar_polys, Q_polys, Qstar_polys, X_closed,
                        X_limit, branch, darboux_ratio_check, gammas,
                        genfun_Q_check, hatND_genfun_check, scaling_constants)
