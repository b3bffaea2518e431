"""Bessel, Bombieri, Selberg, Heilbronn and Pečarić-type bounds for finite vector systems."""

from .bounds import (BoundParams, BoundValue, BoundVariant, bombieri_bound, bombieri_lhs,
                     bound_weighted, compare_M1_M2, default_params, fourier_free_bound,
                     heilbronn_pair, orthonormal_bombieri_bound, pecaric_bound, selberg_lhs,
                     weighted_gram_sum)
from .errors import (BombieriError, DimensionMismatch, NotEmbeddable, ParamError, ParseError,
                     ValidationError, ZeroVectorRow)
from .io import ReportRow, emit_report, parse_instance, parse_report_json
from .optimize import OptimizeResult, optimize_exponents
from .space import (AbsGram, Coefficients, ExponentPair, VectorSystem, aggregate,
                    canonical_orthonormal, fourier_coeffs, gram_abs, inner)
from .verify import (FuzzReport, Instance, InstanceConfig, VerificationResult, check_bound,
                     check_chain, fuzz, oracle_norm_sq, random_instance)

__version__ = "0.1.0"
