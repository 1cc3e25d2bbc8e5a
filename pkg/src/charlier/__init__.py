"""Monic Charlier polynomials: exact reference values, large-degree
asymptotic formulas over the whole complex plane, a region router, zeros."""
from .errors import (AmbiguousDominanceError, BranchError, CapabilityError, CharlierError,
                     DomainError, IncompleteScanError, IndeterminateError, LadderBreakdownError,
                     OutOfNeighborhoodError, PoleError, PrecisionExhaustedError, TailInsufficientError)
from .exact import CharlierParams, EvalPoint, eval_explicit_sum, eval_recurrence, exact_sign, orthogonality_check
from .intermediate import band_cosine_formula, intermediate_formula
from .numerics import LogComplex, PrecisionPolicy, SignedLogValue
from .outer import interior_oscillatory_formula, origin_gamma_formula, outer_formula, wk_ladder
from .results import ApproxResult, ErrorOrder, FormulaTag
from .router import RegionDecision, RouterConfig, classify, evaluate
from .turning import airy_formula_left, airy_formula_left_complex, airy_formula_right, map_left, map_right
from .zeros import ZeroReport, find_zeros, interlaces

__version__ = "0.1.0"
