"""Discrete (delta) fractional calculus: fractional sums and differences, the
discrete Mittag-Leffler function, linear fractional IVPs, and numerical checks
of the generalized Bernoulli inequality."""

__version__ = "0.1.0"

from .exceptions import (DfracError, GridMismatchError, HorizonError, HypothesisError,
                         InputError, NumericError, PoleError, RepresentationError,
                         UndefinedPowerError)
from .fracops import (frac_diff_comp, frac_diff_comp_values, frac_diff_direct,
                      frac_diff_direct_values, frac_sum, frac_sum_values)
from .grid import ArgKind, Family, FracParams, GridSeq, make_base_arg
from .inequalities import (SweepReport, bernoulli_gap, bernoulli_sweep, comparison_check,
                           positivity_sweep, slack_sequence)
from .mittag import MlQuery, ml_eval, ml_eval_values, ml_kernel_row
from .solver import (IvpSpec, Trajectory, apply_T, ivp_residual, solve_closed_const,
                     solve_oracle, solve_series)
from .special import (ExactArg, SignedLog, falling_power, falling_power_log,
                      falling_power_real, lgamma_signed, normalized_power)

__all__ = [
    "ArgKind", "DfracError", "ExactArg", "Family", "FracParams", "GridMismatchError",
    "GridSeq", "HorizonError", "HypothesisError", "InputError", "IvpSpec", "MlQuery",
    "NumericError", "PoleError", "RepresentationError", "SignedLog", "SweepReport",
    "Trajectory", "UndefinedPowerError", "apply_T", "bernoulli_gap", "bernoulli_sweep",
    "comparison_check", "falling_power", "falling_power_log", "falling_power_real",
    "frac_diff_comp", "frac_diff_comp_values", "frac_diff_direct", "frac_diff_direct_values",
    "frac_sum", "frac_sum_values", "ivp_residual", "lgamma_signed", "make_base_arg",
    "ml_eval", "ml_eval_values", "ml_kernel_row", "normalized_power", "positivity_sweep",
    "slack_sequence", "solve_closed_const", "solve_oracle", "solve_series",
]
