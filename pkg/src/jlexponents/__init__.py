"""Roots of a Gamma-ratio equation governing stability of singular solutions
to the fractional Lane-Emden equation, and the exponents derived from them."""

from .bounds import (
    BoundOrder,
    BoundPair,
    Direction,
    ThresholdReport,
    bound_v1,
    bound_v2,
    real_roots,
    threshold_lower,
    threshold_upper,
)
from .errors import BracketError, CapExceededError, DomainError, NumericalError, UnsupportedOrderError
from .exponents import (
    ClosedForm,
    ExponentReport,
    ProblemParams,
    Regime,
    Stability,
    StabilityVerdict,
    a_domain,
    closed_form_a,
    critical_dimension,
    exponent_report,
    f_eval,
    hardy_constant,
    jl_reference,
    k_roots,
    p_from_k,
    singular_amplitude_power,
    solve_a,
    stability_gap,
)
from .specfun import digamma, ln_gamma, polygamma
from .tables import SweepRecord, sweep, sweep_csv, table1_check, table2_compute

__version__ = "0.1.0"
