"""Roots of the Gamma-function stability equation and the exponents built from them.

The equation in the exponent p is

    p * Gamma(n/2 - s/(p-1)) Gamma(s + s/(p-1))
      / (Gamma(s/(p-1)) Gamma((n-2s)/2 - s/(p-1)))
    = Gamma((n+2s)/4)^2 / Gamma((n-2s)/4)^2

Substituting k = 2s/(p-1) and then k = (n - 2s - 2)/2 + a sqrt(n) turns the
log of (left side / right side) into an even function f(a) whose positive
root a_ns determines both the lower exponent p1 and, when it exists, the
Joseph-Lundgren exponent p2.  Everything here is evaluated in log space so
that nothing overflows for large n.
"""

import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

from .errors import BracketError, CapExceededError, DomainError
from .specfun import ln_gamma

BOUNDARY_TOL = 1e-10
ROOT_FTOL = 1e-11
ROOT_XTOL_REL = 1e-12
# k1 values this close to zero (relative to the centre (n-2s-2)/2) count as zero;
# at (n, s) = (10, 1) k1 vanishes exactly and rounding alone decides its sign
K1_ZERO_TOL = 1e-9


def _finite(name, value):
    try:
        value = float(value)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"{name} must be a real number, got {value!r}") from exc
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class ProblemParams:
    """Ambient dimension ``n`` and fractional order ``s`` with n > 2s > 0.

    Non-integer ``n`` is accepted; nothing in the analysis uses integrality.
    """

    n: float
    s: float

    def __post_init__(self):
        n = _finite("n", self.n)
        s = _finite("s", self.s)
        if s <= 0.0:
            raise DomainError(f"s must be > 0, got {s}")
        if n <= 2.0 * s:
            raise DomainError(f"need n > 2s, got n={n}, s={s}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "s", s)

    @property
    def sqrt_n(self) -> float:
        return math.sqrt(self.n)

    @property
    def p_sobolev(self) -> float:
        return (self.n + 2.0 * self.s) / (self.n - 2.0 * self.s)

    @property
    def p_serrin(self) -> float:
        """n/(n-2s), the lower end of the admissible exponent range."""
        return self.n / (self.n - 2.0 * self.s)


class Regime(str, enum.Enum):
    SINGLE_ROOT = "SingleRoot"
    TWO_ROOTS = "TwoRoots"


class Stability(str, enum.Enum):
    STABLE = "Stable"
    UNSTABLE = "Unstable"
    BOUNDARY = "Boundary"


class ClosedForm(str, enum.Enum):
    S1 = "S1"
    S2_PAPER = "S2_paper"
    S2_CORRECTED = "S2_corrected"


@dataclass(frozen=True)
class ADomain:
    """The open interval (-a_max, a_max) on which every Gamma argument of f is positive."""

    a_max: float

    def __contains__(self, a) -> bool:
        return abs(a) < self.a_max


@dataclass(frozen=True)
class RootBracket:
    root: float
    lo: float
    hi: float
    f_root: float
    evaluations: int

    @property
    def width(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class StabilityVerdict:
    state: Stability
    log_margin: float


@dataclass(frozen=True)
class ExponentReport:
    n: float
    s: float
    a_ns: float
    k1: float
    k2: float
    p1: float
    p2: Optional[float]
    p_sobolev: float
    hardy: float
    regime: Regime


# --- Gamma-ratio pieces of the equation -----------------------------------


def log_hardy_constant(params: ProblemParams) -> float:
    n, s = params.n, params.s
    return 2.0 * (ln_gamma((n + 2.0 * s) / 4.0) - ln_gamma((n - 2.0 * s) / 4.0))


def hardy_constant(params: ProblemParams) -> float:
    """Best constant Gamma((n+2s)/4)^2 / Gamma((n-2s)/4)^2 in Herbst's inequality."""
    return math.exp(log_hardy_constant(params))


def _amplitude_arguments(params, exponent):
    n, s = params.n, params.s
    exponent = _finite("p", exponent)
    if exponent <= 1.0:
        raise DomainError(f"exponent must exceed 1, got {exponent}")
    half_k = s / (exponent - 1.0)
    args = (n / 2.0 - half_k, s + half_k, half_k, (n - 2.0 * s) / 2.0 - half_k)
    if min(args) <= 0.0:
        raise DomainError(
            f"exponent {exponent} is not above n/(n-2s) = {params.p_serrin}; "
            "a Gamma argument is non-positive"
        )
    return args


def log_singular_amplitude_power(params: ProblemParams, exponent: float) -> float:
    """ln A^(p-1) for the singular radial solution A |x|^(-2s/(p-1))."""
    num1, num2, den1, den2 = _amplitude_arguments(params, exponent)
    return ln_gamma(num1) + ln_gamma(num2) - ln_gamma(den1) - ln_gamma(den2)


def singular_amplitude_power(params: ProblemParams, exponent: float) -> float:
    return math.exp(log_singular_amplitude_power(params, exponent))


def log_margin(params: ProblemParams, exponent: float) -> float:
    """ln(p A^(p-1)) - ln(Hardy constant); positive means the instability inequality holds."""
    return (
        math.log(exponent)
        + log_singular_amplitude_power(params, exponent)
        - log_hardy_constant(params)
    )


def stability_gap(params: ProblemParams, exponent: float, tol: float = BOUNDARY_TOL) -> StabilityVerdict:
    """Classify the singular solution at ``exponent``.

    The singular solution is stable when p A^(p-1) <= Hardy constant and
    unstable when the inequality is strict the other way.  A log margin within
    ``tol`` of zero is reported as ``Boundary``.
    """
    margin = log_margin(params, exponent)
    if margin > tol:
        state = Stability.UNSTABLE
    elif margin < -tol:
        state = Stability.STABLE
    else:
        state = Stability.BOUNDARY
    return StabilityVerdict(state, margin)


# --- the symmetrised function f(a) -----------------------------------------


def a_domain(params: ProblemParams) -> ADomain:
    return ADomain((params.n - 2.0 * params.s + 2.0) / (2.0 * params.sqrt_n))


def _ln_gamma_increment(base, step):
    return ln_gamma(base + step) - ln_gamma(base)


def f_eval(params: ProblemParams, a: float) -> float:
    """Evaluate f(a) = (g1 + g2) - (g3 + g4).

    With c+ = n/4 + s/2, c- = n/4 - s/2 and h+- = (1 +- a sqrt(n))/2,

        g1 = lnG(c+ + h+) - lnG(c+)    g2 = lnG(c+ + h-) - lnG(c+)
        g3 = lnG(c- + h+) - lnG(c-)    g4 = lnG(c- + h-) - lnG(c-)

    Swapping a for -a swaps g1 with g2 and g3 with g4, so the grouping
    below makes f exactly even in floating point too.

    Raises:
        DomainError: if |a| >= a_max.
    """
    a = _finite("a", a)
    dom = a_domain(params)
    if a not in dom:
        raise DomainError(f"|a| must be < a_max = {dom.a_max}, got a={a}")
    n, s = params.n, params.s
    c_plus = n / 4.0 + s / 2.0
    c_minus = n / 4.0 - s / 2.0
    half_root = 0.5 * a * params.sqrt_n
    h_up = 0.5 + half_root
    h_down = 0.5 - half_root
    g1 = _ln_gamma_increment(c_plus, h_up)
    g2 = _ln_gamma_increment(c_plus, h_down)
    g3 = _ln_gamma_increment(c_minus, h_up)
    g4 = _ln_gamma_increment(c_minus, h_down)
    return (g1 + g2) - (g3 + g4)


def bracketed_root(
    fn: Callable[[float], float],
    lo: float,
    hi: float,
    f_lo: float,
    f_hi: float,
    xtol: float,
    ftol: float,
    max_iter: int = 400,
) -> RootBracket:
    """Illinois-accelerated bisection on a bracket with f(lo) > 0 > f(hi).

    Stops once the bracket is narrower than ``xtol`` and the better endpoint
    has |f| <= ``ftol``, or when the bracket cannot shrink any further in
    floating point.  Whenever two consecutive steps fail to halve the bracket
    the next step is a plain bisection.
    """
    if not (f_lo > 0.0 > f_hi):
        raise BracketError(f"no sign change on [{lo}, {hi}]: f = ({f_lo}, {f_hi})")
    # true endpoint values; w_lo/w_hi are the Illinois-weighted copies
    w_lo, w_hi = f_lo, f_hi
    evaluations = 0
    last_side = 0
    widths = [hi - lo, hi - lo]
    for _ in range(max_iter):
        if hi - lo <= xtol and min(abs(f_lo), abs(f_hi)) <= ftol:
            break
        mid = lo + 0.5 * (hi - lo)
        if not lo < mid < hi:
            break
        if hi - lo > 0.5 * widths[-2]:
            x = mid
        else:
            x = hi - w_hi * (hi - lo) / (w_hi - w_lo)
            if not lo < x < hi:
                x = mid
        fx = fn(x)
        evaluations += 1
        if fx == 0.0:
            return RootBracket(x, x, x, 0.0, evaluations)
        if fx > 0.0:
            lo, f_lo, w_lo = x, fx, fx
            if last_side == 1:
                w_hi *= 0.5
            last_side = 1
        else:
            hi, f_hi, w_hi = x, fx, fx
            if last_side == -1:
                w_lo *= 0.5
            last_side = -1
        widths = [widths[-1], hi - lo]
    best, f_best = (lo, f_lo) if abs(f_lo) <= abs(f_hi) else (hi, f_hi)
    return RootBracket(best, lo, hi, f_best, evaluations)


def bracket_a(params: ProblemParams) -> RootBracket:
    """Locate a_ns inside (1/sqrt(n), a_max) and return the final bracket.

    f(1/sqrt(n)) > 0 always; the upper end starts at a_max (1 - 1e-3) and
    the gap to a_max is halved until f turns negative, which it must because
    f -> -inf at a_max.

    Raises:
        BracketError: if the gap shrinks below 1e-14 a_max without a sign change.
    """
    a_max = a_domain(params).a_max
    def fn(a):
        return f_eval(params, a)

    lo = 1.0 / params.sqrt_n
    f_lo = fn(lo)
    if not f_lo > 0.0:
        raise BracketError(f"f(1/sqrt(n)) = {f_lo} is not positive for {params}")
    gap = 1e-3 * a_max
    while True:
        hi = a_max - gap
        if hi > lo:
            f_hi = fn(hi)
            if f_hi < 0.0:
                break
        gap *= 0.5
        if gap < 1e-14 * a_max:
            raise BracketError(f"no sign change of f below a_max for {params}")
    return bracketed_root(fn, lo, hi, f_lo, f_hi, xtol=ROOT_XTOL_REL * a_max, ftol=ROOT_FTOL)


def solve_a(params: ProblemParams) -> float:
    """Unique positive root a_ns of f, which lies in (1/sqrt(n), a_max)."""
    return bracket_a(params).root


# --- exponents ---------------------------------------------------------------


def k_roots(params: ProblemParams, a_ns: Optional[float] = None) -> Tuple[float, float]:
    """k1 < k2 = (n - 2s - 2)/2 -+ a_ns sqrt(n)."""
    if a_ns is None:
        a_ns = solve_a(params)
    centre = (params.n - 2.0 * params.s - 2.0) / 2.0
    spread = a_ns * params.sqrt_n
    return centre - spread, centre + spread


def k1_is_positive(params: ProblemParams, k1: float) -> bool:
    centre = (params.n - 2.0 * params.s - 2.0) / 2.0
    return k1 > K1_ZERO_TOL * max(1.0, abs(centre))


def p_from_k(s: float, k: float) -> float:
    """Invert k = 2s/(p-1).  Returns ``math.inf`` for k <= 0."""
    if k <= 0.0:
        return math.inf
    return 1.0 + 2.0 * s / k


def exponent_report(params: ProblemParams) -> ExponentReport:
    a_ns = solve_a(params)
    k1, k2 = k_roots(params, a_ns)
    p1 = p_from_k(params.s, k2)
    two = k1_is_positive(params, k1)
    p2 = p_from_k(params.s, k1) if two else None
    return ExponentReport(
        n=params.n,
        s=params.s,
        a_ns=a_ns,
        k1=k1,
        k2=k2,
        p1=p1,
        p2=p2,
        p_sobolev=params.p_sobolev,
        hardy=hardy_constant(params),
        regime=Regime.TWO_ROOTS if two else Regime.SINGLE_ROOT,
    )


def critical_dimension(s: float, run_length: int = 5) -> int:
    """Largest integer n > 2s for which k1 = n - 2s - 2 - 2 a_ns sqrt(n) <= 0.

    Scans upward from floor(2s) + 1 and stops after ``run_length``
    consecutive integers with k1 > 0.  The scan assumes the sign of k1
    changes once; the consecutive-failure rule and the hard cap guard that
    assumption.

    Raises:
        CapExceededError: if the scan passes the cap without terminating.
    """
    s = _finite("s", s)
    if s <= 0.0:
        raise DomainError(f"s must be > 0, got {s}")
    cap = math.ceil((2.0 + math.sqrt(2.0 * s + 6.0)) ** 2) + 50
    n = math.floor(2.0 * s) + 1
    last_nonpositive = None
    misses = 0
    while misses < run_length:
        if n > cap:
            raise CapExceededError(f"critical dimension scan for s={s} passed cap {cap}")
        params = ProblemParams(n, s)
        k1, _ = k_roots(params)
        if not k1_is_positive(params, k1):
            last_nonpositive = n
            misses = 0
        else:
            misses += 1
        n += 1
    if last_nonpositive is None:
        raise CapExceededError(f"k1 > 0 already at n = {math.floor(2.0 * s) + 1} for s={s}")
    return last_nonpositive


# --- closed forms and classical references ------------------------------------


def closed_form_a(params: ProblemParams, variant) -> float:
    """Closed-form a_ns for s = 1 and s = 2.

    ``S2_paper`` uses the radicand (n-4)^2 + 4 and does not reproduce the
    root.  ``S2_corrected`` uses n^2 - 8n + 32, which is what rationalising
    the Gazzola-Grunau exponent gives.
    """
    variant = ClosedForm(variant)
    n, s = params.n, params.s
    if variant is ClosedForm.S1:
        if s != 1.0:
            raise DomainError(f"S1 closed form needs s = 1, got s={s}")
        return math.sqrt((n - 1.0) / n)
    if s != 2.0:
        raise DomainError(f"{variant.value} closed form needs s = 2, got s={s}")
    if variant is ClosedForm.S2_PAPER:
        radicand = (n - 4.0) ** 2 + 4.0
    else:
        radicand = n * n - 8.0 * n + 32.0
    num = 2.0 * (n - 1.0) * (n * n - 2.0 * n - 2.0)
    den = n * (n * n + 4.0 + n * math.sqrt(radicand))
    return math.sqrt(num / den)


def jl_reference(params: ProblemParams) -> float:
    """Classical Joseph-Lundgren exponent for s = 1 and the Gazzola-Grunau one for s = 2.

    Returns ``math.inf`` when n <= 10 (s = 1) or n <= 12 (s = 2).
    """
    n, s = params.n, params.s
    if n != math.floor(n):
        raise DomainError(f"reference formulas need integer n, got n={n}")
    if s == 1.0:
        if n <= 10:
            return math.inf
        return ((n - 2.0) ** 2 - 4.0 * n + 8.0 * math.sqrt(n - 1.0)) / ((n - 2.0) * (n - 10.0))
    if s == 2.0:
        if n <= 12:
            return math.inf
        root = math.sqrt(n * n + 4.0 - n * math.sqrt(n * n - 8.0 * n + 32.0))
        return (n + 2.0 - root) / (n - 6.0 - root)
    raise DomainError(f"reference formulas exist only for s in {{1, 2}}, got s={s}")
