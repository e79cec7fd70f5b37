"""Rational upper/lower bounds on f(a) and the dimension thresholds derived from them.

Two bound orders are available.  ``V1`` comes from a second-order Taylor
expansion of the Gamma increments with a cubic remainder, ``V2`` from a
third-order expansion with a quartic remainder.  Both are evaluated from
their compact rational forms

    s * ( Psi'-term + Psi''-term * (1 + a^2 n)/4 + remainder-terms )

with every polygamma replaced by its elementary sandwich.  The expanded
polynomial forms and two reference dimension polynomials are kept only as
cross-checks.

The upper bounds are rigorous on the whole precondition domain.  The lower
bounds bound the remainder with the polygamma value at n/4 - s/2, which is
not valid when a sqrt(n) is a sizeable fraction of n: near a_max, f tends to
-inf while both lower bounds stay finite.  ``BoundPair.encloses`` reports
whether a particular evaluation actually brackets f.
"""

import enum
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import CapExceededError, DomainError
from .exponents import ProblemParams, a_domain, f_eval, solve_a

REAL_ROOT_GRID = 10_000
THRESHOLD_REFINE_WIDTH = 1e-6


class BoundOrder(str, enum.Enum):
    V1 = "V1"
    V2 = "V2"


class Direction(str, enum.Enum):
    UPPER_A = "UpperA"  # a_ns < 1 + eps1
    LOWER_A = "LowerA"  # a_ns > 1 - eps2


@dataclass(frozen=True)
class BoundPair:
    lower: float
    upper: float
    f_value: float
    order: BoundOrder

    @property
    def encloses(self) -> bool:
        return self.lower <= self.f_value <= self.upper


@dataclass(frozen=True)
class ThresholdReport:
    s: float
    eps: float
    a_star: float
    direction: Direction
    domain_term: float
    poly_term: float
    nbar: float
    numerator_root: Optional[float] = None
    reference_root: Optional[float] = None
    spot_checks: Tuple[Tuple[int, float, bool], ...] = field(default=())


def domain_term(s: float, a: float) -> float:
    """(a + sqrt(max(a^2 + 2s - 2, 0)))^2; above it every Gamma argument of f(a) is positive."""
    return (a + math.sqrt(max(a * a + 2.0 * s - 2.0, 0.0))) ** 2


def _check_bound_preconditions(n, s, a):
    if not n > 2.0 * s + 4.0:
        raise DomainError(f"bounds need n > 2s + 4, got n={n}, s={s}")
    if not a >= 0.0:
        raise DomainError(f"bounds need a >= 0, got a={a}")
    if not n > domain_term(s, a):
        raise DomainError(f"bounds need n > {domain_term(s, a)} for a={a}, s={s}")


def _v1_rational(n, s, a):
    x_plus = n / 4.0 + s / 2.0
    x_minus = n / 4.0 - s / 2.0 - 1.0
    quad = 0.25 + 0.25 * a * a * n
    root_term = a * math.sqrt(n)
    cube_up = ((root_term + 1.0) / 2.0) ** 3 / 3.0
    cube_down = ((root_term - 1.0) / 2.0) ** 3 / 3.0
    upper = s * (1.0 / x_minus - quad / x_plus**2 + cube_up / x_minus**3)
    lower = s * (1.0 / x_plus - quad / x_minus**2 - cube_down / x_minus**3)
    return lower, upper


def _v2_rational(n, s, a):
    x_plus = n / 4.0 + s / 2.0
    x_minus = n / 4.0 - s / 2.0 - 1.0
    a2n = a * a * n
    quad = 0.25 + 0.25 * a2n
    cubic = 1.0 / 24.0 + a2n / 8.0
    quartic = 1.0 / 192.0 + a2n * a2n / 192.0 + a2n / 32.0
    upper = s * (1.0 / x_minus - quad / x_plus**2 + 2.0 * cubic / x_minus**3)
    lower = s * (
        1.0 / x_plus
        - quad / x_minus**2
        + 2.0 * cubic / x_plus**3
        - 6.0 * quartic / x_minus**4
    )
    return lower, upper


_RATIONAL = {BoundOrder.V1: _v1_rational, BoundOrder.V2: _v2_rational}


def _bound(params, a, order):
    n, s = params.n, params.s
    a = float(a)
    _check_bound_preconditions(n, s, a)
    if not a < a_domain(params).a_max:
        raise DomainError(f"a={a} is not below a_max")
    lower, upper = _RATIONAL[order](n, s, a)
    return BoundPair(lower, upper, f_eval(params, a), order)


def bound_v1(params: ProblemParams, a: float) -> BoundPair:
    """Second-order bounds with cubic remainder.

    Requires n > 2s + 4, 0 <= a and n > (a + sqrt(max(a^2 + 2s - 2, 0)))^2.
    """
    return _bound(params, a, BoundOrder.V1)


def bound_v2(params: ProblemParams, a: float) -> BoundPair:
    """Third-order bounds with quartic remainder; same preconditions as ``bound_v1``."""
    return _bound(params, a, BoundOrder.V2)


# --- expanded forms (cross-checks only) ------------------------------------


def expanded_bounds(params: ProblemParams, a: float, order) -> Tuple[float, float]:
    """(lower, upper) from the fully expanded polynomial-over-polynomial forms."""
    order = BoundOrder(order)
    n, s = params.n, params.s
    r = math.sqrt(n)
    a2 = a * a
    if order is BoundOrder.V1:
        up = (
            (-3 * a2 + 3) * n**4
            + 2 * a**3 * n**3 * r
            + (-27 + (18 * s + 42) * a2) * n**3
            + (8 * a**3 * s + 6 * a) * n**2 * r
            + ((-36 * s**2 - 120 * s - 144) * a2 - 24 * s**2 - 30 * s + 86) * n**2
            + (8 * a**3 * s**2 + 24 * a * s) * n * r
            + ((24 * s**3 + 168 * s**2 + 288 * s + 192) * a2 + 60 * s**2 + 56 * s - 144) * n
            + 24 * a * s**2 * r
            + 48 * s**4 + 216 * s**3 + 344 * s**2 + 288 * s + 192
        )
        low = (
            (-3 * a2 + 3) * n**3
            - 2 * a**3 * n**2 * r
            + (18 * a2 - 18 * s - 39) * n**2
            + (-4 * a**3 * s - 6 * a) * n * r
            + ((12 * s**2 + 36 * s) * a2 + 36 * s**2 + 144 * s + 158) * n
            - 12 * a * s * r
            - 24 * s**3 - 132 * s**2 - 260 * s - 192
        )
        upper = 4 * s / (3 * (n - 2 * s - 4) ** 3 * (n + 2 * s) ** 2) * up
        lower = 4 * s / (3 * (n + 2 * s) * (n - 2 * s - 4) ** 3) * low
        return lower, upper
    upper = 4 * s / (3 * (n - 2 * s - 4) ** 3 * (n + 2 * s) ** 2) * np.polyval(
        v2_upper_numerator(s, a), n
    )
    lower = 4 * s / (3 * (n + 2 * s) ** 3 * (n - 2 * s - 4) ** 4) * np.polyval(
        v2_lower_numerator(s, a), n
    )
    return float(lower), float(upper)


def v2_upper_numerator(s: float, a: float) -> List[float]:
    """Coefficients in n (highest first) of the V2 upper-bound numerator."""
    a2 = a * a
    return [
        -3 * a2 + 3,
        -27 + (18 * s + 48) * a2,
        (-36 * s**2 - 96 * s - 144) * a2 - 24 * s**2 - 30 * s + 88,
        (24 * s**3 + 192 * s**2 + 288 * s + 192) * a2 + 60 * s**2 + 64 * s - 144,
        48 * s**4 + 216 * s**3 + 352 * s**2 + 288 * s + 192,
    ]


def v2_lower_numerator(s: float, a: float) -> List[float]:
    """Coefficients in n (highest first) of the V2 lower-bound numerator."""
    a2 = a * a
    a4 = a2 * a2
    return [
        -3 * a2 + 3,
        -6 * a4 + (-6 * s + 36) * a2 - 12 * s - 51,
        -36 * s * a4 + (24 * s**2 - 276) * a2 - 12 * s**2 + 90 * s + 316,
        -72 * s**2 * a4
        + (48 * s**3 + 288 * s**2 + 648 * s + 1152) * a2
        + 96 * s**3 + 408 * s**2 + 64 * s - 886,
        -48 * s**3 * a4
        + (-48 * s**4 - 768 * s**3 - 3312 * s**2 - 4608 * s - 3072) * a2
        - 48 * s**4 - 720 * s**3 - 2208 * s**2 - 1476 * s + 1152,
        (-96 * s**5 - 192 * s**4 + 864 * s**3 + 4608 * s**2 + 6144 * s + 3072) * a2
        - 192 * s**5 - 816 * s**4 - 512 * s**3 + 1656 * s**2 + 1536 * s - 1024,
        192 * s**6 + 1440 * s**5 + 4288 * s**4 + 6224 * s**3 + 4608 * s**2 + 2048 * s + 1024,
    ]


def reference_upper_polynomial(s: float, eps1: float) -> List[float]:
    """Reference quartic in n for the a < 1 + eps1 threshold.

    Identical to ``v2_upper_numerator(s, 1 + eps1)`` except for the leading
    coefficient, which is -(eps1^2 + 2 eps1) here and -3 (eps1^2 + 2 eps1) there.
    """
    b2 = (1.0 + eps1) ** 2
    return [
        -(eps1**2) - 2 * eps1,
        -27 + (18 * s + 48) * b2,
        (-36 * s**2 - 96 * s - 144) * b2 - 24 * s**2 - 30 * s + 88,
        (24 * s**3 + 192 * s**2 + 288 * s + 192) * b2 + 60 * s**2 + 64 * s - 144,
        48 * s**4 + 216 * s**3 + 352 * s**2 + 288 * s + 192,
    ]


def reference_lower_polynomial(s: float, eps2: float) -> List[float]:
    """Reference sextic in t = sqrt(n) for the a > 1 - eps2 threshold.

    Matches the V1 lower-bound numerator at a = 1 - eps2 except for the
    leading coefficient (eps2^2 + 2 eps2 here, 3 eps2 (2 - eps2) there).
    """
    b = 1.0 - eps2
    return [
        eps2**2 + 2 * eps2,
        -2 * b**3,
        18 * b**2 - 18 * s - 39,
        -4 * b**3 * s - 6 * b,
        (12 * s**2 + 36 * s) * b**2 + 36 * s**2 + 144 * s + 158,
        -12 * b * s,
        -24 * s**3 - 132 * s**2 - 260 * s - 192,
    ]


# --- polynomial real roots -----------------------------------------------------


def _horner(coeffs, x):
    acc = 0.0
    for c in coeffs:
        acc = acc * x + c
    return acc


def real_roots(coeffs: Sequence[float], interval: Tuple[float, float], grid: int = REAL_ROOT_GRID) -> List[float]:
    """Real roots of a polynomial (coefficients highest degree first) inside ``interval``.

    Sign changes are detected on ``grid`` equal subintervals and refined by
    bisection.  Roots closer together than one grid cell can merge into a
    single reported root, and roots of even multiplicity that do not change
    sign are missed unless they land on a grid point.
    """
    coeffs = [float(c) for c in coeffs]
    if not coeffs:
        raise DomainError("empty coefficient list")
    if coeffs[0] == 0.0:
        raise DomainError("leading coefficient must be nonzero")
    lo, hi = (float(v) for v in interval)
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise DomainError(f"interval must be finite with lo < hi, got {interval}")
    xs = np.linspace(lo, hi, grid + 1)
    vs = [_horner(coeffs, x) for x in xs]
    roots = []
    for i, (x, v) in enumerate(zip(xs, vs)):
        if v == 0.0:
            roots.append(float(x))
            continue
        if i == grid or vs[i + 1] == 0.0 or (v > 0.0) == (vs[i + 1] > 0.0):
            continue
        a, b, fa = float(x), float(xs[i + 1]), v
        while True:
            m = 0.5 * (a + b)
            if m <= a or m >= b:
                break
            fm = _horner(coeffs, m)
            if fm == 0.0:
                a = b = m
                break
            if (fm > 0.0) == (fa > 0.0):
                a, fa = m, fm
            else:
                b = m
        roots.append(0.5 * (a + b))
    return roots


# --- thresholds ------------------------------------------------------------------


def _bisect_sign(fn, lo, hi, width):
    f_lo = fn(lo)
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        f_mid = fn(mid)
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _largest_root(coeffs, lo, hi):
    roots = real_roots(coeffs, (lo, hi))
    return max(roots) if roots else None


def _threshold(s, eps, direction, spot_check):
    s = float(s)
    eps = float(eps)
    if not s > 0.0:
        raise DomainError(f"s must be > 0, got {s}")
    if direction is Direction.UPPER_A:
        a_star = 1.0 + eps
        pick = 1
        def fails(v):
            return v >= 0.0
    else:
        a_star = 1.0 - eps
        pick = 0
        def fails(v):
            return v <= 0.0

    def bound_value(n):
        return _v2_rational(n, s, a_star)[pick]

    dom = domain_term(s, a_star)
    floor_n = max(dom, 2.0 * s + 4.0)
    cap = 10.0 * (dom + 100.0)
    first = math.floor(floor_n) + 1
    last_fail = None
    for n in range(first, math.floor(cap) + 1):
        if fails(bound_value(n)):
            last_fail = n
    if last_fail is not None and last_fail >= math.floor(cap):
        raise CapExceededError(f"bound still fails at the scan cap {cap} (s={s}, eps={eps})")
    if last_fail is None:
        poly_term = floor_n
    else:
        poly_term = _bisect_sign(bound_value, float(last_fail), float(last_fail + 1), THRESHOLD_REFINE_WIDTH)

    if direction is Direction.UPPER_A:
        numerator_root = _largest_root(v2_upper_numerator(s, a_star), floor_n, cap)
        reference_root = _largest_root(reference_upper_polynomial(s, eps), floor_n, cap)
    else:
        numerator_root = _largest_root(v2_lower_numerator(s, a_star), floor_n, cap)
        t_root = _largest_root(reference_lower_polynomial(s, eps), math.sqrt(floor_n), math.sqrt(cap))
        reference_root = None if t_root is None else t_root * t_root

    nbar = max(dom, poly_term)
    checks = []
    if spot_check:
        base = math.floor(nbar) + 1
        for n in (base, base + 9, base + 99):
            a_ns = solve_a(ProblemParams(n, s))
            ok = a_ns < a_star if direction is Direction.UPPER_A else a_ns > a_star
            checks.append((n, a_ns, ok))
    return ThresholdReport(
        s=s,
        eps=eps,
        a_star=a_star,
        direction=direction,
        domain_term=dom,
        poly_term=poly_term,
        nbar=nbar,
        numerator_root=numerator_root,
        reference_root=reference_root,
        spot_checks=tuple(checks),
    )


def threshold_upper(s: float, eps1: float, spot_check: bool = True) -> ThresholdReport:
    """Dimension beyond which a_ns < 1 + eps1.

    ``poly_term`` is the last point where the V2 upper bound at a = 1 + eps1
    is still non-negative, found by an integer scan from the domain term to
    10 (domain_term + 100) and refined by bisection.  For integer n > nbar
    the bound is negative, so f(1 + eps1) < 0 and the root lies below.
    """
    if not eps1 > 0.0:
        raise DomainError(f"eps1 must be > 0, got {eps1}")
    return _threshold(s, eps1, Direction.UPPER_A, spot_check)


def threshold_lower(s: float, eps2: float, spot_check: bool = True) -> ThresholdReport:
    """Dimension beyond which a_ns > 1 - eps2, from the V2 lower bound at a = 1 - eps2."""
    if not 0.0 < eps2 < 1.0:
        raise DomainError(f"eps2 must lie in (0, 1), got {eps2}")
    return _threshold(s, eps2, Direction.LOWER_A, spot_check)
