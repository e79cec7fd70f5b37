import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jlexponents import bounds as bd
from jlexponents import exponents as ex
from jlexponents.bounds import BoundOrder, Direction
from jlexponents.errors import DomainError
from jlexponents.exponents import ProblemParams


def P(n, s):
    return ProblemParams(n, s)


def rational_v1(n, s, a):
    # independent transcription of the compact V1 forms
    xp, xm = n / 4 + s / 2, n / 4 - s / 2 - 1
    q = 0.25 + 0.25 * a * a * n
    up = s * (1 / xm - q / xp**2 + (0.5 * a * math.sqrt(n) + 0.5) ** 3 / 3 / xm**3)
    low = s * (1 / xp - q / xm**2 - (0.5 * a * math.sqrt(n) - 0.5) ** 3 / 3 / xm**3)
    return low, up


class TestExamples:
    def test_v1_upper_negative(self):
        assert bd.bound_v1(P(50, 1), 1.5).upper < 0

    def test_v1_lower_positive(self):
        assert bd.bound_v1(P(200, 1), 0.5).lower > 0

    def test_v1_encloses(self):
        b = bd.bound_v1(P(50, 1), 0.99)
        assert b.lower <= b.f_value <= b.upper and b.encloses
        assert b.order is BoundOrder.V1

    def test_v2_upper_negative(self):
        assert bd.bound_v2(P(44, 2.5), 1.5).upper < 0

    def test_v2_lower_positive(self):
        assert bd.bound_v2(P(44, 2.5), 0.7).lower > 0

    def test_v2_encloses(self):
        b = bd.bound_v2(P(100, 1), 1.0)
        assert b.lower <= b.f_value <= b.upper and b.encloses

    def test_f_value_is_f(self):
        assert bd.bound_v2(P(77, 3.1), 0.8).f_value == ex.f_eval(P(77, 3.1), 0.8)


class TestPreconditions:
    @pytest.mark.parametrize(
        "n,s,a",
        [
            (6, 1, 0.5),  # n <= 2s + 4
            (50, 1, -0.1),  # negative a
            (50, 1, 3.6),  # beyond a_max
            (12, 1, 2.5),  # n below the domain term
        ],
    )
    def test_rejected(self, n, s, a):
        for fn in (bd.bound_v1, bd.bound_v2):
            with pytest.raises(DomainError):
                fn(P(n, s), a)

    def test_domain_term(self):
        assert bd.domain_term(1, 2) == pytest.approx(16.0)
        assert bd.domain_term(1, 0.6) == pytest.approx(1.44)
        assert bd.domain_term(2.5, 1.5) == pytest.approx((1.5 + math.sqrt(5.25)) ** 2)


class TestForms:
    @pytest.mark.parametrize("n,s,a", [(50, 1, 1.5), (200, 1, 0.5), (44, 2.5, 0.7), (30, 0.3, 0.2), (500, 6, 1.2)])
    def test_v1_matches_transcription(self, n, s, a):
        low, up = rational_v1(n, s, a)
        b = bd.bound_v1(P(n, s), a)
        assert b.lower == pytest.approx(low, rel=1e-13)
        assert b.upper == pytest.approx(up, rel=1e-13)

    @pytest.mark.parametrize("order", ["V1", "V2"])
    @pytest.mark.parametrize("n,s,a", [(50, 1, 1.5), (200, 1, 0.5), (44, 2.5, 0.7), (100, 1, 1.0), (30, 0.3, 0.2)])
    def test_expanded_agrees_with_rational(self, n, s, a, order):
        b = bd.bound_v1(P(n, s), a) if order == "V1" else bd.bound_v2(P(n, s), a)
        low, up = bd.expanded_bounds(P(n, s), a, order)
        assert low == pytest.approx(b.lower, rel=1e-9, abs=1e-14)
        assert up == pytest.approx(b.upper, rel=1e-9, abs=1e-14)

    def test_reference_quartic_differs_only_in_lead(self):
        s, eps = 1.7, 0.4
        ref = bd.reference_upper_polynomial(s, eps)
        derived = bd.v2_upper_numerator(s, 1 + eps)
        assert ref[1:] == pytest.approx(derived[1:])
        assert derived[0] == pytest.approx(3 * ref[0])


class TestRealRoots:
    def test_quadratic(self):
        assert bd.real_roots([1, 0, -1], (-2, 2)) == pytest.approx([-1, 1], abs=1e-9)

    def test_triple_root_merges(self):
        roots = bd.real_roots([1, 0, 0, 0], (-1, 1))
        assert len(roots) == 1 and abs(roots[0]) <= 1e-9

    def test_no_roots(self):
        assert bd.real_roots([1, 0, 1], (-5, 5)) == []

    def test_cubic(self):
        roots = bd.real_roots([1, -6, 11, -6], (0, 10))
        assert roots == pytest.approx([1, 2, 3], abs=1e-9)

    @pytest.mark.parametrize(
        "coeffs,interval", [([], (0, 1)), ([0, 1], (0, 1)), ([1, 0], (1, 0)), ([1, 0], (0, math.inf))]
    )
    def test_bad_input(self, coeffs, interval):
        with pytest.raises(DomainError):
            bd.real_roots(coeffs, interval)

    @settings(max_examples=100)
    @given(st.lists(st.floats(min_value=-9, max_value=9), min_size=1, max_size=4, unique=True))
    def test_recovers_separated_roots(self, roots):
        roots = sorted(roots)
        if any(b - a < 0.05 for a, b in zip(roots, roots[1:])):
            return
        coeffs = [1.0]
        for r in roots:
            coeffs = [c - r * d for c, d in zip(coeffs + [0.0], [0.0] + coeffs)]
        assert bd.real_roots(coeffs, (-10, 10)) == pytest.approx(roots, abs=1e-9)


class TestThresholds:
    def test_upper_s1_eps1(self):
        rep = bd.threshold_upper(1, 1)
        assert rep.poly_term < 22
        assert rep.direction is Direction.UPPER_A
        assert rep.nbar == max(rep.domain_term, rep.poly_term)
        assert rep.domain_term == pytest.approx(16.0)

    @pytest.mark.parametrize("s,eps,limit", [(1, 0.5, 28), (2.5, 0.5, 44)])
    def test_upper_against_table(self, s, eps, limit):
        assert bd.threshold_upper(s, eps).nbar <= limit

    @pytest.mark.parametrize("s,eps,limit", [(1, 0.4, 20), (2.5, 0.3, 65), (1, 0.1, 71)])
    def test_lower_against_table(self, s, eps, limit):
        rep = bd.threshold_lower(s, eps)
        assert rep.nbar <= limit
        assert rep.direction is Direction.LOWER_A

    def test_sign_change_located(self):
        rep = bd.threshold_upper(2.5, 0.5)
        a = rep.a_star
        before = bd.bound_v2(P(rep.poly_term - 1e-3, 2.5), a).upper
        after = bd.bound_v2(P(rep.poly_term + 1e-3, 2.5), a).upper
        assert before > 0 > after

    @pytest.mark.parametrize(
        "fn,s,eps", [(bd.threshold_upper, 1, 0.5), (bd.threshold_upper, 3.3, 0.2), (bd.threshold_lower, 1, 0.4), (bd.threshold_lower, 4.2, 0.1)]
    )
    def test_numerator_root_agrees(self, fn, s, eps):
        rep = fn(s, eps, spot_check=False)
        assert rep.numerator_root == pytest.approx(rep.poly_term, abs=1e-5)
        # the reference polynomial is logged, never asserted against
        assert rep.reference_root is None or rep.reference_root > 0

    @pytest.mark.parametrize(
        "fn,s,eps", [(bd.threshold_upper, 0.5, 1.0), (bd.threshold_upper, 4.5, 0.1), (bd.threshold_lower, 0.7, 0.4), (bd.threshold_lower, 3.9, 0.1)]
    )
    def test_soundness(self, fn, s, eps):
        rep = fn(s, eps)
        assert all(ok for _, _, ok in rep.spot_checks) and len(rep.spot_checks) == 3
        base = math.floor(rep.nbar) + 1
        for n in range(base, base + 10):
            a = ex.solve_a(P(n, s))
            assert a < rep.a_star if rep.direction is Direction.UPPER_A else a > rep.a_star

    def test_non_increasing_in_eps(self):
        for s in (0.5, 2.0, 4.5):
            ups = [bd.threshold_upper(s, e, spot_check=False) for e in (0.1, 0.2, 0.5, 1.0, 2.0)]
            lows = [bd.threshold_lower(s, e, spot_check=False) for e in (0.1, 0.2, 0.4, 0.6, 0.9)]
            for reports in (ups, lows):
                # without a sign change above the domain term, poly_term is that floor
                tail = [r for r in reports if r.poly_term > r.domain_term]
                assert len(tail) >= 4
                assert all(x.nbar >= y.nbar for x, y in zip(tail, tail[1:]))

    def test_domain_term_can_make_nbar_grow(self):
        # the domain term grows with eps and takes over for large eps1
        small = bd.threshold_upper(0.5, 1.0, spot_check=False)
        large = bd.threshold_upper(0.5, 2.0, spot_check=False)
        assert large.nbar == large.domain_term > small.nbar

    @pytest.mark.parametrize("call", [lambda: bd.threshold_upper(1, 0), lambda: bd.threshold_upper(0, 1), lambda: bd.threshold_lower(1, 1.0), lambda: bd.threshold_lower(1, 0.0)])
    def test_rejects(self, call):
        with pytest.raises(DomainError):
            call()


def _draws(count, seed, accept):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        s = rng.uniform(0.05, 8.0)
        n = rng.uniform(2 * s + 4, 2 * s + 300)
        a = rng.uniform(0.0, ex.a_domain(P(n, s)).a_max)
        if n > bd.domain_term(s, a) and accept(n, s, a):
            out.append((n, s, a))
    return out


class TestSandwichWhereItHolds:
    def test_upper_bounds_everywhere(self):
        for n, s, a in _draws(1000, 11, lambda n, s, a: True):
            f = ex.f_eval(P(n, s), a)
            assert f <= bd.bound_v1(P(n, s), a).upper
            assert f <= bd.bound_v2(P(n, s), a).upper

    def test_v2_lower_for_moderate_a(self):
        for n, s, a in _draws(1000, 12, lambda n, s, a: a <= 1.5):
            assert bd.bound_v2(P(n, s), a).lower <= ex.f_eval(P(n, s), a)

    def test_v1_lower_when_cube_term_is_positive(self):
        for n, s, a in _draws(1000, 13, lambda n, s, a: 1 <= a * math.sqrt(n) and a <= 1.5):
            assert bd.bound_v1(P(n, s), a).lower <= ex.f_eval(P(n, s), a)

    def test_lower_bounds_fail_near_the_edge(self):
        # f tends to -inf at a_max while the lower bounds stay finite
        p = P(60, 2)
        a = ex.a_domain(p).a_max * (1 - 1e-9)
        assert not bd.bound_v1(p, a).encloses
        assert not bd.bound_v2(p, a).encloses
