"""Location claims for a_ns, critical-dimension estimates, and (n, s) sweep datasets."""

import csv
import io
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .bounds import Direction, threshold_lower, threshold_upper
from .errors import DomainError
from .exponents import ProblemParams, critical_dimension, exponent_report, solve_a
from .formatting import fmt_float

log = logging.getLogger(__name__)

VERIFY_HORIZON = 200

S_INTERVALS = ((0.0, 1.0), (1.0, 2.0), (2.0, 3.0), (3.0, 4.0), (4.0, 5.0))

# column headers of the location table: (direction, a*), eps = |a* - 1|
TABLE1_COLUMNS = (
    (Direction.UPPER_A, 1.5),
    (Direction.LOWER_A, 0.6),
    (Direction.UPPER_A, 1.2),
    (Direction.LOWER_A, 0.8),
    (Direction.UPPER_A, 1.1),
    (Direction.LOWER_A, 0.9),
)

# first dimension n* of each claim, one row per s interval
TABLE1_THRESHOLDS = (
    (28, 20, 46, 37, 79, 71),
    (36, 26, 63, 51, 110, 100),
    (44, 33, 79, 65, 141, 128),
    (52, 39, 96, 79, 172, 157),
    (59, 46, 112, 93, 204, 186),
)

# (n1 upper bound, middle column, n0 upper bound) with eps1 = 1
TABLE2_VALUES = (
    (22, 24, 24),
    (28, 27, 27),
    (33, 30, 33),
    (39, 33, 39),
    (44, 36, 44),
)


@dataclass
class Claim:
    direction: Direction
    a_star: float
    n_star: int
    verified: bool = False
    failures: List[Tuple[int, float, float]] = field(default_factory=list)
    bound_nbar: Optional[float] = None
    bound_implied: Optional[bool] = None

    @property
    def label(self) -> str:
        op = "<" if self.direction is Direction.UPPER_A else ">"
        return f"A{op}{self.a_star:g} at n>={self.n_star}"


@dataclass
class TableRow:
    s_interval: Tuple[float, float]
    s_samples: Tuple[float, ...]
    claims: List[Claim]

    @property
    def verified(self) -> List[bool]:
        return [c.verified for c in self.claims]


@dataclass
class Table2Row:
    s_interval: Tuple[float, float]
    s: float
    n1_table: int
    n1_computed: float
    middle_table: int
    middle_computed: float
    n0_table: int
    n0_computed: int
    n0_estimate: float

    @property
    def n1_ok(self) -> bool:
        return self.n1_computed < self.n1_table

    @property
    def n0_ok(self) -> bool:
        return self.n0_computed <= self.n0_table


@dataclass(frozen=True)
class SweepRecord:
    n: float
    s: float
    a_ns: float
    k1: float
    k2: float
    p1: float
    p2: Optional[float]
    p_sobolev: float
    hardy: float


def interval_samples(interval: Tuple[float, float]) -> Tuple[float, float, float]:
    left, right = interval
    return (left + 0.01, 0.5 * (left + right), right)


def _holds(direction, a_ns, a_star):
    return a_ns < a_star if direction is Direction.UPPER_A else a_ns > a_star


def table1_check(horizon: int = VERIFY_HORIZON, bound_route: bool = True) -> List[TableRow]:
    """Verify every location claim by direct root computation.

    Each claim "a_ns < a* (or > a*) for n >= n*" is checked at three s values
    of its row's interval and every integer n in [n*, n* + horizon].  The
    threshold route at the interval's right end is recorded alongside but
    does not affect ``verified``.
    """
    rows = []
    for interval, thresholds in zip(S_INTERVALS, TABLE1_THRESHOLDS):
        samples = interval_samples(interval)
        cache: Dict[Tuple[int, float], float] = {}
        claims = []
        for (direction, a_star), n_star in zip(TABLE1_COLUMNS, thresholds):
            claim = Claim(direction, a_star, n_star)
            for s in samples:
                for n in range(n_star, n_star + horizon + 1):
                    key = (n, s)
                    if key not in cache:
                        cache[key] = solve_a(ProblemParams(n, s))
                    if not _holds(direction, cache[key], a_star):
                        claim.failures.append((n, s, cache[key]))
            claim.verified = not claim.failures
            if bound_route:
                eps = abs(a_star - 1.0)
                right = interval[1]
                if direction is Direction.UPPER_A:
                    report = threshold_upper(right, eps, spot_check=False)
                else:
                    report = threshold_lower(right, eps, spot_check=False)
                claim.bound_nbar = report.nbar
                claim.bound_implied = report.nbar < n_star
            claims.append(claim)
        rows.append(TableRow(interval, samples, claims))
    return rows


def table2_compute() -> List[Table2Row]:
    """Critical-dimension estimates with eps1 = 1 at each interval's right end."""
    rows = []
    for interval, (n1_tab, mid_tab, n0_tab) in zip(S_INTERVALS, TABLE2_VALUES):
        s = interval[1]
        report = threshold_upper(s, 1.0, spot_check=False)
        # second term of the n0 estimate: (1 + eps1 + sqrt((1 + eps1)^2 + 2s + 2))^2
        middle = (2.0 + math.sqrt(4.0 + 2.0 * s + 2.0)) ** 2
        rows.append(
            Table2Row(
                s_interval=interval,
                s=s,
                n1_table=n1_tab,
                n1_computed=report.poly_term,
                middle_table=mid_tab,
                middle_computed=middle,
                n0_table=n0_tab,
                n0_computed=critical_dimension(s),
                n0_estimate=max(report.poly_term, middle),
            )
        )
    return rows


def sweep(s: float, n_min: float, n_max: float, step: float) -> List[SweepRecord]:
    """Exponent data on the grid n_min, n_min + step, ... <= n_max at fixed s.

    Grid points with n <= 2s are skipped and logged.
    """
    if not step > 0.0:
        raise DomainError(f"step must be > 0, got {step}")
    if not n_min <= n_max:
        raise DomainError(f"empty range: n_min={n_min} > n_max={n_max}")
    count = int(math.floor((n_max - n_min) / step + 1e-9)) + 1
    records = []
    for i in range(count):
        n = n_min + i * step
        if n <= 2.0 * s * (1.0 + 1e-12):
            log.warning("skipping n=%s: need n > 2s = %s", n, 2.0 * s)
            continue
        rep = exponent_report(ProblemParams(n, s))
        records.append(
            SweepRecord(rep.n, rep.s, rep.a_ns, rep.k1, rep.k2, rep.p1, rep.p2, rep.p_sobolev, rep.hardy)
        )
    return records


SWEEP_HEADER = ("n", "s", "a", "k1", "k2", "p1", "p2", "p_sobolev", "hardy")


def sweep_csv(records: List[SweepRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    for r in records:
        writer.writerow(
            [
                fmt_float(r.n),
                fmt_float(r.s),
                fmt_float(r.a_ns),
                fmt_float(r.k1),
                fmt_float(r.k2),
                fmt_float(r.p1),
                "" if r.p2 is None else fmt_float(r.p2),
                fmt_float(r.p_sobolev),
                fmt_float(r.hardy),
            ]
        )
    return buf.getvalue()
