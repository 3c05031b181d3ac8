"""End-to-end cross-validation of the Somos-4 Hankel determinant result.

run_somos_verification builds the series Q from the fundamental equation
y - y**2 = z - z**3, then reaches the determinant sequence s_n by three
independent routes:

* direct exact determinants of the Hankel matrices of Q (Bareiss),
* the product formula a_0**n * a_1**(n-1) * ... * a_{n-1} over iterated
  transformation states,
* the Somos-4 recurrence itself from the window (1, 1, 2, 3),

and additionally runs every identity suite (determinant-step identity on
random states, the conserved two-term relation with its proof intermediates,
closed-form consistency, determinant-algorithm agreement, the Catalan
all-ones fixture, and integrality of the s_n).  The outcome is a structured
:class:`VerifyReport`; a report passes only if the three routes agree
elementwise and every suite is clean.

All randomness flows from the explicit seed, so two runs with the same seed
produce identical reports apart from the timing fields.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .hankel import (
    BAREISS,
    CONDENSATION,
    det_bareiss,
    det_cofactor,
    det_condensation,
    det_sequence,
)
from .series import TruncatedSeries, catalan_series, format_rational, q_from_y, solve_fundamental
from .somos import an2_sequence, check_rec_a, somos_sequence, t_value, theorem2_rhs
from .transform import SOMOS_Q_STATE, CoeffState, iterate_states, lemma1_residual, det_product

CAPPED = "capped"

# How many leading coefficients of the source series a report carries.
_COEFF_PREFIX = 8


@dataclass(frozen=True)
class SuiteResult:
    name: str
    trials: int
    passes: int
    first_failure: str | None = None

    @property
    def passed(self) -> bool:
        return self.first_failure is None and self.passes == self.trials


@dataclass
class VerifyReport:
    n_max: int
    det_cap: int
    seed: int | None
    source_coefficients: list[Fraction]
    route_determinant: list[Fraction | None]  # None marks a capped entry
    route_product: list[Fraction]
    route_recurrence: list[Fraction]
    suites: list[SuiteResult]
    overall: bool
    timing_ms: dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        """JSON-ready form; rationals rendered as "p/q" strings."""
        return {
            "n_max": self.n_max,
            "det_cap": self.det_cap,
            "seed": self.seed,
            "source_coefficients": [format_rational(c) for c in self.source_coefficients],
            "route_determinant": [
                CAPPED if v is None else format_rational(v) for v in self.route_determinant
            ],
            "route_product": [format_rational(v) for v in self.route_product],
            "route_recurrence": [format_rational(v) for v in self.route_recurrence],
            "suites": [
                {
                    "name": s.name,
                    "trials": s.trials,
                    "passes": s.passes,
                    "first_failure": s.first_failure,
                }
                for s in self.suites
            ],
            "overall": "pass" if self.overall else "fail",
            "timing_ms": dict(self.timing_ms),
        }


class _Timer:
    def __init__(self):
        self.phases: dict[str, float] = {}
        self._t0 = time.perf_counter()

    def mark(self, name: str):
        t = time.perf_counter()
        self.phases[name] = round((t - self._t0) * 1000.0, 3)
        self._t0 = t


def _route_agreement_suite(
    det_route: list[Fraction | None],
    product_route: list[Fraction],
    recurrence_route: list[Fraction],
) -> SuiteResult:
    trials = len(recurrence_route)
    passes = 0
    first_failure = None
    for n in range(trials):
        values = {
            "determinant": det_route[n],
            "product": product_route[n],
            "recurrence": recurrence_route[n],
        }
        live = {k: v for k, v in values.items() if v is not None}
        if len(set(live.values())) == 1:
            passes += 1
        elif first_failure is None:
            detail = ", ".join(f"{k}={format_rational(v)}" for k, v in live.items())
            first_failure = f"routes disagree at index {n}: {detail}"
    return SuiteResult("route_agreement", trials, passes, first_failure)


def _lemma1_suite(rng: random.Random, trials: int, order: int) -> SuiteResult:
    passes = 0
    first_failure = None
    for t in range(trials):
        a = 0
        while a == 0:
            a = rng.randint(-5, 5)
        entries = [rng.randint(-5, 5) for _ in range(5)]
        state = CoeffState(0, a, *entries)
        check = lemma1_residual(state, order)
        if check.passed:
            passes += 1
        elif first_failure is None:
            first_failure = (
                f"trial {t}: det identity fails at n={check.first_failure} "
                f"for state {tuple(state)}"
            )
    return SuiteResult("lemma1_identity", trials, passes, first_failure)


def _random_admissible_states(
    rng: random.Random, depth: int, max_retries: int = 50
) -> list[CoeffState] | None:
    """A trajectory of depth+1 states with e_0 = -1 and no vanishing a_k.

    Numerators/denominators of the seed entries are bounded by 5; trajectories
    hitting a_k = 0 are rejected and redrawn, up to the retry cap.
    """
    def draw() -> Fraction:
        return Fraction(rng.randint(-5, 5), rng.randint(1, 5))

    for _ in range(max_retries):
        a0 = draw()
        if a0 == 0:
            continue
        seed_state = CoeffState(0, a0, draw(), draw(), draw(), Fraction(-1), draw())
        try:
            states = iterate_states(seed_state, depth)
        except ValueError:
            continue
        if states[-1].a == 0:
            continue
        return states
    return None


def _theorem2_suite(rng: random.Random, trials: int, depth: int) -> SuiteResult:
    passes = 0
    first_failure = None
    for t in range(trials):
        states = _random_admissible_states(rng, depth + 2)
        if states is None:
            if first_failure is None:
                first_failure = f"trial {t}: no admissible instance within retry cap"
            continue
        a = [s.a for s in states]
        f = [states[0].f] + [-s.b / s.a for s in states]
        c = states[0].c
        conserved = a[0] * (f[0] + f[1] + c)
        ok = True
        for n in range(depth + 1):
            lhs = a[n + 2] * a[n + 1] + a[n + 1] * a[n]
            if lhs != theorem2_rhs(a[0], a[1], f[0], f[1], c, a[n + 1]):
                ok, label = False, "two-term relation"
                break
            if states[n].d != a[n] - a[n + 1] - c * f[n + 1] - f[n + 1] ** 2:
                ok, label = False, "d-elimination identity"
                break
            if a[n + 1] * (f[n + 2] + f[n + 1] + c) != conserved:
                ok, label = False, "f-sum conservation"
                break
            if a[0] * a[1] - a[n + 1] * a[n + 2] != conserved * (f[n + 2] - f[1]):
                ok, label = False, "product-difference identity"
                break
            if states[n].b != -a[n] * f[n + 1]:
                ok, label = False, "b = -a*f' link"
                break
        if ok:
            passes += 1
        elif first_failure is None:
            first_failure = f"trial {t}: {label} fails at n={n}"
    return SuiteResult("theorem2_invariant", trials, passes, first_failure)


def _closed_form_suite(states_depth: int = 30, t_depth: int = 50) -> SuiteResult:
    trials = 0
    passes = 0
    first_failure = None

    states = iterate_states(SOMOS_Q_STATE, states_depth)
    closed = an2_sequence(max(states_depth, t_depth - 1))
    for n in range(states_depth + 1):
        trials += 1
        if states[n].a == closed[n]:
            passes += 1
        elif first_failure is None:
            first_failure = f"closed-form a_{n} != iterated a_{n}"
    for n in range(2, t_depth + 1):
        trials += 1
        if t_value(closed[n - 2], closed[n - 1]) == 0:
            passes += 1
        elif first_failure is None:
            first_failure = f"T({n}) != 0"
    for n in range(2, t_depth):
        trials += 1
        if check_rec_a(closed, n):
            passes += 1
        elif first_failure is None:
            first_failure = f"three-term recursion fails at n={n}"
    return SuiteResult("closed_form_consistency", trials, passes, first_failure)


def _det_oracle_suite(rng: random.Random, trials: int, max_dim: int = 5) -> SuiteResult:
    passes = 0
    first_failure = None
    for t in range(trials):
        n = rng.randint(1, max_dim)
        m = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        reference = det_cofactor(m)
        if det_bareiss(m) == reference and det_condensation(m).det == reference:
            passes += 1
        elif first_failure is None:
            first_failure = f"trial {t}: algorithms disagree on a {n}x{n} matrix"
    return SuiteResult("determinant_oracles", trials, passes, first_failure)


def _catalan_suite(n_max: int) -> SuiteResult:
    series = catalan_series(max(2 * n_max - 2, 0))
    trials = 0
    passes = 0
    first_failure = None
    for res in det_sequence(series, n_max):
        trials += 1
        if res.det == 1:
            passes += 1
        elif first_failure is None:
            first_failure = f"det H_{res.n}(catalan) = {format_rational(res.det)} != 1"
    return SuiteResult("catalan_hankel", trials, passes, first_failure)


def _integrality_suite(n_max: int) -> SuiteResult:
    terms = somos_sequence(n_max)
    trials = len(terms)
    passes = sum(1 for v in terms if v.denominator == 1)
    first_failure = None
    if passes != trials:
        n = next(i for i, v in enumerate(terms) if v.denominator != 1)
        first_failure = f"s_{n} = {format_rational(terms[n])} is not an integer"
    return SuiteResult("somos_integrality", trials, passes, first_failure)


def _guarded(builder, name: str) -> SuiteResult:
    try:
        return builder()
    except Exception as exc:  # capture, never abort the report
        return SuiteResult(name, 0, 0, f"internal error: {exc!r}")


def run_somos_verification(
    n_max: int,
    seed: int,
    det_cap: int = 20,
    corrupt_index: int | None = None,
    lemma1_trials: int = 25,
    lemma1_order: int = 8,
    theorem2_trials: int = 50,
    theorem2_depth: int = 10,
    oracle_trials: int = 60,
    catalan_n: int = 12,
) -> VerifyReport:
    """Cross-check s_0..s_{n_max} by three routes and run every identity suite.

    The direct-determinant route is capped at det_cap (bit growth makes huge
    n slow); product and recurrence routes always run to n_max and capped
    entries are marked in the report.  corrupt_index is a fault-injection
    hook: it bumps that coefficient of Q by 1 so the failure path is testable.
    """
    if n_max < 3:
        raise ValueError("n_max must be at least 3")
    timer = _Timer()

    cap = min(n_max, det_cap)
    q_order = 2 * cap - 2 + 2
    q = q_from_y(solve_fundamental(q_order + 2))
    if corrupt_index is not None:
        bumped = list(q.coeffs)
        bumped[corrupt_index] += 1
        q = TruncatedSeries(bumped)
    timer.mark("series")

    det_route: list[Fraction | None] = [
        r.det for r in det_sequence(q, cap, method=BAREISS)
    ]
    det_route += [None] * (n_max - cap)
    timer.mark("route_determinant")

    states = iterate_states(SOMOS_Q_STATE, max(n_max - 1, 0))
    product_route = [det_product(states, n) for n in range(n_max + 1)]
    timer.mark("route_product")

    recurrence_route = somos_sequence(n_max)
    timer.mark("route_recurrence")

    rng = random.Random(seed)
    suites = [
        _route_agreement_suite(det_route, product_route, recurrence_route),
        _guarded(lambda: _lemma1_suite(rng, lemma1_trials, lemma1_order), "lemma1_identity"),
        _guarded(lambda: _theorem2_suite(rng, theorem2_trials, theorem2_depth), "theorem2_invariant"),
        _guarded(_closed_form_suite, "closed_form_consistency"),
        _guarded(lambda: _det_oracle_suite(rng, oracle_trials), "determinant_oracles"),
        _guarded(lambda: _catalan_suite(catalan_n), "catalan_hankel"),
        _guarded(lambda: _integrality_suite(max(30, n_max)), "somos_integrality"),
    ]
    timer.mark("suites")

    overall = all(s.passed for s in suites)
    return VerifyReport(
        n_max=n_max,
        det_cap=cap,
        seed=seed,
        source_coefficients=list(q.coeffs[:_COEFF_PREFIX]),
        route_determinant=det_route,
        route_product=product_route,
        route_recurrence=recurrence_route,
        suites=suites,
        overall=overall,
        timing_ms=timer.phases,
    )


def run_catalan_fixture(n_max: int) -> VerifyReport:
    """Check det H_n(C) = 1 for the Catalan series C = 1 + x*C^2, n <= n_max.

    The three report routes are: Bareiss determinants, condensation
    determinants (independent algorithm), and the constant expected value 1.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    timer = _Timer()
    series = catalan_series(max(2 * n_max - 2, 0))
    timer.mark("series")

    bareiss_route: list[Fraction | None] = [
        r.det for r in det_sequence(series, n_max, method=BAREISS)
    ]
    timer.mark("route_determinant")
    condensation_route = [r.det for r in det_sequence(series, n_max, method=CONDENSATION)]
    timer.mark("route_product")
    expected_route = [Fraction(1)] * (n_max + 1)
    timer.mark("route_recurrence")

    known_prefix = (1, 1, 2, 5, 14, 42)
    shown = series.coeffs[: len(known_prefix)]
    coeff_suite = SuiteResult(
        "catalan_coefficients",
        trials=len(shown),
        passes=sum(1 for got, want in zip(shown, known_prefix) if got == want),
        first_failure=None
        if all(got == want for got, want in zip(shown, known_prefix))
        else f"series prefix {[format_rational(c) for c in shown]} is not Catalan",
    )
    suites = [
        _route_agreement_suite(bareiss_route, condensation_route, expected_route),
        coeff_suite,
    ]
    timer.mark("suites")

    return VerifyReport(
        n_max=n_max,
        det_cap=n_max,
        seed=None,
        source_coefficients=list(series.coeffs[:_COEFF_PREFIX]),
        route_determinant=bareiss_route,
        route_product=condensation_route,
        route_recurrence=expected_route,
        suites=suites,
        overall=all(s.passed for s in suites),
        timing_ms=timer.phases,
    )


# ---------------------------------------------------------------------------
# report serialization (consumed by the CLI)

def render_json(report: VerifyReport) -> str:
    import json

    return json.dumps(report.to_dict(), indent=2)


def render_csv(report: VerifyReport) -> str:
    """Three diffable sections: per-index routes, suites, summary fields.

    Timing is deliberately left out so that equal-seed runs are byte-identical.
    """
    import csv
    import io

    d = report.to_dict()
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "determinant", "product", "recurrence"])
    for n in range(report.n_max + 1):
        w.writerow(
            [n, d["route_determinant"][n], d["route_product"][n], d["route_recurrence"][n]]
        )
    w.writerow([])
    w.writerow(["suite", "trials", "passes", "first_failure"])
    for s in d["suites"]:
        w.writerow([s["name"], s["trials"], s["passes"], s["first_failure"] or ""])
    w.writerow([])
    w.writerow(["field", "value"])
    w.writerow(["n_max", d["n_max"]])
    w.writerow(["det_cap", d["det_cap"]])
    w.writerow(["seed", "" if d["seed"] is None else d["seed"]])
    w.writerow(["source_coefficients", ",".join(d["source_coefficients"])])
    w.writerow(["overall", d["overall"]])
    return buf.getvalue().rstrip("\n")


def render_plain(report: VerifyReport) -> str:
    d = report.to_dict()
    lines = [
        f"verification report  n_max={d['n_max']}  det_cap={d['det_cap']}"
        + (f"  seed={d['seed']}" if d["seed"] is not None else ""),
        "source coefficients: " + ", ".join(d["source_coefficients"]),
        "",
        f"{'n':>4}  {'determinant':>16}  {'product':>16}  {'recurrence':>16}",
    ]
    for n in range(report.n_max + 1):
        lines.append(
            f"{n:>4}  {d['route_determinant'][n]:>16}  "
            f"{d['route_product'][n]:>16}  {d['route_recurrence'][n]:>16}"
        )
    lines.append("")
    lines.append("suites:")
    for s in report.suites:
        status = "pass" if s.passed else "FAIL"
        line = f"  [{status}] {s.name:<26} trials={s.trials} passes={s.passes}"
        if s.first_failure:
            line += f"  ({s.first_failure})"
        lines.append(line)
    lines.append("")
    lines.append(f"overall: {'PASS' if report.overall else 'FAIL'}")
    lines.append(
        "timing_ms: " + "  ".join(f"{k}={v}" for k, v in report.timing_ms.items())
    )
    return "\n".join(lines)
