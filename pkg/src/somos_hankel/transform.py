"""The quadratic transformation on series in linear-fractional form.

A six-tuple state (a, b, c, d, e, f) pins down a unique power series

    F = (a + b*x) / (1 + c*x + d*x**2 + x**2*(e + f*x)*F),

and one transformation step produces the state of a series G with

    det H_n(F) = a**n * det H_{n-1}(G)   for every n,

trading an n x n Hankel determinant for an (n-1) x (n-1) one at the price of
a power of a.  Iterating the step therefore collapses det H_n of the starting
series into the finite product a_0**n * a_1**(n-1) * ... * a_{n-1}
(:func:`det_product`).  The step keeps c fixed and forces e = -1 from the
first image onward; it is undefined whenever the current a vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .hankel import build_hankel, det_bareiss
from .series import as_fraction, solve_lemma_form


@dataclass(frozen=True)
class CoeffState:
    """State n of the iteration: the six coefficients defining Q_n."""

    idx: int
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    e: Fraction
    f: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c", "d", "e", "f"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))

    def __iter__(self) -> Iterator[Fraction]:
        # Unpacks in defining-equation order, so solve_lemma_form(state, N) works.
        yield from (self.a, self.b, self.c, self.d, self.e, self.f)


# Q(x) = (1 - x)/(1 - 2x - x^2 Q(x)), the series whose Hankel determinants
# are the Somos-4 numbers.
SOMOS_Q_STATE = CoeffState(idx=0, a=1, b=-1, c=-2, d=0, e=-1, f=0)


def coeff_step(s: CoeffState) -> CoeffState:
    """One transformation step: the state of G from the state of F.

    a' = -(a^3 e + a^2 d - a c b + b^2) / a^2
    b' = -(a^4 f + c a^3 d - c^2 a^2 b + 2 c a b^2 - b a^2 d - b^3) / a^3
    c' = c
    d' = -(-2 a c b + 2 b^2 + a^2 d) / a^2
    e' = -1
    f' = -b / a
    """
    a, b, c, d, e, f = s
    if a == 0:
        raise ValueError("transformation undefined (a = 0)")
    return CoeffState(
        idx=s.idx + 1,
        a=-(a**3 * e + a**2 * d - a * c * b + b**2) / a**2,
        b=-(a**4 * f + c * a**3 * d - c**2 * a**2 * b + 2 * c * a * b**2
            - b * a**2 * d - b**3) / a**3,
        c=c,
        d=-(-2 * a * c * b + 2 * b**2 + a**2 * d) / a**2,
        e=Fraction(-1),
        f=-b / a,
    )


def iterate_states(s0: CoeffState, steps: int) -> list[CoeffState]:
    """States 0..steps of the iteration, aborting if some a_n hits 0.

    The step from a state with a = 0 is undefined; the error names the index
    of the offending state.  A final state with a = 0 is returned as-is since
    nothing is stepped from it.
    """
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    states = [s0]
    for k in range(steps):
        if states[-1].a == 0:
            raise ValueError(f"transformation undefined (a = 0) at step {k}")
        states.append(coeff_step(states[-1]))
    return states


def det_product(states: Sequence[CoeffState], n: int) -> Fraction:
    """det H_n of the starting series as the product a_0^n a_1^(n-1) ... a_{n-1}.

    Needs the first n states; n = 0 is the empty product 1.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if len(states) < n:
        raise ValueError(f"need at least {n} states, have {len(states)}")
    product = Fraction(1)
    for k in range(n):
        product *= states[k].a ** (n - k)
    return product


@dataclass(frozen=True)
class Lemma1Check:
    """Outcome of the determinant-identity check det H_n(F) = a^n det H_{n-1}(G)."""

    passed: bool
    checked_up_to: int
    first_failure: int | None


def lemma1_residual(s: CoeffState, order: int) -> Lemma1Check:
    """Verify det H_n(F) = a^n * det H_{n-1}(G) with both sides computed cold.

    F and G are reconstructed from the state and its image by the fixed-point
    solver, and the determinants evaluated independently.  The usable range of
    n follows from the series order (H_n consumes 2n - 1 coefficients), so the
    check runs for all n <= (order + 2) // 2; n = 0 reduces to the
    empty-matrix convention 1 = 1.
    """
    if s.a == 0:
        raise ValueError("transformation undefined (a = 0)")
    f_series = solve_lemma_form(s, order)
    g_series = solve_lemma_form(coeff_step(s), order)
    top = (order + 2) // 2
    first_failure = None
    for n in range(top + 1):
        lhs = det_bareiss(build_hankel(f_series, n))
        rhs_det = Fraction(1) if n == 0 else det_bareiss(build_hankel(g_series, n - 1))
        if lhs != s.a**n * rhs_det:
            first_failure = n
            break
    return Lemma1Check(first_failure is None, top, first_failure)
