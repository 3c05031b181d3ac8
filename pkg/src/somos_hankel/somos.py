"""The Somos-4 recurrence and the transformed a-sequence identities.

The Somos-4 numbers satisfy s_n * s_{n-4} = s_{n-1} * s_{n-3} + s_{n-2}**2;
with initial window (1, 1, 2, 3) they stay integral even though the
recurrence divides (the Laurent phenomenon).  The transformation module turns
det H_n into a product of a_k's, which converts the Somos recurrence into

    a_n * a_{n-1} * a_{n-2} = 1 + 1/a_{n-1}             (check_rec_a)

and, for the specific starting state of Q, into the closed two-term step

    a_{n+2} = 4/a_{n+1} - a_n - 1/a_{n+1}**2            (an2_step).

theorem2_rhs gives the conserved combination that holds for *arbitrary*
admissible initial data, and t_value the telescoping quantity whose vanishing
proves the recurrence: both are pure formulas so they can be tested directly
against iterated states.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .series import as_fraction
from .transform import CoeffState

Window = tuple[Fraction, Fraction, Fraction, Fraction]

SOMOS4_INITIAL_TERMS = (Fraction(1), Fraction(1), Fraction(2), Fraction(3))


@dataclass(frozen=True)
class SomosWindow:
    """The last four terms s_{index-3} .. s_{index} of a Somos-4 orbit."""

    index: int
    terms: Window

    def __post_init__(self):
        if len(self.terms) != 4:
            raise ValueError("a Somos window holds exactly four terms")
        object.__setattr__(
            self, "terms", tuple(as_fraction(t) for t in self.terms)
        )

    @property
    def newest(self) -> Fraction:
        return self.terms[3]


def somos4_extend(w: SomosWindow) -> SomosWindow:
    """Slide the window one step: s_{n+1} = (s_n s_{n-2} + s_{n-1}^2) / s_{n-3}."""
    oldest = w.terms[0]
    if oldest == 0:
        raise ValueError("Somos recurrence undefined: oldest window term is 0")
    nxt = (w.terms[3] * w.terms[1] + w.terms[2] ** 2) / oldest
    return SomosWindow(w.index + 1, (w.terms[1], w.terms[2], w.terms[3], nxt))


def somos_sequence(count: int, initial: Sequence = SOMOS4_INITIAL_TERMS) -> list[Fraction]:
    """Terms s_0 .. s_count from the recurrence with the given initial window."""
    if count < 0:
        raise ValueError("count must be nonnegative")
    first = [as_fraction(t) for t in initial]
    if len(first) != 4:
        raise ValueError("need exactly four initial terms")
    if count <= 3:
        return first[: count + 1]
    window = SomosWindow(3, tuple(first))
    out = first
    while window.index < count:
        window = somos4_extend(window)
        out.append(window.newest)
    return out


@dataclass(frozen=True)
class ASequence:
    """Terms a_0..a_K of the transformed sequence, plus f_0..f_{K+1} when known."""

    terms: tuple[Fraction, ...]
    f_terms: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(as_fraction(t) for t in self.terms))
        if self.f_terms is not None:
            object.__setattr__(
                self, "f_terms", tuple(as_fraction(t) for t in self.f_terms)
            )
        if any(t == 0 for t in self.terms):
            raise ValueError("a-sequence terms must be nonzero")

    def __getitem__(self, k: int) -> Fraction:
        return self.terms[k]

    def __len__(self) -> int:
        return len(self.terms)

    @classmethod
    def from_states(cls, states: Sequence[CoeffState]) -> "ASequence":
        """Extract (a_k) and the companion (f_k) from iterated states.

        f_{k+1} = -b_k / a_k is already determined by state k, so K+1 states
        yield f-terms through index K+1; f_0 is the seed state's own f.
        """
        terms = tuple(s.a for s in states)
        f_terms = (states[0].f,) + tuple(-s.b / s.a for s in states)
        return cls(terms, f_terms)


def check_rec_a(a, n: int) -> bool:
    """Whether a_n * a_{n-1} * a_{n-2} = 1 + 1/a_{n-1} holds exactly at index n."""
    if n < 2:
        raise ValueError("the recursion involves indices n-2..n; need n >= 2")
    a_n, a_n1, a_n2 = as_fraction(a[n]), as_fraction(a[n - 1]), as_fraction(a[n - 2])
    if a_n1 == 0:
        raise ValueError("a_{n-1} must be nonzero")
    return a_n * a_n1 * a_n2 == 1 + 1 / a_n1


def an2_step(a_n, a_n1) -> Fraction:
    """The closed-form step a_{n+2} = 4/a_{n+1} - a_n - 1/a_{n+1}^2."""
    a_n, a_n1 = as_fraction(a_n), as_fraction(a_n1)
    if a_n1 == 0:
        raise ValueError("a_{n+1} must be nonzero")
    return 4 / a_n1 - a_n - 1 / a_n1**2


def an2_sequence(count: int, a0=1, a1=2) -> list[Fraction]:
    """a_0 .. a_count generated purely by the closed-form two-term step."""
    if count < 0:
        raise ValueError("count must be nonnegative")
    out = [as_fraction(a0), as_fraction(a1)]
    while len(out) <= count:
        out.append(an2_step(out[-2], out[-1]))
    return out[: count + 1]


def theorem2_rhs(a0, a1, f0, f1, c, a_n1) -> Fraction:
    """The conserved right-hand side of the general two-term relation

        a_{n+2} a_{n+1} + a_{n+1} a_n
            = 2 a_0 a_1 + a_0 (f_0 + f_1 + c)(2 f_1 + c)
              - (a_0 (f_0 + f_1 + c))^2 / a_{n+1}.
    """
    a0, a1, f0, f1, c, a_n1 = (as_fraction(v) for v in (a0, a1, f0, f1, c, a_n1))
    if a_n1 == 0:
        raise ValueError("a_{n+1} must be nonzero")
    k = a0 * (f0 + f1 + c)
    return 2 * a0 * a1 + k * (2 * f1 + c) - k**2 / a_n1


def t_value(a_m2, a_m1) -> Fraction:
    """T(n) = 4 a_{n-2} a_{n-1} - a_{n-2} - a_{n-2}^2 a_{n-1}^2 - 1 - a_{n-1}.

    Substituting the closed-form step into the three-term recursion leaves
    this expression; it telescopes to T(2) = 0 along the Somos orbit.
    """
    x, y = as_fraction(a_m2), as_fraction(a_m1)
    return 4 * x * y - x - x**2 * y**2 - 1 - y
