"""Exact rational scalars and truncated formal power series.

Everything in this package is computed over arbitrary-precision rationals
(:class:`fractions.Fraction`); floating point is deliberately rejected, since
the point of the library is that determinant identities hold *exactly*.

A :class:`TruncatedSeries` stores the coefficients ``c_0 .. c_N`` of a formal
power series together with its truncation order ``N``.  Arithmetic never
invents coefficients: the result of a binary operation is only valid, and is
only stored, through the smaller of the two operand orders.

Besides the ring operations the module provides the coefficient-wise solvers
the rest of the pipeline is built on:

* :func:`solve_fundamental` -- the series ``y(z)`` with ``y - y**2 = z - z**3``
  and ``y = z + O(z**2)``, solved order by order,
* :func:`q_from_y` -- the shifted series ``(y - z) / z**2``,
* :func:`solve_lemma_form` -- the unique power-series fixed point of
  ``F = (a + b*x) / (1 + c*x + d*x**2 + x**2*(e + f*x)*F)``,
* :func:`catalan_series` -- the solution of ``C = 1 + x*C**2``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

Rational = Union[int, Fraction]

_FORBIDDEN_SCALARS = (float, complex)


def as_fraction(value) -> Fraction:
    """Coerce ``value`` to an exact Fraction, rejecting floating point."""
    if isinstance(value, _FORBIDDEN_SCALARS):
        raise TypeError(f"floating point is not allowed here: {value!r}")
    return Fraction(value)


def rat(num: int, den: int = 1) -> Fraction:
    """The rational num/den in canonical form (reduced, positive denominator).

    Raises ValueError("zero denominator") rather than ZeroDivisionError so the
    failure reads as a contract violation, not an arithmetic accident.
    """
    if isinstance(num, _FORBIDDEN_SCALARS) or isinstance(den, _FORBIDDEN_SCALARS):
        raise TypeError("rat() takes exact integers only")
    if den == 0:
        raise ValueError("zero denominator")
    return Fraction(num, den)


def format_rational(x: Rational) -> str:
    """Render a rational as ``p/q``, or just ``p`` when the denominator is 1."""
    return str(Fraction(x))


class TruncatedSeries:
    """Coefficients ``c_0 .. c_order`` of a power series, immutable.

    ``TruncatedSeries(coeffs)`` takes the order from the length of ``coeffs``;
    ``TruncatedSeries(coeffs, order=N)`` explicitly claims validity through
    ``x**N`` and zero-pads a shorter coefficient list (the caller is asserting
    the missing coefficients really are zero, as for polynomials).
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = tuple(as_fraction(c) for c in coeffs)
        if order is not None:
            if order < 0:
                raise ValueError("truncation order must be nonnegative")
            if len(cs) > order + 1:
                raise ValueError(
                    f"got {len(cs)} coefficients for truncation order {order}"
                )
            cs = cs + (Fraction(0),) * (order + 1 - len(cs))
        if not cs:
            raise ValueError("a series stores at least the constant coefficient")
        self._coeffs = cs

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    def coefficient(self, k: int) -> Fraction:
        """The coefficient of x**k; reading past the order is an error."""
        if not 0 <= k <= self.order:
            raise ValueError(
                f"coefficient {k} is beyond truncation order {self.order}"
            )
        return self._coeffs[k]

    def truncate(self, order: int) -> "TruncatedSeries":
        """Restrict to a smaller order; never extends with zeros."""
        if order > self.order:
            raise ValueError(
                f"cannot extend a series of order {self.order} to order {order}"
            )
        return TruncatedSeries(self._coeffs[: order + 1])

    # -- ring operations (result order = min of operand orders) --------------

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        m = min(self.order, other.order)
        return TruncatedSeries(
            [self._coeffs[k] + other._coeffs[k] for k in range(m + 1)]
        )

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        m = min(self.order, other.order)
        return TruncatedSeries(
            [self._coeffs[k] - other._coeffs[k] for k in range(m + 1)]
        )

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries([-c for c in self._coeffs])

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        m = min(self.order, other.order)
        out = [Fraction(0)] * (m + 1)
        for i, ci in enumerate(self._coeffs[: m + 1]):
            if ci == 0:
                continue
            for j in range(m + 1 - i):
                cj = other._coeffs[j]
                if cj != 0:
                    out[i + j] += ci * cj
        return TruncatedSeries(out)

    def __truediv__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if other._coeffs[0] == 0:
            raise ValueError("non-invertible series")
        m = min(self.order, other.order)
        g0 = other._coeffs[0]
        out: list[Fraction] = []
        for k in range(m + 1):
            acc = self._coeffs[k]
            for i in range(k):
                acc -= out[i] * other._coeffs[k - i]
            out.append(acc / g0)
        return TruncatedSeries(out)

    def scale(self, factor: Rational) -> "TruncatedSeries":
        r = as_fraction(factor)
        return TruncatedSeries([r * c for c in self._coeffs])

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        shown = ", ".join(format_rational(c) for c in self._coeffs[:8])
        tail = ", ..." if self.order > 7 else ""
        return f"TruncatedSeries([{shown}{tail}], order={self.order})"

    def is_zero(self) -> bool:
        return all(c == 0 for c in self._coeffs)


def ps_add(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f + g


def ps_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f * g


def ps_div(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """f/g to the common order; g must have a nonzero constant term."""
    return f / g


def solve_fundamental(order: int) -> TruncatedSeries:
    """The series y(z) = z + z^2 + ... satisfying y - y^2 = z - z^3.

    The constant term of y vanishes, so the coefficient of z^k in y - y^2 is
    c_k minus a convolution of strictly lower-order coefficients; each c_k is
    therefore determined linearly by its predecessors and read off directly:

        c_k = [z^k](z - z^3) + sum_{i=1}^{k-1} c_i * c_{k-i}

    No series reversion or composition is needed.
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    c = [Fraction(0)] * (order + 1)
    c[1] = Fraction(1)
    for k in range(2, order + 1):
        acc = Fraction(-1) if k == 3 else Fraction(0)
        for i in range(1, k):
            acc += c[i] * c[k - i]
        c[k] = acc
    return TruncatedSeries(c)


def q_from_y(y: TruncatedSeries) -> TruncatedSeries:
    """The series (y - z) / z^2, i.e. the coefficients of y shifted down by 2.

    Requires y = z + O(z^2) so that y - z is actually divisible by z^2.
    """
    if y.order < 2:
        raise ValueError("series order too low: need order >= 2 to divide by z^2")
    if y.coeffs[0] != 0 or y.coeffs[1] != 1:
        raise ValueError("not divisible by z^2")
    return TruncatedSeries(y.coeffs[2:])


def solve_lemma_form(coefficients: Iterable, order: int) -> TruncatedSeries:
    """The unique power-series solution F of the linear-fractional equation

        F = (a + b*x) / (1 + c*x + d*x^2 + x^2*(e + f*x)*F)

    for a six-tuple ``(a, b, c, d, e, f)`` of rationals.  F enters the right
    hand side only multiplied by x^2, so substituting an approximation correct
    through x^m returns one correct through x^(m+2); iterating from the
    constant series ``a`` pins down at least two further coefficients per pass
    and stops as soon as two consecutive iterates agree.  The denominator has
    constant term 1 throughout, so the division is always defined.
    """
    a, b, c, d, e, f = (as_fraction(v) for v in coefficients)
    if order < 0:
        raise ValueError("truncation order must be nonnegative")
    numerator = TruncatedSeries([a, b], order=order)
    base = TruncatedSeries([1, c, d], order=order)
    shift = TruncatedSeries([0, 0, e, f], order=order)
    current = TruncatedSeries([a], order=order)
    for _ in range(order + 3):
        candidate = numerator / (base + shift * current)
        if candidate == current:
            return current
        current = candidate
    raise RuntimeError(
        "fixed-point iteration failed to converge; this cannot happen for a "
        "denominator with unit constant term"
    )


def catalan_series(order: int) -> TruncatedSeries:
    """The Catalan generating function, solved coefficient-wise from C = 1 + x*C^2."""
    if order < 0:
        raise ValueError("truncation order must be nonnegative")
    c = [Fraction(1)]
    for k in range(1, order + 1):
        c.append(sum((c[i] * c[k - 1 - i] for i in range(k)), Fraction(0)))
    return TruncatedSeries(c)
