"""Module for rational functions in one variable and their Laurent expansions."""
from __future__ import annotations
from typing import TYPE_CHECKING

from qracah_gaps.errors import EvaluationAtPoleError, HigherOrderPoleError, ZeroDenominatorError
from qracah_gaps.numeric.poly import Poly, exact_field, from_sympy_poly, to_sympy_poly
from qracah_gaps.numeric.scalars import div, is_exact

if TYPE_CHECKING:
    from typing import Any, List, Tuple


class RatFunc:
    """
    Quotient num/den of two polynomials.

    In exact backends the quotient is kept in lowest terms with a monic denominator, so equal functions have equal
    representations. Floating point quotients are stored as given.

    Args:
        num (Poly): numerator.
        den (Poly): denominator, must not be the zero polynomial.

    Raises:
        ZeroDenominatorError: if den is the zero polynomial.
    """
    __slots__ = ('_num', '_den')

    def __init__(self, num: Poly, den: Poly | None = None, cancel: bool = True) -> None:
        if den is None:
            den = Poly.constant(1)
        if den.is_zero():
            raise ZeroDenominatorError('Rational function with zero denominator')
        self._num: Poly = num
        self._den: Poly = den
        if cancel and _exact_poly(num) and _exact_poly(den):
            self._num, self._den = _reduce(num, den)

    @classmethod
    def from_poly(cls, poly: Poly) -> RatFunc:
        """Embed a polynomial."""
        return cls(poly, Poly.constant(1), cancel=False)

    @classmethod
    def constant(cls, value: Any) -> RatFunc:
        """Constant function."""
        return cls.from_poly(Poly.constant(value))

    @property
    def num(self) -> Poly:
        """Numerator."""
        return self._num

    @property
    def den(self) -> Poly:
        """Denominator."""
        return self._den

    def is_polynomial(self) -> bool:
        """True if the denominator is a constant."""
        return self._den.degree == 0

    def is_zero(self) -> bool:
        """True for the zero function."""
        return self._num.is_zero()

    def __call__(self, point: Any) -> Any:
        denominator = self._den(point)
        if denominator == 0:
            raise EvaluationAtPoleError(f'{self!r} has a pole at {point}')
        return div(self._num(point), denominator)

    @staticmethod
    def _lift(other: Any) -> RatFunc:
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc.from_poly(other)
        return RatFunc.constant(other)

    def __add__(self, other: Any) -> RatFunc:
        other = self._lift(other)
        if self._den == other.den:
            return RatFunc(self._num + other.num, self._den)
        return RatFunc(self._num * other.den + other.num * self._den, self._den * other.den)

    __radd__ = __add__

    def __neg__(self) -> RatFunc:
        return RatFunc(-self._num, self._den, cancel=False)

    def __sub__(self, other: Any) -> RatFunc:
        return self + (-self._lift(other))

    def __rsub__(self, other: Any) -> RatFunc:
        return self._lift(other) - self

    def __mul__(self, other: Any) -> RatFunc:
        other = self._lift(other)
        return RatFunc(self._num * other.num, self._den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        """
        Reciprocal function.

        Raises:
            ZeroDenominatorError: for the zero function.
        """
        return RatFunc(self._den, self._num)

    def __truediv__(self, other: Any) -> RatFunc:
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other: Any) -> RatFunc:
        return self._lift(other) * self.inverse()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (RatFunc, Poly)) or is_exact(other):
            other = self._lift(other)
            return (self._num * other.den - other.num * self._den).is_zero()
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f'RatFunc({self._num!r}, {self._den!r})'

    def derivative(self) -> RatFunc:
        """Derivative by the quotient rule."""
        return RatFunc(self._num.derivative() * self._den - self._num * self._den.derivative(), self._den * self._den)

    def cancel(self) -> RatFunc:
        """
        Return the quotient in lowest terms.

        Raises:
            BackendMismatchError: for floating point coefficients, where exact cancellation is meaningless.
        """
        num, den = _reduce(self._num, self._den)
        return RatFunc(num, den, cancel=False)


def _exact_poly(poly: Poly) -> bool:
    return all(is_exact(c) for c in poly.coefficients)


def _reduce(num: Poly, den: Poly) -> Tuple[Poly, Poly]:
    if num.is_zero():
        return Poly(), Poly.constant(1)
    field = exact_field(num, den)
    num_sympy, den_sympy = to_sympy_poly(num, field).cancel(to_sympy_poly(den, field), include=True)
    num = from_sympy_poly(num_sympy, field)
    den = from_sympy_poly(den_sympy, field)
    lead = den.lead
    if lead != 1:
        num = Poly(div(c, lead) for c in num.coefficients)
        den = den.monic()
    return num, den


def ratfunc_cancel(function: RatFunc) -> RatFunc:
    """
    Reduce a rational function to lowest terms.

    Args:
        function (RatFunc): function over an exact backend.

    Returns:
        RatFunc: coprime numerator and monic denominator, equal in value to the input away from the cancelled points.
    """
    return function.cancel()


def _leading_zeros(coefficients: Tuple[Any, ...]) -> int:
    count = 0
    for coefficient in coefficients:
        if coefficient != 0:
            break
        count += 1
    return count


def laurent_expand(function: RatFunc, center: Any, order: int) -> List[Any]:
    """
    Laurent coefficients at a point where the function has at most a simple pole.

    Returns [c_-1, c_0, ..., c_order] with f(z) = c_-1/(z - center) + c_0 + c_1 (z - center) + ...

    Args:
        function (RatFunc): the function.
        center: expansion point.
        order (int): highest power kept, at least -1.

    Raises:
        HigherOrderPoleError: if the pole at center has order two or more.
    """
    if order < -1:
        raise ValueError('Laurent expansion order must be at least -1')
    shifted_num = function.num.taylor_shift(center).coefficients
    shifted_den = function.den.taylor_shift(center).coefficients
    if not shifted_num:
        return [0] * (order + 2)
    num_zeros = _leading_zeros(shifted_num)
    den_zeros = _leading_zeros(shifted_den)
    valuation = num_zeros - den_zeros
    if valuation < -1:
        raise HigherOrderPoleError(f'Pole of order {-valuation} at {center}')
    numerator = shifted_num[num_zeros:]
    denominator = shifted_den[den_zeros:]
    length = order + 2
    series: List[Any] = []
    for index in range(length):
        term = numerator[index] if index < len(numerator) else 0
        for k in range(1, min(index, len(denominator) - 1) + 1):
            term = term - denominator[k] * series[index - k]
        series.append(div(term, denominator[0]))
    # coefficient of (z - center)^j is series[j - valuation]
    return [series[j - valuation] if 0 <= j - valuation < length else 0 for j in range(-1, order + 1)]
