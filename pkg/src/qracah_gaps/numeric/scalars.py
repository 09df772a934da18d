"""Module for the exact and arbitrary precision scalar tower used by every computation."""
from __future__ import annotations
from typing import TYPE_CHECKING

import functools
import math
import operator
from enum import Enum
from fractions import Fraction

import mpmath
import sympy
from sympy.polys.domains import QQ

from qracah_gaps.errors import BackendMismatchError, DivisionByZeroError

if TYPE_CHECKING:
    from typing import Any, Callable, Dict, Tuple, Union

    Scalar = Union[int, Fraction, 'QuadExt', mpmath.mpf]


class Backend(Enum):
    """
    Numeric backends a computation can run in.

    Attributes:
        RATIONAL: exact rationals (fractions.Fraction).
        QUADEXT: exact elements of Q(u) with u^2 rational.
        BIGFLOAT: mpmath floating point numbers at a configured precision.
    """
    RATIONAL = 'rational'
    QUADEXT = 'quadext'
    BIGFLOAT = 'bigfloat'


class QuadraticField:
    """
    The number field Q(u), u^2 = r, as a sympy algebraic field.

    Elements are sympy ANP values over QQ.algebraic_field(sqrt(r)); the field keeps the coordinates of u in sympy's
    primitive element so that a + b*u can be read off and built without a symbolic round trip.

    Args:
        r (Fraction): the square of the generator, not a rational square.
    """

    def __init__(self, r: Fraction) -> None:
        self.r: Fraction = r
        self.domain: Any = QQ.algebraic_field(sympy.sqrt(sympy.Rational(r.numerator, r.denominator)))
        generator = self.domain.from_sympy(sympy.sqrt(sympy.Rational(r.numerator, r.denominator)))
        coordinates = generator.to_list()
        self._g1: Any = coordinates[0]
        self._g0: Any = coordinates[1] if len(coordinates) > 1 else QQ.zero

    def element(self, a: Union[int, Fraction], b: Union[int, Fraction]) -> Any:
        """Return the field element a + b*u."""
        a_value = _to_qq(a)
        b_value = _to_qq(b)
        return self.domain([b_value * self._g1, a_value + b_value * self._g0])

    def parts(self, element: Any) -> Tuple[Fraction, Fraction]:
        """Return (a, b) with element = a + b*u."""
        coordinates = element.to_list()
        if not coordinates:
            return Fraction(0), Fraction(0)
        if len(coordinates) == 1:
            return _from_qq(coordinates[0]), Fraction(0)
        b_value = coordinates[0] / self._g1
        return _from_qq(coordinates[1] - b_value * self._g0), _from_qq(b_value)


@functools.lru_cache(maxsize=None)
def quadratic_field(r: Fraction) -> QuadraticField:
    """
    Return the cached field Q(sqrt(r)).

    Raises:
        BackendMismatchError: if r is zero or the square of a rational, where no quadratic field exists.
    """
    if r == 0 or (_is_square(abs(r.numerator)) and _is_square(r.denominator) and r > 0):
        raise BackendMismatchError(f'{r} is a rational square and does not define a quadratic field')
    return QuadraticField(r)


def _to_qq(value: Union[int, Fraction]) -> Any:
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _from_qq(value: Any) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


class QuadExt:
    """
    Element a + b*u of the quadratic field Q(u) with u^2 = r.

    A thin wrapper around an element of sympy's QQ.algebraic_field(sqrt(r)) that does all field arithmetic. Values are
    immutable. Two elements can only be combined when they live over the same r; mixing fields raises
    BackendMismatchError instead of coercing. Plain ints and Fractions embed as b = 0.

    Args:
        a (Fraction): rational part.
        b (Fraction): coefficient of u.
        r (Fraction): the square of the generator u, fixed per computation context.
    """
    __slots__ = ('_field', '_value')

    def __init__(self, a: Union[int, Fraction], b: Union[int, Fraction], r: Union[int, Fraction]) -> None:
        r = Fraction(r)
        if r == 0:
            raise BackendMismatchError('A quadratic extension needs a nonzero u^2')
        self._field: QuadraticField = quadratic_field(r)
        self._value: Any = self._field.element(a, b)

    @classmethod
    def from_element(cls, field: QuadraticField, value: Any) -> QuadExt:
        """Wrap a sympy element of the given field."""
        result = cls.__new__(cls)
        result._field = field  # pylint: disable=protected-access
        result._value = value  # pylint: disable=protected-access
        return result

    @property
    def a(self) -> Fraction:
        """Rational part."""
        return self._field.parts(self._value)[0]

    @property
    def b(self) -> Fraction:
        """Coefficient of the generator u."""
        return self._field.parts(self._value)[1]

    @property
    def r(self) -> Fraction:
        """The value of u^2 defining the field."""
        return self._field.r

    @property
    def field(self) -> QuadraticField:
        """The field the element lives in."""
        return self._field

    @property
    def element(self) -> Any:
        """The underlying sympy field element."""
        return self._value

    def to_sympy(self) -> Any:
        """Return the element as a sympy expression."""
        return self._field.domain.to_sympy(self._value)

    def _coerce(self, other: Any) -> Union[Any, None]:
        if isinstance(other, QuadExt):
            if other.r != self.r:
                raise BackendMismatchError(f'Cannot combine elements of Q(sqrt({self.r})) and Q(sqrt({other.r}))')
            return other.element
        if isinstance(other, (int, Fraction)):
            return self._field.element(other, 0)
        if isinstance(other, (mpmath.mpf, mpmath.mpc, float)):
            raise BackendMismatchError('Cannot combine an exact quadratic element with a floating point value')
        return None

    def _wrap(self, value: Any) -> QuadExt:
        return QuadExt.from_element(self._field, value)

    def is_rational(self) -> bool:
        """
        Check whether the element lies in Q.

        Returns:
            bool: True if the u-coefficient vanishes.
        """
        return self.b == 0

    def conjugate(self) -> QuadExt:
        """Return the Galois conjugate a - b*u."""
        a, b = self._field.parts(self._value)
        return QuadExt(a, -b, self.r)

    def norm(self) -> Fraction:
        """Return the field norm a^2 - b^2 r."""
        a, b = self._field.parts(self._value)
        return a * a - b * b * self.r

    def __add__(self, other: Any) -> QuadExt:
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return self._wrap(self._value + value)

    __radd__ = __add__

    def __sub__(self, other: Any) -> QuadExt:
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return self._wrap(self._value - value)

    def __rsub__(self, other: Any) -> QuadExt:
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return self._wrap(value - self._value)

    def __mul__(self, other: Any) -> QuadExt:
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return self._wrap(self._value * value)

    __rmul__ = __mul__

    def inverse(self) -> QuadExt:
        """
        Multiplicative inverse in the field.

        Raises:
            DivisionByZeroError: if the element is zero.
        """
        if not self._value:
            raise DivisionByZeroError(f'Division by zero in Q(sqrt({self.r}))')
        return self._wrap(self._field.domain.pow(self._value, -1))

    def __truediv__(self, other: Any) -> QuadExt:
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return self * self._wrap(value).inverse()

    def __rtruediv__(self, other: Any) -> QuadExt:
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return self._wrap(value) * self.inverse()

    def __neg__(self) -> QuadExt:
        return self._wrap(-self._value)

    def __pos__(self) -> QuadExt:
        return self

    def __pow__(self, exponent: int) -> QuadExt:
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return self._wrap(self._field.domain.pow(self._value, exponent))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QuadExt):
            return self.r == other.r and self._field.parts(self._value) == other.field.parts(other.element)
        if isinstance(other, (int, Fraction)):
            a, b = self._field.parts(self._value)
            return b == 0 and a == other
        return NotImplemented

    def __hash__(self) -> int:
        a, b = self._field.parts(self._value)
        if b == 0:
            return hash(a)
        return hash((a, b, self.r))

    def __bool__(self) -> bool:
        return bool(self._value)

    def __repr__(self) -> str:
        a, b = self._field.parts(self._value)
        return f'QuadExt({a}, {b}, r={self.r})'

    def __str__(self) -> str:
        return format_exact(self)


def _is_square(value: int) -> bool:
    return value >= 0 and math.isqrt(value) ** 2 == value


def adjoin_sqrt(r: Union[int, Fraction]) -> Union[Fraction, QuadExt]:
    """
    Return a square root of r, exactly.

    If r is the square of a rational number the rational root is returned, otherwise the generator u of Q(sqrt(r)).

    Args:
        r (Fraction): the square.

    Returns:
        Fraction | QuadExt: the root.
    """
    r = Fraction(r)
    if r == 0:
        return Fraction(0)
    if _is_square(r.numerator) and _is_square(r.denominator):
        return Fraction(math.isqrt(r.numerator), math.isqrt(r.denominator))
    return QuadExt(0, 1, r)


def is_exact(value: Any) -> bool:
    """Check whether value belongs to one of the exact backends."""
    return isinstance(value, (int, Fraction, QuadExt))


def backend_of(value: Any) -> Backend:
    """
    Determine the backend a scalar belongs to.

    Raises:
        BackendMismatchError: for values that belong to no backend.
    """
    if isinstance(value, (int, Fraction)):
        return Backend.RATIONAL
    if isinstance(value, QuadExt):
        return Backend.QUADEXT
    if isinstance(value, (mpmath.mpf, mpmath.mpc)):
        return Backend.BIGFLOAT
    raise BackendMismatchError(f'{type(value).__name__} is not a scalar of any backend')


def to_bigfloat(value: Any) -> Any:
    """
    Convert a scalar of any backend to mpmath at the current working precision.

    Quadratic elements with negative u^2 become mpc values.
    """
    if isinstance(value, (mpmath.mpf, mpmath.mpc)):
        return value
    if isinstance(value, int):
        return mpmath.mpf(value)
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    if isinstance(value, QuadExt):
        root = mpmath.sqrt(to_bigfloat(value.r))
        return to_bigfloat(value.a) + to_bigfloat(value.b) * root
    raise BackendMismatchError(f'Cannot convert {type(value).__name__} to a big float')


def div(numerator: Any, denominator: Any) -> Any:
    """
    Divide two scalars.

    Raises:
        DivisionByZeroError: if the denominator is zero.
    """
    if denominator == 0:
        raise DivisionByZeroError(f'Division of {numerator} by zero')
    if isinstance(numerator, int) and isinstance(denominator, int):
        return Fraction(numerator, denominator)
    return numerator / denominator


_OPERATIONS: Dict[str, Callable[[Any, Any], Any]] = {
    '+': operator.add,
    '-': operator.sub,
    '*': operator.mul,
    '/': div,
}


def scalar_arith(left: Any, right: Any, op: str) -> Any:
    """
    Combine two scalars of the same backend.

    Rationals embed into a quadratic field; exact and floating values never mix.

    Args:
        left: first operand.
        right: second operand.
        op (str): one of '+', '-', '*', '/'.

    Returns:
        The exact result, or the rounded result at the working precision for big floats.

    Raises:
        BackendMismatchError: when the operands belong to incompatible backends.
        DivisionByZeroError: when dividing by zero.
    """
    if op not in _OPERATIONS:
        raise ValueError(f'Unknown operation {op}')
    if is_exact(left) != is_exact(right):
        raise BackendMismatchError(f'Cannot combine {backend_of(left).value} and {backend_of(right).value} scalars')
    if isinstance(left, int) and isinstance(right, int):
        left = Fraction(left)
    return _OPERATIONS[op](left, right)


def format_exact(value: Any, digits: int = 40) -> str:
    """
    Serialize a scalar.

    Rationals become "num/den" (or "n"), quadratic elements "a+b*u;u2=r", big floats their decimal expansion.
    """
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, QuadExt):
        sign = '-' if value.b < 0 else '+'
        return f'{value.a}{sign}{abs(value.b)}*u;u2={value.r}'
    if isinstance(value, (mpmath.mpf, mpmath.mpc)):
        return mpmath.nstr(value, digits)
    raise BackendMismatchError(f'Cannot serialize {type(value).__name__}')


def parse_exact(text: str) -> Union[Fraction, QuadExt]:
    """
    Parse the serialization produced by format_exact for the exact backends.

    Floating literals such as "0.25" are rejected, exactness is part of the contract.

    Raises:
        ValueError: on malformed input.
    """
    text = text.strip()
    if ';u2=' in text:
        body, square = text.split(';u2=', 1)
        body = body.rstrip('*u')
        split_at = max(body.rfind('+', 1), body.rfind('-', 1))
        if split_at <= 0:
            raise ValueError(f'Malformed quadratic element "{text}"')
        return QuadExt(parse_exact(body[:split_at]), parse_exact(body[split_at:].replace('+', '', 1)), parse_exact(square))
    if any(marker in text for marker in ('.', 'e', 'E')):
        raise ValueError(f'"{text}" is not an exact rational, use the form p/q')
    return Fraction(text)
