"""Module for dense univariate polynomials over any scalar backend."""
from __future__ import annotations
from typing import TYPE_CHECKING

from fractions import Fraction

import mpmath
import sympy
from sympy.polys.domains import QQ

from qracah_gaps.errors import BackendMismatchError, CancellationFailureError, DivisionByZeroError
from qracah_gaps.numeric.scalars import QuadExt, div, is_exact

if TYPE_CHECKING:
    from typing import Any, Iterable, List, Optional, Tuple

    from qracah_gaps.numeric.scalars import QuadraticField

_VARIABLE = sympy.Symbol('z')


class Poly:
    """
    Dense polynomial with coefficients in ascending degree.

    The coefficient tuple never ends with a zero, so the zero polynomial has no coefficients and degree -1.
    Coefficients may be ints, Fractions, QuadExt or mpmath values; the int 0 serves as the neutral element of every
    backend. Instances are immutable and can be shared freely.

    Args:
        coefficients (Iterable): coefficients c_0, c_1, ... of 1, z, z^2, ...
    """
    __slots__ = ('_coefficients',)

    def __init__(self, coefficients: Iterable[Any] = ()) -> None:
        values: List[Any] = list(coefficients)
        while values and values[-1] == 0:
            values.pop()
        self._coefficients: Tuple[Any, ...] = tuple(values)

    @classmethod
    def constant(cls, value: Any) -> Poly:
        """Constant polynomial."""
        return cls((value,))

    @classmethod
    def identity(cls) -> Poly:
        """The polynomial z."""
        return cls((0, 1))

    @classmethod
    def from_roots(cls, roots: Iterable[Any], lead: Any = 1) -> Poly:
        """
        Build lead * prod(z - root).

        Args:
            roots (Iterable): roots with multiplicity.
            lead: leading coefficient.
        """
        result = cls.constant(lead)
        for root in roots:
            result = result * cls((-root, 1))
        return result

    @property
    def coefficients(self) -> Tuple[Any, ...]:
        """Coefficients in ascending degree."""
        return self._coefficients

    @property
    def degree(self) -> int:
        """Degree, -1 for the zero polynomial."""
        return len(self._coefficients) - 1

    @property
    def lead(self) -> Any:
        """Leading coefficient (0 for the zero polynomial)."""
        if not self._coefficients:
            return 0
        return self._coefficients[-1]

    def coefficient(self, power: int) -> Any:
        """Coefficient of z^power (0 beyond the degree)."""
        if 0 <= power < len(self._coefficients):
            return self._coefficients[power]
        return 0

    def is_zero(self) -> bool:
        """Check for the zero polynomial."""
        return not self._coefficients

    def __bool__(self) -> bool:
        return bool(self._coefficients)

    def __call__(self, point: Any) -> Any:
        result: Any = 0
        for coefficient in reversed(self._coefficients):
            result = result * point + coefficient
        return result

    @staticmethod
    def _lift(other: Any) -> Poly:
        if isinstance(other, Poly):
            return other
        return Poly.constant(other)

    def __add__(self, other: Any) -> Poly:
        other = self._lift(other)
        size = max(len(self._coefficients), len(other.coefficients))
        return Poly(self.coefficient(i) + other.coefficient(i) for i in range(size))

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(-c for c in self._coefficients)

    def __sub__(self, other: Any) -> Poly:
        return self + (-self._lift(other))

    def __rsub__(self, other: Any) -> Poly:
        return self._lift(other) - self

    def __mul__(self, other: Any) -> Poly:
        if not isinstance(other, Poly):
            return Poly(c * other for c in self._coefficients)
        if self.is_zero() or other.is_zero():
            return Poly()
        product: List[Any] = [0] * (len(self._coefficients) + len(other.coefficients) - 1)
        for i, left in enumerate(self._coefficients):
            if left == 0:
                continue
            for j, right in enumerate(other.coefficients):
                product[i + j] = product[i + j] + left * right
        return Poly(product)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> Poly:
        if exponent < 0:
            raise ValueError('Negative powers of polynomials are not polynomials')
        result = Poly.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self._coefficients == other.coefficients
        if other is None:
            return False
        return self == Poly.constant(other)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f'Poly({[str(c) for c in self._coefficients]})'

    def monic(self) -> Poly:
        """
        Divide by the leading coefficient.

        Raises:
            DivisionByZeroError: for the zero polynomial.
        """
        if self.is_zero():
            raise DivisionByZeroError('The zero polynomial has no monic normalization')
        lead = self.lead
        return Poly(div(c, lead) for c in self._coefficients)

    def derivative(self) -> Poly:
        """Formal derivative."""
        return Poly(c * power for power, c in enumerate(self._coefficients) if power > 0)

    def compose(self, inner: Poly) -> Poly:
        """Return p(inner(z))."""
        result = Poly()
        for coefficient in reversed(self._coefficients):
            result = result * inner + coefficient
        return result

    def homogenize(self, numerator: Poly, denominator: Poly, degree: Optional[int] = None) -> Poly:
        """
        Substitute a rational function and clear denominators.

        Returns sum c_k numerator^k denominator^(degree - k), so that p(numerator/denominator) equals the result divided by
        denominator^degree.

        Args:
            numerator (Poly): numerator of the substituted function.
            denominator (Poly): denominator of the substituted function.
            degree (int): homogenization degree, at least the degree of p (defaults to it).
        """
        if degree is None:
            degree = max(self.degree, 0)
        if degree < self.degree:
            raise ValueError('Homogenization degree below the polynomial degree')
        result = Poly()
        numerator_power = Poly.constant(1)
        for power in range(degree + 1):
            coefficient = self.coefficient(power)
            if coefficient != 0:
                result = result + numerator_power * (denominator ** (degree - power)) * coefficient
            numerator_power = numerator_power * numerator
        return result

    def taylor_shift(self, center: Any) -> Poly:
        """Coefficients of p(center + h) as a polynomial in h."""
        return self.compose(Poly((center, 1)))

    def divmod(self, divisor: Poly) -> Tuple[Poly, Poly]:
        """
        Euclidean division.

        Raises:
            DivisionByZeroError: if the divisor is the zero polynomial.
        """
        if divisor.is_zero():
            raise DivisionByZeroError('Polynomial division by zero')
        remainder: List[Any] = list(self._coefficients)
        quotient: List[Any] = [0] * max(len(remainder) - divisor.degree, 1)
        lead = divisor.lead
        for shift in range(len(remainder) - 1 - divisor.degree, -1, -1):
            factor = div(remainder[shift + divisor.degree], lead)
            quotient[shift] = factor
            if factor == 0:
                continue
            for index, coefficient in enumerate(divisor.coefficients):
                remainder[shift + index] = remainder[shift + index] - factor * coefficient
        return Poly(quotient), Poly(remainder[:divisor.degree])

    def exact_div(self, divisor: Poly, tolerance: Optional[Any] = None) -> Poly:
        """
        Divide, requiring a zero remainder.

        Args:
            divisor (Poly): the divisor.
            tolerance: relative tolerance for floating coefficients; exact backends require a literal zero remainder.

        Raises:
            CancellationFailureError: if the remainder does not vanish.
        """
        quotient, remainder = self.divmod(divisor)
        if remainder.is_zero():
            return quotient
        if tolerance is not None and not is_exact(self.lead):
            scale = max(abs(c) for c in self._coefficients)
            if all(abs(c) <= tolerance * scale for c in remainder.coefficients):
                return quotient
        raise CancellationFailureError(f'{self!r} is not divisible by {divisor!r}')

    def root_multiplicity(self, point: Any) -> int:
        """
        Multiplicity of point as a root (exact backends).

        Returns 0 when point is not a root; the zero polynomial is reported with multiplicity -1.
        """
        if self.is_zero():
            return -1
        multiplicity = 0
        current = self
        factor = Poly((-point, 1))
        while current.degree >= 1:
            quotient, remainder = current.divmod(factor)
            if not remainder.is_zero():
                break
            multiplicity += 1
            current = quotient
        return multiplicity


def exact_field(*polys: Poly) -> Optional[QuadraticField]:
    """
    Find the exact field the coefficients of polys live in.

    Returns:
        QuadraticField | None: the quadratic field of the QuadExt coefficients, None when all coefficients are rational.

    Raises:
        BackendMismatchError: for floating coefficients or quadratic elements over different fields.
    """
    field: Optional[QuadraticField] = None
    for poly in polys:
        for coefficient in poly.coefficients:
            if isinstance(coefficient, QuadExt):
                if field is None:
                    field = coefficient.field
                elif coefficient.r != field.r:
                    raise BackendMismatchError(f'Coefficients over Q(sqrt({field.r})) and Q(sqrt({coefficient.r}))')
            elif not isinstance(coefficient, (int, Fraction)):
                raise BackendMismatchError(f'{type(coefficient).__name__} coefficients have no exact gcd')
    return field


def to_sympy_poly(poly: Poly, field: Optional[QuadraticField] = None) -> sympy.Poly:
    """Convert to a sympy polynomial over QQ, or over the given quadratic field."""
    domain = QQ if field is None else field.domain
    elements: List[Any] = []
    for coefficient in reversed(poly.coefficients):
        if isinstance(coefficient, QuadExt):
            elements.append(coefficient.element)
        elif field is None:
            value = Fraction(coefficient)
            elements.append(QQ(value.numerator, value.denominator))
        else:
            elements.append(field.element(coefficient, 0))
    return sympy.Poly(elements or [domain.zero], _VARIABLE, domain=domain)


def from_sympy_poly(poly: sympy.Poly, field: Optional[QuadraticField] = None) -> Poly:
    """Convert a sympy polynomial produced by to_sympy_poly back."""
    elements = poly.rep.to_list()
    if field is None:
        return Poly(Fraction(int(c.numerator), int(c.denominator)) for c in reversed(elements))
    return Poly(QuadExt.from_element(field, c) for c in reversed(elements))


def poly_gcd(left: Poly, right: Poly) -> Poly:
    """
    Monic greatest common divisor over an exact field.

    The gcd of two zero polynomials is the zero polynomial.

    Raises:
        BackendMismatchError: for floating coefficients.
    """
    if left.is_zero() and right.is_zero():
        return Poly()
    field = exact_field(left, right)
    common = to_sympy_poly(left, field).gcd(to_sympy_poly(right, field))
    return from_sympy_poly(common, field).monic()


def float_tolerance(precision_bits: int) -> Any:
    """Relative remainder tolerance 2^(-precision/2) accepted by floating point cancellations."""
    return mpmath.ldexp(1, -(precision_bits // 2))
