"""Tests for the scalar tower, polynomials, rational functions and 2x2 matrices."""
from fractions import Fraction

import mpmath
import pytest
import sympy

from qracah_gaps.errors import BackendMismatchError, CancellationFailureError, DivisionByZeroError, EvaluationAtPoleError, HigherOrderPoleError, \
    NoSolutionError, ZeroDenominatorError
from qracah_gaps.numeric import Backend, Mat2, Poly, QuadExt, RatFunc, adjoin_sqrt, backend_of, det2, determinant, div, format_exact, \
    is_exact, laurent_expand, parse_exact, poly_gcd, ratfunc_cancel, scalar_arith, solve_linear, to_bigfloat


class TestScalars:
    def test_rational_division_is_exact(self):
        assert scalar_arith(1, 3, '/') == Fraction(1, 3)
        assert div(2, 4) == Fraction(1, 2)

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZeroError):
            scalar_arith(Fraction(1), 0, '/')
        with pytest.raises(ZeroDivisionError):
            div(1, Fraction(0))

    def test_exact_and_float_do_not_mix(self):
        with pytest.raises(BackendMismatchError):
            scalar_arith(Fraction(1, 2), mpmath.mpf(1), '+')

    def test_unknown_operation(self):
        with pytest.raises(ValueError):
            scalar_arith(1, 2, '%')

    def test_quadext_arithmetic(self):
        u = adjoin_sqrt(Fraction(1, 8))
        assert isinstance(u, QuadExt)
        assert u * u == Fraction(1, 8)
        assert (1 + u) * (1 - u) == Fraction(7, 8)
        assert (1 + u) / (1 + u) == 1
        assert (2 * u).inverse() * (2 * u) == 1

    def test_quadext_fields_do_not_mix(self):
        with pytest.raises(BackendMismatchError):
            _ = QuadExt(0, 1, 2) + QuadExt(0, 1, 3)

    def test_quadext_zero_inverse(self):
        with pytest.raises(DivisionByZeroError):
            QuadExt(0, 0, 2).inverse()

    def test_quadext_matches_sympy(self):
        element = QuadExt(Fraction(1, 3), Fraction(1, 2), Fraction(1, 8))
        assert sympy.simplify(element.to_sympy() - (sympy.Rational(1, 3) + sympy.sqrt(sympy.Rational(1, 8)) / 2)) == 0
        assert element.a == Fraction(1, 3)
        assert element.b == Fraction(1, 2)
        assert element.conjugate() * element == element.norm()

    def test_quadext_needs_an_irrational_root(self):
        with pytest.raises(BackendMismatchError):
            QuadExt(0, 1, Fraction(1, 64))

    def test_adjoin_sqrt_of_a_square_is_rational(self):
        assert adjoin_sqrt(Fraction(1, 64)) == Fraction(1, 8)
        assert isinstance(adjoin_sqrt(Fraction(1, 64)), Fraction)

    def test_backend_of(self):
        assert backend_of(Fraction(1, 2)) == Backend.RATIONAL
        assert backend_of(QuadExt(0, 1, 2)) == Backend.QUADEXT
        assert backend_of(mpmath.mpf(1)) == Backend.BIGFLOAT
        with pytest.raises(BackendMismatchError):
            backend_of('1/2')

    def test_to_bigfloat(self):
        with mpmath.workprec(128):
            assert to_bigfloat(Fraction(1, 4)) == mpmath.mpf(1) / 4
            assert abs(to_bigfloat(QuadExt(1, 1, 2)) - (1 + mpmath.sqrt(2))) < mpmath.mpf(2) ** -120

    def test_format_and_parse(self):
        assert format_exact(Fraction(-3, 7)) == '-3/7'
        assert parse_exact('-3/7') == Fraction(-3, 7)
        element = QuadExt(Fraction(1, 2), Fraction(-3, 4), Fraction(1, 8))
        assert parse_exact(format_exact(element)) == element
        assert is_exact(parse_exact('5'))

    def test_parse_rejects_floats(self):
        with pytest.raises(ValueError):
            parse_exact('0.25')
        with pytest.raises(ValueError):
            parse_exact('1e-3')


class TestPoly:
    def test_normalized_coefficients(self):
        assert Poly((1, 2, 0, 0)).degree == 1
        assert Poly().degree == -1
        assert Poly((0, 0)).is_zero()

    def test_arithmetic(self):
        first = Poly((1, 1))
        second = Poly((-1, 1))
        assert first * second == Poly((-1, 0, 1))
        assert first ** 3 == Poly((1, 3, 3, 1))
        assert first - first == Poly()
        assert first(Fraction(1, 2)) == Fraction(3, 2)

    def test_from_roots(self):
        polynomial = Poly.from_roots([1, 2, 3], lead=2)
        assert polynomial.lead == 2
        assert all(polynomial(root) == 0 for root in (1, 2, 3))

    def test_divmod_and_exact_div(self):
        product = Poly.from_roots([Fraction(1, 2), 3, -1])
        quotient, remainder = product.divmod(Poly((-3, 1)))
        assert remainder.is_zero()
        assert quotient == Poly.from_roots([Fraction(1, 2), -1])
        with pytest.raises(CancellationFailureError):
            product.exact_div(Poly((-2, 1)))
        with pytest.raises(DivisionByZeroError):
            product.divmod(Poly())

    def test_gcd(self):
        left = Poly.from_roots([1, 2, Fraction(1, 3)])
        right = Poly.from_roots([2, Fraction(1, 3), 5], lead=7)
        assert poly_gcd(left, right) == Poly.from_roots([2, Fraction(1, 3)])

    def test_gcd_over_quadratic_field(self):
        u = adjoin_sqrt(Fraction(1, 8))
        left = Poly.from_roots([u, 1, Fraction(1, 2)], lead=3)
        right = Poly.from_roots([u, -u, 1])
        assert poly_gcd(left, right) == Poly.from_roots([u, 1])

    def test_gcd_rejects_floats(self):
        with pytest.raises(BackendMismatchError):
            poly_gcd(Poly((mpmath.mpf(1), 1)), Poly((1, 1)))

    def test_root_multiplicity(self):
        polynomial = Poly.from_roots([2, 2, 2, 5])
        assert polynomial.root_multiplicity(2) == 3
        assert polynomial.root_multiplicity(1) == 0

    def test_homogenize(self):
        polynomial = Poly((1, 2, 3))
        point = Fraction(2, 5)
        numerator, denominator = Poly((0, 1)), Poly((1, 1))
        cleared = polynomial.homogenize(numerator, denominator)
        assert cleared(point) == polynomial(div(numerator(point), denominator(point))) * denominator(point) ** 2

    def test_compose_and_shift(self):
        polynomial = Poly((0, 0, 1))
        assert polynomial.taylor_shift(1) == Poly((1, 2, 1))
        assert polynomial.compose(Poly((1, 1))) == Poly((1, 2, 1))

    def test_quadext_coefficients(self):
        u = adjoin_sqrt(2)
        polynomial = Poly.from_roots([u, -u])
        assert polynomial == Poly((-2, 0, 1))


class TestRatFunc:
    def test_lowest_terms(self):
        function = RatFunc(Poly.from_roots([1, 2]), Poly.from_roots([1, 3], lead=2))
        assert function.num == Poly.from_roots([2], lead=Fraction(1, 2))
        assert function.den == Poly.from_roots([3])
        assert ratfunc_cancel(function) == function

    def test_lowest_terms_over_quadratic_field(self):
        u = adjoin_sqrt(Fraction(1, 8))
        function = RatFunc(Poly.from_roots([u, 2], lead=u), Poly.from_roots([u, -u], lead=4))
        assert function.num == Poly.from_roots([2], lead=u / 4)
        assert function.den == Poly.from_roots([-u])

    def test_zero_denominator(self):
        with pytest.raises(ZeroDenominatorError):
            RatFunc(Poly((1,)), Poly())

    def test_evaluation_at_pole(self):
        with pytest.raises(EvaluationAtPoleError):
            RatFunc(Poly((1,)), Poly((-1, 1)))(1)

    def test_field_operations(self):
        first = RatFunc(Poly((1,)), Poly((-1, 1)))
        second = RatFunc(Poly((1,)), Poly((1, 1)))
        total = first + second
        assert total == RatFunc(Poly((0, 2)), Poly((-1, 0, 1)))
        assert (first * second).inverse() == RatFunc.from_poly(Poly((-1, 0, 1)))
        assert first / first == RatFunc.constant(1)

    def test_laurent_simple_pole(self):
        # 1/(z - 1) + 2 + 3 (z - 1)
        center = Fraction(1)
        function = RatFunc(Poly((1,)), Poly((-1, 1))) + RatFunc.from_poly(Poly((2,))) + RatFunc.from_poly(Poly((-3, 3)))
        assert laurent_expand(function, center, 1) == [1, 2, 3]

    def test_laurent_regular_point(self):
        function = RatFunc.from_poly(Poly((0, 0, 1)))
        assert laurent_expand(function, 2, 2) == [0, 4, 4, 1]

    def test_laurent_double_pole(self):
        with pytest.raises(HigherOrderPoleError):
            laurent_expand(RatFunc(Poly((1,)), Poly.from_roots([1, 1])), 1, 0)


class TestMatrix:
    def test_mat2(self):
        matrix = Mat2(1, 2, 3, 4)
        assert matrix.det() == -2
        assert matrix * matrix.inverse() == Mat2.identity()
        assert matrix.apply((1, 1)) == (3, 7)
        assert matrix.apply_left((1, 1)) == (4, 6)
        assert Mat2.outer((1, 2), (3, 4)) == Mat2(3, 4, 6, 8)
        assert det2((1, 3), (2, 4)) == -2

    def test_determinant(self):
        assert determinant([[2, 1, 0], [1, 2, 1], [0, 1, 2]]) == 4
        assert determinant([]) == 1
        assert determinant([[1, 2], [2, 4]]) == 0

    def test_solve_linear(self):
        solution = solve_linear([[2, 1], [1, 3], [3, 4]], [3, 5, 8])
        assert solution == [Fraction(4, 5), Fraction(7, 5)]

    def test_solve_linear_inconsistent(self):
        with pytest.raises(NoSolutionError):
            solve_linear([[1, 1], [2, 2]], [1, 3])
        with pytest.raises(NoSolutionError):
            solve_linear([[1, 0], [0, 1], [1, 1]], [1, 1, 3])
