"""Generic scalar, polynomial, rational function and 2x2 matrix algebra."""
from qracah_gaps.numeric.scalars import Backend, QuadExt, QuadraticField, adjoin_sqrt, backend_of, div, format_exact, is_exact, parse_exact, \
    quadratic_field, scalar_arith, to_bigfloat
from qracah_gaps.numeric.poly import Poly, exact_field, float_tolerance, from_sympy_poly, poly_gcd, to_sympy_poly
from qracah_gaps.numeric.ratfunc import RatFunc, laurent_expand, ratfunc_cancel
from qracah_gaps.numeric.matrix import Mat2, det2, determinant, solve_linear

__all__ = ['Backend', 'QuadExt', 'QuadraticField', 'adjoin_sqrt', 'backend_of', 'div', 'format_exact', 'is_exact', 'parse_exact',
           'quadratic_field', 'scalar_arith', 'to_bigfloat', 'Poly', 'exact_field', 'float_tolerance', 'from_sympy_poly', 'poly_gcd',
           'to_sympy_poly', 'RatFunc', 'laurent_expand', 'ratfunc_cancel', 'Mat2', 'det2', 'determinant', 'solve_linear']
