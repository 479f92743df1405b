import random
from fractions import Fraction

import sympy
from django.test import SimpleTestCase

from core.services.exactmath import (
    LinearSubspace,
    MultiPoly,
    ProjPoint,
    format_rational,
    hessian_matrix,
    jacobian_rank,
    nullspace,
    poly_eval,
    poly_substitute_linear,
    rank,
    restricted_form_rank,
    rref,
    subspace_contains,
    subspace_intersection,
    verify_identity,
)
from core.services.exceptions import DimensionMismatch, NotLinearError, NotOnVarietyError
from core.services.suites import random_poly, random_rational

X = [MultiPoly.variable(i, 6) for i in range(1, 7)]
X1, X2, X3, X4, X5, X6 = X
LINEAR = MultiPoly.power_sum(1, 6)
CUBIC = MultiPoly.power_sum(3, 6)
NODE = ProjPoint.of(1, 1, 1, -1, -1, -1)
SYMBOLS = sympy.symbols('x1:7')


def to_sympy(p: MultiPoly):
    expr = sympy.Integer(0)
    for exps, coeff in p.terms.items():
        term = sympy.Rational(coeff.numerator, coeff.denominator)
        for symbol, k in zip(SYMBOLS, exps):
            term *= symbol ** k
        expr += term
    return sympy.expand(expr)


def plane(*rows):
    return LinearSubspace.from_equations(rows, 6)


PLANE_12_34_56 = plane([1, 1, 0, 0, 0, 0], [0, 0, 1, 1, 0, 0], [0, 0, 0, 0, 1, 1])
PLANE_13_24_56 = plane([1, 0, 1, 0, 0, 0], [0, 1, 0, 1, 0, 0], [0, 0, 0, 0, 1, 1])
PLANE_14_23_56 = plane([1, 0, 0, 1, 0, 0], [0, 1, 1, 0, 0, 0], [0, 0, 0, 0, 1, 1])


class RationalTests(SimpleTestCase):
    def test_lowest_terms_positive_denominator(self):
        q = Fraction(-2, -4)
        self.assertEqual((q.numerator, q.denominator), (1, 2))
        self.assertEqual(format_rational(Fraction(6, -4)), '-3/2')

    def test_integers_keep_denominator(self):
        self.assertEqual(format_rational(3), '3/1')

    def test_exact_sum(self):
        self.assertEqual(Fraction(1, 3) + Fraction(1, 6), Fraction(1, 2))


class RowReductionTests(SimpleTestCase):
    def test_rank_of_dependent_rows(self):
        self.assertEqual(rank([[1, 2, 3], [2, 4, 6], [0, 1, 1]]), 2)

    def test_rank_matches_sympy(self):
        rows = [[1, 2, 0, -1], [3, Fraction(1, 2), 1, 0], [4, Fraction(5, 2), 1, -1]]
        oracle = sympy.Matrix([[sympy.Rational(str(Fraction(x))) for x in r] for r in rows]).rank()
        self.assertEqual(rank(rows), oracle)

    def test_rref_pivots(self):
        reduced, pivots = rref([[0, 2, 4], [1, 1, 1]])
        self.assertEqual(pivots, (0, 1))
        self.assertEqual(reduced[1], (0, 1, 2))

    def test_nullspace_is_annihilated(self):
        rows = [[1, 1, 0, 0], [0, 0, 1, 1]]
        basis = nullspace(rows, 4)
        self.assertEqual(len(basis), 2)
        for v in basis:
            for r in rows:
                self.assertEqual(sum(a * b for a, b in zip(r, v)), 0)

    def test_column_mismatch(self):
        with self.assertRaises(DimensionMismatch):
            rref([[1, 2]], 3)


class ProjPointTests(SimpleTestCase):
    def test_canonical_form(self):
        p = ProjPoint.of(Fraction(-1, 2), 1, 0, 0, 0, 0)
        self.assertEqual(p.canonical, (1, -2, 0, 0, 0, 0))

    def test_equality_is_projective(self):
        self.assertEqual(ProjPoint.of(2, 2, 2, -2, -2, -2), NODE)
        self.assertEqual(NODE.scaled(Fraction(-7, 3)), NODE)
        self.assertNotEqual(ProjPoint.of(1, 0, 0, 0, 0, 0), ProjPoint.of(0, 1, 0, 0, 0, 0))

    def test_canonicalization_idempotent(self):
        p = ProjPoint.of(Fraction(3, 4), Fraction(-3, 2), 0, 6, 0, 0)
        self.assertEqual(p.normalized().normalized().coords, p.normalized().coords)
        self.assertTrue(p.normalized().is_canonical)

    def test_zero_vector_rejected(self):
        with self.assertRaises(ValueError):
            ProjPoint.of(0, 0, 0, 0, 0, 0)

    def test_repr(self):
        self.assertEqual(repr(NODE), '(1:1:1:-1:-1:-1)')


class LinearSubspaceTests(SimpleTestCase):
    def test_three_planes_meet_in_one_point(self):
        meet = subspace_intersection(subspace_intersection(PLANE_12_34_56, PLANE_13_24_56), PLANE_14_23_56)
        self.assertEqual(meet.dim, 0)
        self.assertEqual(meet.basis[0], ProjPoint.of(0, 0, 0, 0, 1, -1))

    def test_self_intersection(self):
        self.assertEqual(PLANE_12_34_56.intersection(PLANE_12_34_56), PLANE_12_34_56)

    def test_membership(self):
        self.assertTrue(subspace_contains(PLANE_12_34_56, ProjPoint.of(1, -1, 1, -1, 1, -1)))
        self.assertFalse(subspace_contains(PLANE_12_34_56, NODE))

    def test_plane_dimension(self):
        self.assertEqual(PLANE_12_34_56.dim, 2)
        self.assertEqual(PLANE_12_34_56.ambient_dim, 5)

    def test_canonical_is_basis_independent(self):
        points = [ProjPoint.of(1, -1, 0, 0, 0, 0), ProjPoint.of(0, 0, 1, -1, 0, 0), ProjPoint.of(0, 0, 0, 0, 1, -1)]
        shuffled = [ProjPoint.of(1, -1, 1, -1, 0, 0), points[1], ProjPoint.of(2, -2, 0, 0, 3, -3)]
        self.assertEqual(LinearSubspace.span(points), LinearSubspace.span(shuffled))
        self.assertEqual(LinearSubspace.span(points), PLANE_12_34_56)
        again = LinearSubspace.span(ProjPoint(row) for row in PLANE_12_34_56.canonical)
        self.assertEqual(again.canonical, PLANE_12_34_56.canonical)

    def test_ambient_mismatch(self):
        with self.assertRaises(DimensionMismatch):
            PLANE_12_34_56.contains(ProjPoint.of(1, 0, 0, 0, 0))
        small = LinearSubspace([ProjPoint.of(1, 0, 0, 0, 0)])
        with self.assertRaises(DimensionMismatch):
            PLANE_12_34_56.intersection(small)

    def test_dependent_basis_rejected(self):
        with self.assertRaises(ValueError):
            LinearSubspace([NODE, NODE.scaled(2)])


class PolynomialEvaluationTests(SimpleTestCase):
    def test_cubic_vanishes_at_node(self):
        self.assertEqual(poly_eval(CUBIC, NODE), 0)

    def test_single_monomial(self):
        self.assertEqual(poly_eval(LINEAR, ProjPoint.of(1, 0, 0, 0, 0, 0)), 1)

    def test_direct_sum(self):
        self.assertEqual(poly_eval(CUBIC, ProjPoint.of(1, 1, 1, 1, 1, -1)), 4)

    def test_length_mismatch(self):
        with self.assertRaises(DimensionMismatch):
            poly_eval(CUBIC, ProjPoint.of(1, 1, 1, 1, 1))


class SubstitutionTests(SimpleTestCase):
    def test_plane_lies_on_cubic(self):
        images = [X1, -X1, X3, -X3, X5, -X5]
        self.assertTrue(poly_substitute_linear(CUBIC, images).is_zero())

    def test_identity_substitution(self):
        self.assertEqual(poly_substitute_linear(CUBIC, X), CUBIC)

    def test_eliminating_x3(self):
        p = X1 ** 3 + X2 ** 3 + X3 ** 3
        images = [X1, X2, -X1 - X2, X4, X5, X6]
        expected = -3 * X1 ** 2 * X2 - 3 * X1 * X2 ** 2
        self.assertEqual(poly_substitute_linear(p, images), expected)

    def test_images_may_use_other_variables(self):
        t = [MultiPoly.variable(i, 2) for i in (1, 2)]
        restricted = poly_substitute_linear(LINEAR, [t[0], -t[0], t[1], -t[1], t[0], -t[0]])
        self.assertTrue(restricted.is_zero())
        self.assertEqual(restricted.nvars, 2)

    def test_arity_mismatch(self):
        with self.assertRaises(DimensionMismatch):
            poly_substitute_linear(CUBIC, X[:5])

    def test_nonlinear_image(self):
        with self.assertRaises(NotLinearError):
            poly_substitute_linear(CUBIC, [X1 * X1] + X[1:])


class IdentityTests(SimpleTestCase):
    def test_sum_of_cubes_factorization(self):
        lhs = X1 ** 3 + X2 ** 3 + X3 ** 3 - (X1 + X2 + X3) ** 3
        rhs = -3 * (X1 + X2) * (X1 + X3) * (X2 + X3)
        self.assertTrue(verify_identity(lhs, rhs))
        self.assertEqual(sympy.expand(to_sympy(lhs) - to_sympy(rhs)), 0)

    def test_reflexive(self):
        self.assertTrue(verify_identity(CUBIC, CUBIC))

    def test_different_degrees(self):
        self.assertFalse(verify_identity(LINEAR, CUBIC))

    def test_variable_count_mismatch(self):
        with self.assertRaises(DimensionMismatch):
            verify_identity(LINEAR, MultiPoly.power_sum(1, 5))

    def test_expansion_matches_sympy(self):
        p = (X1 - 2 * X4 + Fraction(1, 3) * X6) ** 3
        self.assertEqual(to_sympy(p), sympy.expand((SYMBOLS[0] - 2 * SYMBOLS[3] + sympy.Rational(1, 3) * SYMBOLS[5]) ** 3))


class JacobianTests(SimpleTestCase):
    system = (LINEAR, CUBIC)

    def test_node_drops_rank(self):
        self.assertEqual(jacobian_rank(self.system, NODE), 1)

    def test_smooth_point(self):
        pt = ProjPoint.of(1, -1, 2, -2, 3, -3)
        self.assertEqual(jacobian_rank(self.system, pt), 2)
        oracle = sympy.Matrix([[1] * 6, [3 * int(c) ** 2 for c in pt.coords]]).rank()
        self.assertEqual(oracle, 2)

    def test_linear_system(self):
        self.assertEqual(jacobian_rank([X1], ProjPoint.of(0, 1, 0, 0, 0, 0)), 1)

    def test_point_off_variety(self):
        with self.assertRaises(NotOnVarietyError):
            jacobian_rank(self.system, ProjPoint.of(1, 0, 0, 0, 0, 0))

    def test_rank_invariant_under_scaling(self):
        for factor in (Fraction(7, 3), -5, Fraction(-1, 9)):
            self.assertEqual(jacobian_rank(self.system, NODE.scaled(factor)), 1)

    def test_hessian_restricted_to_hyperplane(self):
        hessian = hessian_matrix(CUBIC, NODE)
        self.assertEqual([hessian[i][i] for i in range(6)], [6, 6, 6, -6, -6, -6])
        hyperplane = nullspace([[1] * 6], 6)
        self.assertEqual(restricted_form_rank(hessian, hyperplane), 4)


class RingAxiomTests(SimpleTestCase):
    def test_distributivity_on_random_inputs(self):
        rng = random.Random(11)
        for _ in range(40):
            p, q, r = (random_poly(rng) for _ in range(3))
            self.assertEqual((p + q) * r, p * r + q * r)
            self.assertEqual(p * q, q * p)

    def test_homogeneity(self):
        rng = random.Random(12)
        v = [3, -1, 2, 0, 5, -4]
        for _ in range(20):
            lam = random_rational(rng) or Fraction(1)
            scaled = [lam * x for x in v]
            self.assertEqual(poly_eval(CUBIC, scaled), lam ** 3 * poly_eval(CUBIC, v))

    def test_no_zero_coefficients_stored(self):
        p = X1 - X1 + X2
        self.assertEqual(list(p.terms), [(0, 1, 0, 0, 0, 0)])
