from __future__ import annotations

import unittest
from fractions import Fraction

from hypothesis import given, settings

from vanishing_averages.errors import InvalidInputError
from vanishing_averages.exact import RationalComplex
from vanishing_averages.stepfn import (
    AlphaVector,
    alternation_defect,
    antisymmetrize,
    complement,
    constant_function,
    depends_only_on,
    extend,
    fiber,
    inner_product,
    is_alternating,
    is_symmetric,
    linear_combine,
    make_step_function,
    marginalize,
    members,
    permute_coords,
    permutation_sign,
    submasks,
    subset,
    swap_coords,
    symmetrize,
    zero_function,
)

from .utils import ANTISYMMETRIC_3, same_shape_pairs, step, step_functions

F = step(2, 2, 1, 2, 3, 4)


class TestMasks(unittest.TestCase):
    def test_helpers(self):
        self.assertEqual(5, subset(1, 3))
        self.assertEqual((2, 3), members(6))
        self.assertEqual([0, 1, 4, 5], list(submasks(5)))
        self.assertEqual(6, complement(1, 3))

    def test_permutation_sign(self):
        self.assertEqual(1, permutation_sign([1, 2, 3]))
        self.assertEqual(-1, permutation_sign([2, 1, 3]))
        self.assertEqual(1, permutation_sign([2, 3, 1]))

    def test_coordinates_are_one_based(self):
        with self.assertRaises(InvalidInputError):
            subset(0)


class TestAlphaVector(unittest.TestCase):
    def test_sum_above_one(self):
        with self.assertRaisesRegex(InvalidInputError, "alpha sums to 3/2 > 1"):
            AlphaVector.of("1/2", "1/2", "1/2")

    def test_entries_strictly_inside_unit_interval(self):
        for entry in ("0", "1", "-1/2"):
            with self.subTest(entry=entry):
                with self.assertRaises(InvalidInputError):
                    AlphaVector.of(entry)

    def test_resolution(self):
        alpha = AlphaVector.of("1/3", "2/3")
        self.assertTrue(alpha.is_complete())
        self.assertEqual(Fraction(2, 9), alpha.product(3))
        self.assertEqual(Fraction(1), alpha.product(0))
        self.assertFalse(alpha.is_compatible(2))
        with self.assertRaisesRegex(InvalidInputError, "incompatible with resolution 2"):
            alpha.check_resolution(2)
        self.assertEqual([2, 4], alpha.cell_counts(6))

    def test_incomplete(self):
        alpha = AlphaVector.of("1/4", "1/4")
        self.assertFalse(alpha.is_complete())
        self.assertEqual(Fraction(1, 2), alpha.total)


class TestStepFunction(unittest.TestCase):
    def test_value_count(self):
        with self.assertRaisesRegex(InvalidInputError, "expected 4 values for m=2, n=2, got 3"):
            step(2, 2, 1, 2, 3)

    def test_row_major_order(self):
        self.assertEqual(RationalComplex(2), F((0, 1)))
        self.assertEqual(RationalComplex(3), F((1, 0)))
        self.assertEqual([1, 2, 3, 4], F.flat())

    def test_cell_out_of_range(self):
        with self.assertRaises(InvalidInputError):
            F((0, 2))

    def test_values_are_read_only(self):
        with self.assertRaises(ValueError):
            F.values[0, 0] = RationalComplex(9)

    def test_arithmetic(self):
        self.assertEqual(step(2, 2, 2, 4, 6, 8), F + F)
        self.assertTrue((F - F).is_zero())
        self.assertEqual(step(2, 2, 3, 6, 9, 12), F.scale(3))
        self.assertEqual(Fraction(5, 2), F.total())
        with self.assertRaises(InvalidInputError):
            F + zero_function(2, 3)

    def test_first_nonzero(self):
        self.assertEqual((1, 0), step(2, 2, 0, 0, 5, 0).first_nonzero())
        self.assertIsNone(zero_function(2, 2).first_nonzero())

    def test_refine(self):
        g = step(1, 2, 1, 2)
        self.assertEqual(step(1, 4, 1, 1, 2, 2), g.refine(2))
        self.assertEqual(F.total(), F.refine(3).total())


class TestCoordinateOperations(unittest.TestCase):
    def test_marginalize(self):
        self.assertEqual(step(2, 2, "3/2", "3/2", "7/2", "7/2"), marginalize(F, subset(2)))
        self.assertEqual(step(2, 2, 2, 3, 2, 3), marginalize(F, subset(1)))
        self.assertEqual(constant_function(2, 2, "5/2"), marginalize(F, subset(1, 2)))
        self.assertIs(F, marginalize(F, 0))

    def test_fiber(self):
        self.assertEqual(step(2, 2, 3, 4, 3, 4), fiber(F, subset(1), {1: 1}))
        self.assertEqual(constant_function(2, 2, 2), fiber(F, subset(1, 2), {1: 0, 2: 1}))

    def test_fiber_coordinates_must_match(self):
        with self.assertRaises(InvalidInputError):
            fiber(F, subset(1), {2: 0})
        with self.assertRaises(InvalidInputError):
            fiber(F, subset(1), {})

    def test_swap_and_permute(self):
        self.assertEqual(step(2, 2, 1, 3, 2, 4), swap_coords(F, 1, 2))
        self.assertEqual(swap_coords(F, 1, 2), permute_coords(F, [2, 1]))
        with self.assertRaises(InvalidInputError):
            permute_coords(F, [1, 1])

    def test_alternating(self):
        antisymmetric = step(2, 3, *ANTISYMMETRIC_3)
        self.assertTrue(is_alternating(antisymmetric, subset(1, 2)))
        self.assertFalse(is_alternating(constant_function(2, 2, 1), subset(1, 2)))
        self.assertTrue(is_alternating(F, subset(1)))
        self.assertTrue(is_alternating(F, 0))

    def test_alternation_defect(self):
        self.assertEqual(((1, 2), (0, 0)), alternation_defect(constant_function(2, 2, 1), subset(1, 2)))
        self.assertIsNone(alternation_defect(step(2, 3, *ANTISYMMETRIC_3), subset(1, 2)))

    def test_antisymmetrize(self):
        expected = step(2, 2, 0, "-1/2", "1/2", 0)
        self.assertEqual(expected, antisymmetrize(F, subset(1, 2)))
        self.assertEqual(expected, antisymmetrize(expected, subset(1, 2)))

    def test_symmetrize(self):
        symmetric = symmetrize(F)
        self.assertEqual(step(2, 2, 1, "5/2", "5/2", 4), symmetric)
        self.assertTrue(is_symmetric(symmetric))
        self.assertFalse(is_symmetric(F))

    def test_depends_only_on(self):
        g = step(2, 2, 1, 1, 2, 2)
        self.assertTrue(depends_only_on(g, subset(1)))
        self.assertFalse(depends_only_on(g, subset(2)))

    def test_extend(self):
        g = step(1, 2, 1, -1)
        self.assertEqual(step(2, 2, 1, -1, 1, -1), extend(g, 2, [2]))
        h = extend(F, 3, [3, 1])
        # h(x1, x2, x3) = F(x3, x1)
        self.assertEqual(F((1, 0)), h((0, 1, 1)))
        self.assertEqual(F((0, 1)), h((1, 0, 0)))
        with self.assertRaises(InvalidInputError):
            extend(F, 3, [1, 1])

    def test_linear_combine(self):
        one = step(1, 1, 1)
        self.assertEqual(step(1, 1, 5), linear_combine([2, 3], [one, one]))
        self.assertTrue(linear_combine([1, -1], [F, F]).is_zero())
        self.assertEqual(F, linear_combine([1], [F]))
        with self.assertRaises(InvalidInputError):
            linear_combine([1, 2], [F])

    def test_inner_product(self):
        g = make_step_function(1, 2, [RationalComplex(0, 1), RationalComplex(1)])
        self.assertEqual(RationalComplex(1), inner_product(g, g))
        self.assertEqual(RationalComplex(0), inner_product(step(1, 2, 1, -1), step(1, 2, 1, 1)))


class TestProperties(unittest.TestCase):
    @settings(deadline=None, max_examples=50)
    @given(step_functions(min_m=2, max_m=3))
    def test_fubini(self, f):
        self.assertEqual(marginalize(f, subset(1, 2)), marginalize(marginalize(f, subset(1)), subset(2)))

    @settings(deadline=None, max_examples=50)
    @given(step_functions(min_m=2, max_m=3, min_n=2))
    def test_antisymmetrize_projects(self, f):
        mask = subset(1, 2)
        g = antisymmetrize(f, mask)
        self.assertTrue(is_alternating(g, mask))
        self.assertEqual(g, antisymmetrize(g, mask))
        for cell in g.cells():
            if cell[0] == cell[1]:
                self.assertTrue(g(cell).is_zero())

    @settings(deadline=None, max_examples=50)
    @given(step_functions(min_m=2, max_m=3))
    def test_swap_keeps_total(self, f):
        self.assertEqual(f.total(), swap_coords(f, 1, 2).total())

    @settings(deadline=None, max_examples=50)
    @given(same_shape_pairs())
    def test_linearity(self, pair):
        f, g = pair
        combined = linear_combine([2, -3], [f, g])
        mask = subset(1)
        self.assertEqual(
            linear_combine([2, -3], [marginalize(f, mask), marginalize(g, mask)]), marginalize(combined, mask)
        )
        self.assertEqual(
            linear_combine([2, -3], [symmetrize(f), symmetrize(g)]), symmetrize(combined)
        )
