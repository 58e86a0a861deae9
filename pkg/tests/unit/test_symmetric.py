from __future__ import annotations

import unittest
from fractions import Fraction

from hypothesis import given, settings

from vanishing_averages.characterize import CertificateKind, decide_vanishing
from vanishing_averages.errors import InvalidInputError
from vanishing_averages.oracle import enumerate_partitions, family_integral
from vanishing_averages.stepfn import AlphaVector, constant_function, extend, symmetrize, zero_function
from vanishing_averages.symmetric import (
    compute_K,
    decide_symmetric_function,
    decide_symmetric_vanishing,
    family_integral_by_levels,
    level_coefficient,
)

from .utils import step, step_functions

H3 = step(1, 3, 1, 0, -1)


def level_one(m, n, h):
    """
    sum over i of h(x_i)
    """
    total = zero_function(m, n)
    for coord in range(1, m + 1):
        total = total + extend(h, m, [coord])
    return total


class TestCoefficients(unittest.TestCase):
    def test_values(self):
        self.assertEqual(Fraction(1), level_coefficient(4, 2, Fraction(1, 3), 0))
        self.assertEqual(Fraction(-3), level_coefficient(6, 3, Fraction(1, 2), 2))
        self.assertEqual(Fraction(-11, 8), level_coefficient(6, 3, Fraction(1, 3), 3))
        self.assertEqual(Fraction(0), level_coefficient(6, 3, "1/2", 5))

    def test_k_sets(self):
        self.assertEqual((1, 3, 5), compute_K(6, 3, Fraction(1, 2)).members)
        self.assertEqual((1,), compute_K(3, 1, Fraction(2, 3)).members)
        self.assertEqual((), compute_K(3, 1, Fraction(1, 2)).members)
        self.assertEqual(Fraction(1), compute_K(3, 1, Fraction(1, 2)).coefficient(0))

    def test_single_complement_factor(self):
        for m in range(2, 7):
            for k in range(1, m):
                with self.subTest(m=m, k=k):
                    self.assertEqual((k,), compute_K(m, 1, Fraction(m - k, m)).members)

    def test_balanced_halves(self):
        for r in range(1, 5):
            with self.subTest(m=2 * r):
                self.assertEqual(tuple(range(1, 2 * r + 1, 2)), compute_K(2 * r, r, Fraction(1, 2)).members)

    def test_no_complement_factor(self):
        # c_k = C(m, k) > 0
        self.assertEqual((), compute_K(4, 0, Fraction(1, 3)).members)

    def test_family_checked(self):
        for m, r, alpha in ((0, 0, "1/2"), (3, 4, "1/2"), (3, 1, "0"), (3, 1, "1")):
            with self.subTest(m=m, r=r, alpha=alpha):
                with self.assertRaises(InvalidInputError):
                    compute_K(m, r, alpha)
        with self.assertRaises(InvalidInputError):
            level_coefficient(3, 1, "1/2", 4)


class TestDecideSymmetricVanishing(unittest.TestCase):
    def test_zero(self):
        self.assertTrue(decide_symmetric_vanishing(zero_function(3, 2), 1, Fraction(1, 2)).holds)

    def test_mean(self):
        certificate = decide_symmetric_vanishing(constant_function(2, 2, 3), 1, Fraction(1, 2)).certificate
        self.assertEqual(CertificateKind.NONZERO_LEVEL, certificate.kind)
        self.assertEqual(0, certificate.level)

    def test_first_level(self):
        f = level_one(3, 3, H3)
        self.assertTrue(decide_symmetric_vanishing(f, 1, Fraction(2, 3)).holds)
        certificate = decide_symmetric_vanishing(f, 1, Fraction(1, 3)).certificate
        self.assertEqual(CertificateKind.NONZERO_LEVEL, certificate.kind)
        self.assertEqual(1, certificate.level)
        self.assertEqual(1, certificate.subset)

    def test_preconditions(self):
        with self.assertRaises(InvalidInputError):
            decide_symmetric_vanishing(step(2, 2, 1, 2, 3, 4), 1, Fraction(1, 2))
        with self.assertRaises(InvalidInputError):
            decide_symmetric_vanishing(zero_function(2, 3), 1, Fraction(1, 2))

    def test_identity_by_levels(self):
        f = symmetrize(step(3, 3, *[(7 * i + 3) % 10 - 4 for i in range(27)]))
        for count in (1, 2):
            for partition in enumerate_partitions(3, [count]):
                for r in range(4):
                    with self.subTest(labels=partition.labels, r=r):
                        self.assertEqual(family_integral(f, r, partition), family_integral_by_levels(f, r, partition))


class TestSymmetricFunction(unittest.TestCase):
    def test_unequal_measures(self):
        alpha = AlphaVector.of("1/3", "2/3")
        f = level_one(2, 3, H3)
        verdict = decide_symmetric_function(f, alpha)
        self.assertFalse(verdict.holds)
        # F_1 / (1/3) - F_2 swapped / (2/3) = (3/2) h(x)
        self.assertEqual(CertificateKind.LEVEL_RELATION, verdict.certificate.kind)
        self.assertEqual((1, 2), (verdict.certificate.subset, verdict.certificate.ell))
        self.assertEqual(Fraction(3, 2), verdict.certificate.value)
        self.assertEqual(decide_vanishing(f, alpha), verdict)
        # u(x) u(y) with u = (1, -1, 0) is symmetric at level 2
        pair = decide_symmetric_function(step(2, 3, 1, -1, 0, -1, 1, 0, 0, 0, 0), alpha).certificate
        self.assertEqual(CertificateKind.NOT_ALTERNATING, pair.kind)
        self.assertEqual(3, pair.subset)
        self.assertTrue(decide_symmetric_function(zero_function(2, 3), alpha).holds)

    def test_equal_measures(self):
        # g(x) + g(y) vanishes against halves
        self.assertTrue(decide_symmetric_function(step(2, 2, 2, 0, 0, -2), AlphaVector.of("1/2", "1/2")).holds)

    def test_requires_symmetric(self):
        with self.assertRaises(InvalidInputError):
            decide_symmetric_function(step(2, 2, 1, 2, 3, 4), AlphaVector.of("1/2", "1/2"))

    @settings(deadline=None, max_examples=30)
    @given(step_functions(fixed_m=2, fixed_n=3))
    def test_agrees_with_general_decision(self, f):
        g = symmetrize(f)
        alpha = AlphaVector.of("1/3", "2/3")
        self.assertEqual(decide_vanishing(g, alpha).holds, decide_symmetric_function(g, alpha).holds)
