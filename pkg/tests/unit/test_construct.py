from __future__ import annotations

import unittest
from fractions import Fraction

from vanishing_averages.characterize import CertificateKind, decide_vanishing
from vanishing_averages.construct import (
    alternating_walsh_dimension,
    complete_expansion,
    construct_solution,
    construct_symmetric_solution,
    exact_rank,
    random_symmetric_walsh,
    random_walsh_alternating,
)
from vanishing_averages.errors import InvalidInputError
from vanishing_averages.exact import RationalComplex
from vanishing_averages.oracle import brute_force_vanishes, symmetric_family_check
from vanishing_averages.stepfn import (
    AlphaVector,
    constant_function,
    extend,
    full_mask,
    is_alternating,
    is_symmetric,
    subset,
)
from vanishing_averages.symmetric import decide_symmetric_vanishing
from vanishing_averages.walsh import expand, is_walsh, reconstruct

from .utils import ANTISYMMETRIC_3, step

THIRDS = AlphaVector.of("1/3", "2/3")
QUARTERS = AlphaVector.of("1/4", "1/4", "1/2")
G3 = step(1, 3, 1, 0, -1)


class TestRandomWalsh(unittest.TestCase):
    def test_empty_space(self):
        self.assertEqual(0, alternating_walsh_dimension(2, 2))
        with self.assertRaisesRegex(InvalidInputError, r"C\(1,2\) = 0, need n >= 3"):
            random_walsh_alternating(2, 2, subset(1, 2), 0)

    def test_empty_subset(self):
        with self.assertRaises(InvalidInputError):
            random_walsh_alternating(2, 3, 0, 0)

    def test_one_dimensional_space(self):
        g = random_walsh_alternating(2, 3, subset(1, 2), 11)
        self.assertFalse(g.is_zero())
        self.assertEqual(1, exact_rank([g.flat(), ANTISYMMETRIC_3]))

    def test_seeded(self):
        first = random_walsh_alternating(3, 4, subset(1, 3), 42)
        self.assertEqual(first, random_walsh_alternating(3, 4, subset(1, 3), 42))
        self.assertTrue(is_walsh(first, subset(1, 3)))
        self.assertTrue(is_alternating(first, subset(1, 3)))

    def test_draws_span_the_space(self):
        draws = [random_walsh_alternating(2, 4, subset(1, 2), seed).flat() for seed in range(10)]
        self.assertEqual(alternating_walsh_dimension(4, 2), exact_rank(draws))

    def test_symmetric_walsh(self):
        g = random_symmetric_walsh(3, 2, 5)
        self.assertTrue(is_symmetric(g))
        self.assertTrue(is_walsh(g, full_mask(3)))
        with self.assertRaises(InvalidInputError):
            random_symmetric_walsh(2, 1, 5)


class TestCompleteExpansion(unittest.TestCase):
    def test_univariate_profiles(self):
        expansion = complete_expansion({subset(2): extend(G3, 2, [2])}, THIRDS)
        self.assertTrue(expansion[0].is_zero())
        self.assertEqual(extend(G3, 2, [1]).scale(Fraction(1, 2)), expansion[subset(1)])
        self.assertTrue(decide_vanishing(reconstruct(expansion), THIRDS).holds)

    def test_empty_top(self):
        self.assertTrue(reconstruct(complete_expansion({}, THIRDS, 3)).is_zero())
        with self.assertRaises(InvalidInputError):
            complete_expansion({}, THIRDS)

    def test_rejects_bad_components(self):
        with self.assertRaisesRegex(InvalidInputError, "not a Walsh function"):
            complete_expansion({subset(2): constant_function(2, 3, 1)}, THIRDS)
        halves = AlphaVector.of("1/2", "1/2")
        with self.assertRaisesRegex(InvalidInputError, "not alternating"):
            complete_expansion({subset(1, 2): step(2, 2, 1, -1, -1, 1)}, halves)
        with self.assertRaisesRegex(InvalidInputError, "do not contain 2"):
            complete_expansion({subset(1): extend(G3, 2, [1])}, THIRDS)
        with self.assertRaises(InvalidInputError):
            complete_expansion({}, AlphaVector.of("1/4", "1/4"), 4)

    def test_round_trip(self):
        f = construct_solution(3, 4, QUARTERS, 7)
        expansion = expand(f)
        top = {mask: expansion[mask] for mask in range(8) if mask & subset(3)}
        completed = complete_expansion(top, QUARTERS)
        for mask in range(8):
            with self.subTest(mask=mask):
                self.assertEqual(expansion[mask], completed[mask])


class TestConstructSolution(unittest.TestCase):
    def test_solutions_satisfy_the_property(self):
        cases = [(2, 3, THIRDS), (2, 4, AlphaVector.of("1/2", "1/2")), (3, 4, QUARTERS)]
        for m, n, alpha in cases:
            for seed in (0, 1, 99):
                with self.subTest(m=m, n=n, seed=seed):
                    f = construct_solution(m, n, alpha, seed)
                    self.assertFalse(f.is_zero())
                    self.assertTrue(decide_vanishing(f, alpha).holds)

    def test_oracle_agrees(self):
        f = construct_solution(2, 3, THIRDS, 3)
        self.assertTrue(brute_force_vanishes(f, THIRDS, refine=[1, 2]).all_zero)
        f = construct_solution(3, 4, QUARTERS, 3)
        self.assertTrue(brute_force_vanishes(f, QUARTERS, refine=[1]).all_zero)

    def test_deterministic(self):
        self.assertEqual(construct_solution(2, 3, THIRDS, 8), construct_solution(2, 3, THIRDS, 8))

    def test_univariate_mutant(self):
        f = construct_solution(2, 3, THIRDS, 4) + extend(G3, 2, [1])
        certificate = decide_vanishing(f, THIRDS).certificate
        self.assertEqual(CertificateKind.LEVEL_RELATION, certificate.kind)
        self.assertEqual(subset(1), certificate.subset)
        self.assertEqual(2, certificate.ell)
        self.assertFalse(brute_force_vanishes(f, THIRDS, refine=[1]).all_zero)

    def test_symmetric_mutant(self):
        f = construct_solution(2, 3, THIRDS, 4) + step(2, 3, 1, 0, -1, 0, 0, 0, -1, 0, 1)
        certificate = decide_vanishing(f, THIRDS).certificate
        self.assertEqual(CertificateKind.NOT_ALTERNATING, certificate.kind)
        self.assertEqual(subset(1, 2), certificate.subset)

    def test_preconditions(self):
        with self.assertRaises(InvalidInputError):
            construct_solution(2, 2, THIRDS, 0)
        with self.assertRaises(InvalidInputError):
            construct_solution(3, 3, THIRDS, 0)
        with self.assertRaises(InvalidInputError):
            construct_solution(2, 4, AlphaVector.of("1/4", "1/4"), 0)


class TestConstructSymmetric(unittest.TestCase):
    def test_odd_levels(self):
        f = construct_symmetric_solution(6, 3, Fraction(1, 2), 2, 0)
        self.assertFalse(f.is_zero())
        self.assertTrue(is_symmetric(f))
        self.assertTrue(decide_symmetric_vanishing(f, 3, Fraction(1, 2)).holds)
        expansion = expand(f)
        for k in (0, 2, 4, 6):
            self.assertTrue(expansion[full_mask(k)].is_zero())

    def test_oracle_agrees(self):
        f = construct_symmetric_solution(3, 1, Fraction(2, 3), 3, 1)
        self.assertTrue(symmetric_family_check(f, 1, Fraction(2, 3)).all_zero)

    def test_empty_levels(self):
        with self.assertRaisesRegex(InvalidInputError, "only the zero function satisfies the condition"):
            construct_symmetric_solution(3, 1, Fraction(1, 2), 2, 0)

    def test_incompatible_resolution(self):
        with self.assertRaises(InvalidInputError):
            construct_symmetric_solution(3, 1, Fraction(2, 3), 2, 0)


class TestExactRank(unittest.TestCase):
    def test_examples(self):
        self.assertEqual(0, exact_rank([]))
        self.assertEqual(2, exact_rank([[1, 0], [0, 1], [1, 1]]))
        self.assertEqual(1, exact_rank([[0, 0], [Fraction(1, 2), 3]]))

    def test_complex_entries(self):
        i = RationalComplex(0, 1)
        self.assertEqual(1, exact_rank([[1, i], [i, -1]]))
