"""Tests for the koszul module."""

import unittest
from unittest.mock import patch

from ginlex.groebner import GenericityError, MonomialIdeal
from ginlex.idealfile import parse_ideal
from ginlex.koszul import (
    DependentFormsError,
    GradedQuotientBasis,
    KoszulHomology,
    LinearFormSequence,
    default_j_bound,
    first_betti_numbers,
    graded_betti,
    is_componentwise_linear_by_definition,
    is_proper_sequence,
    koszul_betti,
    koszul_betti_tensor,
    recursion_check,
    recursion_failures,
)
from ginlex.polynomials import DimensionError, Polynomial
from ginlex.stable import BoundError, ah_koszul_betti, ek_betti


def polys(text, n=3):
    header = "vars: " + " ".join(f"x{i}" for i in range(1, n + 1))
    return parse_ideal(header + "\n" + text.replace(",", "\n"))


STABLE = "x1^2, x1*x2, x2^2, x1*x3^2"
QUADRICS = "x1^2 - x2*x3, x2^2 - x1*x3"


class TestLinearForms(unittest.TestCase):
    """Tests for LinearFormSequence."""

    def test_dependent_forms_rejected(self):
        """Repeating a form raises DependentFormsError."""
        x1 = Polynomial.variable(1, 3)
        with self.assertRaises(DependentFormsError):
            LinearFormSequence.explicit([x1, x1.scale(2)])

    def test_nonlinear_form_rejected(self):
        """A quadric is not a linear form."""
        x1 = Polynomial.variable(1, 3)
        with self.assertRaises(DependentFormsError):
            LinearFormSequence.explicit([x1 * x1])

    def test_generic_forms_are_seeded(self):
        """The same seed draws the same forms."""
        a = LinearFormSequence.generic(2, 3, seed=9)
        self.assertEqual(a.forms, LinearFormSequence.generic(2, 3, seed=9).forms)
        self.assertEqual(a.provenance, "generic")
        self.assertEqual(a.seed, 9)

    def test_last_variables(self):
        """last_variables(2, 3) is x2, x3."""
        forms = LinearFormSequence.last_variables(2, 3)
        self.assertEqual([z.lead for z in forms.forms],
                         [Polynomial.variable(2, 3).lead, Polynomial.variable(3, 3).lead])
        with self.assertRaises(DimensionError):
            LinearFormSequence.last_variables(4, 3)


class TestKoszulHomology(unittest.TestCase):
    """Tests for Koszul homology on strands."""

    def test_quotient_basis(self):
        """Standard monomials of degree 2 modulo (x1^2, x1*x2) number four."""
        quotient = GradedQuotientBasis(polys("x1^2, x1*x2"))
        self.assertEqual(quotient.dim(2), 4)

    def test_h0_is_the_quotient(self):
        """H_0 of the empty sequence is R/I itself."""
        gens = polys(STABLE)
        quotient = GradedQuotientBasis(gens)
        homology = KoszulHomology(quotient, LinearFormSequence.explicit([], 3))
        self.assertEqual(homology.betti(0, 2), quotient.dim(2))

    def test_single_variable_annihilator(self):
        """H_1(x2; R/(x1*x2)) is the annihilator x1 shifted by one."""
        forms = LinearFormSequence.explicit([Polynomial.variable(2, 2)])
        gens = polys("x1*x2", 2)
        self.assertEqual(koszul_betti(gens, forms, 1, 2), 1)
        self.assertEqual(koszul_betti(gens, forms, 1, 3), 1)

    def test_stable_betti_matches_formula(self):
        """Koszul homology on the variables reproduces the EK formula."""
        gens = polys(STABLE)
        self.assertEqual(graded_betti(gens), ek_betti(MonomialIdeal.from_polynomials(gens)))

    def test_complete_intersection(self):
        """Two quadrics resolve as 1, 2 in degree 2, 1 in degree 4."""
        self.assertEqual(graded_betti(polys(QUADRICS)).entries, {(0, 0): 1, (1, 2): 2, (2, 4): 1})

    def test_squares_reach_the_proven_bound(self):
        """(x1^2, x2^2, x3^2) has its last syzygy exactly at the degree bound."""
        gens = polys("x1^2, x2^2, x3^2")
        self.assertEqual(default_j_bound(GradedQuotientBasis(gens)), 6)
        table = graded_betti(gens)
        self.assertEqual(table[(3, 6)], 1)
        self.assertEqual(table[(2, 4)], 3)

    def test_first_betti_numbers(self):
        """Minimal generators of the complete intersection sit in degree 2."""
        self.assertEqual(first_betti_numbers(polys(QUADRICS)), {2: 2})

    def test_zero_ideal(self):
        """The zero ideal has beta_00 = 1 only."""
        self.assertEqual(graded_betti([], 3).entries, {(0, 0): 1})


class TestTensor(unittest.TestCase):
    """Tests for koszul_betti_tensor."""

    def test_full_p_is_graded_betti(self):
        """The p = n slice is the Betti table."""
        gens = polys(QUADRICS)
        tensor = koszul_betti_tensor(gens, 3, seed=2)
        self.assertEqual(tensor.table(3), graded_betti(gens))
        self.assertEqual(tensor.seeds, (2, 3))

    def test_last_variables_give_aramova_herzog(self):
        """For a stable ideal the last variables give the formula values."""
        gens = polys(STABLE)
        I = MonomialIdeal.from_polynomials(gens)
        for p in range(4):
            tensor = koszul_betti_tensor(gens, p, j_bound=9,
                                         forms=LinearFormSequence.last_variables(p, 3))
            self.assertEqual(tensor.table(p), ah_koszul_betti(I, p, j_bound=9))

    def test_p_out_of_range(self):
        """p_max above n raises DimensionError."""
        with self.assertRaises(DimensionError):
            koszul_betti_tensor(polys(STABLE), 4)

    def test_bound_cut_short(self):
        """A bound that cuts a nonzero strand raises BoundError."""
        with self.assertRaises(BoundError):
            koszul_betti_tensor(polys("x1^2, x2^2, x3^2"), 3, j_bound=4)

    @patch("ginlex.koszul._tensor_for")
    def test_disagreeing_forms(self, mock_tensor):
        """Different answers for the two seeds raise GenericityError."""
        mock_tensor.side_effect = [{(0, 0, 0): 1}, {(0, 0, 0): 1, (1, 2, 1): 1}]
        with self.assertRaises(GenericityError) as ctx:
            koszul_betti_tensor(polys(STABLE), 1, seed=5)
        self.assertEqual(len(ctx.exception.candidates), 2)
        self.assertEqual([c.seeds for c in ctx.exception.candidates], [(5,), (6,)])


class TestProperSequences(unittest.TestCase):
    """Tests for proper sequences and the recursions."""

    def test_generic_forms_proper_for_stable_ideal(self):
        """Generic forms are a proper sequence for a strongly stable ideal."""
        gens = polys(STABLE)
        self.assertTrue(is_proper_sequence(LinearFormSequence.generic(3, 3, seed=1), gens))
        self.assertTrue(recursion_check(koszul_betti_tensor(gens, 3, seed=1)))

    def test_generic_forms_not_proper_for_quadrics(self):
        """Generic forms are not proper for two generic quadrics."""
        gens = polys(QUADRICS)
        self.assertFalse(is_proper_sequence(LinearFormSequence.generic(3, 3, seed=1), gens))
        self.assertTrue(recursion_failures(koszul_betti_tensor(gens, 3, seed=1)))

    def test_componentwise_linear_by_definition(self):
        """Components of a stable ideal have linear resolutions; the quadrics do not."""
        self.assertTrue(is_componentwise_linear_by_definition(polys(STABLE)))
        self.assertFalse(is_componentwise_linear_by_definition(polys(QUADRICS)))


if __name__ == "__main__":
    unittest.main()
