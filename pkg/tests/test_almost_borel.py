"""Tests for the almost_borel module."""

import unittest
from unittest.mock import patch

from ginlex.almost_borel import (
    ConstructionError,
    NotAlmostBorelFixedError,
    betti_poset,
    construct_almost_borel,
    enumerate_gins,
    gin_for_order,
    initial_choices,
    lex_proximity,
    lower_neighbors,
    recognize,
    selection_feasibility,
)
from ginlex.groebner import MonomialIdeal, gin
from ginlex.idealfile import parse_ideal
from ginlex.polynomials import LEX, REVLEX, Monomial, TermOrder
from ginlex.stable import lex_ideal, lex_segment_space


def polys(text, n=3):
    header = "vars: " + " ".join(f"x{i}" for i in range(1, n + 1))
    return parse_ideal(header + "\n" + text.replace(",", "\n"))


def monomials(text, n=3):
    return [g.lead for g in polys(text, n)]


def ideal(text, n=3):
    return MonomialIdeal(monomials(text, n), n)


QUADRICS = "x1^2, x1*x2, x1*x3 + x2^2"


class TestRecognize(unittest.TestCase):
    """Tests for recognize and lower_neighbors."""

    def test_lower_neighbors(self):
        """Below (x1^2, x1*x2) in degree 2 sit x2^2 and x1*x3."""
        self.assertEqual(lower_neighbors(monomials("x1^2, x1*x2")),
                         frozenset(monomials("x2^2, x1*x3")))

    def test_lower_neighbors_of_empty_set(self):
        """The empty set has the single lower neighbor x1^d."""
        self.assertEqual(lower_neighbors([], 2, 3), frozenset(monomials("x1^2")))

    def test_split_in_every_degree(self):
        """The two-gin quadrics split with A_2 = {x1^2, x1*x2} and one form."""
        abf = recognize(polys(QUADRICS))
        component = abf.component(2)
        self.assertEqual(component.A, frozenset(monomials("x1^2, x1*x2")))
        self.assertEqual(len(component.V), 1)
        self.assertEqual(component.support, frozenset(monomials("x1*x3, x2^2")))
        self.assertEqual(abf.polynomial_degrees, [2, 3, 4])
        self.assertEqual(abf.component(3).A, frozenset(monomials(
            "x1^3, x1^2*x2, x1^2*x3, x1*x2^2, x1*x2*x3, x2^3")))

    def test_not_borel_fixed(self):
        """(x2^2) fails with the offending degree and monomial."""
        with self.assertRaises(NotAlmostBorelFixedError) as ctx:
            recognize(polys("x2^2"))
        self.assertEqual(ctx.exception.degree, 2)
        self.assertEqual(ctx.exception.witness, Monomial((0, 2, 0)))

    def test_form_outside_neighbors(self):
        """A form reaching past the lower neighbors is rejected."""
        with self.assertRaises(NotAlmostBorelFixedError):
            recognize(polys("x1^2 + x2^2"))

    def test_monomial_ideal_has_no_forms(self):
        """A Borel-fixed ideal is almost Borel-fixed with empty V."""
        self.assertTrue(recognize(polys("x1^2, x1*x2, x2^2")).is_borel_fixed())


class TestConstruction(unittest.TestCase):
    """Tests for construct_almost_borel."""

    def test_quadric_construction(self):
        """T = {x1*x3, x2^2} gives A = {x1^2, x1*x2} and one form."""
        abf = construct_almost_borel(monomials("x1*x3, x2^2"))
        self.assertEqual(abf.component(2).A, frozenset(monomials("x1^2, x1*x2")))
        self.assertEqual(len(abf.component(2).V), 1)
        self.assertIn(2, abf.polynomial_degrees)

    def test_comparable_monomials_rejected(self):
        """Borel-comparable T raises ConstructionError."""
        with self.assertRaises(ConstructionError):
            construct_almost_borel(monomials("x1*x2, x2^2"))

    def test_mixed_degrees_rejected(self):
        """T of mixed degree raises ConstructionError."""
        with self.assertRaises(ConstructionError):
            construct_almost_borel(monomials("x1*x3, x2^3"))

    def test_blocks_must_partition(self):
        """Blocks that miss a monomial raise ConstructionError."""
        T = monomials("x1*x3, x2^2")
        with self.assertRaises(ConstructionError):
            construct_almost_borel(T, [T[:1]])

    def test_b_must_contain_shadow(self):
        """A B set below X R_1 raises ConstructionError."""
        with self.assertRaises(ConstructionError):
            construct_almost_borel(monomials("x1*x3, x2^2"), B=monomials("x1^3"))


class TestGinFamily(unittest.TestCase):
    """Tests for enumerate_gins and its reports."""

    def setUp(self):
        self.abf = recognize(polys(QUADRICS))
        self.family = enumerate_gins(self.abf)

    def test_two_gins(self):
        """The quadrics have a revlex-type and a lex-type gin."""
        ideals = {member.ideal for member in self.family.members}
        self.assertEqual(ideals, {ideal("x1^2, x1*x2, x2^2"), ideal("x1^2, x1*x2, x1*x3, x2^3")})
        self.assertEqual([m.label for m in self.family.members], ["G1", "G2"])

    def test_mixed_choices_infeasible(self):
        """Choosing x1*x3 in degree 2 and x2^2*x3 in degree 3 needs no weight."""
        self.assertTrue(self.family.infeasible)
        outcome = selection_feasibility(self.abf, {2: monomials("x1*x3"), 3: monomials("x2^2*x3")})
        self.assertFalse(outcome.feasible)
        self.assertTrue(outcome.certificate)

    def test_choices_per_degree(self):
        """Each one-form degree offers two initial terms."""
        self.assertEqual(len(initial_choices(self.abf.component(2), 3)), 2)

    def test_orders_pick_members(self):
        """revlex and lex land on different members; a tied weight follows revlex."""
        revlex = self.family.index_of(gin_for_order(self.abf, REVLEX))
        lex = self.family.index_of(gin_for_order(self.abf, LEX))
        self.assertIsNotNone(revlex)
        self.assertIsNotNone(lex)
        self.assertNotEqual(revlex, lex)
        tied = gin_for_order(self.abf, TermOrder.weighted([3, 2, 1]))
        self.assertEqual(self.family.index_of(tied), revlex)
        steep = gin_for_order(self.abf, TermOrder.weighted([4, 2, 1]))
        self.assertEqual(self.family.index_of(steep), lex)

    def test_witness_orders_reproduce_members(self):
        """Each member is the sampled gin under its own weight order."""
        for member in self.family.members:
            sampled = gin(list(self.abf.generators), member.order, seed=3, n=3)
            self.assertEqual(sampled, member.ideal)

    def test_poset_has_revlex_minimum(self):
        """The revlex gin has the smallest Betti table and lex the largest."""
        poset = betti_poset(self.family)
        self.assertTrue(poset.revlex_is_minimum)
        self.assertTrue(poset.has_maximum)
        lex = self.family.index_of(gin_for_order(self.abf, LEX))
        self.assertEqual(poset.maximal, [lex])

    def test_lex_proximity(self):
        """The lex gin overlaps the lex ideal the most."""
        proximity = lex_proximity(self.family, lex_ideal(self.family.members[0].ideal))
        self.assertTrue(proximity.gin_lex_dominates)
        self.assertEqual(proximity.lex_index, self.family.index_of(gin_for_order(self.abf, LEX)))

    def test_lex_segments_without_lex_ideal(self):
        """Degreewise lex segments give the same table as the certified lex ideal."""
        full = lex_proximity(self.family, lex_ideal(self.family.members[0].ideal))
        segments = lex_proximity(self.family)
        for k, row in segments.table.items():
            for j, overlap in row.items():
                self.assertEqual(overlap, full.table[k][j])
        self.assertEqual(segments.lex_index, full.lex_index)

    @patch("ginlex.almost_borel.lex_segment_space", wraps=lex_segment_space)
    def test_segments_stop_at_gin_degrees(self, mock_segments):
        """Only degrees up to the top gin degree are built."""
        lex_proximity(self.family)
        top = max(member.ideal.max_degree for member in self.family.members)
        self.assertEqual(max(call.args[1] for call in mock_segments.call_args_list), top)


if __name__ == "__main__":
    unittest.main()
