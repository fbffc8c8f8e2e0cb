"""Tests for the stable module."""

import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

from ginlex.corpus import random_strongly_stable
from ginlex.groebner import MonomialIdeal
from ginlex.idealfile import parse_ideal
from ginlex.polynomials import DimensionError, Monomial
from ginlex.reproduce import A_5_7, GINS_5_7
from ginlex.stable import (
    BettiTable,
    BoundError,
    NotStronglyStableError,
    ah_koszul_betti,
    ah_koszul_betti_from_slices,
    borel_closure,
    compare_borel_ideals,
    ek_betti,
    hilbert_function,
    hilbert_series,
    ideal_hilbert_function,
    is_componentwise_linear,
    is_gotzmann,
    is_gotzmann_by_definition,
    is_strongly_stable_by_degree,
    lex_ideal,
    lex_segment_space,
    m_leq_count,
    m_statistics,
)


def polys(text, n=3):
    header = "vars: " + " ".join(f"x{i}" for i in range(1, n + 1))
    return parse_ideal(header + "\n" + text.replace(",", "\n"))


def ideal(text, n=3):
    return MonomialIdeal([g.lead for g in polys(text, n)], n)


def m(*exponents):
    return Monomial(exponents)


stable_ideals = st.builds(random_strongly_stable, st.integers(2, 4), st.integers(2, 3),
                          st.integers(0, 10 ** 6))


class TestBorelClosure(unittest.TestCase):
    """Tests for Borel closures."""

    def test_closure_of_one_monomial(self):
        """The Borel closure of x2*x3 is every quadric above it."""
        self.assertEqual(borel_closure([m(0, 1, 1)]), ideal("x1^2, x1*x2, x2^2, x1*x3, x2*x3"))

    def test_strict_closure(self):
        """The strict closure leaves out the starting monomial."""
        self.assertEqual(borel_closure([m(0, 2, 0)], strict=True), ideal("x1^2, x1*x2"))

    def test_one_degree_only(self):
        """Monomials of different degrees raise DimensionError."""
        with self.assertRaises(DimensionError):
            borel_closure([m(1, 0, 0), m(0, 2, 0)])

    def test_degreewise_check_agrees(self):
        """The degreewise exchange check agrees with the generator check."""
        for text in ("x1^2, x1*x2, x2^2", "x1^2, x2^2", "x1*x2"):
            I = ideal(text)
            self.assertEqual(is_strongly_stable_by_degree(I, 4), I.is_strongly_stable())


class TestHilbert(unittest.TestCase):
    """Tests for Hilbert functions and series."""

    def test_series_numerator(self):
        """(x1^2, x1*x2, x2^2) has numerator 1 - 3t^2 + 2t^3."""
        self.assertEqual(hilbert_series(ideal("x1^2, x1*x2, x2^2")), (1, 0, -3, 2))

    def test_series_of_zero_ideal(self):
        """The zero ideal has numerator 1."""
        self.assertEqual(hilbert_series(MonomialIdeal.zero(3)), (1,))

    def test_polynomial_ideal_matches_initial_ideal(self):
        """An ideal and its initial ideal share a Hilbert function."""
        gens = polys("x1^2 - x2*x3, x2^2 - x1*x3")
        initial = ideal("x1^2, x1*x2, x2^3")
        self.assertEqual(ideal_hilbert_function(gens, 5), hilbert_function(initial, 5))

    def test_lex_segment_space(self):
        """The lex segment of dimension 3 in degree 2 starts at x1^2."""
        self.assertEqual(lex_segment_space(3, 2, 3), frozenset([m(2, 0, 0), m(1, 1, 0), m(1, 0, 1)]))
        with self.assertRaises(ValueError):
            lex_segment_space(7, 2, 3)


class TestLexIdeal(unittest.TestCase):
    """Tests for lex_ideal."""

    def test_lex_of_square_of_maximal_pair(self):
        """Lex((x1, x2)^2) is (x1^2, x1*x2, x1*x3, x2^3)."""
        self.assertEqual(lex_ideal(ideal("x1^2, x1*x2, x2^2")), ideal("x1^2, x1*x2, x1*x3, x2^3"))

    def test_lex_ideal_is_fixed(self):
        """A lex-segment ideal is its own lex ideal."""
        L = ideal("x1^2, x1*x2, x1*x3, x2^3")
        self.assertEqual(lex_ideal(L), L)

    def test_bound_below_top_degree(self):
        """A bound below the top degree + 1 raises BoundError."""
        with self.assertRaises(BoundError):
            lex_ideal(ideal("x1^2, x1*x2, x2^2"), bound=2)

    def test_bound_too_small_for_persistence(self):
        """A bound where the lex ideal still grows raises BoundError."""
        with self.assertRaises(BoundError):
            lex_ideal(ideal("x2^2, x1^2, x1*x2"), bound=3)

    @settings(max_examples=25, deadline=None)
    @given(stable_ideals)
    def test_same_hilbert_function(self, I):
        """Lex(I) has the Hilbert function of I well past the top degree."""
        L = lex_ideal(I)
        bound = max(I.max_degree, L.max_degree) + 3
        self.assertEqual(hilbert_function(L, bound), hilbert_function(I, bound))
        self.assertTrue(L.is_strongly_stable())


class TestMStatistics(unittest.TestCase):
    """Tests for m_statistics."""

    def test_counts_by_largest_variable(self):
        """m_i counts generators by their largest variable."""
        stats = m_statistics(ideal("x1^2, x1*x2, x1*x3, x2^3"))
        self.assertEqual([stats.m(i) for i in (1, 2, 3)], [1, 2, 1])
        self.assertEqual(stats.mij(2, 3), 1)
        self.assertEqual(stats.m_leq(2, 2), 2)

    @settings(max_examples=25, deadline=None)
    @given(stable_ideals)
    def test_growth_of_borel_sets(self, I):
        """m_i(R_1 B) equals m_<=i(B) for each degree part B of a stable ideal."""
        for d in range(I.min_degree, I.max_degree + 1):
            B = I.degree_part(d)
            grown = {b.times(Monomial.variable(k, I.n)) for b in B for k in range(1, I.n + 1)}
            for i in range(1, I.n + 1):
                self.assertEqual(sum(1 for u in grown if u.max_index == i), m_leq_count(B, i))

    def test_bound_must_cover_generators(self):
        """A bound below the top degree raises BoundError."""
        with self.assertRaises(BoundError):
            m_statistics(ideal("x1^2, x1*x2, x1*x3, x2^3"), bound=2)


class TestBettiFormulas(unittest.TestCase):
    """Tests for the Eliahou-Kervaire and Aramova-Herzog formulas."""

    def test_ek_of_square_of_maximal_pair(self):
        """(x1, x2)^2 has beta_12 = 3 and beta_23 = 2."""
        table = ek_betti(ideal("x1^2, x1*x2, x2^2"))
        self.assertEqual(table.entries, {(0, 0): 1, (1, 2): 3, (2, 3): 2})

    def test_ek_rejects_unstable(self):
        """The formula needs a strongly stable ideal."""
        with self.assertRaises(NotStronglyStableError):
            ek_betti(ideal("x2^2"))

    def test_ek_of_zero_ideal(self):
        """The zero ideal has beta_00 = 1 only."""
        self.assertEqual(ek_betti(MonomialIdeal.zero(3)).entries, {(0, 0): 1})

    def test_ek_of_pinned_gin(self):
        """The minimal gin of the two-gin cubics has diagram 10 17 10 2 / 1 3 3 1."""
        extras, rows = GINS_5_7["G1"]
        G = MonomialIdeal([g.lead for g in polys(A_5_7 + ", " + extras, 4)], 4)
        self.assertEqual([values for _, values in ek_betti(G).diagram(4)], rows)

    def test_ah_at_full_p_is_ek(self):
        """With p = n the Koszul-Betti numbers are the Betti numbers."""
        I = ideal("x1^2, x1*x2, x2^2, x1*x3^2")
        self.assertEqual(ah_koszul_betti(I, 3), ek_betti(I))

    def test_ah_at_p_zero(self):
        """With p = 0 only the quotient dimensions remain."""
        I = ideal("x1^2, x1*x2, x2^2")
        table = ah_koszul_betti(I, 0, j_bound=3)
        self.assertEqual(table.entries, {(0, 0): 1, (0, 1): 3, (0, 2): 3, (0, 3): 3})

    def test_p_out_of_range(self):
        """p outside [0, n] raises DimensionError."""
        with self.assertRaises(DimensionError):
            ah_koszul_betti(ideal("x1^2"), 4)

    @settings(max_examples=25, deadline=None)
    @given(stable_ideals, st.integers(0, 4))
    def test_slices_agree_with_formula(self, I, p):
        """The m_<=i form of the formula matches the m_ij form."""
        p = min(p, I.n)
        self.assertEqual(ah_koszul_betti_from_slices(I, p), ah_koszul_betti(I, p))

    def test_diagram_and_domination(self):
        """Diagrams list rows by j - i and domination is entrywise."""
        small = BettiTable({(0, 0): 1, (1, 2): 3, (2, 3): 2}, 3)
        large = BettiTable({(0, 0): 1, (1, 2): 3, (2, 3): 3, (2, 4): 1}, 3)
        self.assertEqual(large.diagram(2), [(1, [3, 3]), (2, [0, 1])])
        self.assertTrue(small.dominated_by(large))
        self.assertFalse(large.dominated_by(small))
        self.assertEqual(large.regularity, 2)


class TestComparisons(unittest.TestCase):
    """Tests for compare_borel_ideals and the Gotzmann predicates."""

    @settings(max_examples=20, deadline=None)
    @given(stable_ideals)
    def test_lex_is_dominated_and_consistent(self, I):
        """Lex(I) is dominated by I and the equality conditions agree."""
        comparison = compare_borel_ideals(I, lex_ideal(I))
        self.assertTrue(comparison.dominated)
        self.assertTrue(comparison.consistent)

    def test_different_hilbert_functions(self):
        """Ideals with different Hilbert functions cannot be compared."""
        from ginlex.errors import GinlexError

        with self.assertRaises(GinlexError):
            compare_borel_ideals(ideal("x1^2"), ideal("x1^2, x1*x2"))

    def test_lex_ideal_is_gotzmann(self):
        """Lex-segment ideals are Gotzmann in both senses."""
        gens = ideal("x1^2, x1*x2, x1*x3, x2^3").as_polynomials()
        self.assertTrue(is_gotzmann(gens))
        self.assertTrue(is_gotzmann_by_definition(gens))

    def test_two_squares_not_gotzmann(self):
        """(x1^2, x2^2) grows faster than a lex segment."""
        self.assertFalse(is_gotzmann_by_definition(polys("x1^2, x2^2")))

    def test_complete_intersection_not_componentwise_linear(self):
        """Two generic quadrics are not componentwise linear."""
        self.assertFalse(is_componentwise_linear(polys("x1^2 - x2*x3, x2^2 - x1*x3")))

    def test_stable_ideal_componentwise_linear(self):
        """Strongly stable ideals are componentwise linear."""
        self.assertTrue(is_componentwise_linear(polys("x1^2, x1*x2, x2^2, x1*x3^2")))


if __name__ == "__main__":
    unittest.main()
