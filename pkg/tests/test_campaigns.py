"""Tests for the campaigns module."""

import unittest
from unittest.mock import patch

from ginlex.campaigns import (
    CLAIMS,
    Settings,
    check_gin_equivalences,
    check_lex_equivalences,
    check_upper_bounds,
    explore,
    verify,
)
from ginlex.corpus import Sample
from ginlex.errors import GinlexError
from ginlex.groebner import GenericityError, gin
from ginlex.idealfile import parse_ideal

SMALL = Settings(corpus_size=3, n=3, maxdeg=2, seed=1, jobs=1, pinned=False)


def sample(text, kind="homogeneous", n=3):
    header = "vars: " + " ".join(f"x{i}" for i in range(1, n + 1))
    return Sample(kind, 0, 5, n, parse_ideal(header + "\n" + text.replace(",", "\n")), None)


QUADRICS = sample("x1^2 - x2*x3, x2^2 - x1*x3")
STABLE = sample("x1^2, x1*x2, x2^2, x1*x3", kind="stable")


class TestVerify(unittest.TestCase):
    """Tests for verify on small corpora."""

    def test_formulas_hold(self):
        """The Betti formulas match homology on stable ideals."""
        report = verify("T3.2", SMALL)
        self.assertTrue(report.passed, report.failures)
        self.assertEqual(report.checked, 3)

    def test_lex_domination(self):
        """The lex ideal dominates every stable ideal."""
        self.assertTrue(verify("P4.1", SMALL).passed)

    def test_upper_bounds(self):
        """Gins and the lex ideal bound the Koszul-Betti numbers."""
        report = verify("T4.2", SMALL)
        self.assertTrue(report.passed, report.failures)
        self.assertEqual(report.checked + len(report.skipped), 3)

    def test_gin_equivalences(self):
        """The four conditions against the revlex gin agree on a mixed corpus."""
        report = verify("T4.4", SMALL)
        self.assertGreater(report.checked, 0)
        self.assertTrue(report.passed, report.failures)

    def test_lex_equivalences(self):
        """The four conditions against the lex ideal agree on a mixed corpus."""
        report = verify("T4.5", SMALL)
        self.assertGreater(report.checked, 0)
        self.assertTrue(report.passed, report.failures)

    def test_almost_borel_linear(self):
        """Almost Borel-fixed ideals are componentwise linear."""
        self.assertTrue(verify("P5.9", SMALL).passed)

    def test_revlex_minimum(self):
        """The revlex gin is the smallest member of each family."""
        report = verify("T5.1", SMALL._replace(corpus_size=2))
        self.assertTrue(report.passed, report.failures)

    def test_lex_proximity(self):
        """The lex gin meets the lex ideal most."""
        report = verify("P5.2", SMALL._replace(corpus_size=2))
        self.assertGreater(report.checked, 0)
        self.assertTrue(report.passed, report.failures)

    @patch("ginlex.campaigns.revlex_gin")
    def test_all_skipped_is_inconclusive(self, mock_gin):
        """A run where every item is skipped neither passes nor fails."""
        mock_gin.side_effect = GenericityError("trials disagree")
        report = verify("T4.2", SMALL)
        self.assertFalse(report.passed)
        self.assertTrue(report.inconclusive)
        self.assertEqual(report.checked, 0)
        self.assertEqual(len(report.skipped), 3)
        self.assertIn("trials disagree", report.skipped[0])
        self.assertEqual(report.record().get("verdict"), ["inconclusive"])

    def test_record(self):
        """The record names the claim, the corpus and the verdict."""
        record = verify("P4.1", SMALL).record()
        self.assertEqual(record.command, "verify P4.1")
        self.assertEqual(record.get("corpus"), ["size=3 n=3 maxdeg=2"])
        self.assertEqual(record.get("verdict"), ["pass"])

    def test_unknown_claim(self):
        """Claims outside the list raise GinlexError."""
        self.assertNotIn("T9.9", CLAIMS)
        with self.assertRaises(GinlexError):
            verify("T9.9", SMALL)


class TestChecks(unittest.TestCase):
    """Tests for single-item checks."""

    def test_quadrics_fail_every_gin_condition(self):
        """Two generic quadrics fail all four conditions together."""
        outcome = check_gin_equivalences(QUADRICS)
        self.assertIsNone(outcome.skipped)
        self.assertEqual(outcome.failures, [])
        self.assertNotIn("=True", outcome.notes[0])
        self.assertEqual(outcome.notes[0].count("=False"), 4)

    def test_quadrics_fail_every_lex_condition(self):
        """The same quadrics fail all four lex conditions together."""
        outcome = check_lex_equivalences(QUADRICS)
        self.assertEqual(outcome.failures, [])
        self.assertEqual(outcome.notes[0].count("=False"), 4)

    def test_stable_ideal_meets_every_gin_condition(self):
        """A strongly stable ideal satisfies all four conditions."""
        outcome = check_gin_equivalences(STABLE)
        self.assertEqual(outcome.failures, [])
        self.assertEqual(outcome.notes[0].count("=True"), 4)

    @patch("ginlex.campaigns.gin", wraps=gin)
    def test_upper_bounds_use_a_weight_order(self, mock_gin):
        """The bound check also compares against a random weight order gin."""
        outcome = check_upper_bounds(QUADRICS)
        self.assertEqual(outcome.failures, [])
        orders = [str(call.args[1]) for call in mock_gin.call_args_list]
        self.assertIn("lex", orders)
        self.assertTrue(any(order.startswith("weight:") for order in orders))


class TestExplore(unittest.TestCase):
    """Tests for explore."""

    def test_no_verdict(self):
        """Exploration reports notes and the verdict none."""
        report = explore(SMALL._replace(corpus_size=1))
        record = report.record()
        self.assertEqual(record.command, "explore")
        self.assertEqual(record.get("verdict"), ["none"])
        self.assertTrue(report.notes or report.skipped)


if __name__ == "__main__":
    unittest.main()
