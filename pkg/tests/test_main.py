"""Tests for the command-line entry point."""

import io
import os
import tempfile
import time
import unittest
from pathlib import Path
from unittest.mock import patch

from ginlex.groebner import GenericityError, MonomialIdeal
from ginlex.idealfile import format_ideal
from ginlex.main import (
    EXIT_ERROR,
    EXIT_GENERICITY,
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_PARSE,
    main,
    run,
)
from ginlex.records import digest
from ginlex.reproduce import three_gin_quartics

DATA = Path(__file__).resolve().parents[1] / "data"
BOREL = str(DATA / "borel.ideal")
ALMOST_BOREL = str(DATA / "almost_borel.ideal")


class CommandTestCase(unittest.TestCase):
    """Runs commands with captured output."""

    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        environment = patch.dict(os.environ, {}, clear=False)
        environment.start()
        os.environ.pop("GINLEX_SEED", None)
        self.addCleanup(environment.stop)
        self.addCleanup(self.directory.cleanup)

    def write(self, text):
        path = os.path.join(self.directory.name, "ideal.txt")
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
        return path

    def invoke(self, *argv):
        with patch("sys.stdout", new_callable=io.StringIO) as out, \
                patch("sys.stderr", new_callable=io.StringIO) as err:
            code = run(list(argv))
        return code, out.getvalue(), err.getvalue()


class TestCommands(CommandTestCase):
    """Tests for the individual commands."""

    def test_betti_methods_agree(self):
        """Homology and the formula print the same Betti lines."""
        _, koszul, _ = self.invoke("betti", BOREL)
        code, formula, _ = self.invoke("betti", BOREL, "--method", "ek")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("ideal beta: 1 2 5", formula)
        self.assertIn("ideal beta: 2 3 6", formula)
        strip = lambda text: [l for l in text.splitlines() if l.startswith("ideal")]
        self.assertEqual(strip(koszul), strip(formula))

    def test_zero_ideal(self):
        """A file with only a header has beta_00 = 1."""
        code, out, _ = self.invoke("betti", self.write("vars: x1 x2\n"))
        self.assertEqual(code, EXIT_OK)
        self.assertIn("ideal beta: 0 0 1", out)

    def test_gin_of_borel_fixed_ideal(self):
        """A Borel-fixed ideal is its own gin."""
        code, out, _ = self.invoke("gin", BOREL, "--order", "lex")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("gin: (x1^2, x1*x2, x1*x3, x2^2, x2*x3)\n", out)
        self.assertTrue(out.startswith("command: gin --order lex\ninput: sha256:"))

    def test_lex(self):
        """lex prints the lex-segment ideal."""
        code, out, _ = self.invoke("lex", self.write("vars: x1 x2 x3\nx1^2\nx1*x2\nx2^2\n"))
        self.assertEqual(code, EXIT_OK)
        self.assertIn("lex: (x1^2, x1*x2, x1*x3, x2^3)\n", out)

    def test_koszul_betti(self):
        """koszul-betti records the forms seed and the degree bound."""
        code, out, _ = self.invoke("koszul-betti", BOREL, "--p", "1", "--seed", "4")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("forms seed: 5\n", out)
        self.assertIn("beta i j p: 0 0 1 1\n", out)

    def test_gins(self):
        """gins lists both members of the quadric family."""
        code, out, _ = self.invoke("gins", ALMOST_BOREL)
        self.assertEqual(code, EXIT_OK)
        self.assertIn("gins: 2\n", out)
        self.assertIn("G1 ideal: ", out)
        self.assertIn("G2 ideal: ", out)

    def test_input_digest(self):
        """The input line is the digest of the file text."""
        text = "vars: x1 x2\nx1^2\n"
        _, out, _ = self.invoke("lex", self.write(text))
        self.assertIn(f"input: {digest(text)}\n", out)

    def test_gins_of_quartic_family(self):
        """gins finishes quickly on the seven-variable quartic family."""
        abf = three_gin_quartics()
        path = self.write(format_ideal(list(abf.generators), n=abf.n))
        started = time.perf_counter()
        code, out, _ = self.invoke("gins", path)
        self.assertLess(time.perf_counter() - started, 120)
        self.assertEqual(code, EXIT_OK)
        self.assertIn("gins: 3\n", out)
        self.assertIn("maximum: no maximum\n", out)
        self.assertIn("lex gin closest to lex: True\n", out)

    def test_reproduce(self):
        """A matching example exits zero."""
        code, out, _ = self.invoke("reproduce", "4.6a")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("verdict: match", out)

    def test_same_seed_same_output(self):
        """Records are identical across runs without --timing."""
        first = self.invoke("gin", ALMOST_BOREL, "--seed", "9")
        second = self.invoke("gin", ALMOST_BOREL, "--seed", "9")
        self.assertEqual(first, second)
        self.assertNotIn("seconds", first[1])
        self.assertIn("seconds: ", self.invoke("lex", BOREL, "--timing")[1])


class TestExitCodes(CommandTestCase):
    """Tests for error handling and exit codes."""

    def test_parse_error(self):
        """Malformed input exits 4 with the line number."""
        code, out, err = self.invoke("betti", self.write("vars: x1 x2\nx1 + x2^2\n"))
        self.assertEqual(code, EXIT_PARSE)
        self.assertEqual(out, "")
        self.assertIn("line 2", err)

    def test_undecodable_file(self):
        """A file that is not UTF-8 exits 4, not with a traceback."""
        path = os.path.join(self.directory.name, "bytes.ideal")
        with open(path, "wb") as handle:
            handle.write(b"vars: x1 x2\nx1^2 \xff\n")
        code, out, err = self.invoke("betti", path)
        self.assertEqual(code, EXIT_PARSE)
        self.assertEqual(out, "")
        self.assertIn("line 2, column 6", err)

    @patch("ginlex.campaigns.revlex_gin")
    def test_all_items_skipped(self, mock_gin):
        """A campaign that checked nothing exits 3 with no pass verdict."""
        mock_gin.side_effect = GenericityError("trials disagree")
        code, out, _ = self.invoke("verify", "T4.2", "--corpus-size", "2", "--n", "2",
                                   "--maxdeg", "2")
        self.assertEqual(code, EXIT_GENERICITY)
        self.assertIn("checked: 0\n", out)
        self.assertIn("verdict: inconclusive\n", out)

    def test_empty_corpus(self):
        """A corpus size below one is rejected."""
        code, _, _ = self.invoke("verify", "P4.1", "--corpus-size", "0")
        self.assertEqual(code, EXIT_ERROR)

    def test_missing_file(self):
        """An unreadable file exits 1."""
        code, _, err = self.invoke("lex", "/nonexistent/ideal.txt")
        self.assertEqual(code, EXIT_ERROR)
        self.assertTrue(err.startswith("error: cannot read"))

    def test_formula_needs_monomials(self):
        """ek on a polynomial ideal exits 1."""
        code, _, _ = self.invoke("betti", ALMOST_BOREL, "--method", "ek")
        self.assertEqual(code, EXIT_ERROR)

    @patch("ginlex.main.gin")
    def test_genericity_error(self, mock_gin):
        """Uncertified gins exit 3 and list the candidates."""
        mock_gin.side_effect = GenericityError("trials disagree", ["(x1^2)", "(x1^2, x1*x2)"])
        code, _, err = self.invoke("gin", BOREL)
        self.assertEqual(code, EXIT_GENERICITY)
        self.assertIn("  candidate: (x1^2, x1*x2)", err)

    @patch("ginlex.reproduce.lex_ideal")
    def test_mismatch(self, mock_lex):
        """A reproduction that disagrees exits 2."""
        mock_lex.return_value = MonomialIdeal.zero(3)
        code, out, _ = self.invoke("reproduce", "4.6b")
        self.assertEqual(code, EXIT_MISMATCH)
        self.assertIn("verdict: mismatch", out)

    def test_seed_from_environment(self):
        """GINLEX_SEED supplies the default seed."""
        os.environ["GINLEX_SEED"] = "17"
        _, out, _ = self.invoke("lex", BOREL)
        self.assertIn("seed: 17\n", out)

    def test_bad_seed_variable(self):
        """A non-integer GINLEX_SEED exits 1."""
        os.environ["GINLEX_SEED"] = "seventeen"
        code, _, err = self.invoke("lex", BOREL)
        self.assertEqual(code, EXIT_ERROR)
        self.assertIn("GINLEX_SEED", err)

    @patch("ginlex.main.run")
    def test_interrupt(self, mock_run):
        """Ctrl-C exits 130."""
        mock_run.side_effect = KeyboardInterrupt
        with patch("sys.stderr", new_callable=io.StringIO):
            with self.assertRaises(SystemExit) as ctx:
                main([])
        self.assertEqual(ctx.exception.code, 130)


if __name__ == "__main__":
    unittest.main()
