"""Reading and writing ideal files.

An ideal file starts with a header naming the variables, largest first, and
lists one homogeneous generator per line::

    # Example: an almost Borel-fixed ideal in four variables
    vars: x1 x2 x3 x4
    x1^3
    x1*x3^2 + x2^2*x4
    -3/2*x2^2*x4^2

Blank lines and lines starting with ``#`` are ignored, and a generator that
is literally ``0`` is dropped.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

from ginlex.errors import GinlexError
from ginlex.groebner import MonomialIdeal
from ginlex.polynomials import REVLEX, Monomial, Polynomial

HEADER = "vars:"

TOKEN = re.compile(r"\s*(?:(?P<number>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
                   r"|(?P<op>[-+*^]))")
NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class ParseError(GinlexError):
    """Raised for malformed ideal files; ``line`` and ``column`` are 1-based."""

    def __init__(self, reason: str = "", line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {reason}" if line else reason)


@dataclass
class IdealFile:
    variables: Tuple[str, ...]
    generators: List[Polynomial] = field(default_factory=list)
    path: Optional[str] = None
    text: str = ""

    @property
    def n(self) -> int:
        return len(self.variables)

    def monomial_ideal(self) -> Optional[MonomialIdeal]:
        """The generators as a monomial ideal, or None if one is not a monomial."""
        if not all(g.is_monomial() for g in self.generators):
            return None
        return MonomialIdeal((g.lead for g in self.generators), self.n)


def _tokens(text: str, line: int) -> List[Tuple[str, str, int]]:
    tokens = []
    position = 0
    while position < len(text):
        if text[position:].strip() == "":
            break
        match = TOKEN.match(text, position)
        if match is None:
            column = position + len(text[position:]) - len(text[position:].lstrip()) + 1
            raise ParseError(f"unexpected character {text[column - 1]!r}", line, column)
        kind = match.lastgroup
        tokens.append((kind, match.group(kind), match.start(kind) + 1))
        position = match.end()
    return tokens


class _GeneratorParser:
    """Recursive descent over ``term (('+' | '-') term)*``."""

    def __init__(self, text: str, line: int, variables: Sequence[str]):
        self.line = line
        self.tokens = _tokens(text, line)
        self.index = 0
        self.variables = {name: k for k, name in enumerate(variables)}
        self.n = len(variables)
        self.end = len(text) + 1

    def _peek(self) -> Optional[Tuple[str, str, int]]:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def _next(self, expected: str) -> Tuple[str, str, int]:
        token = self._peek()
        if token is None:
            raise ParseError(f"expected {expected}, found end of line", self.line, self.end)
        self.index += 1
        return token

    def _is_op(self, symbol: str) -> bool:
        token = self._peek()
        return token is not None and token[0] == "op" and token[1] == symbol

    def parse(self) -> Polynomial:
        terms: List[Tuple[Fraction, Monomial]] = []
        sign = 1
        if self._is_op("-") or self._is_op("+"):
            sign = -1 if self._next("sign")[1] == "-" else 1
        terms.append(self._term(sign))
        while self._peek() is not None:
            kind, value, column = self._next("'+' or '-'")
            if kind != "op" or value not in "+-":
                raise ParseError(f"expected '+' or '-', found {value!r}", self.line, column)
            terms.append(self._term(-1 if value == "-" else 1))
        return Polynomial(terms, REVLEX, self.n)

    def _term(self, sign: int) -> Tuple[Fraction, Monomial]:
        coefficient = Fraction(sign)
        exponents = [0] * self.n
        kind, value, column = self._next("a coefficient or a variable")
        if kind == "number":
            numerator, _, denominator = value.partition("/")
            if denominator and int(denominator) == 0:
                raise ParseError("zero denominator", self.line, column)
            coefficient *= Fraction(int(numerator), int(denominator or 1))
            if not self._is_op("*"):
                return coefficient, Monomial(exponents)
            self._next("'*'")
            kind, value, column = self._next("a variable")
        while True:
            if kind != "name":
                raise ParseError(f"expected a variable, found {value!r}", self.line, column)
            if value not in self.variables:
                raise ParseError(f"unknown variable {value!r}", self.line, column)
            exponent = 1
            if self._is_op("^"):
                self._next("'^'")
                kind, text, at = self._next("an exponent")
                if kind != "number" or "/" in text:
                    raise ParseError(f"exponent must be a nonnegative integer, found {text!r}",
                                     self.line, at)
                exponent = int(text)
            exponents[self.variables[value]] += exponent
            if not self._is_op("*"):
                return coefficient, Monomial(exponents)
            self._next("'*'")
            kind, value, column = self._next("a variable")


def _parse_header(text: str, line: int) -> Tuple[str, ...]:
    names = tuple(text[len(HEADER):].split())
    if not names:
        raise ParseError("the header declares no variables", line, len(HEADER) + 1)
    for name in names:
        if not NAME.match(name):
            raise ParseError(f"bad variable name {name!r}", line, text.index(name) + 1)
    if len(set(names)) != len(names):
        raise ParseError("the header repeats a variable", line, 1)
    return names


def parse_ideal_text(text: str, path: Optional[str] = None) -> IdealFile:
    variables: Optional[Tuple[str, ...]] = None
    generators: List[Polynomial] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if variables is None:
            if not stripped.startswith(HEADER):
                raise ParseError(f"expected a '{HEADER} ...' header", number, 1)
            variables = _parse_header(stripped, number)
            continue
        if stripped.startswith(HEADER):
            raise ParseError("a second header", number, 1)
        polynomial = _GeneratorParser(raw, number, variables).parse()
        if not polynomial:
            continue
        if not polynomial.is_homogeneous():
            degrees = " and ".join(str(d) for d in polynomial.degrees())
            raise ParseError(f"generator is not homogeneous: it mixes degrees {degrees}",
                             number, 1)
        generators.append(polynomial)
    if variables is None:
        raise ParseError(f"missing '{HEADER} ...' header")
    return IdealFile(variables, generators, path, text)


def parse_ideal(text: str) -> List[Polynomial]:
    """The generators of an ideal file, as exact polynomials."""
    return parse_ideal_text(text).generators


def parse_ideal_file(path: Union[str, Path]) -> IdealFile:
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise GinlexError(f"cannot read {path}: {e.strerror or e}") from e
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        line = data.count(b"\n", 0, e.start) + 1
        column = e.start - (data.rfind(b"\n", 0, e.start) + 1) + 1
        raise ParseError(f"byte 0x{data[e.start]:02x} is not valid UTF-8", line, column) from e
    return parse_ideal_text(text, str(path))


def format_ideal(generators: Sequence[Polynomial], variables: Optional[Sequence[str]] = None,
                 n: Optional[int] = None) -> str:
    """Ideal-file text that parses back to ``generators``."""
    if variables is None:
        if generators:
            n = generators[0].n
        if n is None:
            raise GinlexError("the zero ideal needs an explicit variable count")
        variables = [f"x{i}" for i in range(1, n + 1)]
    lines = [f"{HEADER} " + " ".join(variables)]
    lines += [g.format(variables) for g in generators if g]
    return "\n".join(lines) + "\n"
