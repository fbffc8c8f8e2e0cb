"""Exact polynomial arithmetic over the rationals.

Variables are ``x1, ..., xn`` with ``x1`` the largest variable in every term
order.  A monomial is its exponent vector; a polynomial is a tuple of
``(coefficient, monomial)`` terms sorted in descending order under the term
order it was built with.
"""

import logging
import random
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from ginlex.errors import GinlexError
from ginlex.linalg import LinearAlgebraError, determinant, inverse

logger = logging.getLogger(__name__)

MAX_REDRAWS = 100
KEY_CACHE_SIZE = 1 << 16

Rational = Union[int, Fraction]


class DimensionError(GinlexError):
    """Raised when objects from rings of different dimension meet."""


class TermOrderError(GinlexError):
    """Raised for weight vectors that do not define an admissible order."""


class CoordinateError(GinlexError):
    """Raised for singular or malformed coordinate changes."""


class Comparison(str, Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"


class Monomial(tuple):
    """Exponent vector ``(a1, ..., an)`` of ``x1^a1 * ... * xn^an``."""

    def __new__(cls, exponents: Iterable[int]):
        values = tuple(int(e) for e in exponents)
        if any(e < 0 for e in values):
            raise ValueError(f"negative exponent in {values}")
        self = super().__new__(cls, values)
        self.degree = sum(values)
        return self

    @classmethod
    def one(cls, n: int) -> "Monomial":
        return cls((0,) * n)

    @classmethod
    def variable(cls, i: int, n: int) -> "Monomial":
        """The variable ``x_i`` (1-based)."""
        if not 1 <= i <= n:
            raise DimensionError(f"x{i} is not a variable of a ring with {n} variables")
        return cls(int(k == i - 1) for k in range(n))

    @property
    def n(self) -> int:
        return len(self)

    @property
    def max_index(self) -> int:
        """``max{i : a_i > 0}``, 0 for the constant monomial."""
        for i in range(len(self) - 1, -1, -1):
            if self[i]:
                return i + 1
        return 0

    def delta(self) -> Tuple[int, ...]:
        """Partial sums ``(a1, a1+a2, ..., a1+...+an)``."""
        total = 0
        sums = []
        for e in self:
            total += e
            sums.append(total)
        return tuple(sums)

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self, other))

    def times(self, other: "Monomial") -> "Monomial":
        return Monomial(a + b for a, b in zip(self, other))

    def quotient(self, other: "Monomial") -> "Monomial":
        """``self / other``; ``other`` must divide ``self``."""
        return Monomial(a - b for a, b in zip(self, other))

    def lcm(self, other: "Monomial") -> "Monomial":
        return Monomial(max(a, b) for a, b in zip(self, other))

    def is_coprime(self, other: "Monomial") -> bool:
        return all(not (a and b) for a, b in zip(self, other))

    def shift(self, source: int, target: int) -> Optional["Monomial"]:
        """Replace one ``x_source`` by ``x_target`` (1-based), or None."""
        if not self[source - 1]:
            return None
        exps = list(self)
        exps[source - 1] -= 1
        exps[target - 1] += 1
        return Monomial(exps)

    def format(self, names: Optional[Sequence[str]] = None) -> str:
        names = names or [f"x{i + 1}" for i in range(len(self))]
        parts = []
        for name, e in zip(names, self):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def __repr__(self) -> str:
        return self.format()

    __str__ = __repr__

    def __reduce__(self):
        return (Monomial, (tuple(self),))


def count_monomials(d: int, n: int) -> int:
    """``|M_d|`` for ``n`` variables."""
    if d < 0:
        return 0
    if n == 0:
        return int(d == 0)
    return comb(d + n - 1, n - 1)


def monomials_of_degree(d: int, n: int) -> List[Monomial]:
    """All monomials of degree ``d`` in lex-descending order."""
    if d < 0:
        return []
    if n == 0:
        return [Monomial(())] if d == 0 else []
    result = []
    for indices in combinations_with_replacement(range(n), d):
        exps = [0] * n
        for i in indices:
            exps[i] += 1
        result.append(Monomial(exps))
    return result


def delta(a: Sequence[Rational]) -> Tuple[Rational, ...]:
    """``(a1, a1+a2, ..., a1+...+an)`` for any vector."""
    total = 0
    sums = []
    for value in a:
        total += value
        sums.append(total)
    return tuple(sums)


def weight_differences(w: Sequence[Rational]) -> Tuple[Rational, ...]:
    """``(w1-w2, ..., w_{n-1}-w_n, w_n)``; ``a.w == delta(a).weight_differences(w)``."""
    return tuple(w[i] - w[i + 1] for i in range(len(w) - 1)) + tuple(w[-1:])


def borel_compare(a: Monomial, b: Monomial) -> Comparison:
    """Compare two monomials of the same degree in the Borel order."""
    if len(a) != len(b):
        raise DimensionError(f"cannot compare monomials in {len(a)} and {len(b)} variables")
    if a.degree != b.degree:
        raise DimensionError(f"Borel order needs equal degrees, got {a.degree} and {b.degree}")
    if a == b:
        return Comparison.EQUAL
    da, db = a.delta(), b.delta()
    if all(x >= y for x, y in zip(da, db)):
        return Comparison.GREATER
    if all(x <= y for x, y in zip(da, db)):
        return Comparison.LESS
    return Comparison.INCOMPARABLE


def borel_upper_moves(m: Monomial) -> List[Monomial]:
    """Monomials obtained by one move ``x_i -> x_{i-1}``; they cover ``m``."""
    moves = []
    for i in range(2, len(m) + 1):
        moved = m.shift(i, i - 1)
        if moved is not None:
            moves.append(moved)
    return moves


def borel_lower_moves(m: Monomial) -> List[Monomial]:
    """Monomials obtained by one move ``x_i -> x_{i+1}``."""
    moves = []
    for i in range(1, len(m)):
        moved = m.shift(i, i + 1)
        if moved is not None:
            moves.append(moved)
    return moves


class TermOrder:
    """A term order refining ``x1 > x2 > ... > xn``.

    ``lex`` and ``revlex`` compare degrees first; ``weight`` compares ``w.a``
    and breaks ties with ``lex`` or ``revlex``.
    """

    KINDS = ("lex", "revlex", "weight")

    def __init__(self, kind: str, weight: Optional[Sequence[Rational]] = None,
                 tiebreak: str = "revlex"):
        if kind not in self.KINDS:
            raise TermOrderError(f"unknown term order {kind!r}")
        if tiebreak not in ("lex", "revlex"):
            raise TermOrderError(f"tiebreak must be lex or revlex, got {tiebreak!r}")
        if kind == "weight":
            if not weight:
                raise TermOrderError("weight order needs a weight vector")
            weight = tuple(Fraction(v) for v in weight)
            if any(v <= 0 for v in weight):
                raise TermOrderError(f"weights must be positive: {_format_weight(weight)}")
            if any(weight[i] <= weight[i + 1] for i in range(len(weight) - 1)):
                raise TermOrderError(
                    f"weights must strictly decrease: {_format_weight(weight)}")
        elif weight is not None:
            raise TermOrderError(f"{kind} order takes no weight vector")
        self.kind = kind
        self.weight: Optional[Tuple[Fraction, ...]] = weight
        self.tiebreak = tiebreak if kind == "weight" else kind

    @classmethod
    def lex(cls) -> "TermOrder":
        return cls("lex")

    @classmethod
    def revlex(cls) -> "TermOrder":
        return cls("revlex")

    @classmethod
    def weighted(cls, weight: Sequence[Rational], tiebreak: str = "revlex") -> "TermOrder":
        return cls("weight", weight, tiebreak)

    @classmethod
    def parse(cls, text: str) -> "TermOrder":
        """Parse ``lex``, ``revlex`` or ``weight:w1,...,wn[:tiebreak]``."""
        text = text.strip()
        if text in ("lex", "revlex"):
            return cls(text)
        if text.startswith("weight:"):
            parts = text[len("weight:"):].split(":")
            try:
                weight = [Fraction(v) for v in parts[0].split(",")]
            except ValueError as e:
                raise TermOrderError(f"bad weight vector {parts[0]!r}") from e
            tiebreak = parts[1] if len(parts) > 1 else "revlex"
            return cls.weighted(weight, tiebreak)
        raise TermOrderError(f"unknown term order {text!r}")

    def key(self, m: Monomial) -> tuple:
        """Sort key: larger key means larger monomial."""
        if self.kind == "weight" and len(self.weight) != len(m):
            raise DimensionError(
                f"weight vector has {len(self.weight)} entries, monomial has {len(m)}")
        return _order_key(self.kind, self.weight, self.tiebreak, m)

    def compare(self, a: Monomial, b: Monomial) -> Comparison:
        if len(a) != len(b):
            raise DimensionError(f"cannot compare monomials in {len(a)} and {len(b)} variables")
        ka, kb = self.key(a), self.key(b)
        if ka > kb:
            return Comparison.GREATER
        if ka < kb:
            return Comparison.LESS
        return Comparison.EQUAL

    def weight_ties(self, a: Monomial, b: Monomial) -> bool:
        """True when a weight order needs its tiebreak to separate ``a``, ``b``."""
        if self.kind != "weight" or a == b:
            return False
        return self.key(a)[0] == self.key(b)[0]

    def _identity(self):
        return (self.kind, self.weight, self.tiebreak)

    def __eq__(self, other) -> bool:
        return isinstance(other, TermOrder) and self._identity() == other._identity()

    def __hash__(self) -> int:
        return hash(self._identity())

    def __str__(self) -> str:
        if self.kind == "weight":
            text = "weight:" + _format_weight(self.weight)
            return text if self.tiebreak == "revlex" else f"{text}:{self.tiebreak}"
        return self.kind

    def __repr__(self) -> str:
        return f"TermOrder({str(self)!r})"


@lru_cache(maxsize=KEY_CACHE_SIZE)
def _order_key(kind: str, weight: Optional[Tuple[Fraction, ...]], tiebreak: str,
               m: Monomial) -> tuple:
    if kind == "weight":
        return (sum(w * a for w, a in zip(weight, m)),) + _tie_key(tiebreak, m)
    return _tie_key(kind, m)


def _tie_key(kind: str, m: Monomial) -> tuple:
    if kind == "lex":
        return (m.degree,) + tuple(m)
    return (m.degree,) + tuple(-e for e in reversed(m))


def _format_weight(weight: Sequence[Fraction]) -> str:
    return ",".join(str(v) for v in weight)


def compare(order: TermOrder, a: Monomial, b: Monomial) -> Comparison:
    """Compare ``a`` and ``b`` under ``order``."""
    return order.compare(a, b)


LEX = TermOrder.lex()
REVLEX = TermOrder.revlex()


class Polynomial:
    """An immutable polynomial with exact rational coefficients."""

    __slots__ = ("terms", "order", "n")

    def __init__(self, terms: Union[Mapping[Monomial, Rational], Iterable[Tuple[Rational, Monomial]]],
                 order: TermOrder = REVLEX, n: Optional[int] = None):
        collected: Dict[Monomial, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else ((m, c) for c, m in terms)
        for m, c in items:
            m = m if isinstance(m, Monomial) else Monomial(m)
            value = collected.get(m, 0) + Fraction(c)
            if value:
                collected[m] = value
            else:
                collected.pop(m, None)
        sizes = {len(m) for m in collected}
        if len(sizes) > 1:
            raise DimensionError(f"terms mix rings with {sorted(sizes)} variables")
        if sizes:
            size = sizes.pop()
            if n is not None and n != size:
                raise DimensionError(f"terms live in {size} variables, expected {n}")
            n = size
        if n is None:
            raise DimensionError("the zero polynomial needs an explicit variable count")
        self.n = n
        self.order = order
        self.terms: Tuple[Tuple[Fraction, Monomial], ...] = tuple(
            (collected[m], m) for m in sorted(collected, key=order.key, reverse=True))

    @classmethod
    def monomial(cls, m: Monomial, coefficient: Rational = 1,
                 order: TermOrder = REVLEX) -> "Polynomial":
        return cls({m: coefficient}, order, len(m))

    @classmethod
    def zero(cls, n: int, order: TermOrder = REVLEX) -> "Polynomial":
        return cls({}, order, n)

    @classmethod
    def variable(cls, i: int, n: int, order: TermOrder = REVLEX) -> "Polynomial":
        return cls.monomial(Monomial.variable(i, n), 1, order)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def lead(self) -> Monomial:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading monomial")
        return self.terms[0][1]

    @property
    def leading_coefficient(self) -> Fraction:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading coefficient")
        return self.terms[0][0]

    @property
    def support(self) -> Tuple[Monomial, ...]:
        return tuple(m for _, m in self.terms)

    @property
    def homogeneous_degree(self) -> Optional[int]:
        degrees = {m.degree for _, m in self.terms}
        return degrees.pop() if len(degrees) == 1 else None

    def degrees(self) -> List[int]:
        return sorted({m.degree for _, m in self.terms})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def as_dict(self) -> Dict[Monomial, Fraction]:
        return {m: c for c, m in self.terms}

    def coefficient(self, m: Monomial) -> Fraction:
        for c, t in self.terms:
            if t == m:
                return c
        return Fraction(0)

    def with_order(self, order: TermOrder) -> "Polynomial":
        if order == self.order:
            return self
        return Polynomial(self.as_dict(), order, self.n)

    def monic(self) -> "Polynomial":
        if not self.terms or self.leading_coefficient == 1:
            return self
        return self.scale(1 / self.leading_coefficient)

    def scale(self, factor: Rational) -> "Polynomial":
        factor = Fraction(factor)
        return Polynomial({m: c * factor for c, m in self.terms}, self.order, self.n)

    def times_monomial(self, m: Monomial, coefficient: Rational = 1) -> "Polynomial":
        coefficient = Fraction(coefficient)
        return Polynomial({t.times(m): c * coefficient for c, t in self.terms}, self.order, self.n)

    def _check(self, other: "Polynomial"):
        if self.n != other.n:
            raise DimensionError(f"cannot combine polynomials in {self.n} and {other.n} variables")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        merged = self.as_dict()
        for c, m in other.terms:
            merged[m] = merged.get(m, 0) + c
        return Polynomial(merged, self.order, self.n)

    def __neg__(self) -> "Polynomial":
        return self.scale(-1)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: Union["Polynomial", Rational]) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        product: Dict[Monomial, Fraction] = {}
        for c1, m1 in self.terms:
            for c2, m2 in other.terms:
                m = m1.times(m2)
                product[m] = product.get(m, 0) + c1 * c2
        return Polynomial(product, self.order, self.n)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n == other.n and self.as_dict() == other.as_dict()

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.as_dict().items())))

    def format(self, names: Optional[Sequence[str]] = None) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for index, (c, m) in enumerate(self.terms):
            sign = "-" if c < 0 else "+"
            magnitude = -c if c < 0 else c
            body = m.format(names)
            if magnitude != 1:
                body = str(magnitude) if body == "1" else f"{magnitude}*{body}"
            if index == 0:
                pieces.append(body if sign == "+" else f"-{body}")
            else:
                pieces.append(f" {sign} {body}")
        return "".join(pieces)

    def __repr__(self) -> str:
        return self.format()

    __str__ = __repr__


class ChangeOfCoordinates:
    """An invertible linear change of coordinates ``g(x_i) = sum_j g_ji x_j``."""

    SHAPES = ("general", "upper-triangular", "lower-triangular")

    def __init__(self, matrix: Sequence[Sequence[Rational]], shape: str = "general"):
        rows = tuple(tuple(Fraction(v) for v in row) for row in matrix)
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise CoordinateError("coordinate change needs a nonempty square matrix")
        if shape not in self.SHAPES:
            raise CoordinateError(f"unknown matrix shape {shape!r}")
        if shape == "upper-triangular" and any(rows[i][j] for i in range(n) for j in range(i)):
            raise CoordinateError("matrix is not upper triangular")
        if shape == "lower-triangular" and any(rows[i][j] for i in range(n) for j in range(i + 1, n)):
            raise CoordinateError("matrix is not lower triangular")
        det = determinant(rows)
        if det == 0:
            raise CoordinateError("matrix is singular")
        self.matrix = rows
        self.shape = shape
        self.determinant = det
        self._images: Dict[Monomial, Dict[Monomial, Fraction]] = {}

    @property
    def n(self) -> int:
        return len(self.matrix)

    @classmethod
    def identity(cls, n: int) -> "ChangeOfCoordinates":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    def inverse(self) -> "ChangeOfCoordinates":
        try:
            inv = inverse(self.matrix)
        except LinearAlgebraError as e:
            raise CoordinateError(e.reason) from e
        return ChangeOfCoordinates(inv, self.shape)

    def image_of_variable(self, i: int) -> Dict[Monomial, Fraction]:
        """``g(x_i)`` as a dictionary; ``i`` is 1-based."""
        n = self.n
        return {Monomial.variable(j + 1, n): self.matrix[j][i - 1]
                for j in range(n) if self.matrix[j][i - 1]}

    def image_of_monomial(self, m: Monomial) -> Dict[Monomial, Fraction]:
        cached = self._images.get(m)
        if cached is not None:
            return cached
        i = m.max_index
        if i == 0:
            image = {m: Fraction(1)}
        else:
            rest = self.image_of_monomial(m.quotient(Monomial.variable(i, self.n)))
            image = {}
            for t, c in rest.items():
                for v, a in self.image_of_variable(i).items():
                    key = t.times(v)
                    value = image.get(key, 0) + c * a
                    if value:
                        image[key] = value
                    else:
                        image.pop(key, None)
        self._images[m] = image
        return image

    def __eq__(self, other) -> bool:
        return isinstance(other, ChangeOfCoordinates) and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __repr__(self) -> str:
        return f"ChangeOfCoordinates({[list(map(str, row)) for row in self.matrix]}, {self.shape!r})"


def apply_coordinates(g: ChangeOfCoordinates, f: Polynomial) -> Polynomial:
    """Substitute ``x_i -> g(x_i)`` in ``f`` and collect terms exactly."""
    if g.n != f.n:
        raise DimensionError(f"{g.n}x{g.n} matrix cannot act on {f.n} variables")
    result: Dict[Monomial, Fraction] = {}
    for c, m in f.terms:
        for t, a in g.image_of_monomial(m).items():
            result[t] = result.get(t, 0) + c * a
    return Polynomial(result, f.order, f.n)


def random_coordinates(n: int, seed: int, bound: int = 100,
                       shape: str = "general") -> ChangeOfCoordinates:
    """Seeded random coordinate change with integer entries in ``[-bound, bound]``.

    Triangular shapes get a nonzero diagonal; singular draws are redrawn.
    """
    if bound < 2:
        raise CoordinateError(f"entry bound must be at least 2, got {bound}")
    if shape not in ChangeOfCoordinates.SHAPES:
        raise CoordinateError(f"unknown matrix shape {shape!r}")
    rng = random.Random(seed)
    nonzero = [v for v in range(-bound, bound + 1) if v]
    for attempt in range(MAX_REDRAWS):
        matrix = []
        for i in range(n):
            row = []
            for j in range(n):
                if shape == "upper-triangular" and i > j:
                    row.append(0)
                elif shape == "lower-triangular" and i < j:
                    row.append(0)
                elif shape != "general" and i == j:
                    row.append(rng.choice(nonzero))
                else:
                    row.append(rng.randint(-bound, bound))
            matrix.append(row)
        if determinant(matrix) != 0:
            return ChangeOfCoordinates(matrix, shape)
        logger.debug("redrawing singular %dx%d matrix (attempt %d)", n, n, attempt + 1)
    raise CoordinateError(f"no invertible matrix after {MAX_REDRAWS} draws (seed {seed})")
