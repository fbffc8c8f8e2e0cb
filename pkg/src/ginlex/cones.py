"""Open cones of weight vectors and exact Fourier-Motzkin feasibility.

Every constraint is a homogeneous strict inequality ``a . w > 0``.  A system
is infeasible exactly when a nonnegative, nonzero combination of its rows
vanishes; elimination tracks the multipliers of every derived row so such a
combination is returned as a certificate.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from ginlex.errors import GinlexError
from ginlex.linalg import clear_denominators
from ginlex.polynomials import DimensionError, Monomial

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StrictInequality:
    """``coefficients . w > 0``."""

    coefficients: Tuple[Fraction, ...]
    label: str = ""

    def value(self, w: Sequence[Fraction]) -> Fraction:
        return sum((a * x for a, x in zip(self.coefficients, w)), Fraction(0))

    def holds(self, w: Sequence[Fraction]) -> bool:
        return self.value(w) > 0

    def __str__(self) -> str:
        terms = [f"{a}*w{k + 1}" for k, a in enumerate(self.coefficients) if a]
        body = " + ".join(terms) if terms else "0"
        return f"{body} > 0" + (f"  [{self.label}]" if self.label else "")


@dataclass(frozen=True)
class FeasibilityResult:
    """Outcome of elimination.

    A feasible system carries an integer ``witness``; an infeasible one
    carries ``certificate``, nonnegative multipliers by constraint label
    whose combination of rows is the zero vector.
    """

    feasible: bool
    witness: Optional[Tuple[int, ...]] = None
    certificate: Optional[Dict[str, Fraction]] = None


@dataclass
class _Row:
    coefficients: Tuple[Fraction, ...]
    multipliers: Dict[int, Fraction]


def _normalized(coefficients: Tuple[Fraction, ...]) -> Tuple[int, ...]:
    scaled = clear_denominators({k: v for k, v in enumerate(coefficients) if v})
    return tuple(scaled.get(k, 0) for k in range(len(coefficients)))


def _combine(a: _Row, ca: Fraction, b: _Row, cb: Fraction) -> _Row:
    coefficients = tuple(ca * x + cb * y for x, y in zip(a.coefficients, b.coefficients))
    multipliers: Dict[int, Fraction] = {}
    for source, factor in ((a, ca), (b, cb)):
        for k, v in source.multipliers.items():
            multipliers[k] = multipliers.get(k, 0) + factor * v
    return _Row(coefficients, multipliers)


def _dedupe(rows: List[_Row]) -> List[_Row]:
    seen = set()
    kept = []
    for row in rows:
        key = _normalized(row.coefficients)
        if key not in seen:
            seen.add(key)
            kept.append(row)
    return kept


def fourier_motzkin(inequalities: Sequence[StrictInequality], n: int) -> FeasibilityResult:
    """Decide ``{w : a . w > 0 for all rows}`` is nonempty, exactly."""
    for inequality in inequalities:
        if len(inequality.coefficients) != n:
            raise DimensionError(
                f"inequality has {len(inequality.coefficients)} coefficients, expected {n}")

    rows = [_Row(tuple(Fraction(a) for a in q.coefficients), {k: Fraction(1)})
            for k, q in enumerate(inequalities)]
    stages: List[List[_Row]] = []
    for x in range(n):
        for row in rows:
            if not any(row.coefficients):
                return _infeasible(row, inequalities)
        rows = _dedupe(rows)
        stages.append(rows)
        positive = [r for r in rows if r.coefficients[x] > 0]
        negative = [r for r in rows if r.coefficients[x] < 0]
        untouched = [r for r in rows if r.coefficients[x] == 0]
        combined = [_combine(p, -q.coefficients[x], q, p.coefficients[x])
                    for p in positive for q in negative]
        rows = untouched + combined
        logger.debug("eliminated w%d: %d rows remain", x + 1, len(rows))
    if rows:
        # no variables left, every surviving row reads 0 > 0
        return _infeasible(rows[0], inequalities)

    witness = _back_substitute(stages, n)
    if not all(q.holds(witness) for q in inequalities):
        raise GinlexError("Fourier-Motzkin witness violates its own system")
    return FeasibilityResult(True, witness=witness)


def _infeasible(row: _Row, inequalities: Sequence[StrictInequality]) -> FeasibilityResult:
    certificate: Dict[str, Fraction] = {}
    for k, v in sorted(row.multipliers.items()):
        if v:
            label = inequalities[k].label or f"#{k}"
            certificate[label] = certificate.get(label, 0) + v
    return FeasibilityResult(False, certificate=certificate)


def _back_substitute(stages: List[List[_Row]], n: int) -> Tuple[int, ...]:
    w: List[Fraction] = [Fraction(0)] * n
    for x in range(n - 1, -1, -1):
        lower: Optional[Fraction] = None
        upper: Optional[Fraction] = None
        for row in stages[x]:
            a = row.coefficients[x]
            if not a:
                continue
            rest = sum((row.coefficients[k] * w[k] for k in range(x + 1, n)), Fraction(0))
            bound = -rest / a
            if a > 0:
                lower = bound if lower is None else max(lower, bound)
            else:
                upper = bound if upper is None else min(upper, bound)
        if lower is not None and upper is not None:
            w[x] = (lower + upper) / 2
        elif lower is not None:
            w[x] = lower + 1
        elif upper is not None:
            w[x] = upper - 1
    return _integral(w)


def _integral(w: Sequence[Fraction]) -> Tuple[int, ...]:
    denominator = 1
    for v in w:
        denominator = denominator * v.denominator // gcd(denominator, v.denominator)
    scaled = [int(v * denominator) for v in w]
    content = 0
    for v in scaled:
        content = gcd(content, v)
    if content > 1:
        scaled = [v // content for v in scaled]
    return tuple(scaled)


class WeightCone:
    """Weights ``w1 > w2 > ... > wn > 0`` plus selection constraints."""

    def __init__(self, n: int, constraints: Sequence[StrictInequality] = ()):
        self.n = n
        self.constraints: Tuple[StrictInequality, ...] = tuple(constraints)

    @classmethod
    def base(cls, n: int) -> "WeightCone":
        constraints = []
        for i in range(n - 1):
            coefficients = [Fraction(0)] * n
            coefficients[i], coefficients[i + 1] = Fraction(1), Fraction(-1)
            constraints.append(StrictInequality(tuple(coefficients), f"w{i + 1}>w{i + 2}"))
        last = [Fraction(0)] * n
        last[n - 1] = Fraction(1)
        constraints.append(StrictInequality(tuple(last), f"w{n}>0"))
        return cls(n, constraints)

    def require_greater(self, a: Monomial, b: Monomial) -> "WeightCone":
        """Cone with ``w . a > w . b`` added."""
        if len(a) != self.n or len(b) != self.n:
            raise DimensionError(f"monomials must live in {self.n} variables")
        coefficients = tuple(Fraction(x - y) for x, y in zip(a, b))
        inequality = StrictInequality(coefficients, f"{a.format()} > {b.format()}")
        return WeightCone(self.n, self.constraints + (inequality,))

    def combine(self, other: "WeightCone") -> "WeightCone":
        if other.n != self.n:
            raise DimensionError(f"cannot combine cones in {self.n} and {other.n} variables")
        extra = tuple(q for q in other.constraints if q not in self.constraints)
        return WeightCone(self.n, self.constraints + extra)

    def feasibility(self) -> FeasibilityResult:
        return fourier_motzkin(self.constraints, self.n)

    def contains(self, w: Sequence[Fraction]) -> bool:
        return all(q.holds(w) for q in self.constraints)

    def __len__(self) -> int:
        return len(self.constraints)
