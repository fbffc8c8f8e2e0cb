"""Koszul homology of ``R/I`` with respect to a sequence of linear forms.

A strand ``K_{i,j}`` has the basis ``e_S (x) u`` with ``S`` an ``i``-subset of
the forms and ``u`` a standard monomial of degree ``j - i`` modulo
``in_revlex(I)``.  The differential is
``d(e_S (x) u) = sum_t (-1)^t e_{S - s_t} (x) NF(z_{s_t} u)``.
"""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from ginlex.errors import GinlexError
from ginlex.groebner import (
    DEFAULT_TRIALS,
    GenericityError,
    GroebnerBasis,
    buchberger,
    homogeneous_component,
    revlex_gin,
)
from ginlex.linalg import IntegerEchelon, kernel, rank
from ginlex.polynomials import (
    MAX_REDRAWS,
    REVLEX,
    DimensionError,
    Monomial,
    Polynomial,
    monomials_of_degree,
)
from ginlex.stable import BettiTable, BoundError

logger = logging.getLogger(__name__)

FORM_COEFFICIENT_BOUND = 1000

Cell = Tuple[Tuple[int, ...], Monomial]


class DependentFormsError(GinlexError):
    """Raised when linear forms are not linearly independent."""


@dataclass(frozen=True)
class LinearFormSequence:
    """A sequence of linearly independent linear forms ``z_1, ..., z_p``."""

    forms: Tuple[Polynomial, ...]
    n: int
    provenance: str = "explicit"
    seed: Optional[int] = None

    def __post_init__(self):
        for z in self.forms:
            if z.n != self.n:
                raise DimensionError(f"form {z} does not live in {self.n} variables")
            if z.homogeneous_degree != 1:
                raise DependentFormsError(f"{z} is not a linear form")
        if rank(z.as_dict() for z in self.forms) < len(self.forms):
            raise DependentFormsError(f"{len(self.forms)} forms are linearly dependent")

    def __len__(self) -> int:
        return len(self.forms)

    @property
    def p(self) -> int:
        return len(self.forms)

    def prefix(self, j: int) -> "LinearFormSequence":
        return LinearFormSequence(self.forms[:j], self.n, self.provenance, self.seed)

    @classmethod
    def explicit(cls, forms: Sequence[Polynomial], n: Optional[int] = None) -> "LinearFormSequence":
        forms = tuple(forms)
        if forms:
            n = forms[0].n
        if n is None:
            raise DimensionError("an empty sequence needs an explicit variable count")
        return cls(forms, n)

    @classmethod
    def variables(cls, n: int) -> "LinearFormSequence":
        return cls(tuple(Polynomial.variable(i, n) for i in range(1, n + 1)), n, "variables")

    @classmethod
    def last_variables(cls, p: int, n: int) -> "LinearFormSequence":
        """``x_{n-p+1}, ..., x_n``."""
        if not 0 <= p <= n:
            raise DimensionError(f"p must lie in [0, {n}], got {p}")
        forms = tuple(Polynomial.variable(i, n) for i in range(n - p + 1, n + 1))
        return cls(forms, n, "last-variables")

    @classmethod
    def generic(cls, p: int, n: int, seed: int,
                bound: int = FORM_COEFFICIENT_BOUND) -> "LinearFormSequence":
        """``p`` random forms with integer coefficients in ``[-bound, bound]``."""
        if not 0 <= p <= n:
            raise DimensionError(f"p must lie in [0, {n}], got {p}")
        rng = random.Random(seed)
        for _ in range(MAX_REDRAWS):
            rows = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(p)]
            if rank({k: v for k, v in enumerate(row) if v} for row in rows) == p:
                forms = tuple(
                    Polynomial({Monomial.variable(k + 1, n): v for k, v in enumerate(row)}, REVLEX, n)
                    for row in rows)
                return cls(forms, n, "generic", seed)
        raise DependentFormsError(f"no independent forms after {MAX_REDRAWS} draws (seed {seed})")


class GradedQuotientBasis:
    """Standard monomials of ``R/I`` modulo ``in_revlex(I)``, degree by degree."""

    def __init__(self, gens: Sequence[Polynomial], n: Optional[int] = None):
        gens = [g for g in gens if g]
        if gens:
            n = gens[0].n
        if n is None:
            raise DimensionError("the zero ideal needs an explicit variable count")
        self.n = n
        self.basis: GroebnerBasis = buchberger(gens, REVLEX, n)
        self.initial = self.basis.initial_ideal
        self._degrees: Dict[int, List[Monomial]] = {}
        self._forms: Dict[Monomial, Dict[Monomial, Fraction]] = {}

    def monomials(self, d: int) -> List[Monomial]:
        cached = self._degrees.get(d)
        if cached is None:
            cached = [m for m in monomials_of_degree(d, self.n) if m not in self.initial]
            self._degrees[d] = cached
        return cached

    def dim(self, d: int) -> int:
        return len(self.monomials(d))

    def reduce_monomial(self, m: Monomial) -> Dict[Monomial, Fraction]:
        """Normal form of ``m`` as ``{standard monomial: coefficient}``."""
        cached = self._forms.get(m)
        if cached is None:
            if m in self.initial:
                cached = self.basis.reduce(Polynomial.monomial(m, 1, REVLEX)).as_dict()
            else:
                cached = {m: Fraction(1)}
            self._forms[m] = cached
        return cached

    def multiply(self, z: Polynomial, u: Monomial) -> Dict[Monomial, Fraction]:
        """``NF(z * u)``."""
        result: Dict[Monomial, Fraction] = {}
        for c, x in z.terms:
            for t, a in self.reduce_monomial(u.times(x)).items():
                value = result.get(t, 0) + c * a
                if value:
                    result[t] = value
                else:
                    result.pop(t, None)
        return result


class KoszulHomology:
    """Graded strands of ``K(z_1, ..., z_p; R/I)`` with cached differentials."""

    def __init__(self, quotient: GradedQuotientBasis, forms: LinearFormSequence):
        if forms.n != quotient.n:
            raise DimensionError(f"forms live in {forms.n} variables, ideal in {quotient.n}")
        self.quotient = quotient
        self.forms = forms
        self.p = len(forms)
        self._ranks: Dict[Tuple[int, int], int] = {}

    def cells(self, i: int, j: int) -> List[Cell]:
        """Basis of ``K_{i,j}``; empty outside ``0 <= i <= p``, ``j >= i``."""
        if i < 0 or i > self.p or j < i:
            return []
        standard = self.quotient.monomials(j - i)
        return [(S, u) for S in combinations(range(self.p), i) for u in standard]

    def dim(self, i: int, j: int) -> int:
        if i < 0 or i > self.p or j < i:
            return 0
        return len(self.quotient.monomials(j - i)) * comb(self.p, i)

    def boundary(self, cell: Cell) -> Dict[Cell, Fraction]:
        S, u = cell
        image: Dict[Cell, Fraction] = {}
        for t, s in enumerate(S):
            face = S[:t] + S[t + 1:]
            sign = -1 if t % 2 else 1
            for v, c in self.quotient.multiply(self.forms.forms[s], u).items():
                key = (face, v)
                value = image.get(key, 0) + sign * c
                if value:
                    image[key] = value
                else:
                    image.pop(key, None)
        return image

    def differential(self, i: int, j: int) -> List[Dict[Cell, Fraction]]:
        """Images of the basis of ``K_{i,j}`` in ``K_{i-1,j}``."""
        if i <= 0:
            return []
        return [self.boundary(cell) for cell in self.cells(i, j)]

    def rank(self, i: int, j: int) -> int:
        """Rank of ``phi_i: K_{i,j} -> K_{i-1,j}``."""
        if i <= 0 or i > self.p or j < i:
            return 0
        key = (i, j)
        if key not in self._ranks:
            self._ranks[key] = rank(row for row in self.differential(i, j))
        return self._ranks[key]

    def betti(self, i: int, j: int) -> int:
        """``dim H_i(z; R/I)_j = dim K_{i,j} - rank phi_i - rank phi_{i+1}``."""
        if i < 0 or i > self.p:
            return 0
        dim = self.dim(i, j)
        if not dim:
            return 0
        return dim - self.rank(i, j) - self.rank(i + 1, j)

    def cycles(self, i: int, j: int) -> List[Dict[Cell, Fraction]]:
        """Basis of ``ker phi_i`` in degree ``j``."""
        cells = self.cells(i, j)
        if i == 0:
            return [{cell: Fraction(1)} for cell in cells]
        images = [row for row in self.differential(i, j)]
        return [{cells[s]: c for s, c in vector.items()} for vector in kernel(images)]

    def boundaries(self, i: int, j: int) -> IntegerEchelon:
        """Echelon form of ``im phi_{i+1}`` inside ``K_{i,j}``."""
        echelon = IntegerEchelon()
        for row in self.differential(i + 1, j):
            echelon.add(row)
        return echelon

    def multiply(self, z: Polynomial, chain: Dict[Cell, Fraction]) -> Dict[Cell, Fraction]:
        result: Dict[Cell, Fraction] = {}
        for (S, u), c in chain.items():
            for v, a in self.quotient.multiply(z, u).items():
                key = (S, v)
                value = result.get(key, 0) + c * a
                if value:
                    result[key] = value
                else:
                    result.pop(key, None)
        return result


def koszul_betti(gens: Sequence[Polynomial], forms: LinearFormSequence, i: int, j: int,
                 n: Optional[int] = None) -> int:
    """``beta_ijp(R/I) = dim H_i(z_1, ..., z_p; R/I)_j``."""
    return KoszulHomology(GradedQuotientBasis(gens, n or forms.n), forms).betti(i, j)


@dataclass
class KoszulBettiTensor:
    """``(i, j, p) -> beta_ijp``, zero when absent."""

    entries: Dict[Tuple[int, int, int], int]
    n: int
    p_max: int
    j_bound: int
    seeds: Tuple[int, ...] = ()

    def __post_init__(self):
        self.entries = {k: v for k, v in self.entries.items() if v}

    def __getitem__(self, key: Tuple[int, int, int]) -> int:
        return self.entries.get(key, 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, KoszulBettiTensor):
            return NotImplemented
        return self.entries == other.entries

    def table(self, p: int) -> BettiTable:
        return BettiTable({(i, j): v for (i, j, q), v in self.entries.items() if q == p},
                          self.n, p)

    def dominated_by(self, other: "KoszulBettiTensor") -> bool:
        return all(value <= other[key] for key, value in self.entries.items())


def default_j_bound(quotient: GradedQuotientBasis) -> int:
    """``n`` times the top degree of the Groebner basis.

    A syzygy of ``in(I)`` lives in degree at most the lcm of ``i <= n``
    generators, and Koszul homology of ``R/I`` is bounded by that of ``R/in(I)``.
    """
    return quotient.n * max((g.lead.degree for g in quotient.basis), default=1)


def _tensor_for(quotient: GradedQuotientBasis, forms: LinearFormSequence, j_bound: int,
                audit: bool) -> Dict[Tuple[int, int, int], int]:
    entries: Dict[Tuple[int, int, int], int] = {}
    for p in range(len(forms) + 1):
        homology = KoszulHomology(quotient, forms.prefix(p))
        for i in range(p + 1):
            for j in range(i, j_bound + 1):
                value = homology.betti(i, j)
                if value:
                    entries[(i, j, p)] = value
                    if audit and i > 0 and j == j_bound:
                        raise BoundError(
                            f"H_{i} is nonzero at the degree bound {j_bound} (p={p}); raise the bound")
        logger.debug("strands for p=%d done", p)
    return entries


def koszul_betti_tensor(gens: Sequence[Polynomial], p_max: int, seed: int = 0,
                        j_bound: Optional[int] = None, n: Optional[int] = None,
                        forms: Optional[LinearFormSequence] = None) -> KoszulBettiTensor:
    """All ``beta_ijp`` for ``p <= p_max`` and ``j <= j_bound``.

    Generic forms are drawn from ``seed`` and ``seed + 1``; the two tensors
    must agree.  Explicit ``forms`` skip the agreement check.
    """
    quotient = GradedQuotientBasis(gens, n)
    n = quotient.n
    if not 0 <= p_max <= n:
        raise DimensionError(f"p_max must lie in [0, {n}], got {p_max}")
    proven = default_j_bound(quotient)
    if j_bound is None:
        j_bound = proven
    # below the proven bound a nonzero top strand means the bound was cut short
    audit = j_bound < proven
    if forms is not None:
        entries = _tensor_for(quotient, forms.prefix(p_max), j_bound, audit)
        return KoszulBettiTensor(entries, n, p_max, j_bound)

    first = _tensor_for(quotient, LinearFormSequence.generic(p_max, n, seed), j_bound, audit)
    second = _tensor_for(quotient, LinearFormSequence.generic(p_max, n, seed + 1), j_bound,
                         audit)
    if first != second:
        candidates = [KoszulBettiTensor(first, n, p_max, j_bound, (seed,)),
                      KoszulBettiTensor(second, n, p_max, j_bound, (seed + 1,))]
        raise GenericityError(f"Koszul-Betti numbers differ for seeds {seed} and {seed + 1}",
                              candidates)
    logger.info("Koszul-Betti tensor agreed for seeds %d and %d", seed, seed + 1)
    return KoszulBettiTensor(first, n, p_max, j_bound, (seed, seed + 1))


def graded_betti(gens: Sequence[Polynomial], n: Optional[int] = None,
                 j_bound: Optional[int] = None) -> BettiTable:
    """Graded Betti numbers of ``R/I`` from the Koszul complex on the variables."""
    quotient = GradedQuotientBasis(gens, n)
    n = quotient.n
    if j_bound is None:
        j_bound = default_j_bound(quotient)
    homology = KoszulHomology(quotient, LinearFormSequence.variables(n))
    entries = {}
    for i in range(n + 1):
        for j in range(i, j_bound + 1):
            value = homology.betti(i, j)
            if value:
                entries[(i, j)] = value
    return BettiTable(entries, n, n)


def first_betti_numbers(gens: Sequence[Polynomial], n: Optional[int] = None) -> Dict[int, int]:
    """``j -> beta_1j(R/I)``, the minimal generator counts by degree."""
    gens = [g for g in gens if g]
    quotient = GradedQuotientBasis(gens, n)
    top = max((g.homogeneous_degree or 0 for g in gens), default=0)
    homology = KoszulHomology(quotient, LinearFormSequence.variables(quotient.n))
    result = {}
    for j in range(1, top + 1):
        value = homology.betti(1, j)
        if value:
            result[j] = value
    return result


def is_proper_sequence(forms: LinearFormSequence, gens: Sequence[Polynomial],
                       n: Optional[int] = None, j_bound: Optional[int] = None) -> bool:
    """``z_{k+1} H_i(z_1, ..., z_k; R/I) = 0`` for all ``k < p`` and ``i > 0``."""
    quotient = GradedQuotientBasis(gens, n or forms.n)
    if j_bound is None:
        j_bound = default_j_bound(quotient)
    for k in range(1, len(forms)):
        homology = KoszulHomology(quotient, forms.prefix(k))
        z = forms.forms[k]
        for i in range(1, k + 1):
            for t in range(i, j_bound + 1):
                if not homology.betti(i, t):
                    continue
                targets = homology.boundaries(i, t + 1)
                for cycle in homology.cycles(i, t):
                    product = homology.multiply(z, cycle)
                    if product and not targets.contains(product):
                        logger.debug("z_%d does not kill H_%d(z_1..z_%d) in degree %d",
                                     k + 1, i, k, t)
                        return False
    return True


def recursion_failures(tensor: KoszulBettiTensor) -> List[Tuple[int, int, int]]:
    """Entries ``(i, j, p)`` breaking the recursions that proper sequences satisfy."""
    b = tensor.__getitem__
    failures = []
    for p in range(1, tensor.p_max + 1):
        for i in range(1, p + 1):
            for j in range(i, tensor.j_bound + 1):
                if i == 1:
                    expected = b((1, j, p - 1)) + b((0, j - 1, p - 1)) - b((0, j, p - 1)) + b((0, j, p))
                else:
                    expected = b((i, j, p - 1)) + b((i - 1, j - 1, p - 1))
                if b((i, j, p)) != expected:
                    failures.append((i, j, p))
    return failures


def recursion_check(tensor: KoszulBettiTensor) -> bool:
    return not recursion_failures(tensor)


def is_componentwise_linear_by_definition(gens: Sequence[Polynomial], n: Optional[int] = None,
                                          top: Optional[int] = None, seed: int = 0,
                                          trials: int = DEFAULT_TRIALS) -> bool:
    """Every ``I_<k>`` has a linear resolution, for ``k`` up to ``top``.

    ``top`` defaults to the regularity of ``I``, the top generator degree of
    its revlex gin; beyond it every ``I_<k>`` is linear.
    """
    gens = [g for g in gens if g]
    if not gens:
        return True
    n = gens[0].n
    if top is None:
        top = revlex_gin(gens, trials=trials, seed=seed, n=n).max_degree
    start = min(g.homogeneous_degree for g in gens)
    for k in range(start, top + 1):
        monomials, rows = homogeneous_component(gens, k, n)
        component = [Polynomial.monomial(m, 1, REVLEX) for m in monomials] + rows
        table = graded_betti(component, n)
        if any(j != i + k - 1 for i, j in table.entries if i >= 1):
            logger.debug("I_<%d> has a nonlinear syzygy: %s", k, table.entries)
            return False
    return True
