"""Normal forms, Buchberger's algorithm and generic initial ideals."""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from ginlex.errors import GinlexError
from ginlex.linalg import row_reduce
from ginlex.polynomials import (
    REVLEX,
    DimensionError,
    Monomial,
    Polynomial,
    TermOrder,
    apply_coordinates,
    monomials_of_degree,
    random_coordinates,
)

logger = logging.getLogger(__name__)

DEFAULT_TRIALS = 3
MIN_TRIALS = 2
DEFAULT_MATRIX_BOUND = 100


class GenericityError(GinlexError):
    """Raised when random coordinates fail to certify a generic answer."""

    def __init__(self, reason: str = "", candidates: Sequence = ()):
        self.candidates = list(candidates)
        super().__init__(reason)


def _generator_key(m: Monomial):
    # by degree, then lex-descending
    return (m.degree, tuple(-e for e in m))


class MonomialIdeal:
    """A monomial ideal stored by its minimal generators."""

    def __init__(self, generators: Iterable[Monomial], n: Optional[int] = None):
        gens = sorted({Monomial(g) for g in generators}, key=_generator_key)
        sizes = {len(g) for g in gens}
        if len(sizes) > 1:
            raise DimensionError(f"generators mix rings with {sorted(sizes)} variables")
        if sizes:
            size = sizes.pop()
            if n is not None and n != size:
                raise DimensionError(f"generators live in {size} variables, expected {n}")
            n = size
        if n is None:
            raise DimensionError("the zero ideal needs an explicit variable count")
        minimal: List[Monomial] = []
        for g in gens:
            if not any(h.divides(g) for h in minimal):
                minimal.append(g)
        self.n = n
        self.generators: Tuple[Monomial, ...] = tuple(minimal)
        self._parts: Dict[int, FrozenSet[Monomial]] = {}

    @classmethod
    def zero(cls, n: int) -> "MonomialIdeal":
        return cls((), n)

    @classmethod
    def from_polynomials(cls, gens: Sequence[Polynomial], n: Optional[int] = None) -> "MonomialIdeal":
        """The ideal of monomial generators; raises ValueError on a non-monomial."""
        monomials = []
        for g in gens:
            if not g.is_monomial():
                raise ValueError(f"{g} is not a monomial")
            monomials.append(g.lead)
            n = g.n
        return cls(monomials, n)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.n == other.n and self.generators == other.generators

    def __hash__(self) -> int:
        return hash((self.n, self.generators))

    def is_zero(self) -> bool:
        return not self.generators

    @property
    def max_degree(self) -> int:
        return max((g.degree for g in self.generators), default=0)

    @property
    def min_degree(self) -> int:
        return min((g.degree for g in self.generators), default=0)

    def generators_of_degree(self, d: int) -> List[Monomial]:
        return [g for g in self.generators if g.degree == d]

    def contains(self, m: Monomial) -> bool:
        return any(g.divides(m) for g in self.generators)

    def __contains__(self, m) -> bool:
        return self.contains(m)

    def degree_part(self, d: int) -> FrozenSet[Monomial]:
        """The monomials of ``I_d``."""
        part = self._parts.get(d)
        if part is None:
            if d < 0 or not self.generators:
                part = frozenset()
            elif d <= self.max_degree:
                part = frozenset(m for m in monomials_of_degree(d, self.n) if self.contains(m))
            else:
                below = self.degree_part(d - 1)
                part = frozenset(
                    m.times(Monomial.variable(i, self.n))
                    for m in below for i in range(1, self.n + 1))
            self._parts[d] = part
        return part

    def dimension(self, d: int) -> int:
        return len(self.degree_part(d))

    def truncation(self, k: int) -> "MonomialIdeal":
        """``I_<k>``, the ideal generated by ``I_k``."""
        return MonomialIdeal(self.degree_part(k), self.n)

    def is_strongly_stable(self) -> bool:
        """Exchange condition on minimal generators."""
        for g in self.generators:
            for i in range(2, self.n + 1):
                if not g[i - 1]:
                    continue
                for j in range(1, i):
                    if not self.contains(g.shift(i, j)):
                        return False
        return True

    def as_polynomials(self, order: TermOrder = REVLEX) -> List[Polynomial]:
        return [Polynomial.monomial(g, 1, order) for g in self.generators]

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        if self.n != other.n:
            raise DimensionError(f"cannot add ideals in {self.n} and {other.n} variables")
        return MonomialIdeal(self.generators + other.generators, self.n)

    def format(self) -> str:
        return "(" + ", ".join(g.format() for g in self.generators) + ")"

    def __repr__(self) -> str:
        return f"MonomialIdeal{self.format()}"

    __str__ = format


def normal_form(f: Polynomial, G: Sequence[Polynomial], order: TermOrder) -> Polynomial:
    """Remainder of ``f`` on division by ``G`` under ``order``.

    The largest reducible term is always reduced first, by the first element
    of ``G`` whose leading monomial divides it.
    """
    divisors = [g.with_order(order) for g in G if g]
    remaining = f.as_dict()
    remainder: Dict[Monomial, object] = {}
    while remaining:
        m = max(remaining, key=order.key)
        c = remaining.pop(m)
        for g in divisors:
            lead = g.lead
            if lead.divides(m):
                factor = c / g.leading_coefficient
                shift = m.quotient(lead)
                for a, t in g.terms[1:]:
                    key = t.times(shift)
                    value = remaining.get(key, 0) - factor * a
                    if value:
                        remaining[key] = value
                    else:
                        remaining.pop(key, None)
                break
        else:
            remainder[m] = c
    return Polynomial(remainder, order, f.n)


def spoly(f: Polynomial, g: Polynomial) -> Polynomial:
    """S-polynomial of two monic polynomials."""
    lcm = f.lead.lcm(g.lead)
    return f.times_monomial(lcm.quotient(f.lead)) - g.times_monomial(lcm.quotient(g.lead))


def _update(G: List[Polynomial], P: Set[Tuple[int, int]], f: Polynomial):
    """Add ``f`` to ``G`` and prune pairs with the Gebauer-Moeller criteria."""
    lmf = f.lead
    leads = [g.lead for g in G]
    P = {p for p in P
         if not lmf.divides(leads[p[0]].lcm(leads[p[1]]))
         or leads[p[0]].lcm(leads[p[1]]) == leads[p[0]].lcm(lmf)
         or leads[p[0]].lcm(leads[p[1]]) == leads[p[1]].lcm(lmf)}
    by_lcm: Dict[Monomial, List[int]] = {}
    for i, lead in enumerate(leads):
        by_lcm.setdefault(lead.lcm(lmf), []).append(i)
    minimal_lcms: List[Monomial] = []
    for lcm in sorted(by_lcm, key=f.order.key):
        if all(not other.divides(lcm) for other in minimal_lcms):
            minimal_lcms.append(lcm)
    new_pairs = set()
    for lcm in minimal_lcms:
        # coprime leading terms reduce to zero
        if not any(leads[i].is_coprime(lmf) for i in by_lcm[lcm]):
            new_pairs.add((min(by_lcm[lcm]), len(G)))
    return G + [f], P | new_pairs


def _minimalize(G: Sequence[Polynomial], order: TermOrder) -> List[Polynomial]:
    minimal: List[Polynomial] = []
    for f in sorted(G, key=lambda h: order.key(h.lead)):
        if all(not g.lead.divides(f.lead) for g in minimal):
            minimal.append(f)
    return minimal


def _interreduce(G: Sequence[Polynomial], order: TermOrder) -> List[Polynomial]:
    reduced = list(G)
    for i in range(len(reduced)):
        reduced[i] = normal_form(reduced[i], reduced[:i] + reduced[i + 1:], order).monic()
    return reduced


@dataclass(frozen=True)
class GroebnerBasis:
    """A Groebner basis with monic generators sorted by leading monomial."""

    generators: Tuple[Polynomial, ...]
    order: TermOrder
    n: int
    reduced: bool = True
    _leads: Tuple[Monomial, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_leads", tuple(g.lead for g in self.generators))

    @property
    def leading_monomials(self) -> Tuple[Monomial, ...]:
        return self._leads

    @cached_property
    def initial_ideal(self) -> MonomialIdeal:
        return MonomialIdeal(self._leads, self.n)

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.generators, self.order)

    def contains(self, f: Polynomial) -> bool:
        return not self.reduce(f)

    def is_groebner(self) -> bool:
        """Check that every S-polynomial reduces to zero."""
        gens = self.generators
        return all(
            not self.reduce(spoly(gens[i], gens[j]))
            for i in range(len(gens)) for j in range(i + 1, len(gens)))

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


def buchberger(gens: Sequence[Polynomial], order: TermOrder, n: Optional[int] = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Pairs are selected by the normal strategy (smallest lcm first) and pruned
    with the Gebauer-Moeller criteria.
    """
    gens = [g.with_order(order) for g in gens if g]
    if gens:
        n = gens[0].n
    if n is None:
        raise DimensionError("the zero ideal needs an explicit variable count")
    if any(g.n != n for g in gens):
        raise DimensionError("generators live in rings of different dimension")

    G: List[Polynomial] = []
    P: Set[Tuple[int, int]] = set()
    for f in gens:
        G, P = _update(G, P, f.monic())

    reductions = 0
    while P:
        i, j = min(P, key=lambda p: (order.key(G[p[0]].lead.lcm(G[p[1]].lead)), p))
        P.remove((i, j))
        r = normal_form(spoly(G[i], G[j]), G, order)
        reductions += 1
        if r:
            G, P = _update(G, P, r.monic())
    logger.debug("buchberger: %d pair reductions, %d polynomials before minimalizing",
                 reductions, len(G))

    basis = _interreduce(_minimalize(G, order), order)
    basis.sort(key=lambda g: order.key(g.lead))
    return GroebnerBasis(tuple(basis), order, n)


def initial_ideal(gens: Sequence[Polynomial], order: TermOrder,
                  n: Optional[int] = None) -> MonomialIdeal:
    """``in_order(I)`` for the ideal generated by ``gens``."""
    return buchberger(gens, order, n).initial_ideal


def _variable_count(gens: Sequence[Polynomial], n: Optional[int]) -> int:
    for g in gens:
        return g.n
    if n is None:
        raise DimensionError("the zero ideal needs an explicit variable count")
    return n


def monomial_shortcut(gens: Sequence[Polynomial], n: Optional[int] = None) -> Optional[MonomialIdeal]:
    """The ideal itself when ``gens`` are monomials spanning a Borel-fixed ideal."""
    gens = [g for g in gens if g]
    if not all(g.is_monomial() for g in gens):
        return None
    ideal = MonomialIdeal((g.lead for g in gens), _variable_count(gens, n))
    return ideal if ideal.is_strongly_stable() else None


def gin(gens: Sequence[Polynomial], order: TermOrder, trials: int = DEFAULT_TRIALS,
        seed: int = 0, bound: int = DEFAULT_MATRIX_BOUND, shape: str = "general",
        n: Optional[int] = None, shortcut: bool = True) -> MonomialIdeal:
    """Generic initial ideal by agreement of ``trials`` random coordinate changes.

    Trial ``k`` uses the matrix drawn from seed ``seed + k``.  Raises
    GenericityError when the trials disagree or the common answer is not
    Borel-fixed.  Borel-fixed monomial input is returned unchanged.
    """
    if trials < MIN_TRIALS:
        raise GinlexError(f"agreement needs at least {MIN_TRIALS} trials, got {trials}")
    gens = [g for g in gens if g]
    n = _variable_count(gens, n)
    if not gens:
        return MonomialIdeal.zero(n)
    if shortcut:
        fixed = monomial_shortcut(gens, n)
        if fixed is not None:
            logger.debug("gin: input is Borel-fixed, returning it")
            return fixed
    candidates: List[MonomialIdeal] = []
    for k in range(trials):
        g = random_coordinates(n, seed + k, bound, shape)
        moved = [apply_coordinates(g, f).with_order(order) for f in gens]
        candidate = initial_ideal(moved, order, n)
        logger.debug("gin trial %d (seed %d, %s): %s", k + 1, seed + k, order, candidate)
        candidates.append(candidate)

    distinct = list(dict.fromkeys(candidates))
    if len(distinct) > 1:
        raise GenericityError(
            f"{len(distinct)} different initial ideals in {trials} trials (seed {seed})",
            distinct)
    result = distinct[0]
    if not result.is_strongly_stable():
        raise GenericityError(f"initial ideal {result} is not Borel-fixed (seed {seed})", distinct)
    logger.info("gin %s agreed across %d trials: %d generators", order, trials, len(result))
    return result


def revlex_gin(gens: Sequence[Polynomial], **kwargs) -> MonomialIdeal:
    return gin(gens, REVLEX, **kwargs)


def homogeneous_component(gens: Sequence[Polynomial], d: int, n: Optional[int] = None,
                          order: TermOrder = REVLEX) -> Tuple[FrozenSet[Monomial], List[Polynomial]]:
    """Exact basis of ``I_d`` for homogeneous generators.

    Returns the monomials lying in ``I_d`` and the remaining rows of the
    reduced echelon form (pivots largest under ``order``), which contain no
    monomial of ``I_d`` in their support.
    """
    gens = [g for g in gens if g]
    n = _variable_count(gens, n)
    for g in gens:
        if not g.is_homogeneous():
            raise GinlexError(f"generator {g} is not homogeneous")

    monomials: Set[Monomial] = set()
    polynomials: List[Polynomial] = []
    for g in gens:
        e = d - g.homogeneous_degree
        if e < 0:
            continue
        if g.is_monomial():
            monomials.update(g.lead.times(m) for m in monomials_of_degree(e, n))
        else:
            polynomials.append(g)

    rows = []
    for g in polynomials:
        for m in monomials_of_degree(d - g.homogeneous_degree, n):
            row = {t.times(m): c for c, t in g.terms}
            row = {t: c for t, c in row.items() if t not in monomials}
            if row:
                rows.append(row)

    columns = sorted({t for row in rows for t in row}, key=order.key, reverse=True)
    position = {t: k for k, t in enumerate(columns)}
    reduced = []
    for row in row_reduce(rows, column_key=position.__getitem__):
        if len(row) == 1:
            monomials.update(row)
        else:
            reduced.append(Polynomial(row, order, n))
    return frozenset(monomials), reduced
