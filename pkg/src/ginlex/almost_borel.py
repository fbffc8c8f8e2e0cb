"""Almost Borel-fixed ideals and the complete list of their gins.

In every degree an almost Borel-fixed ideal splits as ``I_d = A_d + V_d``
with ``A_d`` a Borel-fixed monomial space and ``V_d`` spanned by
polynomials supported on the lower neighbors of ``A_d``.  For any term order
``Gin(I)_d = A_d + in(V_d)``, so the gins are indexed by the initial sets of
the ``V_d`` that a single weight vector can realize in all degrees at once.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple, Union

from ginlex.cones import FeasibilityResult, WeightCone
from ginlex.errors import GinlexError
from ginlex.groebner import MonomialIdeal, homogeneous_component, initial_ideal
from ginlex.linalg import IntegerEchelon, rank, row_reduce
from ginlex.polynomials import (
    LEX,
    REVLEX,
    Comparison,
    DimensionError,
    Monomial,
    Polynomial,
    TermOrder,
    borel_compare,
    borel_lower_moves,
    borel_upper_moves,
    monomials_of_degree,
)
from ginlex.stable import (
    DEFAULT_BOUND_SLACK,
    BettiTable,
    BoundError,
    borel_closure,
    ek_betti,
    hilbert_series,
    lex_segment_space,
)

logger = logging.getLogger(__name__)


class NotAlmostBorelFixedError(GinlexError):
    """Raised when some degree of an ideal admits no ``A + V`` split."""

    def __init__(self, reason: str = "", degree: Optional[int] = None,
                 witness: Optional[Monomial] = None):
        self.degree = degree
        self.witness = witness
        super().__init__(reason)


class ConstructionError(GinlexError):
    """Raised for inputs the construction cannot use."""


def _borel_fixed_witness(A: Set[Monomial]) -> Optional[Monomial]:
    """A monomial of ``A`` with an up-move outside ``A``, or None."""
    for m in sorted(A, key=REVLEX.key):
        if any(moved not in A for moved in borel_upper_moves(m)):
            return m
    return None


def lower_neighbors(A: Iterable[Monomial], degree: Optional[int] = None,
                    n: Optional[int] = None) -> FrozenSet[Monomial]:
    """``Ln(A)``: monomials outside ``A`` whose strict Borel majorants lie in ``A``."""
    A = set(A)
    if A:
        sample = next(iter(A))
        degree, n = sample.degree, len(sample)
    elif degree is None or n is None:
        raise DimensionError("an empty set needs its degree and variable count")
    witness = _borel_fixed_witness(A)
    if witness is not None:
        raise NotAlmostBorelFixedError(f"{witness} has a Borel majorant outside the set",
                                       degree, witness)
    if not A:
        return frozenset([Monomial([degree] + [0] * (n - 1))])
    candidates = {b for a in A for b in borel_lower_moves(a) if b not in A}
    # majorants of b are reached through up-moves, and A is closed under them
    return frozenset(b for b in candidates if all(up in A for up in borel_upper_moves(b)))


@dataclass(frozen=True)
class DegreeComponent:
    """``I_d = A + V`` in one degree."""

    degree: int
    A: FrozenSet[Monomial]
    V: Tuple[Polynomial, ...]

    @property
    def support(self) -> FrozenSet[Monomial]:
        return frozenset(m for f in self.V for m in f.support)

    @property
    def dimension(self) -> int:
        return len(self.A) + len(self.V)


@dataclass
class AlmostBorelFixedIdeal:
    """An ideal with its ``A_d + V_d`` split in degrees ``<= bound``."""

    generators: Tuple[Polynomial, ...]
    n: int
    components: Dict[int, DegreeComponent]
    bound: int

    def component(self, d: int) -> DegreeComponent:
        return self.components[d]

    @property
    def polynomial_degrees(self) -> List[int]:
        """Degrees with a nonzero ``V_d``."""
        return sorted(d for d, c in self.components.items() if c.V)

    def is_borel_fixed(self) -> bool:
        return not self.polynomial_degrees


def recognize(gens: Sequence[Polynomial], bound: Optional[int] = None,
              n: Optional[int] = None) -> AlmostBorelFixedIdeal:
    """Split every ``I_d``, ``d <= bound``, as ``A_d + V_d``.

    ``A_d`` is the set of all monomials of ``I_d`` and ``V_d`` the remaining
    rows of its reduced echelon form; both conditions are checked.  The bound
    defaults to the top generator degree plus two.
    """
    gens = tuple(g for g in gens if g)
    if gens:
        n = gens[0].n
    if n is None:
        raise DimensionError("the zero ideal needs an explicit variable count")
    top = max((g.homogeneous_degree for g in gens), default=0)
    if top is None:
        raise GinlexError("generators must be homogeneous")
    if bound is None:
        bound = top + DEFAULT_BOUND_SLACK
    if bound < top:
        raise BoundError(f"bound {bound} is below the top generator degree {top}")

    components: Dict[int, DegreeComponent] = {}
    for d in range(min((g.homogeneous_degree for g in gens), default=0), bound + 1):
        monomials, rows = homogeneous_component(gens, d, n)
        witness = _borel_fixed_witness(set(monomials))
        if witness is not None:
            raise NotAlmostBorelFixedError(
                f"degree {d}: monomials of I_d are not Borel-fixed at {witness}", d, witness)
        if rows:
            neighbors = lower_neighbors(monomials, d, n)
            for row in rows:
                outside = [m for m in row.support if m not in neighbors]
                if outside:
                    raise NotAlmostBorelFixedError(
                        f"degree {d}: {outside[0]} is not a lower neighbor of A_{d}", d, outside[0])
        components[d] = DegreeComponent(d, frozenset(monomials), tuple(rows))
        logger.debug("degree %d: |A| = %d, dim V = %d", d, len(monomials), len(rows))
    return AlmostBorelFixedIdeal(gens, n, components, bound)


def construct_almost_borel(T: Sequence[Monomial],
                           blocks: Optional[Sequence[Sequence[Monomial]]] = None,
                           B: Union[str, Iterable[Monomial]] = "XR1",
                           bound: Optional[int] = None) -> AlmostBorelFixedIdeal:
    """Build ``(A) + (f_1, ..., f_p) + (B)`` from Borel-incomparable ``T``.

    ``X`` is the Borel closure of ``T`` and ``A`` its strict part; ``f_i`` is
    the sum of block ``i``.  ``B`` is ``"XR1"``, ``"full"`` or a Borel-fixed
    set of degree ``d + 1`` containing ``X R_1``.  The degree-``(d + 1)``
    generators are the monomials of ``B``, taken in ascending revlex order,
    that enlarge the span of ``R_1 A`` and the ``R_1 f_i``.
    """
    T = list(dict.fromkeys(Monomial(m) for m in T))
    if not T:
        raise ConstructionError("T must not be empty")
    degrees = {m.degree for m in T}
    if len(degrees) != 1:
        raise ConstructionError(f"T mixes degrees {sorted(degrees)}")
    d = degrees.pop()
    n = len(T[0])
    for a, b in combinations(T, 2):
        if borel_compare(a, b) != Comparison.INCOMPARABLE:
            raise ConstructionError(f"{a} and {b} are Borel-comparable")

    blocks = [list(block) for block in blocks] if blocks is not None else [T]
    flat = [Monomial(m) for block in blocks for m in block]
    if len(flat) != len(set(flat)) or set(flat) != set(T):
        raise ConstructionError("blocks must partition T")

    X = set(borel_closure(T).generators)
    A = set(borel_closure(T, strict=True).generators)
    variables = [Monomial.variable(i, n) for i in range(1, n + 1)]
    XR1 = {m.times(x) for m in X for x in variables}
    if B == "XR1":
        B = set(XR1)
    elif B == "full":
        B = set(monomials_of_degree(d + 1, n))
    else:
        B = set(Monomial(m) for m in B)
        if any(m.degree != d + 1 for m in B):
            raise ConstructionError(f"B must lie in degree {d + 1}")
        if _borel_fixed_witness(B) is not None:
            raise ConstructionError("B is not Borel-fixed")
        if not XR1 <= B:
            raise ConstructionError("B does not contain X R_1")

    forms = [Polynomial({m: 1 for m in block}, REVLEX, n) for block in blocks]
    span = IntegerEchelon()
    for a in A:
        for x in variables:
            span.add({a.times(x): Fraction(1)})
    for f in forms:
        for x in variables:
            span.add({m.times(x): c for c, m in f.terms})
    extras = []
    for m in sorted(B, key=REVLEX.key):
        if span.add({m: Fraction(1)}):
            extras.append(m)
    logger.debug("construction: |A| = %d, %d forms, %d extra generators", len(A), len(forms),
                 len(extras))

    gens = [Polynomial.monomial(a, 1, REVLEX) for a in sorted(A, key=REVLEX.key, reverse=True)]
    gens += forms
    gens += [Polynomial.monomial(m, 1, REVLEX) for m in extras]
    return recognize(gens, bound if bound is not None else d + 1 + DEFAULT_BOUND_SLACK, n)


@dataclass(frozen=True)
class InitialChoice:
    """One admissible ``in(V_d)`` with the weight constraints it imposes."""

    degree: int
    initial: FrozenSet[Monomial]
    cone: WeightCone


def _position(columns: Iterable[Monomial]) -> Dict[Monomial, int]:
    ordered = sorted(columns, key=REVLEX.key, reverse=True)
    return {m: k for k, m in enumerate(ordered)}


def initial_choices(component: DegreeComponent, n: int) -> List[InitialChoice]:
    """Every column set ``J`` on which ``V_d`` has a nonsingular minor.

    ``J`` is realized as ``in(V_d)`` exactly when each ``J``-reduced row has
    its ``J`` column as its largest term.
    """
    rows = [f.as_dict() for f in component.V]
    position = _position(component.support)
    support = sorted(position, key=position.__getitem__)
    choices = []
    for J in combinations(support, len(rows)):
        chosen = set(J)
        if rank({m: c for m, c in row.items() if m in chosen} for row in rows) < len(rows):
            continue
        reduced = row_reduce(rows, column_key=lambda m: (m not in chosen, position[m]))
        cone = WeightCone.base(n)
        for row in reduced:
            pivot = next(m for m in row if m in chosen)
            for m in row:
                if m != pivot:
                    cone = cone.require_greater(pivot, m)
        choices.append(InitialChoice(component.degree, frozenset(J), cone))
    return choices


@dataclass
class GinMember:
    ideal: MonomialIdeal
    witness: Tuple[int, ...]
    initials: Dict[int, FrozenSet[Monomial]]
    betti: BettiTable
    label: str = ""

    @property
    def order(self) -> TermOrder:
        return TermOrder.weighted(self.witness)


@dataclass
class GinFamily:
    """All gins of an almost Borel-fixed ideal."""

    abf: AlmostBorelFixedIdeal
    members: List[GinMember]
    infeasible: List[Tuple[Dict[int, FrozenSet[Monomial]], FeasibilityResult]] = field(
        default_factory=list)

    def __len__(self) -> int:
        return len(self.members)

    def index_of(self, ideal: MonomialIdeal) -> Optional[int]:
        for k, member in enumerate(self.members):
            if member.ideal == ideal:
                return k
        return None


def _member_ideal(abf: AlmostBorelFixedIdeal, initials: Dict[int, FrozenSet[Monomial]]) -> MonomialIdeal:
    monomials: Set[Monomial] = set()
    for d, component in abf.components.items():
        monomials |= component.A
        monomials |= initials.get(d, frozenset())
    return MonomialIdeal(monomials, abf.n)


def _reference_series(abf: AlmostBorelFixedIdeal) -> Tuple[int, ...]:
    return hilbert_series(initial_ideal(list(abf.generators), REVLEX, abf.n))


def _certify(abf: AlmostBorelFixedIdeal, ideal: MonomialIdeal, reference: Tuple[int, ...]):
    if not ideal.is_strongly_stable():
        raise GinlexError(f"candidate gin {ideal} is not Borel-fixed")
    if hilbert_series(ideal) != reference:
        raise BoundError(
            f"degrees up to {abf.bound} do not determine the gin {ideal}; raise the bound")


def enumerate_gins(abf: AlmostBorelFixedIdeal) -> GinFamily:
    """Every gin of ``abf``, one per realizable choice of initial sets.

    Choices are combined degree by degree and pruned as soon as their pooled
    weight cone is empty.  Members keep the first integer weight vector found
    for them.
    """
    degrees = abf.polynomial_degrees
    per_degree = [initial_choices(abf.component(d), abf.n) for d in degrees]
    reference = _reference_series(abf)
    members: List[GinMember] = []
    infeasible: List[Tuple[Dict[int, FrozenSet[Monomial]], FeasibilityResult]] = []
    seen: Dict[MonomialIdeal, int] = {}

    def search(level: int, cone: WeightCone, initials: Dict[int, FrozenSet[Monomial]],
               result: FeasibilityResult):
        if level == len(degrees):
            ideal = _member_ideal(abf, initials)
            if ideal in seen:
                return
            _certify(abf, ideal, reference)
            seen[ideal] = len(members)
            members.append(GinMember(ideal, result.witness, dict(initials), ek_betti(ideal)))
            return
        for choice in per_degree[level]:
            pooled = cone.combine(choice.cone)
            chosen = dict(initials)
            chosen[choice.degree] = choice.initial
            outcome = pooled.feasibility()
            if not outcome.feasible:
                logger.debug("infeasible initial sets %s", chosen)
                infeasible.append((chosen, outcome))
                continue
            search(level + 1, pooled, chosen, outcome)

    base = WeightCone.base(abf.n)
    search(0, base, {}, base.feasibility())
    for k, member in enumerate(members):
        member.label = f"G{k + 1}"
    logger.info("%d gins, %d infeasible choices", len(members), len(infeasible))
    return GinFamily(abf, members, infeasible)


def selection_feasibility(abf: AlmostBorelFixedIdeal,
                          initials: Dict[int, Iterable[Monomial]]) -> FeasibilityResult:
    """Whether one weight vector realizes the given initial sets together."""
    cone = WeightCone.base(abf.n)
    for d, wanted in initials.items():
        wanted = frozenset(wanted)
        match = [c for c in initial_choices(abf.component(d), abf.n) if c.initial == wanted]
        if not match:
            raise GinlexError(f"{sorted(wanted)} is not an initial set of V_{d}")
        cone = cone.combine(match[0].cone)
    return cone.feasibility()


def gin_for_order(abf: AlmostBorelFixedIdeal, order: TermOrder) -> MonomialIdeal:
    """``A_d + in_order(V_d)`` in every degree, certified by Hilbert series."""
    initials: Dict[int, FrozenSet[Monomial]] = {}
    for d in abf.polynomial_degrees:
        component = abf.component(d)
        rows = [f.as_dict() for f in component.V]
        ordered = sorted(component.support, key=order.key, reverse=True)
        position = {m: k for k, m in enumerate(ordered)}
        reduced = row_reduce(rows, column_key=position.__getitem__)
        initials[d] = frozenset(min(row, key=position.__getitem__) for row in reduced)
    ideal = _member_ideal(abf, initials)
    _certify(abf, ideal, _reference_series(abf))
    return ideal


@dataclass
class PosetReport:
    """Entrywise order of the members' Betti tables."""

    labels: List[str]
    minimum: Optional[int]
    maximal: List[int]
    comparabilities: List[Tuple[int, int]]
    revlex_index: Optional[int]
    regularity: List[int]

    @property
    def has_maximum(self) -> bool:
        return len(self.maximal) == 1 and all(
            (k, self.maximal[0]) in self.comparabilities
            for k in range(len(self.labels)) if k != self.maximal[0])

    @property
    def revlex_is_minimum(self) -> bool:
        return self.revlex_index is not None and self.minimum == self.revlex_index


def betti_poset(family: GinFamily) -> PosetReport:
    """Minimum, maximal elements and strict comparabilities ``(a, b)``: ``a < b``.

    ``regularity`` lists the Castelnuovo-Mumford regularity of each gin.
    """
    if not family.members:
        raise GinlexError("empty gin family")
    tables = [m.betti for m in family.members]
    size = len(tables)
    below = [(a, b) for a in range(size) for b in range(size)
             if a != b and tables[a].dominated_by(tables[b]) and tables[a] != tables[b]]
    minimum = next((a for a in range(size)
                    if all((a, b) in below for b in range(size) if b != a)), None)
    maximal = [b for b in range(size) if not any((b, c) in below for c in range(size))]
    revlex = family.index_of(gin_for_order(family.abf, REVLEX))
    return PosetReport(
        labels=[m.label for m in family.members],
        minimum=minimum,
        maximal=maximal,
        comparabilities=below,
        revlex_index=revlex,
        regularity=[t.regularity + 1 for t in tables],
    )


@dataclass
class LexProximity:
    """``dim (L cap G)_j`` per member."""

    table: Dict[int, Dict[int, int]]
    lex_index: Optional[int]

    @property
    def gin_lex_dominates(self) -> bool:
        if self.lex_index is None:
            return False
        best = self.table[self.lex_index]
        return all(best[j] >= row[j] for row in self.table.values() for j in row)


def lex_proximity(family: GinFamily, L: Optional[MonomialIdeal] = None,
                  bound: Optional[int] = None) -> LexProximity:
    """Degreewise overlap of each gin with the lex-segment ideal ``L``.

    Without ``L`` only the lex segments ``Lex(I)_j`` for ``j <= bound`` are
    built, so the lex ideal itself never has to be certified.  ``bound``
    defaults to the top generator degree of the gins.
    """
    if bound is None:
        bound = max(m.ideal.max_degree for m in family.members)
        if L is not None:
            bound = max(bound, L.max_degree)
    first = family.members[0].ideal
    segments = {j: L.degree_part(j) if L is not None
                else lex_segment_space(first.dimension(j), j, first.n)
                for j in range(bound + 1)}
    table = {}
    for k, member in enumerate(family.members):
        table[k] = {j: len(member.ideal.degree_part(j) & segments[j]) for j in range(bound + 1)}
    lex = family.index_of(gin_for_order(family.abf, LEX))
    return LexProximity(table, lex)
