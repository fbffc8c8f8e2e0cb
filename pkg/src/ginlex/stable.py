"""Combinatorics of Borel-fixed (strongly stable) monomial ideals.

Hilbert functions and series, lex-segment ideals, the m-statistics
``m_i``, ``m_ij`` and ``m_<=i(I_j)``, Betti tables from the Eliahou-Kervaire
and Aramova-Herzog formulas, and the componentwise-linear and Gotzmann
predicates built on top of them.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from math import comb
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from ginlex.errors import GinlexError
from ginlex.groebner import (
    DEFAULT_TRIALS,
    MonomialIdeal,
    homogeneous_component,
    initial_ideal,
    revlex_gin,
)
from ginlex.polynomials import (
    REVLEX,
    DimensionError,
    Monomial,
    Polynomial,
    borel_lower_moves,
    borel_upper_moves,
    count_monomials,
    monomials_of_degree,
)

logger = logging.getLogger(__name__)

DEFAULT_BOUND_SLACK = 2
LEX_SEARCH_LIMIT = 64


class NotStronglyStableError(GinlexError):
    """Raised when a formula needs a strongly stable ideal."""


class BoundError(GinlexError):
    """Raised when a degree bound is too small for a certified answer."""


def _require_strongly_stable(I: MonomialIdeal):
    if not I.is_strongly_stable():
        raise NotStronglyStableError(f"{I} is not strongly stable")


def is_strongly_stable(I: MonomialIdeal) -> bool:
    return I.is_strongly_stable()


def is_strongly_stable_by_degree(I: MonomialIdeal, bound: int) -> bool:
    """Check the exchange condition on every monomial of ``I_d``, ``d <= bound``."""
    for d in range(bound + 1):
        part = I.degree_part(d)
        for m in part:
            if any(moved not in part for moved in borel_upper_moves(m)):
                return False
    return True


def _closure(start: Iterable[Monomial], moves) -> Set[Monomial]:
    seen = set(start)
    queue = deque(seen)
    while queue:
        m = queue.popleft()
        for moved in moves(m):
            if moved not in seen:
                seen.add(moved)
                queue.append(moved)
    return seen


def borel_majorants(m: Monomial, strict: bool = False) -> Set[Monomial]:
    """All monomials ``>=_Borel m`` (``>`` when ``strict``)."""
    result = _closure([m], borel_upper_moves)
    if strict:
        result.discard(m)
    return result


def borel_minorants(m: Monomial, strict: bool = False) -> Set[Monomial]:
    result = _closure([m], borel_lower_moves)
    if strict:
        result.discard(m)
    return result


def borel_closure(S: Iterable[Monomial], strict: bool = False,
                  n: Optional[int] = None) -> MonomialIdeal:
    """Smallest Borel-fixed set of degree ``d`` containing ``S``.

    With ``strict`` the result holds the monomials strictly above some
    element of ``S``.  The set is returned as the ideal it generates.
    """
    S = list(S)
    degrees = {m.degree for m in S}
    if len(degrees) > 1:
        raise DimensionError(f"Borel closure needs one degree, got {sorted(degrees)}")
    if S:
        n = len(S[0])
    elif n is None:
        raise DimensionError("empty set needs an explicit variable count")
    closure: Set[Monomial] = set()
    for m in S:
        closure |= borel_majorants(m, strict)
    return MonomialIdeal(closure, n)


def is_borel_fixed_set(S: Iterable[Monomial]) -> bool:
    """True when a set of equal-degree monomials is closed under up-moves."""
    S = set(S)
    return all(moved in S for m in S for moved in borel_upper_moves(m))


@dataclass(frozen=True)
class HilbertFunction:
    """``d -> dim_K I_d`` for ``d = 0 .. bound``."""

    dims: Tuple[int, ...]
    n: int

    @property
    def bound(self) -> int:
        return len(self.dims) - 1

    def __getitem__(self, d: int) -> int:
        return self.dims[d]

    def quotient(self, d: int) -> int:
        """``dim_K (R/I)_d``."""
        return count_monomials(d, self.n) - self.dims[d]


def hilbert_function(I: MonomialIdeal, bound: int) -> HilbertFunction:
    return HilbertFunction(tuple(I.dimension(d) for d in range(bound + 1)), I.n)


def ideal_hilbert_function(gens: Sequence[Polynomial], bound: int,
                           n: Optional[int] = None) -> HilbertFunction:
    """Hilbert function of a polynomial ideal by exact linear algebra."""
    gens = [g for g in gens if g]
    if gens:
        n = gens[0].n
    dims = []
    for d in range(bound + 1):
        monomials, rows = homogeneous_component(gens, d, n)
        dims.append(len(monomials) + len(rows))
    return HilbertFunction(tuple(dims), n)


def _poly_sub(a: List[int], b: List[int]) -> List[int]:
    size = max(len(a), len(b))
    return [(a[k] if k < len(a) else 0) - (b[k] if k < len(b) else 0) for k in range(size)]


def _minimal(gens: Iterable[Monomial]) -> List[Monomial]:
    result: List[Monomial] = []
    for g in sorted(set(gens), key=lambda m: m.degree):
        if not any(h.divides(g) for h in result):
            result.append(g)
    return result


def _numerator(gens: List[Monomial], n: int) -> List[int]:
    if not gens:
        return [1]
    pairwise_coprime = all(
        gens[a].is_coprime(gens[b]) for a in range(len(gens)) for b in range(a + 1, len(gens)))
    if pairwise_coprime:
        result = [1]
        for g in gens:
            shifted = [0] * g.degree + result
            result = _poly_sub(result, shifted)
        return result
    # pivot on the variable shared by the most generators
    counts = [sum(1 for g in gens if g[k] and g.degree > 1) for k in range(n)]
    k = max(range(n), key=lambda v: counts[v])
    x = Monomial.variable(k + 1, n)
    added = _minimal([g for g in gens if not g[k]] + [x])
    colon = _minimal([Monomial(e - 1 if v == k and e else e for v, e in enumerate(g)) for g in gens])
    return _poly_sub(_numerator(added, n), [0] + [-c for c in _numerator(colon, n)])


def hilbert_series(I: MonomialIdeal) -> Tuple[int, ...]:
    """Numerator ``N(t)`` with ``HS(R/I) = N(t) / (1 - t)^n``, lowest degree first.

    Computed by pivoting: ``N(I) = N(I + (x)) + t N(I : x)``.
    """
    coefficients = _numerator(list(I.generators), I.n)
    while len(coefficients) > 1 and coefficients[-1] == 0:
        coefficients.pop()
    return tuple(coefficients)


def lex_segment_space(dim: int, d: int, n: int) -> FrozenSet[Monomial]:
    """The ``dim`` lex-largest monomials of degree ``d``."""
    total = count_monomials(d, n)
    if not 0 <= dim <= total:
        raise ValueError(f"dimension {dim} outside [0, {total}] for degree {d} in {n} variables")
    return frozenset(monomials_of_degree(d, n)[:dim])


def _shadow(S: Iterable[Monomial], n: int) -> Set[Monomial]:
    variables = [Monomial.variable(i, n) for i in range(1, n + 1)]
    return {m.times(x) for m in S for x in variables}


def lex_ideal(I: MonomialIdeal, bound: Optional[int] = None) -> MonomialIdeal:
    """Lex-segment ideal with the Hilbert function of ``I``.

    The answer is certified once a degree ``D >= maxdeg + 1`` adds no new
    generator (Gotzmann persistence).  With ``bound`` given, that degree must
    be ``bound`` itself, else BoundError; without it the smallest such degree
    is searched for.
    """
    n = I.n
    top = I.max_degree
    if bound is not None and bound < top + 1:
        raise BoundError(f"bound {bound} is below max generator degree + 1 = {top + 1}")
    limit = bound if bound is not None else top + LEX_SEARCH_LIMIT

    generators: List[Monomial] = []
    previous: FrozenSet[Monomial] = frozenset()
    for d in range(limit + 1):
        segment = lex_segment_space(I.dimension(d), d, n)
        shadow = _shadow(previous, n)
        if not shadow <= segment:
            raise GinlexError(f"lex segments fail to form an ideal in degree {d}")
        new = segment - shadow
        generators.extend(new)
        previous = segment
        if d >= top + 1 and not new:
            if bound is None or d == bound:
                logger.debug("lex ideal certified at degree %d", d)
                return MonomialIdeal(generators, n)
        elif bound is not None and d == bound:
            raise BoundError(f"lex ideal still gains generators in degree {bound}; raise the bound")
    raise BoundError(f"lex ideal not stabilized by degree {limit}")


def m_count(S: Iterable[Monomial], i: int) -> int:
    """``m_i(S)``: monomials whose largest variable index is ``i``."""
    return sum(1 for u in S if u.max_index == i)


def m_leq_count(S: Iterable[Monomial], i: int) -> int:
    """``m_<=i(S)``."""
    return sum(1 for u in S if u.max_index <= i)


@dataclass(frozen=True)
class MStatistics:
    """m-statistics of a monomial ideal up to a degree bound."""

    n: int
    bound: int
    m_i_of_ideal: Mapping[int, int]
    m_ij: Mapping[Tuple[int, int], int]
    m_leq_per_degree: Mapping[Tuple[int, int], int]

    def m(self, i: int) -> int:
        return self.m_i_of_ideal.get(i, 0)

    def mij(self, i: int, j: int) -> int:
        return self.m_ij.get((i, j), 0)

    def m_leq(self, i: int, j: int) -> int:
        """``m_<=i(I_j)``."""
        if i <= 0:
            return self.m_leq_per_degree.get((0, j), 0)
        return self.m_leq_per_degree[(min(i, self.n), j)]

    def m_of_degree(self, i: int, j: int) -> int:
        """``m_i(I_j)``."""
        return self.m_leq(i, j) - self.m_leq(i - 1, j)


def m_statistics(I: MonomialIdeal, bound: Optional[int] = None) -> MStatistics:
    if bound is None:
        bound = I.max_degree
    if bound < I.max_degree:
        raise BoundError(f"bound {bound} is below max generator degree {I.max_degree}")
    m_i: Dict[int, int] = {i: 0 for i in range(1, I.n + 1)}
    m_ij: Dict[Tuple[int, int], int] = {}
    for g in I.generators:
        i = g.max_index
        if i:
            m_i[i] += 1
        m_ij[(i, g.degree)] = m_ij.get((i, g.degree), 0) + 1
    leq: Dict[Tuple[int, int], int] = {}
    for j in range(bound + 1):
        part = I.degree_part(j)
        for i in range(I.n + 1):
            leq[(i, j)] = m_leq_count(part, i)
    return MStatistics(I.n, bound, m_i, m_ij, leq)


@dataclass
class BettiTable:
    """Graded numbers ``(i, j) -> beta_ij``; absent entries are zero."""

    entries: Dict[Tuple[int, int], int]
    n: int
    p: Optional[int] = None
    label: str = ""

    def __post_init__(self):
        self.entries = {k: v for k, v in self.entries.items() if v}
        if any(v < 0 for v in self.entries.values()):
            raise GinlexError(f"negative Betti number in {self.entries}")

    def __getitem__(self, key: Tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BettiTable):
            return NotImplemented
        return self.entries == other.entries

    def totals(self) -> Dict[int, int]:
        result: Dict[int, int] = {}
        for (i, _), value in self.entries.items():
            result[i] = result.get(i, 0) + value
        return result

    @property
    def projdim(self) -> int:
        return max((i for i, _ in self.entries), default=0)

    @property
    def regularity(self) -> int:
        return max((j - i for i, j in self.entries), default=0)

    def dominated_by(self, other: "BettiTable") -> bool:
        """Entrywise ``self <= other``."""
        return all(value <= other[key] for key, value in self.entries.items())

    def diagram(self, columns: Optional[int] = None) -> List[Tuple[int, List[int]]]:
        """Rows ``(j - i, [beta_1, ..., beta_columns])`` over ``i >= 1``.

        Rows run from the smallest to the largest ``j - i`` carrying an
        entry; ``columns`` defaults to ``n``.
        """
        columns = columns or self.n
        shifts = [j - i for i, j in self.entries if i >= 1]
        if not shifts:
            return []
        return [(k, [self[(i, i + k)] for i in range(1, columns + 1)])
                for k in range(min(shifts), max(shifts) + 1)]


def _unit_ideal(I: MonomialIdeal) -> bool:
    return any(g.degree == 0 for g in I.generators)


def ek_betti(I: MonomialIdeal) -> BettiTable:
    """Graded Betti numbers of ``R/I`` by the Eliahou-Kervaire formula."""
    _require_strongly_stable(I)
    if _unit_ideal(I):
        return BettiTable({}, I.n)
    stats = m_statistics(I)
    entries = {(0, 0): 1}
    for (s, d), count in stats.m_ij.items():
        for i in range(1, s + 1):
            key = (i, d + i - 1)
            entries[key] = entries.get(key, 0) + count * comb(s - 1, i - 1)
    return BettiTable(entries, I.n, I.n)


def _check_p(p: int, n: int):
    if not 0 <= p <= n:
        raise DimensionError(f"p must lie in [0, {n}], got {p}")


def _default_j_bound(I: MonomialIdeal) -> int:
    return I.max_degree + I.n


def ah_koszul_betti(I: MonomialIdeal, p: int, j_bound: Optional[int] = None) -> BettiTable:
    """Koszul-Betti numbers ``beta_ijp(R/I)`` by the Aramova-Herzog formula.

    The ``i = 0`` row counts the monomials of degree ``j`` in the first
    ``n - p`` variables outside ``I``; it is truncated at ``j_bound``.
    """
    _require_strongly_stable(I)
    n = I.n
    _check_p(p, n)
    if _unit_ideal(I):
        return BettiTable({}, n, p)
    if j_bound is None:
        j_bound = _default_j_bound(I)
    stats = m_statistics(I, max(j_bound, I.max_degree))
    entries: Dict[Tuple[int, int], int] = {}
    for j in range(j_bound + 1):
        entries[(0, j)] = count_monomials(j, n - p) - stats.m_leq(n - p, j)
    for (s, d), count in stats.m_ij.items():
        for i in range(1, p + 1):
            if s < i + n - p:
                continue
            j = d + i - 1
            if j <= j_bound:
                entries[(i, j)] = entries.get((i, j), 0) + count * comb(s + p - n - 1, i - 1)
    return BettiTable(entries, n, p)


def ah_koszul_betti_from_slices(I: MonomialIdeal, p: int,
                                j_bound: Optional[int] = None) -> BettiTable:
    """Aramova-Herzog numbers written through ``m_<=s(I_d)`` only.

    ``beta_ijp = dim I_{j-i+1} C(p-1, i-1) - m_<=(n-p+i-1)(I_{j-i+1})
    + sum_s m_<=s(I_{j-i+1}) [C(s+p-n-1, i-1) - C(s+p-n, i-1)]
    - sum_s m_<=s(I_{j-i}) C(s+p-n-1, i-1)``.
    """
    _require_strongly_stable(I)
    n = I.n
    _check_p(p, n)
    if _unit_ideal(I):
        return BettiTable({}, n, p)
    if j_bound is None:
        j_bound = _default_j_bound(I)
    stats = m_statistics(I, max(j_bound, I.max_degree))
    entries: Dict[Tuple[int, int], int] = {}
    for j in range(j_bound + 1):
        entries[(0, j)] = count_monomials(j, n - p) - stats.m_leq(n - p, j)
        for i in range(1, min(p, j) + 1):
            d = j - i + 1
            value = stats.m_leq(n, d) * comb(p - 1, i - 1) - stats.m_leq(n - p + i - 1, d)
            for s in range(i + n - p, n):
                value += stats.m_leq(s, d) * (comb(s + p - n - 1, i - 1) - comb(s + p - n, i - 1))
            for s in range(i + n - p, n + 1):
                value -= stats.m_leq(s, d - 1) * comb(s + p - n - 1, i - 1)
            entries[(i, j)] = value
    return BettiTable(entries, n, p)


def _lower_generated(gens: Sequence[Polynomial], n: Optional[int]):
    gens = [g for g in gens if g]
    if gens:
        n = gens[0].n
    if n is None:
        raise DimensionError("the zero ideal needs an explicit variable count")
    return gens, n


def is_componentwise_linear(gens: Sequence[Polynomial], n: Optional[int] = None,
                            seed: int = 0, trials: int = DEFAULT_TRIALS) -> bool:
    """``beta_1j(R/I) == beta_1j(R/Gin_revlex(I))`` for every ``j``."""
    from ginlex.koszul import first_betti_numbers

    gens, n = _lower_generated(gens, n)
    if not gens:
        return True
    G = revlex_gin(gens, trials=trials, seed=seed, n=n)
    ours = first_betti_numbers(gens, n)
    theirs = {j: value for (i, j), value in ek_betti(G).entries.items() if i == 1}
    logger.debug("beta_1 of ideal %s, of gin %s", ours, theirs)
    return ours == theirs


def is_gotzmann(gens: Sequence[Polynomial], n: Optional[int] = None,
                seed: int = 0, trials: int = DEFAULT_TRIALS) -> bool:
    """Betti numbers of ``R/I`` equal those of ``R/Lex(I)``.

    Holds iff ``I`` is componentwise linear, so that it shares the Betti
    numbers of its revlex gin ``G``, and ``m_i(G) == m_i(Lex(I))``.
    """
    gens, n = _lower_generated(gens, n)
    if not gens:
        return True
    if not is_componentwise_linear(gens, n, seed=seed, trials=trials):
        return False
    G = revlex_gin(gens, trials=trials, seed=seed, n=n)
    L = lex_ideal(G)
    return m_statistics(G).m_i_of_ideal == m_statistics(L).m_i_of_ideal


def is_gotzmann_by_definition(gens: Sequence[Polynomial], n: Optional[int] = None) -> bool:
    """``dim R_1 I_k == |R_1 Lex(I_k)|`` for every ``k`` up to the top generator degree."""
    gens, n = _lower_generated(gens, n)
    if not gens:
        return True
    top = max(g.homogeneous_degree for g in gens)
    for k in range(min(g.homogeneous_degree for g in gens), top + 1):
        monomials, rows = homogeneous_component(gens, k, n)
        basis = [Polynomial.monomial(m, 1, REVLEX) for m in monomials] + rows
        dim = len(basis)
        shadow_monomials, shadow_rows = homogeneous_component(basis, k + 1, n)
        grown = len(shadow_monomials) + len(shadow_rows)
        lex_grown = len(_shadow(lex_segment_space(dim, k, n), n))
        logger.debug("degree %d: dim %d grows to %d, lex grows to %d", k, dim, grown, lex_grown)
        if grown != lex_grown:
            return False
    return True


@dataclass
class BorelComparison:
    """How two Borel-fixed ideals with one Hilbert function compare."""

    dominated: bool
    conditions: Dict[str, bool] = field(default_factory=dict)

    @property
    def all_equal(self) -> bool:
        return all(self.conditions.values())

    @property
    def consistent(self) -> bool:
        """The conditions are all true or all false."""
        return len(set(self.conditions.values())) <= 1


def compare_borel_ideals(I: MonomialIdeal, J: MonomialIdeal,
                         bound: Optional[int] = None) -> BorelComparison:
    """Evaluate the equivalent equality conditions for ``I`` and ``J``.

    ``dominated`` reports ``m_<=i(J_j) <= m_<=i(I_j)`` for all ``i, j``; under
    that hypothesis the conditions are equivalent.
    """
    _require_strongly_stable(I)
    _require_strongly_stable(J)
    if I.n != J.n:
        raise DimensionError(f"ideals live in {I.n} and {J.n} variables")
    n = I.n
    if bound is None:
        bound = max(I.max_degree, J.max_degree) + DEFAULT_BOUND_SLACK
    if hilbert_function(I, bound) != hilbert_function(J, bound):
        raise GinlexError("ideals have different Hilbert functions")
    si, sj = m_statistics(I, bound), m_statistics(J, bound)
    dominated = all(sj.m_leq(i, j) <= si.m_leq(i, j)
                    for i in range(n + 1) for j in range(bound + 1))
    bi, bj = ek_betti(I), ek_betti(J)
    j_bound = max(_default_j_bound(I), _default_j_bound(J))
    conditions = {
        "koszul_betti": all(ah_koszul_betti(I, p, j_bound) == ah_koszul_betti(J, p, j_bound)
                            for p in range(n + 1)),
        "betti": bi == bj,
        "first_betti_graded": all(bi[key] == bj[key] for key in set(bi.entries) | set(bj.entries)
                                  if key[0] == 1),
        "first_betti": bi.totals().get(1, 0) == bj.totals().get(1, 0),
        "m_ij": dict(si.m_ij) == dict(sj.m_ij),
        "m_i": dict(si.m_i_of_ideal) == dict(sj.m_i_of_ideal),
        "m_i_of_degree": all(si.m_of_degree(i, j) == sj.m_of_degree(i, j)
                             for i in range(1, n + 1) for j in range(bound + 1)),
        "m_leq_of_degree": all(si.m_leq(i, j) == sj.m_leq(i, j)
                               for i in range(n + 1) for j in range(bound + 1)),
    }
    return BorelComparison(dominated, conditions)


def polynomial_initial_ideal(gens: Sequence[Polynomial], n: Optional[int] = None) -> MonomialIdeal:
    """``in_revlex(I)``, the monomial ideal sharing the Hilbert function of ``I``."""
    gens, n = _lower_generated(gens, n)
    return initial_ideal(gens, REVLEX, n)
