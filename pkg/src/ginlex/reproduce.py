"""Worked examples with pinned answers.

Each reproduction recomputes an example from its defining data and compares
every derived quantity with its pinned values: lex-segment ideals and
m-statistics for the two Gotzmann examples, the complete gin families of the
three almost Borel-fixed examples with their Betti diagrams and poset shape.
"""

import logging
from typing import Dict, List, Optional, Sequence

from ginlex.almost_borel import (
    AlmostBorelFixedIdeal,
    GinFamily,
    betti_poset,
    construct_almost_borel,
    enumerate_gins,
    gin_for_order,
    lex_proximity,
    recognize,
    selection_feasibility,
)
from ginlex.errors import GinlexError
from ginlex.groebner import DEFAULT_TRIALS, MonomialIdeal, gin
from ginlex.idealfile import parse_ideal
from ginlex.polynomials import LEX, REVLEX, Monomial, Polynomial, TermOrder
from ginlex.records import ResultRecord
from ginlex.stable import compare_borel_ideals, is_gotzmann, lex_ideal, m_statistics

logger = logging.getLogger(__name__)

EXAMPLES = ("4.6a", "4.6b", "5.5", "5.7", "5.8")


def _polynomials(n: int, text: str) -> List[Polynomial]:
    header = "vars: " + " ".join(f"x{i}" for i in range(1, n + 1))
    return parse_ideal(header + "\n" + text.replace(",", "\n"))


def _monomials(n: int, text: str) -> List[Monomial]:
    return [g.lead for g in _polynomials(n, text)]


def _ideal(n: int, *texts: str) -> MonomialIdeal:
    return MonomialIdeal([m for text in texts for m in _monomials(n, text)], n)


A_5_7 = ("x1^3, x1^2*x2, x1^2*x3, x1^2*x4, x1*x2^2, x1*x2*x3, x1*x2*x4, x2^3, x2^2*x3")

A_5_8 = (
    "x1^4, x1^3*x2, x1^3*x3, x1^3*x4, x1^3*x5, x1^3*x6, x1^3*x7, x1^2*x2^2, x1^2*x2*x3,"
    "x1^2*x2*x4, x1^2*x2*x5, x1^2*x2*x6, x1^2*x2*x7, x1^2*x3^2, x1^2*x3*x4, x1^2*x3*x5,"
    "x1^2*x3*x6, x1^2*x3*x7, x1^2*x4^2, x1^2*x4*x5, x1^2*x4*x6, x1^2*x5^2, x1^2*x5*x6,"
    "x1^2*x6^2, x1*x2^3, x1*x2^2*x3, x1*x2^2*x4, x1*x2^2*x5, x1*x2^2*x6, x1*x2^2*x7,"
    "x1*x2*x3^2, x1*x2*x3*x4, x1*x2*x3*x5, x1*x2*x3*x6, x1*x2*x3*x7, x1*x2*x4^2,"
    "x1*x2*x4*x5, x1*x2*x4*x6, x1*x2*x5^2, x1*x2*x5*x6, x1*x2*x6^2, x1*x3^3, x1*x3^2*x4,"
    "x1*x3^2*x5, x1*x3^2*x6, x1*x3*x4^2, x1*x3*x4*x5, x1*x3*x4*x6, x1*x3*x5^2,"
    "x1*x3*x5*x6, x1*x4^3, x1*x4^2*x5, x2^4, x2^3*x3, x2^3*x4, x2^3*x5, x2^3*x6, x2^3*x7,"
    "x2^2*x3^2, x2^2*x3*x4, x2^2*x3*x5, x2^2*x3*x6")

# gin label -> (extra generators over A, diagram rows)
GINS_5_7 = {
    "G1": ("x1*x3^2, x2^2*x4^2", [[10, 17, 10, 2], [1, 3, 3, 1]]),
    "G2": ("x2^2*x4, x1*x3^3, x1*x3^2*x4", [[10, 18, 12, 3], [2, 5, 4, 1]]),
}

GINS_5_8 = {
    "G1": ("x2^2*x4^2, x1*x3*x6^2, x1*x4^2*x6*x7, x2^2*x3*x7^2, x1*x4^2*x6^2",
           [[64, 240, 397, 363, 190, 53, 6], [3, 17, 40, 50, 35, 13, 2]]),
    "G2": ("x1*x4^2*x6, x1*x3*x6^2, x2^2*x4^2*x7, x2^2*x3*x7^2, x2^2*x4^2*x6, x2^2*x4^2*x5,"
           "x2^2*x4^3",
           [[64, 242, 404, 372, 195, 54, 6], [5, 24, 49, 55, 36, 13, 2]]),
    "G3": ("x2^2*x4^2, x2^2*x3*x7, x1*x4^2*x6*x7, x1*x3*x6^2*x7, x1*x4^2*x6^2, x1*x3*x6^3",
           [[64, 241, 402, 373, 200, 58, 7], [4, 22, 50, 60, 40, 14, 2]]),
}


def two_gin_quadrics() -> AlmostBorelFixedIdeal:
    """``(x1^2, x1*x2, x1*x3 + x2^2)`` in three variables."""
    return recognize(_polynomials(3, "x1^2, x1*x2, x1*x3 + x2^2"))


def two_gin_cubics() -> AlmostBorelFixedIdeal:
    """One form on two incomparable cubics in four variables."""
    T = _monomials(4, "x1*x3^2, x2^2*x4")
    return construct_almost_borel(T, [T])


def three_gin_quartics() -> AlmostBorelFixedIdeal:
    """Two forms on four incomparable quartics in seven variables."""
    T = _monomials(7, "x1*x3*x6^2, x2^2*x3*x7, x1*x4^2*x6, x2^2*x4^2")
    return construct_almost_borel(T, [T[:2], T[2:]])


def almost_borel_example(example: str) -> AlmostBorelFixedIdeal:
    builders = {"5.5": two_gin_quadrics, "5.7": two_gin_cubics, "5.8": three_gin_quartics}
    if example not in builders:
        raise GinlexError(f"no almost Borel-fixed example {example!r}")
    return builders[example]()


class Reproduction:
    """A record plus the list of values that disagree with the pinned ones."""

    def __init__(self, example: str, seed: int):
        self.example = example
        self.record = ResultRecord(f"reproduce {example}", seeds={"seed": seed})
        self.mismatches: List[str] = []

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def expect(self, what: str, actual, expected):
        self.record.add(what, actual)
        if actual != expected:
            message = f"{what}: got {actual}, expected {expected}"
            logger.warning("mismatch in %s: %s", self.example, message)
            self.mismatches.append(message)
            self.record.add("mismatch", message)

    def finish(self) -> "Reproduction":
        self.record.add("verdict", "match" if self.ok else "mismatch")
        return self


def _m_vector(I: MonomialIdeal) -> List[int]:
    stats = m_statistics(I)
    return [stats.m(i) for i in range(1, I.n + 1)]


def _reproduce_mij_gap(result: Reproduction):
    I = _ideal(3, "x1^2, x1*x2, x2^2", "x1^3, x1^2*x2, x1^2*x3, x1*x2^2, x1*x2*x3, x1*x3^2,"
               "x2^3, x2^2*x3, x2*x3^2, x3^3")
    L = lex_ideal(I)
    result.record.add("ideal", I)
    result.expect("lex", L, _ideal(3, "x1^2, x1*x2, x1*x3", "x2^3, x2^2*x3, x2*x3^2, x3^3"))
    result.expect("m_22 ideal", m_statistics(I).mij(2, 2), 2)
    result.expect("m_22 lex", m_statistics(L).mij(2, 2), 1)
    comparison = compare_borel_ideals(I, L)
    result.expect("lex m_<=i dominated", comparison.dominated, True)
    result.expect("gotzmann", is_gotzmann(I.as_polynomials(), I.n), False)


def _reproduce_gotzmann_not_lex(result: Reproduction):
    I = _ideal(3, "x1^3, x1^2*x2, x1^2*x3, x1*x2^2, x1*x2*x3, x2^3, x2^2*x3")
    L = lex_ideal(I)
    result.record.add("ideal", I)
    result.expect("lex", L, _ideal(3, "x1^3, x1^2*x2, x1^2*x3, x1*x2^2, x1*x2*x3, x1*x3^2, x2^3"))
    result.expect("m_i ideal", _m_vector(I), [1, 3, 3])
    result.expect("m_i lex", _m_vector(L), [1, 3, 3])
    result.expect("gotzmann", is_gotzmann(I.as_polynomials(), I.n), True)
    result.expect("lex segment", I == L, False)


def _pinned_family(result: Reproduction, family: GinFamily, A: str,
                   pinned: Dict[str, tuple]) -> Dict[str, Optional[int]]:
    """Match pinned gins to family members and compare their diagrams."""
    n = family.abf.n
    result.expect("gins", len(family), len(pinned))
    index: Dict[str, Optional[int]] = {}
    for label, (extra, rows) in pinned.items():
        expected = _ideal(n, A, extra)
        k = family.index_of(expected)
        index[label] = k
        result.expect(f"{label} found", k is not None, True)
        if k is None:
            continue
        member = family.members[k]
        result.record.add(f"{label} ideal", member.ideal)
        result.record.add(f"{label} weight", ",".join(str(w) for w in member.witness))
        result.record.add_betti(label, member.betti, n)
        actual = [values for _, values in member.betti.diagram(n)]
        result.expect(f"{label} diagram rows", actual, rows)
    return index


def _reproduce_two_gin_quadrics(result: Reproduction, seed: int):
    abf = two_gin_quadrics()
    family = enumerate_gins(abf)
    result.expect("gins", len(family), 2)
    degree_two = {frozenset(member.ideal.degree_part(2)) for member in family.members}
    A = set(_monomials(3, "x1^2, x1*x2"))
    expected = {frozenset(A | {m}) for m in _monomials(3, "x2^2, x1*x3")}
    result.expect("degree 2 parts", degree_two == expected, True)
    revlex, lex = gin_for_order(abf, REVLEX), gin_for_order(abf, LEX)
    result.expect("revlex gin degree 2", revlex.degree_part(2) == frozenset(
        A | set(_monomials(3, "x2^2"))), True)
    result.expect("lex gin degree 2", lex.degree_part(2) == frozenset(
        A | set(_monomials(3, "x1*x3"))), True)
    for member in family.members:
        result.record.add(f"{member.label} ideal", member.ideal)
        result.record.add(f"{member.label} weight", ",".join(str(w) for w in member.witness))
        sampled = gin(list(abf.generators), member.order, trials=DEFAULT_TRIALS, seed=seed, n=abf.n)
        result.expect(f"{member.label} random-coordinate gin agrees", sampled == member.ideal, True)
    for initials, _ in family.infeasible:
        result.record.add("infeasible", _format_initials(initials))


def _format_initials(initials: Dict[int, Sequence[Monomial]]) -> str:
    return "; ".join(f"degree {d}: " + ", ".join(m.format() for m in sorted(ms, key=REVLEX.key,
                                                                              reverse=True))
                     for d, ms in sorted(initials.items()))


def _reproduce_two_gin_cubics(result: Reproduction):
    abf = two_gin_cubics()
    pinned = _polynomials(4, A_5_7 + ", x1*x3^2 + x2^2*x4, x2^2*x4^2")
    result.expect("ideal", recognize(pinned, abf.bound).components == abf.components, True)
    result.expect("polynomial degrees", abf.polynomial_degrees, [3])
    family = enumerate_gins(abf)
    index = _pinned_family(result, family, A_5_7, GINS_5_7)
    poset = betti_poset(family)
    result.expect("minimum", _label(poset.minimum, index), "G1")
    result.expect("maximal", [_label(k, index) for k in poset.maximal], ["G2"])
    result.expect("has maximum", poset.has_maximum, True)
    result.expect("revlex gin", _label(poset.revlex_index, index), "G1")
    result.expect("lex gin", _label(family.index_of(gin_for_order(abf, LEX)), index), "G1")
    weighted = gin_for_order(abf, TermOrder.weighted([6, 5, 2, 1]))
    result.expect("weight 6,5,2,1 gin", _label(family.index_of(weighted), index), "G2")
    result.expect("gin-lex closest to lex", lex_proximity(family).gin_lex_dominates, True)


def _reproduce_three_gin_quartics(result: Reproduction):
    abf = three_gin_quartics()
    A = set(_monomials(7, A_5_8))
    result.expect("A", abf.component(4).A == frozenset(A), True)
    pinned = _polynomials(7, A_5_8 + ", x1*x3*x6^2 + x2^2*x3*x7, x1*x4^2*x6 + x2^2*x4^2,"
                          "x1*x4^2*x6*x7, x2^2*x3*x7^2, x1*x4^2*x6^2")
    result.expect("ideal", recognize(pinned, abf.bound).components == abf.components, True)
    family = enumerate_gins(abf)
    index = _pinned_family(result, family, A_5_8, GINS_5_8)
    poset = betti_poset(family)
    result.expect("minimum", _label(poset.minimum, index), "G1")
    result.expect("maximal", sorted(_label(k, index) for k in poset.maximal), ["G2", "G3"])
    result.expect("has maximum", poset.has_maximum, False)
    result.record.add("verdict on maximum", "no maximum" if not poset.has_maximum else "maximum")
    result.expect("revlex gin", _label(poset.revlex_index, index), "G1")
    result.expect("lex gin", _label(family.index_of(gin_for_order(abf, LEX)), index), "G2")
    weighted = gin_for_order(abf, TermOrder.weighted([7, 6, 5, 4, 3, 2, 1]))
    result.expect("weight 7,6,5,4,3,2,1 gin", _label(family.index_of(weighted), index), "G3")

    forbidden = {4: _monomials(7, "x2^2*x3*x7, x1*x4^2*x6")}
    outcome = selection_feasibility(abf, forbidden)
    result.expect("forbidden initial terms feasible", outcome.feasible, False)
    if outcome.certificate:
        for label, multiplier in outcome.certificate.items():
            result.record.add("certificate", f"{multiplier} * [{label}]")


def _label(k: Optional[int], index: Dict[str, Optional[int]]) -> str:
    for label, position in index.items():
        if position is not None and position == k:
            return label
    return "unmatched"


def reproduce(example: str, seed: int = 0) -> Reproduction:
    """Recompute one example and collect every disagreement with its pinned data."""
    if example not in EXAMPLES:
        raise GinlexError(f"unknown example {example!r}; expected one of {', '.join(EXAMPLES)}")
    result = Reproduction(example, seed)
    if example == "4.6a":
        _reproduce_mij_gap(result)
    elif example == "4.6b":
        _reproduce_gotzmann_not_lex(result)
    elif example == "5.5":
        _reproduce_two_gin_quadrics(result, seed)
    elif example == "5.7":
        _reproduce_two_gin_cubics(result)
    else:
        _reproduce_three_gin_quartics(result)
    return result.finish()
