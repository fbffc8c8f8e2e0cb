"""Verification campaigns over seeded corpora.

A claim is checked item by item; every item is rebuilt from the campaign
seed and its index, and a failing item is reported together with its
generators so it can be replayed on its own.
"""

import logging
import random
from collections import namedtuple
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

from ginlex.almost_borel import (
    AlmostBorelFixedIdeal,
    GinFamily,
    betti_poset,
    enumerate_gins,
    gin_for_order,
    lex_proximity,
    recognize,
)
from ginlex.corpus import KINDS, Sample, generate
from ginlex.errors import GinlexError
from ginlex.groebner import GenericityError, MonomialIdeal, gin, initial_ideal, revlex_gin
from ginlex.idealfile import format_ideal
from ginlex.koszul import (
    GradedQuotientBasis,
    KoszulBettiTensor,
    KoszulHomology,
    LinearFormSequence,
    default_j_bound,
    graded_betti,
    is_componentwise_linear_by_definition,
    is_proper_sequence,
    koszul_betti_tensor,
    recursion_check,
)
from ginlex.polynomials import LEX, REVLEX, Polynomial, TermOrder, monomials_of_degree
from ginlex.records import ResultRecord
from ginlex.reproduce import almost_borel_example
from ginlex.stable import (
    BettiTable,
    ah_koszul_betti,
    ah_koszul_betti_from_slices,
    compare_borel_ideals,
    ek_betti,
    is_componentwise_linear,
    is_gotzmann,
    is_gotzmann_by_definition,
    lex_ideal,
    m_statistics,
)

logger = logging.getLogger(__name__)

CLAIMS = ("T3.2", "P4.1", "T4.2", "T4.4", "T4.5", "T5.1", "P5.2", "P5.9")

PINNED_FAMILIES = ("5.5", "5.7", "5.8")

DEFAULT_CORPUS_SIZE = 30
DEFAULT_N = 3
DEFAULT_MAXDEG = 3
EXPLORE_WEIGHTS = 12

Settings = namedtuple("Settings", ["corpus_size", "n", "maxdeg", "seed", "jobs", "pinned"])
Settings.__new__.__defaults__ = (DEFAULT_CORPUS_SIZE, DEFAULT_N, DEFAULT_MAXDEG, 0, 1, True)


@dataclass
class ItemOutcome:
    index: int
    failures: List[str] = field(default_factory=list)
    skipped: Optional[str] = None
    notes: List[str] = field(default_factory=list)


@dataclass
class ClaimReport:
    """Pass/fail of one claim, with a dump of every counterexample."""

    claim: str
    settings: Settings
    checked: int = 0
    failures: List[str] = field(default_factory=list)
    skipped: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    exploratory: bool = False

    @property
    def passed(self) -> bool:
        """No counterexample and at least one item actually checked."""
        return not self.failures and self.checked > 0

    @property
    def inconclusive(self) -> bool:
        """Every item was skipped, so the claim was never tested."""
        return not self.failures and self.checked == 0

    def absorb(self, outcome: ItemOutcome):
        if outcome.skipped:
            self.skipped.append(f"item {outcome.index}: {outcome.skipped}")
        else:
            self.checked += 1
        self.failures += [f"item {outcome.index}: {f}" for f in outcome.failures]
        self.notes += [f"item {outcome.index}: {n}" for n in outcome.notes]

    def record(self) -> ResultRecord:
        s = self.settings
        record = ResultRecord(
            f"verify {self.claim}" if not self.exploratory else "explore",
            seeds={"seed": s.seed})
        record.add("corpus", f"size={s.corpus_size} n={s.n} maxdeg={s.maxdeg}")
        record.add("checked", self.checked)
        for line in self.skipped:
            record.add("skipped", line)
        for line in self.notes:
            record.add("note", line)
        for line in self.failures:
            record.add("counterexample", line)
        if self.exploratory:
            record.add("verdict", "none")
        else:
            record.add("verdict", "pass" if self.passed else
                       "inconclusive" if self.inconclusive else "fail")
        return record


def _describe(sample: Sample) -> str:
    text = format_ideal(sample.generators, n=sample.n).strip().replace("\n", " | ")
    return f"seed {sample.seed}: {text}"


def _run(check: Callable[[Sample], ItemOutcome], samples: Sequence[Sample], jobs: int,
         report: ClaimReport) -> ClaimReport:
    """Apply ``check`` to every sample; results merge in index order."""
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(check, samples))
    else:
        outcomes = [check(sample) for sample in samples]
    for outcome in outcomes:
        report.absorb(outcome)
    logger.info("%s: %d checked, %d failed, %d skipped", report.claim, report.checked,
                len(report.failures), len(report.skipped))
    return report


def _guarded(check: Callable[[Sample, ItemOutcome], None], sample: Sample) -> ItemOutcome:
    outcome = ItemOutcome(sample.index)
    try:
        check(sample, outcome)
    except GenericityError as e:
        outcome.skipped = f"genericity not certified ({e.reason}); {_describe(sample)}"
    return outcome


def _fail(outcome: ItemOutcome, sample: Sample, message: str):
    outcome.failures.append(f"{message}; {_describe(sample)}")


def _monomial_ideal(sample: Sample) -> MonomialIdeal:
    return MonomialIdeal.from_polynomials(sample.generators, sample.n)


def _ah_tensor(I: MonomialIdeal, j_bound: int) -> KoszulBettiTensor:
    entries = {}
    for p in range(I.n + 1):
        for (i, j), value in ah_koszul_betti(I, p, j_bound).entries.items():
            entries[(i, j, p)] = value
    return KoszulBettiTensor(entries, I.n, I.n, j_bound)


def _first_difference(a: BettiTable, b: BettiTable) -> str:
    for key in sorted(set(a.entries) | set(b.entries)):
        if a[key] != b[key]:
            return f"beta{key} = {a[key]} vs {b[key]}"
    return "tables agree"


# formula against homology

def _check_formulas(sample: Sample, outcome: ItemOutcome):
    I = _monomial_ideal(sample)
    direct = graded_betti(sample.generators, sample.n)
    formula = ek_betti(I)
    if direct != formula:
        _fail(outcome, sample, f"Eliahou-Kervaire differs from homology: "
                               f"{_first_difference(formula, direct)}")
    quotient = GradedQuotientBasis(sample.generators, sample.n)
    j_bound = default_j_bound(quotient)
    for p in range(sample.n + 1):
        homology = KoszulHomology(quotient, LinearFormSequence.last_variables(p, sample.n))
        measured = BettiTable({(i, j): homology.betti(i, j)
                               for i in range(p + 1) for j in range(i, j_bound + 1)},
                              sample.n, p)
        predicted = ah_koszul_betti(I, p, j_bound)
        if measured != predicted:
            _fail(outcome, sample, f"p={p}: formula differs from homology: "
                                   f"{_first_difference(predicted, measured)}")
        if ah_koszul_betti_from_slices(I, p, j_bound) != predicted:
            _fail(outcome, sample, f"p={p}: slice rewriting differs from the formula")


def check_formulas(sample: Sample) -> ItemOutcome:
    return _guarded(_check_formulas, sample)


# lex-segment domination

def _check_lex_domination(sample: Sample, outcome: ItemOutcome):
    I = _monomial_ideal(sample)
    L = lex_ideal(I)
    bound = max(I.max_degree, L.max_degree) + 1
    si, sl = m_statistics(I, bound), m_statistics(L, bound)
    for i in range(sample.n + 1):
        for j in range(bound + 1):
            if sl.m_leq(i, j) > si.m_leq(i, j):
                _fail(outcome, sample, f"m_<={i}(Lex_{j}) = {sl.m_leq(i, j)} exceeds "
                                       f"m_<={i}(I_{j}) = {si.m_leq(i, j)}")
    if not ek_betti(I).dominated_by(ek_betti(L)):
        _fail(outcome, sample, "Betti numbers of the ideal exceed those of its lex ideal")
    j_bound = max(I.max_degree, L.max_degree) + sample.n
    if not _ah_tensor(I, j_bound).dominated_by(_ah_tensor(L, j_bound)):
        _fail(outcome, sample, "Koszul-Betti numbers exceed those of the lex ideal")
    comparison = compare_borel_ideals(I, L, bound)
    if not comparison.dominated:
        _fail(outcome, sample, "comparison does not see the lex domination")
    if not comparison.consistent:
        _fail(outcome, sample, f"equality conditions disagree: {comparison.conditions}")


def check_lex_domination(sample: Sample) -> ItemOutcome:
    return _guarded(_check_lex_domination, sample)


# upper bounds by gins and the lex ideal

def _common_bound(sample: Sample, *ideals: MonomialIdeal) -> int:
    quotient = GradedQuotientBasis(sample.generators, sample.n)
    return max([default_j_bound(quotient)] + [I.max_degree + sample.n for I in ideals])


def _check_upper_bounds(sample: Sample, outcome: ItemOutcome):
    gens, n = sample.generators, sample.n
    gin_revlex = revlex_gin(gens, seed=sample.seed, n=n)
    gin_lex = gin(gens, LEX, seed=sample.seed, n=n)
    weighted = TermOrder.weighted(_random_weight(n, random.Random(sample.seed)))
    gin_weight = gin(gens, weighted, seed=sample.seed, n=n)
    L = lex_ideal(gin_revlex)
    j_bound = _common_bound(sample, gin_revlex, gin_lex, gin_weight, L)
    tensor = koszul_betti_tensor(gens, n, seed=sample.seed, j_bound=j_bound, n=n)
    for name, J in (("revlex gin", gin_revlex), ("lex gin", gin_lex),
                    (f"gin for {weighted}", gin_weight), ("lex ideal", L)):
        bound = _ah_tensor(J, j_bound)
        for key, value in tensor.entries.items():
            if value > bound[key]:
                _fail(outcome, sample, f"beta{key} = {value} exceeds {bound[key]} of the {name}")


def check_upper_bounds(sample: Sample) -> ItemOutcome:
    return _guarded(_check_upper_bounds, sample)


# equivalences for componentwise linear ideals

def _mixed_corpus(settings: Settings) -> List[Sample]:
    samples = []
    for k in range(settings.corpus_size):
        kind = KINDS[k % len(KINDS)]
        samples += generate(kind, 1, settings.n, settings.maxdeg, settings.seed, start=k)
    return samples


def _check_gin_equivalences(sample: Sample, outcome: ItemOutcome):
    gens, n = sample.generators, sample.n
    G = revlex_gin(gens, seed=sample.seed, n=n)
    j_bound = _common_bound(sample, G)
    tensor = koszul_betti_tensor(gens, n, seed=sample.seed, j_bound=j_bound, n=n)
    reference = _ah_tensor(G, j_bound)
    conditions = {
        "tensor equality": tensor == reference,
        "first Betti equality": all(tensor[(1, j, n)] == reference[(1, j, n)]
                                    for j in range(j_bound + 1)),
        "componentwise linear": is_componentwise_linear_by_definition(
            gens, n, top=G.max_degree, seed=sample.seed),
        "generic proper sequence": is_proper_sequence(
            LinearFormSequence.generic(n, n, sample.seed), gens, n),
    }
    outcome.notes.append(f"{sample.kind}: " + ", ".join(
        f"{name}={value}" for name, value in conditions.items()))
    if len(set(conditions.values())) > 1:
        _fail(outcome, sample, f"conditions disagree: {conditions}")
    if conditions["generic proper sequence"] and not recursion_check(tensor):
        _fail(outcome, sample, "proper sequence but the Koszul-Betti recursions fail")
    if is_componentwise_linear(gens, n, seed=sample.seed) != conditions["componentwise linear"]:
        _fail(outcome, sample, "first-Betti criterion disagrees with the definition")


def check_gin_equivalences(sample: Sample) -> ItemOutcome:
    return _guarded(_check_gin_equivalences, sample)


def _check_lex_equivalences(sample: Sample, outcome: ItemOutcome):
    gens, n = sample.generators, sample.n
    G = revlex_gin(gens, seed=sample.seed, n=n)
    L = lex_ideal(G)
    j_bound = _common_bound(sample, G, L)
    tensor = koszul_betti_tensor(gens, n, seed=sample.seed, j_bound=j_bound, n=n)
    reference = _ah_tensor(L, j_bound)
    zeroth = all(tensor[(0, j, p)] == reference[(0, j, p)]
                 for p in range(n + 1) for j in range(j_bound + 1))
    conditions = {
        "tensor equality": tensor == reference,
        "first Betti equality": all(tensor[(1, j, n)] == reference[(1, j, n)]
                                    for j in range(j_bound + 1)),
        "gotzmann": is_gotzmann_by_definition(gens, n),
        "zeroth row and componentwise linear": zeroth and is_componentwise_linear_by_definition(
            gens, n, top=G.max_degree, seed=sample.seed),
    }
    outcome.notes.append(f"{sample.kind}: " + ", ".join(
        f"{name}={value}" for name, value in conditions.items()))
    if len(set(conditions.values())) > 1:
        _fail(outcome, sample, f"conditions disagree: {conditions}")
    if is_gotzmann(gens, n, seed=sample.seed) != conditions["gotzmann"]:
        _fail(outcome, sample, "m_i criterion disagrees with the growth definition")


def check_lex_equivalences(sample: Sample) -> ItemOutcome:
    return _guarded(_check_lex_equivalences, sample)


# gin families of almost Borel-fixed ideals

def _family_samples(settings: Settings) -> List[Sample]:
    samples = generate("almost-borel", settings.corpus_size, settings.n, settings.maxdeg,
                       settings.seed)
    if settings.pinned:
        for k, example in enumerate(PINNED_FAMILIES):
            abf = almost_borel_example(example)
            samples.append(Sample(f"example {example}", settings.corpus_size + k, settings.seed,
                                  abf.n, list(abf.generators), None))
    return samples


def _family(sample: Sample) -> GinFamily:
    return enumerate_gins(recognize(sample.generators, n=sample.n))


def _check_revlex_minimum(sample: Sample, outcome: ItemOutcome):
    family = _family(sample)
    poset = betti_poset(family)
    outcome.notes.append(f"{sample.kind}: {len(family)} gins")
    if poset.revlex_index is None:
        _fail(outcome, sample, "the revlex gin is missing from the family")
        return
    if not poset.revlex_is_minimum:
        _fail(outcome, sample, "the revlex gin does not have the smallest Betti numbers")
    revlex = family.members[poset.revlex_index].ideal
    j_bound = max(m.ideal.max_degree for m in family.members) + family.abf.n
    smallest = _ah_tensor(revlex, j_bound)
    for member in family.members:
        if not smallest.dominated_by(_ah_tensor(member.ideal, j_bound)):
            _fail(outcome, sample, f"Koszul-Betti numbers of the revlex gin exceed {member.label}")


def check_revlex_minimum(sample: Sample) -> ItemOutcome:
    return _guarded(_check_revlex_minimum, sample)


def _check_lex_proximity(sample: Sample, outcome: ItemOutcome):
    family = _family(sample)
    proximity = lex_proximity(family)
    if proximity.lex_index is None:
        _fail(outcome, sample, "the lex gin is missing from the family")
    elif not proximity.gin_lex_dominates:
        _fail(outcome, sample, f"another gin meets the lex ideal more: {proximity.table}")


def check_lex_proximity(sample: Sample) -> ItemOutcome:
    return _guarded(_check_lex_proximity, sample)


def _check_almost_borel_linear(sample: Sample, outcome: ItemOutcome):
    if not is_componentwise_linear(sample.generators, sample.n, seed=sample.seed):
        _fail(outcome, sample, "almost Borel-fixed ideal is not componentwise linear")
    abf: AlmostBorelFixedIdeal = recognize(sample.generators, n=sample.n)
    expected = gin_for_order(abf, REVLEX)
    if revlex_gin(sample.generators, seed=sample.seed, n=sample.n) != expected:
        _fail(outcome, sample, "random-coordinate revlex gin differs from A + in(V)")


def check_almost_borel_linear(sample: Sample) -> ItemOutcome:
    return _guarded(_check_almost_borel_linear, sample)


def verify(claim: str, settings: Settings = Settings()) -> ClaimReport:
    """Check one claim on its seeded corpus."""
    report = ClaimReport(claim, settings)
    size, n, maxdeg, seed = settings.corpus_size, settings.n, settings.maxdeg, settings.seed
    if claim == "T3.2":
        return _run(check_formulas, generate("stable", size, n, maxdeg, seed), settings.jobs, report)
    if claim == "P4.1":
        return _run(check_lex_domination, generate("stable", size, n, maxdeg, seed),
                    settings.jobs, report)
    if claim == "T4.2":
        return _run(check_upper_bounds, generate("homogeneous", size, n, maxdeg, seed),
                    settings.jobs, report)
    if claim == "T4.4":
        return _run(check_gin_equivalences, _mixed_corpus(settings), settings.jobs, report)
    if claim == "T4.5":
        return _run(check_lex_equivalences, _mixed_corpus(settings), settings.jobs, report)
    if claim == "T5.1":
        return _run(check_revlex_minimum, _family_samples(settings), settings.jobs, report)
    if claim == "P5.2":
        return _run(check_lex_proximity, _family_samples(settings), settings.jobs, report)
    if claim == "P5.9":
        return _run(check_almost_borel_linear,
                    generate("almost-borel", size, n, maxdeg, seed), settings.jobs, report)
    raise GinlexError(f"unknown claim {claim!r}; expected one of {', '.join(CLAIMS)}")


# exploration without a verdict

def _random_weight(n: int, rng: random.Random) -> List[int]:
    steps = [rng.randint(1, 9) for _ in range(n)]
    return [sum(steps[i:]) for i in range(n)]


def _explore_initial_ideals(sample: Sample) -> ItemOutcome:
    outcome = ItemOutcome(sample.index)
    gens, n = sample.generators, sample.n
    try:
        initial = initial_ideal(gens, REVLEX, n)
        j_bound = _common_bound(sample, initial)
        ours = koszul_betti_tensor(gens, n, seed=sample.seed, j_bound=j_bound, n=n)
        theirs = koszul_betti_tensor(initial.as_polynomials(), n, seed=sample.seed,
                                     j_bound=j_bound, n=n)
    except GenericityError as e:
        outcome.skipped = f"genericity not certified ({e.reason})"
        return outcome
    outcome.notes.append(f"initial ideal bounds Koszul-Betti numbers: {ours.dominated_by(theirs)}")
    return outcome


def _explore_generic_forms(sample: Sample) -> ItemOutcome:
    outcome = ItemOutcome(sample.index)
    n = sample.n
    rng = random.Random(sample.seed)
    quadrics = monomials_of_degree(2, n)
    forms = [Polynomial({m: rng.choice([c for c in range(-9, 10) if c]) for m in quadrics},
                        REVLEX, n)
             for _ in range(n + rng.randint(0, 1))]
    try:
        gin_lex = gin(forms, LEX, seed=sample.seed, n=n)
        L = lex_ideal(revlex_gin(forms, seed=sample.seed, n=n))
    except GenericityError as e:
        outcome.skipped = f"genericity not certified ({e.reason})"
        return outcome
    outcome.notes.append(f"{len(forms)} quadrics: gin-lex equals lex ideal: {gin_lex == L}")
    return outcome


def _explore_sampled_gins(sample: Sample) -> ItemOutcome:
    outcome = ItemOutcome(sample.index)
    gens, n = sample.generators, sample.n
    rng = random.Random(sample.seed)
    found: Dict[MonomialIdeal, BettiTable] = {}
    try:
        gin_lex = gin(gens, LEX, seed=sample.seed, n=n)
        found[gin_lex] = ek_betti(gin_lex)
        for _ in range(EXPLORE_WEIGHTS):
            order = TermOrder.weighted(_random_weight(n, rng))
            G = gin(gens, order, seed=sample.seed, n=n)
            found.setdefault(G, ek_betti(G))
    except GenericityError as e:
        outcome.skipped = f"genericity not certified ({e.reason})"
        return outcome
    best = found[gin_lex]
    maximal = not any(best.dominated_by(t) and best != t for t in found.values())
    outcome.notes.append(f"{len(found)} distinct gins sampled; gin-lex maximal: {maximal}")
    return outcome


def explore(settings: Settings = Settings()) -> ClaimReport:
    """Sample behaviour that carries no certified verdict."""
    report = ClaimReport("explore", settings, exploratory=True)
    homogeneous = generate("homogeneous", settings.corpus_size, settings.n, settings.maxdeg,
                           settings.seed)
    for experiment in (_explore_initial_ideals, _explore_generic_forms, _explore_sampled_gins):
        _run(experiment, homogeneous, settings.jobs, report)
    return report
