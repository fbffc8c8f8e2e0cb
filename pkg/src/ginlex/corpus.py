"""Seeded random ideals for the verification campaigns.

Every sample is rebuilt from ``(kind, seed, index)`` alone, so a failing item
can be replayed without regenerating the rest of its corpus.
"""

import random
from collections import namedtuple
from typing import List, Optional, Sequence

from ginlex.almost_borel import construct_almost_borel
from ginlex.errors import GinlexError
from ginlex.groebner import MonomialIdeal
from ginlex.polynomials import (
    REVLEX,
    Comparison,
    Monomial,
    Polynomial,
    borel_compare,
    monomials_of_degree,
)
from ginlex.stable import borel_closure

KINDS = ("stable", "homogeneous", "almost-borel")

COEFFICIENT_RANGE = 3

Sample = namedtuple("Sample", ["kind", "index", "seed", "n", "generators", "blocks"])


def sample_seed(seed: int, index: int) -> int:
    return seed * 100003 + index


def _random_monomial(rng: random.Random, d: int, n: int) -> Monomial:
    return rng.choice(monomials_of_degree(d, n))


def random_strongly_stable(n: int, maxdeg: int, seed: int) -> MonomialIdeal:
    """Borel closure of one to three random monomials of degree ``2..maxdeg``."""
    rng = random.Random(seed)
    low = min(2, maxdeg)
    ideal = MonomialIdeal.zero(n)
    for _ in range(rng.randint(1, 3)):
        ideal = ideal + borel_closure([_random_monomial(rng, rng.randint(low, maxdeg), n)])
    return ideal


def random_homogeneous(n: int, maxdeg: int, seed: int) -> List[Polynomial]:
    """One to three homogeneous generators with one to three terms each."""
    rng = random.Random(seed)
    low = min(2, maxdeg)
    generators = []
    for _ in range(rng.randint(1, 3)):
        d = rng.randint(low, maxdeg)
        support = rng.sample(monomials_of_degree(d, n), min(rng.randint(1, 3),
                                                          len(monomials_of_degree(d, n))))
        terms = {m: rng.choice([c for c in range(-COEFFICIENT_RANGE, COEFFICIENT_RANGE + 1) if c])
                 for m in support}
        generators.append(Polynomial(terms, REVLEX, n))
    return generators


def random_incomparable(n: int, d: int, size: int, rng: random.Random) -> List[Monomial]:
    """Up to ``size`` pairwise Borel-incomparable monomials of degree ``d``."""
    pool = monomials_of_degree(d, n)
    rng.shuffle(pool)
    chosen: List[Monomial] = []
    for m in pool:
        if all(borel_compare(m, t) == Comparison.INCOMPARABLE for t in chosen):
            chosen.append(m)
            if len(chosen) == size:
                break
    return chosen


def random_almost_borel_input(n: int, maxdeg: int, seed: int):
    """``(T, blocks)`` for the almost Borel-fixed construction.

    ``T`` has up to four incomparable monomials of one degree, grouped into
    blocks of at most two.
    """
    rng = random.Random(seed)
    d = rng.randint(min(2, maxdeg), maxdeg)
    T = random_incomparable(n, d, rng.randint(2, 4), rng)
    rng.shuffle(T)
    blocks = []
    rest = list(T)
    while rest:
        size = min(len(rest), rng.randint(1, 2))
        blocks.append(sorted(rest[:size], key=REVLEX.key, reverse=True))
        rest = rest[size:]
    return sorted(T, key=REVLEX.key, reverse=True), blocks


def generate(kind: str, size: int, n: int, maxdeg: int, seed: int,
             start: int = 0) -> List[Sample]:
    """``size`` samples of one kind; item ``k`` uses seed ``sample_seed(seed, start + k)``."""
    if kind not in KINDS:
        raise GinlexError(f"unknown corpus kind {kind!r}; expected one of {', '.join(KINDS)}")
    if n < 1 or maxdeg < 1:
        raise GinlexError(f"corpus needs n >= 1 and maxdeg >= 1, got n={n}, maxdeg={maxdeg}")
    return [sample(kind, start + k, n, maxdeg, seed) for k in range(size)]


def sample(kind: str, index: int, n: int, maxdeg: int, seed: int) -> Sample:
    item_seed = sample_seed(seed, index)
    blocks: Optional[Sequence[Sequence[Monomial]]] = None
    if kind == "stable":
        generators = random_strongly_stable(n, maxdeg, item_seed).as_polynomials()
    elif kind == "homogeneous":
        generators = random_homogeneous(n, maxdeg, item_seed)
    else:
        T, blocks = random_almost_borel_input(n, maxdeg, item_seed)
        generators = list(construct_almost_borel(T, blocks).generators)
    return Sample(kind, index, item_seed, n, generators, blocks)

