"""Command-line entry point for ginlex."""

import argparse
import logging
import os
import sys
import time
from typing import List, Optional

from ginlex.almost_borel import betti_poset, enumerate_gins, lex_proximity, recognize
from ginlex.campaigns import (
    CLAIMS,
    DEFAULT_CORPUS_SIZE,
    DEFAULT_MAXDEG,
    DEFAULT_N,
    Settings,
    explore,
    verify,
)
from ginlex.errors import GinlexError
from ginlex.groebner import DEFAULT_MATRIX_BOUND, DEFAULT_TRIALS, GenericityError, gin
from ginlex.idealfile import IdealFile, ParseError, parse_ideal_file
from ginlex.koszul import graded_betti, koszul_betti_tensor
from ginlex.polynomials import TermOrder
from ginlex.records import ResultRecord, digest
from ginlex.reproduce import EXAMPLES, reproduce
from ginlex.stable import NotStronglyStableError, ek_betti, lex_ideal, polynomial_initial_ideal

logger = logging.getLogger("ginlex")

SEED_VARIABLE = "GINLEX_SEED"

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_MISMATCH = 2
EXIT_GENERICITY = 3
EXIT_PARSE = 4


def default_seed() -> int:
    value = os.environ.get(SEED_VARIABLE, "0")
    try:
        return int(value)
    except ValueError as e:
        raise GinlexError(f"{SEED_VARIABLE} must be an integer, got {value!r}") from e


def _load(args) -> IdealFile:
    ideal = parse_ideal_file(args.file)
    args.input_digest = digest(ideal.text)
    return ideal


def _record(args, command: str) -> ResultRecord:
    return ResultRecord(command, getattr(args, "input_digest", None), {"seed": args.seed})


def cmd_betti(args) -> ResultRecord:
    ideal = _load(args)
    record = _record(args, f"betti --method {args.method}")
    if args.method == "ek":
        monomial = ideal.monomial_ideal()
        if monomial is None:
            raise NotStronglyStableError("the Eliahou-Kervaire formula needs monomial generators")
        table = ek_betti(monomial)
    else:
        table = graded_betti(ideal.generators, ideal.n)
    record.add_betti("ideal", table)
    return record


def cmd_gin(args) -> ResultRecord:
    ideal = _load(args)
    order = TermOrder.parse(args.order)
    record = _record(args, f"gin --order {order}")
    record.seeds["trials"] = args.trials
    result = gin(ideal.generators, order, trials=args.trials, seed=args.seed,
                 bound=args.matrix_bound, n=ideal.n)
    record.add("gin", result.format())
    return record


def cmd_lex(args) -> ResultRecord:
    ideal = _load(args)
    record = _record(args, "lex")
    monomial = ideal.monomial_ideal()
    if monomial is None:
        monomial = polynomial_initial_ideal(ideal.generators, ideal.n)
    record.add("lex", lex_ideal(monomial).format())
    return record


def cmd_koszul_betti(args) -> ResultRecord:
    ideal = _load(args)
    p = ideal.n if args.p is None else args.p
    record = _record(args, f"koszul-betti --p {p}")
    tensor = koszul_betti_tensor(ideal.generators, p, seed=args.seed, j_bound=args.j_bound,
                                 n=ideal.n)
    record.seeds["forms seed"] = tensor.seeds[-1]
    record.add("degree bound", tensor.j_bound)
    for (i, j, q), value in sorted(tensor.entries.items(), key=lambda e: (e[0][2], e[0][0], e[0][1])):
        record.add("beta i j p", f"{i} {j} {q} {value}")
    return record


def cmd_gins(args) -> ResultRecord:
    ideal = _load(args)
    record = _record(args, "gins")
    abf = recognize(ideal.generators, args.bound, ideal.n)
    family = enumerate_gins(abf)
    record.add("gins", len(family))
    for member in family.members:
        record.add(f"{member.label} ideal", member.ideal.format())
        record.add(f"{member.label} weight", ",".join(str(w) for w in member.witness))
        record.add_betti(member.label, member.betti)
    poset = betti_poset(family)
    labels = poset.labels
    record.add("minimum", labels[poset.minimum] if poset.minimum is not None else "none")
    record.add("maximal", " ".join(labels[k] for k in poset.maximal))
    record.add("maximum", labels[poset.maximal[0]] if poset.has_maximum else "no maximum")
    if poset.revlex_index is not None:
        record.add("revlex gin", labels[poset.revlex_index])
    record.add("regularity", " ".join(str(r) for r in poset.regularity))
    proximity = lex_proximity(family)
    if proximity.lex_index is not None:
        record.add("lex gin", labels[proximity.lex_index])
    record.add("lex gin closest to lex", proximity.gin_lex_dominates)
    for initials, outcome in family.infeasible:
        chosen = "; ".join(f"degree {d}: " + ", ".join(m.format() for m in sorted(ms))
                           for d, ms in sorted(initials.items()))
        certificate = ", ".join(f"{v}*[{k}]" for k, v in (outcome.certificate or {}).items())
        record.add("infeasible", f"{chosen} <= {certificate}")
    return record


def _settings(args) -> Settings:
    if args.corpus_size < 1:
        raise GinlexError(f"corpus size must be positive, got {args.corpus_size}")
    return Settings(args.corpus_size, args.n, args.maxdeg, args.seed, args.jobs,
                    not args.no_examples)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None,
                        help=f"random seed (default: ${SEED_VARIABLE} or 0)")
    common.add_argument("-v", "--verbose", action="count", default=0,
                        help="log progress to stderr (-vv for debug output)")
    common.add_argument("--timing", action="store_true", help="add elapsed seconds to the record")

    parser = argparse.ArgumentParser(
        prog="ginlex",
        description="Generic initial ideals, lex-segment ideals and Koszul-Betti numbers.")
    commands = parser.add_subparsers(dest="command", required=True)

    betti = commands.add_parser("betti", parents=[common], help="graded Betti numbers of R/I")
    betti.add_argument("file")
    betti.add_argument("--method", choices=("koszul", "ek"), default="koszul")
    betti.set_defaults(handler=cmd_betti)

    gin_parser = commands.add_parser("gin", parents=[common], help="generic initial ideal")
    gin_parser.add_argument("file")
    gin_parser.add_argument("--order", default="revlex",
                            help="lex, revlex or weight:w1,...,wn[:lex|revlex]")
    gin_parser.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    gin_parser.add_argument("--matrix-bound", type=int, default=DEFAULT_MATRIX_BOUND)
    gin_parser.set_defaults(handler=cmd_gin)

    lex = commands.add_parser("lex", parents=[common], help="lex-segment ideal")
    lex.add_argument("file")
    lex.set_defaults(handler=cmd_lex)

    koszul = commands.add_parser("koszul-betti", parents=[common],
                                 help="Koszul-Betti numbers for generic linear forms")
    koszul.add_argument("file")
    koszul.add_argument("--p", type=int, default=None, help="number of forms (default: n)")
    koszul.add_argument("--j-bound", type=int, default=None)
    koszul.set_defaults(handler=cmd_koszul_betti)

    gins = commands.add_parser("gins", parents=[common],
                               help="all gins of an almost Borel-fixed ideal")
    gins.add_argument("file")
    gins.add_argument("--bound", type=int, default=None)
    gins.set_defaults(handler=cmd_gins)

    again = commands.add_parser("reproduce", parents=[common], help="recompute a worked example")
    again.add_argument("example", choices=EXAMPLES)
    again.set_defaults(handler=None)

    for name, helptext in (("verify", "check a claim on a seeded corpus"),
                           ("explore", "sample behaviour without a verdict")):
        campaign = commands.add_parser(name, parents=[common], help=helptext)
        if name == "verify":
            campaign.add_argument("claim", choices=CLAIMS)
        campaign.add_argument("--corpus-size", type=int, default=DEFAULT_CORPUS_SIZE)
        campaign.add_argument("--n", type=int, default=DEFAULT_N)
        campaign.add_argument("--maxdeg", type=int, default=DEFAULT_MAXDEG)
        campaign.add_argument("--jobs", type=int, default=1)
        campaign.add_argument("--no-examples", action="store_true",
                              help="leave the worked gin families out of the corpus")
        campaign.set_defaults(handler=None)
    return parser


def _configure_logging(verbosity: int):
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(stream=sys.stderr, level=level,
                        format="%(levelname)s %(name)s: %(message)s")


def execute(args) -> int:
    started = time.perf_counter()
    logger.info("running %s with seed %d", args.command, args.seed)
    code = EXIT_OK
    if args.command == "reproduce":
        result = reproduce(args.example, args.seed)
        record = result.record
        code = EXIT_OK if result.ok else EXIT_MISMATCH
    elif args.command == "verify":
        report = verify(args.claim, _settings(args))
        record = report.record()
        if report.inconclusive:
            code = EXIT_GENERICITY
        elif not report.passed:
            code = EXIT_MISMATCH
    elif args.command == "explore":
        record = explore(_settings(args)).record()
    else:
        record = args.handler(args)
    record.timing = time.perf_counter() - started
    sys.stdout.write(record.render(timing=args.timing))
    return code


def run(argv: Optional[List[str]] = None) -> int:
    """Parse ``argv``, run one command and return its exit code."""
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    try:
        if args.seed is None:
            args.seed = default_seed()
        return execute(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except GenericityError as e:
        print(f"error: {e.reason}", file=sys.stderr)
        for candidate in e.candidates:
            print(f"  candidate: {candidate}", file=sys.stderr)
        return EXIT_GENERICITY
    except GinlexError as e:
        print(f"error: {e.reason}", file=sys.stderr)
        return EXIT_ERROR


def main(argv: Optional[List[str]] = None):
    """Entry point."""
    try:
        code = run(argv)
    except KeyboardInterrupt:
        print("interrupted", file=sys.stderr)
        code = 130
    sys.exit(code)


if __name__ == "__main__":
    main()
