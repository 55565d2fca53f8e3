import json
import logging
import sys
from argparse import ArgumentParser, Namespace
from typing import List, NoReturn, Optional

from omegaconf import DictConfig

from src.data_generator import dump_fixtures, search_bol
from src.datas.loop_files import format_loop, read_loops, read_records
from src.errors import (IllConditioned, LoopFileError, LoopTheoryError, NoInverse, NotInTransversal,
                        NotUnimodular, NumericalFailure, OrderBoundExceeded, format_witness)
from src.evaluate import sweep
from src.loops.cayley import CayleyTable, find_aip_violation, find_bol_violation, is_moufang, validate_loop
from src.matrices.checks import check_identities, check_structure
from src.matrices.transversal import FIELDS, MAX_DIMENSION, MIN_DIMENSION, Tolerances
from src.multiplication.certificate import certify_simplicity
from src.utils import configure_logging, load_config, resolve_workers

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_PARSE = 2
EXIT_BOUND = 3
EXIT_NUMERICAL = 4
EXIT_USAGE = 64

NUMERICAL_ERRORS = (IllConditioned, NotInTransversal, NotUnimodular, NumericalFailure)


class CliArgumentParser(ArgumentParser):
    """Argument errors exit with the usage code instead of argparse's 2, which is taken by parse errors."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def configure_arg_parser() -> ArgumentParser:
    arg_parser = CliArgumentParser(prog="kloops")
    arg_parser.add_argument("-c",
                            "--config",
                            help="Path to YAML configuration file",
                            default="configs/kloops.yaml",
                            type=str)
    commands = arg_parser.add_subparsers(dest="command", required=True)

    validate = commands.add_parser("validate", help="check the loop axioms of every loop in a file")
    validate.add_argument("path", help="loop file, or - for standard input")
    validate.add_argument("--props", action="store_true", help="also report bol / moufang / aip")

    certify = commands.add_parser("certify", help="print a simplicity certificate per loop")
    certify.add_argument("path", help="loop file, or - for standard input")

    matrix = commands.add_parser("matrix-check", help="sampled identities of the matrix K-loop")
    matrix.add_argument("--field", choices=FIELDS, default=None)
    matrix.add_argument("--n", type=int, default=None)
    matrix.add_argument("--samples", type=int, default=None)
    matrix.add_argument("--seed", type=int, default=None)

    search = commands.add_parser("search-bol", help="exhaustive search for left Bol loops")
    search.add_argument("--order", type=int, required=True)
    search.add_argument("--canonical-row-one", action="store_true", default=None,
                        help="only tables whose row 1 is the canonical form of its cycle type")
    search.add_argument("--stdout", action="store_true",
                        help="print the fixtures instead of writing the fixture folder")

    sweep_cmd = commands.add_parser("sweep", help="correspondence, soundness and quasidirect sweep")
    sweep_cmd.add_argument("--fixture-folder", type=str, default=None)
    return arg_parser


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def describe(loop: CayleyTable, props: bool) -> str:
    parts = [f"identity={loop.identity}"]
    if props:
        bol_witness = find_bol_violation(loop)
        parts.append(f"bol={_yes(bol_witness is None)}")
        parts.append(f"moufang={_yes(is_moufang(loop))}")
        try:
            aip_witness = find_aip_violation(loop)
            parts.append(f"aip={_yes(aip_witness is None)}")
        except NoInverse:
            parts.append("aip=no")
        if bol_witness is not None:
            parts.append(f"bol_witness={format_witness(bol_witness)}")
    return " ".join(parts)


def cmd_validate(args: Namespace, config: DictConfig) -> int:
    for record in read_records(args.path):
        loop = validate_loop(record.table)
        print(describe(loop, args.props))
    return EXIT_OK


def cmd_certify(args: Namespace, config: DictConfig) -> int:
    for loop in read_loops(args.path):
        certificate = certify_simplicity(loop, config.loops.enumeration_bound,
                                         config.loops.subloop_order_bound)
        print(certificate.to_json())
    return EXIT_OK


def cmd_matrix_check(args: Namespace, config: DictConfig) -> int:
    settings = config.matrices
    field = args.field if args.field is not None else settings.field
    n = args.n if args.n is not None else settings.n
    samples = args.samples if args.samples is not None else settings.samples
    seed = args.seed if args.seed is not None else config.seed
    if not MIN_DIMENSION <= n <= MAX_DIMENSION:
        configure_arg_parser().error(f"--n must lie in {MIN_DIMENSION}..{MAX_DIMENSION}, got {n}")
    if samples < 1:
        configure_arg_parser().error(f"--samples must be positive, got {samples}")
    kwargs = dict(field=field, n=n, samples=samples, seed=seed, spread=settings.spread,
                  chunk_size=settings.chunk_size, num_workers=resolve_workers(config.num_workers),
                  resample_budget=settings.resample_budget,
                  tolerances=Tolerances.from_config(settings.tolerances))
    identities = check_identities(**kwargs)
    structure = check_structure(**kwargs)
    print(identities.to_json())
    print(structure.to_json())
    return EXIT_OK if identities.passed and structure.passed else EXIT_DOMAIN


def cmd_search_bol(args: Namespace, config: DictConfig) -> int:
    canonical = args.canonical_row_one
    if canonical is None:
        canonical = config.search.canonical_row_one
    fixtures = search_bol(args.order, resolve_workers(config.num_workers), canonical,
                          config.search.max_order)
    if args.stdout:
        sys.stdout.write("\n".join(format_loop(f.loop, f.flags) for f in fixtures))
    else:
        print(dump_fixtures(fixtures, config.search.fixture_folder, args.order))
    return EXIT_OK


def cmd_sweep(args: Namespace, config: DictConfig) -> int:
    summary = sweep(config, args.fixture_folder)
    print(json.dumps(summary))
    return EXIT_OK if summary["pass"] else EXIT_DOMAIN


COMMANDS = {
    "validate": cmd_validate,
    "certify": cmd_certify,
    "matrix-check": cmd_matrix_check,
    "search-bol": cmd_search_bol,
    "sweep": cmd_sweep,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = configure_arg_parser().parse_args(argv)
    try:
        config = load_config(args.config)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    configure_logging(config.log_level)
    try:
        return COMMANDS[args.command](args, config)
    except LoopFileError as err:
        print(f"parse error: {err}", file=sys.stderr)
        return EXIT_PARSE
    except OrderBoundExceeded as err:
        print(f"bound exceeded: {err}", file=sys.stderr)
        return EXIT_BOUND
    except NUMERICAL_ERRORS as err:
        print(f"numerical failure: {err}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (LoopTheoryError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
