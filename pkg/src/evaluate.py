import functools
import json
import logging
from argparse import ArgumentParser
from multiprocessing import Pool
from os.path import exists, join
from typing import Any, Dict, List, Optional

from omegaconf import DictConfig
from tqdm import tqdm

from src.data_generator import fixture_name, has_canonical_row_one, load_fixtures, search_bol
from src.datas.named_loops import small_groups
from src.errors import OrderBoundExceeded
from src.groups.perm_group import is_simple_group
from src.loops.cayley import validate_loop
from src.loops.normality import normal_subloops
from src.multiplication.epimorphism import check_factor_correspondence
from src.multiplication.groups import left_multiplication_group
from src.multiplication.quasidirect import quasidirect_product
from src.utils import configure_logging, load_config, resolve_workers

logger = logging.getLogger(__name__)


def evaluate_fixture(table: List[List[int]], bounds: Dict[str, int]) -> Dict[str, Any]:
    """Run the correspondence, soundness and quasidirect checks on one loop."""
    loop = validate_loop(table)
    result = {"order": loop.order, "correspondence_checks": 0, "correspondence_failures": 0,
              "soundness_counterexample": False, "quasidirect_checked": False,
              "quasidirect_failed": False,
              "quasidirect_isomorphic": False}
    subs = normal_subloops(loop, bounds["subloop_order_bound"])
    for sub in subs:
        report = check_factor_correspondence(loop, sub, bounds["enumeration_bound"],
                                             bounds["cross_check_bound"])
        result["correspondence_checks"] += 1
        result["correspondence_failures"] += int(not report.passed)

    if loop.order > 1:
        mlt = left_multiplication_group(loop, bounds["enumeration_bound"])
        try:
            mlt_simple, _ = is_simple_group(mlt)
        except OrderBoundExceeded:
            mlt_simple = False
        result["soundness_counterexample"] = bool(
            mlt_simple and any(sub.is_proper_nontrivial() for sub in subs))
        if mlt.order() <= bounds["homomorphism_bound"]:
            _, qd_report = quasidirect_product(loop, bounds["enumeration_bound"],
                                               bounds["associativity_bound"],
                                               bounds["homomorphism_bound"],
                                               bounds["spot_checks"])
            result["quasidirect_checked"] = True
            result["quasidirect_failed"] = not qd_report.passed
            result["quasidirect_isomorphic"] = qd_report.passed and qd_report.inner_automorphic
    return result


def collect_tables(config: DictConfig, fixture_folder: Optional[str] = None) -> List[List[List[int]]]:
    """Bol fixtures of every sweep order plus all groups of order at most 8.

    Fixtures come from the fixture folder when present there and are searched otherwise.
    With ``search.sweep_canonical_row_one`` only tables with a canonical row 1 are kept.
    """
    folder = fixture_folder if fixture_folder is not None else config.search.fixture_folder
    tables = []
    for order in config.search.sweep_orders:
        if exists(join(folder, f"{fixture_name(order)}.txt")):
            fixtures = load_fixtures(folder, order)
        else:
            logger.info("no stored fixtures of order %d in %s, searching", order, folder)
            fixtures = search_bol(order, resolve_workers(config.num_workers),
                                  config.search.sweep_canonical_row_one, config.search.max_order)
        if config.search.sweep_canonical_row_one:
            fixtures = [f for f in fixtures if has_canonical_row_one(f.loop.table)]
        tables.extend(f.loop.to_lists() for f in fixtures)
    tables.extend(group.to_lists() for group in small_groups().values())
    return tables


def sweep(config: DictConfig, fixture_folder: Optional[str] = None) -> Dict[str, Any]:
    tables = collect_tables(config, fixture_folder)
    bounds = {key: int(value) for key, value in config.loops.items()}
    worker = functools.partial(evaluate_fixture, bounds=bounds)
    workers = resolve_workers(config.num_workers)
    if workers > 1:
        with Pool(workers) as pool:
            results = list(tqdm(pool.imap(worker, tables), total=len(tables), desc="sweep"))
    else:
        results = [worker(table) for table in tqdm(tables, total=len(tables), desc="sweep")]

    summary: Dict[str, Any] = {
        "loops": len(results),
        "correspondence_checks": sum(r["correspondence_checks"] for r in results),
        "correspondence_failures": sum(r["correspondence_failures"] for r in results),
        "soundness_counterexamples": sum(r["soundness_counterexample"] for r in results),
        "quasidirect_checks": sum(r["quasidirect_checked"] for r in results),
        "quasidirect_failures": sum(r["quasidirect_failed"] for r in results),
        "quasidirect_isomorphisms": sum(r["quasidirect_isomorphic"] for r in results),
    }
    summary["pass"] = (summary["correspondence_failures"] == 0
                       and summary["soundness_counterexamples"] == 0
                       and summary["quasidirect_failures"] == 0)
    return summary


def configure_arg_parser() -> ArgumentParser:
    arg_parser = ArgumentParser()
    arg_parser.add_argument("-c",
                            "--config",
                            help="Path to YAML configuration file",
                            default="configs/kloops.yaml",
                            type=str)
    arg_parser.add_argument("--fixture-folder", type=str, default=None)
    return arg_parser


if __name__ == '__main__':
    __arg_parser = configure_arg_parser()
    __args = __arg_parser.parse_args()
    __config = load_config(__args.config)
    configure_logging(__config.log_level)
    print(json.dumps(sweep(__config, __args.fixture_folder)))
