import logging
from argparse import ArgumentParser
from dataclasses import dataclass
from itertools import permutations
from multiprocessing import Pool
from os.path import join
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

import numpy as np
from tqdm import tqdm

from src.datas.loop_files import dump_loops, read_records
from src.errors import OrderBoundExceeded, VerificationError
from src.loops.cayley import CayleyTable, has_aip, is_associative, is_left_bol, is_moufang, validate_loop
from src.utils import dump_index, load_config, resolve_workers

logger = logging.getLogger(__name__)

SEARCH_ORDER_BOUND = 8

Row = Tuple[int, ...]
Rows = List[Optional[Row]]


@dataclass
class LoopFixture:
    loop: CayleyTable
    flags: Dict[str, bool]


def label(loop: CayleyTable) -> Dict[str, bool]:
    return {
        "bol": is_left_bol(loop),
        "group": is_associative(loop),
        "moufang": is_moufang(loop),
        "aip": has_aip(loop),
    }


# ========== ROW ONE ==========
def _partitions(total: int, largest: int) -> Iterator[Tuple[int, ...]]:
    # non-increasing parts, each at least 2
    if total == 0:
        yield ()
        return
    for part in range(min(total, largest), 1, -1):
        for rest in _partitions(total - part, part):
            yield (part,) + rest


def cycle_types(order: int) -> List[Tuple[int, ...]]:
    """Cycle types of lambda_1: length of the cycle through 0, then the other cycle lengths.

    lambda_1 has no fixed point, since column y already holds y in row 0.
    """
    return [(k,) + rest for k in range(2, order + 1) for rest in _partitions(order - k, order)]


def canonical_row(cycle_type: Sequence[int]) -> Row:
    """(0 1 .. k-1)(k ..)...: the representative of a cycle type with 0 -> 1."""
    images = list(range(sum(cycle_type)))
    start = 0
    for length in cycle_type:
        for offset in range(length):
            images[start + offset] = start + (offset + 1) % length
        start += length
    return tuple(images)


# ========== BACKTRACKING ==========
def _compatible(rows: Rows, candidate: Row) -> bool:
    return all(
        all(a != b for a, b in zip(row, candidate)) for row in rows if row is not None)


def _propagate(rows: Rows) -> Optional[Rows]:
    """Close the partial table under lambda_x lambda_y lambda_x = lambda_{x(yx)}.

    Rows forced by two complete rows are filled in; returns None on a clash with
    an existing row or with a column.
    """
    rows = list(rows)
    n = len(rows)
    changed = True
    while changed:
        changed = False
        filled = [x for x in range(n) if rows[x] is not None]
        for x in filled[1:]:
            lx = rows[x]
            for y in filled:
                ly = rows[y]
                z = lx[ly[x]]
                forced = tuple(lx[ly[lx[w]]] for w in range(n))
                current = rows[z]
                if current is None:
                    if not _compatible(rows, forced):
                        return None
                    rows[z] = forced
                    changed = True
                elif current != forced:
                    return None
    return rows


def _row_candidates(rows: Rows, r: int) -> Iterator[Row]:
    n = len(rows)
    taken = [{row[c] for row in rows if row is not None} for c in range(n)]
    current = [r] + [-1] * (n - 1)
    used = {r}

    def extend(c: int) -> Iterator[Row]:
        if c == n:
            yield tuple(current)
            return
        for v in range(n):
            if v not in used and v not in taken[c]:
                current[c] = v
                used.add(v)
                yield from extend(c + 1)
                used.discard(v)

    yield from extend(1)


def _search(rows: Rows) -> Iterator[Rows]:
    closed = _propagate(rows)
    if closed is None:
        return
    if None not in closed:
        yield closed
        return
    r = closed.index(None)
    for candidate in _row_candidates(closed, r):
        trial = list(closed)
        trial[r] = candidate
        yield from _search(trial)


def search_cycle_type(cycle_type: Tuple[int, ...]) -> List[np.ndarray]:
    """Every left Bol table with identity 0 whose row 1 is ``canonical_row(cycle_type)``."""
    n = sum(cycle_type)
    rows: Rows = [None] * n
    rows[0] = tuple(range(n))
    rows[1] = canonical_row(cycle_type)
    return [np.array(found, dtype=np.int64) for found in _search(rows)]


def relabelings(table: np.ndarray) -> np.ndarray:
    """All tables s(T[s^-1 x, s^-1 y]) for permutations s fixing 0."""
    n = table.shape[0]
    perms = np.array([(0,) + p for p in permutations(range(1, n))], dtype=np.int64)
    inverse = np.argsort(perms, axis=1)
    values = table[inverse[:, :, None], inverse[:, None, :]]
    return np.take_along_axis(perms, values.reshape(len(perms), -1), axis=1).reshape(-1, n, n)


def has_canonical_row_one(table: np.ndarray) -> bool:
    """Whether row 1 is ``canonical_row`` of its own cycle type."""
    n = table.shape[0]
    if n < 2:
        return True
    return tuple(int(v) for v in table[1]) in {canonical_row(t) for t in cycle_types(n)}


def search_bol(order: int, num_workers: int = 1, canonical_row_one: bool = False,
               max_order: int = SEARCH_ORDER_BOUND) -> List[LoopFixture]:
    """Every left Bol table of the given order with identity 0, sorted by flattened table.

    Tables are told apart by equality, not up to isomorphism. The search runs one
    task per cycle type of row 1 with row 1 fixed to ``canonical_row`` and then adds
    every relabelling fixing 0; ``canonical_row_one`` skips that last step and keeps
    only the tables whose row 1 is canonical, which still meets every isomorphism class.
    """
    if order < 1:
        raise ValueError(f"order must be positive, got {order}")
    if order > max_order:
        raise OrderBoundExceeded(order, max_order, "search_bol")
    if order == 1:
        found = [np.zeros((1, 1), dtype=np.int64)]
    else:
        types = cycle_types(order)
        desc = f"bol search, order {order}"
        if num_workers > 1:
            with Pool(min(num_workers, len(types))) as pool:
                results = list(tqdm(pool.imap(search_cycle_type, types), total=len(types), desc=desc))
        else:
            results = [search_cycle_type(t) for t in tqdm(types, total=len(types), desc=desc)]
        found = [table for chunk in results for table in chunk]

    unique: Dict[bytes, np.ndarray] = {}
    for table in found:
        batch = table[None] if canonical_row_one else relabelings(table)
        for candidate in batch.astype(np.int8):
            key = candidate.tobytes()
            if key not in unique:
                unique[key] = candidate.copy()
    ordered = sorted(unique.values(), key=lambda t: t.ravel().tolist())

    fixtures = []
    for table in ordered:
        loop = validate_loop(table.astype(np.int64))
        flags = label(loop)
        if not flags["bol"]:
            raise VerificationError(f"search produced a non-Bol table {loop.to_lists()}")
        fixtures.append(LoopFixture(loop, flags))
    logger.info("order %d: %d left Bol tables", order, len(fixtures))
    return fixtures


# ========== FIXTURE FILES ==========
def fixture_name(order: int) -> str:
    return f"bol_{order}"


def dump_fixtures(fixtures: List[LoopFixture], out_root_path: str, order: int) -> str:
    dump_index([{"index": idx, **fixture.flags} for idx, fixture in enumerate(fixtures)],
               out_root_path, fixture_name(order))
    path = join(out_root_path, f"{fixture_name(order)}.txt")
    dump_loops(path, [f.loop for f in fixtures], [f.flags for f in fixtures])
    return path


def load_fixtures(out_root_path: str, order: int) -> List[LoopFixture]:
    path = join(out_root_path, f"{fixture_name(order)}.txt")
    return [LoopFixture(validate_loop(record.table), record.flags) for record in read_records(path)]


def generate(config_path: str, orders: Optional[List[int]] = None,
             canonical_row_one: Optional[bool] = None) -> List[str]:
    config = load_config(config_path)
    if orders is None:
        orders = list(range(1, config.search.max_order + 1))
    if canonical_row_one is None:
        canonical_row_one = config.search.canonical_row_one
    workers = resolve_workers(config.num_workers)
    paths = []
    seen_orders: Set[int] = set()
    for order in orders:
        if order in seen_orders:
            continue
        seen_orders.add(order)
        fixtures = search_bol(order, workers, canonical_row_one, config.search.max_order)
        paths.append(dump_fixtures(fixtures, config.search.fixture_folder, order))
    return paths


def configure_arg_parser() -> ArgumentParser:
    arg_parser = ArgumentParser()
    arg_parser.add_argument("-c",
                            "--config",
                            help="Path to YAML configuration file",
                            default="configs/kloops.yaml",
                            type=str)
    arg_parser.add_argument("--order", type=int, action="append", default=None)
    return arg_parser


if __name__ == "__main__":
    __arg_parser = configure_arg_parser()
    __args = __arg_parser.parse_args()
    for __path in generate(__args.config, __args.order):
        print(__path)
