import sys
from dataclasses import dataclass, field
from os.path import exists
from typing import Dict, List, Optional, TextIO

import numpy as np

from src.errors import LoopFileError
from src.loops.cayley import CayleyTable, validate_loop

HEADER = "loop"
COMMENT = "#"
FLAGS_PREFIX = "flags:"


@dataclass
class LoopRecord:
    """One ``loop <n>`` block: the raw table, the line it starts on and any flags comment."""
    table: np.ndarray
    line: int
    flags: Dict[str, bool] = field(default_factory=dict)


def _parse_flags(comment: str) -> Dict[str, bool]:
    body = comment[len(FLAGS_PREFIX):]
    flags = {}
    for token in body.split():
        key, _, value = token.partition("=")
        if value not in ("yes", "no"):
            raise LoopFileError(f"bad flag {token!r}")
        flags[key] = value == "yes"
    return flags


def parse_loops(text: str) -> List[LoopRecord]:
    """Parse one or more ``loop <n>`` blocks.

    Each block is a header line followed by n rows of n integers. Blank lines
    and lines starting with '#' may appear anywhere; a ``# flags: k=yes ...``
    comment just before a header attaches flags to that block.
    """
    records: List[LoopRecord] = []
    rows: List[List[int]] = []
    order: Optional[int] = None
    pending_flags: Dict[str, bool] = {}
    start = 0
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith(COMMENT):
            comment = line[1:].strip()
            if comment.startswith(FLAGS_PREFIX):
                try:
                    pending_flags = _parse_flags(comment)
                except LoopFileError as err:
                    raise LoopFileError(str(err), number) from err
            continue
        tokens = line.split()
        if order is None:
            if tokens[0] != HEADER or len(tokens) != 2 or not tokens[1].isdigit():
                raise LoopFileError(f"expected '{HEADER} <n>', got {line!r}", number)
            order = int(tokens[1])
            if order < 1:
                raise LoopFileError("loop order must be positive", number)
            start = number
            continue
        if len(tokens) != order:
            raise LoopFileError(f"row has {len(tokens)} entries, expected {order}", number)
        try:
            rows.append([int(tk) for tk in tokens])
        except ValueError as err:
            raise LoopFileError(f"non-integer entry in {line!r}", number) from err
        if len(rows) == order:
            records.append(LoopRecord(np.array(rows, dtype=np.int64), start, pending_flags))
            rows, order, pending_flags = [], None, {}
    if order is not None:
        raise LoopFileError(f"loop starting at line {start} has {len(rows)} of {order} rows")
    if not records:
        raise LoopFileError("no loop found")
    return records


def read_text(path: str) -> str:
    """File contents, or standard input for ``-``."""
    if path == "-":
        return sys.stdin.read()
    if not exists(path):
        raise LoopFileError(f"{path} not exists!")
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def read_records(path: str) -> List[LoopRecord]:
    return parse_loops(read_text(path))


def read_loops(path: str) -> List[CayleyTable]:
    """Parse and validate every loop in ``path``; loop_core errors propagate unchanged."""
    return [validate_loop(record.table) for record in read_records(path)]


def format_flags(flags: Dict[str, bool]) -> str:
    body = " ".join(f"{key}={'yes' if value else 'no'}" for key, value in flags.items())
    return f"{COMMENT} {FLAGS_PREFIX} {body}"


def format_loop(loop: CayleyTable, flags: Optional[Dict[str, bool]] = None) -> str:
    lines = []
    if flags:
        lines.append(format_flags(flags))
    lines.append(f"{HEADER} {loop.order}")
    lines.extend(" ".join(str(v) for v in row) for row in loop.to_lists())
    return "\n".join(lines) + "\n"


def write_loops(out: TextIO, loops: List[CayleyTable],
                flags: Optional[List[Dict[str, bool]]] = None):
    for idx, loop in enumerate(loops):
        if idx:
            out.write("\n")
        out.write(format_loop(loop, flags[idx] if flags else None))


def dump_loops(path: str, loops: List[CayleyTable], flags: Optional[List[Dict[str, bool]]] = None):
    with open(path, "w", encoding="utf-8") as f:
        write_loops(f, loops, flags)
