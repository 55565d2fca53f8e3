"""Cayley tables of small standard groups and random loops, used as test and sweep fixtures."""
from itertools import permutations
from typing import Callable, Dict, List, Tuple, Union

import numpy as np

from src.loops.cayley import CayleyTable, validate_loop

SeedLike = Union[int, np.random.Generator]


def cyclic_group(n: int) -> CayleyTable:
    points = np.arange(n)
    return validate_loop((points[:, None] + points[None, :]) % n)


def direct_product(first: CayleyTable, second: CayleyTable) -> CayleyTable:
    """(a, b) is labelled a * |second| + b."""
    m = second.order
    points = np.arange(first.order * m)
    a, b = np.divmod(points, m)
    table = first.table[a[:, None], a[None, :]] * m + second.table[b[:, None], b[None, :]]
    return validate_loop(table)


def elementary_abelian(rank: int) -> CayleyTable:
    points = np.arange(2**rank)
    return validate_loop(points[:, None] ^ points[None, :])


def dihedral_group(m: int) -> CayleyTable:
    """Symmetries of the m-gon, order 2m: r^a s^f is labelled f * m + a."""
    return validate_loop([[_dihedral(x, y, m) for y in range(2 * m)] for x in range(2 * m)])


def _dihedral(x: int, y: int, m: int) -> int:
    fx, ix = divmod(x, m)
    fy, iy = divmod(y, m)
    # r^a s^f * r^b s^g = r^(a + (-1)^f b) s^(f + g)
    turn = (ix - iy) % m if fx else (ix + iy) % m
    return ((fx + fy) % 2) * m + turn


def quaternion_group() -> CayleyTable:
    """Q8 on 0..7 as +-1, +-i, +-j, +-k: element 2u + s stands for (-1)^s u, u in (1, i, j, k)."""
    units = {(0, 0): (0, 1), (0, 1): (1, 1), (0, 2): (2, 1), (0, 3): (3, 1),
             (1, 0): (1, 1), (1, 1): (0, -1), (1, 2): (3, 1), (1, 3): (2, -1),
             (2, 0): (2, 1), (2, 1): (3, -1), (2, 2): (0, -1), (2, 3): (1, 1),
             (3, 0): (3, 1), (3, 1): (2, 1), (3, 2): (1, -1), (3, 3): (0, -1)}
    table = np.zeros((8, 8), dtype=np.int64)
    for x in range(8):
        for y in range(8):
            unit, sign = units[(x // 2, y // 2)]
            negative = (x % 2 + y % 2 + (sign < 0)) % 2
            table[x, y] = 2 * unit + negative
    return validate_loop(table)


def symmetric_group(degree: int) -> CayleyTable:
    """S_degree with permutations listed lexicographically; (p q)(i) = p(q(i))."""
    perms: List[Tuple[int, ...]] = list(permutations(range(degree)))
    index = {p: idx for idx, p in enumerate(perms)}
    table = [[index[tuple(p[i] for i in q)] for q in perms] for p in perms]
    return validate_loop(table)


def random_loop(order: int, seed: SeedLike = 0) -> CayleyTable:
    """A random loop with identity 0: random-order backtracking over a reduced Latin square."""
    rng = np.random.default_rng(seed)
    grid = np.full((order, order), -1, dtype=np.int64)
    grid[0] = grid[:, 0] = np.arange(order)
    cells = [(r, c) for r in range(1, order) for c in range(1, order)]

    def fill(pos: int) -> bool:
        if pos == len(cells):
            return True
        r, c = cells[pos]
        used = set(grid[r].tolist()) | set(grid[:, c].tolist())
        for v in rng.permutation(order).tolist():
            if v not in used:
                grid[r, c] = v
                if fill(pos + 1):
                    return True
                grid[r, c] = -1
        return False

    fill(0)
    return validate_loop(grid)


def small_groups() -> Dict[str, CayleyTable]:
    """Every group of order at most 8, one table each."""
    groups: Dict[str, Callable[[], CayleyTable]] = {
        **{f"Z{n}": (lambda n=n: cyclic_group(n)) for n in range(1, 9)},
        "Z2xZ2": lambda: elementary_abelian(2),
        "Z4xZ2": lambda: direct_product(cyclic_group(4), cyclic_group(2)),
        "Z2xZ2xZ2": lambda: elementary_abelian(3),
        "S3": lambda: symmetric_group(3),
        "D4": lambda: dihedral_group(4),
        "Q8": quaternion_group,
    }
    return {name: build() for name, build in groups.items()}

