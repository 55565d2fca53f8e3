from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple

import numpy as np

from src.errors import NotASubloop, OrderBoundExceeded
from src.loops.cayley import CayleyTable

SUBLOOP_ORDER_BOUND = 16


@dataclass(frozen=True)
class SubloopMask:
    parent: CayleyTable
    members: Tuple[int, ...]

    @staticmethod
    def of(parent: CayleyTable, members: Iterable[int]) -> "SubloopMask":
        """Validated constructor: members must contain e and be closed under the product."""
        members = tuple(sorted(set(int(m) for m in members)))
        if any(not 0 <= m < parent.order for m in members):
            raise NotASubloop(f"members {members} outside 0..{parent.order - 1}")
        subloop = SubloopMask(parent, members)
        if parent.identity not in members:
            raise NotASubloop(f"{members} does not contain the identity {parent.identity}")
        if not subloop.is_closed():
            raise NotASubloop(f"{members} is not closed under the product")
        return subloop

    @staticmethod
    def from_mask(parent: CayleyTable, mask: np.ndarray) -> "SubloopMask":
        return SubloopMask(parent, tuple(int(m) for m in np.flatnonzero(mask)))

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def mask(self) -> np.ndarray:
        mask = np.zeros(self.parent.order, dtype=bool)
        mask[list(self.members)] = True
        return mask

    @property
    def bitmask(self) -> int:
        return sum(1 << m for m in self.members)

    def is_closed(self) -> bool:
        # a finite product-closed subset of a loop is a subloop: translations
        # restricted to it are injective, hence onto, so divisions stay inside
        idx = np.array(self.members)
        products = self.parent.table[np.ix_(idx, idx)]
        return bool(self.mask[products].all())

    def is_trivial(self) -> bool:
        return self.order == 1

    def is_whole(self) -> bool:
        return self.order == self.parent.order

    def is_proper_nontrivial(self) -> bool:
        return 1 < self.order < self.parent.order

    def __contains__(self, element: int) -> bool:
        return element in self.members


def _left_powers(loop: CayleyTable, x: int) -> List[int]:
    # x, x*x, x*(x*x), ... until the sequence repeats
    powers = [x]
    current = x
    while True:
        current = loop.mul(x, current)
        if current in powers:
            return powers
        powers.append(current)


def subloop_generated(loop: CayleyTable, generators: Iterable[int]) -> SubloopMask:
    """Smallest subloop containing ``generators``.

    Seeds with e, the left-bracketed powers of each generator and their one-sided
    inverses, then closes under the product.
    """
    mask = np.zeros(loop.order, dtype=bool)
    mask[loop.identity] = True
    for x in generators:
        if not 0 <= x < loop.order:
            raise ValueError(f"element {x} outside 0..{loop.order - 1}")
        mask[_left_powers(loop, x)] = True
    while True:
        idx = np.flatnonzero(mask)
        grown = mask.copy()
        grown[loop.table[np.ix_(idx, idx)].ravel()] = True
        grown[loop.left_inverses[idx]] = True
        grown[loop.right_inverses[idx]] = True
        if np.array_equal(grown, mask):
            return SubloopMask.from_mask(loop, mask)
        mask = grown


def all_subloops(loop: CayleyTable, max_order: int = SUBLOOP_ORDER_BOUND) -> List[SubloopMask]:
    """Every subloop, ordered by (order, members).

    Every subloop is the join of the cyclic subloops of its elements, so joins of
    already-found subloops with single-generator subloops reach all of them.
    """
    if loop.order > max_order:
        raise OrderBoundExceeded(loop.order, max_order, "subloop enumeration")
    cyclic: Dict[int, SubloopMask] = {}
    for x in range(loop.order):
        sub = subloop_generated(loop, [x])
        cyclic.setdefault(sub.bitmask, sub)
    trivial = subloop_generated(loop, [])
    found: Dict[int, SubloopMask] = {trivial.bitmask: trivial}
    queue = [trivial]
    for current in queue:
        for sub in cyclic.values():
            joined = subloop_generated(loop, current.members + sub.members)
            if joined.bitmask not in found:
                found[joined.bitmask] = joined
                queue.append(joined)
    return sorted(found.values(), key=lambda s: (s.order, s.members))
