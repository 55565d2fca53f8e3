from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from src.errors import NotAHomomorphism, NotASubloop, NotNormal
from src.loops.cayley import CayleyTable, validate_loop
from src.loops.subloops import SUBLOOP_ORDER_BOUND, SubloopMask, all_subloops


@dataclass(frozen=True)
class LoopHom:
    source: CayleyTable
    target: CayleyTable
    mapping: Tuple[int, ...]

    def __post_init__(self):
        if len(self.mapping) != self.source.order:
            raise ValueError(
                f"map has {len(self.mapping)} entries for a source of order {self.source.order}")
        if any(not 0 <= v < self.target.order for v in self.mapping):
            raise ValueError(f"map values must lie in 0..{self.target.order - 1}")

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def is_surjective(self) -> bool:
        return len(set(self.mapping)) == self.target.order


def find_hom_violation(hom: LoopHom) -> Optional[Tuple[int, int]]:
    """Smallest pair (x, y) with h(xy) != h(x)h(y), or None."""
    mapping = np.array(hom.mapping)
    lhs = mapping[hom.source.table]
    rhs = hom.target.table[mapping[:, None], mapping[None, :]]
    bad = np.argwhere(lhs != rhs)
    if bad.size == 0:
        return None
    return int(bad[0][0]), int(bad[0][1])


def hom_kernel(hom: LoopHom) -> SubloopMask:
    """{x : h(x) = e}; a normal subloop of the source."""
    witness = find_hom_violation(hom)
    if witness is not None:
        raise NotAHomomorphism(witness)
    mapping = np.array(hom.mapping)
    return SubloopMask.from_mask(hom.source, mapping == hom.target.identity)


def _check_subloop(loop: CayleyTable, sub: SubloopMask):
    if sub.parent != loop:
        raise NotASubloop("subloop belongs to a different loop")
    if loop.identity not in sub.members or not sub.is_closed():
        raise NotASubloop(f"{sub.members} is not a subloop")


def find_normality_violation(loop: CayleyTable, sub: SubloopMask) -> Optional[Tuple[int, int]]:
    """Smallest (a, b) for which (ab)N, a(bN) and (aN)b differ, or None."""
    _check_subloop(loop, sub)
    t = loop.table
    points = np.arange(loop.order)
    a, b = points[:, None, None], points[None, :, None]
    k = np.array(sub.members)[None, None, :]
    # each coset has exactly |N| distinct elements, so sorted rows compare sets
    ab_n = np.sort(t[t[a, b], k], axis=2)
    a_bn = np.sort(t[a, t[b, k]], axis=2)
    an_b = np.sort(t[t[a, k], b], axis=2)
    bad = np.argwhere(((ab_n != a_bn) | (ab_n != an_b)).any(axis=2))
    if bad.size == 0:
        return None
    return int(bad[0][0]), int(bad[0][1])


def is_normal_subloop(loop: CayleyTable, sub: SubloopMask) -> bool:
    return find_normality_violation(loop, sub) is None


def factor_loop(loop: CayleyTable, sub: SubloopMask) -> Tuple[CayleyTable, LoopHom]:
    """L/N on coset labels with the canonical epimorphism.

    Cosets xN are labelled in order of their smallest element.
    """
    witness = find_normality_violation(loop, sub)
    if witness is not None:
        raise NotNormal(f"{sub.members} is not normal", witness)
    t = loop.table
    k = np.array(sub.members)
    labels = np.full(loop.order, -1, dtype=np.int64)
    reps: List[int] = []
    for x in range(loop.order):
        if labels[x] < 0:
            labels[t[x, k]] = len(reps)
            reps.append(x)
    rep_arr = np.array(reps)
    quotient = labels[t[np.ix_(rep_arr, rep_arr)]]
    # well-definedness: label(xy) depends only on label(x), label(y)
    if not np.array_equal(labels[t], quotient[labels[:, None], labels[None, :]]):
        raise NotNormal(f"coset product of {sub.members} is not well defined")
    factor = validate_loop(quotient)
    return factor, LoopHom(loop, factor, tuple(int(v) for v in labels))


def normal_subloops(loop: CayleyTable, max_order: int = SUBLOOP_ORDER_BOUND) -> List[SubloopMask]:
    """All normal subloops including {e} and L."""
    return [sub for sub in all_subloops(loop, max_order) if is_normal_subloop(loop, sub)]
