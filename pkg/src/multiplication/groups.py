import logging
from typing import List, Optional, Tuple

import numpy as np

from src.errors import InnerMismatch
from src.groups.perm_group import ENUMERATION_BOUND, PermutationGroup, point_stabilizer
from src.groups.permutation import Permutation
from src.loops.cayley import CayleyTable, inner_mapping, left_translation
from src.loops.subloops import SubloopMask

logger = logging.getLogger(__name__)


def left_multiplication_group(loop: CayleyTable,
                              enumeration_bound: int = ENUMERATION_BOUND) -> PermutationGroup:
    """Mlt(L), generated by all left translations; transitive on L."""
    translations = [left_translation(loop, x) for x in range(loop.order)]
    return PermutationGroup(translations, loop.order, enumeration_bound)


def inner_mappings(loop: CayleyTable) -> List[Permutation]:
    """All distinct nonidentity delta_{x,y}, in (x, y) order."""
    seen: List[Permutation] = []
    for x in range(loop.order):
        for y in range(loop.order):
            delta = inner_mapping(loop, x, y)
            if not delta.is_identity() and delta not in seen:
                seen.append(delta)
    return seen


def find_non_automorphic_inner(loop: CayleyTable) -> Optional[Tuple[Permutation, int, int]]:
    """First delta_{x,y} and pair (u, v) with delta(uv) != delta(u)delta(v), or None.

    None means Delta(L) lies in Aut(L), which holds in every K-loop and every group.
    """
    t = loop.table
    for delta in inner_mappings(loop):
        images = np.array(delta.images)
        bad = np.argwhere(images[t] != t[images[:, None], images[None, :]])
        if bad.size:
            return delta, int(bad[0][0]), int(bad[0][1])
    return None


def left_inner_mapping_group(loop: CayleyTable,
                             enumeration_bound: int = ENUMERATION_BOUND) -> PermutationGroup:
    """Delta(L) as the stabilizer of e in Mlt(L).

    Cross-checked against the group generated by all delta_{x,y}; a disagreement
    raises InnerMismatch.
    """
    mlt = left_multiplication_group(loop, enumeration_bound)
    stabilizer = point_stabilizer(mlt, loop.identity)
    generated = PermutationGroup(inner_mappings(loop), loop.order, enumeration_bound)
    if stabilizer != generated:
        raise InnerMismatch(
            f"stabilizer of the identity has order {stabilizer.order()} but the inner "
            f"mappings generate a group of order {generated.order()}")
    return stabilizer


def coset_preserving_subgroup(loop: CayleyTable, sub: SubloopMask,
                              mlt: Optional[PermutationGroup] = None) -> PermutationGroup:
    """{alpha in Mlt(L) : alpha(x) in Nx for all x}, by filtering the enumeration of Mlt(L)."""
    if mlt is None:
        mlt = left_multiplication_group(loop)
    t = loop.table
    right_cosets = [frozenset(int(v) for v in t[list(sub.members), x]) for x in range(loop.order)]
    members = [
        alpha for alpha in mlt.elements()
        if all(alpha(x) in right_cosets[x] for x in range(loop.order))
    ]
    return PermutationGroup(members, loop.order, mlt.enumeration_bound)
