import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
from sympy import isprime

from src.errors import DegreeMismatch, ElementNotInGroup, OrderBoundExceeded
from src.groups.permutation import Permutation

logger = logging.getLogger(__name__)

ENUMERATION_BOUND = 10**6


def schreier_tree(root: int, generators: Sequence[Permutation],
                  degree: int) -> Dict[int, Permutation]:
    """Orbit of ``root`` with a transversal: point -> u such that u(root) == point.

    The tree is the breadth-first tree of the Schreier graph (edge beta -> s(beta)
    labelled by the first generator s realising it), so the result only depends
    on the order of ``generators``.
    """
    graph = nx.DiGraph()
    graph.add_node(root)
    for point in range(degree):
        for idx, gen in enumerate(generators):
            image = gen(point)
            if not graph.has_edge(point, image):
                graph.add_edge(point, image, generator=idx)
    transversal = {root: Permutation.identity(degree)}
    for parent, child in nx.bfs_edges(graph, root):
        gen = generators[graph.edges[parent, child]["generator"]]
        transversal[child] = gen * transversal[parent]
    return transversal


@dataclass
class StabilizerLevel:
    base_point: int
    generators: List[Permutation]
    transversal: Dict[int, Permutation]
    inverses: Dict[int, Permutation]

    @staticmethod
    def build(base_point: int, generators: List[Permutation], degree: int) -> "StabilizerLevel":
        transversal = schreier_tree(base_point, generators, degree)
        return StabilizerLevel(base_point=base_point,
                               generators=generators,
                               transversal=transversal,
                               inverses={pt: u.inverse() for pt, u in transversal.items()})

    @property
    def orbit(self) -> List[int]:
        return list(self.transversal)


class PermutationGroup:
    r"""Permutation group on {0..degree-1} with a stabilizer chain.

    The chain uses the full base 0, 1, ..., degree-1; levels whose orbit is a
    single point are kept but carry no information, so the effective base is
    the lexicographically first sequence of points with nontrivial orbit.
    Construction is deterministic Schreier-Sims: every Schreier generator of
    every level is sifted through the deeper levels until all sift to the
    identity.

    Args:
        generators (Sequence[Permutation]): generators, all of degree ``degree``
        degree (int): number of points acted on
        enumeration_bound (int): largest order for which ``elements()`` is allowed
    """

    def __init__(self, generators: Sequence[Permutation], degree: int,
                 enumeration_bound: int = ENUMERATION_BOUND):
        for gen in generators:
            if gen.degree != degree:
                raise DegreeMismatch(
                    f"generator {gen} has degree {gen.degree}, expected {degree}")
        self.__degree = degree
        self.__enumeration_bound = enumeration_bound
        self.__generators: List[Permutation] = []
        self.__strong_generators: List[Permutation] = []
        self.__elements: Optional[Tuple[Permutation, ...]] = None
        self.__levels: List[StabilizerLevel] = [
            StabilizerLevel.build(pt, [], degree) for pt in range(degree)
        ]
        for gen in generators:
            self._adjoin(gen)

    # ========== CONSTRUCTION ==========
    def _adjoin(self, perm: Permutation) -> bool:
        """Add a generator during construction; returns False if it was already a member.

        Invariant between calls: every level of the chain is complete. A residue
        stopping at level k only changes levels 0..k, so the rescan restarts at k.
        """
        if perm.is_identity() or perm in self.__generators:
            return False
        self.__generators.append(perm)
        self.__elements = None
        residue, depth = self.sift(perm)
        if residue.is_identity():
            return False
        while True:
            self.__strong_generators.append(residue)
            self.__rebuild_levels(depth)
            found = self.__find_schreier_residue(depth)
            if found is None:
                return True
            residue, depth = found

    def __rebuild_levels(self, upto: int):
        for point in range(upto + 1):
            gens = [
                s for s in self.__strong_generators
                if all(s.fixes(b) for b in range(point))
            ]
            self.__levels[point] = StabilizerLevel.build(point, gens, self.__degree)

    def __find_schreier_residue(self, start: int) -> Optional[Tuple[Permutation, int]]:
        for depth in range(start, -1, -1):
            level = self.__levels[depth]
            for beta, u_beta in level.transversal.items():
                for gen in level.generators:
                    schreier_gen = level.inverses[gen(beta)] * gen * u_beta
                    residue, stop = self.sift(schreier_gen, start=depth + 1)
                    if not residue.is_identity():
                        return residue, stop
        return None

    # ========== QUERIES ==========
    @property
    def degree(self) -> int:
        return self.__degree

    @property
    def generators(self) -> List[Permutation]:
        return list(self.__generators)

    @property
    def strong_generators(self) -> List[Permutation]:
        return list(self.__strong_generators)

    @property
    def enumeration_bound(self) -> int:
        return self.__enumeration_bound

    @property
    def base(self) -> List[int]:
        return [lvl.base_point for lvl in self.__levels if len(lvl.transversal) > 1]

    @property
    def levels(self) -> List[StabilizerLevel]:
        return list(self.__levels)

    def identity(self) -> Permutation:
        return Permutation.identity(self.__degree)

    def sift(self, perm: Permutation, start: int = 0) -> Tuple[Permutation, int]:
        """Strip ``perm`` through the chain from level ``start``.

        Returns the residue and the level at which stripping stopped.
        """
        for depth in range(start, len(self.__levels)):
            level = self.__levels[depth]
            image = perm(level.base_point)
            if image not in level.transversal:
                return perm, depth
            perm = level.inverses[image] * perm
        return perm, len(self.__levels)

    def order(self) -> int:
        result = 1
        for level in self.__levels:
            result *= len(level.transversal)
        return result

    def contains(self, perm: Permutation) -> bool:
        if perm.degree != self.__degree:
            raise DegreeMismatch(
                f"permutation of degree {perm.degree} tested against a group of degree {self.__degree}")
        residue, _ = self.sift(perm)
        return residue.is_identity()

    def __contains__(self, perm: Permutation) -> bool:
        return self.contains(perm)

    def is_trivial(self) -> bool:
        return not self.__strong_generators

    def is_abelian(self) -> bool:
        gens = self.__generators
        return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1:])

    def orbit(self, point: int) -> List[int]:
        return list(schreier_tree(point, self.__generators, self.__degree))

    def is_transitive(self) -> bool:
        return self.__degree == 0 or len(self.orbit(0)) == self.__degree

    def is_subgroup_of(self, other: "PermutationGroup") -> bool:
        return all(other.contains(gen) for gen in self.__generators)

    def is_normal_in(self, other: "PermutationGroup") -> bool:
        if not self.is_subgroup_of(other):
            return False
        return all(
            self.contains(w.conjugate(g))
            for g in other.generators for w in self.__generators)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermutationGroup):
            return False
        return (self.__degree == other.degree and self.order() == other.order()
                and other.is_subgroup_of(self))

    __hash__ = None  # type: ignore

    def __repr__(self) -> str:
        return f"PermutationGroup(degree={self.__degree}, order={self.order()})"

    # ========== ENUMERATION ==========
    def elements(self) -> Tuple[Permutation, ...]:
        """All elements in breadth-first order from the identity (left multiplication by generators)."""
        if self.__elements is None:
            order = self.order()
            if order > self.__enumeration_bound:
                raise OrderBoundExceeded(order, self.__enumeration_bound, "enumeration")
            identity = self.identity()
            seen = {identity}
            queue = [identity]
            for current in queue:
                for gen in self.__generators:
                    product = gen * current
                    if product not in seen:
                        seen.add(product)
                        queue.append(product)
            self.__elements = tuple(queue)
        return self.__elements

    def conjugacy_classes(self) -> Iterator[Tuple[Permutation, List[Permutation]]]:
        """Yield (representative, class) with representatives in enumeration order."""
        seen = set()
        for element in self.elements():
            if element in seen:
                continue
            klass = [element]
            seen.add(element)
            for current in klass:
                for gen in self.__generators:
                    conj = current.conjugate(gen)
                    if conj not in seen:
                        seen.add(conj)
                        klass.append(conj)
            yield element, klass


def group_from_generators(gens: Sequence[Permutation], degree: int,
                          enumeration_bound: int = ENUMERATION_BOUND) -> PermutationGroup:
    return PermutationGroup(gens, degree, enumeration_bound)


def order(group: PermutationGroup) -> int:
    return group.order()


def contains(group: PermutationGroup, perm: Permutation) -> bool:
    return group.contains(perm)


def point_stabilizer(group: PermutationGroup, point: int) -> PermutationGroup:
    """Stabilizer of ``point``, generated by the Schreier generators of its orbit."""
    if not 0 <= point < group.degree:
        raise ValueError(f"point {point} outside 0..{group.degree - 1}")
    gens = group.generators
    transversal = schreier_tree(point, gens, group.degree)
    schreier_gens: List[Permutation] = []
    for beta, u_beta in transversal.items():
        for gen in gens:
            candidate = transversal[gen(beta)].inverse() * gen * u_beta
            if not candidate.is_identity() and candidate not in schreier_gens:
                schreier_gens.append(candidate)
    return PermutationGroup(schreier_gens, group.degree, group.enumeration_bound)


def normal_closure(group: PermutationGroup, subset: Sequence[Permutation]) -> PermutationGroup:
    """Smallest normal subgroup of ``group`` containing ``subset``."""
    for perm in subset:
        if not group.contains(perm):
            raise ElementNotInGroup(f"{perm} is not an element of {group}")
    closure = PermutationGroup(subset, group.degree, group.enumeration_bound)
    changed = True
    while changed:
        changed = False
        for gen in group.generators:
            for member in closure.generators:
                conj = member.conjugate(gen)
                if not closure.contains(conj):
                    closure._adjoin(conj)
                    changed = True
    return closure


def is_simple_group(group: PermutationGroup) -> Tuple[bool, Optional[PermutationGroup]]:
    """Decide simplicity by normal closures of conjugacy class representatives.

    Returns ``(True, None)`` or ``(False, W)`` with W a proper nontrivial normal
    subgroup, namely the closure of the first element in enumeration order whose
    normal closure is proper.
    """
    group_order = group.order()
    if group_order < 2:
        raise ValueError("simplicity is not defined for the trivial group")
    if group_order > group.enumeration_bound:
        raise OrderBoundExceeded(group_order, group.enumeration_bound, "is_simple_group")
    if isprime(group_order):
        return True, None
    for rep, _ in group.conjugacy_classes():
        if rep.is_identity():
            continue
        closure = normal_closure(group, [rep])
        if closure.order() < group_order:
            logger.debug("normal closure of %s has order %d < %d", rep, closure.order(), group_order)
            return False, closure
    return True, None
