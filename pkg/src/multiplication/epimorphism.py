import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple, Union

from src.errors import NotAHomomorphism, VerificationError
from src.groups.perm_group import ENUMERATION_BOUND, PermutationGroup
from src.groups.permutation import Permutation
from src.loops.cayley import CayleyTable, left_translation
from src.loops.normality import LoopHom, factor_loop, find_hom_violation
from src.loops.subloops import SubloopMask
from src.multiplication.groups import coset_preserving_subgroup, left_multiplication_group

logger = logging.getLogger(__name__)

CROSS_CHECK_BOUND = 10**4


@dataclass
class InducedEpimorphism:
    """theta_* : Mlt(L) -> Mlt(L'), alpha -> (theta(x) -> theta(alpha(x)))."""
    projection: LoopHom
    source_group: PermutationGroup
    target_group: PermutationGroup
    images: Dict[Permutation, Permutation]
    kernel: PermutationGroup
    kernel_elements: Tuple[Permutation, ...]

    def __call__(self, alpha: Permutation) -> Permutation:
        return self.images[alpha]

    @property
    def target(self) -> CayleyTable:
        return self.projection.target


def _pushforward(alpha: Permutation, projection: LoopHom) -> Permutation:
    images = [-1] * projection.target.order
    for x in range(projection.source.order):
        image = projection(alpha(x))
        slot = projection(x)
        if images[slot] < 0:
            images[slot] = image
        elif images[slot] != image:
            raise VerificationError(
                f"{alpha} does not induce a map on the factor: class {slot} goes to "
                f"{images[slot]} and {image}")
    return Permutation(tuple(images))


def induced_epimorphism(loop: CayleyTable, kernel_or_hom: Union[SubloopMask, LoopHom],
                        enumeration_bound: int = ENUMERATION_BOUND) -> InducedEpimorphism:
    """Push Mlt(L) through a surjective loop homomorphism.

    ``kernel_or_hom`` is either a normal subloop N, in which case the canonical
    projection L -> L/N is used, or any surjective homomorphism out of ``loop``.
    The image of every element of Mlt(L) is computed pointwise, which checks
    well-definedness; the map is then checked against lambda_a -> lambda_theta(a),
    multiplicativity on generators and surjectivity.

    Raises:
        NotNormal: N is not normal
        NotAHomomorphism: the given map is not multiplicative
        OrderBoundExceeded: Mlt(L) is too large to enumerate
    """
    if isinstance(kernel_or_hom, LoopHom):
        projection = kernel_or_hom
        witness = find_hom_violation(projection)
        if witness is not None:
            raise NotAHomomorphism(witness)
        if projection.source != loop:
            raise ValueError("homomorphism does not start at the given loop")
        if not projection.is_surjective():
            raise ValueError("only surjective homomorphisms induce epimorphisms")
    else:
        _, projection = factor_loop(loop, kernel_or_hom)
    target = projection.target

    source_group = left_multiplication_group(loop, enumeration_bound)
    target_group = left_multiplication_group(target, enumeration_bound)
    images = {alpha: _pushforward(alpha, projection) for alpha in source_group.elements()}

    for a in range(loop.order):
        expected = left_translation(target, projection(a))
        if images[left_translation(loop, a)] != expected:
            raise VerificationError(f"lambda_{a} is not sent to lambda_{projection(a)}")
    for gen in source_group.generators:
        for alpha in source_group.elements():
            if images[gen * alpha] != images[gen] * images[alpha]:
                raise VerificationError(f"induced map is not multiplicative at ({gen}, {alpha})")
    image_set = set(images.values())
    if len(image_set) != target_group.order() or not all(img in target_group for img in image_set):
        raise VerificationError(
            f"induced map hits {len(image_set)} of {target_group.order()} elements of Mlt(L')")

    kernel_elements = tuple(alpha for alpha, img in images.items() if img.is_identity())
    kernel = PermutationGroup(kernel_elements, loop.order, enumeration_bound)
    logger.debug("induced epimorphism %d -> %d with kernel of order %d",
                 source_group.order(), target_group.order(), len(kernel_elements))
    return InducedEpimorphism(projection=projection,
                              source_group=source_group,
                              target_group=target_group,
                              images=images,
                              kernel=kernel,
                              kernel_elements=kernel_elements)


@dataclass
class FactorCorrespondence:
    loop_order: int
    subloop_order: int
    mlt_order: int
    factor_mlt_order: int
    coset_group_order: int
    # None when Mlt(L) is above the cross-check bound and the filter was skipped
    kernel_matches: Optional[bool]
    coset_group_normal: bool
    orders_multiply: bool
    properness_matches: bool

    @property
    def passed(self) -> bool:
        return (self.kernel_matches is not False and self.coset_group_normal
                and self.orders_multiply and self.properness_matches)

    def to_dict(self) -> Dict[str, Union[int, bool, None]]:
        return {
            "loop_order": self.loop_order,
            "subloop_order": self.subloop_order,
            "mlt_order": self.mlt_order,
            "factor_mlt_order": self.factor_mlt_order,
            "coset_group_order": self.coset_group_order,
            "kernel_matches": self.kernel_matches,
            "coset_group_normal": self.coset_group_normal,
            "orders_multiply": self.orders_multiply,
            "properness_matches": self.properness_matches,
            "pass": self.passed,
        }


def check_factor_correspondence(loop: CayleyTable, sub: SubloopMask,
                                enumeration_bound: int = ENUMERATION_BOUND,
                                cross_check_bound: int = CROSS_CHECK_BOUND) -> FactorCorrespondence:
    """Compare Mlt(L/N) with Mlt(L) and the subgroup L(N) of coset-preserving elements.

    L(N) is taken as the kernel of the induced epimorphism and, when
    |Mlt(L)| <= ``cross_check_bound``, also computed by filtering Mlt(L) directly.
    """
    epi = induced_epimorphism(loop, sub, enumeration_bound)
    mlt = epi.source_group
    mlt_order = mlt.order()
    coset_group = epi.kernel
    kernel_matches: Optional[bool] = None
    if mlt_order <= cross_check_bound:
        filtered = coset_preserving_subgroup(loop, sub, mlt)
        kernel_matches = set(filtered.elements()) == set(epi.kernel_elements)
    else:
        logger.info("skipping the filter cross-check: |Mlt| = %d > %d", mlt_order, cross_check_bound)
    coset_group_order = coset_group.order()
    report = FactorCorrespondence(
        loop_order=loop.order,
        subloop_order=sub.order,
        mlt_order=mlt_order,
        factor_mlt_order=epi.target_group.order(),
        coset_group_order=coset_group_order,
        kernel_matches=kernel_matches,
        coset_group_normal=coset_group.is_normal_in(mlt),
        orders_multiply=epi.target_group.order() * coset_group_order == mlt_order,
        properness_matches=(sub.order < loop.order) == (coset_group_order < mlt_order),
    )
    if not report.passed:
        logger.warning("factor correspondence failed for N = %s: %s", sub.members, report.to_dict())
    return report
