import logging
from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from src.errors import ElementNotInGroup
from src.groups.perm_group import ENUMERATION_BOUND
from src.groups.permutation import Permutation
from src.loops.cayley import CayleyTable, inner_mapping, left_translation
from src.multiplication.groups import (find_non_automorphic_inner, left_inner_mapping_group,
                                       left_multiplication_group)

logger = logging.getLogger(__name__)

ASSOCIATIVITY_BOUND = 128
HOMOMORPHISM_BOUND = 10**3
SPOT_CHECKS = 10**4


@dataclass(frozen=True)
class QuasidirectElement:
    point: int
    inner: Permutation


@dataclass
class QuasidirectReport:
    product_order: int
    mlt_order: int
    inner_order: int
    bijective: bool
    # the product formula is a group isomorphic to Mlt(L) exactly when Delta(L) lies in Aut(L)
    inner_automorphic: bool
    homomorphism: bool
    homomorphism_exhaustive: bool
    associative: bool
    associativity_exhaustive: bool

    @property
    def passed(self) -> bool:
        if self.inner_automorphic:
            return self.bijective and self.homomorphism and self.associative
        return self.bijective and not (self.homomorphism and self.homomorphism_exhaustive)


class QuasidirectProduct:
    """L x Delta(L) with (x, a)(y, b) = (x * a(y), delta_{x, a(y)} a b).

    Elements are indexed as ``point * |Delta| + inner_index`` with the inner
    mappings in the enumeration order of Delta(L).
    """

    def __init__(self, loop: CayleyTable, enumeration_bound: int = ENUMERATION_BOUND):
        self.__loop = loop
        self.__mlt = left_multiplication_group(loop, enumeration_bound)
        self.__inner = left_inner_mapping_group(loop, enumeration_bound)
        self.__inner_elements = self.__inner.elements()
        self.__inner_index: Dict[bytes, int] = {}
        rows = np.array([alpha.images for alpha in self.__inner_elements], dtype=np.int64)
        for idx, row in enumerate(rows):
            self.__inner_index[row.tobytes()] = idx
        self.__inner_images = rows
        n = loop.order
        self.__delta_images = np.array(
            [[inner_mapping(loop, x, z).images for z in range(n)] for x in range(n)], dtype=np.int64)

    @property
    def loop(self) -> CayleyTable:
        return self.__loop

    @property
    def order(self) -> int:
        return self.__loop.order * len(self.__inner_elements)

    @property
    def inner_order(self) -> int:
        return len(self.__inner_elements)

    def element(self, point: int, inner: Permutation) -> QuasidirectElement:
        if not 0 <= point < self.__loop.order:
            raise ValueError(f"point {point} outside 0..{self.__loop.order - 1}")
        if inner not in self.__inner:
            raise ElementNotInGroup(f"{inner} is not a left inner mapping")
        return QuasidirectElement(point, inner)

    def identity(self) -> QuasidirectElement:
        return QuasidirectElement(self.__loop.identity, self.__inner.identity())

    def mul(self, p: QuasidirectElement, q: QuasidirectElement) -> QuasidirectElement:
        z = p.inner(q.point)
        delta = inner_mapping(self.__loop, p.point, z)
        return QuasidirectElement(self.__loop.mul(p.point, z), delta * p.inner * q.inner)

    def to_mlt(self, p: QuasidirectElement) -> Permutation:
        """(x, a) -> lambda_x a."""
        return left_translation(self.__loop, p.point) * p.inner

    # ========== ARRAY FORM ==========
    def _split(self, idx: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        return np.divmod(idx, len(self.__inner_elements))

    def _images(self, idx: np.ndarray) -> np.ndarray:
        """Image in Mlt(L), as rows of point images, of the indexed elements."""
        points, inner = self._split(idx)
        return self.__loop.table[points[:, None], self.__inner_images[inner]]

    def _products(self, left: np.ndarray, right: np.ndarray) -> np.ndarray:
        """Index of left[k] * right[k] for every k."""
        t = self.__loop.table
        x, i = self._split(left)
        y, j = self._split(right)
        z = self.__inner_images[i, y]
        points = t[x, z]
        composed = np.take_along_axis(self.__inner_images[i], self.__inner_images[j], axis=1)
        inner_rows = self.__delta_images[x[:, None], z[:, None], composed]
        inner = np.fromiter((self.__inner_index[row.tobytes()] for row in inner_rows),
                            dtype=np.int64, count=len(inner_rows))
        return points * len(self.__inner_elements) + inner

    # ========== VERIFICATION ==========
    def verify(self,
               associativity_bound: int = ASSOCIATIVITY_BOUND,
               homomorphism_bound: int = HOMOMORPHISM_BOUND,
               spot_checks: int = SPOT_CHECKS,
               seed: int = 0) -> QuasidirectReport:
        """Check that (x, a) -> lambda_x a is a bijection onto Mlt(L), and a homomorphism
        exactly when every left inner mapping is an automorphism.

        The homomorphism property is checked on all pairs when the product has at
        most ``homomorphism_bound`` elements and associativity on all triples up to
        ``associativity_bound``; above the bounds ``spot_checks`` random pairs or
        triples drawn with ``seed`` are used.
        """
        size = self.order
        all_idx = np.arange(size)
        images = self._images(all_idx)
        mlt_elements = {alpha.images for alpha in self.__mlt.elements()}
        image_keys = {tuple(row) for row in images.tolist()}
        bijective = (len(image_keys) == size == self.__mlt.order()
                     and image_keys <= mlt_elements)

        rng = np.random.default_rng(seed)
        homomorphism_exhaustive = size <= homomorphism_bound
        homomorphism = True
        if homomorphism_exhaustive:
            table = np.empty((size, size), dtype=np.int64)
            for p in all_idx:
                left = np.full(size, p)
                table[p] = self._products(left, all_idx)
                composed = images[p][images]
                if not np.array_equal(images[table[p]], composed):
                    homomorphism = False
        else:
            left, right = rng.integers(size, size=(2, spot_checks))
            composed = np.take_along_axis(images[left], images[right], axis=1)
            homomorphism = bool(np.array_equal(images[self._products(left, right)], composed))

        associativity_exhaustive = size <= associativity_bound
        if associativity_exhaustive:
            if not homomorphism_exhaustive:
                table = np.array([self._products(np.full(size, p), all_idx) for p in all_idx])
            associative = bool(np.array_equal(table[table[:, :, None], all_idx[None, None, :]],
                                              table[all_idx[:, None, None], table[None, :, :]]))
        else:
            a, b, c = rng.integers(size, size=(3, spot_checks))
            associative = bool(np.array_equal(self._products(self._products(a, b), c),
                                              self._products(a, self._products(b, c))))

        inner_automorphic = find_non_automorphic_inner(self.__loop) is None
        report = QuasidirectReport(product_order=size,
                                   mlt_order=self.__mlt.order(),
                                   inner_order=self.inner_order,
                                   bijective=bijective,
                                   inner_automorphic=inner_automorphic,
                                   homomorphism=homomorphism,
                                   homomorphism_exhaustive=homomorphism_exhaustive,
                                   associative=associative,
                                   associativity_exhaustive=associativity_exhaustive)
        if not report.passed:
            logger.warning("quasidirect product check failed: %s", report)
        return report


def quasidirect_product(loop: CayleyTable,
                        enumeration_bound: int = ENUMERATION_BOUND,
                        associativity_bound: int = ASSOCIATIVITY_BOUND,
                        homomorphism_bound: int = HOMOMORPHISM_BOUND,
                        spot_checks: int = SPOT_CHECKS,
                        seed: int = 0) -> Tuple[QuasidirectProduct, QuasidirectReport]:
    product = QuasidirectProduct(loop, enumeration_bound)
    report = product.verify(associativity_bound, homomorphism_bound, spot_checks, seed)
    return product, report
