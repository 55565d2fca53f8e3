import json
import logging
from dataclasses import dataclass, field
from typing import List, Optional

from src.errors import OrderBoundExceeded
from src.groups.perm_group import ENUMERATION_BOUND, is_simple_group
from src.loops.cayley import CayleyTable
from src.loops.normality import normal_subloops
from src.loops.subloops import SUBLOOP_ORDER_BOUND
from src.multiplication.groups import left_multiplication_group
from src.utils import VERSION

logger = logging.getLogger(__name__)

MLT_SIMPLICITY = "mlt-simplicity"
EXHAUSTIVE = "exhaustive-normal-subloops"
CERTIFICATE_KEYS = ("loop_order", "mlt_order", "mlt_simple", "loop_simple", "method", "witnesses",
                    "version")


@dataclass
class Certificate:
    loop_order: int
    mlt_order: int
    mlt_simple: Optional[bool]
    loop_simple: bool
    method: str
    witnesses: List[List[int]] = field(default_factory=list)
    version: str = VERSION
    # kept in memory only, never serialized
    note: Optional[str] = field(default=None, compare=False)

    def to_json(self) -> str:
        return json.dumps({key: getattr(self, key) for key in CERTIFICATE_KEYS})

    @staticmethod
    def from_json(text: str) -> "Certificate":
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as err:
            raise ValueError(f"certificate is not valid JSON: {err}") from err
        if not isinstance(raw, dict) or tuple(raw) != CERTIFICATE_KEYS:
            raise ValueError(f"certificate keys must be exactly {CERTIFICATE_KEYS}")
        if raw["method"] not in (MLT_SIMPLICITY, EXHAUSTIVE):
            raise ValueError(f"unknown certification method {raw['method']}")
        return Certificate(**raw)


def certify_simplicity(loop: CayleyTable,
                       enumeration_bound: int = ENUMERATION_BOUND,
                       subloop_bound: int = SUBLOOP_ORDER_BOUND) -> Certificate:
    """Decide simplicity of ``loop``, through Mlt(L) when possible.

    A simple Mlt(L) proves the loop simple. Otherwise, including when Mlt(L) is
    too large to decide (``mlt_simple`` is then None), every normal subloop is
    enumerated and the proper nontrivial ones are attached as witnesses.

    Raises:
        ValueError: the loop has order 1
        OrderBoundExceeded: the loop is too large for the fallback enumeration
    """
    if loop.order < 2:
        raise ValueError("simplicity is only certified for loops of order at least 2")
    mlt = left_multiplication_group(loop, enumeration_bound)
    mlt_order = mlt.order()
    mlt_simple: Optional[bool]
    try:
        mlt_simple, _ = is_simple_group(mlt)
    except OrderBoundExceeded as err:
        logger.info("Mlt simplicity undecided: %s", err)
        mlt_simple = None
    if mlt_simple:
        return Certificate(loop_order=loop.order, mlt_order=mlt_order, mlt_simple=True,
                           loop_simple=True, method=MLT_SIMPLICITY)

    try:
        subs = normal_subloops(loop, subloop_bound)
    except OrderBoundExceeded as err:
        raise OrderBoundExceeded(err.order, err.bound, EXHAUSTIVE) from err
    witnesses = sorted(list(sub.members) for sub in subs if sub.is_proper_nontrivial())
    certificate = Certificate(loop_order=loop.order, mlt_order=mlt_order, mlt_simple=mlt_simple,
                              loop_simple=not witnesses, method=EXHAUSTIVE, witnesses=witnesses)
    if certificate.loop_simple and mlt_simple is False:
        certificate.note = "loop is simple although Mlt(L) is not; the converse is not implied"
        logger.info(certificate.note)
    elif witnesses:
        logger.debug("loop of order %d has %d proper normal subloops", loop.order, len(witnesses))
    return certificate
