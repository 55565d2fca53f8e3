from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from src.errors import MalformedTable, MultipleIdentities, NoIdentity, NoInverse, NotLatinSquare
from src.groups.permutation import Permutation

TableLike = Union[np.ndarray, Sequence[Sequence[int]]]
Witness = Tuple[int, ...]


class CayleyTable:
    """A finite loop on 0..n-1 given by its multiplication table.

    Build instances with ``validate_loop``; the constructor trusts its input.
    ``table[x, y]`` is the product ``x * y``.
    """

    def __init__(self, table: np.ndarray, identity: int):
        self.__table = np.array(table, dtype=np.int64)
        self.__table.setflags(write=False)
        self.__identity = int(identity)
        self.__order = int(self.__table.shape[0])
        # right_inverses[x] = r with x*r = e; left_inverses[x] = l with l*x = e
        self.__right_inverses = np.argmax(self.__table == self.__identity, axis=1)
        self.__left_inverses = np.argmax(self.__table == self.__identity, axis=0)

    @property
    def order(self) -> int:
        return self.__order

    @property
    def table(self) -> np.ndarray:
        return self.__table

    @property
    def identity(self) -> int:
        return self.__identity

    @property
    def left_inverses(self) -> np.ndarray:
        return self.__left_inverses

    @property
    def right_inverses(self) -> np.ndarray:
        return self.__right_inverses

    def mul(self, x: int, y: int) -> int:
        return int(self.__table[x, y])

    def inverse(self, x: int) -> int:
        if self.__left_inverses[x] != self.__right_inverses[x]:
            raise NoInverse(x)
        return int(self.__left_inverses[x])

    def inverses(self) -> np.ndarray:
        """Two-sided inverse of every element; raises NoInverse for the first element lacking one."""
        mismatch = np.flatnonzero(self.__left_inverses != self.__right_inverses)
        if mismatch.size:
            raise NoInverse(int(mismatch[0]))
        return self.__left_inverses

    def left_divide(self, x: int, z: int) -> int:
        """The unique y with x*y = z."""
        return int(np.flatnonzero(self.__table[x] == z)[0])

    def to_lists(self) -> List[List[int]]:
        return self.__table.tolist()

    def __eq__(self, other) -> bool:
        return isinstance(other, CayleyTable) and np.array_equal(self.__table, other.table)

    def __hash__(self) -> int:
        return hash(self.__table.tobytes())

    def __repr__(self) -> str:
        return f"CayleyTable(order={self.__order}, identity={self.__identity})"


def _first_repeat(values: np.ndarray) -> Optional[Tuple[int, int]]:
    seen: Dict[int, int] = {}
    for pos, value in enumerate(values.tolist()):
        if value in seen:
            return seen[value], pos
        seen[value] = pos
    return None


def validate_loop(table: TableLike) -> CayleyTable:
    """Check the loop axioms and detect the identity element.

    Raises:
        MalformedTable: not a square integer array with entries in 0..n-1
        NotLatinSquare: some row or column repeats a value
        NoIdentity: no two-sided identity
    """
    try:
        arr = np.asarray(table)
    except ValueError as err:
        raise MalformedTable(f"ragged table: {err}") from err
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise MalformedTable(f"expected a non-empty square table, got shape {arr.shape}")
    if arr.dtype.kind not in "iu":
        raise MalformedTable(f"table entries must be integers, got dtype {arr.dtype}")
    n = arr.shape[0]
    if arr.min() < 0 or arr.max() >= n:
        raise MalformedTable(f"table entries must lie in 0..{n - 1}")
    for row in range(n):
        repeat = _first_repeat(arr[row])
        if repeat is not None:
            raise NotLatinSquare("row", row, ((row, repeat[0]), (row, repeat[1])))
    for col in range(n):
        repeat = _first_repeat(arr[:, col])
        if repeat is not None:
            raise NotLatinSquare("column", col, ((repeat[0], col), (repeat[1], col)))
    points = np.arange(n)
    identities = [
        e for e in range(n)
        if np.array_equal(arr[e], points) and np.array_equal(arr[:, e], points)
    ]
    if not identities:
        raise NoIdentity("no element is a two-sided identity")
    if len(identities) > 1:
        raise MultipleIdentities(f"several two-sided identities {identities} in a Latin square")
    return CayleyTable(arr, identities[0])


# ========== IDENTITIES ==========
def _axes(n: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    points = np.arange(n)
    return points[:, None, None], points[None, :, None], points[None, None, :]


def _first_violation(lhs: np.ndarray, rhs: np.ndarray) -> Optional[Witness]:
    # argwhere scans in C order, so the first hit is the lexicographically smallest
    bad = np.argwhere(lhs != rhs)
    if bad.size == 0:
        return None
    return tuple(int(v) for v in bad[0])


def find_bol_violation(loop: CayleyTable) -> Optional[Witness]:
    """Smallest (x, y, z) with x(y(xz)) != (x(yx))z, or None."""
    t = loop.table
    x, y, z = _axes(loop.order)
    lhs = t[x, t[y, t[x, z]]]
    rhs = t[t[x, t[y, x]], z]
    return _first_violation(lhs, rhs)


def is_left_bol(loop: CayleyTable) -> bool:
    return find_bol_violation(loop) is None


Identity = Callable[[np.ndarray, np.ndarray, np.ndarray, np.ndarray], Tuple[np.ndarray, np.ndarray]]

# The four equivalent Moufang laws; "middle" (xy)(zx) = x((yz)x) is the default.
MOUFANG_LAWS: Dict[str, Identity] = {
    "middle": lambda t, x, y, z: (t[t[x, y], t[z, x]], t[x, t[t[y, z], x]]),
    "left": lambda t, x, y, z: (t[z, t[x, t[z, y]]], t[t[t[z, x], z], y]),
    "right": lambda t, x, y, z: (t[x, t[z, t[y, z]]], t[t[t[x, z], y], z]),
    "middle-left": lambda t, x, y, z: (t[t[z, x], t[y, z]], t[t[z, t[x, y]], z]),
}


def find_moufang_violation(loop: CayleyTable, law: str = "middle") -> Optional[Witness]:
    if law not in MOUFANG_LAWS:
        raise KeyError(f"Moufang law {law} is not supported")
    x, y, z = _axes(loop.order)
    lhs, rhs = MOUFANG_LAWS[law](loop.table, x, y, z)
    return _first_violation(lhs, rhs)


def is_moufang(loop: CayleyTable, law: str = "middle") -> bool:
    return find_moufang_violation(loop, law) is None


def find_associativity_violation(loop: CayleyTable) -> Optional[Witness]:
    t = loop.table
    x, y, z = _axes(loop.order)
    return _first_violation(t[t[x, y], z], t[x, t[y, z]])


def is_associative(loop: CayleyTable) -> bool:
    return find_associativity_violation(loop) is None


def find_aip_violation(loop: CayleyTable) -> Optional[Witness]:
    """Smallest (x, y) with (xy)^-1 != x^-1 y^-1; raises NoInverse if inverses are one-sided."""
    t = loop.table
    inv = loop.inverses()
    points = np.arange(loop.order)
    x, y = points[:, None], points[None, :]
    return _first_violation(inv[t[x, y]], t[inv[x], inv[y]])


def has_aip(loop: CayleyTable) -> bool:
    return find_aip_violation(loop) is None


# ========== TRANSLATIONS ==========
def left_translation(loop: CayleyTable, x: int) -> Permutation:
    """lambda_x : y -> xy, read off row x of the table."""
    return Permutation(tuple(int(v) for v in loop.table[x]))


def inner_mapping(loop: CayleyTable, x: int, y: int) -> Permutation:
    """delta_{x,y} = lambda_{xy}^-1 lambda_x lambda_y; always fixes the identity."""
    xy = loop.mul(x, y)
    return (left_translation(loop, xy).inverse() * left_translation(loop, x)
            * left_translation(loop, y))
