from typing import Dict, List

import pytest

from src.data_generator import LoopFixture, search_bol
from src.datas.named_loops import small_groups
from src.loops.cayley import CayleyTable

FIXTURE_ORDERS = range(1, 9)


@pytest.fixture(scope="session")
def bol_fixtures() -> Dict[int, List[LoopFixture]]:
    return {order: search_bol(order, canonical_row_one=True) for order in FIXTURE_ORDERS}


@pytest.fixture(scope="session")
def all_bol_loops(bol_fixtures) -> List[CayleyTable]:
    return [f.loop for order in FIXTURE_ORDERS for f in bol_fixtures[order]]


@pytest.fixture(scope="session")
def groups() -> Dict[str, CayleyTable]:
    return small_groups()
