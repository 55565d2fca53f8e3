import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.datas.named_loops import cyclic_group, random_loop, symmetric_group
from src.errors import MalformedTable, MultipleIdentities, NoIdentity, NotLatinSquare
from src.loops.cayley import (MOUFANG_LAWS, find_bol_violation, find_moufang_violation, has_aip,
                              inner_mapping, is_associative, is_left_bol, is_moufang,
                              left_translation, validate_loop)

# a non-associative loop of order 5 with x * x = e for every x
NON_BOL_5 = [[0, 1, 2, 3, 4],
             [1, 0, 3, 4, 2],
             [2, 4, 0, 1, 3],
             [3, 2, 4, 0, 1],
             [4, 3, 1, 2, 0]]


def test_z3_properties():
    loop = validate_loop([[0, 1, 2], [1, 2, 0], [2, 0, 1]])
    assert loop.identity == 0
    assert is_left_bol(loop) and is_moufang(loop) and has_aip(loop)
    assert is_associative(loop)


def test_identity_need_not_be_zero():
    points = np.arange(3)
    loop = validate_loop((points[:, None] + points[None, :] + 1) % 3)
    assert loop.identity == 2
    assert loop.inverse(2) == 2
    assert loop.mul(loop.inverse(0), 0) == 2


@pytest.mark.parametrize("table, kind, index, cells", [
    ([[0, 0], [1, 1]], "row", 0, ((0, 0), (0, 1))),
    ([[0, 1], [0, 1]], "column", 0, ((0, 0), (1, 0))),
])
def test_not_latin(table, kind, index, cells):
    with pytest.raises(NotLatinSquare) as exc:
        validate_loop(table)
    assert (exc.value.kind, exc.value.index, exc.value.coordinates) == (kind, index, cells)


@pytest.mark.parametrize("table", [
    [[0, 2], [2, 0]],
    [[0, 1, 2], [1, 2, 0]],
    [[0.0, 1.0], [1.0, 0.0]],
    [],
])
def test_malformed(table):
    with pytest.raises(MalformedTable):
        validate_loop(table)


def test_no_identity():
    with pytest.raises(NoIdentity):
        validate_loop([[0, 2, 1], [2, 1, 0], [1, 0, 2]])


def test_multiple_identities_is_a_verification_error():
    assert issubclass(MultipleIdentities, RuntimeError)


def test_non_bol_witness():
    loop = validate_loop(NON_BOL_5)
    assert not is_left_bol(loop)
    x, y, z = find_bol_violation(loop)
    t = loop.table
    assert t[x, t[y, t[x, z]]] != t[t[x, t[y, x]], z]
    assert not is_moufang(loop)


def test_s3_is_moufang_without_aip():
    loop = symmetric_group(3)
    assert is_left_bol(loop) and is_moufang(loop)
    assert not has_aip(loop)


def test_unknown_moufang_law():
    with pytest.raises(KeyError):
        find_moufang_violation(cyclic_group(3), "diagonal")


def test_moufang_laws_agree_on_fixtures(all_bol_loops, groups):
    for loop in all_bol_loops + list(groups.values()):
        verdicts = {law: is_moufang(loop, law) for law in MOUFANG_LAWS}
        assert len(set(verdicts.values())) == 1, verdicts


def left_bol_by_triples(table):
    n = len(table)
    for x in range(n):
        for y in range(n):
            xyx = table[x][table[y][x]]
            for z in range(n):
                if table[x][table[y][table[x][z]]] != table[xyx][z]:
                    return False
    return True


def test_left_bol_matches_scalar_check(bol_fixtures):
    loops = [f.loop for order in range(1, 7) for f in bol_fixtures[order]]
    loops += [random_loop(order, seed) for order in range(2, 7) for seed in range(20)]
    loops.append(validate_loop(NON_BOL_5))
    verdicts = [is_left_bol(loop) for loop in loops]
    assert verdicts == [left_bol_by_triples(loop.to_lists()) for loop in loops]
    assert True in verdicts and False in verdicts


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 7), st.integers(0, 2**32 - 1))
def test_random_loops(order, seed):
    loop = random_loop(order, seed)
    assert loop.identity == 0
    t = loop.table
    assert (t[np.arange(order), loop.right_inverses] == 0).all()
    assert (t[loop.left_inverses, np.arange(order)] == 0).all()
    assert len({is_moufang(loop, law) for law in MOUFANG_LAWS}) == 1
    if is_moufang(loop):
        assert is_left_bol(loop)


def test_translations(groups):
    loop = groups["Q8"]
    for x in range(loop.order):
        assert list(left_translation(loop, x).images) == loop.table[x].tolist()
        for y in range(loop.order):
            # groups have trivial inner mappings
            assert inner_mapping(loop, x, y).is_identity()


def test_inner_mappings_fix_identity(all_bol_loops):
    loop = all_bol_loops[-1]
    for x in range(loop.order):
        for y in range(loop.order):
            assert inner_mapping(loop, x, y).fixes(loop.identity)


def test_table_is_read_only():
    loop = cyclic_group(4)
    with pytest.raises(ValueError):
        loop.table[0, 0] = 1
