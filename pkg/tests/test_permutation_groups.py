import pytest
from hypothesis import given, settings, strategies as st
from sympy.combinatorics import Permutation as SympyPermutation
from sympy.combinatorics import PermutationGroup as SympyGroup

from src.errors import DegreeMismatch, ElementNotInGroup, OrderBoundExceeded
from src.groups.perm_group import (PermutationGroup, group_from_generators, is_simple_group,
                                   normal_closure, point_stabilizer)
from src.groups.permutation import Permutation


def cycles(degree, text):
    return Permutation.parse(text, degree)


def symmetric(degree):
    return group_from_generators([cycles(degree, "(0 1)"),
                                  Permutation.from_cycles(degree, list(range(degree)))], degree)


def alternating(degree):
    return group_from_generators([cycles(degree, "(0 1 2)"),
                                  Permutation.from_cycles(degree, list(range(1, degree)))
                                  if degree % 2 == 0 else
                                  Permutation.from_cycles(degree, list(range(degree)))], degree)


permutations_6 = st.permutations(list(range(6))).map(lambda images: Permutation(tuple(images)))


def test_parse_and_format():
    p = cycles(5, "(0 1 2)(3 4)")
    assert p.images == (1, 2, 0, 4, 3)
    assert str(p) == "(0 1 2)(3 4)"
    assert str(Permutation.identity(3)) == "()"
    assert Permutation.parse(str(p), 5) == p


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        Permutation.parse("0 1 2", 3)


def test_not_a_permutation():
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))


def test_product_acts_on_the_left():
    p = cycles(3, "(0 1)")
    q = cycles(3, "(1 2)")
    assert (p * q)(1) == p(q(1)) == 2
    assert (p * q)(0) == p(q(0)) == 1
    assert (p * q) * (p * q).inverse() == Permutation.identity(3)


def test_known_orders():
    assert symmetric(5).order() == 120
    assert alternating(5).order() == 60
    assert alternating(4).order() == 12
    assert group_from_generators([], 4).order() == 1


@settings(max_examples=40, deadline=None)
@given(st.lists(permutations_6, min_size=1, max_size=3))
def test_order_matches_sympy(gens):
    ours = PermutationGroup(gens, 6)
    theirs = SympyGroup([SympyPermutation(list(g.images)) for g in gens])
    assert ours.order() == theirs.order()
    assert len(ours.elements()) == ours.order()


@settings(max_examples=40, deadline=None)
@given(st.lists(permutations_6, min_size=1, max_size=3), permutations_6)
def test_membership_matches_sympy(gens, candidate):
    ours = PermutationGroup(gens, 6)
    theirs = SympyGroup([SympyPermutation(list(g.images)) for g in gens])
    assert ours.contains(candidate) == theirs.contains(SympyPermutation(list(candidate.images)))


@settings(max_examples=25, deadline=None)
@given(st.lists(permutations_6, min_size=1, max_size=3), st.integers(0, 5))
def test_orbit_stabilizer(gens, point):
    group = PermutationGroup(gens, 6)
    stabilizer = point_stabilizer(group, point)
    assert stabilizer.order() * len(group.orbit(point)) == group.order()
    assert all(g.fixes(point) for g in stabilizer.generators)
    assert stabilizer.is_subgroup_of(group)


def test_normal_closure_matches_sympy():
    s5 = symmetric(5)
    closure = normal_closure(s5, [cycles(5, "(0 1 2)")])
    expected = SympyGroup([SympyPermutation(list(g.images)) for g in s5.generators]).normal_closure(
        SympyPermutation(list(cycles(5, "(0 1 2)").images)))
    assert closure.order() == expected.order() == 60
    assert closure.is_normal_in(s5)


def test_normal_closure_requires_members():
    with pytest.raises(ElementNotInGroup):
        normal_closure(alternating(4), [cycles(4, "(0 1)")])


def test_a5_is_simple():
    assert is_simple_group(alternating(5)) == (True, None)


def test_s3_witness_has_order_3():
    simple, witness = is_simple_group(symmetric(3))
    assert not simple
    assert witness.order() == 3
    assert witness.is_normal_in(symmetric(3))


def test_a4_witness_is_klein_four():
    simple, witness = is_simple_group(alternating(4))
    assert not simple
    assert witness.order() == 4
    assert all(len(g.cycles()) in (0, 2) for g in witness.elements())


def test_prime_order_shortcut():
    assert is_simple_group(group_from_generators([cycles(7, "(0 1 2 3 4 5 6)")], 7)) == (True, None)


def test_trivial_group_is_rejected():
    with pytest.raises(ValueError):
        is_simple_group(group_from_generators([], 3))


def test_enumeration_bound():
    group = PermutationGroup(symmetric(5).generators, 5, enumeration_bound=100)
    assert group.order() == 120
    with pytest.raises(OrderBoundExceeded) as exc:
        group.elements()
    assert exc.value.order == 120 and exc.value.bound == 100


def test_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        symmetric(4).contains(Permutation.identity(5))
    with pytest.raises(DegreeMismatch):
        PermutationGroup([Permutation.identity(3)], 4)


def test_conjugacy_classes_partition_s4():
    s4 = symmetric(4)
    classes = [klass for _, klass in s4.conjugacy_classes()]
    assert sorted(len(k) for k in classes) == [1, 3, 6, 6, 8]
    assert sum(len(k) for k in classes) == 24


def test_equality_ignores_generators():
    assert alternating(4) == group_from_generators(
        [cycles(4, "(0 1 2)"), cycles(4, "(1 2 3)")], 4)
    assert alternating(4) != symmetric(4)


def test_base_skips_trivial_levels():
    group = group_from_generators([cycles(5, "(3 4)")], 5)
    assert group.base == [3]
    assert group.is_abelian()
    assert not group.is_transitive()
