from concurrent.futures import ThreadPoolExecutor

import pytest
from hypothesis import given, strategies
from sympy.combinatorics import Permutation as SymPerm
from sympy.combinatorics.named_groups import AlternatingGroup, SymmetricGroup

from errors import CapExceeded, GroupError, SpecSyntaxError
from groups import (
    PairCache,
    center,
    centralizer,
    closure,
    commutator_subgroup,
    compose,
    conjugacy_classes,
    evaluate_word,
    from_cycles,
    generated_subgroup,
    generators_of,
    identity_perm,
    invert,
    normal_closure,
    pair_subgroup,
    parse_word,
    perm_order,
)

perms5 = strategies.permutations(list(range(5))).map(tuple)
perms6 = strategies.permutations(list(range(6))).map(tuple)


def test_compose_reads_left_to_right():
    a = (1, 0, 2)
    b = (0, 2, 1)
    # 0 -> 1 under a, then 1 -> 2 under b
    assert compose(a, b) == (2, 0, 1)


@given(perms6, perms6)
def test_compose_matches_sympy(a, b):
    assert compose(a, b) == tuple((SymPerm(list(a)) * SymPerm(list(b))).array_form)


@given(perms6, perms6)
def test_inverse_of_product(a, b):
    assert invert(compose(a, b)) == compose(invert(b), invert(a))
    assert compose(a, invert(a)) == identity_perm(6)


@given(perms6)
def test_perm_order_matches_sympy(a):
    assert perm_order(a) == SymPerm(list(a)).order()


def test_from_cycles_rejects_overlapping_cycles():
    assert from_cycles(4, (0, 1, 2)) == (1, 2, 0, 3)
    with pytest.raises(GroupError):
        from_cycles(3, (0, 1), (1, 2))


def test_closure_orders_match_sympy(s4, a5):
    assert s4.order == SymmetricGroup(4).order() == 24
    assert a5.order == AlternatingGroup(5).order() == 60
    assert s4.elements[0] == identity_perm(4)


def test_closure_respects_cap():
    with pytest.raises(CapExceeded) as info:
        closure(5, [from_cycles(5, (0, 1, 2, 3, 4)), from_cycles(5, (0, 1))], cap=50)
    assert info.value.cap == 50


def test_group_arithmetic(s4):
    for x in range(s4.order):
        assert s4.mul(x, s4.inv(x)) == 0
        assert s4.power(x, s4.orders[x]) == 0
    x, g = 5, 7
    assert s4.conjugate(x, g) == s4.mul(s4.mul(s4.inv(g), x), g)
    assert s4.commutator(x, g) == s4.mul(s4.mul(s4.inv(x), s4.inv(g)), s4.mul(x, g))


def test_element_set_operations(s4):
    A = s4.subset([0, 1, 2])
    B = s4.subset([2, 3])
    assert (A & B).members() == [2]
    assert (A | B).card == 4
    assert (A - B).members() == [0, 1]
    assert s4.trivial() <= A
    assert not s4.trivial() < s4.trivial()
    assert s4.full().is_full() and s4.trivial().is_trivial()
    assert 3 in B and 1 not in B


def test_conjugacy_classes(s4, a5):
    assert len(conjugacy_classes(s4)) == 5
    assert sorted(c.card for c in conjugacy_classes(a5)) == [1, 12, 12, 15, 20]
    assert sum(c.card for c in conjugacy_classes(s4)) == 24


def test_centralizer_and_center(s4, d8):
    assert center(s4).is_trivial()
    assert center(d8).card == 2
    x = s4.index_of[from_cycles(4, (0, 1, 2, 3))]
    assert centralizer(s4, x).card == 4


def test_normal_closure_and_commutators(s4):
    three_cycle = s4.index_of[from_cycles(4, (0, 1, 2))]
    assert normal_closure(s4, [three_cycle]).card == 12
    full = s4.full()
    derived = commutator_subgroup(s4, full, full)
    assert derived.card == 12
    assert commutator_subgroup(s4, derived, derived).card == 4


def test_generators_of_regenerates(a5):
    S = a5.subset(generated_subgroup(a5, [1, 2]))
    assert generated_subgroup(a5, generators_of(S)) == S


def test_pair_subgroup_limit_and_cache(a5):
    x, y = a5.generator_indices[:2]
    assert pair_subgroup(a5, x, y, limit=10) is None
    H = pair_subgroup(a5, x, y)
    assert H is not None
    assert pair_subgroup(a5, y, x) is H


def test_pair_cache_evicts_oldest(s3):
    cache = PairCache(budget=200)
    for i in range(3):
        cache.put((0, i), s3.subset([i]))
    assert len(cache) == 2
    assert cache.get((0, 0)) is None
    assert cache.get((0, 2)) is not None


def test_pair_cache_concurrent_writers(a5):
    cache = PairCache(budget=2000)
    values = [a5.subset([i]) for i in range(a5.order)]

    def write(offset):
        for i in range(a5.order):
            cache.put((offset, i), values[i])

    with ThreadPoolExecutor(max_workers=8) as pool:
        list(pool.map(write, range(16)))
    assert 0 < len(cache) <= 2000 // 96


@given(
    strategies.integers(0, 59),
    strategies.integers(0, 59),
    strategies.integers(0, 59),
)
def test_conjugation_is_an_automorphism(a5, x, y, g):
    assert a5.conjugate(a5.mul(x, y), g) == a5.mul(a5.conjugate(x, g), a5.conjugate(y, g))
    assert a5.conjugate(a5.inv(x), g) == a5.inv(a5.conjugate(x, g))
    assert a5.orders[a5.conjugate(x, g)] == a5.orders[x]


@given(perms5, perms5)
def test_closure_is_idempotent(a, b):
    G = closure(5, [a, b])
    gens = [G.elements[i] for i in generators_of(G.full())] or [identity_perm(5)]
    again = closure(5, gens)
    assert set(again.elements) == set(G.elements)
    for x in range(G.order):
        H = generated_subgroup(G, [x])
        assert generated_subgroup(G, H.members()) == H


def test_words(s3, y1):
    w = parse_word("g0^2 * g1^-1")
    assert str(w) == "g0^2*g1^-1"
    x = evaluate_word(s3, w)
    g0, g1 = (s3.index_of[g] for g in s3.generators)
    assert x == s3.mul(s3.power(g0, 2), s3.inv(g1))
    assert evaluate_word(s3, parse_word("e")) == 0
    assert evaluate_word(y1, parse_word("d^2")) == y1.power(y1.distinguished, 2)


@pytest.mark.parametrize("text", ["", "g", "x1", "g0**g1", "d^"])
def test_bad_words(text):
    with pytest.raises(SpecSyntaxError):
        parse_word(text)


def test_word_errors(s3):
    with pytest.raises(SpecSyntaxError):
        evaluate_word(s3, parse_word("d"))
    with pytest.raises(SpecSyntaxError):
        evaluate_word(s3, parse_word("g9"))
