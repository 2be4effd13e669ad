import pytest
from hypothesis import given, strategies
from sympy import factorint
from sympy.combinatorics import Permutation, PermutationGroup

from errors import NotNormal
from groups import center, from_cycles, generated_subgroup
from specs import build_group
from structure import (
    chief_series,
    derived_series,
    fitting,
    hypercenter,
    is_nilpotent,
    is_normal,
    is_prime_power_of,
    is_solvable,
    lower_central_series,
    minimal_normal_subgroups,
    normal_subgroups,
    normalizer,
    o_p,
    p_decomposition,
    p_elements,
    quotient,
    solvable_radical,
    sylow,
)


def as_sympy(G):
    return PermutationGroup([Permutation(list(g)) for g in G.generators])


def test_predicates_match_sympy(small_group):
    S = as_sympy(small_group)
    full = small_group.full()
    assert is_solvable(full) == S.is_solvable
    assert is_nilpotent(full) == S.is_nilpotent
    assert center(small_group).card == S.center().order()
    for p in factorint(small_group.order):
        assert sylow(small_group, p).card == S.sylow_subgroup(p).order()


def test_nilpotency_agrees_with_lower_central_series(small_group):
    full = small_group.full()
    assert is_nilpotent(full) == lower_central_series(small_group, full)[-1].is_trivial()


def test_derived_series(s4, a5):
    assert [S.card for S in derived_series(s4, s4.full())] == [24, 12, 4, 1]
    assert [S.card for S in derived_series(a5, a5.full())] == [60]
    assert not is_solvable(a5.full())


def test_chief_series(s4, a5):
    series = chief_series(s4)
    assert series.orders() == [4, 3, 2]
    assert all(f.abelian for f in series.factors)
    assert [f.prime for f in series.factors] == [2, 3, 2]
    X, Y = series.section(1)
    assert (X.card, Y.card) == (12, 4)
    alt5 = chief_series(a5)
    assert len(alt5) == 1 and alt5.factors[0].nonabelian


def test_chief_series_of_sl2_3():
    G = build_group("sl2(3)")
    assert chief_series(G).orders() == [2, 4, 3]


def test_chief_factor_data_is_independent_of_key(small_group):
    default = chief_series(small_group)
    reverse = chief_series(small_group, key=lambda S: (S.card, [-m for m in S.members()]))
    assert sorted(default.factors, key=repr) == sorted(reverse.factors, key=repr)


def test_normal_subgroups(s4, a5):
    assert [N.card for N in normal_subgroups(s4)] == [1, 4, 12, 24]
    assert [N.card for N in minimal_normal_subgroups(s4)] == [4]
    assert [N.card for N in normal_subgroups(a5)] == [1, 60]


def test_radicals():
    G = build_group("sl2(3)")
    assert fitting(G).card == 8
    assert o_p(G, 2).card == 8
    assert o_p(G, 3).is_trivial()
    assert solvable_radical(G).is_full()
    a5 = build_group("alt(5)")
    assert solvable_radical(a5).is_trivial() and fitting(a5).is_trivial()


def test_hypercenter(s3, d8):
    assert hypercenter(d8).is_full()
    assert hypercenter(s3).is_trivial()
    assert hypercenter(build_group("sl2(3)")).card == 2


def test_quotient(s4):
    V = minimal_normal_subgroups(s4)[0]
    Q = quotient(s4, V)
    assert Q.order == 6
    H = Q.as_group()
    assert H.order == 6 and center(H).is_trivial()
    x = 5
    assert Q.preimage(H.subset([Q.image(x)])) == s4.subset(s4.mul(x, v) for v in V)
    assert Q.project(s4.mul(x, x)) == Q.mul(Q.project(x), Q.project(x))


def test_quotient_needs_normal_subgroup(s4):
    swap = generated_subgroup(s4, [s4.index_of[from_cycles(4, (0, 1))]])
    assert not is_normal(s4, swap)
    assert normalizer(s4, swap).card == 4
    with pytest.raises(NotNormal):
        quotient(s4, swap)


def test_quotient_needs_a_subgroup(s4):
    # closed under conjugation but not under products
    threes = s4.subset([0] + [x for x in range(s4.order) if s4.orders[x] == 3])
    assert threes.card == 9
    assert not is_normal(s4, threes)
    with pytest.raises(NotNormal):
        quotient(s4, threes)


def test_prime_arguments_are_checked(s3):
    with pytest.raises(ValueError):
        is_prime_power_of(8, 1)
    for bad in (0, 1, 4):
        with pytest.raises(ValueError):
            o_p(s3, bad)
        with pytest.raises(ValueError):
            sylow(s3, bad)
        with pytest.raises(ValueError):
            p_elements(s3, bad)


@given(strategies.data())
def test_p_decomposition(data):
    G = build_group(data.draw(strategies.sampled_from(["cyclic(12)", "sl2(3)", "dihedral(6)"])))
    x = data.draw(strategies.integers(0, G.order - 1))
    p = data.draw(strategies.sampled_from(sorted(factorint(G.order))))
    xp, xq = p_decomposition(G, x, p)
    assert G.mul(xp, xq) == x
    assert G.commute(xp, xq)
    assert G.orders[xq] % p != 0
    assert G.orders[x] % G.orders[xp] == 0
