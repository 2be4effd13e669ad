from fractions import Fraction

import pytest
from hypothesis import given, strategies

from constructors import combine
from errors import NotPElement, SpecSyntaxError
from families import (
    TauReport,
    f_positive_set_finite,
    f_set,
    family,
    lambda_nil_set,
    lambda_p_set,
    measure_finite,
    nilpotentizer,
    nilpotentizer_core,
    product_witness,
    sigma_n_set,
    solvabilizer,
    tau_stats,
)
from groups import centralizer, from_cycles, pair_subgroup
from specs import build_group
from structure import chief_series, hypercenter, is_nilpotent, is_solvable

FAMILY_IDS = ["all", "abelian", "nilpotent", "solvable", "exp2", "oddsolvable", "pgroup:2", "pgroup:3"]


def test_family_lookup():
    assert family("nilpotent").id == "nilpotent"
    assert family("pgroup:5") is family("pgroup:5")
    for bad in ["nope", "pgroup:4", "pgroup:", "pgroup:x"]:
        with pytest.raises(SpecSyntaxError):
            family(bad)


@pytest.mark.parametrize("fid", FAMILY_IDS)
def test_pair_tests_agree_with_closure(small_group, fid):
    F = family(fid)
    G = small_group
    for x in range(G.order):
        for y in range(x, G.order):
            H = pair_subgroup(G, x, y)
            assert F.pair_member(G, x, y) == F.contains(H), (G.name, fid, x, y)


@pytest.mark.parametrize("fid", FAMILY_IDS)
def test_f_set_is_symmetric(small_group, fid):
    F = family(fid)
    G = small_group
    sets = [f_set(G, x, F) for x in range(G.order)]
    for x in range(G.order):
        for y in sets[x]:
            assert x in sets[y]


@given(strategies.data())
def test_f_set_is_conjugation_equivariant(data):
    G = build_group(data.draw(strategies.sampled_from(["sym(4)", "alt(5)", "sl2(3)"])))
    F = family(data.draw(strategies.sampled_from(["nilpotent", "solvable", "pgroup:2"])))
    x = data.draw(strategies.integers(0, G.order - 1))
    g = data.draw(strategies.integers(0, G.order - 1))
    conjugated = G.subset(G.conjugate(y, g) for y in f_set(G, x, F))
    assert f_set(G, G.conjugate(x, g), F) == conjugated


def test_abelian_family_gives_centralizers(small_group):
    for x in range(small_group.order):
        assert f_set(small_group, x, family("abelian")) == centralizer(small_group, x)


def test_whole_group_in_family(s4, d8):
    assert f_set(s4, 5, family("solvable")).is_full()
    assert nilpotentizer(d8, 3).is_full()
    assert measure_finite(s4, 7, family("all")) == 1


def test_nilpotentizer_of_three_cycle(s3):
    x = s3.index_of[from_cycles(3, (0, 1, 2))]
    assert measure_finite(s3, x, family("nilpotent")) == Fraction(1, 2)
    assert nilpotentizer(s3, 0).is_full()


def test_p_group_sets(s3):
    t = s3.index_of[from_cycles(3, (0, 1))]
    assert f_set(s3, t, family("pgroup:2")).members() == sorted([0, t])
    assert lambda_p_set(s3, t, 2).card == 2
    with pytest.raises(NotPElement):
        lambda_p_set(s3, s3.index_of[from_cycles(3, (0, 1, 2))], 2)


def test_solvabilizer_is_proper_in_alt5(a5):
    for x in range(1, a5.order):
        S = solvabilizer(a5, x)
        assert 0 < S.card < a5.order


def test_odd_measure_in_sl2_4():
    G = build_group("sl2(4)")
    assert measure_finite(G, 0, family("oddsolvable")) == Fraction(3, 4)


def test_lambda_nil_contains_centralizer(s4):
    x = s4.index_of[from_cycles(4, (0, 1))]
    assert centralizer(s4, x) <= lambda_nil_set(s4, x)


def test_frobenius_positive_set_is_not_closed():
    G = build_group("frobcyc(7,1,3)")
    S = f_positive_set_finite(G, family("pgroup:3"))
    assert S.card == 15
    a, b = product_witness(G, S)
    assert G.mul(a, b) not in S
    assert product_witness(G, G.full()) is None


def test_nilpotentizer_core_is_hypercenter(small_group):
    assert nilpotentizer_core(small_group) == hypercenter(small_group)


def test_family_membership_predicates(s4, a5):
    assert family("solvable").member(s4.full()) == is_solvable(s4.full())
    assert not family("solvable").member(a5.full())
    assert family("nilpotent").member(s4.trivial()) == is_nilpotent(s4.trivial())
    assert family("exp2").member(s4.trivial())


def test_tau_stats(s4, a5):
    series = chief_series(s4)
    assert tau_stats(s4, 0, series) == TauReport(0, {}, (Fraction(1), Fraction(1), Fraction(1)))
    t = s4.index_of[from_cycles(4, (0, 1))]
    report = tau_stats(s4, t, series)
    assert report.tau_nonab == 0
    assert report.tau_abelian >= 1
    assert tau_stats(a5, 1, chief_series(a5)).tau_nonab == 1


def test_tau_report_addition():
    a = TauReport(1, {2: 1}, (Fraction(1, 2),))
    b = TauReport(0, {2: 1, 3: 2}, (Fraction(1, 3),))
    total = a + b
    assert total.tau_ab == {2: 2, 3: 2}
    assert total.total == 5
    assert total.ratios == (Fraction(1, 2), Fraction(1, 3))


def test_sigma_sets(a5, s4):
    series = chief_series(a5)
    assert sigma_n_set(a5, 0, series).is_trivial()
    assert sigma_n_set(a5, 1, series).is_full()
    assert sigma_n_set(s4, 0, chief_series(s4)).is_full()
    with pytest.raises(ValueError):
        sigma_n_set(a5, -1, series)


def test_lambda_set_of_transposition(s4):
    # x^g must be (0 1) or (2 3)
    x = s4.index_of[from_cycles(4, (0, 1))]
    assert lambda_p_set(s4, x, 2).card == 8


def test_solvabilizer_of_five_cycle(a5):
    # the only solvable overgroups of a 5-cycle lie in its normalizer D_10
    x = a5.index_of[from_cycles(5, (0, 1, 2, 3, 4))]
    assert f_set(a5, x, family("solvable")).card == 10
    assert measure_finite(a5, x, family("solvable")) == Fraction(1, 6)


def test_tau_and_sigma_on_alt5_squared():
    G = build_group("prod(alt(5),alt(5))")
    series = chief_series(G)
    assert [f.nonabelian for f in series.factors] == [True, True]
    A = G.factors[0][0]
    x = combine(G, [A.index_of[from_cycles(5, (0, 1, 2))], 0])
    assert tau_stats(G, x, series).tau_nonab == 1
    assert tau_stats(G, combine(G, [1, 1]), series).tau_nonab == 2
    assert sigma_n_set(G, 0, series).is_trivial()
    assert sigma_n_set(G, 1, series).card == 119
    assert sigma_n_set(G, 2, series).is_full()
