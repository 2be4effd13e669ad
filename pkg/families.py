# families.py
# Group families and the element sets they induce: F_G(x), Λ-sets, τ statistics

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from sympy import factorint, isprime

from errors import NotPElement, SpecSyntaxError
from groups import ElementSet, FiniteGroup, conjugacy_classes, generated_subgroup, generators_of, pair_subgroup
from structure import (
    ChiefSeries,
    centralizes_factor,
    factor_centralizer_ratio,
    is_nilpotent,
    is_p_group,
    is_prime_power_of,
    is_solvable,
    p_decomposition,
    p_part,
    require_prime,
)

log = logging.getLogger(__name__)


@lru_cache(maxsize=4096)
def _primes(n: int) -> tuple[int, ...]:
    return tuple(sorted(factorint(n)))


@dataclass(frozen=True)
class GroupFamily:
    """A class of finite groups, tested on subgroups of an enumerated group.

    `pair_test` is a cheap test on a generating pair; when `pair_exact` is set
    it decides membership of <x, y> on its own, otherwise it is only a
    necessary condition and the pair subgroup is closed and tested.
    """

    id: str
    contains: Callable[[ElementSet], bool] = field(compare=False)
    pair_test: Callable[[FiniteGroup, int, int], bool] | None = field(default=None, compare=False)
    pair_exact: bool = False
    subgroups: bool = True
    quotients: bool = True
    products: bool = True

    def __str__(self) -> str:
        return self.id

    def member(self, S: ElementSet) -> bool:
        memo = S.parent.membership
        key = (self.id, S.bits)
        found = memo.get(key)
        if found is None:
            found = memo[key] = self.contains(S)
        return found

    def pair_member(self, G: FiniteGroup, x: int, y: int) -> bool:
        if self.pair_test is not None:
            if not self.pair_test(G, x, y):
                return False
            if self.pair_exact:
                return True
        H = pair_subgroup(G, x, y)
        assert H is not None
        return self.member(H)


# --- membership tests ---


def _is_abelian(S: ElementSet) -> bool:
    G = S.parent
    gens = generators_of(S)
    return all(G.commute(a, b) for i, a in enumerate(gens) for b in gens[i + 1 :])


def _is_exp2(S: ElementSet) -> bool:
    orders = S.parent.orders
    return all(orders[x] <= 2 for x in S)


def _is_odd_solvable(S: ElementSet) -> bool:
    return S.card % 2 == 1 and is_solvable(S)


def _p_pair(G: FiniteGroup, x: int, y: int, p: int) -> bool:
    orders = G.orders
    if not (is_prime_power_of(orders[x], p) and is_prime_power_of(orders[y], p)):
        return False
    H = pair_subgroup(G, x, y, p_part(G.order, p))
    return H is not None and is_p_group(H, p)


def _nilpotent_pair(G: FiniteGroup, x: int, y: int) -> bool:
    # <x, y> is nilpotent iff the r-parts of x and y generate an r-group for
    # every prime r and parts belonging to different primes commute
    orders = G.orders
    primes = sorted(set(_primes(orders[x])) | set(_primes(orders[y])))
    xs = {r: p_decomposition(G, x, r)[0] for r in primes}
    ys = {r: p_decomposition(G, y, r)[0] for r in primes}
    for r in primes:
        for s in primes:
            if r != s and not G.commute(xs[r], ys[s]):
                return False
    return all(_p_pair(G, xs[r], ys[r], r) for r in primes)


def _both_odd(G: FiniteGroup, x: int, y: int) -> bool:
    return G.orders[x] % 2 == 1 and G.orders[y] % 2 == 1


def _exp2_pair(G: FiniteGroup, x: int, y: int) -> bool:
    return G.orders[x] <= 2 and G.orders[y] <= 2 and G.commute(x, y)


FAMILIES: dict[str, GroupFamily] = {
    "all": GroupFamily("all", lambda S: True, lambda G, x, y: True, pair_exact=True),
    "abelian": GroupFamily("abelian", _is_abelian, lambda G, x, y: G.commute(x, y), pair_exact=True),
    "nilpotent": GroupFamily("nilpotent", is_nilpotent, _nilpotent_pair, pair_exact=True),
    "solvable": GroupFamily("solvable", is_solvable),
    "exp2": GroupFamily("exp2", _is_exp2, _exp2_pair, pair_exact=True),
    "oddsolvable": GroupFamily("oddsolvable", _is_odd_solvable, _both_odd),
}


@lru_cache(maxsize=None)
def family(fid: str) -> GroupFamily:
    """Look up a family by its identifier (`pgroup:<p>` builds one per prime)."""
    fid = fid.strip()
    if fid in FAMILIES:
        return FAMILIES[fid]
    name, sep, arg = fid.partition(":")
    if name == "pgroup" and sep:
        if not arg.isdigit() or not isprime(int(arg)):
            raise SpecSyntaxError(f"pgroup needs a prime, got {arg!r}")
        p = int(arg)
        return GroupFamily(fid, lambda S: is_p_group(S, p), lambda G, x, y: _p_pair(G, x, y, p), pair_exact=True)
    raise SpecSyntaxError(f"unknown family {fid!r}")


# --- family sets ---


def f_set(G: FiniteGroup, x: int, F: GroupFamily) -> ElementSet:
    """{y : <x, y> lies in F}."""
    key = ("f_set", F.id, x)
    found = G.memo.get(key)
    if found is not None:
        return found  # type: ignore[return-value]
    if F.subgroups and F.member(G.full()):
        found = G.full()
    else:
        found = G.subset(y for y in range(G.order) if F.pair_member(G, x, y))
    G.memo[key] = found
    log.debug("f_set group=%s family=%s x=%d card=%d", G.name, F.id, x, found.card)
    return found


def measure_finite(G: FiniteGroup, x: int, F: GroupFamily) -> Fraction:
    return Fraction(f_set(G, x, F).card, G.order)


def nilpotentizer(G: FiniteGroup, x: int) -> ElementSet:
    return f_set(G, x, family("nilpotent"))


def solvabilizer(G: FiniteGroup, x: int) -> ElementSet:
    return f_set(G, x, family("solvable"))


def _lambda_set(G: FiniteGroup, x: int, F: GroupFamily) -> ElementSet:
    verdict: dict[int, bool] = {}
    hits = []
    for g in range(G.order):
        c = G.conjugate(x, g)
        ok = verdict.get(c)
        if ok is None:
            ok = verdict[c] = F.pair_member(G, x, c)
        if ok:
            hits.append(g)
    return G.subset(hits)


def lambda_p_set(G: FiniteGroup, x: int, p: int) -> ElementSet:
    """{g : <x, x^g> is a p-group} for a p-element x."""
    require_prime(p)
    if not is_prime_power_of(G.orders[x], p):
        raise NotPElement(f"element {x} of order {G.orders[x]} is not a {p}-element")
    return _lambda_set(G, x, family(f"pgroup:{p}"))


def lambda_nil_set(G: FiniteGroup, x: int) -> ElementSet:
    return _lambda_set(G, x, family("nilpotent"))


def f_positive_set_finite(G: FiniteGroup, F: GroupFamily) -> ElementSet:
    """{g : F_G(g) is nonempty}."""
    if F.subgroups:
        # y = 1 works exactly when <g> is in F
        return G.subset(g for g in range(G.order) if F.member(generated_subgroup(G, [g])))
    return G.subset(g for g in range(G.order) if f_set(G, g, F).card)


def product_witness(G: FiniteGroup, S: ElementSet) -> tuple[int, int] | None:
    """Least pair a, b in S with ab outside S."""
    members = S.members()
    for a in members:
        for b in members:
            if G.mul(a, b) not in S:
                return a, b
    return None


def nilpotentizer_core(G: FiniteGroup) -> ElementSet:
    """The intersection of nil_G(g) over all g."""
    F = family("nilpotent")
    core = 0
    for cls in conjugacy_classes(G):
        y = next(iter(cls))
        if all(F.pair_member(G, y, g) for g in range(G.order)):
            core |= cls.bits
    return ElementSet(G, core)


# --- τ statistics ---


@dataclass(frozen=True)
class TauReport:
    tau_nonab: int = 0
    tau_ab: dict[int, int] = field(default_factory=dict, hash=False)
    # |C_{X/Y}(g_p')| / |X/Y| for each abelian chief factor X/Y, bottom-up
    ratios: tuple[Fraction, ...] = ()

    @property
    def tau_abelian(self) -> int:
        return sum(self.tau_ab.values())

    @property
    def total(self) -> int:
        return self.tau_nonab + self.tau_abelian

    def __add__(self, other: TauReport) -> TauReport:
        ab = Counter(self.tau_ab)
        ab.update(other.tau_ab)
        return TauReport(
            self.tau_nonab + other.tau_nonab,
            {p: n for p, n in sorted(ab.items()) if n},
            self.ratios + other.ratios,
        )


def tau_stats(G: FiniteGroup, g: int, series: ChiefSeries) -> TauReport:
    nonab = 0
    ab: Counter[int] = Counter()
    ratios = []
    for i, factor in enumerate(series.factors):
        if factor.nonabelian:
            if not centralizes_factor(G, g, series, i):
                nonab += 1
            continue
        assert factor.prime is not None
        g_pp = p_decomposition(G, g, factor.prime)[1]
        if not centralizes_factor(G, g_pp, series, i):
            ab[factor.prime] += 1
        fixed, size = factor_centralizer_ratio(G, g_pp, series, i)
        ratios.append(Fraction(fixed, size))
    return TauReport(nonab, dict(sorted(ab.items())), tuple(ratios))


def sigma_n_set(G: FiniteGroup, n: int, series: ChiefSeries) -> ElementSet:
    """Elements centralizing all but at most n nonabelian chief factors."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    misses = [0] * G.order
    for i, factor in enumerate(series.factors):
        if factor.abelian:
            continue
        X, Y = series.section(i)
        gens = generators_of(X)
        for g in range(G.order):
            if not all(G.commutator(x, g) in Y for x in gens):
                misses[g] += 1
    return G.subset(g for g in range(G.order) if misses[g] <= n)
