# checks.py
# Brute-force cross-checks between structural computations and family sets

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from sympy import factorint

from constructors import combine, dihedral, project
from families import (
    FAMILIES,
    GroupFamily,
    family,
    f_set,
    lambda_nil_set,
    lambda_p_set,
    measure_finite,
    nilpotentizer,
    nilpotentizer_core,
    sigma_n_set,
    tau_stats,
)
from groups import (
    ElementSet,
    FiniteGroup,
    centralizer,
    conjugacy_classes,
    generated_subgroup,
    generators_of,
    normal_closure,
    pair_subgroup,
)
from structure import (
    centralizes_factor,
    chief_series,
    fitting,
    hypercenter,
    is_nilpotent,
    is_p_group,
    is_prime_power_of,
    is_solvable,
    lower_central_series,
    minimal_normal_subgroups,
    normal_subgroups,
    o_p,
    p_decomposition,
    p_elements,
    quotient,
    solvable_radical,
    sylow,
)
from towers import Tower

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    detail: str = ""
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


def all_of(results: Iterable[CheckResult]) -> CheckResult:
    count = 0
    for r in results:
        if not r.ok:
            return r
        count += 1
    return CheckResult(True, f"{count} cases")


def _class_reps(G: FiniteGroup) -> list[int]:
    return [next(iter(c)) for c in conjugacy_classes(G)]


def _primes_of(n: int) -> list[int]:
    return sorted(factorint(n))


def _centralized_in(G: FiniteGroup, S: ElementSet, y: int) -> ElementSet:
    return S & centralizer(G, y)


# --- structure ---


def op_characterization(G: FiniteGroup, p: int) -> CheckResult:
    """p-elements centralizing every abelian p'-chief factor and every nonabelian one form O_p."""
    series = chief_series(G)
    relevant = [i for i, f in enumerate(series.factors) if f.nonabelian or f.prime != p]
    hits = G.subset(g for g in p_elements(G, p) if all(centralizes_factor(G, g, series, i) for i in relevant))
    expected = o_p(G, p)
    if hits == expected:
        return CheckResult(True, f"{G.name} p={p} |O_p|={expected.card}")
    diff = (hits - expected) | (expected - hits)
    return CheckResult(False, f"{G.name} p={p}", next(iter(diff)))


def radical_oracle(G: FiniteGroup) -> CheckResult:
    """Radical-type subgroups against the normal subgroup lattice."""
    normals = normal_subgroups(G)
    tests = [("radical", solvable_radical(G), is_solvable), ("fitting", fitting(G), is_nilpotent)]
    for p in _primes_of(G.order):
        tests.append((f"o_{p}", o_p(G, p), lambda S, p=p: is_p_group(S, p)))
    for name, found, test in tests:
        best = max((N for N in normals if test(N)), key=lambda N: N.card)
        if found != best or not all(N <= found for N in normals if test(N)):
            return CheckResult(False, f"{G.name}: {name} has order {found.card}, lattice says {best.card}")
    product = G.trivial()
    for p in _primes_of(G.order):
        P = sylow(G, p)
        core = P
        for g in range(G.order):
            core = core & G.subset(G.conjugate(s, g) for s in P)
        if core != o_p(G, p):
            return CheckResult(False, f"{G.name}: O_{p} differs from the core of a Sylow subgroup")
        product = generated_subgroup(G, generators_of(product) + generators_of(core))
    if product != fitting(G):
        return CheckResult(False, f"{G.name}: Fitting subgroup differs from the product of the O_p")
    return CheckResult(True, f"{G.name}: {len(normals)} normal subgroups")


def hypercenter_identity(G: FiniteGroup) -> CheckResult:
    core, Z = nilpotentizer_core(G), hypercenter(G)
    return CheckResult(core == Z, f"{G.name}: core {core.card}, hypercenter {Z.card}")


def nilpotency_cross_check(G: FiniteGroup) -> CheckResult:
    fast = is_nilpotent(G.full())
    slow = lower_central_series(G, G.full())[-1].is_trivial()
    whole = hypercenter(G).is_full()
    return CheckResult(fast == slow == whole, f"{G.name}: counting {fast}, series {slow}, hypercenter {whole}")


def jordan_holder(G: FiniteGroup) -> CheckResult:
    """Factor data does not depend on which minimal normal subgroup is lifted first."""
    one = chief_series(G)
    other = chief_series(G, key=lambda S: (S.card, [-m for m in S.members()]))

    def data(s):
        return sorted((f.order, f.abelian) for f in s.factors)

    return CheckResult(data(one) == data(other), f"{G.name}: {data(one)} vs {data(other)}")


def subseries_bound(G: FiniteGroup) -> CheckResult:
    """H-chief length of NM/M is at most |G:H| for nonabelian minimal normal N <= H ⊴ G, M ⊴ H."""
    cases = 0
    for N in minimal_normal_subgroups(G):
        if is_solvable(N):
            continue
        for H in normal_subgroups(G):
            if not N <= H:
                continue
            acting = generators_of(H)
            for M in normal_subgroups(G, top=H, acting=acting):
                NM = generated_subgroup(G, generators_of(N) + generators_of(M))
                length = len(chief_series(G, acting=acting, bottom=M, top=NM))
                cases += 1
                if length > G.order // H.card:
                    return CheckResult(False, f"{G.name}: length {length} > |G:H| = {G.order // H.card}", (H, M))
    return CheckResult(True, f"{G.name}: {cases} cases")


def odd_lift_outside_centralizer(G: FiniteGroup) -> CheckResult:
    """Each g of odd order mod a nonabelian minimal normal N has an odd-order gn outside C_G(N)."""
    cases = 0
    for N in minimal_normal_subgroups(G):
        if is_solvable(N):
            continue
        Q = quotient(G, N)
        QG = Q.as_group()
        gens = generators_of(N)
        C = G.subset(g for g in range(G.order) if all(G.commute(g, n) for n in gens))
        for g in range(G.order):
            if QG.orders[Q.image(g)] % 2 == 0:
                continue
            cases += 1
            if not any(G.orders[G.mul(g, n)] % 2 == 1 and G.mul(g, n) not in C for n in N):
                return CheckResult(False, f"{G.name}: no odd gn outside C_G(N)", g)
    return CheckResult(True, f"{G.name}: {cases} cases")


# --- family sets ---


def nil_chief_bound(G: FiniteGroup) -> CheckResult:
    """μ(nil_G(x)) <= μ(nil_{G/N}(xN)) |C_N(x_p')|/|N| for abelian minimal normal p-subgroups N."""
    cases = 0
    for N in minimal_normal_subgroups(G):
        gens = generators_of(N)
        if not all(G.commute(a, b) for a in gens for b in gens):
            continue
        p = _primes_of(N.card)[0]
        Q = quotient(G, N)
        QG = Q.as_group()
        for x in _class_reps(G):
            lhs = Fraction(nilpotentizer(G, x).card, G.order)
            x_pp = p_decomposition(G, x, p)[1]
            rhs = Fraction(nilpotentizer(QG, Q.image(x)).card, QG.order) * Fraction(
                _centralized_in(G, N, x_pp).card, N.card
            )
            cases += 1
            if lhs > rhs:
                return CheckResult(False, f"{G.name}: {lhs} > {rhs}", x)
    return CheckResult(True, f"{G.name}: {cases} cases")


def lambda_coset(G: FiniteGroup, p: int) -> CheckResult:
    """Λ_{G,p}(x) ∩ yN = y C_N(x^y) C_N(x) for normal p'-subgroups N and y in Λ."""
    cases = 0
    pel = [x for x in _class_reps(G) if is_prime_power_of(G.orders[x], p)]
    for N in normal_subgroups(G):
        if N.is_trivial() or N.card % p == 0:
            continue
        Q = quotient(G, N)
        for x in pel:
            lam = lambda_p_set(G, x, p)
            c_x = _centralized_in(G, N, x).members()
            seen: set[int] = set()
            for y in lam:
                coset = Q.project(y)
                if coset in seen:
                    continue
                seen.add(coset)
                c_xy = _centralized_in(G, N, G.conjugate(x, y)).members()
                formed = G.subset(G.mul(G.mul(y, a), b) for a in c_xy for b in c_x)
                actual = G.subset(z for z in lam if Q.project(z) == coset)
                cases += 1
                if formed != actual:
                    return CheckResult(False, f"{G.name}: coset of {y} for x={x}", (x, y))
    return CheckResult(True, f"{G.name}: {cases} cosets")


def baer_suzuki(G: FiniteGroup, nil_limit: int = 1000) -> CheckResult:
    """Λ_{G,p}(x) = G forces x into O_p(G); Λ_G(x) = G forces x into Fit(G)."""
    for x in _class_reps(G):
        primes = _primes_of(G.orders[x])
        if len(primes) == 1:
            p = primes[0]
            if lambda_p_set(G, x, p).is_full() and x not in o_p(G, p):
                return CheckResult(False, f"{G.name}: Λ_p(x) = G but x outside O_{p}", x)
        if G.order <= nil_limit and lambda_nil_set(G, x).is_full() and x not in fitting(G):
            return CheckResult(False, f"{G.name}: Λ(x) = G but x outside Fit(G)", x)
    return CheckResult(True, G.name)


def exp2_characterization(G: FiniteGroup) -> CheckResult:
    """<x, y> has exponent at most 2 iff x^2 = y^2 = 1 and xy = yx."""
    F = family("exp2")
    for x in range(G.order):
        for y in range(x, G.order):
            closed = pair_subgroup(G, x, y)
            assert closed is not None
            by_closure = F.contains(closed)
            by_rule = G.orders[x] <= 2 and G.orders[y] <= 2 and G.commute(x, y)
            if by_closure != by_rule:
                return CheckResult(False, f"{G.name}: pair disagrees", (x, y))
    return CheckResult(True, G.name)


def product_factorization(G: FiniteGroup, families: Iterable[GroupFamily] | None = None) -> CheckResult:
    """F_{A×B}((a, b)) = F_A(a) × F_B(b) on a two-factor direct product."""
    if len(G.factors) != 2:
        raise ValueError(f"{G.name} is not a two-factor direct product")
    (A, _), (B, _) = G.factors
    if families is None:
        families = list(FAMILIES.values()) + [family(f"pgroup:{p}") for p in _primes_of(G.order)]
    cases = 0
    for F in families:
        if not (F.subgroups and F.quotients and F.products):
            continue
        for x in range(G.order):
            a, b = project(G, x, 0), project(G, x, 1)
            expected = G.subset(combine(G, (u, v)) for u in f_set(A, a, F) for v in f_set(B, b, F))
            cases += 1
            if f_set(G, x, F) != expected:
                return CheckResult(False, f"{G.name}: {F.id} at {x}", x)
    return CheckResult(True, f"{G.name}: {cases} cases")


def quotient_monotonicity(G: FiniteGroup, F: GroupFamily) -> CheckResult:
    cases = 0
    for N in normal_subgroups(G):
        if N.is_trivial() or N.is_full():
            continue
        Q = quotient(G, N)
        QG = Q.as_group()
        for x in _class_reps(G):
            cases += 1
            if measure_finite(G, x, F) > measure_finite(QG, Q.image(x), F):
                return CheckResult(False, f"{G.name}: {F.id} grows under a quotient", (N.card, x))
    return CheckResult(True, f"{G.name}: {cases} cases")


def tau_bound(G: FiniteGroup) -> CheckResult:
    """Centralizer ratios are 1 or at most 1/2, and μ(nil(g)) is at most their product."""
    series = chief_series(G)
    for g in _class_reps(G):
        report = tau_stats(G, g, series)
        if any(r != 1 and r > Fraction(1, 2) for r in report.ratios):
            return CheckResult(False, f"{G.name}: ratio strictly between 1/2 and 1", g)
        bound = Fraction(1)
        for r in report.ratios:
            bound *= r
        mu = Fraction(nilpotentizer(G, g).card, G.order)
        if mu > bound or mu > Fraction(1, 2**report.tau_abelian):
            return CheckResult(False, f"{G.name}: μ(nil) = {mu} above {bound}", g)
    return CheckResult(True, G.name)


def sigma0_in_radical(G: FiniteGroup) -> CheckResult:
    sigma = sigma_n_set(G, 0, chief_series(G))
    R = solvable_radical(G)
    return CheckResult(sigma <= R, f"{G.name}: |Σ_0| = {sigma.card}, |R| = {R.card}")


# --- named constructions ---


def dihedral_inversion(m: int) -> CheckResult:
    """In D_2m with m an odd prime power a reflection x has nil(x) = {1, x}."""
    G = dihedral(m)
    x = G.index_of[G.generators[1]]
    nil = nilpotentizer(G, x)
    return CheckResult(nil == G.subset([0, x]), f"dihedral({m}): |nil| = {nil.card}")


def baer_inclusion(G: FiniteGroup, p: int) -> CheckResult:
    """V A^n σ^i lies in Λ_{G,p}(x) for 1 <= i < n in a Baer group."""
    x = G.distinguished
    assert x is not None
    sigma = G.marks["C"]
    if not sigma:
        return CheckResult(True, f"{G.name}: n = 1")
    lam = lambda_p_set(G, x, p)
    V = normal_closure(G, G.marks["V"])
    base = normal_closure(G, [x], acting=sigma)
    VA = generated_subgroup(G, generators_of(V) + generators_of(base))
    s = sigma[0]
    n = G.orders[s]
    power = 0
    for i in range(1, n):
        power = G.mul(power, s)
        for v in VA:
            if G.mul(v, power) not in lam:
                return CheckResult(False, f"{G.name}: element outside Λ in V A^n σ^{i}", G.mul(v, power))
    return CheckResult(True, f"{G.name}: |Λ|/|G| = {Fraction(lam.card, G.order)}")


def tower_bounds(T: Tower, F: GroupFamily, upto: int) -> CheckResult:
    """Registered per-factor bounds hold exactly on every factor under the cap."""
    checked, bad = T.verify_bounds(F, upto)
    if bad:
        return CheckResult(False, f"{T.spec}/{F.id}: {bad[0]}", bad)
    return CheckResult(True, f"{T.spec}/{F.id}: {checked} factors")
