# structure.py
# Quotients, chief series, Sylow and radical-type subgroups, series tests

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Sequence

from sympy import factorint, isprime, multiplicity

from errors import NotNormal
from groups import (
    ElementSet,
    FiniteGroup,
    closure,
    commutator_subgroup,
    conjugacy_classes,
    generated_subgroup,
    generators_of,
    normal_closure,
)

log = logging.getLogger(__name__)


def is_prime_power_of(n: int, p: int) -> bool:
    if p < 2:
        raise ValueError(f"prime power test needs p >= 2, got {p}")
    while n % p == 0:
        n //= p
    return n == 1


def p_part(n: int, p: int) -> int:
    return p ** multiplicity(p, n)


def require_prime(p: int) -> int:
    if not isprime(p):
        raise ValueError(f"expected a prime, got {p}")
    return p


# --- quotients ---


class QuotientGroup:
    """G/N with the least element index of each coset as its representative."""

    def __init__(self, parent: FiniteGroup, kernel: ElementSet):
        if not is_normal(parent, kernel):
            raise NotNormal(f"subgroup of order {kernel.card} is not normal in {parent.name}")
        self.parent = parent
        self.kernel = kernel
        G = parent
        members = kernel.members()
        self.coset_of = [-1] * G.order
        self.reps: list[int] = []
        for x in range(G.order):
            if self.coset_of[x] < 0:
                c = len(self.reps)
                for n in members:
                    self.coset_of[G.mul(x, n)] = c
                self.reps.append(x)
        self.order = len(self.reps)
        self._group: FiniteGroup | None = None

    def project(self, x: int) -> int:
        return self.coset_of[x]

    def mul(self, a: int, b: int) -> int:
        return self.coset_of[self.parent.mul(self.reps[a], self.reps[b])]

    def as_group(self) -> FiniteGroup:
        """G/N as the regular permutation group on its cosets."""
        if self._group is None:
            G = self.parent
            gens = [self._coset_perm(s) for s in G.generator_indices]
            self._group = closure(max(self.order, 1), gens, max(self.order, 1), f"{G.name}/{self.kernel.card}")
        return self._group

    def _coset_perm(self, x: int) -> tuple[int, ...]:
        G = self.parent
        return tuple(self.coset_of[G.mul(r, x)] for r in self.reps)

    def image(self, x: int) -> int:
        """Index of xN in as_group()."""
        return self.as_group().index_of[self._coset_perm(x)]

    def preimage(self, S: ElementSet) -> ElementSet:
        """Union of the cosets making up a subset of as_group()."""
        Q = self.as_group()
        cosets = {Q.elements[e][0] for e in S}
        G = self.parent
        return G.subset(x for x in range(G.order) if self.coset_of[x] in cosets)


def quotient(G: FiniteGroup, N: ElementSet) -> QuotientGroup:
    return QuotientGroup(G, N)


def is_normal(G: FiniteGroup, N: ElementSet, acting: Sequence[int] | None = None) -> bool:
    """N is a subgroup and conjugation by `acting` (default: G) maps it into itself."""
    acting = G.generator_indices if acting is None else acting
    gens = generators_of(N)
    if generated_subgroup(G, gens) != N:
        return False
    return all(G.conjugate(n, g) in N for n in gens for g in acting)


def normalizer(G: FiniteGroup, S: ElementSet) -> ElementSet:
    gens = generators_of(S)
    return G.subset(g for g in range(G.order) if all(G.conjugate(s, g) in S for s in gens))


# --- series and predicates ---


def derived_series(G: FiniteGroup, S: ElementSet) -> list[ElementSet]:
    series = [S]
    while not series[-1].is_trivial():
        nxt = commutator_subgroup(G, series[-1], series[-1])
        if nxt == series[-1]:
            break
        series.append(nxt)
    return series


def lower_central_series(G: FiniteGroup, S: ElementSet) -> list[ElementSet]:
    series = [S]
    while not series[-1].is_trivial():
        nxt = commutator_subgroup(G, series[-1], S)
        if nxt == series[-1]:
            break
        series.append(nxt)
    return series


def is_p_group(S: ElementSet, p: int) -> bool:
    return is_prime_power_of(S.card, p)


def is_solvable(S: ElementSet) -> bool:
    if len(factorint(S.card)) <= 1:
        return True
    return derived_series(S.parent, S)[-1].is_trivial()


def is_nilpotent(S: ElementSet) -> bool:
    """A finite group is nilpotent iff each prime has exactly |S|_p elements of p-power order."""
    primes = factorint(S.card)
    if len(primes) <= 1:
        return True
    orders = S.parent.orders
    counts = dict.fromkeys(primes, 0)
    for x in S:
        o = orders[x]
        for p in primes:
            if is_prime_power_of(o, p):
                counts[p] += 1
    return all(counts[p] == p**e for p, e in primes.items())


# --- chief series ---


@dataclass(frozen=True)
class ChiefFactor:
    order: int
    abelian: bool
    prime: int | None

    @property
    def nonabelian(self) -> bool:
        return not self.abelian


@dataclass(frozen=True)
class ChiefSeries:
    """Ascending chain chain[0] < chain[1] < ...; factors[i] describes chain[i+1]/chain[i]."""

    chain: tuple[ElementSet, ...]
    factors: tuple[ChiefFactor, ...]

    def __len__(self) -> int:
        return len(self.factors)

    def section(self, i: int) -> tuple[ElementSet, ElementSet]:
        """(X, Y) with X/Y the i-th factor."""
        return self.chain[i + 1], self.chain[i]

    def orders(self) -> list[int]:
        return [f.order for f in self.factors]


def default_key(S: ElementSet) -> tuple[int, list[int]]:
    return S.card, S.members()


def orbits(G: FiniteGroup, within: ElementSet, acting: Sequence[int] | None = None) -> list[ElementSet]:
    """Orbits on `within` of conjugation by `acting` (the conjugacy classes when acting is all of G)."""
    if acting is None:
        return [c for c in conjugacy_classes(G) if c <= within]
    seen = ElementSet(G, 0)
    found: list[ElementSet] = []
    for x in within:
        if x in seen:
            continue
        orbit = [x]
        members = {x}
        k = 0
        while k < len(orbit):
            for a in acting:
                c = G.conjugate(orbit[k], a)
                if c not in members:
                    members.add(c)
                    orbit.append(c)
            k += 1
        cls = G.subset(orbit)
        seen = seen | cls
        found.append(cls)
    return found


def chief_series(
    G: FiniteGroup,
    acting: Sequence[int] | None = None,
    bottom: ElementSet | None = None,
    top: ElementSet | None = None,
    key: Callable[[ElementSet], object] = default_key,
) -> ChiefSeries:
    """Chief series of top/bottom under conjugation by `acting` (default: G itself).

    Each step lifts a minimal acting-normal subgroup of top/current, chosen
    as the least candidate under `key`.
    """
    memo_key = ("chief", tuple(acting) if acting is not None else None,
                bottom.bits if bottom is not None else None,
                top.bits if top is not None else None, key)
    cached = G.memo.get(memo_key)
    if cached is not None:
        return cached  # type: ignore[return-value]
    current = bottom if bottom is not None else G.trivial()
    top = top if top is not None else G.full()
    classes = orbits(G, top, acting)
    chain = [current]
    factors: list[ChiefFactor] = []
    while current != top:
        candidates: dict[int, ElementSet] = {}
        base = list(generators_of(current))
        for cls in classes:
            x = next(iter(cls))
            if x in current:
                continue
            C = normal_closure(G, base + [x], acting)
            candidates.setdefault(C.bits, C)
        minimal = [C for C in candidates.values() if not any(D < C for D in candidates.values())]
        chosen = min(minimal, key=key)
        factors.append(_factor_data(G, chosen, current))
        current = chosen
        chain.append(current)
    series = ChiefSeries(tuple(chain), tuple(factors))
    G.memo[memo_key] = series
    log.debug("chief series name=%s orders=%s", G.name, series.orders())
    return series


def _factor_data(G: FiniteGroup, X: ElementSet, Y: ElementSet) -> ChiefFactor:
    order = X.card // Y.card
    gens = generators_of(X)
    abelian = all(G.commutator(a, b) in Y for a in gens for b in gens)
    prime = next(iter(factorint(order))) if abelian else None
    return ChiefFactor(order, abelian, prime)


def centralizes_factor(G: FiniteGroup, g: int, series: ChiefSeries, i: int) -> bool:
    """[X, g] <= Y for the i-th factor X/Y."""
    X, Y = series.section(i)
    return all(G.commutator(x, g) in Y for x in generators_of(X))


def factor_centralizer_ratio(G: FiniteGroup, g: int, series: ChiefSeries, i: int) -> tuple[int, int]:
    """(|C_{X/Y}(g)|, |X/Y|) for the i-th factor."""
    X, Y = series.section(i)
    fixed = sum(1 for x in X if G.commutator(x, g) in Y)
    return fixed // Y.card, X.card // Y.card


# --- minimal normal subgroups and the normal subgroup lattice ---


def class_closures(G: FiniteGroup) -> list[tuple[int, ElementSet]]:
    """(class representative, normal closure) for each nontrivial conjugacy class."""
    cached = G.memo.get("class-closures")
    if cached is None:
        cached = [(c.members()[0], normal_closure(G, [c.members()[0]])) for c in conjugacy_classes(G)[1:]]
        G.memo["class-closures"] = cached
    return cached  # type: ignore[return-value]


def minimal_normal_subgroups(G: FiniteGroup) -> list[ElementSet]:
    closures = {C.bits: C for _, C in class_closures(G)}
    minimal = [C for C in closures.values() if not any(D < C for D in closures.values())]
    return sorted(minimal, key=default_key)


def normal_subgroups(
    G: FiniteGroup,
    top: ElementSet | None = None,
    acting: Sequence[int] | None = None,
) -> list[ElementSet]:
    """Every subgroup of `top` normalized by `acting`, as joins of closures of orbits."""
    top = top if top is not None else G.full()
    if acting is None and top.is_full():
        closures = {C.bits: C for _, C in class_closures(G)}
    else:
        closures = {}
        for cls in orbits(G, top, acting):
            x = next(iter(cls))
            if x:
                C = normal_closure(G, [x], acting)
                closures.setdefault(C.bits, C)
    found = {1: G.trivial()}
    frontier = [G.trivial()]
    while frontier:
        fresh = []
        for N in frontier:
            for C in closures.values():
                if C <= N:
                    continue
                J = generated_subgroup(G, generators_of(N) + generators_of(C))
                if J.bits not in found:
                    found[J.bits] = J
                    fresh.append(J)
        frontier = fresh
    return sorted(found.values(), key=default_key)


# --- Sylow and radical-type subgroups ---


def p_elements(G: FiniteGroup, p: int) -> ElementSet:
    require_prime(p)
    orders = G.orders
    return G.subset(x for x in range(G.order) if is_prime_power_of(orders[x], p))


def sylow(G: FiniteGroup, p: int) -> ElementSet:
    require_prime(p)
    target = p_part(G.order, p)
    orders = G.orders
    pel = [x for x in range(G.order) if is_prime_power_of(orders[x], p)]
    start = max(pel, key=lambda x: (orders[x], -x))
    P = generated_subgroup(G, [start])
    while P.card < target:
        N = normalizer(G, P)
        y = next(x for x in pel if x in N and x not in P)
        P = generated_subgroup(G, generators_of(P) + (y,))
    log.debug("sylow name=%s p=%d order=%d", G.name, p, P.card)
    return P


def _radical(G: FiniteGroup, test: Callable[[ElementSet], bool], tag: object) -> ElementSet:
    cached = G.memo.get(tag)
    if cached is not None:
        return cached  # type: ignore[return-value]
    R = G.trivial()
    for x, C in class_closures(G):
        if x in R or not test(C):
            continue
        R = normal_closure(G, generators_of(R) + (x,))
    G.memo[tag] = R
    return R


def o_p(G: FiniteGroup, p: int) -> ElementSet:
    """Largest normal p-subgroup."""
    require_prime(p)
    return _radical(G, lambda S: is_p_group(S, p), ("o_p", p))


def fitting(G: FiniteGroup) -> ElementSet:
    return _radical(G, is_nilpotent, "fitting")


def solvable_radical(G: FiniteGroup) -> ElementSet:
    return _radical(G, is_solvable, "radical")


def hypercenter(G: FiniteGroup) -> ElementSet:
    Z = G.trivial()
    gens = G.generator_indices
    while True:
        nxt = G.subset(g for g in range(G.order) if all(G.commutator(g, h) in Z for h in gens))
        if nxt == Z:
            return Z
        Z = nxt


def p_decomposition(G: FiniteGroup, x: int, p: int) -> tuple[int, int]:
    """(x_p, x_p') with x = x_p x_p', both powers of x."""
    order = G.orders[x]
    pe = p_part(order, p)
    m = order // pe
    if m == 1:
        return x, 0
    if pe == 1:
        return 0, x
    a = m * pow(m, -1, pe) % order
    return G.power(x, a), G.power(x, (1 - a) % order)
