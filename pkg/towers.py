# towers.py
# Countable direct products of finite groups and certified measure intervals

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable

from sympy import n_order

from errors import CapExceeded, UnsupportedFamily, UnsupportedTower
from families import GroupFamily, TauReport, family, measure_finite, tau_stats
from groups import DEFAULT_CAP, FiniteGroup, center, conjugacy_classes, evaluate_word, from_cycles
from specs import Tail, TowerElement, TowerSpec, build_group, parse_tower_spec
from structure import chief_series

log = logging.getLogger(__name__)

Rational = Callable[[int], Fraction]


def _one(_: int) -> Fraction:
    return Fraction(1)


def _zero(_: int) -> Fraction:
    return Fraction(0)


@dataclass(frozen=True)
class FactorBounds:
    """Per-position bounds for one family on one tower.

    Positions start at 1. `*_tail(d)` bounds from below the product of the
    per-factor values over every position after d; `uniform_upper` is a
    constant c with μ(F(x_k)) <= c for the designated element of every factor.
    """

    trivial_lower: Rational
    trivial_tail: Rational
    designated_lower: Rational = _zero
    designated_tail: Rational = _zero
    designated_upper: Rational = _one
    trivial_exact: Rational | None = None
    designated_exact: Rational | None = None
    uniform_upper: Fraction | None = None


class Positivity(Enum):
    POSITIVE = "positive"
    ZERO = "zero"
    UNKNOWN = "unknown"


class Verdict(Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class MeasureInterval:
    lo: Fraction
    hi: Fraction
    depth: int

    def __post_init__(self) -> None:
        if not 0 <= self.lo <= self.hi <= 1:
            raise ValueError(f"invalid interval [{self.lo}, {self.hi}]")

    def __contains__(self, value: Fraction) -> bool:
        return self.lo <= value <= self.hi

    def within(self, other: MeasureInterval) -> bool:
        return other.lo <= self.lo and self.hi <= other.hi


@dataclass(frozen=True)
class PositivityResult:
    kind: Positivity
    interval: MeasureInterval


class Tower:
    """The product of G_1, G_2, ... for one of the registered tower kinds."""

    def __init__(self, spec: TowerSpec | str, cap: int = DEFAULT_CAP):
        self.spec = parse_tower_spec(spec) if isinstance(spec, str) else spec
        self.cap = cap
        self.kind = self.spec.kind
        self.params = self.spec.params
        self._designated: dict[int, int] = {}
        self._uniform: dict[str, Fraction] = {}
        if self.kind == "altpow" and self.params[0] < 5:
            raise UnsupportedTower("altpow(m) needs m >= 5")
        if self.kind in ("ytower", "xtower") and self.params[0] == self.params[1]:
            raise UnsupportedTower(f"{self.spec} needs distinct primes")

    def __repr__(self) -> str:
        return f"Tower({self.spec})"

    def factor_spec(self, k: int) -> str:
        if k < 1:
            raise ValueError("tower positions start at 1")
        match self.kind:
            case "altpow":
                return f"alt({self.params[0]})"
            case "slprod":
                return f"sl2({2 ** (k + 1)})"
            case "ytower":
                p, q = self.params
                return f"wreathY({p},{q},{k})"
            case "xtower":
                p, q, s = self.params
                return f"xt({p},{q},{s + k - 1})"
        raise UnsupportedTower(self.kind)

    def factor(self, k: int) -> FiniteGroup:
        return build_group(self.factor_spec(k), self.cap)

    def designated(self, k: int) -> int:
        """The designated nontrivial element of factor k."""
        found = self._designated.get(k)
        if found is not None:
            return found
        G = self.factor(k)
        if self.kind == "altpow":
            found = G.index_of[from_cycles(G.degree, (0, 1, 2))]
        elif self.kind == "slprod":
            found = next(x for x in range(1, G.order) if G.orders[x] % 2 == 1)
        else:
            assert G.distinguished is not None
            found = G.distinguished
        self._designated[k] = found
        return found

    def element_at(self, e: TowerElement, k: int) -> int:
        word = e.support.get(k)
        if word is not None:
            return evaluate_word(self.factor(k), word)
        return self.designated(k) if e.tail is Tail.DESIGNATED else 0

    # --- bound registry ---

    def families(self) -> tuple[str, ...]:
        match self.kind:
            case "altpow":
                return ("solvable", "nilpotent", "abelian")
            case "slprod":
                return ("oddsolvable",)
            case "ytower":
                return (f"pgroup:{self.params[0]}",)
            case "xtower":
                return ("nilpotent",)
        return ()

    def bounds(self, F: GroupFamily) -> FactorBounds:
        if F.id not in self.families():
            raise UnsupportedFamily(f"{self.spec} has no bounds registered for {F.id}")
        match self.kind:
            case "altpow":
                c = self.uniform_constant(F)
                return FactorBounds(
                    trivial_lower=_one,
                    trivial_tail=_one,
                    trivial_exact=_one,
                    designated_upper=lambda k: c,
                    uniform_upper=c,
                )
            case "slprod":

                def odd_fraction(k: int) -> Fraction:
                    return 1 - Fraction(1, 2 ** (k + 1))

                return FactorBounds(
                    trivial_lower=odd_fraction,
                    trivial_tail=lambda d: 1 - Fraction(1, 2 ** (d + 1)),
                    trivial_exact=odd_fraction,
                    designated_upper=odd_fraction,
                )
            case "ytower":
                p, q = self.params
                n = n_order(q, p)

                def sylow_share(t: int) -> Fraction:
                    return Fraction(1, q ** (n * p**t))

                return FactorBounds(
                    trivial_lower=lambda t: 1 - Fraction(1, p ** (t + 1)),
                    trivial_tail=lambda d: 1 - Fraction(1, p ** (d + 1) * (p - 1)),
                    designated_lower=sylow_share,
                    designated_upper=sylow_share,
                    designated_exact=sylow_share,
                    uniform_upper=sylow_share(1),
                )
            case "xtower":
                p, q, s = self.params
                return FactorBounds(
                    trivial_lower=_one,
                    trivial_tail=_one,
                    trivial_exact=_one,
                    designated_lower=lambda k: 1 - Fraction(1, p ** (s + k)),
                    designated_tail=lambda d: 1 - Fraction(1, p ** (s + d) * (p - 1)),
                )
        raise UnsupportedTower(self.kind)

    def uniform_constant(self, F: GroupFamily) -> Fraction:
        """max over x != 1 of μ(F(x)) in the (single) factor of an altpow tower."""
        found = self._uniform.get(F.id)
        if found is None:
            G = self.factor(1)
            found = max(measure_finite(G, next(iter(c)), F) for c in conjugacy_classes(G)[1:])
            self._uniform[F.id] = found
            log.debug("uniform constant tower=%s family=%s c=%s", self.spec, F.id, found)
        return found

    def factor_value(self, e: TowerElement, k: int, F: GroupFamily) -> Fraction:
        """Exact μ(F_{G_k}(e_k)), from a registered closed form when one applies."""
        b = self.bounds(F)
        if k not in e.support:
            if e.tail is Tail.TRIVIAL and b.trivial_exact is not None:
                return b.trivial_exact(k)
            if e.tail is Tail.DESIGNATED and b.designated_exact is not None:
                return b.designated_exact(k)
        return measure_finite(self.factor(k), self.element_at(e, k), F)

    def verify_bounds(self, F: GroupFamily, upto: int) -> tuple[int, list[str]]:
        """Compare registered bounds with exact values on factors 1..upto.

        Stops at the first factor over the cap; raises CapExceeded when even
        the first factor is too large. Returns the number of factors
        checked and a description of every violated bound.
        """
        b = self.bounds(F)
        checked = 0
        bad: list[str] = []
        for k in range(1, upto + 1):
            try:
                G = self.factor(k)
            except CapExceeded:
                if k == 1:
                    raise
                break
            trivial = measure_finite(G, 0, F)
            designated = measure_finite(G, self.designated(k), F)
            if trivial < b.trivial_lower(k):
                bad.append(f"factor {k}: trivial {trivial} < lower {b.trivial_lower(k)}")
            if b.trivial_exact is not None and trivial != b.trivial_exact(k):
                bad.append(f"factor {k}: trivial {trivial} != closed form {b.trivial_exact(k)}")
            if not b.designated_lower(k) <= designated <= b.designated_upper(k):
                bad.append(
                    f"factor {k}: designated {designated} outside "
                    f"[{b.designated_lower(k)}, {b.designated_upper(k)}]"
                )
            if b.designated_exact is not None and designated != b.designated_exact(k):
                bad.append(f"factor {k}: designated {designated} != closed form {b.designated_exact(k)}")
            if b.uniform_upper is not None and designated > b.uniform_upper:
                bad.append(f"factor {k}: designated {designated} > uniform {b.uniform_upper}")
            checked += 1
        log.debug("bounds tower=%s family=%s checked=%d violations=%d", self.spec, F.id, checked, len(bad))
        return checked, bad


def tower(text: str, cap: int = DEFAULT_CAP) -> Tower:
    return Tower(parse_tower_spec(text), cap)


def _check_depth(e: TowerElement, depth: int) -> None:
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if e.support and max(e.support) > depth:
        raise ValueError(f"depth {depth} does not cover support position {max(e.support)}")


def truncate(T: Tower, depth: int) -> FiniteGroup:
    """The direct product of the first `depth` factors."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    parts = ",".join(T.factor_spec(k) for k in range(1, depth + 1))
    return build_group(f"prod({parts})", T.cap)


def measure_interval(T: Tower, e: TowerElement, F: GroupFamily, depth: int) -> MeasureInterval:
    _check_depth(e, depth)
    b = T.bounds(F)
    partial = Fraction(1)
    for k in range(1, depth + 1):
        partial *= T.factor_value(e, k, F)
    if e.tail is Tail.TRIVIAL:
        lo, hi = partial * b.trivial_tail(depth), partial
    else:
        lo, hi = partial * b.designated_tail(depth), partial * b.designated_upper(depth + 1)
    log.info("measure tower=%s family=%s depth=%d lo=%s hi=%s", T.spec, F.id, depth, lo, hi)
    return MeasureInterval(lo, hi, depth)


def positivity_classify(T: Tower, e: TowerElement, F: GroupFamily, depth: int) -> PositivityResult:
    interval = measure_interval(T, e, F, depth)
    if interval.lo > 0:
        return PositivityResult(Positivity.POSITIVE, interval)
    c = T.bounds(F).uniform_upper
    if interval.hi == 0 or (e.tail is Tail.DESIGNATED and c is not None and c < 1):
        return PositivityResult(Positivity.ZERO, interval)
    return PositivityResult(Positivity.UNKNOWN, interval)


def f_epsilon_membership(T: Tower, e: TowerElement, F: GroupFamily, epsilon: Fraction, depth: int) -> Verdict:
    if not 0 < epsilon <= 1:
        raise ValueError(f"epsilon must lie in (0, 1], got {epsilon}")
    interval = measure_interval(T, e, F, depth)
    if interval.lo >= epsilon:
        return Verdict.YES
    if interval.hi < epsilon:
        return Verdict.NO
    return Verdict.UNKNOWN


def fc_membership(T: Tower, e: TowerElement, spot: int = 2) -> bool:
    """Finite support, for towers whose small factors are verified centerless."""
    verified = 0
    for k in range(1, spot + 1):
        try:
            G = T.factor(k)
        except CapExceeded:
            break
        if not center(G).is_trivial():
            raise UnsupportedTower(f"factor {k} of {T.spec} has a nontrivial center")
        verified += 1
    if not verified:
        raise UnsupportedTower(f"no factor of {T.spec} fits under the cap")
    return e.tail is Tail.TRIVIAL


def tau_profile(T: Tower, e: TowerElement, depth: int) -> list[TauReport]:
    """Cumulative τ statistics of e over the first 1..depth factors."""
    _check_depth(e, depth)
    total = TauReport()
    profile = []
    for k in range(1, depth + 1):
        G = T.factor(k)
        total = total + tau_stats(G, T.element_at(e, k), chief_series(G))
        profile.append(total)
    return profile


def family_for(T: Tower, fid: str | None) -> GroupFamily:
    """The named family, or the tower's first registered one."""
    return family(fid if fid is not None else T.families()[0])
