# claims.py
# Registry of quantitative claims, the reference corpus and JSON reports

from __future__ import annotations

import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import asdict, dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable

from sympy import factorint
from tqdm import tqdm

import checks
from config import Settings
from errors import CapExceeded, UnknownClaim
from families import (
    FAMILIES,
    f_positive_set_finite,
    f_set,
    family,
    lambda_p_set,
    measure_finite,
    nilpotentizer,
    product_witness,
    solvabilizer,
)
from groups import center, generated_subgroup, pair_subgroup
from specs import GroupSpec, Tail, TowerElement, build_group, parse_element_literal, parse_group_spec
from structure import hypercenter, is_prime_power_of, o_p
from towers import Positivity, Tower, Verdict, f_epsilon_membership, measure_interval, positivity_classify

log = logging.getLogger(__name__)


class Status(Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


def fmt(value: object) -> str:
    """Exact text form; rationals always as num/den."""
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def parse_value(text: str | None) -> Fraction | str | None:
    """Inverse of fmt for rationals; other text is returned unchanged."""
    if text is None:
        return None
    num, sep, den = text.partition("/")
    if sep and num.lstrip("-").isdigit() and den.isdigit():
        return Fraction(int(num), int(den))
    return text


@dataclass(frozen=True)
class Outcome:
    passed: bool
    computed: object
    expected: object


@dataclass(frozen=True)
class Claim:
    id: str
    description: str
    anchor: str
    check: Callable[[int], Outcome]


@dataclass(frozen=True)
class ClaimReport:
    id: str
    status: Status
    computed: str | None
    expected: str | None
    runtime_ms: int
    anchor: str

    def to_dict(self) -> dict[str, object]:
        data = asdict(self)
        data["status"] = self.status.value
        data["paper_anchor"] = data.pop("anchor")
        return data

    @classmethod
    def from_dict(cls, data: dict[str, object]) -> ClaimReport:
        return cls(
            id=str(data["id"]),
            status=Status(data["status"]),
            computed=data.get("computed"),  # type: ignore[arg-type]
            expected=data.get("expected"),  # type: ignore[arg-type]
            runtime_ms=int(data["runtime_ms"]),  # type: ignore[arg-type]
            anchor=str(data["paper_anchor"]),
        )

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS


def dump_reports(reports: Iterable[ClaimReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2)


def load_reports(text: str) -> list[ClaimReport]:
    return [ClaimReport.from_dict(d) for d in json.loads(text)]


# --- corpus ---

CORPUS = (
    [f"cyclic({n})" for n in range(1, 13)]
    + ["sym(3)", "sym(4)", "alt(4)", "alt(5)", "dihedral(4)", "dihedral(6)"]
    + ["sl2(2)", "sl2(3)", "sl2(4)", "frob(2,3)", "frob(3,7)", "frobcyc(7,1,3)"]
    + ["wreathY(2,3,1)", "baer(2,1,3,2)", "prod(sym(3),cyclic(2))", "prod(alt(5),alt(5))"]
)


def corpus() -> list[GroupSpec]:
    return [parse_group_spec(s) for s in CORPUS]


def _corpus_groups(cap: int, max_order: int | None = None):
    for spec in corpus():
        G = build_group(str(spec), cap)
        if max_order is None or G.order <= max_order:
            yield G


def _over_corpus(cap: int, check: Callable, max_order: int | None = None, per_prime: bool = False) -> Outcome:
    results = []
    for G in _corpus_groups(cap, max_order):
        if per_prime:
            results.extend(check(G, p) for p in sorted(factorint(G.order)))
        else:
            results.append(check(G))
    verdict = checks.all_of(results)
    return Outcome(verdict.ok, verdict.detail, "holds on every corpus group")


# --- claim bodies ---


def _y_measure(t: int) -> Callable[[int], Outcome]:
    def run(cap: int) -> Outcome:
        G = build_group(f"wreathY(2,3,{t})", cap)
        x = G.power(G.distinguished, 2**t)
        value = measure_finite(G, x, family("pgroup:2"))
        expected = Fraction(1, 3 ** (2**t))
        return Outcome(value == expected, value, expected)

    return run


def _y1_sylow_unique(cap: int) -> Outcome:
    G = build_group("wreathY(2,3,1)", cap)
    g = G.distinguished
    found = f_set(G, G.power(g, 2), family("pgroup:2"))
    cyclic = generated_subgroup(G, [g])
    return Outcome(found == cyclic, found.card, cyclic.card)


def _sl_odd(q: int) -> Callable[[int], Outcome]:
    def run(cap: int) -> Outcome:
        G = build_group(f"sl2({q})", cap)
        value = measure_finite(G, 0, family("oddsolvable"))
        expected = 1 - Fraction(1, q)
        return Outcome(value == expected, value, expected)

    return run


def _baer_lambda(cap: int) -> Outcome:
    G = build_group("baer(2,1,3,3)", cap)
    ratio = Fraction(lambda_p_set(G, G.distinguished, 2).card, G.order)
    bound = Fraction(2, 3)
    return Outcome(o_p(G, 2).is_trivial() and ratio >= bound, ratio, f">= {fmt(bound)}")


def _baer_inclusion(cap: int) -> Outcome:
    G = build_group("baer(2,1,3,3)", cap)
    r = checks.baer_inclusion(G, 2)
    return Outcome(r.ok, r.detail, "V A^n σ^i inside Λ for 1 <= i < n")


def _x1_center(cap: int) -> Outcome:
    G = build_group("xt(2,3,1)", cap)
    Z, H = center(G), hypercenter(G)
    return Outcome(Z.is_trivial() and H.is_trivial(), f"|Z|={Z.card} |Z_inf|={H.card}", "|Z|=1 |Z_inf|=1")


def _x1_nil_bound(cap: int) -> Outcome:
    G = build_group("xt(2,3,1)", cap)
    g = G.distinguished
    nil = nilpotentizer(G, g)
    W = generated_subgroup(G, G.marks["W"])
    Y = generated_subgroup(G, G.marks["Y"])
    omega = [y for y in Y if is_prime_power_of(G.orders[y], 2)]
    inside = all(G.mul(w, y) in nil for w in W for y in omega)
    ratio = Fraction(nil.card, G.order)
    return Outcome(inside and ratio >= Fraction(3, 4), ratio, ">= 3/4")


def _frob_nonsubgroup(cap: int) -> Outcome:
    G = build_group("frobcyc(7,1,3)", cap)
    S = f_positive_set_finite(G, family("pgroup:3"))
    witness = product_witness(G, S)
    if witness is None:
        return Outcome(False, "closed under products", "witness pair")
    a, b = witness
    ab = G.mul(a, b)
    return Outcome(True, f"|a|={G.orders[a]} |b|={G.orders[b]} |ab|={G.orders[ab]}", "witness pair")


def _alt5_solvabilizer(cap: int) -> Outcome:
    G = build_group("alt(5)", cap)
    low, high = Fraction(1), Fraction(0)
    for x in range(1, G.order):
        mu = Fraction(solvabilizer(G, x).card, G.order)
        low, high = min(low, mu), max(high, mu)
        if not 0 < mu < 1:
            return Outcome(False, mu, "0 < μ < 1")
        if not any(pair_subgroup(G, x, y).is_full() for y in range(G.order)):  # type: ignore[union-attr]
            return Outcome(False, f"x={x} generates no Alt(5) with any y", "2-generation")
    return Outcome(True, f"{fmt(low)}..{fmt(high)}", "0 < μ < 1")


def _xtower_interval(cap: int) -> Outcome:
    T = Tower("xtower(2,3,1)", cap)
    e = TowerElement({}, Tail.DESIGNATED)
    F = family("nilpotent")
    interval = measure_interval(T, e, F, 1)
    half = f_epsilon_membership(T, e, F, Fraction(1, 2), 1)
    seven_tenths = f_epsilon_membership(T, e, F, Fraction(7, 10), 1)
    ok = interval.lo == Fraction(7, 12) and half is Verdict.YES and seven_tenths is Verdict.UNKNOWN
    return Outcome(ok, interval.lo, Fraction(7, 12))


def _ytower_zero(cap: int) -> Outcome:
    T = Tower("ytower(2,3)", cap)
    F = family("pgroup:2")
    infinite = positivity_classify(T, TowerElement({}, Tail.DESIGNATED), F, 1)
    finite = positivity_classify(T, parse_element_literal("1=d^2"), F, 1)
    ok = infinite.kind is Positivity.ZERO and finite.kind is Positivity.POSITIVE
    return Outcome(ok, f"{infinite.kind.value},{finite.kind.value}", "zero,positive")


def _slprod_partial(cap: int) -> Outcome:
    T = Tower("slprod", cap)
    interval = measure_interval(T, TowerElement(), family("oddsolvable"), 4)
    expected = Fraction(9765, 16384)
    return Outcome(interval.hi == expected, interval.hi, expected)


def _product_factorization(cap: int) -> Outcome:
    results = [checks.product_factorization(build_group(s, cap)) for s in ("prod(sym(3),cyclic(2))", "prod(alt(4),cyclic(3))")]
    verdict = checks.all_of(results)
    return Outcome(verdict.ok, verdict.detail, "F(A×B) = F(A) × F(B)")


def _dihedral_inversion(cap: int) -> Outcome:
    verdict = checks.all_of(checks.dihedral_inversion(m) for m in (3, 5, 7, 9, 25))
    return Outcome(verdict.ok, verdict.detail, "nil(reflection) = {1, x}")


def _quotient_monotonicity(cap: int) -> Outcome:
    results = [
        checks.quotient_monotonicity(G, F)
        for G in _corpus_groups(cap, 200)
        for F in [*FAMILIES.values(), *(family(f"pgroup:{p}") for p in sorted(factorint(G.order)))]
    ]
    verdict = checks.all_of(results)
    return Outcome(verdict.ok, verdict.detail, "μ does not decrease in quotients")


def _tower_bounds(cap: int) -> Outcome:
    cases = [
        ("altpow(5)", "solvable", 1),
        ("altpow(5)", "nilpotent", 1),
        ("altpow(5)", "abelian", 1),
        ("slprod", "oddsolvable", 3),
        ("ytower(2,3)", "pgroup:2", 2),
        ("xtower(2,3,1)", "nilpotent", 1),
    ]
    verdict = checks.all_of(checks.tower_bounds(Tower(t, cap), family(f), k) for t, f, k in cases)
    return Outcome(verdict.ok, verdict.detail, "registered bounds hold on every factor under the cap")


def _corpus_claim(check: Callable, max_order: int | None = None, per_prime: bool = False) -> Callable[[int], Outcome]:
    return lambda cap: _over_corpus(cap, check, max_order, per_prime)


CLAIMS: dict[str, Claim] = {
    c.id: c
    for c in [
        Claim("Y1-measure", "μ(F_{Y_1}(g^2)) for 2-groups is 1/9", "Y-product zero-measure argument: Sylow share of g^{n_t}", _y_measure(1)),
        Claim("Y2-measure", "μ(F_{Y_2}(g^4)) for 2-groups is 1/81", "Y-product zero-measure argument: Sylow share of g^{n_t}", _y_measure(2)),
        Claim("Y1-sylow-unique", "F_{Y_1}(g^2) is exactly <g>", "Y-product zero-measure argument: unique Sylow subgroup containing g^{n_t}", _y1_sylow_unique),
        Claim("SL4-odd", "odd-order elements of SL(2,4) have density 3/4", "SL(2,2^n) product example: odd-order fraction 1 - 1/2^n", _sl_odd(4)),
        Claim("SL8-odd", "odd-order elements of SL(2,8) have density 7/8", "SL(2,2^n) product example: odd-order fraction 1 - 1/2^n", _sl_odd(8)),
        Claim("baer-lambda", "O_2 trivial and |Λ_2(x)|/|G| >= 2/3 in baer(2,1,3,3)", "Λ-set lower bound construction: C_V(x) + C_V(x^g) = V", _baer_lambda),
        Claim("baer-inclusion", "the cosets V A^n σ^i lie in Λ_2(x)", "Λ-set lower bound construction: C_V(x) + C_V(x^g) = V", _baer_inclusion),
        Claim("X1-center", "X_1 has trivial center and hypercenter", "X-product construction: trivial hypercenter of X_t", _x1_center),
        Claim("X1-nil-bound", "W Ω_2(Y) lies in nil(g_W) and μ >= 3/4", "X-product construction: nilpotentizer of g_W", _x1_nil_bound),
        Claim("op-chief-centralizers", "O_p is the set of p-elements centralizing the relevant chief factors", "O_p characterization by τ statistics", _corpus_claim(checks.op_characterization, per_prime=True)),
        Claim("nil-chief-bound", "nilpotentizer bound through an abelian minimal normal subgroup", "nilpotentizer bound |Δ| <= |C_N(x_2)|", _corpus_claim(checks.nil_chief_bound)),
        Claim("lambda-coset", "Λ_p(x) ∩ yN = y C_N(x^y) C_N(x) for normal p'-subgroups", "Λ-set coset formula Λ ∩ yN = y C_N(x^y) C_N(x)", _corpus_claim(checks.lambda_coset, per_prime=True)),
        Claim("hypercenter-nilpotentizers", "the intersection of all nilpotentizers is the hypercenter", "introduction: nilpotentizer intersection equals the hypercenter", _corpus_claim(checks.hypercenter_identity)),
        Claim("frob-nonsubgroup", "3-generated-positive set of a Frobenius group is not product-closed", "introduction: Frobenius example, P is a product of order-q elements", _frob_nonsubgroup),
        Claim("alt5-solvabilizer", "0 < μ(S(x)) < 1 and 2-generation for x != 1 in Alt(5)", "alternating power example: constant c for Alt(m)", _alt5_solvabilizer),
        Claim("xtower-interval", "depth-1 interval for the designated X-tower element", "X-product construction: measure lower bound for g", _xtower_interval),
        Claim("ytower-zero", "designated Y-tower tail has measure zero, finite support is positive", "Y-product argument: positive measure forces finite support", _ytower_zero),
        Claim("slprod-partial", "SL product partial odd fraction over n = 2..5", "SL(2,2^n) product example: partial products", _slprod_partial),
        Claim("product-factorization", "family sets factor over direct products", "direct products: restricted direct power factorization", _product_factorization),
        Claim("radical-oracle", "radical, Fitting and O_p agree with the normal subgroup lattice", "radical criterion: centralizing every nonabelian chief factor", _corpus_claim(checks.radical_oracle, max_order=200)),
        Claim("exp2-characterization", "<x,y> has exponent <= 2 iff x^2 = y^2 = 1 and xy = yx", "exponent-2 family-sets: x, y of order <= 2 with xy = yx", _corpus_claim(checks.exp2_characterization, max_order=120)),
        Claim("tau-bound", "centralizer ratios are 1 or <= 1/2 and bound μ(nil)", "τ statistics: τ(g,N) <= u", _corpus_claim(checks.tau_bound)),
        Claim("sigma0-radical", "Σ_0 lies in the solvable radical", "Σ_n sets: Σ_0 inside the solvable radical", _corpus_claim(checks.sigma0_in_radical)),
        Claim("dihedral-inversion", "nil(reflection) = {1, x} in D_2m for odd prime powers m", "dihedral example: nilpotentizer of a reflection", _dihedral_inversion),
        Claim("chief-jordan-holder", "chief factor data is independent of tie-breaking", "τ statistics: independence of the chief series", _corpus_claim(checks.jordan_holder)),
        Claim("subseries-bound", "H-chief length of NM/M is at most |G:H|", "H-chief subseries bound: H-chief length of NM/M", _corpus_claim(checks.subseries_bound)),
        Claim("odd-element", "odd-order lifts outside C_G(N) exist", "odd-order elements outside C_G(N)", _corpus_claim(checks.odd_lift_outside_centralizer)),
        Claim("baer-suzuki", "Λ-sets equal to G force membership in O_p and Fit", "Baer-Suzuki consequence: Λ_p(x) = G forces x in O_p", _corpus_claim(checks.baer_suzuki)),
        Claim("nilpotency-cross-check", "counting, lower central series and hypercenter agree on nilpotency", "nilpotency: hypercenter equals G", _corpus_claim(checks.nilpotency_cross_check)),
        Claim("quotient-monotonicity", "μ(F_G(x)) <= μ(F_{G/N}(xN))", "measure definition: infimum over finite quotients", _quotient_monotonicity),
        Claim("tower-bounds", "registered per-factor bounds agree with exact factor measures", "Y-product and SL(2,2^n) product examples: per-factor bounds 1 - 1/p^{t+1} and 1 - 1/2^n", _tower_bounds),
    ]
}


def run_claim(claim_id: str, settings: Settings | None = None) -> ClaimReport:
    claim = CLAIMS.get(claim_id)
    if claim is None:
        raise UnknownClaim(f"no claim named {claim_id!r}")
    settings = settings or Settings()
    log.info("claim start id=%s", claim_id)
    start = time.perf_counter()
    try:
        outcome = claim.check(settings.cap)
    except CapExceeded as exc:
        elapsed = round((time.perf_counter() - start) * 1000)
        log.warning("claim skipped id=%s reason=%s", claim_id, exc)
        return ClaimReport(claim.id, Status.SKIPPED, str(exc), None, elapsed, claim.anchor)
    elapsed = round((time.perf_counter() - start) * 1000)
    status = Status.PASS if outcome.passed else Status.FAIL
    log.info("claim done id=%s status=%s ms=%d", claim_id, status.value, elapsed)
    return ClaimReport(claim.id, status, fmt(outcome.computed), fmt(outcome.expected), elapsed, claim.anchor)


def run_all(settings: Settings | None = None, ids: Iterable[str] | None = None, progress: bool = False) -> list[ClaimReport]:
    settings = settings or Settings()
    ids = sorted(CLAIMS) if ids is None else sorted(ids)
    reports: list[ClaimReport] = []
    with ThreadPoolExecutor(max_workers=settings.threads) as pool:
        futures = [pool.submit(run_claim, i, settings) for i in ids]
        for fut in tqdm(as_completed(futures), total=len(futures), desc="claims", disable=not progress):
            reports.append(fut.result())
    return sorted(reports, key=lambda r: r.id)
