# constructors.py
# Named groups and product constructions as permutation groups

from __future__ import annotations

import logging
import math
from typing import Callable, Sequence

from sympy import factorint, isprime, n_order, primitive_root

from errors import CapExceeded, ConstructionError, InvalidAction, InvalidParams, NoSuchAction
from fields import field
from groups import (
    DEFAULT_CAP,
    FiniteGroup,
    Permutation,
    center,
    closure,
    from_cycles,
    generated_subgroup,
    identity_perm,
)
from structure import o_p

log = logging.getLogger(__name__)

# right action: action(action(n, a), b) == action(n, a*b)
Action = Callable[[int, int], int]


def _predict(order: int, cap: int, what: str) -> None:
    if order > cap:
        raise CapExceeded(cap, order, what)


def _expect(G: FiniteGroup, order: int) -> FiniteGroup:
    if G.order != order:
        raise ConstructionError(f"{G.name} has order {G.order}, expected {order}")
    return G


def _require_prime(*values: int) -> None:
    for v in values:
        if not isprime(v):
            raise InvalidParams(f"{v} is not prime")


# --- small standard groups ---


def cyclic(n: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    if n < 1:
        raise InvalidParams("cyclic(n) needs n >= 1")
    _predict(n, cap, f"cyclic({n})")
    shift = tuple((i + 1) % n for i in range(n))
    return _expect(closure(n, [shift], cap, f"cyclic({n})"), n)


def sym(m: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    if m < 1:
        raise InvalidParams("sym(m) needs m >= 1")
    order = math.factorial(m)
    _predict(order, cap, f"sym({m})")
    gens = []
    if m >= 2:
        gens = [from_cycles(m, tuple(range(m))), from_cycles(m, (0, 1))]
    return _expect(closure(m, gens, cap, f"sym({m})"), order)


def alt(m: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    if m < 1:
        raise InvalidParams("alt(m) needs m >= 1")
    order = max(1, math.factorial(m) // 2)
    _predict(order, cap, f"alt({m})")
    gens = [from_cycles(m, (0, 1, i)) for i in range(2, m)]
    return _expect(closure(m, gens, cap, f"alt({m})"), order)


def dihedral(n: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """Dihedral group of order 2n."""
    if n < 1:
        raise InvalidParams("dihedral(n) needs n >= 1")
    _predict(2 * n, cap, f"dihedral({n})")
    rotation = [(i + 1) % n for i in range(n)]
    reflection = [(-i) % n for i in range(n)]
    degree = n
    if n < 3:
        # the n-gon action is not faithful; a swapped pair of extra points fixes that
        degree = n + 2
        rotation += [n, n + 1]
        reflection += [n + 1, n]
    G = closure(degree, [tuple(rotation), tuple(reflection)], cap, f"dihedral({n})")
    return _expect(G, 2 * n)


# --- products ---


def direct_product(groups: Sequence[FiniteGroup], cap: int = DEFAULT_CAP) -> FiniteGroup:
    order = math.prod(g.order for g in groups)
    name = "prod(" + ",".join(g.name for g in groups) + ")"
    _predict(order, cap, name)
    degree = sum(g.degree for g in groups)
    gens: list[Permutation] = []
    factors = []
    offset = 0
    for g in groups:
        for s in g.generators:
            images = list(range(degree))
            for i, j in enumerate(s):
                images[offset + i] = offset + j
            gens.append(tuple(images))
        factors.append((g, offset))
        offset += g.degree
    G = _expect(closure(max(degree, 1), gens, cap, name), order)
    G.factors = tuple(factors)
    if any(g.distinguished is not None for g in groups):
        G.distinguished = combine(G, [g.distinguished or 0 for g in groups])
    return G


def combine(G: FiniteGroup, coords: Sequence[int]) -> int:
    """Index in the direct product G of the tuple of factor element indices."""
    if len(coords) != len(G.factors):
        raise ValueError(f"{G.name} has {len(G.factors)} factors, got {len(coords)} coordinates")
    images: list[int] = []
    for (factor, offset), x in zip(G.factors, coords):
        images.extend(offset + j for j in factor.elements[x])
    if not images:
        images = [0]
    return G.index_of[tuple(images)]


def embed(G: FiniteGroup, i: int, x: int) -> int:
    coords = [0] * len(G.factors)
    coords[i] = x
    return combine(G, coords)


def project(G: FiniteGroup, x: int, i: int) -> int:
    factor, offset = G.factors[i]
    images = G.elements[x][offset : offset + factor.degree]
    return factor.index_of[tuple(j - offset for j in images)]


def semidirect_product(
    N: FiniteGroup,
    H: FiniteGroup,
    action: Action,
    cap: int = DEFAULT_CAP,
    name: str = "",
) -> FiniteGroup:
    """N ⋊ H where h acts on N by n -> action(n, h).

    N is realized by its right-regular action on its own elements, with h
    acting through the automorphism it induces. H's own points are added
    only when H does not act faithfully.
    """
    name = name or f"{N.name}:{H.name}"
    order = N.order * H.order
    _predict(order, cap, name)
    _check_action(N, H, action)

    autos: list[Permutation] = [tuple(action(n, h) for n in range(N.order)) for h in range(H.order)]
    faithful = all(autos[h] != identity_perm(N.order) for h in range(1, H.order))
    degree = N.order + (0 if faithful else H.degree)

    gens: list[Permutation] = []
    for s in N.generator_indices:
        images = [N.mul(m, s) for m in range(N.order)]
        images += range(N.order, degree)
        gens.append(tuple(images))
    for s in H.generator_indices:
        images = list(autos[s])
        if not faithful:
            images += [N.order + j for j in H.elements[s]]
        gens.append(tuple(images))
    G = _expect(closure(max(degree, 1), gens, cap, name), order)
    G.marks["N"] = tuple(G.index_of[g] for g in gens[: len(N.generator_indices)])
    G.marks["H"] = tuple(G.index_of[g] for g in gens[len(N.generator_indices) :])
    log.debug("semidirect name=%s order=%d faithful=%s", name, order, faithful)
    return G


def _check_action(N: FiniteGroup, H: FiniteGroup, action: Action) -> None:
    table = [[action(n, h) for h in range(H.order)] for n in range(N.order)]
    for n in range(N.order):
        if table[n][0] != n:
            raise InvalidAction("identity of H must act trivially")
    for h in range(H.order):
        images = [table[n][h] for n in range(N.order)]
        if sorted(images) != list(range(N.order)):
            raise InvalidAction(f"element {h} of H does not act bijectively")
        # multiplicativity on generators of N extends to all of N
        for m in range(N.order):
            for s in N.generator_indices:
                if table[N.mul(m, s)][h] != N.mul(table[m][h], table[s][h]):
                    raise InvalidAction(f"element {h} of H does not act by automorphisms")
    for n in range(N.order):
        for a in range(H.order):
            for b in H.generator_indices:
                if table[table[n][a]][b] != table[n][H.mul(a, b)]:
                    raise InvalidAction("action is not compatible with multiplication in H")


def wreath_product(H: FiniteGroup, C: FiniteGroup, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """H ≀ C in its imprimitive action; C permutes C.degree blocks of H.degree points."""
    n = C.degree
    name = f"wreath({H.name},{C.name})"
    order = H.order**n * C.order
    _predict(order, cap, name)
    d = H.degree
    degree = n * d
    gens: list[Permutation] = []
    for b in range(n):
        for s in H.generators:
            images = list(range(degree))
            for i, j in enumerate(s):
                images[b * d + i] = b * d + j
            gens.append(tuple(images))
    for s in C.generators:
        gens.append(tuple(s[b] * d + i for b in range(n) for i in range(d)))
    return _expect(closure(degree, gens, cap, name), order)


# --- Frobenius groups ---


def frobenius(p: int, q: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """(GF(q^n), +) ⋊ C_p with n the order of q mod p; C_p multiplies by a unit of order p.

    The distinguished element is the canonical generator of C_p.
    """
    _require_prime(p, q)
    if p == q:
        raise InvalidParams("frobenius(p, q) needs distinct primes")
    n = n_order(q, p)
    name = f"frob({p},{q})"
    _predict(q**n * p, cap, name)
    F = field(q, n)
    Q = closure(F.q, [tuple(F.add(v, b) for v in range(F.q)) for b in F.basis()], cap, f"GF({F.q})")
    omega = F.pow(F.generator, (F.q - 1) // p)
    # the translation with index i moves 0 to elements[i][0]
    value = [e[0] for e in Q.elements]
    index = {v: i for i, v in enumerate(value)}
    P = cyclic(p)

    def act(i: int, j: int) -> int:
        return index[F.mul(F.pow(omega, j), value[i])]

    for j in range(1, p):
        if any(act(i, j) == i for i in range(1, Q.order)):
            raise ConstructionError(f"{name}: complement fixes a nonidentity translation")
    G = semidirect_product(Q, P, act, cap, name)
    G.marks["Q"] = G.marks.pop("N")
    G.marks["P"] = G.marks.pop("H")
    G.distinguished = G.marks["P"][0]
    return G


def frob_cyclic(p: int, m: int, q: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """C_{p^m} ⋊ C_q with the generator of C_q acting as x -> x^k."""
    _require_prime(p, q)
    if m < 1:
        raise InvalidParams("frobcyc(p, m, q) needs m >= 1")
    pm = p**m
    name = f"frobcyc({p},{m},{q})"
    if (p - 1) % q:
        raise NoSuchAction(f"{name}: {q} does not divide {p - 1}")
    k = next((k for k in range(2, pm) if math.gcd(k, p) == 1 and n_order(k, pm) == q and k % p != 1), None)
    if k is None:
        raise NoSuchAction(f"{name}: no unit of order {q} acts fixed-point-freely")
    _predict(pm * q, cap, name)
    # index i of cyclic(n) is the i-th power of the generator
    G = semidirect_product(cyclic(pm), cyclic(q), lambda i, j: i * pow(k, j, pm) % pm, cap, name)
    G.distinguished = G.marks["H"][0]
    return G


# --- wreath-type counterexample groups ---


def wreath_Y(p: int, q: int, t: int, cap: int = DEFAULT_CAP) -> tuple[FiniteGroup, int]:
    """Y_t = Q^(p^t) <g> inside frob(p,q) ≀ C_(p^t), g = (h, 1, ..., 1) sigma."""
    _require_prime(p, q)
    if p == q or t < 1:
        raise InvalidParams("wreathY(p, q, t) needs distinct primes and t >= 1")
    n = n_order(q, p)
    blocks = p**t
    name = f"wreathY({p},{q},{t})"
    order = q ** (n * blocks) * p ** (t + 1)
    _predict(order, cap, name)
    F = field(q, n)
    omega = F.pow(F.generator, (F.q - 1) // p)
    width = F.q
    degree = blocks * width

    gens: list[Permutation] = []
    for b in F.basis():
        images = list(range(degree))
        for v in range(width):
            images[v] = F.add(v, b)
        gens.append(tuple(images))
    g = [0] * degree
    for blk in range(blocks):
        dst = (blk + 1) % blocks
        for v in range(width):
            g[blk * width + v] = dst * width + (F.mul(omega, v) if blk == 0 else v)
    gens.append(tuple(g))

    G = _expect(closure(degree, gens, cap, name), order)
    G.distinguished = G.index_of[tuple(g)]
    G.marks["Q"] = tuple(G.index_of[s] for s in gens[:-1])
    G.marks["g"] = (G.distinguished,)
    return G, G.distinguished


def group_X(p: int, q: int, t: int, cap: int = DEFAULT_CAP) -> tuple[FiniteGroup, int]:
    """X_t = W_t ⋊ Y_t, W_t the product-one vectors of C_(p^t) over the cosets of <g> in Y_t."""
    Y, g = wreath_Y(p, q, t, cap)
    name = f"xt({p},{q},{t})"
    # <g> has order p^(t+1), the full p-part of |Y|
    R = generated_subgroup(Y, [g])
    k = Y.order // R.card
    m = p**t
    order = m ** (k - 1) * Y.order
    _predict(order, cap, name)

    coset_of = [-1] * Y.order
    reps: list[int] = []
    for x in range(Y.order):
        if coset_of[x] < 0:
            for r in R:
                coset_of[Y.mul(r, x)] = len(reps)
            reps.append(x)

    degree = k * m
    gens: list[Permutation] = []
    for i in range(1, k):
        images = list(range(degree))
        for a in range(m):
            images[a] = (a + 1) % m
            images[i * m + a] = i * m + (a - 1) % m
        gens.append(tuple(images))
    w_count = len(gens)
    for s in Y.generator_indices:
        moved = [coset_of[Y.mul(r, s)] for r in reps]
        gens.append(tuple(moved[c] * m + a for c in range(k) for a in range(m)))

    G = _expect(closure(degree, gens, cap, name), order)
    if not center(G).is_trivial():
        raise ConstructionError(f"{name} has a nontrivial center")
    G.marks["W"] = tuple(G.index_of[s] for s in gens[:w_count])
    G.marks["Y"] = tuple(G.index_of[s] for s in gens[w_count:])
    G.distinguished = G.marks["W"][0]
    return G, G.distinguished


def baer_group(p: int, t: int, q: int, n: int, cap: int = DEFAULT_CAP) -> tuple[FiniteGroup, int]:
    """V ⋊ (A ≀ C_n) on GF(q)^n with A = <lambda> of order p^t; x = (lambda, 1, ..., 1)."""
    _require_prime(p, q)
    if t < 1 or n < 1:
        raise InvalidParams("baer(p, t, q, n) needs t, n >= 1")
    pt = p**t
    if (q - 1) % pt:
        raise InvalidParams(f"{pt} does not divide {q - 1}")
    name = f"baer({p},{t},{q},{n})"
    order = q**n * pt**n * n
    _predict(order, cap, name)
    lam = pow(primitive_root(q), (q - 1) // pt, q)
    degree = q**n

    def coords(v: int) -> list[int]:
        return [(v // q**i) % q for i in range(n)]

    def point(c: list[int]) -> int:
        return sum(ci * q**i for i, ci in enumerate(c))

    translate, scale, shift = [], [], []
    for v in range(degree):
        c = coords(v)
        translate.append(point([(c[0] + 1) % q] + c[1:]))
        scale.append(point([(c[0] * lam) % q] + c[1:]))
        shift.append(point([c[-1]] + c[:-1]))
    gens = [tuple(translate), tuple(scale), tuple(shift)]
    G = _expect(closure(degree, gens, cap, name), order)

    if not o_p(G, p).is_trivial():
        raise ConstructionError(f"{name} has a nontrivial normal {p}-subgroup")
    x = G.index_of[tuple(scale)]
    G.distinguished = x
    G.marks.update(V=(G.index_of[gens[0]],), A=(x,), C=(G.index_of[gens[2]],) if n > 1 else ())
    return G, x


# --- SL(2, q) ---


def sl2(q: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """SL(2, q) on the q^2 - 1 nonzero row vectors; vector (a, b) is point a*q + b - 1."""
    powers = factorint(q) if q > 1 else {}
    if len(powers) != 1:
        raise InvalidParams(f"sl2(q) needs a prime power, got {q}")
    ((p, k),) = powers.items()
    name = f"sl2({q})"
    order = q * (q * q - 1)
    _predict(order, cap, name)
    F = field(p, k)
    degree = q * q - 1

    def pt(a: int, b: int) -> int:
        return a * q + b - 1

    gens: list[Permutation] = []
    for t in F.basis():
        upper = [0] * degree  # (a, b) -> (a, b + t a)
        lower = [0] * degree  # (a, b) -> (a + t b, b)
        for a in range(q):
            for b in range(q):
                if a == 0 and b == 0:
                    continue
                upper[pt(a, b)] = pt(a, F.add(b, F.mul(t, a)))
                lower[pt(a, b)] = pt(F.add(a, F.mul(t, b)), b)
        gens += [tuple(upper), tuple(lower)]
    return _expect(closure(degree, gens, cap, name), order)
