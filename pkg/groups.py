# groups.py
# Permutation groups as fully enumerated, indexed element tables

from __future__ import annotations

import logging
import math
import re
import threading
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from errors import CapExceeded, GroupError, SpecSyntaxError

log = logging.getLogger(__name__)

DEFAULT_CAP = 200_000
DEFAULT_CACHE_BYTES = 64 << 20

# images[i] is where point i goes; products read left to right ("a then b").
Permutation = tuple[int, ...]

_cache_budget = DEFAULT_CACHE_BYTES


def set_cache_budget(nbytes: int) -> None:
    """Byte budget for pair-subgroup caches of groups created from now on."""
    global _cache_budget
    _cache_budget = max(0, nbytes)


# --- raw permutation arithmetic ---


def identity_perm(degree: int) -> Permutation:
    return tuple(range(degree))


def compose(a: Permutation, b: Permutation) -> Permutation:
    return tuple(map(b.__getitem__, a))


def invert(a: Permutation) -> Permutation:
    inv = [0] * len(a)
    for i, j in enumerate(a):
        inv[j] = i
    return tuple(inv)


def perm_order(a: Permutation) -> int:
    seen = bytearray(len(a))
    order = 1
    for start in range(len(a)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = 1
            i = a[i]
            length += 1
        order = math.lcm(order, length)
    return order


def from_cycles(degree: int, *cycles: Sequence[int]) -> Permutation:
    images = list(range(degree))
    for cycle in cycles:
        for k, point in enumerate(cycle):
            images[point] = cycle[(k + 1) % len(cycle)]
    return check_perm(images, degree)


def check_perm(images: Iterable[int], degree: int) -> Permutation:
    perm = tuple(images)
    if len(perm) != degree or sorted(perm) != list(range(degree)):
        raise GroupError(f"not a permutation of {degree} points: {perm}")
    return perm


def _bits_from_indices(indices: Iterable[int], order: int) -> int:
    buf = bytearray((order + 7) // 8)
    for i in indices:
        buf[i >> 3] |= 1 << (i & 7)
    return int.from_bytes(buf, "little")


# --- element sets ---


@dataclass(frozen=True, eq=False)
class ElementSet:
    """A subset of a group's elements, stored as a bitset over element indices."""

    parent: FiniteGroup
    bits: int
    gens: tuple[int, ...] = field(default=(), repr=False)
    card: int = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "card", self.bits.bit_count())

    def __contains__(self, index: int) -> bool:
        return (self.bits >> index) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def __len__(self) -> int:
        return self.card

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ElementSet):
            return NotImplemented
        return self.parent is other.parent and self.bits == other.bits

    def __hash__(self) -> int:
        return hash((id(self.parent), self.bits))

    def __le__(self, other: ElementSet) -> bool:
        return self.bits & ~other.bits == 0

    def __lt__(self, other: ElementSet) -> bool:
        return self <= other and self.bits != other.bits

    def __and__(self, other: ElementSet) -> ElementSet:
        return ElementSet(self.parent, self.bits & other.bits)

    def __or__(self, other: ElementSet) -> ElementSet:
        return ElementSet(self.parent, self.bits | other.bits)

    def __sub__(self, other: ElementSet) -> ElementSet:
        return ElementSet(self.parent, self.bits & ~other.bits)

    def members(self) -> list[int]:
        return list(self)

    def is_trivial(self) -> bool:
        return self.bits == 1

    def is_full(self) -> bool:
        return self.card == self.parent.order

    def __repr__(self) -> str:
        name = self.parent.name or "group"
        return f"ElementSet({name}, card={self.card})"


class PairCache:
    """Memo of two-generator subgroups keyed on the unordered index pair."""

    def __init__(self, budget: int):
        self.budget = budget
        self._entries: dict[tuple[int, int], ElementSet] = {}
        self._bytes = 0
        self._lock = threading.Lock()

    def get(self, key: tuple[int, int]) -> ElementSet | None:
        return self._entries.get(key)

    def put(self, key: tuple[int, int], value: ElementSet) -> None:
        size = value.bits.bit_length() // 8 + 96
        if size > self.budget:
            return
        # Racing writers store equal values; last one wins.
        with self._lock:
            if key not in self._entries:
                self._bytes += size
            self._entries[key] = value
            while self._bytes > self.budget and self._entries:
                old_key = next(iter(self._entries))
                old = self._entries.pop(old_key)
                self._bytes -= old.bits.bit_length() // 8 + 96

    def __len__(self) -> int:
        return len(self._entries)


# --- groups ---


class FiniteGroup:
    """A permutation group with every element enumerated.

    Index 0 is the identity; the rest follow breadth-first order from the
    identity, right-multiplying by the generators in their listed order.
    """

    def __init__(
        self,
        degree: int,
        generators: Sequence[Permutation],
        elements: list[Permutation],
        index_of: dict[Permutation, int],
        name: str = "",
    ):
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(generators)
        self.elements = elements
        self.index_of = index_of
        self.order = len(elements)
        self.name = name
        # (factor, point offset) for groups built as direct products
        self.factors: tuple[tuple[FiniteGroup, int], ...] = ()
        # element singled out by the constructor (g of Y_t, g_W of X_t, x of the Baer group)
        self.distinguished: int | None = None
        # named generator subsets, e.g. "W" and "Y" for the X construction
        self.marks: dict[str, tuple[int, ...]] = {}
        self.pair_cache = PairCache(_cache_budget)
        self.membership: dict[tuple[str, int], bool] = {}
        self._inverse: dict[int, int] = {}
        self._classes: list[ElementSet] | None = None
        self.memo: dict[object, object] = {}

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.order}, degree={self.degree})"

    def __len__(self) -> int:
        return self.order

    identity = 0

    @cached_property
    def generator_indices(self) -> tuple[int, ...]:
        return tuple(dict.fromkeys(self.index_of[g] for g in self.generators if self.index_of[g] != 0))

    @cached_property
    def orders(self) -> list[int]:
        return [perm_order(e) for e in self.elements]

    def mul(self, a: int, b: int) -> int:
        return self.index_of[compose(self.elements[a], self.elements[b])]

    def inv(self, a: int) -> int:
        found = self._inverse.get(a)
        if found is None:
            found = self.index_of[invert(self.elements[a])]
            self._inverse[a] = found
        return found

    def power(self, a: int, k: int) -> int:
        k %= self.orders[a]
        result = identity_perm(self.degree)
        base = self.elements[a]
        while k:
            if k & 1:
                result = compose(result, base)
            base = compose(base, base)
            k >>= 1
        return self.index_of[result]

    def conjugate(self, x: int, g: int) -> int:
        """x^g = g^-1 x g."""
        eg = self.elements[g]
        return self.index_of[compose(compose(invert(eg), self.elements[x]), eg)]

    def commutator(self, a: int, b: int) -> int:
        """[a, b] = a^-1 b^-1 a b."""
        ea, eb = self.elements[a], self.elements[b]
        return self.index_of[compose(compose(invert(ea), invert(eb)), compose(ea, eb))]

    def commute(self, a: int, b: int) -> bool:
        ea, eb = self.elements[a], self.elements[b]
        return compose(ea, eb) == compose(eb, ea)

    def element_order(self, x: int) -> int:
        return self.orders[x]

    def subset(self, indices: Iterable[int], gens: Sequence[int] = ()) -> ElementSet:
        return ElementSet(self, _bits_from_indices(indices, self.order), tuple(gens))

    def full(self) -> ElementSet:
        return ElementSet(self, (1 << self.order) - 1, self.generator_indices)

    def trivial(self) -> ElementSet:
        return ElementSet(self, 1)


def closure(
    degree: int,
    generators: Sequence[Sequence[int]],
    cap: int = DEFAULT_CAP,
    name: str = "",
) -> FiniteGroup:
    """Enumerate <generators> breadth-first from the identity."""
    if cap < 1:
        raise ValueError("cap must be positive")
    gens = [check_perm(g, degree) for g in generators]
    identity = identity_perm(degree)
    elements = [identity]
    index_of = {identity: 0}
    i = 0
    while i < len(elements):
        e = elements[i]
        for s in gens:
            n = compose(e, s)
            if n not in index_of:
                if len(elements) >= cap:
                    raise CapExceeded(cap, what=name or "closure")
                index_of[n] = len(elements)
                elements.append(n)
        i += 1
    log.debug("closure name=%s order=%d degree=%d gens=%d", name, len(elements), degree, len(gens))
    return FiniteGroup(degree, gens, elements, index_of, name)


# --- subgroups ---


def bounded_subgroup(G: FiniteGroup, seed: Iterable[int], limit: int | None = None) -> ElementSet | None:
    """<seed> inside G, or None as soon as it grows past `limit` elements."""
    gens_idx = tuple(s for s in dict.fromkeys(seed) if s != 0)
    gens = [G.elements[s] for s in gens_idx]
    identity = G.elements[0]
    seen = {identity}
    queue = [identity]
    i = 0
    while i < len(queue):
        e = queue[i]
        for s in gens:
            n = compose(e, s)
            if n not in seen:
                seen.add(n)
                queue.append(n)
                if limit is not None and len(queue) > limit:
                    return None
        i += 1
    index_of = G.index_of
    return ElementSet(G, _bits_from_indices((index_of[p] for p in queue), G.order), gens_idx)


def generated_subgroup(G: FiniteGroup, seed: Iterable[int]) -> ElementSet:
    found = bounded_subgroup(G, seed)
    assert found is not None
    return found


def pair_subgroup(G: FiniteGroup, x: int, y: int, limit: int | None = None) -> ElementSet | None:
    key = (x, y) if x <= y else (y, x)
    hit = G.pair_cache.get(key)
    if hit is not None:
        return hit if limit is None or hit.card <= limit else None
    found = bounded_subgroup(G, key, limit)
    if found is not None:
        G.pair_cache.put(key, found)
    return found


def generators_of(S: ElementSet) -> tuple[int, ...]:
    """A generating set of the subgroup S (greedy over increasing indices)."""
    if S.gens or S.is_trivial():
        return S.gens
    G = S.parent
    gens: list[int] = []
    H = G.trivial()
    for m in S:
        if m not in H:
            gens.append(m)
            H = generated_subgroup(G, gens)
            if H.card == S.card:
                break
    return tuple(gens)


def with_generators(S: ElementSet) -> ElementSet:
    if S.gens or S.is_trivial():
        return S
    return ElementSet(S.parent, S.bits, generators_of(S))


def centralizer(G: FiniteGroup, x: int) -> ElementSet:
    ex = G.elements[x]
    return G.subset(
        i for i, ey in enumerate(G.elements) if compose(ex, ey) == compose(ey, ex)
    )


def center(G: FiniteGroup) -> ElementSet:
    gens = [G.elements[g] for g in G.generator_indices]
    return G.subset(
        i
        for i, ey in enumerate(G.elements)
        if all(compose(eg, ey) == compose(ey, eg) for eg in gens)
    )


def conjugate(G: FiniteGroup, x: int, g: int) -> int:
    return G.conjugate(x, g)


def normal_closure(G: FiniteGroup, seed: Iterable[int], acting: Sequence[int] | None = None) -> ElementSet:
    """Smallest subgroup containing `seed` and normalized by `acting` (default: all of G)."""
    acting = G.generator_indices if acting is None else tuple(acting)
    gens = [s for s in dict.fromkeys(seed) if s != 0]
    H = generated_subgroup(G, gens)
    i = 0
    while i < len(gens):
        h = gens[i]
        for a in acting:
            c = G.conjugate(h, a)
            if c not in H:
                gens.append(c)
                H = generated_subgroup(G, gens)
        i += 1
    return H


def commutator_subgroup(G: FiniteGroup, A: ElementSet, B: ElementSet) -> ElementSet:
    """[A, B]: the normal closure in <A, B> of the commutators of generators."""
    gens_a = generators_of(A)
    gens_b = generators_of(B)
    seed = [G.commutator(a, b) for a in gens_a for b in gens_b]
    return normal_closure(G, seed, acting=tuple(dict.fromkeys(gens_a + gens_b)))


def conjugacy_classes(G: FiniteGroup) -> list[ElementSet]:
    """Conjugacy classes, ordered by their least element index."""
    if G._classes is not None:
        return G._classes
    gens = [G.elements[g] for g in G.generator_indices]
    pairs = [(invert(g), g) for g in gens]
    owner = [-1] * G.order
    classes: list[ElementSet] = []
    for x in range(G.order):
        if owner[x] >= 0:
            continue
        owner[x] = len(classes)
        orbit = [x]
        k = 0
        while k < len(orbit):
            e = G.elements[orbit[k]]
            for gi, g in pairs:
                c = G.index_of[compose(compose(gi, e), g)]
                if owner[c] < 0:
                    owner[c] = len(classes)
                    orbit.append(c)
            k += 1
        classes.append(G.subset(orbit))
    G._classes = classes
    log.debug("conjugacy classes name=%s count=%d", G.name, len(classes))
    return classes


# --- words ---

_TOKEN = re.compile(r"^(g(\d+)|e|d)(\^(-?\d+))?$")


@dataclass(frozen=True)
class Word:
    """A product of generator powers; generator -1 is the identity, -2 the distinguished element."""

    letters: tuple[tuple[int, int], ...]

    def __str__(self) -> str:
        parts = []
        for gen, exp in self.letters:
            base = "e" if gen == -1 else "d" if gen == -2 else f"g{gen}"
            parts.append(base if exp == 1 else f"{base}^{exp}")
        return "*".join(parts) or "e"


def parse_word(text: str) -> Word:
    compact = "".join(text.split())
    if not compact:
        raise SpecSyntaxError("empty word")
    letters = []
    for token in compact.split("*"):
        m = _TOKEN.match(token)
        if m is None:
            raise SpecSyntaxError(f"bad word token {token!r} in {text!r}")
        base, gen, _, exp = m.groups()
        index = int(gen) if gen is not None else (-1 if base == "e" else -2)
        letters.append((index, int(exp) if exp is not None else 1))
    return Word(tuple(letters))


def evaluate_word(G: FiniteGroup, word: Word) -> int:
    result = 0
    for gen, exp in word.letters:
        if gen == -1:
            continue
        if gen == -2:
            if G.distinguished is None:
                raise SpecSyntaxError(f"{G.name or 'group'} has no distinguished element")
            base = G.distinguished
        else:
            if gen >= len(G.generators):
                raise SpecSyntaxError(f"g{gen} out of range: {G.name or 'group'} has {len(G.generators)} generators")
            base = G.index_of[G.generators[gen]]
        result = G.mul(result, G.power(base, exp))
    return result
