# specs.py
# Text forms: group specs, tower specs and tower element literals

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import constructors as C
from errors import SpecSyntaxError
from groups import DEFAULT_CAP, FiniteGroup, Word, parse_word

# constructor name -> number of integer parameters
ARITY = {
    "cyclic": 1,
    "sym": 1,
    "alt": 1,
    "dihedral": 1,
    "sl2": 1,
    "frob": 2,
    "frobcyc": 3,
    "wreathY": 3,
    "xt": 3,
    "baer": 4,
}

TOWER_ARITY = {"altpow": 1, "slprod": 0, "ytower": 2, "xtower": 3}


@dataclass(frozen=True)
class GroupSpec:
    name: str
    params: tuple[int, ...] = ()
    parts: tuple[GroupSpec, ...] = ()

    def __str__(self) -> str:
        if self.name == "prod":
            return "prod(" + ",".join(map(str, self.parts)) + ")"
        return f"{self.name}(" + ",".join(map(str, self.params)) + ")"

    def build(self, cap: int = DEFAULT_CAP) -> FiniteGroup:
        return build_group(str(self), cap)


@lru_cache(maxsize=64)
def build_group(text: str, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """Build (and memoize) the group named by a spec string."""
    return _build(parse_group_spec(text), cap)


def _build(spec: GroupSpec, cap: int) -> FiniteGroup:
    a = spec.params
    match spec.name:
        case "prod":
            G = C.direct_product([_build(s, cap) for s in spec.parts], cap)
        case "cyclic":
            G = C.cyclic(a[0], cap)
        case "sym":
            G = C.sym(a[0], cap)
        case "alt":
            G = C.alt(a[0], cap)
        case "dihedral":
            G = C.dihedral(a[0], cap)
        case "sl2":
            G = C.sl2(a[0], cap)
        case "frob":
            G = C.frobenius(a[0], a[1], cap)
        case "frobcyc":
            G = C.frob_cyclic(a[0], a[1], a[2], cap)
        case "wreathY":
            G, _ = C.wreath_Y(a[0], a[1], a[2], cap)
        case "xt":
            G, _ = C.group_X(a[0], a[1], a[2], cap)
        case "baer":
            G, _ = C.baer_group(a[0], a[1], a[2], a[3], cap)
        case _:
            raise SpecSyntaxError(f"unknown group constructor {spec.name!r}")
    G.name = str(spec)
    return G


class _Reader:
    def __init__(self, text: str):
        self.source = text
        self.text = "".join(text.split())
        self.pos = 0

    def fail(self, what: str) -> SpecSyntaxError:
        return SpecSyntaxError(f"{what} at offset {self.pos} in {self.source!r}")

    def name(self) -> str:
        m = re.compile(r"[A-Za-z][A-Za-z0-9]*").match(self.text, self.pos)
        if m is None:
            raise self.fail("expected a name")
        self.pos = m.end()
        return m.group()

    def integer(self) -> int:
        m = re.compile(r"\d+").match(self.text, self.pos)
        if m is None:
            raise self.fail("expected an integer")
        self.pos = m.end()
        return int(m.group())

    def expect(self, char: str) -> None:
        if not self.text.startswith(char, self.pos):
            raise self.fail(f"expected {char!r}")
        self.pos += 1

    def peek(self, char: str) -> bool:
        return self.text.startswith(char, self.pos)

    def done(self) -> None:
        if self.pos != len(self.text):
            raise self.fail("trailing input")


def _group(r: _Reader) -> GroupSpec:
    name = r.name()
    r.expect("(")
    if name == "prod":
        parts: list[GroupSpec] = []
        if not r.peek(")"):
            parts.append(_group(r))
            while r.peek(","):
                r.expect(",")
                parts.append(_group(r))
        r.expect(")")
        return GroupSpec("prod", parts=tuple(parts))
    if name not in ARITY:
        raise SpecSyntaxError(f"unknown group constructor {name!r}")
    params = _integers(r)
    if len(params) != ARITY[name]:
        raise SpecSyntaxError(f"{name} takes {ARITY[name]} parameters, got {len(params)}")
    return GroupSpec(name, params)


def _integers(r: _Reader) -> tuple[int, ...]:
    params: list[int] = []
    if not r.peek(")"):
        params.append(r.integer())
        while r.peek(","):
            r.expect(",")
            params.append(r.integer())
    r.expect(")")
    return tuple(params)


def parse_group_spec(text: str) -> GroupSpec:
    r = _Reader(text)
    spec = _group(r)
    r.done()
    return spec


# --- towers ---


@dataclass(frozen=True)
class TowerSpec:
    kind: str
    params: tuple[int, ...] = ()

    def __str__(self) -> str:
        if not self.params:
            return self.kind
        return f"{self.kind}(" + ",".join(map(str, self.params)) + ")"


def parse_tower_spec(text: str) -> TowerSpec:
    r = _Reader(text)
    kind = r.name()
    if kind not in TOWER_ARITY:
        raise SpecSyntaxError(f"unknown tower {kind!r}")
    params: tuple[int, ...] = ()
    if r.peek("("):
        r.expect("(")
        params = _integers(r)
    r.done()
    if len(params) != TOWER_ARITY[kind]:
        raise SpecSyntaxError(f"{kind} takes {TOWER_ARITY[kind]} parameters, got {len(params)}")
    return TowerSpec(kind, params)


class Tail(Enum):
    TRIVIAL = "trivial"
    DESIGNATED = "designated"


@dataclass(frozen=True)
class TowerElement:
    support: dict[int, Word] = field(default_factory=dict, hash=False)
    tail: Tail = Tail.TRIVIAL


def parse_element_literal(text: str) -> TowerElement:
    """`t=<word>;...;tail=trivial|designated`; positions start at 1."""
    support: dict[int, Word] = {}
    tail = Tail.TRIVIAL
    compact = "".join(text.split())
    for item in filter(None, compact.split(";")):
        key, sep, value = item.partition("=")
        if not sep:
            raise SpecSyntaxError(f"expected key=value, got {item!r}")
        if key == "tail":
            try:
                tail = Tail(value)
            except ValueError:
                raise SpecSyntaxError(f"tail must be trivial or designated, got {value!r}") from None
            continue
        if not key.isdigit() or int(key) < 1:
            raise SpecSyntaxError(f"bad position {key!r}")
        if int(key) in support:
            raise SpecSyntaxError(f"position {key} given twice")
        support[int(key)] = parse_word(value)
    return TowerElement(support, tail)
