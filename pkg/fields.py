# fields.py
# Finite fields GF(p^k) as lookup tables over integer-coded polynomials

from __future__ import annotations

import logging
from functools import lru_cache

from sympy import factorint, isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

from errors import InvalidParams

log = logging.getLogger(__name__)


def _digits(value: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        value, d = divmod(value, p)
        out.append(d)
    return out


def _encode(digits: list[int], p: int) -> int:
    value = 0
    for d in reversed(digits):
        value = value * p + d
    return value


def least_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Coefficients (constant term first) of the least monic irreducible of degree k over GF(p).

    Candidates are ordered by the base-p number formed by their lower coefficients.
    """
    for code in range(p**k):
        low = _digits(code, p, k)
        dense = [1] + low[::-1]  # sympy wants the leading coefficient first
        if gf_irreducible_p(dense, p, ZZ):
            return tuple(low) + (1,)
    raise InvalidParams(f"no irreducible polynomial of degree {k} over GF({p})")


class FieldGF:
    """GF(p^k); element c stands for sum(c_i X^i) with c_i the base-p digits of c."""

    def __init__(self, p: int, k: int = 1):
        if not isprime(p) or k < 1:
            raise InvalidParams(f"GF({p}^{k}) is not a field")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = least_irreducible(p, k)
        q = self.q
        self.add_table = [[self._add(a, b) for b in range(q)] for a in range(q)]
        self.mul_table = [[self._mul(a, b) for b in range(q)] for a in range(q)]
        self.neg_table = [self.add_table[a].index(0) for a in range(q)]
        self.inv_table = [0] + [self.mul_table[a].index(1) for a in range(1, q)]
        self.generator = self._least_generator()
        log.debug("field q=%d modulus=%s generator=%d", q, self.modulus, self.generator)

    def __repr__(self) -> str:
        return f"FieldGF({self.p}^{self.k})"

    def _add(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        da, db = _digits(a, p, k), _digits(b, p, k)
        return _encode([(x + y) % p for x, y in zip(da, db)], p)

    def _mul(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        da, db = _digits(a, p, k), _digits(b, p, k)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        # reduce by the monic modulus from the top degree down
        for deg in range(2 * k - 2, k - 1, -1):
            c = prod[deg]
            if c:
                for i, m in enumerate(self.modulus):
                    prod[deg - k + i] = (prod[deg - k + i] - c * m) % p
        return _encode(prod[:k], p)

    def _least_generator(self) -> int:
        n = self.q - 1
        if n == 1:
            return 1
        primes = list(factorint(n))
        for a in range(2, self.q):
            if all(self.pow(a, n // r) != 1 for r in primes):
                return a
        raise InvalidParams(f"GF({self.q}) has no primitive element")  # unreachable for a field

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.inv_table[a]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul_table[result][a]
            a = self.mul_table[a][a]
            e >>= 1
        return result

    def multiplicative_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("0 is not a unit")
        n, e = 1, a
        while e != 1:
            e = self.mul_table[e][a]
            n += 1
        return n

    def basis(self) -> list[int]:
        """The additive basis 1, X, ..., X^(k-1)."""
        return [self.p**i for i in range(self.k)]


@lru_cache(maxsize=None)
def field(p: int, k: int = 1) -> FieldGF:
    return FieldGF(p, k)
