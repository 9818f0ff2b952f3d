"""Finite fields GF(p^e) on dense integer indices.

An element is encoded by the integer ``sum(c[i] * p**i)`` where ``c[i]`` is
the coefficient of ``x**i`` in its polynomial representative.  Index 0 is
zero and index 1 is one.  Addition and multiplication are full lookup
tables, so every downstream structure can work on flat integer arrays.
"""

from __future__ import annotations

import functools
import itertools

import numpy as np

from .errors import NonPrimeCharacteristic, OrderTooLarge, ZeroInverse

MAX_ORDER = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, int(n**0.5) + 1):
        if n % d == 0:
            return False
    return True


def _poly_mod(num: list[int], den: list[int], p: int) -> list[int]:
    # coefficient lists are low-to-high, den monic
    num = list(num)
    dd = len(den) - 1
    for shift in range(len(num) - 1 - dd, -1, -1):
        c = num[shift + dd] % p
        if c:
            for i, d in enumerate(den):
                num[shift + i] = (num[shift + i] - c * d) % p
    return [c % p for c in num[:dd]]


def is_irreducible(coeffs: list[int], p: int) -> bool:
    """Trial division of a monic polynomial (low-to-high coefficients) over GF(p)."""
    deg = len(coeffs) - 1
    if deg <= 1:
        return deg == 1
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not any(_poly_mod(coeffs, list(low) + [1], p)):
                return False
    return True


def smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree ``e``.

    Returned high-to-low, e.g. ``(1, 0, 1)`` for ``x^2 + 1``.  Ordering is
    lexicographic on that list, which is the same as ordering the non-leading
    part by its base-p integer value.
    """
    for r in range(p**e):
        low = [(r // p**i) % p for i in range(e)]
        if is_irreducible(low + [1], p):
            return tuple(reversed(low + [1]))
    raise AssertionError("no irreducible polynomial found")  # unreachable


class Field:
    """GF(p^e) with precomputed arithmetic tables.

    Instances are immutable once built and can be shared freely.
    """

    def __init__(self, p: int, e: int = 1, max_order: int = MAX_ORDER):
        if not is_prime(p):
            raise NonPrimeCharacteristic(f"characteristic {p} is not prime")
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        if p**e > max_order:
            raise OrderTooLarge(f"order {p}^{e} exceeds maximum {max_order}")
        self.p = p
        self.e = e
        self.q = q = p**e
        self.modulus = smallest_irreducible(p, e)

        powers = p ** np.arange(e, dtype=np.int64)
        digits = (np.arange(q, dtype=np.int64)[:, None] // powers) % p  # (q, e)
        self._digits = digits

        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ powers

        # xpow[a, i] = digit vector of a * x^i
        red = -np.array(list(reversed(self.modulus[1:])), dtype=np.int64) % p  # x^e = red
        xpow = np.empty((q, e, e), dtype=np.int64)
        cur = digits.copy()
        for i in range(e):
            xpow[:, i, :] = cur
            top = cur[:, -1:].copy()
            cur = np.concatenate([np.zeros((q, 1), np.int64), cur[:, :-1]], axis=1)
            cur = (cur + top * red[None, :]) % p
        prod = np.einsum("aij,bi->abj", xpow, digits) % p
        mul = prod @ powers

        self.add_table = add.astype(np.int32)
        self.mul_table = mul.astype(np.int32)
        self.neg_table = np.argmax(self.add_table == 0, axis=1).astype(np.int32)
        inv = np.argmax(self.mul_table == 1, axis=1).astype(np.int32)
        inv[0] = -1
        self.inv_table = inv
        for t in (self.add_table, self.mul_table, self.neg_table, self.inv_table):
            t.setflags(write=False)

    def __repr__(self) -> str:
        return f"Field(p={self.p}, e={self.e})"

    def __len__(self) -> int:
        return self.q

    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInverse("zero has no multiplicative inverse")
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        result = 1
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def coefficients(self, a: int) -> tuple[int, ...]:
        """Coefficient vector of ``a``, constant term first."""
        return tuple(int(c) for c in self._digits[a])

    def fixed_by_frobenius(self, r: int) -> list[int]:
        """Elements with ``a**(p**r) == a``: the subfield of order p^r (r | e)."""
        n = self.p**r
        return [a for a in range(self.q) if self.pow(a, n) == a]


@functools.lru_cache(maxsize=None)
def field_new(p: int, e: int = 1, max_order: int = MAX_ORDER) -> Field:
    """Cached :class:`Field` constructor."""
    return Field(p, e, max_order)


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` into ``(p, e)``; raises NonPrimeCharacteristic otherwise."""
    if q >= 2:
        for p in range(2, q + 1):
            if q % p == 0:
                e, r = 0, q
                while r % p == 0:
                    r //= p
                    e += 1
                if r == 1 and is_prime(p):
                    return p, e
                break
    raise NonPrimeCharacteristic(f"{q} is not a prime power")


def field_of_order(q: int, max_order: int = MAX_ORDER) -> Field:
    p, e = prime_power(q)
    return field_new(p, e, max_order)
