"""Exact values of the form c * b**(1/k) with rational c, b >= 0.

All comparisons reduce to integer powers of rationals, so bounds such as
2*sqrt(2*12/7) > 3 are decided without floating point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering


def _iroot(n: int, k: int) -> int | None:
    """Exact integer k-th root of n >= 0, or None."""
    if n < 0:
        return None
    if n in (0, 1):
        return n
    r = int(round(n ** (1.0 / k))) if n < 2**1000 else 1 << (n.bit_length() // k)
    # Newton refinement on integers
    while True:
        s = ((k - 1) * r + n // r ** (k - 1)) // k
        if s >= r:
            break
        r = s
    for c in (r - 1, r, r + 1):
        if c >= 0 and c**k == n:
            return c
    return None


def rational_root(x: Fraction, k: int) -> Fraction | None:
    x = Fraction(x)
    p, q = _iroot(x.numerator, k), _iroot(x.denominator, k)
    if p is None or q is None:
        return None
    return Fraction(p, q)


@total_ordering
@dataclass(frozen=True)
class Radical:
    coeff: Fraction
    base: Fraction
    k: int = 1

    def __post_init__(self):
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        object.__setattr__(self, "base", Fraction(self.base))
        if self.coeff < 0 or self.base < 0 or self.k < 1:
            raise ValueError("Radical needs coeff >= 0, base >= 0, k >= 1")

    @classmethod
    def of(cls, x) -> "Radical":
        if isinstance(x, Radical):
            return x
        return cls(Fraction(x), Fraction(1), 1)

    def _power(self, n: int) -> Fraction:
        # self**n for n a multiple of k
        return self.coeff**n * self.base ** (n // self.k)

    def _cmp(self, other) -> int:
        o = Radical.of(other)
        n = self.k * o.k // math.gcd(self.k, o.k)
        a, b = self._power(n), o._power(n)
        return (a > b) - (a < b)

    def __eq__(self, other):
        if not isinstance(other, (Radical, int, Fraction)):
            return NotImplemented
        return self._cmp(other) == 0

    def __lt__(self, other):
        if not isinstance(other, (Radical, int, Fraction)):
            return NotImplemented
        return self._cmp(other) < 0

    def __hash__(self):
        r = self.exact()
        return hash(r) if r is not None else hash((self.coeff, self.base, self.k))

    def __mul__(self, other):
        o = Radical.of(other)
        n = self.k * o.k // math.gcd(self.k, o.k)
        return Radical(self.coeff * o.coeff, self.base ** (n // self.k) * o.base ** (n // o.k), n)

    __rmul__ = __mul__

    def exact(self) -> Fraction | None:
        """The value as a rational, when it is one."""
        root = rational_root(self.base, self.k)
        return None if root is None else self.coeff * root

    def __float__(self):
        return float(self.coeff) * float(self.base) ** (1.0 / self.k)

    def ceil(self) -> int:
        n = math.ceil(float(self))
        while n - 1 >= 0 and self <= n - 1:
            n -= 1
        while self > n:
            n += 1
        return n

    def __str__(self):
        r = self.exact()
        if r is not None:
            return str(r)
        c = "" if self.coeff == 1 else f"{self.coeff}*"
        return f"{c}({self.base})^(1/{self.k})"

    def to_json(self):
        return {"coeff": str(self.coeff), "base": str(self.base), "root": self.k, "approx": round(float(self), 6)}
