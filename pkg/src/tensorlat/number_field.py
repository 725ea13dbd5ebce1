"""Exact arithmetic in imaginary quadratic fields Q(sqrt(-d)).

Elements are stored on the rational basis (1, sqrt(-d)); the integral
basis (1, omega) is only used as a coordinate view, see
:meth:`QuadField.to_omega`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from itertools import product
from numbers import Rational

# Classical Euclidean minima of the five norm-Euclidean imaginary quadratic fields.
EUCLIDEAN_MINIMA = {
    1: Fraction(1, 2),
    2: Fraction(3, 4),
    3: Fraction(1, 3),
    7: Fraction(4, 7),
    11: Fraction(9, 11),
}


class FieldError(ValueError):
    pass


def _is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return True


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


@dataclass(frozen=True)
class QuadField:
    """The field K = Q(sqrt(-d)) for squarefree d >= 1."""

    d: int
    disc: int = dc_field(init=False)
    euclidean_min: Fraction | None = dc_field(init=False)

    def __post_init__(self):
        if not isinstance(self.d, int) or isinstance(self.d, bool):
            raise FieldError(f"d must be an integer, got {self.d!r}")
        if not _is_squarefree(self.d):
            raise FieldError(f"d must be a positive squarefree integer, got {self.d}")
        object.__setattr__(self, "disc", -self.d if self.d % 4 == 3 else -4 * self.d)
        object.__setattr__(self, "euclidean_min", EUCLIDEAN_MINIMA.get(self.d))

    @property
    def is_euclidean(self) -> bool:
        return self.euclidean_min is not None

    def __call__(self, re=0, im=0) -> "FieldElement":
        return FieldElement(_as_fraction(re), _as_fraction(im), self)

    @cached_property
    def omega(self) -> "FieldElement":
        if self.d % 4 == 3:
            return self(Fraction(1, 2), Fraction(1, 2))
        return self(0, 1)

    @cached_property
    def sqrt(self) -> "FieldElement":
        """The element sqrt(-d)."""
        return self(0, 1)

    @cached_property
    def inv_sqrt(self) -> "FieldElement":
        """The element 1/sqrt(-d), generator of the inverse different."""
        return self(0, Fraction(-1, self.d))

    def zero(self) -> "FieldElement":
        return self(0, 0)

    def one(self) -> "FieldElement":
        return self(1, 0)

    def from_omega(self, a, b) -> "FieldElement":
        """Return a + b*omega."""
        a, b = _as_fraction(a), _as_fraction(b)
        if self.d % 4 == 3:
            return self(a + b / 2, b / 2)
        return self(a, b)

    def to_omega(self, x: "FieldElement") -> tuple[Fraction, Fraction]:
        """Coordinates (a, b) with x = a + b*omega."""
        if self.d % 4 == 3:
            b = 2 * x.im
            return x.re - b / 2, b
        return x.re, x.im

    def coerce(self, x) -> "FieldElement":
        if isinstance(x, FieldElement):
            if x.field.d != self.d:
                raise FieldError(f"element of Q(sqrt(-{x.field.d})) used in Q(sqrt(-{self.d}))")
            return x
        return self(_as_fraction(x), 0)

    @cached_property
    def units(self) -> tuple["FieldElement", ...]:
        if self.d == 1:
            return (self(1), self(-1), self(0, 1), self(0, -1))
        if self.d == 3:
            h = Fraction(1, 2)
            return (self(1), self(-1), self(h, h), self(-h, -h), self(-h, h), self(h, -h))
        return (self(1), self(-1))

    def to_json(self) -> dict:
        return {"d": self.d}

    def __repr__(self):
        return f"QuadField(d={self.d})"


def make_field(d: int) -> QuadField:
    return QuadField(d)


class FieldElement:
    """An element re + im*sqrt(-d) with exact rational components."""

    __slots__ = ("re", "im", "field")

    def __init__(self, re: Fraction, im: Fraction, field: QuadField):
        self.re = re
        self.im = im
        self.field = field

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field.d != self.field.d:
                raise FieldError("mixed fields")
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement(Fraction(other), Fraction(0), self.field)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.re + o.re, self.im + o.im, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.re - o.re, self.im - o.im, self.field)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return FieldElement(-self.re, -self.im, self.field)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        d = self.field.d
        return FieldElement(
            self.re * o.re - d * self.im * o.im,
            self.re * o.im + self.im * o.re,
            self.field,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        p = self * o.conj()
        return FieldElement(p.re / n, p.im / n, self.field)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return (self.field.one() / self) ** (-k)
        out = self.field.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self) -> "FieldElement":
        return FieldElement(self.re, -self.im, self.field)

    def norm(self) -> Fraction:
        return self.re * self.re + self.field.d * self.im * self.im

    def trace(self) -> Fraction:
        return 2 * self.re

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_rational(self) -> bool:
        return self.im == 0

    def is_integral(self) -> bool:
        a, b = self.field.to_omega(self)
        return a.denominator == 1 and b.denominator == 1

    def sort_key(self):
        return (self.re, self.im)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field.d == other.field.d and self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im, self.field.d))

    def __repr__(self):
        return f"FieldElement({self}, d={self.field.d})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        s = f"√-{self.field.d}"
        im = "" if self.im == 1 else "-" if self.im == -1 else f"{self.im}*"
        if self.re == 0:
            return f"{im}{s}"
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        mag_s = "" if mag == 1 else f"{mag}*"
        return f"{self.re}{sign}{mag_s}{s}"

    def to_json(self) -> dict:
        return {"re": str(self.re), "im": str(self.im)}


def norm(x: FieldElement) -> Fraction:
    return x.norm()


def trace(x: FieldElement) -> Fraction:
    return x.trace()


def conj(x: FieldElement) -> FieldElement:
    return x.conj()


def nearest_integers(x: FieldElement) -> list[FieldElement]:
    """Elements of O_K around x, a superset of its nearest points."""
    F = x.field
    a, b = F.to_omega(x)
    fa, fb = math.floor(a), math.floor(b)
    return [F.from_omega(fa + i, fb + j) for i, j in product(range(-1, 3), repeat=2)]


def euclidean_divide(a: FieldElement, b: FieldElement) -> tuple[FieldElement, FieldElement]:
    """Return (q, r) with a = q*b + r, q in O_K minimising N(a/b - q).

    Ties are broken by the smallest (re, im) of q.
    """
    F = a.field
    if b.is_zero():
        raise ZeroDivisionError("euclidean division by zero")
    if not F.is_euclidean:
        raise FieldError(f"O_K is not norm-Euclidean for d={F.d}")
    x = a / b
    q = min(nearest_integers(x), key=lambda c: ((x - c).norm(), c.sort_key()))
    return q, a - q * b


def _omega_norm_solutions(F: QuadField, n: int) -> list[FieldElement]:
    """All y in O_K with N(y) = n, by bounded enumeration of the norm form."""
    if n < 0:
        return []
    if n == 0:
        return [F.zero()]
    d = F.d
    out = []
    if d % 4 == 3:
        # 4 N(a + b omega) = (2a + b)^2 + d b^2
        bmax = math.isqrt(4 * n // d)
        for b in range(-bmax, bmax + 1):
            rest = 4 * n - d * b * b
            if rest < 0:
                continue
            t = math.isqrt(rest)
            if t * t != rest:
                continue
            for s in {t, -t}:
                if (s - b) % 2 == 0:
                    out.append(F.from_omega((s - b) // 2, b))
    else:
        bmax = math.isqrt(n // d)
        for b in range(-bmax, bmax + 1):
            rest = n - d * b * b
            if rest < 0:
                continue
            t = math.isqrt(rest)
            if t * t == rest:
                for s in {t, -t}:
                    out.append(F(s, b))
    return out


def elements_of_norm(F: QuadField, target, denom: int = 1, sqrt_d: bool = False) -> list[FieldElement]:
    """All x of norm ``target`` in the scaled module s*O_K.

    The scale is s = 1/denom, times 1/sqrt(-d) when ``sqrt_d`` is set, so
    ``elements_of_norm(F, Fraction(35, 11), sqrt_d=True)`` searches
    (1/sqrt(-11)) O_K.  The result is complete; an empty list certifies
    that no such element exists.
    """
    target = _as_fraction(target)
    if target < 0:
        raise FieldError(f"norm target must be non-negative, got {target}")
    if not isinstance(denom, int) or denom < 1:
        raise FieldError(f"denom must be a positive integer, got {denom!r}")
    scale = F(Fraction(1, denom))
    if sqrt_d:
        scale = scale * F.inv_sqrt
    n = target / scale.norm()
    if n.denominator != 1:
        return []
    sols = [scale * y for y in _omega_norm_solutions(F, int(n))]
    return sorted(set(sols), key=FieldElement.sort_key)


@dataclass
class DeepHoleReport:
    mu: Fraction
    holes: list[FieldElement]
    orbits: list[list[FieldElement]]

    @property
    def representatives(self) -> list[FieldElement]:
        return [orb[0] for orb in self.orbits]


def _circumcenter(p: FieldElement, q: FieldElement) -> FieldElement | None:
    # point c with <c,p> = N(p)/2 and <c,q> = N(q)/2, <x,y> = re*re' + d*im*im'
    d = p.field.d
    a11, a12, a21, a22 = p.re, d * p.im, q.re, d * q.im
    det = a11 * a22 - a12 * a21
    if det == 0:
        return None
    r1, r2 = p.norm() / 2, q.norm() / 2
    return p.field((r1 * a22 - a12 * r2) / det, (a11 * r2 - a21 * r1) / det)


def _distance_to_ring(z: FieldElement) -> Fraction:
    F = z.field
    a, b = F.to_omega(z)
    fa, fb = math.floor(a), math.floor(b)
    return min(
        (z - F.from_omega(fa + i, fb + j)).norm()
        for i, j in product(range(-1, 3), repeat=2)
    )


def euclidean_minimum(F: QuadField) -> DeepHoleReport:
    """Covering radius of O_K and its deep holes.

    The holes returned are the vertices of the Voronoi cell of 0 that are
    farthest from O_K; they are computed as circumcentres of triangles
    (0, p, q) of nearby ring elements.
    """
    box = [F.from_omega(i, j) for i, j in product(range(-2, 3), repeat=2) if (i, j) != (0, 0)]
    centres = {c for i, p in enumerate(box) for q in box[i + 1:] if (c := _circumcenter(p, q)) is not None}
    vertices = {c for c in centres if c.norm() == _distance_to_ring(c)}
    mu = max(v.norm() for v in vertices)
    holes = sorted((v for v in vertices if v.norm() == mu), key=FieldElement.sort_key)

    remaining = set(holes)
    orbits = []
    for z in holes:
        if z not in remaining:
            continue
        orbit = {z}
        frontier = [z]
        while frontier:
            w = frontier.pop()
            for img in [u * w for u in F.units] + [w.conj()]:
                if img not in orbit:
                    orbit.add(img)
                    frontier.append(img)
        remaining -= orbit
        orbits.append(sorted(orbit, key=FieldElement.sort_key))
    return DeepHoleReport(mu=mu, holes=holes, orbits=orbits)
