"""Free Hermitian lattices over the ring of integers of Q(sqrt(-d)).

Conventions: h(x, y) = x^T G conj(y) for coordinate columns x, y, so h is
linear in the first argument.  The trace lattice uses the Z-basis
(e_1, omega e_1, e_2, omega e_2, ...) with form Tr h(x, y).
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from typing import Sequence

import numpy as np

from .number_field import FieldElement, FieldError, QuadField, elements_of_norm, make_field
from .radical import Radical
from .reduction import common_denominator, leading_minors_positive
from .zlattice import LatticeError, ZLattice, short_vectors

# Hermite constants gamma_n^n for n = 2, 4, 6, 8
HERMITE_POWERS = {2: Fraction(4, 3), 4: Fraction(4), 6: Fraction(64, 3), 8: Fraction(256)}


class HermitianError(LatticeError):
    pass


def _field_det(M: list[list[FieldElement]], F: QuadField) -> FieldElement:
    A = [list(row) for row in M]
    n = len(A)
    det = F.one()
    for c in range(n):
        p = next((r for r in range(c, n) if not A[r][c].is_zero()), None)
        if p is None:
            return F.zero()
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det = det * A[c][c]
        inv = F.one() / A[c][c]
        for r in range(c + 1, n):
            if not A[r][c].is_zero():
                f = A[r][c] * inv
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return det


def _field_inverse(M: list[list[FieldElement]], F: QuadField) -> list[list[FieldElement]]:
    n = len(M)
    A = [list(row) + [F.one() if i == j else F.zero() for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next((r for r in range(c, n) if not A[r][c].is_zero()), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        A[c], A[p] = A[p], A[c]
        inv = F.one() / A[c][c]
        A[c] = [a * inv for a in A[c]]
        for r in range(n):
            if r != c and not A[r][c].is_zero():
                f = A[r][c]
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return [row[n:] for row in A]


def _matmul(A, B, F):
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), F.zero()) for j in range(len(B[0]))] for i in range(len(A))]


def _conj_t(A):
    return [[A[j][i].conj() for j in range(len(A))] for i in range(len(A[0]))]


class HermLattice:
    """A free O_K-lattice with Hermitian Gram matrix ``gram``."""

    def __init__(self, field: QuadField, gram: Sequence[Sequence], check: bool = True):
        F = field
        rows = tuple(tuple(F.coerce(x) for x in row) for row in gram)
        m = len(rows)
        if check:
            for i, row in enumerate(rows):
                if len(row) != m:
                    raise HermitianError(f"Gram row {i} has length {len(row)}, expected {m}")
            for i in range(m):
                if rows[i][i].im != 0:
                    raise HermitianError(f"diagonal entry ({i},{i}) is not rational")
                for j in range(i):
                    if rows[i][j] != rows[j][i].conj():
                        raise HermitianError(f"Gram matrix not Hermitian at ({i},{j})")
        self.field = F
        self.gram = rows
        self.m = m
        if check and m and not leading_minors_positive(self._trace_gram_rows()):
            raise HermitianError("Hermitian form is not positive definite")

    def __repr__(self):
        return f"HermLattice(d={self.field.d}, m={self.m}, disc={self.disc})"

    def __eq__(self, other):
        return isinstance(other, HermLattice) and self.field == other.field and self.gram == other.gram

    def __hash__(self):
        return hash((self.field.d, self.gram))

    def h(self, x, y) -> FieldElement:
        F = self.field
        x = [F.coerce(v) for v in x]
        y = [F.coerce(v) for v in y]
        return sum(
            (x[i] * self.gram[i][j] * y[j].conj() for i in range(self.m) for j in range(self.m)),
            F.zero(),
        )

    @cached_property
    def disc(self) -> Fraction:
        if self.m == 0:
            return Fraction(1)
        det = _field_det([list(r) for r in self.gram], self.field)
        return det.re

    def _trace_gram_rows(self) -> list[list[Fraction]]:
        F = self.field
        basis = [F.one(), F.omega]
        m = self.m
        T = [[Fraction(0)] * (2 * m) for _ in range(2 * m)]
        for i in range(m):
            for j in range(m):
                g = self.gram[i][j]
                for a in range(2):
                    for b in range(2):
                        T[2 * i + a][2 * j + b] = (basis[a] * basis[b].conj() * g).trace()
        return T

    @cached_property
    def trace(self) -> ZLattice:
        return ZLattice(self._trace_gram_rows(), check=False)

    @cached_property
    def form(self) -> "TraceForm":
        return TraceForm(self)

    def scaled(self, c) -> "HermLattice":
        c = Fraction(c)
        return HermLattice(self.field, [[x * c for x in row] for row in self.gram])

    def conjugate(self) -> "HermLattice":
        """The lattice with conjugated Gram matrix (antilinear image)."""
        return HermLattice(self.field, [[x.conj() for x in row] for row in self.gram], check=False)

    def sublattice_gram(self, basis) -> list[list[FieldElement]]:
        return [[self.h(x, y) for y in basis] for x in basis]

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "gram": [[x.to_json() for x in row] for row in self.gram],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "HermLattice":
        try:
            F = make_field(int(obj["field"]["d"]))
        except (KeyError, TypeError) as exc:
            raise HermitianError("missing or malformed 'field'") from exc
        if "gram" not in obj:
            raise HermitianError("missing 'gram'")
        rows = []
        for i, row in enumerate(obj["gram"]):
            out = []
            for j, e in enumerate(row):
                try:
                    out.append(F(Fraction(str(e["re"])), Fraction(str(e.get("im", 0)))))
                except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
                    raise HermitianError(f"malformed Gram entry at row {i}, column {j}: {e!r}") from exc
            rows.append(out)
        return cls(F, rows)


def herm_make(field: QuadField, gram) -> HermLattice:
    return HermLattice(field, gram)


def herm_disc(L: HermLattice) -> Fraction:
    return L.disc


def herm_dual(L: HermLattice) -> HermLattice:
    """Gram of the dual basis, which is G^{-1} for Hermitian G."""
    return HermLattice(L.field, _field_inverse([list(r) for r in L.gram], L.field), check=False)


def dual_basis_coords(L: HermLattice) -> list[list[FieldElement]]:
    """Coordinates of the dual basis in the basis of L, one column per dual vector."""
    inv = _field_inverse([list(r) for r in L.gram], L.field)
    return [[x.conj() for x in row] for row in inv]


def trace_lattice(L: HermLattice) -> ZLattice:
    return L.trace


def is_dual_scaled(L: HermLattice, s: FieldElement) -> bool:
    """True when L^# = s L, i.e. conj(G^{-1}) / s is in GL_m(O_K)."""
    C = dual_basis_coords(L)
    F = L.field
    U = [[x / s for x in row] for row in C]
    if not all(x.is_integral() for row in U for x in row):
        return False
    return _field_det(U, F).norm() == 1


class TraceForm:
    """Vectorised exact evaluation of h on vectors in trace coordinates.

    For row vectors X, Y of trace coordinates, ``tr(X, Y)`` is D*Tr h(x, y)
    and ``trw(X, Y)`` is D*Tr(omega h(x, y)); the pair determines h(x, y).
    """

    def __init__(self, L: HermLattice):
        F = L.field
        self.field = F
        self.m = L.m
        T = L._trace_gram_rows()
        self.D = common_denominator(T) if T else 1
        self.T = np.array([[int(x * self.D) for x in row] for row in T], dtype=np.int64).reshape(2 * L.m, 2 * L.m)
        w2 = F.omega * F.omega
        c0, c1 = F.to_omega(w2)
        Wb = np.array([[0, 1], [int(c0), int(c1)]], dtype=np.int64)
        self.W = np.kron(np.eye(L.m, dtype=np.int64), Wb)

    def omega_times(self, X: np.ndarray) -> np.ndarray:
        return X @ self.W

    def tr(self, X, Y):
        return X @ self.T @ Y.T

    def trw(self, X, Y):
        return (X @ self.W) @ self.T @ Y.T

    def decode(self, t1: int, t2: int) -> FieldElement:
        F, D, d = self.field, self.D, self.field.d
        a = Fraction(int(t1), 2 * D)
        if d % 4 == 3:
            b = Fraction(int(t1) - 2 * int(t2), 2 * d * D)
        else:
            b = Fraction(-int(t2), 2 * d * D)
        return F(a, b)

    def encode(self, z: FieldElement) -> tuple[int, int] | None:
        F, D = self.field, self.D
        z = F.coerce(z)
        t1 = z.trace() * D
        t2 = (F.omega * z).trace() * D
        if t1.denominator != 1 or t2.denominator != 1:
            return None
        return int(t1), int(t2)

    def norm_product_scaled(self, t1, t2):
        """4 d D^2 N(h) from the encoded pair, elementwise."""
        d = self.field.d
        u = (t1 - 2 * t2) if d % 4 == 3 else t2
        return d * t1 * t1 + u * u


def to_trace_coords(F: QuadField, x: Sequence[FieldElement]) -> list[int]:
    out = []
    for v in x:
        a, b = F.to_omega(F.coerce(v))
        if a.denominator != 1 or b.denominator != 1:
            raise HermitianError(f"coordinate {v} is not in O_K")
        out += [int(a), int(b)]
    return out


def from_trace_coords(F: QuadField, t: Sequence[int]) -> tuple[FieldElement, ...]:
    return tuple(F.from_omega(int(t[2 * i]), int(t[2 * i + 1])) for i in range(len(t) // 2))


@dataclass
class HermVectors:
    """Vectors of a Hermitian lattice, stored as trace coordinates (all signs)."""

    lattice: HermLattice
    trace_coords: np.ndarray
    norms: list[Fraction]

    def __len__(self):
        return len(self.trace_coords)

    def coords(self, i: int) -> tuple[FieldElement, ...]:
        return from_trace_coords(self.lattice.field, self.trace_coords[i])

    def all_coords(self) -> list[tuple[FieldElement, ...]]:
        return [self.coords(i) for i in range(len(self))]


def _unit_matrices(F: QuadField, m: int) -> list[np.ndarray]:
    mats = []
    for u in F.units:
        cols = []
        for basis in ([1, 0], [0, 1]):
            x = F.from_omega(*basis) * u
            a, b = F.to_omega(x)
            cols.append([int(a), int(b)])
        Ub = np.array(cols, dtype=np.int64)  # row k = image of basis k
        mats.append(np.kron(np.eye(m, dtype=np.int64), Ub))
    return mats


def unit_class_representatives(L: HermLattice, X: np.ndarray) -> np.ndarray:
    """One representative per unit orbit among the rows of X (trace coordinates)."""
    if len(X) == 0:
        return X
    mats = _unit_matrices(L.field, L.m)
    if len(mats) == 2:
        first = np.argmax(X != 0, axis=1)
        keep = X[np.arange(len(X)), first] > 0
        return X[keep]
    seen = set()
    reps = []
    for row in X:
        key = tuple(row.tolist())
        if key in seen:
            continue
        orbit = [tuple((row @ U).tolist()) for U in mats]
        seen.update(orbit)
        reps.append(max(orbit))
    return np.array(sorted(reps, reverse=True), dtype=np.int64)


def herm_short_vectors(L: HermLattice, bound, unit_classes: bool = False) -> HermVectors:
    """All nonzero vectors with h(v, v) <= bound (every sign/unit multiple unless unit_classes)."""
    S = short_vectors(L.trace, 2 * Fraction(bound))
    X = S.with_signs()
    norms = S.norms + S.norms
    if unit_classes:
        X = unit_class_representatives(L, X)
        norms = [L.trace.norm(x) / 2 for x in X]
    else:
        norms = [n / 2 for n in norms]
    order = sorted(range(len(X)), key=lambda i: (norms[i], tuple(-v for v in X[i].tolist())))
    X = X[order] if len(X) else X
    return HermVectors(L, X, [norms[i] for i in order])


def herm_minimum(L: HermLattice, unit_classes: bool = False) -> tuple[Fraction, HermVectors]:
    from .zlattice import minimal_vectors

    S = minimal_vectors(L.trace)
    mn = S.bound / 2
    return mn, herm_short_vectors(L, mn, unit_classes=unit_classes)


@dataclass
class HermSublattice:
    parent: HermLattice
    basis: list[tuple[FieldElement, ...]]
    gram: list[list[FieldElement]]
    disc: Fraction

    @classmethod
    def from_basis(cls, parent: HermLattice, basis) -> "HermSublattice":
        basis = [tuple(parent.field.coerce(v) for v in b) for b in basis]
        gram = parent.sublattice_gram(basis)
        disc = _field_det(gram, parent.field).re if basis else Fraction(1)
        return cls(parent, basis, gram, disc)

    def lattice(self) -> HermLattice:
        return HermLattice(self.parent.field, self.gram)


@dataclass
class DrResult:
    r: int
    lower_bound: Fraction | Radical
    best_found: Fraction | None
    witness: HermSublattice | None
    certified: bool
    method: str = ""
    bound_source: str = ""

    @property
    def value(self) -> Fraction | None:
        return self.best_found if self.certified else None

    @property
    def effective_lower(self) -> Fraction | Radical:
        return self.best_found if self.certified else self.lower_bound

    def to_json(self) -> dict:
        lb = self.lower_bound
        return {
            "r": self.r,
            "certified": self.certified,
            "value": str(self.value) if self.value is not None else None,
            "lower_bound": lb.to_json() if isinstance(lb, Radical) else str(lb),
            "best_found": str(self.best_found) if self.best_found is not None else None,
            "method": self.method,
            "bound_source": self.bound_source,
        }


def hermite_type_lower_bound(F: QuadField, r: int, m: Fraction) -> Radical:
    """Lower bound for the discriminant of a rank-r lattice of minimum >= m.

    From min(M) / d_M^(1/r) <= (sqrt|d_K| / 2) * gamma_{2r}:
    d_M >= m^r / ((|d_K|/4)^(r/2) gamma_{2r}^r), whose square is rational.
    """
    g = HERMITE_POWERS.get(2 * r)
    if g is None:
        raise HermitianError(f"Hermite constant gamma_{2 * r} not available")
    sq = Fraction(m) ** (2 * r) / (Fraction(abs(F.disc), 4) ** r * g)
    return Radical(1, sq, 2)


def pair_discriminants(L: HermLattice, x: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """4 d D^2 * det Gram(x, y) for one vector x against rows of Y (integer array)."""
    tf = L.form
    t1 = tf.tr(x[None, :], Y)[0]
    t2 = tf.trw(x[None, :], Y)[0]
    nx = tf.tr(x[None, :], x[None, :])[0, 0]
    ny = np.einsum("ij,jk,ik->i", Y, tf.T, Y)
    d = L.field.d
    return d * nx * ny - tf.norm_product_scaled(t1, t2)


def _d2_scan(L: HermLattice, X: np.ndarray, best, best_pair, cutoff=None):
    """Minimise the pair discriminant over unordered pairs of rows of X."""
    tf = L.form
    scale = 4 * L.field.d * tf.D * tf.D
    for i in range(len(X)):
        dets = pair_discriminants(L, X[i], X[i + 1:])
        pos = dets[dets > 0]
        if len(pos) == 0:
            continue
        k = int(pos.min())
        val = Fraction(k, scale)
        if best is None or val < best:
            j = i + 1 + int(np.flatnonzero(dets == k)[0])
            best, best_pair = val, (i, j)
            if cutoff is not None and best <= cutoff:
                break
    return best, best_pair


def d_r(L: HermLattice, r: int, effort: int = 200_000, c: Fraction = Fraction(2), search: bool = True) -> DrResult:
    """Minimal discriminant of a free rank-r sublattice of L.

    For 3 <= r < rank the value comes from a bounded tuple search and is only
    certified when the search meets the lower bound; ``search=False`` skips
    the search and returns the bound alone.
    """
    F = L.field
    if not 1 <= r <= L.m:
        raise HermitianError(f"r must lie in [1, {L.m}], got {r}")
    if r == L.m:
        sub = HermSublattice.from_basis(L, [tuple(F.one() if i == j else F.zero() for i in range(L.m)) for j in range(L.m)])
        return DrResult(r, L.disc, L.disc, sub, True, "full rank: discriminant of L", "exact")
    mn, V = herm_minimum(L, unit_classes=True)
    if r == 1:
        sub = HermSublattice.from_basis(L, [V.coords(0)])
        return DrResult(1, mn, mn, sub, True, "minimum", "exact")
    if r == 2:
        return _d2(L, mn, V)
    return _dr_search(L, r, mn, effort if search else 0, c)


def _d2(L: HermLattice, mn: Fraction, V: HermVectors) -> DrResult:
    F = L.field
    mu = F.euclidean_min
    if mu is None or mu >= 1:
        warnings.warn(f"O_K is not Euclidean for d={F.d}; d_2 is not certified", stacklevel=3)
        X = V.trace_coords
        best, pair = _d2_scan(L, X, None, None)
        lb = hermite_type_lower_bound(F, 2, mn)
        wit = HermSublattice.from_basis(L, [V.coords(pair[0]), V.coords(pair[1])]) if pair else None
        return DrResult(2, lb, best, wit, False, "pairs of minimal vectors", "hermite-type")
    lb = mn * mn * (1 - mu)
    B = mn
    best, best_vecs = None, None
    while True:
        W = herm_short_vectors(L, B, unit_classes=True)
        X = W.trace_coords
        best_here, pair = _d2_scan(L, X, best, None, cutoff=lb)
        if pair is not None:
            best, best_vecs = best_here, (W.coords(pair[0]), W.coords(pair[1]))
        if best is not None and best <= lb:
            break
        if best is None:
            B = 2 * B
            continue
        need = best / ((1 - mu) * mn)
        if need <= B:
            break
        B = need
    wit = HermSublattice.from_basis(L, list(best_vecs))
    method = "witness meets m^2(1-mu)" if best == lb else f"exhaustive pair scan up to norm {B}"
    return DrResult(2, lb, best, wit, True, method, "m^2(1-mu)")


def _dr_search(L: HermLattice, r: int, mn: Fraction, effort: int, c: Fraction) -> DrResult:
    F = L.field
    lb: Fraction | Radical = hermite_type_lower_bound(F, r, mn)
    source = "hermite-type"
    if F.d == 7 and r == 3:
        # the densest rank-3 Z[alpha]-lattice has minimum 2 and discriminant 1
        alt = mn**3 / 8
        if alt > lb:
            lb, source = alt, "densest rank-3 Z[alpha]-lattice"
    if effort <= 0:
        return DrResult(r, lb, None, None, False, "lower bound only", source)
    W = herm_short_vectors(L, c * mn, unit_classes=True)
    vecs = W.all_coords()
    best, best_basis = None, None
    tried = 0
    for combo in combinations(range(len(vecs)), r):
        tried += 1
        if tried > effort:
            break
        basis = [vecs[i] for i in combo]
        g = L.sublattice_gram(basis)
        det = _field_det(g, F).re
        if det > 0 and (best is None or det < best):
            best, best_basis = det, basis
            if best == lb:
                break
    wit = HermSublattice.from_basis(L, best_basis) if best_basis else None
    certified = best is not None and best == lb
    return DrResult(r, lb, best, wit, certified, f"tuple search over {min(tried, effort)} tuples", source)


def tensor_herm(L: HermLattice, M: HermLattice) -> HermLattice:
    if L.field.d != M.field.d:
        raise HermitianError("tensor product of lattices over different fields")
    G = [[a * b for a in rowL for b in rowM] for rowL in L.gram for rowM in M.gram]
    return HermLattice(L.field, G, check=False)


def _as_radical(x) -> Radical:
    return Radical.of(x)


def _radical_root(x: Radical, r: int) -> Radical:
    return Radical(1, x.coeff ** x.k * x.base, x.k * r)


def tensor_rank_bound(dL, dM, r: int) -> Radical:
    """Lower bound r (d_r(L) d_r(M))^(1/r) for the norm of a rank-r tensor.

    ``dL`` and ``dM`` may be rationals, Radicals or DrResults (whose certified
    value or lower bound is used).
    """
    vals = []
    for v in (dL, dM):
        if isinstance(v, DrResult):
            v = v.effective_lower
        vals.append(_as_radical(v))
    prod = vals[0] * vals[1]
    return Radical(r, 1, 1) * _radical_root(prod, r)


# --- O_K linear algebra for sections -------------------------------------


def _gcd(a: FieldElement, b: FieldElement):
    from .number_field import euclidean_divide

    while not b.is_zero():
        _, rem = euclidean_divide(a, b)
        a, b = b, rem
    return a


def _row_echelon_ok(B: list[list[FieldElement]], F: QuadField):
    """Unimodular U (m x m) with U B = [H; 0] for an m x r matrix B over O_K.

    Returns (U, Uinv, H).
    """
    from .number_field import euclidean_divide

    m, r = len(B), len(B[0])
    A = [list(row) for row in B]
    U = [[F.one() if i == j else F.zero() for j in range(m)] for i in range(m)]
    Ui = [[F.one() if i == j else F.zero() for j in range(m)] for i in range(m)]

    def addrow(dst, src, q):
        # row_dst -= q * row_src; inverse: column_src += q * column_dst
        A[dst] = [a - q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]
        for k in range(m):
            Ui[k][src] = Ui[k][src] + q * Ui[k][dst]

    def swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for k in range(m):
            Ui[k][i], Ui[k][j] = Ui[k][j], Ui[k][i]

    row = 0
    for c in range(r):
        while True:
            nz = [i for i in range(row, m) if not A[i][c].is_zero()]
            if not nz:
                break
            p = min(nz, key=lambda i: A[i][c].norm())
            if p != row:
                swap(row, p)
            clean = True
            for i in range(row + 1, m):
                if not A[i][c].is_zero():
                    q, _ = euclidean_divide(A[i][c], A[row][c])
                    addrow(i, row, q)
                    if not A[i][c].is_zero():
                        clean = False
            if clean:
                break
        if row < m and not A[row][c].is_zero():
            row += 1
    return U, Ui, A[:r]


def orthogonal_decompose(L: HermLattice, S: HermSublattice) -> tuple[HermLattice, HermLattice]:
    """Split L along the K-span F of S into the section F∩L and the projection p(L) onto F^⊥."""
    F = L.field
    if not F.is_euclidean:
        raise HermitianError("saturation test needs a Euclidean ring of integers")
    r = len(S.basis)
    B = [[S.basis[j][i] for j in range(r)] for i in range(L.m)]
    U, Ui, H = _row_echelon_ok(B, F)
    hdet = _field_det(H, F)
    if hdet.norm() != 1:
        # S has index N(hdet) in its saturation; exhibit a vector of F∩L outside S
        Hinv = _field_inverse(H, F)
        for j in range(r):
            col = [Hinv[i][j] for i in range(r)]
            if not all(x.is_integral() for x in col):
                num = [sum((S.basis[k][i] * col[k] for k in range(r)), F.zero()) for i in range(L.m)]
                # num = B H^{-1} e_j is a lattice vector of F not in S
                raise HermitianError(
                    f"sublattice is not saturated: {[str(x) for x in num]} lies in F∩L but not in S"
                )
        raise HermitianError("sublattice is not saturated")
    # columns of Ui: first r span S, the rest complete a basis of L
    cols = [[Ui[i][k] for i in range(L.m)] for k in range(L.m)]
    section = HermLattice(F, S.gram)
    comp = cols[r:]
    A = S.gram
    Ainv = _field_inverse(A, F)
    Bc = [[L.h(S.basis[i], comp[j]) for j in range(len(comp))] for i in range(r)]
    Cc = [[L.h(comp[i], comp[j]) for j in range(len(comp))] for i in range(len(comp))]
    # Schur complement C - B^* A^{-1} B, with h linear in the first slot
    BstarAinvB = _matmul(_matmul(_conj_t(Bc), Ainv, F), Bc, F) if r else None
    proj = [[Cc[i][j] - (BstarAinvB[i][j] if r else F.zero()) for j in range(len(comp))] for i in range(len(comp))]
    return section, HermLattice(F, proj)



# --- isometry ---------------------------------------------------------------


def herm_isometry(L: HermLattice, M: HermLattice, antilinear: bool = False):
    """Images in M of the basis of L realising an isometry, or None.

    With ``antilinear`` the images reproduce conj(G_L), i.e. the map is
    conjugate-linear.  The search is an exhaustive backtrack over vectors of M
    of the required norms.
    """
    if L.field.d != M.field.d or L.m != M.m or L.disc != M.disc:
        return None
    F = L.field
    target = [[x.conj() if antilinear else x for x in row] for row in L.gram]
    found = _match_gram(M, target, first_only=True)
    if not found:
        return None
    return [from_trace_coords(F, v) for v in found[0]]


def herm_isometric(L: HermLattice, M: HermLattice) -> str | None:
    """'linear', 'antilinear' or None."""
    if herm_isometry(L, M) is not None:
        return "linear"
    if herm_isometry(L, M, antilinear=True) is not None:
        return "antilinear"
    return None


def _pools(M: HermLattice, target) -> tuple[np.ndarray, list[np.ndarray]]:
    norms = [row_i[i].re for i, row_i in enumerate(target)]
    V = herm_short_vectors(M, max(norms))
    vn = V.norms
    pools = [np.array([k for k in range(len(V)) if vn[k] == n], dtype=np.int64) for n in norms]
    return V.trace_coords, pools


def _match_gram(M: HermLattice, target, first_only: bool = False, limit: int | None = None):
    """Ordered tuples of vectors of M whose Gram matrix equals ``target``."""
    X, pools = _pools(M, target)
    tf = M.form
    r = len(target)
    codes = [[tf.encode(target[i][j]) for j in range(r)] for i in range(r)]
    out = []
    chosen: list[int] = []

    def extend(i):
        if i == r:
            out.append([X[c] for c in chosen])
            return first_only or (limit is not None and len(out) >= limit)
        cand = pools[i]
        for j, c in enumerate(chosen):
            code = codes[i][j]
            if code is None:
                return False
            Y = X[cand]
            ok = (tf.tr(Y, X[c][None, :])[:, 0] == code[0]) & (tf.trw(Y, X[c][None, :])[:, 0] == code[1])
            cand = cand[ok]
            if len(cand) == 0:
                return False
        for c in cand:
            chosen.append(int(c))
            stop = extend(i + 1)
            chosen.pop()
            if stop:
                return True
        return False

    extend(0)
    return out


# --- rank-3 sections of Hermitian Leech structures over Z[alpha] ----------------


@dataclass
class D3Report:
    holds: bool | None
    threshold: Fraction
    preconditions: dict = dc_field(default_factory=dict)
    steps: list = dc_field(default_factory=list)
    candidates: list = dc_field(default_factory=list)
    survivors: list = dc_field(default_factory=list)

    def __bool__(self):
        return bool(self.holds)

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "threshold": str(self.threshold),
            "preconditions": self.preconditions,
            "steps": self.steps,
            "candidates": self.candidates,
            "survivors": self.survivors,
        }


def herm3_det(g11, g22, g33, g12, g13, g23) -> Fraction:
    """Determinant of a 3x3 Hermitian matrix from its upper triangle."""
    return (
        g11 * g22 * g33
        + 2 * (g12 * g23 * g13.conj()).re
        - g11 * g23.norm()
        - g22 * g13.norm()
        - g33 * g12.norm()
    )


def _ok_elements_up_to(F: QuadField, nmax: int) -> list[FieldElement]:
    out = []
    for n in range(nmax + 1):
        out += elements_of_norm(F, n)
    return out


def certify_d3_at_least(P: HermLattice, threshold=1, check_preconditions: bool = True) -> D3Report:
    """Certify d_3(P) >= threshold for a Z[alpha]-lattice with P^# = sqrt(-7) P.

    Rank-3 sections M with d_M below the threshold are pinned down by a
    sequence of exact inequalities to finitely many Gram matrices, each of
    which is then tested; the claim holds when none survives.
    """
    F = P.field
    threshold = Fraction(threshold)
    rep = D3Report(None, threshold)
    if F.d != 7:
        rep.steps.append("field is not Q(sqrt(-7)); analysis does not apply")
        return rep
    if P.m < 3:
        raise HermitianError("d_3 needs rank at least 3")
    if P.m == 3:
        rep.holds = P.disc >= threshold
        rep.steps.append(f"rank 3: d_3 = disc = {P.disc}")
        return rep
    if check_preconditions:
        pre = rep.preconditions
        pre["dual_is_sqrt_-7_scaled"] = is_dual_scaled(P, F.sqrt)
        pre["trace_even"] = P.trace.is_even
        mn, _ = herm_minimum(P)
        pre["min_is_2"] = mn == 2
        d2 = d_r(P, 2) if pre["min_is_2"] else None
        pre["d2_is_12/7"] = bool(d2 and d2.certified and d2.value == Fraction(12, 7))
        if not all(pre.values()):
            rep.steps.append("preconditions failed; not certifiable")
            return rep
    mu = F.euclidean_min
    rep.steps.append("h(x,y) in (1/sqrt(-7))O_K and h(x,x) in Z, so d_M lies in (1/7)Z")
    lb = hermite_type_lower_bound(F, 3, Fraction(2))
    gamma_bound = Radical(1, Fraction(343, 3), 6)  # (sqrt7/2) gamma_6
    cands = [Fraction(k, 7) for k in range(1, 7 * threshold.numerator // threshold.denominator + 2)
             if Fraction(k, 7) < threshold and Fraction(k, 7) >= lb]
    rep.steps.append(f"Hermite-type bound d_M >= {lb} ~ {float(lb):.4f}; candidates {[str(c) for c in cands]}")
    small = _ok_elements_up_to(F, 16)
    s = F.inv_sqrt
    all_ok = True
    for dM in cands:
        entry = {"d_M": str(dM)}
        # a 2-section spanned by minimal vectors must exist
        forced = Radical(Fraction(18, 7), 1 / (dM * dM), 3)
        if not forced > gamma_bound:
            entry["status"] = "open: cannot force a minimal 2-section"
            all_ok = False
            rep.candidates.append(entry)
            continue
        upper = gamma_bound * Radical(1, dM * dM, 3)
        norms_a = [n for n in range(0, 17)
                   if Fraction(12, 7) <= 4 - Fraction(n, 7) and Radical.of(4 - Fraction(n, 7)) <= upper]
        entry["norm_a_range"] = norms_a
        norms_a = [n for n in norms_a if elements_of_norm(F, n)]
        entry["norm_a_realised"] = norms_a
        tested = 0
        for n in norms_a:
            d2M = 4 - Fraction(n, 7)
            cover = mu * (4 - Fraction(n, 14))
            h33s = [h for h in range(2, 100) if d2M * (h - cover) <= dM]
            entry.setdefault("h33", {})[n] = h33s
            for a in elements_of_norm(F, n):
                g12 = a * s
                for h33 in h33s:
                    for c, b in product(small, repeat=2):
                        g13, g23 = c * s, b * s
                        if herm3_det(Fraction(2), Fraction(2), Fraction(h33), g12, g13, g23) != dM:
                            continue
                        tested += 1
                        G = [[F(2), g12, g13], [g12.conj(), F(2), g23], [g13.conj(), g23.conj(), F(h33)]]
                        try:
                            M = HermLattice(F, G)
                        except HermitianError:
                            continue
                        mnM = herm_minimum(M)[0]
                        if mnM >= 2:
                            rep.survivors.append([[x.to_json() for x in row] for row in G])
        entry["grams_with_d_M"] = tested
        entry["status"] = "closed" if not rep.survivors else "survivor found"
        rep.candidates.append(entry)
    rep.holds = all_ok and not rep.survivors
    if not all_ok:
        rep.holds = None
    return rep
