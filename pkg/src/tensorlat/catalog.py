"""Named lattices and JSON file I/O."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from .hermitian import HermitianError, HermLattice
from .number_field import make_field
from .reduction import hermite_rows, lll_gram
from .zlattice import LatticeError, ZLattice


class CatalogError(LookupError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    kind: str  # "euclidean" | "hermitian"
    data: ZLattice | HermLattice
    provenance: str = "builtin"
    notes: str = ""

    def to_json(self) -> dict:
        obj = {"name": self.name, "kind": self.kind, "provenance": self.provenance, "notes": self.notes}
        obj.update(self.data.to_json())
        return obj


def _golay_code() -> list[list[int]]:
    # extended quadratic-residue code of length 24
    p = 23
    qr = {i * i % p for i in range(1, p)}
    v = [1 if i in qr else 0 for i in range(p)]
    basis: list[list[int]] = []
    for k in range(p):
        r = v[-k:] + v[:-k] if k else v[:]
        for b in basis:
            if r[b.index(1)]:
                r = [x ^ y for x, y in zip(r, b)]
        if any(r):
            basis.append(r)
    return [b + [sum(b) % 2] for b in basis]


def leech_gram() -> list[list[int]]:
    """LLL-reduced Gram matrix of the Leech lattice from the Golay code."""
    gens = [[2 * x for x in c] for c in _golay_code()]
    for j in range(1, 24):
        for s in (4, -4):
            e = [0] * 24
            e[0], e[j] = 4, s
            gens.append(e)
    gens.append([-3] + [1] * 23)
    B = hermite_rows(gens)
    G = [[sum(a * b for a, b in zip(r, s)) // 8 for s in B] for r in B]
    return lll_gram(G)[0]


def _z(gram, name, notes="", provenance="builtin"):
    return CatalogEntry(name, "euclidean", ZLattice(gram), provenance, notes)


def _h(d, gram, name, notes="", provenance="builtin"):
    F = make_field(d)
    rows = [[F(*x) if isinstance(x, tuple) else F(x) for x in row] for row in gram]
    return CatalogEntry(name, "hermitian", HermLattice(F, rows), provenance, notes)


def _lk(d, z, name):
    re, im = Fraction(z[0]), Fraction(z[1])
    return _h(d, [[1, (re, im)], [(re, -im), 1]], name, f"deep hole {make_field(d)(re, im)}")


F2 = Fraction

_BUILDERS = {
    "A2": lambda: _z([[2, -1], [-1, 2]], "A2"),
    "D4": lambda: _z([[2, 0, -1, 0], [0, 2, -1, 0], [-1, -1, 2, -1], [0, 0, -1, 2]], "D4"),
    "E8": lambda: _z(
        [[2, -1, 0, 0, 0, 0, 0, 0], [-1, 2, -1, 0, 0, 0, 0, 0], [0, -1, 2, -1, 0, 0, 0, -1],
         [0, 0, -1, 2, -1, 0, 0, 0], [0, 0, 0, -1, 2, -1, 0, 0], [0, 0, 0, 0, -1, 2, -1, 0],
         [0, 0, 0, 0, 0, -1, 2, 0], [0, 0, -1, 0, 0, 0, 0, 2]], "E8"),
    "A2perpA2": lambda: _z([[2, -1, 0, 0], [-1, 2, 0, 0], [0, 0, 2, -1], [0, 0, -1, 2]], "A2perpA2"),
    "Leech": lambda: _z(leech_gram(), "Leech", "Golay-code construction, LLL-reduced basis"),
    # alpha = (1+sqrt(-7))/2 = (1/2, 1/2), beta = conj(alpha)
    "Pb": lambda: _h(7, [[2, (F2(1, 2), F2(1, 2)), -1],
                         [(F2(1, 2), F2(-1, 2)), 2, (F2(1, 2), F2(1, 2))],
                         [-1, (F2(1, 2), F2(-1, 2)), 2]], "Pb", "Barnes lattice"),
    "T": lambda: _h(11, [[2, (F2(1, 2), F2(1, 2))], [(F2(1, 2), F2(-1, 2)), 2]], "T"),
    # 4/sqrt(-7) = -4/7 sqrt(-7)
    "Pa": lambda: _h(7, [[2, (0, F2(-4, 7))], [(0, F2(4, 7)), 2]], "Pa"),
    "LK-d3": lambda: _lk(3, (0, F2(-1, 3)), "LK-d3"),
    "LK-d1": lambda: _lk(1, (F2(1, 2), F2(-1, 2)), "LK-d1"),
    "LK-d7a": lambda: _lk(7, (0, F2(-2, 7)), "LK-d7a"),
    "LK-d7b": lambda: _lk(7, (F2(1, 2), F2(3, 14)), "LK-d7b"),
    "LK-d2": lambda: _lk(2, (F2(1, 2), F2(1, 2)), "LK-d2"),
    "LK-d11a": lambda: _lk(11, (0, F2(-3, 11)), "LK-d11a"),
    "LK-d11b": lambda: _lk(11, (F2(1, 2), F2(5, 22)), "LK-d11b"),
    # found by scripts/find_pc.py; trace is E8 and the dual is sqrt(-7) Pc
    "Pc": lambda: _h(7, [[1, 0, 0, (0, F2(1, 7))],
                         [0, 1, (0, F2(1, 7)), (0, F2(1, 7))],
                         [0, (0, F2(-1, 7)), 1, (0, F2(2, 7))],
                         [(0, F2(-1, 7)), (0, F2(-1, 7)), (0, F2(-2, 7)), 1]],
                     "Pc", "rank-4 structure on E8, fixture from search", provenance="computed"),
}

NAMES = tuple(_BUILDERS)


@lru_cache(maxsize=None)
def get(name: str) -> CatalogEntry:
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise CatalogError(f"unknown lattice {name!r}; catalog: {', '.join(NAMES)}") from None


def from_json(obj: dict, name: str = "") -> CatalogEntry:
    if not isinstance(obj, dict) or "gram" not in obj:
        raise LatticeError("expected an object with a 'gram' field")
    name = obj.get("name", name)
    meta = dict(provenance=obj.get("provenance", "user"), notes=obj.get("notes", ""))
    if "field" in obj:
        return CatalogEntry(name, "hermitian", HermLattice.from_json(obj), **meta)
    return CatalogEntry(name, "euclidean", ZLattice.from_json(obj), **meta)


def load(path) -> CatalogEntry:
    p = Path(path)
    try:
        obj = json.loads(p.read_text())
    except json.JSONDecodeError as e:
        raise LatticeError(f"{p}: not valid JSON ({e})") from None
    return from_json(obj, p.stem)


def save(entry: CatalogEntry, path) -> None:
    Path(path).write_text(json.dumps(entry.to_json(), indent=1, sort_keys=True) + "\n")


def resolve(spec: str) -> CatalogEntry:
    """A catalog name or a path to a JSON file."""
    if spec in _BUILDERS:
        return get(spec)
    if Path(spec).exists():
        return load(spec)
    raise CatalogError(f"{spec!r} is neither a catalog name nor a file; catalog: {', '.join(NAMES)}")


__all__ = ["CatalogEntry", "CatalogError", "NAMES", "get", "load", "save", "resolve", "from_json",
           "leech_gram", "HermitianError"]
