"""Certificates for minima of Hermitian tensor products.

A rank-r tensor z in L (x) M has h(z, z) >= r (d_r(L) d_r(M))^(1/r), with
equality only if the rank-r sections are mutually dual.  Running over r and
settling the equality cases by exact representation counts gives a proof of
the minimum, which is recorded in a :class:`Certificate`.
"""
from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .hermitian import (
    DrResult,
    HermitianError,
    HermLattice,
    _field_inverse,
    certify_d3_at_least,
    d_r,
    from_trace_coords,
    herm_isometry,
    herm_minimum,
    herm_short_vectors,
    tensor_herm,
    tensor_rank_bound,
    to_trace_coords,
)
from .number_field import elements_of_norm
from .radical import Radical
from .reduction import integer_rank
from .zlattice import (
    ZLattice,
    extremal_bound,
    kitaoka_split_rule,
    minimal_vectors,
    perfection_rank,
    tensor_z,
    zl_minimum,
)

VERDICTS = ("proven", "bounded", "refuted", "inconclusive")


@dataclass
class RepCount:
    target: str
    target_gram: list
    raw: int
    self_count: int
    count: int
    method: str
    exhaustive: bool = True
    flags: list = field(default_factory=list)
    per_orbit: list | None = None
    witness: list | None = None

    def to_json(self) -> dict:
        return asdict(self)


@dataclass
class Certificate:
    claim: dict
    verdict: str
    rank_cases: list = field(default_factory=list)
    rep_counts: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    preconditions_checked: list = field(default_factory=list)
    runtime_ms: int = 0
    lower_bound: str | None = None
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        d = asdict(self)
        d["rep_counts"] = [r.to_json() if isinstance(r, RepCount) else r for r in self.rep_counts]
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


# --- representation counts ----------------------------------------------------


def _gram_json(G) -> list:
    return [[str(x) for x in row] for row in G]


def _count_tuples(P: HermLattice, target, pools_X, pools, v1_list=None, want_witness=True,
                  threads: int = 1, progress: Callable | None = None):
    """Count ordered tuples with Gram ``target`` among the pooled vectors of P.

    Returns (raw, per_v1 counts, witness tuple of trace coordinates or None).
    """
    tf = P.form
    r = len(target)
    codes = [[tf.encode(target[i][j]) for j in range(r)] for i in range(r)]
    X = pools_X
    if any(codes[i][j] is None for i in range(r) for j in range(i)):
        return 0, [], None
    first = pools[0] if v1_list is None else np.asarray(v1_list, dtype=np.int64)

    def filt(cand, c, code):
        Y = X[cand]
        x = X[c][None, :]
        ok = (tf.tr(Y, x)[:, 0] == code[0]) & (tf.trw(Y, x)[:, 0] == code[1])
        return cand[ok]

    def count_from(v1):
        if r == 1:
            return 1, [int(v1)]
        A = filt(pools[1], v1, codes[1][0])
        if r == 2:
            return len(A), ([int(v1), int(A[0])] if len(A) else None)
        B = filt(pools[2], v1, codes[2][0])
        total, wit = 0, None
        for v2 in A:
            if len(B) == 0:
                break
            C = filt(B, v2, codes[2][1])
            total += len(C)
            if wit is None and len(C):
                wit = [int(v1), int(v2), int(C[0])]
        return total, wit

    per = [0] * len(first)
    wits = [None] * len(first)

    def work(idx):
        for k in idx:
            per[k], wits[k] = count_from(first[k])
            if progress is not None:
                progress(k + 1, len(first))

    chunks = [list(range(i, len(first), max(threads, 1))) for i in range(max(threads, 1))]
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            list(ex.map(work, chunks))
    else:
        work(range(len(first)))
    witness = None
    if want_witness:
        witness = next((w for w in wits if w), None)
        if witness is not None:
            witness = [X[i] for i in witness]
    return sum(per), per, witness


def _norm_pools(P: HermLattice, target):
    norms = [target[i][i].re for i in range(len(target))]
    V = herm_short_vectors(P, max(norms))
    X = V.trace_coords
    pools = [np.array([k for k in range(len(V)) if V.norms[k] == n], dtype=np.int64) for n in norms]
    return X, pools


def count_isometric_sublattices(
    P: HermLattice,
    target: HermLattice,
    generators_from_minimal: bool = True,
    name: str = "target",
    orbit_reps: list | None = None,
    threads: int = 1,
    progress: Callable | None = None,
) -> RepCount:
    """Number of sublattices of P isometric to ``target`` (via its Gram matrix).

    Ordered tuples of vectors of P with the target's Gram matrix are counted
    and divided by the number of such tuples inside the target itself.
    ``orbit_reps`` is an optional list of (vector, orbit size) pairs for the
    first vector, supplied by a caller who knows the automorphism group.
    """
    F = P.field
    if target.field.d != F.d:
        raise HermitianError("target lives over a different field")
    if target.m > 3:
        raise HermitianError("target rank > 3 is unsupported")
    G = target.gram
    flags = []
    if generators_from_minimal:
        mn = herm_minimum(P)[0]
        if any(G[i][i].re != mn for i in range(target.m)):
            flags.append("target diagonal differs from min(P); scanning vectors of the target norms")
    X, pools = _norm_pools(P, G)
    per_orbit = None
    if orbit_reps is not None:
        index = {tuple(x.tolist()): k for k, x in enumerate(X)}
        v1s, weights = [], []
        for vec, w in orbit_reps:
            t = tuple(to_trace_coords(F, vec)) if not isinstance(vec, np.ndarray) else tuple(vec.tolist())
            if t not in index:
                raise HermitianError("orbit representative is not a vector of the required norm")
            v1s.append(index[t])
            weights.append(int(w))
        _, per, wit = _count_tuples(P, G, X, pools, v1s, threads=threads, progress=progress)
        raw = sum(c * w for c, w in zip(per, weights))
        per_orbit = [{"orbit_size": w, "count": c} for c, w in zip(per, weights)]
        method = "orbit-weighted scan of A(v1) profiles"
        flags.append("exhaustive only if the orbit representatives are complete")
    else:
        raw, _, wit = _count_tuples(P, G, X, pools, threads=threads, progress=progress)
        method = f"exhaustive scan over {len(pools[0])} first vectors"
    Xt, pools_t = _norm_pools(target, G)
    self_count, _, _ = _count_tuples(target, G, Xt, pools_t, want_witness=False)
    if self_count == 0:
        raise HermitianError("target basis not found among its own vectors")
    if raw % self_count:
        flags.append("raw count not divisible by the self count")
    witness = [[x.to_json() for x in from_trace_coords(F, v)] for v in wit] if wit else None
    return RepCount(name, _gram_json(G), int(raw), int(self_count), int(raw) // int(self_count),
                    method, orbit_reps is None, flags, per_orbit, witness)


def a_set_profile(P: HermLattice, v1, value) -> tuple[int, dict]:
    """Size of A(v1) = {v minimal : h(v, v1) = value} and the histogram of h on A(v1)."""
    F = P.field
    v1 = [F.coerce(x) for x in v1]
    value = F.coerce(value)
    mn, V = herm_minimum(P)
    if P.h(v1, v1) != mn:
        raise HermitianError(f"v1 has norm {P.h(v1, v1)}, not the minimum {mn}")
    tf = P.form
    x = np.array(to_trace_coords(F, v1), dtype=np.int64)[None, :]
    code = tf.encode(value)
    if code is None:
        return 0, {}
    X = V.trace_coords
    ok = (tf.tr(X, x)[:, 0] == code[0]) & (tf.trw(X, x)[:, 0] == code[1])
    A = X[ok]
    hist: dict[str, int] = {}
    if len(A):
        t1, t2 = tf.tr(A, A), tf.trw(A, A)
        for i in range(len(A)):
            for j in range(len(A)):
                if i != j:
                    key = str(tf.decode(t1[i, j], t2[i, j]))
                    hist[key] = hist.get(key, 0) + 1
    return int(len(A)), dict(sorted(hist.items()))


# --- tensor minimum ---------------------------------------------------------


def _equality_target(L: HermLattice, lam: Fraction) -> HermLattice:
    """Lattice with Gram lam * conj(G_L)^{-1}; a copy in M meets the bound with equality."""
    inv = _field_inverse([[x.conj() for x in row] for row in L.gram], L.field)
    return HermLattice(L.field, [[x * lam for x in row] for row in inv])


def _get_dr(L, r, overrides, search_high: bool):
    if overrides and r in overrides:
        v = overrides[r]
        if isinstance(v, DrResult):
            return v
        if isinstance(v, Radical):
            return DrResult(r, v, None, None, False, "supplied lower bound", "user")
        return DrResult(r, Fraction(v), Fraction(v), None, True, "supplied", "user")
    if 3 <= r < L.m:
        res = d_r(L, r, search=search_high)
        return res
    return d_r(L, r)


def _tensor_vector(L: HermLattice, M: HermLattice, fs) -> list:
    # z = sum_i e_i (x) f_i written on the basis e_i (x) g_j
    F = L.field
    z = [F.zero()] * (L.m * M.m)
    for i, f in enumerate(fs):
        for j in range(M.m):
            z[i * M.m + j] = f[j]
    return z


def _equality_case(L, M, r, lam, name_L, name_M, cert, threads=1):
    """Look for rank-r tensors of norm r*lam, the bound with equality.

    Needs one factor of rank exactly r; returns (count, witness norm) or None.
    """
    if L.m == r:
        A, B, swap = L, M, False
    elif M.m == r:
        A, B, swap = M, L, True
    else:
        return None
    target = _equality_target(A, lam)
    nm = name_M if swap else name_L
    rc = count_isometric_sublattices(B, target, generators_from_minimal=False,
                                     name=f"{lam} conj({nm})^#" if lam != 1 else f"conj({nm})^#", threads=threads)
    cert.rep_counts.append(rc)
    if rc.count == 0:
        return 0, None
    F = L.field
    fs = [tuple(F(Fraction(c["re"]), Fraction(c["im"])) for c in v) for v in rc.witness]
    T = tensor_herm(A, B)
    z = _tensor_vector(A, B, fs)
    nz = T.h(z, z).re
    cert.witnesses.append({"rank": r, "norm": str(nz), "factor": name_M if swap else name_L,
                           "images": rc.witness, "vector": [x.to_json() for x in z],
                           "order": "other (x) this" if swap else "this (x) other"})
    return rc.count, nz


def certify_tensor_min(
    L: HermLattice,
    M: HermLattice,
    claim,
    dr_L: dict | None = None,
    dr_M: dict | None = None,
    names: tuple[str, str] = ("L", "M"),
    cross_check: bool = True,
    search_high: bool = False,
    threads: int = 1,
    d3_replay: bool = False,
) -> Certificate:
    """Certify herm_min(L (x) M) = claim by the rank-by-rank argument.

    ``dr_L``/``dr_M`` override d_r values (rationals or DrResults).  With
    ``d3_replay`` a d=7 factor's d_3 lower bound comes from the rank-3 case
    analysis instead of the densest-lattice bound.
    """
    t0 = time.perf_counter()
    claim = Fraction(claim)
    cert = Certificate({"statement": f"herm_min({names[0]} (x) {names[1]}) = {claim}", "value": str(claim)},
                       "inconclusive")
    if L.field.d != M.field.d:
        cert.preconditions_checked.append({"same_field": False})
        return cert
    cert.preconditions_checked.append({"same_field": True})
    Tn = tensor_herm(L, M)
    integral = Tn.trace.is_even
    cert.preconditions_checked.append({"tensor_trace_even": integral})
    even_unimod = integral and Tn.trace.det == 1
    cert.preconditions_checked.append({"tensor_trace_even_unimodular": even_unimod})

    lowers = []
    attained = False
    refuted = False
    open_cases = False
    for r in range(1, min(L.m, M.m) + 1):
        a = _get_dr(L, r, dr_L, search_high)
        b = _get_dr(M, r, dr_M, search_high)
        for X, res, nm in ((L, a, names[0]), (M, b, names[1])):
            if (d3_replay and r == 3 and X.field.d == 7 and X.m > 3 and not res.certified
                    and not (dr_L if X is L else dr_M)):
                rep = certify_d3_at_least(X, 1)
                if rep.holds:
                    res.lower_bound, res.bound_source = Fraction(1), "rank-3 case analysis"
                cert.notes.append(f"d_3({nm}) case analysis: holds={rep.holds}")
        B = tensor_rank_bound(a, b, r)
        exact = a.certified and b.certified
        case = {"r": r, "bound": str(B), "bound_approx": round(float(B), 6), "exact_inputs": exact,
                "d_r": {names[0]: a.to_json(), names[1]: b.to_json()}}
        low = Radical.of(B.ceil()) if integral else B
        Bq = B.exact()
        if r == 1 and exact:
            case["status"] = "excludes" if Bq > claim else "equality-possible"
            if Bq <= claim:
                cert.witnesses.append({"rank": 1, "norm": str(Bq), "vector": "split: minimal (x) minimal"})
                attained |= Bq == claim
                refuted |= Bq < claim
            lowers.append(Bq)
        elif low > claim:
            case["status"] = "excludes"
            lowers.append(low)
        elif Bq is not None and ((exact and Bq == claim) or (integral and Bq == claim - 1 and Bq.denominator == 1)):
            # equality analysis decides whether the bound is met
            res = _equality_case(L, M, r, Bq / r, names[0], names[1], cert, threads)
            if res is None:
                case["status"] = "open"
                open_cases = True
                lowers.append(low)
            elif res[0] == 0:
                case["status"] = "excludes"
                case["equality"] = "refuted by representation count 0"
                lowers.append(Radical.of(Bq + 1) if integral else Radical(1, Bq, 1))
                if Bq == claim and not integral:
                    case["note"] = "strictly above the claim"
            else:
                case["status"] = "equality-possible"
                case["equality"] = f"realised, {res[0]} sublattice(s); witness norm {res[1]}"
                lowers.append(Radical.of(Bq))
                attained |= res[1] == claim
                refuted |= res[1] < claim
        elif low == claim:
            case["status"] = "equality-possible"
            lowers.append(low)
        else:
            case["status"] = "open"
            open_cases = True
            lowers.append(low)
        cert.rank_cases.append(case)

    lower = min(Radical.of(x) for x in lowers)
    cert.lower_bound = str(lower)
    if even_unimod:
        ext = Fraction(extremal_bound(Tn.trace.n), 2)
        cert.notes.append(f"trace lattice even unimodular of dim {Tn.trace.n}: min <= {ext}")
        if ext == claim and lower >= claim:
            attained = True
        if ext < claim:
            refuted = True
    if refuted:
        cert.verdict = "refuted"
    elif lower >= claim and attained and not open_cases:
        cert.verdict = "proven"
    else:
        cert.verdict = "bounded"
    if cross_check and Tn.trace.n <= 24:
        mn = herm_minimum(Tn)[0]
        cert.preconditions_checked.append({"direct_enumeration_min": str(mn), "agrees": (mn == claim) == (cert.verdict == "proven")})
    cert.runtime_ms = int((time.perf_counter() - t0) * 1000)
    return cert


# --- the d = 11 analysis -----------------------------------------------------


def t_lattice(F=None) -> HermLattice:
    from .number_field import make_field

    F = F or make_field(11)
    a = F.omega
    return HermLattice(F, [[F(2), a], [a.conj(), F(2)]])


def certify_48(P: HermLattice, check_preconditions: bool = True, require_leech: bool = True,
               threads: int = 1) -> Certificate:
    """Decide min(T (x) P) in {2, 3} for an O_K-structure P over Q(sqrt(-11)).

    A norm-2 tensor has rank 2 and lives in T (x) S for a rank-2 section S of
    P with d_S <= 1.  Reduction theory and the norm equation leave a short list
    of Gram matrices for S; each is counted in P and, when present, min(T (x) S)
    is computed directly.  If none yields norm 2 the minimum is at least 3, and
    for a Leech structure the extremal bound in dimension 48 gives equality.
    """
    t0 = time.perf_counter()
    F = P.field
    cert = Certificate({"statement": "herm_min(T (x) P) in {2, 3}", "value": None}, "inconclusive")
    pre = {"field_d_11": F.d == 11}
    if not pre["field_d_11"]:
        cert.preconditions_checked.append(pre)
        return cert
    T = t_lattice(F)
    pre["trace_even"] = P.trace.is_even
    if check_preconditions and require_leech:
        pre["rank_12"] = P.m == 12
        pre["trace_unimodular"] = P.trace.det == 1
    mn = herm_minimum(P)[0]
    pre["min_P_is_2"] = mn == 2
    cert.preconditions_checked.append(pre)
    if not all(pre.values()):
        cert.notes.append(f"min(P) = {mn}")
        cert.runtime_ms = int((time.perf_counter() - t0) * 1000)
        return cert
    mu = F.euclidean_min
    cert.rank_cases.append({"r": 1, "bound": "4", "status": "excludes", "note": "min(T) min(P) = 4"})
    lbS = mn * mn * (1 - mu)
    cert.notes.append(f"d_S >= m^2(1-mu) = {lbS} and d_S in (1/11)Z")
    types = []
    for k in range(1, 12):
        dS = Fraction(k, 11)
        if dS < lbS:
            continue
        for h1 in range(2, 10):
            if (1 - mu) * h1 * h1 > dS:
                break
            for h2 in range(h1, 20):
                if h2 > dS / h1 + mu * h1:
                    break
                target = h1 * h2 - dS
                sols = elements_of_norm(F, target, sqrt_d=True)
                cert.notes.append(f"d_S = {dS}, norms ({h1},{h2}): N(z) = {target} has {len(sols)} solutions")
                seen = set()
                for z in sols:
                    key = max(z.sort_key(), (-z).sort_key())
                    if key not in seen:
                        seen.add(key)
                        types.append((dS, h1, h2, z))
    case2 = {"r": 2, "bound": str(tensor_rank_bound(lbS, 1, 2)), "status": "excludes", "types": []}
    found_two = False
    kept: list[HermLattice] = []
    for dS, h1, h2, z in types:
        S = HermLattice(F, [[F(h1), z], [z.conj(), F(h2)]])
        if any(herm_isometry(S, K) is not None for K in kept):
            continue
        kept.append(S)
        rc = count_isometric_sublattices(P, S, generators_from_minimal=False,
                                         name=f"[[{h1},{z}],[*,{h2}]]", threads=threads)
        cert.rep_counts.append(rc)
        info = {"d_S": str(dS), "gram": _gram_json(S.gram), "count": rc.count}
        if rc.count:
            m2 = herm_minimum(tensor_herm(T, S))[0]
            info["min_T_tensor_S"] = str(m2)
            if m2 <= 2:
                found_two = True
                cert.witnesses.append({"rank": 2, "norm": str(m2), "section": rc.witness})
        case2["types"].append(info)
    if found_two:
        case2["status"] = "equality-possible"
    cert.rank_cases.append(case2)
    if found_two:
        cert.verdict, cert.claim["value"], cert.lower_bound = "proven", "2", "2"
    else:
        cert.lower_bound = "3"
        n = 4 * P.m
        if pre.get("trace_unimodular") and n % 24 == 0 and Fraction(extremal_bound(n), 2) == 3:
            cert.verdict, cert.claim["value"] = "proven", "3"
            cert.notes.append(f"trace of T (x) P is even unimodular of dim {n}: min <= 3")
        else:
            cert.verdict, cert.claim["value"] = "bounded", ">= 3"
    cert.runtime_ms = int((time.perf_counter() - t0) * 1000)
    return cert


# --- Z-tensor perfection ------------------------------------------------------


def tensor_perfection_report(L: ZLattice, M: ZLattice, enumerate_limit: int = 16) -> dict:
    """Perfection rank of L (x) M against the bound from split minimal vectors."""
    l, m = L.n, M.n
    rep = {"ranks": [l, m], "threshold": l * m * (l * m + 1) // 2}
    if min(l, m) < 2:
        rep["in_scope"] = False
        rep["conclusion"] = "out of scope: both ranks must be at least 2"
        return rep
    rep["in_scope"] = True
    rep["split_bound"] = (l * (l + 1) // 2) * (m * (m + 1) // 2)
    T = tensor_z(L, M)
    if l * m <= enumerate_limit:
        mn, kiss = zl_minimum(T)
        rep["min"] = str(mn)
        rep["kissing"] = kiss
        rep["perfection_rank"] = perfection_rank(T)
        rep["method"] = "enumeration of minimal vectors of the tensor"
    elif kitaoka_split_rule(l, m):
        SL, SM = minimal_vectors(L), minimal_vectors(M)
        n = l * m
        rows = []
        for x in SL.vectors.tolist():
            for y in SM.vectors.tolist():
                v = [a * b for a in x for b in y]
                rows.append([v[i] * v[j] for i in range(n) for j in range(i, n)])
        rep["min"] = str(SL.bound * SM.bound)
        rep["perfection_rank"] = integer_rank(rows)
        rep["method"] = "split minimal vectors (min rank <= 43)"
    else:
        rep["conclusion"] = "minimal vectors not known to be split"
        return rep
    perfect = rep["perfection_rank"] == rep["threshold"]
    rep["perfect"] = perfect
    rep["conclusion"] = "perfect" if perfect else "not perfect, hence not extreme"
    return rep
