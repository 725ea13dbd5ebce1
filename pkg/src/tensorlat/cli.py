"""Command-line interface: ``tensorlat <verb> [--catalog NAME | --in FILE]... [options]``.

Exit codes: 0 success or proven, 2 invalid input or usage, 3 claim not proven.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import catalog
from .catalog import CatalogEntry, CatalogError
from .certify import a_set_profile, certify_48, certify_tensor_min, count_isometric_sublattices, tensor_perfection_report
from .hermitian import (
    HermLattice,
    certify_d3_at_least,
    d_r,
    herm_dual,
    herm_isometric,
    herm_minimum,
    herm_short_vectors,
    tensor_herm,
)
from .number_field import FieldError, euclidean_minimum, make_field
from .zlattice import (
    LatticeError,
    is_isometric,
    perfection_rank,
    short_vectors,
    tensor_z,
    zl_dual,
    zl_minimum,
)

EXIT_OK, EXIT_INVALID, EXIT_UNPROVEN = 0, 2, 3


class _Input(argparse.Action):
    # --catalog and --in share one ordered list
    def __call__(self, parser, ns, value, option_string=None):
        kind = "catalog" if option_string == "--catalog" else "file"
        ns.inputs = (ns.inputs or []) + [(kind, value)]


def _entries(args, n: int | None = None) -> list[CatalogEntry]:
    out = []
    for kind, v in args.inputs or []:
        out.append(catalog.get(v) if kind == "catalog" else catalog.load(v))
    if n is not None and len(out) != n:
        raise CatalogError(f"{args.verb} needs {n} input lattice(s), got {len(out)}")
    return out


def _emit(args, obj, text: str):
    if args.json:
        print(json.dumps(obj, sort_keys=True, indent=2))
    else:
        print(text)


def cmd_info(args):
    (e,) = _entries(args, 1)
    L = e.data
    if isinstance(L, HermLattice):
        obj = {"name": e.name, "kind": "hermitian", "d": L.field.d, "rank": L.m, "disc": str(L.disc),
               "trace_det": str(L.trace.det), "trace_even": L.trace.is_even}
        text = (f"{e.name}: hermitian over Q(sqrt(-{L.field.d})), rank {L.m}, disc = {L.disc}, "
                f"trace det = {L.trace.det}, trace even = {L.trace.is_even}")
    else:
        obj = {"name": e.name, "kind": "euclidean", "rank": L.n, "det": str(L.det), "even": L.is_even,
               "unimodular": L.is_unimodular}
        text = f"{e.name}: euclidean, rank {L.n}, det = {L.det}, even = {L.is_even}, unimodular = {L.is_unimodular}"
    _emit(args, obj, text)


def cmd_min(args):
    (e,) = _entries(args, 1)
    L = e.data
    if isinstance(L, HermLattice):
        mn, V = herm_minimum(L)
        obj = {"min": str(mn), "minimal_vectors": len(V), "trace_min": str(2 * mn)}
        text = f"min = {mn}, minimal vectors = {len(V)}"
    else:
        mn, kiss = zl_minimum(L)
        obj = {"min": str(mn), "kissing": kiss}
        text = f"min = {mn}, kissing = {kiss}"
    _emit(args, obj, text)


def cmd_shortvecs(args):
    (e,) = _entries(args, 1)
    if args.bound is None:
        raise LatticeError("shortvecs needs --bound")
    L = e.data
    if isinstance(L, HermLattice):
        V = herm_short_vectors(L, args.bound, unit_classes=True)
        rows = [(str(V.norms[i]), [str(c) for c in V.coords(i)]) for i in range(len(V))]
        if args.json:
            _emit(args, [{"norm": n, "coords": c} for n, c in rows], "")
        else:
            for n, c in rows:
                print(f"{n};{','.join(c)}")
        return
    S = short_vectors(L, args.bound)
    if args.json:
        _emit(args, [{"norm": line.split(";")[0], "coords": line.split(";")[1]} for line in S.lines()], "")
    else:
        for line in S.lines():
            print(line)


def cmd_perfection(args):
    es = _entries(args)
    if len(es) == 2:
        rep = tensor_perfection_report(es[0].data, es[1].data)
        text = "; ".join(f"{k} = {v}" for k, v in rep.items())
        _emit(args, rep, text)
        return
    (e,) = es
    r = perfection_rank(e.data)
    full = e.data.n * (e.data.n + 1) // 2
    _emit(args, {"perfection_rank": r, "threshold": full, "perfect": r == full},
          f"perfection rank = {r} of {full}, perfect = {r == full}")


def cmd_dr(args):
    (e,) = _entries(args, 1)
    res = d_r(e.data, args.r, effort=args.effort)
    text = (f"d_{res.r} = {res.value}" if res.certified
            else f"d_{res.r} in [{res.lower_bound}, {res.best_found}] (not certified)")
    _emit(args, res.to_json(), text + f" [{res.method}]")
    return EXIT_OK if res.certified else EXIT_UNPROVEN


def _write_or_print(args, entry: CatalogEntry):
    if args.out:
        catalog.save(entry, args.out)
        print(f"wrote {args.out}")
    else:
        print(json.dumps(entry.to_json(), sort_keys=True, indent=1))


def cmd_tensor(args):
    a, b = _entries(args, 2)
    if a.kind != b.kind:
        raise LatticeError("tensor of a euclidean and a hermitian lattice")
    data = tensor_herm(a.data, b.data) if a.kind == "hermitian" else tensor_z(a.data, b.data)
    _write_or_print(args, CatalogEntry(f"{a.name}x{b.name}", a.kind, data, "computed"))


def cmd_trace(args):
    (e,) = _entries(args, 1)
    if e.kind != "hermitian":
        raise LatticeError("trace needs a hermitian lattice")
    _write_or_print(args, CatalogEntry(f"trace({e.name})", "euclidean", e.data.trace, "computed"))


def cmd_dual(args):
    (e,) = _entries(args, 1)
    data = herm_dual(e.data) if e.kind == "hermitian" else zl_dual(e.data)
    _write_or_print(args, CatalogEntry(f"dual({e.name})", e.kind, data, "computed"))


def cmd_isometry(args):
    a, b = _entries(args, 2)
    if a.kind != b.kind:
        raise LatticeError("cannot compare a euclidean with a hermitian lattice")
    if a.kind == "hermitian":
        how = herm_isometric(a.data, b.data)
        _emit(args, {"isometric": how is not None, "type": how},
              f"isometric ({how})" if how else "not isometric")
    else:
        ok = is_isometric(a.data, b.data)
        _emit(args, {"isometric": ok}, "isometric" if ok else "not isometric")


def cmd_deep_holes(args):
    if args.d is None:
        raise FieldError("deep-holes needs -d")
    F = make_field(args.d)
    rep = euclidean_minimum(F)
    obj = {"d": args.d, "mu": str(rep.mu), "deep_holes": len(rep.holes), "orbits": len(rep.orbits),
           "representatives": [str(z) for z in rep.representatives],
           "one_minus_mu_times_disc": str((1 - rep.mu) * abs(F.disc))}
    _emit(args, obj, f"mu = {rep.mu}, {len(rep.holes)} deep holes, {len(rep.orbits)} orbits")


def _progress(args):
    if not args.progress:
        return None

    def report(k, n):
        if k == n or k % max(n // 100, 1) == 0:
            print(f"\r{k}/{n}", end="", file=sys.stderr, flush=True)
            if k == n:
                print(file=sys.stderr)
    return report


def cmd_rep_count(args):
    P, target = _entries(args, 2)
    rc = count_isometric_sublattices(P.data, target.data, name=target.name, threads=args.threads,
                                     progress=_progress(args))
    _emit(args, rc.to_json(), f"{target.name} in {P.name}: count = {rc.count} (raw {rc.raw} / self {rc.self_count})")


def cmd_a_set(args):
    (P,) = _entries(args, 1)
    F = P.data.field
    v1 = [F(Fraction(x), 0) for x in args.v1.split(",")] if args.v1 else [F.one()] + [F.zero()] * (P.data.m - 1)
    value = F(Fraction(args.value_re), Fraction(args.value_im))
    size, hist = a_set_profile(P.data, v1, value)
    _emit(args, {"size": size, "histogram": hist}, f"|A(v1)| = {size}")


def _verdict_exit(cert):
    return EXIT_OK if cert.verdict == "proven" else EXIT_UNPROVEN


def cmd_certify_tensor(args):
    a, b = _entries(args, 2)
    if args.claim is None:
        raise LatticeError("certify-tensor needs --claim")
    cert = certify_tensor_min(a.data, b.data, args.claim, names=(a.name, b.name), threads=args.threads)
    lines = [f"claim: {cert.claim['statement']}", f"verdict: {cert.verdict}", f"lower bound: {cert.lower_bound}"]
    lines += [f"  r = {c['r']}: bound {c['bound']}, {c['status']}" for c in cert.rank_cases]
    _emit(args, cert.to_json(), "\n".join(lines))
    return _verdict_exit(cert)


def cmd_certify_48(args):
    (P,) = _entries(args, 1)
    cert = certify_48(P.data, require_leech=not args.small, threads=args.threads)
    text = f"verdict: {cert.verdict}, min(T (x) {P.name}) = {cert.claim['value']}"
    _emit(args, cert.to_json(), text)
    return _verdict_exit(cert)


def cmd_certify_d3(args):
    (P,) = _entries(args, 1)
    rep = certify_d3_at_least(P.data, args.threshold)
    _emit(args, rep.to_json(), f"d_3 >= {args.threshold}: {rep.holds}")
    return EXIT_OK if rep.holds else EXIT_UNPROVEN


def cmd_catalog(args):
    es = _entries(args)
    if not es:
        _emit(args, list(catalog.NAMES), "\n".join(catalog.NAMES))
        return
    for e in es:
        print(json.dumps(e.to_json(), sort_keys=True, indent=1))


COMMANDS = {
    "info": cmd_info,
    "min": cmd_min,
    "shortvecs": cmd_shortvecs,
    "perfection": cmd_perfection,
    "dr": cmd_dr,
    "tensor": cmd_tensor,
    "trace": cmd_trace,
    "dual": cmd_dual,
    "isometry": cmd_isometry,
    "deep-holes": cmd_deep_holes,
    "rep-count": cmd_rep_count,
    "a-set": cmd_a_set,
    "certify-tensor": cmd_certify_tensor,
    "certify-48": cmd_certify_48,
    "certify-d3": cmd_certify_d3,
    "catalog": cmd_catalog,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tensorlat", description="Exact lattice and tensor-minimum computations.")
    p.add_argument("verb", choices=sorted(COMMANDS))
    p.add_argument("--catalog", action=_Input, metavar="NAME", help="built-in lattice (repeatable)")
    p.add_argument("--in", action=_Input, metavar="FILE", help="lattice JSON file (repeatable)")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--out", metavar="FILE", help="write the resulting lattice here")
    p.add_argument("-d", type=int, help="field Q(sqrt(-d))")
    p.add_argument("-r", type=int, default=1, help="rank for dr")
    p.add_argument("--bound", type=Fraction, help="norm bound for shortvecs")
    p.add_argument("--claim", type=Fraction, help="claimed minimum for certify-tensor")
    p.add_argument("--threshold", type=Fraction, default=Fraction(1), help="bound for certify-d3")
    p.add_argument("--effort", type=int, default=200_000, help="tuple budget for uncertified d_r searches")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--progress", action="store_true", help="report scan progress on stderr")
    p.add_argument("--small", action="store_true", help="certify-48: drop the rank-12 Leech preconditions")
    p.add_argument("--v1", help="a-set: first vector, comma separated rational coordinates")
    p.add_argument("--value-re", default="0")
    p.add_argument("--value-im", default="0")
    p.set_defaults(inputs=None)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code = COMMANDS[args.verb](args)
    except (LatticeError, FieldError, CatalogError, ValueError, ZeroDivisionError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK if code is None else code


if __name__ == "__main__":
    sys.exit(main())
