"""Command-line front end: named congruence checks and series dumps."""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import cache, partitions
from .forms import form
from .gamma0 import e2t, hauptmodul, phi_t
from .verifier import MASTER_MODULUS, REGISTRY, CheckOptions, run_checks

_FORM_KINDS = ("euler", "E2", "E4", "E6", "delta", "j", "e14_over_delta")
_STREAM_KINDS = ("p", "spt", "d", "a")
_LEVEL_KINDS = ("G", "E2t", "phi")
_CACHEABLE = _STREAM_KINDS


def _parse_ells(text):
    try:
        ells = tuple(int(x) for x in text.split(",") if x)
    except ValueError:
        raise argparse.ArgumentTypeError("expected a comma-separated integer list")
    if not ells:
        raise argparse.ArgumentTypeError("empty ell list")
    return ells


def build_parser():
    ap = argparse.ArgumentParser(
        prog="sptlab",
        description="exact-arithmetic q-series laboratory: congruence sweeps "
        "over partition and smallest-parts coefficient streams",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    chk = sub.add_parser("check", help="run named congruence checks")
    chk.add_argument(
        "name",
        help="registry name or 'all'; one of: %s" % ", ".join(REGISTRY),
    )
    chk.add_argument("--ell", type=_parse_ells, default=None, metavar="L1,L2,...")
    chk.add_argument("--t", type=int, choices=(5, 7, 13), default=None)
    chk.add_argument("--nmax", type=int, default=None, help="sweep bound override")
    chk.add_argument(
        "--prec",
        type=int,
        default=None,
        help="precision override; used as the sweep bound when --nmax is absent",
    )
    chk.add_argument(
        "--mod",
        default=None,
        help="'exact' to keep streams in exact arithmetic, or a modulus override",
    )
    chk.add_argument("--cache-dir", default=None)
    chk.add_argument("--jobs", type=int, default=1)
    chk.add_argument("--format", choices=("text", "json"), default="text")

    ser = sub.add_parser("series", help="print or store one coefficient stream")
    ser.add_argument("kind", choices=_STREAM_KINDS + _FORM_KINDS + _LEVEL_KINDS)
    ser.add_argument("--n", type=int, required=True)
    ser.add_argument("--mod", type=int, default=0)
    ser.add_argument("--t", type=int, choices=(5, 7, 13), default=None)
    ser.add_argument("--out", default=None, help="directory to write a cache file into")
    return ap


def _check_options(args):
    exact = False
    modulus = None
    if args.mod is not None:
        if args.mod == "exact":
            exact = True
        else:
            try:
                modulus = int(args.mod)
            except ValueError:
                raise ValueError("--mod wants 'exact' or an integer, got %r" % args.mod)
            if modulus < 2:
                raise ValueError("--mod must be at least 2")
    return CheckOptions(
        ells=args.ell,
        t=args.t,
        nmax=args.nmax if args.nmax is not None else args.prec,
        modulus=modulus,
        exact=exact,
        cache_dir=args.cache_dir,
    )


def _seed_from_cache(cache_dir):
    for kind in _CACHEABLE:
        best = cache.scan(cache_dir, kind, MASTER_MODULUS)
        if best:
            got = cache.load(cache_dir, best)
            if got:
                partitions.seed(
                    kind, got[0], MASTER_MODULUS, got[1], frac24=best.frac24
                )


def _store_to_cache(cache_dir):
    for (kind, modulus), tab in partitions.bank_tables().items():
        if modulus != MASTER_MODULUS or kind not in _CACHEABLE:
            continue
        existing = cache.scan(cache_dir, kind, modulus)
        if existing and existing.nmax >= tab.hi:
            continue
        sk = cache.SeriesKind(kind, tab.hi, 0, modulus, tab.frac24)
        cache.store(cache_dir, sk, [int(v) for v in tab.values], tab.lo)


def _run_check(args):
    opts = _check_options(args)
    names = list(REGISTRY) if args.name == "all" else [args.name]
    if args.cache_dir:
        _seed_from_cache(args.cache_dir)
    t0 = time.perf_counter()
    reports = run_checks(names, opts, jobs=max(1, args.jobs))
    elapsed = time.perf_counter() - t0
    if args.cache_dir:
        _store_to_cache(args.cache_dir)
    if args.format == "json":
        print(json.dumps([r.to_dict() for r in reports], indent=2))
    else:
        for r in reports:
            print(r.summary_line())
        counts = {"pass": 0, "fail": 0, "skipped": 0}
        for r in reports:
            counts[r.status] += 1
        print(
            "%d checks: %d pass, %d fail, %d skipped (%.1f s)"
            % (len(reports), counts["pass"], counts["fail"], counts["skipped"], elapsed)
        )
    return 1 if any(r.status == "fail" for r in reports) else 0


def _series_values(args):
    kind, n, mod, t = args.kind, args.n, args.mod, args.t
    if n < 0:
        raise ValueError("--n must be nonnegative")
    if kind in _LEVEL_KINDS:
        if t is None:
            raise ValueError("kind %r needs --t" % kind)
        builder = {"G": hauptmodul, "E2t": e2t, "phi": phi_t}[kind]
        ser = builder(t, n, mod)
        return [ser.coeff(i) for i in range(ser.lo, n + 1)], ser.lo, ser.frac24, t
    if kind in _STREAM_KINDS:
        tab = partitions.stream(kind, n, mod)
        return [tab.at(i) for i in range(tab.lo, n + 1)], tab.lo, tab.frac24, 0
    ser = form(kind, n, mod)
    return [ser.coeff(i) for i in range(ser.lo, n + 1)], ser.lo, ser.frac24, 0


def _run_series(args):
    values, lo, frac24, t = _series_values(args)
    if args.out:
        sk = cache.SeriesKind(args.kind, args.n, t, args.mod, frac24)
        path = cache.store(args.out, sk, values, lo)
        print(path)
    else:
        for i, v in enumerate(values):
            print("%d %d" % (lo + i, v))
    return 0


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.command == "check":
            return _run_check(args)
        return _run_series(args)
    except ValueError as exc:
        print("sptlab: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
