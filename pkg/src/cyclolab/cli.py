"""Command-line front end: subcommand dispatch, JSON/CSV record emission
and content-addressed result caching.

Every run emits one experiment record {command, inputs, results, status,
seed, version, wall_ms}.  Records rerun with identical inputs and seed
reproduce the results payload bit for bit; wall_ms is timing metadata and
is excluded from cache keys (drop it entirely with --no-timing).
Exit codes: 0 success, 2 input error, 3 inconclusive.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import re
import sys
import time
from dataclasses import asdict, is_dataclass
from fractions import Fraction

import numpy as np

from . import __version__
from .cyclotomic import CyclotomicNumber
from . import flatsums, equidist, heights, kummer, radical

CACHE_ENV = "CYCLOLAB_CACHE"


# ------------------------------------------------------------- serialization


def _plain(obj):
    """Recursively convert to JSON-ready data: Fractions as "p/q" strings,
    complex as {re, im}, cyclotomic values as their text form."""
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}" if obj.denominator != 1 else str(obj.numerator)
    if isinstance(obj, CyclotomicNumber):
        return obj.to_text()
    if isinstance(obj, complex):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if is_dataclass(obj) and not isinstance(obj, type):
        return {k: _plain(v) for k, v in asdict(obj).items()}
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj


def _dumps(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ": "), indent=1)


def _flatten(d, prefix=""):
    rows = []
    if isinstance(d, dict):
        for k in sorted(d):
            rows += _flatten(d[k], f"{prefix}{k}.")
    elif isinstance(d, list):
        for i, v in enumerate(d):
            rows += _flatten(v, f"{prefix}{i}.")
    else:
        rows.append((prefix.rstrip("."), d))
    return rows


def _to_csv(record) -> str:
    results = record["results"]
    lines = []
    if isinstance(results, list) and results and all(isinstance(r, dict) for r in results):
        keys = sorted({k for r in results for k in _dict_keys_flat(r)})
        lines.append(",".join(keys))
        for r in results:
            flat = dict(_flatten(r))
            lines.append(",".join(_csv_cell(flat.get(k, "")) for k in keys))
    else:
        lines.append("key,value")
        for k, v in _flatten(results):
            lines.append(f"{_csv_cell(k)},{_csv_cell(v)}")
    return "\n".join(lines) + "\n"


def _dict_keys_flat(r):
    return [k for k, _ in _flatten(r)]


def _csv_cell(v) -> str:
    s = str(v)
    if "," in s or '"' in s or "\n" in s:
        s = '"' + s.replace('"', '""') + '"'
    return s


# ------------------------------------------------------------------ parsing


def _parse_ints(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def _parse_fraction(text: str) -> Fraction:
    return Fraction(text)


def _parse_coeffs(text: str) -> list[CyclotomicNumber]:
    return [CyclotomicNumber.parse(part.strip()) for part in text.split(";")]


def _parse_arcs(text: str) -> equidist.ArcBox:
    """"x1:eps1,x2:eps2" with radians floats, or 'p/q t' turns: "1/8t:1/16t"."""
    arcs = []
    for part in text.split(","):
        c_s, _, e_s = part.partition(":")
        c_s, e_s = c_s.strip(), e_s.strip()
        if c_s.endswith("t") and e_s.endswith("t"):
            arcs.append(equidist.Arc(Fraction(c_s[:-1]), Fraction(e_s[:-1])))
        else:
            arcs.append(equidist.Arc(float(c_s), float(e_s)))
    return equidist.ArcBox(arcs)


_TERM_RE = re.compile(r"([+-]?[^+-]+)")


def _parse_minpoly(text: str) -> tuple[int, ...]:
    """"x^3-2" style integer polynomials, ascending coefficient output."""
    text = text.replace(" ", "")
    coeffs: dict[int, int] = {}
    for term in _TERM_RE.findall(text):
        if not term or term in "+-":
            continue
        sign = -1 if term.startswith("-") else 1
        term = term.lstrip("+-")
        if "x" in term:
            c_s, _, rest = term.partition("x")
            c = int(c_s) if c_s else 1
            k = int(rest[1:]) if rest.startswith("^") else 1
        else:
            c, k = int(term), 0
        coeffs[k] = coeffs.get(k, 0) + sign * c
    deg = max(coeffs)
    return tuple(coeffs.get(i, 0) for i in range(deg + 1))


def _radical_from_args(args) -> radical.RadicalSum:
    failures = _parse_ints(args.c) if getattr(args, "c", None) else None
    return radical.parse_radical_sum(args.sum, D=getattr(args, "D", None),
                                     failures=failures)


# ------------------------------------------------------------------ handlers


def _handle_flat_verify(args):
    mu = _parse_fraction(args.mu)
    if args.numeric:
        coeffs = [complex(c) for c in args.coeffs.split(";")]
        f = flatsums.numeric_sum(args.d, list(zip(_parse_ints(args.exponents), coeffs)), float(mu))
        rep = flatsums.is_flat(f)
        results = {"flat": rep.flat, "witness": rep.witness,
                   "max_deviation": rep.max_deviation, "mode": rep.mode}
    else:
        coeffs = _parse_coeffs(args.coeffs)
        f = flatsums.exact_sum(args.d, list(zip(_parse_ints(args.exponents), coeffs)), mu)
        rep = flatsums.is_flat(f)
        validity = flatsums.validate_definition(f)
        results = {"flat": rep.flat, "witness": rep.witness, "mode": rep.mode,
                   "validity": validity}
    status = "flat" if rep.flat else "not-flat"
    inputs = {"d": args.d, "exponents": args.exponents, "coeffs": args.coeffs,
              "mu": args.mu, "numeric": args.numeric}
    return inputs, results, status


def _handle_flat_search(args):
    res = flatsums.flat_search(_parse_ints(args.exponents), args.d, args.mu,
                               restarts=args.restarts, seed=args.seed)
    inputs = {"d": args.d, "exponents": args.exponents, "mu": args.mu,
              "restarts": args.restarts}
    return inputs, res, res["verdict"]


def _handle_sn_survey(args):
    rows = flatsums.sn_survey(args.N, args.dmax, restarts=args.restarts,
                              seed=args.seed, threads=args.threads)
    inputs = {"N": args.N, "dmax": args.dmax, "restarts": args.restarts}
    return inputs, rows, "ok"


def _handle_reduce(args):
    f = flatsums.exact_sum(args.d,
                           list(zip(_parse_ints(args.exponents), _parse_coeffs(args.coeffs))),
                           _parse_fraction(args.mu))
    cert = flatsums.reduce_instance(f)
    results = {
        "q": cert.q, "q_prime": cert.q_prime, "e": cert.e, "d_prime": cert.d_prime,
        "p": list(cert.p), "c": list(cert.c), "groups": [list(g) for g in cert.groups],
        "reduced_exponents": list(cert.reduced.exponents),
        "reduced_coefficients": [a for _, a in cert.reduced.terms],
        "mu": cert.reduced.mu,
    }
    inputs = {"d": args.d, "exponents": args.exponents, "coeffs": args.coeffs, "mu": args.mu}
    return inputs, results, "ok"


def _handle_arc_count(args):
    orbit = equidist.RootTupleOrbit(args.m, tuple(_parse_ints(args.k)))
    box = _parse_arcs(args.arcs)
    rep = equidist.arc_count(orbit, box, threads=args.threads)
    if args.hist_out:
        # angle histogram (turns) of the first coordinate over the orbit
        angles = [((r * orbit.k[0]) % orbit.m) / orbit.m for r in range(1, orbit.m + 1)]
        hist, edges = np.histogram(angles, bins=64, range=(0.0, 1.0))
        with open(args.hist_out, "w") as fh:
            fh.write("lo,hi,count\n")
            for i in range(len(hist)):
                fh.write(f"{float(edges[i])!r},{float(edges[i+1])!r},{int(hist[i])}\n")
    inputs = {"m": args.m, "k": args.k, "arcs": args.arcs}
    return inputs, rep, "ok"


def _handle_weyl(args):
    orbit = equidist.RootTupleOrbit(args.m, tuple(_parse_ints(args.k)))
    val = equidist.weyl_sum(orbit, _parse_ints(args.n))
    inputs = {"m": args.m, "k": args.k, "n": args.n}
    return inputs, {"value": val, "period": equidist.orbit_period(orbit)}, "ok"


def _handle_strict_check(args):
    window = []
    for part in args.seq.split(";"):
        m_s, _, k_s = part.partition(":")
        window.append((int(m_s), _parse_ints(k_s)))
    res = equidist.strictness_window(window, threshold=args.threshold)
    return {"seq": args.seq, "threshold": args.threshold}, res, res["verdict"]


def _handle_orbit(args):
    x = _radical_from_args(args)
    moduli = radical.orbit_moduli(x)
    lo, hi = min(moduli), max(moduli)
    if hi - lo < 1e-12:
        lo, hi = lo - 0.5, hi + 0.5  # constant orbit: widen for binning
    hist, edges = np.histogram(moduli, bins=args.bins, range=(lo, hi))
    results = {
        "orbit_size": len(moduli),
        "min": min(moduli), "max": max(moduli),
        "mean": float(np.mean(moduli)),
        "histogram": [
            {"lo": float(edges[i]), "hi": float(edges[i + 1]), "count": int(hist[i])}
            for i in range(len(hist))
        ],
        "moduli": moduli if len(moduli) <= 64 else None,
    }
    if args.hist_out:
        with open(args.hist_out, "w") as fh:
            fh.write("lo,hi,count\n")
            for i in range(len(hist)):
                fh.write(f"{float(edges[i])!r},{float(edges[i+1])!r},{int(hist[i])}\n")
    inputs = {"sum": args.sum, "D": args.D, "c": args.c, "bins": args.bins}
    return inputs, results, "ok"


def _handle_dgamma(args):
    x = _radical_from_args(args)
    frac, concyclic = radical.d_gamma_eps(x, args.eps)
    if args.hist_out:
        moduli = radical.orbit_moduli(x)
        lo, hi = min(moduli), max(moduli)
        if hi - lo < 1e-12:
            lo, hi = lo - 0.5, hi + 0.5
        hist, edges = np.histogram(moduli, bins=32, range=(lo, hi))
        with open(args.hist_out, "w") as fh:
            fh.write("lo,hi,count\n")
            for i in range(len(hist)):
                fh.write(f"{float(edges[i])!r},{float(edges[i+1])!r},{int(hist[i])}\n")
    inputs = {"sum": args.sum, "eps": args.eps, "D": args.D, "c": args.c}
    return inputs, {"fraction": frac, "concyclic": concyclic}, "ok"


def _handle_sigma_search(args):
    x = _radical_from_args(args)
    box = _parse_arcs(args.arcs)
    found = radical.sigma_search(x, box, args.eps)
    results = {"count": len(found), "elements": [{"t": g.t, "r": list(g.r)} for g in found]}
    inputs = {"sum": args.sum, "eps": args.eps, "arcs": args.arcs, "D": args.D, "c": args.c}
    return inputs, results, "ok"


def _handle_factor_out(args):
    x = _radical_from_args(args)
    y, z = radical.factor_out_division_point(x)
    results = {
        "monomial": z.to_text(),
        "monomial_exponents": [e for e in z.exponents],
        "reduced_denominators": list(y.context.denominators),
        "reduced_terms": [
            {"coefficient": a, "exponents": list(k)} for a, k in y.terms
        ],
    }
    inputs = {"sum": args.sum, "D": args.D, "c": args.c}
    return inputs, results, "ok"


def _handle_height(args):
    if args.radical is None and args.minpoly is None:
        raise ValueError("provide --minpoly or --radical")
    if args.radical is not None:
        a = _parse_fraction(args.radical)
        h = heights.radical_height(a, args.n)
        poly = heights.radical_minpoly(a, args.n)
        results = {"height": h, "degree": args.n,
                   "mahler_measure": float(np.exp(h * args.n))}
        inputs = {"radical": args.radical, "n": args.n}
    else:
        poly = _parse_minpoly(args.minpoly)
        h = heights.weil_height(poly)
        results = {"height": h, "degree": len(poly) - 1,
                   "mahler_measure": heights.mahler_measure(poly)}
        inputs = {"minpoly": args.minpoly}
    return inputs, results, "ok"


def _handle_kummer(args):
    a = _parse_fraction(args.a)
    c, degree = kummer.rank1_failure(a, args.d, args.m)
    results = {"c": c, "degree": degree}
    status = "ok"
    if args.oracle:
        rep = kummer.root_membership_oracle(a, c, args.m)
        results["oracle"] = {"status": rep.status, "certificate": rep.certificate}
        if rep.status == "inconclusive":
            status = "inconclusive"
    inputs = {"a": args.a, "d": args.d, "m": args.m, "oracle": args.oracle}
    return inputs, results, status


HANDLERS = {
    "flat-verify": _handle_flat_verify,
    "flat-search": _handle_flat_search,
    "sn-survey": _handle_sn_survey,
    "reduce": _handle_reduce,
    "arc-count": _handle_arc_count,
    "weyl": _handle_weyl,
    "strict-check": _handle_strict_check,
    "orbit": _handle_orbit,
    "dgamma": _handle_dgamma,
    "sigma-search": _handle_sigma_search,
    "factor-out": _handle_factor_out,
    "height": _handle_height,
    "kummer": _handle_kummer,
}


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cyclolab")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="cmd", required=True)

    def common(sp):
        sp.add_argument("--format", choices=["json", "csv"], default="json")
        sp.add_argument("--out", default=None)
        sp.add_argument("--cache", default=None)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--threads", type=int, default=os.cpu_count() or 1)
        sp.add_argument("--no-timing", action="store_true")

    sp = sub.add_parser("flat-verify")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--exponents", required=True)
    sp.add_argument("--coeffs", required=True)
    sp.add_argument("--mu", default="1")
    sp.add_argument("--numeric", action="store_true")
    common(sp)

    sp = sub.add_parser("flat-search")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--exponents", required=True)
    sp.add_argument("--mu", type=float, default=1.0)
    sp.add_argument("--restarts", type=int, default=20)
    common(sp)

    sp = sub.add_parser("sn-survey")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--dmax", type=int, required=True)
    sp.add_argument("--restarts", type=int, default=8)
    common(sp)

    sp = sub.add_parser("reduce")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--exponents", required=True)
    sp.add_argument("--coeffs", required=True)
    sp.add_argument("--mu", default="1")
    common(sp)

    sp = sub.add_parser("arc-count")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--k", required=True)
    sp.add_argument("--arcs", required=True)
    sp.add_argument("--hist-out", default=None)
    common(sp)

    sp = sub.add_parser("weyl")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--k", required=True)
    sp.add_argument("--n", required=True)
    common(sp)

    sp = sub.add_parser("strict-check")
    sp.add_argument("--seq", required=True)
    sp.add_argument("--threshold", type=float, default=None)
    common(sp)

    for name in ("orbit", "dgamma", "sigma-search", "factor-out"):
        sp = sub.add_parser(name)
        sp.add_argument("--sum", required=True)
        sp.add_argument("--D", type=int, default=None)
        sp.add_argument("--c", default=None)
        if name == "orbit":
            sp.add_argument("--bins", type=int, default=32)
        if name in ("orbit", "dgamma"):
            sp.add_argument("--hist-out", default=None)
        if name in ("dgamma", "sigma-search"):
            sp.add_argument("--eps", type=float, required=True)
        if name == "sigma-search":
            sp.add_argument("--arcs", required=True)
        common(sp)

    sp = sub.add_parser("height")
    sp.add_argument("--minpoly", default=None)
    sp.add_argument("--radical", default=None)
    sp.add_argument("--n", type=int, default=1)
    common(sp)

    sp = sub.add_parser("kummer")
    sp.add_argument("--a", required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--oracle", action="store_true")
    common(sp)

    return p


# --------------------------------------------------------------------- main


def _cache_key(command: str, inputs: dict, seed: int) -> str:
    blob = json.dumps({"command": command, "inputs": _plain(inputs),
                       "seed": seed, "version": __version__},
                      sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    handler = HANDLERS[args.cmd]
    cache_dir = args.cache or os.environ.get(CACHE_ENV)
    t0 = time.perf_counter()
    try:
        inputs, results, status = handler(args)
    except (ValueError, TypeError, ZeroDivisionError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    wall_ms = None if args.no_timing else (time.perf_counter() - t0) * 1000.0

    record = {
        "command": args.cmd,
        "inputs": _plain(inputs),
        "results": _plain(results),
        "status": status,
        "seed": args.seed,
        "version": __version__,
        "wall_ms": wall_ms,
    }

    if cache_dir:
        key = _cache_key(args.cmd, inputs, args.seed)
        path = os.path.join(cache_dir, key + ".json")
        try:
            os.makedirs(cache_dir, exist_ok=True)
            if os.path.exists(path):
                try:
                    with open(path) as fh:
                        stored = json.load(fh)
                    if stored.get("version") == __version__:
                        record = stored
                        record["cached"] = True
                except (json.JSONDecodeError, KeyError):
                    print("warning: corrupted cache entry, recomputing",
                          file=sys.stderr)
                    with open(path, "w") as fh:
                        fh.write(_dumps(record))
            else:
                with open(path, "w") as fh:
                    fh.write(_dumps(record))
        except OSError as exc:
            print(f"error: cache directory unusable: {exc}", file=sys.stderr)
            return 2

    text = _to_csv(record) if args.format == "csv" else _dumps(record) + "\n"
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    return 3 if status == "inconclusive" else 0


if __name__ == "__main__":
    sys.exit(main())
