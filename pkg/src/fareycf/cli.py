"""Command-line interface: multiplication, tracing, Gamma_0(n) artifacts and verification campaigns."""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields, replace
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .cf import (ContinuedFraction, cf_to_surd, classify, format_cf, is_sp, multiply_oracle, parse_cf,
                 surd_to_cf)
from .corpus import DEFAULT_SEED, corpus, esp_part, evp_only_part, sp_corpus
from .cutseq import convergent_vertices, multiply_nbar, trace, trace_fans
from .exact import format_rational, format_surd, parse_surd
from .gamma0 import EVEN, ODD, build_farey_symbol, check_pairing, invariants, pairing_matrix
from .sl2 import to_json as matrix_json
from .svg import tile_svg
from .theorems import (DecompositionNotFound, TheoremViolation, check_closure, find_evp_decomposition,
                       scan_divisible_convergents, verify_exponential_growth, verify_pro2)
from .tiles import decorated_tile, tile_walk_multiply

CONFIG_ENV = "FAREYCF_CONFIG"
EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2
FORMATS = ("text", "json", "svg")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class Config:
    horizon: int = 500
    corpus_size: int = 200
    k_max: int = 12
    seed: int = DEFAULT_SEED
    output_format: str = "text"
    workers: int = 1

    def __post_init__(self):
        for name in ("horizon", "corpus_size", "k_max", "workers"):
            if getattr(self, name) < 1:
                raise UsageError(f"{name} must be at least 1")
        if self.output_format not in FORMATS:
            raise UsageError(f"unknown format {self.output_format!r}")

    @classmethod
    def load(cls, path: Optional[str] = None) -> "Config":
        """Defaults, overridden by the JSON file named by $FAREYCF_CONFIG (or path)."""
        path = path or os.environ.get(CONFIG_ENV)
        if not path:
            return cls()
        try:
            with open(path) as fh:
                raw = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {path}: {exc}") from exc
        known = {f.name for f in fields(cls)}
        raw = {k.replace("-", "_"): v for k, v in raw.items()}
        unknown = set(raw) - known
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
        return cls(**raw)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _parse_value(text: str):
    """A CF in bracket notation, or a rational / quadratic surd."""
    text = text.strip()
    try:
        if text.startswith("["):
            return parse_cf(text)
        return surd_to_cf(parse_surd(text))
    except ValueError as exc:
        raise UsageError(f"cannot parse {text!r}: {exc}") from exc


# -- multiply / trace / oracle ------------------------------------------------

ENGINES: dict[str, Callable[[ContinuedFraction, int], ContinuedFraction]] = {
    "trace": multiply_nbar,
    "tile-walk": tile_walk_multiply,
    "oracle": multiply_oracle,
}


def cmd_multiply(cf_text: str, n: int, engine: str = "trace", check: bool = True) -> ContinuedFraction:
    if n < 1:
        raise UsageError("n must be at least 1")
    cf = _parse_value(cf_text)
    if engine == "tile-walk" and n < 2:
        result = cf
    else:
        result = ENGINES[engine](cf, n)
    if check:
        other = "trace" if engine == "oracle" else "oracle"
        ref = ENGINES[other](cf, n)
        if ref != result:
            raise EngineDisagreement(engine, result, other, ref)
    return result


class EngineDisagreement(Exception):
    def __init__(self, engine, result, other, ref):
        super().__init__(f"{engine} gave {format_cf(result)} but {other} gave {format_cf(ref)}")
        self.report = {"schema": "fareycf.disagreement/1", engine: format_cf(result), other: format_cf(ref)}


def cmd_trace(cf_text: str, d: int, count: int) -> dict:
    cf = _parse_value(cf_text)
    alpha = cf_to_surd(cf)
    fans = trace_fans(alpha, d, max_quotients=count)
    return {
        "schema": "fareycf.trace/1",
        "input": format_cf(cf),
        "scale": d,
        "cf": format_cf(trace(alpha, d)),
        "fans": [{"index": f.index, "letter": f.letter, "exponent": f.exponent,
                  "pivot": format_rational(f.pivot)} for f in fans],
        "convergent_vertices": [format_rational(v) for v in convergent_vertices(alpha, d, count)],
    }


def cmd_oracle(value_text: str, times: str) -> dict:
    cf = _parse_value(value_text)
    try:
        q = Fraction(times)
    except ValueError as exc:
        raise UsageError(f"bad multiplier {times!r}") from exc
    if q <= 0:
        raise UsageError("multiplier must be positive")
    out = multiply_oracle(cf, q)
    return {"schema": "fareycf.oracle/1", "input": format_cf(cf), "times": format_rational(q),
            "cf": format_cf(out), "surd": format_surd(cf_to_surd(out)), "class": classify(out).value}


# -- gamma0 -------------------------------------------------------------------

def _label_text(lab) -> str:
    return {EVEN: "even", ODD: "odd"}.get(lab, f"free {getattr(lab, 'pair', lab)}")


def cmd_gamma0(n: int, what: str, scale: Optional[int], fmt: str) -> str:
    if n < 2:
        raise UsageError("n must be at least 2")
    if what != "tile" and fmt == "svg":
        raise UsageError("svg output is only available for tiles")
    sym = build_farey_symbol(n)
    if what == "symbol":
        return _dump({"schema": "fareycf.symbol/1", **sym.to_json()}) if fmt == "json" else str(sym)
    if what == "invariants":
        inv = invariants(n, sym)
        if fmt == "json":
            return _dump({"schema": "fareycf.invariants/1", **inv.to_json(),
                          "riemann_hurwitz": inv.riemann_hurwitz_holds()})
        return f"d={inv.index} t={inv.cusps} e2={inv.e2} e3={inv.e3} g={inv.genus}"
    if what == "matrices":
        rows = []
        for i, lab in enumerate(sym.labels):
            phi = pairing_matrix(sym, i)
            rows.append({"interval": i, "from": format_rational(sym.vertices[i]),
                         "to": format_rational(sym.vertices[i + 1]), "label": _label_text(lab),
                         "matrix": matrix_json(phi), "problems": check_pairing(sym, i, phi)})
        if fmt == "json":
            return _dump({"schema": "fareycf.matrices/1", "n": n, "pairings": rows})
        return "\n".join(f"[{r['from']}, {r['to']}] {r['label']}: {r['matrix']}" for r in rows)
    if what == "tile":
        d = n if scale is None else scale
        if d < 1 or n % d:
            raise UsageError(f"scale {d} does not divide {n}")
        tile = decorated_tile(n, d, sym)
        if fmt == "svg":
            return tile_svg(tile).rstrip("\n")
        if fmt == "json":
            return _dump({**tile.to_json(), "census": tile.census()})
        census = " ".join(f"{k}={v}" for k, v in tile.census().items())
        return (f"T(d={d}, n={n}) symbol {sym}\n"
                f"edges: {len(tile.edges)} faces: {len(tile.faces)}\ncensus: {census}")
    raise UsageError(f"unknown gamma0 subcommand {what!r}")


# -- verification campaigns ---------------------------------------------------
# work items are module-level functions so they can run in worker processes

def _pro2_item(args):
    cf, n, horizon = args
    try:
        ws = verify_pro2(cf, n, horizon)
    except TheoremViolation as exc:
        return {"cf": format_cf(cf), "n": n, "violation": str(exc), "details": exc.details}
    return {"cf": format_cf(cf), "n": n, "witnesses": len(ws)}


def _divisible_item(args):
    cf, n, horizon, side = args
    hits = scan_divisible_convergents(cf, n, horizon, side)
    return {"cf": format_cf(cf), "n": n, "hits": len(hits), "first": hits[:5], "sp": is_sp(cf)}


def _closure_item(args):
    cf, n = args
    try:
        up, down = check_closure(cf, n)
    except TheoremViolation as exc:
        return {"cf": format_cf(cf), "n": n, "violation": str(exc)}
    return {"cf": format_cf(cf), "n": n, "times": classify(up).value, "divided": classify(down).value}


def _evp_item(args):
    cf, n, k_max = args
    try:
        dec = find_evp_decomposition(cf, n, k_max)
    except DecompositionNotFound as exc:
        return {"cf": format_cf(cf), "n": n, "violation": str(exc)}
    except TheoremViolation as exc:
        return {"cf": format_cf(cf), "n": n, "violation": str(exc), "details": exc.details}
    return {"cf": format_cf(cf), "n": n, "k": dec.k, "a": dec.a, "alpha": format_cf(dec.alpha)}


def _growth_item(args):
    cf, n, k_max = args
    try:
        checks = verify_exponential_growth(cf, n, 6, k_max)
    except DecompositionNotFound:
        return {"cf": format_cf(cf), "n": n, "undecomposed": True}
    except TheoremViolation as exc:
        return {"cf": format_cf(cf), "n": n, "violation": str(exc), "details": exc.details}
    return {"cf": format_cf(cf), "n": n, "checks": [[c.i, c.bound, c.B_value, c.exact] for c in checks]}


def _orbi_item(args):
    cf, n = args
    a, b = tile_walk_multiply(cf, n), multiply_nbar(cf, n)
    row = {"cf": format_cf(cf), "n": n, "result": format_cf(b)}
    if a != b:
        row["violation"] = f"tile walk gave {format_cf(a)}"
    return row


def _run(items, fn, workers: int) -> list[dict]:
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            return list(pool.map(fn, items, chunksize=4))
    return [fn(x) for x in items]


def _ns(n: Optional[int], default: Sequence[int]) -> list[int]:
    return [n] if n is not None else list(default)


def cmd_verify(claim: str, config: Config, n: Optional[int] = None, cf_text: Optional[str] = None) -> dict:
    """Run a campaign; the report's "ok" is False iff a checked statement failed."""
    cfs = [_parse_value(cf_text)] if cf_text else None
    c = config
    notes: list[str] = []
    if claim == "pro2":
        base = cfs or corpus(c.corpus_size, c.seed)[:100]
        rows = _run([(x, m, c.horizon) for x in base for m in _ns(n, range(2, 11))], _pro2_item, c.workers)
    elif claim in ("conden", "connum"):
        side = "denominators" if claim == "conden" else "numerators"
        base = cfs or sp_corpus(min(c.corpus_size, 50), c.seed)
        rows = _run([(x, m, c.horizon, side) for x in base for m in _ns(n, range(2, 11))], _divisible_item, c.workers)
        for r in rows:
            if r["sp"] and r["hits"] < 3:
                r["violation"] = f"only {r['hits']} divisible {side} within horizon {c.horizon}"
            elif not r["sp"] and r["hits"] == 0:
                r["expected_negative"] = True
                notes.append(f"{r['cf']} (n={r['n']}) is not strictly periodic; no hits is consistent")
    elif claim == "closure":
        base = cfs or esp_part(corpus(c.corpus_size, c.seed))
        rows = _run([(x, m) for x in base for m in _ns(n, range(2, 13))], _closure_item, c.workers)
    elif claim == "evp":
        base = cfs or evp_only_part(corpus(c.corpus_size, c.seed))
        rows = _run([(x, m, c.k_max) for x in base for m in _ns(n, (2,))], _evp_item, c.workers)
    elif claim == "growth":
        base = cfs or evp_only_part(corpus(c.corpus_size, c.seed))
        rows = _run([(x, m, c.k_max) for x in base for m in _ns(n, (2,))], _growth_item, c.workers)
        skipped = sum(1 for r in rows if r.get("undecomposed"))
        if skipped:
            notes.append(f"{skipped} inputs have no decomposition within k <= {c.k_max}; growth not checked")
    elif claim == "orbi-equivalence":
        base = cfs or corpus(c.corpus_size, c.seed)
        rows = _run([(x, m) for x in base for m in _ns(n, (2, 3, 5, 7, 11))], _orbi_item, c.workers)
    else:
        raise UsageError(f"unknown claim {claim!r}")
    rows.sort(key=lambda r: (r["n"], r["cf"]))
    violations = [r for r in rows if "violation" in r]
    return {
        "schema": "fareycf.verify/1",
        "claim": claim,
        "config": asdict(c),
        "checked": len(rows),
        "ok": not violations,
        "violations": violations,
        "notes": notes,
        "results": rows,
    }


def _verify_text(report: dict) -> str:
    lines = [f"{report['claim']}: {report['checked']} checks, {len(report['violations'])} violations"]
    lines += [f"  note: {x}" for x in report["notes"]]
    lines += [f"  FAIL {v['cf']} n={v['n']}: {v['violation']}" for v in report["violations"]]
    lines.append("OK" if report["ok"] else "FAILED")
    return "\n".join(lines)


# -- argument parsing ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fareycf", description=__doc__)
    p.add_argument("--config", help=f"JSON config file (default: ${CONFIG_ENV})")
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("multiply", help="n * alpha as a continued fraction")
    m.add_argument("cf")
    m.add_argument("n", type=int)
    m.add_argument("--engine", choices=sorted(ENGINES), default="trace")
    m.add_argument("--no-check", action="store_true", help="skip the cross-check against a second engine")
    m.add_argument("--format", choices=("text", "json"))

    t = sub.add_parser("trace", help="cutting sequence of (I, alpha) against (1/d)F")
    t.add_argument("cf")
    t.add_argument("--scale", type=int, default=1)
    t.add_argument("--count", type=int, default=12, help="number of fans / vertices to list")
    t.add_argument("--format", choices=("text", "json"))

    o = sub.add_parser("oracle", help="exact expansion of q * value via quadratic surds")
    o.add_argument("value", help="CF like [1;(2)] or surd like (1+sqrt(5))/2")
    o.add_argument("--times", default="1")
    o.add_argument("--format", choices=("text", "json"))

    g = sub.add_parser("gamma0", help="Farey symbol artifacts for Gamma_0(n)")
    g.add_argument("n", type=int)
    g.add_argument("what", choices=("symbol", "matrices", "invariants", "tile"))
    g.add_argument("--scale", type=int)
    g.add_argument("--format", choices=FORMATS)

    v = sub.add_parser("verify", help="run a verification campaign")
    v.add_argument("claim", choices=("pro2", "conden", "connum", "evp", "growth", "closure", "orbi-equivalence"))
    v.add_argument("--n", type=int)
    v.add_argument("--cf")
    v.add_argument("--horizon", type=int)
    v.add_argument("--corpus-size", type=int)
    v.add_argument("--k-max", type=int)
    v.add_argument("--seed", type=int)
    v.add_argument("--workers", type=int)
    v.add_argument("--format", choices=("text", "json"))
    return p


def _config_from(args) -> Config:
    c = Config.load(args.config)
    over = {}
    for name in ("horizon", "corpus_size", "k_max", "seed", "workers"):
        val = getattr(args, name, None)
        if val is not None:
            over[name] = val
    if getattr(args, "format", None):
        over["output_format"] = args.format
    return replace(c, **over)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout
    try:
        cfg = _config_from(args)
        fmt = cfg.output_format
        if args.command == "multiply":
            res = cmd_multiply(args.cf, args.n, args.engine, not args.no_check)
            text = _dump({"schema": "fareycf.multiply/1", "input": args.cf, "n": args.n,
                          "engine": args.engine, "cf": format_cf(res)}) if fmt == "json" else format_cf(res)
        elif args.command == "trace":
            rep = cmd_trace(args.cf, args.scale, args.count)
            text = _dump(rep) if fmt == "json" else (
                f"{rep['cf']}\nvertices: {' '.join(rep['convergent_vertices'])}")
        elif args.command == "oracle":
            rep = cmd_oracle(args.value, args.times)
            text = _dump(rep) if fmt == "json" else f"{rep['cf']}  {rep['surd']}  {rep['class']}"
        elif args.command == "gamma0":
            text = cmd_gamma0(args.n, args.what, args.scale, fmt)
        else:
            rep = cmd_verify(args.claim, cfg, args.n, args.cf)
            text = _dump(rep) if fmt == "json" else _verify_text(rep)
            print(text, file=out)
            if not rep["ok"] and fmt != "json":
                print(_dump({"schema": "fareycf.witnesses/1", "violations": rep["violations"]}), file=sys.stderr)
            return EXIT_OK if rep["ok"] else EXIT_FAILED
        print(text, file=out)
        return EXIT_OK
    except EngineDisagreement as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(_dump(exc.report), file=sys.stderr)
        return EXIT_FAILED
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
