"""Deterministic command-line front end.

Reads a JSON scenario (see docs/schema.json), dispatches to the library,
and emits JSON (default), an aligned text table, or CSV.  Output is
byte-identical for identical (config, seed, version).  Exit codes: 0 on
success, 1 on a domain error (the message names the violated
precondition), 2 when `verify` reports a failing criterion.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Any, Dict, List, Optional

from . import __version__, breuil, chars, gf, oracle, verify, weights
from .breuil import Params
from .errors import DomainError, NotGeneric

RULES = {
    "weights": "explicit-weight-congruences",
    "partition": "packet-partition-size-2^(f-delta)",
    "types": "type-constituent-table",
    "ext": "ext-dimension-slot-count",
    "hom": "map-existence-criterion",
    "models": "model-enumeration",
    "extremal": "extremal-fold",
    "lattice": "lattice-dimension-sum",
    "maxlaw": "intersection-max-law",
    "lcris": "crystalline-dimension-count",
    "typesearch": "unique-type-search",
}


class ConfigError(DomainError):
    """Malformed scenario; ``pointer`` is the JSON pointer to the field."""

    def __init__(self, pointer: str, message: str):
        self.pointer = pointer
        super().__init__(message)


def _get(cfg: Dict, pointer: str, typ, required: bool = True, default=None):
    parts = [p for p in pointer.split("/") if p]
    node: Any = cfg
    for i, part in enumerate(parts):
        if not isinstance(node, dict) or part not in node:
            if required:
                raise ConfigError("/" + "/".join(parts[:i + 1]), "missing field")
            return default
        node = node[part]
    if typ is int and isinstance(node, bool):
        raise ConfigError(pointer, "expected an integer")
    if typ is not None and not isinstance(node, typ):
        raise ConfigError(pointer, f"expected {typ.__name__}")
    return node


def _int_list(cfg: Dict, pointer: str, length: Optional[int] = None,
              required: bool = True) -> Optional[List[int]]:
    val = _get(cfg, pointer, list, required=required)
    if val is None:
        return None
    if not all(isinstance(x, int) and not isinstance(x, bool) for x in val):
        raise ConfigError(pointer, "expected a list of integers")
    if length is not None and len(val) != length:
        raise ConfigError(pointer, f"expected {length} entries")
    return list(val)


def load_params(cfg: Dict) -> Params:
    p = _get(cfg, "/params/p", int)
    f = _get(cfg, "/params/f", int)
    eprime = _get(cfg, "/params/eprime", int)
    s = _get(cfg, "/params/kE_extra_degree", int, required=False, default=1)
    try:
        return Params(p, f, eprime, s)
    except DomainError as exc:
        raise ConfigError("/params", str(exc)) from exc


def load_galois_char(cfg: Dict, key: str, params: Params) -> chars.GaloisChar:
    scalar = _get(cfg, f"/{key}/scalar", int)
    dlog = _get(cfg, f"/{key}/unramified_dlog", int, required=False, default=0)
    return params.galois_char(scalar, params.field.from_dlog(dlog))


def load_module(cfg: Dict, key: str, params: Params) -> breuil.RankOneModule:
    r = _int_list(cfg, f"/{key}/r", params.f)
    c = _int_list(cfg, f"/{key}/c", params.f)
    dlog = _get(cfg, f"/{key}/a_norm_dlog", int, required=False, default=0)
    try:
        return breuil.RankOneModule(params, r, params.field.from_dlog(dlog), c)
    except DomainError as exc:
        raise ConfigError(f"/{key}", str(exc)) from exc


# ---------------------------------------------------------------------------
# Subcommands; each returns (payload dict, exit code).


def cmd_weights(cfg: Dict, args) -> Dict:
    params = load_params(cfg)
    chi1 = load_galois_char(cfg, "chi1", params)
    chi2 = load_galois_char(cfg, "chi2", params)
    out = weights.enumerate_Wss(chi1.inertial, chi2.inertial, params.eprime)
    rows = [{"m": list(w.m_display), "m_scalar": w.m_scalar, "n": list(w.n),
             "witnesses": [wp.json_dict() for wp in wits],
             "rule": RULES["weights"]}
            for w, wits in out]
    return {"rows": rows, "count": len(rows)}


def _gen_or_exit(params: Params, chi1, chi2) -> weights.GenericityData:
    try:
        return weights.genericity(chi1.inertial, chi2.inertial, params.eprime)
    except NotGeneric as exc:
        raise DomainError(
            f"not generic (digit band e' <= digit <= p-1-e' fails): {exc}") from exc


def cmd_partition(cfg: Dict, args) -> Dict:
    params = load_params(cfg)
    chi1 = load_galois_char(cfg, "chi1", params)
    chi2 = load_galois_char(cfg, "chi2", params)
    gen = _gen_or_exit(params, chi1, chi2)
    part = weights.partition(gen)
    rows = []
    for a, ws in part.assignments:
        extras = [w.json_dict() for key, w in part.extras if key == a]
        rows.append({"a": list(a),
                     "W_a": [w.json_dict() for w in ws],
                     "size": len(ws),
                     "size_check": 2 ** (gen.f - gen.delta_a(a)),
                     "Wprime_extra": extras,
                     "rule": RULES["partition"]})
    return {"b": list(gen.b), "chi1_digits": list(gen.chi1_digits), "rows": rows}


def cmd_types(cfg: Dict, args) -> Dict:
    params = load_params(cfg)
    chi1 = load_galois_char(cfg, "chi1", params)
    chi2 = load_galois_char(cfg, "chi2", params)
    gen = _gen_or_exit(params, chi1, chi2)
    rows = []
    for a in gen.A:
        lam, lam_p, scalar = weights.tau_of_a(gen, a)
        jh = weights.jh_constituents(gen, a)
        rows.append({"a": list(a),
                     "exponents": [lam.scalar, lam_p.scalar],
                     "scalar_type": scalar,
                     "constituents": [w.json_dict() for w in jh],
                     "rule": RULES["types"]})
    return {"rows": rows}


def cmd_ext(cfg: Dict, args) -> Dict:
    params = load_params(cfg)
    M = load_module(cfg, "M", params)
    N = load_module(cfg, "N", params)
    basis = breuil.ext_basis(M, N)
    return {"rows": [{"M": M.json_dict(), "N": N.json_dict(),
                      "dimension": basis.dimension,
                      "basis": basis.json_dict(),
                      "rule": RULES["ext"]}]}


def cmd_hom(cfg: Dict, args) -> Dict:
    params = load_params(cfg)
    M = load_module(cfg, "M", params)
    N = load_module(cfg, "N", params)
    z = breuil.hom_exists(M, N)
    return {"rows": [{"M": M.json_dict(), "N": N.json_dict(),
                      "exists": z is not None,
                      "degrees": list(z) if z is not None else None,
                      "rule": RULES["hom"]}]}


def cmd_models(cfg: Dict, args) -> Dict:
    params = load_params(cfg)
    nu = _int_list(cfg, "/tau/nu", params.f)
    nu_p = _int_list(cfg, "/tau/nu_prime", params.f)
    chi = load_galois_char(cfg, "chi2", params)
    tau = (chars.from_digits(params.p, params.f, nu),
           chars.from_digits(params.p, params.f, nu_p))
    models = breuil.models_of_type(params, tau, chi)
    rows = [{"model": m.json_dict(), "alpha": list(m.alpha),
             "rule": RULES["models"]} for m in models]
    payload = {"rows": rows, "count": len(models)}
    if models:
        mn, mx = breuil.extremal_models(params, tau, chi)
        payload["minimal"] = mn.json_dict()
        payload["maximal"] = mx.json_dict()
        payload["extremal_rule"] = RULES["extremal"]
    return payload


def cmd_lattice(cfg: Dict, args) -> Dict:
    params = load_params(cfg)
    chi1 = load_galois_char(cfg, "chi1", params)
    chi2 = load_galois_char(cfg, "chi2", params)
    gen = _gen_or_exit(params, chi1, chi2)
    chi = chi2.div(chi1)
    spaces = {}
    rows = []
    for a in gen.A:
        nu, nu_p = weights.twisted_tau_digits(gen, a)
        L = breuil.l_space(params, nu, nu_p, chi)
        spaces[a] = L
        rows.append({"a": list(a), "dim": L.dimension,
                     "dim_check": sum(params.eprime - x for x in a),
                     "slots": [[list(td) for td in s] for s in L.slots],
                     "rule": RULES["lattice"]})
    inter = []
    for a1 in gen.A:
        for a2 in gen.A:
            if a1 > a2:
                continue
            a12 = tuple(max(x, y) for x, y in zip(a1, a2))
            lhs = tuple(x & y for x, y in
                        zip(spaces[a1].degree_sets(), spaces[a2].degree_sets()))
            ok = lhs == spaces[a12].degree_sets()
            inter.append({"a": list(a1), "a_prime": list(a2),
                          "meet": list(a12), "max_law_holds": ok,
                          "rule": RULES["maxlaw"]})
    return {"rows": rows, "intersections": inter}


def cmd_counterexample(cfg: Dict, args) -> Dict:
    p = args.p
    b = args.b
    if p is None or b is None:
        raise DomainError("counterexample requires --p and --b")
    if p == 2 or not gf.is_prime(p):
        raise DomainError("p must be an odd prime")
    if not 1 <= b <= p - 2:
        raise DomainError("b must lie in [1, p-2]")
    q = p * p
    chi1 = chars.InertialChar(p, 2, 0)
    chi2 = chars.from_digits(p, 2, (p - 1, b))
    mu = weights.SerreWeight.from_mn(p, 2, (p - 1, b - 1), (p - 1, p - b - 1))
    mu_prime = weights.SerreWeight.from_mn(p, 2, (0, 0), (p - 2, b - 1))
    wss = dict(weights.enumerate_Wss(chi1, chi2, 1))
    rows = []
    for name, w in (("mu", mu), ("mu_prime", mu_prime)):
        wits = wss[w]
        dims = sorted({weights.lcris_dim(None, wp, eprime=1) for wp in wits})
        rows.append({"weight": name, "m": list(w.m_display), "n": list(w.n),
                     "witnesses": [wp.json_dict() for wp in wits],
                     "lcris_dims": dims, "rule": RULES["lcris"]})
    tab = oracle.brauer_table(p, 2, max_q=max(args.limit, q))
    matches = []
    for t1 in range(q - 1):
        for t2 in range(t1, q - 1):
            if t1 == t2:
                if tab.det_weight(t1) == mu:
                    matches.append([t1, t2])
                continue
            if (t1 + t2) % (q - 1) != mu.central_scalar:
                continue
            if mu in tab.decompose(t1, t2, exact_check=False):
                matches.append([t1, t2])
    for m in matches:
        tab.decompose(m[0], m[1], exact_check=True)
    return {"rows": rows,
            "matching_types": matches,
            "unique_type": len(matches) == 1,
            "expected_type": sorted((chars.from_digits(p, 2, (p - 2, p - 1)).scalar,
                                     chars.from_digits(p, 2, (p - 1, b - 1)).scalar)),
            "search_rule": RULES["typesearch"]}


def cmd_verify(cfg: Dict, args) -> Dict:
    criteria = None
    if args.criteria:
        criteria = [int(x) for x in args.criteria.split(",")]
    results = verify.run_all(seed=args.seed, criteria=criteria, limit=args.limit)
    rows = [{"criterion": r.cid, "title": r.title,
             "passed": r.passed, "details": r.details} for r in results]
    for r in results:
        print(f"{r.line()}  [{r.elapsed:.1f}s]", file=sys.stderr)
    return {"rows": rows, "all_passed": all(r.passed for r in results)}


COMMANDS = {
    "weights": cmd_weights,
    "partition": cmd_partition,
    "types": cmd_types,
    "ext": cmd_ext,
    "hom": cmd_hom,
    "models": cmd_models,
    "lattice": cmd_lattice,
    "counterexample": cmd_counterexample,
    "verify": cmd_verify,
}

NEEDS_CONFIG = {"weights", "partition", "types", "ext", "hom", "models", "lattice"}


# ---------------------------------------------------------------------------
# Output shaping.


def _flatten(val) -> str:
    if isinstance(val, (list, dict)):
        return json.dumps(val, sort_keys=True, separators=(",", ":"))
    return str(val)


def render(payload: Dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    rows = payload.get("rows", [])
    extra_tables = [("intersections", payload.get("intersections"))]
    buf = io.StringIO()
    if fmt == "csv":
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
            writer.writeheader()
            for row in rows:
                writer.writerow({k: _flatten(v) for k, v in row.items()})
        return buf.getvalue()
    # aligned table
    def table(rs):
        if not rs:
            return "(empty)\n"
        cols = list(rs[0].keys())
        cells = [[_flatten(r.get(c, "")) for c in cols] for r in rs]
        widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
        lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
        for row in cells:
            lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
        return "\n".join(lines) + "\n"

    buf.write(table(rows))
    for name, t in extra_tables:
        if t:
            buf.write(f"\n[{name}]\n")
            buf.write(table(t))
    scalars = {k: v for k, v in payload.items()
               if k not in ("rows", "intersections")}
    if scalars:
        buf.write("\n")
        for k in sorted(scalars):
            buf.write(f"{k} = {_flatten(scalars[k])}\n")
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="breuilext",
        description="Exact Breuil-module extension lattices and Serre-weight "
                    "partitions, with brute-force verification.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", help="path to a JSON scenario")
        sp.add_argument("--format", choices=("json", "table", "csv"),
                        default="json")
        sp.add_argument("--out", help="write output here instead of stdout")
        sp.add_argument("--seed", type=int, default=0,
                        help="seed for randomized suites")
        sp.add_argument("--limit", type=int, default=50,
                        help="size cap for brute-force solvers")
        if name == "counterexample":
            sp.add_argument("--p", type=int)
            sp.add_argument("--b", type=int)
        if name == "verify":
            sp.add_argument("--criteria",
                            help="comma-separated criterion ids (default: all)")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    cfg: Dict = {}
    if args.config:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            print(f"error: cannot read config: {exc}", file=sys.stderr)
            return 1
    elif args.command in NEEDS_CONFIG:
        print(f"error: {args.command} requires --config", file=sys.stderr)
        return 1
    try:
        payload = COMMANDS[args.command](cfg, args)
    except ConfigError as exc:
        print(f"error: malformed config at {exc.pointer}: {exc}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    payload = {"version": __version__, "command": args.command, **payload}
    text = render(payload, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.command == "verify" and not payload.get("all_passed", False):
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
