"""Command-line front end.

Every command builds a JSON-able payload and renders it as compact sorted JSON
(``--format json``, the default) or as plain text.  Exit status: 0 on success,
1 on a domain error, 2 when a resource limit is hit, 64 on a usage error.
Errors are reported as ``{"error": {...}}`` on stdout in JSON mode.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

from . import __version__, additive, cycmu, plotting, verification
from .cache import Cache, canonical_json, generator_table
from .groups import GroupTooLarge, parse_group
from .lattice_invariants import (DegreeLimitExceeded, ResourceLimitExceeded, TorusKind, degree_limit,
                                 discriminant_sigma, find_relations, gamma_generator)
from .linalg import IntegrityError
from .polyring import ZZ, Poly, elementary_symmetric, from_sigma_basis, is_prime, parse_poly, sigma_vars, to_sigma_basis, x_vars
from .presented_rings import (BPGLElement, CycGLElement, HBPGLElement, adjoint_total_chern_on_torus, bpgl_multiply,
                              bpgl_restrict, cycgl_model, cycpgl_model, graded_group_from_model, hbpgl_multiply,
                              hbpgl_restrict)
from .transfers import (NotInvariantError, as_group, cyclic_double_coset_formula, cyclic_two_part_decomposition,
                        double_cosets, mackey_report, random_invariant)

EX_OK, EX_DOMAIN, EX_RESOURCE, EX_USAGE = 0, 1, 2, 64


class DomainError(ValueError):
    pass


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def validate_p(p: int) -> int:
    if p % 2 == 0:
        raise DomainError(f"p must be an odd prime; {p} is even")
    if not is_prime(p):
        raise DomainError(f"p must be an odd prime; {p} is not prime")
    return p


def nonneg(name: str, v: int) -> int:
    if v < 0:
        raise DomainError(f"{name} must be nonnegative, got {v}")
    return v


class Result:
    """Payload plus a text rendering and optional files written on the side."""

    def __init__(self, payload: Any, text: Callable[[Any], str]):
        self.payload = payload
        self.text = text

    def render(self, fmt: str) -> str:
        if fmt == "text":
            return self.text(self.payload)
        return canonical_json(self.payload)


# ---------------------------------------------------------------------------------
# element parsing


def _expr_poly(text: str, p: int, target: str) -> Poly:
    """Parse ``text`` in ``x_i``, ``sigma_k``, ``gamma_k`` and ``delta``; return a sigma- or x-form."""
    named = [f"gamma{k}" for k in range(2, p + 1)] + ["delta"]
    f = parse_poly(text, list(x_vars(p)) + list(sigma_vars(p)) + named, ZZ)
    used = set(f.used_variables())
    sig = {f"gamma{k}": gamma_generator(k, p) for k in range(2, p + 1)}
    sig["delta"] = discriminant_sigma(p)
    if target == "sigma" and not used & set(x_vars(p)):
        return f.substitute({k: v.with_variables(f.variables) for k, v in sig.items()}).with_variables(sigma_vars(p))
    # everything through the x-variables
    xsubs = {f"sigma{k}": elementary_symmetric(k, p) for k in range(1, p + 1)}
    xsubs.update({k: from_sigma_basis(v, p) for k, v in sig.items() if k in used})
    g = f.substitute({k: v.with_variables(f.variables) for k, v in xsubs.items()}).with_variables(x_vars(p))
    return to_sigma_basis(g, p) if target == "sigma" else g


def _tors(items) -> Dict:
    out = {}
    for it in items or []:
        if isinstance(it, dict):
            i, j, c = it["i"], it["j"], it.get("coeff", 1)
        else:
            i, j, c = (list(it) + [1])[:3]
        out[(int(i), int(j))] = out.get((int(i), int(j)), 0) + int(c)
    return out


def _load_spec(spec: str):
    if spec.startswith("@"):
        spec = Path(spec[1:]).read_text()
    try:
        obj = json.loads(spec)
    except ValueError:
        obj = spec
    if isinstance(obj, str):
        obj = {"inv": obj}
    if not isinstance(obj, dict):
        raise DomainError("element must be a JSON object or a polynomial string")
    return obj


def parse_element(model: str, p: int, spec: str):
    """Element of a ring model from ``{"inv": ..., "tors": [...], "beta": [...]}`` or a bare polynomial.

    ``inv`` may be a polynomial string in ``x1..``, ``sigma1..``, ``gamma2..`` and
    ``delta``, or a serialized polynomial object.  ``tors`` and ``beta`` entries
    are ``[i, j, coeff]`` triples or ``{"i", "j", "coeff"}`` objects.
    """
    obj = _load_spec(spec)
    inv = obj.get("inv", "0")
    target = "sigma" if model in ("bpgl", "hbpgl") else "x"
    if isinstance(inv, dict):
        f = Poly.from_json(inv)
        f = _expr_poly(f.to_text(), p, target)
    else:
        f = _expr_poly(str(inv), p, target)
    tors = _tors(obj.get("tors"))
    if model == "bpgl":
        return BPGLElement.make(p, f, tors)
    if model == "hbpgl":
        return HBPGLElement.make(p, BPGLElement.make(p, f, tors), _tors(obj.get("beta")))
    m = cycgl_model(p) if model == "cycgl" else cycpgl_model(p)
    return m.element(f, tors)


def _multiply(model: str, a, b):
    if model == "bpgl":
        return bpgl_multiply(a, b)
    if model == "hbpgl":
        return hbpgl_multiply(a, b)
    return (cycgl_model(a.p) if model == "cycgl" else cycpgl_model(a.p)).multiply(a, b)


def _element_payload(e) -> Dict[str, Any]:
    out = e.to_json()
    out["text"] = str(e)
    return out


# ---------------------------------------------------------------------------------
# commands


def cmd_additive(args, cache) -> Result:
    p = validate_p(args.p)
    grading = "cohomology" if args.cohomology else "chow"

    def group(m):
        if args.from_model:
            return graded_group_from_model(p, m, grading)
        if args.cohomology:
            return additive.cohomology_group_descriptor(m, p)
        return additive.chow_group_descriptor(m, p)

    def as_payload(g):
        return {"rank": g.free_rank, "torsion": [str(t) for t in g.torsion]}

    if args.max_m is None and args.m is None:
        raise UsageError("additive needs --m or --max-m")
    if args.max_m is None:
        m = nonneg("m", args.m)
        g = group(m)
        label = f"H^{m}" if args.cohomology else f"CH^{m}"
        return Result(as_payload(g), lambda pl: f"{label}(BPGL_{p}) = {g}")
    top = nonneg("max-m", args.max_m)
    rows = []
    groups = []
    for m in range(top + 1):
        g = group(m)
        groups.append(dict(as_payload(g), m=m))
        rows.append({"m": m, "rank": g.free_rank, "torsion": len(g.torsion), "group": str(g)})
    if args.csv:
        plotting.write_csv(rows, args.csv, ["m", "rank", "torsion", "group"])
    if args.figure:
        plotting.plot_additive(p, plotting.additive_rows(p, top) if not args.cohomology else
                               [{"m": r["m"], "rank": r["rank"], "torsion": r["torsion"], "odd_torsion": 0}
                                for r in rows], args.figure)
    payload = {"p": p, "grading": grading, "groups": groups}

    def text(pl):
        sym = "H" if args.cohomology else "CH"
        return "\n".join(f"{sym}^{r['m']}: {r['group']}" for r in rows)

    return Result(payload, text)


def _torus_group(args, p):
    return TorusKind(args.torus.upper()), parse_group(args.group, p)


def _degree(args, p, name="max_degree"):
    d = nonneg("max-degree", getattr(args, name))
    lim = args.limit if args.limit is not None else degree_limit(p)
    if d > lim:
        raise DegreeLimitExceeded(f"max-degree {d} exceeds the configured limit {lim} for p={p} (raise it with --limit)")
    return d


def _table(args, cache, p):
    torus, group = _torus_group(args, p)
    d = _degree(args, p)
    return generator_table(p, torus, group, d, cache, time_budget=args.time_budget)


def cmd_invariant_gens(args, cache) -> Result:
    p = validate_p(args.p)
    table = _table(args, cache, p)
    gens = []
    for i, e in enumerate(table.entries):
        s = table.sigma_form(i)
        item = {"degree": e.degree, "name": e.name, "form": (s if s is not None else table.x_form(i)).to_text()}
        if s is not None:
            item["sigma_form"] = s.to_text()
        gens.append(item)
    payload = {"p": p, "torus": table.torus.value, "group": table.group.label, "max_degree": table.max_degree,
               "count": len(gens), "degrees": table.degrees(), "generators": gens,
               "engine_version": table.to_json()["engine_version"]}
    if args.figure:
        plotting.plot_generator_degrees(p, table.degrees(), table.max_degree, args.figure)
    if args.csv:
        plotting.write_csv(gens, args.csv, ["degree", "name", "form"])

    def text(pl):
        lines = [f"{pl['count']} generators, degrees {pl['degrees']}"]
        lines += [f"{g['name']} ({g['degree']}): {g['form']}" for g in pl["generators"]]
        return "\n".join(lines)

    return Result(payload, text)


def cmd_relations(args, cache) -> Result:
    p = validate_p(args.p)
    torus, group = _torus_group(args, p)
    d = _degree(args, p)
    params = {"p": p, "torus": torus.value, "group": group.label, "max_degree": d}

    def compute():
        table = generator_table(p, torus, group, d, cache, time_budget=args.time_budget)
        rels = find_relations(table, d)
        return {"p": p, "torus": torus.value, "group": group.label, "max_degree": d,
                "generators": [{"name": e.name, "degree": e.degree} for e in table.entries],
                "relations": [{"degree": k, "relation": r.to_text()} for k, r in rels.relations]}

    payload = cache.get_or_compute("relations", params, compute) if cache.enabled else compute()

    def text(pl):
        gens = ", ".join(f"{g['name']}({g['degree']})" for g in pl["generators"])
        lines = [f"generators: {gens}"]
        lines += [f"degree {r['degree']}: {r['relation']} = 0" for r in pl["relations"]] or ["no relations"]
        return "\n".join(lines)

    return Result(payload, text)


def cmd_dickson(args, cache) -> Result:
    p = validate_p(args.p)
    q, r = cycmu.dickson_q(p), cycmu.dickson_r(p)
    payload: Dict[str, Any] = {"p": p, "q": q.to_text(signed=True), "r": r.to_text(signed=True)}
    if args.verify:
        try:
            cycmu.chern_orbit_product(p)
            cycmu.chern_orbit_product(p, homogenize=True)
            ok = cycmu.dickson_q_alt(p) == q
        except ArithmeticError:
            ok = False
        payload["verified"] = ok
        if not ok:
            raise DomainError("product identity fails")

    def text(pl):
        if args.verify:
            return "ok: product identity holds"
        return f"q = {pl['q']}\nr = {pl['r']}"

    return Result(payload, text)


def cmd_chern_restrict(args, cache) -> Result:
    p = validate_p(args.p)
    i = args.i
    if not 1 <= i <= p * p - 1:
        raise DomainError(f"i must lie in [1, {p * p - 1}], got {i}")
    payload: Dict[str, Any] = {"p": p, "i": i, "cycmu": cycmu.adjoint_chern_restriction(p, i).to_text(signed=True)}
    if args.torus:
        t = adjoint_total_chern_on_torus(p, i) if i <= p * p - p else Poly.zero(x_vars(p))
        payload["torus_sigma"] = to_sigma_basis(t, p).to_text()

    def text(pl):
        out = f"c_{i}(sl_{p}) on C_p x mu_p: {pl['cycmu']}"
        if "torus_sigma" in pl:
            out += f"\nc_{i}(sl_{p}) on the torus: {pl['torus_sigma']}"
        return out

    return Result(payload, text)


def cmd_ring_mul(args, cache) -> Result:
    p = validate_p(args.p)
    a = parse_element(args.model, p, args.a)
    b = parse_element(args.model, p, args.b)
    c = _multiply(args.model, a, b)
    payload = {"model": args.model, "p": p, "product": _element_payload(c)}
    return Result(payload, lambda pl: pl["product"]["text"])


def cmd_restrict(args, cache) -> Result:
    p = validate_p(args.p)
    a = parse_element(args.model, p, args.a)
    if args.model == "bpgl":
        img = bpgl_restrict(a)
        payload = {"torus": img.torus_part.to_text(), "cycmu": img.cycmu_part.to_text(signed=True)}
    elif args.model == "hbpgl":
        img = hbpgl_restrict(a)
        payload = {"torus": img.torus_part.to_text(), "cycmu": img.cycmu_part.to_json()}
    else:
        m = cycgl_model(p) if args.model == "cycgl" else cycpgl_model(p)
        payload = {"torus": m.restrict_to_torus(a).to_text(), "cycmu": m.restrict_to_cycmu(a).to_text(signed=True),
                   "mu": m.restrict_to_mu(a).to_text(signed=True)}
    payload = {"model": args.model, "p": p, "image": payload}

    def text(pl):
        return "\n".join(f"{k}: {v if isinstance(v, str) else canonical_json(v)}" for k, v in pl["image"].items())

    return Result(payload, text)


def cmd_mackey(args, cache) -> Result:
    import random

    p = validate_p(args.p)
    if p > 7:
        raise GroupTooLarge("explicit enumeration of S_p is limited to p <= 7")
    G = parse_group("symmetric", p)
    K, H = parse_group(args.K, p), parse_group(args.H, p)
    dc = double_cosets(G, K, H)
    rng = random.Random(args.seed)
    polys = []
    if args.poly:
        polys.append(parse_poly(args.poly, x_vars(p)))
    polys += [random_invariant(p, H, rng) for _ in range(args.trials)]
    outcomes = []
    for f in polys:
        rep = mackey_report(G, K, H, f)
        outcomes.append(rep.holds)
    payload: Dict[str, Any] = {
        "p": p, "G": G.label, "K": K.label, "H": H.label, "seed": args.seed,
        "double_cosets": len(dc), "representatives": [list(s) for s in dc.reps],
        "intersection_orders": [k.order() for k in dc.intersections], "sizes": list(dc.sizes),
        "partition_ok": dc.check_partition(as_group(G), as_group(K), as_group(H)),
        "instances": len(outcomes), "verified": sum(outcomes), "all_hold": all(outcomes)}
    if K.kind.value == H.kind.value == "cyclic":
        payload["formula"] = cyclic_double_coset_formula(p)
        dec = cyclic_two_part_decomposition(p, random_invariant(p, H, rng))
        payload["two_part"] = {"normalizer": dec.n_normalizer, "generic": dec.n_generic}

    def text(pl):
        lines = [f"|K\\G/H| = {pl['double_cosets']} (K={pl['K']}, H={pl['H']}, p={p})"]
        if "formula" in pl:
            lines.append(f"formula: {pl['formula']}; normalizer {pl['two_part']['normalizer']}, "
                         f"generic {pl['two_part']['generic']}")
        lines.append(f"Mackey formula: {pl['verified']}/{pl['instances']} instances hold")
        return "\n".join(lines)

    return Result(payload, text)


def cmd_verify_all(args, cache) -> Result:
    p = args.p
    if p not in verification.SUPPORTED_PRIMES:
        if p % 2 == 0 or not is_prime(p):
            validate_p(p)
        raise DomainError(f"verify-all supports p in {list(verification.SUPPORTED_PRIMES)}, got {p}")
    only = None
    if args.only:
        only = [int(x) for x in args.only.split(",")]
    report = verification.verify_all(p, args.budget, cache, only)
    payload = report.to_json()
    if args.report_dir:
        out = Path(args.report_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        plotting.write_csv([dict(r.to_json(), primes=" ".join(map(str, r.primes)), seconds=f"{r.seconds:.3f}")
                            for r in report.results], out / "checks.csv",
                           ["criterion", "name", "status", "reason", "seconds", "primes", "detail"])
        plotting.plot_check_times(report.results, out / "checks.png")
        top = verification.ADDITIVE_BOUNDS.get(p, 12)
        rows = plotting.additive_rows(p, top)
        plotting.write_csv(rows, out / "additive.csv")
        plotting.plot_additive(p, rows, out / "additive.png")
        gen_check = next((r for r in report.results if r.criterion in (5, 6)), None)
        if gen_check is not None and gen_check.status != "skipped":
            d = 12 if p == 3 else 20
            table = generator_table(p, "PGL", "symmetric", d, cache)
            expected = verification.PGL3_EXPECTED_DEGREES if p == 3 else verification.PGL5_EXPECTED_DEGREES
            plotting.write_csv([{"degree": e.degree, "name": e.name} for e in table.entries], out / "generators.csv")
            plotting.plot_generator_degrees(p, table.degrees(), d, out / "generators.png", expected)

    def text(pl):
        lines = [r.line() for r in report.results]
        counts = {k: sum(1 for r in report.results if r.status == k) for k in ("pass", "fail", "skipped")}
        lines.append(f"{counts['pass']} passed, {counts['fail']} failed, {counts['skipped']} skipped")
        return "\n".join(lines)

    return Result(payload, text)


COMMANDS = {
    "additive": cmd_additive,
    "invariant-gens": cmd_invariant_gens,
    "relations": cmd_relations,
    "dickson": cmd_dickson,
    "chern-restrict": cmd_chern_restrict,
    "ring-mul": cmd_ring_mul,
    "restrict": cmd_restrict,
    "mackey": cmd_mackey,
    "verify-all": cmd_verify_all,
}


def build_parser() -> Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--cache-dir", default=None, help="cache directory (default $CHOWPGL_CACHE_DIR or ~/.cache/chowpgl)")
    common.add_argument("--no-cache", action="store_true", help="neither read nor write the cache")
    common.add_argument("--check-cache", action="store_true",
                        help="also recompute without the cache and fail unless the outputs are byte-identical")

    parser = Parser(prog="chowpgl", description="Exact computations for the Chow rings of BPGL_p.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=Parser)

    s = sub.add_parser("additive", parents=[common], help="additive structure of CH^m or H^m")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--m", type=int)
    s.add_argument("--max-m", type=int, help="tabulate degrees 0..MAX_M")
    s.add_argument("--cohomology", action="store_true", help="m is a cohomological degree")
    s.add_argument("--from-model", action="store_true", help="count bases of the ring model instead")
    s.add_argument("--csv", help="write the table (with --max-m) as CSV")
    s.add_argument("--figure", help="write a figure (with --max-m)")

    for name, helptext in (("invariant-gens", "minimal generators of torus invariants"),
                           ("relations", "relations among the minimal generators")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("--p", type=int, required=True)
        s.add_argument("--max-degree", type=int, required=True)
        s.add_argument("--torus", default="PGL", choices=("GL", "SL", "PGL", "gl", "sl", "pgl"))
        s.add_argument("--group", default="symmetric")
        s.add_argument("--limit", type=int, help="override the configured degree limit")
        s.add_argument("--time-budget", type=float, help="seconds before giving up (exit 2)")
        if name == "invariant-gens":
            s.add_argument("--csv")
            s.add_argument("--figure")

    s = sub.add_parser("dickson", parents=[common], help="the invariants q and r")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--verify", action="store_true", help="check the orbit product identities")

    s = sub.add_parser("chern-restrict", parents=[common], help="restriction of c_i(sl_p)")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--i", type=int, required=True)
    s.add_argument("--torus", action="store_true", help="also give the torus restriction in the sigma-basis")

    for name, helptext in (("ring-mul", "multiply two elements of a ring model"),
                           ("restrict", "restrict an element of a ring model")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("--p", type=int, required=True)
        s.add_argument("--model", choices=("bpgl", "hbpgl", "cycgl", "cycpgl"), default="bpgl")
        s.add_argument("--a", required=True, help="element as JSON, @file or a polynomial")
        if name == "ring-mul":
            s.add_argument("--b", required=True)

    s = sub.add_parser("mackey", parents=[common], help="double cosets and Mackey's formula")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--K", default="cyclic")
    s.add_argument("--H", default="cyclic")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=20)
    s.add_argument("--poly", help="an H-invariant polynomial in x1..xp to test as well")

    s = sub.add_parser("verify-all", parents=[common], help="run the acceptance checks at one prime")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--budget", type=float, help="total seconds; checks that do not fit are skipped")
    s.add_argument("--only", help="comma-separated criterion numbers")
    s.add_argument("--report-dir", help="write report.json, CSV tables and figures here")
    return parser


DOMAIN_ERRORS = (DomainError, ValueError, IntegrityError, NotInvariantError, ArithmeticError, KeyError)
RESOURCE_ERRORS = (DegreeLimitExceeded, ResourceLimitExceeded, GroupTooLarge, MemoryError, RecursionError)


def _error(fmt: str, kind: str, exc: BaseException) -> None:
    obj = {"error": {"kind": kind, "type": type(exc).__name__, "message": str(exc)}}
    if fmt == "json":
        print(canonical_json(obj))
    else:
        print(f"error ({kind}): {exc}", file=sys.stderr)


def run(args) -> int:
    fmt = args.format
    directory = args.cache_dir
    cache = Cache(directory, enabled=not args.no_cache)
    try:
        res = COMMANDS[args.command](args, cache)
        out = res.render(fmt)
        if args.check_cache:
            fresh = COMMANDS[args.command](args, Cache(directory, enabled=False)).render(fmt)
            if fresh != out:
                raise DomainError("cached output differs from recomputation")
    except UsageError as exc:
        print(f"chowpgl {args.command}: error: {exc}", file=sys.stderr)
        return EX_USAGE
    except RESOURCE_ERRORS as exc:
        _error(fmt, "resource", exc)
        return EX_RESOURCE
    except DOMAIN_ERRORS as exc:
        _error(fmt, "domain", exc)
        return EX_DOMAIN
    print(out)
    return EX_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EX_USAGE
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
