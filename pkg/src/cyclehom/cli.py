"""Command-line front end.

Examples:
  cyclehom seed-corpus corpus/
  cyclehom group-homology corpus/Z2.json --coeff Z --max-i 3
  cyclehom galois corpus/mu3_conjugation.json --coeff Z/3 --max-i 3 --compare-invariants
  cyclehom ss corpus/Z2.json --coeff Z/2 --bounds 4,4
  cyclehom bredon --gm-table 0..9 --format csv

Exit codes: 0 ok, 2 malformed input, 3 failed validation, 4 unsupported parameter.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from math import gcd
from pathlib import Path

from cyclehom import __version__
from cyclehom.kernel import BACKEND
from cyclehom.algebra.abelian import CoefficientRing
from cyclehom.errors import CompositeModulus, CyclehomError, InvalidGroup
from cyclehom.groups import FiniteGroup, GroupAction

FORMAT_VERSION = "1"
EXIT_OK, EXIT_PARSE, EXIT_VALIDATION, EXIT_UNSUPPORTED = 0, 2, 3, 4


class ParseError(Exception):
    pass


class ValidationError(Exception):
    pass


class Unsupported(Exception):
    pass


# -- input files -----------------------------------------------------------------


def _read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from e
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: malformed JSON ({e.msg} at line {e.lineno})") from e


def _check_version(obj, what):
    if not isinstance(obj, dict):
        raise ParseError(f"{what}: expected a JSON object")
    if str(obj.get("format_version")) != FORMAT_VERSION:
        raise ParseError(f"{what}: format_version must be {FORMAT_VERSION!r}")


def group_from_json(obj, what="group file") -> FiniteGroup:
    _check_version(obj, what)
    table = obj.get("table")
    if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
        raise ParseError(f"{what}: 'table' must be a list of rows")
    if "order" in obj and obj["order"] != len(table):
        raise ValidationError(f"{what}: closure: order {obj['order']} does not match table size {len(table)}")
    try:
        return FiniteGroup(table, names=obj.get("names"), label=obj.get("label"))
    except InvalidGroup as e:
        raise ValidationError(f"{what}: invalid group: {e}") from e


def load_group(path) -> FiniteGroup:
    return group_from_json(_read_json(path), str(path))


def load_action(path) -> GroupAction:
    obj = _read_json(path)
    _check_version(obj, str(path))
    g = obj.get("group")
    if isinstance(g, str):
        group = load_group(Path(path).parent / g)
    elif isinstance(g, dict):
        group = group_from_json(g, f"{path}: inline group")
    else:
        raise ParseError(f"{path}: 'group' must be a path or an inline group object")
    gens = obj.get("generators", [])
    if not isinstance(gens, list) or not all(isinstance(p, list) for p in gens):
        raise ParseError(f"{path}: 'generators' must be a list of permutations")
    try:
        return GroupAction(group, gens, gamma_order=obj.get("gamma_order"))
    except CyclehomError as e:
        raise ValidationError(f"{path}: not an automorphism: {e}") from e


def parse_coeff(text) -> CoefficientRing:
    try:
        c = CoefficientRing.parse(text)
    except ValueError as e:
        raise ParseError(str(e)) from e
    if c.kind == "Z/n" and c.n < 2:
        raise ValidationError(f"coefficient modulus must be at least 2, got {c.n}")
    return c


def parse_range(text) -> list:
    """``a..b`` (inclusive), ``a`` or a comma list."""
    text = text.strip()
    m = re.fullmatch(r"(-?\d+)\.\.(-?\d+)", text)
    if m:
        lo, hi = int(m.group(1)), int(m.group(2))
        return list(range(lo, hi + 1))
    try:
        return [int(x) for x in text.split(",")]
    except ValueError as e:
        raise ParseError(f"cannot parse range {text!r}") from e


def parse_bidegree_spec(text):
    """``p,q`` or ``(p,q)`` where each side may be a range ``a..b``."""
    t = text.strip().strip("()")
    parts = t.split(",")
    if len(parts) != 2:
        raise ParseError(f"bidegree must look like p,q; got {text!r}")
    return parse_range(parts[0]), parse_range(parts[1])


def load_config(path) -> dict:
    if path is None:
        return {}
    cfg = _read_json(path)
    if not isinstance(cfg, dict):
        raise ParseError(f"{path}: config must be a JSON object")
    for key in ("N", "jobs"):
        if key in cfg and (not isinstance(cfg[key], int) or cfg[key] < 1):
            raise ValidationError(f"{path}: {key} must be a positive integer")
    return cfg


# -- helpers ---------------------------------------------------------------------


def _map(fn, items, jobs):
    items = list(items)
    if jobs and jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


def _meta(command, args, backend=True):
    meta = {"command": command, "version": __version__, "format_version": FORMAT_VERSION}
    if backend:
        meta["backend"] = BACKEND
    return meta


def _truncation(args, cfg, max_i, slack=1):
    n = args.N if args.N is not None else cfg.get("N", max_i + slack)
    if n < max_i + slack:
        raise ValidationError(f"truncation N={n} must be at least max_i + {slack} = {max_i + slack}")
    return n


def _emit(args, payload: dict):
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    _write(args, text)


def _write(args, text):
    if getattr(args, "output", None):
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _group_json(g):
    return dict(g.to_json(), text=str(g))


# -- commands --------------------------------------------------------------------


def _homology_job(job):
    from cyclehom.bar import group_homology

    g, i, coeff, n, normalized = job
    return group_homology(g, i, coeff, N=n, normalized=normalized)


def cmd_group_homology(args, cfg):
    g = load_group(args.group)
    coeff = parse_coeff(args.coeff)
    n = _truncation(args, cfg, args.max_i)
    jobs = args.jobs or cfg.get("jobs", 1)
    groups = _map(_homology_job, [(g, i, coeff, n, args.normalized) for i in range(args.max_i + 1)], jobs)
    payload = {
        "coeff": str(coeff),
        "group_order": g.n,
        "truncation": n,
        "normalized": bool(args.normalized),
        "degrees": [dict(_group_json(h), degree=i) for i, h in enumerate(groups)],
        "meta": _meta("group-homology", args),
    }
    _emit(args, payload)


def in_hypothesis(a: GroupAction, coeff: CoefficientRing) -> bool:
    """The invariants comparison is claimed only when ``|Gamma|`` is invertible in the coefficients."""
    if coeff.kind == "Q":
        return True
    if coeff.kind == "Z/n":
        return gcd(coeff.n, a.gamma_order) == 1
    return a.gamma_order == 1


def _galois_job(job):
    from cyclehom.bar import galois_homology, invariants_homology

    a, i, coeff, n, compare = job
    orb = galois_homology(a, coeff, i, n)
    inv = invariants_homology(a, coeff, i, n) if compare else None
    return orb, inv


def cmd_galois(args, cfg):
    a = load_action(args.action)
    coeff = parse_coeff(args.coeff)
    n = _truncation(args, cfg, args.max_i)
    jobs = args.jobs or cfg.get("jobs", 1)
    results = _map(_galois_job, [(a, i, coeff, n, args.compare_invariants) for i in range(args.max_i + 1)], jobs)
    hyp = in_hypothesis(a, coeff)
    degrees = []
    for i, (orb, inv) in enumerate(results):
        row = {"degree": i, "orbit_homology": _group_json(orb)}
        if args.compare_invariants:
            row["invariants_homology"] = _group_json(inv)
            row["verdict"] = ("equal" if orb == inv else "different") if hyp else "out-of-hypothesis"
        degrees.append(row)
    payload = {
        "coeff": str(coeff),
        "group_order": a.group.n,
        "gamma_order": a.gamma_order,
        "truncation": n,
        "in_hypothesis": hyp,
        "degrees": degrees,
        "meta": _meta("galois", args),
    }
    _emit(args, payload)


def cmd_ss(args, cfg):
    from cyclehom.spectral import (DoubleComplex, build_constant_row_grid, degenerates, edge_map, page)

    coeff = parse_coeff(args.coeff)
    if coeff.kind != "Z/n":
        raise Unsupported(f"pages need coefficients Z/l with l prime, got {coeff}")
    from cyclehom.algebra.abelian import is_prime

    if not is_prime(coeff.n):
        raise Unsupported(f"modulus {coeff.n} is composite; pages need a prime field")
    bounds = parse_range(args.bounds)
    if len(bounds) != 2 or min(bounds) < 0:
        raise ParseError("--bounds must be two nonnegative integers s,t")
    if args.double_complex:
        obj = _read_json(args.double_complex)
        _check_version(obj, args.double_complex)
        try:
            dc = DoubleComplex.from_json(obj)
        except (KeyError, TypeError, IndexError) as e:
            raise ParseError(f"{args.double_complex}: malformed double complex ({e})") from e
        except CyclehomError as e:
            raise ValidationError(f"{args.double_complex}: {e}") from e
        source = {"double_complex": str(args.double_complex)}
    else:
        if not args.group:
            raise ParseError("give a group file or --double-complex")
        g = load_group(args.group)
        dc = build_constant_row_grid(g, bounds[0], bounds[1])
        source = {"group_order": g.n}
    try:
        e1 = page(dc, 1, coeff, args.orientation)
        e2 = page(dc, 2, coeff, args.orientation)
    except CompositeModulus as e:
        raise Unsupported(str(e)) from e
    ms, mt = dc.window
    edges = []
    for k in range(min(ms, mt) + 1):
        em = edge_map(dc, k, coeff)
        edges.append({"degree": k, "source_dim": em.source_dim, "target_dim": em.target_dim,
                      "isomorphism": em.is_isomorphism})
    payload = dict(source)
    payload.update({
        "coeff": str(coeff),
        "window": [ms, mt],
        "orientation": args.orientation,
        "E1": e1.grid(),
        "E2": e2.grid(),
        "E2_bottom_row": [e2.dim(s, 0) for s in range(ms + 1)],
        "degenerate": degenerates(e2),
        "edge_maps": edges,
        "edge_isomorphism": all(e["isomorphism"] for e in edges),
        "meta": dict(_meta("ss", args), grid_indexing="E[s][t]"),
    })
    _emit(args, payload)


def cmd_bredon(args, cfg):
    from cyclehom import bredon as br

    rows = []
    if args.point:
        ps, qs = parse_bidegree_spec(args.point)
        for p in ps:
            for q in qs:
                rows.append({"p": p, "q": q, "dimension": br.point_dim((p, q))})
        kind = "point"
    elif args.cpinf:
        ps, qs = parse_bidegree_spec(args.cpinf)
        for p in ps:
            for q in qs:
                row = {"p": p, "q": q, "dimension": br.cp_dim((p, q))}
                if args.generators:
                    row["generators"] = [m.format() for m in br.generators((p, q))]
                rows.append(row)
        kind = "cpinf"
    else:
        degrees = parse_range(args.gm_table)
        if any(s < 0 for s in degrees):
            raise ValidationError("--gm-table degrees must be nonnegative")
        for s in degrees:
            row = {"s": s, "dimension": br.cp_dim((s, 0))}
            if args.generators:
                row["generators"] = [m.format() for m in br.row_generators(s)]
            rows.append(row)
        kind = "gm-table"
    if args.format == "csv":
        buf = io.StringIO()
        fields = list(rows[0].keys()) if rows else ["dimension"]
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: ", ".join(v) if isinstance(v, list) else v for k, v in r.items()})
        _write(args, buf.getvalue())
    else:
        _emit(args, {"table": kind, "rows": rows, "dimensions": [r["dimension"] for r in rows],
                     "meta": _meta("bredon", args, backend=False)})


def cmd_seed_corpus(args, cfg):
    from cyclehom.corpus import write_corpus

    for path in write_corpus(args.outdir):
        print(path)


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cyclehom", description="Homology of finite groups, orbit complexes, "
                                 "spectral sequence pages and Bredon dimension tables.")
    ap.add_argument("--version", action="version", version=f"cyclehom {__version__} (kernel: {BACKEND})")
    ap.add_argument("--config", default=None, help="JSON file with defaults for N and jobs")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--coeff", default="Z", help='coefficients: "Z", "Q" or "Z/n"')
        p.add_argument("--output", "-o", default=None, help="write to a file instead of stdout")

    p = sub.add_parser("group-homology", help="bar-complex homology of a finite group")
    p.add_argument("group", help="group file (JSON)")
    common(p)
    p.add_argument("--max-i", type=int, default=3)
    p.add_argument("--N", type=int, default=None, help="truncation degree (at least max_i + 1)")
    p.add_argument("--normalized", action="store_true", help="use the normalized bar complex")
    p.add_argument("--jobs", type=int, default=None)
    p.set_defaults(func=cmd_group_homology)

    p = sub.add_parser("galois", help="homology of the orbit complex of a group action")
    p.add_argument("action", help="action file (JSON)")
    common(p)
    p.add_argument("--max-i", type=int, default=3)
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--compare-invariants", action="store_true",
                   help="also compute invariants of group homology and compare")
    p.add_argument("--jobs", type=int, default=None)
    p.set_defaults(func=cmd_galois)

    p = sub.add_parser("ss", help="E_1/E_2 pages of the constant-row grid of a group")
    p.add_argument("group", nargs="?", help="group file (JSON)")
    common(p)
    p.add_argument("--double-complex", default=None, help="double complex file instead of a group")
    p.add_argument("--bounds", default="4,4", help="window s,t")
    p.add_argument("--orientation", default="horizontal-first", choices=["horizontal-first", "vertical-first"])
    p.set_defaults(func=cmd_ss, coeff="Z/2")

    p = sub.add_parser("bredon", help="RO(Z/2)-graded dimension tables")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--point", help="bidegree p,q (ranges a..b allowed)")
    g.add_argument("--cpinf", help="bidegree p,q (ranges a..b allowed)")
    g.add_argument("--gm-table", help="degree range, e.g. 0..9")
    p.add_argument("--generators", action="store_true", help="list generator monomials")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_bredon)

    p = sub.add_parser("seed-corpus", help="write the bundled example files")
    p.add_argument("outdir")
    p.set_defaults(func=cmd_seed_corpus)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = load_config(args.config)
        for name in ("max_i", "N", "jobs"):
            v = getattr(args, name, None)
            if v is not None and v < (1 if name != "max_i" else 0):
                raise ValidationError(f"--{name.replace('_', '-')} out of range: {v}")
        args.func(args, cfg)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except Unsupported as e:
        print(f"error: unsupported parameter: {e}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except CyclehomError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
