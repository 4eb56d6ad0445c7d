"""Command-line front end.

    toricsalvetti weyl --type B --rank 2 [--out complex.json] [--mod2]
    toricsalvetti toric --characters input.json [--lattice lattice.json] [--mod2]
    toricsalvetti toric --type B --rank 2 [--lattice coroot|coweight]
    toricsalvetti tableaux --rank 2 [--cross-check] [--out poset.dot]
    toricsalvetti render --type B --rank 2 --out b2.svg
    toricsalvetti homology complex.json [--mod2]

Reports go to stdout as JSON; files are written atomically.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from fractions import Fraction

from . import homology as hom
from .coxeter import OrderCapExceeded, UnsupportedType, max_order_from_env, build_affine_system
from .salvetti_weyl import assemble
from .tableaux import cross_check_geometric, toric_facet_poset
from .torus import Lattice, NotThick, ToricArrangement, weyl_arrangement


class InputError(ValueError):
    pass


def write_atomic(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read {path}: {e}") from e


def _rational(v):
    if isinstance(v, bool) or not isinstance(v, (int, str, float)):
        raise InputError(f"not a number: {v!r}")
    if isinstance(v, float) and not v.is_integer():
        raise InputError(f"non-integer float {v!r}; give rationals as strings like \"1/2\"")
    try:
        return Fraction(v)
    except ValueError as e:
        raise InputError(str(e)) from e


def _int_vector(v, n=None):
    if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        raise InputError(f"character must be a list of integers, got {v!r}")
    if n is not None and len(v) != n:
        raise InputError(f"character {v} has length {len(v)}, expected {n}")
    return tuple(v)


def parse_toric_input(data, lattice_data=None) -> ToricArrangement:
    """{"rank", "characters", "lattice": [columns], "domain": {"origin": [...]}}; the
    lattice may come from a separate file (bare list of columns or {"lattice": ...})."""
    if isinstance(data, list):
        data = {"characters": data}
    if not isinstance(data, dict) or "characters" not in data:
        raise InputError("input must be an object with a 'characters' list")
    chars = data["characters"]
    if not isinstance(chars, list):
        raise InputError("'characters' must be a list")
    if not chars:
        raise InputError("empty X")
    n = data.get("rank", len(chars[0]) if isinstance(chars[0], list) else None)
    chars = [_int_vector(c, n) for c in chars]
    if lattice_data is not None:
        lat = lattice_data["lattice"] if isinstance(lattice_data, dict) else lattice_data
    else:
        lat = data.get("lattice")
    if lat is None:
        lat = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    if not isinstance(lat, list) or len(lat) != n or any(not isinstance(c, list) or len(c) != n for c in lat):
        raise InputError(f"lattice must be {n} column vectors of length {n}")
    lattice = Lattice([[_rational(x) for x in c] for c in lat])
    origin = None
    dom = data.get("domain")
    if dom is not None:
        if not isinstance(dom, dict) or not isinstance(dom.get("origin"), list) or len(dom["origin"]) != n:
            raise InputError("domain must be {\"origin\": [n rationals]}")
        origin = [_rational(x) for x in dom["origin"]]
    return ToricArrangement(chars, lattice, origin)


# --- commands ------------------------------------------------------------------

def cmd_weyl(args) -> int:
    cap = args.max_order if args.max_order is not None else max_order_from_env()
    _, gens = build_affine_system(args.type, args.rank, cap)
    cc = assemble(gens)
    res = hom.integer_homology(cc)
    report = {"type": args.type.upper(), "rank": args.rank, "order": len(gens.finite_group), **res.as_dict()}
    report["connected"] = hom.is_connected(cc)
    if args.mod2:
        report["mod2"] = hom.mod2_homology(cc)
    if args.out:
        full = dict(report)
        full["complex"] = hom.complex_to_dict(cc, lambda c: c.label())
        write_atomic(args.out, dumps(full))
    sys.stdout.write(dumps(report))
    return 0


def _toric_from_args(args) -> ToricArrangement:
    if args.characters and args.type:
        raise InputError("give either --characters or --type/--rank, not both")
    if args.characters:
        lat = None
        if args.lattice:
            lat = _load_json(args.lattice)
        return parse_toric_input(_load_json(args.characters), lat)
    if args.type:
        if args.rank is None:
            raise InputError("--type needs --rank")
        return weyl_arrangement(args.type, args.rank, args.lattice or "coroot")
    raise InputError("no input: give --characters FILE or --type/--rank")


def cmd_toric(args) -> int:
    arr = _toric_from_args(args)
    report = arr.summary()
    if args.mod2:
        try:
            report["mod2"] = hom.mod2_homology(arr.boundary().mod2_complex())
        except NotThick as e:
            report["mod2"] = {"refused": str(e)}
            print(f"warning: {e}", file=sys.stderr)
    if args.out:
        if args.emit == "dot":
            write_atomic(args.out, facet_dot(arr))
        else:
            write_atomic(args.out, dumps(report))
    sys.stdout.write(dumps(report))
    return 0


def facet_dot(arr: ToricArrangement) -> str:
    lines = ["digraph toric_facets {"]
    for tf in arr.facets:
        lines.append(f'  "{tf.label()}" [dim={tf.dim}];')
    for up, lo, m in arr.covers():
        extra = f' [label="{m}"]' if m > 1 else ""
        lines.append(f'  "{arr.facets[up].label()}" -> "{arr.facets[lo].label()}"{extra};')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_tableaux(args) -> int:
    n = args.rank
    poset = toric_facet_poset(n)
    report = {"n": n, "counts": poset.f_vector(), "euler": poset.euler(), "covers": len(poset.covers)}
    if args.cross_check:
        rep = cross_check_geometric(n)
        report["cross_check"] = "match" if rep.match else "mismatch"
        report["cross_check_report"] = rep.as_dict()
        if not rep.match:
            print(str(rep), file=sys.stderr)
    if args.out:
        if args.emit == "json":
            write_atomic(args.out, dumps({**report, "classes": [[str(c) for c in cs] for cs in poset.classes],
                                          "edges": [[str(a), str(b)] for a, b in poset.covers]}))
        else:
            write_atomic(args.out, poset.to_dot())
    sys.stdout.write(dumps(report))
    return 0 if report.get("cross_check", "match") == "match" else 1


def cmd_render(args) -> int:
    from .render import render_svg, weyl_embedding
    arr = _toric_from_args(args)
    emb = weyl_embedding(args.type, args.rank) if args.type else None
    svg = render_svg(arr, emb, labels=args.labels)
    if args.out:
        write_atomic(args.out, svg)
    else:
        sys.stdout.write(svg)
    return 0


def cmd_homology(args) -> int:
    data = _load_json(args.input)
    if isinstance(data, dict) and "complex" in data:
        data = data["complex"]
    try:
        cc = hom.complex_from_dict(data)
    except (KeyError, TypeError, IndexError) as e:
        raise InputError(f"malformed complex: {e}") from e
    report = hom.integer_homology(cc).as_dict() if cc.modulus == 0 else {"cells": cc.counts()}
    if args.mod2 or cc.modulus == 2:
        report["mod2"] = hom.mod2_homology(cc)
    sys.stdout.write(dumps(report))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="toricsalvetti", description="Salvetti complexes of toric arrangements")
    sub = p.add_subparsers(dest="command", required=True)

    w = sub.add_parser("weyl", help="Weyl toric complex and its integer homology")
    w.add_argument("--type", required=True)
    w.add_argument("--rank", type=int, required=True)
    w.add_argument("--max-order", type=int)
    w.add_argument("--mod2", action="store_true")
    w.add_argument("--out")
    w.add_argument("--emit", choices=["json"], default="json")
    w.set_defaults(func=cmd_weyl)

    for name, func, emits in (("toric", cmd_toric, ["json", "dot"]), ("render", cmd_render, ["svg"])):
        t = sub.add_parser(name)
        t.add_argument("--characters", help="JSON input with characters (and optionally lattice, domain)")
        t.add_argument("--lattice", help="lattice JSON file, or coroot/coweight with --type")
        t.add_argument("--type")
        t.add_argument("--rank", type=int)
        t.add_argument("--out")
        t.add_argument("--emit", choices=emits, default=emits[0])
        if name == "toric":
            t.add_argument("--mod2", action="store_true")
        else:
            t.add_argument("--labels", action="store_true")
        t.set_defaults(func=func)

    tb = sub.add_parser("tableaux", help="cyclic tableau classes and their merge poset")
    tb.add_argument("--rank", "-n", type=int, required=True)
    tb.add_argument("--cross-check", action="store_true")
    tb.add_argument("--out")
    tb.add_argument("--emit", choices=["dot", "json"], default="dot")
    tb.set_defaults(func=cmd_tableaux)

    h = sub.add_parser("homology", help="homology of a serialized complex")
    h.add_argument("input")
    h.add_argument("--mod2", action="store_true")
    h.set_defaults(func=cmd_homology)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OrderCapExceeded, UnsupportedType, InputError, ValueError, LookupError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
