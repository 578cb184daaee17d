"""Command line front end: parse inputs, dispatch, emit JSON reports.

Reports follow a fixed envelope (schema tag, tool version, input echo,
resolved configuration, result, caveat list) and are serialized with
sorted keys and stable ordering, so identical input and configuration
produce byte-identical output.  No timestamps or absolute paths are
injected.

Exit codes: 0 when the command computed what it was asked; 1 when a
verdict-style command found its verdict false or a domain precondition
failed (reported in JSON with ok=false); 2 on input errors (syntax,
malformed quivers, unreadable files, bad flag values).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .algcohom import (HochschildComplex, NoSemiNormedBasis,
                       TriangularRequired, find_semi_normed_basis,
                       epsilon_mu, simplicial_complex)
from .complex import build_complex, cohomology, euler_characteristic, homology
from .core import QuiverError, algebra_properties, enumerate_paths
from .coverings import (GroupAction, NotGalois, check_covering, check_galois,
                        deck_group, lift_complex_map)
from .dsl import ParseError, parse, parse_group, parse_morphism
from .homotopy import (HypothesisViolated, abelianization,
                       natural_homotopy_classes, pi1_presentation,
                       simplify_presentation, van_kampen_pushout,
                       walk_homotopy_classes)

_SCHEMA = "bqtop-report/1"


def _env_int(name):
    raw = os.environ.get(name)
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise ValueError("environment variable %s=%r is not an integer"
                         % (name, raw)) from None


def _build_parser():
    top = argparse.ArgumentParser(
        prog="bqtop",
        description="classifying spaces, fundamental groups and"
                    " cohomology of bound quivers")
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, file=True):
        if file:
            p.add_argument("file", help="quiver file")
        p.add_argument("--path-cap", type=int, default=None,
                       help="bound certification cap"
                            " (env BQTOP_PATH_CAP)")
        p.add_argument("--walk-bound", type=int, default=None,
                       help="walk rewriting length bound"
                            " (env BQTOP_WALK_BOUND)")
        p.add_argument("--support-cap", type=int, default=None,
                       help="minimal relation support size cap")
        p.add_argument("--out", default=None, help="write report here")

    common(sub.add_parser("check", help="algebra properties"))

    p = sub.add_parser("cells", help="cells of the classifying complex")
    common(p)
    p.add_argument("--sharp", action="store_true",
                   help="use walk classes (total variant)")
    p.add_argument("--max-dim", type=int, default=None)

    for name in ("homology", "cohomology"):
        p = sub.add_parser(name, help="%s of the classifying complex" % name)
        common(p)
        p.add_argument("--coeff", default="Z",
                       help="Z, Q, Fp:<p> or Zmod:<m>")
        p.add_argument("--sharp", action="store_true")

    p = sub.add_parser("pi1", help="fundamental group presentation")
    common(p)
    p.add_argument("--base", default=None)
    p.add_argument("--simplify", action="store_true")
    p.add_argument("--abelianization", action="store_true")

    p = sub.add_parser("vankampen", help="pushout of two vertex pieces")
    common(p)
    p.add_argument("--v1", nargs="+", required=True)
    p.add_argument("--v2", nargs="+", required=True)

    common(sub.add_parser("simplicial",
                          help="semi-normed basis and simplicial homology"))

    p = sub.add_parser("hochschild", help="Hochschild cohomology dimensions")
    common(p)
    p.add_argument("--field", default="Q", help="Q or Fp:<p>")

    common(sub.add_parser("compare",
                          help="simplicial vs Hochschild with the"
                               " comparison map"))

    p = sub.add_parser("cover", help="verify covering data")
    p.add_argument("action", choices=["verify"])
    p.add_argument("base", help="base quiver file")
    p.add_argument("cover", help="cover quiver file")
    p.add_argument("morphism", help="morphism file")
    p.add_argument("--galois", default=None, help="group file")
    p.add_argument("--path-cap", type=int, default=None)
    p.add_argument("--walk-bound", type=int, default=None)
    p.add_argument("--support-cap", type=int, default=None)
    p.add_argument("--out", default=None)

    p = sub.add_parser("dot", help="DOT export of the quiver")
    common(p)
    p.add_argument("--skeleton", action="store_true",
                   help="export the complex 1-skeleton instead")
    return top


def _read(path):
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load(path, cfg):
    quiver = parse(_read(path))
    kwargs = {}
    if cfg["path_cap"] is not None:
        kwargs["cap"] = cfg["path_cap"]
    return quiver, enumerate_paths(quiver, **kwargs)


def _config(args):
    return {
        "path_cap": args.path_cap if args.path_cap is not None
        else _env_int("BQTOP_PATH_CAP"),
        "walk_bound": args.walk_bound if args.walk_bound is not None
        else _env_int("BQTOP_WALK_BOUND"),
        "support_cap": args.support_cap,
    }


def _classes(table, cfg, sharp):
    kwargs = {}
    if cfg["support_cap"] is not None:
        kwargs["support_cap"] = cfg["support_cap"]
    if sharp:
        if cfg["walk_bound"] is not None:
            kwargs["walk_bound"] = cfg["walk_bound"]
        return walk_homotopy_classes(table, **kwargs)
    return natural_homotopy_classes(table, **kwargs)


def _groups_json(res, prefix):
    out = {}
    for i, g in enumerate(res.groups):
        key = "%s%d" % (prefix, i)
        if res.kind == "Z":
            out[key] = [g[0], list(g[1])]
        elif res.kind == "field":
            out[key] = g
        else:
            out[key] = list(g)
    return out


def _word(rel):
    if not rel:
        return "1"
    return "*".join(name if s > 0 else "%s^-1" % name for name, s in rel)


def _presentation_json(pres):
    rank, torsion = abelianization(pres)
    return {
        "base": pres.base,
        "generators": list(pres.generators),
        "relators": [_word(r) for r in pres.relators],
        "abelianization": {"rank": rank, "torsion": list(torsion)},
    }


def _covering_json(rep):
    out = {
        "ok": rep.ok,
        "ideal_preserved": rep.ideal_preserved,
        "fibers_nonempty": rep.fibers_nonempty,
        "local_bijections": rep.local_bijections,
        "relations_lift": rep.relations_lift,
        "vertex_fibers": {x: list(f) for x, f in rep.vertex_fibers.items()},
        "arrow_fibers": {a: list(f) for a, f in rep.arrow_fibers.items()},
        "witnesses": list(rep.witnesses),
    }
    if rep.galois_ok is not None:
        out["galois"] = {
            "ok": rep.galois_ok,
            "equivariant": rep.equivariant,
            "vertex_transitive": rep.vertex_transitive,
            "arrow_transitive": rep.arrow_transitive,
            "fixed_point_free": rep.fixed_point_free,
            "group_order": rep.group_order,
        }
    return out


def _dispatch(args, cfg):
    """Returns (result dict, caveats, ok)."""
    cmd = args.command
    if cmd == "cover":
        return _cover(args, cfg)
    quiver, table = _load(args.file, cfg)

    if cmd == "check":
        props = algebra_properties(table)
        result = {
            "nilpotency_bound": props.nilpotency_bound,
            "admissible": props.admissible,
            "connected": props.connected,
            "triangular": props.triangular,
            "almost_triangular": props.almost_triangular,
            "schurian": props.schurian,
            "semi_commutative": props.semi_commutative,
            "constricted": props.constricted,
            "euler_characteristic": props.euler_characteristic,
            "total_dimension": props.total_dimension,
            "dims": {"%s->%s" % p: d
                     for p, d in sorted(props.dims.items()) if d},
        }
        return result, [], True

    if cmd == "cells":
        classes = _classes(table, cfg, args.sharp)
        cx = build_complex(table, classes, max_dim=args.max_dim)
        cells = {}
        for n, layer in enumerate(cx.cells):
            if n == 0:
                cells["0"] = [c.key for c in layer]
            else:
                cells[str(n)] = [{"classes": list(c.key),
                                  "witness": str(c.witness)}
                                 for c in layer]
        return ({"counts": cx.counts(), "cells": cells,
                 "euler_characteristic": euler_characteristic(cx)},
                list(cx.caveats), True)

    if cmd in ("homology", "cohomology"):
        classes = _classes(table, cfg, args.sharp)
        cx = build_complex(table, classes)
        fn = homology if cmd == "homology" else cohomology
        res = fn(cx, args.coeff)
        prefix = "H" if cmd == "homology" else "H^"
        return ({"coefficients": res.coeff,
                 "groups": _groups_json(res, prefix),
                 "counts": cx.counts()},
                list(cx.caveats), True)

    if cmd == "pi1":
        kwargs = {}
        if cfg["support_cap"] is not None:
            kwargs["support_cap"] = cfg["support_cap"]
        pres = pi1_presentation(table, base=args.base, **kwargs)
        if args.simplify:
            pres = simplify_presentation(pres)
        result = {
            "base": pres.base,
            "generators": list(pres.generators),
            "relators": [_word(r) for r in pres.relators],
        }
        if args.abelianization:
            rank, torsion = abelianization(pres)
            result["abelianization"] = {"rank": rank,
                                        "torsion": list(torsion)}
        return result, [], True

    if cmd == "vankampen":
        try:
            vk = van_kampen_pushout(table, args.v1, args.v2)
        except HypothesisViolated as e:
            return {"error": str(e)}, [], False
        return ({"piece1": _presentation_json(vk.piece1),
                 "piece2": _presentation_json(vk.piece2),
                 "intersection": _presentation_json(vk.intersection),
                 "pushout": _presentation_json(vk.pushout)},
                [], True)

    if cmd in ("simplicial", "hochschild", "compare"):
        try:
            algebra = find_semi_normed_basis(table)
        except TriangularRequired as e:
            return {"error": str(e)}, [], False
        if not algebra.ok:
            return {"witnesses": list(algebra.witnesses)}, [], False

        if cmd == "simplicial":
            sc = simplicial_complex(algebra)
            res = sc.sh("Z")
            return ({"basis": [str(e) for e in algebra.elements],
                     "counts": list(sc.counts()),
                     "SH": _groups_json(res, "SH")},
                    [], True)

        if cmd == "hochschild":
            try:
                hc = HochschildComplex(algebra, args.field)
            except TriangularRequired as e:
                return {"error": str(e)}, [], False
            return ({"field": args.field, "HH": hc.hh_dims()}, [], True)

        # compare
        try:
            hc = HochschildComplex(algebra, "Q")
        except TriangularRequired as e:
            return {"error": str(e)}, [], False
        sc = simplicial_complex(algebra)
        rep = epsilon_mu(algebra, sc, hc)
        return ({"SH": [d["sh"] for d in rep.degrees],
                 "HH": [d["hh"] for d in rep.degrees],
                 "epsilon_iso": rep.iso,
                 "semi_commutative": rep.semi_commutative,
                 "schurian": rep.schurian,
                 "eps_cochain_map": rep.eps_cochain_map,
                 "mu_cochain_map": rep.mu_cochain_map,
                 "mu_eps_identity": rep.mu_eps_identity,
                 "eps_mu_identity": rep.eps_mu_identity,
                 "degrees": [dict(d, degree=i)
                             for i, d in enumerate(rep.degrees)]},
                [], True)

    raise AssertionError("unhandled command %r" % cmd)


def _cover(args, cfg):
    base_q, base_t = _load(args.base, cfg)
    cover_q, cover_t = _load(args.cover, cfg)
    p = parse_morphism(_read(args.morphism), cover_q, base_q)
    result = {}
    caveats = []
    if args.galois is not None:
        elements = parse_group(_read(args.galois), cover_q)
        action = GroupAction(cover_t, elements)
        rep = check_galois(base_t, cover_t, p, action)
    else:
        action = None
        rep = check_covering(base_t, cover_t, p)
    result["covering"] = _covering_json(rep)
    ok = rep.ok
    if rep.ok:
        kwargs = {}
        if cfg["support_cap"] is not None:
            kwargs["support_cap"] = cfg["support_cap"]
        cxb = build_complex(base_t, natural_homotopy_classes(base_t,
                                                             **kwargs))
        cxc = build_complex(cover_t, natural_homotopy_classes(cover_t,
                                                              **kwargs))
        caveats.extend(cxb.caveats)
        caveats.extend(cxc.caveats)
        lift = lift_complex_map(cxb, cxc, p)
        result["cells"] = {
            "ok": lift.ok,
            "class_correspondence": lift.class_correspondence,
            "faces_commute": lift.faces_commute,
            "incidence_bijections": lift.incidence_bijections,
            "base_counts": cxb.counts(),
            "cover_counts": cxc.counts(),
            "fiber_sizes": {str(n): sorted(len(f) for f in fib.values())
                            for n, fib in lift.cell_fibers.items()},
            "witnesses": list(lift.witnesses),
        }
        ok = ok and lift.ok
        if action is not None:
            ok = ok and rep.galois_ok
            if rep.galois_ok and cover_q.is_connected():
                deck = deck_group(cxb, cxc, p, action)
                result["deck"] = {
                    "ok": deck.ok,
                    "order": deck.order,
                    "automorphisms": deck.automorphisms,
                    "compatible": deck.compatible,
                    "distinct": deck.distinct,
                    "transitive": deck.transitive,
                    "base_point": deck.base_point,
                    "fiber": list(deck.fiber),
                    "witnesses": list(deck.witnesses),
                }
                ok = ok and deck.ok
            elif rep.galois_ok:
                result["deck"] = {"skipped": "cover is not connected"}
    elif args.galois is not None:
        ok = False
    return result, caveats, ok


def _dot(args, cfg):
    quiver, table = _load(args.file, cfg)
    lines = ["digraph quiver {"]
    if args.skeleton:
        classes = _classes(table, cfg, False)
        cx = build_complex(table, classes, max_dim=1)
        for c in cx.cells[0]:
            lines.append('  "%s";' % c.key)
        if cx.top_dim() >= 1:
            cl = cx.classes
            for c in cx.cells[1]:
                cid = c.key[0]
                lines.append('  "%s" -> "%s" [label="%s"];'
                             % (cl.class_source[cid], cl.class_target[cid],
                                c.witness))
    else:
        for v in quiver.vertices:
            lines.append('  "%s";' % v)
        for a in quiver.arrows:
            lines.append('  "%s" -> "%s" [label="%s"];'
                         % (a.source, a.target, a.name))
    lines.append("}")
    return "\n".join(lines) + "\n"


def _input_echo(args):
    if args.command == "cover":
        echo = {"base": args.base, "cover": args.cover,
                "morphism": args.morphism}
        if args.galois is not None:
            echo["group"] = args.galois
        return echo
    quiver = parse(_read(args.file))
    return {"file": args.file, "vertices": len(quiver.vertices),
            "arrows": len(quiver.arrows),
            "relations": len(quiver.relations)}


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        if args.command == "dot":
            _emit(_dot(args, cfg), args.out)
            return 0
        result, caveats, ok = _dispatch(args, cfg)
        doc = {
            "schema": _SCHEMA,
            "tool": {"name": "bqtop", "version": __version__},
            "command": args.command,
            "input": _input_echo(args),
            "config": {k: v for k, v in sorted(cfg.items())},
            "ok": ok,
            "result": result,
            "caveats": sorted(set(caveats)),
        }
        _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
        return 0 if ok else 1
    except ParseError as e:
        print("bqtop: syntax error: %s" % e, file=sys.stderr)
        return 2
    except (QuiverError, NoSemiNormedBasis, NotGalois) as e:
        print("bqtop: %s" % e, file=sys.stderr)
        return 2
    except OSError as e:
        print("bqtop: %s" % e, file=sys.stderr)
        return 2
    except ValueError as e:
        print("bqtop: %s" % e, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
