"""Command line front end.

Exit status: 0 on success, 2 on invalid input, 3 when a bounded search
stays undecided.
"""
from __future__ import annotations

import argparse
import os
import sys
from typing import Callable

from . import __version__
from . import dot
from . import groups as gp
from .errors import CommutingSquareError, ResourceExhausted, UnsupportedInput, ValidationError
from .fibration import c_global_coequalizer, cospecialize_c, structure_map
from .monoid import classify_map, face_poset, saturate, units
from .pi1 import fundamental_group, h1_rank, two_skeleton
from .poly.complex import (cell_counts, cell_poset, enumerate_morphisms, euler_characteristic,
                           is_interiorly_free, poset_map)
from .scene import Scene, parse_face, to_point
from .strata import cospecialize_strata
from .tempered import cospecialize_tower, lift_extension, presentation_hash

EXIT_OK, EXIT_INVALID, EXIT_UNDECIDED = 0, 2, 3


class Undecided(Exception):
    pass


class Output:
    """Collects report lines and artifact files for one command."""

    def __init__(self, out_dir: str | None, stem: str):
        self.out_dir, self.stem = out_dir, stem
        self.lines: list[str] = []
        self.files: dict[str, str] = {}

    def kv(self, key: str, value) -> None:
        self.lines.append(f"{key}: {_fmt(value)}")

    def artifact(self, suffix: str, text: str) -> None:
        self.files[f"{self.stem}{suffix}"] = text

    def flush(self, stream) -> None:
        report = "\n".join(self.lines) + "\n"
        stream.write(report)
        if self.out_dir:
            os.makedirs(self.out_dir, exist_ok=True)
            self.files[f"{self.stem}.txt"] = report
            for name, text in sorted(self.files.items()):
                with open(os.path.join(self.out_dir, name), "w", encoding="utf-8") as fh:
                    fh.write(text)


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    if isinstance(v, (list, tuple)):
        return " ".join(_fmt(x) for x in v) if v else "-"
    return str(v)


def _vec(v) -> str:
    return "(" + ",".join(map(str, v)) + ")"


# -- commands ----------------------------------------------------------------------

def cmd_monoid_analyze(scene: Scene, args, out: Output):
    P = scene.monoid(args.id)
    out.kv("ambient", P.ambient_dim)
    out.kv("rank", P.rank)
    out.kv("generators", [_vec(g) for g in P.generators])
    out.kv("sharp", P.is_sharp)
    out.kv("saturated", P.is_saturated)
    out.kv("unit_rank", units(P).rank)
    out.kv("hilbert_basis_of_saturation", [_vec(g) for g in saturate(P).generators])
    fp = face_poset(P)
    out.kv("faces", len(fp))
    for i, F in enumerate(fp.faces):
        out.kv(f"face {i}", F.label())
    out.artifact(".dot", dot.poset_dot(f"faces_{args.id}", [F.label() for F in fp.faces], fp.order))


def cmd_map_classify(scene: Scene, args, out: Output):
    h = scene.map(args.id)
    primes = [int(p) for p in args.primes.split(",")] if args.primes else None
    c = classify_map(h, args.bound, primes)
    out.kv("bound", c.bound)
    out.kv("local", c.local)
    out.kv("kummer", c.kummer)
    if c.primes is not None:
        out.kv("l_kummer", c.l_kummer)
        out.kv("primes", list(c.primes))
    for key in ("exact", "integral", "saturated"):
        v = getattr(c, key)
        out.kv(key, "undecided" if v.holds is None else v.holds)
        if v.witness is not None:
            out.kv(f"{key}_witness", _witness(key, v.witness))
    if any(getattr(c, k).undecided for k in ("exact", "integral", "saturated")):
        raise Undecided(f"undecided at bound {c.bound}")


def _witness(key: str, w) -> str:
    if key == "saturated" and len(w) == 3:
        a, b, p = w
        return f"a={_vec(a)} b={_vec(b)} p={p}"
    if key == "integral" and len(w) == 3:
        return " ".join(f"{n}={_vec(x)}" for n, x in zip(("q", "p1", "p2"), w))
    if all(isinstance(x, int) for x in w):
        return _vec(w)
    return " ".join(_vec(x) if isinstance(x, tuple) else str(x) for x in w)


def cmd_poly(scene: Scene, args, out: Output):
    C = scene.complex(args.id)
    if args.what == "o-poset":
        O = cell_poset(C)
        out.kv("classes", len(O))
        for i, lab in enumerate(O.labels):
            out.kv(f"class {i}", lab)
        out.kv("relations", [f"{a}<{b}" for a, b in O.relations()])
        out.artifact(".dot", dot.poset_dot(f"O_{args.id}", O.labels, O.leq))
    elif args.what == "interior-free":
        out.kv("interiorly_free", is_interiorly_free(C))
    else:
        sk = two_skeleton(C)
        out.kv("cells", len(C))
        out.kv("cell_types", [f"{'.'.join(map(str, t))}x{n}" for t, n in sorted(cell_counts(C).items())])
        out.kv("dimension", C.dimension())
        out.kv("euler_characteristic", euler_characteristic(C))
        out.kv("subdivision_vertices", len(sk.vertices))
        out.kv("subdivision_edges", len(sk.edges))
        out.kv("subdivision_triangles", len(sk.triangles))
        out.artifact(".complex", C.text())
        out.artifact(".dot", dot.complex_dot(f"C_{args.id}", C))


def cmd_fibration_c(scene: Scene, args, out: Output):
    d = scene.descent(args.id)
    F = parse_face(d.base, args.face)
    q = c_global_coequalizer(d, F)
    C = q.quotient
    O = cell_poset(C)
    out.kv("face", F.label())
    out.kv("cells", len(C))
    out.kv("o_poset_size", len(O))
    out.kv("interiorly_free", is_interiorly_free(C))
    out.artifact(".complex", C.text())
    out.artifact(".dot", dot.poset_dot(f"O_{args.id}", O.labels, O.leq))


def cmd_strata_cospec(scene: Scene, args, out: Output):
    b = scene.block(args.family, ("chart", "descent"))
    if b.kind == "chart":
        charts = [scene.chart(args.family)]
    else:
        charts = [p.charts[0] for p in scene.descent(args.family).pieces]
    base = charts[0].base
    F1, F2 = parse_face(base, args.face1), parse_face(base, args.face2)
    out.kv("special_face", F1.label())
    out.kv("generic_face", F2.label())
    parts = []
    for k, c in enumerate(charts):
        m = cospecialize_strata(structure_map(c), F1, F2)
        out.kv(f"piece {k} source", m.source.labels())
        out.kv(f"piece {k} target", m.target.labels())
        out.kv(f"piece {k} map", list(m.mapping))
        parts.append(m)
    if b.kind == "descent":
        f = cospecialize_c(scene.descent(args.family), F1, F2)
        o = poset_map(f)
        out.kv("complex_map_on_classes", list(o))
        Os, Ot = cell_poset(f.source), cell_poset(f.target)
        out.artifact(".dot", dot.poset_map_dot(f"cospec_{args.family}", Os.labels, Os.leq,
                                               Ot.labels, Ot.leq, o))
    else:
        m = parts[0]
        out.artifact(".dot", dot.poset_map_dot(f"cospec_{args.family}", m.source.labels(),
                                               m.source.leq, m.target.labels(), m.target.leq,
                                               m.mapping))


def cmd_pi1(scene: Scene, args, out: Output):
    C = scene.complex(args.id)
    pi = fundamental_group(C)
    p = pi.presentation
    rank, tors = p.abelianization()
    out.kv("presentation", p.text())
    out.kv("generators", p.rank)
    out.kv("free", p.is_free())
    out.kv("abelianization_rank", rank)
    out.kv("abelianization_torsion", list(tors))
    out.kv("h1_rank", h1_rank(C))
    out.artifact(".presentation", p.text() + "\n")


def cmd_tempered(scene: Scene, args, out: Output):
    if args.what == "lift":
        (name,) = _arity(args.ids, 1)
        act, bp = scene.action(name)
        e = lift_extension(act.complex, act, bp)
        _extension_report(out, "", e)
        out.artifact(".presentation", e.text() + "\n")
    elif args.what == "tower":
        (name,) = _arity(args.ids, 1)
        t = scene.tower(name)
        out.kv("levels", len(t.levels))
        for lv, order, krank, h in t.report():
            out.kv(f"level {lv}", f"order={order} kernel_rank={krank} hash={h}")
        for lv, e in zip(t.levels, t.extensions):
            out.kv(f"presentation {lv.name}", e.text())
        for i, h in enumerate(t.homs):
            out.kv(f"connecting {i}", [gp.word_text(w, h.target.presentation.generators) for w in h.images])
    else:
        n1, n2 = _arity(args.ids, 2)
        t1, t2 = scene.tower(n1), scene.tower(n2)
        maps = []
        for i, (a, b) in enumerate(zip(t1.levels, t2.levels)):
            maps.append(_equivariant_map(a.action, b.action, i))
        c = cospecialize_tower(t1, t2, maps)
        for i, (h, iso) in enumerate(zip(c.homs, c.isomorphisms)):
            out.kv(f"level {i}", [gp.word_text(w, h.target.presentation.generators) for w in h.images])
            out.kv(f"level {i} isomorphism", iso)


def _equivariant_map(a1, a2, level):
    """Some equivariant complex map between matched levels, for identical groups."""
    from .poly.complex import morphism_is_iso
    C, D = a1.complex, a2.complex
    if len(D) == 1:
        return to_point(C)
    first = None
    for F in enumerate_morphisms(C, D, limit=200_000):
        ok = all(a1.generators[k].then(F).images == F.then(a2.morphism(s)).images
                 for k, s in enumerate(a1.group.generators))
        if ok:
            if morphism_is_iso(F):
                return F
            first = first or F
    if first is None:
        raise CommutingSquareError("no equivariant map of complexes exists", level)
    return first


def _extension_report(out: Output, prefix: str, e):
    rank, tors = e.presentation.abelianization()
    out.kv(f"{prefix}group_order", e.group.order)
    out.kv(f"{prefix}kernel_rank", e.kernel_rank)
    out.kv(f"{prefix}presentation", e.text())
    out.kv(f"{prefix}abelian", e.is_abelian())
    out.kv(f"{prefix}abelianization_rank", rank)
    out.kv(f"{prefix}abelianization_torsion", list(tors))
    out.kv(f"{prefix}hash", presentation_hash(e.presentation))


def _arity(ids, n):
    if len(ids) != n:
        raise ValidationError(f"expected {n} identifier(s), got {len(ids)}")
    return ids


# -- argument parsing -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="temperedkit", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scene", "-s", required=True, help="scene file")
    common.add_argument("--out-dir", "-o", default=None, help="directory for report and DOT files")
    common.add_argument("--bound", type=int, default=None, help="degree bound for bounded searches")
    common.add_argument("--primes", default=None, help="comma-separated primes for L-Kummer checks")
    common.add_argument("--seed", type=int, default=0, help="accepted for reproducibility; no step is random")
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("monoid").add_subparsers(dest="action", required=True)
    a = m.add_parser("analyze", parents=[common])
    a.add_argument("id")
    a.set_defaults(run=cmd_monoid_analyze, stem=lambda ns: f"monoid-{ns.id}")

    mp = sub.add_parser("map").add_subparsers(dest="action", required=True)
    a = mp.add_parser("classify", parents=[common])
    a.add_argument("id")
    a.set_defaults(run=cmd_map_classify, stem=lambda ns: f"map-{ns.id}")

    a = sub.add_parser("poly", parents=[common])
    a.add_argument("what", choices=["o-poset", "interior-free", "realize"])
    a.add_argument("id")
    a.set_defaults(run=cmd_poly, stem=lambda ns: f"poly-{ns.what}-{ns.id}")

    fb = sub.add_parser("fibration").add_subparsers(dest="action", required=True)
    a = fb.add_parser("c", parents=[common])
    a.add_argument("id")
    a.add_argument("--face", default="closed", help="base face: closed, open, - or generator indices")
    a.set_defaults(run=cmd_fibration_c, stem=lambda ns: f"fibration-{ns.id}")

    st = sub.add_parser("strata").add_subparsers(dest="action", required=True)
    a = st.add_parser("cospec", parents=[common])
    a.add_argument("family")
    a.add_argument("face1", help="the special base face")
    a.add_argument("face2", help="the generic base face, containing face1")
    a.set_defaults(run=cmd_strata_cospec, stem=lambda ns: f"strata-{ns.family}")

    a = sub.add_parser("pi1", parents=[common])
    a.add_argument("id")
    a.set_defaults(run=cmd_pi1, stem=lambda ns: f"pi1-{ns.id}")

    a = sub.add_parser("tempered", parents=[common])
    a.add_argument("what", choices=["lift", "tower", "cospec"])
    a.add_argument("ids", nargs="+")
    a.set_defaults(run=cmd_tempered, stem=lambda ns: f"tempered-{ns.what}-{'-'.join(ns.ids)}")
    return p


def main(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ns = build_parser().parse_args(argv)
    run: Callable = ns.run
    out = Output(ns.out_dir, ns.stem(ns))
    try:
        scene = Scene.from_path(ns.scene)
        run(scene, ns, out)
    except Undecided as exc:
        out.kv("status", str(exc))
        out.flush(stdout)
        return EXIT_UNDECIDED
    except ResourceExhausted as exc:
        stderr.write(f"undecided: {exc}\n")
        return EXIT_UNDECIDED
    except (ValidationError, UnsupportedInput, OSError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    out.flush(stdout)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
