"""Line-oriented scene files describing monoids, maps, charts, complexes, actions and towers.

A scene is a sequence of blocks::

    monoid Q
      ambient 2
      gen 1 0
      gen 0 1
    end

Entities are built lazily on first use, so blocks may refer to blocks
defined later in the file.  The grammar is given in the README.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import groups as gp
from .errors import ValidationError
from .fibration import DescentDatum, KetPiece, Overlap, PolystableChart, c_global_coequalizer
from .monoid import AffineMonoid, Face, MonoidMap, face_poset, free_monoid, scalar_map
from .poly import lam
from .poly.complex import (Coequalizer, Elem, PolyMorphism, PolysimplicialSet, box_product, glue,
                           identity_morphism, parse_complex, point, representable)
from .poly.graphs import banana, cycle, summand_map
from .tempered import (Connecting, GaloisActionDatum, TemperedTower, TowerLevel, build_tower,
                       good_tower, reduction_map, tate_tower)

KINDS = ("monoid", "map", "chart", "piece", "descent", "complex", "group", "action", "tower")


class SceneError(ValidationError):
    """A scene file does not parse or does not resolve."""


@dataclass
class Block:
    kind: str
    name: str
    line: int
    entries: list[tuple[int, list[str]]] = field(default_factory=list)

    def where(self, lineno: int | None = None) -> str:
        return f"{self.kind} {self.name} (line {lineno or self.line})"

    def get(self, key: str) -> list[tuple[int, list[str]]]:
        return [(n, e[1:]) for n, e in self.entries if e[0] == key]

    def one(self, key: str, required: bool = True):
        found = self.get(key)
        if len(found) > 1:
            raise SceneError(f"{self.where(found[1][0])}: {key!r} given twice")
        if not found:
            if required:
                raise SceneError(f"{self.where()}: missing {key!r}")
            return None
        return found[0]


def parse_blocks(text: str) -> dict[str, Block]:
    blocks: dict[str, Block] = {}
    cur: Block | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if cur is None:
            if toks[0] not in KINDS or len(toks) != 2:
                raise SceneError(f"line {lineno}: expected '<kind> <name>' with kind in {', '.join(KINDS)}")
            if toks[1] in blocks:
                raise SceneError(f"line {lineno}: name {toks[1]!r} already defined")
            cur = Block(toks[0], toks[1], lineno)
        elif toks == ["end"]:
            blocks[cur.name] = cur
            cur = None
        else:
            cur.entries.append((lineno, toks))
    if cur is not None:
        raise SceneError(f"{cur.where()}: block is not closed by 'end'")
    return blocks


def _ints(args, block: Block, lineno: int) -> tuple[int, ...]:
    try:
        return tuple(int(a) for a in args)
    except ValueError as exc:
        raise SceneError(f"{block.where(lineno)}: expected integers, got {' '.join(args)}") from exc


def _type(s: str, block: Block, lineno: int):
    try:
        return lam.check_object(tuple(int(v) for v in s.split(".")))
    except ValueError as exc:
        raise SceneError(f"{block.where(lineno)}: bad cell type {s!r}") from exc


def _morphism(s: str, block: Block, lineno: int):
    try:
        return lam.parse_morphism(s)
    except (ValueError, IndexError) as exc:
        raise SceneError(f"{block.where(lineno)}: bad Lambda morphism {s!r}: {exc}") from exc


class Scene:
    def __init__(self, text: str):
        self.blocks = parse_blocks(text)
        self._cache: dict[str, object] = {}
        self._busy: set[str] = set()

    @classmethod
    def from_path(cls, path: str) -> Scene:
        with open(path, encoding="utf-8") as fh:
            return cls(fh.read())

    def names(self, kind: str) -> list[str]:
        return [b.name for b in self.blocks.values() if b.kind == kind]

    def block(self, name: str, kind: str | tuple[str, ...]) -> Block:
        kinds = (kind,) if isinstance(kind, str) else kind
        b = self.blocks.get(name)
        if b is None:
            raise SceneError(f"unknown reference {name!r} (expected {' or '.join(kinds)})")
        if b.kind not in kinds:
            raise SceneError(f"{name!r} is a {b.kind}, expected {' or '.join(kinds)}")
        return b

    def _get(self, name: str, kind, builder):
        b = self.block(name, kind)
        if name in self._cache:
            return self._cache[name]
        if name in self._busy:
            raise SceneError(f"{b.where()}: circular reference")
        self._busy.add(name)
        try:
            value = builder(b)
        except SceneError:
            raise
        except ValidationError as exc:
            raise SceneError(f"{b.where()}: {exc}") from exc
        finally:
            self._busy.discard(name)
        self._cache[name] = value
        return value

    # -- monoids and maps -------------------------------------------------------

    def monoid(self, name: str) -> AffineMonoid:
        return self._get(name, "monoid", self._build_monoid)

    def _build_monoid(self, b: Block) -> AffineMonoid:
        free = b.one("free", required=False)
        if free:
            (n,) = _ints(free[1], b, free[0])
            return free_monoid(n)
        ln, args = b.one("ambient")
        (d,) = _ints(args, b, ln)
        gens = [_ints(args, b, ln) for ln, args in b.get("gen")]
        for g in gens:
            if len(g) != d:
                raise SceneError(f"{b.where()}: generator {g} is not in Z^{d}")
        return AffineMonoid(d, tuple(gens))

    def map(self, name: str) -> MonoidMap:
        return self._get(name, "map", self._build_map)

    def _build_map(self, b: Block) -> MonoidMap:
        src = self.monoid(b.one("source")[1][0])
        scal = b.one("scalar", required=False)
        if scal:
            (n,) = _ints(scal[1], b, scal[0])
            return scalar_map(src, n)
        tgt = self.monoid(b.one("target")[1][0])
        rows = [_ints(args, b, ln) for ln, args in b.get("row")]
        if not rows and tgt.ambient_dim:
            raise SceneError(f"{b.where()}: a map needs one 'row' per target coordinate")
        return MonoidMap(src, tgt, tuple(rows))

    # -- charts, pieces, descent --------------------------------------------------

    def chart(self, name: str) -> PolystableChart:
        return self._get(name, "chart", self._build_chart)

    def _build_chart(self, b: Block) -> PolystableChart:
        base = self.monoid(b.one("base")[1][0])
        blocks = []
        for ln, args in b.get("block"):
            v = _ints(args, b, ln)
            if len(v) != base.ambient_dim + 1:
                raise SceneError(f"{b.where(ln)}: 'block n a...' needs {base.ambient_dim} coordinates for a")
            blocks.append((v[0], v[1:]))
        return PolystableChart(base, tuple(blocks))

    def piece(self, name: str) -> KetPiece:
        return self._get(name, "piece", self._build_piece)

    def _build_piece(self, b: Block) -> KetPiece:
        charts = tuple(self.chart(args[0]) for _, args in b.get("chart"))
        cov = b.one("covering", required=False)
        pr = b.one("primes", required=False)
        return KetPiece(charts, self.map(cov[1][0]) if cov else None,
                        _ints(pr[1], b, pr[0]) if pr else None)

    def descent(self, name: str) -> DescentDatum:
        return self._get(name, "descent", self._build_descent)

    def _build_descent(self, b: Block) -> DescentDatum:
        pieces = tuple(self.piece(args[0]) for _, args in b.get("piece"))
        overlaps = []
        for ln, args in b.get("overlap"):
            if len(args) != 5:
                raise SceneError(f"{b.where(ln)}: expected 'overlap i j piece phi psi'")
            i, j = _ints(args[:2], b, ln)
            overlaps.append(Overlap(i, j, self.piece(args[2]), _morphism(args[3], b, ln),
                                    _morphism(args[4], b, ln)))
        return DescentDatum(pieces, tuple(overlaps))

    # -- complexes ------------------------------------------------------------------

    def glued(self, name: str) -> Coequalizer | None:
        value = self._get(name, "complex", self._build_complex)
        return value if isinstance(value, Coequalizer) else None

    def complex(self, name: str) -> PolysimplicialSet:
        value = self._get(name, "complex", self._build_complex)
        return value.quotient if isinstance(value, Coequalizer) else value

    def _build_complex(self, b: Block):
        kinds = {k for _, (k, *_) in b.entries}
        if "builtin" in kinds:
            ln, args = b.one("builtin")
            kind, rest = args[0], args[1:]
            if kind == "point":
                return point()
            if kind == "representable":
                return representable(_type(rest[0], b, ln))
            if kind == "loop":
                return cycle(1)
            if kind == "cycle":
                return cycle(_ints(rest, b, ln)[0])
            if kind == "banana":
                return banana(_ints(rest, b, ln)[0])
            if kind == "theta":
                return banana(3)
            raise SceneError(f"{b.where(ln)}: unknown builtin complex {kind!r}")
        if "summand" in kinds:
            types = [_type(args[0], b, ln) for ln, args in b.get("summand")]
            rels = []
            for ln, args in b.get("relation"):
                if len(args) != 4:
                    raise SceneError(f"{b.where(ln)}: expected 'relation i phi j psi'")
                rels.append((int(args[0]), _morphism(args[1], b, ln), int(args[2]),
                             _morphism(args[3], b, ln)))
            return glue(types, rels)
        if "descent" in kinds:
            ln, args = b.one("descent")
            d = self.descent(args[0])
            face = b.one("face", required=False)
            F = parse_face(d.base, face[1][0]) if face else None
            return c_global_coequalizer(d, F)
        if "box" in kinds:
            ln, args = b.one("box")
            if len(args) != 2:
                raise SceneError(f"{b.where(ln)}: expected 'box A B'")
            return box_product(self.complex(args[0]), self.complex(args[1]))
        if "cell" in kinds:
            text = "\n".join(" ".join(e) for _, e in b.entries)
            return parse_complex(text)
        raise SceneError(f"{b.where()}: no builtin, summand, descent, box or cell records")

    # -- groups, actions, towers --------------------------------------------------------

    def group(self, name: str) -> gp.PermGroup:
        return self._get(name, "group", self._build_group)

    def _build_group(self, b: Block) -> gp.PermGroup:
        cyc = b.one("cyclic", required=False)
        if cyc:
            return gp.cyclic_product(_ints(cyc[1], b, cyc[0]))
        ln, args = b.one("degree")
        (d,) = _ints(args, b, ln)
        names, perms = [], []
        for ln, args in b.get("gen"):
            names.append(args[0])
            perms.append(_ints(args[1:], b, ln))
        return gp.PermGroup(d, perms, names)

    def action(self, name: str) -> tuple[GaloisActionDatum, int | None]:
        return self._get(name, "action", self._build_action)

    def _build_action(self, b: Block):
        G = self.group(b.one("group")[1][0])
        cname = b.one("complex")[1][0]
        C, q = self.complex(cname), self.glued(cname)
        by_name = {}
        for ln, args in b.get("gen"):
            if len(args) < 2:
                raise SceneError(f"{b.where(ln)}: expected 'gen NAME identity' or 'gen NAME summands s...'")
            if args[1] == "identity":
                by_name[args[0]] = identity_morphism(C)
            elif args[1] == "summands":
                if q is None:
                    raise SceneError(f"{b.where(ln)}: summand actions need a glued complex")
                by_name[args[0]] = summand_map(q, q, _ints(args[2:], b, ln))
            else:
                raise SceneError(f"{b.where(ln)}: unknown action form {args[1]!r}")
        missing = [n for n in G.names if n not in by_name]
        if missing:
            raise SceneError(f"{b.where()}: no action given for generators {missing}")
        bp = b.one("basepoint", required=False)
        return GaloisActionDatum(G, C, [by_name[n] for n in G.names]), (
            _ints(bp[1], b, bp[0])[0] if bp else None)

    def tower(self, name: str) -> TemperedTower:
        return self._get(name, "tower", self._build_tower)

    def _build_tower(self, b: Block) -> TemperedTower:
        bi = b.one("builtin", required=False)
        if bi:
            kind, ms = bi[1][0], _ints(bi[1][1:], b, bi[0])
            if kind == "tate":
                return tate_tower(ms)
            if kind == "good":
                return good_tower(ms)
            raise SceneError(f"{b.where(bi[0])}: unknown builtin tower {kind!r}")
        levels, glued = [], []
        for _, args in b.get("level"):
            act, bp = self.action(args[0])
            levels.append(TowerLevel(args[0], act, bp))
            glued.append(self.glued(self.block(args[0], "action").one("complex")[1][0]))
        conns = b.get("connect")
        if len(conns) != len(levels) - 1:
            raise SceneError(f"{b.where()}: one 'connect' line between consecutive levels")
        out = []
        for k, (ln, args) in enumerate(conns):
            lo, hi = levels[k], levels[k + 1]
            qmap = reduction_map(hi.action.group, lo.action.group)
            if args[0] == "identity":
                F = identity_morphism(hi.action.complex)
            elif args[0] == "collapse":
                F = to_point(hi.action.complex)
            elif args[0] == "summands":
                if glued[k] is None or glued[k + 1] is None:
                    raise SceneError(f"{b.where(ln)}: summand maps need glued complexes")
                F = summand_map(glued[k + 1], glued[k], _ints(args[1:], b, ln))
            else:
                raise SceneError(f"{b.where(ln)}: unknown connecting map {args[0]!r}")
            out.append(Connecting(F, qmap))
        return build_tower(levels, out)


def to_point(C: PolysimplicialSet) -> PolyMorphism:
    return PolyMorphism(C, point(), tuple(Elem(0, t, ()) for t in C.types))


def parse_face(P: AffineMonoid, spec: str) -> Face:
    """'closed', 'open', '-' (no generators) or comma-separated generator indices."""
    fp = face_poset(P)
    if spec == "closed":
        return fp.bottom
    if spec == "open":
        return fp.top
    idx = frozenset() if spec == "-" else frozenset(int(v) for v in spec.split(","))
    return Face(P, idx)
