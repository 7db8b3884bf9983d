"""The line-oriented document format.

A document is a sequence of named blocks.  Each block starts with a header
line, continues with entry lines and ends with ``end``; ``#`` starts a
comment.  Blocks may only refer to blocks defined above them.  Identity
group elements are index 0 and ``comp g f h`` means ``g∘f = h``.  The full
grammar is in ``docs/format.md``.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from ..algebra.categories import CatFunctor, FinCategory, GCatAction
from ..algebra.functors import CAT, SSET, FunctorData, GFunctorMorphism, RightGFunctor
from ..algebra.groups import FinGroup
from ..errors import FormatError
from ..simplicial.sset import (
    DEFAULT_TOP, INDEX, GSSet, SimplicialMap, TruncatedSSet, boundary_simplex, constant, empty, point,
    standard_simplex,
)

KINDS = ("group", "category", "gaction", "sset", "map", "functor", "eta")


class DocumentError(FormatError):
    """A syntax or reference error, located by line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


@dataclass
class Block:
    kind: str
    name: str
    value: object
    refs: dict = field(default_factory=dict)
    provenance: str = ""
    line: int = 0


@dataclass
class Document:
    blocks: list[Block] = field(default_factory=list)
    top: int = DEFAULT_TOP

    def _index(self) -> dict[str, Block]:
        return {b.name: b for b in self.blocks if b.kind != "eta"}

    def __contains__(self, name: str) -> bool:
        return name in self._index()

    def block(self, name: str, kinds=None, line: int = 0) -> Block:
        b = self._index().get(name)
        if b is None:
            raise DocumentError(line, f"reference to undefined block {name!r}")
        if kinds is not None and b.kind not in kinds:
            raise DocumentError(line, f"{name!r} is a {b.kind} block, expected {' or '.join(kinds)}")
        return b

    def get(self, name: str, kinds=None):
        return self.block(name, kinds).value

    def of_kind(self, kind: str, subkind: str | None = None) -> list[Block]:
        return [b for b in self.blocks if b.kind == kind and (subkind is None or b.refs.get("sub") == subkind)]

    def name_of(self, value) -> str | None:
        for b in self.blocks:
            if b.value is value and b.kind != "eta":
                return b.name
        return None

    def add(self, block: Block) -> None:
        if block.kind != "eta" and block.name in self:
            raise DocumentError(block.line, f"block name {block.name!r} is already used")
        self.blocks.append(block)

    def fresh_name(self, stem: str) -> str:
        if stem not in self:
            return stem
        k = 2
        while f"{stem}_{k}" in self:
            k += 1
        return f"{stem}_{k}"

    def digest(self) -> str:
        return hashlib.sha256(serialize(self).encode()).hexdigest()[:16]

    def same_as(self, other: "Document") -> bool:
        if len(self.blocks) != len(other.blocks):
            return False
        return all(_same_block(a, b) for a, b in zip(self.blocks, other.blocks))


# -- structural equality ------------------------------------------------------

def _same_arrays(xs, ys) -> bool:
    return len(xs) == len(ys) and all(np.array_equal(a, b) for a, b in zip(xs, ys))


def _same_sset(a, b) -> bool:
    sa = a.space if isinstance(a, GSSet) else a
    sb = b.space if isinstance(b, GSSet) else b
    if isinstance(a, GSSet) != isinstance(b, GSSet) or not sa.same_tables(sb):
        return False
    if isinstance(a, GSSet):
        return a.group.same_as(b.group) and all(_same_arrays(x, y) for x, y in zip(a.action, b.action))
    return True


def _same_block(a: Block, b: Block) -> bool:
    if (a.kind, a.name, a.provenance) != (b.kind, b.name, b.provenance):
        return False
    va, vb = a.value, b.value
    if a.kind in ("group", "category"):
        return va.same_as(vb)
    if a.kind == "gaction":
        return va.category.same_as(vb.category) and va.obj_perm == vb.obj_perm and va.mor_perm == vb.mor_perm
    if a.kind == "sset":
        return _same_sset(va, vb)
    if a.kind == "map" and isinstance(va, SimplicialMap):
        return isinstance(vb, SimplicialMap) and _same_arrays(va.maps, vb.maps) and a.refs == b.refs
    if a.kind == "functor" and isinstance(va, CatFunctor):
        return isinstance(vb, CatFunctor) and va.same_as(vb) and a.refs == b.refs
    return a.refs == b.refs


# -- parsing --------------------------------------------------------------------

def _ints(tokens, line: int, what: str) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise DocumentError(line, f"{what} must be integers, got {' '.join(tokens)!r}") from None


def _arity(tokens, n: int, line: int, at_least: bool = False) -> None:
    ok = len(tokens) >= n if at_least else len(tokens) == n
    if not ok:
        want = f"at least {n - 1}" if at_least else str(n - 1)
        raise DocumentError(line, f"{tokens[0]!r} takes {want} argument(s), got {len(tokens) - 1}")


def _lines(text: str):
    """Yield ``(line number, tokens)`` for every non-empty line."""
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield no, body.split()


def parse(text: str, top: int = DEFAULT_TOP) -> Document:
    doc = Document(top=top)
    header = None
    entries: list[tuple[int, list[str]]] = []
    for no, tokens in _lines(text):
        if header is None:
            if tokens[0] not in KINDS:
                raise DocumentError(no, f"unknown block keyword {tokens[0]!r}")
            if len(tokens) < 2:
                raise DocumentError(no, f"{tokens[0]} block needs a name")
            header, entries = (no, tokens), []
        elif tokens == ["end"]:
            _build_block(doc, header[0], header[1], entries)
            header = None
        else:
            entries.append((no, tokens))
    if header is not None:
        raise DocumentError(header[0], f"{header[1][0]} block {header[1][1]!r} is missing 'end'")
    _finish(doc)
    return doc


def _split_header(tokens: list[str]) -> tuple[list[str], str]:
    if "via" in tokens:
        k = tokens.index("via")
        return tokens[:k], " ".join(tokens[k + 1:])
    return tokens, ""


def _build_block(doc: Document, line: int, header: list[str], entries) -> None:
    head, provenance = _split_header(header)
    kind, name, rest = head[0], head[1], head[2:]
    builder = {
        "group": _parse_group, "category": _parse_category, "gaction": _parse_gaction,
        "sset": _parse_sset, "map": _parse_map, "functor": _parse_functor, "eta": _parse_eta,
    }[kind]
    try:
        block = builder(doc, line, name, rest, entries)
    except DocumentError:
        raise
    except (FormatError, ValueError, IndexError) as exc:
        raise DocumentError(line, f"{kind} {name}: {exc}") from None
    block.provenance = provenance
    block.line = line
    doc.add(block)


def _keywords(entries, allowed: set[str], kind: str):
    for no, tokens in entries:
        if tokens[0] not in allowed:
            raise DocumentError(no, f"unknown {kind} entry {tokens[0]!r}")


def _parse_group(doc, line, name, rest, entries) -> Block:
    _keywords(entries, {"cyclic", "symmetric", "dihedral", "trivial", "product", "row"}, "group")
    rows = [(no, _ints(t[1:], no, "table entries")) for no, t in entries if t[0] == "row"]
    shorthand = [(no, t) for no, t in entries if t[0] != "row"]
    if rows and shorthand:
        raise DocumentError(shorthand[0][0], "give either table rows or one shorthand, not both")
    if len(shorthand) > 1:
        raise DocumentError(shorthand[1][0], "only one group shorthand per block")
    if shorthand:
        no, t = shorthand[0]
        if t[0] == "trivial":
            _arity(t, 1, no)
            g = FinGroup.trivial()
        elif t[0] == "product":
            _arity(t, 3, no)
            g = FinGroup.direct_product(doc.get(t[1], ("group",)), doc.get(t[2], ("group",)))
        else:
            _arity(t, 2, no)
            g = getattr(FinGroup, t[0])(_ints(t[1:], no, "group size")[0])
    elif rows:
        g = FinGroup(tuple(tuple(r) for _no, r in rows))
    else:
        raise DocumentError(line, f"group {name} has no entries")
    return Block("group", name, g)


def _thin_lookup(src, tgt) -> dict | None:
    pairs = {}
    for f, st in enumerate(zip(src, tgt)):
        if st in pairs:
            return None
        pairs[st] = f
    return pairs


def _parse_category(doc, line, name, rest, entries) -> Block:
    _keywords(entries, {"objects", "arrow", "identity", "comp", "thin", "relation", "ordinal", "discrete",
                        "group"}, "category")
    short = [(no, t) for no, t in entries if t[0] in ("ordinal", "discrete", "group")]
    rel = [(no, t) for no, t in entries if t[0] == "relation"]
    objs = [(no, t) for no, t in entries if t[0] == "objects"]
    if short:
        no, t = short[0]
        _arity(t, 2, no)
        if len(entries) > 1:
            raise DocumentError(entries[1][0], f"{t[0]} is a complete description; no other entries allowed")
        if t[0] == "group":
            cat = FinCategory.one_object(doc.get(t[1], ("group",)))
        else:
            cat = getattr(FinCategory, t[0])(_ints(t[1:], no, "size")[0])
        return Block("category", name, cat)
    if len(objs) != 1:
        raise DocumentError(line, f"category {name} needs exactly one 'objects' entry")
    no, t = objs[0]
    _arity(t, 2, no)
    n = _ints(t[1:], no, "object count")[0]
    if rel:
        if any(t[0] not in ("objects", "relation") for _no, t in entries):
            raise DocumentError(line, "a category given by 'relation' entries takes no other entries")
        pairs = []
        for no, t in rel:
            _arity(t, 3, no)
            pairs.append(tuple(_ints(t[1:], no, "objects")))
        return Block("category", name, FinCategory.from_preorder(n, pairs))
    idents = {}
    for no, t in entries:
        if t[0] == "identity":
            _arity(t, 3, no)
            x, f = _ints(t[1:], no, "identity entry")
            idents[x] = f
    if idents and sorted(idents) != list(range(n)):
        raise DocumentError(line, f"identity entries must cover objects 0..{n - 1}")
    ident = tuple(idents[x] for x in range(n)) if idents else tuple(range(n))
    ends = {f: (x, x) for x, f in enumerate(ident)}
    for no, t in entries:
        if t[0] == "arrow":
            _arity(t, 4, no)
            f, s, tg = _ints(t[1:], no, "arrow entry")
            if f in ends:
                raise DocumentError(no, f"morphism id {f} is used twice")
            ends[f] = (s, tg)
    m = len(ends)
    if sorted(ends) != list(range(m)):
        missing = sorted(set(range(max(ends) + 1)) - set(ends)) if ends else []
        raise DocumentError(line, f"morphism ids must be 0..{m - 1}; missing {missing}")
    src = tuple(ends[f][0] for f in range(m))
    tgt = tuple(ends[f][1] for f in range(m))
    comp = {}
    idset = set(ident)
    for f in range(m):
        comp[(ident[tgt[f]], f)] = f
        comp[(f, ident[src[f]])] = f
    for no, t in entries:
        if t[0] == "comp":
            _arity(t, 4, no)
            g, f, h = _ints(t[1:], no, "comp entry")
            comp[(g, f)] = h
    if any(t[0] == "thin" for _no, t in entries):
        lookup = _thin_lookup(src, tgt)
        if lookup is None:
            raise DocumentError(line, "'thin' given but two morphisms share source and target")
        for g in range(m):
            for f in range(m):
                if src[g] == tgt[f] and (g, f) not in comp:
                    h = lookup.get((src[f], tgt[g]))
                    if h is None:
                        raise DocumentError(line, f"thin category lacks a morphism {src[f]} -> {tgt[g]}")
                    comp[(g, f)] = h
    for g in range(m):
        for f in range(m):
            if src[g] == tgt[f] and (g, f) not in comp and g not in idset and f not in idset:
                raise DocumentError(line, f"missing 'comp {g} {f} h' for composable morphisms {g} and {f}")
    return Block("category", name, FinCategory(n, src, tgt, ident, comp))


def _on_by(rest, line, words=("on", "by")) -> list[str]:
    if len(rest) != 2 * len(words) or any(rest[2 * k] != w for k, w in enumerate(words)):
        raise DocumentError(line, "header must read '" + " ".join(f"{w} NAME" for w in words) + "'")
    return [rest[2 * k + 1] for k in range(len(words))]


def _infer_thin_mor_perm(cat: FinCategory, perm) -> tuple[int, ...] | None:
    lookup = _thin_lookup(cat.src, cat.tgt)
    if lookup is None:
        return None
    return tuple(lookup.get((perm[cat.src[f]], perm[cat.tgt[f]]), -1) for f in cat.morphisms())


def _parse_gaction(doc, line, name, rest, entries) -> Block:
    cname, gname = _on_by(rest, line)
    cat = doc.get(cname, ("category",))
    group = doc.get(gname, ("group",))
    _keywords(entries, {"trivial", "objects", "morphisms"}, "gaction")
    if any(t[0] == "trivial" for _no, t in entries):
        return Block("gaction", name, GCatAction.trivial(group, cat), {"on": cname, "by": gname})
    obj = {0: tuple(cat.objects())}
    mor = {0: tuple(cat.morphisms())}
    for no, t in entries:
        _arity(t, 2, no, at_least=True)
        vals = _ints(t[1:], no, "permutation entries")
        g, perm = vals[0], tuple(vals[1:])
        (obj if t[0] == "objects" else mor)[g] = perm
    for g in group.elements():
        if g not in obj:
            raise DocumentError(line, f"gaction {name} gives no object permutation for element {g}")
        if g not in mor:
            inferred = _infer_thin_mor_perm(cat, obj[g])
            if inferred is None or -1 in inferred:
                raise DocumentError(line, f"gaction {name} gives no morphism permutation for element {g}")
            mor[g] = inferred
    act = GCatAction(group, cat, tuple(obj[g] for g in group.elements()), tuple(mor[g] for g in group.elements()))
    return Block("gaction", name, act, {"on": cname, "by": gname})


def _vertex_degeneracy(x: TruncatedSSet, v: int) -> list[int]:
    out = [v]
    for n in range(x.top):
        out.append(int(x.degens[n][0][out[-1]]))
    return out


def _parse_sset(doc, line, name, rest, entries) -> Block:
    gname = None
    if rest:
        if len(rest) != 2 or rest[0] != "by":
            raise DocumentError(line, "sset header must read 'sset NAME' or 'sset NAME by GROUP'")
        gname = rest[1]
    group = doc.get(gname, ("group",)) if gname else None
    _keywords(entries, {"top", "counts", "face", "degen", "act", "simplex", "boundary", "points", "point",
                        "empty"}, "sset")
    top = doc.top
    for no, t in entries:
        if t[0] == "top":
            _arity(t, 2, no)
            top = _ints(t[1:], no, "truncation")[0]
    short = [(no, t) for no, t in entries if t[0] in ("simplex", "boundary", "points", "point", "empty")]
    tables = [(no, t) for no, t in entries if t[0] in ("counts", "face", "degen")]
    if short and tables:
        raise DocumentError(tables[0][0], "give either a shorthand or tables, not both")
    if short:
        no, t = short[0]
        if t[0] in ("point", "empty"):
            _arity(t, 1, no)
            x = point(top) if t[0] == "point" else empty(top)
        else:
            _arity(t, 2, no)
            k = _ints(t[1:], no, "size")[0]
            x = {"simplex": standard_simplex, "boundary": boundary_simplex}[t[0]](k, top) if t[0] != "points" \
                else constant(list(range(k)), top)
    else:
        counts = None
        faces, degens = {}, {}
        for no, t in tables:
            if t[0] == "counts":
                counts = _ints(t[1:], no, "counts")
            else:
                _arity(t, 3, no, at_least=True)
                vals = _ints(t[1:], no, f"{t[0]} entries")
                (faces if t[0] == "face" else degens)[(vals[0], vals[1])] = np.asarray(vals[2:], dtype=INDEX)
        if counts is None:
            raise DocumentError(line, f"sset {name} needs 'counts' or a shorthand")
        if len(counts) != top + 1:
            raise DocumentError(line, f"sset {name}: {len(counts)} counts for truncation {top}")
        for n in range(1, top + 1):
            for i in range(n + 1):
                if (n, i) not in faces:
                    raise DocumentError(line, f"sset {name} is missing 'face {n} {i}'")
        for n in range(top):
            for i in range(n + 1):
                if (n, i) not in degens:
                    raise DocumentError(line, f"sset {name} is missing 'degen {n} {i}'")
        x = TruncatedSSet(
            top, tuple(counts),
            ((),) + tuple(tuple(faces[(n, i)] for i in range(n + 1)) for n in range(1, top + 1)),
            tuple(tuple(degens[(n, i)] for i in range(n + 1)) for n in range(top)) + ((),),
        )
    acts = [(no, t) for no, t in entries if t[0] == "act"]
    if acts and group is None:
        raise DocumentError(acts[0][0], "'act' entries need a 'by GROUP' header")
    if group is None:
        return Block("sset", name, x, {})
    table = {}
    for no, t in acts:
        _arity(t, 3, no, at_least=True)
        vals = _ints(t[1:], no, "act entries")
        table[(vals[0], vals[1])] = np.asarray(vals[2:], dtype=INDEX)
    discrete = short and short[0][1][0] in ("points", "point")
    rows = []
    for g in group.elements():
        row = []
        for n in range(top + 1):
            if g == 0:
                row.append(np.arange(x.counts[n], dtype=INDEX))
            elif (g, n) in table:
                row.append(table[(g, n)])
            elif not acts:
                row.append(np.arange(x.counts[n], dtype=INDEX))
            elif discrete and (g, 0) in table:
                row.append(table[(g, 0)])
            else:
                raise DocumentError(line, f"sset {name} is missing 'act {g} {n}'")
        rows.append(tuple(row))
    return Block("sset", name, GSSet(x, group, tuple(rows)), {"by": gname})


def _space(v) -> TruncatedSSet:
    return v.space if isinstance(v, GSSet) else v


def _parse_map(doc, line, name, rest, entries) -> Block:
    sname, tname = _on_by(rest, line, ("from", "to"))
    src = doc.block(sname, ("sset", "functor"), line)
    tgt = doc.block(tname, ("sset", "functor"), line)
    if src.kind != tgt.kind:
        raise DocumentError(line, "a map goes between two ssets or between two diagrams")
    refs = {"from": sname, "to": tname}
    if src.kind == "functor":
        _keywords(entries, {"at"}, "map")
        f, f2 = src.value, tgt.value
        if not isinstance(f, (RightGFunctor, _PendingDiagram)) or not isinstance(f2, (RightGFunctor, _PendingDiagram)):
            raise DocumentError(line, "diagram maps need two diagrams, not category functors")
        comps = {}
        for no, t in entries:
            _arity(t, 3, no)
            x = _ints(t[1:2], no, "object")[0]
            comps[x] = t[2]
        refs["at"] = comps
        return Block("map", name, None, refs)
    _keywords(entries, {"level", "constant", "identity"}, "map")
    x, y = _space(src.value), _space(tgt.value)
    levels = {}
    for no, t in entries:
        if t[0] == "identity":
            if not x.same_tables(y):
                raise DocumentError(no, "'identity' needs source and target to be the same sset")
            levels = {n: np.arange(x.counts[n], dtype=INDEX) for n in range(x.top + 1)}
        elif t[0] == "constant":
            _arity(t, 2, no)
            v = _ints(t[1:], no, "vertex")[0]
            ids = _vertex_degeneracy(y, v)
            levels = {n: np.full(x.counts[n], ids[n], dtype=INDEX) for n in range(x.top + 1)}
        else:
            _arity(t, 2, no, at_least=True)
            vals = _ints(t[1:], no, "level entries")
            levels[vals[0]] = np.asarray(vals[1:], dtype=INDEX)
    for n in range(x.top + 1):
        if n not in levels:
            raise DocumentError(line, f"map {name} is missing 'level {n}'")
    m = SimplicialMap(x, y, tuple(levels[n] for n in range(x.top + 1)))
    return Block("map", name, m, refs)


@dataclass
class _PendingDiagram:
    """A diagram whose ``eta`` arrives in a later block."""

    functor: FunctorData
    action: GCatAction
    action_name: str
    kind: str
    group_value: object = None   # a GSSet or GCatAction supplying eta for constant diagrams


def _parse_functor(doc, line, name, rest, entries) -> Block:
    if rest and rest[0] == "from":
        dname, cname = _on_by(rest, line, ("from", "to"))
        d, c = doc.get(dname, ("category",)), doc.get(cname, ("category",))
        _keywords(entries, {"objects", "morphisms", "identity"}, "functor")
        if any(t[0] == "identity" for _no, t in entries):
            if not d.same_as(c):
                raise DocumentError(line, "'identity' needs the same source and target")
            return Block("functor", name, CatFunctor.identity(d), {"sub": "cat", "from": dname, "to": cname})
        om = mm = None
        for no, t in entries:
            vals = tuple(_ints(t[1:], no, f"{t[0]} entries"))
            if t[0] == "objects":
                om = vals
            else:
                mm = vals
        if om is None:
            raise DocumentError(line, f"functor {name} needs an 'objects' entry")
        if mm is None:
            lookup = _thin_lookup(c.src, c.tgt)
            if lookup is None:
                raise DocumentError(line, f"functor {name} needs a 'morphisms' entry (target is not thin)")
            mm = tuple(lookup.get((om[d.src[f]], om[d.tgt[f]]), -1) for f in d.morphisms())
            if -1 in mm:
                raise DocumentError(line, f"functor {name}: object map does not extend to morphisms")
        return Block("functor", name, CatFunctor(d, c, om, mm), {"sub": "cat", "from": dname, "to": cname})
    if len(rest) not in (2, 4) or rest[0] != "on" or (len(rest) == 4 and rest[2] != "kind"):
        raise DocumentError(line, "functor header must read 'from D to C' or 'on ACTION [kind sset|cat]'")
    aname = rest[1]
    kind = rest[3] if len(rest) == 4 else SSET
    if kind not in (SSET, CAT):
        raise DocumentError(line, f"unknown functor kind {kind!r}")
    act = doc.get(aname, ("gaction",))
    cat = act.category
    value_kind = ("sset",) if kind == SSET else ("category",)
    map_kind = ("map",) if kind == SSET else ("functor",)
    _keywords(entries, {"constant", "value", "values", "map"}, "functor")
    values: dict[int, str] = {}
    maps: dict[int, str] = {}
    const = None
    for no, t in entries:
        if t[0] == "constant":
            _arity(t, 2, no)
            const = t[1]
            values = {x: t[1] for x in cat.objects()}
        elif t[0] == "values":
            _arity(t, cat.n_objects + 1, no)
            values = dict(enumerate(t[1:]))
        elif t[0] == "value":
            _arity(t, 3, no)
            values[_ints(t[1:2], no, "object")[0]] = t[2]
        else:
            _arity(t, 3, no)
            maps[_ints(t[1:2], no, "morphism")[0]] = t[2]
    for x in cat.objects():
        if x not in values:
            raise DocumentError(line, f"functor {name} has no value at object {x}")
    vals = {x: doc.get(v, value_kind) for x, v in values.items()}
    objs = tuple(_space(vals[x]) if kind == SSET else vals[x] for x in cat.objects())
    mvals = []
    for f in cat.morphisms():
        s, t = cat.src[f], cat.tgt[f]
        if f in maps:
            m = doc.get(maps[f], map_kind)
            if kind == SSET and not isinstance(m, SimplicialMap):
                raise DocumentError(line, f"{maps[f]!r} is not a simplicial map")
            mvals.append(m)
        elif values[s] == values[t] and (f in cat.identities or const is not None or kind == SSET):
            mvals.append(SimplicialMap.identity(objs[s]) if kind == SSET else CatFunctor.identity(objs[s]))
        else:
            raise DocumentError(line, f"functor {name} has no map for morphism {f} ({s} -> {t})")
    functor = FunctorData(cat, kind, objs, tuple(mvals))
    group_value = vals[0] if const is not None and kind == SSET and isinstance(vals[0], GSSet) else None
    pending = _PendingDiagram(functor, act, aname, kind, group_value)
    refs = {"sub": "diagram", "on": aname, "kind": kind, "values": [values[x] for x in cat.objects()],
            "maps": maps, "constant": const}
    return Block("functor", name, pending, refs)


def _parse_eta(doc, line, name, rest, entries) -> Block:
    if rest:
        raise DocumentError(line, "eta header must read 'eta FUNCTOR'")
    target = doc.block(name, ("functor",), line)
    if not isinstance(target.value, _PendingDiagram):
        raise DocumentError(line, f"{name!r} is not a diagram awaiting eta")
    if any(b.kind == "eta" and b.name == name for b in doc.blocks):
        raise DocumentError(line, f"second eta block for {name!r}")
    _keywords(entries, {"at", "identity"}, "eta")
    pend: _PendingDiagram = target.value
    act = pend.action
    if any(t[0] == "identity" for _no, t in entries):
        entries_ref: object = "identity"
        table = {}
        for g in act.group.elements():
            for x in act.category.objects():
                table[(g, x)] = None
    else:
        entries_ref = {}
        table = {}
        for no, t in entries:
            _arity(t, 4, no)
            g, x = _ints(t[1:3], no, "element and object")
            entries_ref[(g, x)] = t[3]
            table[(g, x)] = doc.get(t[3], ("map",) if pend.kind == SSET else ("functor",))
    rows = []
    objs = pend.functor.values
    for g in act.group.elements():
        row = []
        for x in act.category.objects():
            if g == 0 and (g, x) not in table:
                row.append(SimplicialMap.identity(objs[x]) if pend.kind == SSET else CatFunctor.identity(objs[x]))
                continue
            if (g, x) not in table:
                raise DocumentError(line, f"eta for {name} is missing the entry for (g={g}, X={x})")
            m = table[(g, x)]
            if m is None:
                gx = act.obj_perm[g][x]
                if pend.kind == SSET and not objs[x].same_tables(objs[gx]):
                    raise DocumentError(line, f"'identity' eta needs F({x}) and F({gx}) to agree")
                m = SimplicialMap.identity(objs[x]) if pend.kind == SSET else CatFunctor.identity(objs[x])
            row.append(m)
        rows.append(tuple(row))
    target.value = RightGFunctor(pend.functor, act, tuple(rows))
    return Block("eta", name, target.value, {"entries": entries_ref})


def _finish(doc: Document) -> None:
    for b in doc.blocks:
        if b.kind == "functor" and isinstance(b.value, _PendingDiagram):
            pend = b.value
            act = pend.action
            if pend.group_value is not None:
                b.value = RightGFunctor.constant(act, pend.group_value)
            elif act.group.order == 1:
                b.value = RightGFunctor(pend.functor, act, (tuple(
                    SimplicialMap.identity(v) if pend.kind == SSET else CatFunctor.identity(v)
                    for v in pend.functor.values),))
            else:
                raise DocumentError(b.line, f"functor {b.name} needs an eta block (its group is nontrivial)")
    for b in doc.blocks:
        if b.kind == "map" and b.value is None:
            f, f2 = doc.get(b.refs["from"]), doc.get(b.refs["to"])
            comps = []
            for x in f.source.objects():
                if x not in b.refs["at"]:
                    raise DocumentError(b.line, f"map {b.name} has no component at object {x}")
                comps.append(doc.get(b.refs["at"][x], ("map",)))
            b.value = GFunctorMorphism(f, f2, tuple(comps))


# -- serialization -------------------------------------------------------------

def _row(*parts) -> str:
    return "  " + " ".join(str(p) for p in parts)


def _header(b: Block, *parts) -> str:
    text = " ".join([b.kind, b.name, *map(str, parts)])
    return f"{text} via {b.provenance}" if b.provenance else text


def _ser_group(b: Block) -> list[str]:
    return [_header(b)] + [_row("row", *r) for r in b.value.table]


def _ser_category(b: Block) -> list[str]:
    cat: FinCategory = b.value
    out = [_header(b), _row("objects", cat.n_objects)]
    ident = cat.identities
    if ident != tuple(range(cat.n_objects)):
        out += [_row("identity", x, f) for x, f in enumerate(ident)]
    idset = set(ident)
    out += [_row("arrow", f, cat.src[f], cat.tgt[f]) for f in cat.morphisms() if f not in idset]
    for (g, f), h in sorted(cat.comp.items()):
        if g not in idset and f not in idset:
            out.append(_row("comp", g, f, h))
    return out


def _ser_gaction(b: Block) -> list[str]:
    act: GCatAction = b.value
    out = [_header(b, "on", b.refs["on"], "by", b.refs["by"])]
    for g in act.group.elements():
        if g:
            out.append(_row("objects", g, *act.obj_perm[g]))
            out.append(_row("morphisms", g, *act.mor_perm[g]))
    return out


def _ser_sset(b: Block) -> list[str]:
    v = b.value
    x = _space(v)
    out = [_header(b, "by", b.refs["by"]) if isinstance(v, GSSet) else _header(b)]
    out.append(_row("top", x.top))
    out.append(_row("counts", *x.counts))
    for n in range(1, x.top + 1):
        for i in range(n + 1):
            out.append(_row("face", n, i, *x.faces[n][i].tolist()))
    for n in range(x.top):
        for i in range(n + 1):
            out.append(_row("degen", n, i, *x.degens[n][i].tolist()))
    if isinstance(v, GSSet):
        for g in v.group.elements():
            if g:
                for n in range(x.top + 1):
                    out.append(_row("act", g, n, *v.action[g][n].tolist()))
    return out


def _ser_map(b: Block) -> list[str]:
    out = [_header(b, "from", b.refs["from"], "to", b.refs["to"])]
    if isinstance(b.value, SimplicialMap):
        out += [_row("level", n, *m.tolist()) for n, m in enumerate(b.value.maps)]
    else:
        out += [_row("at", x, m) for x, m in sorted(b.refs["at"].items())]
    return out


def _ser_functor(b: Block) -> list[str]:
    if b.refs.get("sub") == "cat":
        s: CatFunctor = b.value
        return [_header(b, "from", b.refs["from"], "to", b.refs["to"]),
                _row("objects", *s.obj_map), _row("morphisms", *s.mor_map)]
    r = b.refs
    head = _header(b, "on", r["on"]) if r["kind"] == SSET else _header(b, "on", r["on"], "kind", r["kind"])
    out = [head]
    if r["constant"] is not None:
        out.append(_row("constant", r["constant"]))
    else:
        out += [_row("value", x, v) for x, v in enumerate(r["values"])]
    out += [_row("map", f, m) for f, m in sorted(r["maps"].items())]
    return out


def _ser_eta(b: Block) -> list[str]:
    out = [_header(b)]
    e = b.refs["entries"]
    if e == "identity":
        out.append(_row("identity"))
    else:
        out += [_row("at", g, x, m) for (g, x), m in sorted(e.items())]
    return out


_SER = {"group": _ser_group, "category": _ser_category, "gaction": _ser_gaction, "sset": _ser_sset,
        "map": _ser_map, "functor": _ser_functor, "eta": _ser_eta}


def serialize(doc: Document) -> str:
    parts = []
    for b in doc.blocks:
        parts.append("\n".join(_SER[b.kind](b) + ["end"]))
    return "\n\n".join(parts) + "\n"


# -- helpers for adding built values ------------------------------------------

def sset_block(doc: Document, name: str, value, provenance: str = "") -> Block:
    refs = {}
    if isinstance(value, GSSet):
        gname = _group_name(doc, value.group)
        refs["by"] = gname
    return Block("sset", name, value, refs, provenance)


def _group_name(doc: Document, group: FinGroup) -> str:
    for b in doc.of_kind("group"):
        if b.value.same_as(group):
            return b.name
    raise FormatError("the value's group is not declared in the document")


def category_blocks(doc: Document, name: str, cat: FinCategory, action: GCatAction | None,
                    provenance: str = "") -> list[Block]:
    out = [Block("category", name, cat, {}, provenance)]
    if action is not None:
        out.append(Block("gaction", name + "_action", action,
                         {"on": name, "by": _group_name(doc, action.group)}, provenance))
    return out
