"""Random, reproducible G-categories with right G-functors into simplicial sets.

Objects come in orbits ``G/H``; arrows join orbits on strictly increasing
levels, so the category is acyclic and the action preserves it.  The
diagram is ``F(x) = K_0 ⊔ ⨆_j ⨆_{c ∈ O_j} hom(c, x) × K_j`` where each
``K_j`` is a point, ``Δ¹``, or two copies of one of those exchanged through
a homomorphism ``G -> Z/2``.  ``F(f)`` composes with ``f`` and ``η_g`` sends
``(c, u, k)`` to ``(gc, gu, g·k)``, so the right G-functor laws hold by
construction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from ..algebra.categories import CatFunctor, FinCategory, GCatAction, product_action, product_category
from ..algebra.groups import FinGroup, subgroups
from ..simplicial.ops import coproduct
from ..simplicial.sset import DEFAULT_TOP, INDEX, SimplicialMap, TruncatedSSet, point, standard_simplex
from .document import Block, Document, parse, serialize

GROUPS = {
    "1": lambda: FinGroup.trivial(),
    "Z2": lambda: FinGroup.cyclic(2),
    "Z3": lambda: FinGroup.cyclic(3),
    "Z4": lambda: FinGroup.cyclic(4),
    "Z2xZ2": lambda: FinGroup.direct_product(FinGroup.cyclic(2), FinGroup.cyclic(2)),
    "S3": lambda: FinGroup.symmetric(3),
    "Z5": lambda: FinGroup.cyclic(5),
    "Z6": lambda: FinGroup.cyclic(6),
}
SHAPES = ("identity", "inclusion", "discrete", "projection")


@dataclass(frozen=True)
class Caps:
    max_group: int = 6
    max_objects: int = 5
    max_morphisms: int = 20
    top: int = DEFAULT_TOP
    functor: bool = False      # also emit an equivariant S: D -> C
    shape: str | None = None   # force one of SHAPES


def _sign_characters(group: FinGroup) -> list[tuple[int, ...]]:
    """Homomorphisms ``G -> Z/2`` as 0/1 tuples, the trivial one first."""
    out = [tuple(0 for _ in group.elements())]
    for h in subgroups(group):
        if 2 * h.order == group.order:
            out.append(tuple(0 if g in h else 1 for g in group.elements()))
    return out


def _orbit_objects(rng, group: FinGroup, max_objects: int):
    """Cosets ``aH`` of randomly chosen subgroups, with the left action."""
    subs = [h for h in subgroups(group) if group.order // h.order <= max_objects]
    n_orbits = rng.randint(1, 3)
    orbits, objects = [], []
    for _ in range(n_orbits):
        fits = [h for h in subs if len(objects) + group.order // h.order <= max_objects]
        if not fits:
            break
        h = rng.choice(fits)
        cosets = []
        for a in group.elements():
            cos = frozenset(group.mul(a, x) for x in h.elements)
            if cos not in cosets:
                cosets.append(cos)
        k = len(orbits)
        orbits.append(list(range(len(objects), len(objects) + len(cosets))))
        objects.extend((k, c) for c in cosets)
    index = {o: i for i, o in enumerate(objects)}
    perms = tuple(tuple(index[(k, frozenset(group.mul(g, x) for x in c))] for k, c in objects)
                  for g in group.elements())
    return orbits, perms


def _edge_orbits(rng, orbits, perms, levels):
    edges: list[tuple[int, int]] = []
    pairs = [(i, j) for i in range(len(orbits)) for j in range(len(orbits)) if levels[i] < levels[j]]
    rng.shuffle(pairs)
    for i, j in pairs[: rng.randint(0, len(pairs))]:
        a, b = rng.choice(orbits[i]), rng.choice(orbits[j])
        orbit = sorted({(p[a], p[b]) for p in perms})
        edges.extend(e for e in orbit if e not in edges)
    return edges


def _free_action(group, cat: FinCategory, edges, perms) -> GCatAction:
    eidx = {e: k for k, e in enumerate(edges)}
    labels = {lab: f for f, lab in enumerate(cat.mor_labels)}
    mor = []
    for g in group.elements():
        p = perms[g]
        row = []
        for f in cat.morphisms():
            lab = cat.mor_labels[f]
            if len(lab) == 2 and lab[1] == ():   # identity, labelled (object, ())
                moved = (p[lab[0]], ())
            else:
                moved = tuple(eidx[(p[edges[k][0]], p[edges[k][1]])] for k in lab)
            row.append(labels[moved])
        mor.append(tuple(row))
    return GCatAction(group, cat, perms, tuple(mor))


def _category(rng, group: FinGroup, caps: Caps):
    for _attempt in range(20):
        orbits, perms = _orbit_objects(rng, group, caps.max_objects)
        levels = [rng.randint(0, 2) for _ in orbits]
        edges = _edge_orbits(rng, orbits, perms, levels)
        n = len(perms[0])
        if rng.random() < 0.5:
            cat = FinCategory.from_preorder(n, edges)
            if cat.n_morphisms <= caps.max_morphisms:
                return cat, GCatAction.on_thin(group, cat, perms), orbits
        else:
            cat = FinCategory.free(n, edges)
            if cat.n_morphisms <= caps.max_morphisms:
                return cat, _free_action(group, cat, edges, perms), orbits
    cat = FinCategory.discrete(1)
    return cat, GCatAction.trivial(group, cat), [[0]]


def _k_value(kind: str, top: int) -> TruncatedSSet:
    base = point(top) if kind.startswith("point") else standard_simplex(1, top)
    return coproduct([base, base])[0] if kind.endswith("pair") else base


def _k_action(kind: str, k: TruncatedSSet, sign: int) -> tuple[np.ndarray, ...]:
    """Action of an element with character value ``sign`` on ``K``."""
    if not kind.endswith("pair") or not sign:
        return tuple(np.arange(c, dtype=INDEX) for c in k.counts)
    return tuple(np.roll(np.arange(c, dtype=INDEX), c // 2) for c in k.counts)


@dataclass
class _Diagram:
    values: list[TruncatedSSet]
    maps: list[SimplicialMap]
    eta: list[list[SimplicialMap]]


def _diagram(rng, group: FinGroup, cat: FinCategory, act: GCatAction, orbits, top: int) -> _Diagram:
    chars = _sign_characters(group)
    kinds = ("point", "interval", "point-pair", "interval-pair")
    terms = [(None, rng.choice(kinds), rng.choice(chars))]
    for _ in range(rng.randint(0, 2)):
        terms.append((rng.choice(orbits), rng.choice(kinds), rng.choice(chars)))
    ks = [_k_value(kind, top) for _o, kind, _c in terms]
    blocks = []   # per object: list of (term, c, u)
    for x in cat.objects():
        row = [(0, None, None)]
        for j, (orbit, _kind, _c) in enumerate(terms[1:], start=1):
            row += [(j, c, u) for c in orbit for u in cat.hom(c, x)]
        blocks.append(row)
    values = [coproduct([ks[b[0]] for b in blocks[x]], top)[0] for x in cat.objects()]
    offsets = [[np.cumsum([0] + [ks[b[0]].counts[n] for b in blocks[x]]) for n in range(top + 1)]
               for x in cat.objects()]
    pos = [{b: i for i, b in enumerate(blocks[x])} for x in cat.objects()]

    def assemble(x, y, block_map, k_maps):
        levels = []
        for n in range(top + 1):
            parts = []
            for i, b in enumerate(blocks[x]):
                j = pos[y][block_map(b)]
                parts.append(k_maps[b[0]][n] + offsets[y][n][j])
            levels.append(np.concatenate(parts).astype(INDEX) if parts else np.zeros(0, dtype=INDEX))
        return SimplicialMap(values[x], values[y], tuple(levels))

    ident_k = [_k_action(kind, k, 0) for (_o, kind, _c), k in zip(terms, ks)]
    maps = []
    for f in cat.morphisms():
        s, t = cat.src[f], cat.tgt[f]
        maps.append(assemble(s, t, lambda b, f=f: b if b[1] is None else (b[0], b[1], cat.compose(f, b[2])), ident_k))
    eta = []
    for g in group.elements():
        kg = [_k_action(kind, k, ch[g]) for (_o, kind, ch), k in zip(terms, ks)]
        row = []
        for x in cat.objects():
            gx = act.obj_perm[g][x]
            row.append(assemble(x, gx, lambda b, g=g: b if b[1] is None
                                else (b[0], act.obj_perm[g][b[1]], act.mor_perm[g][b[2]]), kg))
        eta.append(row)
    return _Diagram(values, maps, eta)


def _full_subcategory(cat: FinCategory, act: GCatAction, keep: list[int]):
    ko = {x: i for i, x in enumerate(keep)}
    mors = [f for f in cat.morphisms() if cat.src[f] in ko and cat.tgt[f] in ko]
    km = {f: i for i, f in enumerate(mors)}
    comp = {(km[g], km[f]): km[h] for (g, f), h in cat.comp.items() if g in km and f in km}
    sub = FinCategory(len(keep), tuple(ko[cat.src[f]] for f in mors), tuple(ko[cat.tgt[f]] for f in mors),
                      tuple(km[cat.identities[x]] for x in keep), comp)
    sact = GCatAction(act.group, sub,
                      tuple(tuple(ko[act.obj_perm[g][x]] for x in keep) for g in act.group.elements()),
                      tuple(tuple(km[act.mor_perm[g][f]] for f in mors) for g in act.group.elements()))
    return sub, sact, CatFunctor(sub, cat, tuple(keep), tuple(mors))


def _functor_shape(rng, group, cat, act, orbits, caps: Caps):
    shape = caps.shape or rng.choice(SHAPES)
    if shape == "projection" and cat.n_objects * 2 > 10:
        shape = "inclusion"
    if shape == "identity":
        return shape, cat, act, CatFunctor.identity(cat)
    if shape in ("inclusion", "discrete"):
        chosen = sorted(x for o in rng.sample(orbits, rng.randint(1, len(orbits))) for x in o)
        if shape == "inclusion":
            sub, sact, s = _full_subcategory(cat, act, chosen)
            return shape, sub, sact, s
        d = FinCategory.discrete(len(chosen))
        ko = {x: i for i, x in enumerate(chosen)}
        perms = tuple(tuple(ko[act.obj_perm[g][x]] for x in chosen) for g in group.elements())
        return shape, d, GCatAction(group, d, perms, perms), CatFunctor(
            d, cat, tuple(chosen), tuple(cat.identities[x] for x in chosen))
    # projection C × E -> C, E with an initial object fixed by G
    chars = _sign_characters(group)
    if rng.random() < 0.5 or len(chars) == 1:
        e = FinCategory.ordinal(1)
        eact = GCatAction.trivial(group, e)
    else:
        e = FinCategory.from_preorder(3, [(0, 1), (0, 2)])
        ch = rng.choice(chars[1:])
        eact = GCatAction.on_thin(group, e, tuple((0, 2, 1) if ch[g] else (0, 1, 2) for g in group.elements()))
    pc = product_category(cat, e)
    pa = product_action(act, eact, pc)
    ne, me = e.n_objects, e.n_morphisms
    s = CatFunctor(pc, cat, tuple(x // ne for x in pc.objects()), tuple(f // me for f in pc.morphisms()))
    return shape, pc, pa, s


def generate_document(seed: int, caps: Caps = Caps()) -> Document:
    """The instance for ``seed``; equal seeds and caps give byte-identical documents."""
    if caps.max_group < 1 or caps.max_objects < 1 or caps.max_morphisms < 1 or caps.top < 1:
        raise ValueError("infeasible caps: group order, objects, morphisms and truncation must be positive")
    rng = random.Random(seed)
    names = [k for k, make in GROUPS.items() if make().order <= caps.max_group]
    gname = rng.choice(names)
    group = GROUPS[gname]()
    cat, act, orbits = _category(rng, group, caps)
    if cat.n_morphisms > caps.max_morphisms:
        raise ValueError("infeasible caps: not even a one-object category fits")
    diag = _diagram(rng, group, cat, act, orbits, caps.top)
    doc = Document(top=caps.top)
    doc.add(Block("group", "G", group, provenance=f"generated {gname}"))
    doc.add(Block("category", "C", cat))
    doc.add(Block("gaction", "A", act, {"on": "C", "by": "G"}))
    values = []
    for x, v in enumerate(diag.values):
        doc.add(Block("sset", f"F{x}", v, {}))
        values.append(f"F{x}")
    maps = {}
    for f in cat.morphisms():
        if f in cat.identities:
            continue
        nm = f"Fm{f}"
        doc.add(Block("map", nm, diag.maps[f], {"from": values[cat.src[f]], "to": values[cat.tgt[f]]}))
        maps[f] = nm
    entries = {}
    for g in group.elements():
        if g == 0:
            continue
        for x in cat.objects():
            nm = f"Fe{g}_{x}"
            doc.add(Block("map", nm, diag.eta[g][x], {"from": values[x], "to": values[act.obj_perm[g][x]]}))
            entries[(g, x)] = nm
    doc.add(Block("functor", "F", None, {"sub": "diagram", "on": "A", "kind": "sset", "values": values,
                                         "maps": maps, "constant": None}))
    if group.order > 1:
        doc.add(Block("eta", "F", None, {"entries": entries}))
    if caps.functor:
        shape, d, dact, s = _functor_shape(rng, group, cat, act, orbits, caps)
        doc.add(Block("category", "D", d, provenance=f"generated {shape}"))
        doc.add(Block("gaction", "AD", dact, {"on": "D", "by": "G"}))
        doc.add(Block("functor", "S", s, {"sub": "cat", "from": "D", "to": "C"}))
    return parse(serialize(doc), caps.top)


def generate(seed: int, caps: Caps = Caps()) -> str:
    return serialize(generate_document(seed, caps))


__all__ = ["Caps", "GROUPS", "SHAPES", "generate", "generate_document"]
