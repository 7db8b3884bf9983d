"""Reference computations that share no code with the package.

Chains, coends and homology are recomputed from the raw tables of a
category and a diagram with plain Python: a hand-written union-find for
quotients, and sympy's Smith normal form for homology.
"""

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form


class UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def classes(self):
        return len({self.find(a) for a in range(len(self.parent))})


def chains(cat, n, start=None, end=None):
    """Strings of ``n`` composable arrows ``x_0 -> ... -> x_n`` as
    ``(x_0, (f_1, ..., f_n))``, identities allowed."""
    out = []

    def walk(x0, x, path):
        if len(path) == n:
            if end is None or x == end:
                out.append((x0, tuple(path)))
            return
        for f in range(len(cat.src)):
            if cat.src[f] == x:
                walk(x0, cat.tgt[f], path + [f])

    for x0 in range(cat.n_objects) if start is None else [start]:
        walk(x0, x0, [])
    return out


def _end(cat, x0, path):
    return cat.tgt[path[-1]] if path else x0


def bar_count(f, n):
    """``|B(F, C, *)_n| = Σ |F(x_0)_n|`` over strings of ``n`` arrows."""
    cat = f.source
    return sum(f.value(x0).counts[n] for x0, _ in chains(cat, n))


def under_tensor_count(f, n):
    """Classes of ``⨆_x F(x)_n × N(x↓C)_n`` modulo ``(F(u)a, σ) ~ (a, σ∘u)``.

    An ``n``-simplex of ``N(x↓C)`` is ``(u: x -> y_0, g_1, ..., g_n)``.
    """
    cat = f.source
    elems = []
    for x in range(cat.n_objects):
        for u in range(len(cat.src)):
            if cat.src[u] != x:
                continue
            for _, path in chains(cat, n, start=cat.tgt[u]):
                for a in range(f.value(x).counts[n]):
                    elems.append((x, a, u, path))
    index = {e: i for i, e in enumerate(elems)}
    uf = UnionFind(len(elems))
    for (x, a, u, path), i in index.items():
        # move along every arrow h: x -> x': (F(h)a, σ') with σ'∘h = σ
        for h in range(len(cat.src)):
            if cat.src[h] != x:
                continue
            for u2 in range(len(cat.src)):
                if cat.src[u2] == cat.tgt[h] and cat.tgt[u2] == cat.tgt[u] and cat.comp[(u2, h)] == u:
                    b = int(f.map(h).maps[n][a])
                    uf.union(i, index[(cat.tgt[h], b, u2, path)])
    return uf.classes()


def two_sided_count(f, n):
    """Classes of ``⨆_{a,b} F(a)_n × N(a↓C↓b)_n`` for ``Z(a, b) = F(a)``,
    modulo moving along arrows in either variable.

    An ``n``-simplex of ``N(a↓C↓b)`` is ``(u: a -> y_0, g_1, ..., g_n, v: y_n -> b)``.
    """
    cat = f.source
    arrows = range(len(cat.src))
    elems = []
    for a in range(cat.n_objects):
        for u in arrows:
            if cat.src[u] != a:
                continue
            for _, path in chains(cat, n, start=cat.tgt[u]):
                yn = _end(cat, cat.tgt[u], path)
                for v in arrows:
                    if cat.src[v] == yn:
                        for z in range(f.value(a).counts[n]):
                            elems.append((a, z, u, path, v))
    index = {e: i for i, e in enumerate(elems)}
    uf = UnionFind(len(elems))
    for (a, z, u, path, v), i in index.items():
        for h in arrows:
            # left variable: h: a -> a' with u = u2∘h
            if cat.src[h] == a:
                for u2 in arrows:
                    if cat.src[u2] == cat.tgt[h] and cat.tgt[u2] == cat.tgt[u] and cat.comp[(u2, h)] == u:
                        w = int(f.map(h).maps[n][z])
                        uf.union(i, index[(cat.tgt[h], w, u2, path, v)])
            # right variable: h: b -> b' postcomposed onto v, Z constant there
            if cat.src[h] == cat.tgt[v]:
                uf.union(i, index[(a, z, u, path, cat.comp[(h, v)])])
    return uf.classes()


# -- homology of a nerve from its composition table -------------------------------

def nerve_boundaries(cat, top):
    """Boundary matrices of the normalized chains of ``N(C)``: strings of
    non-identity arrows, faces by composing or dropping an end."""
    ident = set(cat.identities)
    basis = [[(x, ()) for x in range(cat.n_objects)]]
    for n in range(1, top + 1):
        basis.append([c for c in chains(cat, n) if not any(g in ident for g in c[1])])
    mats = []
    for n in range(1, top + 1):
        pos = {c: k for k, c in enumerate(basis[n - 1])}
        m = [[0] * len(basis[n]) for _ in basis[n - 1]]
        for col, (x0, path) in enumerate(basis[n]):
            for i in range(n + 1):
                if i == 0:
                    face = (cat.tgt[path[0]], path[1:])
                elif i == n:
                    face = (x0, path[:-1])
                else:
                    face = (x0, path[:i - 1] + (cat.comp[(path[i], path[i - 1])],) + path[i + 1:])
                if face[1] and any(g in ident for g in face[1]):
                    continue
                m[pos[face]][col] += (-1) ** i
        mats.append(m)
    return [len(b) for b in basis], mats


def _invariants(m, rows, cols):
    if rows == 0 or cols == 0:
        return []
    snf = smith_normal_form(Matrix(m), domain=ZZ)
    return [abs(int(snf[i, i])) for i in range(min(rows, cols)) if snf[i, i] != 0]


def integral_homology(sizes, mats, degrees):
    """``[(free rank, torsion list)]`` for degrees ``0..degrees-1``."""
    inv = [[]] + [_invariants(m, sizes[n], sizes[n + 1]) for n, m in enumerate(mats)]
    out = []
    for k in range(degrees):
        rank_in = len(inv[k + 1]) if k + 1 < len(inv) else 0
        free = sizes[k] - len(inv[k]) - rank_in
        torsion = [d for d in (inv[k + 1] if k + 1 < len(inv) else []) if d > 1]
        out.append((free, torsion))
    return out


def mod_p_betti(sizes, mats, degrees, p):
    ranks = [0] + [_rank_mod(m, p) if sizes[n] and sizes[n + 1] else 0 for n, m in enumerate(mats)]
    return [sizes[k] - ranks[k] - (ranks[k + 1] if k + 1 < len(ranks) else 0) for k in range(degrees)]


def _rank_mod(m, p):
    rows = [[v % p for v in row] for row in m]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                c = rows[r][col] * inv % p
                rows[r] = [(a - c * b) % p for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank

