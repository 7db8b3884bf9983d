"""Finite groups given by full multiplication tables.

Element 0 is always the identity. ``table[a][b]`` is the product ``a*b``,
and a group element ``a`` acting on anything acts "after" ``b`` when the
product ``a*b`` acts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from ..errors import FormatError, SizeLimitError, ValidationReport

DEFAULT_MAX_GROUP_ORDER = 12


@dataclass(frozen=True, eq=False)
class FinGroup:
    table: tuple[tuple[int, ...], ...]
    name: str = ""

    def __post_init__(self):
        table = tuple(tuple(int(v) for v in row) for row in self.table)
        object.__setattr__(self, "table", table)
        n = len(table)
        if n == 0:
            raise FormatError("a group needs at least one element")
        for a, row in enumerate(table):
            if len(row) != n:
                raise FormatError(f"row {a} of the multiplication table has length {len(row)}, expected {n}")
            for b, v in enumerate(row):
                if not 0 <= v < n:
                    raise FormatError(f"product {a}*{b} = {v} is out of range")

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self) -> int:
        return len(self.table)

    def elements(self) -> range:
        return range(len(self.table))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def inverse(self) -> tuple[int, ...]:
        inv = []
        for a, row in enumerate(self.table):
            try:
                inv.append(row.index(0))
            except ValueError:
                raise FormatError(f"element {a} has no right inverse") from None
        return tuple(inv)

    def same_as(self, other: "FinGroup") -> bool:
        return self is other or self.table == other.table

    def __repr__(self) -> str:
        return f"FinGroup({self.name or 'order ' + str(self.order)})"

    # -- standard groups -------------------------------------------------

    @classmethod
    def trivial(cls) -> "FinGroup":
        return cls(((0,),), "1")

    @classmethod
    def cyclic(cls, n: int) -> "FinGroup":
        return cls(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), f"Z{n}")

    @classmethod
    def from_permutations(cls, perms, name: str = "") -> "FinGroup":
        """Group table of a list of permutations closed under composition.

        The identity permutation must come first.  ``a*b`` is "a after b".
        """
        perms = [tuple(p) for p in perms]
        pos = {p: i for i, p in enumerate(perms)}
        if perms[0] != tuple(range(len(perms[0]))):
            raise FormatError("the identity permutation must be listed first")
        table = []
        for a in perms:
            row = []
            for b in perms:
                c = tuple(a[b[i]] for i in range(len(b)))
                if c not in pos:
                    raise FormatError("permutation list is not closed under composition")
                row.append(pos[c])
            table.append(tuple(row))
        return cls(tuple(table), name)

    @classmethod
    def symmetric(cls, n: int) -> "FinGroup":
        return cls.from_permutations(itertools.permutations(range(n)), f"S{n}")

    @classmethod
    def dihedral(cls, n: int) -> "FinGroup":
        """Symmetries of a regular n-gon, order 2n."""
        rots = [tuple((i + k) % n for i in range(n)) for k in range(n)]
        refls = [tuple((k - i) % n for i in range(n)) for k in range(n)]
        return cls.from_permutations(rots + refls, f"D{n}")

    @classmethod
    def direct_product(cls, g: "FinGroup", h: "FinGroup") -> "FinGroup":
        m = h.order
        table = tuple(
            tuple(g.mul(a // m, b // m) * m + h.mul(a % m, b % m) for b in range(g.order * m))
            for a in range(g.order * m)
        )
        name = f"{g.name}x{h.name}" if g.name and h.name else ""
        return cls(table, name)


def validate_group(group: FinGroup) -> ValidationReport:
    report = ValidationReport(f"group {group.name or group.order}")
    n = group.order
    t = group.table
    for a in range(n):
        if t[0][a] != a or t[a][0] != a:
            report.add("group.identity", (a,), "element 0 is not a two-sided identity here")
    for a in range(n):
        row_inv = [b for b in range(n) if t[a][b] == 0]
        col_inv = [b for b in range(n) if t[b][a] == 0]
        if not row_inv or not col_inv or row_inv[0] != col_inv[0]:
            report.add("group.inverse", (a,), "no two-sided inverse")
    for a in range(n):
        ta = t[a]
        for b in range(n):
            tab = t[ta[b]]
            tb = t[b]
            for c in range(n):
                if tab[c] != ta[tb[c]]:
                    report.add("group.associativity", (a, b, c), f"({a}*{b})*{c} != {a}*({b}*{c})")
    return report


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FinGroup
    elements: tuple[int, ...]

    def __post_init__(self):
        els = tuple(sorted(set(int(e) for e in self.elements)))
        object.__setattr__(self, "elements", els)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: int) -> bool:
        return g in self._members

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def _members(self) -> frozenset[int]:
        return frozenset(self.elements)

    def is_closed(self) -> bool:
        if 0 not in self._members:
            return False
        inv = self.parent.inverse
        return all(
            self.parent.mul(a, b) in self._members for a in self.elements for b in self.elements
        ) and all(inv[a] in self._members for a in self.elements)

    @cached_property
    def group(self) -> FinGroup:
        """The subgroup as a group in its own right, indexed like ``elements``."""
        pos = {g: i for i, g in enumerate(self.elements)}
        table = tuple(
            tuple(pos[self.parent.mul(a, b)] for b in self.elements) for a in self.elements
        )
        return FinGroup(table, f"<{','.join(map(str, self.elements))}>")

    def conjugate(self, g: int) -> "Subgroup":
        inv = self.parent.inverse[g]
        m = self.parent.mul
        return Subgroup(self.parent, tuple(m(m(g, h), inv) for h in self.elements))

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        return self._members <= other._members

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and self.parent.same_as(other.parent)
            and self.elements == other.elements
        )

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        return f"Subgroup({list(self.elements)})"

    @classmethod
    def whole(cls, group: FinGroup) -> "Subgroup":
        return cls(group, tuple(group.elements()))

    @classmethod
    def trivial(cls, group: FinGroup) -> "Subgroup":
        return cls(group, (0,))


def validate_subgroup(h: Subgroup) -> ValidationReport:
    report = ValidationReport(f"subgroup {list(h.elements)}")
    n = h.parent.order
    for e in h.elements:
        if not 0 <= e < n:
            raise FormatError(f"subgroup element {e} is out of range for a group of order {n}")
    if 0 not in h:
        report.add("subgroup.identity", (0,), "identity missing")
    for a in h.elements:
        for b in h.elements:
            c = h.parent.mul(a, b)
            if c not in h:
                report.add("subgroup.closure", (a, b), f"{a}*{b}={c} not in subgroup")
    for a in h.elements:
        if h.parent.inverse[a] not in h:
            report.add("subgroup.inverse", (a,), "inverse not in subgroup")
    return report


def generated_subgroup(group: FinGroup, generators) -> Subgroup:
    """Closure of ``generators`` under multiplication."""
    els = {0}
    frontier = [0]
    gens = list(generators)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = group.mul(g, a)
                if c not in els:
                    els.add(c)
                    nxt.append(c)
        frontier = nxt
    return Subgroup(group, tuple(els))


def subgroups(group: FinGroup, max_order: int = DEFAULT_MAX_GROUP_ORDER) -> list[Subgroup]:
    """All subgroups, sorted by order then lexicographically by elements.

    Every subgroup is a join of cyclic subgroups, so closing the set of
    cyclic subgroups under pairwise joins finds them all.
    """
    if group.order > max_order:
        raise SizeLimitError(
            f"group order {group.order} exceeds the subgroup enumeration cap {max_order}"
        )
    found = {generated_subgroup(group, [g]).elements for g in group.elements()}
    frontier = set(found)
    while frontier:
        new = set()
        for a in frontier:
            for b in found:
                j = generated_subgroup(group, set(a) | set(b)).elements
                if j not in found and j not in new:
                    new.add(j)
        found |= new
        frontier = new
    return [Subgroup(group, els) for els in sorted(found, key=lambda e: (len(e), e))]
