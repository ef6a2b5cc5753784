"""Pseudo double categories and bicategories with stored constraint cells.

The vertical direction of a pseudo double category is strict; the horizontal
composition carries associator and unitor squares, globular and vertically
invertible, with their inverses stored rather than searched for.  Orientation
conventions (left-argument-first tables throughout):

    assoc[(f, g, h)] : (f.g).h  =>  f.(g.h)
    lunit[f]         : 1_A . f  =>  f
    runit[f]         : f . 1_B  =>  f

A bicategory is the globular special case and gets its own independent
checker so the two can cross-validate each other.
"""

from __future__ import annotations

from .kernel import (
    HCELL,
    SQUARE,
    VCELL,
    DoubleCategory,
    NonComposable,
    StructureError,
    _check_index,
)
from .report import AxiomReport, Budget, Collector


class PseudoDoubleCategory(DoubleCategory):
    """As DoubleCategory, but the horizontal 1-cell composition need not be
    associative or unital; constraint squares make up the difference."""

    def __init__(self, *args, assoc, assoc_inv, lunit, lunit_inv, runit, runit_inv, **kwargs):
        # the strict-case validation is purely structural (key sets and
        # boundaries), so it applies verbatim here
        super().__init__(*args, **kwargs)
        self.assoc = dict(assoc)
        self.assoc_inv = dict(assoc_inv)
        self.lunit = list(lunit)
        self.lunit_inv = list(lunit_inv)
        self.runit = list(runit)
        self.runit_inv = list(runit_inv)
        self._validate_pseudo()

    def _validate_pseudo(self):
        nh = len(self.hcells)
        triples = {
            (f, g, h)
            for (f, g) in self.hcomp1
            for h in range(nh)
            if self.ht(g) == self.hs(h)
        }
        if set(self.assoc) != triples or set(self.assoc_inv) != triples:
            raise StructureError("associator must be keyed on exactly the composable hcell triples")
        for (f, g, h), s in self.assoc.items():
            lhs = self.hcomp(self.hcomp(f, g), h)
            rhs = self.hcomp(f, self.hcomp(g, h))
            if self.squares[s] != (lhs, rhs, self.vid[self.hs(f)], self.vid[self.ht(h)]):
                raise StructureError(f"associator at {(f, g, h)} has wrong boundary")
        for f in range(nh):
            a, b = self.hcells[f]
            if self.squares[self.lunit[f]] != (self.hcomp(self.hid[a], f), f, self.vid[a], self.vid[b]):
                raise StructureError(f"left unitor at {f} has wrong boundary")
            if self.squares[self.runit[f]] != (self.hcomp(f, self.hid[b]), f, self.vid[a], self.vid[b]):
                raise StructureError(f"right unitor at {f} has wrong boundary")


def as_pseudo(d: DoubleCategory) -> PseudoDoubleCategory:
    """View a strict double category as a pseudo one with identity constraints."""
    assoc = {
        (f, g, h): d.sq_vid[d.hcomp(d.hcomp(f, g), h)]
        for (f, g) in d.hcomp1
        for h in range(len(d.hcells))
        if d.ht(g) == d.hs(h)
    }
    return PseudoDoubleCategory(
        d.n_objects,
        d.hcells,
        d.vcells,
        d.squares,
        d.hcomp1,
        d.vcomp1,
        d.hcomp2,
        d.vcomp2,
        d.hid,
        d.vid,
        d.sq_vid,
        d.sq_hid,
        names=d.names,
        assoc=assoc,
        assoc_inv=dict(assoc),
        lunit=list(d.sq_vid),
        lunit_inv=list(d.sq_vid),
        runit=list(d.sq_vid),
        runit_inv=list(d.sq_vid),
    )


def _vertically_inverse(d, cell, inv, col, axiom, witness):
    t, b = d.top(cell), d.bottom(cell)
    col.eq(axiom, witness, d.vpaste(cell, inv), d.sq_vid[t])
    col.eq(axiom, witness, d.vpaste(inv, cell), d.sq_vid[b])


def check_pseudo_double_category(p: PseudoDoubleCategory, budget: Budget | None = None) -> AxiomReport:
    """Pentagon, triangle, naturality of the constraints, functoriality of
    horizontal pasting, and the strict vertical laws, all by enumeration."""
    col = Collector("pseudo-double-category", budget)
    nh, nv, ns = len(p.hcells), len(p.vcells), len(p.squares)
    p.table_boundary_violations(col)
    if col.report.violations:
        col.assume("equational laws not evaluated: table entries have wrong boundaries")
        return col.done()

    for (u, v) in sorted(p.vcomp1):
        for w in range(nv):
            if p.vt(v) == p.vs(w):
                col.eq(
                    "vcomp1-associativity",
                    ((VCELL, u), (VCELL, v), (VCELL, w)),
                    p.vcomp(p.vcomp(u, v), w),
                    p.vcomp(u, p.vcomp(v, w)),
                )
    for u in range(nv):
        col.eq("vcomp1-left-unit", ((VCELL, u),), p.vcomp(p.vid[p.vs(u)], u), u)
        col.eq("vcomp1-right-unit", ((VCELL, u),), p.vcomp(u, p.vid[p.vt(u)]), u)
    by_top = p.squares_by_top()
    for (a, b) in sorted(p.vcomp2):
        for c in by_top.get(p.bottom(b), ()):
            col.eq(
                "vcomp2-associativity",
                ((SQUARE, a), (SQUARE, b), (SQUARE, c)),
                p.vpaste(p.vpaste(a, b), c),
                p.vpaste(a, p.vpaste(b, c)),
            )
    for s in range(ns):
        col.eq("vcomp2-unit", ((SQUARE, s),), p.vpaste(p.sq_vid[p.top(s)], s), s)
        col.eq("vcomp2-unit", ((SQUARE, s),), p.vpaste(s, p.sq_vid[p.bottom(s)]), s)

    for (f, g) in sorted(p.hcomp1):
        col.eq(
            "hpaste-identity-functoriality",
            ((HCELL, f), (HCELL, g)),
            p.sq_vid[p.hcomp(f, g)],
            p.hpaste(p.sq_vid[f], p.sq_vid[g]),
        )
    by_tl = p.squares_by_top_left()
    for (a, b) in sorted(p.hcomp2):
        for c in by_top.get(p.bottom(a), ()):
            for e in by_tl.get((p.bottom(b), p.right(c)), ()):
                col.eq(
                    "interchange",
                    ((SQUARE, a), (SQUARE, b), (SQUARE, c), (SQUARE, e)),
                    p.hpaste(p.vpaste(a, c), p.vpaste(b, e)),
                    p.vpaste(p.hpaste(a, b), p.hpaste(c, e)),
                )

    for key in sorted(p.assoc):
        _vertically_inverse(
            p, p.assoc[key], p.assoc_inv[key], col, "associator-invertibility", tuple((HCELL, x) for x in key)
        )
    for f in range(nh):
        _vertically_inverse(p, p.lunit[f], p.lunit_inv[f], col, "left-unitor-invertibility", ((HCELL, f),))
        _vertically_inverse(p, p.runit[f], p.runit_inv[f], col, "right-unitor-invertibility", ((HCELL, f),))

    # naturality of the three constraint families
    for (a, b) in sorted(p.hcomp2):
        for c in range(ns):
            if p.right(b) != p.left(c):
                continue
            tri = (p.top(a), p.top(b), p.top(c))
            bot = (p.bottom(a), p.bottom(b), p.bottom(c))
            col.eq(
                "associator-naturality",
                ((SQUARE, a), (SQUARE, b), (SQUARE, c)),
                p.vpaste(p.assoc[tri], p.hpaste(a, p.hpaste(b, c))),
                p.vpaste(p.hpaste(p.hpaste(a, b), c), p.assoc[bot]),
            )
    for s in range(ns):
        t, b, l, r = p.squares[s]
        col.eq(
            "left-unitor-naturality",
            ((SQUARE, s),),
            p.vpaste(p.lunit[t], s),
            p.vpaste(p.hpaste(p.sq_hid[l], s), p.lunit[b]),
        )
        col.eq(
            "right-unitor-naturality",
            ((SQUARE, s),),
            p.vpaste(p.runit[t], s),
            p.vpaste(p.hpaste(s, p.sq_hid[r]), p.runit[b]),
        )

    # pentagon and triangle
    for (f, g) in sorted(p.hcomp1):
        for h in range(nh):
            if p.ht(g) != p.hs(h):
                continue
            for k in range(nh):
                if p.ht(h) != p.hs(k):
                    continue
                col.eq(
                    "pentagon",
                    ((HCELL, f), (HCELL, g), (HCELL, h), (HCELL, k)),
                    p.vcol(p.assoc[(p.hcomp(f, g), h, k)], p.assoc[(f, g, p.hcomp(h, k))]),
                    p.vcol(
                        p.hpaste(p.assoc[(f, g, h)], p.sq_vid[k]),
                        p.assoc[(f, p.hcomp(g, h), k)],
                        p.hpaste(p.sq_vid[f], p.assoc[(g, h, k)]),
                    ),
                )
    for (f, g) in sorted(p.hcomp1):
        mid = p.ht(f)
        col.eq(
            "triangle",
            ((HCELL, f), (HCELL, g)),
            p.vpaste(p.assoc[(f, p.hid[mid], g)], p.hpaste(p.sq_vid[f], p.lunit[g])),
            p.hpaste(p.runit[f], p.sq_vid[g]),
        )
    return col.done()


# ---------------------------------------------------------------------------
# bicategories


class Bicategory:
    """Finite bicategory: hom-categories given by globular 2-cells, weak
    horizontal composition with stored associator/unitor isomorphisms."""

    def __init__(
        self,
        n_objects,
        onecells,
        twocells,
        comp1,
        vcomp2,
        hcomp2,
        id1,
        id2,
        assoc,
        assoc_inv,
        lunit,
        lunit_inv,
        runit,
        runit_inv,
        names=None,
    ):
        self.n_objects = int(n_objects)
        self.onecells = [tuple(x) for x in onecells]
        self.twocells = [tuple(x) for x in twocells]
        self.comp1 = dict(comp1)
        self.vcomp2 = dict(vcomp2)
        self.hcomp2 = dict(hcomp2)
        self.id1 = list(id1)
        self.id2 = list(id2)
        self.assoc = dict(assoc)
        self.assoc_inv = dict(assoc_inv)
        self.lunit = list(lunit)
        self.lunit_inv = list(lunit_inv)
        self.runit = list(runit)
        self.runit_inv = list(runit_inv)
        self.names = names or {}
        self._validate()

    def s1(self, f):
        return self.onecells[f][0]

    def t1(self, f):
        return self.onecells[f][1]

    def s2(self, a):
        return self.twocells[a][0]

    def t2(self, a):
        return self.twocells[a][1]

    def then1(self, f, g):
        try:
            return self.comp1[(f, g)]
        except KeyError:
            raise NonComposable(f"1-cells {f} and {g} not composable") from None

    def vert(self, a, b):
        try:
            return self.vcomp2[(a, b)]
        except KeyError:
            raise NonComposable(f"2-cells {a} and {b} not vertically composable") from None

    def vert_list(self, onecell, cells):
        out = self.id2[onecell]
        for a in cells:
            out = self.vert(out, a)
        return out

    def horiz(self, a, b):
        try:
            return self.hcomp2[(a, b)]
        except KeyError:
            raise NonComposable(f"2-cells {a} and {b} not horizontally composable") from None

    def name_of(self, kind, index):
        kind_names = self.names.get(kind)
        if kind_names is not None and 0 <= index < len(kind_names):
            return kind_names[index]
        return f"{kind}{index}"

    def _validate(self):
        n1, n2 = len(self.onecells), len(self.twocells)
        for x, (f, g) in enumerate(self.twocells):
            _check_index(f, n1, f"2-cell {x} source")
            _check_index(g, n1, f"2-cell {x} target")
            if self.onecells[f] != self.onecells[g]:
                raise StructureError(f"2-cell {x} is not globular")
        for a, i in enumerate(self.id1):
            if self.onecells[i] != (a, a):
                raise StructureError(f"identity 1-cell of object {a} has wrong boundary")
        for f, i in enumerate(self.id2):
            if self.twocells[i] != (f, f):
                raise StructureError(f"identity 2-cell of 1-cell {f} has wrong boundary")
        for (f, g), h in self.comp1.items():
            if self.onecells[h] != (self.s1(f), self.t1(g)):
                raise StructureError(f"comp1 entry {(f, g)} has wrong boundary")
        for (a, b), c in self.vcomp2.items():
            if self.twocells[c] != (self.s2(a), self.t2(b)):
                raise StructureError(f"vcomp2 entry {(a, b)} has wrong boundary")
        for (a, b), c in self.hcomp2.items():
            expect = (self.then1(self.s2(a), self.s2(b)), self.then1(self.t2(a), self.t2(b)))
            if self.twocells[c] != expect:
                raise StructureError(f"hcomp2 entry {(a, b)} has wrong boundary")
        for (f, g, h), a in self.assoc.items():
            lhs = self.then1(self.then1(f, g), h)
            rhs = self.then1(f, self.then1(g, h))
            if self.twocells[a] != (lhs, rhs):
                raise StructureError(f"associator at {(f, g, h)} has wrong boundary")
        for f in range(n1):
            if self.twocells[self.lunit[f]] != (self.then1(self.id1[self.s1(f)], f), f):
                raise StructureError(f"left unitor at {f} has wrong boundary")
            if self.twocells[self.runit[f]] != (self.then1(f, self.id1[self.t1(f)]), f):
                raise StructureError(f"right unitor at {f} has wrong boundary")


def bicategory_from_two_category(t) -> Bicategory:
    id_assoc = {
        (f, g, h): t.id2[t.then1(t.then1(f, g), h)]
        for (f, g) in t.comp1
        for h in range(len(t.onecells))
        if t.t1(g) == t.s1(h)
    }
    return Bicategory(
        t.n_objects,
        t.onecells,
        t.twocells,
        t.comp1,
        t.vcomp2,
        t.hcomp2,
        t.id1,
        t.id2,
        id_assoc,
        dict(id_assoc),
        list(t.id2),
        list(t.id2),
        list(t.id2),
        list(t.id2),
        names=t.names,
    )


def check_bicategory(b: Bicategory, budget: Budget | None = None) -> AxiomReport:
    col = Collector("bicategory", budget)
    n1, n2 = len(b.onecells), len(b.twocells)

    for (x, y) in sorted(b.vcomp2):
        for z in range(n2):
            if b.t2(y) == b.s2(z):
                col.eq(
                    "hom-category-associativity",
                    (("twocell", x), ("twocell", y), ("twocell", z)),
                    b.vert(b.vert(x, y), z),
                    b.vert(x, b.vert(y, z)),
                )
    for x in range(n2):
        col.eq("hom-category-unit", (("twocell", x),), b.vert(b.id2[b.s2(x)], x), x)
        col.eq("hom-category-unit", (("twocell", x),), b.vert(x, b.id2[b.t2(x)]), x)

    for (f, g) in sorted(b.comp1):
        col.eq(
            "composition-identity-functoriality",
            (("onecell", f), ("onecell", g)),
            b.id2[b.then1(f, g)],
            b.horiz(b.id2[f], b.id2[g]),
        )
    for (x, y) in sorted(b.hcomp2):
        for x2 in range(n2):
            if b.t2(x) != b.s2(x2):
                continue
            for y2 in range(n2):
                if b.t2(y) == b.s2(y2):
                    col.eq(
                        "composition-interchange",
                        (("twocell", x), ("twocell", y), ("twocell", x2), ("twocell", y2)),
                        b.horiz(b.vert(x, x2), b.vert(y, y2)),
                        b.vert(b.horiz(x, y), b.horiz(x2, y2)),
                    )

    def invertible(axiom, witness, cell, inv):
        col.eq(axiom, witness, b.vert(cell, inv), b.id2[b.s2(cell)])
        col.eq(axiom, witness, b.vert(inv, cell), b.id2[b.t2(cell)])

    for key in sorted(b.assoc):
        invertible("associator-invertibility", tuple(("onecell", x) for x in key), b.assoc[key], b.assoc_inv[key])
    for f in range(n1):
        invertible("left-unitor-invertibility", (("onecell", f),), b.lunit[f], b.lunit_inv[f])
        invertible("right-unitor-invertibility", (("onecell", f),), b.runit[f], b.runit_inv[f])

    for (x, y) in sorted(b.hcomp2):
        for z in range(n2):
            if b.t1(b.s2(y)) != b.s1(b.s2(z)):
                continue
            tri = (b.s2(x), b.s2(y), b.s2(z))
            bot = (b.t2(x), b.t2(y), b.t2(z))
            col.eq(
                "associator-naturality",
                (("twocell", x), ("twocell", y), ("twocell", z)),
                b.vert(b.assoc[tri], b.horiz(x, b.horiz(y, z))),
                b.vert(b.horiz(b.horiz(x, y), z), b.assoc[bot]),
            )
    for x in range(n2):
        f, g = b.twocells[x]
        col.eq(
            "left-unitor-naturality",
            (("twocell", x),),
            b.vert(b.lunit[f], x),
            b.vert(b.horiz(b.id2[b.id1[b.s1(f)]], x), b.lunit[g]),
        )
        col.eq(
            "right-unitor-naturality",
            (("twocell", x),),
            b.vert(b.runit[f], x),
            b.vert(b.horiz(x, b.id2[b.id1[b.t1(f)]]), b.runit[g]),
        )

    for (f, g) in sorted(b.comp1):
        for h in range(n1):
            if b.t1(g) != b.s1(h):
                continue
            for k in range(n1):
                if b.t1(h) != b.s1(k):
                    continue
                col.eq(
                    "pentagon",
                    (("onecell", f), ("onecell", g), ("onecell", h), ("onecell", k)),
                    b.vert(b.assoc[(b.then1(f, g), h, k)], b.assoc[(f, g, b.then1(h, k))]),
                    b.vert_list(
                        b.then1(b.then1(b.then1(f, g), h), k),
                        [
                            b.horiz(b.assoc[(f, g, h)], b.id2[k]),
                            b.assoc[(f, b.then1(g, h), k)],
                            b.horiz(b.id2[f], b.assoc[(g, h, k)]),
                        ],
                    ),
                )
    for (f, g) in sorted(b.comp1):
        mid = b.t1(f)
        col.eq(
            "triangle",
            (("onecell", f), ("onecell", g)),
            b.vert(b.assoc[(f, b.id1[mid], g)], b.horiz(b.id2[f], b.lunit[g])),
            b.horiz(b.runit[f], b.id2[g]),
        )
    return col.done()
