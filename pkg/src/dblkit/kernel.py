"""Finite strict double categories given by total composition tables.

Cells are dense integer ids, one id space per kind (``object``, ``hcell``,
``vcell``, ``square``); cell equality is id equality.  All composition tables
are left-argument-first: ``hcomp1[(f, g)]`` is the composite "f then g",
defined exactly when ``tgt(f) == src(g)``, and likewise for vertical
composition and both square compositions.  Diagrams are therefore read left
to right and top to bottom.

Square boundaries use the compass convention::

            top (hcell)
         +--------------+
    left |              | right        left, right: vcells
         +--------------+
           bottom (hcell)

with matching corners: ``src(top) == src(left)``, ``tgt(top) == src(right)``,
``src(bottom) == tgt(left)``, ``tgt(bottom) == tgt(right)``.

``sq_vid[f]`` is the vertical identity square on an hcell f (the unit for
vertical pasting), ``sq_hid[u]`` the horizontal identity square on a vcell u
(the unit for horizontal pasting).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

from .report import AxiomReport, Budget, Collector

OBJECT, HCELL, VCELL, SQUARE = "object", "hcell", "vcell", "square"


class StructureError(ValueError):
    """Malformed finite presentation (bad boundary, bad table key, ...)."""


class NonComposable(StructureError):
    """A pasting was attempted on cells whose boundaries do not match."""


def _check_index(value, limit, what):
    if not isinstance(value, int) or not 0 <= value < limit:
        raise StructureError(f"{what}: index {value!r} out of range 0..{limit - 1}")


# ---------------------------------------------------------------------------
# finite categories (input to the commuting-square construction)


class FiniteCategory:
    """A finite category: dense morphism ids, total composition table.

    ``comp[(f, g)]`` is "f then g", present exactly for composable pairs.
    ``ids[A]`` is the identity morphism on object A.
    """

    def __init__(self, n_objects, mor, comp, ids, names=None):
        self.n_objects = int(n_objects)
        self.mor = [tuple(m) for m in mor]
        self.comp = dict(comp)
        self.ids = list(ids)
        self.names = names or {}
        self._validate()

    def src(self, f):
        return self.mor[f][0]

    def tgt(self, f):
        return self.mor[f][1]

    def then(self, f, g):
        try:
            return self.comp[(f, g)]
        except KeyError:
            raise NonComposable(f"morphisms {f} and {g} are not composable") from None

    def _validate(self):
        if len(self.ids) != self.n_objects:
            raise StructureError("one identity morphism per object is required")
        for f, (a, b) in enumerate(self.mor):
            _check_index(a, self.n_objects, f"morphism {f} source")
            _check_index(b, self.n_objects, f"morphism {f} target")
        for a, i in enumerate(self.ids):
            _check_index(i, len(self.mor), f"identity of object {a}")
            if self.mor[i] != (a, a):
                raise StructureError(f"identity of object {a} has boundary {self.mor[i]}")
        composable = {
            (f, g)
            for f in range(len(self.mor))
            for g in range(len(self.mor))
            if self.tgt(f) == self.src(g)
        }
        if set(self.comp) != composable:
            extra = set(self.comp) - composable
            missing = composable - set(self.comp)
            raise StructureError(
                f"composition table keys wrong; extra={sorted(extra)} missing={sorted(missing)}"
            )
        for (f, g), h in self.comp.items():
            _check_index(h, len(self.mor), f"composite of {(f, g)}")
            if self.mor[h] != (self.src(f), self.tgt(g)):
                raise StructureError(f"composite of {(f, g)} has wrong boundary")

    def check(self, budget=None) -> AxiomReport:
        """Associativity and unit laws, by enumeration."""
        col = Collector("finite-category", budget)
        n = len(self.mor)
        for f in range(n):
            col.eq("left-unit", (("mor", f),), self.then(self.ids[self.src(f)], f), f)
            col.eq("right-unit", (("mor", f),), self.then(f, self.ids[self.tgt(f)]), f)
        for (f, g) in sorted(self.comp):
            for h in range(n):
                if self.tgt(g) == self.src(h):
                    col.eq(
                        "associativity",
                        (("mor", f), ("mor", g), ("mor", h)),
                        self.then(self.then(f, g), h),
                        self.then(f, self.then(g, h)),
                    )
        return col.done()


# ---------------------------------------------------------------------------
# strict double categories


class DoubleCategory:
    """Finite strict double category with total composition tables."""

    def __init__(
        self,
        n_objects,
        hcells,
        vcells,
        squares,
        hcomp1,
        vcomp1,
        hcomp2,
        vcomp2,
        hid,
        vid,
        sq_vid,
        sq_hid,
        names=None,
        validate=True,
    ):
        self.n_objects = int(n_objects)
        self.hcells = [tuple(x) for x in hcells]
        self.vcells = [tuple(x) for x in vcells]
        self.squares = [tuple(x) for x in squares]
        self.hcomp1 = dict(hcomp1)
        self.vcomp1 = dict(vcomp1)
        self.hcomp2 = dict(hcomp2)
        self.vcomp2 = dict(vcomp2)
        self.hid = list(hid)
        self.vid = list(vid)
        self.sq_vid = list(sq_vid)
        self.sq_hid = list(sq_hid)
        self.names = names or {}
        self._sq_by_top = None
        self._sq_by_tl = None
        if validate:
            self._validate()

    # -- boundary accessors

    def hs(self, f):
        return self.hcells[f][0]

    def ht(self, f):
        return self.hcells[f][1]

    def vs(self, u):
        return self.vcells[u][0]

    def vt(self, u):
        return self.vcells[u][1]

    def top(self, s):
        return self.squares[s][0]

    def bottom(self, s):
        return self.squares[s][1]

    def left(self, s):
        return self.squares[s][2]

    def right(self, s):
        return self.squares[s][3]

    # -- composition

    def hcomp(self, f, g):
        try:
            return self.hcomp1[(f, g)]
        except KeyError:
            raise NonComposable(f"hcells {f}:{self.hcells[f]} then {g}:{self.hcells[g]}") from None

    def vcomp(self, u, v):
        try:
            return self.vcomp1[(u, v)]
        except KeyError:
            raise NonComposable(f"vcells {u}:{self.vcells[u]} then {v}:{self.vcells[v]}") from None

    def hpaste(self, a, b):
        try:
            return self.hcomp2[(a, b)]
        except KeyError:
            raise NonComposable(
                f"squares {a}:{self.squares[a]} | {b}:{self.squares[b]} do not paste horizontally"
            ) from None

    def vpaste(self, a, b):
        try:
            return self.vcomp2[(a, b)]
        except KeyError:
            raise NonComposable(
                f"squares {a}:{self.squares[a]} / {b}:{self.squares[b]} do not paste vertically"
            ) from None

    def hrow(self, *squares):
        """Left-to-right horizontal pasting of one or more squares."""
        out = squares[0]
        for s in squares[1:]:
            out = self.hpaste(out, s)
        return out

    def vcol(self, *squares):
        """Top-to-bottom vertical pasting of one or more squares."""
        out = squares[0]
        for s in squares[1:]:
            out = self.vpaste(out, s)
        return out

    def hcomp_list(self, obj, cells):
        """Composite of a possibly empty chain of hcells starting at obj."""
        out = self.hid[obj]
        for f in cells:
            out = self.hcomp(out, f)
        return out

    def vcomp_list(self, obj, cells):
        out = self.vid[obj]
        for u in cells:
            out = self.vcomp(out, u)
        return out

    def is_vglobular(self, s):
        t, b, l, r = self.squares[s]
        return l == self.vid[self.hs(t)] and r == self.vid[self.ht(t)]

    def is_hglobular(self, s):
        t, b, l, r = self.squares[s]
        return t == self.hid[self.vs(l)] and b == self.hid[self.vt(l)]

    # -- derived indexes

    def squares_by_top(self):
        if self._sq_by_top is None:
            by = {}
            for s, (t, _, _, _) in enumerate(self.squares):
                by.setdefault(t, []).append(s)
            self._sq_by_top = by
        return self._sq_by_top

    def squares_by_top_left(self):
        if self._sq_by_tl is None:
            by = {}
            for s, (t, _, l, _) in enumerate(self.squares):
                by.setdefault((t, l), []).append(s)
            self._sq_by_tl = by
        return self._sq_by_tl

    def name_of(self, kind, index):
        kind_names = self.names.get(kind)
        if kind_names is not None and 0 <= index < len(kind_names):
            return kind_names[index]
        return f"{kind}{index}"

    def __repr__(self):
        return (
            f"DoubleCategory(objects={self.n_objects}, hcells={len(self.hcells)}, "
            f"vcells={len(self.vcells)}, squares={len(self.squares)})"
        )

    # -- structural validation

    def _validate(self):
        nh, nv, ns = len(self.hcells), len(self.vcells), len(self.squares)
        for f, (a, b) in enumerate(self.hcells):
            _check_index(a, self.n_objects, f"hcell {f} source")
            _check_index(b, self.n_objects, f"hcell {f} target")
        for u, (a, b) in enumerate(self.vcells):
            _check_index(a, self.n_objects, f"vcell {u} source")
            _check_index(b, self.n_objects, f"vcell {u} target")
        for s, (t, b, l, r) in enumerate(self.squares):
            _check_index(t, nh, f"square {s} top")
            _check_index(b, nh, f"square {s} bottom")
            _check_index(l, nv, f"square {s} left")
            _check_index(r, nv, f"square {s} right")
            ok = (
                self.hs(t) == self.vs(l)
                and self.ht(t) == self.vs(r)
                and self.hs(b) == self.vt(l)
                and self.ht(b) == self.vt(r)
            )
            if not ok:
                raise StructureError(f"square {s} has mismatched corners {(t, b, l, r)}")
        if len(self.hid) != self.n_objects or len(self.vid) != self.n_objects:
            raise StructureError("one horizontal and one vertical identity per object required")
        for a in range(self.n_objects):
            if self.hcells[self.hid[a]] != (a, a):
                raise StructureError(f"horizontal identity of object {a} has wrong boundary")
            if self.vcells[self.vid[a]] != (a, a):
                raise StructureError(f"vertical identity of object {a} has wrong boundary")
        if len(self.sq_vid) != nh or len(self.sq_hid) != nv:
            raise StructureError("one identity square per hcell and per vcell required")
        for f, s in enumerate(self.sq_vid):
            _check_index(s, ns, f"identity square on hcell {f}")
            expect = (f, f, self.vid[self.hs(f)], self.vid[self.ht(f)])
            if self.squares[s] != expect:
                raise StructureError(f"identity square on hcell {f} has boundary {self.squares[s]}")
        for u, s in enumerate(self.sq_hid):
            _check_index(s, ns, f"identity square on vcell {u}")
            expect = (self.hid[self.vs(u)], self.hid[self.vt(u)], u, u)
            if self.squares[s] != expect:
                raise StructureError(f"identity square on vcell {u} has boundary {self.squares[s]}")

        # table keys must be exactly the composable pairs (an entry keyed on a
        # non-composable pair is a structural error naming the entry); value
        # boundary correctness, by contrast, is a checkable law so that a
        # flipped entry surfaces as a named violation, not a crash
        composable_h1 = {
            (f, g) for f in range(nh) for g in range(nh) if self.ht(f) == self.hs(g)
        }
        if set(self.hcomp1) != composable_h1:
            bad = sorted(set(self.hcomp1) ^ composable_h1)
            raise StructureError(f"hcomp1 keys must be the composable hcell pairs; first bad: {bad[:3]}")
        for key, h in self.hcomp1.items():
            _check_index(h, nh, f"hcomp1 entry {key}")
        composable_v1 = {
            (u, v) for u in range(nv) for v in range(nv) if self.vt(u) == self.vs(v)
        }
        if set(self.vcomp1) != composable_v1:
            bad = sorted(set(self.vcomp1) ^ composable_v1)
            raise StructureError(f"vcomp1 keys must be the composable vcell pairs; first bad: {bad[:3]}")
        for key, w in self.vcomp1.items():
            _check_index(w, nv, f"vcomp1 entry {key}")
        composable_h2 = {
            (a, b)
            for a in range(ns)
            for b in range(ns)
            if self.right(a) == self.left(b)
        }
        if set(self.hcomp2) != composable_h2:
            bad = sorted(set(self.hcomp2) ^ composable_h2)
            raise StructureError(f"hcomp2 keys must be the pastable square pairs; first bad: {bad[:3]}")
        for key, c in self.hcomp2.items():
            _check_index(c, ns, f"hcomp2 entry {key}")
        composable_v2 = {
            (a, b)
            for a in range(ns)
            for b in range(ns)
            if self.bottom(a) == self.top(b)
        }
        if set(self.vcomp2) != composable_v2:
            bad = sorted(set(self.vcomp2) ^ composable_v2)
            raise StructureError(f"vcomp2 keys must be the pastable square pairs; first bad: {bad[:3]}")
        for key, c in self.vcomp2.items():
            _check_index(c, ns, f"vcomp2 entry {key}")

    def table_boundary_violations(self, col) -> None:
        """Record a violation for every table entry whose value has the wrong
        boundary.  Part of every checker run over this structure."""
        for (f, g), h in sorted(self.hcomp1.items()):
            col.eq(
                "hcomp1-boundary",
                ((HCELL, f), (HCELL, g)),
                self.hcells[h],
                (self.hs(f), self.ht(g)),
            )
        for (u, v), w in sorted(self.vcomp1.items()):
            col.eq(
                "vcomp1-boundary",
                ((VCELL, u), (VCELL, v)),
                self.vcells[w],
                (self.vs(u), self.vt(v)),
            )
        for (a, b), c in sorted(self.hcomp2.items()):
            col.eq(
                "hcomp2-boundary",
                ((SQUARE, a), (SQUARE, b)),
                self.squares[c],
                (
                    self.hcomp1[(self.top(a), self.top(b))],
                    self.hcomp1[(self.bottom(a), self.bottom(b))],
                    self.left(a),
                    self.right(b),
                ),
            )
        for (a, b), c in sorted(self.vcomp2.items()):
            col.eq(
                "vcomp2-boundary",
                ((SQUARE, a), (SQUARE, b)),
                self.squares[c],
                (
                    self.top(a),
                    self.bottom(b),
                    self.vcomp1[(self.left(a), self.left(b))],
                    self.vcomp1[(self.right(a), self.right(b))],
                ),
            )


# ---------------------------------------------------------------------------
# the exhaustive checker


def _chunks(seq, n):
    seq = list(seq)
    if n <= 1 or len(seq) < 2 * n:
        return [seq]
    size = (len(seq) + n - 1) // n
    return [seq[i : i + size] for i in range(0, len(seq), size)]


def check_double_category(d: DoubleCategory, budget: Budget | None = None, jobs: int = 1) -> AxiomReport:
    """Verify every strict double-category law by exhaustive enumeration.

    Violations carry the law name and a minimal witness tuple; enumeration is
    lexicographic in cell ids so reports are deterministic.  With ``jobs > 1``
    the interchange grid (the dominant cost) is partitioned across worker
    threads and the partial reports are merged back in witness order.
    """
    col = Collector("double-category", budget)
    nh, nv = len(d.hcells), len(d.vcells)
    d.table_boundary_violations(col)
    if col.report.violations:
        # laws cannot be evaluated over boundary-incoherent tables
        col.assume("equational laws not evaluated: table entries have wrong boundaries")
        return col.done()

    for (f, g) in sorted(d.hcomp1):
        for h in range(nh):
            if d.ht(g) == d.hs(h):
                col.eq(
                    "hcomp1-associativity",
                    ((HCELL, f), (HCELL, g), (HCELL, h)),
                    d.hcomp(d.hcomp(f, g), h),
                    d.hcomp(f, d.hcomp(g, h)),
                )
    for f in range(nh):
        col.eq("hcomp1-left-unit", ((HCELL, f),), d.hcomp(d.hid[d.hs(f)], f), f)
        col.eq("hcomp1-right-unit", ((HCELL, f),), d.hcomp(f, d.hid[d.ht(f)]), f)
    for (u, v) in sorted(d.vcomp1):
        for w in range(nv):
            if d.vt(v) == d.vs(w):
                col.eq(
                    "vcomp1-associativity",
                    ((VCELL, u), (VCELL, v), (VCELL, w)),
                    d.vcomp(d.vcomp(u, v), w),
                    d.vcomp(u, d.vcomp(v, w)),
                )
    for u in range(nv):
        col.eq("vcomp1-left-unit", ((VCELL, u),), d.vcomp(d.vid[d.vs(u)], u), u)
        col.eq("vcomp1-right-unit", ((VCELL, u),), d.vcomp(u, d.vid[d.vt(u)]), u)

    by_left = {}
    for s, (_, _, l, _) in enumerate(d.squares):
        by_left.setdefault(l, []).append(s)
    for (a, b) in sorted(d.hcomp2):
        for c in by_left.get(d.right(b), ()):
            col.eq(
                "hcomp2-associativity",
                ((SQUARE, a), (SQUARE, b), (SQUARE, c)),
                d.hpaste(d.hpaste(a, b), c),
                d.hpaste(a, d.hpaste(b, c)),
            )
    for s in range(len(d.squares)):
        col.eq("hcomp2-unit", ((SQUARE, s),), d.hpaste(d.sq_hid[d.left(s)], s), s)
        col.eq("hcomp2-unit", ((SQUARE, s),), d.hpaste(s, d.sq_hid[d.right(s)]), s)
    by_top = d.squares_by_top()
    for (a, b) in sorted(d.vcomp2):
        for c in by_top.get(d.bottom(b), ()):
            col.eq(
                "vcomp2-associativity",
                ((SQUARE, a), (SQUARE, b), (SQUARE, c)),
                d.vpaste(d.vpaste(a, b), c),
                d.vpaste(a, d.vpaste(b, c)),
            )
    for s in range(len(d.squares)):
        col.eq("vcomp2-unit", ((SQUARE, s),), d.vpaste(d.sq_vid[d.top(s)], s), s)
        col.eq("vcomp2-unit", ((SQUARE, s),), d.vpaste(s, d.sq_vid[d.bottom(s)]), s)

    for (f, g) in sorted(d.hcomp1):
        col.eq(
            "identity-functoriality-h",
            ((HCELL, f), (HCELL, g)),
            d.sq_vid[d.hcomp(f, g)],
            d.hpaste(d.sq_vid[f], d.sq_vid[g]),
        )
    for (u, v) in sorted(d.vcomp1):
        col.eq(
            "identity-functoriality-v",
            ((VCELL, u), (VCELL, v)),
            d.sq_hid[d.vcomp(u, v)],
            d.vpaste(d.sq_hid[u], d.sq_hid[v]),
        )
    for a in range(d.n_objects):
        col.eq(
            "identity-coincidence",
            ((OBJECT, a),),
            d.sq_vid[d.hid[a]],
            d.sq_hid[d.vid[a]],
        )

    # interchange: (a/c) | (b/d) == (a|b) / (c|d) over every 2x2 grid
    by_tl = d.squares_by_top_left()

    def interchange_chunk(pairs):
        sub = Collector("double-category", Budget(col.budget.max_tuples))
        for (a, b) in pairs:
            for c in by_top.get(d.bottom(a), ()):
                for one in by_tl.get((d.bottom(b), d.right(c)), ()):
                    sub.eq(
                        "interchange",
                        ((SQUARE, a), (SQUARE, b), (SQUARE, c), (SQUARE, one)),
                        d.hpaste(d.vpaste(a, c), d.vpaste(b, one)),
                        d.vpaste(d.hpaste(a, b), d.hpaste(c, one)),
                    )
        return sub

    pair_chunks = _chunks(sorted(d.hcomp2), jobs)
    if len(pair_chunks) == 1:
        subs = [interchange_chunk(pair_chunks[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(pair_chunks)) as pool:
            subs = list(pool.map(interchange_chunk, pair_chunks))
    for sub in subs:
        col.report.absorb(sub.done())
    return col.done()


# ---------------------------------------------------------------------------
# constructions


def same_category(a: DoubleCategory, b: DoubleCategory) -> bool:
    """Value equality of finite presentations (cells and all tables).

    Distinct construction calls produce distinct objects; operations that
    need matching categories accept either the same object or the same
    presentation."""
    if a is b:
        return True
    return (
        a.n_objects == b.n_objects
        and a.hcells == b.hcells
        and a.vcells == b.vcells
        and a.squares == b.squares
        and a.hcomp1 == b.hcomp1
        and a.vcomp1 == b.vcomp1
        and a.hcomp2 == b.hcomp2
        and a.vcomp2 == b.vcomp2
        and a.hid == b.hid
        and a.vid == b.vid
        and a.sq_vid == b.sq_vid
        and a.sq_hid == b.sq_hid
    )


def terminal_double_category() -> DoubleCategory:
    return DoubleCategory(
        1,
        [(0, 0)],
        [(0, 0)],
        [(0, 0, 0, 0)],
        {(0, 0): 0},
        {(0, 0): 0},
        {(0, 0): 0},
        {(0, 0): 0},
        [0],
        [0],
        [0],
        [0],
        names={OBJECT: ["*"], HCELL: ["1"], VCELL: ["1"], SQUARE: ["id"]},
    )


def quintet(c: FiniteCategory) -> DoubleCategory:
    """Double category of commuting squares of a finite category.

    Both hcells and vcells are the morphisms of ``c``; a square with boundary
    (top, bottom, left, right) exists exactly when ``top;right == left;bottom``
    in ``c``, and is unique for its boundary.
    """
    law = c.check()
    if not law.passed:
        raise StructureError("quintet input is not a category: " + law.summary())
    nm = len(c.mor)
    square_list = []
    square_index = {}
    for t in range(nm):
        for l in range(nm):
            if c.src(t) != c.src(l):
                continue
            for r in range(nm):
                if c.src(r) != c.tgt(t):
                    continue
                diag = c.then(t, r)
                for b in range(nm):
                    if (c.src(b), c.tgt(b)) == (c.tgt(l), c.tgt(r)) and c.then(l, b) == diag:
                        square_index[(t, b, l, r)] = len(square_list)
                        square_list.append((t, b, l, r))
    hcomp2 = {}
    vcomp2 = {}
    for i, (t, b, l, r) in enumerate(square_list):
        for j, (t2, b2, l2, r2) in enumerate(square_list):
            if r == l2:
                hcomp2[(i, j)] = square_index[(c.then(t, t2), c.then(b, b2), l, r2)]
            if b == t2:
                vcomp2[(i, j)] = square_index[(t, b2, c.then(l, l2), c.then(r, r2))]
    mor_names = c.names.get("mor")
    names = None
    if mor_names:
        names = {
            OBJECT: [str(a) for a in c.names.get("objects", range(c.n_objects))],
            HCELL: list(mor_names),
            VCELL: list(mor_names),
            SQUARE: [f"[{mor_names[t]}/{mor_names[b]};{mor_names[l]}/{mor_names[r]}]" for (t, b, l, r) in square_list],
        }
    return DoubleCategory(
        c.n_objects,
        list(c.mor),
        list(c.mor),
        square_list,
        dict(c.comp),
        dict(c.comp),
        hcomp2,
        vcomp2,
        list(c.ids),
        list(c.ids),
        [square_index[(f, f, c.ids[c.src(f)], c.ids[c.tgt(f)])] for f in range(nm)],
        [square_index[(c.ids[c.src(u)], c.ids[c.tgt(u)], u, u)] for u in range(nm)],
        names=names,
    )


def product(d1: DoubleCategory, d2: DoubleCategory) -> DoubleCategory:
    """Componentwise product; pair (x, y) gets index ``x * count2 + y``."""

    def pair(i, j, n2):
        return i * n2 + j

    no, nh, nv, ns = (
        d2.n_objects,
        len(d2.hcells),
        len(d2.vcells),
        len(d2.squares),
    )
    hcells = [
        (pair(d1.hs(f), d2.hs(g), no), pair(d1.ht(f), d2.ht(g), no))
        for f in range(len(d1.hcells))
        for g in range(len(d2.hcells))
    ]
    vcells = [
        (pair(d1.vs(u), d2.vs(v), no), pair(d1.vt(u), d2.vt(v), no))
        for u in range(len(d1.vcells))
        for v in range(len(d2.vcells))
    ]
    squares = [
        (
            pair(d1.top(s), d2.top(t), nh),
            pair(d1.bottom(s), d2.bottom(t), nh),
            pair(d1.left(s), d2.left(t), nv),
            pair(d1.right(s), d2.right(t), nv),
        )
        for s in range(len(d1.squares))
        for t in range(len(d2.squares))
    ]
    hcomp1 = {
        (pair(f1, f2, nh), pair(g1, g2, nh)): pair(d1.hcomp1[(f1, g1)], d2.hcomp1[(f2, g2)], nh)
        for (f1, g1) in d1.hcomp1
        for (f2, g2) in d2.hcomp1
    }
    vcomp1 = {
        (pair(u1, v1, nv), pair(u2, v2, nv)): pair(d1.vcomp1[(u1, u2)], d2.vcomp1[(v1, v2)], nv)
        for (u1, u2) in d1.vcomp1
        for (v1, v2) in d2.vcomp1
    }
    hcomp2 = {
        (pair(a1, a2, ns), pair(b1, b2, ns)): pair(d1.hcomp2[(a1, b1)], d2.hcomp2[(a2, b2)], ns)
        for (a1, b1) in d1.hcomp2
        for (a2, b2) in d2.hcomp2
    }
    vcomp2 = {
        (pair(a1, a2, ns), pair(b1, b2, ns)): pair(d1.vcomp2[(a1, b1)], d2.vcomp2[(a2, b2)], ns)
        for (a1, b1) in d1.vcomp2
        for (a2, b2) in d2.vcomp2
    }
    return DoubleCategory(
        d1.n_objects * no,
        hcells,
        vcells,
        squares,
        hcomp1,
        vcomp1,
        hcomp2,
        vcomp2,
        [pair(d1.hid[a], d2.hid[b], nh) for a in range(d1.n_objects) for b in range(no)],
        [pair(d1.vid[a], d2.vid[b], nv) for a in range(d1.n_objects) for b in range(no)],
        [
            pair(d1.sq_vid[f], d2.sq_vid[g], ns)
            for f in range(len(d1.hcells))
            for g in range(len(d2.hcells))
        ],
        [
            pair(d1.sq_hid[u], d2.sq_hid[v], ns)
            for u in range(len(d1.vcells))
            for v in range(len(d2.vcells))
        ],
        names={
            kind: [
                f"({d1.name_of(kind, i)},{d2.name_of(kind, j)})"
                for i in range(cnt1)
                for j in range(cnt2)
            ]
            for kind, cnt1, cnt2 in [
                (OBJECT, d1.n_objects, no),
                (HCELL, len(d1.hcells), nh),
                (VCELL, len(d1.vcells), nv),
                (SQUARE, len(d1.squares), ns),
            ]
        },
    )


def product_pair_index(d1: DoubleCategory, d2: DoubleCategory):
    """Index maps for the product: kind -> ((i, j) -> paired index)."""
    counts = {
        OBJECT: d2.n_objects,
        HCELL: len(d2.hcells),
        VCELL: len(d2.vcells),
        SQUARE: len(d2.squares),
    }
    return {kind: (lambda i, j, n=n: i * n + j) for kind, n in counts.items()}


def pullback_pairs(f, g):
    """Matching cell pairs (per kind, lexicographic) of two functors into a
    common codomain; duck-typed over anything with ob/h/v/sq maps."""
    if not same_category(f.cod, g.cod):
        raise StructureError("pullback requires a common codomain")
    pairs = {}
    pairs[OBJECT] = [
        (a, b)
        for a in range(f.dom.n_objects)
        for b in range(g.dom.n_objects)
        if f.ob(a) == g.ob(b)
    ]
    pairs[HCELL] = [
        (x, y)
        for x in range(len(f.dom.hcells))
        for y in range(len(g.dom.hcells))
        if f.h(x) == g.h(y)
    ]
    pairs[VCELL] = [
        (x, y)
        for x in range(len(f.dom.vcells))
        for y in range(len(g.dom.vcells))
        if f.v(x) == g.v(y)
    ]
    pairs[SQUARE] = [
        (x, y)
        for x in range(len(f.dom.squares))
        for y in range(len(g.dom.squares))
        if f.sq(x) == g.sq(y)
    ]
    return pairs


def pullback(f, g) -> DoubleCategory:
    """Cellwise pullback of two strict functors with a common codomain.

    Cells are matching pairs, composed componentwise.  Raises StructureError
    when the matching pairs are not closed under composition (which happens
    exactly when one of the inputs fails strictness).
    """
    pairs = pullback_pairs(f, g)
    index = {kind: {p: i for i, p in enumerate(ps)} for kind, ps in pairs.items()}
    d1, d2 = f.dom, g.dom

    def look(kind, p, what):
        try:
            return index[kind][p]
        except KeyError:
            raise StructureError(
                f"pullback not closed at {what}: pair {p} does not match; are both functors strict?"
            ) from None

    hcells = [
        (look(OBJECT, (d1.hs(x), d2.hs(y)), "hcell source"), look(OBJECT, (d1.ht(x), d2.ht(y)), "hcell target"))
        for (x, y) in pairs[HCELL]
    ]
    vcells = [
        (look(OBJECT, (d1.vs(x), d2.vs(y)), "vcell source"), look(OBJECT, (d1.vt(x), d2.vt(y)), "vcell target"))
        for (x, y) in pairs[VCELL]
    ]
    squares = [
        (
            look(HCELL, (d1.top(x), d2.top(y)), "square top"),
            look(HCELL, (d1.bottom(x), d2.bottom(y)), "square bottom"),
            look(VCELL, (d1.left(x), d2.left(y)), "square left"),
            look(VCELL, (d1.right(x), d2.right(y)), "square right"),
        )
        for (x, y) in pairs[SQUARE]
    ]
    hcomp1 = {}
    for i, (x1, y1) in enumerate(pairs[HCELL]):
        for j, (x2, y2) in enumerate(pairs[HCELL]):
            if d1.ht(x1) == d1.hs(x2) and d2.ht(y1) == d2.hs(y2):
                hcomp1[(i, j)] = look(HCELL, (d1.hcomp(x1, x2), d2.hcomp(y1, y2)), "hcomp1")
    vcomp1 = {}
    for i, (x1, y1) in enumerate(pairs[VCELL]):
        for j, (x2, y2) in enumerate(pairs[VCELL]):
            if d1.vt(x1) == d1.vs(x2) and d2.vt(y1) == d2.vs(y2):
                vcomp1[(i, j)] = look(VCELL, (d1.vcomp(x1, x2), d2.vcomp(y1, y2)), "vcomp1")
    hcomp2 = {}
    vcomp2 = {}
    for i, (x1, y1) in enumerate(pairs[SQUARE]):
        for j, (x2, y2) in enumerate(pairs[SQUARE]):
            if d1.right(x1) == d1.left(x2) and d2.right(y1) == d2.left(y2):
                hcomp2[(i, j)] = look(SQUARE, (d1.hpaste(x1, x2), d2.hpaste(y1, y2)), "hcomp2")
            if d1.bottom(x1) == d1.top(x2) and d2.bottom(y1) == d2.top(y2):
                vcomp2[(i, j)] = look(SQUARE, (d1.vpaste(x1, x2), d2.vpaste(y1, y2)), "vcomp2")
    return DoubleCategory(
        len(pairs[OBJECT]),
        hcells,
        vcells,
        squares,
        hcomp1,
        vcomp1,
        hcomp2,
        vcomp2,
        [look(HCELL, (d1.hid[a], d2.hid[b]), "hid") for (a, b) in pairs[OBJECT]],
        [look(VCELL, (d1.vid[a], d2.vid[b]), "vid") for (a, b) in pairs[OBJECT]],
        [look(SQUARE, (d1.sq_vid[x], d2.sq_vid[y]), "sq_vid") for (x, y) in pairs[HCELL]],
        [look(SQUARE, (d1.sq_hid[x], d2.sq_hid[y]), "sq_hid") for (x, y) in pairs[VCELL]],
        names={
            kind: [f"({d1.name_of(kind, x)},{d2.name_of(kind, y)})" for (x, y) in ps]
            for kind, ps in pairs.items()
        },
    )


def transpose(d: DoubleCategory) -> DoubleCategory:
    """Swap the horizontal and vertical directions.

    Hcells and vcells trade places, square boundaries are reindexed
    (top, bottom, left, right) -> (left, right, top, bottom), and the two
    square compositions swap.  Involutive on the nose.
    """
    squares = [(l, r, t, b) for (t, b, l, r) in d.squares]
    names = None
    if d.names:
        names = dict(d.names)
        names[HCELL], names[VCELL] = d.names.get(VCELL), d.names.get(HCELL)
        names = {k: v for k, v in names.items() if v is not None}
    return DoubleCategory(
        d.n_objects,
        list(d.vcells),
        list(d.hcells),
        squares,
        dict(d.vcomp1),
        dict(d.hcomp1),
        dict(d.vcomp2),
        dict(d.hcomp2),
        list(d.vid),
        list(d.hid),
        list(d.sq_hid),
        list(d.sq_vid),
        names=names,
    )


# ---------------------------------------------------------------------------
# strict 2-categories and the vertical-identity embedding


class TwoCategory:
    """Finite strict 2-category: objects, 1-cells, globular 2-cells."""

    def __init__(self, n_objects, onecells, twocells, comp1, vcomp2, hcomp2, id1, id2, names=None):
        self.n_objects = int(n_objects)
        self.onecells = [tuple(x) for x in onecells]
        self.twocells = [tuple(x) for x in twocells]
        self.comp1 = dict(comp1)
        self.vcomp2 = dict(vcomp2)
        self.hcomp2 = dict(hcomp2)
        self.id1 = list(id1)
        self.id2 = list(id2)
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
        for f, (a, b) in enumerate(self.onecells):
            _check_index(a, self.n_objects, f"1-cell {f} source")
            _check_index(b, self.n_objects, f"1-cell {f} target")
        for x, (f, g) in enumerate(self.twocells):
            _check_index(f, n1, f"2-cell {x} source")
            _check_index(g, n1, f"2-cell {x} target")
            if self.onecells[f] != self.onecells[g]:
                raise StructureError(f"2-cell {x} is not globular: {f} vs {g}")
        if len(self.id1) != self.n_objects or len(self.id2) != n1:
            raise StructureError("identity 1-cells per object and 2-cells per 1-cell required")
        for a, i in enumerate(self.id1):
            if self.onecells[i] != (a, a):
                raise StructureError(f"identity 1-cell of object {a} has wrong boundary")
        for f, i in enumerate(self.id2):
            if self.twocells[i] != (f, f):
                raise StructureError(f"identity 2-cell of 1-cell {f} has wrong boundary")
        composable1 = {(f, g) for f in range(n1) for g in range(n1) if self.t1(f) == self.s1(g)}
        if set(self.comp1) != composable1:
            raise StructureError("comp1 must be keyed on exactly the composable 1-cell pairs")
        for key, h in self.comp1.items():
            _check_index(h, n1, f"comp1 entry {key}")
        composable_v = {(a, b) for a in range(n2) for b in range(n2) if self.t2(a) == self.s2(b)}
        if set(self.vcomp2) != composable_v:
            raise StructureError("vcomp2 must be keyed on exactly the vertically composable pairs")
        for key, c in self.vcomp2.items():
            _check_index(c, n2, f"vcomp2 entry {key}")
        composable_h = {
            (a, b)
            for a in range(n2)
            for b in range(n2)
            if self.t1(self.s2(a)) == self.s1(self.s2(b))
        }
        if set(self.hcomp2) != composable_h:
            raise StructureError("hcomp2 must be keyed on exactly the horizontally composable pairs")
        for key, c in self.hcomp2.items():
            _check_index(c, n2, f"hcomp2 entry {key}")

    def table_boundary_violations(self, col) -> None:
        for (f, g), h in sorted(self.comp1.items()):
            col.eq(
                "comp1-boundary",
                (("onecell", f), ("onecell", g)),
                self.onecells[h],
                (self.s1(f), self.t1(g)),
            )
        for (a, b), c in sorted(self.vcomp2.items()):
            col.eq(
                "vcomp2-boundary",
                (("twocell", a), ("twocell", b)),
                self.twocells[c],
                (self.s2(a), self.t2(b)),
            )
        for (a, b), c in sorted(self.hcomp2.items()):
            col.eq(
                "hcomp2-boundary",
                (("twocell", a), ("twocell", b)),
                self.twocells[c],
                (self.then1(self.s2(a), self.s2(b)), self.then1(self.t2(a), self.t2(b))),
            )


def check_two_category(t: TwoCategory, budget: Budget | None = None) -> AxiomReport:
    col = Collector("two-category", budget)
    n1, n2 = len(t.onecells), len(t.twocells)
    t.table_boundary_violations(col)
    if col.report.violations:
        col.assume("equational laws not evaluated: table entries have wrong boundaries")
        return col.done()
    for (f, g) in sorted(t.comp1):
        for h in range(n1):
            if t.t1(g) == t.s1(h):
                col.eq(
                    "comp1-associativity",
                    (("onecell", f), ("onecell", g), ("onecell", h)),
                    t.then1(t.then1(f, g), h),
                    t.then1(f, t.then1(g, h)),
                )
    for f in range(n1):
        col.eq("comp1-left-unit", (("onecell", f),), t.then1(t.id1[t.s1(f)], f), f)
        col.eq("comp1-right-unit", (("onecell", f),), t.then1(f, t.id1[t.t1(f)]), f)
    for (a, b) in sorted(t.vcomp2):
        for c in range(n2):
            if t.t2(b) == t.s2(c):
                col.eq(
                    "vcomp2-associativity",
                    (("twocell", a), ("twocell", b), ("twocell", c)),
                    t.vert(t.vert(a, b), c),
                    t.vert(a, t.vert(b, c)),
                )
    for a in range(n2):
        col.eq("vcomp2-unit", (("twocell", a),), t.vert(t.id2[t.s2(a)], a), a)
        col.eq("vcomp2-unit", (("twocell", a),), t.vert(a, t.id2[t.t2(a)]), a)
    for (a, b) in sorted(t.hcomp2):
        for c in range(n2):
            if t.t1(t.s2(b)) == t.s1(t.s2(c)):
                col.eq(
                    "hcomp2-associativity",
                    (("twocell", a), ("twocell", b), ("twocell", c)),
                    t.horiz(t.horiz(a, b), c),
                    t.horiz(a, t.horiz(b, c)),
                )
    for a in range(n2):
        col.eq(
            "hcomp2-unit",
            (("twocell", a),),
            t.horiz(t.id2[t.id1[t.s1(t.s2(a))]], a),
            a,
        )
        col.eq(
            "hcomp2-unit",
            (("twocell", a),),
            t.horiz(a, t.id2[t.id1[t.t1(t.s2(a))]]),
            a,
        )
    for (f, g) in sorted(t.comp1):
        col.eq(
            "identity-2-functoriality",
            (("onecell", f), ("onecell", g)),
            t.id2[t.then1(f, g)],
            t.horiz(t.id2[f], t.id2[g]),
        )
    for (a, b) in sorted(t.hcomp2):
        for a2 in range(n2):
            if t.t2(a) != t.s2(a2):
                continue
            for b2 in range(n2):
                if t.t2(b) == t.s2(b2):
                    col.eq(
                        "interchange",
                        (("twocell", a), ("twocell", b), ("twocell", a2), ("twocell", b2)),
                        t.horiz(t.vert(a, a2), t.vert(b, b2)),
                        t.vert(t.horiz(a, b), t.horiz(a2, b2)),
                    )
    return col.done()


def embed_two_category(t: TwoCategory) -> DoubleCategory:
    """Strict double category whose vcells are all identities and whose
    squares are the 2-cells of ``t``, placed vertically globular.  Injective
    on every kind of cell; rejected when ``t`` fails the strict laws."""
    law = check_two_category(t)
    if not law.passed:
        raise StructureError("embedding input is not a strict 2-category: " + law.summary())
    n1 = len(t.onecells)
    vcells = [(a, a) for a in range(t.n_objects)]
    vid = list(range(t.n_objects))
    squares = [(f, g, t.s1(f), t.t1(f)) for (f, g) in t.twocells]
    vcomp1 = {(a, a): a for a in range(t.n_objects)}
    vcomp2 = dict(t.vcomp2)
    hcomp2 = dict(t.hcomp2)
    return DoubleCategory(
        t.n_objects,
        list(t.onecells),
        vcells,
        squares,
        dict(t.comp1),
        vcomp1,
        hcomp2,
        vcomp2,
        list(t.id1),
        vid,
        list(t.id2),
        [t.id2[t.id1[a]] for a in range(t.n_objects)],
        names={
            OBJECT: [t.name_of("objects", a) for a in range(t.n_objects)],
            HCELL: [t.name_of("onecell", f) for f in range(n1)],
            VCELL: [f"1^{t.name_of('objects', a)}" for a in range(t.n_objects)],
            SQUARE: [t.name_of("twocell", x) for x in range(len(t.twocells))],
        },
    )


def horizontal_two_category(d: DoubleCategory) -> TwoCategory:
    """Objects and hcells of ``d`` with the vertically globular squares as
    2-cells.  Applied after :func:`embed_two_category` this recovers the
    input cell for cell."""
    keep = [s for s in range(len(d.squares)) if d.is_vglobular(s)]
    reindex = {s: i for i, s in enumerate(keep)}
    twocells = [(d.top(s), d.bottom(s)) for s in keep]
    vcomp2 = {
        (reindex[a], reindex[b]): reindex[c]
        for (a, b), c in d.vcomp2.items()
        if a in reindex and b in reindex
    }
    hcomp2 = {
        (reindex[a], reindex[b]): reindex[c]
        for (a, b), c in d.hcomp2.items()
        if a in reindex and b in reindex
    }
    return TwoCategory(
        d.n_objects,
        list(d.hcells),
        twocells,
        dict(d.hcomp1),
        vcomp2,
        hcomp2,
        list(d.hid),
        [reindex[d.sq_vid[f]] for f in range(len(d.hcells))],
        names={
            "objects": [d.name_of(OBJECT, a) for a in range(d.n_objects)],
            "onecell": [d.name_of(HCELL, f) for f in range(len(d.hcells))],
            "twocell": [d.name_of(SQUARE, s) for s in keep],
        },
    )
