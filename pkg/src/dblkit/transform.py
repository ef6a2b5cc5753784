"""Pseudonatural transformations between double pseudofunctors.

Four flavours live here.  A horizontal transformation has hcell components
and, per hcell f of the domain, an invertible comparison square

    delta[f] : F(f).alpha(B)  =>  alpha(A).G(f)        (vertically globular)

next to the naturality square ``nat[u]`` at each vcell.  Vertical
transformations are the transpose notion and every vertical-side check or
construction here literally transposes and reuses the horizontal one.  A
coupled transformation glues one of each along two extra square families

    t[f] : (F(f).alpha1(B)  =>  G(f))   with left side alpha0(A)
    r[u] : (alpha1(A) => 1)             with left side F(u);alpha0(A')

and a theta transformation generates t and r from a single square per
object.  All composites below are eager pastings into the codomain's tables;
they fail loudly on any boundary mismatch.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .kernel import HCELL, OBJECT, SQUARE, VCELL, DoubleCategory, StructureError, same_category, transpose
from .functors import DoublePseudoFunctor, conj_v, pseudo_equal, transpose_pseudo
from .report import AxiomReport, Budget, Collector


@dataclass
class HorizontalPNT:
    """Horizontal pseudonatural transformation F => G."""

    F: DoublePseudoFunctor
    G: DoublePseudoFunctor
    comp: tuple  # per object: hcell F(A) -> G(A)
    nat: tuple  # per vcell u: square (top comp[A], bottom comp[A'], left F(u), right G(u))
    delta: tuple  # per hcell f: globular square F(f).comp[B] => comp[A].G(f)
    delta_inv: dict = field(default_factory=dict)  # optional stored inverses

    def __post_init__(self):
        self.comp = tuple(self.comp)
        self.nat = tuple(self.nat)
        self.delta = tuple(self.delta)
        _check_pnt_boundaries(self, horizontal=True)

    @property
    def strong(self) -> bool:
        return set(self.delta_inv) == set(range(len(self.delta)))


@dataclass
class VerticalPNT:
    """Vertical pseudonatural transformation F => G (transpose flavour)."""

    F: DoublePseudoFunctor
    G: DoublePseudoFunctor
    comp: tuple  # per object: vcell F(A) -> G(A)
    nat: tuple  # per hcell f: square (top F(f), bottom G(f), left comp[A], right comp[B])
    delta: tuple  # per vcell u: globular square F(u);comp[A'] => comp[A];G(u)
    delta_inv: dict = field(default_factory=dict)

    def __post_init__(self):
        self.comp = tuple(self.comp)
        self.nat = tuple(self.nat)
        self.delta = tuple(self.delta)
        _check_pnt_boundaries(self, horizontal=False)

    @property
    def strong(self) -> bool:
        return set(self.delta_inv) == set(range(len(self.delta)))


def _check_pnt_boundaries(a, horizontal: bool):
    F, G = a.F, a.G
    if not (same_category(F.dom, G.dom) and same_category(F.cod, G.cod)):
        raise StructureError("transformation endpoints must be parallel functors")
    dom, cod = F.dom, F.cod
    if len(a.comp) != dom.n_objects:
        raise StructureError("one component per object required")
    if horizontal:
        if len(a.nat) != len(dom.vcells) or len(a.delta) != len(dom.hcells):
            raise StructureError("missing component for some cell")
        for o, f in enumerate(a.comp):
            if cod.hcells[f] != (F.ob(o), G.ob(o)):
                raise StructureError(f"component at object {o} has wrong boundary")
        for u, s in enumerate(a.nat):
            expect = (a.comp[dom.vs(u)], a.comp[dom.vt(u)], F.v(u), G.v(u))
            if cod.squares[s] != expect:
                raise StructureError(f"naturality square at vcell {u} has wrong boundary")
        for f, s in enumerate(a.delta):
            A, B = dom.hs(f), dom.ht(f)
            expect = (
                cod.hcomp(F.h(f), a.comp[B]),
                cod.hcomp(a.comp[A], G.h(f)),
                cod.vid[F.ob(A)],
                cod.vid[G.ob(B)],
            )
            if cod.squares[s] != expect:
                raise StructureError(f"comparison square at hcell {f} has wrong boundary")
            inv = a.delta_inv.get(f)
            if inv is not None and cod.squares[inv] != (expect[1], expect[0], expect[2], expect[3]):
                raise StructureError(f"comparison inverse at hcell {f} has wrong boundary")
    else:
        if len(a.nat) != len(dom.hcells) or len(a.delta) != len(dom.vcells):
            raise StructureError("missing component for some cell")
        for o, u in enumerate(a.comp):
            if cod.vcells[u] != (F.ob(o), G.ob(o)):
                raise StructureError(f"component at object {o} has wrong boundary")
        for f, s in enumerate(a.nat):
            expect = (F.h(f), G.h(f), a.comp[dom.hs(f)], a.comp[dom.ht(f)])
            if cod.squares[s] != expect:
                raise StructureError(f"naturality square at hcell {f} has wrong boundary")
        for u, s in enumerate(a.delta):
            A, B = dom.vs(u), dom.vt(u)
            expect = (
                cod.hid[F.ob(A)],
                cod.hid[G.ob(B)],
                cod.vcomp(F.v(u), a.comp[B]),
                cod.vcomp(a.comp[A], G.v(u)),
            )
            if cod.squares[s] != expect:
                raise StructureError(f"comparison square at vcell {u} has wrong boundary")
            inv = a.delta_inv.get(u)
            if inv is not None and cod.squares[inv] != (expect[0], expect[1], expect[3], expect[2]):
                raise StructureError(f"comparison inverse at vcell {u} has wrong boundary")


# ---------------------------------------------------------------------------
# identities and transposition


def identity_horizontal(F: DoublePseudoFunctor) -> HorizontalPNT:
    cod, dom = F.cod, F.dom
    return HorizontalPNT(
        F,
        F,
        [cod.hid[F.ob(a)] for a in range(dom.n_objects)],
        [cod.sq_hid[F.v(u)] for u in range(len(dom.vcells))],
        [cod.sq_vid[F.h(f)] for f in range(len(dom.hcells))],
        {f: cod.sq_vid[F.h(f)] for f in range(len(dom.hcells))},
    )


def identity_vertical(F: DoublePseudoFunctor) -> VerticalPNT:
    cod, dom = F.cod, F.dom
    return VerticalPNT(
        F,
        F,
        [cod.vid[F.ob(a)] for a in range(dom.n_objects)],
        [cod.sq_vid[F.h(f)] for f in range(len(dom.hcells))],
        [cod.sq_hid[F.v(u)] for u in range(len(dom.vcells))],
        {u: cod.sq_hid[F.v(u)] for u in range(len(dom.vcells))},
    )


@dataclass
class _TransposedContext:
    """Caches the transposed categories so repeated transposition of pieces
    of one structure stays consistent (dom/cod identity matters)."""

    dom_t: DoubleCategory
    cod_t: DoubleCategory

    @classmethod
    def of(cls, F: DoublePseudoFunctor):
        return cls(transpose(F.dom), transpose(F.cod))


def transpose_horizontal(a: HorizontalPNT, ctx: _TransposedContext | None = None) -> VerticalPNT:
    ctx = ctx or _TransposedContext.of(a.F)
    Ft = transpose_pseudo(a.F, ctx.dom_t, ctx.cod_t)
    Gt = transpose_pseudo(a.G, ctx.dom_t, ctx.cod_t)
    return VerticalPNT(Ft, Gt, a.comp, a.nat, a.delta, dict(a.delta_inv))


def transpose_vertical(a: VerticalPNT, ctx: _TransposedContext | None = None) -> HorizontalPNT:
    ctx = ctx or _TransposedContext.of(a.F)
    Ft = transpose_pseudo(a.F, ctx.dom_t, ctx.cod_t)
    Gt = transpose_pseudo(a.G, ctx.dom_t, ctx.cod_t)
    return HorizontalPNT(Ft, Gt, a.comp, a.nat, a.delta, dict(a.delta_inv))


# ---------------------------------------------------------------------------
# the horizontal checker (the vertical one runs through transposition)

HORIZONTAL_PNT_AXIOMS = (
    "pnt-naturality",
    "pnt-vcomp",
    "pnt-vunit",
    "pnt-hcomp-delta",
    "pnt-hunit-delta",
    "delta-invertibility",
)


def check_horizontal_pnt(a: HorizontalPNT, budget: Budget | None = None, axioms=None) -> AxiomReport:
    live = set(HORIZONTAL_PNT_AXIOMS if axioms is None else axioms)
    col = Collector("horizontal-transformation", budget)
    F, G = a.F, a.G
    dom, cod = F.dom, F.cod

    if "pnt-naturality" in live:
        # squares of the domain slide through the components via delta
        for s in range(len(dom.squares)):
            t, b, l, r = dom.squares[s]
            lhs = cod.vpaste(cod.hpaste(F.sq(s), a.nat[r]), a.delta[b])
            rhs = cod.vpaste(a.delta[t], cod.hpaste(a.nat[l], G.sq(s)))
            col.eq("pnt-naturality", ((SQUARE, s),), lhs, rhs)
    if "pnt-vcomp" in live:
        for (u, v) in sorted(dom.vcomp1):
            lhs = cod.hpaste(F.comp_v[(u, v)], a.nat[dom.vcomp(u, v)])
            rhs = cod.hpaste(cod.vpaste(a.nat[u], a.nat[v]), G.comp_v[(u, v)])
            col.eq("pnt-vcomp", ((VCELL, u), (VCELL, v)), lhs, rhs)
    if "pnt-vunit" in live:
        for o in range(dom.n_objects):
            lhs = cod.hpaste(F.unit_v[o], a.nat[dom.vid[o]])
            rhs = cod.hpaste(cod.sq_vid[a.comp[o]], G.unit_v[o])
            col.eq("pnt-vunit", ((OBJECT, o),), lhs, rhs)
    if "pnt-hcomp-delta" in live:
        for (f, g) in sorted(dom.hcomp1):
            C = dom.ht(g)
            lhs = a.delta[dom.hcomp(f, g)]
            rhs = cod.vcol(
                cod.hpaste(F.comp_h[(f, g)], cod.sq_vid[a.comp[C]]),
                cod.hpaste(cod.sq_vid[F.h(f)], a.delta[g]),
                cod.hpaste(a.delta[f], cod.sq_vid[G.h(g)]),
                cod.hpaste(cod.sq_vid[a.comp[dom.hs(f)]], G.comp_h_inv[(f, g)]),
            )
            col.eq("pnt-hcomp-delta", ((HCELL, f), (HCELL, g)), lhs, rhs)
    if "pnt-hunit-delta" in live:
        for o in range(dom.n_objects):
            lhs = cod.vcol(
                cod.hpaste(F.unit_h_inv[o], cod.sq_vid[a.comp[o]]),
                a.delta[dom.hid[o]],
                cod.hpaste(cod.sq_vid[a.comp[o]], G.unit_h[o]),
            )
            col.eq("pnt-hunit-delta", ((OBJECT, o),), lhs, cod.sq_vid[a.comp[o]])
    if "delta-invertibility" in live:
        for f, inv in sorted(a.delta_inv.items()):
            cell = a.delta[f]
            col.eq("delta-invertibility", ((HCELL, f),), cod.vpaste(cell, inv), cod.sq_vid[cod.top(cell)])
            col.eq("delta-invertibility", ((HCELL, f),), cod.vpaste(inv, cell), cod.sq_vid[cod.bottom(cell)])
    return col.done()


def _remap_transposed_witness(report: AxiomReport) -> AxiomReport:
    """Rename cell kinds in witnesses coming from a transposed run."""
    swap = {HCELL: VCELL, VCELL: HCELL}
    for i, v in enumerate(report.violations):
        wit = tuple(
            (swap.get(kind, kind), idx) if isinstance(w, tuple) and len(w) == 2 else w
            for w in v.witness
            for kind, idx in [w if isinstance(w, tuple) and len(w) == 2 else (None, None)]
        )
        report.violations[i] = type(v)(v.axiom, wit, v.lhs, v.rhs)
    return report


def check_vertical_pnt(a: VerticalPNT, budget: Budget | None = None, axioms=None) -> AxiomReport:
    """The transposed axioms, obtained by literally transposing the data and
    rerunning the horizontal checker."""
    rep = check_horizontal_pnt(transpose_vertical(a), budget=budget, axioms=axioms)
    rep.subject = "vertical-transformation"
    return _remap_transposed_witness(rep)


# ---------------------------------------------------------------------------
# whiskering by a functor and the four composition laws


def whisker_functor(H: DoublePseudoFunctor, a: HorizontalPNT) -> HorizontalPNT:
    """Postcompose a horizontal transformation with a pseudofunctor H.

    Components map through H; the comparison square conjugates H's image of
    delta by H's composition and vertical-unit cells."""
    if not same_category(a.F.cod, H.dom):
        raise StructureError("whiskering functor does not start at the transformation's codomain")
    F, G = a.F, a.G
    dom = F.dom
    cod = H.cod
    comp = [H.h(a.comp[o]) for o in range(dom.n_objects)]
    nat = [H.sq(a.nat[u]) for u in range(len(dom.vcells))]
    delta = []
    delta_inv = {}
    for f in range(len(dom.hcells)):
        A, B = dom.hs(f), dom.ht(f)
        middle = conj_v(H, a.delta[f])
        delta.append(
            cod.vcol(
                H.comp_h_inv[(F.h(f), a.comp[B])],
                middle,
                H.comp_h[(a.comp[A], G.h(f))],
            )
        )
        inv = a.delta_inv.get(f)
        if inv is not None:
            delta_inv[f] = cod.vcol(
                H.comp_h_inv[(a.comp[A], G.h(f))],
                conj_v(H, inv),
                H.comp_h[(F.h(f), a.comp[B])],
            )
    HF = _compose_for(H, F)
    HG = _compose_for(H, G)
    return HorizontalPNT(HF, HG, comp, nat, delta, delta_inv)


def _compose_for(H, F):
    from .functors import compose_pseudo

    return compose_pseudo(H, F)


def whisker_functor_vertical(H: DoublePseudoFunctor, a: VerticalPNT) -> VerticalPNT:
    """Transpose flavour of :func:`whisker_functor`."""
    if not same_category(a.F.cod, H.dom):
        raise StructureError("whiskering functor does not start at the transformation's codomain")
    F, G = a.F, a.G
    dom = F.dom
    cod = H.cod
    comp = [H.v(a.comp[o]) for o in range(dom.n_objects)]
    nat = [H.sq(a.nat[f]) for f in range(len(dom.hcells))]
    delta = []
    delta_inv = {}
    for u in range(len(dom.vcells)):
        A, B = dom.vs(u), dom.vt(u)
        middle = _conj_h(H, a.delta[u])
        delta.append(
            cod.hrow(
                H.comp_v[(F.v(u), a.comp[B])],
                middle,
                H.comp_v_inv[(a.comp[A], G.v(u))],
            )
        )
        inv = a.delta_inv.get(u)
        if inv is not None:
            delta_inv[u] = cod.hrow(
                H.comp_v[(a.comp[A], G.v(u))],
                _conj_h(H, inv),
                H.comp_v_inv[(F.v(u), a.comp[B])],
            )
    return VerticalPNT(_compose_for(H, F), _compose_for(H, G), comp, nat, delta, delta_inv)


def _conj_h(H, s):
    from .functors import conj_h

    return conj_h(H, s)


def hcomp_horizontal(b: HorizontalPNT, a: HorizontalPNT) -> HorizontalPNT:
    """Side-by-side composite of a: F => G (into the domain of b) with
    b: F' => G'; component at A is F'(a(A)) then b(G(A))."""
    if not same_category(a.F.cod, b.F.dom):
        raise StructureError("transformations not horizontally composable")
    F, G, Fp, Gp = a.F, a.G, b.F, b.G
    dom = F.dom
    cod = Fp.cod
    wa = whisker_functor(Fp, a)
    comp = [cod.hcomp(wa.comp[o], b.comp[G.ob(o)]) for o in range(dom.n_objects)]
    nat = [
        cod.hpaste(wa.nat[u], b.nat[G.v(u)])
        for u in range(len(dom.vcells))
    ]
    delta = []
    delta_inv = {}
    for f in range(len(dom.hcells)):
        A, B = dom.hs(f), dom.ht(f)
        row1 = cod.hpaste(wa.delta[f], cod.sq_vid[b.comp[G.ob(B)]])
        row2 = cod.hpaste(cod.sq_vid[wa.comp[A]], b.delta[G.h(f)])
        delta.append(cod.vpaste(row1, row2))
        inv_a = wa.delta_inv.get(f)
        inv_b = b.delta_inv.get(G.h(f))
        if inv_a is not None and inv_b is not None:
            delta_inv[f] = cod.vpaste(
                cod.hpaste(cod.sq_vid[wa.comp[A]], inv_b),
                cod.hpaste(inv_a, cod.sq_vid[b.comp[G.ob(B)]]),
            )
    return HorizontalPNT(_compose_for(Fp, F), _compose_for(Gp, G), comp, nat, delta, delta_inv)


def hcomp_vertical(b: VerticalPNT, a: VerticalPNT) -> VerticalPNT:
    if not same_category(a.F.cod, b.F.dom):
        raise StructureError("transformations not horizontally composable")
    F, G, Fp, Gp = a.F, a.G, b.F, b.G
    dom = F.dom
    cod = Fp.cod
    wa = whisker_functor_vertical(Fp, a)
    comp = [cod.vcomp(wa.comp[o], b.comp[G.ob(o)]) for o in range(dom.n_objects)]
    nat = [cod.vpaste(wa.nat[f], b.nat[G.h(f)]) for f in range(len(dom.hcells))]
    delta = []
    delta_inv = {}
    for u in range(len(dom.vcells)):
        A, B = dom.vs(u), dom.vt(u)
        c1 = cod.vpaste(wa.delta[u], cod.sq_hid[b.comp[G.ob(B)]])
        c2 = cod.vpaste(cod.sq_hid[wa.comp[A]], b.delta[G.v(u)])
        delta.append(cod.hpaste(c1, c2))
        inv_a = wa.delta_inv.get(u)
        inv_b = b.delta_inv.get(G.v(u))
        if inv_a is not None and inv_b is not None:
            delta_inv[u] = cod.hpaste(
                cod.vpaste(cod.sq_hid[wa.comp[A]], inv_b),
                cod.vpaste(inv_a, cod.sq_hid[b.comp[G.ob(B)]]),
            )
    return VerticalPNT(_compose_for(Fp, F), _compose_for(Gp, G), comp, nat, delta, delta_inv)


def vcomp_horizontal(a: HorizontalPNT, b: HorizontalPNT) -> HorizontalPNT:
    """Stacked composite a then b of a: F => G, b: G => H.  Strictly
    associative and unital with the identity transformation."""
    if not pseudo_equal(a.G, b.F):
        raise StructureError("transformations not vertically composable")
    F, H = a.F, b.G
    dom, cod = F.dom, F.cod
    comp = [cod.hcomp(a.comp[o], b.comp[o]) for o in range(dom.n_objects)]
    nat = [cod.hpaste(a.nat[u], b.nat[u]) for u in range(len(dom.vcells))]
    delta = []
    delta_inv = {}
    for f in range(len(dom.hcells)):
        A, B = dom.hs(f), dom.ht(f)
        delta.append(
            cod.vpaste(
                cod.hpaste(a.delta[f], cod.sq_vid[b.comp[B]]),
                cod.hpaste(cod.sq_vid[a.comp[A]], b.delta[f]),
            )
        )
        inv_a, inv_b = a.delta_inv.get(f), b.delta_inv.get(f)
        if inv_a is not None and inv_b is not None:
            delta_inv[f] = cod.vpaste(
                cod.hpaste(cod.sq_vid[a.comp[A]], inv_b),
                cod.hpaste(inv_a, cod.sq_vid[b.comp[B]]),
            )
    return HorizontalPNT(F, H, comp, nat, delta, delta_inv)


def vcomp_vertical(a: VerticalPNT, b: VerticalPNT) -> VerticalPNT:
    if not pseudo_equal(a.G, b.F):
        raise StructureError("transformations not vertically composable")
    F, H = a.F, b.G
    dom, cod = F.dom, F.cod
    comp = [cod.vcomp(a.comp[o], b.comp[o]) for o in range(dom.n_objects)]
    nat = [cod.vpaste(a.nat[f], b.nat[f]) for f in range(len(dom.hcells))]
    delta = []
    delta_inv = {}
    for u in range(len(dom.vcells)):
        A, B = dom.vs(u), dom.vt(u)
        delta.append(
            cod.hpaste(
                cod.vpaste(a.delta[u], cod.sq_hid[b.comp[B]]),
                cod.vpaste(cod.sq_hid[a.comp[A]], b.delta[u]),
            )
        )
        inv_a, inv_b = a.delta_inv.get(u), b.delta_inv.get(u)
        if inv_a is not None and inv_b is not None:
            delta_inv[u] = cod.hpaste(
                cod.vpaste(cod.sq_hid[a.comp[A]], inv_b),
                cod.vpaste(inv_a, cod.sq_hid[b.comp[B]]),
            )
    return VerticalPNT(F, H, comp, nat, delta, delta_inv)


# ---------------------------------------------------------------------------
# coupled pairs (the 2-cells of the ambient three-layer structure)


@dataclass
class DoublePNT:
    """Quadruple (v0, h1, t, r): a vertical and a horizontal transformation
    between the same functors, coupled by two extra square families."""

    v0: VerticalPNT
    h1: HorizontalPNT
    t: tuple  # per hcell f
    r: tuple  # per vcell u

    def __post_init__(self):
        self.t = tuple(self.t)
        self.r = tuple(self.r)
        if not (pseudo_equal(self.v0.F, self.h1.F) and pseudo_equal(self.v0.G, self.h1.G)):
            raise StructureError("the two legs must share their endpoint functors")
        F, G = self.F, self.G
        dom, cod = F.dom, F.cod
        if len(self.t) != len(dom.hcells) or len(self.r) != len(dom.vcells):
            raise StructureError("missing coupling square for some cell")
        for f, s in enumerate(self.t):
            A, B = dom.hs(f), dom.ht(f)
            expect = (
                cod.hcomp(F.h(f), self.h1.comp[B]),
                G.h(f),
                self.v0.comp[A],
                cod.vid[G.ob(B)],
            )
            if cod.squares[s] != expect:
                raise StructureError(f"t-square at hcell {f} has wrong boundary")
        for u, s in enumerate(self.r):
            A, B = dom.vs(u), dom.vt(u)
            expect = (
                self.h1.comp[A],
                cod.hid[G.ob(B)],
                cod.vcomp(F.v(u), self.v0.comp[B]),
                G.v(u),
            )
            if cod.squares[s] != expect:
                raise StructureError(f"r-square at vcell {u} has wrong boundary")

    @property
    def F(self):
        return self.v0.F

    @property
    def G(self):
        return self.v0.G


@dataclass
class ThetaPNT:
    """Pair of transformations generated by one square per object,

        theta[A] : (alpha1(A) => 1)  with left side alpha0(A),

    from which the coupling squares of a DoublePNT are pasted."""

    v0: VerticalPNT
    h1: HorizontalPNT
    theta: tuple  # per object

    def __post_init__(self):
        self.theta = tuple(self.theta)
        if not (pseudo_equal(self.v0.F, self.h1.F) and pseudo_equal(self.v0.G, self.h1.G)):
            raise StructureError("the two legs must share their endpoint functors")
        F, G = self.v0.F, self.v0.G
        dom, cod = F.dom, F.cod
        if len(self.theta) != dom.n_objects:
            raise StructureError("one generating square per object required")
        for o, s in enumerate(self.theta):
            expect = (
                self.h1.comp[o],
                cod.hid[G.ob(o)],
                self.v0.comp[o],
                cod.vid[G.ob(o)],
            )
            if cod.squares[s] != expect:
                raise StructureError(f"generating square at object {o} has wrong boundary")


@dataclass(frozen=True)
class ComponentRegistry:
    """Which domain cells count as components of transformations in play.

    The invertibility requirement on comparison squares quantifies over
    exactly these cells; the caller supplies them because only the caller
    knows which transformations exist in the ambient situation."""

    hcells: frozenset = frozenset()
    vcells: frozenset = frozenset()

    @classmethod
    def of(cls, hcells=(), vcells=()):
        return cls(frozenset(hcells), frozenset(vcells))

    def transposed(self):
        return ComponentRegistry(self.vcells, self.hcells)


def identity_double(F: DoublePseudoFunctor) -> DoublePNT:
    cod, dom = F.cod, F.dom
    return DoublePNT(
        identity_vertical(F),
        identity_horizontal(F),
        [cod.sq_vid[F.h(f)] for f in range(len(dom.hcells))],
        [cod.sq_hid[F.v(u)] for u in range(len(dom.vcells))],
    )


def transpose_double(a: DoublePNT, ctx: _TransposedContext | None = None) -> DoublePNT:
    ctx = ctx or _TransposedContext.of(a.F)
    return DoublePNT(
        transpose_horizontal(a.h1, ctx),
        transpose_vertical(a.v0, ctx),
        tuple(a.r),
        tuple(a.t),
    )


DOUBLE_PNT_AXIOMS = (
    "legs",
    "component-invertibility",
    "coupling-naturality-t",
    "coupling-naturality-r",
    "coupling-hcomp-t",
    "coupling-vcomp-r",
    "coupling-composite-t",
    "coupling-composite-r",
    "coupling-assoc",
)


def _check_t_side(a: DoublePNT, col, suffix: str):
    """The t-side coupling axioms; the r-side is this after transposition."""
    F, G = a.F, a.G
    dom, cod = F.dom, F.cod
    v0, h1 = a.v0, a.h1
    for s in range(len(dom.squares)):
        t_, b_, l_, r_ = dom.squares[s]
        lhs = cod.vpaste(cod.hpaste(F.sq(s), h1.nat[r_]), a.t[b_])
        rhs = cod.hpaste(v0.delta[l_], cod.vpaste(a.t[t_], G.sq(s)))
        col.eq(f"coupling-naturality-{suffix}", ((SQUARE, s),), lhs, rhs)
    for (f, g) in sorted(dom.hcomp1):
        lhs = cod.vpaste(
            cod.hpaste(cod.sq_vid[F.h(f)], h1.delta[g]),
            cod.hpaste(a.t[f], cod.sq_vid[G.h(g)]),
        )
        rhs = cod.hpaste(v0.nat[f], a.t[g])
        col.eq(f"coupling-hcomp-{suffix}", ((HCELL, f), (HCELL, g)), lhs, rhs)
    for (f, g) in sorted(dom.hcomp1):
        C = dom.ht(g)
        rhs = cod.vcol(
            cod.hpaste(F.comp_h[(f, g)], cod.sq_vid[h1.comp[C]]),
            cod.hpaste(v0.nat[f], a.t[g]),
            G.comp_h_inv[(f, g)],
        )
        col.eq(f"coupling-composite-{suffix}", ((HCELL, f), (HCELL, g)), a.t[dom.hcomp(f, g)], rhs)


def check_double_pnt(
    a: DoublePNT,
    registry: ComponentRegistry | None = None,
    budget: Budget | None = None,
) -> AxiomReport:
    """All coupling axioms plus the two delegated leg checks.

    Without a registry the invertibility-at-components requirement cannot be
    evaluated; the report then carries a recorded assumption and the
    ``inconclusive`` status rather than passing silently."""
    col = Collector("double-transformation", budget)
    col.report.absorb(check_vertical_pnt(a.v0, budget=col.budget), prefix="v0: ")
    col.report.absorb(check_horizontal_pnt(a.h1, budget=col.budget), prefix="h1: ")

    cod = a.F.cod
    if registry is None:
        col.assume("component-invertibility skipped: no component registry supplied")
        col.inconclusive()
    else:
        for f in sorted(registry.hcells):
            inv = a.h1.delta_inv.get(f)
            if inv is None:
                col.fail("component-invertibility", ((HCELL, f),))
            else:
                cell = a.h1.delta[f]
                col.eq("component-invertibility", ((HCELL, f),), cod.vpaste(cell, inv), cod.sq_vid[cod.top(cell)])
                col.eq("component-invertibility", ((HCELL, f),), cod.vpaste(inv, cell), cod.sq_vid[cod.bottom(cell)])
        for u in sorted(registry.vcells):
            inv = a.v0.delta_inv.get(u)
            if inv is None:
                col.fail("component-invertibility", ((VCELL, u),))
            else:
                cell = a.v0.delta[u]
                col.eq("component-invertibility", ((VCELL, u),), cod.hpaste(cell, inv), cod.sq_hid[cod.left(cell)])
                col.eq("component-invertibility", ((VCELL, u),), cod.hpaste(inv, cell), cod.sq_hid[cod.right(cell)])

    _check_t_side(a, col, "t")
    sub = Collector("double-transformation", col.budget)
    _check_t_side(transpose_double(a), sub, "r")
    col.report.absorb(_remap_transposed_witness(sub.done()))

    # pasting the composite coupling square over either bracketing of a
    # triple agrees (consequence of functor coherence, asserted)
    dom = a.F.dom
    cod = a.F.cod
    F, G = a.F, a.G

    def expand_t(f, g):
        C = dom.ht(g)
        return cod.vcol(
            cod.hpaste(F.comp_h[(f, g)], cod.sq_vid[a.h1.comp[C]]),
            cod.hpaste(a.v0.nat[f], a.t[g]),
            G.comp_h_inv[(f, g)],
        )

    for (f, g) in sorted(dom.hcomp1):
        for h in range(len(dom.hcells)):
            if dom.ht(g) != dom.hs(h):
                continue
            one = expand_t(dom.hcomp(f, g), h)
            two = expand_t(f, dom.hcomp(g, h))
            col.eq("coupling-assoc", ((HCELL, f), (HCELL, g), (HCELL, h)), one, two)
    return col.done()


# ---------------------------------------------------------------------------
# theta-generated transformations


def check_theta(
    th: ThetaPNT,
    registry: ComponentRegistry | None = None,
    budget: Budget | None = None,
) -> AxiomReport:
    col = Collector("theta-transformation", budget)
    col.report.absorb(check_vertical_pnt(th.v0, budget=col.budget), prefix="v0: ")
    col.report.absorb(check_horizontal_pnt(th.h1, budget=col.budget), prefix="h1: ")
    if registry is None:
        col.assume("component-invertibility skipped: no component registry supplied")
        col.inconclusive()
    else:
        cod = th.v0.F.cod
        for f in sorted(registry.hcells):
            if th.h1.delta_inv.get(f) is None:
                col.fail("component-invertibility", ((HCELL, f),))
        for u in sorted(registry.vcells):
            if th.v0.delta_inv.get(u) is None:
                col.fail("component-invertibility", ((VCELL, u),))
    F, G = th.v0.F, th.v0.G
    dom, cod = F.dom, F.cod
    for f in range(len(dom.hcells)):
        A, B = dom.hs(f), dom.ht(f)
        lhs = cod.hpaste(th.v0.nat[f], th.theta[B])
        rhs = cod.vpaste(th.h1.delta[f], cod.hpaste(th.theta[A], cod.sq_vid[G.h(f)]))
        col.eq("theta-slide-h", ((HCELL, f),), lhs, rhs)
    for u in range(len(dom.vcells)):
        A, B = dom.vs(u), dom.vt(u)
        lhs = cod.vpaste(th.h1.nat[u], th.theta[B])
        rhs = cod.hpaste(th.v0.delta[u], cod.vpaste(th.theta[A], cod.sq_hid[G.v(u)]))
        col.eq("theta-slide-v", ((VCELL, u),), lhs, rhs)
    return col.done()


def theta_to_double(th: ThetaPNT) -> DoublePNT:
    """Expand the generating squares into the two coupling families."""
    F, G = th.v0.F, th.v0.G
    dom, cod = F.dom, F.cod
    t = [
        cod.hpaste(th.v0.nat[f], th.theta[dom.ht(f)])
        for f in range(len(dom.hcells))
    ]
    r = [
        cod.vpaste(th.h1.nat[u], th.theta[dom.vt(u)])
        for u in range(len(dom.vcells))
    ]
    return DoublePNT(th.v0, th.h1, t, r)


def identity_theta(F: DoublePseudoFunctor) -> ThetaPNT:
    cod, dom = F.cod, F.dom
    return ThetaPNT(
        identity_vertical(F),
        identity_horizontal(F),
        [cod.sq_vid[cod.hid[F.ob(o)]] for o in range(dom.n_objects)],
    )


def theta_candidates_from_double(a: DoublePNT):
    """The two reverse candidates: generating squares pasted from the
    coupling squares at identity cells.  They satisfy the two slide laws but
    need not agree with each other, which is exactly why not every coupled
    pair is theta-generated."""
    F, G = a.F, a.G
    dom, cod = F.dom, F.cod
    t_theta = []
    r_theta = []
    for o in range(dom.n_objects):
        t_theta.append(
            cod.vcol(
                cod.hpaste(F.unit_h_inv[o], cod.sq_vid[a.h1.comp[o]]),
                a.t[dom.hid[o]],
                G.unit_h[o],
            )
        )
        r_theta.append(
            cod.hrow(
                cod.vpaste(F.unit_v[o], cod.sq_hid[a.v0.comp[o]]),
                a.r[dom.vid[o]],
                G.unit_v_inv[o],
            )
        )
    return t_theta, r_theta


def hcomp_theta(b: ThetaPNT, a: ThetaPNT) -> ThetaPNT:
    """Side-by-side composite of theta-generated transformations."""
    if not same_category(a.v0.F.cod, b.v0.F.dom):
        raise StructureError("transformations not horizontally composable")
    Fp, Gp = b.v0.F, b.v0.G
    G = a.v0.G
    dom = a.v0.F.dom
    cod = Fp.cod
    h1 = hcomp_horizontal(b.h1, a.h1)
    v0 = hcomp_vertical(b.v0, a.v0)
    theta = []
    for o in range(dom.n_objects):
        go = G.ob(o)
        x = cod.vcol(
            cod.hpaste(Fp.sq(a.theta[o]), Fp.unit_v_inv[go]),
            Fp.unit_h[go],
        )
        theta.append(
            cod.vpaste(
                cod.hpaste(x, cod.sq_vid[b.h1.comp[go]]),
                b.theta[go],
            )
        )
    return ThetaPNT(v0, h1, theta)


def vcomp_theta(a: ThetaPNT, b: ThetaPNT) -> ThetaPNT:
    """Stacked composite of theta-generated transformations a then b."""
    if not pseudo_equal(a.v0.G, b.v0.F):
        raise StructureError("transformations not vertically composable")
    dom = a.v0.F.dom
    cod = a.v0.F.cod
    h1 = vcomp_horizontal(a.h1, b.h1)
    v0 = vcomp_vertical(a.v0, b.v0)
    theta = [
        cod.vpaste(cod.hpaste(a.theta[o], cod.sq_vid[b.h1.comp[o]]), b.theta[o])
        for o in range(dom.n_objects)
    ]
    return ThetaPNT(v0, h1, theta)


# ---------------------------------------------------------------------------
# compositions of coupled pairs


def hcomp_double(b: DoublePNT, a: DoublePNT) -> DoublePNT:
    """Side-by-side composite; the coupling squares thread the second
    transformation's comparison cells through the images of the first."""
    if not same_category(a.F.cod, b.F.dom):
        raise StructureError("transformations not horizontally composable")
    F, G, Fp, Gp = a.F, a.G, b.F, b.G
    dom = F.dom
    cod = Fp.cod
    h1 = hcomp_horizontal(b.h1, a.h1)
    v0 = hcomp_vertical(b.v0, a.v0)
    t = []
    for f in range(len(dom.hcells)):
        A, B = dom.hs(f), dom.ht(f)
        gb = G.ob(B)
        row1 = cod.hpaste(b.v0.nat[F.h(f)], b.t[a.h1.comp[B]])
        row2 = Gp.comp_h_inv[(F.h(f), a.h1.comp[B])]
        row3 = cod.hpaste(Gp.sq(a.t[f]), Gp.unit_v_inv[gb])
        t.append(cod.hpaste(b.v0.delta[a.v0.comp[A]], cod.vcol(row1, row2, row3)))
    r = []
    for u in range(len(dom.vcells)):
        A, B = dom.vs(u), dom.vt(u)
        gb = G.ob(B)
        col1 = cod.vpaste(b.h1.nat[F.v(u)], b.r[a.v0.comp[B]])
        col2 = Gp.comp_v[(F.v(u), a.v0.comp[B])]
        col3 = cod.vpaste(Gp.sq(a.r[u]), Gp.unit_h[gb])
        r.append(cod.vpaste(b.h1.delta[a.h1.comp[A]], cod.hrow(col1, col2, col3)))
    return DoublePNT(v0, h1, t, r)


def vcomp_double(a: DoublePNT, b: DoublePNT) -> DoublePNT:
    """Stacked composite a then b; strictly associative and unital."""
    if not pseudo_equal(a.G, b.F):
        raise StructureError("transformations not vertically composable")
    dom = a.F.dom
    cod = a.F.cod
    h1 = vcomp_horizontal(a.h1, b.h1)
    v0 = vcomp_vertical(a.v0, b.v0)
    t = []
    for f in range(len(dom.hcells)):
        B = dom.ht(f)
        row1 = cod.hpaste(a.t[f], cod.sq_vid[b.h1.comp[B]])
        t.append(cod.vpaste(row1, b.t[f]))
    r = []
    for u in range(len(dom.vcells)):
        B = dom.vt(u)
        col1 = cod.vpaste(a.r[u], cod.sq_hid[b.v0.comp[B]])
        r.append(cod.hpaste(col1, b.r[u]))
    return DoublePNT(v0, h1, t, r)


def right_unit_constraint(a: HorizontalPNT):
    """Compose with the identity 2-cell on the domain's identity functor and
    normalize back.

    The left-sided composite is the original transformation on the nose.
    The right-sided one picks up the domain functor's unit comparison cells;
    the returned per-object squares are exactly those cells whiskered by the
    components, and the report verifies they form a modification from the
    composite back to ``a`` (the normalization applied).  Both collapse to
    identities when the functor is normalized."""
    from .functors import identity_pseudo
    from .report import Collector

    F = a.F
    dom, cod = F.dom, F.cod
    ident = identity_horizontal(identity_pseudo(dom))
    composite = hcomp_horizontal(a, ident)
    col = Collector("right-unit-normalization")
    normalization = []
    for o in range(dom.n_objects):
        cell = cod.hpaste(F.unit_h[o], cod.sq_vid[a.comp[o]])
        normalization.append(cell)
        col.eq(
            "normalization-boundary",
            ((OBJECT, o),),
            (cod.top(cell), cod.bottom(cell)),
            (composite.comp[o], a.comp[o]),
        )
    from .modif import check_horizontal_side

    col.report.absorb(check_horizontal_side(composite, a, normalization))
    col.assume("right unit normalized through the recorded unit comparison cells")
    left = hcomp_horizontal(identity_horizontal(identity_pseudo(cod)), a)
    for o in range(dom.n_objects):
        col.eq("left-unit-strict", ((OBJECT, o),), left.comp[o], a.comp[o])
    for f in range(len(dom.hcells)):
        col.eq("left-unit-strict", ((HCELL, f),), left.delta[f], a.delta[f])
    for u in range(len(dom.vcells)):
        col.eq("left-unit-strict", ((VCELL, u),), left.nat[u], a.nat[u])
    return composite, normalization, col.done()
