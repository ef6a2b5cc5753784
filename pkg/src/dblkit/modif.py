"""Modifications: the cells between parallel transformations.

A modification between coupled pairs alpha => beta consists of one
horizontally globular square a0[A] : alpha0(A) => beta0(A) and one
vertically globular square a1[A] : alpha1(A) => beta1(A) per object,
compatible with the naturality and comparison data of both sides and with
the coupling squares.  Equality of modifications is componentwise square
equality after pasting; there is no weaker comparison at this layer.
"""

from __future__ import annotations

from dataclasses import dataclass

from .kernel import HCELL, OBJECT, VCELL, StructureError
from .report import AxiomReport, Budget, Collector
from .transform import (
    DoublePNT,
    ThetaPNT,
    hcomp_double,
    theta_to_double,
    vcomp_double,
)
from .functors import conj_v, conj_h


@dataclass
class DoubleModification:
    src: DoublePNT
    tgt: DoublePNT
    a0: tuple  # per object: horizontally globular square alpha0(A) => beta0(A)
    a1: tuple  # per object: vertically globular square alpha1(A) => beta1(A)

    def __post_init__(self):
        self.a0 = tuple(self.a0)
        self.a1 = tuple(self.a1)
        _check_modification_boundaries(self)

    @property
    def F(self):
        return self.src.F

    @property
    def G(self):
        return self.src.G


def _check_modification_boundaries(m):
    from .functors import pseudo_equal

    if not (pseudo_equal(m.src.F, m.tgt.F) and pseudo_equal(m.src.G, m.tgt.G)):
        raise StructureError("modification endpoints must be parallel transformations")
    F, G = m.F, m.G
    dom, cod = F.dom, F.cod
    if len(m.a0) != dom.n_objects or len(m.a1) != dom.n_objects:
        raise StructureError("one component square of each kind per object required")
    for o in range(dom.n_objects):
        expect0 = (
            cod.hid[F.ob(o)],
            cod.hid[G.ob(o)],
            m.src.v0.comp[o],
            m.tgt.v0.comp[o],
        )
        if cod.squares[m.a0[o]] != expect0:
            raise StructureError(f"vertical-side component at object {o} has wrong boundary")
        expect1 = (
            m.src.h1.comp[o],
            m.tgt.h1.comp[o],
            cod.vid[F.ob(o)],
            cod.vid[G.ob(o)],
        )
        if cod.squares[m.a1[o]] != expect1:
            raise StructureError(f"horizontal-side component at object {o} has wrong boundary")


@dataclass
class ThetaModification:
    """Between theta-generated transformations; one extra compatibility with
    the generating squares replaces the two coupling compatibilities."""

    src: ThetaPNT
    tgt: ThetaPNT
    a0: tuple
    a1: tuple

    def __post_init__(self):
        self.a0 = tuple(self.a0)
        self.a1 = tuple(self.a1)
        shadow = DoubleModification(
            theta_to_double(self.src), theta_to_double(self.tgt), self.a0, self.a1
        )
        self._shadow = shadow


MODIFICATION_AXIOMS = (
    "slide-v-nat",
    "slide-v-delta",
    "slide-h-nat",
    "slide-h-delta",
    "coupling-t",
    "coupling-r",
)


def check_vertical_side(src, tgt, a0, budget: Budget | None = None, axioms=None) -> AxiomReport:
    """The two equations of a modification between vertical transformations."""
    live = set(MODIFICATION_AXIOMS if axioms is None else axioms)
    col = Collector("vertical-modification", budget)
    F, G = src.F, src.G
    dom, cod = F.dom, F.cod
    for f in range(len(dom.hcells)):
        A, B = dom.hs(f), dom.ht(f)
        if "slide-v-nat" in live:
            col.eq(
                "slide-v-nat",
                ((HCELL, f),),
                cod.hpaste(a0[A], tgt.nat[f]),
                cod.hpaste(src.nat[f], a0[B]),
            )
    for u in range(len(dom.vcells)):
        A, B = dom.vs(u), dom.vt(u)
        if "slide-v-delta" in live:
            lhs = cod.hpaste(cod.vpaste(cod.sq_hid[F.v(u)], a0[B]), tgt.delta[u])
            rhs = cod.hpaste(src.delta[u], cod.vpaste(a0[A], cod.sq_hid[G.v(u)]))
            col.eq("slide-v-delta", ((VCELL, u),), lhs, rhs)
    return col.done()


def check_horizontal_side(src, tgt, a1, budget: Budget | None = None, axioms=None) -> AxiomReport:
    """The two equations of a modification between horizontal transformations."""
    live = set(MODIFICATION_AXIOMS if axioms is None else axioms)
    col = Collector("horizontal-modification", budget)
    F, G = src.F, src.G
    dom, cod = F.dom, F.cod
    for u in range(len(dom.vcells)):
        A, B = dom.vs(u), dom.vt(u)
        if "slide-h-nat" in live:
            col.eq(
                "slide-h-nat",
                ((VCELL, u),),
                cod.vpaste(a1[A], tgt.nat[u]),
                cod.vpaste(src.nat[u], a1[B]),
            )
    for f in range(len(dom.hcells)):
        A, B = dom.hs(f), dom.ht(f)
        if "slide-h-delta" in live:
            lhs = cod.vpaste(cod.hpaste(cod.sq_vid[F.h(f)], a1[B]), tgt.delta[f])
            rhs = cod.vpaste(src.delta[f], cod.hpaste(a1[A], cod.sq_vid[G.h(f)]))
            col.eq("slide-h-delta", ((HCELL, f),), lhs, rhs)
    return col.done()


def check_modification(m: DoubleModification, budget: Budget | None = None, axioms=None) -> AxiomReport:
    live = set(MODIFICATION_AXIOMS if axioms is None else axioms)
    col = Collector("modification", budget)
    F, G = m.F, m.G
    dom, cod = F.dom, F.cod
    al, be = m.src, m.tgt
    col.report.absorb(check_vertical_side(al.v0, be.v0, m.a0, budget=col.budget, axioms=live))
    col.report.absorb(check_horizontal_side(al.h1, be.h1, m.a1, budget=col.budget, axioms=live))

    for f in range(len(dom.hcells)):
        A, B = dom.hs(f), dom.ht(f)
        if "coupling-t" in live:
            lhs = cod.hpaste(
                m.a0[A],
                cod.vpaste(cod.hpaste(cod.sq_vid[F.h(f)], m.a1[B]), be.t[f]),
            )
            col.eq("coupling-t", ((HCELL, f),), lhs, al.t[f])
    for u in range(len(dom.vcells)):
        A, B = dom.vs(u), dom.vt(u)
        if "coupling-r" in live:
            lhs = cod.vpaste(
                m.a1[A],
                cod.hpaste(cod.vpaste(cod.sq_hid[F.v(u)], m.a0[B]), be.r[u]),
            )
            col.eq("coupling-r", ((VCELL, u),), lhs, al.r[u])
    return col.done()


def check_theta_modification(m: ThetaModification, budget: Budget | None = None) -> AxiomReport:
    """The single generator compatibility; the coupled-pair equations follow
    and are rechecked through the shadow modification."""
    col = Collector("theta-modification", budget)
    F, G = m.src.v0.F, m.src.v0.G
    dom, cod = F.dom, F.cod
    for o in range(dom.n_objects):
        lhs = cod.hpaste(
            m.a0[o],
            cod.vpaste(m.a1[o], m.tgt.theta[o]),
        )
        col.eq("theta-compat", ((OBJECT, o),), lhs, m.src.theta[o])
    col.report.absorb(check_modification(m._shadow, budget=col.budget), prefix="as-coupled: ")
    return col.done()


def identity_modification(a: DoublePNT) -> DoubleModification:
    cod = a.F.cod
    return DoubleModification(
        a,
        a,
        [cod.sq_hid[a.v0.comp[o]] for o in range(a.F.dom.n_objects)],
        [cod.sq_vid[a.h1.comp[o]] for o in range(a.F.dom.n_objects)],
    )


# ---------------------------------------------------------------------------
# the three compositions


def hcomp_modif(b: DoubleModification, a: DoubleModification) -> DoubleModification:
    """Side-by-side composite along horizontally composable transformations."""
    Fp = b.F
    G = a.G
    if a.F.cod is not Fp.dom:
        raise StructureError("modifications not horizontally composable")
    dom = a.F.dom
    cod = Fp.cod
    src = hcomp_double(b.src, a.src)
    tgt = hcomp_double(b.tgt, a.tgt)
    a0 = []
    a1 = []
    for o in range(dom.n_objects):
        go = G.ob(o)
        a0.append(
            cod.vcol(
                conj_h(Fp, a.a0[o]),
                b.a0[go],
            )
        )
        a1.append(
            cod.hrow(
                conj_v(Fp, a.a1[o]),
                b.a1[go],
            )
        )
    return DoubleModification(src, tgt, a0, a1)


def vcomp_modif(a: DoubleModification, b: DoubleModification) -> DoubleModification:
    """Stacked composite along vertically composable transformations."""
    from .functors import pseudo_equal

    if not pseudo_equal(a.G, b.F):
        raise StructureError("modifications not vertically composable")
    dom = a.F.dom
    cod = a.F.cod
    src = vcomp_double(a.src, b.src)
    tgt = vcomp_double(a.tgt, b.tgt)
    a0 = [cod.vpaste(a.a0[o], b.a0[o]) for o in range(dom.n_objects)]
    a1 = [cod.hpaste(a.a1[o], b.a1[o]) for o in range(dom.n_objects)]
    return DoubleModification(src, tgt, a0, a1)


def tcomp_modif(b: DoubleModification, a: DoubleModification) -> DoubleModification:
    """Transversal composite: a then b between stacked parallel pairs."""
    if a.tgt is not b.src and (a.tgt.t != b.src.t or a.tgt.r != b.src.r or a.tgt.v0.comp != b.src.v0.comp):
        raise StructureError("modifications not transversally composable")
    dom = a.F.dom
    cod = a.F.cod
    a0 = [cod.hpaste(a.a0[o], b.a0[o]) for o in range(dom.n_objects)]
    a1 = [cod.vpaste(a.a1[o], b.a1[o]) for o in range(dom.n_objects)]
    return DoubleModification(a.src, b.tgt, a0, a1)


# ---------------------------------------------------------------------------
# trading a vertical-side modification for a horizontal-side one


def vertical_modif_to_horizontal(a0_cells, src: DoublePNT, tgt: DoublePNT, src_pairs, tgt_pairs):
    """Build the horizontal components from invertible vertical ones using
    the binding cells of the component companions on both sides.

    ``src_pairs[o]``/``tgt_pairs[o]`` are the companion pairs exhibiting the
    components of src/tgt; ``a0_cells[o]`` must be horizontally invertible,
    with the inverse found on the finite instance by boundary search."""
    F, G = src.F, src.G
    dom, cod = F.dom, F.cod
    a0_inv = []
    for o, cell in enumerate(a0_cells):
        t_, b_, l_, r_ = cod.squares[cell]
        inv = None
        for s, bnd in enumerate(cod.squares):
            if bnd == (t_, b_, r_, l_):
                if cod.hpaste(cell, s) == cod.sq_hid[l_] and cod.hpaste(s, cell) == cod.sq_hid[r_]:
                    inv = s
                    break
        if inv is None:
            raise StructureError(f"vertical-side component at object {o} is not invertible")
        a0_inv.append(inv)
    a1 = [
        cod.hrow(tgt_pairs[o].eta, a0_inv[o], src_pairs[o].eps)
        for o in range(dom.n_objects)
    ]
    a1_inv = [
        cod.hrow(src_pairs[o].eta, a0_cells[o], tgt_pairs[o].eps)
        for o in range(dom.n_objects)
    ]
    return DoubleModification(src, tgt, a0_cells, a1), a1_inv
