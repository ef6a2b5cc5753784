"""Category-shaped structures spread over two double categories.

The data is a span of strict functors s, t off an arrow-level double
category, a unit pseudofunctor the other way, and a composition
pseudofunctor off the pullback of the span, together with associativity and
unit comparison transformations and optional coherence modifications.  The
checker verifies the printed compatibility block cellwise:

    s.p2 == t.p1     s.u == id == t.u     s.c == s.p1     t.c == t.p2

plus the requirement that whiskering any comparison transformation or
coherence modification by s or t yields an identity.  Missing 3-cells are
treated as identities with a recorded assumption, never silently.

Genuine equivalence 2-cells that are not componentwise invertible are out
of desk scale; the checker requires stored inverses on the comparison
transformations' component registries and reports anything else as a
violation rather than attempting equivalence search.
"""

from __future__ import annotations

from dataclasses import dataclass

from .kernel import (
    HCELL,
    OBJECT,
    SQUARE,
    VCELL,
    DoubleCategory,
    StructureError,
    pullback,
    pullback_pairs,
    terminal_double_category,
)
from .functors import (
    DoublePseudoFunctor,
    StrictDoubleFunctor,
    check_double_pseudo_functor,
    check_strict_functor,
    compose_pseudo,
    compose_strict,
    identity_pseudo,
    pseudo_equal,
    pseudo_from_strict,
    pullback_projections,
    strict_equal,
)
from .modif import DoubleModification, check_modification
from .report import AxiomReport, Budget, Collector
from .transform import ComponentRegistry, DoublePNT, check_double_pnt, identity_double
from .weak import Bicategory, PseudoDoubleCategory


@dataclass
class InternalCategoryData:
    d0: DoubleCategory
    d1: DoubleCategory
    s: StrictDoubleFunctor
    t: StrictDoubleFunctor
    u: DoublePseudoFunctor
    p: DoubleCategory  # pullback of (t, s): pairs (x, y) with t(x) = s(y)
    p1: StrictDoubleFunctor
    p2: StrictDoubleFunctor
    m: DoublePseudoFunctor  # composition, off the pullback
    assoc: DoublePNT | None = None
    lunit: DoublePNT | None = None
    runit: DoublePNT | None = None
    pent: DoubleModification | None = None
    mid: DoubleModification | None = None
    lft: DoubleModification | None = None
    rgt: DoubleModification | None = None
    unit_compat: DoubleModification | None = None
    extra_threecell_equations: tuple = ()  # pluggable additional checks


def pair_pseudo_into_pullback(f, g, pb, left: DoublePseudoFunctor, right: DoublePseudoFunctor, name=""):
    """Pseudofunctor X -> pullback(f, g) induced by a matching pair of
    pseudofunctors; structure cells pair componentwise."""
    pairs = pullback_pairs(f, g)
    index = {kind: {p: i for i, p in enumerate(ps)} for kind, ps in pairs.items()}

    def pick(kind, pair, what):
        try:
            return index[kind][pair]
        except KeyError:
            raise StructureError(f"pseudo pairing misses the pullback at {what} {pair}") from None

    dom = left.dom
    ob_map = [pick(OBJECT, (left.ob(a), right.ob(a)), "object") for a in range(dom.n_objects)]
    h_map = [pick(HCELL, (left.h(x), right.h(x)), "hcell") for x in range(len(dom.hcells))]
    v_map = [pick(VCELL, (left.v(x), right.v(x)), "vcell") for x in range(len(dom.vcells))]
    sq_map = [pick(SQUARE, (left.sq(x), right.sq(x)), "square") for x in range(len(dom.squares))]

    def pair_cells(table_l, table_r):
        return {k: pick(SQUARE, (table_l[k], table_r[k]), "structure cell") for k in table_l}

    return DoublePseudoFunctor(
        dom,
        pb,
        ob_map,
        h_map,
        v_map,
        sq_map,
        pair_cells(left.comp_h, right.comp_h),
        pair_cells(left.comp_h_inv, right.comp_h_inv),
        pair_cells(left.unit_h, right.unit_h),
        pair_cells(left.unit_h_inv, right.unit_h_inv),
        pair_cells(left.comp_v, right.comp_v),
        pair_cells(left.comp_v_inv, right.comp_v_inv),
        pair_cells(left.unit_v, right.unit_v),
        pair_cells(left.unit_v_inv, right.unit_v_inv),
        name=name,
    )


def triple_pullbacks(data: InternalCategoryData):
    """The two bracketings of the arrow category composed with itself twice,
    with the inner-composition functors into the binary pullback."""
    t_after_p2 = compose_strict(data.t, data.p2)
    s_after_p1 = compose_strict(data.s, data.p1)
    p3l = pullback(t_after_p2, data.s)  # ((x, y), z)
    p3l_1, p3l_2 = pullback_projections(t_after_p2, data.s, p3l)
    p3r = pullback(data.t, s_after_p1)  # (x, (y, z))
    p3r_1, p3r_2 = pullback_projections(data.t, s_after_p1, p3r)
    m_x_id = pair_pseudo_into_pullback(
        data.t,
        data.s,
        data.p,
        compose_pseudo(data.m, pseudo_from_strict(p3l_1)),
        pseudo_from_strict(p3l_2),
        name="m-x-id",
    )
    id_x_m = pair_pseudo_into_pullback(
        data.t,
        data.s,
        data.p,
        pseudo_from_strict(p3r_1),
        compose_pseudo(data.m, pseudo_from_strict(p3r_2)),
        name="id-x-m",
    )
    reindex = reindex_triples(data, p3l, t_after_p2, p3r, s_after_p1)
    return p3l, p3r, m_x_id, id_x_m, reindex


def reindex_triples(data, p3l, t_after_p2, p3r, s_after_p1) -> StrictDoubleFunctor:
    """Canonical strict isomorphism between the two bracketed pullbacks."""
    lpairs = pullback_pairs(t_after_p2, data.s)
    rpairs = pullback_pairs(data.t, s_after_p1)
    ppairs = pullback_pairs(data.t, data.s)
    kinds = [OBJECT, HCELL, VCELL, SQUARE]
    maps = {}
    for kind in kinds:
        pindex = {pr: i for i, pr in enumerate(ppairs[kind])}
        rindex = {pr: i for i, pr in enumerate(rpairs[kind])}
        out = []
        for (xy, z) in lpairs[kind]:
            x, y = ppairs[kind][xy]
            out.append(rindex[(x, pindex[(y, z)])])
        maps[kind] = out
    return StrictDoubleFunctor(
        p3l, p3r, maps[OBJECT], maps[HCELL], maps[VCELL], maps[SQUARE], name="rebracket"
    )


def nested_composition_functors(data: InternalCategoryData):
    """(left-nested, right-nested) composites of the composition with itself,
    both with domain the left-bracketed triple pullback."""
    p3l, p3r, m_x_id, id_x_m, rebracket = triple_pullbacks(data)
    left_nested = compose_pseudo(data.m, m_x_id)
    right_nested = compose_pseudo(
        data.m, compose_pseudo(id_x_m, pseudo_from_strict(rebracket))
    )
    return left_nested, right_nested, p3l


def unit_sided_functors(data: InternalCategoryData):
    """(u x 1).c and (1 x u).c as endofunctors of the arrow category."""
    u_s = compose_pseudo(data.u, pseudo_from_strict(data.s))
    u_t = compose_pseudo(data.u, pseudo_from_strict(data.t))
    ident = identity_pseudo(data.d1)
    left_arm = pair_pseudo_into_pullback(data.t, data.s, data.p, u_t, ident, name="u-x-id")
    right_arm = pair_pseudo_into_pullback(data.t, data.s, data.p, ident, u_s, name="id-x-u")
    return compose_pseudo(data.m, left_arm), compose_pseudo(data.m, right_arm)


def _whisker_cells_identity(col, prefix, s: StrictDoubleFunctor, a: DoublePNT):
    """Whiskering by the strict functor s must give the identity
    transformation: every component maps to an identity cell."""
    cod = s.cod
    dom = a.F.dom
    for o in range(dom.n_objects):
        col.eq(f"{prefix}-components", ((OBJECT, o),), s.v(a.v0.comp[o]), cod.vid[s.ob(a.F.ob(o))])
        col.eq(f"{prefix}-components", ((OBJECT, o),), s.h(a.h1.comp[o]), cod.hid[s.ob(a.F.ob(o))])
    for f in range(len(dom.hcells)):
        img = s.sq(a.t[f])
        col.eq(f"{prefix}-squares", ((HCELL, f),), img, cod.sq_vid[cod.top(img)])
    for u in range(len(dom.vcells)):
        img = s.sq(a.r[u])
        col.eq(f"{prefix}-squares", ((VCELL, u),), img, cod.sq_hid[cod.left(img)])


def _whisker_modification_identity(col, prefix, s: StrictDoubleFunctor, m: DoubleModification):
    cod = s.cod
    dom = m.F.dom
    for o in range(dom.n_objects):
        img0 = s.sq(m.a0[o])
        img1 = s.sq(m.a1[o])
        col.eq(f"{prefix}-3cells", ((OBJECT, o),), img0, cod.sq_hid[cod.left(img0)])
        col.eq(f"{prefix}-3cells", ((OBJECT, o),), img1, cod.sq_vid[cod.top(img1)])


def check_internal(
    data: InternalCategoryData,
    registry: ComponentRegistry | None = None,
    budget: Budget | None = None,
    deep: bool = True,
) -> AxiomReport:
    """The compatibility block, the whiskering conditions, and the delegated
    checks on every constituent."""
    col = Collector("internal-category", budget)
    if not (check_strict_functor(data.s).passed and check_strict_functor(data.t).passed):
        raise StructureError("span legs must be strict; pullback construction unsupported otherwise")

    if deep:
        from .kernel import check_double_category

        col.report.absorb(check_double_category(data.d0, budget=col.budget), prefix="objects: ")
        col.report.absorb(check_double_category(data.d1, budget=col.budget), prefix="arrows: ")
        col.report.absorb(check_double_category(data.p, budget=col.budget), prefix="pullback: ")
        col.report.absorb(check_double_pseudo_functor(data.u, budget=col.budget), prefix="unit: ")
        col.report.absorb(check_double_pseudo_functor(data.m, budget=col.budget), prefix="composition: ")

    # the pullback must be the canonical one; everything later is built on
    # top of it, so stop here when it is not
    rebuilt = pullback(data.t, data.s)
    from .kernel import same_category

    col.check("pullback-canonical", ("pullback",), same_category(data.p, rebuilt))
    if col.report.violations:
        col.assume("remaining compatibilities not evaluated over a non-canonical pullback")
        return col.done()
    q1, q2 = pullback_projections(data.t, data.s, data.p)
    col.check("pullback-projections", ("p1",), strict_equal(data.p1, q1))
    col.check("pullback-projections", ("p2",), strict_equal(data.p2, q2))
    if col.report.violations:
        col.assume("remaining compatibilities not evaluated over non-canonical projections")
        return col.done()

    # span compatibilities
    col.check(
        "src-of-second-is-tgt-of-first",
        ("s.p2", "t.p1"),
        strict_equal(compose_strict(data.s, data.p2), compose_strict(data.t, data.p1)),
    )
    su = compose_pseudo(pseudo_from_strict(data.s), data.u)
    tu = compose_pseudo(pseudo_from_strict(data.t), data.u)
    col.check("unit-section-s", ("s.u",), pseudo_equal(su, identity_pseudo(data.d0)))
    col.check("unit-section-t", ("t.u",), pseudo_equal(tu, identity_pseudo(data.d0)))
    sc = compose_pseudo(pseudo_from_strict(data.s), data.m)
    tc = compose_pseudo(pseudo_from_strict(data.t), data.m)
    col.check(
        "src-of-composite",
        ("s.c", "s.p1"),
        pseudo_equal(sc, pseudo_from_strict(compose_strict(data.s, data.p1))),
    )
    col.check(
        "tgt-of-composite",
        ("t.c", "t.p2"),
        pseudo_equal(tc, pseudo_from_strict(compose_strict(data.t, data.p2))),
    )

    # comparison transformations: endpoints and the whiskering conditions;
    # over damaged data the comparison functors may fail to construct at
    # all, which is itself a violation of the compatibility block
    try:
        left_nested, right_nested, p3l = nested_composition_functors(data)
        lunit_f, runit_f = unit_sided_functors(data)
    except StructureError as e:
        col.fail("comparison-construction", (str(e),))
        col.assume("comparison endpoints not evaluated: construction failed")
        return col.done()
    if data.assoc is None:
        if pseudo_equal(left_nested, right_nested):
            col.assume("associativity comparison defaulted to the identity")
        else:
            col.fail("assoc-default", ("assoc",))
    else:
        col.check("assoc-endpoints", ("source",), pseudo_equal(data.assoc.F, right_nested))
        col.check("assoc-endpoints", ("target",), pseudo_equal(data.assoc.G, left_nested))
        if deep:
            col.report.absorb(
                check_double_pnt(data.assoc, registry=registry, budget=col.budget),
                prefix="assoc: ",
            )
        _whisker_cells_identity(col, "whisker-s-assoc", data.s, data.assoc)
        _whisker_cells_identity(col, "whisker-t-assoc", data.t, data.assoc)

    for name, alpha, func in (("lunit", data.lunit, lunit_f), ("runit", data.runit, runit_f)):
        if alpha is None:
            if pseudo_equal(func, identity_pseudo(data.d1)):
                col.assume(f"{name} comparison defaulted to the identity")
            else:
                col.fail(f"{name}-default", (name,))
            continue
        col.check(f"{name}-endpoints", ("source",), pseudo_equal(alpha.F, func))
        col.check(
            f"{name}-endpoints", ("target",), pseudo_equal(alpha.G, identity_pseudo(data.d1))
        )
        if deep:
            col.report.absorb(
                check_double_pnt(alpha, registry=registry, budget=col.budget), prefix=f"{name}: "
            )
        _whisker_cells_identity(col, f"whisker-s-{name}", data.s, alpha)
        _whisker_cells_identity(col, f"whisker-t-{name}", data.t, alpha)

    # coherence 3-cells: whiskering conditions when present, a recorded
    # identity assumption when absent
    threecells = [
        ("pentagon-cell", data.pent),
        ("middle-unit-cell", data.mid),
        ("left-unit-cell", data.lft),
        ("right-unit-cell", data.rgt),
        ("unit-compat-cell", data.unit_compat),
    ]
    for name, cell in threecells:
        if cell is None:
            col.assume(f"{name} defaulted to the identity modification")
            continue
        if deep:
            col.report.absorb(check_modification(cell, budget=col.budget), prefix=f"{name}: ")
        _whisker_modification_identity(col, f"whisker-s-{name}", data.s, cell)
        _whisker_modification_identity(col, f"whisker-t-{name}", data.t, cell)
    for label, fn in data.extra_threecell_equations:
        ok = bool(fn(data))
        col.check(f"extra-{label}", (label,), ok)
    return col.done()


# ---------------------------------------------------------------------------
# derived globular families


@dataclass
class GlobularActionData:
    chi: dict
    delta: dict
    mu: dict
    tau: dict
    chi_p: dict
    delta_p: dict
    mu_p: dict
    tau_p: dict
    left_nested: DoublePseudoFunctor
    right_nested: DoublePseudoFunctor


def derive_globular(data: InternalCategoryData) -> GlobularActionData:
    """The eight one-step globular families of the unit and composition, and
    the nested-composite functors whose structure cells are the derived
    left/right composites."""
    if not (data.u.normalized and data.m.normalized):
        raise StructureError("globular extraction requires normalized unit and composition")
    left_nested, right_nested, _ = nested_composition_functors(data)
    return GlobularActionData(
        chi=dict(data.m.comp_v),
        delta=dict(data.m.unit_v),
        mu=dict(data.u.comp_v),
        tau=dict(data.u.unit_v),
        chi_p=dict(data.m.comp_h),
        delta_p=dict(data.m.unit_h),
        mu_p=dict(data.u.comp_h),
        tau_p=dict(data.u.unit_h),
        left_nested=left_nested,
        right_nested=right_nested,
    )


# ---------------------------------------------------------------------------
# constructors


def _bang(d: DoubleCategory, term: DoubleCategory) -> StrictDoubleFunctor:
    return StrictDoubleFunctor(
        d,
        term,
        [0] * d.n_objects,
        [0] * len(d.hcells),
        [0] * len(d.vcells),
        [0] * len(d.squares),
        name="!",
    )


def _unit_functor(term: DoubleCategory, d: DoubleCategory, unit_ob: int) -> StrictDoubleFunctor:
    return StrictDoubleFunctor(
        term,
        d,
        [unit_ob],
        [d.hid[unit_ob]],
        [d.vid[unit_ob]],
        [d.sq_vid[d.hid[unit_ob]]],
        name="unit",
    )


def monoid_to_internal(monoid) -> InternalCategoryData:
    """Internal structure of a tensor-monoid: trivial object part, the
    carrier as arrow part, multiplication as composition, and identity
    comparisons throughout (the strictly associative case)."""
    from .graytensor import derive_interleaved_functor

    d = monoid.carrier
    term = terminal_double_category()
    s = t = _bang(d, term)
    p = pullback(t, s)
    p1, p2 = pullback_projections(t, s, p)
    u = pseudo_from_strict(_unit_functor(term, d, monoid.unit_ob))
    m = derive_interleaved_functor(monoid, dom=p)
    data = InternalCategoryData(term, d, s, t, u, p, p1, p2, m)
    left_nested, right_nested, _ = nested_composition_functors(data)
    if not pseudo_equal(left_nested, right_nested):
        raise StructureError(
            "identity associativity comparison requires the two nested composites to agree"
        )
    data.assoc = identity_double(left_nested)
    lunit_f, runit_f = unit_sided_functors(data)
    for func, slot in ((lunit_f, "lunit"), (runit_f, "runit")):
        if not pseudo_equal(func, identity_pseudo(d)):
            raise StructureError("identity unit comparison requires a strictly unital monoid")
    data.lunit = identity_double(identity_pseudo(d))
    data.runit = identity_double(identity_pseudo(d))
    return data


def pseudomonoid_to_internal(monoid, assoc_vertical, conn, dom_conn=None) -> InternalCategoryData:
    """Like :func:`monoid_to_internal` but with a nonidentity associativity
    comparison: a plain vertical transformation between the nested
    composites, traded for a coupled pair through the supplied companions."""
    from .companion import vertical_transformation_to_double
    from .graytensor import derive_interleaved_functor

    d = monoid.carrier
    term = terminal_double_category()
    s = t = _bang(d, term)
    p = pullback(t, s)
    p1, p2 = pullback_projections(t, s, p)
    u = pseudo_from_strict(_unit_functor(term, d, monoid.unit_ob))
    m = derive_interleaved_functor(monoid, dom=p)
    data = InternalCategoryData(term, d, s, t, u, p, p1, p2, m)
    left_nested, right_nested, _ = nested_composition_functors(data)
    if not (pseudo_equal(assoc_vertical.F, right_nested) and pseudo_equal(assoc_vertical.G, left_nested)):
        raise StructureError("associativity comparison must run from the right-nested composite")
    dd, _, corr = vertical_transformation_to_double(assoc_vertical, conn, dom_conn=dom_conn)
    if not corr.passed:
        raise StructureError("companion correspondences failed: " + corr.summary())
    data.assoc = dd
    data.lunit = identity_double(identity_pseudo(d))
    data.runit = identity_double(identity_pseudo(d))
    return data


# ---------------------------------------------------------------------------
# weak structures from hom-data


def internalize_bicategory(b: Bicategory) -> PseudoDoubleCategory:
    """Pseudo double category with discrete object part: hcells the 1-cells,
    squares the 2-cells placed vertically globular, constraints inherited."""
    n1 = len(b.onecells)
    vcells = [(a, a) for a in range(b.n_objects)]
    squares = [(f, g, b.s1(f), b.t1(f)) for (f, g) in b.twocells]
    vcomp1 = {(a, a): a for a in range(b.n_objects)}
    return PseudoDoubleCategory(
        b.n_objects,
        list(b.onecells),
        vcells,
        squares,
        dict(b.comp1),
        vcomp1,
        dict(b.hcomp2),
        dict(b.vcomp2),
        list(b.id1),
        list(range(b.n_objects)),
        list(b.id2),
        [b.id2[b.id1[a]] for a in range(b.n_objects)],
        assoc=dict(b.assoc),
        assoc_inv=dict(b.assoc_inv),
        lunit=list(b.lunit),
        lunit_inv=list(b.lunit_inv),
        runit=list(b.runit),
        runit_inv=list(b.runit_inv),
        names={
            OBJECT: [b.name_of("objects", a) for a in range(b.n_objects)],
            HCELL: [b.name_of("onecell", f) for f in range(n1)],
            VCELL: [f"1^{b.name_of('objects', a)}" for a in range(b.n_objects)],
            SQUARE: [b.name_of("twocell", x) for x in range(len(b.twocells))],
        },
    )


def check_coproduct_pullback(b: Bicategory, budget: Budget | None = None) -> AxiomReport:
    """At the category level, the disjoint union of hom-pair (and hom-triple)
    sets is in canonical bijection with the pullback (and both bracketed
    triple pullbacks) of the arrow part over the discrete object part."""
    col = Collector("coproduct-pullback", budget)
    cells = list(range(len(b.onecells)))
    twocells = list(range(len(b.twocells)))

    pullback_objects = [(f, g) for f in cells for g in cells if b.t1(f) == b.s1(g)]
    pullback_morphisms = [
        (x, y) for x in twocells for y in twocells if b.t1(b.s2(x)) == b.s1(b.s2(y))
    ]
    coproduct_objects = [
        ((A, B, C), f, g)
        for A in range(b.n_objects)
        for B in range(b.n_objects)
        for C in range(b.n_objects)
        for f in cells
        if b.onecells[f] == (A, B)
        for g in cells
        if b.onecells[g] == (B, C)
    ]
    coproduct_morphisms = [
        ((A, B, C), x, y)
        for A in range(b.n_objects)
        for B in range(b.n_objects)
        for C in range(b.n_objects)
        for x in twocells
        if b.onecells[b.s2(x)] == (A, B)
        for y in twocells
        if b.onecells[b.s2(y)] == (B, C)
    ]
    image_objects = [(f, g) for (_, f, g) in coproduct_objects]
    col.eq("pair-object-count", ("n=2",), len(coproduct_objects), len(pullback_objects))
    col.check("pair-object-bijection", ("n=2",), sorted(image_objects) == sorted(pullback_objects))
    col.check("pair-object-injective", ("n=2",), len(set(image_objects)) == len(image_objects))
    image_morphisms = [(x, y) for (_, x, y) in coproduct_morphisms]
    col.eq("pair-morphism-count", ("n=2",), len(coproduct_morphisms), len(pullback_morphisms))
    col.check(
        "pair-morphism-bijection", ("n=2",), sorted(image_morphisms) == sorted(pullback_morphisms)
    )

    left_triples = [
        ((f, g), h)
        for (f, g) in pullback_objects
        for h in cells
        if b.t1(g) == b.s1(h)
    ]
    right_triples = [
        (f, (g, h))
        for f in cells
        for (g, h) in pullback_objects
        if b.t1(f) == b.s1(g)
    ]
    coproduct_triples = [
        (f, g, h)
        for (f, g) in pullback_objects
        for h in cells
        if b.t1(g) == b.s1(h)
    ]
    col.eq("triple-count", ("n=3",), len(left_triples), len(right_triples))
    col.eq("triple-count", ("n=3",), len(coproduct_triples), len(left_triples))
    rebracket = {((f, g), h): (f, (g, h)) for ((f, g), h) in left_triples}
    col.check(
        "triple-bijection",
        ("n=3",),
        sorted(rebracket.values()) == sorted(right_triples)
        and len(set(rebracket.values())) == len(left_triples),
    )
    col.assume(
        "comparison cells kappa/zeta/xi and the prism and cylinder 3-cells are "
        "canonical identities at this level"
    )
    return col.done()


def check_enriched_over_cat(b: Bicategory, budget: Budget | None = None) -> AxiomReport:
    """Hom-data as enrichment in categories: hom-categories, composition
    functors, units, invertible natural constraints, and the pentagon and
    triangle consequences of the coherence cells."""
    col = Collector("enriched-over-categories", budget)
    n2 = len(b.twocells)
    for (x, y) in sorted(b.vcomp2):
        for z in range(n2):
            if b.t2(y) == b.s2(z):
                col.eq(
                    "hom-category",
                    (("twocell", x), ("twocell", y), ("twocell", z)),
                    b.vert(b.vert(x, y), z),
                    b.vert(x, b.vert(y, z)),
                )
    for x in range(n2):
        col.eq("hom-category", (("twocell", x),), b.vert(b.id2[b.s2(x)], x), x)
        col.eq("hom-category", (("twocell", x),), b.vert(x, b.id2[b.t2(x)]), x)
    for (f, g) in sorted(b.comp1):
        col.eq(
            "composition-functor",
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
                        "composition-functor",
                        (("twocell", x), ("twocell", y), ("twocell", x2), ("twocell", y2)),
                        b.horiz(b.vert(x, x2), b.vert(y, y2)),
                        b.vert(b.horiz(x, y), b.horiz(x2, y2)),
                    )
    for a in range(b.n_objects):
        col.check("unit-cell", (("objects", a),), b.onecells[b.id1[a]] == (a, a))

    def inv_ok(cell, inv):
        return b.vert(cell, inv) == b.id2[b.s2(cell)] and b.vert(inv, cell) == b.id2[b.t2(cell)]

    for key in sorted(b.assoc):
        col.check(
            "constraint-equivalence",
            tuple(("onecell", k) for k in key),
            inv_ok(b.assoc[key], b.assoc_inv[key]),
        )
    for f in range(len(b.onecells)):
        col.check("constraint-equivalence", (("onecell", f),), inv_ok(b.lunit[f], b.lunit_inv[f]))
        col.check("constraint-equivalence", (("onecell", f),), inv_ok(b.runit[f], b.runit_inv[f]))
    for (f, g) in sorted(b.comp1):
        for h in range(len(b.onecells)):
            if b.t1(g) != b.s1(h):
                continue
            for k in range(len(b.onecells)):
                if b.t1(h) != b.s1(k):
                    continue
                col.eq(
                    "pentagon",
                    tuple(("onecell", x) for x in (f, g, h, k)),
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


def diagonal_internal(d: DoubleCategory) -> InternalCategoryData:
    """The identity span on d: both legs the identity, the pullback the
    diagonal, composition the (common) projection.  The smallest bundle with
    a nontrivial object part, which the mutation tests lean on."""
    from .functors import identity_functor

    ident = identity_functor(d)
    p = pullback(ident, ident)
    p1, p2 = pullback_projections(ident, ident, p)
    data = InternalCategoryData(
        d,
        d,
        ident,
        ident,
        pseudo_from_strict(identity_functor(d)),
        p,
        p1,
        p2,
        pseudo_from_strict(p1),
    )
    left_nested, right_nested, _ = nested_composition_functors(data)
    if not pseudo_equal(left_nested, right_nested):
        raise StructureError("diagonal composites must agree")
    data.assoc = identity_double(left_nested)
    lunit_f, runit_f = unit_sided_functors(data)
    data.lunit = identity_double(lunit_f)
    data.runit = identity_double(runit_f)
    return data
