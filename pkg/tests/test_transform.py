import itertools
import random

import pytest

from dblkit import zoo
from dblkit.kernel import quintet
from dblkit.functors import pseudo_from_strict
from dblkit.builders import (
    quintet_functor,
    random_theta_instance,
    registry_for,
    theta_from_plain_vertical,
)
from dblkit.transform import (
    ComponentRegistry,
    DoublePNT,
    ThetaPNT,
    check_double_pnt,
    check_horizontal_pnt,
    check_theta,
    check_vertical_pnt,
    hcomp_double,
    hcomp_horizontal,
    hcomp_theta,
    hcomp_vertical,
    identity_double,
    identity_horizontal,
    identity_theta,
    identity_vertical,
    theta_candidates_from_double,
    theta_to_double,
    transpose_double,
    vcomp_double,
    vcomp_horizontal,
    vcomp_theta,
    vcomp_vertical,
    whisker_functor,
)


@pytest.fixture(scope="module")
def bz3(bz3_setting):
    return bz3_setting


def all_doubles(bz3):
    c, d, F, verts, conn = bz3
    out = []
    for a0 in verts:
        th = theta_from_plain_vertical(a0, conn, dom_conn=conn)
        out.append(theta_to_double(th))
    return out


def test_identity_transformations_pass(bz3):
    _, d, F, _, _ = bz3
    assert check_horizontal_pnt(identity_horizontal(F)).passed
    assert check_vertical_pnt(identity_vertical(F)).passed
    reg = ComponentRegistry.of(hcells=set(identity_horizontal(F).comp), vcells=set(identity_vertical(F).comp))
    assert check_double_pnt(identity_double(F), reg).passed


def test_identity_double_components_are_identity_squares(bz3):
    _, d, F, _, _ = bz3
    idd = identity_double(F)
    for f in range(len(d.hcells)):
        assert idd.t[f] == d.sq_vid[F.h(f)]
        assert idd.v0.nat[f] == d.sq_vid[F.h(f)]
    for u in range(len(d.vcells)):
        assert idd.r[u] == d.sq_hid[F.v(u)]
        assert idd.v0.delta[u] == d.sq_hid[F.v(u)]


def test_registry_required_for_pass(bz3):
    _, _, F, _, _ = bz3
    rep = check_double_pnt(identity_double(F), registry=None)
    assert rep.status == "inconclusive"
    assert rep.assumptions


def test_enumerated_verticals_pass_and_trade(bz3):
    c, d, F, verts, conn = bz3
    assert len(verts) == 3
    for a0 in verts:
        assert check_vertical_pnt(a0).passed
        th = theta_from_plain_vertical(a0, conn, dom_conn=conn)
        assert check_horizontal_pnt(th.h1).passed


def test_theta_checks_and_expansion(bz3):
    c, d, F, verts, conn = bz3
    for a0 in verts:
        th = theta_from_plain_vertical(a0, conn, dom_conn=conn)
        reg = registry_for(th.v0, th.h1)
        assert check_theta(th, reg).passed
        dd = theta_to_double(th)
        rep = check_double_pnt(dd, reg)
        assert rep.passed, rep.summary()


def test_theta_reverse_candidates_recover_t(bz3):
    c, d, F, verts, conn = bz3
    for a0 in verts:
        dd = theta_to_double(theta_from_plain_vertical(a0, conn, dom_conn=conn))
        t_theta, r_theta = theta_candidates_from_double(dd)
        rebuilt = ThetaPNT(dd.v0, dd.h1, t_theta)
        assert theta_to_double(rebuilt).t == dd.t
        rebuilt_r = ThetaPNT(dd.v0, dd.h1, r_theta)
        assert theta_to_double(rebuilt_r).r == dd.r


def test_randomized_theta_instances_pass():
    rng = random.Random(20240817)
    cats = zoo.small_category_catalog()
    seen = 0
    while seen < 40:
        inst = random_theta_instance(rng, cats)
        if inst is None:
            continue
        th, conn, reg = inst
        assert check_theta(th, reg).passed
        dd = theta_to_double(th)
        rep = check_double_pnt(dd, reg)
        assert rep.passed, rep.summary()
        seen += 1


def test_breaking_t_breaks_coupling(sign_setting):
    # needs parallel squares on one boundary, which the sign setting has
    t2, d, F = sign_setting
    doubles = sign_doubles(sign_setting)
    dd = doubles[(0, 0)]
    reg = ComponentRegistry.of(hcells={d.hid[0]}, vcells={d.vid[0]})
    assert check_double_pnt(dd, reg).passed
    t = list(dd.t)
    cell = t[1]
    alt = next(s for s in range(len(d.squares)) if s != cell and d.squares[s] == d.squares[cell])
    t[1] = alt
    broken = DoublePNT(dd.v0, dd.h1, t, dd.r)
    rep = check_double_pnt(broken, reg)
    assert not rep.passed
    assert any(v.axiom.startswith("coupling") for v in rep.violations)


def test_vertical_composition_strictly_associative(bz3):
    doubles = all_doubles(bz3)
    reg = registry_for(*[x.v0 for x in doubles], *[x.h1 for x in doubles])
    for a, b in itertools.product(doubles, repeat=2):
        assert check_double_pnt(vcomp_double(a, b), reg).passed
    for a, b, c in itertools.product(doubles, repeat=3):
        lhs = vcomp_double(vcomp_double(a, b), c)
        rhs = vcomp_double(a, vcomp_double(b, c))
        assert lhs.t == rhs.t and lhs.r == rhs.r
        assert lhs.v0.nat == rhs.v0.nat and lhs.h1.delta == rhs.h1.delta


def test_vertical_composition_unital(bz3):
    _, _, F, _, _ = bz3
    for dd in all_doubles(bz3):
        ident = identity_double(F)
        left = vcomp_double(ident, dd)
        right = vcomp_double(dd, ident)
        assert left.t == dd.t and right.t == dd.t
        assert left.r == dd.r and right.r == dd.r


def test_horizontal_composites_pass(bz3):
    doubles = all_doubles(bz3)
    reg = registry_for(*[x.v0 for x in doubles], *[x.h1 for x in doubles])
    for a, b in itertools.product(doubles, repeat=2):
        rep = check_double_pnt(hcomp_double(b, a), reg)
        assert rep.passed, rep.summary()


def test_pnt_compositions_pass(bz3):
    doubles = all_doubles(bz3)
    hors = [x.h1 for x in doubles]
    vers = [x.v0 for x in doubles]
    for a, b in itertools.product(hors, repeat=2):
        assert check_horizontal_pnt(vcomp_horizontal(a, b)).passed
        assert check_horizontal_pnt(hcomp_horizontal(b, a)).passed
    for a, b in itertools.product(vers, repeat=2):
        assert check_vertical_pnt(vcomp_vertical(a, b)).passed
        assert check_vertical_pnt(hcomp_vertical(b, a)).passed


def test_strict_case_reduces_to_classical_composition(bz3):
    # with identity comparison data, the stacked composite's components are
    # the table composites and the comparison squares stay pasted identities
    c, d, F, verts, conn = bz3
    hors = [theta_from_plain_vertical(v, conn, dom_conn=conn).h1 for v in verts]
    for a, b in itertools.product(hors, repeat=2):
        v = vcomp_horizontal(a, b)
        for o in range(d.n_objects):
            assert v.comp[o] == d.hcomp(a.comp[o], b.comp[o])
        for u in range(len(d.vcells)):
            assert v.nat[u] == d.hpaste(a.nat[u], b.nat[u])


def test_whisker_by_strict_functor_maps_delta(bz3):
    c, d, F, verts, conn = bz3
    a1 = theta_from_plain_vertical(verts[1], conn, dom_conn=conn).h1
    w = whisker_functor(F, a1)
    # identity functor with identity structure cells: images on the nose
    assert w.comp == a1.comp
    assert w.delta == a1.delta
    assert check_horizontal_pnt(w).passed


def test_whisker_by_nonidentity_endofunctor(bz3):
    c, d, F, verts, conn = bz3
    # inversion is a group automorphism, hence a strict endofunctor
    inv_map = tuple((3 - m) % 3 for m in range(3))
    H = pseudo_from_strict(quintet_functor(c, c, d, d, (0,), inv_map))
    a1 = theta_from_plain_vertical(verts[1], conn, dom_conn=conn).h1
    w = whisker_functor(H, a1)
    rep = check_horizontal_pnt(w)
    assert rep.passed, rep.summary()
    assert w.comp[0] == H.h(a1.comp[0])


def test_theta_compositions(bz3):
    c, d, F, verts, conn = bz3
    thetas = [theta_from_plain_vertical(v, conn, dom_conn=conn) for v in verts]
    reg = registry_for(*[t.v0 for t in thetas], *[t.h1 for t in thetas])
    for a, b in itertools.product(thetas, repeat=2):
        vv = vcomp_theta(a, b)
        assert check_theta(vv, reg).passed
        hh = hcomp_theta(b, a)
        rep = check_theta(hh, reg)
        assert rep.passed, rep.summary()


def test_identity_theta_expands_to_identity_double(bz3):
    _, _, F, _, _ = bz3
    th = identity_theta(F)
    dd = theta_to_double(th)
    ident = identity_double(F)
    assert dd.t == ident.t and dd.r == ident.r


def test_transpose_double_is_involution(bz3):
    c, d, F, verts, conn = bz3
    dd = theta_to_double(theta_from_plain_vertical(verts[2], conn, dom_conn=conn))
    tt = transpose_double(transpose_double(dd))
    assert tt.t == dd.t and tt.r == dd.r
    assert tt.v0.comp == dd.v0.comp and tt.h1.comp == dd.h1.comp


# ---------------------------------------------------------------------------
# sign-category coupled pairs: nonidentity coupling data


def sign_doubles(sign_setting):
    """The four coupled pairs on the embedded sign 2-category with identity
    components but freely signed coupling squares."""
    t, d, F = sign_setting
    out = {}
    for c_sign in (0, 1):
        for d_sign in (0, 1):
            v0 = identity_vertical(F)
            h1 = identity_horizontal(F)
            tt = [2 * f + c_sign for f in range(len(d.hcells))]
            rr = [d_sign]  # the signed square on the unit 1-cell
            out[(c_sign, d_sign)] = DoublePNT(v0, h1, tt, rr)
    return out


def test_sign_doubles_pass(sign_setting):
    t, d, F = sign_setting
    doubles = sign_doubles(sign_setting)
    reg = ComponentRegistry.of(hcells={d.hid[0]}, vcells={d.vid[0]})
    for key, dd in doubles.items():
        rep = check_double_pnt(dd, reg)
        assert rep.passed, (key, rep.summary())


def test_sign_doubles_compose(sign_setting):
    doubles = sign_doubles(sign_setting)
    t, d, F = sign_setting
    reg = ComponentRegistry.of(hcells={d.hid[0]}, vcells={d.vid[0]})
    # stacking multiplies the coupling signs
    a = doubles[(1, 0)]
    b = doubles[(1, 1)]
    ab = vcomp_double(a, b)
    assert check_double_pnt(ab, reg).passed
    assert ab.t == list(doubles[(0, 1)].t) or tuple(ab.t) == doubles[(0, 1)].t


def test_theta_composition_commutes_with_expansion_on_strict(bz3):
    # over strict functors the expansion of a composite equals the composite
    # of the expansions on the nose
    c, d, F, verts, conn = bz3
    thetas = [theta_from_plain_vertical(v, conn, dom_conn=conn) for v in verts]
    for a, b in itertools.product(thetas, repeat=2):
        via_theta = theta_to_double(vcomp_theta(a, b))
        direct = vcomp_double(theta_to_double(a), theta_to_double(b))
        assert via_theta.t == direct.t and via_theta.r == direct.r
        via_theta = theta_to_double(hcomp_theta(b, a))
        direct = hcomp_double(theta_to_double(b), theta_to_double(a))
        assert via_theta.t == direct.t and via_theta.r == direct.r


def test_right_unit_normalization_on_cocycle_functor():
    from dblkit.transform import right_unit_constraint
    from dblkit.zoo import sign_cocycle_pseudofunctor
    from dblkit.functors import check_double_pseudo_functor

    F = sign_cocycle_pseudofunctor()
    assert not F.normalized
    assert check_double_pseudo_functor(F).passed
    a = identity_horizontal(F)
    composite, normalization, rep = right_unit_constraint(a)
    assert rep.passed, rep.summary()
    d = F.cod
    assert any(s != d.sq_vid[d.top(s)] for s in normalization)
    assert any("normalized" in x for x in rep.assumptions)


def test_right_unit_identity_on_normalized(bz3):
    from dblkit.transform import right_unit_constraint

    c, d, F, verts, conn = bz3
    a1 = theta_from_plain_vertical(verts[1], conn, dom_conn=conn).h1
    composite, normalization, rep = right_unit_constraint(a1)
    assert rep.passed
    assert all(s == d.sq_vid[d.top(s)] for s in normalization)


def test_stacked_composition_of_sides_associative(bz3):
    doubles = all_doubles(bz3)
    hors = [x.h1 for x in doubles]
    vers = [x.v0 for x in doubles]
    for a, b, c in itertools.product(hors, repeat=3):
        lhs = vcomp_horizontal(vcomp_horizontal(a, b), c)
        rhs = vcomp_horizontal(a, vcomp_horizontal(b, c))
        assert lhs.comp == rhs.comp and lhs.nat == rhs.nat and lhs.delta == rhs.delta
    for a, b, c in itertools.product(vers, repeat=3):
        lhs = vcomp_vertical(vcomp_vertical(a, b), c)
        rhs = vcomp_vertical(a, vcomp_vertical(b, c))
        assert lhs.comp == rhs.comp and lhs.nat == rhs.nat and lhs.delta == rhs.delta
