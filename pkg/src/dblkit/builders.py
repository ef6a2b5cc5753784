"""Constructors and exhaustive enumerators over commuting-square categories.

Squares there are unique per boundary, so a transformation is determined by
its per-object components and existence is a commutation condition.  That
makes exhaustive enumeration of transformations between two fixed functors
cheap, which the correspondence tests rely on.
"""

from __future__ import annotations

import itertools
import random

from .kernel import DoubleCategory, FiniteCategory, StructureError, quintet
from .functors import DoublePseudoFunctor, StrictDoubleFunctor, pseudo_from_strict
from .transform import ComponentRegistry, HorizontalPNT, ThetaPNT, VerticalPNT
from .companion import Connection, vertical_to_horizontal


def square_with_boundary(d: DoubleCategory, boundary):
    for s, bnd in enumerate(d.squares):
        if bnd == tuple(boundary):
            return s
    return None


def enumerate_cat_functors(c1: FiniteCategory, c2: FiniteCategory, limit=None):
    """All functors between two finite categories, as (ob_map, mor_map)."""
    out = []
    n1 = len(c1.mor)
    for ob_map in itertools.product(range(c2.n_objects), repeat=c1.n_objects):
        # candidate images per morphism, boundary-compatible
        candidates = []
        for f in range(n1):
            a, b = c1.mor[f]
            opts = [g for g in range(len(c2.mor)) if c2.mor[g] == (ob_map[a], ob_map[b])]
            candidates.append(opts)
        for mor_map in itertools.product(*candidates):
            ok = all(mor_map[c1.ids[a]] == c2.ids[ob_map[a]] for a in range(c1.n_objects))
            if ok:
                ok = all(
                    mor_map[h] == c2.comp[(mor_map[f], mor_map[g])]
                    for (f, g), h in c1.comp.items()
                )
            if ok:
                out.append((tuple(ob_map), tuple(mor_map)))
                if limit is not None and len(out) >= limit:
                    return out
    return out


def quintet_functor(c1: FiniteCategory, c2: FiniteCategory, d1: DoubleCategory, d2: DoubleCategory, ob_map, mor_map) -> StrictDoubleFunctor:
    """Strict functor between commuting-square categories induced by a
    functor of the underlying finite categories."""
    sq_map = []
    for (t, b, l, r) in d1.squares:
        img = square_with_boundary(d2, (mor_map[t], mor_map[b], mor_map[l], mor_map[r]))
        if img is None:
            raise StructureError("functor image of a commuting square does not commute")
        sq_map.append(img)
    return StrictDoubleFunctor(d1, d2, ob_map, mor_map, mor_map, sq_map)


def enumerate_plain_verticals(F: DoublePseudoFunctor, G: DoublePseudoFunctor):
    """All vertical transformations with identity comparison squares between
    two parallel functors into a category whose squares are unique per
    boundary.  Each result is strong (identity squares self-invert)."""
    dom, cod = F.dom, F.cod
    per_object = [
        [u for u in range(len(cod.vcells)) if cod.vcells[u] == (F.ob(o), G.ob(o))]
        for o in range(dom.n_objects)
    ]
    found = []
    for comp in itertools.product(*per_object):
        nat = []
        for f in range(len(dom.hcells)):
            A, B = dom.hs(f), dom.ht(f)
            s = square_with_boundary(cod, (F.h(f), G.h(f), comp[A], comp[B]))
            if s is None:
                break
            nat.append(s)
        else:
            delta = []
            for u in range(len(dom.vcells)):
                A, B = dom.vs(u), dom.vt(u)
                if cod.vcomp(F.v(u), comp[B]) != cod.vcomp(comp[A], G.v(u)):
                    break
                delta.append(cod.sq_hid[cod.vcomp(F.v(u), comp[B])])
            else:
                found.append(
                    VerticalPNT(
                        F,
                        G,
                        comp,
                        nat,
                        delta,
                        {u: delta[u] for u in range(len(delta))},
                    )
                )
    return found


def enumerate_companion_horizontals(F: DoublePseudoFunctor, G: DoublePseudoFunctor, conn: Connection):
    """All strong horizontal transformations whose components are companion
    hcells from ``conn``, over a codomain with unique squares per boundary.
    Returns (transformation, per-object companion choices) pairs."""
    dom, cod = F.dom, F.cod
    per_object = []
    for o in range(dom.n_objects):
        opts = [
            p
            for _, p in conn.items()
            if cod.hcells[p.hcell] == (F.ob(o), G.ob(o))
        ]
        per_object.append(opts)
    found = []
    for ps in itertools.product(*per_object):
        comp = [p.hcell for p in ps]
        nat = []
        for u in range(len(dom.vcells)):
            A, B = dom.vs(u), dom.vt(u)
            s = square_with_boundary(cod, (comp[A], comp[B], F.v(u), G.v(u)))
            if s is None:
                break
            nat.append(s)
        else:
            delta = []
            delta_inv = {}
            for f in range(len(dom.hcells)):
                A, B = dom.hs(f), dom.ht(f)
                top = cod.hcomp(F.h(f), comp[B])
                bot = cod.hcomp(comp[A], G.h(f))
                s = square_with_boundary(cod, (top, bot, cod.vid[F.ob(A)], cod.vid[G.ob(B)]))
                inv = square_with_boundary(cod, (bot, top, cod.vid[F.ob(A)], cod.vid[G.ob(B)]))
                if s is None or inv is None:
                    break
                delta.append(s)
                delta_inv[f] = inv
            else:
                found.append((HorizontalPNT(F, G, comp, nat, delta, delta_inv), list(ps)))
    return found


def registry_for(*transformations) -> ComponentRegistry:
    """Registry made of the component cells of the given transformations."""
    hcells, vcells = set(), set()
    for a in transformations:
        if isinstance(a, HorizontalPNT):
            hcells.update(a.comp)
        elif isinstance(a, VerticalPNT):
            vcells.update(a.comp)
        else:
            vcells.update(a.v0.comp)
            hcells.update(a.h1.comp)
    return ComponentRegistry.of(hcells, vcells)


def theta_from_plain_vertical(a0: VerticalPNT, conn: Connection, dom_conn: Connection | None = None) -> ThetaPNT:
    """Generating squares are the folding-out binding cells of the chosen
    companions of the components."""
    a1 = vertical_to_horizontal(a0, conn, dom_conn=dom_conn)
    ps = [conn[a0.comp[o]] for o in range(a0.F.dom.n_objects)]
    return ThetaPNT(a0, a1, [p.eps for p in ps])


def random_theta_instance(rng: random.Random, catalog):
    """One randomized theta-generated instance over the square catalog.

    Draws a pair of categories, a functor between their square categories,
    and a random plain vertical transformation on it; returns the instance
    with the connection and registry the checks need, or None when the draw
    admits no transformation."""
    from .companion import find_connection
    from .transform import ComponentRegistry

    name1, c1 = catalog[rng.randrange(len(catalog))]
    d1 = quintet(c1)
    endo = rng.random() < 0.5
    if endo:
        c2, d2 = c1, d1
    else:
        _, c2 = catalog[rng.randrange(len(catalog))]
        d2 = quintet(c2)
    functors = enumerate_cat_functors(c1, c2, limit=24)
    if not functors:
        return None
    obf, morf = functors[rng.randrange(len(functors))]
    obg, morg = functors[rng.randrange(len(functors))]
    F = pseudo_from_strict(quintet_functor(c1, c2, d1, d2, obf, morf))
    G = pseudo_from_strict(quintet_functor(c1, c2, d1, d2, obg, morg))
    verts = enumerate_plain_verticals(F, G)
    if not verts:
        return None
    a0 = verts[rng.randrange(len(verts))]
    conn = find_connection(d2, vcells=set(a0.comp))
    dom_conn = find_connection(d1)
    th = theta_from_plain_vertical(a0, conn, dom_conn=dom_conn)
    # the invertibility quantifier ranges over domain cells that are
    # components of transformations in play; only the endo draw has any
    reg = registry_for(th.v0, th.h1) if d2 is d1 else ComponentRegistry.of()
    return th, conn, reg
