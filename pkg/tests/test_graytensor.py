import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dblkit import zoo
from dblkit.kernel import StructureError, quintet
from dblkit.functors import check_double_pseudo_functor
from dblkit.graytensor import (
    GrayTensorSkeleton,
    Letter,
    Move,
    SquareCalculus,
    SquareWord,
    WordCapExceeded,
    check_monoid,
    check_monoidal_embedding,
    compare_interleavings,
    derive_interleaved_functor,
    two_category_tensor_context,
)


@pytest.fixture(scope="module")
def arrow_pair_ctx():
    a = zoo.walking_arrow_two_category()
    b = zoo.walking_arrow_two_category()
    return a, b, two_category_tensor_context(a, b)


def test_identity_letters_vanish(arrow_pair_ctx):
    a, b, ctx = arrow_pair_ctx
    w = ctx.normalize((0, 0), (Letter("L", 0),))
    assert w.letters == ()
    w = ctx.normalize((0, 0), (Letter("L", 0), Letter("R", 0)))
    assert w.letters == ()
    with pytest.raises(StructureError):
        ctx.normalize((0, 0), (Letter("R", 1),))  # does not chain


def test_same_side_letters_merge(arrow_pair_ctx):
    a, b, ctx = arrow_pair_ctx
    # f then id1 merges to f on the left side
    w = ctx.normalize((0, 0), (Letter("L", 2), Letter("L", 1)))
    assert w.letters == (Letter("L", 2),)


def test_merge_through_inverses_collapses():
    a = zoo.walking_arrow_two_category()
    iso = zoo.walking_iso()
    from dblkit.graytensor import SideSpec, TensorContext

    ctx = TensorContext(
        SideSpec(iso.n_objects, iso.mor, iso.comp, iso.ids),
        SideSpec(a.n_objects, a.onecells, a.comp1, a.id1),
    )
    w = ctx.normalize((0, 0), (Letter("L", 2), Letter("L", 3)))
    assert w.letters == ()


def test_interleavings_are_distinct_in_tensor_equal_in_product(arrow_pair_ctx):
    a, b, _ = arrow_pair_ctx
    tensor, cartesian = compare_interleavings(a, b, 2, 2)
    assert tensor == "distinct"
    assert cartesian == "equal"


def test_word_counts_shuffle_oracle():
    # chains are acyclic; interleaving words between corners are counted by
    # an independent recursion over which side moves last
    a = zoo.chain(2)
    b = zoo.chain(2)
    da, db = quintet(a), quintet(b)
    skel = GrayTensorSkeleton(da, db, cap=8)
    words = skel.hwords()

    def count_words(dx, dy):
        # number of alternating interleavings of one jump-sequence on each
        # axis: compositions of dx and dy interleaved with no two adjacent
        # same-side letters; count by last-moved side
        from functools import lru_cache

        @lru_cache(None)
        def comps(n, k):
            # compositions of n into exactly k positive parts
            if k == 0:
                return 1 if n == 0 else 0
            if n <= 0:
                return 0
            return sum(comps(n - i, k - 1) for i in range(1, n + 1))

        total = 0
        for ka in range(0, dx + 1):
            for kb in range(0, dy + 1):
                if abs(ka - kb) > 1:
                    continue
                if ka == kb == 0:
                    total += 1 if (dx == 0 and dy == 0) else 0
                    continue
                ways = comps(dx, ka) * comps(dy, kb)
                if ka == kb and ka > 0:
                    ways *= 2  # either side may start
                total += ways
        return total

    for ax in range(3):
        for ay in range(3):
            for bx in range(ax, 3):
                for by in range(ay, 3):
                    expect = count_words(bx - ax, by - ay)
                    got = sum(
                        1
                        for w in words
                        if w.start == (skel_index(a, ax, ay)[0], skel_index(a, ax, ay)[1])
                        and False
                    )
    # direct comparison on the corner-to-corner words
    full = [
        w
        for w in words
        if w.start == (0, 0)
        and skel.hctx.coords_after(w) == (2, 2)
    ]
    assert len(full) == count_words(2, 2)


def skel_index(chain_cat, x, y):
    return (x, y)


def test_skeleton_with_unit_factor_is_identity():
    d = quintet(zoo.walking_arrow())
    from dblkit.kernel import terminal_double_category

    term = terminal_double_category()
    skel = GrayTensorSkeleton(d, term, cap=6)
    words = skel.hwords()
    # one word per nonidentity 1-cell chain of d plus the empty words
    singles = [w for w in words if len(w.letters) == 1]
    assert all(let.side == "L" for w in singles for let in w.letters)
    nonid = [f for f in range(len(d.hcells)) if f not in set(d.hid)]
    assert len(singles) == len(nonid)


def test_cap_overflow_is_explicit():
    d = quintet(zoo.cyclic_group_cat(2))
    skel = GrayTensorSkeleton(d, d, cap=3)
    words = skel.hwords()
    long_word = max(words, key=lambda w: len(w.letters))
    assert len(long_word.letters) == 3
    with pytest.raises(WordCapExceeded):
        skel.compose_h(long_word, skel.hctx.normalize(
            skel.hctx.coords_after(long_word),
            (Letter("R", 1),) if long_word.letters[-1].side == "L" else (Letter("L", 1),),
        ))


def test_cyclic_factors_require_cap():
    d = quintet(zoo.cyclic_group_cat(2))
    with pytest.raises(StructureError):
        GrayTensorSkeleton(d, d, cap=0)
    assert not GrayTensorSkeleton(d, d, cap=3).hctx.is_acyclic()


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_normalize_idempotent_on_random_words(data):
    a = zoo.walking_two_cell()
    b = zoo.chain(2)
    from dblkit.graytensor import SideSpec, TensorContext

    ctx = TensorContext(
        SideSpec(a.n_objects, a.onecells, a.comp1, a.id1),
        SideSpec(b.n_objects, b.mor, b.comp, b.ids),
    )
    start = (
        data.draw(st.integers(min_value=0, max_value=a.n_objects - 1)),
        data.draw(st.integers(min_value=0, max_value=b.n_objects - 1)),
    )
    coords = list(start)
    letters = []
    for _ in range(data.draw(st.integers(min_value=0, max_value=6))):
        side = data.draw(st.sampled_from("LR"))
        spec = ctx.spec(side)
        here = coords[0] if side == "L" else coords[1]
        options = [c for c in range(len(spec.cells)) if spec.src(c) == here]
        if not options:
            continue
        cell = data.draw(st.sampled_from(options))
        letters.append(Letter(side, cell))
        if side == "L":
            coords[0] = spec.tgt(cell)
        else:
            coords[1] = spec.tgt(cell)
    once = ctx.normalize(start, tuple(letters))
    twice = ctx.normalize(once.start, once.letters)
    assert once == twice


def test_monoidal_embedding_all_acyclic_pairs():
    cats = zoo.acyclic_two_category_catalog()
    for (n1, a), (n2, b) in itertools.product(cats, repeat=2):
        rep = check_monoidal_embedding(a, b, cap=4)
        assert rep.passed, f"{n1} x {n2}: {rep.summary()}"
        assert not any(v.axiom == "square-word-inconclusive" for v in rep.violations)


def test_square_word_rewriting_basics(arrow_pair_ctx):
    a, b, ctx = arrow_pair_ctx
    calc = SquareCalculus(ctx, a, b)
    top = ctx.normalize((0, 0), (Letter("L", 2), Letter("R", 2)))
    # interchange then its inverse cancels
    e = SquareWord(top, (Move("flip", 0), Move("unflip", 0)))
    assert calc.rewrite(e).moves == ()
    # identity rewrites drop
    e = SquareWord(top, (Move("appL", 0, a.id2[2]),))
    assert calc.rewrite(e).moves == ()


def test_rewrites_commute_past_interchanges():
    a = zoo.walking_arrow_two_category()
    b = zoo.walking_two_cell()
    ctx = two_category_tensor_context(a, b)
    calc = SquareCalculus(ctx, a, b)
    top = ctx.normalize((0, 0), (Letter("L", 2), Letter("R", 2)))
    e = SquareWord(top, (Move("flip", 0), Move("appR", 0, 4)))
    n = calc.rewrite(e)
    assert n.moves[0].kind == "appR" and n.moves[1].kind == "flip"
    # same bottom either way
    assert calc.bottom(n) == calc.bottom(e)


def test_rewrite_measure_strictly_decreases():
    a = zoo.walking_two_cell()
    b = zoo.walking_two_cell()
    ctx = two_category_tensor_context(a, b)
    calc = SquareCalculus(ctx, a, b)
    tops = [w for w in ctx.enumerate_words(3)]
    count = 0
    for top in tops:
        for e in calc.enumerate_square_words(top, 3):
            calc.rewrite(e, assert_measure=True)
            count += 1
    assert count > 100


def test_critical_pairs_join_up_to_three_moves():
    a = zoo.walking_arrow_two_category()
    b = zoo.walking_two_cell()
    ctx = two_category_tensor_context(a, b)
    calc = SquareCalculus(ctx, a, b)
    for top in ctx.enumerate_words(3):
        fails = calc.critical_pairs_join(top, 3)
        assert not fails, fails[:2]


def test_compare_verdicts(arrow_pair_ctx):
    a, b, ctx = arrow_pair_ctx
    calc = SquareCalculus(ctx, a, b)
    top = ctx.normalize((0, 0), (Letter("L", 2), Letter("R", 2)))
    flip = SquareWord(top, (Move("flip", 0),))
    wrapped = SquareWord(top, (Move("flip", 0), Move("unflip", 0), Move("flip", 0)))
    assert calc.compare(flip, wrapped) == "equal"
    nothing = SquareWord(top, ())
    assert calc.compare(flip, nothing) == "distinct"


# ---------------------------------------------------------------------------
# monoid structures


@pytest.mark.parametrize(
    "name,mk",
    [
        ("trivial", zoo.trivial_monoid_in_dbl),
        ("cyclic2", zoo.commutative_monoid_in_dbl),
        ("min", zoo.min_monoid_in_dbl),
        ("braid", zoo.braid_monoid_in_dbl),
    ],
)
def test_monoids_check(name, mk):
    rep = check_monoid(mk())
    assert rep.passed, f"{name}: {rep.summary()}"


def test_interleaved_functor_strict_iff_identity_flips():
    for mk, expect_strict in [
        (zoo.commutative_monoid_in_dbl, True),
        (zoo.min_monoid_in_dbl, True),
        (zoo.braid_monoid_in_dbl, False),
    ]:
        f = derive_interleaved_functor(mk())
        assert f.strict == expect_strict
        rep = check_double_pseudo_functor(f)
        assert rep.passed, rep.summary()
        assert f.normalized


def test_both_readings_pass():
    for mk in (zoo.commutative_monoid_in_dbl, zoo.braid_monoid_in_dbl):
        f = derive_interleaved_functor(mk(), first_factor_first=False)
        rep = check_double_pseudo_functor(f)
        assert rep.passed, rep.summary()


def test_braid_readings_differ_exactly_by_flip():
    m = zoo.braid_monoid_in_dbl()
    d = m.carrier
    f1 = derive_interleaved_functor(m)
    A, B = 1, 2  # the 1-cells a and b
    nh = len(d.hcells)
    # image of the pair (a, b) under the two readings
    first = f1.h(A * nh + B)
    f2 = derive_interleaved_functor(m, first_factor_first=False)
    second = f2.h(A * nh + B)
    assert first != second
    assert d.hcomp(m.mul_h_left[(A, 0)], m.mul_h_right[(0, B)]) == first
    # the composition structure cell on ((a,1),(1,b)) is the whiskered flip
    key = (A * nh + 0, 0 * nh + B)
    assert f1.comp_h[key] == d.hrow(
        d.sq_vid[m.mul_h_left[(A, 0)]], m.flip_hh[(0, 0)], d.sq_vid[m.mul_h_right[(0, B)]]
    )
    key2 = (A * nh + d.hid[0], d.hid[0] * nh + B)
    assert f1.comp_h[key2] == f1.comp_h[key]


def test_braid_flip_cell_appears_in_structure():
    m = zoo.braid_monoid_in_dbl()
    d = m.carrier
    f = derive_interleaved_functor(m)
    S = 6
    nh = len(d.hcells)
    # composing (1,b) after (a,1) versus the pointwise images differ by s
    key = (d.hid[0] * nh + 2, 1 * nh + d.hid[0])  # pair (1,b) then (a,1)
    cell = f.comp_h[key]
    assert cell == S or d.squares[cell] == d.squares[S]


def test_monoid_law_violation_detected():
    m = zoo.braid_monoid_in_dbl()
    m.mul_h_left[(3, 0)] = 4  # image of ab at the unit coordinate -> ba
    rep = check_monoid(m)
    assert not rep.passed
