import pytest

from dblkit import zoo
from dblkit.kernel import embed_two_category, quintet
from dblkit.functors import identity_functor, pseudo_from_strict


@pytest.fixture(scope="session")
def bz3_setting():
    """Identity endofunctor pair on the commuting-square category of the
    cyclic group of order three: the standard companion testbed."""
    from dblkit.builders import enumerate_plain_verticals, quintet_functor
    from dblkit.companion import find_connection

    c = zoo.cyclic_group_cat(3)
    d = quintet(c)
    F = pseudo_from_strict(identity_functor(d))
    verts = enumerate_plain_verticals(F, F)
    conn = find_connection(d)
    return c, d, F, verts, conn


@pytest.fixture(scope="session")
def sign_setting():
    """Identity endofunctor on the embedded sign 2-category: the smallest
    setting with parallel squares on one boundary."""
    t = zoo.sign_two_category()
    d = embed_two_category(t)
    F = pseudo_from_strict(identity_functor(d))
    return t, d, F
