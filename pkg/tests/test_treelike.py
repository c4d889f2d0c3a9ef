from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quiversi.enumeration import (
    enumerate_admissible_tree_paths,
    enumerate_tree_paths,
    is_tree_path,
    minimal_generating_set,
)
from quiversi.quiver import Multidegree, QuiverError, mdeg, validate_quiver
from quiversi.symalg import GF2, QQ
from quiversi.treelike import (
    Coloring,
    Edge,
    b_theta,
    b_theta_multidegree,
    good_colorings,
    hat_graph,
    is_good_coloring,
    is_tree_like,
    satisfies_not2_conditions,
    tree_like_generating_set,
    tree_quiver_gens,
    two_vertex_closed_form,
    two_vertex_generating_set,
    two_vertex_quiver,
)

from support import W, fixture, loops

FIELDS = [QQ, GF2]


def test_hat_graph_of_ex_treelike():
    q = fixture("ex_treelike")
    h = hat_graph(q)
    assert set(h.edges) == {Edge(("W1", "W2")), Edge(("W2", "V3")), Edge(("W2", "W5")), Edge(("W5", "W4"))}
    assert h.backrefs[Edge(("W2", "W5"))] == ("d1", "d2")
    assert h.loops["W1"] == ("a",) and h.loops["W2"] == ()
    assert is_tree_like(q)


def test_hat_graph_small_cases():
    h = hat_graph(two_vertex_quiver(0, 0, 3))
    assert len(h.edges) == 1 and h.backrefs[h.edges[0]] == ("z1", "z2", "z3")
    h = hat_graph(loops("a", "b"))
    assert h.edges == () and h.vertices == ("v",)
    tri = validate_quiver(["u", "v", "w"], [("p", "u", "v"), ("r", "v", "w"), ("s", "w", "u")])
    assert not is_tree_like(tri)
    with pytest.raises(QuiverError):
        list(good_colorings(tri))


def test_coloring_of_example_is_good():
    q = fixture("ex_treelike")
    theta = Coloring.from_arrows(q, ["a", "b1", "c1", "c2", "d1", "d2"])
    assert is_good_coloring(q, theta)
    w = b_theta(q, theta)
    assert is_tree_path(q, w)
    assert mdeg(q, w) == mdeg(q, W("a b1 c1 c2* d1 d2 b1*"))


def test_bad_colorings():
    q = fixture("ex_treelike")
    assert not is_good_coloring(q, Coloring.from_arrows(q, []))
    # lone b1 with nothing on either end
    assert not is_good_coloring(q, Coloring.from_arrows(q, ["b1"]))
    # three parallel arrows is odd and not 1
    q3 = two_vertex_quiver(1, 1, 3)
    assert not is_good_coloring(q3, Coloring.from_arrows(q3, ["z1", "z2", "z3"]))
    # disconnected: loop a and loop f only
    assert not is_good_coloring(q, Coloring.from_arrows(q, ["a", "f"]))
    with pytest.raises(QuiverError):
        b_theta(q, Coloring.from_arrows(q, ["b1"]))


def test_b_theta_small_examples():
    q = two_vertex_quiver(0, 0, 2)
    w = b_theta(q, Coloring.from_arrows(q, ["z1", "z2"]))
    assert mdeg(q, w) == Multidegree({"z1": 1, "z2": 1})
    assert str(w) in ("z1 z2*", "z2* z1", "z2 z1*", "z1* z2")
    lq = loops("a")
    assert str(b_theta(lq, Coloring.from_arrows(lq, ["a"]))) == "a"


def test_tree_quivers_have_no_good_colorings():
    q = fixture("path3")
    assert list(good_colorings(q)) == []
    for fs in FIELDS:
        assert tree_quiver_gens(q, fs).dets == ("a", "b", "c")
    single = validate_quiver(["u", "v"], [("z", "u", "v")])
    assert len(tree_quiver_gens(single, QQ)) == 1
    star = validate_quiver(["c", "p1", "p2", "p3", "p4"],
                           [(f"s{i}", "c", f"p{i}") for i in range(1, 5)])
    assert tree_quiver_gens(star, GF2).dets == ("s1", "s2", "s3", "s4")
    with pytest.raises(QuiverError):
        tree_quiver_gens(fixture("one_loop"), QQ)


def test_not2_conditions():
    q = two_vertex_quiver(0, 0, 4)
    assert satisfies_not2_conditions(q, Coloring.from_arrows(q, ["z1", "z2", "z3", "z4"]))
    q = two_vertex_quiver(1, 0, 4)
    assert not satisfies_not2_conditions(q, Coloring.from_arrows(q, ["x1", "z1", "z2", "z3", "z4"]))
    q = loops("a", "b", "c", "d")
    assert not satisfies_not2_conditions(q, Coloring.from_arrows(q, ["a", "b", "c", "d"]))
    assert satisfies_not2_conditions(q, Coloring.from_arrows(q, ["a", "b", "c"]))


# ---------- two vertices ----------

def test_two_vertex_examples():
    r2 = two_vertex_generating_set(4, 4, 4, GF2)
    r0 = two_vertex_generating_set(4, 4, 4, QQ)
    assert (r2.count, r0.count) == (2734, 1167)
    assert r2.closed_form == 2734 and r0.closed_form is None
    for fs in FIELDS:
        assert two_vertex_generating_set(2, 2, 2, fs).count == 46
        assert two_vertex_generating_set(0, 0, 1, fs).count == 1
    with pytest.raises(ValueError):
        two_vertex_generating_set(-1, 0, 0, QQ)


@pytest.mark.parametrize("p,q,l", [(p, q, l) for p in range(4) for q in range(4) for l in range(4)
                                   if p + q + l <= 6 and p <= q])
def test_two_vertex_matches_general_enumeration(p, q, l):
    quiver = two_vertex_quiver(p, q, l)
    r2 = two_vertex_generating_set(p, q, l, GF2)
    r0 = two_vertex_generating_set(p, q, l, QQ)
    assert r2.count == r2.closed_form == len(quiver.arrows) + len(enumerate_tree_paths(quiver))
    assert r0.count == len(quiver.arrows) + len(enumerate_admissible_tree_paths(quiver))
    assert set(r2.generators.traces) == set(enumerate_tree_paths(quiver))
    assert set(r0.generators.traces) == set(enumerate_admissible_tree_paths(quiver))


@pytest.mark.parametrize("name", ["ex_treelike", "kronecker_loops", "two_loops", "path3"])
def test_colorings_match_general_enumeration(name):
    q = fixture(name)
    for fs in FIELDS:
        assert set(tree_like_generating_set(q, fs).traces) == set(minimal_generating_set(q, fs).traces)


@st.composite
def tree_like_quivers(draw, max_arrows: int = 6):
    """A random tree on up to 4 vertices, edges thickened to parallel classes, plus loops."""
    n = draw(st.integers(1, 4))
    vs = [f"v{i}" for i in range(n)]
    arrows = []
    for i in range(1, n):
        parent = draw(st.integers(0, i - 1))
        for _ in range(draw(st.integers(1, 3))):
            h, t = draw(st.permutations([vs[i], vs[parent]]))
            arrows.append((h, t))
    for v in vs:
        for _ in range(draw(st.integers(0, 2))):
            arrows.append((v, v))
    arrows = arrows[:max_arrows] or [(vs[0], vs[0])]
    return validate_quiver(vs, [(f"a{k}", h, t) for k, (h, t) in enumerate(arrows)])


@settings(max_examples=40)
@given(tree_like_quivers())
def test_colorings_property(q):
    assert is_tree_like(q)
    for theta in good_colorings(q):
        w = b_theta(q, theta)
        assert is_tree_path(q, w) and mdeg(q, w) == b_theta_multidegree(q, theta)
    for fs in FIELDS:
        assert set(tree_like_generating_set(q, fs).traces) == set(minimal_generating_set(q, fs).traces)
