"""Minimal relations, homotopy classes, pi_1 and the pushout."""

import pytest

from bqtop.core import BoundQuiver, enumerate_paths
from bqtop.homotopy import (HypothesisViolated, abelianization,
                            is_minimal_relation, minimal_relation_supports,
                            natural_homotopy_classes, pi1_presentation,
                            simplify_presentation, spanning_tree,
                            van_kampen_pushout, walk_homotopy_classes)

EX1 = BoundQuiver(
    ["1", "2", "3"],
    [("beta", "3", "2"), ("gamma", "3", "2"), ("alpha", "2", "1")],
    [[(["beta", "alpha"], 1), (["gamma", "alpha"], -1)]])

EX3 = BoundQuiver(
    ["1", "2", "3", "4", "5", "6"],
    [("alpha", "6", "5"),
     ("beta1", "5", "2"), ("beta2", "5", "3"), ("beta3", "5", "4"),
     ("gamma1", "2", "1"), ("gamma2", "3", "1"), ("gamma3", "4", "1")],
    [[(["alpha", "beta1"], 1)],
     [(["beta1", "gamma1"], 1), (["beta2", "gamma2"], 1),
      (["beta3", "gamma3"], 1)]])

NOSN = BoundQuiver(
    ["x1", "x2", "x3"],
    [("a1", "x1", "x2"), ("b1", "x1", "x2"),
     ("a2", "x2", "x3"), ("b2", "x2", "x3")],
    [[(["a1", "b2"], 1), (["b1", "b2"], 1), (["b1", "a2"], -1)],
     [(["a1", "a2"], 1), (["b1", "a2"], 1), (["b1", "b2"], -1)]])

VK = BoundQuiver(
    ["1", "2", "3", "4", "5", "6"],
    [("a1", "3", "2"), ("b1", "3", "2"), ("a2", "2", "1"), ("b2", "2", "1"),
     ("d1", "2", "4"), ("d2", "2", "5"), ("e1", "6", "4"), ("e2", "6", "5")],
    [[(["a1", "a2"], 1), (["b1", "b2"], -1)],
     [(["a1", "b2"], 1), (["b1", "a2"], -1)]])

KER = BoundQuiver(
    ["1", "2", "3", "4", "5", "6"],
    [("a1", "6", "5"), ("a2", "6", "5"), ("b1", "4", "2"), ("b2", "5", "2"),
     ("b3", "5", "3"), ("g1", "2", "1"), ("g2", "2", "1")],
    [[(["a1", "b3"], 1), (["a2", "b3"], -1)],
     [(["b1", "g1"], 1), (["b1", "g2"], -1)]])


def test_ex1_minimal_relations():
    t = enumerate_paths(EX1)
    mrs, _ = minimal_relation_supports(t)
    assert len(mrs) == 1
    assert sorted(str(p) for p in mrs[0].support()) == \
        ["beta*alpha", "gamma*alpha"]
    ba = EX1.path(["beta", "alpha"])
    ga = EX1.path(["gamma", "alpha"])
    assert is_minimal_relation(t, [(ba, 1), (ga, -1)])
    assert not is_minimal_relation(t, [(ba, 1)])


def test_ex1_natural_vs_walk():
    t = enumerate_paths(EX1)
    nat = natural_homotopy_classes(t)
    b = EX1.path(["beta"])
    g = EX1.path(["gamma"])
    ba = EX1.path(["beta", "alpha"])
    ga = EX1.path(["gamma", "alpha"])
    assert nat.class_of(b) != nat.class_of(g)
    assert nat.class_of(ba) == nat.class_of(ga)
    assert len(nat.one_cell_classes()) == 4
    walk = walk_homotopy_classes(t, walk_bound=8)
    assert walk.class_of(b) == walk.class_of(g)
    assert len(walk.one_cell_classes()) == 3


def test_ex3_classes():
    t = enumerate_paths(EX3)
    mrs, _ = minimal_relation_supports(t)
    sups = sorted(tuple(sorted(str(p) for p in m.support())) for m in mrs)
    assert sups == [
        ("alpha*beta2*gamma2", "alpha*beta3*gamma3"),
        ("beta1*gamma1", "beta2*gamma2", "beta3*gamma3"),
    ]
    nat = natural_homotopy_classes(t, mrs)
    bg = [EX3.path(["beta%d" % i, "gamma%d" % i]) for i in (1, 2, 3)]
    assert len({nat.class_of(p) for p in bg}) == 1
    # the class of alpha*beta1*gamma1 contains an ideal member yet is a
    # nonzero class through its live representatives
    ab1g1 = EX3.path(["alpha", "beta1", "gamma1"])
    ab2g2 = EX3.path(["alpha", "beta2", "gamma2"])
    assert nat.class_of(ab1g1) == nat.class_of(ab2g2)
    assert nat.class_nonzero[nat.class_of(ab1g1)]
    assert len(nat.one_cell_classes()) == 11


def test_ex3_walk_equals_natural():
    t = enumerate_paths(EX3)
    nat = natural_homotopy_classes(t)
    walk = walk_homotopy_classes(t)
    assert len(walk.one_cell_classes()) == len(nat.one_cell_classes()) == 11
    for p in t.paths:
        assert (set(map(str, nat.members(nat.class_of(p)))) ==
                set(map(str, walk.members(walk.class_of(p)))))


def test_nosn_minimal_relation_sizes():
    t = enumerate_paths(NOSN)
    mrs, _ = minimal_relation_supports(t)
    # includes a support-4 minimal relation a1a2 + 2 a1b2 - b1a2 + b1b2
    assert sorted(len(m.terms) for m in mrs) == [2, 3, 3, 4]


def test_nosn_classes():
    t = enumerate_paths(NOSN)
    nat = natural_homotopy_classes(t)
    level2 = [p for p in t.paths if len(p) == 2]
    assert len({nat.class_of(p) for p in level2}) == 1
    assert len(nat.one_cell_classes()) == 5
    walk = walk_homotopy_classes(t)
    assert walk.class_of(NOSN.path(["a1"])) == walk.class_of(NOSN.path(["b1"]))
    assert walk.class_of(NOSN.path(["a2"])) == walk.class_of(NOSN.path(["b2"]))
    assert len(walk.one_cell_classes()) == 3


def test_integer_combinations_can_be_minimal():
    tri = BoundQuiver(
        ["s", "m1", "m2", "m3", "t"],
        [("u1", "s", "m1"), ("u2", "s", "m2"), ("u3", "s", "m3"),
         ("v1", "m1", "t"), ("v2", "m2", "t"), ("v3", "m3", "t")],
        [[(["u1", "v1"], 1), (["u2", "v2"], -1)],
         [(["u1", "v1"], 1), (["u3", "v3"], -1)]])
    t = enumerate_paths(tri)
    w1 = tri.path(["u1", "v1"])
    w2 = tri.path(["u2", "v2"])
    w3 = tri.path(["u3", "v3"])
    assert is_minimal_relation(t, [(w1, 2), (w2, -1), (w3, -1)])
    assert is_minimal_relation(t, [(w1, 1), (w2, -1)])


def test_vk_presentation():
    t = enumerate_paths(VK)
    mrs, _ = minimal_relation_supports(t)
    assert len(mrs) == 2
    pres = pi1_presentation(t, mrs, base="1")
    # 8 arrows - 5 tree arrows + 2 relation relators... the tree kills 5
    # generators, leaving 3, with 5 tree relators and 2 relation relators
    assert len(pres.relators) == 7
    assert abelianization(pres) == (1, [2])
    simp = simplify_presentation(pres)
    assert abelianization(simp) == (1, [2])
    assert (len(simp.generators), len(simp.relators)) in {(2, 1), (3, 1)}
    if len(simp.relators) == 1:
        r = simp.relators[0]
        assert len(r) == 2 and r[0][0] == r[1][0]  # a square g*g


def test_vk_pushout():
    t = enumerate_paths(VK)
    res = van_kampen_pushout(t, ["2", "3", "4", "5", "6"], ["1", "2", "3"])
    assert abelianization(res.piece1) == (2, [])
    assert abelianization(res.piece2) == (0, [2])
    assert abelianization(res.intersection) == (1, [])
    assert abelianization(res.pushout) == (1, [2])


def test_vk_degenerate_pushout():
    t = enumerate_paths(VK)
    res = van_kampen_pushout(t, ["1"], ["1", "2", "3", "4", "5", "6"])
    assert abelianization(res.pushout) == (1, [2])


def test_vk_pushout_hypothesis_violation():
    t = enumerate_paths(VK)
    with pytest.raises(HypothesisViolated):
        van_kampen_pushout(t, ["1", "2"], ["2", "3", "4", "5", "6"])


def test_ker_class_counts():
    t = enumerate_paths(KER)
    mrs, _ = minimal_relation_supports(t)
    assert len(mrs) == 2
    assert len(natural_homotopy_classes(t, mrs).one_cell_classes()) == 17
    assert len(walk_homotopy_classes(t, mrs).one_cell_classes()) == 10


def test_monomial_has_no_minimal_relations():
    mono = BoundQuiver(["1", "2", "3"],
                       [("a", "1", "2"), ("b", "2", "3")],
                       [[(["a", "b"], 1)]])
    t = enumerate_paths(mono)
    mrs, _ = minimal_relation_supports(t)
    assert mrs == []
    walk = walk_homotopy_classes(t, mrs)
    assert len(walk) == len(t.paths)  # discrete partition


def test_spanning_tree():
    tree, walks = spanning_tree(VK, "1")
    assert len(tree) == 5  # |Q_0| - 1 arrows reach every vertex
    assert set(walks) == set(VK.vertices)


def test_rp2_abelianization():
    rp2 = BoundQuiver(
        ["1", "2", "3"],
        [("alpha1", "3", "2"), ("beta1", "3", "2"),
         ("alpha2", "2", "1"), ("beta2", "2", "1")],
        [[(["alpha1", "alpha2"], 1), (["beta1", "beta2"], -1)],
         [(["alpha1", "beta2"], 1), (["beta1", "alpha2"], -1)]])
    t = enumerate_paths(rp2)
    assert abelianization(pi1_presentation(t)) == (0, [2])
