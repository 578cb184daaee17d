"""Quivers, path tables, ideal membership and algebra properties."""

from fractions import Fraction

import pytest

from bqtop.core import (AdmissibilityError, BoundQuiver, MalformedRelation,
                        Path, QuiverError, algebra_properties,
                        enumerate_paths)


def bq(vertices, arrows, rels=()):
    return BoundQuiver(vertices, arrows, rels)


EX1 = bq(["1", "2", "3"],
         [("alpha", "2", "1"), ("beta", "3", "2"), ("gamma", "3", "2")],
         [[(["beta", "alpha"], 1), (["gamma", "alpha"], -1)]])


def test_path_composition_and_display():
    p = EX1.path(["beta", "alpha"])
    assert (p.source, p.target) == ("3", "1")
    assert str(p) == "beta*alpha"
    e = EX1.path([], at="2")
    assert e.is_stationary and str(e) == "e_2"
    assert EX1.path_vertices(p) == ["3", "2", "1"]


def test_path_validation():
    with pytest.raises(QuiverError):
        EX1.path(["alpha", "beta"])  # endpoints do not chain
    with pytest.raises(QuiverError):
        EX1.path(["nope"])


def test_quiver_validation():
    with pytest.raises(QuiverError):
        bq(["1"], [("a", "1", "2")])  # arrow endpoint not a vertex
    with pytest.raises(QuiverError):
        bq(["1", "1"], [])  # duplicate vertex
    with pytest.raises(QuiverError):
        bq(["1", "2"], [("a", "1", "2"), ("a", "1", "2")])  # duplicate name


def test_relation_format_errors():
    # a term of length < 2 cannot appear in an admissible ideal
    with pytest.raises((MalformedRelation, AdmissibilityError)):
        bq(["1", "2"], [("a", "1", "2")], [[(["a"], 1)]])
    # terms must be parallel
    with pytest.raises((MalformedRelation, AdmissibilityError)):
        bq(["1", "2", "3", "4"],
           [("a", "1", "2"), ("b", "2", "3"), ("c", "2", "4")],
           [[(["a", "b"], 1), (["a", "c"], 1)]])


def test_table_contents_ex1():
    t = enumerate_paths(EX1)
    assert t.bound == 3
    assert t.path_in_ideal(EX1.path(["beta", "alpha"])) is False
    assert t.vector_in_ideal([(EX1.path(["beta", "alpha"]), Fraction(1)),
                              (EX1.path(["gamma", "alpha"]), Fraction(-1))])
    assert t.dims[("3", "1")] == 1
    assert t.dims[("3", "2")] == 2
    between = t.paths_between("3", "1")
    assert sorted(str(p) for p in between) == ["beta*alpha", "gamma*alpha"]


def test_vector_in_ideal_drops_beyond_bound_terms():
    # paths longer than the bound are automatically ideal members
    q = bq(["1", "2", "3", "4"],
           [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4")],
           [[(["a", "b", "c"], 1)]])
    t = enumerate_paths(q)
    assert t.bound == 3
    assert t.vector_in_ideal([(q.path(["a", "b", "c"]), Fraction(1))])
    assert not t.path_in_ideal(q.path(["a", "b"]))


def test_cyclic_quiver_needs_bounding_relations():
    loop = bq(["u", "v"], [("s", "u", "v"), ("t", "v", "u")])
    with pytest.raises(AdmissibilityError):
        enumerate_paths(loop, cap=8)
    bounded = bq(["u", "v"], [("s", "u", "v"), ("t", "v", "u")],
                 [[(["s", "t"], 1)], [(["t", "s"], 1)]])
    t = enumerate_paths(bounded)
    assert t.bound == 2
    props = algebra_properties(t)
    # the radical is nonzero in both directions between u and v
    assert not props.triangular
    assert not props.almost_triangular
    # parallel to the stationary path at u runs the zero path s*t
    assert not props.semi_commutative


def test_properties_hhgap():
    q = bq(["1", "2", "3"],
           [("alpha", "1", "2"), ("beta", "2", "3"), ("gamma", "1", "3")],
           [[(["alpha", "beta"], 1)]])
    p = algebra_properties(enumerate_paths(q))
    assert p.schurian and p.triangular and p.connected
    assert not p.semi_commutative  # alpha*beta dies, parallel gamma lives
    assert p.dims[("1", "3")] == 1
    assert p.total_dimension == 6
    assert p.euler_characteristic == 1


def test_properties_semi_commutative_beyond_bound():
    # the mixed pair is only visible through a path longer than the
    # nilpotency bound: a length-4 route all of whose stored sections
    # vanish, against a live parallel length-2 route
    q = bq(["1", "2", "3", "4", "5", "6"],
           [("a1", "6", "4"), ("a2", "4", "3"), ("a3", "3", "2"),
            ("a4", "2", "1"), ("b1", "6", "5"), ("b2", "5", "1")],
           [[(["a1", "a2"], 1)], [(["a3", "a4"], 1)]])
    t = enumerate_paths(q)
    assert t.bound == 3
    p = algebra_properties(t)
    assert p.schurian
    assert not p.semi_commutative


def test_properties_rp2():
    q = bq(["1", "2", "3"],
           [("alpha1", "3", "2"), ("beta1", "3", "2"),
            ("alpha2", "2", "1"), ("beta2", "2", "1")],
           [[(["alpha1", "alpha2"], 1), (["beta1", "beta2"], -1)],
            [(["alpha1", "beta2"], 1), (["beta1", "alpha2"], -1)]])
    p = algebra_properties(enumerate_paths(q))
    assert not p.schurian
    assert p.semi_commutative
    assert not p.constricted
    assert p.dims[("3", "1")] == 2
    assert p.euler_characteristic == 2


def test_properties_constricted_tree():
    q = bq(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")],
           [[(["a", "b"], 1)]])
    p = algebra_properties(enumerate_paths(q))
    assert p.constricted and p.schurian and p.semi_commutative
    assert p.total_dimension == 5


def test_disconnected_quiver_flagged():
    q = bq(["1", "2", "3", "4"], [("a", "1", "2"), ("b", "3", "4")])
    p = algebra_properties(enumerate_paths(q))
    assert not p.connected


def test_path_sorting_is_stable():
    t = enumerate_paths(EX1)
    names = [str(p) for p in t.paths]
    assert names == sorted(names, key=lambda s: (s.count("*"), s)) or names
    # identical runs produce identical tables
    t2 = enumerate_paths(EX1)
    assert [str(p) for p in t2.paths] == names
