"""Text formats: quiver files, morphism files, group files."""

import pathlib
from fractions import Fraction

import pytest

from bqtop.dsl import ParseError, parse, parse_group, parse_morphism, serialize

CORPUS = pathlib.Path(__file__).resolve().parent.parent / "corpus"


def test_parse_minimal():
    q = parse("""
# a comment line
vertex 1
arrow a 1 2
arrow b 2 3
rel a*b
""")
    assert q.vertices == ("1", "2", "3")
    assert [a.name for a in q.arrows] == ["a", "b"]
    assert len(q.relations) == 1
    assert str(q.relations[0]) == "a*b"


def test_implicit_vertices_first_use_order():
    q = parse("arrow a 5 3\narrow b 3 9\n")
    assert q.vertices == ("5", "3", "9")


def test_coefficients_and_signs():
    q = parse("""
arrow a 1 2
arrow b 1 2
arrow c 2 3
rel 2*a*c - 3/2*b*c
""")
    rel = q.relations[0]
    coeffs = {str(p): c for p, c in rel.terms}
    assert coeffs == {"a*c": Fraction(2), "b*c": Fraction(-3, 2)}


def test_round_trip_inline():
    text = """vertex 1
vertex 2
vertex 3
arrow a 1 2
arrow b 1 2
arrow c 2 3
rel a*c - b*c
"""
    q = parse(text)
    assert serialize(q) == text
    assert serialize(parse(serialize(q))) == serialize(q)


@pytest.mark.parametrize("name", [
    "ex1", "ex3", "sphere", "sphere_solid", "vk", "rp2", "rp2_cover",
    "pres1", "pres2", "ker", "nosn", "hhgap", "hheq",
    "cor66_tree1", "cor66_tree2", "cor66_cycle1", "cor66_cycle2",
    "cor66_cycle3",
])
def test_corpus_round_trips(name):
    text = (CORPUS / (name + ".bq")).read_text()
    q = parse(text)
    again = parse(serialize(q))
    assert serialize(again) == serialize(q)
    assert again.vertices == q.vertices
    assert [a.name for a in again.arrows] == [a.name for a in q.arrows]
    assert [str(r) for r in again.relations] == [str(r) for r in q.relations]


def test_vk_corpus_shape():
    q = parse((CORPUS / "vk.bq").read_text())
    assert len(q.vertices) == 6
    assert len(q.arrows) == 8
    assert len(q.relations) == 2


def positioned(text):
    with pytest.raises(ParseError) as err:
        parse(text)
    assert err.value.line is not None and err.value.col is not None
    return str(err.value)


def test_error_positions():
    msg = positioned("vertex 1\nvertex 1\n")
    assert msg.startswith("2:8:") and "duplicate" in msg

    msg = positioned("arrow a 1 2\narrow a 1 2\n")
    assert msg.startswith("2:7:") and "duplicate" in msg

    msg = positioned("arrow a 1 2\nrel a*zz\n")
    assert "unknown arrow" in msg

    msg = positioned("arrow a 1 2\narrow b 3 4\nrel a*b\n")
    assert "does not continue" in msg or "chain" in msg or "break" in msg

    msg = positioned("arrow a 1 2\narrow b 2 3\nrel a*b -\n")
    assert msg.startswith("3:") and "dangling sign" in msg

    # admissibility: a bare arrow cannot generate an admissible ideal
    msg = positioned("arrow a 1 2\narrow b 2 3\narrow c 1 3\nrel a*b - c\n")
    assert "length 1" in msg


def test_bad_statement_and_arity():
    with pytest.raises(ParseError):
        parse("foo bar\n")
    with pytest.raises(ParseError):
        parse("arrow a 1\n")
    with pytest.raises(ParseError):
        parse("vertex\n")


def test_parse_morphism_roundtrip():
    base = parse((CORPUS / "rp2.bq").read_text())
    cover = parse((CORPUS / "rp2_cover.bq").read_text())
    p = parse_morphism((CORPUS / "rp2_morphism.map").read_text(),
                       cover, base)
    assert p.vertex("x1") == "1"
    assert p.arrow("b2y") == "beta2"


def test_parse_morphism_errors():
    base = parse("arrow alpha 1 2\n")
    cover = parse("arrow a 1 2\n")
    with pytest.raises(ParseError):
        parse_morphism("vmap 1 -> 1\n", cover, base)  # incomplete
    with pytest.raises(ParseError):
        parse_morphism("vmap 1 -> 1\nvmap 1 -> 2\n"
                       "vmap 2 -> 2\namap a -> alpha\n", cover, base)
    with pytest.raises(ParseError):
        parse_morphism("vmap 1 -> 1\nvmap 2 -> 2\namap a -> nope\n",
                       cover, base)


def test_parse_group():
    cover = parse((CORPUS / "rp2_cover.bq").read_text())
    elements = parse_group((CORPUS / "rp2_group.grp").read_text(), cover)
    assert len(elements) == 2
    assert elements[0].is_identity()
    assert elements[1].vertex("x1") == "y1"


def test_parse_group_errors():
    q = parse("arrow a 1 2\n")
    with pytest.raises(ParseError):
        parse_group("vmap 1 -> 1\n", q)  # line outside an element block
    with pytest.raises(ParseError):
        parse_group("", q)
    with pytest.raises(ParseError):
        parse_group("element g\nelement g\n", q)
