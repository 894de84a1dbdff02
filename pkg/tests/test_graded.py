import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracle import brute_block_dims, brute_dim
from quivergrad import corpus
from quivergrad.errors import NotFiniteDimensional, PresentationError
from quivergrad.graded import (Presentation, certify_finite, hilbert, hilbert_matrix,
                               make_presentation, normal_form)
from quivergrad.quiver import Element, Quiver, multiply, parse_element
from quivergrad.textformat import format_presentation, parse_presentation

# frozen from the brute-force oracle (tests/oracle.py), degrees 0..5
FROZEN = {
    "kq-kronecker": [2, 2, 0, 0, 0, 0],
    "kronecker-pi": [2, 4, 6, 8, 10, 12],
    "kq-a2": [2, 1, 0, 0, 0, 0],
    "pi-a2": [2, 2, 0, 0, 0, 0],
    "kq-a3": [3, 2, 1, 0, 0, 0],
    "pi-a3": [3, 4, 3, 0, 0, 0],
    "beilinson-p1": [2, 2, 0, 0, 0, 0],
    "beilinson-p2": [3, 6, 6, 0, 0, 0],
    "cubic-control": [4, 3, 2, 0, 0, 0],
    "polynomial2": [1, 2, 3, 4, 5, 6],
    "exterior2": [1, 2, 1, 0, 0, 0],
}


@pytest.mark.parametrize("name", sorted(corpus.CORPUS))
def test_hilbert_matches_oracle(name):
    p = corpus.load(name)
    assert [brute_dim(p, d) for d in range(6)] == FROZEN[name]
    assert hilbert(p, 5).as_list() == FROZEN[name]


@pytest.mark.parametrize("name", ["kronecker-pi", "pi-a3", "beilinson-p2", "cubic-control"])
def test_block_dims_match_oracle(name):
    p = corpus.load(name)
    for d, blocks in enumerate(hilbert_matrix(p, 4)):
        assert blocks == brute_block_dims(p, d)


@pytest.mark.parametrize("name", sorted(corpus.CORPUS))
def test_relations_reduce_to_zero(name):
    p = corpus.load(name)
    for r in p.relations:
        assert not normal_form(p, r)
        # and so does anything in the ideal they generate
        for a in p.quiver.arrows:
            x = p.arrow_element(a.name)
            assert not normal_form(p, multiply(x, r))
            assert not normal_form(p, multiply(r, x))


def test_normal_form_idempotent_and_linear():
    p = corpus.load("kronecker-pi")
    q = p.quiver
    x = parse_element(q, "a.a*.a + 2*b.b*.a - a.b*.b")
    y = parse_element(q, "b.a*.a - a.a*.b")
    nx = normal_form(p, x)
    assert normal_form(p, nx) == nx
    assert normal_form(p, x + y) == nx + normal_form(p, y)
    # a.a* == -b.b*, so a.a*.a + b.b*.a vanishes
    assert not normal_form(p, parse_element(q, "a.a*.a + b.b*.a"))


def test_standard_monomials_prefix_closed():
    for name in ("kronecker-pi", "pi-a3", "polynomial2", "cubic-control"):
        p = corpus.load(name)
        for d in range(1, 5):
            prev = set(p.basis(d - 1))
            for b in p.basis(d):
                if d > 1:
                    assert p.quiver.path(b.arrows[:-1]) in prev


def test_certify_finite():
    assert certify_finite(corpus.load("pi-a3"), 100) == [3, 4, 3]
    assert certify_finite(corpus.load("exterior2"), 100) == [1, 2, 1]
    with pytest.raises(NotFiniteDimensional):
        certify_finite(corpus.load("polynomial2"), 30)


def test_rank_two_grading_refines_length():
    p = corpus.load("kronecker-pi")
    w = {"a": (1, 0), "b": (1, 0), "a*": (0, 1), "b*": (0, 1)}
    p2 = p.with_weights(w)
    for s in range(5):
        total = sum(p2.dim((i, s - i)) for i in range(s + 1))
        assert total == p.dim(s)
        for i in range(s + 1):
            assert p2.dim((i, s - i)) == brute_dim(p2, (i, s - i))


def test_bad_presentations():
    q = Quiver(("e",), (("x", "e", "e"), ("y", "e", "e")))
    with pytest.raises(PresentationError):
        Presentation(q, [parse_element(q, "x + y.y")])
    with pytest.raises(PresentationError):
        Presentation(q, [], {"x": 1, "y": 0})
    with pytest.raises(PresentationError):
        Presentation(q, [], {"x": 1})
    with pytest.raises(PresentationError):
        Presentation(q, [], {"x": (1,), "y": (1, 0)})


@pytest.mark.parametrize("name", sorted(corpus.CORPUS))
def test_text_round_trip(name):
    p = corpus.load(name)
    text = format_presentation(p)
    p2 = parse_presentation(text)
    assert format_presentation(p2) == text
    assert hilbert(p2, 3) == hilbert(p, 3)


# random quadratic presentations on one or two vertices
@st.composite
def presentations(draw):
    nv = draw(st.integers(1, 2))
    verts = ["u", "v"][:nv]
    na = draw(st.integers(1, 3))
    arrows = []
    for i in range(na):
        s = draw(st.sampled_from(verts))
        t = draw(st.sampled_from(verts))
        arrows.append((f"x{i}", s, t))
    q = Quiver(tuple(verts), tuple(arrows))
    blocks = {}
    for a in q.arrows:
        for b in q.arrows:
            if a.target == b.source:
                blocks.setdefault((a.source, b.target), []).append(q.path([a.name, b.name]))
    rels = []
    for paths in blocks.values():
        for _ in range(draw(st.integers(0, 2))):
            coeffs = draw(st.lists(st.integers(-2, 2), min_size=len(paths), max_size=len(paths)))
            x = Element(list(zip(paths, coeffs)))
            if x:
                rels.append(x)
    return Presentation(q, rels)


@given(presentations())
@settings(max_examples=40, deadline=None)
def test_random_presentations_match_oracle(p):
    for d in range(5):
        assert p.dim(d) == brute_dim(p, d)


@given(presentations())
@settings(max_examples=25, deadline=None)
def test_make_presentation_from_strings(p):
    from quivergrad.quiver import format_element

    p2 = make_presentation(p.quiver.vertices, p.quiver.arrows,
                           [format_element(r) for r in p.relations])
    assert hilbert(p2, 3) == hilbert(p, 3)
