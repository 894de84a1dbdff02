"""Small named presentations used by the tests, the CLI examples and the benchmarks."""
from __future__ import annotations

from .graded import make_presentation


def kronecker():
    return make_presentation(["e", "f"], [("a", "e", "f"), ("b", "e", "f")])


def pi_kronecker():
    return make_presentation(
        ["e", "f"],
        [("a", "e", "f"), ("b", "e", "f"), ("a*", "f", "e"), ("b*", "f", "e")],
        ["a.a* + b.b*", "a*.a + b*.b"],
    )


def a2():
    return make_presentation(["1", "2"], [("a", "1", "2")])


def pi_a2():
    return make_presentation(["1", "2"], [("a", "1", "2"), ("a*", "2", "1")],
                             ["a.a*", "a*.a"])


def a3():
    return make_presentation(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")])


def pi_a3():
    return make_presentation(
        ["1", "2", "3"],
        [("a", "1", "2"), ("b", "2", "3"), ("a*", "2", "1"), ("b*", "3", "2")],
        ["a.a*", "a*.a - b.b*", "b*.b"],
    )


def beilinson(n):
    """Beilinson algebra of P^n: vertices 0..n, n+1 arrows per step, commutativity."""
    verts = [str(i) for i in range(n + 1)]
    letters = "xyzuvw"
    arrows = []
    for k in range(n):
        for i in range(n + 1):
            arrows.append((f"{letters[k]}{i}", str(k), str(k + 1)))
    rels = []
    for k in range(n - 1):
        s, t = letters[k], letters[k + 1]
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                rels.append(f"{s}{i}.{t}{j} - {s}{j}.{t}{i}")
    return make_presentation(verts, arrows, rels)


def cubic_control():
    """Linear quiver 1->2->3->4 with the single cubic relation; not Koszul."""
    return make_presentation(
        ["1", "2", "3", "4"],
        [("al", "1", "2"), ("be", "2", "3"), ("ga", "3", "4")],
        ["al.be.ga"],
    )


def polynomial2():
    return make_presentation(["o"], [("x", "o", "o"), ("y", "o", "o")], ["x.y - y.x"])


def exterior2():
    return make_presentation(["o"], [("x", "o", "o"), ("y", "o", "o")],
                             ["x.x", "y.y", "x.y + y.x"])


CORPUS = {
    "kq-kronecker": kronecker,
    "kronecker-pi": pi_kronecker,
    "kq-a2": a2,
    "pi-a2": pi_a2,
    "kq-a3": a3,
    "pi-a3": pi_a3,
    "beilinson-p1": lambda: beilinson(1),
    "beilinson-p2": lambda: beilinson(2),
    "cubic-control": cubic_control,
    "polynomial2": polynomial2,
    "exterior2": exterior2,
}


def load(name):
    return CORPUS[name]()
