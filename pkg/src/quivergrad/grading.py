"""Cuts, gradings by arrow weights, conjugation by ``1 + r`` and friends."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .errors import (BoundTooSmall, GlobalDimensionExceeded, NotFiniteDimensional,
                     NotNilpotent, PreconditionError)
from .graded import Presentation, normal_form
from .linalg import Echelon
from .quiver import Element, Quiver, lazy, unit


# -- cuts -------------------------------------------------------------------

class Cut(frozenset):
    """A set of arrow names; printed sorted and comma separated."""

    @classmethod
    def parse(cls, text):
        names = [t.strip() for t in text.split(",") if t.strip()]
        return cls(names)

    def check(self, p):
        for name in self:
            p.quiver.arrow(name)
        return self

    def __str__(self):
        return "{" + ",".join(sorted(self)) + "}"

    def __repr__(self):
        return f"Cut({sorted(self)})"


def chi(cut, path):
    return sum(1 for x in path.arrows if x in cut)


def relation_chi(cut, rel):
    """``χ_C``-degree of a relation, or ``None`` if it is not homogeneous."""
    degs = {chi(cut, x) for x in rel.terms}
    return degs.pop() if len(degs) == 1 else None


def cut_degree_zero(p, cut):
    """Arrows outside the cut and the relations of ``χ_C``-degree 0."""
    q = p.quiver
    keep = tuple(a for a in q.arrows if a.name not in cut)
    rels = [r for r in p.relations if relation_chi(cut, r) == 0]
    return Presentation(Quiver(q.vertices, keep), rels,
                        {a.name: p.weights[a.name] for a in keep})


def cut_bigraded(p, cut):
    """``p`` with weights ``(path length, χ_C)``."""
    w = {a.name: (1, int(a.name in cut)) for a in p.quiver.arrows}
    return Presentation(p.quiver, p.relations, w)


@dataclass
class CutVerdict:
    cut: Cut
    valid: bool
    reason: str = ""
    degree_zero: Presentation = None
    gldim: int = None
    slices: dict = field(default_factory=dict)   # i -> {(u, w, length): dim}

    @property
    def status(self):
        return "valid" if self.valid else f"invalid({self.reason})"


def _require_path_length(p):
    if p.rank != 1 or any(w != (1,) for w in p.weights.values()):
        raise PreconditionError("cut checks need the path-length grading")


def validate_cut(p, cut, n, bound, fd_bound=16):
    """Check (i) χ_C-homogeneity in {0, 1}, (ii) finite degree-0 part,
    (iii) its global dimension is ``n``, (iv) slice dims match ``E^{⊗i}``
    for ``i <= bound``."""
    from .bimodule import ext_bimodule, regular_bimodule, tensor
    from .koszul import top_degree
    from .preprojective import global_dimension

    _require_path_length(p)
    if n < 1:
        raise PreconditionError("n must be at least 1")
    cut = Cut(cut).check(p)
    for r in p.relations:
        c = relation_chi(cut, r)
        if c is None:
            return CutVerdict(cut, False, f"relation {r} is not homogeneous for the cut")
        if c > 1:
            return CutVerdict(cut, False, f"relation {r} has cut degree {c}")
    A0 = cut_degree_zero(p, cut)
    try:
        top = top_degree(A0, fd_bound)
    except NotFiniteDimensional:
        return CutVerdict(cut, False, "degree-0 part is infinite dimensional", A0)
    try:
        gd = global_dimension(A0, n, fd_bound)
    except GlobalDimensionExceeded:
        return CutVerdict(cut, False, f"degree-0 part has global dimension > {n}", A0)
    if gd != n:
        return CutVerdict(cut, False, f"degree-0 part has global dimension {gd}", A0, gd)
    E = ext_bimodule(A0, n, fd_bound, check_gldim=False)
    big = cut_bigraded(p, cut)
    powers = [regular_bimodule(A0, top), E]
    while len(powers) <= bound:
        powers.append(tensor(powers[-1], E))
    reach = 0
    slices = {}
    for i in range(bound + 1):
        dims = powers[i].dims()
        jmax = max((d for (_, _, d) in dims), default=None)
        if jmax is not None:
            reach = max(reach, (n + 1) * i + jmax)
        got = {}
        for L in range(reach + 3):
            for b in big.basis((L, i)):
                key = (b.source, b.target, L)
                got[key] = got.get(key, 0) + 1
        want = {(u, w, d + (n + 1) * i): k for (u, w, d), k in dims.items()}
        slices[i] = got
        if got != want:
            return CutVerdict(cut, False, f"slice {i} differs from the tensor power",
                              A0, gd, slices)
    return CutVerdict(cut, True, "", A0, gd, slices)


def _validate_args(args):
    p, cut, n, bound, fd_bound = args
    try:
        return validate_cut(p, cut, n, bound, fd_bound)
    except (BoundTooSmall, NotFiniteDimensional) as exc:
        return CutVerdict(Cut(cut), False, f"bound exhausted: {exc}")


def enumerate_cuts(p, n, bound, fd_bound=16, workers=1):
    """Verdicts for every subset of arrows, ordered by size then names."""
    names = sorted(a.name for a in p.quiver.arrows)
    subsets = [Cut(c) for k in range(len(names) + 1) for c in combinations(names, k)]
    jobs = [(p, c, n, bound, fd_bound) for c in subsets]
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            return list(ex.map(_validate_args, jobs))
    return [_validate_args(j) for j in jobs]


def mutate_cut(p, cut, v):
    """Drop the cut arrows ending at ``v`` and add the arrows starting at ``v``."""
    cut = Cut(cut).check(p)
    q = p.quiver
    if v not in q.vertices:
        raise PreconditionError(f"unknown vertex {v!r}")
    ending = {a.name for a in q.arrows_to(v)}
    starting = {a.name for a in q.arrows_from(v)}
    problems = []
    if not ending <= cut:
        problems.append(f"{','.join(sorted(ending - cut))} end at {v} but are not in the cut")
    if starting & cut:
        problems.append(f"{','.join(sorted(starting & cut))} start at {v} and are in the cut")
    if problems:
        raise PreconditionError(f"precondition violated at {v}: " + "; ".join(problems))
    return Cut((cut - ending) | starting)


def mutable_vertices(p, cut):
    out = []
    for v in p.quiver.vertices:
        try:
            mutate_cut(p, cut, v)
        except PreconditionError:
            continue
        out.append(v)
    return out


# -- weight maps ------------------------------------------------------------

def is_homogeneous_for(p, weights, rel):
    degs = {sum(weights[x] for x in path.arrows) for path in rel.terms}
    return len(degs) <= 1


def bigrading_check(p, w1, w2):
    """Are all relations homogeneous for both weight maps at once?"""
    return all(is_homogeneous_for(p, w1, r) and is_homogeneous_for(p, w2, r)
               for r in p.relations)


def path_length_weights(p):
    return {a.name: 1 for a in p.quiver.arrows}


def cut_weights(p, cut):
    return {a.name: int(a.name in cut) for a in p.quiver.arrows}


def total_collapse(p, n, layout="total-preprojective"):
    """Rank-1 presentation from a rank-2 one.

    ``layout="total-preprojective"`` reads weights ``(total, i)`` as produced
    by :func:`higher_preprojective_presentation` and keeps the total;
    ``layout="preprojective-internal"`` reads ``(i, j)`` and uses
    ``(n+1) i + j``.
    """
    if p.rank != 2:
        raise PreconditionError("rank-2 weights expected")
    if layout == "total-preprojective":
        w = {k: (v[0],) for k, v in p.weights.items()}
    elif layout == "preprojective-internal":
        w = {k: ((n + 1) * v[0] + v[1],) for k, v in p.weights.items()}
    else:
        raise ValueError(f"unknown layout {layout!r}")
    out = Presentation(p.quiver, p.relations, w)
    for r in out.relations:
        assert out.is_homogeneous(r)
    return out


# -- nilpotency and conjugation --------------------------------------------

@dataclass
class Nilpotency:
    element: Element
    degree: int = None            # smallest k with x^k = 0
    bound: int = None

    @property
    def status(self):
        return f"nilpotent({self.degree})" if self.degree is not None \
            else f"unknown-beyond({self.bound})"


def _positive_degree(p, x):
    if x.is_zero():
        return
    for path in x.terms:
        if path.is_lazy:
            raise PreconditionError(f"{x} has a degree-0 term")


def nilpotency_degree(p, x, bound):
    _positive_degree(p, x)
    y = normal_form(p, x)
    k = 1
    while y and k < bound:
        y = normal_form(p, y * x)
        k += 1
    return Nilpotency(x, None if y else k, bound)


def nilpotency_degrees(p, xs, bound):
    return [nilpotency_degree(p, x, bound) for x in xs]


def conjugate(p, r, bound=32):
    """Images ``x -> (1+r)^{-1} x (1+r)`` of all arrows and vertices, in normal form."""
    _positive_degree(p, r)
    one = unit(p.quiver)
    if r.is_zero():
        inv = one
        k = 1
    else:
        nil = nilpotency_degree(p, r, bound)
        if nil.degree is None:
            raise NotNilpotent(f"{r} is not nilpotent within {bound}")
        k = nil.degree
        inv = Element()
        power = one
        for m in range(k):
            inv = inv + (power if m % 2 == 0 else -power)
            power = normal_form(p, power * r)
    right = one + r
    images = {}
    for v in p.quiver.vertices:
        images[v] = normal_form(p, inv * Element.of(lazy(v)) * right)
    for a in p.quiver.arrows:
        images[a.name] = normal_form(p, inv * Element.of(p.quiver.arrow_path(a.name)) * right)
    return images


def substitute(p, images, x):
    """Image of ``x`` under the algebra map fixed by arrow (and vertex) images."""
    out = Element()
    for path, c in x.terms.items():
        if path.is_lazy:
            term = images.get(path.source, Element.of(path))
        else:
            term = None
            for name in path.arrows:
                img = images.get(name, Element.of(p.quiver.arrow_path(name)))
                term = img if term is None else normal_form(p, term * img)
        out = out + term.scale(c)
    return normal_form(p, out)


def is_automorphism_instance(p, images):
    """Relations map to zero and the linear parts of arrow images are independent."""
    for r in p.relations:
        if substitute(p, images, r):
            return False
    deg1 = sorted({b for b in p.basis(1)}, key=lambda b: b.key()) if p.rank == 1 else []
    index = {b: i for i, b in enumerate(deg1)}
    ech = Echelon(len(deg1))
    for a in p.quiver.arrows:
        img = images.get(a.name)
        row = [0] * len(deg1)
        for path, c in img.terms.items():
            if path.length == 1:
                row[index[path]] += c
        if not ech.add(row):
            return False
    return True


# -- graded radical comparison --------------------------------------------

@dataclass
class Grading:
    """Weights on (possibly transported) arrows.

    ``generators`` maps arrow names to the elements standing in for them;
    by default each arrow stands for itself.
    """
    weights: dict
    generators: dict = None

    def gens(self, p):
        g = self.generators or {}
        return {a.name: g.get(a.name, Element.of(p.quiver.arrow_path(a.name)))
                for a in p.quiver.arrows}


def _truncated(p, x, D):
    return {b: c for b, c in normal_form(p, x).terms.items() if p.path_degree(b)[0] <= D}


def _ideal(p, gens, D):
    basis = [b for d in range(D + 1) for b in p.basis(d)]
    index = {b: i for i, b in enumerate(basis)}
    ech = Echelon(len(basis))
    mults = [Element.of(lazy(v)) for v in p.quiver.vertices] + \
            [Element.of(p.quiver.arrow_path(a.name)) for a in p.quiver.arrows]
    todo = [g for g in gens]
    while todo:
        x = todo.pop()
        vec = _truncated(p, x, D)
        if not vec:
            continue
        row = [0] * len(basis)
        for b, c in vec.items():
            row[index[b]] = c
        if not ech.add(row):
            continue
        el = Element(vec)
        for m in mults:
            todo.append(m * el)
            todo.append(el * m)
    return ech


def graded_radical_generators(p, grading, fd_bound=16):
    """Degree-positive generators plus the radical of the degree-0 part.

    The degree-0 part must be finite dimensional; its radical is then
    generated by the degree-0 arrows (transported along with the rest).
    """
    from .koszul import top_degree

    zero = [a for a in p.quiver.arrows if grading.weights[a.name] == 0]
    sub = Presentation(Quiver(p.quiver.vertices, tuple(zero)),
                       [r for r in p.relations if all(grading.weights[x] == 0
                                                      for path in r.terms for x in path.arrows)])
    top_degree(sub, fd_bound)
    return list(grading.gens(p).values())


def graded_radical_compare(p, g1, g2, degree_bound, fd_bound=16):
    """``equal`` / ``left-in-right`` / ``right-in-left`` / ``incomparable``
    for the two graded radicals modulo paths of degree ``> degree_bound``."""
    if p.rank != 1:
        raise PreconditionError("a rank-1 ambient grading is required")
    for g in (g1, g2):
        if not bigrading_check(p, g.weights, g.weights):
            raise PreconditionError("weights do not make the relations homogeneous")
    i1 = _ideal(p, graded_radical_generators(p, g1, fd_bound), degree_bound)
    i2 = _ideal(p, graded_radical_generators(p, g2, fd_bound), degree_bound)
    in12 = all(i2.contains(r) for r in i1.rows)
    in21 = all(i1.contains(r) for r in i2.rows)
    if in12 and in21:
        return "equal"
    if in12:
        return "left-in-right"
    if in21:
        return "right-in-left"
    return "incomparable"
