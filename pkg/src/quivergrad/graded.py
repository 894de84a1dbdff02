"""Graded quotients kQ/I of path algebras by weight-homogeneous ideals.

Each graded piece is built from the one below it without Gröbner bases:
``kQ_d / (sum_y I_{d-w(y)} y)`` is spanned by the candidates ``b.y`` with
``b`` a standard monomial of degree ``d - w(y)``, and the rest of ``I_d`` is
spanned by the degree-``d`` relations together with ``x.(c - nf(c))`` for
arrows ``x`` and lower candidates ``c``. One echelon per (source, target)
block picks the standard monomials: the lexicographically largest candidates
become pivots and are rewritten in terms of the smaller ones. Standard
monomials are therefore closed under taking prefixes.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import NotFiniteDimensional, PresentationError
from .linalg import echelon
from .quiver import Element, Path, Quiver, lazy


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _nonneg(u):
    return all(a >= 0 for a in u)


def _deg(d, rank):
    if isinstance(d, int):
        d = (d,)
    d = tuple(int(a) for a in d)
    if len(d) != rank:
        raise ValueError(f"degree {d} does not have rank {rank}")
    return d


@dataclass
class DegreeBasis:
    """Standard monomials of one graded piece plus their rewriting rules.

    ``reductions`` maps every candidate path of this degree to its
    coordinates in ``basis``; use :meth:`coordinates` for arbitrary paths.
    """

    degree: tuple
    basis: list
    reductions: dict
    presentation: "Presentation"

    @property
    def dim(self):
        return len(self.basis)

    def coordinates(self, path):
        return dict(self.presentation._nf_path(path))


class _Level:
    __slots__ = ("degree", "basis", "basis_set", "reduce", "path_nf", "candidates")

    def __init__(self, degree):
        self.degree = degree
        self.basis = []
        self.basis_set = set()
        self.reduce = {}
        self.path_nf = {}
        self.candidates = []


class Presentation:
    """Quiver + homogeneous relations + integer weight vector per arrow."""

    def __init__(self, quiver, relations=(), weights=None, *, check=True):
        self.quiver = quiver
        if weights is None:
            weights = {a.name: (1,) for a in quiver.arrows}
        weights = {k: tuple(int(x) for x in (v if not isinstance(v, int) else (v,)))
                   for k, v in weights.items()}
        ranks = {len(v) for v in weights.values()}
        if len(ranks) > 1:
            raise PresentationError("weight vectors of different ranks")
        self.rank = ranks.pop() if ranks else 1
        for a in quiver.arrows:
            if a.name not in weights:
                raise PresentationError(f"arrow {a.name!r} has no weight")
        extra = set(weights) - {a.name for a in quiver.arrows}
        if extra:
            raise PresentationError(f"weights for unknown arrows {sorted(extra)}")
        self.weights = {a.name: weights[a.name] for a in quiver.arrows}
        self.relations = [r for r in relations]
        self._zero = (0,) * self.rank
        if check:
            self._validate()
        self._by_degree = {}
        for r in self.relations:
            self._by_degree.setdefault(self.element_degree(r), []).append(r)
        self._levels = {}
        self._lock = threading.RLock()

    def _validate(self):
        for name, w in self.weights.items():
            if not _nonneg(w):
                raise PresentationError(f"arrow {name!r} has a negative weight")
            if not any(w):
                raise PresentationError(f"arrow {name!r} has weight zero")
        for r in self.relations:
            if not isinstance(r, Element) or r.is_zero():
                raise PresentationError("relations must be nonzero elements")
            ends = {(p.source, p.target) for p in r.terms}
            if len(ends) > 1:
                raise PresentationError(f"relation {r} mixes endpoints")
            degs = {self.path_degree(p) for p in r.terms}
            if len(degs) > 1:
                raise PresentationError(f"relation {r} is not homogeneous")
            if degs.pop() == self._zero:
                raise PresentationError(f"relation {r} has weight zero")

    # -- degrees -------------------------------------------------------
    def path_degree(self, p):
        d = self._zero
        for name in p.arrows:
            d = _add(d, self.weights[name])
        return d

    def element_degrees(self, x):
        return {self.path_degree(p) for p in x.terms}

    def element_degree(self, x):
        degs = self.element_degrees(x)
        if len(degs) != 1:
            raise PresentationError(f"element {x} is not homogeneous")
        return degs.pop()

    def is_homogeneous(self, x):
        return len(self.element_degrees(x)) <= 1

    def scalar_weight(self, name):
        return sum(self.weights[name])

    def relation_degrees(self):
        return sorted(self._by_degree)

    def with_weights(self, weights):
        return Presentation(self.quiver, self.relations, weights)

    def arrow_element(self, name):
        return Element.of(self.quiver.arrow_path(name))

    # -- degreewise model ------------------------------------------------
    def level(self, d):
        d = _deg(d, self.rank)
        lv = self._levels.get(d)
        if lv is not None:
            return lv
        if not _nonneg(d):
            raise ValueError(f"degree {d} has a negative component")
        with self._lock:
            lv = self._levels.get(d)
            if lv is None:
                lv = self._build(d)
                self._levels[d] = lv
        return lv

    def _build(self, d):
        lv = _Level(d)
        q = self.quiver
        if d == self._zero:
            lv.basis = [lazy(v) for v in q.vertices]
            lv.basis_set = set(lv.basis)
            lv.reduce = {p: {p: Fraction(1)} for p in lv.basis}
            lv.candidates = list(lv.basis)
            return lv
        cands = []
        for a in sorted(q.arrows, key=lambda a: a.name):
            dd = _sub(d, self.weights[a.name])
            if not _nonneg(dd):
                continue
            for b in self.level(dd).basis:
                if b.target == a.source:
                    cands.append(Path(b.source, a.target, b.arrows + (a.name,)))
        lv.candidates = cands
        blocks = {}
        for c in cands:
            blocks.setdefault((c.source, c.target), []).append(c)
        rows_by_block = {k: [] for k in blocks}

        def push(vec):
            if not vec:
                return
            key = (next(iter(vec)).source, next(iter(vec)).target)
            if key in rows_by_block:
                rows_by_block[key].append(vec)
            else:
                # a nonzero vector outside every candidate block cannot occur
                raise AssertionError("relation vector outside candidate span")

        for r in self._by_degree.get(d, ()):
            push(self._phi(r.terms.items()))
        for a in q.arrows:
            dd = _sub(d, self.weights[a.name])
            if not _nonneg(dd) or dd == self._zero:
                continue
            low = self.level(dd)
            x = (a.name,)
            for c in low.candidates:
                if c.source != a.target or c in low.basis_set:
                    continue
                terms = [(Path(a.source, c.target, x + c.arrows), Fraction(1))]
                for b, coef in low.reduce[c].items():
                    terms.append((Path(a.source, b.target, x + b.arrows), -coef))
                push(self._phi(terms))
        basis = []
        for key, block in blocks.items():
            cols = sorted(block, key=lambda p: p.key(), reverse=True)
            index = {p: i for i, p in enumerate(cols)}
            rows = rows_by_block[key]
            pivots = []
            red = []
            if rows:
                dense = []
                for vec in rows:
                    row = [0] * len(cols)
                    for p, c in vec.items():
                        row[index[p]] = c
                    dense.append(row)
                red, pivots = echelon(dense, len(cols))
            pivset = set(pivots)
            for r, c in zip(red, pivots):
                lv.reduce[cols[c]] = {cols[j]: -r[j] for j in range(len(cols))
                                      if j not in pivset and r[j]}
            for j, p in enumerate(cols):
                if j not in pivset:
                    lv.reduce[p] = {p: Fraction(1)}
                    basis.append(p)
        basis.sort(key=lambda p: p.key())
        lv.basis = basis
        lv.basis_set = set(basis)
        return lv

    def _phi(self, terms):
        """Coordinates on the candidates of a combination of same-degree paths."""
        out = {}
        for p, coef in terms:
            last = p.arrows[-1]
            a = self.quiver.arrow(last)
            prefix = Path(p.source, a.source, p.arrows[:-1])
            for b, c in self._nf_path(prefix).items():
                key = Path(b.source, a.target, b.arrows + (last,))
                v = out.get(key, 0) + coef * c
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return out

    def _nf_path(self, p):
        if not p.arrows:
            return {p: Fraction(1)}
        lv = self.level(self.path_degree(p))
        got = lv.reduce.get(p)
        if got is not None:
            return got
        got = lv.path_nf.get(p)
        if got is not None:
            return got
        out = {}
        for c, coef in self._phi([(p, Fraction(1))]).items():
            for b, v in lv.reduce[c].items():
                s = out.get(b, 0) + coef * v
                if s:
                    out[b] = s
                else:
                    out.pop(b, None)
        lv.path_nf[p] = out
        return out

    def nf_path(self, p):
        """Coordinates (basis path -> coefficient) of the path ``p``."""
        return dict(self._nf_path(p))

    def nf_vector(self, terms):
        """Normal form of ``sum coef * path`` as a dict of basis paths."""
        out = {}
        for p, coef in terms:
            for b, v in self._nf_path(p).items():
                s = out.get(b, 0) + coef * v
                if s:
                    out[b] = s
                else:
                    out.pop(b, None)
        return out

    def basis(self, d):
        return self.level(d).basis

    def dim(self, d):
        return len(self.level(d).basis)

    def __getstate__(self):
        # the degree cache and its lock stay behind (worker processes rebuild them)
        state = dict(self.__dict__)
        state["_levels"] = {}
        del state["_lock"]
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._lock = threading.RLock()

    def __repr__(self):
        return (f"Presentation({len(self.quiver.vertices)} vertices, "
                f"{len(self.quiver.arrows)} arrows, {len(self.relations)} relations)")


def degree_basis(p, d):
    """The graded piece of degree ``d`` as a :class:`DegreeBasis`."""
    d = _deg(d, p.rank)
    if not _nonneg(d):
        raise ValueError(f"degree {d} has a negative component")
    lv = p.level(d)
    return DegreeBasis(d, list(lv.basis), {c: dict(lv.reduce[c]) for c in lv.candidates}, p)


def normal_form(p, x):
    """Canonical representative of ``x`` modulo the ideal."""
    return Element(p.nf_vector(x.terms.items()))


def reduce_mod(p, x):
    """Normal form of ``x`` as a plain dict."""
    return p.nf_vector(x.terms.items())


class HilbertTable(dict):
    """Degree vector -> dimension."""

    def as_list(self):
        """Dimensions in degree order; rank-1 tables only."""
        return [self[k] for k in sorted(self)]

    def to_text(self):
        lines = []
        for k in sorted(self):
            lines.append(f"{','.join(str(a) for a in k)}: {self[k]}")
        return "\n".join(lines) + "\n"

    def to_line(self):
        return " ".join(f"{','.join(str(a) for a in k)}:{self[k]}" for k in sorted(self))


def hilbert(p, up_to):
    """Dimensions of all graded pieces with degree ``<= up_to`` componentwise."""
    up = _deg(up_to, p.rank)
    if not _nonneg(up):
        raise ValueError("bound must be nonnegative")
    table = HilbertTable()
    for d in product(*(range(u + 1) for u in up)):
        table[d] = p.dim(d)
    return table


def hilbert_matrix(p, up_to):
    """Per-degree dicts ``(source, target) -> dim`` for a rank-1 presentation."""
    if p.rank != 1:
        raise ValueError("hilbert_matrix needs a rank-1 grading")
    out = []
    for d in range(up_to + 1):
        counts = {}
        for b in p.basis(d):
            counts[(b.source, b.target)] = counts.get((b.source, b.target), 0) + 1
        out.append(counts)
    return out


def _scalar_dim(p, s):
    if p.rank == 1:
        return p.dim((s,))
    total = 0
    for d in product(range(s + 1), repeat=p.rank):
        if sum(d) == s:
            total += p.dim(d)
    return total


def certify_finite(p, total_dim_bound):
    """Scalar Hilbert list up to the top degree of a finite-dimensional algebra.

    Degrees are scalarized by summing weight components. The algebra is
    certified finite once a run of zero pieces as wide as the largest arrow
    weight and the largest relation degree appears: standard monomials are
    prefix-closed, so every longer monomial would have a prefix inside the
    run. Raises :class:`NotFiniteDimensional` once the running total passes
    ``total_dim_bound`` without such a run.
    """
    width = max([1] + [p.scalar_weight(a.name) for a in p.quiver.arrows]
                + [sum(d) for d in p.relation_degrees()])
    dims = []
    total = 0
    zeros = 0
    s = 0
    while True:
        dim = _scalar_dim(p, s)
        dims.append(dim)
        total += dim
        zeros = zeros + 1 if dim == 0 else 0
        if zeros >= width:
            top = len(dims) - 1 - zeros
            return dims[: top + 1]
        if total > total_dim_bound:
            raise NotFiniteDimensional(
                f"total dimension exceeds {total_dim_bound} by degree {s}")
        s += 1


def is_finite_dimensional(p, total_dim_bound):
    try:
        certify_finite(p, total_dim_bound)
    except NotFiniteDimensional:
        return False
    return True


def graded_radical(p, total_dim_bound):
    """Ideal generators of the graded radical ``rad(R_0) + R_+``.

    Degree 0 is spanned by the lazy paths, so ``rad(R_0) = 0`` and the graded
    radical is the arrow ideal.
    """
    certify_finite(p, total_dim_bound)
    return [p.arrow_element(a.name) for a in sorted(p.quiver.arrows, key=lambda a: a.name)]


def make_presentation(vertices, arrows, relations=(), weights=None):
    """Build a presentation from names; relations may be strings."""
    from .textformat import parse_element

    q = Quiver(tuple(vertices), tuple(arrows))
    rels = [parse_element(q, r) if isinstance(r, str) else r for r in relations]
    return Presentation(q, rels, weights)
