"""Koszul and almost-Koszul verdicts, Yoneda generation, quadratic duals."""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BoundTooSmall, NotFiniteDimensional, PreconditionError
from .graded import Presentation
from .linalg import kernel_basis, rank
from .modules import Resolution, lift_chain, simple_module
from .quiver import Element, Path, lazy, paths_between


# -- resolutions ------------------------------------------------------------

def _require_rank1(p):
    if p.rank != 1:
        raise PreconditionError("a rank-1 (single integer) grading is required")


def simple_resolutions(p, degree_bound, exhaustive=False):
    """One resolution object per vertex simple ``S_v`` (concentrated in degree 0)."""
    _require_rank1(p)
    return {v: Resolution(p, simple_module(p, v), degree_bound, exhaustive)
            for v in p.quiver.vertices}


@dataclass
class ResolutionStep:
    index: int
    degrees: list                 # generation degrees, sorted (all simples together)
    generators: dict              # vertex of the simple -> [(vertex, degree), ...]
    boundary: dict = field(repr=False, default_factory=dict)  # vertex -> generator images

    def multiset(self):
        return dict(sorted(Counter(self.degrees).items()))


def _collect(resolutions, i):
    gens, degs, bnd = {}, [], {}
    for v, res in resolutions.items():
        if i < len(res.steps):
            st = res.steps[i]
            gens[v] = list(st.generators)
            degs.extend(d for _, d in st.generators)
            bnd[v] = st.boundary.images
        else:
            gens[v] = []
    return ResolutionStep(i, sorted(degs), gens, bnd)


def minimal_resolution(p, steps, degree_bound):
    """Steps ``0..steps`` of the minimal graded resolution of ``⊕ S_v``.

    Raises :class:`BoundTooSmall` when a kernel still gains generators in the
    last inspected degree.
    """
    res = simple_resolutions(p, degree_bound)
    for r in res.values():
        r.extend(steps)
    return [_collect(res, i) for i in range(steps + 1)]


def euler_defect(p, resolution, upto):
    """Per degree ``d <= upto``: ``sum_i (-1)^i dim P_i[d] - dim S[d]`` (all zero when exact).

    ``resolution`` is a :class:`Resolution` extended far enough that every
    generator of degree ``<= upto`` is known.
    """
    out = []
    target = resolution.module
    for d in range(upto + 1):
        s = 0
        for i, st in enumerate(resolution.steps):
            sign = -1 if i % 2 else 1
            for w, dg in st.generators:
                if dg <= d:
                    s += sign * sum(1 for b in p.basis(d - dg) if b.source == w)
        s -= sum(len(target.block(d, w)) for w in p.quiver.vertices)
        out.append(s)
    return out


# -- Koszul verdict --------------------------------------------------------

@dataclass
class KoszulVerdict:
    koszul: bool
    steps: int                    # steps certified (== requested steps when koszul)
    degree_bound: int
    step_degrees: list            # generation-degree multisets for the steps inspected
    fail_step: int = None
    fail_degree: int = None

    @property
    def status(self):
        if self.koszul:
            return f"koszul-up-to({self.steps})"
        return f"fails-at({self.fail_step}, {self.fail_degree})"


def _check_quadratic_input(p):
    for r in p.relations:
        if min(path.length for path in r.terms) < 2:
            raise PreconditionError("relations of path length < 2 present")


def koszul_verdict(p, steps, degree_bound, _resolutions=None):
    """``koszul-up-to(steps)`` iff step ``i`` is generated purely in degree ``i``."""
    _require_rank1(p)
    _check_quadratic_input(p)
    res = _resolutions or simple_resolutions(p, degree_bound)
    seen = []
    for i in range(steps + 1):
        for r in res.values():
            if i >= degree_bound and len(r.steps) == i and not r.finished:
                raise BoundTooSmall(f"step {i} needs degrees beyond {degree_bound}")
            r.extend(i)
        st = _collect(res, i)
        seen.append(st.multiset())
        bad = [d for d in st.degrees if d != i]
        if bad:
            return KoszulVerdict(False, i - 1, degree_bound, seen, i, min(bad))
    return KoszulVerdict(True, steps, degree_bound, seen)


# -- almost Koszul ---------------------------------------------------------

def top_degree(p, degree_bound):
    """Largest degree with a nonzero piece, certified by a zero run.

    The run must be as wide as the largest arrow weight and relation degree
    and fit inside ``degree_bound`` plus that width.
    """
    width = max([1] + [p.scalar_weight(a.name) for a in p.quiver.arrows]
                + [sum(d) for d in p.relation_degrees()])
    zeros = 0
    last = -1
    for s in range(degree_bound + width + 1):
        if p.dim(s):
            last, zeros = s, 0
        else:
            zeros += 1
            if zeros >= width:
                return last
    raise NotFiniteDimensional(f"no vanishing run found within degree {degree_bound + width}")


@dataclass
class AlmostKoszulVerdict:
    pq: tuple                     # (p, q) or None
    degree_bound: int
    witness: dict = field(default_factory=dict)   # simple vertex -> (vertex of S', degree)
    top: int = None
    total_dim: int = None

    @property
    def status(self):
        return "none" if self.pq is None else f"({self.pq[0]},{self.pq[1]})"


def _nakayama(p, top):
    """``v -> w`` when ``e_v R_top`` is one-dimensional and ends at ``w``."""
    perm = {}
    for v in p.quiver.vertices:
        ends = [b.target for b in p.basis(top) if b.source == v]
        if len(ends) != 1:
            return None
        perm[v] = ends[0]
    return perm


def almost_koszul_verdict(p, degree_bound):
    """Smallest ``q >= 1`` such that the resolutions of the simples are linear
    for steps ``0..q`` and every ``q``-th kernel is semisimple in degree ``p + q``.

    When every ``e_v R_p`` is one-dimensional, the kernel of the simple at
    ``v`` is additionally required to sit at the vertex where that socle path
    ends; radical-square-zero algebras satisfy the bare condition for every
    ``q`` and this picks the one compatible with the socle permutation.
    """
    _require_rank1(p)
    top = top_degree(p, degree_bound)
    total = sum(p.dim(s) for s in range(top + 1))
    if top < 1:
        return AlmostKoszulVerdict(None, degree_bound, top=top, total_dim=total)
    nak = _nakayama(p, top)
    res = simple_resolutions(p, degree_bound, exhaustive=True)
    first = None
    q = 1
    while q + top <= degree_bound:
        linear = True
        for r in res.values():
            r.extend(q)
            if len(r.steps) <= q or any(d != q for _, d in r.steps[q].generators):
                linear = False
        if not linear:
            break
        witness = {}
        ok = True
        for v, r in res.items():
            ker = r.kernel_of(q)
            blocks = [(d, w, len(vecs)) for (d, w), vecs in ker.items() if vecs]
            if len(blocks) != 1 or blocks[0][0] != top + q or blocks[0][2] != 1:
                ok = False
                break
            witness[v] = (blocks[0][1], blocks[0][0])
        if ok:
            if first is None:
                first = (q, witness)
            if nak is None or all(nak[v] == w for v, (w, _) in witness.items()):
                return AlmostKoszulVerdict((top, q), degree_bound, witness, top, total)
        q += 1
    if first is not None and nak is None:
        return AlmostKoszulVerdict((top, first[0]), degree_bound, first[1], top, total)
    return AlmostKoszulVerdict(None, degree_bound, top=top, total_dim=total)


# -- Yoneda generation -----------------------------------------------------

@dataclass
class ExtReport:
    generated: bool
    ext_dims: list                # total dim Ext^i for i = 0..steps
    product_ranks: list           # rank of Ext^1 . Ext^{i-1} inside Ext^i (None for i < 2)
    degree_bound: int

    def failing_steps(self):
        return [i for i, (d, r) in enumerate(zip(self.ext_dims, self.product_ranks))
                if r is not None and r < d]


def _products(p, res, v, i, rng=None):
    """Row vectors (indexed by generators of ``P_i(S_v)``) of all ``g . f``."""
    src = res[v]
    gens_i = src.steps[i].generators
    rows = []
    for c, (w, dc) in enumerate(src.steps[1].generators):
        tgt = res[w]
        f0 = [{} for _ in src.steps[1].generators]
        f0[c] = {(0, lazy(w)): Fraction(1)}
        maps = lift_chain(src, 1, tgt, f0, -dc, i - 1, rng=rng)
        if len(maps) < i:
            continue
        last = maps[i - 1]
        for g, (u, dg) in enumerate(tgt.steps[i - 1].generators):
            row = [last[h].get((g, lazy(u)), 0) for h in range(len(gens_i))]
            if any(row):
                rows.append(row)
    return rows


def ext_generation_check(p, steps, degree_bound, rng=None):
    """Do the Yoneda products ``Ext^{i-1} . Ext^1`` span ``Ext^i`` for ``2 <= i <= steps``?

    Ext of the simples is read off the minimal resolutions; products come
    from chain-map lifts. ``rng`` (a ``random.Random``) perturbs every lift
    by kernel elements, which must not change the answer.
    """
    _require_rank1(p)
    res = simple_resolutions(p, degree_bound)
    for i in range(steps + 1):
        for r in res.values():
            if i >= degree_bound and len(r.steps) == i and not r.finished:
                raise BoundTooSmall(f"step {i} needs degrees beyond {degree_bound}")
            r.extend(i)
    dims, ranks = [], []
    for i in range(steps + 1):
        dim = sum(len(r.steps[i].generators) for r in res.values() if i < len(r.steps))
        dims.append(dim)
        if i < 2:
            ranks.append(None)
            continue
        total = 0
        for v, r in res.items():
            if i >= len(r.steps):
                continue
            rows = _products(p, res, v, i, rng)
            total += rank(rows, len(r.steps[i].generators)) if rows else 0
        ranks.append(total)
    ok = all(r is None or r == d for d, r in zip(dims, ranks))
    return ExtReport(ok, dims, ranks, degree_bound)


def perturbed_ext_check(p, steps, degree_bound, seed):
    return ext_generation_check(p, steps, degree_bound, rng=random.Random(seed))


# -- quadratic dual --------------------------------------------------------

def _length2_blocks(p):
    """Length-2 paths grouped by (source, target, weight degree)."""
    blocks = {}
    q = p.quiver
    for a in q.arrows:
        for b in q.arrows_from(a.target):
            path = Path(a.source, b.target, (a.name, b.name))
            key = (a.source, b.target, p.path_degree(path))
            blocks.setdefault(key, []).append(path)
    for k in blocks:
        blocks[k].sort(key=lambda x: x.arrows)
    return blocks


def quadratic_dual(p):
    """Same quiver and weights; relations span the orthogonal complement of
    the relation space under ``<a.b, a.b> = 1`` on length-2 monomials."""
    for r in p.relations:
        if any(path.length != 2 for path in r.terms):
            raise PreconditionError(f"relation {r} is not quadratic")
    rels = []
    for key, paths in sorted(_length2_blocks(p).items()):
        index = {x: j for j, x in enumerate(paths)}
        rows = []
        for r in p.relations:
            some = next(iter(r.terms))
            if (some.source, some.target, p.path_degree(some)) != key:
                continue
            row = [0] * len(paths)
            for x, c in r.terms.items():
                row[index[x]] = c
            rows.append(row)
        perp = kernel_basis(rows, len(paths)) if rows else [
            [Fraction(int(i == j)) for j in range(len(paths))] for i in range(len(paths))]
        for vec in perp:
            rels.append(Element({paths[j]: c for j, c in enumerate(vec) if c}))
    return Presentation(p.quiver, rels, p.weights)


def hilbert_series_matrix(p, upto):
    """``[d][(u, v)] -> dim e_u R_d e_v`` as nested dicts, degrees ``0..upto``."""
    _require_rank1(p)
    out = []
    for d in range(upto + 1):
        m = {}
        for b in p.basis(d):
            m[(b.source, b.target)] = m.get((b.source, b.target), 0) + 1
        out.append(m)
    return out


def numerator_identity(p, order):
    """Coefficients of ``H_R(t) . H_{R^!}(-t) - I`` in degrees ``0..order-1``.

    Returns the list of nonzero ``(degree, u, v, value)`` discrepancies; an
    empty list means the identity holds up to ``O(t^order)``.
    """
    dual = quadratic_dual(p)
    hr = hilbert_series_matrix(p, order - 1)
    hd = hilbert_series_matrix(dual, order - 1)
    verts = p.quiver.vertices
    bad = []
    for d in range(order):
        for u in verts:
            for v in verts:
                s = 0
                for i in range(d + 1):
                    sign = -1 if (d - i) % 2 else 1
                    for w in verts:
                        s += hr[i].get((u, w), 0) * sign * hd[d - i].get((w, v), 0)
                want = 1 if (d == 0 and u == v) else 0
                if s != want:
                    bad.append((d, u, v, s - want))
    return bad
