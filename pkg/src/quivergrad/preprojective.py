"""Doubled quivers, classical and higher preprojective presentations."""
from __future__ import annotations

from fractions import Fraction

from .errors import ConsistencyError, GlobalDimensionExceeded, PreconditionError, QuiverError
from .graded import Presentation
from .linalg import echelon, intersect_rowspaces
from .quiver import Element, Path, Quiver, lazy, paths_between


def _quiver_of(q):
    return q.quiver if isinstance(q, Presentation) else q


def double_quiver(q):
    """``q`` plus a reversed arrow ``a*`` for every arrow ``a``."""
    q = _quiver_of(q)
    names = {a.name for a in q.arrows}
    new = []
    for a in q.arrows:
        if a.name.endswith("*"):
            raise QuiverError(f"arrow {a.name!r} already ends in '*'")
        star = a.name + "*"
        if star in names or star in q.vertices:
            raise QuiverError(f"name collision on {star!r}")
        new.append((star, a.target, a.source))
    return Quiver(q.vertices, tuple(q.arrows) + tuple(new))


def classical_preprojective(q):
    """Double of ``q`` modulo the vertex components of ``sum a.a* - a*.a``."""
    q = _quiver_of(q)
    dq = double_quiver(q)
    rels = []
    for v in q.vertices:
        terms = {}
        for a in q.arrows:
            if a.source == v:
                terms[dq.path((a.name, a.name + "*"))] = 1
            if a.target == v:
                terms[dq.path((a.name + "*", a.name))] = -1
        if terms:
            rels.append(Element(terms))
    return Presentation(dq, rels)


# -- Koszul complex terms ----------------------------------------------------

class KoszulComplexTerm:
    """``K_m`` as RREF row spaces per (source, target) inside length-``m`` paths."""

    def __init__(self, m, blocks):
        self.m = m
        self.blocks = blocks      # (i, j) -> (paths, rows)

    def dim(self, i=None, j=None):
        if i is None:
            return sum(len(rows) for _, rows in self.blocks.values())
        got = self.blocks.get((i, j))
        return len(got[1]) if got else 0

    def elements(self):
        """``(source, target, Element)`` for every basis vector, blocks in sorted order."""
        out = []
        for (i, j), (paths, rows) in sorted(self.blocks.items()):
            for r in rows:
                out.append((i, j, Element({paths[c]: x for c, x in enumerate(r) if x})))
        return out


def _check_quadratic(p):
    for r in p.relations:
        if any(path.length != 2 for path in r.terms):
            raise PreconditionError(f"relation {r} is not quadratic")


def koszul_complex_term(p, m):
    """``K_m = ∩_{i+2+j=m} V^i R V^j`` (with ``K_0`` the vertices, ``K_1`` the arrows)."""
    _check_quadratic(p)
    if m < 0:
        raise ValueError("m must be nonnegative")
    q = p.quiver
    rel_by_ends = {}
    for r in p.relations:
        some = next(iter(r.terms))
        rel_by_ends.setdefault((some.source, some.target), []).append(r)
    blocks = {}
    for i in q.vertices:
        for j in q.vertices:
            paths = paths_between(q, i, j, m)
            if not paths:
                continue
            n = len(paths)
            index = {x: c for c, x in enumerate(paths)}
            if m < 2:
                rows = [[Fraction(int(a == b)) for b in range(n)] for a in range(n)]
            else:
                spaces = []
                for left in range(m - 1):
                    right = m - 2 - left
                    span = []
                    for pre in _paths_from(q, i, left):
                        for r_end, rels in rel_by_ends.items():
                            if r_end[0] != pre.target:
                                continue
                            for post in paths_between(q, r_end[1], j, right):
                                for r in rels:
                                    row = [0] * n
                                    for x, c in r.terms.items():
                                        full = Path(i, j, pre.arrows + x.arrows + post.arrows)
                                        row[index[full]] += c
                                    span.append(row)
                    spaces.append(echelon(span, n)[0] if span else [])
                rows = intersect_rowspaces(spaces, n)
            if rows:
                blocks[(i, j)] = (paths, rows)
    return KoszulComplexTerm(m, blocks)


def _paths_from(q, i, d):
    out = []
    for j in q.vertices:
        out.extend(paths_between(q, i, j, d))
    return out


# -- higher preprojective presentation -----------------------------------------

class _Pairing:
    """Coordinates of vectors in ``K_{n-1}`` relative to its RREF basis."""

    def __init__(self, term):
        self.items = []
        for (i, j), (paths, rows) in sorted(term.blocks.items()):
            index = {x: c for c, x in enumerate(paths)}
            pivots = [next(c for c, x in enumerate(r) if x) for r in rows]
            for r, piv in zip(rows, pivots):
                self.items.append(((i, j), index, piv, paths))

    def coordinate(self, t, vec):
        (i, j), index, piv, paths = self.items[t]
        return vec.get(paths[piv], 0)


def _new_arrow_names(q, basis):
    taken = {a.name for a in q.arrows} | set(q.vertices)
    names = []
    counter = 0
    for _i, _j, elem in basis:
        name = None
        if len(elem.terms) == 1:
            (path, c), = elem.terms.items()
            if path.length == 1 and c == 1:
                cand = path.arrows[0] + "*"
                if cand not in taken:
                    name = cand
        while name is None:
            counter += 1
            cand = f"z{counter}*"
            if cand not in taken:
                name = cand
        taken.add(name)
        names.append(name)
    return names


def global_dimension(p, bound, degree_bound=None):
    """Projective dimension of ``⊕ S_v`` if ``<= bound``, else raise.

    ``p`` must be finite dimensional; resolutions are computed exhaustively.
    """
    from .koszul import simple_resolutions, top_degree

    top = top_degree(p, degree_bound if degree_bound is not None else 64)
    hi = max(top, 1) * (bound + 2)
    res = simple_resolutions(p, hi, exhaustive=True)
    worst = 0
    for v, r in res.items():
        r.extend(bound + 1)
        if not r.finished or len(r.steps) > bound + 1:
            raise GlobalDimensionExceeded(f"simple at {v} has projective dimension > {bound}")
        worst = max(worst, len(r.steps) - 1)
    return worst


def higher_preprojective_presentation(p, n, check_gldim=True):
    """Quadratic presentation of the ``(n+1)``-preprojective algebra of ``p``.

    New arrows correspond to a basis of ``K_n`` (an element ``i -> j`` gives
    an arrow ``j -> i``). Besides the relations of ``p`` there is one relation
    per basis vector ``λ`` of ``K_{n-1}``, the dual Koszul differential:
    ``Σ_k Σ_v λ(k'_v) k*.v + (-1)^n Σ_w λ(k''_w) w.k*`` where
    ``k = Σ v.k'_v`` splits off the first arrow and ``k = Σ k''_w.w`` the last.
    Weights are ``(total, preprojective)``: ``(1, 0)`` for old arrows and
    ``(1, 1)`` for new ones.
    """
    if n < 1:
        raise PreconditionError("n must be at least 1")
    _check_quadratic(p)
    if any(w != (1,) for w in p.weights.values()):
        raise PreconditionError("input must carry the path-length grading")
    if check_gldim:
        gd = global_dimension(p, n)
        if gd != n:
            raise PreconditionError(f"global dimension is {gd}, not {n}")
    q = p.quiver
    kn = koszul_complex_term(p, n)
    km1 = koszul_complex_term(p, n - 1)
    basis = kn.elements()
    names = _new_arrow_names(q, basis)
    new_arrows = tuple((nm, j, i) for nm, (i, j, _e) in zip(names, basis))
    nq = Quiver(q.vertices, tuple(q.arrows) + new_arrows)
    weights = {a.name: (1, 0) for a in q.arrows}
    weights.update({nm: (1, 1) for nm in names})

    pairing = _Pairing(km1)
    sign = -1 if n % 2 else 1
    mixed = []
    for t in range(len(pairing.items)):
        terms = {}
        for nm, (i, j, k) in zip(names, basis):
            star = Path(j, i, (nm,))
            first, last = {}, {}
            for x, c in k.terms.items():
                v = x.arrows[0]
                src = q.arrow(v).target
                tail = Path(src, x.target, x.arrows[1:]) if x.length > 1 else lazy(src)
                first.setdefault(v, {})
                first[v][tail] = first[v].get(tail, 0) + c
                w = x.arrows[-1]
                tgt = q.arrow(w).source
                head = Path(x.source, tgt, x.arrows[:-1]) if x.length > 1 else lazy(tgt)
                last.setdefault(w, {})
                last[w][head] = last[w].get(head, 0) + c
            for v, vec in first.items():
                lam = pairing.coordinate(t, vec)
                if lam:
                    key = Path(j, q.arrow(v).target, (nm, v))
                    terms[key] = terms.get(key, 0) + lam
            for w, vec in last.items():
                lam = pairing.coordinate(t, vec)
                if lam:
                    key = Path(q.arrow(w).source, i, (w, nm))
                    terms[key] = terms.get(key, 0) + sign * lam
        rel = Element(terms)
        if rel:
            mixed.append(rel)
    return Presentation(nq, list(p.relations) + mixed, weights)


def preprojective_degree_zero(pp):
    """The subpresentation on arrows of preprojective weight 0."""
    q = pp.quiver
    keep = [a for a in q.arrows if pp.weights[a.name][1] == 0]
    names = {a.name for a in keep}
    rels = [r for r in pp.relations if all(set(x.arrows) <= names for x in r.terms)]
    sub = Quiver(q.vertices, tuple(keep))
    return Presentation(sub, rels, {a.name: (pp.weights[a.name][0],) for a in keep})


def new_arrows(pp):
    return [a for a in pp.quiver.arrows if pp.weights[a.name][1] == 1]


def relation_space_equal(p1, p2):
    """Do two presentations on the same quiver have the same relation span?"""
    if p1.quiver.arrows != p2.quiver.arrows or p1.quiver.vertices != p2.quiver.vertices:
        return False
    paths = sorted({x for r in p1.relations + p2.relations for x in r.terms}, key=Path.key)
    index = {x: c for c, x in enumerate(paths)}

    def rows(p):
        out = []
        for r in p.relations:
            row = [0] * len(paths)
            for x, c in r.terms.items():
                row[index[x]] = c
            out.append(row)
        return echelon(out, len(paths))[0] if out else []

    return rows(p1) == rows(p2)


def check_against_tensor_powers(pp, bimodule, n, max_total):
    """Compare bigraded dims of ``pp`` with ``E^{⊗i}`` dims; raise on mismatch.

    Returns the collapsed Hilbert list ``[dim Π_t for t <= max_total]``.
    """
    from .bimodule import regular_bimodule, tensor
    from .koszul import top_degree

    q = pp.quiver
    totals = [0] * (max_total + 1)
    power = regular_bimodule(bimodule.A, top_degree(bimodule.A, 64))
    i = 0
    while True:
        lo = i  # total degree of E^{⊗i} is at least i
        if lo > max_total:
            break
        for t in range(lo, max_total + 1):
            j = t - (n + 1) * i
            want = {}
            for (u, w, d), dim in power.dims().items():
                if d == j:
                    want[(u, w)] = want.get((u, w), 0) + dim
            got = {}
            for b in pp.basis((t, i)):
                got[(b.source, b.target)] = got.get((b.source, b.target), 0) + 1
            if got != want:
                raise ConsistencyError(
                    f"preprojective degree {i}, total degree {t}: presentation {got} vs tensor power {want}")
            totals[t] += sum(got.values())
        i += 1
        power = tensor(power, bimodule, max_total - (n + 1) * i) if i > 1 else bimodule
    return totals
