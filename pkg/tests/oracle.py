"""Brute-force reference computations, independent of the package's linear algebra.

Dimensions of graded pieces come from enumerating every path of the degree
and one global elimination over the two-sided ideal span ``u . rho . v``.
"""
from fractions import Fraction


def gauss_rank(rows):
    rows = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][c]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c] / p
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _le(a, b):
    return all(x <= y for x, y in zip(a, b))


def paths_up_to(quiver, weights, bound):
    """All paths (as (source, target, arrows)) with degree <= bound componentwise."""
    zero = tuple(0 for _ in bound)
    out = [((v, v, ()), zero) for v in quiver.vertices]
    frontier = list(out)
    while frontier:
        nxt = []
        for (s, t, arr), d in frontier:
            for a in quiver.arrows:
                if a.source != t:
                    continue
                nd = _add(d, weights[a.name])
                if _le(nd, bound):
                    nxt.append(((s, a.target, arr + (a.name,)), nd))
        out.extend(nxt)
        frontier = nxt
    return out


def brute_dim(p, degree):
    degree = (degree,) if isinstance(degree, int) else tuple(degree)
    allp = paths_up_to(p.quiver, p.weights, degree)
    target = [x for x, d in allp if d == degree]
    if not target:
        return 0
    index = {x: i for i, x in enumerate(target)}
    rows = []
    for r in p.relations:
        some = next(iter(r.terms))
        rdeg = p.path_degree(some)
        for (us, ut, ua), ud in allp:
            if ut != some.source or not _le(_add(ud, rdeg), degree):
                continue
            for (vs, vt, va), vd in allp:
                if vs != some.target or _add(_add(ud, rdeg), vd) != degree:
                    continue
                row = [0] * len(target)
                for path, c in r.terms.items():
                    row[index[(us, vt, ua + path.arrows + va)]] += c
                rows.append(row)
    return len(target) - (gauss_rank(rows) if rows else 0)


def brute_block_dims(p, degree):
    """``(source, target) -> dim`` of the degree piece (rank-1 or vector degree)."""
    degree = (degree,) if isinstance(degree, int) else tuple(degree)
    out = {}
    allp = paths_up_to(p.quiver, p.weights, degree)
    ends = {(x[0], x[1]) for x, d in allp if d == degree}
    for s, t in sorted(ends):
        target = [x for x, d in allp if d == degree and x[0] == s and x[1] == t]
        index = {x: i for i, x in enumerate(target)}
        rows = []
        for r in p.relations:
            some = next(iter(r.terms))
            rdeg = p.path_degree(some)
            for (us, ut, ua), ud in allp:
                if us != s or ut != some.source or not _le(_add(ud, rdeg), degree):
                    continue
                for (vs, vt, va), vd in allp:
                    if vs != some.target or vt != t or _add(_add(ud, rdeg), vd) != degree:
                        continue
                    row = [0] * len(target)
                    for path, c in r.terms.items():
                        row[index[(s, t, ua + path.arrows + va)]] += c
                    rows.append(row)
        dim = len(target) - (gauss_rank(rows) if rows else 0)
        if dim:
            out[(s, t)] = dim
    return out


def brute_dual_dims(p, degree):
    """Dimension of the quadratic dual in ``degree``: complement of the relation
    span in every (source, target) block of length-2 paths, via sympy."""
    import sympy

    from quivergrad.graded import Presentation
    from quivergrad.quiver import Element

    q = p.quiver
    blocks = {}
    for a in q.arrows:
        for b in q.arrows_from(a.target):
            key = (a.source, b.target, tuple(x + y for x, y in zip(p.weights[a.name], p.weights[b.name])))
            blocks.setdefault(key, []).append(q.path([a.name, b.name]))
    rels = []
    for key, paths in blocks.items():
        rows = []
        for r in p.relations:
            some = next(iter(r.terms))
            if (some.source, some.target, p.path_degree(some)) == key:
                rows.append([r.terms.get(x, 0) for x in paths])
        if rows:
            null = sympy.Matrix(rows).nullspace()
        else:
            null = [sympy.eye(len(paths)).col(i) for i in range(len(paths))]
        for v in null:
            rels.append(Element([(x, Fraction(int(c.p), int(c.q))) for x, c in zip(paths, v) if c]))
    return brute_dim(Presentation(q, rels, p.weights), degree)
