"""Finite-dimensional graded bimodules, tensor products over A, and
``E = Ext^n_A(DA, A)`` computed from injective resolutions."""
from __future__ import annotations

from fractions import Fraction

from .errors import PreconditionError
from .linalg import Quotient
from .modules import FiniteModule, Resolution, lift_chain, solve_in_block, vadd


class Bimodule:
    """Basis entries ``(key, left vertex, right vertex, degree)`` plus arrow actions.

    ``left[x][key]`` is the vector ``x . key``; ``right[x][key]`` is ``key . x``.
    """

    def __init__(self, A, basis, left, right):
        self.A = A
        self.basis = list(basis)
        self.left = left
        self.right = right
        self.info = {k: (u, w, d) for k, u, w, d in self.basis}
        self._blocks = {}
        for k, u, w, d in self.basis:
            self._blocks.setdefault((u, w, d), []).append(k)

    def dims(self):
        return {b: len(keys) for b, keys in self._blocks.items()}

    @property
    def dim(self):
        return len(self.basis)

    def block(self, u, w, d):
        return self._blocks.get((u, w, d), [])

    def blocks(self):
        return sorted(self._blocks)

    def act_left(self, name, vec):
        out = {}
        table = self.left.get(name, {})
        for k, c in vec.items():
            img = table.get(k)
            if img:
                vadd(out, img, c)
        return out

    def act_right(self, vec, name):
        out = {}
        table = self.right.get(name, {})
        for k, c in vec.items():
            img = table.get(k)
            if img:
                vadd(out, img, c)
        return out

    def dim_table(self):
        """``(left, right) -> {degree: dim}``."""
        out = {}
        for (u, w, d), n in sorted(self.dims().items()):
            out.setdefault((u, w), {})[d] = n
        return out

    def check_relations(self):
        """Both actions must kill every relation of ``A``; returns offending relations."""
        bad = []
        for r in self.A.relations:
            for k, *_ in self.basis:
                acc_r, acc_l = {}, {}
                for path, c in r.terms.items():
                    v = {k: Fraction(1)}
                    for name in path.arrows:
                        v = self.act_right(v, name)
                    vadd(acc_r, v, c)
                    v = {k: Fraction(1)}
                    for name in reversed(path.arrows):
                        v = self.act_left(name, v)
                    vadd(acc_l, v, c)
                if acc_r or acc_l:
                    bad.append(r)
                    break
        return bad


def regular_bimodule(A, top):
    """``A`` itself (finite dimensional, degrees ``0..top``)."""
    basis, left, right = [], {}, {}
    for d in range(top + 1):
        for b in A.basis(d):
            basis.append((b, b.source, b.target, d))
    keys = {k for k, *_ in basis}
    q = A.quiver
    for a in q.arrows:
        lt, rt = {}, {}
        for b in keys:
            if b.target == a.source:
                rt[b] = dict(A._nf_path(b._replace(target=a.target, arrows=b.arrows + (a.name,))))
            if b.source == a.target:
                lt[b] = dict(A._nf_path(b._replace(source=a.source, arrows=(a.name,) + b.arrows)))
        left[a.name], right[a.name] = lt, rt
    return Bimodule(A, basis, left, right)


def tensor(M, N, max_degree=None):
    """``M ⊗_A N``: pairs over a common vertex modulo ``m.x ⊗ n - m ⊗ x.n``.

    With ``max_degree`` only the pieces up to that degree are built; they are
    exact as long as ``M`` and ``N`` are complete in the degrees that can
    contribute.
    """
    A = M.A
    by_left = {}
    for k, u, w, d in N.basis:
        by_left.setdefault(u, []).append((k, w, d))
    cols = {}
    for mk, mu, mw, md in M.basis:
        for nk, nw, nd in by_left.get(mw, ()):
            if max_degree is not None and md + nd > max_degree:
                continue
            cols.setdefault((mu, nw, md + nd), []).append((mk, nk))
    index = {b: {pair: c for c, pair in enumerate(pairs)} for b, pairs in cols.items()}
    rels = {b: [] for b in cols}
    for a in A.quiver.arrows:
        wt = A.weights[a.name][0]
        for mk, mu, mw, md in M.basis:
            if mw != a.source:
                continue
            mx = M.act_right({mk: Fraction(1)}, a.name)
            for nk, nw, nd in by_left.get(a.target, ()):
                xn = N.act_left(a.name, {nk: Fraction(1)})
                if not mx and not xn:
                    continue
                b = (mu, nw, md + nd + wt)
                if b not in cols:
                    continue
                row = [0] * len(cols[b])
                idx = index[b]
                for k2, c in mx.items():
                    row[idx[(k2, nk)]] += c
                for k2, c in xn.items():
                    row[idx[(mk, k2)]] -= c
                rels[b].append(row)
    quots = {b: Quotient(len(pairs), rels[b]) for b, pairs in cols.items()}
    basis = []
    for b in sorted(cols, key=repr):
        qt = quots[b]
        for c in qt.basis:
            basis.append((cols[b][c], b[0], b[1], b[2]))

    def express(b, vec):
        qt = quots.get(b)
        if qt is None:
            return {}
        dense = [0] * qt.ncols
        for pair, c in vec.items():
            dense[index[b][pair]] += c
        coords = qt.coords(dense)
        return {cols[b][qt.basis[i]]: x for i, x in enumerate(coords) if x}

    left, right = {}, {}
    for a in A.quiver.arrows:
        wt = A.weights[a.name][0]
        lt, rt = {}, {}
        for key, u, w, d in basis:
            mk, nk = key
            if u == a.target:
                img = M.act_left(a.name, {mk: Fraction(1)})
                if img:
                    got = express((a.source, w, d + wt), {(k2, nk): c for k2, c in img.items()})
                    if got:
                        lt[key] = got
            if w == a.source:
                img = N.act_right({nk: Fraction(1)}, a.name)
                if img:
                    got = express((u, a.target, d + wt), {(mk, k2): c for k2, c in img.items()})
                    if got:
                        rt[key] = got
        left[a.name], right[a.name] = lt, rt
    return Bimodule(A, basis, left, right)


def tensor_power(E, i, top=None, max_degree=None):
    """``E^{⊗_A i}`` (``i = 0`` gives ``A``; needs ``top`` then)."""
    if i == 0:
        if top is None:
            from .koszul import top_degree
            top = top_degree(E.A, 64)
        return regular_bimodule(E.A, top)
    low = min((d for *_, d in E.basis), default=0)
    out = E
    for k in range(2, i + 1):
        bound = None if max_degree is None else max_degree - (i - k) * low
        out = tensor(out, E, bound)
    return out


# -- injectives and Ext -----------------------------------------------------

def injective_module(A, v, top):
    """``D(A e_v)``: basis ``p*`` for standard paths ``p`` ending at ``v``.

    ``p*`` sits in degree ``-deg p`` at right vertex ``source(p)`` and
    ``p* . x = Σ_q [x.q]_p q*``.
    """
    basis = []
    paths = []
    for d in range(top + 1):
        for b in A.basis(d):
            if b.target == v:
                basis.append((("D", b), -d, b.source))
                paths.append(b)
    action = {}
    for a in A.quiver.arrows:
        table = {}
        for qpath in paths:
            if qpath.source != a.target:
                continue
            prod = A._nf_path(qpath._replace(source=a.source, arrows=(a.name,) + qpath.arrows))
            for pp, c in prod.items():
                table.setdefault(("D", pp), {})[("D", qpath)] = c
        action[a.name] = table
    return FiniteModule(A, basis, action), paths


def _left_mult(A, x, v, u, paths_u):
    """``λ_x : D(Ae_v) -> D(Ae_u)``, ``p* -> Σ_{q ∈ Ae_u} [q.x]_p q*``."""
    table = {}
    a = A.quiver.arrow(x)
    for qpath in paths_u:
        if qpath.target != a.source:
            continue
        prod = A._nf_path(qpath._replace(target=a.target, arrows=qpath.arrows + (x,)))
        for pp, c in prod.items():
            table.setdefault(("D", pp), {})[("D", qpath)] = c
    return table


class _ExtPiece:
    """``Ext^n(D(Ae_v), A)`` as a cokernel of ``Hom(P_{n-1}, A) -> Hom(P_n, A)``."""

    def __init__(self, A, res, n, top, v):
        self.A = A
        self.v = v
        self.res = res
        self.blocks = {}          # (left vertex, degree) -> (cols, Quotient)
        self.cols, self.index, self.quot = {}, {}, {}
        if len(res.steps) <= n:
            self.gens = []
            return
        step = res.steps[n]
        prev = res.steps[n - 1]
        self.gens = step.generators
        paths_to = {}
        for d in range(top + 1):
            for b in A.basis(d):
                paths_to.setdefault(b.target, []).append(b)
        cols = {}
        for g, (ug, dg) in enumerate(self.gens):
            for pi in paths_to.get(ug, ()):
                cols.setdefault((pi.source, self._deg(pi) - dg), []).append((g, pi))
        self.cols = cols
        self.index = {b: {c: i for i, c in enumerate(cs)} for b, cs in cols.items()}
        rows = {b: [] for b in cols}
        for h, (uh, dh) in enumerate(prev.generators):
            for pi in paths_to.get(uh, ()):
                vec = {}
                for g, img in enumerate(step.boundary.images):
                    for (h2, b), c in img.items():
                        if h2 != h:
                            continue
                        for pp, cc in self._mult(pi, b).items():
                            vadd(vec, {(g, pp): c * cc})
                if not vec:
                    continue
                blk = self._block_of(next(iter(vec)))
                row = [0] * len(cols[blk])
                for col, c in vec.items():
                    row[self.index[blk][col]] += c
                rows[blk].append(row)
        self.quot = {b: Quotient(len(cs), rows[b]) for b, cs in cols.items()}

    def _deg(self, path):
        return sum(self.A.weights[x][0] for x in path.arrows)

    def _block_of(self, col):
        g, pi = col
        return (pi.source, self._deg(pi) - self.gens[g][1])

    def _mult(self, x, y):
        if x.target != y.source:
            return {}
        return self.A._nf_path(x._replace(target=y.target, arrows=x.arrows + y.arrows))

    def basis(self):
        out = []
        for b in sorted(self.cols, key=repr):
            qt = self.quot[b]
            for c in qt.basis:
                g, pi = self.cols[b][c]
                out.append((("E", self.v, g, pi), b[0], self.v, b[1]))
        return out

    def express(self, vec):
        """Class of ``{(g, π): c}`` in basis keys (all entries in one block)."""
        if not vec:
            return {}
        blk = self._block_of(next(iter(vec)))
        cs = self.cols[blk]
        qt = self.quot[blk]
        dense = [0] * len(cs)
        for col, c in vec.items():
            dense[self.index[blk][col]] += c
        coords = qt.coords(dense)
        out = {}
        for i, x in enumerate(coords):
            if x:
                g, pi = cs[qt.basis[i]]
                out[("E", self.v, g, pi)] = x
        return out


def ext_bimodule(A, n, degree_bound=None, rng=None, check_gldim=True):
    """``E = Ext^n_A(DA, A)`` with both arrow actions.

    ``e_u E e_v = Ext^n(D(Ae_v), e_u A)``. Left multiplication by arrows acts
    through ``A``; right multiplication by ``x : u -> v`` is induced by the
    chain lift of ``D(Ae_v) -> D(Ae_u)``, ``φ -> x.φ``.
    """
    from .koszul import top_degree
    from .preprojective import global_dimension

    if A.rank != 1:
        raise PreconditionError("a rank-1 grading is required")
    top = top_degree(A, degree_bound if degree_bound is not None else 64)
    if check_gldim:
        global_dimension(A, n, degree_bound)
    hi = (n + 2) * max(top, 1)
    verts = A.quiver.vertices
    inj, paths_of, res, pieces = {}, {}, {}, {}
    for v in verts:
        inj[v], paths_of[v] = injective_module(A, v, top)
        res[v] = Resolution(A, inj[v], hi, exhaustive=True)
        res[v].extend(n)
        pieces[v] = _ExtPiece(A, res[v], n, top, v)
    basis = []
    for v in verts:
        basis.extend(pieces[v].basis())

    left, right = {}, {}
    for a in A.quiver.arrows:
        lt = {}
        for key, u, v, d in basis:
            if u != a.target:
                continue
            _, _, g, pi = key
            vec = {}
            prod = pieces[v]._mult(A.quiver.arrow_path(a.name), pi)
            for pp, c in prod.items():
                vec[(g, pp)] = c
            got = pieces[v].express(vec)
            if got:
                lt[key] = got
        left[a.name] = lt

        # right action: E_u -> E_v for a : u -> v
        u, v = a.source, a.target
        rt = {}
        src, tgt = res[v], res[u]
        if len(src.steps) > n and len(tgt.steps) > n:
            lam = _left_mult(A, a.name, v, u, paths_of[u])
            wt = A.weights[a.name][0]
            f0 = []
            for g, (wg, dg) in enumerate(src.steps[0].generators):
                t = {}
                for k, c in src.steps[0].boundary.images[g].items():
                    vadd(t, lam.get(k, {}), c)
                f0.append(solve_in_block(tgt.steps[0], dg + wt, wg, t))
            maps = lift_chain(src, 0, tgt, f0, wt, n, rng=rng)
            fn = maps[n]
            for key, lu, ru, d in basis:
                if ru != u:
                    continue
                _, _, g2, pi = key
                vec = {}
                for g, y in enumerate(fn):
                    for (h, b), c in y.items():
                        if h != g2:
                            continue
                        for pp, cc in pieces[v]._mult(pi, b).items():
                            vadd(vec, {(g, pp): c * cc})
                got = pieces[v].express(vec)
                if got:
                    rt[key] = got
        right[a.name] = rt
    E = Bimodule(A, basis, left, right)
    E.n = n
    return E
