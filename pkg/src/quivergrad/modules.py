"""Graded right modules over a rank-1 presentation and their resolutions.

Everything is organised in blocks ``(degree, vertex)``: the part of a module
of a given degree on which the idempotent ``e_vertex`` acts as the identity
from the right. Vectors are dicts ``basis key -> Fraction``.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import BoundTooSmall
from .linalg import Echelon, kernel_basis, solve_left
from .quiver import Path


def vadd(out, vec, coef=1):
    for k, c in vec.items():
        s = out.get(k, 0) + coef * c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _scal(A, name):
    return A.weights[name][0]


class FreeModule:
    """``⊕ g_i A`` with generator ``g_i`` at (vertex, degree)."""

    def __init__(self, A, gens):
        self.A = A
        self.gens = list(gens)
        self._blocks = {}

    @property
    def lo(self):
        return min((d for _, d in self.gens), default=None)

    def block(self, d, w):
        key = (d, w)
        got = self._blocks.get(key)
        if got is None:
            got = []
            for i, (v, dg) in enumerate(self.gens):
                if d - dg < 0:
                    continue
                for b in self.A.basis(d - dg):
                    if b.source == v and b.target == w:
                        got.append((i, b))
            self._blocks[key] = got
        return got

    def act(self, vec, name):
        a = self.A.quiver.arrow(name)
        out = {}
        for (i, b), c in vec.items():
            if b.target != a.source:
                continue
            for bb, cc in self.A._nf_path(Path(b.source, a.target, b.arrows + (name,))).items():
                k = (i, bb)
                s = out.get(k, 0) + c * cc
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return out

    def act_path(self, vec, path):
        for name in path.arrows:
            vec = self.act(vec, name)
            if not vec:
                break
        return vec


class FiniteModule:
    """Finite-dimensional graded module given by a basis and arrow actions.

    ``basis`` is a list of ``(key, degree, vertex)``; ``action[name][key]`` is
    the vector ``key . name``.
    """

    def __init__(self, A, basis, action):
        self.A = A
        self.basis = list(basis)
        self.action = action
        self.info = {k: (d, w) for k, d, w in self.basis}
        self._blocks = {}
        for k, d, w in self.basis:
            self._blocks.setdefault((d, w), []).append(k)

    @property
    def degrees(self):
        return sorted({d for _, d, _ in self.basis})

    def block(self, d, w):
        return self._blocks.get((d, w), [])

    def act(self, vec, name):
        out = {}
        table = self.action.get(name, {})
        for k, c in vec.items():
            img = table.get(k)
            if img:
                vadd(out, img, c)
        return out


def simple_module(A, v, degree=0):
    return FiniteModule(A, [(("S", v), degree, v)], {})


class Hom:
    """Module map out of a free module, fixed by the images of generators."""

    def __init__(self, source, target, images):
        self.source = source
        self.target = target
        self.images = images
        self._memo = {}

    def basis_image(self, key):
        got = self._memo.get(key)
        if got is not None:
            return got
        i, b = key
        if not b.arrows:
            got = dict(self.images[i])
        else:
            last = b.arrows[-1]
            a = self.source.A.quiver.arrow(last)
            prefix = Path(b.source, a.source, b.arrows[:-1])
            got = self.target.act(self.basis_image((i, prefix)), last)
        self._memo[key] = got
        return got

    def __call__(self, vec):
        out = {}
        for k, c in vec.items():
            vadd(out, self.basis_image(k), c)
        return out


def _dense(vec, index, n):
    row = [0] * n
    for k, c in vec.items():
        row[index[k]] = c
    return row


class Step:
    """One term ``P_i`` of a resolution with its boundary into the previous term."""

    def __init__(self, index, free, boundary):
        self.index = index
        self.free = free
        self.boundary = boundary
        self.kernel = {}
        self._mats = {}

    @property
    def generators(self):
        return self.free.gens

    @property
    def degrees(self):
        return sorted(d for _, d in self.free.gens)

    def matrix(self, d, w):
        """Rows: images of the block basis of ``P_i`` in the target block."""
        key = (d, w)
        got = self._mats.get(key)
        if got is None:
            src = self.free.block(d, w)
            tgt = self.boundary.target.block(d, w)
            index = {k: j for j, k in enumerate(tgt)}
            rows = [_dense(self.boundary.basis_image(k), index, len(tgt)) for k in src]
            got = (src, tgt, rows)
            self._mats[key] = got
        return got


class Resolution:
    """Minimal graded projective resolution of a finite module, degreewise.

    ``hi`` is the largest internal degree inspected. With ``exhaustive=True``
    the caller guarantees nothing lives above ``hi`` (finite-dimensional
    algebra); otherwise new generators found in degree ``hi`` raise
    :class:`BoundTooSmall`.
    """

    def __init__(self, A, module, hi, exhaustive=False):
        if A.rank != 1:
            raise ValueError("resolutions need a rank-1 grading")
        self.A = A
        self.module = module
        self.hi = hi
        self.exhaustive = exhaustive
        self.vertices = A.quiver.vertices
        self.steps = []
        gens, images = self._top(module, module.degrees)
        free = FreeModule(A, gens)
        self.steps.append(Step(0, free, Hom(free, module, images)))
        self.finished = not gens

    def _arrows_into(self, w):
        return [a for a in self.A.quiver.arrows if a.target == w]

    def _top(self, mod, degrees):
        """Minimal generators of a finite module (standard basis choice)."""
        gens, images = [], []
        for d in degrees:
            if d > self.hi:
                break
            for w in self.vertices:
                keys = mod.block(d, w)
                if not keys:
                    continue
                index = {k: j for j, k in enumerate(keys)}
                ech = Echelon(len(keys))
                for a in self._arrows_into(w):
                    for k in mod.block(d - _scal(self.A, a.name), a.source):
                        img = mod.act({k: Fraction(1)}, a.name)
                        if img:
                            ech.add(_dense(img, index, len(keys)))
                for k in keys:
                    row = [0] * len(keys)
                    row[index[k]] = 1
                    if ech.add(row):
                        gens.append((w, d))
                        images.append({k: Fraction(1)})
        return gens, images

    def _kernel(self, step):
        lo = step.free.lo
        for d in range(lo, self.hi + 1):
            for w in self.vertices:
                src, tgt, rows = step.matrix(d, w)
                if not src:
                    continue
                if not tgt:
                    basis = [[Fraction(int(i == j)) for j in range(len(src))]
                             for i in range(len(src))]
                else:
                    cols = [[rows[i][j] for i in range(len(src))] for j in range(len(tgt))]
                    basis = kernel_basis(cols, len(src))
                if basis:
                    step.kernel[(d, w)] = [
                        {src[j]: c for j, c in enumerate(v) if c} for v in basis]

    def extend(self, upto):
        """Compute terms ``P_0 .. P_upto`` (stops early once the kernel is 0)."""
        while len(self.steps) <= upto and not self.finished:
            step = self.steps[-1]
            self._kernel(step)
            gens, images = [], []
            lo = step.free.lo
            for d in range(lo, self.hi + 1):
                for w in self.vertices:
                    kvecs = step.kernel.get((d, w))
                    if not kvecs:
                        continue
                    src = step.free.block(d, w)
                    index = {k: j for j, k in enumerate(src)}
                    ech = Echelon(len(src))
                    for a in self._arrows_into(w):
                        for kv in step.kernel.get((d - _scal(self.A, a.name), a.source), ()):
                            img = step.free.act(kv, a.name)
                            if img:
                                ech.add(_dense(img, index, len(src)))
                    for kv in kvecs:
                        if ech.add(_dense(kv, index, len(src))):
                            gens.append((w, d))
                            images.append(kv)
            if not gens:
                self.finished = True
                break
            if not self.exhaustive and max(d for _, d in gens) >= self.hi:
                raise BoundTooSmall(
                    f"step {len(self.steps)} still gains generators at degree {self.hi}")
            free = FreeModule(self.A, gens)
            self.steps.append(Step(len(self.steps), free, Hom(free, step.free, images)))
        return self.steps[: upto + 1]

    def kernel_of(self, i):
        """Kernel blocks of ``P_i -> P_{i-1}`` (computed on demand)."""
        step = self.steps[i]
        if not step.kernel and step.free.gens:
            self._kernel(step)
        return step.kernel

    def length(self):
        return len(self.steps) - 1 if self.finished else None


def solve_in_block(step, d, w, target_vec):
    """A vector ``y`` in block (d, w) of ``P_i`` whose boundary is ``target_vec``."""
    src, tgt, rows = step.matrix(d, w)
    if not target_vec:
        return {}
    index = {k: j for j, k in enumerate(tgt)}
    t = _dense(target_vec, index, len(tgt))
    x = solve_left(rows, t, len(tgt))
    if x is None:
        raise ArithmeticError("lift does not exist: target not in the image")
    return {src[j]: c for j, c in enumerate(x) if c}


def lift_chain(src_res, start, tgt_res, f0_images, shift, upto, rng=None):
    """Lift a map ``P_start(src) -> P_0(tgt)`` to a chain map.

    ``f0_images[g]`` is the image of generator ``g`` of ``P_start``; the map
    has internal degree ``shift``. Returns a list whose ``k``-th entry holds
    the generator images of ``P_{start+k} -> P_k``. With ``rng`` a random
    kernel element is added to every lift (the span of the resulting
    compositions must not change).
    """
    maps = [list(f0_images)]
    src_res.extend(start + upto)
    tgt_res.extend(upto)
    for k in range(1, upto + 1):
        if start + k >= len(src_res.steps) or k >= len(tgt_res.steps):
            break
        s_step = src_res.steps[start + k]
        t_step = tgt_res.steps[k]
        prev = Hom(src_res.steps[start + k - 1].free, tgt_res.steps[k - 1].free, maps[-1])
        images = []
        for g, (w, dg) in enumerate(s_step.free.gens):
            t = prev(s_step.boundary.images[g])
            y = solve_in_block(t_step, dg + shift, w, t)
            if rng is not None:
                kern = tgt_res.kernel_of(k).get((dg + shift, w), ())
                for kv in kern:
                    c = Fraction(rng.randint(-3, 3))
                    if c:
                        y = vadd(dict(y), kv, c)
            images.append(y)
        maps.append(images)
    return maps
