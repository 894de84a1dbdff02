"""Exact dense linear algebra over the rationals.

Matrices are plain lists of rows; entries may be ``int`` or ``Fraction`` on
input and are always ``Fraction`` on output. Every subspace handed back is in
reduced row echelon form, so equal subspaces compare equal as lists.
"""
from fractions import Fraction
from math import lcm

from ._backend import rref_int

__all__ = [
    "rref",
    "echelon",
    "rank",
    "kernel_basis",
    "intersect_rowspaces",
    "solve_left",
    "row_space_contains",
    "Echelon",
    "Quotient",
]

ZERO = Fraction(0)
ONE = Fraction(1)


def _ncols(m, ncols):
    if ncols is not None:
        return ncols
    if not m:
        raise ValueError("ncols is required for a matrix with no rows")
    return len(m[0])


def _to_int_row(row):
    den = 1
    for x in row:
        if isinstance(x, Fraction) and x.denominator != 1:
            den = lcm(den, x.denominator)
    if den == 1:
        return [int(x) for x in row]
    return [int(x * den) for x in row]


def echelon(m, ncols=None):
    """Nonzero rows of the RREF of ``m`` together with the pivot columns."""
    n = _ncols(m, ncols)
    for row in m:
        if len(row) != n:
            raise ValueError("ragged matrix")
    irows, pivots = rref_int([_to_int_row(r) for r in m], n)
    out = []
    for r, c in zip(irows, pivots):
        p = r[c]
        out.append([Fraction(x, p) if x else ZERO for x in r])
    return out, pivots


def rref(m, ncols=None):
    """Reduced row echelon form of ``m`` (same shape) and its pivot columns."""
    n = _ncols(m, ncols)
    rows, pivots = echelon(m, n)
    rows += [[ZERO] * n for _ in range(len(m) - len(rows))]
    return rows, pivots


def rank(m, ncols=None):
    if not m:
        return 0
    return len(echelon(m, ncols)[1])


def kernel_basis(m, ncols=None):
    """Basis (RREF rows) of the right null space ``{v : m v = 0}``."""
    n = _ncols(m, ncols)
    rows, pivots = echelon(m, n) if m else ([], [])
    pivset = set(pivots)
    basis = []
    for f in range(n):
        if f in pivset:
            continue
        v = [ZERO] * n
        v[f] = ONE
        for r, c in zip(rows, pivots):
            if r[f]:
                v[c] = -r[f]
        basis.append(v)
    if not basis:
        return []
    return echelon(basis, n)[0]


def intersect_rowspaces(spaces, ncols=None):
    """RREF basis of the intersection of the row spaces in ``spaces``.

    Uses ``V1 ∩ ... ∩ Vk = (V1^⊥ + ... + Vk^⊥)^⊥`` for the standard form.
    """
    if not spaces:
        raise ValueError("need at least one space")
    n = ncols
    if n is None:
        for s in spaces:
            if s:
                n = len(s[0])
                break
        else:
            raise ValueError("ncols is required when all spaces are empty")
    perp = []
    for s in spaces:
        if any(len(r) != n for r in s):
            raise ValueError("column counts differ")
        perp.extend(kernel_basis(s, n))
    return kernel_basis(perp, n)


def row_space_contains(m, v, ncols=None):
    n = len(v) if ncols is None else ncols
    if not any(v):
        return True
    return rank(list(m) + [list(v)], n) == rank(m, n)


def solve_left(m, target, ncols=None):
    """Coefficients ``x`` with ``sum_i x[i] * m[i] == target``, or ``None``.

    Free coefficients are set to zero, so the answer is deterministic.
    """
    n = len(target) if ncols is None else ncols
    k = len(m)
    if k == 0:
        return [] if not any(target) else None
    # columns of the system are the rows of m; augment with the target
    system = [[m[i][j] for i in range(k)] + [target[j]] for j in range(n)]
    rows, pivots = echelon(system, k + 1)
    if pivots and pivots[-1] == k:
        return None
    x = [ZERO] * k
    for r, c in zip(rows, pivots):
        x[c] = r[k]
    return x


class Echelon:
    """Incrementally grown subspace kept in reduced echelon form."""

    def __init__(self, ncols, rows=()):
        self.ncols = ncols
        self.rows = []
        self.pivots = []
        if rows:
            self.rows, self.pivots = echelon(list(rows), ncols)

    def __len__(self):
        return len(self.rows)

    def reduce(self, v):
        v = list(v)
        for r, c in zip(self.rows, self.pivots):
            f = v[c]
            if f:
                for j in range(c, self.ncols):
                    if r[j]:
                        v[j] -= f * r[j]
        return v

    def contains(self, v):
        return not any(self.reduce(v))

    def add(self, v):
        """Add ``v``; return ``True`` when it enlarged the space."""
        w = self.reduce(v)
        c = next((j for j, x in enumerate(w) if x), None)
        if c is None:
            return False
        p = w[c]
        w = [x / p for x in w]
        for r in self.rows:
            f = r[c]
            if f:
                for j in range(self.ncols):
                    if w[j]:
                        r[j] -= f * w[j]
        pos = 0
        while pos < len(self.pivots) and self.pivots[pos] < c:
            pos += 1
        self.rows.insert(pos, w)
        self.pivots.insert(pos, c)
        return True


class Quotient:
    """Quotient of ``Q^ncols`` by the row space of ``rows``.

    The non-pivot columns index a basis of the quotient; ``coords`` maps a
    vector to its coordinates in that basis.
    """

    def __init__(self, ncols, rows=()):
        self.ncols = ncols
        self.sub = Echelon(ncols, rows)
        piv = set(self.sub.pivots)
        self.basis = [j for j in range(ncols) if j not in piv]
        self.index = {j: i for i, j in enumerate(self.basis)}

    @property
    def dim(self):
        return len(self.basis)

    def coords(self, v):
        w = self.sub.reduce(v)
        return [w[j] for j in self.basis]
