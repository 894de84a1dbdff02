"""Pure-Python fraction-free Gauss-Jordan elimination on integer rows."""
from math import gcd


def rref_int(rows, ncols):
    """Reduce integer rows to a fraction-free reduced echelon form.

    Returns ``(rows, pivots)`` where ``rows`` holds the nonzero rows only,
    each primitive with a positive pivot, and every pivot column is zero in
    all other rows. Dividing each row by its pivot gives the rational RREF.
    """
    work = [list(r) for r in rows if any(r)]
    return eliminate(work, ncols, 0, 0, [])


def eliminate(work, ncols, start, rank, pivots):
    """Continue the elimination of ``work`` from column ``start``.

    ``rank`` rows are already finished with pivots ``pivots``; used by the
    compiled kernel to hand over once its machine integers run out.
    """
    nrows = len(work)
    for c in range(start, ncols):
        if rank == nrows:
            break
        piv = -1
        best = 0
        for i in range(rank, nrows):
            v = work[i][c]
            if v:
                a = -v if v < 0 else v
                if piv < 0 or a < best:
                    piv = i
                    best = a
                    if a == 1:
                        break
        if piv < 0:
            continue
        if piv != rank:
            work[rank], work[piv] = work[piv], work[rank]
        prow = work[rank]
        p = prow[c]
        for i in range(nrows):
            if i == rank:
                continue
            row = work[i]
            f = row[c]
            if not f:
                continue
            g = gcd(p, f)
            a = p // g
            b = f // g
            new = [a * x - b * y for x, y in zip(row, prow)]
            cont = gcd(*new)
            if cont > 1:
                new = [x // cont for x in new]
            work[i] = new
        pivots.append(c)
        rank += 1
    out = work[:rank]
    for r, c in zip(out, pivots):
        cont = gcd(*r)
        if r[c] < 0:
            cont = -cont
        if cont != 1:
            r[:] = [x // cont for x in r]
    return out, pivots
