"""Exact integer and rational linear algebra.

Heavy lifting (rank, nullspace, rref, solve) goes through python-flint.  The pure-Python
Bareiss rank, Smith normal form and the numpy mod-p rank are independent implementations
used for saturation and as cross-checks.
"""
from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

import flint
import numpy as np

__all__ = [
    "IntMatrix",
    "to_fmpz",
    "to_fmpq",
    "identity",
    "bareiss_rank",
    "rank_mod_p",
    "smith_normal_form",
    "smith_with_transforms",
    "invariant_factors",
    "integer_kernel",
    "saturate",
    "rational_nullspace",
    "pivot_rows",
    "exact_coordinates",
    "rank",
    "echelon_nullspace",
    "select_rows",
    "rank_mod_prime",
    "exact_rank",
    "hstack",
    "vstack",
    "zeros",
]

IntMatrix = List[List[int]]
DEFAULT_PRIME = 2_147_483_629  # largest prime below 2**31


def to_fmpz(rows) -> flint.fmpz_mat:
    if isinstance(rows, flint.fmpz_mat):
        return rows
    rows = [list(map(int, r)) for r in rows]
    if not rows:
        return flint.fmpz_mat(0, 0)
    return flint.fmpz_mat(rows)


def to_fmpq(m) -> flint.fmpq_mat:
    if isinstance(m, flint.fmpq_mat):
        return m
    if isinstance(m, flint.fmpz_mat):
        return flint.fmpq_mat(m)
    rows = [list(r) for r in m]
    if not rows:
        return flint.fmpq_mat(0, 0)
    return flint.fmpq_mat(len(rows), len(rows[0]), [flint.fmpq(x.numerator, x.denominator) if hasattr(x, "denominator") else x for r in rows for x in r])


def zeros(r: int, c: int) -> flint.fmpq_mat:
    return flint.fmpq_mat(r, c)


def identity(n: int) -> flint.fmpq_mat:
    m = flint.fmpq_mat(n, n)
    for i in range(n):
        m[i, i] = 1
    return m


def hstack(blocks: Sequence[flint.fmpq_mat], nrows: Optional[int] = None) -> flint.fmpq_mat:
    blocks = [b for b in blocks]
    r = blocks[0].nrows() if blocks else (nrows or 0)
    c = sum(b.ncols() for b in blocks)
    if r == 0 or c == 0:
        return flint.fmpq_mat(r, c)
    lists = [b.tolist() for b in blocks]
    return flint.fmpq_mat([sum((l[i] for l in lists), []) for i in range(r)])


def vstack(blocks: Sequence[flint.fmpq_mat], ncols: Optional[int] = None) -> flint.fmpq_mat:
    blocks = [b for b in blocks]
    c = blocks[0].ncols() if blocks else (ncols or 0)
    r = sum(b.nrows() for b in blocks)
    if r == 0 or c == 0:
        return flint.fmpq_mat(r, c)
    rows = []
    for b in blocks:
        rows.extend(b.tolist())
    return flint.fmpq_mat(rows)


def rank(m) -> int:
    m = to_fmpq(m)
    if m.nrows() == 0 or m.ncols() == 0:
        return 0
    return m.rref()[1]


# pure-Python oracles ---------------------------------------------------------
def bareiss_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    a = [list(map(int, r)) for r in rows]
    if not a or not a[0]:
        return 0
    m, n = len(a), len(a[0])
    prev = 1
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, m):
            ai = a[i]
            f = ai[c]
            for j in range(c + 1, n):
                ai[j] = (p * ai[j] - f * a[r][j]) // prev
            ai[c] = 0
        prev = p
        r += 1
        if r == m:
            break
    return r


def rank_mod_p(rows, p: int = DEFAULT_PRIME) -> int:
    """Rank over F_p with numpy int64 row operations (p < 2**31 keeps products exact)."""
    a = np.array([[int(x) % p for x in r] for r in rows], dtype=np.int64)
    if a.size == 0:
        return 0
    m, n = a.shape
    r = 0
    for c in range(n):
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        below = a[r + 1:, c].copy()
        mask = below != 0
        if mask.any():
            a[r + 1:][mask] = (a[r + 1:][mask] - np.outer(below[mask], a[r]) % p) % p
        r += 1
        if r == m:
            break
    return r


def _swap_rows(a, i, j):
    a[i], a[j] = a[j], a[i]


def _swap_cols(a, i, j):
    for row in a:
        row[i], row[j] = row[j], row[i]


def smith_with_transforms(rows: Sequence[Sequence[int]]) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(U, D, V)`` with ``U A V = D`` in Smith normal form, U and V unimodular."""
    a = [list(map(int, r)) for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]
    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero absolute value in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = a[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        _swap_rows(a, t, i)
        _swap_rows(u, t, i)
        _swap_cols(a, t, j)
        _swap_cols(v, t, j)
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                    for row in v:
                        row[j] -= q * row[t]
                if a[t][j]:
                    done = False
            if done:
                # divisibility condition for the rest of the block
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p), None)
                if bad is None:
                    break
                i, _ = bad
                a[t] = [x + y for x, y in zip(a[t], a[i])]
                u[t] = [x + y for x, y in zip(u[t], u[i])]
                continue
            # move the smallest remainder into the pivot
            best = None
            for i in range(t, m):
                x = a[i][t]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, "r")
            for j in range(t, n):
                x = a[t][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), j, "c")
            _, k, kind = best
            if kind == "r":
                _swap_rows(a, t, k)
                _swap_rows(u, t, k)
            else:
                _swap_cols(a, t, k)
                _swap_cols(v, t, k)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, a, v


def smith_normal_form(rows: Sequence[Sequence[int]]) -> List[int]:
    """Nonzero diagonal entries of the Smith normal form (each divides the next)."""
    if not rows or not rows[0]:
        return []
    _, d, _ = smith_with_transforms(rows)
    return [d[i][i] for i in range(min(len(d), len(d[0]))) if d[i][i]]


def invariant_factors(rows: Sequence[Sequence[int]]) -> List[int]:
    """Torsion part of the cokernel: Smith diagonal entries greater than one."""
    return [x for x in smith_normal_form(rows) if x > 1]


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> IntMatrix:
    """A saturated Z-basis (as columns) of the integer kernel of ``rows``."""
    if not rows:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    _, d, v = smith_with_transforms(rows)
    r = sum(1 for i in range(min(len(d), ncols)) if d[i][i])
    return [row[r:] for row in v]


def saturate(cols: Sequence[Sequence[int]]) -> IntMatrix:
    """Basis of (Q-span of the columns) intersected with Z^n; input is n x k of full column rank."""
    n = len(cols)
    if n == 0 or not cols[0]:
        return [[] for _ in range(n)]
    k = len(cols[0])
    u, d, _ = smith_with_transforms(cols)
    if any(d[i][i] == 0 for i in range(k)):
        raise ValueError("columns are not independent")
    uinv = flint.fmpz_mat(u).inv()  # fmpq_mat; unimodular so integral
    out = [[int(uinv[i, j]) for j in range(k)] for i in range(n)]
    return out


# flint-backed helpers -------------------------------------------------------
def rational_nullspace(m: flint.fmpq_mat) -> flint.fmpq_mat:
    """Columns spanning the right nullspace over Q."""
    n = m.ncols()
    if m.nrows() == 0:
        return identity(n)
    num, _ = m.numer_denom()
    x, nullity = num.nullspace()
    out = flint.fmpq_mat(n, nullity)
    for i in range(n):
        for j in range(nullity):
            out[i, j] = x[i, j]
    return out


def echelon_nullspace(m: flint.fmpq_mat) -> Tuple[flint.fmpq_mat, List[int]]:
    """Nullspace basis read off the reduced row echelon form.

    Returns ``(B, free)`` where ``B`` restricted to the rows ``free`` is the identity, so the
    coordinates of any vector of the span are simply its entries at ``free``.
    """
    n = m.ncols()
    if m.nrows() == 0:
        return identity(n), list(range(n))
    r, rk = m.rref()
    rows = r.tolist()
    pivots = []
    for i in range(rk):
        pivots.append(next(j for j in range(n) if rows[i][j] != 0))
    pset = set(pivots)
    free = [j for j in range(n) if j not in pset]
    out = [[0] * len(free) for _ in range(n)]
    for k, f in enumerate(free):
        out[f][k] = 1
        for i, pc in enumerate(pivots):
            v = rows[i][f]
            if v != 0:
                out[pc][k] = -v
    if not free:
        return flint.fmpq_mat(n, 0), free
    return flint.fmpq_mat(out), free


def select_rows(m: flint.fmpq_mat, rows: Sequence[int]) -> flint.fmpq_mat:
    if not rows or m.ncols() == 0:
        return flint.fmpq_mat(len(rows), m.ncols())
    data = m.tolist()
    return flint.fmpq_mat([data[i] for i in rows])


def rank_mod_prime(m: flint.fmpq_mat, p: int = DEFAULT_PRIME) -> int:
    """Rank of the reduction mod ``p``; a lower bound for the rank over Q.

    Rows are scaled by a common denominator first, which must be prime to ``p``.
    """
    if m.nrows() == 0 or m.ncols() == 0:
        return 0
    num, den = m.numer_denom()
    if int(den) % p == 0:
        raise ValueError("denominator divisible by the chosen prime")
    return flint.nmod_mat(num, p).rank()


def exact_rank(m: flint.fmpq_mat) -> int:
    """Exact rank over Q (flint, on the denominator-cleared integer matrix)."""
    if m.nrows() == 0 or m.ncols() == 0:
        return 0
    num, _ = m.numer_denom()
    # flint eliminates along rows; the short side first is much faster
    return num.transpose().rank() if num.nrows() < num.ncols() else num.rank()


def pivot_rows(basis: flint.fmpq_mat) -> List[int]:
    """Indices of rows forming an invertible square submatrix of a full-column-rank basis."""
    t = basis.transpose()
    r, rk = t.rref()
    if rk != basis.ncols():
        raise ValueError("basis is not of full column rank")
    piv = []
    row = 0
    for c in range(r.ncols()):
        if row < rk and r[row, c] != 0:
            piv.append(c)
            row += 1
    return piv


def exact_coordinates(basis: flint.fmpq_mat, rows: List[int], target: flint.fmpq_mat,
                      integral: bool = False, unit_rows: bool = False) -> flint.fmpq_mat:
    """Solve ``basis X = target`` exactly, verifying the solution on every row.

    With ``unit_rows`` the basis restricted to ``rows`` is the identity and the solve is a
    row selection.
    """
    k = basis.ncols()
    if unit_rows and k:
        x = select_rows(target, rows)
        if basis * x != target:
            raise ArithmeticError("saturation violated: image not in the target submodule")
        if integral and any(v.q != 1 for row in x.tolist() for v in row):
            raise ArithmeticError("saturation violated: non-integral coordinates")
        return x
    if k == 0:
        if any(target[i, j] != 0 for i in range(target.nrows()) for j in range(target.ncols())):
            raise ArithmeticError("saturation violated: image not in the target submodule")
        return flint.fmpq_mat(0, target.ncols())
    sq = flint.fmpq_mat(k, k)
    rhs = flint.fmpq_mat(k, target.ncols())
    for a, i in enumerate(rows):
        for j in range(k):
            sq[a, j] = basis[i, j]
        for j in range(target.ncols()):
            rhs[a, j] = target[i, j]
    x = sq.solve(rhs)
    if basis * x != target:
        raise ArithmeticError("saturation violated: image not in the target submodule")
    if integral and any(x[i, j].q != 1 for i in range(x.nrows()) for j in range(x.ncols())):
        raise ArithmeticError("saturation violated: non-integral coordinates")
    return x
