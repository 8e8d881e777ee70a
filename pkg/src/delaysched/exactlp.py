"""Small exact simplex over rationals, plus the two queries built on it.

Everything runs on :class:`fractions.Fraction`; Bland's rule guarantees
termination.  Problems here are tiny (a handful of rows, up to a few
thousand columns), so the dense tableau with recomputed reduced costs is
plenty.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

__all__ = ["simplex_min", "dominating_combination", "max_symmetric_scale"]


def _pivot(tab, basis, r, s):
    piv = tab[r][s]
    tab[r] = [x / piv for x in tab[r]]
    for i in range(len(tab)):
        if i != r and tab[i][s]:
            f = tab[i][s]
            tab[i] = [a - f * b for a, b in zip(tab[i], tab[r])]
    basis[r] = s


def _optimize(tab, basis, cost, ncols) -> bool:
    """Bland-rule simplex sweep; False means unbounded."""
    m = len(tab)
    while True:
        z = [
            cost[j] - sum(cost[basis[i]] * tab[i][j] for i in range(m))
            for j in range(ncols)
        ]
        enter = next((j for j in range(ncols) if z[j] < 0), None)
        if enter is None:
            return True
        leave = None
        ratio = None
        for i in range(m):
            if tab[i][enter] > 0:
                r = tab[i][-1] / tab[i][enter]
                if ratio is None or r < ratio or (r == ratio and basis[i] < basis[leave]):
                    ratio, leave = r, i
        if leave is None:
            return False
        _pivot(tab, basis, leave, enter)


def simplex_min(c: Sequence, A: Sequence[Sequence], b: Sequence):
    """min c.x  s.t.  A x = b, x >= 0.  Returns (status, x, value)."""
    m, n = len(A), len(c)
    tab = []
    for row, bi in zip(A, b):
        r = [Fraction(v) for v in row]
        rhs = Fraction(bi)
        if rhs < 0:
            r = [-v for v in r]
            rhs = -rhs
        tab.append(r + [Fraction(0)] * m + [rhs])
    for i in range(m):
        tab[i][n + i] = Fraction(1)
    basis = list(range(n, n + m))

    phase1 = [Fraction(0)] * n + [Fraction(1)] * m
    _optimize(tab, basis, phase1, n + m)
    if sum(phase1[basis[i]] * tab[i][-1] for i in range(m)) != 0:
        return "infeasible", None, None
    for i in range(m):
        if basis[i] >= n:
            s = next((j for j in range(n) if tab[i][j] != 0), None)
            if s is not None:
                _pivot(tab, basis, i, s)

    cost = [Fraction(v) for v in c] + [Fraction(0)] * m
    if not _optimize(tab, basis, cost, n):
        return "unbounded", None, None
    x = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = tab[i][-1]
    return "optimal", x, sum(Fraction(v) * xv for v, xv in zip(c, x))


def dominating_combination(
    generators: Sequence[Sequence[Fraction]],
    target: Sequence[Fraction],
) -> list[Fraction] | None:
    """Convex weights on the generators dominating ``target``, or None.

    Solves the exact feasibility problem: lambda >= 0, sum(lambda) = 1,
    sum(lambda_i g_i) >= target component-wise.
    """
    if not generators:
        return None
    dims = len(target)
    n = len(generators)
    A = []
    b = []
    for l in range(dims):
        # sum_i lambda_i g_i(l) - s_l = target(l)
        row = [g[l] for g in generators] + [
            Fraction(-1) if j == l else Fraction(0) for j in range(dims)
        ]
        A.append(row)
        b.append(target[l])
    A.append([Fraction(1)] * n + [Fraction(0)] * dims)
    b.append(Fraction(1))
    status, x, _ = simplex_min([Fraction(0)] * (n + dims), A, b)
    if status != "optimal":
        return None
    return x[:n]


def max_symmetric_scale(
    vectors: Sequence[Sequence[Fraction]],
    factor: Fraction,
) -> Fraction:
    """max a such that (a, ..., a) <= factor * (some convex combination)."""
    if not vectors:
        return Fraction(0)
    dims = len(vectors[0])
    n = len(vectors)
    # Variables: lambda (n), a, slack (dims).
    A = []
    b = []
    for l in range(dims):
        row = [factor * v[l] for v in vectors]
        row.append(Fraction(-1))
        row.extend(Fraction(-1) if j == l else Fraction(0) for j in range(dims))
        A.append(row)
        b.append(Fraction(0))
    A.append([Fraction(1)] * n + [Fraction(0)] * (dims + 1))
    b.append(Fraction(1))
    c = [Fraction(0)] * n + [Fraction(-1)] + [Fraction(0)] * dims
    status, x, _ = simplex_min(c, A, b)
    if status != "optimal":
        raise AssertionError(f"symmetric-rate LP came back {status}")
    return x[n]
