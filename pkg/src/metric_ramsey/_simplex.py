"""Exact primal simplex over the rationals.

The tableau is kept as integers with a single common denominator (the
previous pivot element), i.e. the classical fraction-free "integer
pivoting" scheme.  Every entry is a minor of the initial matrix, so the
divisions below are exact and no gcd work is ever needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence


class UnboundedLP(ArithmeticError):
    pass


@dataclass(frozen=True)
class LPResult:
    value: Fraction
    x: tuple[Fraction, ...]


def _row_to_ints(row: Sequence[Fraction]) -> tuple[list[int], int]:
    scale = 1
    for v in row:
        scale = lcm(scale, Fraction(v).denominator)
    return [int(Fraction(v) * scale) for v in row], scale


def maximize(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    """Maximize ``c @ x`` subject to ``A @ x <= b`` and ``x >= 0``.

    Only problems whose right-hand side is nonnegative are accepted, so the
    origin is a feasible starting vertex and no phase one is needed.
    Entering and leaving variables follow Bland's rule, which rules out
    cycling on degenerate vertices.
    """
    m = len(A)
    n = len(c)
    if len(b) != m or any(len(row) != n for row in A):
        raise ValueError("shape mismatch between c, A and b")
    rows = []
    for i in range(m):
        ints, _ = _row_to_ints(list(A[i]) + [b[i]])
        rows.append(ints)
    obj, obj_scale = _row_to_ints(list(c))
    num, den, x = maximize_int(obj, rows)
    return LPResult(value=Fraction(num, den * obj_scale),
                    x=tuple(Fraction(p, q) for p, q in x))


def maximize_int(c: list[int], rows: list[list[int]]):
    """Integer core of :func:`maximize`.

    ``rows[i]`` is ``A[i] + [b[i]]``; everything is an integer.  Returns the
    optimum as ``(numerator, denominator)`` and the primal solution as a
    list of such pairs.
    """
    m = len(rows)
    n = len(c)
    width = n + m + 1
    rhs = width - 1
    tab: list[list[int]] = []
    for i, r in enumerate(rows):
        if r[n] < 0:
            raise ValueError("right-hand side must be nonnegative")
        row = r[:n] + [0] * m + [r[n]]
        row[n + i] = 1
        tab.append(row)
    obj = [-v for v in c] + [0] * (m + 1)
    basis = [n + i for i in range(m)]
    prev = 1

    while True:
        q = -1
        for j in range(width - 1):
            if obj[j] < 0:
                q = j
                break
        if q < 0:
            break
        p = -1
        for i in range(m):
            a = tab[i][q]
            if a <= 0:
                continue
            if p < 0:
                p = i
                continue
            # compare tab[i][rhs]/a with tab[p][rhs]/tab[p][q]
            lhs = tab[i][rhs] * tab[p][q]
            cur = tab[p][rhs] * a
            if lhs < cur or (lhs == cur and basis[i] < basis[p]):
                p = i
        if p < 0:
            raise UnboundedLP("objective is unbounded")

        prow = tab[p]
        piv = prow[q]
        for i in range(m):
            if i == p:
                continue
            row = tab[i]
            f = row[q]
            if f == 0:
                if piv != prev:
                    tab[i] = [(piv * v) // prev for v in row]
                continue
            tab[i] = [(piv * v - f * w) // prev for v, w in zip(row, prow)]
        f = obj[q]
        obj = [(piv * v - f * w) // prev for v, w in zip(obj, prow)]
        basis[p] = q
        prev = piv

    x = [(0, 1)] * n
    for i, var in enumerate(basis):
        if var < n:
            x[var] = (tab[i][rhs], prev)
    return obj[rhs], prev, x
