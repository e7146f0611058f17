"""Primal-dual system ``M z = q`` for an LP in symmetric form.

``z = (y, x, s, t)``: duals, primal variables, primal slacks, dual surpluses.
The last row of ``M`` encodes ``b.y - c.x = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lp_model import LpInstance
from .tableau import RATIONAL, ArithmeticMode, Tableau

__all__ = ["EqSystem", "build_eq", "initialize"]


@dataclass(frozen=True)
class EqSystem:
    M: tuple[tuple[Fraction, ...], ...]
    q: tuple[Fraction, ...]
    m: int
    n: int

    @property
    def p(self) -> int:
        return self.m + self.n


def build_eq(instance: LpInstance) -> EqSystem:
    m, n = instance.m, instance.n
    p = m + n
    zero = Fraction(0)
    M = [[zero] * (2 * p) for _ in range(p + 1)]
    for i in range(m):
        for j in range(n):
            a = instance.A[i][j]
            M[i][m + j] = a
            M[m + j][i] = -a
        M[i][p + i] = Fraction(1)
        M[p][i] = instance.b[i]
    for j in range(n):
        M[m + j][p + m + j] = Fraction(1)
        M[p][m + j] = -instance.c[j]
    q = list(instance.b) + [-v for v in instance.c] + [zero]
    return EqSystem(M=tuple(tuple(r) for r in M), q=tuple(q), m=m, n=n)


def initialize(eq: EqSystem, mode: ArithmeticMode = RATIONAL) -> Tableau:
    """Starting tableau: row ``p+1`` of ``[M q]`` added to every other row."""
    p = eq.p
    last = list(eq.M[p]) + [eq.q[p]]
    rows = []
    for i in range(p):
        row = list(eq.M[i]) + [eq.q[i]]
        rows.append([a + b for a, b in zip(row, last)])
    rows.append(last)
    if not mode.exact:
        rows = [[float(v) for v in row] for row in rows]
    return Tableau(rows, p, mode)
