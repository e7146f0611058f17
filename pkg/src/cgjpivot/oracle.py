"""Independent reference solvers used to check the main algorithm.

Nothing here touches ``tableau``: both solvers carry their own exact
elimination so that a kernel bug cannot confirm itself.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .lp_model import LpInstance

__all__ = [
    "OPTIMAL",
    "UNBOUNDED",
    "INFEASIBLE",
    "FEASIBLE_BOUNDED",
    "OracleResult",
    "OracleSizeError",
    "simplex_solve",
    "enumerate_vertices",
    "classify_no_solution",
]

OPTIMAL = "Optimal"
UNBOUNDED = "Unbounded"
INFEASIBLE = "Infeasible"
FEASIBLE_BOUNDED = "FeasibleBounded"

ENUMERATION_LIMIT = 14


class OracleSizeError(ValueError):
    pass


@dataclass
class OracleResult:
    kind: str
    value: Optional[Fraction] = None
    x: Optional[tuple[Fraction, ...]] = None
    bases: list[tuple] = field(default_factory=list, repr=False)  # (phase, sorted basis)

    @property
    def repeated_basis(self) -> bool:
        seen = set()
        for phase_basis in self.bases:
            if phase_basis in seen:
                return True
            seen.add(phase_basis)
        return False


# -- two-phase simplex, Bland's rule ------------------------------------


class _Simplex:
    """Dense exact tableau for ``max obj.x  s.t.  rows x = rhs, x >= 0``."""

    def __init__(self, rows, rhs, basis):
        self.rows = [list(r) for r in rows]
        self.rhs = list(rhs)
        self.basis = list(basis)
        self.visited: list[tuple] = []
        self.phase = 1

    def pivot(self, r, k):
        row, piv = self.rows[r], self.rows[r][k]
        self.rows[r] = [v / piv for v in row]
        self.rhs[r] /= piv
        for i in range(len(self.rows)):
            if i != r and self.rows[i][k] != 0:
                f = self.rows[i][k]
                self.rows[i] = [a - f * b for a, b in zip(self.rows[i], self.rows[r])]
                self.rhs[i] -= f * self.rhs[r]
        self.basis[r] = k

    def reduced_costs(self, obj, allowed):
        # d_j = obj_j - obj_B . B^-1 A_j ; improving when d_j > 0
        out = {}
        for j in allowed:
            out[j] = obj[j] - sum(obj[self.basis[i]] * self.rows[i][j] for i in range(len(self.rows)))
        return out

    def run(self, obj, allowed) -> bool:
        """Maximize ``obj``. Returns False if unbounded."""
        while True:
            self.visited.append((self.phase, tuple(sorted(self.basis))))
            d = self.reduced_costs(obj, allowed)
            entering = next((j for j in sorted(allowed) if d[j] > 0 and j not in self.basis), None)
            if entering is None:
                return True
            best = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    ratio = self.rhs[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], entering)

    def value(self, obj):
        return sum(obj[b] * self.rhs[i] for i, b in enumerate(self.basis))


def _phase_one(instance: LpInstance):
    """Feasibility phase on ``A x + s = b``; returns the simplex state or ``None``."""
    m, n = instance.m, instance.n
    ncols = n + m
    art = [i for i in range(m) if instance.b[i] < 0]
    total = ncols + len(art)
    rows, rhs, basis = [], [], []
    for i in range(m):
        sign = -1 if instance.b[i] < 0 else 1
        row = [Fraction(0)] * total
        for j in range(n):
            row[j] = sign * instance.A[i][j]
        row[n + i] = Fraction(sign)
        rhs.append(sign * instance.b[i])
        if sign < 0:
            a = ncols + art.index(i)
            row[a] = Fraction(1)
            basis.append(a)
        else:
            basis.append(n + i)
        rows.append(row)
    sx = _Simplex(rows, rhs, basis)
    if art:
        obj = [Fraction(0)] * ncols + [Fraction(-1)] * len(art)
        sx.run(obj, range(total))
        if sx.value(obj) < 0:
            return None, sx
        # drive zero-level artificials out of the basis, drop redundant rows
        i = 0
        while i < len(sx.rows):
            if sx.basis[i] >= ncols:
                k = next((j for j in range(ncols) if sx.rows[i][j] != 0), None)
                if k is None:
                    del sx.rows[i], sx.rhs[i], sx.basis[i]
                    continue
                sx.pivot(i, k)
            i += 1
    sx.rows = [r[:ncols] for r in sx.rows]
    return sx, sx


def simplex_solve(instance: LpInstance) -> OracleResult:
    """Two-phase primal simplex with Bland's smallest-index rule, exact arithmetic."""
    m, n = instance.m, instance.n
    sx, state = _phase_one(instance)
    if sx is None:
        return OracleResult(INFEASIBLE, bases=state.visited)
    obj = list(instance.c) + [Fraction(0)] * m
    sx.phase = 2
    bounded = sx.run(obj, range(n + m))
    if not bounded:
        return OracleResult(UNBOUNDED, bases=sx.visited)
    x = [Fraction(0)] * (n + m)
    for i, b in enumerate(sx.basis):
        x[b] = sx.rhs[i]
    xs = tuple(x[:n])
    value = sum((ci * xi for ci, xi in zip(instance.c, xs)), Fraction(0))
    return OracleResult(OPTIMAL, value, xs, bases=sx.visited)


# -- brute-force vertex enumeration -------------------------------------


def _solve_square(mat, rhs):
    """Exact Gaussian elimination; ``None`` if singular."""
    size = len(mat)
    aug = [list(r) + [v] for r, v in zip(mat, rhs)]
    for col in range(size):
        piv = next((r for r in range(col, size) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        lead = aug[col][col]
        aug[col] = [v / lead for v in aug[col]]
        for r in range(size):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [aug[r][size] for r in range(size)]


def _best_vertex(rows, rhs, obj):
    """Max of ``obj`` over basic feasible solutions of ``rows z = rhs, z >= 0``."""
    nrows, ncols = len(rows), len(rows[0])
    best = None
    for cols in combinations(range(ncols), nrows):
        sub = [[row[c] for c in cols] for row in rows]
        sol = _solve_square(sub, rhs)
        if sol is None or any(v < 0 for v in sol):
            continue
        z = [Fraction(0)] * ncols
        for c, v in zip(cols, sol):
            z[c] = v
        val = sum((o * v for o, v in zip(obj, z)), Fraction(0))
        if best is None or val > best[0]:
            best = (val, z)
    return best


def enumerate_vertices(instance: LpInstance) -> OracleResult:
    """Brute force over every basis of ``[A I]``; exact.

    Unboundedness is detected on the normalized recession cone
    ``{d >= 0 : A d <= 0, sum(d) = 1}``: the LP is unbounded iff it is
    feasible and some vertex of that polytope has ``c.d > 0``.
    """
    m, n = instance.m, instance.n
    if m + n > ENUMERATION_LIMIT:
        raise OracleSizeError(f"m + n = {m + n} exceeds enumeration limit {ENUMERATION_LIMIT}")
    one, zero = Fraction(1), Fraction(0)
    rows = [list(instance.A[i]) + [one if k == i else zero for k in range(m)] for i in range(m)]
    obj = list(instance.c) + [zero] * m
    best = _best_vertex(rows, list(instance.b), obj)
    if best is None:
        return OracleResult(INFEASIBLE)
    cone_rows = rows + [[one] * n + [zero] * m]
    ray = _best_vertex(cone_rows, [zero] * m + [one], obj)
    if ray is not None and ray[0] > 0:
        return OracleResult(UNBOUNDED)
    return OracleResult(OPTIMAL, best[0], tuple(best[1][:n]))


def classify_no_solution(instance: LpInstance) -> str:
    """Why an LP has no optimum: Infeasible, Unbounded, or FeasibleBounded (it does have one)."""
    kind = simplex_solve(instance).kind
    return FEASIBLE_BOUNDED if kind == OPTIMAL else kind
