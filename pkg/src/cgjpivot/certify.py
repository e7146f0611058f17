"""Solution extraction and optimality certificates."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Sequence

from .lp_model import LpInstance, format_number
from .tableau import InvariantBreach, Tableau

__all__ = [
    "Solution",
    "CertificateReport",
    "extract_solution",
    "check_certificate",
    "objective_value",
]


@dataclass(frozen=True)
class Solution:
    z: tuple
    y: tuple
    x: tuple
    s: tuple
    t: tuple
    objective: Any

    @classmethod
    def from_z(cls, z: Sequence, instance: LpInstance) -> "Solution":
        m, n = instance.m, instance.n
        z = tuple(z)
        y, x = z[:m], z[m : m + n]
        s, t = z[m + n : 2 * m + n], z[2 * m + n :]
        return cls(z=z, y=y, x=x, s=s, t=t, objective=objective_value(instance, x))

    @classmethod
    def from_xy(cls, instance: LpInstance, x: Sequence, y: Sequence) -> "Solution":
        """Build a solution from primal and dual vectors; slacks are computed."""
        m, n = instance.m, instance.n
        x, y = tuple(x), tuple(y)
        s = tuple(instance.b[i] - sum(instance.A[i][j] * x[j] for j in range(n)) for i in range(m))
        t = tuple(sum(instance.A[i][j] * y[i] for i in range(m)) - instance.c[j] for j in range(n))
        return cls(z=y + x + s + t, y=y, x=x, s=s, t=t, objective=objective_value(instance, x))

    def to_json(self) -> dict:
        return {
            "x": [format_number(v) for v in self.x],
            "y": [format_number(v) for v in self.y],
            "objective": format_number(self.objective),
        }


@dataclass(frozen=True)
class CertificateReport:
    primal_feasible: bool
    dual_feasible: bool
    duality_gap: Any
    complementary: bool
    residuals: dict = field(default_factory=dict)
    tol: float = 0.0

    @property
    def passed(self) -> bool:
        gap_ok = self.duality_gap == 0 if self.tol == 0 else abs(self.duality_gap) <= self.tol
        return self.primal_feasible and self.dual_feasible and self.complementary and gap_ok

    verdict = passed

    def to_json(self) -> dict:
        return {
            "primal_feasible": self.primal_feasible,
            "dual_feasible": self.dual_feasible,
            "gap": format_number(self.duality_gap),
            "complementary": self.complementary,
            "residuals": {k: format_number(v) for k, v in self.residuals.items()},
        }


def objective_value(instance: LpInstance, x: Sequence):
    if len(x) != instance.n:
        raise ValueError(f"x has {len(x)} entries, instance has n={instance.n}")
    return sum((ci * xi for ci, xi in zip(instance.c, x)), Fraction(0) if _exact(x) else 0.0)


def _exact(values) -> bool:
    return all(isinstance(v, (int, Fraction)) for v in values)


def extract_solution(t: Tableau, instance: LpInstance) -> Solution:
    """Read ``z`` off a solution-state tableau: basic column of pair j gets ``q_j``."""
    p = t.p
    if p != instance.m + instance.n:
        raise ValueError("tableau and instance dimensions disagree")
    zero = t.mode.convert(0)
    z = [zero] * (2 * p)
    q = t.q
    for j in range(1, p + 1):
        try:
            k = t.basic_column(j)
        except InvariantBreach:
            raise
        z[k - 1] = q[j - 1]
    return Solution.from_z(z, instance)


def check_certificate(instance: LpInstance, sol: Solution, tol: float = 0.0) -> CertificateReport:
    """Primal/dual feasibility, duality gap and complementarity of ``sol``.

    With ``tol == 0`` every check is exact; otherwise residuals up to ``tol``
    are accepted.
    """
    m, n = instance.m, instance.n
    if len(sol.x) != n or len(sol.y) != m:
        raise ValueError(f"solution dimensions ({len(sol.y)}, {len(sol.x)}) != (m={m}, n={n})")
    x, y = list(sol.x), list(sol.y)
    exact = tol == 0

    def nonneg(v) -> bool:
        return v >= 0 if exact else v >= -tol

    primal_rows = [sum(a * xi for a, xi in zip(row, x)) - bi for row, bi in zip(instance.A, instance.b)]
    dual_rows = [
        instance.c[j] - sum(instance.A[i][j] * y[i] for i in range(m)) for j in range(n)
    ]
    primal_violation = max([0] + [v for v in primal_rows] + [-v for v in x])
    dual_violation = max([0] + [v for v in dual_rows] + [-v for v in y])
    primal_ok = all(nonneg(-v) for v in primal_rows) and all(nonneg(v) for v in x)
    dual_ok = all(nonneg(-v) for v in dual_rows) and all(nonneg(v) for v in y)

    by = sum(bi * yi for bi, yi in zip(instance.b, y))
    cx = sum(ci * xi for ci, xi in zip(instance.c, x))
    gap = by - cx

    # slack products y_i * (b - Ax)_i and x_j * (A^T y - c)_j
    comp_terms = [yi * -r for yi, r in zip(y, primal_rows)] + [xj * -d for xj, d in zip(x, dual_rows)]
    worst_comp = max([0] + [abs(v) for v in comp_terms])
    complementary = worst_comp == 0 if exact else worst_comp <= tol
    if len(sol.z) == 2 * (m + n):
        pairs = [sol.z[j] * sol.z[m + n + j] for j in range(m + n)]
        worst_pair = max([0] + [abs(v) for v in pairs])
        complementary = complementary and (worst_pair == 0 if exact else worst_pair <= tol)

    return CertificateReport(
        primal_feasible=primal_ok,
        dual_feasible=dual_ok,
        duality_gap=gap,
        complementary=complementary,
        residuals={
            "primal": primal_violation,
            "dual": dual_violation,
            "complementarity": worst_comp,
        },
        tol=tol,
    )
