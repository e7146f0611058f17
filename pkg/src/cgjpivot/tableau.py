"""Augmented matrix ``[M q]`` with complementary Gauss-Jordan pivoting.

Rows, columns and pairs are 1-based in every public method, matching the way
pivot positions are reported in traces. Row ``p + 1`` is the duality row and
column ``2p + 1`` holds ``q``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np

from .lp_model import format_number

__all__ = [
    "ArithmeticMode",
    "RATIONAL",
    "Tableau",
    "ZeroPivotError",
    "InvariantBreach",
]


class ZeroPivotError(ArithmeticError):
    """The requested pivot entry is zero (or within epsilon of zero)."""


class InvariantBreach(RuntimeError):
    """The pair-basis structure of the tableau has been lost."""


@dataclass(frozen=True)
class ArithmeticMode:
    kind: str = "rational"
    epsilon: float = 0.0

    def __post_init__(self):
        if self.kind not in ("rational", "float64"):
            raise ValueError(f"unknown arithmetic kind {self.kind!r}")
        if self.kind == "rational" and self.epsilon != 0:
            raise ValueError("rational mode requires epsilon = 0")
        if self.kind == "float64" and not self.epsilon > 0:
            raise ValueError("float64 mode requires a positive epsilon")

    @classmethod
    def float64(cls, epsilon: float = 1e-9) -> "ArithmeticMode":
        return cls("float64", epsilon)

    @property
    def exact(self) -> bool:
        return self.kind == "rational"

    def convert(self, value: Any):
        if self.exact:
            return Fraction(value)
        return float(value)

    def is_zero(self, x) -> bool:
        return x == 0 if self.exact else abs(x) <= self.epsilon

    def is_pos(self, x) -> bool:
        return x > self.epsilon if not self.exact else x > 0

    def is_neg(self, x) -> bool:
        return x < -self.epsilon if not self.exact else x < 0

    def equal(self, x, y) -> bool:
        return self.is_zero(x - y)


RATIONAL = ArithmeticMode()


class Tableau:
    """``(p+1) x (2p+1)`` augmented matrix with pair-basis bookkeeping.

    Operations mutate in place; use ``copy()`` for speculative work.
    """

    def __init__(self, entries, p: int, mode: ArithmeticMode = RATIONAL, last_row_negated: bool = False):
        dtype = object if mode.exact else np.float64
        arr = np.array(entries, dtype=dtype)
        if arr.shape != (p + 1, 2 * p + 1):
            raise ValueError(f"tableau for p={p} must be {(p + 1, 2 * p + 1)}, got {arr.shape}")
        if mode.exact:
            arr = np.vectorize(Fraction, otypes=[object])(arr)
        self.entries = arr
        self.p = p
        self.mode = mode
        self.last_row_negated = last_row_negated

    def copy(self) -> "Tableau":
        out = Tableau.__new__(Tableau)
        out.entries = self.entries.copy()
        out.p = self.p
        out.mode = self.mode
        out.last_row_negated = self.last_row_negated
        return out

    # -- accessors ---------------------------------------------------------

    def __getitem__(self, pos):
        r, k = pos
        return self.entries[r - 1, k - 1]

    @property
    def q(self) -> list:
        """Right-hand side column, rows 1..p+1."""
        return list(self.entries[:, -1])

    @property
    def q_last(self):
        return self.entries[self.p, -1]

    @property
    def last_row(self) -> list:
        """Row p+1 without its q entry."""
        return list(self.entries[self.p, :-1])

    def row(self, r: int) -> list:
        return list(self.entries[r - 1])

    def column(self, k: int) -> list:
        return list(self.entries[:, k - 1])

    @staticmethod
    def pair_of(column: int, p: int) -> int:
        return column if column <= p else column - p

    def partner(self, column: int) -> int:
        return column + self.p if column <= self.p else column - self.p

    # -- row operations ----------------------------------------------------

    def gj_pivot(self, r: int, k: int) -> None:
        """Gauss-Jordan pivot on entry ``(r, k)``; every row including p+1 is eliminated."""
        if not 1 <= r <= self.p:
            raise IndexError(f"pivot row {r} outside 1..{self.p}")
        if not 1 <= k <= 2 * self.p:
            raise IndexError(f"pivot column {k} outside 1..{2 * self.p}")
        T = self.entries
        i, j = r - 1, k - 1
        pivot = T[i, j]
        if self.mode.is_zero(pivot):
            raise ZeroPivotError(f"zero pivot at ({r}, {k})")
        T[i] = T[i] / pivot
        T[i, j] = self.mode.convert(1)
        col = T[:, j].copy()
        col[i] = 0
        for row in np.nonzero(col != 0)[0]:
            T[row] = T[row] - col[row] * T[i]
            T[row, j] = self.mode.convert(0)

    def add_row_multiple(self, r: int, alpha) -> None:
        """Row ``r`` += ``alpha`` x row ``p+1``."""
        if not 1 <= r <= self.p:
            raise IndexError(f"row {r} outside 1..{self.p}")
        alpha = self.mode.convert(alpha)
        if alpha != 0:
            self.entries[r - 1] = self.entries[r - 1] + alpha * self.entries[self.p]

    def negate_last_row(self) -> None:
        self.entries[self.p] = -self.entries[self.p]
        self.last_row_negated = not self.last_row_negated

    # -- pair-basis queries ------------------------------------------------

    def is_unit_column(self, k: int, r: int) -> bool:
        col = self.entries[:, k - 1]
        for i, v in enumerate(col):
            target = 1 if i == r - 1 else 0
            if not self.mode.equal(v, target):
                return False
        return True

    def basic_column(self, j: int) -> int:
        """Whichever of columns ``j`` and ``p+j`` is the unit vector ``e_j``."""
        left = self.is_unit_column(j, j)
        right = self.is_unit_column(self.p + j, j)
        if left == right:
            state = "both" if left else "neither"
            raise InvariantBreach(
                f"pair {j}: {state} of columns {j} and {self.p + j} equal e_{j}"
            )
        return j if left else self.p + j

    def nonbasic_column(self, j: int) -> int:
        return self.partner(self.basic_column(j))

    def basis(self) -> list[int]:
        return [self.basic_column(j) for j in range(1, self.p + 1)]

    def check_pair_basis(self) -> None:
        self.basis()

    # -- stopping predicates -----------------------------------------------

    def is_solution_state(self) -> bool:
        q = self.entries[:, -1]
        if not self.mode.is_zero(q[self.p]):
            return False
        return not any(self.mode.is_neg(v) for v in q[: self.p])

    def is_no_solution_state(self) -> bool:
        ql = self.q_last
        row = self.entries[self.p, :-1]
        if self.mode.is_pos(ql):
            return not any(self.mode.is_pos(v) for v in row)
        if self.mode.is_neg(ql):
            return not any(self.mode.is_neg(v) for v in row)
        return False

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "rows": [[format_number(v) for v in row] for row in self.entries],
            "negated": self.last_row_negated,
        }

    def as_float(self) -> np.ndarray:
        return self.entries.astype(np.float64)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tableau):
            return NotImplemented
        return (
            self.p == other.p
            and self.last_row_negated == other.last_row_negated
            and bool(np.all(self.entries == other.entries))
        )

    def __repr__(self) -> str:
        return f"Tableau(p={self.p}, mode={self.mode.kind}, negated={self.last_row_negated})"
