"""LP instances in symmetric form: max c.x  s.t.  A x <= b, x >= 0.

All numeric data is stored as exact ``Fraction`` values. Decimal notation in
the input is converted exactly (``"0.04"`` becomes ``1/25``).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Sequence

__all__ = [
    "LpInstance",
    "InstanceError",
    "SplitMix64",
    "to_fraction",
    "validate",
    "encode_equalities",
    "klee_minty",
    "random_instance",
    "load_instance",
    "dump_instance",
    "instance_to_dict",
    "format_number",
]

Matrix = tuple[tuple[Fraction, ...], ...]
Vector = tuple[Fraction, ...]

_KNOWN_FIELDS = {"name", "c", "A", "b"}


class InstanceError(ValueError):
    """Raised when candidate instance data violates one or more invariants.

    ``problems`` lists every violation found, not just the first.
    """

    def __init__(self, problems: Sequence[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


@dataclass(frozen=True)
class LpInstance:
    name: str
    A: Matrix
    b: Vector
    c: Vector

    @property
    def m(self) -> int:
        return len(self.A)

    @property
    def n(self) -> int:
        return len(self.c)

    def __repr__(self) -> str:
        return f"LpInstance(name={self.name!r}, m={self.m}, n={self.n})"


def to_fraction(value: Any) -> Fraction:
    """Convert an integer, decimal string, ``"p/q"`` string or float exactly.

    Floats are converted through their shortest ``repr`` so that ``0.83``
    becomes ``83/100`` rather than the nearest binary double.
    """
    if isinstance(value, bool):
        raise TypeError(f"boolean is not a number: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite entry: {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        text = value.strip()
        try:
            out = Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"unparseable entry: {value!r}") from exc
        return out
    raise TypeError(f"unsupported entry type {type(value).__name__}: {value!r}")


def format_number(value: Fraction | float) -> str | float:
    """Exact ``"p/q"`` (or integer) string for fractions; floats pass through."""
    if isinstance(value, Fraction):
        return str(value)
    return float(value)


def _convert_vector(raw: Any, label: str, problems: list[str]) -> list[Fraction] | None:
    if not isinstance(raw, (list, tuple)):
        problems.append(f"{label} must be a list, got {type(raw).__name__}")
        return None
    out = []
    for i, v in enumerate(raw):
        try:
            out.append(to_fraction(v))
        except (TypeError, ValueError) as exc:
            problems.append(f"{label}[{i}]: {exc}")
    return out if len(out) == len(raw) else None


def validate(raw: Any) -> LpInstance:
    """Turn candidate instance data into an ``LpInstance``.

    ``raw`` may be a mapping with keys ``name``, ``c``, ``A``, ``b`` or an
    existing ``LpInstance``. Raises ``InstanceError`` listing every problem.
    """
    if isinstance(raw, LpInstance):
        raw = {"name": raw.name, "c": list(raw.c), "A": [list(r) for r in raw.A], "b": list(raw.b)}
    if not isinstance(raw, dict):
        raise InstanceError([f"instance must be an object, got {type(raw).__name__}"])

    problems: list[str] = []
    unknown = sorted(set(raw) - _KNOWN_FIELDS)
    if unknown:
        problems.append(f"unknown fields: {', '.join(unknown)}")
    for key in ("c", "A", "b"):
        if key not in raw:
            problems.append(f"missing field {key!r}")
    name = raw.get("name", "")
    if not isinstance(name, str):
        problems.append("name must be a string")
        name = str(name)
    if problems and any(p.startswith("missing") for p in problems):
        raise InstanceError(problems)

    c = _convert_vector(raw["c"], "c", problems)
    b = _convert_vector(raw["b"], "b", problems)
    A_raw = raw["A"]
    A: list[list[Fraction]] | None = None
    if not isinstance(A_raw, (list, tuple)):
        problems.append("A must be a list of rows")
    else:
        rows = [_convert_vector(row, f"A[{i}]", problems) for i, row in enumerate(A_raw)]
        if all(r is not None for r in rows):
            A = rows  # type: ignore[assignment]

    if A is not None:
        if len(A) == 0:
            problems.append("empty matrix: A has no rows (m must be >= 1)")
        elif any(len(r) == 0 for r in A):
            problems.append("empty matrix: A has a row with no columns (n must be >= 1)")
        widths = {len(r) for r in A}
        if len(widths) > 1:
            problems.append(f"dimension mismatch: rows of A have differing lengths {sorted(widths)}")
        # lengths are checked on the raw lists so a bad entry does not hide a bad shape
        b_len = len(raw["b"]) if isinstance(raw["b"], (list, tuple)) else None
        c_len = len(raw["c"]) if isinstance(raw["c"], (list, tuple)) else None
        if b_len is not None and b_len != len(A):
            problems.append(f"dimension mismatch: A has {len(A)} rows but b has {b_len} entries")
        if c_len is not None and len(widths) == 1 and c_len != next(iter(widths)):
            problems.append(
                f"dimension mismatch: A has {next(iter(widths))} columns but c has {c_len} entries"
            )
    if c is not None and len(c) == 0:
        problems.append("empty matrix: c is empty (n must be >= 1)")
    if problems:
        raise InstanceError(problems)

    assert A is not None and b is not None and c is not None
    return LpInstance(
        name=name,
        A=tuple(tuple(r) for r in A),
        b=tuple(b),
        c=tuple(c),
    )


def encode_equalities(
    ineq_rows: Iterable[tuple[Sequence[Any], Any]],
    eq_rows: Iterable[tuple[Sequence[Any], Any]],
    c: Sequence[Any],
    name: str = "",
) -> LpInstance:
    """Build an instance from ``a.x <= beta`` rows and ``a.x == beta`` rows.

    Each equality becomes the adjacent pair ``a.x <= beta``, ``-a.x <= -beta``.
    Inequalities come first, in the given order, then the equality pairs.
    """
    A: list[list[Fraction]] = []
    b: list[Fraction] = []
    for row, rhs in ineq_rows:
        A.append([to_fraction(v) for v in row])
        b.append(to_fraction(rhs))
    for row, rhs in eq_rows:
        a = [to_fraction(v) for v in row]
        beta = to_fraction(rhs)
        A.append(a)
        b.append(beta)
        A.append([-v for v in a])
        b.append(-beta)
    return validate({"name": name, "c": list(c), "A": A, "b": b})


def klee_minty(size: int) -> LpInstance:
    """The ``size``-variable Klee-Minty cube.

    ``c_j = 10**(n-j)``, ``A`` unit lower triangular with ``A[i][j] = 2*10**(i-j)``
    below the diagonal, ``b_i = 100**(i-1)``.
    """
    if not isinstance(size, int) or size < 1:
        raise InstanceError([f"Klee-Minty size must be a positive integer, got {size!r}"])
    n = size
    c = [Fraction(10 ** (n - j)) for j in range(1, n + 1)]
    A = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            if j < i:
                row.append(Fraction(2 * 10 ** (i - j)))
            elif j == i:
                row.append(Fraction(1))
            else:
                row.append(Fraction(0))
        A.append(row)
    b = [Fraction(100 ** (i - 1)) for i in range(1, n + 1)]
    return validate({"name": f"klee-minty-{n}", "c": c, "A": A, "b": b})


class SplitMix64:
    """SplitMix64 (Steele, Lea, Flood 2014). The 64-bit seed is the full state.

    Chosen because it is trivially portable: any language with wrapping 64-bit
    arithmetic reproduces the same stream from the same seed.
    """

    _MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self._MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & self._MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self._MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self._MASK
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]`` by rejection (no modulo bias)."""
        span = hi - lo + 1
        if span <= 0:
            raise ValueError(f"empty range [{lo}, {hi}]")
        limit = (1 << 64) - ((1 << 64) % span)
        while True:
            v = self.next_u64()
            if v < limit:
                return lo + v % span

    def split(self) -> "SplitMix64":
        return SplitMix64(self.next_u64())


def random_instance(
    m: int,
    n: int,
    seed: int,
    entry_range: tuple[int, int] = (-9, 9),
    name: str | None = None,
) -> LpInstance:
    """Integer instance drawn uniformly from ``entry_range``; fully determined by ``seed``.

    Draw order: A row-major, then b, then c.
    """
    lo, hi = entry_range
    if hi < lo:
        raise InstanceError([f"empty entry range [{lo}, {hi}]"])
    if m < 1 or n < 1:
        raise InstanceError([f"m and n must be >= 1, got m={m}, n={n}"])
    rng = SplitMix64(seed)
    A = [[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)]
    b = [rng.randint(lo, hi) for _ in range(m)]
    c = [rng.randint(lo, hi) for _ in range(n)]
    return validate(
        {"name": name if name is not None else f"random-{m}x{n}-{seed}", "c": c, "A": A, "b": b}
    )


def instance_to_dict(instance: LpInstance) -> dict[str, Any]:
    return {
        "name": instance.name,
        "c": [format_number(v) for v in instance.c],
        "A": [[format_number(v) for v in row] for row in instance.A],
        "b": [format_number(v) for v in instance.b],
    }


def dump_instance(instance: LpInstance, path: str | Path | None = None) -> str:
    text = json.dumps(instance_to_dict(instance), indent=2)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text


def load_instance(path: str | Path) -> LpInstance:
    try:
        raw = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InstanceError([f"invalid JSON in {path}: {exc}"]) from exc
    return validate(raw)
