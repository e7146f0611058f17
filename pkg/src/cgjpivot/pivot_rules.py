"""MinorP / MajorP pivot selection, including the reversal provisos.

Terminology used below:

* MinorP runs while ``q[p+1] == 0``. It picks a row with negative ``q`` and
  makes the non-basic member of that row's pair basic.
* MajorP runs while ``q[p+1] > 0`` (after sign normalization). It picks the
  column with the largest positive entry in row ``p+1``.
* A *reversal* is a pivot that evicts a column chosen by an earlier MajorP.
  A pivot that evicts a column chosen by an earlier MinorP is a *setup
  eviction*: MajorP prefers to avoid it but does not treat it as a reversal.
* When every candidate reverses, a one-step lookahead looks for a candidate
  after which the run stops.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .tableau import Tableau, ZeroPivotError

__all__ = [
    "MINOR",
    "MAJOR",
    "PivotSelection",
    "SelectionHistory",
    "SelectionError",
    "NoCandidateError",
    "LookaheadFailed",
    "minor_candidates",
    "major_candidates",
    "minor_alpha",
    "major_alpha",
    "apply_selection",
    "select_minorp",
    "select_majorp",
    "lookahead_stop",
]

MINOR = "MinorP"
MAJOR = "MajorP"

# proviso annotations
AVOIDED_REVERSAL = "avoided-reversal"
AVOIDED_SETUP = "avoided-setup-eviction"
SETUP_TIE = "setup-tiebreak"
LOOKAHEAD_STOP = "lookahead-stop"


class SelectionError(RuntimeError):
    """Base for selection failures that end a run as an anomaly."""


class NoCandidateError(SelectionError):
    pass


class LookaheadFailed(SelectionError):
    """Every candidate reverses a MajorP choice and none of them stops the run."""


@dataclass(frozen=True)
class PivotSelection:
    phase: str
    pair: int
    column: int
    alpha: Optional[Fraction | float] = None
    proviso: Optional[str] = None
    evicts: Optional[int] = None


@dataclass
class SelectionHistory:
    """Columns chosen by past pivots that are still basic, split by phase."""

    major: list[int] = field(default_factory=list)
    minor: list[int] = field(default_factory=list)

    def copy(self) -> "SelectionHistory":
        return SelectionHistory(list(self.major), list(self.minor))

    def record(self, sel: PivotSelection) -> None:
        if sel.evicts is not None:
            for seq in (self.major, self.minor):
                if sel.evicts in seq:
                    seq.remove(sel.evicts)
        (self.major if sel.phase == MAJOR else self.minor).append(sel.column)


# -- adjustment ----------------------------------------------------------


def _smallest_int_above(bound) -> int:
    """Smallest integer strictly greater than ``bound``."""
    return math.floor(bound) + 1


def minor_alpha(t: Tableau, r: int, k: int, policy: str):
    """Multiple of row p+1 to add to row ``r`` before a MinorP pivot at ``(r, k)``.

    Returns ``None`` when no adjustment is made. ``direct`` adjusts only a zero
    pivot entry; ``positivize`` also fixes a negative one.
    """
    mode = t.mode
    e = t[r, k]
    lk = t[t.p + 1, k]
    if mode.is_pos(e) or (policy == "direct" and not mode.is_zero(e)):
        return None
    if mode.is_zero(e):
        e = mode.convert(0)
    # need e + alpha*lk > 0; lk != 0 is guaranteed by candidate filtering
    if mode.is_pos(lk):
        alpha = _smallest_int_above(-e / lk)
    else:
        alpha = math.ceil(-e / lk) - 1
    return mode.convert(alpha)


def major_alpha(t: Tableau, r: int, k: int, policy: str):
    """Multiple of row p+1 to add to row ``r`` before a MajorP pivot at ``(r, k)``.

    With ``q[p+1] > 0`` and ``t[p+1, k] > 0`` the smallest integer making both
    ``q[r]`` and the pivot entry strictly positive always exists.
    """
    mode = t.mode
    e = t[r, k]
    qr = t[r, 2 * t.p + 1]
    if policy == "direct":
        if not mode.is_zero(e):
            return None
    elif mode.is_pos(e) and mode.is_pos(qr):
        return None
    lk = t[t.p + 1, k]
    ql = t.q_last
    if mode.is_zero(e):
        e = mode.convert(0)
    if mode.is_zero(qr):
        qr = mode.convert(0)
    alpha = _smallest_int_above(max(-qr / ql, -e / lk))
    return mode.convert(alpha)


def apply_selection(t: Tableau, sel: PivotSelection) -> None:
    if sel.alpha is not None:
        t.add_row_multiple(sel.pair, sel.alpha)
    t.gj_pivot(sel.pair, sel.column)


# -- candidate sets ------------------------------------------------------


@dataclass(frozen=True)
class _Candidate:
    pair: int
    column: int
    evicts: int
    key: tuple


def _ordered(cands: list[_Candidate], mode) -> list[_Candidate]:
    """Sort by ``key = (value, index)``, treating values within epsilon as tied."""
    cands = sorted(cands, key=lambda c: c.key)
    out: list[_Candidate] = []
    group: list[_Candidate] = []
    for c in cands:
        if group and not mode.equal(c.key[0], group[0].key[0]):
            out.extend(sorted(group, key=lambda g: g.key[1]))
            group = []
        group.append(c)
    out.extend(sorted(group, key=lambda g: g.key[1]))
    return out


def minor_candidates(t: Tableau) -> list[_Candidate]:
    """Rows with ``q_j < 0`` whose non-basic column has a nonzero entry in row p+1.

    Ordered by ``|q_j|`` then row index.
    """
    mode = t.mode
    q = t.q
    out = []
    for j in range(1, t.p + 1):
        if not mode.is_neg(q[j - 1]):
            continue
        basic = t.basic_column(j)
        k = t.partner(basic)
        if mode.is_zero(t[t.p + 1, k]):
            continue
        out.append(_Candidate(j, k, basic, (abs(q[j - 1]), j)))
    return _ordered(out, mode)


def major_candidates(t: Tableau) -> list[_Candidate]:
    """Columns with a positive entry in row p+1, largest first, then by index."""
    mode = t.mode
    out = []
    for k, v in enumerate(t.last_row, start=1):
        if mode.is_pos(v):
            pair = Tableau.pair_of(k, t.p)
            out.append(_Candidate(pair, k, t.basic_column(pair), (-v, k)))
    return _ordered(out, mode)


def _make(t: Tableau, cand: _Candidate, phase: str, policy: str, proviso=None) -> PivotSelection:
    alpha_fn = minor_alpha if phase == MINOR else major_alpha
    return PivotSelection(
        phase=phase,
        pair=cand.pair,
        column=cand.column,
        alpha=alpha_fn(t, cand.pair, cand.column, policy),
        proviso=proviso,
        evicts=cand.evicts,
    )


# -- MinorP --------------------------------------------------------------


def _setup_score(t: Tableau, sel: PivotSelection):
    """Largest positive row-(p+1) entry the following MajorP would see."""
    trial = t.copy()
    try:
        apply_selection(trial, sel)
    except ZeroPivotError:
        return None
    if trial.mode.is_neg(trial.q_last):
        trial.negate_last_row()
    positives = [v for v in trial.last_row if trial.mode.is_pos(v)]
    return max(positives) if positives else 0


def select_minorp(t: Tableau, hist: SelectionHistory, policy: str = "direct") -> PivotSelection:
    """Pick the MinorP pivot.

    Candidates are taken in ``|q|``-then-index order, skipping those that
    would reverse a MajorP choice. Candidates tied on the smallest ``|q|`` are
    ranked by the largest positive row-(p+1) entry each leaves for the
    following MajorP, then by index.
    """
    cands = minor_candidates(t)
    if not cands:
        raise NoCandidateError("MinorP: no row with q_j < 0 has a usable non-basic column")
    free = [c for c in cands if c.evicts not in hist.major]
    if free:
        best = [c for c in free if t.mode.equal(c.key[0], free[0].key[0])]
        proviso = AVOIDED_REVERSAL if free[0] is not cands[0] else None
        if len(best) == 1:
            return _make(t, best[0], MINOR, policy, proviso)
        scored = []
        for c in best:
            sel = _make(t, c, MINOR, policy, proviso)
            score = _setup_score(t, sel)
            if score is not None:
                scored.append((score, sel))
        if scored:
            top = max(score for score, _ in scored)
            sel = next(sel for score, sel in scored if t.mode.equal(score, top))
            if sel.pair != best[0].pair:
                sel = PivotSelection(sel.phase, sel.pair, sel.column, sel.alpha, SETUP_TIE, sel.evicts)
            return sel
        return _make(t, best[0], MINOR, policy, proviso)
    sels = [_make(t, c, MINOR, policy) for c in cands]
    chosen = lookahead_stop(t, sels, MINOR, hist, policy)
    if chosen is None:
        raise LookaheadFailed(
            "MinorP: every candidate reverses a MajorP choice and none leads to a stop "
            f"(candidates: {[s.column for s in sels]})"
        )
    return PivotSelection(chosen.phase, chosen.pair, chosen.column, chosen.alpha, LOOKAHEAD_STOP, chosen.evicts)


# -- MajorP --------------------------------------------------------------


def select_majorp(t: Tableau, hist: SelectionHistory, policy: str = "direct") -> PivotSelection:
    """Pick the MajorP pivot; requires ``q[p+1] > 0``.

    Preference tiers, each in value-then-index order: candidates evicting no
    chosen column, then those evicting only MinorP choices, then (reversals)
    the first candidate whose pivot reaches a solution.
    """
    if not t.mode.is_pos(t.q_last):
        raise ValueError("select_majorp requires q[p+1] > 0; normalize the sign first")
    cands = major_candidates(t)
    if not cands:
        raise NoCandidateError("MajorP: row p+1 has no positive entry")
    fresh = [c for c in cands if c.evicts not in hist.major and c.evicts not in hist.minor]
    if fresh:
        proviso = None if fresh[0] is cands[0] else (
            AVOIDED_REVERSAL if cands[0].evicts in hist.major else AVOIDED_SETUP
        )
        return _make(t, fresh[0], MAJOR, policy, proviso)
    setup = [c for c in cands if c.evicts not in hist.major]
    if setup:
        proviso = None if setup[0] is cands[0] else AVOIDED_REVERSAL
        return _make(t, setup[0], MAJOR, policy, proviso)
    sels = [_make(t, c, MAJOR, policy) for c in cands]
    chosen = lookahead_stop(t, sels, MAJOR, hist, policy)
    if chosen is None:
        raise LookaheadFailed(
            "MajorP: every candidate reverses a MajorP choice and none reaches a solution "
            f"(candidates: {[s.column for s in sels]})"
        )
    return PivotSelection(chosen.phase, chosen.pair, chosen.column, chosen.alpha, LOOKAHEAD_STOP, chosen.evicts)


# -- lookahead -----------------------------------------------------------


def _stops(t: Tableau) -> bool:
    return t.is_solution_state() or t.is_no_solution_state()


def lookahead_stop(
    t: Tableau,
    candidates: list[PivotSelection],
    phase: str,
    hist: SelectionHistory,
    policy: str = "direct",
) -> Optional[PivotSelection]:
    """First candidate (in the given order) after which the run stops, else ``None``.

    For MinorP the simulation continues through the following MajorP
    selection and pivot. A zero pivot anywhere in the simulation disqualifies
    the candidate.
    """
    for sel in candidates:
        trial = t.copy()
        try:
            apply_selection(trial, sel)
        except ZeroPivotError:
            continue
        if _stops(trial):
            return sel
        if phase != MINOR:
            continue
        if trial.mode.is_zero(trial.q_last):
            continue
        if trial.mode.is_neg(trial.q_last):
            trial.negate_last_row()
        h = hist.copy()
        h.record(sel)
        try:
            nxt = select_majorp(trial, h, policy)
            apply_selection(trial, nxt)
        except (SelectionError, ZeroPivotError):
            continue
        if _stops(trial):
            return sel
    return None
