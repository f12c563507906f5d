"""Empirical verification of predicted convergence behavior.

These functions inspect computed trajectories: where the threshold
window is first entered, whether a predicted subsequence actually
decreases monotonically, and which candidate value (zero, or a fixed
point of the bounding function) the tail settles on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

from .criteria import BoundingFunction, check_inequality_chain, symmetrize
from .dynamics import EquationSpec, Trajectory
from .reports import (CONVERGING_TO_FIXED_POINT, CONVERGING_TO_ZERO,
                      INCONCLUSIVE, VIOLATED, ConvergenceReport,
                      LimitClassification, Prediction, ThresholdWindow)

VERIFIED = "verified"
VIOLATION = "violation"

DEFAULT_ZERO_TOL = 1e-10
DEFAULT_LIMIT_TOL = 1e-3


def detect_crossing(traj, window: ThresholdWindow,
                    from_index: int = 0) -> Optional[int]:
    """Smallest n >= from_index with the term strictly inside the window."""
    terms = traj.terms if isinstance(traj, Trajectory) else traj
    if from_index < 0:
        raise ValueError("from_index must be >= 0")
    for n in range(from_index, len(terms)):
        if window.contains(terms[n]):
            return n
    return None


@dataclass(frozen=True)
class MonotoneResult:
    status: str                     # verified | violation | inconclusive
    violation_index: Optional[int] = None
    final_value: Optional[float] = None


def verify_monotone_to_zero(subseq: Sequence[float],
                            tol: float = DEFAULT_ZERO_TOL) -> MonotoneResult:
    """Check strict decrease of |terms| down to (numerical) zero.

    An exact zero means the limit was reached.  Monotone sequences whose
    final term is still >= tol are inconclusive, not failures.
    """
    if not subseq:
        raise ValueError("subsequence must be non-empty")
    prev = abs(subseq[0])
    if prev == 0.0:
        return MonotoneResult(VERIFIED, final_value=0.0)
    for j in range(1, len(subseq)):
        cur = abs(subseq[j])
        if cur == 0.0:
            return MonotoneResult(VERIFIED, final_value=0.0)
        if cur >= prev:
            return MonotoneResult(VIOLATION, violation_index=j,
                                  final_value=subseq[-1])
        prev = cur
    if prev < tol:
        return MonotoneResult(VERIFIED, final_value=subseq[-1])
    return MonotoneResult(INCONCLUSIVE, final_value=subseq[-1])


@dataclass(frozen=True)
class Classification:
    kind: str                       # zero | fixed-point | inconclusive
    value: Optional[float]
    tail_mean: float
    tail_width: float


def classify_limit(subseq: Sequence[float], candidates: Sequence[float],
                   tol: float = DEFAULT_LIMIT_TOL) -> Classification:
    """Match the tail of a subsequence against candidate limits.

    The statistic is the mean of the last max(4, len/4) entries; the
    nearest candidate within tol wins, otherwise the verdict is
    inconclusive.  Tail width (max - min) measures how settled the tail
    is.
    """
    if not subseq:
        raise ValueError("subsequence must be non-empty")
    n_tail = min(len(subseq), max(4, len(subseq) // 4))
    tail = subseq[-n_tail:]
    mean = math.fsum(tail) / len(tail)
    width = max(tail) - min(tail)
    best = None
    for c in candidates:
        if best is None or abs(mean - c) < abs(mean - best):
            best = c
    if best is not None and abs(mean - best) <= tol and width <= 2 * tol:
        kind = "zero" if best == 0.0 else "fixed-point"
        return Classification(kind, best, mean, width)
    return Classification("inconclusive", None, mean, width)


def build_report(eq: EquationSpec, bound: BoundingFunction,
                 traj: Trajectory,
                 zero_tol: float = DEFAULT_ZERO_TOL,
                 limit_tol: float = DEFAULT_LIMIT_TOL) -> ConvergenceReport:
    """Full per-residue-class analysis of one trajectory.

    For each residue class mod k: find the window entry, verify the
    inequality chain and monotone decrease from there, and classify the
    tail limit.  Classes that never enter the window are still
    classified (they may settle on a positive fixed point of the bound).
    A VIOLATED verdict means the criterion's guarantee failed, i.e. the
    bound is invalid or there is a bug.
    """
    from .criteria import (chain_start_floor, predict_full_convergence,
                           validate_bound)

    if not bound.grid_checked:
        bound = validate_bound(bound)
    k = bound.dominant_lag
    window = bound.validity
    h = symmetrize(bound)
    candidates = (0.0,) + tuple(bound.fixed_points)

    predictions: List[Prediction] = []
    limits: List[LimitClassification] = []
    tails = {}
    first_crossing: Optional[int] = None

    floor = chain_start_floor(eq.order, k)
    for residue in range(k):
        entry = None
        for n in range(residue, len(traj.terms), k):
            if n < floor:
                continue
            if window.contains(traj.terms[n]) or traj.terms[n] == 0.0:
                entry = n
                break
        if entry is not None:
            if first_crossing is None or entry < first_crossing:
                first_crossing = entry
            chain = check_inequality_chain(traj, entry, k, h)
            sub = list(traj.terms[entry::k])
            mono = verify_monotone_to_zero(sub, zero_tol)
            if not chain.holds or mono.status == VIOLATION:
                verdict = VIOLATED
            elif mono.status == VERIFIED:
                verdict = CONVERGING_TO_ZERO
            else:
                verdict = CONVERGING_TO_ZERO  # criterion-backed; tail slow
            note = "monotone:%s" % mono.status
            predictions.append(Prediction(residue, entry, k, verdict,
                                          chain, limit=0.0, note=note))
            tails[residue] = sub[-min(len(sub), 8):]
            cls = classify_limit(sub, candidates, limit_tol)
        else:
            sub = list(traj.terms[residue::k])
            cls = classify_limit(sub, candidates, limit_tol)
            if cls.kind == "fixed-point":
                predictions.append(Prediction(
                    residue, residue, k, CONVERGING_TO_FIXED_POINT, None,
                    limit=cls.value,
                    note="empirical limit; not asserted by the criterion"))
            tails[residue] = sub[-min(len(sub), 8):]
        limits.append(LimitClassification(residue, cls.kind, cls.value,
                                          cls.tail_mean, cls.tail_width))

    full_from = predict_full_convergence(eq, bound, traj)
    return ConvergenceReport(k, window, first_crossing,
                             tuple(predictions), tuple(limits),
                             full_convergence_from=full_from,
                             subsequence_tails=tails)
