"""The sufficient convergence criterion for subsequences of solutions.

The criterion: if |F_n(u_1, ..., u_m)| <= g(u_k) for a continuous g with
g(0) = 0 and g(u) < |u| on a window (-alpha, alpha) around the origin,
then any solution term entering that window starts a subsequence (with
stride k) that converges to zero.  This module owns the bounding-function
machinery: threshold solving, sublinearity falsification, the
symmetrized bound, and the inequality chain that certifies the decrease
step by step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, List, Optional, Sequence, Tuple

from .dynamics import EquationSpec, Trajectory
from .errors import BoundValidationError, CriterionInapplicableError
from .reports import (CONVERGING_TO_ZERO, VIOLATED, ChainResult,
                      ConvergenceReport, Prediction, ThresholdWindow)

ScalarMap = Callable[[float], float]

_DEFAULT_SCAN = 10_000
_DEFAULT_TOL = 1e-12
_TANGENCY_TOL = 1e-10


@dataclass(frozen=True)
class ThresholdResult:
    """Smallest positive solution of g(u) = u, or +inf when g stays
    strictly below the identity."""

    alpha: float
    tangent: bool = False          # g touches the identity without crossing

    def __float__(self) -> float:
        return self.alpha


@dataclass(frozen=True)
class BoundingFunction:
    """Scalar envelope g controlling the equation through its dominant lag.

    ``validity`` is the window (-alpha, alpha) intersected with the
    domain projection onto the dominant-lag axis.  ``grid_checked`` marks
    that sublinearity was falsification-tested on a dense grid (not
    proved); ``informal`` marks envelopes that are not certified to
    dominate the map (user-supplied, or known-heuristic bounds).
    """

    g: ScalarMap
    alpha: float
    dominant_lag: int
    validity: ThresholdWindow
    tangent: bool = False
    grid_checked: bool = False
    informal: bool = False
    g_domain: Tuple[float, float] = (-math.inf, math.inf)
    fixed_points: Tuple[float, ...] = ()
    name: str = "bound"

    def __call__(self, u: float) -> float:
        return self.g(u)

    def with_flags(self, **kw) -> "BoundingFunction":
        return replace(self, **kw)


def symmetrize(bound: BoundingFunction) -> ScalarMap:
    """The even companion h(u) = max{g(u), g(-u)}.

    Where only one of +-u lies in g's domain, h uses the defined side
    (the window is the intersection with the domain projection, so the
    missing side never matters for the criterion).
    """
    g = bound.g
    lo, hi = bound.g_domain

    def h(u: float) -> float:
        vals = []
        if lo <= u <= hi:
            vals.append(g(u))
        if lo <= -u <= hi:
            vals.append(g(-u))
        if not vals:
            raise ValueError("u=%r outside the bound's domain" % u)
        return max(vals)

    return h


def solve_threshold(g: ScalarMap, search_hi: float,
                    tol: float = _DEFAULT_TOL,
                    scan_points: int = _DEFAULT_SCAN) -> ThresholdResult:
    """Smallest positive root of g(u) = u on (0, search_hi].

    A sign-bracketing scan locates the first crossing of g(u) - u, which
    bisection then refines to ``tol``.  If the scan finds no sign change,
    a secondary maximum search detects tangency (g touching the identity
    from below); otherwise the threshold is unbounded (+inf).

    Raises CriterionInapplicableError when g(u) >= u already at the
    smallest sampled points, i.e. sublinearity fails near the origin.
    """
    if search_hi <= 0:
        raise ValueError("search_hi must be positive")

    def f(u: float) -> float:
        return g(u) - u

    # Linear grid plus log-spaced points (30 decades below search_hi) so
    # roots many orders of magnitude below search_hi are not stepped over.
    linear = [search_hi * i / scan_points for i in range(1, scan_points + 1)]
    log_pts = [search_hi * 10.0 ** (-30.0 * i / 900) for i in range(1, 901)]
    grid = sorted(set(linear) | set(log_pts))
    fs = [f(u) for u in grid]

    # Sublinearity must hold near 0 for the criterion to mean anything.
    if all(fu >= 0 for fu in fs[:3]):
        raise CriterionInapplicableError(
            "g(u) >= u arbitrarily close to 0; no positive threshold")

    prev_u, prev_f = None, None
    for u, fu in zip(grid, fs):
        if fu >= 0 and prev_f is not None and prev_f < 0:
            if fu == 0.0:
                # Exact grid hit: look just past u to tell a transversal
                # crossing from a tangency.
                probe = f(u * (1.0 + 1e-6))
                return ThresholdResult(u, tangent=probe < 0)
            lo, hi = prev_u, u
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                if hi - lo <= tol:
                    break
                if f(mid) < 0:
                    lo = mid
                else:
                    hi = mid
            return ThresholdResult(0.5 * (lo + hi))
        prev_u, prev_f = u, fu

    # No crossing: look for a tangency where g(u)/u comes up to 1.  The
    # ratio (not g - u itself) separates a genuine touch point from the
    # trivial vanishing of g - u near the origin.
    def ratio(u: float) -> float:
        return f(u) / u

    i_best = max(range(len(grid)), key=lambda i: ratio(grid[i]))
    lo = grid[max(0, i_best - 1)]
    hi = grid[min(len(grid) - 1, i_best + 1)]
    for _ in range(200):
        if hi - lo <= tol:
            break
        m1 = lo + (hi - lo) / 3
        m2 = hi - (hi - lo) / 3
        if ratio(m1) < ratio(m2):
            lo = m1
        else:
            hi = m2
    u_t = 0.5 * (lo + hi)
    if ratio(u_t) >= -_TANGENCY_TOL:
        return ThresholdResult(u_t, tangent=True)
    return ThresholdResult(math.inf)


def verify_sublinearity(g: ScalarMap, window: ThresholdWindow,
                        grid_points: int = _DEFAULT_SCAN
                        ) -> Tuple[bool, Optional[float]]:
    """Falsification check of g(u) < |u| on a uniform grid over the window.

    Returns (True, None) when no counterexample is found, else
    (False, u) with the first violating grid point.  A passing verdict is
    evidence, not proof.
    """
    if grid_points < 2:
        raise ValueError("need at least 2 grid points")
    lo, hi = window.lo, window.hi
    # Unbounded windows are spot-checked on a finite surrogate span.
    if math.isinf(hi):
        hi = (lo if math.isfinite(lo) else 0.0) + 100.0
    if math.isinf(lo):
        lo = hi - 100.0
    for i in range(1, grid_points):
        u = lo + (hi - lo) * i / grid_points
        if u == 0.0:
            continue
        gu = g(u)
        if not math.isfinite(gu):
            raise BoundValidationError("g non-finite at u=%r" % u)
        if gu >= abs(u):
            return False, u
    return True, None


def validate_bound(bound: BoundingFunction,
                   grid_points: int = _DEFAULT_SCAN) -> BoundingFunction:
    """Check g(0)=0 (where defined) and grid-verify sublinearity on the
    validity window; returns the bound marked grid_checked."""
    lo, hi = bound.g_domain
    if lo <= 0 <= hi and bound.g(0.0) != 0.0:
        raise BoundValidationError("g(0) must be 0, got %r" % bound.g(0.0))
    ok, u_bad = verify_sublinearity(bound.g, bound.validity, grid_points)
    if not ok:
        raise BoundValidationError(
            "sublinearity fails at u=%r inside the window" % u_bad)
    return bound.with_flags(grid_checked=True)


def check_inequality_chain(traj, n0: int, k: int,
                           h: ScalarMap) -> ChainResult:
    """Verify |x_{n0+(j+1)k}| <= h(x_{n0+jk}) < |x_{n0+jk}| link by link.

    An exact zero term means the subsequence has reached its limit; the
    chain terminates there and counts as holding.
    """
    terms = traj.terms if isinstance(traj, Trajectory) else traj
    j = 0
    links = 0
    while n0 + (j + 1) * k < len(terms):
        x0 = terms[n0 + j * k]
        x1 = terms[n0 + (j + 1) * k]
        if x0 == 0.0:
            return ChainResult(True, links_checked=links,
                               terminated_at_zero=j)
        hx = h(x0)
        if not (abs(x1) <= hx < abs(x0)):
            return ChainResult(False, first_violation=j, links_checked=links)
        links += 1
        j += 1
    return ChainResult(True, links_checked=links)


def _entry_index(terms: Sequence[float], window: ThresholdWindow,
                 residue: int, k: int, min_index: int = 0
                 ) -> Optional[int]:
    for n in range(residue, len(terms), k):
        if n < min_index:
            continue
        if window.contains(terms[n]) or terms[n] == 0.0:
            return n
    return None


def chain_start_floor(order: int, k: int) -> int:
    """Smallest admissible entry index: every subsequent subsequence term
    must be generated by the map, so n0 + k >= order."""
    return max(0, order - k)


def predict_subsequence_convergence(eq: EquationSpec,
                                    bound: BoundingFunction,
                                    traj: Trajectory) -> ConvergenceReport:
    """Emit one zero-convergence prediction per residue class whose
    trajectory enters the threshold window.

    Each prediction carries the verified inequality chain; a failing
    chain marks the prediction VIOLATED, which indicates a soundness
    problem (an invalid bound or a bug), never a benign outcome.
    """
    if bound.dominant_lag != eq.dominant_lag:
        raise ValueError("bound stride %d != equation dominant lag %d"
                         % (bound.dominant_lag, eq.dominant_lag))
    if not bound.grid_checked:
        bound = validate_bound(bound)
    k = bound.dominant_lag
    h = symmetrize(bound)
    window = bound.validity
    predictions: List[Prediction] = []
    tails = {}
    first_crossing: Optional[int] = None
    floor = chain_start_floor(eq.order, k)
    for residue in range(k):
        n0 = _entry_index(traj.terms, window, residue, k, floor)
        if n0 is None:
            continue
        if first_crossing is None or n0 < first_crossing:
            first_crossing = n0
        chain = check_inequality_chain(traj, n0, k, h)
        verdict = CONVERGING_TO_ZERO if chain.holds else VIOLATED
        predictions.append(Prediction(residue, n0, k, verdict, chain,
                                      limit=0.0))
        sub = list(traj.terms[n0::k])
        tails[residue] = sub[-min(len(sub), 8):]
    full_from = predict_full_convergence(eq, bound, traj)
    return ConvergenceReport(k, window, first_crossing,
                             tuple(predictions),
                             full_convergence_from=full_from,
                             subsequence_tails=tails)


def predict_full_convergence(eq: EquationSpec, bound: BoundingFunction,
                             traj: Trajectory) -> Optional[int]:
    """First index n0 such that k consecutive terms lie in the window,
    which forces the whole tail of the solution to converge to zero.
    For k = 1 this is simply the first crossing."""
    k = bound.dominant_lag
    window = bound.validity
    terms = traj.terms

    def inside(x: float) -> bool:
        return window.contains(x) or x == 0.0

    for n0 in range(chain_start_floor(eq.order, k), len(terms) - k + 1):
        if all(inside(terms[n0 + i]) for i in range(k)):
            return n0
    return None
