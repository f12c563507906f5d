"""Planar systems, folding to scalar equations, and envelope criteria.

A planar system x_{n+1} = f_n(x_n, y_n), y_{n+1} = g_n(x_n, y_n) folds to
a second-order scalar equation once f_n is solvable for its second
argument (y_n = sigma_n(x_n, x_{n+1})).  Envelope hypotheses let the
convergence criterion apply directly to the system without folding:

* alternating case: f_n(u1, u2) <= fbar(u2), g_n(u1, u2) <= gbar(u1),
  fbar non-decreasing, and fbar(gbar(u)) < u near 0 -- terms of {x_n}
  with the parity of the crossing index converge to zero;
* tail case: f_n(u1, u2) <= fbar(u1) and fbar(u) < u near 0 -- the whole
  x-tail converges monotonically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

from .criteria import (ScalarMap, check_inequality_chain, solve_threshold)
from .dynamics import EquationSpec, iterate
from .errors import DomainError, FoldError
from .reports import (CONVERGING_TO_ZERO, VIOLATED, ConvergenceReport,
                      Prediction, ThresholdWindow)

SystemMap = Callable[[int, float, float], float]

MULTIPLICATIVE = "multiplicative"
ADDITIVE = "additive"
CUSTOM = "custom"


@dataclass(frozen=True)
class SigmaForm:
    """Solvability form for f_n(u, v) = w with respect to v.

    Separable forms f_n(u,v) = rho_n(u) * phi(v) (multiplicative) or
    rho_n(u) + phi(v) (additive) carry rho and the bijection phi with its
    inverse; anything else supplies sigma directly.
    """

    kind: str
    rho: Optional[Callable[[int, float], float]] = None
    phi: Optional[Callable[[float], float]] = None
    phi_inv: Optional[Callable[[float], float]] = None
    sigma: Optional[Callable[[int, float, float], float]] = None

    @staticmethod
    def multiplicative(rho, phi=None, phi_inv=None) -> "SigmaForm":
        return SigmaForm(MULTIPLICATIVE, rho,
                         phi or (lambda v: v), phi_inv or (lambda w: w))

    @staticmethod
    def additive(rho, phi=None, phi_inv=None) -> "SigmaForm":
        return SigmaForm(ADDITIVE, rho,
                         phi or (lambda v: v), phi_inv or (lambda w: w))

    @staticmethod
    def custom(sigma) -> "SigmaForm":
        return SigmaForm(CUSTOM, sigma=sigma)

    def __call__(self, n: int, u: float, w: float) -> float:
        if self.kind == CUSTOM:
            return self.sigma(n, u, w)
        r = self.rho(n, u)
        if self.kind == MULTIPLICATIVE:
            if r <= 0:
                raise FoldError("rho_%d(%r) = %r is not positive" % (n, u, r))
            return self.phi_inv(w / r)
        return self.phi_inv(w - r)


@dataclass(frozen=True)
class PlanarSystem:
    """A non-autonomous planar map pair on (a subset of) the quadrant."""

    f: SystemMap
    g: SystemMap
    sigma: Optional[SigmaForm] = None
    envelope_f: Optional[ScalarMap] = None
    envelope_g: Optional[ScalarMap] = None
    domain_x: Tuple[float, float] = (0.0, math.inf)
    domain_y: Tuple[float, float] = (0.0, math.inf)
    sample_steps: Tuple[int, ...] = tuple(range(8))
    name: str = "system"

    def origin_residual(self) -> float:
        """Max |f_n(0,0)|, |g_n(0,0)| over the sampled steps; must be 0
        for the convergence machinery to apply."""
        return max(max(abs(self.f(n, 0.0, 0.0)), abs(self.g(n, 0.0, 0.0)))
                   for n in self.sample_steps)

    def in_domain(self, x: float, y: float) -> bool:
        return (self.domain_x[0] <= x <= self.domain_x[1]
                and self.domain_y[0] <= y <= self.domain_y[1])


@dataclass(frozen=True)
class Orbit:
    """A forward orbit {(x_n, y_n)} of a planar system."""

    initial: Tuple[float, float]
    points: Tuple[Tuple[float, float], ...]
    diagnostic: Optional[str] = None

    def __len__(self) -> int:
        return len(self.points)

    @property
    def xs(self) -> List[float]:
        return [p[0] for p in self.points]

    @property
    def ys(self) -> List[float]:
        return [p[1] for p in self.points]

    def to_csv(self) -> str:
        lines = ["n,x,y"]
        lines += ["%d,%r,%r" % (n, x, y)
                  for n, (x, y) in enumerate(self.points)]
        return "\n".join(lines) + "\n"


def solve_sigma(sys: PlanarSystem, n: int, u: float, w: float,
                verify_tol: float = 1e-9) -> float:
    """Recover v with f_n(u, v) = w via the system's solvability form.

    The result is verified by substitution to ``verify_tol`` relative.
    """
    if sys.sigma is None:
        raise FoldError("system %r has no solvability form" % sys.name)
    v = sys.sigma(n, u, w)
    back = sys.f(n, u, v)
    if abs(back - w) > verify_tol * max(abs(w), abs(back), 1.0):
        raise FoldError(
            "sigma verification failed at n=%d: f(%r, %r) = %r != %r"
            % (n, u, v, back, w))
    return v


def iterate_system(sys: PlanarSystem, initial: Tuple[float, float],
                   steps: int) -> Orbit:
    """Forward orbit of ``steps`` applications of the system map.

    Non-finite values truncate the orbit with a diagnostic; a domain exit
    raises DomainError.
    """
    x0, y0 = float(initial[0]), float(initial[1])
    if not sys.in_domain(x0, y0):
        raise DomainError("initial point %r outside domain" % ((x0, y0),),
                          index=0)
    points: List[Tuple[float, float]] = [(x0, y0)]
    diagnostic = None
    for n in range(steps):
        x, y = points[-1]
        xn, yn = sys.f(n, x, y), sys.g(n, x, y)
        if not (math.isfinite(xn) and math.isfinite(yn)):
            diagnostic = "non-finite state (%r, %r) at step %d" % (xn, yn,
                                                                  n + 1)
            break
        if not sys.in_domain(xn, yn):
            raise DomainError("state %r outside domain at step %d"
                              % ((xn, yn), n + 1), index=n + 1)
        points.append((xn, yn))
    return Orbit((x0, y0), tuple(points), diagnostic)


def fold_initial(sys: PlanarSystem, x0: float, y0: float
                 ) -> Tuple[float, float]:
    """Initial pair (x_0, x_1) for the folded equation: x_1 = f_0(x_0, y_0)."""
    return float(x0), sys.f(0, float(x0), float(y0))


def fold_planar(sys: PlanarSystem) -> EquationSpec:
    """Fold to the order-2 scalar equation
    x_n = f_{n-1}(x_{n-1}, g_{n-2}(x_{n-2}, sigma_{n-2}(x_{n-2}, x_{n-1}))).

    History convention: u_1 = x_{n-1}, u_2 = x_{n-2}; sigma is applied at
    (x_{n-2}, x_{n-1}), recovering y_{n-2}.
    """
    if sys.sigma is None:
        raise FoldError("system %r has no solvability form" % sys.name)
    f, g, sigma = sys.f, sys.g, sys.sigma

    def evaluator(n: int, u: Sequence[float]) -> float:
        y = sigma(n - 2, u[1], u[0])
        return f(n - 1, u[0], g(n - 2, u[1], y))

    lo, hi = sys.domain_x
    return EquationSpec(order=2, dominant_lag=2, evaluator=evaluator,
                        domain_low=(lo, lo), domain_high=(hi, hi),
                        name=sys.name + "-folded",
                        origin_fixed=sys.origin_residual() == 0.0)


@dataclass(frozen=True)
class FoldCheck:
    """Comparison of a direct orbit against the folded scalar equation."""

    passed: bool
    max_dev_x: float
    max_dev_y: float
    first_divergent: Optional[int]
    steps: int


def _dev(a: float, b: float) -> float:
    return abs(a - b) / max(abs(a), abs(b), 1.0)


def check_fold_consistency(sys: PlanarSystem, initial: Tuple[float, float],
                           steps: int, tol: float = 1e-9) -> FoldCheck:
    """Iterate the system and its fold side by side.

    Checks x-agreement and, when a solvability form exists, y-recovery
    via y_n = sigma_n(x_n, x_{n+1}).
    """
    orbit = iterate_system(sys, initial, steps)
    eq = fold_planar(sys)
    traj = iterate(eq, fold_initial(sys, *initial), max(0, len(orbit) - 2))
    n_cmp = min(len(orbit), len(traj))
    max_x = 0.0
    first_div = None
    for n in range(n_cmp):
        d = _dev(orbit.points[n][0], traj.terms[n])
        if d > tol and first_div is None:
            first_div = n
        max_x = max(max_x, d)
    max_y = 0.0
    for n in range(n_cmp - 1):
        y_rec = sys.sigma(n, traj.terms[n], traj.terms[n + 1])
        d = _dev(orbit.points[n][1], y_rec)
        if d > tol and first_div is None:
            first_div = n
        max_y = max(max_y, d)
    return FoldCheck(max_x <= tol and max_y <= tol, max_x, max_y,
                     first_div, n_cmp)


# -- envelope criteria ---------------------------------------------------


@dataclass(frozen=True)
class EnvelopeVerdict:
    applicable: bool
    alpha: float = math.nan
    tangent: bool = False
    reason: str = ""
    counterexample: Optional[Tuple] = None


def _grid(lo: float, hi: float, count: int) -> List[float]:
    return [lo + (hi - lo) * i / count for i in range(1, count + 1)]


def check_alternating_envelopes(sys: PlanarSystem, grid: int = 60,
                                search_hi: float = 10.0) -> EnvelopeVerdict:
    """Envelope check for the alternating (parity) criterion.

    Verifies on a grid (exact comparisons, no tolerance):
    (i) f_n(u1, u2) <= fbar(u2) and g_n(u1, u2) <= gbar(u1);
    (ii) fbar non-decreasing;
    (iii) fbar(gbar(u)) < u on (0, alpha) via threshold solving.
    """
    if sys.envelope_f is None or sys.envelope_g is None:
        return EnvelopeVerdict(False, reason="missing envelopes")
    fbar, gbar = sys.envelope_f, sys.envelope_g
    us = _grid(0.0, search_hi, grid)
    for n in sys.sample_steps:
        for u1 in us:
            for u2 in us:
                if sys.f(n, u1, u2) > fbar(u2):
                    return EnvelopeVerdict(
                        False, reason="f_n(u1,u2) > fbar(u2)",
                        counterexample=(n, u1, u2))
                if sys.g(n, u1, u2) > gbar(u1):
                    return EnvelopeVerdict(
                        False, reason="g_n(u1,u2) > gbar(u1)",
                        counterexample=(n, u1, u2))
    fine = _grid(0.0, search_hi, 10_000)
    for a, b in zip(fine, fine[1:]):
        if fbar(b) < fbar(a):
            return EnvelopeVerdict(False, reason="fbar not non-decreasing",
                                   counterexample=(a, b))
    res = solve_threshold(lambda u: fbar(gbar(u)), search_hi)
    return EnvelopeVerdict(True, res.alpha, res.tangent)


def check_tail_envelope(sys: PlanarSystem, grid: int = 60,
                        search_hi: float = 10.0) -> EnvelopeVerdict:
    """Envelope check for the monotone-tail criterion:
    f_n(u1, u2) <= fbar(u1) on a grid, and fbar(u) < u on (0, alpha)."""
    if sys.envelope_f is None:
        return EnvelopeVerdict(False, reason="missing envelope")
    fbar = sys.envelope_f
    us = _grid(0.0, search_hi, grid)
    for n in sys.sample_steps:
        for u1 in us:
            for u2 in us:
                if sys.f(n, u1, u2) > fbar(u1):
                    return EnvelopeVerdict(
                        False, reason="f_n(u1,u2) > fbar(u1)",
                        counterexample=(n, u1, u2))
    res = solve_threshold(fbar, search_hi)
    return EnvelopeVerdict(True, res.alpha, res.tangent)


def _first_entry(xs: Sequence[float], alpha: float) -> Optional[int]:
    for n, x in enumerate(xs):
        if 0.0 < x < alpha or x == 0.0:
            return n
    return None


def predict_alternating_convergence(sys: PlanarSystem, orbit: Orbit,
                                    alpha: float) -> ConvergenceReport:
    """Parity prediction: once x_{n0} enters (0, alpha), the terms
    x_{n0}, x_{n0+2}, x_{n0+4}, ... decrease monotonically to zero.

    The other-parity y-subsequence converges too whenever the recovered
    y_n = sigma_n(x_n, x_{n+1}) inherits the decay (reported, not
    asserted).
    """
    window = ThresholdWindow(0.0, alpha)
    xs = orbit.xs
    n0 = _first_entry(xs, alpha)
    if n0 is None:
        return ConvergenceReport(2, window, None)
    h = sys.envelope_f and sys.envelope_g and \
        (lambda u: sys.envelope_f(sys.envelope_g(abs(u))))
    chain = check_inequality_chain(xs, n0, 2, h) if h else None
    verdict = CONVERGING_TO_ZERO if (chain is None or chain.holds) \
        else VIOLATED
    note = ("x-subsequence of parity %d from n0=%d; y-subsequence of "
            "parity %d follows via y_n = sigma_n(x_n, x_{n+1})"
            % (n0 % 2, n0, (n0 + 1) % 2))
    pred = Prediction(n0 % 2, n0, 2, verdict, chain, limit=0.0, note=note)
    return ConvergenceReport(2, window, n0, (pred,),
                             subsequence_tails={n0 % 2: xs[n0::2][-8:]})


def predict_tail_convergence(sys: PlanarSystem, orbit: Orbit,
                             alpha: float) -> ConvergenceReport:
    """Tail prediction: once x_{n0} enters (0, alpha), the whole sequence
    x_n decreases monotonically to zero from n0 (no oscillation)."""
    window = ThresholdWindow(0.0, alpha)
    xs = orbit.xs
    n0 = _first_entry(xs, alpha)
    if n0 is None:
        return ConvergenceReport(1, window, None)
    h = sys.envelope_f and (lambda u: sys.envelope_f(abs(u)))
    chain = check_inequality_chain(xs, n0, 1, h) if h else None
    verdict = CONVERGING_TO_ZERO if (chain is None or chain.holds) \
        else VIOLATED
    pred = Prediction(0, n0, 1, verdict, chain, limit=0.0,
                      note="entire x-tail monotone to 0 from n0=%d" % n0)
    return ConvergenceReport(1, window, n0, (pred,),
                             full_convergence_from=n0,
                             subsequence_tails={0: xs[n0:][-8:]})


def folded_descriptor(sys: PlanarSystem) -> dict:
    """JSON-serializable descriptor of the folded equation."""
    eq = fold_planar(sys)
    return {
        "name": eq.name,
        "order": eq.order,
        "dominant_lag": eq.dominant_lag,
        "domain_low": [v if math.isfinite(v) else "-inf" if v < 0 else "inf"
                       for v in eq.domain_low],
        "domain_high": [v if math.isfinite(v) else "inf"
                        for v in eq.domain_high],
        "origin_fixed": eq.origin_fixed,
        "source_system": sys.name,
    }
