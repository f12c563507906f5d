"""Built-in equation families with analytically valid envelope bounds.

Families:

* generalized Ricker recurrence
  x_n = x_{n-k}^lam * exp(a_n - b_{1,n} x_{n-1} - ... - b_{m,n} x_{n-m})
  with bound g(u) = u^lam * exp(a_sup - b_inf u) through the dominant lag;
* the third-order showcase equation (lam = 3/2, coefficients 0.7 and 0.9)
  whose delay k in {1, 2, 3} selects which subsequences converge;
* a delayed sigmoid Beverton-Holt equation with an off-origin fixed
  point, handled by translation;
* the adult-juvenile planar system and the two-species competition
  system (plus its variable-swapped variant);
* a three-dimensional system that folds to an order-3 Ricker-type
  equation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .criteria import (BoundingFunction, ThresholdResult, solve_threshold,
                       validate_bound)
from .dynamics import EquationSpec
from .errors import DomainError, ModelParameterError, NonFiniteError
from .reports import ThresholdWindow
from .sequences import ParameterSequence, as_sequence
from .systems import PlanarSystem, SigmaForm

_INF = math.inf


# -- generalized Ricker family ------------------------------------------


@dataclass(frozen=True)
class RickerFamilySpec:
    """Parameters of the generalized Ricker recurrence.

    ``b_seqs[i]`` is the coefficient of x_{n-(i+1)}.  ``a_sup`` and
    ``b_inf`` default to the verified bounds of the coefficient
    sequences.
    """

    lam: float
    k: int
    m: int
    a_seq: ParameterSequence
    b_seqs: Tuple[ParameterSequence, ...]
    a_sup: Optional[float] = None
    b_inf: Optional[float] = None

    def resolved_bounds(self) -> Tuple[float, float]:
        a_sup = self.a_seq.bounds()[1] if self.a_sup is None else self.a_sup
        b_inf = self.b_seqs[self.k - 1].bounds()[0] \
            if self.b_inf is None else self.b_inf
        return a_sup, b_inf


def _ricker_equation(spec: RickerFamilySpec, name: str) -> EquationSpec:
    lam, k, m = spec.lam, spec.k, spec.m
    a_seq, b_seqs = spec.a_seq, spec.b_seqs

    def evaluator(n: int, u: Sequence[float]) -> float:
        # Fixed left-to-right accumulation; crossing indices depend on it.
        e = a_seq(n)
        for i in range(m):
            e -= b_seqs[i](n) * u[i]
        return u[k - 1] ** lam * math.exp(e)

    return EquationSpec(order=m, dominant_lag=k, evaluator=evaluator,
                        domain_low=(0.0,) * m, domain_high=(_INF,) * m,
                        name=name, origin_fixed=True)


def _ricker_bound(lam: float, a_sup: float, b_inf: float, k: int,
                  informal: bool = False,
                  name: str = "ricker-bound") -> BoundingFunction:
    def g(u: float) -> float:
        return u ** lam * math.exp(a_sup - b_inf * u)

    search_hi = 2.0 * (lam - 1.0) / b_inf if b_inf > 0 else 10.0
    res = solve_threshold(g, search_hi)
    fps = ricker_fixed_points(lam, a_sup, b_inf) if b_inf > 0 \
        else FixedPointResult("none")
    bound = BoundingFunction(
        g=g, alpha=res.alpha, dominant_lag=k,
        validity=ThresholdWindow(0.0, res.alpha),
        tangent=res.tangent, informal=informal,
        g_domain=(0.0, _INF), fixed_points=fps.as_tuple(), name=name)
    return validate_bound(bound)


def make_generalized_ricker(spec: RickerFamilySpec
                            ) -> Tuple[EquationSpec, BoundingFunction]:
    """Build the family's equation on [0, inf)^m together with its
    dominant-lag bound g(u) = u^lam * exp(a_sup - b_inf u)."""
    if spec.lam <= 1:
        raise ModelParameterError("lam must exceed 1, got %r" % spec.lam)
    if not 1 <= spec.k <= spec.m:
        raise ModelParameterError("need 1 <= k <= m")
    if len(spec.b_seqs) != spec.m:
        raise ModelParameterError("need one coefficient sequence per lag")
    for i, s in enumerate(spec.b_seqs):
        if s.bounds()[0] < 0:
            raise ModelParameterError(
                "coefficient sequence %d takes negative values" % (i + 1))
    a_sup, b_inf = spec.resolved_bounds()
    if b_inf <= 0:
        raise ModelParameterError(
            "dominant-lag coefficient must be bounded away from 0")
    eq = _ricker_equation(spec, "ricker(lam=%g,k=%d,m=%d)"
                          % (spec.lam, spec.k, spec.m))
    return eq, _ricker_bound(spec.lam, a_sup, b_inf, spec.k)


def ricker_threshold_condition(lam: float, a_sup: float,
                               b_inf: float) -> Tuple[bool, float]:
    """Whether a_sup >= (lam-1)(1 + ln b_inf - ln(lam-1)), the exact
    condition for the bound g to have positive fixed points.

    Returns (holds, right-hand side); equality is the tangency case.
    """
    if lam <= 1 or b_inf <= 0:
        raise ModelParameterError("need lam > 1 and b_inf > 0")
    rhs = (lam - 1.0) * (1.0 + math.log(b_inf) - math.log(lam - 1.0))
    return a_sup >= rhs, rhs


@dataclass(frozen=True)
class FixedPointResult:
    """Positive fixed points of g(u) = u^lam * exp(a - b u)."""

    kind: str                       # none | tangent | pair
    u_star: Optional[float] = None  # smaller root (the decline threshold)
    u_bar: Optional[float] = None   # larger root

    def as_tuple(self) -> Tuple[float, ...]:
        if self.kind == "pair":
            return (self.u_star, self.u_bar)
        if self.kind == "tangent":
            return (self.u_star,)
        return ()


def ricker_fixed_points(lam: float, a: float, b: float,
                        tol: float = 1e-12) -> FixedPointResult:
    """Solve u^(lam-1) * exp(a - b u) = 1 for its positive roots.

    Works on the log form (lam-1) ln u = b u - a, which is concave with
    its maximum at u = (lam-1)/b: the sign there decides between no
    roots, a tangency, and a pair bracketing the maximum.
    """
    if lam <= 1 or b <= 0:
        raise ModelParameterError("need lam > 1 and b > 0")

    def phi(u: float) -> float:
        return (lam - 1.0) * math.log(u) - b * u + a

    u_max = (lam - 1.0) / b
    peak = phi(u_max)
    if abs(peak) <= tol:
        return FixedPointResult("tangent", u_star=u_max, u_bar=u_max)
    if peak < 0:
        return FixedPointResult("none")

    def bisect(lo: float, hi: float) -> float:
        # phi(lo), phi(hi) have opposite signs; 200 halvings exhaust
        # double precision.
        f_lo = phi(lo)
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if mid == lo or mid == hi:
                break
            if (phi(mid) > 0) == (f_lo > 0):
                lo, f_lo = mid, phi(mid)
            else:
                hi = mid
        return 0.5 * (lo + hi)

    lo = u_max
    while phi(lo) > 0:
        lo *= 0.5
    hi = u_max
    while phi(hi) > 0:
        hi *= 2.0
    return FixedPointResult("pair", bisect(lo, u_max), bisect(hi, u_max))


# -- the third-order showcase equation ----------------------------------

_SP3_LAM = 1.5
_SP3_A = 1.5
_SP3_B = (0.0, 0.7, 0.9)


def make_sp3(k: int, rigorous: bool = False
             ) -> Tuple[EquationSpec, BoundingFunction]:
    """x_n = x_{n-k}^{3/2} * exp(1.5 - 0.7 x_{n-2} - 0.9 x_{n-3}),
    k in {1, 2, 3}.

    Bounds: k=3 uses exponent coefficient 0.9 and k=2 uses 0.7 (both are
    genuine dominant-lag bounds).  For k=1 the lag-1 coefficient is 0, so
    no Ricker-type bound exists through that lag; the conventional choice
    exp(1.5 - 1.6 u) is provided flagged ``informal``, and
    ``rigorous=True`` switches to the certified envelope
    g(u) = u^{3/2} e^{1.5} with its much smaller threshold e^{-3}.
    """
    if k not in (1, 2, 3):
        raise ModelParameterError("k must be 1, 2 or 3")
    spec = RickerFamilySpec(
        _SP3_LAM, k, 3, ParameterSequence.constant(_SP3_A),
        tuple(ParameterSequence.constant(b) for b in _SP3_B))
    eq = _ricker_equation(spec, "sp3(k=%d)" % k)
    if k in (2, 3):
        b_inf = _SP3_B[k - 1]
        return eq, _ricker_bound(_SP3_LAM, _SP3_A, b_inf, k,
                                 name="sp3-bound(k=%d)" % k)
    if rigorous:
        def g(u: float) -> float:
            return u ** _SP3_LAM * math.exp(_SP3_A)
        alpha = math.exp(-_SP3_A / (_SP3_LAM - 1.0))  # root of sqrt(u)e^a=1
        bound = BoundingFunction(
            g=g, alpha=alpha, dominant_lag=1,
            validity=ThresholdWindow(0.0, alpha),
            g_domain=(0.0, _INF), name="sp3-bound(k=1,rigorous)")
        return eq, validate_bound(bound)
    bound = _ricker_bound(_SP3_LAM, _SP3_A, sum(_SP3_B), 1, informal=True,
                          name="sp3-bound(k=1,informal)")
    return eq, bound


# -- sigmoid Beverton-Holt with delay -----------------------------------


RationalPower = Union[int, Fraction]


def _validate_power(p: RationalPower) -> Fraction:
    """Admissible exponents: positive integers, or even/odd rationals
    (which stay real on negative bases)."""
    frac = Fraction(p)
    if frac <= 0:
        raise ModelParameterError("exponent must be positive")
    if frac.denominator == 1:
        return frac
    if frac.numerator % 2 == 0 and frac.denominator % 2 == 1:
        return frac
    raise ModelParameterError(
        "exponent %s is neither an integer nor of even/odd rational form"
        % frac)


def rational_power(x: float, p: Fraction) -> float:
    """x**p on the real branch: integer exponents keep their sign, and
    even/odd rationals give |x|**p."""
    if p.denominator == 1:
        return x ** int(p)
    return abs(x) ** float(p)


@dataclass(frozen=True)
class SigmoidBHSpec:
    """Parameters of
    x_n = a_n (x_{n-k} - b)^p / (1 + c_n x_{n-l}^{q_n}) + b."""

    a_seq: ParameterSequence
    c_seq: ParameterSequence
    q_seq: ParameterSequence
    p: RationalPower
    b: float
    k: int
    l: int

    @property
    def order(self) -> int:
        return max(self.k, self.l)


def make_sigmoid_bh(spec: SigmoidBHSpec) -> EquationSpec:
    """Build the delayed sigmoid Beverton-Holt equation on [0, inf)^m.

    The equation has a fixed point at b; apply translate_to_origin
    before using the convergence criterion.
    """
    p = _validate_power(spec.p)
    if spec.k < 1 or spec.l < 1:
        raise ModelParameterError("lags must be >= 1")
    a_lo, _ = spec.a_seq.bounds()
    if a_lo <= 0:
        raise ModelParameterError("a_n must be positive")
    if spec.c_seq.bounds()[0] < 0:
        raise ModelParameterError("c_n must be non-negative")
    if spec.q_seq.bounds()[0] <= 0:
        raise ModelParameterError("q_n must be positive")
    if spec.b < 0:
        raise ModelParameterError("b must be non-negative")
    m = spec.order
    a_seq, c_seq, q_seq, b = spec.a_seq, spec.c_seq, spec.q_seq, spec.b
    k, l = spec.k, spec.l

    def evaluator(n: int, u: Sequence[float]) -> float:
        num = a_seq(n) * rational_power(u[k - 1] - b, p)
        return num / (1.0 + c_seq(n) * u[l - 1] ** q_seq(n)) + b

    return EquationSpec(order=m, dominant_lag=k, evaluator=evaluator,
                        domain_low=(0.0,) * m, domain_high=(_INF,) * m,
                        name="sigmoid-bh(p=%s,b=%g,k=%d,l=%d)"
                             % (p, b, k, l))


def sigmoid_bh_window(a_sup: float, p: float, b: float
                      ) -> Tuple[float, ThresholdWindow]:
    """Threshold alpha = a_sup^(-1/(p-1)) and the window
    (max{0, b - alpha}, b + alpha) around the fixed point b: any solution
    term landing there starts a stride-k subsequence converging to b."""
    if p <= 1:
        raise ModelParameterError("window formula requires p > 1")
    if a_sup <= 0:
        raise ModelParameterError("a_sup must be positive")
    alpha = a_sup ** (-1.0 / (p - 1.0))
    return alpha, ThresholdWindow(max(0.0, b - alpha), b + alpha)


def sigmoid_bh_bound(spec: SigmoidBHSpec) -> BoundingFunction:
    """Bound g(u) = a_sup |u|^p for the translated (origin-fixed)
    equation; valid on (max{-alpha, -b}, alpha)."""
    p = _validate_power(spec.p)
    a_sup = spec.a_seq.bounds()[1]
    alpha, _ = sigmoid_bh_window(a_sup, float(p), spec.b)

    def g(u: float) -> float:
        return a_sup * abs(u) ** float(p)

    lo = max(-alpha, -spec.b) if spec.b > 0 else 0.0
    window = ThresholdWindow(lo, alpha) if lo < alpha else \
        ThresholdWindow(0.0, alpha)
    bound = BoundingFunction(
        g=g, alpha=alpha, dominant_lag=spec.k, validity=window,
        g_domain=(-spec.b, _INF), fixed_points=(), name="sigmoid-bh-bound")
    return validate_bound(bound)


def translate_to_origin(eq: EquationSpec, fixed_point: float,
                        check_tol: float = 1e-9) -> EquationSpec:
    """Conjugate the equation by y = x - b so the fixed point b moves to
    the origin; verifies numerically that b actually is fixed."""
    b = float(fixed_point)
    m = eq.order
    const = (b,) * m
    for n in range(m, m + 8):
        val = eq.evaluator(n, const)
        if abs(val - b) > check_tol * max(1.0, abs(b)):
            raise ModelParameterError(
                "%r is not a fixed value: F_%d(b,...,b) = %r" % (b, n, val))
    if b == 0.0:
        return eq
    base = eq.evaluator

    def evaluator(n: int, v: Sequence[float]) -> float:
        return base(n, [vi + b for vi in v]) - b

    return EquationSpec(
        order=m, dominant_lag=eq.dominant_lag, evaluator=evaluator,
        domain_low=tuple(lo - b for lo in eq.domain_low),
        domain_high=tuple(hi - b for hi in eq.domain_high),
        name=eq.name + "-translated", origin_fixed=True)


# -- adult-juvenile planar system ---------------------------------------


def make_adult_juvenile(s_seq, t_seq, r_seq, lam: float) -> PlanarSystem:
    """x_{n+1} = s_n y_n,  y_{n+1} = x_n^lam * exp(r_n - x_n - t_n y_n).

    Adults all die each period; juveniles mature.  The first equation is
    multiplicatively separable, so the system folds exactly; envelope
    bounds fbar(u) = u and gbar(u) = u^lam * exp(r_sup - u) make the
    alternating criterion applicable without folding.
    """
    s_seq, t_seq, r_seq = map(as_sequence, (s_seq, t_seq, r_seq))
    s_lo, s_hi = s_seq.bounds()
    if s_lo <= 0 or s_hi > 1:
        raise ModelParameterError("s_n must lie in (0, 1]")
    if t_seq.bounds()[0] <= 0:
        raise ModelParameterError("t_n must be positive")
    if lam <= 1:
        raise ModelParameterError("lam must exceed 1")
    r_sup = r_seq.bounds()[1]

    def f(n: int, u: float, v: float) -> float:
        return s_seq(n) * v

    def g(n: int, u: float, v: float) -> float:
        return u ** lam * math.exp(r_seq(n) - u - t_seq(n) * v)

    steps = sorted(set(s_seq.sample_indices()) | set(t_seq.sample_indices())
                   | set(r_seq.sample_indices()))
    return PlanarSystem(
        f=f, g=g,
        sigma=SigmaForm.multiplicative(lambda n, u: s_seq(n)),
        envelope_f=lambda u: u,
        envelope_g=lambda u: u ** lam * math.exp(r_sup - u),
        sample_steps=tuple(steps),
        name="adult-juvenile")


# -- two-species competition system -------------------------------------


@dataclass(frozen=True)
class CompetitionParams:
    """Ricker-Beverton-Holt competition parameters; all per-species
    sequences coercible from scalars."""

    r1: ParameterSequence
    r2: ParameterSequence
    a1: ParameterSequence
    a2: ParameterSequence
    d1: float
    d2: float
    b1: ParameterSequence = field(
        default_factory=lambda: ParameterSequence.constant(0.0))
    b2: ParameterSequence = field(
        default_factory=lambda: ParameterSequence.constant(0.0))
    d3: float = 1.0
    d4: float = 1.0

    @staticmethod
    def make(r1, r2, a1, a2, d1, d2, b1=0.0, b2=0.0,
             d3=1.0, d4=1.0) -> "CompetitionParams":
        return CompetitionParams(
            as_sequence(r1), as_sequence(r2), as_sequence(a1),
            as_sequence(a2), float(d1), float(d2),
            as_sequence(b1), as_sequence(b2), float(d3), float(d4))


def make_competition(params: CompetitionParams,
                     swapped: bool = False) -> PlanarSystem:
    """x_{n+1} = r_{1,n} x_n^d1 / (a_{1,n} + x_n^d1 + b_{1,n} y_n^d3) and
    the analogous y-equation; ``swapped`` exchanges the roles of x and y
    in the right-hand sides.

    The unswapped system admits the tail envelope
    fbar(u) = r1_sup u^d1 / (a1_inf + u^d1); the swapped variant admits
    the alternating envelope pair instead.
    """
    p = params
    if p.d1 <= 1 or p.d2 <= 1:
        raise ModelParameterError("d1, d2 must exceed 1")
    if p.d3 <= 0 or p.d4 <= 0:
        raise ModelParameterError("d3, d4 must be positive")
    for name, seq in (("r1", p.r1), ("r2", p.r2), ("a1", p.a1),
                      ("a2", p.a2)):
        if seq.bounds()[0] <= 0:
            raise ModelParameterError("%s must be positive" % name)
    if p.b1.bounds()[0] < 0 or p.b2.bounds()[0] < 0:
        raise ModelParameterError("b1, b2 must be non-negative")

    r1_sup, a1_inf = p.r1.bounds()[1], p.a1.bounds()[0]
    r2_sup, a2_inf = p.r2.bounds()[1], p.a2.bounds()[0]

    def x_map(n: int, x: float, y: float) -> float:
        return p.r1(n) * x ** p.d1 / (p.a1(n) + x ** p.d1
                                      + p.b1(n) * y ** p.d3)

    def y_map(n: int, x: float, y: float) -> float:
        return p.r2(n) * y ** p.d2 / (p.a2(n) + y ** p.d2
                                      + p.b2(n) * x ** p.d4)

    def fbar1(u: float) -> float:
        return r1_sup * u ** p.d1 / (a1_inf + u ** p.d1)

    def fbar2(u: float) -> float:
        return r2_sup * u ** p.d2 / (a2_inf + u ** p.d2)

    steps = sorted(set().union(*(s.sample_indices() for s in
                                 (p.r1, p.r2, p.a1, p.a2, p.b1, p.b2))))

    if not swapped:
        f = x_map
        g = y_map
        b1_inf = p.b1.bounds()[0]
        sigma = None
        if b1_inf > 0:
            def sigma_fn(n: int, u: float, w: float) -> float:
                # w = r1 u^d1 / (a1 + u^d1 + b1 v^d3), solved for v.
                num = p.r1(n) * u ** p.d1 / w - p.a1(n) - u ** p.d1
                return (num / p.b1(n)) ** (1.0 / p.d3)
            sigma = SigmaForm.custom(sigma_fn)
        return PlanarSystem(f=f, g=g, sigma=sigma,
                            envelope_f=fbar1, envelope_g=fbar2,
                            sample_steps=tuple(steps), name="competition")

    def f_sw(n: int, x: float, y: float) -> float:
        return p.r1(n) * y ** p.d1 / (p.a1(n) + y ** p.d1
                                      + p.b1(n) * x ** p.d3)

    def g_sw(n: int, x: float, y: float) -> float:
        return p.r2(n) * x ** p.d2 / (p.a2(n) + x ** p.d2
                                      + p.b2(n) * y ** p.d4)

    def sigma_sw(n: int, u: float, w: float) -> float:
        # w = r1 v^d1 / (a1 + v^d1 + b1 u^d3), solved for v (needs w < r1).
        denom = p.r1(n) - w
        if denom <= 0:
            raise ModelParameterError(
                "no preimage: w=%r not below r1=%r" % (w, p.r1(n)))
        return (w * (p.a1(n) + p.b1(n) * u ** p.d3) / denom) \
            ** (1.0 / p.d1)

    return PlanarSystem(f=f_sw, g=g_sw, sigma=SigmaForm.custom(sigma_sw),
                        envelope_f=fbar1, envelope_g=fbar2,
                        sample_steps=tuple(steps),
                        name="competition-swapped")


def competition_threshold(r1: float, a1: float, d1: float,
                          tol: float = 1e-12) -> ThresholdResult:
    """Smallest positive root of u^d1 - r1 u^(d1-1) + a1 = 0, below which
    the competition envelope satisfies fbar(u) < u.

    d1 = 2 uses the closed quadratic form; other exponents fall back to
    the polynomial's interior minimum plus bisection.
    """
    if r1 <= 0 or a1 <= 0 or d1 <= 1:
        raise ModelParameterError("need r1, a1 > 0 and d1 > 1")
    if d1 == 2.0:
        disc = r1 * r1 - 4.0 * a1
        if disc < 0:
            return ThresholdResult(_INF)
        if disc == 0:
            return ThresholdResult(0.5 * r1, tangent=True)
        return ThresholdResult(0.5 * (r1 - math.sqrt(disc)))

    def psi(u: float) -> float:
        return u ** d1 - r1 * u ** (d1 - 1.0) + a1

    u_min = r1 * (d1 - 1.0) / d1
    bottom = psi(u_min)
    if bottom > tol * a1:
        return ThresholdResult(_INF)
    if bottom >= -tol * a1:
        return ThresholdResult(u_min, tangent=True)
    lo, hi = 0.0, u_min
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if psi(mid) > 0:
            lo = mid
        else:
            hi = mid
    return ThresholdResult(0.5 * (lo + hi))


# -- three-dimensional system and its order-3 fold ----------------------


@dataclass(frozen=True)
class ThreeDSystem:
    """x_{n+1} = exp(a_n - b x_n - c y_n - d z_n),
    y_{n+1} = p_n x_n + q z_n - r ln z_n,
    z_{n+1} = s x_n, with c, q, r, s > 0 and b, d >= 0."""

    a_seq: ParameterSequence
    p_seq: ParameterSequence
    b: float
    c: float
    d: float
    q: float
    r: float
    s: float

    def step(self, n: int, state: Tuple[float, float, float]
             ) -> Tuple[float, float, float]:
        x, y, z = state
        if z <= 0:
            raise DomainError("z_%d = %r is not positive" % (n, z), index=n)
        xn = math.exp(self.a_seq(n) - self.b * x - self.c * y - self.d * z)
        yn = self.p_seq(n) * x + self.q * z - self.r * math.log(z)
        zn = self.s * x
        return xn, yn, zn

    def iterate(self, initial: Tuple[float, float, float],
                steps: int) -> List[Tuple[float, float, float]]:
        x0, y0, z0 = (float(v) for v in initial)
        if x0 <= 0 or z0 <= 0:
            raise DomainError("x_0 and z_0 must be positive")
        states = [(x0, y0, z0)]
        for n in range(steps):
            nxt = self.step(n, states[-1])
            if not all(math.isfinite(v) for v in nxt):
                raise NonFiniteError("non-finite state at step %d" % (n + 1),
                                     index=n + 1)
            states.append(nxt)
        return states

    def fold_initial(self, initial: Tuple[float, float, float]
                     ) -> Tuple[float, float, float]:
        """(x_0, x_1, x_2) feeding the folded order-3 equation."""
        states = self.iterate(initial, 2)
        return tuple(st[0] for st in states)


def make_3d_example(a_seq, p_seq, b: float, c: float, d: float,
                    q: float, r: float, s: float
                    ) -> Tuple[ThreeDSystem, EquationSpec]:
    """Build the 3D system and its closed-form order-3 fold
    x_n = x_{n-3}^{cr} * exp(a_{n-1} + cr ln s - b x_{n-1}
                             - (c p_{n-2} + d s) x_{n-2} - cqs x_{n-3}),
    a Ricker-family equation with lam = cr and dominant lag 3."""
    if b < 0 or d < 0:
        raise ModelParameterError("b and d must be non-negative")
    if min(c, q, r, s) <= 0:
        raise ModelParameterError("c, q, r, s must be positive")
    a_seq, p_seq = as_sequence(a_seq), as_sequence(p_seq)
    sysm = ThreeDSystem(a_seq, p_seq, float(b), float(c), float(d),
                        float(q), float(r), float(s))
    cr = c * r
    cr_ln_s = cr * math.log(s)
    cqs = c * q * s
    ds = d * s

    def evaluator(n: int, u: Sequence[float]) -> float:
        e = a_seq(n - 1) + cr_ln_s - b * u[0] \
            - (c * p_seq(n - 2) + ds) * u[1] - cqs * u[2]
        return u[2] ** cr * math.exp(e)

    eq = EquationSpec(order=3, dominant_lag=3, evaluator=evaluator,
                      domain_low=(0.0,) * 3, domain_high=(_INF,) * 3,
                      name="threed-folded", origin_fixed=cr > 0)
    return sysm, eq


# -- model catalog -------------------------------------------------------

MODEL_NAMES = ("ricker", "sp3", "sigmoid-bh", "adult-juvenile",
               "competition", "competition-swapped", "threed")
