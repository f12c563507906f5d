"""Core representation and iteration of higher-order difference equations.

An equation of order m is x_n = F_n(x_{n-1}, ..., x_{n-m}).  History
vectors follow the convention u_1 = x_{n-1} (most recent term first); every
model builder and fold in this package uses the same convention.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

from .errors import DomainError, NonFiniteError

Evaluator = Callable[[int, Sequence[float]], float]

_INF = math.inf


@dataclass(frozen=True)
class EquationSpec:
    """An order-m recurrence with a designated dominant lag k.

    The dominant lag is the history slot through which a bounding
    function controls the map; 1 <= k <= m.

    ``domain_low``/``domain_high`` give a rectangular invariant domain,
    one closed interval per history coordinate (use +-inf for unbounded
    sides).

    ``origin_fixed`` declares that F_n(0, ..., 0) = 0 for all n, which is
    required before convergence criteria may be applied.
    """

    order: int
    dominant_lag: int
    evaluator: Evaluator
    domain_low: Tuple[float, ...] = ()
    domain_high: Tuple[float, ...] = ()
    name: str = "equation"
    origin_fixed: bool = False

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be >= 1")
        if not 1 <= self.dominant_lag <= self.order:
            raise ValueError("dominant lag must lie in 1..order")
        if not self.domain_low:
            object.__setattr__(self, "domain_low", (-_INF,) * self.order)
        if not self.domain_high:
            object.__setattr__(self, "domain_high", (_INF,) * self.order)
        if len(self.domain_low) != self.order or \
                len(self.domain_high) != self.order:
            raise ValueError("domain bounds must have one entry per lag")

    def in_domain(self, history: Sequence[float]) -> bool:
        return all(lo <= u <= hi for u, lo, hi in
                   zip(history, self.domain_low, self.domain_high))

    def lag_projection(self) -> Tuple[float, float]:
        """Domain interval of the dominant-lag coordinate."""
        k = self.dominant_lag
        return self.domain_low[k - 1], self.domain_high[k - 1]


@dataclass(frozen=True)
class Trajectory:
    """A forward orbit x_0, x_1, ... of an equation.

    The first ``order`` terms are the initial values (x_0 oldest); for
    n >= order, terms[n] is the evaluator applied to the preceding
    window.  ``diagnostic`` is set when iteration stopped early on a
    non-finite value.
    """

    initial: Tuple[float, ...]
    terms: Tuple[float, ...]
    equation: Optional[EquationSpec] = field(default=None, compare=False)
    diagnostic: Optional[str] = None

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, n):
        return self.terms[n]

    @property
    def truncated(self) -> bool:
        return self.diagnostic is not None

    def to_csv(self) -> str:
        lines = ["n,x"]
        lines += ["%d,%r" % (n, x) for n, x in enumerate(self.terms)]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps({
            "equation": self.equation.name if self.equation else None,
            "initial": list(self.initial),
            "terms": list(self.terms),
        })


def evaluate_map(eq: EquationSpec, n: int, history: Sequence[float]) -> float:
    """Apply F_n to a history vector (u_1 = x_{n-1} first).

    Raises DomainError if the history leaves the declared domain and
    NonFiniteError if the result overflows.
    """
    if len(history) != eq.order:
        raise ValueError("history length %d != order %d"
                         % (len(history), eq.order))
    if not eq.in_domain(history):
        raise DomainError("history %r outside domain at step %d"
                          % (tuple(history), n), index=n)
    try:
        value = eq.evaluator(n, history)
    except OverflowError as exc:
        raise NonFiniteError("overflow at step %d: %s" % (n, exc),
                             index=n) from exc
    if not math.isfinite(value):
        raise NonFiniteError("non-finite value %r at step %d" % (value, n),
                             index=n)
    return value


def iterate(eq: EquationSpec, initial: Sequence[float],
            steps: int) -> Trajectory:
    """Generate the forward orbit for ``steps`` terms past the initial data.

    Initial values are given oldest first (x_0, ..., x_{m-1}).  A
    non-finite term truncates the trajectory and records a diagnostic;
    a domain exit raises DomainError with the offending index.
    """
    if steps < 0:
        raise ValueError("steps must be >= 0")
    init = tuple(float(v) for v in initial)
    if len(init) != eq.order:
        raise ValueError("need %d initial values, got %d"
                         % (eq.order, len(init)))
    if not eq.in_domain(tuple(reversed(init))):
        raise DomainError("initial values %r outside domain" % (init,),
                          index=0)
    terms: List[float] = list(init)
    m = eq.order
    diagnostic = None
    for n in range(m, m + steps):
        window = tuple(terms[n - i] for i in range(1, m + 1))
        try:
            terms.append(evaluate_map(eq, n, window))
        except NonFiniteError as exc:
            diagnostic = str(exc)
            break
    return Trajectory(init, tuple(terms), eq, diagnostic)


def extract_subsequence(traj, start: int, stride: int) -> List[float]:
    """Terms at indices start, start+stride, start+2*stride, ... in order."""
    terms = traj.terms if isinstance(traj, Trajectory) else traj
    if stride < 1:
        raise ValueError("stride must be >= 1")
    if not 0 <= start < len(terms):
        raise IndexError("start index %d out of range" % start)
    return list(terms[start::stride])
