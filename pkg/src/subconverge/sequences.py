"""Bounded real parameter sequences driving non-autonomous equations.

A sequence is one of three finite representations: a constant, a periodic
list, or a finite table with a fallback value for indices past the end.
Every representation carries declared inf/sup metadata so that envelope
bounds can be formed without scanning an infinite index set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

from .errors import SequenceBoundError

CONSTANT = "constant"
PERIODIC = "periodic"
TABULATED = "tabulated"


@dataclass(frozen=True)
class ParameterSequence:
    """A bounded real sequence a_0, a_1, a_2, ...

    Use the ``constant``, ``periodic`` and ``tabulated`` constructors
    rather than instantiating directly.
    """

    kind: str
    values: Tuple[float, ...]
    fallback: Optional[float] = None
    declared_inf: float = field(default=-math.inf)
    declared_sup: float = field(default=math.inf)

    # -- constructors ---------------------------------------------------

    @staticmethod
    def constant(value: float) -> "ParameterSequence":
        v = float(value)
        return ParameterSequence(CONSTANT, (v,), None, v, v)

    @staticmethod
    def periodic(values: Sequence[float],
                 declared_inf: Optional[float] = None,
                 declared_sup: Optional[float] = None) -> "ParameterSequence":
        if not values:
            raise ValueError("periodic list must be non-empty")
        vals = tuple(float(v) for v in values)
        lo = min(vals) if declared_inf is None else float(declared_inf)
        hi = max(vals) if declared_sup is None else float(declared_sup)
        return ParameterSequence(PERIODIC, vals, None, lo, hi)

    @staticmethod
    def tabulated(values: Sequence[float], fallback: float,
                  declared_inf: Optional[float] = None,
                  declared_sup: Optional[float] = None) -> "ParameterSequence":
        vals = tuple(float(v) for v in values)
        fb = float(fallback)
        stored = vals + (fb,)
        lo = min(stored) if declared_inf is None else float(declared_inf)
        hi = max(stored) if declared_sup is None else float(declared_sup)
        return ParameterSequence(TABULATED, vals, fb, lo, hi)

    # -- access ---------------------------------------------------------

    def __call__(self, n: int) -> float:
        if self.kind == CONSTANT:
            return self.values[0]
        if self.kind == PERIODIC:
            return self.values[n % len(self.values)]
        if 0 <= n < len(self.values):
            return self.values[n]
        return self.fallback  # type: ignore[return-value]

    def stored_values(self) -> Tuple[float, ...]:
        """All distinct values the sequence can ever emit."""
        if self.kind == TABULATED:
            return self.values + (self.fallback,)  # type: ignore[operator]
        return self.values

    def bounds(self) -> Tuple[float, float]:
        """Verified (inf, sup) of the sequence.

        Declared bounds are checked against the stored values and
        tightened to the exact min/max when the declaration is looser.
        """
        stored = self.stored_values()
        for i, v in enumerate(stored):
            if v < self.declared_inf or v > self.declared_sup:
                raise SequenceBoundError(
                    "stored value %r at index %d violates declared bounds "
                    "[%r, %r]" % (v, i, self.declared_inf, self.declared_sup),
                    index=i)
        return max(self.declared_inf, min(stored)), \
            min(self.declared_sup, max(stored))

    def sample_indices(self, extra: int = 4) -> Tuple[int, ...]:
        """Step indices that exercise every stored value at least once.

        Used by grid checks that must cover the whole (finite)
        representation of a non-autonomous coefficient.
        """
        if self.kind == CONSTANT:
            return (0,)
        if self.kind == PERIODIC:
            return tuple(range(len(self.values)))
        return tuple(range(len(self.values) + extra))


def as_sequence(value) -> ParameterSequence:
    """Coerce a number or sequence-like into a ParameterSequence."""
    if isinstance(value, ParameterSequence):
        return value
    if isinstance(value, (int, float)):
        return ParameterSequence.constant(value)
    return ParameterSequence.periodic(value)
