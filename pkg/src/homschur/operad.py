"""The non-symmetric operad of little intervals with exact rational data.

An interval T_{y,r} is the affine map x -> r*x + y of D^1 = [-1, 1].  A
configuration is a left-to-right list of such maps with disjoint closed
images.  The identity T_{0,1} is admitted as the unit of arity one even
though ordinary configurations require r < 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence

from .errors import ConfigInvalid, IndexMismatch
from .graded import OK, ValidationReport, as_rational, format_rational
from .homatrix import HomMatrix, hg_product


@dataclass(frozen=True)
class LittleInterval:
    center: Fraction
    radius: Fraction

    def __post_init__(self):
        object.__setattr__(self, "center", as_rational(self.center))
        object.__setattr__(self, "radius", as_rational(self.radius))

    @property
    def left(self) -> Fraction:
        return self.center - self.radius

    @property
    def right(self) -> Fraction:
        return self.center + self.radius

    def __call__(self, x) -> Fraction:
        return self.radius * as_rational(x) + self.center

    def after(self, inner: "LittleInterval") -> "LittleInterval":
        """self o inner = T_{y + r y', r r'}."""
        return LittleInterval(self.center + self.radius * inner.center, self.radius * inner.radius)

    def __repr__(self) -> str:
        return f"T({format_rational(self.center)}, {format_rational(self.radius)})"


@dataclass(frozen=True)
class IntervalConfig:
    intervals: tuple[LittleInterval, ...]

    def __post_init__(self):
        object.__setattr__(self, "intervals", tuple(self.intervals))

    @classmethod
    def of(cls, *pairs) -> "IntervalConfig":
        return cls(tuple(LittleInterval(y, r) for y, r in pairs))

    @property
    def arity(self) -> int:
        return len(self.intervals)

    def __len__(self) -> int:
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def is_unit(self) -> bool:
        return self == UNIT


UNIT = IntervalConfig((LittleInterval(0, 1),))


def validate_config(c: IntervalConfig) -> ValidationReport:
    if c.arity < 1:
        return ValidationReport(False, "arity must be at least 1", None)
    for idx, t in enumerate(c.intervals):
        if not (0 <= t.radius < 1):
            return ValidationReport(False, f"radius violation at {idx}: r = {format_rational(t.radius)} not in [0, 1)", idx)
        if t.left < -1 or t.right > 1:
            return ValidationReport(False, f"interval {idx} = {t!r} leaves D^1", idx)
    for idx in range(1, c.arity):
        prev, cur = c.intervals[idx - 1], c.intervals[idx]
        if cur.center <= prev.center:
            return ValidationReport(False, f"ordering violation: interval {idx} is not right of interval {idx - 1}", idx)
        if prev.right >= cur.left:
            return ValidationReport(False, f"overlap violation between intervals {idx - 1} and {idx}", idx)
    return OK


def _require_valid(c: IntervalConfig, label: str) -> None:
    if c.is_unit():
        return
    report = validate_config(c)
    if not report:
        raise ConfigInvalid(f"{label}: {report.message}")


def operad_compose(outer: IntervalConfig, inners: Sequence[IntervalConfig]) -> IntervalConfig:
    """Substitute ``inners[i]`` into the i-th interval of ``outer``."""
    _require_valid(outer, "outer")
    if len(inners) != outer.arity:
        raise ConfigInvalid(f"outer has arity {outer.arity} but {len(inners)} inner configurations were given")
    out = []
    for i, (t, inner) in enumerate(zip(outer.intervals, inners)):
        _require_valid(inner, f"inner {i}")
        out.extend(t.after(s) for s in inner.intervals)
    return IntervalConfig(tuple(out))


def theta_compose(c: IntervalConfig, matrices: Sequence[HomMatrix]) -> HomMatrix:
    """Point-level composition of a chain of matrices; forgets ``c``.

    ``matrices = [A, B, C]`` returns ``(A B) C``.
    """
    _require_valid(c, "configuration")
    if c.arity != len(matrices):
        raise IndexMismatch(f"configuration of arity {c.arity} for {len(matrices)} matrices")
    return reduce(hg_product, matrices)
