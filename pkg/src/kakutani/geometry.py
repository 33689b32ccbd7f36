"""Exact geometry for substitution patches.

Tile lengths are tracked symbolically and evaluated to floats only at
output boundaries.  Two exact representations appear:

* ``LengthExponent(a, b)`` stands for ``alpha**a * (1-alpha)**b``; a
  ``PositionVector`` is an integer-coefficient sum of such terms.  This
  is the native currency of the multiscale substitution, where exact
  contiguity of consecutive tiles is an algebraic identity.
* ``XiPower(e)`` stands for ``xi**(-e)`` for the inflation constant xi
  of a commensurable ratio, and an ``XiSum`` is an integer-coefficient
  sum of powers of xi.  Fixed-scale (primitive) patches live here.

Both position types support exact addition of a tile length, so the
statement "the next tile starts where this one ends" never passes
through floating point.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Union

from .errors import ParameterError

__all__ = [
    "LengthExponent",
    "length_value",
    "PositionVector",
    "XiPower",
    "XiSum",
    "Tile",
    "Patch",
    "PointSet",
]


class LengthExponent(NamedTuple):
    """Exponent pair (a, b) naming the length alpha**a * (1-alpha)**b."""

    a: int
    b: int

    def value(self, alpha: float) -> float:
        return alpha**self.a * (1.0 - alpha) ** self.b

    def log_value(self, alpha: float) -> float:
        return self.a * math.log(alpha) + self.b * math.log1p(-alpha)


def length_value(exponent: LengthExponent | tuple[int, int], alpha: float) -> float:
    """Evaluate a length exponent pair at a concrete alpha."""
    if not (0.0 < alpha < 1.0):
        raise ParameterError(f"alpha must lie in (0, 1), got {alpha!r}")
    a, b = exponent
    if a < 0 or b < 0:
        raise ParameterError(f"exponents must be nonnegative, got ({a}, {b})")
    return alpha**a * (1.0 - alpha) ** b


class PositionVector:
    """Integer-coefficient combination of alpha**a * (1-alpha)**b terms.

    Immutable.  Used for tile positions relative to the patch anchor, in
    units of the patch scale.
    """

    __slots__ = ("_terms",)

    def __init__(
        self,
        terms: Mapping[tuple[int, int], int] | Iterable[tuple[tuple[int, int], int]] = (),
    ):
        acc: dict[tuple[int, int], int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, coeff in items:
            if coeff:
                k = (int(key[0]), int(key[1]))
                acc[k] = acc.get(k, 0) + int(coeff)
        self._terms = tuple(sorted((k, c) for k, c in acc.items() if c))

    @classmethod
    def zero(cls) -> "PositionVector":
        return cls()

    @property
    def terms(self) -> tuple[tuple[tuple[int, int], int], ...]:
        return self._terms

    def plus(self, step: LengthExponent) -> "PositionVector":
        """This position shifted right by one tile of the given length."""
        return PositionVector(list(self._terms) + [((step.a, step.b), 1)])

    def __add__(self, other: "PositionVector") -> "PositionVector":
        return PositionVector(list(self._terms) + list(other._terms))

    def value(self, alpha: float) -> float:
        beta = 1.0 - alpha
        return sum(c * alpha**a * beta**b for (a, b), c in self._terms)

    def to_xi_sum(self, n: int, m: int, shift: int = 0) -> "XiSum":
        """Rewrite over powers of xi, using alpha = xi**-n, 1-alpha = xi**-m.

        The optional shift multiplies by xi**shift, which turns a
        position in patch-relative units into an absolute one when the
        patch scale is xi**shift.
        """
        return XiSum([(shift - a * n - b * m, c) for (a, b), c in self._terms])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PositionVector) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._terms)

    def __repr__(self) -> str:
        return f"PositionVector({list(self._terms)!r})"


class XiSum:
    """Integer-coefficient combination of powers of the inflation constant."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        acc: dict[int, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for power, coeff in items:
            if coeff:
                acc[int(power)] = acc.get(int(power), 0) + int(coeff)
        self._terms = tuple(sorted((p, c) for p, c in acc.items() if c))

    @classmethod
    def zero(cls) -> "XiSum":
        return cls()

    @property
    def terms(self) -> tuple[tuple[int, int], ...]:
        return self._terms

    def plus_power(self, power: int) -> "XiSum":
        return XiSum(list(self._terms) + [(power, 1)])

    def __add__(self, other: "XiSum") -> "XiSum":
        return XiSum(list(self._terms) + list(other._terms))

    def shifted(self, k: int) -> "XiSum":
        """Multiply by xi**k."""
        return XiSum([(p + k, c) for p, c in self._terms])

    def value(self, xi: float) -> float:
        return sum(c * xi**p for p, c in self._terms)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, XiSum) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._terms)

    def __repr__(self) -> str:
        return f"XiSum({list(self._terms)!r})"


class XiPower(NamedTuple):
    """Length xi**(-exponent) of a prototile in a fixed-scale patch."""

    exponent: int

    def value(self, xi: float) -> float:
        return xi ** (-self.exponent)


ExactPosition = Union[PositionVector, XiSum]
ExactLength = Union[LengthExponent, XiPower]


@dataclass(frozen=True)
class Tile:
    """One tile: exact position and length plus their evaluated floats.

    ``label`` is None for multiscale tiles and a 1-based prototile index
    for fixed-scale patches.
    """

    position: ExactPosition
    length: ExactLength
    position_value: float
    length_value: float
    label: int | None = None


@dataclass(frozen=True)
class Patch:
    """A finite, contiguous, left-to-right run of tiles."""

    tiles: tuple[Tile, ...]
    support: tuple[float, float]
    info: Mapping[str, object] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not self.tiles:
            raise ParameterError("a patch must contain at least one tile")
        vals = [t.position_value for t in self.tiles]
        if any(y <= x for x, y in zip(vals, vals[1:])):
            raise ParameterError("tile positions must be strictly increasing")

    def __len__(self) -> int:
        return len(self.tiles)

    def positions(self) -> tuple[float, ...]:
        return tuple(t.position_value for t in self.tiles)

    def lengths(self) -> tuple[float, ...]:
        return tuple(t.length_value for t in self.tiles)

    def labels(self) -> tuple[int | None, ...]:
        return tuple(t.label for t in self.tiles)

    def boundaries(self) -> tuple[float, ...]:
        """All tile boundaries, including the right edge of the support."""
        return self.positions() + (self.support[1],)


@dataclass(frozen=True)
class PointSet:
    """A strictly increasing finite point sequence with its observation window."""

    points: tuple[float, ...]
    window: tuple[float, float]

    def __post_init__(self) -> None:
        if self.window[0] > self.window[1]:
            raise ParameterError("window must be an interval")
        pts = self.points
        if any(y <= x for x, y in zip(pts, pts[1:])):
            raise ParameterError("points must be strictly increasing")

    @classmethod
    def from_iterable(
        cls, points: Iterable[float], window: tuple[float, float] | None = None
    ) -> "PointSet":
        pts = tuple(sorted(set(float(p) for p in points)))
        if window is None:
            window = (pts[0], pts[-1]) if pts else (0.0, 0.0)
        return cls(pts, window)

    def __len__(self) -> int:
        return len(self.points)

    def nearest_distance(self, x: float) -> float:
        """Distance from x to the nearest point, inf for an empty set."""
        pts = self.points
        if not pts:
            return math.inf
        i = bisect.bisect_left(pts, x)
        best = math.inf
        if i < len(pts):
            best = pts[i] - x
        if i > 0:
            best = min(best, x - pts[i - 1])
        return best
