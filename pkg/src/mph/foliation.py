"""Half-plane slicing of the parameter domain of a vector filtration.

The open set of parameter pairs (lower, upper) with lower strictly below
upper is foliated by half-planes, each determined by a unit direction
with strictly positive components and an offset vector summing to zero.
Along one leaf, the vector sublevel filtration of f equals the scalar
sublevel filtration of

    g(P) = max_j (f_j(P) - offset_j) / direction_j,

which is what :func:`reduce` computes.  Grids of leaves produced by
:func:`slice_grid` drive sampled lower bounds for the global matching
distance.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .simplicial import MeasuringFunction, ParameterPoint, ScalarFiltration

#: tolerance for the unit-norm and zero-sum invariants at construction
CONSTRUCTION_TOL = 1e-12
#: tolerance for round-trip identities (leaf through a point and back)
ROUNDTRIP_TOL = 1e-10


@dataclass(frozen=True)
class AdmissiblePair:
    """A foliation leaf: unit positive direction plus sum-zero offset."""

    direction: tuple[float, ...]
    offset: tuple[float, ...]

    def __post_init__(self):
        n = len(self.direction)
        if n < 1 or len(self.offset) != n:
            raise ValueError("direction and offset must be non-empty vectors of equal length")
        if min(self.direction) <= 0:
            raise ValueError("non-positive direction component")
        norm = math.sqrt(sum(x * x for x in self.direction))
        if abs(norm - 1.0) > CONSTRUCTION_TOL:
            raise ValueError(f"direction norm {norm} differs from 1 beyond tolerance")
        if abs(sum(self.offset)) > CONSTRUCTION_TOL:
            raise ValueError("offset components do not sum to zero within tolerance")

    @property
    def dimension(self) -> int:
        return len(self.direction)

    @property
    def weight(self) -> float:
        """Smallest direction component; weights slice distances."""
        return min(self.direction)

    def to_json(self) -> dict:
        return {"l": list(self.direction), "b": list(self.offset)}

    @classmethod
    def from_json(cls, obj: dict) -> "AdmissiblePair":
        return cls(tuple(float(x) for x in obj["l"]), tuple(float(x) for x in obj["b"]))


@dataclass(frozen=True)
class SlicePoint:
    """A point (lo, hi) with lo < hi on the leaf of an admissible pair."""

    pair: AdmissiblePair
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("slice parameters must satisfy lo < hi")


def make_admissible(direction: Sequence[float], offset: Sequence[float]) -> AdmissiblePair:
    """Normalize a raw direction/offset into an admissible pair.

    The direction is scaled to unit length; the offset is projected onto
    the sum-zero hyperplane (its canonical representative).  Applying the
    function to an already admissible pair reproduces it.
    """
    if len(direction) != len(offset) or not direction:
        raise ValueError("direction and offset must be non-empty vectors of equal length")
    if min(direction) <= 0:
        raise ValueError("non-positive direction component")
    norm = math.sqrt(sum(x * x for x in direction))
    mean = sum(offset) / len(offset)
    return AdmissiblePair(
        tuple(x / norm for x in direction),
        tuple(x - mean for x in offset),
    )


def pair_through(p: ParameterPoint) -> SlicePoint:
    """The unique leaf and parameters through a parameter point.

    Writing d = upper - lower (strictly positive), the leaf direction is
    d normalized, and lo, hi are fixed by requiring the leaf to hit the
    point: lower = lo * direction + offset, upper = hi * direction + offset.
    """
    diff = [b - a for a, b in zip(p.lower, p.upper)]
    norm = math.sqrt(sum(x * x for x in diff))
    direction = [x / norm for x in diff]
    total = sum(direction)
    lo = sum(p.lower) / total
    hi = sum(p.upper) / total
    offset = [a - lo * d for a, d in zip(p.lower, direction)]
    mean = sum(offset) / len(offset)  # re-center; rounding can leave ~1e-16
    pair = AdmissiblePair(tuple(direction), tuple(x - mean for x in offset))
    return SlicePoint(pair, lo, hi)


def plane_point(sp: SlicePoint) -> ParameterPoint:
    """Inverse of :func:`pair_through`: the parameter point on the leaf."""
    lower = tuple(sp.lo * d + b for d, b in zip(sp.pair.direction, sp.pair.offset))
    upper = tuple(sp.hi * d + b for d, b in zip(sp.pair.direction, sp.pair.offset))
    return ParameterPoint(lower, upper)


def reduce(f: MeasuringFunction, pair: AdmissiblePair) -> ScalarFiltration:
    """Collapse a vector function to the scalar one of a leaf.

    g(P) = max_j (f_j(P) - offset_j) / direction_j.  The sublevel set of
    g at s is exactly the vector sublevel of f at s*direction + offset.
    """
    if f.dimension != pair.dimension:
        raise ValueError(
            f"function dimension {f.dimension} does not match pair dimension {pair.dimension}"
        )
    d, b = pair.direction, pair.offset
    return ScalarFiltration(
        tuple(max((row[j] - b[j]) / d[j] for j in range(f.dimension)) for row in f.values)
    )


def _chebyshev_interior(count: int) -> list[float]:
    """Chebyshev abscissae in (-1, 1), ascending; exact 0 at the middle node."""
    nodes = []
    for k in range(1, count + 1):
        c = math.cos(math.pi * (2 * k - 1) / (2 * count))
        if abs(c) < 1e-15:
            c = 0.0
        nodes.append(c)
    return sorted(nodes)


def _offsets_1d(count: int, radius: float) -> list[float]:
    if count == 1:
        return [0.0]
    return [-radius + 2.0 * radius * i / (count - 1) for i in range(count)]


def slice_grid(
    n: int,
    directions: int = 1,
    offsets: int = 1,
    offset_radius: float = 0.0,
) -> list[AdmissiblePair]:
    """Deterministic grid of leaves for sampling the global distance.

    For n = 2 the directions are (cos t, sin t) at Chebyshev-interior
    points of (0, pi/2) and the offsets are (a, -a) with a equally spaced
    in [-offset_radius, offset_radius]; the single-point grid is the
    central leaf.  For n = 1 the grid is the unique admissible pair.  For
    n > 2 directions come from a hyperspherical-angle grid interior to
    the positive orthant and offsets from a grid in the sum-zero
    hyperplane; both are truncated to the requested counts.

    Directions avoid the orthant boundary: components of a direction must
    stay strictly positive and the slice weight vanishes there anyway.
    """
    if n < 1:
        raise ValueError("dimension must be at least 1")
    if directions < 1:
        raise ValueError("need at least one direction")
    if offsets < 1 or offsets % 2 == 0:
        raise ValueError("offset count must be odd and at least 1")
    if offset_radius < 0:
        raise ValueError("offset radius must be non-negative")

    if n == 1:
        return [AdmissiblePair((1.0,), (0.0,))]

    if n == 2:
        quarter = math.pi / 4.0
        thetas = [quarter + quarter * c for c in _chebyshev_interior(directions)]
        pairs = []
        for theta in thetas:
            direction = make_admissible((math.cos(theta), math.sin(theta)), (0.0, 0.0)).direction
            for a in _offsets_1d(offsets, offset_radius):
                pairs.append(AdmissiblePair(direction, (a, -a if a else 0.0)))
        return pairs

    # n > 2: product grids, truncated deterministically to the requested counts.
    per_axis = 1
    while per_axis ** (n - 1) < directions:
        per_axis += 1
    quarter = math.pi / 4.0
    axis_angles = [quarter + quarter * c for c in _chebyshev_interior(per_axis)]
    direction_list: list[tuple[float, ...]] = []

    def spherical(angles: Sequence[float]) -> tuple[float, ...]:
        comps = []
        sin_prod = 1.0
        for t in angles:
            comps.append(sin_prod * math.cos(t))
            sin_prod *= math.sin(t)
        comps.append(sin_prod)
        return tuple(comps)

    def walk(prefix: list[float]) -> None:
        if len(direction_list) >= directions:
            return
        if len(prefix) == n - 1:
            direction_list.append(make_admissible(spherical(prefix), (0.0,) * n).direction)
            return
        for t in axis_angles:
            walk(prefix + [t])

    walk([])

    per_axis_off = 1
    while per_axis_off ** (n - 1) < offsets:
        per_axis_off += 2  # keep odd so the zero offset is on the grid
    basis = [
        tuple((1.0 if k == i else 0.0) - (1.0 if k == i + 1 else 0.0) for k in range(n))
        for i in range(n - 1)
    ]
    coords = _offsets_1d(per_axis_off, offset_radius / 2.0)
    # enumerate coordinate tuples nearest to zero first so truncation keeps 0
    coord_tuples: list[tuple[float, ...]] = []

    def walk_off(prefix: list[float]) -> None:
        if len(prefix) == n - 1:
            coord_tuples.append(tuple(prefix))
            return
        for c in coords:
            walk_off(prefix + [c])

    walk_off([])
    coord_tuples.sort(key=lambda cs: (sum(abs(c) for c in cs), cs))
    offset_list = []
    for cs in coord_tuples[:offsets]:
        vec = [0.0] * n
        for c, bv in zip(cs, basis):
            for k in range(n):
                vec[k] += c * bv[k]
        mean = sum(vec) / n
        offset_list.append(tuple(x - mean for x in vec))

    return [AdmissiblePair(d, b) for d in direction_list for b in offset_list]


def default_offset_radius(*functions: MeasuringFunction) -> float:
    """Half the largest per-component value range across the functions.

    Offsets beyond the data range produce slices whose diagrams repeat
    nearer slices, so this is the natural sampling radius.
    """
    largest = 0.0
    for f in functions:
        for j in range(f.dimension):
            column = [row[j] for row in f.values]
            if column:
                largest = max(largest, max(column) - min(column))
    return largest / 2.0
