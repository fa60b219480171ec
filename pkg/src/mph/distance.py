"""Matching distances between persistence diagrams and their global lift.

``delta`` is the cornerpoint metric: the cheaper of moving one point onto
the other and retracting both onto the diagonal.  ``bottleneck`` is the
exact matching distance over diagonal-augmented diagrams, computed by a
binary search over candidate costs with bipartite-matching feasibility
tests.  ``multidim_distance`` evaluates weighted slice distances on a
grid of foliation leaves; every sampled value is a certified lower bound
for the global matching distance, and the maximum over the grid is
reported as such, never as the distance itself.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import foliation
from .foliation import AdmissiblePair
from .matching import maximum_matching
from .persistence import (
    DiagramPoint,
    PersistenceDiagram,
    _degree_diagram,
)
from .simplicial import MeasuringFunction, SimplicialComplex, _check_pair

#: a cornerpoint for distance queries: (birth, death), death may be inf
Cornerpoint = tuple[float, float]


def _coords(p) -> Cornerpoint:
    if isinstance(p, DiagramPoint):
        return (p.birth, p.death)
    birth, death = p
    return (float(birth), float(death))


def delta(p, q) -> float:
    """Cornerpoint metric.

    For finite points: min of the coordinatewise sup distance and the
    cost of retracting both points to the diagonal (the larger of the
    half-persistences).  Two points with infinite death compare by birth;
    a finite and an infinite point are infinitely far apart.
    """
    b1, d1 = _coords(p)
    b2, d2 = _coords(q)
    inf1, inf2 = math.isinf(d1), math.isinf(d2)
    if inf1 and inf2:
        return abs(b1 - b2)
    if inf1 or inf2:
        return math.inf
    return min(max(abs(b1 - b2), abs(d1 - d2)), max((d1 - b1) / 2.0, (d2 - b2) / 2.0))


def _expand(d: PersistenceDiagram) -> tuple[list[Cornerpoint], list[float]]:
    """Finite points (multiplicity-expanded) and sorted essential births."""
    finite: list[Cornerpoint] = []
    essential: list[float] = []
    for point in d.points:
        for _ in range(point.multiplicity):
            if point.essential:
                essential.append(point.birth)
            else:
                finite.append((point.birth, point.death))
    essential.sort()
    return finite, essential


def _feasible(eps: float, cross, half1, half2) -> bool:
    """Perfect matching test on the diagonal-augmented bipartite graph.

    Left side: the finite points of the first diagram then one diagonal
    copy per point of the second; right side symmetric.  A real-real edge
    needs delta <= eps, a real-diagonal edge needs half-persistence <= eps,
    diagonal-diagonal edges are free.
    """
    n1, n2 = len(half1), len(half2)
    adjacency: list[list[int]] = []
    for i in range(n1):
        row = [j for j in range(n2) if cross[i][j] <= eps]
        if half1[i] <= eps:
            row.append(n2 + i)
        adjacency.append(row)
    diag_targets = list(range(n2, n2 + n1))
    for j in range(n2):
        row = list(diag_targets)
        if half2[j] <= eps:
            row.append(j)
        adjacency.append(row)
    return maximum_matching(adjacency, n1 + n2) == n1 + n2


def _finite_bottleneck(pts1: list[Cornerpoint], pts2: list[Cornerpoint]) -> float:
    if not pts1 and not pts2:
        return 0.0
    half1 = [(d - b) / 2.0 for b, d in pts1]
    half2 = [(d - b) / 2.0 for b, d in pts2]
    cross = [[delta(p, q) for q in pts2] for p in pts1]
    candidates = {0.0}
    candidates.update(half1)
    candidates.update(half2)
    for row in cross:
        candidates.update(row)
    ordered = sorted(candidates)
    lo, hi = 0, len(ordered) - 1
    if not _feasible(ordered[hi], cross, half1, half2):  # cannot happen: all to diagonal
        return math.inf
    while lo < hi:
        mid = (lo + hi) // 2
        if _feasible(ordered[mid], cross, half1, half2):
            hi = mid
        else:
            lo = mid + 1
    return ordered[lo]


def bottleneck(d1: PersistenceDiagram, d2: PersistenceDiagram) -> float:
    """Exact matching distance between two diagrams of the same degree.

    Finite points match each other at cost ``delta`` or retract to the
    diagonal at half their persistence; points with infinite death must
    pair with each other by birth, so the result is infinite when the two
    diagrams disagree on the number of such classes.
    """
    if d1.degree != d2.degree:
        raise ValueError(f"degree mismatch: {d1.degree} vs {d2.degree}")
    fin1, ess1 = _expand(d1)
    fin2, ess2 = _expand(d2)
    if len(ess1) != len(ess2):
        return math.inf
    essential_cost = max((abs(a - b) for a, b in zip(ess1, ess2)), default=0.0)
    return max(essential_cost, _finite_bottleneck(fin1, fin2))


@dataclass(frozen=True)
class SliceSample:
    """One leaf of the grid with its slice distance and weighted value."""

    pair: AdmissiblePair
    distance: float
    weight: float
    weighted: float


@dataclass(frozen=True)
class DistanceEstimate:
    """Sampled weighted slice distances and the resulting lower bound.

    ``lower_bound`` is the maximum weighted sample.  It bounds the global
    matching distance from below; it is not the distance itself.
    """

    degree: int
    samples: tuple[SliceSample, ...]
    lower_bound: float

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "samples": [
                {
                    "l": list(s.pair.direction),
                    "b": list(s.pair.offset),
                    "d": "inf" if math.isinf(s.distance) else s.distance,
                    "weight": s.weight,
                    "weighted": "inf" if math.isinf(s.weighted) else s.weighted,
                }
                for s in self.samples
            ],
            "lower_bound": "inf" if math.isinf(self.lower_bound) else self.lower_bound,
        }

    def to_csv(self, precision: int = 12) -> str:
        n = self.samples[0].pair.dimension if self.samples else 0
        header = (
            [f"l{j + 1}" for j in range(n)]
            + [f"b{j + 1}" for j in range(n)]
            + ["d", "weight", "weighted"]
        )
        rows = [",".join(header)]
        for s in self.samples:
            cells = [f"{x:.{precision}g}" for x in s.pair.direction]
            cells += [f"{x:.{precision}g}" for x in s.pair.offset]
            cells += [
                "inf" if math.isinf(s.distance) else f"{s.distance:.{precision}g}",
                f"{s.weight:.{precision}g}",
                "inf" if math.isinf(s.weighted) else f"{s.weighted:.{precision}g}",
            ]
            rows.append(",".join(cells))
        return "\n".join(rows) + "\n"


def _evaluate_slice(args) -> SliceSample:
    KX, fX, KY, fY, degree, pair, field_prime = args
    dX = _degree_diagram(KX, foliation.reduce(fX, pair), degree, field_prime)
    dY = _degree_diagram(KY, foliation.reduce(fY, pair), degree, field_prime)
    d = bottleneck(dX, dY)
    weight = pair.weight
    return SliceSample(pair, d, weight, weight * d)


def multidim_distance(
    KX: SimplicialComplex,
    fX: MeasuringFunction,
    KY: SimplicialComplex,
    fY: MeasuringFunction,
    degree: int,
    pairs: Sequence[AdmissiblePair],
    field_prime: int = 2,
    jobs: int = 1,
) -> DistanceEstimate:
    """Weighted slice distances over a grid of leaves, with the max.

    Each sample is min_j direction_j times the slice bottleneck distance,
    one term of the supremum defining the global matching distance, so
    every sample (and hence ``lower_bound``) is a valid lower bound.
    Slices are independent; ``jobs`` > 1 evaluates them in parallel
    without changing the output or its order.
    """
    _check_pair(KX, fX)
    _check_pair(KY, fY)
    if fX.dimension != fY.dimension:
        raise ValueError("measuring functions must have equal dimension")
    if not pairs:
        raise ValueError("empty slice grid")
    for pair in pairs:
        if pair.dimension != fX.dimension:
            raise ValueError("grid pair dimension does not match the functions")
    work = [(KX, fX, KY, fY, degree, pair, field_prime) for pair in pairs]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            samples = list(pool.map(_evaluate_slice, work))
    else:
        samples = [_evaluate_slice(item) for item in work]
    lower = max(s.weighted for s in samples)
    return DistanceEstimate(degree, tuple(samples), lower)


def component_distance(
    KX: SimplicialComplex,
    fX: MeasuringFunction,
    KY: SimplicialComplex,
    fY: MeasuringFunction,
    degree: int,
    component: int,
    field_prime: int = 2,
) -> float:
    """Slice distance of one shared component, treated as a scalar function.

    ``component`` is 1-based.  Componentwise distances bound the global
    matching distance from below but can be strictly smaller: pairs of
    spaces exist whose components are indistinguishable while the vector
    filtration separates them.
    """
    _check_pair(KX, fX)
    _check_pair(KY, fY)
    if fX.dimension != fY.dimension:
        raise ValueError("measuring functions must have equal dimension")
    if not 1 <= component <= fX.dimension:
        raise ValueError(
            f"component index {component} out of range 1..{fX.dimension}"
        )
    gX = fX.component(component - 1)
    gY = fY.component(component - 1)
    return bottleneck(
        _degree_diagram(KX, gX, degree, field_prime),
        _degree_diagram(KY, gY, degree, field_prime),
    )


@dataclass(frozen=True)
class StabilityReport:
    """Outcome of one perturbation bound check on a fixed leaf."""

    epsilon: float
    bound: float
    distance: float
    ok: bool


def stability_check(
    K: SimplicialComplex,
    f1: MeasuringFunction,
    f2: MeasuringFunction,
    pair: AdmissiblePair,
    degree: int,
    field_prime: int = 2,
) -> StabilityReport:
    """Check the perturbation bound on one leaf.

    With epsilon the largest sup-norm difference of the two functions at
    any vertex, the slice distance is bounded by epsilon divided by the
    smallest direction component.  ``ok`` allows 1e-9 slack for rounding.
    """
    _check_pair(K, f1)
    _check_pair(K, f2)
    if f1.dimension != f2.dimension:
        raise ValueError("measuring functions must have equal dimension")
    epsilon = 0.0
    for row1, row2 in zip(f1.values, f2.values):
        epsilon = max(epsilon, max(abs(a - b) for a, b in zip(row1, row2)))
    bound = epsilon / pair.weight
    d = bottleneck(
        _degree_diagram(K, foliation.reduce(f1, pair), degree, field_prime),
        _degree_diagram(K, foliation.reduce(f2, pair), degree, field_prime),
    )
    return StabilityReport(epsilon, bound, d, d <= bound + 1e-9)


def estimate_over_degrees(
    KX: SimplicialComplex,
    fX: MeasuringFunction,
    KY: SimplicialComplex,
    fY: MeasuringFunction,
    degrees: Iterable[int],
    pairs: Sequence[AdmissiblePair],
    field_prime: int = 2,
    jobs: int = 1,
) -> dict[int, DistanceEstimate]:
    return {
        degree: multidim_distance(
            KX, fX, KY, fY, degree, pairs, field_prime=field_prime, jobs=jobs
        )
        for degree in degrees
    }


def max_over_degrees(estimates: Iterable[DistanceEstimate]) -> float:
    """Aggregate lower bound: the max over the computed degree range."""
    return max((e.lower_bound for e in estimates), default=0.0)
