"""One-parameter persistent homology over a prime field.

Simplices are ordered by (filtration value, dimension, vertex tuple) and
the boundary matrix is reduced by the standard kill-youngest column
algorithm with a pivot cache.  Diagrams record births and deaths per
degree; ranks of the inclusion-induced maps between sublevel homologies
are read off the diagrams.  Multiparameter ranks are evaluated two ways:
through the slicing reduction (:func:`multidim_rank`) and directly from
the two-stage filtration of the nested sublevel pair
(:func:`rank_oracle`); the two must agree on every input.
"""
from __future__ import annotations

import math
import warnings
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from . import foliation
from .simplicial import (
    MeasuringFunction,
    ParameterPoint,
    ScalarFiltration,
    Simplex,
    SimplicialComplex,
    _check_filtration,
    _check_pair,
    restrict,
)


@dataclass(frozen=True)
class DiagramPoint:
    """A cornerpoint: birth strictly below death (possibly infinite)."""

    birth: float
    death: float
    multiplicity: int = 1

    def __post_init__(self):
        if not self.birth < self.death:
            raise ValueError("birth must be strictly below death")
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")

    @property
    def essential(self) -> bool:
        return math.isinf(self.death)


@dataclass(frozen=True)
class PersistenceDiagram:
    """Multiset of cornerpoints of one homology degree.

    Points with identical coordinates are merged into a multiplicity;
    zero-persistence pairs never appear.
    """

    degree: int
    points: tuple[DiagramPoint, ...]

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("degree must be non-negative")
        coords = [(p.birth, p.death) for p in self.points]
        if len(set(coords)) != len(coords):
            raise ValueError("points with identical coordinates must be merged")
        if list(coords) != sorted(coords):
            raise ValueError("points must be sorted by (birth, death)")

    def total_multiplicity(self) -> int:
        return sum(p.multiplicity for p in self.points)


@dataclass(frozen=True)
class FiltrationOrder:
    """Simplices in filtration order with their values.

    Values are non-decreasing and every face precedes its cofaces; ties
    break by dimension then lexicographic vertex tuple, which keeps
    diagrams deterministic.
    """

    simplices: tuple[Simplex, ...]
    values: tuple[float, ...]

    def __post_init__(self):
        if len(self.simplices) != len(self.values):
            raise ValueError("one value per simplex required")
        position = {s: i for i, s in enumerate(self.simplices)}
        previous = -math.inf
        for i, (s, val) in enumerate(zip(self.simplices, self.values)):
            if val < previous:
                raise ValueError("filtration values must be non-decreasing")
            previous = val
            if len(s) > 1:
                for facet in combinations(s, len(s) - 1):
                    if position.get(facet, len(self.simplices)) > i:
                        raise ValueError(f"face {facet} does not precede {s}")


def filtration_order(K: SimplicialComplex, g: ScalarFiltration) -> FiltrationOrder:
    _check_filtration(K, g)
    valued = [(g.simplex_value(s), len(s), s) for s in K.simplices]
    valued.sort()
    return FiltrationOrder(
        tuple(s for _, _, s in valued), tuple(v for v, _, _ in valued)
    )


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def reduction_pairs(
    K: SimplicialComplex,
    g: ScalarFiltration,
    field_prime: int = 2,
    dim_cap: int | None = None,
) -> tuple[FiltrationOrder, list[tuple[int, int]], list[int]]:
    """Run the column reduction; return (order, pairs, essential positions).

    Pairs are (creator position, destroyer position); essential positions
    are creators never killed.  With ``dim_cap`` set, simplices of higher
    dimension are skipped, which cannot change pairs in degrees below the
    cap (column operations never mix dimensions).
    """
    if not _is_prime(field_prime):
        raise ValueError(f"field parameter {field_prime} is not prime")
    order = filtration_order(K, g)
    position = {s: i for i, s in enumerate(order.simplices)}
    pairs: list[tuple[int, int]] = []
    processed: list[int] = []
    pivot_owner: dict[int, int] = {}

    if field_prime == 2:
        stored: dict[int, set[int]] = {}
        for j, s in enumerate(order.simplices):
            if dim_cap is not None and len(s) - 1 > dim_cap:
                continue
            processed.append(j)
            col = (
                {position[f] for f in combinations(s, len(s) - 1)}
                if len(s) > 1
                else set()
            )
            while col:
                pivot = max(col)
                owner = pivot_owner.get(pivot)
                if owner is None:
                    break
                col ^= stored[owner]
            if col:
                pivot = max(col)
                pivot_owner[pivot] = j
                stored[j] = col
                pairs.append((pivot, j))
    else:
        p = field_prime
        stored_mod: dict[int, dict[int, int]] = {}
        for j, s in enumerate(order.simplices):
            if dim_cap is not None and len(s) - 1 > dim_cap:
                continue
            processed.append(j)
            col: dict[int, int] = {}
            if len(s) > 1:
                for idx in range(len(s)):
                    facet = s[:idx] + s[idx + 1 :]
                    col[position[facet]] = 1 if idx % 2 == 0 else p - 1
            while col:
                pivot = max(col)
                owner = pivot_owner.get(pivot)
                if owner is None:
                    break
                owner_col = stored_mod[owner]
                factor = (col[pivot] * pow(owner_col[pivot], p - 2, p)) % p
                for row, coeff in owner_col.items():
                    value = (col.get(row, 0) - factor * coeff) % p
                    if value:
                        col[row] = value
                    elif row in col:
                        del col[row]
            if col:
                pivot = max(col)
                pivot_owner[pivot] = j
                stored_mod[j] = col
                pairs.append((pivot, j))

    killed = {i for i, _ in pairs}
    destroyers = {j for _, j in pairs}
    essential = [j for j in processed if j not in killed and j not in destroyers]
    return order, pairs, essential


def diagram(
    K: SimplicialComplex,
    g: ScalarFiltration,
    max_degree: int | None = None,
    field_prime: int = 2,
) -> list[PersistenceDiagram]:
    """Persistence diagrams of the sublevel filtration, degrees 0..max_degree.

    For every s < t, the number of points with birth <= s and death > t
    (multiplicity counted, infinite deaths included) is the rank of the
    inclusion-induced map from the sublevel at s to the sublevel at t.
    """
    _check_filtration(K, g)
    dim = K.dim
    if not K.simplices:
        return []
    if max_degree is None:
        max_degree = dim
    if max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    if max_degree > dim:
        warnings.warn(
            f"max_degree {max_degree} exceeds complex dimension {dim}; clamping",
            RuntimeWarning,
            stacklevel=2,
        )
        max_degree = dim
    order, pairs, essential = reduction_pairs(
        K, g, field_prime=field_prime, dim_cap=max_degree + 1
    )
    buckets: list[Counter] = [Counter() for _ in range(max_degree + 1)]
    for creator, destroyer in pairs:
        degree = len(order.simplices[creator]) - 1
        if degree <= max_degree:
            birth, death = order.values[creator], order.values[destroyer]
            if birth < death:
                buckets[degree][(birth, death)] += 1
    for creator in essential:
        degree = len(order.simplices[creator]) - 1
        if degree <= max_degree:
            buckets[degree][(order.values[creator], math.inf)] += 1
    return [
        PersistenceDiagram(
            d,
            tuple(
                DiagramPoint(birth, death, mult)
                for (birth, death), mult in sorted(bucket.items())
            ),
        )
        for d, bucket in enumerate(buckets)
    ]


def rank_at(d: PersistenceDiagram, s: float, t: float) -> int:
    """Rank of the sublevel inclusion map at (s, t): births <= s, deaths > t."""
    if not s < t:
        raise ValueError("rank query requires s < t")
    return sum(p.multiplicity for p in d.points if p.birth <= s and p.death > t)


def _degree_diagram(
    K: SimplicialComplex,
    g: ScalarFiltration,
    degree: int,
    field_prime: int = 2,
) -> PersistenceDiagram:
    """Diagram of one degree; empty when the degree exceeds the dimension."""
    if degree <= K.dim:
        return diagram(K, g, max_degree=degree, field_prime=field_prime)[degree]
    return PersistenceDiagram(degree, ())


def multidim_rank(
    K: SimplicialComplex,
    f: MeasuringFunction,
    p: ParameterPoint,
    degree: int,
    field_prime: int = 2,
) -> int:
    """Rank of the vector-sublevel inclusion, via the slicing reduction.

    Routes the query through the unique leaf containing the parameter
    point and evaluates the scalar diagram there; the result equals the
    rank of the map induced by the inclusion of the sublevel of f at
    ``p.lower`` into the one at ``p.upper``.
    """
    _check_pair(K, f)
    if degree < 0:
        raise ValueError("degree must be non-negative")
    if p.dimension != f.dimension:
        raise ValueError("parameter point dimension does not match the function")
    sp = foliation.pair_through(p)
    g = foliation.reduce(f, sp.pair)
    d = _degree_diagram(K, g, degree, field_prime=field_prime)
    return rank_at(d, sp.lo, sp.hi)


def rank_oracle(
    K: SimplicialComplex,
    f: MeasuringFunction,
    p: ParameterPoint,
    degree: int,
    field_prime: int = 2,
) -> int:
    """Rank of the vector-sublevel inclusion, computed directly.

    Builds the nested pair of full subcomplexes A (below ``p.lower``) and
    B (below ``p.upper``), filters B in two stages with A first, and
    counts the degree classes born in the A stage that survive through
    B.  No leaf or scalar reduction is involved, so this serves as an
    independent check of :func:`multidim_rank`.
    """
    _check_pair(K, f)
    if degree < 0:
        raise ValueError("degree must be non-negative")
    if p.dimension != f.dimension:
        raise ValueError("parameter point dimension does not match the function")
    in_b = [
        v
        for v, row in enumerate(f.values)
        if all(x <= t for x, t in zip(row, p.upper))
    ]
    if not in_b:
        return 0
    sub = restrict(K, in_b)
    stage = ScalarFiltration(
        tuple(
            0.0
            if all(x <= t for x, t in zip(f.values[v], p.lower))
            else 1.0
            for v in in_b
        )
    )
    d = _degree_diagram(sub, stage, degree, field_prime=field_prime)
    return rank_at(d, 0.0, 1.0)


def homological_critical_values(
    diagrams: Iterable[PersistenceDiagram],
) -> list[tuple[float, tuple[int, ...]]]:
    """Finite births and deaths, each with the degrees it occurs in.

    For a simplexwise filtration these are exactly the values where some
    inclusion-induced map between sublevels fails to be an isomorphism in
    one of the computed degrees.  Values are grouped by exact equality.
    """
    found: dict[float, set[int]] = {}
    for d in diagrams:
        for point in d.points:
            found.setdefault(point.birth, set()).add(d.degree)
            if not point.essential:
                found.setdefault(point.death, set()).add(d.degree)
    return [(value, tuple(sorted(found[value]))) for value in sorted(found)]


def restricted_diagram(
    K: SimplicialComplex,
    primary: ScalarFiltration,
    auxiliary: ScalarFiltration,
    threshold: float,
    max_degree: int | None = None,
    field_prime: int = 2,
) -> list[PersistenceDiagram]:
    """Diagrams of ``primary`` on the auxiliary sublevel at ``threshold``.

    Restricting to a sublevel of a second function can lower the degree
    in which a level of the primary function changes homology, e.g. a
    level seen only by degree 1 on the whole complex can become a
    degree-0 merge on the restriction.
    """
    _check_filtration(K, primary)
    _check_filtration(K, auxiliary)
    kept = [v for v, x in enumerate(auxiliary.vertex_values) if x <= threshold]
    sub = restrict(K, kept)
    values = ScalarFiltration(tuple(primary.vertex_values[v] for v in kept))
    return diagram(sub, values, max_degree=max_degree, field_prime=field_prime)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def diagram_to_json(d: PersistenceDiagram) -> dict:
    return {
        "degree": d.degree,
        "points": [
            {
                "birth": p.birth,
                "death": "inf" if p.essential else p.death,
                "mult": p.multiplicity,
            }
            for p in d.points
        ],
    }


def diagram_from_json(obj: dict) -> PersistenceDiagram:
    points = []
    for entry in obj["points"]:
        death = entry["death"]
        death = math.inf if death == "inf" else float(death)
        points.append(DiagramPoint(float(entry["birth"]), death, int(entry["mult"])))
    points.sort(key=lambda p: (p.birth, p.death))
    return PersistenceDiagram(int(obj["degree"]), tuple(points))


def diagrams_to_csv(diagrams: Iterable[PersistenceDiagram], precision: int = 12) -> str:
    rows = ["degree,birth,death,mult"]
    for d in diagrams:
        for p in d.points:
            death = "inf" if p.essential else f"{p.death:.{precision}g}"
            rows.append(f"{d.degree},{p.birth:.{precision}g},{death},{p.multiplicity}")
    return "\n".join(rows) + "\n"
