"""Deterministic mesh generators for the built-in example surfaces.

All generators place the homologically critical points of the built-in
measuring functions exactly on mesh vertices, so the diagrams of the
example pipelines hit their reference values at machine precision
instead of degrading with resolution:

- the cube boundary keeps the face centers and face frames on-grid
  (even resolutions put (0, 0, +-1) on the mesh exactly),
- the sphere is a subdivided octahedron projected to the unit sphere;
  each octahedron face is pre-split along the median from its equatorial
  edge midpoint to its polar vertex, so the diagonal meridians through
  (+-sqrt2/2, +-sqrt2/2, 0) are edge paths at every level and the two
  polar caps of the max filtration meet exactly at those saddles,
- the torus grid contains the angles realizing (0, 0, +-2) and
  (0, 0, +-3).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .simplicial import MeasuringFunction, SimplicialComplex

Coord = tuple[float, float, float]

KINDS = ("cube_boundary", "sphere", "ellipse", "torus")

MIN_RESOLUTION = {"cube_boundary": 1, "sphere": 1, "ellipse": 8, "torus": 8}

DEFAULT_RESOLUTION = {"cube_boundary": 16, "sphere": 4, "ellipse": 128, "torus": 48}

MEASURING_KINDS = ("abs_uv", "z_negz", "ellipse_phi", "ellipse_psi")


@dataclass(frozen=True)
class ShapeSpec:
    """Shape kind plus resolution; torus radii default to 2.5 and 0.5.

    Resolution meaning per kind: cube_boundary = squares per face edge,
    sphere = octahedron subdivision level, ellipse = vertex count, torus
    = major angle count (the minor count is half of it, at least 8).
    """

    kind: str
    resolution: int | None = None
    major_radius: float = 2.5
    minor_radius: float = 0.5

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown shape kind {self.kind!r}")
        if self.resolution is None:
            object.__setattr__(self, "resolution", DEFAULT_RESOLUTION[self.kind])
        if self.resolution < MIN_RESOLUTION[self.kind]:
            raise ValueError(
                f"resolution {self.resolution} below minimum "
                f"{MIN_RESOLUTION[self.kind]} for {self.kind}"
            )
        if self.kind == "torus" and not 0 < self.minor_radius < self.major_radius:
            raise ValueError("torus radii must satisfy 0 < minor < major")


def generate(spec: ShapeSpec) -> tuple[SimplicialComplex, tuple[Coord, ...]]:
    """Build the mesh and the vertex coordinates."""
    if spec.kind == "cube_boundary":
        return _cube_boundary(spec.resolution)
    if spec.kind == "sphere":
        return _sphere(spec.resolution)
    if spec.kind == "ellipse":
        return _ellipse(spec.resolution)
    return _torus(spec.resolution, max(8, spec.resolution // 2),
                  spec.major_radius, spec.minor_radius)


def _cube_boundary(k: int) -> tuple[SimplicialComplex, tuple[Coord, ...]]:
    index: dict[tuple[int, int, int], int] = {}
    coords: list[Coord] = []

    def vid(a: int, b: int, c: int) -> int:
        key = (a, b, c)
        if key not in index:
            index[key] = len(coords)
            coords.append((-1.0 + 2.0 * a / k, -1.0 + 2.0 * b / k, -1.0 + 2.0 * c / k))
        return index[key]

    triangles: list[tuple[int, ...]] = []

    def face(corner: Callable[[int, int], int]) -> None:
        for i in range(k):
            for j in range(k):
                v00 = corner(i, j)
                v10 = corner(i + 1, j)
                v01 = corner(i, j + 1)
                v11 = corner(i + 1, j + 1)
                triangles.append(tuple(sorted((v00, v10, v11))))
                triangles.append(tuple(sorted((v00, v11, v01))))

    face(lambda i, j: vid(0, i, j))
    face(lambda i, j: vid(k, i, j))
    face(lambda i, j: vid(i, 0, j))
    face(lambda i, j: vid(i, k, j))
    face(lambda i, j: vid(i, j, 0))
    face(lambda i, j: vid(i, j, k))
    return SimplicialComplex.from_simplices(len(coords), triangles), tuple(coords)


def _normalized(x: float, y: float, z: float) -> Coord:
    norm = math.sqrt(x * x + y * y + z * z)
    return (x / norm, y / norm, z / norm)


def _sphere(levels: int) -> tuple[SimplicialComplex, tuple[Coord, ...]]:
    coords: list[Coord] = [
        (1.0, 0.0, 0.0), (-1.0, 0.0, 0.0),
        (0.0, 1.0, 0.0), (0.0, -1.0, 0.0),
        (0.0, 0.0, 1.0), (0.0, 0.0, -1.0),
    ]
    midpoint: dict[tuple[int, int], int] = {}

    def mid(a: int, b: int) -> int:
        key = (a, b) if a < b else (b, a)
        if key not in midpoint:
            pa, pb = coords[a], coords[b]
            midpoint[key] = len(coords)
            coords.append(_normalized(
                (pa[0] + pb[0]) / 2.0, (pa[1] + pb[1]) / 2.0, (pa[2] + pb[2]) / 2.0
            ))
        return midpoint[key]

    # Median pre-split: the descending directions at the equatorial
    # saddles of the max filtration must be edge paths of the mesh.
    faces = []
    for pole in (4, 5):
        for ea, eb in ((0, 2), (2, 1), (1, 3), (3, 0)):
            m = mid(ea, eb)
            faces.append(tuple(sorted((ea, m, pole))))
            faces.append(tuple(sorted((m, eb, pole))))
    for _ in range(levels):
        refined = []
        for a, b, c in faces:
            ab, bc, ac = mid(a, b), mid(b, c), mid(a, c)
            refined.extend([
                tuple(sorted((a, ab, ac))),
                tuple(sorted((b, ab, bc))),
                tuple(sorted((c, ac, bc))),
                tuple(sorted((ab, bc, ac))),
            ])
        faces = refined
    return SimplicialComplex.from_simplices(len(coords), faces), tuple(coords)


def _ellipse(m: int) -> tuple[SimplicialComplex, tuple[Coord, ...]]:
    coords = []
    for i in range(m):
        theta = 2.0 * math.pi * i / m
        s = math.sin(theta)
        coords.append((math.cos(theta), s, s))
    edges = [tuple(sorted((i, (i + 1) % m))) for i in range(m)]
    return SimplicialComplex.from_simplices(m, edges), tuple(coords)


def _torus(
    major_count: int, minor_count: int, major_radius: float, minor_radius: float
) -> tuple[SimplicialComplex, tuple[Coord, ...]]:
    coords = []
    for i in range(major_count):
        alpha = 2.0 * math.pi * i / major_count
        for j in range(minor_count):
            beta = 2.0 * math.pi * j / minor_count
            rho = major_radius + minor_radius * math.cos(beta)
            coords.append((
                minor_radius * math.sin(beta),
                rho * math.cos(alpha),
                rho * math.sin(alpha),
            ))

    def vid(i: int, j: int) -> int:
        return (i % major_count) * minor_count + (j % minor_count)

    triangles = []
    for i in range(major_count):
        for j in range(minor_count):
            v00 = vid(i, j)
            v10 = vid(i + 1, j)
            v01 = vid(i, j + 1)
            v11 = vid(i + 1, j + 1)
            triangles.append(tuple(sorted((v00, v10, v11))))
            triangles.append(tuple(sorted((v00, v11, v01))))
    return SimplicialComplex.from_simplices(len(coords), triangles), tuple(coords)


def measuring(
    kind: str,
    coords: Sequence[Coord],
    components: Sequence[Callable[[float, float, float], float]] | None = None,
) -> MeasuringFunction:
    """Built-in two-component functions on vertex coordinates.

    ``abs_uv`` is (|x|, |y|); ``z_negz`` is (z, -z); ``ellipse_phi`` is
    (x, z) and ``ellipse_psi`` is (y, z).  ``kind='custom'`` evaluates
    the given component callables at each vertex.
    """
    if kind == "custom":
        if not components:
            raise ValueError("custom measuring needs component callables")
        return MeasuringFunction.from_rows(
            len(components), [[fn(*c) for fn in components] for c in coords]
        )
    if kind == "abs_uv":
        rows = [(abs(x), abs(y)) for x, y, _ in coords]
    elif kind == "z_negz":
        rows = [(z, -z) for _, _, z in coords]
    elif kind == "ellipse_phi":
        rows = [(x, z) for x, _, z in coords]
    elif kind == "ellipse_psi":
        rows = [(y, z) for _, y, z in coords]
    else:
        raise ValueError(f"unknown measuring kind {kind!r}")
    return MeasuringFunction.from_rows(2, rows)
