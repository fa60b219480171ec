"""Finite simplicial complexes carrying vertex-sampled functions.

The complex is abstract: a face-closed collection of simplices over
integer vertices 0..vertex_count-1.  Functions live on vertices; a
simplex inherits the maximum over its vertices, so every sublevel set is
a full subcomplex and nested sublevel sets form genuine filtrations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

Simplex = tuple[int, ...]

DEFAULT_MAX_DIM = 3

FORMAT_HEADER = "mph-complex 1"

JSON_VERSION = 1


class FormatError(ValueError):
    """Malformed complex file; carries the 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _canonical(simplices: Iterable[Simplex]) -> tuple[Simplex, ...]:
    return tuple(sorted(set(simplices), key=lambda s: (len(s), s)))


@dataclass(frozen=True)
class SimplicialComplex:
    """Face-closed finite abstract simplicial complex.

    ``simplices`` holds every simplex of every dimension as a strictly
    increasing vertex tuple, sorted by (dimension, lexicographic order).
    Construction validates face closure, vertex range, and that every
    vertex occurs as a 0-simplex; use :meth:`from_simplices` to build
    from top simplices with automatic face completion.
    """

    vertex_count: int
    simplices: tuple[Simplex, ...]

    def __post_init__(self):
        seen = set(self.simplices)
        if len(seen) != len(self.simplices):
            raise ValueError("duplicate simplices")
        for s in self.simplices:
            if not s or any(s[i] >= s[i + 1] for i in range(len(s) - 1)):
                raise ValueError(f"simplex {s} is not a strictly increasing tuple")
            if s[0] < 0 or s[-1] >= self.vertex_count:
                raise ValueError(f"vertex index out of range in simplex {s}")
            if len(s) > 1:
                for facet in combinations(s, len(s) - 1):
                    if facet not in seen:
                        raise ValueError(f"missing face {facet} of simplex {s}")
        for v in range(self.vertex_count):
            if (v,) not in seen:
                raise ValueError(f"vertex {v} does not occur as a 0-simplex")
        if self.simplices != _canonical(self.simplices):
            raise ValueError("simplices not in canonical (dimension, lex) order")

    @classmethod
    def from_simplices(
        cls,
        vertex_count: int,
        simplices: Iterable[Sequence[int]],
        max_dim: int = DEFAULT_MAX_DIM,
    ) -> "SimplicialComplex":
        """Build a complex from arbitrary simplices, completing all faces.

        Every vertex below ``vertex_count`` is included as a 0-simplex even
        if it occurs in no listed simplex.  Simplices of dimension above
        ``max_dim`` are rejected.
        """
        if vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        closed: set[Simplex] = {(v,) for v in range(vertex_count)}
        for raw in simplices:
            verts = tuple(sorted(raw))
            if len(set(verts)) != len(verts):
                raise ValueError(f"repeated vertex index in simplex {tuple(raw)}")
            if not verts:
                raise ValueError("empty simplex")
            if verts[0] < 0 or verts[-1] >= vertex_count:
                raise ValueError(f"vertex index out of range in simplex {verts}")
            if len(verts) - 1 > max_dim:
                raise ValueError(
                    f"simplex dimension {len(verts) - 1} exceeds supported maximum {max_dim}"
                )
            for size in range(1, len(verts) + 1):
                closed.update(combinations(verts, size))
        return cls(vertex_count, _canonical(closed))

    @property
    def dim(self) -> int:
        return max((len(s) for s in self.simplices), default=0) - 1

    def count(self, dim: int) -> int:
        """Number of simplices of the given dimension."""
        return sum(1 for s in self.simplices if len(s) == dim + 1)

    def euler_characteristic(self) -> int:
        return sum(1 if len(s) % 2 else -1 for s in self.simplices)

    def __contains__(self, simplex: Sequence[int]) -> bool:
        return tuple(simplex) in set(self.simplices)


@dataclass(frozen=True)
class MeasuringFunction:
    """Vector-valued function sampled at the vertices of a complex.

    ``values[v]`` is the length-``dimension`` tuple of components at
    vertex ``v``; all entries must be finite.
    """

    dimension: int
    values: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be a positive integer")
        for v, row in enumerate(self.values):
            if len(row) != self.dimension:
                raise ValueError(
                    f"vertex {v}: expected {self.dimension} components, got {len(row)}"
                )
            if any(not math.isfinite(x) for x in row):
                raise ValueError(f"vertex {v}: non-finite component")

    @classmethod
    def from_rows(cls, dimension: int, rows: Iterable[Sequence[float]]) -> "MeasuringFunction":
        return cls(dimension, tuple(tuple(float(x) for x in row) for row in rows))

    @property
    def vertex_count(self) -> int:
        return len(self.values)

    def component(self, index: int) -> "ScalarFiltration":
        """Scalar filtration of a single component (0-based index)."""
        if not 0 <= index < self.dimension:
            raise ValueError(f"component index {index} out of range")
        return ScalarFiltration(tuple(row[index] for row in self.values))


@dataclass(frozen=True)
class ScalarFiltration:
    """Per-vertex scalar values; a simplex takes the max over its vertices.

    The max rule makes the induced simplexwise values automatically
    monotone: every simplex evaluates at least as high as its faces.
    """

    vertex_values: tuple[float, ...]

    def __post_init__(self):
        if any(not math.isfinite(x) for x in self.vertex_values):
            raise ValueError("non-finite filtration value")

    @property
    def vertex_count(self) -> int:
        return len(self.vertex_values)

    def simplex_value(self, simplex: Sequence[int]) -> float:
        return max(self.vertex_values[v] for v in simplex)


@dataclass(frozen=True)
class ParameterPoint:
    """A pair (lower, upper) with lower strictly below upper componentwise."""

    lower: tuple[float, ...]
    upper: tuple[float, ...]

    def __post_init__(self):
        if len(self.lower) != len(self.upper) or not self.lower:
            raise ValueError("lower and upper must be non-empty vectors of equal length")
        if not all(a < b for a, b in zip(self.lower, self.upper)):
            raise ValueError("lower must be strictly below upper in every component")

    @property
    def dimension(self) -> int:
        return len(self.lower)


def _check_pair(K: SimplicialComplex, f: MeasuringFunction) -> None:
    if f.vertex_count != K.vertex_count:
        raise ValueError(
            f"function has {f.vertex_count} vertex rows, complex has {K.vertex_count} vertices"
        )


def _check_filtration(K: SimplicialComplex, g: ScalarFiltration) -> None:
    if g.vertex_count != K.vertex_count:
        raise ValueError(
            f"filtration has {g.vertex_count} values, complex has {K.vertex_count} vertices"
        )


def restrict(K: SimplicialComplex, vertices: Iterable[int]) -> SimplicialComplex:
    """Full subcomplex on the given vertices, reindexed in increasing order."""
    kept = sorted(set(vertices))
    index = {v: i for i, v in enumerate(kept)}
    sims = [
        tuple(index[v] for v in s)
        for s in K.simplices
        if all(v in index for v in s)
    ]
    return SimplicialComplex(len(kept), _canonical(sims))


def sublevel_vertices(f: MeasuringFunction, u: Sequence[float]) -> tuple[int, ...]:
    """Vertices whose function value is componentwise at most ``u``."""
    if len(u) != f.dimension:
        raise ValueError(f"threshold has {len(u)} components, function has {f.dimension}")
    return tuple(
        v for v, row in enumerate(f.values) if all(x <= t for x, t in zip(row, u))
    )


def sublevel_complex(
    K: SimplicialComplex, f: MeasuringFunction, u: Sequence[float]
) -> SimplicialComplex:
    """Full subcomplex spanned by vertices with f componentwise at most u."""
    _check_pair(K, f)
    return restrict(K, sublevel_vertices(f, u))


def vertices_at_most(g: ScalarFiltration, s: float) -> tuple[int, ...]:
    return tuple(v for v, x in enumerate(g.vertex_values) if x <= s)


def scalar_sublevel(K: SimplicialComplex, g: ScalarFiltration, s: float) -> SimplicialComplex:
    """Subcomplex of simplices with filtration value at most ``s``.

    Under the vertex-max rule this is the full subcomplex on the vertices
    with value at most ``s``, so for a filtration produced by the slicing
    reduction it coincides with the vector sublevel at the matching
    threshold.
    """
    _check_filtration(K, g)
    return restrict(K, vertices_at_most(g, s))


def connected_components(K: SimplicialComplex) -> int:
    """Number of connected components, by union-find over the edges."""
    parent = list(range(K.vertex_count))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for s in K.simplices:
        if len(s) == 2:
            ra, rb = find(s[0]), find(s[1])
            if ra != rb:
                parent[ra] = rb
    return sum(1 for v in range(K.vertex_count) if find(v) == v)


# ---------------------------------------------------------------------------
# File format
# ---------------------------------------------------------------------------

def load_pair(text: str, max_dim: int = DEFAULT_MAX_DIM) -> tuple[SimplicialComplex, MeasuringFunction]:
    """Parse the text format into a validated (complex, function) pair.

    Format: a ``mph-complex 1`` header, a ``vertices <V> dim <n>`` line,
    V rows of n values, a ``simplices <S>`` line, then S rows of vertex
    indices.  Faces of listed simplices are completed automatically.
    Blank lines and ``#`` comments are skipped.
    """
    lines = text.splitlines()
    pos = 0

    def next_content() -> tuple[str | None, int]:
        nonlocal pos
        while pos < len(lines):
            raw = lines[pos]
            pos += 1
            stripped = raw.strip()
            if stripped and not stripped.startswith("#"):
                return stripped, pos
        return None, pos

    line, ln = next_content()
    if line is None:
        raise FormatError("empty file", ln)
    if line != FORMAT_HEADER:
        raise FormatError(f"expected header {FORMAT_HEADER!r}", ln)

    line, ln = next_content()
    if line is None:
        raise FormatError("missing 'vertices <V> dim <n>' line", ln)
    parts = line.split()
    if len(parts) != 4 or parts[0] != "vertices" or parts[2] != "dim":
        raise FormatError("expected 'vertices <V> dim <n>'", ln)
    try:
        vertex_count, n = int(parts[1]), int(parts[3])
    except ValueError:
        raise FormatError("vertex count and dimension must be integers", ln) from None
    if vertex_count < 0 or n < 1:
        raise FormatError("need vertex count >= 0 and dimension >= 1", ln)

    rows: list[tuple[float, ...]] = []
    for _ in range(vertex_count):
        line, ln = next_content()
        if line is None or line.split()[0] == "simplices":
            raise FormatError(
                f"value row count mismatch: expected {vertex_count} rows, got {len(rows)}", ln
            )
        parts = line.split()
        if len(parts) != n:
            raise FormatError(
                f"dimension mismatch: expected {n} values, got {len(parts)}", ln
            )
        try:
            row = tuple(float(x) for x in parts)
        except ValueError:
            raise FormatError("malformed value", ln) from None
        if any(not math.isfinite(x) for x in row):
            raise FormatError("non-finite value", ln)
        rows.append(row)

    line, ln = next_content()
    if line is None:
        raise FormatError("missing 'simplices <S>' line", ln)
    parts = line.split()
    if len(parts) != 2 or parts[0] != "simplices":
        raise FormatError("expected 'simplices <S>'", ln)
    try:
        simplex_count = int(parts[1])
    except ValueError:
        raise FormatError("simplex count must be an integer", ln) from None

    listed: list[tuple[int, ...]] = []
    for _ in range(simplex_count):
        line, ln = next_content()
        if line is None:
            raise FormatError(
                f"simplex row count mismatch: expected {simplex_count} rows, got {len(listed)}",
                ln,
            )
        try:
            verts = tuple(int(x) for x in line.split())
        except ValueError:
            raise FormatError("malformed vertex index", ln) from None
        if not verts:
            raise FormatError("empty simplex row", ln)
        if len(set(verts)) != len(verts):
            raise FormatError("repeated vertex index in simplex", ln)
        if min(verts) < 0 or max(verts) >= vertex_count:
            raise FormatError("vertex index out of range", ln)
        listed.append(tuple(sorted(verts)))

    line, ln = next_content()
    if line is not None:
        raise FormatError("unexpected trailing content", ln)

    complex_ = SimplicialComplex.from_simplices(vertex_count, listed, max_dim=max_dim)
    return complex_, MeasuringFunction(n, tuple(rows))


def dump_pair(K: SimplicialComplex, f: MeasuringFunction) -> str:
    """Serialize to the text format; values keep full precision."""
    _check_pair(K, f)
    out = [FORMAT_HEADER, f"vertices {K.vertex_count} dim {f.dimension}"]
    out.extend(" ".join(repr(x) for x in row) for row in f.values)
    out.append(f"simplices {len(K.simplices)}")
    out.extend(" ".join(str(v) for v in s) for s in K.simplices)
    return "\n".join(out) + "\n"


def pair_to_json(K: SimplicialComplex, f: MeasuringFunction) -> dict:
    _check_pair(K, f)
    return {
        "version": JSON_VERSION,
        "n": f.dimension,
        "vertex_values": [list(row) for row in f.values],
        "simplices": [list(s) for s in K.simplices],
    }


def pair_from_json(obj: dict, max_dim: int = DEFAULT_MAX_DIM) -> tuple[SimplicialComplex, MeasuringFunction]:
    if obj.get("version") != JSON_VERSION:
        raise ValueError(f"unsupported version {obj.get('version')!r}")
    rows = [tuple(float(x) for x in row) for row in obj["vertex_values"]]
    K = SimplicialComplex.from_simplices(
        len(rows), [tuple(s) for s in obj["simplices"]], max_dim=max_dim
    )
    return K, MeasuringFunction(int(obj["n"]), tuple(rows))
