import random

import pytest

from mph import MeasuringFunction, ParameterPoint, ShapeSpec, SimplicialComplex, generate, measuring
from mph.foliation import make_admissible, reduce as slice_reduce
from mph.persistence import diagram


def random_complex(rng: random.Random, max_vertices: int = 12, max_dim: int = 3) -> SimplicialComplex:
    vertex_count = rng.randint(1, max_vertices)
    top = []
    for _ in range(rng.randint(0, 2 * vertex_count)):
        size = rng.randint(1, min(max_dim + 1, vertex_count))
        top.append(tuple(sorted(rng.sample(range(vertex_count), size))))
    return SimplicialComplex.from_simplices(vertex_count, top)


def random_measuring(rng: random.Random, vertex_count: int, dimension: int) -> MeasuringFunction:
    return MeasuringFunction.from_rows(
        dimension,
        [[rng.uniform(0.0, 1.0) for _ in range(dimension)] for _ in range(vertex_count)],
    )


def random_parameter_point(rng: random.Random, dimension: int) -> ParameterPoint:
    lower = tuple(rng.uniform(-0.1, 0.9) for _ in range(dimension))
    upper = tuple(a + rng.uniform(0.01, 0.8) for a in lower)
    return ParameterPoint(lower, upper)


def random_admissible(rng: random.Random, dimension: int):
    direction = [rng.uniform(0.1, 2.0) for _ in range(dimension)]
    offset = [rng.uniform(-1.0, 1.0) for _ in range(dimension)]
    return make_admissible(direction, offset)


@pytest.fixture(scope="session")
def central_pair():
    return make_admissible((1.0, 1.0), (0.0, 0.0))


@pytest.fixture(scope="session")
def cube():
    complex_, coords = generate(ShapeSpec("cube_boundary"))
    return complex_, measuring("abs_uv", coords), coords


@pytest.fixture(scope="session")
def sphere():
    complex_, coords = generate(ShapeSpec("sphere"))
    return complex_, measuring("abs_uv", coords), coords


@pytest.fixture(scope="session")
def ellipse():
    complex_, coords = generate(ShapeSpec("ellipse"))
    return complex_, measuring("ellipse_phi", coords), measuring("ellipse_psi", coords)


@pytest.fixture(scope="session")
def torus():
    complex_, coords = generate(ShapeSpec("torus"))
    return complex_, measuring("z_negz", coords), coords


@pytest.fixture(scope="session")
def cube_central(cube, central_pair):
    complex_, f, _ = cube
    return diagram(complex_, slice_reduce(f, central_pair), max_degree=2)


@pytest.fixture(scope="session")
def sphere_central(sphere, central_pair):
    complex_, f, _ = sphere
    return diagram(complex_, slice_reduce(f, central_pair), max_degree=2)
