import math
import random

import pytest
from pytest import approx

from mph import (
    MeasuringFunction,
    ParameterPoint,
    ScalarFiltration,
    SimplicialComplex,
    diagram,
    homological_critical_values,
    multidim_rank,
    rank_at,
    rank_oracle,
    restricted_diagram,
)
from mph.persistence import (
    DiagramPoint,
    PersistenceDiagram,
    diagram_from_json,
    diagram_to_json,
    diagrams_to_csv,
    filtration_order,
    reduction_pairs,
)

from conftest import random_complex, random_measuring, random_parameter_point

ROOT2 = math.sqrt(2.0)


def points(d):
    return [(p.birth, p.death, p.multiplicity) for p in d.points]


def test_single_vertex():
    K = SimplicialComplex.from_simplices(1, [])
    ds = diagram(K, ScalarFiltration((0.0,)), max_degree=0)
    assert points(ds[0]) == [(0.0, math.inf, 1)]


def test_hollow_triangle_is_a_circle():
    K = SimplicialComplex.from_simplices(3, [(0, 1), (1, 2), (0, 2)])
    ds = diagram(K, ScalarFiltration((0.0, 0.0, 0.0)), max_degree=1)
    assert points(ds[0]) == [(0.0, math.inf, 1)]
    assert points(ds[1]) == [(0.0, math.inf, 1)]


def test_cube_central_slice_diagrams(cube_central):
    deg0, deg1, deg2 = cube_central
    assert points(deg1) == []
    assert len(deg0.points) == 2
    finite = [p for p in deg0.points if not p.essential]
    assert len(finite) == 1
    assert finite[0].birth == approx(0.0)
    assert finite[0].death == approx(ROOT2, abs=0.02)
    assert points(deg2) == [(approx(ROOT2, abs=0.02), math.inf, 1)]


def test_sphere_central_slice_diagrams(sphere_central):
    deg0, deg1, deg2 = sphere_central
    finite = [p for p in deg0.points if not p.essential]
    assert [(p.birth, p.death) for p in finite] == [(approx(0.0), approx(1.0, abs=0.02))]
    assert points(deg1) == [(approx(1.0, abs=0.02), approx(ROOT2, abs=0.02), 3)]
    assert points(deg2) == [(approx(ROOT2, abs=0.02), math.inf, 1)]


def test_rank_at_cube_table(cube_central):
    deg0 = cube_central[0]
    assert rank_at(deg0, 0.5, 1.0) == 2
    assert rank_at(deg0, 0.5, 1.5) == 1
    assert rank_at(deg0, -0.5, 0.5) == 0
    with pytest.raises(ValueError):
        rank_at(deg0, 1.0, 1.0)


def test_rank_at_monotone(sphere_central):
    deg0 = sphere_central[0]
    ts = [0.2, 0.6, 0.9, 1.1, 1.5]
    ranks_in_t = [rank_at(deg0, 0.1, t) for t in ts]
    assert ranks_in_t == sorted(ranks_in_t, reverse=True)
    ss = [0.0, 0.3, 0.7]
    ranks_in_s = [rank_at(deg0, s, 1.2) for s in ss]
    assert ranks_in_s == sorted(ranks_in_s)


def test_multidim_rank_on_sphere(sphere):
    K, f, _ = sphere
    p = ParameterPoint((0.3, 0.3), (0.6, 0.6))
    assert multidim_rank(K, f, p, 0) == 2


def test_multidim_rank_empty_sublevel():
    K = SimplicialComplex.from_simplices(3, [(0, 1, 2)])
    f = MeasuringFunction.from_rows(2, [(1.0, 1.0)] * 3)
    p = ParameterPoint((-1.0, -1.0), (-0.5, -0.5))
    assert multidim_rank(K, f, p, 0) == 0
    assert rank_oracle(K, f, p, 0) == 0


def test_rank_oracle_identity_map_counts_homology():
    # upper and lower thresholds straddle no vertex: rank = dim H_i
    K = SimplicialComplex.from_simplices(3, [(0, 1), (1, 2), (0, 2)])
    f = MeasuringFunction.from_rows(2, [(0.0, 0.0)] * 3)
    p = ParameterPoint((0.5, 0.5), (0.6, 0.6))
    assert rank_oracle(K, f, p, 0) == 1
    assert rank_oracle(K, f, p, 1) == 1


def test_rank_oracle_merging_components():
    # two vertices alive early, the connecting edge only in the upper stage
    K = SimplicialComplex.from_simplices(2, [(0, 1)])
    f = MeasuringFunction.from_rows(1, [(0.0,), (0.5,)])
    p = ParameterPoint((0.6,), (1.0,))  # A = B = everything
    assert rank_oracle(K, f, p, 0) == 1
    p = ParameterPoint((0.2,), (1.0,))  # A = one vertex
    assert rank_oracle(K, f, p, 0) == 1
    assert multidim_rank(K, f, p, 0) == 1


def test_slice_rank_equals_oracle_smoke():
    rng = random.Random(31)
    for trial in range(60):
        n = 2 if trial % 2 == 0 else 3
        K = random_complex(rng)
        f = random_measuring(rng, K.vertex_count, n)
        p = random_parameter_point(rng, n)
        for degree in range(3):
            assert multidim_rank(K, f, p, degree) == rank_oracle(K, f, p, degree)


def test_homological_critical_values_cube(cube_central):
    values = homological_critical_values(cube_central)
    assert len(values) == 2
    assert values[0][0] == approx(0.0)
    assert values[0][1] == (0,)
    assert values[1][0] == approx(ROOT2, abs=0.02)
    assert values[1][1] == (0, 2)


def test_homological_critical_values_sphere(sphere_central):
    values = homological_critical_values(sphere_central)
    assert [v for v, _ in values] == approx([0.0, 1.0, ROOT2], abs=0.02)
    assert [ds for _, ds in values] == [(0,), (0, 1), (1, 2)]


def test_homological_critical_values_empty():
    assert homological_critical_values([]) == []


def test_restricted_diagram_trivial_threshold(torus):
    K, f, _ = torus
    height, depth = f.component(0), f.component(1)
    full = diagram(K, height, max_degree=2)
    assert restricted_diagram(K, height, depth, 10.0, max_degree=2) == full


def test_torus_unrestricted_degree1_birth_at_two(torus):
    K, f, _ = torus
    ds = diagram(K, f.component(0), max_degree=2)
    births = sorted(p.birth for p in ds[1].points)
    assert births == approx([-2.0, 2.0], abs=0.05)
    assert all(p.essential for p in ds[1].points)


def test_torus_restricted_degree0_cornerpoint(torus):
    K, f, _ = torus
    ds = restricted_diagram(K, f.component(0), f.component(1), 1.0, max_degree=0)
    finite = [p for p in ds[0].points if not p.essential]
    hit = [
        p for p in finite
        if abs(p.birth - (-1.0)) <= 0.05 and abs(p.death - 2.0) <= 0.05
    ]
    assert hit, f"no cornerpoint near (-1, 2) in {points(ds[0])}"


def test_reduction_bookkeeping():
    # every simplex is consumed exactly once: 2 * pairs + essential = total
    rng = random.Random(37)
    for _ in range(30):
        K = random_complex(rng)
        g = ScalarFiltration(tuple(rng.uniform(0, 1) for _ in range(K.vertex_count)))
        order, pairs, essential = reduction_pairs(K, g)
        assert 2 * len(pairs) + len(essential) == len(K.simplices)
        euler_from_classes = sum(
            (-1) ** (len(order.simplices[j]) - 1) for j in essential
        )
        assert euler_from_classes == K.euler_characteristic()


def test_scalar_diagram_stability_on_fixed_complex():
    # perturbing vertex values by eps moves each diagram by at most eps
    from mph import bottleneck

    rng = random.Random(41)
    for _ in range(25):
        K = random_complex(rng, max_vertices=10)
        g1 = ScalarFiltration(tuple(rng.uniform(0, 1) for _ in range(K.vertex_count)))
        wiggle = rng.uniform(0.0, 0.3)
        g2 = ScalarFiltration(
            tuple(x + rng.uniform(-wiggle, wiggle) for x in g1.vertex_values)
        )
        eps = max(
            (abs(a - b) for a, b in zip(g1.vertex_values, g2.vertex_values)),
            default=0.0,
        )
        ds1 = diagram(K, g1)
        ds2 = diagram(K, g2)
        for d1, d2 in zip(ds1, ds2):
            assert bottleneck(d1, d2) <= eps + 1e-12


def test_filtration_order_is_face_respecting(cube):
    K, f, _ = cube
    g = f.component(0)
    order = filtration_order(K, g)  # validates in the constructor
    assert len(order.simplices) == len(K.simplices)
    position = {s: i for i, s in enumerate(order.simplices)}
    edge = next(s for s in K.simplices if len(s) == 2)
    assert position[(edge[0],)] < position[edge]


def test_odd_prime_field_agrees_on_surfaces(torus):
    K, f, _ = torus
    height = f.component(0)
    assert diagram(K, height, max_degree=2, field_prime=3) == diagram(
        K, height, max_degree=2, field_prime=2
    )


def test_non_prime_field_rejected():
    K = SimplicialComplex.from_simplices(1, [])
    with pytest.raises(ValueError, match="prime"):
        diagram(K, ScalarFiltration((0.0,)), max_degree=0, field_prime=4)


def test_max_degree_clamped_with_warning():
    K = SimplicialComplex.from_simplices(2, [(0, 1)])
    with pytest.warns(RuntimeWarning, match="clamp"):
        ds = diagram(K, ScalarFiltration((0.0, 0.0)), max_degree=5)
    assert len(ds) == 2


def test_zero_persistence_pairs_dropped():
    K = SimplicialComplex.from_simplices(2, [(0, 1)])
    ds = diagram(K, ScalarFiltration((0.0, 0.0)), max_degree=1)
    assert points(ds[0]) == [(0.0, math.inf, 1)]
    assert points(ds[1]) == []


def test_diagram_json_and_csv_round_trip(sphere_central):
    for d in sphere_central:
        assert diagram_from_json(diagram_to_json(d)) == d
    csv = diagrams_to_csv(sphere_central)
    assert csv.splitlines()[0] == "degree,birth,death,mult"
    assert any(",inf," in line for line in csv.splitlines())


def test_diagram_invariants():
    with pytest.raises(ValueError, match="birth"):
        DiagramPoint(1.0, 1.0)
    with pytest.raises(ValueError, match="merged"):
        PersistenceDiagram(0, (DiagramPoint(0, 1), DiagramPoint(0, 1)))
