import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pytest import approx

from mph import MeasuringFunction, ParameterPoint, sublevel_complex, scalar_sublevel
from mph.foliation import (
    ROUNDTRIP_TOL,
    AdmissiblePair,
    SlicePoint,
    default_offset_radius,
    make_admissible,
    pair_through,
    plane_point,
    reduce as slice_reduce,
    slice_grid,
)

from conftest import random_admissible, random_complex, random_measuring

ROOT2_OVER_2 = math.sqrt(2.0) / 2.0

positive_vectors = st.lists(
    st.floats(min_value=0.01, max_value=50.0), min_size=1, max_size=5
)


def test_make_admissible_diagonal():
    pair = make_admissible((1.0, 1.0), (0.0, 0.0))
    assert pair.direction == approx((ROOT2_OVER_2, ROOT2_OVER_2))
    assert pair.offset == (0.0, 0.0)


def test_make_admissible_one_dimensional():
    pair = make_admissible((5.0,), (3.0,))
    assert pair.direction == (1.0,)
    assert pair.offset == (0.0,)


def test_make_admissible_rejects_nonpositive():
    with pytest.raises(ValueError, match="non-positive direction component"):
        make_admissible((1.0, -1.0), (0.0, 0.0))


def test_offset_projected_to_sum_zero():
    pair = make_admissible((1.0, 1.0), (3.0, 1.0))
    assert sum(pair.offset) == approx(0.0, abs=1e-12)
    assert pair.offset == approx((1.0, -1.0))


@given(positive_vectors, st.data())
@settings(max_examples=100)
def test_make_admissible_idempotent(direction, data):
    offset = data.draw(
        st.lists(
            st.floats(min_value=-10, max_value=10),
            min_size=len(direction),
            max_size=len(direction),
        )
    )
    pair = make_admissible(direction, offset)
    again = make_admissible(pair.direction, pair.offset)
    assert again.direction == approx(pair.direction, abs=1e-15)
    assert again.offset == approx(pair.offset, abs=1e-15)


def test_admissible_pair_invariants_enforced():
    with pytest.raises(ValueError, match="norm"):
        AdmissiblePair((1.0, 1.0), (0.0, 0.0))
    with pytest.raises(ValueError, match="sum to zero"):
        AdmissiblePair((1.0,), (1.0,))


def test_pair_through_diagonal_point():
    sp = pair_through(ParameterPoint((0.0, 0.0), (1.0, 1.0)))
    assert sp.pair.direction == approx((ROOT2_OVER_2, ROOT2_OVER_2))
    assert sp.pair.offset == approx((0.0, 0.0), abs=1e-15)
    assert sp.lo == approx(0.0, abs=1e-15)
    assert sp.hi == approx(math.sqrt(2.0))


def test_pair_through_one_dimensional_identity():
    sp = pair_through(ParameterPoint((-2.5,), (0.75,)))
    assert sp.pair.direction == (1.0,)
    assert sp.pair.offset == approx((0.0,), abs=1e-15)
    assert (sp.lo, sp.hi) == approx((-2.5, 0.75))


def test_pair_through_requires_strict_order():
    with pytest.raises(ValueError, match="strictly below"):
        ParameterPoint((0.0, 1.0), (1.0, 1.0))


def test_pair_through_reconstructs_its_input():
    rng = random.Random(101)
    for _ in range(1000):
        lower = tuple(rng.uniform(-5, 5) for _ in range(3))
        upper = tuple(a + rng.uniform(1e-3, 4) for a in lower)
        sp = pair_through(ParameterPoint(lower, upper))
        rebuilt = plane_point(sp)
        err = max(
            max(abs(a - b) for a, b in zip(rebuilt.lower, lower)),
            max(abs(a - b) for a, b in zip(rebuilt.upper, upper)),
        )
        assert err < ROUNDTRIP_TOL


def test_slice_point_round_trip():
    rng = random.Random(103)
    for _ in range(200):
        pair = random_admissible(rng, rng.choice((1, 2, 3)))
        lo = rng.uniform(-3, 3)
        sp = SlicePoint(pair, lo, lo + rng.uniform(1e-3, 5))
        again = pair_through(plane_point(sp))
        assert again.pair.direction == approx(pair.direction, abs=ROUNDTRIP_TOL)
        assert again.pair.offset == approx(pair.offset, abs=ROUNDTRIP_TOL)
        assert again.lo == approx(sp.lo, abs=ROUNDTRIP_TOL)
        assert again.hi == approx(sp.hi, abs=ROUNDTRIP_TOL)


def test_reduce_diagonal_is_scaled_max():
    f = MeasuringFunction.from_rows(2, [(0.3, 0.8), (0.5, 0.1), (0.0, 0.0)])
    pair = make_admissible((1.0, 1.0), (0.0, 0.0))
    g = slice_reduce(f, pair)
    for row, value in zip(f.values, g.vertex_values):
        assert value == approx(math.sqrt(2.0) * max(row))


def test_reduce_one_dimensional_identity():
    f = MeasuringFunction.from_rows(1, [(0.25,), (-1.5,), (3.0,)])
    g = slice_reduce(f, make_admissible((1.0,), (0.0,)))
    assert g.vertex_values == (0.25, -1.5, 3.0)


def test_reduce_worked_example():
    f = MeasuringFunction.from_rows(2, [(3.0, 1.0)])
    pair = AdmissiblePair((0.6, 0.8), (1.0, -1.0))
    g = slice_reduce(f, pair)
    assert g.vertex_values[0] == approx(10.0 / 3.0)


def test_reduce_dimension_mismatch():
    f = MeasuringFunction.from_rows(2, [(0.0, 0.0)])
    with pytest.raises(ValueError, match="does not match"):
        slice_reduce(f, make_admissible((1.0,), (0.0,)))


def test_slice_grid_center():
    (pair,) = slice_grid(2, 1, 1, 0.0)
    assert pair.direction == approx((ROOT2_OVER_2, ROOT2_OVER_2))
    assert pair.offset == (0.0, 0.0)


def test_slice_grid_counts_and_invariants():
    pairs = slice_grid(2, 2, 3, 1.0)
    assert len(pairs) == 6
    for pair in pairs:  # constructor re-validates the invariants
        assert min(pair.direction) > 0
        assert sum(x * x for x in pair.direction) == approx(1.0)
        assert sum(pair.offset) == approx(0.0, abs=1e-12)


def test_slice_grid_one_dimensional_is_a_point():
    assert slice_grid(1, 7, 5, 2.0) == [AdmissiblePair((1.0,), (0.0,))]


def test_slice_grid_higher_dimension():
    pairs = slice_grid(3, 5, 3, 1.0)
    assert len(pairs) == 15
    assert any(all(x == 0 for x in p.offset) for p in pairs)
    for pair in pairs:
        assert min(pair.direction) > 0


def test_slice_grid_validation():
    with pytest.raises(ValueError, match="odd"):
        slice_grid(2, 1, 2, 1.0)
    with pytest.raises(ValueError, match="direction"):
        slice_grid(2, 0, 1, 1.0)
    with pytest.raises(ValueError, match="radius"):
        slice_grid(2, 1, 1, -1.0)


def test_sublevel_identity_along_leaves():
    # scalar sublevels of the reduced function match vector sublevels of f
    rng = random.Random(107)
    for _ in range(200):
        n = rng.choice((2, 3))
        K = random_complex(rng)
        f = random_measuring(rng, K.vertex_count, n)
        pair = random_admissible(rng, n)
        s = rng.uniform(-0.5, 2.5)
        g = slice_reduce(f, pair)
        threshold = tuple(s * d + b for d, b in zip(pair.direction, pair.offset))
        assert scalar_sublevel(K, g, s) == sublevel_complex(K, f, threshold)


def test_scalar_sublevel_matches_vector_sublevel_for_scalar_input():
    rng = random.Random(109)
    for _ in range(50):
        K = random_complex(rng)
        f = random_measuring(rng, K.vertex_count, 1)
        g = slice_reduce(f, make_admissible((1.0,), (0.0,)))
        s = rng.uniform(-0.5, 1.5)
        assert scalar_sublevel(K, g, s) == sublevel_complex(K, f, (s,))


def test_default_offset_radius():
    f1 = MeasuringFunction.from_rows(2, [(0.0, 1.0), (2.0, 1.5)])
    f2 = MeasuringFunction.from_rows(2, [(0.5, -3.0), (0.5, 1.0)])
    assert default_offset_radius(f1, f2) == approx(2.0)  # widest range is 4
    assert default_offset_radius(f1) == approx(1.0)
