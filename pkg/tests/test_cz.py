import json
import math
import tempfile
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from singulator.cz import (
    Segment,
    SymplecticPath,
    concatenate,
    constant_path,
    cz_index,
    direct_sum,
    find_crossings,
    is_symplectic,
    parity_holds,
    reparameterized,
    rotation_path,
)
from singulator.errors import DegenerateCrossingError, InputError, PathMismatchError

TWO_PI = 2 * math.pi


def hyperbolic_path(duration):
    # J0 S = diag(-1, 1): A_t = diag(e^-t, e^t)
    generator = np.array([[0.0, 1.0], [1.0, 0.0]])
    return SymplecticPath(2, (Segment(generator, float(duration), np.eye(2)),))


def test_full_rotation_has_index_two():
    crossings = find_crossings(rotation_path(TWO_PI))
    assert [(c.kernel_dim, c.signature, c.endpoint) for c in crossings] == [(2, 2, True), (2, 2, True)]
    assert crossings[0].time == 0.0
    assert crossings[1].time == pytest.approx(TWO_PI)
    assert cz_index(rotation_path(TWO_PI)) == 2


def test_half_rotation():
    crossings = find_crossings(rotation_path(math.pi))
    assert len(crossings) == 1 and crossings[0].time == 0.0
    assert cz_index(rotation_path(math.pi)) == 1


def test_constant_nondegenerate_path():
    path = constant_path([[2.0, 0.0], [0.0, 0.5]])
    assert find_crossings(path) == []
    assert cz_index(path) == 0


def test_interior_touching_crossing_is_found():
    crossings = find_crossings(rotation_path(3 * math.pi))
    interior = [c for c in crossings if not c.endpoint]
    assert len(interior) == 1
    assert interior[0].time == pytest.approx(TWO_PI, abs=1e-6)
    assert cz_index(rotation_path(3 * math.pi)) == 3


def test_negative_rotation():
    assert cz_index(rotation_path(3.0, speed=-1.0)) == -1


def test_hyperbolic_path_has_index_zero():
    path = hyperbolic_path(1.0)
    assert cz_index(path) == 0
    assert parity_holds(path, cz_index(path))


def test_catenation_of_two_full_turns():
    first = rotation_path(TWO_PI)
    second = SymplecticPath(2, (Segment(np.eye(2), TWO_PI, first.end()),))
    assert cz_index(concatenate(first, second)) == 4


def test_direct_sum_of_full_turns():
    path = direct_sum(rotation_path(TWO_PI), rotation_path(TWO_PI))
    assert path.dimension == 4
    assert is_symplectic(path.end(), 1e-9)
    assert cz_index(path) == 4


def test_catenation_with_constant_tail():
    path = rotation_path(math.pi)
    tail = constant_path(path.end())
    assert cz_index(concatenate(path, tail)) == cz_index(path) + 0


def test_endpoint_mismatch():
    with pytest.raises(PathMismatchError):
        concatenate(rotation_path(math.pi), rotation_path(1.0))


def test_direct_sum_needs_same_segmentation():
    with pytest.raises(PathMismatchError):
        direct_sum(rotation_path(1.0), rotation_path(2.0))


def test_degenerate_crossing_is_refused():
    shear = SymplecticPath(2, (Segment(np.array([[1.0, 0.0], [0.0, 0.0]]), 1.0, np.eye(2)),))
    with pytest.raises(DegenerateCrossingError):
        cz_index(shear)


def test_path_from_json_file():
    spec = {"segments": [{"generator": [[1, 0], [0, 1]], "duration": "2*pi"}]}
    with tempfile.TemporaryDirectory() as d:
        p = Path(d) / "path.json"
        p.write_text(json.dumps(spec))
        path = SymplecticPath.from_json(p)
    assert path.duration == pytest.approx(TWO_PI)
    assert cz_index(path) == 2


def test_segments_continue_from_previous_end():
    path = SymplecticPath.from_segments([
        {"generator": [["1", "0"], ["0", "1"]], "duration": "pi"},
        {"generator": [[1, 0], [0, 1]], "duration": "pi"},
    ])
    assert cz_index(path) == 2


@pytest.mark.parametrize("segment,error", [
    ({"generator": [[1, 2], [0, 1]], "duration": 1}, InputError),
    ({"generator": [[1, 0], [0, 1]], "duration": 0}, InputError),
    ({"generator": [[1, 0], [0, 1]], "duration": 1, "start": [[2, 0], [0, 2]]}, InputError),
    ({"generator": [[1, 0, 0], [0, 1, 0], [0, 0, 1]], "duration": 1}, InputError),
])
def test_invalid_segments(segment, error):
    with pytest.raises(error):
        SymplecticPath.from_segments([segment])


def test_reparameterization_invariance():
    path = rotation_path(5.0, speed=1.5)
    assert cz_index(reparameterized(path, 3.0)) == cz_index(path)
    assert cz_index(reparameterized(path, 0.25)) == cz_index(path)


# ---------- axiom suite ----------

# angles c * d stay away from multiples of 2 pi
speeds = st.sampled_from([-3.0, -1.5, -1.0, -0.5, 0.5, 1.0, 1.5, 2.0, 3.0])
durations = st.sampled_from([1.0, 2.0, 3.0, 5.0, 7.0])


def expected_rotation_index(speed, duration):
    turns = math.floor(abs(speed) * duration / TWO_PI)
    return int(math.copysign(1 + 2 * turns, speed))


@settings(max_examples=50, deadline=None)
@given(speeds, durations)
def test_rotation_index_and_parity(speed, duration):
    path = rotation_path(duration, speed)
    index = cz_index(path)
    assert index == expected_rotation_index(speed, duration)
    assert parity_holds(path, index)


@settings(max_examples=50, deadline=None)
@given(speeds, durations, speeds, durations)
def test_catenation_additivity(s1, d1, s2, d2):
    first = rotation_path(d1, s1)
    second = SymplecticPath(2, (Segment(s2 * np.eye(2), d2, first.end()),))
    total = cz_index(concatenate(first, second))
    assert total == cz_index(first) + cz_index(second)
    if total.denominator == 1:
        assert parity_holds(concatenate(first, second), total) is not False


@settings(max_examples=50, deadline=None)
@given(speeds, speeds, durations)
def test_direct_sum_additivity_and_parity(s1, s2, duration):
    first, second = rotation_path(duration, s1), rotation_path(duration, s2)
    path = direct_sum(first, second)
    index = cz_index(path)
    assert index == cz_index(first) + cz_index(second)
    assert isinstance(index, Fraction)
    assert parity_holds(path, index)


# entries in {-1, 0, 1}: rotations, shears, hyperbolic and mixed generators
symmetric_generators = st.tuples(st.integers(-1, 1), st.integers(-1, 1), st.integers(-1, 1)).map(
    lambda e: [[e[0], e[1]], [e[1], e[2]]]
)
segment_durations = st.sampled_from([0.5, 1.0, 1.5, 2.5])


def single_segment(generator, duration, start=None):
    spec = {"generator": generator, "duration": duration}
    if start is not None:
        spec["start"] = start.tolist()
    return SymplecticPath.from_segments([spec])


@settings(max_examples=50, deadline=None)
@given(symmetric_generators, segment_durations, symmetric_generators, segment_durations)
def test_mixed_segments_catenation_and_parity(g1, d1, g2, d2):
    first = single_segment(g1, d1)
    second = single_segment(g2, d2, first.end())
    path = concatenate(first, second)
    try:
        parts = cz_index(first) + cz_index(second)
        total = cz_index(path)
    except DegenerateCrossingError:
        return
    assert total == parts
    if total.denominator == 1:
        assert parity_holds(path, total) is not False


@settings(max_examples=50, deadline=None)
@given(symmetric_generators, symmetric_generators, segment_durations)
def test_mixed_segments_direct_sum(g1, g2, duration):
    first, second = single_segment(g1, duration), single_segment(g2, duration)
    try:
        expected = cz_index(first) + cz_index(second)
        index = cz_index(direct_sum(first, second))
    except DegenerateCrossingError:
        return
    assert index == expected
