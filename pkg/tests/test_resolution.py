import pytest

from singulator.errors import (
    NonIsolatedSingularityError,
    ResolutionError,
    SingularityError,
    UnknownDivisorError,
    WeightError,
)
from singulator.poly import parse_poly
from singulator.resolution import (
    ResolutionTree,
    check_ample,
    embedded_resolution,
    find_ample_weights,
    make_separating,
    to_dot,
)

XY = ["x", "y"]


def resolve(text):
    return embedded_resolution(parse_poly(text, XY))


def numerical_data(tree):
    return sorted((d.m, d.a) for d in tree.divisors)


def by_multiplicity(tree, m):
    matches = [d for d in tree.divisors if d.m == m]
    assert len(matches) == 1
    return matches[0]


def test_cusp_resolution():
    tree = resolve("x^2 + y^3")
    assert numerical_data(tree) == [(2, 1), (3, 2), (6, 4)]
    central = by_multiplicity(tree, 6)
    assert central.strict_points == 1
    assert {tree.divisor(j).m for j in central.adjacent} == {2, 3}
    assert by_multiplicity(tree, 2).strict_points == 0
    assert sorted(d.self_intersection for d in tree.divisors) == [-3, -2, -1]


def test_first_divisor_is_origin_blowup():
    tree = resolve("x^2 + y^3")
    assert tree.divisor(tree.first_blowup_id).m == 2


def test_node_single_divisor_two_strict_points():
    tree = resolve("x^2 + y^2")
    assert numerical_data(tree) == [(2, 1)]
    assert tree.divisors[0].strict_points == 2
    assert tree.divisors[0].self_intersection == -1


def test_split_node_counts_rational_branches():
    tree = resolve("x^2 - y^2")
    assert numerical_data(tree) == [(2, 1)]
    assert tree.branches == 2


def test_e6_resolution():
    tree = resolve("x^3 + y^4")
    assert numerical_data(tree) == [(3, 1), (4, 2), (8, 4), (12, 6)]
    assert by_multiplicity(tree, 12).strict_points == 1
    assert min(tree.multiplicities()) == 3


def test_four_lines_single_divisor():
    tree = resolve("x*y*(x - y)*(x - 2*y)")
    assert numerical_data(tree) == [(4, 1)]
    assert tree.branches == 4


def test_smooth_input_one_blowup():
    tree = resolve("y - x^2")
    assert numerical_data(tree) == [(1, 1)]
    assert tree.branches == 1


def test_intersection_matrix_negative_definite():
    for text in ["x^2 + y^3", "x^3 + y^4", "x^3 + y^5", "x^2*y + y^4"]:
        tree = resolve(text)
        assert tree.is_negative_definite()
        assert tree.is_connected()


def test_non_isolated_rejected():
    with pytest.raises(NonIsolatedSingularityError):
        resolve("x^2*y")


def test_three_variables_rejected():
    with pytest.raises(SingularityError):
        embedded_resolution(parse_poly("x^2 + y^2 + z^2", ["x", "y", "z"]))


def test_non_rational_center_is_reported():
    # tangent cone (x^2 - 2 y^2)^2: the two centers lie over Q(sqrt 2)
    with pytest.raises(ResolutionError) as exc:
        resolve("(x^2 - 2*y^2)^2 + y^5")
    assert exc.value.center_polynomial is not None


def test_unknown_divisor():
    with pytest.raises(UnknownDivisorError):
        resolve("x^2 + y^3").divisor(99)


@pytest.mark.parametrize("m", [2, 6])
def test_make_separating_keeps_cusp_when_already_separating(m):
    tree = resolve("x^2 + y^3")
    assert tree.is_separating(m)
    assert make_separating(tree, m) == tree


def test_make_separating_refines_cusp_for_m_12():
    tree = resolve("x^2 + y^3")
    refined = make_separating(tree, 12)
    assert len(refined.divisors) > len(tree.divisors)
    assert refined.is_separating(12)
    for i, j in refined.edges():
        assert refined.divisor(i).m + refined.divisor(j).m > 12
    assert refined.branches == tree.branches


def test_ample_weights():
    node = resolve("x^2 + y^2")
    assert find_ample_weights(node) == [1]
    cusp = resolve("x^2 + y^3")
    weights = find_ample_weights(cusp)
    assert check_ample(cusp, weights)
    assert dict(zip((d.m for d in cusp.divisors), weights)) == {2: 4, 3: 6, 6: 11}


def test_check_ample_rejects_bad_weights():
    cusp = resolve("x^2 + y^3")
    assert not check_ample(cusp, [1, 1, 1])
    assert not check_ample(cusp, [4, 6])


def test_find_ample_weights_raises_for_indefinite_graph():
    tree = ResolutionTree.from_dict({
        "first_blowup_id": 1,
        "divisors": [
            {"id": 1, "m": 1, "a": 1, "self_intersection": 1, "adjacent": [], "strict_points": 1},
        ],
    })
    with pytest.raises(WeightError):
        find_ample_weights(tree)


def test_dict_round_trip_and_dot():
    tree = resolve("x^2 + y^3")
    assert ResolutionTree.from_dict(tree.to_dict()) == tree
    dot = to_dot(tree)
    assert dot.startswith("graph resolution {")
    assert dot.count(" -- ") == 3
    assert "shape=box" in dot


def test_ample_weights_for_singular_matrix():
    tree = ResolutionTree.from_dict({
        "first_blowup_id": 1,
        "divisors": [
            {"id": 1, "m": 1, "a": 1, "self_intersection": -1, "adjacent": [2], "strict_points": 0},
            {"id": 2, "m": 1, "a": 1, "self_intersection": -1, "adjacent": [1], "strict_points": 1},
        ],
    })
    assert not tree.is_negative_definite()
    with pytest.raises(WeightError):
        find_ample_weights(tree)


@pytest.mark.parametrize("text", ["x^3 + y^5", "x^2*y + y^4"])
def test_ample_weights_survive_refinement(text):
    refined = make_separating(resolve(text), 30)
    assert refined.is_negative_definite()
    weights = find_ample_weights(refined)
    assert check_ample(refined, weights)
    assert all(isinstance(w, int) for w in weights)
