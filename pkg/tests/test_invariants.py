from fractions import Fraction

import pytest
import sympy

from singulator.errors import InconsistencyError, SingularityError
from singulator.invariants import (
    euler_open,
    fiber_topology,
    lct,
    lefschetz,
    lefschetz_from_zeta,
    lefschetz_sequence,
    monodromy_zeta_as_sympy,
    newton_oracle,
    zeta,
)
from singulator.local_algebra import milnor_number
from singulator.poly import parse_poly
from singulator.resolution import ResolutionTree, embedded_resolution, make_separating

XY = ["x", "y"]

CORPUS = [
    "x^2 + y^3",
    "x^2 + y^2",
    "x^2 + y^2*(1 + y)",
    "x^3 + y^4",
    "x*y*(x - y)*(x - 2*y)",
    "x^4 - y^4",
    "x^2 + y^5",
    "x^3 + y^5",
    "x^2*y + y^4",
]


def resolve(text):
    return embedded_resolution(parse_poly(text, XY))


def divisor_with(tree, m):
    return next(d for d in tree.divisors if d.m == m)


@pytest.mark.parametrize("text,expected", [
    ("x^2 + y^3", Fraction(5, 6)),
    ("x^2 + y^2", Fraction(1)),
    ("x^3 + y^4", Fraction(7, 12)),
    ("x*y*(x - y)*(x - 2*y)", Fraction(1, 2)),
    ("y - x^2", Fraction(1)),
])
def test_lct(text, expected):
    assert lct(resolve(text)) == expected


def test_euler_open():
    cusp = resolve("x^2 + y^3")
    assert euler_open(cusp, divisor_with(cusp, 6).id) == -1
    assert euler_open(cusp, divisor_with(cusp, 2).id) == 1
    node = resolve("x^2 + y^2")
    assert euler_open(node, node.divisors[0].id) == 0


def test_cusp_lefschetz_numbers():
    cusp = resolve("x^2 + y^3")
    assert lefschetz(cusp, 1) == 0
    assert lefschetz(cusp, 2) == 2
    assert lefschetz(cusp, 6) == -1


def test_lefschetz_needs_positive_iterate():
    with pytest.raises(ValueError):
        lefschetz(resolve("x^2 + y^3"), 0)


def test_cusp_lefschetz_matches_eigenvalue_oracle():
    # monodromy eigenvalues are the primitive 6th roots of unity
    cusp = resolve("x^2 + y^3")
    for m in range(1, 13):
        trace = 2 * sympy.cos(sympy.pi * m / 3)
        assert lefschetz(cusp, m) == 1 - trace


def test_cusp_zeta():
    z = zeta(resolve("x^2 + y^3"))
    assert z.as_dict() == {2: -1, 3: -1, 6: 1}
    t = sympy.Symbol("t")
    expected = (1 - t ** 6) / ((1 - t ** 2) * (1 - t ** 3))
    assert sympy.simplify(monodromy_zeta_as_sympy(z) - expected) == 0


def test_node_zeta_is_trivial():
    assert zeta(resolve("x^2 + y^2")).factors == ()


@pytest.mark.parametrize("text", CORPUS + ["y - x^2"])
def test_zeta_regenerates_lefschetz(text):
    tree = resolve(text)
    z = zeta(tree)
    for m in range(1, 4 * tree.lcm_multiplicity() + 1):
        assert lefschetz_from_zeta(z, m) == lefschetz(tree, m)


@pytest.mark.parametrize("text,mu,branches,euler,genus", [
    ("x^2 + y^3", 2, 1, -1, 1),
    ("x^2 + y^2", 1, 2, 0, 0),
    ("x^3 + y^4", 6, 1, -5, 3),
    ("y - x^2", 0, 1, 1, 0),
])
def test_fiber_topology(text, mu, branches, euler, genus):
    fiber = fiber_topology(resolve(text))
    assert (fiber.mu, fiber.branches, fiber.euler, fiber.genus) == (mu, branches, euler, genus)


def test_fiber_topology_detects_parity_errors():
    tree = ResolutionTree.from_dict({
        "first_blowup_id": 1,
        "divisors": [
            {"id": 1, "m": 2, "a": 1, "self_intersection": -1, "adjacent": [], "strict_points": 1},
        ],
    })
    with pytest.raises(InconsistencyError):
        fiber_topology(tree)


@pytest.mark.parametrize("text", CORPUS)
def test_fiber_mu_agrees_with_standard_basis(text):
    assert fiber_topology(resolve(text)).mu == milnor_number(parse_poly(text, XY))


@pytest.mark.parametrize("text", CORPUS)
def test_acampo_vanishing(text):
    assert lefschetz(resolve(text), 1) == 0


@pytest.mark.parametrize("text", CORPUS)
def test_refinement_keeps_lefschetz_and_lct(text):
    tree = resolve(text)
    for m in range(1, 13):
        refined = make_separating(tree, m)
        assert lct(refined) == lct(tree)
        assert lefschetz(refined, m) == lefschetz(tree, m)


def test_lefschetz_sequence():
    assert lefschetz_sequence(resolve("x^2 + y^3"), 6) == [0, 2, 3, 2, 0, -1]


@pytest.mark.parametrize("text,mu,threshold", [
    ("x^2 + y^3", 2, Fraction(5, 6)),
    ("x^3 + y^4", 6, Fraction(7, 12)),
    ("x^2 + y^2", 1, Fraction(1)),
])
def test_newton_oracle(text, mu, threshold):
    assert newton_oracle(parse_poly(text, XY)) == (mu, threshold)


@pytest.mark.parametrize("text", ["x^2 + y^3", "x^3 + y^4", "x^2 + y^5", "x^3 + y^5", "x^4 - y^4"])
def test_newton_oracle_matches_resolution(text):
    f = parse_poly(text, XY)
    mu, threshold = newton_oracle(f)
    assert mu == milnor_number(f)
    assert threshold == lct(embedded_resolution(f))


def test_newton_oracle_degenerate_polygon():
    with pytest.raises(SingularityError):
        newton_oracle(parse_poly("x^2*y + y^4", XY))
