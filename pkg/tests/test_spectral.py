from collections import Counter
from fractions import Fraction

import pytest

from singulator.errors import InputError, NotSeparatingError, SingulatorError, WeightError
from singulator.invariants import euler_open, lct, lefschetz
from singulator.local_algebra import multiplicity
from singulator.poly import parse_poly
from singulator.resolution import embedded_resolution, find_ample_weights, make_separating
from singulator.spectral import (
    check_floer_range,
    cover_homology,
    e1_page,
    floer_lct_profile,
    lct_from_profile,
    lct_via_floer,
    multiplicity_via_ss,
)

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


def test_cusp_cover_homology():
    cusp = resolve("x^2 + y^3")
    low = cover_homology(cusp, divisor_with(cusp, 2).id)
    assert (low.components, low.rank_h1) == (2, 0)
    central = cover_homology(cusp, divisor_with(cusp, 6).id)
    assert (central.components, central.rank_h1) == (1, 7)


def test_node_cover_homology():
    node = resolve("x^2 + y^2")
    homology = cover_homology(node, node.divisors[0].id)
    assert (homology.components, homology.rank_h1) == (1, 1)


@pytest.mark.parametrize("text", CORPUS)
def test_cover_euler_characteristic(text):
    tree = resolve(text)
    for d in tree.divisors:
        homology = cover_homology(tree, d.id)
        assert homology.components - homology.rank_h1 == d.m * euler_open(tree, d.id)


def test_cusp_page_m2():
    cusp = resolve("x^2 + y^3")
    page = e1_page(cusp, 2)
    assert len(page.entries) == 1
    (p, q), rank = page.entries[0]
    assert rank == 2
    assert p + q == -3
    assert p == -find_ample_weights(cusp)[cusp.ids.index(divisor_with(cusp, 2).id)]
    assert page.euler_characteristic() == -2


def test_cusp_page_m1_is_empty():
    assert e1_page(resolve("x^2 + y^3"), 1).is_empty()


def test_node_page_m2():
    node = resolve("x^2 + y^2")
    page = e1_page(node, 2)
    degrees = sorted(p + q for (p, q), _ in page.entries)
    assert degrees == [-4, -3]
    assert sum(rank for _, rank in page.entries) == 2
    assert page.euler_characteristic() == 0 == -lefschetz(node, 2)


def test_page_requires_separating_tree():
    cusp = resolve("x^2 + y^3")
    with pytest.raises(NotSeparatingError):
        e1_page(cusp, 12)


def test_page_rejects_non_ample_weights():
    cusp = resolve("x^2 + y^3")
    with pytest.raises(WeightError):
        e1_page(cusp, 2, weights=[1, 1, 1])


@pytest.mark.parametrize("text", CORPUS)
def test_euler_identity(text):
    tree = resolve(text)
    for m in range(1, 13):
        refined = make_separating(tree, m)
        page = e1_page(refined, m)
        assert page.euler_characteristic() == -lefschetz(tree, m)


def test_page_independent_of_weights_up_to_p():
    cusp = make_separating(resolve("x^2 + y^3"), 6)
    weights = find_ample_weights(cusp)
    doubled = [2 * w for w in weights]
    first, second = e1_page(cusp, 6, weights), e1_page(cusp, 6, doubled)

    def shape(page):
        return Counter((c.divisor, c.total_degree, c.rank) for c in page.contributions)

    assert shape(first) == shape(second)
    assert [p for (p, _), _ in first.entries] != [p for (p, _), _ in second.entries]


@pytest.mark.parametrize("text", CORPUS)
def test_multiplicity_from_first_nonzero_page(text):
    f = parse_poly(text, XY)
    assert multiplicity_via_ss(embedded_resolution(f)) == multiplicity(f)


@pytest.mark.parametrize("text", ["x^2 + y^3", "x^3 + y^4"])
def test_first_page_has_single_divisor_support(text):
    tree = resolve(text)
    nu = multiplicity_via_ss(tree)
    assert len(e1_page(tree, nu).support()) == 1


@pytest.mark.parametrize("text,m_max,expected", [
    ("x^2 + y^3", 6, Fraction(5, 6)),
    ("x^2 + y^2", 2, Fraction(1)),
    ("x^3 + y^4", 24, Fraction(7, 12)),
    ("x^3 + y^5", 45, Fraction(8, 15)),
])
def test_lct_via_floer(text, m_max, expected):
    tree = resolve(text)
    assert lct_via_floer(tree, m_max) == expected == lct(tree)


def test_lct_via_floer_needs_lcm_iterates():
    with pytest.raises(SingulatorError):
        lct_via_floer(resolve("x^2 + y^3"), 5)


def test_floer_profile_raw_infimum_carries_offset():
    steps = floer_lct_profile(resolve("x^2 + y^3"), 6)
    assert [s.k for s in steps] == [2, 3, 4, 6]
    last = steps[-1]
    assert last.limit == Fraction(5, 6)
    assert last.raw_infimum == Fraction(3, 4)


def test_profile_limit_matches_lct_via_floer():
    tree = resolve("x^3 + y^5")
    check_floer_range(tree, 45)
    steps = floer_lct_profile(tree, 45)
    assert steps[0].k == 3
    assert lct_from_profile(steps) == lct_via_floer(tree, 45) == Fraction(8, 15)


def test_check_floer_range():
    with pytest.raises(SingulatorError):
        check_floer_range(resolve("x^3 + y^5"), 44)
    with pytest.raises(SingulatorError):
        lct_from_profile([])


@pytest.mark.parametrize("m", [0, -3])
def test_page_rejects_non_positive_iterate(m):
    with pytest.raises(InputError):
        e1_page(resolve("x^2 + y^3"), m)
