"""
E1 page of the spectral sequence converging to fixed-point Floer cohomology
of the monodromy iterates of a plane curve, together with the multiplicity
and log canonical threshold read from it.

Only ranks are tracked. n is fixed to 1 (plane curves), so each divisor in
S_m contributes H_0 and H_1 of an m_i-fold cyclic cover of E_i^o.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InputError, NotSeparatingError, SingulatorError, WeightError
from .invariants import euler_open
from .resolution import ResolutionTree, check_ample, find_ample_weights, make_separating

logger = logging.getLogger(__name__)

N = 1


@dataclass(frozen=True)
class CoverHomology:
    """Ranks of H_0 and H_1 of the cyclic m_i-fold cover of E_i^o"""

    components: int
    rank_h1: int


@dataclass(frozen=True)
class E1Contribution:
    divisor: int
    p: int
    q: int
    homology_degree: int
    rank: int

    @property
    def total_degree(self) -> int:
        return self.p + self.q


@dataclass(frozen=True)
class E1Page:
    m: int
    entries: Tuple[Tuple[Tuple[int, int], int], ...]  # sorted ((p, q), rank)
    weights: Tuple[int, ...]
    contributions: Tuple[E1Contribution, ...] = ()

    def as_dict(self) -> Dict[Tuple[int, int], int]:
        return dict(self.entries)

    def is_empty(self) -> bool:
        return not self.entries

    def euler_characteristic(self) -> int:
        return sum((-1) ** ((p + q) % 2) * rank for (p, q), rank in self.entries)

    def support(self) -> List[int]:
        """Divisors contributing a nonzero entry"""
        return sorted({c.divisor for c in self.contributions})

    def to_dict(self) -> Dict:
        return {
            "m": self.m,
            "weights": list(self.weights),
            "entries": [{"p": p, "q": q, "rank": r} for (p, q), r in self.entries],
            "euler_characteristic": self.euler_characteristic(),
        }


def cover_homology(tree: ResolutionTree, divisor_id: int) -> CoverHomology:
    """
    Homology of the cyclic cover of E_i^o classified by sending the loop
    around each puncture to the multiplicity of the component it meets.

    The cover has gcd(m_i, neighbours' m_j, 1 per strict point) components;
    its Euler characteristic is m_i * chi(E_i^o).
    """
    d = tree.divisor(divisor_id)
    components = d.m
    for j in d.adjacent:
        components = gcd(components, tree.divisor(j).m)
    if d.strict_points:
        components = 1
    return CoverHomology(components=components, rank_h1=components - d.m * euler_open(tree, divisor_id))


def e1_page(tree: ResolutionTree, m: int, weights: Optional[Sequence[int]] = None) -> E1Page:
    """
    E1 page for the m-th iterate

    Args:
        tree: m-separating resolution (see make_separating)
        m: Iterate
        weights: Ample weights; defaults to find_ample_weights(tree)

    Returns:
        E1Page with ranks merged per bidegree (p, q)
    """
    if m < 1:
        raise InputError(f"iterate m must be a positive integer, got {m}")
    if not tree.is_separating(m):
        raise NotSeparatingError(f"resolution is not {m}-separating; run make_separating first")
    weights = list(weights) if weights is not None else find_ample_weights(tree)
    if not check_ample(tree, weights):
        raise WeightError(f"weights {weights} are not ample for this resolution")
    weight_of = dict(zip(tree.ids, weights))

    entries: Dict[Tuple[int, int], int] = {}
    contributions: List[E1Contribution] = []
    for d in tree.divisors:
        if m % d.m:
            continue
        k = m // d.m
        p = -k * weight_of[d.id]
        homology = cover_homology(tree, d.id)
        for j, rank in ((0, homology.components), (1, homology.rank_h1)):
            if rank <= 0:
                continue
            q = N - j - 2 * k * (d.a + 1) - p
            entries[(p, q)] = entries.get((p, q), 0) + rank
            contributions.append(E1Contribution(d.id, p, q, j, rank))
    return E1Page(m, tuple(sorted(entries.items())), tuple(weights), tuple(contributions))


def multiplicity_via_ss(tree: ResolutionTree) -> int:
    """First iterate whose E1 page is nonzero"""
    bound = min(tree.multiplicities())
    for m in range(1, bound + 1):
        page = e1_page(make_separating(tree, m), m)
        if not page.is_empty():
            logger.debug("first nonzero E1 page at m=%d (support %s)", m, page.support())
            return m
    raise SingulatorError("no nonzero E1 page found up to the smallest multiplicity")


@dataclass(frozen=True)
class FloerLctStep:
    k: int
    raw_infimum: Fraction  # inf of -alpha/(2k) over nonzero entries, capped at 1
    limit: Fraction  # same with the bounded homological offset removed


def floer_lct_profile(tree: ResolutionTree, m_max: int) -> List[FloerLctStep]:
    """
    Per iterate k <= m_max with a nonzero page, the Floer-degree ratios.

    An entry from H_j of the cover over E_i sits in total degree
    alpha = n - j - 2 k_i (a_i + 1); along the multiples of k the offset
    n - j is bounded, so the ratio converges to -(alpha - (n - j))/(2k).
    """
    steps: List[FloerLctStep] = []
    for k in range(1, m_max + 1):
        page = e1_page(make_separating(tree, k), k)
        if page.is_empty():
            continue
        raw = min(Fraction(-c.total_degree, 2 * k) for c in page.contributions)
        limit = min(Fraction(-(c.total_degree - (N - c.homology_degree)), 2 * k) for c in page.contributions)
        steps.append(FloerLctStep(k, min(raw, Fraction(1)), min(limit, Fraction(1))))
    return steps


def check_floer_range(tree: ResolutionTree, m_max: int):
    """The limit slopes are only all visible once m_max reaches lcm(m_i)"""
    needed = tree.lcm_multiplicity()
    if m_max < needed:
        raise SingulatorError(f"m_max={m_max} is below lcm of the multiplicities ({needed})")


def lct_from_profile(steps: Sequence[FloerLctStep]) -> Fraction:
    if not steps:
        raise SingulatorError("no nonzero E1 page in the profile")
    return min(step.limit for step in steps)


def lct_via_floer(tree: ResolutionTree, m_max: int) -> Fraction:
    """liminf over iterates of the smallest Floer-degree ratio, capped at 1"""
    check_floer_range(tree, m_max)
    return lct_from_profile(floer_lct_profile(tree, m_max))
