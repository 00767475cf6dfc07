"""
Local-ring invariants: multiplicity, Jacobian ideal, Mora standard bases,
Milnor and Tjurina numbers, and the sigma invariant of plane curves.

Everything is computed in the localisation of Q[z] at the origin; dimensions
over Q agree with dimensions over C because the generators are rational.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from .errors import SingularityError, SingulatorError
from .poly import (
    INFINITE,
    Monomial,
    Polynomial,
    divides,
    monomial_lcm,
    monomial_quotient,
)

logger = logging.getLogger(__name__)


class LocalOrder:
    """Local degree ordering.

    Smaller total degree is larger (1 is the largest monomial); ties are
    broken reverse-lexicographically by the declared variable order.
    """

    name = "local-degrevlex"

    def key(self, mon: Monomial) -> Tuple:
        """Sort key: a > b in the ordering iff key(a) > key(b)"""
        return (-sum(mon), tuple(-e for e in reversed(mon)))

    def greater(self, a: Monomial, b: Monomial) -> bool:
        return self.key(a) > self.key(b)

    def leading_monomial(self, f: Polynomial) -> Monomial:
        if f.is_zero:
            raise ValueError("the zero polynomial has no leading monomial")
        return max(f.terms, key=self.key)

    def leading_coefficient(self, f: Polynomial) -> Fraction:
        return f.terms[self.leading_monomial(f)]

    def ecart(self, f: Polynomial) -> int:
        return f.total_degree() - sum(self.leading_monomial(f))

    def __repr__(self) -> str:
        return f"LocalOrder({self.name!r})"


def standard_monomials(leading: Sequence[Monomial], nvars: int) -> Optional[List[Monomial]]:
    """Monomials outside the monomial ideal generated by `leading`.

    Returns None when that set is infinite, i.e. when some variable has no pure
    power among the generators.
    """
    bounds: List[Optional[int]] = [None] * nvars
    for mon in leading:
        support = [i for i, e in enumerate(mon) if e]
        if not support:
            return []
        if len(support) == 1:
            i = support[0]
            bounds[i] = mon[i] if bounds[i] is None else min(bounds[i], mon[i])
    if any(b is None for b in bounds):
        return None
    return [
        mon for mon in product(*(range(b) for b in bounds))
        if not any(divides(l, mon) for l in leading)
    ]


@dataclass(frozen=True)
class StandardBasis:
    """Standard basis of an ideal of the local ring"""

    generators: Tuple[Polynomial, ...]
    order: LocalOrder
    leading_terms: Tuple[Monomial, ...]
    nvars: int

    def minimal_leading_terms(self) -> List[Monomial]:
        """Minimal generators of the leading-term ideal"""
        unique = sorted(set(self.leading_terms), key=lambda m: (sum(m), m))
        minimal: List[Monomial] = []
        for mon in unique:
            if not any(divides(l, mon) for l in minimal):
                minimal.append(mon)
        return minimal

    def standard_monomials(self) -> Optional[List[Monomial]]:
        return standard_monomials(self.minimal_leading_terms(), self.nvars)

    def is_zero_dimensional(self) -> bool:
        return self.standard_monomials() is not None

    def dimension(self) -> Union[int, float]:
        """Vector-space dimension of the quotient; INFINITE if not zero-dimensional"""
        monomials = self.standard_monomials()
        return INFINITE if monomials is None else len(monomials)


# ---------- Mora tangent-cone algorithm ----------

def _cut(f: Polynomial, cutoff: Optional[int]) -> Polynomial:
    return f if cutoff is None else f.truncate(cutoff)


def _highest_corner_cutoff(leading: Sequence[Monomial], nvars: int) -> Optional[int]:
    """Degree D with every monomial of degree >= D in the leading ideal"""
    monomials = standard_monomials(leading, nvars)
    if monomials is None or not monomials:
        return None
    return max(sum(m) for m in monomials) + 1


def s_polynomial(f: Polynomial, g: Polynomial, order: LocalOrder) -> Polynomial:
    lf, lg = order.leading_monomial(f), order.leading_monomial(g)
    lcm = monomial_lcm(lf, lg)
    return (f.multiply_monomial(monomial_quotient(lcm, lf), 1 / f.terms[lf])
            - g.multiply_monomial(monomial_quotient(lcm, lg), 1 / g.terms[lg]))


def mora_normal_form(f: Polynomial, basis: Sequence[Polynomial], order: LocalOrder,
                     cutoff: Optional[int] = None) -> Polynomial:
    """
    Weak normal form of f with respect to basis (Mora's algorithm)

    Reducers are chosen by smallest ecart, then smallest leading monomial.
    A reducer with larger ecart than the current remainder pushes the
    remainder onto the reducer set.
    """
    h = _cut(f, cutoff)
    reducers = [(g, order.leading_monomial(g), order.ecart(g)) for g in basis if not g.is_zero]
    while not h.is_zero:
        lm = order.leading_monomial(h)
        candidates = [r for r in reducers if divides(r[1], lm)]
        if not candidates:
            return h
        g, lg, ecart_g = min(candidates, key=lambda r: (r[2], order.key(r[1])))
        ecart_h = order.ecart(h)
        if ecart_g > ecart_h:
            reducers.append((h, lm, ecart_h))
        factor = h.terms[lm] / g.terms[lg]
        h = _cut(h - g.multiply_monomial(monomial_quotient(lm, lg), factor), cutoff)
    return h


def standard_basis(gens: Iterable[Polynomial], order: Optional[LocalOrder] = None,
                   max_pairs: int = 20000) -> StandardBasis:
    """
    Standard basis of the ideal generated by gens in the local ring

    Args:
        gens: Generators (zero generators are ignored)
        order: Local ordering; defaults to LocalOrder()
        max_pairs: Abort after this many S-pair reductions

    Returns:
        StandardBasis whose leading terms generate the leading-term ideal
    """
    order = order or LocalOrder()
    basis = [g for g in gens if not g.is_zero]
    nvars = basis[0].nvars if basis else 0
    if not basis:
        return StandardBasis((), order, (), nvars)

    units = [g for g in basis if g.constant_term != 0]
    if units:
        return StandardBasis((units[0],), order, ((0,) * nvars,), nvars)

    leading = [order.leading_monomial(g) for g in basis]
    cutoff = _highest_corner_cutoff(leading, nvars)
    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    processed = 0

    while pairs:
        pair = min(pairs, key=lambda p: (sum(monomial_lcm(leading[p[0]], leading[p[1]])), p))
        pairs.remove(pair)
        processed += 1
        if processed > max_pairs:
            raise SingulatorError(f"standard basis did not stabilise within {max_pairs} S-pairs")
        i, j = pair
        h = mora_normal_form(s_polynomial(basis[i], basis[j], order), basis, order, cutoff)
        if h.is_zero:
            continue
        lm = order.leading_monomial(h)
        if sum(lm) == 0:
            logger.debug("unit reached after %d S-pairs", processed)
            return StandardBasis((h,), order, (lm,), nvars)
        pairs.extend((k, len(basis)) for k in range(len(basis)))
        basis.append(h)
        leading.append(lm)
        new_cutoff = _highest_corner_cutoff(leading, nvars)
        if new_cutoff is not None and (cutoff is None or new_cutoff < cutoff):
            cutoff = new_cutoff

    logger.debug("standard basis: %d generators after %d S-pairs", len(basis), processed)
    return StandardBasis(tuple(basis), order, tuple(leading), nvars)


# ---------- Invariants ----------

def _check_singular_point(f: Polynomial) -> None:
    if f.is_zero:
        raise SingularityError("the zero polynomial does not define a hypersurface")
    if f.constant_term != 0:
        raise SingularityError(f"f(0) = {f.constant_term} != 0; the origin is not on the hypersurface")


def multiplicity(f: Polynomial) -> int:
    """Order of f at the origin: largest k with f in m^k"""
    _check_singular_point(f)
    return int(f.min_degree())


def jacobian_ideal(f: Polynomial) -> List[Polynomial]:
    return [f.derivative(v) for v in f.variables]


def milnor_number(f: Polynomial, max_pairs: int = 20000) -> Union[int, float]:
    """dim Q{z}/Jac(f); INFINITE for a non-isolated singularity"""
    _check_singular_point(f)
    mu = standard_basis(jacobian_ideal(f), max_pairs=max_pairs).dimension()
    logger.debug("milnor number of %s: %s", f, mu)
    return mu


def tjurina_number(f: Polynomial, max_pairs: int = 20000) -> Union[int, float]:
    """dim Q{z}/(f, Jac(f))"""
    _check_singular_point(f)
    return standard_basis([f] + jacobian_ideal(f), max_pairs=max_pairs).dimension()


def sigma_invariant(f: Polynomial, max_pairs: int = 20000) -> Union[int, float]:
    """1 + dim Q{x,y}/I with I generated by f and its first and second partials"""
    if f.nvars != 2:
        raise SingularityError(f"sigma is defined for plane curves; got {f.nvars} variables")
    _check_singular_point(f)
    x, y = f.variables
    fx, fy = f.derivative(x), f.derivative(y)
    ideal = [f, fx, fy, fx.derivative(x), fx.derivative(y), fy.derivative(y)]
    return 1 + standard_basis(ideal, max_pairs=max_pairs).dimension()


# ---------- Brute-force oracle ----------

def monomials_below(nvars: int, degree: int) -> List[Monomial]:
    """All monomials in nvars variables of total degree < degree"""
    result: List[Monomial] = []

    def extend(prefix: Tuple[int, ...], remaining: int):
        if len(prefix) == nvars:
            result.append(prefix)
            return
        for e in range(remaining + 1):
            extend(prefix + (e,), remaining - e)

    if degree > 0:
        extend((), degree - 1)
    return sorted(result, key=lambda m: (sum(m), m))


def truncated_quotient_dimension(gens: Sequence[Polynomial], degree: int) -> int:
    """
    dim Q[z]/(I + m^degree) by exact Gaussian elimination

    Equals the local quotient dimension as soon as m^degree lies in the
    local ideal (degree >= mu suffices for a Jacobian ideal).
    """
    from sympy import QQ
    from sympy.polys.matrices import DomainMatrix

    gens = [g for g in gens if not g.is_zero]
    if not gens:
        raise ValueError("at least one nonzero generator is required")
    nvars = gens[0].nvars
    columns = monomials_below(nvars, degree)
    index = {m: i for i, m in enumerate(columns)}
    rows = {}
    for g in gens:
        low = int(g.min_degree())
        for mon in columns:
            if sum(mon) + low >= degree:
                continue
            row = {}
            for m, c in g.terms.items():
                target = tuple(a + b for a, b in zip(m, mon))
                if sum(target) < degree:
                    row[index[target]] = QQ(c.numerator, c.denominator)
            if row:
                rows[len(rows)] = row
    if not rows:
        return len(columns)
    matrix = DomainMatrix(rows, (len(rows), len(columns)), QQ)
    return len(columns) - matrix.rank()
