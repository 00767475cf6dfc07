"""
Invariants read off a resolution: log canonical threshold, A'Campo Lefschetz
numbers and monodromy zeta function, Milnor-fiber topology, and the
Newton-polygon cross-check.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from .errors import InconsistencyError, SingularityError
from .poly import Polynomial
from .resolution import ResolutionTree


@dataclass(frozen=True)
class ZetaFunction:
    """Product of (1 - t^d)^e_d over the stored factors"""

    factors: Tuple[Tuple[int, int], ...]  # sorted (d, e_d), e_d != 0

    def as_dict(self) -> Dict[int, int]:
        return dict(self.factors)

    def to_sympy(self, symbol: str = "t"):
        import sympy

        t = sympy.Symbol(symbol)
        expr = sympy.Integer(1)
        for d, e in self.factors:
            expr *= (1 - t ** d) ** e
        return expr

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "".join(f"(1-t^{d})^{e}" if d != 1 else f"(1-t)^{e}" for d, e in self.factors)


@dataclass(frozen=True)
class FiberTopology:
    mu: int
    branches: int
    euler: int
    genus: int

    def to_dict(self) -> Dict[str, int]:
        return {"mu": self.mu, "branches": self.branches, "euler": self.euler, "genus": self.genus}


def lct(tree: ResolutionTree) -> Fraction:
    """min(1, min_i (a_i + 1)/m_i); the strict transform contributes 1"""
    return min([Fraction(1)] + [Fraction(d.a + 1, d.m) for d in tree.divisors])


def euler_open(tree: ResolutionTree, divisor_id: int) -> int:
    """Euler characteristic of E_i minus the other components of the total transform"""
    d = tree.divisor(divisor_id)
    return 2 - len(d.adjacent) - d.strict_points


def lefschetz(tree: ResolutionTree, m: int) -> int:
    """A'Campo: sum of m_i * chi(E_i^o) over exceptional divisors with m_i | m"""
    if m < 1:
        raise ValueError(f"iterate must be positive, got {m}")
    return sum(d.m * euler_open(tree, d.id) for d in tree.divisors if m % d.m == 0)


def lefschetz_sequence(tree: ResolutionTree, count: int) -> List[int]:
    return [lefschetz(tree, m) for m in range(1, count + 1)]


def zeta(tree: ResolutionTree) -> ZetaFunction:
    exponents: Dict[int, int] = {}
    for d in tree.divisors:
        exponents[d.m] = exponents.get(d.m, 0) - euler_open(tree, d.id)
    return ZetaFunction(tuple(sorted((d, e) for d, e in exponents.items() if e)))


def lefschetz_from_zeta(z: ZetaFunction, m: int) -> int:
    """Regenerate the Lefschetz number of the m-th iterate from the zeta factors"""
    return sum(-d * e for d, e in z.factors if m % d == 0)


def fiber_topology(tree: ResolutionTree) -> FiberTopology:
    """Milnor fiber of a plane curve: chi = sum m_i chi(E_i^o), mu = 1 - chi, chi = 2 - 2g - b"""
    euler = sum(d.m * euler_open(tree, d.id) for d in tree.divisors)
    branches = tree.branches
    twice_genus = 2 - euler - branches
    if twice_genus < 0 or twice_genus % 2:
        raise InconsistencyError(
            f"Euler characteristic {euler} with {branches} boundary components gives no genus"
        )
    return FiberTopology(mu=1 - euler, branches=branches, euler=euler, genus=twice_genus // 2)


# ---------- Newton polygon ----------

def newton_boundary(f: Polynomial) -> List[Tuple[int, int]]:
    """Vertices of the Newton boundary from the y-axis to the x-axis"""
    if f.nvars != 2:
        raise SingularityError("the Newton polygon oracle handles plane curves only")
    points = list(f.terms)
    on_y_axis = [j for i, j in points if i == 0]
    on_x_axis = [i for i, j in points if j == 0]
    if not on_y_axis or not on_x_axis:
        raise SingularityError(f"degenerate Newton polygon: {f} does not meet both axes")
    b, a = min(on_y_axis), min(on_x_axis)
    lowest: Dict[int, int] = {}
    for i, j in points:
        if i <= a and j <= b:
            lowest[i] = min(lowest.get(i, j), j)
    hull: List[Tuple[int, int]] = []
    for p in sorted(lowest.items()):
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def newton_oracle(f: Polynomial) -> Tuple[int, Fraction]:
    """
    Kouchnirenko Milnor number and polygon lct of a Newton-nondegenerate curve

    mu = 2V - a - b + 1 with V the area under the Newton boundary and a, b its
    axis intercepts; lct = min(1, 1/t) where (t, t) lies on the boundary.
    """
    hull = newton_boundary(f)
    b = hull[0][1]
    a = hull[-1][0]
    twice_area = 0
    t_max = Fraction(0)
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        twice_area += (x2 - x1) * (y1 + y2)
        # edge on the line (y1 - y2) i + (x2 - x1) j = N
        alpha, beta = y1 - y2, x2 - x1
        level = alpha * x1 + beta * y1
        t_max = max(t_max, Fraction(level, alpha + beta))
    mu = twice_area - a - b + 1
    threshold = min(Fraction(1), 1 / t_max) if t_max else Fraction(1)
    return mu, threshold


def monodromy_zeta_as_sympy(z: ZetaFunction, symbol: str = "t"):
    return z.to_sympy(symbol)
