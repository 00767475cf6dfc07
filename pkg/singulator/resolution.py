"""
Embedded resolution of plane-curve singularities by iterated point blowups.

Each pending center is a rational point given by a local chart: coordinates
(u, v) centred at the point, the local equation of the strict transform, and
the exceptional divisors through the point, which are always coordinate
axes ({u=0} and/or {v=0}). Points on a new divisor that are not rational are
never computed; they are counted through degrees of irreducible factors.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .errors import (
    InconsistencyError,
    NonIsolatedSingularityError,
    ResolutionError,
    SingularityError,
    UnknownDivisorError,
    WeightError,
)
from .local_algebra import milnor_number
from .poly import INFINITE, Polynomial

logger = logging.getLogger(__name__)

CHART_VARIABLES = ("u", "v")
MAX_BLOWUPS = 10000


@dataclass(frozen=True)
class Divisor:
    """Exceptional divisor E_i with its numerical data"""

    id: int
    m: int  # order of vanishing of the pulled-back f
    a: int  # discrepancy
    self_intersection: int
    adjacent: FrozenSet[int]
    strict_points: int  # points where the final strict transform meets E_i

    def to_dict(self) -> Dict:
        return {
            "id": self.id,
            "m": self.m,
            "a": self.a,
            "self_intersection": self.self_intersection,
            "adjacent": sorted(self.adjacent),
            "strict_points": self.strict_points,
        }


@dataclass(frozen=True)
class ResolutionTree:
    """Exceptional divisors of an embedded resolution and their dual graph"""

    divisors: Tuple[Divisor, ...]
    first_blowup_id: int
    n_plus_1: int = 2

    def divisor(self, divisor_id: int) -> Divisor:
        for d in self.divisors:
            if d.id == divisor_id:
                return d
        raise UnknownDivisorError(f"no divisor with id {divisor_id}")

    @property
    def ids(self) -> List[int]:
        return [d.id for d in self.divisors]

    @property
    def branches(self) -> int:
        return sum(d.strict_points for d in self.divisors)

    def multiplicities(self) -> List[int]:
        return [d.m for d in self.divisors]

    def lcm_multiplicity(self) -> int:
        return lcm(*self.multiplicities())

    def edges(self) -> List[Tuple[int, int]]:
        return sorted({(min(d.id, j), max(d.id, j)) for d in self.divisors for j in d.adjacent})

    def intersection_matrix(self) -> List[List[int]]:
        """Self-intersections on the diagonal, 1 for adjacent pairs"""
        ids = self.ids
        position = {i: k for k, i in enumerate(ids)}
        matrix = [[0] * len(ids) for _ in ids]
        for d in self.divisors:
            matrix[position[d.id]][position[d.id]] = d.self_intersection
            for j in d.adjacent:
                matrix[position[d.id]][position[j]] = 1
        return matrix

    def is_negative_definite(self) -> bool:
        """Leading principal minors of -Q are all positive"""
        from sympy import ZZ
        from sympy.polys.matrices import DomainMatrix

        q = [[-v for v in row] for row in self.intersection_matrix()]
        return all(
            DomainMatrix([[ZZ(v) for v in row[:k]] for row in q[:k]], (k, k), ZZ).det() > 0
            for k in range(1, len(q) + 1)
        )

    def is_connected(self) -> bool:
        if not self.divisors:
            return False
        seen = {self.divisors[0].id}
        stack = [self.divisors[0].id]
        while stack:
            for j in self.divisor(stack.pop()).adjacent:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == len(self.divisors)

    def offending_pairs(self, m: int) -> List[Tuple[int, Optional[int]]]:
        """Adjacent pairs with m_i + m_j <= m; (i, None) stands for a strict branch on E_i"""
        bad: List[Tuple[int, Optional[int]]] = []
        for i, j in self.edges():
            if self.divisor(i).m + self.divisor(j).m <= m:
                bad.append((i, j))
        for d in self.divisors:
            if d.strict_points and d.m + 1 <= m:
                bad.append((d.id, None))
        return bad

    def is_separating(self, m: int) -> bool:
        return not self.offending_pairs(m)

    def to_dict(self) -> Dict:
        return {
            "first_blowup_id": self.first_blowup_id,
            "n_plus_1": self.n_plus_1,
            "divisors": [d.to_dict() for d in self.divisors],
        }

    @classmethod
    def from_dict(cls, data: Dict) -> "ResolutionTree":
        divisors = tuple(
            Divisor(
                id=int(d["id"]),
                m=int(d["m"]),
                a=int(d["a"]),
                self_intersection=int(d["self_intersection"]),
                adjacent=frozenset(int(j) for j in d["adjacent"]),
                strict_points=int(d["strict_points"]),
            )
            for d in data["divisors"]
        )
        return cls(divisors, int(data["first_blowup_id"]), int(data.get("n_plus_1", 2)))


class _DivisorGraph:
    """Mutable divisor bookkeeping used while blowing up"""

    def __init__(self):
        self.records: Dict[int, Dict] = {}
        self.next_id = 1

    @classmethod
    def from_tree(cls, tree: ResolutionTree) -> "_DivisorGraph":
        graph = cls()
        for d in tree.divisors:
            graph.records[d.id] = {
                "m": d.m,
                "a": d.a,
                "self": d.self_intersection,
                "adjacent": set(d.adjacent),
                "strict": d.strict_points,
            }
        graph.next_id = max(graph.records, default=0) + 1
        return graph

    def new_divisor(self, m: int, a: int) -> int:
        divisor_id = self.next_id
        self.next_id += 1
        self.records[divisor_id] = {"m": m, "a": a, "self": -1, "adjacent": set(), "strict": 0}
        return divisor_id

    def connect(self, i: int, j: int):
        self.records[i]["adjacent"].add(j)
        self.records[j]["adjacent"].add(i)

    def disconnect(self, i: int, j: int):
        self.records[i]["adjacent"].discard(j)
        self.records[j]["adjacent"].discard(i)

    def center_on(self, i: int):
        """A blowup center lies on E_i: its self-intersection drops by one"""
        self.records[i]["self"] -= 1

    def add_strict(self, i: int, count: int):
        self.records[i]["strict"] += count

    def blow_up_crossing(self, i: int, j: Optional[int]) -> int:
        """Blow up E_i ∩ E_j, or E_i ∩ strict transform when j is None"""
        ri = self.records[i]
        if j is None:
            new = self.new_divisor(ri["m"] + 1, ri["a"] + 1)
            self.center_on(i)
            ri["strict"] -= 1
            self.add_strict(new, 1)
            self.connect(i, new)
            return new
        rj = self.records[j]
        new = self.new_divisor(ri["m"] + rj["m"], ri["a"] + rj["a"] + 1)
        self.center_on(i)
        self.center_on(j)
        self.disconnect(i, j)
        self.connect(i, new)
        self.connect(j, new)
        return new

    def freeze(self, first_blowup_id: int) -> ResolutionTree:
        divisors = tuple(
            Divisor(
                id=i,
                m=r["m"],
                a=r["a"],
                self_intersection=r["self"],
                adjacent=frozenset(r["adjacent"]),
                strict_points=r["strict"],
            )
            for i, r in sorted(self.records.items())
        )
        return ResolutionTree(divisors, first_blowup_id)


@dataclass
class _ChartPoint:
    equation: Polynomial  # local strict transform in (u, v)
    axes: Tuple[Optional[int], Optional[int]]  # divisors {u=0} and {v=0}
    label: str = field(default="origin")


def _univariate_cone(cone: Polynomial):
    """cone(1, t) as a sympy Poly over QQ"""
    import sympy

    t = sympy.Symbol("t")
    expr = sympy.Integer(0)
    for (i, j), coef in cone.terms.items():
        expr += sympy.Rational(coef.numerator, coef.denominator) * t ** j
    return sympy.Poly(expr, t, domain=sympy.QQ)


class PlaneCurveResolver:
    """Blows up points until the total transform is simple normal crossing"""

    def __init__(self, f: Polynomial):
        self.f = f
        self.graph = _DivisorGraph()
        self.blowups = 0

    def run(self) -> ResolutionTree:
        local = Polynomial(CHART_VARIABLES, dict(self.f.terms))
        stack = [_ChartPoint(local, (None, None))]
        first = None
        while stack:
            point = stack.pop()
            if first is not None and self._settle(point):
                continue
            children = self._blow_up(point)
            if first is None:
                first = self.graph.next_id - 1
            stack.extend(reversed(children))
        tree = self.graph.freeze(first)
        logger.debug("resolved %s with %d blowups", self.f, self.blowups)
        return tree

    def _settle(self, point: _ChartPoint) -> bool:
        """Record the point if it is already SNC; False when it must be blown up"""
        g = point.equation
        through = [d for d in point.axes if d is not None]
        if g.constant_term != 0:
            return True
        if g.min_degree() != 1 or len(through) != 1:
            return False
        alpha = g.coefficient((1, 0))
        beta = g.coefficient((0, 1))
        on_u_axis = point.axes[0] is not None
        transverse = beta != 0 if on_u_axis else alpha != 0
        if transverse:
            self.graph.add_strict(through[0], 1)
        return transverse

    def _blow_up(self, point: _ChartPoint) -> List[_ChartPoint]:
        self.blowups += 1
        if self.blowups > MAX_BLOWUPS:
            raise InconsistencyError(f"resolution of {self.f} did not terminate")
        g = point.equation
        k = int(g.min_degree())
        du, dv = point.axes
        through = [d for d in point.axes if d is not None]
        records = self.graph.records
        e = self.graph.new_divisor(
            k + sum(records[d]["m"] for d in through),
            1 + sum(records[d]["a"] for d in through),
        )
        for d in through:
            self.graph.center_on(d)
            self.graph.connect(d, e)
        if len(through) == 2:
            self.graph.disconnect(du, dv)
        logger.debug("blowup %d at %s: E%d m=%d a=%d", self.blowups, point.label, e,
                     records[e]["m"], records[e]["a"])

        cone = g.homogeneous_part(k)
        univariate = _univariate_cone(cone)
        at_infinity = k - univariate.degree()
        rational_roots: List[Fraction] = []
        for factor, multiplicity in univariate.factor_list()[1]:
            if factor.degree() == 1:
                a1, a0 = factor.all_coeffs()
                root = -(a0 / a1)
                rational_roots.append(Fraction(int(root.p), int(root.q)))
            elif multiplicity == 1:
                # simple non-rational roots: transverse crossings with E only
                self.graph.add_strict(e, factor.degree())
            else:
                raise ResolutionError(
                    f"blowing up {self.f} needs a center with non-rational coordinates",
                    str(factor.as_expr()),
                )

        u = Polynomial.variable(CHART_VARIABLES, "u")
        v = Polynomial.variable(CHART_VARIABLES, "v")
        centers = set(rational_roots)
        if dv is not None:
            centers.add(Fraction(0))
        children = []
        for c in sorted(centers):
            local = g.substitute("v", u * (v + c)).divide_by_monomial((k, 0))
            children.append(_ChartPoint(local, (e, dv if c == 0 else None), f"E{e}:{c}"))
        if at_infinity > 0 or du is not None:
            local = g.substitute("u", u * v).divide_by_monomial((0, k))
            children.append(_ChartPoint(local, (du, e), f"E{e}:inf"))
        return children


def embedded_resolution(f: Polynomial) -> ResolutionTree:
    """
    Resolve a plane-curve germ at the origin

    Args:
        f: Polynomial in exactly two variables with f(0) = 0 and finite mu

    Returns:
        ResolutionTree whose first divisor comes from blowing up the origin
    """
    if f.nvars != 2:
        raise SingularityError(f"embedded resolution needs exactly two variables, got {list(f.variables)}")
    if milnor_number(f) == INFINITE:
        raise NonIsolatedSingularityError(f"{f} does not have an isolated singularity at the origin")
    tree = PlaneCurveResolver(f).run()
    _check_tree(tree)
    return tree


def make_separating(tree: ResolutionTree, m: int) -> ResolutionTree:
    """Blow up crossings until every adjacent pair (strict branches count m=1) has m_i + m_j > m"""
    graph = _DivisorGraph.from_tree(tree)
    current = tree
    while True:
        offenders = current.offending_pairs(m)
        if not offenders:
            return current
        i, j = offenders[0]
        graph.blow_up_crossing(i, j)
        current = graph.freeze(tree.first_blowup_id)


def find_ample_weights(tree: ResolutionTree) -> List[int]:
    """Positive integers w with (Qw)_j <= -1 for every divisor j"""
    from sympy import QQ
    from sympy.polys.matrices import DomainMatrix
    from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

    matrix = tree.intersection_matrix()
    size = len(matrix)
    q = DomainMatrix([[QQ(v) for v in row] for row in matrix], (size, size), QQ)
    rhs = DomainMatrix([[QQ(-1)] for _ in range(size)], (size, 1), QQ)
    try:
        solution = [QQ.to_sympy(x) for (x,) in q.lu_solve(rhs).to_list()]
    except (DMNonInvertibleMatrixError, ZeroDivisionError) as e:
        raise WeightError(f"intersection matrix {matrix} is singular") from e
    solution = [Fraction(int(x.p), int(x.q)) for x in solution]
    scale = lcm(*[x.denominator for x in solution])
    weights = [int(x * scale) for x in solution]
    if not check_ample(tree, weights):
        raise WeightError(f"no ample weights found for intersection matrix {tree.intersection_matrix()}")
    return weights


def check_ample(tree: ResolutionTree, weights: Iterable[int]) -> bool:
    weights = list(weights)
    if len(weights) != len(tree.divisors) or any(w <= 0 for w in weights):
        return False
    matrix = tree.intersection_matrix()
    return all(sum(row[k] * weights[k] for k in range(len(weights))) <= -1 for row in matrix)


def _check_tree(tree: ResolutionTree):
    if not tree.is_connected():
        raise InconsistencyError("dual graph of the resolution is disconnected")
    if not tree.is_negative_definite():
        raise InconsistencyError("intersection matrix of the resolution is not negative definite")


def to_dot(tree: ResolutionTree) -> str:
    """Dual graph in DOT format; strict-transform branches are box nodes"""
    lines = ["graph resolution {", "  node [shape=ellipse];"]
    for d in tree.divisors:
        lines.append(f'  E{d.id} [label="E{d.id} m={d.m} a={d.a} s={d.self_intersection}"];')
    for i, j in tree.edges():
        lines.append(f"  E{i} -- E{j};")
    branch = 0
    for d in tree.divisors:
        for _ in range(d.strict_points):
            branch += 1
            lines.append(f'  S{branch} [shape=box, label="strict"];')
            lines.append(f"  E{d.id} -- S{branch};")
    lines.append("}")
    return "\n".join(lines) + "\n"
