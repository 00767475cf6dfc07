"""
One-parameter families: mu-constancy checks, adjacency samples, Brieskorn
polynomials, and the cross-ratio / j-invariant helpers used to tell the
members of the four-lines family apart.
"""

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from .errors import (
    CoincidentPointsError,
    FamilySpecError,
    InputError,
    SingulatorError,
)
from .invariants import lct
from .local_algebra import milnor_number, multiplicity
from .poly import INFINITE, Polynomial, parse_poly
from .resolution import embedded_resolution

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]


def _to_fraction(value: Any, what: str) -> Fraction:
    if isinstance(value, bool):
        raise FamilySpecError(f"{what}: expected a rational number, got {value!r}")
    try:
        return Fraction(value) if not isinstance(value, float) else Fraction(str(value))
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise FamilySpecError(f"{what}: expected a rational number, got {value!r}") from e


@dataclass(frozen=True)
class FamilySpec:
    """f_t in the singularity variables, specialised at finitely many samples"""

    poly: Polynomial  # over variables + (parameter,)
    variables: Tuple[str, ...]
    parameter: str
    samples: Tuple[Fraction, ...]
    excluded: Tuple[Fraction, ...] = ()
    guard: Optional[Polynomial] = None  # in the parameter only; its zeros are excluded

    def __post_init__(self):
        if self.parameter in self.variables:
            raise FamilySpecError(f"parameter '{self.parameter}' is also a singularity variable")
        if not self.samples:
            raise FamilySpecError("a family needs at least one sample")
        clash = sorted(set(self.samples) & set(self.excluded))
        if clash:
            raise FamilySpecError(f"samples {[str(t) for t in clash]} are excluded parameter values")
        if self.guard is not None:
            bad = [t for t in self.samples if self.guard.evaluate({self.parameter: t}) == 0]
            if bad:
                raise FamilySpecError(f"samples {[str(t) for t in bad]} are zeros of the guard {self.guard}")

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "FamilySpec":
        """Read {"poly", "vars", "param", "samples", "excluded"?, "guard"?}"""
        for key in ("poly", "vars", "param", "samples"):
            if key not in data:
                raise FamilySpecError(f"family specification is missing '{key}'")
        variables = tuple(data["vars"])
        parameter = str(data["param"])
        if parameter in variables:
            raise FamilySpecError(f"parameter '{parameter}' is also a singularity variable")
        poly = parse_poly(str(data["poly"]), list(variables) + [parameter])
        guard = None
        if data.get("guard"):
            guard = parse_poly(str(data["guard"]), [parameter])
        return cls(
            poly=poly,
            variables=variables,
            parameter=parameter,
            samples=tuple(_to_fraction(t, "sample") for t in data["samples"]),
            excluded=tuple(_to_fraction(t, "excluded value") for t in data.get("excluded", [])),
            guard=guard,
        )

    @classmethod
    def from_json(cls, path: Union[str, Path]) -> "FamilySpec":
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            raise FamilySpecError(f"{path}: invalid JSON ({e})") from e
        if not isinstance(data, dict):
            raise FamilySpecError(f"{path}: expected a JSON object")
        return cls.from_dict(data)

    def specialize(self, t: Rational) -> Polynomial:
        return self.poly.substitute(self.parameter, Fraction(t)).embed(self.variables)


@dataclass(frozen=True)
class FamilyRow:
    t: Fraction
    mu: Optional[int]  # None for a non-isolated member
    nu: Optional[int]
    lct: Optional[Fraction]  # None when unavailable
    note: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "t": str(self.t),
            "mu": self.mu,
            "nu": self.nu,
            "lct": str(self.lct) if self.lct is not None else "unavailable",
            "note": self.note,
        }


def _constant(values: Sequence[Any]) -> bool:
    return len(set(values)) <= 1


@dataclass(frozen=True)
class FamilyReport:
    rows: Tuple[FamilyRow, ...]
    mu_constant: bool
    nu_constant: bool
    lct_constant: Optional[bool]  # None: unavailable for some member
    zariski_verdict: str  # "pass" | "fail" | "not-applicable"
    notes: Tuple[str, ...] = field(default=())

    @classmethod
    def from_rows(cls, rows: Sequence[FamilyRow]) -> "FamilyReport":
        rows = tuple(sorted(rows, key=lambda r: r.t))
        mu_constant = all(r.mu is not None for r in rows) and _constant([r.mu for r in rows])
        nu_constant = _constant([r.nu for r in rows])
        lcts = [r.lct for r in rows]
        lct_constant = None if any(v is None for v in lcts) else _constant(lcts)
        if not mu_constant:
            verdict = "not-applicable"
        elif nu_constant and lct_constant is not False:
            verdict = "pass"
        else:
            verdict = "fail"
        notes = ("constancy checked on the listed samples only",)
        return cls(rows, mu_constant, nu_constant, lct_constant, verdict, notes)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rows": [r.to_dict() for r in self.rows],
            "mu_constant": self.mu_constant,
            "nu_constant": self.nu_constant,
            "lct_constant": self.lct_constant if self.lct_constant is not None else "unavailable",
            "zariski_verdict": self.zariski_verdict,
            "notes": list(self.notes),
        }


def evaluate_member(f: Polynomial, t: Fraction) -> FamilyRow:
    """mu, nu and (for plane curves) lct of one specialised member"""
    try:
        nu = multiplicity(f)
    except SingulatorError as e:
        return FamilyRow(t, None, None, None, str(e))
    mu = milnor_number(f)
    if mu == INFINITE:
        return FamilyRow(t, None, nu, None, "non-isolated singularity")
    if f.nvars != 2:
        return FamilyRow(t, int(mu), nu, None)
    try:
        threshold = lct(embedded_resolution(f))
    except SingulatorError as e:
        logger.warning("t=%s: resolution failed (%s); lct marked unavailable", t, e)
        return FamilyRow(t, int(mu), nu, None, f"resolution failed: {e}")
    return FamilyRow(t, int(mu), nu, threshold)


def _evaluate_sample(args: Tuple[FamilySpec, Fraction]) -> FamilyRow:
    spec, t = args
    return evaluate_member(spec.specialize(t), t)


def family_check(spec: FamilySpec, workers: int = 1) -> FamilyReport:
    """
    Evaluate every sample and compare the invariants

    Args:
        spec: Family specification
        workers: Number of worker processes (1 = evaluate in this process)

    Returns:
        FamilyReport with rows sorted by sample value
    """
    jobs = [(spec, t) for t in spec.samples]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_evaluate_sample, jobs))
    else:
        rows = [_evaluate_sample(job) for job in jobs]
    report = FamilyReport.from_rows(rows)
    logger.info("family %s: verdict %s", spec.poly, report.zariski_verdict)
    return report


# ---------- Adjacency ----------

@dataclass(frozen=True)
class AdjacencyReport:
    base_mu: int
    base_nu: int
    rows: Tuple[Tuple[Fraction, int, int], ...]  # (s, mu, nu) of f0 + s * p
    semicontinuous: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "base": {"mu": self.base_mu, "nu": self.base_nu},
            "rows": [{"s": str(s), "mu": mu, "nu": nu} for s, mu, nu in self.rows],
            "semicontinuous": self.semicontinuous,
        }


def adjacency_check(f0: Polynomial, perturbation: Polynomial, scales: Sequence[Rational]) -> AdjacencyReport:
    """Invariants of f0 + s * perturbation for nonzero scales s; mu and nu may only drop"""
    if any(Fraction(s) == 0 for s in scales):
        raise InputError("perturbation scales must be nonzero")
    base_mu = milnor_number(f0)
    if base_mu == INFINITE:
        raise SingulatorError(f"{f0} is not an isolated singularity")
    base_nu = multiplicity(f0)
    rows = []
    for s in sorted(Fraction(s) for s in scales):
        fs = f0 + perturbation.scale(s)
        mu = milnor_number(fs)
        rows.append((s, mu if mu == INFINITE else int(mu), multiplicity(fs)))
    semicontinuous = all(mu <= base_mu and nu <= base_nu for _, mu, nu in rows)
    return AdjacencyReport(int(base_mu), base_nu, tuple(rows), semicontinuous)


# ---------- Brieskorn polynomials ----------

def brieskorn_polynomial(p: int, m: int) -> Polynomial:
    """z0^p + z1^2 + ... + z_{2m+1}^2"""
    if p < 2 or m < 0:
        raise InputError(f"need p >= 2 and m >= 0, got p={p}, m={m}")
    variables = [f"z{i}" for i in range(2 * m + 2)]
    f = Polynomial.monomial(variables, (p,) + (0,) * (2 * m + 1))
    for i in range(1, 2 * m + 2):
        exps = [0] * (2 * m + 2)
        exps[i] = 2
        f = f + Polynomial.monomial(variables, tuple(exps))
    return f


def brieskorn_milnor_number(exponents: Sequence[int]) -> int:
    """Milnor number of z_0^{a_0} + ... + z_n^{a_n}: product of (a_i - 1)"""
    result = 1
    for a in exponents:
        if a < 2:
            raise InputError(f"Brieskorn exponents must be >= 2, got {a}")
        result *= a - 1
    return result


def brieskorn_link_is_standard_sphere(p: int, m: int) -> bool:
    """
    Whether the link of z0^p + z1^2 + ... + z_{2m+1}^2 is the standard sphere S^{4m+1}.

    For odd p the link is a homotopy sphere; it is the standard one iff p = +-1 mod 8
    (otherwise the Kervaire sphere). Even p never gives a homotopy sphere.
    """
    if p < 2 or m < 1:
        raise InputError(f"need p >= 2 and m >= 1, got p={p}, m={m}")
    if p % 2 == 0:
        return False
    return p % 8 in (1, 7)


# ---------- Cross-ratio and j-invariant ----------

def _sympify(value: Any):
    import sympy

    if isinstance(value, Fraction):
        return sympy.Rational(value.numerator, value.denominator)
    expr = sympy.sympify(value, rational=True) if isinstance(value, str) else sympy.sympify(value)
    if expr.has(sympy.oo, -sympy.oo, sympy.zoo):
        raise InputError("points at infinity are not supported; use a finite chart")
    return expr


def cross_ratio(z1: Any, z2: Any, z3: Any, z4: Any):
    """((z1 - z3)(z2 - z4)) / ((z1 - z4)(z2 - z3)) as a cancelled rational function"""
    import sympy

    points = [_sympify(z) for z in (z1, z2, z3, z4)]
    for i in range(4):
        for j in range(i + 1, 4):
            if sympy.cancel(points[i] - points[j]) == 0:
                raise CoincidentPointsError(f"points {i + 1} and {j + 1} coincide ({points[i]})")
    a, b, c, d = points
    return sympy.factor(sympy.cancel(((a - c) * (b - d)) / ((a - d) * (b - c))))


def j_invariant(lam: Any):
    """256 (l^2 - l + 1)^3 / (l^2 (l - 1)^2)"""
    import sympy

    value = _sympify(lam)
    if sympy.cancel(value) == 0 or sympy.cancel(value - 1) == 0:
        raise InputError("j-invariant is undefined at lambda = 0 and lambda = 1")
    return sympy.factor(sympy.cancel(256 * (value ** 2 - value + 1) ** 3 / (value ** 2 * (value - 1) ** 2)))
