"""
Sparse multivariate polynomials with exact rational coefficients, plus the
expression parser and printer.
"""

import math
import re
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import (
    ExponentError,
    PolynomialSyntaxError,
    UnknownVariableError,
    VariableMismatchError,
)

Monomial = Tuple[int, ...]
Coefficient = Union[int, Fraction]

# min_total_degree of the zero polynomial
INFINITE = math.inf


def divides(a: Monomial, b: Monomial) -> bool:
    """True if monomial a divides monomial b"""
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_quotient(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


class Polynomial:
    """Immutable sparse polynomial over Q in an ordered list of variables"""

    __slots__ = ("_variables", "_terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Optional[Mapping[Monomial, Coefficient]] = None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise VariableMismatchError(f"duplicate variable names in {list(variables)}")
        clean: Dict[Monomial, Fraction] = {}
        for mon, coef in (terms or {}).items():
            mon = tuple(int(e) for e in mon)
            if len(mon) != len(variables):
                raise ValueError(f"monomial {mon} does not match {len(variables)} variables")
            if any(e < 0 for e in mon):
                raise ExponentError(f"negative exponent in monomial {mon}")
            coef = Fraction(coef)
            if coef:
                clean[mon] = clean.get(mon, Fraction(0)) + coef
        self._variables = variables
        self._terms = {m: c for m, c in clean.items() if c}
        self._hash = None

    # ---------- Constructors ----------

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "Polynomial":
        return cls(variables)

    @classmethod
    def constant(cls, variables: Sequence[str], value: Coefficient) -> "Polynomial":
        return cls(variables, {(0,) * len(tuple(variables)): value})

    @classmethod
    def variable(cls, variables: Sequence[str], name: str) -> "Polynomial":
        variables = tuple(variables)
        if name not in variables:
            raise UnknownVariableError(name)
        exps = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {exps: 1})

    @classmethod
    def monomial(cls, variables: Sequence[str], exponents: Monomial, coefficient: Coefficient = 1) -> "Polynomial":
        return cls(variables, {tuple(exponents): coefficient})

    # ---------- Accessors ----------

    @property
    def variables(self) -> Tuple[str, ...]:
        return self._variables

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    @property
    def nvars(self) -> int:
        return len(self._variables)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def support(self) -> List[Monomial]:
        return sorted(self._terms, key=_grlex_key, reverse=True)

    def coefficient(self, mon: Monomial) -> Fraction:
        return self._terms.get(tuple(mon), Fraction(0))

    @property
    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self.nvars)

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self._terms)

    def total_degree(self) -> int:
        """Largest total degree in the support (-1 for the zero polynomial)"""
        return max((sum(m) for m in self._terms), default=-1)

    def min_degree(self) -> Union[int, float]:
        return min((sum(m) for m in self._terms), default=INFINITE)

    def degree_in(self, var: str) -> int:
        i = self._index(var)
        return max((m[i] for m in self._terms), default=-1)

    def _index(self, var: str) -> int:
        try:
            return self._variables.index(var)
        except ValueError:
            raise UnknownVariableError(var) from None

    # ---------- Arithmetic ----------

    def _align(self, other) -> Tuple["Polynomial", "Polynomial"]:
        if isinstance(other, (int, Fraction)):
            return self, Polynomial.constant(self._variables, other)
        if not isinstance(other, Polynomial):
            raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")
        if other._variables == self._variables:
            return self, other
        if set(other._variables) <= set(self._variables):
            return self, other.embed(self._variables)
        if set(self._variables) <= set(other._variables):
            return self.embed(other._variables), other
        raise VariableMismatchError(
            f"incompatible variables {list(self._variables)} and {list(other._variables)}"
        )

    def __add__(self, other):
        if not isinstance(other, (int, Fraction, Polynomial)):
            return NotImplemented
        a, b = self._align(other)
        terms = dict(a._terms)
        for mon, coef in b._terms.items():
            terms[mon] = terms.get(mon, Fraction(0)) + coef
        return Polynomial(a._variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self._variables, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, (int, Fraction, Polynomial)):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, (int, Fraction, Polynomial)):
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        a, b = self._align(other)
        terms: Dict[Monomial, Fraction] = {}
        for m1, c1 in a._terms.items():
            for m2, c2 in b._terms.items():
                mon = tuple(x + y for x, y in zip(m1, m2))
                terms[mon] = terms.get(mon, Fraction(0)) + c1 * c2
        return Polynomial(a._variables, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or isinstance(exponent, bool) or exponent < 0:
            raise ExponentError(f"exponent must be a nonnegative integer, got {exponent!r}")
        result = Polynomial.constant(self._variables, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def scale(self, factor: Coefficient) -> "Polynomial":
        factor = Fraction(factor)
        return Polynomial(self._variables, {m: c * factor for m, c in self._terms.items()})

    def multiply_monomial(self, mon: Monomial, coefficient: Coefficient = 1) -> "Polynomial":
        coefficient = Fraction(coefficient)
        return Polynomial(
            self._variables,
            {tuple(x + y for x, y in zip(m, mon)): c * coefficient for m, c in self._terms.items()},
        )

    def divide_by_monomial(self, mon: Monomial) -> "Polynomial":
        """Exact division by a monomial dividing every term"""
        mon = tuple(mon)
        if not all(divides(mon, m) for m in self._terms):
            raise ValueError(f"{mon} does not divide every term of {self}")
        return Polynomial(self._variables, {monomial_quotient(m, mon): c for m, c in self._terms.items()})

    # ---------- Comparison ----------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self._variables, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._variables == other._variables and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._variables, frozenset(self._terms.items())))
        return self._hash

    # ---------- Structure ----------

    def embed(self, variables: Sequence[str]) -> "Polynomial":
        """Re-express over a variable list containing every variable in the support"""
        variables = tuple(variables)
        used = {v for m in self._terms for v, e in zip(self._variables, m) if e}
        missing = used - set(variables)
        if missing:
            raise VariableMismatchError(f"variables {sorted(missing)} are used but not in {list(variables)}")
        positions = [self._variables.index(v) if v in self._variables else None for v in variables]
        terms = {}
        for mon, coef in self._terms.items():
            terms[tuple(mon[p] if p is not None else 0 for p in positions)] = coef
        return Polynomial(variables, terms)

    def homogeneous_part(self, degree: int) -> "Polynomial":
        return Polynomial(self._variables, {m: c for m, c in self._terms.items() if sum(m) == degree})

    def tangent_cone(self) -> "Polynomial":
        """Lowest-degree homogeneous part"""
        if self.is_zero:
            return self
        return self.homogeneous_part(int(self.min_degree()))

    def truncate(self, degree: int) -> "Polynomial":
        """Drop every term of total degree >= degree"""
        return Polynomial(self._variables, {m: c for m, c in self._terms.items() if sum(m) < degree})

    def derivative(self, var: str) -> "Polynomial":
        i = self._index(var)
        terms = {}
        for mon, coef in self._terms.items():
            if mon[i]:
                new = list(mon)
                new[i] -= 1
                terms[tuple(new)] = coef * mon[i]
        return Polynomial(self._variables, terms)

    def substitute(self, var: str, value: Union["Polynomial", Coefficient]) -> "Polynomial":
        """Replace var by value and expand"""
        i = self._index(var)
        if isinstance(value, Polynomial):
            f, g = self._align(value)
        else:
            f, g = self, Polynomial.constant(self._variables, value)
        powers: Dict[int, Polynomial] = {0: Polynomial.constant(f._variables, 1)}
        result = Polynomial.zero(f._variables)
        grouped: Dict[int, Dict[Monomial, Fraction]] = {}
        for mon, coef in f._terms.items():
            rest = list(mon)
            rest[i] = 0
            grouped.setdefault(mon[i], {})[tuple(rest)] = coef
        for e in sorted(grouped):
            if e not in powers:
                powers[e] = g ** e
            result = result + Polynomial(f._variables, grouped[e]) * powers[e]
        return result

    def evaluate(self, point: Mapping[str, Coefficient]) -> Fraction:
        """Evaluate at a point given for every variable"""
        values = []
        for v in self._variables:
            if v not in point:
                raise UnknownVariableError(v)
            values.append(Fraction(point[v]))
        total = Fraction(0)
        for mon, coef in self._terms.items():
            term = coef
            for x, e in zip(values, mon):
                if e:
                    term *= x ** e
            total += term
        return total

    # ---------- sympy bridge ----------

    def to_sympy(self):
        """Return a sympy expression in symbols named like the variables"""
        import sympy

        symbols = tuple(sympy.Symbol(v) for v in self._variables)
        expr = sympy.Integer(0)
        for mon, coef in self._terms.items():
            term = sympy.Rational(coef.numerator, coef.denominator)
            for s, e in zip(symbols, mon):
                if e:
                    term *= s ** e
            expr += term
        return expr

    @classmethod
    def from_sympy(cls, expr, variables: Sequence[str]) -> "Polynomial":
        import sympy

        variables = tuple(variables)
        symbols = tuple(sympy.Symbol(v) for v in variables)
        poly = sympy.Poly(sympy.expand(expr), *symbols, domain=sympy.QQ)
        terms = {}
        for mon, coef in poly.terms():
            coef = sympy.Rational(coef)
            terms[tuple(mon)] = Fraction(int(coef.p), int(coef.q))
        return cls(variables, terms)

    # ---------- Printing ----------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_poly(self)!r}, variables={list(self._variables)})"


def _grlex_key(mon: Monomial) -> Tuple[int, Monomial]:
    return (sum(mon), mon)


# ---------- Printer ----------

def _format_term(coef: Fraction, mon: Monomial, variables: Sequence[str]) -> str:
    factors = [name if e == 1 else f"{name}^{e}" for name, e in zip(variables, mon) if e]
    magnitude = abs(coef)
    if not factors:
        return str(magnitude)
    if magnitude == 1:
        return "*".join(factors)
    return f"{magnitude}*" + "*".join(factors)


def format_poly(f: Polynomial) -> str:
    """Print in graded lexicographic order, highest term first"""
    if f.is_zero:
        return "0"
    parts = []
    for i, mon in enumerate(f.support()):
        coef = f.terms[mon]
        body = _format_term(coef, mon, f.variables)
        if i == 0:
            parts.append(f"-{body}" if coef < 0 else body)
        else:
            parts.append(f" - {body}" if coef < 0 else f" + {body}")
    return "".join(parts)


# ---------- Parser ----------

_TOKEN_RE = re.compile(r"\s*(?:(?P<number>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")


def tokenize(text: str) -> List[Tuple[str, str, int]]:
    """Split an expression into (kind, text, position) tokens"""
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise PolynomialSyntaxError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    """Recursive-descent parser for the polynomial grammar"""

    def __init__(self, text: str, variables: Sequence[str]):
        self.variables = tuple(variables)
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Tuple[str, str, int]:
        return self.tokens[self.index]

    def advance(self) -> Tuple[str, str, int]:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def at(self, text: str) -> bool:
        kind, value, _ = self.current
        return kind == "op" and value == text

    def expect(self, text: str):
        if not self.at(text):
            kind, value, pos = self.current
            found = "end of input" if kind == "end" else repr(value)
            raise PolynomialSyntaxError(f"expected {text!r}, found {found}", pos)
        self.advance()

    def parse(self) -> Polynomial:
        result = self.parse_expr()
        kind, value, pos = self.current
        if kind != "end":
            raise PolynomialSyntaxError(f"unexpected {value!r} (use '*' for multiplication)", pos)
        return result

    def parse_expr(self) -> Polynomial:
        sign = 1
        if self.at("+") or self.at("-"):
            sign = -1 if self.advance()[1] == "-" else 1
        result = self.parse_term().scale(sign)
        while self.at("+") or self.at("-"):
            op = self.advance()[1]
            term = self.parse_term()
            result = result + term if op == "+" else result - term
        return result

    def parse_term(self) -> Polynomial:
        result = self.parse_factor()
        while self.at("*"):
            self.advance()
            result = result * self.parse_factor()
        return result

    def parse_factor(self) -> Polynomial:
        base = self.parse_atom()
        while self.at("^"):
            self.advance()
            base = base ** self.parse_exponent()
        return base

    def parse_exponent(self) -> int:
        kind, value, pos = self.current
        if kind == "number":
            self.advance()
            if self.at("/"):
                raise ExponentError("non-integer exponent", pos)
            return int(value)
        if self.at("-"):
            raise ExponentError("negative exponent", pos)
        if self.at("("):
            self.advance()
            inner = self.parse_expr()
            self.expect(")")
            if not inner.is_constant():
                raise ExponentError("exponent must be a constant", pos)
            c = inner.constant_term
            if c < 0:
                raise ExponentError("negative exponent", pos)
            if c.denominator != 1:
                raise ExponentError("non-integer exponent", pos)
            return int(c)
        found = "end of input" if kind == "end" else repr(value)
        raise PolynomialSyntaxError(f"expected exponent, found {found}", pos)

    def parse_atom(self) -> Polynomial:
        kind, value, pos = self.current
        if kind == "number":
            self.advance()
            numerator = int(value)
            if self.at("/"):
                self.advance()
                kind2, value2, pos2 = self.current
                if kind2 != "number":
                    raise PolynomialSyntaxError("expected integer denominator", pos2)
                self.advance()
                if int(value2) == 0:
                    raise PolynomialSyntaxError("division by zero", pos2)
                return Polynomial.constant(self.variables, Fraction(numerator, int(value2)))
            return Polynomial.constant(self.variables, numerator)
        if kind == "ident":
            self.advance()
            if value not in self.variables:
                raise UnknownVariableError(value, pos)
            return Polynomial.variable(self.variables, value)
        if self.at("("):
            self.advance()
            inner = self.parse_expr()
            self.expect(")")
            return inner
        found = "end of input" if kind == "end" else repr(value)
        raise PolynomialSyntaxError(f"unexpected {found}", pos)


def parse_poly(text: str, variables: Optional[Iterable[str]] = None) -> Polynomial:
    """
    Parse an expression into a Polynomial

    Args:
        text: Expression such as "x^2*(x+t) + y^2*(y^2+t)"
        variables: Ordered variable names; defaults to the identifiers of the
            text in order of first appearance

    Returns:
        Polynomial in canonical sparse form
    """
    if variables is None:
        variables = []
        for kind, value, _ in tokenize(text):
            if kind == "ident" and value not in variables:
                variables.append(value)
    return _Parser(text, list(variables)).parse()


def partial_derivative(f: Polynomial, var: str) -> Polynomial:
    return f.derivative(var)


def substitute(f: Polynomial, var: str, g: Union[Polynomial, Coefficient]) -> Polynomial:
    return f.substitute(var, g)


def min_total_degree(f: Polynomial) -> Union[int, float]:
    """Minimal total degree of the support; INFINITE for the zero polynomial"""
    return f.min_degree()
