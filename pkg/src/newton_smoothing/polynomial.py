"""Sparse bivariate polynomials in t1, t2 with exact rational coefficients.

Includes a small recursive-descent parser for the text form used on the
command line, e.g. ``"t1^2 + 3/2*t1^4*t2^6 - t2^8"``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Union

Exponent = tuple[int, int]
Number = Union[int, Fraction]


class PolynomialParseError(ValueError):
    """Raised for malformed polynomial text.  ``position`` is a 0-based offset."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class ZeroPolynomialError(PolynomialParseError):
    pass


class NoPureMonomialError(ValueError):
    """Neither t1^m nor t2^n occurs; the swap normalization is undefined."""


@dataclass(frozen=True)
class Monomial:
    m: int
    n: int
    coeff: Fraction

    @property
    def exponent(self) -> Exponent:
        return (self.m, self.n)


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"coefficients must be int, Fraction or str, got {type(value).__name__}")


def _falling(k: int, order: int) -> int:
    out = 1
    for j in range(order):
        out *= k - j
    return out


class BivariatePolynomial:
    """Immutable map (m, n) -> coefficient; zero coefficients are dropped."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, Number] | Iterable[tuple[Exponent, Number]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, Fraction] = {}
        for (m, n), c in items:
            m, n = int(m), int(n)
            if m < 0 or n < 0:
                raise ValueError(f"negative exponent in ({m}, {n})")
            acc[(m, n)] = acc.get((m, n), Fraction(0)) + _as_fraction(c)
        clean = {k: acc[k] for k in sorted(acc) if acc[k] != 0}
        self._terms = MappingProxyType(clean)
        self._hash = None

    # construction helpers
    @classmethod
    def monomial(cls, m: int, n: int, coeff: Number = 1) -> "BivariatePolynomial":
        return cls({(m, n): coeff})

    @classmethod
    def from_monomials(cls, monos: Iterable[Monomial]) -> "BivariatePolynomial":
        return cls((mo.exponent, mo.coeff) for mo in monos)

    # mapping-like access
    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return self._terms

    def support(self) -> list[Exponent]:
        return list(self._terms)

    def monomials(self) -> list[Monomial]:
        return [Monomial(m, n, c) for (m, n), c in self._terms.items()]

    def coefficient(self, m: int, n: int) -> Fraction:
        return self._terms.get((m, n), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Exponent]:
        return iter(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, BivariatePolynomial):
            return dict(self._terms) == dict(other._terms)
        if isinstance(other, (int, Fraction)):
            return self == BivariatePolynomial({(0, 0): other})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    # arithmetic
    def __add__(self, other) -> "BivariatePolynomial":
        other = _coerce(other)
        return BivariatePolynomial(list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self) -> "BivariatePolynomial":
        return BivariatePolynomial({k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> "BivariatePolynomial":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "BivariatePolynomial":
        return _coerce(other) - self

    def __mul__(self, other) -> "BivariatePolynomial":
        other = _coerce(other)
        out: dict[Exponent, Fraction] = {}
        for (m1, n1), c1 in self._terms.items():
            for (m2, n2), c2 in other._terms.items():
                key = (m1 + m2, n1 + n2)
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return BivariatePolynomial(out)

    __rmul__ = __mul__

    def restrict(self, keep) -> "BivariatePolynomial":
        """Terms whose exponent satisfies ``keep((m, n))``."""
        return BivariatePolynomial({k: c for k, c in self._terms.items() if keep(k)})

    def swap_variables(self) -> "BivariatePolynomial":
        return BivariatePolynomial({(n, m): c for (m, n), c in self._terms.items()})

    def total_degree(self) -> int:
        return max((m + n for m, n in self._terms), default=0)

    def is_quasi_homogeneous(self, weight: tuple[int, int]) -> bool:
        values = {weight[0] * m + weight[1] * n for m, n in self._terms}
        return len(values) <= 1

    # evaluation
    def evaluate(self, t1, t2):
        """Horner in t1 over coefficients that are Horner polynomials in t2.

        Exact for Fraction/int inputs, float arithmetic for float inputs.
        """
        if not self._terms:
            return 0 * t1
        rows: dict[int, dict[int, Fraction]] = {}
        for (m, n), c in self._terms.items():
            rows.setdefault(m, {})[n] = c
        float_mode = isinstance(t1, float) or isinstance(t2, float)

        def coeff(c):
            return float(c) if float_mode else c

        def horner_t2(row: dict[int, Fraction]):
            top = max(row)
            acc = coeff(row[top])
            for n in range(top - 1, -1, -1):
                acc = acc * t2 + coeff(row.get(n, 0))
            return acc

        top_m = max(rows)
        acc = horner_t2(rows[top_m])
        for m in range(top_m - 1, -1, -1):
            acc = acc * t1
            if m in rows:
                acc = acc + horner_t2(rows[m])
        return acc

    __call__ = evaluate

    def evaluate_numpy(self, t1, t2):
        """Vectorised float evaluation (numpy arrays broadcast as usual)."""
        out = 0.0
        for (m, n), c in self._terms.items():
            out = out + float(c) * (t1 ** m) * (t2 ** n)
        return out

    # printing
    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"BivariatePolynomial({format_polynomial(self)!r})"


def _coerce(value) -> BivariatePolynomial:
    if isinstance(value, BivariatePolynomial):
        return value
    if isinstance(value, (int, Fraction)):
        return BivariatePolynomial({(0, 0): value})
    raise TypeError(f"cannot combine polynomial with {type(value).__name__}")


def format_polynomial(poly: BivariatePolynomial) -> str:
    """Canonical text: lex order on (m, n), '*' between factors, 'p/q' coefficients."""
    if poly.is_zero():
        return "0"
    parts: list[str] = []
    for idx, ((m, n), c) in enumerate(poly.terms.items()):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        factors = []
        if m:
            factors.append("t1" if m == 1 else f"t1^{m}")
        if n:
            factors.append("t2" if n == 1 else f"t2^{n}")
        if mag != 1 or not factors:
            factors.insert(0, str(mag))
        body = "*".join(factors)
        if idx == 0:
            parts.append(("-" if sign == "-" else "") + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


# ---------------------------------------------------------------- parser

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+\.\d*|\.\d+|\d+)
  | (?P<var>t1|t2)
  | (?P<op>[-+*/^])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise PolynomialParseError(f"unexpected character {text[pos]!r}", pos)
        kind = match.lastgroup
        if kind != "ws":
            tokens.append(_Token(kind, match.group(), pos))
        pos = match.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, strict: bool):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.strict = strict

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def take(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, text: str | None = None) -> _Token:
        tok = self.take()
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text or kind
            got = tok.text or "end of input"
            raise PolynomialParseError(f"expected {want!r}, found {got!r}", tok.pos)
        return tok

    def parse(self) -> dict[Exponent, Fraction]:
        acc: dict[Exponent, Fraction] = {}
        sign = 1
        # a leading sign is accepted as a convenience
        if self.peek().kind == "op" and self.peek().text in "+-":
            sign = -1 if self.take().text == "-" else 1
        while True:
            exp, coeff = self.term()
            acc[exp] = acc.get(exp, Fraction(0)) + sign * coeff
            tok = self.peek()
            if tok.kind == "end":
                break
            if tok.kind == "op" and tok.text in "+-":
                self.take()
                sign = -1 if tok.text == "-" else 1
                continue
            raise PolynomialParseError(f"expected '+', '-' or end, found {tok.text!r}", tok.pos)
        return acc

    def term(self) -> tuple[Exponent, Fraction]:
        tok = self.peek()
        coeff = Fraction(1)
        m = n = 0
        if tok.kind == "num":
            coeff = self.coefficient()
            while True:
                nxt = self.peek()
                if nxt.kind == "op" and nxt.text == "*":
                    self.take()
                    dm, dn = self.variable()
                elif nxt.kind == "var":
                    dm, dn = self.variable()
                else:
                    break
                m, n = m + dm, n + dn
        elif tok.kind == "var":
            m, n = self.variable()
            while self.peek().kind == "op" and self.peek().text == "*":
                self.take()
                dm, dn = self.variable()
                m, n = m + dm, n + dn
        else:
            raise PolynomialParseError(f"expected a term, found {tok.text or 'end of input'!r}", tok.pos)
        if self.strict and (m == 1 or n == 1):
            raise PolynomialParseError(
                "exponent 1 is not allowed in strict mode", tok.pos
            )
        return (m, n), coeff

    def coefficient(self) -> Fraction:
        tok = self.expect("num")
        if "." in tok.text:
            return Fraction(tok.text)
        value = Fraction(int(tok.text))
        nxt = self.peek()
        if nxt.kind == "op" and nxt.text == "/":
            self.take()
            den = self.expect("num")
            if "." in den.text:
                raise PolynomialParseError("denominator must be an unsigned integer", den.pos)
            if int(den.text) == 0:
                raise PolynomialParseError("zero denominator", den.pos)
            value /= int(den.text)
        return value

    def variable(self) -> Exponent:
        tok = self.expect("var")
        power = 1
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            nxt = self.peek()
            if nxt.kind == "op" and nxt.text == "-":
                raise PolynomialParseError("negative exponent", nxt.pos)
            num = self.expect("num")
            if "." in num.text:
                raise PolynomialParseError("exponent must be an unsigned integer", num.pos)
            power = int(num.text)
        return (power, 0) if tok.text == "t1" else (0, power)


def parse_polynomial(text: str, strict: bool = True) -> BivariatePolynomial:
    """Parse text such as ``"t1^2 + 3/2*t1^4*t2^6 + t2^8"``.

    With ``strict`` on, any factor with exponent exactly 1 is rejected.
    """
    poly = BivariatePolynomial(_Parser(text, strict).parse())
    if poly.is_zero():
        raise ZeroPolynomialError("zero polynomial")
    return poly


# ------------------------------------------------------------ calculus

def partial_derivative(poly: BivariatePolynomial, var: int, order: int = 1) -> BivariatePolynomial:
    """d^order/dt_var^order with var in {1, 2}."""
    if var not in (1, 2):
        raise ValueError("var must be 1 or 2")
    if order < 0:
        raise ValueError("order must be nonnegative")
    out: dict[Exponent, Fraction] = {}
    for (m, n), c in poly.terms.items():
        k = m if var == 1 else n
        if k < order:
            continue
        factor = _falling(k, order)
        key = (m - order, n) if var == 1 else (m, n - order)
        out[key] = c * factor
    return BivariatePolynomial(out)


def mixed_partial(poly: BivariatePolynomial) -> BivariatePolynomial:
    return partial_derivative(partial_derivative(poly, 1), 2)


def hessian_det(poly: BivariatePolynomial) -> BivariatePolynomial:
    p11 = partial_derivative(poly, 1, 2)
    p22 = partial_derivative(poly, 2, 2)
    p12 = mixed_partial(poly)
    return p11 * p22 - p12 * p12


def pure_exponents(poly: BivariatePolynomial) -> tuple[float | int, float | int]:
    """(m_s, n_s): smallest pure t1 and pure t2 exponents, inf when absent."""
    ms = min((m for m, n in poly if n == 0 and m > 0), default=math.inf)
    ns = min((n for m, n in poly if m == 0 and n > 0), default=math.inf)
    return ms, ns


def swap_normalize(poly: BivariatePolynomial) -> tuple[BivariatePolynomial, bool]:
    """Swap t1 and t2 when that makes the smallest pure exponent sit on t1."""
    ms, ns = pure_exponents(poly)
    if ms == math.inf and ns == math.inf:
        raise NoPureMonomialError("no pure monomial t1^m or t2^n; cannot normalize")
    if ns < ms:
        return poly.swap_variables(), True
    return poly, False


# univariate slices -----------------------------------------------------

@dataclass(frozen=True)
class UnivariateSlice:
    """A bivariate polynomial with one variable fixed to a rational value."""

    coeffs: tuple[Fraction, ...]  # low -> high degree
    fixed_var: int
    fixed_value: Fraction

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


def slice_polynomial(poly: BivariatePolynomial, fixed_var: int, value: Number) -> UnivariateSlice:
    value = _as_fraction(value)
    acc: dict[int, Fraction] = {}
    for (m, n), c in poly.terms.items():
        if fixed_var == 1:
            power, fixed = n, m
        else:
            power, fixed = m, n
        acc[power] = acc.get(power, Fraction(0)) + c * value ** fixed
    top = max((k for k, c in acc.items() if c != 0), default=-1)
    coeffs = tuple(acc.get(k, Fraction(0)) for k in range(top + 1))
    return UnivariateSlice(coeffs, fixed_var, value)
