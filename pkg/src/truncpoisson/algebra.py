"""The truncated polynomial Poisson algebra in two variables.

C[X,Y] modulo (X^a, Y^b), with monomial basis X^i Y^j (0 <= i < a,
0 <= j < b) and the Poisson bracket generated by {X, Y} = X*Y.  Elements
carry exact rational coefficients and are truncated eagerly, so equality is
coefficientwise.  The closed-form monomial bracket used here,

    {X^i Y^j, X^k Y^l} = (i*l - j*k) X^(i+k) Y^(j+l),

is validated in the test suite against an independent Leibniz-expansion
oracle built only from the brackets with the two generators.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterator, Mapping, NamedTuple

from .linalg import Vector, _frac


@dataclass(frozen=True)
class TruncParams:
    """Exponent bounds (a, b): X^a = 0 and Y^b = 0, both at least 2."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < 2 or self.b < 2:
            raise ValueError(f"need two integers a,b ≥ 2, got ({self.a}, {self.b})")

    @property
    def dim(self) -> int:
        return self.a * self.b

    def monomials(self) -> Iterator[tuple[int, int]]:
        """All basis exponent pairs in row-major order (i outermost)."""
        for i in range(self.a):
            for j in range(self.b):
                yield (i, j)

    def index_of(self, i: int, j: int) -> int:
        return i * self.b + j


class AlgebraElement:
    """A linear combination of basis monomials, stored sparsely without zeros."""

    __slots__ = ("params", "coeffs")

    def __init__(self, params: TruncParams, coeffs: Mapping[tuple[int, int], Fraction]):
        clean: dict[tuple[int, int], Fraction] = {}
        a, b = params.a, params.b
        for (i, j), c in coeffs.items():
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent ({i},{j})")
            c = _frac(c)
            if c and i < a and j < b:
                clean[(i, j)] = c
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "coeffs", MappingProxyType(clean))

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraElement is immutable")

    @classmethod
    def zero(cls, params: TruncParams) -> "AlgebraElement":
        return cls(params, {})

    @classmethod
    def monomial(cls, params: TruncParams, i: int, j: int, coeff=1) -> "AlgebraElement":
        return cls(params, {(i, j): _frac(coeff)})

    @classmethod
    def one(cls, params: TruncParams) -> "AlgebraElement":
        return cls.monomial(params, 0, 0)

    @classmethod
    def gen_x(cls, params: TruncParams) -> "AlgebraElement":
        return cls.monomial(params, 1, 0)

    @classmethod
    def gen_y(cls, params: TruncParams) -> "AlgebraElement":
        return cls.monomial(params, 0, 1)

    def coefficient(self, i: int, j: int) -> Fraction:
        return self.coeffs.get((i, j), Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check_params(self, other: "AlgebraElement"):
        if self.params != other.params:
            raise ValueError(f"mismatched algebra parameters {self.params} vs {other.params}")

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.params == other.params and self.coeffs == other.coeffs

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check_params(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + c
        return AlgebraElement(self.params, out)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.params, {k: -c for k, c in self.coeffs.items()})

    def scale(self, s) -> "AlgebraElement":
        s = _frac(s)
        return AlgebraElement(self.params, {k: s * c for k, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def to_vector(self) -> Vector:
        """Dense coefficient vector in row-major (i,j) order."""
        zero = Fraction(0)
        return tuple(self.coeffs.get(ij, zero) for ij in self.params.monomials())

    @classmethod
    def from_vector(cls, params: TruncParams, v) -> "AlgebraElement":
        return cls(params, dict(zip(params.monomials(), v)))

    def __repr__(self):
        return f"AlgebraElement({self.params.a},{self.params.b}: {render_element(self)})"

    def __str__(self):
        return render_element(self)


def multiply(u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    """Truncated product: e_ij * e_kl = e_{i+k,j+l}, zero past the bounds."""
    u._check_params(v)
    a, b = u.params.a, u.params.b
    out: dict[tuple[int, int], Fraction] = {}
    for (i, j), c in u.coeffs.items():
        for (k, l), d in v.coeffs.items():
            if i + k < a and j + l < b:
                key = (i + k, j + l)
                out[key] = out.get(key, Fraction(0)) + c * d
    return AlgebraElement(u.params, out)


def bracket(u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    """Poisson bracket, the bilinear extension of (il - jk) e_{i+k,j+l}."""
    u._check_params(v)
    a, b = u.params.a, u.params.b
    out: dict[tuple[int, int], Fraction] = {}
    for (i, j), c in u.coeffs.items():
        for (k, l), d in v.coeffs.items():
            s = i * l - j * k
            if s and i + k < a and j + l < b:
                key = (i + k, j + l)
                out[key] = out.get(key, Fraction(0)) + s * c * d
    return AlgebraElement(u.params, out)


class EulerDims(NamedTuple):
    chi0: int
    chi1: int
    chi2: int


def euler_dims(p: TruncParams) -> EulerDims:
    """Dimensions of the multiderivation spaces: ab, b(a-1)+a(b-1), (a-1)(b-1)."""
    return EulerDims(p.a * p.b, p.b * (p.a - 1) + p.a * (p.b - 1), (p.a - 1) * (p.b - 1))


# Plain-text rendering / parsing, e.g. "3*X^2*Y + 1/2*X".

def _render_monomial(i: int, j: int) -> str:
    parts = []
    if i == 1:
        parts.append("X")
    elif i > 1:
        parts.append(f"X^{i}")
    if j == 1:
        parts.append("Y")
    elif j > 1:
        parts.append(f"Y^{j}")
    return "*".join(parts)


def render_element(u: AlgebraElement) -> str:
    if u.is_zero():
        return "0"
    chunks = []
    for (i, j) in sorted(u.coeffs, reverse=True):
        c = u.coeffs[(i, j)]
        mono = _render_monomial(i, j)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not chunks:
            chunks.append(body if c > 0 else f"-{body}")
        else:
            chunks.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(chunks)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>[XY])(?:\^(?P<exp>\d+))?|(?P<op>[+\-*]))")


def parse_element(params: TruncParams, text: str) -> AlgebraElement:
    """Parse the plain-text rendering back into an element (round-trips render)."""
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError(f"cannot parse element at: {text[pos:]!r}")
            break
        pos = m.end()
        if m.group("num"):
            tokens.append(("num", Fraction(m.group("num"))))
        elif m.group("var"):
            tokens.append(("var", (m.group("var"), int(m.group("exp") or 1))))
        else:
            tokens.append(("op", m.group("op")))

    coeffs: dict[tuple[int, int], Fraction] = {}
    sign = Fraction(1)
    coeff: Fraction | None = None
    ij: list[int] | None = None
    started = False

    def flush():
        nonlocal sign, coeff, ij, started
        if not started:
            return
        c = sign * (coeff if coeff is not None else Fraction(1))
        i, j = ij if ij is not None else (0, 0)
        key = (i, j)
        coeffs[key] = coeffs.get(key, Fraction(0)) + c
        sign, coeff, ij, started = Fraction(1), None, None, False

    for kind, val in tokens:
        if kind == "op" and val in "+-":
            flush()
            if val == "-":
                sign = -sign
        elif kind == "op":  # '*' separator
            continue
        elif kind == "num":
            if started and coeff is not None:
                raise ValueError("two coefficients in one term")
            coeff = val
            started = True
        else:
            var, exp = val
            if ij is None:
                ij = [0, 0]
            ij[0 if var == "X" else 1] += exp
            started = True
    flush()
    if not tokens and text.strip() != "0":
        raise ValueError(f"empty element text: {text!r}")
    return AlgebraElement(params, coeffs)
