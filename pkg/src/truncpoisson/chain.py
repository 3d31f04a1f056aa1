"""Kaehler forms, diagonal twist modules, and Poisson homology.

The chain complex lives on the differential forms of the truncated algebra:
degree 0 is the algebra, degree 1 is spanned by X^i Y^j dX (i <= a-2) and
X^i Y^j dY (j <= b-2), degree 2 by X^i Y^j dX^dY (i <= a-2, j <= b-2); the
torsion from X^a = Y^b = 0 is what caps the exponents.  Coefficients come
from a twisted module: the algebra itself as a space, with external bracket

    {X^i Y^j, X} = -(j + alpha) X^(i+1) Y^j
    {X^i Y^j, Y} =  (i - beta)  X^i Y^(j+1)

for rational twist parameters (alpha, beta).  (0, 0) recovers the intrinsic
bracket; (1-b, a-1) is the distinguished twist that restores degreewise
duality with the cohomology.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Mapping, Sequence

from .algebra import AlgebraElement, TruncParams, _render_monomial, multiply
from .cochain import cohomology
from .linalg import EchelonAccumulator, Matrix, Vector, _frac, column_space, nullspace

DX, DY, DXDY = "dX", "dY", "dX^dY"


@dataclass(frozen=True)
class TwistParams:
    """Diagonal twist (alpha, beta); arbitrary rationals are allowed."""

    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", _frac(self.alpha))
        object.__setattr__(self, "beta", _frac(self.beta))

    @classmethod
    def trivial(cls) -> "TwistParams":
        return cls(Fraction(0), Fraction(0))

    @classmethod
    def nakayama(cls, p: TruncParams) -> "TwistParams":
        """The twist (1-b, a-1) induced by the Nakayama automorphism."""
        return cls(Fraction(1 - p.b), Fraction(p.a - 1))

    def __str__(self):
        return f"({self.alpha}, {self.beta})"


def omega1_indices(p: TruncParams) -> list[tuple[int, int, str]]:
    """Degree-1 basis: the dX block then the dY block, lex in (i,j)."""
    idx = [(i, j, DX) for i in range(p.a - 1) for j in range(p.b)]
    idx += [(i, j, DY) for i in range(p.a) for j in range(p.b - 1)]
    return idx


def omega2_indices(p: TruncParams) -> list[tuple[int, int]]:
    return [(i, j) for i in range(p.a - 1) for j in range(p.b - 1)]


def omega_dims(p: TruncParams) -> tuple[int, int, int]:
    """Dimensions of the form spaces: ab, (a-1)b + a(b-1), (a-1)(b-1)."""
    a, b = p.a, p.b
    return (a * b, (a - 1) * b + a * (b - 1), (a - 1) * (b - 1))


class ChainElement:
    """A chain: coefficients over the form basis of one degree."""

    __slots__ = ("params", "degree", "coeffs")

    def __init__(self, params: TruncParams, degree: int, coeffs: Mapping):
        if degree not in (0, 1, 2):
            raise ValueError("chain degree must be 0, 1 or 2")
        valid = set(
            params.monomials() if degree == 0
            else omega1_indices(params) if degree == 1
            else omega2_indices(params)
        )
        clean = {}
        for key, c in coeffs.items():
            c = _frac(c)
            if not c:
                continue
            if key not in valid:
                raise ValueError(f"invalid degree-{degree} form index {key!r}")
            clean[key] = c
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", MappingProxyType(clean))

    def __setattr__(self, name, value):
        raise AttributeError("ChainElement is immutable")

    def __eq__(self, other):
        if not isinstance(other, ChainElement):
            return NotImplemented
        return (
            self.params == other.params
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_vector(self) -> Vector:
        if self.degree == 0:
            keys = list(self.params.monomials())
        elif self.degree == 1:
            keys = omega1_indices(self.params)
        else:
            keys = omega2_indices(self.params)
        zero = Fraction(0)
        return tuple(self.coeffs.get(k, zero) for k in keys)

    @classmethod
    def from_vector(cls, params: TruncParams, degree: int, v: Sequence) -> "ChainElement":
        if degree == 0:
            keys = list(params.monomials())
        elif degree == 1:
            keys = omega1_indices(params)
        else:
            keys = omega2_indices(params)
        if len(v) != len(keys):
            raise ValueError("vector length does not match the form basis")
        return cls(params, degree, dict(zip(keys, v)))

    def render(self) -> str:
        if self.is_zero():
            return "0"
        chunks = []
        if self.degree == 0:
            keys = sorted(self.coeffs, reverse=True)
        elif self.degree == 1:
            order = {k: n for n, k in enumerate(omega1_indices(self.params))}
            keys = sorted(self.coeffs, key=order.__getitem__)
        else:
            keys = sorted(self.coeffs)
        for key in keys:
            c = self.coeffs[key]
            if self.degree == 0:
                mono = _render_monomial(*key)
                form = ""
            elif self.degree == 1:
                mono = _render_monomial(key[0], key[1])
                form = key[2]
            else:
                mono = _render_monomial(*key)
                form = DXDY
            bits = [x for x in (mono, form) if x]
            body = "*".join(bits) if bits else "1"
            mag = abs(c)
            if mag != 1 or not bits:
                body = f"{mag}*{body}" if bits else str(mag)
            if not chunks:
                chunks.append(body if c > 0 else f"-{body}")
            else:
                chunks.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(chunks)

    def __repr__(self):
        return f"ChainElement(deg={self.degree}: {self.render()})"


def module_bracket(t: TwistParams, m: AlgebraElement, g: str) -> AlgebraElement:
    """External bracket of the twisted module against a generator ('X' or 'Y')."""
    p = m.params
    out: dict[tuple[int, int], Fraction] = {}
    if g == "X":
        for (i, j), c in m.coeffs.items():
            s = -(j + t.alpha) * c
            if s and i + 1 < p.a:
                out[(i + 1, j)] = out.get((i + 1, j), Fraction(0)) + s
    elif g == "Y":
        for (i, j), c in m.coeffs.items():
            s = (i - t.beta) * c
            if s and j + 1 < p.b:
                out[(i, j + 1)] = out.get((i, j + 1), Fraction(0)) + s
    else:
        raise ValueError("generator must be 'X' or 'Y'")
    return AlgebraElement(p, out)


def _tensor_dx(m: AlgebraElement) -> dict:
    """m (x) dX reduced to the degree-1 basis; torsion drops i = a-1 terms."""
    return {(i, j, DX): c for (i, j), c in m.coeffs.items() if i <= m.params.a - 2}


def _tensor_dy(m: AlgebraElement) -> dict:
    return {(i, j, DY): c for (i, j), c in m.coeffs.items() if j <= m.params.b - 2}


@lru_cache(maxsize=32)
def partial1_matrix(p: TruncParams, t: TwistParams) -> Matrix:
    """Boundary from degree 1 to degree 0: m (x) dg |-> {m, g}."""
    cols = []
    for (i, j, part) in omega1_indices(p):
        m = AlgebraElement.monomial(p, i, j)
        g = "X" if part == DX else "Y"
        cols.append(module_bracket(t, m, g).to_vector())
    return Matrix.from_columns(cols, ambient_dim=p.dim)


@lru_cache(maxsize=32)
def partial2_matrix(p: TruncParams, t: TwistParams) -> Matrix:
    """Boundary from degree 2 to degree 1, from the general boundary formula:

        m (x) dX^dY |-> {m,X} (x) dY - {m,Y} (x) dX - m (x) d(X*Y)

    with d(X*Y) = X dY + Y dX.  The expanded closed form
    -(j+alpha+1) X^(i+1)Y^j (x) dY - (i-beta+1) X^i Y^(j+1) (x) dX is the
    test oracle for this builder.
    """
    x = AlgebraElement.gen_x(p)
    y = AlgebraElement.gen_y(p)
    n1 = len(omega1_indices(p))
    slot = {key: n for n, key in enumerate(omega1_indices(p))}
    cols = []
    for (i, j) in omega2_indices(p):
        m = AlgebraElement.monomial(p, i, j)
        acc: dict = {}
        for part in (
            _tensor_dy(module_bracket(t, m, "X")),
            {k: -c for k, c in _tensor_dx(module_bracket(t, m, "Y")).items()},
            {k: -c for k, c in _tensor_dy(multiply(m, x)).items()},
            {k: -c for k, c in _tensor_dx(multiply(m, y)).items()},
        ):
            for k, c in part.items():
                acc[k] = acc.get(k, Fraction(0)) + c
        col = [Fraction(0)] * n1
        for k, c in acc.items():
            col[slot[k]] = c
        cols.append(col)
    return Matrix.from_columns(cols, ambient_dim=n1)


@dataclass(frozen=True)
class HomologyReport:
    """Dimensions, boundary ranks and representatives of one twisted complex."""

    params: TruncParams
    twist: TwistParams
    dims: tuple[int, int, int]
    ranks: tuple[int, int]
    representatives: tuple[tuple[ChainElement, ...], ...]

    def __post_init__(self):
        h0, h1, h2 = self.dims
        if h0 - h1 + h2 != 1:
            raise ValueError(f"homology dims {self.dims} break the Euler identity")


@lru_cache(maxsize=64)
def homology(p: TruncParams, t: TwistParams) -> HomologyReport:
    """Twisted Poisson homology via exact rank computations.

    h0 = ab - rank(b1), h1 = dim Ker(b1) - rank(b2), h2 = dim Ker(b2);
    every space above degree 2 is zero because the forms are.
    Representatives: degree 0 takes the monomials at non-pivot positions of
    the boundary image, degree 1 extends the image of b2 greedily by kernel
    vectors of b1, degree 2 takes the kernel basis of b2.
    """
    b1 = partial1_matrix(p, t)
    b2 = partial2_matrix(p, t)
    im1 = column_space(b1)
    ker1 = nullspace(b1)
    im2 = column_space(b2)
    ker2 = nullspace(b2)
    h0 = p.dim - im1.dim
    h1 = ker1.dim - im2.dim
    h2 = ker2.dim

    reps0 = []
    pivots = set(im1.pivots)
    for n, (i, j) in enumerate(p.monomials()):
        if n not in pivots:
            reps0.append(ChainElement(p, 0, {(i, j): Fraction(1)}))

    reps1 = []
    sieve = EchelonAccumulator(len(omega1_indices(p)), seed=im2.vectors)
    for v in ker1.vectors:
        if sieve.add(v):
            reps1.append(ChainElement.from_vector(p, 1, v))

    reps2 = [ChainElement.from_vector(p, 2, v) for v in ker2.vectors]

    if (len(reps0), len(reps1), len(reps2)) != (h0, h1, h2):
        raise RuntimeError("representative extraction disagrees with computed dimensions")
    return HomologyReport(
        p, t, (h0, h1, h2), (im1.dim, im2.dim), (tuple(reps0), tuple(reps1), tuple(reps2))
    )


@dataclass(frozen=True)
class DegreeComparison:
    degree: int
    cohomology_dim: int
    nakayama_homology_dim: int
    nakayama_match: bool
    complement_degree: int
    trivial_homology_dim: int
    poincare_match: bool


@dataclass(frozen=True)
class DualityReport:
    """Degreewise duality data: the twisted match and the untwisted failure."""

    params: TruncParams
    comparisons: tuple[DegreeComparison, ...]
    euler_cochain: int
    euler_chain: int
    nakayama_duality_holds: bool
    poincare_duality_fails: bool


def duality_report(p: TruncParams) -> DualityReport:
    """Compare cohomology with twisted and untwisted homology in each degree.

    The twisted homology (at the (1-b, a-1) twist) must match the cohomology
    degree by degree; the naive pairing of degree k against untwisted degree
    2-k must fail at the ends, and both complexes have Euler characteristic 1.
    """
    codims = [cohomology(p, k).dimension for k in range(3)]
    nak = homology(p, TwistParams.nakayama(p)).dims
    triv = homology(p, TwistParams.trivial()).dims
    comparisons = []
    for k in range(3):
        comparisons.append(
            DegreeComparison(
                degree=k,
                cohomology_dim=codims[k],
                nakayama_homology_dim=nak[k],
                nakayama_match=codims[k] == nak[k],
                complement_degree=2 - k,
                trivial_homology_dim=triv[2 - k],
                poincare_match=codims[k] == triv[2 - k],
            )
        )
    euler_cochain = codims[0] - codims[1] + codims[2]
    euler_chain = triv[0] - triv[1] + triv[2]
    return DualityReport(
        params=p,
        comparisons=tuple(comparisons),
        euler_cochain=euler_cochain,
        euler_chain=euler_chain,
        nakayama_duality_holds=all(c.nakayama_match for c in comparisons),
        poincare_duality_fails=not all(c.poincare_match for c in comparisons),
    )
