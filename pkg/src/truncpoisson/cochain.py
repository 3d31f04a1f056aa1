"""The multiderivation cochain complex and its cohomology.

chi^0 is the algebra itself, chi^1 its derivations, chi^2 the skew
biderivations; everything vanishes above degree 2 because the algebra has two
generators.  This module builds the coboundary matrices, computes the
cohomology spaces with canonical representatives, normalizes 1-cocycles
constructively, and assembles the cup-product ring table.

Conventions (fixed once, verified by the delta.delta = 0 and cup
well-definedness tests):

    delta_0(f)       : X |-> {X, f},  Y |-> {Y, f}
    delta_1(d)(X^Y)  : {X, d(Y)} - {Y, d(X)} - d(X)*Y - X*d(Y)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Sequence, Union

from .algebra import AlgebraElement, TruncParams, bracket, multiply
from .linalg import (
    EchelonAccumulator,
    Matrix,
    SubspaceBasis,
    Vector,
    column_space,
    nullspace,
    quotient_coordinates,
    solve,
)


def chi1_index_pairs(p: TruncParams) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """Exponent pairs indexing the derivation basis: the X-block then the Y-block."""
    d_pairs = [(i, j) for i in range(1, p.a) for j in range(p.b)]
    dprime_pairs = [(i, j) for i in range(p.a) for j in range(1, p.b)]
    return d_pairs, dprime_pairs


def chi2_index_pairs(p: TruncParams) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, p.a) for j in range(1, p.b)]


class Derivation:
    """A derivation, determined by its values on the generators.

    The value on X can have no pure-Y terms and the value on Y no pure-X
    terms (X^{a-1}*dx = Y^{b-1}*dy = 0), which the constructor enforces.
    """

    __slots__ = ("params", "dx", "dy")

    def __init__(self, params: TruncParams, dx: AlgebraElement, dy: AlgebraElement):
        if dx.params != params or dy.params != params:
            raise ValueError("derivation values carry mismatched parameters")
        if any(i == 0 for (i, _) in dx.coeffs):
            raise ValueError("value on X has a pure-Y term; not a derivation")
        if any(j == 0 for (_, j) in dy.coeffs):
            raise ValueError("value on Y has a pure-X term; not a derivation")
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "dx", dx)
        object.__setattr__(self, "dy", dy)

    def __setattr__(self, name, value):
        raise AttributeError("Derivation is immutable")

    @classmethod
    def zero(cls, params: TruncParams) -> "Derivation":
        z = AlgebraElement.zero(params)
        return cls(params, z, z)

    @classmethod
    def basis_d(cls, params: TruncParams, i: int, j: int) -> "Derivation":
        """The derivation X |-> X^i Y^j, Y |-> 0 (requires i >= 1)."""
        return cls(params, AlgebraElement.monomial(params, i, j), AlgebraElement.zero(params))

    @classmethod
    def basis_dprime(cls, params: TruncParams, i: int, j: int) -> "Derivation":
        """The derivation X |-> 0, Y |-> X^i Y^j (requires j >= 1)."""
        return cls(params, AlgebraElement.zero(params), AlgebraElement.monomial(params, i, j))

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.params == other.params and self.dx == other.dx and self.dy == other.dy

    def __add__(self, other: "Derivation") -> "Derivation":
        return Derivation(self.params, self.dx + other.dx, self.dy + other.dy)

    def __sub__(self, other: "Derivation") -> "Derivation":
        return Derivation(self.params, self.dx - other.dx, self.dy - other.dy)

    def scale(self, s) -> "Derivation":
        return Derivation(self.params, self.dx.scale(s), self.dy.scale(s))

    def is_zero(self) -> bool:
        return self.dx.is_zero() and self.dy.is_zero()

    def apply(self, u: AlgebraElement) -> AlgebraElement:
        """Extend to the whole algebra by the Leibniz rule."""
        p = self.params
        out = AlgebraElement.zero(p)
        for (i, j), c in u.coeffs.items():
            if i:
                out = out + multiply(AlgebraElement.monomial(p, i - 1, j, c * i), self.dx)
            if j:
                out = out + multiply(AlgebraElement.monomial(p, i, j - 1, c * j), self.dy)
        return out

    def to_vector(self) -> Vector:
        d_pairs, dprime_pairs = chi1_index_pairs(self.params)
        zero = Fraction(0)
        head = [self.dx.coeffs.get(ij, zero) for ij in d_pairs]
        tail = [self.dy.coeffs.get(ij, zero) for ij in dprime_pairs]
        return tuple(head + tail)

    @classmethod
    def from_vector(cls, params: TruncParams, v: Sequence) -> "Derivation":
        d_pairs, dprime_pairs = chi1_index_pairs(params)
        n = len(d_pairs)
        if len(v) != n + len(dprime_pairs):
            raise ValueError("vector length does not match the derivation basis")
        dx = AlgebraElement(params, dict(zip(d_pairs, v[:n])))
        dy = AlgebraElement(params, dict(zip(dprime_pairs, v[n:])))
        return cls(params, dx, dy)

    def label(self) -> str:
        """Short name: 'd_{i,j}' / \"d'_{i,j}\" for basis vectors, else a sum."""
        if len(self.dx.coeffs) == 1 and self.dy.is_zero():
            ((i, j), c) = next(iter(self.dx.coeffs.items()))
            if c == 1:
                return f"d_{{{i},{j}}}"
        if len(self.dy.coeffs) == 1 and self.dx.is_zero():
            ((i, j), c) = next(iter(self.dy.coeffs.items()))
            if c == 1:
                return f"d'_{{{i},{j}}}"
        if self.is_zero():
            return "0"
        parts = []
        for (i, j) in sorted(self.dx.coeffs):
            parts.append(f"{self.dx.coeffs[(i, j)]}*d_{{{i},{j}}}")
        for (i, j) in sorted(self.dy.coeffs):
            parts.append(f"{self.dy.coeffs[(i, j)]}*d'_{{{i},{j}}}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Derivation({self.label()})"


class Biderivation:
    """A skew biderivation, determined by its value on X^Y.

    The value must lie in the ideal generated by X*Y (no pure-X and no
    pure-Y terms).
    """

    __slots__ = ("params", "value")

    def __init__(self, params: TruncParams, value: AlgebraElement):
        if value.params != params:
            raise ValueError("biderivation value carries mismatched parameters")
        if any(i == 0 or j == 0 for (i, j) in value.coeffs):
            raise ValueError("biderivation value must lie in the ideal generated by X*Y")
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("Biderivation is immutable")

    @classmethod
    def zero(cls, params: TruncParams) -> "Biderivation":
        return cls(params, AlgebraElement.zero(params))

    @classmethod
    def basis_f(cls, params: TruncParams, i: int, j: int) -> "Biderivation":
        return cls(params, AlgebraElement.monomial(params, i, j))

    def __eq__(self, other):
        if not isinstance(other, Biderivation):
            return NotImplemented
        return self.params == other.params and self.value == other.value

    def __add__(self, other: "Biderivation") -> "Biderivation":
        return Biderivation(self.params, self.value + other.value)

    def __sub__(self, other: "Biderivation") -> "Biderivation":
        return Biderivation(self.params, self.value - other.value)

    def scale(self, s) -> "Biderivation":
        return Biderivation(self.params, self.value.scale(s))

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def to_vector(self) -> Vector:
        zero = Fraction(0)
        return tuple(self.value.coeffs.get(ij, zero) for ij in chi2_index_pairs(self.params))

    @classmethod
    def from_vector(cls, params: TruncParams, v: Sequence) -> "Biderivation":
        pairs = chi2_index_pairs(params)
        if len(v) != len(pairs):
            raise ValueError("vector length does not match the biderivation basis")
        return cls(params, AlgebraElement(params, dict(zip(pairs, v))))

    def label(self) -> str:
        if len(self.value.coeffs) == 1:
            ((i, j), c) = next(iter(self.value.coeffs.items()))
            if c == 1:
                return f"f_{{{i},{j}}}"
        if self.is_zero():
            return "0"
        return " + ".join(
            f"{self.value.coeffs[(i, j)]}*f_{{{i},{j}}}" for (i, j) in sorted(self.value.coeffs)
        )

    def __repr__(self):
        return f"Biderivation({self.label()})"


Cochain = Union[AlgebraElement, Derivation, Biderivation]


def cochain_degree(x: Cochain) -> int:
    if isinstance(x, AlgebraElement):
        return 0
    if isinstance(x, Derivation):
        return 1
    if isinstance(x, Biderivation):
        return 2
    raise TypeError(f"not a cochain: {x!r}")


def chi1_basis(p: TruncParams) -> list[Derivation]:
    """The derivation basis: X-block (lex in (i,j)) then Y-block."""
    d_pairs, dprime_pairs = chi1_index_pairs(p)
    basis = [Derivation.basis_d(p, i, j) for (i, j) in d_pairs]
    basis += [Derivation.basis_dprime(p, i, j) for (i, j) in dprime_pairs]
    return basis


def hamiltonian(lam: AlgebraElement) -> Derivation:
    """The derivation f |-> {f, lam}; image of lam under delta_0."""
    p = lam.params
    return Derivation(
        p,
        bracket(AlgebraElement.gen_x(p), lam),
        bracket(AlgebraElement.gen_y(p), lam),
    )


def bracket_derivation(lam: AlgebraElement) -> Derivation:
    """The derivation f |-> {lam, f}; the negative of hamiltonian(lam)."""
    p = lam.params
    return Derivation(
        p,
        bracket(lam, AlgebraElement.gen_x(p)),
        bracket(lam, AlgebraElement.gen_y(p)),
    )


@lru_cache(maxsize=32)
def delta0_matrix(p: TruncParams) -> Matrix:
    """Matrix of delta_0 from the monomial basis to the derivation basis."""
    cols = [hamiltonian(AlgebraElement.monomial(p, i, j)).to_vector() for (i, j) in p.monomials()]
    return Matrix.from_columns(cols, ambient_dim=len(chi1_basis(p)))


def delta1_apply(d: Derivation) -> Biderivation:
    """delta_1(d) evaluated on X^Y."""
    p = d.params
    x = AlgebraElement.gen_x(p)
    y = AlgebraElement.gen_y(p)
    value = bracket(x, d.dy) - bracket(y, d.dx) - multiply(d.dx, y) - multiply(x, d.dy)
    return Biderivation(p, value)


@lru_cache(maxsize=32)
def delta1_matrix(p: TruncParams) -> Matrix:
    """Matrix of delta_1 from the derivation basis to the biderivation basis."""
    cols = [delta1_apply(d).to_vector() for d in chi1_basis(p)]
    return Matrix.from_columns(cols, ambient_dim=len(chi2_index_pairs(p)))


@lru_cache(maxsize=32)
def _image_delta0(p: TruncParams) -> SubspaceBasis:
    return column_space(delta0_matrix(p))


@lru_cache(maxsize=32)
def _image_delta1(p: TruncParams) -> SubspaceBasis:
    return column_space(delta1_matrix(p))


def is_poisson_derivation(d: Derivation) -> bool:
    """Whether d respects the bracket, i.e. is a 1-cocycle, by the closed form.

    Writing alpha/beta for the coefficients of the values on X and Y, the
    condition is (1-j)*beta_{i-1,j} + (1-i)*alpha_{i,j-1} = 0 over
    1 <= i <= a-1, 1 <= j <= b-1.  Agrees with Ker delta_1 (tested).
    """
    p = d.params
    for i in range(1, p.a):
        for j in range(1, p.b):
            if (1 - j) * d.dy.coefficient(i - 1, j) + (1 - i) * d.dx.coefficient(i, j - 1):
                return False
    return True


@dataclass(frozen=True)
class CohomologyReport:
    """Dimensions, ranks and canonical representatives for one degree."""

    params: TruncParams
    degree: int
    dimension: int
    representatives: tuple
    coboundary_rank: int
    cocycle_dim: int


def _check_independent_mod(sub: SubspaceBasis, vectors: Sequence[Vector]) -> bool:
    sieve = EchelonAccumulator(sub.ambient_dim, seed=sub.vectors)
    return all(sieve.add(v) for v in vectors)


@lru_cache(maxsize=128)
def cohomology(p: TruncParams, k: int) -> CohomologyReport:
    """Cohomology in degree k with canonical representatives.

    The representatives (the unit and the top monomial in degree 0, the two
    Euler-type derivations in degree 1, the X^Y |-> X*Y biderivation in
    degree 2) are verified to be cocycles independent modulo coboundaries,
    not assumed.  Degrees >= 3 yield structurally empty reports.
    """
    if k < 0:
        raise ValueError("degree must be nonnegative")
    if k >= 3:
        return CohomologyReport(p, k, 0, (), 0, 0)

    d0 = delta0_matrix(p)
    if k == 0:
        kernel = nullspace(d0)
        reps = (AlgebraElement.one(p), AlgebraElement.monomial(p, p.a - 1, p.b - 1))
        for r in reps:
            if not kernel.contains(r.to_vector()):
                raise RuntimeError("canonical centre representative is not a cocycle")
        if not _check_independent_mod(SubspaceBasis.from_vectors(p.dim, []), [r.to_vector() for r in reps]):
            raise RuntimeError("centre representatives are dependent")
        return CohomologyReport(p, 0, kernel.dim, reps, 0, kernel.dim)

    d1 = delta1_matrix(p)
    if k == 1:
        image = _image_delta0(p)
        rank0 = image.dim
        kernel = nullspace(d1)
        reps = (Derivation.basis_d(p, 1, 0), Derivation.basis_dprime(p, 0, 1))
        vecs = [r.to_vector() for r in reps]
        for v in vecs:
            if any(d1.apply(v)):
                raise RuntimeError("canonical degree-1 representative is not a cocycle")
        if not _check_independent_mod(image, vecs):
            raise RuntimeError("degree-1 representatives are dependent modulo coboundaries")
        return CohomologyReport(p, 1, kernel.dim - rank0, reps, rank0, kernel.dim)

    # k == 2: the complex stops here, every biderivation is a cocycle.
    chi2_dim = (p.a - 1) * (p.b - 1)
    rank1 = _image_delta1(p).dim
    rep = Biderivation.basis_f(p, 1, 1)
    if solve(d1, rep.to_vector()) is not None:
        raise RuntimeError("canonical degree-2 representative is a coboundary")
    return CohomologyReport(p, 2, chi2_dim - rank1, (rep,), rank1, chi2_dim)


class NormalizedCocycle(NamedTuple):
    c10: Fraction
    c01: Fraction
    potential: AlgebraElement


def normalize_one_cocycle(d: Derivation) -> NormalizedCocycle:
    """Split a 1-cocycle into its class coordinates and an exact part.

    Returns (c10, c01, potential) with

        d - delta_0(potential) = c10 * d_{1,0} + c01 * d'_{0,1}

    exactly.  The potential is built constructively in two correction steps
    (first clearing the value on X down to its pure-X part, then clearing the
    value on Y), mirroring how the degree-1 classes are classified.
    """
    if not is_poisson_derivation(d):
        raise ValueError("input derivation is not a cocycle")
    p = d.params

    # Step 1: lam kills every dx term with a positive Y-exponent.
    lam = AlgebraElement(
        p,
        {
            (i, j): d.dx.coefficient(i + 1, j) / j
            for i in range(p.a - 1)
            for j in range(1, p.b)
        },
    )
    d1 = d + bracket_derivation(lam)

    # Step 2: mu clears the remaining dy terms except the d'_{0,1} component.
    mu_coeffs: dict[tuple[int, int], Fraction] = {}
    for i in range(1, p.a - 1):
        mu_coeffs[(i, 0)] = d1.dy.coefficient(i, 1) / i
    for j in range(1, p.b):
        c = d1.dy.coefficient(p.a - 1, j) / (p.a - 1)
        if c:
            mu_coeffs[(p.a - 1, j - 1)] = mu_coeffs.get((p.a - 1, j - 1), Fraction(0)) + c
    mu = AlgebraElement(p, mu_coeffs)
    d2 = d1 - bracket_derivation(mu)

    c10 = d2.dx.coefficient(1, 0)
    c01 = d2.dy.coefficient(0, 1)
    potential = lam - mu
    normal_form = Derivation.basis_d(p, 1, 0).scale(c10) + Derivation.basis_dprime(p, 0, 1).scale(c01)
    if d - hamiltonian(potential) != normal_form:
        raise RuntimeError("cocycle normalization failed to reach the normal form")
    return NormalizedCocycle(c10, c01, potential)


def cup(x: Cochain, y: Cochain) -> Cochain:
    """Cup product at cochain level; defined for total degree <= 2.

    Degree 0 acts by multiplication of values; in degree 1 x 1 the product of
    d and d' evaluates on X^Y as d(X)*d'(Y) - d(Y)*d'(X).  Products of total
    degree >= 3 land in a zero space and are rejected here; class-level
    tables treat them as zero.
    """
    dp, dq = cochain_degree(x), cochain_degree(y)
    if dp > dq:
        # only mixed degrees reach this; degree 0 commutes with everything
        return cup(y, x)
    if dp == 0:
        if dq == 0:
            return multiply(x, y)
        if dq == 1:
            return Derivation(y.params, multiply(x, y.dx), multiply(x, y.dy))
        return Biderivation(y.params, multiply(x, y.value))
    if dp == 1 and dq == 1:
        value = multiply(x.dx, y.dy) - multiply(x.dy, y.dx)
        return Biderivation(x.params, value)
    raise ValueError(f"cup product of degrees {dp} and {dq} lands in a zero space")


RING_LABELS = ("1", "t", "v", "w", "m")
RING_DEGREES = (0, 0, 1, 1, 2)


@dataclass(frozen=True)
class RingTable:
    """All 25 products of the five cohomology classes, in class coordinates."""

    params: TruncParams
    basis_labels: tuple[str, ...]
    degrees: tuple[int, ...]
    products: tuple[tuple[Vector, ...], ...]

    def product(self, left: str, right: str) -> Vector:
        i = self.basis_labels.index(left)
        j = self.basis_labels.index(right)
        return self.products[i][j]

    def matches_reference(self) -> bool:
        """Whether the computed table equals the reference ring's table."""
        return self.products == fibre_product_table()


def fibre_product_table() -> tuple[tuple[Vector, ...], ...]:
    """Multiplication table of the five-dimensional reference ring.

    The ring is spanned by 1, t (degree 0), v, w (degree 1), m (degree 2)
    with t*t = 0, t annihilating v, w, m, v*v = w*w = 0, v*w = m = -w*v and
    everything of total degree above 2 equal to zero.
    """
    n = len(RING_LABELS)
    zero = tuple([Fraction(0)] * n)

    def unit(k: int, s: int = 1) -> Vector:
        return tuple(Fraction(s if i == k else 0) for i in range(n))

    table = [[zero] * n for _ in range(n)]
    for k in range(n):
        table[0][k] = unit(k)
        table[k][0] = unit(k)
    table[2][3] = unit(4)
    table[3][2] = unit(4, -1)
    return tuple(tuple(row) for row in table)


def ring_table(p: TruncParams) -> RingTable:
    """Compute the cup-product table of the five basis classes.

    Each product is computed at cochain level and reduced to class
    coordinates against the image of the incoming coboundary.  Graded
    commutativity is enforced (a violation would be an internal bug); whether
    the table equals the reference ring is reported by matches_reference().
    """
    reps: list[Cochain] = [
        AlgebraElement.one(p),
        AlgebraElement.monomial(p, p.a - 1, p.b - 1),
        Derivation.basis_d(p, 1, 0),
        Derivation.basis_dprime(p, 0, 1),
        Biderivation.basis_f(p, 1, 1),
    ]
    im0 = _image_delta0(p)
    im1 = _image_delta1(p)
    no_sub0 = SubspaceBasis.from_vectors(p.dim, [])
    comp0 = [reps[0].to_vector(), reps[1].to_vector()]
    comp1 = [reps[2].to_vector(), reps[3].to_vector()]
    comp2 = [reps[4].to_vector()]

    def class_coords(z: Cochain) -> Vector:
        deg = cochain_degree(z)
        n = len(RING_LABELS)
        out = [Fraction(0)] * n
        vec = z.to_vector()
        if not any(vec):
            return tuple(out)
        if deg == 0:
            c = quotient_coordinates(vec, no_sub0, comp0)
            out[0], out[1] = c
        elif deg == 1:
            c = quotient_coordinates(vec, im0, comp1)
            out[2], out[3] = c
        else:
            c = quotient_coordinates(vec, im1, comp2)
            out[4] = c[0]
        return tuple(out)

    n = len(RING_LABELS)
    zero = tuple([Fraction(0)] * n)
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            if RING_DEGREES[i] + RING_DEGREES[j] > 2:
                row.append(zero)
            else:
                row.append(class_coords(cup(reps[i], reps[j])))
        table.append(tuple(row))
    products = tuple(table)

    for i in range(n):
        for j in range(n):
            sign = -1 if (RING_DEGREES[i] * RING_DEGREES[j]) % 2 else 1
            if products[i][j] != tuple(sign * c for c in products[j][i]):
                raise RuntimeError("cup table violates graded commutativity")
    return RingTable(p, RING_LABELS, RING_DEGREES, products)
