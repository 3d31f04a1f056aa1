"""Exact rational linear algebra.

Dense matrices over ``fractions.Fraction`` with the elimination, kernel and
quotient-space primitives the rest of the package is built on.  Everything is
exact: ranks are true ranks, equality means equality.  Pivoting is
deterministic (first nonzero entry in column order), so reduced forms and
subspace bases are reproducible byte for byte.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence

Vector = tuple[Fraction, ...]


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def as_vector(entries: Iterable) -> Vector:
    return tuple(_frac(x) for x in entries)


class Matrix:
    """Immutable dense matrix of rationals, stored as a tuple of row tuples."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Sequence[Sequence]):
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError(f"data does not match shape {rows}x{cols}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "data", tuple(as_vector(r) for r in data))

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def _raw(cls, rows: int, cols: int, data: tuple) -> "Matrix":
        """Trusted constructor: data must already be a tuple of Fraction row tuples."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "rows", rows)
        object.__setattr__(obj, "cols", cols)
        object.__setattr__(obj, "data", data)
        return obj

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Matrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        return cls(nrows, ncols, rows)

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        z = Fraction(0)
        return cls(rows, cols, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], ambient_dim: Optional[int] = None) -> "Matrix":
        if not cols:
            return cls.zero(ambient_dim or 0, 0)
        n = len(cols[0])
        return cls(n, len(cols), [[_frac(c[i]) for c in cols] for i in range(n)])

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self.data == other.data

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols})"

    def entry(self, i: int, j: int) -> Fraction:
        return self.data[i][j]

    def row(self, i: int) -> Vector:
        return self.data[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.data)

    def transpose(self) -> "Matrix":
        if not self.data:
            return Matrix.zero(self.cols, self.rows)
        return Matrix._raw(self.cols, self.rows, tuple(zip(*self.data)))

    def is_zero(self) -> bool:
        return all(not x for row in self.data for x in row)

    def apply(self, v: Sequence) -> Vector:
        """Matrix-vector product; skips zero entries (our matrices are sparse)."""
        if len(v) != self.cols:
            raise ValueError(f"vector length {len(v)} != cols {self.cols}")
        vv = as_vector(v)
        out = []
        for row in self.data:
            s = Fraction(0)
            for a, x in zip(row, vv):
                if a and x:
                    s += a * x
            out.append(s)
        return tuple(out)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        zero = Fraction(0)
        out = [[zero] * other.cols for _ in range(self.rows)]
        for i, row in enumerate(self.data):
            acc = out[i]
            for k, a in enumerate(row):
                if not a:
                    continue
                brow = other.data[k]
                for j, b in enumerate(brow):
                    if b:
                        acc[j] += a * b
        return Matrix._raw(self.rows, other.cols, tuple(tuple(r) for r in out))


class RrefResult(NamedTuple):
    reduced: Matrix
    pivots: tuple[int, ...]
    rank: int


def rref(m: Matrix) -> RrefResult:
    """Unique reduced row-echelon form by rational Gauss-Jordan.

    Pivot selection is the first row with a nonzero entry, in column order,
    which makes the output deterministic for golden tests.
    """
    rows = [list(r) for r in m.data]
    nrows, ncols = m.rows, m.cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        if pv != 1:
            rows[r] = [x / pv if x else x for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i == r:
                continue
            f = rows[i][c]
            if f:
                rows[i] = [x - f * y if y else x for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return RrefResult(Matrix._raw(nrows, ncols, tuple(tuple(row) for row in rows)), tuple(pivots), r)


class SubspaceBasis:
    """Canonical (reduced-echelon) basis of a subspace of Q^n.

    The stored vectors are the nonzero rows of the unique RREF of any
    spanning set, so two equal subspaces always compare equal.
    """

    __slots__ = ("ambient_dim", "vectors", "pivots")

    def __init__(self, ambient_dim: int, vectors: Sequence[Vector], pivots: Sequence[int]):
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "vectors", tuple(as_vector(v) for v in vectors))
        object.__setattr__(self, "pivots", tuple(pivots))

    def __setattr__(self, name, value):
        raise AttributeError("SubspaceBasis is immutable")

    @classmethod
    def _raw(cls, ambient_dim: int, vectors: tuple, pivots: tuple) -> "SubspaceBasis":
        obj = object.__new__(cls)
        object.__setattr__(obj, "ambient_dim", ambient_dim)
        object.__setattr__(obj, "vectors", vectors)
        object.__setattr__(obj, "pivots", pivots)
        return obj

    @classmethod
    def from_vectors(cls, ambient_dim: int, vectors: Sequence[Sequence]) -> "SubspaceBasis":
        vecs = [as_vector(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise ValueError("vector length != ambient_dim")
        if not vecs:
            return cls(ambient_dim, (), ())
        red, piv, rank = rref(Matrix.from_rows(vecs))
        return cls._raw(ambient_dim, red.data[:rank], piv)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def __eq__(self, other):
        if not isinstance(other, SubspaceBasis):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.vectors == other.vectors

    def __repr__(self):
        return f"SubspaceBasis(dim={self.dim}, ambient={self.ambient_dim})"

    def contains(self, v: Sequence) -> bool:
        """Exact membership test: reduce v against the echelon rows."""
        w = list(as_vector(v))
        for vec, p in zip(self.vectors, self.pivots):
            f = w[p]
            if f:
                w = [x - f * y for x, y in zip(w, vec)]
        return not any(w)


def nullspace(m: Matrix) -> SubspaceBasis:
    """Canonical basis of {v : m v = 0}; dimension = cols - rank."""
    red, piv, rank = rref(m)
    pivot_set = set(piv)
    free = [c for c in range(m.cols) if c not in pivot_set]
    raw = []
    zero, one = Fraction(0), Fraction(1)
    for f in free:
        v = [zero] * m.cols
        v[f] = one
        for r, p in enumerate(piv):
            v[p] = -red.data[r][f]
        raw.append(tuple(v))
    if not raw:
        return SubspaceBasis(m.cols, (), ())
    red2, piv2, rank2 = rref(Matrix._raw(len(raw), m.cols, tuple(raw)))
    return SubspaceBasis._raw(m.cols, red2.data[:rank2], piv2)


def column_space(m: Matrix) -> SubspaceBasis:
    """Canonical basis of the image (span of the columns)."""
    if m.cols == 0:
        return SubspaceBasis(m.rows, (), ())
    red, piv, rank = rref(m.transpose())
    return SubspaceBasis._raw(m.rows, red.data[:rank], piv)


class EchelonAccumulator:
    """Incremental row-echelon sieve for independence tests.

    add() reduces a vector against the rows seen so far and keeps it only if
    a nonzero remainder survives, so a stream of vectors is filtered to an
    independent subfamily in one pass.
    """

    __slots__ = ("width", "_rows")

    def __init__(self, width: int, seed: Iterable = ()):
        self.width = width
        self._rows: dict[int, Vector] = {}
        for v in seed:
            self.add(v)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def add(self, v: Sequence) -> bool:
        w = list(as_vector(v))
        for p, row in self._rows.items():
            f = w[p]
            if f:
                w = [x - f * y if y else x for x, y in zip(w, row)]
        for p, x in enumerate(w):
            if x:
                if x != 1:
                    w = [y / x if y else y for y in w]
                self._rows[p] = tuple(w)
                return True
        return False


def solve(m: Matrix, rhs: Sequence) -> Optional[Vector]:
    """One exact solution of m x = rhs, or None if the system is inconsistent.

    Free variables are set to zero, so the returned solution is deterministic.
    """
    b = as_vector(rhs)
    if len(b) != m.rows:
        raise ValueError(f"rhs length {len(b)} != rows {m.rows}")
    aug = Matrix._raw(m.rows, m.cols + 1, tuple(row + (b[i],) for i, row in enumerate(m.data)))
    red, piv, rank = rref(aug)
    if piv and piv[-1] == m.cols:
        return None
    x = [Fraction(0)] * m.cols
    for r, p in enumerate(piv):
        x[p] = red.data[r][m.cols]
    return tuple(x)


def quotient_coordinates(v: Sequence, sub: SubspaceBasis, complement) -> Vector:
    """Coordinates of the class of v in a complement basis, modulo sub.

    complement is a SubspaceBasis or an ordered, independent-mod-sub family
    of vectors; the result c satisfies v - sum(c_i * complement_i) in
    span(sub).  Raises ValueError when v is not in span(sub + complement) --
    that signals an inconsistent basis upstream, not a user error.
    """
    if isinstance(complement, SubspaceBasis):
        complement = complement.vectors
    comp = [as_vector(c) for c in complement]
    vv = as_vector(v)
    cols = comp + [list(w) for w in sub.vectors]
    if not cols:
        if any(vv):
            raise ValueError("nonzero vector with empty sub and complement")
        return ()
    system = Matrix.from_columns(cols, ambient_dim=len(vv))
    x = solve(system, vv)
    if x is None:
        raise ValueError("vector not in span(sub + complement); inconsistent basis")
    return x[: len(comp)]
