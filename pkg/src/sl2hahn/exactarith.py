"""Exact rational scalars and a small dense linear-algebra kernel.

Everything is over :class:`fractions.Fraction`; there is no floating point.
Matrices act on column vectors: ``M[r, c]`` is the coefficient of basis
vector ``r`` in the image of basis vector ``c``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, lcm
from typing import Iterable, Sequence

from .errors import ShapeMismatch

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


def rational_arith(op: str, x, y=None) -> Fraction:
    """Apply one of ``add``, ``mul``, ``neg``, ``inv`` exactly.

    ``inv(0)`` raises :class:`ZeroDivisionError`.
    """
    x = as_rational(x)
    if op == "add":
        return x + as_rational(y)
    if op == "mul":
        return x * as_rational(y)
    if op == "neg":
        return -x
    if op == "inv":
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / x
    raise ValueError(f"unknown operation {op!r}")


def rational_sqrt(x) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if it is not a square."""
    x = as_rational(x)
    if x < 0:
        return None
    p, q = x.numerator, x.denominator
    rp, rq = isqrt(p), isqrt(q)
    if rp * rp != p or rq * rq != q:
        return None
    return Fraction(rp, rq)


def format_rational(x) -> str:
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class RepMatrix:
    """Immutable dense matrix over the rationals."""

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        rows = tuple(tuple(as_rational(v) for v in row) for row in data)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != cols:
                raise ShapeMismatch("ragged matrix rows")
        self.rows = len(rows)
        self.cols = cols
        self._data = rows
        self._hash = None

    @classmethod
    def _raw(cls, rows: tuple, cols: int) -> "RepMatrix":
        # trusted constructor: rows already tuples of Fractions
        m = object.__new__(cls)
        m.rows = len(rows)
        m.cols = cols
        m._data = rows
        m._hash = None
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "RepMatrix":
        cols = rows if cols is None else cols
        row = (ZERO,) * cols
        return cls._raw((row,) * rows, cols)

    @classmethod
    def identity(cls, n: int) -> "RepMatrix":
        return cls.diag([ONE] * n)

    @classmethod
    def diag(cls, values: Sequence) -> "RepMatrix":
        n = len(values)
        vals = [as_rational(v) for v in values]
        rows = []
        for i, v in enumerate(vals):
            row = [ZERO] * n
            row[i] = v
            rows.append(tuple(row))
        return cls._raw(tuple(rows), n)

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: dict) -> "RepMatrix":
        """Build from a sparse ``{(r, c): value}`` mapping."""
        data = [[ZERO] * cols for _ in range(rows)]
        for (r, c), v in entries.items():
            data[r][c] = as_rational(v)
        return cls._raw(tuple(tuple(row) for row in data), cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "RepMatrix":
        if not columns:
            return cls._raw((), 0)
        n = len(columns[0])
        return cls([[col[r] for col in columns] for r in range(n)], len(columns))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> tuple:
        """Row-major flattening."""
        return tuple(v for row in self._data for v in row)

    flatten = entries

    def row(self, r: int) -> tuple:
        return self._data[r]

    def column(self, c: int) -> tuple:
        return tuple(row[c] for row in self._data)

    def tolist(self) -> list:
        return [list(row) for row in self._data]

    def __getitem__(self, rc):
        r, c = rc
        return self._data[r][c]

    def __iter__(self):
        return iter(self._data)

    def __eq__(self, other):
        if not isinstance(other, RepMatrix):
            return NotImplemented
        return self.cols == other.cols and self._data == other._data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.cols, self._data))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(v) for v in row) for row in self._data)
        return f"RepMatrix({self.rows}x{self.cols}: [{body}])"

    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise ShapeMismatch(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other):
        if not isinstance(other, RepMatrix):
            return self + other * RepMatrix.identity(self.rows)
        self._check_same_shape(other)
        return RepMatrix._raw(
            tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self._data, other._data)),
            self.cols,
        )

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, RepMatrix):
            return self - other * RepMatrix.identity(self.rows)
        self._check_same_shape(other)
        return RepMatrix._raw(
            tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self._data, other._data)),
            self.cols,
        )

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return RepMatrix._raw(tuple(tuple(-a for a in row) for row in self._data), self.cols)

    def __mul__(self, scalar):
        if isinstance(scalar, RepMatrix):
            return self @ scalar
        s = as_rational(scalar)
        return RepMatrix._raw(tuple(tuple(a * s for a in row) for row in self._data), self.cols)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1 / as_rational(scalar))

    def __matmul__(self, other: "RepMatrix") -> "RepMatrix":
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        # multiply integer numerators over a common denominator; Fraction
        # arithmetic in the inner loop is an order of magnitude slower
        dx, xrows = self._integer_rows()
        dy, yrows = other._integer_rows()
        ocols = other.cols
        ysparse = [[(c, y) for c, y in enumerate(row) if y] for row in yrows]
        den = dx * dy
        out = []
        for row in xrows:
            acc = [0] * ocols
            for t, x in enumerate(row):
                if x:
                    for c, y in ysparse[t]:
                        acc[c] += x * y
            if den == 1:
                out.append(tuple(Fraction(v) if v else ZERO for v in acc))
            else:
                out.append(tuple(Fraction(v, den) if v else ZERO for v in acc))
        return RepMatrix._raw(tuple(out), ocols)

    def _integer_rows(self) -> tuple[int, list]:
        den = lcm(*(v.denominator for row in self._data for v in row if v)) if self.rows else 1
        if den == 1:
            return 1, [[v.numerator for v in row] for row in self._data]
        return den, [[v.numerator * (den // v.denominator) for v in row] for row in self._data]

    def __pow__(self, k: int) -> "RepMatrix":
        result = RepMatrix.identity(self.rows)
        for _ in range(k):
            result = result @ self
        return result

    def apply(self, vec: Sequence) -> tuple:
        if len(vec) != self.cols:
            raise ShapeMismatch("vector length does not match matrix")
        vec = [as_rational(v) for v in vec]
        nz = [(c, v) for c, v in enumerate(vec) if v]
        return tuple(sum((row[c] * v for c, v in nz), ZERO) for row in self._data)

    def transpose(self) -> "RepMatrix":
        return RepMatrix._raw(tuple(zip(*self._data)) if self.rows else (), self.rows)

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise ShapeMismatch("trace of a non-square matrix")
        return sum((self._data[i][i] for i in range(self.rows)), ZERO)

    def is_zero(self) -> bool:
        return not any(v for row in self._data for v in row)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_diagonal(self) -> bool:
        return all(not v for r, row in enumerate(self._data) for c, v in enumerate(row) if r != c)

    def scalar_value(self) -> Fraction | None:
        """The scalar ``s`` if this matrix equals ``s*I``, else None."""
        if not self.is_square() or not self.is_diagonal():
            return None
        if self.rows == 0:
            return ZERO
        s = self._data[0][0]
        if all(self._data[i][i] == s for i in range(self.rows)):
            return s
        return None

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "RepMatrix":
        return RepMatrix._raw(
            tuple(tuple(self._data[r][c] for c in col_idx) for r in row_idx), len(col_idx)
        )

    def nnz(self) -> int:
        return sum(1 for row in self._data for v in row if v)


def kron(X: RepMatrix, Y: RepMatrix) -> RepMatrix:
    """Kronecker product on the i-major basis ``(i, j) -> i*Y.rows + j``."""
    out = []
    zero_y = (ZERO,) * (Y.cols * X.cols)
    for xr in X:
        for yr in Y:
            if not any(xr) or not any(yr):
                out.append(zero_y)
                continue
            row = []
            for x in xr:
                if x:
                    row.extend(x * y for y in yr)
                else:
                    row.extend((ZERO,) * Y.cols)
            out.append(tuple(row))
    return RepMatrix._raw(tuple(out), X.cols * Y.cols)


def commutator(X: RepMatrix, Y: RepMatrix) -> RepMatrix:
    if not (X.is_square() and Y.is_square()) or X.shape != Y.shape:
        raise ShapeMismatch(f"commutator needs equal square shapes, got {X.shape} and {Y.shape}")
    return X @ Y - Y @ X


def first_difference(X: RepMatrix, Y: RepMatrix):
    """First ``(row, col, x, y)`` where the matrices differ, or None."""
    X._check_same_shape(Y)
    for r, (rx, ry) in enumerate(zip(X, Y)):
        if rx != ry:
            for c, (a, b) in enumerate(zip(rx, ry)):
                if a != b:
                    return (r, c, a, b)
    return None


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[tuple, tuple]:
    """Reduced row-echelon form; returns ``(nonzero rows, pivot columns)``.

    Pivots are chosen as the first nonzero column, top to bottom.
    """
    mat = [[as_rational(v) for v in row] for row in rows]
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    pivots = []
    r = 0
    nrows = len(mat)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if mat[i][c]), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        lead = mat[r][c]
        if lead != 1:
            mat[r] = [v / lead for v in mat[r]]
        prow = mat[r]
        nz = [(j, v) for j, v in enumerate(prow) if v and j >= c]
        for i in range(nrows):
            if i != r and mat[i][c]:
                f = mat[i][c]
                row = mat[i]
                for j, v in nz:
                    row[j] -= f * v
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in mat[:r]), tuple(pivots)


def rank(M: RepMatrix) -> int:
    return len(rref(M.tolist(), M.cols)[1])


def nullspace(M: RepMatrix) -> tuple:
    """Basis of ``ker M`` in reduced row-echelon form."""
    R, pivots = rref(M.tolist(), M.cols)
    pivset = set(pivots)
    vectors = []
    for f in range(M.cols):
        if f in pivset:
            continue
        v = [ZERO] * M.cols
        v[f] = ONE
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        vectors.append(v)
    if not vectors:
        return ()
    return rref(vectors, M.cols)[0]


def eigenspace_basis(M: RepMatrix, lam) -> tuple:
    """Echelon basis of ``ker(M - lam*I)``; empty when ``lam`` is not an eigenvalue."""
    if not M.is_square():
        raise ShapeMismatch("eigenspace of a non-square matrix")
    return nullspace(M - as_rational(lam) * RepMatrix.identity(M.rows))


def restrict(M: RepMatrix, basis: Sequence[Sequence]) -> RepMatrix:
    """Matrix of ``M`` on the invariant subspace spanned by an RREF ``basis``.

    Coordinates of a vector in an RREF basis are its entries at the pivots.
    Raises :class:`ShapeMismatch` if the subspace is not ``M``-invariant.
    """
    span = span_of(basis, M.cols)
    if span.basis != tuple(tuple(as_rational(v) for v in b) for b in basis):
        raise ValueError("restrict() needs a basis already in reduced row-echelon form")
    cols = []
    for b in span.basis:
        image = M.apply(b)
        coords = span.coordinates(image)
        if coords is None:
            raise ShapeMismatch("subspace is not invariant under the operator")
        cols.append(coords)
    return RepMatrix.from_columns(cols) if cols else RepMatrix._raw((), 0)


@dataclass(frozen=True)
class SpanBasis:
    """A subspace of ``Q^ambient_dim`` stored as its unique RREF basis."""

    ambient_dim: int
    basis: tuple
    pivots: tuple

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coordinates(self, vec: Sequence) -> tuple | None:
        """Coordinates of ``vec`` in this basis, or None if it lies outside the span."""
        vec = [as_rational(v) for v in vec]
        coords = tuple(vec[p] for p in self.pivots)
        residual = list(vec)
        for c, b in zip(coords, self.basis):
            if c:
                for j, v in enumerate(b):
                    if v:
                        residual[j] -= c * v
        if any(residual):
            return None
        return coords

    def contains(self, vec: Sequence) -> bool:
        return self.coordinates(vec) is not None

    def as_matrices(self, n: int) -> list[RepMatrix]:
        """Unflatten basis vectors into ``n x n`` matrices (row-major)."""
        return [RepMatrix._raw(tuple(b[r * n:(r + 1) * n] for r in range(n)), n) for b in self.basis]


class _Echelon:
    """Incremental RREF over sparse vectors (dicts index -> nonzero Fraction)."""

    def __init__(self, ambient_dim: int):
        self.ambient_dim = ambient_dim
        self.rows: dict[int, dict] = {}

    def __len__(self):
        return len(self.rows)

    def insert(self, vec: dict) -> bool:
        """Reduce ``vec`` against the basis; add it if independent."""
        v = dict(vec)
        for p, row in self.rows.items():
            f = v.get(p)
            if f:
                for j, x in row.items():
                    nv = v.get(j, ZERO) - f * x
                    if nv:
                        v[j] = nv
                    else:
                        v.pop(j, None)
        if not v:
            return False
        p = min(v)
        lead = v[p]
        if lead != 1:
            v = {j: x / lead for j, x in v.items()}
        for row in self.rows.values():
            f = row.get(p)
            if f:
                for j, x in v.items():
                    nv = row.get(j, ZERO) - f * x
                    if nv:
                        row[j] = nv
                    else:
                        row.pop(j, None)
        self.rows[p] = v
        return True

    def freeze(self) -> SpanBasis:
        pivots = tuple(sorted(self.rows))
        basis = []
        for p in pivots:
            dense = [ZERO] * self.ambient_dim
            for j, x in self.rows[p].items():
                dense[j] = x
            basis.append(tuple(dense))
        return SpanBasis(self.ambient_dim, tuple(basis), pivots)


def _sparse(values: Iterable) -> dict:
    return {j: as_rational(x) for j, x in enumerate(values) if x}


def span_of(vectors: Iterable[Sequence], ambient_dim: int) -> SpanBasis:
    ech = _Echelon(ambient_dim)
    for v in vectors:
        if len(v) != ambient_dim:
            raise ShapeMismatch("vector length does not match ambient dimension")
        ech.insert(_sparse(v))
    return ech.freeze()


def span_closure(generators: Sequence[RepMatrix], include_identity: bool = True):
    """Linear dimension and RREF basis of the algebra generated by ``generators``.

    Matrices are flattened row-major. Starting from the identity (when
    requested) and the generators, every newly independent element is
    left-multiplied by each generator until nothing new appears.
    """
    gens = list(generators)
    if not gens and not include_identity:
        raise ValueError("need at least one generator or the identity")
    n = gens[0].rows if gens else None
    for g in gens:
        if not g.is_square() or g.rows != n:
            raise ShapeMismatch("generators must be square matrices of equal size")
    if n is None:
        raise ValueError("cannot infer matrix size without generators")
    ech = _Echelon(n * n)
    worklist = []
    seeds = ([RepMatrix.identity(n)] if include_identity else []) + gens
    for m in seeds:
        if ech.insert(_sparse(m.entries)):
            worklist.append(m)
    while worklist:
        m = worklist.pop()
        for g in gens:
            prod = g @ m
            if ech.insert(_sparse(prod.entries)):
                worklist.append(prod)
    basis = ech.freeze()
    return basis.rank, basis
