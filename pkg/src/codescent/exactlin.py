"""Exact linear algebra over the rationals and prime fields.

Every higher construction in the package (Hom spaces, kernels, splittings,
existence of retractions) reduces to the routines here.  Arithmetic is exact:
rationals are ``gmpy2.mpq`` values, elements of F_p are integers in
``range(p)``.

Row reduction always pivots on the first nonzero entry in column order, so
kernel bases and witnesses are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

__all__ = [
    "FieldSpec",
    "QQ",
    "GF",
    "ExactMatrix",
    "Subspace",
    "Echelon",
    "kernel_basis",
    "solve",
    "split_idempotent",
    "linear_feasible",
    "rank",
]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The rationals (``characteristic == 0``) or the prime field F_p."""

    characteristic: int = 0

    def __post_init__(self):
        c = self.characteristic
        if c != 0 and not _is_prime(c):
            raise ValueError(f"characteristic must be 0 or prime, got {c}")

    @property
    def kind(self) -> str:
        return "Rationals" if self.characteristic == 0 else "PrimeField"

    @property
    def zero(self):
        return _Q0 if self.characteristic == 0 else 0

    @property
    def one(self):
        return _Q1 if self.characteristic == 0 else 1

    def __call__(self, x):
        """Coerce an int, rational or ``"p/q"`` string into the field."""
        p = self.characteristic
        if isinstance(x, str):
            x = mpq(x.strip())
        if p == 0:
            return mpq(x)
        if isinstance(x, int):
            return x % p
        num, den = int(x.numerator), int(x.denominator)
        if den % p == 0:
            raise ZeroDivisionError(f"{x} has no image in F_{p}")
        return num * pow(den, p - 2, p) % p

    def norm(self, x):
        return x % self.characteristic if self.characteristic else x

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        p = self.characteristic
        return pow(x, p - 2, p) if p else 1 / mpq(x)

    def div(self, x, y):
        return self.norm(x * self.inv(y))

    def format(self, x) -> str:
        if self.characteristic:
            return str(int(x))
        x = mpq(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def elements(self):
        """All elements of a finite field (raises for the rationals)."""
        if not self.characteristic:
            raise ValueError("the rationals are infinite")
        return list(range(self.characteristic))

    def __str__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    __repr__ = __str__


_Q0 = mpq(0)
_Q1 = mpq(1)
QQ = FieldSpec(0)


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)


class Echelon:
    """Incrementally maintained reduced row echelon form over sparse rows.

    Rows are dicts ``{column: value}``.  Each stored pivot row has a 1 at its
    pivot and zeros in every other pivot column.
    """

    __slots__ = ("field", "ncols", "pivots")

    def __init__(self, field: FieldSpec, ncols: int):
        self.field = field
        self.ncols = ncols
        self.pivots: dict[int, dict[int, object]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Mapping[int, object]) -> dict:
        # pivot rows are fully reduced, so one pass over the pivots present suffices
        p = self.field.characteristic
        pivots = self.pivots
        out = {k: v for k, v in row.items() if v}
        hits = [c for c in out if c in pivots]
        if len(hits) > 1:
            hits.sort()
        for c in hits:
            coef = out.get(c)
            if not coef:
                continue
            if p:
                for k, v in pivots[c].items():
                    nv = (out.get(k, 0) - coef * v) % p
                    if nv:
                        out[k] = nv
                    else:
                        out.pop(k, None)
            else:
                for k, v in pivots[c].items():
                    nv = out.get(k, 0) - coef * v
                    if nv:
                        out[k] = nv
                    else:
                        out.pop(k, None)
        return out

    def add(self, row: Mapping[int, object]) -> int | None:
        """Insert a row; return the new pivot column, or None if dependent."""
        r = self.reduce(row)
        if not r:
            return None
        field = self.field
        norm = field.norm
        p = min(r)
        inv = field.inv(r[p])
        r = {k: norm(v * inv) for k, v in r.items()}
        for prow in self.pivots.values():
            coef = prow.get(p)
            if coef:
                for k, v in r.items():
                    nv = norm(prow.get(k, 0) - coef * v)
                    if nv:
                        prow[k] = nv
                    else:
                        prow.pop(k, None)
        self.pivots[p] = r
        return p

    def contains(self, row: Mapping[int, object]) -> bool:
        return not self.reduce(row)

    def null_space(self) -> list[tuple]:
        """Basis of {x : every stored row annihilates x}, one vector per free column."""
        zero, one = self.field.zero, self.field.one
        norm = self.field.norm
        out = []
        for f in range(self.ncols):
            if f in self.pivots:
                continue
            v = [zero] * self.ncols
            v[f] = one
            for p, prow in self.pivots.items():
                c = prow.get(f)
                if c:
                    v[p] = norm(-c)
            out.append(tuple(v))
        return out


class ExactMatrix:
    """Immutable dense matrix with exact entries in ``field``."""

    __slots__ = ("field", "rows", "cols", "_data", "_hash")

    def __init__(self, field: FieldSpec, rows: int, cols: int, data: Sequence[Sequence]):
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError(f"entry count does not match shape {rows}x{cols}")
        self.field = field
        self.rows = rows
        self.cols = cols
        self._data = tuple(tuple(r) for r in data)
        self._hash = None

    # constructors -----------------------------------------------------

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence], ncols: int | None = None):
        data = [tuple(field(x) for x in r) for r in rows]
        if ncols is None:
            ncols = len(data[0]) if data else 0
        return cls(field, len(data), ncols, data)

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Sequence], nrows: int):
        columns = list(columns)
        data = [tuple(c[i] for c in columns) for i in range(nrows)]
        return cls(field, nrows, len(columns), data)

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int):
        z = field.zero
        return cls(field, rows, cols, [(z,) * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field: FieldSpec, n: int):
        z, o = field.zero, field.one
        return cls(field, n, n, [tuple(o if i == j else z for j in range(n)) for i in range(n)])

    @classmethod
    def from_sparse(cls, field: FieldSpec, rows: int, cols: int, entries: Mapping[tuple[int, int], object]):
        z = field.zero
        data = [[z] * cols for _ in range(rows)]
        for (i, j), v in entries.items():
            data[i][j] = field.norm(data[i][j] + v)
        return cls(field, rows, cols, data)

    # access -------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.cols)]

    def to_lists(self) -> list[list]:
        return [list(r) for r in self._data]

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._data)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def entries_flat(self) -> tuple:
        """Row-major entries."""
        return tuple(x for r in self._data for x in r)

    # algebra ------------------------------------------------------------

    def _check_field(self, other):
        if other.field != self.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_field(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        norm = self.field.norm
        z = self.field.zero
        ocols = list(zip(*other._data)) if other.rows else [()] * other.cols
        data = []
        for r in self._data:
            nz = [(k, a) for k, a in enumerate(r) if a]
            if not nz:
                data.append((z,) * other.cols)
                continue
            data.append(tuple(norm(sum((a * c[k] for k, a in nz), z)) for c in ocols))
        return ExactMatrix(self.field, self.rows, other.cols, data)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        norm, z = self.field.norm, self.field.zero
        nz = [(k, a) for k, a in enumerate(v) if a]
        return tuple(norm(sum((r[k] * a for k, a in nz), z)) for r in self._data)

    def __add__(self, other):
        self._check_field(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        norm = self.field.norm
        return ExactMatrix(self.field, self.rows, self.cols,
                           [tuple(norm(a + b) for a, b in zip(r, s)) for r, s in zip(self._data, other._data)])

    def __neg__(self):
        norm = self.field.norm
        return ExactMatrix(self.field, self.rows, self.cols, [tuple(norm(-a) for a in r) for r in self._data])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ExactMatrix":
        c = self.field(c)
        norm = self.field.norm
        return ExactMatrix(self.field, self.rows, self.cols, [tuple(norm(c * a) for a in r) for r in self._data])

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix(self.field, self.cols, self.rows, [tuple(r[j] for r in self._data) for j in range(self.cols)])

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self._data == other._data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self):
        f = self.field.format
        body = "; ".join(" ".join(f(x) for x in r) for r in self._data)
        return f"ExactMatrix({self.rows}x{self.cols} over {self.field}: [{body}])"

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix(self.field, len(rows), len(cols), [tuple(self._data[i][j] for j in cols) for i in rows])

    @staticmethod
    def hstack(field: FieldSpec, mats: Sequence["ExactMatrix"], nrows: int | None = None) -> "ExactMatrix":
        mats = list(mats)
        if nrows is None:
            nrows = mats[0].rows
        if any(m.rows != nrows for m in mats):
            raise ValueError("hstack row mismatch")
        data = [tuple(x for m in mats for x in m._data[i]) for i in range(nrows)]
        return ExactMatrix(field, nrows, sum(m.cols for m in mats), data)

    @staticmethod
    def vstack(field: FieldSpec, mats: Sequence["ExactMatrix"], ncols: int | None = None) -> "ExactMatrix":
        mats = list(mats)
        if ncols is None:
            ncols = mats[0].cols
        if any(m.cols != ncols for m in mats):
            raise ValueError("vstack column mismatch")
        data = [r for m in mats for r in m._data]
        return ExactMatrix(field, len(data), ncols, data)

    @staticmethod
    def block_diag(field: FieldSpec, mats: Sequence["ExactMatrix"]) -> "ExactMatrix":
        R = sum(m.rows for m in mats)
        C = sum(m.cols for m in mats)
        z = field.zero
        data = []
        off = 0
        for m in mats:
            for r in m._data:
                data.append((z,) * off + r + (z,) * (C - off - m.cols))
            off += m.cols
        return ExactMatrix(field, R, C, data)

    def kron(self, other: "ExactMatrix") -> "ExactMatrix":
        """Kronecker product; row (i, k) is index ``i * other.rows + k``."""
        self._check_field(other)
        norm = self.field.norm
        data = []
        for r in self._data:
            for s in other._data:
                data.append(tuple(norm(a * b) for a in r for b in s))
        return ExactMatrix(self.field, self.rows * other.rows, self.cols * other.cols, data)

    # reduction ----------------------------------------------------------

    def echelon(self) -> Echelon:
        ech = Echelon(self.field, self.cols)
        for r in self._data:
            ech.add({j: x for j, x in enumerate(r) if x})
        return ech

    def rank(self) -> int:
        return self.echelon().rank

    def kernel(self) -> "Subspace":
        return kernel_basis(self)

    def column_space(self) -> "Subspace":
        return Subspace.span(self.field, self.rows, self.columns())

    def inverse(self) -> "ExactMatrix":
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        field = self.field
        ech = Echelon(field, 2 * n)
        one = field.one
        for i, r in enumerate(self._data):
            row = {j: x for j, x in enumerate(r) if x}
            row[n + i] = one
            ech.add(row)
        if any(p not in ech.pivots for p in range(n)):
            raise ValueError("matrix is singular")
        z = field.zero
        data = []
        for i in range(n):
            prow = ech.pivots[i]
            data.append(tuple(prow.get(n + j, z) for j in range(n)))
        return ExactMatrix(field, n, n, data)

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.rows

    def is_idempotent(self) -> bool:
        return self.is_square() and self @ self == self

    def left_inverse(self) -> "ExactMatrix | None":
        """Some L with L @ self = I, or None when columns are dependent."""
        sub = Subspace(self.field, self.rows, self.columns(), _checked=False)
        try:
            return sub.coordinate_matrix()
        except ValueError:
            return None


class Subspace:
    """A subspace of ``field^ambient`` given by a basis of column vectors."""

    __slots__ = ("field", "ambient", "basis", "_pivot_rows", "_coord_inv")

    def __init__(self, field: FieldSpec, ambient: int, basis: Sequence[Sequence], _checked: bool = True):
        self.field = field
        self.ambient = ambient
        self.basis = tuple(tuple(v) for v in basis)
        if any(len(v) != ambient for v in self.basis):
            raise ValueError("basis vector has wrong length")
        self._pivot_rows = None
        self._coord_inv = None
        if _checked and self.basis and self.as_matrix().rank() != len(self.basis):
            raise ValueError("basis vectors are linearly dependent")

    @classmethod
    def span(cls, field: FieldSpec, ambient: int, vectors: Iterable[Sequence]) -> "Subspace":
        """Independent subfamily of ``vectors`` (greedy, in order)."""
        ech = Echelon(field, ambient)
        chosen = []
        for v in vectors:
            if ech.add({j: x for j, x in enumerate(v) if x}) is not None:
                chosen.append(tuple(v))
        return cls(field, ambient, chosen, _checked=False)

    @classmethod
    def zero(cls, field: FieldSpec, ambient: int) -> "Subspace":
        return cls(field, ambient, [], _checked=False)

    @classmethod
    def full(cls, field: FieldSpec, ambient: int) -> "Subspace":
        return cls(field, ambient, ExactMatrix.identity(field, ambient).columns(), _checked=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def as_matrix(self) -> ExactMatrix:
        """ambient x dim matrix whose columns are the basis."""
        return ExactMatrix.from_columns(self.field, self.basis, self.ambient)

    def _prepare(self):
        if self._coord_inv is not None:
            return
        # rows of the basis matrix forming an invertible square block
        M = self.as_matrix()
        ech = Echelon(self.field, self.ambient)
        for v in self.basis:
            ech.add({j: x for j, x in enumerate(v) if x})
        # pivots of the transposed reduction give independent rows of M
        rows = sorted(ech.pivots)
        if len(rows) != self.dim:
            raise ValueError("basis vectors are linearly dependent")
        self._pivot_rows = rows
        self._coord_inv = M.submatrix(rows, range(self.dim)).inverse() if self.dim else ExactMatrix.zeros(self.field, 0, 0)

    def coordinates(self, v: Sequence) -> tuple | None:
        """Coordinates of v in the basis, or None if v is not in the subspace."""
        self._prepare()
        sub = tuple(v[i] for i in self._pivot_rows)
        c = self._coord_inv.apply(sub) if self.dim else ()
        if self.combine(c) != tuple(self.field.norm(x) for x in v):
            return None
        return c

    def coordinate_matrix(self) -> ExactMatrix:
        """A dim x ambient matrix L with L @ basis_matrix = I."""
        self._prepare()
        z = self.field.zero
        cols = {r: k for k, r in enumerate(self._pivot_rows)}
        data = []
        for i in range(self.dim):
            data.append(tuple(self._coord_inv[i, cols[j]] if j in cols else z for j in range(self.ambient)))
        return ExactMatrix(self.field, self.dim, self.ambient, data)

    def combine(self, coeffs: Sequence) -> tuple:
        norm, z = self.field.norm, self.field.zero
        out = [z] * self.ambient
        for c, v in zip(coeffs, self.basis):
            if c:
                for j, x in enumerate(v):
                    if x:
                        out[j] = out[j] + c * x
        return tuple(norm(x) for x in out)

    def contains(self, v: Sequence) -> bool:
        return self.coordinates(v) is not None

    def __contains__(self, v):
        return self.contains(v)

    def intersect(self, other: "Subspace") -> "Subspace":
        A = ExactMatrix.hstack(self.field, [self.as_matrix(), -other.as_matrix()], self.ambient)
        vecs = [self.combine(k[: self.dim]) for k in kernel_basis(A).basis]
        return Subspace.span(self.field, self.ambient, vecs)

    def sum(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.field, self.ambient, list(self.basis) + list(other.basis))

    def complement_coordinates(self) -> list[int]:
        """Standard coordinates spanning a complement (non-pivot columns of the RREF)."""
        ech = Echelon(self.field, self.ambient)
        for v in self.basis:
            ech.add({j: x for j, x in enumerate(v) if x})
        return [j for j in range(self.ambient) if j not in ech.pivots]

    def __repr__(self):
        return f"Subspace(dim={self.dim} in {self.field}^{self.ambient})"


def rank(A: ExactMatrix) -> int:
    return A.rank()


def kernel_basis(A: ExactMatrix) -> Subspace:
    """Basis of {x : A x = 0}; one vector per free column of the RREF."""
    return Subspace(A.field, A.cols, A.echelon().null_space(), _checked=False)


def solve(A: ExactMatrix, b: Sequence) -> tuple | None:
    """Some x with A x = b, or None when the system is inconsistent."""
    if len(b) != A.rows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {A.rows}")
    field = A.field
    n = A.cols
    ech = Echelon(field, n + 1)
    for r, bi in zip(A._data, b):
        row = {j: x for j, x in enumerate(r) if x}
        bi = field(bi)
        if bi:
            row[n] = bi
        ech.add(row)
    if n in ech.pivots:
        return None
    z = field.zero
    x = [z] * n
    for p, prow in ech.pivots.items():
        x[p] = prow.get(n, z)
    return tuple(x)


def split_idempotent(e: ExactMatrix) -> tuple[ExactMatrix, ExactMatrix]:
    """Split a projector: returns (sigma, rho) with rho @ sigma = I and sigma @ rho = e."""
    if not e.is_square():
        raise ValueError("split_idempotent: matrix is not square")
    if e @ e != e:
        raise ValueError("split_idempotent: e @ e != e")
    image = e.column_space()
    sigma = image.as_matrix() if image.dim else ExactMatrix.zeros(e.field, e.rows, 0)
    if not image.dim:
        return sigma, ExactMatrix.zeros(e.field, 0, e.cols)
    rho = image.coordinate_matrix() @ e
    return sigma, rho


def linear_feasible(constraints: Iterable[tuple[Mapping[int, object] | Sequence, object]],
                    n_unknowns: int, field: FieldSpec = QQ) -> tuple | None:
    """Solve a system of affine equations ``sum_j a_j x_j = c``.

    Each constraint is ``(coefficients, rhs)`` where coefficients is a dense
    sequence or a sparse ``{index: value}`` mapping.  Returns one solution
    (free unknowns set to zero) or None.
    """
    ech = Echelon(field, n_unknowns + 1)
    for coeffs, rhs in constraints:
        if isinstance(coeffs, Mapping):
            row = {j: field(v) for j, v in coeffs.items()}
        else:
            if len(coeffs) != n_unknowns:
                raise ValueError("constraint length does not match unknown count")
            row = {j: field(v) for j, v in enumerate(coeffs)}
        row = {j: v for j, v in row.items() if v}
        c = field(rhs)
        if c:
            row[n_unknowns] = c
        ech.add(row)
        if n_unknowns in ech.pivots:
            return None
    z = field.zero
    x = [z] * n_unknowns
    for p, prow in ech.pivots.items():
        x[p] = prow.get(n_unknowns, z)
    return tuple(x)
