"""Finite-dimensional algebras, their modules, and change of rings.

An :class:`Algebra` is stored through its multiplication table on a fixed
basis.  A :class:`Module` is a list of action matrices, one per algebra basis
element.  Extension of scalars along an :class:`AlgebraMorphism` is computed
as an explicit quotient of ``S (x)_k M`` and keeps the quotient map and a
section around, so every adjunction map is a concrete matrix.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Sequence

from .exactlin import (
    Echelon,
    ExactMatrix,
    FieldSpec,
    Subspace,
    kernel_basis,
    solve,
)

__all__ = [
    "Algebra",
    "AlgebraMorphism",
    "Module",
    "ModuleHom",
    "HomSpace",
    "ScalarExtension",
    "TensorProduct",
    "FiniteGroup",
    "GroupAction",
    "Verdict",
    "FlatnessReport",
    "hom_space",
    "extension",
    "extend_scalars",
    "extend_hom",
    "restrict_scalars",
    "restrict_hom",
    "adjunction_unit",
    "adjunction_counit",
    "radical",
    "primitive_idempotents",
    "flatness_report",
    "is_flat",
    "is_faithfully_flat",
    "free_basis",
    "trace_map",
    "field_algebra",
    "quotient_ring",
    "product_algebra",
    "function_algebra",
    "group_algebra",
    "function_algebra_on",
    "groupoid_algebra",
    "tensor_product_over",
    "tensor_power_over",
]


class AxiomError(ValueError):
    """A construction violates one of its defining axioms."""


def _dense(field: FieldSpec, n: int, sparse: dict) -> tuple:
    z = field.zero
    return tuple(sparse.get(i, z) for i in range(n))


def _sparse(v: Sequence) -> dict:
    return {i: x for i, x in enumerate(v) if x}


# ---------------------------------------------------------------------------
# algebras


class Algebra:
    """Associative unital algebra with basis ``e_0 .. e_{n-1}``.

    ``table[i][j]`` is the coordinate vector of ``e_i * e_j``.
    """

    def __init__(self, field: FieldSpec, table: Sequence[Sequence[Sequence]], unit: Sequence,
                 name: str = "", labels: Sequence[str] | None = None, check: bool = True):
        self.field = field
        self.dim = len(table)
        self.table = tuple(tuple(tuple(field.norm(x) for x in v) for v in row) for row in table)
        self.unit = tuple(field.norm(x) for x in unit)
        self.name = name
        self.labels = tuple(labels) if labels else tuple(f"e{i}" for i in range(self.dim))
        self._sparse_table = [[_sparse(v) for v in row] for row in self.table]
        self._cache: dict = {}
        if self.dim < 1:
            raise AxiomError("an algebra needs positive dimension")
        if check:
            self.validate()

    def __repr__(self):
        return f"Algebra({self.name or '?'}, dim={self.dim}, over {self.field})"

    def validate(self):
        n = self.dim
        for row in self.table:
            if len(row) != n or any(len(v) != n for v in row):
                raise AxiomError("structure constants have the wrong shape")
        if len(self.unit) != n:
            raise AxiomError("unit has the wrong length")
        for i in range(n):
            e = self.basis_vector(i)
            if self.mul(self.unit, e) != e or self.mul(e, self.unit) != e:
                raise AxiomError(f"unit is not a two-sided identity on basis element {i}")
        for i, j, k in itertools.product(range(n), repeat=3):
            ei, ej, ek = self.basis_vector(i), self.basis_vector(j), self.basis_vector(k)
            if self.mul(self.mul(ei, ej), ek) != self.mul(ei, self.mul(ej, ek)):
                raise AxiomError(f"multiplication is not associative on basis triple {(i, j, k)}")

    # elements -----------------------------------------------------------

    def basis_vector(self, i: int) -> tuple:
        z, o = self.field.zero, self.field.one
        return tuple(o if k == i else z for k in range(self.dim))

    def zero(self) -> tuple:
        return (self.field.zero,) * self.dim

    def element(self, coeffs: Sequence) -> tuple:
        if len(coeffs) != self.dim:
            raise ValueError("wrong number of coordinates")
        return tuple(self.field(x) for x in coeffs)

    def mul(self, a: Sequence, b: Sequence) -> tuple:
        acc: dict = {}
        st = self._sparse_table
        for i, x in enumerate(a):
            if not x:
                continue
            row = st[i]
            for j, y in enumerate(b):
                if not y:
                    continue
                c = x * y
                for k, v in row[j].items():
                    acc[k] = acc.get(k, 0) + c * v
        norm = self.field.norm
        return _dense(self.field, self.dim, {k: norm(v) for k, v in acc.items()})

    def add(self, a, b) -> tuple:
        norm = self.field.norm
        return tuple(norm(x + y) for x, y in zip(a, b))

    def sub(self, a, b) -> tuple:
        norm = self.field.norm
        return tuple(norm(x - y) for x, y in zip(a, b))

    def scale(self, c, a) -> tuple:
        norm = self.field.norm
        return tuple(norm(c * x) for x in a)

    def power(self, a, k: int) -> tuple:
        out = self.unit
        base = tuple(a)
        while k:
            if k & 1:
                out = self.mul(out, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return out

    def left_matrix(self, a: Sequence) -> ExactMatrix:
        """Matrix of x -> a*x."""
        cols = [self.mul(a, self.basis_vector(j)) for j in range(self.dim)]
        return ExactMatrix.from_columns(self.field, cols, self.dim)

    def right_matrix(self, a: Sequence) -> ExactMatrix:
        """Matrix of x -> x*a."""
        cols = [self.mul(self.basis_vector(j), a) for j in range(self.dim)]
        return ExactMatrix.from_columns(self.field, cols, self.dim)

    def evaluate_polynomial(self, coeffs_low_to_high: Sequence, a: Sequence) -> tuple:
        out = self.zero()
        for c in reversed(list(coeffs_low_to_high)):
            out = self.add(self.mul(out, a), self.scale(self.field(c), self.unit))
        return out

    # structure ------------------------------------------------------------

    @property
    def commutative(self) -> bool:
        if "commutative" not in self._cache:
            n = self.dim
            self._cache["commutative"] = all(
                self.table[i][j] == self.table[j][i] for i in range(n) for j in range(i + 1, n))
        return self._cache["commutative"]

    def subalgebra_closure(self, gens: Sequence[Sequence]) -> Subspace:
        ech = Echelon(self.field, self.dim)
        basis = []

        def push(v):
            if ech.add(_sparse(v)) is not None:
                basis.append(tuple(v))
                return True
            return False

        push(self.unit)
        for g in gens:
            push(g)
        i = 0
        while i < len(basis):
            b = basis[i]
            for g in gens:
                push(self.mul(b, g))
            i += 1
        return Subspace(self.field, self.dim, basis, _checked=False)

    @property
    def generators(self) -> tuple:
        """A small set of basis vectors generating the algebra."""
        if "generators" not in self._cache:
            gens: list = []
            span = self.subalgebra_closure(gens)
            for i in range(self.dim):
                if span.dim == self.dim:
                    break
                e = self.basis_vector(i)
                if e not in span:
                    gens.append(e)
                    span = self.subalgebra_closure(gens)
            self._cache["generators"] = tuple(gens)
        return self._cache["generators"]

    def minimal_polynomial(self, a: Sequence) -> list:
        """Monic minimal polynomial of ``a``, coefficients from low to high degree."""
        powers = [self.unit]
        ech = Echelon(self.field, self.dim)
        ech.add(_sparse(self.unit))
        while True:
            nxt = self.mul(powers[-1], a)
            if ech.contains(_sparse(nxt)):
                cols = [p for p in powers]
                A = ExactMatrix.from_columns(self.field, cols, self.dim)
                c = solve(A, nxt)
                return [self.field.norm(-x) for x in c] + [self.field.one]
            powers.append(nxt)
            ech.add(_sparse(nxt))

    def opposite(self) -> "Algebra":
        n = self.dim
        table = [[self.table[j][i] for j in range(n)] for i in range(n)]
        return Algebra(self.field, table, self.unit, name=f"{self.name}^op", labels=self.labels, check=False)


@dataclass(frozen=True, eq=False)
class AlgebraMorphism:
    """Unital algebra map given by a ``target.dim x source.dim`` matrix."""

    source: Algebra
    target: Algebra
    matrix: ExactMatrix
    check: bool = True
    name: str = ""
    _cache: dict = dc_field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise AxiomError("morphism matrix has the wrong shape")
        if self.check:
            self.validate()

    def validate(self):
        if self(self.source.unit) != self.target.unit:
            raise AxiomError("morphism does not preserve the unit")
        n = self.source.dim
        for i in range(n):
            for j in range(n):
                ei, ej = self.source.basis_vector(i), self.source.basis_vector(j)
                if self(self.source.mul(ei, ej)) != self.target.mul(self(ei), self(ej)):
                    raise AxiomError(f"morphism does not preserve the product of basis elements {(i, j)}")

    def __call__(self, v: Sequence) -> tuple:
        return self.matrix.apply(v)

    def __matmul__(self, other: "AlgebraMorphism") -> "AlgebraMorphism":
        """Composite ``self after other``."""
        if other.target is not self.source:
            raise ValueError("morphisms are not composable")
        return AlgebraMorphism(other.source, self.target, self.matrix @ other.matrix, check=False)

    def is_identity(self) -> bool:
        if "is_identity" not in self._cache:
            self._cache["is_identity"] = (self.source is self.target and
                                          self.matrix == ExactMatrix.identity(self.source.field, self.source.dim))
        return self._cache["is_identity"]

    @classmethod
    def identity(cls, A: Algebra) -> "AlgebraMorphism":
        return cls(A, A, ExactMatrix.identity(A.field, A.dim), check=False, name="id")

    @classmethod
    def structure_map(cls, A: Algebra) -> "AlgebraMorphism":
        """The map k -> A."""
        k = field_algebra(A.field)
        return cls(k, A, ExactMatrix.from_columns(A.field, [A.unit], A.dim), check=False, name="unit")


# ---------------------------------------------------------------------------
# modules


class Module:
    """Left module over ``algebra``; ``action[i]`` is the matrix of basis element i."""

    def __init__(self, algebra: Algebra, dim: int, action: Sequence[ExactMatrix],
                 name: str = "", check: bool = True):
        self.algebra = algebra
        self.dim = dim
        self.action = tuple(action)
        self.name = name
        self._cache: dict = {}
        if len(self.action) != algebra.dim:
            raise AxiomError("need one action matrix per algebra basis element")
        if any(m.shape != (dim, dim) for m in self.action):
            raise AxiomError("action matrix has the wrong shape")
        if check:
            self.validate()

    def __repr__(self):
        return f"Module({self.name or '?'}, dim={self.dim}, over {self.algebra.name or self.algebra})"

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field

    def validate(self):
        A = self.algebra
        if self.act(A.unit) != ExactMatrix.identity(A.field, self.dim):
            raise AxiomError("unit does not act as the identity")
        for i in range(A.dim):
            for j in range(A.dim):
                lhs = self.action[i] @ self.action[j]
                rhs = self.act(A.table[i][j])
                if lhs != rhs:
                    raise AxiomError(f"action does not respect the product of basis elements {(i, j)}")

    def act(self, a: Sequence) -> ExactMatrix:
        key = tuple(a)
        cache = self._cache.setdefault("act", {})
        if key not in cache:
            F = self.field
            out = ExactMatrix.zeros(F, self.dim, self.dim)
            for c, m in zip(a, self.action):
                if c:
                    out = out + (m if c == F.one else m.scale(c))
            cache[key] = out
        return cache[key]

    def generator_actions(self) -> list[ExactMatrix]:
        return [self.act(g) for g in self.algebra.generators]

    def is_zero(self) -> bool:
        return self.dim == 0

    def identity(self) -> "ModuleHom":
        return ModuleHom(self, self, ExactMatrix.identity(self.field, self.dim), check=False)

    def zero_map(self, other: "Module") -> "ModuleHom":
        return ModuleHom(self, other, ExactMatrix.zeros(self.field, other.dim, self.dim), check=False)

    # constructors -------------------------------------------------------

    @classmethod
    def zero(cls, A: Algebra) -> "Module":
        return cls(A, 0, [ExactMatrix.zeros(A.field, 0, 0)] * A.dim, name="0", check=False)

    @classmethod
    def regular(cls, A: Algebra) -> "Module":
        key = "regular"
        if key not in A._cache:
            A._cache[key] = cls(A, A.dim, [A.left_matrix(A.basis_vector(i)) for i in range(A.dim)],
                                name=f"{A.name or 'A'}", check=False)
        return A._cache[key]

    @classmethod
    def free(cls, A: Algebra, rank: int) -> "Module":
        return direct_sum([cls.regular(A)] * rank)[0] if rank else cls.zero(A)

    @classmethod
    def from_matrices(cls, A: Algebra, mats: Sequence, name: str = "") -> "Module":
        mats = [m if isinstance(m, ExactMatrix) else ExactMatrix.from_rows(A.field, m) for m in mats]
        dim = mats[0].rows if mats else 0
        return cls(A, dim, mats, name=name)

    def submodule(self, sub: Subspace) -> tuple["Module", "ModuleHom"]:
        """The submodule spanned by ``sub`` (must be stable) and its inclusion."""
        B = sub.as_matrix() if sub.dim else ExactMatrix.zeros(self.field, self.dim, 0)
        if not sub.dim:
            Z = Module.zero(self.algebra)
            return Z, ModuleHom(Z, self, B, check=False)
        L = sub.coordinate_matrix()
        mats = []
        for m in self.action:
            img = m @ B
            for col in img.columns():
                if not sub.contains(col):
                    raise AxiomError("subspace is not stable under the action")
            mats.append(L @ img)
        S = Module(self.algebra, sub.dim, mats, check=False)
        return S, ModuleHom(S, self, B, check=False)

    def quotient(self, sub: Subspace) -> tuple["Module", "ModuleHom"]:
        """Quotient by a stable subspace and the projection onto it."""
        free_cols = sub.complement_coordinates()
        ech = Echelon(self.field, self.dim)
        for v in sub.basis:
            ech.add(_sparse(v))
        F = self.field
        qcols = []
        for j in range(self.dim):
            r = ech.reduce({j: F.one})
            qcols.append(tuple(r.get(c, F.zero) for c in free_cols))
        q = ExactMatrix.from_columns(F, qcols, len(free_cols))
        lift = ExactMatrix.identity(F, self.dim).submatrix(range(self.dim), free_cols)
        mats = [q @ m @ lift for m in self.action]
        Q = Module(self.algebra, len(free_cols), mats, check=False)
        return Q, ModuleHom(self, Q, q, check=False)

    def span_of(self, vectors: Sequence[Sequence]) -> Subspace:
        """Smallest submodule containing ``vectors``."""
        ech = Echelon(self.field, self.dim)
        basis = []
        queue = list(vectors)
        gens = self.generator_actions()
        while queue:
            v = tuple(queue.pop(0))
            if ech.add(_sparse(v)) is not None:
                basis.append(v)
                queue.extend(g.apply(v) for g in gens)
        return Subspace(self.field, self.dim, basis, _checked=False)


def direct_sum(modules: Sequence[Module]) -> tuple[Module, list["ModuleHom"], list["ModuleHom"]]:
    """Direct sum with its inclusions and projections."""
    modules = list(modules)
    A = modules[0].algebra
    F = A.field
    mats = [ExactMatrix.block_diag(F, [M.action[i] for M in modules]) for i in range(A.dim)]
    total = sum(M.dim for M in modules)
    S = Module(A, total, mats, check=False)
    incs, projs = [], []
    off = 0
    for M in modules:
        ent = {(off + k, k): F.one for k in range(M.dim)}
        inc = ExactMatrix.from_sparse(F, total, M.dim, ent)
        incs.append(ModuleHom(M, S, inc, check=False))
        projs.append(ModuleHom(S, M, inc.T, check=False))
        off += M.dim
    return S, incs, projs


class ModuleHom:
    """Intertwiner ``source -> target`` given by a ``target.dim x source.dim`` matrix."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: Module, target: Module, matrix: ExactMatrix, check: bool = True):
        if source.algebra is not target.algebra:
            raise AxiomError("source and target are modules over different algebras")
        if matrix.shape != (target.dim, source.dim):
            raise AxiomError(f"hom matrix has shape {matrix.shape}, expected {(target.dim, source.dim)}")
        self.source = source
        self.target = target
        self.matrix = matrix
        if check:
            self.validate()

    def validate(self):
        for i, (a, b) in enumerate(zip(self.source.action, self.target.action)):
            if b @ self.matrix != self.matrix @ a:
                raise AxiomError(f"matrix does not intertwine the action of basis element {i}")

    def is_valid(self) -> bool:
        try:
            self.validate()
        except AxiomError:
            return False
        return True

    def __matmul__(self, other: "ModuleHom") -> "ModuleHom":
        if other.target is not self.source and other.target.dim != self.source.dim:
            raise ValueError("homs are not composable")
        return ModuleHom(other.source, self.target, self.matrix @ other.matrix, check=False)

    def __add__(self, other):
        return ModuleHom(self.source, self.target, self.matrix + other.matrix, check=False)

    def __sub__(self, other):
        return ModuleHom(self.source, self.target, self.matrix - other.matrix, check=False)

    def __neg__(self):
        return ModuleHom(self.source, self.target, -self.matrix, check=False)

    def scale(self, c) -> "ModuleHom":
        return ModuleHom(self.source, self.target, self.matrix.scale(c), check=False)

    def __eq__(self, other):
        if not isinstance(other, ModuleHom):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"ModuleHom({self.source.dim} -> {self.target.dim})"

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def is_iso(self) -> bool:
        return self.source.dim == self.target.dim and self.matrix.is_invertible()

    def inverse(self) -> "ModuleHom":
        return ModuleHom(self.target, self.source, self.matrix.inverse(), check=False)

    def kernel(self) -> tuple[Module, "ModuleHom"]:
        return self.source.submodule(kernel_basis(self.matrix))

    def image(self) -> Subspace:
        return self.matrix.column_space()

    def with_ends(self, source: Module, target: Module) -> "ModuleHom":
        """Same matrix, reinterpreted between modules with identical underlying spaces."""
        return ModuleHom(source, target, self.matrix, check=False)


class HomSpace:
    """Basis of ``Hom_A(M, N)`` as a list of :class:`ModuleHom`."""

    def __init__(self, source: Module, target: Module, basis: Sequence[ModuleHom]):
        self.source = source
        self.target = target
        self.basis = list(basis)
        self._sub = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def element(self, coeffs: Sequence) -> ModuleHom:
        F = self.source.field
        m = ExactMatrix.zeros(F, self.target.dim, self.source.dim)
        for c, b in zip(coeffs, self.basis):
            if c:
                m = m + b.matrix.scale(c)
        return ModuleHom(self.source, self.target, m, check=False)

    def subspace(self) -> Subspace:
        if self._sub is None:
            F = self.source.field
            self._sub = Subspace(F, self.source.dim * self.target.dim,
                                 [b.matrix.entries_flat() for b in self.basis], _checked=False)
        return self._sub

    def coordinates(self, f: ModuleHom | ExactMatrix) -> tuple | None:
        m = f.matrix if isinstance(f, ModuleHom) else f
        return self.subspace().coordinates(m.entries_flat())

    def linear_image(self, fn: Callable[[ModuleHom], ExactMatrix]) -> ExactMatrix:
        """Matrix (columns = flattened fn(basis_i)) of a linear map out of this space."""
        cols = [fn(b).entries_flat() for b in self.basis]
        if not cols:
            return ExactMatrix.zeros(self.source.field, 0, 0)
        return ExactMatrix.from_columns(self.source.field, cols, len(cols[0]))

    def solve_subspace(self, fn: Callable[[ModuleHom], ExactMatrix]) -> "HomSpace":
        """The subspace of homs f with fn(f) = 0, fn linear."""
        if not self.basis:
            return self
        M = self.linear_image(fn)
        if M.rows == 0:
            return self
        ker = kernel_basis(M)
        return HomSpace(self.source, self.target, [self.element(c) for c in ker.basis])


def hom_space(M: Module, N: Module) -> HomSpace:
    """All intertwiners M -> N, by solving the intertwining equations on generators."""
    if M.algebra is not N.algebra:
        raise AxiomError("modules over different algebras")
    F = M.field
    m, n = M.dim, N.dim
    if m == 0 or n == 0:
        return HomSpace(M, N, [])
    # unknown X (n x m), variable index r*m + c
    ech = Echelon(F, n * m)
    norm = F.norm
    for a, b in zip(M.generator_actions(), N.generator_actions()):
        # (b X - X a)[r, c] = sum_k b[r,k] X[k,c] - sum_k X[r,k] a[k,c]
        for r in range(n):
            brow = [(k, b[r, k]) for k in range(n) if b[r, k]]
            for c in range(m):
                eq: dict = {}
                for k, v in brow:
                    idx = k * m + c
                    eq[idx] = eq.get(idx, 0) + v
                for k in range(m):
                    v = a[k, c]
                    if v:
                        idx = r * m + k
                        eq[idx] = eq.get(idx, 0) - v
                eq = {k: norm(v) for k, v in eq.items() if norm(v)}
                if eq:
                    ech.add(eq)
    basis = []
    for vec in ech.null_space():
        mat = ExactMatrix(F, n, m, [vec[r * m:(r + 1) * m] for r in range(n)])
        basis.append(ModuleHom(M, N, mat, check=False))
    return HomSpace(M, N, basis)


# ---------------------------------------------------------------------------
# change of rings


class ScalarExtension:
    """``S (x)_R M`` presented as a quotient of ``S (x)_k M``.

    Ambient index of ``e_s (x) e_j`` is ``s * M.dim + j``.  ``coords`` sends a
    sparse ambient vector to coordinates in the quotient and ``lift_sparse``
    gives a preimage of each quotient basis vector.  Along an identity
    morphism the module is ``M`` itself, the quotient map is the action map
    and the section is ``m -> 1 (x) m``.
    """

    def __init__(self, phi: AlgebraMorphism, M: Module):
        if M.algebra is not phi.source:
            raise AxiomError("module is not over the source of the morphism")
        if not phi.source.commutative:
            raise AxiomError("extension of scalars needs a commutative base algebra")
        self.phi = phi
        self.base = M
        S = phi.target
        F = S.field
        self.field = F
        d, m = S.dim, M.dim
        self.ambient = d * m
        self._q = self._lift = None
        self.identity = phi.is_identity()
        if self.identity:
            self.module = M
            self._lifts = [{s * m + j: c for s, c in enumerate(S.unit) if c} for j in range(m)]
            return
        ech = Echelon(F, self.ambient)
        norm = F.norm
        st = S._sparse_table
        for r in phi.source.generators:
            img = [(k, c) for k, c in enumerate(phi(r)) if c]
            act = M.act(r)
            act_cols = [[(i, v) for i, v in enumerate(act.col(j)) if v] for j in range(m)]
            for a in range(d):
                prod: dict = {}
                for k, c in img:
                    for s, v in st[a][k].items():
                        prod[s] = prod.get(s, 0) + c * v
                prod = [(s, norm(v)) for s, v in prod.items() if norm(v)]
                for j in range(m):
                    row = {s * m + j: c for s, c in prod}
                    for i, c in act_cols[j]:
                        idx = a * m + i
                        nv = norm(row.get(idx, 0) - c)
                        if nv:
                            row[idx] = nv
                        else:
                            row.pop(idx, None)
                    if row:
                        ech.add(row)
        self._ech = ech
        self.free = [j for j in range(self.ambient) if j not in ech.pivots]
        self._pos = {j: i for i, j in enumerate(self.free)}
        self._lifts = [{j: F.one} for j in self.free]
        n = len(self.free)
        st = S._sparse_table
        mats = []
        for s in range(d):
            cols = []
            for lift in self._lifts:
                acc: dict = {}
                for idx, c in lift.items():
                    a, j = divmod(idx, m)
                    for b, v in st[s][a].items():
                        key = b * m + j
                        acc[key] = acc.get(key, 0) + c * v
                cols.append(self.coords({k: norm(v) for k, v in acc.items()}))
            mats.append(ExactMatrix.from_columns(F, cols, n) if cols else ExactMatrix.zeros(F, 0, 0))
        self.module = Module(S, n, mats, check=False, name=f"{S.name or 'S'}*{M.name or 'M'}")

    def coords(self, sparse: dict) -> tuple:
        """Coordinates in the extended module of a sparse ambient vector."""
        F = self.field
        M = self.base
        m = M.dim
        if self.identity:
            out = [F.zero] * m
            for idx, c in sparse.items():
                if not c:
                    continue
                s, j = divmod(idx, m)
                for i, v in enumerate(M.action[s].col(j)):
                    if v:
                        out[i] = out[i] + c * v
            return tuple(F.norm(x) for x in out)
        r = self._ech.reduce(sparse)
        out = [F.zero] * len(self.free)
        for k, v in r.items():
            out[self._pos[k]] = v
        return tuple(out)

    def lift_sparse(self, k: int) -> dict:
        return self._lifts[k]

    @property
    def q(self) -> ExactMatrix:
        if self._q is None:
            F = self.field
            cols = [self.coords({j: F.one}) for j in range(self.ambient)]
            self._q = (ExactMatrix.from_columns(F, cols, self.module.dim) if cols
                       else ExactMatrix.zeros(F, self.module.dim, 0))
        return self._q

    @property
    def lift(self) -> ExactMatrix:
        if self._lift is None:
            ent = {(j, k): c for k, l in enumerate(self._lifts) for j, c in l.items()}
            self._lift = ExactMatrix.from_sparse(self.field, self.ambient, self.module.dim, ent)
        return self._lift

    def pure(self, s: Sequence, x: Sequence) -> tuple:
        """Image of the pure tensor s (x) x."""
        m = self.base.dim
        sp = {a * m + j: c * y for a, c in enumerate(s) if c for j, y in enumerate(x) if y}
        return self.coords({k: self.field.norm(v) for k, v in sp.items()})


def extension(phi: AlgebraMorphism, M: Module) -> ScalarExtension:
    # keyed by content: equal modules share one extension object
    if M.algebra is not phi.source:
        raise AxiomError("module is not over the source of the morphism")
    cache = phi._cache.setdefault("ext", {})
    if phi.is_identity():
        # the extended module is M itself, so sharing would swap objects
        hit = cache.get(id(M))
        if hit is None or hit.base is not M:
            hit = cache[id(M)] = ScalarExtension(phi, M)
        return hit
    key = (M.dim, tuple(M.act(r) for r in phi.source.generators))
    hit = cache.get(key)
    if hit is None:
        hit = cache[key] = ScalarExtension(phi, M)
    return hit


def extend_scalars(phi: AlgebraMorphism, M: Module) -> Module:
    return extension(phi, M).module


def extend_hom(phi: AlgebraMorphism, f: ModuleHom) -> ModuleHom:
    """``1 (x) f`` between the extended modules."""
    if phi.is_identity():
        return f
    src, tgt = extension(phi, f.source), extension(phi, f.target)
    F = phi.target.field
    m, m2 = f.source.dim, f.target.dim
    fcols = [[(i, v) for i, v in enumerate(f.matrix.col(j)) if v] for j in range(m)]
    cols = []
    for k in range(src.module.dim):
        acc: dict = {}
        for idx, c in src.lift_sparse(k).items():
            a, j = divmod(idx, m)
            for i, v in fcols[j]:
                key = a * m2 + i
                acc[key] = acc.get(key, 0) + c * v
        cols.append(tgt.coords({key: F.norm(v) for key, v in acc.items()}))
    mat = (ExactMatrix.from_columns(F, cols, tgt.module.dim) if cols
           else ExactMatrix.zeros(F, tgt.module.dim, 0))
    return ModuleHom(src.module, tgt.module, mat, check=False)


def restrict_scalars(phi: AlgebraMorphism, N: Module) -> Module:
    if N.algebra is not phi.target:
        raise AxiomError("module is not over the target of the morphism")
    if phi.is_identity():
        return N
    cache = phi._cache.setdefault("res", {})
    hit = cache.get(id(N))
    if hit is None or hit[0] is not N:
        R = phi.source
        mats = [N.act(phi(R.basis_vector(i))) for i in range(R.dim)]
        hit = (N, Module(R, N.dim, mats, check=False, name=f"res {N.name}"))
        cache[id(N)] = hit
    return hit[1]


def restrict_hom(phi: AlgebraMorphism, f: ModuleHom) -> ModuleHom:
    return ModuleHom(restrict_scalars(phi, f.source), restrict_scalars(phi, f.target), f.matrix, check=False)


def adjunction_unit(phi: AlgebraMorphism, M: Module) -> ModuleHom:
    """m -> 1 (x) m, as a map M -> restrict(extend(M))."""
    ext = extension(phi, M)
    S = phi.target
    F = S.field
    cols = [ext.pure(S.unit, _unit_vec(F, M.dim, j)) for j in range(M.dim)]
    mat = ExactMatrix.from_columns(F, cols, ext.module.dim) if cols else ExactMatrix.zeros(F, ext.module.dim, 0)
    return ModuleHom(M, restrict_scalars(phi, ext.module), mat, check=False)


def _unit_vec(F: FieldSpec, n: int, j: int) -> tuple:
    z, o = F.zero, F.one
    return tuple(o if k == j else z for k in range(n))


def multiplication_map(N: Module) -> ExactMatrix:
    """s (x) n -> s n on the ambient space ``A (x)_k N``."""
    A = N.algebra
    cols = []
    for s in range(A.dim):
        act = N.action[s]
        for j in range(N.dim):
            cols.append(act.col(j))
    if not cols:
        return ExactMatrix.zeros(A.field, N.dim, 0)
    return ExactMatrix.from_columns(A.field, cols, N.dim)


def adjunction_counit(phi: AlgebraMorphism, N: Module) -> ModuleHom:
    """s (x) n -> s n, as a map extend(restrict(N)) -> N."""
    RN = restrict_scalars(phi, N)
    ext = extension(phi, RN)
    F = N.field
    n = N.dim
    cols = []
    for k in range(ext.module.dim):
        acc = [F.zero] * n
        for idx, c in ext.lift_sparse(k).items():
            s, j = divmod(idx, n)
            for i, v in enumerate(N.action[s].col(j)):
                if v:
                    acc[i] = acc[i] + c * v
        cols.append(tuple(F.norm(x) for x in acc))
    mat = ExactMatrix.from_columns(F, cols, n) if cols else ExactMatrix.zeros(F, n, 0)
    return ModuleHom(ext.module, N, mat, check=False)


# ---------------------------------------------------------------------------
# commutative structure: radical, idempotents, flatness, trace


def radical(A: Algebra) -> Subspace:
    """Jacobson radical of a commutative algebra."""
    if not A.commutative:
        raise AxiomError("radical is implemented for commutative algebras only")
    if "radical" in A._cache:
        return A._cache["radical"]
    F = A.field
    n = A.dim
    p = F.characteristic
    if p == 0:
        # Tr(L_{e_i e_j}) = sum_k (coefficient of e_k in e_i e_j) * Tr(L_{e_k})
        trL = [sum((A.table[k][l][l] for l in range(n)), F.zero) for k in range(n)]
        rows = []
        for j in range(n):
            row = []
            for i in range(n):
                prod = A.table[i][j]
                row.append(sum((c * trL[k] for k, c in enumerate(prod) if c), F.zero))
            rows.append(row)
        J = kernel_basis(ExactMatrix(F, n, n, rows))
    else:
        frob_cols = [A.power(A.basis_vector(j), p) for j in range(n)]
        Fr = ExactMatrix.from_columns(F, frob_cols, n)
        k = 1
        while p ** k < n:
            k += 1
        P = ExactMatrix.identity(F, n)
        for _ in range(k):
            P = Fr @ P
        J = kernel_basis(P)
    A._cache["radical"] = J
    return J


def _poly_to_sympy(coeffs):
    import sympy
    x = sympy.Symbol("x")
    return sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in map(Fraction, coeffs)])), x, domain="QQ"), x


def _sympy_to_coeffs(poly) -> list:
    return [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]


def primitive_idempotents(A: Algebra) -> list[tuple]:
    """Complete set of orthogonal primitive idempotents of a commutative algebra."""
    if not A.commutative:
        raise AxiomError("primitive idempotents are computed for commutative algebras only")
    if "idempotents" in A._cache:
        return A._cache["idempotents"]
    F = A.field
    n = A.dim
    J = radical(A)
    top = n - J.dim
    if F.characteristic:
        p = F.characteristic
        frob_cols = [A.power(A.basis_vector(j), p) for j in range(n)]
        Fr = ExactMatrix.from_columns(F, frob_cols, n)
        fixed = kernel_basis(Fr - ExactMatrix.identity(F, n))
        parts = [A.unit]
        for x in fixed.basis:
            new = []
            for e in parts:
                for lam in range(p):
                    shifted = A.sub(x, A.scale(lam, A.unit))
                    e_lam = A.sub(A.unit, A.power(shifted, p - 1))
                    piece = A.mul(e, e_lam)
                    if any(piece):
                        new.append(piece)
            parts = new
    else:
        import sympy
        rng = random.Random(0)
        a = None
        for attempt in range(200):
            bound = 1 + attempt // 10
            cand = tuple(F(rng.randint(-bound, bound)) for _ in range(n))
            mp = A.minimal_polynomial(cand)
            poly, x = _poly_to_sympy(mp)
            sqf = sympy.quo(poly, sympy.gcd(poly, poly.diff(x)))
            if sqf.degree() == top:
                a = cand
                break
        if a is None:
            raise RuntimeError("failed to find a primitive element modulo the radical")
        _, factors = poly.factor_list()
        powers = [f ** k for f, k in factors]
        parts = []
        for i, fk in enumerate(powers):
            rest = sympy.Poly(1, x, domain="QQ")
            for j, g in enumerate(powers):
                if j != i:
                    rest = rest * g
            s, t, h = sympy.gcdex(rest, fk)
            u = sympy.rem(s * rest, poly)
            parts.append(A.evaluate_polynomial(_sympy_to_coeffs(u), a))
    parts.sort(key=lambda e: [(-1 if c else 0) for c in e])
    A._cache["idempotents"] = parts
    return parts


@dataclass
class Verdict:
    """Boolean answer with an optional witness explaining a failure."""

    holds: bool
    witness: object = None
    detail: str = ""

    def __bool__(self):
        return self.holds


@dataclass
class LocalBlock:
    idempotent: tuple
    block_dim: int
    residue_dim: int
    fiber_dim: int
    fiber_mod_max_dim: int

    @property
    def flat(self) -> bool:
        return self.fiber_dim * self.residue_dim == self.block_dim * self.fiber_mod_max_dim

    @property
    def rank(self) -> Fraction:
        return Fraction(self.fiber_dim, self.block_dim)


@dataclass
class FlatnessReport:
    flat: bool
    faithfully_flat: bool
    blocks: list
    flat_witness: object = None
    faithful_witness: object = None
    free_rank: int | None = None


def _block_subspaces(A: Algebra, e: Sequence) -> tuple[Subspace, Subspace]:
    block = Subspace.span(A.field, A.dim, [A.mul(e, A.basis_vector(i)) for i in range(A.dim)])
    J = radical(A)
    maxl = Subspace.span(A.field, A.dim, [A.mul(e, v) for v in J.basis])
    return block, maxl


def residue_field_module(A: Algebra, e: Sequence) -> Module:
    """``A / ((1-e)A + eJ)``: the residue field of the local factor cut out by e."""
    F = A.field
    block, maxl = _block_subspaces(A, e)
    f = A.sub(A.unit, e)
    other = [A.mul(f, A.basis_vector(i)) for i in range(A.dim)]
    ideal = Subspace.span(F, A.dim, list(maxl.basis) + other)
    Q, _ = Module.regular(A).quotient(ideal)
    Q.name = "residue field"
    return Q


def flatness_report(phi: AlgebraMorphism) -> FlatnessReport:
    R, S = phi.source, phi.target
    if not R.commutative:
        raise AxiomError("flatness is decided over a commutative base only")
    if "flatness" in phi._cache:
        return phi._cache["flatness"]
    F = R.field
    blocks = []
    flat_witness = faithful_witness = None
    for e in primitive_idempotents(R):
        block, maxl = _block_subspaces(R, e)
        fe = phi(e)
        fiber = Subspace.span(F, S.dim, [S.mul(fe, S.basis_vector(i)) for i in range(S.dim)])
        mfiber = Subspace.span(F, S.dim, [S.mul(phi(j), v) for j in maxl.basis for v in fiber.basis])
        b = LocalBlock(e, block.dim, block.dim - maxl.dim, fiber.dim, fiber.dim - mfiber.dim)
        blocks.append(b)
        if not b.flat and flat_witness is None:
            ideal, inc = Module.regular(R).submodule(maxl)
            ext = extend_hom(phi, inc)
            flat_witness = {
                "ideal": ideal,
                "inclusion": inc,
                "extended_kernel_dim": ext.source.dim - ext.matrix.rank(),
            }
        if b.fiber_mod_max_dim == 0 and faithful_witness is None:
            faithful_witness = residue_field_module(R, e)
    flat = all(b.flat for b in blocks)
    faithful = flat and faithful_witness is None
    rank = None
    if flat:
        ranks = {b.rank for b in blocks}
        if len(ranks) == 1:
            (r,) = ranks
            if r.denominator == 1:
                rank = int(r)
    rep = FlatnessReport(flat, faithful, blocks, flat_witness, faithful_witness, rank)
    phi._cache["flatness"] = rep
    return rep


def is_flat(phi: AlgebraMorphism) -> Verdict:
    rep = flatness_report(phi)
    return Verdict(rep.flat, rep.flat_witness, "" if rep.flat else "Tor_1 with a residue field is nonzero")


def is_faithfully_flat(phi: AlgebraMorphism) -> Verdict:
    rep = flatness_report(phi)
    if not rep.flat:
        return Verdict(False, rep.flat_witness, "not flat")
    if rep.faithful_witness is not None:
        return Verdict(False, rep.faithful_witness, "extension kills a residue field")
    return Verdict(True)


def free_basis(phi: AlgebraMorphism) -> list[tuple] | None:
    """An R-basis of S when S is free over R, else None."""
    rep = flatness_report(phi)
    if not rep.flat or rep.free_rank is None:
        return None
    R, S = phi.source, phi.target
    F = R.field
    r = rep.free_rank
    total = [S.zero()] * r
    for b in rep.blocks:
        e = b.idempotent
        block, maxl = _block_subspaces(R, e)
        fe = phi(e)
        fiber = Subspace.span(F, S.dim, [S.mul(fe, S.basis_vector(i)) for i in range(S.dim)])
        W = Subspace.span(F, S.dim, [S.mul(phi(j), v) for j in maxl.basis for v in fiber.basis])
        chosen = []
        for v in fiber.basis:
            if len(chosen) == r:
                break
            if v not in W:
                chosen.append(v)
                W = W.sum(Subspace.span(F, S.dim, [S.mul(phi(x), v) for x in block.basis]))
        if len(chosen) != r:
            return None
        total = [S.add(t, c) for t, c in zip(total, chosen)]
    return total


def trace_map(phi: AlgebraMorphism) -> ModuleHom:
    """Trace of multiplication operators of S viewed as a free R-module."""
    basis = free_basis(phi)
    if basis is None:
        raise AxiomError("target is not a free module over the source; no trace is defined")
    R, S = phi.source, phi.target
    F = R.field
    cols = [S.mul(phi(R.basis_vector(b)), s) for s in basis for b in range(R.dim)]
    B = ExactMatrix.from_columns(F, cols, S.dim)
    Binv = B.inverse()
    tr_cols = []
    for t in range(S.dim):
        st = S.basis_vector(t)
        acc = [F.zero] * R.dim
        for j, s in enumerate(basis):
            coords = Binv.apply(S.mul(st, s))
            for b in range(R.dim):
                acc[b] = F.norm(acc[b] + coords[j * R.dim + b])
        tr_cols.append(tuple(acc))
    mat = ExactMatrix.from_columns(F, tr_cols, R.dim)
    return ModuleHom(restrict_scalars(phi, Module.regular(S)), Module.regular(R), mat, check=False)


# ---------------------------------------------------------------------------
# constructors


def field_algebra(F: FieldSpec) -> Algebra:
    cache = _FIELD_ALGEBRAS
    if F not in cache:
        cache[F] = Algebra(F, [[(F.one,)]], (F.one,), name=str(F), labels=["1"], check=False)
    return cache[F]


_FIELD_ALGEBRAS: dict = {}


def quotient_ring(F: FieldSpec, coeffs: Sequence, name: str = "") -> Algebra:
    """``k[x]/(f)`` for monic f with coefficients ``coeffs`` from low to high degree."""
    coeffs = [F(c) for c in coeffs]
    if len(coeffs) < 2 or coeffs[-1] != F.one:
        raise AxiomError("quotient_ring needs a monic polynomial of positive degree")
    d = len(coeffs) - 1
    # x^k reduced mod f for k < 2d - 1
    red = []
    for k in range(2 * d - 1):
        if k < d:
            v = [F.zero] * d
            v[k] = F.one
        else:
            prev = red[k - 1]
            v = [F.zero] + list(prev[:-1])
            top = prev[-1]
            v = [F.norm(v[i] - top * coeffs[i]) for i in range(d)]
        red.append(tuple(v))
    table = [[red[i + j] for j in range(d)] for i in range(d)]
    unit = red[0]
    labels = ["1"] + [f"x^{i}" if i > 1 else "x" for i in range(1, d)]
    return Algebra(F, table, unit, name=name or f"k[x]/({d})", labels=labels, check=False)


def product_algebra(algebras: Sequence[Algebra], name: str = "") -> tuple[Algebra, list[AlgebraMorphism]]:
    """Cartesian product with its projections."""
    F = algebras[0].field
    n = sum(A.dim for A in algebras)
    offs = list(itertools.accumulate([0] + [A.dim for A in algebras]))
    z = F.zero
    table = [[(z,) * n for _ in range(n)] for _ in range(n)]
    unit = []
    labels = []
    for t, A in enumerate(algebras):
        o = offs[t]
        for i in range(A.dim):
            for j in range(A.dim):
                table[o + i][o + j] = (z,) * o + A.table[i][j] + (z,) * (n - o - A.dim)
        unit.extend(A.unit)
        labels.extend(f"{l}@{t}" for l in A.labels)
    P = Algebra(F, table, unit, name=name or "x".join(A.name for A in algebras), labels=labels, check=False)
    projs = []
    for t, A in enumerate(algebras):
        o = offs[t]
        ent = {(i, o + i): F.one for i in range(A.dim)}
        projs.append(AlgebraMorphism(P, A, ExactMatrix.from_sparse(F, A.dim, n, ent), check=False))
    return P, projs


def function_algebra(F: FieldSpec, points: int | Sequence[str], name: str = "") -> Algebra:
    """Functions on a finite set: the basis is the point indicators."""
    labels = [f"d{i}" for i in range(points)] if isinstance(points, int) else [f"d[{p}]" for p in points]
    n = len(labels)
    z, o = F.zero, F.one
    table = [[tuple(o if (i == j == k) else z for k in range(n)) for j in range(n)] for i in range(n)]
    return Algebra(F, table, (o,) * n, name=name or f"Fun({n})", labels=labels, check=False)


class FiniteGroup:
    """Finite group from a multiplication table on ``range(order)``."""

    def __init__(self, table: Sequence[Sequence[int]], name: str = "", labels: Sequence[str] | None = None):
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.order = len(self.table)
        self.name = name or f"G{self.order}"
        self.labels = tuple(labels) if labels else tuple(str(i) for i in range(self.order))
        self.validate()
        n = self.order
        self.identity = next(e for e in range(n) if all(self.table[e][g] == g for g in range(n)))
        self.inverses = tuple(next(h for h in range(n) if self.table[g][h] == self.identity) for g in range(n))

    def validate(self):
        n = self.order
        if n < 1 or any(len(r) != n for r in self.table):
            raise AxiomError("group table must be square and nonempty")
        if any(not 0 <= x < n for r in self.table for x in r):
            raise AxiomError("group table entries out of range")
        for a, b, c in itertools.product(range(n), repeat=3):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                raise AxiomError(f"group table is not associative on {(a, b, c)}")
        ids = [e for e in range(n) if all(self.table[e][g] == g == self.table[g][e] for g in range(n))]
        if not ids:
            raise AxiomError("group table has no identity")
        e = ids[0]
        for g in range(n):
            if not any(self.table[g][h] == e for h in range(n)):
                raise AxiomError(f"element {g} has no inverse")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        return cls([[(a + b) % n for b in range(n)] for a in range(n)], name=f"Z/{n}")

    @classmethod
    def symmetric3(cls) -> "FiniteGroup":
        perms = list(itertools.permutations(range(3)))
        idx = {p: i for i, p in enumerate(perms)}
        table = [[idx[tuple(p[q[k]] for k in range(3))] for q in perms] for p in perms]
        return cls(table, name="S3", labels=["".join(map(str, p)) for p in perms])

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls([[0]], name="1")


class GroupAction:
    """Left action of a finite group on ``range(points)``: ``act[g][x] = g.x``."""

    def __init__(self, group: FiniteGroup, act: Sequence[Sequence[int]], name: str = ""):
        self.group = group
        self.act = tuple(tuple(int(x) for x in row) for row in act)
        self.points = len(self.act[0]) if self.act else 0
        self.name = name or f"{group.name} action"
        self.validate()

    def validate(self):
        G = self.group
        if len(self.act) != G.order or any(len(r) != self.points for r in self.act):
            raise AxiomError("action table has the wrong shape")
        for x in range(self.points):
            if self.act[G.identity][x] != x:
                raise AxiomError(f"identity does not fix point {x}")
        for g, h in itertools.product(range(G.order), repeat=2):
            for x in range(self.points):
                if self.act[G.mul(g, h)][x] != self.act[g][self.act[h][x]]:
                    raise AxiomError(f"action is not compatible with the product at {(g, h, x)}")

    def __call__(self, g: int, x: int) -> int:
        return self.act[g][x]

    @classmethod
    def trivial(cls, group: FiniteGroup, points: int = 1) -> "GroupAction":
        return cls(group, [[x for x in range(points)] for _ in range(group.order)], name="trivial")

    @classmethod
    def regular(cls, group: FiniteGroup) -> "GroupAction":
        return cls(group, [[group.mul(g, x) for x in range(group.order)] for g in range(group.order)], name="regular")

    def orbits(self) -> list[list[int]]:
        seen, out = set(), []
        for x in range(self.points):
            if x in seen:
                continue
            orb = sorted({self.act[g][x] for g in range(self.group.order)})
            seen.update(orb)
            out.append(orb)
        return out


def group_algebra(G: FiniteGroup, F: FieldSpec) -> Algebra:
    n = G.order
    z, o = F.zero, F.one
    table = [[tuple(o if k == G.mul(a, b) else z for k in range(n)) for b in range(n)] for a in range(n)]
    unit = tuple(o if k == G.identity else z for k in range(n))
    return Algebra(F, table, unit, name=f"{F}[{G.name}]", labels=[f"u{l}" for l in G.labels], check=False)


def function_algebra_on(action: GroupAction, k: int, F: FieldSpec) -> tuple[Algebra, list[tuple]]:
    """Functions on ``G^k x X``; also returns the point list ``(g_{k+1}, .., g_2, x)``."""
    G = action.group
    pts = [tuple(p) + (x,) for p in itertools.product(range(G.order), repeat=k) for x in range(action.points)]
    labels = [",".join(G.labels[g] for g in p[:-1]) + ("," if k else "") + str(p[-1]) for p in pts]
    A = function_algebra(F, labels, name=f"Fun({G.name}^{k} x X)")
    return A, pts


def groupoid_algebra(action: GroupAction, F: FieldSpec) -> Algebra:
    """Action groupoid algebra: basis ``e_x u_g`` with ``(e_x u_g)(e_y u_h) = [x = g y] e_x u_{gh}``."""
    G = action.group
    X = action.points
    idx = {(x, g): x * G.order + g for x in range(X) for g in range(G.order)}
    n = len(idx)
    z, o = F.zero, F.one
    table = [[None] * n for _ in range(n)]
    for (x, g), i in idx.items():
        for (y, h), j in idx.items():
            if x == action(g, y):
                k = idx[(x, G.mul(g, h))]
                table[i][j] = tuple(o if t == k else z for t in range(n))
            else:
                table[i][j] = (z,) * n
    unit = [z] * n
    for x in range(X):
        unit[idx[(x, G.identity)]] = o
    labels = [f"e{x}u{G.labels[g]}" for (x, g) in idx]
    A = Algebra(F, table, unit, name=f"Fun(X)#{F}[{G.name}]", labels=labels, check=False)
    # semisimple iff no stabilizer order is divisible by the characteristic
    p = F.characteristic
    stabilizers = [sum(1 for g in range(G.order) if action(g, x) == x) for x in range(X)]
    A._cache["semisimple"] = not p or all(s % p for s in stabilizers)
    return A


class TensorProduct:
    """``S_1 (x)_R ... (x)_R S_n`` as a quotient of the tensor product over k.

    Ambient index of the pure tensor ``(b_1, .., b_n)`` is mixed radix with the
    first factor most significant.  Quotient basis vectors are images of pure
    basis tensors (the non-pivot ambient coordinates).
    """

    def __init__(self, maps: Sequence[AlgebraMorphism]):
        maps = list(maps)
        if not maps:
            raise ValueError("need at least one factor")
        R = maps[0].source
        if any(m.source is not R for m in maps):
            raise AxiomError("all factors must be algebras over the same base")
        if not R.commutative:
            raise AxiomError("tensor products over a non-commutative base are not supported")
        self.base = R
        self.maps = maps
        self.factors = [m.target for m in maps]
        F = R.field
        self.field = F
        self.dims = [S.dim for S in self.factors]
        self.ambient = 1
        for d in self.dims:
            self.ambient *= d
        nf = len(maps)
        ech = Echelon(F, self.ambient)
        gens = R.generators
        if nf > 1 and gens:
            for multi in itertools.product(*[range(d) for d in self.dims]):
                for r in gens:
                    for i in range(nf - 1):
                        a = self._slot_product(multi, i, maps[i](r))
                        b = self._slot_product(multi, i + 1, maps[i + 1](r))
                        row = dict(a)
                        for k, v in b.items():
                            nv = F.norm(row.get(k, 0) - v)
                            if nv:
                                row[k] = nv
                            else:
                                row.pop(k, None)
                        if row:
                            ech.add(row)
        self._ech = ech
        self.free = [j for j in range(self.ambient) if j not in ech.pivots]
        self.pos = {j: i for i, j in enumerate(self.free)}
        dim = len(self.free)
        self.dim = dim
        # structure constants of the quotient
        table = []
        for i in self.free:
            mi = self.multi_index(i)
            row = []
            for j in self.free:
                mj = self.multi_index(j)
                vec = self._pure_product([self.factors[t].table[mi[t]][mj[t]] for t in range(nf)])
                row.append(self.q(vec))
            table.append(row)
        unit = self.q(self._pure_product([S.unit for S in self.factors]))
        labels = ["(x)".join(self.factors[t].labels[m] for t, m in enumerate(self.multi_index(j))) for j in self.free]
        self.algebra = Algebra(F, table, unit, name="(x)".join(S.name for S in self.factors), labels=labels, check=False)
        self.insertions = []
        for t, S in enumerate(self.factors):
            cols = []
            for b in range(S.dim):
                vecs = [S.unit] * nf
                vecs[t] = S.basis_vector(b)
                cols.append(self.q(self._pure_product(vecs)))
            self.insertions.append(AlgebraMorphism(S, self.algebra, ExactMatrix.from_columns(F, cols, dim), check=False))
        cols = [self.insertions[0](maps[0](R.basis_vector(i))) for i in range(R.dim)]
        self.structure = AlgebraMorphism(R, self.algebra, ExactMatrix.from_columns(F, cols, dim), check=False)

    def multi_index(self, j: int) -> tuple:
        out = []
        for d in reversed(self.dims):
            out.append(j % d)
            j //= d
        return tuple(reversed(out))

    def ambient_index(self, multi: Sequence[int]) -> int:
        j = 0
        for m, d in zip(multi, self.dims):
            j = j * d + m
        return j

    def _slot_product(self, multi, slot, vec) -> dict:
        S = self.factors[slot]
        prod = S.mul(S.basis_vector(multi[slot]), vec)
        out = {}
        for k, c in enumerate(prod):
            if c:
                m = list(multi)
                m[slot] = k
                out[self.ambient_index(m)] = c
        return out

    def _pure_product(self, vecs: Sequence[Sequence]) -> dict:
        """Sparse ambient vector of v_1 (x) ... (x) v_n."""
        F = self.field
        acc = {0: F.one}
        for v, d in zip(vecs, self.dims):
            nxt = {}
            for j, c in acc.items():
                for k, x in enumerate(v):
                    if x:
                        nxt[j * d + k] = F.norm(c * x)
            acc = nxt
        return acc

    def q(self, sparse: dict) -> tuple:
        """Image in the quotient algebra of a sparse ambient vector."""
        F = self.field
        r = self._ech.reduce(sparse)
        out = [F.zero] * self.dim
        for k, v in r.items():
            out[self.pos[k]] = v
        return tuple(out)

    def pure(self, vecs: Sequence[Sequence]) -> tuple:
        return self.q(self._pure_product(vecs))


def tensor_product_over(maps: Sequence[AlgebraMorphism]) -> TensorProduct:
    return TensorProduct(maps)


def tensor_power_over(phi: AlgebraMorphism, n: int) -> TensorProduct:
    """``S^{(x)_R n}`` with its n insertion maps."""
    if n < 1:
        raise ValueError("tensor power needs n >= 1")
    return TensorProduct([phi] * n)
