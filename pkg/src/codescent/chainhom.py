"""Bounded cochain complexes of modules and their homotopy category.

Conventions: differentials raise degree, ``d^i: C^i -> C^{i+1}``.  The shift
is ``C[n]^i = C^{i+n}`` with differential ``(-1)^n d``, so a module placed in
degree 0 sits in degree ``-n`` after shifting by n.  The cone of
``f: C -> D`` is ``C^{i+1} (+) D^i`` with differential
``[[-d_C, 0], [f, d_D]]``.  A free resolution lives in degrees ``-L .. 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable, Sequence

from .algmod import (
    Algebra,
    AxiomError,
    Module,
    ModuleHom,
    Verdict,
    direct_sum,
    hom_space,
    primitive_idempotents,
    radical,
    residue_field_module,
)
from .comonad import ExtensionAdjunction, split_unit_check
from .cosimp import (
    CosimplicialAlgebra,
    E1,
    I1,
    I2,
    P12,
    P13,
    P23,
    canonical_comparison,
    constant,
)
from .exactlin import ExactMatrix, Subspace, kernel_basis, linear_feasible

__all__ = [
    "BoundedComplex",
    "ChainMap",
    "HomK",
    "shift",
    "cone",
    "complex_sum",
    "hom_homotopy",
    "null_homotopy",
    "is_semisimple",
    "Resolution",
    "free_resolution",
    "ext",
    "DerivedDescentObject",
    "ComplexComparison",
    "amitsur_comparison",
    "equivariant_comparison",
    "check_derived_descent",
    "derived_descent_hom_dim",
    "DerivedReport",
    "derived_descent_check",
    "sample_complexes",
    "cone_descent",
]


class BoundedComplex:
    """Modules ``C^i`` for i in ``[lo, hi]`` with differentials ``d^i: C^i -> C^{i+1}``."""

    def __init__(self, algebra: Algebra, modules: dict, diffs: dict | None = None, check: bool = True):
        self.algebra = algebra
        self._zero = Module.zero(algebra)
        self.modules = {i: M for i, M in modules.items()}
        if not self.modules:
            self.modules = {0: self._zero}
        self.lo, self.hi = min(self.modules), max(self.modules)
        for i in range(self.lo, self.hi + 1):
            self.modules.setdefault(i, self._zero)
        self.diffs = {}
        for i in range(self.lo, self.hi):
            d = (diffs or {}).get(i)
            if d is None:
                d = self.modules[i].zero_map(self.modules[i + 1])
            self.diffs[i] = d
        if check:
            self.validate()

    def __repr__(self):
        dims = [self.module(i).dim for i in self.degrees()]
        return f"BoundedComplex(degrees {self.lo}..{self.hi}, dims {dims})"

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def module(self, i: int) -> Module:
        return self.modules.get(i, self._zero)

    def d(self, i: int) -> ModuleHom:
        if i in self.diffs:
            return self.diffs[i]
        return self.module(i).zero_map(self.module(i + 1))

    @property
    def field(self):
        return self.algebra.field

    def total_dim(self) -> int:
        return sum(M.dim for M in self.modules.values())

    def validate(self):
        for i in range(self.lo, self.hi):
            d = self.diffs[i]
            if d.source.dim != self.modules[i].dim or d.target.dim != self.modules[i + 1].dim:
                raise AxiomError(f"differential in degree {i} has the wrong shape")
            if not d.is_valid():
                raise AxiomError(f"differential in degree {i} is not a module map")
        for i in range(self.lo, self.hi - 1):
            if not (self.diffs[i + 1] @ self.diffs[i]).is_zero():
                raise AxiomError(f"d^{i + 1} d^{i} is not zero")

    @classmethod
    def single(cls, M: Module, degree: int = 0) -> "BoundedComplex":
        return cls(M.algebra, {degree: M})

    @classmethod
    def two_term(cls, d: ModuleHom, degree: int = 0) -> "BoundedComplex":
        """``source -> target`` with the source in the given degree."""
        return cls(d.source.algebra, {degree: d.source, degree + 1: d.target}, {degree: d})

    def cohomology_dims(self) -> dict:
        out = {}
        for i in self.degrees():
            M = self.module(i)
            k = M.dim - self.d(i).matrix.rank() if M.dim else 0
            im = self.d(i - 1).matrix.rank() if self.module(i - 1).dim and M.dim else 0
            out[i] = k - im
        return out

    def is_single(self) -> int | None:
        """The degree of the only nonzero term, if there is exactly one."""
        nz = [i for i in self.degrees() if self.module(i).dim]
        return nz[0] if len(nz) == 1 else None

    def identity(self) -> "ChainMap":
        return ChainMap(self, self, {i: self.module(i).identity() for i in self.degrees()}, check=False)

    def map_modules(self, algebra: Algebra, on_module: Callable[[Module], Module],
                    on_hom: Callable[[ModuleHom], ModuleHom]) -> "BoundedComplex":
        mods = {i: on_module(self.module(i)) for i in self.degrees()}
        diffs = {}
        for i in range(self.lo, self.hi):
            u = on_hom(self.d(i))
            diffs[i] = ModuleHom(mods[i], mods[i + 1], u.matrix, check=False)
        return BoundedComplex(algebra, mods, diffs, check=False)


class ChainMap:
    """Degreewise module maps commuting with the differentials."""

    def __init__(self, source: BoundedComplex, target: BoundedComplex, maps: dict, check: bool = True):
        self.source = source
        self.target = target
        self.maps = {}
        for i in range(min(source.lo, target.lo), max(source.hi, target.hi) + 1):
            u = maps.get(i)
            S, T = source.module(i), target.module(i)
            if u is None:
                u = S.zero_map(T)
            elif u.source is not S or u.target is not T:
                u = ModuleHom(S, T, u.matrix, check=False)
            self.maps[i] = u
        if check:
            self.validate()

    def __repr__(self):
        return f"ChainMap({self.source!r} -> {self.target!r})"

    def component(self, i: int) -> ModuleHom:
        if i in self.maps:
            return self.maps[i]
        return self.source.module(i).zero_map(self.target.module(i))

    def degrees(self):
        return sorted(self.maps)

    def validate(self):
        for i in self.degrees():
            if not self.maps[i].is_valid():
                raise AxiomError(f"component {i} is not a module map")
            lhs = self.target.d(i) @ self.component(i)
            rhs = self.component(i + 1) @ self.source.d(i)
            if lhs.matrix != rhs.matrix:
                raise AxiomError(f"chain map square fails in degree {i}")

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        degs = set(self.degrees()) | set(other.degrees())
        return ChainMap(other.source, self.target,
                        {i: self.component(i) @ other.component(i) for i in degs}, check=False)

    def __add__(self, other):
        return ChainMap(self.source, self.target,
                        {i: self.component(i) + other.component(i) for i in self.degrees()}, check=False)

    def __sub__(self, other):
        return ChainMap(self.source, self.target,
                        {i: self.component(i) - other.component(i) for i in self.degrees()}, check=False)

    def scale(self, c) -> "ChainMap":
        return ChainMap(self.source, self.target, {i: u.scale(c) for i, u in self.maps.items()}, check=False)

    def is_zero(self) -> bool:
        return all(u.is_zero() for u in self.maps.values())

    def is_strict_iso(self) -> bool:
        return all(u.is_iso() for u in self.maps.values())

    def flatten(self, layout: "_Layout") -> tuple:
        return layout.flatten({i: self.component(i).matrix for i in layout.degrees})


@dataclass
class _Layout:
    """Flattening of degreewise maps C^i -> D^{i+shift} into one coordinate vector."""

    source: BoundedComplex
    target: BoundedComplex
    degrees: list
    offsets: dict
    size: int
    shift: int = 0

    @classmethod
    def build(cls, C: BoundedComplex, D: BoundedComplex, shift: int = 0) -> "_Layout":
        degs = [i for i in C.degrees() if C.module(i).dim and D.module(i + shift).dim]
        offsets, off = {}, 0
        for i in degs:
            offsets[i] = off
            off += C.module(i).dim * D.module(i + shift).dim
        return cls(C, D, degs, offsets, off, shift)

    def flatten(self, mats: dict) -> tuple:
        F = self.source.field
        out = [F.zero] * self.size
        for i in self.degrees:
            m = mats.get(i)
            if m is None:
                continue
            off = self.offsets[i]
            for k, v in enumerate(m.entries_flat()):
                out[off + k] = v
        return tuple(out)


@dataclass
class HomK:
    """Chain maps C -> D modulo null-homotopic ones."""

    source: BoundedComplex
    target: BoundedComplex
    chain_basis: list
    null: Subspace
    layout: _Layout

    @property
    def dim(self) -> int:
        return len(self.chain_basis) - self.null.dim

    @property
    def chain_dim(self) -> int:
        return len(self.chain_basis)

    def representatives(self) -> list[ChainMap]:
        """Chain maps whose classes form a basis of the quotient."""
        reps = []
        span = self.null
        for f in self.chain_basis:
            v = f.flatten(self.layout)
            if v not in span:
                reps.append(f)
                span = span.sum(Subspace.span(self.source.field, self.layout.size, [v]))
        return reps

    def is_null(self, f: ChainMap) -> bool:
        return f.flatten(self.layout) in self.null


def _hom_bases(C: BoundedComplex, D: BoundedComplex, shift: int) -> dict:
    return {i: hom_space(C.module(i), D.module(i + shift)).basis
            for i in C.degrees() if C.module(i).dim and D.module(i + shift).dim}


def _chain_map_basis(C: BoundedComplex, D: BoundedComplex) -> list[ChainMap]:
    F = C.field
    bases = _hom_bases(C, D, 0)
    unknowns = [(i, b) for i, bs in bases.items() for b in bs]
    if not unknowns:
        return []
    # constraint in degree i: d_D^i f^i - f^{i+1} d_C^i = 0
    cons_degs = sorted({i for i, _ in unknowns} | {i - 1 for i, _ in unknowns})
    cols = []
    for i, b in unknowns:
        col = []
        for j in cons_degs:
            shape = (D.module(j + 1).dim, C.module(j).dim)
            if j == i:
                m = D.d(i).matrix @ b.matrix
            elif j == i - 1:
                m = -(b.matrix @ C.d(j).matrix)
            else:
                m = ExactMatrix.zeros(F, *shape)
            col.extend(m.entries_flat())
        cols.append(tuple(col))
    if not cols[0]:
        sols = [tuple(F.one if k == j else F.zero for k in range(len(unknowns))) for j in range(len(unknowns))]
    else:
        sols = kernel_basis(ExactMatrix.from_columns(F, cols, len(cols[0]))).basis
    out = []
    for sol in sols:
        maps: dict = {}
        for c, (i, b) in zip(sol, unknowns):
            if c:
                maps[i] = maps[i] + b.scale(c) if i in maps else b.scale(c)
        out.append(ChainMap(C, D, maps, check=False))
    return out


def _homotopy_images(C: BoundedComplex, D: BoundedComplex, layout: _Layout) -> tuple[list, list]:
    """Flattened ``d s + s d`` for a basis of degree -1 maps s, and the s themselves."""
    bases = _hom_bases(C, D, -1)
    images, unknowns = [], []
    for i, bs in bases.items():
        for s in bs:
            # s: C^i -> D^{i-1} contributes d_D^{i-1} s to degree i and s d_C^{i-1} to degree i-1
            mats = {i: D.d(i - 1).matrix @ s.matrix, i - 1: s.matrix @ C.d(i - 1).matrix}
            images.append(layout.flatten(mats))
            unknowns.append((i, s))
    return images, unknowns


def hom_homotopy(C: BoundedComplex, D: BoundedComplex) -> HomK:
    if C.algebra is not D.algebra:
        raise AxiomError("complexes over different algebras")
    layout = _Layout.build(C, D)
    chain = _chain_map_basis(C, D)
    images, _ = _homotopy_images(C, D, layout)
    null = Subspace.span(C.field, layout.size, images)
    return HomK(C, D, chain, null, layout)


def null_homotopy(f: ChainMap) -> dict | None:
    """Degree -1 maps s with ``d s + s d = f``, or None when f is not null-homotopic."""
    C, D = f.source, f.target
    layout = _Layout.build(C, D)
    images, unknowns = _homotopy_images(C, D, layout)
    target = f.flatten(layout)
    if not images:
        return {} if all(not x for x in target) else None
    rows = [({k: img[r] for k, img in enumerate(images) if img[r]}, target[r]) for r in range(layout.size)]
    sol = linear_feasible(rows, len(images), C.field)
    if sol is None:
        return None
    s: dict = {}
    for c, (i, b) in zip(sol, unknowns):
        if c:
            s[i] = s[i] + b.scale(c) if i in s else b.scale(c)
    return s


def shift(C: BoundedComplex, n: int) -> BoundedComplex:
    sign = C.field(-1) if n % 2 else C.field(1)
    mods = {i - n: C.module(i) for i in C.degrees()}
    diffs = {i - n: C.d(i).scale(sign) for i in range(C.lo, C.hi)}
    return BoundedComplex(C.algebra, mods, diffs, check=False)


def shift_map(f: ChainMap, n: int, source: BoundedComplex | None = None,
              target: BoundedComplex | None = None) -> ChainMap:
    src = source or shift(f.source, n)
    tgt = target or shift(f.target, n)
    return ChainMap(src, tgt, {i - n: u for i, u in f.maps.items()}, check=False)


def _sum_matrix(F, blocks: list[list[ExactMatrix]], rows: list[int], cols: list[int]) -> ExactMatrix:
    return ExactMatrix.vstack(F, [ExactMatrix.hstack(F, row, r) for row, r in zip(blocks, rows)], sum(cols))


def cone(f: ChainMap) -> BoundedComplex:
    C, D = f.source, f.target
    F = C.field
    lo, hi = min(C.lo - 1, D.lo), max(C.hi - 1, D.hi)
    sums = {}
    for i in range(lo, hi + 1):
        sums[i] = direct_sum([C.module(i + 1), D.module(i)])
    diffs = {}
    for i in range(lo, hi):
        a, b = C.module(i + 1), D.module(i)
        a2, b2 = C.module(i + 2), D.module(i + 1)
        top = [(-C.d(i + 1)).matrix, ExactMatrix.zeros(F, a2.dim, b.dim)]
        bottom = [f.component(i + 1).matrix, D.d(i).matrix]
        mat = _sum_matrix(F, [top, bottom], [a2.dim, b2.dim], [a.dim, b.dim])
        diffs[i] = ModuleHom(sums[i][0], sums[i + 1][0], mat, check=False)
    return BoundedComplex(C.algebra, {i: s[0] for i, s in sums.items()}, diffs)


def complex_sum(C: BoundedComplex, D: BoundedComplex) -> BoundedComplex:
    F = C.field
    lo, hi = min(C.lo, D.lo), max(C.hi, D.hi)
    sums = {i: direct_sum([C.module(i), D.module(i)])[0] for i in range(lo, hi + 1)}
    diffs = {i: ModuleHom(sums[i], sums[i + 1], ExactMatrix.block_diag(F, [C.d(i).matrix, D.d(i).matrix]),
                          check=False) for i in range(lo, hi)}
    return BoundedComplex(C.algebra, sums, diffs)


# ---------------------------------------------------------------------------
# resolutions and Ext


def is_semisimple(A: Algebra) -> bool:
    hint = A._cache.get("semisimple")
    if hint is not None:
        return hint
    if A.commutative:
        result = radical(A).dim == 0
    elif A.field.characteristic == 0:
        # the trace form of the regular representation is nondegenerate iff semisimple
        n = A.dim

        def trace(a):
            m = A.left_matrix(a)
            return sum((m[k, k] for k in range(n)), A.field.zero)

        form = ExactMatrix.from_rows(A.field, [[trace(A.mul(A.basis_vector(i), A.basis_vector(j)))
                                                for j in range(n)] for i in range(n)], n)
        result = form.is_invertible()
    else:
        raise AxiomError("semisimplicity test needs a hint for non-commutative algebras in positive characteristic")
    A._cache["semisimple"] = result
    return result


@dataclass
class Resolution:
    module: Module
    complex: BoundedComplex  # degrees -length .. 0
    augmentation: ModuleHom  # P^0 -> module
    ranks: list = dc_field(default_factory=list)


def _generators(M: Module, strategy: str) -> list[tuple]:
    F = M.field
    basis = [tuple(F.one if k == j else F.zero for k in range(M.dim)) for j in range(M.dim)]
    if strategy == "basis":
        return basis
    if strategy != "minimal":
        raise ValueError(f"unknown resolution strategy {strategy!r}")
    chosen, span = [], Subspace.zero(F, M.dim)
    for v in basis:
        if v not in span:
            chosen.append(v)
            span = M.span_of(chosen)
            if span.dim == M.dim:
                break
    return chosen


def _cover(M: Module, strategy: str) -> ModuleHom:
    """Free module on chosen generators mapping onto M."""
    A = M.algebra
    F = A.field
    gens = _generators(M, strategy)
    P = Module.free(A, len(gens))
    cols = [M.action[b].apply(m) for m in gens for b in range(A.dim)]
    mat = ExactMatrix.from_columns(F, cols, M.dim) if cols else ExactMatrix.zeros(F, M.dim, 0)
    return ModuleHom(P, M, mat, check=False)


def free_resolution(M: Module, length: int, strategy: str = "minimal") -> Resolution:
    """Free modules ``P^{-length} -> .. -> P^0 -> M`` built by covering kernels.

    ``strategy`` is "minimal" (greedy generators) or "basis" (every basis
    vector is a generator); the two give different resolutions of M.
    """
    A = M.algebra
    covers = [_cover(M, strategy)]
    incls = []
    for _ in range(length):
        K, inc = covers[-1].kernel()
        incls.append(inc)
        covers.append(_cover(K, strategy))
    mods = {-k: c.source for k, c in enumerate(covers)}
    diffs = {}
    for k in range(1, len(covers)):
        d = incls[k - 1] @ covers[k]
        diffs[-k] = ModuleHom(covers[k].source, covers[k - 1].source, d.matrix, check=False)
    cx = BoundedComplex(A, mods, diffs)
    return Resolution(M, cx, covers[0], [c.source.dim // max(A.dim, 1) for c in covers])


def ext(M: Module, N: Module, i: int, strategy: str = "minimal") -> int:
    """``dim Ext^i(M, N)`` from the Hom complex of a free resolution of M."""
    if i < 0:
        return 0
    res = free_resolution(M, i + 1, strategy)
    P = res.complex
    F = M.field
    spaces = {k: hom_space(P.module(-k), N) for k in range(0, i + 2)}

    def delta_rank(k: int) -> int:
        # Hom(P^{-k}, N) -> Hom(P^{-k-1}, N), g -> g . d
        src, tgt = spaces[k], spaces[k + 1]
        if not src.dim or not tgt.dim:
            return 0
        d = P.d(-k - 1)
        cols = [tgt.coordinates(g.matrix @ d.matrix) for g in src.basis]
        return ExactMatrix.from_columns(F, cols, tgt.dim).rank()

    kernel = spaces[i].dim - delta_rank(i)
    image = delta_rank(i - 1) if i >= 1 else 0
    return kernel - image


# ---------------------------------------------------------------------------
# derived descent


def pull_complex(tcc: CosimplicialAlgebra, f, C: BoundedComplex) -> BoundedComplex:
    return C.map_modules(tcc.algebra(f.target), lambda M: tcc.pull(f, M), lambda u: tcc.pull_hom(f, u))


def _pull_chain(tcc: CosimplicialAlgebra, f, u: ChainMap, source: BoundedComplex,
                target: BoundedComplex) -> ChainMap:
    return ChainMap(source, target, {i: tcc.pull_hom(f, c) for i, c in u.maps.items()}, check=False)


@dataclass
class DerivedDescentObject:
    """A complex F over level 0 with a chain map ``theta: P_1^* F -> P_2^* F``."""

    tcc: CosimplicialAlgebra
    F: BoundedComplex
    theta: ChainMap

    def pulled(self, f) -> BoundedComplex:
        return pull_complex(self.tcc, f, self.F)


def _transport_chain(tcc, f, obj: DerivedDescentObject, source: BoundedComplex,
                     target: BoundedComplex) -> ChainMap:
    comps = {}
    for i in obj.F.degrees():
        comps[i] = tcc.transport(f, obj.theta.component(i), I1, I2, obj.F.module(i))
    return ChainMap(source, target, comps, check=False)


def _homotopy_inverse_exists(theta: ChainMap) -> bool:
    if theta.is_strict_iso():
        return True
    back = hom_homotopy(theta.target, theta.source)
    there = hom_homotopy(theta.source, theta.source)
    here = hom_homotopy(theta.target, theta.target)
    # psi . theta - 1 and theta . psi - 1 both null-homotopic
    unknown_psi = len(back.chain_basis)
    cols_a = [(p @ theta).flatten(there.layout) for p in back.chain_basis]
    cols_b = [(theta @ p).flatten(here.layout) for p in back.chain_basis]
    na, nb = there.null.basis, here.null.basis
    n_unknowns = unknown_psi + len(na) + len(nb)
    rows = []
    ida = theta.source.identity().flatten(there.layout)
    idb = theta.target.identity().flatten(here.layout)
    for r in range(there.layout.size):
        row = {k: c[r] for k, c in enumerate(cols_a) if c[r]}
        row.update({unknown_psi + k: -v[r] for k, v in enumerate(na) if v[r]})
        rows.append((row, ida[r]))
    for r in range(here.layout.size):
        row = {k: c[r] for k, c in enumerate(cols_b) if c[r]}
        row.update({unknown_psi + len(na) + k: -v[r] for k, v in enumerate(nb) if v[r]})
        rows.append((row, idb[r]))
    return linear_feasible(rows, n_unknowns, theta.source.field) is not None


def check_derived_descent(obj: DerivedDescentObject) -> Verdict:
    """theta invertible up to homotopy and the cocycle holding up to homotopy."""
    tcc = obj.tcc
    try:
        obj.theta.validate()
    except AxiomError as exc:
        return Verdict(False, "theta", f"theta is not a chain map: {exc}")
    if not _homotopy_inverse_exists(obj.theta):
        return Verdict(False, "theta", "theta is not invertible up to homotopy")
    start, mid, end = (pull_complex(tcc, constant(3, j), obj.F) for j in (1, 2, 3))
    t12 = _transport_chain(tcc, P12, obj, start, mid)
    t23 = _transport_chain(tcc, P23, obj, mid, end)
    t13 = _transport_chain(tcc, P13, obj, start, end)
    diff = (t23 @ t12) - t13
    if diff.is_zero() or null_homotopy(diff) is not None:
        return Verdict(True)
    return Verdict(False, ("p12", "p23", "p13"), "cocycle fails up to homotopy")


def derived_descent_hom_dim(obj1: DerivedDescentObject, obj2: DerivedDescentObject) -> int:
    """Homotopy classes f with ``P_2^* f . theta_1 ~ theta_2 . P_1^* f``."""
    tcc = obj1.tcc
    C, D = obj1.F, obj2.F
    base = hom_homotopy(C, D)
    if not base.chain_basis:
        return 0
    P1C, P2C = obj1.theta.source, obj1.theta.target
    P1D, P2D = obj2.theta.source, obj2.theta.target
    upstairs = hom_homotopy(P1C, P2D)
    images = []
    for f in base.chain_basis:
        p2f = _pull_chain(tcc, I2, f, P2C, P2D)
        p1f = _pull_chain(tcc, I1, f, P1C, P1D)
        images.append(((p2f @ obj1.theta) - (obj2.theta @ p1f)).flatten(upstairs.layout))
    # coefficients c with sum c_k image_k in the null-homotopic span
    F = C.field
    nb = upstairs.null.basis
    size = upstairs.layout.size
    if size == 0:
        compatible = len(base.chain_basis)
    else:
        cols = list(images) + [tuple(-x for x in v) for v in nb]
        mat = ExactMatrix.from_columns(F, cols, size)
        ker = kernel_basis(mat)
        proj = Subspace.span(F, len(images), [v[:len(images)] for v in ker.basis])
        compatible = proj.dim
    return compatible - base.null.dim


@dataclass
class ComplexComparison:
    """Sends base complexes to derived descent objects degree by degree."""

    tcc: CosimplicialAlgebra
    base_algebra: Algebra
    on_module: Callable
    on_hom: Callable
    unit_splits: bool
    name: str = ""
    _cache: dict = dc_field(default_factory=dict)

    def module(self, H: Module):
        hit = self._cache.get(id(H))
        if hit is None or hit[0] is not H:
            hit = (H, self.on_module(H))
            self._cache[id(H)] = hit
        return hit[1]

    def apply(self, H: BoundedComplex) -> DerivedDescentObject:
        tcc = self.tcc
        level0 = tcc.algebra(1)
        pieces = {i: self.module(H.module(i)) for i in H.degrees()}
        mods = {i: p[0] for i, p in pieces.items()}
        diffs = {}
        for i in range(H.lo, H.hi):
            diffs[i] = ModuleHom(mods[i], mods[i + 1], self.on_hom(H.d(i)).matrix, check=False)
        F = BoundedComplex(level0, mods, diffs, check=False)
        P1, P2 = pull_complex(tcc, I1, F), pull_complex(tcc, I2, F)
        theta = ChainMap(P1, P2, {i: p[1] for i, p in pieces.items()}, check=False)
        return DerivedDescentObject(tcc, F, theta)


def amitsur_comparison(tcc: CosimplicialAlgebra) -> ComplexComparison:
    phi = tcc.algebra_map(E1)

    def on_module(H):
        obj = canonical_comparison(tcc, H)
        return obj.F, obj.theta

    splits = split_unit_check(ExtensionAdjunction(phi), Module.regular(phi.source)) is not None
    return ComplexComparison(tcc, phi.source, on_module, lambda u: tcc.pull_hom(E1, u), splits, "amitsur")


def equivariant_comparison(tcc: CosimplicialAlgebra) -> ComplexComparison:
    """Groupoid-algebra complexes to descent data over the action nerve."""
    from .descent import equivariant_adjunction, equivariant_to_theta, groupoid_to_equivariant

    action = tcc.action
    pair = equivariant_adjunction(action, tcc.field)
    B = pair.base_algebra

    def on_module(H):
        datum = groupoid_to_equivariant(H, action)
        obj = equivariant_to_theta(tcc, datum)
        return obj.F, obj.theta

    splits = split_unit_check(pair, pair.structure) is not None
    return ComplexComparison(tcc, B, on_module, lambda u: u, splits, "equivariant")


@dataclass
class DerivedReport:
    unit_splits: bool
    rows: list = dc_field(default_factory=list)  # (i, j, n, base_dim, descent_dim)
    skipped: list = dc_field(default_factory=list)

    @property
    def agree(self) -> bool:
        return all(b == d for _, _, _, b, d in self.rows)

    @property
    def counterexample(self):
        return next(((i, j, n, b, d) for i, j, n, b, d in self.rows if b != d), None)

    @property
    def verdict(self) -> str:
        return "full agreement" if self.agree else "counterexample"


def _base_hom_dim(H1: BoundedComplex, H2: BoundedComplex, n: int) -> int | None:
    """``dim Hom(H1, H2[n])`` in the derived category, where computable."""
    A = H1.algebra
    if is_semisimple(A):
        return hom_homotopy(H1, shift(H2, n)).dim
    a, b = H1.is_single(), H2.is_single()
    if a is None or b is None:
        return None
    return ext(H1.module(a), H2.module(b), n + a - b)


def sample_complexes(B: Algebra, max_dim: int = 6) -> list[BoundedComplex]:
    """Small complexes over B: summands of B, a shifted copy, a contractible
    cone and a surjection onto a residue field."""
    R = Module.regular(B)
    summands = []
    if B.commutative:
        for e in primitive_idempotents(B):
            sub = R.span_of([e])
            summands.append(R.submodule(sub)[0])
    out = [BoundedComplex.single(P) for P in summands if P.dim <= max_dim]
    if B.commutative:
        residues = [residue_field_module(B, e) for e in primitive_idempotents(B)]
        out += [BoundedComplex.single(Q) for Q, P in zip(residues, summands) if Q.dim != P.dim]
    if R.dim <= max_dim and len(summands) != 1:
        out.append(BoundedComplex.single(R))
    first = summands[0] if summands else R
    if first.dim <= max_dim:
        out.append(BoundedComplex.single(first, 1))
    if 2 * first.dim <= max_dim:
        out.append(BoundedComplex.two_term(first.identity(), -1))
    if B.commutative:
        e = primitive_idempotents(B)[0]
        Q = residue_field_module(B, e)
        if R.dim + Q.dim <= max_dim:
            # the quotient map B -> Q sends b to b . (image of 1)
            cover = _cover(Q, "minimal")
            if cover.source.dim == R.dim:
                out.append(BoundedComplex.two_term(ModuleHom(R, Q, cover.matrix, check=False), -1))
    return out


def derived_descent_check(comparison: ComplexComparison, samples: Sequence[BoundedComplex],
                          shifts: Iterable[int] = (-1, 0, 1), max_total: int | None = None) -> DerivedReport:
    """Compare derived Hom dimensions below and on descent data above, pair by pair.

    Pairs whose total dimension exceeds ``max_total`` are left out.
    """
    rep = DerivedReport(comparison.unit_splits)
    shifts = list(shifts)
    phis = [comparison.apply(H) for H in samples]
    shifted = {(j, n): comparison.apply(shift(H, n)) for j, H in enumerate(samples) for n in shifts}
    for i, H1 in enumerate(samples):
        for j, H2 in enumerate(samples):
            if max_total is not None and H1.total_dim() + H2.total_dim() > max_total:
                continue
            for n in shifts:
                base = _base_hom_dim(H1, H2, n)
                if base is None:
                    rep.skipped.append((i, j, n))
                    continue
                top = derived_descent_hom_dim(phis[i], shifted[(j, n)])
                rep.rows.append((i, j, n, base, top))
    return rep


def cone_descent(f: ChainMap, obj1: DerivedDescentObject, obj2: DerivedDescentObject,
                 unit_splits: bool) -> tuple[DerivedDescentObject, ChainMap]:
    """Cone of a map of descent objects with a block gluing map.

    f is first replaced by a homotopic map strictly compatible with the gluing
    maps.  Returns the descent object on the cone and the representative used.
    """
    if not unit_splits:
        raise AxiomError("cones of descent data need a split unit")
    tcc = obj1.tcc
    C, D = obj1.F, obj2.F
    P1C, P2C = obj1.theta.source, obj1.theta.target
    P1D, P2D = obj2.theta.source, obj2.theta.target
    upstairs = _Layout.build(P1C, P2D)

    def defect(g: ChainMap) -> tuple:
        p2 = _pull_chain(tcc, I2, g, P2C, P2D)
        p1 = _pull_chain(tcc, I1, g, P1C, P1D)
        return ((p2 @ obj1.theta) - (obj2.theta @ p1)).flatten(upstairs)

    base_layout = _Layout.build(C, D)
    images, unknowns = _homotopy_images(C, D, base_layout)
    target = tuple(-x for x in defect(f))
    # defect is linear, so solve defect(ds + sd) = -defect(f)
    homotopies = []
    for i, s in unknowns:
        mats = {i: D.d(i - 1) @ s, i - 1: s @ C.d(i - 1)}
        homotopies.append(ChainMap(C, D, mats, check=False))
    cols = [defect(h) for h in homotopies]
    rows = [({k: c[r] for k, c in enumerate(cols) if c[r]}, target[r]) for r in range(upstairs.size)]
    sol = linear_feasible(rows, len(cols), C.field) if rows else (0,) * len(cols)
    if sol is None:
        raise AxiomError("no homotopic representative is compatible with the gluing maps")
    g = f
    for c, h in zip(sol, homotopies):
        if c:
            g = g + h.scale(c)
    g = ChainMap(C, D, g.maps)
    K = cone(g)
    F = C.field
    P1K, P2K = pull_complex(tcc, I1, K), pull_complex(tcc, I2, K)
    comps = {}
    for i in K.degrees():
        a, b = C.module(i + 1), D.module(i)
        summand = K.module(i)
        _, incs, projs = direct_sum([a, b])
        incs = [ModuleHom(x.source, summand, x.matrix, check=False) for x in incs]
        projs = [ModuleHom(summand, x.target, x.matrix, check=False) for x in projs]
        blocks = [obj1.theta.component(i + 1), obj2.theta.component(i)]
        total = ExactMatrix.zeros(F, P2K.module(i).dim, P1K.module(i).dim)
        for inc, proj, th in zip(incs, projs, blocks):
            total = total + tcc.pull_hom(I2, inc).matrix @ th.matrix @ tcc.pull_hom(I1, proj).matrix
        comps[i] = ModuleHom(P1K.module(i), P2K.module(i), total, check=False)
    theta = ChainMap(P1K, P2K, comps)
    return DerivedDescentObject(tcc, K, theta), g
