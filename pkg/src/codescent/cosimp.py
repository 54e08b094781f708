"""Truncated cosimplicial categories of modules and their descent categories.

A :class:`CosimplicialAlgebra` assigns an algebra ``A_n`` to each object
``n`` of the (augmented) simplex category and an algebra map ``A_m -> A_n``
to each monotone map ``f: m -> n``.  The functor ``P_f^*`` is extension of
scalars along that map; the coherence isomorphisms

    eps_{f,g}: P_f^* P_g^* M -> P_{fg}^* M,   c (x) (b (x) x) -> c f(b) (x) x

are computed explicitly.  Object ``n >= 1`` is level ``n - 1``; object ``0``
(the empty set) is the augmentation.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable, Sequence

from .algmod import (
    Algebra,
    AlgebraMorphism,
    AxiomError,
    GroupAction,
    HomSpace,
    Module,
    ModuleHom,
    Verdict,
    adjunction_counit,
    adjunction_unit,
    extend_hom,
    extend_scalars,
    extension,
    function_algebra,
    function_algebra_on,
    hom_space,
    primitive_idempotents,
    residue_field_module,
    restrict_hom,
    restrict_scalars,
    tensor_power_over,
)
from .exactlin import ExactMatrix, FieldSpec
from .simplexcat import (
    MonotoneMap,
    compose,
    enumerate_maps,
    exact_cartesian_squares,
)

__all__ = [
    "CosimplicialAlgebra",
    "DescentObject",
    "DescentFamily",
    "KernCategory",
    "RightAdjoint",
    "amitsur_tcc",
    "action_nerve_tcc",
    "check_descent_theta",
    "hom_descent",
    "theta_to_family",
    "family_to_theta",
    "check_family",
    "kern_augment",
    "canonical_comparison",
    "comparison_hom",
    "build_right_adjoint",
    "base_change_map",
    "check_A1_A2",
    "standard_samples",
    "I1", "I2", "P12", "P13", "P23", "DIAG", "E1", "E2",
]

I1 = MonotoneMap(1, 2, (1,))
I2 = MonotoneMap(1, 2, (2,))
P12 = MonotoneMap(2, 3, (1, 2))
P13 = MonotoneMap(2, 3, (1, 3))
P23 = MonotoneMap(2, 3, (2, 3))
DIAG = MonotoneMap(2, 1, (1, 1))
E1 = MonotoneMap(0, 1, ())
E2 = MonotoneMap(0, 2, ())


def constant(n: int, j: int = 1) -> MonotoneMap:
    return MonotoneMap(1, n, (j,))


class CosimplicialAlgebra:
    """Truncated (optionally augmented) cosimplicial category of module categories.

    ``truncation`` is the top level N; objects run over ``1 .. N + 1`` plus
    ``0`` when augmented.  ``twists`` maps a pair of monotone maps ``(f, g)``
    to a scalar multiplying ``eps_{f,g}``; the default is 1 everywhere and
    anything else breaks the cocycle (used for fault injection).
    """

    def __init__(self, field: FieldSpec, algebras: dict, map_builder: Callable[[MonotoneMap], AlgebraMorphism],
                 truncation: int = 3, augmented: bool = False, name: str = "", twists: dict | None = None):
        self.field = field
        self._algebras = dict(algebras)
        self._builder = map_builder
        self.truncation = truncation
        self.augmented = augmented
        self.name = name
        self.twists = dict(twists or {})
        self._maps: dict = {}
        self._eps: dict = {}
        for n in self.objects():
            if n not in self._algebras:
                raise AxiomError(f"missing algebra for object {n}")

    def __repr__(self):
        return f"CosimplicialAlgebra({self.name}, N={self.truncation}, augmented={self.augmented})"

    def objects(self) -> list[int]:
        top = self.truncation + 1
        return ([0] if self.augmented else []) + list(range(1, top + 1))

    def algebra(self, n: int) -> Algebra:
        if n not in self._algebras:
            raise KeyError(f"object {n} is outside the truncation")
        return self._algebras[n]

    def level(self, k: int) -> Algebra:
        return self.algebra(k + 1)

    def algebra_map(self, f: MonotoneMap) -> AlgebraMorphism:
        if f not in self._maps:
            if f.source not in self._algebras or f.target not in self._algebras:
                raise KeyError(f"{f} leaves the truncation")
            if f.is_identity():
                self._maps[f] = AlgebraMorphism.identity(self.algebra(f.source))
            else:
                self._maps[f] = self._builder(f)
        return self._maps[f]

    def with_twists(self, twists: dict) -> "CosimplicialAlgebra":
        """Same data with the given coherence twists; algebra maps are shared."""
        other = CosimplicialAlgebra(self.field, self._algebras, self._builder, self.truncation,
                                    self.augmented, self.name + " (twisted)", twists)
        other._maps = self._maps
        return other

    # functors -----------------------------------------------------------

    def pull(self, f: MonotoneMap, M: Module) -> Module:
        return extend_scalars(self.algebra_map(f), M)

    def pull_hom(self, f: MonotoneMap, u: ModuleHom) -> ModuleHom:
        return extend_hom(self.algebra_map(f), u)

    def push(self, f: MonotoneMap, N: Module) -> Module:
        return restrict_scalars(self.algebra_map(f), N)

    def push_hom(self, f: MonotoneMap, u: ModuleHom) -> ModuleHom:
        return restrict_hom(self.algebra_map(f), u)

    def unit(self, f: MonotoneMap, M: Module) -> ModuleHom:
        return adjunction_unit(self.algebra_map(f), M)

    def counit(self, f: MonotoneMap, N: Module) -> ModuleHom:
        return adjunction_counit(self.algebra_map(f), N)

    def epsilon(self, f: MonotoneMap, g: MonotoneMap, M: Module) -> ModuleHom:
        """The coherence iso ``P_f^* P_g^* M -> P_{f g}^* M``."""
        key = (f, g, id(M))
        hit = self._eps.get(key)
        if hit is not None and hit[0] is M:
            return hit[1]
        phi_f, phi_g = self.algebra_map(f), self.algebra_map(g)
        phi_fg = self.algebra_map(compose(f, g))
        inner = extension(phi_g, M)
        outer = extension(phi_f, inner.module)
        target = extension(phi_fg, M)
        An = phi_f.target
        F = self.field
        st = An._sparse_table
        m = M.dim
        y_dim = inner.module.dim
        fb = [_sparse(phi_f(phi_f.source.basis_vector(b))) for b in range(phi_f.source.dim)]
        cols = []
        for k in range(outer.module.dim):
            acc: dict = {}
            for idx, c in outer.lift_sparse(k).items():
                cidx, y = divmod(idx, y_dim)
                for idx2, c2 in inner.lift_sparse(y).items():
                    b, x = divmod(idx2, m)
                    for a, v in fb[b].items():
                        for t, w in st[cidx][a].items():
                            key2 = t * m + x
                            acc[key2] = acc.get(key2, 0) + c * c2 * v * w
            cols.append(target.coords({kk: F.norm(v) for kk, v in acc.items()}))
        n = target.module.dim
        mat = ExactMatrix.from_columns(F, cols, n) if cols else ExactMatrix.zeros(F, n, 0)
        tw = self.twists.get((f, g))
        if tw is not None:
            mat = mat.scale(tw)
        eps = ModuleHom(outer.module, target.module, mat, check=False)
        self._eps[key] = (M, eps)
        return eps

    def epsilon_inv(self, f: MonotoneMap, g: MonotoneMap, M: Module) -> ModuleHom:
        return self.epsilon(f, g, M).inverse()

    def transport(self, f: MonotoneMap, theta: ModuleHom, a: MonotoneMap, b: MonotoneMap, F: Module) -> ModuleHom:
        """Pull ``theta: P_a^* F -> P_b^* F`` back along f: ``P_{fa}^* F -> P_{fb}^* F``."""
        return self.epsilon(f, b, F) @ self.pull_hom(f, theta) @ self.epsilon_inv(f, a, F)

    # checks -------------------------------------------------------------

    def maps_within(self) -> list[MonotoneMap]:
        objs = self.objects()
        return [f for m in objs for n in objs for f in enumerate_maps(m, n) if not (n == 0 and m > 0)]

    def check_functoriality(self, max_object: int | None = None) -> Verdict:
        """Strict functoriality of the algebra maps on composable pairs."""
        top = max_object or (self.truncation + 1)
        objs = [n for n in self.objects() if n <= top]
        for a, b, c in itertools.product(objs, repeat=3):
            for f in enumerate_maps(a, b):
                for g in enumerate_maps(b, c):
                    lhs = self.algebra_map(compose(g, f)).matrix
                    rhs = self.algebra_map(g).matrix @ self.algebra_map(f).matrix
                    if lhs != rhs:
                        return Verdict(False, (g, f), "algebra maps are not functorial")
        return Verdict(True)

    def check_cocycle(self, samples: dict, max_object: int | None = None) -> Verdict:
        """eps cocycle on composable triples (f, g, h) for sample modules at the source of h."""
        top = max_object or (self.truncation + 1)
        objs = [n for n in self.objects() if n <= top]
        for a in objs:
            for M in samples.get(a, []):
                for b, c, d in itertools.product(objs, repeat=3):
                    for h in enumerate_maps(a, b):
                        for g in enumerate_maps(b, c):
                            for f in enumerate_maps(c, d):
                                if not self._cocycle_holds(f, g, h, M):
                                    return Verdict(False, (f, g, h), "coherence cocycle fails")
        return Verdict(True)

    def _cocycle_holds(self, f, g, h, M) -> bool:
        gh = compose(g, h)
        fg = compose(f, g)
        left = self.epsilon(f, gh, M) @ self.pull_hom(f, self.epsilon(g, h, M))
        right = self.epsilon(fg, h, M) @ self.epsilon(f, g, self.pull(h, M))
        return left.matrix == right.matrix


def _sparse(v):
    return {i: x for i, x in enumerate(v) if x}


# ---------------------------------------------------------------------------
# fixture families


def amitsur_tcc(phi: AlgebraMorphism, truncation: int = 3) -> CosimplicialAlgebra:
    """Levels ``S^{(x)_R (k+1)}`` with augmentation ``R``; f puts factor i into slot f(i)."""
    R, S = phi.source, phi.target
    if not R.commutative:
        raise AxiomError("the base algebra must be commutative")
    F = R.field
    top = truncation + 1
    if phi.is_identity():
        algebras = {n: R for n in range(0, top + 1)}

        def build_identity(f: MonotoneMap) -> AlgebraMorphism:
            return AlgebraMorphism.identity(R)

        return CosimplicialAlgebra(F, algebras, build_identity, truncation, True, name="Amitsur(id)")
    powers = {n: tensor_power_over(phi, n) for n in range(1, top + 1)}
    algebras = {0: R}
    algebras.update({n: tp.algebra for n, tp in powers.items()})

    def build(f: MonotoneMap) -> AlgebraMorphism:
        m, n = f.source, f.target
        if n == 0:
            return AlgebraMorphism.identity(R)
        tgt = powers[n]
        if m == 0:
            return tgt.structure
        src = powers[m]
        cols = []
        for j in src.free:
            multi = src.multi_index(j)
            slots = [S.unit] * n
            for i, b in enumerate(multi):
                t = f.values[i] - 1
                slots[t] = S.mul(slots[t], S.basis_vector(b))
            cols.append(tgt.pure(slots))
        return AlgebraMorphism(src.algebra, tgt.algebra, ExactMatrix.from_columns(F, cols, tgt.dim), check=False)

    tcc = CosimplicialAlgebra(F, algebras, build, truncation, True, name=f"Amitsur({R.name}->{S.name})")
    tcc.base_map = phi
    tcc.tensor_powers = powers
    return tcc


def nerve_point_map(action: GroupAction, f: MonotoneMap, y: tuple) -> tuple:
    """The structure map ``G^{n-1} x X -> G^{m-1} x X`` of the action nerve.

    A point of object n is ``(g_n, .., g_2, x_1)``; component j >= 2 of the
    image is ``g_{f(j)} .. g_{f(j-1)+1}`` and the last one is ``g_{f(1)} .. g_2 . x_1``.
    """
    G = action.group
    n = f.target

    def g(i):
        return y[n - i]

    def prod(hi, lo):
        out = G.identity
        for i in range(hi, lo - 1, -1):
            out = G.mul(out, g(i))
        return out

    m = f.source
    comps = [prod(f(j), f(j - 1) + 1) for j in range(m, 1, -1)]
    x = action(prod(f(1), 2), y[-1])
    return tuple(comps) + (x,)


def action_nerve_tcc(action: GroupAction, field: FieldSpec, truncation: int = 3,
                     augmented: bool = True) -> CosimplicialAlgebra:
    """Levels Fun(G^k x X); augmentation is the invariant functions Fun(X)^G."""
    top = truncation + 1
    algebras, points, index = {}, {}, {}
    for n in range(1, top + 1):
        A, pts = function_algebra_on(action, n - 1, field)
        algebras[n] = A
        points[n] = pts
        index[n] = {p: i for i, p in enumerate(pts)}
    orbits = action.orbits()
    orbit_of = {x: i for i, orb in enumerate(orbits) for x in orb}
    if augmented:
        algebras[0] = function_algebra(field, [",".join(map(str, o)) for o in orbits], name="Fun(X)^G")

    def build(f: MonotoneMap) -> AlgebraMorphism:
        m, n = f.source, f.target
        if n == 0:
            return AlgebraMorphism.identity(algebras[0])
        ent = {}
        for i, y in enumerate(points[n]):
            if m == 0:
                ent[(i, orbit_of[y[-1]])] = field.one
            else:
                ent[(i, index[m][nerve_point_map(action, f, y)])] = field.one
        mat = ExactMatrix.from_sparse(field, algebras[n].dim, algebras[m].dim, ent)
        return AlgebraMorphism(algebras[m], algebras[n], mat, check=False)

    tcc = CosimplicialAlgebra(field, algebras, build, truncation, augmented,
                              name=f"nerve({action.group.name} on {action.points})")
    tcc.action = action
    tcc.points = points
    tcc.point_index = index
    return tcc


# ---------------------------------------------------------------------------
# descent data


@dataclass
class DescentObject:
    """Gluing datum ``theta: P_{i1}^* F -> P_{i2}^* F`` over level 0."""

    tcc: CosimplicialAlgebra
    F: Module
    theta: ModuleHom

    def __post_init__(self):
        if self.F.algebra is not self.tcc.algebra(1):
            raise AxiomError("F must be a module over level 0")
        if self.theta.source is not self.tcc.pull(I1, self.F) or self.theta.target is not self.tcc.pull(I2, self.F):
            raise AxiomError("theta must map P_1^* F to P_2^* F")


def cocycle_sides(tcc: CosimplicialAlgebra, F: Module, theta: ModuleHom) -> tuple[ModuleHom, ModuleHom]:
    """(Theta_23 . Theta_12, Theta_13) as maps on ``P_{c1}^* F`` over level 2."""
    t12 = tcc.transport(P12, theta, I1, I2, F)
    t23 = tcc.transport(P23, theta, I1, I2, F)
    t13 = tcc.transport(P13, theta, I1, I2, F)
    return t23 @ t12, t13


def check_descent_theta(tcc: CosimplicialAlgebra, obj: DescentObject) -> Verdict:
    if not obj.theta.is_iso():
        return Verdict(False, "theta", "gluing map is not invertible")
    lhs, rhs = cocycle_sides(tcc, obj.F, obj.theta)
    if lhs.matrix != rhs.matrix:
        return Verdict(False, ("p12", "p23", "p13"), "cocycle condition fails")
    return Verdict(True)


def hom_descent(obj1: DescentObject, obj2: DescentObject) -> HomSpace:
    """Maps f: F1 -> F2 with ``P_2^* f . theta_1 = theta_2 . P_1^* f``."""
    tcc = obj1.tcc
    if obj2.tcc.algebra(1) is not tcc.algebra(1):
        raise AxiomError("descent objects live over different cosimplicial categories")
    H = hom_space(obj1.F, obj2.F)

    def defect(f: ModuleHom) -> ExactMatrix:
        return (tcc.pull_hom(I2, f) @ obj1.theta).matrix - (obj2.theta @ tcc.pull_hom(I1, f)).matrix

    return H.solve_subspace(defect)


def is_descent_hom(f: ModuleHom, obj1: DescentObject, obj2: DescentObject) -> bool:
    tcc = obj1.tcc
    return (tcc.pull_hom(I2, f) @ obj1.theta).matrix == (obj2.theta @ tcc.pull_hom(I1, f)).matrix


@dataclass
class DescentFamily:
    """Modules ``F[n]`` over every object n >= 1 and isos ``phi[f]: P_f^* F[m] -> F[n]``."""

    tcc: CosimplicialAlgebra
    F: dict
    phi: dict


def _top(tcc, top):
    return min(top or tcc.truncation + 1, tcc.truncation + 1)


def theta_to_family(tcc: CosimplicialAlgebra, obj: DescentObject, top: int | None = None) -> DescentFamily:
    """``F[n] = P_{c}^* F`` for the map c: 1 -> n hitting 1; phi built from theta^{-1}."""
    top = _top(tcc, top)
    F0 = obj.F
    theta_inv = obj.theta.inverse()
    mods = {n: tcc.pull(constant(n), F0) for n in range(1, top + 1)}
    phis = {}
    for m in range(1, top + 1):
        for n in range(1, top + 1):
            for f in enumerate_maps(m, n):
                first = tcc.epsilon(f, constant(m), F0)
                g = MonotoneMap(2, n, (1, f(1)))
                pulled = tcc.pull_hom(g, theta_inv)
                phis[f] = tcc.epsilon(g, I1, F0) @ pulled @ tcc.epsilon_inv(g, I2, F0) @ first
                phis[f] = ModuleHom(tcc.pull(f, mods[m]), mods[n], phis[f].matrix, check=False)
    return DescentFamily(tcc, mods, phis)


def family_to_theta(fam: DescentFamily) -> DescentObject:
    """theta = phi_{i2}^{-1} . phi_{i1}."""
    tcc = fam.tcc
    theta = fam.phi[I2].inverse() @ fam.phi[I1]
    return DescentObject(tcc, fam.F[1], theta)


def check_family(fam: DescentFamily) -> Verdict:
    tcc = fam.tcc
    for f, p in fam.phi.items():
        if not p.is_iso():
            return Verdict(False, f, "phi_f is not invertible")
    for f in fam.phi:
        if f.is_identity() and _not_identity(fam.phi[f]):
            return Verdict(False, f, "phi of an identity map is not the identity")
    for f, g in itertools.product(fam.phi, repeat=2):
        if f.target != g.source:
            continue
        gf = compose(g, f)
        if gf not in fam.phi:
            continue
        lhs = fam.phi[gf] @ tcc.epsilon(g, f, fam.F[f.source])
        rhs = fam.phi[g] @ tcc.pull_hom(g, fam.phi[f])
        if lhs.matrix != rhs.matrix:
            return Verdict(False, (g, f), "phi_{gf} . eps_{g,f} != phi_g . P_g^* phi_f")
    return Verdict(True)


def _not_identity(h: ModuleHom) -> bool:
    return h.matrix != ExactMatrix.identity(h.matrix.field, h.source.dim)


def family_comparison(fam1: DescentFamily, fam2: DescentFamily) -> Verdict:
    """Check that ``psi_n = phi2[c_n] . P^* psi_1`` style isos identify two families.

    ``fam2`` must be obtained from ``fam1`` through family_to_theta/theta_to_family;
    the comparison iso at object n is ``phi1[c]`` with c: 1 -> n hitting 1.
    """
    tcc = fam1.tcc
    if fam2.F[1] is not fam1.F[1]:
        return Verdict(False, 1, "level-0 modules differ")
    psi = {n: fam1.phi[constant(n)] for n in fam2.F}
    for f, p2 in fam2.phi.items():
        if f not in fam1.phi:
            continue
        lhs = psi[f.target] @ p2
        rhs = fam1.phi[f] @ tcc.pull_hom(f, psi[f.source])
        if lhs.matrix != rhs.matrix:
            return Verdict(False, f, "families are not identified by the canonical isos")
    return Verdict(True)


class KernCategory:
    """The descent category, intensionally: objects are built on demand."""

    def __init__(self, tcc: CosimplicialAlgebra):
        self.tcc = tcc

    def is_object(self, obj: DescentObject) -> Verdict:
        return check_descent_theta(self.tcc, obj)

    def hom(self, a: DescentObject, b: DescentObject) -> HomSpace:
        return hom_descent(a, b)

    def forget(self, obj: DescentObject, n: int = 1) -> Module:
        """Forgetful functor to object n (the new ``P_f^*`` out of the augmentation)."""
        if n == 1:
            return obj.F
        return self.tcc.pull(constant(n), obj.F)

    def forget_hom(self, f: ModuleHom, n: int = 1) -> ModuleHom:
        return f if n == 1 else self.tcc.pull_hom(constant(n), f)

    def isomorphic(self, a: DescentObject, b: DescentObject, tries: int = 24) -> ModuleHom | None:
        if a.F.dim != b.F.dim:
            return None
        H = self.hom(a, b)
        return find_invertible(H, tries)

    def iso_classes(self, objs: Sequence[DescentObject]) -> list[list[int]]:
        classes: list[list[int]] = []
        for i, o in enumerate(objs):
            for cl in classes:
                if self.isomorphic(objs[cl[0]], o) is not None:
                    cl.append(i)
                    break
            else:
                classes.append([i])
        return classes


def find_invertible(H: HomSpace, tries: int = 24) -> ModuleHom | None:
    """Some invertible element of a hom space, searched deterministically."""
    if H.source.dim != H.target.dim:
        return None
    if H.source.dim == 0:
        return H.element([])
    if not H.basis:
        return None
    F = H.source.field
    candidates: list = [b for b in H.basis]
    if F.characteristic and F.characteristic ** H.dim <= 4096:
        candidates = [H.element(c) for c in itertools.product(range(F.characteristic), repeat=H.dim)]
    else:
        rng = random.Random(H.dim)
        for _ in range(tries):
            candidates.append(H.element([F(rng.randint(-3, 3)) for _ in range(H.dim)]))
    for c in candidates:
        if c.is_iso():
            return c
    return None


def kern_augment(tcc: CosimplicialAlgebra) -> KernCategory:
    return KernCategory(tcc)


def canonical_comparison(tcc: CosimplicialAlgebra, H: Module) -> DescentObject:
    """Phi(H) = (P^* H, eps_{i2,e}^{-1} . eps_{i1,e})."""
    if not tcc.augmented:
        raise AxiomError("the comparison needs an augmented cosimplicial category")
    F = tcc.pull(E1, H)
    theta = tcc.epsilon_inv(I2, E1, H) @ tcc.epsilon(I1, E1, H)
    theta = ModuleHom(tcc.pull(I1, F), tcc.pull(I2, F), theta.matrix, check=False)
    return DescentObject(tcc, F, theta)


def comparison_hom(tcc: CosimplicialAlgebra, u: ModuleHom) -> ModuleHom:
    return tcc.pull_hom(E1, u)


# ---------------------------------------------------------------------------
# base change and the right adjoint


def base_change_map(tcc: CosimplicialAlgebra, f: MonotoneMap, g: MonotoneMap, f2: MonotoneMap,
                    g2: MonotoneMap, X: Module) -> ModuleHom:
    """``P_g^* P_{f*} X -> P_{f2*} P_{g2}^* X`` for a square with ``g2 f = f2 g``.

    Composite of the unit of f2, the coherence isos and the counit of f.
    """
    Y = tcc.pull(g, tcc.push(f, X))
    step1 = tcc.unit(f2, Y)  # Y -> P_{f2*} P_{f2}^* Y
    fg = compose(f2, g)
    a = tcc.epsilon(f2, g, tcc.push(f, X))  # P_{f2}^* P_g^* P_{f*}X -> P_{f2 g}^*
    b = tcc.epsilon_inv(g2, f, tcc.push(f, X))  # P_{g2 f}^* -> P_{g2}^* P_f^*
    assert compose(g2, f) == fg
    counit = tcc.counit(f, X)  # P_f^* P_{f*} X -> X
    step3 = tcc.pull_hom(g2, counit)
    total = step3.matrix @ b.matrix @ a.matrix @ step1.matrix
    src = Y
    tgt = tcc.push(f2, tcc.pull(g2, X))
    return ModuleHom(src, tgt, total, check=False)


class RightAdjoint:
    """Right adjoint of the forgetful functor from descent data to level 0."""

    def __init__(self, tcc: CosimplicialAlgebra):
        self.tcc = tcc

    def push(self, F: Module) -> DescentObject:
        tcc = self.tcc
        X = tcc.pull(I1, F)
        under = tcc.push(I2, X)
        bc_a = base_change_map(tcc, I2, I1, P23, P12, X)
        bc_b = base_change_map(tcc, I2, I2, P23, P13, X)
        mid = tcc.epsilon_inv(P13, I1, F).matrix @ tcc.epsilon(P12, I1, F).matrix
        theta = bc_b.matrix.inverse() @ mid @ bc_a.matrix
        theta = ModuleHom(tcc.pull(I1, under), tcc.pull(I2, under), theta, check=False)
        return DescentObject(tcc, under, theta)

    def push_hom(self, u: ModuleHom) -> ModuleHom:
        tcc = self.tcc
        pu = tcc.pull_hom(I1, u)
        src, tgt = self.push(u.source), self.push(u.target)
        return ModuleHom(src.F, tgt.F, pu.matrix, check=False)

    def unit(self, obj: DescentObject) -> ModuleHom:
        """eta_(F, theta) = P_{2*} theta^{-1} . eta^{i2}_F."""
        tcc = self.tcc
        eta = tcc.unit(I2, obj.F)
        target = self.push(obj.F)
        mat = obj.theta.inverse().matrix @ eta.matrix
        return ModuleHom(obj.F, target.F, mat, check=False)

    def counit(self, F: Module) -> ModuleHom:
        """eps_F = eps_{D,i1} . eta^D_{P_1^* F}."""
        tcc = self.tcc
        X = tcc.pull(I1, F)
        eta = tcc.unit(DIAG, X)
        eps = tcc.epsilon(DIAG, I1, F)
        return ModuleHom(self.push(F).F, F, eps.matrix @ eta.matrix, check=False)

    def check_triangles(self, obj: DescentObject) -> Verdict:
        """Both triangle identities at the given object (and at its level-0 module)."""
        F = obj.F
        one = self.counit(F) @ self.unit(obj)
        if one.matrix != ExactMatrix.identity(F.field, F.dim):
            return Verdict(False, "counit . unit", "first triangle identity fails")
        P = self.push(F)
        two = self.push_hom(self.counit(F)) @ self.unit(P)
        if two.matrix != ExactMatrix.identity(F.field, P.F.dim):
            return Verdict(False, "push(counit) . unit", "second triangle identity fails")
        return Verdict(True)

    def check_unit_is_descent_hom(self, obj: DescentObject) -> Verdict:
        eta = self.unit(obj)
        target = self.push(obj.F)
        if not is_descent_hom(eta, obj, target):
            return Verdict(False, "unit", "unit does not respect gluing data")
        return Verdict(True)


def build_right_adjoint(tcc: CosimplicialAlgebra) -> RightAdjoint:
    return RightAdjoint(tcc)


@dataclass
class A2Report:
    squares: int = 0
    checks: int = 0
    failures: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_A1_A2(tcc: CosimplicialAlgebra, samples: dict, max_object: int | None = None,
                include_augmentation: bool = False) -> A2Report:
    """Invertibility of every base change map on exact Cartesian squares within truncation.

    ``samples`` maps an object to modules over it; a square ``(f, g, f2, g2)``
    is tested on each sample over the target of f.  A1 holds by construction
    (restriction of scalars is right adjoint to extension); its triangle
    identities are checked on every sample too.
    """
    top = max_object or (tcc.truncation + 1)
    low = 0 if (include_augmentation and tcc.augmented) else 1
    rep = A2Report()
    for f, g, f2, g2 in exact_cartesian_squares(top, min_object=low):
        rep.squares += 1
        for X in samples.get(f.target, []):
            rep.checks += 1
            bc = base_change_map(tcc, f, g, f2, g2, X)
            if not bc.is_iso():
                rep.failures.append(((f, g, f2, g2), X.name or f"dim {X.dim}"))
    return rep


def check_adjunction(tcc: CosimplicialAlgebra, f: MonotoneMap, M: Module, N: Module) -> Verdict:
    """Triangle identities of ``P_f^* -| P_{f*}`` at M (source side) and N (target side)."""
    F = tcc.field
    one = tcc.counit(f, tcc.pull(f, M)) @ tcc.pull_hom(f, tcc.unit(f, M))
    if one.matrix != ExactMatrix.identity(F, one.source.dim):
        return Verdict(False, (f, "pull"), "counit . P^*(unit) is not the identity")
    two = tcc.push_hom(f, tcc.counit(f, N)) @ tcc.unit(f, tcc.push(f, N))
    if two.matrix != ExactMatrix.identity(F, two.source.dim):
        return Verdict(False, (f, "push"), "P_*(counit) . unit is not the identity")
    return Verdict(True)


def standard_samples(tcc: CosimplicialAlgebra, max_dim: int = 4, objects: Iterable[int] | None = None,
                     residues_per_object: int | None = 2) -> dict:
    """Sample modules per object: some residue fields and the regular module when small.

    ``residues_per_object`` caps the residue fields taken per object (first and
    last idempotent first); None takes all of them.
    """
    out: dict = {}
    objs = list(objects) if objects is not None else tcc.objects()
    for n in objs:
        A = tcc.algebra(n)
        mods = []
        if A.commutative:
            idems = primitive_idempotents(A)
            if residues_per_object is not None and len(idems) > residues_per_object:
                step = (len(idems) - 1) / max(residues_per_object - 1, 1)
                idems = [idems[round(i * step)] for i in range(residues_per_object)]
            for e in idems:
                K = residue_field_module(A, e)
                if K.dim <= max_dim:
                    K.name = f"residue[{n}]"
                    mods.append(K)
        if A.dim <= max_dim:
            mods.append(Module.regular(A))
        out[n] = mods
    return out
