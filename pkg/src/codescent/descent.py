"""Gluing maps versus comodule structures, unit splittings, and finite-group descent.

Three pieces live here:

* the translation between a gluing map ``theta: P_1^* F -> P_2^* F`` over an
  Amitsur cosimplicial algebra and a coaction ``h: F -> T F`` for the comonad
  of the augmentation;
* splitting of the unit ``R -> S`` (trace route or a linear feasibility
  search), with composition and base change;
* equivariant bundles on a finite G-set: gluing isomorphisms ``theta_g``,
  their groupoid-algebra modules, and the bridge to descent data over the
  action nerve.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .algmod import (
    Algebra,
    AlgebraMorphism,
    AxiomError,
    FiniteGroup,
    GroupAction,
    HomSpace,
    Module,
    ModuleHom,
    Verdict,
    flatness_report,
    free_basis,
    function_algebra,
    groupoid_algebra,
    hom_space,
    restrict_scalars,
    tensor_product_over,
    trace_map,
)
from .comonad import (
    AdjointPair,
    CoinductionAdjunction,
    Comodule,
    Comonad,
    ExtensionAdjunction,
    check_comodule,
    retraction_of,
    split_unit_check,
)
from .cosimp import (
    DescentObject,
    CosimplicialAlgebra,
    E1,
    I1,
    I2,
    base_change_map,
    canonical_comparison,
    check_descent_theta,
    find_invertible,
    hom_descent,
)
from .exactlin import ExactMatrix, FieldSpec

__all__ = [
    "augmentation_comonad",
    "h_from_theta",
    "theta_from_h",
    "random_descent_data",
    "inject_fault",
    "ScdtReport",
    "scdt_analyze",
    "scdt_compose",
    "scdt_base_change",
    "MaschkeResult",
    "maschke_split",
    "equivariant_adjunction",
    "EquivariantDatum",
    "check_equivariant",
    "equivariant_hom_space",
    "translate",
    "equivariant_to_groupoid",
    "groupoid_to_equivariant",
    "rank_one_data",
    "equivariant_iso_classes",
    "kern_rank_one_data",
    "KernBridge",
    "equivariant_kern_bridge",
    "theta_to_equivariant",
    "equivariant_to_theta",
]


# ---------------------------------------------------------------------------
# theta versus h over an Amitsur cosimplicial algebra


def augmentation_comonad(tcc: CosimplicialAlgebra) -> Comonad:
    """The comonad ``P^* P_*`` on level-0 modules for the augmentation map."""
    cached = getattr(tcc, "_aug_comonad", None)
    if cached is None:
        if not tcc.augmented:
            raise AxiomError("the cosimplicial algebra has no augmentation")
        cached = Comonad(ExtensionAdjunction(tcc.algebra_map(E1)))
        tcc._aug_comonad = cached
    return cached


def theta_from_h(tcc: CosimplicialAlgebra, c: Comodule) -> DescentObject:
    """``theta = P_2^*(counit) . eps_{i2,e}^{-1} . eps_{i1,e} . P_1^* h``."""
    T = augmentation_comonad(tcc)
    F, h = c.obj, c.coaction
    M = T.pair.push(F)
    counit = T.counit(F)
    mat = (tcc.pull_hom(I2, counit).matrix @ tcc.epsilon_inv(I2, E1, M).matrix
           @ tcc.epsilon(I1, E1, M).matrix @ tcc.pull_hom(I1, h).matrix)
    theta = ModuleHom(tcc.pull(I1, F), tcc.pull(I2, F), mat, check=False)
    return DescentObject(tcc, F, theta)


def h_from_theta(tcc: CosimplicialAlgebra, obj: DescentObject) -> Comodule:
    """``h = bc^{-1} . P_{1*} theta . unit^{i1}``, bc the base change of the square (e, e, i1, i2)."""
    T = augmentation_comonad(tcc)
    F = obj.F
    bc = base_change_map(tcc, E1, E1, I1, I2, F)
    if not bc.is_iso():
        raise AxiomError("base change along the augmentation square is not invertible")
    mat = bc.matrix.inverse() @ obj.theta.matrix @ tcc.unit(I1, F).matrix
    h = ModuleHom(F, T.apply(F), mat, check=False)
    return Comodule(T, F, h)


def random_descent_data(tcc: CosimplicialAlgebra, count: int, seed: int = 0,
                        max_dim: int = 3) -> list[DescentObject]:
    """Comparison objects of random base modules, conjugated by random automorphisms of F."""
    rng = random.Random(seed)
    R = tcc.algebra(0)
    out = []
    while len(out) < count:
        d = rng.randint(1, max_dim)
        H = Module.free(R, d)
        obj = canonical_comparison(tcc, H)
        u = _random_automorphism(obj.F, rng)
        if u is None:
            continue
        theta = tcc.pull_hom(I2, u) @ obj.theta @ tcc.pull_hom(I1, u.inverse())
        out.append(DescentObject(tcc, obj.F, theta.with_ends(obj.theta.source, obj.theta.target)))
    return out


def _random_automorphism(M: Module, rng: random.Random, tries: int = 20) -> ModuleHom | None:
    ends = hom_space(M, M)
    F = M.field
    for _ in range(tries):
        u = ends.element([F(rng.randint(-3, 3)) for _ in range(ends.dim)])
        if u.is_iso():
            return u
    return None


FAULTS = ("C1", "C2", "C1'", "C2'")


def inject_fault(tcc: CosimplicialAlgebra, obj: DescentObject, kind: str, seed: int = 0):
    """Break one axiom of a valid datum.

    ``C1``/``C2`` damage the coaction (counit law, coassociativity) and
    return a :class:`Comodule`; ``C1'``/``C2'`` damage the gluing map
    (invertibility, cocycle) and return a :class:`DescentObject`.
    """
    rng = random.Random(seed)
    F = obj.F
    if kind == "C1":
        c = h_from_theta(tcc, obj)
        return Comodule(c.comonad, F, c.coaction.scale(F.field(2)))
    if kind == "C2":
        c = h_from_theta(tcc, obj)
        T = c.comonad
        counit = T.counit(F)
        # maps F -> TF killed by the counit keep axiom (1) and usually break (2)
        killed = hom_space(F, T.apply(F)).solve_subspace(lambda k: (counit @ k).matrix)
        for _ in range(40):
            k = killed.element([F.field(rng.randint(-2, 2)) for _ in range(killed.dim)])
            bad = Comodule(T, F, c.coaction + k)
            v = check_comodule(bad)
            if not v and v.witness == 2:
                return bad
        raise AxiomError("could not break coassociativity while keeping the counit law")
    if kind == "C1'":
        ends = hom_space(F, F)
        # when End(F) is a division ring only zero is singular
        u = F.zero_map(F)
        for _ in range(40):
            cand = ends.element([F.field(rng.randint(-2, 2)) for _ in range(ends.dim)])
            if not cand.is_iso():
                u = cand
                break
        theta = obj.theta @ tcc.pull_hom(I1, u)
        return DescentObject(tcc, F, theta.with_ends(obj.theta.source, obj.theta.target))
    if kind == "C2'":
        return DescentObject(tcc, F, -obj.theta)
    raise ValueError(f"unknown fault class {kind!r}")


# ---------------------------------------------------------------------------
# splitting the unit


@dataclass
class ScdtReport:
    flat: bool
    faithfully_flat: bool
    unit_splits: ModuleHom | None
    method: str  # "trace", "feasibility", "composite" or "base change"
    rank: int | None = None
    witness: object = None
    notes: list = dc_field(default_factory=list)

    @property
    def splits(self) -> bool:
        return self.unit_splits is not None

    @property
    def descent_type(self) -> bool:
        return self.flat and self.splits


def _retracts(sigma: ModuleHom, eta: ModuleHom) -> bool:
    return (sigma @ eta).matrix == ExactMatrix.identity(eta.source.field, eta.source.dim)


def _structure_unit(phi: AlgebraMorphism) -> ModuleHom:
    """``R -> S``: phi itself, as a map of R-modules."""
    return ModuleHom(Module.regular(phi.source), restrict_scalars(phi, Module.regular(phi.target)),
                     phi.matrix, check=False)


def scdt_analyze(phi: AlgebraMorphism | AdjointPair, structure: Module | None = None) -> ScdtReport:
    """Flatness of phi and a retraction of the unit at the structure object.

    For a ring map the structure object is R itself.  The trace route is used
    when S is free of rank r over R with r invertible; otherwise a linear
    search decides.  For a general adjoint pair pass the structure object.
    """
    if isinstance(phi, AdjointPair) and not isinstance(phi, ExtensionAdjunction):
        pair = phi
        H = structure if structure is not None else getattr(pair, "structure", None)
        if H is None:
            raise AxiomError("a structure object is needed for a general adjoint pair")
        sigma = split_unit_check(pair, H)
        # restriction along an algebra map is exact and kills no nonzero module
        return ScdtReport(True, True, sigma, "feasibility")
    if isinstance(phi, ExtensionAdjunction):
        phi = phi.phi
    rep = flatness_report(phi)
    eta = _structure_unit(phi)
    F = phi.source.field
    notes = []
    witness = rep.faithful_witness if not rep.faithfully_flat else None
    if rep.free_rank is not None and free_basis(phi) is not None:
        r = rep.free_rank
        if F.norm(F(r)) != F.zero:
            tr = trace_map(phi)
            sigma = tr.scale(F.inv(F(r)))
            if not _retracts(sigma, eta):
                raise AxiomError("scaled trace does not retract the unit")
            return ScdtReport(rep.flat, rep.faithfully_flat, sigma, "trace", r, witness)
        notes.append(f"rank {r} is not invertible in {F}; trace route refused")
    sigma = retraction_of(eta)
    return ScdtReport(rep.flat, rep.faithfully_flat, sigma, "feasibility", rep.free_rank, witness, notes)


def scdt_compose(phi: AlgebraMorphism, psi: AlgebraMorphism) -> tuple[ScdtReport, ModuleHom | None]:
    """Retraction of ``R -> T`` as ``sigma_phi . P_*(sigma_psi)`` when both split."""
    if psi.source is not phi.target:
        raise AxiomError("morphisms are not composable")
    first, second = scdt_analyze(phi), scdt_analyze(psi)
    comp = psi @ phi
    rep = flatness_report(comp)
    eta = _structure_unit(comp)
    if not (first.splits and second.splits):
        return ScdtReport(rep.flat, rep.faithfully_flat, None, "composite", rep.free_rank), None
    # sigma_psi is S-linear T -> S; restricting along phi makes it R-linear
    outer = ModuleHom(restrict_scalars(phi, second.unit_splits.source),
                      restrict_scalars(phi, second.unit_splits.target), second.unit_splits.matrix, check=False)
    mat = first.unit_splits.matrix @ outer.matrix
    sigma = ModuleHom(eta.target, eta.source, mat, check=False)
    if not sigma.is_valid() or not _retracts(sigma, eta):
        return ScdtReport(rep.flat, rep.faithfully_flat, None, "composite", rep.free_rank,
                          notes=["composite map fails verification"]), None
    return ScdtReport(rep.flat, rep.faithfully_flat, sigma, "composite", rep.free_rank), sigma


def scdt_base_change(phi: AlgebraMorphism, chi: AlgebraMorphism) -> tuple[ScdtReport, AlgebraMorphism]:
    """Split unit of ``R' -> S (x)_R R'`` obtained by tensoring a retraction of phi with R'."""
    if chi.source is not phi.source:
        raise AxiomError("base change must start at the source of phi")
    base = scdt_analyze(phi)
    tp = tensor_product_over([phi, chi])
    phi2 = tp.insertions[1]
    R2 = chi.target
    F = R2.field
    rep = flatness_report(phi2)
    eta = _structure_unit(phi2)
    if not base.splits:
        return ScdtReport(rep.flat, rep.faithfully_flat, None, "base change", rep.free_rank), phi2
    sig = base.unit_splits.matrix  # R.dim x S.dim

    def on_pure(a: int, b: int) -> tuple:
        return R2.mul(chi(sig.col(a)), R2.basis_vector(b))

    # well defined: the formula must agree with the quotient on every pure basis tensor
    cols = []
    for j in tp.free:
        a, b = tp.multi_index(j)
        cols.append(on_pure(a, b))
    mat = ExactMatrix.from_columns(F, cols, R2.dim)
    for j in range(tp.ambient):
        a, b = tp.multi_index(j)
        if mat.apply(tp.q({j: F.one})) != on_pure(a, b):
            return ScdtReport(rep.flat, rep.faithfully_flat, None, "base change", rep.free_rank,
                              notes=["tensored retraction is not well defined"]), phi2
    sigma = ModuleHom(eta.target, eta.source, mat, check=False)
    ok = sigma.is_valid() and _retracts(sigma, eta)
    return ScdtReport(rep.flat, rep.faithfully_flat, sigma if ok else None, "base change", rep.free_rank), phi2


# ---------------------------------------------------------------------------
# finite groups


def equivariant_adjunction(action: GroupAction, F: FieldSpec) -> CoinductionAdjunction:
    """Forget the G-structure on bundles over X; its right adjoint is coinduction.

    The structure object is Fun(X) with G permuting the points.
    """
    B = groupoid_algebra(action, F)
    C = function_algebra(F, action.points)
    G = action.group
    cols = []
    for x in range(action.points):
        v = [F.zero] * B.dim
        v[x * G.order + G.identity] = F.one
        cols.append(tuple(v))
    iota = AlgebraMorphism(C, B, ExactMatrix.from_columns(F, cols, B.dim), check=False)
    pair = CoinductionAdjunction(iota)
    mats = []
    for x in range(action.points):
        for g in range(G.order):
            ent = {(x, y): F.one for y in range(action.points) if action(g, y) == x}
            mats.append(ExactMatrix.from_sparse(F, action.points, action.points, ent))
    pair.structure = Module(B, action.points, mats, name="Fun(X)")
    return pair


@dataclass
class MaschkeResult:
    group: str
    field: str
    present: bool
    retraction: ModuleHom | None
    averaging: bool  # the retraction is the averaging map


def maschke_split(G: FiniteGroup, F: FieldSpec) -> MaschkeResult:
    """G-equivariant retraction of constants into functions on G.

    Present exactly when one exists; when |G| is invertible the averaging map
    is built directly and verified.
    """
    pair = equivariant_adjunction(GroupAction.trivial(G), F)
    trivial = pair.structure
    eta = pair.unit(trivial)
    n = G.order
    if F.norm(F(n)) != F.zero:
        _, homs = pair._coinduced(pair.pull(trivial))
        scale = F.inv(F(n))
        # each coinduced basis map is a row of values on the group elements
        row = [F.norm(scale * sum(b.matrix.row(0), F.zero)) for b in homs.basis]
        avg = ModuleHom(eta.target, trivial, ExactMatrix.from_rows(F, [row], eta.target.dim), check=False)
        if avg.is_valid() and _retracts(avg, eta):
            return MaschkeResult(G.name, str(F), True, avg, True)
        raise AxiomError("averaging map failed verification")
    sigma = split_unit_check(pair, trivial)
    return MaschkeResult(G.name, str(F), sigma is not None, sigma, False)


@dataclass
class EquivariantDatum:
    """A bundle F over the G-set X with isomorphisms ``theta_g: F -> g^* F``.

    ``thetas[g]`` is a matrix on the underlying space of F sending the fibre
    at x to the fibre at g.x.
    """

    action: GroupAction
    bundle: Module
    thetas: list


def _point_idempotent(F: FieldSpec, n: int, x: int) -> tuple:
    return tuple(F.one if k == x else F.zero for k in range(n))


def translate(action: GroupAction, g: int, M: Module) -> Module:
    """``g^* M``: same space, the fibre at x is the old fibre at g.x."""
    A = M.algebra
    n = action.points
    mats = [M.act(_point_idempotent(A.field, n, action(g, x))) for x in range(n)]
    return Module(A, M.dim, mats, check=False, name=f"{action.group.labels[g]}^*{M.name}")


def check_equivariant(datum: EquivariantDatum) -> Verdict:
    act, M = datum.action, datum.bundle
    G = act.group
    F = M.field
    ident = ExactMatrix.identity(F, M.dim)
    if len(datum.thetas) != G.order:
        return Verdict(False, "count", "need one map per group element")
    if datum.thetas[G.identity] != ident:
        return Verdict(False, ("e",), "theta_e is not the identity")
    n = act.points
    for g, th in enumerate(datum.thetas):
        if not th.is_invertible():
            return Verdict(False, (g,), f"theta_{G.labels[g]} is not invertible")
        for x in range(n):
            ex = M.act(_point_idempotent(F, n, x))
            egx = M.act(_point_idempotent(F, n, act(g, x)))
            if th @ ex != egx @ th:
                return Verdict(False, (g,), f"theta_{G.labels[g]} does not send fibre {x} to fibre {act(g, x)}")
    for g in range(G.order):
        for h in range(G.order):
            if datum.thetas[G.mul(g, h)] != datum.thetas[g] @ datum.thetas[h]:
                return Verdict(False, (g, h), f"cocycle fails at ({G.labels[g]}, {G.labels[h]})")
    return Verdict(True)


def equivariant_hom_space(d1: EquivariantDatum, d2: EquivariantDatum) -> HomSpace:
    return hom_space(d1.bundle, d2.bundle).solve_subspace(
        lambda f: ExactMatrix.vstack(f.matrix.field, [t2 @ f.matrix - f.matrix @ t1
                                                      for t1, t2 in zip(d1.thetas, d2.thetas)]))


def equivariant_to_groupoid(datum: EquivariantDatum, B: Algebra | None = None) -> Module:
    """``e_x u_g`` acts as ``E_x theta_g``."""
    act, M = datum.action, datum.bundle
    G = act.group
    F = M.field
    B = B if B is not None else groupoid_algebra(act, F)
    mats = []
    for x in range(act.points):
        ex = M.act(_point_idempotent(F, act.points, x))
        for g in range(G.order):
            mats.append(ex @ datum.thetas[g])
    return Module(B, M.dim, mats, name="groupoid module")


def groupoid_to_equivariant(N: Module, action: GroupAction) -> EquivariantDatum:
    G = action.group
    F = N.field
    n = action.points
    base = function_algebra(F, n)
    fibres = [N.action[x * G.order + G.identity] for x in range(n)]
    bundle = Module(base, N.dim, fibres, name="bundle")
    thetas = []
    for g in range(G.order):
        th = ExactMatrix.zeros(F, N.dim, N.dim)
        for x in range(n):
            th = th + N.action[x * G.order + g]
        thetas.append(th)
    return EquivariantDatum(action, bundle, thetas)


def _roots_of_unity(F: FieldSpec, order: int) -> list:
    if F.characteristic:
        return [c for c in range(1, F.characteristic) if pow(c, order, F.characteristic) == 1]
    # the only roots of unity in Q
    return [F(1), F(-1)] if order % 2 == 0 else [F(1)]


def rank_one_data(action: GroupAction, F: FieldSpec) -> list[EquivariantDatum]:
    """All equivariant line bundles over a single point (characters of G)."""
    if action.points != 1:
        raise AxiomError("rank-one enumeration is implemented over a point")
    G = action.group
    base = function_algebra(F, 1)
    M = Module.free(base, 1)
    out = []
    roots = _roots_of_unity(F, G.order)
    for values in itertools.product(roots, repeat=G.order):
        if values[G.identity] != F.one:
            continue
        d = EquivariantDatum(action, M, [ExactMatrix.from_rows(F, [[v]]) for v in values])
        if check_equivariant(d):
            out.append(d)
    return out


def equivariant_iso_classes(data: Sequence[EquivariantDatum]) -> list[list[int]]:
    classes: list[list[int]] = []
    for i, d in enumerate(data):
        for cl in classes:
            if d.bundle.dim == data[cl[0]].bundle.dim and \
                    find_invertible(equivariant_hom_space(data[cl[0]], d)) is not None:
                cl.append(i)
                break
        else:
            classes.append([i])
    return classes


# ---------------------------------------------------------------------------
# bridge to descent data over the action nerve


def _block_maps(tcc: CosimplicialAlgebra, F: Module, g: int, which) -> ExactMatrix:
    """Linear embedding of F onto the g-block of ``P_which^* F`` over level 1.

    Sends v to ``chi_g . (1 (x) v)`` with chi_g the indicator of ``{g} x X``.
    """
    pts = tcc.points[2]
    Fd = tcc.field
    chi = tuple(Fd.one if p[0] == g else Fd.zero for p in pts)
    pulled = tcc.pull(which, F)
    return pulled.act(chi) @ tcc.unit(which, F).matrix


def theta_to_equivariant(obj: DescentObject) -> EquivariantDatum:
    """Read off ``theta_g`` from the g-block of a gluing map over the action nerve."""
    tcc = obj.tcc
    act = tcc.action
    thetas = []
    for g in range(act.group.order):
        J1 = _block_maps(tcc, obj.F, g, I1)
        J2 = _block_maps(tcc, obj.F, g, I2)
        left = J2.left_inverse()
        if left is None:
            raise AxiomError("block embedding is not injective")
        thetas.append(left @ obj.theta.matrix @ J1)
    return EquivariantDatum(act, obj.F, thetas)


def equivariant_to_theta(tcc: CosimplicialAlgebra, datum: EquivariantDatum) -> DescentObject:
    """Assemble the gluing map blockwise from the ``theta_g``."""
    F = datum.bundle
    A = tcc.algebra(1)
    if F.algebra is not A:
        # functions on X, possibly built separately; same point order
        if F.algebra.dim != A.dim:
            raise AxiomError("bundle does not live on the points of the nerve")
        F = Module(A, F.dim, F.action, check=False, name=F.name)
    src, tgt = tcc.pull(I1, F), tcc.pull(I2, F)
    total = ExactMatrix.zeros(tcc.field, tgt.dim, src.dim)
    for g, th in enumerate(datum.thetas):
        J1 = _block_maps(tcc, F, g, I1)
        J2 = _block_maps(tcc, F, g, I2)
        left1 = J1.left_inverse()
        # zero outside the g-block of the source
        pts = tcc.points[2]
        chi = tuple(tcc.field.one if p[0] == g else tcc.field.zero for p in pts)
        total = total + J2 @ th @ left1 @ src.act(chi)
    return DescentObject(tcc, F, ModuleHom(src, tgt, total, check=False))


def kern_rank_one_data(tcc: CosimplicialAlgebra) -> list[DescentObject]:
    """All gluing maps on the trivial line bundle over a one-point G-set."""
    act = tcc.action
    if act.points != 1:
        raise AxiomError("rank-one enumeration is implemented over a point")
    F = Module.free(tcc.algebra(1), 1)
    src, tgt = tcc.pull(I1, F), tcc.pull(I2, F)
    G = act.group
    Fd = tcc.field
    out = []
    for values in itertools.product(_roots_of_unity(Fd, G.order), repeat=G.order):
        # theta is Fun(G)-linear between rank-one free modules: one scalar per g-block
        J1 = [_block_maps(tcc, F, g, I1) for g in range(G.order)]
        J2 = [_block_maps(tcc, F, g, I2) for g in range(G.order)]
        total = ExactMatrix.zeros(Fd, tgt.dim, src.dim)
        for g in range(G.order):
            total = total + J2[g].scale(values[g]) @ J1[g].left_inverse()
        theta = ModuleHom(src, tgt, total, check=False)
        if not theta.is_valid():
            continue
        obj = DescentObject(tcc, F, theta)
        if check_descent_theta(tcc, obj):
            out.append(obj)
    return out


@dataclass
class KernBridge:
    ok: bool
    objects: int
    hom_pairs: int
    detail: str = ""


def equivariant_kern_bridge(tcc: CosimplicialAlgebra, data: Sequence[EquivariantDatum]) -> KernBridge:
    """Check the bijection between equivariant data and nerve descent data on samples.

    Each valid datum must give a valid gluing map and come back unchanged;
    hom dimensions must agree on every ordered pair.
    """
    objs = []
    for i, d in enumerate(data):
        if not check_equivariant(d):
            return KernBridge(False, i, 0, f"sample {i} is not a valid equivariant datum")
        obj = equivariant_to_theta(tcc, d)
        v = check_descent_theta(tcc, obj)
        if not v:
            return KernBridge(False, i, 0, f"sample {i}: {v.detail}")
        back = theta_to_equivariant(obj)
        if any(a != b for a, b in zip(back.thetas, d.thetas)):
            return KernBridge(False, i, 0, f"sample {i} does not round trip")
        objs.append(obj)
    pairs = 0
    for i, j in itertools.product(range(len(data)), repeat=2):
        pairs += 1
        a = equivariant_hom_space(data[i], data[j]).dim
        b = hom_descent(objs[i], objs[j]).dim
        if a != b:
            return KernBridge(False, len(objs), pairs, f"hom dims differ on ({i}, {j}): {a} vs {b}")
    return KernBridge(True, len(objs), pairs, f"passed on {len(objs)} objects")
