"""Comonads from adjoint pairs, their comodules, and Beck-style checks.

An adjoint pair ``P^* -| P_*`` runs between a base category of modules (over
``R``) and a top category (over ``S``).  The comonad lives on the top
category: ``T = P^* P_*`` with counit the adjunction counit and
comultiplication ``delta = P^* eta P_*``.  Everything is evaluated on demand;
functors are never tabulated.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable, Sequence

from .algmod import (
    AlgebraMorphism,
    AxiomError,
    HomSpace,
    Module,
    ModuleHom,
    Verdict,
    adjunction_counit,
    adjunction_unit,
    direct_sum,
    extend_hom,
    extend_scalars,
    hom_space,
    primitive_idempotents,
    residue_field_module,
    restrict_hom,
    restrict_scalars,
)
from .exactlin import ExactMatrix, Subspace, linear_feasible

__all__ = [
    "AdjointPair",
    "ExtensionAdjunction",
    "CoinductionAdjunction",
    "Comonad",
    "Comodule",
    "ContractibleEqualizerDiagram",
    "BeckReport",
    "RestrictedComodules",
    "comonad_from_adjunction",
    "check_comodule",
    "comodule_hom_space",
    "comparison_functor",
    "comparison_hom",
    "cofree_comodule",
    "check_triangle_identities",
    "split_unit_check",
    "retraction_of",
    "is_contractible_equalizer",
    "is_equalizer_probe",
    "comodule_diagram",
    "split_unit_diagram",
    "restrict_equalizer_through_projectors",
    "projector_instance",
    "descend",
    "beck_report",
    "restrict_comodules",
    "restricted_comparison",
    "default_base_samples",
]


def _is_identity(u: ModuleHom) -> bool:
    return u.source.dim == u.target.dim and u.matrix == ExactMatrix.identity(u.matrix.field, u.source.dim)


class AdjointPair:
    """Interface for ``P^* -| P_*``: subclasses supply the six maps below."""

    base_algebra = None
    top_algebra = None

    def pull(self, H: Module) -> Module:
        raise NotImplementedError

    def pull_hom(self, u: ModuleHom) -> ModuleHom:
        raise NotImplementedError

    def push(self, F: Module) -> Module:
        raise NotImplementedError

    def push_hom(self, u: ModuleHom) -> ModuleHom:
        raise NotImplementedError

    def unit(self, H: Module) -> ModuleHom:
        """``H -> P_* P^* H``."""
        raise NotImplementedError

    def counit(self, F: Module) -> ModuleHom:
        """``P^* P_* F -> F``."""
        raise NotImplementedError

    @property
    def field(self):
        return self.base_algebra.field


class ExtensionAdjunction(AdjointPair):
    """Extension of scalars left adjoint to restriction along ``phi: R -> S``."""

    def __init__(self, phi: AlgebraMorphism):
        self.phi = phi
        self.base_algebra = phi.source
        self.top_algebra = phi.target

    def __repr__(self):
        return f"ExtensionAdjunction({self.phi.source.name} -> {self.phi.target.name})"

    def pull(self, H):
        return extend_scalars(self.phi, H)

    def pull_hom(self, u):
        return extend_hom(self.phi, u)

    def push(self, F):
        return restrict_scalars(self.phi, F)

    def push_hom(self, u):
        return restrict_hom(self.phi, u)

    def unit(self, H):
        return adjunction_unit(self.phi, H)

    def counit(self, F):
        return adjunction_counit(self.phi, F)


class CoinductionAdjunction(AdjointPair):
    """Restriction along ``iota: C -> B`` left adjoint to coinduction ``Hom_C(B, -)``.

    The base category is B-modules and the top is C-modules.  For the
    inclusion of functions into a groupoid algebra this is forgetting the
    equivariant structure, right adjoint "functions on the group".
    """

    def __init__(self, iota: AlgebraMorphism):
        self.iota = iota
        self.base_algebra = iota.target
        self.top_algebra = iota.source
        self._coind: dict = {}
        self._regular_over_top = restrict_scalars(iota, Module.regular(iota.target))

    def __repr__(self):
        return f"CoinductionAdjunction({self.iota.source.name} -> {self.iota.target.name})"

    def pull(self, H):
        return restrict_scalars(self.iota, H)

    def pull_hom(self, u):
        return restrict_hom(self.iota, u)

    def _coinduced(self, F: Module) -> tuple[Module, HomSpace]:
        hit = self._coind.get(id(F))
        if hit is not None and hit[0] is F:
            return hit[1], hit[2]
        B = self.base_algebra
        homs = hom_space(self._regular_over_top, F)
        mats = []
        for i in range(B.dim):
            right = B.right_matrix(B.basis_vector(i))
            cols = [homs.coordinates(b.matrix @ right) for b in homs.basis]
            mats.append(ExactMatrix.from_columns(B.field, cols, homs.dim) if cols
                        else ExactMatrix.zeros(B.field, 0, 0))
        mod = Module(B, homs.dim, mats, check=False, name=f"coind {F.name}")
        self._coind[id(F)] = (F, mod, homs)
        return mod, homs

    def push(self, F):
        return self._coinduced(F)[0]

    def push_hom(self, u):
        src, homs = self._coinduced(u.source)
        tgt, homs2 = self._coinduced(u.target)
        F = self.field
        cols = [homs2.coordinates(u.matrix @ b.matrix) for b in homs.basis]
        mat = ExactMatrix.from_columns(F, cols, tgt.dim) if cols else ExactMatrix.zeros(F, tgt.dim, 0)
        return ModuleHom(src, tgt, mat, check=False)

    def unit(self, H):
        B = self.base_algebra
        F = B.field
        target, homs = self._coinduced(self.pull(H))
        cols = []
        for j in range(H.dim):
            m = tuple(F.one if k == j else F.zero for k in range(H.dim))
            # the C-linear map b -> b . m
            X = ExactMatrix.from_columns(F, [H.action[b].apply(m) for b in range(B.dim)], H.dim)
            cols.append(homs.coordinates(X))
        mat = ExactMatrix.from_columns(F, cols, target.dim) if cols else ExactMatrix.zeros(F, target.dim, 0)
        return ModuleHom(H, target, mat, check=False)

    def counit(self, F_mod):
        B = self.base_algebra
        F = B.field
        coind, homs = self._coinduced(F_mod)
        cols = [b.matrix.apply(B.unit) for b in homs.basis]
        mat = ExactMatrix.from_columns(F, cols, F_mod.dim) if cols else ExactMatrix.zeros(F, F_mod.dim, 0)
        return ModuleHom(self.pull(coind), F_mod, mat, check=False)


def check_triangle_identities(pair: AdjointPair, base: Iterable[Module] = (),
                              top: Iterable[Module] = ()) -> Verdict:
    """``counit_{P^*H} . P^*(unit_H) = 1`` and ``P_*(counit_F) . unit_{P_*F} = 1``."""
    for H in base:
        one = pair.counit(pair.pull(H)) @ pair.pull_hom(pair.unit(H))
        if not _is_identity(one):
            return Verdict(False, H, "counit . P^*(unit) is not the identity")
    for F in top:
        two = pair.push_hom(pair.counit(F)) @ pair.unit(pair.push(F))
        if not _is_identity(two):
            return Verdict(False, F, "P_*(counit) . unit is not the identity")
    return Verdict(True)


# ---------------------------------------------------------------------------
# comonads and comodules


class Comonad:
    """``T = P^* P_*`` on the top category with counit and comultiplication."""

    def __init__(self, pair: AdjointPair):
        self.pair = pair

    def __repr__(self):
        return f"Comonad({self.pair!r})"

    def apply(self, F: Module) -> Module:
        return self.pair.pull(self.pair.push(F))

    def apply_hom(self, u: ModuleHom) -> ModuleHom:
        return self.pair.pull_hom(self.pair.push_hom(u))

    def counit(self, F: Module) -> ModuleHom:
        return self.pair.counit(F)

    def comultiplication(self, F: Module) -> ModuleHom:
        return self.pair.pull_hom(self.pair.unit(self.pair.push(F)))

    def check_axioms(self, samples: Iterable[Module]) -> Verdict:
        for F in samples:
            delta = self.comultiplication(F)
            TF = self.apply(F)
            if not _is_identity(self.apply_hom(self.counit(F)) @ delta):
                return Verdict(False, F, "T(counit) . delta is not the identity")
            if not _is_identity(self.counit(TF) @ delta):
                return Verdict(False, F, "counit_T . delta is not the identity")
            left = self.apply_hom(delta) @ delta
            right = self.comultiplication(TF) @ delta
            if left.matrix != right.matrix:
                return Verdict(False, F, "delta is not coassociative")
        return Verdict(True)


def default_base_samples(algebra, max_dim: int = 4) -> list[Module]:
    """Zero, residue fields (commutative case) and the regular module when small."""
    out = [Module.zero(algebra)]
    if algebra.commutative:
        for e in primitive_idempotents(algebra):
            K = residue_field_module(algebra, e)
            if K.dim <= max_dim:
                out.append(K)
    if algebra.dim <= max_dim:
        out.append(Module.regular(algebra))
    return out


def comonad_from_adjunction(pair: AdjointPair | AlgebraMorphism, samples: Iterable[Module] | None = None,
                            max_dim: int = 4) -> Comonad:
    """Build and verify the comonad; rejects pairs failing the triangle identities."""
    if isinstance(pair, AlgebraMorphism):
        pair = ExtensionAdjunction(pair)
    base = list(samples) if samples is not None else default_base_samples(pair.base_algebra, max_dim)
    top = [pair.pull(H) for H in base] + default_base_samples(pair.top_algebra, max_dim)
    tri = check_triangle_identities(pair, base, top)
    if not tri:
        raise AxiomError(f"not an adjunction: {tri.detail}")
    T = Comonad(pair)
    ax = T.check_axioms(top)
    if not ax:
        raise AxiomError(f"comonad axioms fail: {ax.detail}")
    return T


@dataclass
class Comodule:
    comonad: Comonad
    obj: Module
    coaction: ModuleHom


def check_comodule(c: Comodule) -> Verdict:
    T, F, h = c.comonad, c.obj, c.coaction
    if h.source.dim != F.dim or h.target.dim != T.apply(F).dim:
        return Verdict(False, "shape", "coaction has the wrong shape")
    if not h.is_valid():
        return Verdict(False, "linearity", "coaction is not a module map")
    if not _is_identity(T.counit(F) @ h):
        return Verdict(False, 1, "counit . h is not the identity")
    if (T.comultiplication(F) @ h).matrix != (T.apply_hom(h) @ h).matrix:
        return Verdict(False, 2, "delta . h differs from T(h) . h")
    return Verdict(True)


def comodule_hom_space(c1: Comodule, c2: Comodule) -> HomSpace:
    """Maps f with ``h2 f = T(f) h1``."""
    T = c1.comonad
    return hom_space(c1.obj, c2.obj).solve_subspace(
        lambda f: (c2.coaction @ f).matrix - (T.apply_hom(f) @ c1.coaction).matrix)


def comparison_functor(T: Comonad, H: Module) -> Comodule:
    """``H -> (P^* H, P^*(unit_H))``."""
    pair = T.pair
    return Comodule(T, pair.pull(H), pair.pull_hom(pair.unit(H)))


def comparison_hom(T: Comonad, u: ModuleHom) -> ModuleHom:
    return T.pair.pull_hom(u)


def cofree_comodule(T: Comonad, F: Module) -> Comodule:
    return Comodule(T, T.apply(F), T.comultiplication(F))


def retraction_of(eta: ModuleHom) -> ModuleHom | None:
    """Some module map sigma with ``sigma . eta = 1``, or None."""
    H = eta.source
    F = H.field
    if H.dim == 0:
        return ModuleHom(eta.target, H, ExactMatrix.zeros(F, 0, eta.target.dim), check=False)
    homs = hom_space(eta.target, H)
    target = ExactMatrix.identity(F, H.dim).entries_flat()
    images = [(b @ eta).matrix.entries_flat() for b in homs.basis]
    rows = [({k: img[i] for k, img in enumerate(images) if img[i]}, target[i]) for i in range(len(target))]
    sol = linear_feasible(rows, homs.dim, F)
    if sol is None:
        return None
    return homs.element(sol)


def split_unit_check(pair: AdjointPair | Comonad, H: Module) -> ModuleHom | None:
    """A base-category retraction of ``unit_H``, or None when none exists."""
    if isinstance(pair, Comonad):
        pair = pair.pair
    return retraction_of(pair.unit(H))


# ---------------------------------------------------------------------------
# contractible equalizers


@dataclass
class ContractibleEqualizerDiagram:
    """``d: A -> B``, ``d1, d2: B -> C`` with ``s: B -> A`` and ``t: C -> B``."""

    d: ModuleHom
    d1: ModuleHom
    d2: ModuleHom
    s: ModuleHom
    t: ModuleHom


def is_contractible_equalizer(diag: ContractibleEqualizerDiagram) -> Verdict:
    d, d1, d2, s, t = diag.d, diag.d1, diag.d2, diag.s, diag.t
    if (d1 @ d).matrix != (d2 @ d).matrix:
        return Verdict(False, "d1 d = d2 d", "the two legs do not agree on d")
    if not _is_identity(s @ d):
        return Verdict(False, "s d = 1", "s is not a retraction of d")
    if not _is_identity(t @ d1):
        return Verdict(False, "t d1 = 1", "t is not a retraction of d1")
    if (t @ d2).matrix != (d @ s).matrix:
        return Verdict(False, "t d2 = d s", "t d2 differs from d s")
    return Verdict(True)


def is_equalizer_probe(d: ModuleHom, d1: ModuleHom, d2: ModuleHom, tests: Iterable[Module]) -> Verdict:
    """Universal property of ``d`` against maps out of each test object.

    Equalizers are kernels of ``d1 - d2`` here, so the check is that
    composing with d maps ``Hom(X, A)`` bijectively onto maps into that kernel.
    """
    diff = d1 - d2
    if not (diff @ d).is_zero():
        return Verdict(False, None, "d does not equalize the pair")
    count = 0
    for X in tests:
        count += 1
        into_A = hom_space(X, d.source)
        into_B = hom_space(X, d.target)
        kernel = into_B.solve_subspace(lambda g: (diff @ g).matrix)
        images = [(d @ a).matrix.entries_flat() for a in into_A.basis]
        span = Subspace.span(d.matrix.field, X.dim * d.target.dim, images)
        if span.dim != into_A.dim:
            return Verdict(False, X, "composition with d is not injective")
        if span.dim != kernel.dim:
            return Verdict(False, X, "some map equalizing the pair does not factor through d")
    return Verdict(True, None, f"passed on {count} test objects")


def comodule_diagram(c: Comodule) -> ContractibleEqualizerDiagram:
    """``F -> TF => T^2 F`` with ``s = counit_F`` and ``t = counit_TF``."""
    T, h = c.comonad, c.coaction
    TF = T.apply(c.obj)
    return ContractibleEqualizerDiagram(
        d=h, d1=T.comultiplication(c.obj), d2=T.apply_hom(h), s=T.counit(c.obj), t=T.counit(TF))


def split_unit_diagram(pair: AdjointPair, H: Module, retraction: ModuleHom) -> ContractibleEqualizerDiagram:
    """``H -> GH => G^2 H`` for ``G = P_* P^*`` contracted by a retraction of the unit."""
    eta = pair.unit(H)
    GH = eta.target
    G = lambda u: pair.push_hom(pair.pull_hom(u))  # noqa: E731
    return ContractibleEqualizerDiagram(d=eta, d1=G(eta), d2=pair.unit(GH), s=retraction, t=G(retraction))


def _split(e: ModuleHom) -> tuple[ModuleHom, ModuleHom]:
    """Image submodule of an idempotent: (inclusion, projection onto it)."""
    if not e.matrix.is_idempotent():
        raise AxiomError("projector is not idempotent")
    M = e.source
    image = e.matrix.column_space()
    sub, incl = M.submodule(image)
    if image.dim:
        proj = image.coordinate_matrix() @ e.matrix
    else:
        proj = ExactMatrix.zeros(M.field, 0, M.dim)
    return incl, ModuleHom(M, sub, proj, check=False)


def restrict_equalizer_through_projectors(diag: ContractibleEqualizerDiagram, pi1: ModuleHom,
                                          pi2: ModuleHom) -> ContractibleEqualizerDiagram:
    """Cut a contractible equalizer down to the images of compatible projectors.

    Needs ``pi2 d_i = d_i pi1`` and ``pi1 t = t pi2``; the induced projector on
    the source is ``s pi1 d``.
    """
    checks = [
        ("pi2 d1 = d1 pi1", pi2 @ diag.d1, diag.d1 @ pi1),
        ("pi2 d2 = d2 pi1", pi2 @ diag.d2, diag.d2 @ pi1),
        ("pi1 t = t pi2", pi1 @ diag.t, diag.t @ pi2),
    ]
    for name, a, b in checks:
        if a.matrix != b.matrix:
            raise AxiomError(f"projectors are not compatible: {name} fails")
    pi = diag.s @ pi1 @ diag.d
    sigma, rho = _split(pi)
    sigma1, rho1 = _split(pi1)
    sigma2, rho2 = _split(pi2)
    return ContractibleEqualizerDiagram(
        d=rho1 @ diag.d @ sigma,
        d1=rho2 @ diag.d1 @ sigma1,
        d2=rho2 @ diag.d2 @ sigma1,
        s=rho @ diag.s @ sigma1,
        t=rho1 @ diag.t @ sigma2,
    )


def projector_instance(pair: AdjointPair, rank: int, rng: random.Random):
    """Split-unit diagram on a free module of the given rank with compatible projectors.

    The retraction is block diagonal, so it commutes with the coordinate
    projector onto a random set of blocks; both are then conjugated by a
    random automorphism.  Returns ``(diagram, pi1, pi2, e)``.
    """
    B = pair.base_algebra
    F = B.field
    R = Module.regular(B)
    sigma_R = split_unit_check(pair, R)
    if sigma_R is None:
        raise AxiomError("the unit of the regular module does not split")
    G = lambda u: pair.push_hom(pair.pull_hom(u))  # noqa: E731
    H, incs, projs = direct_sum([R] * rank)
    GH = pair.unit(H).target
    sigma = None
    for inc, proj in zip(incs, projs):
        piece = inc @ sigma_R @ G(proj).with_ends(GH, pair.unit(R).target)
        sigma = piece if sigma is None else sigma + piece
    chosen = [i for i in range(rank) if rng.random() < 0.5] or [rng.randrange(rank)]
    e = H.zero_map(H)
    for i in chosen:
        e = e + incs[i] @ projs[i]
    ends = hom_space(H, H)
    u = None
    for _ in range(50):
        cand = ends.element([F(rng.randint(-2, 2)) for _ in range(ends.dim)])
        if cand.is_iso():
            u = cand
            break
    if u is not None:
        u_inv = u.inverse()
        e = u @ e @ u_inv
        sigma = u @ sigma @ G(u_inv).with_ends(GH, GH)
    diag = split_unit_diagram(pair, H, sigma)
    pi1 = G(e).with_ends(GH, GH)
    GGH = diag.d1.target
    pi2 = G(pi1).with_ends(GGH, GGH)
    return diag, pi1, pi2, e


# ---------------------------------------------------------------------------
# descend and the Beck report


@dataclass
class Descended:
    base: Module
    inclusion: ModuleHom
    iso: ModuleHom  # P^* base -> comodule object, a comodule isomorphism


def descend(c: Comodule) -> Descended | None:
    """Kernel of ``P_* h - unit_{P_* F}`` and the comparison iso onto c, when it is one."""
    T = c.comonad
    pair = T.pair
    F, h = c.obj, c.coaction
    pushed_h = pair.push_hom(h)
    eta = pair.unit(pair.push(F))
    if pushed_h.target.dim != eta.target.dim:
        raise AxiomError("coaction target does not match T F")
    diff = pushed_h.matrix - eta.matrix
    H, incl = pushed_h.source.submodule(diff.kernel())
    iso = T.counit(F) @ pair.pull_hom(incl)
    if not iso.is_iso():
        return None
    # comodule map Phi(H) -> c
    phi_h = comparison_functor(T, H).coaction
    if (h @ iso).matrix != (T.apply_hom(iso) @ phi_h).matrix:
        return None
    return Descended(H, incl, iso)


@dataclass
class BeckReport:
    samples: int
    unit_split: list = dc_field(default_factory=list)
    abelian_criterion: Verdict = None
    conservativity: Verdict = None
    faithfulness: Verdict = None
    full_faithfulness: Verdict = None
    reconstruction: Verdict = None

    @property
    def all_units_split(self) -> bool:
        return all(s is not None for s in self.unit_split)

    @property
    def ok(self) -> bool:
        return all(bool(v) for v in (self.abelian_criterion, self.conservativity, self.faithfulness,
                                     self.full_faithfulness, self.reconstruction))

    def summary(self) -> dict:
        def word(v: Verdict):
            return v.detail if v else f"counterexample found: {v.detail}"
        return {
            "samples": self.samples,
            "unit_split": [s is not None for s in self.unit_split],
            "abelian_criterion": word(self.abelian_criterion),
            "conservativity": word(self.conservativity),
            "faithfulness": word(self.faithfulness),
            "full_faithfulness": word(self.full_faithfulness),
            "reconstruction": word(self.reconstruction),
        }


def _probe_morphisms(samples: Sequence[Module], rng: random.Random) -> list[ModuleHom]:
    """Maps to and from zero, identities and a few random endomorphisms."""
    out = []
    for H in samples:
        if H.dim == 0:
            continue
        Z = Module.zero(H.algebra)
        out.append(H.zero_map(Z))
        out.append(Z.zero_map(H))
        out.append(H.identity())
        ends = hom_space(H, H)
        for _ in range(2):
            if ends.dim:
                out.append(ends.element([H.field(rng.randint(-2, 2)) for _ in range(ends.dim)]))
    return out


def beck_report(pair: AdjointPair | Comonad, samples: Sequence[Module] | None = None,
                morphisms: Sequence[ModuleHom] | None = None, seed: int = 0, max_dim: int = 4) -> BeckReport:
    """Sampled Beck criteria: split units, conservativity, faithfulness, hom dimensions, descend."""
    T = pair if isinstance(pair, Comonad) else Comonad(pair)
    pair = T.pair
    rng = random.Random(seed)
    samples = list(samples) if samples is not None else default_base_samples(pair.base_algebra, max_dim)
    probes = list(morphisms) if morphisms is not None else _probe_morphisms(samples, rng)
    rep = BeckReport(samples=len(samples))
    rep.unit_split = [split_unit_check(pair, H) for H in samples]

    killed = [H for H in samples if H.dim and pair.pull(H).dim == 0]
    rep.abelian_criterion = (Verdict(False, killed[0], f"P^* kills a nonzero module of dim {killed[0].dim}")
                             if killed else Verdict(True, None, f"passed on {len(samples)} samples"))

    bad = next((u for u in probes if not u.is_iso() and pair.pull_hom(u).is_iso()), None)
    rep.conservativity = (Verdict(False, bad, f"non-invertible map {bad.source.dim}->{bad.target.dim} "
                                              "becomes invertible")
                          if bad is not None else Verdict(True, None, f"passed on {len(probes)} morphisms"))

    bad = next((u for u in probes if not u.is_zero() and pair.pull_hom(u).is_zero()), None)
    rep.faithfulness = (Verdict(False, bad, f"nonzero map {bad.source.dim}->{bad.target.dim} is sent to zero")
                        if bad is not None else Verdict(True, None, f"passed on {len(probes)} morphisms"))

    mismatch = None
    pairs = 0
    phis = [comparison_functor(T, H) for H in samples]
    for i, H1 in enumerate(samples):
        for j, H2 in enumerate(samples):
            pairs += 1
            a = hom_space(H1, H2).dim
            b = comodule_hom_space(phis[i], phis[j]).dim
            if a != b and mismatch is None:
                mismatch = (i, j, a, b)
    rep.full_faithfulness = (Verdict(False, mismatch, f"hom dims differ on samples {mismatch[:2]}: "
                                                      f"{mismatch[2]} vs {mismatch[3]}")
                             if mismatch else Verdict(True, None, f"passed on {pairs} pairs"))

    failed = None
    for i, (H, c) in enumerate(zip(samples, phis)):
        got = descend(c)
        if got is None or got.base.dim != H.dim:
            failed = i
            break
    rep.reconstruction = (Verdict(False, failed, f"descend fails on sample {failed}")
                          if failed is not None else Verdict(True, None, f"passed on {len(samples)} samples"))
    return rep


# ---------------------------------------------------------------------------
# restriction to subcategories


@dataclass
class RestrictedComodules:
    comonad: Comonad
    predicate: Callable[[Module], bool]
    hom_predicate: Callable[[ModuleHom], bool] | None = None

    def contains(self, c: Comodule) -> bool:
        return bool(self.predicate(c.obj))

    def hom_allowed(self, f: ModuleHom) -> bool:
        return self.hom_predicate is None or bool(self.hom_predicate(f))

    def hom(self, c1: Comodule, c2: Comodule) -> HomSpace:
        if not (self.contains(c1) and self.contains(c2)):
            raise AxiomError("comodule outside the restricted category")
        return comodule_hom_space(c1, c2)


def restrict_comodules(T: Comonad, predicate: Callable[[Module], bool],
                       hom_predicate: Callable[[ModuleHom], bool] | None = None) -> RestrictedComodules:
    return RestrictedComodules(T, predicate, hom_predicate)


def restricted_comparison(restricted: RestrictedComodules,
                          candidates: Iterable[Module]) -> list[tuple[Module, Comodule]]:
    """Base objects whose pullback lies in the subcategory, with their comodules."""
    T = restricted.comonad
    out = []
    for H in candidates:
        if restricted.predicate(T.pair.pull(H)):
            out.append((H, comparison_functor(T, H)))
    return out

