import random

import pytest

from codescent.algmod import (
    AlgebraMorphism,
    AxiomError,
    FiniteGroup,
    GroupAction,
    Module,
    ModuleHom,
    field_algebra,
    groupoid_algebra,
    quotient_ring,
)
from codescent.comonad import (
    CoinductionAdjunction,
    Comodule,
    ExtensionAdjunction,
    beck_report,
    check_comodule,
    check_triangle_identities,
    cofree_comodule,
    comodule_diagram,
    comonad_from_adjunction,
    comparison_functor,
    descend,
    is_contractible_equalizer,
    is_equalizer_probe,
    projector_instance,
    restrict_equalizer_through_projectors,
    split_unit_check,
    split_unit_diagram,
)
from codescent.exactlin import GF, QQ, ExactMatrix


@pytest.fixture(scope="module")
def quad_comonad(quadratic):
    return comonad_from_adjunction(quadratic)


def test_comonad_axioms(quad_comonad):
    samples = [Module.regular(quad_comonad.pair.phi.target)]
    assert quad_comonad.check_axioms(samples)
    assert quad_comonad.apply(samples[0]).dim == 4


def test_cofree_and_comparison_comodules(quad_comonad):
    T = quad_comonad
    S = T.pair.phi.target
    assert check_comodule(cofree_comodule(T, Module.regular(S)))
    c = comparison_functor(T, Module.free(T.pair.phi.source, 2))
    assert check_comodule(c)
    assert is_contractible_equalizer(comodule_diagram(c))


def test_zero_coaction_breaks_counit_law(quad_comonad):
    T = quad_comonad
    F = Module.regular(T.pair.phi.target)
    v = check_comodule(Comodule(T, F, F.zero_map(T.apply(F))))
    assert not v and v.witness == 1


@pytest.mark.parametrize("coeffs", [[-2, 0, 1], [0, 0, 1], [1, 0, 1]])
def test_triangle_identities_for_extension(coeffs):
    phi = AlgebraMorphism.structure_map(quotient_ring(QQ, coeffs))
    pair = ExtensionAdjunction(phi)
    base = [Module.free(phi.source, d) for d in (0, 1, 2)]
    top = [Module.regular(phi.target)]
    assert check_triangle_identities(pair, base, top)


def test_split_unit_diagram_is_contractible(quadratic):
    pair = ExtensionAdjunction(quadratic)
    H = Module.free(quadratic.source, 2)
    sigma = split_unit_check(pair, H)
    assert sigma is not None
    diag = split_unit_diagram(pair, H, sigma)
    assert is_contractible_equalizer(diag)
    assert is_equalizer_probe(diag.d, diag.d1, diag.d2, [Module.free(quadratic.source, 1)])


def test_descend_recovers_base(quad_comonad):
    T = quad_comonad
    H = Module.free(T.pair.phi.source, 3)
    got = descend(comparison_functor(T, H))
    assert got is not None and got.base.dim == 3 and got.iso.is_iso()


def test_beck_report_on_faithful_and_unfaithful(quadratic, projection):
    assert beck_report(ExtensionAdjunction(quadratic)).ok
    rep = beck_report(ExtensionAdjunction(projection))
    assert not rep.ok
    assert not rep.abelian_criterion and not rep.faithfulness


@pytest.mark.parametrize("field,splits", [(QQ, True), (GF(2), False), (GF(3), True)])
def test_coinduction_unit_splits_iff_order_invertible(field, splits):
    act = GroupAction.trivial(FiniteGroup.cyclic(2))
    B = groupoid_algebra(act, field)
    pair = CoinductionAdjunction(AlgebraMorphism.structure_map(B))
    trivial = Module(B, 1, [ExactMatrix.identity(field, 1)] * 2)
    assert check_triangle_identities(pair, [trivial, Module.regular(B)], [Module.free(field_algebra(field), 1)])
    assert (split_unit_check(pair, trivial) is not None) == splits


@pytest.mark.parametrize("seed", range(6))
def test_projector_restriction(quadratic, seed):
    pair = ExtensionAdjunction(quadratic)
    diag, pi1, pi2, e = projector_instance(pair, 2, random.Random(seed))
    small = restrict_equalizer_through_projectors(diag, pi1, pi2)
    assert is_contractible_equalizer(small)
    assert small.d.source.dim == e.matrix.rank()


def test_incompatible_projectors_refused(quadratic):
    pair = ExtensionAdjunction(quadratic)
    diag, pi1, pi2, _ = projector_instance(pair, 2, random.Random(0))
    GH = pi1.source
    # a projector of G H that ignores the module structure of H
    e = ExactMatrix.from_sparse(QQ, GH.dim, GH.dim, {(0, 0): QQ(1), (0, 1): QQ(1)})
    bad = ModuleHom(GH, GH, e, check=False)
    with pytest.raises(AxiomError):
        restrict_equalizer_through_projectors(diag, bad, pi2)
