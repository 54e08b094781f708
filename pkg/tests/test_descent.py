from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from codescent.algmod import (
    AlgebraMorphism,
    FiniteGroup,
    GroupAction,
    Module,
    groupoid_algebra,
    quotient_ring,
    tensor_product_over,
)
from codescent.comonad import check_comodule
from codescent.cosimp import KernCategory, action_nerve_tcc, amitsur_tcc, check_descent_theta
from codescent.descent import (
    FAULTS,
    check_equivariant,
    equivariant_iso_classes,
    equivariant_kern_bridge,
    equivariant_to_groupoid,
    groupoid_to_equivariant,
    h_from_theta,
    inject_fault,
    kern_rank_one_data,
    maschke_split,
    random_descent_data,
    rank_one_data,
    scdt_analyze,
    scdt_base_change,
    scdt_compose,
    theta_from_h,
)
from codescent.exactlin import GF, QQ, ExactMatrix


@pytest.fixture(scope="module")
def quad_tcc(quadratic):
    return amitsur_tcc(quadratic, 2)


@given(st.integers(0, 10_000))
@settings(max_examples=8, deadline=None)
def test_dictionary_round_trip(quad_tcc, seed):
    (obj,) = random_descent_data(quad_tcc, 1, seed=seed, max_dim=2)
    c = h_from_theta(quad_tcc, obj)
    assert check_comodule(c)
    assert theta_from_h(quad_tcc, c).theta.matrix == obj.theta.matrix


@pytest.mark.parametrize("kind", FAULTS)
def test_faults_detected_on_both_sides(quad_tcc, kind):
    (obj,) = random_descent_data(quad_tcc, 1, seed=3, max_dim=2)
    broken = inject_fault(quad_tcc, obj, kind, seed=3)
    if kind in ("C1", "C2"):
        assert not check_comodule(broken)
        assert not check_descent_theta(quad_tcc, theta_from_h(quad_tcc, broken))
    else:
        assert not check_descent_theta(quad_tcc, broken)
        assert not check_comodule(h_from_theta(quad_tcc, broken))


def test_scdt_routes(quadratic, projection):
    rep = scdt_analyze(quadratic)
    assert rep.method == "trace" and rep.descent_type
    assert rep.unit_splits.matrix == ExactMatrix.from_rows(QQ, [[1, 0]])
    rep = scdt_analyze(projection)
    assert rep.flat and not rep.faithfully_flat and not rep.splits
    rep = scdt_analyze(AlgebraMorphism.structure_map(quotient_ring(GF(2), [1, 1, 1])))
    assert rep.method == "feasibility" and rep.splits


def test_scdt_composition_and_base_change(quadratic):
    other = AlgebraMorphism.structure_map(quotient_ring(QQ, [-3, 0, 1]))
    psi = tensor_product_over([quadratic, other]).insertions[0]
    rep, sigma = scdt_compose(quadratic, psi)
    assert rep.splits and rep.rank == 4 and sigma is not None
    rep, phi2 = scdt_base_change(quadratic, AlgebraMorphism.structure_map(quotient_ring(QQ, [1, 0, 1])))
    assert rep.splits and phi2.target.dim == 4


GROUPS = [FiniteGroup.cyclic(2), FiniteGroup.cyclic(3), FiniteGroup.cyclic(4), FiniteGroup.symmetric3()]


@pytest.mark.parametrize("G", GROUPS, ids=lambda g: g.name)
def test_maschke_boundary(G, any_field):
    p = any_field.characteristic
    res = maschke_split(G, any_field)
    assert res.present == (p == 0 or gcd(G.order, p) == 1)
    assert res.averaging == (res.present and (p == 0 or G.order % p != 0))


@pytest.mark.parametrize("field,classes", [(QQ, 2), (GF(2), 1), (GF(3), 2)])
def test_rank_one_classification_z2(field, classes):
    act = GroupAction.trivial(FiniteGroup.cyclic(2))
    data = rank_one_data(act, field)
    assert len(equivariant_iso_classes(data)) == classes
    tcc = action_nerve_tcc(act, field, truncation=2)
    assert len(KernCategory(tcc).iso_classes(kern_rank_one_data(tcc))) == classes
    assert equivariant_kern_bridge(tcc, data).ok


def test_groupoid_round_trip_s3():
    act = GroupAction.trivial(FiniteGroup.symmetric3())
    B = groupoid_algebra(act, QQ)
    datum = groupoid_to_equivariant(Module.regular(B), act)
    assert check_equivariant(datum)
    back = equivariant_to_groupoid(datum, B)
    assert all(a == b for a, b in zip(back.action, Module.regular(B).action))
    tcc = action_nerve_tcc(act, QQ, truncation=2)
    assert equivariant_kern_bridge(tcc, [datum]).ok


def test_regular_action_bridge():
    act = GroupAction.regular(FiniteGroup.cyclic(3))
    B = groupoid_algebra(act, QQ)
    datum = groupoid_to_equivariant(Module.regular(B), act)
    tcc = action_nerve_tcc(act, QQ, truncation=2)
    assert equivariant_kern_bridge(tcc, [datum]).ok
