import itertools

import pytest
from hypothesis import given, settings, strategies as st

from codescent.algmod import (
    AlgebraMorphism,
    AxiomError,
    FiniteGroup,
    GroupAction,
    Module,
    ModuleHom,
    adjunction_counit,
    adjunction_unit,
    direct_sum,
    extend_hom,
    extend_scalars,
    flatness_report,
    free_basis,
    group_algebra,
    groupoid_algebra,
    hom_space,
    primitive_idempotents,
    product_algebra,
    field_algebra,
    quotient_ring,
    radical,
    restrict_scalars,
    tensor_power_over,
    tensor_product_over,
    trace_map,
)
from codescent.exactlin import GF, QQ, ExactMatrix


def _brute_force_hom_dim(M, N):
    """Count all F_p-linear maps commuting with the action; the count is p^dim."""
    F = M.field
    p = F.characteristic
    count = 0
    for entries in itertools.product(range(p), repeat=M.dim * N.dim):
        rows = [entries[i * M.dim:(i + 1) * M.dim] for i in range(N.dim)]
        f = ExactMatrix.from_rows(F, rows, M.dim)
        if all(f @ M.action[b] == N.action[b] @ f for b in range(M.algebra.dim)):
            count += 1
    return count


@pytest.mark.parametrize("coeffs", [[1, 1, 1], [0, 0, 1], [0, 1, 1]])
def test_hom_dims_over_f2_against_enumeration(coeffs):
    A = quotient_ring(GF(2), coeffs)
    R = Module.regular(A)
    mods = [R] + [Module.free(A, 1)]
    mods += [M for M in (R.quotient(radical(A))[0],) if M.dim]
    for M, N in itertools.product(mods, repeat=2):
        assert 2 ** hom_space(M, N).dim == _brute_force_hom_dim(M, N)


@pytest.mark.parametrize("G", [FiniteGroup.cyclic(2), FiniteGroup.cyclic(3), FiniteGroup.cyclic(4),
                               FiniteGroup.symmetric3()], ids=lambda g: g.name)
def test_group_algebra_axioms(G, any_field):
    A = group_algebra(G, any_field)
    A.validate()
    assert A.dim == G.order
    assert A.commutative == (G.name != "S3")
    R = Module.regular(A)
    assert hom_space(R, R).dim == A.dim


def test_quotient_ring_and_idempotents():
    S = quotient_ring(QQ, [0, -1, 0, 1])  # x^3 - x
    idems = primitive_idempotents(S)
    assert len(idems) == 3
    for e, f in itertools.product(idems, repeat=2):
        prod = S.mul(e, f)
        assert prod == (e if e == f else S.zero())
    total = S.zero()
    for e in idems:
        total = S.add(total, e)
    assert total == S.unit
    with pytest.raises(AxiomError):
        quotient_ring(QQ, [1, 2])  # not monic of degree >= 1 in the required form


def test_radical_dimensions():
    assert radical(quotient_ring(QQ, [0, 0, 1])).dim == 1
    assert radical(quotient_ring(QQ, [-2, 0, 1])).dim == 0
    assert radical(quotient_ring(GF(2), [1, 0, 1])).dim == 1  # x^2 + 1 = (x + 1)^2


def test_flatness_and_faithfulness():
    P, projs = product_algebra([field_algebra(QQ), field_algebra(QQ)])
    rep = flatness_report(projs[0])
    assert rep.flat and not rep.faithfully_flat
    assert rep.faithful_witness is not None
    rep = flatness_report(AlgebraMorphism.structure_map(P))
    assert rep.flat and rep.faithfully_flat and rep.free_rank == 2
    quad = AlgebraMorphism.structure_map(quotient_ring(QQ, [-2, 0, 1]))
    assert len(free_basis(quad)) == 2
    # trace of 1 is the rank, trace of x is zero
    assert trace_map(quad).matrix == ExactMatrix.from_rows(QQ, [[2, 0]])


def test_extension_and_adjunction_triangles():
    phi = AlgebraMorphism.structure_map(quotient_ring(QQ, [-2, 0, 1]))
    R = phi.source
    for H in (Module.free(R, 1), Module.free(R, 2)):
        FH = extend_scalars(phi, H)
        assert FH.dim == 2 * H.dim
        eta = adjunction_unit(phi, H)
        eps = adjunction_counit(phi, FH)
        one = eps @ extend_hom(phi, eta)
        assert one.matrix == ExactMatrix.identity(QQ, FH.dim)
    N = Module.regular(phi.target)
    two = restrict_scalars(phi, adjunction_counit(phi, N).target)
    assert two.dim == 2


def test_direct_sum_and_submodules():
    A = group_algebra(FiniteGroup.cyclic(2), QQ)
    R = Module.regular(A)
    S, incs, projs = direct_sum([R, R])
    assert S.dim == 4
    for i, (inc, proj) in enumerate(zip(incs, projs)):
        assert (proj @ inc).matrix == ExactMatrix.identity(QQ, 2)
        assert (projs[1 - i] @ inc).is_zero()
    invariants = R.span_of([(QQ(1), QQ(1))])
    sub, incl = R.submodule(invariants)
    assert sub.dim == 1 and incl.is_valid()
    Q, proj = R.quotient(invariants)
    assert Q.dim == 1 and (proj @ incl).is_zero()


def test_invalid_module_rejected():
    A = group_algebra(FiniteGroup.cyclic(2), QQ)
    swap = ExactMatrix.from_rows(QQ, [[0, 1], [1, 0]])
    with pytest.raises(AxiomError):
        Module(A, 2, [swap, swap])  # the identity element must act as 1
    R = Module.regular(A)
    with pytest.raises(AxiomError):
        ModuleHom(R, R, ExactMatrix.from_rows(QQ, [[1, 0], [0, 0]]))


def test_groupoid_algebra_semisimplicity_hint():
    act = GroupAction.trivial(FiniteGroup.cyclic(2), 1)
    assert groupoid_algebra(act, QQ)._cache["semisimple"]
    assert not groupoid_algebra(act, GF(2))._cache["semisimple"]
    free = GroupAction.regular(FiniteGroup.cyclic(2))
    assert groupoid_algebra(free, GF(2))._cache["semisimple"]


def test_tensor_products():
    phi = AlgebraMorphism.structure_map(quotient_ring(QQ, [-2, 0, 1]))
    tp = tensor_power_over(phi, 2)
    assert tp.algebra.dim == 4
    psi = AlgebraMorphism.structure_map(quotient_ring(QQ, [-3, 0, 1]))
    mixed = tensor_product_over([phi, psi])
    assert mixed.algebra.dim == 4
    mixed.algebra.validate()
    # x (x) 1 squares to 2
    x = mixed.pure([phi.target.basis_vector(1), psi.target.unit])
    assert mixed.algebra.mul(x, x) == mixed.algebra.scale(QQ(2), mixed.algebra.unit)


@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4))
@settings(max_examples=40, deadline=None)
def test_hom_space_elements_commute_with_action(coeffs):
    A = group_algebra(FiniteGroup.cyclic(2), QQ)
    R = Module.regular(A)
    S, _, _ = direct_sum([R, Module(A, 1, [ExactMatrix.identity(QQ, 1)] * 2)])
    H = hom_space(R, S)
    f = H.element([QQ(c) for c in coeffs[:H.dim]])
    assert f.is_valid()
    assert H.coordinates(f) == tuple(QQ(c) for c in coeffs[:H.dim])
