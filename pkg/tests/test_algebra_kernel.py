from fractions import Fraction

import pytest

from diagalg.algebra_kernel import (
    AlgebraError,
    check_algebra_map,
    corner_algebra,
    direct_sum,
    ext1,
    find_isomorphism,
    free_module,
    free_presentation,
    generated_subalgebra_dim,
    hom_space,
    ideal_span,
    is_two_sided_ideal,
    pullback_module,
    quotient_algebra,
    regular_bimodule,
    regular_module,
    RightModule,
    submodule,
    quotient_module,
    tensor_over,
    zero_module,
)
from diagalg.diagrams import DiagramAlgebra, DiagramKind, diagram_fin_algebra, elt_scale
from diagalg.fields import PrimeField, RationalField
from diagalg.input_algebra import (
    cyclic_group_algebra,
    perm_sign,
    trivial_input_algebra,
    wreath_product,
)

Q = RationalField()


def fr(c):
    return Fraction(c)


def brauer_alg(n, delta="1", field=Q):
    A = trivial_input_algebra(field, field.parse(delta))
    dalg = DiagramAlgebra(DiagramKind.abrauer(n), A)
    return dalg, diagram_fin_algebra(dalg)


def walled_alg(r, t, delta="1", field=Q):
    A = trivial_input_algebra(field, field.parse(delta))
    dalg = DiagramAlgebra(DiagramKind.walled(r, t), A)
    return dalg, diagram_fin_algebra(dalg)


def group_algebra_sn(m, field=Q):
    return wreath_product(trivial_input_algebra(field, field.one), m)


def one_dim_module(W, scalar_of_key):
    F = W.field
    action = []
    for key in W.basis_keys:
        c = scalar_of_key(key)
        action.append([{0: c}] if not F.is_zero(c) else [{}])
    return RightModule(W, 1, action)


def trivial_module(W):
    return one_dim_module(W, lambda key: W.field.one)


def sign_module(W):
    return one_dim_module(W, lambda key: W.field.from_int(perm_sign(key[1])))


# -- diagram FinAlgebra basics -------------------------------------------------

def test_diagram_algebra_is_associative_and_unital():
    for make in (lambda: brauer_alg(2, "3")[1], lambda: brauer_alg(3, "0")[1],
                 lambda: walled_alg(2, 1, "2")[1]):
        alg = make()
        assert alg.check_unital() is None
        assert alg.check_associative() is None
        assert alg.check_involution() is None


def test_diagram_generators_generate():
    for alg in (brauer_alg(2)[1], brauer_alg(3)[1], walled_alg(2, 1)[1], walled_alg(2, 2)[1]):
        assert generated_subalgebra_dim(alg) == alg.dim
    A = cyclic_group_algebra(Q, 2, [fr(1), fr(0)])
    dalg = DiagramAlgebra(DiagramKind.abrauer(2), A)
    alg = diagram_fin_algebra(dalg)
    assert generated_subalgebra_dim(alg) == alg.dim == 12


# -- ideals and quotients ---------------------------------------------------------

def test_ideal_generated_by_cup_in_b2():
    dalg, alg = brauer_alg(2, "3")
    e = dalg.cup_generator(1)
    e_vec = {alg.key_index[d]: c for d, c in e.items()}
    ech = ideal_span(alg, [e_vec])
    assert ech.dim == 1
    assert is_two_sided_ideal(alg, ech) is None


def test_ideal_of_zero_generator():
    _, alg = brauer_alg(2)
    assert ideal_span(alg, [{}]).dim == 0


def test_ideal_generated_by_cup_in_d3():
    dalg, alg = brauer_alg(3, "1")
    e = dalg.cup_generator(1)
    e_vec = {alg.key_index[d]: c for d, c in e.items()}
    ech = ideal_span(alg, [e_vec])
    assert ech.dim == 9    # 15 - dim RS_3


def test_quotient_dimensions():
    dalg, alg = brauer_alg(2, "4")
    e_vec = {alg.key_index[d]: c for d, c in dalg.cup_generator(1).items()}
    quot, proj = quotient_algebra(alg, ideal_span(alg, [e_vec]))
    assert quot.dim == 2
    assert quot.check_associative() is None

    wd, walg = walled_alg(1, 1, "2")
    e_vec = {walg.key_index[d]: c for d, c in wd.cup_generator(1, 2).items()}
    quot2, _ = quotient_algebra(walg, ideal_span(walg, [e_vec]))
    assert quot2.dim == 1


def test_quotient_by_zero_ideal_is_copy():
    _, alg = brauer_alg(2, "1")
    quot, proj = quotient_algebra(alg, ideal_span(alg, [{}]))
    assert quot.dim == alg.dim
    for i in range(alg.dim):
        for j in range(alg.dim):
            assert quot.mul_basis(i, j) == alg.mul_basis(i, j)


# -- corners -------------------------------------------------------------------

def test_corner_of_unit_is_whole_algebra():
    _, alg = brauer_alg(2, "1")
    corner = corner_algebra(alg, alg.unit)
    assert corner.algebra.dim == alg.dim


def test_corner_of_scaled_cup_is_one_dimensional():
    dalg, alg = brauer_alg(2, "5")
    e = elt_scale(Q, fr("1/5"), dalg.cup_generator(1))
    e_vec = {alg.key_index[d]: c for d, c in e.items()}
    corner = corner_algebra(alg, e_vec)
    assert corner.algebra.dim == 1
    assert corner.algebra.check_unital() is None


def test_corner_of_cup_in_d4_delta_one():
    dalg, alg = brauer_alg(4, "1")
    e_vec = {alg.key_index[d]: c for d, c in dalg.cup_generator(3).items()}
    corner = corner_algebra(alg, e_vec)
    assert corner.algebra.dim == 3   # isomorphic to the 2-strand algebra
    assert corner.algebra.check_associative() is None


def test_corner_requires_idempotent():
    dalg, alg = brauer_alg(2, "5")
    e_vec = {alg.key_index[d]: c for d, c in dalg.cup_generator(1).items()}
    with pytest.raises(AlgebraError):
        corner_algebra(alg, e_vec)


# -- hom spaces ---------------------------------------------------------------

def test_hom_regular_regular_group_algebra_s2():
    W = group_algebra_sn(2)
    R = regular_module(W)
    assert len(hom_space(R, R)) == 2


def test_hom_between_distinct_simples_is_zero():
    W = group_algebra_sn(2)
    assert len(hom_space(trivial_module(W), sign_module(W))) == 0
    assert len(hom_space(trivial_module(W), trivial_module(W))) == 1


def test_hom_maps_are_module_maps():
    W = group_algebra_sn(3)
    R = regular_module(W)
    for h in hom_space(R, trivial_module(W)):
        assert h.is_module_map()


# -- tensor ---------------------------------------------------------------------

def test_tensor_with_regular_bimodule_is_identity():
    W = group_algebra_sn(2)
    for M in (regular_module(W), trivial_module(W), sign_module(W)):
        T, _, _ = tensor_over(M, regular_bimodule(W))
        assert T.dim == M.dim
        assert find_isomorphism(M, T) is not None


def test_tensor_additivity():
    W = group_algebra_sn(2)
    M = direct_sum(trivial_module(W), sign_module(W))
    T, _, _ = tensor_over(M, regular_bimodule(W))
    assert T.dim == 2


def test_tensor_with_sign_twisted_bimodule():
    W = group_algebra_sn(2)
    S = regular_bimodule(W, right_twist=lambda b: W.field.from_int(perm_sign(W.basis_keys[b][1])))
    assert S.check_commuting() is None
    T, _, _ = tensor_over(regular_module(W), S)
    assert T.dim == 2


def test_free_module_is_module():
    W = group_algebra_sn(2)
    assert free_module(W, 2).check() is None


# -- presentations and ext -------------------------------------------------------

def test_presentation_of_free_module_has_zero_kernel():
    W = group_algebra_sn(2)
    pres = free_presentation(regular_module(W))
    assert pres.cover_rank == 1      # the regular module is cyclic
    assert pres.kernel.dim == 0


def test_presentation_of_trivial_module_over_fp_cyclic():
    F3 = PrimeField(3)
    W = wreath_product(cyclic_group_algebra(F3, 3, [F3.one] * 3), 1)
    triv = one_dim_module(W, lambda key: F3.one)
    pres = free_presentation(triv)
    assert pres.cover.dim == 3
    assert pres.kernel.dim == 2      # augmentation ideal of F_3[Z/3]
    assert pres.kernel.check() is None


def test_rank_nullity():
    W = group_algebra_sn(2)
    for M in (regular_module(W), direct_sum(trivial_module(W), regular_module(W))):
        pres = free_presentation(M)
        assert pres.cover.dim - pres.kernel.dim == M.dim


def test_ext1_vanishes_for_semisimple():
    W = group_algebra_sn(2)   # char 0: semisimple
    for M in (trivial_module(W), sign_module(W), regular_module(W)):
        for N in (trivial_module(W), sign_module(W)):
            assert ext1(M, N) == 0


def test_ext1_selfextension_of_trivial_cyclic_p():
    F5 = PrimeField(5)
    W = wreath_product(cyclic_group_algebra(F5, 5, [F5.one] * 5), 1)
    triv = one_dim_module(W, lambda key: F5.one)
    assert ext1(triv, triv) == 1


def test_ext1_from_free_is_zero():
    F5 = PrimeField(5)
    W = wreath_product(cyclic_group_algebra(F5, 5, [F5.one] * 5), 1)
    triv = one_dim_module(W, lambda key: F5.one)
    assert ext1(regular_module(W), triv) == 0


# -- pullbacks ----------------------------------------------------------------------

def test_pullback_along_identity():
    W = group_algebra_sn(2)
    M = trivial_module(W)
    idrows = [W.basis_vec(i) for i in range(W.dim)]
    P = pullback_module(M, idrows, W)
    assert P.dim == M.dim
    assert P.check() is None


def test_pullback_rejects_non_map():
    W = group_algebra_sn(2)
    M = trivial_module(W)
    bad = [W.basis_vec(i) for i in range(W.dim)]
    bad[1] = {1: fr(2)}   # scaling the swap breaks multiplicativity
    with pytest.raises(AlgebraError):
        pullback_module(M, bad, W)


def test_check_algebra_map_identity():
    W = group_algebra_sn(2)
    idrows = [W.basis_vec(i) for i in range(W.dim)]
    assert check_algebra_map(W, W, idrows) is None


# -- submodule / quotient machinery ---------------------------------------------------

def test_submodule_and_quotient_split_regular_s2():
    W = group_algebra_sn(2)
    R = regular_module(W)
    # span of (1 + s): a copy of the trivial module inside the regular module
    F = W.field
    v = {0: F.one, 1: F.one}
    sub, incl = submodule(R, [v, R.act(v, W.basis_vec(1))])
    assert sub.dim == 1
    quot, proj = quotient_module(R, [v])
    assert quot.dim == 1
    assert incl.is_module_map() and proj.is_module_map()


def test_zero_module():
    W = group_algebra_sn(2)
    assert zero_module(W).dim == 0
