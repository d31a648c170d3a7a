import random
from fractions import Fraction

import pytest

from diagalg.diagrams import Diagram, DiagramAlgebra, DiagramError, DiagramKind, elt_scale
from diagalg.fields import PrimeField, RationalField
from diagalg.input_algebra import cyclic_group_algebra, trivial_input_algebra

Q = RationalField()


def fr(c):
    return Fraction(c)


def brauer(n, delta="1", field=Q):
    A = trivial_input_algebra(field, field.parse(delta))
    return DiagramAlgebra(DiagramKind.abrauer(n), A)


def cyclo(n, r, deltas, field=Q):
    A = cyclic_group_algebra(field, r, [field.parse(d) for d in deltas])
    return DiagramAlgebra(DiagramKind.abrauer(n), A)


def walled(r, t, delta="1", field=Q):
    A = trivial_input_algebra(field, field.parse(delta))
    return DiagramAlgebra(DiagramKind.walled(r, t), A)


# -- enumeration ------------------------------------------------------------

def test_basis_counts_match_closed_forms():
    assert len(brauer(2).basis()) == 3            # (2n-1)!!
    assert len(brauer(3).basis()) == 15
    assert len(brauer(4).basis()) == 105
    assert len(walled(1, 1).basis()) == 2         # (r+t)!
    assert len(walled(2, 2).basis()) == 24
    assert len(cyclo(1, 3, ["1", "1", "1"]).basis()) == 3   # r^n (2n-1)!!
    assert len(cyclo(2, 2, ["1", "1"]).basis()) == 12


def test_partial_counts():
    # n! / (l! (n-2l)! 2^l) times (dim A)^l
    assert len(brauer(4).enumerate_partials(1)) == 6
    assert len(brauer(4).enumerate_partials(2)) == 3
    assert len(cyclo(4, 2, ["1", "1"]).enumerate_partials(1)) == 12
    # walled: binom(r,l) binom(t,l) l!
    assert len(walled(2, 2).enumerate_partials(1)) == 4
    assert len(walled(2, 2).enumerate_partials(2)) == 2
    assert len(walled(3, 2).enumerate_partials(2)) == 6


def test_walled_basis_is_wall_legal():
    dalg = walled(2, 1)
    for d in dalg.basis():
        dalg.check_diagram(d)


# -- generators --------------------------------------------------------------

def test_swap_diagram_picture():
    dalg = brauer(3)
    (d, c), = dalg.swap(2).items()
    assert c == Q.one
    assert d == Diagram(((0, 3, 0), (1, 5, 0), (2, 4, 0)))


def test_label_generator_picture():
    dalg = cyclo(2, 3, ["1", "1", "1"])
    (d, c), = dalg.label_generator(1, 2).items()
    assert d == Diagram(((0, 2, 2), (1, 3, 0)))


def test_walled_cup_generator_picture():
    dalg = walled(2, 1)
    (d, c), = dalg.cup_generator(2, 3).items()
    assert d == Diagram(((0, 3, 0), (1, 2, 0), (4, 5, 0)))


def test_generator_range_errors():
    with pytest.raises(DiagramError):
        brauer(3).swap(3)
    with pytest.raises(DiagramError):
        walled(2, 2).swap(2)          # would cross the wall
    with pytest.raises(DiagramError):
        walled(2, 2).cup_generator(1, 2)  # both left of the wall


# -- multiplication -----------------------------------------------------------

def test_swap_squares_to_identity():
    dalg = brauer(2)
    s = dalg.swap(1)
    assert dalg.mul(s, s) == dalg.identity()


def test_cup_squares_to_delta_cup():
    dalg = brauer(2, delta="5")
    e = dalg.cup_generator(1)
    assert dalg.mul(e, e) == elt_scale(Q, fr(5), e)


def test_cup_label_cup_contracts_to_trace():
    dalg = cyclo(2, 3, ["9", "4", "4"])
    e = dalg.cup_generator(1)
    for m, want in ((0, fr(9)), (1, fr(4)), (2, fr(4))):
        h = dalg.label_generator(1, m)
        prod = dalg.mul(dalg.mul(e, h), e)
        assert prod == elt_scale(Q, want, e)


def test_walled_cup_squares_to_delta_cup():
    dalg = walled(1, 1, delta="3")
    e = dalg.cup_generator(1, 2)
    assert dalg.mul(e, e) == elt_scale(Q, fr(3), e)


def test_product_of_wall_legal_is_wall_legal():
    dalg = walled(2, 2)
    rng = random.Random(0)
    basis = dalg.basis()
    for _ in range(50):
        d1, d2 = rng.choice(basis), rng.choice(basis)
        for d in dalg.mul_diagrams(d1, d2):
            dalg.check_diagram(d)


def test_filtration_horizontal_count_grows():
    dalg = brauer(3)
    n = dalg.kind.n
    basis = dalg.basis()
    for d1 in basis:
        for d2 in basis:
            low = max(d1.horizontal_count(n), d2.horizontal_count(n))
            for d in dalg.mul_diagrams(d1, d2):
                assert d.horizontal_count(n) >= low


@pytest.mark.parametrize("make", [
    lambda: brauer(2, delta="3"),
    lambda: brauer(3, delta="0"),
    lambda: cyclo(2, 2, ["2", "1"]),
    lambda: walled(2, 1, delta="2"),
])
def test_associativity_exhaustive_small(make):
    dalg = make()
    basis = dalg.basis()
    for d1 in basis:
        for d2 in basis:
            for d3 in basis:
                x = {d1: Q.one}
                lhs = dalg.mul(dalg.mul(x, {d2: Q.one}), {d3: Q.one})
                rhs = dalg.mul(x, dalg.mul({d2: Q.one}, {d3: Q.one}))
                assert lhs == rhs


def test_associativity_sampled_n4():
    dalg = brauer(4, delta="2")
    basis = dalg.basis()
    rng = random.Random(0)
    for _ in range(300):
        d1, d2, d3 = (rng.choice(basis) for _ in range(3))
        lhs = dalg.mul(dalg.mul({d1: Q.one}, {d2: Q.one}), {d3: Q.one})
        rhs = dalg.mul({d1: Q.one}, dalg.mul({d2: Q.one}, {d3: Q.one}))
        assert lhs == rhs


# -- involution ---------------------------------------------------------------

def test_involution_fixes_swap():
    dalg = brauer(2)
    s = dalg.swap(1)
    assert dalg.involution(s) == s


def test_involution_inverts_cyclic_label():
    dalg = cyclo(1, 3, ["1", "1", "1"])
    h1 = dalg.label_generator(1, 1)
    h2 = dalg.label_generator(1, 2)
    assert dalg.involution(h1) == h2


def test_involution_is_involutive_on_basis():
    for dalg in (brauer(3), cyclo(2, 3, ["1", "1", "1"]), walled(2, 1)):
        for d in dalg.basis():
            assert dalg.involution(dalg.involution({d: Q.one})) == {d: Q.one}


def test_involution_antihomomorphism_random():
    dalg = cyclo(2, 3, ["5", "2", "2"])
    basis = dalg.basis()
    rng = random.Random(1)
    for _ in range(60):
        d1, d2 = rng.choice(basis), rng.choice(basis)
        lhs = dalg.involution(dalg.mul({d1: Q.one}, {d2: Q.one}))
        rhs = dalg.mul(dalg.involution({d2: Q.one}), dalg.involution({d1: Q.one}))
        assert lhs == rhs


# -- idempotents ----------------------------------------------------------------

def idempotent_cases():
    yield brauer(2, delta="2"), [0, 1]
    yield brauer(3, delta="-1"), [0, 1]
    yield brauer(4, delta="3"), [0, 1, 2]
    yield brauer(3, delta="0"), [0, 1]
    yield brauer(5, delta="0"), [0, 1, 2]
    yield cyclo(2, 2, ["3", "1"]), [0, 1]
    yield cyclo(3, 2, ["0", "0"]), [0, 1]
    yield walled(2, 2, delta="4"), [0, 1, 2]
    yield walled(2, 1, delta="0"), [0, 1]
    yield walled(1, 2, delta="0"), [0, 1]
    yield walled(3, 3, delta="0"), [0, 1, 2]
    yield walled(2, 2, delta="0"), [0, 1]


def test_layer_idempotents_square_to_themselves():
    for dalg, layers in idempotent_cases():
        for l in layers:
            e = dalg.layer_idempotent(l)
            assert dalg.mul(e, e) == e, (dalg.kind, l)


def test_layer_zero_is_identity():
    assert brauer(3).layer_idempotent(0) == brauer(3).identity()


def test_delta_zero_even_n_refused():
    with pytest.raises(DiagramError):
        brauer(4, delta="0").layer_idempotent(1)


def test_delta_zero_walled_needs_free_column():
    with pytest.raises(DiagramError):
        walled(1, 1, delta="0").layer_idempotent(1)


def test_prefactor_example():
    dalg = brauer(2, delta="2")
    e = dalg.layer_idempotent(1)
    (d, c), = e.items()
    assert c == Fraction(1, 2)
    assert d == Diagram(((0, 1, 0), (2, 3, 0)))


# -- layer factorization ----------------------------------------------------------

def test_factorize_roundtrip_exhaustive():
    for dalg in (brauer(3), cyclo(2, 2, ["1", "1"]), walled(2, 1)):
        n = dalg.kind.n
        for d in dalg.basis():
            l = d.horizontal_count(n)
            top, bottom, key = dalg.layer_factorize(d)
            assert len(top.edges) == len(bottom.edges) == l
            assert dalg.layer_assemble_key(top, bottom, key) == d


def test_factorize_of_identity_is_identity_perm():
    dalg = brauer(3)
    (d, _), = dalg.identity().items()
    top, bottom, (labels, perm) = dalg.layer_factorize(d)
    assert top.edges == () and bottom.edges == ()
    assert perm == (0, 1, 2)
    assert labels == (0, 0, 0)


def test_layer_basis_partition():
    dalg = brauer(4)
    total = sum(len(dalg.layer_basis(l)) for l in range(dalg.layer_bound() + 1))
    assert total == len(dalg.basis())


def test_mixed_field():
    F5 = PrimeField(5)
    dalg = brauer(2, delta="2", field=F5)
    e = dalg.cup_generator(1)
    assert dalg.mul(e, e) == elt_scale(F5, F5.from_int(2), e)
