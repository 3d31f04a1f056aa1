import random
from fractions import Fraction

import pytest

from truncpoisson import (
    AlgebraElement,
    Biderivation,
    Derivation,
    Matrix,
    TruncParams,
    chi1_basis,
    cohomology,
    column_space,
    cup,
    delta0_matrix,
    delta1_matrix,
    hamiltonian,
    is_poisson_derivation,
    multiply,
    normalize_one_cocycle,
    ring_table,
    solve,
)
from truncpoisson.checks import random_cocycle, random_derivation, random_element
from truncpoisson.cochain import bracket_derivation, delta1_apply, fibre_product_table

from oracles import independent_rank


def test_chi1_basis_2_2_order():
    p = TruncParams(2, 2)
    labels = [d.label() for d in chi1_basis(p)]
    assert labels == ["d_{1,0}", "d_{1,1}", "d'_{0,1}", "d'_{1,1}"]


def test_chi1_basis_counts():
    assert len(chi1_basis(TruncParams(2, 3))) == 7
    for a, b in [(2, 2), (3, 5), (6, 4)]:
        p = TruncParams(a, b)
        assert len(chi1_basis(p)) == b * (a - 1) + a * (b - 1)


def test_chi1_basis_satisfies_derivation_constraints():
    p = TruncParams(3, 4)
    xa1 = AlgebraElement.monomial(p, p.a - 1, 0)
    yb1 = AlgebraElement.monomial(p, 0, p.b - 1)
    for d in chi1_basis(p):
        assert multiply(xa1, d.dx).is_zero()
        assert multiply(yb1, d.dy).is_zero()


def test_derivation_constructor_rejects_bad_values():
    p = TruncParams(2, 2)
    with pytest.raises(ValueError):
        Derivation(p, AlgebraElement.monomial(p, 0, 1), AlgebraElement.zero(p))
    with pytest.raises(ValueError):
        Derivation(p, AlgebraElement.zero(p), AlgebraElement.monomial(p, 1, 0))


def test_hamiltonian_of_constants_is_zero():
    for a, b in [(2, 2), (4, 3)]:
        p = TruncParams(a, b)
        assert hamiltonian(AlgebraElement.one(p)).is_zero()
        assert hamiltonian(AlgebraElement.monomial(p, a - 1, b - 1)).is_zero()


def test_hamiltonian_of_x_at_2_2():
    # d(X) = {X,X} = 0 and d(Y) = {Y,X} = -X*Y, straight from the generator rule
    p = TruncParams(2, 2)
    d = hamiltonian(AlgebraElement.gen_x(p))
    assert d.dx.is_zero()
    assert d.dy == AlgebraElement.monomial(p, 1, 1, -1)


def test_hamiltonian_is_negative_bracket_derivation():
    rng = random.Random(21)
    p = TruncParams(4, 4)
    for _ in range(5):
        lam = random_element(p, rng)
        h = hamiltonian(lam)
        g = bracket_derivation(lam)
        assert h.dx == -g.dx and h.dy == -g.dy


HAND_DELTA0_2_2 = [
    [0, 0, 0, 0],  # d_{1,0} never appears in a hamiltonian at (2,2)
    [0, 1, 0, 0],  # {X, Y} = X*Y contributes to d_{1,1}
    [0, 0, 0, 0],
    [0, 0, -1, 0],  # {Y, X} = -X*Y contributes to d'_{1,1}
]


def test_delta0_matches_hand_matrix_at_2_2():
    p = TruncParams(2, 2)
    assert delta0_matrix(p) == Matrix.from_rows(HAND_DELTA0_2_2)
    assert independent_rank(HAND_DELTA0_2_2) == 2


def test_delta0_zero_columns_for_centre():
    for a, b in [(2, 2), (3, 4), (5, 3)]:
        p = TruncParams(a, b)
        m = delta0_matrix(p)
        assert all(x == 0 for x in m.column(p.index_of(0, 0)))
        assert all(x == 0 for x in m.column(p.index_of(a - 1, b - 1)))


def test_delta0_rank_is_ab_minus_2():
    for a in range(2, 8):
        for b in range(2, 8):
            p = TruncParams(a, b)
            assert column_space(delta0_matrix(p)).dim == a * b - 2


def test_delta1_zero_at_2_2():
    assert delta1_matrix(TruncParams(2, 2)).is_zero()


def test_delta1_rank_counts_nontrivial_constraints():
    # each nontrivial constraint row touches its own unknowns, so the rank is
    # the number of (i,j) pairs with (i,j) != (1,1)
    for a, b in [(2, 3), (3, 3), (4, 6), (6, 2)]:
        p = TruncParams(a, b)
        expected = (a - 1) * (b - 1) - 1
        assert independent_rank(delta1_matrix(p).data) == expected
    assert independent_rank(delta1_matrix(TruncParams(2, 3)).data) == 1


def test_delta_complex_property():
    for a in range(2, 13):
        for b in range(2, 13):
            p = TruncParams(a, b)
            assert (delta1_matrix(p) @ delta0_matrix(p)).is_zero()


def test_canonical_one_cocycles_in_kernel():
    for a, b in [(2, 2), (4, 5)]:
        p = TruncParams(a, b)
        d1 = delta1_matrix(p)
        for d in (Derivation.basis_d(p, 1, 0), Derivation.basis_dprime(p, 0, 1)):
            assert all(x == 0 for x in d1.apply(d.to_vector()))


def test_is_poisson_derivation_examples():
    p = TruncParams(2, 3)
    assert is_poisson_derivation(Derivation.basis_d(p, 1, 0))
    assert is_poisson_derivation(Derivation.zero(p))
    assert not is_poisson_derivation(Derivation.basis_dprime(p, 0, 2))


def test_is_poisson_derivation_agrees_with_kernel():
    for a, b in [(2, 3), (3, 4), (4, 3)]:
        p = TruncParams(a, b)
        rng = random.Random(f"predicate:{a}:{b}")
        d1 = delta1_matrix(p)
        for d in chi1_basis(p) + [random_derivation(p, rng) for _ in range(100)]:
            in_kernel = all(x == 0 for x in d1.apply(d.to_vector()))
            assert is_poisson_derivation(d) == in_kernel


def test_cohomology_dimensions_and_reps():
    for a, b in [(2, 2), (3, 4), (5, 3)]:
        p = TruncParams(a, b)
        r0, r1, r2 = (cohomology(p, k) for k in range(3))
        assert (r0.dimension, r1.dimension, r2.dimension) == (2, 2, 1)
        assert r0.representatives == (
            AlgebraElement.one(p),
            AlgebraElement.monomial(p, a - 1, b - 1),
        )
        assert r1.representatives == (
            Derivation.basis_d(p, 1, 0),
            Derivation.basis_dprime(p, 0, 1),
        )
        assert r2.representatives == (Biderivation.basis_f(p, 1, 1),)
        for r in (r0, r1, r2):
            assert r.dimension == r.cocycle_dim - r.coboundary_rank


def test_cohomology_vanishes_above_degree_2():
    p = TruncParams(3, 3)
    for k in (3, 4, 7):
        r = cohomology(p, k)
        assert r.dimension == 0
        assert r.representatives == ()


def test_normalize_already_normal():
    p = TruncParams(3, 4)
    res = normalize_one_cocycle(Derivation.basis_d(p, 1, 0))
    assert (res.c10, res.c01) == (1, 0)
    assert res.potential.is_zero()


def test_normalize_coboundary_to_zero():
    rng = random.Random(22)
    for a, b in [(2, 2), (4, 3)]:
        p = TruncParams(a, b)
        for _ in range(10):
            d = hamiltonian(random_element(p, rng))
            res = normalize_one_cocycle(d)
            assert (res.c10, res.c01) == (0, 0)
            assert d - hamiltonian(res.potential) == Derivation.zero(p)


def test_normalize_recovers_synthesized_coefficients():
    # oracle: solve d - c10*d10 - c01*d01 in Im(delta0) by elimination
    for a, b in [(2, 2), (3, 4), (5, 5)]:
        p = TruncParams(a, b)
        rng = random.Random(f"norm:{a}:{b}")
        d0 = delta0_matrix(p)
        d10 = Derivation.basis_d(p, 1, 0).to_vector()
        d01 = Derivation.basis_dprime(p, 0, 1).to_vector()
        system = Matrix.from_rows(
            [(d10[i], d01[i]) + row for i, row in enumerate(d0.data)]
        )
        for _ in range(20):
            d, c10, c01 = random_cocycle(p, rng)
            via_elimination = solve(system, d.to_vector())
            assert via_elimination is not None
            assert via_elimination[:2] == (c10, c01)
            res = normalize_one_cocycle(d)
            assert (res.c10, res.c01) == (c10, c01)
            recon = (
                Derivation.basis_d(p, 1, 0).scale(res.c10)
                + Derivation.basis_dprime(p, 0, 1).scale(res.c01)
                + hamiltonian(res.potential)
            )
            assert recon == d


def test_normalize_rejects_non_cocycle():
    p = TruncParams(2, 3)
    with pytest.raises(ValueError):
        normalize_one_cocycle(Derivation.basis_dprime(p, 0, 2))


def test_cup_d10_d01_is_f11():
    for a, b in [(2, 2), (4, 5)]:
        p = TruncParams(a, b)
        prod = cup(Derivation.basis_d(p, 1, 0), Derivation.basis_dprime(p, 0, 1))
        assert prod == Biderivation.basis_f(p, 1, 1)


def test_cup_top_monomial_annihilates_d10():
    for a, b in [(2, 2), (3, 4)]:
        p = TruncParams(a, b)
        top = AlgebraElement.monomial(p, a - 1, b - 1)
        prod = cup(top, Derivation.basis_d(p, 1, 0))
        assert prod.is_zero()


def test_cup_self_product_of_one_cochain_vanishes():
    rng = random.Random(23)
    p = TruncParams(4, 4)
    for _ in range(10):
        d = random_derivation(p, rng)
        assert cup(d, d).is_zero()


def test_cup_unit_is_identity():
    p = TruncParams(3, 3)
    one = AlgebraElement.one(p)
    d = Derivation.basis_d(p, 1, 0)
    f = Biderivation.basis_f(p, 1, 1)
    assert cup(one, d) == d
    assert cup(d, one) == d
    assert cup(one, f) == f


def test_cup_degree_overflow_raises():
    p = TruncParams(2, 2)
    with pytest.raises(ValueError):
        cup(Biderivation.basis_f(p, 1, 1), Derivation.basis_d(p, 1, 0))


def test_cup_well_defined_on_classes():
    # changing a 1-cocycle by a coboundary changes a degree-2 product by Im(delta1)
    for a, b in [(2, 2), (3, 4)]:
        p = TruncParams(a, b)
        rng = random.Random(f"cupwd:{a}:{b}")
        d1 = delta1_matrix(p)
        d0 = delta0_matrix(p)
        for _ in range(10):
            z, _, _ = random_cocycle(p, rng)
            zp, _, _ = random_cocycle(p, rng)
            lam = random_element(p, rng)
            shifted = cup(z + hamiltonian(lam), zp) - cup(z, zp)
            assert solve(d1, shifted.to_vector()) is not None
            # a central element times a coboundary stays a coboundary
            centre = AlgebraElement.monomial(p, a - 1, b - 1, Fraction(rng.randint(-3, 3)))
            shifted1 = cup(centre, hamiltonian(lam))
            assert solve(d0, shifted1.to_vector()) is not None


def test_f11_is_not_a_coboundary():
    for a in range(2, 7):
        for b in range(2, 7):
            p = TruncParams(a, b)
            target = Biderivation.basis_f(p, 1, 1).to_vector()
            assert solve(delta1_matrix(p), target) is None


def test_delta1_apply_matches_matrix():
    rng = random.Random(24)
    p = TruncParams(4, 3)
    m = delta1_matrix(p)
    for _ in range(10):
        d = random_derivation(p, rng)
        assert delta1_apply(d).to_vector() == m.apply(d.to_vector())


def test_ring_table_matches_reference():
    for a, b in [(2, 2), (5, 3)]:
        p = TruncParams(a, b)
        table = ring_table(p)
        assert table.matches_reference()


def test_ring_table_identities():
    p = TruncParams(3, 4)
    table = ring_table(p)
    zero = tuple(Fraction(0) for _ in range(5))
    m_coord = (Fraction(0),) * 4 + (Fraction(1),)
    assert table.product("v", "w") == m_coord
    assert table.product("w", "v") == tuple(-c for c in m_coord)
    assert table.product("t", "t") == zero
    for other in ("v", "w", "m"):
        assert table.product("t", other) == zero
    assert table.product("v", "v") == zero
    assert table.product("w", "w") == zero
    for label in ("1", "t", "v", "w", "m"):
        expected = [Fraction(0)] * 5
        expected[table.basis_labels.index(label)] = Fraction(1)
        assert table.product("1", label) == tuple(expected)


def test_fibre_product_table_shape():
    ref = fibre_product_table()
    assert len(ref) == 5 and all(len(row) == 5 for row in ref)
