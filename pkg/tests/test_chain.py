import random
from fractions import Fraction

import pytest

from truncpoisson import (
    AlgebraElement,
    ChainElement,
    TruncParams,
    TwistParams,
    bracket,
    duality_report,
    homology,
    module_bracket,
    multiply,
    omega_dims,
    partial1_matrix,
    partial2_matrix,
)
from truncpoisson.chain import DX, DY, omega1_indices, omega2_indices
from truncpoisson.checks import random_twist


def count_basis_directly(a, b):
    # counting oracle: enumerate the form bases one index at a time
    deg0 = [(i, j) for i in range(a) for j in range(b)]
    deg1 = [(i, j, "dX") for i in range(a - 1) for j in range(b)]
    deg1 += [(i, j, "dY") for i in range(a) for j in range(b - 1)]
    deg2 = [(i, j) for i in range(a - 1) for j in range(b - 1)]
    return (len(deg0), len(deg1), len(deg2))


def test_omega_dims_against_counting_oracle():
    assert omega_dims(TruncParams(2, 2)) == count_basis_directly(2, 2) == (4, 4, 1)
    assert omega_dims(TruncParams(2, 3)) == count_basis_directly(2, 3) == (6, 7, 2)
    for a in range(2, 9):
        for b in range(2, 9):
            p = TruncParams(a, b)
            assert omega_dims(p) == count_basis_directly(a, b)
            assert len(omega1_indices(p)) == omega_dims(p)[1]
            assert len(omega2_indices(p)) == omega_dims(p)[2]


def test_omega_dims_alternating_sum():
    for a in range(2, 12):
        for b in range(2, 12):
            d0, d1, d2 = omega_dims(TruncParams(a, b))
            assert d0 - d1 + d2 == 1


def test_module_bracket_trivial_twist_is_intrinsic():
    t = TwistParams.trivial()
    for a, b in [(2, 2), (4, 3), (3, 5)]:
        p = TruncParams(a, b)
        x, y = AlgebraElement.gen_x(p), AlgebraElement.gen_y(p)
        for (i, j) in p.monomials():
            m = AlgebraElement.monomial(p, i, j)
            assert module_bracket(t, m, "X") == bracket(m, x)
            assert module_bracket(t, m, "Y") == bracket(m, y)


def test_module_bracket_nakayama_formula():
    for a, b in [(2, 2), (4, 5)]:
        p = TruncParams(a, b)
        t = TwistParams.nakayama(p)
        for (i, j) in p.monomials():
            m = AlgebraElement.monomial(p, i, j)
            expected = AlgebraElement(p, {(i + 1, j): Fraction(-(j - b + 1))}) if i + 1 < a else AlgebraElement.zero(p)
            assert module_bracket(t, m, "X") == expected


def test_module_bracket_truncates_at_top_x_power():
    rng = random.Random(31)
    p = TruncParams(3, 4)
    for _ in range(10):
        t = random_twist(rng)
        for j in range(p.b):
            m = AlgebraElement.monomial(p, p.a - 1, j)
            assert module_bracket(t, m, "X").is_zero()


def test_module_bracket_leibniz():
    # {m*u, g} = m*{u,g} + {m,g}_t*u with the intrinsic bracket in the middle
    p = TruncParams(3, 4)
    rng = random.Random(32)
    x, y = AlgebraElement.gen_x(p), AlgebraElement.gen_y(p)
    for _ in range(5):
        t = random_twist(rng)
        for (i, j) in p.monomials():
            for (k, l) in p.monomials():
                m = AlgebraElement.monomial(p, i, j)
                u = AlgebraElement.monomial(p, k, l)
                for g, gen in (("X", x), ("Y", y)):
                    lhs = module_bracket(t, multiply(m, u), g)
                    rhs = multiply(m, bracket(u, gen)) + multiply(module_bracket(t, m, g), u)
                    assert lhs == rhs


PARTIAL1_2_2_TRIVIAL_IMAGES = ["0", "-X*Y", "0", "X*Y"]
PARTIAL1_2_2_NAKAYAMA_IMAGES = ["X", "0", "-Y", "0"]


def test_partial1_hand_images_at_2_2():
    p = TruncParams(2, 2)
    for t, expected in (
        (TwistParams.trivial(), PARTIAL1_2_2_TRIVIAL_IMAGES),
        (TwistParams.nakayama(p), PARTIAL1_2_2_NAKAYAMA_IMAGES),
    ):
        m = partial1_matrix(p, t)
        rendered = [
            ChainElement.from_vector(p, 0, m.column(c)).render() for c in range(m.cols)
        ]
        assert rendered == expected


def test_partial1_ranks_at_2_2():
    p = TruncParams(2, 2)
    from truncpoisson import column_space

    triv = column_space(partial1_matrix(p, TwistParams.trivial()))
    assert triv.dim == 1
    assert triv.vectors[0] == AlgebraElement.monomial(p, 1, 1).to_vector()
    nak = column_space(partial1_matrix(p, TwistParams.nakayama(p)))
    assert nak.dim == 2
    assert nak.vectors == (
        AlgebraElement.gen_y(p).to_vector(),
        AlgebraElement.gen_x(p).to_vector(),
    ) or nak.vectors == (
        AlgebraElement.gen_x(p).to_vector(),
        AlgebraElement.gen_y(p).to_vector(),
    )


def closed_form_partial2_column(p, t, i, j):
    # oracle: -(j+alpha+1) X^(i+1)Y^j (x) dY - (i-beta+1) X^i Y^(j+1) (x) dX
    coeffs = {}
    c_dy = -(j + t.alpha + 1)
    if c_dy:
        coeffs[(i + 1, j, DY)] = c_dy
    c_dx = -(i - t.beta + 1)
    if c_dx:
        coeffs[(i, j + 1, DX)] = c_dx
    return ChainElement(p, 1, coeffs).to_vector()


def test_partial2_matches_closed_form():
    rng = random.Random(33)
    for a, b in [(2, 2), (3, 4), (5, 3), (4, 4)]:
        p = TruncParams(a, b)
        twists = [TwistParams.trivial(), TwistParams.nakayama(p)]
        twists += [random_twist(rng) for _ in range(10)]
        for t in twists:
            m = partial2_matrix(p, t)
            for c, (i, j) in enumerate(omega2_indices(p)):
                assert m.column(c) == closed_form_partial2_column(p, t, i, j), (a, b, t, i, j)


def test_partial2_nakayama_kills_top_form():
    for a, b in [(2, 2), (4, 5), (6, 3)]:
        p = TruncParams(a, b)
        m = partial2_matrix(p, TwistParams.nakayama(p))
        col = omega2_indices(p).index((a - 2, b - 2))
        assert all(x == 0 for x in m.column(col))


def test_partial2_trivial_and_shifted_at_2_2():
    p = TruncParams(2, 2)
    m = partial2_matrix(p, TwistParams.trivial())
    img = ChainElement.from_vector(p, 1, m.column(0))
    assert img.coeffs == {(1, 0, DY): Fraction(-1), (0, 1, DX): Fraction(-1)}
    from truncpoisson import column_space, nullspace

    assert column_space(m).dim == 1
    m2 = partial2_matrix(p, TwistParams(Fraction(-2), Fraction(2)))
    img2 = ChainElement.from_vector(p, 1, m2.column(0))
    assert img2.coeffs == {(1, 0, DY): Fraction(1), (0, 1, DX): Fraction(1)}
    assert nullspace(m2).dim == 0


def test_boundary_complex_property():
    rng = random.Random(34)
    for a in range(2, 13):
        for b in range(2, 13):
            p = TruncParams(a, b)
            for t in (TwistParams.trivial(), TwistParams.nakayama(p)):
                assert (partial1_matrix(p, t) @ partial2_matrix(p, t)).is_zero()
    for a, b in [(2, 2), (3, 4), (5, 3), (4, 4)]:
        p = TruncParams(a, b)
        for _ in range(50):
            t = random_twist(rng)
            assert (partial1_matrix(p, t) @ partial2_matrix(p, t)).is_zero()


def test_trace_dimension_untwisted():
    for a in range(2, 9):
        for b in range(2, 9):
            p = TruncParams(a, b)
            assert homology(p, TwistParams.trivial()).dims[0] == a + b - 1


def test_untwisted_2_2_dims_frozen():
    # rank oracle on the hand-checked 4x4 / 4x1 boundaries
    rep = homology(TruncParams(2, 2), TwistParams.trivial())
    assert rep.dims == (3, 2, 0)
    assert rep.ranks == (1, 1)


def test_nakayama_dims():
    for a in range(2, 9):
        for b in range(2, 9):
            p = TruncParams(a, b)
            rep = homology(p, TwistParams.nakayama(p))
            assert rep.dims == (2, 2, 1)
            assert [c.render() for c in rep.representatives[0]] == [
                "1",
                str(AlgebraElement.monomial(p, a - 1, b - 1)),
            ]
            assert [c.render() for c in rep.representatives[2]] == [
                ChainElement(p, 2, {(a - 2, b - 2): Fraction(1)}).render()
            ]


def test_vanishing_regime_twist():
    for a in range(2, 9):
        for b in range(2, 9):
            p = TruncParams(a, b)
            rep = homology(p, TwistParams(Fraction(-b), Fraction(a)))
            assert rep.dims == (1, 0, 0)


def test_homology_euler_for_random_twists():
    rng = random.Random(35)
    for a, b in [(2, 2), (3, 4), (5, 5)]:
        p = TruncParams(a, b)
        for _ in range(10):
            h0, h1, h2 = homology(p, random_twist(rng)).dims
            assert h0 - h1 + h2 == 1


def test_homology_representatives_are_cycles():
    p = TruncParams(3, 4)
    for t in (TwistParams.trivial(), TwistParams.nakayama(p)):
        rep = homology(p, t)
        b1 = partial1_matrix(p, t)
        b2 = partial2_matrix(p, t)
        for c in rep.representatives[1]:
            assert all(x == 0 for x in b1.apply(c.to_vector()))
        for c in rep.representatives[2]:
            assert all(x == 0 for x in b2.apply(c.to_vector()))


def test_duality_report_2_2():
    rep = duality_report(TruncParams(2, 2))
    assert rep.nakayama_duality_holds
    assert rep.poincare_duality_fails
    assert rep.euler_cochain == rep.euler_chain == 1
    assert [c.nakayama_homology_dim for c in rep.comparisons] == [2, 2, 1]


def test_duality_report_4_5_poincare_failure():
    rep = duality_report(TruncParams(4, 5))
    by_degree = {c.degree: c for c in rep.comparisons}
    assert by_degree[2].trivial_homology_dim == 8  # HP_0 untwisted = a+b-1
    assert by_degree[2].cohomology_dim == 1
    assert not by_degree[2].poincare_match


def test_duality_report_7_2_matches_every_degree():
    rep = duality_report(TruncParams(7, 2))
    assert all(c.nakayama_match for c in rep.comparisons)


def test_chain_element_validation():
    p = TruncParams(2, 2)
    with pytest.raises(ValueError):
        ChainElement(p, 1, {(1, 0, DX): Fraction(1)})  # dX exponent out of range
    with pytest.raises(ValueError):
        ChainElement(p, 2, {(1, 1): Fraction(1)})


def test_chain_element_render_and_vectors():
    p = TruncParams(3, 3)
    c = ChainElement(p, 1, {(1, 1, DX): Fraction(2), (0, 1, DY): Fraction(-1, 2)})
    assert c.render() == "2*X*Y*dX - 1/2*Y*dY"
    assert ChainElement.from_vector(p, 1, c.to_vector()) == c
