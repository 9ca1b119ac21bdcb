import math

import pytest
from conftest import graded_ideals, homogeneous_polys
from hypothesis import assume, given
from hypothesis import strategies as st

import oracles
from mfull.field import Rng
from mfull.ideal_ops import (INFINITE, Ideal, NonHomogeneousGenerator, UnitIdeal, ZeroDivisorPolynomial,
                             colon, colon_general, colon_length, colon_m, component_ideal,
                             dim_and_height, hilbert, intersect, m_times, mu, reduce_mod_linear,
                             socle_dimension, type_of)
from mfull.monomial import MonomialIdeal
from mfull.poly import LinearForm, PolyRing, random_linear_form

R2 = PolyRing(2)
x, y = R2.gens()
R3 = PolyRing(3)


def D(I):
    return [oracles.as_dict(g) for g in I.gens]


def test_nonhomogeneous_rejected():
    with pytest.raises(NonHomogeneousGenerator):
        Ideal(R2, [x * x + x])


def test_m_times_examples():
    assert m_times(Ideal(R2, [x])).equals(Ideal(R2, [x * x, x * y]))
    assert m_times(Ideal.unit(R2)).equals(Ideal.maximal(R2))
    assert m_times(Ideal(R2, [x * x, y * y])).equals(Ideal(R2, [x ** 3, x * x * y, x * y * y, y ** 3]))


def test_colon_examples():
    I = Ideal(R2, [x * x, x * y])
    assert colon(I, x * x).is_unit()
    assert colon(I, x).equals(Ideal(R2, [x, y]))
    with pytest.raises(ZeroDivisorPolynomial):
        colon(I, R2.zero())


def test_colon_contract_regular_sequence():
    I = Ideal(R2, [x * x, y * y])
    z = x + y
    C = colon(I, z)
    for g in C.gb.elements:
        assert I.contains(z * g)
    assert I.issubset(C)
    # reduced GB is the comparable form: (x - y, y^2)
    assert C.equals(Ideal(R2, [x - y, y * y]))


@given(graded_ideals(max_gens=3, max_deg=3), st.data())
def test_colon_fast_path_matches_elimination(I, data):
    f = data.draw(homogeneous_polys(I.ring, 1, 1))
    assert colon(I, f).equals(colon_general(I, f))
    g = data.draw(homogeneous_polys(I.ring, 2, 2))
    C = colon(I, g)
    assert I.issubset(C)
    for h in C.gb.elements:
        assert I.contains(g * h)


@given(graded_ideals(max_gens=3, max_deg=3), st.data())
def test_colon_dimensions_match_linear_algebra(I, data):
    f = data.draw(homogeneous_polys(I.ring, 1, 2))
    C = colon(I, f)
    for d in range(5):
        brute = oracles.colon_dim(D(I), [oracles.as_dict(f)], I.n, d, I.ring.p)
        assert hilbert(C, d)[d] == math.comb(I.n + d - 1, d) - brute


def test_colon_by_nonzerodivisor_is_identity():
    I = Ideal(R3, [R3.gen(0) * R3.gen(1)])
    assert colon(I, R3.gen(2)).equals(I)
    P = Ideal(R3, [R3.gen(0), R3.gen(1) ** 2])
    assert colon(P, R3.gen(2) ** 2 + R3.gen(2) * R3.gen(1)).equals(P)


def test_colon_m_examples():
    assert colon_m(Ideal.power_of_maximal(R2, 2)).equals(Ideal.maximal(R2))
    assert colon_m(Ideal(R2, [x])).equals(Ideal(R2, [x]))
    assert colon_m(Ideal.unit(R2)).is_unit()


def test_intersect():
    A = Ideal(R2, [x])
    B = Ideal(R2, [y])
    assert intersect(A, B).equals(Ideal(R2, [x * y]))


def test_reduce_mod_linear_examples():
    R1 = R2.drop_last()
    u = R1.gen(0)
    I = Ideal(R2, [x * x, y * y])
    assert reduce_mod_linear(I, LinearForm(R2, (0, 1))).equals(Ideal(R1, [u * u]))
    assert reduce_mod_linear(I, LinearForm(R2, (1, 1))).equals(Ideal(R1, [u * u]))
    assert reduce_mod_linear(Ideal.maximal(R2), LinearForm(R2, (1, 1))).equals(Ideal(R1, [u]))


def test_mu_examples():
    assert mu(Ideal.power_of_maximal(R2, 2)).total == 3
    assert mu(Ideal(R2, [x * x, y * y])).total == 2
    m = mu(Ideal(R2, [x * x, x * y, y ** 3]))
    assert m.total == 3 and m.profile == {2: 2, 3: 1}
    assert mu(Ideal(R2, [])).total == 0
    assert mu(Ideal.unit(R2)).total == 1


@given(graded_ideals(max_gens=4, max_deg=3))
def test_mu_matches_linear_algebra(I):
    assert mu(I).total == oracles.mu(D(I), I.n, I.ring.p)
    assert mu(I).total <= len(I.gens)


def test_hilbert_examples():
    H = hilbert(Ideal(R2, []), 5)
    assert [H[d] for d in range(6)] == [1, 2, 3, 4, 5, 6]
    H = hilbert(Ideal(R2, [x * x - y * y, x * y]), 5)
    assert [H[d] for d in range(6)] == [1, 2, 1, 0, 0, 0]
    H = hilbert(Ideal(R2, [x]), 5)
    assert [H[d] for d in range(6)] == [1] * 6


@given(graded_ideals(max_gens=3, max_deg=3))
def test_hilbert_matches_linear_algebra(I):
    H = hilbert(I, 5)
    for d in range(6):
        assert H[d] == oracles.hilbert_value(D(I), I.n, d, I.ring.p)
        assert H[d] == I.lead.std_monomial_count(d)


def test_colon_length_examples():
    rng = Rng(2)
    z = random_linear_form(R2, rng)
    assert colon_length(Ideal.power_of_maximal(R2, 2), z) == 2
    assert colon_length(Ideal(R2, [x * x, y * y]), z) == 2
    assert colon_length(Ideal(R2, [x]), z) == 0
    # a non-general form can give an infinite length
    assert colon_length(Ideal(R2, [x * x, x * y]), LinearForm(R2, (1, 0))) == INFINITE


@given(graded_ideals(max_gens=3, max_deg=3), st.integers(0, 10**6))
def test_colon_length_matches_linear_algebra(I, seed):
    z = random_linear_form(I.ring, Rng(seed))
    L = colon_length(I, z)
    assume(L != INFINITE)
    top = 3 * max(g.degree() for g in I.gens) + 2
    assert L == oracles.colon_length(D(I), oracles.as_dict(z.poly()), I.n, I.ring.p, top)


@given(graded_ideals(max_gens=3, max_deg=3), st.integers(0, 10**6))
def test_hilbert_identity_for_colon(I, seed):
    """Hilb((I:z)/I, j) = Hilb(R/I, j) - Hilb(R/I, j+1) + Hilb(R/(I+zR), j+1)."""
    z = random_linear_form(I.ring, Rng(seed))
    assume(colon_length(I, z) != INFINITE)
    C = colon(I, z.poly())
    bar = reduce_mod_linear(I, z)
    for j in range(8):
        lhs = hilbert(I, j + 1)[j] - hilbert(C, j)[j]
        rhs = hilbert(I, j + 1)[j] - hilbert(I, j + 1)[j + 1] + hilbert(bar, j + 1)[j + 1]
        assert lhs == rhs


@given(graded_ideals(max_gens=3, max_deg=3), st.integers(0, 10**6))
def test_colon_length_of_mI_identity(I, seed):
    """l((mI:z)/mI) = mu(I mod z) + l((I:z)/I) when both sides are finite."""
    z = random_linear_form(I.ring, Rng(seed))
    a = colon_length(m_times(I), z)
    b = colon_length(I, z)
    assume(a != INFINITE and b != INFINITE)
    assert a == mu(reduce_mod_linear(I, z)).total + b


def test_component_ideal_examples():
    I = Ideal(R2, [x, y ** 3])
    assert component_ideal(I, 0).is_zero()
    assert component_ideal(Ideal.power_of_maximal(R2, 2), 2).equals(Ideal.power_of_maximal(R2, 2))
    assert component_ideal(I, 2).equals(Ideal(R2, [x * x, x * y]))


@given(graded_ideals(max_gens=3, max_deg=3), st.integers(1, 4))
def test_component_ideal_properties(I, j):
    C = component_ideal(I, j)
    assert C.issubset(I)
    assert hilbert(C, j)[j] == hilbert(I, j)[j]
    assert mu(C).total <= math.comb(I.n + j - 1, j) - hilbert(I, j)[j]


def test_type_examples():
    assert type_of(Ideal.power_of_maximal(R2, 2)) == 2
    assert type_of(Ideal(R2, [x * x, y * y])) == 1
    assert type_of(Ideal(R2, [x])) == 0


@given(graded_ideals(n=2, max_gens=3, max_deg=3))
def test_type_matches_socle_linear_algebra(I):
    t = type_of(I)
    top = 3 * max(g.degree() for g in I.gens) + 2
    assert t == oracles.socle_length(D(I), I.n, I.ring.p, top)
    assert t == socle_dimension(I, range(top + 1))


def test_dim_and_height():
    assert dim_and_height(Ideal(R2, [])) == (2, 0)
    assert dim_and_height(Ideal.power_of_maximal(R2, 2)) == (0, 2)
    assert dim_and_height(Ideal(R3, [R3.gen(0)])) == (2, 1)
    with pytest.raises(UnitIdeal):
        dim_and_height(Ideal.unit(R2))


def test_from_monomial_ideal():
    M = MonomialIdeal(2, [(2, 0), (0, 2)])
    I = Ideal.from_monomial_ideal(R2, M)
    assert I.lead == M
