import pytest
from conftest import graded_ideals
from hypothesis import assume, given, settings
from hypothesis import strategies as st

import oracles
from mfull.analysis import (DegenerateIdeal, LowType, analyze, complete_m_full_chain,
                            has_coordinate_complete_m_full_property, is_completely_m_full_recursive,
                            is_completely_m_full_via_B, is_componentwise_linear, is_m_full,
                            low_type_check, m_full_with, nagel_romer, random_pivot_form, t_sequence,
                            t_value)
from mfull.cli import random_monomial_ideal, random_stable_ideal
from mfull.field import Rng
from mfull.gin import gin, gin_ideal
from mfull.ideal_ops import (INFINITE, Ideal, colon_length, m_times, mu, reduce_mod_linear, type_of)
from mfull.poly import LinearForm, PolyRing, embed, random_linear_form

R2 = PolyRing(2)
x, y = R2.gens()
R3 = PolyRing(3)

M2 = Ideal.power_of_maximal(R2, 2)
CI = Ideal(R2, [x * x, y * y])
XY3 = Ideal(R2, [x, y ** 3])
X = Ideal(R2, [x])


def test_degenerate_ideals_rejected():
    for I in (Ideal(R2, []), Ideal.unit(R2)):
        with pytest.raises(DegenerateIdeal):
            is_m_full(I, Rng(0))
        with pytest.raises(DegenerateIdeal):
            t_sequence(I, Rng(0))
        with pytest.raises(DegenerateIdeal):
            analyze(I, Rng(0))


def test_m_full_examples():
    for d in (1, 2, 3):
        assert is_m_full(Ideal.power_of_maximal(R2, d), Rng(d))
        assert is_m_full(Ideal.power_of_maximal(R3, d), Rng(d))
    assert is_m_full(X, Rng(0))


def test_regular_sequence_of_quadrics_is_not_m_full():
    # m(x^2, y^2) = m^3, and m^3 : z = m^2 for every nonzero linear z
    assert m_times(CI).equals(Ideal.power_of_maximal(R2, 3))
    for seed in range(5):
        z = random_linear_form(R2, Rng(seed))
        gens = [oracles.as_dict(g) for g in m_times(CI).gens]
        # dimension of (mI : z) in degree 1 is 0 and in degree 2 is 3 = dim m^2_2
        assert oracles.colon_dim(gens, [oracles.as_dict(z.poly())], 2, 2, R2.p) == 3
        assert not m_full_with(CI, z)
    assert not is_m_full(CI, Rng(0))
    # mu(I) = 2 but mu(I mod z) + l((I:z)/I) = 1 + 2
    z = random_linear_form(R2, Rng(9))
    assert mu(reduce_mod_linear(CI, z)).total + colon_length(CI, z) == 3


def test_adversarial_forms_resampled():
    # z = x is special for (x^2, xy): m I : x = m^2; a general form works
    I = Ideal(R2, [x * x, x * y])
    assert not m_full_with(I, LinearForm(R2, (1, 0)))
    assert m_full_with(I, LinearForm(R2, (0, 1)))
    assert is_m_full(I, Rng(0))


def test_t_value_examples():
    assert t_value(M2, Rng(0)) == 2
    assert t_value(CI, Rng(0)) == 2
    assert t_value(X, Rng(0)) == 0
    assert t_value(Ideal(R3, [R3.gen(0) * R3.gen(1)]), Rng(0)) == 0


def test_t_sequence_examples():
    ts = t_sequence(M2, Rng(0))
    assert ts.values == [1, 2] and ts.B == 3
    assert t_sequence(CI, Rng(0)).values == [1, 2]
    ts = t_sequence(X, Rng(0))
    assert ts.values == [1, 0] and ts.B == 1
    assert len(ts.forms_used) == 1 and ts.samples_per_level == 3


def test_complete_m_full_examples():
    for n in (1, 2, 3):
        R = PolyRing(n)
        for d in (1, 2, 3):
            assert is_completely_m_full_recursive(Ideal.power_of_maximal(R, d), Rng(d))
    assert not is_completely_m_full_recursive(CI, Rng(0))
    R1 = PolyRing(1)
    for d in (1, 4, 7):
        assert is_completely_m_full_recursive(Ideal(R1, [R1.gen(0) ** d]), Rng(0))
    chain = complete_m_full_chain(M2, lambda J, _: random_pivot_form(J.ring, Rng(3)))
    assert chain is not None and len(chain) == 2


def test_B_criterion_examples():
    assert is_completely_m_full_via_B(M2, Rng(0))
    assert not is_completely_m_full_via_B(CI, Rng(0))
    assert is_completely_m_full_via_B(X, Rng(0))


def test_componentwise_linear_examples():
    for d in (1, 2, 3):
        assert is_componentwise_linear(Ideal.power_of_maximal(R2, d), Rng(0))
    assert not is_componentwise_linear(CI, Rng(0))
    for d in (1, 2, 3, 5):
        assert is_componentwise_linear(Ideal(R2, [x, y ** d]), Rng(0))


def test_nagel_romer_examples():
    assert nagel_romer(M2, Rng(0))
    assert not nagel_romer(CI, Rng(0))
    assert nagel_romer(X, Rng(0))


def test_low_type_examples():
    assert low_type_check(XY3, Rng(0)) is LowType.HOLDS
    a, b, c = R3.gens()
    assert low_type_check(Ideal(R3, [a, b, c * c]), Rng(0)) is LowType.HOLDS
    assert low_type_check(CI, Rng(0)) is LowType.VACUOUS
    # not Cohen-Macaulay
    assert low_type_check(Ideal(R3, [a * a, a * b]), Rng(0)) is LowType.VACUOUS
    assert bool(LowType.VACUOUS) and not bool(LowType.FAILS)


def test_analyze_reports():
    r = analyze(M2, Rng(1))
    assert (r.mu, r.t_sequence, r.B) == (3, [1, 2], 3)
    assert all(r.flags().values()) and r.consistent
    r = analyze(CI, Rng(1))
    assert not any(r.flags().values()) and r.consistent
    assert r.betti == [[0, 0, 1], [1, 2, 2], [2, 4, 1]] and r.type == 1 and r.gorenstein
    r = analyze(Ideal(R2, [x, y ** 4]), Rng(1))
    assert all(r.flags().values()) and r.consistent and r.low_type_check == "true"
    assert r.errors == {}
    d = r.to_json_dict()
    for key in ("ring", "generators", "mu", "t_sequence", "B", "type", "height", "dim", "regularity",
                "gin", "gin_stable", "m_full", "completely_m_full_recursive", "completely_m_full_B",
                "componentwise_linear", "nagel_romer", "consistent", "seed", "betti"):
        assert key in d


def test_analyze_records_field_errors(monkeypatch):
    import mfull.analysis as A

    def boom(*args, **kwargs):
        raise RuntimeError("injected")
    monkeypatch.setattr(A, "type_of", boom)
    r = analyze(M2, Rng(1))
    assert "type" in r.errors and r.type is None
    assert r.consistent  # other fields still filled


# -- properties ---------------------------------------------------------------

small_ideals = graded_ideals(max_gens=3, max_deg=3)


@settings(max_examples=20)
@given(small_ideals, st.integers(0, 10**6))
def test_main_theorem_and_mu_bound(I, seed):
    assume(not I.is_zero() and not I.is_unit())
    r = analyze(I, Rng(seed), betti=False)
    assert r.errors == {}
    assert r.consistent
    assert r.mu <= r.B


@settings(max_examples=20)
@given(small_ideals, st.integers(0, 10**6))
def test_t_differences_when_completely_m_full(I, seed):
    ts = t_sequence(I, Rng(seed))
    if mu(I).total != ts.B:
        return
    mus = [0] + [mu(J).total for J in ts.images]
    assert ts.values == [mus[i + 1] - mus[i] for i in range(len(ts.values))]
    # mu(I) = mu(I mod z) + l((I:m)/I) for completely m-full I
    z = random_linear_form(I.ring, Rng(seed + 1))
    assert mu(I).total == mu(reduce_mod_linear(I, z)).total + type_of(I)


@settings(max_examples=25)
@given(small_ideals, st.integers(0, 10**6))
def test_colon_identity_characterizes_m_full(I, seed):
    z = random_linear_form(I.ring, Rng(seed))
    cl = colon_length(I, z)
    assume(cl != INFINITE)
    rhs = mu(I).total == mu(reduce_mod_linear(I, z)).total + cl
    assert m_full_with(I, z) == rhs


@settings(max_examples=30)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 5), st.integers(0, 10**6))
def test_stable_iff_coordinate_recursion(n, k, d, seed):
    M = random_stable_ideal(Rng(seed), n, k, d)
    I = Ideal.from_monomial_ideal(PolyRing(n), M)
    assert has_coordinate_complete_m_full_property(I)
    N = random_monomial_ideal(Rng(seed), n, k + 1, d)
    J = Ideal.from_monomial_ideal(PolyRing(n), N)
    assert has_coordinate_complete_m_full_property(J) == N.is_stable()


@settings(max_examples=12)
@given(graded_ideals(max_gens=3, max_deg=2), st.integers(0, 10**6))
def test_t_sequence_transfers_to_gin(I, seed):
    G = gin_ideal(I, Rng(seed))
    assert t_sequence(I, Rng(seed + 1)).values == t_sequence(G, Rng(seed + 2)).values


@settings(max_examples=12)
@given(graded_ideals(max_gens=3, max_deg=2), st.integers(0, 10**6))
def test_gin_of_completely_m_full_has_coordinate_property(I, seed):
    if not is_completely_m_full_via_B(I, Rng(seed)):
        return
    G = gin_ideal(I, Rng(seed))
    assert has_coordinate_complete_m_full_property(G)


@settings(max_examples=15)
@given(graded_ideals(max_gens=3, max_deg=3), st.integers(0, 10**6))
def test_type_agrees_with_gin_when_both_m_full(I, seed):
    G = gin_ideal(I, Rng(seed))
    if is_m_full(I, Rng(seed)) and is_m_full(G, Rng(seed + 1)):
        assert type_of(I) == type_of(G)


@settings(max_examples=10)
@given(graded_ideals(n=2, max_gens=3, max_deg=3), st.integers(0, 10**6))
def test_adjoining_a_variable_preserves_flags(I, seed):
    R = PolyRing(3)
    J = Ideal(R, [embed(g, R) for g in I.gens])
    a = analyze(I, Rng(seed), betti=False).flags()
    b = analyze(J, Rng(seed), betti=False).flags()
    assert a == b


def test_gin_cached_seed_determinism():
    a = analyze(Ideal(R3, [R3.gen(0) ** 2, R3.gen(1) * R3.gen(2)]), Rng(4)).to_json_dict()
    b = analyze(Ideal(R3, [R3.gen(0) ** 2, R3.gen(1) * R3.gen(2)]), Rng(4)).to_json_dict()
    assert a == b
    assert gin(M2, Rng(1)).seeds == gin(M2, Rng(1)).seeds
