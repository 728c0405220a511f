from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphcx import complexes as cxm
from graphcx import posets as po
from graphcx import series as se
from graphcx.series import RationalSeries

N = 10
fractions = st.fractions(min_value=-3, max_value=3, max_denominator=5)


def series_with(a0):
    return st.lists(fractions, min_size=N, max_size=N).map(lambda cs: RationalSeries([a0] + cs, N))


def test_core_examples():
    x = RationalSeries.x(N)
    assert (1 + x).log().exp() == 1 + x
    assert (x / (1 - x)).reversion() == x / (1 + x)
    assert se.p_poly(2, N).log().coeffs[1:] == tuple(Fraction((-1) ** (n - 1), n) for n in range(1, N + 1))


@settings(max_examples=40, deadline=None)
@given(series_with(0))
def test_exp_log_inverse(f):
    assert f.exp().log() == f
    g = f + 1
    assert g.log().exp() == g


@settings(max_examples=30, deadline=None)
@given(series_with(0).filter(lambda s: s[1] != 0))
def test_reversion_inverse(f):
    g = f.reversion()
    x = RationalSeries.x(N)
    assert f.compose(g) == x
    assert g.compose(f) == x
    assert g == se.lagrange_reversion(f)


@settings(max_examples=40, deadline=None)
@given(series_with(1), series_with(0))
def test_field_identities(a, b):
    assert (a * b) / a == b
    assert (a.sqrt() * a.sqrt()) == a
    assert (a * b).derivative() == a.derivative() * b + a * b.derivative()
    assert b.derivative().integrate(b[0]) == b.truncate(N - 1)


def test_errors():
    x = RationalSeries.x(4)
    with pytest.raises(se.SeriesError):
        x.log()
    with pytest.raises(se.SeriesError):
        (1 + x).exp()
    with pytest.raises(se.SeriesError):
        (x * x).reversion()
    with pytest.raises(se.SeriesError):
        se.EgfSequence.of(RationalSeries([0, 0, Fraction(1, 3)]))


def test_tau_examples():
    assert se.tau_series(2, 6)[4] == -6
    assert se.tau_series(3, 6)[3] == -1
    assert se.tau_series(3, 6)[4] == 3


@pytest.mark.parametrize("k", [2, 3, 4])
def test_tau_is_k_equal_moebius(k):
    tau = se.tau_series(k, 8)
    for n in [1, *range(k, 8)]:
        assert tau[n] == po.moebius(po.k_equal_lattice(n, k))


def test_mobius_series_examples():
    M2 = se.mobius_series(2, 11)
    assert [M2[n] for n in range(2, 11)] == [-factorial(n - 2) for n in range(2, 11)]
    assert M2[5] == -6
    M3 = se.mobius_series(3, 10)
    assert [M3[n] for n in range(1, 10)] == [0, 0, -1, 3, -21, 180, -2010, 27090, -430290]


def test_alpha_examples():
    assert se.alpha_series(2, 4)[2] == -1
    assert se.alpha_series(2, 4)[3] == 1
    assert se.alpha_series(3, 4)[3] == -1


@pytest.mark.parametrize("k", [2, 3])
def test_alpha_matches_brute_force(k):
    a = se.alpha_series(k, 7)
    for n in range(1, 7):
        assert a[n] == po.alpha_brute_force(n, k), n


def brute_chi(n, forbid_c4):
    return cxm.reduced_euler(cxm.paths_cycles_complex(n, forbid_c4))


def test_nminus3_series():
    s, egf = se.dual_euler_series_nminus3(9)
    assert not se.integrality_failures(s)
    assert [egf[n] for n in range(1, 9)] == [-1, 0, 0, 6, 6, 36, -180, -180]
    assert egf[4] == 6 and egf[5] == 6


def test_cycles_paths_series():
    s, egf = se.cycles_paths_series(9)
    assert not se.integrality_failures(s)
    assert [egf[n] for n in range(1, 9)] == [-1, 0, 0, 3, -9, 36, -180, 765]


@pytest.mark.parametrize("n", range(1, 9))
def test_series_match_brute_force(n):
    assert se.dual_euler_series_nminus3(8)[1][n] == brute_chi(n, True)
    assert se.cycles_paths_series(8)[1][n] == brute_chi(n, False)


def test_printed_expansions_against_closed_forms():
    s, _ = se.dual_euler_series_nminus3(9)
    # the x^7 coefficient is -1/28; the printed expansion has -1/27
    assert se.printed_expansion_mismatches(s, se.PRINTED_NMINUS3) == {7: (Fraction(-1, 27), Fraction(-1, 28))}
    c, _ = se.cycles_paths_series(9)
    assert se.printed_expansion_mismatches(c, se.PRINTED_CYCLES_PATHS) == {8: (Fraction(-17, 896), Fraction(17, 896))}


def test_literal_closed_form_is_not_integral():
    assert se.integrality_failures(se.literal_closed_form(8, True))


def test_exponential_formula():
    assert se.partition_sum([0, 1, 1, 1], 3) == 5
    assert all(se.partition_sum([0] + [factorial(m - 1) for m in range(1, 7)], n) == factorial(n)
               for n in range(7))
    assert se.exponential_formula_check([0, 1, 1, 1, 1, 1, 1, 1], 7)


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=7, max_size=7))
def test_exponential_formula_random(a):
    assert se.exponential_formula_check([0] + a, 6)


def test_table6():
    t = se.table6(9)
    assert [t["F_1"].euler(n) for n in range(2, 7)] == [(-1) ** (n - 1) * factorial(n - 1) for n in range(2, 7)]
    assert t["G_2"].euler(3) == 2
    assert all(t["G_1"].euler(n) == -1 for n in range(2, 9))
    assert [t["F_2"].euler(n) for n in range(3, 8)] == [-factorial(n - 2) for n in range(3, 8)]
    assert [t["F_2"].printed_value(n) for n in range(3, 8)] == [factorial(n - 2) for n in range(3, 8)]
    with pytest.raises(se.SeriesError):
        t["F_2"].euler(2)
