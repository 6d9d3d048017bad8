from fractions import Fraction

import pytest

from hamming_cutoff import (
    ParameterError,
    expectation_phi,
    expectation_phi_by_sum,
    kstep_distribution,
    kstep_oracle,
    linearization_phi1_squared,
    make_scheme,
    point_mass,
    spectrum,
    stationary_moments,
    tv_distance,
    uniform,
    variance_phi1_kstep,
)


def test_spectrum_examples():
    s = spectrum(make_scheme(2, 3))
    assert s.lam == (1, Fraction(1, 4), Fraction(-1, 2))
    assert s.mult == (1, 4, 4)
    assert sum(s.mult) == 9
    assert spectrum(make_scheme(1, 2)).lam == (1, -1)


def test_spectrum_invariants():
    for n in (1, 5, 14):
        for q in (2, 3, 6):
            s = spectrum(make_scheme(n, q))
            assert s.lam[0] == 1
            assert all(s.lam[j] > s.lam[j + 1] for j in range(n))
            assert s.lam[n] == Fraction(-1, q - 1)
            assert sum(s.mult) == q ** n


def test_kstep_examples():
    p = make_scheme(2, 3)
    assert kstep_distribution(p, 0).mass == point_mass(p).mass
    d = kstep_distribution(p, 2)
    assert d.mass == (Fraction(1, 4), Fraction(1, 4), Fraction(1, 2))
    assert [d.point_probability(l) for l in range(3)] == [
        Fraction(1, 4),
        Fraction(1, 16),
        Fraction(1, 8),
    ]


def test_keystone_equivalence_small_grid():
    for q in (2, 3, 5):
        for n in (1, 3, 6):
            p = make_scheme(n, q)
            for k in (0, 1, 2, 5, 11, 24):
                assert kstep_distribution(p, k).mass == kstep_oracle(p, k).mass


def test_float_backend_close_to_exact():
    for q in (2, 4, 6):
        for n in (1, 2, 5, 9):
            p = make_scheme(n, q)
            for k in (0, 1, 3, 17, 64):
                ex = kstep_distribution(p, k)
                fl = kstep_distribution(p, k, "float")
                assert fl.clamp_total >= 0
                err = max(abs(float(a) - b) for a, b in zip(ex.mass, fl.mass))
                assert err < 1e-12


def test_expectation_phi_examples():
    p = make_scheme(2, 3)
    assert expectation_phi(p, 0, 9) == 1
    assert expectation_phi(p, 1, 2) == Fraction(1, 16)
    assert expectation_phi(p, 2, 3) == Fraction(-1, 8)
    with pytest.raises(ParameterError):
        expectation_phi(p, 3, 1)


def test_expectation_two_paths_agree():
    for q in (2, 3, 5):
        for n in (1, 4, 6):
            p = make_scheme(n, q)
            for k in (0, 1, 7, 20):
                for j in range(n + 1):
                    assert expectation_phi(p, j, k) == expectation_phi_by_sum(p, j, k)


def test_stationary_moments():
    m = stationary_moments(make_scheme(2, 3))
    assert m.var_phi1 == Fraction(1, 4)
    m = stationary_moments(make_scheme(3, 3))
    assert m.mean_phi == (1, 0, 0, 0)
    for n, q in [(1, 2), (4, 5), (7, 3)]:
        m = stationary_moments(make_scheme(n, q))
        assert m.mean_phi[0] == 1
        assert all(v == 0 for v in m.mean_phi[1:])
        assert m.var_phi1 == Fraction(1, n * (q - 1))


def test_linearization_examples():
    p = make_scheme(2, 3)
    a0, a1, a2 = linearization_phi1_squared(p)
    assert (a0, a1, a2) == (Fraction(1, 4), Fraction(1, 4), Fraction(1, 2))
    # check at l = 1: (1/4)^2 == a0 + a1/4 - a2/2
    assert a0 + a1 * Fraction(1, 4) + a2 * Fraction(-1, 2) == Fraction(1, 16)
    assert linearization_phi1_squared(make_scheme(5, 2)) == (
        Fraction(1, 5),
        0,
        Fraction(4, 5),
    )
    for n, q in [(2, 3), (5, 2), (9, 6)]:
        assert sum(linearization_phi1_squared(make_scheme(n, q))) == 1
    with pytest.raises(ParameterError):
        linearization_phi1_squared(make_scheme(1, 3))


def test_variance_phi1_examples():
    assert variance_phi1_kstep(make_scheme(5, 3), 0).value == 0
    r = variance_phi1_kstep(make_scheme(4, 3), 5)
    assert r.value <= Fraction(1, 4)
    assert r.bound_holds
    # boundary case (n-2)(q-1) = 0: flag is reported, nothing guaranteed
    r = variance_phi1_kstep(make_scheme(2, 3), 7)
    assert isinstance(r.bound_holds, bool)


def test_variance_matches_weighted_sums():
    # independent path: moments of phi_1 under the exact k-step masses
    from hamming_cutoff import build_table

    for n, q, k in [(4, 3, 5), (3, 2, 8), (5, 4, 2)]:
        p = make_scheme(n, q)
        t = build_table(p).phi
        d = kstep_distribution(p, k)
        mean = sum(d.mass[l] * t[1][l] for l in range(n + 1))
        second = sum(d.mass[l] * t[1][l] ** 2 for l in range(n + 1))
        assert variance_phi1_kstep(p, k).value == second - mean * mean


def test_tv_monotone_in_k_for_ergodic():
    for n, q in [(6, 3), (5, 4), (4, 5)]:
        p = make_scheme(n, q)
        u = uniform(p)
        last = tv_distance(point_mass(p), u)
        for k in range(1, 30):
            cur = tv_distance(kstep_oracle(p, k), u)
            assert cur <= last
            last = cur
