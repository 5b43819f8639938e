import math

import pytest

import ribbonlim as rl


def test_alpha_constants_isotropic():
    plus, minus = rl.alpha_constants(rl.Rigidity.isotropic(1.0, 1.0))
    assert plus == pytest.approx(2.0, abs=1e-9)
    assert minus == pytest.approx(6.0, abs=1e-9)


def test_alpha_constants_sadowsky():
    c = rl.Rigidity.from_voigt(1.0, 0.0, 0.0, 1.0, 0.0, 0.5)
    plus, minus = rl.alpha_constants(c)
    assert plus == pytest.approx(2.0, abs=1e-9)
    assert minus == pytest.approx(2.0, abs=1e-9)
    # The closed form needs the orthotropic constructor; a from_voigt matrix
    # carries no constants even when its entries happen to be orthotropic.
    closed = rl.orthotropic_alphas(rl.Rigidity.orthotropic(1.0, 0.0, 1.0, 0.5))
    assert closed == pytest.approx((plus, minus), abs=1e-9)
    with pytest.raises(rl.InputError):
        rl.orthotropic_alphas(c)


def test_sadowsky_density_spots():
    density = rl.ReducedDensity(rl.Rigidity.isotropic(1.0, 0.0))
    for (mu, tau), expected in {
        (1.0, 0.0): 1.0,
        (0.0, 1.0): 4.0,
        (1.0, 1.0): 4.0,
        (2.0, 1.0): 6.25,
    }.items():
        assert density.plain(mu, tau).value == pytest.approx(expected, abs=1e-10)


def test_decomposition_matches_relaxation():
    c = rl.Rigidity.isotropic(1.0, 0.0)
    m = (1.0, 1.0, 0.0)
    value = rl.relaxed_integrand(c, 0.0, m)
    a, b, theta, mixture = rl.two_point_decomposition(c, 0.0, m)
    assert value == pytest.approx(4.0, abs=1e-12)
    assert mixture == pytest.approx(value, rel=1e-12)
    assert 0.0 <= theta <= 1.0
    # Both endpoints sit on the constraint and mix back to m.
    for end in (a, b):
        assert end[0] * end[1] - 0.25 * end[2] ** 2 == pytest.approx(0.0, abs=1e-9)
    for k in range(3):
        assert (1 - theta) * a[k] + theta * b[k] == pytest.approx(m[k], abs=1e-9)


def test_oracle_brackets_formula():
    c = rl.Rigidity.isotropic(1.0, 0.0)
    value = rl.relaxed_integrand(c, 0.0, (1.0, 1.0, 0.0))
    oracle = rl.brute_force_biconjugate(c, 0.0, (1.0, 1.0, 0.0), radius=6.0, n=32)
    assert oracle >= value - 1e-9
    assert abs(oracle - value) < 1.0


def test_orthotropic_closed_form():
    # K33 = 1 sits exactly on the closed form's admissibility boundary; the
    # bending branch at (2, 1) gives (16 + 4*4 + 4)/4 = 9.
    assert rl.orthotropic_reduced_density(1.0, 0.0, 4.0, 1.0, 2.0, 1.0) == pytest.approx(
        9.0, abs=1e-12
    )
    density = rl.ReducedDensity(rl.Rigidity.orthotropic(1.0, 0.0, 4.0, 1.0))
    assert density.plain(2.0, 1.0).value == pytest.approx(9.0, abs=1e-10)
    with pytest.raises(rl.InputError):
        rl.orthotropic_reduced_density(1.0, 0.0, 4.0, 0.5, 2.0, 1.0)


def test_input_error_maps_to_python():
    with pytest.raises(rl.InputError):
        rl.brute_force_biconjugate(rl.Rigidity.isotropic(1.0, 0.0), 0.0, (1.0, 0.0, 0.0), 6.0, 8)


def test_density_point_repr():
    point = rl.ReducedDensity(rl.Rigidity.isotropic(1.0, 0.0)).plain(1.0, 0.0)
    assert math.isclose(point.gamma, 0.0, abs_tol=1e-12)
    assert "DensityPoint" in repr(point)
