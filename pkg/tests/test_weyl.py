import math

import numpy as np
import pytest

from focklab.basis import FockRep, HermiteRep, evaluate
from focklab.errors import NumericalGuardError
from focklab.weyl import (
    LaguerreCoeffs,
    RadialSymbol,
    apply_S_K,
    bargmann2,
    bessel_kernel_evaluator,
    dirac_at_zero,
    gaussian_psi,
    gaussian_radial,
    kernel_bessel,
    kernel_series,
    laguerre_coeffs,
    laguerre_symbol,
    psi_kernel_matrix,
    psi_to_sigma,
    reproducing_kernel,
    series_kernel_evaluator,
    sigma_l1_norm,
    sigma_to_psi,
    verify_thm_1_11,
    weyl_apply,
    weyl_matrix,
)

RNG = np.random.default_rng(21)
ZS = RNG.uniform(-1, 1, (6, 1)) + 1j * RNG.uniform(-1, 1, (6, 1))
WS = RNG.uniform(-1, 1, (6, 1)) + 1j * RNG.uniform(-1, 1, (6, 1))


def test_radial_symbol_validation():
    with pytest.raises(ValueError):
        RadialSymbol(lambda r: r, kind="measure")
    with pytest.raises(ValueError):
        RadialSymbol(lambda r: r, rate=-0.3)
    with pytest.raises(ValueError):
        dirac_at_zero()(0.0)
    assert gaussian_radial(2.0, 0.5)(1.0) == pytest.approx(2 * math.exp(-0.5))


@pytest.mark.parametrize("n", [1, 2])
def test_laguerre_basis_symbols_have_delta_coefficients(n):
    for k in range(5):
        R = laguerre_coeffs(laguerre_symbol(k, n), 8).values
        np.testing.assert_allclose(R, np.eye(9)[k], atol=1e-12)


def test_gaussian_coefficients_closed_form():
    # c exp(-a|z|^2) on C: R_k = 2 pi c (s - 1)^k / s^(k+1) with s = 2a + 1/2
    c, a = 1.0, 0.5
    R = laguerre_coeffs(gaussian_radial(c, a), 20).values
    s = 2 * a + 0.5
    ref = 2 * math.pi * c * (s - 1) ** np.arange(21) / s ** np.arange(1, 22)
    np.testing.assert_allclose(R, ref, atol=1e-12)


def test_laguerre_tail_warning():
    with pytest.warns(RuntimeWarning, match="not decayed"):
        laguerre_coeffs(gaussian_radial(1.0, 0.1), 4)


def test_dirac_coefficients_and_l1_norm():
    assert np.all(laguerre_coeffs(dirac_at_zero(2), 5).values == 1)
    # int_C exp(-a|z|^2) dz = pi / a
    assert sigma_l1_norm(gaussian_radial(1.0, 0.5)) == pytest.approx(2 * math.pi, rel=1e-12)


@pytest.mark.parametrize("n", [1, 2])
def test_series_matches_bessel_integral(n):
    z = RNG.uniform(-1, 1, (5, n)) + 1j * RNG.uniform(-1, 1, (5, n))
    w = RNG.uniform(-1, 1, (5, n)) + 1j * RNG.uniform(-1, 1, (5, n))
    for c, a in ((1.0, 0.5), (2.0, 1.0), (1 / (2 * math.pi), 0.25)):
        sig = gaussian_radial(c, a, n)
        R = laguerre_coeffs(sig, 80)
        assert np.max(np.abs(kernel_series(R, z, w) - kernel_bessel(sig, z, w))) < 1e-7


def test_unit_coefficients_reproduce_the_kernel():
    ones = LaguerreCoeffs.from_values(np.ones(60))
    np.testing.assert_allclose(kernel_series(ones, ZS, WS), reproducing_kernel(ZS, WS), atol=1e-13)
    _, tail = kernel_series(ones, ZS, WS, return_tail=True)
    assert np.max(tail) < 1e-30
    with pytest.raises(ValueError):
        kernel_bessel(dirac_at_zero(), 0.1, 0.2)


def test_weyl_apply_is_diagonal():
    f = HermiteRep.random(1, 4, np.random.default_rng(0))
    R = LaguerreCoeffs.from_values([1, 2, 3, 4, 5])
    g = weyl_apply(R, f)
    np.testing.assert_allclose(g.coeffs, f.coeffs * np.arange(1, 6))
    with pytest.raises(ValueError):
        weyl_apply(LaguerreCoeffs.from_values([1, 2]), f)


def test_weyl_matrix_projects_onto_levels():
    for k in range(4):
        M = weyl_matrix(laguerre_symbol(k), 8)
        P = np.zeros_like(M)
        P[k, k] = 1
        assert np.max(np.abs(M - P)) < 1e-10
    sig = gaussian_radial(1.0, 0.5)
    M = weyl_matrix(sig, 8)
    np.testing.assert_allclose(M, np.diag(laguerre_coeffs(sig, 80).values[:9]), atol=1e-10)


def test_kernel_operators_agree_with_the_diagonal_action():
    sig = gaussian_radial(1.0, 0.5)
    R = laguerre_coeffs(sig, 80)
    f = HermiteRep.random(1, 6, np.random.default_rng(1))
    F = FockRep(1, 6, f.coeffs)
    expected = evaluate(FockRep(1, 6, weyl_apply(R, f).coeffs), ZS)
    np.testing.assert_allclose(apply_S_K(series_kernel_evaluator(R), F, ZS), expected, atol=1e-8)
    # the Bessel form evaluates a radial integral per node, so probe a single point
    bessel = apply_S_K(bessel_kernel_evaluator(sig, order=40), F, ZS[:1], order=30)
    np.testing.assert_allclose(bessel, expected[:1], atol=1e-8)
    with pytest.raises(NumericalGuardError):
        apply_S_K(series_kernel_evaluator(R), F, 20.0)


def test_psi_sigma_transforms():
    x = np.array([0.3, -1.0, 1.4])
    y = np.array([0.5, 0.2, -0.9])
    np.testing.assert_allclose(psi_to_sigma(gaussian_psi, x, y), 0.5 * np.exp(-x ** 2 / 8 - y ** 2 / 2),
                               atol=1e-12)

    def sig(zz):
        zz = np.asarray(zz).reshape(-1)
        return 0.5 * np.exp(-zz.real ** 2 / 8 - zz.imag ** 2 / 2)

    u = np.array([0.4, -0.2])
    v = np.array([-0.7, 0.6])
    np.testing.assert_allclose(sigma_to_psi(sig, u, v), np.exp(-u ** 2 - v ** 2), atol=1e-12)
    with pytest.raises(NumericalGuardError):
        psi_to_sigma(gaussian_psi, np.array([80.0]), np.array([0.0]))


def test_bargmann2_of_a_product_is_a_product():
    # psi = Phi_0 (x) Phi_0 maps to 1
    def psi(u, v):
        return math.pi ** -0.5 * np.exp(-0.5 * (u[:, 0] ** 2 + v[:, 0] ** 2))

    a = np.array([0.3 + 0.1j, -0.4j])
    b = np.array([0.2, 0.5 + 0.5j])
    np.testing.assert_allclose(bargmann2(psi, a, b), 1.0, atol=1e-13)


def test_kernel_matrix_of_weyl_operator():
    # the Weyl operator of sigma has Schwartz kernel (2 pi)^(1/2) psi for sigma = psi_to_sigma(psi)
    def sig(zz):
        zz = np.asarray(zz).reshape(-1)
        return 0.5 * np.exp(-zz.real ** 2 / 8 - zz.imag ** 2 / 2)

    W = weyl_matrix(sig, 10, 48, (1 / math.sqrt(3 / 8), 1 / math.sqrt(3 / 4)))
    K = psi_kernel_matrix(gaussian_psi, 10)
    assert np.max(np.abs(W - K)) < 1e-8


def test_weyl_correspondence_needs_the_constant():
    probes = [0.5 + 0.2j, -0.3 - 0.6j]
    scales = (1 / math.sqrt(3 / 8), 1 / math.sqrt(3 / 4))
    good = verify_thm_1_11(gaussian_psi, 0.2 - 0.1j, probes, degree=30, constant=math.sqrt(2 * math.pi),
                           sigma_scales=scales)
    bare = verify_thm_1_11(gaussian_psi, 0.2 - 0.1j, probes, degree=30, sigma_scales=scales)
    assert good.max_abs_error < 1e-5
    assert bare.max_abs_error > 0.5
