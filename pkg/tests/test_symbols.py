import math

import numpy as np
import pytest

from focklab import symbols


def _fd(m, x, j=0, h=1e-5):
    e = np.zeros_like(x)
    e[:, j] = h
    return (m(x + e) - m(x - e)) / (2 * h)


@pytest.mark.parametrize("make", [
    lambda: symbols.gaussian(2),
    lambda: symbols.sine(2),
    lambda: symbols.monomial((2, 1)),
    lambda: symbols.schrodinger(0.7, 2),
])
def test_derivatives_match_finite_differences(make):
    m = make()
    x = np.array([[0.3, -0.4], [1.1, 0.2], [-0.7, 0.9]])
    for j in range(2):
        alpha = [0, 0]
        alpha[j] = 1
        np.testing.assert_allclose(m.derivative(alpha)(x), _fd(m, x, j), atol=1e-8)
    # second derivatives through the chain
    d2 = m.derivative((1, 0)).derivative((1, 0))
    np.testing.assert_allclose(d2(x), m.derivative((2, 0))(x), atol=1e-12)


def test_missing_derivatives_raise():
    with pytest.raises(ValueError):
        symbols.sign().derivative(1)
    with pytest.raises(ValueError):
        symbols.gaussian(2).derivative(1)
    assert symbols.sign().derivative(0).label == "sign"


def test_rule_is_exact_for_polynomials_against_the_weight():
    # int xi^(2k) exp(-(1+a) xi^2) dxi = Gamma(k + 1/2) (1+a)^(-k-1/2)
    m = symbols.gaussian()
    X, W = m.rule(20)
    for k in range(8):
        ref = math.gamma(k + 0.5) * 2.0 ** (-k - 0.5)
        assert np.sum(W * X[:, 0] ** (2 * k)).real == pytest.approx(ref, rel=1e-12)


def test_rule_handles_oscillatory_gaussians_exactly():
    t = 1.3
    X, W = symbols.schrodinger(t).rule(10)
    # int exp(-i t xi^2) exp(-xi^2) dxi = sqrt(pi / (1 + i t))
    assert np.sum(W) == pytest.approx(np.sqrt(math.pi / (1 + 1j * t)), abs=1e-13)


def test_split_rule_for_sign():
    X, W = symbols.sign().rule(16)
    for k in range(6):
        # odd moments of sign(xi) exp(-xi^2) equal Gamma((k+1)/2), even moments vanish
        ref = math.gamma((k + 1) / 2) if k % 2 else 0.0
        assert np.sum(W * X[:, 0] ** k) == pytest.approx(ref, abs=1e-12)


def test_metadata():
    assert symbols.constant(2.0, 3).is_constant
    assert symbols.sine().sup_norm == 1.0
    assert symbols.exp_half().growth == "other"
    assert symbols.coordinate(1, 2).growth == "polynomial(1)"
    assert symbols.schrodinger(0.0).is_constant
    assert symbols.gaussian().derivative(1).sup_norm == pytest.approx(math.sqrt(2 / math.e), rel=1e-5)


def test_builtin_lookup():
    for name in symbols.BUILTIN_NAMES:
        m = symbols.builtin(name, n=2)
        assert m.n == 2
        assert np.asarray(m(np.zeros((3, 2)))).shape == (3,)
    with pytest.raises(ValueError, match="unknown symbol"):
        symbols.builtin("tan")


def test_from_callable():
    m = symbols.from_callable(np.cos, label="cos")
    assert m(0.0) == 1.0
    np.testing.assert_allclose(m(np.array([0.5, 1.0])), np.cos([0.5, 1.0]))
