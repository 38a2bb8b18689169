"""Hermite, Laguerre and Bessel evaluation plus Gaussian quadrature rules.

Everything here works in double precision and accepts numpy arrays.
Hermite polynomials follow the physicists' convention,
``exp(-w**2 + 2*x*w) = sum_k H_k(x) w**k / k!``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "QuadratureRule",
    "hermite_poly",
    "hermite_fn",
    "hermite_fn_table",
    "hermite_poly_table",
    "laguerre_poly",
    "laguerre_table",
    "bessel_j_scaled",
    "gauss_hermite_rule",
    "gauss_laguerre_rule",
    "half_hermite_rule",
]

PI_QUARTER = math.pi ** -0.25
BESSEL_CROSSOVER = 12.0


def hermite_poly(k: int, x):
    """Physicists' Hermite polynomial H_k(x) by three-term recurrence."""
    if k < 0:
        raise ValueError("degree must be non-negative")
    x = np.asarray(x)
    h_prev = np.ones_like(x, dtype=np.result_type(x, float))
    if k == 0:
        return h_prev if h_prev.ndim else h_prev[()]
    h = 2.0 * x
    for j in range(1, k):
        h_prev, h = h, 2.0 * x * h - 2.0 * j * h_prev
    return h if np.ndim(h) else h[()]


def hermite_poly_table(degree: int, x) -> np.ndarray:
    """Normalized Hermite polynomials p_k = H_k / sqrt(sqrt(pi) 2^k k!).

    ``p_k`` is orthonormal for the weight ``exp(-x**2)``, so that the
    Hermite function is ``p_k(x) exp(-x**2/2)``. Complex ``x`` is fine.
    Returns an array of shape ``(degree + 1,) + x.shape``.
    """
    x = np.asarray(x)
    out = np.empty((degree + 1,) + x.shape, dtype=np.result_type(x, float))
    out[0] = PI_QUARTER
    if degree >= 1:
        out[1] = math.sqrt(2.0) * x * PI_QUARTER
    for k in range(1, degree):
        out[k + 1] = (x * math.sqrt(2.0 / (k + 1)) * out[k]
                      - math.sqrt(k / (k + 1)) * out[k - 1])
    return out


def hermite_fn_table(degree: int, x) -> np.ndarray:
    """Hermite functions Phi_0..Phi_degree at real points x.

    The recurrence runs on the normalized functions themselves, seeded by
    ``pi**-0.25 * exp(-x**2/2)``, so no factorials are ever formed.
    """
    x = np.asarray(x, dtype=float)
    out = np.empty((degree + 1,) + x.shape)
    out[0] = PI_QUARTER * np.exp(-0.5 * x * x)
    if degree >= 1:
        out[1] = math.sqrt(2.0) * x * out[0]
    for k in range(1, degree):
        out[k + 1] = (x * math.sqrt(2.0 / (k + 1)) * out[k]
                      - math.sqrt(k / (k + 1)) * out[k - 1])
    return out


def hermite_fn(alpha: Sequence[int] | int, x) -> float:
    """Normalized Hermite function Phi_alpha at a point of R^n."""
    alpha = (alpha,) if isinstance(alpha, (int, np.integer)) else tuple(alpha)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.shape[-1] != len(alpha):
        raise ValueError("point dimension does not match multi-index length")
    val = 1.0
    for a, xj in zip(alpha, x):
        val *= hermite_fn_table(a, xj)[a]
    return float(val)


def laguerre_table(degree: int, delta: float, t) -> np.ndarray:
    """Laguerre polynomials L_0^delta .. L_degree^delta at t."""
    t = np.asarray(t)
    out = np.empty((degree + 1,) + t.shape, dtype=np.result_type(t, float))
    out[0] = 1.0
    if degree >= 1:
        out[1] = 1.0 + delta - t
    for k in range(1, degree):
        out[k + 1] = ((2 * k + 1 + delta - t) * out[k] - (k + delta) * out[k - 1]) / (k + 1)
    return out


def laguerre_poly(k: int, delta: float, t):
    """Generalized Laguerre polynomial L_k^delta(t)."""
    if k < 0:
        raise ValueError("degree must be non-negative")
    val = laguerre_table(k, delta, t)[k]
    return val if np.ndim(val) else val[()]


# ---------------------------------------------------------------- Bessel

def _bessel_series(delta: float, tau: np.ndarray, terms: int = 90) -> np.ndarray:
    q = -(tau * tau) / 4.0
    term = np.full(tau.shape, 1.0 / (2.0 ** delta * math.gamma(delta + 1.0)), dtype=complex)
    total = term.copy()
    for m in range(1, terms):
        term = term * q / (m * (m + delta))
        total += term
    return total


def _bessel_miller(order: int, tau: np.ndarray) -> np.ndarray:
    """J_order(tau) by backward recurrence, |tau| bounded away from 0."""
    start = int(1.5 * np.max(np.abs(tau))) + order + 40
    start += start % 2
    # normalize with exp(-i s tau) = J_0 + 2 sum (-i s)^k J_k, s chosen so
    # that |exp(-i s tau)| >= 1 and the sum has no cancellation
    s = np.where(tau.imag >= 0, 1.0, -1.0)
    ratio = -1j * s
    j_next = np.zeros(tau.shape, dtype=complex)
    j_cur = np.full(tau.shape, 1e-30, dtype=complex)
    norm = 2.0 * ratio ** start * j_cur
    wanted = np.zeros(tau.shape, dtype=complex)
    if start == order:
        wanted = j_cur.copy()
    for k in range(start, 0, -1):
        j_prev = (2.0 * k / tau) * j_cur - j_next
        j_next, j_cur = j_cur, j_prev
        if k - 1 == order:
            wanted = j_cur.copy()
        norm += (2.0 * ratio ** (k - 1) if k > 1 else 1.0) * j_cur
        big = np.abs(j_cur) > 1e250
        if np.any(big):
            scale = np.where(big, 1e-250, 1.0)
            j_cur, j_next, norm, wanted = j_cur * scale, j_next * scale, norm * scale, wanted * scale
    return wanted / norm * np.exp(-1j * s * tau)


def bessel_j_scaled(delta: float, tau):
    """J_delta(tau) / tau**delta for complex tau.

    The scaled function is even and entire, so the branch of a square root
    feeding ``tau`` does not matter. Power series below ``|tau| = 12``,
    Miller backward recurrence above (integer order only there).
    """
    if delta < 0:
        raise ValueError("order must be non-negative")
    tau_arr = np.asarray(tau, dtype=complex)
    flat = tau_arr.reshape(-1)
    out = np.empty(flat.shape, dtype=complex)
    small = np.abs(flat) < BESSEL_CROSSOVER
    if np.any(small):
        out[small] = _bessel_series(delta, flat[small])
    if np.any(~small):
        if float(delta) != int(delta):
            raise ValueError("non-integer order only supported for |tau| < 12")
        big = flat[~small]
        out[~small] = _bessel_miller(int(delta), big) / big ** int(delta)
    out = out.reshape(tau_arr.shape)
    return out if out.ndim else out[()]


# ------------------------------------------------------------ quadrature

@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and positive weights for ``integral g(x) w(x) dx``."""

    kind: str
    nodes: np.ndarray
    weights: np.ndarray
    delta: float = 0.0

    def __post_init__(self):
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)

    @property
    def order(self) -> int:
        return len(self.nodes)

    def integrate(self, g: Callable[[np.ndarray], np.ndarray]):
        return np.sum(self.weights * g(self.nodes))


def _orthonormal_values(x, a, b, mu0, degree):
    """p_degree, p'_degree and sum_{k<degree} p_k^2 with overflow rescaling.

    Recurrence: x p_k = b[k+1] p_{k+1} + a[k] p_k + b[k] p_{k-1}. The three
    outputs share a common (unknown) scale, which is fine for Newton
    steps; the Christoffel sum is returned already corrected.
    """
    x = np.asarray(x, dtype=float)
    p_prev = np.zeros_like(x)
    dp_prev = np.zeros_like(x)
    p = np.full_like(x, 1.0 / math.sqrt(mu0))
    dp = np.zeros_like(x)
    log_scale = np.zeros_like(x)
    csum = np.zeros_like(x)  # in units of exp(2*log_scale)
    for k in range(degree):
        csum = csum + p * p
        p_new = ((x - a[k]) * p - (b[k] * p_prev if k else 0.0)) / b[k + 1]
        dp_new = ((x - a[k]) * dp + p - (b[k] * dp_prev if k else 0.0)) / b[k + 1]
        p_prev, p, dp_prev, dp = p, p_new, dp, dp_new
        big = np.abs(p) > 1e150
        if np.any(big):
            f = np.where(big, 1e-150, 1.0)
            p, p_prev, dp, dp_prev = p * f, p_prev * f, dp * f, dp_prev * f
            csum = csum * f * f
            log_scale = log_scale + np.where(big, 150 * math.log(10.0), 0.0)
    with np.errstate(over="ignore", under="ignore"):
        true_sum = csum * np.exp(2.0 * log_scale)
    return p, dp, true_sum


def _gauss_from_recurrence(a, b, mu0, order, kind, delta=0.0, newton_steps=3):
    """Golub-Welsch start, Newton polish on p_Q, Christoffel weights."""
    a = np.asarray(a[:order + 1], dtype=float)
    b = np.asarray(b[:order + 1], dtype=float)
    jac = np.diag(a[:order]) + np.diag(b[1:order], 1) + np.diag(b[1:order], -1)
    x = np.linalg.eigvalsh(jac)
    for _ in range(newton_steps):
        p, dp, _ = _orthonormal_values(x, a, b, mu0, order)
        x = x - p / dp
    _, _, csum = _orthonormal_values(x, a, b, mu0, order)
    w = 1.0 / csum
    idx = np.argsort(x)
    return QuadratureRule(kind, x[idx].copy(), w[idx].copy(), delta)


@lru_cache(maxsize=64)
def gauss_hermite_rule(order: int) -> QuadratureRule:
    """Gauss-Hermite rule for ``integral g(x) exp(-x**2) dx`` over R."""
    if order < 1:
        raise ValueError("quadrature order must be at least 1")
    k = np.arange(order + 1, dtype=float)
    a = np.zeros(order + 1)
    b = np.sqrt(k / 2.0)
    rule = _gauss_from_recurrence(a, b, math.sqrt(math.pi), order, "gauss-hermite")
    # symmetrize: removes the last-bit asymmetry of the eigen-solver
    x = 0.5 * (rule.nodes - rule.nodes[::-1])
    w = 0.5 * (rule.weights + rule.weights[::-1])
    return QuadratureRule("gauss-hermite", x, w)


@lru_cache(maxsize=64)
def gauss_laguerre_rule(order: int, delta: float = 0.0) -> QuadratureRule:
    """Gauss-Laguerre rule for ``integral_0^inf g(t) t**delta exp(-t) dt``."""
    if order < 1:
        raise ValueError("quadrature order must be at least 1")
    if not delta > -1.0:
        raise ValueError("Laguerre type must exceed -1")
    k = np.arange(order + 1, dtype=float)
    a = 2.0 * k + delta + 1.0
    b = np.sqrt(k * (k + delta))
    return _gauss_from_recurrence(a, b, math.gamma(delta + 1.0), order,
                                  "gauss-laguerre", delta)


@lru_cache(maxsize=32)
def _half_hermite_recurrence(order: int):
    import mpmath

    with mpmath.workdps(40 + 3 * order):
        moments = [mpmath.gamma(mpmath.mpf(k + 1) / 2) / 2 for k in range(2 * order + 2)]
        n_mom = len(moments)
        alpha, beta = [], []
        sig_prev = [mpmath.mpf(0)] * n_mom
        sig = list(moments)
        alpha.append(sig[1] / sig[0])
        beta.append(sig[0])
        for k in range(1, order + 1):
            sig_new = [mpmath.mpf(0)] * n_mom
            for l in range(k, n_mom - k):
                sig_new[l] = sig[l + 1] - alpha[k - 1] * sig[l] - beta[k - 1] * sig_prev[l]
            alpha.append(sig_new[k + 1] / sig_new[k] - sig[k] / sig[k - 1])
            beta.append(sig_new[k] / sig[k - 1])
            sig_prev, sig = sig, sig_new
        a = [float(v) for v in alpha]
        b = [0.0] + [float(mpmath.sqrt(v)) for v in beta[1:]]
        return np.array(a), np.array(b), float(beta[0])


@lru_cache(maxsize=32)
def half_hermite_rule(order: int) -> QuadratureRule:
    """Gauss rule for ``integral_0^inf g(x) exp(-x**2) dx``.

    Recurrence coefficients come from the Chebyshev algorithm on the
    exact moments Gamma((k+1)/2)/2, run in extended precision.
    """
    if order < 1:
        raise ValueError("quadrature order must be at least 1")
    a, b, mu0 = _half_hermite_recurrence(order)
    return _gauss_from_recurrence(a, b, mu0, order, "half-hermite")
