"""Weyl transforms of radial symbols and their holomorphic kernels.

``W(sigma) f = int sigma(z) pi(z) f dz`` over C^n with Lebesgue measure.
For radial ``sigma`` it is diagonal, ``W(sigma) = sum_k R_k P_k``, and the
transferred operator ``B W(sigma) B*`` has kernel
``K(z, w) = sum_k R_k (z.w)^k / (2^k k!)``, also available as a Bessel
integral over ``sigma``. For a kernel ``psi`` on R^2n the operator with
Schwartz kernel ``psi`` relates to ``sigma`` by a partial Fourier transform.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .basis import FockRep, HermiteRep, as_points, basis_matrix, evaluate, fock_measure_rule
from .errors import NumericalGuardError
from .special_fn import (
    bessel_j_scaled,
    gauss_hermite_rule,
    gauss_laguerre_rule,
    hermite_poly_table,
    laguerre_poly,
    laguerre_table,
)
from .transforms import TransformReport, bargmann_integral

__all__ = [
    "RadialSymbol",
    "LaguerreCoeffs",
    "KernelEvaluator",
    "gaussian_radial",
    "laguerre_symbol",
    "dirac_at_zero",
    "laguerre_coeffs",
    "sigma_l1_norm",
    "weyl_apply",
    "kernel_series",
    "kernel_bessel",
    "reproducing_kernel",
    "series_kernel_evaluator",
    "bessel_kernel_evaluator",
    "apply_S_K",
    "psi_to_sigma",
    "sigma_to_psi",
    "bargmann2",
    "weyl_matrix",
    "psi_kernel_matrix",
    "verify_thm_1_11",
    "gaussian_psi",
]


@dataclass(frozen=True)
class RadialSymbol:
    """``sigma(z) = sigma_0(|z|)`` on C^n.

    ``rate`` is the Gaussian decay ``sigma_0(r) ~ exp(-rate r^2)`` used to
    scale quadrature; the remaining factor should be polynomial-like in
    ``r^2`` for exact Laguerre integration.
    """

    profile: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    n: int = 1
    kind: str = "function"
    rate: float = 0.25
    label: str = "radial"

    def __post_init__(self):
        if self.kind not in ("function", "dirac_at_zero"):
            raise ValueError("kind must be 'function' or 'dirac_at_zero'")
        if self.kind == "function" and self.rate <= -0.25:
            raise ValueError("profile must decay faster than exp(r^2/4)")

    def __call__(self, z):
        if self.kind != "function":
            raise ValueError("a Dirac measure has no pointwise values")
        pts, single = as_points(z, self.n)
        vals = np.asarray(self.profile(np.sqrt(np.sum(np.abs(pts) ** 2, axis=1))), dtype=complex)
        return complex(vals[0]) if single else vals


def gaussian_radial(c: complex = 1.0, a: float = 0.25, n: int = 1) -> RadialSymbol:
    """``c exp(-a |z|^2)``."""
    return RadialSymbol(lambda r: c * np.exp(-a * r * r), n, "function", a, f"{c}*exp(-{a}|z|^2)")


def laguerre_symbol(k: int, n: int = 1) -> RadialSymbol:
    """``(2 pi)^(-n) L_k^(n-1)(|z|^2/2) exp(-|z|^2/4)``; its coefficients are ``delta_jk``."""
    norm = (2 * math.pi) ** (-n)
    return RadialSymbol(lambda r: norm * laguerre_poly(k, n - 1, 0.5 * r * r) * np.exp(-0.25 * r * r),
                        n, "function", 0.25, f"laguerre_{k}")


def dirac_at_zero(n: int = 1) -> RadialSymbol:
    return RadialSymbol(lambda r: np.zeros_like(r), n, "dirac_at_zero", 0.0, "delta_0")


@dataclass(frozen=True)
class LaguerreCoeffs:
    n: int
    values: np.ndarray

    @property
    def k_max(self) -> int:
        return len(self.values) - 1

    @classmethod
    def from_values(cls, values, n: int = 1) -> "LaguerreCoeffs":
        return cls(n, np.asarray(values, dtype=complex))


@dataclass(frozen=True)
class KernelEvaluator:
    fn: Callable = field(repr=False)
    provenance: str = "custom"

    def __call__(self, z, w):
        return self.fn(z, w)


def _sphere_factor(n: int) -> float:
    """``int_{C^n} f(|z|) dz = sphere_factor * int f(sqrt(2t)) t^(n-1) dt``."""
    return 2.0 * math.pi ** n / math.factorial(n - 1) * 2.0 ** (n - 1)


def _radial_rule(sigma: RadialSymbol, order: int, extra_rate: float):
    """Nodes ``t`` and weights so that ``sum w g(t) ~ int sigma_0(sqrt 2t) g(t) exp(-extra t) t^(n-1) dt``."""
    n = sigma.n
    c = 2.0 * sigma.rate + extra_rate
    if c <= 0:
        raise NumericalGuardError("symbol does not decay fast enough for the radial rule")
    rule = gauss_laguerre_rule(order, n - 1.0)
    t = rule.nodes / c
    prof = np.asarray(sigma.profile(np.sqrt(2.0 * t)), dtype=complex)
    w = rule.weights * c ** (-n) * prof * np.exp(2.0 * sigma.rate * t)
    return t, w


def laguerre_coeffs(sigma: RadialSymbol, k_max: int, order: int | None = None,
                    tail_tol: float = 1e-6) -> LaguerreCoeffs:
    """``R_k = k!(n-1)!/(k+n-1)! int sigma(z) L_k^(n-1)(|z|^2/2) exp(-|z|^2/4) dz``."""
    n = sigma.n
    if sigma.kind == "dirac_at_zero":
        return LaguerreCoeffs(n, np.ones(k_max + 1, dtype=complex))
    order = k_max + 24 if order is None else order
    t, w = _radial_rule(sigma, order, 0.5)
    R = np.empty(k_max + 1, dtype=complex)
    table = laguerre_table(k_max, n - 1.0, t)
    for k in range(k_max + 1):
        pref = math.exp(math.lgamma(k + 1) + math.lgamma(n) - math.lgamma(k + n))
        R[k] = pref * _sphere_factor(n) * np.sum(w * table[k])
    peak = float(np.max(np.abs(R))) if R.size else 0.0
    if peak > 0 and abs(R[-1]) > tail_tol * peak and k_max > 0:
        warnings.warn(f"Laguerre coefficients not decayed at k={k_max}: |R|={abs(R[-1]):.3e}",
                      RuntimeWarning)
    return LaguerreCoeffs(n, R)


def sigma_l1_norm(sigma: RadialSymbol, order: int = 64) -> float:
    t, w = _radial_rule(
        RadialSymbol(lambda r: np.abs(sigma.profile(r)), sigma.n, "function", sigma.rate), order, 0.0)
    return float(_sphere_factor(sigma.n) * np.sum(w).real)


def weyl_apply(R: LaguerreCoeffs, f: HermiteRep) -> HermiteRep:
    """``W(sigma) f = sum_k R_k P_k f``."""
    if f.measure != "lebesgue":
        raise ValueError("weyl_apply expects a lebesgue HermiteRep")
    if R.k_max < f.degree:
        raise ValueError(f"need Laguerre coefficients up to k={f.degree}, have {R.k_max}")
    return HermiteRep(f.n, f.degree, f.coeffs * R.values[f.levels])


def _dot(z, w, n):
    pz, sz = as_points(z, n)
    pw, sw = as_points(w, n)
    return np.sum(pz * pw, axis=1), sz and sw


def kernel_series(R: LaguerreCoeffs, z, w, return_tail: bool = False):
    """``sum_k R_k (z.w)^k / (2^k k!)``; the tail estimate is the last term's size."""
    s, single = _dot(z, w, R.n)
    half = 0.5 * s
    term = np.ones_like(half)
    total = np.zeros_like(half)
    for k, r in enumerate(R.values):
        if k:
            term = term * half / k
        total = total + r * term
    tail = np.abs(R.values[-1] * term)
    out = complex(total[0]) if single else total
    if return_tail:
        return out, (float(tail[0]) if single else tail)
    return out


def reproducing_kernel(z, w, n: int = 1):
    s, single = _dot(z, w, n)
    vals = np.exp(0.5 * s)
    return complex(vals[0]) if single else vals


def kernel_bessel(sigma: RadialSymbol, z, w, order: int = 64):
    """Bessel-integral form of the kernel of ``B W(sigma) B*``.

    ``c_n exp(z.w/2) int sigma(zeta) J~_(n-1)(|zeta| sqrt(z.w)) exp(-|zeta|^2/4) dzeta``
    with ``J~_d(x) = J_d(x)/x^d`` and ``c_n = 2^(n-1) (n-1)!``.
    """
    if sigma.kind != "function":
        raise ValueError("kernel_bessel needs a function symbol")
    n = sigma.n
    s, single = _dot(z, w, n)
    root = np.sqrt(s.astype(complex))
    t, wts = _radial_rule(sigma, order, 0.5)
    r = np.sqrt(2.0 * t)
    vals = np.empty(s.shape[0], dtype=complex)
    for i, q in enumerate(root):
        vals[i] = np.sum(wts * bessel_j_scaled(n - 1, r * q))
    c_n = 2.0 ** (n - 1) * math.factorial(n - 1)
    vals = c_n * _sphere_factor(n) * np.exp(0.5 * s) * vals
    return complex(vals[0]) if single else vals


def series_kernel_evaluator(R: LaguerreCoeffs) -> KernelEvaluator:
    return KernelEvaluator(lambda z, w: kernel_series(R, z, w), "laguerre_series")


def bessel_kernel_evaluator(sigma: RadialSymbol, order: int = 64) -> KernelEvaluator:
    return KernelEvaluator(lambda z, w: kernel_bessel(sigma, z, w, order), "bessel_integral")


def apply_S_K(K: Callable, F, z, order: int | None = None, n: int | None = None):
    """``S_K F(z) = int F(w) K(z, conj w) dnu(w)`` by tensor quadrature."""
    n = F.n if isinstance(F, FockRep) else (n or 1)
    order = order or 2 * getattr(F, "degree", 20) + 40
    pts_z, single = as_points(z, n)
    if np.max(np.abs(pts_z)) > 0.5 * math.sqrt(order):
        raise NumericalGuardError("|z| too large for the quadrature order")
    w, wts = fock_measure_rule(n, order)
    Fw = evaluate(F, w) if isinstance(F, FockRep) else np.asarray(F(w), dtype=complex)
    wb = np.conj(w)
    out = np.empty(pts_z.shape[0], dtype=complex)
    for i, zi in enumerate(pts_z):
        zz = np.repeat(zi[None, :], wb.shape[0], axis=0)
        out[i] = np.sum(wts * Fw * np.asarray(K(zz, wb), dtype=complex))
    return complex(out[0]) if single else out


# ------------------------------------------------------------ psi <-> sigma

def _gh_nodes(n: int, order: int, scale: float):
    rule = gauss_hermite_rule(order)
    u = rule.nodes
    keep = rule.weights > 0
    w = np.zeros_like(u)
    w[keep] = scale * np.exp(np.log(rule.weights[keep]) + u[keep] ** 2)
    grids = np.meshgrid(*([scale * u] * n), indexing="ij")
    wgrids = np.meshgrid(*([w] * n), indexing="ij")
    X = np.stack([g.reshape(-1) for g in grids], axis=1)
    W = np.prod(np.stack([g.reshape(-1) for g in wgrids], axis=1), axis=1)
    return X, W


def _oscillation_order(order: int, freq: float) -> int:
    """Gauss-Hermite order that resolves ``exp(i freq u)`` across the node range."""
    need = int(0.6 * freq * freq) + 40
    if need > 800:
        raise NumericalGuardError(f"oscillation frequency {freq:.3g} too high for the quadrature")
    return max(order, need)


def psi_to_sigma(psi: Callable, x, y, n: int = 1, order: int = 80, scale: float = 0.5 ** 0.5):
    """``sigma(x + iy) = (2 pi)^(-n/2) int exp(-i x.xi) psi(xi + y/2, xi - y/2) dxi``.

    ``psi`` takes two ``(K, n)`` arrays. The rule is Gauss-Hermite on
    ``xi = scale * u``; pick ``scale`` so that ``exp(-u^2)`` matches the decay
    of ``psi(xi + y/2, xi - y/2)`` in ``xi`` (the default suits
    ``exp(-|u|^2 - |v|^2)``).
    """
    xs, single = as_points(x, n)
    ys, _ = as_points(y, n)
    out = np.empty(xs.shape[0], dtype=complex)
    for i in range(xs.shape[0]):
        xi, yi = xs[i].real, ys[i].real
        X, W = _gh_nodes(n, _oscillation_order(order, scale * float(np.max(np.abs(xi)))), scale)
        vals = np.asarray(psi(X + 0.5 * yi, X - 0.5 * yi), dtype=complex).reshape(-1)
        out[i] = np.sum(W * np.exp(-1j * X @ xi) * vals)
    out *= (2 * math.pi) ** (-n / 2)
    return complex(out[0]) if single else out


def sigma_to_psi(sigma: Callable, u, v, n: int = 1, order: int = 80, scale: float = 8.0 ** 0.5):
    """``psi(u, v) = (2 pi)^(-n/2) int exp(i x.(u+v)/2) sigma(x + i(u - v)) dx``.

    ``scale`` plays the same role as in :func:`psi_to_sigma`; the default
    matches a symbol decaying like ``exp(-x^2/8)``.
    """
    us, single = as_points(u, n)
    vs, _ = as_points(v, n)
    out = np.empty(us.shape[0], dtype=complex)
    for i in range(us.shape[0]):
        a, b = us[i].real, vs[i].real
        freq = 0.5 * scale * float(np.max(np.abs(a + b)))
        X, W = _gh_nodes(n, _oscillation_order(order, freq), scale)
        vals = np.asarray(sigma(X + 1j * (a - b)), dtype=complex).reshape(-1)
        out[i] = np.sum(W * np.exp(0.5j * X @ (a + b)) * vals)
    out *= (2 * math.pi) ** (-n / 2)
    return complex(out[0]) if single else out


def gaussian_psi(u, v):
    return np.exp(-np.sum(u * u, axis=1) - np.sum(v * v, axis=1))


def bargmann2(psi: Callable, a, b, n: int = 1, order: int = 60):
    """Two-variable Bargmann transform ``B psi(a, b)`` (prefactor ``pi^(-n/2)``)."""
    pa, single = as_points(a, n)
    pb, _ = as_points(b, n)
    rule = gauss_hermite_rule(order)
    axes = np.meshgrid(*([rule.nodes] * (2 * n)), indexing="ij")
    waxes = np.meshgrid(*([rule.weights] * (2 * n)), indexing="ij")
    P = np.stack([g.reshape(-1) for g in axes], axis=1)
    Wt = np.prod(np.stack([g.reshape(-1) for g in waxes], axis=1), axis=1)
    U, V = P[:, :n], P[:, n:]
    # psi * exp(-u^2/2 - v^2/2) against the weight exp(-u^2 - v^2)
    base = Wt * np.asarray(psi(U, V), dtype=complex) * np.exp(0.5 * np.sum(P * P, axis=1))
    out = np.empty(pa.shape[0], dtype=complex)
    for i in range(pa.shape[0]):
        ai, bi = pa[i], pb[i]
        expo = U @ ai + V @ bi - 0.25 * (ai @ ai + bi @ bi)
        out[i] = np.sum(base * np.exp(expo))
    out *= math.pi ** (-n / 2)
    return complex(out[0]) if single else out


# ------------------------------------------------------------ W(sigma) matrices

def weyl_matrix(sigma: Callable, degree: int, order: int = 48, scales=None,
                inner_order: int | None = None) -> np.ndarray:
    """Hermite matrix of ``W(sigma)`` for n = 1 by direct double quadrature.

    Uses ``(pi(x+iy) Phi_b, Phi_a) = exp(-(x^2+y^2)/4) int p_b(s + ix/2 + y/2)
    p_a(s + ix/2 - y/2) exp(-s^2) ds`` (exact by Gauss-Hermite) and a scaled
    tensor Gauss-Hermite rule over ``(x, y)``. ``sigma`` takes a complex array.
    The rule is exact for a polynomial times ``exp(-x^2/sx^2 - y^2/sy^2)``
    once the axis ``scales`` match the decay of ``sigma exp(-|z|^2/4)``;
    for a RadialSymbol they are derived from its rate.
    """
    if scales is None:
        rate = getattr(sigma, "rate", 0.0) + 0.25
        scales = (1.0 / math.sqrt(rate),) * 2
    inner = inner_order or degree + 2
    q = gauss_hermite_rule(inner)
    outer = gauss_hermite_rule(order)
    sx, sy = scales
    xs = sx * outer.nodes
    ys = sy * outer.nodes
    wx = sx * outer.weights * np.exp(outer.nodes ** 2)
    wy = sy * outer.weights * np.exp(outer.nodes ** 2)
    d = degree + 1
    M = np.zeros((d, d), dtype=complex)
    for i, x in enumerate(xs):
        for j, y in enumerate(ys):
            weight = wx[i] * wy[j] * complex(sigma(np.array([x + 1j * y]))[0]) * math.exp(-(x * x + y * y) / 4)
            if weight == 0:
                continue
            Pb = hermite_poly_table(degree, q.nodes + 0.5j * x + 0.5 * y)
            Pa = hermite_poly_table(degree, q.nodes + 0.5j * x - 0.5 * y)
            M += weight * (Pa * q.weights) @ Pb.T
    return M


def psi_kernel_matrix(psi: Callable, degree: int, order: int = 60) -> np.ndarray:
    """``(2 pi)^(1/2) int psi(eta, xi) Phi_a(xi) Phi_b(eta)``: the matrix of the
    operator whose Schwartz kernel is ``(2 pi)^(1/2) psi(eta, xi)`` (n = 1)."""
    rule = gauss_hermite_rule(order)
    u = rule.nodes
    w = rule.weights
    Pt = hermite_poly_table(degree, u)  # p_k(u), with Phi_k = p_k exp(-u^2/2)
    E, X = np.meshgrid(u, u, indexing="ij")
    vals = np.asarray(psi(E.reshape(-1, 1), X.reshape(-1, 1)), dtype=complex).reshape(E.shape)
    # psi * Phi_b(eta) Phi_a(xi) = (psi exp((eta^2+xi^2)/2)) p_b p_a exp(-eta^2 - xi^2)
    G = vals * np.exp(0.5 * (E * E + X * X))
    core = (Pt * w) @ G.T @ (Pt * w).T  # [a, b]: sum over xi (a) and eta (b)
    return math.sqrt(2 * math.pi) * core


def verify_thm_1_11(psi: Callable, w, probes, degree: int = 40, order: int = 48,
                    constant: complex = 1.0, sigma: Callable | None = None,
                    sigma_scales=(2.0, 2.0)) -> TransformReport:
    """Compare ``B W(sigma) B* g_w(z)`` with ``constant * B psi(w, z)`` at probe points (n = 1).

    ``g_w(z) = exp(z.w/2)`` so ``B* g_w = h_w = sum Phi_a zeta_a(w)``. The
    left side applies the directly integrated ``W(sigma)`` matrix to the
    degree-``degree`` truncation of ``h_w`` and evaluates ``B`` of the result
    by its defining integral. ``sigma`` defaults to ``psi_to_sigma(psi)``.
    """
    if sigma is None:
        def sigma(zs, psi=psi):
            zs = np.asarray(zs).reshape(-1)
            return psi_to_sigma(psi, zs.real, zs.imag)

    Wm = weyl_matrix(sigma, degree, order, sigma_scales)
    h = basis_matrix("fock", 1, degree, np.array([[w]]))[0]
    Wh = HermiteRep(1, degree, Wm @ h)
    report = TransformReport("weyl-correspondence")
    pts = np.asarray(probes, dtype=complex).reshape(-1)
    lhs = bargmann_integral(Wh, pts.reshape(-1, 1), order=max(2 * degree + 16, 64))
    rhs = constant * bargmann2(psi, np.full(pts.shape, w), pts)
    for p, a, b in zip(pts, np.atleast_1d(lhs), np.atleast_1d(rhs)):
        report.add(complex(p), a, b)
    return report
