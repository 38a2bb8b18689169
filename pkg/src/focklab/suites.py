"""Named verification suites behind ``focklab verify``.

Each suite takes a :class:`SuiteConfig`, draws every random input from one
``numpy.random.default_rng(seed)`` stream in a fixed order, and returns a
:class:`~focklab.report.Report`. ``tol`` replaces the default tolerance of
every error-bound check in the suite; interval and yes/no checks keep their
own limits.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import regression, symbols
from .basis import (
    FockRep,
    HermiteRep,
    SpaceTag,
    basis_matrix,
    basis_size,
    enumerate_indices,
    evaluate,
    fock_sobolev_integral_norm,
    levels,
    space_norm,
)
from .multipliers import (
    fock_laplacian_residual,
    gmult_matrix,
    kernel_route_matrix,
    lemma22_test,
    lemma31_residuals,
    multiplier_matrix,
    op_norm,
    phi_evaluator,
    phi_from_m,
    phi_t_closed_form,
    phi_tilde_evaluator,
    pointwise_matrix,
    smoothing_check,
    uncertainty_scan,
    NormScan,
)
from .report import Report
from .special_fn import gauss_hermite_rule
from .transforms import (
    bargmann,
    bargmann_adjoint,
    bargmann_integral,
    fourier_hermite,
    gauss_bargmann,
    gauss_bargmann_adjoint,
    gauss_bargmann_rep,
    hermite_kernel_sum,
    intertwining_residuals,
    lemma21_residuals,
    rotate_u,
)
from .weyl import (
    LaguerreCoeffs,
    dirac_at_zero,
    gaussian_psi,
    gaussian_radial,
    kernel_bessel,
    kernel_series,
    laguerre_coeffs,
    laguerre_symbol,
    psi_to_sigma,
    reproducing_kernel,
    sigma_to_psi,
    verify_thm_1_11,
    weyl_matrix,
)

__all__ = ["evolve_chain", "default_pad", "SuiteConfig", "SUITES", "SUITE_DIMENSIONS", "DEFAULT_SEED", "run_suite", "UnsupportedConfig"]

DEFAULT_SEED = 0x5EED


class UnsupportedConfig(ValueError):
    """A suite was asked for a dimension or degree it does not handle."""


@dataclass(frozen=True)
class SuiteConfig:
    suite: str
    n: int = 1
    degree: int | None = None
    quad: int | None = None
    tol: float | None = None
    seed: int = DEFAULT_SEED

    def to_dict(self) -> dict:
        return {"suite": self.suite, "n": self.n, "degree": self.degree, "quad": self.quad,
                "tol": self.tol, "seed": self.seed}


def _tol(cfg: SuiteConfig, default: float) -> float:
    return default if cfg.tol is None else cfg.tol


def _tensor_gh(n: int, order: int) -> tuple[np.ndarray, np.ndarray]:
    q = gauss_hermite_rule(order)
    grids = np.meshgrid(*([q.nodes] * n), indexing="ij")
    wgrids = np.meshgrid(*([q.weights] * n), indexing="ij")
    X = np.stack([g.reshape(-1) for g in grids], axis=1)
    W = np.prod(np.stack([g.reshape(-1) for g in wgrids], axis=1), axis=1)
    return X, W


def _probes(rng: np.random.Generator, count: int, n: int, radius: float) -> np.ndarray:
    """Points of the polydisk ``|z_j| <= radius``, shape ``(count, n)``."""
    r = radius * np.sqrt(rng.uniform(0.0, 1.0, (count, n)))
    th = rng.uniform(0.0, 2 * math.pi, (count, n))
    return r * np.exp(1j * th)


def _random_gauss(n: int, degree: int, rng) -> HermiteRep:
    return HermiteRep.random(n, degree, rng, measure="gauss")


# ------------------------------------------------------------ suites

def suite_orthonormality(cfg: SuiteConfig, rng) -> Report:
    n = cfg.n
    N = cfg.degree if cfg.degree is not None else (20 if n == 1 else 8)
    rep = Report("orthonormality", cfg.seed)
    order = cfg.quad or N + 1
    X, W = _tensor_gh(n, order)
    P = basis_matrix("poly", n, N, X)
    # Phi_a Phi_b = p_a p_b exp(-|x|^2), so Gauss-Hermite of order N+1 is exact
    gram = P.T @ (W[:, None] * P)
    rep.upper("gram max |<Phi_a,Phi_b> - delta_ab|", np.max(np.abs(gram - np.eye(len(gram)))),
              _tol(cfg, 1e-12))
    worst = rounding = 0.0
    for _ in range(5):
        f = HermiteRep.random(n, N, rng)
        quad_norm = math.sqrt(float(np.sum(W * np.abs(P @ f.coeffs) ** 2)))
        worst = max(worst, abs(quad_norm - f.norm()))
        rounding = max(rounding, abs(space_norm(f, SpaceTag("L2")) - float(np.linalg.norm(f.coeffs))))
    rep.upper("plancherel |quadrature norm - coefficient norm|", worst, _tol(cfg, 1e-10))
    # same sum in a different order: only rounding may separate them
    rep.upper("plancherel space_norm vs Euclidean norm", rounding, 1e-14)
    return rep


def suite_bargmann(cfg: SuiteConfig, rng) -> Report:
    n = cfg.n
    N = cfg.degree if cfg.degree is not None else 12
    rep = Report("bargmann", cfg.seed)
    z = _probes(rng, 25, n, 2.0)
    Z = basis_matrix("fock", n, N, z)
    worst = 0.0
    for i, alpha in enumerate(enumerate_indices(n, N)):
        f = HermiteRep.basis(n, N, alpha)
        vals = bargmann_integral(f, z, cfg.quad)
        worst = max(worst, float(np.max(np.abs(vals - Z[:, i]))))
    rep.upper("route |bargmann_integral - eval(bargmann)|", worst, _tol(cfg, 1e-9))
    f = HermiteRep.random(n, N, rng)
    F = FockRep.random(n, N, rng)
    rep.flag("B*B = Id exactly", np.array_equal(bargmann_adjoint(bargmann(f)).coeffs, f.coeffs))
    rep.flag("BB* = Id exactly", np.array_equal(bargmann(bargmann_adjoint(F)).coeffs, F.coeffs))
    rep.flag("B Fourier = U B exactly",
             np.array_equal(bargmann(fourier_hermite(f)).coeffs, rotate_u(bargmann(f)).coeffs))
    # generating function sum Phi_a(x) zeta_a(w) = pi^(-n/4) exp(-x^2/2 + x.w - w^2/4)
    gen = 0.0
    x = rng.uniform(-1.0, 1.0, (5, n))
    w = _probes(rng, 5, n, 1.0)
    for xi, wi in zip(x, w):
        ref = math.pi ** (-n / 4) * np.exp(-0.5 * xi @ xi + xi @ wi - 0.25 * wi @ wi)
        gen = max(gen, abs(hermite_kernel_sum(xi, wi, 40) - ref))
    rep.upper("generating identity at degree 40", gen, _tol(cfg, 1e-8))
    return rep


def suite_gauss_bargmann(cfg: SuiteConfig, rng) -> Report:
    n = cfg.n
    N = cfg.degree if cfg.degree is not None else 10
    rep = Report("gauss-bargmann", cfg.seed)
    g = _random_gauss(n, N, rng)
    Gg = gauss_bargmann_rep(g)
    z = _probes(rng, 10, n, 1.5)
    quad = gauss_bargmann(g, z, order=cfg.quad or 64)
    rep.upper("route |G quadrature - G coefficients|", np.max(np.abs(quad - evaluate(Gg, z))),
              _tol(cfg, 1e-9))
    X, W = _tensor_gh(n, N + 2)
    gamma_norm = math.sqrt(float(np.sum(W * np.abs(evaluate(g, X)) ** 2)))
    rep.upper("unitarity |pi^(-n/4) Gg| = |g|_gamma", abs(math.pi ** (-n / 4) * Gg.norm() - gamma_norm),
              _tol(cfg, 1e-10))
    x = rng.uniform(-1.0, 1.0, (6, n))
    back = gauss_bargmann_adjoint(Gg, x)
    rep.upper("G* inverts G", np.max(np.abs(back - evaluate(g, x))), _tol(cfg, 1e-8))
    # G exp(-|x|^2) = (pi/2)^(n/2) exp(z^2/8)
    Gm = gauss_bargmann_rep(symbols.gaussian(n), n, 40 if n == 1 else 24)
    ref = (math.pi / 2) ** (n / 2) * np.exp(np.sum(z * z, axis=1) / 8)
    rep.upper("G of the Gaussian symbol, closed form", np.max(np.abs(evaluate(Gm, z) - ref)), _tol(cfg, 1e-9))
    return rep


def suite_reproducing(cfg: SuiteConfig, rng) -> Report:
    n = cfg.n
    N = cfg.degree if cfg.degree is not None else 10
    rep = Report("reproducing", cfg.seed)
    order = cfg.quad or (2 * N + 40 if n == 1 else N + 20)
    one = lambda v: np.ones(np.asarray(v).shape[0], dtype=complex)  # noqa: E731
    z = _probes(rng, 10, n, 1.0)
    K = kernel_route_matrix(one, n, N, z, order)
    worst = 0.0
    for _ in range(5):
        F = FockRep.random(n, N, rng)
        worst = max(worst, float(np.max(np.abs(K @ F.coeffs - evaluate(F, z)))))
    rep.upper("reproducing formula max |int F K dnu - F(z)|", worst, _tol(cfg, 1e-8))
    return rep


def _route_symbols(n: int) -> list:
    if n == 1:
        return [symbols.constant(1.0), symbols.coordinate(0), symbols.sine(), symbols.sign(),
                symbols.gaussian(), symbols.schrodinger(0.5)]
    return [symbols.constant(1.0, n), symbols.gaussian(n), symbols.schrodinger(0.5, n)]


def _gaussian_phi(m, n: int):
    """Closed-form ``phi`` for ``m = exp(-a |xi|^2)``: ``(1+a)^(-n/2) exp(a v^2 / (4(1+a)))``."""
    a = complex(m.gauss_rate)

    def phi(v):
        v = np.asarray(v, dtype=complex)
        return (1 + a) ** (-n / 2) * np.exp(0.25 * a / (1 + a) * np.sum(v * v, axis=1))

    return phi


def _gaussian_phi_tilde(m, n: int):
    a = complex(m.gauss_rate)

    def phi(v):
        v = np.asarray(v, dtype=complex)
        return (1 + a) ** (-n / 2) * np.exp(-0.25 * a / (1 + a) * np.sum(v * v, axis=1))

    return phi


def suite_multiplier_routes(cfg: SuiteConfig, rng) -> Report:
    n = cfg.n
    N = cfg.degree if cfg.degree is not None else (10 if n == 1 else 3)
    rep = Report("multiplier-routes", cfg.seed)
    tol = _tol(cfg, 1e-6)
    if n == 1:
        kord, pad, count, gm_order, inner = cfg.quad or 2 * N + 40, 40, 10, None, None
    else:
        # C^2 tensor rules grow as order^4; the symbols are Gaussians with closed-form phi
        kord, pad, count, gm_order, inner = cfg.quad or 24, 16, 3, 20, 20
    z = _probes(rng, count, n, 0.7)
    Fs = [FockRep.random(n, N, rng) for _ in range(20)]
    C = np.stack([F.coeffs for F in Fs], axis=1)
    out = N + pad
    Z = basis_matrix("fock", n, out, z)
    Zin = basis_matrix("fock", n, N, z)
    U_in = (1j ** (levels(n, N) % 4))[:, None]
    U_out = ((-1j) ** (levels(n, out) % 4))[:, None]
    for m in _route_symbols(n):
        if n == 1:
            phi, phi_t = phi_evaluator(m, 120), phi_tilde_evaluator(m, 120)
        else:
            phi, phi_t = _gaussian_phi(m, n), _gaussian_phi_tilde(m, n)
        A = multiplier_matrix(m, n, N, out_degree=out).entries
        spec = Z @ (A @ C)
        kern = kernel_route_matrix(phi, n, N, z, kord) @ C
        gm = Z @ (gmult_matrix(m, n, N, out, order=gm_order, inner_order=inner) @ C)
        rep.upper(f"S_phi[{m.label}] kernel vs spectral", np.max(np.abs(kern - spec)), tol)
        rep.upper(f"S_phi[{m.label}] gmult vs spectral", np.max(np.abs(gm - spec)), tol)
        # S~ for U phi: kernel route against U S_phi U*
        conj = Z @ (U_out * (A @ (U_in * C)))
        tk = kernel_route_matrix(phi_t, n, N, z, kord, plus=True) @ C
        rep.upper(f"S~[{m.label}] kernel vs U S_phi U*", np.max(np.abs(tk - conj)), tol)
        # S~ of U phi is multiplication by m on the Hermite side
        pw = Z @ (pointwise_matrix(m, n, N, out_degree=out).entries @ C)
        rep.upper(f"S~[{m.label}] kernel vs pointwise spectral", np.max(np.abs(tk - pw)), tol)
        if m.is_constant:
            A0 = multiplier_matrix(m, n, N).entries
            rep.upper("identity anchor m = 1, spectral matrix", np.max(np.abs(A0 - np.eye(len(A0)))),
                      _tol(cfg, 1e-10))
            anchor = kernel_route_matrix(phi, n, N, z, kord, scales=(math.sqrt(2.0),) * (2 * n)) @ C
            rep.upper("identity anchor m = 1, kernel route", np.max(np.abs(anchor - Zin @ C)),
                      _tol(cfg, 1e-10))
    return rep


def suite_lemma21(cfg: SuiteConfig, rng) -> Report:
    n = cfg.n
    N = cfg.degree if cfg.degree is not None else 8
    rep = Report("lemma21", cfg.seed)
    tol = _tol(cfg, 1e-10)
    worst: dict[str, float] = {}
    for _ in range(5):
        for key, val in lemma21_residuals(_random_gauss(n, N, rng)).items():
            worst[key] = max(worst.get(key, 0.0), val)
        res = intertwining_residuals(HermiteRep.random(n, N, rng))
        for key, val in res.items():
            if key.startswith("D* B = B d"):
                continue  # the sign-flipped form is not an identity
            worst[key] = max(worst.get(key, 0.0), val)
    for key, val in worst.items():
        name = f"derivative identity {key}" if key.startswith("(") else f"intertwining {key}"
        rep.upper(name, val, tol)
    return rep


def suite_lemma22(cfg: SuiteConfig, rng) -> Report:
    n = cfg.n
    rep = Report("lemma22", cfg.seed)
    ladder = (8, 16, 32, 64) if n == 1 else (8, 16, 32, 48)
    xi = lemma22_test(symbols.coordinate(0, n), 1, ladder, cfg.quad)
    rep.flag("xi_1 consistent with membership", xi.bounded)
    if n == 1:
        top = ladder[-1]
        scan = xi.scans[(0,)]
        rep.within("xi_1 plateau / frozen value", scan.norms[-1] / regression.XI_PLATEAU[top],
                   0.99, 1.01)
    wit = lemma22_test(symbols.exp_half(n), 0, (8, 16, 32), cfg.quad)
    rep.flag("exp(xi^2/2) flagged unbounded", not wit.bounded)
    rep.flag("exp(xi^2/2) monotone growth",
             all(s.strictly_increasing() for s in wit.scans.values()))
    const = lemma22_test(symbols.constant(1.0, n), 2, (8, 16, 32), cfg.quad)
    rep.flag("constant consistent with membership", const.bounded)
    for r in (xi, wit):
        for s in r.scans.values():
            rep.add_scan(s)
    return rep


def suite_lemma31(cfg: SuiteConfig, rng) -> Report:
    n = cfg.n
    N = cfg.degree if cfg.degree is not None else 8
    rep = Report("lemma31", cfg.seed)
    tol = _tol(cfg, 1e-10)
    worst: dict[str, float] = {}
    syms = [symbols.gaussian(n), symbols.sine(n), symbols.schrodinger(0.5, n)]
    for m in syms:
        phi = phi_from_m(m, N)
        phi = phi * (1.0 / max(1.0, phi.norm()))
        for _ in range(3):
            for key, val in lemma31_residuals(phi, FockRep.random(n, N, rng)).items():
                worst[key] = max(worst.get(key, 0.0), val)
    for _ in range(2):
        phi = FockRep.random(n, N, rng)
        for key, val in lemma31_residuals(phi, FockRep.random(n, N, rng)).items():
            worst[key] = max(worst.get(key, 0.0), val)
    for key, val in worst.items():
        rep.upper(f"S_phi intertwining {key}", val, tol)
    Fs = [FockRep.random(n, N, rng) for _ in range(5)]
    sm = smoothing_check(symbols.constant(1.0, n), 1, Fs, "Fock10", phi_degree=4)
    rep.upper("smoothing m = 1 keeps Fock10(1) norms", max(abs(r - 1) for r in sm.ratios), _tol(cfg, 1e-10))
    return rep


def suite_sobolev(cfg: SuiteConfig, rng) -> Report:
    if cfg.n != 1:
        raise UnsupportedConfig("the sobolev suite has frozen bounds for n = 1 only")
    rep = Report("sobolev", cfg.seed)
    degrees = (8, 12, 16) if cfg.degree is None else (cfg.degree,)
    slack = 1e-9
    for s, (lo, hi) in regression.WEIGHTED_NORM_BOUNDS.items():
        ratios = []
        for N in degrees:
            w = SpaceTag("FockSobolev", s).weights(1, N)
            for _ in range(50):
                F = FockRep.random(1, N, rng)
                coef = float(np.sum(w * np.abs(F.coeffs) ** 2))
                ratios.append(fock_sobolev_integral_norm(F, s, cfg.quad) ** 2 / coef)
        rep.within(f"weighted norm s={s} min ratio", min(ratios), lo - slack, hi + slack)
        rep.within(f"weighted norm s={s} max ratio", max(ratios), lo - slack, hi + slack)
    m = symbols.sine()
    for k in (1, 2):
        scan = NormScan(f"T_sin on F^({k},2)", [8, 16, 32],
                        [op_norm(multiplier_matrix(m, 1, N), float(k)) for N in (8, 16, 32)])
        rep.add_scan(scan)
        rep.flag(f"sin on F^({k},2) plateau", scan.plateau())
        rep.within(f"sin on F^({k},2) plateau / frozen value",
                   scan.norms[-1] / regression.SIN_SOBOLEV_PLATEAU[k], 0.99, 1.01)
    return rep


def suite_uncertainty(cfg: SuiteConfig, rng) -> Report:
    if cfg.n != 1:
        raise UnsupportedConfig("the uncertainty suite runs for n = 1")
    rep = Report("uncertainty", cfg.seed)
    top = cfg.degree if cfg.degree is not None else 48
    ladder = [d for d in (8, 16, 32, 48) if d <= top]
    if len(ladder) < 2:
        raise UnsupportedConfig("the degree ladder needs at least two rungs (degree >= 16)")
    s_scan, t_scan = uncertainty_scan(symbols.sign(), ladder)
    rep.add_scan(s_scan)
    rep.add_scan(t_scan)
    rep.within("sign S-scan min", min(s_scan.norms), 0.9, 1.000001)
    rep.within("sign S-scan max", max(s_scan.norms), 0.9, 1.000001)
    rep.flag("sign S~-scan strictly increasing", t_scan.strictly_increasing())
    dev = max(abs(v / regression.SIGN_S_TILDE_GROWTH[d] - 1) for d, v in zip(ladder, t_scan.norms))
    rep.upper("sign S~ growth vs frozen regression (relative)", dev, 0.01)
    return rep


def suite_weyl_radial(cfg: SuiteConfig, rng) -> Report:
    n = cfg.n
    rep = Report("weyl-radial", cfg.seed)
    z = _probes(rng, 25, n, 1.5)
    w = _probes(rng, 25, n, 1.5)
    worst = 0.0
    for c, a in ((1 / (2 * math.pi), 0.25), (1.0, 0.5), (2.0, 1.0)):
        sig = gaussian_radial(c, a, n)
        R = laguerre_coeffs(sig, 80)
        worst = max(worst, float(np.max(np.abs(kernel_series(R, z, w) - kernel_bessel(sig, z, w)))))
    rep.upper("radial series vs Bessel kernel", worst, _tol(cfg, 1e-7))
    ones = LaguerreCoeffs.from_values(np.ones(81), n)
    rep.upper("R = 1 reproduces exp(z.w/2)",
              np.max(np.abs(kernel_series(ones, z, w) - reproducing_kernel(z, w, n))), _tol(cfg, 1e-10))
    Rd = laguerre_coeffs(dirac_at_zero(n), 80)
    rep.upper("delta_0 kernel equals exp(z.w/2)",
              np.max(np.abs(kernel_series(Rd, z, w) - reproducing_kernel(z, w, n))), _tol(cfg, 1e-10))
    delta = 0.0
    for k in range(6):
        R = laguerre_coeffs(laguerre_symbol(k, n), 10).values
        delta = max(delta, float(np.max(np.abs(R - np.eye(11)[k]))))
    rep.upper("laguerre coefficients of phi_k are delta_jk", delta, _tol(cfg, 1e-10))
    if n == 1:
        N = cfg.degree if cfg.degree is not None else 12
        order = cfg.quad or 48
        leak = 0.0
        for k in range(min(N, 8) + 1):
            M = weyl_matrix(laguerre_symbol(k), N, order)
            P = np.zeros_like(M)
            P[k, k] = 1.0
            leak = max(leak, float(np.max(np.abs(M - P))))
        rep.upper("W(phi_k) = P_k off-level leakage", leak, _tol(cfg, 1e-9))
        sig = gaussian_radial(1.0, 0.5)
        M = weyl_matrix(sig, N, order)
        R = laguerre_coeffs(sig, 80).values[:N + 1]
        rep.upper("W(sigma) diagonal with Laguerre coefficients", np.max(np.abs(M - np.diag(R))),
                  _tol(cfg, 1e-9))
    return rep


def suite_thm1_11(cfg: SuiteConfig, rng) -> Report:
    if cfg.n != 1:
        raise UnsupportedConfig("the thm1-11 suite runs for n = 1")
    rep = Report("thm1-11", cfg.seed)
    N = cfg.degree if cfg.degree is not None else 40
    w = complex(*rng.uniform(-0.6, 0.6, 2))
    probes = [a + 1j * b for a in (-0.8, 0.0, 0.8) for b in (-0.8, 0.0, 0.8)]
    scales = (1 / math.sqrt(3 / 8), 1 / math.sqrt(3 / 4))
    r = verify_thm_1_11(gaussian_psi, w, probes, degree=N, order=cfg.quad or 48,
                        constant=math.sqrt(2 * math.pi), sigma_scales=scales)
    rep.upper("B W(sigma) B* g_w = (2 pi)^(1/2) B psi(w, .)", r.max_abs_error, _tol(cfg, 1e-5))
    u = rng.uniform(-1.0, 1.0, 5)
    v = rng.uniform(-1.0, 1.0, 5)

    def sig(zz):
        zz = np.asarray(zz).reshape(-1)
        return psi_to_sigma(gaussian_psi, zz.real, zz.imag)

    rt = np.max(np.abs(sigma_to_psi(sig, u, v) - gaussian_psi(u.reshape(-1, 1), v.reshape(-1, 1))))
    rep.upper("psi -> sigma -> psi round trip", rt, _tol(cfg, 1e-6))
    x = rng.uniform(-1.5, 1.5, 5)
    y = rng.uniform(-1.5, 1.5, 5)
    closed = 0.5 * np.exp(-x ** 2 / 8 - y ** 2 / 2)
    rep.upper("sigma of the Gaussian kernel, closed form", np.max(np.abs(psi_to_sigma(gaussian_psi, x, y) - closed)),
              _tol(cfg, 1e-10))
    return rep


def _evolve_matrix(t: float, n: int, degree: int, out: int) -> np.ndarray:
    return multiplier_matrix(symbols.schrodinger(t, n), n, degree, out_degree=out).entries


def default_pad(n: int) -> int:
    """Degree padding per Schrodinger step; the output tail beyond it is below ~1e-10 for |t| <= 0.5."""
    return 96 if n == 1 else 32


def evolve_chain(F: FockRep, ts, pad: int | None = None) -> list[FockRep]:
    """Apply ``S_phi_t`` for each ``t`` in turn by the spectral route.

    Each step raises the degree by ``pad``; returns every intermediate state.
    """
    pad = default_pad(F.n) if pad is None else pad
    out = []
    G = F
    for t in ts:
        G = FockRep(F.n, G.degree + pad, _evolve_matrix(float(t), F.n, G.degree, G.degree + pad) @ G.coeffs)
        out.append(G)
    return out


def suite_schrodinger(cfg: SuiteConfig, rng) -> Report:
    n = cfg.n
    N = cfg.degree if cfg.degree is not None else (10 if n == 1 else 4)
    rep = Report("schrodinger", cfg.seed)
    t = 0.5
    z = _probes(rng, 10, n, 1.0)
    phi = phi_from_m(symbols.schrodinger(t, n), 60 if n == 1 else 30)
    rep.upper("phi_t closed form (exponent +1/4 it/(1+it))",
              np.max(np.abs(evaluate(phi, z) - phi_t_closed_form(t, z, +1.0, n))), _tol(cfg, 1e-8))
    F = FockRep.random(n, N, rng)
    pad = default_pad(n)

    def evolve(s):
        return evolve_chain(F, [s], pad)[0]

    rep.upper("PDE residual d_t u = i Lap u", fock_laplacian_residual(evolve, t, z), _tol(cfg, 1e-6))
    law = evolve_chain(F, [0.2, 0.3], pad)[-1].max_abs_diff(evolve_chain(F, [0.5], 2 * pad)[0])
    rep.upper("group law (0.2, 0.3) vs 0.5", law, _tol(cfg, 1e-6))
    rep.upper("round trip 0.3 then -0.3", evolve_chain(F, [0.3, -0.3], pad)[-1].max_abs_diff(F), _tol(cfg, 1e-7))
    rep.upper("t = 0 is the identity", evolve_chain(F, [0.0], pad)[0].max_abs_diff(F), _tol(cfg, 1e-12))
    return rep


SUITES: dict[str, Callable[[SuiteConfig, np.random.Generator], Report]] = {
    "orthonormality": suite_orthonormality,
    "bargmann": suite_bargmann,
    "gauss-bargmann": suite_gauss_bargmann,
    "reproducing": suite_reproducing,
    "multiplier-routes": suite_multiplier_routes,
    "lemma21": suite_lemma21,
    "lemma22": suite_lemma22,
    "lemma31": suite_lemma31,
    "sobolev": suite_sobolev,
    "uncertainty": suite_uncertainty,
    "weyl-radial": suite_weyl_radial,
    "thm1-11": suite_thm1_11,
    "schrodinger": suite_schrodinger,
}

SUITE_DIMENSIONS = {name: (1,) if name in ("sobolev", "uncertainty", "thm1-11") else (1, 2) for name in SUITES}


def run_suite(cfg: SuiteConfig) -> Report:
    """Run one suite; raises KeyError for an unknown name."""
    fn = SUITES[cfg.suite]
    if cfg.n not in SUITE_DIMENSIONS[cfg.suite]:
        raise UnsupportedConfig(f"suite {cfg.suite} supports n in {SUITE_DIMENSIONS[cfg.suite]}")
    if cfg.degree is not None and cfg.degree < 0:
        raise UnsupportedConfig("degree must be non-negative")
    rng = np.random.default_rng(cfg.seed)
    report = fn(cfg, rng)
    report.settings = cfg.to_dict()
    return report
