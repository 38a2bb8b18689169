"""Fourier multipliers and the Fock-side operators S_phi and S~_phi.

``S_phi = B T_m B*`` is computed by three independent routes:

* spectral: the Hermite matrix of ``T_m`` conjugated by ``B``;
* kernel: quadrature of ``int F(w) phi(z - conj w) exp(z.conj(w)/2) dnu``;
* gmult: ``G m G*`` with ``G*F`` sampled by its own C^n quadrature.

``S~`` replaces ``z - conj w`` by ``z + conj w`` and corresponds to
pointwise multiplication on the Hermite side. The symbol ``phi`` attached
to ``m`` is ``pi^(-n/2) G m`` so that ``m = 1`` gives ``phi = 1``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .basis import (
    FockRep,
    HermiteRep,
    SpaceTag,
    as_points,
    basis_matrix,
    basis_size,
    enumerate_indices,
    evaluate,
    fock_D,
    fock_dz,
    fock_measure_rule,
    index_map,
    levels,
    space_norm,
)
from .errors import NumericalGuardError
from .symbols import SymbolFn
from .transforms import gauss_bargmann_adjoint, gauss_bargmann_rep, gauss_coefficients, rotate_u

__all__ = [
    "OperatorMatrix",
    "NormScan",
    "Lemma22Report",
    "SmoothingReport",
    "multiplier_matrix",
    "pointwise_matrix",
    "phi_from_m",
    "phi_evaluator",
    "phi_tilde_evaluator",
    "m_from_phi",
    "m_from_phi_taylor",
    "fock_convolve",
    "apply_S_phi_spectral",
    "apply_S_phi_kernel",
    "apply_S_phi_gmult",
    "kernel_route_matrix",
    "gmult_matrix",
    "apply_S_tilde",
    "apply_S_tilde_kernel",
    "s_tilde_same_phi_matrix",
    "rho_action",
    "pi_action",
    "op_norm",
    "norm_scan",
    "uncertainty_scan",
    "lemma22_test",
    "lemma31_residuals",
    "smoothing_check",
    "fock_derivative_gram",
    "phi_t_closed_form",
    "fock_laplacian_residual",
]


@dataclass(frozen=True)
class OperatorMatrix:
    """Compression of an operator to span{basis_alpha : |alpha| <= degree}.

    ``entries`` may be rectangular when ``out_degree`` exceeds ``degree``.
    """

    n: int
    degree: int
    entries: np.ndarray = field(repr=False)
    basis_tag: str = "hermite"
    out_degree: int | None = None

    def __post_init__(self):
        rows = basis_size(self.n, self.out_degree if self.out_degree is not None else self.degree)
        if self.entries.shape != (rows, basis_size(self.n, self.degree)):
            raise ValueError("entries do not match the stated degrees")

    def as_fock(self) -> "OperatorMatrix":
        return OperatorMatrix(self.n, self.degree, self.entries, "fock", self.out_degree)

    def apply(self, rep):
        out_deg = self.out_degree if self.out_degree is not None else self.degree
        c = self.entries @ rep.resized(self.degree).coeffs
        return rep._like(c, out_deg)


@dataclass
class NormScan:
    label: str
    degrees: list[int]
    norms: list[float]

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.degrees, self.degrees[1:])):
            raise ValueError("degrees must be strictly increasing")

    def to_dict(self) -> dict:
        return {"label": self.label, "degrees": list(self.degrees), "norms": [float(x) for x in self.norms]}

    def strictly_increasing(self) -> bool:
        return all(b > a for a, b in zip(self.norms, self.norms[1:]))

    def plateau(self, rel: float = 0.05) -> bool:
        """Relative increment below ``rel`` over the last two steps."""
        if len(self.norms) < 3:
            return False
        a, b, c = self.norms[-3:]
        return abs(b - a) <= rel * abs(a) and abs(c - b) <= rel * abs(b)


def _phase(lv: np.ndarray, unit: complex) -> np.ndarray:
    return unit ** (lv % 4)


def _default_order(*degrees: int) -> int:
    return sum(degrees) // 2 + 24


# ---------------------------------------------------------- Hermite matrices

def pointwise_matrix(m: SymbolFn, n: int, degree: int, order: int | None = None,
                     out_degree: int | None = None) -> OperatorMatrix:
    """Matrix of ``f -> m f`` on Hermite functions: ``int m Phi_alpha Phi_beta``."""
    out = degree if out_degree is None else out_degree
    order = _default_order(degree, out) if order is None else order
    X, W = m.rule(order)
    P_in = basis_matrix("poly", n, degree, X)
    P_out = P_in if out == degree else basis_matrix("poly", n, out, X)
    A = P_out.T @ (W[:, None] * P_in)
    return OperatorMatrix(n, degree, A, "hermite", None if out == degree else out)


def multiplier_matrix(m: SymbolFn, n: int, degree: int, order: int | None = None,
                      out_degree: int | None = None, check: float | None = None) -> OperatorMatrix:
    """Hermite matrix of the Fourier multiplier ``T_m``.

    Entry ``(alpha, beta)`` is ``i^|alpha| (-i)^|beta| int m Phi_alpha Phi_beta``.
    With ``check`` set and ``m`` real and even in the first coordinate the
    Hermitian-symmetry defect is compared against it.
    """
    P = pointwise_matrix(m, n, degree, order, out_degree)
    out = degree if out_degree is None else out_degree
    A = _phase(levels(n, out), 1j)[:, None] * P.entries * _phase(levels(n, degree), -1j)[None, :]
    if check is not None and out == degree:
        defect = float(np.max(np.abs(A - A.conj().T)))
        if defect > check:
            raise NumericalGuardError(f"Hermitian-symmetry defect {defect:.3e} exceeds {check:.1e}")
    return OperatorMatrix(n, degree, A, "hermite", P.out_degree)


# ----------------------------------------------------------- phi <-> m

def phi_from_m(m: SymbolFn, degree: int, order: int | None = None) -> FockRep:
    """Taylor (zeta) coefficients of ``phi = pi^(-n/2) G m`` up to ``degree``."""
    return math.pi ** (-m.n / 2) * gauss_bargmann_rep(m, m.n, degree, order)


def phi_evaluator(m: SymbolFn, order: int = 96) -> Callable:
    """Pointwise ``phi(v) = pi^(-n/2) int m(xi) exp(-(xi - i v/2)^2) dxi``."""
    X, W = m.rule(order)
    n = m.n

    def phi(v):
        pts, single = as_points(v, n)
        vals = math.pi ** (-n / 2) * np.exp(0.25 * np.sum(pts * pts, axis=1)) * (np.exp(1j * pts @ X.T) @ W)
        return complex(vals[0]) if single else vals

    return phi


def phi_tilde_evaluator(m: SymbolFn, order: int = 96) -> Callable:
    """Pointwise ``U phi``, the S~ symbol paired with the multiplication by ``m``."""
    X, W = m.rule(order)
    n = m.n

    def phi(v):
        pts, single = as_points(v, n)
        vals = math.pi ** (-n / 2) * np.exp(-0.25 * np.sum(pts * pts, axis=1)) * (np.exp(pts @ X.T) @ W)
        return complex(vals[0]) if single else vals

    return phi


def m_from_phi(phi: FockRep, x, order: int | None = None):
    """Recover ``m = pi^(n/2) G* phi`` by quadrature over C^n."""
    return math.pi ** (phi.n / 2) * gauss_bargmann_adjoint(phi, x, order)


def m_from_phi_taylor(phi: FockRep, x):
    """``m(x) = pi^(n/4) sum (-i)^|alpha| (phi, zeta_alpha) h_alpha(x)`` from Taylor data."""
    pts, single = as_points(x, phi.n)
    c = phi.coeffs * _phase(phi.levels, -1j)
    vals = math.pi ** (phi.n / 4) * (basis_matrix("poly", phi.n, phi.degree, pts) @ c)
    return complex(vals[0]) if single else vals


# ---------------------------------------------- coefficient convolution

def _log_norm1(a: int) -> float:
    """log sqrt(2^a a!)."""
    return 0.5 * (a * math.log(2.0) + math.lgamma(a + 1))


def _convolution_table(out_deg: int, f_deg: int, p_deg: int, plus: bool) -> np.ndarray:
    """One-coordinate factor ``T[a, b, g]`` of the ``S_phi`` coefficient algebra.

    The pairing of ``zeta_a`` with the kernel applied to ``zeta_b`` picks up
    the ``zeta_g`` coefficient of ``phi`` with ``g = a + b - 2k``; in several
    variables the factor is the product of one such table per coordinate.
    """
    T = np.zeros((out_deg + 1, f_deg + 1, p_deg + 1))
    for a in range(out_deg + 1):
        for b in range(f_deg + 1):
            for k in range(min(a, b) + 1):
                g = a + b - 2 * k
                if g > p_deg:
                    continue
                logc = _log_norm1(a) + _log_norm1(b) - _log_norm1(g)
                logc += math.lgamma(g + 1) - math.lgamma(a - k + 1) - math.lgamma(b - k + 1)
                logc -= k * math.log(2.0) + math.lgamma(k + 1)
                sgn = -1.0 if (not plus and (b - k) % 2) else 1.0
                T[a, b, g] = sgn * math.exp(logc)
    return T


def _dense(rep: FockRep) -> np.ndarray:
    """Coefficients on the full box ``[0, N]^n`` (zero outside the simplex)."""
    D = np.zeros((rep.degree + 1,) * rep.n, dtype=complex)
    for alpha, c in zip(enumerate_indices(rep.n, rep.degree), rep.coeffs):
        D[alpha] = c
    return D


def fock_convolve(phi: FockRep, F: FockRep, plus: bool = False) -> FockRep:
    """Exact ``S_phi F`` (or ``S~_phi F`` with ``plus``) for polynomial ``phi`` and ``F``.

    Expands ``phi(z -+ conj w) exp(z.conj(w)/2)`` in monomials and pairs
    against ``F`` with the orthogonality of ``zeta_beta`` under ``dnu``.
    Output degree is ``phi.degree + F.degree``.
    """
    if phi.n != F.n:
        raise ValueError("dimension mismatch")
    n = F.n
    out_deg = phi.degree + F.degree
    T = _convolution_table(out_deg, F.degree, phi.degree, plus)
    letters = "abcdefghijklmnopqrstuvwxyz"
    if 3 * n > len(letters):
        raise ValueError("dimension too large for the coefficient convolution")
    A, B, G = letters[:n], letters[n:2 * n], letters[2 * n:3 * n]
    spec = ",".join(f"{A[i]}{B[i]}{G[i]}" for i in range(n)) + f",{B},{G}->{A}"
    box = np.einsum(spec, *([T] * n), _dense(F), _dense(phi), optimize=True)
    out = np.array([box[alpha] for alpha in enumerate_indices(n, out_deg)], dtype=complex)
    return FockRep(n, out_deg, out)


# ------------------------------------------------------------ S_phi routes

def apply_S_phi_spectral(m: SymbolFn, F: FockRep, out_degree: int | None = None,
                         order: int | None = None) -> FockRep:
    """``B T_m B* F`` with the output kept up to ``out_degree`` (default ``N + 40``)."""
    out = F.degree + 40 if out_degree is None else out_degree
    M = multiplier_matrix(m, F.n, F.degree, order, out_degree=out)
    return FockRep(F.n, out, M.entries @ F.coeffs)


def kernel_route_matrix(phi: Callable, n: int, degree: int, z, order: int | None = None,
                        plus: bool = False, scales=None) -> np.ndarray:
    """Rows ``z_i``, columns ``beta``: quadrature of the S_phi (or S~_phi) kernel
    integral applied to ``zeta_beta``, evaluated at ``z_i``.

    ``scales`` overrides the per-axis substitution of :func:`fock_measure_rule`;
    ``sqrt(2)`` on every axis suits a bounded ``phi``.
    """
    order = order or 2 * degree + 40
    pts_z, _ = as_points(z, n)
    if np.max(np.abs(pts_z)) > 0.5 * math.sqrt(order):
        raise NumericalGuardError("|z| too large for the quadrature order")
    # phi(z - conj w) can grow like exp(Re(.)^2/4) (or Im for S~); the axis
    # scales make the Gaussian of dnu match what is left of the decay
    if scales is None:
        sx, sy = (math.sqrt(2.0), 2.0) if plus else (2.0, math.sqrt(2.0))
        scales = (sx, sy) * n
    w, wts = fock_measure_rule(n, order, scales)
    Z = basis_matrix("fock", n, degree, w)
    wb = np.conj(w)
    out = np.empty((pts_z.shape[0], Z.shape[1]), dtype=complex)
    for i, zi in enumerate(pts_z):
        v = zi[None, :] + wb if plus else zi[None, :] - wb
        out[i] = (wts * phi(v) * np.exp(0.5 * wb @ zi)) @ Z
    return out


def _kernel_apply(phi, F, z, order, n, plus):
    if isinstance(phi, FockRep):
        phi_rep = phi
        phi = lambda v: evaluate(phi_rep, v)  # noqa: E731
    if isinstance(F, FockRep):
        _, single = as_points(z, F.n)
        vals = kernel_route_matrix(phi, F.n, F.degree, z, order, plus) @ F.coeffs
        return complex(vals[0]) if single else vals
    # a general callable F: integrate it directly
    n = n or 1
    order = order or 80
    pts_z, single = as_points(z, n)
    if np.max(np.abs(pts_z)) > 0.5 * math.sqrt(order):
        raise NumericalGuardError("|z| too large for the quadrature order")
    sx, sy = (math.sqrt(2.0), 2.0) if plus else (2.0, math.sqrt(2.0))
    w, wts = fock_measure_rule(n, order, (sx, sy) * n)
    Fw = np.asarray(F(w), dtype=complex)
    wb = np.conj(w)
    out = np.empty(pts_z.shape[0], dtype=complex)
    for i, zi in enumerate(pts_z):
        v = zi[None, :] + wb if plus else zi[None, :] - wb
        out[i] = np.sum(wts * Fw * phi(v) * np.exp(0.5 * wb @ zi))
    return complex(out[0]) if single else out


def apply_S_phi_kernel(phi, F, z, order: int | None = None, n: int | None = None):
    """``S_phi F(z)`` by tensor quadrature of its integral over C^n.

    ``phi`` is a pointwise evaluator (or a FockRep); ``F`` is a FockRep or
    any callable on ``(K, n)`` arrays (then ``n`` must be given).
    """
    return _kernel_apply(phi, F, z, order, n, plus=False)


def apply_S_tilde_kernel(phi, F, z, order: int | None = None, n: int | None = None):
    """``S~_phi F(z)`` by quadrature; arguments as in :func:`apply_S_phi_kernel`."""
    return _kernel_apply(phi, F, z, order, n, plus=True)


def gmult_matrix(m: SymbolFn, n: int, degree: int, out_degree: int | None = None,
                 order: int | None = None, inner_order: int | None = None) -> np.ndarray:
    """Matrix of ``G m G*`` (unit-normalized G) from degree ``degree`` to ``out_degree``.

    ``G* zeta_beta`` is sampled on the symbol's quadrature nodes by its own
    C^n quadrature; the product with ``m`` is re-expanded through ``G``.
    """
    out = degree + 40 if out_degree is None else out_degree
    order = _default_order(degree, out) if order is None else order
    X, W = m.rule(order)
    if inner_order is None:
        inner_order = int(2 * np.max(np.abs(X)) ** 2 + 2 * degree + 40)
    g = _adjoint_at(n, degree, X, inner_order)
    gauss = basis_matrix("poly", n, out, X).T @ (W[:, None] * g)
    # the unit-normalized G multiplies gauss coefficients by i^|alpha|
    return _phase(levels(n, out), 1j)[:, None] * gauss


def apply_S_phi_gmult(m: SymbolFn, F: FockRep, out_degree: int | None = None,
                      order: int | None = None, inner_order: int | None = None) -> FockRep:
    """``G m G* F`` with ``G* F`` sampled on the symbol's quadrature nodes."""
    out = F.degree + 40 if out_degree is None else out_degree
    M = gmult_matrix(m, F.n, F.degree, out, order, inner_order)
    return FockRep(F.n, out, M @ F.coeffs)


def _adjoint_at(n: int, degree: int, X: np.ndarray, order: int) -> np.ndarray:
    """``pi^(n/4) G* zeta_beta`` at possibly complex nodes ``X``, one column per beta."""
    scales = (2.0, 2.0 / math.sqrt(3.0)) * n
    pts, wts = fock_measure_rule(n, order, scales)
    wb = np.conj(pts)
    base = (wts * np.exp(0.25 * np.sum(wb * wb, axis=1)))[:, None] * basis_matrix("fock", n, degree, pts)
    vals = np.empty((X.shape[0], base.shape[1]), dtype=complex)
    chunk = max(1, 4_000_000 // max(1, pts.shape[0]))
    for s in range(0, X.shape[0], chunk):
        vals[s:s + chunk] = np.exp(-1j * X[s:s + chunk] @ wb.T) @ base
    return math.pi ** (-n / 4) * vals


def apply_S_tilde(m: SymbolFn, F: FockRep, out_degree: int | None = None,
                  order: int | None = None) -> FockRep:
    """Spectral route for ``S~``: ``B (m .) B* F``."""
    out = F.degree + 40 if out_degree is None else out_degree
    P = pointwise_matrix(m, F.n, F.degree, order, out_degree=out)
    return FockRep(F.n, out, P.entries @ F.coeffs)


def s_tilde_same_phi_matrix(m: SymbolFn, n: int, degree: int, order: int | None = None) -> OperatorMatrix:
    """Compression of ``S~_phi`` for the same ``phi = pi^(-n/2) G m`` that gives ``S_phi``.

    On the Hermite side this is multiplication by ``m'`` with
    ``m' exp(-|x|^2/2)`` the inverse Fourier transform of ``m exp(-|xi|^2/2)``.
    Hermite triple products vanish beyond total degree ``2N``, so the
    expansion of ``m' exp(-|x|^2/2)`` is needed only up to that level and
    the matrix is exact up to the accuracy of those coefficients.
    """
    top = 2 * degree
    order = _default_order(top, 0) + degree if order is None else order
    e = gauss_coefficients(m, n, top, order)
    g = e * _phase(levels(n, top), 1j)
    from .special_fn import gauss_hermite_rule

    q = gauss_hermite_rule(2 * degree + 2)
    grids = np.meshgrid(*([q.nodes] * n), indexing="ij")
    wgrids = np.meshgrid(*([q.weights] * n), indexing="ij")
    Xg = np.stack([a.reshape(-1) for a in grids], axis=1)
    Wg = np.prod(np.stack([a.reshape(-1) for a in wgrids], axis=1), axis=1)
    gx = basis_matrix("poly", n, top, Xg) @ g
    P = basis_matrix("poly", n, degree, Xg)
    return OperatorMatrix(n, degree, P.T @ ((Wg * gx)[:, None] * P), "fock")


# ------------------------------------------------------ group actions

def rho_action(w, F, z):
    """``rho(w)F(z) = F(z + w) exp(-conj(w).z/2) exp(-|w|^2/4)``."""
    n = F.n if isinstance(F, FockRep) else np.atleast_1d(w).size
    wv = np.atleast_1d(np.asarray(w, dtype=complex)).reshape(1, n)
    pts, single = as_points(z, n)
    Fv = evaluate(F, pts + wv) if isinstance(F, FockRep) else np.asarray(F(pts + wv), dtype=complex)
    vals = Fv * np.exp(-0.5 * pts @ np.conj(wv[0]) - 0.25 * np.sum(np.abs(wv) ** 2))
    return complex(vals[0]) if single else vals


def pi_action(zeta, f, x):
    """``pi(zeta) f(x) = exp(i(a.x + a.b/2)) f(x + b)`` for ``zeta = a + i b``."""
    n = f.n if isinstance(f, HermiteRep) else np.atleast_1d(zeta).size
    zv = np.atleast_1d(np.asarray(zeta, dtype=complex))
    a, b = zv.real, zv.imag
    pts, single = as_points(x, n)
    xs = pts.real
    fv = evaluate(f, xs + b) if isinstance(f, HermiteRep) else np.asarray(f(xs + b), dtype=complex)
    vals = np.exp(1j * (xs @ a + 0.5 * a @ b)) * fv
    return complex(vals[0]) if single else vals


# ------------------------------------------------------------ norms

def op_norm(A, weight: SpaceTag | float | None = None, tol: float = 1e-10,
            max_iter: int = 10_000) -> float:
    """Largest singular value of ``D^(1/2) A D^(-1/2)`` by power iteration.

    ``D`` is the diagonal weight ``(2|alpha| + n)^s``; ``weight`` is a
    SpaceTag with a diagonal weight, a bare exponent ``s``, or ``None``.
    """
    if isinstance(A, OperatorMatrix):
        n, deg, M = A.n, A.degree, A.entries
    else:
        M = np.asarray(A)
        n = deg = None
    if M.shape[0] != M.shape[1]:
        raise ValueError("op_norm needs a square matrix")
    if weight is not None and (not isinstance(weight, SpaceTag) or weight.space not in ("L2", "L2gamma")):
        if n is None:
            raise ValueError("a Sobolev weight needs an OperatorMatrix")
        s = weight if not isinstance(weight, SpaceTag) else weight.order
        if isinstance(weight, SpaceTag) and weight.space in ("Fock10", "Fock01"):
            G = fock_derivative_gram(n, deg, int(weight.order), star=weight.space == "Fock10")
            L = np.linalg.cholesky(G)
            M = L.conj().T @ M @ np.linalg.inv(L.conj().T)
        else:
            d = (2.0 * levels(n, deg) + n) ** (0.5 * float(s))
            M = d[:, None] * M / d[None, :]
    v = np.ones(M.shape[1], dtype=complex)
    v /= np.linalg.norm(v)
    lam = 0.0
    gap = np.inf
    for _ in range(max_iter):
        u = M.conj().T @ (M @ v)
        new = float(np.linalg.norm(u))
        if new == 0.0:
            return 0.0
        v = u / new
        gap = abs(new - lam)
        if gap <= tol * new:
            return math.sqrt(new)
        lam = new
    warnings.warn(f"op_norm: power iteration did not converge (last gap {gap:.3e})", RuntimeWarning)
    return math.sqrt(lam)


def fock_derivative_gram(n: int, degree: int, k: int, star: bool) -> np.ndarray:
    """Gram matrix of ``F -> (sum_{|beta|<=k} ||D^beta F||^2)`` on degree-N reps."""
    d = basis_size(n, degree)
    G = np.zeros((d, d), dtype=complex)
    eye = np.eye(d)
    for beta in enumerate_indices(n, k):
        cols = []
        for i in range(d):
            R = FockRep(n, degree, eye[i])
            for j, bj in enumerate(beta):
                for _ in range(bj):
                    R = fock_D(R, j, star)
            cols.append(R.resized(degree + k).coeffs)
        Mb = np.stack(cols, axis=1)
        G += Mb.conj().T @ Mb
    return G


def norm_scan(build: Callable[[int], OperatorMatrix], degrees: Sequence[int], label: str,
              weight=None) -> NormScan:
    return NormScan(label, list(degrees), [op_norm(build(N), weight) for N in degrees])


def uncertainty_scan(m: SymbolFn, degrees: Sequence[int]) -> tuple[NormScan, NormScan]:
    """Truncated norms of ``S_phi`` and of ``S~_phi`` built from the same ``phi``."""
    n = m.n
    s_scan = norm_scan(lambda N: multiplier_matrix(m, n, N), degrees, f"S_phi[{m.label}]")
    t_scan = norm_scan(lambda N: s_tilde_same_phi_matrix(m, n, N), degrees, f"S~_phi[{m.label}]")
    return s_scan, t_scan


# ------------------------------------------------------------ multiplier characterization

@dataclass
class Lemma22Report:
    symbol: str
    k: int
    exponent_rule: str
    scans: dict[tuple[int, ...], NormScan]

    @property
    def verdict(self) -> str:
        ok = all(s.plateau() for s in self.scans.values())
        return "consistent with membership" if ok else "flagged unbounded"

    @property
    def bounded(self) -> bool:
        return all(s.plateau() for s in self.scans.values())


def lemma22_test(m: SymbolFn, k: int, degrees: Sequence[int] = (8, 16, 32),
                 order: int | None = None, exponent: str = "complement") -> Lemma22Report:
    """Norm scans of ``(d^alpha m) H^(-e/2)`` for ``|alpha| <= k``.

    ``exponent="complement"`` uses ``e = k - |alpha|`` (so ``m`` itself is
    paired with ``H^(-k/2)``); ``exponent="order"`` uses ``e = |alpha|``.
    """
    if exponent not in ("complement", "order"):
        raise ValueError("exponent must be 'complement' or 'order'")
    n = m.n
    scans = {}
    for alpha in enumerate_indices(n, k):
        dm = m.derivative(alpha)
        e = k - sum(alpha) if exponent == "complement" else sum(alpha)

        def build(N, dm=dm, e=e):
            P = pointwise_matrix(dm, n, N, order)
            d = (2.0 * levels(n, N) + n) ** (-0.5 * e)
            return OperatorMatrix(n, N, P.entries * d[None, :])

        scans[alpha] = norm_scan(build, degrees, f"d{list(alpha)} {m.label} H^(-{e}/2)")
    return Lemma22Report(m.label, k, exponent, scans)


# ------------------------------------------------------------ derivative intertwining

def lemma31_residuals(phi: FockRep, F: FockRep) -> dict[str, float]:
    """Residuals of the derivative rules for ``phi * F = S_phi F``."""
    conv = fock_convolve
    out = {}
    for j in range(F.n):
        pf = conv(phi, F)
        lhs1 = fock_D(pf, j, star=True)
        out[f"(1a) j={j + 1}"] = lhs1.max_abs_diff(conv(fock_D(phi, j, star=True), F))
        out[f"(1b) j={j + 1}"] = lhs1.max_abs_diff(conv(phi, fock_D(F, j, star=True)))
        lhs2 = fock_D(pf, j)
        rhs2a = conv(fock_D(phi, j), F) + 2 * conv(phi, fock_dz(F, j))
        rhs2b = 2 * conv(fock_dz(phi, j), F) + conv(phi, fock_D(F, j))
        out[f"(2a) j={j + 1}"] = lhs2.max_abs_diff(rhs2a)
        out[f"(2b) j={j + 1}"] = lhs2.max_abs_diff(rhs2b)
    return out


@dataclass
class SmoothingReport:
    symbol: str
    k: int
    space: str
    ratios: list[float]
    lemma31: dict[str, float]

    @property
    def max_ratio(self) -> float:
        return max(self.ratios)

    @property
    def min_ratio(self) -> float:
        return min(self.ratios)


def smoothing_check(m: SymbolFn, k: int, Fs: Sequence[FockRep], space: str = "Fock10",
                    phi_degree: int = 12) -> SmoothingReport:
    """Norm ratios ``|S_phi F| / |F|`` in ``Fock10(k)`` (or ``Fock01(k)``) plus the intertwining residuals."""
    tag = SpaceTag(space, k)
    ratios = []
    for F in Fs:
        M = multiplier_matrix(m, F.n, F.degree)
        SF = FockRep(F.n, F.degree, M.entries @ F.coeffs)
        ratios.append(space_norm(SF, tag) / space_norm(F, tag))
    phi = phi_from_m(m, phi_degree)
    lem = lemma31_residuals(phi, Fs[0]) if Fs else {}
    return SmoothingReport(m.label, k, space, ratios, lem)


# ------------------------------------------------------------ Schrodinger

def phi_t_closed_form(t: float, z, sign: float = 1.0, n: int = 1):
    """``(1 + it)^(-n/2) exp(sign * (1/4) (it/(1+it)) z^2)``.

    ``sign=+1`` is what the defining integral gives; ``sign=-1`` is the
    form with the opposite exponent sign.
    """
    pts, single = as_points(z, n)
    c = complex(1 + 1j * t)
    vals = c ** (-n / 2) * np.exp(sign * 0.25 * (1j * t / c) * np.sum(pts * pts, axis=1))
    return complex(vals[0]) if single else vals


def fock_laplacian_residual(evolve: Callable[[float], FockRep], t: float, z, h: float = 1e-4) -> float:
    """Max ``|d_t u - i Lap u|`` for ``u = exp(-z^2/4) P_t(z)`` at points ``z``.

    ``evolve(t)`` returns ``P_t`` as a FockRep. The Laplacian is exact on
    the polynomial-times-Gaussian form; ``d_t`` is a centered difference.
    """
    P = evolve(t)
    n = P.n
    pts, _ = as_points(z, n)
    gauss = np.exp(-0.25 * np.sum(pts * pts, axis=1))
    du = (evaluate(evolve(t + h), pts) - evaluate(evolve(t - h), pts)) * gauss / (2 * h)
    lap = np.zeros(pts.shape[0], dtype=complex)
    p0 = evaluate(P, pts)
    for j in range(n):
        d1 = fock_dz(P, j)
        d2 = fock_dz(d1, j)
        zj = pts[:, j]
        lap += evaluate(d2, pts) - zj * evaluate(d1, pts) + (0.25 * zj * zj - 0.5) * p0
    return float(np.max(np.abs(du - 1j * lap * gauss)))
