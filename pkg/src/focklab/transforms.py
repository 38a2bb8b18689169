"""Bargmann and Gauss-Bargmann transforms, rotation U and the Fourier transform.

Each transform has a coefficient route (exact, acting on truncated reps)
and a quadrature route (pointwise evaluation of the defining integral) so
that the two can be checked against each other.

Conventions: ``Bf(w) = pi^(-n/4) int f(x) exp(-x^2/2 + x.w - w^2/4) dx``
sends ``Phi_alpha`` to ``zeta_alpha``; ``UF(z) = F(-iz)``;
``Ef = f exp(-|x|^2/2)``; ``Gf(z) = exp(z^2/4) int f(x) exp(i x.z) dgamma``
equals ``pi^(n/4) U* B E f``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .basis import (
    FockRep,
    HermiteRep,
    as_points,
    basis_matrix,
    evaluate,
    fock_D,
    fock_dz,
    fock_measure_rule,
    ladder,
)
from .errors import NumericalGuardError
from .special_fn import gauss_hermite_rule, hermite_poly_table
from .symbols import SymbolFn, from_callable

__all__ = [
    "TransformReport",
    "bargmann",
    "bargmann_adjoint",
    "bargmann_integral",
    "rotate_u",
    "fourier_hermite",
    "gauss_embed",
    "gauss_coefficients",
    "gauss_bargmann",
    "gauss_bargmann_rep",
    "gauss_bargmann_coeffs",
    "gauss_bargmann_adjoint",
    "hermite_kernel_sum",
    "lemma21_residuals",
    "intertwining_residuals",
    "default_order",
]


@dataclass
class TransformReport:
    name: str
    samples: list = field(default_factory=list)

    def add(self, point, first, second) -> None:
        self.samples.append((point, complex(first), complex(second)))

    @property
    def max_abs_error(self) -> float:
        return max((abs(a - b) for _, a, b in self.samples), default=0.0)


def default_order(degree: int) -> int:
    return 2 * degree + 16


def _phase(levels: np.ndarray, unit: complex) -> np.ndarray:
    return unit ** (levels % 4)


# ------------------------------------------------------------------ B, U, F

def bargmann(f: HermiteRep) -> FockRep:
    """Coefficient route: ``(Bf)_alpha = f_alpha``."""
    if f.measure != "lebesgue":
        raise ValueError("bargmann expects a lebesgue HermiteRep; apply gauss_embed first")
    return FockRep(f.n, f.degree, f.coeffs)


def bargmann_adjoint(F: FockRep) -> HermiteRep:
    return HermiteRep(F.n, F.degree, F.coeffs)


def bargmann_integral(f: HermiteRep, z, order: int | None = None):
    """Evaluate ``Bf(z)`` from the defining integral by Gauss-Hermite quadrature."""
    if f.measure != "lebesgue":
        raise ValueError("bargmann_integral expects a lebesgue HermiteRep")
    order = default_order(f.degree) if order is None else order
    if order < f.degree + 2:
        raise ValueError(f"quadrature order must be >= degree + 2 = {f.degree + 2}")
    pts, single = as_points(z, f.n)
    if np.max(np.abs(pts)) > math.sqrt(order):
        raise NumericalGuardError(f"|z| exceeds sqrt(Q) = {math.sqrt(order):.3g}")
    gh = gauss_hermite_rule(order)
    grids = np.meshgrid(*([gh.nodes] * f.n), indexing="ij")
    wgrids = np.meshgrid(*([gh.weights] * f.n), indexing="ij")
    X = np.stack([g.reshape(-1) for g in grids], axis=1)
    W = np.prod(np.stack([g.reshape(-1) for g in wgrids], axis=1), axis=1)
    # f(x) exp(x^2/2) is a polynomial in the normalized Hermite basis
    poly = basis_matrix("poly", f.n, f.degree, X) @ f.coeffs
    expo = np.exp(X @ pts.T - 0.25 * np.sum(pts * pts, axis=1)[None, :])
    vals = math.pi ** (-f.n / 4) * ((W * poly) @ expo)
    return complex(vals[0]) if single else vals


def rotate_u(F: FockRep, inverse: bool = False) -> FockRep:
    """``UF(z) = F(-iz)``; ``inverse`` gives ``U*F(z) = F(iz)``."""
    return FockRep(F.n, F.degree, F.coeffs * _phase(F.levels, 1j if inverse else -1j))


def fourier_hermite(f: HermiteRep) -> HermiteRep:
    """Fourier transform in the Hermite basis, ``Phi_alpha -> (-i)^|alpha| Phi_alpha``."""
    if f.measure != "lebesgue":
        raise ValueError("fourier_hermite expects a lebesgue HermiteRep")
    return HermiteRep(f.n, f.degree, f.coeffs * _phase(f.levels, -1j))


def hermite_kernel_sum(x, w, degree: int) -> complex:
    """Partial sum of ``sum_alpha Phi_alpha(x) zeta_alpha(w)`` up to |alpha| = degree."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    w = np.atleast_1d(np.asarray(w, dtype=complex))
    n = x.size
    phi = basis_matrix("hermite", n, degree, x.reshape(1, n))[0]
    zeta = basis_matrix("fock", n, degree, w.reshape(1, n))[0]
    return complex(np.sum(phi * zeta))


# ------------------------------------------------------------ E and G

def _as_symbol(m, n: int) -> SymbolFn:
    if isinstance(m, SymbolFn):
        return m
    if callable(m):
        return from_callable(m, n)
    raise TypeError("expected a SymbolFn or a callable")


def gauss_coefficients(m, n: int, degree: int, order: int | None = None) -> np.ndarray:
    """``c_alpha = int m(x) h_alpha(x) exp(-|x|^2) dx`` with normalized Hermite ``h_alpha``."""
    sym = _as_symbol(m, n)
    order = default_order(degree) if order is None else order
    X, W = sym.rule(order)
    return basis_matrix("poly", n, degree, X).T @ W


def gauss_embed(m, n: int | None = None, degree: int | None = None, order: int | None = None,
                tail_tol: float | None = None) -> HermiteRep:
    """``E m = m exp(-|x|^2/2)`` as a lebesgue Hermite rep.

    ``m`` is a gauss-measure HermiteRep (exact: coefficients carry over) or
    a symbol, in which case coefficients come from quadrature. With
    ``tail_tol`` set, a top-level coefficient mass above it raises
    :class:`NumericalGuardError`.
    """
    if isinstance(m, HermiteRep):
        if m.measure != "gauss":
            raise ValueError("gauss_embed expects a gauss-measure rep")
        return HermiteRep(m.n, m.degree, m.coeffs, "lebesgue")
    if n is None or degree is None:
        raise ValueError("n and degree are required for symbol input")
    c = gauss_coefficients(m, n, degree, order)
    rep = HermiteRep(n, degree, c)
    if tail_tol is not None:
        top = rep.levels >= degree - 1
        tail = float(np.linalg.norm(c[top]))
        if tail > tail_tol * max(1.0, float(np.linalg.norm(c))):
            raise NumericalGuardError(f"coefficient tail {tail:.3e} above tolerance")
    return rep


def gauss_bargmann_coeffs(gauss_coeffs: np.ndarray, n: int, degree: int) -> np.ndarray:
    """Fock coefficients of ``G g`` from the gauss coefficients of ``g``."""
    from .basis import levels as _levels

    return math.pi ** (n / 4) * gauss_coeffs * _phase(_levels(n, degree), 1j)


def gauss_bargmann_rep(m, n: int | None = None, degree: int | None = None,
                       order: int | None = None) -> FockRep:
    """Coefficient route ``G m = pi^(n/4) U* B E m``."""
    Em = gauss_embed(m, n, degree, order)
    return math.pi ** (Em.n / 4) * rotate_u(bargmann(Em), inverse=True)


def gauss_bargmann(m, z, order: int = 64, n: int | None = None):
    """Quadrature route ``Gm(z) = exp(z^2/4) int m(x) exp(i x.z) exp(-|x|^2) dx``."""
    if isinstance(m, HermiteRep):
        if m.measure != "gauss":
            raise ValueError("expected a gauss-measure rep")
        rep = m
        n = rep.n
        sym = from_callable(lambda x: evaluate(rep, x), n)
    else:
        sym = _as_symbol(m, n or getattr(m, "n", 1))
        n = sym.n
    pts, single = as_points(z, n)
    if np.max(np.abs(pts.imag), initial=0.0) > math.sqrt(order):
        raise NumericalGuardError("Im z too large for the quadrature order")
    X, W = sym.rule(order)
    vals = np.exp(0.25 * np.sum(pts * pts, axis=1)) * (W @ np.exp(1j * X @ pts.T))
    return complex(vals[0]) if single else vals


def gauss_bargmann_adjoint(F: FockRep, x, order: int | None = None):
    """``G*F(x)`` by tensor quadrature of its integral over C^n.

    Normalized so that ``G*`` inverts ``G``; the raw integral carries an
    extra factor ``pi^(n/2)``.
    """
    order = default_order(F.degree) if order is None else order
    xs, single = as_points(x, F.n)
    xs = xs.real
    if np.max(np.abs(xs), initial=0.0) > 0.5 * math.sqrt(order):
        raise NumericalGuardError("|x| too large for the quadrature order")
    # |exp(conj(w)^2/4)| exp(-|w|^2/2) = exp(-a^2/4 - 3 b^2/4) for w = a + ib
    scales = (2.0, 2.0 / math.sqrt(3.0)) * F.n
    pts, wts = fock_measure_rule(F.n, order, scales)
    wb = np.conj(pts)
    base = wts * evaluate(F, pts) * np.exp(0.25 * np.sum(wb * wb, axis=1))
    vals = math.pi ** (-F.n / 2) * (np.exp(-1j * xs @ wb.T) @ base)
    return complex(vals[0]) if single else vals


# ------------------------------------------------------------ identities

def lemma21_residuals(g: HermiteRep) -> dict[str, float]:
    """Residuals of the three derivative identities for G on a gauss rep.

    (1) ``(-d_j + z_j/2) G g = -i G(x_j g)``
    (2) ``2 d_j G g = i G(d g/dx_j)``
    (3) ``(d_j + z_j/2) G g = -i G((-d/dx_j + x_j) g)``
    """
    if g.measure != "gauss":
        raise ValueError("expects a gauss-measure rep")
    n, N = g.n, g.degree

    def G(h: HermiteRep) -> FockRep:
        return FockRep(h.n, h.degree, gauss_bargmann_coeffs(h.coeffs, h.n, h.degree))

    Gg = G(g)
    out = {}
    for j in range(n):
        xg = ladder(g, "x", j)
        dg = ladder(g, "d", j)
        lhs1 = fock_D(Gg, j, star=True)
        rhs1 = -1j * G(xg)
        lhs2 = 2 * fock_dz(Gg, j)
        rhs2 = 1j * G(dg)
        lhs3 = fock_D(Gg, j, star=False)
        rhs3 = -1j * G(xg - dg)
        out[f"(1) j={j + 1}"] = lhs1.max_abs_diff(rhs1)
        out[f"(2) j={j + 1}"] = lhs2.max_abs_diff(rhs2)
        out[f"(3) j={j + 1}"] = lhs3.max_abs_diff(rhs3)
    return out


def intertwining_residuals(f: HermiteRep) -> dict[str, float]:
    """``D_j B f`` against ``B(x_j f)`` and ``D*_j B f`` against ``+-B(d_j f)``.

    Returns the residuals for ``D_j B = B x_j``, for the printed form
    ``D*_j B = B d_j`` and for the sign-corrected form ``D*_j B = -B d_j``.
    """
    Bf = bargmann(f)
    out = {}
    for j in range(f.n):
        out[f"D B = B x j={j + 1}"] = fock_D(Bf, j).max_abs_diff(bargmann(ladder(f, "x", j)))
        dstar = fock_D(Bf, j, star=True)
        Bd = bargmann(ladder(f, "d", j))
        out[f"D* B = B d j={j + 1}"] = dstar.max_abs_diff(Bd)
        out[f"D* B = -B d j={j + 1}"] = dstar.max_abs_diff(-Bd)
    return out
