"""Scalar symbols m(xi) on R^n and their Gaussian-weighted quadrature.

Every multiplier integral in the package has the shape
``int m(xi) P(xi) exp(-|xi|^2) dxi`` with ``P`` a polynomial times, at
most, an entire factor. :meth:`SymbolFn.rule` returns nodes and weights
that absorb ``m`` into the Gauss-Hermite weight, which lets Gaussian
symbols such as ``exp(-i t |xi|^2)`` be integrated exactly by a complex
rescaling and lets ``sign`` be integrated without straddling its jump.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .basis import as_points
from .special_fn import gauss_hermite_rule, half_hermite_rule, hermite_poly

__all__ = [
    "SymbolFn",
    "constant",
    "coordinate",
    "monomial",
    "sine",
    "sign",
    "gaussian",
    "schrodinger",
    "exp_half",
    "from_callable",
    "builtin",
    "BUILTIN_NAMES",
]

Evaluator = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class SymbolFn:
    """``m(xi) = exp(-gauss_rate |xi|^2) * rest(xi)``.

    ``rest`` maps an array of shape ``(K, n)`` to ``(K,)``. With
    ``split`` set, ``rest`` jumps across ``xi_1 = 0`` and quadrature uses
    one-sided rules on each half line. ``sup_norm`` is ``None`` when
    unknown or infinite; ``growth`` is ``"bounded"``, ``"polynomial(p)"``
    or ``"other"``.
    """

    label: str
    n: int
    rest: Evaluator = field(repr=False)
    gauss_rate: complex = 0.0
    split: bool = False
    sup_norm: float | None = None
    growth: str = "bounded"
    constant_value: complex | None = None
    derivative_fn: Callable[[tuple[int, ...]], "SymbolFn"] | None = field(default=None, repr=False)
    k_max: int = 0

    def __call__(self, xi):
        pts, single = as_points(xi, self.n)
        vals = np.exp(-self.gauss_rate * np.sum(pts * pts, axis=1)) * self.rest(pts)
        out = np.asarray(vals, dtype=complex)
        return complex(out[0]) if single else out

    @property
    def is_constant(self) -> bool:
        return self.constant_value is not None

    def derivative(self, alpha) -> "SymbolFn":
        alpha = tuple(int(a) for a in np.atleast_1d(alpha))
        if len(alpha) != self.n:
            raise ValueError("multi-index length must equal n")
        if not any(alpha):
            return self
        if self.derivative_fn is None or sum(alpha) > self.k_max:
            raise ValueError(f"derivative {alpha} of {self.label} is not available")
        return self.derivative_fn(alpha)

    def rule(self, order: int) -> tuple[np.ndarray, np.ndarray]:
        """Nodes ``X`` (K, n) and weights ``W`` (K,) with
        ``sum W_i P(X_i) ~ int m(xi) P(xi) exp(-|xi|^2) dxi``."""
        scale = complex(1.0 + self.gauss_rate) ** -0.5
        gh = gauss_hermite_rule(order)
        axes = [(gh.nodes, gh.weights)] * self.n
        if self.split:
            half = half_hermite_rule(order)
            t, w = half.nodes, half.weights
            axes[0] = (np.concatenate([-t[::-1], t]), np.concatenate([w[::-1], w]))
        grids = np.meshgrid(*[a[0] for a in axes], indexing="ij")
        wgrids = np.meshgrid(*[a[1] for a in axes], indexing="ij")
        s = np.stack([g.reshape(-1) for g in grids], axis=1)
        w = np.prod(np.stack([g.reshape(-1) for g in wgrids], axis=1), axis=1)
        X = scale * s.astype(complex)
        W = w * scale ** self.n * np.asarray(self.rest(X), dtype=complex)
        return X, W


# ------------------------------------------------------------- builtins

def constant(value: complex = 1.0, n: int = 1) -> SymbolFn:
    value = complex(value)

    def rest(x):
        return np.full(x.shape[0], value, dtype=complex)

    return SymbolFn(
        label="1" if value == 1 else f"const({value})", n=n, rest=rest,
        sup_norm=abs(value), growth="bounded", constant_value=value,
        derivative_fn=lambda a: constant(0.0, n), k_max=64,
    )


def monomial(alpha, coef: complex = 1.0) -> SymbolFn:
    """``coef * xi^alpha``, with all derivatives."""
    alpha = tuple(int(a) for a in np.atleast_1d(alpha))
    n = len(alpha)
    deg = sum(alpha)
    if deg == 0:
        return constant(coef, n)

    def rest(x):
        out = np.full(x.shape[0], complex(coef))
        for j, a in enumerate(alpha):
            out = out * x[:, j] ** a
        return out

    def deriv(beta):
        if any(b > a for a, b in zip(alpha, beta)):
            return constant(0.0, n)
        c = complex(coef)
        for a, b in zip(alpha, beta):
            c *= math.factorial(a) / math.factorial(a - b)
        return monomial(tuple(a - b for a, b in zip(alpha, beta)), c)

    label = "xi^" + ",".join(map(str, alpha)) if coef == 1 else f"{coef}*xi^{alpha}"
    return SymbolFn(label=label, n=n, rest=rest, growth=f"polynomial({deg})",
                    derivative_fn=deriv, k_max=64)


def coordinate(j: int = 0, n: int = 1) -> SymbolFn:
    """``m(xi) = xi_j``."""
    alpha = [0] * n
    alpha[j] = 1
    return replace(monomial(tuple(alpha)), label=f"xi_{j + 1}")


def sine(n: int = 1, shift: int = 0) -> SymbolFn:
    """``sin(xi_1 + shift * pi/2)``; shifts give the derivatives."""
    phase = shift * math.pi / 2

    def rest(x):
        return np.sin(x[:, 0] + phase)

    def deriv(alpha):
        if any(alpha[1:]):
            return constant(0.0, n)
        return sine(n, shift + alpha[0])

    names = {0: "sin", 1: "cos", 2: "-sin", 3: "-cos"}
    return SymbolFn(label=names[shift % 4], n=n, rest=rest, sup_norm=1.0,
                    growth="bounded", derivative_fn=deriv, k_max=64)


def sign(n: int = 1) -> SymbolFn:
    """``sign(xi_1)``; no classical derivatives."""

    def rest(x):
        return np.sign(np.real(x[:, 0])).astype(complex)

    return SymbolFn(label="sign", n=n, rest=rest, split=True, sup_norm=1.0, growth="bounded")


def _gaussian_family(a: complex, n: int, label: str, alpha=None) -> SymbolFn:
    """``d^alpha exp(-a |xi|^2)`` for the Gaussian family."""
    alpha = tuple([0] * n) if alpha is None else tuple(alpha)
    ra = complex(a) ** 0.5

    def rest(x):
        out = np.ones(x.shape[0], dtype=complex)
        for j, k in enumerate(alpha):
            if k:
                out = out * (-ra) ** k * hermite_poly(k, ra * x[:, j])
        return out

    deg = sum(alpha)
    if complex(a).real > 0 and complex(a).imag == 0:
        # derivatives of a decaying Gaussian are bounded; sup measured on a grid
        grid = np.linspace(-8, 8, 4001) / math.sqrt(complex(a).real)
        sup = 1.0
        for k in alpha:
            vals = np.abs(ra ** k * hermite_poly(k, ra * grid) * np.exp(-complex(a).real * grid ** 2))
            sup *= float(vals.max())
        growth, bound = "bounded", sup
    elif complex(a).real == 0:
        growth = "bounded" if deg == 0 else f"polynomial({deg})"
        bound = 1.0 if deg == 0 else None
    else:
        growth, bound = "other", None
    return SymbolFn(
        label=label if not deg else f"d{list(alpha)} {label}", n=n, rest=rest,
        gauss_rate=complex(a), sup_norm=bound, growth=growth,
        derivative_fn=lambda b: _gaussian_family(a, n, label, tuple(x + y for x, y in zip(alpha, b))),
        k_max=64,
    )


def gaussian(n: int = 1) -> SymbolFn:
    """``exp(-|xi|^2)``."""
    return _gaussian_family(1.0, n, "gaussian")


def schrodinger(t: float, n: int = 1) -> SymbolFn:
    """``exp(-i t |xi|^2)``, the symbol of the free Schrodinger group."""
    sym = _gaussian_family(1j * float(t), n, f"schrodinger(t={t:g})")
    if t == 0:
        return constant(1.0, n)
    return sym


def exp_half(n: int = 1) -> SymbolFn:
    """``exp(|xi|^2 / 2)``, an unbounded witness."""
    return _gaussian_family(-0.5, n, "exp_half")


def from_callable(fn: Callable, n: int = 1, label: str = "custom", sup_norm: float | None = None,
                  growth: str = "other") -> SymbolFn:
    """Wrap a plain function of an ``(K, n)`` array (or of a 1-D array when n = 1)."""

    def rest(x):
        return np.asarray(fn(x[:, 0] if n == 1 else x), dtype=complex)

    return SymbolFn(label=label, n=n, rest=rest, sup_norm=sup_norm, growth=growth)


BUILTIN_NAMES = ("1", "xi", "sin", "sign", "gaussian", "schrodinger", "exp_half")


def builtin(name: str, n: int = 1, t: float = 0.5) -> SymbolFn:
    """Look up a builtin symbol by name."""
    table = {
        "1": lambda: constant(1.0, n),
        "xi": lambda: coordinate(0, n),
        "sin": lambda: sine(n),
        "sign": lambda: sign(n),
        "gaussian": lambda: gaussian(n),
        "schrodinger": lambda: schrodinger(t, n),
        "exp_half": lambda: exp_half(n),
    }
    if name not in table:
        raise ValueError(f"unknown symbol {name!r}; choose from {', '.join(BUILTIN_NAMES)}")
    return table[name]()
