"""Truncated coefficient spaces over multi-indices.

A :class:`HermiteRep` stores ``f = sum c_alpha Phi_alpha`` (or, with the
``gauss`` measure tag, ``g = sum c_alpha h_alpha`` with ``h_alpha`` the
Hermite polynomials normalized in ``L^2(exp(-|x|^2) dx)``). A
:class:`FockRep` stores ``F = sum c_alpha zeta_alpha`` with
``zeta_alpha(z) = z^alpha / sqrt(2^|alpha| alpha!)``, orthonormal for
``dnu = (2 pi)^-n exp(-|z|^2/2) dz``. Coefficients live in a dense array
ordered graded-lexicographically.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .special_fn import gauss_hermite_rule, hermite_fn_table, hermite_poly_table

__all__ = [
    "enumerate_indices",
    "index_map",
    "basis_size",
    "HermiteRep",
    "FockRep",
    "SpaceTag",
    "ladder",
    "hermite_power",
    "number_operator",
    "space_norm",
    "fock_sobolev_integral_norm",
    "fock_D",
    "fock_dz",
    "fock_mul_z",
    "project_level",
    "evaluate",
    "basis_matrix",
    "fock_measure_rule",
]


def _compositions(k: int, n: int) -> Iterator[tuple[int, ...]]:
    if n == 1:
        yield (k,)
        return
    for first in range(k, -1, -1):
        for rest in _compositions(k - first, n - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def enumerate_indices(n: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """All multi-indices with |alpha| <= degree, graded lexicographic."""
    if n < 1 or degree < 0:
        raise ValueError("need n >= 1 and degree >= 0")
    return tuple(a for k in range(degree + 1) for a in _compositions(k, n))


@lru_cache(maxsize=None)
def index_map(n: int, degree: int) -> dict[tuple[int, ...], int]:
    return {a: i for i, a in enumerate(enumerate_indices(n, degree))}


def basis_size(n: int, degree: int) -> int:
    return math.comb(degree + n, n)


@lru_cache(maxsize=None)
def _alpha_array(n: int, degree: int) -> np.ndarray:
    arr = np.array(enumerate_indices(n, degree), dtype=int).reshape(-1, n)
    arr.setflags(write=False)
    return arr


@lru_cache(maxsize=None)
def levels(n: int, degree: int) -> np.ndarray:
    lv = _alpha_array(n, degree).sum(axis=1)
    lv.setflags(write=False)
    return lv


@lru_cache(maxsize=None)
def _shift_maps(n: int, degree: int, j: int, up: bool):
    """Source positions, target positions (in degree+1 layout) and alpha_j."""
    src_alpha = _alpha_array(n, degree)
    target = index_map(n, degree + 1)
    src, dst, aj = [], [], []
    for i, a in enumerate(src_alpha):
        b = list(a)
        b[j] += 1 if up else -1
        if b[j] < 0:
            continue
        src.append(i)
        dst.append(target[tuple(b)])
        aj.append(a[j])
    return np.array(src, dtype=int), np.array(dst, dtype=int), np.array(aj, dtype=float)


@dataclass(frozen=True)
class _CoeffRep:
    n: int
    degree: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).reshape(-1)
        if c.size != basis_size(self.n, self.degree):
            raise ValueError(
                f"expected {basis_size(self.n, self.degree)} coefficients, got {c.size}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    # construction helpers --------------------------------------------
    @classmethod
    def zeros(cls, n: int, degree: int, **kw):
        return cls(n, degree, np.zeros(basis_size(n, degree)), **kw)

    @classmethod
    def basis(cls, n: int, degree: int, alpha: Sequence[int] | int, **kw):
        alpha = (alpha,) if isinstance(alpha, (int, np.integer)) else tuple(alpha)
        c = np.zeros(basis_size(n, degree), dtype=complex)
        c[index_map(n, degree)[alpha]] = 1.0
        return cls(n, degree, c, **kw)

    @classmethod
    def from_dict(cls, n: int, degree: int, entries: dict, **kw):
        c = np.zeros(basis_size(n, degree), dtype=complex)
        imap = index_map(n, degree)
        for alpha, v in entries.items():
            alpha = (alpha,) if isinstance(alpha, (int, np.integer)) else tuple(alpha)
            c[imap[alpha]] += v
        return cls(n, degree, c, **kw)

    @classmethod
    def random(cls, n: int, degree: int, rng: np.random.Generator, **kw):
        """Unit-norm rep with i.i.d. complex Gaussian coefficients."""
        m = basis_size(n, degree)
        c = rng.standard_normal(m) + 1j * rng.standard_normal(m)
        return cls(n, degree, c / np.linalg.norm(c), **kw)

    def _like(self, coeffs, degree=None):
        raise NotImplementedError

    # algebra ---------------------------------------------------------
    def resized(self, degree: int):
        """Zero-pad or truncate to a new degree."""
        c = np.zeros(basis_size(self.n, degree), dtype=complex)
        m = min(c.size, self.coeffs.size)
        c[:m] = self.coeffs[:m]
        return self._like(c, degree)

    truncate = resized

    def _aligned(self, other):
        if type(self) is not type(other) or self.n != other.n:
            raise TypeError("incompatible representations")
        d = max(self.degree, other.degree)
        return self.resized(d).coeffs, other.resized(d).coeffs, d

    def __add__(self, other):
        a, b, d = self._aligned(other)
        return self._like(a + b, d)

    def __sub__(self, other):
        a, b, d = self._aligned(other)
        return self._like(a - b, d)

    def __mul__(self, scalar):
        return self._like(self.coeffs * scalar)

    __rmul__ = __mul__

    def __neg__(self):
        return self._like(-self.coeffs)

    def inner(self, other) -> complex:
        """Inner product, linear in the first slot."""
        a, b, _ = self._aligned(other)
        return complex(np.vdot(b, a))

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.coeffs) ** 2)))

    def coefficient(self, alpha) -> complex:
        alpha = (alpha,) if isinstance(alpha, (int, np.integer)) else tuple(alpha)
        i = index_map(self.n, self.degree).get(alpha)
        return 0j if i is None else complex(self.coeffs[i])

    @property
    def levels(self) -> np.ndarray:
        return levels(self.n, self.degree)

    def max_abs_diff(self, other) -> float:
        a, b, _ = self._aligned(other)
        return float(np.max(np.abs(a - b))) if a.size else 0.0

    # interchange -----------------------------------------------------
    def to_json_dict(self) -> dict:
        entries = [
            {"alpha": list(a), "re": float(c.real), "im": float(c.imag)}
            for a, c in zip(enumerate_indices(self.n, self.degree), self.coeffs)
            if c != 0
        ]
        return {"n": self.n, "degree": self.degree, "basis": self._basis_name,
                "measure": getattr(self, "measure", "lebesgue"), "entries": entries}


@dataclass(frozen=True)
class HermiteRep(_CoeffRep):
    measure: str = "lebesgue"
    _basis_name = "hermite"

    def __post_init__(self):
        super().__post_init__()
        if self.measure not in ("lebesgue", "gauss"):
            raise ValueError(f"unknown measure tag {self.measure!r}")

    def _like(self, coeffs, degree=None):
        return HermiteRep(self.n, self.degree if degree is None else degree, coeffs,
                          self.measure)

    def _aligned(self, other):
        if isinstance(other, HermiteRep) and other.measure != self.measure:
            raise TypeError("cannot mix lebesgue and gauss representations")
        return super()._aligned(other)

    def __call__(self, x):
        return evaluate(self, x)


@dataclass(frozen=True)
class FockRep(_CoeffRep):
    _basis_name = "fock"

    def _like(self, coeffs, degree=None):
        return FockRep(self.n, self.degree if degree is None else degree, coeffs)

    def __call__(self, z):
        return evaluate(self, z)


def rep_from_json_dict(data: dict):
    """Inverse of ``to_json_dict``; validates the interchange format."""
    for key in ("n", "degree", "basis", "entries"):
        if key not in data:
            raise ValueError(f"coefficient file missing key {key!r}")
    n, degree = int(data["n"]), int(data["degree"])
    if n < 1 or degree < 0:
        raise ValueError("n must be >= 1 and degree >= 0")
    imap = index_map(n, degree)
    c = np.zeros(basis_size(n, degree), dtype=complex)
    last = -1
    for e in data["entries"]:
        alpha = tuple(int(a) for a in e["alpha"])
        if alpha not in imap:
            raise ValueError(f"multi-index {list(alpha)} outside degree {degree}, n={n}")
        pos = imap[alpha]
        if pos <= last:
            raise ValueError("entries must be sorted graded-lexicographically without repeats")
        last = pos
        c[pos] = complex(float(e.get("re", 0.0)), float(e.get("im", 0.0)))
    if data["basis"] == "fock":
        return FockRep(n, degree, c)
    if data["basis"] == "hermite":
        return HermiteRep(n, degree, c, data.get("measure", "lebesgue"))
    raise ValueError(f"unknown basis {data['basis']!r}")


# ------------------------------------------------------------ evaluation

def _axis_tables(kind: str, degree: int, x: np.ndarray) -> np.ndarray:
    if kind == "hermite":
        return hermite_fn_table(degree, x)
    if kind == "poly":
        return hermite_poly_table(degree, x)
    if kind == "fock":
        out = np.empty((degree + 1,) + x.shape, dtype=complex)
        out[0] = 1.0
        for k in range(degree):
            out[k + 1] = out[k] * x / math.sqrt(2.0 * (k + 1))
        return out
    raise ValueError(kind)


def basis_matrix(kind: str, n: int, degree: int, points) -> np.ndarray:
    """Matrix ``M[i, a]`` = basis function ``a`` at point ``i``.

    ``kind`` is ``"hermite"`` (Phi_alpha, real points), ``"poly"``
    (normalized Hermite polynomials, any complex points) or ``"fock"``
    (zeta_alpha). ``points`` has shape ``(K, n)`` or ``(n,)``.
    """
    pts = np.asarray(points)
    if pts.ndim == 1:
        pts = pts.reshape(1, -1) if n > 1 or pts.size == 1 else pts.reshape(-1, 1)
    if pts.shape[1] != n:
        raise ValueError(f"points must have {n} coordinates")
    alphas = _alpha_array(n, degree)
    out = None
    for j in range(n):
        tab = _axis_tables(kind, degree, pts[:, j])  # (degree+1, K)
        part = tab[alphas[:, j]].T
        out = part if out is None else out * part
    return out


def evaluate(rep, points):
    """Pointwise value of a representation at one point or a stack of points."""
    pts = np.asarray(points)
    single = pts.ndim == 0 or (pts.ndim == 1 and rep.n > 1 and pts.size == rep.n)
    if isinstance(rep, FockRep):
        kind = "fock"
    elif rep.measure == "lebesgue":
        kind = "hermite"
    else:
        kind = "poly"
    if pts.ndim == 0:
        pts = pts.reshape(1, 1)
    elif pts.ndim == 1:
        pts = pts.reshape(1, -1) if single else pts.reshape(-1, 1)
    vals = basis_matrix(kind, rep.n, rep.degree, pts) @ rep.coeffs
    return complex(vals[0]) if single or np.ndim(points) == 0 else vals


# ------------------------------------------------------------- operators

def _shift(rep, j: int, up: bool, factor) -> np.ndarray:
    src, dst, aj = _shift_maps(rep.n, rep.degree, j, up)
    out = np.zeros(basis_size(rep.n, rep.degree + 1), dtype=complex)
    out[dst] = factor(aj) * rep.coeffs[src]
    return out


def _raise(rep, j, factor):
    return _shift(rep, j, True, factor)


def _lower(rep, j, factor):
    return _shift(rep, j, False, factor)


def ladder(f: HermiteRep, which: str, j: int = 0) -> HermiteRep:
    """Apply A_j, A*_j, x_j or d/dx_j in coefficient space.

    Results have degree ``N + 1`` (lowering results are zero-padded so that
    every variant returns the same layout). For ``gauss`` reps only ``x``
    and ``d`` are meaningful; there ``d`` lowers by ``sqrt(2 alpha_j)``.
    """
    if not isinstance(f, HermiteRep):
        raise TypeError("ladder acts on HermiteRep")
    up = _raise(f, j, lambda a: np.sqrt(2.0 * (a + 1)))       # A*_j
    down = _lower(f, j, lambda a: np.sqrt(2.0 * a))           # A_j
    if f.measure == "gauss":
        table = {"x": (down + up) / 2.0, "d": down}
    else:
        table = {"A": down, "Astar": up, "x": (down + up) / 2.0, "d": (down - up) / 2.0}
    if which not in table:
        raise ValueError(f"operator {which!r} not defined for measure {f.measure!r}")
    return HermiteRep(f.n, f.degree + 1, table[which], f.measure)


def hermite_power(f: HermiteRep, s: float) -> HermiteRep:
    """H^s in coefficient space: multiply level k by (2k + n)^s."""
    w = (2.0 * f.levels + f.n) ** float(s)
    return HermiteRep(f.n, f.degree, f.coeffs * w, f.measure)


def number_operator(F: FockRep) -> FockRep:
    """R = 2 sum_j z_j d/dz_j + n, diagonal with eigenvalue 2|alpha| + n."""
    return FockRep(F.n, F.degree, F.coeffs * (2.0 * F.levels + F.n))


def fock_mul_z(F: FockRep, j: int = 0) -> FockRep:
    return FockRep(F.n, F.degree + 1, _raise(F, j, lambda a: np.sqrt(2.0 * (a + 1))))


def fock_dz(F: FockRep, j: int = 0) -> FockRep:
    return FockRep(F.n, F.degree + 1, _lower(F, j, lambda a: np.sqrt(a / 2.0)))


def fock_D(F: FockRep, j: int = 0, star: bool = False) -> FockRep:
    """D_j = d/dz_j + z_j/2, or D*_j = -d/dz_j + z_j/2 when ``star``."""
    half_z = 0.5 * fock_mul_z(F, j).coeffs
    dz = fock_dz(F, j).coeffs
    return FockRep(F.n, F.degree + 1, half_z - dz if star else half_z + dz)


def project_level(rep, k: int):
    """P_k: keep only the coefficients with |alpha| = k."""
    if k < 0:
        raise ValueError("level must be non-negative")
    return rep._like(np.where(rep.levels == k, rep.coeffs, 0.0))


# ----------------------------------------------------------------- norms

_SPACES = ("L2", "L2gamma", "HermiteSobolev", "GaussSobolev", "FockSobolev", "Fock10", "Fock01")


@dataclass(frozen=True)
class SpaceTag:
    space: str
    order: float = 0.0

    def __post_init__(self):
        if self.space not in _SPACES:
            raise ValueError(f"unknown space {self.space!r}")
        if self.order < 0:
            raise ValueError("order must be non-negative")
        if self.space in ("Fock10", "Fock01") and int(self.order) != self.order:
            raise ValueError("Fock10/Fock01 need an integer order")

    def weights(self, n: int, degree: int) -> np.ndarray:
        """Diagonal weights (2|alpha| + n)^s for the diagonal spaces."""
        if self.space in ("L2", "L2gamma"):
            return np.ones(basis_size(n, degree))
        if self.space in ("HermiteSobolev", "GaussSobolev", "FockSobolev"):
            return (2.0 * levels(n, degree) + n) ** self.order
        raise ValueError(f"{self.space} is not a diagonal weight")


def _fock_derivative_norm(F: FockRep, k: int, star: bool) -> float:
    total = 0.0
    for beta in enumerate_indices(F.n, k):
        G = F
        for j, bj in enumerate(beta):
            for _ in range(bj):
                G = fock_D(G, j, star)
        total += G.norm() ** 2
    return math.sqrt(total)


def space_norm(rep, tag: SpaceTag) -> float:
    """Norm of a truncated representation in the space named by ``tag``."""
    if isinstance(rep, HermiteRep):
        allowed = ("L2", "HermiteSobolev") if rep.measure == "lebesgue" else ("L2gamma", "GaussSobolev")
    else:
        allowed = ("FockSobolev", "Fock10", "Fock01", "L2")
    if tag.space not in allowed:
        raise ValueError(f"space {tag.space} is incompatible with this representation")
    if tag.space == "Fock10":
        return _fock_derivative_norm(rep, int(tag.order), star=True)
    if tag.space == "Fock01":
        return _fock_derivative_norm(rep, int(tag.order), star=False)
    # gauss coefficients are those of E g = g exp(-|x|^2/2) against Phi
    w = tag.weights(rep.n, rep.degree)
    return float(np.sqrt(np.sum(w * np.abs(rep.coeffs) ** 2)))


def fock_measure_rule(n: int, order: int, scales=None):
    """Tensor Gauss-Hermite rule on C^n against dnu.

    Returns ``(points, weights)`` with ``sum w_i g(p_i) ~ integral g dnu``.
    Axis ``2j`` is Re w_j, axis ``2j+1`` is Im w_j; ``scales`` sets the
    substitution ``x = scale * u`` per real axis (``sqrt(2)`` makes the
    Gaussian of dnu the exact weight). Weight factors that are not part of
    dnu are folded into the returned weights.
    """
    rule = gauss_hermite_rule(order)
    if scales is None:
        scales = (math.sqrt(2.0),) * (2 * n)
    scales = tuple(float(s) for s in scales)
    if len(scales) != 2 * n:
        raise ValueError("need one scale per real axis")
    axes, wts = [], []
    for s in scales:
        u = rule.nodes
        axes.append(s * u)
        wts.append(s * rule.weights * np.exp(u * u * (1.0 - 0.5 * s * s)))
    grids = np.meshgrid(*axes, indexing="ij")
    wgrid = np.meshgrid(*wts, indexing="ij")
    real = np.stack([g.reshape(-1) for g in grids], axis=1)
    pts = real[:, 0::2] + 1j * real[:, 1::2]
    w = np.prod(np.stack([g.reshape(-1) for g in wgrid], axis=1), axis=1)
    return pts, w * (2.0 * math.pi) ** (-n)


def fock_sobolev_integral_norm(F: FockRep, s: float, order: int | None = None) -> float:
    """Weighted integral norm (integral of (1+|z|^2)^s |F|^2 dnu)^(1/2)."""
    if s < 0:
        raise ValueError("s must be non-negative")
    need = F.degree + math.ceil(s) + 1
    if order is None:
        order = need
    if order < need:
        raise ValueError(f"quadrature order {order} too small; need >= {need} for exactness")
    pts, w = fock_measure_rule(F.n, order)
    vals = evaluate(F, pts)
    r2 = np.sum(np.abs(pts) ** 2, axis=1)
    return float(np.sqrt(np.sum(w * (1.0 + r2) ** s * np.abs(vals) ** 2)))


def as_points(z, n: int) -> tuple[np.ndarray, bool]:
    """Normalize a point or a stack of points to shape ``(K, n)``.

    Returns the array and a flag telling whether a single point was given.
    """
    arr = np.asarray(z, dtype=complex)
    if arr.ndim == 0:
        if n != 1:
            raise ValueError(f"expected {n} coordinates")
        return arr.reshape(1, 1), True
    if arr.ndim == 1:
        if n == 1:
            return arr.reshape(-1, 1), False
        if arr.size != n:
            raise ValueError(f"expected {n} coordinates")
        return arr.reshape(1, n), True
    if arr.shape[-1] != n:
        raise ValueError(f"expected {n} coordinates")
    return arr.reshape(-1, n), False
