"""Reference values frozen from a first validated run.

The S~ growth curve for ``sign`` was cross-checked against an independent
80-digit mpmath evaluation of the same truncated matrices; the two agree to
about 1e-15 relative.
"""
from __future__ import annotations

__all__ = [
    "SIGN_S_TILDE_GROWTH",
    "XI_PLATEAU",
    "SIN_SOBOLEV_PLATEAU",
    "WEIGHTED_NORM_BOUNDS",
]

# truncated |S~_phi| for m = sign, n = 1, keyed by degree
SIGN_S_TILDE_GROWTH = {
    8: 286.31987000668926,
    16: 877219.9658591936,
    32: 18387456488336.54,
    48: 5.233982744984201e20,
}

# |xi_1 H^(-1/2)| (complement exponent rule), n = 1, keyed by degree
XI_PLATEAU = {
    8: 0.97772019,
    16: 0.99343000,
    32: 0.99820675,
    64: 0.99953087,
}

# |T_sin| on the Hermite-Sobolev space of order k, n = 1, degree 32
SIN_SOBOLEV_PLATEAU = {1: 1.0978, 2: 1.848617}

# bounds on |F|^2 (integral, weight (1+|z|^2)^s) / |F|^2 (coefficient,
# weight (2|alpha|+1)^s) for n = 1; the per-monomial ratios decrease from
# the upper value at alpha = 0 to 1 as |alpha| grows
WEIGHTED_NORM_BOUNDS = {0: (1.0, 1.0), 1: (1.0, 3.0), 2: (1.0, 13.0)}
