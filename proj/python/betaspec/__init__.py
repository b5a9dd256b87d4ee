"""Spectra of beta-transformation transfer operators."""

import json

from ._core import (
    Beta,
    BetaspecError,
    Eigenvalue,
    continuity_residual,
    eigenfunctional,
    eigenvalues,
    greedy_digits,
    quasi_greedy_digits,
)
from . import _core

__all__ = [
    "Beta",
    "BetaspecError",
    "Eigenvalue",
    "continuity_residual",
    "decay",
    "eigenfunctional",
    "eigenvalues",
    "greedy_digits",
    "holder",
    "quasi_greedy_digits",
    "scan",
    "spectrum",
    "track",
    "verify",
]


def _beta(b):
    return b if isinstance(b, Beta) else Beta(str(b))


def spectrum(beta, tol=0.0, ceiling=0.95):
    return json.loads(_core._spectrum(_beta(beta), tol, ceiling))


def track(beta, lam, window=0.01, steps=21):
    return json.loads(_core._track(_beta(beta), complex(lam), window, steps))


def holder(beta, lam):
    return json.loads(_core._holder(_beta(beta), complex(lam)))


def decay(beta, construct=False, n_max=40, n_lo=-1, x=0.37):
    return json.loads(_core._decay(_beta(beta), construct, n_max, n_lo, x))


def verify(family, n, tol=1e-9):
    return json.loads(_core._verify(family, n, tol))


def scan(lo, hi, grid, threads=1):
    return json.loads(_core._scan(str(lo), str(hi), grid, threads))
