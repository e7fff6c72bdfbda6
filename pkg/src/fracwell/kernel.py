"""Fractional Laplacian of the trigonometric basis on [-1, 1].

The even basis is ``cos(lambda_k x)`` with ``lambda_k = pi (2k+1) / 2`` and the
odd basis ``sin(b_k x)`` with ``b_k = k pi``; both vanish at the walls and are
orthonormal on [-1, 1].  ``f_even`` and ``g_odd`` return the hypersingular
operator applied to one basis function, reduced to the power integrals of
:mod:`fracwell.specfun`.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .specfun import a_mu, frac_cos_integral, frac_sin_integral, levy, sici


class Parity(str, enum.Enum):
    EVEN = "even"
    ODD = "odd"


@dataclass(frozen=True)
class BasisIndex:
    """Parity-tagged basis label; even labels start at 0, odd ones at 1."""

    parity: Parity
    k: int

    def __post_init__(self):
        object.__setattr__(self, "parity", Parity(self.parity))
        if int(self.k) != self.k:
            raise DomainError(f"basis label must be an integer, got {self.k!r}")
        object.__setattr__(self, "k", int(self.k))
        lowest = 0 if self.parity is Parity.EVEN else 1
        if self.k < lowest:
            raise DomainError(f"{self.parity.value} basis labels start at {lowest}, got {self.k}")

    @property
    def wavenumber(self):
        if self.parity is Parity.EVEN:
            return 0.5 * math.pi * (2 * self.k + 1)
        return math.pi * self.k


def wavenumbers(parity, n):
    """Wavenumbers of the first ``n`` basis functions of one parity sector."""
    parity = Parity(parity)
    if parity is Parity.EVEN:
        return 0.5 * math.pi * (2.0 * np.arange(n) + 1.0)
    return math.pi * np.arange(1.0, n + 1.0)


def sector_labels(parity, n):
    start = 0 if Parity(parity) is Parity.EVEN else 1
    return np.arange(start, start + n)


def basis_eval(b, x):
    """Evaluate a basis function at ``|x| <= 1``."""
    x_arr = np.asarray(x, dtype=float)
    if np.any(np.abs(x_arr) > 1.0):
        raise DomainError("basis functions live on [-1, 1]")
    w = b.wavenumber
    out = np.cos(w * x_arr) if b.parity is Parity.EVEN else np.sin(w * x_arr)
    return float(out) if out.ndim == 0 else out


def _interior(x):
    x_arr = np.asarray(x, dtype=float)
    if np.any(np.abs(x_arr) >= 1.0) or np.any(np.isnan(x_arr)):
        raise DomainError("kernel functions diverge at the walls; need |x| < 1")
    return x_arr


def _basis_index(k, parity):
    if isinstance(k, BasisIndex):
        if k.parity is not parity:
            raise DomainError(f"expected a {parity.value} basis label, got {k}")
        return k
    return BasisIndex(parity, k)


def _power_terms(mu, w, x):
    """Oriented cos integral from w(1-x) to w(1+x) and the summed sin integrals."""
    lo = w * (1.0 - x)
    hi = w * (1.0 + x)
    a = np.minimum(lo, hi)
    b = np.maximum(lo, hi)
    c = np.sign(x) * frac_cos_integral(mu, a, b)
    s = frac_sin_integral(mu, lo) + frac_sin_integral(mu, hi)
    return c, s


def f_even(k, mu, x):
    """Operator image of ``cos(lambda_k x)`` at interior points ``x``."""
    b = _basis_index(k, Parity.EVEN)
    mu = levy(mu)
    x = _interior(x)
    lam = b.wavenumber
    if mu.is_zero_limit:
        out = np.cos(lam * x)
    elif mu.is_laplacian:
        out = lam * lam * np.cos(lam * x)
    elif mu.is_cauchy:
        si_m, ci_m = sici(lam * (1.0 - x))
        si_p, ci_p = sici(lam * (1.0 + x))
        out = (lam / math.pi) * (np.sin(lam * x) * (ci_m - ci_p) + np.cos(lam * x) * (si_m + si_p))
    else:
        c, s = _power_terms(mu.mu, lam, x)
        pref = a_mu(mu) * lam ** mu.mu / mu.mu
        out = -pref * (np.sin(lam * x) * c - np.cos(lam * x) * s)
    out = np.asarray(out, dtype=float)
    return float(out) if out.ndim == 0 else out


def g_odd(k, mu, x):
    """Operator image of ``sin(k pi x)`` at interior points ``x``."""
    b = _basis_index(k, Parity.ODD)
    mu = levy(mu)
    x = _interior(x)
    w = b.wavenumber
    if mu.is_zero_limit:
        out = np.sin(w * x)
    elif mu.is_laplacian:
        out = w * w * np.sin(w * x)
    elif mu.is_cauchy:
        si_m, ci_m = sici(w * (1.0 - x))
        si_p, ci_p = sici(w * (1.0 + x))
        out = b.k * (np.sin(w * x) * (si_m + si_p) - np.cos(w * x) * (ci_m - ci_p))
    else:
        c, s = _power_terms(mu.mu, w, x)
        pref = a_mu(mu) * w ** mu.mu / mu.mu
        out = pref * (np.cos(w * x) * c + np.sin(w * x) * s)
    out = np.asarray(out, dtype=float)
    return float(out) if out.ndim == 0 else out


def kernel_eval(b, mu, x):
    """Dispatch to :func:`f_even` or :func:`g_odd` by the parity of ``b``."""
    if b.parity is Parity.EVEN:
        return f_even(b, mu, x)
    return g_odd(b, mu, x)
