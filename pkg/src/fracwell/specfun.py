"""Special functions behind the kernel evaluations.

Everything here works on plain floats or numpy arrays.  The power integrals
``int u**(-mu) * (cos u, sin u) du`` are split at ``u = 1``: the piece next to
the origin is integrated term by term from the Taylor series (which removes
the ``u**(-mu)`` endpoint analytically), short pieces beyond ``u = 1`` use a
40-point Gauss-Legendre rule, and long or semi-infinite pieces are turned into
non-oscillatory Laplace integrals by rotating the contour into the upper half
plane, ``int_s^inf u**(-nu) e^{iu} du = i e^{is} int_0^inf (s+it)**(-nu) e^{-t} dt``,
which a 64-point Gauss-Laguerre rule resolves to ~1e-15 for ``s >= 4``.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError

EULER_GAMMA = 0.57721566490153286061

_SICI_SERIES_MAX = 4.0
_TAIL_START = 4.0
_GL_MAX_LENGTH = 4.0
_SERIES_TERMS = 14

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(40)
_LAG_NODES, _LAG_WEIGHTS = np.polynomial.laguerre.laggauss(64)


@dataclass(frozen=True)
class LevyIndex:
    """Stability index ``mu`` of the jump process, ``0 <= mu <= 2``.

    ``mu = 0`` and ``mu = 2`` are admitted only as exact limit cases; the
    flags below tell callers when a closed-form path applies.
    """

    mu: float

    def __post_init__(self):
        mu = float(self.mu)
        if not (0.0 <= mu <= 2.0):
            raise DomainError(f"Levy index must satisfy 0 <= mu <= 2, got {mu!r}")
        object.__setattr__(self, "mu", mu)

    @property
    def is_zero_limit(self):
        return self.mu == 0.0

    @property
    def is_cauchy(self):
        return self.mu == 1.0

    @property
    def is_laplacian(self):
        return self.mu == 2.0

    def __float__(self):
        return self.mu


def levy(mu):
    """Coerce a float or :class:`LevyIndex` into a validated ``LevyIndex``."""
    return mu if isinstance(mu, LevyIndex) else LevyIndex(mu)


def a_mu(mu):
    """Normalisation ``Gamma(mu+1) sin(pi mu / 2) / pi`` of the hypersingular kernel."""
    mu = levy(mu).mu
    if mu == 0.0 or mu == 2.0:
        return 0.0
    return math.gamma(mu + 1.0) * math.sin(0.5 * math.pi * mu) / math.pi


def x_over_sin(x):
    """``x / sin(x)`` with the removable point at zero filled in."""
    if abs(x) < 1e-8:
        return 1.0 + x * x / 6.0
    return x / math.sin(x)


def expm1_ratio(p, L):
    """``expm1(p*L)/p``, continuous through ``p = 0`` where it equals ``L``."""
    if p == 0.0:
        return L
    return math.expm1(p * L) / p


def _as_array(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _out(arr, scalar):
    return float(arr) if scalar else arr


# -- sine and cosine integrals ----------------------------------------------

def _sici_series(x):
    x2 = x * x
    term = x.copy()
    si = x.copy()
    for k in range(1, 22):
        term = -term * x2 / ((2 * k) * (2 * k + 1))
        si = si + term / (2 * k + 1)
    term = np.ones_like(x)
    cin = np.zeros_like(x)
    for k in range(1, 22):
        term = -term * x2 / ((2 * k - 1) * (2 * k))
        cin = cin + term / (2 * k)
    with np.errstate(divide="ignore"):
        ci = EULER_GAMMA + np.log(x) + cin
    return si, ci


def _sici_continued_fraction(x):
    # modified Lentz evaluation of E1(ix) = -Ci(x) + i (Si(x) - pi/2)
    tiny = 1e-300
    b = 1.0 + 1j * x
    c = np.full(x.shape, 1.0 / tiny, dtype=complex)
    d = 1.0 / b
    h = d.copy()
    for i in range(2, 500):
        a = -float((i - 1) ** 2)
        b = b + 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h = h * delta
        if np.all(np.abs(delta - 1.0) < 1e-16):
            break
    h = h * (np.cos(x) - 1j * np.sin(x))
    return 0.5 * math.pi + h.imag, -h.real


def sici(x):
    """Return ``(Si(x), Ci(x))`` for ``x >= 0`` (``Ci(0) = -inf``)."""
    x, scalar = _as_array(x)
    if np.any(x < 0) or np.any(np.isnan(x)):
        raise DomainError("sici requires x >= 0")
    si = np.empty_like(x)
    ci = np.empty_like(x)
    small = x <= _SICI_SERIES_MAX
    if np.any(small):
        si[small], ci[small] = _sici_series(x[small])
    if np.any(~small):
        si[~small], ci[~small] = _sici_continued_fraction(x[~small])
    return _out(si, scalar), _out(ci, scalar)


def si(x):
    """Sine integral ``Si(x) = int_0^x sin(u)/u du`` for ``x >= 0``."""
    return sici(x)[0]


def ci(x):
    """Cosine integral ``gamma_E + ln x + int_0^x (cos u - 1)/u du`` for ``x > 0``."""
    arr, _ = _as_array(x)
    if np.any(arr <= 0):
        raise DomainError("Ci(x) has a logarithmic singularity at x = 0; need x > 0")
    return sici(x)[1]


# -- power-weighted oscillatory integrals --------------------------------------

def _power_diff(p, lo, hi):
    """``(hi**p - lo**p) / p`` without cancellation; ``lo`` may be zero."""
    out = np.empty_like(hi)
    zero = lo == 0.0
    if np.any(zero):
        with np.errstate(divide="ignore", invalid="ignore"):
            out[zero] = hi[zero] ** p / p if p > 0 else np.inf
    nz = ~zero
    if np.any(nz):
        lo_nz, hi_nz = lo[nz], hi[nz]
        L = np.log(hi_nz / lo_nz)
        if p == 0.0:
            out[nz] = L
        else:
            pl = p * L
            close = np.abs(pl) < 1.0
            out[nz] = np.where(
                close,
                lo_nz ** p * np.expm1(np.where(close, pl, 0.0)) / p,
                (hi_nz ** p - lo_nz ** p) / p,
            )
    return out


def _series_piece(nu, lo, hi):
    """Cos/sin parts of ``int_lo^hi u**(-nu) e^{iu} du`` for ``0 <= lo <= hi <= 1``."""
    cpart = np.zeros_like(hi)
    spart = np.zeros_like(hi)
    fact_even = 1.0
    fact_odd = 1.0
    for j in range(_SERIES_TERMS):
        if j > 0:
            fact_even *= (2 * j - 1) * (2 * j)
        fact_odd = fact_even * (2 * j + 1)
        sign = -1.0 if j % 2 else 1.0
        cpart = cpart + sign * _power_diff(2 * j + 1 - nu, lo, hi) / fact_even
        spart = spart + sign * _power_diff(2 * j + 2 - nu, lo, hi) / fact_odd
    return cpart, spart


def _gauss_legendre_piece(nu, lo, hi):
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    u = mid[:, None] + half[:, None] * _GL_NODES[None, :]
    vals = u ** (-nu) * np.exp(1j * u)
    return half * (vals @ _GL_WEIGHTS)


def _laguerre_tail(nu, s):
    """``int_s^inf u**(-nu) e^{iu} du`` for ``s >= 4`` via the rotated contour."""
    vals = (s[:, None] + 1j * _LAG_NODES[None, :]) ** (-nu)
    return 1j * np.exp(1j * s) * (vals @ _LAG_WEIGHTS)


def _far_piece(nu, lo, hi):
    """Complex ``int_lo^hi u**(-nu) e^{iu} du`` for ``1 <= lo <= hi <= inf``."""
    out = np.zeros(lo.shape, dtype=complex)
    short = np.isfinite(hi) & (hi - lo <= _GL_MAX_LENGTH)
    if np.any(short):
        out[short] = _gauss_legendre_piece(nu, lo[short], hi[short])
    long_ = ~short
    if np.any(long_):
        a, b = lo[long_], hi[long_]
        m = np.maximum(a, _TAIL_START)
        res = _laguerre_tail(nu, m)
        head = m > a
        if np.any(head):
            res[head] += _gauss_legendre_piece(nu, a[head], m[head])
        fin = np.isfinite(b)
        if np.any(fin):
            res[fin] -= _laguerre_tail(nu, b[fin])
        out[long_] = res
    return out


def oscillatory_integral(nu, lo, hi):
    """Return ``(int_lo^hi u**(-nu) cos u du, int_lo^hi u**(-nu) sin u du)``.

    Requires ``0 <= lo <= hi``; ``hi`` may be ``inf`` when ``nu > 0``.  The
    cosine part is ``inf`` when ``lo = 0`` and ``nu >= 1``; callers validate.
    """
    lo, s1 = _as_array(lo)
    hi, s2 = _as_array(hi)
    lo, hi = np.broadcast_arrays(lo, hi)
    shape = lo.shape
    lo = lo.ravel().copy()
    hi = hi.ravel().copy()
    cpart = np.zeros_like(hi)
    spart = np.zeros_like(hi)
    near = lo < 1.0
    if np.any(near):
        c, s = _series_piece(nu, lo[near], np.minimum(hi[near], 1.0))
        cpart[near] += c
        spart[near] += s
    far = hi > 1.0
    if np.any(far):
        v = _far_piece(nu, np.maximum(lo[far], 1.0), hi[far])
        cpart[far] += v.real
        spart[far] += v.imag
    cpart = cpart.reshape(shape)
    spart = spart.reshape(shape)
    scalar = s1 and s2
    return _out(cpart, scalar), _out(spart, scalar)


def oscillatory_tail(nu, s):
    """Complex tail ``int_s^inf u**(-nu) e^{iu} du`` for ``nu > 0``, ``s > 0``."""
    if nu <= 0:
        raise DomainError("oscillatory tail converges only for nu > 0")
    s_arr, scalar = _as_array(s)
    if np.any(s_arr <= 0):
        raise DomainError("oscillatory tail requires s > 0")
    c, sn = oscillatory_integral(nu, s_arr, np.full_like(s_arr, np.inf))
    out = np.asarray(c) + 1j * np.asarray(sn)
    return complex(out) if scalar else out


def _check_open_mu(mu):
    mu = levy(mu).mu
    if mu >= 2.0:
        raise DomainError("power integral diverges at u = 0 for mu = 2; use the closed-form path")
    return mu


@lru_cache(maxsize=1 << 16)
def _frac_sin_cached(mu, z):
    return oscillatory_integral(mu, 0.0, z)[1]


@lru_cache(maxsize=1 << 16)
def _frac_cos_cached(mu, a, b):
    return oscillatory_integral(mu, a, b)[0]


def frac_sin_integral(mu, z):
    """``int_0^z u**(-mu) sin u du`` for ``0 <= mu < 2`` and ``z >= 0``."""
    mu = _check_open_mu(mu)
    z_arr, scalar = _as_array(z)
    if np.any(z_arr < 0):
        raise DomainError("frac_sin_integral requires z >= 0")
    if scalar:
        return 0.0 if z_arr == 0.0 else _frac_sin_cached(mu, float(z_arr))
    return oscillatory_integral(mu, np.zeros_like(z_arr), z_arr)[1]


def frac_cos_integral(mu, a, b):
    """``int_a^b u**(-mu) cos u du`` for ``0 <= mu < 2`` and ``0 <= a <= b``.

    For ``mu >= 1`` the integrand is not integrable at the origin, so
    ``a = 0 < b`` raises :class:`DomainError`.
    """
    mu = _check_open_mu(mu)
    a_arr, s1 = _as_array(a)
    b_arr, s2 = _as_array(b)
    a_arr, b_arr = np.broadcast_arrays(a_arr, b_arr)
    if np.any(a_arr < 0) or np.any(b_arr < a_arr):
        raise DomainError("frac_cos_integral requires 0 <= a <= b")
    if mu >= 1.0 and np.any((a_arr == 0.0) & (b_arr > 0.0)):
        raise DomainError("u**(-mu) cos u is not integrable at 0 for mu >= 1")
    if s1 and s2:
        a_f, b_f = float(a_arr), float(b_arr)
        return 0.0 if a_f == b_f else _frac_cos_cached(mu, a_f, b_f)
    out = np.asarray(oscillatory_integral(mu, a_arr, b_arr)[0], dtype=float)
    return np.where(a_arr == b_arr, 0.0, out)
