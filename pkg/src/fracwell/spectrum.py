"""Merged spectrum of the fractional infinite well and eigenfunction diagnostics.

The operator commutes with parity, so each sector is solved separately and the
two spectra are merged by energy, labelled ``n = 1, 2, ...``.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .eigensolver import eigh, eigvalsh
from .errors import DegenerateSpectrumError, DiagnosticError, DomainError
from .galerkin import QuadratureSpec, assemble
from .kernel import BasisIndex, Parity, kernel_eval, sector_labels, wavenumbers
from .specfun import LevyIndex, levy

DEGENERACY_TOL = 1e-12
WALL_CUTOFF = 1e-6
NODE_MARGIN = 1e-4
ZG_ALPHA = 1443.0 * math.pi / 4096.0
ZG_PREFACTOR = 0.921749


@dataclass(frozen=True)
class Eigenfunction:
    """One energy eigenstate as a truncated trigonometric series.

    Coefficients are signed so that ``psi(0) > 0`` for even states and
    ``psi'(0) > 0`` for odd states.
    """

    parity: Parity
    coefficients: np.ndarray = field(repr=False)
    energy: float
    label: int
    sector_index: int

    def __post_init__(self):
        c = np.array(self.coefficients, dtype=float)
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    @property
    def wavenumbers(self):
        return wavenumbers(self.parity, self.coefficients.size)

    def __call__(self, x):
        x_arr = np.asarray(x, dtype=float)
        if np.any(np.abs(x_arr) > 1.0):
            raise DomainError("eigenfunctions are defined on [-1, 1]")
        phase = np.multiply.outer(x_arr, self.wavenumbers)
        basis = np.cos(phase) if self.parity is Parity.EVEN else np.sin(phase)
        out = basis @ self.coefficients
        return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class Spectrum:
    mu: LevyIndex
    n_basis: int
    even: object = field(repr=False)
    odd: object = field(repr=False)
    merged: tuple = field(repr=False)
    quadrature: QuadratureSpec = QuadratureSpec()
    method: str = "spectral"

    @property
    def energies(self):
        return np.array([s.energy for s in self.merged])

    @property
    def degenerate(self):
        return self.mu.is_zero_limit

    def state(self, label):
        if int(label) != label or not 1 <= label <= len(self.merged):
            raise DomainError(f"label must be in 1..{len(self.merged)}, got {label!r}")
        return self.merged[int(label) - 1]


def _merge_order(even_vals, odd_vals, mu):
    """Merged ``(parity, sector_index)`` order by ascending energy."""
    n_even, n_odd = len(even_vals), len(odd_vals)
    if mu.is_zero_limit:
        # Every energy equals 1; interleave instead of sorting a degenerate list.
        order = []
        for j in range(max(n_even, n_odd)):
            if j < n_even:
                order.append((Parity.EVEN, j))
            if j < n_odd:
                order.append((Parity.ODD, j))
        return order
    tagged = [(v, Parity.EVEN, j) for j, v in enumerate(even_vals)]
    tagged += [(v, Parity.ODD, j) for j, v in enumerate(odd_vals)]
    tagged.sort(key=lambda t: (t[0], t[1] is Parity.ODD, t[2]))
    for (e1, p1, _), (e2, p2, _) in zip(tagged, tagged[1:]):
        if p1 is not p2 and e2 - e1 <= DEGENERACY_TOL * max(1.0, abs(e1)):
            raise DegenerateSpectrumError(
                f"even and odd energies {e1!r} and {e2!r} coincide; ordering is ambiguous")
    return [(p, j) for _, p, j in tagged]


def _plot_sign(parity, coefficients):
    if parity is Parity.EVEN:
        slope = coefficients.sum()
    else:
        slope = coefficients @ wavenumbers(parity, coefficients.size)
    return -1.0 if slope < 0 else 1.0


def solve(mu, n_basis, q=None, method="spectral"):
    """Assemble and diagonalize both parity sectors, then merge by energy."""
    mu = levy(mu)
    if int(n_basis) != n_basis or n_basis < 1:
        raise DomainError(f"n_basis must be a positive integer, got {n_basis!r}")
    n_basis = int(n_basis)
    q = q or QuadratureSpec()
    sectors = {}
    for parity in Parity:
        matrix = assemble(parity, mu, n_basis, q, method=method)
        sectors[parity] = eigh(matrix.entries)
    merged = []
    order = _merge_order(sectors[Parity.EVEN].eigenvalues, sectors[Parity.ODD].eigenvalues, mu)
    for label, (parity, j) in enumerate(order, start=1):
        dec = sectors[parity]
        coeffs = dec.eigenvectors[:, j]
        coeffs = _plot_sign(parity, coeffs) * coeffs
        merged.append(Eigenfunction(parity, coeffs, float(dec.eigenvalues[j]), label, j))
    return Spectrum(mu, n_basis, sectors[Parity.EVEN], sectors[Parity.ODD], tuple(merged), q, method)


def merged_energies(mu, n_basis, q=None, method="spectral"):
    """Merged energies and their parities without computing eigenvectors."""
    mu = levy(mu)
    if int(n_basis) != n_basis or n_basis < 1:
        raise DomainError(f"n_basis must be a positive integer, got {n_basis!r}")
    vals = {p: eigvalsh(assemble(p, mu, int(n_basis), q, method=method).entries) for p in Parity}
    order = _merge_order(vals[Parity.EVEN], vals[Parity.ODD], mu)
    energies = np.array([vals[p][j] for p, j in order])
    return energies, [p for p, _ in order]


def sector_energies(parity, mu, n_basis, q=None, method="spectral"):
    """Ascending eigenvalues of one parity sector."""
    return eigvalsh(assemble(parity, mu, n_basis, q, method=method).entries)


def eval_eigenfunction(s, label, x):
    return s.state(label)(x)


def apply_operator(s, label, x):
    """Operator applied termwise to the truncated series of state ``label``."""
    state = s.state(label)
    x_arr = np.asarray(x, dtype=float)
    if np.any(np.abs(x_arr) >= 1.0 - WALL_CUTOFF):
        raise DomainError(f"operator images are reported only for |x| < 1 - {WALL_CUTOFF:g}")
    total = np.zeros_like(x_arr)
    for k, c in zip(sector_labels(state.parity, state.coefficients.size), state.coefficients):
        total = total + c * kernel_eval(BasisIndex(state.parity, int(k)), s.mu, x_arr)
    return float(total) if total.ndim == 0 else total


def residual(s, label, x):
    """``apply_operator - E psi`` at interior points."""
    return apply_operator(s, label, x) - s.state(label).energy * np.asarray(eval_eigenfunction(s, label, x))


def count_nodes(s, label, grid_size=4001):
    """Sign changes of the eigenfunction on a uniform grid inside the well."""
    if int(grid_size) != grid_size or grid_size < 101:
        raise DomainError("grid_size must be an integer >= 101")
    x = np.linspace(-1.0 + NODE_MARGIN, 1.0 - NODE_MARGIN, int(grid_size))
    signs = np.sign(eval_eigenfunction(s, label, x))
    signs = signs[signs != 0]
    return int(np.count_nonzero(np.diff(signs)))


def asymptotic_energy(n, mu):
    """Large-``n`` approximation ``[n pi/2 - (2 - mu) pi/8]**mu``."""
    mu = levy(mu)
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    return (n * math.pi / 2.0 - (2.0 - mu.mu) * math.pi / 8.0) ** mu.mu


def ordinary_spectrum(n):
    """Energies of the ordinary infinite well, ``pi**2 n**2 / 4``."""
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    return math.pi ** 2 * n * n / 4.0


def zg_reference(x):
    """Closed-form ground-state approximation used as a comparison target at mu = 1."""
    x_arr = np.asarray(x, dtype=float)
    if np.any(np.abs(x_arr) > 1.0):
        raise DomainError("zg_reference is defined on [-1, 1]")
    out = ZG_PREFACTOR * np.sqrt((1.0 - x_arr ** 2) * np.cos(ZG_ALPHA * x_arr))
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class BoundaryFit:
    slope: float
    residual: float
    samples: int


def boundary_exponent(s, label=1, window=(0.01, 0.1), samples=20):
    """Power-law exponent of ``|psi|`` near the left wall.

    Least-squares slope of ``log|psi(-1 + t)|`` against ``log t`` on
    ``samples`` log-spaced points ``t`` in ``window``; ``residual`` is the RMS
    misfit in log space.
    """
    lo, hi = window
    if not 0.0 < lo < hi < 1.0:
        raise DomainError("fit window must satisfy 0 < lo < hi < 1")
    t = np.geomspace(lo, hi, int(samples))
    psi = np.abs(eval_eigenfunction(s, label, -1.0 + t))
    keep = psi > 0
    if np.count_nonzero(keep) < 10:
        raise DiagnosticError(f"only {np.count_nonzero(keep)} non-zero samples in the fit window")
    logt, logpsi = np.log(t[keep]), np.log(psi[keep])
    slope, intercept = np.polyfit(logt, logpsi, 1)
    misfit = logpsi - (slope * logt + intercept)
    return BoundaryFit(float(slope), float(np.sqrt(np.mean(misfit ** 2))), int(np.count_nonzero(keep)))


def spectrum_to_dict(s, m_report=None):
    states = s.merged if m_report is None else s.merged[:m_report]
    return {
        "mu": float(s.mu),
        "n_basis": s.n_basis,
        "states": [
            {"label": st.label, "parity": st.parity.value, "energy": st.energy,
             "coefficients": [float(c) for c in st.coefficients]}
            for st in states
        ],
    }
