"""Dense symmetric eigensolver.

Householder reduction to tridiagonal form followed by the implicit-shift QL
iteration, with eigenvectors accumulated alongside.  A cyclic Jacobi solver is
kept as an independent reference for tests.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceError, DomainError

SYMMETRY_TOL = 1e-8
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending eigenvalues; column ``j`` of ``eigenvectors`` pairs with value ``j``."""

    order: int
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray = field(repr=False)

    def __post_init__(self):
        for name in ("eigenvalues", "eigenvectors"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def head(self, m):
        return EigenDecomposition(m, self.eigenvalues[:m], self.eigenvectors[:, :m])


def _as_symmetric(a):
    a = np.array(getattr(a, "entries", a), dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise DomainError(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DomainError("matrix contains non-finite entries")
    scale = max(1.0, float(np.max(np.abs(a))))
    if np.max(np.abs(a - a.T)) > SYMMETRY_TOL * scale:
        raise DomainError("matrix is not symmetric within tolerance")
    return 0.5 * (a + a.T)


def tridiagonalize(a, want_vectors=True):
    """Householder reduction ``Q^T A Q = T``; returns ``(d, e, Q)``.

    ``d`` is the diagonal of ``T`` and ``e[j]`` couples rows ``j`` and ``j+1``
    (``e[-1] = 0``).  ``Q`` is ``None`` when vectors are not requested.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    reflectors = []
    e = np.zeros(n)
    for k in range(n - 2):
        x = a[k + 1:, k]
        norm = math.sqrt(float(x @ x))
        if norm == 0.0:
            e[k] = 0.0
            reflectors.append(None)
            continue
        alpha = -math.copysign(norm, x[0])
        v = x.copy()
        v[0] -= alpha
        v /= math.sqrt(float(v @ v))
        sub = a[k + 1:, k + 1:]
        p = sub @ v
        q = p - float(v @ p) * v
        sub -= 2.0 * (np.outer(v, q) + np.outer(q, v))
        e[k] = alpha
        reflectors.append(v)
    if n >= 2:
        e[n - 2] = a[n - 1, n - 2]
    d = np.diag(a).copy()

    if not want_vectors:
        return d, e, None
    qmat = np.eye(n)
    for k in range(len(reflectors) - 1, -1, -1):
        v = reflectors[k]
        if v is None:
            continue
        block = qmat[k + 1:, k + 1:]
        block -= 2.0 * np.outer(v, v @ block)
    return d, e, qmat


def tridiagonal_ql(d, e, zt=None, max_iterations=None):
    """Implicit-shift QL on a symmetric tridiagonal matrix, in place.

    ``zt`` holds eigenvector rows (the transpose of the accumulated basis) and
    is rotated alongside.  Raises :class:`ConvergenceError` after
    ``max_iterations`` QL sweeps in total (default ``50 n``).
    """
    n = d.shape[0]
    budget = 50 * n if max_iterations is None else max_iterations
    sweeps = 0
    for l in range(n):
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= _EPS * dd:
                    break
                m += 1
            if m == l:
                break
            sweeps += 1
            if sweeps > budget:
                raise ConvergenceError(f"QL iteration did not converge in {budget} sweeps",
                                       estimate=float(np.max(np.abs(e))))
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            deflated = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    deflated = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                if zt is not None:
                    upper = zt[i + 1].copy()
                    zt[i + 1] = s * zt[i] + c * upper
                    zt[i] = c * zt[i] - s * upper
            if deflated:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return d, zt


def _fix_signs(vectors):
    idx = np.argmax(np.abs(vectors), axis=0)
    signs = np.where(vectors[idx, np.arange(vectors.shape[1])] < 0, -1.0, 1.0)
    return vectors * signs


def eigh(a):
    """Full eigendecomposition of a symmetric matrix.

    Each eigenvector is normalized and signed so that its entry of largest
    magnitude (lowest index on ties) is positive.
    """
    a = _as_symmetric(a)
    n = a.shape[0]
    d, e, qmat = tridiagonalize(a)
    zt = np.ascontiguousarray(qmat.T)
    d, zt = tridiagonal_ql(d, e, zt)
    order = np.argsort(d, kind="stable")
    vectors = zt[order].T
    vectors = vectors / np.linalg.norm(vectors, axis=0)
    return EigenDecomposition(n, d[order], _fix_signs(vectors))


def eigvalsh(a):
    """Ascending eigenvalues only; skips eigenvector accumulation."""
    a = _as_symmetric(a)
    d, e, _ = tridiagonalize(a, want_vectors=False)
    d, _ = tridiagonal_ql(d, e)
    return np.sort(d)


def eigh_lowest(a, m):
    """The ``m`` lowest eigenpairs, identical to the leading part of :func:`eigh`."""
    a = _as_symmetric(a)
    if int(m) != m or not 1 <= m <= a.shape[0]:
        raise DomainError(f"need 1 <= m <= {a.shape[0]}, got {m!r}")
    return eigh(a).head(int(m))


def jacobi_eigh(a, tol=1e-14, max_sweeps=100):
    """Cyclic Jacobi eigendecomposition; slow, used as a reference solver."""
    a = _as_symmetric(a).copy()
    n = a.shape[0]
    v = np.eye(n)
    scale = max(float(np.max(np.abs(a))), 1e-300)
    for _ in range(max_sweeps):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= _EPS * 1e-3 * scale:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.hypot(t, 1.0)
                s = t * c
                col_p = a[:, p].copy()
                a[:, p] = c * col_p - s * a[:, q]
                a[:, q] = s * col_p + c * a[:, q]
                row_p = a[p, :].copy()
                a[p, :] = c * row_p - s * a[q, :]
                a[q, :] = s * row_p + c * a[q, :]
                vp = v[:, p].copy()
                v[:, p] = c * vp - s * v[:, q]
                v[:, q] = s * vp + c * v[:, q]
    else:
        raise ConvergenceError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")
    vals = np.diag(a)
    order = np.argsort(vals, kind="stable")
    return EigenDecomposition(n, vals[order], _fix_signs(v[:, order]))
