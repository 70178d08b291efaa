"""Eigenvalue-only solvers for dense Hermitian matrices.

Two independent in-house routes are provided:

* :func:`householder_ql_eigenvalues` reduces the matrix to a real symmetric
  tridiagonal form with Householder reflections and then runs the implicit
  QL iteration with Wilkinson-type shifts.
* :func:`jacobi_eigenvalues` is the cyclic Jacobi method. It is slow but
  shares no code with the first route, so it serves as a cross-check for
  small matrices.
"""

from __future__ import annotations

import math

import numpy as np

_EPS = np.finfo(float).eps


def householder_tridiagonalize(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(diag, offdiag)`` of a real tridiagonal matrix unitarily similar to ``m``.

    ``m`` must be Hermitian. Complex sub-diagonal entries produced by the
    reflections are replaced by their moduli, which is a similarity by a
    diagonal phase matrix.
    """
    a = np.array(m, dtype=complex if np.iscomplexobj(m) else float, copy=True)
    n = a.shape[0]
    for k in range(n - 2):
        x = a[k + 1:, k].copy()
        xnorm = np.linalg.norm(x)
        if xnorm == 0.0:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        alpha = -phase * xnorm
        v = x
        v[0] -= alpha
        vnorm = np.linalg.norm(v)
        if vnorm == 0.0:
            continue
        u = v / vnorm
        sub = a[k + 1:, k + 1:]
        p = sub @ u
        kappa = np.vdot(u, p).real
        w = p - kappa * u
        sub -= 2.0 * (np.outer(u, w.conj()) + np.outer(w, u.conj()))
        a[k + 1:, k] = 0.0
        a[k, k + 1:] = 0.0
        a[k + 1, k] = alpha
        a[k, k + 1] = np.conj(alpha)
    return np.real(np.diagonal(a)).copy(), np.abs(np.diagonal(a, -1)).astype(float)


def tridiagonal_ql_eigenvalues(diag, offdiag, max_iter: int = 60) -> np.ndarray:
    """Eigenvalues of the symmetric tridiagonal matrix by implicit-shift QL.

    ``offdiag[k]`` couples rows ``k`` and ``k+1``. Returns ascending values.
    """
    d = [float(x) for x in diag]
    n = len(d)
    e = [float(x) for x in offdiag] + [0.0]
    if len(e) != n:
        raise ValueError("offdiag must have length len(diag) - 1")
    for l in range(n):
        iters = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= _EPS * dd:
                    break
                m += 1
            if m == l:
                break
            iters += 1
            if iters > max_iter:
                raise ArithmeticError("QL iteration did not converge")
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
                    # underflow: split the matrix and restart from l
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
            if deflated:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return np.sort(np.array(d))


def householder_ql_eigenvalues(m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    if n == 1:
        return np.array([float(np.real(m[0, 0]))])
    d, e = householder_tridiagonalize(m)
    return tridiagonal_ql_eigenvalues(d, e)


def _real_embedding(m: np.ndarray) -> np.ndarray:
    # A + iB  ->  [[A, -B], [B, A]], symmetric with every eigenvalue doubled
    a, b = m.real, m.imag
    return np.block([[a, -b], [b, a]])


def jacobi_eigenvalues(m: np.ndarray, tol: float = 1e-14, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues by cyclic Jacobi rotations (ascending)."""
    complex_input = np.iscomplexobj(m) and np.any(np.imag(m))
    a = _real_embedding(m) if complex_input else np.array(np.real(m), dtype=float, copy=True)
    n = a.shape[0]
    scale = np.linalg.norm(a)
    for _ in range(max_sweeps):
        off = math.sqrt(max(float(np.sum(a * a) - np.sum(np.diag(a) ** 2)), 0.0))
        if off <= tol * max(scale, 1e-300):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
    else:
        raise ArithmeticError("Jacobi sweeps did not converge")
    vals = np.sort(np.diag(a))
    return vals[::2].copy() if complex_input else vals
