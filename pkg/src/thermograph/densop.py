"""Dense state vectors and density matrices on qubits.

States are plain numpy arrays: a state vector has shape ``(2**n,)`` and a
density matrix ``(2**n, 2**n)``. Qubit 0 is the most significant bit of the
basis index, so ``|b_0 b_1 ... b_{n-1}>`` sits at ``sum(b_k << (n-1-k))``.

Gates act through reshaped views on basis-index strides and never build
``2**n x 2**n`` gate matrices. All functions return new arrays.
"""

from __future__ import annotations

from collections.abc import Iterable

import numpy as np

from .eigen import householder_ql_eigenvalues, jacobi_eigenvalues
from .errors import CapExceededError

HARD_MAX_QUBITS = 14
DEFAULT_MAX_QUBITS = 12
HERMITIAN_TOL = 1e-10

# below this dimension the in-house Householder/QL route is the default
_HOUSEHOLDER_MAX_DIM = 256


def check_cap(n: int, max_qubits: int = DEFAULT_MAX_QUBITS) -> None:
    if max_qubits > HARD_MAX_QUBITS:
        raise CapExceededError(f"qubit cap {max_qubits} exceeds the hard limit {HARD_MAX_QUBITS}")
    if n > max_qubits:
        raise CapExceededError(f"{n} qubits exceeds the dense cap of {max_qubits}")


def num_qubits(a: np.ndarray) -> int:
    dim = a.shape[0]
    n = dim.bit_length() - 1
    if dim < 1 or 1 << n != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    return n


def _check_qubit(n: int, i: int) -> None:
    if not 0 <= i < n:
        raise ValueError(f"qubit {i} outside [0, {n})")


def _bit(n: int, i: int) -> np.ndarray:
    """Value of qubit ``i`` in every basis index."""
    return (np.arange(1 << n) >> (n - 1 - i)) & 1


def plus_product_state(n: int) -> np.ndarray:
    if n < 1:
        raise ValueError("need at least one qubit")
    return np.full(1 << n, 2.0 ** (-n / 2), dtype=complex)


def basis_state(bits: Iterable[int]) -> np.ndarray:
    bits = list(bits)
    s = np.zeros(1 << len(bits), dtype=complex)
    s[int("".join(str(int(b)) for b in bits), 2)] = 1.0
    return s


def apply_cz(s: np.ndarray, i: int, j: int) -> np.ndarray:
    n = num_qubits(s)
    _check_qubit(n, i)
    _check_qubit(n, j)
    if i == j:
        raise ValueError("CZ needs two distinct qubits")
    out = np.array(s, dtype=complex, copy=True)
    view = out.reshape((2,) * n)
    idx = [slice(None)] * n
    idx[i] = idx[j] = 1
    view[tuple(idx)] *= -1
    return out


def apply_pauli_z(s: np.ndarray, i: int) -> np.ndarray:
    n = num_qubits(s)
    _check_qubit(n, i)
    out = np.array(s, dtype=complex, copy=True)
    idx = [slice(None)] * n
    idx[i] = 1
    out.reshape((2,) * n)[tuple(idx)] *= -1
    return out


def apply_pauli_x(s: np.ndarray, i: int) -> np.ndarray:
    n = num_qubits(s)
    _check_qubit(n, i)
    return np.flip(np.asarray(s, dtype=complex).reshape((2,) * n), axis=i).reshape(-1).copy()


def outer_product(s: np.ndarray) -> np.ndarray:
    return np.outer(s, np.conj(s))


def dephase(rho: np.ndarray, i: int, p: float) -> np.ndarray:
    """Apply ``rho -> (1 - p/2) rho + (p/2) Z_i rho Z_i`` on qubit ``i``.

    The Kraus pair ``{sqrt(1-p/2) I, sqrt(p/2) Z_i}`` leaves the blocks that
    are diagonal in qubit ``i`` untouched and scales the two off-diagonal
    blocks by ``1 - p``; that closed form is what gets evaluated.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"dephasing probability {p} outside [0, 1]")
    n = num_qubits(rho)
    _check_qubit(n, i)
    out = np.array(rho, dtype=complex, copy=True)
    left, right = 1 << i, 1 << (n - 1 - i)
    view = out.reshape(left, 2, right, left, 2, right)
    view[:, 0, :, :, 1, :] *= 1.0 - p
    view[:, 1, :, :, 0, :] *= 1.0 - p
    return out


def cz_signs(n: int, edges: Iterable[tuple[int, int]]) -> np.ndarray:
    """Diagonal of the product of CZ gates over ``edges``, as +-1 floats."""
    parity = np.zeros(1 << n, dtype=np.int64)
    for i, j in edges:
        _check_qubit(n, i)
        _check_qubit(n, j)
        parity ^= _bit(n, i) & _bit(n, j)
    return 1.0 - 2.0 * parity


def conjugate_cz(rho: np.ndarray, i: int, j: int) -> np.ndarray:
    """``CZ_ij rho CZ_ij``."""
    n = num_qubits(rho)
    if i == j:
        raise ValueError("CZ needs two distinct qubits")
    s = cz_signs(n, [(i, j)])
    return rho * s[:, None] * s[None, :]


def partial_transpose(rho: np.ndarray, subset: Iterable[int]) -> np.ndarray:
    n = num_qubits(rho)
    subset = sorted(set(int(k) for k in subset))
    for k in subset:
        _check_qubit(n, k)
    if not subset:
        return np.array(rho, copy=True)
    axes = list(range(2 * n))
    for k in subset:
        axes[k], axes[n + k] = n + k, k
    dim = 1 << n
    return np.ascontiguousarray(rho.reshape((2,) * (2 * n)).transpose(axes)).reshape(dim, dim)


def partial_trace(rho: np.ndarray, keep: Iterable[int]) -> np.ndarray:
    """Trace out every qubit not in ``keep``; kept qubits retain their order."""
    n = num_qubits(rho)
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise ValueError("keep set must be non-empty")
    for k in keep:
        _check_qubit(n, k)
    t = rho.reshape((2,) * (2 * n))
    # trace the highest-index qubits first so lower axis numbers stay valid
    m = n
    for k in reversed(range(n)):
        if k not in keep:
            t = np.trace(t, axis1=k, axis2=k + m)
            m -= 1
    dim = 1 << len(keep)
    return t.reshape(dim, dim)


def hermitian_eigenvalues(m: np.ndarray, method: str = "auto") -> np.ndarray:
    """All eigenvalues of a Hermitian matrix, ascending.

    ``method`` is ``"householder"`` (in-house tridiagonal QL), ``"jacobi"``
    (cyclic Jacobi, intended for dimension <= 64), ``"lapack"`` or
    ``"auto"``, which uses Householder/QL up to dimension 256 and LAPACK's
    eigenvalue-only driver above that. Real input takes the real symmetric
    path.
    """
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("expected a square matrix")
    dev = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
    if dev > HERMITIAN_TOL:
        raise ValueError(f"matrix is not Hermitian (max deviation {dev:.3g})")
    if np.iscomplexobj(m) and not np.any(m.imag):
        m = m.real
    m = (m + m.conj().T) / 2
    dim = m.shape[0]
    if method == "auto":
        method = "householder" if dim <= _HOUSEHOLDER_MAX_DIM else "lapack"
    if method == "householder":
        return householder_ql_eigenvalues(m)
    if method == "jacobi":
        return jacobi_eigenvalues(m)
    if method == "lapack":
        return np.linalg.eigvalsh(m)
    raise ValueError(f"unknown eigenvalue method {method!r}")


def trace_distance(a: np.ndarray, b: np.ndarray) -> float:
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return 0.5 * float(np.sum(np.abs(hermitian_eigenvalues(a - b))))
