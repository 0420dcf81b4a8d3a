"""Dense complex linear algebra for one- and two-qubit operators.

Everything here works on plain ``numpy`` arrays of shape ``(2, 2)`` or
``(4, 4)`` (operators) and ``(2,)`` or ``(4,)`` (kets).  Two-qubit indices
are row-major with Alice's qubit as the major index, so basis index
``2 * i_A + i_B`` labels ``|i_A i_B>``.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

HERMITIAN_TOL = 1e-12
JACOBI_TOL = 1e-13
_MAX_SWEEPS = 60


class EigenPair(NamedTuple):
    """Ascending eigenvalues and the matching orthonormal eigenvectors.

    ``vectors[:, k]`` is the eigenvector for ``values[k]``.
    """

    values: np.ndarray
    vectors: np.ndarray


def as_operator(m, dims=(2, 4)) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in dims:
        raise ValueError(f"expected a square operator of dimension {dims}, got shape {m.shape}")
    return m


def as_ket(v, dims=(2, 4)) -> np.ndarray:
    v = np.asarray(v, dtype=complex).reshape(-1)
    if v.shape[0] not in dims:
        raise ValueError(f"expected a ket of dimension {dims}, got length {v.shape[0]}")
    return v


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(m).T


def projector(v) -> np.ndarray:
    """Rank-one operator ``|v><v|``."""
    v = np.asarray(v, dtype=complex).reshape(-1)
    return np.outer(v, np.conj(v))


def hermiticity_residual(m) -> float:
    m = np.asarray(m, dtype=complex)
    return float(np.max(np.abs(m - dagger(m))))


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    """Entrywise test ``max|M - M^dag| <= tol * max(1, max|M|)``."""
    m = np.asarray(m, dtype=complex)
    scale = max(1.0, float(np.max(np.abs(m))))
    return hermiticity_residual(m) <= tol * scale


def _require_hermitian(m: np.ndarray) -> None:
    if not is_hermitian(m):
        raise ValueError(
            f"operator is not Hermitian (residual {hermiticity_residual(m):.3e})"
        )


def tensor(a, b) -> np.ndarray:
    """Kronecker product of two single-qubit operators."""
    a = as_operator(a, dims=(2,))
    b = as_operator(b, dims=(2,))
    return np.kron(a, b)


def ket_tensor(a, b) -> np.ndarray:
    return np.kron(as_ket(a, dims=(2,)), as_ket(b, dims=(2,)))


def _phase_fix(v: np.ndarray) -> np.ndarray:
    # first non-negligible component made real positive
    for z in v:
        if abs(z) > 1e-12:
            return v * (abs(z) / z)
    return v


def _eig2(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    a = m[0, 0].real
    d = m[1, 1].real
    b = m[0, 1]
    # (a+d)^2 - 4 det M rewritten as (a-d)^2 + 4|b|^2 to avoid cancellation
    root = math.sqrt((a - d) ** 2 + 4.0 * abs(b) ** 2)
    lam_lo = 0.5 * (a + d - root)
    lam_hi = 0.5 * (a + d + root)
    if abs(b) <= 1e-300:
        if a <= d:
            vecs = np.eye(2, dtype=complex)
        else:
            vecs = np.array([[0, 1], [1, 0]], dtype=complex)
        return np.array([lam_lo, lam_hi]), vecs
    cols = []
    for lam in (lam_lo, lam_hi):
        u = np.array([b, lam - a], dtype=complex)
        w = np.array([lam - d, np.conj(b)], dtype=complex)
        v = u if np.linalg.norm(u) >= np.linalg.norm(w) else w
        cols.append(v / np.linalg.norm(v))
    return np.array([lam_lo, lam_hi]), np.column_stack(cols)


def _jacobi(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    a = m.copy()
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = max(1.0, float(np.linalg.norm(a)))
    for _ in range(_MAX_SWEEPS):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off <= JACOBI_TOL * scale:
            return np.diag(a).real.copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r < 1e-300:
                    continue
                phase = apq / r
                theta = (a[q, q].real - a[p, p].real) / (2.0 * r)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # J = diag(1, conj(phase)) on (p, q) followed by a real rotation
                jpp, jpq = c, s
                jqp, jqq = -s * np.conj(phase), c * np.conj(phase)
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = col_p * jpp + col_q * jqp
                a[:, q] = col_p * jpq + col_q * jqq
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = np.conj(jpp) * row_p + np.conj(jqp) * row_q
                a[q, :] = np.conj(jpq) * row_p + np.conj(jqq) * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = vp * jpp + vq * jqp
                v[:, q] = vp * jpq + vq * jqq
    raise RuntimeError("Jacobi eigensolver failed to converge")


def eig_hermitian(m) -> EigenPair:
    """Eigendecomposition of a 2x2 or 4x4 Hermitian matrix.

    The 2x2 case uses the closed-form roots of the characteristic
    polynomial; the 4x4 case runs cyclic complex Jacobi rotations until
    the off-diagonal Frobenius norm drops below ``1e-13`` (relative to
    ``max(1, ||M||_F)``).

    Eigenvalues are returned ascending.  Each eigenvector is phase-fixed
    so its first non-negligible component is real positive; equal
    eigenvalues are ordered by the argument of the first component in
    which their eigenvectors differ.
    """
    m = as_operator(m)
    _require_hermitian(m)
    h = 0.5 * (m + dagger(m))
    if h.shape[0] == 2:
        values, vectors = _eig2(h)
    else:
        values, vectors = _jacobi(h)
    vectors = np.column_stack([_phase_fix(vectors[:, k]) for k in range(vectors.shape[1])])
    order = _resolve_ties(values, vectors, sorted(range(len(values)), key=lambda k: values[k]))
    return EigenPair(np.asarray(values)[order].copy(), vectors[:, order].copy())


def _resolve_ties(values, vectors, order, tol: float = 1e-10):
    # stable pass: within a run of equal eigenvalues, order by the argument of
    # the first component where two eigenvectors differ
    out = list(order)
    i = 0
    while i < len(out):
        j = i + 1
        while j < len(out) and abs(values[out[j]] - values[out[i]]) <= tol * max(1.0, abs(values[out[i]])):
            j += 1
        if j - i > 1:
            block = out[i:j]

            def key(k, block=block):
                ref = vectors[:, block[0]]
                v = vectors[:, k]
                for idx in range(v.shape[0]):
                    if any(abs(vectors[idx, kk] - ref[idx]) > 1e-9 for kk in block):
                        return (math.atan2(v[idx].imag, v[idx].real), -abs(v[idx]))
                return (0.0, 0.0)

            out[i:j] = sorted(block, key=key)
        i = j
    return out


def spectral_function(m, fn, support_tol: float | None = None) -> np.ndarray:
    """Apply ``fn`` to the eigenvalues of a Hermitian matrix.

    With ``support_tol`` set, eigenvalues ``<= support_tol`` are dropped,
    which gives functions on the support (pseudo-inverse square roots).
    """
    values, vectors = eig_hermitian(m)
    out = np.zeros_like(vectors)
    for lam, k in zip(values, range(len(values))):
        if support_tol is not None and lam <= support_tol:
            continue
        out += fn(lam) * projector(vectors[:, k])
    return out


def support_projector(m, support_tol: float = 1e-12) -> np.ndarray:
    return spectral_function(m, lambda lam: 1.0, support_tol=support_tol)


def trace_norm(m) -> float:
    """Sum of absolute eigenvalues of a Hermitian operator."""
    values, _ = eig_hermitian(m)
    return float(np.sum(np.abs(values)))


def _det3(m: np.ndarray) -> complex:
    return (
        m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
        - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
        + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0])
    )


def adjugate(m) -> np.ndarray:
    """Transposed cofactor matrix of a 4x4 matrix (singular input allowed)."""
    m = as_operator(m, dims=(4,))
    cof = np.empty((4, 4), dtype=complex)
    idx = np.arange(4)
    for i in range(4):
        for j in range(4):
            minor = m[np.ix_(idx[idx != i], idx[idx != j])]
            cof[i, j] = (-1) ** (i + j) * _det3(minor)
    return cof.T


def det4(m) -> complex:
    """Laplace expansion along the first row."""
    m = as_operator(m, dims=(4,))
    adj = adjugate(m)
    return complex(np.sum(m[0, :] * adj[:, 0]))


def det2(m) -> complex:
    m = as_operator(m, dims=(2,))
    return complex(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])


def partial_contract_A(e, i: int, j: int) -> np.ndarray:
    """Block ``<i|_A E |j>_A`` of a two-qubit operator, acting on Bob's qubit."""
    e = as_operator(e, dims=(4,))
    if i not in (0, 1) or j not in (0, 1):
        raise ValueError(f"basis indices must be 0 or 1, got ({i}, {j})")
    return e[2 * i : 2 * i + 2, 2 * j : 2 * j + 2].copy()
