"""Partial transpose, product detection and the separable optimal POVM."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .discrimination import Povm
from .linalg import as_ket, as_operator, eig_hermitian, projector
from .states import pgm_basis_F, singlet

PPT_TOL = 1e-10
PRODUCT_TOL = 1e-9


@dataclass(frozen=True)
class SeparabilityReport:
    is_ppt: bool
    min_pt_eigenvalue: float
    is_product: bool
    product_factors: tuple | None = None


def partial_transpose_B(m) -> np.ndarray:
    m = as_operator(m, dims=(4,))
    return m.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)


def realign(m) -> np.ndarray:
    """``R[(iA jA), (iB jB)] = M[(iA iB), (jA jB)]``; rank one iff ``M`` is a product."""
    m = as_operator(m, dims=(4,))
    return m.reshape(2, 2, 2, 2).transpose(0, 2, 1, 3).reshape(4, 4)


def _rank_one_split(r: np.ndarray):
    """Best rank-one approximation ``sigma u v^dag`` of a 2x2 or 4x4 matrix.

    Singular data come from ``eig_hermitian`` of the Gram matrix.  The
    residual ``||R - sigma u v^dag||_F`` is measured directly, since taking
    the square root of a near-zero Gram eigenvalue only resolves the
    second singular value to about 1e-8 of the first.
    """
    values, vectors = eig_hermitian(r @ r.conj().T)
    sigma = float(np.sqrt(max(values[-1], 0.0)))
    if sigma == 0.0:
        return 0.0, 0.0, None, None
    u = vectors[:, -1]
    v = r.conj().T @ u / sigma
    residual = float(np.linalg.norm(r - sigma * np.outer(u, v.conj())))
    return sigma, residual, u, v


def operator_factors(m, tol: float = PRODUCT_TOL):
    """``(A, B)`` with ``A x B = M`` if ``M`` is a product operator, else ``None``."""
    m = as_operator(m, dims=(4,))
    sigma, residual, u, v = _rank_one_split(realign(m))
    if u is None or residual > tol * sigma:
        return None
    a = u.reshape(2, 2)
    b = sigma * v.conj().reshape(2, 2)
    # move the free phase so that a's largest diagonal entry is real positive
    k = int(np.argmax(np.abs(np.diag(a))))
    z = a[k, k] if abs(a[k, k]) > 1e-12 else a.flat[int(np.argmax(np.abs(a)))]
    phase = abs(z) / z
    return a * phase, b / phase


def ket_factors(v, tol: float = PRODUCT_TOL):
    """``(a, b)`` with ``a x b = v`` for a product two-qubit ket, else ``None``."""
    v = as_ket(v, dims=(4,))
    sigma, residual, u, w = _rank_one_split(v.reshape(2, 2))
    if u is None or residual > tol * sigma:
        return None
    return u, sigma * w.conj()


def ppt_separable(m) -> SeparabilityReport:
    """PPT and product tests for a PSD two-qubit operator.

    In 2x2 dimensions PPT of ``m / tr m`` is equivalent to separability.
    """
    m = as_operator(m, dims=(4,))
    tr = np.trace(m).real
    if abs(tr) <= 1e-14:
        raise ValueError("operator has zero trace")
    if eig_hermitian(m).values[0] < -PPT_TOL * max(1.0, tr):
        raise ValueError("operator is not positive semidefinite")
    low = float(eig_hermitian(partial_transpose_B(m / tr)).values[0])
    factors = operator_factors(m)
    return SeparabilityReport(
        is_ppt=low >= -PPT_TOL,
        min_pt_eigenvalue=low,
        is_product=factors is not None,
        product_factors=factors,
    )


def separable_element(i: int) -> np.ndarray:
    """``|F_i><F_i| + 1/3 |Psi-><Psi-|``."""
    return projector(pgm_basis_F(i)) + projector(singlet()) / 3


def separable_pgm() -> Povm:
    return Povm(tuple(separable_element(i) for i in range(3)), np.eye(4, dtype=complex))


def product_decomposition(i: int) -> tuple[np.ndarray, np.ndarray]:
    """Unnormalized ``|F_i> +- sqrt(1/3)|Psi->``, both product states.

    ``separable_element(i) == (|phi+><phi+| + |phi-><phi-|) / 2``.
    """
    f = pgm_basis_F(i)
    psi = singlet()
    c = np.sqrt(1 / 3)
    return f + c * psi, f - c * psi
