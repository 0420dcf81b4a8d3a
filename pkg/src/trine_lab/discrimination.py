"""Minimum-error discrimination: POVMs, error probabilities and optimality."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    as_ket,
    as_operator,
    eig_hermitian,
    hermiticity_residual,
    is_hermitian,
    projector,
    spectral_function,
    support_projector,
    trace_norm,
)
from .states import WeightedEnsemble

PSD_TOL = 1e-10
CLOSURE_TOL = 1e-10
OPTIMALITY_TOL = 1e-9


@dataclass(frozen=True)
class Povm:
    """Ordered measurement operators that sum to ``closure``.

    ``closure`` is the identity for a complete measurement, or the
    projector onto a subspace when the POVM only resolves that subspace.
    Construction does not validate; call :meth:`validate`.
    """

    elements: tuple
    closure: np.ndarray

    def __post_init__(self):
        elements = tuple(as_operator(e) for e in self.elements)
        closure = as_operator(self.closure)
        if any(e.shape != closure.shape for e in elements):
            raise ValueError("POVM elements and closure must share one dimension")
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "closure", closure)

    @classmethod
    def complete(cls, elements) -> "Povm":
        elements = tuple(as_operator(e) for e in elements)
        return cls(elements, np.eye(elements[0].shape[0], dtype=complex))

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def dim(self) -> int:
        return self.closure.shape[0]

    def violations(self) -> list[str]:
        problems = []
        for k, e in enumerate(self.elements):
            if not is_hermitian(e):
                problems.append(f"element {k} not Hermitian ({hermiticity_residual(e):.2e})")
                continue
            low = eig_hermitian(e).values[0]
            if low < -PSD_TOL:
                problems.append(f"element {k} not PSD (min eigenvalue {low:.2e})")
        residual = float(np.max(np.abs(sum(self.elements) - self.closure)))
        if residual > CLOSURE_TOL:
            problems.append(f"elements do not sum to closure (residual {residual:.2e})")
        return problems

    def is_valid(self) -> bool:
        return not self.violations()

    def validate(self) -> "Povm":
        problems = self.violations()
        if problems:
            raise ValueError("invalid POVM: " + "; ".join(problems))
        return self


def error_probability(ensemble: WeightedEnsemble, povm: Povm) -> float:
    """``1 - sum_i p_i <psi_i|Pi_i|psi_i>`` with outcome ``i`` guessing state ``i``."""
    if len(povm) != len(ensemble):
        raise ValueError(f"{len(povm)} POVM elements for {len(ensemble)} states")
    if povm.dim != ensemble.dim:
        raise ValueError("POVM and ensemble dimensions differ")
    success = sum(p * np.vdot(s, e @ s).real for (p, s), e in zip(ensemble.items(), povm.elements))
    return float(1.0 - success)


def helstrom_binary(rho, sigma) -> float:
    """Minimum error for two weighted states with ``tr rho + tr sigma = 1``."""
    rho = as_operator(rho)
    sigma = as_operator(sigma)
    total = np.trace(rho).real + np.trace(sigma).real
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"weighted states must have total trace 1, got {total}")
    return 0.5 - 0.5 * trace_norm(rho - sigma)


def _pure_pair_overlap(u, v) -> float:
    return float(abs(np.vdot(u, v)) ** 2)


def lemma1_delta(p, psi) -> np.ndarray:
    p0, p1, p2 = p
    return p0 * projector(psi[0]) - p1 * projector(psi[1]) - p2 * projector(psi[2])


def lemma1_min_error(p0, p1, p2, psi0, psi1, psi2) -> float:
    """Closed-form error for ``p0|psi0><psi0|`` against ``p1|psi1><psi1| + p2|psi2><psi2|``.

    The two branches agree at ``det(Delta) = 0``, so the sign test needs no
    special tolerance.
    """
    p = np.array([p0, p1, p2], dtype=float)
    if np.any(p < 0) or abs(p.sum() - 1.0) > 1e-12:
        raise ValueError(f"invalid probability vector {p}")
    psi = [as_ket(v, dims=(2,)) for v in (psi0, psi1, psi2)]
    o01 = _pure_pair_overlap(psi[0], psi[1])
    o02 = _pure_pair_overlap(psi[0], psi[2])
    o12 = _pure_pair_overlap(psi[1], psi[2])
    det_delta = p1 * p2 * (1 - o12) - p0 * p1 * (1 - o01) - p0 * p2 * (1 - o02)
    if det_delta <= 0:
        radicand = 1 - 4 * p1 * p2 * (1 - o12) - 4 * p0 * (p1 * o01 + p2 * o02)
        return float(0.5 - 0.5 * np.sqrt(max(radicand, 0.0)))
    return float(0.5 - 0.5 * abs(p0 - p1 - p2))


def lemma1_det_delta(p0, p1, p2, psi0, psi1, psi2) -> float:
    o01 = _pure_pair_overlap(psi0, psi1)
    o02 = _pure_pair_overlap(psi0, psi2)
    o12 = _pure_pair_overlap(psi1, psi2)
    return float(p1 * p2 * (1 - o12) - p0 * p1 * (1 - o01) - p0 * p2 * (1 - o02))


def pgm(ensemble: WeightedEnsemble, support_tol: float = 1e-12) -> Povm:
    """Pretty good measurement ``p_i rho^{-1/2}|psi_i><psi_i|rho^{-1/2}``.

    The inverse square root is taken on the support of ``rho`` and the
    returned POVM closes to the support projector.
    """
    rho = ensemble.density()
    inv_sqrt = spectral_function(rho, lambda lam: lam ** -0.5, support_tol=support_tol)
    elements = [p * inv_sqrt @ projector(s) @ inv_sqrt for p, s in ensemble.items()]
    # exact Hermitian symmetrization; rounding breaks it at the 1e-17 level
    elements = [0.5 * (e + e.conj().T) for e in elements]
    return Povm(tuple(elements), support_projector(rho, support_tol))


@dataclass(frozen=True)
class OptimalityReport:
    is_optimal: bool
    min_eigenvalue_margin: float
    hermiticity_residual: float


def holevo_optimality_check(ensemble: WeightedEnsemble, povm: Povm,
                            tol: float = OPTIMALITY_TOL) -> OptimalityReport:
    """Check ``Lambda`` is Hermitian and ``Lambda >= p_j|psi_j><psi_j|`` for all j."""
    if len(povm) != len(ensemble):
        raise ValueError(f"{len(povm)} POVM elements for {len(ensemble)} states")
    lam = sum(p * e @ projector(s) for (p, s), e in zip(ensemble.items(), povm.elements))
    residual = hermiticity_residual(lam)
    lam_h = 0.5 * (lam + lam.conj().T)
    margin = min(
        eig_hermitian(lam_h - p * projector(s)).values[0] for p, s in ensemble.items()
    )
    return OptimalityReport(
        is_optimal=bool(residual <= tol and margin >= -tol),
        min_eigenvalue_margin=float(margin),
        hermiticity_residual=residual,
    )


def gram_matrix(states) -> np.ndarray:
    return np.array([[np.vdot(u, v) for v in states] for u in states])


def span_projector(states) -> np.ndarray:
    """Orthogonal projector onto the span of ``states``."""
    a = np.column_stack(states)
    return a @ np.linalg.inv(gram_matrix(states)) @ a.conj().T


def extract_optimal_basis(ensemble: WeightedEnsemble, povm: Povm) -> list[np.ndarray]:
    """Orthonormal basis perfectly resolved by every optimal POVM.

    With ``P_S`` the projector onto the span of the (linearly independent)
    states and ``hat Pi_i = P_S Pi_i P_S``, the basis vectors are
    ``hat Pi_i |psi_i>`` normalized.
    """
    states = list(ensemble.states)
    g = gram_matrix(states)
    if abs(np.linalg.det(g)) <= 1e-10:
        raise ValueError("ensemble states are not linearly independent")
    report = holevo_optimality_check(ensemble, povm)
    if not report.is_optimal:
        raise ValueError(f"POVM is not optimal (margin {report.min_eigenvalue_margin:.2e})")
    ps = span_projector(states)
    basis = []
    for k, (s, e) in enumerate(zip(states, povm.elements)):
        w = ps @ e @ ps @ s
        norm = np.linalg.norm(w)
        if norm <= 1e-12:
            raise ValueError(f"compressed element {k} annihilates its state")
        basis.append(w / norm)
    overlaps = gram_matrix(basis)
    if np.max(np.abs(overlaps - np.eye(len(basis)))) > 1e-9:
        raise ValueError("extracted vectors are not orthonormal")
    return basis


def povm_distance(p: Povm, q: Povm) -> float:
    """``1/2 sum_i ||P_i - Q_i||_1``."""
    if len(p) != len(q) or p.dim != q.dim:
        raise ValueError("POVMs must have matching element count and dimension")
    return 0.5 * sum(trace_norm(a - b) for a, b in zip(p.elements, q.elements))
