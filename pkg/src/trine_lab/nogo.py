"""Certificates that no product halting operator satisfies all three conditions.

A halting operator ``E`` is written in the orthonormal basis
``{|Psi->, |F_0>, |F_1>, |F_2>}`` as

    s|Psi-><Psi-| + sum_i a_i |F_i><F_i| + (b_i |Psi-><F_i| + h.c.)

with no ``|F_i><F_j|`` cross terms.  The conditions are
(i) ``sum_i a_i = 1``, (ii) ``a_0 = chi`` and (iii) the filtered states
``E^{1/2}|F_i>`` are perfectly distinguishable by separable operations.

Commutator convention (verified by direct symbolic expansion): with
``gamma_01 = <0|_A E |1>_A`` and ``gamma_10 = <1|_A E |0>_A``,

    <0|[gamma_01, gamma_10]|0> = -1/4 [2 (Im(b_1 - b_2))^2 + (s + a_0 - 2/3)(s - 1/3)]

The coefficients ``b_1, b_2`` are the ones attached to ``F_1`` and
``F_2``.  The squared term carries coefficient 2; evaluated with
``imag_coefficient=REJECTED_IMAG_COEFFICIENT`` (6) the closed form is
proportional to the residual only when ``Im b_1 = Im b_2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .linalg import (
    adjugate,
    as_operator,
    det4,
    eig_hermitian,
    partial_contract_A,
    spectral_function,
)
from .optimize import golden_section, grid
from .states import concurrence, pgm_basis_F, singlet

IMAG_COEFFICIENT = 2.0
REJECTED_IMAG_COEFFICIENT = 6.0
SWEEP_TOL = 1e-6


@dataclass(frozen=True)
class HaltingOperator:
    s: float
    a: tuple
    b: tuple = (0j, 0j, 0j)

    def __post_init__(self):
        a = tuple(float(x) for x in self.a)
        b = tuple(complex(x) for x in self.b)
        if len(a) != 3 or len(b) != 3:
            raise ValueError("need three a and three b coefficients")
        if self.s < 0 or min(a) < 0:
            raise ValueError("s and a_i must be non-negative")
        if abs(sum(a) - 1.0) > 1e-12:
            raise ValueError(f"a_i must sum to 1, got {sum(a)}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)


@lru_cache(maxsize=None)
def _basis() -> np.ndarray:
    """Columns ``Psi-, F_0, F_1, F_2``."""
    return np.column_stack([singlet()] + [pgm_basis_F(i) for i in range(3)])


def build_E(h: HaltingOperator) -> np.ndarray:
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = h.s
    for i in range(3):
        m[i + 1, i + 1] = h.a[i]
        m[0, i + 1] = h.b[i]
        m[i + 1, 0] = np.conj(h.b[i])
    w = _basis()
    return w @ m @ w.conj().T


def basis_coefficients(e) -> np.ndarray:
    """Matrix of ``e`` in the ``{Psi-, F_0, F_1, F_2}`` basis."""
    w = _basis()
    return w.conj().T @ as_operator(e, dims=(4,)) @ w


def read_halting_operator(e) -> HaltingOperator:
    m = basis_coefficients(e)
    return HaltingOperator(float(m[0, 0].real), tuple(np.real(np.diag(m)[1:])), tuple(m[0, 1:]))


def commutator_residual(e) -> complex:
    """``<0|[gamma_01, gamma_10]|0>`` with Alice-side partial contractions."""
    g01 = partial_contract_A(e, 0, 1)
    g10 = partial_contract_A(e, 1, 0)
    return complex((g01 @ g10 - g10 @ g01)[0, 0])


def commutator_closed_form(h: HaltingOperator, imag_coefficient: float = IMAG_COEFFICIENT) -> float:
    """``c (Im(b_1 - b_2))^2 + (s + a_0 - 2/3)(s - 1/3)``."""
    im = (h.b[1] - h.b[2]).imag
    return imag_coefficient * im**2 + (h.s + h.a[0] - 2 / 3) * (h.s - 1 / 3)


@lru_cache(maxsize=None)
def commutator_scale() -> float:
    """Proportionality constant, fixed from a single reference evaluation."""
    ref = HaltingOperator(0.05, (0.5, 0.3, 0.2), (0.1 + 0.2j, -0.3 + 0.4j, 0.2 - 0.1j))
    return commutator_residual(build_E(ref)).real / commutator_closed_form(ref)


def transformed_states(e) -> list[np.ndarray]:
    """``E^{1/2}|F_i> / sqrt(<F_i|E|F_i>)``."""
    e = as_operator(e, dims=(4,))
    if eig_hermitian(e).values[0] < -1e-10:
        raise ValueError("E must be positive semidefinite")
    root = spectral_function(e, lambda lam: math.sqrt(max(lam, 0.0)))
    out = []
    for i in range(3):
        f = pgm_basis_F(i)
        weight = np.vdot(f, e @ f).real
        if weight <= 1e-12:
            raise ValueError(f"E annihilates F_{i}")
        out.append(root @ f / math.sqrt(weight))
    return out


def transformed_singlet(e) -> np.ndarray:
    e = as_operator(e, dims=(4,))
    if eig_hermitian(e).values[0] <= 1e-10:
        raise ValueError("E must be positive definite")
    inv_root = spectral_function(e, lambda lam: lam ** -0.5)
    v = inv_root @ singlet()
    return v / np.linalg.norm(v)


def duan_gap(e) -> float:
    """``C(Psi') - sum_i C(F'_i)``; zero is required for separable perfect discrimination."""
    psi = transformed_singlet(e)
    return concurrence(psi) - sum(concurrence(f) for f in transformed_states(e))


def duan_gap_adjugate(e) -> float:
    """Same gap for a full-rank product ``E = A x B`` via determinants only.

    Filtered concurrences give ``C(F'_i) = C(F_i) det(E)^{1/4} / <F_i|E|F_i>``
    and ``C(Psi') = det(E)^{3/4} / <Psi-|Adj(E)|Psi->``.
    """
    e = as_operator(e, dims=(4,))
    det = det4(e).real
    if det <= 0:
        raise ValueError("E must be full rank")
    psi = singlet()
    c_psi = det**0.75 / np.vdot(psi, adjugate(e) @ psi).real
    c_f = sum(
        concurrence(pgm_basis_F(i)) * det**0.25 / np.vdot(pgm_basis_F(i), e @ pgm_basis_F(i)).real
        for i in range(3)
    )
    return float(c_psi - c_f)


def concurrence_condition_ratio(e) -> float:
    """``sum_i C(F'_i) / C(Psi')``; condition (iii) needs this to equal 1."""
    e = as_operator(e, dims=(4,))
    det = det4(e).real
    psi = singlet()
    adj = np.vdot(psi, adjugate(e) @ psi).real
    return sum(
        adj / (3 * math.sqrt(det) * np.vdot(pgm_basis_F(i), e @ pgm_basis_F(i)).real)
        for i in range(3)
    )


def adjugate_identity_residual(e) -> float:
    """Relative gap between ``<Psi-|Adj(E)|Psi->`` and ``prod_i <F_i|E|F_i>``.

    Zero whenever ``E`` has no ``F_i``-``F_j`` cross terms.
    """
    e = as_operator(e, dims=(4,))
    psi = singlet()
    lhs = np.vdot(psi, adjugate(e) @ psi)
    rhs = np.prod([np.vdot(pgm_basis_F(i), e @ pgm_basis_F(i)) for i in range(3)])
    return float(abs(lhs - rhs) / max(abs(lhs), abs(rhs)))


def hadamard_lower_bound(a0: float, a1: float, a2: float, s_max: float = 1 / 3) -> float:
    """Lower bound on the concurrence ratio from ``det E <= s_max a0 a1 a2``."""
    a = (a0, a1, a2)
    if min(a) <= 0:
        raise ValueError("all a_i must be positive")
    if abs(sum(a) - 1.0) > 1e-12:
        raise ValueError("a_i must sum to 1")
    return (a0 * a1 + a0 * a2 + a1 * a2) / (3 * math.sqrt(s_max * a0 * a1 * a2))


def sep_rhs_bound(a0: float, a1: float, a2: float) -> float:
    return hadamard_lower_bound(a0, a1, a2, 1 / 3)


def simplex_grid(step: float, include_center: bool = True) -> np.ndarray:
    """Interior points of the probability simplex on a lattice of spacing ``step``."""
    n = int(round(1 / step))
    pts = [(i / n, j / n, (n - i - j) / n) for i in range(1, n) for j in range(1, n - i)]
    if include_center:
        pts.append((1 / 3, 1 / 3, 1 / 3))
    return np.array(pts)


def max_commuting_s(chi: float) -> float:
    """Largest ``s >= 0`` for which the commutator constraint can vanish at ``a_0 = chi``.

    The squared imaginary term is non-negative, so a zero needs
    ``(s + chi - 2/3)(s - 1/3) <= 0``.
    """
    return max(1 / 3, 2 / 3 - chi)


@dataclass(frozen=True)
class NogoReport:
    """Outcome of both certificates at one value of ``chi``.

    ``full_rank_range`` marks ``chi < 1/2``, where condition (iii) forces
    ``E`` to be full rank; ``contradiction`` requires both certificates.
    """

    chi: float
    s_max: float
    min_ratio_bound: float
    closed_form_contradiction: bool
    full_rank_range: bool
    sweep_samples: int
    sweep_min_violation: float
    sweep_witness: bool
    contradiction: bool


def _min_bound_at(chi: float, s_max: float) -> float:
    rest = 1 - chi
    if rest <= 0:
        return math.inf
    lo, hi = rest * 1e-9, rest * (1 - 1e-9)
    pts = grid(lo, hi, rest / 200)
    vals = [hadamard_lower_bound(chi, x, rest - x, s_max) for x in pts]
    k = int(np.argmin(vals))
    _, best = golden_section(
        lambda x: hadamard_lower_bound(chi, x, rest - x, s_max),
        pts[max(k - 1, 0)], pts[min(k + 1, len(pts) - 1)],
    )
    return min(best, vals[k])


def _random_psd(rng) -> np.ndarray:
    g = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    a = g.conj().T @ g
    return 0.5 * (a + a.conj().T)


def _inv2(m: np.ndarray, det: np.ndarray) -> np.ndarray:
    out = np.empty_like(m)
    out[:, 0, 0] = m[:, 1, 1]
    out[:, 1, 1] = m[:, 0, 0]
    out[:, 0, 1] = -m[:, 0, 1]
    out[:, 1, 0] = -m[:, 1, 0]
    return out / det[:, None, None]


def product_sweep(samples: int = 10_000, seed: int = 42):
    """Per-sample features of random product operators ``A x B``, normalized by (i).

    Sample ``k`` draws from ``default_rng([seed, k])``.  Returns arrays
    ``(chi_values, off_diagonal, duan_gaps)``.
    """
    fs = np.column_stack([pgm_basis_F(i) for i in range(3)])
    psi = singlet()
    c_f = np.array([concurrence(pgm_basis_F(i)) for i in range(3)])
    a = np.empty((samples, 2, 2), dtype=complex)
    b = np.empty((samples, 2, 2), dtype=complex)
    for k in range(samples):
        rng = np.random.default_rng([seed, k])
        a[k] = _random_psd(rng)
        b[k] = _random_psd(rng)
    e = np.einsum("kij,kab->kiajb", a, b).reshape(samples, 4, 4)
    fe = np.einsum("ai,kab,bj->kij", fs.conj(), e, fs)
    diag = np.real(np.einsum("kii->ki", fe))
    norm = diag.sum(axis=1)
    chi = diag[:, 0] / norm
    off = np.max(np.abs(fe - np.einsum("ki,ij->kij", diag, np.eye(3))), axis=(1, 2)) / norm
    det_a = np.real(a[:, 0, 0] * a[:, 1, 1] - a[:, 0, 1] * a[:, 1, 0])
    det_b = np.real(b[:, 0, 0] * b[:, 1, 1] - b[:, 0, 1] * b[:, 1, 0])
    inv_a = _inv2(a, det_a)
    inv_b = _inv2(b, det_b)
    e_inv = np.einsum("kij,kab->kiajb", inv_a, inv_b).reshape(samples, 4, 4)
    psi_inv = np.real(np.einsum("i,kij,j->k", psi.conj(), e_inv, psi))
    root = np.sqrt(det_a * det_b)
    gaps = 1 / (root * psi_inv) - np.sum(c_f[None, :] * root[:, None] / diag, axis=1)
    return chi, off, gaps


def nogo_certificate(chi_grid, samples: int = 10_000, seed: int = 42,
                     tol: float = SWEEP_TOL) -> list[NogoReport]:
    """Closed-form and sampled evidence that conditions (i)-(iii) are incompatible."""
    chis = [float(c) for c in chi_grid]
    for c in chis:
        if not (1 / 3 + 1e-6 < c <= 1.0):
            raise ValueError(f"chi={c} must lie in (1/3, 1]")
    chi_s, off, gaps = product_sweep(samples, seed)
    reports = []
    for chi in chis:
        s_max = max_commuting_s(chi)
        bound = float(_min_bound_at(chi, s_max))
        closed = bool(bound > 1.0 + 1e-12)
        violation = np.maximum(np.maximum(np.abs(chi_s - chi), off), np.abs(gaps))
        min_violation = float(violation.min())
        witness = bool(min_violation > tol)
        reports.append(
            NogoReport(
                chi=chi,
                s_max=s_max,
                min_ratio_bound=bound,
                closed_form_contradiction=closed,
                full_rank_range=chi < 0.5,
                sweep_samples=samples,
                sweep_min_violation=min_violation,
                sweep_witness=witness,
                contradiction=closed and witness,
            )
        )
    return reports
