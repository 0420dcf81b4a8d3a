"""Trine states, the double-trine ensemble and pure-state concurrence.

Sign pattern: ``trine_state(i) = U**i |0>`` with ``U = exp(-i pi/3 sigma_y)``
gives the real vectors ``cos(i pi/3)|0> + sin(i pi/3)|1>``, i.e.

    s_0 = (1, 0),  s_1 = (1/2, sqrt(3)/2),  s_2 = (-1/2, sqrt(3)/2)

so ``<s_0|s_1> = <s_1|s_2> = 1/2`` and ``<s_0|s_2> = -1/2``.  Only the
squared overlaps (all 1/4) enter any error probability.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .linalg import as_ket, as_operator, det2, dagger, ket_tensor, projector

SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_YY = np.kron(SIGMA_Y, SIGMA_Y)


@dataclass(frozen=True)
class WeightedEnsemble:
    """Pure states with prior probabilities; ``states[k]`` has prior ``priors[k]``."""

    priors: np.ndarray
    states: tuple = field(default_factory=tuple)

    def __post_init__(self):
        priors = np.asarray(self.priors, dtype=float).reshape(-1)
        states = tuple(as_ket(s) for s in self.states)
        if len(states) != priors.shape[0]:
            raise ValueError("need exactly one prior per state")
        if len({s.shape[0] for s in states}) > 1:
            raise ValueError("all states must share one dimension")
        for k, v in enumerate(states):
            if abs(np.linalg.norm(v) - 1.0) > 1e-12:
                raise ValueError(f"state {k} has norm {np.linalg.norm(v)}, expected 1")
        if np.any(priors < 0) or abs(priors.sum() - 1.0) > 1e-12:
            raise ValueError(f"priors must be non-negative and sum to 1, got {priors}")
        object.__setattr__(self, "priors", priors)
        object.__setattr__(self, "states", states)

    def __len__(self) -> int:
        return len(self.states)

    @property
    def dim(self) -> int:
        return self.states[0].shape[0]

    def items(self):
        return list(zip(self.priors, self.states))

    def density(self) -> np.ndarray:
        return sum(p * projector(s) for p, s in self.items())


def _check_index(i: int) -> None:
    if i not in (0, 1, 2):
        raise ValueError(f"trine index must be 0, 1 or 2, got {i!r}")


@lru_cache(maxsize=None)
def rotation_u() -> np.ndarray:
    """``exp(-i pi/3 sigma_y)``, a real rotation by pi/3."""
    c, s = np.cos(np.pi / 3), np.sin(np.pi / 3)
    return np.array([[c, -s], [s, c]], dtype=complex)


def rotation_power(i: int) -> np.ndarray:
    return np.linalg.matrix_power(rotation_u(), i)


def trine_state(i: int) -> np.ndarray:
    _check_index(i)
    return np.array([np.cos(i * np.pi / 3), np.sin(i * np.pi / 3)], dtype=complex)


def trine_perp(i: int) -> np.ndarray:
    """``U**i |1>``, orthogonal to ``trine_state(i)``."""
    _check_index(i)
    return np.array([-np.sin(i * np.pi / 3), np.cos(i * np.pi / 3)], dtype=complex)


def double_trine() -> WeightedEnsemble:
    states = tuple(ket_tensor(trine_state(i), trine_state(i)) for i in range(3))
    return WeightedEnsemble(np.full(3, 1 / 3), states)


def singlet() -> np.ndarray:
    r = 1 / np.sqrt(2)
    return np.array([0, r, -r, 0], dtype=complex)


def pgm_basis_F(i: int) -> np.ndarray:
    """Normalized ``(U**i x U**i)[(sqrt2 + 1)|00> - (sqrt2 - 1)|11>]``."""
    _check_index(i)
    r2 = np.sqrt(2)
    f0 = np.array([r2 + 1, 0, 0, -(r2 - 1)], dtype=complex) / np.sqrt(6)
    u = rotation_power(i)
    return np.kron(u, u) @ f0


def concurrence(v) -> float:
    """``|<v*| sigma_y x sigma_y |v>|`` for a normalized two-qubit ket."""
    v = as_ket(v, dims=(4,))
    norm = np.linalg.norm(v)
    if abs(norm - 1) > 1e-9:
        raise ValueError(f"concurrence needs a unit vector, got norm {norm}")
    return float(abs(v @ _YY @ v))


def filtered_concurrence(m, n, v) -> float:
    """Concurrence of the normalized state ``(M x N)|v>``.

    Uses ``C(v) |det M| |det N| / <v|M^dag M x N^dag N|v>``, which avoids
    forming the filtered vector.
    """
    m = as_operator(m, dims=(2,))
    n = as_operator(n, dims=(2,))
    v = as_ket(v, dims=(4,))
    weight = np.vdot(v, np.kron(dagger(m) @ m, dagger(n) @ n) @ v).real
    if weight <= 1e-14:
        raise ValueError("filter annihilates the state")
    return concurrence(v) * abs(det2(m)) * abs(det2(n)) / weight
