"""One-way and two-way LOCC discrimination of the double trine.

Conventions worth knowing:

* :func:`bob_posterior` evaluates the closed form with angles ``2 pi k/3``.
  Those vectors are ``s_0, -s_2, -s_1`` in the labelling of
  :func:`trine_state`, so the posterior's labels 1 and 2 are swapped
  relative to ``|<eta|s_k>|^2``.  Every error probability here is
  symmetric under that swap.
* The two-way branch error is a *joint* probability: the Helstrom
  expression for the ``(A_0, B_+)`` branch is a conditional error and is
  weighted by ``P(A_0, B_+) = 1/6`` before the six-fold symmetry factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .discrimination import Povm, lemma1_det_delta, lemma1_min_error
from .linalg import eig_hermitian, projector
from .optimize import golden_section, grid
from .protocol import Leaf, Node
from .states import rotation_power, trine_perp, trine_state

THETA_MIN = -math.pi / 6
THETA_MAX = math.pi / 6
TWO_PI = 2 * math.pi
SQRT3 = math.sqrt(3)

ONE_WAY_OPTIMUM = 0.5 - SQRT3 / 4


class ConsistencyError(RuntimeError):
    """Two closed forms that must agree do not."""


@dataclass(frozen=True)
class AliceDirection:
    """Alice's rank-one outcome ``cos(theta)|0> + e^{i phi} sin(theta)|1>``.

    ``theta`` lies in the closed interval ``[-pi/6, pi/6]``.
    """

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not THETA_MIN - 1e-12 <= self.theta <= THETA_MAX + 1e-12:
            raise ValueError(f"theta={self.theta} outside [-pi/6, pi/6]")
        if not 0.0 <= self.phi < TWO_PI:
            raise ValueError(f"phi={self.phi} outside [0, 2pi)")

    def ket(self) -> np.ndarray:
        return np.array(
            [math.cos(self.theta), np.exp(1j * self.phi) * math.sin(self.theta)],
            dtype=complex,
        )


def _posterior_arrays(theta, phi):
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    ct, st = np.cos(theta), np.sin(theta)
    out = []
    for k in range(3):
        ck, sk = math.cos(2 * math.pi * k / 3), math.sin(2 * math.pi * k / 3)
        # |ck ct + e^{i phi} sk st|^2 expanded in real arithmetic
        out.append(2 / 3 * (ck**2 * ct**2 + sk**2 * st**2 + 2 * ck * sk * ct * st * np.cos(phi)))
    return out


def bob_posterior(d: AliceDirection) -> np.ndarray:
    """Bob's updated priors ``(p_0, p_1, p_2)`` after Alice's outcome."""
    ks = np.arange(3) * 2 * math.pi / 3
    amps = np.cos(ks) * math.cos(d.theta) + np.exp(1j * d.phi) * np.sin(ks) * math.sin(d.theta)
    return 2 / 3 * np.abs(amps) ** 2


def bob_posterior_direct(d: AliceDirection) -> np.ndarray:
    """``|<eta|s_k>|^2 / (3 P(eta))`` from the trine vectors themselves."""
    eta = d.ket()
    overlaps = np.array([abs(np.vdot(eta, trine_state(k))) ** 2 for k in range(3)])
    return overlaps / overlaps.sum()


def _branch_error_forms(theta, phi):
    p0, p1, p2 = _posterior_arrays(theta, phi)
    radicand = 1 - 3 * p1 * p2 - p0 * p1 - p0 * p2
    from_posterior = 0.5 - 0.5 * np.sqrt(np.maximum(radicand, 0.0))
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    bracket = (
        75 + 32 * np.cos(2 * theta) - 7 * np.cos(4 * theta)
        + 18 * np.cos(2 * phi) * np.sin(2 * theta) ** 2
    )
    from_angles = 0.5 - np.sqrt(bracket) / 24
    return from_posterior, from_angles


def one_way_branch_error(d: AliceDirection) -> float:
    """Bob's binary-coarse-grained error on the branch selected by ``d``.

    Computed from the posterior and from the trigonometric closed form;
    a disagreement beyond 1e-10 raises :class:`ConsistencyError`.
    """
    a, b = _branch_error_forms(d.theta, d.phi)
    a, b = float(a), float(b)
    if abs(a - b) > 1e-10:
        raise ConsistencyError(f"branch error forms disagree: {a!r} vs {b!r}")
    return a


def det_delta_closed_form(theta, phi):
    """``det(rho - sigma)`` on Bob's side as a trigonometric polynomial."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    return -(
        3 * (3 + np.cos(2 * phi)) + 32 * np.cos(2 * theta)
        - (13 + 3 * np.cos(2 * phi)) * np.cos(4 * theta)
    ) / 192


def det_delta_direct(d: AliceDirection) -> float:
    p = bob_posterior(d)
    return lemma1_det_delta(*p, trine_state(0), trine_state(1), trine_state(2))


@dataclass(frozen=True)
class OneWayOptimum:
    theta: float
    phi: float
    error: float
    grid_error: float


def _grid_argmin(values: np.ndarray, tie_tol: float = 1e-15) -> int:
    # first grid index (row-major) within tie_tol of the minimum
    low = values.min()
    return int(np.flatnonzero(values.reshape(-1) <= low + tie_tol)[0])


def one_way_optimum(step: float = 1e-3, tol: float = 1e-12) -> OneWayOptimum:
    """Dense (theta, phi) grid followed by coordinate-wise golden sections."""
    thetas = grid(THETA_MIN, THETA_MAX, step)
    phis = grid(0.0, TWO_PI, step)[:-1]
    values = np.empty((thetas.size, phis.size))
    for r, t in enumerate(thetas):
        values[r] = _branch_error_forms(t, phis)[0]
    flat = _grid_argmin(values)
    r, c = divmod(flat, phis.size)
    theta, phi = float(thetas[r]), float(phis[c])
    grid_error = float(values[r, c])

    def err(t, f):
        return float(_branch_error_forms(t, f)[0])

    best = grid_error
    for _ in range(3):
        t, e = golden_section(
            lambda x: err(x, phi), max(THETA_MIN, theta - step), min(THETA_MAX, theta + step), tol
        )
        if e <= best:
            theta, best = t, e
        f, e = golden_section(
            lambda x: err(theta, x), max(0.0, phi - step), min(TWO_PI - 1e-15, phi + step), tol
        )
        if e <= best:
            phi, best = f, e
    error = one_way_branch_error(AliceDirection(theta, phi))
    return OneWayOptimum(theta, phi, error, grid_error)


def elimination_kraus(i: int) -> np.ndarray:
    """Square root of ``2/3 (I - |s_i><s_i|)``."""
    return math.sqrt(2 / 3) * projector(trine_perp(i))


def elimination_povm() -> Povm:
    eye = np.eye(2, dtype=complex)
    return Povm(tuple(2 / 3 * (eye - projector(trine_state(i))) for i in range(3)), eye)


def elimination_posterior(i: int) -> np.ndarray:
    """Posterior over the double trine after elimination outcome ``i``."""
    e = elimination_povm().elements[i]
    w = np.array([np.vdot(trine_state(k), e @ trine_state(k)).real for k in range(3)])
    return w / w.sum()


def elimination_branch_error(i: int) -> float:
    post = elimination_posterior(i)
    j, k = (i + 1) % 3, (i + 2) % 3
    return lemma1_min_error(post[j], post[k], post[i], trine_state(j), trine_state(k), trine_state(i))


def kraus_A(i: int, p: float) -> np.ndarray:
    """``sqrt((1-p)/3)|s_i><s_i| + sqrt((1+p)/3)|s_i^perp><s_i^perp|``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"measurement strength p={p} outside [0, 1]")
    return (
        math.sqrt((1 - p) / 3) * projector(trine_state(i))
        + math.sqrt((1 + p) / 3) * projector(trine_perp(i))
    )


def two_way_conditionals(p):
    """``P(A_0, B_+ | i)`` for i = 0, 1, 2."""
    p = np.asarray(p, dtype=float)
    return (
        (1 - p) / 6,
        (2 + SQRT3) * (2 + p) / 24,
        (2 - SQRT3) * (2 + p) / 24,
    )


def two_way_posteriors(p):
    """Bayes inversion of :func:`two_way_conditionals` under uniform priors."""
    c = np.array(two_way_conditionals(p))
    return c / c.sum(axis=0)


def alice_post_states(p: float):
    """Alice's normalized states after outcome ``A_0``."""
    norm = 1 / math.sqrt(2 * (2 + p))
    s0 = np.array([1, 0], dtype=complex)
    s1 = norm * np.array([math.sqrt(1 - p), -math.sqrt(3 * (1 + p))], dtype=complex)
    s2 = norm * np.array([math.sqrt(1 - p), math.sqrt(3 * (1 + p))], dtype=complex)
    return s0, s1, s2


def _two_way_curve(p):
    p = np.asarray(p, dtype=float)
    c0, c1, c2 = two_way_conditionals(p)
    branch_prob = (c0 + c1 + c2) / 3
    q0, q1 = c0 / (3 * branch_prob), c1 / (3 * branch_prob)
    q = q0 + q1
    overlap = (1 - p) / (2 * (2 + p))
    conditional_error = 1 - q / 2 * (1 + np.sqrt(np.maximum(1 - 4 * q0 * q1 / q**2 * overlap, 0.0)))
    return 6 * branch_prob * conditional_error


def two_way_error(p: float, cross_check: bool = False) -> float:
    """Error of the three-round adaptive protocol at measurement strength ``p``.

    With ``cross_check=True`` the same protocol is also run through
    :func:`simulate_protocol` and a mismatch beyond 1e-10 raises.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"measurement strength p={p} outside [0, 1]")
    value = float(_two_way_curve(p))
    if cross_check:
        from .protocol import simulate_protocol
        from .states import double_trine

        engine = simulate_protocol(two_way_tree(p), double_trine()).error
        if abs(engine - value) > 1e-10:
            raise ConsistencyError(f"closed form {value!r} vs protocol engine {engine!r}")
    return value


def two_way_sweep(step: float = 1e-4) -> tuple[np.ndarray, np.ndarray]:
    """``p = k * step`` for ``k = 0 .. floor(1/step)`` and the error at each.

    When ``step`` divides 1 the last point is exactly ``p = 1``.
    """
    if not 0 < step <= 1:
        raise ValueError(f"step={step} outside (0, 1]")
    n = int(math.floor(1.0 / step + 1e-9))
    if abs(n * step - 1.0) <= 1e-9:
        ps = np.linspace(0.0, 1.0, n + 1)
    else:
        ps = np.arange(n + 1) * step
    return ps, _two_way_curve(ps)


@dataclass(frozen=True)
class TwoWayOptimum:
    p_star: float
    error: float


def two_way_optimum(step: float = 1e-4, tol: float = 1e-12) -> TwoWayOptimum:
    ps, values = two_way_sweep(step)
    k = _grid_argmin(values)
    p, e = golden_section(
        lambda x: float(_two_way_curve(x)), max(0.0, ps[k] - step), min(1.0, ps[k] + step), tol
    )
    if values[k] < e:
        p, e = float(ps[k]), float(values[k])
    return TwoWayOptimum(float(p), float(e))


def helstrom_measurement(w0: float, v0, w1: float, v1) -> tuple[np.ndarray, np.ndarray]:
    """Projectors ``(Pi_0, Pi_1)`` minimizing error between ``w0|v0>`` and ``w1|v1>``.

    ``Pi_0`` projects onto the positive eigenspace of
    ``w0|v0><v0| - w1|v1><v1|``.
    """
    delta = w0 * projector(v0) - w1 * projector(v1)
    values, vectors = eig_hermitian(delta)
    pi0 = sum(
        (projector(vectors[:, k]) for k in range(2) if values[k] > 0),
        np.zeros((2, 2), dtype=complex),
    )
    return pi0, np.eye(2, dtype=complex) - pi0


def _unit(v):
    n = np.linalg.norm(v)
    return v / n if n > 0 else v


def one_way_tree() -> Node:
    """Alice's elimination measurement, then Bob's Helstrom step on the survivors."""
    children = []
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        pi_j, pi_k = helstrom_measurement(0.5, trine_state(j), 0.5, trine_state(k))
        children.append(Node("B", (pi_j, pi_k), (Leaf(j), Leaf(k))))
    return Node("A", tuple(elimination_kraus(i) for i in range(3)), tuple(children))


def two_way_tree(p: float) -> Node:
    """Alice ``A_i`` -> Bob ``U^i|+-><+-|U^-i`` -> Alice Helstrom step."""
    bob_basis = (
        np.array([1, 1], dtype=complex) / math.sqrt(2),
        np.array([1, -1], dtype=complex) / math.sqrt(2),
    )
    alice_nodes = []
    for i in range(3):
        a_i = kraus_A(i, p)
        u = rotation_power(i)
        bob_kraus, bob_children = [], []
        for mu, partner in zip(bob_basis, ((i + 1) % 3, (i + 2) % 3)):
            b = u @ mu
            bob_kraus.append(projector(b))

            def weight(k):
                return np.vdot(a_i @ trine_state(k), a_i @ trine_state(k)).real * abs(
                    np.vdot(b, trine_state(k))
                ) ** 2 / 3

            pi_self, pi_partner = helstrom_measurement(
                weight(i), _unit(a_i @ trine_state(i)),
                weight(partner), _unit(a_i @ trine_state(partner)),
            )
            bob_children.append(Node("A", (pi_self, pi_partner), (Leaf(i), Leaf(partner))))
        alice_nodes.append(Node("B", tuple(bob_kraus), tuple(bob_children)))
    return Node("A", tuple(kraus_A(i, p) for i in range(3)), tuple(alice_nodes))


def uniform_guess_tree() -> Node:
    """Trivial three-outcome instrument whose outcome is the guess."""
    k = np.eye(2, dtype=complex) / math.sqrt(3)
    return Node("A", (k, k, k), (Leaf(0), Leaf(1), Leaf(2)))
