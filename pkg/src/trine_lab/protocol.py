"""Finite-round LOCC protocols as trees of local instruments.

An internal :class:`Node` is a local measurement by one party, given by
Kraus operators on that party's qubit; it has one child per outcome.
A :class:`Leaf` ends a branch with a guess.  Classical communication is
implicit: every later node already knows the outcomes on its path.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import as_operator
from .separability import ket_factors
from .states import WeightedEnsemble

KRAUS_TOL = 1e-10
PRUNE_TOL = 1e-14


@dataclass(frozen=True)
class Leaf:
    """End of a branch.  ``guess=None`` guesses the most probable state."""

    guess: int | None = None


@dataclass(frozen=True)
class Node:
    party: str
    kraus: tuple
    children: tuple

    def __post_init__(self):
        if self.party not in ("A", "B"):
            raise ValueError(f"party must be 'A' or 'B', got {self.party!r}")
        kraus = tuple(as_operator(k, dims=(2,)) for k in self.kraus)
        if len(kraus) != len(self.children):
            raise ValueError("need one child per Kraus operator")
        object.__setattr__(self, "kraus", kraus)
        object.__setattr__(self, "children", tuple(self.children))

    def completeness_residual(self) -> float:
        total = sum(k.conj().T @ k for k in self.kraus)
        return float(np.max(np.abs(total - np.eye(2))))


@dataclass(frozen=True)
class BranchState:
    """What is known at a leaf: Bayes posterior and filtered local states."""

    outcomes: tuple
    posterior: np.ndarray
    conditional_states: tuple
    path_probability: float
    guess: int


@dataclass(frozen=True)
class ProtocolResult:
    error: float
    leaves: list = field(default_factory=list)

    @property
    def total_probability(self) -> float:
        return float(sum(leaf.path_probability for leaf in self.leaves))


def check_tree(tree) -> None:
    if isinstance(tree, Leaf):
        return
    residual = tree.completeness_residual()
    if residual > KRAUS_TOL:
        raise ValueError(f"Kraus operators of a {tree.party} node are incomplete ({residual:.2e})")
    for child in tree.children:
        check_tree(child)


def _split_ensemble(ensemble: WeightedEnsemble):
    if ensemble.dim != 4:
        raise ValueError("protocols act on two-qubit ensembles")
    pairs = []
    for k, s in enumerate(ensemble.states):
        factors = ket_factors(s)
        if factors is None:
            raise ValueError(f"ensemble state {k} is not a product state")
        pairs.append(factors)
    return pairs


def simulate_protocol(tree, ensemble: WeightedEnsemble) -> ProtocolResult:
    """Propagate every ensemble state through every root-to-leaf path.

    Branches with total probability below ``1e-14`` are dropped; they
    contribute nothing to the error.
    """
    check_tree(tree)
    pairs = _split_ensemble(ensemble)
    # unnormalized local vectors carry the joint weights p_i * P(path | i)
    amps = [(np.sqrt(p) * a, b) for p, (a, b) in zip(ensemble.priors, pairs)]
    leaves: list[BranchState] = []
    _walk(tree, amps, (), leaves)
    success = sum(leaf.path_probability * leaf.posterior[leaf.guess] for leaf in leaves)
    return ProtocolResult(error=float(1.0 - success), leaves=leaves)


def _weights(amps) -> np.ndarray:
    return np.array([np.vdot(a, a).real * np.vdot(b, b).real for a, b in amps])


def _walk(node, amps, outcomes, leaves) -> None:
    w = _weights(amps)
    total = float(w.sum())
    if total < PRUNE_TOL:
        return
    if isinstance(node, Leaf):
        posterior = w / total
        guess = int(np.argmax(posterior)) if node.guess is None else node.guess
        states = tuple(
            (a / np.linalg.norm(a), b / np.linalg.norm(b)) if wk > 0 else (a, b)
            for (a, b), wk in zip(amps, w)
        )
        leaves.append(BranchState(outcomes, posterior, states, total, guess))
        return
    for k, (kraus, child) in enumerate(zip(node.kraus, node.children)):
        if node.party == "A":
            nxt = [(kraus @ a, b) for a, b in amps]
        else:
            nxt = [(a, kraus @ b) for a, b in amps]
        _walk(child, nxt, outcomes + (k,), leaves)
