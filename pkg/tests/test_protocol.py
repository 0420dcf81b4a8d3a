import math

import numpy as np
import pytest

from helpers import random_unitary
from trine_lab.locc import ONE_WAY_OPTIMUM, one_way_tree, two_way_error, two_way_tree, uniform_guess_tree
from trine_lab.protocol import Leaf, Node, check_tree, simulate_protocol
from trine_lab.states import WeightedEnsemble, double_trine, singlet


def random_instrument(rng, outcomes):
    """Kraus operators from the columns of a random isometry C^2 -> C^(2k)."""
    u = random_unitary(rng, 2 * outcomes)[:, :2]
    return tuple(u[2 * k: 2 * k + 2] for k in range(outcomes))


def random_tree(rng, depth):
    if depth == 0:
        return Leaf()
    k = int(rng.integers(2, 4))
    return Node(rng.choice(["A", "B"]), random_instrument(rng, k),
                tuple(random_tree(rng, depth - 1) for _ in range(k)))


def test_node_validation():
    with pytest.raises(ValueError):
        Node("C", (np.eye(2),), (Leaf(),))
    with pytest.raises(ValueError):
        Node("A", (np.eye(2),), (Leaf(), Leaf()))
    with pytest.raises(ValueError):
        check_tree(Node("A", (np.eye(2), np.eye(2)), (Leaf(), Leaf())))


def test_rejects_entangled_ensemble():
    ens = WeightedEnsemble((1.0,), (singlet(),))
    with pytest.raises(ValueError, match="not a product"):
        simulate_protocol(uniform_guess_tree(), ens)


def test_one_way_tree():
    res = simulate_protocol(one_way_tree(), double_trine())
    assert res.error == pytest.approx(ONE_WAY_OPTIMUM, abs=1e-10)
    assert res.total_probability == pytest.approx(1, abs=1e-12)


def test_uniform_guess_tree():
    res = simulate_protocol(uniform_guess_tree(), double_trine())
    assert res.error == pytest.approx(2 / 3, abs=1e-12)


@pytest.mark.parametrize("p", [0.0, 0.25, 0.5, 0.79855, 1.0])
def test_two_way_tree_matches_closed_form(p):
    res = simulate_protocol(two_way_tree(p), double_trine())
    assert abs(res.error - two_way_error(p)) <= 1e-10
    assert abs(res.total_probability - 1) <= 1e-10


def test_two_way_tree_branches_are_equiprobable():
    res = simulate_protocol(two_way_tree(0.6), double_trine())
    by_first_two = {}
    for leaf in res.leaves:
        key = leaf.outcomes[:2]
        by_first_two[key] = by_first_two.get(key, 0.0) + leaf.path_probability
    assert len(by_first_two) == 6
    np.testing.assert_allclose(list(by_first_two.values()), [1 / 6] * 6, atol=1e-12)


def test_p1_prunes_annihilated_branches():
    res = simulate_protocol(two_way_tree(1.0), double_trine())
    for leaf in res.leaves:
        assert leaf.path_probability >= 1e-14
        assert abs(leaf.posterior.sum() - 1) <= 1e-10


def test_probability_conserved_on_random_trees(rng):
    ens = double_trine()
    for _ in range(30):
        tree = random_tree(rng, int(rng.integers(1, 4)))
        res = simulate_protocol(tree, ens)
        assert abs(res.total_probability - 1) <= 1e-10
        assert 0 <= res.error <= 1
        for leaf in res.leaves:
            assert 0 <= leaf.path_probability <= 1 + 1e-12
            assert abs(leaf.posterior.sum() - 1) <= 1e-10


def test_map_guess_never_worse_than_fixed_guess(rng):
    ens = double_trine()
    for _ in range(10):
        kraus = random_instrument(rng, 3)
        adaptive = simulate_protocol(Node("B", kraus, (Leaf(), Leaf(), Leaf())), ens)
        fixed = simulate_protocol(Node("B", kraus, (Leaf(0), Leaf(0), Leaf(0))), ens)
        assert adaptive.error <= fixed.error + 1e-12
        assert fixed.error == pytest.approx(2 / 3, abs=1e-12)
        assert adaptive.error >= 0.5 - math.sqrt(2) / 3 - 1e-12
