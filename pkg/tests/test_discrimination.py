import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import random_ket, random_psd
from trine_lab.discrimination import (
    Povm,
    error_probability,
    extract_optimal_basis,
    helstrom_binary,
    holevo_optimality_check,
    lemma1_det_delta,
    lemma1_min_error,
    pgm,
    povm_distance,
    span_projector,
)
from trine_lab.linalg import projector, spectral_function
from trine_lab.separability import separable_pgm
from trine_lab.states import WeightedEnsemble, double_trine, pgm_basis_F, singlet, trine_state

GLOBAL = 0.5 - math.sqrt(2) / 3
E2 = np.eye(2, dtype=complex)
K0, K1 = E2[0], E2[1]


def uniform_povm():
    return Povm.complete([np.eye(4) / 3] * 3)


def random_povm(rng, n=2, k=2):
    """k-outcome POVM on C^n from normalized random PSD operators."""
    raw = [random_psd(rng, n) for _ in range(k)]
    inv = spectral_function(sum(raw), lambda x: x**-0.5)
    return Povm.complete([inv @ r @ inv for r in raw])


def test_error_probability_examples():
    orth = WeightedEnsemble((0.5, 0.5), (K0, K1))
    assert error_probability(orth, Povm.complete([projector(K0), projector(K1)])) == pytest.approx(0, abs=1e-15)
    ens = double_trine()
    assert error_probability(ens, pgm(ens)) == pytest.approx(GLOBAL, abs=1e-12)
    assert error_probability(ens, uniform_povm()) == pytest.approx(2 / 3, abs=1e-15)


def test_error_probability_shape_checks():
    with pytest.raises(ValueError):
        error_probability(double_trine(), Povm.complete([np.eye(4) / 2] * 2))
    with pytest.raises(ValueError):
        error_probability(double_trine(), Povm.complete([np.eye(2) / 3] * 3))


def test_error_probability_affine(rng):
    ens = double_trine()
    a, b = pgm(ens), uniform_povm()
    for t in rng.uniform(0, 1, 20):
        mix = Povm(tuple(t * x + (1 - t) * y for x, y in zip(a.elements, b.elements)), np.eye(4))
        expected = t * error_probability(ens, a) + (1 - t) * error_probability(ens, b)
        assert abs(error_probability(ens, mix) - expected) <= 1e-12


def test_helstrom_examples():
    assert helstrom_binary(np.eye(2) / 4, np.eye(2) / 4) == pytest.approx(0.5)
    assert helstrom_binary(projector(K0) / 2, projector(K1) / 2) == pytest.approx(0, abs=1e-15)
    value = helstrom_binary(projector(trine_state(0)) / 2, projector(trine_state(1)) / 2)
    assert value == pytest.approx(0.5 - math.sqrt(3) / 4, abs=1e-14)
    with pytest.raises(ValueError):
        helstrom_binary(np.eye(2), np.eye(2))


def test_helstrom_is_a_lower_bound(rng):
    for _ in range(20):
        w = rng.uniform(0.05, 0.95)
        u, v = random_ket(rng, 2), random_ket(rng, 2)
        ens = WeightedEnsemble((w, 1 - w), (u, v))
        bound = helstrom_binary(w * projector(u), (1 - w) * projector(v))
        for _ in range(25):
            assert error_probability(ens, random_povm(rng)) >= bound - 1e-10


def test_binary_closed_form_examples():
    s = [trine_state(i) for i in range(3)]
    assert lemma1_min_error(0.5, 0.5, 0, *s) == pytest.approx(0.5 - math.sqrt(3) / 4, abs=1e-14)
    assert lemma1_min_error(1, 0, 0, *s) == pytest.approx(0, abs=1e-15)
    with pytest.raises(ValueError):
        lemma1_min_error(0.5, 0.6, -0.1, *s)


@settings(max_examples=200, deadline=None)
@given(
    st.lists(st.floats(0, 1), min_size=3, max_size=3).filter(lambda x: sum(x) > 1e-3),
    st.integers(0, 2**32 - 1),
)
def test_binary_closed_form_matches_helstrom(weights, seed):
    rng = np.random.default_rng(seed)
    p = np.asarray(weights) / sum(weights)
    psi = [random_ket(rng, 2) for _ in range(3)]
    rho = p[0] * projector(psi[0])
    sigma = p[1] * projector(psi[1]) + p[2] * projector(psi[2])
    assert abs(lemma1_min_error(*p, *psi) - helstrom_binary(rho, sigma)) <= 1e-10


def test_binary_closed_form_branches_agree():
    # det Delta = 0 when p0 = 0 and psi1 = psi2
    s0, s1 = trine_state(0), trine_state(1)
    assert lemma1_det_delta(0.0, 0.5, 0.5, s0, s1, s1) == pytest.approx(0, abs=1e-15)
    assert lemma1_min_error(0.0, 0.5, 0.5, s0, s1, s1) == pytest.approx(0, abs=1e-15)


def test_pgm_examples():
    orth = WeightedEnsemble((0.5, 0.5), (K0, K1))
    p = pgm(orth)
    np.testing.assert_allclose(p.elements[0], projector(K0), atol=1e-14)
    np.testing.assert_allclose(p.elements[1], projector(K1), atol=1e-14)
    single = pgm(WeightedEnsemble((1.0,), (trine_state(1),)))
    np.testing.assert_allclose(single.elements[0], projector(trine_state(1)), atol=1e-14)
    ens = double_trine()
    for i, e in enumerate(pgm(ens).elements):
        assert abs(np.vdot(pgm_basis_F(i), e @ pgm_basis_F(i)) - 1) < 1e-10
        np.testing.assert_allclose(e, projector(pgm_basis_F(i)), atol=1e-10)


def test_pgm_always_valid(rng):
    for _ in range(50):
        k = int(rng.integers(1, 4))
        ens = WeightedEnsemble(rng.dirichlet(np.ones(k)), tuple(random_ket(rng, 4) for _ in range(k)))
        assert pgm(ens).is_valid()


def test_povm_validation():
    bad = Povm.complete([np.eye(2), -np.eye(2) * 0.1 + np.diag([0, 0.1])])
    assert not bad.is_valid()
    with pytest.raises(ValueError, match="invalid POVM"):
        bad.validate()
    with pytest.raises(ValueError):
        Povm((np.eye(2),), np.eye(4))


def test_holevo_check_examples():
    ens = double_trine()
    rep = holevo_optimality_check(ens, pgm(ens))
    assert rep.is_optimal
    assert rep.min_eigenvalue_margin >= -1e-9
    assert not holevo_optimality_check(ens, uniform_povm()).is_optimal
    orth = WeightedEnsemble((0.5, 0.5), (K0, K1))
    rep = holevo_optimality_check(orth, Povm.complete([projector(K0), projector(K1)]))
    assert rep.is_optimal and rep.min_eigenvalue_margin == pytest.approx(0, abs=1e-14)


def test_extract_basis_examples():
    ens = double_trine()
    for povm in (pgm(ens), separable_pgm()):
        basis = extract_optimal_basis(ens, povm)
        for i, b in enumerate(basis):
            assert abs(np.vdot(b, pgm_basis_F(i))) >= 1 - 1e-10
    orth = WeightedEnsemble((0.5, 0.5), (K0, K1))
    basis = extract_optimal_basis(orth, Povm.complete([projector(K0), projector(K1)]))
    np.testing.assert_allclose(basis[0], K0, atol=1e-14)
    np.testing.assert_allclose(basis[1], K1, atol=1e-14)


def test_extract_basis_rejects_suboptimal():
    with pytest.raises(ValueError, match="not optimal"):
        extract_optimal_basis(double_trine(), uniform_povm())


def test_every_optimal_povm_resolves_F(rng):
    ens = double_trine()
    psi = projector(singlet())
    for _ in range(50):
        c = rng.dirichlet(np.ones(3))
        povm = Povm.complete([projector(pgm_basis_F(i)) + c[i] * psi for i in range(3)])
        assert abs(error_probability(ens, povm) - GLOBAL) <= 1e-9
        for i in range(3):
            for j in range(3):
                value = np.vdot(pgm_basis_F(i), povm.elements[j] @ pgm_basis_F(i)).real
                assert abs(value - (i == j)) <= 1e-6


def test_span_projector():
    ens = double_trine()
    np.testing.assert_allclose(span_projector(ens.states), np.eye(4) - projector(singlet()), atol=1e-12)


def test_povm_distance(rng):
    a = Povm.complete([projector(K0), projector(K1)])
    b = Povm.complete([projector(K1), projector(K0)])
    assert povm_distance(a, a) == 0
    assert povm_distance(a, b) == pytest.approx(2, abs=1e-14)
    for _ in range(100):
        p, q, r = (random_povm(rng) for _ in range(3))
        assert povm_distance(p, r) <= povm_distance(p, q) + povm_distance(q, r) + 1e-10
        assert povm_distance(p, q) == pytest.approx(povm_distance(q, p), abs=1e-12)
