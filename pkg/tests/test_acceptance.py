"""Acceptance criteria C1-C10, one or more tests each.

A per-criterion PASS/FAIL line is printed in the terminal summary by
``conftest.py``.
"""

import math

import numpy as np
import pytest

from helpers import random_ket, random_psd
from trine_lab.discrimination import error_probability, extract_optimal_basis, helstrom_binary, lemma1_det_delta, lemma1_min_error, pgm
from trine_lab.linalg import projector, tensor
from trine_lab.locc import (
    THETA_MAX,
    THETA_MIN,
    AliceDirection,
    _branch_error_forms,
    det_delta_closed_form,
    det_delta_direct,
    one_way_optimum,
    two_way_error,
    two_way_optimum,
    two_way_tree,
)
from trine_lab.nogo import (
    HaltingOperator,
    adjugate_identity_residual,
    build_E,
    commutator_closed_form,
    commutator_residual,
    commutator_scale,
    nogo_certificate,
    sep_rhs_bound,
    simplex_grid,
)
from trine_lab.protocol import simulate_protocol
from trine_lab.separability import ppt_separable, product_decomposition, separable_element, separable_pgm
from trine_lab.states import concurrence, double_trine, pgm_basis_F

GLOBAL = 0.5 - math.sqrt(2) / 3
ONE_WAY = 0.5 - math.sqrt(3) / 4

crit = pytest.mark.criterion


@pytest.fixture(scope="module")
def one_way():
    return one_way_optimum()


@pytest.fixture(scope="module")
def two_way():
    return two_way_optimum()


@crit("C1", "global optimum 1/2 - sqrt(2)/3 within 1e-12")
def test_c1_global_optimum():
    ens = double_trine()
    assert abs(error_probability(ens, pgm(ens)) - GLOBAL) <= 1e-12


@crit("C2", "SEP POVM attains the global optimum, PPT and product certificates")
def test_c2_sep_attains_global():
    ens = double_trine()
    sep = separable_pgm()
    assert sep.is_valid()
    assert abs(error_probability(ens, sep) - GLOBAL) <= 1e-12
    for i in range(3):
        assert ppt_separable(separable_element(i)).is_ppt
        for v in product_decomposition(i):
            assert concurrence(v / np.linalg.norm(v)) <= 1e-12


@crit("C3", "one-way optimum 1/2 - sqrt(3)/4 at theta=-pi/6, phi=0")
def test_c3_one_way(one_way):
    assert abs(one_way.error - ONE_WAY) <= 1e-10
    assert abs(one_way.theta - (-math.pi / 6)) <= 1e-6
    assert abs(one_way.phi) <= 1e-6


@crit("C4", "two-way optimum in [6.42e-2, 6.52e-2], 2e-3 below one-way, p=1 reproduces one-way")
def test_c4_two_way(one_way, two_way):
    assert 6.42e-2 <= two_way.error <= 6.52e-2
    assert one_way.error - two_way.error >= 2e-3
    assert abs(two_way_error(1.0) - one_way.error) <= 1e-12


@crit("C5", "strict chain global < two-way < one-way, margins > 1e-3")
def test_c5_chain(one_way, two_way):
    ens = double_trine()
    v1 = error_probability(ens, pgm(ens))
    assert two_way.error - v1 > 1e-3
    assert one_way.error - two_way.error > 1e-3


@crit("C6", "closed-form binary error matches trace-norm Helstrom on 1000 samples, both branches")
def test_c6_binary_closed_form_oracle():
    rng = np.random.default_rng(6)
    branches = {True: 0, False: 0}
    worst = 0.0
    for k in range(1000):
        # alternate dominant and balanced priors so both det signs appear
        p = rng.dirichlet([4.0, 1.0, 1.0] if k % 2 else [1.0, 1.0, 1.0])
        psi = [random_ket(rng, 2) for _ in range(3)]
        rho = p[0] * projector(psi[0])
        sigma = p[1] * projector(psi[1]) + p[2] * projector(psi[2])
        worst = max(worst, abs(lemma1_min_error(*p, *psi) - helstrom_binary(rho, sigma)))
        branches[lemma1_det_delta(*p, *psi) <= 0] += 1
    assert worst <= 1e-10
    assert branches[True] >= 50 and branches[False] >= 50


@crit("C7", "optimal basis extraction gives F_i from both the PGM and the SEP POVM")
def test_c7_basis_extraction():
    ens = double_trine()
    from_pgm = extract_optimal_basis(ens, pgm(ens))
    from_sep = extract_optimal_basis(ens, separable_pgm())
    for i in range(3):
        f = pgm_basis_F(i)
        a, b = abs(np.vdot(from_pgm[i], f)), abs(np.vdot(from_sep[i], f))
        assert a >= 1 - 1e-10 and b >= 1 - 1e-10
        assert abs(a - b) <= 1e-10
        assert abs(abs(np.vdot(from_pgm[i], from_sep[i])) - 1) <= 1e-10


@crit("C8", "protocol engine matches two-way closed form at 101 values of p")
def test_c8_engine_cross_validation():
    ens = double_trine()
    for p in np.linspace(0.0, 1.0, 101):
        res = simulate_protocol(two_way_tree(float(p)), ens)
        assert abs(res.error - two_way_error(float(p))) <= 1e-10
        assert abs(res.total_probability - 1) <= 1e-10


def _random_halting(rng):
    a = rng.dirichlet(np.ones(3))
    b = 0.3 * (rng.standard_normal(3) + 1j * rng.standard_normal(3))
    return HaltingOperator(float(rng.uniform(0, 1)), a, b)


@crit("C9", "no-go identities and certificates")
def test_c9_commutator_proportional():
    rng = np.random.default_rng(9)
    scale = commutator_scale()
    for _ in range(1000):
        h = _random_halting(rng)
        res = commutator_residual(build_E(h))
        closed = scale * commutator_closed_form(h)
        assert abs(res - closed) <= 1e-9 * max(abs(res), abs(closed))


@crit("C9", "no-go identities and certificates")
def test_c9_commutator_vanishes_on_products():
    rng = np.random.default_rng(90)
    for _ in range(500):
        m = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        n = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        assert abs(commutator_residual(tensor(m, n))) <= 1e-12


@crit("C9", "no-go identities and certificates")
def test_c9_sep_rhs_bound_simplex():
    pts = simplex_grid(0.005)
    values = np.array([sep_rhs_bound(*p) for p in pts])
    assert values.min() >= 1 - 1e-12
    at_min = pts[values <= 1 + 1e-9]
    assert at_min.shape[0] == 1
    np.testing.assert_allclose(at_min[0], [1 / 3] * 3, atol=1e-9)


@crit("C9", "no-go identities and certificates")
def test_c9_adjugate_identity_random_products():
    # Expected to fail: the identity needs E to have no F_i-F_j cross terms,
    # which generic products A x B have.  See the decisions ledger.
    rng = np.random.default_rng(91)
    worst = 0.0
    for _ in range(500):
        e = tensor(random_psd(rng), random_psd(rng))
        worst = max(worst, adjugate_identity_residual(e))
    assert worst <= 1e-9, f"max relative residual {worst:.3e} on random full-rank products"


@crit("C9", "no-go identities and certificates")
def test_c9_nogo_certificate():
    reports = nogo_certificate([0.34, 0.4, 0.5, 0.75, 1.0])
    assert [r.contradiction for r in reports] == [True] * 5


@crit("C10", "both one-way error closed forms agree and det Delta <= 0 on a 1e4 grid")
def test_c10_formula_consistency():
    theta = np.linspace(THETA_MIN, THETA_MAX, 100)
    phi = np.linspace(0, 2 * math.pi, 100, endpoint=False)
    t, f = np.meshgrid(theta, phi, indexing="ij")
    a, b = _branch_error_forms(t, f)
    assert a.size == 10_000
    assert np.max(np.abs(a - b)) <= 1e-12
    assert np.max(det_delta_closed_form(t, f)) <= 1e-12
    direct = [det_delta_direct(AliceDirection(float(x), float(y))) for x, y in zip(t.flat[::7], f.flat[::7])]
    assert max(direct) <= 1e-12
