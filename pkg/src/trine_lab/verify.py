"""Named invariant checks behind ``trine-lab verify-all`` and the subcommand reports."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import locc, nogo
from .discrimination import Povm, error_probability, extract_optimal_basis, holevo_optimality_check, pgm
from .protocol import simulate_protocol
from .separability import ppt_separable, product_decomposition, separable_element, separable_pgm
from .states import concurrence, double_trine, pgm_basis_F

GLOBAL_OPTIMUM = 0.5 - math.sqrt(2) / 3
TWO_WAY_WINDOW = (6.42e-2, 6.52e-2)
CHAIN_MARGIN = 1e-3
NOGO_CHIS = (0.34, 0.4, 0.5, 0.75, 0.9, 1.0)
#: the one-way grid is two-dimensional, so it never gets finer than this
ONE_WAY_MIN_STEP = 1e-3


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    value: float
    detail: str = ""


def perturbed_pgm(amount: float = 1e-3) -> Povm:
    """The optimal PGM with ``amount * I`` added to its first element."""
    base = pgm(double_trine())
    first = base.elements[0] + amount * np.eye(4)
    return Povm((first,) + base.elements[1:], base.closure)


def global_checks(tol: float, povm: Povm | None = None) -> list[Check]:
    ens = double_trine()
    povm = pgm(ens) if povm is None else povm
    out = []
    problems = povm.violations()
    out.append(Check("pgm_valid", not problems, float(len(problems)), "; ".join(problems)))
    err = error_probability(ens, povm)
    out.append(Check("global_error", abs(err - GLOBAL_OPTIMUM) <= tol, err,
                     f"closed form {GLOBAL_OPTIMUM!r}"))
    report = holevo_optimality_check(ens, povm, tol=max(tol, 1e-12))
    out.append(Check("pgm_optimality", report.is_optimal, report.min_eigenvalue_margin,
                     f"hermiticity residual {report.hermiticity_residual:.3e}"))
    try:
        basis = extract_optimal_basis(ens, povm)
        worst = min(abs(np.vdot(b, pgm_basis_F(i))) for i, b in enumerate(basis))
        out.append(Check("optimal_basis", worst >= 1 - tol, float(worst)))
    except ValueError as exc:
        out.append(Check("optimal_basis", False, float("nan"), str(exc)))
    return out


def sep_checks(tol: float) -> list[Check]:
    ens = double_trine()
    sep = separable_pgm()
    out = [Check("sep_valid", sep.is_valid(), 0.0)]
    err = error_probability(ens, sep)
    out.append(Check("sep_error", abs(err - GLOBAL_OPTIMUM) <= tol, err))
    for i in range(3):
        rep = ppt_separable(separable_element(i))
        out.append(Check(f"sep_ppt_{i}", rep.is_ppt, rep.min_pt_eigenvalue))
        plus, minus = product_decomposition(i)
        worst = max(concurrence(v / np.linalg.norm(v)) for v in (plus, minus))
        out.append(Check(f"sep_product_{i}", worst <= tol, float(worst)))
    return out


def oneway_checks(tol: float, grid_step: float) -> tuple[list[Check], locc.OneWayOptimum]:
    opt = locc.one_way_optimum(step=max(grid_step, ONE_WAY_MIN_STEP))
    out = [
        Check("oneway_error", abs(opt.error - locc.ONE_WAY_OPTIMUM) <= tol, opt.error,
              f"closed form {locc.ONE_WAY_OPTIMUM!r}"),
        Check("oneway_argmin", abs(opt.theta - locc.THETA_MIN) <= 1e-6 and abs(opt.phi) <= 1e-6,
              opt.theta, f"phi={opt.phi!r}"),
    ]
    return out, opt


def twoway_checks(tol: float, grid_step: float) -> tuple[list[Check], locc.TwoWayOptimum]:
    opt = locc.two_way_optimum(step=grid_step)
    lo, hi = TWO_WAY_WINDOW
    out = [Check("twoway_window", lo <= opt.error <= hi, opt.error, f"p*={opt.p_star!r}")]
    try:
        at_one = locc.two_way_error(1.0, cross_check=True)
        out.append(Check("twoway_p1_equals_oneway", abs(at_one - locc.ONE_WAY_OPTIMUM) <= tol, at_one))
    except locc.ConsistencyError as exc:
        out.append(Check("twoway_p1_equals_oneway", False, float("nan"), str(exc)))
    ens = double_trine()
    worst, mass = 0.0, 0.0
    for p in np.linspace(0.0, 1.0, 11):
        res = simulate_protocol(locc.two_way_tree(float(p)), ens)
        worst = max(worst, abs(res.error - locc.two_way_error(float(p))))
        mass = max(mass, abs(res.total_probability - 1.0))
    out.append(Check("twoway_engine_agreement", worst <= max(tol, 1e-10), worst,
                     f"max |total probability - 1| {mass:.3e}"))
    return out, opt


def nogo_checks(tol: float, seed: int, samples: int = 10_000) -> tuple[list[Check], list]:
    reports = nogo.nogo_certificate(NOGO_CHIS, samples=samples, seed=seed)
    out = [
        Check(f"nogo_chi_{r.chi:g}", r.contradiction, r.min_ratio_bound,
              f"sweep min violation {r.sweep_min_violation:.3e}")
        for r in reports
    ]
    rng = np.random.default_rng(seed)
    scale = nogo.commutator_scale()
    worst = 0.0
    for _ in range(100):
        h = _random_halting(rng)
        res = nogo.commutator_residual(nogo.build_E(h))
        closed = scale * nogo.commutator_closed_form(h)
        worst = max(worst, abs(res - closed) / max(1.0, abs(closed)))
    out.append(Check("commutator_closed_form", worst <= max(tol, 1e-12), worst))
    return out, reports


def _random_halting(rng) -> nogo.HaltingOperator:
    a = rng.dirichlet(np.ones(3))
    b = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    return nogo.HaltingOperator(float(rng.uniform(0, 1)), a, 0.3 * b)


def chain_check(global_value: float, two_way: float, one_way: float) -> Check:
    ok = (two_way - global_value > CHAIN_MARGIN) and (one_way - two_way > CHAIN_MARGIN)
    return Check("strict_chain", ok, min(two_way - global_value, one_way - two_way),
                 "global = SEP < two-way < one-way")


def verify_all(tol: float = 1e-9, grid_step: float = 1e-4, seed: int = 42,
               povm: Povm | None = None) -> list[Check]:
    povm = pgm(double_trine()) if povm is None else povm
    checks = global_checks(tol, povm)
    checks += sep_checks(tol)
    one, one_opt = oneway_checks(tol, grid_step)
    two, two_opt = twoway_checks(tol, grid_step)
    checks += one + two
    checks.append(chain_check(error_probability(double_trine(), povm), two_opt.error, one_opt.error))
    checks += nogo_checks(tol, seed)[0]
    return checks
