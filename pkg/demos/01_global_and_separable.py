"""Global optimum of the double trine and a separable POVM that matches it."""

import math

import numpy as np

from trine_lab import double_trine, error_probability, holevo_optimality_check, pgm, separable_pgm
from trine_lab.separability import ppt_separable, product_decomposition, separable_element
from trine_lab.states import concurrence, pgm_basis_F

ens = double_trine()
povm = pgm(ens)

# The pretty good measurement projects onto three orthonormal vectors F_i.
for i, e in enumerate(povm.elements):
    f = pgm_basis_F(i)
    print(f"<F_{i}|Pi_{i}|F_{i}> = {np.vdot(f, e @ f).real:.12f}")

err = error_probability(ens, povm)
print(f"error = {err:.15f}   (1/2 - sqrt(2)/3 = {0.5 - math.sqrt(2) / 3:.15f})")
print("optimality margin:", holevo_optimality_check(ens, povm).min_eigenvalue_margin)

# Pad each element with a third of the singlet projector: now every element is separable.
sep = separable_pgm()
print(f"separable error = {error_probability(ens, sep):.15f}")
for i in range(3):
    rep = ppt_separable(separable_element(i))
    plus, minus = product_decomposition(i)
    c = max(concurrence(v / np.linalg.norm(v)) for v in (plus, minus))
    print(f"element {i}: min PT eigenvalue {rep.min_pt_eigenvalue:+.2e}, concurrence of phi+- {c:.1e}")
