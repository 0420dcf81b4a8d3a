"""Why no LOCC sequence approaches the separable optimum."""

import numpy as np

from trine_lab import HaltingOperator, build_E, commutator_closed_form, commutator_residual, nogo_certificate
from trine_lab.nogo import commutator_scale, sep_rhs_bound, simplex_grid

# Product operators have commuting partial blocks; the closed form tracks the residual.
h = HaltingOperator(0.2, (0.5, 0.3, 0.2), (0.1 + 0.3j, -0.2 + 0.1j, 0.05j))
print("residual  ", commutator_residual(build_E(h)))
print("closed form", commutator_scale() * commutator_closed_form(h))

pts = simplex_grid(0.01)
vals = np.array([sep_rhs_bound(*p) for p in pts])
print(f"concurrence-ratio bound: min {vals.min():.12f} at {pts[vals.argmin()]}")

for r in nogo_certificate([0.34, 0.4, 0.5, 0.75, 0.9, 1.0]):
    print(f"chi = {r.chi:<5g} s_max = {r.s_max:.4f} bound = {r.min_ratio_bound:.6f} "
          f"sweep gap = {r.sweep_min_violation:.3e} contradiction = {r.contradiction}")
