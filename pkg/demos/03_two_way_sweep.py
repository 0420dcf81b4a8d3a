"""Adaptive three-round protocol: a weak measurement by Alice helps.

Writes the error curve to ``two_way_sweep.csv`` in the working directory.
"""

from trine_lab import ONE_WAY_OPTIMUM, two_way_error, two_way_optimum, two_way_sweep
from trine_lab.locc import two_way_tree
from trine_lab.protocol import simulate_protocol
from trine_lab.states import double_trine

ps, errs = two_way_sweep(1e-3)
with open("two_way_sweep.csv", "w", newline="\n") as fh:
    fh.write("p,p_err\n")
    for p, e in zip(ps, errs):
        fh.write("%.17g,%.17g\n" % (p, e))
print(f"wrote {ps.size} rows")

opt = two_way_optimum()
print(f"minimum {opt.error:.6e} at p = {opt.p_star:.5f}")
print(f"one-way {ONE_WAY_OPTIMUM:.6e}, gain {ONE_WAY_OPTIMUM - opt.error:.3e}")

# The same protocol as an explicit tree of local instruments.
res = simulate_protocol(two_way_tree(opt.p_star), double_trine())
print(f"tree simulation {res.error:.15f} vs closed form {two_way_error(opt.p_star):.15f}")
print(f"{len(res.leaves)} leaves, total probability {res.total_probability:.15f}")
