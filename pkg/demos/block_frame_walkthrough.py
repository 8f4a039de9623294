"""
Block frames and their induced sequence norm
============================================

A block frame repeats each basis direction a few times, scaled by nonzero
numbers.  The norm of a coefficient sequence is the size of the smallest
vector whose coefficients dominate it, and for block frames that vector
has an explicit form: one block maximum per direction.

Run with ``python3 demos/block_frame_walkthrough.py``.
"""

import numpy as np

from thetaframe import example_g1, polynomial_hierarchy, theta_norm
from thetaframe.frames import l2_frame_bounds
from thetaframe.theta import block_maxima, tail_norm_profile

# The running example: {e_1, e_1, 2 e_2, 3 e_3}.
g = example_g1(3)
print("frame matrix:\n", g.matrix)

##############################################################################
# Block maxima give the minimiser directly.

c = [1, 2, 2, 3]
print("block maxima:", block_maxima(g, c))
r = theta_norm(g, c)
print(f"norm of {c}: {r.value:.12f} (sqrt 6 = {np.sqrt(6):.12f})")

##############################################################################
# The brute-force solver knows nothing about blocks but lands on the same value.

print("oracle:", theta_norm(g, c, method="oracle").value)

##############################################################################
# Weighted levels.  With weights (1+j)^s the norm grows with the level.

h = polynomial_hierarchy(3, 3)
for s in range(h.levels):
    print(f"level {s}: weights {h.level(s)} -> norm {theta_norm(g, c, s, h).value:.6f}")

##############################################################################
# Tails shrink block by block, which is what makes the canonical vectors a basis.

for k, v in tail_norm_profile(g, c):
    print(f"tail from index {k}: {v:.6f}")

##############################################################################
# Analysis followed by the induced norm reproduces the vector norm exactly,
# while the plain l2 upper bound blows up with the truncation size.

f = np.random.default_rng(0).standard_normal(3)
print("||f|| =", np.linalg.norm(f), " induced =", theta_norm(g, g.apply(f)).value)
for J in range(3, 9):
    print(f"J={J}: l2 frame bounds {l2_frame_bounds(example_g1(J))}")
