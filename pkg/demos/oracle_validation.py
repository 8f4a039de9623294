"""
Checking the closed form against brute force
============================================

The oracle splits the admissible set into one polyhedron per sign pattern and
projects onto each with Dykstra's method.  It is slow but needs no structure,
so it can audit the block formula on random frames and handle frames that are
not block shaped at all.

Run with ``python3 demos/oracle_validation.py``.
"""

import time

import numpy as np

from thetaframe import BlockFrameSpec, GeneralFrameSpec, polynomial_hierarchy, theta_norm
from thetaframe.oracle import min_norm_polyhedron

rng = np.random.default_rng(2)

# A single half-space: the nearest point is the scaled normal.
sol = min_norm_polyhedron([[1.0, 1.0]], [1.0])
print("nearest point to the origin in {x+y>=1}:", sol.f, "norm", sol.value)

worst, start = 0.0, time.perf_counter()
for _ in range(50):
    mult = rng.integers(1, 4, size=3)
    t = rng.uniform(0.5, 3, mult.sum()) * rng.choice([-1, 1], mult.sum())
    g = BlockFrameSpec(mult, t)
    h = polynomial_hierarchy(3, 2)
    c = rng.standard_normal(g.m)
    for s in range(3):
        a = theta_norm(g, c, s, h).value
        b = theta_norm(g, c, s, h, method="oracle").value
        worst = max(worst, abs(a - b) / a)
print(f"largest relative gap over 150 problems: {worst:.2e} ({time.perf_counter() - start:.2f}s)")

# A frame with no block structure goes straight to the oracle.
G = GeneralFrameSpec(rng.standard_normal((5, 3)))
c = rng.standard_normal(5)
r = theta_norm(G, c)
print("general frame:", r.value, "witness", r.witness, "method", r.method)
