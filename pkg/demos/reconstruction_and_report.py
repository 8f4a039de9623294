"""
Reconstruction and the condition report
=======================================

A dual family turns coefficients back into vectors.  Here we rebuild random
vectors from their coefficients, bound the synthesis operator level by level,
and fold all checks into a single report.

Run with ``python3 demos/reconstruction_and_report.py``.
"""

import numpy as np

from thetaframe import assemble_verdicts, example_g1, example_g2, polynomial_hierarchy
from thetaframe.reconstruction import (
    build_dual,
    dual_from_vectors,
    example_g2_dual,
    expansion_residual,
    v_norm_certificate,
)

rng = np.random.default_rng(1)
g = example_g1(4)
h = polynomial_hierarchy(4, 2)
dual = build_dual(g)
print("dual vectors:\n", dual.f)

##############################################################################
# Exact reconstruction at every level.

res = max(expansion_residual(g, dual, f, s, h) for f in rng.standard_normal((100, 4)) for s in range(3))
print("largest reconstruction residual:", res)

##############################################################################
# Operator constants of the synthesis map never exceed one.

for lvl in v_norm_certificate(g, dual, h, n_samples=100):
    print(f"level {lvl['level']}: K = {lvl['K']:.12f}, dual bounds ok = {lvl['dual_bound_ok']}")

##############################################################################
# The full report.  For the interleaved sequence the dual has to be supplied.

rep = assemble_verdicts(g, h, n_samples=100, n_pairs=100)
for row in rep.summary_rows():
    print(row)
print("pre-F-frame:", rep.pre_f_frame, " F-frame:", rep.f_frame, " tight:", rep.tight)

g2 = example_g2(3)
rep2 = assemble_verdicts(g2, dual=dual_from_vectors(g2, example_g2_dual(3)), n_samples=20, n_pairs=20)
print("interleaved sequence, F-frame:", rep2.f_frame, f"({rep2.to_dict()['verdict_kind']})")
