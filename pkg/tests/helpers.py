import numpy as np

from thetaframe import BlockFrameSpec


def random_block_frame(rng, max_m=10, max_dim=4):
    """Block frame with 1..max_dim blocks, at most max_m functionals, |t| in [0.5, 3]."""
    while True:
        dim = int(rng.integers(1, max_dim + 1))
        mult = rng.integers(1, 4, size=dim)
        if mult.sum() <= max_m:
            break
    t = rng.uniform(0.5, 3.0, size=mult.sum()) * rng.choice([-1.0, 1.0], size=mult.sum())
    return BlockFrameSpec(mult, t)


def slsqp_theta_norm(G, c, w=None):
    """Reference value of min ||w f|| s.t. |G f| >= |c| from SLSQP on every sign pattern.

    Used only to cross-check the Dykstra oracle; shares no code with it.
    """
    import itertools

    from scipy.optimize import minimize

    G = np.asarray(G, float)
    c = np.abs(np.asarray(c, float))
    n = G.shape[1]
    w = np.ones(n) if w is None else np.asarray(w, float)
    rows = np.flatnonzero(c)
    if rows.size == 0:
        return 0.0
    best = np.inf
    for signs in itertools.product((1.0, -1.0), repeat=rows.size):
        A = np.array(signs)[:, None] * G[rows]
        b = c[rows]
        x0 = np.linalg.lstsq(A, b, rcond=None)[0]
        res = minimize(lambda f: np.sum((w * f) ** 2), x0, jac=lambda f: 2 * w * w * f,
                       constraints=[{"type": "ineq", "fun": lambda f: A @ f - b, "jac": lambda f: A}],
                       method="SLSQP", options={"ftol": 1e-15, "maxiter": 1000})
        if np.all(A @ res.x - b >= -1e-9):
            best = min(best, float(np.linalg.norm(w * res.x)))
    return best
