"""Dual sequences, the synthesis operator and series-expansion checks.

For a block frame the dual vector of the first functional of block ``j`` is
``e_j / t`` and every other dual vector is zero, so

    f = sum_i g_i(f) f_i

holds exactly.  The witness vectors ``h_i = e_{block(i)} / t_i`` attain the
norm of the ``i``-th canonical sequence.  General frames must be given an
explicit dual; none is computed automatically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from .frames import BlockFrameSpec, GeneralFrameSpec, level_weights
from .hierarchy import WeightHierarchy
from .sequences import SequenceLike, as_sequence, canonical
from .theta import canonical_vector_norm, coefficients, member_Mc, theta_norm

__all__ = [
    "DualFamily",
    "build_dual",
    "dual_from_vectors",
    "example_g2_dual",
    "apply_V",
    "v_norm_certificate",
    "expansion_residual",
    "theta_f_norm",
]

RECONSTRUCTION_TOL = 1e-12


@dataclass(frozen=True)
class DualFamily:
    """Rows of ``f`` are the dual vectors ``f_i``; rows of ``h`` (block frames
    only) are the canonical-sequence witnesses ``h_i``."""

    f: np.ndarray = field(repr=False)
    h: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def m(self) -> int:
        return self.f.shape[0]

    @property
    def dim(self) -> int:
        return self.f.shape[1]

    def to_dict(self) -> dict:
        ii, jj = np.nonzero(self.f)
        return {
            "shape": [self.m, self.dim],
            "entries": [{"i": int(i), "j": int(j), "value": float(self.f[i, j])}
                        for i, j in zip(ii, jj)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "DualFamily":
        try:
            m, n = (int(x) for x in data["shape"])
            F = np.zeros((m, n))
            for k, e in enumerate(data["entries"]):
                F[int(e["i"]), int(e["j"])] = float(e["value"])
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise ValueError(f"dual: malformed sparse encoding ({exc})") from exc
        return cls(F)

    @classmethod
    def from_json(cls, text: str) -> "DualFamily":
        return cls.from_dict(json.loads(text))


def _check_reconstruction(frame, F):
    if F.shape != frame.matrix.shape:
        raise ValueError(f"dual family of shape {F.shape} does not match frame {frame.matrix.shape}")
    # sum_i g_i(f) f_i = F^T G f must be the identity map
    err = np.max(np.abs(F.T @ frame.matrix - np.eye(frame.dim)))
    if err > RECONSTRUCTION_TOL:
        raise ValueError(f"dual family does not reconstruct (max error {err:.3g})")


def build_dual(frame: BlockFrameSpec) -> DualFamily:
    """Dual vectors and witnesses for a block frame.

    >>> from thetaframe.frames import example_g1
    >>> build_dual(example_g1(3)).f.tolist()
    [[1.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.5, 0.0], [0.0, 0.0, 0.3333333333333333]]
    """
    if not isinstance(frame, BlockFrameSpec):
        raise TypeError("build_dual needs a BlockFrameSpec; pass general duals to dual_from_vectors")
    F = np.zeros((frame.m, frame.dim))
    op = frame.openers
    F[op, np.arange(frame.dim)] = 1.0 / frame.t[op]
    H = np.zeros((frame.m, frame.dim))
    H[np.arange(frame.m), frame.block_index] = 1.0 / frame.t
    _check_reconstruction(frame, F)
    for i in range(frame.m):
        if not member_Mc(frame, canonical(i), H[i]):
            raise AssertionError(f"witness h_{i} is not admissible")
    F.setflags(write=False)
    H.setflags(write=False)
    return DualFamily(F, H)


def dual_from_vectors(frame, vectors) -> DualFamily:
    """Wrap an explicitly supplied dual after checking it reconstructs."""
    F = np.array(vectors, dtype=float)
    _check_reconstruction(frame, F)
    F.setflags(write=False)
    return DualFamily(F)


def example_g2_dual(dim: int) -> np.ndarray:
    """``{e_1, e_2, 0, e_3, 0, ..., e_dim}`` matching :func:`example_g2`."""
    F = np.zeros((2 * (dim - 1), dim))
    F[0, 0] = 1.0
    F[1::2, np.arange(1, dim)] = np.eye(dim - 1)
    return F


def apply_V(dual: DualFamily, c: SequenceLike, s: int = 0,
            hierarchy: Optional[WeightHierarchy] = None) -> Tuple[np.ndarray, List[float]]:
    """Synthesis ``sum_i c_i f_i`` and the level-``s`` norms of its partial sums."""
    c = as_sequence(c).padded(dual.m)
    a = level_weights(hierarchy, s, dual.dim)
    partial = np.cumsum(c[:, None] * dual.f, axis=0)
    norms = np.linalg.norm(partial * a[None, :], axis=1)
    return partial[-1].copy(), norms.tolist()


def theta_f_norm(dual: DualFamily, c: SequenceLike, s: int = 0,
                 hierarchy: Optional[WeightHierarchy] = None) -> float:
    """Supremum of the partial-sum norms of the synthesis series."""
    _, norms = apply_V(dual, c, s, hierarchy)
    return float(max(norms, default=0.0))


def expansion_residual(frame, dual: DualFamily, f, s: int = 0,
                       hierarchy: Optional[WeightHierarchy] = None) -> float:
    """``||V(analysis(f)) - f||_s``."""
    f = np.asarray(f, dtype=float)
    out, _ = apply_V(dual, frame.apply(f), s, hierarchy)
    a = level_weights(hierarchy, s, frame.dim)
    return float(np.linalg.norm(a * (out - f)))


def v_norm_certificate(frame, dual: DualFamily, hierarchy: Optional[WeightHierarchy] = None,
                       n_samples: int = 200, seed: int = 0, method: Optional[str] = None) -> List[dict]:
    """Per-level bound of the synthesis operator.

    For every level the dual-vector norms ``||f_i||_s`` are compared with the
    canonical-sequence norms, and an empirical operator constant ``K_s`` is
    taken as the largest ``||V c||_s / |||c|||_s`` over the canonical vectors
    and ``n_samples`` Gaussian coefficient sequences.
    """
    levels = range(hierarchy.levels) if hierarchy is not None else [0]
    block = isinstance(frame, BlockFrameSpec)
    openers = set(frame.openers.tolist()) if block else set()
    rng = np.random.default_rng(seed)
    samples = rng.standard_normal((n_samples, frame.m))
    out = []
    for s in levels:
        a = level_weights(hierarchy, s, frame.dim)
        per_i = []
        for i in range(frame.m):
            fi = float(np.linalg.norm(a * dual.f[i]))
            zi = canonical_vector_norm(frame, i, s, hierarchy)
            rec = {"i": i, "dual_norm": fi, "canonical_norm": zi,
                   "ok": fi <= zi * (1 + 1e-12)}
            if block:
                rec["equality"] = abs(fi - zi) <= 1e-12 * zi if i in openers else fi == 0.0
            per_i.append(rec)
        K = 0.0
        for c in np.vstack([np.eye(frame.m), samples]):
            Vc, _ = apply_V(dual, c, s, hierarchy)
            nc = theta_norm(frame, c, s, hierarchy, method).value
            K = max(K, float(np.linalg.norm(a * Vc)) / nc)
        out.append({
            "level": s,
            "K": K,
            "per_i": per_i,
            "dual_bound_ok": all(r["ok"] for r in per_i),
            "bounded": bool(np.isfinite(K)) and (K <= 1 + 1e-9 if block else True),
        })
    return out
