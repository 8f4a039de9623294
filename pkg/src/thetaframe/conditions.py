"""Checks of the three structural conditions and the resulting verdicts.

* A1 (subadditivity): for admissible ``f`` in ``M^c`` and ``h`` in ``M^d``
  there is ``r`` in ``M^{c+d}`` with ``||r|| <= ||f|| + ||h||``.  At a finite
  truncation the infima are attained, so this is the triangle inequality of
  the induced norm; block frames additionally get an explicit ``r``.
* A2 (vanishing tails): some tail ``c^(k)`` has induced norm below ``eps``.
* A3 (lower bound): ``A ||f|| <= ||f~||`` for every ``f~`` admissible for
  the coefficients of ``f``, i.e. ``A ||f|| <= |||g(f)|||``.

Given A1, the frame property is equivalent to A3 and the canonical vectors
form a basis exactly when A2 holds; :func:`assemble_verdicts` folds the
per-level checks into those conclusions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from .frames import BlockFrameSpec, level_weights
from .hierarchy import WeightHierarchy
from .reconstruction import DualFamily, build_dual, expansion_residual, v_norm_certificate
from .sequences import SequenceLike, as_sequence, tail
from .theta import block_maxima, coefficients, member_Mc, tail_norm_profile, theta_norm

__all__ = [
    "A1Result",
    "A2Result",
    "A3Result",
    "LevelReport",
    "ConditionReport",
    "check_A1",
    "construct_r",
    "check_A2",
    "check_A3",
    "default_sample",
    "assemble_verdicts",
    "DEFAULT_EPS_GRID",
]

DEFAULT_EPS_GRID = (1.0, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6)
TRIANGLE_RTOL = 1e-9
TIGHT_TOL = 1e-9


@dataclass(frozen=True)
class A1Result:
    holds: bool
    lhs: float
    rhs: float
    r: Optional[np.ndarray] = field(default=None, repr=False)
    certificate_ok: Optional[bool] = None


@dataclass(frozen=True)
class A2Result:
    holds: bool
    k: Optional[int]
    profile: list = field(repr=False)


@dataclass(frozen=True)
class A3Result:
    holds: bool
    A: float
    worst: Optional[np.ndarray] = field(default=None, repr=False)
    exact: bool = False


def construct_r(frame: BlockFrameSpec, c: SequenceLike, d: SequenceLike, f, h,
                s: int = 0, hierarchy: Optional[WeightHierarchy] = None) -> np.ndarray:
    """Explicit element of ``M^{c+d}`` built from block maxima of ``c + d``.

    ``f`` and ``h`` must be admissible for ``c`` and ``d``; the result does
    not depend on them beyond that, but its norm is bounded by
    ``||f||_s + ||h||_s``.
    """
    if not isinstance(frame, BlockFrameSpec):
        raise TypeError("construct_r needs a BlockFrameSpec")
    if not member_Mc(frame, c, f, s):
        raise ValueError("f is not admissible for c")
    if not member_Mc(frame, d, h, s):
        raise ValueError("h is not admissible for d")
    level_weights(hierarchy, s, frame.dim)
    return block_maxima(frame, as_sequence(c) + as_sequence(d))


def check_A1(frame, c: SequenceLike, d: SequenceLike, s: int = 0,
             hierarchy: Optional[WeightHierarchy] = None,
             method: Optional[str] = None) -> A1Result:
    """Triangle inequality of the induced norm for the pair ``(c, d)``."""
    c, d = as_sequence(c), as_sequence(d)
    Nc = theta_norm(frame, c, s, hierarchy, method)
    Nd = theta_norm(frame, d, s, hierarchy, method)
    Ncd = theta_norm(frame, c + d, s, hierarchy, method)
    rhs = Nc.value + Nd.value
    holds = Ncd.value <= rhs + TRIANGLE_RTOL * (1.0 + rhs)
    if not isinstance(frame, BlockFrameSpec):
        return A1Result(bool(holds), Ncd.value, rhs)
    a = level_weights(hierarchy, s, frame.dim)
    r = construct_r(frame, c, d, Nc.witness, Nd.witness, s, hierarchy)
    bound = np.linalg.norm(a * Nc.witness) + np.linalg.norm(a * Nd.witness)
    cert = member_Mc(frame, c + d, r, s) and np.linalg.norm(a * r) <= bound * (1 + 1e-12)
    return A1Result(bool(holds and cert), Ncd.value, rhs, r, bool(cert))


def check_A2(frame, c: SequenceLike, s: int = 0, eps: float = 1e-6,
             hierarchy: Optional[WeightHierarchy] = None,
             method: Optional[str] = None) -> A2Result:
    """First tail index ``k`` whose tail has induced norm below ``eps``.

    Block frames are scanned at block endpoints; other frames at every
    index ``0..m``.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    c = as_sequence(c)
    if isinstance(frame, BlockFrameSpec):
        profile = tail_norm_profile(frame, c, s, hierarchy, method or "closed-form")
    else:
        coefficients(frame, c)
        profile = [(k, theta_norm(frame, tail(c, k), s, hierarchy, method).value)
                   for k in range(frame.m + 1)]
    for k, v in profile:
        if v < eps:
            return A2Result(True, k, profile)
    return A2Result(False, None, profile)


def check_A3(frame, sample: Sequence, s: int = 0,
             hierarchy: Optional[WeightHierarchy] = None,
             method: Optional[str] = None) -> A3Result:
    """Smallest ratio ``|||g(f)|||_s / ||f||_s`` over a sample of vectors.

    The ratio never exceeds one because ``f`` itself is admissible for its
    own coefficients, so the reported constant is capped at 1.
    """
    sample = [np.asarray(f, dtype=float) for f in sample]
    if not sample:
        raise ValueError("check_A3 needs a non-empty sample")
    a = level_weights(hierarchy, s, frame.dim)
    best, worst = np.inf, None
    for f in sample:
        nf = float(np.linalg.norm(a * f))
        if nf == 0.0:
            continue
        ratio = theta_norm(frame, frame.apply(f), s, hierarchy, method).value / nf
        if ratio < best:
            best, worst = ratio, f
    if worst is None:
        raise ValueError("check_A3 sample contains only zero vectors")
    A = min(best, 1.0)
    exact = isinstance(frame, BlockFrameSpec) and method in (None, "closed-form")
    return A3Result(bool(A > 0), float(A), worst, exact)


def default_sample(dim: int, n_random: int = 200, rng=None) -> List[np.ndarray]:
    """Gaussian vectors plus every basis vector and every ``e_j +- e_l``."""
    rng = np.random.default_rng(rng)
    out = list(rng.standard_normal((n_random, dim)))
    eye = np.eye(dim)
    out.extend(eye)
    for j in range(dim):
        for l in range(j + 1, dim):
            out.append(eye[j] + eye[l])
            out.append(eye[j] - eye[l])
    return out


@dataclass
class LevelReport:
    level: int
    a1: dict
    a2: dict
    a3: dict
    bessel_bound: Optional[float]
    lower_bound: Optional[float]
    tight: bool
    reconstruction: dict

    @property
    def frame(self) -> bool:
        return bool(self.a3["holds"])

    @property
    def cb(self) -> bool:
        return bool(self.a2["holds"])

    @property
    def banach_frame(self) -> bool:
        return self.frame and bool(self.reconstruction.get("bounded", False))

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "a1": self.a1,
            "a2": self.a2,
            "a3": self.a3,
            "frame": {
                "bessel_bound": self.bessel_bound,
                "lower_bound": self.lower_bound,
                "tight": self.tight,
                "holds": self.frame,
                "provenance": "frame property <=> A3, given A1",
            },
            "cb": {"holds": self.cb, "provenance": "canonical basis <=> A2, given A1"},
            "banach_frame": {
                "holds": self.banach_frame,
                "provenance": "frame plus bounded reconstruction operator at this level",
            },
            "reconstruction": self.reconstruction,
        }


@dataclass
class ConditionReport:
    levels: List[LevelReport]
    seed: int
    exact: bool
    has_dual: bool

    @property
    def f_bessel(self) -> bool:
        return all(L.a1["holds"] and L.a2["holds"] for L in self.levels)

    @property
    def pre_f_frame(self) -> bool:
        return all(L.a1["holds"] and L.a2["holds"] and L.a3["holds"] for L in self.levels)

    @property
    def f_frame(self) -> bool:
        return self.pre_f_frame and self.has_dual and all(
            L.reconstruction.get("bounded", False) and L.reconstruction.get("exact", False)
            for L in self.levels)

    @property
    def tight(self) -> bool:
        return all(L.tight for L in self.levels)

    @property
    def all_hold(self) -> bool:
        return self.f_frame and all(L.frame and L.cb and L.banach_frame for L in self.levels)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "verdict_kind": "exact" if self.exact else "empirical",
            "levels": [L.to_dict() for L in self.levels],
            "f_bessel": {"holds": self.f_bessel, "provenance": "A1 and A2 at every level"},
            "pre_f_frame": {"holds": self.pre_f_frame,
                            "provenance": "A1, A2 and A3 at every level"},
            "f_frame": {"holds": self.f_frame,
                        "provenance": "pre-F-frame plus a reconstruction operator bounded at every level"},
            "tight": self.tight,
        }

    def summary_rows(self) -> List[dict]:
        rows = []
        for L in self.levels:
            rows.append({
                "level": L.level,
                "a1": L.a1["holds"],
                "a2": L.a2["holds"],
                "a3": L.a3["holds"],
                "A_s": L.lower_bound,
                "B_s": L.bessel_bound,
                "tight": L.tight,
                "frame": L.frame,
                "cb": L.cb,
                "banach_frame": L.banach_frame,
                "K_s": L.reconstruction.get("K"),
            })
        return rows


def assemble_verdicts(frame, hierarchy: Optional[WeightHierarchy] = None,
                      dual: Optional[DualFamily] = None, n_samples: int = 200,
                      n_pairs: int = 200, eps_grid: Sequence[float] = DEFAULT_EPS_GRID,
                      seed: int = 0, method: Optional[str] = None,
                      n_a2: int = 20) -> ConditionReport:
    """Run every check at every level and fold them into verdicts.

    Parameters
    ----------
    frame : BlockFrameSpec or GeneralFrameSpec
    hierarchy : WeightHierarchy, optional
        Levels to examine; a single unweighted level when omitted.
    dual : DualFamily, optional
        Reconstruction family.  Built automatically for block frames;
        without one a general frame cannot be certified as an F-frame.
    n_samples, n_pairs, n_a2 : int
        Gaussian vectors for A3, coefficient pairs for A1, and sequences
        tested against the whole ``eps_grid`` for A2.
    seed : int
        Seeds every random draw; stored in the report.
    method : str, optional
        Forwarded to :func:`thetaframe.theta.theta_norm`.
    """
    block = isinstance(frame, BlockFrameSpec)
    if dual is None and block:
        dual = build_dual(frame)
    exact = block and method in (None, "closed-form")
    levels = range(hierarchy.levels) if hierarchy is not None else [0]
    certs = (v_norm_certificate(frame, dual, hierarchy, n_samples=n_samples, seed=seed, method=method)
             if dual is not None else None)

    reports = []
    for s in levels:
        rng = np.random.default_rng([seed, s])
        pairs = rng.standard_normal((n_pairs, 2, frame.m))
        failed = None
        cert_all = True
        for c, d in pairs:
            res = check_A1(frame, c, d, s, hierarchy, method)
            if res.certificate_ok is False:
                cert_all = False
            if not res.holds and failed is None:
                failed = {"c": c.tolist(), "d": d.tolist(), "lhs": res.lhs, "rhs": res.rhs}
        a1 = {"holds": failed is None, "pairs": n_pairs, "counterexample": failed}
        if block:
            a1["constructive_certificate"] = cert_all

        a2_ok, evidence = True, []
        for c in pairs[:n_a2, 0]:
            ks = []
            for eps in eps_grid:
                r = check_A2(frame, c, s, eps, hierarchy, method)
                a2_ok &= r.holds
                ks.append(r.k)
            evidence.append({"k": ks, "profile_head": r.profile[0][1]})
        a2 = {"holds": bool(a2_ok), "eps_grid": list(eps_grid), "evidence": evidence}

        r3 = check_A3(frame, default_sample(frame.dim, n_samples, rng), s, hierarchy, method)
        a3 = {"holds": r3.holds, "A": r3.A,
              "worst": r3.worst.tolist() if r3.worst is not None else None,
              "kind": "exact" if r3.exact else "empirical"}

        rec = {"bounded": False, "exact": False, "note": "no dual family supplied"}
        if certs is not None:
            cert = certs[s]
            resid = max(expansion_residual(frame, dual, f, s, hierarchy)
                        for f in default_sample(frame.dim, 50, rng))
            rec = {"K": cert["K"], "bounded": cert["bounded"] and cert["dual_bound_ok"],
                   "dual_bound_ok": cert["dual_bound_ok"], "max_residual": resid,
                   "exact": resid <= 1e-12}

        bessel = 1.0 if a1["holds"] else None
        lower = r3.A if r3.holds else None
        tight = bool(lower is not None and bessel is not None and abs(bessel - lower) <= TIGHT_TOL)
        reports.append(LevelReport(s, a1, a2, a3, bessel, lower, tight, rec))
    return ConditionReport(reports, seed, exact, dual is not None)
