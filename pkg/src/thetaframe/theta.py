"""The sequence space induced by a functional sequence.

For a coefficient sequence ``c`` the admissible set is

    M^c_s = { f : |c_i| <= |g_i(f)| for every i },

and the level-``s`` norm of ``c`` is the smallest ``||f||_s`` over that set.
For block-repetition frames the minimiser is explicit: in block ``j`` the
constraints reduce to ``|f_j| >= max_i |c_i| / |t_i|`` (the *block maximum*),
so the optimum puts exactly that value on ``e_j``.  Any other frame goes
through the brute-force solver in :mod:`thetaframe.oracle`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from .frames import BlockFrameSpec, level_weights
from .hierarchy import WeightHierarchy
from .sequences import ScalarSequence, SequenceLike, as_sequence, tail

__all__ = [
    "ThetaNormResult",
    "member_Mc",
    "block_maxima",
    "theta_norm",
    "canonical_vector_norm",
    "tail_norm_profile",
    "coefficients",
]

CLOSED_FORM = "closed-form"
ORACLE = "oracle"


@dataclass(frozen=True)
class ThetaNormResult:
    """Value of the induced norm together with a minimiser from ``M^c_s``."""

    value: float
    witness: np.ndarray = field(repr=False)
    method: str
    level: int = 0

    def to_dict(self) -> dict:
        return {
            "value": float(self.value),
            "witness": [float(x) for x in self.witness],
            "method": self.method,
            "level": int(self.level),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "ThetaNormResult":
        return cls(float(data["value"]), np.asarray(data["witness"], dtype=float),
                   str(data["method"]), int(data["level"]))


def coefficients(frame, c: SequenceLike) -> np.ndarray:
    """``c`` padded to the frame's functional count."""
    return as_sequence(c).padded(frame.m)


def member_Mc(frame, c: SequenceLike, f, s: int = 0, rtol: float = 1e-12) -> bool:
    """Whether ``f`` lies in ``M^c``.

    The comparison allows a relative slack of ``rtol`` so that a witness
    built as ``|c_i| / |t_i|`` is not rejected by a last-bit rounding of
    ``|t_i| * (|c_i| / |t_i|)``.  Pass ``rtol=0`` for the exact test.
    """
    # every vector lies in every level at a finite truncation
    del s
    cabs = np.abs(coefficients(frame, c))
    gf = np.abs(frame.apply(f))
    return bool(np.all(cabs <= gf + rtol * cabs))


def block_maxima(frame: BlockFrameSpec, c: SequenceLike) -> np.ndarray:
    """Per-block maxima of ``|c_i| / |t_i|``.

    >>> from thetaframe.frames import example_g1
    >>> block_maxima(example_g1(3), [1, 2, 2, 3]).tolist()
    [2.0, 1.0, 1.0]
    """
    if not isinstance(frame, BlockFrameSpec):
        raise TypeError("block maxima need a BlockFrameSpec")
    ratios = np.abs(coefficients(frame, c)) / np.abs(frame.t)
    return np.maximum.reduceat(ratios, frame.openers)


def active_constraints(frame: BlockFrameSpec, c: SequenceLike) -> np.ndarray:
    """Index attaining each block maximum; lowest index wins ties."""
    ratios = np.abs(coefficients(frame, c)) / np.abs(frame.t)
    out = np.empty(frame.dim, dtype=int)
    for j in range(frame.dim):
        sl = frame.block_slice(j)
        out[j] = sl.start + int(np.argmax(ratios[sl]))
    return out


def _closed_form(frame: BlockFrameSpec, c, s, hierarchy) -> ThetaNormResult:
    a = level_weights(hierarchy, s, frame.dim)
    witness = block_maxima(frame, c)
    # hypot rescales internally, so tiny or huge coefficients do not underflow
    return ThetaNormResult(math.hypot(*(a * witness)), witness, CLOSED_FORM, s)


def theta_norm(frame, c: SequenceLike, s: int = 0,
               hierarchy: Optional[WeightHierarchy] = None,
               method: Optional[str] = None) -> ThetaNormResult:
    """Induced level-``s`` norm of ``c``.

    Parameters
    ----------
    frame : BlockFrameSpec or GeneralFrameSpec
    c : sequence
        Coefficients; nonzero entries must lie within the functional count.
    s : int
        Level; 0 is the unweighted norm.
    hierarchy : WeightHierarchy, optional
        Required for ``s > 0``.
    method : {"closed-form", "oracle"}, optional
        Defaults to the closed form for block frames and to the oracle
        otherwise.

    Examples
    --------
    >>> from thetaframe.frames import example_g1
    >>> r = theta_norm(example_g1(3), [1, 2, 2, 3])
    >>> round(r.value ** 2, 12), r.witness.tolist()
    (6.0, [2.0, 1.0, 1.0])
    """
    c = as_sequence(c)
    if method is None:
        method = CLOSED_FORM if isinstance(frame, BlockFrameSpec) else ORACLE
    if method == CLOSED_FORM:
        if not isinstance(frame, BlockFrameSpec):
            raise TypeError("the closed form is only available for block frames")
        return _closed_form(frame, c, s, hierarchy)
    if method == ORACLE:
        from .oracle import oracle_theta_norm
        return oracle_theta_norm(frame, c, s, hierarchy)
    raise ValueError(f"unknown method {method!r}")


def canonical_vector_norm(frame, i: int, s: int = 0,
                          hierarchy: Optional[WeightHierarchy] = None) -> float:
    """Norm of the ``i``-th canonical sequence, ``1 / ||g_i||*_s``."""
    return 1.0 / frame.dual_norm(i, s, hierarchy)


def tail_norm_profile(frame: BlockFrameSpec, c: SequenceLike, s: int = 0,
                      hierarchy: Optional[WeightHierarchy] = None,
                      method: str = CLOSED_FORM) -> List[Tuple[int, float]]:
    """Norms of ``tail(c, k)`` at the block endpoints ``k = k_0, ..., k_J``."""
    if not isinstance(frame, BlockFrameSpec):
        raise TypeError("tail profiles are taken at block endpoints; use a BlockFrameSpec")
    c = as_sequence(c)
    coefficients(frame, c)
    return [(int(k), theta_norm(frame, tail(c, int(k)), s, hierarchy, method).value)
            for k in frame.endpoints]
