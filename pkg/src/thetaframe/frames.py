"""Functional sequences on a finite orthonormal basis.

Two representations are provided.  :class:`BlockFrameSpec` describes the
block-repetition family ``g_i(f) = t_i <f, e_j>`` where basis vector ``e_j``
is used by the contiguous index range ``k_{j-1} <= i < k_j`` (0-based).
:class:`GeneralFrameSpec` holds an arbitrary ``m x n`` matrix whose rows are
the Riesz representers of the functionals.

Functionals always act through the level-0 pairing; a level ``s`` only
changes which norm is used on the vector space.
"""

from __future__ import annotations

import json
from typing import Optional, Sequence, Tuple

import numpy as np

from .hierarchy import WeightHierarchy
from .linalg import extreme_singular_values_squared
from .sequences import ScalarSequence

__all__ = [
    "BlockFrameSpec",
    "GeneralFrameSpec",
    "build_block_frame",
    "example_g1",
    "example_g2",
    "identity_frame",
    "analysis",
    "functional_dual_norm",
    "l2_frame_bounds",
    "level_weights",
    "frame_from_dict",
]


def level_weights(hierarchy: Optional[WeightHierarchy], s: int, dim: int) -> np.ndarray:
    """Weights of level ``s``; ``hierarchy=None`` means the unweighted level 0."""
    if hierarchy is None:
        if s != 0:
            raise ValueError(f"level {s} requested without a hierarchy")
        return np.ones(dim)
    if hierarchy.dim != dim:
        raise ValueError(
            f"hierarchy dimension {hierarchy.dim} does not match basis dimension {dim}")
    return hierarchy.level(s)


class _Frame:
    """Behaviour shared by both frame representations."""

    matrix: np.ndarray

    @property
    def m(self) -> int:
        """Number of functionals."""
        return self.matrix.shape[0]

    @property
    def dim(self) -> int:
        """Dimension of the underlying basis."""
        return self.matrix.shape[1]

    def _check_vector(self, f) -> np.ndarray:
        f = np.asarray(f, dtype=float)
        if f.shape != (self.dim,):
            raise ValueError(f"vector of length {self.dim} expected, got shape {f.shape}")
        return f

    def _check_index(self, i: int) -> int:
        if not 0 <= i < self.m:
            raise IndexError(f"functional index {i} out of range 0..{self.m - 1}")
        return i

    def apply(self, f) -> np.ndarray:
        """Values ``g_i(f)`` as a length-``m`` array."""
        return self.matrix @ self._check_vector(f)

    def analysis(self, f) -> ScalarSequence:
        return ScalarSequence(self.apply(f))

    def dual_norm(self, i: int, s: int = 0, hierarchy: Optional[WeightHierarchy] = None) -> float:
        """Norm of ``g_i`` as a functional on level ``s``.

        With ``||f||_s = ||a_s * f||`` the dual norm of the row ``g`` is
        ``||g / a_s||``.
        """
        self._check_index(i)
        a = level_weights(hierarchy, s, self.dim)
        return float(np.linalg.norm(self.matrix[i] / a))

    def frame_bounds(self, s: int = 0, hierarchy: Optional[WeightHierarchy] = None) -> Tuple[float, float]:
        a = level_weights(hierarchy, s, self.dim)
        return extreme_singular_values_squared(self.matrix / a[None, :])


class GeneralFrameSpec(_Frame):
    """Dense functional matrix; row ``i`` represents ``g_i``.

    >>> GeneralFrameSpec([[1.0, 0.0], [0.0, 2.0]]).m
    2
    """

    def __init__(self, matrix):
        G = np.array(matrix, dtype=float)
        if G.ndim != 2 or G.shape[0] == 0 or G.shape[1] == 0:
            raise ValueError("frame matrix must be a non-empty 2-D array")
        if not np.all(np.isfinite(G)):
            raise ValueError("frame matrix entries must be finite")
        zero = np.flatnonzero(~np.any(G != 0.0, axis=1))
        if zero.size:
            raise ValueError(f"row {zero[0]} of the frame matrix is zero; every functional must be nonzero")
        G.setflags(write=False)
        self.matrix = G

    def __repr__(self):
        return f"GeneralFrameSpec(m={self.m}, dim={self.dim})"

    def __eq__(self, other):
        if not isinstance(other, GeneralFrameSpec):
            return NotImplemented
        return np.array_equal(self.matrix, other.matrix)

    def as_matrix(self) -> "GeneralFrameSpec":
        return self

    def to_dict(self) -> dict:
        return {"matrix": self.matrix.tolist()}


class BlockFrameSpec(_Frame):
    """Block-repetition functionals ``g_i = t_i <., e_j>``.

    Parameters
    ----------
    multiplicities : sequence of int
        ``n_j >= 1`` for each basis vector ``e_j``; the basis dimension is the
        number of blocks.
    t : sequence of float
        One nonzero scalar per functional, ``len(t) == sum(multiplicities)``.

    Notes
    -----
    ``endpoints[j]`` is the cumulative count ``k_j`` with ``endpoints[0] = 0``,
    so block ``j`` (0-based) covers ``endpoints[j] <= i < endpoints[j + 1]``.
    """

    def __init__(self, multiplicities: Sequence[int], t: Sequence[float]):
        mult = np.array(multiplicities, dtype=int).ravel()
        t = np.array(t, dtype=float).ravel()
        if mult.size == 0:
            raise ValueError("a block frame needs at least one block")
        if np.any(mult < 1):
            j = int(np.flatnonzero(mult < 1)[0])
            raise ValueError(f"block {j} is empty; multiplicities must be >= 1")
        if t.size != mult.sum():
            raise ValueError(f"expected {mult.sum()} scalars t_i, got {t.size}")
        if not np.all(np.isfinite(t)):
            raise ValueError("scalars t_i must be finite")
        if np.any(t == 0.0):
            i = int(np.flatnonzero(t == 0.0)[0])
            raise ValueError(f"scalar t[{i}] is zero; every functional must be nonzero")
        ends = np.concatenate([[0], np.cumsum(mult)])
        blk = np.repeat(np.arange(mult.size), mult)
        G = np.zeros((t.size, mult.size))
        G[np.arange(t.size), blk] = t
        for arr in (mult, t, ends, blk, G):
            arr.setflags(write=False)
        self.multiplicities = mult
        self.t = t
        self.endpoints = ends
        self.block_index = blk
        self.matrix = G

    def __repr__(self):
        return f"BlockFrameSpec(multiplicities={self.multiplicities.tolist()}, t={self.t.tolist()})"

    def __eq__(self, other):
        if not isinstance(other, BlockFrameSpec):
            return NotImplemented
        return (np.array_equal(self.multiplicities, other.multiplicities)
                and np.array_equal(self.t, other.t))

    @property
    def openers(self) -> np.ndarray:
        """First functional index of each block."""
        return self.endpoints[:-1]

    def block_of(self, i: int) -> int:
        return int(self.block_index[self._check_index(i)])

    def block_slice(self, j: int) -> slice:
        return slice(int(self.endpoints[j]), int(self.endpoints[j + 1]))

    def as_matrix(self) -> GeneralFrameSpec:
        return GeneralFrameSpec(self.matrix)

    def apply(self, f) -> np.ndarray:
        f = self._check_vector(f)
        return self.t * f[self.block_index]

    def dual_norm(self, i: int, s: int = 0, hierarchy: Optional[WeightHierarchy] = None) -> float:
        a = level_weights(hierarchy, s, self.dim)
        return float(abs(self.t[self._check_index(i)]) / a[self.block_index[i]])

    def to_dict(self) -> dict:
        blocks = []
        for j, n in enumerate(self.multiplicities):
            blocks.append({"mult": int(n), "t": self.t[self.block_slice(j)].tolist()})
        return {"blocks": blocks}

    @classmethod
    def from_matrix(cls, matrix) -> "BlockFrameSpec":
        """Recognise a block-repetition structure in a dense matrix.

        Every row must be a nonzero multiple of one basis vector, and the
        basis vectors must appear in order ``e_1, e_1, ..., e_2, ...`` with
        no gaps and no return to an earlier vector.
        """
        G = GeneralFrameSpec(matrix).matrix
        support = G != 0.0
        if np.any(support.sum(axis=1) != 1):
            raise ValueError("every row must be a multiple of a single basis vector")
        cols = np.argmax(support, axis=1)
        steps = np.diff(cols)
        if cols[0] != 0 or np.any((steps != 0) & (steps != 1)) or cols[-1] != G.shape[1] - 1:
            raise ValueError(
                "basis vectors are not repeated in contiguous ascending blocks")
        mult = np.bincount(cols, minlength=G.shape[1])
        return cls(mult, G[np.arange(G.shape[0]), cols])


def build_block_frame(blocks) -> BlockFrameSpec:
    """Build a block frame from ``[(n_j, (t values...)), ...]``.

    >>> build_block_frame([(2, (1, 1)), (1, (2,)), (1, (3,))]).matrix.tolist()
    [[1.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 3.0]]
    """
    mult, t = [], []
    for j, (n, tv) in enumerate(blocks):
        tv = list(np.atleast_1d(np.asarray(tv, dtype=float)))
        if len(tv) != n:
            raise ValueError(f"block {j}: multiplicity {n} but {len(tv)} scalars given")
        mult.append(n)
        t.extend(tv)
    return BlockFrameSpec(mult, t)


def example_g1(dim: int) -> BlockFrameSpec:
    """``{e_1, e_1, 2 e_2, 3 e_3, ..., dim e_dim}``; ``dim=1`` keeps only ``{e_1, e_1}``."""
    if dim < 1:
        raise ValueError("example_g1 needs dimension >= 1")
    return BlockFrameSpec([2] + [1] * (dim - 1), [1.0, 1.0] + [float(j) for j in range(2, dim + 1)])


def example_g2(dim: int) -> GeneralFrameSpec:
    """``{e_1, e_2, e_1, e_3, ..., e_1, e_dim}`` (``2 (dim - 1)`` rows)."""
    if dim < 2:
        raise ValueError("example_g2 needs dimension >= 2")
    G = np.zeros((2 * (dim - 1), dim))
    G[0::2, 0] = 1.0
    G[1::2, np.arange(1, dim)] = np.eye(dim - 1)
    return GeneralFrameSpec(G)


def identity_frame(dim: int) -> BlockFrameSpec:
    return BlockFrameSpec([1] * dim, [1.0] * dim)


def analysis(frame, f, s: int = 0, hierarchy: Optional[WeightHierarchy] = None) -> ScalarSequence:
    """Coefficient sequence ``{g_i(f)}``; identical at every level."""
    if hierarchy is not None:
        level_weights(hierarchy, s, frame.dim)
    elif s != 0:
        raise ValueError(f"level {s} requested without a hierarchy")
    return frame.analysis(f)


def functional_dual_norm(frame, i: int, s: int = 0, hierarchy: Optional[WeightHierarchy] = None) -> float:
    return frame.dual_norm(i, s, hierarchy)


def l2_frame_bounds(frame, s: int = 0, hierarchy: Optional[WeightHierarchy] = None) -> Tuple[float, float]:
    """Optimal ``(A, B)`` with ``A ||f||_s^2 <= sum g_i(f)^2 <= B ||f||_s^2``."""
    return frame.frame_bounds(s, hierarchy)


def frame_from_dict(data: dict):
    """Parse ``{"blocks": [...]}`` or ``{"matrix": [[...]]}``."""
    if not isinstance(data, dict):
        raise ValueError("frame: expected a JSON object")
    if "blocks" in data:
        blocks = data["blocks"]
        if not isinstance(blocks, list):
            raise ValueError("frame.blocks: expected a list")
        parsed = []
        for j, b in enumerate(blocks):
            if not isinstance(b, dict) or "mult" not in b or "t" not in b:
                raise ValueError(f"frame.blocks[{j}]: expected an object with 'mult' and 't'")
            parsed.append((int(b["mult"]), b["t"]))
        return build_block_frame(parsed)
    if "matrix" in data:
        return GeneralFrameSpec(data["matrix"])
    raise ValueError("frame: expected a 'blocks' or 'matrix' field")


def frame_to_json(frame) -> str:
    return json.dumps(frame.to_dict())


def frame_from_json(text: str):
    return frame_from_dict(json.loads(text))
