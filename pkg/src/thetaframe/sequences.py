"""Finitely supported real scalar sequences.

A :class:`ScalarSequence` stores the entries ``c_1, ..., c_m`` of a sequence
whose tail beyond ``m`` is implicitly zero.  Trailing zeros are stripped on
construction, so two sequences that differ only by trailing zeros are equal
and hash identically.

Indices in this package are 0-based: ``c[0]`` is the first coordinate.
"""

from __future__ import annotations

import json
import math
from typing import Iterable, Union

import numpy as np

__all__ = [
    "ScalarSequence",
    "as_sequence",
    "lp_norm",
    "tail",
    "solid_dominates",
    "canonical",
]


class ScalarSequence:
    """Immutable real sequence with an implicit zero tail.

    Parameters
    ----------
    entries : iterable of float
        Leading coordinates.  Every entry must be finite.

    Examples
    --------
    >>> ScalarSequence([1, 2, 0, 0]) == ScalarSequence([1, 2])
    True
    >>> ScalarSequence([1, 2])[5]
    0.0
    """

    __slots__ = ("_entries",)

    def __init__(self, entries: Iterable[float] = ()):
        arr = np.array(list(entries) if not isinstance(entries, np.ndarray) else entries,
                       dtype=float).ravel()
        if not np.all(np.isfinite(arr)):
            raise ValueError("sequence entries must be finite")
        nz = np.flatnonzero(arr)
        arr = arr[: nz[-1] + 1] if nz.size else arr[:0]
        # -0.0 would make equal sequences print differently
        arr = arr + 0.0
        arr.setflags(write=False)
        self._entries = arr

    @property
    def entries(self) -> np.ndarray:
        """Read-only array of the stored (trailing-zero stripped) entries."""
        return self._entries

    @property
    def support_length(self) -> int:
        """Index one past the last nonzero coordinate."""
        return self._entries.size

    def __len__(self) -> int:
        return self._entries.size

    def __getitem__(self, i: int) -> float:
        if i < 0:
            raise IndexError("negative index into a one-sided sequence")
        return float(self._entries[i]) if i < self._entries.size else 0.0

    def __iter__(self):
        return iter(self._entries.tolist())

    def __eq__(self, other) -> bool:
        if not isinstance(other, ScalarSequence):
            return NotImplemented
        return np.array_equal(self._entries, other._entries)

    def __hash__(self) -> int:
        return hash(tuple(self._entries.tolist()))

    def __repr__(self) -> str:
        return f"ScalarSequence({self._entries.tolist()})"

    def __add__(self, other: "ScalarSequence") -> "ScalarSequence":
        other = as_sequence(other)
        m = max(len(self), len(other))
        return ScalarSequence(self.padded(m) + other.padded(m))

    def __neg__(self) -> "ScalarSequence":
        return ScalarSequence(-self._entries)

    def __sub__(self, other: "ScalarSequence") -> "ScalarSequence":
        return self + (-as_sequence(other))

    def __mul__(self, lam: float) -> "ScalarSequence":
        return ScalarSequence(float(lam) * self._entries)

    __rmul__ = __mul__

    def padded(self, m: int) -> np.ndarray:
        """Return the first ``m`` coordinates as a fresh array.

        Raises ``ValueError`` if a nonzero coordinate lies beyond ``m``.
        """
        if len(self) > m:
            raise ValueError(
                f"sequence has nonzero entries up to index {len(self) - 1}, "
                f"beyond truncation length {m}")
        out = np.zeros(m)
        out[: len(self)] = self._entries
        return out

    def to_json(self) -> str:
        return json.dumps(self._entries.tolist())

    @classmethod
    def from_json(cls, text: str) -> "ScalarSequence":
        data = json.loads(text)
        if not isinstance(data, list):
            raise ValueError("a sequence is encoded as a JSON array of numbers")
        return cls(data)


SequenceLike = Union[ScalarSequence, Iterable[float]]


def as_sequence(c: SequenceLike) -> ScalarSequence:
    return c if isinstance(c, ScalarSequence) else ScalarSequence(c)


def lp_norm(c: SequenceLike, p: Union[float, str] = 2) -> float:
    """l^p norm of a sequence, ``p >= 1`` or ``p = "sup"``.

    >>> lp_norm([3, 4])
    5.0
    >>> lp_norm([1, -2, 2], "sup")
    2.0
    """
    x = np.abs(as_sequence(c).entries)
    if isinstance(p, str):
        if p not in ("sup", "inf"):
            raise ValueError(f"invalid exponent {p!r}")
        return float(x.max()) if x.size else 0.0
    p = float(p)
    if math.isinf(p) and p > 0:
        return float(x.max()) if x.size else 0.0
    if not p >= 1:
        raise ValueError(f"exponent must be >= 1, got {p}")
    if x.size == 0:
        return 0.0
    # scale first so that large entries do not overflow x**p
    top = x.max()
    return float(top * np.sum((x / top) ** p) ** (1.0 / p))


def tail(c: SequenceLike, n: int) -> ScalarSequence:
    """Zero the first ``n`` coordinates, keeping the rest."""
    if n < 0:
        raise ValueError("tail index must be >= 0")
    x = np.array(as_sequence(c).entries)
    x[:n] = 0.0
    return ScalarSequence(x)


def solid_dominates(c: SequenceLike, d: SequenceLike) -> bool:
    """True iff ``|d_i| <= |c_i|`` for every coordinate."""
    c, d = as_sequence(c), as_sequence(d)
    m = max(len(c), len(d))
    return bool(np.all(np.abs(d.padded(m)) <= np.abs(c.padded(m))))


def canonical(i: int) -> ScalarSequence:
    """The ``i``-th canonical vector (0-based)."""
    x = np.zeros(i + 1)
    x[i] = 1.0
    return ScalarSequence(x)
