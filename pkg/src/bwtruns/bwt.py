"""Burrows-Wheeler transform of circular words (conjugate sort, no sentinel)."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction

import numpy as np

from .words import WordError, check_word, count_runs, lyndon_rotation, reverse

MATRIX_RENDER_LIMIT = 64

# below this length the pure-Python doubling loop beats numpy's call overhead
_NUMPY_THRESHOLD = 256


class InvalidImageError(WordError):
    """The word is not the conjugate-BWT of any single word."""


class MatrixTooLargeError(WordError):
    pass


@dataclass(frozen=True)
class BwtResult:
    transformed: str
    bw_array: tuple[int, ...]  # 1-based rotation indices in sorted order

    def to_dict(self) -> dict:
        return {"bwt": self.transformed, "bw_array": list(self.bw_array)}


def _result(w: str, order) -> BwtResult:
    n = len(w)
    transformed = "".join(w[(i - 1) % n] for i in order)
    return BwtResult(transformed, tuple(i + 1 for i in order))


def bwt_naive(w: str) -> BwtResult:
    """Sort all materialized rotations; ties (periodic words) by rotation index."""
    check_word(w, nonempty=True)
    n = len(w)
    order = sorted(range(n), key=lambda i: (w[i:] + w[:i], i))
    return _result(w, order)


def _cyclic_ranks_py(w: str) -> list[int]:
    n = len(w)
    rank = [0 if c == "a" else 1 for c in w]
    classes = len(set(rank))
    step = 1
    while classes < n and step < n:
        keys = [(rank[i], rank[(i + step) % n]) for i in range(n)]
        table = {key: r for r, key in enumerate(sorted(set(keys)))}
        rank = [table[key] for key in keys]
        if len(table) == classes:
            # no class split: the partition is final for every longer prefix
            break
        classes = len(table)
        step *= 2
    return rank


def _cyclic_ranks_np(w: str) -> np.ndarray:
    n = len(w)
    rank = np.frombuffer(w.encode("ascii"), dtype=np.uint8).astype(np.int64) - ord("a")
    classes = int(np.unique(rank).size)
    step = 1
    while classes < n and step < n:
        key = rank * n + np.roll(rank, -step)
        uniq, rank = np.unique(key, return_inverse=True)
        rank = rank.astype(np.int64).reshape(-1)
        if uniq.size == classes:
            break
        classes = int(uniq.size)
        step *= 2
    return rank


def bwt_fast(w: str) -> BwtResult:
    """Prefix-doubling sort of the cyclic shifts.

    Rank of shift i at length 2L is the pair (rank_L[i], rank_L[i+L mod n]).
    Doubling stops once every shift is distinct or the classes stop
    splitting, which is what happens for periodic words.
    """
    check_word(w, nonempty=True)
    n = len(w)
    if n < _NUMPY_THRESHOLD:
        rank = _cyclic_ranks_py(w)
        order = sorted(range(n), key=lambda i: (rank[i], i))
    else:
        rank = _cyclic_ranks_np(w)
        order = np.argsort(rank, kind="stable").tolist()
    return _result(w, order)


def bwt(w: str) -> str:
    return bwt_fast(w).transformed


def r(w: str) -> int:
    """Number of runs of the BWT of ``w``."""
    return count_runs(bwt_fast(w).transformed)


def rho(w: str) -> Fraction:
    """Runs-ratio of ``w`` against its reverse, as a reduced fraction >= 1."""
    check_word(w, nonempty=True)
    fwd, rev = r(w), r(reverse(w))
    return Fraction(max(fwd, rev), min(fwd, rev))


def format_rho(value: Fraction) -> str:
    """Two decimals rounded half-up, trailing zeros dropped: 8/3 -> '2.67', 3/2 -> '1.5'."""
    d = (Decimal(value.numerator) / Decimal(value.denominator)).quantize(
        Decimal("0.01"), rounding=ROUND_HALF_UP
    )
    text = f"{d:f}".rstrip("0").rstrip(".")
    return text


def word_record(w: str) -> dict:
    """JSON-ready summary: word, bwt, bw_array, r, r_rev, rho_num, rho_den."""
    res = bwt_fast(w)
    fwd = count_runs(res.transformed)
    rev = r(reverse(w))
    value = Fraction(max(fwd, rev), min(fwd, rev))
    return {
        "word": w,
        "bwt": res.transformed,
        "bw_array": list(res.bw_array),
        "r": fwd,
        "r_rev": rev,
        "rho_num": value.numerator,
        "rho_den": value.denominator,
    }


def bwt_invert(t: str) -> str:
    """Least word whose conjugate-BWT is ``t``.

    The BWT only fixes a conjugacy class, so the Lyndon representative
    (or its power, for periodic inputs) is returned.
    """
    check_word(t, nonempty=True)
    n = len(t)
    # stable sort of the last column gives the first column; succ[j] is the
    # row holding rotation j shifted left by one
    succ = sorted(range(n), key=lambda i: (t[i], i))
    first = [t[i] for i in succ]
    seen = [False] * n
    cycles = []
    for start in range(n):
        if seen[start]:
            continue
        letters = []
        j = start
        while not seen[j]:
            seen[j] = True
            letters.append(first[j])
            j = succ[j]
        cycles.append("".join(letters))
    roots = {lyndon_rotation(c)[0] for c in cycles}
    if len(roots) != 1 or any(len(c) != len(cycles[0]) for c in cycles):
        raise InvalidImageError(f"{t!r} is not the BWT of a single word")
    root = roots.pop()
    word = root * len(cycles)
    if bwt_fast(word).transformed != t:
        raise InvalidImageError(f"{t!r} is not the BWT of a single word")
    return word


def bwt_matrix(w: str, limit: int = MATRIX_RENDER_LIMIT) -> list[tuple[int, str]]:
    """Sorted rotations as ``(rotation index, rotation)`` rows."""
    check_word(w, nonempty=True)
    if len(w) > limit:
        raise MatrixTooLargeError(
            f"matrix of a length-{len(w)} word exceeds the render limit {limit}; "
            "use bwt_fast for the transform itself"
        )
    res = bwt_fast(w)
    return [(i, w[i - 1:] + w[:i - 1]) for i in res.bw_array]


def render_matrix(w: str, limit: int = MATRIX_RENDER_LIMIT) -> str:
    """Fixed-width text: rank, rotation index, rotation, last letter."""
    rows = bwt_matrix(w, limit)
    n = len(w)
    width = len(str(n))
    lines = []
    for rank, (idx, rot) in enumerate(rows, start=1):
        lines.append(f"{rank:>{width}} {idx:>{width}}  {rot}  {rot[-1]}")
    return "\n".join(lines)
