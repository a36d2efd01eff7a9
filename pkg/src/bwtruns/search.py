"""Exhaustive search for the maximum runs-ratio over all words of a given length.

Binary words of length n <= 62 are packed into uint64 integers with the
first letter in the most significant bit (a = 0, b = 1), so integer order is
lexicographic order and a rotation is a shift/or/mask. The search walks
prefix blocks of the integer range, keeps one representative per orbit under
rotation, reversal and letter exchange, and sorts the rotations of each
representative and of its reverse in one vectorized pass.
"""

from __future__ import annotations

import itertools
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .bwt import format_rho, r, rho
from .standard import DirectiveSequence, directives_with_length, fibonacci_word, standard_plus
from .words import WordError, count_runs, reverse

DEFAULT_CAP = int(os.environ.get("BWTRUNS_CAP", 30))
MAX_PACKED_LENGTH = 62
BLOCK_BITS = 16


class SearchTooLargeError(WordError):
    pass


@dataclass
class RhoReport:
    n: int
    rho: Fraction
    witnesses: list = field(default_factory=list)
    words_scanned: int = 0
    elapsed: float = 0.0

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "rho_decimal": format_rho(self.rho),
            "rho_exact": f"{self.rho.numerator}/{self.rho.denominator}",
            "witness": self.witnesses[0] if self.witnesses else "",
            "witnesses": list(self.witnesses),
            "words_scanned": self.words_scanned,
            "seconds": round(self.elapsed, 3),
        }


CSV_COLUMNS = ["n", "rho_decimal", "rho_exact", "witness", "words_scanned", "seconds"]


@dataclass
class CatastropheReport:
    k: int
    base_word: str
    r_base: int
    extended: str
    r_extended: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.r_extended, self.r_base)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "length": len(self.base_word),
            "r_base": self.r_base,
            "r_extended": self.r_extended,
            "ratio": str(self.ratio),
        }


def pack(w: str) -> int:
    return int(w.translate(str.maketrans("ab", "01")), 2) if w else 0


def unpack(x: int, n: int) -> str:
    return format(int(x), f"0{n}b").translate(str.maketrans("01", "ab"))


def _reverse_bits(words: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros_like(words)
    one = np.uint64(1)
    for j in range(n):
        out |= ((words >> np.uint64(j)) & one) << np.uint64(n - 1 - j)
    return out


def _rotation(words: np.ndarray, n: int, i: int, mask: np.uint64) -> np.ndarray:
    if i == 0:
        return words
    return ((words << np.uint64(i)) | (words >> np.uint64(n - i))) & mask


def _min_rotation(words: np.ndarray, n: int, mask: np.uint64) -> np.ndarray:
    best = words.copy()
    for i in range(1, n):
        np.minimum(best, _rotation(words, n, i, mask), out=best)
    return best


def _bwt_runs(words: np.ndarray, n: int, mask: np.uint64) -> np.ndarray:
    """Run count of the BWT of each packed word.

    The last letter of a rotation is its lowest bit; equal rotations of a
    periodic word end in equal letters, so tie order cannot change the count.
    """
    rots = np.empty((words.size, n), dtype=np.uint64)
    for i in range(n):
        rots[:, i] = _rotation(words, n, i, mask)
    rots.sort(axis=1)
    last = rots & np.uint64(1)
    return 1 + np.count_nonzero(last[:, 1:] != last[:, :-1], axis=1)


def canonical_mask(words: np.ndarray, n: int) -> np.ndarray:
    """True where the word is the least element of its rotation/reversal/exchange orbit."""
    mask = np.uint64((1 << n) - 1)
    keep = words == _min_rotation(words, n, mask)
    cand = words[keep]
    exch = ~cand & mask
    ok = np.ones(cand.size, dtype=bool)
    for image in (_reverse_bits(cand, n), exch, _reverse_bits(exch, n)):
        ok &= cand <= _min_rotation(image, n, mask)
    keep[np.flatnonzero(keep)[~ok]] = False
    return keep


def _scan_block(args):
    """Best (num, den), witnesses and representative count for one prefix block."""
    n, start, stop = args
    mask = np.uint64((1 << n) - 1)
    words = np.arange(start, stop, dtype=np.uint64)
    reps = words[canonical_mask(words, n)]
    if reps.size == 0:
        return (0, 1), [], 0
    fwd = _bwt_runs(reps, n, mask)
    bwd = _bwt_runs(_reverse_bits(reps, n), n, mask)
    num = np.maximum(fwd, bwd)
    den = np.minimum(fwd, bwd)
    # ratios of integers <= 62 are distinct as floats, so argmax is exact
    best = int(np.argmax(num / den))
    p, q = int(num[best]), int(den[best])
    hit = num * q == den * p
    return (p, q), [int(x) for x in reps[hit]], int(reps.size)


def _blocks(n: int):
    # canonical words start with a (top bit 0), so only the lower half is scanned
    total = 1 << (n - 1) if n > 1 else 2
    size = 1 << min(BLOCK_BITS, n)
    return [(n, s, min(s + size, total)) for s in range(0, total, size)]


def _rho_max_binary(n: int, jobs: int) -> tuple[Fraction, list, int]:
    blocks = _blocks(n)
    if jobs > 1 and len(blocks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_scan_block, blocks, chunksize=max(1, len(blocks) // (8 * jobs))))
    else:
        results = [_scan_block(b) for b in blocks]
    best = Fraction(1)
    witnesses: list[int] = []
    scanned = 0
    for (p, q), wits, count in results:
        scanned += count
        if not count:
            continue
        value = Fraction(p, q)
        if value > best:
            best, witnesses = value, list(wits)
        elif value == best:
            witnesses.extend(wits)
    return best, sorted(set(unpack(x, n) for x in witnesses)), scanned


def canonical_representative(w: str) -> str:
    """Least word in the orbit of ``w`` under rotation, reversal and letter exchange."""
    if not w:
        raise WordError("empty word")
    letters = sorted(set(w) | {"a", "b"})
    images = []
    for perm in itertools.permutations(letters):
        table = str.maketrans("".join(letters), "".join(perm))
        u = w.translate(table)
        for x in (u, u[::-1]):
            xx = x + x
            images.extend(xx[i:i + len(x)] for i in range(len(x)))
    return min(images)


def _generic_runs(w: str) -> int:
    n = len(w)
    order = sorted(range(n), key=lambda i: w[i:] + w[:i])
    return count_runs("".join(w[i - 1] for i in order))


def _rho_max_generic(n: int, alphabet: str) -> tuple[Fraction, list, int]:
    best = Fraction(1)
    witnesses = []
    scanned = 0
    for letters in itertools.product(alphabet, repeat=n):
        w = "".join(letters)
        if canonical_representative(w) != w:
            continue
        scanned += 1
        fwd, bwd = _generic_runs(w), _generic_runs(w[::-1])
        value = Fraction(max(fwd, bwd), min(fwd, bwd))
        if value > best:
            best, witnesses = value, [w]
        elif value == best:
            witnesses.append(w)
    return best, witnesses, scanned


def check_length(n: int, force: bool = False, cap: int | None = None) -> None:
    cap = DEFAULT_CAP if cap is None else cap
    if n < 1:
        raise WordError("length must be >= 1")
    if n > cap and not force:
        raise SearchTooLargeError(f"n = {n} exceeds the length cap {cap}; pass force to run anyway")
    if n > MAX_PACKED_LENGTH:
        raise SearchTooLargeError(f"binary search supports n <= {MAX_PACKED_LENGTH}")


def rho_max(
    n: int,
    jobs: int = 1,
    force: bool = False,
    cap: int | None = None,
    alphabet: str = "ab",
) -> RhoReport:
    """Exact maximum of rho over all words of length ``n``.

    ``alphabet`` other than ``"ab"`` switches to an unoptimized search over
    the larger alphabet (exchange generalized to all letter permutations).
    """
    check_length(n, force, cap)
    if jobs < 1:
        raise WordError("jobs must be >= 1")
    t0 = time.perf_counter()
    if alphabet == "ab":
        best, witnesses, scanned = _rho_max_binary(n, jobs)
    else:
        best, witnesses, scanned = _rho_max_generic(n, alphabet)
    return RhoReport(n, best, witnesses, scanned, time.perf_counter() - t0)


def rho_table(n_from: int, n_to: int, jobs: int = 1, force: bool = False, cap: int | None = None):
    if n_from > n_to:
        raise WordError("n_from must be <= n_to")
    check_length(n_to, force, cap)
    return [rho_max(n, jobs, force, cap) for n in range(n_from, n_to + 1)]


def estimate_seconds(n: int) -> float:
    """Time one prefix block and scale to the whole search."""
    blocks = _blocks(n)
    t0 = time.perf_counter()
    _scan_block(blocks[len(blocks) // 2])
    return (time.perf_counter() - t0) * len(blocks)


@dataclass
class StdPlusReport:
    n: int
    rho: Fraction | None
    witness: DirectiveSequence | None
    family_size: int

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "rho_decimal": format_rho(self.rho) if self.rho is not None else "",
            "rho_exact": f"{self.rho.numerator}/{self.rho.denominator}" if self.rho is not None else "",
            "witness": str(self.witness) if self.witness is not None else "",
            "family_size": self.family_size,
        }


def stdplus_rho_max(n: int, parity: str = "even") -> StdPlusReport:
    """Max rho over standard-plus words of length ``n`` (d0 >= 1, order >= 4).

    ``parity`` is ``"even"``, ``"odd"`` or ``"both"``; the default even-order
    family is the one the published comparison table uses. ``rho`` and
    ``witness`` are None when no such word has this length.
    """
    if n < 6:
        raise WordError("standard-plus words have length >= 6")
    if parity not in ("even", "odd", "both"):
        raise WordError(f"parity must be even, odd or both, not {parity!r}")
    family = [
        d for d in directives_with_length(n - 1, min_order=4, d0_min=1)
        if parity == "both" or (d.order % 2 == 0) == (parity == "even")
    ]
    best, witness = None, None
    for d in family:
        value = rho(standard_plus(d))
        if best is None or value > best:
            best, witness = value, d
    return StdPlusReport(n, best, witness, len(family))


def one_bit_catastrophe(k: int) -> CatastropheReport:
    """Prepending b to reverse(s_{2k}) lifts r from 2 to 2k; values come from the engine."""
    if k < 2:
        raise WordError("k must be >= 2")
    base = reverse(fibonacci_word(2 * k))
    extended = "b" + base
    return CatastropheReport(k, base, r(base), extended, r(extended))
