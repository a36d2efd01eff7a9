"""Binary word algebra over the ordered alphabet a < b.

Words are plain ``str`` objects over ``{'a', 'b'}``. Positions exposed to
callers are 1-based; slicing inside the module is 0-based.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import groupby

ALPHABET = "ab"

_EXCHANGE = str.maketrans("ab", "ba")
_RLE_TOKEN = re.compile(r"^([ab])(?:\^(\d+))?$")


class WordError(ValueError):
    """Raised when an argument violates an operation's contract."""


def check_word(w: str, *, nonempty: bool = False) -> str:
    if not isinstance(w, str):
        raise WordError(f"expected a str word, got {type(w).__name__}")
    if w.strip("ab"):
        raise WordError(f"word {w!r} has letters outside {{a,b}}")
    if nonempty and not w:
        raise WordError("the empty word is not allowed here")
    return w


def reverse(w: str) -> str:
    return w[::-1]


def exchange(w: str) -> str:
    """Swap every a with b and vice versa."""
    return w.translate(_EXCHANGE)


def conjugate(w: str, i: int) -> str:
    """The ``i``-th rotation ``w[i..n] w[1..i-1]`` (1-based)."""
    n = len(w)
    if not 1 <= i <= n:
        raise WordError(f"rotation index {i} outside 1..{n}")
    return w[i - 1:] + w[:i - 1]


def lcp(v: str, w: str) -> str:
    m = min(len(v), len(w))
    i = 0
    while i < m and v[i] == w[i]:
        i += 1
    return v[:i]


def smallest_period(w: str) -> int:
    """Least p dividing |w| with w = (w[:p])^(|w|/p)."""
    n = len(w)
    if n == 0:
        return 0
    # w is a proper power iff it occurs inside ww away from 0 and n
    p = (w + w).find(w, 1)
    return p


def is_primitive(w: str) -> bool:
    check_word(w, nonempty=True)
    return smallest_period(w) == len(w)


def lyndon_rotation(w: str) -> tuple[str, int]:
    """Least conjugate of ``w`` and the smallest 1-based index producing it.

    Booth's least-rotation scan, linear time.
    """
    check_word(w, nonempty=True)
    n = len(w)
    s = w + w
    i, j, k = 0, 1, 0
    while i < n and j < n and k < n:
        x, y = s[i + k], s[j + k]
        if x == y:
            k += 1
            continue
        if x > y:
            i += k + 1
        else:
            j += k + 1
        if i == j:
            j += 1
        k = 0
    start = min(i, j)
    # for periodic words the scan may stop on a later copy of the period
    start %= smallest_period(w)
    return s[start:start + n], start + 1


def is_lyndon(w: str) -> bool:
    check_word(w, nonempty=True)
    if not is_primitive(w):
        return False
    return lyndon_rotation(w)[1] == 1


def is_palindrome(w: str) -> bool:
    return w == w[::-1]


def circular_factors(w: str, length: int) -> set[str]:
    """All circular factors of ``w`` with the given length (``length <= |w|``)."""
    n = len(w)
    if length > n:
        raise WordError(f"factor length {length} exceeds |w| = {n}")
    ww = w + w
    return {ww[i:i + length] for i in range(n)}


def circular_factor_occurrences(w: str, u: str) -> int:
    """Number of rotations of ``w`` having ``u`` as a prefix."""
    n, m = len(w), len(u)
    if not 1 <= m <= n:
        raise WordError(f"need 1 <= |u| <= |w|, got |u|={m}, |w|={n}")
    text = w + w[:m - 1]
    count = 0
    pos = text.find(u)
    while pos != -1:
        count += 1
        pos = text.find(u, pos + 1)
    return count


def left_special_circular_factors(w: str, max_len: int) -> list[str]:
    """Nonempty circular factors u, |u| <= max_len, with both au and bu circular factors.

    Sorted by length, then lexicographically. A factor au must itself fit
    inside a rotation, so lengths beyond |w| - 1 never qualify.
    """
    check_word(w)
    n = len(w)
    if max_len > n:
        raise WordError(f"max_len {max_len} exceeds |w| = {n}")
    found: list[str] = []
    ww = w + w
    for length in range(1, min(max_len, n - 1) + 1):
        # map each factor of this length to the set of letters preceding it
        left: dict[str, set[str]] = {}
        for i in range(n):
            left.setdefault(ww[i + 1:i + 1 + length], set()).add(ww[i])
        special = sorted(u for u, ext in left.items() if len(ext) == 2)
        if not special:
            # prefixes of left-special factors are left-special
            break
        found.extend(special)
    return found


def is_balanced_circular(w: str) -> bool:
    """Every two circular factors of equal length differ by at most one b."""
    check_word(w, nonempty=True)
    n = len(w)
    ww = w + w
    prefix = [0]
    for c in ww:
        prefix.append(prefix[-1] + (c == "b"))
    for length in range(1, n + 1):
        counts = [prefix[i + length] - prefix[i] for i in range(n)]
        if max(counts) - min(counts) > 1:
            return False
    return True


def count_runs(w: str) -> int:
    """Maximal equal-letter blocks, counted linearly (not cyclically)."""
    if not w:
        return 0
    return 1 + sum(1 for x, y in zip(w, w[1:]) if x != y)


@dataclass(frozen=True)
class RleString:
    """Run-length encoding as ``((letter, exponent), ...)`` with no empty runs."""

    runs: tuple[tuple[str, int], ...]

    def __post_init__(self):
        prev = None
        for letter, exp in self.runs:
            if letter not in ALPHABET or exp < 1:
                raise WordError(f"bad run ({letter!r}, {exp})")
            if letter == prev:
                raise WordError("adjacent runs must carry distinct letters")
            prev = letter

    @classmethod
    def from_pairs(cls, pairs) -> "RleString":
        """Build from pairs, dropping zero exponents and merging equal neighbours."""
        merged: list[list] = []
        for letter, exp in pairs:
            if exp == 0:
                continue
            if merged and merged[-1][0] == letter:
                merged[-1][1] += exp
            else:
                merged.append([letter, exp])
        return cls(tuple((c, e) for c, e in merged))

    @classmethod
    def parse(cls, text: str) -> "RleString":
        """Parse ``b^13 a^20 b a``."""
        pairs = []
        for token in text.split():
            m = _RLE_TOKEN.match(token)
            if not m:
                raise WordError(f"bad RLE token {token!r}")
            pairs.append((m.group(1), int(m.group(2) or 1)))
        return cls(tuple(pairs))

    def expand(self) -> str:
        return "".join(c * e for c, e in self.runs)

    def __len__(self) -> int:
        return sum(e for _, e in self.runs)

    def count(self, letter: str) -> int:
        return sum(e for c, e in self.runs if c == letter)

    @property
    def num_runs(self) -> int:
        return len(self.runs)

    def __str__(self) -> str:
        return " ".join(c if e == 1 else f"{c}^{e}" for c, e in self.runs)


def rle(w: str) -> RleString:
    return RleString(tuple((c, len(list(g))) for c, g in groupby(w)))


def rle_expand(r: RleString) -> str:
    return r.expand()
