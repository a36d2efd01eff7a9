"""Standard words, Fibonacci words and their one-letter extensions."""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

from .words import WordError

# generated words are capped to keep memory bounded; override with BWTRUNS_MAX_WORD
MAX_WORD_LENGTH = int(os.environ.get("BWTRUNS_MAX_WORD", 2**26))


class ExchangeRequiredError(WordError):
    """Raised for plus-words with d0 = 0; exchange a and b and use d0 >= 1 instead."""


@dataclass(frozen=True)
class DirectiveSequence:
    """Directive (d0, d1, ..., d_{m-1}); generates the standard word of order m + 1."""

    d: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "d", tuple(int(x) for x in self.d))
        if not self.d:
            raise WordError("directive sequence must be nonempty")
        if self.d[0] < 0:
            raise WordError("d0 must be >= 0")
        if any(x < 1 for x in self.d[1:]):
            raise WordError(f"directive entries after d0 must be >= 1: {self.d}")

    @classmethod
    def parse(cls, text: str) -> "DirectiveSequence":
        try:
            return cls(tuple(int(x) for x in text.split(",") if x.strip()))
        except ValueError as exc:
            raise WordError(f"bad directive sequence {text!r}") from exc

    @classmethod
    def fibonacci(cls, order: int) -> "DirectiveSequence":
        return cls((1,) * (order - 1))

    @property
    def order(self) -> int:
        return len(self.d) + 1

    def __str__(self) -> str:
        return ",".join(map(str, self.d))


def standard_word_length(d) -> int:
    """Length of the standard word without building it."""
    d = d.d if isinstance(d, DirectiveSequence) else tuple(d)
    prev, cur = 1, 1  # |s_0|, |s_1|
    for x in d:
        prev, cur = cur, cur * x + prev
    return cur


def standard_word(d) -> str:
    if not isinstance(d, DirectiveSequence):
        d = DirectiveSequence(tuple(d))
    if standard_word_length(d) > MAX_WORD_LENGTH:
        raise WordError(f"standard word for {d} exceeds {MAX_WORD_LENGTH} letters")
    prev, cur = "b", "a"
    for x in d.d:
        prev, cur = cur, cur * x + prev
    return cur


@lru_cache(maxsize=None)
def fibonacci_number(i: int) -> int:
    """F_0 = F_1 = 1, F_{i+1} = F_i + F_{i-1}."""
    if i < 0:
        raise WordError("Fibonacci index must be >= 0")
    a, b = 1, 1
    for _ in range(i):
        a, b = b, a + b
    return a


def fibonacci_word(i: int) -> str:
    if i < 0:
        raise WordError("order must be >= 0")
    if i <= 1:
        return "ba"[i]
    return standard_word(DirectiveSequence.fibonacci(i))


def palindromic_prefix(i: int) -> str:
    """x_i: the Fibonacci word s_i with its last two letters removed."""
    if i < 2:
        raise WordError("palindromic prefix needs i >= 2")
    return fibonacci_word(i)[:-2]


def fibonacci_plus(k: int, odd: bool = False) -> str:
    """s_{2k} b, or s_{2k+1} a when ``odd``."""
    if k < 2:
        raise WordError("Fibonacci-plus words need k >= 2")
    if odd:
        return fibonacci_word(2 * k + 1) + "a"
    return fibonacci_word(2 * k) + "b"


def plus_letter(order: int) -> str:
    return "b" if order % 2 == 0 else "a"


def standard_plus(d) -> str:
    if not isinstance(d, DirectiveSequence):
        d = DirectiveSequence(tuple(d))
    if d.d[0] == 0:
        raise ExchangeRequiredError(
            "standard-plus words assume d0 >= 1; exchange a and b and drop the leading 0"
        )
    if d.order < 4:
        raise WordError(f"standard-plus words need order >= 4, got {d.order}")
    return standard_word(d) + plus_letter(d.order)


def directives_with_length(length: int, min_order: int = 2, d0_min: int = 0):
    """Every directive whose standard word has exactly ``length`` letters.

    Yields DirectiveSequence objects of order >= ``min_order``, ordered by
    the tuple value of the directive.
    """
    out = []

    def extend(prefix, prev, cur):
        if cur == length and len(prefix) + 1 >= min_order:
            out.append(DirectiveSequence(tuple(prefix)))
        lo = d0_min if not prefix else 1
        x = lo
        while x * cur + prev <= length:
            if x == 0:
                # d0 = 0 gives s_2 = b; only s_3 onward grows
                extend(prefix + [0], cur, prev)
            else:
                extend(prefix + [x], cur, x * cur + prev)
            x += 1

    extend([], 1, 1)
    out.sort(key=lambda s: s.d)
    return out


def standard_words_up_to(max_length: int) -> set[str]:
    """All standard words (orders >= 0) with length <= ``max_length``."""
    words = {"b", "a"}

    def extend(prefix_len, prev, cur, first):
        x = 0 if first else 1
        while True:
            nxt_len = x * len(cur) + len(prev)
            if nxt_len > max_length:
                break
            nxt = cur * x + prev
            words.add(nxt)
            extend(prefix_len + 1, cur, nxt, False)
            x += 1

    extend(0, "b", "a", True)
    return words
