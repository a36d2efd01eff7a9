"""Closed-form BWT predictions for plus-words and the structural facts behind them.

Every prediction here is assembled from Fibonacci numbers alone and is
compared against the engine, never derived from it.
"""

from __future__ import annotations

import json
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .bwt import bwt_fast, r
from .standard import (
    DirectiveSequence,
    fibonacci_number as F,
    fibonacci_plus,
    fibonacci_word,
    palindromic_prefix,
    standard_plus,
    standard_word_length,
)
from .words import (
    RleString,
    WordError,
    circular_factor_occurrences,
    left_special_circular_factors,
    reverse,
    rle,
)


class UnsupportedOrderError(WordError):
    """Only even-order standard-plus words have a proven prediction."""


def predicted_bwt_fibplus(k: int, odd: bool = False) -> RleString:
    if k < 2:
        raise WordError("k must be >= 2")
    if odd:
        return RleString.from_pairs(
            [("b", 1), ("a", 1), ("b", F(2 * k - 1) - 1), ("a", F(2 * k))]
        )
    return RleString.from_pairs(
        [("b", F(2 * k - 2)), ("a", F(2 * k - 1) - 1), ("b", 1), ("a", 1)]
    )


def predicted_bwt_fibplus_rev(k: int, odd: bool = False) -> RleString:
    if k < 2:
        raise WordError("k must be >= 2")
    pairs = []
    if odd:
        # b^{F_{2k-2}} a, then a b^{F_{2j}} for j = k-2 .. 0, then the a-tail
        pairs.append(("b", F(2 * k - 2)))
        pairs.append(("a", 1))
        for j in range(k - 2, -1, -1):
            pairs += [("a", 1), ("b", F(2 * j))]
        pairs.append(("a", F(2 * k) - k + 1))
    else:
        # top b-block, middle a^{F_{2j}} b blocks, bottom b a^{F_{2k-2}};
        # from_pairs merges the b's meeting at the middle/bottom seam
        pairs.append(("b", F(2 * k - 2) - k + 1))
        for j in range(k - 1):
            pairs += [("a", F(2 * j)), ("b", 1)]
        pairs += [("b", 1), ("a", F(2 * k - 2))]
    return RleString.from_pairs(pairs)


def _even_order_k(d: DirectiveSequence) -> int:
    if d.d[0] < 1:
        raise WordError("prediction assumes d0 >= 1")
    if d.order % 2:
        raise UnsupportedOrderError(
            f"order {d.order} is odd; only even orders have a stated prediction"
        )
    if d.order < 4:
        raise WordError("standard-plus words need order >= 4")
    return d.order // 2


def predicted_r_stdplus(d: DirectiveSequence) -> int:
    _even_order_k(d)
    return 4


def predicted_r_stdplus_rev(d: DirectiveSequence) -> int:
    k = _even_order_k(d)
    return 2 * k if d.d[0] == 1 else 2 * k + 2


def stdplus_rev_b_runs_contain_odd_directives(d: DirectiveSequence) -> bool:
    """Soft check: b-run lengths of bwt(v^rev) include d_3, d_5, ..., d_{2k-3}."""
    k = _even_order_k(d)
    v = standard_plus(d)
    b_runs = Counter(e for c, e in rle(bwt_fast(reverse(v)).transformed).runs if c == "b")
    wanted = Counter(d.d[i] for i in range(3, 2 * k - 2, 2))
    return not (wanted - b_runs)


@dataclass(frozen=True)
class MatrixPartition:
    """Row ranges (1-based, inclusive) of the sorted rotations of reverse(s_{2k} b)."""

    k: int
    top_rows: tuple[int, int]
    mid_rows: tuple[int, int]
    bot_rows: tuple[int, int]
    top_bwt: str
    mid_bwt: str
    bot_bwt: str
    # rotations a x bb, x bba, b a x b that open each part
    boundaries: tuple[str, str, str]

    @staticmethod
    def predicted(k: int) -> tuple[str, str, str]:
        top = "b" * (F(2 * k - 2) - k + 1)
        mid = "".join("a" * F(2 * j) + "b" for j in range(k - 1))
        bot = "b" + "a" * F(2 * k - 2)
        return top, mid, bot

    def matches_prediction(self) -> bool:
        return (self.top_bwt, self.mid_bwt, self.bot_bwt) == self.predicted(self.k)


def partition_rev_matrix(k: int) -> MatrixPartition:
    if k < 2:
        raise WordError("k must be >= 2")
    x = palindromic_prefix(2 * k)
    w = reverse(fibonacci_plus(k))  # = b b a x
    res = bwt_fast(w)
    row_of = {idx: row for row, idx in enumerate(res.bw_array, start=1)}
    top_start, mid_start, bot_start = row_of[3], row_of[4], row_of[2]
    n = len(w)
    t = res.transformed
    return MatrixPartition(
        k=k,
        top_rows=(top_start, mid_start - 1),
        mid_rows=(mid_start, bot_start - 1),
        bot_rows=(bot_start, n),
        top_bwt=t[top_start - 1:mid_start - 1],
        mid_bwt=t[mid_start - 1:bot_start - 1],
        bot_bwt=t[bot_start - 1:],
        boundaries=("a" + x + "bb", x + "bba", "ba" + x + "b"),
    )


def partition_is_consistent(p: MatrixPartition) -> bool:
    """Ranges tile 1..n, boundaries are ordered, and the bottom part is exactly the b-rotations."""
    w = reverse(fibonacci_plus(p.k))
    n = len(w)
    if p.top_rows[0] != 1 or p.bot_rows[1] != n:
        return False
    if not (p.top_rows[1] + 1 == p.mid_rows[0] and p.mid_rows[1] + 1 == p.bot_rows[0]):
        return False
    a_x_bb, x_bba, ba_x_b = p.boundaries
    if not a_x_bb < x_bba < ba_x_b < "bba" + palindromic_prefix(2 * p.k):
        return False
    return p.bot_rows[1] - p.bot_rows[0] + 1 == w.count("b")


def occurrence_counts_lemma(k: int, i: int) -> tuple[int, int]:
    """Occurrences of a x_{2(k-i)} b and a x_{2(k-i)-1} b as circular factors of s_{2k}."""
    if not 0 <= i <= k - 2:
        raise WordError(f"need 0 <= i <= k-2, got i={i}, k={k}")
    s = fibonacci_word(2 * k)
    even = "a" + palindromic_prefix(2 * (k - i)) + "b"
    odd = "a" + palindromic_prefix(2 * (k - i) - 1) + "b"
    return circular_factor_occurrences(s, even), circular_factor_occurrences(s, odd)


def occurrence_lemma_holds(k: int) -> bool:
    return all(
        occurrence_counts_lemma(k, i) == (F(2 * i), F(2 * i + 1)) for i in range(k - 1)
    )


def left_special_lemma_holds(k: int) -> bool:
    """Left-special factors of reverse(s_{2k} b) are the prefixes of x_{2k-1} b and of b a x_{2k-2}."""
    w = reverse(fibonacci_plus(k))
    got = set(left_special_circular_factors(w, len(w) - 1))
    p1 = palindromic_prefix(2 * k - 1) + "b"
    p2 = "ba" + palindromic_prefix(2 * k - 2)
    expected = {p1[:j] for j in range(1, len(p1) + 1)} | {p2[:j] for j in range(1, len(p2) + 1)}
    return got == expected


def rotation_order_holds(s: str, x: str) -> bool:
    """Rotations of s entered from a b sort no later than x ab, and x ab, x ba sit at ranks q, q+1.

    ``q`` is the number of b's in ``s``. The rotation x ab = s itself (index 1) is the
    one equality case.
    """
    if s != x + "ab":
        return False
    n = len(s)
    res = bwt_fast(s)
    rank = {idx: row for row, idx in enumerate(res.bw_array, start=1)}
    target = x + "ab"
    for h in range(1, n + 1):
        if s[h - 1] == "a" and s[h - 2] == "b":
            rot = s[h - 1:] + s[:h - 1]
            if h == 1:
                if rot != target:
                    return False
            elif not rot < target:
                return False
    q = s.count("b")
    xba = x + "ba"
    pos = (s + s).find(xba)
    if pos == -1 or pos >= n:
        return False
    return rank[1] == q and rank[pos + 1] == q + 1


def check_rotation_order(k: int) -> bool:
    if k < 2:
        raise WordError("k must be >= 2")
    return rotation_order_holds(fibonacci_word(2 * k), palindromic_prefix(2 * k))


# older name, kept for existing callers
check_eq1 = check_rotation_order


@dataclass
class VerificationReport:
    cases: list = field(default_factory=list)
    seed: int | None = None

    @property
    def mismatches(self) -> list:
        return [c for c in self.cases if not c["match"]]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> str:
        return json.dumps({"seed": self.seed, "cases": self.cases}, indent=2)


def _fibplus_cases(args) -> list:
    k, odd = args
    v = fibonacci_plus(k, odd)
    parity = "odd" if odd else "even"
    out = []
    for family, word, predicted in (
        ("fibplus", v, predicted_bwt_fibplus(k, odd)),
        ("fibplus_rev", reverse(v), predicted_bwt_fibplus_rev(k, odd)),
    ):
        computed = rle(bwt_fast(word).transformed)
        out.append({
            "family": family,
            "params": {"k": k, "parity": parity},
            "predicted_rle": str(predicted),
            "computed_rle": str(computed),
            "match": computed == predicted,
        })
    return out


def _stdplus_case(d: DirectiveSequence) -> dict:
    v = standard_plus(d)
    computed = (r(v), r(reverse(v)))
    predicted = (predicted_r_stdplus(d), predicted_r_stdplus_rev(d))
    return {
        "family": "stdplus",
        "params": {"d": list(d.d), "length": len(v)},
        "predicted_rle": None,
        "computed_rle": None,
        "predicted_r": list(predicted),
        "computed_r": list(computed),
        "b_runs_ok": stdplus_rev_b_runs_contain_odd_directives(d),
        "match": computed == predicted,
    }


def random_directive(
    rng: random.Random,
    orders=range(4, 17, 2),
    max_entry: int = 4,
    max_length: int = 2**15,
) -> DirectiveSequence:
    """Seeded directive with entries uniform in 1..max_entry, capped so |s| <= max_length.

    Each entry is drawn from the values that keep the finished word within
    ``max_length`` even if every later entry is 1.
    """
    order = rng.choice(list(orders))
    m = order - 1
    d: list[int] = []
    for pos in range(m):
        allowed = [
            x for x in range(1, max_entry + 1)
            if standard_word_length(d + [x] + [1] * (m - pos - 1)) <= max_length
        ]
        if not allowed:
            raise WordError(f"order {order} cannot fit in {max_length} letters")
        d.append(rng.choice(allowed))
    return DirectiveSequence(tuple(d))


def _run(fn, items, jobs):
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def verify_closed_forms(
    k_max: int = 12,
    parities=(False, True),
    directives=(),
    jobs: int = 1,
    seed: int | None = None,
) -> VerificationReport:
    """Compare every prediction with the engine; mismatches go in the report."""
    if k_max < 2:
        raise WordError("k_max must be >= 2")
    report = VerificationReport(seed=seed)
    fib_args = [(k, odd) for k in range(2, k_max + 1) for odd in parities]
    for chunk in _run(_fibplus_cases, fib_args, jobs):
        report.cases.extend(chunk)
    report.cases.extend(_run(_stdplus_case, list(directives), jobs))
    return report


def summarize(report: VerificationReport) -> str:
    """``'22/22 closed forms match'``: one form per (k, parity) covering word and reverse."""
    fib = {}
    for c in report.cases:
        if c["family"].startswith("fibplus"):
            key = (c["params"]["k"], c["params"]["parity"])
            fib[key] = fib.get(key, True) and c["match"]
    std = [c for c in report.cases if c["family"] == "stdplus"]
    parts = []
    if fib:
        parts.append(f"{sum(fib.values())}/{len(fib)} closed forms match")
    if std:
        parts.append(f"{sum(c['match'] for c in std)}/{len(std)} standard-plus r predictions match")
    return "; ".join(parts)


def report_as_dict(report: VerificationReport) -> dict:
    return asdict(report)
