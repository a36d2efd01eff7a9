import pytest
from hypothesis import given
from hypothesis import strategies as st

from bwtruns.words import (
    RleString,
    WordError,
    circular_factor_occurrences,
    conjugate,
    count_runs,
    exchange,
    is_balanced_circular,
    is_lyndon,
    is_palindrome,
    is_primitive,
    lcp,
    left_special_circular_factors,
    lyndon_rotation,
    reverse,
    rle,
    rle_expand,
)
from bwtruns.standard import fibonacci_word, palindromic_prefix

from oracles import all_words, brute_left_special, brute_occurrences, rotations

words = st.text(alphabet="ab", max_size=40)
nonempty = st.text(alphabet="ab", min_size=1, max_size=40)


def test_reverse_examples():
    assert reverse("abaabb") == "bbaaba"
    assert reverse("") == ""


@given(words)
def test_reverse_involution(w):
    assert reverse(reverse(w)) == w


def test_conjugate_examples():
    assert conjugate("abaab", 3) == "aabab"
    assert conjugate("abaab", 1) == "abaab"


@pytest.mark.parametrize("i", [0, 6, -1])
def test_conjugate_out_of_range(i):
    with pytest.raises(WordError):
        conjugate("abaab", i)


@given(nonempty, st.data())
def test_conjugate_composition(w, data):
    n = len(w)
    i = data.draw(st.integers(1, n))
    j = data.draw(st.integers(1, n))
    assert conjugate(conjugate(w, i), j) == conjugate(w, (i + j - 2) % n + 1)


def test_lcp():
    assert lcp("abaab", "abba") == "ab"
    assert lcp("abaab", "abaab") == "abaab"
    assert lcp("a", "b") == ""


def test_primitive():
    assert is_primitive("abaab")
    assert not is_primitive("abab")
    assert not is_primitive("aaa")
    assert is_primitive("a")
    with pytest.raises(WordError):
        is_primitive("")


@given(nonempty)
def test_primitive_iff_distinct_conjugates(w):
    assert is_primitive(w) == (len(set(rotations(w))) == len(w))


def test_lyndon_examples():
    assert is_lyndon("aab")
    assert not is_lyndon("aba")
    assert not is_lyndon("abab")
    for i in range(2, 11):
        assert is_lyndon("a" + palindromic_prefix(i) + "b")


def test_lyndon_rotation_examples():
    # brute force: min over the 6 rotations of bbaaba is aababb, first at index 3
    assert min(rotations("bbaaba")) == "aababb"
    assert lyndon_rotation("bbaaba") == ("aababb", 3)
    assert lyndon_rotation("aaa") == ("aaa", 1)


@given(nonempty)
def test_lyndon_rotation_matches_brute_force(w):
    rots = rotations(w)
    least = min(rots)
    assert lyndon_rotation(w) == (least, rots.index(least) + 1)


@given(nonempty, st.data())
def test_lyndon_rotation_conjugation_invariant(w, data):
    i = data.draw(st.integers(1, len(w)))
    assert lyndon_rotation(conjugate(w, i))[0] == lyndon_rotation(w)[0]


def test_circular_factor_occurrences():
    assert circular_factor_occurrences("abaab", "ab") == brute_occurrences("abaab", "ab") == 2
    s8 = fibonacci_word(8)
    assert circular_factor_occurrences(s8, "a" + palindromic_prefix(6) + "b") == 2
    assert circular_factor_occurrences("abaab", "abaab") == 1
    with pytest.raises(WordError):
        circular_factor_occurrences("ab", "aba")


@given(nonempty, st.data())
def test_occurrences_match_brute_force(w, data):
    u = data.draw(st.text(alphabet="ab", min_size=1, max_size=len(w)))
    assert circular_factor_occurrences(w, u) == brute_occurrences(w, u)


def test_left_special_small():
    # brute force over the rotations of aabab: 'a' and 'ab' are preceded by both letters
    expected = brute_left_special("aabab", 2)
    assert expected == ["a", "ab"]
    assert left_special_circular_factors("aabab", 2) == expected
    # the empty word is never reported
    assert left_special_circular_factors("ab", 1) == []


@pytest.mark.parametrize("n", range(1, 13))
def test_left_special_exhaustive(n):
    for w in all_words(n):
        assert left_special_circular_factors(w, n) == brute_left_special(w, n), w


def test_balanced():
    assert not is_balanced_circular("aabb")
    assert is_balanced_circular("ab")
    for i in range(2, 11):
        assert is_balanced_circular(fibonacci_word(i))


def test_palindrome():
    assert is_palindrome("abaaba")
    assert not is_palindrome("ab")


def test_runs_and_rle():
    assert count_runs("bbaaba") == 4
    assert count_runs("") == 0
    assert rle("bbaaba") == RleString((("b", 2), ("a", 2), ("b", 1), ("a", 1)))
    assert str(rle("bbaaba")) == "b^2 a^2 b a"
    assert rle_expand(RleString.parse("b^13 a^20 b a")) == "b" * 13 + "a" * 20 + "ba"
    assert len(rle_expand(RleString.parse("b^13 a^20 b a"))) == 35


def test_rle_rejects_malformed():
    with pytest.raises(WordError):
        RleString((("a", 1), ("a", 2)))
    with pytest.raises(WordError):
        RleString.parse("c^2")
    assert RleString.from_pairs([("a", 1), ("b", 0), ("a", 2)]) == RleString((("a", 3),))


@given(words)
def test_rle_round_trip(w):
    assert rle_expand(rle(w)) == w
    assert RleString.parse(str(rle(w))) == rle(w)
    assert rle(w).num_runs == count_runs(w)


@given(words)
def test_run_count_invariances(w):
    assert count_runs(reverse(w)) == count_runs(w)
    assert count_runs(exchange(w)) == count_runs(w)
