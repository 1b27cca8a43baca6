import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mnshift import Signature, SignatureError, WordFormatError
from mnshift.freegroup import (
    Letter,
    ball,
    ball_size,
    f2_image,
    invert,
    is_reduced,
    letters,
    multiply,
    parse_word,
    positive_letters,
    reduce_word,
    word_key,
    word_str,
)

from conftest import W

SIG22 = Signature(2, 2)
SIG32 = Signature(3, 2)


def letter_strategy(sig):
    return st.sampled_from(letters(sig))


def word_strategy(sig, max_size=8):
    return st.lists(letter_strategy(sig), max_size=max_size).map(
        lambda ls: reduce_word(tuple(ls))
    )


# ---------------------------------------------------------------------------
# Reduction and group laws
# ---------------------------------------------------------------------------


def brute_reduce(word):
    """Repeatedly delete the first adjacent inverse pair until none remain."""
    word = list(word)
    changed = True
    while changed:
        changed = False
        for i in range(len(word) - 1):
            if word[i] == word[i + 1].inverse():
                del word[i : i + 2]
                changed = True
                break
    return tuple(word)


def random_schedule_reduce(word, rng):
    """Delete adjacent inverse pairs in a random order."""
    word = list(word)
    while True:
        pairs = [
            i
            for i in range(len(word) - 1)
            if word[i] == word[i + 1].inverse()
        ]
        if not pairs:
            return tuple(word)
        i = rng.choice(pairs)
        del word[i : i + 2]


def test_reduce_is_confluent_under_any_cancellation_order():
    rng = random.Random(7)
    alphabet = letters(SIG22)
    for _ in range(300):
        raw = tuple(rng.choice(alphabet) for _ in range(rng.randrange(12)))
        expected = reduce_word(raw)
        assert brute_reduce(raw) == expected
        for trial in range(3):
            assert random_schedule_reduce(raw, rng) == expected


@settings(max_examples=150, deadline=None)
@given(word_strategy(SIG22), word_strategy(SIG22), word_strategy(SIG22))
def test_multiply_is_associative(u, v, w):
    assert multiply(multiply(u, v), w) == multiply(u, multiply(v, w))


@settings(max_examples=150, deadline=None)
@given(word_strategy(SIG22))
def test_inverse_and_identity_laws(w):
    e = ()
    assert multiply(w, invert(w)) == e
    assert multiply(invert(w), w) == e
    assert multiply(w, e) == w
    assert multiply(e, w) == w
    assert invert(invert(w)) == w


@settings(max_examples=150, deadline=None)
@given(word_strategy(SIG22))
def test_reduce_is_idempotent_on_reduced_words(w):
    assert is_reduced(w)
    assert reduce_word(w) == w


def test_is_reduced_rejects_adjacent_inverse_pair():
    a1 = Letter("a", 1, 1)
    assert not is_reduced((a1, a1.inverse()))
    assert is_reduced((a1, a1))
    assert is_reduced(())


# ---------------------------------------------------------------------------
# Balls
# ---------------------------------------------------------------------------


def brute_ball(sig, radius):
    """All reduced words of length <= radius by filtering raw strings."""
    found = {()}
    for length in range(1, radius + 1):
        for combo in itertools.product(letters(sig), repeat=length):
            if is_reduced(combo):
                found.add(combo)
    return found


def test_ball_count_radius_one_is_nine():
    assert len(ball(SIG22, 1)) == 9
    assert ball_size(SIG22, 1) == 9


def test_ball_count_radius_three_is_457():
    b = ball(SIG22, 3)
    assert len(b) == 457
    assert ball_size(SIG22, 3) == 457


def test_ball_matches_brute_force_enumeration():
    assert set(ball(SIG22, 3)) == brute_ball(SIG22, 3)
    assert set(ball(SIG32, 2)) == brute_ball(SIG32, 2)


def test_ball_size_closed_form_matches_enumeration():
    for sig in (SIG22, SIG32, Signature(1, 1)):
        for radius in range(4):
            assert ball_size(sig, radius) == len(ball(sig, radius))


def test_ball_is_sorted_in_canonical_order():
    b = ball(SIG22, 2)
    assert list(b) == sorted(b, key=word_key)
    assert b[0] == ()
    assert b[1] == W("a1")


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------


def test_parse_and_format_round_trip():
    for text in ("e", "a1", "b2^-1", "a1 b1^-1 a2 b2", "b1 a1^-1"):
        word = parse_word(text)
        assert word_str(word) == text


@settings(max_examples=100, deadline=None)
@given(word_strategy(SIG32))
def test_format_then_parse_is_identity(w):
    assert parse_word(word_str(w)) == w


def test_parse_rejects_malformed_tokens():
    for bad in ("a0", "a1^2", "x1", "a", "a1^-1^-1", ""):
        with pytest.raises(WordFormatError):
            parse_word(bad)


def test_parse_rejects_index_beyond_signature():
    with pytest.raises(SignatureError):
        parse_word("a3", SIG22)
    assert parse_word("a3", SIG32) == (Letter("a", 3, 1),)


def test_parse_rejects_unreduced_input():
    with pytest.raises(WordFormatError):
        parse_word("a1 a1^-1")


def test_signature_validation():
    with pytest.raises(SignatureError):
        Signature(0, 2)
    with pytest.raises(SignatureError):
        Signature(2, 0)


def test_positive_letters_order():
    assert [word_str((l,)) for l in positive_letters(SIG22)] == [
        "a1",
        "a2",
        "b1",
        "b2",
    ]


# ---------------------------------------------------------------------------
# Collapse onto the b-pair
# ---------------------------------------------------------------------------


def test_f2_image_examples():
    assert f2_image(W("a1"), SIG22) == ()
    assert word_str(f2_image(W("b1"), SIG22)) == "c1"
    assert word_str(f2_image(W("a1^-1 b1 a2 b2 b2"), SIG22)) == "c1 c2 c2"
    assert f2_image(W("a3", SIG32), SIG32) == ()


@settings(max_examples=150, deadline=None)
@given(word_strategy(SIG22), word_strategy(SIG22))
def test_f2_image_is_a_homomorphism(u, v):
    assert f2_image(multiply(u, v), SIG22) == multiply(
        f2_image(u, SIG22), f2_image(v, SIG22)
    )


def test_f2_image_requires_two_b_generators():
    with pytest.raises(SignatureError):
        f2_image(W("b1"), Signature(2, 1))
