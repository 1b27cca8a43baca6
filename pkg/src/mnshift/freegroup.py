"""Reduced-word arithmetic in the free group on two families of generators.

Generators come in an "a" family of size n and a "b" family of size m.
Words are tuples of letters, always kept in reduced form.  A third "c"
family appears only as the image alphabet of the rank-two collapse
homomorphism (see :func:`f2_image`); it is never part of a signature.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple

FAMILY_A = "a"
FAMILY_B = "b"
FAMILY_C = "c"

_WORD_TOKEN_HELP = 'tokens like "a1", "b2^-1", separated by spaces; "e" is the empty word'


class WordFormatError(ValueError):
    """Raised when parsing word text that does not follow the token format."""


class SignatureError(ValueError):
    """Raised when a letter or word does not fit the given signature."""


class Letter(NamedTuple):
    """A single signed generator, e.g. a2 or b1^-1."""

    family: str
    index: int
    sign: int

    def inverse(self) -> "Letter":
        return Letter(self.family, self.index, -self.sign)

    def sort_key(self) -> tuple:
        # Family a before b, index ascending, positive before inverse.
        return (self.family, self.index, 0 if self.sign > 0 else 1)

    def __str__(self) -> str:
        return f"{self.family}{self.index}" + ("^-1" if self.sign < 0 else "")


# A word is a reduced tuple of letters; the empty tuple is the identity.
Word = tuple[Letter, ...]

IDENTITY: Word = ()


@dataclass(frozen=True)
class Signature:
    """Sizes of the two generator families: n letters a_i, m letters b_j."""

    n: int
    m: int

    def __post_init__(self) -> None:
        if self.n < 1 or self.m < 1:
            raise SignatureError(f"signature needs n >= 1 and m >= 1, got ({self.n}, {self.m})")


def letters(sig: Signature) -> list[Letter]:
    """All 2(n+m) signed generators in canonical order (family, index, sign)."""
    out = []
    for i in range(1, sig.n + 1):
        out.append(Letter(FAMILY_A, i, 1))
        out.append(Letter(FAMILY_A, i, -1))
    for j in range(1, sig.m + 1):
        out.append(Letter(FAMILY_B, j, 1))
        out.append(Letter(FAMILY_B, j, -1))
    return out


def positive_letters(sig: Signature) -> list[Letter]:
    """The n+m unsigned generators a_1..a_n, b_1..b_m in canonical order."""
    return [Letter(FAMILY_A, i, 1) for i in range(1, sig.n + 1)] + [
        Letter(FAMILY_B, j, 1) for j in range(1, sig.m + 1)
    ]


def check_letter(letter: Letter, sig: Signature) -> None:
    """Raise SignatureError unless the letter belongs to the signature."""
    if letter.family == FAMILY_A:
        hi = sig.n
    elif letter.family == FAMILY_B:
        hi = sig.m
    else:
        raise SignatureError(f"letter family {letter.family!r} not in signature")
    if not 1 <= letter.index <= hi:
        raise SignatureError(f"letter index out of range: {letter} for signature ({sig.n}, {sig.m})")
    if letter.sign not in (1, -1):
        raise SignatureError(f"letter sign must be +1 or -1: {letter!r}")


def check_word(word: Word, sig: Signature) -> None:
    """Raise SignatureError unless every letter fits and the word is reduced."""
    for letter in word:
        check_letter(letter, sig)
    if not is_reduced(word):
        raise SignatureError(f"word is not reduced: {word_str(word)}")


def is_reduced(word: Iterable[Letter]) -> bool:
    prev = None
    for letter in word:
        if prev is not None and prev.family == letter.family and prev.index == letter.index and prev.sign == -letter.sign:
            return False
        prev = letter
    return True


def reduce_word(seq: Iterable[Letter]) -> Word:
    """Cancel adjacent inverse pairs until none remain (stack reduction)."""
    stack: list[Letter] = []
    for letter in seq:
        if stack:
            top = stack[-1]
            if top.family == letter.family and top.index == letter.index and top.sign == -letter.sign:
                stack.pop()
                continue
        stack.append(letter)
    return tuple(stack)


def multiply(g: Word, h: Word) -> Word:
    """Reduced product g*h.  Both inputs must already be reduced."""
    if not g:
        return h
    if not h:
        return g
    i = len(g)
    j = 0
    while i > 0 and j < len(h):
        x, y = g[i - 1], h[j]
        if x.family == y.family and x.index == y.index and x.sign == -y.sign:
            i -= 1
            j += 1
        else:
            break
    return g[:i] + h[j:]


def invert(g: Word) -> Word:
    return tuple(letter.inverse() for letter in reversed(g))


def word_key(word: Word) -> tuple:
    """Sort key realizing the canonical enumeration order (length, then letters)."""
    return (len(word), tuple(letter.sort_key() for letter in word))


def ball_size(sig: Signature, radius: int) -> int:
    """Closed-form count of reduced words of length at most `radius`."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    k = 2 * (sig.n + sig.m)
    total = 1
    layer = 1
    for _ in range(radius):
        layer = layer * (k - 1) if layer > 1 else k
        total += layer
    return total


@lru_cache(maxsize=64)
def _ball_cached(sig: Signature, radius: int) -> tuple[Word, ...]:
    gens = letters(sig)
    out: list[Word] = [IDENTITY]
    layer: list[Word] = [IDENTITY]
    for _ in range(radius):
        nxt: list[Word] = []
        for word in layer:
            last = word[-1] if word else None
            for letter in gens:
                if last is not None and last.family == letter.family and last.index == letter.index and last.sign == -letter.sign:
                    continue
                nxt.append(word + (letter,))
        out.extend(nxt)
        layer = nxt
    return tuple(out)


def ball(sig: Signature, radius: int) -> list[Word]:
    """All reduced words of length <= radius in canonical order."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    return list(_ball_cached(sig, radius))


def word_str(word: Word) -> str:
    """Render a word in the text format ("e" for the empty word)."""
    if not word:
        return "e"
    return " ".join(str(letter) for letter in word)


def parse_word(text: str, sig: Signature | None = None) -> Word:
    """Parse the space-separated token format; validates against sig if given."""
    text = text.strip()
    if not text:
        raise WordFormatError(f"empty word text; expected {_WORD_TOKEN_HELP}")
    if text == "e":
        return IDENTITY
    word: list[Letter] = []
    for token in text.split():
        body, sign = token, 1
        if token.endswith("^-1"):
            body, sign = token[:-3], -1
        if len(body) < 2 or body[0] not in (FAMILY_A, FAMILY_B, FAMILY_C) or not body[1:].isdigit():
            raise WordFormatError(f"bad token {token!r}; expected {_WORD_TOKEN_HELP}")
        index = int(body[1:])
        if index < 1:
            raise WordFormatError(f"bad token {token!r}; indices start at 1")
        word.append(Letter(body[0], index, sign))
    result = tuple(word)
    if not is_reduced(result):
        raise WordFormatError(f"word is not reduced: {text!r}")
    if sig is not None:
        check_word(result, sig)
    return result


def f2_image(word: Word, sig: Signature) -> Word:
    """Collapse onto the free group on c1, c2: a_i -> e, b_1 -> c1, b_2 -> c2, b_j -> e (j >= 3).

    Requires m >= 2 so that both target generators exist.
    """
    if sig.m < 2:
        raise SignatureError(f"rank-two collapse needs m >= 2, got m = {sig.m}")
    check_word(word, sig)
    image = []
    for letter in word:
        if letter.family == FAMILY_B and letter.index in (1, 2):
            image.append(Letter(FAMILY_C, letter.index, letter.sign))
    return reduce_word(image)
