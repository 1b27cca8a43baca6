import numpy as np
import pytest

from mnshift import PartialEFunction, PartialIsometrySet, Signature
from mnshift.freegroup import parse_word


def W(text, sig=None):
    """Parse a word from token text."""
    return parse_word(text, sig)


def L(text):
    """Parse a single letter."""
    word = parse_word(text)
    assert len(word) == 1
    return word[0]


def pef_from_pairs(sig, *levels):
    """Build tables from ("alpha text", "value text") pairs per level."""
    tables = []
    for level in levels:
        table = {}
        for alpha, value in level:
            table[W(alpha, sig)] = L(value)
        tables.append(table)
    return PartialEFunction(sig, tuple(tables))


def matrix_unit(d, row, col):
    M = np.zeros((d, d), dtype=complex)
    M[row, col] = 1.0
    return M


def rotation_set(theta):
    """The 3x3 two-by-two family: S1, S2 are matrix units and T1, T2 rotate
    between their ranges.  Satisfies the defining relations exactly for
    every angle."""
    E21 = matrix_unit(3, 1, 0)
    E31 = matrix_unit(3, 2, 0)
    S = (E21, E31)
    T = (
        np.cos(theta) * E21 + np.sin(theta) * E31,
        -np.sin(theta) * E21 + np.cos(theta) * E31,
    )
    return PartialIsometrySet(Signature(2, 2), S, T)


@pytest.fixture
def sig22():
    return Signature(2, 2)


@pytest.fixture
def sig23():
    # Two b-generators, three a-generators.
    return Signature(3, 2)


@pytest.fixture
def example_pef(sig22):
    """Depth-1 tables: a1, a2 -> b1 and b1, b2 -> a1."""
    return pef_from_pairs(
        sig22, [("a1", "b1"), ("a2", "b1"), ("b1", "a1"), ("b2", "a1")]
    )
