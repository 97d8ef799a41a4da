"""The bicyclic monoid: the corpus's infinite, non-free, non-commutative
structure.  Pair arithmetic over the normal forms b^i a^j is the oracle."""

import itertools

import pytest

from conftest import all_words
from whsg import cfg as cfglib
from whsg.arithmetic import check_multiply, multiply, represent, word_eq
from whsg.basic import green_related, is_commutative, is_group, is_monoid
from whsg.fixtures import bicyclic
from whsg.structural import is_clifford, is_completely_simple, is_free
from whsg.structure import validate_necessary
from whsg.words import SEP1, SEP2, reverse


@pytest.fixture(scope="module")
def bic():
    return bicyclic()


def pair_of(word):
    """Evaluate a word over {a, b} in the bicyclic monoid: b -> (1,0),
    a -> (0,1), and (i,j)(k,l) cancels min(j,k)."""
    i = j = 0
    for sym in word:
        if sym == "b":
            if j > 0:
                j -= 1
            else:
                i += 1
        else:
            j += 1
    return (i, j)


def normal_word(pair):
    i, j = pair
    if (i, j) == (0, 0):
        return ("a", "b")
    return ("b",) * i + ("a",) * j


def rep_language():
    # exponents up to 12: every slot of a length-15 table entry is covered
    words = [("a", "b")]
    for i in range(13):
        for j in range(13):
            if i + j:
                words.append(("b",) * i + ("a",) * j)
    return words


def test_table_language_matches_pair_arithmetic(bic):
    expected = set()
    for u in rep_language():
        for v in rep_language():
            w = normal_word(pair_of(u + v))
            entry = u + (SEP1,) + v + (SEP2,) + reverse(w)
            if len(entry) <= 15:
                expected.add(entry)
    got = set(cfglib.enumerate_words(bic.table, 15))
    assert got == expected


def test_structure_validates(bic):
    assert validate_necessary(bic, depth=4)


def test_multiply_cancels(bic):
    assert multiply(bic, ("a",), ("b",)) == ("a", "b")
    assert multiply(bic, ("b",), ("a",)) == ("b", "a")
    assert multiply(bic, ("a", "a"), ("b",)) == ("a",)
    assert multiply(bic, ("b", "a"), ("a", "b")) == ("b", "a")
    assert check_multiply(bic, ("a",), ("b",), ("a", "b"))
    assert not check_multiply(bic, ("b",), ("a",), ("a", "b"))


def test_represent_reaches_normal_forms(bic):
    assert represent(bic, ("a", "b")) == ("a", "b")
    assert represent(bic, ("a", "b", "b", "a")) == ("b", "a")
    assert represent(bic, ("a", "a", "b", "b", "a")) == ("a",)


def test_word_problem_matches_pair_arithmetic(bic):
    words = all_words(("a", "b"), 4)
    for w, w2 in itertools.product(words, repeat=2):
        assert word_eq(bic, w, w2) == (pair_of(w) == pair_of(w2)), (w, w2)


def test_monoid_with_composite_identity_witness(bic):
    v = is_monoid(bic)
    assert v
    assert v.witnesses["identity"] == ("a", "b")


def test_one_sided_invertibility(bic):
    # a.b is the identity but b.a is not: a is right- but not left-invertible
    identity = ("a", "b")
    assert green_related(bic, ("a",), identity, "R")
    assert not green_related(bic, ("a",), identity, "L")
    v = is_group(bic)
    assert not v
    assert "left-invertible" in v.reason


def test_remaining_properties(bic):
    assert not is_commutative(bic)
    assert not is_completely_simple(bic)
    assert not is_clifford(bic)
    v = is_free(bic)
    assert not v
    assert "decomposes" in v.reason
