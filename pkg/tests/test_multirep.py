"""Representatives need not be unique: these structures give every element
all of its short product words as representatives, so each product entry has
several witnesses and every selection step has real choices to make."""

import itertools

import pytest

from conftest import all_words
from whsg.arithmetic import check_multiply, multiply, word_eq
from whsg.basic import green_related, is_commutative, is_group, is_monoid
from whsg.cfg import Cfg
from whsg.nfa import Nfa
from whsg.oracle import (null3_table, rb22_table, sl2_table, table_decide,
                         z2_table)
from whsg.structural import is_clifford, is_completely_simple, is_free
from whsg.structure import WhStructure, validate_necessary
from whsg.words import SEP1, SEP2, reverse

TABLES = {"z2": z2_table, "sl2": sl2_table, "rb22": rb22_table,
          "null3": null3_table}

PROCEDURES = {
    "monoid": is_monoid,
    "group": is_group,
    "commutative": is_commutative,
    "completely-simple": is_completely_simple,
    "clifford": is_clifford,
    "free": is_free,
}


def redundant_structure(t, depth=2):
    """Structure whose representative language is every generator word up to
    the given length, one element often having many representatives."""
    words = all_words(t.generators, depth)
    value = {w: t.eval_word(w) for w in words}
    entries = set()
    for u in words:
        for v in words:
            product = t.table[(value[u], value[v])]
            for w in words:
                if value[w] == product:
                    entries.add(u + (SEP1,) + v + (SEP2,) + reverse(w))
    alphabet = t.generators
    return WhStructure(alphabet, Nfa.from_words(words, alphabet),
                       Cfg.from_words(tuple(alphabet) + (SEP1, SEP2), entries))


@pytest.mark.parametrize("name", sorted(TABLES))
def test_redundant_structures_validate(name):
    s = redundant_structure(TABLES[name]())
    assert validate_necessary(s, depth=5)


@pytest.mark.parametrize("name", sorted(TABLES))
def test_decisions_on_redundant_representatives(name):
    t = TABLES[name]()
    s = redundant_structure(t)
    for prop, decide in PROCEDURES.items():
        assert decide(s).answer == table_decide(t, prop).answer, (name, prop)


@pytest.mark.parametrize("name", sorted(TABLES))
def test_word_problem_on_redundant_representatives(name):
    t = TABLES[name]()
    s = redundant_structure(t)
    words = all_words(s.alphabet, 3)
    values = {w: t.eval_word(w) for w in words}
    for w, w2 in itertools.product(words, repeat=2):
        assert word_eq(s, w, w2) == (values[w] == values[w2]), (w, w2)


def test_multiply_picks_the_least_among_many_witnesses():
    t = z2_table()
    s = redundant_structure(t, depth=3)
    # the identity has representatives e, ee, gg, eee, ... ; the shortest
    # and lexicographically least must win
    assert multiply(s, ("g",), ("g",)) == ("e",)
    assert multiply(s, ("g", "g"), ("g", "g", "g")) == ("g",)
    # every representative of the product passes the check
    for w in [("e",), ("e", "e"), ("g", "g")]:
        assert check_multiply(s, ("g",), ("g",), w)
    assert not check_multiply(s, ("g",), ("g",), ("g",))


def test_green_relations_across_representatives():
    t = rb22_table()
    s = redundant_structure(t, depth=3)
    # two different words for the same element are related under everything
    assert word_eq(s, ("x11", "x22"), ("x11", "x11", "x22"))
    for rel in ("R", "L", "H"):
        assert green_related(s, ("x11", "x22"), ("x11", "x11", "x22"), rel)
