"""Flat multiplication tables take constant-time shortcuts everywhere; these
tests rebuild the same languages without the flat shape and demand identical
behavior from the generic grammar and automaton machinery."""

import pytest

from conftest import all_words
from whsg import fixtures
from whsg.arithmetic import multiply, represent, word_eq
from whsg.basic import green_related, is_commutative, is_group, is_monoid
from whsg.cfg import Cfg, prefix_quotient, enumerate_words
from whsg.nfa import Nfa
from whsg.structural import is_clifford, is_completely_simple, is_free
from whsg.structure import WhStructure


def _unflatten_cfg(g):
    """Same language through a wrapper nonterminal: defeats flat detection."""
    wrapper = "&w"
    assert wrapper not in g.nonterminals
    prods = [(wrapper, body) for _h, body in g.productions]
    prods.append((g.start, (wrapper,)))
    out = Cfg(list(g.nonterminals) + [wrapper], g.terminals, g.start, prods)
    assert out.flat_words is None
    return out


def _unflatten_nfa(n):
    trans = [(src, sym, dst)
             for (src, sym), dsts in n.transitions.items() for dst in dsts]
    out = Nfa(n.states, n.alphabet, trans, n.initial, n.accepting)
    assert out.finite_words is None
    return out


def _generic_twin(s):
    return WhStructure(s.alphabet, _unflatten_nfa(s.reps),
                       _unflatten_cfg(s.table), dict(s.assignment))


@pytest.mark.parametrize("name", ["z2", "sl2", "rb22", "null3", "rees"])
def test_decisions_agree_between_flat_and_generic_paths(name):
    flat = fixtures.NAMED[name]()
    generic = _generic_twin(fixtures.NAMED[name]())
    for decide in (is_monoid, is_group, is_commutative,
                   is_completely_simple, is_clifford, is_free):
        a = decide(flat)
        b = decide(generic)
        assert (a.answer, a.witnesses) == (b.answer, b.witnesses), decide


@pytest.mark.parametrize("name", ["z2", "null3", "rees"])
def test_arithmetic_agrees_between_flat_and_generic_paths(name):
    flat = fixtures.NAMED[name]()
    generic = _generic_twin(fixtures.NAMED[name]())
    pool = sorted(flat.reps.finite_words)
    for p in pool:
        for q in pool:
            assert multiply(flat, p, q) == multiply(generic, p, q)
    for w in all_words(flat.alphabet, 2):
        assert represent(flat, w) == represent(generic, w)
        for w2 in all_words(flat.alphabet, 2):
            assert word_eq(flat, w, w2) == word_eq(generic, w, w2)
    for w in pool:
        for w2 in pool:
            for rel in ("R", "L", "H"):
                assert green_related(flat, w, w2, rel) == \
                    green_related(generic, w, w2, rel)


def test_prefix_quotient_flat_and_generic_agree(rees):
    flat = rees.table
    generic = _unflatten_cfg(flat)
    for prefix in [("a", "#1"), ("b", "#1", "e"), ("d", "e", "b"), ("z",)]:
        got_flat = set(enumerate_words(prefix_quotient(flat, prefix), 8))
        got_generic = set(enumerate_words(prefix_quotient(generic, prefix), 8))
        assert got_flat == got_generic


def test_fixture_files_match_generators():
    # the committed fixture files are exactly what the builders emit
    import json
    from pathlib import Path

    from whsg.oracle import NAMED_TABLES, dumps_table
    from whsg.structure import dumps_structure

    root = Path(__file__).resolve().parent.parent / "fixtures"
    for name, build in fixtures.NAMED.items():
        assert (root / f"{name}.whs").read_text() == dumps_structure(build())
    for name, build in NAMED_TABLES.items():
        on_disk = json.loads((root / f"{name}_table.json").read_text())
        assert on_disk == json.loads(dumps_table(build()))
