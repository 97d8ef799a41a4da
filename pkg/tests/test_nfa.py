import random

from conftest import all_words
from whsg.nfa import Nfa
from whsg.words import symbol_ranks


def test_membership_full_language():
    n = Nfa.universal_nonempty(("a", "b"))
    assert n.accepts(("a", "b"))
    assert not n.accepts(())


def test_membership_rejects_unknown_symbols():
    n = Nfa.universal_nonempty(("a", "b"))
    assert not n.accepts(("a", "z"))


def test_membership_finite_fixture_language(rees):
    assert rees.reps.accepts(("b", "e", "d"))
    assert rees.reps.accepts(("d", "e", "b"))
    assert not rees.reps.accepts(("e",))
    assert not rees.reps.accepts(("b", "e"))


def test_reversal_single_word():
    n = Nfa.literal(("a", "b"), ("a", "b"))
    r = n.reverse()
    assert r.accepts(("b", "a"))
    assert not r.accepts(("a", "b"))


def test_equivalence_free2_reps(free2):
    ok, counter = free2.reps.equivalent(Nfa.universal_nonempty(("a", "b")))
    assert ok and counter is None


def test_equivalence_detects_difference():
    a = Nfa.universal_nonempty(("a", "b"))
    b = Nfa.universal(("a", "b"))
    ok, counter = a.equivalent(b)
    assert not ok
    assert counter == ()


def test_emptiness_witness_of_intersection():
    # words over {a,b} ending in b, intersected with words starting with a
    ends_b = Nfa.universal(("a", "b")).concat(Nfa.literal(("b",), ("a", "b")))
    starts_a = Nfa.literal(("a",), ("a", "b")).concat(Nfa.universal(("a", "b")))
    product = ends_b.intersect(starts_a)
    expected = [w for w in all_words(("a", "b"), 2)
                if w[-1] == "b" and w[0] == "a"]
    assert min(expected, key=lambda w: (len(w), w)) == ("a", "b")
    assert product.shortest_word() == ("a", "b")


def test_shortest_word_is_minimal_and_lex_least():
    words = [("b", "a"), ("a", "b"), ("a", "a", "a")]
    n = Nfa.from_words(words)
    ranks = symbol_ranks(("a", "b"))
    assert n.shortest_word(ranks) == ("a", "b")
    empty = Nfa.from_words([])
    assert empty.shortest_word() is None


def test_shortest_word_respects_declared_order():
    words = [("b",), ("a",)]
    n = Nfa.from_words(words, alphabet=("b", "a"))
    assert n.shortest_word(symbol_ranks(("b", "a"))) == ("b",)


def _random_nfa(rng, n_states=3):
    states = [f"s{i}" for i in range(n_states)]
    trans = []
    for _ in range(rng.randint(2, 7)):
        trans.append((rng.choice(states), rng.choice("ab"), rng.choice(states)))
    initial = rng.sample(states, rng.randint(1, 2))
    accepting = rng.sample(states, rng.randint(1, n_states))
    return Nfa(states, ("a", "b"), trans, initial, accepting)


def test_algebra_agrees_with_enumeration():
    rng = random.Random(20240811)
    words = [()] + all_words(("a", "b"), 6)
    for _ in range(30):
        x = _random_nfa(rng)
        y = _random_nfa(rng)
        inter = x.intersect(y)
        union = x.union(y)
        comp = x.complement(("a", "b"))
        conc = x.concat(y)
        rev = x.reverse()
        diff = x.difference(y)
        for w in words:
            assert inter.accepts(w) == (x.accepts(w) and y.accepts(w))
            assert union.accepts(w) == (x.accepts(w) or y.accepts(w))
            assert comp.accepts(w) == (not x.accepts(w))
            assert diff.accepts(w) == (x.accepts(w) and not y.accepts(w))
            assert rev.accepts(w) == x.accepts(tuple(reversed(w)))
        for w in words:
            if len(w) > 4:
                continue
            expect = any(x.accepts(w[:i]) and y.accepts(w[i:])
                         for i in range(len(w) + 1))
            assert conc.accepts(w) == expect


def test_shortest_word_on_random_nfas_matches_enumeration():
    rng = random.Random(7)
    words = [()] + all_words(("a", "b"), 6)
    for _ in range(40):
        x = _random_nfa(rng)
        got = x.shortest_word(symbol_ranks(("a", "b")))
        accepted = [w for w in words if x.accepts(w)]
        if not accepted:
            # languages of 3-state machines accepting nothing short are empty
            assert got is None or len(got) > 6
        else:
            assert got == min(accepted, key=lambda w: (len(w), w))


def test_enumerate_words(free2):
    got = free2.reps.enumerate_words(3)
    assert got == all_words(("a", "b"), 3)
