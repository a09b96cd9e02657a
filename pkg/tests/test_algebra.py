import random

import pytest
from hypothesis import given, settings, strategies as st

from qhaar.algebra import (Generator, NCPoly, ParseError, TensorPoly, Word, comultiply, eta, gamma,
                           multiply, omega, parse_expr, parse_word, quantum_determinant,
                           quantum_minor, relation_swap)
from qhaar.normalform import reduce_poly
from qhaar.qfield import ONE, q_pow

from oracles import comultiply_brute

q = q_pow(1)
W = parse_word


def as_poly(pairs):
    return NCPoly({w: c for w, c in pairs})


def test_generator_letters():
    assert [Generator(i, j).name() for i in (1, 2, 3) for j in (1, 2, 3)] == list("abcdefghk")
    assert Generator.from_code(Generator(2, 3).code(3), 3) == Generator(2, 3)
    assert str(W("x13 x31")) == "cg"
    assert W("x_{1,3}x_{3,1}") == W("cg")
    assert str(parse_word("x12 x21", n=4)) == "x12 x21"


@pytest.mark.parametrize("text", ["abi", "aj", "x14", "x04", "a?"])
def test_parse_rejects(text):
    with pytest.raises(ParseError):
        parse_word(text)


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_word("abi")
    assert info.value.position == 2


def test_relation_swap_examples():
    a, b, d, e = Generator(1, 1), Generator(1, 2), Generator(2, 1), Generator(2, 2)
    assert relation_swap(a, b) == [(W("ba"), q)]
    assert relation_swap(b, d) == [(W("db"), ONE)]
    assert relation_swap(a, e) == [(W("ea"), ONE), (W("bd"), q - q_pow(-1))]
    assert relation_swap(a, a) == [(W("aa"), ONE)]


def test_relation_swap_round_trip():
    gens = [Generator(i, j) for i in (1, 2, 3) for j in (1, 2, 3)]
    for g1 in gens:
        for g2 in gens:
            first = relation_swap(g1, g2)
            out = NCPoly()
            for w, c in first:
                if w == Word.of([g2, g1]):
                    out = out + as_poly(relation_swap(g2, g1)).scale(c)
                else:
                    out = out + NCPoly.from_word(w, c)
            assert out == NCPoly.from_word(Word.of([g1, g2])), (g1, g2)


def test_multiply_examples():
    a, b, c = (NCPoly.from_word(W(x)) for x in "abc")
    assert multiply(a, NCPoly.from_word(W("e"))) == NCPoly.from_word(W("ae"))
    assert (a - b.scale(q)) * c == NCPoly({W("ac"): ONE, W("bc"): -q})
    assert NCPoly() * a == NCPoly()


def test_quantum_determinant():
    assert quantum_determinant(1) == NCPoly({Word((0,), 1): ONE}, 1)
    two = NCPoly({Word((0, 3), 2): ONE, Word((1, 2), 2): -q}, 2)
    assert quantum_determinant(2) == two
    assert quantum_determinant(3) == parse_expr("aek - q afh - q bdk + q^2 bfg + q^2 cdh - q^3 ceg")


def _to_pairs(w):
    return tuple(divmod(c, 3) for c in w.letters)


def _from_pairs(pairs):
    return Word(tuple(i * 3 + j for i, j in pairs))


@pytest.mark.parametrize("text", ["a", "ae", "cdh", "aekb"])
def test_comultiply_matches_brute_force(text):
    w = W(text)
    got = comultiply(w)
    expected = {(_from_pairs(l), _from_pairs(r)): c for (l, r), c in comultiply_brute(_to_pairs(w)).items()}
    assert got.terms == {k: ONE * v for k, v in expected.items()}
    assert len(got.terms) == 3 ** len(w)
    assert got.satisfies_order_restriction()


def test_comultiply_examples():
    assert comultiply(W("a")).terms == {(W("a"), W("a")): ONE, (W("b"), W("d")): ONE, (W("c"), W("g")): ONE}
    assert comultiply(W("ae")).terms[(W("bd"), W("db"))] == ONE


def test_comultiply_prune():
    full = comultiply(W("aek"))
    pruned = comultiply(W("aek"), prune=lambda left: len(set(c // 3 for c in left)) == len(left)
                        and len(set(c % 3 for c in left)) == len(left))
    assert set(pruned.terms) <= set(full.terms)
    assert len(pruned.terms) == 6


words = st.lists(st.integers(min_value=0, max_value=8), min_size=1, max_size=3).map(lambda l: Word(tuple(l)))


@settings(max_examples=100, deadline=None)
@given(words, words)
def test_comultiply_homomorphism(u, v):
    assert comultiply(u * v).terms == (comultiply(u) * comultiply(v)).terms


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=8), min_size=1, max_size=2).map(lambda l: Word(tuple(l))))
def test_comultiply_intertwines_gamma_omega(w):
    left = comultiply(gamma(w))
    right = comultiply(w).map_pairs(lambda l, r: (gamma(r), gamma(l)))
    assert left.terms == right.terms
    left = comultiply(omega(w))
    right = comultiply(w).map_pairs(lambda l, r: (omega(l), omega(r)))
    assert left.terms == right.terms


def test_eta_examples():
    assert eta(W("aek")) == (ONE, W("aek"))
    assert eta(W("a")) == (q_pow(-4), W("a"))
    assert eta(W("ceg")) == (ONE, W("ceg"))


def test_gamma_omega_examples():
    assert gamma(W("afh")) == W("ahf")
    assert gamma(W("aek")) == W("aek")
    assert omega(W("cdh")) == W("bfg")
    assert omega(W("ceg")) == W("ceg")
    rng = random.Random(7)
    for _ in range(50):
        w = Word(tuple(rng.randrange(9) for _ in range(rng.randint(0, 8))))
        assert gamma(gamma(w)) == w and omega(omega(w)) == w


def test_dq_fixed_by_gamma_and_omega():
    dq = quantum_determinant(3)
    base = reduce_poly(dq)
    assert reduce_poly(dq.map_words(gamma)) == base
    assert reduce_poly(dq.map_words(omega)) == base


def test_quantum_minor_examples():
    assert quantum_minor(1, 1) == parse_expr("ek - q fh")
    assert quantum_minor(2, 2) == parse_expr("ak - q cg")
    assert quantum_minor(3, 1) == parse_expr("bf - q ce")


def test_parse_expr():
    p = parse_expr("(-q)^(-1) * a h (b f - q c e)")
    expected = (NCPoly.from_word(W("ahbf")) - NCPoly.from_word(W("ahce")).scale(q)).scale(-q_pow(-1))
    assert p == expected
    assert parse_expr("(q^2 - 1)^2/q").scalar_value() == (q ** 2 - 1) ** 2 / q
    assert parse_expr("2 a - a - a").is_zero()
    with pytest.raises(ParseError):
        parse_expr("a / b")
    with pytest.raises(ParseError):
        parse_expr("(a + b")


def test_tensor_order_restriction_detects_violation():
    bad = TensorPoly({(W("a"), W("e")): ONE})
    assert not bad.satisfies_order_restriction()
