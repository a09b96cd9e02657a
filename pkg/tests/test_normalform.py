import pytest
from hypothesis import given, settings, strategies as st

from qhaar.algebra import NCPoly, Word, parse_expr, parse_word
from qhaar.normalform import (CountingMatrix, NotBalancedError, StdExponents, counting_matrix,
                              doubly_stochastic_order, enumerate_basis, invariant_check_count,
                              matrix_order_key, reduce, reduce_poly, std_rep, std_word)
from qhaar.qfield import ONE, q_pow
from qhaar.reference import REWRITE_IDENTITIES, rewrite_identities

from oracles import doubly_stochastic_matrices

q = q_pow(1)
W = parse_word
E = StdExponents
IDENTITY = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
ONES = ((1, 1, 1),) * 3


def test_counting_matrix_examples():
    assert counting_matrix(W("aek")).entries == IDENTITY
    assert counting_matrix(W("aekbfgcdh")).entries == ONES
    assert counting_matrix(W("ab")).entries == ((1, 1, 0), (0, 0, 0), (0, 0, 0))


def test_doubly_stochastic_order():
    assert doubly_stochastic_order(CountingMatrix(IDENTITY)) == 1
    assert doubly_stochastic_order(CountingMatrix(ONES)) == 3
    assert doubly_stochastic_order(CountingMatrix(((1, 1, 0), (0, 1, 0), (0, 0, 1)))) is None
    assert doubly_stochastic_order(CountingMatrix(((0,) * 3,) * 3)) is None


def test_matrix_order_key():
    assert matrix_order_key(CountingMatrix(IDENTITY)) == (1, 0, 0, 0, 1, 0, 0, 0, 1)
    assert matrix_order_key(CountingMatrix(ONES)) == (1,) * 9
    anti = counting_matrix(W("ceg"))
    assert matrix_order_key(anti) < matrix_order_key(CountingMatrix(IDENTITY))


def test_std_rep_examples():
    assert std_rep(CountingMatrix(IDENTITY)) == E(1, 0, 0, 0, 0, 0)
    assert std_rep(CountingMatrix(ONES)) == E(1, 0, 0, 1, 1, 0)
    assert std_rep(CountingMatrix(((0, 1, 1), (1, 0, 1), (1, 1, 0)))) == E(0, 0, 0, 1, 1, 0)
    with pytest.raises(ValueError):
        std_rep(CountingMatrix(((1, 1, 0), (0, 1, 0), (0, 0, 1))))


def test_std_word_examples():
    assert std_word(E(1, 0, 0, 0, 0, 0)) == W("aek")
    assert std_word(E(0, 1, 0, 0, 0, 1)) == W("afhceg")
    assert std_word(E(2, 0, 0, 0, 0, 0)) == W("aekaek")


def test_exponent_keys():
    e = E(1, 0, 2, 0, 0, 3)
    assert e.key == "1.0.2.0.0.3" and E.from_key(e.key) == e and e.order == 6
    assert str(E(2, 1, 0, 0, 0, 0)) == "(aek)^2afh"
    for bad in ("1.0.0", "1.0.0.0.0.-1", "a.b.c.d.e.f"):
        with pytest.raises(ValueError):
            E.from_key(bad)


@pytest.mark.parametrize("m", range(0, 7))
def test_basis_matches_brute_force(m):
    expected = {6: 406, 5: 231, 4: 120, 3: 55, 2: 21, 1: 6, 0: 1}
    basis = enumerate_basis(m)
    if m == 0:
        assert basis == [E()]
        return
    mats = doubly_stochastic_matrices(m)
    assert len(basis) == len(mats) == expected[m]
    assert len(set(basis)) == len(basis)
    assert all(e.is_basis() and e.order == m for e in basis)
    got = {counting_matrix(std_word(e)).entries for e in basis}
    assert got == set(mats)
    keys = [matrix_order_key(counting_matrix(std_word(e))) for e in basis]
    assert keys == sorted(keys)


def test_reduce_examples():
    assert reduce(W("cegafh")) == {E(0, 1, 0, 0, 0, 1): q ** 2, E(0, 0, 0, 1, 1, 0): 1 - q ** 2}
    assert reduce(W("aek")) == {E(1, 0, 0, 0, 0, 0): ONE}
    expected = {
        E(1, 0, 0, 1, 1, 0): q,
        E(1, 0, 0, 1, 0, 1): 1 - q ** 2,
        E(1, 0, 0, 0, 1, 1): 1 - q ** 2,
        E(1, 0, 0, 0, 0, 2): (q ** 2 - 1) ** 2 / q,
        E(0, 1, 0, 1, 1, 0): 1 - q ** 2,
        E(0, 1, 0, 1, 0, 1): q ** 3 - q,
        E(0, 1, 0, 0, 1, 1): q ** 3 - q,
        E(0, 1, 0, 0, 0, 2): -(q ** 2 - 1) ** 2,
    }
    assert reduce(W("afhbdkceg")) == expected


@pytest.mark.parametrize("index", range(len(REWRITE_IDENTITIES)))
def test_rewrite_identity(index):
    word, expected = rewrite_identities()[index]
    assert reduce(word) == expected
    assert reduce(word, "right-to-left") == expected


def test_reduce_fixes_basis_words():
    for m in (1, 2, 3):
        for e in enumerate_basis(m):
            assert reduce(std_word(e)) == {e: ONE}


@pytest.mark.parametrize("text", ["ab", "aa", "abc", "aekb"])
def test_reduce_rejects_unbalanced(text):
    with pytest.raises(NotBalancedError):
        reduce(W(text))


def test_reduce_rejects_empty():
    with pytest.raises(NotBalancedError):
        reduce(Word(()))


@st.composite
def balanced_words(draw, max_order=3):
    m = draw(st.integers(min_value=1, max_value=max_order))
    mat = draw(st.sampled_from(doubly_stochastic_matrices(m)))
    letters = [3 * i + j for i in range(3) for j in range(3) for _ in range(mat[i][j])]
    return Word(tuple(draw(st.permutations(letters))))


@settings(max_examples=500, deadline=None)
@given(balanced_words())
def test_reduce_confluence(w):
    assert reduce(w, "left-to-right") == reduce(w, "right-to-left")


@settings(max_examples=60, deadline=None)
@given(balanced_words(max_order=1), balanced_words(max_order=1), balanced_words(max_order=1),
       st.integers(min_value=-3, max_value=3))
def test_reduce_linearity(u, v1, v2, k):
    c = q_pow(k) - 2
    p = NCPoly.from_word(u) * (NCPoly.from_word(v1) + NCPoly.from_word(v2).scale(c))
    lhs = reduce_poly(p)
    rhs = dict(reduce(u * v1))
    for e, v in reduce(u * v2).items():
        rhs[e] = rhs.get(e, 0 * q) + c * v
    assert lhs == {e: v for e, v in rhs.items() if v}


@settings(max_examples=200, deadline=None)
@given(balanced_words())
def test_reduce_output_is_monotone_and_balanced(w):
    counts = [w.letters.count(c) for c in range(9)]
    for e in reduce(w):
        lc = e.letter_counts()
        assert e.order * 3 == len(w) and e.is_basis()
        assert lc[0] <= counts[0] and lc[8] <= counts[8]
        assert lc[2] >= counts[2] and lc[6] >= counts[6]


def test_invariant_checks_are_running():
    before = invariant_check_count()
    reduce(W("kea"))
    assert invariant_check_count() > before


def test_reduce_poly_cancellation():
    p = parse_expr("cegafh - q^2 afhceg - (1 - q^2) bfgcdh")
    assert reduce_poly(p) == {}
