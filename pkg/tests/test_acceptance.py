"""Acceptance criteria 1-9, one test each, with exact comparisons.

Each test records a PASS/FAIL line that is printed in the terminal summary.
Run directly with ``python tests/test_acceptance.py``.
"""

import random
import sys
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import conftest
from qhaar.algebra import NCPoly, Word, eta_exponent, gamma, omega, parse_word
from qhaar.haar import (derive_linear_relation, full_algorithm, haar, haar_order1, haar_poly,
                        rec_cdh_bfg_ceg, rec_cdh_ceg, solve_order, source_matrix_solution, star,
                        symmetry_orbit)
from qhaar.haar import relations as _relations
from qhaar.haar.state import TableStore
from qhaar.normalform import (StdExponents, clear_cache, counting_matrix, enumerate_basis,
                              invariant_check_count, reduce, std_word)
from qhaar.qfield import ONE, ZERO, QRational, q_pow
from qhaar.reference import (REWRITE_GROUPS, WEINGARTEN_EXAMPLES, reference_extra, reference_table,
                             rewrite_identities)

from oracles import doubly_stochastic_matrices
from test_haar import _ceg_relation_entries, _ceg_relation_bases

q = q_pow(1)
E = StdExponents
SOLVED: dict = {}


@contextmanager
def criterion(k, text):
    try:
        yield
    except BaseException:
        conftest.ACCEPTANCE[k] = (False, text)
        print(f"criterion {k}: FAIL  {text}")
        raise
    conftest.ACCEPTANCE[k] = (True, text)
    print(f"criterion {k}: PASS  {text}")


def _cold():
    clear_cache()
    for fn in (_relations._derive_laurent, _relations._dq_lift_laurent, _relations._dq_power_laurent):
        fn.cache_clear()


def _solved(m):
    if m not in SOLVED:
        for k in range(1, m):
            _solved(k)
        SOLVED[m] = solve_order(m, SOLVED.__getitem__)
    return SOLVED[m]


def _timed_solve(m):
    for k in range(1, m):
        _solved(k)
    _cold()
    start = time.perf_counter()
    table = solve_order(m, SOLVED.__getitem__)
    elapsed = time.perf_counter() - start
    SOLVED[m] = table
    return table, elapsed


def test_criterion_1_order_one():
    with criterion(1, "order 1: solve_order, haar_order1 and full_algorithm equal the table, < 1 s"):
        _cold()
        start = time.perf_counter()
        solved = solve_order(1, SOLVED.__getitem__)
        staged = full_algorithm(1, SOLVED.__getitem__)
        perms = {E(1, 0, 0, 0, 0, 0): (1, 2, 3), E(0, 1, 0, 0, 0, 0): (1, 3, 2),
                 E(0, 0, 1, 0, 0, 0): (2, 1, 3), E(0, 0, 0, 1, 0, 0): (2, 3, 1),
                 E(0, 0, 0, 0, 1, 0): (3, 1, 2), E(0, 0, 0, 0, 0, 1): (3, 2, 1)}
        closed = {e: haar_order1(p) for e, p in perms.items()}
        elapsed = time.perf_counter() - start
        SOLVED[1] = solved
        ref = reference_table(1)
        assert len(ref) == 6
        for e, v in ref.items():
            assert solved.values[e] == v and staged.values[e] == v and closed[e] == v
        assert elapsed < 1.0, elapsed


def test_criterion_2_order_two():
    with criterion(2, "order 2: all 21 solver values equal the table, < 1 min"):
        table, elapsed = _timed_solve(2)
        ref = reference_table(2)
        assert len(ref) == 21 == len(table.values)
        for e, v in ref.items():
            assert table.values[e] == v
        assert elapsed < 60, elapsed


def test_criterion_3_order_three():
    with criterion(3, "order 3: all 55 solver values equal the table, < 30 min"):
        table, elapsed = _timed_solve(3)
        values = table.values
        ref = reference_table(3)
        assert len(values) == 55
        for e, v in ref.items():
            assert values[e] == v
        # The two basis values not listed directly are pinned by the listed
        # h(afhbdkceg) through its rewrite, and by the orbit symmetry.
        unlisted = set(values) - set(ref)
        assert unlisted == {E(0, 1, 0, 1, 1, 0), E(0, 0, 1, 1, 1, 0)}
        (word, published), = reference_extra(3).items()
        decomp = reduce(parse_word(word))
        rest = sum((c * ref[e] for e, c in decomp.items() if e in ref), ZERO)
        target = E(0, 1, 0, 1, 1, 0)
        assert set(decomp) - set(ref) == {target}
        assert values[target] == (published - rest) / decomp[target]
        assert values[E(0, 0, 1, 1, 1, 0)] == values[target]
        assert elapsed < 1800, elapsed


def test_criterion_4_rewrite_identities():
    with criterion(4, "all eight rewrite identities reproduced exactly by reduce"):
        pending = rewrite_identities()
        checked = 0
        for _, size in REWRITE_GROUPS:
            group, pending = pending[:size], pending[size:]
            for word, expected in group:
                assert reduce(word) == expected, word
            checked += 1
        assert checked == 8 and not pending


def test_criterion_5_closed_forms():
    with criterion(5, "closed forms and both recursions agree with solve_order for m = 1..4"):
        for m in (1, 2, 3, 4):
            values = _solved(m).values
            sm = source_matrix_solution(m)
            assert len(sm) == (6 if m == 1 else 7)
            for e, v in sm.items():
                assert values[e] == v, (m, e)
            for i, v in rec_cdh_ceg(m).items():
                assert values[E(0, 0, 0, 0, i, m - i)] == v, (m, i)
            for (r, s), v in rec_cdh_bfg_ceg(m).items():
                assert values[E(0, 0, 0, s, r, m - r - s)] == v, (m, r, s)


def test_criterion_6_source_matrix_entries():
    with criterion(6, "derive_linear_relation reproduces source-matrix entries at m = 2 and 3"):
        for m in (2, 3):
            cols, rows = _ceg_relation_bases(m)
            eq = E(0, 0, 0, 0, 0, m)
            matched = set()
            for name, expected in _ceg_relation_entries(m).items():
                rel = derive_linear_relation(eq, rows[name])
                got = dict(rel.coefficients)
                got[eq] = got.get(eq, ZERO) - rel.rhs_coeff
                for col, value in zip(cols, expected):
                    assert got.get(col, ZERO) == value, (m, name, col)
                    if value:
                        matched.add((name, col))
            assert len(matched) >= 5


def _random_balanced(rng, max_len):
    m = rng.randint(1, max_len // 3)
    letters = list(std_word(rng.choice(enumerate_basis(m))).letters)
    rng.shuffle(letters)
    return Word(tuple(letters))


def test_criterion_7_symmetries():
    with criterion(7, "orbit symmetries, the afh/ceg recursion identity, and gamma/omega/modular invariance"):
        store = TableStore(None, max_order=3)
        for m in (1, 2, 3):
            store._tables[m] = _solved(m)
            values = _solved(m).values
            for e in values:
                for f in symmetry_orbit(e):
                    assert values[f] == values[e]
            for m1 in range(m):
                for m2 in range(m - m1):
                    m3 = m - 2 - m1 - m2
                    if m3 >= 0:
                        assert values[E(0, 1, 0, m1, m2, m3 + 1)] == values[E(0, 0, 0, m1 + 1, m2 + 1, m3)]
        rng = random.Random(9)
        for _ in range(220):
            w = _random_balanced(rng, 9)
            value = haar(w, store)
            assert haar(gamma(w), store) == value
            assert haar(omega(w), store) == value
            cut = rng.randint(0, len(w))
            u, v = w.letters[:cut], w.letters[cut:]
            assert haar(Word(v + u), store) * q_pow(eta_exponent(u, 3)) == value


def test_criterion_8_weingarten():
    with criterion(8, "q -> 1 limits of the three adjoint examples are 1/8, -1/24, 1/6"):
        store = TableStore(None, max_order=2)
        store._tables.update({m: _solved(m) for m in (1, 2)})
        limits = []
        for _, left, adjoints, _, _ in WEINGARTEN_EXAMPLES:
            p = NCPoly.from_word(parse_word(left))
            for i, j in adjoints:
                p = p * star(i, j)
            limits.append(haar_poly(p, store).eval_at(1))
        assert limits == [Fraction(1, 8), Fraction(-1, 24), Fraction(1, 6)]


small = st.integers(min_value=-6, max_value=6)
coeffs = st.lists(small, min_size=1, max_size=5)


@st.composite
def rationals(draw):
    num = draw(coeffs)
    den = draw(coeffs.filter(lambda c: any(c)))
    return QRational(num, den) * q_pow(draw(st.integers(min_value=-3, max_value=3)))


@st.composite
def balanced_words(draw):
    m = draw(st.integers(min_value=1, max_value=3))
    mat = draw(st.sampled_from(doubly_stochastic_matrices(m)))
    letters = [3 * i + j for i in range(3) for j in range(3) for _ in range(mat[i][j])]
    return Word(tuple(draw(st.permutations(letters))))


def test_criterion_9_property_suites():
    with criterion(9, "field axioms, confluence, reduce invariants, brute-force basis counts"):
        runs = {"field": 0, "confluence": 0}

        @settings(max_examples=1000, deadline=None, database=None)
        @given(rationals(), rationals(), rationals())
        def field_axioms(a, b, c):
            runs["field"] += 1
            assert (a + b) + c == a + (b + c) and a + b == b + a
            assert (a * b) * c == a * (b * c) and a * b == b * a
            assert a * (b + c) == a * b + a * c
            assert a - a == ZERO and (not a or a * a.inv() == ONE)

        @settings(max_examples=500, deadline=None, database=None)
        @given(balanced_words())
        def confluence(w):
            runs["confluence"] += 1
            assert reduce(w, "left-to-right") == reduce(w, "right-to-left")

        before = invariant_check_count()
        field_axioms()
        confluence()
        assert runs["field"] >= 1000 and runs["confluence"] >= 500
        assert invariant_check_count() - before >= 1000  # two strategies per confluence example
        expected = {1: 6, 2: 21, 3: 55, 4: 120, 5: 231, 6: 406}
        for m, count in expected.items():
            mats = doubly_stochastic_matrices(m)
            basis = enumerate_basis(m)
            assert len(mats) == len(basis) == count
            assert {counting_matrix(std_word(e)).entries for e in basis} == set(mats)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
