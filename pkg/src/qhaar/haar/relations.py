"""Linear relations among Haar values of standard monomials.

Right invariance of the Haar state gives, for every basis element ``s_l``
of order m,

    sum_i z_i * h(y_i) = h(s_l) * D_q^m,        Δ(s_l) = sum_i z_i ⊗ y_i.

Writing both sides over the standard basis and reading off the coefficient
of a comparing basis ``s_j`` yields one linear relation.  Only terms whose
left word can contain ``s_j`` after reduction are enumerated: reduction
never increases the number of ``a`` and ``k`` letters, never decreases the
number of ``c`` and ``g`` letters, and never increases the counting matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from typing import Callable, Mapping, Sequence

from ..algebra import inversions
from ..normalform import StdExponents, reduce_laurent, std_word
from ..qfield import ONE, QRational, q_pow

__all__ = [
    "LinearRelation",
    "haar_order1",
    "dq_power_decomposition",
    "derive_linear_relation",
    "dq_lift_relation",
    "ak_count",
]


@dataclass(frozen=True)
class LinearRelation:
    """``sum_s coefficients[s] * h(s) == rhs_coeff * h(rhs_basis)``."""

    coefficients: Mapping[StdExponents, QRational]
    rhs_basis: StdExponents
    rhs_coeff: QRational

    def residual(self, value: Callable[[StdExponents], QRational]) -> QRational:
        total = QRational()
        for s, c in self.coefficients.items():
            total = total + c * value(s)
        return total - self.rhs_coeff * value(self.rhs_basis)

    def is_trivial(self) -> bool:
        return not self.coefficients and self.rhs_coeff.is_zero()


# ---------------------------------------------------------------------------
# Laurent polynomial helpers (exponent -> int)
# ---------------------------------------------------------------------------

def _lmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            k = e1 + e2
            out[k] = out.get(k, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


def _ladd_into(dst: dict, src: dict, scale: int = 1) -> None:
    for e, c in src.items():
        v = dst.get(e, 0) + scale * c
        if v:
            dst[e] = v
        else:
            dst.pop(e, None)


def _to_q(d: Mapping[StdExponents, dict]) -> dict[StdExponents, QRational]:
    return {s: QRational.from_laurent(v) for s, v in d.items() if v}


# ---------------------------------------------------------------------------
# order one and the quantum determinant
# ---------------------------------------------------------------------------

def haar_order1(perm: Sequence[int], n: int | None = None) -> QRational:
    """``(-q)^{l(perm)} / [n]_{q^2}!`` for a permutation given by 1-based images."""
    perm = tuple(perm)
    n = len(perm) if n is None else n
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError(f"{perm} is not a permutation of 1..{n}")
    q2 = QRational([0, 0, 1])
    fact = ONE
    for k in range(1, n + 1):
        fact = fact * sum((q2 ** i for i in range(k)), QRational())
    return (-q_pow(1)) ** inversions(perm) / fact


_DQ_TERMS = tuple(
    (tuple(r * 3 + p[r] for r in range(3)), inversions(p)) for p in permutations(range(3))
)


@lru_cache(maxsize=None)
def _dq_power_laurent(m: int) -> dict:
    out: dict = {}
    for combo in product(_DQ_TERMS, repeat=m):
        letters = tuple(c for seg, _ in combo for c in seg)
        inv = sum(l for _, l in combo)
        coeff = {inv: (-1) ** inv}
        for s, v in reduce_laurent(letters).items():
            cur = out.setdefault(s, {})
            _ladd_into(cur, _lmul(coeff, v))
    return {s: v for s, v in out.items() if v}


def dq_power_decomposition(m: int) -> dict[StdExponents, QRational]:
    if m < 1:
        raise ValueError("order must be positive")
    return _to_q(_dq_power_laurent(m))


# ---------------------------------------------------------------------------
# relations from comultiplication
# ---------------------------------------------------------------------------

def ak_count(e: StdExponents) -> int:
    """Number of ``a`` and ``k`` letters in the standard word of ``e``."""
    return 2 * e.c1 + e.c2 + e.c3


def _cm_key(e: StdExponents) -> tuple[int, ...]:
    return e.letter_counts()


@lru_cache(maxsize=None)
def _derive_laurent(eq: StdExponents, cmp: StdExponents) -> dict:
    m = eq.order
    word = std_word(eq).letters
    rows = [c // 3 for c in word]
    cols = [c % 3 for c in word]
    length = len(word)
    # letters of row 0 / row 2 still to place after position p
    rem0 = [0] * (length + 1)
    rem2 = [0] * (length + 1)
    for p in range(length - 1, -1, -1):
        rem0[p] = rem0[p + 1] + (rows[p] == 0)
        rem2[p] = rem2[p + 1] + (rows[p] == 2)
    target = _cm_key(cmp)
    need_a, need_k = target[0], target[8]
    max_c, max_g = target[2], target[6]

    out: dict = {}
    left = [0] * length
    right = [0] * length
    cnt = [0] * 9
    colcnt = [0, 0, 0]

    def rec(p: int) -> None:
        if p == length:
            if tuple(cnt) < target:
                return
            zdec = reduce_laurent(tuple(left)).get(cmp)
            if not zdec:
                return
            for s, v in reduce_laurent(tuple(right)).items():
                cur = out.setdefault(s, {})
                _ladd_into(cur, _lmul(zdec, v))
            return
        i, j = rows[p], cols[p]
        for k in range(3):
            if colcnt[k] == m:
                continue
            code = i * 3 + k
            if code == 2 and cnt[2] == max_c:
                continue
            if code == 6 and cnt[6] == max_g:
                continue
            left[p] = code
            right[p] = k * 3 + j
            cnt[code] += 1
            colcnt[k] += 1
            if cnt[0] + rem0[p + 1] >= need_a and cnt[8] + rem2[p + 1] >= need_k:
                rec(p + 1)
            cnt[code] -= 1
            colcnt[k] -= 1

    rec(0)
    return {s: v for s, v in out.items() if v}


def _check_pair(eq: StdExponents, cmp: StdExponents) -> None:
    if eq.order != cmp.order or eq.order < 1:
        raise ValueError("equation and comparing bases must share a positive order")
    if not (eq.is_basis() and cmp.is_basis()):
        raise ValueError("both arguments must be basis exponents (c2*c3*c6 == 0)")


def derive_linear_relation(eq: StdExponents, cmp: StdExponents) -> LinearRelation:
    """The relation read off at ``cmp`` from the invariance identity for ``eq``."""
    eq, cmp = StdExponents(*eq), StdExponents(*cmp)
    _check_pair(eq, cmp)
    b = _dq_power_laurent(eq.order).get(cmp, {})
    return LinearRelation(_to_q(_derive_laurent(eq, cmp)), eq, QRational.from_laurent(b))


@lru_cache(maxsize=None)
def _dq_lift_laurent(e: StdExponents) -> dict:
    base = std_word(e).letters
    out: dict = {}
    for seg, inv in _DQ_TERMS:
        coeff = {inv: (-1) ** inv}
        for s, v in reduce_laurent(seg + base).items():
            cur = out.setdefault(s, {})
            _ladd_into(cur, _lmul(coeff, v))
    return {s: v for s, v in out.items() if v}


def dq_lift_relation(e: StdExponents) -> LinearRelation:
    """``h(D_q · e) = h(e)`` written over the basis one order up."""
    e = StdExponents(*e)
    return LinearRelation(_to_q(_dq_lift_laurent(e)), e, ONE)
