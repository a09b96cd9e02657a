"""Counting matrices, the standard-monomial basis for n = 3, and reduction.

Every balanced word of order m rewrites, using the defining relations only,
into a combination of standard monomials

    (aek)^c1 (afh)^c2 (bdk)^c3 (bfg)^c4 (cdh)^c5 (ceg)^c6

with one representative per doubly stochastic counting matrix.  Swaps of
q-commuting letters only rescale, and every cross-relation error word has a
strictly smaller counting matrix in row-major lexicographic order, which
makes the rewriting terminate.

Internally coefficients are Laurent polynomials ``{exponent: int}``; the
public :func:`reduce` converts them to :class:`QRational`.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Union

from .algebra import NCPoly, Word, swap_rule
from .qfield import QRational

__all__ = [
    "CountingMatrix",
    "StdExponents",
    "SEGMENTS",
    "InvariantViolation",
    "NotBalancedError",
    "counting_matrix",
    "doubly_stochastic_order",
    "matrix_order_key",
    "std_rep",
    "std_word",
    "enumerate_basis",
    "reduce",
    "reduce_poly",
    "reduce_laurent",
    "set_invariant_checking",
    "invariant_check_count",
    "clear_cache",
]

Laurent = dict  # exponent -> int


@dataclass(frozen=True)
class CountingMatrix:
    entries: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.entries)

    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(r) for r in self.entries)

    def col_sums(self) -> tuple[int, ...]:
        return tuple(sum(c) for c in zip(*self.entries))

    @classmethod
    def of(cls, rows: Iterable[Iterable[int]]) -> "CountingMatrix":
        return cls(tuple(tuple(int(x) for x in r) for r in rows))


class StdExponents(NamedTuple):
    c1: int = 0
    c2: int = 0
    c3: int = 0
    c4: int = 0
    c5: int = 0
    c6: int = 0

    @property
    def order(self) -> int:
        return sum(self)

    @property
    def key(self) -> str:
        return ".".join(str(c) for c in self)

    @classmethod
    def from_key(cls, key: str) -> "StdExponents":
        parts = key.strip().split(".")
        if len(parts) != 6:
            raise ValueError(f"exponent key must have six fields: {key!r}")
        try:
            vals = [int(p) for p in parts]
        except ValueError:
            raise ValueError(f"exponent key must be integers: {key!r}") from None
        if any(v < 0 for v in vals):
            raise ValueError(f"exponents must be non-negative: {key!r}")
        return cls(*vals)

    def is_basis(self) -> bool:
        return self.c2 * self.c3 * self.c6 == 0

    def letter_counts(self) -> tuple[int, ...]:
        """Occurrences of each generator code 0..8 in the standard word."""
        counts = [0] * 9
        for seg, c in zip(SEGMENTS, self):
            for code in seg:
                counts[code] += c
        return tuple(counts)

    def __str__(self):
        parts = []
        for name, c in zip(SEGMENT_NAMES, self):
            if c == 1:
                parts.append(name)
            elif c > 1:
                parts.append(f"({name})^{c}")
        return "".join(parts) or "1"


# aek afh bdk bfg cdh ceg as generator codes
SEGMENTS: tuple[tuple[int, int, int], ...] = (
    (0, 4, 8), (0, 5, 7), (1, 3, 8), (1, 5, 6), (2, 3, 7), (2, 4, 6),
)
SEGMENT_NAMES = ("aek", "afh", "bdk", "bfg", "cdh", "ceg")
_SEG_COLS = tuple(tuple(c % 3 for c in seg) for seg in SEGMENTS)


class NotBalancedError(ValueError):
    """The counting matrix of the word is not doubly stochastic."""


class InvariantViolation(AssertionError):
    pass


# ---------------------------------------------------------------------------
# counting matrices and the basis
# ---------------------------------------------------------------------------

def _counts(letters, n: int) -> list[int]:
    cnt = [0] * (n * n)
    for c in letters:
        cnt[c] += 1
    return cnt


def counting_matrix(w: Word) -> CountingMatrix:
    cnt = _counts(w.letters, w.n)
    n = w.n
    return CountingMatrix(tuple(tuple(cnt[i * n:(i + 1) * n]) for i in range(n)))


def doubly_stochastic_order(M: CountingMatrix) -> Optional[int]:
    rows, cols = M.row_sums(), M.col_sums()
    k = rows[0] if rows else 0
    if k < 1 or any(r != k for r in rows) or any(c != k for c in cols):
        return None
    return k


def matrix_order_key(M: CountingMatrix) -> tuple[int, ...]:
    return tuple(x for r in M.entries for x in r)


def _std_rep_flat(flat: tuple[int, ...]) -> StdExponents:
    a = min(flat)
    N = [x - a for x in flat]
    zero = N.index(0)
    dead = {s for s, seg in enumerate(SEGMENTS) if zero in seg}
    coeff = [0] * 6
    for s, seg in enumerate(SEGMENTS):
        if s in dead:
            continue
        for cell in seg:
            owners = [t for t, other in enumerate(SEGMENTS) if cell in other and t not in dead]
            if owners == [s]:
                coeff[s] = N[cell]
                break
        else:  # pragma: no cover - impossible for 3x3 permutation matrices
            raise ValueError("no private cell for a permutation segment")
    rebuilt = [0] * 9
    for s, seg in enumerate(SEGMENTS):
        for cell in seg:
            rebuilt[cell] += coeff[s]
    if rebuilt != N or min(coeff) < 0:
        raise NotBalancedError(f"matrix {flat} does not decompose over permutation matrices")
    coeff[0] += a
    coeff[3] += a
    coeff[4] += a
    return StdExponents(*coeff)


def std_rep(M: CountingMatrix) -> StdExponents:
    if M.n != 3:
        raise ValueError("standard representatives are defined for n=3")
    if doubly_stochastic_order(M) is None:
        raise NotBalancedError(f"counting matrix {M.entries} is not doubly stochastic")
    return _std_rep_flat(matrix_order_key(M))


def std_word(e: StdExponents) -> Word:
    letters: list[int] = []
    for seg, c in zip(SEGMENTS, e):
        letters.extend(seg * c)
    return Word(tuple(letters), 3)


def enumerate_basis(m: int) -> list[StdExponents]:
    if m < 0:
        raise ValueError("order must be non-negative")
    if m == 0:
        return [StdExponents()]
    mats = []
    for a in range(m + 1):
        for b in range(m - a + 1):
            for d in range(m - a + 1):
                for e in range(m - b + 1):
                    c = m - a - b
                    f = m - d - e
                    g = m - a - d
                    h = m - b - e
                    k = m - c - f
                    if f < 0 or g < 0 or h < 0 or k < 0 or g + h + k != m:
                        continue
                    mats.append((a, b, c, d, e, f, g, h, k))
    mats.sort()
    return [_std_rep_flat(mat) for mat in mats]


# ---------------------------------------------------------------------------
# Laurent helpers
# ---------------------------------------------------------------------------

def _lacc(dst: Laurent, src: Laurent, shift: int, scale: int) -> None:
    for e, c in src.items():
        k = e + shift
        v = dst.get(k, 0) + c * scale
        if v:
            dst[k] = v
        else:
            dst.pop(k, None)


def _acc_decomp(dst: dict, src: dict, shift: int, scale: int) -> None:
    for key, lp in src.items():
        cur = dst.get(key)
        if cur is None:
            cur = dst[key] = {}
        _lacc(cur, lp, shift, scale)
        if not cur:
            del dst[key]


# ---------------------------------------------------------------------------
# reduction engine
# ---------------------------------------------------------------------------

_lock = threading.RLock()
_memo: dict[tuple[str, tuple[int, ...]], dict] = {}
_target_cache: dict[tuple[int, ...], tuple[StdExponents, tuple[int, ...]]] = {}
_check = {"enabled": False, "count": 0}


def set_invariant_checking(enabled: bool) -> None:
    """Check sum preservation and monotonicity on every reduction."""
    _check["enabled"] = bool(enabled)


def invariant_check_count() -> int:
    return _check["count"]


def clear_cache() -> None:
    with _lock:
        _memo.clear()
        _target_cache.clear()


def _target(letters: tuple[int, ...]) -> tuple[StdExponents, tuple[int, ...]]:
    cnt = tuple(_counts(letters, 3))
    hit = _target_cache.get(cnt)
    if hit is None:
        rows = [sum(cnt[3 * i:3 * i + 3]) for i in range(3)]
        cols = [cnt[j] + cnt[3 + j] + cnt[6 + j] for j in range(3)]
        m = rows[0]
        if m < 1 or any(r != m for r in rows) or any(c != m for c in cols):
            raise NotBalancedError(f"word {Word(letters)} is not balanced")
        e = _std_rep_flat(cnt)
        hit = (e, std_word(e).letters)
        _target_cache[cnt] = hit
    return hit


def _sums(letters) -> tuple[tuple[int, ...], tuple[int, ...]]:
    rows = [0, 0, 0]
    cols = [0, 0, 0]
    for c in letters:
        rows[c // 3] += 1
        cols[c % 3] += 1
    return tuple(rows), tuple(cols)


def _reduce_ltr(letters: tuple[int, ...]) -> dict:
    key = ("ltr", letters)
    hit = _memo.get(key)
    if hit is not None:
        return hit
    exps, target = _target(letters)
    cur = list(letters)
    shift = 0
    out: dict = {}
    checking = _check["enabled"]
    sums = _sums(letters) if checking else None
    for pos in range(len(cur)):
        want = target[pos]
        if cur[pos] == want:
            continue
        j = cur.index(want, pos + 1)
        while j > pos:
            x, y = cur[j - 1], cur[j]
            e, err, s = swap_rule(x, y, 3)
            if err is not None:
                ew = tuple(cur[:j - 1]) + err + tuple(cur[j + 1:])
                if checking and _sums(ew) != sums:
                    raise InvariantViolation(f"error word {Word(ew)} changed row/column sums")
                sub = _reduce_ltr(ew)
                _acc_decomp(out, sub, shift + 1, s)
                _acc_decomp(out, sub, shift - 1, -s)
            shift += e
            cur[j - 1], cur[j] = y, x
            j -= 1
    _acc_decomp(out, {exps: {0: 1}}, shift, 1)
    _memo[key] = out
    return out


def _reduce_rtl(letters: tuple[int, ...]) -> dict:
    key = ("rtl", letters)
    hit = _memo.get(key)
    if hit is not None:
        return hit
    exps, target = _target(letters)
    cur = list(letters)
    shift = 0
    out: dict = {}
    checking = _check["enabled"]
    sums = _sums(letters) if checking else None
    for pos in range(len(cur) - 1, -1, -1):
        want = target[pos]
        if cur[pos] == want:
            continue
        j = max(i for i in range(pos) if cur[i] == want)
        while j < pos:
            x, y = cur[j], cur[j + 1]
            e, err, s = swap_rule(x, y, 3)
            if err is not None:
                ew = tuple(cur[:j]) + err + tuple(cur[j + 2:])
                if checking and _sums(ew) != sums:
                    raise InvariantViolation(f"error word {Word(ew)} changed row/column sums")
                sub = _reduce_rtl(ew)
                _acc_decomp(out, sub, shift + 1, s)
                _acc_decomp(out, sub, shift - 1, -s)
            shift += e
            cur[j], cur[j + 1] = y, x
            j += 1
    _acc_decomp(out, {exps: {0: 1}}, shift, 1)
    _memo[key] = out
    return out


_STRATEGIES = {"left-to-right": _reduce_ltr, "right-to-left": _reduce_rtl}


def _check_monotone(letters, result: dict) -> None:
    cnt = _counts(letters, 3)
    for e in result:
        lc = e.letter_counts()
        if lc[0] > cnt[0] or lc[8] > cnt[8] or lc[2] < cnt[2] or lc[6] < cnt[6]:
            raise InvariantViolation(
                f"reduce({Word(letters)}) produced {e} violating a/k/c/g monotonicity")
    _check["count"] += 1


def reduce_laurent(letters: tuple[int, ...], strategy: str = "left-to-right") -> dict:
    """Decomposition with Laurent-polynomial coefficients ``{exp: int}``.

    The returned mapping is shared with the cache and must not be mutated.
    """
    fn = _STRATEGIES[strategy]
    with _lock:
        result = fn(tuple(letters))
        if _check["enabled"]:
            _check_monotone(letters, result)
    return result


def _word_letters(w: Union[Word, str]) -> tuple[int, ...]:
    if isinstance(w, str):
        from .algebra import parse_word
        w = parse_word(w)
    if w.n != 3:
        raise ValueError("reduce is implemented for n=3")
    return w.letters


def reduce(w: Union[Word, str], strategy: str = "left-to-right") -> dict[StdExponents, QRational]:
    """Decompose a balanced word over the standard-monomial basis."""
    letters = _word_letters(w)
    if not letters:
        raise NotBalancedError("the empty word has no positive order")
    return {e: QRational.from_laurent(c)
            for e, c in reduce_laurent(letters, strategy).items()}


def reduce_poly(p: NCPoly, strategy: str = "left-to-right") -> dict[StdExponents, QRational]:
    """Linear extension of :func:`reduce` to a polynomial of balanced words."""
    out: dict[StdExponents, QRational] = {}
    for w, c in p.terms.items():
        for e, v in reduce(w, strategy).items():
            out[e] = out.get(e, QRational()) + c * v
    return {e: v for e, v in out.items() if v}
