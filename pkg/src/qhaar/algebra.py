"""The quantized coordinate ring O(SL_q(n)): words, relations, coproduct.

A generator x_{i,j} is encoded as the integer ``(i-1)*n + (j-1)``; a
:class:`Word` is a tuple of such codes together with ``n``.  For ``n = 3``
the generators are displayed with the letters::

    a b c
    d e f
    g h k
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Callable, Iterator, Mapping, Optional

from .qfield import ONE, ZERO, QRational, q_pow

__all__ = [
    "LETTERS3",
    "ParseError",
    "Generator",
    "Word",
    "NCPoly",
    "TensorPoly",
    "parse_word",
    "parse_expr",
    "relation_swap",
    "swap_rule",
    "multiply",
    "inversions",
    "quantum_determinant",
    "comultiply",
    "iter_coproduct_terms",
    "eta",
    "eta_exponent",
    "gamma",
    "omega",
    "quantum_minor",
]

LETTERS3 = "abcdefghk"
_LETTER_CODE = {ch: k for k, ch in enumerate(LETTERS3)}


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True, order=True)
class Generator:
    row: int
    col: int

    def code(self, n: int) -> int:
        if not (1 <= self.row <= n and 1 <= self.col <= n):
            raise ValueError(f"generator x{self.row}{self.col} out of range for n={n}")
        return (self.row - 1) * n + (self.col - 1)

    @classmethod
    def from_code(cls, code: int, n: int) -> "Generator":
        return cls(code // n + 1, code % n + 1)

    def name(self, n: int = 3) -> str:
        if n == 3:
            return LETTERS3[self.code(3)]
        return f"x{self.row}{self.col}"


@dataclass(frozen=True)
class Word:
    letters: tuple[int, ...]
    n: int = 3

    @classmethod
    def of(cls, gens, n: int = 3) -> "Word":
        return cls(tuple(g.code(n) for g in gens), n)

    @property
    def generators(self) -> tuple[Generator, ...]:
        return tuple(Generator.from_code(c, self.n) for c in self.letters)

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        if self.n != other.n:
            raise ValueError("words over different n")
        return Word(self.letters + other.letters, self.n)

    def __pow__(self, k: int) -> "Word":
        return Word(self.letters * k, self.n)

    def __str__(self):
        if not self.letters:
            return "1"
        if self.n == 3:
            return "".join(LETTERS3[c] for c in self.letters)
        return " ".join(f"x{c // self.n + 1}{c % self.n + 1}" for c in self.letters)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_INDEX_TOKEN = re.compile(r"x_?\{?(\d)\s*,?\s*(\d)\}?")


def parse_word(text: str, n: int = 3) -> Word:
    """Parse ``"cegafh"`` or ``"x13 x31 x22"`` into a :class:`Word`."""
    codes: list[int] = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace() or ch in "*·":
            pos += 1
            continue
        m = _INDEX_TOKEN.match(text, pos)
        if m:
            i, j = int(m.group(1)), int(m.group(2))
            if not (1 <= i <= n and 1 <= j <= n):
                raise ParseError(f"index x{i}{j} out of range for n={n}", pos)
            codes.append((i - 1) * n + (j - 1))
            pos = m.end()
            continue
        if n == 3 and ch in _LETTER_CODE:
            codes.append(_LETTER_CODE[ch])
            pos += 1
            continue
        if ch in "ij":
            raise ParseError(f"letter {ch!r} is not a generator (the alphabet skips i and j)", pos)
        raise ParseError(f"unexpected character {ch!r}", pos)
    return Word(tuple(codes), n)


# ---------------------------------------------------------------------------
# noncommutative polynomials
# ---------------------------------------------------------------------------

class NCPoly:
    """Finite linear combination of words with coefficients in Q(q)."""

    __slots__ = ("terms", "n")

    def __init__(self, terms: Optional[Mapping[Word, QRational]] = None, n: int = 3):
        self.n = n
        self.terms: dict[Word, QRational] = {}
        for w, c in (terms or {}).items():
            if w.n != n:
                raise ValueError("all words of an NCPoly must share n")
            c = QRational.coerce(c)
            if c:
                self.terms[w] = self.terms.get(w, ZERO) + c
        self.terms = {w: c for w, c in self.terms.items() if c}

    @classmethod
    def from_word(cls, w: Word, coeff=ONE) -> "NCPoly":
        return cls({w: coeff}, w.n)

    @classmethod
    def scalar(cls, c, n: int = 3) -> "NCPoly":
        return cls({Word((), n): c}, n)

    def is_zero(self) -> bool:
        return not self.terms

    def scalar_value(self) -> Optional[QRational]:
        """The coefficient of the empty word if that is the only term."""
        if not self.terms:
            return ZERO
        if len(self.terms) == 1:
            (w, c), = self.terms.items()
            if not w.letters:
                return c
        return None

    def __eq__(self, other):
        return isinstance(other, NCPoly) and self.n == other.n and self.terms == other.terms

    def __add__(self, other: "NCPoly") -> "NCPoly":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, ZERO) + c
        return NCPoly(out, self.n)

    def __neg__(self) -> "NCPoly":
        return NCPoly({w: -c for w, c in self.terms.items()}, self.n)

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def scale(self, c) -> "NCPoly":
        c = QRational.coerce(c)
        return NCPoly({w: c * v for w, v in self.terms.items()}, self.n)

    def __mul__(self, other):
        if isinstance(other, NCPoly):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int) -> "NCPoly":
        out = NCPoly.scalar(ONE, self.n)
        for _ in range(k):
            out = multiply(out, self)
        return out

    def map_words(self, f: Callable[[Word], Word]) -> "NCPoly":
        out: dict[Word, QRational] = {}
        for w, c in self.terms.items():
            v = f(w)
            out[v] = out.get(v, ZERO) + c
        return NCPoly(out, self.n)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w.letters)):
            c = self.terms[w]
            parts.append(f"({c})*{w}" if w.letters else f"({c})")
        return " + ".join(parts)

    __repr__ = __str__


def multiply(p: NCPoly, r: NCPoly) -> NCPoly:
    """Concatenation product; no reordering is performed."""
    if p.n != r.n:
        raise ValueError("NCPoly over different n")
    out: dict[Word, QRational] = {}
    for u, a in p.terms.items():
        for v, b in r.terms.items():
            w = u * v
            out[w] = out.get(w, ZERO) + a * b
    return NCPoly(out, p.n)


@dataclass
class TensorPoly:
    """Finite linear combination of pairs ``left ⊗ right``."""

    terms: dict = field(default_factory=dict)

    def __mul__(self, other: "TensorPoly") -> "TensorPoly":
        out: dict = {}
        for (l1, r1), a in self.terms.items():
            for (l2, r2), b in other.terms.items():
                key = (l1 * l2, r1 * r2)
                out[key] = out.get(key, ZERO) + a * b
        return TensorPoly({k: v for k, v in out.items() if v})

    def map_pairs(self, f) -> "TensorPoly":
        out: dict = {}
        for key, c in self.terms.items():
            k = f(*key)
            out[k] = out.get(k, ZERO) + c
        return TensorPoly({k: v for k, v in out.items() if v})

    def satisfies_order_restriction(self) -> bool:
        for left, right in self.terms:
            if len(left) != len(right):
                return False
            n = left.n
            for cl, cr in zip(left.letters, right.letters):
                if cl % n != cr // n:
                    return False
        return True


# ---------------------------------------------------------------------------
# defining relations
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def swap_rule(x: int, y: int, n: int) -> tuple[int, Optional[tuple[int, int]], int]:
    """Rewrite the product ``x·y`` of two distinct generators as

        q**e · (y·x)  +  s·(q - 1/q) · (u·v)

    Returns ``(e, (u, v) or None, s)``.
    """
    i, k = divmod(x, n)
    j, l = divmod(y, n)
    if x == y:
        return 0, None, 0
    if i == j:
        return (1 if k < l else -1), None, 0
    if k == l:
        return (1 if i < j else -1), None, 0
    if (i < j) != (k < l):
        return 0, None, 0
    if i < j:
        # x_{ik} x_{jl} = x_{jl} x_{ik} + (q - 1/q) x_{il} x_{jk}
        return 0, (i * n + l, j * n + k), 1
    # y = x_{jl} with j < i, l < k:  y x = x y + (q - 1/q) x_{jk} x_{il}
    return 0, (j * n + k, i * n + l), -1


def relation_swap(g1: Generator, g2: Generator, n: int = 3) -> list[tuple[Word, QRational]]:
    """``g1·g2`` expressed through ``g2·g1`` plus a possible error term."""
    x, y = g1.code(n), g2.code(n)
    e, err, s = swap_rule(x, y, n)
    out = [(Word((y, x), n), q_pow(e))]
    if err is not None:
        out.append((Word(err, n), (q_pow(1) - q_pow(-1)) * s))
    return out


# ---------------------------------------------------------------------------
# quantum determinant, coproduct, (anti)automorphisms
# ---------------------------------------------------------------------------

def inversions(perm) -> int:
    return sum(1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b])


def quantum_determinant(n: int) -> NCPoly:
    if n < 1:
        raise ValueError("n must be positive")
    terms = {}
    for perm in permutations(range(n)):
        w = Word(tuple(r * n + perm[r] for r in range(n)), n)
        terms[w] = (-q_pow(1)) ** inversions(perm)
    return NCPoly(terms, n)


def iter_coproduct_terms(letters: tuple[int, ...], n: int,
                         prune: Optional[Callable[[tuple[int, ...]], bool]] = None
                         ) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Yield ``(left, right)`` code tuples of Δ(word), depth first.

    ``prune(partial_left)`` returning ``False`` discards every completion of
    that partial left word.
    """
    length = len(letters)
    left: list[int] = []
    right: list[int] = []

    def rec(pos):
        if pos == length:
            yield tuple(left), tuple(right)
            return
        i, j = divmod(letters[pos], n)
        for k in range(n):
            left.append(i * n + k)
            right.append(k * n + j)
            if prune is None or prune(tuple(left)):
                yield from rec(pos + 1)
            left.pop()
            right.pop()

    yield from rec(0)


def comultiply(w: Word, prune: Optional[Callable[[tuple[int, ...]], bool]] = None) -> TensorPoly:
    n = w.n
    return TensorPoly({(Word(l, n), Word(r, n)): ONE
                       for l, r in iter_coproduct_terms(w.letters, n, prune)})


def eta_exponent(letters, n: int) -> int:
    total = 0
    for c in letters:
        i, j = divmod(c, n)
        total += 2 * (i + 1) + 2 * (j + 1) - 2 * n - 2
    return total


def eta(w: Word) -> tuple[QRational, Word]:
    """Modular automorphism: a power of q times the unchanged word."""
    return q_pow(eta_exponent(w.letters, w.n)), w


def gamma(w: Word) -> Word:
    n = w.n
    return Word(tuple((c % n) * n + c // n for c in w.letters), n)


def omega(w: Word) -> Word:
    n = w.n
    last = n * n - 1
    return Word(tuple(last - c for c in reversed(w.letters)), n)


def quantum_minor(i: int, j: int) -> NCPoly:
    """2x2 quantum minor of the 3x3 generator matrix with row i, column j removed."""
    n = 3
    rows = [r for r in range(3) if r != i - 1]
    cols = [c for c in range(3) if c != j - 1]
    (r1, r2), (c1, c2) = rows, cols
    return NCPoly({
        Word((r1 * n + c1, r2 * n + c2), n): ONE,
        Word((r1 * n + c2, r2 * n + c1), n): -q_pow(1),
    }, n)


# ---------------------------------------------------------------------------
# expression parser for noncommutative polynomials with Q(q) scalars
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(x_?\{?\d\s*,?\s*\d\}?)|([A-Za-z])|(\*\*|[-+*/^()]))")


def parse_expr(text: str, n: int = 3) -> NCPoly:
    """Parse e.g. ``"-1/q * a h (b f - q c e)(d k - q f g)"``.

    Juxtaposition and ``*`` multiply (noncommutatively for generators);
    ``q`` and integers are scalars; division is by scalars only.
    """
    tokens: list[tuple[str, str, int]] = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("num", m.group(1), start))
        elif m.group(2):
            tokens.append(("gen", m.group(2), start))
        elif m.group(3):
            tokens.append(("name", m.group(3), start))
        else:
            op = m.group(4)
            tokens.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    idx = 0

    def peek():
        return tokens[idx]

    def take():
        nonlocal idx
        tok = tokens[idx]
        idx += 1
        return tok

    def expr() -> NCPoly:
        out = term()
        while peek()[:2] in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def starts_factor(tok) -> bool:
        return tok[0] in ("num", "gen", "name") or tok[:2] == ("op", "(")

    def term() -> NCPoly:
        sign = 1
        while peek()[:2] in (("op", "-"), ("op", "+")):
            if take()[1] == "-":
                sign = -sign
        out = power()
        while True:
            tok = peek()
            if tok[:2] == ("op", "*"):
                take()
                out = multiply(out, power())
            elif tok[:2] == ("op", "/"):
                take()
                den = power()
                s = den.scalar_value()
                if s is None or s.is_zero():
                    raise ParseError("division only by a nonzero scalar", tok[2])
                out = out.scale(s.inv())
            elif starts_factor(tok):
                out = multiply(out, power())
            else:
                break
        return out.scale(sign) if sign < 0 else out

    def power() -> NCPoly:
        base = atom()
        if peek()[:2] == ("op", "^"):
            take()
            neg = False
            brace = False
            if peek()[:2] == ("op", "("):
                take()
                brace = True
            if peek()[:2] == ("op", "-"):
                take()
                neg = True
            tok = take()
            if tok[0] != "num":
                raise ParseError("expected integer exponent", tok[2])
            k = int(tok[1])
            if brace:
                if take()[:2] != ("op", ")"):
                    raise ParseError("expected ')'", tokens[idx - 1][2])
            if neg:
                s = base.scalar_value()
                if s is None or s.is_zero():
                    raise ParseError("negative powers only for nonzero scalars", tok[2])
                return NCPoly.scalar(s.inv() ** k, n)
            return base ** k
        return base

    def atom() -> NCPoly:
        tok = take()
        kind, val, where = tok
        if kind == "num":
            return NCPoly.scalar(QRational.from_int(int(val)), n)
        if kind == "gen":
            return NCPoly.from_word(parse_word(val, n))
        if kind == "name":
            if val == "q":
                return NCPoly.scalar(q_pow(1), n)
            if n == 3 and val in _LETTER_CODE:
                return NCPoly.from_word(Word((_LETTER_CODE[val],), n))
            if val in "ij":
                raise ParseError(f"letter {val!r} is not a generator (the alphabet skips i and j)", where)
            raise ParseError(f"unknown symbol {val!r}", where)
        if tok[:2] == ("op", "("):
            inner = expr()
            close = take()
            if close[:2] != ("op", ")"):
                raise ParseError("expected ')'", close[2])
            return inner
        raise ParseError(f"unexpected token {val!r}", where)

    result = expr()
    if peek()[0] != "end":
        raise ParseError(f"unexpected token {peek()[1]!r}", peek()[2])
    return result
