"""Exact arithmetic in Q(q), the field of rational functions in one variable.

Every :class:`QRational` is kept in a canonical reduced form, so equality of
values is structural equality of the stored coefficient tuples:

* numerator and denominator are coprime over Q[q];
* their integer contents are coprime;
* the denominator has a positive leading coefficient;
* zero is stored as ``0/1``.

Negative powers of ``q`` (Laurent input) are absorbed into the denominator.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Mapping, Union

__all__ = [
    "IntPoly",
    "QRational",
    "PoleError",
    "q_pow",
    "add",
    "sub",
    "mul",
    "div",
    "neg",
    "inv",
    "eval_at",
]


class PoleError(ZeroDivisionError):
    """The denominator vanishes at the requested evaluation point."""


# ---------------------------------------------------------------------------
# dense integer polynomial kernels; lists are ascending, no trailing zeros
# ---------------------------------------------------------------------------

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _padd(f, g) -> list[int]:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] += c
    return _trim(out)


def _psub(f, g) -> list[int]:
    out = list(f)
    if len(out) < len(g):
        out.extend([0] * (len(g) - len(out)))
    for i, c in enumerate(g):
        out[i] -= c
    return _trim(out)


def _pmul(f, g) -> list[int]:
    if not f or not g:
        return []
    if len(f) < len(g):
        f, g = g, f
    out = [0] * (len(f) + len(g) - 1)
    for j, b in enumerate(g):
        if b:
            for i, a in enumerate(f):
                out[i + j] += a * b
    return _trim(out)


def _pscale(f, k: int) -> list[int]:
    if k == 0:
        return []
    return [c * k for c in f]


def _content(f) -> int:
    g = 0
    for c in f:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def _primitive(f) -> list[int]:
    """Primitive part with positive leading coefficient."""
    if not f:
        return []
    g = _content(f)
    if f[-1] < 0:
        g = -g
    if g == 1:
        return list(f)
    return [c // g for c in f]


def _valuation(f) -> int:
    for i, c in enumerate(f):
        if c:
            return i
    raise ValueError("valuation of zero polynomial")


def _div_exact(f, g):
    """Quotient f/g over Z if g divides f exactly, else ``None``."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if not f:
        return []
    df, dg = len(f) - 1, len(g) - 1
    if df < dg:
        return None
    rem = list(f)
    lc = g[-1]
    quo = [0] * (df - dg + 1)
    for k in range(df - dg, -1, -1):
        c = rem[k + dg]
        if c == 0:
            continue
        qk, r = divmod(c, lc)
        if r:
            return None
        quo[k] = qk
        for i, b in enumerate(g):
            rem[k + i] -= qk * b
    if any(rem[:dg]):
        return None
    return _trim(quo)


def _eval_int(f, x: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def _unpack(h: int, x: int) -> list[int]:
    out = []
    half = x // 2
    while h:
        c = h % x
        if c > half:
            c -= x
        out.append(c)
        h = (h - c) // x
    return out


def _heu_gcd(f, g):
    """Heuristic gcd of primitive polynomials via integer evaluation.

    Returns ``None`` when six evaluation points fail; the caller falls back
    to a remainder sequence.
    """
    fn = max(abs(c) for c in f)
    gn = max(abs(c) for c in g)
    b = 2 * min(fn, gn) + 29
    x = max(min(b, 99 * isqrt(b)), 2 * min(fn // abs(f[-1]), gn // abs(g[-1])) + 2)
    for _ in range(6):
        fx = _eval_int(f, x)
        gx = _eval_int(g, x)
        if fx and gx:
            cand = _primitive(_unpack(gcd(fx, gx), x))
            if cand and _div_exact(f, cand) is not None and _div_exact(g, cand) is not None:
                return cand
        x = 73794 * x * isqrt(isqrt(x)) // 27011
    return None


def _prem(f, g) -> list[int]:
    df, dg = len(f) - 1, len(g) - 1
    r = list(f)
    lc = g[-1]
    for _ in range(df - dg + 1):
        if len(r) - 1 < dg:
            r = _pscale(r, lc)
            continue
        c = r[-1]
        shift = len(r) - 1 - dg
        r = _pscale(r, lc)
        for i, b in enumerate(g):
            r[shift + i] -= c * b
        _trim(r)
    return r


def _prs_gcd(f, g) -> list[int]:
    if len(f) < len(g):
        f, g = g, f
    while g:
        r = _prem(f, g)
        f, g = g, _primitive(r)
    return _primitive(f)


def poly_gcd(f, g) -> list[int]:
    """Primitive gcd (positive leading coefficient) of two integer polynomials."""
    if not f:
        return _primitive(g)
    if not g:
        return _primitive(f)
    v = min(_valuation(f), _valuation(g))
    f = f[_valuation(f):]
    g = g[_valuation(g):]
    if len(f) == 1 or len(g) == 1:
        core = [1]
    else:
        pf, pg = _primitive(f), _primitive(g)
        if pf == pg:
            core = pf
        else:
            core = _heu_gcd(pf, pg) or _prs_gcd(pf, pg)
    return [0] * v + core if v else core


# ---------------------------------------------------------------------------
# public types
# ---------------------------------------------------------------------------

class IntPoly:
    """Immutable integer polynomial in ``q``.

    The coefficients are held as a dense ascending tuple; :attr:`terms`
    exposes the sparse exponent -> coefficient view (no zero entries).
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Union[Iterable[int], Mapping[int, int]] = ()):
        if isinstance(coeffs, Mapping):
            dense: list[int] = []
            for e, c in coeffs.items():
                if e < 0:
                    raise ValueError("IntPoly exponents must be non-negative")
                if e >= len(dense):
                    dense.extend([0] * (e + 1 - len(dense)))
                dense[e] += int(c)
        else:
            dense = [int(c) for c in coeffs]
        self._c = tuple(_trim(dense))
        self._hash = None

    @classmethod
    def _raw(cls, c) -> "IntPoly":
        p = cls.__new__(cls)
        p._c = tuple(c)
        p._hash = None
        return p

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._c

    @property
    def terms(self) -> dict[int, int]:
        return {i: c for i, c in enumerate(self._c) if c}

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    def is_zero(self) -> bool:
        return not self._c

    def __eq__(self, other):
        return isinstance(other, IntPoly) and self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("IntPoly", self._c))
        return self._hash

    def __add__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly._raw(_padd(self._c, other._c))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly._raw(_psub(self._c, other._c))

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly._raw(_pmul(self._c, other._c))

    def __neg__(self) -> "IntPoly":
        return IntPoly._raw([-c for c in self._c])

    def __call__(self, x):
        acc = 0
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def __repr__(self):
        return f"IntPoly({list(self._c)})"

    def __str__(self):
        return _poly_str(self._c)


Scalar = Union["QRational", int, Fraction]


class QRational:
    """Canonical element of Q(q)."""

    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, num: Union[IntPoly, Iterable[int], int] = 0,
                 den: Union[IntPoly, Iterable[int], int] = 1):
        n = _as_list(num)
        d = _as_list(den)
        self._num, self._den = _canonical(n, d)
        self._hash = None

    @classmethod
    def _make(cls, num, den) -> "QRational":
        # num/den already canonical tuples
        r = cls.__new__(cls)
        r._num = num
        r._den = den
        r._hash = None
        return r

    @classmethod
    def _from_lists(cls, num, den) -> "QRational":
        n, d = _canonical(num, den)
        return cls._make(n, d)

    # -- constructors -------------------------------------------------------

    @classmethod
    def q(cls) -> "QRational":
        return _Q

    @classmethod
    def from_int(cls, k: int) -> "QRational":
        return cls._make((k,) if k else (), (1,))

    @classmethod
    def from_fraction(cls, x: Fraction) -> "QRational":
        x = Fraction(x)
        return cls._from_lists([x.numerator], [x.denominator])

    @classmethod
    def from_laurent(cls, terms: Mapping[int, int]) -> "QRational":
        """Build from a Laurent polynomial given as ``{exponent: coefficient}``."""
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return ZERO
        low = min(terms)
        shift = -low if low < 0 else 0
        num = [0] * (max(terms) + shift + 1)
        for e, c in terms.items():
            num[e + shift] = c
        den = [0] * shift + [1]
        return cls._from_lists(num, den)

    @classmethod
    def coerce(cls, x: Scalar) -> "QRational":
        if isinstance(x, QRational):
            return x
        if isinstance(x, int):
            return cls.from_int(x)
        if isinstance(x, Fraction):
            return cls.from_fraction(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to QRational")

    # -- accessors ----------------------------------------------------------

    @property
    def num(self) -> IntPoly:
        return IntPoly._raw(self._num)

    @property
    def den(self) -> IntPoly:
        return IntPoly._raw(self._den)

    def is_zero(self) -> bool:
        return not self._num

    def is_one(self) -> bool:
        return self._num == (1,) and self._den == (1,)

    def is_polynomial(self) -> bool:
        return self._den == (1,)

    def __bool__(self):
        return bool(self._num)

    def __eq__(self, other):
        if isinstance(other, QRational):
            return self._num == other._num and self._den == other._den
        if isinstance(other, (int, Fraction)):
            return self == QRational.coerce(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._num, self._den))
        return self._hash

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        try:
            b = QRational.coerce(other)
        except TypeError:
            return NotImplemented
        if not b._num:
            return self
        if not self._num:
            return b
        if self._den == b._den:
            return QRational._from_lists(_padd(self._num, b._num), self._den)
        if b._den == (1,):
            return QRational._from_lists(_padd(self._num, _pmul(b._num, self._den)), self._den)
        if self._den == (1,):
            return QRational._from_lists(_padd(_pmul(self._num, b._den), b._num), b._den)
        num = _padd(_pmul(self._num, b._den), _pmul(b._num, self._den))
        return QRational._from_lists(num, _pmul(self._den, b._den))

    __radd__ = __add__

    def __neg__(self):
        return QRational._make(tuple(-c for c in self._num), self._den)

    def __sub__(self, other):
        try:
            b = QRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-b)

    def __rsub__(self, other):
        return QRational.coerce(other) - self

    def __mul__(self, other):
        try:
            b = QRational.coerce(other)
        except TypeError:
            return NotImplemented
        if not self._num or not b._num:
            return ZERO
        if b._den == (1,) and len(b._num) == 1 and b._num[0] == 1:
            return self
        if self._den == (1,) and len(self._num) == 1 and self._num[0] == 1:
            return b
        # cross-cancellation keeps the operands small
        g1 = poly_gcd(list(self._num), list(b._den))
        g2 = poly_gcd(list(b._num), list(self._den))
        n1 = _div_exact(self._num, g1) if g1 != [1] else self._num
        d2 = _div_exact(b._den, g1) if g1 != [1] else b._den
        n2 = _div_exact(b._num, g2) if g2 != [1] else b._num
        d1 = _div_exact(self._den, g2) if g2 != [1] else self._den
        num = _pmul(n1, n2)
        den = _pmul(d1, d2)
        return QRational._make(*_normalize_contents(num, den))

    __rmul__ = __mul__

    def inv(self) -> "QRational":
        if not self._num:
            raise ZeroDivisionError("inverse of zero in Q(q)")
        return QRational._make(*_normalize_contents(list(self._den), list(self._num)))

    def __truediv__(self, other):
        try:
            b = QRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self * b.inv()

    def __rtruediv__(self, other):
        return QRational.coerce(other) * self.inv()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inv() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- evaluation, serialization, display --------------------------------

    def eval_at(self, point) -> Fraction:
        """Exact value at a rational point; raises :class:`PoleError` at a pole."""
        x = Fraction(point)
        d = _eval_frac(self._den, x)
        if d == 0:
            raise PoleError(f"denominator vanishes at q={x}")
        return _eval_frac(self._num, x) / d

    def to_json(self) -> dict:
        return {"num": list(self._num) or [0], "den": list(self._den)}

    @classmethod
    def from_json(cls, obj: Mapping) -> "QRational":
        """Parse ``{"num": [...], "den": [...]}``; the pair must be canonical."""
        num = [int(c) for c in obj["num"]]
        den = [int(c) for c in obj["den"]]
        value = cls(num, den)
        if list(value._num) != _trim(list(num)) or list(value._den) != _trim(list(den)):
            raise ValueError(f"non-canonical rational function in input: {obj!r}")
        return value

    def __repr__(self):
        return f"QRational({list(self._num)}, {list(self._den)})"

    def __str__(self):
        n = _poly_str(self._num)
        if self._den == (1,):
            return n
        d = _poly_str(self._den)
        if len([c for c in self._num if c]) > 1:
            n = f"({n})"
        if len([c for c in self._den if c]) > 1:
            d = f"({d})"
        return f"{n}/{d}"

    def to_latex(self) -> str:
        n = _poly_latex(self._num)
        if self._den == (1,):
            return n
        return f"\\frac{{{n}}}{{{_poly_latex(self._den)}}}"


# ---------------------------------------------------------------------------
# canonicalization
# ---------------------------------------------------------------------------

def _as_list(x) -> list[int]:
    if isinstance(x, IntPoly):
        return list(x.coeffs)
    if isinstance(x, int):
        return [x] if x else []
    if isinstance(x, Mapping):
        return list(IntPoly(x).coeffs)
    return _trim([int(c) for c in x])


def _normalize_contents(num, den):
    """Fix integer contents and sign of an already poly-coprime pair."""
    num = list(num)
    den = list(den)
    if not num:
        return (), (1,)
    g = gcd(_content(num), _content(den))
    if den[-1] < 0:
        g = -g
    if g != 1:
        num = [c // g for c in num]
        den = [c // g for c in den]
    return tuple(num), tuple(den)


def _canonical(num, den):
    num = _trim(list(num))
    den = _trim(list(den))
    if not den:
        raise ZeroDivisionError("zero denominator in Q(q)")
    if not num:
        return (), (1,)
    v = min(_valuation(num), _valuation(den))
    if v:
        num = num[v:]
        den = den[v:]
    vn, vd = _valuation(num), _valuation(den)
    monomial_den = vd == len(den) - 1
    monomial_num = vn == len(num) - 1
    if not (monomial_den or monomial_num):
        g = poly_gcd(num, den)
        if len(g) > 1:
            num = _div_exact(num, g)
            den = _div_exact(den, g)
    return _normalize_contents(num, den)


def _eval_frac(c, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for a in reversed(c):
        acc = acc * x + a
    return acc


def _poly_str(c) -> str:
    if not c:
        return "0"
    parts = []
    for e, a in enumerate(c):
        if not a:
            continue
        mag = abs(a)
        if e == 0:
            body = str(mag)
        else:
            mono = "q" if e == 1 else f"q^{e}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append(("-" if a < 0 else "+", body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _poly_latex(c) -> str:
    if not c:
        return "0"
    out = ""
    for e, a in enumerate(c):
        if not a:
            continue
        mag = abs(a)
        if e == 0:
            body = str(mag)
        else:
            mono = "q" if e == 1 else f"q^{{{e}}}"
            body = mono if mag == 1 else f"{mag}{mono}"
        if not out:
            out = ("-" if a < 0 else "") + body
        else:
            out += ("-" if a < 0 else "+") + body
    return out


ZERO = QRational._make((), (1,))
ONE = QRational._make((1,), (1,))
_Q = QRational._make((0, 1), (1,))


# ---------------------------------------------------------------------------
# functional surface
# ---------------------------------------------------------------------------

def q_pow(k: int) -> QRational:
    """``q**k`` for any integer ``k``."""
    if k >= 0:
        return QRational._make((0,) * k + (1,), (1,))
    return QRational._make((1,), (0,) * (-k) + (1,))


def add(a: QRational, b: QRational) -> QRational:
    return a + b


def sub(a: QRational, b: QRational) -> QRational:
    return a - b


def mul(a: QRational, b: QRational) -> QRational:
    return a * b


def div(a: QRational, b: QRational) -> QRational:
    return a / b


def neg(a: QRational) -> QRational:
    return -a


def inv(a: QRational) -> QRational:
    return a.inv()


def eval_at(a: QRational, point) -> Fraction:
    return a.eval_at(point)
