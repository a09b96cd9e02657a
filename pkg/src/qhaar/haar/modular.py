"""Square linear systems over Q(q) solved through modular images.

Each image evaluates q at an integer point modulo a 62-bit prime and runs
Gaussian elimination there (pivot: first nonzero column).  Values are
recovered per prime by rational-function reconstruction from enough
points, then lifted to Q by the Chinese remainder theorem and rational
number reconstruction.  The caller verifies the result exactly; nothing
here is trusted on its own.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Iterator, Mapping, Optional, Sequence

from ..qfield import QRational

__all__ = ["solve_square", "ReconstructionError"]

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_HOLDOUT = 3


class ReconstructionError(ArithmeticError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _primes(start: int = 1 << 62) -> Iterator[int]:
    n = start - 1
    while True:
        if _is_prime(n):
            yield n
        n -= 2


# ---------------------------------------------------------------------------
# polynomials over GF(p), coefficient lists low -> high
# ---------------------------------------------------------------------------

def _trim(f: list[int]) -> list[int]:
    while f and not f[-1]:
        f.pop()
    return f


def _pmul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return _trim([c % p for c in out])


def _psub(f, g, p):
    n = max(len(f), len(g))
    return _trim([((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p for i in range(n)])


def _pdivmod(f, g, p):
    f = list(f)
    inv = pow(g[-1], p - 2, p)
    dg = len(g) - 1
    quot = [0] * max(len(f) - dg, 0)
    for k in range(len(f) - 1 - dg, -1, -1):
        c = f[k + dg] * inv % p
        quot[k] = c
        if c:
            for j in range(dg + 1):
                f[k + j] = (f[k + j] - c * g[j]) % p
    return _trim(quot), _trim(f[:dg] if dg else [])


def _peval(f, x, p):
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def _interpolate(xs, ys, p):
    n = len(xs)
    c = list(ys)
    for k in range(1, n):
        for i in range(n - 1, k - 1, -1):
            c[i] = (c[i] - c[i - 1]) * pow(xs[i] - xs[i - k], p - 2, p) % p
    poly = [c[-1]]
    for k in range(n - 2, -1, -1):
        poly = _pmul(poly, [-xs[k] % p, 1], p) if poly else []
        if poly:
            poly[0] = (poly[0] + c[k]) % p
        else:
            poly = [c[k]] if c[k] else []
        _trim(poly)
    return poly


def _rational_reconstruct(f, modulus, p):
    """P/Q with deg P <= (N-1)//2 and P = Q f mod ``modulus`` (degree N)."""
    n = len(modulus) - 1
    bound = (n - 1) // 2
    r0, r1 = modulus, f
    t0, t1 = [], [1]
    while r1 and len(r1) - 1 > bound:
        quo, rem = _pdivmod(r0, r1, p)
        r0, r1 = r1, rem
        t0, t1 = t1, _psub(t0, _pmul(quo, t1, p), p)
    if not t1 or len(t1) - 1 > n - 1 - bound:
        return None
    return r1, t1


def _normalize(num, den, p):
    low = next(c for c in den if c)
    inv = pow(low, p - 2, p)
    return [c * inv % p for c in num], [c * inv % p for c in den]


# ---------------------------------------------------------------------------
# one image
# ---------------------------------------------------------------------------

def _eval_laurent(lp: Mapping[int, int], x: int, xinv: int, p: int) -> int:
    total = 0
    for e, c in lp.items():
        total += c * (pow(x, e, p) if e >= 0 else pow(xinv, -e, p))
    return total % p


def _eval_q(v: QRational, x: int, p: int) -> Optional[int]:
    d = _peval([c % p for c in v.den.coeffs], x, p)
    if not d:
        return None
    return _peval([c % p for c in v.num.coeffs], x, p) * pow(d, p - 2, p) % p


def _solve_at(rows, rhs, k, x, p) -> Optional[list[int]]:
    xinv = pow(x, p - 2, p)
    pivots = []
    for row, b in zip(rows, rhs):
        r = {c: v for c, v in ((c, _eval_laurent(lp, x, xinv, p)) for c, lp in row.items()) if v}
        bv = _eval_q(b, x, p)
        if bv is None:
            return None
        for col, prow, pb in pivots:
            f = r.get(col)
            if not f:
                continue
            for c, v in prow.items():
                nv = (r.get(c, 0) - f * v) % p
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
            bv = (bv - f * pb) % p
        if not r:
            return None
        col = min(r)
        inv = pow(r[col], p - 2, p)
        pivots.append((col, {c: v * inv % p for c, v in r.items()}, bv * inv % p))
    values = [0] * k
    for col, prow, pb in reversed(pivots):
        acc = pb
        for c, v in prow.items():
            if c != col:
                acc -= v * values[c]
        values[col] = acc % p
    return values


def _solve_mod_prime(rows, rhs, k, p, npoints):
    xs: list[int] = []
    sols: list[list[int]] = []
    x = 2
    while True:
        while len(xs) < npoints + _HOLDOUT:
            s = _solve_at(rows, rhs, k, x, p)
            if s is not None:
                xs.append(x)
                sols.append(s)
            x += 1
        fit, hold = xs[:npoints], xs[npoints:npoints + _HOLDOUT]
        modulus = [1]
        for xi in fit:
            modulus = _pmul(modulus, [-xi % p, 1], p)
        out = []
        for j in range(k):
            f = _interpolate(fit, [s[j] for s in sols[:npoints]], p)
            rr = _rational_reconstruct(f, modulus, p)
            if rr is None:
                break
            num, den = _normalize(*rr, p)
            ok = True
            for h, xi in enumerate(hold):
                dv = _peval(den, xi, p)
                if not dv or _peval(num, xi, p) * pow(dv, p - 2, p) % p != sols[npoints + h][j]:
                    ok = False
                    break
            if not ok:
                break
            out.append((num, den))
        else:
            return out, npoints
        npoints *= 2


# ---------------------------------------------------------------------------
# lifting to Q
# ---------------------------------------------------------------------------

def _crt(a: int, m: int, b: int, n: int) -> int:
    return (a + m * ((b - a) * pow(m, -1, n) % n)) % (m * n)


def _ratint(a: int, m: int) -> Optional[Fraction]:
    bound = isqrt(m // 2)
    r0, r1, s0, s1 = m, a % m, 0, 1
    while r1 > bound:
        qt = r0 // r1
        r0, r1 = r1, r0 - qt * r1
        s0, s1 = s1, s0 - qt * s1
    if s1 == 0 or abs(s1) > bound or gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def _to_qrational(num: Sequence[Fraction], den: Sequence[Fraction]) -> QRational:
    scale = lcm(*(c.denominator for c in list(num) + list(den)))
    return QRational([int(c * scale) for c in num], [int(c * scale) for c in den])


def solve_square(rows: Sequence[Mapping[int, Mapping[int, int]]], rhs: Sequence[QRational],
                 k: int, max_primes: int = 64) -> Iterator[list[QRational]]:
    """Yield candidate solutions of ``rows · x = rhs``, each backed by one more prime.

    ``rows[i]`` maps a column to a Laurent polynomial ``{exponent: int}``.
    The caller checks each candidate exactly and stops when one passes.
    """
    if len(rows) != k:
        raise ValueError("system must be square")
    npoints = 16
    shape = None
    residues: list[tuple[list[int], list[int]]] = []
    modulus = 1
    previous = None
    for count, p in enumerate(_primes()):
        if count == max_primes:
            raise ReconstructionError(f"no stable reconstruction after {max_primes} primes")
        image, npoints = _solve_mod_prime(rows, rhs, k, p, npoints)
        this_shape = [(len(n), len(d)) for n, d in image]
        if shape is None:
            shape = this_shape
            residues = [(list(n), list(d)) for n, d in image]
            modulus = p
        elif this_shape != shape:
            continue  # unlucky prime
        else:
            residues = [([_crt(a, modulus, b, p) for a, b in zip(rn, n)],
                         [_crt(a, modulus, b, p) for a, b in zip(rd, d)])
                        for (rn, rd), (n, d) in zip(residues, image)]
            modulus *= p
        candidate = []
        for rn, rd in residues:
            num = [_ratint(a, modulus) for a in rn]
            den = [_ratint(a, modulus) for a in rd]
            if None in num or None in den:
                candidate = None
                break
            candidate.append(_to_qrational(num, den))
        if candidate is None:
            continue
        if candidate == previous:
            yield candidate
        previous = candidate
