"""Closed forms, explicit recursions and symmetry orbits for n = 3."""

from __future__ import annotations

from math import comb

from ..normalform import StdExponents
from ..qfield import QRational, q_pow

__all__ = [
    "source_matrix_solution",
    "rec_cdh_ceg",
    "rec_cdh_bfg_ceg",
    "symmetry_orbit",
    "cdh_bfg_ceg",
]


def _qm1(k: int) -> QRational:
    """``q^k - 1``."""
    return q_pow(k) - 1


def source_matrix_solution(m: int) -> dict[StdExponents, QRational]:
    """Closed forms for the seven monomials with at least m-2 factors ceg.

    Keys are the exponents of aek(ceg)^{m-1}, afh(ceg)^{m-1},
    bdk(ceg)^{m-1}, bfgcdh(ceg)^{m-2} (only for m >= 2), bfg(ceg)^{m-1},
    cdh(ceg)^{m-1} and (ceg)^m.
    """
    if m < 1:
        raise ValueError("order must be positive")
    q = q_pow(1)
    mq = -q
    d2m, d2m2, d2m4 = _qm1(2 * m), _qm1(2 * m + 2), _qm1(2 * m + 4)
    common = mq ** (3 * m - 2) * _qm1(2) ** 3 * _qm1(4)
    out = {}
    out[StdExponents(1, 0, 0, 0, 0, m - 1)] = (
        common * (1 + q ** 4 - q ** 2 - q ** (2 * m + 2)) / (q * d2m ** 2 * d2m2 ** 2 * d2m4))
    mixed = common * _qm1(2) / (d2m ** 2 * d2m2 ** 2 * d2m4)
    out[StdExponents(0, 1, 0, 0, 0, m - 1)] = mixed
    out[StdExponents(0, 0, 1, 0, 0, m - 1)] = mixed
    if m >= 2:
        out[StdExponents(0, 0, 0, 1, 1, m - 2)] = mixed
    low = mq ** (3 * m - 1) * _qm1(2) ** 3 * _qm1(4) / (d2m * d2m2 ** 2 * d2m4)
    out[StdExponents(0, 0, 0, 1, 0, m - 1)] = low
    out[StdExponents(0, 0, 0, 0, 1, m - 1)] = low
    out[StdExponents(0, 0, 0, 0, 0, m)] = mq ** (3 * m) * _qm1(2) ** 2 * _qm1(4) / (d2m2 ** 2 * d2m4)
    return out


def rec_cdh_ceg(m: int) -> dict[int, QRational]:
    """``{i: h((cdh)^i (ceg)^{m-i})}`` for 0 <= i <= m by the recursion in i."""
    if m < 1:
        raise ValueError("order must be positive")
    q = q_pow(1)
    qi = q_pow(-1)
    base = source_matrix_solution(m)
    vals = {0: base[StdExponents(0, 0, 0, 0, 0, m)], 1: base[StdExponents(0, 0, 0, 0, 1, m - 1)]}
    for i in range(2, m + 1):
        j = m - i + 1
        lead = q ** 2 * (q ** j - qi ** j) ** 2 / (1 - q ** 2) ** 2
        rhs = -q / (q ** 2 - 1) * vals[i - 1]
        for k in range(1, i):
            ck = ((qi - q) ** (k - 2) * comb(i, k) * q_pow(-2 * j)
                  + (q - qi) ** (k - 2) * q ** (2 * k) * comb(i - 1, k) * q_pow(2 * j))
            rhs = rhs - ck * vals[i - k]
        rhs = rhs - (qi - q) ** (i - 2) * q_pow(-2 * j) * vals[0]
        vals[i] = rhs / lead
    return vals


def rec_cdh_bfg_ceg(m: int) -> dict[tuple[int, int], QRational]:
    """``{(r, s): h((cdh)^r (bfg)^s (ceg)^{m-r-s})}`` for r + s <= m.

    The column r = 0 comes from the (cdh, ceg) family through the swap
    symmetry of bfg and cdh; for r >= 1 the values follow by recursion in s.
    """
    q = q_pow(1)
    qi = q_pow(-1)
    col = rec_cdh_ceg(m)
    vals: dict[tuple[int, int], QRational] = {}
    for s in range(m + 1):
        vals[(0, s)] = col[s]
    for r in range(1, m + 1):
        vals[(r, 0)] = col[r]
        for s in range(0, m - r):
            lead = q ** 2 * (q ** (m - s) - q ** (s - m)) ** 2 / (1 - q ** 2) ** 2
            rhs = -q / (q ** 2 - 1) * vals[(r, s)]
            for i in range(0, s):
                ai = ((qi - q) ** (i - 1) * comb(s + 1, i + 1) * q_pow(2 * s - 2 * m)
                      + (q - qi) ** (i - 1) * q_pow(2 * i - 2) * comb(s, i + 1) * q_pow(2 * m - 2 * s + 4))
                rhs = rhs - ai * vals[(r, s - i)]
            rhs = rhs - (qi - q) ** (s - 1) * q_pow(2 * s - 2 * m) * vals[(r, 0)]
            vals[(r, s + 1)] = rhs / lead
    return vals


def cdh_bfg_ceg(m: int) -> dict[StdExponents, QRational]:
    """The low-complexity family keyed by exponents."""
    return {StdExponents(0, 0, 0, s, r, m - r - s): v for (r, s), v in rec_cdh_bfg_ceg(m).items()}


def _moves(e: StdExponents):
    c1, c2, c3, c4, c5, c6 = e
    yield StdExponents(c1, c2, c3, c5, c4, c6)
    if c1 == 0:
        yield StdExponents(c1, c3, c2, c4, c5, c6)
    if c4 == c5 == c6 == 0:
        yield StdExponents(c1, c3, c2, c4, c5, c6)


def symmetry_orbit(e: StdExponents) -> set[StdExponents]:
    """Exponents forced to share the Haar value of ``e`` by the swap symmetries."""
    e = StdExponents(*e)
    orbit = {e}
    todo = [e]
    while todo:
        for f in _moves(todo.pop()):
            if f not in orbit:
                orbit.add(f)
                todo.append(f)
    return orbit
