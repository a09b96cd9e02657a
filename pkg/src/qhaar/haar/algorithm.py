"""Staged computation of the order-m table.

The stages follow the complexity of the standard monomials:

1. low-complexity monomials (cdh)^r (bfg)^s (ceg)^t from the explicit
   recursions;
2. (afh)^w (bfg)^s (cdh)^r (ceg)^t for w = 1, 2, ...: with t >= 1 by moving
   one ceg around the word with the modular automorphism, with t = 0 by a
   single comultiplication relation at comparing basis (aek)^{m-1} bdk;
3. the bdk families by the afh/bdk swap symmetry;
4. by increasing number H of high-complexity segments: monomials without
   aek and without ceg by comultiplication relations at comparing basis
   (aek)^{m-1} afh, then monomials with u >= 1 factors aek, in increasing
   u, from ``h(D_q · (aek)^{u-1} Y) = h((aek)^{u-1} Y)``.

Every stage is a small exact system whose unknowns must be exactly the
monomials of that stage; anything else raises.
"""

from __future__ import annotations

from typing import Callable, Iterable, Mapping

from ..normalform import StdExponents, enumerate_basis, reduce_laurent, std_word
from ..qfield import ONE, ZERO, QRational, q_pow
from .closed import cdh_bfg_ceg, source_matrix_solution, symmetry_orbit
from .relations import _derive_laurent, _dq_lift_laurent, _dq_power_laurent
from .solver import HaarTable, IncrementalSolver, InconsistentSystemError

__all__ = ["full_algorithm", "StageError"]


class StageError(InconsistentSystemError):
    pass


def _lq(lp: Mapping[int, int]) -> QRational:
    return QRational.from_laurent(lp)


class _Stager:
    def __init__(self, m: int, known: dict[StdExponents, QRational]):
        self.m = m
        self.known = known
        self.log: list[str] = []

    def solve(self, name: str, targets: Iterable[StdExponents],
              relations: Iterable[tuple[Mapping[StdExponents, QRational], QRational]]) -> None:
        """Solve ``sum coeffs[s] h(s) = rhs`` for the stage targets."""
        targets = [t for t in targets if t not in self.known]
        if not targets:
            return
        index = {t: i for i, t in enumerate(targets)}
        solver = IncrementalSolver(len(targets))
        for coeffs, rhs in relations:
            row: dict[int, QRational] = {}
            for s, c in coeffs.items():
                if not c:
                    continue
                if s in self.known:
                    rhs = rhs - c * self.known[s]
                elif s in index:
                    row[index[s]] = row.get(index[s], ZERO) + c
                else:
                    raise StageError(f"{name}: relation involves {s}, which is not yet available")
            solver.add(row, rhs)
            if solver.rank == len(targets):
                break
        values = solver.solve()
        for t, v in zip(targets, values):
            self.known[t] = v
        self.log.append(f"{name}: {len(targets)} value(s)")


def _word_relation(letters: tuple[int, ...]) -> dict[StdExponents, QRational]:
    return {s: _lq(v) for s, v in reduce_laurent(letters).items()}


def _derived(eq: StdExponents, cmp: StdExponents) -> tuple[dict[StdExponents, QRational], QRational]:
    coeffs = {s: _lq(v) for s, v in _derive_laurent(eq, cmp).items()}
    b = _dq_power_laurent(eq.order).get(cmp)
    if b:
        coeffs[eq] = coeffs.get(eq, ZERO) - _lq(b)
    return coeffs, ZERO


def full_algorithm(m: int, lower: Callable[[int], HaarTable], log: list[str] | None = None) -> HaarTable:
    if m < 1:
        raise ValueError("order must be positive")
    basis = enumerate_basis(m)
    known: dict[StdExponents, QRational] = {}
    st = _Stager(m, known)
    q = q_pow(1)

    # 1. low complexity
    known.update(cdh_bfg_ceg(m))

    # 2./3. one kind of high-complexity segment besides ceg
    afh = (0, 5, 7)  # generator codes of one afh segment
    bfgcdh = (1, 5, 6, 2, 3, 7)
    for w in range(1, m + 1):
        with_ceg = [e for e in basis if e.c1 == 0 and e.c3 == 0 and e.c2 == w and e.c6 >= 1]
        for e in with_ceg:
            tail = std_word(StdExponents(0, 0, 0, e.c4, e.c5, e.c6 - 1)).letters
            coeffs: dict[StdExponents, QRational] = {}
            for i in range(w):
                letters = afh * i + bfgcdh + afh * (w - 1 - i) + tail
                scale = q ** (2 * i) * (1 - q ** 2) / (1 - q ** (2 * w))
                for s, v in _word_relation(letters).items():
                    coeffs[s] = coeffs.get(s, ZERO) + scale * v
            coeffs = {s: -v for s, v in coeffs.items()}
            coeffs[e] = coeffs.get(e, ZERO) + ONE
            st.solve(f"afh^{w} with ceg {e.key}", [e], [(coeffs, ZERO)])
        without = [e for e in basis if e.c1 == 0 and e.c3 == 0 and e.c2 == w and e.c6 == 0]
        cmp = StdExponents(m - 1, 0, 1, 0, 0, 0)
        rels = []
        for e in without:
            r = e.c5
            eq = StdExponents(0, w - 1, 0, m - r - w, r + 1, 0)
            if m - r - w >= 0:
                rels.append(_derived(eq, cmp))
        st.solve(f"afh^{w} without ceg", without, rels)
        for e in with_ceg + without:
            for f in symmetry_orbit(e):
                if f not in known and f.c1 == 0:
                    known[f] = known[e]

    # 4. several high-complexity segments, then aek
    prev = lower(m - 1) if m > 1 else None
    for H in range(1, m + 1):
        mixed = [e for e in basis if e.c1 == 0 and e.c2 >= 1 and e.c3 >= 1
                 and e.c2 + e.c3 == H and e.c6 == 0]
        cmp = StdExponents(m - 1, 1, 0, 0, 0, 0)
        rels = []
        for e in mixed:
            v, w, s = e.c2, e.c3, e.c4
            eq = StdExponents(0, v, w - 1, s + 1, m - v - w - s, 0)
            if m - v - w - s >= 0:
                rels.append(_derived(eq, cmp))
        st.solve(f"afh bdk mixed H={H}", mixed, rels)
        for u in range(1, H + 1):
            targets = [e for e in basis if e.c1 == u and e.c1 + e.c2 + e.c3 == H]
            rels = []
            for e in targets:
                z = StdExponents(u - 1, *e[1:])
                rhs = ONE if m == 1 else prev.values[z]
                rels.append(({s: _lq(v) for s, v in _dq_lift_laurent(z).items()}, rhs))
            st.solve(f"aek^{u} H={H}", targets, rels)

    missing = [e for e in basis if e not in known]
    if missing:
        raise StageError(f"stages left {len(missing)} monomial(s) undetermined, e.g. {missing[0]}")
    for e, v in source_matrix_solution(m).items():
        if known[e] != v:
            raise StageError(f"closed form disagrees at {e}")
    table = HaarTable(m, {e: known[e] for e in basis})
    if table.normalization_residual():
        raise StageError(f"order {m} staged table violates the normalization")
    if log is not None:
        log.extend(st.log)
    return table
