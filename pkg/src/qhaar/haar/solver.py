"""Exact linear-system solution of the order-m Haar table."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterator, Mapping, Optional

from ..normalform import StdExponents, enumerate_basis
from ..qfield import ONE, ZERO, QRational
from .modular import ReconstructionError, solve_square
from .relations import _derive_laurent, _dq_lift_laurent, _dq_power_laurent, ak_count, derive_linear_relation

__all__ = [
    "HaarTable",
    "InconsistentSystemError",
    "RankDeficiencyError",
    "IncrementalSolver",
    "solve_order",
    "relation_pairs",
]

FORMAT_VERSION = 1


class InconsistentSystemError(ArithmeticError):
    pass


class RankDeficiencyError(ArithmeticError):
    pass


@dataclass
class HaarTable:
    order: int
    values: dict[StdExponents, QRational] = field(default_factory=dict)

    def __getitem__(self, e) -> QRational:
        return self.values[StdExponents(*e)]

    def __eq__(self, other):
        return isinstance(other, HaarTable) and self.order == other.order and self.values == other.values

    def sorted_items(self):
        return [(e, self.values[e]) for e in enumerate_basis(self.order) if e in self.values]

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "values": {e.key: v.to_json() for e, v in self.sorted_items()},
            "format_version": FORMAT_VERSION,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=False) + "\n"

    @classmethod
    def from_json(cls, obj: Mapping) -> "HaarTable":
        if obj.get("format_version") != FORMAT_VERSION:
            raise ValueError(f"unsupported table format version {obj.get('format_version')!r}")
        order = obj["order"]
        if not isinstance(order, int) or order < 1:
            raise ValueError(f"bad table order {order!r}")
        values = {StdExponents.from_key(k): QRational.from_json(v) for k, v in obj["values"].items()}
        expected = set(enumerate_basis(order))
        if set(values) != expected:
            raise ValueError(f"table of order {order} does not cover exactly the basis")
        return cls(order, values)

    def normalization_residual(self) -> QRational:
        b = _dq_power_laurent(self.order)
        total = ZERO
        for s, v in b.items():
            total = total + QRational.from_laurent(v) * self.values[s]
        return total - ONE


class IncrementalSolver:
    """Row-by-row Gaussian elimination over Q(q).

    Each stored row is reduced against all pivots that existed when it was
    inserted, so a new row is cleared by walking pivots in insertion order.
    The pivot of a row is its first nonzero column in basis order.
    """

    def __init__(self, n_unknowns: int):
        self.n = n_unknowns
        self.pivots: list[tuple[int, dict[int, QRational], QRational]] = []
        self._pivot_cols: set[int] = set()
        self.rows_seen = 0
        self.rows_dependent = 0

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, row: dict[int, QRational], rhs: QRational) -> bool:
        """Insert a row; returns True if it raised the rank."""
        self.rows_seen += 1
        row = {c: v for c, v in row.items() if v}
        for col, prow, prhs in self.pivots:
            f = row.get(col)
            if f is None:
                continue
            for c, v in prow.items():
                nv = row.get(c, ZERO) - f * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
            rhs = rhs - f * prhs
        if not row:
            self.rows_dependent += 1
            if rhs:
                raise InconsistentSystemError(f"dependent relation leaves nonzero residual {rhs}")
            return False
        col = min(row)
        inv = row[col].inv()
        row = {c: v * inv for c, v in row.items()}
        row[col] = ONE
        self.pivots.append((col, row, rhs * inv))
        self._pivot_cols.add(col)
        return True

    def solve(self) -> list[QRational]:
        if self.rank < self.n:
            raise RankDeficiencyError(f"rank {self.rank} < {self.n}")
        values: list[Optional[QRational]] = [None] * self.n
        for col, prow, prhs in reversed(self.pivots):
            acc = prhs
            for c, v in prow.items():
                if c != col:
                    acc = acc - v * values[c]
            values[col] = acc
        return values  # type: ignore[return-value]


def relation_pairs(m: int) -> Iterator[tuple[StdExponents, StdExponents]]:
    """(equation, comparing) pairs, comparing bases rich in a and k first."""
    basis = enumerate_basis(m)
    cmps = sorted(basis, key=lambda e: (-ak_count(e), e.letter_counts()))
    for cmp in cmps:
        for eq in basis:
            yield eq, cmp


_PRIME = (1 << 61) - 1
_POINT = 1_000_003


class ModularRankFilter:
    """Rank tracking of Laurent-coefficient rows evaluated at a point mod p.

    A row that is independent modulo p at the point is independent over
    Q(q), so the accepted rows form a nonsingular square system once the
    rank reaches the number of unknowns.
    """

    def __init__(self, point: int = _POINT, prime: int = _PRIME):
        self.p = prime
        self.x = point % prime
        self.xinv = pow(self.x, prime - 2, prime)
        self.pivots: list[tuple[int, dict[int, int]]] = []

    def _eval(self, lp: Mapping[int, int]) -> int:
        p = self.p
        total = 0
        for e, c in lp.items():
            base = self.x if e >= 0 else self.xinv
            total += c * pow(base, abs(e), p)
        return total % p

    def accept(self, row: Mapping[int, Mapping[int, int]]) -> bool:
        p = self.p
        r = {c: v for c, v in ((c, self._eval(lp)) for c, lp in row.items()) if v}
        for col, prow in self.pivots:
            f = r.get(col)
            if not f:
                continue
            for c, v in prow.items():
                nv = (r.get(c, 0) - f * v) % p
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
        if not r:
            return False
        col = min(r)
        inv = pow(r[col], p - 2, p)
        self.pivots.append((col, {c: v * inv % p for c, v in r.items()}))
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _laurent_index_row(coeffs: Mapping, index: Mapping[StdExponents, int]) -> dict[int, dict]:
    return {index[s]: v for s, v in coeffs.items() if v}


def _row_residual(row: Mapping[int, Mapping[int, int]], rhs: QRational, values) -> QRational:
    total = -rhs
    for c, v in row.items():
        total = total + QRational.from_laurent(v) * values[c]
    return total


def solve_order(m: int, lower: Callable[[int], HaarTable], verify_all: bool = False,
                stats: Optional[dict] = None) -> HaarTable:
    """Assemble and solve the order-m system.

    ``lower(k)`` must return the order-k table for ``k < m``.  Lifted
    relations come first, then comultiplication relations in
    :func:`relation_pairs` order, until full rank.  Rows are screened by a
    modular rank test.  The accepted square system is eliminated in modular
    images and reconstructed; the reconstruction must satisfy every accepted
    row exactly, and every screened-out relation is checked exactly.  With
    ``verify_all`` every (equation, comparing) relation is checked as well.
    """
    if m < 1:
        raise ValueError("order must be positive")
    basis = enumerate_basis(m)
    index = {e: i for i, e in enumerate(basis)}
    K = len(basis)
    screen = ModularRankFilter()
    prev = lower(m - 1) if m > 1 else None
    accepted: list[tuple[dict, QRational]] = []
    rejected: list[tuple[dict, QRational]] = []
    for e in enumerate_basis(m - 1):
        row = _laurent_index_row(_dq_lift_laurent(e), index)
        rhs = ONE if m == 1 else prev.values[e]
        (accepted if screen.accept(row) else rejected).append((row, rhs))
    pairs = 0
    if screen.rank < K:
        for eq, cmp in relation_pairs(m):
            pairs += 1
            row = dict(_laurent_index_row(_derive_laurent(eq, cmp), index))
            b = _dq_power_laurent(m).get(cmp)
            if b:
                cur = dict(row.get(index[eq], {}))
                for ex, c in b.items():
                    v = cur.get(ex, 0) - c
                    if v:
                        cur[ex] = v
                    else:
                        cur.pop(ex, None)
                if cur:
                    row[index[eq]] = cur
                else:
                    row.pop(index[eq], None)
            (accepted if screen.accept(row) else rejected).append((row, ZERO))
            if screen.rank == K:
                break
    if screen.rank < K:
        raise RankDeficiencyError(f"order {m}: generated relations have rank {screen.rank} < {K}")
    values = None
    try:
        for candidate in solve_square([r for r, _ in accepted], [b for _, b in accepted], K):
            if all(not _row_residual(row, rhs, candidate) for row, rhs in accepted):
                values = candidate
                break
    except ReconstructionError as exc:
        raise InconsistentSystemError(f"order {m}: {exc}") from exc
    for row, rhs in rejected:
        if _row_residual(row, rhs, values):
            raise InconsistentSystemError(f"order {m}: a generated relation is violated")
    table = HaarTable(m, {e: values[i] for i, e in enumerate(basis)})
    if table.normalization_residual():
        raise InconsistentSystemError(f"order {m} table violates the normalization")
    if verify_all:
        lookup = table.values.__getitem__
        for eq in basis:
            for cmp in basis:
                rel = derive_linear_relation(eq, cmp)
                if rel.residual(lookup):
                    raise InconsistentSystemError(f"relation ({eq.key}, {cmp.key}) fails")
    if stats is not None:
        stats.update(rows=len(accepted) + len(rejected), dependent=len(rejected), pairs=pairs)
    return table
