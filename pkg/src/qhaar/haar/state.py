"""The Haar state on words and polynomials, backed by cached order tables."""

from __future__ import annotations

import json
import os
import tempfile
import threading
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

from ..algebra import NCPoly, Word, parse_word, quantum_minor
from ..normalform import NotBalancedError, reduce_laurent
from ..qfield import ONE, ZERO, QRational, q_pow
from .algorithm import full_algorithm
from .solver import HaarTable, InconsistentSystemError, solve_order

__all__ = [
    "OrderLimitError",
    "CacheError",
    "TableStore",
    "default_store",
    "haar",
    "haar_poly",
    "weingarten_limit",
    "star",
    "METHODS",
]

METHODS = ("solver", "algorithm")


class OrderLimitError(ValueError):
    pass


class CacheError(RuntimeError):
    pass


class TableStore:
    """Order tables computed on demand, kept in memory and optionally on disk.

    ``method`` selects the exact solver or the staged algorithm; both must
    agree, and when a cached file exists a fresh computation is compared
    against it if ``verify_cache`` is set.
    """

    def __init__(self, cache_dir: Optional[Union[str, Path]] = None, max_order: int = 4,
                 method: str = "algorithm", verify_cache: bool = False):
        if method not in METHODS:
            raise ValueError(f"unknown method {method!r}")
        self.cache_dir = Path(cache_dir) if cache_dir is not None else None
        self.max_order = max_order
        self.method = method
        self.verify_cache = verify_cache
        self._tables: dict[int, HaarTable] = {}
        self._lock = threading.RLock()

    def path(self, m: int) -> Optional[Path]:
        return None if self.cache_dir is None else self.cache_dir / f"haar_order_{m}.json"

    def _load(self, m: int) -> Optional[HaarTable]:
        p = self.path(m)
        if p is None or not p.exists():
            return None
        try:
            table = HaarTable.from_json(json.loads(p.read_text()))
        except (ValueError, KeyError, TypeError) as exc:
            raise CacheError(f"corrupt cache file {p}: {exc}") from exc
        if table.order != m:
            raise CacheError(f"cache file {p} holds order {table.order}")
        if table.normalization_residual():
            raise CacheError(f"cache file {p} fails the normalization check")
        return table

    def _store(self, table: HaarTable) -> None:
        p = self.path(table.order)
        if p is None:
            return
        p.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(prefix=p.name, suffix=".tmp", dir=p.parent)
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(table.dumps())
            os.replace(tmp, p)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def compute(self, m: int) -> HaarTable:
        """Compute the order-m table with the configured method (lower orders via the store)."""
        if self.method == "solver":
            return solve_order(m, self.table)
        return full_algorithm(m, self.table)

    def table(self, m: int) -> HaarTable:
        if m < 1:
            raise ValueError("order must be positive")
        if m > self.max_order:
            raise OrderLimitError(f"order {m} exceeds the configured maximum {self.max_order}")
        with self._lock:
            hit = self._tables.get(m)
            if hit is not None:
                return hit
            table = self._load(m)
            if table is not None and self.verify_cache:
                fresh = self.compute(m)
                if fresh != table:
                    raise CacheError(f"cached order-{m} table differs from a fresh computation")
            if table is None:
                table = self.compute(m)
                self._store(table)
            self._tables[m] = table
            return table


_default = TableStore()


def default_store() -> TableStore:
    return _default


def _as_word(w: Union[Word, str]) -> Word:
    return parse_word(w) if isinstance(w, str) else w


def haar(w: Union[Word, str], store: Optional[TableStore] = None) -> QRational:
    """Haar state of a monomial; zero unless its counting matrix is balanced."""
    w = _as_word(w)
    if w.n != 3:
        raise ValueError("Haar values are implemented for n=3")
    if not w.letters:
        return ONE
    try:
        decomp = reduce_laurent(w.letters)
    except NotBalancedError:
        return ZERO
    store = store or _default
    table = store.table(len(w.letters) // 3)
    total = ZERO
    for e, c in decomp.items():
        total = total + QRational.from_laurent(c) * table.values[e]
    return total


def haar_poly(p: NCPoly, store: Optional[TableStore] = None) -> QRational:
    total = ZERO
    for w, c in p.terms.items():
        total = total + c * haar(w, store)
    return total


def star(i: int, j: int) -> NCPoly:
    """The adjoint of x_{ij} on the compact real form, as used for n = 3."""
    return quantum_minor(i, j).scale((-q_pow(1)) ** (j - i))


def weingarten_limit(p: NCPoly, store: Optional[TableStore] = None) -> Fraction:
    """Value of the Haar state of ``p`` at q = 1."""
    value = haar_poly(p, store)
    try:
        return value.eval_at(1)
    except ZeroDivisionError as exc:
        raise InconsistentSystemError(f"Haar value has a pole at q=1: {value}") from exc
