"""Command-line interface: ``qhaar <command> ...``.

Global options may also be set through environment variables
``QHAAR_FORMAT``, ``QHAAR_CACHE_DIR``, ``QHAAR_MAX_ORDER`` and
``QHAAR_NO_CACHE``; command-line flags win.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .algebra import NCPoly, ParseError, Word, gamma, omega, eta_exponent, parse_expr, parse_word
from .haar import (CacheError, HaarTable, InconsistentSystemError, OrderLimitError, TableStore,
                   derive_linear_relation, haar, haar_poly, star, symmetry_orbit)
from .haar.closed import cdh_bfg_ceg, source_matrix_solution
from .normalform import (NotBalancedError, StdExponents, enumerate_basis, reduce,
                         std_word)
from .qfield import QRational, q_pow
from .reference import (REWRITE_GROUPS, REWRITE_IDENTITIES, WEINGARTEN_EXAMPLES, reference_extra,
                        reference_table, rewrite_identities)

ENV_PREFIX = "QHAAR_"
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _render_value(v: QRational, fmt: str) -> str:
    if fmt == "latex":
        return v.to_latex()
    return str(v)


def _frac_json(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator}


def _emit(out, text: str) -> None:
    out.write(text if text.endswith("\n") else text + "\n")


def _table_text(table: HaarTable, fmt: str, values: Optional[dict] = None) -> str:
    items = table.sorted_items() if values is None else sorted(values.items(), key=lambda kv: kv[0].letter_counts())
    if fmt == "json":
        order = table.order
        body = {"order": order, "values": {e.key: v.to_json() for e, v in items}, "format_version": 1}
        return json.dumps(body, indent=1) + "\n"
    lines = []
    for e, v in items:
        if fmt == "latex":
            lines.append(f"h({e}) &= {v.to_latex()} \\\\")
        else:
            lines.append(f"{e.key}  h({e}) = {v}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _order_arg(m: int, max_order: int) -> int:
    if m < 1:
        raise UsageError(f"order must be at least 1, got {m}")
    if m > max_order:
        raise UsageError(f"order {m} exceeds the maximum order {max_order} (see --max-order)")
    return m


def cmd_table(args, store: TableStore, out) -> int:
    m = _order_arg(args.m, store.max_order)
    if args.method == "closed":
        values = dict(cdh_bfg_ceg(m))
        values.update(source_matrix_solution(m))
        shell = HaarTable(m, values)
        _emit(out, _table_text(shell, args.format, values))
        return EXIT_OK
    computer = TableStore(store.cache_dir, store.max_order, args.method)
    computer._tables = store._tables  # lower orders come from the shared store
    fresh = computer.compute(m)
    cached = store._load(m)
    if cached is not None and cached != fresh:
        raise CacheError(f"cached order-{m} table differs from the {args.method} result")
    if cached is None:
        store._store(fresh)
    store._tables.setdefault(m, fresh)
    _emit(out, _table_text(fresh, args.format))
    return EXIT_OK


def cmd_haar(args, store: TableStore, out) -> int:
    w = parse_word(args.word)
    value = haar(w, store)
    if args.format == "json":
        _emit(out, json.dumps({"word": str(w), "value": value.to_json()}))
    else:
        _emit(out, _render_value(value, args.format))
    return EXIT_OK


def cmd_reduce(args, store: TableStore, out) -> int:
    w = parse_word(args.word)
    try:
        decomp = reduce(w)
    except NotBalancedError as exc:
        raise UsageError(str(exc)) from None
    items = sorted(decomp.items(), key=lambda kv: kv[0].letter_counts(), reverse=True)
    if args.format == "json":
        _emit(out, json.dumps({"word": str(w), "terms": {e.key: v.to_json() for e, v in items}}, indent=1))
    else:
        for e, v in items:
            _emit(out, f"{e.key}  {e}  {_render_value(v, args.format)}")
    return EXIT_OK


def cmd_basis(args, store: TableStore, out) -> int:
    if args.m < 0:
        raise UsageError("order must be non-negative")
    basis = enumerate_basis(args.m)
    if args.format == "json":
        _emit(out, json.dumps([e.key for e in basis]))
    else:
        for e in basis:
            _emit(out, f"{e.key}  {e}")
    return EXIT_OK


def _exps(text: str) -> StdExponents:
    try:
        return StdExponents.from_key(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_relation(args, store: TableStore, out) -> int:
    eq, cmp = _exps(args.eq), _exps(args.cmp)
    try:
        rel = derive_linear_relation(eq, cmp)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    items = sorted(rel.coefficients.items(), key=lambda kv: kv[0].letter_counts(), reverse=True)
    if args.format == "json":
        _emit(out, json.dumps({
            "equation": eq.key, "comparing": cmp.key,
            "coefficients": {e.key: v.to_json() for e, v in items},
            "rhs_coeff": rel.rhs_coeff.to_json(),
        }, indent=1))
    else:
        _emit(out, f"equation {eq}, comparing {cmp}:")
        for e, v in items:
            _emit(out, f"  {e.key}  {e}  {_render_value(v, args.format)}")
        _emit(out, f"  = ({_render_value(rel.rhs_coeff, args.format)}) * h({eq})")
    return EXIT_OK


def cmd_limit(args, store: TableStore, out) -> int:
    p = parse_expr(args.expr)
    value = haar_poly(p, store)
    try:
        lim = value.eval_at(1)
    except ZeroDivisionError:
        raise InconsistentSystemError(f"Haar value has a pole at q=1: {value}") from None
    if args.format == "json":
        _emit(out, json.dumps({"value": value.to_json(), "limit": _frac_json(lim)}))
    else:
        _emit(out, str(lim))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verification suites
# ---------------------------------------------------------------------------

Check = tuple[str, bool, str]


def verify_tables(store: TableStore) -> list[Check]:
    checks = []
    for m in (1, 2, 3):
        if m > store.max_order:
            break
        table = store.table(m)
        ref = reference_table(m)
        bad = [e for e, v in ref.items() if table.values[e] != v]
        checks.append((f"order {m}: {len(ref)} listed basis values", not bad,
                       "" if not bad else "mismatch at " + ", ".join(str(e) for e in bad)))
        for w, v in reference_extra(m).items():
            got = haar(w, store)
            checks.append((f"order {m}: h({w})", got == v, "" if got == v else str(got)))
    return checks


def verify_rewrites(store: TableStore) -> list[Check]:
    checks = []
    pending = list(zip(rewrite_identities(), REWRITE_IDENTITIES))
    for label, size in REWRITE_GROUPS:
        group, pending = pending[:size], pending[size:]
        bad = [text for (word, expected), (text, _) in group if reduce(word) != expected]
        checks.append((f"rewrite identity: {label}", not bad, "fails for " + ", ".join(bad) if bad else ""))
    return checks


def _random_balanced(rng: random.Random, max_order: int) -> Word:
    m = rng.randint(1, max_order)
    e = rng.choice(enumerate_basis(m))
    letters = list(std_word(e).letters)
    rng.shuffle(letters)
    return Word(tuple(letters))


def verify_symmetry(store: TableStore, samples: int = 200, seed: int = 2024) -> list[Check]:
    checks = []
    for m in (1, 2, 3):
        if m > store.max_order:
            break
        table = store.table(m)
        bad = [e for e in table.values for f in symmetry_orbit(e) if table.values[f] != table.values[e]]
        checks.append((f"order {m}: swap-symmetry orbits", not bad, ""))
        bad = []
        for m1 in range(m):
            for m2 in range(m - m1):
                m3 = m - 2 - m1 - m2
                if m3 < 0:
                    continue
                lhs = table.values[StdExponents(0, 1, 0, m1, m2, m3 + 1)]
                rhs = table.values[StdExponents(0, 0, 0, m1 + 1, m2 + 1, m3)]
                if lhs != rhs:
                    bad.append((m1, m2, m3))
        checks.append((f"order {m}: h(afh·low·ceg) = h(bfg·cdh·low)", not bad, str(bad) if bad else ""))
    rng = random.Random(seed)
    top = min(3, store.max_order)
    fails = {"gamma": 0, "omega": 0, "modular": 0}
    for _ in range(samples):
        w = _random_balanced(rng, top)
        hw = haar(w, store)
        if haar(gamma(w), store) != hw:
            fails["gamma"] += 1
        if haar(omega(w), store) != hw:
            fails["omega"] += 1
        cut = rng.randint(0, len(w))
        u, v = w.letters[:cut], w.letters[cut:]
        rotated = haar(Word(v + u), store) * q_pow(eta_exponent(u, 3))
        if rotated != hw:
            fails["modular"] += 1
    for name, n in fails.items():
        checks.append((f"{name} invariance on {samples} random words", n == 0, f"{n} failures" if n else ""))
    return checks


def verify_weingarten(store: TableStore) -> list[Check]:
    checks = []
    for label, left, adjoints, value, (num, den) in WEINGARTEN_EXAMPLES:
        p = NCPoly.from_word(parse_word(left))
        for i, j in adjoints:
            p = p * star(i, j)
        got = haar_poly(p, store)
        exact = parse_expr(value).scalar_value()
        lim = got.eval_at(1)
        ok = got == exact and lim == Fraction(num, den)
        checks.append((f"{label} -> {Fraction(num, den)}", ok, "" if ok else f"got {lim}"))
    return checks


SUITES: dict[str, Callable[[TableStore], list[Check]]] = {
    "tables": verify_tables,
    "appendixC": verify_rewrites,
    "symmetry": verify_symmetry,
    "weingarten": verify_weingarten,
}


def cmd_verify(args, store: TableStore, out) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = []
    for name in names:
        for label, ok, detail in SUITES[name](store):
            results.append((name, label, ok, detail))
    if args.format == "json":
        _emit(out, json.dumps([{"suite": s, "check": l, "pass": ok, "detail": d}
                               for s, l, ok, d in results], indent=1))
    else:
        for s, l, ok, d in results:
            _emit(out, f"[{'PASS' if ok else 'FAIL'}] {s}: {l}" + (f" ({d})" if d else ""))
        passed = sum(ok for _, _, ok, _ in results)
        _emit(out, f"{passed}/{len(results)} checks passed")
    return EXIT_OK if all(ok for _, _, ok, _ in results) else EXIT_FAIL


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _common(parser: argparse.ArgumentParser) -> None:
    sup = argparse.SUPPRESS
    parser.add_argument("--format", choices=("text", "json", "latex"), default=sup)
    parser.add_argument("--cache-dir", default=sup)
    parser.add_argument("--max-order", type=int, default=sup)
    parser.add_argument("--no-cache", action="store_true", default=sup)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qhaar", description="Exact Haar states on O(SL_q(3)).")
    _common(p)
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", help="print the Haar table of an order")
    t.add_argument("m", type=int)
    t.add_argument("--method", choices=("solver", "algorithm", "closed"), default="solver")
    t.set_defaults(func=cmd_table)

    h = sub.add_parser("haar", help="Haar state of a monomial")
    h.add_argument("word")
    h.set_defaults(func=cmd_haar)

    r = sub.add_parser("reduce", help="decompose a balanced monomial over the standard basis")
    r.add_argument("word")
    r.set_defaults(func=cmd_reduce)

    b = sub.add_parser("basis", help="list the standard basis of an order")
    b.add_argument("m", type=int)
    b.set_defaults(func=cmd_basis)

    rel = sub.add_parser("relation", help="comultiplication relation for an (equation, comparing) pair")
    rel.add_argument("--eq", required=True, help="exponents c1.c2.c3.c4.c5.c6")
    rel.add_argument("--cmp", required=True, help="exponents c1.c2.c3.c4.c5.c6")
    rel.set_defaults(func=cmd_relation)

    lim = sub.add_parser("limit", help="value at q=1 of the Haar state of an expression")
    lim.add_argument("expr")
    lim.set_defaults(func=cmd_limit)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("suite", nargs="?", default="all", choices=(*SUITES, "all"))
    v.set_defaults(func=cmd_verify)

    for sp in (t, h, r, b, rel, lim, v):
        _common(sp)
    return p


def _settings(args, env) -> None:
    def pick(name, conv, default):
        if hasattr(args, name):
            return getattr(args, name)
        raw = env.get(ENV_PREFIX + name.upper())
        if raw is None:
            return default
        try:
            return conv(raw)
        except ValueError:
            raise UsageError(f"bad value for {ENV_PREFIX}{name.upper()}: {raw!r}") from None

    def fmt(raw):
        if raw not in ("text", "json", "latex"):
            raise ValueError(raw)
        return raw

    args.format = pick("format", fmt, "text")
    args.cache_dir = pick("cache_dir", str, "./.qhaar")
    args.max_order = pick("max_order", int, 4)
    args.no_cache = pick("no_cache", lambda s: s.lower() not in ("", "0", "false", "no"), False)


def main(argv: Optional[Sequence[str]] = None, out=None, env=None) -> int:
    out = out or sys.stdout
    env = os.environ if env is None else env
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        _settings(args, env)
        store = TableStore(None if args.no_cache else args.cache_dir, args.max_order)
        return args.func(args, store, out)
    except (UsageError, ParseError, OrderLimitError) as exc:
        print(f"qhaar: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InconsistentSystemError, CacheError) as exc:
        print(f"qhaar: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
