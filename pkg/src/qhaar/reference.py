"""Reference data checked by ``qhaar verify`` and the test suite.

* Haar values of the standard monomials of orders 1 to 3, each entry
  listing the monomials that share one value and the value as an
  expression in q (shared denominators are spelled out once);
* rewriting identities between products of permutation segments;
* three q -> 1 limits of combinations with adjoint generators.
"""

from functools import lru_cache

from .algebra import parse_expr, parse_word
from .normalform import counting_matrix, std_rep, std_word

O1 = "(1-q^2)^2/((1-q^4)(1-q^6))"
D2 = "((q^2 + 1)^2(q^4 + 1)(q^2 - q + 1)^2(q^2 + q + 1)^2)"
D2b = "((q^2 + 1)^2(q^2 - q + 1)^2(q^2 + q + 1)^2)"
P10 = "(1-q^2)/(1-q^10)"
D3 = "((q^2 + 1)^2(q^4 + 1)^2(q^2 - q + 1)^2(q^2 + q + 1)^2)"
D3b = "((q^2 + 1)(q^4 + 1)^2(q^2 - q + 1)^2(q^2 + q + 1)^2)"
D3c = "((q^2 + 1)(q^4 + 1)^2(q^2 - q + 1)(q^2 + q + 1))"

ORDER1 = [
    (["aek"], O1),
    (["afh", "bdk"], f"(-q){O1}"),
    (["bfg", "cdh"], f"(-q)^2{O1}"),
    (["ceg"], f"(-q)^3{O1}"),
]

ORDER2 = [
    (["aekaek"], f"(2q^8+q^4+1)/{D2}"),
    (["aekafh", "aekbdk"], f"-q(q^8 - q^6 + q^4 + 1)/{D2}"),
    (["aekbfg", "aekcdh"], f"-q^2(q^6 - q^4 - 1)/{D2}"),
    (["aekceg"], f"-q^3/{D2b}"),
    (["afhafh", "bdkbdk"], f"q^2(q^4+1)/{D2b}"),
    (["afhbdk"], f"-q^2(q^6 - q^4 - 1)/{D2}"),
    (["afhbfg", "bdkcdh"], f"-q^3/{D2b}"),
    (["afhcdh", "bdkbfg"], f"-q^3/{D2b}"),
    (["afhceg", "bfgcdh", "bdkceg"], f"q^4/{D2}"),
    (["bfgbfg", "cdhcdh"], "q^4/((q^2 + 1)(q^2 - q + 1)^2(q^2 + q + 1)^2)"),
    (["bfgceg", "cdhceg"], "-q^5/((q^2 + 1)(q^4 + 1)(q^2 - q + 1)^2(q^2 + q + 1)^2)"),
    (["cegceg"], "q^6/((q^4 + 1)(q^2 - q + 1)^2(q^2 + q + 1)^2)"),
]

ORDER3 = [
    (["aekaekaek"],
     f"(q^20 + 6q^16 - 6q^14 + 13q^12 - 6q^10 + 9q^8 - 2q^6 + 3q^4 - q^2 + 1)/{D3}*{P10}"),
    (["aekaekafh", "aekaekbdk"],
     f"-q(q^18 - 2q^14 + 7q^12 - 7q^10 + 8q^8 - 4q^6 + 3q^4 - q^2 + 1)/{D3}*{P10}"),
    (["aekaekbfg", "aekaekcdh"],
     f"-q^2(q^16 - q^14 - q^12 + 3q^10 - 5q^8 + 4q^6 - 3q^4 + q^2 - 1)/{D3}*{P10}"),
    (["aekaekceg"], f"-q^3(q^14 + q^10 + 3q^8 - 2q^6 + 3q^4 - q^2 + 1)/{D3}*{P10}"),
    (["aekafhafh", "aekbdkbdk"],
     f"q^2(q^18 - 2q^16 + 2q^14 + q^12 - 3q^10 + 7q^8 - 4q^6 + 4q^4 - q^2 + 1)/{D3}*{P10}"),
    (["aekafhbdk"],
     f"-q^2(q^16 - q^14 - 2q^12 + 4q^10 - 6q^8 + 5q^6 - 3q^4 + q^2 - 1)/{D3}*{P10}"),
    (["aekafhbfg", "aekafhcdh"],
     f"-q^3(q^14 - q^12 + 2q^8 - 3q^6 + 3q^4 - q^2 + 1)/{D3}*{P10}"),
    (["aekafhceg"], f"q^4(q^10 - q^6 + 2q^4 - q^2 + 1)/{D3}*{P10}"),
    (["aekbdkbfg", "aekbdkcdh"],
     f"q^3(q^16 - 2q^14 + 2q^12 - q^10 - 2q^8 + 3q^6 - 3q^4 + q^2 - 1)/{D3}*{P10}"),
    (["aekbdkceg"], f"q^4(q^12 - 2q^10 + 4q^8 - 5q^6 + 4q^4 - 2q^2 + 1)/{D3b}*{P10}"),
    (["aekbfgbfg", "aekcdhcdh"], f"-q^4(q^10 - 2q^8 + 3q^6 - 3q^4 + q^2 - 1)/{D3b}*{P10}"),
    (["aekbfgcdh"], f"q^4(1-q^2)(q^10 + q^6 + 2q^4 + 1)/{D3}*{P10}"),
    (["aekbfgceg", "aekcdhceg"], f"q^5(q^3 - q - 1)(q^3 - q + 1)/{D3b}*{P10}"),
    (["aekcegceg"], f"q^6(q^6 + q^4 + 1)/{D3b}*{P10}"),
    (["afhafhafh", "bdkbdkbdk"], f"-q^3(q^8 - q^6 + 3q^4 - q^2 + 1)^2/{D3b}*{P10}"),
    (["afhafhbdk", "afhbdkbdk"],
     f"q^3(q^16 - 2q^14 + 2q^12 - 3q^8 + 4q^6 - 4q^4 + q^2 - 1)/{D3}*{P10}"),
    (["afhafhbfg", "bdkbdkcdh", "afhafhcdh", "bdkbdkbfg"],
     f"q^4(q^4 - q^2 + 1)(q^8 - q^6 + 3q^4 - q^2 + 1)/{D3b}*{P10}"),
    (["afhafhceg", "bdkbdkceg"], f"-q^5(q^4 - q^2 + 1)^2/{D3b}*{P10}"),
    (["afhbdkbfg", "afhbdkcdh"], f"q^4(q^12 - 3q^10 + 5q^8 - 6q^6 + 5q^4 - 2q^2 + 1)/{D3b}*{P10}"),
    (["afhbdkceg"], f"-q^5(1-q^2)(q^10 + 2q^6 + q^4 + 1)/{D3}*{P10}"),
    (["afhbfgbfg", "bdkcdhcdh", "afhcdhcdh", "bdkbfgbfg"],
     f"-q^5(q^8 - q^6 + 3q^4 - q^2 + 1)/{D3b}*{P10}"),
    (["afhbfgceg", "bdkcdhceg"], f"q^6(q^4 - q^2 + 1)/{D3b}*{P10}"),
    (["afhcdhceg", "bdkbfgceg"], f"q^6(q^4 - q^2 + 1)/{D3b}*{P10}"),
    (["afhcegceg", "bdkcegceg", "bfgcdhceg"], f"-q^7/{D3b}*{P10}"),
    (["bfgbfgbfg", "cdhcdhcdh"], f"q^6(q^8 - q^6 + 3q^4 - q^2 + 1)/{D3c}*{P10}"),
    (["bfgbfgcdh", "bfgcdhcdh"], f"q^6(q^4 - q^2 + 1)/{D3b}*{P10}"),
    (["bfgbfgceg", "cdhcdhceg"], f"-q^7(q^4 - q^2 + 1)/{D3c}*{P10}"),
    (["bfgcegceg", "cdhcegceg"], f"q^8/{D3c}*{P10}"),
    (["cegcegceg"], f"-q^9/((q^2 + 1)(q^4 + 1)^2)*{P10}"),
]

TABLES = {1: ORDER1, 2: ORDER2, 3: ORDER3}

# left word, right-hand side over standard monomials
REWRITE_IDENTITIES = [
    ("cegaek", "aekceg+(q^3 - q)*afhceg-(q - 1/q)*bdkceg-(q^2 - 1)^2/q*bfgcdh"),
    ("cegafh", "q^2*afhceg+(1 - q^2)*bfgcdh"),
    ("cegbdk", "q^(-2)*bdkceg+(1 - q^(-2))*bfgcdh"),
    ("cdhaek", "aekcdh+(q^4 - q^2)*afhceg+(1 - q^2)*bdkceg-(q^2 - 1)^2*bfgcdh"),
    ("cdhafh", "afhcdh+(q^3 - q)*afhceg-(q^3 - q)*bfgcdh"),
    ("cdhbdk", "bdkcdh-(q - 1/q)*bdkceg+(q - 1/q)*bfgcdh"),
    ("bfgaek", "aekbfg+(q^4 - q^2)*afhceg+(1 - q^2)*bdkceg-(q^2 - 1)^2*bfgcdh"),
    ("bfgafh", "afhbfg+(q^3 - q)*afhceg-(q^3 - q)*bfgcdh"),
    ("bfgbdk", "bdkbfg-(q - 1/q)*bdkceg+(q - 1/q)*bfgcdh"),
    ("bdkafh", "q^(-2)*afhbdk+(1 - q^(-2))*aekbfg+(1 - q^(-2))*aekcdh-(q^2 - 1)^2/q^3*aekceg"
               "+(q^2 - 1)^2(q^2 + 1)/q^2*afhceg-(q^4 - q^2)*bfgcdh"),
    ("afhaek", "aekafh+(q - 1/q)*afhbdk-(q - 1/q)*aekbfg-(q - 1/q)*aekcdh+(q - 1/q)^2*aekceg"
               "+(q - 1/q)*afhceg"),
    ("bdkaek", "aekbdk-(q - 1/q)*afhbdk+(q - 1/q)*aekbfg+(q - 1/q)*aekcdh-(q - 1/q)^2*aekceg"
               "+(q^2 - 1)^2(q^2 + 1)/q*afhceg-(q^3 - q)*bdkceg-q(q^2 - 1)^2*bfgcdh"),
    ("afhbdkceg", "q*aekbfgcdh+(1 - q^2)*aekbfgceg+(1 - q^2)*aekcdhceg+(q^2 - 1)^2/q*aek(ceg)^2"
                  "+(1 - q^2)*afhbfgcdh+(q^3 - q)*afhbfgceg+(q^3 - q)*afhcdhceg-(q^2 - 1)^2*afh(ceg)^2"),
    # the last term is bfgcdhceg: a word of the same order as the left side
    ("bdkafhceg", "1/q*aekbfgcdh-(1 - q^(-2))*afhbfgcdh+(q - q^(-1))*afhbfgceg"
                  "+(q - q^(-1))*afhcdhceg+(q^2 - 1)^2*afh(ceg)^2-(q^4 - q^2)*bfgcdhceg"),
]

# consecutive runs of REWRITE_IDENTITIES that form one displayed identity
REWRITE_GROUPS = [
    ("ceg moved left past aek, afh, bdk", 3),
    ("cdh moved left past aek, afh, bdk", 3),
    ("bfg moved left past aek, afh, bdk", 3),
    ("bdkafh", 1),
    ("afhaek", 1),
    ("bdkaek", 1),
    ("afhbdkceg", 1),
    ("bdkafhceg", 1),
]

# (label, left factor, adjoint factors (i, j), exact Haar value, limit at q = 1)
WEINGARTEN_EXAMPLES = [
    ("U11 U22 U11* U22*", "ae", [(1, 1), (2, 2)], "q^2/((q^2+1)^2(q^4+1))", (1, 8)),
    ("U11 U32 U31* U12*", "ah", [(3, 1), (1, 2)], "-q/((q^2+1)^2(q^4+1)(q^4+q^2+1))", (-1, 24)),
    ("U11 U11 U11* U11*", "aa", [(1, 1), (1, 1)], "1/((q^4+1)(q^4+q^2+1))", (1, 6)),
]


def reference_table(m: int) -> dict:
    """``{StdExponents: QRational}`` of the listed order-m basis values."""
    return _split(m)[0]


def reference_extra(m: int) -> dict:
    """``{word text: QRational}`` of listed values for words outside the basis."""
    return _split(m)[1]


@lru_cache(maxsize=None)
def _split(m: int):
    out = {}
    extra = {}
    for words, expr in TABLES[m]:
        value = parse_expr(expr).scalar_value()
        if value is None:
            raise ValueError(f"reference value is not a scalar: {expr}")
        for w in words:
            word = parse_word(w)
            e = std_rep(counting_matrix(word))
            if std_word(e) != word:
                extra[w] = value
            elif e in out:
                raise ValueError(f"duplicate reference entry {w}")
            else:
                out[e] = value
    return out, extra


def rewrite_identities():
    """``[(word, {StdExponents: QRational})]`` from :data:`REWRITE_IDENTITIES`."""
    from .normalform import reduce_poly
    return [(parse_word(l), reduce_poly(parse_expr(r))) for l, r in REWRITE_IDENTITIES]
