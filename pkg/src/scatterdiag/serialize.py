"""JSON diagram files, wall-function strings and human-readable formatting.

Diagram file layout::

    {"flavor": "tropical" | "quantum" | "extended", "rank": r (extended only),
     "order": N,
     "walls": [{"base": ["p/q", "p/q"], "direction": [a, b], "kind": "line" | "ray",
                "grade": [a, b],
                "log": [{"m": [a, b], "k": k, "coeff": ...}, ...]
                  or "wall_function": "1 + t*x"}]}

``coeff`` is ``"p/q"`` (tropical), ``{"<doubled exponent>": "p/q"}``
(quantum) or ``{"matrix": [["p/q", ...], ...], "deriv": "p/q"}`` (extended).
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Optional

from .algebra import EXTENDED, QUANTUM, TROPICAL, ExtCoeff, Flavor, LieElement
from .coeffs import QLaurent, SquareMatrix, format_rational, parse_rational
from .diagrams import LINE, RAY, ScatteringDiagram, Wall
from .errors import ConfigurationError, DegenerateGradingError, MalformedWallFunctionError, SchemaError
from .groups import TorusElement, log_from_wall_function, wall_function_from_log
from .lattice import Vec, perp, primitive_part

DEFAULT_ORDER = 6

# -- coefficients ------------------------------------------------------------


def coeff_to_json(flavor: Flavor, c):
    if flavor.tag == TROPICAL:
        return format_rational(c)
    if flavor.tag == QUANTUM:
        return c.to_json()
    return {"matrix": c.matrix.to_json(), "deriv": format_rational(c.deriv)}


def coeff_from_json(flavor: Flavor, obj, where: str):
    try:
        if flavor.tag == TROPICAL:
            return parse_rational(obj)
        if flavor.tag == QUANTUM:
            return QLaurent.from_json(obj)
        if not isinstance(obj, dict) or "matrix" not in obj:
            raise SchemaError("extended coefficient needs 'matrix' and 'deriv'")
        mat = SquareMatrix.from_json(obj["matrix"])
        if mat.rank != flavor.rank:
            raise SchemaError(f"matrix rank {mat.rank} does not match diagram rank {flavor.rank}")
        return ExtCoeff(mat, parse_rational(obj.get("deriv", "0/1")))
    except SchemaError as exc:
        raise SchemaError(f"{where}: {exc}") from None


def lie_to_json(a: LieElement) -> list:
    out = []
    for (m, k), c in sorted(a.terms.items(), key=lambda i: (i[0][1], i[0][0])):
        out.append({"m": [m[0], m[1]], "k": k, "coeff": coeff_to_json(a.flavor, c)})
    return out


def _vec(obj, where: str) -> Vec:
    if not isinstance(obj, list) or len(obj) != 2 or not all(isinstance(v, int) and not isinstance(v, bool) for v in obj):
        raise SchemaError(f"{where}: expected a two-element integer array, got {obj!r}")
    return (obj[0], obj[1])


def lie_from_json(flavor: Flavor, order: int, obj, where: str) -> LieElement:
    if not isinstance(obj, list):
        raise SchemaError(f"{where}: log must be a list of terms")
    terms = {}
    for i, rec in enumerate(obj):
        here = f"{where}[{i}]"
        if not isinstance(rec, dict) or not {"m", "k", "coeff"} <= set(rec):
            raise SchemaError(f"{here}: term needs 'm', 'k' and 'coeff'")
        m = _vec(rec["m"], f"{here}.m")
        k = rec["k"]
        if not isinstance(k, int) or isinstance(k, bool) or k < 1:
            raise SchemaError(f"{here}.k: t-order must be a positive integer")
        if m == (0, 0):
            raise SchemaError(f"{here}.m: grade 0 is not allowed")
        if (m, k) in terms:
            raise SchemaError(f"{here}: duplicate term at grade {m}, order {k}")
        terms[(m, k)] = coeff_from_json(flavor, rec["coeff"], f"{here}.coeff")
    return LieElement(flavor, order, terms)


# -- diagrams ---------------------------------------------------------------------


def wall_to_json(w: Wall) -> dict:
    return {
        "base": [format_rational(w.base[0]), format_rational(w.base[1])],
        "direction": [w.direction[0], w.direction[1]],
        "kind": w.kind,
        "grade": [w.grade[0], w.grade[1]],
        "log": lie_to_json(w.log),
    }


def _header(flavor: Flavor, order: int) -> dict:
    out = {"flavor": flavor.tag}
    if flavor.rank is not None:
        out["rank"] = flavor.rank
    out["order"] = order
    return out


def diagram_to_json(d: ScatteringDiagram) -> dict:
    out = _header(d.flavor, d.order)
    out["walls"] = [wall_to_json(w) for w in d.walls]
    return out


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


def dump_diagram(d: ScatteringDiagram) -> str:
    return dumps(diagram_to_json(d))


def _flavor_from_json(obj) -> Flavor:
    tag = obj.get("flavor")
    if tag not in (TROPICAL, QUANTUM, EXTENDED):
        raise SchemaError(f"flavor: expected tropical, quantum or extended, got {tag!r}")
    rank = obj.get("rank")
    if tag == EXTENDED:
        if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
            raise SchemaError("rank: extended diagrams need a positive integer rank")
        return Flavor.extended(rank)
    if rank is not None:
        raise SchemaError(f"rank: not allowed for the {tag} flavor")
    return Flavor(tag)


def wall_from_json(flavor: Flavor, order: int, obj, where: str) -> Wall:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: wall must be an object")
    for key in ("base", "direction", "kind", "grade"):
        if key not in obj:
            raise SchemaError(f"{where}: missing '{key}'")
    base = obj["base"]
    if not isinstance(base, list) or len(base) != 2:
        raise SchemaError(f"{where}.base: expected two rationals")
    try:
        base = (parse_rational(base[0]), parse_rational(base[1]))
    except SchemaError as exc:
        raise SchemaError(f"{where}.base: {exc}") from None
    direction = _vec(obj["direction"], f"{where}.direction")
    grade = _vec(obj["grade"], f"{where}.grade")
    kind = obj["kind"]
    if kind not in (LINE, RAY):
        raise SchemaError(f"{where}.kind: expected 'line' or 'ray', got {kind!r}")
    has_log, has_wf = "log" in obj, "wall_function" in obj
    if has_log == has_wf:
        raise SchemaError(f"{where}: give exactly one of 'log' and 'wall_function'")
    try:
        if has_log:
            log = lie_from_json(flavor, order, obj["log"], f"{where}.log")
        else:
            if flavor.tag != TROPICAL:
                raise SchemaError(f"{where}.wall_function: only tropical walls accept wall functions")
            f = parse_wall_function(obj["wall_function"], order)
            log = log_from_wall_function(grade, f).log
        return Wall(base, direction, kind, log, grade)
    except (ConfigurationError, DegenerateGradingError, MalformedWallFunctionError) as exc:
        raise SchemaError(f"{where}: {exc}") from None


def diagram_from_json(obj, order: Optional[int] = None) -> ScatteringDiagram:
    """Build a diagram; ``order`` overrides the file's truncation order."""
    if not isinstance(obj, dict):
        raise SchemaError("diagram file must hold a JSON object")
    flavor = _flavor_from_json(obj)
    file_order = obj.get("order", DEFAULT_ORDER)
    if not isinstance(file_order, int) or isinstance(file_order, bool) or file_order < 1:
        raise SchemaError("order: expected a positive integer")
    n = file_order if order is None else order
    if n < 1:
        raise SchemaError("order: expected a positive integer")
    walls = obj.get("walls", [])
    if not isinstance(walls, list):
        raise SchemaError("walls: expected a list")
    out = [wall_from_json(flavor, n, w, f"wall {i}") for i, w in enumerate(walls)]
    return ScatteringDiagram(flavor, n, tuple(out))


def load_diagram(text: str, order: Optional[int] = None) -> ScatteringDiagram:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    return diagram_from_json(obj, order)


def report_to_json(report) -> dict:
    """Completed diagram plus the added rays and the per-order defect log."""
    out = diagram_to_json(report.output)
    added = []
    for w in report.added:
        rec = wall_to_json(w)
        rec["label"] = wall_label(w, verbosity="leading", unicode=False)
        added.append(rec)
    out["added"] = added
    out["defects"] = [{"order": n, "log": lie_to_json(g)} for n, g in report.per_order_defects]
    return out


# -- wall-function strings ----------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([txy])|(\^)|(\*)|([+-])|(\()|(\)))")


def _tokens(text: str):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise MalformedWallFunctionError(f"cannot parse wall function at {text[pos:]!r}")
        pos = mt.end()
        num, var, caret, star, sign, lp, rp = mt.groups()
        if num is not None:
            out.append(("num", Fraction(num)))
        elif var is not None:
            out.append(("var", var))
        elif caret:
            out.append(("^", None))
        elif star:
            out.append(("*", None))
        elif sign:
            out.append(("sign", sign))
        elif lp:
            out.append(("(", None))
        else:
            out.append((")", None))
    return out


def parse_wall_function(text: str, order: int) -> TorusElement:
    """Parse ``"1 + c*t^j*x^a*y^b + ..."`` into a tropical torus element.

    Factors are rationals ``p`` or ``p/q`` and powers of ``t``, ``x``, ``y``
    joined by ``*``; exponents are integers, optionally ``x^(-1)`` or ``x^-1``.
    """
    if not isinstance(text, str) or not text.strip():
        raise MalformedWallFunctionError("wall function must be a nonempty string")
    toks = _tokens(text)
    terms: dict = {}
    i = 0

    def expect_exponent(j):
        neg = False
        paren = False
        if j < len(toks) and toks[j][0] == "(":
            paren = True
            j += 1
        if j < len(toks) and toks[j][0] == "sign":
            neg = toks[j][1] == "-"
            j += 1
        if j >= len(toks) or toks[j][0] != "num" or toks[j][1].denominator != 1:
            raise MalformedWallFunctionError(f"bad exponent in {text!r}")
        e = int(toks[j][1])
        j += 1
        if paren:
            if j >= len(toks) or toks[j][0] != ")":
                raise MalformedWallFunctionError(f"unbalanced parenthesis in {text!r}")
            j += 1
        return (-e if neg else e), j

    first = True
    while i < len(toks):
        sign = 1
        if toks[i][0] == "sign":
            sign = -1 if toks[i][1] == "-" else 1
            i += 1
        elif not first:
            raise MalformedWallFunctionError(f"expected '+' or '-' in {text!r}")
        first = False
        coeff = Fraction(sign)
        exps = {"t": 0, "x": 0, "y": 0}
        need_factor = True
        while i < len(toks) and toks[i][0] != "sign":
            kind, val = toks[i]
            if not need_factor:
                if kind != "*":
                    raise MalformedWallFunctionError(f"expected '*' in {text!r}")
                i += 1
                need_factor = True
                continue
            if kind == "num":
                coeff *= val
                i += 1
            elif kind == "var":
                i += 1
                e = 1
                if i < len(toks) and toks[i][0] == "^":
                    e, i = expect_exponent(i + 1)
                exps[val] += e
            else:
                raise MalformedWallFunctionError(f"unexpected token in {text!r}")
            need_factor = False
        if need_factor:
            raise MalformedWallFunctionError(f"dangling operator in {text!r}")
        if exps["t"] < 0:
            raise MalformedWallFunctionError(f"negative power of t in {text!r}")
        key = ((exps["x"], exps["y"]), exps["t"])
        v = terms.get(key, 0) + coeff
        if v:
            terms[key] = v
        else:
            terms.pop(key, None)
    return TorusElement(Flavor.tropical(), order, terms)


_SUP = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")


def _power(var: str, e: int, unicode: bool) -> str:
    if e == 0:
        return ""
    if e == 1:
        return var
    return var + (str(e).translate(_SUP) if unicode else f"^{e}")


def format_monomial(m: Vec, k: int, unicode: bool = False) -> str:
    parts = [_power("t", k, unicode), _power("x", m[0], unicode), _power("y", m[1], unicode)]
    parts = [p for p in parts if p]
    return ("" if unicode else "*").join(parts)


def _signed_terms(items, unicode: bool):
    """items: (coefficient Fraction, monomial string) -> '1 + t*x - 1/2*t^2*x^2'."""
    out = ""
    plus, minus = ("+", "-") if unicode else (" + ", " - ")
    for n, (c, mono) in enumerate(items):
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag}{'' if unicode else '*'}{mono}"
        else:
            body = str(mag)
        if n == 0:
            out = ("-" if c < 0 else "") + body
        else:
            out += (minus if c < 0 else plus) + body
    return out or "0"


def format_wall_function(f: TorusElement, unicode: bool = False, max_order: Optional[int] = None) -> str:
    items = []
    for (m, k), c in sorted(f.terms.items(), key=lambda i: (i[0][1], i[0][0])):
        if max_order is not None and k > max_order:
            continue
        items.append((c, format_monomial(m, k, unicode)))
    return _signed_terms(items, unicode)


def _format_matrix(a: SquareMatrix) -> str:
    items = []
    for i, row in enumerate(a.rows):
        for j, v in enumerate(row):
            if v:
                items.append((v, f"E{i + 1}{j + 1}"))
    return _signed_terms(items, False)


def format_coeff(flavor: Flavor, c, m: Vec) -> str:
    if flavor.tag == TROPICAL:
        n = perp(primitive_part(m)[0])
        return f"{c} d[{n[0]},{n[1]}]"
    if flavor.tag == QUANTUM:
        return f"({c})"
    from .algebra import derivation_normal

    n = derivation_normal(m, flavor)
    mat = _format_matrix(c.matrix) if c.matrix else "0"
    der = f"{c.deriv} d[{n[0]},{n[1]}]" if c.deriv else "0"
    return f"({mat}, {der})"


def format_lie(a: LieElement, unicode: bool = False) -> str:
    if not a.terms:
        return "0"
    parts = []
    for (m, k), c in sorted(a.terms.items(), key=lambda i: (i[0][1], i[0][0])):
        parts.append(f"{format_coeff(a.flavor, c, m)} {format_monomial(m, k, unicode)}")
    return " + ".join(parts)


def wall_label(w: Wall, verbosity: str = "leading", unicode: bool = True) -> str:
    """Short text for a wall: its wall function (tropical) or log."""
    if verbosity == "none":
        return ""
    log = w.log
    lead = log.leading_order()
    if log.flavor.tag == TROPICAL:
        _, f = wall_function_from_log(w.auto)
        return format_wall_function(f, unicode, max_order=lead if verbosity == "leading" else None)
    shown = log.homogeneous(lead) if verbosity == "leading" else log
    return format_lie(shown, unicode)
