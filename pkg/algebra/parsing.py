# algebra/parsing.py
"""Text front-end for modules, Grothendieck vectors and algebra elements."""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, List, Tuple

from engine.branching import canonicalize_W
from engine.models import GrothVector, OneDim, SimpleModule
from engine.words import Word, WordParseError, parse_word, print_word

from .elements import AlgebraElement


class ModuleParseError(ValueError):
    pass


class ElementParseError(ValueError):
    pass


# ----------------------------
# Coefficients
# ----------------------------

def _parse_rational(text: str) -> Fraction:
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ZeroDivisionError(f"zero denominator in '{text}'")
    return Fraction(int(num), int(den) if den else 1)


def render_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _join_signed(parts: List[Tuple[Fraction, str]]) -> str:
    """parts: (coefficient, body) with body '' for a bare scalar."""
    if not parts:
        return "0"
    out: List[str] = []
    for i, (c, body) in enumerate(parts):
        magnitude = abs(c)
        if not body:
            text = render_rational(magnitude)
        elif magnitude == 1:
            text = body
        else:
            text = f"{render_rational(magnitude)}*{body}"
        if i == 0:
            out.append(f"-{text}" if c < 0 else text)
        else:
            out.append(f"{'-' if c < 0 else '+'} {text}")
    return " ".join(out)


# ----------------------------
# Modules and vectors
# ----------------------------

_MODULE = r"(?:V\(\s*([+-]?1)\s*,\s*([+-]?1)\s*;\s*(\d+)\s*\)|W\(\s*([+-]?\d+)\s*;\s*(\d+)\s*\))"
_MODULE_RE = re.compile(r"\s*" + _MODULE + r"\s*")
_VECTOR_TERM_RE = re.compile(r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?" + _MODULE + r"\s*")


def _module_from_groups(a: str | None, b: str | None, n_v: str | None, k: str | None, n_w: str | None) -> GrothVector:
    try:
        if n_v is not None:
            return GrothVector.of(OneDim(int(n_v), int(a), int(b)))  # type: ignore[arg-type]
        return canonicalize_W(int(n_w), int(k))  # type: ignore[arg-type]
    except ValueError as e:
        raise ModuleParseError(str(e)) from e


def parse_module(text: str) -> GrothVector:
    """`V(a,b;n)` or `W(k;n)`; a non-canonical W is canonicalized (possibly into two V's)."""
    match = _MODULE_RE.fullmatch(text)
    if not match:
        raise ModuleParseError(f"cannot parse module '{text}'")
    return _module_from_groups(*match.groups())


def parse_simple(text: str) -> SimpleModule:
    vector = parse_module(text)
    support = vector.support()
    if len(support) != 1 or vector.coefficient(support[0]) != 1:
        raise ModuleParseError(f"'{text}' is not a single canonical simple (it is {render_vector(vector)}).")
    return support[0]


def parse_vector(text: str) -> GrothVector:
    """`c1*M1 + c2*M2 - ...` or `0`."""
    if text.strip() == "0":
        return GrothVector.zero()
    pos, out = 0, GrothVector.zero()
    first = True
    while pos < len(text):
        match = _VECTOR_TERM_RE.match(text, pos)
        if not match or match.end() == pos:
            raise ModuleParseError(f"cannot parse vector '{text}' at position {pos}")
        sign, coeff, *groups = match.groups()
        if sign is None and not first:
            raise ModuleParseError(f"missing '+' or '-' before position {match.start()} in '{text}'")
        c = _parse_rational(coeff) if coeff else Fraction(1)
        if sign == "-":
            c = -c
        out = out + c * _module_from_groups(*groups)
        pos, first = match.end(), False
    if first:
        raise ModuleParseError("empty vector text")
    return out


def render_vector(v: GrothVector) -> str:
    return _join_signed([(c, str(m)) for m, c in v.items()])


# ----------------------------
# Algebra elements
# ----------------------------

_SCALAR_TERM_RE = re.compile(r"(\d+(?:/\d+)?)(?:\*(.+))?")


def _parse_term(text: str) -> Tuple[Fraction, Word]:
    match = _SCALAR_TERM_RE.fullmatch(text)
    try:
        if match:
            coeff, rest = match.groups()
            return _parse_rational(coeff), parse_word(rest) if rest else Word()
        return Fraction(1), parse_word(text)
    except (WordParseError, ZeroDivisionError) as e:
        raise ElementParseError(f"bad term '{text}': {e}") from e


def parse_element(text: str) -> AlgebraElement:
    """`elem := term (('+'|'-') term)*`, `term := rational ('*' word)? | word`."""
    compact = re.sub(r"\s+", "", text)
    if not compact:
        raise ElementParseError("empty expression")
    pieces = re.split(r"([+-])", compact)
    if pieces[0] == "":
        pieces = pieces[1:]
    else:
        pieces = ["+"] + pieces
    acc: Dict[Word, Fraction] = {}
    for sign, body in zip(pieces[0::2], pieces[1::2]):
        if not body:
            raise ElementParseError(f"dangling '{sign}' in '{text}'")
        coeff, word = _parse_term(body)
        acc[word] = acc.get(word, Fraction(0)) + (coeff if sign == "+" else -coeff)
    if len(pieces) % 2:
        raise ElementParseError(f"dangling operator in '{text}'")
    return AlgebraElement(acc)


def render_element(z: AlgebraElement) -> str:
    return _join_signed([(c, "" if not len(w) else print_word(w)) for w, c in z.items()])
