# algebra/elements.py
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Tuple, Union

from engine.words import EMPTY_WORD, Word, WordSymbol, ind, res


Scalar = Union[int, Fraction]


class AlgebraElement:
    """Rational combination of words; words are kept verbatim, products concatenate."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Word, Scalar] | None = None) -> None:
        acc: Dict[Word, Fraction] = {}
        for word, coeff in (terms or {}).items():
            acc[word] = acc.get(word, Fraction(0)) + Fraction(coeff)
        self._terms = {w: c for w, c in acc.items() if c}

    # constructors

    @classmethod
    def zero(cls) -> "AlgebraElement":
        return cls()

    @classmethod
    def scalar(cls, value: Scalar) -> "AlgebraElement":
        return cls({EMPTY_WORD: value})

    @classmethod
    def word(cls, w: Word, coeff: Scalar = 1) -> "AlgebraElement":
        return cls({w: coeff})

    @classmethod
    def symbols(cls, *syms: WordSymbol) -> "AlgebraElement":
        return cls({Word(tuple(syms)): 1})

    @classmethod
    def res(cls, p: int) -> "AlgebraElement":
        return cls.symbols(res(p))

    @classmethod
    def ind(cls, p: int) -> "AlgebraElement":
        return cls.symbols(ind(p))

    # access

    @property
    def terms(self) -> Mapping[Word, Fraction]:
        return dict(self._terms)

    def items(self) -> List[Tuple[Word, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key)

    def words(self) -> List[Word]:
        return [w for w, _ in self.items()]

    def primes(self) -> Tuple[int, ...]:
        return tuple(sorted({p for w in self._terms for p in w.primes()}))

    def max_length(self) -> int:
        return max((len(w) for w in self._terms), default=0)

    def coefficient(self, w: Word) -> Fraction:
        return self._terms.get(w, Fraction(0))

    # arithmetic

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        """Syntactic equality of the stored combinations."""
        if isinstance(other, AlgebraElement):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == AlgebraElement.scalar(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: Union["AlgebraElement", Scalar]) -> "AlgebraElement":
        other = _lift(other)
        acc = dict(self._terms)
        for w, c in other._terms.items():
            acc[w] = acc.get(w, Fraction(0)) + c
        return AlgebraElement(acc)

    __radd__ = __add__

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: Union["AlgebraElement", Scalar]) -> "AlgebraElement":
        return self + (-_lift(other))

    def __rsub__(self, other: Scalar) -> "AlgebraElement":
        return _lift(other) - self

    def __mul__(self, other: Union["AlgebraElement", Scalar]) -> "AlgebraElement":
        if isinstance(other, (int, Fraction)):
            return AlgebraElement({w: c * other for w, c in self._terms.items()})
        acc: Dict[Word, Fraction] = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                w = w1 * w2
                acc[w] = acc.get(w, Fraction(0)) + c1 * c2
        return AlgebraElement(acc)

    def __rmul__(self, other: Scalar) -> "AlgebraElement":
        return self * other

    def __truediv__(self, scalar: Scalar) -> "AlgebraElement":
        return self * (Fraction(1) / Fraction(scalar))

    def __pow__(self, exponent: int) -> "AlgebraElement":
        out = AlgebraElement.scalar(1)
        for _ in range(exponent):
            out = out * self
        return out

    def __str__(self) -> str:
        from .parsing import render_element

        return render_element(self)

    def __repr__(self) -> str:
        return f"AlgebraElement({str(self)!r})"


def _lift(value: Union[AlgebraElement, Scalar]) -> AlgebraElement:
    return value if isinstance(value, AlgebraElement) else AlgebraElement.scalar(value)


def combination(pairs: Iterable[Tuple[Scalar, Word]]) -> AlgebraElement:
    acc: Dict[Word, Fraction] = {}
    for coeff, w in pairs:
        acc[w] = acc.get(w, Fraction(0)) + Fraction(coeff)
    return AlgebraElement(acc)


ONE = AlgebraElement.scalar(1)
