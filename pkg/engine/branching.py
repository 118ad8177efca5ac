# engine/branching.py
"""
Restriction and induction along D_2n -> D_2pn (r_n -> r_pn^p, s_n -> s_pn) on the
Grothendieck group, with exact rational coefficients.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import TYPE_CHECKING, Dict, List, Mapping, Protocol, Tuple

from sympy import divisors

from .models import GrothVector, OneDim, SimpleModule, TwoDim

if TYPE_CHECKING:
    from .words import Word


Terms = Tuple[Tuple[SimpleModule, int], ...]


class WordCombination(Protocol):
    """Anything carrying a finite rational combination of words (e.g. AlgebraElement)."""

    @property
    def terms(self) -> Mapping["Word", Fraction]:
        ...


# ----------------------------
# Canonical simples
# ----------------------------

def _canonical_w_terms(n: int, k: int) -> Terms:
    if n < 3:
        raise ValueError(f"D_2n is undefined for n={n}; need n >= 3.")
    r = k % n
    if r == 0:
        return ((OneDim(n, 1, 1), 1), (OneDim(n, 1, -1), 1))
    if 2 * r == n:
        return ((OneDim(n, -1, 1), 1), (OneDim(n, -1, -1), 1))
    return ((TwoDim(n, min(r, n - r)), 1),)


def canonicalize_W(n: int, k: int) -> GrothVector:
    """W_k(n) for any integer k, rewritten over canonical simples."""
    return GrothVector(dict(_canonical_w_terms(n, k)))


def enumerate_simples(n: int) -> List[SimpleModule]:
    """All canonical simples at level n in key order."""
    if n < 3:
        raise ValueError(f"D_2n is undefined for n={n}; need n >= 3.")
    ones: List[SimpleModule] = [OneDim(n, 1, 1), OneDim(n, 1, -1)]
    if n % 2 == 0:
        ones += [OneDim(n, -1, 1), OneDim(n, -1, -1)]
    twos: List[SimpleModule] = [TwoDim(n, k) for k in range(1, (n + 1) // 2) if 2 * k < n]
    return ones + twos


def galois_representatives(n: int) -> List[SimpleModule]:
    """
    One simple per orbit of the Galois action k -> uk (u a unit) on level n.

    W_k(n) and W_k'(n) lie in one orbit iff gcd(k, n) == gcd(k', n), so W_g(n) for the
    divisors g < n/2 of n cover all two-dimensional simples. Restriction and induction
    commute with these automorphisms, which maps zero/nonzero and equal/unequal
    outcomes of any operator identity between orbit members.
    """
    ones = [m for m in enumerate_simples(n) if isinstance(m, OneDim)]
    twos: List[SimpleModule] = [TwoDim(n, g) for g in divisors(n) if 2 * g < n]
    return ones + twos


# ----------------------------
# Restriction / induction
# ----------------------------

@lru_cache(maxsize=None)
def restrict_terms(p: int, module: SimpleModule) -> Terms:
    n = module.n
    if n % p or n == p or n // p < 3:
        return ()
    m = n // p
    if isinstance(module, OneDim):
        a = 1 if p == 2 else module.a
        return ((OneDim(m, a, module.b), 1),)
    return _canonical_w_terms(m, module.k)


def _merge(chunks: List[Terms]) -> Terms:
    acc: Dict[SimpleModule, int] = {}
    for chunk in chunks:
        for module, c in chunk:
            acc[module] = acc.get(module, 0) + c
    return tuple(sorted(acc.items(), key=lambda kv: kv[0].sort_key))


@lru_cache(maxsize=None)
def induce_terms(p: int, module: SimpleModule) -> Terms:
    n = module.n
    pn = p * n
    half = (p - 1) // 2
    if isinstance(module, OneDim):
        a, b = module.a, module.b
        if p == 2:
            if a == 1:
                return ((OneDim(pn, 1, b), 1), (OneDim(pn, -1, b), 1))
            return _canonical_w_terms(pn, n // 2)
        chunks: List[Terms] = [((OneDim(pn, a, b), 1),)]
        for j in range(1, half + 1):
            # a = -1 forces n even, so (2j-1)n/2 is an integer
            k = j * n if a == 1 else (2 * j - 1) * n // 2
            chunks.append(_canonical_w_terms(pn, k))
        return _merge(chunks)

    k = module.k
    if p == 2:
        return _merge([_canonical_w_terms(pn, k), _canonical_w_terms(pn, n - k)])
    chunks = [_canonical_w_terms(pn, k)]
    for j in range(1, half + 1):
        chunks.append(_canonical_w_terms(pn, j * n - k))
        chunks.append(_canonical_w_terms(pn, j * n + k))
    return _merge(chunks)


def restrict(p: int, module: SimpleModule) -> GrothVector:
    """res_p; zero unless p | n, n != p and n/p >= 3."""
    return GrothVector(dict(restrict_terms(p, module)))


def induce(p: int, module: SimpleModule) -> GrothVector:
    return GrothVector(dict(induce_terms(p, module)))


# ----------------------------
# Words and elements acting on vectors
# ----------------------------

def _apply_raw(w: "Word", start: Mapping[SimpleModule, Fraction | int]) -> Dict[SimpleModule, Fraction | int]:
    current: Dict[SimpleModule, Fraction | int] = dict(start)
    for sym in reversed(w.symbols):
        step = restrict_terms if sym.kind == "res" else induce_terms
        nxt: Dict[SimpleModule, Fraction | int] = {}
        for module, coeff in current.items():
            for target, mult in step(sym.p, module):
                nxt[target] = nxt.get(target, 0) + coeff * mult
        current = {m: c for m, c in nxt.items() if c}
        if not current:
            break
    return current


def apply_word_to_simple(w: "Word", module: SimpleModule) -> Dict[SimpleModule, int]:
    """Integer fast path: a word applied to one simple has natural-number multiplicities."""
    return _apply_raw(w, {module: 1})  # type: ignore[return-value]


def apply_word(w: "Word", v: GrothVector) -> GrothVector:
    return GrothVector(_apply_raw(w, v.terms))


def apply_element(z: WordCombination, v: GrothVector) -> GrothVector:
    acc: Dict[SimpleModule, Fraction] = {}
    for word, coeff in z.terms.items():
        for module, c in _apply_raw(word, v.terms).items():
            acc[module] = acc.get(module, Fraction(0)) + coeff * c
    return GrothVector(acc)


def dim(v: GrothVector) -> Fraction:
    return sum((c * m.dim for m, c in v.terms.items()), Fraction(0))
