# algebra/basis.py
"""
Basis monomials of A_{P,M} and normal forms over them.

Every monomial is (res_{p1} ind_{p1})^t * B where B is the template of its tag, with
k_q = -d_q and l_q = e_q - d_q read off the termini e and nadirs d.

  I    prod ind_q^l_q * prod res_q^k_q                       (total nadir, or no full support)
  II   prod_q ind_q^l_q res_q^k_q                            (|S & E| >= 2)
  III  res_i^k_i ind_j^l_j                                   (S = {i}, E = {j}, i != j)
  IV   res_s ind_i^l_i res_i^k_i ind_s                       (S = E = {i}, s the successor of i)
  V    ind_j^l_j res_j^k_j prod_{q != j} ind_q^l_q           (S = {j} inside E, |E| >= 2)
  VI   prod_{q != j} res_q^k_q ind_j^l_j res_j^k_j           (E = {j} inside S, |S| >= 2)
  VII  prod_{q != j} ind_q^l_q res_i^k_i ind_j^l_j prod_{q != i} res_q^k_q
       (remaining shapes, |P| >= 3; i = min S, j = min(E - {i}))

S are the primes with d_q != 0, E those with d_q != e_q. Primes are in ascending order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Literal, Optional, Sequence, Tuple

from engine.models import FamilyConfig, Regime
from engine.words import EMPTY_WORD, Word, WordSymbol, ind, profile, res

from .elements import AlgebraElement


Tag = Literal["I", "II", "III", "IV", "V", "VI", "VII"]
TAGS: Tuple[Tag, ...] = ("I", "II", "III", "IV", "V", "VI", "VII")


class NormalFormError(RuntimeError):
    """No template fits, or the coefficient system is singular or inconsistent."""


def _power(sym: WordSymbol, exponent: int) -> Word:
    return Word((sym,) * exponent)


def _concat(parts: Iterable[Word]) -> Word:
    out = EMPTY_WORD
    for part in parts:
        out = out * part
    return out


# ----------------------------
# Monomials
# ----------------------------

@dataclass(frozen=True)
class BasisMonomial:
    tag: Tag
    t: int
    primes: Tuple[int, ...]
    k: Tuple[int, ...]
    l: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.t not in (0, 1):
            raise ValueError(f"t must be 0 or 1, got {self.t}.")
        if not (len(self.primes) == len(self.k) == len(self.l)):
            raise ValueError("primes, k and l must have equal length.")
        if any(x < 0 for x in self.k + self.l):
            raise ValueError("exponents must be non-negative.")

    @property
    def key(self) -> Tuple[str, int, Tuple[int, ...], Tuple[int, ...]]:
        return (self.tag, self.t, self.k, self.l)

    @property
    def sort_key(self) -> Tuple[int, int, Tuple[int, ...], Tuple[int, ...]]:
        return (TAGS.index(self.tag), self.t, self.k, self.l)

    def exponents(self) -> Dict[str, Dict[str, int]]:
        return {str(p): {"k": kq, "l": lq} for p, kq, lq in zip(self.primes, self.k, self.l)}

    def template(self) -> Word:
        """The t = 0 word of this monomial."""
        ps, k, l = self.primes, dict(zip(self.primes, self.k)), dict(zip(self.primes, self.l))
        inds = lambda qs: _concat(_power(ind(q), l[q]) for q in qs)  # noqa: E731
        ress = lambda qs: _concat(_power(res(q), k[q]) for q in qs)  # noqa: E731
        starts = [q for q in ps if k[q]]
        ends = [q for q in ps if l[q]]
        if self.tag == "I":
            return inds(ps) * ress(ps)
        if self.tag == "II":
            return _concat(inds([q]) * ress([q]) for q in ps)
        if self.tag == "III":
            return ress(starts) * inds(ends)
        if self.tag == "IV":
            i = starts[0]
            s = ps[(ps.index(i) + 1) % len(ps)]
            return Word.of(res(s)) * inds([i]) * ress([i]) * Word.of(ind(s))
        if self.tag == "V":
            j = starts[0]
            return inds([j]) * ress([j]) * inds([q for q in ps if q != j])
        if self.tag == "VI":
            j = ends[0]
            return ress([q for q in ps if q != j]) * inds([j]) * ress([j])
        i = starts[0]
        j = min(q for q in ends if q != i)
        return (
            inds([q for q in ps if q != j])
            * ress([i])
            * inds([j])
            * ress([q for q in ps if q != i])
        )

    def word(self) -> Word:
        prefix = Word.of(res(self.primes[0]), ind(self.primes[0])) if self.t else EMPTY_WORD
        return prefix * self.template()

    def element(self) -> AlgebraElement:
        return AlgebraElement.word(self.word())

    def with_t(self, t: int) -> "BasisMonomial":
        return BasisMonomial(self.tag, t, self.primes, self.k, self.l)

    def __str__(self) -> str:
        from engine.words import print_word

        return print_word(self.word())


# ----------------------------
# Template selection
# ----------------------------

def classify(
    e: Sequence[int],
    d: Sequence[int],
    total_nadir: bool,
    regime: Regime,
    primes: Sequence[int],
) -> Optional[Tag]:
    """Tag of the template matching (e, d, total_nadir), or None when no template fits."""
    ps = tuple(primes)
    if regime == "NoFullSupport" or total_nadir:
        return "I"
    S = {p for p, dp in zip(ps, d) if dp}
    E = {p for p, ep, dp in zip(ps, e, d) if ep != dp}
    if not S or not E or len(ps) < 2:
        return None
    if len(S) == 1 and len(E) == 1:
        return "IV" if S == E else "III"
    if len(S & E) >= 2:
        return "II"
    if len(S) == 1 and S <= E:
        return "V"
    if len(E) == 1 and E <= S:
        return "VI"
    return "VII"


def candidate_basis(
    e: Sequence[int],
    d: Sequence[int],
    total_nadir: bool,
    regime: Regime,
    primes: Sequence[int],
) -> List[BasisMonomial]:
    """The t = 0 and t = 1 monomials with termini e, nadirs d and the given total-nadir flag."""
    if len(e) != len(primes) or len(d) != len(primes):
        raise ValueError("e and d need one entry per prime.")
    if any(dp > 0 or dp > ep for ep, dp in zip(e, d)):
        return []
    tag = classify(e, d, total_nadir, regime, primes)
    if tag is None:
        return []
    k = tuple(-dp for dp in d)
    l = tuple(ep - dp for ep, dp in zip(e, d))
    return [BasisMonomial(tag, t, tuple(primes), k, l) for t in (0, 1)]


ClassKey = Tuple[Tuple[int, ...], Tuple[int, ...], bool]


def class_key(w: Word, cfg: FamilyConfig) -> ClassKey:
    """(termini, nadirs, total-nadir flag); the flag is not a class invariant without full support."""
    prof = profile(w, cfg.primes)
    flag = prof.total_nadir if cfg.regime == "FullSupport" else True
    return prof.termini, prof.nadirs, flag


def monomial_for(w: Word, cfg: FamilyConfig, t: int = 0) -> BasisMonomial:
    e, d, flag = class_key(w, cfg)
    candidates = candidate_basis(e, d, flag, cfg.regime, cfg.primes)
    if not candidates:
        raise NormalFormError(f"no basis template for {w} (e={e}, d={d}, total nadir={flag}).")
    return candidates[t]


def enumerate_basis(cfg: FamilyConfig, bound: int) -> List[BasisMonomial]:
    """Every basis monomial with all k_q, l_q <= bound."""
    out: List[BasisMonomial] = []
    n = len(cfg.primes)
    for k in product(range(bound + 1), repeat=n):
        for l in product(range(bound + 1), repeat=n):
            d = tuple(-x for x in k)
            e = tuple(lq - kq for kq, lq in zip(k, l))
            flags = (True,) if cfg.regime == "NoFullSupport" else (True, False)
            for flag in flags:
                out.extend(candidate_basis(e, d, flag, cfg.regime, cfg.primes))
    return sorted(out, key=lambda m: m.sort_key)


# ----------------------------
# Normal forms
# ----------------------------

@dataclass(frozen=True)
class NormalForm:
    """Rational combination of distinct basis monomials, kept in tag order."""
    entries: Tuple[Tuple[BasisMonomial, Fraction], ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        keys = [m.key for m, _ in self.entries]
        if len(set(keys)) != len(keys):
            raise ValueError("normal form entries must be distinct monomials.")
        if any(not c for _, c in self.entries):
            raise ValueError("normal form coefficients must be nonzero.")
        ordered = tuple(sorted(self.entries, key=lambda mc: mc[0].sort_key))
        object.__setattr__(self, "entries", ordered)

    @classmethod
    def from_terms(cls, terms: Dict[BasisMonomial, Fraction]) -> "NormalForm":
        return cls(tuple((m, Fraction(c)) for m, c in terms.items() if c))

    def __len__(self) -> int:
        return len(self.entries)

    def __bool__(self) -> bool:
        return bool(self.entries)

    def terms(self) -> Dict[BasisMonomial, Fraction]:
        return dict(self.entries)

    def coefficient(self, m: BasisMonomial) -> Fraction:
        return self.terms().get(m, Fraction(0))

    def to_element(self) -> AlgebraElement:
        return AlgebraElement({m.word(): c for m, c in self.entries})

    def render(self) -> str:
        from .parsing import render_element

        return render_element(self.to_element())

    def __str__(self) -> str:
        return self.render()
