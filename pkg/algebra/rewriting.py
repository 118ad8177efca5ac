# algebra/rewriting.py
"""
Normal forms of algebra elements, by two independent routes.

Syntactic: each word is rewritten by relation steps. Adjacent res_q ind_q pairs are central
and come out as factors x_q; the remaining letters are reordered under the total-nadir
condition until every single-prime block collapses onto the basis template B of the class.
Relation

    (res_q ind_q - q) / (q - 1) == (x - p1) / (p1 - 1)

moves each x_q into the ring Q[x] / ((x - 1)(x - p1)), x = res_{p1} ind_{p1}, where
x^2 = (p1 + 1) x - p1. Templates that carry an extra res_s ind_s pair (tag IV) need
x_s^-1 = ((s + 1) - x_s) / s.

Semantic: coefficients of the two candidates B and x * B are solved exactly from the actions
on the nadir window of the class, then certified on the whole test family.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import prod
from typing import Dict, List, Optional, Tuple

from engine.models import FamilyConfig
from engine.words import Word, WordSymbol, ind, prime_subword, reorder_compatible, res

from .basis import BasisMonomial, ClassKey, NormalForm, NormalFormError, candidate_basis, class_key
from .elements import AlgebraElement
from .family import FamilyConfigError, action_column, check_primes, equals_on_family, nadir_window
from .linalg import InconsistentSystem, SingularSystem, solve_columns


logger = logging.getLogger(__name__)


def _require_odd(cfg: FamilyConfig) -> None:
    if not cfg.odd_primes_only:
        raise FamilyConfigError("normal forms need odd primes; res_2 ind_2 satisfies no quadratic relation.")


# ----------------------------
# Central ring Q[x] / ((x - 1)(x - p1))
# ----------------------------

@dataclass(frozen=True)
class CentralPoly:
    """a * x + b with x = res_{p1} ind_{p1}, reduced by x^2 = (p1 + 1) x - p1."""
    p1: int
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    @classmethod
    def one(cls, p1: int) -> "CentralPoly":
        return cls(p1, Fraction(0), Fraction(1))

    @classmethod
    def x(cls, p1: int) -> "CentralPoly":
        return cls(p1, Fraction(1), Fraction(0))

    @classmethod
    def pair(cls, p1: int, q: int) -> "CentralPoly":
        """x_q = res_q ind_q = (q - 1)/(p1 - 1) * (x - p1) + q."""
        s = Fraction(q - 1, p1 - 1)
        return cls(p1, s, q - s * p1)

    @classmethod
    def pair_inverse(cls, p1: int, q: int) -> "CentralPoly":
        xq = cls.pair(p1, q)
        return cls(p1, -xq.a / q, (q + 1 - xq.b) / q)

    def __add__(self, other: "CentralPoly") -> "CentralPoly":
        return CentralPoly(self.p1, self.a + other.a, self.b + other.b)

    def __mul__(self, other: "CentralPoly") -> "CentralPoly":
        a2 = self.a * other.a
        linear = self.a * other.b + self.b * other.a
        return CentralPoly(self.p1, linear + a2 * (self.p1 + 1), self.b * other.b - a2 * self.p1)

    def __pow__(self, exponent: int) -> "CentralPoly":
        out = CentralPoly.one(self.p1)
        for _ in range(exponent):
            out = out * self
        return out

    def evaluate(self, x: Fraction | int) -> Fraction:
        return self.a * x + self.b


def central_polynomial_ring(p1: int, deltas: Dict[int, int]) -> CentralPoly:
    """prod_q x_q^delta_q in Q[x] / ((x - 1)(x - p1))."""
    out = CentralPoly.one(p1)
    for q, delta in sorted(deltas.items()):
        if delta > 0:
            out = out * CentralPoly.pair(p1, q) ** delta
        elif delta < 0:
            out = out * CentralPoly.pair_inverse(p1, q) ** (-delta)
    return out


# ----------------------------
# Syntactic route
# ----------------------------

def pair_deltas(w: Word, template: Word, primes: Tuple[int, ...]) -> Dict[int, int]:
    return {q: w.count("ind", q) - template.count("ind", q) for q in primes}


def t_quotient_coefficients(w: Word, cfg: FamilyConfig) -> Tuple[BasisMonomial, Fraction, Fraction]:
    """(B, lambda_1, lambda_2) with w == lambda_1 B in T^1 and w == lambda_2 B in T^2."""
    _require_odd(cfg)
    base = _template_of(w, cfg)
    deltas = pair_deltas(w, base.word(), cfg.primes)
    lam1 = Fraction(prod(Fraction(q) ** dq for q, dq in deltas.items()))
    return base, lam1, Fraction(1)


def _template_of(w: Word, cfg: FamilyConfig) -> BasisMonomial:
    e, d, flag = class_key(w, cfg)
    candidates = candidate_basis(e, d, flag, cfg.regime, cfg.primes)
    if not candidates:
        raise NormalFormError(f"no basis template for {w} (e={e}, d={d}, total nadir={flag}).")
    return candidates[0]


def strip_central_pairs(w: Word) -> Tuple[Word, Counter]:
    """Pull every adjacent res_q ind_q out of w as a central factor x_q, until none is left."""
    kept: List[WordSymbol] = []
    pulled: Counter = Counter()
    for sym in w.symbols:
        if sym.kind == "ind" and kept and kept[-1] == res(sym.p):
            kept.pop()
            pulled[sym.p] += 1
        else:
            kept.append(sym)
    return Word(tuple(kept)), pulled


def _reorder_allowed(before: Word, after: Word, cfg: FamilyConfig) -> bool:
    if cfg.regime == "NoFullSupport":
        return all(prime_subword(before, q) == prime_subword(after, q) for q in cfg.primes)
    return reorder_compatible(before, after, cfg.primes)


def _runs(w: Word) -> List[Tuple[WordSymbol, int]]:
    runs: List[Tuple[WordSymbol, int]] = []
    for sym in w.symbols:
        if runs and runs[-1][0] == sym:
            runs[-1] = (sym, runs[-1][1] + 1)
        else:
            runs.append((sym, 1))
    return runs


Placement = Dict[int, Tuple[WordSymbol, ...]]


def _placements(letters: Tuple[WordSymbol, ...], q: int, runs: List[Tuple[WordSymbol, int]]) -> List[Placement]:
    """
    Ways to lay the q-letters over the q-runs of the target so that each piece collapses onto its run.

    Slot 0 is in front of the target and slot len(runs) + 1 behind it; a prime without runs
    must collapse to nothing and goes to either end.
    """
    slots = [i + 1 for i, (sym, _) in enumerate(runs) if sym.p == q]

    def collapses(part: Tuple[WordSymbol, ...], slot: int) -> bool:
        sym, exponent = runs[slot - 1]
        return strip_central_pairs(Word(part))[0] == Word((sym,) * exponent)

    if not slots:
        if len(strip_central_pairs(Word(letters))[0]):
            return []
        return [{0: letters}, {len(runs) + 1: letters}]
    if len(slots) == 1:
        return [{slots[0]: letters}] if collapses(letters, slots[0]) else []
    if len(slots) > 2:
        return []
    first, second = slots
    return [
        {first: letters[:m], second: letters[m:]}
        for m in range(len(letters) + 1)
        if collapses(letters[:m], first) and collapses(letters[m:], second)
    ]


def _arrange(residual: Word, target: Word, cfg: FamilyConfig) -> Optional[Word]:
    """A reordering of `residual` allowed by the nadir condition whose pairs collapse onto `target`."""
    runs = _runs(target)
    options = [
        _placements(prime_subword(residual, q).symbols, q, runs)
        for q in cfg.primes
        if prime_subword(residual, q)
    ]
    for choice in product(*options):
        slots: Dict[int, List[WordSymbol]] = {}
        for placement in choice:
            for slot, part in placement.items():
                slots.setdefault(slot, []).extend(part)
        arranged = Word(tuple(sym for slot in sorted(slots) for sym in slots[slot]))
        if _reorder_allowed(residual, arranged, cfg) and strip_central_pairs(arranged)[0] == target:
            return arranged
    return None


def _outer_prime(residual: Word, base: BasisMonomial, cfg: FamilyConfig) -> int:
    """Prime q of the res_q ... ind_q shell a tag IV residue collapses to; the template's own s if present."""
    i = next(q for q, kq in zip(base.primes, base.k) if kq)
    s = base.template().symbols[0].p
    others = [q for q in cfg.primes if q != i and prime_subword(residual, q)]
    return s if s in others or not others else others[0]


def rewrite_word(w: Word, cfg: FamilyConfig) -> Dict[BasisMonomial, Fraction]:
    """
    Rewrite one word as f * B by relation steps.

    Adjacent res_q ind_q pairs are central and come out as x_q. What is left is reordered,
    keeping every prime's subword and the total-nadir status, so that each prime's letters
    sit on that prime's runs of the template; a second pass collapses those blocks to
    ind_q^l res_q^k. A tag IV residue res_q X ind_q with q != s is moved onto the template by
    x_s * res_q X ind_q == x_q * res_s X ind_s.
    """
    base = _template_of(w, cfg)
    template = base.template()
    residual, pulled = strip_central_pairs(w)
    target = template
    s = outer = 0
    if base.tag == "IV":
        s = template.symbols[0].p
        outer = _outer_prime(residual, base, cfg)
        target = Word((res(outer),) + template.symbols[1:-1] + (ind(outer),))

    arranged = _arrange(residual, target, cfg)
    if arranged is None:
        raise NormalFormError(f"no admissible reordering of {w} collapses onto {target}.")
    collapsed, more = strip_central_pairs(arranged)
    pulled.update(more)

    if outer != s:
        before = Word.of(res(s), ind(s)) * collapsed
        after = Word.of(res(outer), ind(outer)) * template
        if not _reorder_allowed(before, after, cfg):
            raise NormalFormError(f"cannot move the shell of {collapsed} from {outer} to {s}.")
        pulled[outer] += 1
        pulled[s] -= 1
        collapsed = strip_central_pairs(after)[0]

    if collapsed != template:
        raise NormalFormError(f"{w} rewrites to {collapsed}, not to the template {template} of its class.")
    p1 = cfg.smallest_prime
    f = central_polynomial_ring(p1, dict(pulled))
    _, lam1, _ = t_quotient_coefficients(w, cfg)
    if f.evaluate(p1) != lam1:
        raise NormalFormError(f"pulled pairs of {w} give {f.evaluate(p1)} in T^1, letter counts give {lam1}.")
    logger.debug("%s == (%s x + %s) * %s via %s", w, f.a, f.b, template, arranged)
    return {base: f.b, base.with_t(1): f.a}


def rewrite_syntactic(z: AlgebraElement, cfg: FamilyConfig) -> NormalForm:
    check_primes(z, cfg)
    _require_odd(cfg)
    acc: Dict[BasisMonomial, Fraction] = {}
    for w, c in z.terms.items():
        for m, coeff in rewrite_word(w, cfg).items():
            acc[m] = acc.get(m, Fraction(0)) + c * coeff
    return NormalForm.from_terms(acc)


# ----------------------------
# Semantic route
# ----------------------------

def _group_by_class(z: AlgebraElement, cfg: FamilyConfig) -> Dict[ClassKey, AlgebraElement]:
    groups: Dict[ClassKey, Dict[Word, Fraction]] = {}
    for w, c in z.terms.items():
        groups.setdefault(class_key(w, cfg), {})[w] = c
    return {key: AlgebraElement(terms) for key, terms in groups.items()}


def _solve_class(key: ClassKey, part: AlgebraElement, cfg: FamilyConfig) -> Dict[BasisMonomial, Fraction]:
    e, d, flag = key
    candidates = candidate_basis(e, d, flag, cfg.regime, cfg.primes)
    if not candidates:
        raise NormalFormError(f"no basis template for class e={e}, d={d}, total nadir={flag}.")
    window = nadir_window(d, cfg)
    columns = [action_column(m.element(), window) for m in candidates]
    rhs = action_column(part, window)
    try:
        solution = solve_columns(columns, rhs)
    except (InconsistentSystem, SingularSystem) as err:
        raise NormalFormError(f"class e={e}, d={d}: {err}") from err
    return dict(zip(candidates, solution))


def normal_form_semantic(z: AlgebraElement, cfg: FamilyConfig, certify: bool = False) -> NormalForm:
    """
    Solve for the coefficients of each termini/nadir class on its nadir window.

    With `certify`, the result is also compared with z on T(cfg, D).
    """
    check_primes(z, cfg)
    _require_odd(cfg)
    acc: Dict[BasisMonomial, Fraction] = {}
    groups = _group_by_class(z, cfg)
    logger.debug("solving %d termini/nadir classes of %s", len(groups), z)
    for key, part in sorted(groups.items()):
        for m, c in _solve_class(key, part, cfg).items():
            acc[m] = acc.get(m, Fraction(0)) + c
    nf = NormalForm.from_terms(acc)
    if certify and not equals_on_family(nf.to_element(), z, cfg):
        raise NormalFormError(f"semantic normal form of {z} does not reproduce its action.")
    return nf


def normal_form(z: AlgebraElement, cfg: FamilyConfig, method: str = "syntactic") -> NormalForm:
    """
    Dispatch on `method`; `both` computes the two routes and insists they agree.

    Semantic results are certified on the whole test family, not only on their nadir windows.
    """
    if method == "syntactic":
        return rewrite_syntactic(z, cfg)
    if method == "semantic":
        return normal_form_semantic(z, cfg, certify=True)
    if method == "both":
        syntactic = rewrite_syntactic(z, cfg)
        semantic = normal_form_semantic(z, cfg, certify=True)
        if syntactic != semantic:
            raise NormalFormError(f"routes disagree on {z}: syntactic {syntactic} vs semantic {semantic}.")
        return syntactic
    raise ValueError(f"unknown normal-form method '{method}'.")


def to_element(nf: NormalForm) -> AlgebraElement:
    return nf.to_element()


def disagreement(z: AlgebraElement, cfg: FamilyConfig) -> Optional[Tuple[NormalForm, NormalForm]]:
    syntactic, semantic = rewrite_syntactic(z, cfg), normal_form_semantic(z, cfg)
    return None if syntactic == semantic else (syntactic, semantic)

