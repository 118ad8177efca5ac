# algebra/structure.py
"""Idempotents, the T^1 / T^2 quotients, bicyclic coordinates, independence and p = 2 checks."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Dict, List, Literal, Optional, Sequence, Tuple

from engine.branching import enumerate_simples, galois_representatives
from engine.models import FamilyConfig, GrothVector, SimpleModule
from engine.words import Word, parse_word, profile, termini

from .basis import BasisMonomial, NormalForm
from .elements import AlgebraElement
from .family import (
    Counterexample,
    FamilyConfigError,
    action_column,
    check_primes,
    element_action,
    equals_on_family,
    first_difference,
    nadir_window,
)
from .linalg import InconsistentSystem, RankReport, SingularSystem, column_rank, solve_columns
from .rewriting import rewrite_syntactic


logger = logging.getLogger(__name__)

Quotient = Literal[1, 2]
BicyclicKey = Tuple[Tuple[int, int], ...]


# ----------------------------
# Idempotents and quotients
# ----------------------------

def idempotents(q: int) -> Tuple[AlgebraElement, AlgebraElement]:
    """eps1 = (res_q ind_q - 1)/(q - 1), eps2 = (q - res_q ind_q)/(q - 1)."""
    x = AlgebraElement.res(q) * AlgebraElement.ind(q)
    return (x - 1) / (q - 1), (q - x) / (q - 1)


def project_T(z: AlgebraElement, which: Quotient, p: int, cfg: FamilyConfig) -> NormalForm:
    """Image of z in T^1 (res_p ind_p -> p) or T^2 (res_p ind_p -> 1), as t = 0 entries."""
    if which not in (1, 2):
        raise ValueError(f"quotient must be 1 or 2, got {which}.")
    if p not in cfg.primes:
        raise FamilyConfigError(f"{p} is not in {list(cfg.primes)}.")
    value = cfg.smallest_prime if which == 1 else 1
    acc: Dict[BasisMonomial, Fraction] = {}
    for m, c in rewrite_syntactic(z, cfg).entries:
        base = m.with_t(0)
        acc[base] = acc.get(base, Fraction(0)) + (c * value if m.t else c)
    return NormalForm.from_terms(acc)


def t1_to_t2(nf: NormalForm) -> NormalForm:
    """The isomorphism res_p -> res_p, ind_p -> p ind_p on t = 0 normal forms."""
    acc: Dict[BasisMonomial, Fraction] = {}
    for m, c in nf.entries:
        if m.t:
            raise ValueError(f"{m} carries res_p1 ind_p1; project to T^1 first.")
        w = m.word()
        acc[m] = c * prod(p ** w.count("ind", p) for p in m.primes)
    return NormalForm.from_terms(acc)


@dataclass(frozen=True)
class TDecomposition:
    pi1: NormalForm
    pi2: NormalForm
    recombined: AlgebraElement


def decompose_T(z: AlgebraElement, cfg: FamilyConfig) -> TDecomposition:
    """(pi1(z), pi2(z)) and lift(pi1) * eps1 + lift(pi2) * eps2, which acts like z."""
    p1 = cfg.smallest_prime
    eps1, eps2 = idempotents(p1)
    pi1, pi2 = project_T(z, 1, p1, cfg), project_T(z, 2, p1, cfg)
    return TDecomposition(pi1, pi2, pi1.to_element() * eps1 + pi2.to_element() * eps2)


# ----------------------------
# Bicyclic structure of T^2 without full support
# ----------------------------

def bicyclic_reduce(w: Word, primes: Sequence[int]) -> BicyclicKey:
    """Reduce res_p -> a_p, ind_p -> b_p with a_p b_p = 1 to prod b_p^l a_p^k; key is (k_p, l_p)."""
    state = {p: [0, 0] for p in primes}
    for sym in w.symbols:
        k_l = state[sym.p]
        if sym.kind == "res":
            k_l[0] += 1
        elif k_l[0]:
            k_l[0] -= 1
        else:
            k_l[1] += 1
    return tuple((state[p][0], state[p][1]) for p in primes)


def bicyclic_multiply(left: BicyclicKey, right: BicyclicKey) -> BicyclicKey:
    out = []
    for (k1, l1), (k2, l2) in zip(left, right):
        cancel = min(k1, l2)
        out.append((k1 + k2 - cancel, l1 + l2 - cancel))
    return tuple(out)


def bicyclic_word(key: BicyclicKey, primes: Sequence[int]) -> Word:
    text = "*".join(
        [f"ind{p}^{l}" for p, (_, l) in zip(primes, key) if l]
        + [f"res{p}^{k}" for p, (k, _) in zip(primes, key) if k]
    )
    return parse_word(text or "1")


def bicyclic_coords(z: AlgebraElement, cfg: FamilyConfig) -> Dict[BicyclicKey, Fraction]:
    if cfg.regime != "NoFullSupport":
        raise FamilyConfigError("bicyclic coordinates need a family without full support (1 not a seed).")
    coords: Dict[BicyclicKey, Fraction] = {}
    for m, c in project_T(z, 2, cfg.smallest_prime, cfg).entries:
        key = tuple(zip(m.k, m.l))
        coords[key] = coords.get(key, Fraction(0)) + c
    return {k: c for k, c in coords.items() if c}


# ----------------------------
# Commutators and independence
# ----------------------------

def commutator_is_zero(
    z: AlgebraElement,
    w: AlgebraElement,
    cfg: FamilyConfig,
    depth: Optional[int] = None,
) -> bool:
    return equals_on_family(z * w, w * z, cfg, depth)


def _default_modules(elements: Sequence[AlgebraElement], cfg: FamilyConfig) -> List[SimpleModule]:
    """Union of the nadir windows of every word involved."""
    seen: Dict[SimpleModule, None] = {}
    for z in elements:
        for w in z.words():
            for module in nadir_window(profile(w, cfg.primes).nadirs, cfg):
                seen.setdefault(module, None)
    return list(seen)


def _terminus_blocks(elements: Sequence[AlgebraElement], cfg: FamilyConfig) -> List[List[AlgebraElement]]:
    """Elements homogeneous in termini act between disjoint level pairs, so their blocks rank separately."""
    blocks: Dict[Tuple[int, ...], List[AlgebraElement]] = {}
    for z in elements:
        ts = {termini(w, cfg.primes) for w in z.words()}
        if len(ts) != 1:
            return [list(elements)]
        blocks.setdefault(ts.pop(), []).append(z)
    return list(blocks.values())


def elements_rank(
    elements: Sequence[AlgebraElement],
    cfg: FamilyConfig,
    modules: Optional[Sequence[SimpleModule]] = None,
) -> RankReport:
    """Exact rank of the action matrix (rows (source, target), one column per element)."""
    for z in elements:
        check_primes(z, cfg)
    rank = cross = 0
    for block in _terminus_blocks(elements, cfg):
        rows = modules if modules is not None else _default_modules(block, cfg)
        report = column_rank([action_column(z, rows) for z in block])
        rank += report.rank
        cross += report.cross_check_rank
    return RankReport(rank, len(elements), cross)


def independence_check(
    monomials: Sequence[BasisMonomial],
    cfg: FamilyConfig,
    modules: Optional[Sequence[SimpleModule]] = None,
) -> bool:
    """
    Full column rank of the monomials' action matrix.

    Rows default to the nadir windows of the monomials, a subset of T(cfg, D); full rank
    on a subset of rows implies full rank on all of them.
    """
    NormalForm(tuple((m, Fraction(1)) for m in monomials))
    report = elements_rank([m.element() for m in monomials], cfg, modules)
    logger.info("independence: rank %d of %d columns (cross-check %d)", report.rank, report.columns, report.cross_check_rank)
    return report.full_column_rank


# ----------------------------
# p = 2
# ----------------------------

def _p2_element(text: str) -> AlgebraElement:
    from .parsing import parse_element

    return parse_element(text)


P2_IDENTITIES: Tuple[Tuple[str, str, str], ...] = (
    ("cubic", "res2^3*ind2^3", "3*res2^2*ind2^2 - 2*res2*ind2"),
    ("ind-res-ind", "ind2*res2*ind2", "2*ind2"),
    ("res-ind-res", "res2*ind2*res2", "2*res2"),
    (
        "quartic",
        "res2^2*ind2^2*res2^2*ind2^2*res2^2*ind2^2*res2^2*ind2^2",
        "6*res2^2*ind2^2*res2^2*ind2^2*res2^2*ind2^2 - 8*res2^2*ind2^2*res2^2*ind2^2",
    ),
)


@dataclass
class IdentityCheck:
    name: str
    lhs: AlgebraElement
    rhs: AlgebraElement
    modules_checked: int = 0
    failures: List[Counterexample] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass
class P2Report:
    identities: List[IdentityCheck]
    relation_iv_witness: Optional[Counterexample]
    centrality_witness: Optional[Counterexample]
    minimal_relation: Optional[List[Fraction]]

    @property
    def passed(self) -> bool:
        return (
            all(c.passed for c in self.identities)
            and self.relation_iv_witness is not None
            and self.centrality_witness is not None
        )


def _check_identity(name: str, lhs: AlgebraElement, rhs: AlgebraElement, modules: Sequence[SimpleModule]) -> IdentityCheck:
    check = IdentityCheck(name, lhs, rhs)
    diff = lhs - rhs
    for module in modules:
        check.modules_checked += 1
        if element_action(diff, module):
            check.failures.append(
                Counterexample(module, GrothVector(element_action(lhs, module)), GrothVector(element_action(rhs, module)))
            )
    return check


def minimal_relation(y: AlgebraElement, modules: Sequence[SimpleModule], max_degree: int = 6) -> Optional[List[Fraction]]:
    """Coefficients c with y^d == sum_i c_i y^i (i < d) for the least such d, or None."""
    powers = [AlgebraElement.scalar(1)]
    for _ in range(max_degree):
        powers.append(powers[-1] * y)
    columns = [action_column(z, modules) for z in powers]
    for d in range(1, max_degree + 1):
        try:
            return solve_columns(columns[:d], columns[d])
        except (InconsistentSystem, SingularSystem):
            continue
    return None


def verify_p2_relations(cfg: FamilyConfig, n_max: Optional[int] = None) -> P2Report:
    """
    The p = 2 identities on every simple at even levels n <= n_max, plus the two witnesses
    that res_2 ind_2 obeys neither the odd-prime quadratic relation nor centrality.
    """
    from config.settings import settings

    if 2 not in cfg.primes:
        raise FamilyConfigError("p = 2 relations need 2 in the prime set.")
    n_max = settings.p2_n_max if n_max is None else n_max
    levels = cfg.levels_up_to(n_max)
    even = [m for n in levels if n % 2 == 0 for m in enumerate_simples(n)]
    identities = [
        _check_identity(name, _p2_element(lhs), _p2_element(rhs), even) for name, lhs, rhs in P2_IDENTITIES
    ]
    every = [m for n in levels for m in galois_representatives(n)]
    x2 = _p2_element("res2*ind2")
    relation_iv = first_difference(_p2_element("res2^2*ind2^2"), 3 * x2 - 2, cfg, modules=every)
    centrality = first_difference(x2 * AlgebraElement.res(2), AlgebraElement.res(2) * x2, cfg, modules=every)
    quartic_base = [m for n in levels if n % 2 == 0 for m in galois_representatives(n)]
    relation = minimal_relation(_p2_element("res2^2*ind2^2"), quartic_base)
    for check in identities:
        logger.info("p=2 %s: %d modules, %d failures", check.name, check.modules_checked, len(check.failures))
    return P2Report(identities, relation_iv, centrality, relation)
