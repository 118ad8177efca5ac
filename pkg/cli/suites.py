# cli/suites.py
"""
Verification suites behind `verify <suite>`. Each suite returns CheckResult records;
a failing record carries a rendered counterexample.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from algebra.basis import enumerate_basis
from algebra.elements import AlgebraElement
from algebra.family import Counterexample, family_test_set, first_difference
from algebra.rewriting import disagreement
from algebra.structure import (
    bicyclic_coords,
    bicyclic_multiply,
    bicyclic_reduce,
    decompose_T,
    elements_rank,
    idempotents,
    independence_check,
    project_T,
    verify_p2_relations,
)
from config.settings import settings
from engine.branching import apply_word, enumerate_simples, induce, restrict
from engine.characters import OracleError, oracle_induce_level, oracle_restrict_level, orthogonality_defect
from engine.models import FamilyConfig, GrothVector, OneDim, TwoDim
from engine.translation import TranslationDomainError, phi_translate, psi_translate, tower_address
from engine.words import (
    Word,
    annihilates_lemma,
    annihilation_table,
    enumerate_words,
    ind,
    prime_subword,
    profile,
    res,
)

from .diagram import build_diagram, component_count


logger = logging.getLogger(__name__)

ORACLE_PRIMES: Tuple[int, ...] = (2, 3, 5, 7, 11)


@dataclass
class CheckResult:
    suite: str
    name: str
    passed: bool
    checked: int = 0
    detail: Optional[str] = None
    counterexample: Optional[str] = None


def _from_difference(suite: str, name: str, found: Optional[Counterexample], checked: int) -> CheckResult:
    return CheckResult(suite, name, found is None, checked, counterexample=found.render() if found else None)


def _rng() -> random.Random:
    return random.Random(settings.sample_seed)


def random_word(rng: random.Random, primes: Sequence[int], max_length: int) -> Word:
    alphabet = [sym for p in primes for sym in (res(p), ind(p))]
    return Word(tuple(rng.choice(alphabet) for _ in range(rng.randint(0, max_length))))


def random_element(rng: random.Random, primes: Sequence[int], max_length: int, terms: int = 3) -> AlgebraElement:
    z = AlgebraElement.zero()
    for _ in range(terms):
        z = z + AlgebraElement.word(random_word(rng, primes, max_length), rng.randint(-3, 3))
    return z


# ----------------------------
# Bundled secondary configurations
# ----------------------------

def no_full_support(cfg: FamilyConfig) -> FamilyConfig:
    """Same primes, a single seed m > 1 coprime to them."""
    m = next(m for m in range(3, 10_000, 2) if all(gcd(m, p) == 1 for p in cfg.primes))
    return FamilyConfig(primes=cfg.primes, seeds=(m,), parity_mode=cfg.parity_mode)


def even_family() -> FamilyConfig:
    return FamilyConfig(primes=(2, 3), seeds=(1,), parity_mode="all")


def diagram_family() -> FamilyConfig:
    return FamilyConfig(primes=(3,), seeds=(5,))


# ----------------------------
# Suites
# ----------------------------

def suite_oracle(cfg: FamilyConfig, depth: int, n_max: Optional[int] = None) -> List[CheckResult]:
    n_max = settings.oracle_n_max if n_max is None else n_max
    out: List[CheckResult] = []
    worst = max(orthogonality_defect(n) for n in range(3, n_max + 1))
    out.append(CheckResult("oracle", "orthogonality", worst < 1e-9, n_max - 2, detail=f"max defect {worst:.2e}"))
    for p in ORACLE_PRIMES:
        checked, bad = 0, None
        try:
            for n in range(3, n_max + 1):
                induced = oracle_induce_level(p, n)
                restricted = oracle_restrict_level(p, n)
                for module in enumerate_simples(n):
                    checked += 2
                    if induced[module] != induce(p, module):
                        bad = f"ind{p} {module}: oracle {induced[module]!r}"
                    elif restricted[module] != restrict(p, module):
                        bad = f"res{p} {module}: oracle {restricted[module]!r}"
                    if bad:
                        break
                if bad:
                    break
        except OracleError as e:
            bad = str(e)
        out.append(CheckResult("oracle", f"p={p}", bad is None, checked, counterexample=bad))
    return out


def suite_relations(cfg: FamilyConfig, depth: int) -> List[CheckResult]:
    modules = family_test_set(cfg, depth)
    out: List[CheckResult] = []
    R, I = AlgebraElement.res, AlgebraElement.ind
    for p, q in combinations(cfg.primes, 2):
        out.append(_from_difference("relations", f"res{p} res{q} = res{q} res{p}", first_difference(R(p) * R(q), R(q) * R(p), cfg, modules=modules), len(modules)))
        out.append(_from_difference("relations", f"ind{p} ind{q} = ind{q} ind{p}", first_difference(I(p) * I(q), I(q) * I(p), cfg, modules=modules), len(modules)))
        for a, b in ((p, q), (q, p)):
            domain = [m for m in modules if restrict(a, m)]
            out.append(_from_difference("relations", f"res{a} ind{b} = ind{b} res{a} where res{a} L != 0", first_difference(R(a) * I(b), I(b) * R(a), cfg, modules=domain), len(domain)))
        xp, xq = R(p) * I(p), R(q) * I(q)
        out.append(_from_difference("relations", f"mixed relation {p},{q}", first_difference((xp - p) / (p - 1), (xq - q) / (q - 1), cfg, modules=modules), len(modules)))
    for p in cfg.primes:
        x = R(p) * I(p)
        out.append(_from_difference("relations", f"res{p}^2 ind{p}^2 = {p + 1} res{p} ind{p} - {p}", first_difference(R(p) * x * I(p), (p + 1) * x - p, cfg, modules=modules), len(modules)))
    return out


def suite_reorder(cfg: FamilyConfig, depth: int, max_length: Optional[int] = None) -> List[CheckResult]:
    max_length = settings.agreement_word_length if max_length is None else max_length
    modules = family_test_set(cfg, depth)
    groups: Dict[Tuple[Tuple[Word, ...], bool], List[Word]] = {}
    for w in enumerate_words(cfg.primes, max_length):
        key = (tuple(prime_subword(w, p) for p in cfg.primes), profile(w, cfg.primes).total_nadir)
        groups.setdefault(key, []).append(w)
    pairs, found = 0, None
    for words in groups.values():
        head = AlgebraElement.word(words[0])
        for w in words[1:]:
            pairs += 1
            found = first_difference(head, AlgebraElement.word(w), cfg, modules=modules)
            if found:
                break
        if found:
            break
    return [_from_difference("reorder", f"reordering invariance, words <= {max_length}", found, pairs)]


def suite_basis(cfg: FamilyConfig, depth: int, bound: Optional[int] = None) -> List[CheckResult]:
    bound = settings.basis_exponent_bound if bound is None else bound
    out: List[CheckResult] = []
    for label, family in (("full support", cfg), ("no full support", no_full_support(cfg))):
        monomials = enumerate_basis(family, bound)
        ok = independence_check(monomials, family)
        out.append(CheckResult("basis", f"independence, {label}, exponents <= {bound}", ok, len(monomials)))
    rng = _rng()
    x = AlgebraElement.res(cfg.smallest_prime) * AlgebraElement.ind(cfg.smallest_prime)
    failed = None
    for _ in range(20):
        z = AlgebraElement.word(random_word(rng, cfg.primes, 4))
        if not elements_rank([z, x * z], cfg).full_column_rank:
            failed = str(z)
            break
    out.append(CheckResult("basis", "{z, res_p1 ind_p1 z} independent", failed is None, 20, counterexample=failed))
    return out


def suite_idempotents(cfg: FamilyConfig, depth: int, samples: int = 50) -> List[CheckResult]:
    out: List[CheckResult] = []
    modules = family_test_set(cfg, depth)
    for q in cfg.primes:
        e1, e2 = idempotents(q)
        out.append(CheckResult("idempotents", f"eps1 + eps2 = 1 (q={q})", e1 + e2 == 1, 1))
        for name, lhs, rhs in (
            ("eps1^2 = eps1", e1 * e1, e1),
            ("eps2^2 = eps2", e2 * e2, e2),
            ("eps1 eps2 = 0", e1 * e2, AlgebraElement.zero()),
        ):
            out.append(_from_difference("idempotents", f"{name} (q={q})", first_difference(lhs, rhs, cfg, modules=modules), len(modules)))
    rng = _rng()
    found, text = None, None
    for _ in range(samples):
        z = random_element(rng, cfg.primes, 4)
        found = first_difference(decompose_T(z, cfg).recombined, z, cfg, modules=modules)
        if found:
            text = f"{z}: {found.render()}"
            break
    out.append(CheckResult("idempotents", "z = lift(pi1) eps1 + lift(pi2) eps2", found is None, samples, counterexample=text))
    return out


def suite_center(cfg: FamilyConfig, depth: int) -> List[CheckResult]:
    out: List[CheckResult] = []
    modules = family_test_set(cfg, depth)
    for q in cfg.primes:
        x = AlgebraElement.res(q) * AlgebraElement.ind(q)
        for p in cfg.primes:
            for g in (AlgebraElement.res(p), AlgebraElement.ind(p)):
                found = first_difference(x * g, g * x, cfg, modules=modules)
                out.append(_from_difference("center", f"res{q} ind{q} commutes with {g}", found, len(modules)))
    witness = verify_p2_relations(even_family(), n_max=48).centrality_witness
    out.append(
        CheckResult(
            "center",
            "res2 ind2 is not central (witness)",
            witness is not None,
            1,
            detail=f"res2 ind2 res2 vs res2 res2 ind2 {witness.render()}" if witness else None,
        )
    )
    return out


def suite_p2(cfg: FamilyConfig, depth: int, n_max: Optional[int] = None) -> List[CheckResult]:
    report = verify_p2_relations(even_family(), n_max)
    out = [
        CheckResult(
            "p2",
            check.name,
            check.passed,
            check.modules_checked,
            detail=f"{check.lhs} = {check.rhs}",
            counterexample=check.failures[0].render() if check.failures else None,
        )
        for check in report.identities
    ]
    iv = report.relation_iv_witness
    out.append(CheckResult("p2", "res2^2 ind2^2 != 3 res2 ind2 - 2 (witness)", iv is not None, 1, detail=iv.render() if iv else None))
    rel = report.minimal_relation
    out.append(
        CheckResult(
            "p2",
            "minimal relation of res2^2 ind2^2",
            rel is not None and len(rel) <= 4,
            1,
            detail=None if rel is None else f"degree {len(rel)}, coefficients {[str(c) for c in rel]}",
        )
    )
    return out


def suite_bicyclic(cfg: FamilyConfig, depth: int, samples: int = 100) -> List[CheckResult]:
    family = no_full_support(cfg)
    rng = _rng()
    out: List[CheckResult] = []
    for p in family.primes:
        x = AlgebraElement.res(p) * AlgebraElement.ind(p)
        nf = project_T(x, 2, p, family)
        ok = len(nf) == 1 and nf.entries[0][0].word() == Word() and nf.entries[0][1] == 1
        out.append(CheckResult("bicyclic", f"res{p} ind{p} = 1 in T^2", ok, 1, counterexample=None if ok else str(nf)))
    failed = None
    for _ in range(samples):
        w1, w2 = random_word(rng, family.primes, 4), random_word(rng, family.primes, 4)
        expected = {bicyclic_multiply(bicyclic_reduce(w1, family.primes), bicyclic_reduce(w2, family.primes)): 1}
        got = bicyclic_coords(AlgebraElement.word(w1 * w2), family)
        if got != expected:
            failed = f"{w1} * {w2}: coordinates {got} vs reduction {expected}"
            break
    out.append(CheckResult("bicyclic", "products match a_p b_p = 1 reduction", failed is None, samples, counterexample=failed))
    return out


def suite_agreement(cfg: FamilyConfig, depth: int, max_length: Optional[int] = None) -> List[CheckResult]:
    max_length = settings.agreement_word_length if max_length is None else max_length
    out: List[CheckResult] = []
    for label, family in (("full support", cfg), ("no full support", no_full_support(cfg))):
        checked, failed = 0, None
        for w in enumerate_words(family.primes, max_length):
            checked += 1
            diff = disagreement(AlgebraElement.word(w), family)
            if diff:
                failed = f"{w}: syntactic {diff[0]} vs semantic {diff[1]}"
                break
        out.append(CheckResult("agreement", f"syntactic = semantic, {label}, words <= {max_length}", failed is None, checked, counterexample=failed))
    return out


def suite_annihilation(cfg: FamilyConfig, depth: int, max_length: int = 4, n_max: int = 500) -> List[CheckResult]:
    levels = [n for n in cfg.levels_up_to(n_max) if n % 2 or not cfg.odd_primes_only]
    words = list(enumerate_words(cfg.primes, max_length))
    table = annihilation_table(words, levels)
    out: List[CheckResult] = []
    for reading in ("without_factor_two", "with_factor_two"):
        mismatches = [
            (w, n) for (w, n), direct in table.items()
            if direct is None or annihilates_lemma(w, cfg.primes, n, reading) != direct
        ]
        first = f"{mismatches[0][0]} at n={mismatches[0][1]}" if mismatches else None
        if reading == "without_factor_two":
            out.append(CheckResult("annihilation", "zero criterion, n = prod p^-d_p", not mismatches, len(table), counterexample=first))
        else:
            # informational: the doubled critical level is reported, never required
            out.append(CheckResult("annihilation", "zero criterion, n = 2 prod p^-d_p (reported)", True, len(table), detail=f"{len(mismatches)} mismatches" + (f", first {first}" if first else "")))
    return out


def _phi_naturality(p: int, m: int, max_length: int, top: int) -> Tuple[int, Optional[str]]:
    checked = 0
    for j_prime in range(0, top + 1):
        n = m * p ** j_prime
        if n < 3:
            continue
        for module in enumerate_simples(n):
            start = GrothVector.of(module)
            moved = phi_translate(p, m, 1, start)
            for w in enumerate_words((p,), max_length):
                image = apply_word(w, start)
                if not image or any(t.n % m for t in image):
                    continue
                checked += 1
                try:
                    lhs = phi_translate(p, m, 1, image)
                except TranslationDomainError:
                    continue
                if lhs != apply_word(w, moved):
                    return checked, f"Phi_{{{p},{m},1}} {w} {module}"
    return checked, None


def _psi_naturality(p: int, m: int, top: int) -> Tuple[int, Optional[str]]:
    checked = 0
    for j_prime in range(1, top + 1):
        for module in enumerate_simples(m * p ** j_prime):
            if not isinstance(module, TwoDim):
                continue
            located = tower_address(p, module)
            if located.base.n != m or not located.address:
                continue
            k = located.base.k
            below = restrict(p, module).support()[0]
            moved = psi_translate(p, k, m, k, 1, module)
            checked += 1
            if restrict(p, moved) != GrothVector.of(psi_translate(p, k, m, k, 1, below)):
                return checked, f"Psi_{{{p},{k},{m},{k},1}} res{p} {module}"
    return checked, None


def suite_translation(cfg: FamilyConfig, depth: int, max_length: int = 4) -> List[CheckResult]:
    out: List[CheckResult] = []
    worked = (
        phi_translate(3, 5, 1, GrothVector.of(OneDim(15, 1, 1))) == GrothVector.of(OneDim(45, 1, 1))
        and psi_translate(3, 1, 5, 5, 1, TwoDim(15, 4)) == TwoDim(45, 10)
        and tower_address(3, TwoDim(45, 10)).address == (2,)
    )
    out.append(CheckResult("translation", "worked examples", worked, 3))
    for p in cfg.primes:
        for m in sorted({p, *cfg.seeds} - {1}):
            if m % 2 == 0 or not (m == p or m % p):
                continue
            checked, bad = _phi_naturality(p, m, max_length, top=2)
            out.append(CheckResult("translation", f"Phi naturality p={p} m={m}", bad is None, checked, counterexample=bad))
            checked, bad = _psi_naturality(p, m, top=2)
            out.append(CheckResult("translation", f"Psi naturality under res p={p} m={m}", bad is None, checked, counterexample=bad))
    return out


def suite_diagram(cfg: FamilyConfig, depth: int) -> List[CheckResult]:
    family = diagram_family()
    m = family.seeds[0]
    count = component_count(build_diagram(family, m * 9))
    expected = (m + 1) // 2
    return [CheckResult("diagram", f"components for m={m}, p=3, three levels", count == expected, 1, detail=f"{count} components, expected {expected}")]


SUITES: Dict[str, Callable[[FamilyConfig, int], List[CheckResult]]] = {
    "oracle": suite_oracle,
    "relations": suite_relations,
    "reorder": suite_reorder,
    "basis": suite_basis,
    "idempotents": suite_idempotents,
    "center": suite_center,
    "p2": suite_p2,
    "bicyclic": suite_bicyclic,
    "agreement": suite_agreement,
    "annihilation": suite_annihilation,
    "translation": suite_translation,
    "diagram": suite_diagram,
}


def run_suite(name: str, cfg: FamilyConfig, depth: int) -> List[CheckResult]:
    if name == "all":
        return [r for suite in SUITES for r in run_suite(suite, cfg, depth)]
    if name not in SUITES:
        raise ValueError(f"unknown suite '{name}'; choose from {sorted(SUITES) + ['all']}.")
    logger.info("verify %s on %s, depth %d", name, cfg.describe(), depth)
    results = SUITES[name](cfg, depth)
    logger.info("verify %s: %d checks, %d failed", name, len(results), sum(not r.passed for r in results))
    return results
