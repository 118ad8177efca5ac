# algebra/family.py
"""
Finite test sets for a module family and equality of algebra elements by their actions.

T(cfg, D) holds every level m * prod(p^e_p) with 0 <= e_p <= D + 1 and, per level, one
simple from each Galois orbit (see engine.branching.galois_representatives).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import prod
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from engine.branching import apply_word_to_simple, enumerate_simples, galois_representatives
from engine.models import FamilyConfig, GrothVector, SimpleModule
from engine.words import Word

from .elements import AlgebraElement


logger = logging.getLogger(__name__)

ActionKey = Tuple[SimpleModule, SimpleModule]
ActionColumn = Dict[ActionKey, Fraction]


class FamilyConfigError(ValueError):
    """An element or request does not fit the family configuration."""


def check_primes(z: AlgebraElement, cfg: FamilyConfig) -> None:
    foreign = [p for p in z.primes() if p not in cfg.primes]
    if foreign:
        raise FamilyConfigError(f"{z} uses primes {foreign} outside {list(cfg.primes)}.")


# ----------------------------
# Test sets
# ----------------------------

def _modules_at(levels: Iterable[int], orbit_reduction: bool) -> List[SimpleModule]:
    pick = galois_representatives if orbit_reduction else enumerate_simples
    return [m for n in levels for m in pick(n)]


def family_test_set(cfg: FamilyConfig, depth: int, orbit_reduction: bool = True) -> List[SimpleModule]:
    """T(cfg, depth): simples at every level with exponents capped at depth + 1."""
    modules = _modules_at(cfg.levels(depth + 1), orbit_reduction)
    logger.debug("T(%s, %d) has %d modules", cfg.describe(), depth, len(modules))
    return modules


def nadir_window_levels(d: Sequence[int], cfg: FamilyConfig) -> List[int]:
    """Levels m * prod(p^x_p) with x_p in {-d_p, -d_p + 1}, n >= 3."""
    choices = [(-dp, -dp + 1) for dp in d]
    found = set()
    for m in cfg.seeds:
        for xs in product(*choices):
            n = m * prod(p ** x for p, x in zip(cfg.primes, xs))
            if n >= 3:
                found.add(n)
    return sorted(found)


def nadir_window(d: Sequence[int], cfg: FamilyConfig) -> List[SimpleModule]:
    return _modules_at(nadir_window_levels(d, cfg), orbit_reduction=True)


# ----------------------------
# Actions
# ----------------------------

@lru_cache(maxsize=1 << 18)
def word_action(w: Word, module: SimpleModule) -> Tuple[Tuple[SimpleModule, int], ...]:
    return tuple(apply_word_to_simple(w, module).items())


def element_action(z: AlgebraElement, module: SimpleModule) -> Dict[SimpleModule, Fraction]:
    acc: Dict[SimpleModule, Fraction] = {}
    for w, c in z.terms.items():
        for target, mult in word_action(w, module):
            acc[target] = acc.get(target, Fraction(0)) + c * mult
    return {m: c for m, c in acc.items() if c}


def action_column(z: AlgebraElement, modules: Iterable[SimpleModule]) -> ActionColumn:
    """Sparse column of the action matrix: (source, target) -> multiplicity."""
    column: ActionColumn = {}
    for source in modules:
        for target, c in element_action(z, source).items():
            column[(source, target)] = c
    return column


# ----------------------------
# Equality on the family
# ----------------------------

@dataclass(frozen=True)
class Counterexample:
    module: SimpleModule
    lhs: GrothVector
    rhs: GrothVector

    def render(self) -> str:
        from .parsing import render_vector

        return f"on {self.module}: {render_vector(self.lhs)} != {render_vector(self.rhs)}"


def _resolve_modules(
    zs: Sequence[AlgebraElement],
    cfg: FamilyConfig,
    depth: Optional[int],
    modules: Optional[Sequence[SimpleModule]],
) -> Sequence[SimpleModule]:
    for z in zs:
        check_primes(z, cfg)
    if modules is not None:
        return modules
    if depth is None:
        depth = max((z.max_length() for z in zs), default=0)
    return family_test_set(cfg, depth)


def first_difference(
    z1: AlgebraElement,
    z2: AlgebraElement,
    cfg: FamilyConfig,
    depth: Optional[int] = None,
    modules: Optional[Sequence[SimpleModule]] = None,
) -> Optional[Counterexample]:
    """The first test module on which z1 and z2 act differently, or None."""
    diff = z1 - z2
    if not diff:
        return None
    for module in _resolve_modules([z1, z2], cfg, depth, modules):
        if element_action(diff, module):
            return Counterexample(
                module,
                GrothVector(element_action(z1, module)),
                GrothVector(element_action(z2, module)),
            )
    return None


def equals_on_family(
    z1: AlgebraElement,
    z2: AlgebraElement,
    cfg: FamilyConfig,
    depth: Optional[int] = None,
    modules: Optional[Sequence[SimpleModule]] = None,
) -> bool:
    """z1 M == z2 M for every M in T(cfg, D), D the longest word unless `depth` is given."""
    return first_difference(z1, z2, cfg, depth, modules) is None
