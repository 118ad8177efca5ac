# engine/translation.py
"""
Translation partial maps between levels of a p-tower: Phi shifts labels by p^J,
Psi moves a tower address from base W_k(m) to W_k'(m p^J).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from .branching import restrict_terms, canonicalize_W
from .models import GrothVector, OneDim, SimpleModule, TwoDim


class TranslationDomainError(ValueError):
    pass


def _tower_exponent(n: int, p: int, m: int) -> int | None:
    """J' with n == m * p^J', or None."""
    if n % m:
        return None
    rest = n // m
    exponent = 0
    while rest % p == 0:
        rest //= p
        exponent += 1
    return exponent if rest == 1 else None


def _check_base(p: int, m: int) -> None:
    if m % 2 == 0 or not (m == p or m % p):
        raise TranslationDomainError(f"m={m} must be odd with m == p or p not dividing m (p={p}).")


# ----------------------------
# Phi
# ----------------------------

def _phi_module(p: int, m: int, J: int, module: SimpleModule) -> GrothVector:
    if _tower_exponent(module.n, p, m) is None:
        raise TranslationDomainError(f"{module} is not at a level {m}*{p}^J'.")
    scale = p ** J
    if isinstance(module, OneDim):
        return GrothVector.of(OneDim(module.n * scale, module.a, module.b))
    return canonicalize_W(module.n * scale, module.k * scale)


def phi_translate(p: int, m: int, J: int, v: GrothVector) -> GrothVector:
    """V_{a,b}(m p^J') -> V_{a,b}(m p^(J'+J)), W_k(m p^J') -> W_{k p^J}(m p^(J'+J))."""
    if J < 0:
        raise TranslationDomainError("J must be non-negative.")
    _check_base(p, m)
    out = GrothVector.zero()
    for module, coeff in v.items():
        out = out + coeff * _phi_module(p, m, J, module)
    return out


def _phi_inverse_module(p: int, m: int, J: int, module: SimpleModule) -> SimpleModule:
    level = _tower_exponent(module.n, p, m)
    scale = p ** J
    if level is None or level < J or module.n // scale < 3:
        raise TranslationDomainError(f"{module} is not in the image of Phi_{{{p},{m},{J}}}.")
    if isinstance(module, OneDim):
        target_n = module.n // scale
        if module.a == -1 and target_n % 2:
            raise TranslationDomainError(f"{module} is not in the image of Phi_{{{p},{m},{J}}}.")
        return OneDim(target_n, module.a, module.b)
    if module.k % scale:
        raise TranslationDomainError(f"{module} is not in the image of Phi_{{{p},{m},{J}}}: {scale} does not divide {module.k}.")
    return TwoDim(module.n // scale, module.k // scale)


def phi_inverse(p: int, m: int, J: int, v: GrothVector) -> GrothVector:
    if J < 0:
        raise TranslationDomainError("J must be non-negative.")
    _check_base(p, m)
    acc: Dict[SimpleModule, Fraction] = {}
    for module, coeff in v.items():
        acc[_phi_inverse_module(p, m, J, module)] = coeff
    return GrothVector(acc)


# ----------------------------
# Tower addresses and Psi
# ----------------------------

@dataclass(frozen=True)
class TowerAddress:
    base: TwoDim
    address: Tuple[int, ...]


def k_set(p: int, module: TwoDim) -> List[int]:
    """Sorted k' with res_p W_k'(n p) == module, scanning 1 <= k' < np/2."""
    above = module.n * p
    target = ((module, 1),)
    return [k for k in range(1, (above + 1) // 2) if 2 * k < above and restrict_terms(p, TwoDim(above, k)) == target]


def _single_two_dim(p: int, module: TwoDim) -> TwoDim | None:
    terms = restrict_terms(p, module)
    if len(terms) == 1 and isinstance(terms[0][0], TwoDim):
        return terms[0][0]
    return None


def tower_address(p: int, module: SimpleModule) -> TowerAddress:
    """Restrict by p while the result stays one two-dimensional simple; record branch indices upward."""
    if not isinstance(module, TwoDim):
        raise TranslationDomainError(f"{module} is one-dimensional and has no tower address.")
    chain = [module]
    while True:
        below = _single_two_dim(p, chain[-1])
        if below is None:
            break
        chain.append(below)
    address: List[int] = []
    for lower, upper in zip(reversed(chain[1:]), reversed(chain[:-1])):
        ks = k_set(p, lower)
        # exactly one branch of the tower restricts onto lower through upper
        assert upper.k in ks, f"{upper} missing from the K-set of {lower}"
        address.append(ks.index(upper.k) + 1)
    return TowerAddress(chain[-1], tuple(address))


def climb(p: int, base: TwoDim, address: Tuple[int, ...]) -> TwoDim:
    current = base
    for j in address:
        ks = k_set(p, current)
        if not 1 <= j <= len(ks):
            raise TranslationDomainError(f"address index {j} out of range for {current} (K-set size {len(ks)}).")
        current = TwoDim(current.n * p, ks[j - 1])
    return current


def psi_translate(p: int, k: int, m: int, k_prime: int, J: int, module: SimpleModule) -> SimpleModule:
    """W_k^I(m) -> W_k'^I(m p^J)."""
    _check_base(p, m)
    if J < 0:
        raise TranslationDomainError("J must be non-negative.")
    if not 1 <= k <= (m - 1) // 2:
        raise TranslationDomainError(f"k={k} must lie in [1, (m-1)/2] for m={m}.")
    located = tower_address(p, module)
    if located.base != TwoDim(m, k):
        raise TranslationDomainError(f"{module} has base {located.base}, not W({k};{m}).")
    start = canonicalize_W(m * p ** J, k_prime)
    starts = start.support()
    if len(starts) != 1 or not isinstance(starts[0], TwoDim):
        raise TranslationDomainError(f"W({k_prime};{m * p ** J}) is not a two-dimensional simple.")
    return climb(p, starts[0], located.address)
