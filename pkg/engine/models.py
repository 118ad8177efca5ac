# engine/models.py
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import prod
from typing import Dict, Iterable, Iterator, List, Literal, Mapping, Tuple, Union

from pydantic import BaseModel, ConfigDict, field_validator, model_validator
from sympy import isprime

from config.settings import ParityMode, settings


Rational = Union[int, Fraction]
Regime = Literal["FullSupport", "NoFullSupport"]


# ----------------------------
# Simple modules
# ----------------------------

@dataclass(frozen=True)
class OneDim:
    """V_{a,b}(n): r acts by a, s acts by b."""
    n: int
    a: int
    b: int

    def __post_init__(self) -> None:
        if self.n < 3:
            raise ValueError(f"D_2n is undefined for n={self.n}; need n >= 3.")
        if self.a not in (1, -1) or self.b not in (1, -1):
            raise ValueError(f"Signs must be +1/-1, got a={self.a}, b={self.b}.")
        if self.a == -1 and self.n % 2:
            raise ValueError(f"V(-1,{self.b};{self.n}) needs n even.")

    @property
    def dim(self) -> int:
        return 1

    @property
    def sort_key(self) -> Tuple[int, int, int, int]:
        # V(1,1) first, then V(1,-1), V(-1,1), V(-1,-1)
        return (self.n, 0, -self.a, -self.b)

    def __str__(self) -> str:
        return f"V({self.a},{self.b};{self.n})"


@dataclass(frozen=True)
class TwoDim:
    """W_k(n) with the canonical index 1 <= k < n/2."""
    n: int
    k: int

    def __post_init__(self) -> None:
        if self.n < 3:
            raise ValueError(f"D_2n is undefined for n={self.n}; need n >= 3.")
        if not (1 <= self.k and 2 * self.k < self.n):
            raise ValueError(f"W({self.k};{self.n}) is not canonical; need 1 <= k < n/2.")

    @property
    def dim(self) -> int:
        return 2

    @property
    def sort_key(self) -> Tuple[int, int, int, int]:
        return (self.n, 1, self.k, 0)

    def __str__(self) -> str:
        return f"W({self.k};{self.n})"


SimpleModule = Union[OneDim, TwoDim]


# ----------------------------
# Grothendieck vectors
# ----------------------------

class GrothVector:
    """Finite rational combination of canonical simples. Zero coefficients are never stored."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[SimpleModule, Rational] | None = None) -> None:
        clean: Dict[SimpleModule, Fraction] = {}
        for module, coeff in (terms or {}).items():
            c = Fraction(coeff)
            if c:
                clean[module] = clean.get(module, Fraction(0)) + c
        self._terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def zero(cls) -> "GrothVector":
        return cls()

    @classmethod
    def of(cls, module: SimpleModule, coeff: Rational = 1) -> "GrothVector":
        return cls({module: coeff})

    @classmethod
    def sum_of(cls, modules: Iterable[SimpleModule]) -> "GrothVector":
        acc: Dict[SimpleModule, Fraction] = {}
        for m in modules:
            acc[m] = acc.get(m, Fraction(0)) + 1
        return cls(acc)

    @property
    def terms(self) -> Mapping[SimpleModule, Fraction]:
        return dict(self._terms)

    def coefficient(self, module: SimpleModule) -> Fraction:
        return self._terms.get(module, Fraction(0))

    def items(self) -> List[Tuple[SimpleModule, Fraction]]:
        """Terms in canonical key order."""
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key)

    def support(self) -> List[SimpleModule]:
        return [m for m, _ in self.items()]

    def __iter__(self) -> Iterator[SimpleModule]:
        return iter(self.support())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GrothVector):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "GrothVector") -> "GrothVector":
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc.get(m, Fraction(0)) + c
        return GrothVector(acc)

    def __neg__(self) -> "GrothVector":
        return GrothVector({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "GrothVector") -> "GrothVector":
        return self + (-other)

    def __mul__(self, scalar: Rational) -> "GrothVector":
        s = Fraction(scalar)
        return GrothVector({m: c * s for m, c in self._terms.items()})

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"GrothVector({self.items()!r})"


# ----------------------------
# Module families
# ----------------------------

class FamilyConfig(BaseModel):
    """The family M: all simples at n = m * prod(p^e_p), e_p >= 0, n >= 3."""
    model_config = ConfigDict(extra="forbid", frozen=True)

    primes: Tuple[int, ...]
    seeds: Tuple[int, ...] = (1,)
    parity_mode: ParityMode = "odd"

    @field_validator("primes")
    @classmethod
    def _valid_primes(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        if not v:
            raise ValueError("primes must be non-empty.")
        bad = [p for p in v if not isprime(p)]
        if bad:
            raise ValueError(f"not prime: {bad}")
        if len(set(v)) > settings.max_primes:
            raise ValueError(f"at most {settings.max_primes} primes are supported.")
        return tuple(sorted(set(v)))

    @field_validator("seeds")
    @classmethod
    def _valid_seeds(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        if not v:
            raise ValueError("seeds must be non-empty.")
        if any(m < 1 for m in v):
            raise ValueError("seeds must be positive integers.")
        return tuple(sorted(set(v)))

    @model_validator(mode="after")
    def _family_invariants(self) -> "FamilyConfig":
        for m in self.seeds:
            shared = [p for p in self.primes if m % p == 0]
            if shared:
                raise ValueError(f"seed {m} is not coprime to {shared}.")
        if self.parity_mode == "odd":
            if 2 in self.primes:
                raise ValueError("odd-only mode excludes p = 2.")
            if any(m % 2 == 0 for m in self.seeds):
                raise ValueError("odd-only mode requires odd seeds.")
        return self

    @property
    def regime(self) -> Regime:
        return "FullSupport" if 1 in self.seeds else "NoFullSupport"

    @property
    def smallest_prime(self) -> int:
        return self.primes[0]

    @property
    def odd_primes_only(self) -> bool:
        return 2 not in self.primes

    def level_of(self, seed: int, exponents: Iterable[int]) -> int:
        return seed * prod(p ** e for p, e in zip(self.primes, exponents))

    def levels(self, exponent_cap: int) -> List[int]:
        """All family levels with every exponent in [0, exponent_cap]."""
        found = set()
        for m in self.seeds:
            for exps in product(range(exponent_cap + 1), repeat=len(self.primes)):
                n = self.level_of(m, exps)
                if n >= 3:
                    found.add(n)
        return sorted(found)

    def levels_up_to(self, n_max: int) -> List[int]:
        """All family levels n with 3 <= n <= n_max."""
        found = set()
        frontier = [m for m in self.seeds if m <= n_max]
        seen = set(frontier)
        while frontier:
            n = frontier.pop()
            if n >= 3:
                found.add(n)
            for p in self.primes:
                nxt = n * p
                if nxt <= n_max and nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return sorted(found)

    def contains_level(self, n: int) -> bool:
        if n < 3:
            return False
        rest = n
        for p in self.primes:
            while rest % p == 0:
                rest //= p
        return rest in self.seeds

    def describe(self) -> str:
        return f"P={list(self.primes)} seeds={list(self.seeds)} parity={self.parity_mode}"


