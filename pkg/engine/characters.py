# engine/characters.py
"""
Character-theory oracle for D_2n = <r, s | r^n = s^2 = 1, s r s = r^-1>.

Group elements are pairs (j, f) meaning r^j s^f. Values are double-precision
complex numbers; multiplicities are recovered by rounding inner products.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Tuple

import numpy as np

from config.settings import settings

from .branching import enumerate_simples
from .models import GrothVector, OneDim, SimpleModule, TwoDim


logger = logging.getLogger(__name__)

Element = Tuple[int, bool]


class OracleError(RuntimeError):
    """A multiplicity came out non-integral: a bug in one of the two paths."""


# ----------------------------
# Conjugacy classes
# ----------------------------

@dataclass(frozen=True)
class ConjClassTable:
    n: int
    representatives: Tuple[Element, ...]
    sizes: Tuple[int, ...]

    @property
    def order(self) -> int:
        return 2 * self.n

    @property
    def size_vector(self) -> np.ndarray:
        return np.asarray(self.sizes, dtype=float)

    def index(self, j: int, f: bool) -> int:
        n = self.n
        j %= n
        if f:
            base = n // 2 + 1 if n % 2 == 0 else (n - 1) // 2 + 1
            return base + (j % 2 if n % 2 == 0 else 0)
        r = min(j, n - j)
        return r


@lru_cache(maxsize=None)
def class_table(n: int) -> ConjClassTable:
    if n < 3:
        raise ValueError(f"D_2n is undefined for n={n}; need n >= 3.")
    reps: List[Element] = [(0, False)]
    sizes: List[int] = [1]
    for j in range(1, (n - 1) // 2 + 1):
        reps.append((j, False))
        sizes.append(2)
    if n % 2 == 0:
        reps += [(n // 2, False), (0, True), (1, True)]
        sizes += [1, n // 2, n // 2]
    else:
        reps.append((0, True))
        sizes.append(n)
    return ConjClassTable(n, tuple(reps), tuple(sizes))


@dataclass(frozen=True)
class ClassFunction:
    table: ConjClassTable
    values: np.ndarray

    def __call__(self, j: int, f: bool) -> complex:
        return complex(self.values[self.table.index(j, f)])


# ----------------------------
# Characters of simples
# ----------------------------

def _character_values(module: SimpleModule, table: ConjClassTable) -> np.ndarray:
    j = np.array([rep[0] for rep in table.representatives], dtype=float)
    f = np.array([rep[1] for rep in table.representatives], dtype=bool)
    if isinstance(module, OneDim):
        return np.where(f, module.b, 1.0) * np.power(float(module.a), j) + 0j
    return np.where(f, 0.0, 2.0 * np.cos(2.0 * np.pi * j * module.k / module.n)) + 0j


def character_of(module: SimpleModule) -> ClassFunction:
    table = class_table(module.n)
    return ClassFunction(table, _character_values(module, table))


@lru_cache(maxsize=64)
def character_matrix(n: int) -> np.ndarray:
    """Rows follow enumerate_simples(n), columns the class representatives."""
    table = class_table(n)
    return np.vstack([_character_values(m, table) for m in enumerate_simples(n)])


# ----------------------------
# Restriction / induction of class functions
# ----------------------------

@lru_cache(maxsize=256)
def _restriction_columns(p: int, n: int) -> np.ndarray:
    """Column of D_2pn hit by each class representative of the subgroup D_2n."""
    big, small = class_table(p * n), class_table(n)
    return np.array([big.index(p * j, f) for j, f in small.representatives], dtype=int)


@lru_cache(maxsize=256)
def _induction_matrix(p: int, n: int) -> np.ndarray:
    """A[c, g] = #{i in [0, p): r^-i g r^i lies in the subgroup class c}."""
    big, small = class_table(p * n), class_table(n)
    A = np.zeros((len(small.sizes), len(big.sizes)))
    for g, (j, f) in enumerate(big.representatives):
        for i in range(p):
            exponent = j - 2 * i if f else j
            if exponent % p == 0:
                A[small.index(exponent // p, f), g] += 1
    return A


def restrict_char(p: int, chi: ClassFunction) -> ClassFunction:
    if chi.table.n % p:
        raise ValueError(f"{p} does not divide {chi.table.n}.")
    n = chi.table.n // p
    return ClassFunction(class_table(n), chi.values[_restriction_columns(p, n)])


def induce_char(p: int, chi: ClassFunction) -> ClassFunction:
    """(Ind chi)(g) = sum over coset representatives r^i of chi°(r^-i g r^i)."""
    n = chi.table.n
    return ClassFunction(class_table(p * n), chi.values @ _induction_matrix(p, n))


# ----------------------------
# Decomposition
# ----------------------------

def _round_multiplicities(raw: np.ndarray, tolerance: float) -> np.ndarray:
    rounded = np.rint(raw.real)
    error = np.max(np.abs(raw - rounded), initial=0.0)
    if error > tolerance:
        logger.error("multiplicity rounding failed: deviation %.3e > tolerance %.1e", error, tolerance)
        raise OracleError(f"non-integral multiplicity (max deviation {error:.3e}).")
    logger.debug("rounded %d multiplicities, max deviation %.3e", raw.size, error)
    return rounded.astype(int)


def inner_products(values: np.ndarray, n: int) -> np.ndarray:
    """<chi, chi_i> for every simple chi_i at level n; `values` may hold several rows."""
    table = class_table(n)
    return (values * table.size_vector) @ np.conj(character_matrix(n)).T / table.order


def decompose(chi: ClassFunction, tolerance: float | None = None) -> GrothVector:
    tol = settings.oracle_tolerance if tolerance is None else tolerance
    mults = _round_multiplicities(inner_products(chi.values, chi.table.n), tol)
    simples = enumerate_simples(chi.table.n)
    return GrothVector({m: int(c) for m, c in zip(simples, mults) if c})


def oracle_restrict(p: int, module: SimpleModule) -> GrothVector:
    """Zero on the same domain convention as the functor (p | n, n != p, n/p >= 3)."""
    n = module.n
    if n % p or n == p or n // p < 3:
        return GrothVector.zero()
    return decompose(restrict_char(p, character_of(module)))


def oracle_induce(p: int, module: SimpleModule) -> GrothVector:
    return decompose(induce_char(p, character_of(module)))


# ----------------------------
# Level-wide batches
# ----------------------------

def _rows_to_vectors(n_source: int, n_target: int, mults: np.ndarray) -> Dict[SimpleModule, GrothVector]:
    targets = enumerate_simples(n_target)
    out: Dict[SimpleModule, GrothVector] = {}
    for source, row in zip(enumerate_simples(n_source), mults):
        out[source] = GrothVector({t: int(c) for t, c in zip(targets, row) if c})
    return out


def oracle_induce_level(p: int, n: int, tolerance: float | None = None) -> Dict[SimpleModule, GrothVector]:
    """Induced decompositions of every simple at level n in one matrix product."""
    tol = settings.oracle_tolerance if tolerance is None else tolerance
    logger.debug("oracle: inducing level %d along p=%d", n, p)
    induced = character_matrix(n) @ _induction_matrix(p, n)
    mults = _round_multiplicities(inner_products(induced, p * n), tol)
    return _rows_to_vectors(n, p * n, mults)


def oracle_restrict_level(p: int, n: int, tolerance: float | None = None) -> Dict[SimpleModule, GrothVector]:
    """Restricted decompositions of every simple at level n (zero where the functor is zero)."""
    if n % p or n == p or n // p < 3:
        return {m: GrothVector.zero() for m in enumerate_simples(n)}
    tol = settings.oracle_tolerance if tolerance is None else tolerance
    logger.debug("oracle: restricting level %d along p=%d", n, p)
    restricted = character_matrix(n)[:, _restriction_columns(p, n // p)]
    mults = _round_multiplicities(inner_products(restricted, n // p), tol)
    return _rows_to_vectors(n, n // p, mults)


def orthogonality_defect(n: int) -> float:
    """max |<chi_i, chi_j> - delta_ij| over the simples at level n."""
    gram = inner_products(character_matrix(n), n)
    return float(np.max(np.abs(gram - np.eye(gram.shape[0]))))
