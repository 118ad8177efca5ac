# algebra/linalg.py
"""Exact rational elimination on sparse systems via sympy's DomainMatrix over QQ."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Hashable, List, Mapping, Optional, Sequence

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix


SparseColumn = Mapping[Hashable, Fraction]


def _qq(c: Fraction) -> object:
    return QQ(c.numerator, c.denominator)


def _row_index(columns: Sequence[SparseColumn], extra: Sequence[SparseColumn] = ()) -> Dict[Hashable, int]:
    keys = sorted({k for col in list(columns) + list(extra) for k in col}, key=repr)
    return {k: i for i, k in enumerate(keys)}


def column_matrix(columns: Sequence[SparseColumn], rows: Optional[Dict[Hashable, int]] = None) -> DomainMatrix:
    """Sparse matrix with one column per mapping (row key -> coefficient)."""
    rows = rows if rows is not None else _row_index(columns)
    data: Dict[int, Dict[int, object]] = {}
    for j, col in enumerate(columns):
        for key, c in col.items():
            if c:
                data.setdefault(rows[key], {})[j] = _qq(Fraction(c))
    return DomainMatrix(data, (len(rows), len(columns)), QQ)


@dataclass(frozen=True)
class RankReport:
    rank: int
    columns: int
    cross_check_rank: int

    @property
    def full_column_rank(self) -> bool:
        return self.rank == self.columns == self.cross_check_rank


def column_rank(columns: Sequence[SparseColumn]) -> RankReport:
    """Rank by sparse elimination over QQ, cross-checked by sympy's dense Matrix rank of the same entries."""
    if not columns:
        return RankReport(0, 0, 0)
    M = column_matrix(columns)
    if M.shape[0] == 0:
        return RankReport(0, len(columns), 0)
    return RankReport(M.rank(), len(columns), M.to_Matrix().rank())


class InconsistentSystem(ArithmeticError):
    pass


class SingularSystem(ArithmeticError):
    pass


def solve_columns(columns: Sequence[SparseColumn], rhs: SparseColumn) -> List[Fraction]:
    """Unique x with sum_j x_j * columns[j] == rhs; raises when inconsistent or underdetermined."""
    if not columns:
        if any(rhs.values()):
            raise InconsistentSystem("no unknowns but a nonzero right-hand side")
        return []
    rows = _row_index(columns, [rhs])
    augmented = column_matrix(list(columns) + [rhs], rows)
    if augmented.shape[0] == 0:
        raise SingularSystem("no equations")
    reduced, pivots = augmented.rref()
    n = len(columns)
    if n in pivots:
        raise InconsistentSystem("right-hand side is not in the column span")
    if len(pivots) < n:
        raise SingularSystem(f"rank {len(pivots)} < {n} unknowns")
    dense = reduced.to_Matrix()
    solution = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        value = dense[i, n]
        solution[col] = Fraction(int(value.p), int(value.q))
    return solution
