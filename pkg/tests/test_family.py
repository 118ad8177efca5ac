# tests/test_family.py
"""
Tests for family test sets, equality on the family, and the exact linear algebra helpers.
"""
import pytest
from fractions import Fraction

from algebra.family import (
    FamilyConfigError,
    action_column,
    check_primes,
    element_action,
    equals_on_family,
    family_test_set,
    first_difference,
    nadir_window_levels,
)
from algebra.linalg import InconsistentSystem, RankReport, SingularSystem, column_rank, solve_columns
from algebra.parsing import parse_element
from engine.models import FamilyConfig, OneDim


# =============================================================================
# Fixtures
# =============================================================================

@pytest.fixture
def cfg() -> FamilyConfig:
    return FamilyConfig(primes=(3, 5), seeds=(1,))


# =============================================================================
# Tests
# =============================================================================

def test_family_test_set_sizes(cfg):
    assert len(family_test_set(cfg, 0)) == 3 + 3 + 5
    assert len(family_test_set(cfg, 0, orbit_reduction=False)) == 3 + 4 + 9
    assert {m.n for m in family_test_set(cfg, 1)} == {3, 5, 9, 15, 25, 45, 75, 225}


def test_nadir_window_levels(cfg):
    assert nadir_window_levels((-1, -1), cfg) == [15, 45, 75, 225]
    assert nadir_window_levels((0, 0), cfg) == [3, 5, 15]
    seeded = FamilyConfig(primes=(3, 5), seeds=(7,))
    assert nadir_window_levels((0, -1), seeded) == [35, 105, 175, 525]


def test_reordering_is_invisible_on_the_family(cfg):
    z1 = parse_element("ind5*res5*ind3*res3")
    z2 = parse_element("ind3*res3*ind5*res5")
    assert equals_on_family(z1, z2, cfg)


def test_res_ind_is_not_a_scalar(cfg):
    z = parse_element("res3*ind3")
    assert not equals_on_family(z, parse_element("3"), cfg)
    found = first_difference(z, parse_element("3"), cfg)
    assert found is not None
    assert found.module == OneDim(3, 1, 1)
    assert found.render() == "on V(1,1;3): 2*V(1,1;3) + V(1,-1;3) != 3*V(1,1;3)"


def test_equal_elements_have_no_difference(cfg):
    z = parse_element("res3*ind3 - 1")
    assert first_difference(z, z, cfg) is None
    assert equals_on_family(z * 2, z + z, cfg, depth=1)


def test_foreign_primes_are_rejected(cfg):
    with pytest.raises(FamilyConfigError):
        check_primes(parse_element("res7"), cfg)
    with pytest.raises(FamilyConfigError):
        equals_on_family(parse_element("res7"), parse_element("res7"), cfg)


def test_action_column(cfg):
    module = OneDim(5, 1, 1)
    z = parse_element("res3*ind3 - 3")
    assert element_action(z, module) == {OneDim(5, 1, 1): -1, OneDim(5, 1, -1): 1}
    column = action_column(z, [module, OneDim(3, 1, 1)])
    assert column[(module, OneDim(5, 1, -1))] == 1
    assert (OneDim(3, 1, 1), OneDim(3, 1, 1)) in column


def test_column_rank():
    report = column_rank([{"a": Fraction(1)}, {"a": Fraction(2)}])
    assert report.rank == 1 and not report.full_column_rank
    report = column_rank([{"a": Fraction(1), "b": Fraction(1)}, {"b": Fraction(1, 3)}])
    assert report.rank == report.cross_check_rank == 2
    assert report.full_column_rank
    assert column_rank([]).rank == 0


def test_column_rank_cross_check_on_dependent_columns():
    cols = [
        {"a": Fraction(1), "b": Fraction(1)},
        {"b": Fraction(1, 2)},
        {"a": Fraction(1), "b": Fraction(2), "c": Fraction(0)},
    ]
    report = column_rank(cols)
    assert report.rank == report.cross_check_rank == 2
    assert report.columns == 3 and not report.full_column_rank
    assert not RankReport(2, 2, 1).full_column_rank


def test_solve_columns():
    columns = [{"a": Fraction(1), "b": Fraction(1)}, {"b": Fraction(1)}]
    assert solve_columns(columns, {"a": Fraction(2), "b": Fraction(5)}) == [2, 3]
    assert solve_columns(columns, {"b": Fraction(1, 2)}) == [0, Fraction(1, 2)]
    assert solve_columns([], {}) == []


def test_solve_columns_errors():
    with pytest.raises(InconsistentSystem):
        solve_columns([{"a": Fraction(1)}], {"b": Fraction(1)})
    with pytest.raises(SingularSystem):
        solve_columns([{"a": Fraction(1)}, {"a": Fraction(2)}], {"a": Fraction(1)})
    with pytest.raises(InconsistentSystem):
        solve_columns([], {"a": Fraction(1)})


if __name__ == "__main__":
    pytest.main([__file__, "-v", "--tb=short"])
