# tests/test_characters.py
"""
Character-oracle tests: class tables, orthogonality, and agreement with the
closed-form branching rules.
"""
import logging

import numpy as np
import pytest

from engine.branching import enumerate_simples, induce, restrict
from engine.characters import (
    OracleError,
    character_of,
    class_table,
    decompose,
    induce_char,
    oracle_induce,
    oracle_induce_level,
    oracle_restrict,
    oracle_restrict_level,
    orthogonality_defect,
    restrict_char,
)
from engine.models import GrothVector, OneDim, TwoDim


# =============================================================================
# Fixtures
# =============================================================================

@pytest.fixture
def w1_5() -> TwoDim:
    return TwoDim(5, 1)


# =============================================================================
# Tests
# =============================================================================

def test_class_table_sizes_sum_to_group_order():
    for n in range(3, 25):
        table = class_table(n)
        assert sum(table.sizes) == 2 * n
        assert len(table.sizes) == len(enumerate_simples(n))


def test_character_values():
    chi = character_of(OneDim(6, -1, -1))
    expected = [1, -1, 1, -1, -1, 1]
    assert np.allclose(chi.values, expected)
    w = character_of(TwoDim(3, 1))
    assert np.allclose(w.values, [2, -1, 0])
    assert w(2, False) == pytest.approx(-1)
    assert w(1, True) == pytest.approx(0)


def test_orthogonality():
    assert max(orthogonality_defect(n) for n in range(3, 40)) < 1e-9


def test_decompose_character_of_simple():
    for module in enumerate_simples(12):
        assert decompose(character_of(module)) == GrothVector.of(module)


def test_induce_char_example(w1_5):
    expected = GrothVector.of(TwoDim(10, 1)) + GrothVector.of(TwoDim(10, 4))
    assert decompose(induce_char(2, character_of(w1_5))) == expected


def test_restrict_char_requires_divisibility(w1_5):
    with pytest.raises(ValueError):
        restrict_char(3, character_of(w1_5))


def test_oracle_single_modules():
    assert oracle_induce(5, OneDim(3, 1, 1)) == induce(5, OneDim(3, 1, 1))
    assert oracle_restrict(5, TwoDim(15, 5)) == restrict(5, TwoDim(15, 5))
    assert oracle_restrict(3, OneDim(3, 1, 1)) == GrothVector.zero()


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_oracle_agrees_with_branching_rules(p):
    for n in range(3, 41):
        induced = oracle_induce_level(p, n)
        restricted = oracle_restrict_level(p, n)
        for module in enumerate_simples(n):
            assert induced[module] == induce(p, module), (p, str(module))
            assert restricted[module] == restrict(p, module), (p, str(module))


def test_non_integral_multiplicity_raises():
    chi = character_of(TwoDim(5, 1))
    half = type(chi)(chi.table, chi.values / 2)
    with pytest.raises(OracleError):
        decompose(half)


def test_oracle_logs_level_batches_and_rounding_failures(caplog):
    with caplog.at_level(logging.DEBUG, logger="engine.characters"):
        oracle_induce_level(3, 5)
    assert "inducing level 5 along p=3" in caplog.text
    chi = character_of(TwoDim(5, 1))
    with caplog.at_level(logging.ERROR, logger="engine.characters"):
        with pytest.raises(OracleError):
            decompose(type(chi)(chi.table, chi.values / 2))
    assert any(r.levelno == logging.ERROR for r in caplog.records)


if __name__ == "__main__":
    pytest.main([__file__, "-v", "--tb=short"])
