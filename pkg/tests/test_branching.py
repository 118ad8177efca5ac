# tests/test_branching.py
"""
Unit and property tests for restriction/induction on the Grothendieck group.
"""
import pytest
from fractions import Fraction
from typing import get_args
from hypothesis import given, settings as hsettings, strategies as st

from algebra.parsing import parse_element
from engine.branching import (
    apply_element,
    apply_word,
    canonicalize_W,
    dim,
    enumerate_simples,
    galois_representatives,
    induce,
    restrict,
)
from engine.models import FamilyConfig, GrothVector, OneDim, TwoDim
from engine.words import EMPTY_WORD, parse_word


# =============================================================================
# Fixtures
# =============================================================================

@pytest.fixture
def v11_15() -> GrothVector:
    return GrothVector.of(OneDim(15, 1, 1))


def V(a: int, b: int, n: int) -> GrothVector:
    return GrothVector.of(OneDim(n, a, b))


def W(k: int, n: int) -> GrothVector:
    return GrothVector.of(TwoDim(n, k))


# =============================================================================
# Tests
# =============================================================================

def test_canonicalize_w_cases():
    assert canonicalize_W(15, 5) == W(5, 15)
    assert canonicalize_W(3, 7) == W(1, 3)
    assert canonicalize_W(5, 5) == V(1, 1, 5) + V(1, -1, 5)
    assert canonicalize_W(6, 3) == V(-1, 1, 6) + V(-1, -1, 6)
    assert canonicalize_W(10, -3) == W(3, 10)


def test_canonicalize_rejects_small_levels():
    with pytest.raises(ValueError):
        canonicalize_W(2, 1)


def test_simple_module_invariants():
    with pytest.raises(ValueError):
        OneDim(5, -1, 1)
    with pytest.raises(ValueError):
        TwoDim(10, 5)
    assert str(OneDim(15, 1, -1)) == "V(1,-1;15)"
    assert str(TwoDim(15, 4)) == "W(4;15)"


def test_enumerate_simples_counts():
    assert len(enumerate_simples(15)) == 2 + 7
    assert len(enumerate_simples(12)) == 4 + 5
    assert enumerate_simples(15)[0] == OneDim(15, 1, 1)


def test_galois_representatives_cover_every_gcd_class():
    reps = galois_representatives(45)
    twos = sorted(m.k for m in reps if isinstance(m, TwoDim))
    assert twos == [1, 3, 5, 9, 15]
    assert OneDim(45, 1, -1) in reps


def test_restrict_examples():
    assert restrict(3, OneDim(15, 1, 1)) == V(1, 1, 5)
    assert restrict(5, TwoDim(15, 5)) == canonicalize_W(3, 2)
    assert restrict(3, OneDim(3, 1, 1)) == GrothVector.zero()
    assert restrict(2, OneDim(6, -1, -1)) == V(1, -1, 3)


def test_restrict_zero_below_level_three():
    assert not restrict(2, OneDim(4, 1, 1))
    assert not restrict(3, TwoDim(10, 1))


def test_induce_examples():
    assert induce(5, OneDim(3, 1, 1)) == V(1, 1, 15) + W(3, 15) + W(6, 15)
    assert induce(3, OneDim(5, 1, 1)) == V(1, 1, 15) + W(5, 15)
    assert induce(3, TwoDim(5, 2)) == W(2, 15) + W(3, 15) + W(7, 15)
    assert induce(2, OneDim(6, -1, 1)) == W(3, 12)


def test_apply_word_worked_example(v11_15):
    expected = V(1, 1, 15)
    for k in range(1, 8):
        expected = expected + W(k, 15)
    assert apply_word(parse_word("ind5*res5*ind3*res3"), v11_15) == expected
    assert apply_word(parse_word("ind3*ind5*res3*res5"), v11_15) == GrothVector.zero()
    assert apply_word(EMPTY_WORD, v11_15) == v11_15


def test_apply_element_examples():
    z = parse_element("res3*ind3 - 3")
    assert apply_element(z, V(1, 1, 5)) == V(1, -1, 5) - V(1, 1, 5)
    assert apply_element(parse_element("res3*ind3"), W(1, 5)) == W(1, 5) * 3
    assert apply_element(parse_element("0"), W(1, 5)) == GrothVector.zero()


def test_apply_element_is_linear():
    z = parse_element("1/2*res3*ind3 + ind5*res5")
    v = V(1, 1, 15) + W(2, 15) * Fraction(-3, 4)
    lhs = apply_element(z, v)
    rhs = apply_element(z, V(1, 1, 15)) + apply_element(z, W(2, 15)) * Fraction(-3, 4)
    assert lhs == rhs


def test_dim_examples():
    assert dim(V(1, 1, 5)) == 1
    assert dim(W(1, 5)) == 2
    assert dim(induce(3, TwoDim(5, 2))) == 6


def test_grothvector_has_no_zero_coefficients():
    v = V(1, 1, 5) + W(1, 5) - V(1, 1, 5)
    assert v == W(1, 5)
    assert len(v) == 1
    assert (v - v) == 0


def test_family_config_validation():
    with pytest.raises(ValueError):
        FamilyConfig(primes=(3, 4))
    with pytest.raises(ValueError):
        FamilyConfig(primes=(3,), seeds=(6,))
    with pytest.raises(ValueError):
        FamilyConfig(primes=(2, 3), parity_mode="odd")
    cfg = FamilyConfig(primes=(5, 3), seeds=(7, 1))
    assert cfg.primes == (3, 5)
    assert cfg.regime == "FullSupport"
    assert FamilyConfig(primes=(3, 5), seeds=(7,)).regime == "NoFullSupport"
    assert cfg.contains_level(105) and not cfg.contains_level(11)


def test_parity_mode_comes_from_settings():
    import config.settings
    import engine.models

    assert engine.models.ParityMode is config.settings.ParityMode
    assert get_args(config.settings.ParityMode) == ("odd", "all")
    with pytest.raises(ValueError):
        FamilyConfig(primes=(3,), parity_mode="even")


simple_levels = st.integers(min_value=3, max_value=60)
small_primes = st.sampled_from([2, 3, 5, 7])


@hsettings(max_examples=150, deadline=None)
@given(n=simple_levels, p=small_primes, data=st.data())
def test_induction_multiplies_dimension(n, p, data):
    module = data.draw(st.sampled_from(enumerate_simples(n)))
    assert dim(induce(p, module)) == p * module.dim
    assert all(c > 0 and c.denominator == 1 for _, c in induce(p, module).items())


@hsettings(max_examples=150, deadline=None)
@given(n=simple_levels, p=small_primes, data=st.data())
def test_restriction_preserves_or_kills_dimension(n, p, data):
    module = data.draw(st.sampled_from(enumerate_simples(n * p)))
    assert dim(restrict(p, module)) in (0, module.dim)


@hsettings(max_examples=150, deadline=None)
@given(n=simple_levels, p=small_primes, data=st.data())
def test_frobenius_reciprocity(n, p, data):
    lower = data.draw(st.sampled_from(enumerate_simples(n)))
    upper = data.draw(st.sampled_from(enumerate_simples(p * n)))
    assert restrict(p, upper).coefficient(lower) == induce(p, lower).coefficient(upper)


@hsettings(max_examples=100, deadline=None)
@given(n=simple_levels, data=st.data())
def test_canonicalization_is_idempotent(n, data):
    module = data.draw(st.sampled_from([m for m in enumerate_simples(n) if isinstance(m, TwoDim)]))
    assert canonicalize_W(n, module.k) == GrothVector.of(module)
    assert canonicalize_W(n, n - module.k) == GrothVector.of(module)


if __name__ == "__main__":
    pytest.main([__file__, "-v", "--tb=short"])
