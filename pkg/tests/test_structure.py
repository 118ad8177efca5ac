# tests/test_structure.py
"""
Tests for idempotents, the T^1/T^2 quotients, bicyclic coordinates, commutators,
independence checks and the p = 2 relations.
"""
import pytest
from fractions import Fraction
from hypothesis import given, settings as hsettings, strategies as st

from algebra.basis import NormalForm, candidate_basis, enumerate_basis
from algebra.elements import AlgebraElement
from algebra.family import FamilyConfigError, equals_on_family
from algebra.parsing import parse_element
from algebra.structure import (
    P2_IDENTITIES,
    bicyclic_coords,
    bicyclic_multiply,
    bicyclic_reduce,
    bicyclic_word,
    commutator_is_zero,
    decompose_T,
    elements_rank,
    idempotents,
    independence_check,
    project_T,
    t1_to_t2,
    verify_p2_relations,
)
from engine.models import FamilyConfig, OneDim
from engine.words import Word, WordSymbol, parse_word


# =============================================================================
# Fixtures
# =============================================================================

@pytest.fixture
def cfg() -> FamilyConfig:
    return FamilyConfig(primes=(3, 5), seeds=(1,))


@pytest.fixture
def no_support() -> FamilyConfig:
    return FamilyConfig(primes=(3, 5), seeds=(7,))


@pytest.fixture(scope="module")
def p2_report():
    even = FamilyConfig(primes=(2, 3), seeds=(1,), parity_mode="all")
    return verify_p2_relations(even, n_max=48)


symbols = st.builds(WordSymbol, st.sampled_from(["res", "ind"]), st.sampled_from([3, 5]))
words = st.lists(symbols, max_size=5).map(lambda s: Word(tuple(s)))


# =============================================================================
# Tests
# =============================================================================

def test_idempotents_formulas(cfg):
    e1, e2 = idempotents(3)
    assert e1 == parse_element("1/2*res3*ind3 - 1/2")
    assert e1 + e2 == 1
    assert equals_on_family(e1 * e1, e1, cfg, depth=2)
    assert equals_on_family(e2 * e2, e2, cfg, depth=2)
    assert equals_on_family(e1 * e2, AlgebraElement.zero(), cfg, depth=2)


def test_project_T_examples(cfg):
    x = parse_element("res3*ind3")
    assert project_T(x, 2, 3, cfg).to_element() == 1
    assert project_T(x, 1, 3, cfg).to_element() == 3
    e1, _ = idempotents(3)
    assert not project_T(e1, 2, 3, cfg)
    assert project_T(e1, 1, 3, cfg).to_element() == 1


def test_project_T_rejects_bad_arguments(cfg):
    with pytest.raises(ValueError):
        project_T(AlgebraElement.scalar(1), 3, 3, cfg)
    with pytest.raises(FamilyConfigError):
        project_T(AlgebraElement.scalar(1), 1, 7, cfg)


def test_t1_to_t2(cfg):
    ind3 = project_T(parse_element("ind3"), 1, 3, cfg)
    assert t1_to_t2(ind3).to_element() == parse_element("3*ind3")
    assert t1_to_t2(project_T(AlgebraElement.scalar(1), 1, 3, cfg)).to_element() == 1
    mixed = project_T(parse_element("ind3*ind5*res3"), 1, 3, cfg)
    assert t1_to_t2(mixed).to_element() == parse_element("15*ind3*ind5*res3")


def test_t1_to_t2_needs_projected_input():
    x = candidate_basis((0, 0), (0, 0), True, "FullSupport", (3, 5))[1]
    with pytest.raises(ValueError):
        t1_to_t2(NormalForm(((x, Fraction(1)),)))


@pytest.mark.parametrize("text", ["res3*ind3", "ind5*res3*ind3 - 2*res5", "ind3*res3*ind5*res5 + 1/3"])
def test_decomposition_recombines(cfg, text):
    z = parse_element(text)
    parts = decompose_T(z, cfg)
    assert equals_on_family(parts.recombined, z, cfg, depth=2)


def test_bicyclic_examples(no_support):
    assert bicyclic_coords(parse_element("res3*ind3"), no_support) == {((0, 0), (0, 0)): 1}
    assert bicyclic_coords(parse_element("ind3*res3"), no_support) == {((1, 1), (0, 0)): 1}
    assert bicyclic_coords(parse_element("res3*ind3*ind3"), no_support) == {((0, 1), (0, 0)): 1}


def test_bicyclic_needs_no_full_support(cfg):
    with pytest.raises(FamilyConfigError):
        bicyclic_coords(parse_element("res3"), cfg)


def test_bicyclic_reduction():
    primes = (3, 5)
    assert bicyclic_reduce(parse_word("res3*ind3*ind3"), primes) == ((0, 1), (0, 0))
    assert bicyclic_reduce(parse_word("ind5*res5^2*ind3"), primes) == ((0, 1), (2, 1))
    assert bicyclic_word(((1, 1), (0, 2)), primes) == parse_word("ind3*ind5^2*res3")
    assert bicyclic_word(((0, 0), (0, 0)), primes) == parse_word("1")


@hsettings(max_examples=100, deadline=None)
@given(w1=words, w2=words)
def test_bicyclic_coordinates_multiply(w1, w2):
    family = FamilyConfig(primes=(3, 5), seeds=(7,))
    expected = bicyclic_multiply(bicyclic_reduce(w1, family.primes), bicyclic_reduce(w2, family.primes))
    assert bicyclic_coords(AlgebraElement.word(w1 * w2), family) == {expected: 1}


def test_commutators(cfg):
    x3 = parse_element("res3*ind3")
    assert commutator_is_zero(x3, parse_element("res5"), cfg, depth=2)
    assert commutator_is_zero(x3, parse_element("ind3"), cfg, depth=2)
    assert commutator_is_zero(AlgebraElement.scalar(1), parse_element("ind5*res3"), cfg)
    assert not commutator_is_zero(parse_element("res3"), parse_element("ind3"), cfg, depth=1)


def test_res2_ind2_is_not_central():
    even = FamilyConfig(primes=(2, 3), seeds=(1,), parity_mode="all")
    assert not commutator_is_zero(parse_element("res2*ind2"), parse_element("res2"), even, depth=1)


def test_independence_of_one_and_x(cfg):
    monomials = candidate_basis((0, 0), (0, 0), True, "FullSupport", (3, 5))
    assert independence_check(monomials, cfg)


def test_independence_rejects_duplicates(cfg):
    one = candidate_basis((0, 0), (0, 0), True, "FullSupport", (3, 5))[0]
    with pytest.raises(ValueError):
        independence_check([one, one], cfg)


@pytest.mark.parametrize("seeds", [(1,), (7,)])
def test_basis_is_independent(seeds):
    family = FamilyConfig(primes=(3, 5), seeds=seeds)
    assert independence_check(enumerate_basis(family, 1), family)


def test_elements_rank_detects_dependence(cfg):
    z = parse_element("res3*ind3*res3*ind3")
    report = elements_rank([z, parse_element("res3*ind3"), AlgebraElement.scalar(1)], cfg)
    assert report.rank == 2
    assert not report.full_column_rank


def test_p2_identities_hold(p2_report):
    assert [c.name for c in p2_report.identities] == [name for name, _, _ in P2_IDENTITIES]
    for check in p2_report.identities:
        assert check.passed, check.failures[:1]
        assert check.modules_checked > 0


def test_p2_witnesses(p2_report):
    assert p2_report.passed
    assert p2_report.relation_iv_witness is not None
    assert p2_report.centrality_witness is not None
    assert p2_report.centrality_witness.module.n % 2 == 0


def test_p2_minimal_relation(p2_report):
    relation = p2_report.minimal_relation
    assert relation is not None
    assert len(relation) <= 4


def test_p2_needs_prime_two(cfg):
    with pytest.raises(FamilyConfigError):
        verify_p2_relations(cfg)


def test_relation_iv_fails_for_two():
    even = FamilyConfig(primes=(2, 3), seeds=(1,), parity_mode="all")
    lhs = parse_element("res2^2*ind2^2")
    rhs = parse_element("3*res2*ind2 - 2")
    assert not equals_on_family(lhs, rhs, even, modules=[OneDim(3, 1, 1)])


if __name__ == "__main__":
    pytest.main([__file__, "-v", "--tb=short"])
