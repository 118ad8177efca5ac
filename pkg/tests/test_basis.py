# tests/test_basis.py
"""
Tests for basis monomials: template selection, enumeration and NormalForm invariants.
"""
import pytest
from fractions import Fraction

from algebra.basis import (
    BasisMonomial,
    NormalForm,
    candidate_basis,
    class_key,
    classify,
    enumerate_basis,
    monomial_for,
)
from engine.models import FamilyConfig
from engine.words import parse_word, profile


# =============================================================================
# Fixtures
# =============================================================================

@pytest.fixture
def cfg35() -> FamilyConfig:
    return FamilyConfig(primes=(3, 5), seeds=(1,))


@pytest.fixture
def cfg357() -> FamilyConfig:
    return FamilyConfig(primes=(3, 5, 7), seeds=(1,))


@pytest.fixture
def no_support() -> FamilyConfig:
    return FamilyConfig(primes=(3, 5), seeds=(7,))


def _words(monomials):
    return [str(m) for m in monomials]


# =============================================================================
# Tests
# =============================================================================

def test_candidate_basis_tag_two():
    found = candidate_basis((0, 0), (-1, -1), False, "FullSupport", (3, 5))
    assert [m.tag for m in found] == ["II", "II"]
    assert [m.t for m in found] == [0, 1]
    assert _words(found) == ["ind3*res3*ind5*res5", "res3*ind3^2*res3*ind5*res5"]


def test_candidate_basis_trivial_class():
    found = candidate_basis((0, 0), (0, 0), True, "FullSupport", (3, 5))
    assert _words(found) == ["1", "res3*ind3"]
    assert candidate_basis((0, 0), (0, 0), True, "NoFullSupport", (3, 5))[1].word() == parse_word("res3*ind3")


def test_candidate_basis_no_full_support():
    found = candidate_basis((-2, 0), (-2, 0), True, "NoFullSupport", (3, 5))
    assert [m.tag for m in found] == ["I", "I"]
    assert _words(found) == ["res3^2", "res3*ind3*res3^2"]


def test_candidate_basis_empty_cases():
    assert candidate_basis((0, 0), (1, 0), True, "FullSupport", (3, 5)) == []
    assert candidate_basis((-1, 0), (0, 0), True, "FullSupport", (3, 5)) == []
    assert candidate_basis((0, 0), (0, 0), False, "FullSupport", (3, 5)) == []
    with pytest.raises(ValueError):
        candidate_basis((0,), (0, 0), True, "FullSupport", (3, 5))


@pytest.mark.parametrize(
    "word, tag",
    [
        ("ind3*res3*res5", "I"),
        ("ind3*res3*ind5*res5", "II"),
        ("res3*ind5", "III"),
        ("res5*ind3*res3^2*ind5", "IV"),
        ("ind3*res3*ind5", "V"),
        ("res5*ind3*res3", "VI"),
        ("res3*ind5*ind7", "VII"),
    ],
)
def test_classify_tags(word, tag):
    primes = (3, 5, 7)
    prof = profile(parse_word(word), primes)
    assert classify(prof.termini, prof.nadirs, prof.total_nadir, "FullSupport", primes) == tag


def test_no_full_support_always_uses_tag_one():
    prof = profile(parse_word("res3*ind5"), (3, 5))
    assert classify(prof.termini, prof.nadirs, prof.total_nadir, "NoFullSupport", (3, 5)) == "I"


def test_tag_seven_template():
    m = monomial_for(parse_word("res3*ind5*ind7"), FamilyConfig(primes=(3, 5, 7)))
    assert m.tag == "VII"
    assert str(m) == "ind7*res3*ind5"
    assert m.exponents() == {"3": {"k": 1, "l": 0}, "5": {"k": 0, "l": 1}, "7": {"k": 0, "l": 1}}


@pytest.mark.parametrize("cfg_name", ["cfg35", "cfg357", "no_support"])
def test_every_monomial_lies_in_its_own_class(cfg_name, request):
    cfg = request.getfixturevalue(cfg_name)
    monomials = enumerate_basis(cfg, 1)
    assert monomials
    for m in monomials:
        e, d, flag = class_key(m.word(), cfg)
        assert d == tuple(-k for k in m.k)
        assert e == tuple(l - k for k, l in zip(m.k, m.l))
        assert classify(e, d, flag, cfg.regime, cfg.primes) == m.tag
        assert monomial_for(m.word(), cfg, t=m.t) == m


def test_enumerate_basis_has_distinct_words(cfg35):
    monomials = enumerate_basis(cfg35, 2)
    words = [m.word() for m in monomials]
    assert len(set(words)) == len(words)
    assert len({m.key for m in monomials}) == len(monomials)


def test_monomial_validation():
    with pytest.raises(ValueError):
        BasisMonomial("I", 2, (3,), (0,), (0,))
    with pytest.raises(ValueError):
        BasisMonomial("I", 0, (3, 5), (0,), (0, 0))
    with pytest.raises(ValueError):
        BasisMonomial("I", 0, (3,), (-1,), (0,))


def test_normal_form_rejects_duplicate_entries():
    one = BasisMonomial("I", 0, (3,), (0,), (0,))
    with pytest.raises(ValueError):
        NormalForm(((one, Fraction(1)), (one, Fraction(2))))
    with pytest.raises(ValueError):
        NormalForm(((one, Fraction(0)),))


def test_normal_form_orders_entries():
    one = BasisMonomial("I", 0, (3, 5), (0, 0), (0, 0))
    x = one.with_t(1)
    nf = NormalForm.from_terms({x: Fraction(2), one: Fraction(-1)})
    assert [m.t for m, _ in nf.entries] == [0, 1]
    assert nf.coefficient(x) == 2
    assert nf.render() == "-1 + 2*res3*ind3"
    assert len(nf) == 2 and nf
    assert not NormalForm()


if __name__ == "__main__":
    pytest.main([__file__, "-v", "--tb=short"])
