import math

import pytest
from hypothesis import given, strategies as st

from chromsplit import chromatic as ch
from chromsplit.exactpoly import ONE, Polynomial, evaluate, monomial

L0 = ONE
L1 = monomial(1, 2)
L2 = Polynomial({4: 2, 5: 1})
L3 = Polynomial({6: 4, 7: 3, 9: 1, 10: 1})
# frozen from scripts/oracle_l4.py (sum over the 8 compositions of 4)
LT4 = Polynomial({0: 8, 1: 8, 2: 1, 3: 3, 4: 3, 5: 1, 6: 1, 8: 1, 9: 1})
PAPER = [L0, L1, L2, L3]

ALL_ROUTES = [ch.l_direct, ch.l_recursive, ch.l_genfun, ch.l_closed_form, ch.l_closed_form_partitions]


def test_epsilon_examples():
    assert ch.epsilon(0) == ONE
    assert ch.epsilon(1) == Polynomial({0: 1, 1: 1})
    assert ch.epsilon(2) == Polynomial({0: 1, 1: 1, 3: 1, 4: 1})
    with pytest.raises(ValueError):
        ch.epsilon(-1)


def test_unitary_poincare():
    assert ch.unitary_poincare(0) == ONE
    assert ch.unitary_poincare(1) == Polynomial({0: 1, 1: 1})
    assert ch.unitary_poincare(3) == ch.epsilon(3)
    with pytest.raises(ValueError):
        ch.unitary_poincare(-2)


@pytest.mark.parametrize("route", ALL_ROUTES, ids=lambda f: f.__name__)
@pytest.mark.parametrize("n", range(4))
def test_paper_values(route, n):
    assert route(n) == PAPER[n]


@pytest.mark.parametrize("n", range(1, 4))
def test_spectrum_paper_values(n):
    assert ch.spectrum_poincare(n) == PAPER[n]


def test_paper_l3_display():
    # L_3 = T^6 (1 + 2 eps_1 + eps_2)
    assert L3 == (1 + 2 * ch.epsilon(1) + ch.epsilon(2)).shift(6)


def test_l4_against_oracle():
    assert ch.normalized_l(4).poly == LT4
    assert ch.l_recursive(4) == LT4.shift(8)
    assert ch.l_genfun(4, 4) == ch.l_recursive(4)


def test_l5_routes_agree():
    want = ch.l_recursive(5)
    assert ch.spectrum_poincare(5) == want
    assert ch.l_direct(5) == want


def test_genfun_truncation():
    assert ch.l_genfun(0, 8) == ONE
    assert ch.l_genfun(2, 8) == L2
    for trunc in range(6, 12):
        assert ch.l_genfun(6, trunc) == ch.l_recursive(6)
    with pytest.raises(IndexError):
        ch.l_genfun(5, 3)


def test_master_series_coefficients():
    s = ch.master_series(5)
    assert [s[n] for n in range(6)] == [ch.l_recursive(n) for n in range(6)]


def test_total_rank():
    assert ch.total_rank(0) == 1
    assert ch.total_rank(2) == 3
    assert ch.total_rank(5) == 81


def test_normalized_l_invariants():
    for n in range(8):
        lt = ch.normalized_l(n)
        assert lt.denormalize() == ch.l_recursive(n)
        assert all(c >= 0 for _, c in lt.poly.terms)
        assert lt.poly.coefficient(0) == (1 if n == 0 else 2 ** (n - 1))


def test_enumerate_index_sequences():
    assert [s.indices for s in ch.enumerate_index_sequences(1)] == [(0,)]
    assert [s.indices for s in ch.enumerate_index_sequences(2)] == [(0,), (0, 1), (1,)]
    seqs = ch.enumerate_index_sequences(4)
    assert len(seqs) == 15
    assert [s.indices for s in seqs] == sorted(s.indices for s in seqs)
    assert ch.IndexSequence(3, (0, 2)).weight == 2 * 2 + 2
    with pytest.raises(ValueError):
        ch.enumerate_index_sequences(0)


@pytest.mark.parametrize("bad", [(), (1, 1), (2, 1), (0, 3)])
def test_index_sequence_validation(bad):
    with pytest.raises(ValueError):
        ch.IndexSequence(3, bad)


def test_enumerate_compositions():
    assert [c.parts for c in ch.enumerate_compositions(1)] == [(1,)]
    assert [c.parts for c in ch.enumerate_compositions(3)] == [(3,), (2, 1), (1, 2), (1, 1, 1)]
    assert len(ch.enumerate_compositions(6)) == 32
    with pytest.raises(ValueError):
        ch.enumerate_compositions(0)


def test_spectrum_summands():
    assert ch.spectrum_summands(2) == [ch.WedgeSummand(4, (1,)), ch.WedgeSummand(4, (0, 0))]
    assert ch.spectrum_summands(1) == [ch.WedgeSummand(2, (0,))]
    assert len(ch.spectrum_summands(3)) == 4
    with pytest.raises(ValueError):
        ch.spectrum_summands(0)
    with pytest.raises(ValueError):
        ch.spectrum_poincare(0)


def test_summand_poincare_sums_to_spectrum():
    for n in range(1, 7):
        total = sum((s.poincare() for s in ch.spectrum_summands(n)), Polynomial())
        assert total == ch.spectrum_poincare(n)


@pytest.mark.parametrize("n", range(1, 11))
def test_cardinalities(n):
    assert len(ch.enumerate_index_sequences(n)) == 2 ** n - 1
    assert len(ch.enumerate_compositions(n)) == 2 ** (n - 1)
    assert len(ch.spectrum_summands(n)) == 2 ** (n - 1)


@pytest.mark.parametrize("n", range(1, 11))
def test_partition_classes_partition_compositions(n):
    classes = {}
    for c in ch.enumerate_compositions(n):
        key = ch.PartitionWithMultiplicity.of(c.parts)
        classes[key] = classes.get(key, 0) + 1
    parts = ch.enumerate_partitions(n)
    assert set(classes) == set(parts)
    for p in parts:
        assert p.n == n
        assert classes[p] == p.multinomial
        assert p.multinomial == math.factorial(p.r) // math.prod(math.factorial(m) for _, m in p.multiplicities)


def test_partition_multiplicity_examples():
    p = ch.PartitionWithMultiplicity.of((1, 1, 2))
    assert p.multiplicities == ((1, 2), (2, 1))
    assert (p.n, p.r, p.multinomial) == (4, 3, 3)


@given(st.integers(0, 12))
def test_epsilon_laws(k):
    e = ch.epsilon(k)
    assert evaluate(e, 1) == 2 ** k
    assert e.degree == k * k
    assert all(e.coefficient(i) == e.coefficient(k * k - i) for i in range(k * k + 1))


def test_specialization_at_one():
    trunc = 10
    eps_one = ch.specialize(ch.epsilon_series(trunc), 1)
    assert eps_one == ch.rational_series([1, -1], [1, -2], trunc)
    lt_one = ch.specialize(ch.normalized_series(trunc), 1)
    assert lt_one == ch.rational_series([1, -2], [1, -3], trunc)
    assert [evaluate(c, 0) for c in lt_one.coeffs] == [1] + [3 ** (k - 1) for k in range(1, trunc + 1)]


def test_normalized_series_matches_recursion():
    s = ch.normalized_series(8)
    assert list(s.coeffs) == ch.normalized_sequence(8)


def test_verify_small():
    report = ch.verify(3)
    assert report.passed
    assert report.first_failure() is None
    keys = [(r.height, r.name) for r in report.results]
    assert keys == sorted(keys)
    assert len(keys) == 4 * 5


def test_verify_concurrent_is_deterministic():
    assert ch.verify(8, workers=4).results == ch.verify(8).results


def _corrupt(k_bad):
    def eps(k):
        p = ch.epsilon(k)
        return p + monomial(1, k * k + 1) if k == k_bad else p
    return eps


def test_verify_flags_corrupted_epsilon():
    report = ch.verify(6, eps=_corrupt(2))
    assert not report.passed
    first = report.first_failure()
    assert first.height == 2 and first.name.startswith("epsilon")
    agreement = [r for r in report.failures if r.name == "route_agreement"]
    # eps_2 first enters the recursion at height 3
    assert agreement[0].height == 3
    assert "direct" in agreement[0].counterexample


def test_verify_rejects_zero():
    with pytest.raises(ValueError):
        ch.verify(0)
