"""Identity verifiers, checked against independently expanded oracles."""

import random
from fractions import Fraction

import pytest

from charcalc.series import GradedSeries
from charcalc.lambda_ring import (
    KElement,
    alternating_lambda_sum,
    ch,
    chern_k,
    gamma_k,
    todd,
)
from charcalc.verify import (
    generic_lines,
    repeated_root_lines,
    top_degree_vanishes,
    verify_borel_serre,
    verify_ch_gamma,
    verify_gala,
    verify_hom_laws,
    verify_prop_chtd,
)

from oracles import alternating_product, exp_coefficients


def random_effective_lines(rng, rank, force_repeat=False):
    """A list of `rank` small roots, optionally with a forced repeat."""
    n = max(1, rank - 1) if force_repeat else rank
    roots = [tuple(rng.randint(-1, 1) for _ in range(n)) for _ in range(rank)]
    if force_repeat and rank >= 2:
        roots[-1] = roots[0]
    return roots


# -- gala ---------------------------------------------------------------------


@pytest.mark.parametrize("rank", range(1, 7))
def test_gala_generic_lines(rank):
    assert verify_gala(generic_lines(rank)).ok


@pytest.mark.parametrize("rank", range(2, 7))
def test_gala_repeated_root(rank):
    assert verify_gala(repeated_root_lines(rank)).ok


def test_gala_both_sides_match_direct_expansion():
    rng = random.Random(20)
    for _ in range(25):
        rank = rng.randint(1, 4)
        roots = random_effective_lines(rng, rank, force_repeat=rng.random() < 0.5)
        x = KElement.sum_of_lines(roots)
        oracle = alternating_product(roots)
        lhs = gamma_k(x - rank * KElement.unit(x.symbol_count), rank)
        if rank % 2:
            lhs = -lhs
        rhs = alternating_lambda_sum(x)
        assert dict(lhs.terms()) == oracle
        assert dict(rhs.terms()) == oracle
        assert verify_gala(x).ok


def test_gala_rejects_negative_rank():
    with pytest.raises(ValueError):
        verify_gala(-KElement.unit(1))


# -- Borel-Serre -----------------------------------------------------------------


@pytest.mark.parametrize("n", range(1, 6))
def test_borel_serre(n):
    assert verify_borel_serre(n, n).ok


def test_borel_serre_exact_above_top_degree():
    # the identity telescopes exactly, so higher truncations also agree
    assert verify_borel_serre(2, 5).ok
    assert verify_borel_serre(3, 5).ok


def test_borel_serre_n1_telescopes():
    # (1 - e^{-a}) * a/(1 - e^{-a}) = a
    result = verify_borel_serre(1, 4)
    assert result.ok


def test_borel_serre_rejects_low_degree():
    with pytest.raises(ValueError):
        verify_borel_serre(3, 2)


# -- Chern character of the top gamma operation ------------------------------------


@pytest.mark.parametrize("n", range(1, 6))
def test_ch_gamma(n):
    assert verify_ch_gamma(n, n + 1).ok


def test_ch_gamma_n1_is_constant_one():
    assert verify_ch_gamma(1, 2).ok
    x = generic_lines(1)
    value = ch(gamma_k(x - KElement.unit(1), 0), 2)
    assert value == GradedSeries.one(1, 2)


def test_ch_gamma_n2_frozen_expansion():
    # gamma^1(x - 2[0]) maps to (e^{a1} - 1) + (e^{a2} - 1)
    x = generic_lines(2)
    value = ch(gamma_k(x - 2 * KElement.unit(2), 1), 3)
    coeffs = exp_coefficients(3)
    expected_terms = {}
    for k in range(1, 4):
        expected_terms[(k, 0)] = coeffs[k]
        expected_terms[(0, k)] = coeffs[k]
    assert value == GradedSeries(2, 3, expected_terms)


# -- concentration of the product ----------------------------------------------------


@pytest.mark.parametrize("n", range(1, 6))
def test_prop_chtd(n):
    assert verify_prop_chtd(n).ok


def test_prop_chtd_n1_components():
    # P = ch(gamma^0) * Td([-a1]) = 1 - a1/2 at truncation 1
    x = generic_lines(1)
    P = ch(gamma_k(x - KElement.unit(1), 0), 1) * todd(x.dual(), 1)
    assert P.component(0) == GradedSeries.one(1, 1)
    assert P.component(1) == GradedSeries(1, 1, {(1,): Fraction(-1, 2)})


def test_rank_zero_concentration():
    # ch(gamma^k(y)) vanishes below degree k for rank-zero y
    rng = random.Random(21)
    for _ in range(15):
        n = rng.randint(1, 3)
        y = KElement.zero(n)
        for _ in range(rng.randint(1, 3)):
            root = tuple(rng.randint(-1, 1) for _ in range(n))
            c = rng.choice([-2, -1, 1, 2])
            y = y + c * (KElement.line(root) - KElement.unit(n))
        assert y.rank == 0
        for k in range(4):
            image = ch(gamma_k(y, k), 4)
            for degree in range(k):
                assert image.component(degree).is_zero


# -- top-degree vanishing ---------------------------------------------------------


def test_top_degree_vanishing_randomized():
    rng = random.Random(22)
    n, D = 3, 5
    top = chern_k(generic_lines(n), n, D)
    for _ in range(20):
        terms = {}
        for _ in range(rng.randint(1, 4)):
            mono = tuple(rng.randint(0, 2) for _ in range(n))
            if 1 <= sum(mono) <= D:
                terms[mono] = Fraction(rng.randint(-5, 5), rng.randint(1, 5))
        positive = GradedSeries(n, D, terms)
        assert positive.component(0).is_zero
        assert top_degree_vanishes(top * positive, n)


def test_top_degree_vanishing_zero_partner():
    n = 2
    top = chern_k(generic_lines(n), n, 4)
    assert top_degree_vanishes(top * GradedSeries.zero(n, 4), n)


def test_top_degree_vanishing_requires_reach():
    with pytest.raises(ValueError):
        top_degree_vanishes(GradedSeries.one(1, 2), 3)


def test_top_degree_vanishing_detects_nonzero():
    series = GradedSeries(1, 3, {(2,): 1})
    assert not top_degree_vanishes(series, 2)


# -- structural law sweep -----------------------------------------------------------


@pytest.mark.parametrize("n", (1, 2, 3))
def test_hom_laws(n):
    result = verify_hom_laws(n, cases=15, seed=n)
    assert result.ok, result.detail
