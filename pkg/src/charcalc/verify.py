"""Exact verifiers for the characteristic-class identities.

Each verifier instantiates the relevant virtual bundle with generic
independent line symbols (one symbol per line, so identities established
here hold universally by the splitting principle), evaluates both sides of
the identity with exact arithmetic, and reports equality.  Failure is a
report, never an exception.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .lambda_ring import (
    KElement,
    TSeries,
    alternating_lambda_sum,
    ch,
    chern_k,
    gamma_k,
    gamma_t,
    lambda_t,
    todd,
    total_chern,
)
from .series import GradedSeries


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one verifier run."""

    check: str
    params: dict = field(default_factory=dict)
    ok: bool = False
    detail: str = ""

    def as_dict(self) -> dict:
        return {
            "check": self.check,
            "params": dict(self.params),
            "ok": self.ok,
            "detail": self.detail,
        }


def generic_lines(n: int) -> KElement:
    """The sum of n independent lines [a1] + ... + [an] over n symbols."""
    if n < 1:
        raise ValueError("need at least one line")
    roots = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    return KElement.sum_of_lines(roots)


def repeated_root_lines(rank: int) -> KElement:
    """An effective element of the given rank with one doubled line."""
    if rank < 2:
        raise ValueError("a repeated root needs rank at least 2")
    n = rank - 1
    roots = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    return KElement.sum_of_lines(roots + [roots[0]])


def verify_gala(x: KElement) -> CheckResult:
    """Check (-1)^d gamma^d(x - d[0]) = sum_{i=0}^{d} (-1)^i lambda^i(x)
    for d = rank(x)."""
    d = x.rank
    if d < 0:
        raise ValueError(f"element must have non-negative rank, got {d}")
    reduced = x - d * KElement.unit(x.symbol_count)
    lhs = gamma_k(reduced, d)
    if d % 2:
        lhs = -lhs
    rhs = alternating_lambda_sum(x)
    ok = lhs == rhs
    detail = "" if ok else f"lhs = {lhs}; rhs = {rhs}"
    return CheckResult("gala", {"rank": d}, ok, detail)


def verify_borel_serre(n: int, max_degree: int | None = None) -> CheckResult:
    """Check ch(sum (-1)^i lambda^i(E*)) * Td(E) = c_n(E) for E a sum of n
    generic lines, exact in every degree up to the truncation."""
    if n < 1:
        raise ValueError("need at least one line")
    D = n if max_degree is None else max_degree
    if D < n:
        raise ValueError(f"truncation degree must be at least {n}")
    E = generic_lines(n)
    lhs = ch(alternating_lambda_sum(E.dual()), D) * todd(E, D)
    rhs = chern_k(E, n, D)
    ok = lhs == rhs
    detail = "" if ok else f"lhs = {lhs}; rhs = {rhs}"
    return CheckResult("borel_serre", {"n": n, "max_degree": D}, ok, detail)


def verify_ch_gamma(n: int, max_degree: int | None = None) -> CheckResult:
    """Check ch(gamma^{n-1}(x - n[0])) = sum_i prod_{j != i} (e^{a_j} - 1)
    for x a sum of n generic lines."""
    if n < 1:
        raise ValueError("need at least one line")
    D = n + 1 if max_degree is None else max_degree
    x = generic_lines(n)
    reduced = x - n * KElement.unit(n)
    lhs = ch(gamma_k(reduced, n - 1), D)
    exp_minus_one = [
        GradedSeries.symbol(j, n, D).exp() - 1 for j in range(n)
    ]
    rhs = GradedSeries.zero(n, D)
    for i in range(n):
        term = GradedSeries.one(n, D)
        for j in range(n):
            if j != i:
                term = term * exp_minus_one[j]
        rhs = rhs + term
    ok = lhs == rhs
    detail = "" if ok else f"lhs = {lhs}; rhs = {rhs}"
    return CheckResult("ch_gamma", {"n": n, "max_degree": D}, ok, detail)


def verify_prop_chtd(n: int) -> CheckResult:
    """Three-part check on P = ch(gamma^{n-1}(x - n[0])) * Td(x*) at
    truncation n, for x a sum of n generic lines:

    1. components of P vanish below degree n-1 (the product is concentrated
       in the top two degrees),
    2. the degree n-1 component equals c_{n-1}(x),
    3. the degree n component equals -(n/2) c_n(x).
    """
    if n < 1:
        raise ValueError("need at least one line")
    D = n
    x = generic_lines(n)
    reduced = x - n * KElement.unit(n)
    P = ch(gamma_k(reduced, n - 1), D) * todd(x.dual(), D)
    chern = total_chern(x, D)
    failures = []
    for k in range(n - 1):
        if not P.component(k).is_zero:
            failures.append(f"degree {k} component is {P.component(k)}, expected 0")
    expected_sub = chern.component(n - 1)
    if P.component(n - 1) != expected_sub:
        failures.append(
            f"degree {n - 1} component is {P.component(n - 1)}, expected {expected_sub}"
        )
    expected_top = Fraction(-n, 2) * chern.component(n)
    if P.component(n) != expected_top:
        failures.append(
            f"degree {n} component is {P.component(n)}, expected {expected_top}"
        )
    return CheckResult("prop_chtd", {"n": n}, not failures, "; ".join(failures))


def top_degree_vanishes(x: GradedSeries, d: int) -> bool:
    """True iff the degree-d component of x vanishes.

    The intended use: x is a product of a homogeneous degree-d form with a
    series supported in degrees >= 1, so every monomial of x has degree
    strictly above d and the extraction at d must give zero.
    """
    if x.truncation_degree < d:
        raise ValueError("series truncation does not reach the requested degree")
    return x.component(d).is_zero


def _random_root(rng: random.Random, n: int) -> tuple:
    return tuple(rng.randint(-1, 1) for _ in range(n))


def random_k_element(
    rng: random.Random,
    n: int,
    max_terms: int = 3,
    effective: bool = False,
) -> KElement:
    """Small random group-ring element for property checks."""
    terms: dict[tuple, int] = {}
    for _ in range(rng.randint(1, max_terms)):
        root = _random_root(rng, n)
        mult = rng.randint(1, 2) if effective else rng.choice([-2, -1, 1, 2])
        terms[root] = terms.get(root, 0) + mult
    return KElement(n, terms)


def verify_hom_laws(
    n: int,
    max_degree: int = 3,
    cases: int = 20,
    seed: int = 0,
) -> CheckResult:
    """Randomized exact check of the structural laws: lambda_t and Todd
    multiplicativity, the Chern-character ring homomorphism, the gamma
    inverse law, and the Chern-class dual sign rule."""
    rng = random.Random(seed)
    D = max_degree
    t_max = 3
    failures = []
    for case in range(cases):
        x = random_k_element(rng, n)
        y = random_k_element(rng, n)
        if lambda_t(x + y, t_max) != lambda_t(x, t_max) * lambda_t(y, t_max):
            failures.append(f"case {case}: lambda_t not multiplicative on {x}, {y}")
        if gamma_t(x, t_max) * gamma_t(-x, t_max) != TSeries.one(n, t_max):
            failures.append(f"case {case}: gamma_t inverse law fails on {x}")
        if ch(x + y, D) != ch(x, D) + ch(y, D):
            failures.append(f"case {case}: ch not additive on {x}, {y}")
        if ch(x * y, D) != ch(x, D) * ch(y, D):
            failures.append(f"case {case}: ch not multiplicative on {x}, {y}")
        if todd(x + y, D) != todd(x, D) * todd(y, D):
            failures.append(f"case {case}: Todd not multiplicative on {x}, {y}")
        k = rng.randint(0, D)
        sign = -1 if k % 2 else 1
        if chern_k(x.dual(), k, D) != sign * chern_k(x, k, D):
            failures.append(f"case {case}: dual sign rule fails at k={k} on {x}")
        if failures:
            break
    return CheckResult(
        "homomorphism",
        {"n": n, "max_degree": D, "cases": cases},
        not failures,
        "; ".join(failures),
    )
