"""Exact truncated polynomial algebra in formal degree-1 symbols.

A :class:`GradedSeries` is a finite sum of monomials in the symbols
``a1, ..., an`` with `fractions.Fraction` coefficients, truncated above a
fixed total degree ``D``.  Every operation is exact; there is no floating
point anywhere.  Two series are equal exactly when their canonical term
maps agree, so identity checks reduce to dictionary equality.

The truncation degree is part of the value, not ambient state: combining
series with different symbol counts or truncation degrees raises
:class:`MismatchError` instead of coercing silently.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from math import factorial
from numbers import Rational

Monomial = tuple[int, ...]


class MismatchError(ValueError):
    """Operands live in different ambients (symbol count or truncation degree)."""


def _coefficient(value) -> Fraction:
    if isinstance(value, float):
        raise TypeError("floating-point coefficients are not allowed; use Fraction")
    if not isinstance(value, Rational):
        raise TypeError(f"coefficient must be an integer or Fraction, got {value!r}")
    return Fraction(value)


class GradedSeries:
    """Sparse polynomial in ``symbol_count`` symbols, truncated at total degree
    ``truncation_degree``.

    Terms are keyed by exponent tuples.  The constructor canonicalizes:
    zero coefficients are dropped and monomials of total degree above the
    truncation bound are discarded (that is what truncation means for every
    arithmetic operation, so the constructor behaves the same way).
    """

    __slots__ = ("symbol_count", "truncation_degree", "_terms")

    def __init__(self, symbol_count: int, truncation_degree: int, terms=None):
        if symbol_count < 0:
            raise ValueError("symbol_count must be non-negative")
        if truncation_degree < 0:
            raise ValueError("truncation_degree must be non-negative")
        canonical: dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != symbol_count:
                raise ValueError(
                    f"monomial {mono} has {len(mono)} exponents, expected {symbol_count}"
                )
            if any(not isinstance(e, int) or e < 0 for e in mono):
                raise ValueError(f"monomial {mono} has invalid exponents")
            if sum(mono) > truncation_degree:
                continue
            value = _coefficient(coeff)
            if value:
                canonical[mono] = value
        object.__setattr__(self, "symbol_count", symbol_count)
        object.__setattr__(self, "truncation_degree", truncation_degree)
        object.__setattr__(self, "_terms", canonical)

    def __setattr__(self, name, value):
        raise AttributeError("GradedSeries is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, symbol_count: int, truncation_degree: int) -> "GradedSeries":
        return cls(symbol_count, truncation_degree, {})

    @classmethod
    def constant(cls, value, symbol_count: int, truncation_degree: int) -> "GradedSeries":
        mono = (0,) * symbol_count
        return cls(symbol_count, truncation_degree, {mono: value})

    @classmethod
    def one(cls, symbol_count: int, truncation_degree: int) -> "GradedSeries":
        return cls.constant(1, symbol_count, truncation_degree)

    @classmethod
    def symbol(cls, index: int, symbol_count: int, truncation_degree: int) -> "GradedSeries":
        """The degree-1 symbol ``a_{index+1}``."""
        if not 0 <= index < symbol_count:
            raise ValueError(f"symbol index {index} out of range for {symbol_count} symbols")
        mono = tuple(1 if i == index else 0 for i in range(symbol_count))
        return cls(symbol_count, truncation_degree, {mono: 1})

    @classmethod
    def linear_form(cls, coefficients, truncation_degree: int) -> "GradedSeries":
        """Sum c_i * a_i for an integer/rational coefficient vector."""
        coefficients = tuple(coefficients)
        n = len(coefficients)
        terms = {}
        for i, c in enumerate(coefficients):
            if c:
                mono = tuple(1 if j == i else 0 for j in range(n))
                terms[mono] = c
        return cls(n, truncation_degree, terms)

    # -- inspection ---------------------------------------------------

    def terms(self):
        """Iterate (monomial, coefficient) pairs in a deterministic order."""
        return iter(sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), kv[0])))

    def coefficient(self, monomial) -> Fraction:
        return self._terms.get(tuple(monomial), Fraction(0))

    @property
    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.symbol_count, Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def component(self, degree: int) -> "GradedSeries":
        """The homogeneous part of the given total degree."""
        if not 0 <= degree <= self.truncation_degree:
            raise ValueError(
                f"degree {degree} out of range [0, {self.truncation_degree}]"
            )
        picked = {m: c for m, c in self._terms.items() if sum(m) == degree}
        return GradedSeries(self.symbol_count, self.truncation_degree, picked)

    def truncate(self, truncation_degree: int) -> "GradedSeries":
        """Reduce the truncation degree, discarding higher terms."""
        if truncation_degree > self.truncation_degree:
            raise ValueError("cannot raise the truncation degree of a series")
        return GradedSeries(self.symbol_count, truncation_degree, self._terms)

    # -- ring operations ----------------------------------------------

    def _check_compatible(self, other: "GradedSeries"):
        if (
            self.symbol_count != other.symbol_count
            or self.truncation_degree != other.truncation_degree
        ):
            raise MismatchError(
                f"cannot combine series over {self.symbol_count} symbols at degree "
                f"{self.truncation_degree} with series over {other.symbol_count} "
                f"symbols at degree {other.truncation_degree}"
            )

    def _coerce(self, value):
        if isinstance(value, GradedSeries):
            return value
        return GradedSeries.constant(value, self.symbol_count, self.truncation_degree)

    def __add__(self, other):
        if not isinstance(other, (GradedSeries, Rational)) or isinstance(other, float):
            return NotImplemented
        other = self._coerce(other)
        self._check_compatible(other)
        merged = dict(self._terms)
        for mono, coeff in other._terms.items():
            merged[mono] = merged.get(mono, Fraction(0)) + coeff
        return GradedSeries(self.symbol_count, self.truncation_degree, merged)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        negated = {m: -c for m, c in self._terms.items()}
        return GradedSeries(self.symbol_count, self.truncation_degree, negated)

    def __sub__(self, other):
        if not isinstance(other, (GradedSeries, Rational)) or isinstance(other, float):
            return NotImplemented
        return self.__add__(-self._coerce(other))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if not isinstance(other, (GradedSeries, Rational)) or isinstance(other, float):
            return NotImplemented
        if not isinstance(other, GradedSeries):
            scaled = {m: c * other for m, c in self._terms.items()}
            return GradedSeries(self.symbol_count, self.truncation_degree, scaled)
        self._check_compatible(other)
        bound = self.truncation_degree
        by_degree: dict[int, list] = defaultdict(list)
        for mono, coeff in other._terms.items():
            by_degree[sum(mono)].append((mono, coeff))
        product: dict[Monomial, Fraction] = {}
        for mono_x, coeff_x in self._terms.items():
            degree_x = sum(mono_x)
            for degree_y, bucket in by_degree.items():
                if degree_x + degree_y > bound:
                    continue
                for mono_y, coeff_y in bucket:
                    key = tuple(a + b for a, b in zip(mono_x, mono_y))
                    value = product.get(key)
                    product[key] = coeff_x * coeff_y if value is None else value + coeff_x * coeff_y
        return GradedSeries(self.symbol_count, self.truncation_degree, product)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("series exponent must be a non-negative integer")
        result = GradedSeries.one(self.symbol_count, self.truncation_degree)
        base = self
        k = exponent
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def invert(self) -> "GradedSeries":
        """Multiplicative inverse at the same truncation degree.

        Requires a nonzero constant term.  Writes x = c*(1 - N) with N of
        positive valuation and expands the Neumann series sum N^k, which
        terminates because N is nilpotent under truncation.
        """
        c = self.constant_term
        if not c:
            raise ValueError("series with zero constant term is not invertible")
        one = GradedSeries.one(self.symbol_count, self.truncation_degree)
        nil = one - self * (1 / c)
        result = one
        power = one
        for _ in range(self.truncation_degree):
            power = power * nil
            if power.is_zero:
                break
            result = result + power
        return result * (1 / c)

    def exp(self) -> "GradedSeries":
        """Exponential sum x^k / k!, defined for zero constant term."""
        if self.constant_term:
            raise ValueError("exp requires a series with zero constant term")
        result = GradedSeries.one(self.symbol_count, self.truncation_degree)
        power = result
        for k in range(1, self.truncation_degree + 1):
            power = power * self
            if power.is_zero:
                break
            result = result + power * Fraction(1, factorial(k))
        return result

    # -- comparison / display -------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, GradedSeries):
            return NotImplemented
        return (
            self.symbol_count == other.symbol_count
            and self.truncation_degree == other.truncation_degree
            and self._terms == other._terms
        )

    __hash__ = None

    def _render_monomial(self, mono: Monomial) -> str:
        parts = []
        for i, e in enumerate(mono):
            if e == 1:
                parts.append(f"a{i + 1}")
            elif e > 1:
                parts.append(f"a{i + 1}^{e}")
        return "*".join(parts)

    def __str__(self):
        if not self._terms:
            return "0"
        chunks = []
        for mono, coeff in self.terms():
            body = self._render_monomial(mono)
            if not body:
                text = str(coeff)
            elif coeff == 1:
                text = body
            elif coeff == -1:
                text = f"-{body}"
            else:
                text = f"{coeff}*{body}"
            if chunks and not text.startswith("-"):
                chunks.append(f"+ {text}")
            elif chunks:
                chunks.append(f"- {text[1:]}")
            else:
                chunks.append(text)
        return " ".join(chunks)

    def __repr__(self):
        return (
            f"GradedSeries(n={self.symbol_count}, D={self.truncation_degree}, "
            f"{self})"
        )
