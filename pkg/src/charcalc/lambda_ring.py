"""Formal virtual bundles split into line symbols, and the classes built
from them.

A :class:`KElement` is an integer group-ring combination of *lines*: each
line is labelled by its first Chern class, an integer lattice vector in the
ambient symbols ``a1..an`` (tensoring lines adds the vectors, so the group
ring multiplication adds roots).  On top of that live the exterior-power
generating series lambda_t and gamma_t (as :class:`TSeries`), and the maps
into :class:`~charcalc.series.GradedSeries`: Chern character, total Chern
class, and Todd class.

Everything is exact and immutable; all identities checked downstream are
dictionary equalities.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from .series import GradedSeries, MismatchError

Root = tuple[int, ...]


class KElement:
    """Finite integer combination of lines, keyed by their root vectors.

    The zero vector is the trivial line (the multiplicative unit).  The
    rank is the sum of multiplicities and may be negative for virtual
    elements.
    """

    __slots__ = ("symbol_count", "_terms")

    def __init__(self, symbol_count: int, terms=None):
        if symbol_count < 0:
            raise ValueError("symbol_count must be non-negative")
        canonical: dict[Root, int] = {}
        for root, mult in (terms or {}).items():
            root = tuple(root)
            if len(root) != symbol_count:
                raise ValueError(
                    f"root {root} has length {len(root)}, expected {symbol_count}"
                )
            if any(not isinstance(e, int) for e in root):
                raise ValueError(f"root {root} must have integer entries")
            if not isinstance(mult, int) or isinstance(mult, bool):
                raise TypeError(f"multiplicity must be an integer, got {mult!r}")
            if mult:
                canonical[root] = mult
        object.__setattr__(self, "symbol_count", symbol_count)
        object.__setattr__(self, "_terms", canonical)

    def __setattr__(self, name, value):
        raise AttributeError("KElement is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, symbol_count: int) -> "KElement":
        return cls(symbol_count, {})

    @classmethod
    def unit(cls, symbol_count: int) -> "KElement":
        """The trivial line [0]."""
        return cls(symbol_count, {(0,) * symbol_count: 1})

    @classmethod
    def line(cls, root) -> "KElement":
        root = tuple(root)
        return cls(len(root), {root: 1})

    @classmethod
    def sum_of_lines(cls, roots) -> "KElement":
        roots = [tuple(r) for r in roots]
        if not roots:
            raise ValueError("sum_of_lines needs at least one root")
        n = len(roots[0])
        terms: dict[Root, int] = {}
        for r in roots:
            terms[r] = terms.get(r, 0) + 1
        return cls(n, terms)

    # -- inspection ---------------------------------------------------

    def terms(self):
        """Iterate (root, multiplicity) pairs in a deterministic order."""
        return iter(sorted(self._terms.items()))

    def multiplicity(self, root) -> int:
        return self._terms.get(tuple(root), 0)

    @property
    def rank(self) -> int:
        """The augmentation: sum of multiplicities."""
        return sum(self._terms.values())

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def dual(self) -> "KElement":
        """Negate every root; multiplicities are preserved."""
        return KElement(self.symbol_count, {tuple(-e for e in r): m for r, m in self._terms.items()})

    # -- group-ring operations ------------------------------------------

    def _check_compatible(self, other: "KElement"):
        if self.symbol_count != other.symbol_count:
            raise MismatchError(
                f"cannot combine elements over {self.symbol_count} and "
                f"{other.symbol_count} symbols"
            )

    def __add__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = other * KElement.unit(self.symbol_count)
        if not isinstance(other, KElement):
            return NotImplemented
        self._check_compatible(other)
        merged = dict(self._terms)
        for root, mult in other._terms.items():
            merged[root] = merged.get(root, 0) + mult
        return KElement(self.symbol_count, merged)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return KElement(self.symbol_count, {r: -m for r, m in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = other * KElement.unit(self.symbol_count)
        if not isinstance(other, KElement):
            return NotImplemented
        return self.__add__(-other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return KElement(self.symbol_count, {r: m * other for r, m in self._terms.items()})
        if not isinstance(other, KElement):
            return NotImplemented
        self._check_compatible(other)
        product: dict[Root, int] = {}
        for r1, m1 in self._terms.items():
            for r2, m2 in other._terms.items():
                key = tuple(a + b for a, b in zip(r1, r2))
                product[key] = product.get(key, 0) + m1 * m2
        return KElement(self.symbol_count, product)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __eq__(self, other):
        if not isinstance(other, KElement):
            return NotImplemented
        return self.symbol_count == other.symbol_count and self._terms == other._terms

    __hash__ = None

    def _render_root(self, root: Root) -> str:
        if not any(root):
            return "0"
        parts = []
        for i, e in enumerate(root):
            if e == 1:
                parts.append(f"+a{i + 1}")
            elif e == -1:
                parts.append(f"-a{i + 1}")
            elif e:
                parts.append(f"{e:+d}a{i + 1}")
        text = "".join(parts)
        return text[1:] if text.startswith("+") else text

    def __str__(self):
        if not self._terms:
            return "0"
        chunks = []
        for root, mult in self.terms():
            body = f"[{self._render_root(root)}]"
            if mult == 1:
                text = body
            elif mult == -1:
                text = f"-{body}"
            else:
                text = f"{mult}{body}"
            if chunks and not text.startswith("-"):
                chunks.append(f"+ {text}")
            elif chunks:
                chunks.append(f"- {text[1:]}")
            else:
                chunks.append(text)
        return " ".join(chunks)

    def __repr__(self):
        return f"KElement(n={self.symbol_count}, {self})"


class TSeries:
    """Polynomial in an auxiliary variable t with KElement coefficients,
    truncated at a fixed power of t."""

    __slots__ = ("symbol_count", "_coeffs")

    def __init__(self, coefficients):
        coeffs = list(coefficients)
        if not coeffs:
            raise ValueError("TSeries needs at least the t^0 coefficient")
        n = coeffs[0].symbol_count
        for c in coeffs:
            if not isinstance(c, KElement):
                raise TypeError("TSeries coefficients must be KElements")
            if c.symbol_count != n:
                raise MismatchError("TSeries coefficients over mixed symbol counts")
        object.__setattr__(self, "symbol_count", n)
        object.__setattr__(self, "_coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("TSeries is immutable")

    @classmethod
    def one(cls, symbol_count: int, t_max: int) -> "TSeries":
        unit = KElement.unit(symbol_count)
        zero = KElement.zero(symbol_count)
        return cls([unit] + [zero] * t_max)

    @property
    def t_max(self) -> int:
        return len(self._coeffs) - 1

    def coefficient(self, power: int) -> KElement:
        if not 0 <= power <= self.t_max:
            raise ValueError(f"t-power {power} out of range [0, {self.t_max}]")
        return self._coeffs[power]

    def _check_compatible(self, other: "TSeries"):
        if self.symbol_count != other.symbol_count or self.t_max != other.t_max:
            raise MismatchError("TSeries ambients differ (symbol count or t truncation)")

    def __mul__(self, other):
        if not isinstance(other, TSeries):
            return NotImplemented
        self._check_compatible(other)
        zero = KElement.zero(self.symbol_count)
        out = [zero] * (self.t_max + 1)
        for i, ci in enumerate(self._coeffs):
            if ci.is_zero:
                continue
            for j in range(self.t_max + 1 - i):
                cj = other._coeffs[j]
                if cj.is_zero:
                    continue
                out[i + j] = out[i + j] + ci * cj
        return TSeries(out)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("TSeries exponent must be a non-negative integer")
        result = TSeries.one(self.symbol_count, self.t_max)
        base = self
        k = exponent
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def invert(self) -> "TSeries":
        """Inverse of a TSeries whose constant coefficient is the unit line."""
        unit = KElement.unit(self.symbol_count)
        if self._coeffs[0] != unit:
            raise ValueError("can only invert a TSeries with unit constant coefficient")
        out = [unit]
        for k in range(1, self.t_max + 1):
            acc = KElement.zero(self.symbol_count)
            for j in range(1, k + 1):
                acc = acc + self._coeffs[j] * out[k - j]
            out.append(-acc)
        return TSeries(out)

    def __eq__(self, other):
        if not isinstance(other, TSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    __hash__ = None

    def __repr__(self):
        inner = ", ".join(f"t^{k}: {c}" for k, c in enumerate(self._coeffs))
        return f"TSeries({inner})"


# -- lambda and gamma operations ------------------------------------------


def _tseries_power(base: TSeries, exponent: int) -> TSeries:
    if exponent >= 0:
        return base ** exponent
    return base.invert() ** (-exponent)


def lambda_t(x: KElement, t_max: int) -> TSeries:
    """Exterior-power generating series, truncated at t^t_max.

    A single line [r] has lambda_t = 1 + t[r]; sums extend multiplicatively
    and negative multiplicities invert the series in t.
    """
    if t_max < 0:
        raise ValueError("t_max must be non-negative")
    n = x.symbol_count
    result = TSeries.one(n, t_max)
    zero = KElement.zero(n)
    for root, mult in x.terms():
        factor_coeffs = [KElement.unit(n)]
        if t_max >= 1:
            factor_coeffs.append(KElement.line(root))
            factor_coeffs.extend([zero] * (t_max - 1))
        factor = TSeries(factor_coeffs)
        result = result * _tseries_power(factor, mult)
    return result


def gamma_t(x: KElement, t_max: int) -> TSeries:
    """Substitute s = t/(1-t) into lambda_s(x) and re-truncate at t^t_max.

    Uses s^k = sum_{j >= k} C(j-1, k-1) t^j, so each gamma coefficient is an
    integer combination of lambda coefficients.
    """
    lam = lambda_t(x, t_max)
    n = x.symbol_count
    out = [KElement.unit(n)]
    for j in range(1, t_max + 1):
        acc = KElement.zero(n)
        for k in range(1, j + 1):
            acc = acc + lam.coefficient(k) * comb(j - 1, k - 1)
        out.append(acc)
    return TSeries(out)


def lambda_k(x: KElement, k: int) -> KElement:
    """The k-th exterior power coefficient of lambda_t(x)."""
    return lambda_t(x, k).coefficient(k)


def gamma_k(x: KElement, k: int) -> KElement:
    """The k-th gamma operation, read off gamma_t(x)."""
    return gamma_t(x, k).coefficient(k)


def alternating_lambda_sum(x: KElement) -> KElement:
    """Sum of (-1)^i lambda^i(x) for i = 0..rank(x)."""
    d = x.rank
    if d < 0:
        raise ValueError(f"alternating lambda sum needs non-negative rank, got {d}")
    lam = lambda_t(x, d)
    acc = KElement.zero(x.symbol_count)
    for i in range(d + 1):
        term = lam.coefficient(i)
        acc = acc + (-term if i % 2 else term)
    return acc


# -- characteristic classes -------------------------------------------------


def _root_form(root: Root, truncation_degree: int) -> GradedSeries:
    return GradedSeries.linear_form(root, truncation_degree)


def _series_power(base: GradedSeries, exponent: int) -> GradedSeries:
    if exponent >= 0:
        return base ** exponent
    return base.invert() ** (-exponent)


def ch(x: KElement, truncation_degree: int) -> GradedSeries:
    """Chern character: additive, with ch([r]) = exp(c1(r))."""
    acc = GradedSeries.zero(x.symbol_count, truncation_degree)
    for root, mult in x.terms():
        acc = acc + mult * _root_form(root, truncation_degree).exp()
    return acc


def total_chern(x: KElement, truncation_degree: int) -> GradedSeries:
    """Total Chern class: product of (1 + c1(r))^mult over the lines of x."""
    acc = GradedSeries.one(x.symbol_count, truncation_degree)
    for root, mult in x.terms():
        factor = 1 + _root_form(root, truncation_degree)
        acc = acc * _series_power(factor, mult)
    return acc


def chern_k(x: KElement, k: int, truncation_degree: int | None = None) -> GradedSeries:
    """The degree-k Chern class, as a homogeneous series."""
    D = k if truncation_degree is None else truncation_degree
    if D < k:
        raise ValueError("truncation degree must be at least k")
    return total_chern(x, D).component(k)


def _todd_factor(root: Root, truncation_degree: int) -> GradedSeries:
    # Q(l) = l / (1 - e^{-l}), expanded as the inverse of
    # sum_k (-l)^k / (k+1)!  which has unit constant term.
    form = _root_form(root, truncation_degree)
    acc = GradedSeries.one(form.symbol_count, truncation_degree)
    power = acc
    for k in range(1, truncation_degree + 1):
        power = power * form
        if power.is_zero:
            break
        sign = -1 if k % 2 else 1
        acc = acc + power * Fraction(sign, factorial(k + 1))
    return acc.invert()


def todd(x: KElement, truncation_degree: int) -> GradedSeries:
    """Todd class: multiplicative, with line value c1 / (1 - e^{-c1})."""
    acc = GradedSeries.one(x.symbol_count, truncation_degree)
    for root, mult in x.terms():
        acc = acc * _series_power(_todd_factor(root, truncation_degree), mult)
    return acc
