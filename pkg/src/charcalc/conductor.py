"""Bloch conductor arithmetic on combinatorial normal-crossings fiber data.

A bad fiber is described by its irreducible components (with
multiplicities) and the intersection strata T_J = intersection of the
components in J, each carrying an integer Euler characteristic.  Closed and
open (compactly supported) strata characteristics determine each other by
inclusion-exclusion over the subset lattice; everything downstream — the
fiber Euler characteristic, the per-prime degree of the localized top Chern
class, the conductor exponents, and log|eps| — is exact integer and
rational arithmetic on those numbers.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import gcd, isqrt


class ModelValidationError(ValueError):
    """Structurally invalid fiber or model data."""


class TamenessError(ValueError):
    """A component multiplicity is divisible by the residue characteristic."""

    def __init__(self, prime: int, offenders: tuple[str, ...]):
        self.prime = prime
        self.offenders = offenders
        names = ", ".join(offenders)
        super().__init__(
            f"fiber at p={prime} is not tame: p divides the multiplicity of {names}"
        )


class ConsistencyError(ValueError):
    """Fibers imply contradictory generic-fiber Euler characteristics."""


@dataclass(frozen=True)
class Component:
    id: str
    multiplicity: int
    chi_open: int | None = None


@dataclass(frozen=True)
class Stratum:
    components: frozenset[str]
    chi_closed: int | None = None
    chi_open: int | None = None


@dataclass(frozen=True)
class FiberModel:
    prime: int
    components: tuple[Component, ...]
    strata: tuple[Stratum, ...]


@dataclass(frozen=True)
class ArithmeticModel:
    relative_dimension: int
    fibers: tuple[FiberModel, ...]
    generic_euler: int | None = None


@dataclass(frozen=True)
class TameReport:
    prime: int
    ok: bool
    offenders: tuple[str, ...] = ()


@dataclass(frozen=True)
class GenericEulerEntry:
    prime: int
    weighted_sum: int
    expected: int

    @property
    def ok(self) -> bool:
        return self.weighted_sum == self.expected


@dataclass(frozen=True)
class GenericEulerReport:
    generic_euler: int
    inferred: bool
    entries: tuple[GenericEulerEntry, ...]

    @property
    def ok(self) -> bool:
        return all(entry.ok for entry in self.entries)


@dataclass(frozen=True)
class PrimeSummary:
    prime: int
    chi_fiber: int
    bloch_degree: int
    exponent: int
    tame: bool = True
    generic_euler_ok: bool = True


@dataclass(frozen=True)
class ConductorReport:
    relative_dimension: int
    generic_euler: int | None
    primes: tuple[PrimeSummary, ...]

    @property
    def conductor_factors(self) -> dict[int, int]:
        """Factored A(X): prime -> exponent, zero exponents omitted."""
        return {s.prime: s.exponent for s in self.primes if s.exponent}

    @property
    def log_conductor_terms(self) -> tuple[tuple[int, Fraction], ...]:
        return tuple((p, Fraction(e)) for p, e in sorted(self.conductor_factors.items()))

    @property
    def log_eps_terms(self) -> tuple[tuple[int, Fraction], ...]:
        """log|eps(X)| = (d+1)/2 * log A(X), as exact multiples of log p."""
        half = Fraction(self.relative_dimension + 1, 2)
        return tuple((p, half * Fraction(e)) for p, e in sorted(self.conductor_factors.items()))

    @property
    def has_negative_exponents(self) -> bool:
        return any(e < 0 for e in self.conductor_factors.values())

    def as_dict(self) -> dict:
        return {
            "relative_dimension": self.relative_dimension,
            "generic_euler": self.generic_euler,
            "primes": [
                {
                    "prime": s.prime,
                    "chi_fiber": s.chi_fiber,
                    "bloch_degree": s.bloch_degree,
                    "exponent": s.exponent,
                    "tame": s.tame,
                    "generic_euler_ok": s.generic_euler_ok,
                }
                for s in sorted(self.primes, key=lambda s: s.prime)
            ],
            "conductor_factors": {
                str(p): e for p, e in sorted(self.conductor_factors.items())
            },
            "log_conductor_terms": [
                {"prime": p, "coefficient": str(c)} for p, c in self.log_conductor_terms
            ],
            "log_eps_terms": [
                {"prime": p, "coefficient": str(c)} for p, c in self.log_eps_terms
            ],
            "negative_exponents": self.has_negative_exponents,
        }


# -- validation ---------------------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in range(2, isqrt(n) + 1):
        if n % q == 0:
            return False
    return True


def validate_fiber(fiber: FiberModel, relative_dimension: int | None = None) -> None:
    """Check the structural invariants of one fiber's combinatorial data."""
    where = f"fiber at p={fiber.prime}"
    if not _is_prime(fiber.prime):
        raise ModelValidationError(f"{where}: {fiber.prime} is not a prime")
    ids = [c.id for c in fiber.components]
    if not ids:
        raise ModelValidationError(f"{where}: fiber has no components")
    if len(set(ids)) != len(ids):
        raise ModelValidationError(f"{where}: duplicate component ids")
    for c in fiber.components:
        if c.multiplicity < 1:
            raise ModelValidationError(
                f"{where}: component {c.id} has multiplicity {c.multiplicity} < 1"
            )
    declared = set(ids)
    seen: set[frozenset[str]] = set()
    for stratum in fiber.strata:
        J = stratum.components
        if not J:
            raise ModelValidationError(f"{where}: stratum with empty component set")
        unknown = J - declared
        if unknown:
            raise ModelValidationError(
                f"{where}: stratum {sorted(J)} references undeclared components "
                f"{sorted(unknown)}"
            )
        if J in seen:
            raise ModelValidationError(f"{where}: duplicate stratum {sorted(J)}")
        seen.add(J)
        if stratum.chi_closed is None and stratum.chi_open is None:
            raise ModelValidationError(
                f"{where}: stratum {sorted(J)} carries no Euler characteristic"
            )
        if relative_dimension is not None and len(J) > relative_dimension + 1:
            raise ModelValidationError(
                f"{where}: stratum {sorted(J)} has depth {len(J)} > d+1 = "
                f"{relative_dimension + 1}, so it would have negative dimension"
            )
    for cid in ids:
        if frozenset({cid}) not in seen:
            raise ModelValidationError(f"{where}: missing singleton stratum for {cid}")
    # A non-empty intersection forces all of its sub-intersections non-empty.
    for J in seen:
        if len(J) < 2:
            continue
        for cid in J:
            sub = J - {cid}
            if sub and sub not in seen:
                raise ModelValidationError(
                    f"{where}: stratum {sorted(J)} is declared but its subset "
                    f"{sorted(sub)} is not"
                )


def validate_model(model: ArithmeticModel) -> None:
    if model.relative_dimension < 0:
        raise ModelValidationError("relative_dimension must be non-negative")
    primes = [f.prime for f in model.fibers]
    if len(set(primes)) != len(primes):
        raise ModelValidationError("fiber primes must be pairwise distinct")
    for fiber in model.fibers:
        validate_fiber(fiber, model.relative_dimension)


# -- inclusion-exclusion over the strata lattice --------------------------


def _strata_map(fiber: FiberModel) -> dict[frozenset[str], Stratum]:
    return {s.components: s for s in fiber.strata}


def _open_from_closed(strata: dict[frozenset[str], Stratum]) -> dict[frozenset[str], int]:
    out = {}
    for J in strata:
        total = 0
        for J2, s2 in strata.items():
            if J <= J2:
                sign = -1 if (len(J2) - len(J)) % 2 else 1
                total += sign * s2.chi_closed
        out[J] = total
    return out


def _closed_from_open(strata: dict[frozenset[str], Stratum]) -> dict[frozenset[str], int]:
    out = {}
    for J in strata:
        out[J] = sum(s2.chi_open for J2, s2 in strata.items() if J <= J2)
    return out


def _rebuild(fiber: FiberModel, closed, opened) -> FiberModel:
    strata = tuple(
        replace(s, chi_closed=closed[s.components], chi_open=opened[s.components])
        for s in fiber.strata
    )
    singleton_open = {next(iter(J)): chi for J, chi in opened.items() if len(J) == 1}
    components = tuple(
        replace(c, chi_open=singleton_open[c.id]) for c in fiber.components
    )
    return FiberModel(fiber.prime, components, strata)


def open_strata_from_closed(fiber: FiberModel) -> FiberModel:
    """Populate chi_open from chi_closed by inclusion-exclusion.

    Absent strata are empty intersections and contribute 0.  Idempotent;
    any chi_open already present must agree with the computed value.
    """
    validate_fiber(fiber)
    strata = _strata_map(fiber)
    missing = [s for s in fiber.strata if s.chi_closed is None]
    if missing:
        raise ModelValidationError(
            f"fiber at p={fiber.prime}: stratum "
            f"{sorted(missing[0].components)} has no chi_closed"
        )
    opened = _open_from_closed(strata)
    for J, s in strata.items():
        if s.chi_open is not None and s.chi_open != opened[J]:
            raise ModelValidationError(
                f"fiber at p={fiber.prime}: stratum {sorted(J)} declares "
                f"chi_open={s.chi_open} but inclusion-exclusion gives {opened[J]}"
            )
    closed = {J: s.chi_closed for J, s in strata.items()}
    result = _rebuild(fiber, closed, opened)
    _check_component_chi(fiber, result)
    return result


def closed_strata_from_open(fiber: FiberModel) -> FiberModel:
    """Populate chi_closed from chi_open; inverse of open_strata_from_closed."""
    validate_fiber(fiber)
    strata = _strata_map(fiber)
    missing = [s for s in fiber.strata if s.chi_open is None]
    if missing:
        raise ModelValidationError(
            f"fiber at p={fiber.prime}: stratum "
            f"{sorted(missing[0].components)} has no chi_open"
        )
    closed = _closed_from_open(strata)
    for J, s in strata.items():
        if s.chi_closed is not None and s.chi_closed != closed[J]:
            raise ModelValidationError(
                f"fiber at p={fiber.prime}: stratum {sorted(J)} declares "
                f"chi_closed={s.chi_closed} but the open strata sum to {closed[J]}"
            )
    opened = {J: s.chi_open for J, s in strata.items()}
    result = _rebuild(fiber, closed, opened)
    _check_component_chi(fiber, result)
    return result


def _check_component_chi(original: FiberModel, normalized: FiberModel) -> None:
    derived = {c.id: c.chi_open for c in normalized.components}
    for c in original.components:
        if c.chi_open is not None and c.chi_open != derived[c.id]:
            raise ModelValidationError(
                f"fiber at p={original.prime}: component {c.id} declares "
                f"chi_open={c.chi_open} but its singleton stratum gives {derived[c.id]}"
            )


def normalize_fiber(fiber: FiberModel) -> FiberModel:
    """Fill in both chi_closed and chi_open for every stratum.

    The input must carry chi_closed on all strata or chi_open on all
    strata; partially mixed data is rejected since neither direction of
    the inclusion-exclusion can run.
    """
    validate_fiber(fiber)
    if all(s.chi_closed is not None for s in fiber.strata):
        return open_strata_from_closed(fiber)
    if all(s.chi_open is not None for s in fiber.strata):
        return closed_strata_from_open(fiber)
    raise ModelValidationError(
        f"fiber at p={fiber.prime}: mixed strata data; supply chi_closed for "
        "all strata or chi_open for all strata"
    )


# -- numerical pipeline ---------------------------------------------------


def fiber_euler(fiber: FiberModel) -> int:
    """chi(X_p): the open strata partition the fiber, so their compactly
    supported characteristics add up."""
    total = 0
    for s in fiber.strata:
        if s.chi_open is None:
            raise ModelValidationError(
                f"fiber at p={fiber.prime}: chi_open missing on stratum "
                f"{sorted(s.components)}; normalize the fiber first"
            )
        total += s.chi_open
    return total


def tame_check(fiber: FiberModel) -> TameReport:
    """Every multiplicity must be prime to the residue characteristic."""
    offenders = tuple(
        c.id for c in fiber.components if gcd(c.multiplicity, fiber.prime) != 1
    )
    return TameReport(fiber.prime, not offenders, offenders)


def _weighted_line_sum(fiber: FiberModel) -> int:
    """Sum of m_i * chi_open(T_i) over the components."""
    by_id = {c.id: c for c in fiber.components}
    total = 0
    for s in fiber.strata:
        if len(s.components) != 1:
            continue
        (cid,) = s.components
        total += by_id[cid].multiplicity * s.chi_open
    return total


def generic_euler_check(model: ArithmeticModel) -> GenericEulerReport:
    """Check chi(X_Q) = sum m_i chi_open(T_i) at every bad prime.

    When the model does not state chi(X_Q) it is inferred from the first
    fiber; disagreement between fibers is then a hard error since no
    stated value adjudicates.
    """
    fibers = [normalize_fiber(f) for f in model.fibers]
    expected = model.generic_euler
    inferred = expected is None
    if inferred:
        if not fibers:
            raise ConsistencyError(
                "generic_euler is not stated and there are no fibers to infer it from"
            )
        expected = _weighted_line_sum(fibers[0])
        for f in fibers[1:]:
            other = _weighted_line_sum(f)
            if other != expected:
                raise ConsistencyError(
                    f"fibers disagree on chi(X_Q): p={fibers[0].prime} gives "
                    f"{expected}, p={f.prime} gives {other}"
                )
    entries = tuple(
        GenericEulerEntry(f.prime, _weighted_line_sum(f), expected) for f in fibers
    )
    return GenericEulerReport(expected, inferred, entries)


def bloch_degree(fiber: FiberModel) -> int:
    """Degree of the localized top Chern class on this fiber, computed two
    ways from the open strata:

    * -sum (m_i - 1) chi_open(T_i) + sum over |J| >= 2 of chi_open(T_J)
    * -sum m_i chi_open(T_i) + chi(X_p)

    Both expressions must agree; disagreement signals corrupted strata
    data and raises.
    """
    by_id = {c.id: c for c in fiber.components}
    singles = 0
    weighted = 0
    deep = 0
    for s in fiber.strata:
        if s.chi_open is None:
            raise ModelValidationError(
                f"fiber at p={fiber.prime}: chi_open missing on stratum "
                f"{sorted(s.components)}; normalize the fiber first"
            )
        if len(s.components) == 1:
            (cid,) = s.components
            m = by_id[cid].multiplicity
            singles += (m - 1) * s.chi_open
            weighted += m * s.chi_open
        else:
            deep += s.chi_open
    first_form = -singles + deep
    second_form = -weighted + fiber_euler(fiber)
    if first_form != second_form:
        raise RuntimeError(
            f"fiber at p={fiber.prime}: the two conductor-degree expressions "
            f"disagree ({first_form} vs {second_form}); strata data is corrupt"
        )
    return first_form


def conductor(model: ArithmeticModel) -> ConductorReport:
    """Full pipeline: validate, normalize, check tameness and consistency,
    then report per-prime exponents, the factored conductor, and log|eps|.

    The per-prime exponent is f_p = chi(X_Q) - chi(X_p); it always equals
    minus the localized Chern degree once the consistency check holds, and
    that relation is asserted.
    """
    validate_model(model)
    if not model.fibers:
        return ConductorReport(model.relative_dimension, model.generic_euler, ())
    fibers = tuple(normalize_fiber(f) for f in model.fibers)
    for fiber in fibers:
        report = tame_check(fiber)
        if not report.ok:
            raise TamenessError(fiber.prime, report.offenders)
    normalized = ArithmeticModel(model.relative_dimension, fibers, model.generic_euler)
    euler_report = generic_euler_check(normalized)
    if not euler_report.ok:
        bad = [e for e in euler_report.entries if not e.ok]
        details = "; ".join(
            f"p={e.prime}: sum m_i*chi_open(T_i) = {e.weighted_sum} != "
            f"{e.expected} = chi(X_Q)"
            for e in bad
        )
        raise ConsistencyError(f"generic Euler characteristic check failed: {details}")
    summaries = []
    for fiber in fibers:
        chi_p = fiber_euler(fiber)
        degree = bloch_degree(fiber)
        exponent = euler_report.generic_euler - chi_p
        if exponent != -degree:
            raise RuntimeError(
                f"fiber at p={fiber.prime}: exponent {exponent} does not equal "
                f"minus the Chern degree {degree} despite a passing consistency check"
            )
        summaries.append(PrimeSummary(fiber.prime, chi_p, degree, exponent))
    summaries.sort(key=lambda s: s.prime)
    return ConductorReport(
        model.relative_dimension, euler_report.generic_euler, tuple(summaries)
    )
