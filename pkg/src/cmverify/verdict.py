"""Classification of S^3/X as a cohomology 3-manifold over a coefficient ring.

Three conditions are checked at the wild point x:

cond1  finite dimension, compactness, metrizability: taken from the model
cond2  cohomological local connectedness in degrees 0..3 (``clc_report``)
cond3  local cohomology at x is R concentrated in degree 3

cm3 is their conjunction.  The homology-manifold verdict hm3 is never
computed: a positive cm3 gives hm3 through the standard implication from
cohomology manifolds to homology manifolds, and a negative one is reported
together with the cohomological obstruction that was found, if any.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import TRIVIAL, CoefficientRing, SymbolicGroup
from .primes import PrimeSet
from .solenoid import (
    COMPUTED,
    MODEL_ASSUMPTION,
    ASSERTED,
    Cell,
    ClcReport,
    CohomologyTable,
    SolenoidModel,
    clc_report,
    local_cohomology_at_wild_point,
    quotient_pair_cohomology,
)

OBSTRUCTION = "computed-cohomological-obstruction"


@dataclass(frozen=True)
class Condition:
    name: str
    holds: bool
    provenance: str
    failing: tuple[tuple[str, Cell], ...] = ()


@dataclass(frozen=True)
class Outcome:
    holds: bool
    reason: str | None
    provenance: str

    def __str__(self):
        if self.holds:
            return "Holds" + (f" ({self.reason})" if self.reason else "")
        return f"Fails({self.reason})"


@dataclass(frozen=True)
class ClassificationVerdict:
    primes: PrimeSet
    ring: CoefficientRing
    cond1: Condition
    cond2: Condition
    cond3: Condition
    cm3: Outcome
    hm3: Outcome
    extrapolated: bool
    local: CohomologyTable
    pair: CohomologyTable
    clc: ClcReport
    trace: tuple[str, ...]

    @property
    def conditions(self) -> tuple[Condition, ...]:
        return (self.cond1, self.cond2, self.cond3)


def _expected_local(r: CoefficientRing) -> tuple[SymbolicGroup, ...]:
    return (TRIVIAL, TRIVIAL, TRIVIAL, r.as_group())


def classify(primes: PrimeSet, r: CoefficientRing, offset: int = 0) -> ClassificationVerdict:
    if not isinstance(primes, PrimeSet):
        raise TypeError("primes must be a PrimeSet")
    model = SolenoidModel(primes, offset)
    local = local_cohomology_at_wild_point(model, r)
    pair = quotient_pair_cohomology(model, r)
    clc = clc_report(model, r)
    trace = [f"prime set {primes}; coefficients {r}"]

    cond1 = Condition("dimension-compact-metrizable", True, MODEL_ASSUMPTION)
    trace.append("cond1: holds by model assumption")

    clc_fail = tuple((f"clc degree {d.degree}", d.evidence) for d in clc.failing())
    cond2 = Condition("clc", clc.all_hold, COMPUTED, clc_fail)
    for d in clc.degrees:
        trace.append(f"cond2: degree {d.degree} {'holds' if d.holds else 'fails'}: {d.reason}")

    expected = _expected_local(r)
    local_fail = tuple((f"H^{n}(S3/X, x)", c) for (n, c), want in zip(local.cells, expected)
                       if c.value != want)
    cond3 = Condition("local-cohomology", not local_fail, COMPUTED, local_fail)
    trace.append(f"cond3: local table {local}, expected ({', '.join(map(str, expected))})")
    trace.append(f"cond3: cross-check via the pair with the complement: {pair}")

    failing = [c.name for c in (cond1, cond2, cond3) if not c.holds]
    if failing:
        cm3 = Outcome(False, "not " + " and not ".join(failing), COMPUTED)
        degree2 = local[2].value
        if degree2.is_nontrivial:
            hm3 = Outcome(False, OBSTRUCTION, ASSERTED)
            trace.append(f"hm3: fails; local degree 2 is {degree2}, nonzero")
        else:
            hm3 = Outcome(False, ASSERTED, ASSERTED)
            trace.append("hm3: fails as asserted; no computed obstruction in local degree 2")
    else:
        cm3 = Outcome(True, None, COMPUTED)
        hm3 = Outcome(True, "via cm => hm", ASSERTED)
        trace.append("hm3: holds since every cohomology manifold is a homology manifold")

    extra = r.is_mod and not r.is_prime_field
    if extra:
        trace.append(f"composite modulus {r.modulus}: outside the prime-coefficient statements")
    return ClassificationVerdict(primes, r, cond1, cond2, cond3, cm3, hm3, extra,
                                 local, pair, clc, tuple(trace))
