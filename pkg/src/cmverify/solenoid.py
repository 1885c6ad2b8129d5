"""Cohomology tables for the quotient of S^3 by a solenoid.

The solenoid X is the intersection of nested solid tori U_1 > U_2 > ...,
each winding n(i) times inside the previous one, where n(i) is the
multiplier sequence of a prime set.  Nothing geometric is computed here:
the homotopy-type facts about S^3, the solid tori and their complements are
fixed inputs (``ASSUMPTIONS``) and every table cell is derived from them
with the tower functors and the exact-sequence engine.

Four table families are produced for a coefficient ring R:

* ``local_cohomology_at_wild_point``  H^n(S^3/X, {x}; R)
* ``complement_cohomology``           H^n(S^3 - X; R)
* ``quotient_pair_cohomology``        H^n(S^3/X, S^3 - X; R)
* ``clc_report``                      local connectedness at x, degrees 0..3

Each cell carries a provenance tag and the derivations behind it; a
derivation replays through ``exactseq.replay``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import tower as tw
from .abelian import (
    TRIVIAL,
    CoefficientRing,
    NonTrivialUnknown,
    SymbolicGroup,
    fg,
)
from .exactseq import Deduction, ExactSequence, Step, deduce, replay
from .primes import MultiplierSequence, PrimeSet

COMPUTED = "computed"
MODEL_ASSUMPTION = "model-assumption"
ASSERTED = "asserted"
PROVENANCE_TAGS = (COMPUTED, MODEL_ASSUMPTION, ASSERTED)

ASSUMPTIONS = (
    ("sphere", "H^*(S^3; R) = (R, 0, 0, R)"),
    ("solid-torus", "H^*(U_i; R) = H^*(S^1; R): each closed solid torus is a circle up to homotopy"),
    ("complement", "H^*(S^3 - U_i; R) = H^*(S^1; R)"),
    ("bonds", "restriction on H^1 of the solid tori and of their complements is multiplication by n(i)"),
    ("degree-zero", "H^0 towers are constant with identity bonds; X, U_i and S^3 - U_i are connected"),
    ("neighbourhoods", "the images U_i/X form a neighbourhood base of the wild point x = X/X"),
    ("dimension", "S^3/X is compact, metrizable and 3-dimensional; X is 1-dimensional"),
    ("ladder", "in the degree-1 clc ladder H^1(U_i, X; R) is identified with H^1(U_i; R) = R"),
    ("reduced-zero", "the degree-0 term of the pair sequence of (U_i, X) is taken reduced, so it is 0"),
)

DEGREES = (0, 1, 2, 3)


@dataclass(frozen=True)
class SolenoidModel:
    primes: PrimeSet
    offset: int = 0

    def __post_init__(self):
        if not isinstance(self.primes, PrimeSet):
            raise TypeError("primes must be a PrimeSet")
        if self.offset < 0:
            raise ValueError("offset must be >= 0")

    @property
    def multipliers(self) -> MultiplierSequence:
        return MultiplierSequence(self.primes)

    @property
    def assumptions(self) -> tuple[tuple[str, str], ...]:
        return ASSUMPTIONS


@dataclass(frozen=True)
class Derivation:
    """One run of the exact-sequence engine feeding a cell."""

    sequence: ExactSequence
    steps: tuple[Step, ...]
    position: int
    result: SymbolicGroup

    @classmethod
    def of(cls, d: Deduction, position: int | str) -> "Derivation":
        i = position if isinstance(position, int) else d.sequence.labels().index(position)
        return cls(d.sequence, tuple(d.trace), i, d.verdict(i).as_group())

    def replays(self) -> bool:
        return replay(self.sequence, self.steps)[self.position].as_group() == self.result

    def explain(self) -> list[str]:
        labels = self.sequence.labels()
        return [s.describe(labels) for s in self.steps]


@dataclass(frozen=True)
class Cell:
    value: SymbolicGroup
    provenance: str = COMPUTED
    notes: tuple[str, ...] = ()
    derivations: tuple[Derivation, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.provenance not in PROVENANCE_TAGS:
            raise ValueError(f"unknown provenance {self.provenance!r}")

    def trace(self) -> list[str]:
        out = []
        for d in self.derivations:
            out.extend(d.explain())
        return out + list(self.notes)

    def replays(self) -> bool:
        return all(d.replays() for d in self.derivations)


@dataclass(frozen=True)
class CohomologyTable:
    family: str
    ring: CoefficientRing
    cells: tuple[tuple[int, Cell], ...]

    def __getitem__(self, n: int) -> Cell:
        for k, c in self.cells:
            if k == n:
                return c
        return Cell(TRIVIAL, COMPUTED, ("outside the computed range",))

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(k for k, _ in self.cells)

    def values(self) -> tuple[SymbolicGroup, ...]:
        return tuple(c.value for _, c in self.cells)

    def __str__(self):
        return "(" + ", ".join(str(v) for v in self.values()) + ")"


def _ring(r: CoefficientRing) -> SymbolicGroup:
    return r.as_group()


# ---------------------------------------------------------------------------
# pairs (S^3, U_i) and the local groups at x


def _pair_level(r: CoefficientRing, n: int) -> Deduction:
    """H^n(S^3, U_i; R) from the pair sequence with model inputs."""
    g = _ring(r)
    sphere = {0: g, 3: g}
    torus = {0: g, 1: g}
    s = lambda k: sphere.get(k, TRIVIAL)
    u = lambda k: torus.get(k, TRIVIAL)
    target = f"H^{n}(S3, U_i)"
    if n == 0:
        terms = [("0", TRIVIAL), (target, None), ("H^0(S3)", s(0)), ("H^0(U_i)", u(0))]
        # restriction between connected spaces is an isomorphism on H^0
        return deduce(ExactSequence.of(terms, {2: "iso"}))
    terms = [(f"H^{n - 1}(S3)", s(n - 1)), (f"H^{n - 1}(U_i)", u(n - 1)), (target, None),
             (f"H^{n}(S3)", s(n)), (f"H^{n}(U_i)", u(n))]
    annotations = {0: "iso"} if n == 1 else {}
    return deduce(ExactSequence.of(terms, annotations))


def pair_tower(m: SolenoidModel, r: CoefficientRing, degree: int) -> tw.Tower:
    """The direct system H^degree(S^3, U_i; R), i = 1, 2, ..."""
    if not 0 <= degree <= 4:
        raise ValueError(f"degree must be in 0..4, got {degree}")
    level = _pair_level(r, degree).verdict(f"H^{degree}(S3, U_i)").as_group()
    if degree == 2:
        t = tw.Tower.multiplication(tw.DIRECT, r, m.multipliers, m.offset)
        if level != _ring(r):
            raise AssertionError("degree-2 level group disagrees with the model")
        return t
    return tw.Tower.constant(tw.DIRECT, level)


def local_cohomology_at_wild_point(m: SolenoidModel, r: CoefficientRing) -> CohomologyTable:
    """H^n(S^3/X, {x}; R) for n = 0..3, as colimits over the neighbourhood base."""
    cells = []
    for n in DEGREES:
        d = _pair_level(r, n)
        t = pair_tower(m, r, n)
        value = tw.colim(t)
        note = f"colim of {t.describe()} = {value}"
        cells.append((n, Cell(value, COMPUTED, (note,), (Derivation.of(d, f"H^{n}(S3, U_i)"),))))
    return CohomologyTable("local", r, tuple(cells))


def _absolute_quotient(m: SolenoidModel, r: CoefficientRing, local: CohomologyTable) -> Deduction:
    """H^n(S^3/X; R), n = 0..4, from the pair sequence of (S^3/X, {x})."""
    g = _ring(r)
    terms = [("0", TRIVIAL)]
    for n in range(5):
        lv = local[n].value if n <= 3 else TRIVIAL
        terms += [(f"H^{n}(Y, x)", lv), (f"H^{n}(Y)", None), (f"H^{n}(x)", g if n == 0 else TRIVIAL)]
    return deduce(ExactSequence.of(terms))


# ---------------------------------------------------------------------------
# the complement S^3 - X as an increasing union


def complement_tower(m: SolenoidModel, r: CoefficientRing, degree: int) -> tw.Tower:
    """The inverse system H^degree(S^3 - U_i; R)."""
    if degree == 0:
        return tw.Tower.constant(tw.INVERSE, _ring(r))
    if degree == 1:
        return tw.Tower.multiplication(tw.INVERSE, r, m.multipliers, m.offset)
    return tw.Tower.constant(tw.INVERSE, TRIVIAL)


def _known(g: SymbolicGroup) -> SymbolicGroup | None:
    return g if (g.is_trivial or g.is_nontrivial) else None


def complement_cohomology(m: SolenoidModel, r: CoefficientRing) -> CohomologyTable:
    """H^n(S^3 - X; R), n = 0..3, each from 0 -> lim^1 -> H^n -> lim -> 0."""
    cells = []
    for n in DEGREES:
        upper = complement_tower(m, r, n)
        lim = tw.lim(upper)
        lim1 = tw.lim_one(complement_tower(m, r, n - 1)) if n > 0 else TRIVIAL
        target = f"H^{n}(S3-X)"
        terms = [("0", TRIVIAL), (f"lim1 H^{n - 1}(S3-U_i)", _known(lim1)), (target, None),
                 (f"lim H^{n}(S3-U_i)", _known(lim)), ("0'", TRIVIAL)]
        d = deduce(ExactSequence.of(terms))
        notes = (f"lim of {upper.describe()} = {lim}",)
        if n > 0:
            notes += (f"lim^1 of {complement_tower(m, r, n - 1).describe()} = {lim1}",)
        cells.append((n, Cell(d.verdict(target).as_group(), COMPUTED, notes, (Derivation.of(d, target),))))
    return CohomologyTable("complement", r, tuple(cells))


# ---------------------------------------------------------------------------
# the pair (S^3/X, S^3 - X)


def quotient_pair_cohomology(m: SolenoidModel, r: CoefficientRing) -> CohomologyTable:
    """H^n(S^3/X, S^3 - X; R), n = 0..3.

    One long exact sequence of the pair, fed with the absolute groups of
    S^3/X (from the local table) and the complement table.  The quotient
    minus the point is the complement, so the pair is the local pair at x.
    """
    local = local_cohomology_at_wild_point(m, r)
    comp = complement_cohomology(m, r)
    absolute = _absolute_quotient(m, r, local)
    terms = []
    for n in range(5):
        a = absolute.verdict(f"H^{n}(Y)").as_group()
        c = comp[n].value if n <= 3 else TRIVIAL
        terms += [(f"H^{n}(Y, Y-x)", None), (f"H^{n}(Y)", _known(a)), (f"H^{n}(Y-x)", _known(c))]
    terms = [("0", TRIVIAL)] + terms[:-1]  # ends at H^4(Y), which is 0
    # H^0(Y) -> H^0(Y - x): restriction between connected spaces
    d = deduce(ExactSequence.of(terms, {2: "iso"}))
    absolute_d = Derivation.of(absolute, "H^0(Y)")
    cells = []
    for n in DEGREES:
        label = f"H^{n}(Y, Y-x)"
        notes = ("Y = S3/X and Y - x = S3 - X",)
        cells.append((n, Cell(d.verdict(label).as_group(), COMPUTED, notes,
                              (absolute_d, Derivation.of(d, label)))))
    return CohomologyTable("pair", r, tuple(cells))


# ---------------------------------------------------------------------------
# cohomological local connectedness at x


@dataclass(frozen=True)
class ClcDegree:
    degree: int
    holds: bool
    evidence: Cell
    reason: str

    @property
    def provenance(self) -> str:
        return self.evidence.provenance


@dataclass(frozen=True)
class ClcReport:
    ring: CoefficientRing
    degrees: tuple[ClcDegree, ...]

    @property
    def all_hold(self) -> bool:
        return all(d.holds for d in self.degrees)

    def failing(self) -> tuple[ClcDegree, ...]:
        return tuple(d for d in self.degrees if not d.holds)

    def __getitem__(self, n: int) -> ClcDegree:
        return self.degrees[n]


def _eventual_image(r: CoefficientRing, seq: MultiplierSequence) -> SymbolicGroup:
    """Image of the long composites of the x n(i) bonds on R."""
    if r.kind == "Z":
        return fg(1)  # multiplication by a nonzero integer is injective on Z
    if r.kind == "Q":
        return _ring(r)
    return tw.colim(tw.Tower.multiplication(tw.DIRECT, r, seq))


def _cokernel_into_colim(r: CoefficientRing, seq: MultiplierSequence) -> SymbolicGroup:
    """Cokernel of R -> colim(R, x n(i)), the level map at any stage."""
    if r.kind == "Z":
        # Z[1/P] / Z is nonzero as soon as one prime is inverted
        return NonTrivialUnknown("localization-mod-integers")
    # cyclic or rational levels surject onto the colimit
    return TRIVIAL


def clc_report(m: SolenoidModel, r: CoefficientRing) -> ClcReport:
    seq = m.multipliers
    out = [ClcDegree(0, True, Cell(TRIVIAL, MODEL_ASSUMPTION, ("S3/X is locally connected",)),
                     "local connectedness of the quotient")]

    image = _eventual_image(r, seq)
    holds = image.is_trivial
    note = f"bonds H^1(U_i, X) -> H^1(U_j, X) are composites of x n(k) on {_ring(r)}; eventual image {image}"
    if holds:
        reason = "composite bonds are eventually zero"
    else:
        reason = {"Z": "composite bonds are monomorphisms of Z",
                  "Q": "composite bonds are isomorphisms of Q"}.get(r.kind, "composite bonds never vanish")
    out.append(ClcDegree(1, holds, Cell(image, COMPUTED, (note,)), reason))

    coker = _cokernel_into_colim(r, seq)
    h1x = tw.colim(tw.Tower.multiplication(tw.DIRECT, r, seq, m.offset))
    holds = coker.is_trivial
    notes = (f"H^1(X) = colim(x n(i)) = {h1x}", f"H^2(U_i, X) = coker(H^1(U_i) -> H^1(X)) = {coker}")
    out.append(ClcDegree(2, holds, Cell(coker, COMPUTED, notes),
                         "H^2(U_i, X) vanishes" if holds else
                         "H^2(U_i, X) -> H^2(U_j, X) is onto a nonzero group"))

    d3 = deduce(ExactSequence.of([("H^2(X)", TRIVIAL), ("H^3(U_i, X)", None), ("H^3(U_i)", TRIVIAL)]))
    cell3 = Cell(d3.verdict("H^3(U_i, X)").as_group(), COMPUTED, ("X is 1-dimensional",),
                 (Derivation.of(d3, "H^3(U_i, X)"),))
    out.append(ClcDegree(3, cell3.value.is_trivial, cell3, "H^3(U_i, X) vanishes"))
    return ClcReport(r, tuple(out))


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LocalCohomologyReport:
    model: SolenoidModel
    ring: CoefficientRing
    local: CohomologyTable
    complement: CohomologyTable
    pair: CohomologyTable
    clc: ClcReport


def full_report(m: SolenoidModel, r: CoefficientRing) -> LocalCohomologyReport:
    return LocalCohomologyReport(m, r, local_cohomology_at_wild_point(m, r), complement_cohomology(m, r),
                                 quotient_pair_cohomology(m, r), clc_report(m, r))
