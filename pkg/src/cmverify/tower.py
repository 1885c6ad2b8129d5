"""Inverse and direct systems of abelian groups indexed by the naturals.

Three descriptions are supported:

``MultiplicationTower``
    every level is the same cyclic/rational group (Z, Q or Z_m) and bond i is
    multiplication by n(i + offset) for a prime set's multiplier sequence;
``Explicit``
    a finite prefix of finitely generated groups with integer bond matrices;
``Constant``
    one group with identity bonds.

``colim``, ``lim`` and ``lim_one`` answer symbolically where that is exact and
fall back to the truncated two-term complex for explicit towers.  Levels of
explicit towers are numbered from 0; multiplier indices from 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import (
    RATIONALS_GROUP,
    TRIVIAL,
    UNKNOWN,
    CoefficientRing,
    Fg,
    FgAbGroup,
    IntMatrix,
    NonTrivialUnknown,
    SymbolicGroup,
    block_diag,
    contains,
    cyclic,
    fg,
    group_from_relations,
    homomorphism_kernel,
    kernel_basis,
    localized,
    subquotient,
    wrap,
)
from .primes import MultiplierSequence, PrimeSet, prime_factors

INVERSE = "inverse"
DIRECT = "direct"

DEFAULT_DEPTH = 64
# cost of the oracle grows cubically in the window
MAX_WINDOW = 10

# reason code carried by lim^1 when Mittag-Leffler fails on a tower of
# finitely generated groups (Gray's dichotomy: lim^1 is then uncountable)
ML_FAILS_FG = "ml-fails-fg-tower"


@dataclass(frozen=True)
class MultiplicationTower:
    base: CoefficientRing
    multipliers: MultiplierSequence
    offset: int = 0

    def __post_init__(self):
        if self.offset < 0:
            raise ValueError("offset must be >= 0")

    def bond(self, i: int) -> int:
        """Multiplier of bond i (1-based), joining levels i and i+1."""
        return self.multipliers.n(i + self.offset)


@dataclass(frozen=True)
class Explicit:
    groups: tuple[FgAbGroup, ...]
    bonds: tuple[IntMatrix, ...]


@dataclass(frozen=True)
class Constant:
    group: SymbolicGroup


@dataclass(frozen=True)
class Tower:
    direction: str
    description: MultiplicationTower | Explicit | Constant

    def __post_init__(self):
        if self.direction not in (INVERSE, DIRECT):
            raise ValueError(f"direction must be {INVERSE!r} or {DIRECT!r}")
        if isinstance(self.description, Explicit):
            _check_explicit(self.direction, self.description)

    @classmethod
    def multiplication(cls, direction: str, base: CoefficientRing, primes: PrimeSet | MultiplierSequence,
                       offset: int = 0) -> "Tower":
        seq = primes if isinstance(primes, MultiplierSequence) else MultiplierSequence(primes)
        return cls(direction, MultiplicationTower(base, seq, offset))

    @classmethod
    def explicit(cls, direction: str, groups, bonds) -> "Tower":
        return cls(direction, Explicit(tuple(groups), tuple(bonds)))

    @classmethod
    def constant(cls, direction: str, group: SymbolicGroup) -> "Tower":
        return cls(direction, Constant(group))

    def levels_fg(self) -> bool:
        desc = self.description
        if isinstance(desc, MultiplicationTower):
            return desc.base.kind != "Q"
        if isinstance(desc, Constant):
            return desc.group.is_trivial or isinstance(desc.group, Fg)
        return True

    def describe(self) -> str:
        desc = self.description
        arrow = "<-" if self.direction == INVERSE else "->"
        if isinstance(desc, MultiplicationTower):
            g = desc.base.as_group()
            shift = f", offset {desc.offset}" if desc.offset else ""
            return f"{g} {arrow}x n(i){arrow} {g} ... ({desc.multipliers.primes}{shift})"
        if isinstance(desc, Constant):
            return f"constant {desc.group} with identity bonds"
        return f"explicit tower of {len(desc.groups)} levels"


def _check_explicit(direction: str, ex: Explicit) -> None:
    if len(ex.groups) < 1:
        raise ValueError("an explicit tower needs at least one level")
    if len(ex.bonds) != len(ex.groups) - 1:
        raise ValueError("an explicit tower needs one bond between consecutive levels")
    for k, m in enumerate(ex.bonds):
        src, tgt = (ex.groups[k + 1], ex.groups[k]) if direction == INVERSE else (ex.groups[k], ex.groups[k + 1])
        if (m.rows, m.cols) != (tgt.ngens, src.ngens):
            raise ValueError(f"bond {k} has shape {m.rows}x{m.cols}, expected {tgt.ngens}x{src.ngens}")
        image_of_rels = m @ src.relation_matrix()
        if not contains(tgt.relation_matrix(), image_of_rels, IntMatrix.zeros(tgt.ngens, 0)):
            raise ValueError(f"bond {k} does not respect the relations of its source")


def _require(t: Tower, direction: str, op: str) -> None:
    if t.direction != direction:
        raise ValueError(f"{op} needs a {direction} system, got a {t.direction} one")


def _stripped_modulus(m: int, seq: MultiplierSequence) -> int:
    """m with every prime the multipliers eventually absorb removed."""
    for p in prime_factors(m):
        if seq.divides_eventually(p):
            while m % p == 0:
                m //= p
    return m


# ---------------------------------------------------------------------------
# Mittag-Leffler


@dataclass(frozen=True)
class MLVerdict:
    kind: str  # "holds", "fails" or "unknown-at-depth"
    depth: int | None = None

    def __str__(self):
        return f"unknown at depth {self.depth}" if self.depth is not None else self.kind


ML_HOLDS = MLVerdict("holds")
ML_FAILS = MLVerdict("fails")


def mittag_leffler(t: Tower, depth: int = DEFAULT_DEPTH) -> MLVerdict:
    _require(t, INVERSE, "mittag_leffler")
    desc = t.description
    if isinstance(desc, Constant):
        return ML_HOLDS
    if isinstance(desc, MultiplicationTower):
        if desc.base.kind == "Z" and desc.multipliers.exceeds_one_infinitely_often():
            return ML_FAILS
        return ML_HOLDS
    if all(g.is_finite for g in desc.groups):
        return ML_HOLDS
    result = truncated_limits_oracle(t, depth)
    return ML_HOLDS if result.stabilized else MLVerdict("unknown-at-depth", result.depth)


# ---------------------------------------------------------------------------
# limits


def colim(t: Tower, depth: int = DEFAULT_DEPTH) -> SymbolicGroup:
    _require(t, DIRECT, "colim")
    desc = t.description
    if isinstance(desc, Constant):
        return desc.group
    if isinstance(desc, Explicit):
        return _explicit_colim(desc, depth)
    base, seq = desc.base, desc.multipliers
    if base.kind == "Q":
        return RATIONALS_GROUP
    if base.kind == "Z":
        if not seq.exceeds_one_infinitely_often():
            return fg(1)
        # every prime of the set divides some n(i)
        return localized(seq.primes)
    m = _stripped_modulus(base.modulus, seq)
    return TRIVIAL if m == 1 else cyclic(m)


def lim(t: Tower, depth: int = DEFAULT_DEPTH) -> SymbolicGroup:
    _require(t, INVERSE, "lim")
    desc = t.description
    if isinstance(desc, Constant):
        return desc.group
    if isinstance(desc, Explicit):
        result = truncated_limits_oracle(t, depth)
        return result.lim if result.stabilized else UNKNOWN
    base, seq = desc.base, desc.multipliers
    if base.kind == "Q":
        return RATIONALS_GROUP
    if base.kind == "Z":
        # images n(1)...n(k) Z shrink to zero
        return TRIVIAL if seq.exceeds_one_infinitely_often() else fg(1)
    m = _stripped_modulus(base.modulus, seq)
    return TRIVIAL if m == 1 else cyclic(m)


def lim_one(t: Tower, depth: int = DEFAULT_DEPTH) -> SymbolicGroup:
    _require(t, INVERSE, "lim_one")
    ml = mittag_leffler(t, depth)
    if ml == ML_HOLDS:
        return TRIVIAL
    if ml == ML_FAILS and t.levels_fg():
        return NonTrivialUnknown(ML_FAILS_FG)
    return UNKNOWN


# ---------------------------------------------------------------------------
# explicit realizations and the truncated oracle


def realize(t: Tower, depth: int) -> Tower:
    """The first ``depth`` levels of a symbolic tower as an explicit tower."""
    desc = t.description
    if isinstance(desc, Explicit):
        return Tower.explicit(t.direction, desc.groups[:depth], desc.bonds[:max(depth - 1, 0)])
    if isinstance(desc, Constant):
        g = desc.group
        if g.is_trivial:
            group = FgAbGroup()
        elif isinstance(g, Fg):
            group = g.group
        else:
            raise ValueError(f"cannot realize a tower of {g} explicitly")
        bond = IntMatrix.identity(group.ngens)
        return Tower.explicit(t.direction, [group] * depth, [bond] * (depth - 1))
    if desc.base.kind == "Q":
        raise ValueError("cannot realize a tower of Q explicitly")
    if desc.base.kind == "Z":
        group = FgAbGroup(1)
        bonds = [IntMatrix.scalar(desc.bond(i)) for i in range(1, depth)]
    else:
        m = desc.base.modulus
        group = FgAbGroup.cyclic(m)
        bonds = [IntMatrix.scalar(desc.bond(i) % m) for i in range(1, depth)]
    return Tower.explicit(t.direction, [group] * depth, bonds)


@dataclass(frozen=True)
class OracleResult:
    lim: SymbolicGroup
    lim_one: SymbolicGroup
    stabilized: bool
    depth: int


def _reduce_rows(m: IntMatrix, g: FgAbGroup) -> IntMatrix:
    # entries on torsion generators only matter modulo the generator's order
    rows = []
    for r, row in enumerate(m.entries):
        if r < len(g.torsion):
            d = g.torsion[r]
            row = tuple(x % d for x in row)
        rows.append(row)
    return IntMatrix(m.rows, m.cols, tuple(rows))


def _composites_down(ex: Explicit, top: int, levels: int) -> list[IntMatrix]:
    """Matrices of A_top -> A_i for i < levels (inverse bonds)."""
    comp = IntMatrix.identity(ex.groups[top].ngens)
    out = {top: comp}
    for i in range(top - 1, -1, -1):
        comp = _reduce_rows(ex.bonds[i] @ comp, ex.groups[i])
        out[i] = comp
    return [out[i] for i in range(levels)]


def _two_term(ex: Explicit, n: int, w: int):
    """Kernel and cokernel of (a_i) -> (a_i - f(a_{i+1})) on levels < w.

    The domain is the product of the images E_i of A_{n-1} in A_i; the
    kernel is read off there.  The cokernel is taken inside the product of
    the images of A_{n-2}: it measures how far the image chains still move
    at the last step, and vanishes exactly when they have settled.
    """
    deep = _composites_down(ex, n - 1, w)
    rels = [ex.groups[i].relation_matrix() for i in range(w)]
    s = block_diag(deep)
    all_rels = block_diag(rels)
    k = ex.groups[n - 1].ngens
    # relations among the generators of the product of images
    dom_rels = _kernel_projection(s, all_rels)
    # the difference map in generator coordinates: deep[i] y_i - deep[i] y_{i+1}
    tgt_rows = sum(ex.groups[i].ngens for i in range(w - 1))
    rows = [[0] * (k * w) for _ in range(tgt_rows)]
    r0 = 0
    for i in range(w - 1):
        for a, row in enumerate(deep[i].entries):
            for b, x in enumerate(row):
                rows[r0 + a][i * k + b] += x
                rows[r0 + a][(i + 1) * k + b] -= x
        r0 += deep[i].rows
    diff = IntMatrix(tgt_rows, k * w, tuple(map(tuple, rows)))
    tgt_rels = block_diag(rels[:w - 1]) if w > 1 else IntMatrix.zeros(0, 0)
    _, kernel = homomorphism_kernel(diff, dom_rels, tgt_rels)
    if w > 1:
        shallow = block_diag(_composites_down(ex, n - 2, w - 1))
        cokernel = subquotient(shallow, diff.hstack(tgt_rels))
    else:
        cokernel = FgAbGroup()
    return kernel, cokernel, deep, rels


def _kernel_projection(s: IntMatrix, rels: IntMatrix) -> IntMatrix:
    return kernel_basis(s.hstack(rels)).take_rows(0, s.cols)


def truncated_limits_oracle(t: Tower, depth: int = DEFAULT_DEPTH, window: int | None = None) -> OracleResult:
    """Finite-depth lim / lim^1 of an inverse tower, with a stabilization flag.

    Runs the two-term complex at depth N and N-1 over a window of the first
    ``window`` levels (default: (N-1)//2, at most MAX_WINDOW).  Images are
    always taken from the deepest level; changes in the stable images that
    happen past the window are invisible to the oracle.  ``stabilized`` means the image chains agree at both
    depths and so do both answers.  Without stabilization the free part of
    the kernel comes from the open end of the truncation and is dropped.
    """
    if depth < 2:
        raise ValueError("oracle depth must be >= 2")
    _require(t, INVERSE, "truncated_limits_oracle")
    if not isinstance(t.description, Explicit):
        t = realize(t, depth)
    ex = t.description
    n = min(depth, len(ex.groups))
    if n < 2:
        raise ValueError("the tower has fewer than 2 levels")
    w = min(max(1, (n - 1) // 2), MAX_WINDOW) if window is None else window
    if not 1 <= w <= n - 1:
        raise ValueError(f"window must lie in 1..{n - 1}")
    lim_n, lim1_n, deep_n, rels = _two_term(ex, n, w)
    lim_m, lim1_m, deep_m, _ = _two_term(ex, n - 1, w)
    same_images = all(contains(a, b, r) and contains(b, a, r) for a, b, r in zip(deep_n, deep_m, rels))
    stabilized = same_images and lim_n == lim_m and lim1_n == lim1_m
    if not stabilized:
        lim_n = FgAbGroup(0, lim_n.torsion)
    return OracleResult(wrap(lim_n), wrap(lim1_n), stabilized, n)


def _explicit_colim(ex: Explicit, depth: int) -> SymbolicGroup:
    n = min(depth, len(ex.groups))
    if n < 3:
        return UNKNOWN
    w, w2 = n // 3, (2 * n) // 3
    last = ex.groups[n - 1]
    fwd = IntMatrix.identity(last.ngens)
    kernels = {}
    for k in range(n - 2, w - 1, -1):
        fwd = _reduce_rows(fwd @ ex.bonds[k], last)
        if k <= w2:
            gens, _ = homomorphism_kernel(fwd, ex.groups[k].relation_matrix(), last.relation_matrix())
            kernels[k] = gens
    for k in range(w, w2):
        # Q_k -> Q_{k+1} is injective by construction; check it is onto
        tgt = ex.groups[k + 1]
        quotient = group_from_relations(ex.bonds[k].hstack(kernels[k + 1], tgt.relation_matrix()))
        if not quotient.is_trivial:
            return UNKNOWN
    src = ex.groups[w]
    return wrap(group_from_relations(src.relation_matrix().hstack(kernels[w])))
