"""Finite chain complexes of free abelian groups and their (co)homology.

Homology with coefficients is available by two independent routes:

* ``method="uct"`` assembles the answer from integral homology with the
  universal coefficient formulas (tensor/Tor, or Hom/Ext for cohomology);
* ``method="field"`` tensors the complex with a field (a prime field or Q)
  and uses rank-nullity there.

The two must agree whenever both apply; the test suite holds them to it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .abelian import (
    INTEGERS,
    RATIONALS_GROUP,
    TRIVIAL,
    CoefficientRing,
    Fg,
    FgAbGroup,
    IntMatrix,
    SymbolicGroup,
    direct_sum,
    ext_symbolic,
    hom_symbolic,
    invariant_factors,
    tensor_symbolic,
    tor_symbolic,
    wrap,
)


class GradedGroupTable:
    """Degree -> group, zero outside finitely many degrees.

    ``top`` only controls how many degrees are displayed; equality looks at
    the nonzero entries alone.
    """

    __slots__ = ("_groups", "top")

    def __init__(self, groups: Mapping[int, SymbolicGroup] | Sequence[SymbolicGroup], top: int | None = None):
        if not isinstance(groups, Mapping):
            groups = dict(enumerate(groups))
        nonzero = {int(n): g for n, g in groups.items() if not g.is_trivial}
        if any(n < 0 for n in nonzero):
            raise ValueError("negative degrees are not supported")
        self._groups = dict(sorted(nonzero.items()))
        if top is None:
            top = max(list(groups) + [0])
        self.top = max([top] + list(self._groups))

    def __getitem__(self, n: int) -> SymbolicGroup:
        return self._groups.get(n, TRIVIAL)

    def support(self) -> tuple[int, ...]:
        return tuple(self._groups)

    def as_list(self) -> list[SymbolicGroup]:
        return [self[n] for n in range(self.top + 1)]

    def __eq__(self, other):
        if not isinstance(other, GradedGroupTable):
            return NotImplemented
        return self._groups == other._groups

    def __hash__(self):
        return hash(tuple(self._groups.items()))

    def __repr__(self):
        return f"GradedGroupTable({self.as_list()!r})"

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.as_list()) + ")"


@dataclass(frozen=True)
class ChainComplex:
    """C_0 <- C_1 <- ... <- C_top with d_n: C_n -> C_{n-1}.

    ``differentials[k]`` is d_{k+1}, a ranks[k] x ranks[k+1] matrix.
    """

    ranks: tuple[int, ...]
    differentials: tuple[IntMatrix, ...]

    def __post_init__(self):
        ranks = tuple(self.ranks)
        diffs = tuple(self.differentials)
        object.__setattr__(self, "ranks", ranks)
        object.__setattr__(self, "differentials", diffs)
        if not ranks:
            raise ValueError("a chain complex needs at least degree 0")
        if any(r < 0 for r in ranks):
            raise ValueError("negative rank")
        if len(diffs) != len(ranks) - 1:
            raise ValueError(f"expected {len(ranks) - 1} differentials, got {len(diffs)}")
        for k, d in enumerate(diffs):
            if (d.rows, d.cols) != (ranks[k], ranks[k + 1]):
                raise ValueError(f"d_{k + 1} has shape {d.rows}x{d.cols}, "
                                 f"expected {ranks[k]}x{ranks[k + 1]}")
        for k in range(len(diffs) - 1):
            if not (diffs[k] @ diffs[k + 1]).is_zero():
                raise ValueError(f"d_{k + 1} d_{k + 2} != 0")

    @property
    def top_degree(self) -> int:
        return len(self.ranks) - 1

    def d(self, n: int) -> IntMatrix:
        """d_n: C_n -> C_{n-1}, zero matrices past either end."""
        rank = lambda k: self.ranks[k] if 0 <= k <= self.top_degree else 0
        if 1 <= n <= self.top_degree:
            return self.differentials[n - 1]
        return IntMatrix.zeros(rank(n - 1), rank(n))

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * r for n, r in enumerate(self.ranks))


def zero_complex(ranks: Iterable[int] = (0,)) -> ChainComplex:
    ranks = tuple(ranks)
    return ChainComplex(ranks, tuple(IntMatrix.zeros(ranks[k], ranks[k + 1])
                                     for k in range(len(ranks) - 1)))


def lens_complex(q: int) -> ChainComplex:
    """Cellular chains of the lens space L(q, 1): Z <-0- Z <-q- Z <-0- Z."""
    if q < 1:
        raise ValueError(f"lens space order must be >= 1, got {q}")
    z = IntMatrix.scalar(0)
    return ChainComplex((1, 1, 1, 1), (z, IntMatrix.scalar(q), z))


def sphere_complex(n: int) -> ChainComplex:
    if n < 0:
        raise ValueError("sphere dimension must be >= 0")
    if n == 0:
        return ChainComplex((2,), ())
    ranks = (1,) + (0,) * (n - 1) + (1,)
    return zero_complex(ranks)


def integral_homology(c: ChainComplex) -> GradedGroupTable:
    out = {}
    ranks_d = [len(invariant_factors(c.d(n))) for n in range(c.top_degree + 2)]
    for n in range(c.top_degree + 1):
        factors = invariant_factors(c.d(n + 1))
        free = c.ranks[n] - ranks_d[n] - len(factors)
        out[n] = wrap(FgAbGroup(free, tuple(d for d in factors if d > 1)))
    return GradedGroupTable(out, top=c.top_degree)


def uct_homology(h: GradedGroupTable, r: CoefficientRing) -> GradedGroupTable:
    """H_n(-; R) = H_n (x) R + Tor(H_{n-1}, R) from an integral table."""
    top = h.top + 1
    out = {n: direct_sum(tensor_symbolic(h[n], r), tor_symbolic(h[n - 1], r) if n else TRIVIAL)
           for n in range(top + 1)}
    return GradedGroupTable(out, top=h.top)


def uct_cohomology(h: GradedGroupTable, r: CoefficientRing) -> GradedGroupTable:
    """H^n(-; R) = Hom(H_n, R) + Ext(H_{n-1}, R) from an integral table."""
    top = h.top + 1
    out = {n: direct_sum(hom_symbolic(h[n], r), ext_symbolic(h[n - 1], r) if n else TRIVIAL)
           for n in range(top + 1)}
    return GradedGroupTable(out, top=h.top)


def field_rank(a: IntMatrix, r: CoefficientRing) -> int:
    """Rank of ``a`` over the prime field Z_p or over Q."""
    if not r.is_field:
        raise ValueError(f"{r} is not a field")
    if r.is_mod:
        p = r.modulus
        rows = [[x % p for x in row] for row in a.entries]
        inv = lambda x: pow(x, -1, p)
        reduce = lambda x: x % p
    else:
        rows = [[Fraction(x) for x in row] for row in a.entries]
        inv = lambda x: 1 / x
        reduce = lambda x: x
    rk = 0
    ncols = a.cols
    for j in range(ncols):
        piv = next((i for i in range(rk, len(rows)) if rows[i][j]), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        s = inv(rows[rk][j])
        rows[rk] = [reduce(x * s) for x in rows[rk]]
        for i in range(len(rows)):
            if i != rk and rows[i][j]:
                f = rows[i][j]
                rows[i] = [reduce(x - f * y) for x, y in zip(rows[i], rows[rk])]
        rk += 1
    return rk


def _field_group(dim: int, r: CoefficientRing) -> SymbolicGroup:
    if r.is_mod:
        return wrap(FgAbGroup(0, (r.modulus,) * dim))
    return direct_sum(*([RATIONALS_GROUP] * dim))


def _field_table(c: ChainComplex, r: CoefficientRing, dual: bool) -> GradedGroupTable:
    out = {}
    for n in range(c.top_degree + 1):
        if dual:
            # coboundaries delta^n = d_{n+1}^T and delta^{n-1} = d_n^T
            outgoing, incoming = c.d(n + 1).transpose(), c.d(n).transpose()
        else:
            outgoing, incoming = c.d(n), c.d(n + 1)
        dim = c.ranks[n] - field_rank(outgoing, r) - field_rank(incoming, r)
        out[n] = _field_group(dim, r)
    return GradedGroupTable(out, top=c.top_degree)


def homology_with_coefficients(c: ChainComplex, r: CoefficientRing, method: str = "uct") -> GradedGroupTable:
    if method == "uct":
        return uct_homology(integral_homology(c), r)
    if method == "field":
        return _field_table(c, r, dual=False)
    raise ValueError(f"unknown method {method!r}")


def cohomology_with_coefficients(c: ChainComplex, r: CoefficientRing, method: str = "uct") -> GradedGroupTable:
    if method == "uct":
        return uct_cohomology(integral_homology(c), r)
    if method == "field":
        return _field_table(c, r, dual=True)
    raise ValueError(f"unknown method {method!r}")


def _drop_unit(g: SymbolicGroup, unit: FgAbGroup) -> SymbolicGroup:
    if not isinstance(g, Fg):
        raise ValueError(f"degree-0 group {g} has no {unit} summand to reduce by")
    orders = list(g.group.cyclic_orders())
    (u,) = unit.cyclic_orders()
    if u not in orders:
        raise ValueError(f"degree-0 group {g} has no {unit} summand to reduce by")
    orders.remove(u)
    return wrap(FgAbGroup.from_orders(*orders))


def suspension_homology(t: GradedGroupTable, coefficients: CoefficientRing = INTEGERS) -> GradedGroupTable:
    """Homology of the suspension from the homology of the space.

    Reduces degree 0 by one copy of the coefficient group, shifts every
    degree up by one, and puts the coefficient group back in degree 0 (the
    suspension is connected).
    """
    if t[0].is_trivial:
        raise ValueError("degree-0 homology is zero: no basepoint component to suspend")
    unit = coefficients.as_group()
    if not isinstance(unit, Fg):
        raise ValueError("suspension tables are supported for Z and Z_m coefficients")
    reduced0 = _drop_unit(t[0], unit.group)
    out = {0: unit, 1: reduced0}
    for n in range(1, t.top + 1):
        out[n + 1] = t[n]
    return GradedGroupTable(out, top=t.top + 1)
