"""Finitely generated abelian groups over exact integer matrices.

Convention used throughout the package: a relation matrix has one row per
generator and one *column per relator*, so ``group_from_relations(R)`` is
``Z^rows / column-span(R)``.  Homomorphisms between free groups act on
column vectors, ``f(x) = M x``.

>>> group_from_relations(IntMatrix.diag([2, 3]))
FgAbGroup(free_rank=0, torsion=(6,))
>>> str(tensor_with(FgAbGroup(1, (4,)), Mod(6)))
'Z_2 + Z_6'
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from .primes import PrimeSet, prime_factors


# ---------------------------------------------------------------------------
# integer matrices


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix shape")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError(f"entry count does not match shape {self.rows}x{self.cols}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [tuple(int(x) for x in r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("give cols explicitly for a matrix with no rows")
            cols = len(rows[0])
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def diag(cls, values: Sequence[int], rows: int | None = None, cols: int | None = None) -> "IntMatrix":
        k = len(values)
        rows = k if rows is None else rows
        cols = k if cols is None else cols
        return cls(rows, cols, tuple(
            tuple(values[i] if i == j and i < k else 0 for j in range(cols)) for i in range(rows)))

    @classmethod
    def scalar(cls, c: int) -> "IntMatrix":
        return cls(1, 1, ((c,),))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols_b = list(zip(*other.entries)) if other.rows else [()] * other.cols
        return IntMatrix(self.rows, other.cols, tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in cols_b) for row in self.entries))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(tuple(-x for x in r) for r in self.entries))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in addition")
        return IntMatrix(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(
            tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)))

    T = property(transpose)

    def hstack(self, *others: "IntMatrix") -> "IntMatrix":
        out = [list(r) for r in self.entries]
        cols = self.cols
        for o in others:
            if o.rows != self.rows:
                raise ValueError("hstack needs equal row counts")
            for r, extra in zip(out, o.entries):
                r.extend(extra)
            cols += o.cols
        return IntMatrix(self.rows, cols, tuple(map(tuple, out)))

    def take_rows(self, start: int, stop: int) -> "IntMatrix":
        return IntMatrix(stop - start, self.cols, self.entries[start:stop])

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = [list(r) for r in self.entries]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.entries[i][i] for i in range(min(self.rows, self.cols)))

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in self.entries) + "]"


def block_diag(blocks: Sequence[IntMatrix]) -> IntMatrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(b.entries):
            out[r0 + i][c0:c0 + b.cols] = row
        r0 += b.rows
        c0 += b.cols
    return IntMatrix(rows, cols, tuple(map(tuple, out)))


# ---------------------------------------------------------------------------
# Smith normal form


def _min_pivot(d, t, rows, cols):
    best = None
    for i in rows:
        for j in cols:
            x = d[i][j]
            if x and (best is None or abs(x) < best[0]):
                best = (abs(x), i, j)
                if best[0] == 1:
                    return best
    return best


def smith_normal_form(a: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, D, V) with U @ A @ V == D, U and V unimodular, D in Smith form.

    Elementary-operation reduction, always pivoting on an entry of least
    absolute value.  Diagonal entries are nonnegative and each divides the
    next; zeros come last.
    """
    return _reduce(a, track=True, smith=True)


def _reduce(a: IntMatrix, track: bool, smith: bool):
    # track=False leaves the transforms empty; smith=False stops at a
    # diagonal form without enforcing the divisibility chain
    m, n = a.rows, a.cols
    d = [list(r) for r in a.entries]
    u = [[int(i == j) for j in range(m)] for i in range(m)] if track else [[] for _ in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)] if track else []

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, q):  # row_dst -= q * row_src
        rs, rd = d[src], d[dst]
        for k in range(n):
            rd[k] -= q * rs[k]
        us, ud = u[src], u[dst]
        for k in range(len(us)):
            ud[k] -= q * us[k]

    def add_col(src, dst, q):  # col_dst -= q * col_src
        for r in d:
            r[dst] -= q * r[src]
        for r in v:
            r[dst] -= q * r[src]

    for t in range(min(m, n)):
        # least entry of the first nonzero column: clearing never refills
        # earlier columns, so a full-matrix search is not needed
        piv = None
        for j in range(t, n):
            piv = _min_pivot(d, t, range(t, m), [j])
            if piv:
                break
        if piv is None:
            break
        _, i, j = piv
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            dirty = False
            p = d[t][t]
            for i in range(t + 1, m):
                if d[i][t]:
                    add_row(t, i, d[i][t] // p)
                    dirty = dirty or d[i][t] != 0
            for j in range(t + 1, n):
                if d[t][j]:
                    add_col(t, j, d[t][j] // p)
                    dirty = dirty or d[t][j] != 0
            if dirty:
                piv = _min_pivot(d, t, range(t, m), [t])
                piv2 = _min_pivot(d, t, [t], range(t, n))
                if piv2 and (piv is None or piv2[0] < piv[0]):
                    swap_cols(t, piv2[2])
                else:
                    swap_rows(t, piv[1])
                continue
            # row and column t are clear; enforce divisibility on the rest
            if not smith or p == 1:
                break
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if d[i][j] % p), None)
            if bad is None:
                break
            i, _ = bad
            add_row(i, t, -1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]

    if not track:
        return tuple(d[i][i] for i in range(min(m, n)))
    as_mat = lambda rows, r, c: IntMatrix(r, c, tuple(map(tuple, rows)))
    return as_mat(u, m, m), as_mat(d, m, n), as_mat(v, n, n)


def invariant_factors(a: IntMatrix) -> tuple[int, ...]:
    """Nonzero diagonal entries of the Smith form of ``a``."""
    if a.rows == 1 or a.cols == 1:
        g = gcd(*(x for row in a.entries for x in row))
        return (g,) if g else ()
    return _chain(x for x in _reduce(a, track=False, smith=False) if x)


def _chain(diagonal: Iterable[int]) -> tuple[int, ...]:
    # the invariant factors of a diagonal matrix, by gcd/lcm exchanges
    ds = [abs(x) for x in diagonal]
    for i in range(len(ds)):
        for j in range(i + 1, len(ds)):
            g = gcd(ds[i], ds[j])
            ds[i], ds[j] = g, ds[i] * ds[j] // g
    return tuple(ds)


def rank(a: IntMatrix) -> int:
    return len(invariant_factors(a))


def kernel_basis(a: IntMatrix) -> IntMatrix:
    """Columns form a basis of {x in Z^cols : a x = 0}."""
    _, d, v = _reduce(a, track=True, smith=False)
    r = sum(1 for x in d.diagonal() if x)
    cols = list(range(r, a.cols))
    return IntMatrix(a.cols, len(cols), tuple(tuple(row[j] for j in cols) for row in v.entries))


# ---------------------------------------------------------------------------
# finitely generated abelian groups


@dataclass(frozen=True)
class FgAbGroup:
    """Z^free_rank + Z_d1 + ... + Z_dk with d1 | d2 | ... | dk, each di >= 2.

    The normal form is unique, so ``==`` is isomorphism.
    """

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        tors = tuple(int(d) for d in self.torsion)
        object.__setattr__(self, "torsion", tors)
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for d in tors:
            if d < 2:
                raise ValueError(f"invariant factor {d} < 2")
        for a, b in zip(tors, tors[1:]):
            if b % a:
                raise ValueError(f"invariant factors {tors} do not form a divisibility chain")

    @classmethod
    def from_orders(cls, *orders: int) -> "FgAbGroup":
        """Direct sum of cyclic groups of the given orders (0 means Z)."""
        return group_from_relations(IntMatrix.diag(list(orders)))

    @classmethod
    def cyclic(cls, m: int) -> "FgAbGroup":
        return cls.from_orders(m)

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    @property
    def ngens(self) -> int:
        return len(self.torsion) + self.free_rank

    def relation_matrix(self) -> IntMatrix:
        """Relators of the canonical presentation: torsion generators first."""
        k = len(self.torsion)
        return IntMatrix.diag(list(self.torsion), rows=self.ngens, cols=k)

    def cyclic_orders(self) -> tuple[int, ...]:
        """Orders of the canonical generators (0 for infinite cyclic)."""
        return self.torsion + (0,) * self.free_rank

    def __add__(self, other: "FgAbGroup") -> "FgAbGroup":
        return FgAbGroup.from_orders(*self.cyclic_orders(), *other.cyclic_orders())

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z_{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def group_from_relations(r: IntMatrix) -> FgAbGroup:
    """Z^rows modulo the span of the columns of r."""
    factors = invariant_factors(r)
    return FgAbGroup(r.rows - len(factors), tuple(d for d in factors if d != 1))


def kernel_cokernel(f: IntMatrix) -> tuple[FgAbGroup, FgAbGroup]:
    """Kernel and cokernel of f: Z^cols -> Z^rows."""
    return FgAbGroup(f.cols - rank(f)), group_from_relations(f)


def subquotient(gens: IntMatrix, rels: IntMatrix) -> FgAbGroup:
    """(<gens> + <rels>) / <rels> for column generators in a common Z^n."""
    k = gens.cols
    if k == 0:
        return FgAbGroup()
    ker = kernel_basis(gens.hstack(rels))
    return group_from_relations(ker.take_rows(0, k))


def homomorphism_kernel(m: IntMatrix, src_rels: IntMatrix, tgt_rels: IntMatrix
                        ) -> tuple[IntMatrix, FgAbGroup]:
    """Kernel of x -> m x from Z^a/<src_rels> to Z^b/<tgt_rels>.

    Returns generators of the kernel (columns in Z^a) and its isomorphism type.
    The map must be well defined, i.e. ``m @ src_rels`` lies in ``<tgt_rels>``.
    """
    a = m.cols
    ker = kernel_basis(m.hstack(tgt_rels)).take_rows(0, a)
    return ker, subquotient(ker, src_rels)


def contains(big: IntMatrix, small: IntMatrix, rels: IntMatrix) -> bool:
    """Is <small> contained in <big> + <rels>?  (All columns in a common Z^n.)"""
    if small.cols == 0:
        return True
    if small.rows == 1:
        g = gcd(*big.entries[0], *rels.entries[0])
        return all(x == 0 if g == 0 else x % g == 0 for x in small.entries[0])
    # fg abelian groups are Hopfian: a proper quotient is never isomorphic
    before = group_from_relations(big.hstack(rels))
    after = group_from_relations(big.hstack(rels, small))
    return before == after


# ---------------------------------------------------------------------------
# coefficient rings


@dataclass(frozen=True)
class CoefficientRing:
    kind: str  # "Z", "Q" or "mod"
    modulus: int | None = None

    def __post_init__(self):
        if self.kind == "mod":
            if self.modulus is None or self.modulus < 2:
                raise ValueError("Mod(m) requires m >= 2")
        elif self.kind in ("Z", "Q"):
            if self.modulus is not None:
                raise ValueError(f"{self.kind} takes no modulus")
        else:
            raise ValueError(f"unknown coefficient ring {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> "CoefficientRing":
        """``Z``, ``Q`` or ``mod:<m>``."""
        text = text.strip()
        if text == "Z":
            return INTEGERS
        if text == "Q":
            return RATIONALS
        if text.startswith("mod:"):
            try:
                m = int(text[4:])
            except ValueError:
                raise ValueError(f"bad modulus in {text!r}") from None
            return Mod(m)
        raise ValueError(f"unknown ring {text!r} (expected Z, Q or mod:<m>)")

    @property
    def is_mod(self) -> bool:
        return self.kind == "mod"

    @property
    def is_prime_field(self) -> bool:
        return self.kind == "mod" and prime_factors(self.modulus) == (self.modulus,)

    @property
    def is_field(self) -> bool:
        return self.kind == "Q" or self.is_prime_field

    def as_group(self) -> "SymbolicGroup":
        """The additive group of the ring."""
        if self.kind == "Z":
            return fg(1)
        if self.kind == "Q":
            return RATIONALS_GROUP
        return cyclic(self.modulus)

    def syntax(self) -> str:
        return f"mod:{self.modulus}" if self.is_mod else self.kind

    def __str__(self) -> str:
        return f"Z_{self.modulus}" if self.is_mod else self.kind


INTEGERS = CoefficientRing("Z")
RATIONALS = CoefficientRing("Q")


def Mod(m: int) -> CoefficientRing:
    return CoefficientRing("mod", m)


# ---------------------------------------------------------------------------
# symbolic groups


class SymbolicGroup:
    """Base for groups that may arise as limits: see the concrete subclasses."""

    is_trivial = False
    is_nontrivial = False
    is_identified = True

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Trivial(SymbolicGroup):
    is_trivial = True

    def to_json(self):
        return {"kind": "trivial", "display": "0"}

    def __str__(self):
        return "0"


@dataclass(frozen=True)
class Fg(SymbolicGroup):
    group: FgAbGroup
    is_nontrivial = True

    def __post_init__(self):
        if self.group.is_trivial:
            raise ValueError("use Trivial() for the zero group")

    def to_json(self):
        return {"kind": "fg", "free_rank": self.group.free_rank,
                "torsion": list(self.group.torsion), "display": str(self)}

    def __str__(self):
        return str(self.group)


@dataclass(frozen=True)
class Rationals(SymbolicGroup):
    is_nontrivial = True

    def to_json(self):
        return {"kind": "rationals", "display": "Q"}

    def __str__(self):
        return "Q"


@dataclass(frozen=True)
class LocalizedIntegers(SymbolicGroup):
    """The subring of Q with the given primes inverted."""

    inverted: PrimeSet
    is_nontrivial = True

    def to_json(self):
        return {"kind": "localized-integers", "inverted": self.inverted.descriptor(),
                "display": str(self)}

    def __str__(self):
        return f"Z[1/p : p in {self.inverted}]"


@dataclass(frozen=True)
class DirectSum(SymbolicGroup):
    summands: tuple[SymbolicGroup, ...]
    is_nontrivial = True

    def __post_init__(self):
        if len(self.summands) < 2:
            raise ValueError("a DirectSum needs at least two summands; use direct_sum()")
        for s in self.summands:
            if isinstance(s, (Trivial, DirectSum)) or not s.is_identified:
                raise ValueError(f"bad summand {s!r}")

    def to_json(self):
        return {"kind": "direct-sum", "summands": [s.to_json() for s in self.summands],
                "display": str(self)}

    def __str__(self):
        return " + ".join(str(s) for s in self.summands)


@dataclass(frozen=True)
class NonTrivialUnknown(SymbolicGroup):
    """Certified nonzero, isomorphism type not identified."""

    reason: str
    is_nontrivial = True
    is_identified = False

    def __post_init__(self):
        if not self.reason:
            raise ValueError("NonTrivialUnknown needs a reason code")

    def to_json(self):
        return {"kind": "nontrivial-unknown", "reason": self.reason, "display": str(self)}

    def __str__(self):
        return f"nonzero({self.reason})"


@dataclass(frozen=True)
class Unknown(SymbolicGroup):
    is_identified = False

    def to_json(self):
        return {"kind": "unknown", "display": "?"}

    def __str__(self):
        return "?"


TRIVIAL = Trivial()
RATIONALS_GROUP = Rationals()
UNKNOWN = Unknown()


def fg(free_rank: int = 0, torsion: Iterable[int] = ()) -> SymbolicGroup:
    """Symbolic wrapper of Z^free_rank + (cyclic groups of the given orders)."""
    g = FgAbGroup.from_orders(*tuple(torsion), *([0] * free_rank))
    return wrap(g)


def wrap(g: FgAbGroup) -> SymbolicGroup:
    return TRIVIAL if g.is_trivial else Fg(g)


def cyclic(m: int) -> SymbolicGroup:
    return fg(0, (m,)) if m != 0 else fg(1)


def localized(primes: PrimeSet) -> SymbolicGroup:
    # inverting every prime gives Q itself
    if primes.kind == "all":
        return RATIONALS_GROUP
    return LocalizedIntegers(primes)


def _summand_key(s: SymbolicGroup):
    order = {Fg: 0, LocalizedIntegers: 1, Rationals: 2}
    return (order[type(s)], str(s))


def direct_sum(*groups: SymbolicGroup) -> SymbolicGroup:
    """Normalized direct sum: drops zeros and merges finitely generated parts."""
    flat = []
    for g in groups:
        flat.extend(g.summands if isinstance(g, DirectSum) else (g,))
    flat = [g for g in flat if not g.is_trivial]
    unidentified = [g for g in flat if not g.is_identified]
    if unidentified:
        for g in unidentified:
            if isinstance(g, NonTrivialUnknown):
                return g
        if any(g.is_nontrivial for g in flat):
            return NonTrivialUnknown("unidentified-summand")
        return UNKNOWN
    fin = FgAbGroup()
    rest = []
    for g in flat:
        if isinstance(g, Fg):
            fin = fin + g.group
        else:
            rest.append(g)
    parts = ([] if fin.is_trivial else [Fg(fin)]) + sorted(rest, key=_summand_key)
    if not parts:
        return TRIVIAL
    if len(parts) == 1:
        return parts[0]
    return DirectSum(tuple(parts))


def order(g: SymbolicGroup) -> int | None:
    """Order of a finite symbolic group, else None."""
    if g.is_trivial:
        return 1
    if isinstance(g, Fg):
        return g.group.order()
    return None


# ---------------------------------------------------------------------------
# functors against a coefficient ring


def _cyclic_summands(a: FgAbGroup):
    return list(a.torsion), a.free_rank


def tensor_with(a: FgAbGroup, r: CoefficientRing) -> SymbolicGroup:
    """A (x) R."""
    torsion, free = _cyclic_summands(a)
    parts = [r.as_group()] * free
    for d in torsion:
        if r.kind == "Z":
            parts.append(cyclic(d))
        elif r.is_mod:
            parts.append(_gcd_cyclic(d, r.modulus))
    return direct_sum(*parts)


def tor_with(a: FgAbGroup, r: CoefficientRing) -> SymbolicGroup:
    """Tor(A, R)."""
    torsion, _ = _cyclic_summands(a)
    if not r.is_mod:
        return TRIVIAL
    return direct_sum(*(_gcd_cyclic(d, r.modulus) for d in torsion))


def hom_into(a: FgAbGroup, r: CoefficientRing) -> SymbolicGroup:
    """Hom(A, R)."""
    torsion, free = _cyclic_summands(a)
    parts = [r.as_group()] * free
    if r.is_mod:
        parts.extend(_gcd_cyclic(d, r.modulus) for d in torsion)
    return direct_sum(*parts)


def ext_into(a: FgAbGroup, r: CoefficientRing) -> SymbolicGroup:
    """Ext(A, R)."""
    torsion, _ = _cyclic_summands(a)
    if r.kind == "Q":
        return TRIVIAL
    if r.kind == "Z":
        return direct_sum(*(cyclic(d) for d in torsion))
    return direct_sum(*(_gcd_cyclic(d, r.modulus) for d in torsion))


def _gcd_cyclic(d: int, m: int) -> SymbolicGroup:
    g = gcd(d, m)
    return TRIVIAL if g == 1 else cyclic(g)


def _symbolic_functor(fn, g: SymbolicGroup, r: CoefficientRing) -> SymbolicGroup:
    if g.is_trivial:
        return TRIVIAL
    if isinstance(g, Fg):
        return fn(g.group, r)
    raise TypeError(f"{fn.__name__} is only defined on finitely generated groups, got {g}")


def tensor_symbolic(g: SymbolicGroup, r: CoefficientRing) -> SymbolicGroup:
    return _symbolic_functor(tensor_with, g, r)


def tor_symbolic(g: SymbolicGroup, r: CoefficientRing) -> SymbolicGroup:
    return _symbolic_functor(tor_with, g, r)


def hom_symbolic(g: SymbolicGroup, r: CoefficientRing) -> SymbolicGroup:
    return _symbolic_functor(hom_into, g, r)


def ext_symbolic(g: SymbolicGroup, r: CoefficientRing) -> SymbolicGroup:
    return _symbolic_functor(ext_into, g, r)
