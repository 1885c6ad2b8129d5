"""Independent reference computations for the test suite.

Nothing here calls into the library's Smith normal form or group
constructors: the oracles enumerate elements, use sympy, or build objects
whose answer is known by construction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import gcd

from cmverify.abelian import IntMatrix


# ---------------------------------------------------------------------------
# invariant factors


def sympy_invariant_factors(rows: list[list[int]]) -> tuple[int, ...]:
    """Nonzero invariant factors (positive, in divisibility order) via sympy."""
    from sympy import ZZ, Matrix
    from sympy.matrices.normalforms import smith_normal_form as sympy_snf

    if not rows or not rows[0]:
        return ()
    d = sympy_snf(Matrix(rows), domain=ZZ)
    diag = [abs(int(d[i, i])) for i in range(min(d.shape))]
    return tuple(sorted(x for x in diag if x))


def _det(m: list[list[int]]) -> int:
    from sympy import Matrix

    return int(Matrix(m).det())


def determinantal_invariant_factors(rows: list[list[int]]) -> tuple[int, ...]:
    """d_k = D_k / D_{k-1}, D_k the gcd of all k x k minors.  Small inputs only."""
    if not rows or not rows[0]:
        return ()
    r, c = len(rows), len(rows[0])
    out, prev = [], 1
    for k in range(1, min(r, c) + 1):
        g = 0
        for ri in combinations(range(r), k):
            for ci in combinations(range(c), k):
                g = gcd(g, _det([[rows[i][j] for j in ci] for i in ri]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return tuple(out)


# ---------------------------------------------------------------------------
# cyclic groups by element tables


def order_tensor_cyclic(a: int, m: int) -> int:
    """|Z_a (x) Z_m| = |Z_m / a Z_m|, counted from the image of x -> a x."""
    image = {(a * x) % m for x in range(m)}
    return m // len(image)


def order_tor_cyclic(a: int, m: int) -> int:
    """|Tor(Z_a, Z_m)| = |{x in Z_m : a x = 0}|."""
    return sum(1 for x in range(m) if (a * x) % m == 0)


def order_hom_cyclic(a: int, m: int) -> int:
    """Homomorphisms Z_a -> Z_m are determined by where 1 goes."""
    return sum(1 for x in range(m) if (a * x) % m == 0)


def order_ext_cyclic(a: int, m: int) -> int:
    """Ext(Z_a, Z_m) = coker(Hom(Z, Z_m) -x a-> Hom(Z, Z_m)), by counting."""
    return order_tensor_cyclic(a, m)


def stable_image_order(m: int, c: int) -> int:
    """Order of the eventual image of x -> c x on Z_m, by iterating the image."""
    image = set(range(m))
    while True:
        nxt = {(c * x) % m for x in image}
        if nxt == image:
            return len(image)
        image = nxt


# ---------------------------------------------------------------------------
# unimodular matrices and complexes with a known answer


def random_unimodular(n: int, rng: random.Random, steps: int = 8, bound: int = 2) -> tuple[list, list]:
    """A random unimodular matrix and its inverse, built from elementary moves."""
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    inv = [[int(i == j) for j in range(n)] for i in range(n)]
    if n < 2:
        if rng.random() < 0.5:
            u, inv = [[-1]], [[-1]]
        return u, inv
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        q = rng.randint(-bound, bound)
        # u <- E u with E = I + q e_ij ; inv <- inv E^{-1}
        u[i] = [x + q * y for x, y in zip(u[i], u[j])]
        for row in inv:
            row[j] -= q * row[i]
    return u, inv


def matmul(a: list, b: list) -> list:
    if not a:
        return []
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(cols)] for i in range(len(a))]


@dataclass
class KnownComplex:
    ranks: list[int]
    diffs: list[list[list[int]]]  # diffs[k] = d_{k+1}, ranks[k] x ranks[k+1]
    free: list[int]  # Betti numbers
    torsion: list[list[int]]  # torsion[n] = orders of cyclic summands of H_n (each >= 2)

    def intmatrices(self) -> tuple[IntMatrix, ...]:
        return tuple(IntMatrix.from_rows(d, cols=self.ranks[k + 1]) for k, d in enumerate(self.diffs))


def random_known_complex(rng: random.Random, top: int = 3, max_pieces: int = 3,
                         max_coeff: int = 9) -> KnownComplex:
    """A free complex with prescribed homology, disguised by unimodular changes of basis.

    Built as a sum of elementary pieces: Z in one degree, or Z -k-> Z from
    degree n+1 to degree n; then each C_n is re-coordinatized.
    """
    ranks = [0] * (top + 1)
    free = [0] * (top + 1)
    torsion = [[] for _ in range(top + 1)]
    pieces = []  # (kind, degree, k)
    for _ in range(rng.randint(1, max_pieces * (top + 1))):
        n = rng.randint(0, top)
        if n < top and rng.random() < 0.6:
            k = rng.choice([0, 1, rng.randint(2, max_coeff), rng.randint(2, max_coeff)])
            pieces.append(("arrow", n, k))
        else:
            pieces.append(("point", n, 0))
    index = [[] for _ in range(top + 1)]  # basis positions per degree

    def slot(n):
        ranks[n] += 1
        return ranks[n] - 1

    arrows = []
    for kind, n, k in pieces:
        if kind == "point":
            slot(n)
            free[n] += 1
        else:
            lo, hi = slot(n), slot(n + 1)
            arrows.append((n, lo, hi, k))
            if k == 0:
                free[n] += 1
                free[n + 1] += 1
            elif k > 1:
                torsion[n].append(k)
    diffs = [[[0] * ranks[n + 1] for _ in range(ranks[n])] for n in range(top)]
    for n, lo, hi, k in arrows:
        diffs[n][lo][hi] = k
    # change basis: d'_{n+1} = U_n d_{n+1} U_{n+1}^{-1}
    us = [random_unimodular(r, rng) for r in ranks]
    for n in range(top):
        diffs[n] = matmul(matmul(us[n][0], diffs[n]), us[n + 1][1]) if ranks[n] and ranks[n + 1] else diffs[n]
    return KnownComplex(ranks, diffs, free, [sorted(t) for t in torsion])
