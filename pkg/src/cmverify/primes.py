"""Prime sets and the multiplier sequences built from them.

A prime set is either a finite list, all primes, or all primes except a
finite list.  The multiplier sequence attached to it is

    n(i) = p_1 * ... * p_k        for every i, if the set is finite (k elements)
    n(i) = p_1 * ... * p_i        if the set is infinite

where p_1 < p_2 < ... enumerates the set in ascending order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import prod


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> tuple[int, ...]:
    """Distinct prime factors of |n| in ascending order (empty for 0, 1)."""
    n = abs(n)
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return tuple(out)


@lru_cache(maxsize=None)
def _nth_prime(k: int) -> int:
    # 1-based
    if k == 1:
        return 2
    p = _nth_prime(k - 1) + 1
    while not is_prime(p):
        p += 1
    return p


@lru_cache(maxsize=256)
def _first_members(ps: "PrimeSet", k: int) -> tuple[int, ...]:
    out = []
    j = 0
    while len(out) < k:
        j += 1
        if _nth_prime(j) in ps:
            out.append(_nth_prime(j))
    return tuple(out)


FINITE = "finite"
ALL = "all"
ALL_EXCEPT = "all-except"


@dataclass(frozen=True)
class PrimeSet:
    """A nonempty set of primes: finite, cofinite, or all of them."""

    kind: str
    listed: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in (FINITE, ALL, ALL_EXCEPT):
            raise ValueError(f"unknown prime set kind {self.kind!r}")
        listed = tuple(sorted(set(self.listed)))
        for p in listed:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
        if self.kind == FINITE and not listed:
            raise ValueError("the prime set must be nonempty")
        if self.kind == ALL and listed:
            raise ValueError("the set of all primes takes no exceptions list")
        if self.kind == ALL_EXCEPT and not listed:
            object.__setattr__(self, "kind", ALL)
        object.__setattr__(self, "listed", listed)

    @classmethod
    def of(cls, *primes: int) -> "PrimeSet":
        return cls(FINITE, tuple(primes))

    @classmethod
    def all(cls) -> "PrimeSet":
        return cls(ALL)

    @classmethod
    def all_except(cls, *primes: int) -> "PrimeSet":
        return cls(ALL_EXCEPT, tuple(primes))

    @classmethod
    def parse(cls, text: str) -> "PrimeSet":
        """Parse ``2,3,5``, ``all`` or ``all-except:2,7``."""
        text = text.strip()
        if text == "all":
            return cls.all()
        if text.startswith("all-except:"):
            rest = text[len("all-except:"):]
            return cls.all_except(*_parse_int_list(rest))
        return cls.of(*_parse_int_list(text))

    @property
    def is_finite(self) -> bool:
        return self.kind == FINITE

    def __contains__(self, p: int) -> bool:
        if not is_prime(p):
            return False
        if self.kind == FINITE:
            return p in self.listed
        if self.kind == ALL:
            return True
        return p not in self.listed

    def nth(self, i: int) -> int:
        """The i-th member (1-based) in ascending order."""
        if i < 1:
            raise IndexError(i)
        if self.kind == FINITE:
            return self.listed[i - 1]
        return _first_members(self, i)[i - 1]

    def index(self, p: int) -> int:
        """Position (1-based) of p in the ascending enumeration."""
        if p not in self:
            raise ValueError(f"{p} is not in {self}")
        if self.kind == FINITE:
            return self.listed.index(p) + 1
        return sum(1 for q in range(2, p + 1) if is_prime(q) and q in self)

    def __len__(self) -> int:
        if not self.is_finite:
            raise TypeError("infinite prime set has no length")
        return len(self.listed)

    def descriptor(self) -> str:
        if self.kind == FINITE:
            return ",".join(map(str, self.listed))
        if self.kind == ALL:
            return "all"
        return "all-except:" + ",".join(map(str, self.listed))

    def __str__(self) -> str:
        if self.kind == FINITE:
            return "{" + ",".join(map(str, self.listed)) + "}"
        if self.kind == ALL:
            return "all primes"
        return "all primes except {" + ",".join(map(str, self.listed)) + "}"


def _parse_int_list(text: str) -> tuple[int, ...]:
    parts = [s.strip() for s in text.split(",") if s.strip()]
    if not parts:
        raise ValueError("empty prime list")
    try:
        return tuple(int(s) for s in parts)
    except ValueError:
        raise ValueError(f"not a list of integers: {text!r}") from None


CONSTANT_PRODUCT = "constant-product"
PARTIAL_PRODUCTS = "partial-products"


@dataclass(frozen=True)
class MultiplierSequence:
    """The bonding multipliers n(1), n(2), ... of a prime set."""

    primes: PrimeSet

    @property
    def mode(self) -> str:
        return CONSTANT_PRODUCT if self.primes.is_finite else PARTIAL_PRODUCTS

    def n(self, i: int) -> int:
        if i < 1:
            raise IndexError(f"multipliers are indexed from 1, got {i}")
        if self.primes.is_finite:
            return prod(self.primes.listed)
        return prod(_first_members(self.primes, i))

    def divides_eventually(self, r: int) -> bool:
        """For prime r: r divides n(i) for all large i."""
        return r in self.primes

    def never_divides(self, r: int) -> bool:
        return r not in self.primes

    def exceeds_one_infinitely_often(self) -> bool:
        # every prime set is nonempty, so n(i) >= 2 from i = 1 on
        return True

    def __str__(self) -> str:
        return f"n(i) over {self.primes} ({self.mode})"
