"""Deduction over finite exact sequences with partially known terms.

A sequence X_0 -> X_1 -> ... -> X_{n-1} is exact at every interior term.
Arrow k goes from X_k to X_{k+1}.  Facts about arrows ("zero", "mono",
"epi") and terms ("zero", "nonzero", an identified group) are derived by a
fixed set of sound rules until nothing changes:

R1  0 -> U -> 0 forces U = 0
R2  an arrow that is both mono and epi transports an identified group
R3  U between two zero terms is zero
R4  exactness: arrow k epi <=> arrow k+1 zero; arrow k zero <=> arrow k+1 mono;
    arrows touching a zero term are zero, arrows out of it mono, into it epi
R5  a mono out of a nonzero group, or an epi onto one, has a nonzero other end
R6  A >-> U ->> C with C free: U = A + C
R7  an arrow that is zero and mono has zero source; zero and epi, zero target

Extension problems are never solved: with C not free the middle term stays
undetermined (or merely nonzero).  Every derived fact is logged as a
``Step``; ``replay`` re-checks a log step by step.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .abelian import (
    TRIVIAL,
    UNKNOWN,
    Fg,
    NonTrivialUnknown,
    SymbolicGroup,
    direct_sum,
)

ZERO, MONO, EPI, ISO = "zero", "mono", "epi", "iso"


class InconsistencyError(Exception):
    """The given terms and annotations contradict exactness."""


@dataclass(frozen=True)
class ExactSequence:
    terms: tuple[tuple[str, SymbolicGroup | None], ...]
    annotations: tuple[tuple[int, str], ...] = ()

    def __post_init__(self):
        terms = tuple((str(label), g) for label, g in self.terms)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "annotations", tuple(sorted(set(self.annotations))))
        if len(terms) < 3:
            raise ValueError("an exact sequence needs at least 3 terms")
        for k, fact in self.annotations:
            if not 0 <= k < len(terms) - 1:
                raise ValueError(f"annotation on arrow {k}, which does not exist")
            if fact not in (ZERO, MONO, EPI, ISO):
                raise ValueError(f"unknown annotation {fact!r}")

    @classmethod
    def of(cls, terms: Sequence[tuple[str, SymbolicGroup | None]], annotations: dict[int, str] | None = None):
        return cls(tuple(terms), tuple((annotations or {}).items()))

    def labels(self) -> list[str]:
        return [label for label, _ in self.terms]

    def unknown_positions(self) -> list[int]:
        return [i for i, (_, g) in enumerate(self.terms) if g is None or not g.is_identified]


@dataclass(frozen=True)
class Step:
    rule: str
    kind: str  # "term" or "arrow"
    index: int
    fact: str  # "zero"/"nonzero"/"value" for terms, "zero"/"mono"/"epi" for arrows
    value: SymbolicGroup | None = None
    premises: tuple[str, ...] = ()

    def describe(self, labels: Sequence[str]) -> str:
        if self.kind == "arrow":
            what = f"{labels[self.index]} -> {labels[self.index + 1]} is {self.fact}"
        elif self.fact == "value":
            what = f"{labels[self.index]} = {self.value}"
        else:
            what = f"{labels[self.index]} is {self.fact}"
        because = "; ".join(self.premises)
        return f"[{self.rule}] {what}" + (f"  ({because})" if because else "")

    def to_json(self) -> dict:
        out = {"rule": self.rule, "kind": self.kind, "index": self.index, "fact": self.fact,
               "premises": list(self.premises)}
        if self.value is not None:
            out["value"] = self.value.to_json()
        return out


@dataclass(frozen=True)
class Verdict:
    kind: str  # "determined", "nontrivial" or "undetermined"
    group: SymbolicGroup | None = None

    def as_group(self) -> SymbolicGroup:
        if self.kind == "determined":
            return self.group
        if self.kind == "nontrivial":
            return self.group if self.group is not None else NonTrivialUnknown("exact-sequence")
        return UNKNOWN

    def __str__(self):
        if self.kind == "determined":
            return f"Determined({self.group})"
        return "NonTrivial" if self.kind == "nontrivial" else "Undetermined"


@dataclass
class Deduction:
    sequence: ExactSequence
    verdicts: dict[int, Verdict]
    trace: list[Step] = field(default_factory=list)

    def verdict(self, label_or_index) -> Verdict:
        i = label_or_index if isinstance(label_or_index, int) else self.sequence.labels().index(label_or_index)
        return self.verdicts[i]

    def explain(self) -> list[str]:
        labels = self.sequence.labels()
        return [s.describe(labels) for s in self.trace]


class _State:
    def __init__(self, seq: ExactSequence):
        self.labels = seq.labels()
        n = len(seq.terms)
        self.n = n
        self.value: list[SymbolicGroup | None] = [None] * n
        self.status: list[str | None] = [None] * n
        self.hint: list[SymbolicGroup | None] = [None] * n  # NonTrivialUnknown carried along
        for i, (_, g) in enumerate(seq.terms):
            if g is None:
                continue
            if g.is_trivial:
                self.status[i] = ZERO
                self.value[i] = TRIVIAL
            elif g.is_nontrivial:
                self.status[i] = "nonzero"
                if g.is_identified:
                    self.value[i] = g
                else:
                    self.hint[i] = g
        self.arrows: list[set[str]] = [set() for _ in range(n - 1)]
        for k, fact in seq.annotations:
            self.arrows[k].update((MONO, EPI) if fact == ISO else (fact,))
        self._check()

    def _check(self):
        for k, facts in enumerate(self.arrows):
            if ZERO in facts and MONO in facts and self.status[k] == "nonzero":
                raise InconsistencyError(
                    f"{self.labels[k]} -> {self.labels[k + 1]} is zero and mono out of a nonzero group")
            if ZERO in facts and EPI in facts and self.status[k + 1] == "nonzero":
                raise InconsistencyError(
                    f"{self.labels[k]} -> {self.labels[k + 1]} is zero and epi onto a nonzero group")

    def has(self, k: int, fact: str) -> bool:
        return 0 <= k < self.n - 1 and fact in self.arrows[k]

    def zero(self, i: int) -> bool:
        return self.status[i] == ZERO

    def nonzero(self, i: int) -> bool:
        return self.status[i] == "nonzero"

    def apply(self, step: Step) -> None:
        i = step.index
        if step.kind == "arrow":
            self.arrows[i].add(step.fact)
        elif step.fact == ZERO:
            if self.nonzero(i):
                raise InconsistencyError(f"{self.labels[i]} is known nonzero but exactness forces 0")
            self.status[i] = ZERO
            self.value[i] = TRIVIAL
        elif step.fact == "nonzero":
            if self.zero(i):
                raise InconsistencyError(f"{self.labels[i]} is known zero but exactness forces it nonzero")
            self.status[i] = "nonzero"
            if step.value is not None:
                self.hint[i] = step.value
        else:
            g = step.value
            if self.value[i] is not None and self.value[i] != g:
                raise InconsistencyError(f"{self.labels[i]} is {self.value[i]} but exactness forces {g}")
            if g.is_trivial:
                self.apply(Step(step.rule, "term", i, ZERO))
                return
            if self.zero(i):
                raise InconsistencyError(f"{self.labels[i]} is known zero but exactness forces {g}")
            self.value[i] = g
            self.status[i] = "nonzero"
        self._check()


def _candidates(st: _State) -> Iterable[Step]:
    """Every fact derivable in one rule application that is not yet known."""
    L = st.labels
    arrow = lambda k: f"{L[k]} -> {L[k + 1]}"
    for k in range(st.n - 1):
        # R4: zero terms
        if st.zero(k):
            for fact in (ZERO, MONO):
                if not st.has(k, fact):
                    yield Step("R4", "arrow", k, fact, premises=(f"{L[k]} = 0",))
        if st.zero(k + 1):
            for fact in (ZERO, EPI):
                if not st.has(k, fact):
                    yield Step("R4", "arrow", k, fact, premises=(f"{L[k + 1]} = 0",))
        # R4: exactness at X_{k+1}, between arrows k and k+1
        if k + 1 < st.n - 1:
            pairs = ((EPI, k, ZERO, k + 1), (ZERO, k + 1, EPI, k),
                     (ZERO, k, MONO, k + 1), (MONO, k + 1, ZERO, k))
            for have, hk, want, wk in pairs:
                if st.has(hk, have) and not st.has(wk, want):
                    yield Step("R4", "arrow", wk, want,
                               premises=(f"{arrow(hk)} is {have}", f"exact at {L[k + 1]}"))
    for i in range(st.n):
        if st.status[i] is None:
            # R1 / R3: both neighbours zero
            if 0 < i < st.n - 1 and st.zero(i - 1) and st.zero(i + 1):
                rule = "R1" if st.n == 3 else "R3"
                yield Step(rule, "term", i, ZERO, premises=(f"{L[i - 1]} = 0", f"{L[i + 1]} = 0"))
            # R7: collapse through arrow facts
            if st.has(i, ZERO) and st.has(i, MONO):
                yield Step("R7", "term", i, ZERO, premises=(f"{arrow(i)} is zero and mono",))
            if st.has(i - 1, ZERO) and st.has(i - 1, EPI):
                yield Step("R7", "term", i, ZERO, premises=(f"{arrow(i - 1)} is zero and epi",))
        if st.value[i] is None:
            # R2: isomorphisms carry identified groups
            for j, k in ((i - 1, i - 1), (i + 1, i)):
                if 0 <= j < st.n and st.has(k, MONO) and st.has(k, EPI):
                    if st.value[j] is not None:
                        yield Step("R2", "term", i, "value", value=st.value[j],
                                   premises=(f"{arrow(k)} is an isomorphism", f"{L[j]} = {st.value[j]}"))
                    elif st.hint[j] is not None and st.status[i] is None:
                        yield Step("R2", "term", i, "nonzero", value=st.hint[j],
                                   premises=(f"{arrow(k)} is an isomorphism", f"{L[j]} != 0"))
            # R6: split extension with free quotient
            if 0 < i < st.n - 1 and st.has(i - 1, MONO) and st.has(i, EPI):
                a, c = st.value[i - 1], st.value[i + 1]
                if a is not None and c is not None and _free(c):
                    yield Step("R6", "term", i, "value", value=direct_sum(a, c),
                               premises=(f"{arrow(i - 1)} is mono", f"{arrow(i)} is epi",
                                         f"{L[i + 1]} = {c} is free"))

        if st.status[i] is None:
            # R5: nonzero through monos and epis
            if i > 0 and st.has(i - 1, MONO) and st.nonzero(i - 1):
                yield Step("R5", "term", i, "nonzero", value=st.hint[i - 1] or NonTrivialUnknown("mono-from-nonzero"),
                           premises=(f"{arrow(i - 1)} is mono", f"{L[i - 1]} != 0"))
            if i < st.n - 1 and st.has(i, EPI) and st.nonzero(i + 1):
                yield Step("R5", "term", i, "nonzero", value=st.hint[i + 1] or NonTrivialUnknown("epi-onto-nonzero"),
                           premises=(f"{arrow(i)} is epi", f"{L[i + 1]} != 0"))


def _free(g: SymbolicGroup) -> bool:
    return g.is_trivial or (isinstance(g, Fg) and not g.group.torsion)


def _run(seq: ExactSequence) -> tuple[_State, list[Step]]:
    st = _State(seq)
    trace: list[Step] = []
    while True:
        step = next(iter(_candidates(st)), None)
        if step is None:
            return st, trace
        st.apply(step)
        trace.append(step)


def _verdicts(seq: ExactSequence, st: _State) -> dict[int, Verdict]:
    out = {}
    for i in seq.unknown_positions():
        if st.value[i] is not None:
            out[i] = Verdict("determined", st.value[i])
        elif st.nonzero(i):
            out[i] = Verdict("nontrivial", st.hint[i] or NonTrivialUnknown("exact-sequence"))
        else:
            out[i] = Verdict("undetermined")
    return out


def deduce(seq: ExactSequence) -> Deduction:
    """Derive every unknown term that the rules allow.

    >>> from .abelian import cyclic
    >>> s = ExactSequence.of([("A", TRIVIAL), ("U", None), ("B", cyclic(3)), ("C", TRIVIAL)])
    >>> str(deduce(s).verdict("U"))
    'Determined(Z_3)'
    """
    st, trace = _run(seq)
    return Deduction(seq, _verdicts(seq, st), trace)


def replay(seq: ExactSequence, trace: Sequence[Step]) -> dict[int, Verdict]:
    """Re-apply a recorded trace, checking that each step is licensed when taken."""
    st = _State(seq)
    for step in trace:
        if not any(c == step for c in _candidates(st)):
            raise InconsistencyError(f"step not licensed at this point: {step.describe(st.labels)}")
        st.apply(step)
    return _verdicts(seq, st)
