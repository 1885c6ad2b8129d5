import random

import pytest

from cmverify.abelian import RATIONALS_GROUP, TRIVIAL, NonTrivialUnknown, cyclic, direct_sum, fg
from cmverify.exactseq import (
    EPI,
    ISO,
    MONO,
    ZERO,
    ExactSequence,
    InconsistencyError,
    Step,
    deduce,
    replay,
)

G = cyclic(7)


def verdicts(seq):
    d = deduce(seq)
    return {seq.labels()[i]: str(v) for i, v in d.verdicts.items()}


class TestExamples:
    def test_zero_between_zeros(self):
        s = ExactSequence.of([("0", TRIVIAL), ("U", None), ("0'", TRIVIAL)])
        assert verdicts(s) == {"U": "Determined(0)"}
        assert deduce(s).trace[-1].rule == "R1"

    def test_isomorphism_between_zeros(self):
        s = ExactSequence.of([("H2(U)", TRIVIAL), ("U", None), ("H3(S3)", G), ("H3(U)", TRIVIAL)])
        assert verdicts(s) == {"U": "Determined(Z_7)"}

    def test_delta_mono_gives_nontrivial(self):
        s = ExactSequence.of([("H1(Y)", TRIVIAL), ("H1(S3-X)", cyclic(5)), ("U", None), ("H2(Y)", None)])
        d = deduce(s)
        assert str(d.verdict("U")) == "NonTrivial"
        assert any(step.rule == "R4" and step.kind == "arrow" and step.fact == MONO for step in d.trace)

    def test_nontrivial_unknown_is_carried(self):
        marker = NonTrivialUnknown("witness")
        s = ExactSequence.of([("0", TRIVIAL), ("A", marker), ("U", None), ("0'", TRIVIAL)])
        assert deduce(s).verdict("U").group == marker

    def test_split_free_quotient(self):
        s = ExactSequence.of([("0", TRIVIAL), ("A", cyclic(2)), ("U", None), ("C", fg(1)), ("0'", TRIVIAL)])
        assert verdicts(s) == {"U": "Determined(Z + Z_2)"}

    def test_extension_left_open(self):
        s = ExactSequence.of([("0", TRIVIAL), ("A", cyclic(2)), ("U", None), ("C", cyclic(2)), ("0'", TRIVIAL)])
        assert verdicts(s) == {"U": "NonTrivial"}

    def test_nothing_known(self):
        s = ExactSequence.of([("A", None), ("U", None), ("C", None)])
        assert set(verdicts(s).values()) == {"Undetermined"}
        assert deduce(s).trace == []

    def test_annotations_drive_deductions(self):
        s = ExactSequence.of([("A", RATIONALS_GROUP), ("U", None), ("C", None)], {0: ISO})
        assert verdicts(s)["U"] == "Determined(Q)"
        s = ExactSequence.of([("A", None), ("U", None), ("C", cyclic(3))], {0: EPI, 1: MONO})
        assert verdicts(s)["U"] == "Determined(0)"

    def test_explain_is_readable(self):
        s = ExactSequence.of([("0", TRIVIAL), ("U", None), ("0'", TRIVIAL)])
        assert deduce(s).explain()[-1] == "[R1] U is zero  (0 = 0; 0' = 0)"


class TestErrors:
    def test_too_short(self):
        with pytest.raises(ValueError):
            ExactSequence.of([("A", None), ("B", None)])

    def test_bad_annotations(self):
        with pytest.raises(ValueError):
            ExactSequence.of([("A", None), ("B", None), ("C", None)], {2: MONO})
        with pytest.raises(ValueError):
            ExactSequence.of([("A", None), ("B", None), ("C", None)], {0: "bijective"})

    def test_zero_and_iso_into_nonzero(self):
        terms = (("A", None), ("B", cyclic(2)), ("C", None))
        with pytest.raises(InconsistencyError):
            deduce(ExactSequence(terms, ((0, ZERO), (0, ISO))))

    def test_exactness_contradiction(self):
        s = ExactSequence.of([("0", TRIVIAL), ("A", cyclic(3)), ("0'", TRIVIAL)])
        with pytest.raises(InconsistencyError):
            deduce(s)

    def test_replay_rejects_unlicensed_steps(self):
        s = ExactSequence.of([("A", None), ("U", None), ("C", None)])
        with pytest.raises(InconsistencyError, match="not licensed"):
            replay(s, [Step("R1", "term", 1, ZERO)])


# ---------------------------------------------------------------------------
# randomized sequences with a known answer

IMAGES = [TRIVIAL, TRIVIAL, fg(1), cyclic(2), cyclic(3), cyclic(4), cyclic(6), RATIONALS_GROUP]


def _extension(sub, quo, rng):
    """A group X with 0 -> sub -> X -> quo -> 0, split unless a cyclic alternative exists."""
    if rng.random() < 0.4:
        a, b = (g.group for g in (sub, quo)) if all(hasattr(g, "group") for g in (sub, quo)) else (None, None)
        if a is not None and b is not None and len(b.torsion) == 1 and not b.free_rank:
            q = b.torsion[0]
            if a.free_rank == 1 and not a.torsion:
                return fg(1)  # Z -(x q)-> Z ->> Z_q
            if not a.free_rank and len(a.torsion) == 1:
                return cyclic(a.torsion[0] * q)
    return direct_sum(sub, quo)


def random_long_exact(rng: random.Random, short: bool = False):
    """True values and arrow facts of a random long exact sequence.

    Term i is an extension of B_i (image of the incoming arrow) by B_{i+1}
    (image of the outgoing one), with B_0 = B_n = 0.  ``short`` gives
    0 -> A -> U -> C -> 0.
    """
    if short:
        b = [TRIVIAL, TRIVIAL, rng.choice(IMAGES[2:]), rng.choice(IMAGES[2:]), TRIVIAL, TRIVIAL]
    else:
        b = [TRIVIAL] + [rng.choice(IMAGES) for _ in range(rng.randint(2, 6))] + [TRIVIAL]
    n = len(b) - 1
    truth = [_extension(b[i], b[i + 1], rng) for i in range(n)]
    facts = []
    for k in range(n - 1):
        f = set()
        if b[k + 1].is_trivial:
            f.add(ZERO)
        if b[k].is_trivial:
            f.add(MONO)
        if b[k + 2].is_trivial:
            f.add(EPI)
        facts.append(f)
    return truth, facts


def masked(truth, facts, rng: random.Random, reveal: float = 0.55, annotate: float = 0.3):
    terms = []
    for i, g in enumerate(truth):
        r = rng.random()
        if r < reveal:
            terms.append((f"X{i}", g))
        elif r < reveal + 0.1 and not g.is_trivial:
            terms.append((f"X{i}", NonTrivialUnknown("hidden")))
        else:
            terms.append((f"X{i}", None))
    ann = {}
    for k, f in enumerate(facts):
        if f and rng.random() < annotate:
            if MONO in f and EPI in f and rng.random() < 0.5:
                ann[k] = ISO
            else:
                ann[k] = rng.choice(sorted(f))
    return ExactSequence.of(terms, ann)


def check_sound(seq, truth):
    d = deduce(seq)
    for i, v in d.verdicts.items():
        if v.kind == "determined":
            assert v.group == truth[i], (seq, i, v)
        elif v.kind == "nontrivial":
            assert not truth[i].is_trivial, (seq, i)
    return d


class TestRandomized:
    def test_short_exact_soundness(self):
        rng = random.Random(0)
        determined = 0
        for _ in range(1000):
            truth, facts = random_long_exact(rng, short=True)
            d = check_sound(masked(truth, facts, rng), truth)
            determined += sum(v.kind == "determined" for v in d.verdicts.values())
        assert determined > 20  # the rules do fire

    def test_long_exact_soundness_and_replay(self):
        rng = random.Random(1)
        for _ in range(400):
            truth, facts = random_long_exact(rng)
            seq = masked(truth, facts, rng)
            d = check_sound(seq, truth)
            assert replay(seq, d.trace) == d.verdicts

    def test_monotonicity(self):
        rng = random.Random(2)
        for _ in range(400):
            truth, facts = random_long_exact(rng)
            seq = masked(truth, facts, rng, annotate=0.0)
            before = deduce(seq).verdicts
            extra = dict(seq.annotations)
            for k, f in enumerate(facts):
                if f and k not in extra:
                    extra[k] = rng.choice(sorted(f))
            after = check_sound(ExactSequence.of(seq.terms, extra), truth).verdicts
            for i, v in before.items():
                if v.kind == "determined":
                    assert after[i] == v
                if v.kind == "nontrivial":
                    assert after[i].kind in ("nontrivial", "determined")

    def test_deterministic(self):
        rng = random.Random(3)
        for _ in range(50):
            truth, facts = random_long_exact(rng)
            seq = masked(truth, facts, rng)
            assert deduce(seq).trace == deduce(seq).trace
