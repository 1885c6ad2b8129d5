import pytest

from cmverify.abelian import INTEGERS, RATIONALS, TRIVIAL, CoefficientRing, LocalizedIntegers, Mod, NonTrivialUnknown
from cmverify.primes import PrimeSet
from cmverify.solenoid import (
    ASSUMPTIONS,
    MODEL_ASSUMPTION,
    PROVENANCE_TAGS,
    SolenoidModel,
    clc_report,
    complement_cohomology,
    full_report,
    local_cohomology_at_wild_point,
    pair_tower,
    quotient_pair_cohomology,
)

from expected import (
    COMPLEMENT_IN,
    COMPLEMENT_OUT,
    COMPLEMENT_Q,
    COMPLEMENT_Z_DEGREE_1,
    LOCAL_IN,
    LOCAL_OUT,
    LOCAL_Q,
    LOCAL_Z,
    PAIR_IN,
    PRIME_SETS,
    SMALL_PRIMES,
)

MODELS = {text: SolenoidModel(PrimeSet.parse(text)) for text in PRIME_SETS}
RINGS = [INTEGERS, RATIONALS] + [Mod(m) for m in range(2, 14)]


def shown(table):
    return tuple(str(v) for v in table.values())


def sweep():
    for text, m in MODELS.items():
        for p in SMALL_PRIMES:
            yield text, m, p


@pytest.mark.parametrize("text,m,p", list(sweep()))
def test_prime_coefficient_families(text, m, p):
    r = Mod(p)
    local = shown(local_cohomology_at_wild_point(m, r))
    comp = shown(complement_cohomology(m, r))
    pair = quotient_pair_cohomology(m, r)
    clc = clc_report(m, r)
    if p in m.primes:
        assert local == LOCAL_IN(p)
        assert comp == COMPLEMENT_IN(p)
        assert shown(pair) == PAIR_IN(p)
        assert clc.all_hold
    else:
        assert local == LOCAL_OUT(p)
        assert comp == COMPLEMENT_OUT(p)
        assert pair[2].value.is_nontrivial
        assert [d.degree for d in clc.failing()] == [1]


class TestIntegersAndRationals:
    @pytest.mark.parametrize("text", sorted(LOCAL_Z))
    def test_local_integers(self, text):
        assert shown(local_cohomology_at_wild_point(MODELS[text], INTEGERS)) == LOCAL_Z[text]

    def test_local_integers_cofinite(self):
        t = local_cohomology_at_wild_point(MODELS["all-except:2"], INTEGERS)
        assert t[2].value == LocalizedIntegers(PrimeSet.all_except(2))

    def test_local_rationals(self):
        for m in MODELS.values():
            assert shown(local_cohomology_at_wild_point(m, RATIONALS)) == LOCAL_Q

    def test_complement_integers(self):
        for m in MODELS.values():
            t = complement_cohomology(m, INTEGERS)
            assert str(t[1].value) == COMPLEMENT_Z_DEGREE_1
            assert t[2].value.is_nontrivial and not t[2].value.is_identified
            assert t[3].value == TRIVIAL

    def test_complement_rationals(self):
        for m in MODELS.values():
            assert shown(complement_cohomology(m, RATIONALS)) == COMPLEMENT_Q

    def test_pair_degree_two_nonzero(self):
        for m in MODELS.values():
            assert quotient_pair_cohomology(m, RATIONALS)[2].value.is_nontrivial
            assert quotient_pair_cohomology(m, INTEGERS)[3].value.is_nontrivial

    def test_clc_integers(self):
        for m in MODELS.values():
            assert [d.degree for d in clc_report(m, INTEGERS).failing()] == [1, 2]
            assert clc_report(m, INTEGERS)[2].evidence.value == NonTrivialUnknown("localization-mod-integers")

    def test_clc_rationals(self):
        for m in MODELS.values():
            assert [d.degree for d in clc_report(m, RATIONALS).failing()] == [1]


class TestInvariants:
    @pytest.mark.parametrize("r", RINGS, ids=str)
    def test_local_degree_three_is_ring(self, r):
        for m in MODELS.values():
            assert local_cohomology_at_wild_point(m, r)[3].value == r.as_group()

    def test_membership_characterizes_local_table(self):
        for m in MODELS.values():
            for p in SMALL_PRIMES:
                t = shown(local_cohomology_at_wild_point(m, Mod(p)))
                assert (t == LOCAL_IN(p)) == (p in m.primes)

    def test_every_cell_replays_and_is_tagged(self):
        for m in MODELS.values():
            for r in RINGS:
                rep = full_report(m, r)
                for table in (rep.local, rep.complement, rep.pair):
                    assert table.degrees == (0, 1, 2, 3)
                    for _, c in table.cells:
                        assert c.provenance in PROVENANCE_TAGS
                        assert c.derivations and c.replays()
                for d in rep.clc.degrees:
                    assert d.evidence.replays() and d.provenance in PROVENANCE_TAGS

    def test_degree_zero_clc_is_model_assumption(self):
        for r in RINGS:
            assert clc_report(MODELS["2"], r)[0].provenance == MODEL_ASSUMPTION

    @pytest.mark.parametrize("r", [INTEGERS, RATIONALS, Mod(2), Mod(5), Mod(6)], ids=str)
    def test_offset_invariance(self, r):
        for text in PRIME_SETS:
            reports = [full_report(SolenoidModel(PrimeSet.parse(text), k), r) for k in range(4)]
            for rep in reports[1:]:
                for fam in ("local", "complement", "pair"):
                    assert getattr(rep, fam).values() == getattr(reports[0], fam).values()
                assert [d.holds for d in rep.clc.degrees] == [d.holds for d in reports[0].clc.degrees]

    def test_traces_are_deterministic(self):
        a = full_report(MODELS["2,3"], INTEGERS)
        b = full_report(MODELS["2,3"], INTEGERS)
        for fam in ("local", "complement", "pair"):
            assert [c.trace() for _, c in getattr(a, fam).cells] == [c.trace() for _, c in getattr(b, fam).cells]


class TestModel:
    def test_assumption_keys(self):
        keys = [k for k, _ in ASSUMPTIONS]
        assert len(keys) == len(set(keys))
        assert {"sphere", "solid-torus", "complement", "bonds", "dimension", "reduced-zero"} <= set(keys)

    def test_validation(self):
        with pytest.raises(TypeError):
            SolenoidModel("2,3")
        with pytest.raises(ValueError):
            SolenoidModel(PrimeSet.of(2), -1)
        with pytest.raises(ValueError):
            pair_tower(MODELS["2"], Mod(2), 5)

    def test_pair_tower_shape(self):
        m = MODELS["2,3"]
        assert "x n(i)" in pair_tower(m, Mod(5), 2).describe()
        assert pair_tower(m, Mod(5), 1).describe().startswith("constant 0")

    def test_composite_modulus(self):
        m = MODELS["2,3"]
        assert shown(local_cohomology_at_wild_point(m, Mod(6))) == ("0", "0", "0", "Z_6")
        assert shown(local_cohomology_at_wild_point(m, Mod(10))) == ("0", "0", "Z_5", "Z_10")
        assert CoefficientRing.parse("mod:10") == Mod(10)
