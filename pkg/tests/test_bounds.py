import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bombieri import bounds as bd
from bombieri.bounds import BoundParams, BoundVariant as V
from bombieri.errors import DimensionMismatch, ParamError, ZeroVectorRow
from bombieri.space import AbsGram, Coefficients, VectorSystem, canonical_orthonormal, gram_abs
from bombieri.verify import Instance, InstanceConfig, check_bound, random_instance, random_params

from . import reference as ref

G_A = AbsGram([[4.0, 2.0], [2.0, 1.0]])  # y1 = 2, y2 = 1 in R
G_Z = AbsGram([[1.0, 1.0], [1.0, 2.0]])  # {[1,0],[1,1]}
FC_A = Coefficients([2.0, 1.0])

exponents = st.one_of(
    st.just(1.0), st.just(math.inf), st.floats(min_value=1.001, max_value=64.0))
constrained = st.floats(min_value=1.001, max_value=2.0)


def random_gram(rng, n):
    Y = VectorSystem("complex", 3, rng.uniform(-1, 1, (n, 3)) + 1j * rng.uniform(-1, 1, (n, 3)))
    return gram_abs(Y)


class TestWeighted:
    def test_weighted_gram_sum(self):
        assert bd.weighted_gram_sum([1.0, 1.0], G_Z) == 5.0
        assert bd.weighted_gram_sum([1.0, 1.0], G_A) == 9.0
        assert bd.weighted_gram_sum([3.0, -7.0], AbsGram(np.zeros((2, 2)))) == 0.0
        with pytest.raises(DimensionMismatch):
            bd.weighted_gram_sum([1.0], G_A)

    def test_examples(self):
        assert bd.bound_weighted("B1", [1.0, 1.0], G_Z).value == 5.0
        assert bd.bound_weighted("B9", [1.0, 1.0], G_Z).value == 8.0
        assert bd.bound_weighted("CB", [1.0, 1.0], G_A).value == 10.0
        alpha = Coefficients([0.5, -2.0, 1j])
        assert bd.bound_weighted("L0", alpha, AbsGram.identity(3)).value == pytest.approx(0.25 + 4 + 1)

    @pytest.mark.parametrize("variant", [v.value for v in bd.WEIGHTED])
    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 2 ** 32 - 1), n=st.integers(1, 7), data=st.data())
    def test_matches_reference(self, variant, seed, n, data):
        v = V(variant)
        rng = np.random.default_rng(seed)
        a = rng.uniform(0, 2, n)
        G = random_gram(rng, n)
        kw = {k: data.draw(constrained if v.constrained else exponents) for k in v.param_names}
        got = bd.bound_weighted(v, a, G, BoundParams(**kw)).value
        want = ref.weighted(variant, a.tolist(), G.entries.tolist(), **kw)
        assert got == pytest.approx(want, rel=1e-10, abs=1e-12)

    def test_exponent_trichotomy_in_L2(self):
        a = np.array([0.3, 1.2, 0.7])
        G = random_gram(np.random.default_rng(3), 3)
        one = bd.bound_weighted("L2", a, G, BoundParams(p=1)).value
        inf = bd.bound_weighted("L2", a, G, BoundParams(p="inf")).value
        assert one == pytest.approx(bd.bound_weighted("L1", a, G).value, rel=1e-14)
        assert inf == pytest.approx(bd.bound_weighted("L3", a, G).value, rel=1e-14)

    def test_empty_system_bounds_are_zero(self):
        G = AbsGram(np.zeros((0, 0)))
        for v in bd.WEIGHTED:
            assert bd.bound_weighted(v, [], G).value == 0.0


class TestParams:
    def test_unused_parameter_rejected(self):
        with pytest.raises(ParamError):
            bd.bound_weighted("B1", [1.0, 1.0], G_A, BoundParams(p=2))
        with pytest.raises(ParamError):
            bd.bound_weighted("B2", [1.0, 1.0], G_A, BoundParams(r=2, p=2))

    def test_missing_parameter_rejected(self):
        with pytest.raises(ParamError):
            bd.bound_weighted("B5", [1.0, 1.0], G_A, BoundParams(p=2))

    @pytest.mark.parametrize("variant, params", [
        ("CA", {"p": 2.5, "t": 2}), ("CA", {"p": 1, "t": 2}), ("CC", {"p": "inf"}),
        ("CD", {"m": 3}), ("PC1", {"p": 2, "t": 2.1}), ("PC2", {"p": 4}), ("PC3", {"m": 1}),
    ])
    def test_constrained_ranges(self, variant, params):
        v = V(variant)
        with pytest.raises(ParamError):
            if v.family == "P":
                bd.pecaric_bound(v, 1.0, [1.0, 1.0], G_A, BoundParams(**params))
            else:
                bd.bound_weighted(v, [1.0, 1.0], G_A, BoundParams(**params))

    def test_fourier_free_ranges(self):
        with pytest.raises(ParamError):
            bd.fourier_free_bound("FF1", 1.0, G_A, BoundParams(p=3, t=2))
        with pytest.raises(ParamError):
            bd.fourier_free_bound("FF3", 1.0, G_A, BoundParams(m=2.5))
        assert bd.fourier_free_bound("FF3", 1.0, G_A, BoundParams(m=2)).value > 0

    def test_render_and_parse(self):
        pr = BoundParams.parse("p=2, t=1.5,m=inf")
        assert pr.render() == "p=2,t=1.5,m=inf"
        assert BoundParams.parse("").render() == ""
        with pytest.raises(ParamError):
            BoundParams.parse("q=2")

    def test_unknown_variant(self):
        with pytest.raises(ParamError):
            bd.as_variant("B10")


class TestPecaric:
    def test_examples(self):
        c = FC_A.conj()
        assert bd.pecaric_bound("PR0", 1.0, c, G_A).value == 27.0
        assert bd.pecaric_bound("PR1", 1.0, c, G_A).value == 30.0
        assert bd.pecaric_bound("PC4", 1.0, c, G_A).value == 40.0

    @pytest.mark.parametrize("variant", [v.value for v in bd.PECARIC])
    def test_is_norm_sq_times_weighted(self, variant):
        v = V(variant)
        rng = np.random.default_rng(11)
        a = rng.uniform(0, 1, 5)
        G = random_gram(rng, 5)
        base = bd.PECARIC_BASE[v]
        want = 2.5 * bd.bound_weighted(base, a, G).value
        assert bd.pecaric_bound(v, 2.5, a, G).value == pytest.approx(want, rel=1e-15)


class TestBombieri:
    def test_lhs(self):
        assert bd.bombieri_lhs(FC_A) == 5.0
        assert bd.bombieri_lhs(Coefficients([])) == 0.0
        e = Instance(np.ones(4), canonical_orthonormal(4, 4))
        assert bd.bombieri_lhs(e.fc) == 4.0

    def test_examples(self):
        assert bd.bombieri_bound("F1", 1.0, FC_A, G_A).value == 6.0
        assert bd.bombieri_bound("F9", 1.0, FC_A, G_A).value == 6.0
        assert bd.bombieri_bound("F3", 1.0, FC_A, G_A).value == pytest.approx(6.0, rel=1e-15)
        printed = bd.bombieri_bound("F3", 1.0, FC_A, G_A, form="as_printed")
        assert printed.value == pytest.approx(math.sqrt(2) * math.sqrt(3) * 6, rel=1e-15)
        assert printed.value == pytest.approx(14.696938456699069, rel=1e-14)

    def test_as_printed_note_when_coinciding(self):
        b = bd.bombieri_bound("F1", 1.0, FC_A, G_A, form="as_printed")
        assert b.value == 6.0 and b.note

    @pytest.mark.parametrize("k", range(1, 10))
    def test_derived_is_sqrt_of_pecaric(self, k):
        rng = np.random.default_rng(k)
        a = rng.uniform(0, 1, 4)
        G = random_gram(rng, 4)
        f = bd.bombieri_bound(f"F{k}", 1.7, a, G).value
        p = bd.pecaric_bound(f"P{k}", 1.7 ** 2, a, G).value
        assert f == pytest.approx(math.sqrt(p), rel=1e-14)

    @pytest.mark.parametrize("k", range(1, 10))
    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 2 ** 32 - 1), n=st.integers(1, 6), data=st.data())
    def test_orthonormal_specializations(self, k, seed, n, data):
        v = V(f"F{k}")
        kw = {name: data.draw(exponents) for name in v.param_names}
        pr = BoundParams(**kw)
        rng = np.random.default_rng(seed)
        d = n + 2
        inst = Instance(rng.uniform(-1, 1, d), canonical_orthonormal(n, d))
        got = bd.bombieri_bound(v, inst.x_norm, inst.fc, inst.G, pr).value
        closed = bd.orthonormal_bombieri_bound(k, inst.x_norm, inst.fc, pr)
        assert got == pytest.approx(closed, rel=1e-12, abs=1e-14)

    def test_orthonormal_spot_checks(self):
        x = np.array([0.5, -2.0, 1.0, 0.25])
        inst = Instance(x, canonical_orthonormal(4, 4))
        xn = math.sqrt(float(x @ x))
        assert bd.bombieri_bound("F1", xn, inst.fc, inst.G).value == pytest.approx(2 * xn * 2.0)
        assert bd.bombieri_bound("F9", xn, inst.fc, inst.G).value == pytest.approx(xn * 3.75)

    def test_printed_F3_fails_on_small_vectors(self):
        inst = Instance([1.0], VectorSystem("real", 1, [[0.1], [0.05]]))
        res = check_bound(inst, "F3", form="as_printed")
        assert not res.passed
        assert check_bound(inst, "F3").passed

    def test_printed_F8_fails_on_large_vectors(self):
        inst = Instance([1.0], VectorSystem("real", 1, [[10.0], [5.0]]))
        assert not check_bound(inst, "F8", form="as_printed").passed
        assert check_bound(inst, "F8").passed


class TestFourierFree:
    def test_examples(self):
        assert bd.fourier_free_bound("CLASSIC_M1", 1.0, G_A).value == 6.0
        assert bd.fourier_free_bound("CLASSIC_M2", 1.0, G_A).value == 5.0
        assert bd.fourier_free_bound("FF4", 1.0, G_A).value == 8.0

    @pytest.mark.parametrize("n", [1, 2, 4, 9])
    def test_orthonormal(self, n):
        G = AbsGram.identity(n)
        assert bd.fourier_free_bound("CLASSIC_M1", 3.0, G).value == 3.0
        assert bd.fourier_free_bound("CLASSIC_M2", 3.0, G).value == pytest.approx(3.0 * math.sqrt(n))

    @settings(max_examples=50, deadline=None)
    @given(seed=st.integers(0, 2 ** 32 - 1), n=st.integers(1, 8))
    def test_ff1_at_two_is_ff2(self, seed, n):
        G = random_gram(np.random.default_rng(seed), n)
        ff1 = bd.fourier_free_bound("FF1", 1.3, G, BoundParams(p=2, t=2)).value
        ff2 = bd.fourier_free_bound("FF2", 1.3, G).value
        assert ff1 == pytest.approx(ff2, rel=1e-12)

    @pytest.mark.parametrize("variant", ["FF1", "FF2", "FF3", "FF4", "CLASSIC_M1", "CLASSIC_M2"])
    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 2 ** 32 - 1), n=st.integers(1, 7), data=st.data())
    def test_matches_reference(self, variant, seed, n, data):
        v = V(variant)
        kw = {k: data.draw(constrained) for k in v.param_names}
        G = random_gram(np.random.default_rng(seed), n)
        got = bd.fourier_free_bound(v, 2.0, G, BoundParams(**kw)).value
        assert got == pytest.approx(ref.fourier_free(variant, 2.0, G.entries.tolist(), **kw), rel=1e-10)


class TestClassical:
    def test_selberg(self):
        assert bd.selberg_lhs(FC_A, G_A) == pytest.approx(1.0, rel=1e-15)
        x = np.array([0.3, -1.0, 2.0])
        e = Instance(x, canonical_orthonormal(3, 3))
        assert bd.selberg_lhs(e.fc, e.G) == pytest.approx(bd.bombieri_lhs(e.fc))

    def test_selberg_zero_vector(self):
        inst = Instance([1.0, 1.0], VectorSystem("real", 2, [[1.0, 0.0], [0.0, 0.0]]))
        with pytest.raises(ZeroVectorRow):
            bd.selberg_lhs(inst.fc, inst.G)

    def test_heilbronn(self):
        assert bd.heilbronn_pair(FC_A, 1.0, G_A) == (3.0, 3.0)
        e = Instance(np.ones(4), canonical_orthonormal(4, 4))
        assert bd.heilbronn_pair(e.fc, e.x_norm, e.G) == (4.0, 4.0)
        orth = Instance([0.0, 1.0], VectorSystem("real", 2, [[1.0, 0.0]]))
        lhs, rhs = bd.heilbronn_pair(orth.fc, orth.x_norm, orth.G)
        assert lhs == 0.0 and rhs >= 0.0

    def test_compare(self):
        assert bd.compare_M1_M2(G_A) == (6.0, 5.0, "M2")
        assert bd.compare_M1_M2(AbsGram.identity(4)) == (1.0, 2.0, "M1")
        assert bd.compare_M1_M2(AbsGram(np.zeros((3, 3)))) == (0.0, 0.0, "tie")

    @settings(max_examples=100)
    @given(a=st.floats(0.01, 100), b=st.floats(0.01, 100))
    def test_compare_closed_forms(self, a, b):
        inst = Instance([1.0], VectorSystem("real", 1, [[a], [b]]))
        m1, m2, _ = bd.compare_M1_M2(inst.G)
        assert m1 == pytest.approx((a + b) * max(a, b), rel=1e-12)
        assert m2 == pytest.approx(a * a + b * b, rel=1e-12)
        assert m1 >= m2 * (1 - 1e-12)


@pytest.mark.parametrize("field", ["real", "complex"])
@pytest.mark.parametrize("conditioning", ["generic", "near_orthonormal", "collinear"])
@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2 ** 64 - 1))
def test_every_variant_is_an_upper_bound(field, conditioning, seed):
    inst = random_instance(InstanceConfig(field, 6, 6, conditioning=conditioning, seed=seed))
    rng = np.random.default_rng(seed)
    for v in bd.ALL_VARIANTS:
        for pr in (None, random_params(v, rng)):
            res = check_bound(inst, v, pr)
            assert res.passed, res
