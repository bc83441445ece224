import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fuzzavail import (
    REFERENCE_CONFIG,
    DomainClampWarning,
    EmptyOutputError,
    InferenceConfig,
    LinguisticVariable,
    MembershipFunction,
    MissingInputError,
    NoActivationError,
    Rule,
    RuleBase,
    RuleResolutionError,
    activate,
    aggregate,
    builtin_rulebase,
    defuzzify,
    five_term_variable,
    fuzzify,
    infer,
    membership,
)

from strategies import membership_functions

TRI = MembershipFunction.triangular(0.25, 0.5, 0.75)

MIN_CLIP = InferenceConfig(tnorm="min", implication="clip")


def single_rule_base(consequent_term="mid"):
    out = LinguisticVariable(
        "y",
        (0.0, 1.0),
        (("mid", TRI),),
    )
    inp = LinguisticVariable("x", (0.0, 1.0), (("on", MembershipFunction.triangular(0, 0.5, 1)),))
    return RuleBase((inp,), (out,), (Rule((("x", "on"),), ("y", consequent_term)),))


class TestMembership:
    def test_peak(self):
        assert membership(TRI, 0.5) == 1.0

    def test_outside_support(self):
        assert membership(TRI, 0.9) == 0.0
        assert membership(TRI, 0.1) == 0.0

    def test_linear_midpoint(self):
        # hand arithmetic: halfway up the rising edge
        assert membership(TRI, 0.375) == 0.5

    def test_breakpoints_exact(self):
        assert membership(TRI, 0.25) == 0.0
        assert membership(TRI, 0.75) == 0.0

    def test_degenerate_edges(self):
        left = MembershipFunction.triangular(0, 0, 0.25)
        right = MembershipFunction.triangular(0.75, 1, 1)
        assert membership(left, 0.0) == 1.0
        assert membership(left, 0.125) == 0.5
        assert membership(right, 1.0) == 1.0

    def test_trapezoid(self):
        trap = MembershipFunction.trapezoidal(0, 0.2, 0.6, 1)
        assert membership(trap, 0.2) == 1.0
        assert membership(trap, 0.4) == 1.0
        assert membership(trap, 0.6) == 1.0
        assert membership(trap, 0.1) == pytest.approx(0.5)
        assert membership(trap, 0.8) == pytest.approx(0.5)
        assert membership(trap, -0.1) == 0.0

    def test_vector_matches_scalar(self):
        xs = np.linspace(-0.5, 1.5, 201)
        vector = membership(TRI, xs)
        assert vector.shape == xs.shape
        for x, v in zip(xs, vector):
            assert v == membership(TRI, float(x))

    def test_param_order_rejected(self):
        with pytest.raises(ValueError):
            MembershipFunction.triangular(0.5, 0.25, 0.75)
        with pytest.raises(ValueError):
            MembershipFunction.trapezoidal(0, 0.5, 0.4, 1)

    def test_nonfinite_rejected(self):
        with pytest.raises(ValueError):
            MembershipFunction.triangular(0, float("nan"), 1)

    @given(membership_functions(), st.floats(-20, 20))
    def test_bounds_and_support(self, mf, x):
        mu = membership(mf, x)
        assert 0.0 <= mu <= 1.0
        lo, hi = mf.support
        if x < lo or x > hi:
            assert mu == 0.0


class TestFuzzify:
    def test_reference_kd_at_09(self):
        degrees = fuzzify(five_term_variable("kd"), 0.9)
        assert degrees["big"] == pytest.approx(0.4)
        assert degrees["verybig"] == pytest.approx(0.6)
        for name in ("verysmall", "small", "medium"):
            assert degrees[name] == 0.0

    def test_term_center(self):
        degrees = fuzzify(five_term_variable("ks"), 0.25)
        assert degrees == {"verysmall": 0.0, "small": 1.0, "medium": 0.0, "big": 0.0, "verybig": 0.0}

    def test_domain_edge(self):
        degrees = fuzzify(five_term_variable("kd"), 0.0)
        assert degrees["verysmall"] == 1.0
        assert sum(degrees.values()) == 1.0

    def test_clamps_and_warns(self):
        var = five_term_variable("kd")
        with pytest.warns(DomainClampWarning):
            degrees = fuzzify(var, 1.5)
        assert degrees == fuzzify(var, 1.0)

    def test_nan_rejected(self):
        with pytest.raises(ValueError):
            fuzzify(five_term_variable("kd"), float("nan"))

    def test_partition_of_unity(self):
        # reference partition sums to one at every sampled point
        var = five_term_variable("kd")
        for i in range(1001):
            x = i / 1000
            total = sum(fuzzify(var, x).values())
            assert abs(total - 1.0) <= 1e-9


class TestActivate:
    @staticmethod
    def fuzzified(a, b):
        return {"kd": {"t": a}, "ks": {"t": b}}

    def test_min(self):
        rule = Rule((("kd", "t"), ("ks", "t")), ("ka", "t"))
        assert activate(rule, self.fuzzified(0.4, 1.0), "min") == 0.4
        assert activate(rule, self.fuzzified(0.6, 0.5), "min") == 0.5

    def test_product(self):
        rule = Rule((("kd", "t"), ("ks", "t")), ("ka", "t"))
        assert activate(rule, self.fuzzified(0.4, 1.0), "product") == pytest.approx(0.4)

    def test_weight(self):
        rule = Rule((("kd", "t"), ("ks", "t")), ("ka", "t"), weight=0.5)
        assert activate(rule, self.fuzzified(1.0, 1.0), "min") == 0.5

    def test_unknown_term(self):
        rule = Rule((("kd", "nope"),), ("ka", "t"))
        with pytest.raises(RuleResolutionError):
            activate(rule, self.fuzzified(1.0, 1.0), "min")


class TestAggregate:
    def test_full_strength_is_identity(self):
        rb = single_rule_base()
        xs, mu = aggregate(rb, (1.0,), "y", MIN_CLIP)
        assert np.array_equal(mu, membership(TRI, np.asarray(xs)))

    def test_clip_truncates(self):
        rb = single_rule_base()
        _, mu = aggregate(rb, (0.5,), "y", MIN_CLIP)
        assert mu.max() == 0.5
        expected = np.minimum(membership(TRI, np.linspace(0, 1, 1001)), 0.5)
        assert np.array_equal(mu, expected)

    def test_scale_multiplies(self):
        rb = single_rule_base()
        _, mu = aggregate(rb, (0.5,), "y", InferenceConfig(implication="scale"))
        expected = membership(TRI, np.linspace(0, 1, 1001)) * 0.5
        assert np.array_equal(mu, expected)

    def test_max_of_two_rules(self):
        out = LinguisticVariable("y", (0.0, 1.0), (("mid", TRI),))
        inp = LinguisticVariable(
            "x", (0.0, 1.0),
            (("a", MembershipFunction.triangular(0, 0, 1)),
             ("b", MembershipFunction.triangular(0, 1, 1))),
        )
        rb = RuleBase(
            (inp,), (out,),
            (Rule((("x", "a"),), ("y", "mid")), Rule((("x", "b"),), ("y", "mid"))),
        )
        _, mu = aggregate(rb, (0.4, 0.6), "y", MIN_CLIP)
        expected = np.minimum(membership(TRI, np.linspace(0, 1, 1001)), 0.6)
        assert np.array_equal(mu, expected)

    def test_no_rule_for_output(self):
        rb = single_rule_base()
        other = LinguisticVariable("z", (0.0, 1.0), (("mid", TRI),))
        rb2 = RuleBase(rb.inputs, rb.outputs + (other,), rb.rules)
        with pytest.raises(EmptyOutputError):
            aggregate(rb2, (1.0,), "z", MIN_CLIP)


class TestDefuzzify:
    def test_symmetric_triangle_centroid(self):
        xs = np.linspace(0, 1, 1001)
        mu = membership(TRI, xs)
        assert defuzzify(xs, mu) == pytest.approx(0.5, abs=1e-6)

    def test_half_triangle_centroid(self):
        # descending ramp from 1 at 0 to 0 at 0.25; closed form base/3 = 1/12
        xs = np.linspace(0, 1, 1001)
        mu = membership(MembershipFunction.triangular(0, 0, 0.25), xs)
        assert defuzzify(xs, mu) == pytest.approx(1 / 12, abs=1e-3)

    @pytest.mark.parametrize("height", [0.25, 0.5, 0.75, 1.0])
    def test_clipped_symmetric_centroid(self, height):
        xs = np.linspace(0, 1, 1001)
        tri = MembershipFunction.triangular(0, 0.25, 0.5)
        mu = np.minimum(membership(tri, xs), height)
        assert defuzzify(xs, mu) == pytest.approx(0.25, abs=1e-6)

    def test_all_zero_raises(self):
        xs = np.linspace(0, 1, 101)
        with pytest.raises(NoActivationError):
            defuzzify(xs, np.zeros_like(xs))

    def test_mean_of_maxima(self):
        xs = np.linspace(0, 1, 1001)
        mu = np.minimum(membership(TRI, xs), 0.6)
        assert defuzzify(xs, mu, "mom") == pytest.approx(0.5, abs=1e-9)

    def test_unknown_method(self):
        xs = np.linspace(0, 1, 101)
        with pytest.raises(ValueError):
            defuzzify(xs, np.ones_like(xs), "bisector")


class TestInfer:
    def test_fig4_floor(self):
        result = infer(builtin_rulebase(), {"kd": 0.0, "ks": 0.25})
        assert result["ka"] == pytest.approx(0.083, abs=5e-3)

    def test_center_pair_medium(self):
        result = infer(builtin_rulebase(), {"kd": 0.5, "ks": 0.5})
        assert result["ka"] == pytest.approx(0.5, abs=1e-3)

    def test_ideal_corner(self):
        # the centroid of a bounded partition cannot reach 1; the ascending
        # half-triangle tops out at 11/12
        result = infer(builtin_rulebase(), {"kd": 1.0, "ks": 1.0})
        assert result["ka"] == pytest.approx(11 / 12, abs=1e-3)

    def test_missing_input(self):
        with pytest.raises(MissingInputError):
            infer(builtin_rulebase(), {"kd": 0.5})

    def test_unknown_input(self):
        with pytest.raises(ValueError):
            infer(builtin_rulebase(), {"kd": 0.5, "ks": 0.5, "kx": 0.1})

    def test_deterministic(self):
        a = infer(builtin_rulebase(), {"kd": 0.37, "ks": 0.81})
        b = infer(builtin_rulebase(), {"kd": 0.37, "ks": 0.81})
        assert a == b

    def test_alternative_configs_agree_at_centers(self):
        # at term centers exactly one rule fires at full strength, where
        # clip and scale coincide
        for config in (REFERENCE_CONFIG, MIN_CLIP, InferenceConfig(tnorm="product", implication="clip")):
            result = infer(builtin_rulebase(), {"kd": 0.75, "ks": 0.75}, config)
            assert result["ka"] == pytest.approx(0.75, abs=1e-3)

    def test_mom_config_runs(self):
        config = InferenceConfig(defuzz="mom")
        result = infer(builtin_rulebase(), {"kd": 0.5, "ks": 0.5}, config)
        assert result["ka"] == pytest.approx(0.5, abs=1e-9)

    @given(st.floats(0, 1), st.floats(0, 1))
    def test_output_bounds(self, kd, ks):
        result = infer(builtin_rulebase(), {"kd": kd, "ks": ks})
        assert 1 / 12 - 1e-3 <= result["ka"] <= 11 / 12 + 1e-3


class TestTypes:
    def test_rulebase_rejects_unknown_references(self):
        var = five_term_variable("kd")
        out = five_term_variable("ka")
        with pytest.raises(RuleResolutionError):
            RuleBase((var,), (out,), (Rule((("kd", "huge"),), ("ka", "small")),))
        with pytest.raises(RuleResolutionError):
            RuleBase((var,), (out,), (Rule((("nope", "small"),), ("ka", "small")),))

    def test_rulebase_rejects_duplicate_names(self):
        with pytest.raises(ValueError):
            RuleBase((five_term_variable("kd"),), (five_term_variable("kd"),), ())

    def test_rule_needs_antecedent(self):
        with pytest.raises(ValueError):
            Rule((), ("ka", "small"))

    def test_rule_weight_range(self):
        with pytest.raises(ValueError):
            Rule((("kd", "small"),), ("ka", "small"), weight=0.0)
        with pytest.raises(ValueError):
            Rule((("kd", "small"),), ("ka", "small"), weight=1.5)

    def test_config_validation(self):
        with pytest.raises(ValueError):
            InferenceConfig(tnorm="lukasiewicz")
        with pytest.raises(ValueError):
            InferenceConfig(resolution=100)

    def test_variable_duplicate_terms(self):
        with pytest.raises(ValueError):
            LinguisticVariable("x", (0, 1), (("a", TRI), ("a", TRI)))
