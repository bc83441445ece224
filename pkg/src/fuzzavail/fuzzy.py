"""Deterministic Mamdani inference over bounded scalar domains.

A rule base bundles linguistic variables (named fuzzy partitions of a
closed interval) with IF-AND-THEN rules. Inference runs the classic
pipeline: fuzzify each crisp input, fire every rule through a t-norm,
shape the consequent terms by clip or scale implication, take the
pointwise-max union per output variable, and defuzzify. All types are
frozen, and inference is a pure function of (rulebase, config, inputs),
so shared rule bases are safe to use from concurrent workers.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

TNORMS = ("min", "product")
IMPLICATIONS = ("clip", "scale")
AGGREGATIONS = ("max",)
DEFUZZIFIERS = ("centroid", "mom")


class FuzzyError(Exception):
    """Base class for inference failures."""


class RuleResolutionError(FuzzyError):
    """A rule names a variable or term that the rule base does not define."""


class MissingInputError(FuzzyError):
    """infer() was called without a value for some input variable."""


class EmptyOutputError(FuzzyError):
    """No rule targets the requested output variable."""


class NoActivationError(FuzzyError):
    """Every contributing rule fired at zero strength, leaving an empty set."""


class DomainClampWarning(UserWarning):
    """A crisp input fell outside its variable's domain and was clamped."""


@dataclass(frozen=True)
class MembershipFunction:
    """Piecewise-linear membership function, triangular or trapezoidal.

    ``params`` are the breakpoints (a, b, c) or (a, b, c, d) and must be
    nondecreasing. Sides of zero width are allowed, which lets edge terms
    of a partition peak at the domain boundary and act as half-triangles.
    """

    kind: str
    params: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.kind not in ("tri", "trap"):
            raise ValueError(f"unknown membership function kind {self.kind!r}")
        arity = 3 if self.kind == "tri" else 4
        if len(self.params) != arity:
            raise ValueError(f"{self.kind} takes {arity} parameters, got {len(self.params)}")
        params = tuple(float(p) for p in self.params)
        if not all(math.isfinite(p) for p in params):
            raise ValueError(f"membership parameters must be finite, got {params}")
        if any(lo > hi for lo, hi in zip(params, params[1:])):
            raise ValueError(f"membership parameters must be nondecreasing, got {params}")
        object.__setattr__(self, "params", params)

    @classmethod
    def triangular(cls, a: float, b: float, c: float) -> "MembershipFunction":
        return cls("tri", (a, b, c))

    @classmethod
    def trapezoidal(cls, a: float, b: float, c: float, d: float) -> "MembershipFunction":
        return cls("trap", (a, b, c, d))

    @property
    def support(self) -> tuple[float, float]:
        return self.params[0], self.params[-1]


def membership(mf: MembershipFunction, x):
    """Degree to which ``x`` belongs to ``mf``.

    Zero outside the support, linear on the sides, exact at breakpoints.
    Accepts a scalar or an ndarray and returns the matching shape.
    """
    if np.ndim(x) == 0:
        return _membership_scalar(mf, float(x))
    return _membership_array(mf, np.asarray(x, dtype=float))


def _membership_scalar(mf: MembershipFunction, x: float) -> float:
    if mf.kind == "tri":
        a, b, c = mf.params
        if x == b:
            return 1.0
        if a < x < b:
            return (x - a) / (b - a)
        if b < x < c:
            return (c - x) / (c - b)
        return 0.0
    a, b, c, d = mf.params
    if b <= x <= c:
        return 1.0
    if a < x < b:
        return (x - a) / (b - a)
    if c < x < d:
        return (d - x) / (d - c)
    return 0.0


def _membership_array(mf: MembershipFunction, xs: np.ndarray) -> np.ndarray:
    y = np.zeros_like(xs)
    if mf.kind == "tri":
        a, b, c = mf.params
        if b > a:
            rising = (xs > a) & (xs < b)
            y[rising] = (xs[rising] - a) / (b - a)
        if c > b:
            falling = (xs > b) & (xs < c)
            y[falling] = (c - xs[falling]) / (c - b)
        y[xs == b] = 1.0
        return y
    a, b, c, d = mf.params
    if b > a:
        rising = (xs > a) & (xs < b)
        y[rising] = (xs[rising] - a) / (b - a)
    if d > c:
        falling = (xs > c) & (xs < d)
        y[falling] = (d - xs[falling]) / (d - c)
    y[(xs >= b) & (xs <= c)] = 1.0
    return y


@dataclass(frozen=True)
class LinguisticVariable:
    """A named fuzzy partition of a closed interval into ordered terms."""

    name: str
    domain: tuple[float, float]
    terms: tuple[tuple[str, MembershipFunction], ...]

    def __post_init__(self) -> None:
        lo, hi = self.domain
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise ValueError(f"domain of {self.name!r} must be a finite interval, got {self.domain}")
        names = [t for t, _ in self.terms]
        duplicates = {n for n in names if names.count(n) > 1}
        if duplicates:
            raise ValueError(f"duplicate terms in {self.name!r}: {sorted(duplicates)}")

    def term(self, name: str) -> MembershipFunction:
        for term_name, mf in self.terms:
            if term_name == name:
                return mf
        raise RuleResolutionError(f"variable {self.name!r} has no term {name!r}")

    @property
    def term_names(self) -> tuple[str, ...]:
        return tuple(t for t, _ in self.terms)


def fuzzify(var: LinguisticVariable, x: float) -> dict[str, float]:
    """Memberships of every term of ``var`` at ``x``, clamped into the domain."""
    x = float(x)
    if math.isnan(x):
        raise ValueError(f"cannot fuzzify NaN for {var.name!r}")
    lo, hi = var.domain
    if x < lo or x > hi:
        warnings.warn(
            f"{var.name}={x:g} outside [{lo:g}, {hi:g}], clamped",
            DomainClampWarning,
            stacklevel=2,
        )
        x = min(max(x, lo), hi)
    return {name: _membership_scalar(mf, x) for name, mf in var.terms}


@dataclass(frozen=True)
class Rule:
    """IF var is term [AND var is term ...] THEN var is term, with a weight."""

    antecedents: tuple[tuple[str, str], ...]
    consequent: tuple[str, str]
    weight: float = 1.0

    def __post_init__(self) -> None:
        if not self.antecedents:
            raise ValueError("rule needs at least one antecedent")
        if not 0.0 < self.weight <= 1.0:
            raise ValueError(f"rule weight must be in (0, 1], got {self.weight}")


@dataclass(frozen=True)
class RuleBase:
    """Immutable bundle of input variables, output variables and rules.

    Construction checks referential integrity (every rule resolves against
    declared variables and terms) and name uniqueness. Semantic lints such
    as contradiction and coverage checks live in the rule-base text tooling.
    """

    inputs: tuple[LinguisticVariable, ...]
    outputs: tuple[LinguisticVariable, ...]
    rules: tuple[Rule, ...]

    def __post_init__(self) -> None:
        names = [v.name for v in self.inputs + self.outputs]
        duplicates = {n for n in names if names.count(n) > 1}
        if duplicates:
            raise ValueError(f"duplicate variable names: {sorted(duplicates)}")
        ins = {v.name: v for v in self.inputs}
        outs = {v.name: v for v in self.outputs}
        for index, rule in enumerate(self.rules, 1):
            for var_name, term_name in rule.antecedents:
                if var_name not in ins:
                    raise RuleResolutionError(f"rule {index}: unknown input variable {var_name!r}")
                ins[var_name].term(term_name)
            cons_var, cons_term = rule.consequent
            if cons_var not in outs:
                raise RuleResolutionError(f"rule {index}: unknown output variable {cons_var!r}")
            outs[cons_var].term(cons_term)

    def variable(self, name: str) -> LinguisticVariable:
        for var in self.inputs + self.outputs:
            if var.name == name:
                return var
        raise KeyError(name)


@dataclass(frozen=True)
class InferenceConfig:
    """Operator selection and output-domain quadrature resolution.

    The defaults are the reference configuration: product t-norm, scale
    implication, max aggregation, centroid defuzzification on 1001 uniform
    samples. Scale implication keeps each consequent term's centroid fixed
    under partial firing, which makes the built-in model's response
    monotone in the security coefficient; clip, min and mean-of-maxima
    remain available as alternatives.
    """

    tnorm: str = "product"
    implication: str = "scale"
    aggregation: str = "max"
    defuzz: str = "centroid"
    resolution: int = 1001

    def __post_init__(self) -> None:
        for name, value, allowed in (
            ("tnorm", self.tnorm, TNORMS),
            ("implication", self.implication, IMPLICATIONS),
            ("aggregation", self.aggregation, AGGREGATIONS),
            ("defuzz", self.defuzz, DEFUZZIFIERS),
        ):
            if value not in allowed:
                raise ValueError(f"{name} must be one of {allowed}, got {value!r}")
        if self.resolution < 101:
            raise ValueError(f"resolution must be at least 101, got {self.resolution}")


REFERENCE_CONFIG = InferenceConfig()


def activate(rule: Rule, fuzzified: dict[str, dict[str, float]], tnorm: str = "min") -> float:
    """Firing strength: t-norm over the antecedent degrees, times the weight."""
    degrees = []
    for var_name, term_name in rule.antecedents:
        try:
            degrees.append(fuzzified[var_name][term_name])
        except KeyError:
            raise RuleResolutionError(
                f"antecedent '{var_name} is {term_name}' not present in fuzzified inputs"
            ) from None
    if tnorm == "min":
        strength = min(degrees)
    elif tnorm == "product":
        strength = math.prod(degrees)
    else:
        raise ValueError(f"unknown t-norm {tnorm!r}")
    return strength * rule.weight


@lru_cache(maxsize=512)
def _output_grid(lo: float, hi: float, n: int) -> np.ndarray:
    xs = np.linspace(lo, hi, n)
    xs.setflags(write=False)
    return xs


@lru_cache(maxsize=4096)
def _sampled_term(mf: MembershipFunction, lo: float, hi: float, n: int) -> np.ndarray:
    mu = _membership_array(mf, np.array(_output_grid(lo, hi, n)))
    mu.setflags(write=False)
    return mu


def aggregate(
    rulebase: RuleBase,
    activations,
    output_name: str,
    config: InferenceConfig = REFERENCE_CONFIG,
) -> tuple[np.ndarray, np.ndarray]:
    """Pointwise-max union of the shaped consequents aimed at one output.

    Returns ``(xs, mu)``: the uniform sample grid over the output domain
    and the aggregated membership on it.
    """
    var = rulebase.variable(output_name)
    lo, hi = var.domain
    xs = _output_grid(lo, hi, config.resolution)
    mu = np.zeros(config.resolution)
    targeted = False
    for rule, strength in zip(rulebase.rules, activations, strict=True):
        if rule.consequent[0] != output_name:
            continue
        targeted = True
        if strength <= 0.0:
            continue
        term_mu = _sampled_term(var.term(rule.consequent[1]), lo, hi, config.resolution)
        if config.implication == "clip":
            shaped = np.minimum(term_mu, strength)
        else:
            shaped = term_mu * strength
        np.maximum(mu, shaped, out=mu)
    if not targeted:
        raise EmptyOutputError(f"no rule targets output variable {output_name!r}")
    return xs, mu


def defuzzify(xs, mu, method: str = "centroid") -> float:
    """Crisp readout of a sampled fuzzy set.

    The centroid weights the uniform samples trapezoidally (half weight at
    both ends) so the quadrature error of the two integrals shrinks
    quadratically with the sample spacing. Mean of maxima averages every
    abscissa attaining the peak membership.
    """
    xs = np.asarray(xs, dtype=float)
    mu = np.asarray(mu, dtype=float)
    if xs.ndim != 1 or xs.shape != mu.shape or xs.size < 2:
        raise ValueError("xs and mu must be matching 1-d sample arrays")
    peak = float(mu.max())
    if peak <= 0.0:
        raise NoActivationError("aggregated fuzzy set is identically zero")
    if method == "centroid":
        weights = np.ones_like(mu)
        weights[0] = weights[-1] = 0.5
        weighted = weights * mu
        return float((xs * weighted).sum() / weighted.sum())
    if method == "mom":
        return float(xs[mu == peak].mean())
    raise ValueError(f"unknown defuzzification method {method!r}")


def infer(
    rulebase: RuleBase,
    inputs: dict[str, float],
    config: InferenceConfig = REFERENCE_CONFIG,
) -> dict[str, float]:
    """Crisp outputs for crisp inputs, one value per output variable."""
    expected = {v.name for v in rulebase.inputs}
    missing = expected - set(inputs)
    if missing:
        raise MissingInputError(f"missing input value(s): {sorted(missing)}")
    unknown = set(inputs) - expected
    if unknown:
        raise ValueError(f"unknown input variable(s): {sorted(unknown)}")
    fuzzified = {var.name: fuzzify(var, inputs[var.name]) for var in rulebase.inputs}
    activations = tuple(activate(rule, fuzzified, config.tnorm) for rule in rulebase.rules)
    results = {}
    for var in rulebase.outputs:
        xs, mu = aggregate(rulebase, activations, var.name, config)
        results[var.name] = defuzzify(xs, mu, config.defuzz)
    return results
