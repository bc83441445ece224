"""Hypothesis strategies and plain-random generators shared across tests."""

from __future__ import annotations

import hypothesis.strategies as st

from fuzzavail import EventRecord, LinguisticVariable, MembershipFunction, Rule, RuleBase, Timeline
from fuzzavail.dsl import KEYWORDS

_RESERVED = frozenset(KEYWORDS) | {"very", "somewhat", "slightly", "extremely"}

identifiers = st.from_regex(r"[a-z][a-z0-9_]{0,7}", fullmatch=True).filter(
    lambda s: s not in _RESERVED
)

_params = st.floats(min_value=-10, max_value=10, allow_nan=False)


@st.composite
def membership_functions(draw) -> MembershipFunction:
    if draw(st.booleans()):
        a, b, c = sorted(draw(st.tuples(_params, _params, _params)))
        return MembershipFunction.triangular(a, b, c)
    a, b, c, d = sorted(draw(st.tuples(_params, _params, _params, _params)))
    return MembershipFunction.trapezoidal(a, b, c, d)


@st.composite
def linguistic_variables(draw, name: str) -> LinguisticVariable:
    lo = draw(st.floats(min_value=-10, max_value=9, allow_nan=False))
    hi = draw(st.floats(min_value=lo + 0.5, max_value=lo + 20, allow_nan=False))
    n_terms = draw(st.integers(2, 7))
    term_names = draw(
        st.lists(identifiers, min_size=n_terms, max_size=n_terms, unique=True)
    )
    terms = tuple((t, draw(membership_functions())) for t in term_names)
    return LinguisticVariable(name, (lo, hi), terms)


@st.composite
def rulebases(draw) -> RuleBase:
    """Valid rule bases with up to 3 inputs + 1 output, 7 terms, 50 rules.

    Every rule's consequent names the output variable, so role inference
    from rule usage reconstructs the same structure after a round-trip.
    """
    n_inputs = draw(st.integers(1, 3))
    names = draw(
        st.lists(identifiers, min_size=n_inputs + 1, max_size=n_inputs + 1, unique=True)
    )
    inputs = tuple(draw(linguistic_variables(name)) for name in names[:n_inputs])
    output = draw(linguistic_variables(names[-1]))
    n_rules = draw(st.integers(1, 50))
    rules = []
    for _ in range(n_rules):
        chosen = draw(
            st.lists(st.booleans(), min_size=n_inputs, max_size=n_inputs).filter(any)
        )
        antecedents = tuple(
            (var.name, draw(st.sampled_from(var.term_names)))
            for var, keep in zip(inputs, chosen)
            if keep
        )
        consequent = (output.name, draw(st.sampled_from(output.term_names)))
        weight = draw(
            st.one_of(
                st.just(1.0),
                st.floats(min_value=0.0, max_value=1.0, exclude_min=True, allow_nan=False),
            )
        )
        rules.append(Rule(antecedents, consequent, weight))
    return RuleBase(inputs, (output,), tuple(rules))


@st.composite
def timelines(draw) -> Timeline:
    """Alternating failure/restore timelines on a dyadic (1/1024 h) lattice,
    so duration sums are exact in binary floating point."""
    start_tick = draw(st.integers(0, 10**6))
    n_events = draw(st.integers(0, 30))
    gaps = draw(st.lists(st.integers(1, 10**4), min_size=n_events, max_size=n_events))
    ticks = []
    tick = start_tick
    for gap in gaps:
        tick += gap
        ticks.append(tick)
    tail = draw(st.integers(0, 10**4))
    end_tick = (ticks[-1] if ticks else start_tick) + tail
    if end_tick == start_tick:
        end_tick = start_tick + 1
    events = tuple(
        EventRecord(t / 1024.0, "failure" if k % 2 == 0 else "restore")
        for k, t in enumerate(ticks)
    )
    return Timeline(start_tick / 1024.0, end_tick / 1024.0, events)


def random_timeline(rng) -> Timeline:
    """Plain-random dyadic timeline for seeded bulk loops."""
    start_tick = rng.randrange(0, 10**6)
    n_events = rng.randrange(0, 31)
    ticks = []
    tick = start_tick
    for _ in range(n_events):
        tick += rng.randrange(1, 10**4)
        ticks.append(tick)
    tail = rng.randrange(0, 10**4)
    end_tick = (ticks[-1] if ticks else start_tick) + tail
    if end_tick == start_tick:
        end_tick = start_tick + 1
    events = tuple(
        EventRecord(t / 1024.0, "failure" if k % 2 == 0 else "restore")
        for k, t in enumerate(ticks)
    )
    return Timeline(start_tick / 1024.0, end_tick / 1024.0, events)
