"""Toolkit for quantifying how security posture affects system availability.

Achieved availability comes from MTBF and mean repair time; a 25-rule
Mamdani fuzzy model combines it with a security level coefficient into a
single global availability coefficient, with exporters for surfaces, level
curves and fixed-security slices.
"""

from .contours import contours, write_contours_json, write_contours_text
from .dsl import (
    Diagnostic,
    ParseResult,
    SourceLocation,
    format_number,
    parse,
    serialize,
    validate,
)
from .events import (
    EventParseResult,
    EventRecord,
    IncompleteRepairWarning,
    Timeline,
    compute_stats,
    open_downtime,
    parse_events,
    repair_segments,
    uptime_segments,
)
from .fuzzy import (
    REFERENCE_CONFIG,
    DomainClampWarning,
    EmptyOutputError,
    FuzzyError,
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
    defuzzify,
    fuzzify,
    infer,
    membership,
)
from .model import (
    AvailabilityInputs,
    Grid,
    NoFailuresWarning,
    ReliabilityStats,
    Slice,
    UndefinedAvailabilityError,
    achieved_availability,
    builtin_rulebase,
    five_term_variable,
    global_availability,
    read_grid_csv,
    slice_at,
    surface,
    unit_samples,
    write_grid_csv,
    write_slice_csv,
)

__version__ = "0.1.0"
