"""Failure/restore event timelines and the reliability statistics they imply.

Timestamps are plain decimal hours. A timeline assumes the system is up at
the start of the observation window, so events must alternate beginning
with a failure. MTBF is total uptime over the failure count; the mean
repair time averages completed failure-to-restore intervals only, so a
trailing unrepaired failure raises the failure count without touching it.
"""

from __future__ import annotations

import math
import re
import warnings
from dataclasses import dataclass

from .dsl import Diagnostic, SourceLocation, parse_number
from .model import ReliabilityStats

KINDS = ("failure", "restore")

_WINDOW_RE = re.compile(r"#\s*(start|end)\s*=\s*(\S+)\s*$")


class IncompleteRepairWarning(UserWarning):
    """Failures were observed but none completed repair; MTR defaults to 0."""


@dataclass(frozen=True)
class EventRecord:
    timestamp: float
    kind: str

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if not math.isfinite(self.timestamp) or self.timestamp < 0:
            raise ValueError(f"timestamp must be finite and nonnegative, got {self.timestamp}")


@dataclass(frozen=True)
class Timeline:
    """Strictly ordered, alternating events inside an observation window."""

    observation_start: float
    observation_end: float
    events: tuple[EventRecord, ...]

    def __post_init__(self) -> None:
        start, end = self.observation_start, self.observation_end
        if not (math.isfinite(start) and math.isfinite(end) and start < end):
            raise ValueError(f"observation window must satisfy start < end, got [{start}, {end}]")
        previous = None
        up = True
        for event in self.events:
            if not start <= event.timestamp <= end:
                raise ValueError(f"event at {event.timestamp} outside window [{start}, {end}]")
            if previous is not None and event.timestamp <= previous:
                raise ValueError(f"timestamps must be strictly increasing at {event.timestamp}")
            if event.kind == "restore" and up:
                raise ValueError(f"restore at {event.timestamp} without a preceding failure")
            if event.kind == "failure" and not up:
                raise ValueError(f"failure at {event.timestamp} while already down")
            up = event.kind == "restore"
            previous = event.timestamp


def uptime_segments(timeline: Timeline) -> list[tuple[float, float]]:
    """Intervals when the system is up: window start to the first failure,
    then each restore to the next failure or the window end."""
    segments = []
    up_since = timeline.observation_start
    for event in timeline.events:
        if event.kind == "failure":
            segments.append((up_since, event.timestamp))
            up_since = None
        else:
            up_since = event.timestamp
    if up_since is not None:
        segments.append((up_since, timeline.observation_end))
    return segments


def repair_segments(timeline: Timeline) -> list[tuple[float, float]]:
    """Completed failure-to-restore intervals."""
    segments = []
    down_since = None
    for event in timeline.events:
        if event.kind == "failure":
            down_since = event.timestamp
        else:
            segments.append((down_since, event.timestamp))
            down_since = None
    return segments


def open_downtime(timeline: Timeline) -> tuple[float, float] | None:
    """Trailing unrepaired interval, or None when the window ends up."""
    if timeline.events and timeline.events[-1].kind == "failure":
        return (timeline.events[-1].timestamp, timeline.observation_end)
    return None


def compute_stats(timeline: Timeline) -> ReliabilityStats:
    """MTBF from total uptime over failures; MTR from completed repairs."""
    failures = sum(1 for event in timeline.events if event.kind == "failure")
    if failures == 0:
        return ReliabilityStats(mtbf=None, mtr=0.0, failure_count=0)
    uptime = sum(end - start for start, end in uptime_segments(timeline))
    repairs = [end - start for start, end in repair_segments(timeline)]
    if repairs:
        mtr = sum(repairs) / len(repairs)
    else:
        warnings.warn("no completed repairs in window; MTR set to 0",
                      IncompleteRepairWarning, stacklevel=2)
        mtr = 0.0
    return ReliabilityStats(mtbf=uptime / failures, mtr=mtr, failure_count=failures)


@dataclass
class EventParseResult:
    timeline: Timeline | None
    diagnostics: list[Diagnostic]

    @property
    def ok(self) -> bool:
        return self.timeline is not None


def parse_events(text: str, *, start: float | None = None, end: float | None = None) -> EventParseResult:
    """Parse a ``timestamp,kind`` CSV into a validated timeline.

    The observation window comes from ``# start=`` / ``# end=`` comment
    lines unless overridden by the keyword arguments. All problems are
    reported as located diagnostics, never raised.
    """
    diagnostics: list[Diagnostic] = []
    raw_events: list[tuple[SourceLocation, float, str]] = []
    header_seen = False
    file_start: float | None = None
    file_end: float | None = None

    def error(line: int, column: int, code: str, message: str) -> None:
        diagnostics.append(Diagnostic("error", SourceLocation(line, column), message, code))

    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            match = _WINDOW_RE.match(line)
            if match:
                value = parse_number(match.group(2))
                if value is None:
                    error(line_no, 1, "bad-number", f"{match.group(2)!r} is not a finite number")
                elif match.group(1) == "start":
                    file_start = value
                else:
                    file_end = value
            continue
        if not header_seen:
            if [c.strip().lower() for c in line.split(",")] != ["timestamp", "kind"]:
                error(line_no, 1, "bad-header", "expected header 'timestamp,kind'")
                return EventParseResult(None, diagnostics)
            header_seen = True
            continue
        parts = [c.strip() for c in line.split(",")]
        if len(parts) != 2:
            error(line_no, 1, "bad-row", f"expected 2 columns, got {len(parts)}")
            continue
        timestamp = parse_number(parts[0])
        if timestamp is None:
            error(line_no, 1, "bad-number", f"{parts[0]!r} is not a finite number")
            continue
        if timestamp < 0:
            error(line_no, 1, "bad-timestamp", f"timestamp must be nonnegative, got {parts[0]}")
            continue
        kind = parts[1].lower()
        if kind not in KINDS:
            error(line_no, len(parts[0]) + 2, "bad-kind", f"kind must be failure or restore, got {parts[1]!r}")
            continue
        raw_events.append((SourceLocation(line_no, 1), timestamp, kind))

    if not header_seen:
        error(1, 1, "bad-header", "no 'timestamp,kind' header found")
        return EventParseResult(None, diagnostics)

    window_start = start if start is not None else file_start
    window_end = end if end is not None else file_end
    if window_start is None or window_end is None:
        error(1, 1, "missing-window",
              "observation window missing; add '# start=' / '# end=' comments or pass start/end")
    elif not window_start < window_end:
        error(1, 1, "bad-window", f"window must satisfy start < end, got [{window_start}, {window_end}]")

    previous: float | None = None
    up = True
    for loc, timestamp, kind in raw_events:
        if previous is not None and timestamp <= previous:
            error(loc.line, loc.column, "non-monotone-timestamp",
                  f"timestamp {format(timestamp, 'g')} does not increase")
        if kind == "restore" and up:
            error(loc.line, loc.column, "orphan-restore", "restore without a preceding failure")
        if kind == "failure" and not up:
            error(loc.line, loc.column, "repeated-failure", "failure while already down")
        if window_start is not None and window_end is not None and window_start < window_end:
            if not window_start <= timestamp <= window_end:
                error(loc.line, loc.column, "event-outside-window",
                      f"event at {format(timestamp, 'g')} outside [{format(window_start, 'g')}, "
                      f"{format(window_end, 'g')}]")
        up = kind == "restore"
        previous = timestamp

    if any(d.severity == "error" for d in diagnostics):
        return EventParseResult(None, diagnostics)
    events = tuple(EventRecord(ts, kind) for _, ts, kind in raw_events)
    try:
        timeline = Timeline(window_start, window_end, events)
    except ValueError as exc:
        error(1, 1, "invalid-timeline", str(exc))
        return EventParseResult(None, diagnostics)
    return EventParseResult(timeline, diagnostics)
