"""Textual rule-base format: parser, canonical serializer, and lints.

Grammar, one statement per line, ``#`` starts a comment, keywords and
names are case-insensitive (normalized to lowercase):

    var <name> range <lo> <hi>
    term <name> tri <a> <b> <c>
    term <name> trap <a> <b> <c> <d>
    rule if <var> is <term> [and <var> is <term>]... then <var> is <term> [weight <w>]

``term`` lines attach to the most recent ``var`` block. Variables named
in rule consequents become outputs, everything else is an input. AND is
the only connective; OR and hedges such as "very" are rejected with
dedicated diagnostics rather than silently ignored.

Parsing is total: any input yields a ``ParseResult``, never an exception.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field

from .fuzzy import LinguisticVariable, MembershipFunction, Rule, RuleBase, RuleResolutionError, membership

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")
_NUMBER_RE = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?$")
_TOKEN_RE = re.compile(r"\S+")
_HEDGES = frozenset({"very", "somewhat", "slightly", "extremely"})

KEYWORDS = frozenset(
    {"var", "range", "term", "tri", "trap", "rule", "if", "is", "and", "or", "then", "weight"}
)


@dataclass(frozen=True)
class SourceLocation:
    """1-based line and column of a token."""

    line: int
    column: int


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    location: SourceLocation
    message: str
    code: str


@dataclass
class ParseResult:
    """Outcome of parsing: a rule base when no errors were found, plus
    every diagnostic collected along the way."""

    rulebase: RuleBase | None
    diagnostics: list[Diagnostic]

    @property
    def ok(self) -> bool:
        return self.rulebase is not None

    @property
    def errors(self) -> list[Diagnostic]:
        return [d for d in self.diagnostics if d.severity == "error"]


def format_number(x: float) -> str:
    """Shortest decimal text that parses back to exactly ``x``."""
    x = float(x)
    if math.isfinite(x) and x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def parse_number(text: str) -> float | None:
    """Strict decimal/scientific float syntax; None when malformed."""
    if not _NUMBER_RE.match(text):
        return None
    value = float(text)
    if not math.isfinite(value):
        return None
    return value


@dataclass(frozen=True)
class _Token:
    text: str
    loc: SourceLocation

    @property
    def lower(self) -> str:
        return self.text.lower()


class _Cursor:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> _Token | None:
        tok = self.peek()
        if tok is not None:
            self.pos += 1
        return tok


@dataclass
class _VarDecl:
    name: str
    loc: SourceLocation
    domain: tuple[float, float]
    terms: list[tuple[str, MembershipFunction]] = field(default_factory=list)


@dataclass
class _RuleDecl:
    loc: SourceLocation
    antecedents: list[tuple[_Token, _Token]]
    consequent: tuple[_Token, _Token]
    weight: float


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.diagnostics: list[Diagnostic] = []
        self.vars: dict[str, _VarDecl] = {}
        self.var_order: list[str] = []
        self.rules: list[_RuleDecl] = []
        self.current: _VarDecl | None = None
        self.output_names: list[str] = []

    def run(self) -> ParseResult:
        for line_no, raw in enumerate(self.text.splitlines(), 1):
            body = raw.split("#", 1)[0]
            tokens = [
                _Token(m.group(), SourceLocation(line_no, m.start() + 1))
                for m in _TOKEN_RE.finditer(body)
            ]
            if not tokens:
                continue
            head = tokens[0].lower
            if head == "var":
                self._var_line(tokens)
            elif head == "term":
                self._term_line(tokens)
            elif head == "rule":
                self._rule_line(tokens)
            else:
                self._error(tokens[0], "syntax-error",
                            f"expected 'var', 'term' or 'rule', got {tokens[0].text!r}")
        self._resolve()
        rulebase = None
        if not any(d.severity == "error" for d in self.diagnostics):
            rulebase = self._build()
        return ParseResult(rulebase, self.diagnostics)

    def _error(self, token: _Token, code: str, message: str) -> None:
        self.diagnostics.append(Diagnostic("error", token.loc, message, code))

    def _ident(self, token: _Token) -> str | None:
        if not _IDENT_RE.match(token.text):
            self._error(token, "bad-identifier", f"{token.text!r} is not a valid name")
            return None
        return token.lower

    def _number(self, token: _Token) -> float | None:
        value = parse_number(token.text)
        if value is None:
            self._error(token, "bad-number", f"{token.text!r} is not a finite number")
        return value

    def _var_line(self, toks: list[_Token]) -> None:
        if len(toks) < 5:
            self._error(toks[-1], "syntax-error", "var line must read: var <name> range <lo> <hi>")
            return
        if len(toks) > 5:
            self._error(toks[5], "syntax-error", "unexpected text after var declaration")
            return
        name = self._ident(toks[1])
        if name is None:
            return
        if toks[2].lower != "range":
            self._error(toks[2], "syntax-error", f"expected 'range', got {toks[2].text!r}")
            return
        lo = self._number(toks[3])
        hi = self._number(toks[4])
        if lo is None or hi is None:
            return
        if not lo < hi:
            self._error(toks[3], "bad-range",
                        f"domain must satisfy lo < hi, got [{toks[3].text}, {toks[4].text}]")
            return
        if name in self.vars:
            self._error(toks[1], "duplicate-variable", f"variable {name!r} already declared")
            return
        decl = _VarDecl(name, toks[1].loc, (lo, hi))
        self.vars[name] = decl
        self.var_order.append(name)
        self.current = decl

    def _term_line(self, toks: list[_Token]) -> None:
        if self.current is None:
            self._error(toks[0], "term-outside-var", "term line before any var declaration")
            return
        if len(toks) < 3:
            self._error(toks[-1], "syntax-error", "term line must read: term <name> tri|trap <params>")
            return
        name = self._ident(toks[1])
        if name is None:
            return
        kind = toks[2].lower
        if kind not in ("tri", "trap"):
            self._error(toks[2], "unknown-shape", f"expected 'tri' or 'trap', got {toks[2].text!r}")
            return
        arity = 3 if kind == "tri" else 4
        param_toks = toks[3:]
        if len(param_toks) != arity:
            self._error(toks[2], "syntax-error", f"{kind} takes {arity} parameters, got {len(param_toks)}")
            return
        params = [self._number(t) for t in param_toks]
        if any(p is None for p in params):
            return
        if any(existing == name for existing, _ in self.current.terms):
            self._error(toks[1], "duplicate-term",
                        f"term {name!r} already declared in variable {self.current.name!r}")
            return
        try:
            mf = MembershipFunction(kind, tuple(params))
        except ValueError as exc:
            self._error(param_toks[0], "mf-param-order", str(exc))
            return
        self.current.terms.append((name, mf))

    def _clause(self, cur: _Cursor, toks: list[_Token]) -> tuple[_Token, _Token] | None:
        var_tok = cur.next()
        if var_tok is None:
            self._error(toks[-1], "syntax-error", "expected '<variable> is <term>'")
            return None
        if self._ident(var_tok) is None:
            return None
        is_tok = cur.next()
        if is_tok is None or is_tok.lower != "is":
            self._error(is_tok or var_tok, "syntax-error", "expected 'is'")
            return None
        term_tok = cur.next()
        if term_tok is None:
            self._error(is_tok, "syntax-error", "expected a term name after 'is'")
            return None
        following = cur.peek()
        if (
            term_tok.lower in _HEDGES
            and following is not None
            and following.lower not in ("and", "then", "weight", "or")
        ):
            self._error(term_tok, "unsupported-hedge",
                        f"hedge {term_tok.text!r} is not supported; name the term directly")
            return None
        if self._ident(term_tok) is None:
            return None
        return var_tok, term_tok

    def _rule_line(self, toks: list[_Token]) -> None:
        cur = _Cursor(toks)
        rule_tok = cur.next()
        if_tok = cur.next()
        if if_tok is None or if_tok.lower != "if":
            self._error(if_tok or rule_tok, "syntax-error", "expected 'if' after 'rule'")
            return
        antecedents: list[tuple[_Token, _Token]] = []
        while True:
            clause = self._clause(cur, toks)
            if clause is None:
                return
            antecedents.append(clause)
            joiner = cur.next()
            if joiner is None:
                self._error(toks[-1], "syntax-error", "rule ended before 'then'")
                return
            if joiner.lower == "and":
                continue
            if joiner.lower == "then":
                break
            if joiner.lower == "or":
                self._error(joiner, "unsupported-connective",
                            "'or' is not supported; 'and' is the only connective")
                return
            self._error(joiner, "syntax-error", f"expected 'and' or 'then', got {joiner.text!r}")
            return
        consequent = self._clause(cur, toks)
        if consequent is None:
            return
        weight = 1.0
        tok = cur.next()
        if tok is not None:
            if tok.lower != "weight":
                self._error(tok, "syntax-error", f"unexpected {tok.text!r} after consequent")
                return
            weight_tok = cur.next()
            if weight_tok is None:
                self._error(tok, "syntax-error", "'weight' needs a value")
                return
            value = self._number(weight_tok)
            if value is None:
                return
            if not 0.0 < value <= 1.0:
                self._error(weight_tok, "bad-weight", f"weight must be in (0, 1], got {weight_tok.text}")
                return
            weight = value
            extra = cur.next()
            if extra is not None:
                self._error(extra, "syntax-error", f"unexpected {extra.text!r} after weight")
                return
        self.rules.append(_RuleDecl(toks[0].loc, antecedents, consequent, weight))

    def _resolve(self) -> None:
        consequent_names = []
        for decl in self.rules:
            name = decl.consequent[0].lower
            if name in self.vars and name not in consequent_names:
                consequent_names.append(name)
        self.output_names = [n for n in self.var_order if n in consequent_names]
        for decl in self.rules:
            for var_tok, term_tok in decl.antecedents:
                self._check_reference(var_tok, term_tok)
                if var_tok.lower in self.output_names:
                    self._error(var_tok, "variable-role-conflict",
                                f"{var_tok.lower!r} is used both as antecedent and consequent")
            self._check_reference(*decl.consequent)

    def _check_reference(self, var_tok: _Token, term_tok: _Token) -> None:
        decl = self.vars.get(var_tok.lower)
        if decl is None:
            self._error(var_tok, "unknown-variable", f"variable {var_tok.lower!r} is not declared")
            return
        if not any(name == term_tok.lower for name, _ in decl.terms):
            self._error(term_tok, "unknown-term",
                        f"variable {var_tok.lower!r} has no term {term_tok.lower!r}")

    def _build(self) -> RuleBase | None:
        variables = {
            name: LinguisticVariable(name, self.vars[name].domain, tuple(self.vars[name].terms))
            for name in self.var_order
        }
        inputs = tuple(variables[n] for n in self.var_order if n not in self.output_names)
        outputs = tuple(variables[n] for n in self.var_order if n in self.output_names)
        rules = tuple(
            Rule(
                antecedents=tuple((v.lower, t.lower) for v, t in decl.antecedents),
                consequent=(decl.consequent[0].lower, decl.consequent[1].lower),
                weight=decl.weight,
            )
            for decl in self.rules
        )
        try:
            return RuleBase(inputs, outputs, rules)
        except (ValueError, RuleResolutionError) as exc:
            self.diagnostics.append(
                Diagnostic("error", SourceLocation(1, 1), str(exc), "invalid-rulebase")
            )
            return None


def parse(text: str) -> ParseResult:
    """Parse rule-base source text; malformed input becomes diagnostics."""
    return _Parser(text).run()


def serialize(rulebase: RuleBase) -> str:
    """Canonical source text for a rule base.

    Deterministic layout: input variable blocks then output blocks, terms
    and rules in stored order, numbers as their shortest exact decimals,
    weights omitted when 1.
    """
    lines: list[str] = []
    for var in rulebase.inputs + rulebase.outputs:
        lo, hi = var.domain
        lines.append(f"var {var.name} range {format_number(lo)} {format_number(hi)}")
        for term_name, mf in var.terms:
            params = " ".join(format_number(p) for p in mf.params)
            lines.append(f"term {term_name} {mf.kind} {params}")
        lines.append("")
    for rule in rulebase.rules:
        clauses = " and ".join(f"{v} is {t}" for v, t in rule.antecedents)
        cons_var, cons_term = rule.consequent
        suffix = "" if rule.weight == 1.0 else f" weight {format_number(rule.weight)}"
        lines.append(f"rule if {clauses} then {cons_var} is {cons_term}{suffix}")
    text = "\n".join(lines).rstrip("\n")
    return text + "\n" if text else ""


_SEMANTIC_LOC = SourceLocation(1, 1)


def validate(rulebase: RuleBase) -> list[Diagnostic]:
    """Semantic lints on a structurally valid rule base.

    Errors: contradictory rules (identical antecedents, different
    consequents) and term families that leave part of a variable's domain
    at zero membership. Warnings: input-term combinations no rule covers
    and terms never used by any rule.
    """
    diagnostics: list[Diagnostic] = []

    def warn(code: str, message: str) -> None:
        diagnostics.append(Diagnostic("warning", _SEMANTIC_LOC, message, code))

    def error(code: str, message: str) -> None:
        diagnostics.append(Diagnostic("error", _SEMANTIC_LOC, message, code))

    seen: dict[frozenset, tuple[int, tuple[str, str]]] = {}
    for index, rule in enumerate(rulebase.rules, 1):
        key = frozenset(rule.antecedents)
        if key in seen and seen[key][1] != rule.consequent:
            error(
                "contradictory-rules",
                f"rules {seen[key][0]} and {index} share antecedents but conclude "
                f"{seen[key][1][1]!r} vs {rule.consequent[1]!r}",
            )
        seen.setdefault(key, (index, rule.consequent))

    axes = [[(var.name, t) for t in var.term_names] for var in rulebase.inputs]
    cell_count = math.prod(len(a) for a in axes) if axes else 0
    if axes and all(axes) and cell_count <= 100_000:
        for cell in itertools.product(*axes):
            assignment = dict(cell)
            covered = any(
                all(assignment.get(v) == t for v, t in rule.antecedents)
                for rule in rulebase.rules
            )
            if not covered:
                pretty = ", ".join(t for _, t in cell)
                warn("uncovered-cell", f"no rule covers ({pretty})")

    used_antecedent = {pair for rule in rulebase.rules for pair in rule.antecedents}
    used_consequent = {rule.consequent for rule in rulebase.rules}
    for var in rulebase.inputs:
        for t in var.term_names:
            if (var.name, t) not in used_antecedent:
                warn("unreachable-term", f"term {t!r} of {var.name!r} appears in no rule")
    for var in rulebase.outputs:
        for t in var.term_names:
            if (var.name, t) not in used_consequent:
                warn("unreachable-term", f"term {t!r} of {var.name!r} appears in no rule")

    for var in rulebase.inputs + rulebase.outputs:
        gap = _domain_gap(var)
        if gap is not None:
            error("domain-gap", f"terms of {var.name!r} give zero membership at {format_number(gap)}")

    return diagnostics


def _domain_gap(var: LinguisticVariable) -> float | None:
    # Memberships are piecewise linear, so a coverage gap must show up at a
    # breakpoint or at the midpoint between two adjacent breakpoints.
    lo, hi = var.domain
    points = {lo, hi}
    for _, mf in var.terms:
        points.update(p for p in mf.params if lo <= p <= hi)
    ordered = sorted(points)
    candidates = ordered + [(a + b) / 2.0 for a, b in zip(ordered, ordered[1:])]
    for x in sorted(candidates):
        if all(membership(mf, x) == 0.0 for _, mf in var.terms):
            return x
    return None
