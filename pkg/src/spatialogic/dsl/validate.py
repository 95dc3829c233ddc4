"""Static validation of parsed programs.

Violations are collected into a report rather than raised; an empty report
means the program satisfies every invariant the compiler relies on.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .ast import (
    BUILTIN_PREDICATES,
    FACT_PREDICATES,
    VARIABLE_RE,
    And,
    Atom,
    Exists,
    Formula,
    Lit,
    Not,
    Or,
    Program,
    Var,
    free_vars,
)

_VAR_PATTERN = re.compile(VARIABLE_RE + r"\Z")

#: arity of the built-in predicates (spatial relations and fact predicates)
BUILTIN_ARITY = {name: 2 for name in BUILTIN_PREDICATES | FACT_PREDICATES}


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    pos: tuple | None = None

    def __str__(self) -> str:
        loc = f"{self.pos[0]}:{self.pos[1]}: " if self.pos else ""
        return f"{loc}{self.kind}: {self.message}"


def validate(program: Program) -> list[Violation]:
    """Check every program invariant; returns [] iff the program is valid."""
    report: list[Violation] = []
    rule_arity: dict[str, int] = {}

    for rule in program.rules:
        if rule.name in rule_arity or rule.name in BUILTIN_ARITY:
            report.append(
                Violation("duplicate-name", f"predicate '{rule.name}' already defined", rule.pos)
            )
        rule_arity.setdefault(rule.name, len(rule.params))

    seen_queries: set[str] = set()
    for query in program.queries:
        if query.name in seen_queries:
            report.append(
                Violation("duplicate-name", f"query '{query.name}' already defined", query.pos)
            )
        seen_queries.add(query.name)

    for rule in program.rules:
        loose = free_vars(rule.body) - set(rule.params)
        for name in sorted(loose):
            report.append(
                Violation(
                    "unbound-variable",
                    f"variable '{name}' in body of '{rule.name}' is not a head variable",
                    rule.pos,
                )
            )
        _check_formula(rule.body, set(rule.params), rule_arity, report)

    for query in program.queries:
        loose = free_vars(query.body)
        for name in sorted(loose):
            report.append(
                Violation(
                    "unbound-variable",
                    f"variable '{name}' in query '{query.name}' is not quantified",
                    query.pos,
                )
            )
        _check_formula(query.body, set(), rule_arity, report)

    report.extend(_rule_cycles(program))
    return report


def _check_formula(
    f: Formula,
    bound: set[str],
    rule_arity: dict[str, int],
    report: list[Violation],
) -> None:
    if isinstance(f, Atom):
        _check_atom(f, bound, rule_arity, report)
        return
    if isinstance(f, (And, Or)):
        for p in f.parts:
            _check_formula(p, bound, rule_arity, report)
        return
    if isinstance(f, Exists):
        for name in f.vars:
            if not _VAR_PATTERN.match(name):
                report.append(Violation("bad-variable", f"invalid variable name '{name}'", f.pos))
        _check_formula(f.body, bound | set(f.vars), rule_arity, report)
        return
    if isinstance(f, Not):
        # Safe negation: every free variable of the negated sub-formula must
        # already be bound outside it (quantified variables inside are fine).
        for name in sorted(free_vars(f.body) - bound):
            report.append(
                Violation(
                    "unsafe-negation",
                    f"variable '{name}' free under 'not' is not bound outside it",
                    f.pos,
                )
            )
        _check_formula(f.body, bound, rule_arity, report)
        return
    raise TypeError(f"not a formula: {f!r}")


def _check_atom(
    atom: Atom,
    bound: set[str],
    rule_arity: dict[str, int],
    report: list[Violation],
) -> None:
    arity = BUILTIN_ARITY.get(atom.pred, rule_arity.get(atom.pred))
    if arity is None:
        report.append(
            Violation("unknown-predicate", f"'{atom.pred}' is neither built-in nor defined", atom.pos)
        )
    elif arity != len(atom.args):
        report.append(
            Violation(
                "arity-mismatch",
                f"'{atom.pred}' expects {arity} arguments, got {len(atom.args)}",
                atom.pos,
            )
        )

    for term in atom.args:
        if isinstance(term, Var):
            if not _VAR_PATTERN.match(term.name):
                report.append(
                    Violation("bad-variable", f"invalid variable name '{term.name}'", term.pos)
                )
            if term.name not in bound:
                report.append(
                    Violation(
                        "unbound-variable",
                        f"variable '{term.name}' is not quantified",
                        term.pos,
                    )
                )
        elif isinstance(term, Lit) and not term.value:
            report.append(Violation("empty-literal", "empty symbol literal", term.pos))

    if atom.pred in BUILTIN_PREDICATES:
        for term in atom.args:
            if isinstance(term, Lit):
                report.append(
                    Violation(
                        "literal-in-builtin",
                        f"'{atom.pred}' arguments must be variables",
                        term.pos,
                    )
                )
    if atom.pred in FACT_PREDICATES and len(atom.args) == 2:
        if not isinstance(atom.args[0], Var):
            report.append(
                Violation(
                    "bad-fact-atom",
                    f"first argument of '{atom.pred}' must be a variable",
                    atom.pos,
                )
            )
        if not isinstance(atom.args[1], Lit):
            report.append(
                Violation(
                    "bad-fact-atom",
                    f"second argument of '{atom.pred}' must be a symbol literal",
                    atom.pos,
                )
            )


def _rule_cycles(program: Program) -> list[Violation]:
    """Reject recursion: the rule-call graph must be acyclic."""
    from .ast import atoms_of

    defined = {rule.name: rule for rule in program.rules}
    edges = {
        name: sorted(
            {a.pred for a in atoms_of(rule.body) if a.pred in defined}
        )
        for name, rule in defined.items()
    }
    report: list[Violation] = []
    state: dict[str, int] = {}  # 1 = in progress, 2 = done

    def visit(name: str, trail: list[str]) -> None:
        if state.get(name) == 2:
            return
        if state.get(name) == 1:
            cycle = trail[trail.index(name):] + [name]
            report.append(
                Violation(
                    "recursive-rule",
                    "recursion is not supported: " + " -> ".join(cycle),
                    defined[name].pos,
                )
            )
            return
        state[name] = 1
        for callee in edges[name]:
            visit(callee, trail + [name])
        state[name] = 2

    for name in defined:
        visit(name, [])
    return report
