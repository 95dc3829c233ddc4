"""Canonical text rendering of programs.

`parse_program(print_program(p))` is structurally `p` for every valid
program, and identical input always renders to identical bytes.
"""

from __future__ import annotations

from .ast import And, Atom, Exists, Formula, Not, Or, Program, QueryDef, RuleDef


def _term(t) -> str:
    return repr(t)  # Var -> name, Lit -> quoted


def _unary(f: Formula) -> str:
    """Render at `unary` precedence, parenthesizing and/or chains."""
    if isinstance(f, Atom):
        return repr(f)
    if isinstance(f, Not):
        return f"not {_unary(f.body)}"
    if isinstance(f, Exists):
        return f"exists {', '.join(f.vars)}: {_unary(f.body)}"
    return f"({_formula(f)})"


def _conj(f: Formula) -> str:
    if isinstance(f, And):
        return " and ".join(_unary(p) for p in f.parts)
    return _unary(f)


def _formula(f: Formula) -> str:
    if isinstance(f, Or):
        return " or ".join(_conj(p) for p in f.parts)
    return _conj(f)


def print_formula(f: Formula) -> str:
    return _formula(f)


def print_program(program: Program) -> str:
    """Canonical source text; empty program renders to empty text."""
    lines = []
    for rule in program.rules:
        assert isinstance(rule, RuleDef)
        lines.append(f"pred {rule.name}({', '.join(rule.params)}) := {_formula(rule.body)}.")
    for query in program.queries:
        assert isinstance(query, QueryDef)
        lines.append(f"query {query.name} := {_formula(query.body)}.")
    return "\n".join(lines) + ("\n" if lines else "")
