"""AST for the spatial-configuration query language.

All nodes are immutable. Source positions are carried for error reporting
but excluded from equality, so two programs compare equal iff they have the
same structure regardless of where they were parsed from.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

# (line, col), 1-based. None for synthesized nodes.
Pos = Union[tuple, None]

#: Spatial relations evaluated directly on grid cells.
BUILTIN_PREDICATES = frozenset({"left", "right", "above", "below", "neighbor"})

#: Predicates whose ground instances are probabilistic facts from heatmaps.
FACT_PREDICATES = frozenset({"object", "segment"})

VARIABLE_RE = r"[A-Z][A-Za-z0-9_]*"


@dataclass(frozen=True)
class Var:
    name: str
    pos: Pos = field(default=None, compare=False)

    def __repr__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Lit:
    """Quoted symbol literal, e.g. "tool"."""

    value: str
    pos: Pos = field(default=None, compare=False)

    def __repr__(self) -> str:
        escaped = (
            self.value.replace("\\", "\\\\")
            .replace('"', '\\"')
            .replace("\n", "\\n")
            .replace("\t", "\\t")
        )
        return f'"{escaped}"'


Term = Union[Var, Lit]


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple[Term, ...]
    pos: Pos = field(default=None, compare=False)

    def __repr__(self) -> str:
        return f"{self.pred}({', '.join(map(repr, self.args))})"


@dataclass(frozen=True)
class And:
    parts: tuple["Formula", ...]
    pos: Pos = field(default=None, compare=False)


@dataclass(frozen=True)
class Or:
    parts: tuple["Formula", ...]
    pos: Pos = field(default=None, compare=False)


@dataclass(frozen=True)
class Not:
    body: "Formula"
    pos: Pos = field(default=None, compare=False)


@dataclass(frozen=True)
class Exists:
    vars: tuple[str, ...]
    body: "Formula"
    pos: Pos = field(default=None, compare=False)


Formula = Union[Atom, And, Or, Not, Exists]


@dataclass(frozen=True)
class RuleDef:
    name: str
    params: tuple[str, ...]
    body: Formula
    pos: Pos = field(default=None, compare=False)


@dataclass(frozen=True)
class QueryDef:
    name: str
    #: First variable of the outermost Exists; None when the query is not
    #: existential (validation reports it, compilation rejects it).
    subject_var: Union[str, None]
    body: Formula
    pos: Pos = field(default=None, compare=False)


@dataclass(frozen=True)
class Program:
    rules: tuple[RuleDef, ...] = ()
    queries: tuple[QueryDef, ...] = ()


def conj(parts: list[Formula] | tuple[Formula, ...], pos: Pos = None) -> Formula:
    """N-ary conjunction, flattening nested And and collapsing singletons."""
    flat: list[Formula] = []
    for p in parts:
        if isinstance(p, And):
            flat.extend(p.parts)
        else:
            flat.append(p)
    if len(flat) == 1:
        return flat[0]
    return And(tuple(flat), pos)


def disj(parts: list[Formula] | tuple[Formula, ...], pos: Pos = None) -> Formula:
    """N-ary disjunction, flattening nested Or and collapsing singletons."""
    flat: list[Formula] = []
    for p in parts:
        if isinstance(p, Or):
            flat.extend(p.parts)
        else:
            flat.append(p)
    if len(flat) == 1:
        return flat[0]
    return Or(tuple(flat), pos)


def free_vars(f: Formula) -> frozenset[str]:
    """Variables occurring in `f` not bound by an Exists inside `f`."""
    if isinstance(f, Atom):
        return frozenset(t.name for t in f.args if isinstance(t, Var))
    if isinstance(f, (And, Or)):
        out: frozenset[str] = frozenset()
        for p in f.parts:
            out |= free_vars(p)
        return out
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, Exists):
        return free_vars(f.body) - frozenset(f.vars)
    raise TypeError(f"not a formula: {f!r}")


def atoms_of(f: Formula) -> list[Atom]:
    """All atoms in `f`, in source order."""
    if isinstance(f, Atom):
        return [f]
    if isinstance(f, (And, Or)):
        out: list[Atom] = []
        for p in f.parts:
            out.extend(atoms_of(p))
        return out
    if isinstance(f, Not):
        return atoms_of(f.body)
    if isinstance(f, Exists):
        return atoms_of(f.body)
    raise TypeError(f"not a formula: {f!r}")
