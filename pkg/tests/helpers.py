"""Shared test utilities: independent oracles and comparison helpers.

The oracles here deliberately avoid the package's packed-truth-table
machinery: they recurse over the AST per interpretation, so agreement with
the engine is a genuine cross-check.
"""

from __future__ import annotations

from parapri.formula import And, Atom, Const, Formula, Iff, Implies, Interpretation, Not, Or, evaluate
from parapri.preorder import PreorderSpec, strictly_better
from parapri.theory import Theory, build_theory


def models_naive(base, universe) -> list[Interpretation]:
    out = []
    for idx in range(2 ** len(universe)):
        z = Interpretation.from_index(universe, idx)
        if all(evaluate(b, z) for b in base):
            out.append(z)
    return out


def preferred_indices_naive(t: Theory) -> set[int]:
    """Enumerate all interpretations and apply the strict-domination test pairwise."""
    spec = PreorderSpec.of(t)
    ms = models_naive(t.base, t.universe)
    return {m.index for m in ms if not any(strictly_better(spec, m2, m) for m2 in ms)}


def _flatten(f: Formula, cls) -> list[str]:
    if isinstance(f, cls):
        return _flatten(f.left, cls) + _flatten(f.right, cls)
    return [ac_key(f)]


def ac_key(f: Formula) -> str:
    """Canonical string invariant under reordering of & / | / <-> operands."""
    match f:
        case Atom(name):
            return name
        case Const(v):
            return "true" if v else "false"
        case Not(g):
            return f"~{ac_key(g)}"
        case And() | Or():
            op = "&" if isinstance(f, And) else "|"
            return "(" + op.join(sorted(_flatten(f, type(f)))) + ")"
        case Implies(l, r):
            return f"({ac_key(l)}->{ac_key(r)})"
        case Iff(l, r):
            return "(" + "<->".join(sorted((ac_key(l), ac_key(r)))) + ")"
    raise TypeError(f)


def ac_set(formulas) -> frozenset[str]:
    return frozenset(ac_key(f) for f in formulas)


def chain_theory(n: int) -> Theory:
    """n single-atom defaults totally ordered d1 > d2 > ... > dn."""
    defaults = [(f"d{k}", f"p{k}") for k in range(1, n + 1)]
    prefer = [(f"d{k}", f"d{k + 1}") for k in range(1, n)]
    return build_theory(defaults=defaults, prefer=prefer)
