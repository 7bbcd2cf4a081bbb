"""Inheritance-style specificity: pruning transformed default sets and the
guarded-rule ("abnormality") parallel encoding.

A transformed formula can be dropped, relative to the base, when it is
entailed by the base, inconsistent with the base, or base-equivalent to a
combination built with conjunction and disjunction only from at most k of
the other surviving formulas. All three conditions preserve the preferred
models of the parallel circumscription; the pruner re-checks that claim
after the fact when the universe is small enough.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple, Sequence, Union

from .circumscription import circ_equivalent
from .config import DEFAULT_CAPS
from .errors import CapExceededError, InternalError, ValidationError
from .formula import Atom, Formula, Implies, Not, atoms as formula_atoms, parse_formula, truth_mask
from .theory import (
    LabeledFormula,
    PriorityOrder,
    Theory,
    build_theory,
    parallel_order,
)
from .transform import TransformOutput, transform_canonical

TAUT_TRUE = "tautologically-true"
TAUT_FALSE = "tautologically-false"
COMBINATION = "base-equivalent-to-positive-combination"


@dataclass(frozen=True)
class DropRecord:
    label: str
    formula: Formula
    reason: str
    witnesses: tuple[str, ...] = ()

    def describe(self) -> str:
        if self.reason == COMBINATION:
            return f"{self.reason}({','.join(self.witnesses)})"
        return self.reason


@dataclass(frozen=True)
class PruneReport:
    kept: tuple[LabeledFormula, ...]
    dropped: tuple[DropRecord, ...]

    @property
    def kept_formulas(self) -> tuple[Formula, ...]:
        return tuple(f for _, f in self.kept)


def _positive_combinations(masks: Sequence[int]) -> set[int]:
    # Closure of the given truth tables under & and |; finite but can grow
    # quickly, so give up loudly rather than stall.
    vals = set(masks)
    while True:
        fresh = set()
        for a, b in itertools.combinations(vals, 2):
            for c in (a & b, a | b):
                if c not in vals:
                    fresh.add(c)
        if not fresh:
            return vals
        vals |= fresh
        if len(vals) > 4096:
            raise CapExceededError("positive-combination closure grew past 4096 tables")


def _scan_order(entries: list[tuple[str, Formula, tuple[int, int]]]) -> list[int]:
    # Highest source block first, bit strings in descending value within it.
    return sorted(range(len(entries)), key=lambda k: entries[k][2], reverse=True)


def prune_redundant(
    w: Union[TransformOutput, Sequence[LabeledFormula], Sequence[Formula]],
    base: Sequence[Formula],
    universe: Sequence[str],
    k: int = 2,
    max_atoms: int = DEFAULT_CAPS.model_atoms,
) -> PruneReport:
    """Iteratively drop redundant formulas from a parallel default set."""
    if isinstance(w, TransformOutput):
        block_of: dict[str, int] = {}
        for p in w.provenance:
            block_of.setdefault(p.source, len(block_of))
        entries = [
            (label, f, (block_of[p.source], int(p.bits, 2) if p.bits else 0))
            for (label, f), p in zip(w.defaults, w.provenance)
        ]
    else:
        entries = []
        for pos, item in enumerate(w):
            label, f = (f"w{pos}", item) if isinstance(item, Formula) else item
            entries.append((label, f, (pos, 0)))

    names = tuple(universe)
    size = 1 << len(names)
    full = (1 << size) - 1
    base_mask = full
    for b in base:
        base_mask &= truth_mask(b, names)
    masks = [truth_mask(f, names) for _, f, _ in entries]

    alive = set(range(len(entries)))
    drops: dict[int, DropRecord] = {}
    for pos in _scan_order(entries):
        label, f, _ = entries[pos]
        fm = masks[pos] & base_mask
        if fm == base_mask:
            drops[pos] = DropRecord(label, f, TAUT_TRUE)
            alive.discard(pos)
            continue
        if fm == 0:
            drops[pos] = DropRecord(label, f, TAUT_FALSE)
            alive.discard(pos)
            continue
        others = [q for q in sorted(alive) if q != pos]
        found = None
        for subset_size in range(1, k + 1):
            for subset in itertools.combinations(others, subset_size):
                combos = _positive_combinations([masks[q] for q in subset])
                if any(c & base_mask == fm for c in combos):
                    found = subset
                    break
            if found:
                break
        if found:
            drops[pos] = DropRecord(label, f, COMBINATION, tuple(entries[q][0] for q in found))
            alive.discard(pos)

    kept = tuple(LabeledFormula(label, f) for pos, (label, f, _) in enumerate(entries) if pos in alive)
    dropped = tuple(drops[pos] for pos in sorted(drops))
    if len(names) <= max_atoms:
        before = _parallel(names, base, [LabeledFormula(l, f) for l, f, _ in entries])
        after = _parallel(names, base, kept)
        if not circ_equivalent(before, after, max_atoms=max_atoms):
            raise InternalError("pruning changed the preferred models")
    return PruneReport(kept=kept, dropped=dropped)


def _parallel(universe: tuple[str, ...], base: Sequence[Formula], defaults: Sequence[LabeledFormula]) -> Theory:
    return Theory(
        universe=universe,
        base=tuple(base),
        defaults=tuple(defaults),
        priority=parallel_order(l for l, _ in defaults),
        fixtures=(),
    )


class GuardedRule(NamedTuple):
    label: str
    condition: Formula
    consequent: Formula


class InheritanceCase(NamedTuple):
    universe: tuple[str, ...]
    base: tuple[str, ...]
    defaults: tuple[tuple[str, str], ...]
    prefer: tuple[tuple[str, str], ...]
    parallel_defaults: tuple[tuple[str, str], ...]


# Built-in single-individual inheritance scenarios of increasing size:
# one exceptional subclass, two exceptional subclasses, and two levels of
# exceptional subclasses.
INHERITANCE_CASES: dict[int, InheritanceCase] = {
    11: InheritanceCase(
        universe=("bird", "flies", "ostrich"),
        base=("ostrich -> bird",),
        defaults=(("e1", "bird -> flies"), ("e2", "ostrich -> ~flies")),
        prefer=(("e2", "e1"),),
        parallel_defaults=(
            ("d1", "bird -> (flies & ~ostrich)"),
            ("d2", "ostrich -> ~flies"),
        ),
    ),
    12: InheritanceCase(
        universe=("bird", "flies", "ostrich", "penguin"),
        base=("ostrich -> bird", "penguin -> bird"),
        defaults=(
            ("e1", "bird -> flies"),
            ("e2", "ostrich -> ~flies"),
            ("e3", "penguin -> ~flies"),
        ),
        prefer=(("e2", "e1"), ("e3", "e1")),
        parallel_defaults=(
            ("d1", "bird -> (flies & ~ostrich & ~penguin)"),
            ("d2", "ostrich -> ~flies"),
            ("d3", "penguin -> ~flies"),
        ),
    ),
    13: InheritanceCase(
        universe=("animal", "bird", "flies", "ostrich", "penguin"),
        base=("ostrich -> bird", "penguin -> bird", "bird -> animal"),
        defaults=(
            ("e0", "animal -> ~flies"),
            ("e1", "bird -> flies"),
            ("e2", "ostrich -> ~flies"),
            ("e3", "penguin -> ~flies"),
        ),
        prefer=(("e1", "e0"), ("e2", "e0"), ("e3", "e0"), ("e2", "e1"), ("e3", "e1")),
        parallel_defaults=(
            ("d0", "animal -> (~flies & ~bird)"),
            ("d1", "bird -> (flies & ~ostrich & ~penguin)"),
            ("d2", "ostrich -> ~flies"),
            ("d3", "penguin -> ~flies"),
        ),
    ),
}


def inheritance_theory(case: int) -> Theory:
    c = INHERITANCE_CASES[case]
    return build_theory(atoms=c.universe, base=c.base, defaults=c.defaults, prefer=c.prefer)


def inheritance_parallel_theory(case: int) -> Theory:
    c = INHERITANCE_CASES[case]
    return build_theory(atoms=c.universe, base=c.base, defaults=c.parallel_defaults)


def inheritance_rules(case: int) -> list[GuardedRule]:
    out = []
    for label, text in INHERITANCE_CASES[case].defaults:
        f = parse_formula(text)
        assert isinstance(f, Implies)
        out.append(GuardedRule(label, f.left, f.right))
    return out


def verify_special_case(case: int, max_atoms: int = DEFAULT_CAPS.model_atoms) -> bool:
    """Whether the prioritized scenario and its hand-listed parallel
    counterpart have the same preferred models."""
    if case not in INHERITANCE_CASES:
        raise ValidationError(f"unknown built-in case {case}; choose from {sorted(INHERITANCE_CASES)}")
    return circ_equivalent(inheritance_theory(case), inheritance_parallel_theory(case), max_atoms=max_atoms)


AB_VARIANTS = ("violation", "class", "class-positive")


def encode_abnormality(
    rules: Sequence[GuardedRule],
    priority: PriorityOrder,
    variant: str = "violation",
    base: Sequence[Formula] = (),
    universe: Sequence[str] | None = None,
) -> Theory:
    """Guarded-rule parallel encoding of prioritized implication rules.

    Each rule c -> q gains a fresh atom ab_<label> and the for-sure guard
    ~ab -> (c -> q). Every strict priority pair (j, i) contributes one
    cancellation axiom; its shape depends on the variant:

      violation       ~(c_j -> q_j) -> ab_i
      class           ~c_j -> ab_i
      class-positive  c_j -> ab_i

    The only defaults of the result are the ~ab atoms, in parallel.
    """
    if variant not in AB_VARIANTS:
        raise ValidationError(f"unknown variant {variant!r}; choose from {AB_VARIANTS}")
    if tuple(r.label for r in rules) != priority.indices:
        raise ValidationError("rules and priority order disagree on labels")
    rule_of = {r.label: r for r in rules}

    mentioned: dict[str, None] = {}
    for f in base:
        for a in formula_atoms(f):
            mentioned.setdefault(a)
    for r in rules:
        for a in formula_atoms(r.condition) + formula_atoms(r.consequent):
            mentioned.setdefault(a)
    names = tuple(universe) if universe is not None else tuple(mentioned)

    ab_atoms = {}
    for r in rules:
        ab = f"ab_{r.label}"
        if ab in names:
            raise ValidationError(f"abnormality atom {ab!r} clashes with an existing atom")
        ab_atoms[r.label] = ab

    new_base = list(base)
    for r in rules:
        new_base.append(Implies(Not(Atom(ab_atoms[r.label])), Implies(r.condition, r.consequent)))
    for i in priority.indices:
        for j in priority.indices:
            if not priority.higher(j, i):
                continue
            rj = rule_of[j]
            if variant == "violation":
                trigger: Formula = Not(Implies(rj.condition, rj.consequent))
            elif variant == "class":
                trigger = Not(rj.condition)
            else:
                trigger = rj.condition
            new_base.append(Implies(trigger, Atom(ab_atoms[i])))

    defaults = tuple(LabeledFormula(ab_atoms[r.label], Not(Atom(ab_atoms[r.label]))) for r in rules)
    return Theory(
        universe=names + tuple(ab_atoms[r.label] for r in rules),
        base=tuple(new_base),
        defaults=defaults,
        priority=parallel_order(d.label for d in defaults),
        fixtures=(),
    )


def abnormality_variant_report(max_atoms: int = DEFAULT_CAPS.model_atoms) -> dict[str, dict[int, bool]]:
    """For each cancellation variant: which built-in cases it reproduces,
    judged by projection equivalence on the original vocabulary."""
    report: dict[str, dict[int, bool]] = {}
    for variant in AB_VARIANTS:
        per_case = {}
        for case, c in INHERITANCE_CASES.items():
            original = inheritance_theory(case)
            encoded = encode_abnormality(
                inheritance_rules(case),
                original.priority,
                variant=variant,
                base=original.base,
                universe=original.universe,
            )
            per_case[case] = circ_equivalent(original, encoded, project=c.universe, max_atoms=max_atoms)
        report[variant] = per_case
    return report


def transformed_then_pruned(t: Theory, k: int = 2, max_atoms: int = DEFAULT_CAPS.model_atoms) -> PruneReport:
    """Convenience pipeline used by the CLI: eliminate priorities, then prune."""
    out = transform_canonical(t.defaults, t.priority)
    return prune_redundant(out, t.base, t.universe, k=k, max_atoms=max_atoms)
