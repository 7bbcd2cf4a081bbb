"""Elimination of priorities: rewrite prioritized defaults into parallel ones.

For each default i with dominators sigma_1 .. sigma_m (a descending
topological ordering of the strictly higher-priority defaults) and each bit
string l of length m, emit the right-nested formula

    E_sigma_1  g1  (E_sigma_2  g2  ( ... (E_sigma_m  gm  E_i) ... ))

where bit k of l selects gk: 1 means conjunction, 0 means disjunction.
The 2^m formulas of one source default form a block; blocks are emitted in
declaration order, bit strings from all-ones down to all-zeros.

The construction never inspects the default formulas themselves, only the
priority order, so its output size depends solely on the order's shape.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .config import DEFAULT_CAPS
from .errors import CapExceededError, ValidationError
from .formula import And, Formula, Or
from .theory import LabeledFormula, PriorityOrder, Theory, parallel_order

DEFAULT_TOP_HEAVY_THRESHOLD = 10


@dataclass(frozen=True)
class Provenance:
    source: str
    sigma: tuple[str, ...]
    bits: str


@dataclass(frozen=True)
class TransformOutput:
    defaults: tuple[LabeledFormula, ...]
    provenance: tuple[Provenance, ...]

    @property
    def formulas(self) -> tuple[Formula, ...]:
        return tuple(f for _, f in self.defaults)


@dataclass(frozen=True)
class SizeReport:
    total: int
    m: tuple[tuple[str, int], ...]
    top_heavy: bool

    @property
    def max_m(self) -> int:
        return max((v for _, v in self.m), default=0)


def dominators(order: PriorityOrder, index: str) -> frozenset[str]:
    """Labels strictly higher in priority than ``index``."""
    try:
        return order.dominators_map[index]
    except KeyError:
        raise ValidationError(f"unknown index {index!r}") from None


def _iter_descending(order: PriorityOrder, remaining: tuple[str, ...]) -> Iterator[tuple[str, ...]]:
    # Emit maximal elements first; candidate choice follows declaration order,
    # so the first sequence generated is the canonical one.
    if not remaining:
        yield ()
        return
    for k, x in enumerate(remaining):
        if any(order.higher(y, x) for y in remaining if y != x):
            continue
        rest = remaining[:k] + remaining[k + 1:]
        for tail in _iter_descending(order, rest):
            yield (x,) + tail


def descending_sequences(order: PriorityOrder, index: str) -> list[tuple[str, ...]]:
    """All descending topological orderings of ``index``'s dominators."""
    doms = dominators(order, index)
    remaining = tuple(l for l in order.indices if l in doms)
    return list(_iter_descending(order, remaining))


def build_wil(formulas: Mapping[str, Formula], index: str, sigma: Sequence[str], bits: str) -> Formula:
    """One output formula: dominators outermost, source default innermost."""
    if len(sigma) != len(bits):
        raise ValidationError(f"bit string {bits!r} does not match sequence length {len(sigma)}")
    acc = formulas[index]
    for k in range(len(sigma) - 1, -1, -1):
        conn = And if bits[k] == "1" else Or
        acc = conn(formulas[sigma[k]], acc)
    return acc


def output_size(order: PriorityOrder, top_heavy_threshold: int = DEFAULT_TOP_HEAVY_THRESHOLD) -> SizeReport:
    """Output size sum(2^m_i) without materializing anything."""
    m = tuple((i, len(order.dominators_map[i])) for i in order.indices)
    total = sum(1 << v for _, v in m)
    return SizeReport(total=total, m=m, top_heavy=any(v > top_heavy_threshold for _, v in m))


def _label_for(source: str, bits: str) -> str:
    return f"w_{source}_{bits}" if bits else f"w_{source}"


def _assemble(
    defaults: Sequence[LabeledFormula],
    sigmas: Mapping[str, tuple[str, ...]],
) -> TransformOutput:
    formulas = dict(defaults)
    out: list[LabeledFormula] = []
    prov: list[Provenance] = []
    seen: set[str] = set()
    for label, _ in defaults:
        sigma = sigmas[label]
        m = len(sigma)
        for v in range((1 << m) - 1, -1, -1):
            bits = format(v, f"0{m}b") if m else ""
            w_label = _label_for(label, bits)
            if w_label in seen:
                raise ValidationError(f"generated label {w_label!r} is not unique")
            seen.add(w_label)
            out.append(LabeledFormula(w_label, build_wil(formulas, label, sigma, bits)))
            prov.append(Provenance(label, sigma, bits))
    return TransformOutput(tuple(out), tuple(prov))


def _guard_size(order: PriorityOrder, max_formulas: int) -> None:
    total = output_size(order).total
    if total > max_formulas:
        raise CapExceededError(f"transform would emit {total} formulas, above the cap of {max_formulas}")


def transform_canonical(
    defaults: Sequence[LabeledFormula],
    order: PriorityOrder,
    max_formulas: int = DEFAULT_CAPS.transform_formulas,
) -> TransformOutput:
    """The deterministic member: canonical topological ordering per default."""
    _check_alignment(defaults, order)
    _guard_size(order, max_formulas)
    sigmas = {label: next(_iter_descending(order, _ordered_dominators(order, label))) for label, _ in defaults}
    return _assemble(defaults, sigmas)


def transform_all(
    defaults: Sequence[LabeledFormula],
    order: PriorityOrder,
    limit: int = DEFAULT_CAPS.members,
    max_formulas: int = DEFAULT_CAPS.transform_formulas,
) -> list[TransformOutput]:
    """Members generated by all combinations of descending orderings, up to ``limit``.

    The first member equals the canonical output.
    """
    if limit <= 0:
        raise ValidationError("limit must be positive")
    _check_alignment(defaults, order)
    _guard_size(order, max_formulas)
    labels = [label for label, _ in defaults]

    def members(k: int) -> Iterator[dict[str, tuple[str, ...]]]:
        if k == len(labels):
            yield {}
            return
        label = labels[k]
        for sigma in _iter_descending(order, _ordered_dominators(order, label)):
            for rest in members(k + 1):
                yield {label: sigma, **rest}

    return [_assemble(defaults, sigmas) for sigmas in itertools.islice(members(0), limit)]


def _ordered_dominators(order: PriorityOrder, label: str) -> tuple[str, ...]:
    doms = dominators(order, label)
    return tuple(l for l in order.indices if l in doms)


def _check_alignment(defaults: Sequence[LabeledFormula], order: PriorityOrder) -> None:
    if tuple(l for l, _ in defaults) != order.indices:
        raise ValidationError("defaults and priority order disagree on labels")


def parallel_theory(t: Theory, out: TransformOutput) -> Theory:
    """The input theory with its defaults replaced by the parallel output."""
    return Theory(
        universe=t.universe,
        base=t.base,
        defaults=out.defaults,
        priority=parallel_order(l for l, _ in out.defaults),
        fixtures=t.fixtures,
    )


def transform_theory(t: Theory, max_formulas: int = DEFAULT_CAPS.transform_formulas) -> Theory:
    return parallel_theory(t, transform_canonical(t.defaults, t.priority, max_formulas))
