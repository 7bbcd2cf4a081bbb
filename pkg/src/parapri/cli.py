"""Command-line interface.

Exit codes: 0 success, 1 semantic failure (assertion or non-equivalence),
2 usage or input error, 3 cap exceeded or internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from .circumscription import (
    circ_equivalent,
    format_model,
    preferred_models,
    preorder_equivalent,
    skeptical_entails,
)
from .config import Caps, caps_from_env
from .errors import (
    CapExceededError,
    InternalError,
    ParapriError,
    ParseError,
    UniverseError,
    ValidationError,
)
from .formula import Implies, Not, atoms as formula_atoms, parse_formula, to_text
from .lp import encode_stratified, parse_program
from .preorder import PreorderSpec
from .specificity import GuardedRule, encode_abnormality, transformed_then_pruned
from .theory import SchemaTheory, Theory, classify_order, ground, parse_theory, print_theory
from .transform import (
    TransformOutput,
    output_size,
    parallel_theory,
    transform_all,
    transform_canonical,
)


def _load_theory(path: str) -> Theory:
    with open(path, encoding="utf-8") as fh:
        t = parse_theory(fh.read())
    if isinstance(t, SchemaTheory):
        t = ground(t)
    return t


def _members(t: Theory, n: int | None, caps: Caps) -> list[TransformOutput]:
    if n is None:
        return [transform_canonical(t.defaults, t.priority, caps.transform_formulas)]
    return transform_all(t.defaults, t.priority, limit=n, max_formulas=caps.transform_formulas)


def _corrupt(out: TransformOutput) -> TransformOutput:
    # Negative-control self test: negating every output formula flips the
    # maximization direction, which no correct transform would survive.
    from .theory import LabeledFormula

    return TransformOutput(
        tuple(LabeledFormula(l, Not(f)) for l, f in out.defaults),
        out.provenance,
    )


def cmd_transform(args, caps: Caps) -> int:
    t = _load_theory(args.file)
    if args.size_only:
        print(output_size(t.priority).total)
        return 0
    members = _members(t, args.all, caps)
    if args.format == "json":
        doc = {
            "universe": list(t.universe),
            "base": [to_text(f) for f in t.base],
            "fixtures": [{"label": l, "formula": to_text(f)} for l, f in t.fixtures],
            "members": [
                {
                    "defaults": [
                        {
                            "label": l,
                            "formula": to_text(f),
                            "source": p.source,
                            "sigma": list(p.sigma),
                            "bits": p.bits,
                        }
                        for (l, f), p in zip(m.defaults, m.provenance)
                    ]
                }
                for m in members
            ],
        }
        print(json.dumps(doc, indent=2))
        return 0
    chunks = []
    for k, m in enumerate(members, start=1):
        text = print_theory(parallel_theory(t, m))
        chunks.append(f"# member {k}\n{text}" if len(members) > 1 else text)
    print("\n".join(chunks), end="")
    return 0


def cmd_query(args, caps: Caps) -> int:
    t = _load_theory(args.file)
    q = parse_formula(args.query)
    for a in formula_atoms(q):
        if a not in t.universe:
            raise UniverseError(f"query atom {a!r} not in the theory's universe")
    direct = skeptical_entails(t, q, caps.model_atoms)
    out = transform_canonical(t.defaults, t.priority, caps.transform_formulas)
    via_parallel = skeptical_entails(parallel_theory(t, out), q, caps.model_atoms)
    if direct != via_parallel:
        raise InternalError(
            f"direct answer {direct} disagrees with the transform route {via_parallel}"
        )
    answer = "yes" if direct else "no"
    print(answer)
    if args.assert_ is not None:
        return 0 if answer == args.assert_ else 1
    return 0


def cmd_models(args, caps: Caps) -> int:
    t = _load_theory(args.file)
    pm = preferred_models(t, caps.model_atoms)
    if args.format == "json":
        doc = {"universe": list(pm.universe), "models": [list(m.values) for m in pm.models]}
        print(json.dumps(doc, indent=2))
        return 0
    for m in pm.models:
        print(format_model(m))
    return 0


def cmd_check_equiv(args, caps: Caps) -> int:
    t = _load_theory(args.file)
    members = _members(t, args.all, caps)
    if args.self_test_corrupt:
        members = [_corrupt(m) for m in members]
    project = args.project.split(",") if args.project else None
    ok = True
    for m in members:
        if args.preorder:
            ok = preorder_equivalent(
                PreorderSpec.of(t),
                PreorderSpec.parallel(m.defaults),
                t.universe,
                caps.pairwise_atoms,
            )
        else:
            ok = circ_equivalent(t, parallel_theory(t, m), project, caps.model_atoms)
        if not ok:
            break
    print("equivalent" if ok else "not-equivalent")
    return 0 if ok else 1


def cmd_stats(args, caps: Caps) -> int:
    t = _load_theory(args.file)
    report = output_size(t.priority)
    print(f"defaults: {len(t.defaults)}")
    for label, m in report.m:
        print(f"m[{label}]: {m}")
    print(f"max_m: {report.max_m}")
    print(f"size: {report.total}")
    print(f"top_heavy: {'yes' if report.top_heavy else 'no'}")
    print(f"classification: {classify_order(t.priority)}")
    return 0


def cmd_prune(args, caps: Caps) -> int:
    t = _load_theory(args.file)
    report = transformed_then_pruned(t, k=args.k, max_atoms=caps.model_atoms)
    for l, f in report.kept:
        print(f"kept {l}: {to_text(f)}")
    for d in report.dropped:
        print(f"dropped {d.label}: {d.describe()}")
    print(f"kept {len(report.kept)} of {len(report.kept) + len(report.dropped)}")
    return 0


def cmd_encode_ab(args, caps: Caps) -> int:
    t = _load_theory(args.file)
    rules = []
    for label, f in t.defaults:
        if not isinstance(f, Implies):
            raise ValidationError(f"default {label!r} is not an implication rule")
        rules.append(GuardedRule(label, f.left, f.right))
    encoded = encode_abnormality(rules, t.priority, variant=args.variant, base=t.base, universe=t.universe)
    print(print_theory(encoded), end="")
    return 0


def cmd_encode_lp(args, caps: Caps) -> int:
    with open(args.file, encoding="utf-8") as fh:
        p = parse_program(fh.read())
    print(print_theory(encode_stratified(p)), end="")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="parapri",
        description="Prioritized propositional defaults: transform to parallel, query, verify.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", help="eliminate priorities from a theory file")
    p.add_argument("file")
    p.add_argument("--all", type=int, default=None, metavar="N", help="emit the first N members")
    p.add_argument("--size-only", action="store_true", help="print the output size, emit nothing")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=cmd_transform)

    p = sub.add_parser("query", help="skeptical yes/no query, cross-checked through the transform")
    p.add_argument("file")
    p.add_argument("query")
    p.add_argument("--assert", dest="assert_", choices=("yes", "no"), default=None)
    p.set_defaults(handler=cmd_query)

    p = sub.add_parser("models", help="print the preferred models")
    p.add_argument("file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=cmd_models)

    p = sub.add_parser("check-equiv", help="compare a theory against its own transform")
    p.add_argument("file")
    p.add_argument("--preorder", action="store_true", help="compare pre-orders instead of model sets")
    p.add_argument("--all", type=int, default=None, metavar="N", help="check the first N members")
    p.add_argument("--project", default=None, metavar="a,b,c")
    p.add_argument("--self-test-corrupt", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(handler=cmd_check_equiv)

    p = sub.add_parser("stats", help="size and shape of the priority order")
    p.add_argument("file")
    p.set_defaults(handler=cmd_stats)

    p = sub.add_parser("prune", help="transform, then drop redundant output defaults")
    p.add_argument("file")
    p.add_argument("--k", type=int, default=2, help="combination subset bound")
    p.set_defaults(handler=cmd_prune)

    p = sub.add_parser("encode-ab", help="guarded-rule parallel encoding of an implication-rule theory")
    p.add_argument("file")
    p.add_argument("--variant", choices=("violation", "class", "class-positive"), default="violation")
    p.set_defaults(handler=cmd_encode_ab)

    p = sub.add_parser("encode-lp", help="encode a stratified logic program as a default theory")
    p.add_argument("file")
    p.set_defaults(handler=cmd_encode_lp)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        caps = caps_from_env()
        return args.handler(args, caps)
    except (ParseError, ValidationError, UniverseError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (CapExceededError, InternalError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ParapriError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
