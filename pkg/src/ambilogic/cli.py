"""Command-line front end.

Subcommands: validate, eval, transform, translate, check.  Exit codes:
0 success, 1 check or validation failure (including transform
preconditions), 2 usage, parse or input errors, 3 internal errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import formula as fm
from .campaign import CHECK_NAMES, Campaign, run_campaign
from .errors import (
    AlreadyIndexed,
    AmbilogicError,
    CoreInvalid,
    FormulaSyntaxError,
    ModelFormatError,
    ModePrereqMissing,
    MissingSignals,
    NotCommonInterpretation,
    UndefinedConditional,
    UnknownAgent,
    UnknownProp,
    UnknownState,
)
from .generators import GenBounds
from .modes import EvalMode
from .semantics import Evaluator
from .structure import (
    dump_structure,
    dumps_structure,
    generate_priors,
    load_structure,
    validate_core,
    validate_signals,
)
from .transforms import disjoint_copies, fix_interpretation, label_partitions
from .translation import translate_in, translate_ou

_USAGE_ERRORS = (ModelFormatError, FormulaSyntaxError, OSError,
                 UnknownAgent, UnknownProp, UnknownState, ValueError)
_FAILURE_ERRORS = (NotCommonInterpretation, CoreInvalid, AlreadyIndexed,
                   ModePrereqMissing, MissingSignals)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ambilogic",
        description="Model checker for multi-agent epistemic probability "
                    "logic with ambiguous interpretations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a structure file")
    p.add_argument("--model", required=True, help="structure file (JSON)")

    p = sub.add_parser("eval", help="evaluate a formula at a state")
    p.add_argument("--model", required=True)
    p.add_argument("--formula", required=True)
    p.add_argument("--state", required=True)
    p.add_argument("--agent", required=True, type=int)
    p.add_argument("--mode", required=True,
                   choices=[m.value for m in EvalMode])
    p.add_argument("--show-value", action="store_true",
                   help="also print the exact left-hand side of the "
                        "formula's leading probability comparison")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("transform", help="apply a model transformation")
    p.add_argument("kind", choices=["fix-interpretation", "disjoint-copies",
                                    "label-partitions", "generate-priors"])
    p.add_argument("--model", required=True)
    p.add_argument("--agent", type=int)
    p.add_argument("--state")
    p.add_argument("--out", help="write the result here instead of stdout; "
                                 "sidecar data goes to <out>.sidecar.json")

    p = sub.add_parser("translate",
                       help="compile a formula into the indexed language")
    p.add_argument("--formula", required=True)
    p.add_argument("--agent", required=True, type=int)
    p.add_argument("--mode", required=True, choices=["in", "ou"])

    p = sub.add_parser("check", help="run randomized verification campaigns")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-states", type=int, default=5)
    p.add_argument("--max-agents", type=int, default=3)
    p.add_argument("--max-props", type=int, default=3)
    p.add_argument("--max-depth", type=int, default=4)
    p.add_argument("--checks", default=",".join(CHECK_NAMES),
                   help="comma-separated subset of: %s" % ", ".join(CHECK_NAMES))
    p.add_argument("--naive-cb", action="store_true",
                   help="testing hook: corrupt the innermost translation's "
                        "common-belief clause (thm2-in should then fail)")
    return parser


def _leading_prob_terms(f):
    """The linear form of the formula's leading probability comparison.

    Comparisons other than >= desugar at parse time; peel the desugaring to
    recover a determinate linear form (left conjunct for =, inner
    comparison for < and >, possibly sign-flipped for <=/>).
    """
    if isinstance(f, fm.ProbGe):
        return f.terms
    if isinstance(f, fm.Not) and isinstance(f.arg, fm.ProbGe):
        return f.arg.terms
    if isinstance(f, fm.And) and isinstance(f.left, fm.ProbGe):
        return f.left.terms
    return None


def _cmd_validate(args) -> int:
    m = load_structure(args.model)
    report = validate_core(m)
    if m.signals is not None:
        report.extend(validate_signals(m))
    print(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    return 0 if report.ok else 1


def _cmd_eval(args) -> int:
    m = load_structure(args.model)
    f = fm.parse(args.formula)
    mode = EvalMode.parse(args.mode)
    ev = Evaluator(m)
    result = ev.evaluate(args.state, args.agent, f, mode)
    value = None
    if args.show_value:
        terms = _leading_prob_terms(f)
        if terms is not None:
            j = terms[0].agent
            reader = j if mode.innermost_scope else args.agent
            total = 0
            for t in terms:
                ext = ev.extension(reader, t.arg, mode)
                if mode.is_ai:
                    event = ev._signal_targets(j, args.state, mode, args.agent)
                    total += (t.coeff * m.prior_mass(j, ext & event)
                              / m.prior_mass(j, event))
                else:
                    cell = m.cell_of(j, args.state)
                    cb = m.cell_beliefs(j, args.state)
                    total += t.coeff * cb.measure(ext & cell)
            value = str(total)
    if args.json:
        print(json.dumps({"result": result, "value": value}))
    else:
        print("true" if result else "false")
        if value is not None:
            print("value = %s" % value)
    return 0


def _cmd_transform(args) -> int:
    m = load_structure(args.model)
    sidecar = None
    if args.kind == "fix-interpretation":
        if args.agent is None:
            raise ModelFormatError("fix-interpretation needs --agent")
        out = fix_interpretation(m, args.agent)
    elif args.kind == "disjoint-copies":
        out, state_map = disjoint_copies(m)
        sidecar = {"state_map": state_map.to_dict()}
    elif args.kind == "label-partitions":
        if args.state is None:
            raise ModelFormatError("label-partitions needs --state")
        out, table = label_partitions(m, args.state)
        sidecar = {"fresh_props": {
            name: {"agent": agent, "cell": sorted(cell)}
            for name, (agent, cell) in sorted(table.items())
        }}
    else:  # generate-priors
        out = m.replace(priors=generate_priors(m))
    if args.out:
        dump_structure(out, args.out)
        if sidecar is not None:
            with open(args.out + ".sidecar.json", "w", encoding="utf-8") as fh:
                json.dump(sidecar, fh, indent=2, sort_keys=True)
                fh.write("\n")
    else:
        print(dumps_structure(out))
        if sidecar is not None:
            print(json.dumps(sidecar, indent=2, sort_keys=True),
                  file=sys.stderr)
    return 0


def _cmd_translate(args) -> int:
    f = fm.parse(args.formula)
    translate = translate_in if args.mode == "in" else translate_ou
    out = translate(f, args.agent)
    print(fm.print_formula(out, sugar_beliefs=True))
    return 0


def _cmd_check(args) -> int:
    checks = tuple(name.strip() for name in args.checks.split(",")
                   if name.strip())
    campaign = Campaign(
        seed=args.seed,
        trials=args.trials,
        bounds=GenBounds(max_states=args.max_states,
                         max_agents=args.max_agents,
                         max_props=args.max_props,
                         max_depth=args.max_depth),
        checks=checks,
        naive_cb=args.naive_cb,
    )
    try:
        report = run_campaign(campaign)
    except AmbilogicError as exc:
        print("internal error while checking: %s" % exc, file=sys.stderr)
        return 3
    print(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    for name, result in sorted(report.results.items()):
        print("check %-14s %d trials, %d failures"
              % (name, result.trials, result.failures), file=sys.stderr)
    return 0 if report.ok else 1


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handler = {
        "validate": _cmd_validate,
        "eval": _cmd_eval,
        "transform": _cmd_transform,
        "translate": _cmd_translate,
        "check": _cmd_check,
    }[args.command]
    try:
        return handler(args)
    except UndefinedConditional as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except _USAGE_ERRORS as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except _FAILURE_ERRORS as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except AmbilogicError as exc:
        print("internal error: %s" % exc, file=sys.stderr)
        return 3
    except Exception as exc:  # pragma: no cover - safety net
        print("internal error: %r" % exc, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
