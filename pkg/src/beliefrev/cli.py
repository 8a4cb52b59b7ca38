"""Command-line front end.

Exit codes: 0 when the command succeeded and found nothing adverse, 1 when a
counterexample, claim violation or golden-trace mismatch was found (the
report is still well formed), 2 on usage or input errors.  Reports go to
standard output; diagnostics go to standard error.  Output is deterministic
given the argument vector, regardless of --jobs.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from .logic import Signature, WorldSet, models, parse_formula
from .operators import (
    ABSURD,
    CONTRACTION_OPERATORS,
    REVISION_OPERATORS,
    apply_sequence,
    get_contraction,
    get_revision,
    make_pair,
)
from .postulates import ALL_POSTULATE_IDS, run_suite
from .reporting import (
    george_json,
    george_text,
    outcome_entry,
    suite_report_json,
    suite_report_text,
    theorem_report_json,
    theorem_report_text,
)
from .states import (
    RankedState,
    enumerate_states,
    load_state_file,
    sample_states,
    state_to_text,
)
from .theorems import (
    run_george,
    verify_corollary1,
    verify_hansson,
    verify_observation1,
    verify_theorem1,
)


def _parse_atoms(text: str) -> Signature:
    return Signature(tuple(name.strip() for name in text.split(",") if name.strip()))


def _add_format(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("text", "json"), default="text")


def _add_search_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--mode", choices=("exhaustive", "sample"), default="exhaustive")
    parser.add_argument("--samples", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument(
        "--allow-n3", action="store_true",
        help="allow exhaustive search over three atoms (545835 states)",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="beliefrev",
        description="Iterated belief revision and contraction on ranked epistemic states",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("models", help="model set of a formula")
    p.add_argument("--atoms", required=True)
    p.add_argument("formula")
    _add_format(p)

    p = sub.add_parser("revise", help="revise a state file by a formula")
    p.add_argument("--state", required=True)
    p.add_argument("--op", default="natural", choices=sorted(REVISION_OPERATORS))
    p.add_argument("formula")
    _add_format(p)

    p = sub.add_parser("contract", help="contract a state file by a formula")
    p.add_argument("--state", required=True)
    p.add_argument("--cop", default="natural-con", choices=sorted(CONTRACTION_OPERATORS))
    p.add_argument("formula")
    _add_format(p)

    p = sub.add_parser("seq", help="apply a revise/contract sequence to a state file")
    p.add_argument("--state", required=True)
    p.add_argument("--op", default="natural", choices=sorted(REVISION_OPERATORS))
    p.add_argument("--cop", default="natural-con", choices=sorted(CONTRACTION_OPERATORS))
    p.add_argument("--steps", required=True,
                   help="semicolon-separated items 'revise:FORMULA' / 'contract:FORMULA'")
    _add_format(p)

    p = sub.add_parser("check", help="check postulates by counterexample search")
    p.add_argument("--atoms", required=True)
    p.add_argument("--op", default="natural", choices=sorted(REVISION_OPERATORS))
    p.add_argument("--cop", default="natural-con", choices=sorted(CONTRACTION_OPERATORS))
    p.add_argument("--postulate", required=True,
                   help="a postulate id or 'all'")
    _add_search_options(p)
    _add_format(p)

    for name, help_text in (
        ("theorem1", "check the semantic/syntactic equivalences for one operator pair"),
        ("corollary1", "check revise-then-contract equals contraction on applicable instances"),
        ("observation1", "check the seven-item recovery-postulate profile"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--atoms", required=True)
        p.add_argument("--op", default="natural", choices=sorted(REVISION_OPERATORS))
        p.add_argument("--cop", default="natural-con", choices=sorted(CONTRACTION_OPERATORS))
        p.add_argument("--jobs", type=int, default=1)
        _add_format(p)

    p = sub.add_parser("hansson", help="check that the plausible postulates enforce recovery")
    p.add_argument("--atoms", required=True)
    p.add_argument("--cop", default="natural-con", choices=sorted(CONTRACTION_OPERATORS))
    p.add_argument("--jobs", type=int, default=1)
    _add_format(p)

    p = sub.add_parser("george", help="replay the two-revision golden trace")
    p.add_argument("--op", required=True, choices=("natural", "flatten"))
    _add_format(p)

    p = sub.add_parser("enumerate", help="count epistemic states over a signature")
    p.add_argument("--atoms", required=True)
    p.add_argument("--mode", choices=("exhaustive", "sample"), default="exhaustive")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    _add_format(p)

    return parser


def _emit(args, json_payload: dict[str, Any], text: str) -> None:
    if args.format == "json":
        print(json.dumps(json_payload, indent=2))
    else:
        print(text)


def _state_lines(state: RankedState) -> str:
    return state_to_text(state).rstrip("\n")


def _cmd_models(args) -> int:
    sig = _parse_atoms(args.atoms)
    w = models(parse_formula(args.formula, sig), sig)
    payload = {
        "formula": args.formula,
        "signature": {"atoms": list(sig.atoms)},
        "models": w.bitstrings(),
    }
    _emit(args, payload, f"models: {' '.join(w.bitstrings()) or '(none)'}")
    return 0


def _change_payload(kind: str, name: str, formula: str, outcome, sig) -> tuple[dict, str]:
    entry = outcome_entry(f"{kind} by {formula}", outcome, sig)
    payload = {"operator": name, "formula": formula, "result": entry}
    if outcome is ABSURD:
        text = f"{kind} by {formula} [{name}]: absurd (no ranked state; belief set inconsistent)"
    else:
        text = (
            f"{kind} by {formula} [{name}]:\n{_state_lines(outcome)}\n"
            f"belief set: {' '.join(entry['belief'])}"
        )
    return payload, text


def _cmd_revise(args) -> int:
    state = load_state_file(args.state)
    a = models(parse_formula(args.formula, state.sig), state.sig)
    outcome = get_revision(args.op)(state, a)
    payload, text = _change_payload("revise", args.op, args.formula, outcome, state.sig)
    _emit(args, payload, text)
    return 0


def _cmd_contract(args) -> int:
    state = load_state_file(args.state)
    a = models(parse_formula(args.formula, state.sig), state.sig)
    outcome = get_contraction(args.cop)(state, a)
    payload, text = _change_payload("contract", args.cop, args.formula, outcome, state.sig)
    _emit(args, payload, text)
    return 0


def _parse_steps(text: str, sig: Signature) -> list[tuple[str, str, WorldSet]]:
    steps = []
    for item in text.split(";"):
        item = item.strip()
        if not item:
            continue
        if ":" not in item:
            raise ValueError(f"bad step {item!r}: expected 'revise:FORMULA' or 'contract:FORMULA'")
        kind, formula = (part.strip() for part in item.split(":", 1))
        if kind not in ("revise", "contract"):
            raise ValueError(f"bad step kind {kind!r}: expected 'revise' or 'contract'")
        steps.append((kind, formula, models(parse_formula(formula, sig), sig)))
    return steps


def _cmd_seq(args) -> int:
    state = load_state_file(args.state)
    parsed = _parse_steps(args.steps, state.sig)
    pair = make_pair(args.op, args.cop)
    trace = apply_sequence(pair, state, [(kind, w) for kind, _, w in parsed])
    labels = ["initial"] + [f"{kind} by {formula}" for kind, formula, _ in parsed]
    entries = [outcome_entry(label, out, state.sig) for label, out in zip(labels, trace)]
    payload = {
        "operator_pair": {"revision": args.op, "contraction": args.cop},
        "signature": {"atoms": list(state.sig.atoms)},
        "trace": entries,
        "final_belief": entries[-1]["belief"],
    }
    lines = [f"sequence [{args.op}+{args.cop}]:"]
    for entry in entries:
        if entry["absurd"]:
            lines.append(f"  {entry['label']}: absurd")
        else:
            lines.append(f"  {entry['label']}: belief set {' '.join(entry['belief'])}")
    final = trace[-1]
    if final is not ABSURD:
        lines.append("final state:")
        lines.append(_state_lines(final))
    _emit(args, payload, "\n".join(lines))
    return 0


def _cmd_check(args) -> int:
    sig = _parse_atoms(args.atoms)
    pair = make_pair(args.op, args.cop)
    if args.postulate == "all":
        pids = list(ALL_POSTULATE_IDS)
    else:
        pids = [args.postulate]
    report = run_suite(
        pair, sig, pids,
        mode=args.mode, samples=args.samples, seed=args.seed,
        allow_large=args.allow_n3, jobs=args.jobs,
    )
    _emit(args, suite_report_json(report), suite_report_text(report))
    return 1 if report.total_fails else 0


def _theorem_command(args, verify) -> int:
    sig = _parse_atoms(args.atoms)
    pair = make_pair(args.op, args.cop)
    report = verify(pair, sig, jobs=args.jobs)
    _emit(args, theorem_report_json(report), theorem_report_text(report))
    return 0 if report.ok else 1


def _cmd_hansson(args) -> int:
    sig = _parse_atoms(args.atoms)
    report = verify_hansson(args.cop, sig, jobs=args.jobs)
    _emit(args, theorem_report_json(report), theorem_report_text(report))
    return 0 if report.ok else 1


def _cmd_george(args) -> int:
    result = run_george(args.op)
    _emit(args, george_json(result), george_text(result))
    return 0 if result.ok else 1


def _cmd_enumerate(args) -> int:
    sig = _parse_atoms(args.atoms)
    if args.mode == "exhaustive":
        stream = enumerate_states(sig)
        generated = sum(1 for _ in stream)
        payload = {
            "signature": {"atoms": list(sig.atoms)},
            "mode": stream.mode,
            "expected": stream.count,
            "generated": generated,
        }
        text = (
            f"states over atoms {','.join(sig.atoms)}: {generated} "
            f"(weak-order count {stream.count})"
        )
    else:
        stream = sample_states(sig, args.samples, args.seed)
        distinct = len({s.ranks for s in stream})
        payload = {
            "signature": {"atoms": list(sig.atoms)},
            "mode": stream.mode,
            "seed": stream.seed,
            "samples": stream.count,
            "distinct": distinct,
        }
        text = (
            f"sampled {stream.count} states over atoms {','.join(sig.atoms)} "
            f"(seed {stream.seed}): {distinct} distinct"
        )
    _emit(args, payload, text)
    return 0


def run(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help
        return int(exc.code or 0)
    handlers = {
        "models": _cmd_models,
        "revise": _cmd_revise,
        "contract": _cmd_contract,
        "seq": _cmd_seq,
        "check": _cmd_check,
        "theorem1": lambda a: _theorem_command(a, verify_theorem1),
        "corollary1": lambda a: _theorem_command(a, verify_corollary1),
        "observation1": lambda a: _theorem_command(a, verify_observation1),
        "hansson": _cmd_hansson,
        "george": _cmd_george,
        "enumerate": _cmd_enumerate,
    }
    try:
        return handlers[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main(argv: list[str] | None = None) -> int:
    code = run(sys.argv[1:] if argv is None else argv)
    if argv is None:
        sys.exit(code)
    return code


if __name__ == "__main__":
    main()
