"""Command-line front end.

Exit status: 0 accepted/true, 1 rejected/false, 2 unknown, 64 usage error,
65 unreadable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence

from . import formats
from .core import Rpda, classify, replay
from .formats import ParseError
from .harness import enumerate_accepting_runs, witness_search
from .membership import Accepted, Rejected, SearchBudget, decide
from .reduction import ReductionError, cnf_to_rpda, de_epsilonize, tm_to_rpda

EXIT_ACCEPTED = 0
EXIT_REJECTED = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 64
EXIT_DATAERR = 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2
        raise UsageError(message)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_rpda(path: str) -> Rpda:
    return formats.parse_rpda(_read(path))


def _trace_json(a: Rpda, w, run) -> list:
    configs = replay(a, w, run)
    return [
        {
            "rule": formats.format_rule(r),
            "value": str(d),
            "state": c.state,
            "registers": [str(v) for v in c.regs],
            "stack": [str(v) for v in c.stack],
        }
        for (r, d), c in zip(run, configs[1:])
    ]


def _trace_text(run) -> List[str]:
    return [f"  {n:3d}. {formats.format_rule(r)}   [value {d}]" for n, (r, d) in enumerate(run, 1)]


def _emit(args, payload: dict, lines: Sequence[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for line in lines:
            print(line)


def cmd_classify(args) -> int:
    a = _load_rpda(args.file)
    label = classify(a).value
    _emit(args, {"verdict": label, "trace": [], "diagnostics": []}, [label])
    return EXIT_ACCEPTED


def cmd_member(args) -> int:
    a = _load_rpda(args.file)
    w = formats.parse_word(args.word)
    budget = None
    if any(x is not None for x in (args.max_height, args.max_eps, args.max_steps)):
        budget = SearchBudget(args.max_height, args.max_eps, args.max_steps)
    verdict = decide(a, w, budget)
    if isinstance(verdict, Accepted):
        name, code = "accepted", EXIT_ACCEPTED
    elif isinstance(verdict, Rejected):
        name, code = "rejected", EXIT_REJECTED
    else:
        name, code = "unknown", EXIT_UNKNOWN
    payload = {"verdict": name, "subclass": classify(a).value, "trace": [], "diagnostics": []}
    lines = [name]
    if isinstance(verdict, Accepted):
        payload["trace"] = _trace_json(a, w, verdict.run)
        if args.trace:
            lines += _trace_text(verdict.run)
    elif not isinstance(verdict, Rejected):
        payload["diagnostics"].append(verdict.reason)
        lines.append(f"  ({verdict.reason})")
    _emit(args, payload, lines)
    return code


def cmd_witness(args) -> int:
    a = _load_rpda(args.file)
    w = witness_search(a, args.max_len)
    if w is None:
        _emit(args, {"verdict": "none", "word": None, "trace": [], "diagnostics": [
            f"no accepted word of length <= {args.max_len} found"]}, ["none"])
        return EXIT_REJECTED
    text = formats.format_word(w)
    _emit(args, {"verdict": "found", "word": text, "trace": [], "diagnostics": []}, [text or "(empty word)"])
    return EXIT_ACCEPTED


def cmd_runs(args) -> int:
    a = _load_rpda(args.file)
    w = formats.parse_word(args.word)
    runs = enumerate_accepting_runs(a, w, args.max_len, args.max_height)
    lines = [f"{len(runs)} accepting run(s)"]
    for n, t in enumerate(runs, 1):
        lines.append(f"run {n} (length {len(t)}):")
        lines += _trace_text(t.run)
    payload = {
        "verdict": "found" if runs else "none",
        "runs": [_trace_json(a, w, t.run) for t in runs],
        "trace": _trace_json(a, w, runs[0].run) if runs else [],
        "diagnostics": [],
    }
    _emit(args, payload, lines)
    return EXIT_ACCEPTED if runs else EXIT_REJECTED


def _emit_report(args, report) -> int:
    target = formats.format_word(report.target_word)
    text = formats.format_rpda(report.generated, comments=[f"target-word: {target}"])
    if args.json:
        print(json.dumps({
            "verdict": classify(report.generated).value,
            "rpda": text,
            "target_word": target,
            "trace": [],
            "diagnostics": [],
        }, indent=2))
    else:
        sys.stdout.write(text)
    return EXIT_ACCEPTED


def _parse_symbols(text: str) -> List[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"--input expects tape symbols (integers), got {text!r}") from None


def cmd_reduce_tm(args) -> int:
    m = formats.parse_tm(_read(args.file))
    return _emit_report(args, tm_to_rpda(m, _parse_symbols(args.input), args.space))


def cmd_reduce_cnf(args) -> int:
    phi = formats.parse_cnf(_read(args.file))
    return _emit_report(args, cnf_to_rpda(phi))


def cmd_de_eps(args) -> int:
    a = _load_rpda(args.file)
    out = de_epsilonize(a, args.label)
    if args.json:
        print(json.dumps({"verdict": classify(out).value, "rpda": formats.format_rpda(out),
                          "trace": [], "diagnostics": []}, indent=2))
    else:
        sys.stdout.write(formats.format_rpda(out))
    return EXIT_ACCEPTED


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rpda", description="Register pushdown automata workbench.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("classify", help="print the tightest subclass of an automaton")
    s.add_argument("file")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("member", help="decide membership of a data word")
    s.add_argument("file")
    s.add_argument("--word", required=True, help='e.g. "a:d0 b:d1"; "_" is bottom')
    s.add_argument("--trace", action="store_true", help="print the accepting run")
    s.add_argument("--max-height", type=int, help="budget for general automata")
    s.add_argument("--max-eps", type=int, help="budget for general automata")
    s.add_argument("--max-steps", type=int, help="budget for general automata")
    s.set_defaults(func=cmd_member)

    s = sub.add_parser("witness", help="search for an accepted word")
    s.add_argument("file")
    s.add_argument("--max-len", type=int, required=True)
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("runs", help="enumerate accepting runs within bounds")
    s.add_argument("file")
    s.add_argument("--word", required=True)
    s.add_argument("--max-len", type=int, required=True)
    s.add_argument("--max-height", type=int, required=True)
    s.set_defaults(func=cmd_runs)

    s = sub.add_parser("reduce-tm", help="TM membership to a non-decreasing RPDA")
    s.add_argument("file")
    s.add_argument("--input", required=True, help='tape symbols, e.g. "2 3 2"; "" for the empty input')
    s.add_argument("--space", type=int, required=True, help="space bound p(|u|)")
    s.set_defaults(func=cmd_reduce_tm)

    s = sub.add_parser("reduce-cnf", help="3-CNF satisfiability to an epsilon-free RPDA")
    s.add_argument("file")
    s.set_defaults(func=cmd_reduce_cnf)

    s = sub.add_parser("de-eps", help="relabel epsilon rules")
    s.add_argument("file")
    s.add_argument("--label", default="a")
    s.set_defaults(func=cmd_de_eps)
    for s in sub.choices.values():
        s.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"rpda: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, ReductionError) as exc:
        print(f"rpda: {exc}", file=sys.stderr)
        return EXIT_DATAERR


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
