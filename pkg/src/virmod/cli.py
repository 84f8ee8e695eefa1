"""Command line front end: ``python3 -m virmod <command> ...``.

Exit status is 0 when every check passes, 1 when a check or claim fails and
2 for unusable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .exactmath import scalar
from .induced import InducedElement, apply_u, apply_u_to_n, descend, format_induced, ind_act
from .lie import format_element
from .parse import parse
from .quotient import ClaimViolation, NElement, QuotientSpec, act, format_nelement
from .suites import SUITES, SuiteConfig, run_suite


def _load_spec(path: str) -> QuotientSpec:
    return QuotientSpec.from_json(json.loads(Path(path).read_text()))


def _emit(args, text: str, payload: dict):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _cmd_nf(args) -> int:
    e = parse(args.expr)
    _emit(args, format_element(e), e.to_json())
    return 0


def _cmd_act(args) -> int:
    spec = _load_spec(args.spec)
    v = apply_u_to_n(parse(args.expr), NElement.cyclic(spec))
    out = act(spec, args.gen, v)
    _emit(args, format_nelement(out), out.to_json())
    return 0


def _induced_input(args) -> InducedElement:
    spec = _load_spec(args.spec)
    return apply_u(parse(args.expr), InducedElement.cyclic(scalar(args.theta), spec))


def _cmd_ind_act(args) -> int:
    out = ind_act(args.gen, _induced_input(args))
    _emit(args, format_induced(out), out.to_json())
    return 0


def _cmd_descend(args) -> int:
    v = _induced_input(args)
    try:
        res = descend(v)
    except ClaimViolation as exc:
        print(f"claim violated: {exc}", file=sys.stderr)
        return 1
    _emit(args, f"{format_induced(res.bottom)}  ({res.steps} steps)",
          {"bottom": res.bottom.to_json(), "steps": res.steps})
    return 0


def _cmd_verify(args) -> int:
    report = run_suite(args.suite, SuiteConfig(seed=args.seed, max_weight=args.max_weight))
    if args.json:
        print(json.dumps(report.to_json(), sort_keys=True))
    else:
        status = "PASS" if report.passed else "FAIL"
        print(f"{status} {report.suite}: {report.cases} cases, {len(report.failures)} failures, "
              f"seed {report.seed}, {report.wall_time:.2f} s")
        for note in report.notes:
            print(f"  note: {note}")
        for f in report.failures:
            print(f"  {f['case']}: {f['claim']} ({f['detail']})")
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="virmod", description="Exact computations with Virasoro modules.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="print JSON instead of text")

    sp = sub.add_parser("nf", help="normal form of an expression")
    sp.add_argument("expr")
    common(sp)
    sp.set_defaults(func=_cmd_nf)

    sp = sub.add_parser("act", help="act by l_i on expr . 1 in a quotient module")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--gen", type=int, required=True)
    sp.add_argument("expr")
    common(sp)
    sp.set_defaults(func=_cmd_act)

    sp = sub.add_parser("ind-act", help="act by l_i on expr . (1 (x) 1) in an induced module")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--theta", required=True)
    sp.add_argument("--gen", type=int, required=True)
    sp.add_argument("expr")
    common(sp)
    sp.set_defaults(func=_cmd_ind_act)

    sp = sub.add_parser("descend", help="run the leading-term descent on expr . (1 (x) 1)")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--theta", required=True)
    sp.add_argument("expr")
    common(sp)
    sp.set_defaults(func=_cmd_descend)

    sp = sub.add_parser("verify", help="run a named verification suite")
    sp.add_argument("suite", choices=list(SUITES))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-weight", type=int, default=6)
    common(sp)
    sp.set_defaults(func=_cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
