"""Command line front end.

Subcommands::

    check FILE [--mode c|o|acyclic|connectable] [--engine rewrite|oracle|both]
    reduce FILE --system bigstep|contract|wcontract [--trace]
    session FILE --propose FILE [FILE ...]
    gen --seed N [--cells K] [--max-poles P] [--max-concl C]
        [--closure-prob Q] [--transitory]
    dot FILE [-o OUT] [--system none|wcontract|contract]

Exit codes: 0 the checked property holds, 1 it fails, 2 the engines disagree
under ``--engine both``; 64 usage errors, 65 unparsable or ill-formed input,
66 unreadable files.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from . import bigstep, contraction, dsl, switching
from .contraction import C, WC
from .dot import to_dot
from .errors import BipoleError, NotOCorrect, ParseError
from .generate import GenParams, gen_cells
from .model import Ebm, Module, border, is_closed
from .session import ACCEPT, commit, propose, session_new

EX_USAGE = 64
EX_DATAERR = 65
EX_NOINPUT = 66


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(EX_USAGE)


def _build_parser() -> _Parser:
    parser = _Parser(prog="bipole", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    check = sub.add_parser("check", help="decide a correctness property")
    check.add_argument("file")
    check.add_argument("--mode", choices=["c", "o", "acyclic", "connectable"], default="o")
    check.add_argument("--engine", choices=["rewrite", "oracle", "both"], default="rewrite")

    reduce_p = sub.add_parser("reduce", help="print a normal form")
    reduce_p.add_argument("file")
    reduce_p.add_argument("--system", choices=["bigstep", "contract", "wcontract"], required=True)
    reduce_p.add_argument("--trace", action="store_true")

    sess = sub.add_parser("session", help="incrementally test compositions")
    sess.add_argument("file")
    sess.add_argument("--propose", nargs="+", required=True, metavar="FILE")

    gen = sub.add_parser("gen", help="emit a random module in source form")
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--cells", type=int, default=4)
    gen.add_argument("--max-poles", type=int, default=3)
    gen.add_argument("--max-concl", type=int, default=3)
    gen.add_argument("--closure-prob", type=float, default=0.0)
    gen.add_argument("--transitory", action="store_true")

    dot = sub.add_parser("dot", help="render to DOT")
    dot.add_argument("file")
    dot.add_argument("-o", "--out")
    dot.add_argument("--system", choices=["none", "wcontract", "contract"], default="none")
    return parser


def _load_subject(path: str) -> tuple[str, Module]:
    try:
        text = open(path, encoding="utf-8").read()
    except OSError as exc:
        print(f"bipole: cannot read {path}: {exc}", file=sys.stderr)
        raise SystemExit(EX_NOINPUT)
    try:
        sf = dsl.parse(text)
        return dsl.subject(sf)
    except BipoleError as exc:
        print(f"bipole: {path}: {exc}", file=sys.stderr)
        raise SystemExit(EX_DATAERR)


def _load_ebms(path: str) -> tuple[tuple[str, Ebm], ...]:
    try:
        text = open(path, encoding="utf-8").read()
    except OSError as exc:
        print(f"bipole: cannot read {path}: {exc}", file=sys.stderr)
        raise SystemExit(EX_NOINPUT)
    try:
        sf = dsl.parse(text)
    except BipoleError as exc:
        print(f"bipole: {path}: {exc}", file=sys.stderr)
        raise SystemExit(EX_DATAERR)
    if sf.modules or not sf.ebms:
        print(f"bipole: {path}: proposal files declare cells only", file=sys.stderr)
        raise SystemExit(EX_USAGE)
    return sf.ebms


def _cell_str(e: Ebm) -> str:
    hyps = " ".join(e.hyps)
    poles = "".join("(" + " ".join(p) + ")" for p in e.poles)
    return f"[{hyps + ' ' if hyps else ''}-o {poles}]"


def _cmd_check(args) -> int:
    name, m = _load_subject(args.file)
    verdicts: dict[str, bool] = {}
    try:
        if args.mode == "c":
            if not is_closed(m):
                print(f"check {name}: module is not closed", file=sys.stderr)
                return 1
            if args.engine in ("rewrite", "both"):
                verdicts["rewrite"] = bigstep.c_correct(m)
            if args.engine in ("oracle", "both"):
                verdicts["oracle"] = switching.dr_correct(m)
        elif args.mode == "acyclic":
            if args.engine in ("rewrite", "both"):
                verdicts["rewrite"] = bigstep.acyclic_decide(m)
            if args.engine in ("oracle", "both"):
                verdicts["oracle"] = switching.acyclic_oracle(m)
        elif args.mode == "connectable":
            if args.engine in ("rewrite", "both"):
                verdicts["rewrite"] = contraction.connectable_decide(m, WC)
            if args.engine == "both":
                verdicts["rewrite-c"] = contraction.connectable_decide(m, C)
            if args.engine in ("oracle", "both"):
                verdicts["oracle"] = switching.connectable_oracle(m)
        else:  # o
            if args.engine in ("rewrite", "both"):
                verdicts["rewrite"] = bigstep.acyclic_decide(m) and (
                    contraction.connectable_decide(m, WC)
                )
            if args.engine in ("oracle", "both"):
                verdicts["oracle"] = switching.o_correct_oracle(m)
    except BipoleError as exc:
        print(f"bipole: {exc}", file=sys.stderr)
        return 1
    results = set(verdicts.values())
    if len(results) > 1:
        detail = ", ".join(f"{k}={v}" for k, v in sorted(verdicts.items()))
        print(f"check {name} --mode {args.mode}: ENGINES DISAGREE ({detail})")
        return 2
    holds = results.pop()
    engines = "+".join(sorted(verdicts))
    print(f"check {name} --mode {args.mode}: {'holds' if holds else 'fails'} ({engines})")
    return 0 if holds else 1


def _cmd_reduce(args) -> int:
    name, m = _load_subject(args.file)
    if args.system == "bigstep":
        trace = bigstep.bigstep_trace(m)
        if args.trace:
            for i, r in enumerate(trace.steps, 1):
                tail = f" target={r.target}" if r.target is not None else ""
                print(f"step {i}: {r.kind} cell={r.cell} pole={r.pole}{tail}")
        for c in sorted(trace.result.cells, key=lambda c: c.id):
            print(f"cell {c.id}: {_cell_str(c)}")
        return 0
    system = WC if args.system == "wcontract" else C
    g, rules = contraction.contract_trace(contraction.embed(m), system)
    if args.trace:
        for i, rule in enumerate(rules, 1):
            print(f"step {i}: rule {rule}")
    for b in sorted(g.blobs, key=lambda b: b.id):
        hyp = " ".join(b.hyp_pending) or "-"
        concl = " ".join(b.concl_pending) or "-"
        print(f"blob {b.id}: hyp-pending {hyp}; concl-pending {concl}")
    for p in sorted(g.poles, key=lambda p: p.id):
        ports = ", ".join(
            f"{label}->blob {t}" if t is not None else f"{label} pending"
            for label, t in p.ports
        )
        print(f"pole {p.id} on blob {p.anchor}: {ports or '-'}")
    cls = contraction.classify(g)
    detail = f" witnesses={','.join(map(str, cls.witnesses))}" if cls.witnesses else ""
    print(f"classification: {cls.kind}{detail}")
    return 0


def _cmd_session(args) -> int:
    name, m = _load_subject(args.file)
    try:
        state = session_new(m)
    except NotOCorrect:
        print(f"bipole: {name} is not o-correct, no session", file=sys.stderr)
        return 1
    for path in args.propose:
        for ebm_name, e in _load_ebms(path):
            try:
                candidate = propose(state, e)
            except BipoleError as exc:
                print(f"bipole: {ebm_name}: {exc}", file=sys.stderr)
                return 1
            verdict = candidate.verdict
            if verdict.kind == ACCEPT:
                print(f"VERDICT accept {ebm_name}")
                state = commit(state, e, candidate)
            elif verdict.witnesses:
                blobs = ",".join(map(str, verdict.witnesses))
                print(f"VERDICT {verdict.kind} {ebm_name} blobs={blobs}")
            else:
                print(f"VERDICT {verdict.kind} {ebm_name}")
    return 0


def _cmd_gen(args) -> int:
    params = GenParams(
        seed=args.seed,
        cells=args.cells,
        max_poles=args.max_poles,
        max_concl=args.max_concl,
        closure_prob=args.closure_prob,
        transitory=args.transitory,
    )
    cells = gen_cells(params)
    names = [f"c{i}" for i in range(len(cells))]
    sf = dsl.SourceFile(
        ebms=tuple(zip(names, cells)),
        modules=(("gen", tuple(names)),),
    )
    sys.stdout.write(dsl.render(sf))
    return 0


def _cmd_dot(args) -> int:
    name, m = _load_subject(args.file)
    if args.system == "none":
        text = to_dot(m)
    else:
        system = WC if args.system == "wcontract" else C
        text = to_dot(contraction.contract_nf(contraction.embed(m), system))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


_COMMANDS = {
    "check": _cmd_check,
    "reduce": _cmd_reduce,
    "session": _cmd_session,
    "gen": _cmd_gen,
    "dot": _cmd_dot,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EX_USAGE


if __name__ == "__main__":
    sys.exit(main())
