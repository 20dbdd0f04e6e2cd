"""Command line entry point ``nomprop``.

Exit status is 0 for success or a true answer, 1 for a false answer or a
failed check, and 2 for usage, parse and type errors.
"""
from __future__ import annotations

import argparse
import json
import sys

from .equiv import TypeMismatch, completeness_probe, normalize_bijection_nmt, semantic_equiv
from .syntax import ParseError, parse_nmt, parse_smt, print_term
from .terms import TermError, nmt_support, nmt_type, smt_type
from .theories import (
    ModelMismatch, TheoryError, UnknownTheory, check_soundness, evaluate, model_signature,
    resolve_theory,
)
from .translate import (
    box, dia, letters, nf_nmt, nf_smt, translate_theory_nmt, translate_theory_smt,
)

OK, FALSE, USAGE = 0, 1, 2


class CliError(Exception):
    pass


def _emit(args, data: dict, text: str):
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        print(text)


def _type_json(ty) -> dict:
    if isinstance(ty[0], int):
        return {"arity": ty[0], "coarity": ty[1]}
    return {"dom": sorted(ty[0]), "cod": sorted(ty[1])}


def _type_text(ty) -> str:
    if isinstance(ty[0], int):
        return f"{ty[0]} -> {ty[1]}"
    return f"{{{', '.join(sorted(ty[0]))}}} -> {{{', '.join(sorted(ty[1]))}}}"


def _parse(text: str, kind: str, sig):
    return parse_smt(text, sig) if kind == "smt" else parse_nmt(text, sig)


def _theory(spec: str):
    return resolve_theory(spec)


def cmd_check(args) -> int:
    th = _theory(args.theory)
    try:
        t = _parse(args.term, th.kind, th.signature)
    except TermError as e:
        _emit(args, {"ok": False, "error": str(e)}, f"ill-typed: {e}")
        return FALSE
    ty = smt_type(t, th.signature) if th.kind == "smt" else nmt_type(t, th.signature)
    _emit(args, {"ok": True, "kind": th.kind, "term": print_term(t), "type": _type_json(ty)},
          f"{print_term(t)} : {_type_text(ty)}")
    return OK


def _model_theory(spec: str):
    th = _theory(spec)
    if th.model is None:
        raise CliError(f"theory {spec!r} has no model tag")
    return th


def cmd_eval(args) -> int:
    th = _model_theory(args.theory)
    t = _parse(args.term, th.kind, th.signature)
    f = evaluate(t, th.model, th.signature)
    _emit(args, {"term": print_term(t), "model": th.model, "value": f.to_json()}, str(f))
    return OK


def cmd_support(args) -> int:
    th = _theory(args.theory)
    if th.kind != "nmt":
        raise CliError("support is defined for nominal terms")
    t = parse_nmt(args.term, th.signature)
    s = sorted(nmt_support(t, th.signature))
    _emit(args, {"term": print_term(t), "support": s}, "{" + ", ".join(s) + "}")
    return OK


def cmd_equiv(args) -> int:
    th = _model_theory(args.theory)
    t1 = _parse(args.t1, th.kind, th.signature)
    t2 = _parse(args.t2, th.kind, th.signature)
    same = semantic_equiv(t1, t2, th.model, th.signature)
    _emit(args, {"equal": same, "model": th.model}, "equal" if same else "not equal")
    return OK if same else FALSE


def _translate(args, direction: str) -> int:
    if (args.term is None) == (args.theory is None):
        raise CliError("give exactly one of --term or --theory")
    if args.term is not None:
        sig = model_signature("R")
        if direction == "smt2nmt":
            t = parse_smt(args.term, sig)
            ty = smt_type(t, sig)
            ab = letters(ty.m + ty.n)
            out = nf_nmt(box(t, ab[:ty.m], ab[ty.m:]), sig)
        else:
            t = parse_nmt(args.term, sig)
            dom, cod = nmt_type(t, sig)
            out = nf_smt(dia(t, sorted(dom), sorted(cod)), sig)
        _emit(args, {"input": print_term(t), "output": print_term(out)}, print_term(out))
        return OK
    th = _theory(args.theory)
    if direction == "smt2nmt":
        if th.kind != "smt":
            raise CliError("smt2nmt expects an ordinal theory")
        res = translate_theory_nmt(th)
    else:
        if th.kind != "nmt":
            raise CliError("nmt2smt expects a nominal theory")
        res = translate_theory_smt(th)
    doc = res.to_json()
    if args.json:
        print(json.dumps(doc, sort_keys=True))
    else:
        print(json.dumps(doc, indent=2))
    return OK


def cmd_smt2nmt(args) -> int:
    return _translate(args, "smt2nmt")


def cmd_nmt2smt(args) -> int:
    return _translate(args, "nmt2smt")


def cmd_normalize(args) -> int:
    if args.theory != "nB":
        raise CliError("normal forms are only available for the bijection theory nB")
    th = _theory("nB")
    t = parse_nmt(args.term, th.signature)
    nf = normalize_bijection_nmt(t)
    _emit(args, {"term": print_term(t), "normal_form": str(nf),
                 "mapping": [list(p) for p in nf.entries]}, str(nf))
    return OK


def cmd_soundness(args) -> int:
    th = _model_theory(args.theory)
    rep = check_soundness(th)
    lines = [f"{rep.theory}: {rep.equations} equations, {rep.instances} instances, "
             f"{len(rep.failures)} failures"]
    lines += [f"  equation {f.index}: {print_term(f.lhs)} = {print_term(f.rhs)} ({f.reason})"
              for f in rep.failures]
    _emit(args, rep.to_json(), "\n".join(lines))
    return OK if rep.ok else FALSE


def cmd_probe(args) -> int:
    rep = completeness_probe(args.theory, args.size, args.budget)
    d = rep.to_json()
    text = (f"{rep.theory} size<={rep.size_bound}: {rep.terms} terms, "
            f"{rep.pairs_equal} equal pairs, {rep.pairs_merged} merged "
            f"(coverage {rep.coverage:.2%}), {rep.unsound_pairs} unsound, "
            f"fixpoint {'reached' if rep.fixpoint_reached else 'not reached'}")
    if rep.counterexamples and not args.json:
        text += "\nunmerged examples:\n" + "\n".join(f"  {a}  =  {b}" for a, b in rep.counterexamples)
    _emit(args, d, text)
    return OK if rep.sound else FALSE


def build_parser() -> argparse.ArgumentParser:
    # the flag may come before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    p = argparse.ArgumentParser(prog="nomprop",
                                description="Symmetric and nominal monoidal theories.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="parse and typecheck a term")
    s.add_argument("term")
    s.add_argument("--theory", required=True)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("eval", parents=[common], help="evaluate a term in a model")
    s.add_argument("term")
    s.add_argument("--theory", required=True)
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("support", parents=[common], help="support of a nominal term")
    s.add_argument("term")
    s.add_argument("--theory", default="nR")
    s.set_defaults(func=cmd_support)

    s = sub.add_parser("equiv", parents=[common], help="semantic equality of two terms")
    s.add_argument("t1")
    s.add_argument("t2")
    s.add_argument("--theory", required=True)
    s.set_defaults(func=cmd_equiv)

    for name, func in (("smt2nmt", cmd_smt2nmt), ("nmt2smt", cmd_nmt2smt)):
        s = sub.add_parser(name, parents=[common], help="translate a theory or a term")
        s.add_argument("--theory")
        s.add_argument("--term")
        s.set_defaults(func=func)

    s = sub.add_parser("normalize", parents=[common], help="normal form of a bijection term")
    s.add_argument("term")
    s.add_argument("--theory", default="nB")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("soundness", parents=[common], help="check a theory against its model")
    s.add_argument("--theory", required=True)
    s.set_defaults(func=cmd_soundness)

    s = sub.add_parser("probe", parents=[common], help="bounded completeness probe")
    s.add_argument("--theory", required=True)
    s.add_argument("--size", type=int, default=4)
    s.add_argument("--budget", type=int, default=None)
    s.set_defaults(func=cmd_probe)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    try:
        return args.func(args)
    except (ParseError, TermError, TypeMismatch, ModelMismatch, UnknownTheory, TheoryError,
            CliError, ValueError) as e:
        span = getattr(e, "span", None)
        msg = f"error: {e}" + (f" (at {span})" if span is not None and not isinstance(e, ParseError) else "")
        if getattr(args, "json", False):
            out = {"error": str(e), "type": type(e).__name__}
            if span is not None:
                out["span"] = [span.start, span.end]
            print(json.dumps(out, sort_keys=True))
        else:
            print(msg, file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
