"""Translations between ordinal and nominal terms and theories.

A boxed nominal term carries whole ordinal terms ``[a> f <b]`` at its
generator nodes; ``nf_nmt`` flattens such a term into a plain nominal term.
Dually a dia'd ordinal term carries nominal terms ``<a] f [b>`` and
``nf_smt`` flattens it.  The ``iota_*`` maps embed plain terms back.
"""
from __future__ import annotations

import string
from typing import Iterable, Optional, Sequence

from .nominal import FreshNames, Name, NameList
from .terms import (
    Delta, Dia, Empty, Gen, Id, NEmpty, NGen, NId, NmtTerm, NSeq, NTensor, PermApp, Seq,
    Signature, SmtTerm, Sym, Tensor, TermError, names_in, nmt_type, realign, smt_type,
)
from .theories import (
    GENERATORS, Equation, TheoryPresentation, nominal_tag, ordinal_tag,
)

DEFAULT_SIGNATURE = Signature.of(GENERATORS.values())


class TranslationError(TermError):
    pass


def letters(n: int, skip: Iterable[Name] = ()) -> NameList:
    """The first ``n`` readable names ``a, b, ...`` not in ``skip``."""
    skip = set(skip)
    out: list[Name] = []
    pool = list(string.ascii_lowercase)
    k = 0
    while len(out) < n:
        if not pool:
            pool = [f"x{k}"]
            k += 1
        x = pool.pop(0)
        if x not in skip:
            out.append(x)
    return tuple(out)


# ---------------------------------------------------------------- nominal side


def box(f: SmtTerm, a: Sequence[Name], b: Sequence[Name]) -> NGen:
    return NGen(tuple(a), f, tuple(b))


def box_equations(eqs: Iterable[Equation], sig: Signature = DEFAULT_SIGNATURE) -> list[Equation]:
    """Box both sides of each ordinal equation between the same name lists."""
    out = []
    for eq in eqs:
        tl, tr = smt_type(eq.lhs, sig), smt_type(eq.rhs, sig)
        if tl != tr:
            raise TranslationError(f"equation sides have types {tl} and {tr}")
        ab = letters(tl.m + tl.n)
        a, b = ab[:tl.m], ab[tl.m:]
        out.append(Equation(box(eq.lhs, a, b), box(eq.rhs, a, b), eq.label))
    return out


def nf_nmt(t: NmtTerm, sig: Signature = DEFAULT_SIGNATURE,
           fresh: Optional[FreshNames] = None) -> NmtTerm:
    """Flatten every box of ``t``.

    Internal wires created when splitting a boxed composite are drawn from
    ``fresh`` (by default a new ``_w`` supply avoiding the names of ``t``).
    """
    if fresh is None:
        fresh = FreshNames(names_in(t))
    return _nf_nmt(t, sig, fresh)


def _nf_nmt(t: NmtTerm, sig, fresh) -> NmtTerm:
    if isinstance(t, NGen):
        if isinstance(t.g, SmtTerm):
            return _nf_box(t.a, t.g, t.b, sig, fresh)
        return t
    if isinstance(t, NSeq):
        return NSeq(_nf_nmt(t.left, sig, fresh), _nf_nmt(t.right, sig, fresh))
    if isinstance(t, NTensor):
        return NTensor(_nf_nmt(t.left, sig, fresh), _nf_nmt(t.right, sig, fresh))
    if isinstance(t, PermApp):
        return PermApp(t.swap, _nf_nmt(t.body, sig, fresh))
    return t


def _nf_box(a: NameList, f: SmtTerm, b: NameList, sig, fresh) -> NmtTerm:
    if isinstance(f, Gen):
        if isinstance(f.g, Dia):
            raise TranslationError("a dia'd generator cannot appear inside a box")
        return NGen(a, f.g, b)
    if isinstance(f, Id):
        return Delta(a[0], b[0])
    if isinstance(f, Sym):
        return NTensor(Delta(a[0], b[1]), Delta(a[1], b[0]))
    if isinstance(f, Empty):
        return NEmpty()
    if isinstance(f, Seq):
        w = fresh.take(smt_type(f.left, sig).n)
        return NSeq(_nf_box(a, f.left, w, sig, fresh), _nf_box(w, f.right, b, sig, fresh))
    if isinstance(f, Tensor):
        m, n = smt_type(f.left, sig)
        return NTensor(_nf_box(a[:m], f.left, b[:n], sig, fresh),
                       _nf_box(a[m:], f.right, b[n:], sig, fresh))
    raise TypeError(f"not an SMT term: {f!r}")


def iota_nmt(t: NmtTerm) -> NmtTerm:
    """Replace each base generator ``[a> g <b]`` by the box of the one-generator term."""
    if isinstance(t, NGen):
        return NGen(t.a, Gen(t.g), t.b) if isinstance(t.g, str) else t
    if isinstance(t, NSeq):
        return NSeq(iota_nmt(t.left), iota_nmt(t.right))
    if isinstance(t, NTensor):
        return NTensor(iota_nmt(t.left), iota_nmt(t.right))
    if isinstance(t, PermApp):
        return PermApp(t.swap, iota_nmt(t.body))
    return t


# ---------------------------------------------------------------- ordinal side


def dia(t: NmtTerm, a: Sequence[Name], b: Sequence[Name]) -> Gen:
    return Gen(Dia(tuple(a), t, tuple(b)))


def dia_equations(eqs: Iterable[Equation], sig: Signature = DEFAULT_SIGNATURE) -> list[Equation]:
    """Wrap both sides of each nominal equation between the sorted boundary lists."""
    out = []
    for eq in eqs:
        tl, tr = nmt_type(eq.lhs, sig), nmt_type(eq.rhs, sig)
        if tl != tr:
            raise TranslationError(f"equation sides have types {tl} and {tr}")
        a, b = tuple(sorted(tl.dom)), tuple(sorted(tl.cod))
        out.append(Equation(dia(eq.lhs, a, b), dia(eq.rhs, a, b), eq.label))
    return out


def _then(*parts: SmtTerm) -> SmtTerm:
    """Sequence ``parts``, dropping the ``None`` placeholders of skipped realignments."""
    kept = [p for p in parts if p is not None]
    out = kept[0]
    for p in kept[1:]:
        out = Seq(out, p)
    return out


def _realign(a: NameList, a2: NameList) -> Optional[SmtTerm]:
    return None if tuple(a) == tuple(a2) else realign(a, a2)


def nf_smt(t: SmtTerm, sig: Signature = DEFAULT_SIGNATURE) -> SmtTerm:
    """Flatten every dia'd generator of ``t``."""
    if isinstance(t, Gen):
        if isinstance(t.g, Dia):
            return _nf_dia(t.g.a, t.g.body, t.g.b, sig)
        return t
    if isinstance(t, Seq):
        return Seq(nf_smt(t.left, sig), nf_smt(t.right, sig))
    if isinstance(t, Tensor):
        return Tensor(nf_smt(t.left, sig), nf_smt(t.right, sig))
    return t


def _nf_dia(a: NameList, t: NmtTerm, b: NameList, sig) -> SmtTerm:
    if isinstance(t, NGen):
        g = t.g if isinstance(t.g, SmtTerm) else Gen(t.g)
        return _then(_realign(a, t.a), g, _realign(t.b, b))
    if isinstance(t, (NId, Delta)):
        return Id()
    if isinstance(t, NEmpty):
        return Empty()
    if isinstance(t, NSeq):
        mid = tuple(sorted(nmt_type(t.left, sig).cod))
        return Seq(_nf_dia(a, t.left, mid, sig), _nf_dia(mid, t.right, b, sig))
    if isinstance(t, NTensor):
        a1, b1 = (tuple(sorted(s)) for s in nmt_type(t.left, sig))
        a2, b2 = (tuple(sorted(s)) for s in nmt_type(t.right, sig))
        core = Tensor(_nf_dia(a1, t.left, b1, sig), _nf_dia(a2, t.right, b2, sig))
        return _then(_realign(a, a1 + a2), core, _realign(b1 + b2, b))
    if isinstance(t, PermApp):
        p = t.perm.inverse()
        return _nf_dia(p.act(a), t.body, p.act(b), sig)
    raise TypeError(f"not an NMT term: {t!r}")


def iota_smt(t: SmtTerm, sig: Signature = DEFAULT_SIGNATURE) -> SmtTerm:
    """Wrap each base generator ``g : m -> n`` as ``<a] [a> g <b] [b>``."""
    if isinstance(t, Gen):
        if isinstance(t.g, Dia):
            return t
        d = sig[t.g]
        ab = letters(d.arity + d.coarity)
        a, b = ab[:d.arity], ab[d.arity:]
        return dia(NGen(a, t.g, b), a, b)
    if isinstance(t, Seq):
        return Seq(iota_smt(t.left, sig), iota_smt(t.right, sig))
    if isinstance(t, Tensor):
        return Tensor(iota_smt(t.left, sig), iota_smt(t.right, sig))
    return t


# ---------------------------------------------------------------- theories


def translate_theory_nmt(th: TheoryPresentation) -> TheoryPresentation:
    """The nominal theory whose equations are the flattened boxed ordinal ones."""
    if th.kind != "smt":
        raise TranslationError("expected an ordinal theory")
    eqs = tuple(Equation(nf_nmt(e.lhs, th.signature), nf_nmt(e.rhs, th.signature), e.label)
                for e in box_equations(th.equations, th.signature))
    model = nominal_tag(th.model) if th.model else None
    return TheoryPresentation("nmt", th.signature, eqs, model, th.name and "n" + th.name)


def translate_theory_smt(th: TheoryPresentation) -> TheoryPresentation:
    """The ordinal theory whose equations are the flattened dia'd nominal ones."""
    if th.kind != "nmt":
        raise TranslationError("expected a nominal theory")
    eqs = tuple(Equation(nf_smt(e.lhs, th.signature), nf_smt(e.rhs, th.signature), e.label)
                for e in dia_equations(th.equations, th.signature))
    model = ordinal_tag(th.model) if th.model else None
    name = th.name[1:] if th.name.startswith("n") else th.name
    return TheoryPresentation("smt", th.signature, eqs, model, name)
