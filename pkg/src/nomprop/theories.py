"""Theory presentations and their semantic models.

Every model used here (bijections, injections, surjections, functions,
partial functions, relations) is a subcategory of finite relations, so a
single relational arrow type serves all of them: composition of functions,
Kleisli composition of partial functions and relational composition all
coincide on graphs.  The model tag only decides which generators exist.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from .nominal import Name, NameList, NameSet, Perm
from .terms import (
    Delta, Dia, Empty, Gen, GenDecl, Id, NEmpty, NGen, NId, NmtTerm, NSeq, NTensor,
    PermApp, Seq, Signature, SmtTerm, Sym, Tensor, TermError, generators_in, names_in,
    nmt_type, smt_type,
)

ORDINAL_TAGS = ("B", "I", "S", "F", "P", "R")
NOMINAL_TAGS = tuple("n" + t for t in ORDINAL_TAGS)

MODEL_GENERATORS = {
    "B": frozenset(),
    "I": frozenset({"eta"}),
    "S": frozenset({"mu"}),
    "F": frozenset({"eta", "mu"}),
    "P": frozenset({"eta", "mu", "eta_hat"}),
    "R": frozenset({"eta", "mu", "eta_hat", "mu_hat"}),
}

GENERATORS = {
    "eta": GenDecl("eta", 0, 1),
    "mu": GenDecl("mu", 2, 1),
    "eta_hat": GenDecl("eta_hat", 1, 0),
    "mu_hat": GenDecl("mu_hat", 1, 2),
}


class UnknownTheory(ValueError):
    pass


class ModelMismatch(ValueError):
    pass


class TheoryError(ValueError):
    pass


def is_nominal(tag: str) -> bool:
    return tag in NOMINAL_TAGS


def nominal_tag(tag: str) -> str:
    if tag in NOMINAL_TAGS:
        return tag
    if tag in ORDINAL_TAGS:
        return "n" + tag
    raise UnknownTheory(tag)


def ordinal_tag(tag: str) -> str:
    if tag in ORDINAL_TAGS:
        return tag
    if tag in NOMINAL_TAGS:
        return tag[1:]
    raise UnknownTheory(tag)


def model_signature(tag: str) -> Signature:
    return Signature.of(GENERATORS[g] for g in MODEL_GENERATORS[ordinal_tag(tag)])


# ---------------------------------------------------------------- semantic arrows


@dataclass(frozen=True)
class Arrow:
    """A relation between the ordinals ``dom`` and ``cod``."""

    dom: int
    cod: int
    graph: frozenset = frozenset()

    def __post_init__(self):
        for i, j in self.graph:
            if not (0 <= i < self.dom and 0 <= j < self.cod):
                raise ValueError(f"pair {(i, j)} outside {self.dom} -> {self.cod}")

    def then(self, other: "Arrow") -> "Arrow":
        if self.cod != other.dom:
            raise ValueError("composing arrows of mismatched type")
        succ: dict[int, list[int]] = {}
        for j, k in other.graph:
            succ.setdefault(j, []).append(k)
        return Arrow(self.dom, other.cod,
                     frozenset((i, k) for i, j in self.graph for k in succ.get(j, ())))

    def tensor(self, other: "Arrow") -> "Arrow":
        shifted = frozenset((i + self.dom, j + self.cod) for i, j in other.graph)
        return Arrow(self.dom + other.dom, self.cod + other.cod, self.graph | shifted)

    def is_partial_function(self) -> bool:
        srcs = [i for i, _ in self.graph]
        return len(srcs) == len(set(srcs))

    def is_function(self) -> bool:
        return self.is_partial_function() and len(self.graph) == self.dom

    @property
    def table(self) -> tuple:
        """Image of each input, ``None`` where undefined (partial functions only)."""
        if not self.is_partial_function():
            raise ValueError("not a partial function")
        m = dict(self.graph)
        return tuple(m.get(i) for i in range(self.dom))

    def __str__(self):
        if self.is_partial_function():
            return f"{self.dom} -> {self.cod} {list(self.table)}"
        return f"{self.dom} -> {self.cod} {sorted(self.graph)}"

    def to_json(self) -> dict:
        out = {"dom": self.dom, "cod": self.cod, "graph": sorted(map(list, self.graph))}
        if self.is_partial_function():
            out["table"] = list(self.table)
        return out


@dataclass(frozen=True)
class NamedArrow:
    """A relation between finite name sets."""

    dom: NameSet
    cod: NameSet
    graph: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "dom", frozenset(self.dom))
        object.__setattr__(self, "cod", frozenset(self.cod))
        for x, y in self.graph:
            if x not in self.dom or y not in self.cod:
                raise ValueError(f"pair {(x, y)} outside {sorted(self.dom)} -> {sorted(self.cod)}")

    def then(self, other: "NamedArrow") -> "NamedArrow":
        if self.cod != other.dom:
            raise ValueError("composing arrows of mismatched type")
        succ: dict[Name, list[Name]] = {}
        for y, z in other.graph:
            succ.setdefault(y, []).append(z)
        return NamedArrow(self.dom, other.cod,
                          frozenset((x, z) for x, y in self.graph for z in succ.get(y, ())))

    def tensor(self, other: "NamedArrow") -> "NamedArrow":
        if self.dom & other.dom or self.cod & other.cod:
            raise ValueError("tensor of arrows with overlapping names")
        return NamedArrow(self.dom | other.dom, self.cod | other.cod, self.graph | other.graph)

    def rename(self, p: Perm) -> "NamedArrow":
        """The pointwise action of ``p``."""
        return NamedArrow(p.act(self.dom), p.act(self.cod),
                          frozenset((p(x), p(y)) for x, y in self.graph))

    def is_partial_function(self) -> bool:
        srcs = [x for x, _ in self.graph]
        return len(srcs) == len(set(srcs))

    def is_function(self) -> bool:
        return self.is_partial_function() and len(self.graph) == len(self.dom)

    def is_bijection(self) -> bool:
        return (self.is_function() and len(self.dom) == len(self.cod)
                and {y for _, y in self.graph} == set(self.cod))

    @property
    def mapping(self) -> dict:
        if not self.is_partial_function():
            raise ValueError("not a partial function")
        return dict(self.graph)

    def __str__(self):
        pairs = ", ".join(f"{x}->{y}" for x, y in sorted(self.graph))
        return f"{{{', '.join(sorted(self.dom))}}} -> {{{', '.join(sorted(self.cod))}}} [{pairs}]"

    def to_json(self) -> dict:
        return {"dom": sorted(self.dom), "cod": sorted(self.cod),
                "graph": sorted(map(list, self.graph))}


def FiniteFunction(m: int, n: int, table: Sequence[int]) -> Arrow:
    if len(table) != m:
        raise ValueError("table length must equal the arity")
    return Arrow(m, n, frozenset(enumerate(table)))


def PartialFunction(m: int, n: int, table: Sequence[Optional[int]]) -> Arrow:
    if len(table) != m:
        raise ValueError("table length must equal the arity")
    return Arrow(m, n, frozenset((i, j) for i, j in enumerate(table) if j is not None))


def Relation(m: int, n: int, pairs: Iterable[tuple[int, int]]) -> Arrow:
    return Arrow(m, n, frozenset(pairs))


def NamedFunction(dom: Iterable[Name], cod: Iterable[Name], mapping: dict) -> NamedArrow:
    dom = frozenset(dom)
    if set(mapping) != dom:
        raise ValueError("a function must be defined on its whole domain")
    return NamedArrow(dom, frozenset(cod), frozenset(mapping.items()))


def NamedPartialFunction(dom, cod, mapping: dict) -> NamedArrow:
    return NamedArrow(frozenset(dom), frozenset(cod), frozenset(mapping.items()))


def NamedRelation(dom, cod, pairs) -> NamedArrow:
    return NamedArrow(frozenset(dom), frozenset(cod), frozenset(pairs))


def identity_arrow(k: int) -> Arrow:
    return Arrow(k, k, frozenset((i, i) for i in range(k)))


def named_identity(names: Iterable[Name]) -> NamedArrow:
    names = frozenset(names)
    return NamedArrow(names, names, frozenset((a, a) for a in names))


def semantic_box(f: Arrow, a: NameList, b: NameList) -> NamedArrow:
    """Relabel the ordinal boundary of ``f`` by the lists ``a`` and ``b``."""
    if (f.dom, f.cod) != (len(a), len(b)):
        raise ValueError("list lengths do not match the arrow")
    return NamedArrow(frozenset(a), frozenset(b), frozenset((a[i], b[j]) for i, j in f.graph))


def semantic_unbox(f: NamedArrow, a: NameList, b: NameList) -> Arrow:
    """Number the named boundary of ``f`` by the positions in ``a`` and ``b``."""
    if f.dom != frozenset(a) or f.cod != frozenset(b):
        raise ValueError("lists do not enumerate the arrow's boundary")
    ia = {x: i for i, x in enumerate(a)}
    ib = {y: j for j, y in enumerate(b)}
    return Arrow(len(a), len(b), frozenset((ia[x], ib[y]) for x, y in f.graph))


_GEN_GRAPHS = {
    "eta": Arrow(0, 1, frozenset()),
    "mu": Arrow(2, 1, frozenset({(0, 0), (1, 0)})),
    "eta_hat": Arrow(1, 0, frozenset()),
    "mu_hat": Arrow(1, 2, frozenset({(0, 0), (0, 1)})),
}

_SYM = Arrow(2, 2, frozenset({(0, 1), (1, 0)}))


def _check_model(t, tag: str):
    allowed = MODEL_GENERATORS[ordinal_tag(tag)]
    extra = generators_in(t) - allowed
    if extra:
        raise ModelMismatch(f"generators {sorted(extra)} have no interpretation in {tag}")


def eval_smt(t: SmtTerm, tag: str = "F", sig: Optional[Signature] = None) -> Arrow:
    """Evaluate an ordinal term (possibly with dia'd payloads) in model ``tag``."""
    sig = sig or model_signature(tag)
    _check_model(t, tag)
    smt_type(t, sig)
    return _eval_smt(t, ordinal_tag(tag), sig, {})


def eval_nmt(t: NmtTerm, tag: str = "nF", sig: Optional[Signature] = None) -> NamedArrow:
    """Evaluate a nominal term (possibly with boxed payloads) in model ``tag``."""
    sig = sig or model_signature(tag)
    _check_model(t, tag)
    nmt_type(t, sig)
    return _eval_nmt(t, ordinal_tag(tag), sig, {})


def evaluate(t, tag: str, sig: Optional[Signature] = None):
    if isinstance(t, SmtTerm):
        return eval_smt(t, ordinal_tag(tag), sig)
    return eval_nmt(t, nominal_tag(tag), sig)


def _eval_smt(t, tag, sig, memo) -> Arrow:
    hit = memo.get(t)
    if hit is not None:
        return hit
    if isinstance(t, Gen):
        if isinstance(t.g, Dia):
            inner = _eval_nmt(t.g.body, tag, sig, memo)
            out = semantic_unbox(inner, t.g.a, t.g.b)
        else:
            out = _GEN_GRAPHS[t.g]
    elif isinstance(t, Id):
        out = identity_arrow(1)
    elif isinstance(t, Sym):
        out = _SYM
    elif isinstance(t, Empty):
        out = identity_arrow(0)
    elif isinstance(t, Seq):
        out = _eval_smt(t.left, tag, sig, memo).then(_eval_smt(t.right, tag, sig, memo))
    elif isinstance(t, Tensor):
        out = _eval_smt(t.left, tag, sig, memo).tensor(_eval_smt(t.right, tag, sig, memo))
    else:
        raise TypeError(f"not an SMT term: {t!r}")
    memo[t] = out
    return out


def _eval_nmt(t, tag, sig, memo) -> NamedArrow:
    hit = memo.get(t)
    if hit is not None:
        return hit
    if isinstance(t, NGen):
        f = _eval_smt(t.g, tag, sig, memo) if isinstance(t.g, SmtTerm) else _GEN_GRAPHS[t.g]
        out = semantic_box(f, t.a, t.b)
    elif isinstance(t, NId):
        out = named_identity((t.a,))
    elif isinstance(t, Delta):
        out = NamedArrow(frozenset((t.a,)), frozenset((t.b,)), frozenset({(t.a, t.b)}))
    elif isinstance(t, NEmpty):
        out = named_identity(())
    elif isinstance(t, NSeq):
        out = _eval_nmt(t.left, tag, sig, memo).then(_eval_nmt(t.right, tag, sig, memo))
    elif isinstance(t, NTensor):
        out = _eval_nmt(t.left, tag, sig, memo).tensor(_eval_nmt(t.right, tag, sig, memo))
    elif isinstance(t, PermApp):
        out = _eval_nmt(t.body, tag, sig, memo).rename(t.perm)
    else:
        raise TypeError(f"not an NMT term: {t!r}")
    memo[t] = out
    return out


def eval_boxed(t: NmtTerm, tag: str = "F") -> NamedArrow:
    """Evaluate a boxed nominal term: each ``[a> f <b]`` is ``f`` relabelled by ``a`` and ``b``."""
    return eval_nmt(t, nominal_tag(tag))


def eval_dia(t: SmtTerm, tag: str = "nF") -> Arrow:
    """Evaluate a dia'd ordinal term: each ``<a] f [b>`` is ``f`` numbered by ``a`` and ``b``."""
    return eval_smt(t, ordinal_tag(tag))


# ---------------------------------------------------------------- presentations


@dataclass(frozen=True)
class Equation:
    lhs: object
    rhs: object
    label: str = ""


@dataclass(frozen=True)
class TheoryPresentation:
    kind: str                      # "smt" or "nmt"
    signature: Signature
    equations: tuple[Equation, ...] = ()
    model: Optional[str] = None
    name: str = ""

    def __post_init__(self):
        if self.kind not in ("smt", "nmt"):
            raise TheoryError(f"unknown calculus {self.kind!r}")
        if self.model is not None and self.model not in ORDINAL_TAGS + NOMINAL_TAGS:
            raise UnknownTheory(self.model)
        typer = smt_type if self.kind == "smt" else nmt_type
        for i, eq in enumerate(self.equations):
            try:
                tl, tr = typer(eq.lhs, self.signature), typer(eq.rhs, self.signature)
            except TermError as e:
                raise TheoryError(f"equation {i} is ill-typed: {e}") from e
            if tl != tr:
                raise TheoryError(f"equation {i} relates terms of different types {tl} and {tr}")

    def to_json(self) -> dict:
        from .syntax import print_term
        return {
            "kind": self.kind,
            "generators": [{"name": d.name, "arity": d.arity, "coarity": d.coarity}
                           for d in self.signature],
            "equations": [dict({"lhs": print_term(e.lhs), "rhs": print_term(e.rhs)},
                               **({"label": e.label} if e.label else {}))
                          for e in self.equations],
            "model": self.model,
        }


def theory_from_json(data: dict, name: str = "") -> TheoryPresentation:
    from .syntax import parse_nmt, parse_smt
    try:
        kind = data["kind"]
        sig = Signature.of(GenDecl(g["name"], int(g["arity"]), int(g["coarity"]))
                           for g in data.get("generators", []))
        parse = parse_smt if kind == "smt" else parse_nmt
        eqs = tuple(Equation(parse(e["lhs"], sig), parse(e["rhs"], sig), e.get("label", ""))
                    for e in data.get("equations", []))
    except (KeyError, TypeError) as e:
        raise TheoryError(f"malformed theory document: {e}") from e
    return TheoryPresentation(kind, sig, eqs, data.get("model"), name or data.get("name", ""))


def load_theory(path: Union[str, Path]) -> TheoryPresentation:
    path = Path(path)
    return theory_from_json(json.loads(path.read_text()), name=path.stem)


@lru_cache(maxsize=None)
def builtin_theory(tag: str) -> TheoryPresentation:
    """The bundled presentation for a model tag.

    Nominal theories are read from the package data; ordinal ones are the
    translation of the nominal theory with the same letter.
    """
    if tag in NOMINAL_TAGS:
        text = resources.files("nomprop.data").joinpath(f"{tag}.json").read_text()
        return theory_from_json(json.loads(text), name=tag)
    if tag in ORDINAL_TAGS:
        from .translate import translate_theory_smt
        th = translate_theory_smt(builtin_theory("n" + tag))
        return TheoryPresentation("smt", th.signature, th.equations, tag, tag)
    raise UnknownTheory(f"unknown theory {tag!r}")


def resolve_theory(spec: str) -> TheoryPresentation:
    """A builtin tag or a path to a theory file."""
    if spec in ORDINAL_TAGS + NOMINAL_TAGS:
        return builtin_theory(spec)
    p = Path(spec)
    if p.exists():
        return load_theory(p)
    raise UnknownTheory(f"{spec!r} is neither a builtin theory nor a file")


# ---------------------------------------------------------------- soundness

TEST_ALPHABET = ("a", "b", "c", "d", "e", "f")


@dataclass
class SoundnessFailure:
    index: int
    lhs: object
    rhs: object
    reason: str

    def to_json(self) -> dict:
        from .syntax import print_term
        return {"equation": self.index, "lhs": print_term(self.lhs),
                "rhs": print_term(self.rhs), "reason": self.reason}


@dataclass
class SoundnessReport:
    theory: str
    equations: int
    instances: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"theory": self.theory, "equations": self.equations, "instances": self.instances,
                "ok": self.ok, "failures": [f.to_json() for f in self.failures]}


def equation_instances(eq: Equation, alphabet: Sequence[Name] = TEST_ALPHABET):
    """All injective renamings of the equation's names into ``alphabet``.

    The alphabet is padded with extra names when the equation mentions more
    names than it has.
    """
    names = sorted(names_in(eq.lhs) | names_in(eq.rhs))
    alphabet = list(alphabet)
    k = 0
    while len(alphabet) < len(names):
        alphabet.append(f"z{k}")
        k += 1
    for image in itertools.permutations(alphabet, len(names)):
        rho = dict(zip(names, image))
        yield rename_term(eq.lhs, rho), rename_term(eq.rhs, rho)


def rename_term(t, rho: dict):
    """Apply a (not necessarily bijective) renaming of free wire labels."""
    r = lambda x: rho.get(x, x)
    if isinstance(t, NGen):
        return NGen(tuple(map(r, t.a)), t.g, tuple(map(r, t.b)))
    if isinstance(t, NId):
        return NId(r(t.a))
    if isinstance(t, Delta):
        return Delta(r(t.a), r(t.b))
    if isinstance(t, NEmpty):
        return t
    if isinstance(t, NSeq):
        return NSeq(rename_term(t.left, rho), rename_term(t.right, rho))
    if isinstance(t, NTensor):
        return NTensor(rename_term(t.left, rho), rename_term(t.right, rho))
    if isinstance(t, PermApp):
        return PermApp((r(t.swap[0]), r(t.swap[1])), rename_term(t.body, rho))
    return t


def check_soundness(th: TheoryPresentation, alphabet: Sequence[Name] = TEST_ALPHABET) -> SoundnessReport:
    if th.model is None:
        raise TheoryError("theory has no model tag")
    tag = th.model
    report = SoundnessReport(th.name or tag, len(th.equations))
    for i, eq in enumerate(th.equations):
        if th.kind == "smt":
            pairs: Iterable = [(eq.lhs, eq.rhs)]
        else:
            pairs = equation_instances(eq, alphabet)
        for lhs, rhs in pairs:
            report.instances += 1
            try:
                left, right = evaluate(lhs, tag, th.signature), evaluate(rhs, tag, th.signature)
            except (TermError, ModelMismatch) as e:
                report.failures.append(SoundnessFailure(i, lhs, rhs, str(e)))
                break
            if left != right:
                report.failures.append(SoundnessFailure(i, lhs, rhs, f"{left} != {right}"))
                break
    return report
