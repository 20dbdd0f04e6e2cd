"""Term syntax for symmetric (ordinal) and nominal monoidal theories.

Both calculi are generic in what sits at a generator node.  For plain terms
the payload is the generator's name (a ``str``); boxed nominal terms carry a
whole ``SmtTerm`` there and dia'd ordinal terms carry a ``Dia`` triple.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Iterable, NamedTuple, Sequence, Union

from .nominal import Name, NameList, NameSet, Perm


class TermError(Exception):
    """Base class for ill-typed or ill-formed terms."""


class UnknownGenerator(TermError):
    def __init__(self, name):
        super().__init__(f"unknown generator {name!r}")
        self.name = name


class GeneratorArityMismatch(TermError):
    def __init__(self, name, expected, got):
        super().__init__(f"generator {name!r} has type {expected[0]} -> {expected[1]}, "
                         f"used with {got[0]} -> {got[1]} wires")
        self.name, self.expected, self.got = name, expected, got


class SeqArityMismatch(TermError):
    def __init__(self, expected, got):
        super().__init__(f"sequential composition: left has co-arity {expected}, right has arity {got}")
        self.expected, self.got = expected, got


class SeqDomainMismatch(TermError):
    def __init__(self, expected, got):
        super().__init__(f"sequential composition: left codomain {sorted(expected)} "
                         f"!= right domain {sorted(got)}")
        self.expected, self.got = expected, got


class TensorOverlap(TermError):
    def __init__(self, names):
        super().__init__(f"tensor of terms sharing names {sorted(names)}")
        self.names = frozenset(names)


class DuplicateWireName(TermError):
    def __init__(self, names):
        super().__init__(f"wire list {list(names)} repeats a name")
        self.names = tuple(names)


class DiaBoundaryMismatch(TermError):
    pass


@dataclass(frozen=True)
class GenDecl:
    name: str
    arity: int
    coarity: int

    def __post_init__(self):
        if self.arity < 0 or self.coarity < 0:
            raise ValueError("arity and co-arity must be nonnegative")


@dataclass(frozen=True)
class Signature:
    decls: tuple[GenDecl, ...] = ()

    def __post_init__(self):
        names = [d.name for d in self.decls]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator in signature: {names}")

    @classmethod
    def of(cls, decls: Iterable[GenDecl]) -> "Signature":
        return cls(tuple(sorted(decls, key=lambda d: d.name)))

    def __contains__(self, name):
        return any(d.name == name for d in self.decls)

    def __getitem__(self, name) -> GenDecl:
        for d in self.decls:
            if d.name == name:
                return d
        raise UnknownGenerator(name)

    def __iter__(self):
        return iter(self.decls)

    def __len__(self):
        return len(self.decls)

    def names(self) -> list[str]:
        return [d.name for d in self.decls]

    def union(self, other: "Signature") -> "Signature":
        merged = {d.name: d for d in self.decls}
        for d in other.decls:
            if d.name in merged and merged[d.name] != d:
                raise ValueError(f"conflicting declarations for {d.name!r}")
            merged[d.name] = d
        return Signature.of(merged.values())


class SmtType(NamedTuple):
    m: int
    n: int


class NmtType(NamedTuple):
    dom: NameSet
    cod: NameSet


# ---------------------------------------------------------------- SMT terms


class SmtTerm:
    __slots__ = ()


@dataclass(frozen=True)
class Gen(SmtTerm):
    g: Union[str, "Dia"]


@dataclass(frozen=True)
class Id(SmtTerm):
    pass


@dataclass(frozen=True)
class Sym(SmtTerm):
    pass


@dataclass(frozen=True)
class Empty(SmtTerm):
    """The identity on 0 wires (unit of the tensor)."""


@dataclass(frozen=True)
class Seq(SmtTerm):
    left: SmtTerm
    right: SmtTerm


@dataclass(frozen=True)
class Tensor(SmtTerm):
    left: SmtTerm
    right: SmtTerm


# ---------------------------------------------------------------- NMT terms


class NmtTerm:
    __slots__ = ()


@dataclass(frozen=True)
class NGen(NmtTerm):
    a: NameList
    g: Union[str, SmtTerm]
    b: NameList

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "b", tuple(self.b))


@dataclass(frozen=True)
class NId(NmtTerm):
    a: Name


@dataclass(frozen=True)
class Delta(NmtTerm):
    a: Name
    b: Name


@dataclass(frozen=True)
class NEmpty(NmtTerm):
    """The identity on the empty name set."""


@dataclass(frozen=True)
class NSeq(NmtTerm):
    left: NmtTerm
    right: NmtTerm


@dataclass(frozen=True)
class NTensor(NmtTerm):
    left: NmtTerm
    right: NmtTerm


@dataclass(frozen=True)
class PermApp(NmtTerm):
    swap: tuple[Name, Name]
    body: NmtTerm

    def __post_init__(self):
        object.__setattr__(self, "swap", tuple(self.swap))

    @property
    def perm(self) -> Perm:
        return Perm.swap(*self.swap)


@dataclass(frozen=True)
class Dia:
    """The payload ``<a] body [b>`` of a dia'd ordinal generator."""

    a: NameList
    body: NmtTerm
    b: NameList

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "b", tuple(self.b))


# ---------------------------------------------------------------- typing


def _check_distinct(names):
    if len(set(names)) != len(names):
        raise DuplicateWireName(names)


@lru_cache(maxsize=1 << 18)
def smt_type(t: SmtTerm, sig: Signature) -> SmtType:
    if isinstance(t, Gen):
        g = t.g
        if isinstance(g, Dia):
            _check_distinct(g.a)
            _check_distinct(g.b)
            dom, cod = nmt_type(g.body, sig)
            if frozenset(g.a) != dom or frozenset(g.b) != cod:
                raise DiaBoundaryMismatch(
                    f"lists {list(g.a)}, {list(g.b)} do not enumerate {sorted(dom)} -> {sorted(cod)}")
            return SmtType(len(g.a), len(g.b))
        d = sig[g]
        return SmtType(d.arity, d.coarity)
    if isinstance(t, Id):
        return SmtType(1, 1)
    if isinstance(t, Sym):
        return SmtType(2, 2)
    if isinstance(t, Empty):
        return SmtType(0, 0)
    if isinstance(t, Seq):
        m, n = smt_type(t.left, sig)
        n2, o = smt_type(t.right, sig)
        if n != n2:
            raise SeqArityMismatch(n, n2)
        return SmtType(m, o)
    if isinstance(t, Tensor):
        m, n = smt_type(t.left, sig)
        o, p = smt_type(t.right, sig)
        return SmtType(m + o, n + p)
    raise TypeError(f"not an SMT term: {t!r}")


@lru_cache(maxsize=1 << 18)
def nmt_type(t: NmtTerm, sig: Signature) -> NmtType:
    if isinstance(t, NGen):
        _check_distinct(t.a)
        _check_distinct(t.b)
        if isinstance(t.g, SmtTerm):
            m, n = smt_type(t.g, sig)
            name = "box"
        else:
            d = sig[t.g]
            m, n = d.arity, d.coarity
            name = t.g
        if (len(t.a), len(t.b)) != (m, n):
            raise GeneratorArityMismatch(name, (m, n), (len(t.a), len(t.b)))
        return NmtType(frozenset(t.a), frozenset(t.b))
    if isinstance(t, NId):
        s = frozenset((t.a,))
        return NmtType(s, s)
    if isinstance(t, Delta):
        return NmtType(frozenset((t.a,)), frozenset((t.b,)))
    if isinstance(t, NEmpty):
        return NmtType(frozenset(), frozenset())
    if isinstance(t, NSeq):
        a, b = nmt_type(t.left, sig)
        b2, c = nmt_type(t.right, sig)
        if b != b2:
            raise SeqDomainMismatch(b, b2)
        return NmtType(a, c)
    if isinstance(t, NTensor):
        a, b = nmt_type(t.left, sig)
        a2, b2 = nmt_type(t.right, sig)
        clash = (a & a2) | (b & b2)
        if clash:
            raise TensorOverlap(clash)
        return NmtType(a | a2, b | b2)
    if isinstance(t, PermApp):
        p = t.perm
        a, b = nmt_type(t.body, sig)
        return NmtType(p.act(a), p.act(b))
    raise TypeError(f"not an NMT term: {t!r}")


def smt_typecheck(t: SmtTerm, sig: Signature) -> SmtType:
    return smt_type(t, sig)


def nmt_typecheck(t: NmtTerm, sig: Signature) -> NmtType:
    return nmt_type(t, sig)


def well_typed(t, sig: Signature) -> bool:
    try:
        typecheck(t, sig)
    except TermError:
        return False
    return True


def typecheck(t, sig: Signature):
    if isinstance(t, SmtTerm):
        return smt_type(t, sig)
    return nmt_type(t, sig)


def nmt_support(t: NmtTerm, sig: Signature) -> NameSet:
    a, b = nmt_type(t, sig)
    return a | b


# ---------------------------------------------------------------- structure


def is_smt(t) -> bool:
    return isinstance(t, SmtTerm)


def term_size(t) -> int:
    """Number of AST nodes; a boxed/dia'd payload counts with its own size."""
    if isinstance(t, (Seq, Tensor, NSeq, NTensor)):
        return 1 + term_size(t.left) + term_size(t.right)
    if isinstance(t, PermApp):
        return 1 + term_size(t.body)
    if isinstance(t, NGen) and isinstance(t.g, SmtTerm):
        return 1 + term_size(t.g)
    if isinstance(t, Gen) and isinstance(t.g, Dia):
        return 1 + term_size(t.g.body)
    return 1


def subterms(t) -> Iterable:
    """Yield every subterm in the same calculus (payloads excluded), post-order."""
    if isinstance(t, (Seq, Tensor, NSeq, NTensor)):
        yield from subterms(t.left)
        yield from subterms(t.right)
    elif isinstance(t, PermApp):
        yield from subterms(t.body)
    yield t


def names_in(t) -> set[Name]:
    """Every name occurring anywhere in ``t``, payloads included."""
    out: set[Name] = set()
    stack = [t]
    while stack:
        x = stack.pop()
        if isinstance(x, (Seq, Tensor, NSeq, NTensor)):
            stack += [x.left, x.right]
        elif isinstance(x, PermApp):
            out.update(x.swap)
            stack.append(x.body)
        elif isinstance(x, NGen):
            out.update(x.a)
            out.update(x.b)
            if isinstance(x.g, SmtTerm):
                stack.append(x.g)
        elif isinstance(x, NId):
            out.add(x.a)
        elif isinstance(x, Delta):
            out.update((x.a, x.b))
        elif isinstance(x, Gen) and isinstance(x.g, Dia):
            out.update(x.g.a)
            out.update(x.g.b)
            stack.append(x.g.body)
    return out


def generators_in(t) -> set[str]:
    """Names of base generators used in ``t`` (looking inside payloads)."""
    out: set[str] = set()
    stack = [t]
    while stack:
        x = stack.pop()
        if isinstance(x, (Seq, Tensor, NSeq, NTensor)):
            stack += [x.left, x.right]
        elif isinstance(x, PermApp):
            stack.append(x.body)
        elif isinstance(x, NGen):
            if isinstance(x.g, str):
                out.add(x.g)
            else:
                stack.append(x.g)
        elif isinstance(x, Gen):
            if isinstance(x.g, str):
                out.add(x.g)
            else:
                stack.append(x.g.body)
    return out


def has_permapp(t: NmtTerm) -> bool:
    return any(isinstance(s, PermApp) for s in subterms(t))


# ---------------------------------------------------------------- permutation action


def nmt_perm_action(p: Perm, t: NmtTerm) -> NmtTerm:
    """Push ``p`` down to the leaves of ``t``; the result has no ``PermApp``."""
    if isinstance(t, NGen):
        return NGen(p.act(t.a), t.g, p.act(t.b))
    if isinstance(t, NId):
        return NId(p(t.a))
    if isinstance(t, Delta):
        return Delta(p(t.a), p(t.b))
    if isinstance(t, NEmpty):
        return t
    if isinstance(t, NSeq):
        return NSeq(nmt_perm_action(p, t.left), nmt_perm_action(p, t.right))
    if isinstance(t, NTensor):
        return NTensor(nmt_perm_action(p, t.left), nmt_perm_action(p, t.right))
    if isinstance(t, PermApp):
        return nmt_perm_action(t.perm.then(p), t.body)
    raise TypeError(f"not an NMT term: {t!r}")


def tensor_all(parts: Sequence, unit):
    """Left-nested tensor of ``parts``; ``unit`` when empty."""
    if not parts:
        return unit
    cls = NTensor if isinstance(unit, NmtTerm) else Tensor
    return reduce(cls, parts)


def seq_all(parts: Sequence):
    cls = NSeq if isinstance(parts[0], NmtTerm) else Seq
    return reduce(cls, parts)


def perm_as_nmt_term(p: Perm, names: Iterable[Name]) -> NmtTerm:
    """``p`` restricted to ``names`` as a tensor of renamings, in sorted order."""
    return tensor_all([Delta(a, p(a)) for a in sorted(names)], NEmpty())


def renaming(a: NameList, b: NameList) -> NmtTerm:
    """The bijection ``[a|b]`` sending ``a[i]`` to ``b[i]``."""
    if len(a) != len(b):
        raise ValueError("renaming between lists of different length")
    return tensor_all([Delta(x, y) for x, y in zip(a, b)], NEmpty())


def nmt_identity(names: Iterable[Name]) -> NmtTerm:
    return tensor_all([NId(a) for a in sorted(names)], NEmpty())


def smt_identity(k: int) -> SmtTerm:
    return tensor_all([Id()] * k, Empty())


def smt_permutation(f: Sequence[int]) -> SmtTerm:
    """A term of symmetries sending wire ``i`` to wire ``f[i]``.

    Built by bubble sort from adjacent twists; the identity permutation gives
    the identity term.
    """
    k = len(f)
    if sorted(f) != list(range(k)):
        raise ValueError(f"not a permutation of {k} wires: {list(f)}")
    arr = list(f)
    layers = []
    changed = True
    while changed:
        changed = False
        for j in range(k - 1):
            if arr[j] > arr[j + 1]:
                arr[j], arr[j + 1] = arr[j + 1], arr[j]
                layers.append(tensor_all([Id()] * j + [Sym()] + [Id()] * (k - j - 2), Empty()))
                changed = True
    if not layers:
        return smt_identity(k)
    return seq_all(layers)


def realign(a: NameList, a2: NameList) -> SmtTerm:
    """The symmetry ``<a|a2>`` sending ``i`` to ``j`` whenever ``a[i] == a2[j]``."""
    if len(a) != len(a2) or set(a) != set(a2):
        raise ValueError(f"{list(a)} and {list(a2)} do not list the same names")
    pos = {x: j for j, x in enumerate(a2)}
    return smt_permutation([pos[x] for x in a])


def smt_canonical_symmetry(m: int, n: int) -> SmtTerm:
    """The block swap ``m + n -> n + m``: ``i -> i+n`` for ``i < m``, else ``i -> i-m``."""
    if m < 0 or n < 0:
        raise ValueError("negative block size")
    if m == 0 or n == 0:
        return smt_identity(m + n)
    if m == 1 and n == 1:
        return Sym()
    if m == 1:
        # move the single wire past the first wire, then past the remaining n-1
        return Seq(tensor_all([Sym()] + [Id()] * (n - 1), Empty()),
                   Tensor(Id(), smt_canonical_symmetry(1, n - 1)))
    # move the last wire of the m-block past the n-block, then the rest
    return Seq(Tensor(smt_identity(m - 1), smt_canonical_symmetry(1, n)),
               Tensor(smt_canonical_symmetry(m - 1, n), Id()))


def is_identity_smt(t: SmtTerm) -> bool:
    """Syntactic identity: a tensor of ``Id`` and ``Empty`` only."""
    if isinstance(t, (Id, Empty)):
        return True
    if isinstance(t, Tensor):
        return is_identity_smt(t.left) and is_identity_smt(t.right)
    return False


def is_identity_nmt(t: NmtTerm) -> bool:
    if isinstance(t, (NId, NEmpty)):
        return True
    if isinstance(t, NTensor):
        return is_identity_nmt(t.left) and is_identity_nmt(t.right)
    return False
