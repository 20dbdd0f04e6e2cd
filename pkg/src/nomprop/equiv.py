"""Deciding equality of terms.

Three procedures live here: comparison in a semantic model, a bounded
deductive closure over an explicit finite universe of terms, and the
normal form of generator-free nominal terms as a union of renamings.
"""
from __future__ import annotations

import itertools
import time
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .nominal import Name, Perm
from .terms import (
    Delta, Empty, Gen, Id, NEmpty, NGen, NId, NmtTerm, NSeq, NTensor, PermApp, Seq,
    Signature, SmtTerm, Sym, Tensor, TermError, is_identity_nmt, is_identity_smt,
    names_in, nmt_perm_action, nmt_type, smt_canonical_symmetry, smt_type, subterms,
    tensor_all,
)
from .theories import (
    TheoryPresentation, UnknownTheory, _eval_nmt, _eval_smt, builtin_theory,
    eval_nmt, evaluate, model_signature, ordinal_tag, rename_term,
)

PROBE_ALPHABET = ("a", "b", "c")


class TypeMismatch(TermError):
    pass


def semantic_equiv(t1, t2, tag: str, sig: Optional[Signature] = None) -> bool:
    """Whether ``t1`` and ``t2`` denote the same arrow of model ``tag``."""
    sig = sig or model_signature(tag)
    typer = smt_type if isinstance(t1, SmtTerm) else nmt_type
    if isinstance(t1, SmtTerm) != isinstance(t2, SmtTerm):
        raise TypeMismatch("terms belong to different calculi")
    ty1, ty2 = typer(t1, sig), typer(t2, sig)
    if ty1 != ty2:
        raise TypeMismatch(f"types differ: {_show_type(ty1)} and {_show_type(ty2)}")
    return evaluate(t1, tag, sig) == evaluate(t2, tag, sig)


def _show_type(ty) -> str:
    if isinstance(ty[0], int):
        return f"{ty[0]} -> {ty[1]}"
    return f"{{{','.join(sorted(ty[0]))}}} -> {{{','.join(sorted(ty[1]))}}}"


# ---------------------------------------------------------------- bijection normal form


@dataclass(frozen=True)
class BijNormalForm:
    entries: tuple[tuple[Name, Name], ...]

    @property
    def mapping(self) -> dict:
        return dict(self.entries)

    @property
    def term(self) -> NmtTerm:
        return tensor_all([Delta(a, b) for a, b in self.entries], NEmpty())

    def __str__(self):
        from .syntax import print_term
        return print_term(self.term)


def normalize_bijection_nmt(t: NmtTerm) -> BijNormalForm:
    """The renaming denoted by a generator-free nominal term."""
    f = eval_nmt(t, "nB", Signature())
    return BijNormalForm(tuple(sorted(f.graph)))


# ---------------------------------------------------------------- closure


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        p = self.parent
        root = i
        while p[root] != root:
            root = p[root]
        while p[i] != root:
            p[i], i = root, p[i]
        return root

    def union(self, i: int, j: int) -> bool:
        ri, rj = self.find(i), self.find(j)
        if ri == rj:
            return False
        if ri < rj:
            ri, rj = rj, ri
        self.parent[ri] = rj
        return True


@dataclass
class ClosureUniverse:
    theory: TheoryPresentation
    terms: list
    partition: UnionFind
    index: dict
    fixpoint_reached: bool = False
    unions: int = 0
    rounds: int = 0

    def find(self, t) -> int:
        return self.partition.find(self.index[t])

    def equivalent(self, s, t) -> bool:
        return self.find(s) == self.find(t)

    def classes(self) -> list[list]:
        groups: dict[int, list] = defaultdict(list)
        for i, t in enumerate(self.terms):
            groups[self.partition.find(i)].append(t)
        return list(groups.values())


def _renaming_map(t: NmtTerm) -> Optional[dict]:
    """For a tensor tree of ``id`` and ``d`` leaves, the renaming it denotes."""
    if isinstance(t, NId):
        return {t.a: t.a}
    if isinstance(t, Delta):
        return {t.a: t.b}
    if isinstance(t, NEmpty):
        return {}
    if isinstance(t, NTensor):
        left = _renaming_map(t.left)
        if left is None:
            return None
        right = _renaming_map(t.right)
        if right is None:
            return None
        return {**left, **right}
    return None


def _typed(t, sig, typer) -> bool:
    try:
        typer(t, sig)
    except TermError:
        return False
    return True


def _nmt_axiom_partners(u: NmtTerm, sig: Signature) -> Iterable[NmtTerm]:
    """Terms related to ``u`` by one instance of a base equation applied at the root."""
    if isinstance(u, NSeq):
        l, r = u.left, u.right
        if isinstance(l, NSeq):
            yield NSeq(l.left, NSeq(l.right, r))
        if isinstance(r, NSeq):
            yield NSeq(NSeq(l, r.left), r.right)
        if is_identity_nmt(r):
            yield l
        if is_identity_nmt(l):
            yield r
        if isinstance(l, NTensor) and isinstance(r, NTensor):
            cand = NTensor(NSeq(l.left, r.left), NSeq(l.right, r.right))
            if _typed(cand, sig, nmt_type):
                yield cand
        if isinstance(l, Delta) and isinstance(r, Delta):
            yield Delta(l.a, r.b)
        if isinstance(r, NGen):
            rho = _renaming_map(l)
            if rho is not None:
                inv = {y: x for x, y in rho.items()}
                yield NGen(tuple(inv[x] for x in r.a), r.g, r.b)
        if isinstance(l, NGen):
            rho = _renaming_map(r)
            if rho is not None:
                yield NGen(l.a, l.g, tuple(rho[y] for y in l.b))
        # interchange against an empty boundary: x ; (y * z) = (x ; y) * z when dom z is empty
        if isinstance(r, NTensor):
            if not nmt_type(r.right, sig).dom:
                yield NTensor(NSeq(l, r.left), r.right)
            if not nmt_type(r.left, sig).dom:
                yield NTensor(r.left, NSeq(l, r.right))
        if isinstance(l, NTensor):
            if not nmt_type(l.right, sig).cod:
                yield NTensor(NSeq(l.left, r), l.right)
            if not nmt_type(l.left, sig).cod:
                yield NTensor(l.left, NSeq(l.right, r))
    elif isinstance(u, NTensor):
        l, r = u.left, u.right
        yield NTensor(r, l)
        if isinstance(l, NEmpty):
            yield r
        if isinstance(r, NEmpty):
            yield l
        if isinstance(l, NTensor):
            yield NTensor(l.left, NTensor(l.right, r))
        if isinstance(r, NTensor):
            yield NTensor(NTensor(l, r.left), r.right)
        if isinstance(l, NSeq) and isinstance(r, NSeq):
            cand = NSeq(NTensor(l.left, r.left), NTensor(l.right, r.right))
            if _typed(cand, sig, nmt_type):
                yield cand
        for x, other, flip in ((l, r, False), (r, l, True)):
            if isinstance(x, NSeq):
                ty = nmt_type(other, sig)
                pair = (lambda p, q: NTensor(q, p)) if flip else NTensor
                if not ty.dom:
                    yield NSeq(x.left, pair(x.right, other))
                if not ty.cod:
                    yield NSeq(pair(x.left, other), x.right)
    elif isinstance(u, PermApp):
        b, s = u.body, u.swap
        if isinstance(b, NSeq):
            yield NSeq(PermApp(s, b.left), PermApp(s, b.right))
        elif isinstance(b, NTensor):
            yield NTensor(PermApp(s, b.left), PermApp(s, b.right))
        yield nmt_perm_action(u.perm, b)
    elif isinstance(u, Delta):
        if u.a == u.b:
            yield NId(u.a)


def _smt_axiom_partners(u: SmtTerm, sig: Signature) -> Iterable[SmtTerm]:
    if isinstance(u, Seq):
        l, r = u.left, u.right
        if isinstance(l, Seq):
            yield Seq(l.left, Seq(l.right, r))
        if isinstance(r, Seq):
            yield Seq(Seq(l, r.left), r.right)
        if is_identity_smt(r):
            yield l
        if is_identity_smt(l):
            yield r
        if isinstance(l, Sym) and isinstance(r, Sym):
            yield Tensor(Id(), Id())
        if isinstance(l, Tensor) and isinstance(r, Tensor):
            cand = Tensor(Seq(l.left, r.left), Seq(l.right, r.right))
            if _typed(cand, sig, smt_type):
                yield cand
        # naturality, read from either side
        if isinstance(l, Tensor):
            (m, n), (o, p) = smt_type(l.left, sig), smt_type(l.right, sig)
            if _is_symmetry(r, n, p):
                yield Seq(smt_canonical_symmetry(m, o), Tensor(l.right, l.left))
        if isinstance(r, Tensor):
            (o, p), (m, n) = smt_type(r.left, sig), smt_type(r.right, sig)
            if _is_symmetry(l, m, o):
                yield Seq(Tensor(r.right, r.left), smt_canonical_symmetry(n, p))
        if isinstance(r, Tensor):
            if smt_type(r.right, sig).m == 0:
                yield Tensor(Seq(l, r.left), r.right)
            if smt_type(r.left, sig).m == 0:
                yield Tensor(r.left, Seq(l, r.right))
        if isinstance(l, Tensor):
            if smt_type(l.right, sig).n == 0:
                yield Tensor(Seq(l.left, r), l.right)
            if smt_type(l.left, sig).n == 0:
                yield Tensor(l.left, Seq(l.right, r))
    elif isinstance(u, Tensor):
        l, r = u.left, u.right
        if isinstance(l, Empty):
            yield r
        if isinstance(r, Empty):
            yield l
        if isinstance(l, Tensor):
            yield Tensor(l.left, Tensor(l.right, r))
        if isinstance(r, Tensor):
            yield Tensor(Tensor(l, r.left), r.right)
        if isinstance(l, Seq) and isinstance(r, Seq):
            yield Seq(Tensor(l.left, r.left), Tensor(l.right, r.right))
        if isinstance(l, Seq):
            m, n = smt_type(r, sig)
            if m == 0:
                yield Seq(l.left, Tensor(l.right, r))
            if n == 0:
                yield Seq(Tensor(l.left, r), l.right)
        if isinstance(r, Seq):
            m, n = smt_type(l, sig)
            if m == 0:
                yield Seq(r.left, Tensor(l, r.right))
            if n == 0:
                yield Seq(Tensor(l, r.left), r.right)


def _is_symmetry(t: SmtTerm, m: int, n: int) -> bool:
    if m == 0 or n == 0:
        return is_identity_smt(t)
    return t == smt_canonical_symmetry(m, n)


def _zones(eq_side, sig) -> dict:
    """Classify each name of an equation side as input, output or internal wire."""
    dom, cod = nmt_type(eq_side, sig)
    out = {}
    for x in names_in(eq_side):
        out[x] = ("d" if x in dom else "") + ("c" if x in cod else "") or "i"
    return out


def _may_share(z1: str, z2: str) -> bool:
    """Two pattern names may land on one name only if one is an input and the other an output."""
    if "i" in (z1, z2):
        return False
    return not (set(z1) & set(z2))


def _match(pat, t, rho: dict, zones: dict) -> bool:
    """Extend the renaming ``rho`` so that ``rho(pat) == t``.

    Distinct pattern names must stay distinct, except that an input name may
    coincide with an output name: such an instance is the original one
    post-composed with a renaming, so it is still derivable.
    """
    def bind(x, y):
        if x in rho:
            return rho[x] == y
        for x2, y2 in rho.items():
            if y2 == y and not _may_share(zones[x], zones[x2]):
                return False
        rho[x] = y
        return True

    if type(pat) is not type(t):
        return False
    if isinstance(pat, (NSeq, NTensor)):
        return _match(pat.left, t.left, rho, zones) and _match(pat.right, t.right, rho, zones)
    if isinstance(pat, NGen):
        if pat.g != t.g or len(pat.a) != len(t.a) or len(pat.b) != len(t.b):
            return False
        return all(bind(x, y) for x, y in zip(pat.a + pat.b, t.a + t.b))
    if isinstance(pat, NId):
        return bind(pat.a, t.a)
    if isinstance(pat, Delta):
        return bind(pat.a, t.a) and bind(pat.b, t.b)
    if isinstance(pat, PermApp):
        return bind(pat.swap[0], t.swap[0]) and bind(pat.swap[1], t.swap[1]) and \
            _match(pat.body, t.body, rho, zones)
    return pat == t


def _instances_of_other_side(u, pat, other, zones, alphabet: Sequence[Name]) -> Iterable:
    rho: dict = {}
    if not _match(pat, u, rho, zones):
        return
    extra = sorted(names_in(other) - set(rho))
    free = [x for x in alphabet if x not in rho.values()]
    for image in itertools.permutations(free, len(extra)):
        yield rename_term(other, {**rho, **dict(zip(extra, image))})


def th_closure(th: TheoryPresentation, universe: Iterable, budget: Optional[int] = None,
               alphabet: Optional[Sequence[Name]] = None) -> ClosureUniverse:
    """Close the universe under the rules of equational deduction.

    The universe is first completed with the subterms of its members, since
    congruence needs them as premises.  No new terms are synthesised: a rule
    fires only when its conclusion is already in the universe.  ``budget``
    bounds the number of successful merges (default ``10 * |universe|``).
    """
    sig = th.signature
    typer = smt_type if th.kind == "smt" else nmt_type
    terms: list = []
    index: dict = {}
    for t in universe:
        for s in subterms(t):
            if s not in index:
                typer(s, sig)
                index[s] = len(terms)
                terms.append(s)
    n = len(terms)
    if budget is None:
        budget = 10 * n
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    if alphabet is None:
        names: set = set()
        for t in terms:
            names |= names_in(t)
        alphabet = sorted(names)

    uf = UnionFind(n)
    cu = ClosureUniverse(th, terms, uf, index)

    # root instances of base axioms and of E, computed once
    partners = _nmt_axiom_partners if th.kind == "nmt" else _smt_axiom_partners
    sides = []
    for eq in th.equations:
        for pat, other in ((eq.lhs, eq.rhs), (eq.rhs, eq.lhs)):
            zones = _zones(pat, sig) if th.kind == "nmt" else None
            sides.append((pat, other, zones))
    root_pairs: list[tuple[int, int]] = []
    for i, u in enumerate(terms):
        for v in partners(u, sig):
            j = index.get(v)
            if j is not None and j != i:
                root_pairs.append((i, j))
        for pat, other, zones in sides:
            if th.kind == "smt":
                cands = [other] if u == pat else []
            else:
                cands = _instances_of_other_side(u, pat, other, zones, alphabet)
            for v in cands:
                j = index.get(v)
                if j is not None and j != i:
                    root_pairs.append((i, j))

    # renamings of whole terms: if w ~ w' then tau.w ~ tau.w'
    acts: list[tuple[tuple, int, int]] = []
    if th.kind == "nmt":
        swaps = list(itertools.combinations(alphabet, 2))
        for i, w in enumerate(terms):
            for s in swaps:
                j = index.get(nmt_perm_action(Perm.swap(*s), w))
                if j is not None and j != i:
                    acts.append((s, i, j))

    composite = [(i, type(t), index[t.left], index[t.right])
                 for i, t in enumerate(terms) if isinstance(t, (Seq, Tensor, NSeq, NTensor))]
    perm_nodes = [(i, t.swap, index[t.body]) for i, t in enumerate(terms) if isinstance(t, PermApp)]

    spent = 0

    def merge(i, j) -> bool:
        nonlocal spent
        if spent >= budget:
            raise _BudgetExhausted
        if uf.union(i, j):
            spent += 1
            return True
        return False

    try:
        for i, j in root_pairs:
            merge(i, j)
        while True:
            cu.rounds += 1
            changed = False
            seen: dict = {}
            for i, op, l, r in composite:
                key = (op, uf.find(l), uf.find(r))
                k = seen.setdefault(key, i)
                if k != i and merge(k, i):
                    changed = True
            for i, s, b in perm_nodes:
                key = ("perm", s, uf.find(b))
                k = seen.setdefault(key, i)
                if k != i and merge(k, i):
                    changed = True
            for s, i, j in acts:
                key = ("act", s, uf.find(i))
                k = seen.setdefault(key, j)
                if k != j and merge(k, j):
                    changed = True
            if not changed:
                cu.fixpoint_reached = True
                break
    except _BudgetExhausted:
        cu.fixpoint_reached = False
    cu.unions = spent
    return cu


class _BudgetExhausted(Exception):
    pass


# ---------------------------------------------------------------- enumeration


def enumerate_nmt(sig: Signature, size_bound: int,
                  alphabet: Sequence[Name] = PROBE_ALPHABET) -> list[NmtTerm]:
    """Every well-typed nominal term of at most ``size_bound`` nodes over ``alphabet``."""
    by_size: list[list[tuple[NmtTerm, tuple]]] = [[] for _ in range(size_bound + 1)]
    if size_bound < 1:
        return []
    leaves: list[NmtTerm] = [NEmpty()]
    leaves += [NId(x) for x in alphabet]
    leaves += [Delta(x, y) for x in alphabet for y in alphabet]
    for d in sig:
        for a in itertools.permutations(alphabet, d.arity):
            for b in itertools.permutations(alphabet, d.coarity):
                leaves.append(NGen(a, d.name, b))
    by_size[1] = [(t, nmt_type(t, sig)) for t in leaves]
    swaps = list(itertools.combinations(alphabet, 2))
    for k in range(2, size_bound + 1):
        out = by_size[k]
        for t, (a, b) in by_size[k - 1]:
            for s in swaps:
                p = Perm.swap(*s)
                out.append((PermApp(s, t), (p.act(a), p.act(b))))
        for i in range(1, k - 1):
            j = k - 1 - i
            by_dom: dict = defaultdict(list)
            for t, ty in by_size[j]:
                by_dom[ty[0]].append((t, ty))
            for t, (a, b) in by_size[i]:
                for s, (_, c) in by_dom.get(b, ()):
                    out.append((NSeq(t, s), (a, c)))
                for s, (a2, b2) in by_size[j]:
                    if not (a & a2) and not (b & b2):
                        out.append((NTensor(t, s), (a | a2, b | b2)))
    return [t for level in by_size for t, _ in level]


def enumerate_smt(sig: Signature, size_bound: int, max_boundary: int = 3) -> list[SmtTerm]:
    """Every well-typed ordinal term of at most ``size_bound`` nodes whose
    subterms all have arity and co-arity at most ``max_boundary``."""
    by_size: list[list[tuple[SmtTerm, tuple]]] = [[] for _ in range(size_bound + 1)]
    if size_bound < 1:
        return []
    leaves: list[SmtTerm] = [Empty(), Id(), Sym()] + [Gen(d.name) for d in sig]
    by_size[1] = [(t, tuple(smt_type(t, sig))) for t in leaves
                  if max(smt_type(t, sig)) <= max_boundary]
    for k in range(2, size_bound + 1):
        out = by_size[k]
        for i in range(1, k - 1):
            j = k - 1 - i
            by_dom: dict = defaultdict(list)
            for t, ty in by_size[j]:
                by_dom[ty[0]].append((t, ty))
            for t, (m, n) in by_size[i]:
                for s, (_, o) in by_dom.get(n, ()):
                    out.append((Seq(t, s), (m, o)))
                for s, (m2, n2) in by_size[j]:
                    if m + m2 <= max_boundary and n + n2 <= max_boundary:
                        out.append((Tensor(t, s), (m + m2, n + n2)))
    return [t for level in by_size for t, _ in level]


# ---------------------------------------------------------------- completeness probe


@dataclass
class ProbeReport:
    theory: str
    size_bound: int
    budget: int
    terms: int
    pairs_total: int
    pairs_equal: int
    pairs_merged: int
    unsound_pairs: int
    fixpoint_reached: bool
    counterexamples: list = field(default_factory=list)
    unsound_examples: list = field(default_factory=list)
    normal_form_mismatches: Optional[int] = None
    seconds: float = 0.0

    @property
    def sound(self) -> bool:
        return self.unsound_pairs == 0

    @property
    def coverage(self) -> float:
        return 1.0 if self.pairs_equal == 0 else self.pairs_merged / self.pairs_equal

    def to_json(self) -> dict:
        return {
            "theory": self.theory, "size_bound": self.size_bound, "budget": self.budget,
            "terms": self.terms, "pairs_total": self.pairs_total,
            "pairs_equal": self.pairs_equal, "pairs_merged": self.pairs_merged,
            "unsound_pairs": self.unsound_pairs, "soundness": 1.0 if self.sound else 0.0,
            "coverage": round(self.coverage, 6), "fixpoint_reached": self.fixpoint_reached,
            "counterexamples": self.counterexamples, "unsound_examples": self.unsound_examples,
            "normal_form_mismatches": self.normal_form_mismatches,
            "seconds": round(self.seconds, 3),
        }


def _pairs(n: int) -> int:
    return n * (n - 1) // 2


def completeness_probe(tag: str, size_bound: int, budget: Optional[int] = None,
                       max_examples: int = 20) -> ProbeReport:
    """Compare the bounded closure of a builtin theory with its model.

    Every merged pair must be semantically equal (soundness); the fraction
    of semantically equal pairs that the closure merges is the coverage.
    """
    from .syntax import print_term
    if tag in ("R", "nR"):
        raise UnknownTheory("the relation theory is a candidate presentation and is not probed")
    th = builtin_theory(tag)
    started = time.perf_counter()
    sig = th.signature
    if th.kind == "nmt":
        universe = enumerate_nmt(sig, size_bound)
        typer = nmt_type
    else:
        universe = enumerate_smt(sig, size_bound)
        typer = smt_type
    cu = th_closure(th, universe, budget, alphabet=PROBE_ALPHABET if th.kind == "nmt" else None)
    model = ordinal_tag(tag)
    memo: dict = {}
    evaluator = _eval_nmt if th.kind == "nmt" else _eval_smt

    # semantic class of each enumerated term, keyed by its denotation
    by_value: dict = defaultdict(list)
    by_type: dict = defaultdict(int)
    for t in universe:
        by_type[typer(t, sig)] += 1
        by_value[evaluator(t, model, sig, memo)].append(t)

    pairs_total = sum(_pairs(c) for c in by_type.values())
    pairs_equal = sum(_pairs(len(ts)) for ts in by_value.values())

    # closure classes restricted to the enumerated terms
    by_class: dict = defaultdict(list)
    for t in universe:
        by_class[cu.find(t)].append(t)
    pairs_merged = 0
    unsound = 0
    unsound_examples = []
    for members in by_class.values():
        split: dict = defaultdict(list)
        for t in members:
            split[evaluator(t, model, sig, memo)].append(t)
        pairs_merged += sum(_pairs(len(ts)) for ts in split.values())
        if len(split) > 1:
            groups = list(split.values())
            for g1, g2 in itertools.combinations(groups, 2):
                unsound += len(g1) * len(g2)
                if len(unsound_examples) < max_examples:
                    unsound_examples.append([print_term(g1[0]), print_term(g2[0])])

    counterexamples = []
    for ts in by_value.values():
        if len(counterexamples) >= max_examples:
            break
        reps: dict = {}
        for t in ts:
            reps.setdefault(cu.find(t), t)
        if len(reps) > 1:
            r = list(reps.values())
            counterexamples.append([print_term(r[0]), print_term(r[1])])

    # for bijections every term must also equal its rendered normal form
    nf_bad = None
    if ordinal_tag(tag) == "B" and th.kind == "nmt":
        nf_bad = 0
        for value, ts in by_value.items():
            nf = BijNormalForm(tuple(sorted(value.graph))).term
            if _eval_nmt(nf, model, sig, memo) != value:
                nf_bad += len(ts)

    return ProbeReport(
        normal_form_mismatches=nf_bad,
        theory=tag, size_bound=size_bound,
        budget=budget if budget is not None else 10 * len(cu.terms),
        terms=len(universe), pairs_total=pairs_total, pairs_equal=pairs_equal,
        pairs_merged=pairs_merged, unsound_pairs=unsound, fixpoint_reached=cu.fixpoint_reached,
        counterexamples=counterexamples, unsound_examples=unsound_examples,
        seconds=time.perf_counter() - started,
    )
