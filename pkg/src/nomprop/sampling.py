"""Random well-typed terms, for property tests and the acceptance suite."""
from __future__ import annotations

import random
from typing import Optional, Sequence

from .nominal import Name, Perm
from .terms import (
    Delta, Dia, Empty, Gen, Id, NEmpty, NGen, NId, NmtTerm, NSeq, NTensor, PermApp, Seq,
    Signature, SmtTerm, Sym, Tensor, nmt_type, smt_type, term_size,
)

POOL = tuple("abcdefghijklmnopqrstuvwxyz")


def random_perm(rng: random.Random, names: Sequence[Name] = POOL[:6]) -> Perm:
    image = list(names)
    rng.shuffle(image)
    return Perm.from_mapping(dict(zip(names, image)))


def random_list(rng: random.Random, names) -> tuple:
    out = sorted(names)
    rng.shuffle(out)
    return tuple(out)


class _Names:
    """Picks names from a pool, avoiding a growing set of names in use."""

    def __init__(self, rng, pool):
        self.rng = rng
        self.pool = list(pool)

    def pick(self, avoid, k: int = 1) -> tuple:
        free = [x for x in self.pool if x not in avoid]
        if len(free) < k:
            extra = (f"n{i}" for i in range(10 ** 6))
            free += [x for x in extra if x not in avoid][:k]
        return tuple(self.rng.sample(free, k))


def random_nmt(rng: random.Random, sig: Signature, size: int = 12, dom=None,
               permapp: bool = True, boxed: bool = False, smt_size: int = 6,
               pool: Sequence[Name] = POOL[:8], max_width: int = 4) -> NmtTerm:
    """A random nominal term with domain ``dom`` and roughly ``size`` nodes.

    With ``boxed`` the generator nodes carry random ordinal terms.
    """
    names = _Names(rng, pool)
    if dom is None:
        k = rng.randint(0, min(3, len(pool)))
        dom = frozenset(names.pick((), k))
    return _nmt(rng, sig, frozenset(dom), size, names, permapp, boxed, smt_size, max_width)


def _nmt_leaf(rng, sig, A, names, boxed, smt_size, max_width):
    options = []
    if not A:
        options.append(lambda: NEmpty())
    if len(A) == 1:
        (a,) = A
        options.append(lambda: NId(a))
        options.append(lambda: Delta(a, names.pick(set())[0] if rng.random() < 0.5 else a))
    if boxed:
        def box():
            n = rng.randint(0, max(0, min(max_width, 3)))
            f = random_smt(rng, sig, smt_size, len(A), max_width=max_width, cod=n)
            n = smt_type(f, sig).n
            return NGen(random_list(rng, A), f, names.pick(set(), n))
        options.append(box)
    else:
        for d in sig:
            if d.arity == len(A) and d.coarity <= max_width:
                options.append(lambda d=d: NGen(random_list(rng, A), d.name,
                                                names.pick(set(), d.coarity)))
    if not options:
        return None
    return rng.choice(options)()


def _nmt(rng, sig, A, size, names, permapp, boxed, smt_size, max_width) -> NmtTerm:
    if size <= 1 or (len(A) > 2 and rng.random() < 0.5):
        leaf = _nmt_leaf(rng, sig, A, names, boxed, smt_size, max_width)
        if leaf is not None and size <= 1:
            return leaf
        if len(A) >= 2 or leaf is None:
            return _nmt_split(rng, sig, A, max(size, 3), names, permapp, boxed, smt_size, max_width)
        return leaf
    choice = rng.random()
    if permapp and choice < 0.15:
        x, y = names.pick(set(), 2) if rng.random() < 0.5 else (
            rng.choice(sorted(A)) if A else names.pick(set())[0], names.pick(A)[0])
        p = Perm.swap(x, y)
        body = _nmt(rng, sig, p.act(A), size - 1, names, permapp, boxed, smt_size, max_width)
        return PermApp((x, y), body)
    if choice < 0.6:
        s1 = rng.randint(1, max(1, size - 2))
        left = _nmt(rng, sig, A, s1, names, permapp, boxed, smt_size, max_width)
        mid = nmt_type(left, sig).cod
        if len(mid) > max_width:
            return left
        right = _nmt(rng, sig, mid, max(1, size - 1 - s1), names, permapp, boxed, smt_size, max_width)
        return NSeq(left, right)
    return _nmt_split(rng, sig, A, size, names, permapp, boxed, smt_size, max_width)


def _nmt_split(rng, sig, A, size, names, permapp, boxed, smt_size, max_width) -> NmtTerm:
    items = sorted(A)
    rng.shuffle(items)
    cut = rng.randint(0, len(items))
    A1, A2 = frozenset(items[:cut]), frozenset(items[cut:])
    s1 = rng.randint(1, max(1, size - 2))
    left = _nmt(rng, sig, A1, s1, names, permapp, boxed, smt_size, max_width)
    right = _nmt(rng, sig, A2, max(1, size - 1 - s1), names, permapp, boxed, smt_size, max_width)
    clash = nmt_type(left, sig).cod & nmt_type(right, sig).cod
    if clash:
        # rename the clashing outputs of the right operand away
        cod_r = nmt_type(right, sig).cod
        avoid = set(nmt_type(left, sig).cod) | set(cod_r)
        fresh = iter(names.pick(avoid, len(clash)))
        ren = {x: (next(fresh) if x in clash else x) for x in sorted(cod_r)}
        parts = [Delta(x, y) if x != y else NId(x) for x, y in ren.items()]
        fix = parts[0]
        for p in parts[1:]:
            fix = NTensor(fix, p)
        right = NSeq(right, fix)
    return NTensor(left, right)


def random_smt(rng: random.Random, sig: Signature, size: int = 8, dom: Optional[int] = None,
               max_width: int = 4, cod: Optional[int] = None) -> SmtTerm:
    """A random ordinal term with arity ``dom`` and roughly ``size`` nodes.

    ``cod`` is a hint only; callers must read the actual type.
    """
    if dom is None:
        dom = rng.randint(0, 3)
    return _smt(rng, sig, dom, size, max_width)


def _smt_leaf(rng, sig, m, max_width):
    options = []
    if m == 0:
        options.append(Empty())
    if m == 1:
        options.append(Id())
    if m == 2:
        options.append(Sym())
    for d in sig:
        if d.arity == m and d.coarity <= max_width:
            options.append(Gen(d.name))
    return rng.choice(options) if options else None


def _smt(rng, sig, m, size, max_width) -> SmtTerm:
    if size <= 1:
        leaf = _smt_leaf(rng, sig, m, max_width)
        if leaf is not None:
            return leaf
        return _smt_split(rng, sig, m, 3, max_width)
    if rng.random() < 0.55:
        s1 = rng.randint(1, max(1, size - 2))
        left = _smt(rng, sig, m, s1, max_width)
        n = smt_type(left, sig).n
        if n > max_width:
            return left
        return Seq(left, _smt(rng, sig, n, max(1, size - 1 - s1), max_width))
    return _smt_split(rng, sig, m, size, max_width)


def _smt_split(rng, sig, m, size, max_width) -> SmtTerm:
    cut = rng.randint(0, m)
    s1 = rng.randint(1, max(1, size - 2))
    left = _smt(rng, sig, cut, s1, max_width)
    right = _smt(rng, sig, m - cut, max(1, size - 1 - s1), max_width)
    return Tensor(left, right)


def random_dia(rng: random.Random, sig: Signature, size: int = 6, dom: Optional[int] = None,
               nmt_size: int = 6, max_width: int = 4, pool: Sequence[Name] = POOL[:8]) -> SmtTerm:
    """A random ordinal term whose generators are dia'd random nominal terms."""
    if dom is None:
        dom = rng.randint(0, 3)
    return _dia(rng, sig, dom, size, nmt_size, max_width, pool)


def _dia(rng, sig, m, size, nmt_size, max_width, pool) -> SmtTerm:
    if size <= 1 or rng.random() < 0.3:
        if m == 1 and rng.random() < 0.2:
            return Id()
        if m == 2 and rng.random() < 0.2:
            return Sym()
        names = _Names(rng, pool)
        A = frozenset(names.pick((), m))
        body = random_nmt(rng, sig, nmt_size, A, pool=pool, max_width=max_width)
        dom_, cod_ = nmt_type(body, sig)
        return Gen(Dia(random_list(rng, dom_), body, random_list(rng, cod_)))
    if rng.random() < 0.55:
        s1 = rng.randint(1, max(1, size - 2))
        left = _dia(rng, sig, m, s1, nmt_size, max_width, pool)
        n = smt_type(left, sig).n
        if n > max_width:
            return left
        return Seq(left, _dia(rng, sig, n, max(1, size - 1 - s1), nmt_size, max_width, pool))
    cut = rng.randint(0, m)
    s1 = rng.randint(1, max(1, size - 2))
    return Tensor(_dia(rng, sig, cut, s1, nmt_size, max_width, pool),
                  _dia(rng, sig, m - cut, max(1, size - 1 - s1), nmt_size, max_width, pool))


def bounded(gen, bound: int, rng: random.Random, tries: int = 200):
    """Call ``gen(rng)`` until the result has at most ``bound`` nodes."""
    for _ in range(tries):
        t = gen(rng)
        if term_size(t) <= bound:
            return t
    raise RuntimeError(f"could not sample a term of size <= {bound}")
