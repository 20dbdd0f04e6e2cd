from itertools import permutations

import pytest
from hypothesis import given

from conftest import SIG_F, nmt_terms, perms
from nomprop.nominal import Perm
from nomprop.terms import (
    Delta, DuplicateWireName, Empty, Gen, GeneratorArityMismatch, Id, NEmpty, NGen, NId, NSeq,
    NTensor, PermApp, Seq, SeqArityMismatch, SeqDomainMismatch, Sym, Tensor, TensorOverlap,
    UnknownGenerator, has_permapp, nmt_perm_action, nmt_support, nmt_type, perm_as_nmt_term,
    realign, smt_canonical_symmetry, smt_permutation, smt_type, term_size, well_typed,
)
from nomprop.theories import eval_smt

A, B, C = frozenset("a"), frozenset("b"), frozenset("c")


def test_smt_types():
    assert smt_type(Sym(), SIG_F) == (2, 2)
    assert smt_type(Seq(Id(), Id()), SIG_F) == (1, 1)
    assert smt_type(Tensor(Gen("mu"), Id()), SIG_F) == (3, 2)
    assert smt_type(Empty(), SIG_F) == (0, 0)


def test_smt_type_errors():
    with pytest.raises(UnknownGenerator):
        smt_type(Gen("nope"), SIG_F)
    with pytest.raises(SeqArityMismatch):
        smt_type(Seq(Gen("mu"), Sym()), SIG_F)


def test_nmt_types():
    assert nmt_type(Delta("a", "b"), SIG_F) == (A, B)
    assert nmt_type(NSeq(Delta("a", "b"), Delta("b", "c")), SIG_F) == (A, C)
    assert nmt_type(PermApp(("a", "c"), Delta("a", "b")), SIG_F) == (C, B)
    assert nmt_type(NEmpty(), SIG_F) == (frozenset(), frozenset())


def test_nmt_type_errors():
    with pytest.raises(TensorOverlap) as info:
        nmt_type(NTensor(NId("a"), NGen(("a", "b"), "mu", ("c",))), SIG_F)
    assert "a" in str(info.value)
    with pytest.raises(SeqDomainMismatch):
        nmt_type(NSeq(Delta("a", "b"), Delta("c", "d")), SIG_F)
    with pytest.raises(DuplicateWireName):
        nmt_type(NGen(("a", "a"), "mu", ("c",)), SIG_F)
    with pytest.raises(GeneratorArityMismatch):
        nmt_type(NGen(("a",), "mu", ("c",)), SIG_F)
    assert not well_typed(NTensor(Delta("a", "b"), Delta("c", "b")), SIG_F)


def test_support_is_boundary():
    assert nmt_support(NSeq(Delta("a", "b"), Delta("b", "c")), SIG_F) == frozenset("ac")
    assert nmt_support(NId("a"), SIG_F) == A
    assert nmt_support(NGen(("a", "b"), "mu", ("c",)), SIG_F) == frozenset("abc")


def test_perm_action_examples():
    ab = Perm.swap("a", "b")
    assert nmt_perm_action(ab, NId("a")) == NId("b")
    assert nmt_perm_action(ab, Delta("a", "b")) == Delta("b", "a")
    t = NSeq(NGen(("a", "b"), "mu", ("c",)), Delta("c", "d"))
    assert nmt_perm_action(Perm.identity(), t) == t
    nested = PermApp(("a", "b"), PermApp(("b", "c"), NId("a")))
    assert nmt_perm_action(Perm.identity(), nested) == NId("b")


def test_perm_as_term():
    assert perm_as_nmt_term(Perm.identity(), "a") == Delta("a", "a")
    assert perm_as_nmt_term(Perm.swap("a", "b"), "ab") == NTensor(Delta("a", "b"), Delta("b", "a"))
    assert perm_as_nmt_term(Perm.swap("a", "b"), "c") == Delta("c", "c")
    assert perm_as_nmt_term(Perm.swap("a", "b"), "") == NEmpty()


def _block_swap(m, n):
    # brute-force oracle: position i of the input lands at table[i]
    return tuple(i + n if i < m else i - m for i in range(m + n))


@pytest.mark.parametrize("m,n", [(a, b) for a in range(4) for b in range(4)])
def test_canonical_symmetry(m, n):
    t = smt_canonical_symmetry(m, n)
    assert smt_type(t, SIG_F) == (m + n, m + n)
    assert eval_smt(t).table == _block_swap(m, n)


def test_canonical_symmetry_small_cases():
    assert smt_canonical_symmetry(1, 1) == Sym()
    assert smt_canonical_symmetry(0, 2) == Tensor(Id(), Id())
    assert eval_smt(smt_canonical_symmetry(2, 3)).table == (3, 4, 0, 1, 2)


@pytest.mark.parametrize("f", list(permutations(range(4))))
def test_smt_permutation_realises_table(f):
    assert eval_smt(smt_permutation(f)).table == f


def test_realign_moves_names():
    t = realign(("a", "b", "c"), ("c", "a", "b"))
    assert eval_smt(t).table == (1, 2, 0)


def test_term_size_counts_nodes():
    assert term_size(Seq(Id(), Tensor(Id(), Sym()))) == 5
    assert term_size(NGen(("a",), Seq(Id(), Id()), ("b",))) == 4


@given(nmt_terms(), perms())
def test_typing_is_equivariant(t, p):
    dom, cod = nmt_type(t, SIG_F)
    pt = nmt_perm_action(p, t)
    assert not has_permapp(pt)
    assert nmt_type(pt, SIG_F) == (p.act(dom), p.act(cod))
    assert nmt_support(pt, SIG_F) == p.act(dom | cod)


@given(nmt_terms(), perms(), perms())
def test_perm_action_composes(t, p, q):
    assert nmt_perm_action(q, nmt_perm_action(p, t)) == nmt_perm_action(p.then(q), t)
