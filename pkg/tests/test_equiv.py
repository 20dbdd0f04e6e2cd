import itertools
import json
import random

import pytest
from hypothesis import given

from conftest import seeds
from nomprop.equiv import (
    TypeMismatch, completeness_probe, enumerate_nmt, enumerate_smt, normalize_bijection_nmt,
    semantic_equiv, th_closure,
)
from nomprop.sampling import random_nmt
from nomprop.syntax import parse_nmt
from nomprop.terms import (
    Delta, Id, NEmpty, NGen, NId, NSeq, NTensor, Seq, Signature, Sym, Tensor,
    nmt_type,
)
from nomprop.theories import UnknownTheory, builtin_theory, eval_nmt, rename_term

EMPTY = Signature()


def test_semantic_equiv_examples():
    ea, eb = NGen((), "eta", "a"), NGen((), "eta", "b")
    assert semantic_equiv(NTensor(ea, eb), NTensor(eb, ea), "nI")
    assert semantic_equiv(Seq(Sym(), Sym()), Tensor(Id(), Id()), "F")
    assert not semantic_equiv(Sym(), Tensor(Id(), Id()), "F")
    with pytest.raises(TypeMismatch):
        semantic_equiv(Delta("a", "b"), Delta("a", "c"), "nB")
    with pytest.raises(TypeMismatch):
        semantic_equiv(Id(), Delta("a", "b"), "nB")


def test_closure_examples():
    t = Sym()
    assert th_closure(builtin_theory("B"), [t]).equivalent(t, t)
    ss, ii = Seq(Sym(), Sym()), Tensor(Id(), Id())
    cu = th_closure(builtin_theory("B"), [ss, ii])
    assert cu.equivalent(ss, ii) and cu.fixpoint_reached
    d = NSeq(Delta("a", "b"), Delta("b", "c"))
    cu = th_closure(builtin_theory("nB"), [d, Delta("a", "c")])
    assert cu.equivalent(d, Delta("a", "c"))


def test_closure_does_not_merge_distinct_values():
    twist = parse_nmt("d(a,b) * d(b,a)")
    ident = parse_nmt("d(a,a) * d(b,b)")
    cu = th_closure(builtin_theory("nB"), [twist, ident])
    assert not cu.equivalent(twist, ident)


def test_closure_uses_theory_equations():
    th = builtin_theory("nF")
    eq = th.equations[1]
    cu = th_closure(th, [eq.lhs, eq.rhs])
    assert cu.equivalent(eq.lhs, eq.rhs)
    renamed_l = rename_term(eq.lhs, {"a": "c", "b": "a", "x": "y"})
    renamed_r = rename_term(eq.rhs, {"a": "c", "b": "a", "x": "y"})
    assert th_closure(th, [renamed_l, renamed_r]).equivalent(renamed_l, renamed_r)


def test_budget_bounds_merges():
    ss, ii = Seq(Sym(), Sym()), Tensor(Id(), Id())
    cu = th_closure(builtin_theory("B"), [ss, ii], budget=0)
    assert not cu.fixpoint_reached and not cu.equivalent(ss, ii)
    with pytest.raises(ValueError):
        th_closure(builtin_theory("B"), [ss], budget=-1)


def test_larger_universe_never_splits_classes():
    th = builtin_theory("nI")
    small = enumerate_nmt(th.signature, 3, ("a", "b"))
    large = enumerate_nmt(th.signature, 4, ("a", "b"))
    cs, cl = th_closure(th, small), th_closure(th, large)
    for s, t in itertools.combinations(small, 2):
        if cs.equivalent(s, t):
            assert cl.equivalent(s, t)


def test_normal_form_examples():
    nf = normalize_bijection_nmt(NSeq(Delta("a", "b"), Delta("b", "c")))
    assert nf.mapping == {"a": "c"}
    swap = normalize_bijection_nmt(parse_nmt("d(b,a) * d(a,b)"))
    assert swap.term == NTensor(Delta("a", "b"), Delta("b", "a"))
    assert str(normalize_bijection_nmt(NId("a"))) == "d(a,a)"
    assert normalize_bijection_nmt(NEmpty()).term == NEmpty()


def _bij(rng):
    return random_nmt(rng, EMPTY, rng.randint(1, 10), pool=tuple("abcd"))


@given(seeds)
def test_normal_form_decides_bijections(seed):
    rng = random.Random(seed)
    t = _bij(rng)
    nf = normalize_bijection_nmt(t)
    assert eval_nmt(nf.term, "nB") == eval_nmt(t, "nB")
    # any term of the same type shares the normal form iff it is equal
    for _ in range(5):
        s = random_nmt(rng, EMPTY, rng.randint(1, 10), dom=nmt_type(t, EMPTY).dom, pool=tuple("abcd"))
        if nmt_type(s, EMPTY) != nmt_type(t, EMPTY):
            continue
        same = semantic_equiv(s, t, "nB")
        assert (normalize_bijection_nmt(s) == nf) == same


@given(seeds)
def test_internal_names_are_bound(seed):
    rng = random.Random(seed)
    t = random_nmt(rng, EMPTY, 6, pool=tuple("abcd"))
    mid = nmt_type(t, EMPTY).cod
    s = random_nmt(rng, EMPTY, 6, dom=mid, pool=tuple("abcd"))
    cod = nmt_type(s, EMPTY).cod
    # rename the middle wires to names used nowhere else
    rho = {x: "z" + x for x in mid}
    back = NSeq(NSeq(t, _renaming(rho)), NSeq(_renaming({v: k for k, v in rho.items()}), s))
    assert nmt_type(back, EMPTY).cod == cod
    assert normalize_bijection_nmt(back) == normalize_bijection_nmt(NSeq(t, s))


def _renaming(rho):
    parts = [Delta(a, b) for a, b in sorted(rho.items())]
    out = NEmpty()
    for p in parts:
        out = p if out == NEmpty() else NTensor(out, p)
    return out


def _count_oracle(sig, alphabet):
    # brute force: leaves, one PermApp layer, then size-3 composites of leaves
    names = list(alphabet)
    leaves = [NEmpty()] + [NId(x) for x in names] + [Delta(x, y) for x in names for y in names]
    for d in sig:
        for a in itertools.permutations(names, d.arity):
            for b in itertools.permutations(names, d.coarity):
                leaves.append(NGen(a, d.name, b))
    types = [nmt_type(t, sig) for t in leaves]
    swaps = len(names) * (len(names) - 1) // 2
    seqs = sum(1 for (_, b), (c, _) in itertools.product(types, types) if b == c)
    tens = sum(1 for (a, b), (c, d) in itertools.product(types, types) if not (a & c or b & d))
    return len(leaves), len(leaves) * swaps, len(leaves) * swaps * swaps + seqs + tens


def test_enumeration_counts_match_oracle():
    for tag in ("nB", "nI", "nF"):
        sig = builtin_theory(tag).signature
        n1, n2, n3 = _count_oracle(sig, "abc")
        assert len(enumerate_nmt(sig, 1)) == n1
        assert len(enumerate_nmt(sig, 2)) == n1 + n2
        assert len(enumerate_nmt(sig, 3)) == n1 + n2 + n3


def test_enumeration_counts_frozen():
    # values produced once by _count_oracle, then frozen
    assert [len(enumerate_nmt(EMPTY, k)) for k in (1, 2, 3)] == [13, 52, 309]
    sig_f = builtin_theory("nF").signature
    assert len(enumerate_nmt(sig_f, 3)) == 34 + 102 + 797
    # ordinal size 3, empty signature: 3 leaves, 3 sequences, 8 tensors within width 3
    assert [len(enumerate_smt(EMPTY, k)) for k in (1, 2, 3)] == [3, 3, 14]


def test_probe_reports():
    rep = completeness_probe("nB", 4)
    assert rep.sound and rep.coverage == 1.0 and rep.normal_form_mismatches == 0
    doc = rep.to_json()
    for key in ("theory", "size_bound", "budget", "pairs_total", "pairs_equal", "pairs_merged",
                "fixpoint_reached", "counterexamples"):
        assert key in doc
    json.dumps(doc)
    assert rep.pairs_equal <= rep.pairs_total


@pytest.mark.parametrize("tag", ["nI", "nS", "I", "S", "P"])
def test_small_probes_are_sound(tag):
    rep = completeness_probe(tag, 4)
    assert rep.unsound_pairs == 0
    assert rep.fixpoint_reached


def test_probe_rejects_candidate_relation_theory():
    with pytest.raises(UnknownTheory):
        completeness_probe("nR", 3)
