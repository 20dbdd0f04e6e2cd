import json
import random

import pytest
from hypothesis import given

from conftest import SIG_F, SIG_R, nmt_terms, perms, smt_terms, seeds
from nomprop.sampling import random_nmt, random_smt
from nomprop.syntax import parse_nmt
from nomprop.terms import (
    Delta, Gen, Id, NEmpty, NGen, NId, NSeq, NTensor, Seq, Sym, Tensor, nmt_perm_action, nmt_type,
    smt_canonical_symmetry, smt_type,
)
from nomprop.theories import (
    Equation, FiniteFunction, ModelMismatch, NamedFunction, PartialFunction, Relation,
    TheoryError, TheoryPresentation, UnknownTheory, builtin_theory, check_soundness, eval_nmt,
    eval_smt, identity_arrow, load_theory, model_signature, named_identity, resolve_theory,
    semantic_box, semantic_unbox,
)

MU = Gen("mu")
ETA = Gen("eta")


def test_smt_evaluation_examples():
    assert eval_smt(Seq(Sym(), Sym())) == identity_arrow(2)
    assert eval_smt(MU) == FiniteFunction(2, 1, [0, 0])
    assert eval_smt(Seq(Tensor(Id(), ETA), MU)) == identity_arrow(1)


def test_nmt_evaluation_examples():
    assert eval_nmt(NSeq(Delta("a", "b"), Delta("b", "c"))) == NamedFunction("a", "c", {"a": "c"})
    assert eval_nmt(NId("a")) == named_identity("a")
    unit = NSeq(NTensor(NId("a"), NGen((), "eta", ("x",))), NGen(("a", "x"), "mu", ("b",)))
    assert eval_nmt(unit) == eval_nmt(Delta("a", "b"))


def test_partial_and_relational_models():
    discard = Gen("eta_hat")
    assert eval_smt(discard, "P") == PartialFunction(1, 0, [None])
    copy = Gen("mu_hat")
    assert eval_smt(Seq(copy, MU), "R") == identity_arrow(1)
    assert eval_smt(Seq(MU, copy), "R") == Relation(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)])
    # a partial function followed by discarding is undefined everywhere
    assert eval_smt(Seq(MU, discard), "P").graph == frozenset()


def test_generator_outside_model_is_rejected():
    with pytest.raises(ModelMismatch):
        eval_smt(MU, "I")
    with pytest.raises(ModelMismatch):
        eval_nmt(NGen(("a",), "eta_hat", ()), "nF")


def test_semantic_box_formula():
    # [a,b> sym <c,d] is a |-> d, b |-> c
    f = eval_smt(Sym())
    assert semantic_box(f, ("a", "b"), ("c", "d")).mapping == {"a": "d", "b": "c"}
    g = eval_smt(MU)
    boxed = semantic_box(g, ("a", "b"), ("c",))
    assert semantic_unbox(boxed, ("b", "a"), ("c",)) == g


def test_model_signatures():
    assert model_signature("B").names() == []
    assert set(model_signature("nP").names()) == {"eta", "mu", "eta_hat"}
    assert set(SIG_R.names()) == {"eta", "mu", "eta_hat", "mu_hat"}


def test_builtin_theories():
    nb = builtin_theory("nB")
    assert len(nb.signature) == 0 and nb.equations == ()
    hat = builtin_theory("nP").signature["eta_hat"]
    assert (hat.arity, hat.coarity) == (1, 0)
    assert builtin_theory("B").equations == ()
    assert builtin_theory("F").kind == "smt"
    with pytest.raises(UnknownTheory):
        builtin_theory("Q")


@pytest.mark.parametrize("tag", ["nB", "nI", "nS", "nF", "nP", "nR", "B", "I", "S", "F", "P", "R"])
def test_bundled_theories_are_sound(tag):
    rep = check_soundness(builtin_theory(tag))
    assert rep.ok, rep.to_json()


def test_corrupted_axiom_is_reported():
    sig = builtin_theory("nF").signature
    good = Equation(parse_nmt("d(a,b) ; d(b,c)", sig), parse_nmt("d(a,c)", sig))
    bad = Equation(parse_nmt("d(a,c) * d(b,d)", sig), parse_nmt("d(a,d) * d(b,c)", sig))
    rep = check_soundness(TheoryPresentation("nmt", sig, (good, bad), "nF"))
    assert not rep.ok
    assert {f.index for f in rep.failures} == {1}


def test_theory_validation():
    with pytest.raises(TheoryError):
        TheoryPresentation("nmt", SIG_F, (Equation(Delta("a", "b"), Delta("a", "c")),), "nF")
    with pytest.raises(UnknownTheory):
        TheoryPresentation("smt", SIG_F, (), "X")


def test_load_theory_file(tmp_path):
    doc = {
        "kind": "smt", "model": "F",
        "generators": [{"name": "mu", "arity": 2, "coarity": 1}],
        "equations": [{"lhs": "sym ; mu", "rhs": "mu"}],
    }
    path = tmp_path / "comm.json"
    path.write_text(json.dumps(doc))
    th = resolve_theory(str(path))
    assert th.name == "comm"
    assert th.equations[0].lhs == Seq(Sym(), MU)
    assert check_soundness(th).ok
    assert load_theory(path).to_json()["equations"] == [{"lhs": "sym ; mu", "rhs": "mu"}]
    with pytest.raises(TheoryError):
        path.write_text(json.dumps({"generators": []}))
        load_theory(path)


def _table_compose(f, g):
    # independent oracle for total functions given as lists
    return [g[i] for i in f]


@given(smt_terms(), seeds)
def test_functoriality(t, seed):
    rng = random.Random(seed)
    s = random_smt(rng, SIG_F, 6, dom=smt_type(t, SIG_F).n)
    ft, fs = eval_smt(t).table, eval_smt(s).table
    assert list(eval_smt(Seq(t, s)).table) == _table_compose(ft, fs)


@given(nmt_terms(), seeds)
def test_nominal_functoriality(t, seed):
    rng = random.Random(seed)
    s = random_nmt(rng, SIG_F, 6, dom=nmt_type(t, SIG_F).cod)
    mt, ms = eval_nmt(t).mapping, eval_nmt(s).mapping
    assert eval_nmt(NSeq(t, s)).mapping == {a: ms[b] for a, b in mt.items()}


@given(nmt_terms(), seeds)
def test_tensor_commutes(t, seed):
    rng = random.Random(seed)
    s = random_nmt(rng, SIG_F, 6, pool=tuple("pqrstu"))
    assert eval_nmt(NTensor(t, s)) == eval_nmt(NTensor(s, t))


@given(nmt_terms(), perms())
def test_evaluation_is_equivariant(t, p):
    assert eval_nmt(nmt_perm_action(p, t)) == eval_nmt(t).rename(p)


@given(seeds)
def test_symmetry_is_natural(seed):
    rng = random.Random(seed)
    s = random_smt(rng, SIG_F, 5, max_width=3)
    t = random_smt(rng, SIG_F, 5, max_width=3)
    (m, n), (o, p) = smt_type(s, SIG_F), smt_type(t, SIG_F)
    lhs = Seq(smt_canonical_symmetry(m, o), Tensor(t, s))
    rhs = Seq(Tensor(s, t), smt_canonical_symmetry(n, p))
    assert eval_smt(lhs) == eval_smt(rhs)


def test_empty_identity():
    assert eval_nmt(NEmpty()) == named_identity(())
