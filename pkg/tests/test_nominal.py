import pytest
from hypothesis import given

from conftest import perms
from nomprop.nominal import FreshNames, Perm, check_list, is_name, perm_apply, perm_compose, perm_inverse

NAMES = tuple("abcdefgh")


def _pointwise(p):
    return {a: p(a) for a in NAMES}


def test_compose_with_identity():
    p = Perm.cycle("a", "b", "c")
    assert perm_compose(Perm.identity(), p) == p
    assert perm_compose(p, Perm.identity()) == p


def test_transposition_is_involution():
    ab = Perm.swap("a", "b")
    assert perm_compose(ab, ab) == Perm.identity()
    assert perm_inverse(ab) == ab


def test_compose_applies_left_first():
    p = perm_compose(Perm.swap("a", "b"), Perm.swap("b", "c"))
    assert p("a") == "c"
    assert p("c") == "b"
    assert p("b") == "a"


def test_inverse_of_three_cycle():
    p = Perm.from_mapping({"a": "b", "b": "c", "c": "a"})
    assert perm_inverse(p).mapping == {"a": "c", "c": "b", "b": "a"}
    assert perm_inverse(Perm.identity()) == Perm.identity()


def test_action_on_sets_and_lists():
    ab = Perm.swap("a", "b")
    assert perm_apply(ab, frozenset("ac")) == frozenset("bc")
    assert perm_apply(Perm.identity(), ("a", "b")) == ("a", "b")
    assert perm_apply(ab, ("a", "b")) == ("b", "a")
    with pytest.raises(TypeError):
        ab.act(3)


def test_rejects_non_permutations():
    with pytest.raises(ValueError):
        Perm((("a", "b"),))
    with pytest.raises(ValueError):
        Perm((("a", "a"),))


def test_fresh_names_skip_avoided():
    fresh = FreshNames({"_w0", "_w2"})
    assert fresh.take(3) == ("_w1", "_w3", "_w4")


def test_names_and_lists():
    assert is_name("a1") and is_name("_w0")
    assert not is_name("_w0", user=True)
    assert not is_name("1a")
    with pytest.raises(ValueError):
        check_list(["a", "b", "a"])


def test_json_round_trip():
    p = Perm.cycle("a", "c", "d")
    assert Perm.from_json(p.to_json()) == p


@given(perms(), perms())
def test_compose_matches_pointwise_oracle(p, q):
    pq = perm_compose(p, q)
    assert _pointwise(pq) == {a: q(p(a)) for a in NAMES}


@given(perms())
def test_inverse_cancels(p):
    assert perm_compose(p, perm_inverse(p)).is_identity()
    assert perm_compose(perm_inverse(p), p).is_identity()


@given(perms())
def test_transpositions_rebuild_permutation(p):
    out = Perm.identity()
    for a, b in p.transpositions():
        out = out.then(Perm.swap(a, b))
    assert out == p


@given(perms(), perms())
def test_action_is_a_group_action(p, q):
    s = frozenset("abce")
    assert perm_apply(perm_compose(p, q), s) == perm_apply(q, perm_apply(p, s))
