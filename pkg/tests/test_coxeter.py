from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles as o
from coxkl.coxeter import CoxeterError, CoxeterSystem, coxeter_type, load_system

REALISATIONS = {
    "A2": lambda: o.type_a(2),
    "A3": lambda: o.type_a(3),
    "B2": o.type_b2,
}


@pytest.fixture(scope="module", params=sorted(REALISATIONS))
def pair(request):
    name = request.param
    return coxeter_type(name), o.Cayley(REALISATIONS[name]())


def words(rank, max_size=8):
    return st.lists(st.integers(0, rank - 1), max_size=max_size)


def test_group_orders(pair):
    W, G = pair
    assert len(W.elements()) == len(G)


def test_canonical_words_match_cayley_graph(pair):
    W, G = pair
    for p, word in G.word.items():
        x = W.element(word)
        assert x.word == word
        assert x.length == len(word)


@settings(max_examples=200, deadline=None)
@given(data=st.data())
def test_random_words_reduce_like_cayley(data):
    for name, gens in REALISATIONS.items():
        W, G = coxeter_type(name), o.Cayley(gens())
        word = data.draw(words(W.rank))
        assert W.element(word).word == G.word[G.perm(word)]


@settings(max_examples=200, deadline=None)
@given(words(2, 12))
def test_infinite_dihedral_words(word):
    W = coxeter_type("I2(inf)")
    assert W.element(word).word == o.infinite_dihedral_reduce(word)


def test_bruhat_matches_subwords(A3):
    G = o.Cayley(o.type_a(3))
    below = o.bruhat_table(G)
    elems = {p: A3.element(G.word[p]) for p in G}
    for y in G:
        for x in G:
            assert A3.bruhat_leq(elems[x], elems[y]) == (x in below[y])


def test_bruhat_b2_matches_subwords(B2):
    G = o.Cayley(o.type_b2())
    for y in G:
        for x in G:
            assert B2.bruhat_leq(B2.element(G.word[x]), B2.element(G.word[y])) == o.subword_leq(G, x, y)


@pytest.mark.parametrize("name", ["A2", "A3", "B2"])
def test_inversions_are_left_inversions(name):
    W, G = coxeter_type(name), o.Cayley(REALISATIONS[name]())
    refl = G.reflections()
    for p in G:
        expected = {t for t in refl if G.length(o.compose(t, p)) < G.length(p)}
        got = {G.perm(r.element.word) for r in W.inversions(W.element(G.word[p]))}
        assert got == expected
        assert len(got) == G.length(p)


@settings(max_examples=150, deadline=None)
@given(data=st.data())
def test_inversion_cocycle(data):
    for W in (coxeter_type("A3"), coxeter_type("B2"), coxeter_type("I2(inf)")):
        x = W.element(data.draw(words(W.rank)))
        y = W.element(data.draw(words(W.rank)))
        nx = {r.element for r in W.inversions(x)}
        ny = {W.word_product(x, r.element, x.inverse()) for r in W.inversions(y)}
        nxy = {r.element for r in W.inversions(W.mul(x, y))}
        assert nxy == nx ^ ny
        assert len(nxy) == W.mul(x, y).length


# -- documented examples ------------------------------------------------------------


def test_reduce_examples(A2):
    assert A2.element("s1,s1").is_identity
    assert A2.element("s1,s2,s1,s2") == A2.element("s2,s1")
    assert A2.element("s1,s2,s1,s2").word == (1, 0)
    assert A2.element("s1,s2").length == 2


def test_mul_inv_examples(A1, A2):
    s = A1.gen("s")
    assert A1.mul(s, s).is_identity
    assert str(A2.element("s1,s2").inverse()) == "s2s1"
    x = A2.mul(A2.element("s1,s2"), A2.gen("s1"))
    assert x == A2.element("s2,s1,s2") and x.length == 3


def test_descent_examples(A2):
    assert A2.descents(A2.identity, "left") == frozenset()
    assert A2.descents(A2.element("s1,s2"), "left") == {0}
    assert A2.descents(A2.element("s1,s2,s1"), "left") == {0, 1}
    assert A2.descents(A2.element("s1,s2"), "right") == {1}


def test_inversion_examples(A1):
    W = CoxeterSystem(["s", "t"], [[1, 3], [3, 1]])
    assert W.inversions(W.identity) == ()
    assert {str(r) for r in A1.inversions(A1.gen("s"))} == {"s"}
    got = {r.element for r in W.inversions(W.element("s,t"))}
    assert got == {W.gen("s"), W.element("s,t,s")}


def test_bruhat_examples():
    W = CoxeterSystem(["s", "t"], [[1, 3], [3, 1]])
    for x in W.elements():
        assert W.bruhat_leq(W.identity, x)
    assert W.bruhat_leq(W.gen("s"), W.element("t,s"))
    assert not W.bruhat_leq(W.element("s,t"), W.element("t,s"))


def test_coset_examples(A2):
    I = A2.subset("s1")
    assert A2.coset_decompose(A2.gen("s1"), I) == (A2.identity, A2.gen("s1"))
    assert A2.coset_decompose(A2.element("s1,s2"), I) == (A2.element("s1,s2"), A2.identity)
    assert A2.coset_decompose(A2.element("s2,s1"), I) == (A2.gen("s2"), A2.gen("s1"))


def test_coset_decomposition_brute_force(A3):
    group = A3.elements()
    for I in [A3.subset("s1"), A3.subset("s1,s3"), A3.subset("s2,s3")]:
        for x in group:
            u, v = A3.coset_decompose(x, I)
            facts = [(a, b) for a in group for b in A3.elements(I)
                     if A3.mul(a, b) == x and a.length + b.length == x.length
                     and all(not a.has_right_descent(i) for i in I)]
            assert facts == [(u, v)]


def test_longest_examples(A2, I2inf):
    assert A2.longest_element(frozenset()).is_identity
    assert A2.longest_element(A2.subset("S")) == A2.element("s1,s2,s1")
    with pytest.raises(CoxeterError, match="infinite parabolic"):
        I2inf.longest_element(I2inf.subset("S"))


def test_enumerate_examples(A1, A2):
    assert [str(x) for x in A1.elements()] == ["1", "s"]
    assert len(A2.elements()) == 6
    q = A2.quotient(A2.subset("s1"))
    assert len(q) == 3 and set(q) == {A2.identity, A2.gen("s2"), A2.element("s1,s2")}


def test_enumerate_infinite_needs_bound(I2inf):
    assert len(I2inf.elements(max_len=5)) == 11


def test_reflection_support_examples(A1, A2):
    from coxkl.hat import build_hat

    assert A1.reflection_support(A1.gen("s")) == {0}
    assert A2.reflection_support(A2.element("s1,s2,s1")) == {0, 1}
    h = build_hat(A2)
    assert h.hat.reflection_support(h.theta("s1")) == {2}


@pytest.mark.parametrize("name,order", [("A3", 24), ("B3", 48), ("D4", 192), ("G2", 12), ("H3", 120), ("F4", 1152),
                                        ("I2(5)", 10)])
def test_named_orders(name, order):
    assert len(coxeter_type(name).elements()) == order


def test_finiteness_classification():
    assert coxeter_type("E8").is_finite()
    assert not coxeter_type("I2(inf)").is_finite()
    affine = CoxeterSystem(["a", "b", "c"], [[1, 3, 3], [3, 1, 3], [3, 3, 1]])
    assert not affine.is_finite()


def test_load_system_file_round_trip(tmp_path, B2):
    path = tmp_path / "b2.json"
    import json

    path.write_text(json.dumps(B2.to_json()))
    W = load_system(str(path))
    assert W.generators == B2.generators and W.matrix == B2.matrix


def test_unknown_generator(A2):
    with pytest.raises(CoxeterError):
        A2.element("s7")
