"""Oracle tests for the finite-category layer."""

import math

import pytest

from graysq.fincat import (
    BudgetError,
    CatFunctor,
    FinCat,
    cat_functors,
    compose_cat_functors,
    discrete_cat,
    identity_cat_functor,
    monotone_maps,
    ordinal,
    poset_cat,
)


def binom(n, k):
    return math.comb(n, k)


def walking_idempotent():
    # one object, one non-identity arrow e with e.e = e
    return FinCat(
        ["*"],
        ["id", "e"],
        {"id": "*", "e": "*"},
        {"id": "*", "e": "*"},
        {"*": "id"},
        {
            ("id", "id"): "id",
            ("id", "e"): "e",
            ("e", "id"): "e",
            ("e", "e"): "e",
        },
    )


def walking_iso():
    return FinCat(
        ["a", "b"],
        ["ia", "ib", "u", "v"],
        {"ia": "a", "ib": "b", "u": "a", "v": "b"},
        {"ia": "a", "ib": "b", "u": "b", "v": "a"},
        {"a": "ia", "b": "ib"},
        {
            ("ia", "ia"): "ia",
            ("ib", "ib"): "ib",
            ("u", "ia"): "u",
            ("ib", "u"): "u",
            ("v", "ib"): "v",
            ("ia", "v"): "v",
            ("v", "u"): "ia",
            ("u", "v"): "ib",
        },
    )


def test_ordinal_arrow_count():
    # oracle: arrows of [n] are the pairs i <= j
    for n in range(5):
        cat = ordinal(n)
        cat.validate()
        assert len(cat.arrows) == (n + 1) * (n + 2) // 2


def test_monotone_map_count_oracle():
    # oracle: #monotone {0..m} -> {0..n} = C(n+m+1, m+1)
    for m in range(4):
        for n in range(4):
            assert len(monotone_maps(m, n)) == binom(n + m + 1, m + 1)


def test_cat_functors_between_ordinals_match_monotone_maps():
    for m in range(3):
        for n in range(3):
            fs = cat_functors(ordinal(m), ordinal(n))
            assert len(fs) == len(monotone_maps(m, n))
            images = sorted(tuple(F.omap[i] for i in range(m + 1)) for F in fs)
            assert images == sorted(monotone_maps(m, n))


def test_functors_preserve_composition_on_nonfree_source():
    idem = walking_idempotent()
    assert not idem.is_free()
    # e is not indecomposable (e = e.e); saturation must still cover it
    gens, deriv = idem.generators()
    assert "e" in deriv
    # End(idempotent) = {e -> id, e -> e}
    fs = cat_functors(idem, idem)
    assert len(fs) == 2
    for F in fs:
        F.validate()


def test_walking_iso_not_free_and_invertibles():
    J = walking_iso()
    J.validate()
    assert set(J.invertible_arrows()) == {"ia", "ib", "u", "v"}
    assert not J.is_free()
    roots = J.components()
    assert len(set(roots.values())) == 1


def test_ordinal_free_and_invertibles_trivial():
    cat = ordinal(3)
    assert cat.is_free()
    assert set(cat.invertible_arrows()) == {cat.unit[x] for x in cat.objects}


def test_product_and_op():
    A = ordinal(1)
    P = A.product(A)
    P.validate()
    assert len(P.objects) == 4
    assert len(P.arrows) == 9
    O = A.op()
    O.validate()
    assert O.src[(0, 1)] == 1 and O.tgt[(0, 1)] == 0


def test_poset_cat_rejects_nontransitive():
    with pytest.raises(AssertionError):
        poset_cat([0, 1, 2], lambda p, q: p == q or q == p + 1)


def test_discrete_cat():
    D = discrete_cat(["x", "y"])
    D.validate()
    assert len(D.arrows) == 2
    assert not D.nonunit_arrows()


def test_functor_composition_and_identity():
    A, B = ordinal(1), ordinal(2)
    fs = cat_functors(A, B)
    idA = identity_cat_functor(A)
    for F in fs:
        assert compose_cat_functors(F, idA) == F


def test_fixed_object_enumeration():
    A, B = ordinal(1), ordinal(2)
    fs = cat_functors(A, B, fix_objects={0: 0, 1: 2})
    # arrows 0 -> 2 in [2]: exactly one, so exactly one functor
    assert len(fs) == 1
    assert fs[0].amap[(0, 1)] == (0, 2)


def test_budget_error():
    with pytest.raises(BudgetError):
        cat_functors(ordinal(2), ordinal(3), budget=3)


def test_functor_freeze_distinguishes():
    fs = cat_functors(ordinal(1), ordinal(1))
    assert len({F.freeze() for F in fs}) == 3


def test_components_of_coproduct_like_graph():
    D = discrete_cat([0, 1, 2])
    assert len(set(D.components().values())) == 3


def test_validate_catches_bad_associativity():
    # comp table where (h.g).f != h.(g.f) must be rejected
    bad = dict(
        objects=[0],
        arrows=["i", "a", "b"],
        src={"i": 0, "a": 0, "b": 0},
        tgt={"i": 0, "a": 0, "b": 0},
        unit={0: "i"},
        comp={
            ("i", "i"): "i",
            ("i", "a"): "a",
            ("a", "i"): "a",
            ("i", "b"): "b",
            ("b", "i"): "b",
            ("a", "a"): "b",
            ("a", "b"): "i",
            ("b", "a"): "a",
            ("b", "b"): "a",
        },
    )
    with pytest.raises(AssertionError):
        FinCat(**bad)
