import math

import pytest

from graysq.fincat import BudgetError
from graysq.gray import (
    LatticePath,
    collapse_to_globular,
    funny_factorization,
    row_collapse,
    simplices_engine_to_paths,
    tensor,
    tensor_many,
    tensor_simplices,
    tensor_simplices_map,
    tensor_triple,
    verify_duality,
    verify_quotient_prop,
    verify_square_colimit,
    verify_triple_gaunt,
    word_functor,
)
from graysq.shapes import build_globular_sum, parse_gs, simplex
from graysq.twocat import (
    _two_functor_is_iso,
    are_isomorphic_twocats,
    enumerate_functors,
    is_gaunt,
)


def _build(text):
    return build_globular_sum(parse_gs(text))


def _closed_form_one_cells(n, m):
    total = 0
    for i in range(n + 1):
        for j in range(m + 1):
            for i2 in range(i, n + 1):
                for j2 in range(j, m + 1):
                    total += math.comb((i2 - i) + (j2 - j), i2 - i)
    return total - (n + 1) * (m + 1)


def test_path_model_counts():
    T = tensor_simplices(1, 1)
    c = T.count_cells()
    assert (c["objects"], c["nonunit_one_cells"], c["nonunit_two_cells"]) == (4, 6, 1)
    T2 = tensor_simplices(2, 1)
    c2 = T2.count_cells()
    assert (c2["objects"], c2["nonunit_one_cells"], c2["nonunit_two_cells"]) == (6, 16, 5)
    assert c["nonunit_one_cells"] == _closed_form_one_cells(1, 1)
    assert c2["nonunit_one_cells"] == _closed_form_one_cells(2, 1)


def test_path_hom_cardinality():
    T = tensor_simplices(2, 2)
    for (i, j) in T.objects:
        for (i2, j2) in T.objects:
            got = len(T.one_cells((i, j), (i2, j2)))
            want = (
                math.comb((i2 - i) + (j2 - j), i2 - i)
                if i2 >= i and j2 >= j
                else 0
            )
            assert got == want


def test_lattice_path_type():
    p = LatticePath((0, 0), "HV")
    q = LatticePath((0, 0), "VH")
    assert p.end == (1, 1) and q.end == (1, 1)
    assert q.dominates(p) and not p.dominates(q)
    assert len(LatticePath.between((0, 0), (2, 2))) == 6


def test_engine_matches_path_model():
    for (n, m) in ((1, 1), (2, 1), (2, 2)):
        _, _, F = simplices_engine_to_paths(n, m)
        assert _two_functor_is_iso(F)


def test_engine_composition_merges_runs():
    E = tensor_many([simplex(2), simplex(1)])
    w1 = ((0, (0, 1, (0,))),)
    w2 = ((0, (1, 2, (0,))),)
    assert E.compose1((0, 0), (1, 0), (2, 0), w2, w1) == ((0, (0, 2, (0, 0))),)


def test_unit_factor_is_identity():
    T = tensor(_build("[0]"), _build("[1;1]"))
    assert are_isomorphic_twocats(T, _build("[1;1]"))


def test_functor_count_out_of_square():
    T = tensor(simplex(1), simplex(1))
    assert len(enumerate_functors(T, _build("[1]"))) == 6


def test_tensor_triple_counts():
    W = tensor_triple(1, 1, 1)
    assert len(W.objects) == 8
    assert is_gaunt(W)
    assert len(tensor_triple(2, 1, 1).objects) == 12
    assert are_isomorphic_twocats(tensor_triple(1, 1, 0), tensor_simplices(1, 1))


def test_triple_gaunt_report():
    rep = verify_triple_gaunt(max_nm=2)
    assert rep["passed"]


def test_cyclic_factor_rejected():
    from graysq.fincat import FinCat
    from graysq.twocat import from_fincat

    objects = ["a", "b"]
    arrows = ["ia", "ib", "f", "g"]
    src = {"ia": "a", "ib": "b", "f": "a", "g": "b"}
    tgt = {"ia": "a", "ib": "b", "f": "b", "g": "a"}
    unit = {"a": "ia", "b": "ib"}
    comp = {
        ("ia", "ia"): "ia",
        ("ib", "ib"): "ib",
        ("f", "ia"): "f",
        ("ib", "f"): "f",
        ("g", "ib"): "g",
        ("ia", "g"): "g",
        ("g", "f"): "ia",
        ("f", "g"): "ib",
    }
    W = from_fincat(FinCat(objects, arrows, src, tgt, unit, comp))
    with pytest.raises(AssertionError):
        tensor(W, simplex(1))


def test_budget_error():
    with pytest.raises(BudgetError):
        tensor_many([simplex(3), simplex(3)], budget=10)


def test_simplices_map_functorial():
    src = tensor_simplices(1, 1)
    dst = tensor_simplices(2, 2)
    F = tensor_simplices_map({0: 0, 1: 2}, {0: 0, 1: 1}, src, dst)
    assert F.omap[(1, 1)] == (2, 1)
    assert F.onemap[((0, 0), (1, 1), ("H", "V"))] == ("H", "H", "V")


def test_collapse_maps_are_order_preserving():
    collapse_to_globular(2, 1)
    row_collapse(2, 1)


def test_naive_row_collapse_fails():
    T = tensor_many([simplex(1), simplex(1)])
    G = _build("[1;1]")

    def letter_fn(state, i, arr):
        if i == 0:
            return None
        (x, y, lab) = arr
        return (x, y, (state[0],) * (y - x))

    with pytest.raises(AssertionError):
        word_functor(T, G, lambda a: a[1], letter_fn)


def test_duality():
    assert verify_duality("[1]", "[1]")["passed"]


def test_square_colimit():
    assert verify_square_colimit()["passed"]


def test_quotient_prop_small():
    rep = verify_quotient_prop(1, 1)
    assert rep["passed"]


def test_funny_factorization_certificate():
    rep = funny_factorization(1, 1, 1)
    assert rep["exists"] and rep["unique"]
