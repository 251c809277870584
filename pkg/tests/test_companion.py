import pytest

from graysq.shapes import build_globular_sum
from graysq.twocat import tau1_cat
from graysq.double import (
    double_tables,
    inclusion,
    level_count,
    squares,
    z2_loop_double,
)
from graysq.companion import (
    CompanionWitness,
    HypothesisViolation,
    admits_companion,
    companion_closure_report,
    companion_horizontals,
    companion_uniqueness_report,
    comp_core,
    comp_subobject,
    find_companions,
    is_companion_pair,
    verify_comp_core,
    verify_universal_property,
)


def B(name):
    return build_globular_sum(name)


def test_walking_arrow_vertical_has_unique_companion():
    C = B("[1]")
    Q = squares(C)
    f = (0, 1, (0,))
    ws = find_companions(Q, f)
    assert len(ws) == 1
    assert ws[0].F == f
    assert is_companion_pair(Q, ws[0])


def test_identity_verticals_have_identity_companions():
    C = B("[1;1]")
    Q = squares(C)
    for x in Q.P0.objects:
        ws = find_companions(Q, Q.P0.unit[x])
        assert Q.u.omap[x] in [w.F for w in ws]


def test_malformed_witness_boundary_raises():
    C = B("[1]")
    Q = squares(C)
    f = (0, 1, (0,))
    w = find_companions(Q, f)[0]
    bad = CompanionWitness(f, w.F, Q.P1.unit[w.F], w.epsilon)
    with pytest.raises(AssertionError):
        is_companion_pair(Q, bad)


def test_wrong_triangles_fail_without_raising():
    Q = z2_loop_double()
    iv = Q.P0.unit["*"]
    assert is_companion_pair(Q, CompanionWitness(iv, "o", "e", "e"))
    assert is_companion_pair(Q, CompanionWitness(iv, "o", "s", "s"))
    assert not is_companion_pair(Q, CompanionWitness(iv, "o", "e", "s"))


def test_vertical_inclusion_has_no_nonidentity_companions():
    C = B("[1]")
    Q = inclusion(C, "v")
    f = (0, 1, (0,))
    assert find_companions(Q, f) == []
    assert not admits_companion(Q, f)
    assert admits_companion(Q, Q.P0.unit[0])


def test_companions_compose_in_squares_of_two_simplex():
    C = B("[2]")
    Q = squares(C)
    for v in Q.P0.arrows:
        assert admits_companion(Q, v)
    rep = companion_closure_report(Q)
    assert rep["passed"]
    assert rep["admitting"] == len(Q.P0.arrows)
    assert rep["companions"] == len(Q.P1.objects)


def test_companion_uniqueness_up_to_invertible_square():
    for Q in (squares(B("[2]")), squares(B("[1;1]")), z2_loop_double()):
        rep = companion_uniqueness_report(Q)
        assert rep["passed"], rep["failures"]
        assert rep["checked"] > 0


def test_comp_subobject_of_vertical_inclusion_keeps_units_only():
    C = B("[1]")
    Q = inclusion(C, "v")
    R = comp_subobject(Q, "vcomp")
    assert len(R.P0.objects) == 2
    assert len(R.P0.arrows) == 2  # identity verticals only
    assert sorted(R.P1.objects) == sorted(Q.P1.objects)
    assert len(R.P1.arrows) == 2


def test_comp_subobject_hcomp_of_squares_is_everything():
    C = B("[1]")
    Q = squares(C)
    R = comp_subobject(Q, "hcomp")
    assert double_tables(R) == double_tables(Q)


def test_comp_core_of_gaunt_squares_is_whole():
    rep = verify_comp_core(("[1]", "[2]", "[1;1]"))
    assert rep["passed"]
    for nm, entry in rep["shapes"].items():
        assert entry["equal"], nm


def test_comp_core_levels_survive():
    Q = squares(B("[1;1]"))
    R = comp_core(Q)
    for n in range(3):
        for m in range(3):
            assert level_count(R, n, m) == level_count(Q, n, m)


def test_universal_property_vertical_examples():
    C = B("[1]")
    r = verify_universal_property(C, inclusion(C, "v"), "vertical")
    assert r["passed"]
    assert r["image_size"] == 2 and r["total"] == 3
    for Q in (squares(B("[1]")), squares(B("[1;1]"))):
        r = verify_universal_property(C, Q, "vertical")
        assert r["passed"], r
        assert r["image_size"] == r["predicted_size"]


def test_universal_property_horizontal_example():
    C = B("[1]")
    r = verify_universal_property(C, squares(B("[1]")), "horizontal")
    assert r["passed"], r
    assert r["injective"]


def test_universal_property_horizontal_needs_local_completeness():
    with pytest.raises(HypothesisViolation):
        verify_universal_property(B("[1]"), z2_loop_double(), "horizontal")


def test_companion_horizontals_of_squares_cover_all():
    C = B("[1;1]")
    Q = squares(C)
    assert sorted(companion_horizontals(Q)) == sorted(Q.P1.objects)
    assert sorted(companion_horizontals(Q), key=repr) == sorted(
        tau1_cat(C).arrows, key=repr
    )
