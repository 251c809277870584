"""Double-category layer: squares, inclusions, Cech nerves, duals, pushouts."""

import pytest

from graysq.fincat import CatFunctor
from graysq.shapes import build_globular_sum
from graysq.twocat import (
    TwoFunctor,
    compose_two_functors,
    enumerate_functors,
    identity_two_functor,
    tau1_inclusion,
    two_op,
    op,
)
from graysq.gray import tensor_simplices, tensor_simplices_map
from graysq.double import (
    are_isomorphic_double,
    cech_nerve,
    completeness,
    compose_double_functors,
    default_double_battery,
    double_tables,
    dualize,
    enumerate_double_functors,
    grid,
    inclusion,
    level_count,
    product,
    squares,
    verify_adjunction_counts,
    verify_cech_squares,
    verify_double_pushouts,
    z2_loop_double,
)


def B(name):
    return build_globular_sum(name)


def test_squares_of_point_is_terminal():
    P = squares(B("[0]"))
    assert len(P.P0.objects) == 1 and len(P.P0.arrows) == 1
    assert len(P.P1.objects) == 1 and len(P.P1.arrows) == 1
    for n in range(3):
        for m in range(3):
            assert level_count(P, n, m) == 1


def test_squares_one_has_six_squares():
    P = squares(B("[1]"))
    assert len(P.P1.arrows) == 6
    assert level_count(P, 1, 1) == 6


def test_squares_level_counts_match_functor_oracle():
    # level (n, m) of squares(C) must equal |Hom([n] (x) [m], C)|
    for name in ("[1]", "[2]", "[1;1]"):
        C = B(name)
        P = squares(C)
        for n in range(3):
            for m in range(3):
                want = len(enumerate_functors(tensor_simplices(n, m), C))
                assert level_count(P, n, m) == want, (name, n, m)


def test_squares_walking_two_cell_distinguished_square():
    # exactly one square of [1;1] has non-identity sides and a non-identity filler
    C = B("[1;1]")
    P = squares(C)
    P0, P1 = P.P0, P.P1
    hard = [
        (F, G, f, g, m)
        for (F, G, f, g, m) in P1.arrows
        if not P0.is_unit(f) and not P0.is_unit(g)
        and C.hom_cat(F[0], G[1]).src[m] != C.hom_cat(F[0], G[1]).tgt[m]
    ]
    assert len(hard) == 1
    assert level_count(P, 1, 1) == len(enumerate_functors(tensor_simplices(1, 1), C))


def test_inclusion_vertical_shapes():
    C = B("[1]")
    P = inclusion(C, "v")
    assert sorted(map(repr, P.P1.objects)) == sorted(map(repr, C.objects))
    assert set(P.P1.objects) == set(P.u.omap.values())
    assert len(P.P1.arrows) == len(P.P0.arrows)


def test_inclusion_vertical_walking_two_cell():
    # the 2-cell of [1;1] appears as the single square outside the unit image
    P = inclusion(B("[1;1]"), "v")
    extra = [a for a in P.P1.arrows if a not in set(P.u.amap.values())]
    assert len(extra) == 1
    f, g, m = extra[0]
    assert f != g


def test_double_functor_count_oracles():
    one_v = inclusion(B("[1]"), "v")
    assert len(enumerate_double_functors(one_v, one_v)) == 3
    assert len(enumerate_double_functors(grid(1, 1), squares(B("[1]")))) == 6
    assert len(enumerate_double_functors(squares(B("[1]")), one_v)) == 2


def test_double_functor_composition_lands_in_enumeration():
    P, Q, R = inclusion(B("[1]"), "v"), squares(B("[1]")), squares(B("[1;1]"))
    pq = enumerate_double_functors(P, Q)
    qr = enumerate_double_functors(Q, R)
    pr = {F.freeze() for F in enumerate_double_functors(P, R)}
    for F in pq:
        for G in qr:
            assert compose_double_functors(G, F).freeze() in pr


def test_levels_match_grid_functor_counts():
    pool = [inclusion(B("[1]"), "v"), squares(B("[1]")), squares(B("[1;1]")), z2_loop_double()]
    for P in pool:
        for n in range(3):
            for m in range(3):
                assert level_count(P, n, m) == len(enumerate_double_functors(grid(n, m), P)), (
                    P.name,
                    n,
                    m,
                )


def test_product_terminal_and_grid_generators():
    Pt = squares(B("[0]"))
    one_v = inclusion(B("[1]"), "v")
    X = product(one_v, Pt)
    assert are_isomorphic_double(X, one_v) is not None
    G = product(inclusion(B("[1]"), "h"), one_v)
    # one generating horizontal, one generating vertical per factor, one generating square
    h_gen = [F for F in G.P1.objects if F not in set(G.u.omap.values())]
    sq_gen = [
        a
        for a in G.P1.arrows
        if not G.P1.is_unit(a) and a not in set(G.u.amap.values())
    ]
    assert len(h_gen) == 2  # the edge at each vertical level
    assert len(sq_gen) == 1
    for n in range(2):
        for m in range(2):
            assert level_count(G, n, m) == level_count(inclusion(B("[1]"), "h"), n, m) * level_count(
                one_v, n, m
            )


def test_dualize_involutions():
    pool = [squares(B("[1]")), inclusion(B("[1;1]"), "v"), grid(1, 1)]
    for P in pool:
        for kind in ("hop", "vop", "t"):
            assert double_tables(dualize(dualize(P, kind), kind)) == double_tables(P), (
                P.name,
                kind,
            )


def test_transpose_squares_one_self_dual():
    P = squares(B("[1]"))
    assert are_isomorphic_double(dualize(P, "t"), P) is not None


def test_transpose_of_vertical_inclusion_matches_horizontal():
    for name in ("[1]", "[2]", "[1;1]"):
        C = B(name)
        T = dualize(inclusion(two_op(op(C)), "v"), "t")
        H = inclusion(C, "h")
        for n in range(3):
            for m in range(3):
                assert level_count(T, n, m) == level_count(H, n, m), (name, n, m)


def test_completeness_examples():
    for name in ("[1]", "[2]", "[1;1]"):
        assert completeness(squares(B(name)), "fully")
        assert completeness(inclusion(B(name), "v"), "fully")
    Z = z2_loop_double()
    assert not completeness(Z, "locally")
    assert not completeness(Z, "fully")


def test_cech_nerve_of_identity_is_squares():
    C = B("[1]")
    N = cech_nerve(identity_two_functor(C))
    assert are_isomorphic_double(N, squares(C)) is not None


def test_cech_equals_squares_battery():
    r = verify_cech_squares(("[1]", "[2]", "[1;1]"), max_level=2)
    assert r["passed"]


def _cech_pullback_count(q, n, m):
    """Independent level-count oracle: functors [n](x)[m] -> target with
    columnwise lifts through q."""
    T = tensor_simplices(n, m)
    S0 = tensor_simplices(0, m)
    psi = tuple(range(m + 1))
    cols = [tensor_simplices_map((k,), psi, S0, T) for k in range(n + 1)]
    lifts = enumerate_functors(S0, q.A)
    total = 0
    for F in enumerate_functors(T, q.B):
        ways = 1
        for col in cols:
            want = compose_two_functors(F, col).freeze()
            ways *= sum(1 for c in lifts if compose_two_functors(q, c).freeze() == want)
        total += ways
    return total


def test_cech_levels_match_pullback_formula():
    one = B("[1]")
    pt = B("[0]")
    corner = TwoFunctor(pt, one, {0: 0}, {(0, 0, ()): ()})
    for q in (corner, tau1_inclusion(B("[1;1]"))):
        N = cech_nerve(q)
        for (n, m) in ((1, 1), (2, 1), (1, 2)):
            assert level_count(N, n, m) == _cech_pullback_count(q, n, m), (n, m)
    assert level_count(cech_nerve(corner), 1, 1) == 1


def test_adjunction_count_oracles():
    r = verify_adjunction_counts(B("[1]"), B("[1]"), B("[1]"))
    assert r["passed"] and r["double_count"] == 6 and r["tensor_count"] == 6
    assert verify_adjunction_counts(B("[1]"), B("[1]"), B("[1;1]"))["passed"]
    r0 = verify_adjunction_counts(B("[0]"), B("[1]"), B("[2]"))
    assert r0["passed"]
    assert r0["tensor_count"] == len(enumerate_functors(B("[1]"), B("[2]")))


def test_step3_pushout_small():
    r = verify_double_pushouts("step3", (1, 0, 1, 0))
    assert r["passed"]
    assert all(t["bijective"] for t in r["targets"])


def test_step3_pushout_main():
    r = verify_double_pushouts("step3", (1, 1, 1, 0))
    assert r["passed"]


def test_step2_delegates():
    r = verify_double_pushouts("step2", (1, 1, 1))
    assert r["passed"]


def test_unknown_pushout_id_rejected():
    with pytest.raises(ValueError):
        verify_double_pushouts("step9", ())


def test_battery_members_are_complete():
    for Q in default_double_battery():
        assert completeness(Q, "locally"), Q.name
