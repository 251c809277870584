"""Acceptance gate: every headline claim, one pass/fail line each, timed."""

import itertools
import time
from math import comb

from graysq.shapes import build_globular_sum
from graysq.twocat import is_gaunt
from graysq.gray import (
    tensor_simplices,
    verify_duality,
    verify_quotient_prop,
    verify_rigidity,
    verify_square_colimit,
    verify_triple_gaunt,
)
from graysq.double import (
    are_isomorphic_double,
    cech_nerve,
    inclusion,
    level_count,
    squares,
    verify_adjunction_counts,
)
from graysq.twocat import tau1_inclusion
from graysq.companion import verify_universal_property
from graysq.checks import run_check

import test_properties as props


def _line(num, name, ok, seconds, bound):
    timing = "%6.2fs" % seconds + ("" if bound is None else " < %gs" % bound)
    print("ACCEPTANCE %2d %-22s %s  [%s]" % (num, name, "PASS" if ok else "FAIL", timing))
    assert ok, (num, name)
    if bound is not None:
        assert seconds < bound, (num, name, seconds, bound)


def B(text):
    return build_globular_sum(text)


def test_01_square_as_colimit():
    t0 = time.perf_counter()
    rep = verify_square_colimit()
    dt = time.perf_counter() - t0
    _line(1, "square-as-colimit", rep["passed"], dt, 1.0)


def test_02_quotient_pushouts():
    t0 = time.perf_counter()
    ok = True
    for n, m in [(1, 1), (2, 1), (1, 2)]:
        rep = verify_quotient_prop(n, m)
        ok = ok and rep["passed"]
    dt = time.perf_counter() - t0
    _line(2, "quotient-pushouts", ok, dt, 10.0)


def test_03_tensors_are_gaunt():
    t0 = time.perf_counter()
    rep = verify_triple_gaunt(max_nm=3)
    ok = rep["passed"] and all(rep["details"].values())
    dt = time.perf_counter() - t0
    _line(3, "tensors-are-gaunt", ok, dt, 30.0)


# -- closed-form path-count oracle, kept independent of the library ---------------


def _path_heights(dx, dy):
    out = []
    for pos in itertools.combinations(range(dx + dy), dx):
        h, heights = 0, []
        for k in range(dx + dy):
            if k not in pos:
                h += 1
            heights.append(h)
        out.append(tuple(heights))
    return out


def _oracle_counts(n, m):
    objects = (n + 1) * (m + 1)
    ones = twos = 0
    for i, j, i2, j2 in itertools.product(
        range(n + 1), range(m + 1), range(n + 1), range(m + 1)
    ):
        dx, dy = i2 - i, j2 - j
        if dx < 0 or dy < 0 or (dx == 0 and dy == 0):
            continue
        ones += comb(dx + dy, dx)
        ps = _path_heights(dx, dy)
        twos += sum(
            1
            for p, q in itertools.permutations(ps, 2)
            if p != q and all(a <= b for a, b in zip(p, q))
        )
    return objects, ones, twos


def test_04_cell_count_oracles():
    t0 = time.perf_counter()
    ok = True
    for (n, m), expected in [((1, 1), (4, 6, 1)), ((2, 1), (6, 16, 5))]:
        c = tensor_simplices(n, m).count_cells()
        got = (c["objects"], c["nonunit_one_cells"], c["nonunit_two_cells"])
        ok = ok and got == expected == _oracle_counts(n, m)
    dt = time.perf_counter() - t0
    _line(4, "cell-count-oracles", ok, dt, None)


def test_05_duality():
    t0 = time.perf_counter()
    ok = True
    for a, b in [("[1]", "[1]"), ("[2]", "[1]"), ("[1;1]", "[1]")]:
        ok = ok and verify_duality(a, b)["passed"]
    dt = time.perf_counter() - t0
    _line(5, "duality", ok, dt, 10.0)


def test_06_rigidity():
    t0 = time.perf_counter()
    count = verify_rigidity(subsite=("[0]", "[1]", "[1;1]"))
    dt = time.perf_counter() - t0
    _line(6, "rigidity", count == 1, dt, 60.0)


def test_07_cech_equals_squares():
    t0 = time.perf_counter()
    ok = True
    for name in ["[1]", "[2]", "[1;1]"]:
        C = B(name)
        N = cech_nerve(tau1_inclusion(C))
        S = squares(C)
        ok = ok and are_isomorphic_double(N, S)
        for n in range(3):
            for m in range(3):
                ok = ok and level_count(N, n, m) == level_count(S, n, m)
    dt = time.perf_counter() - t0
    _line(7, "cech-equals-squares", ok, dt, None)


def test_08_universal_property():
    t0 = time.perf_counter()
    C = B("[1]")
    ok = True
    for Q in [inclusion(B("[1]"), "v"), squares(B("[1]")), squares(B("[1;1]"))]:
        ok = ok and verify_universal_property(C, Q, "vertical")["passed"]
    ok = ok and verify_universal_property(C, squares(B("[1]")), "horizontal")["passed"]
    dt = time.perf_counter() - t0
    _line(8, "universal-property", ok, dt, 60.0)


def test_09_adjunction_counts():
    t0 = time.perf_counter()
    ok = True
    targets = [B("[1]"), B("[2]"), B("[1;1]"), tensor_simplices(1, 1)]
    for cn in ["[0]", "[1]"]:
        for dn in ["[0]", "[1]"]:
            for E in targets:
                rep = verify_adjunction_counts(B(cn), B(dn), E)
                ok = ok and rep["passed"]
                if cn == dn == "[1]" and E.name == "[1]":
                    ok = ok and rep["double_count"] == rep["tensor_count"] == 6
    dt = time.perf_counter() - t0
    _line(9, "adjunction-counts", ok, dt, 300.0)


def test_10_lemma_chain_checks():
    t0 = time.perf_counter()
    ok = True
    for check_id in ["funny-equation", "crush-product", "step2", "step3"]:
        ok = ok and run_check(check_id)["status"] == "pass"
    dt = time.perf_counter() - t0
    _line(10, "lemma-chain-checks", ok, dt, 300.0)


def test_11_property_suites():
    t0 = time.perf_counter()
    before = props.CONSTRUCTED[0]
    suites = [
        props.test_interchange_on_sampled_two_by_two_grids,
        props.test_unit_squares_absorb_in_both_directions,
        props.test_level_counts_match_brute_grid_enumeration,
        props.test_levels_factor_through_chain_fiber_products,
        props.test_companions_of_one_vertical_are_equivalent,
        props.test_companion_composites_admit_companions,
        props.test_companion_horizontals_closed_under_hcomp,
        props.test_closure_report_agrees_with_direct_scan,
        props.test_span_colimits_match_union_find_quotients,
        props.test_coproduct_colimits_add_levelwise,
    ]
    for suite in suites:
        suite()
    constructed = props.CONSTRUCTED[0] - before
    dt = time.perf_counter() - t0
    _line(11, "property-suites", constructed >= 50, dt, None)
