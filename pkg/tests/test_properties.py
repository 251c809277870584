"""Property suites: laws checked against independent brute-force re-derivations."""

import itertools

from hypothesis import assume, given, settings, strategies as st

from graysq.shapes import build_globular_sum, site_from_objects
from graysq.twocat import compose_two_functors, enumerate_functors
from graysq.presheaf import DiagramSpec, finite_colimit, nerve
from graysq.gray import tensor_simplices
from graysq.double import (
    dualize,
    grid,
    inclusion,
    level_count,
    product,
    squares,
    z2_loop_double,
)
from graysq.companion import (
    admits_companion,
    companion_closure_report,
    companion_horizontals,
    companions_equivalent,
    find_companions,
    is_companion_pair,
)


def B(text):
    return build_globular_sum(text)


# Running total of constructed-and-checked instances, read by the acceptance gate.
CONSTRUCTED = [0]


# A fixed pool of double categories exercising every constructor.
DOUBLE_POOL = [
    squares(B("[1]")),
    squares(B("[2]")),
    squares(B("[1;1]")),
    squares(tensor_simplices(1, 1)),
    inclusion(B("[1]"), "v"),
    inclusion(B("[2;1]"), "v"),
    inclusion(B("[1;1]"), "h"),
    inclusion(B("[2]"), "h"),
    grid(1, 1),
    grid(2, 1),
    z2_loop_double(),
    dualize(squares(B("[1]")), "t"),
    dualize(squares(B("[1;1]")), "hop"),
    dualize(inclusion(B("[2]"), "v"), "vop"),
    product(inclusion(B("[1]"), "h"), squares(B("[1]"))),
]

doubles = st.sampled_from(DOUBLE_POOL)


# -- interchange -----------------------------------------------------------------


@settings(max_examples=120, deadline=None)
@given(doubles, st.data())
def test_interchange_on_sampled_two_by_two_grids(P, data):
    """hcomp of vcomps == vcomp of hcomps for every sampled 2x2 block."""
    CONSTRUCTED[0] += 1
    pairs = P.P1.composable_pairs()
    assume(pairs)
    a2, a1, ac = data.draw(st.sampled_from(pairs))
    matches = [
        t
        for t in pairs
        if P.s.amap[t[0]] == P.t.amap[a2] and P.s.amap[t[1]] == P.t.amap[a1]
    ]
    assume(matches)
    b2, b1, bc = data.draw(st.sampled_from(matches))
    lhs = P.hcomp_mor[(bc, ac)]
    rhs = P.P1.comp[(P.hcomp_mor[(b2, a2)], P.hcomp_mor[(b1, a1)])]
    assert lhs == rhs


@settings(max_examples=60, deadline=None)
@given(doubles, st.data())
def test_unit_squares_absorb_in_both_directions(P, data):
    CONSTRUCTED[0] += 1
    a = data.draw(st.sampled_from(P.P1.arrows))
    F, G = P.P1.src[a], P.P1.tgt[a]
    assert P.P1.comp[(P.P1.unit[G], a)] == a
    assert P.P1.comp[(a, P.P1.unit[F])] == a
    ul = P.u.amap[P.s.amap[a]]
    ur = P.u.amap[P.t.amap[a]]
    assert P.hcomp_mor[(ur, P.hcomp_mor[(a, ul)])] == a


# -- Segal level consistency -----------------------------------------------------


def _brute_level(P, n, m):
    """Count n x m grids of squares directly, one constraint at a time."""
    if n == 0 and m == 0:
        return len(P.P0.objects)
    if n == 0:
        total = 0
        for chain in itertools.product(P.P0.arrows, repeat=m):
            if all(P.P0.src[chain[j + 1]] == P.P0.tgt[chain[j]] for j in range(m - 1)):
                total += 1
        return total
    if m == 0:
        total = 0
        for chain in itertools.product(P.P1.objects, repeat=n):
            if all(P.s.omap[chain[i + 1]] == P.t.omap[chain[i]] for i in range(n - 1)):
                total += 1
        return total
    total = 0
    for mat in itertools.product(P.P1.arrows, repeat=n * m):
        rows = [mat[j * n : (j + 1) * n] for j in range(m)]
        ok = all(
            P.s.amap[row[i + 1]] == P.t.amap[row[i]]
            for row in rows
            for i in range(n - 1)
        ) and all(
            P.P1.src[rows[j + 1][i]] == P.P1.tgt[rows[j][i]]
            for j in range(m - 1)
            for i in range(n)
        )
        total += ok
    return total


@settings(max_examples=80, deadline=None)
@given(doubles, st.integers(0, 2), st.integers(0, 2))
def test_level_counts_match_brute_grid_enumeration(P, n, m):
    CONSTRUCTED[0] += 1
    assume(len(P.P1.arrows) ** max(n * m, 1) <= 300_000)
    assert level_count(P, n, m) == _brute_level(P, n, m)


@settings(max_examples=40, deadline=None)
@given(doubles, st.integers(1, 2), st.integers(1, 2))
def test_levels_factor_through_chain_fiber_products(P, n, m):
    """An (n, m) grid is determined by its m rows, glued along shared row boundaries."""
    CONSTRUCTED[0] += 1
    assume(len(P.P1.arrows) ** max(n * m, 1) <= 300_000)
    rows = []
    for mat in itertools.product(P.P1.arrows, repeat=n):
        if all(P.s.amap[mat[i + 1]] == P.t.amap[mat[i]] for i in range(n - 1)):
            rows.append(mat)
    by_src = {}
    for row in rows:
        by_src.setdefault(tuple(P.P1.src[a] for a in row), []).append(row)
    stacks = [(row,) for row in rows]
    for _ in range(m - 1):
        stacks = [
            s + (row,)
            for s in stacks
            for row in by_src.get(tuple(P.P1.tgt[a] for a in s[-1]), ())
        ]
    assert len(stacks) == level_count(P, n, m)


# -- companion uniqueness and closure --------------------------------------------


@settings(max_examples=80, deadline=None)
@given(doubles, st.data())
def test_companions_of_one_vertical_are_equivalent(P, data):
    CONSTRUCTED[0] += 1
    f = data.draw(st.sampled_from(P.P0.arrows))
    ws = find_companions(P, f)
    for w1 in ws:
        assert is_companion_pair(P, w1)
        for w2 in ws:
            assert companions_equivalent(P, w1.F, w2.F)


@settings(max_examples=80, deadline=None)
@given(doubles, st.data())
def test_companion_composites_admit_companions(P, data):
    CONSTRUCTED[0] += 1
    f = data.draw(st.sampled_from(P.P0.arrows))
    g = data.draw(st.sampled_from(P.P0.arrows))
    assume(P.P0.src[g] == P.P0.tgt[f])
    assume(admits_companion(P, f) and admits_companion(P, g))
    assert admits_companion(P, P.P0.comp[(g, f)])


@settings(max_examples=60, deadline=None)
@given(doubles, st.data())
def test_companion_horizontals_closed_under_hcomp(P, data):
    CONSTRUCTED[0] += 1
    ch = companion_horizontals(P)
    assume(ch)
    F = data.draw(st.sampled_from(ch))
    after = [G for G in ch if P.s.omap[G] == P.t.omap[F]]
    assume(after)
    G = data.draw(st.sampled_from(after))
    assert P.hcomp_obj[(G, F)] in set(ch)


@settings(max_examples=30, deadline=None)
@given(doubles)
def test_closure_report_agrees_with_direct_scan(P):
    CONSTRUCTED[0] += 1
    rep = companion_closure_report(P)
    assert rep["passed"]
    assert rep["admitting"] == sum(admits_companion(P, f) for f in P.P0.arrows)
    assert rep["companions"] == len(companion_horizontals(P))


# -- colimits are computed pointwise ---------------------------------------------

COLIMIT_SITE = site_from_objects(["[0]", "[1]", "[1;1]"])
COLIMIT_SHAPES = ["[0]", "[1]", "[2]", "[1;1]"]
_NERVES = {t: nerve(B(t), COLIMIT_SITE) for t in COLIMIT_SHAPES}


def _edge_map(Xsrc, F):
    """Postcomposition by the 2-functor F, level by level."""
    return {
        a: {
            e: compose_two_functors(F, Xsrc._functors[(a, e)]).freeze()
            for e in Xsrc.values[a]
        }
        for a in Xsrc.site.objects
    }


def _quotient_sizes(nodes, edges, site):
    """Independent union-find over the tagged disjoint union at each level."""
    sizes = {}
    for a in site.objects:
        parent = {}
        for nk, X in nodes.items():
            for e in X.values[a]:
                parent[(nk, e)] = (nk, e)

        def find(t):
            while parent[t] != t:
                parent[t] = parent[parent[t]]
                t = parent[t]
            return t

        for sk, dk, comp in edges:
            for e, img in comp[a].items():
                ra, rb = find((sk, e)), find((dk, img))
                if ra != rb:
                    parent[ra] = rb
        sizes[a] = len({find(t) for t in parent})
    return sizes


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_span_colimits_match_union_find_quotients(data):
    CONSTRUCTED[0] += 1
    ct = data.draw(st.sampled_from(COLIMIT_SHAPES))
    at = data.draw(st.sampled_from(COLIMIT_SHAPES))
    bt = data.draw(st.sampled_from(COLIMIT_SHAPES))
    C, A, Bc = B(ct), B(at), B(bt)
    fs = enumerate_functors(C, A)
    gs = enumerate_functors(C, Bc)
    F = data.draw(st.sampled_from(fs))
    G = data.draw(st.sampled_from(gs))
    nodes = {"a": _NERVES[at], "b": _NERVES[bt], "c": _NERVES[ct]}
    edges = [
        ("c", "a", _edge_map(_NERVES[ct], F)),
        ("c", "b", _edge_map(_NERVES[ct], G)),
    ]
    diagram = DiagramSpec(nodes, edges)
    X, injections = finite_colimit(diagram)
    expected = _quotient_sizes(nodes, edges, COLIMIT_SITE)
    for a in COLIMIT_SITE.objects:
        assert len(X.values[a]) == expected[a]
        hit = set()
        for nk in nodes:
            for e in nodes[nk].values[a]:
                hit.add(injections[nk][a][e])
        assert hit == set(X.values[a])
    for sk, dk, comp in edges:
        for a in COLIMIT_SITE.objects:
            for e, img in comp[a].items():
                assert injections[sk][a][e] == injections[dk][a][img]


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(COLIMIT_SHAPES), st.sampled_from(COLIMIT_SHAPES))
def test_coproduct_colimits_add_levelwise(at, bt):
    CONSTRUCTED[0] += 1
    nodes = {"a": _NERVES[at], "b": _NERVES[bt]}
    X, injections = finite_colimit(DiagramSpec(nodes, []))
    for a in COLIMIT_SITE.objects:
        assert len(X.values[a]) == len(_NERVES[at].values[a]) + len(
            _NERVES[bt].values[a]
        )
        ia = set(injections["a"][a].values())
        ib = set(injections["b"][a].values())
        assert not (ia & ib)
