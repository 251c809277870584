"""Set-valued presheaves on a truncated site of shapes.

Elements of a nerve level are frozen 2-functors; actions precompose with site
morphisms.  Colimits are computed pointwise (which is exactly what makes them
an honest *verification target* rather than a construction method for tensors:
see finite_colimit's docstring).
"""

from __future__ import annotations

from .fincat import FinCat
from .shapes import format_gs, glob, parse_gs
from .twocat import TwoCat, TwoFunctor, compose_two_functors, enumerate_functors


class RecognitionError(Exception):
    """A presheaf failed a condition needed to read it back as a 2-category."""


def _key(x):
    return repr(x)


class SetPresheaf:
    def __init__(self, site, values, actions, check=True):
        self.site = site
        self.values = {a: list(v) for a, v in values.items()}
        self.actions = dict(actions)
        if check:
            self.validate()

    def value(self, a):
        return self.values[a]

    def act(self, a, b, i, e):
        """Action X(b) -> X(a) of the i-th morphism a -> b."""
        return self.actions[(a, b, i)][e]

    def validate(self):
        site = self.site
        for a in site.objects:
            assert a in self.values, ("missing level", a)
        for a in site.objects:
            for b in site.objects:
                for i in range(len(site.hom(a, b))):
                    m = self.actions[(a, b, i)]
                    for e in self.values[b]:
                        assert m[e] in set(self.values[a]), ("action escapes level", a, b, i)
        for a in site.objects:
            i = site.identity_index(a)
            for e in self.values[a]:
                assert self.act(a, a, i, e) == e, ("identity acts nontrivially", a)
        for a in site.objects:
            for b in site.objects:
                for c in site.objects:
                    for i in range(len(site.hom(a, b))):
                        for j in range(len(site.hom(b, c))):
                            ji = site.compose(a, b, c, j, i)
                            for e in self.values[c]:
                                assert self.act(a, b, i, self.act(b, c, j, e)) == self.act(
                                    a, c, ji, e
                                ), ("action not functorial", a, b, c, i, j)

    def total_size(self):
        return sum(len(v) for v in self.values.values())

    def level_counts(self):
        return {format_gs(a): len(self.values[a]) for a in self.site.objects}


def nerve(C, site):
    """The restricted nerve: level at a = all 2-functors realize(a) -> C."""
    values = {}
    functors = {}
    for a in site.objects:
        fs = enumerate_functors(site.realize(a), C, budget=site.budget)
        values[a] = [F.freeze() for F in fs]
        for F in fs:
            functors[(a, F.freeze())] = F
    actions = {}
    for a in site.objects:
        for b in site.objects:
            for i, m in enumerate(site.hom(a, b)):
                table = {}
                for e in values[b]:
                    table[e] = compose_two_functors(functors[(b, e)], m).freeze()
                actions[(a, b, i)] = table
    X = SetPresheaf(site, values, actions, check=False)
    X._functors = functors
    return X


class DiagramSpec:
    """A finite diagram of presheaves: nodes plus natural maps between them."""

    def __init__(self, nodes, edges, check=True):
        self.nodes = dict(nodes)
        self.edges = list(edges)  # (src_key, dst_key, {a: {elem: elem}})
        if check:
            self.validate()

    def validate(self):
        some = next(iter(self.nodes.values()))
        site = some.site
        for X in self.nodes.values():
            assert X.site is site, "all nodes must share one site"
        for (sk, dk, comp) in self.edges:
            X, Y = self.nodes[sk], self.nodes[dk]
            for a in site.objects:
                for e in X.values[a]:
                    assert comp[a][e] in set(Y.values[a])
            for a in site.objects:
                for b in site.objects:
                    for i in range(len(site.hom(a, b))):
                        for e in X.values[b]:
                            lhs = Y.act(a, b, i, comp[b][e])
                            rhs = comp[a][X.act(a, b, i, e)]
                            assert lhs == rhs, ("edge not natural", sk, dk, a, b, i)


def finite_colimit(diagram):
    """Pointwise colimit of a diagram of presheaves.

    Levelwise: quotient the disjoint union of node levels by the zigzag
    closure of the edge maps.  Returns (colimit, injections) with injections
    keyed by node.  Note this is a colimit of *presheaves*; whether its value
    agrees with a colimit taken in 2-categories is exactly the kind of claim
    the verification battery exists to test.
    """
    site = next(iter(diagram.nodes.values())).site
    node_keys = sorted(diagram.nodes.keys(), key=_key)
    values = {}
    rep_of = {}
    for a in site.objects:
        tagged = [(nk, e) for nk in node_keys for e in diagram.nodes[nk].values[a]]
        parent = {t: t for t in tagged}

        def find(t):
            while parent[t] != t:
                parent[t] = parent[parent[t]]
                t = parent[t]
            return t

        for (sk, dk, comp) in diagram.edges:
            for e in diagram.nodes[sk].values[a]:
                ra, rb = find((sk, e)), find((dk, comp[a][e]))
                if ra != rb:
                    lo, hi = sorted((ra, rb), key=_key)
                    parent[hi] = lo
        classes = {}
        for t in tagged:
            classes.setdefault(find(t), []).append(t)
        reps = sorted(classes.keys(), key=_key)
        values[a] = reps
        rep_of[a] = {t: find(t) for t in tagged}
    actions = {}
    for a in site.objects:
        for b in site.objects:
            for i in range(len(site.hom(a, b))):
                table = {}
                for rb in values[b]:
                    nk, e = rb
                    table[rb] = rep_of[a][(nk, diagram.nodes[nk].act(a, b, i, e))]
                actions[(a, b, i)] = table
    X = SetPresheaf(site, values, actions, check=False)
    # well-definedness of actions across whole classes
    for a in site.objects:
        for b in site.objects:
            for i in range(len(site.hom(a, b))):
                for nk in node_keys:
                    for e in diagram.nodes[nk].values[b]:
                        got = rep_of[a][(nk, diagram.nodes[nk].act(a, b, i, e))]
                        assert actions[(a, b, i)][rep_of[b][(nk, e)]] == got
    injections = {
        nk: {a: {e: rep_of[a][(nk, e)] for e in diagram.nodes[nk].values[a]} for a in site.objects}
        for nk in node_keys
    }
    return X, injections


# -- locating structural site morphisms --------------------------------------


def _site_morphism(site, a_text, b_text, omap, onemap):
    a, b = parse_gs(a_text), parse_gs(b_text)
    F = TwoFunctor(site.realize(a), site.realize(b), omap, onemap)
    return a, b, site.index(a, b, F)


def _one_map(src, fn):
    return {(x, y, f): fn(x, y, f) for (x, y, f) in src.one_cell_keys()}


def _has(site, text):
    return parse_gs(text) in set(site.objects)


def _vertex_map(site, b_text, k):
    b = parse_gs(b_text)
    return _site_morphism(
        site, "[0]", b_text, {0: k}, {(0, 0, ()): ()}
    )


def _bead_map(site, b_text, i):
    """[1; w_i] -> [n; w] covering the i-th bead."""
    b = parse_gs(b_text)
    w = b.widths[i]
    src_text = format_gs(glob((w,)))
    site.realize(parse_gs(src_text))
    omap = {0: i, 1: i + 1}
    onemap = {(0, 0, ()): (), (1, 1, ()): ()}
    for c in range(w + 1):
        onemap[(0, 1, (c,))] = (c,)
    return _site_morphism(site, src_text, b_text, omap, onemap)


def _vertical_map(site, m, eps):
    """[1;1] -> [1;m] covering heights eps, eps+1."""
    onemap = {(0, 0, ()): (), (1, 1, ()): (), (0, 1, (0,)): (eps,), (0, 1, (1,)): (eps + 1,)}
    return _site_morphism(site, "[1;1]", "[1;%d]" % m, {0: 0, 1: 1}, onemap)


def _edge_of_square(site, c):
    """[1] -> [1;1] picking the bottom (c=0) or top (c=1) 1-cell."""
    return _site_morphism(
        site, "[1]", "[1;1]", {0: 0, 1: 1}, {(0, 0, ()): (), (1, 1, ()): (), (0, 1, (0,)): (c,)}
    )


def is_segal_theta2(X, explain=False):
    """Horizontal spine conditions at [n;w] (n >= 2) and vertical at [1;m] (m >= 2)."""
    site = X.site
    report = []
    ok = True
    for b in site.objects:
        n = len(b.widths)
        b_text = format_gs(b)
        if n >= 2:
            need = ["[1;%d]" % w if w else "[1]" for w in b.widths]
            if not _has(site, "[0]") or not all(_has(site, t) for t in need):
                report.append({"object": b_text, "status": "skipped"})
                continue
            beads = [_bead_map(site, b_text, i) for i in range(n)]
            tuples = {}
            for e in X.values[b]:
                key = tuple(X.act(a, bb, i, e) for (a, bb, i) in beads)
                tuples.setdefault(key, []).append(e)
            fiber = _horizontal_fiber(X, b)
            good = all(len(v) == 1 for v in tuples.values()) and set(tuples.keys()) == fiber
            ok = ok and good
            report.append({"object": b_text, "status": "ok" if good else "fail"})
        elif n == 1 and b.widths[0] >= 2:
            m = b.widths[0]
            if not (_has(site, "[1;1]") and _has(site, "[1]")):
                report.append({"object": b_text, "status": "skipped"})
                continue
            slabs = [_vertical_map(site, m, eps) for eps in range(m)]
            tuples = {}
            for e in X.values[b]:
                key = tuple(X.act(a, bb, i, e) for (a, bb, i) in slabs)
                tuples.setdefault(key, []).append(e)
            fiber = _vertical_fiber(X, m)
            good = all(len(v) == 1 for v in tuples.values()) and set(tuples.keys()) == fiber
            ok = ok and good
            report.append({"object": b_text, "status": "ok" if good else "fail"})
    if explain:
        return ok, report
    return ok


def _horizontal_fiber(X, b):
    site = X.site
    n = len(b.widths)
    out = set()
    srcs = []
    tgts = []
    for i, w in enumerate(b.widths):
        t = "[1;%d]" % w if w else "[1]"
        a0 = _vertex_map(site, t, 0)
        a1 = _vertex_map(site, t, 1)
        srcs.append(a0)
        tgts.append(a1)

    def extend(i, prefix, last_tgt):
        t = "[1;%d]" % b.widths[i] if b.widths[i] else "[1]"
        for e in X.values[parse_gs(t)]:
            sa, sb, si = srcs[i]
            ta, tb, ti = tgts[i]
            if last_tgt is not None and X.act(sa, sb, si, e) != last_tgt:
                continue
            nxt = X.act(ta, tb, ti, e)
            if i + 1 == n:
                out.add(tuple(prefix + [e]))
            else:
                extend(i + 1, prefix + [e], nxt)

    extend(0, [], None)
    return out


def _vertical_fiber(X, m):
    site = X.site
    bot = _edge_of_square(site, 0)
    top = _edge_of_square(site, 1)
    sq = parse_gs("[1;1]")
    out = set()

    def extend(eps, prefix, last_top):
        for e in X.values[sq]:
            if last_top is not None and X.act(bot[0], bot[1], bot[2], e) != last_top:
                continue
            nxt = X.act(top[0], top[1], top[2], e)
            if eps + 1 == m:
                out.add(tuple(prefix + [e]))
            else:
                extend(eps + 1, prefix + [e], nxt)

    extend(0, [], None)
    return out


# -- reading a Segal presheaf back as a 2-category ---------------------------


def _segal_preimage(X, b, maps, key_elems):
    matches = [
        e
        for e in X.values[b]
        if tuple(X.act(a, bb, i, e) for (a, bb, i) in maps) == tuple(key_elems)
    ]
    if len(matches) != 1:
        raise RecognitionError(
            "Segal condition fails at %s: %d preimages" % (format_gs(b), len(matches))
        )
    return matches[0]


def presheaf_to_twocat(X):
    """Read a Segal presheaf as a 2-category; RecognitionError when it is not one."""
    site = X.site
    for t in ("[0]", "[1]", "[2]", "[1;1]", "[1;2]", "[2;(1,0)]", "[2;(0,1)]"):
        if not _has(site, t):
            raise RecognitionError("site lacks required object %s" % t)
    o0, o1 = parse_gs("[0]"), parse_gs("[1]")
    sq, o2 = parse_gs("[1;1]"), parse_gs("[2]")
    v0 = _vertex_map(site, "[1]", 0)
    v1 = _vertex_map(site, "[1]", 1)
    deg1 = _site_morphism(site, "[1]", "[0]", {0: 0, 1: 0}, _one_map(site.realize(o1), lambda x, y, f: ()))
    objects = list(X.values[o0])
    src = {f: X.act(*v0, f) for f in X.values[o1]}
    tgt = {f: X.act(*v1, f) for f in X.values[o1]}
    units1 = {x: X.act(*deg1, x) for x in objects}
    # 2-cell boundary
    bot = _edge_of_square(site, 0)
    top = _edge_of_square(site, 1)
    degsq = _site_morphism(
        site,
        "[1;1]",
        "[1]",
        {0: 0, 1: 1},
        {(0, 0, ()): (), (1, 1, ()): (), (0, 1, (0,)): (0,), (0, 1, (1,)): (0,)},
    )
    bsrc = {m: X.act(*bot, m) for m in X.values[sq]}
    btgt = {m: X.act(*top, m) for m in X.values[sq]}
    unit2 = {f: X.act(*degsq, f) for f in X.values[o1]}
    vsq0 = _vertex_map(site, "[1;1]", 0)
    vsq1 = _vertex_map(site, "[1;1]", 1)
    # hom categories
    homs = {}
    for x in objects:
        for y in objects:
            cells = [f for f in X.values[o1] if src[f] == x and tgt[f] == y]
            if not cells:
                continue
            mors = [m for m in X.values[sq] if X.act(*vsq0, m) == x and X.act(*vsq1, m) == y]
            comp = _vertical_comp_table(X, mors, bsrc, btgt)
            try:
                homs[(x, y)] = FinCat(
                    cells,
                    mors,
                    {m: bsrc[m] for m in mors},
                    {m: btgt[m] for m in mors},
                    {f: unit2[f] for f in cells},
                    comp,
                )
            except AssertionError as exc:
                raise RecognitionError("hom at %r is not a category: %s" % ((x, y), exc))
    # horizontal composition of 1-cells via [2]
    spine2 = [_bead_map(site, "[2]", 0), _bead_map(site, "[2]", 1)]
    d1 = _site_morphism(
        site,
        "[1]",
        "[2]",
        {0: 0, 1: 2},
        {(0, 0, ()): (), (1, 1, ()): (), (0, 1, (0,)): (0, 0)},
    )
    comp1 = {}
    for f in X.values[o1]:
        for g in X.values[o1]:
            if tgt[f] != src[g]:
                continue
            chain = _segal_preimage(X, o2, spine2, (f, g))
            comp1[(g, f)] = X.act(*d1, chain)

    def hcomp1(x, y, z, g, f):
        return comp1[(g, f)]

    # whiskers
    rw = _whisker_table(X, "[2;(1,0)]", True, bsrc, btgt, src, tgt)
    lw = _whisker_table(X, "[2;(0,1)]", False, bsrc, btgt, src, tgt)
    hcomp2 = {}
    for (x, y) in list(homs.keys()):
        for (y2, z) in list(homs.keys()):
            if y2 != y:
                continue
            ha, hb, hc = homs[(x, y)], homs[(y2, z)], homs.get((x, z))
            for beta in hb.arrows:
                for alpha in ha.arrows:
                    first = rw[(bsrc[beta], alpha)]  # r * alpha : r.p => r.q
                    second = lw[(beta, btgt[alpha])]  # beta * q : r.q => s.q
                    hcomp2[(x, y, z, beta, alpha)] = hc.comp[(second, first)]
    try:
        return TwoCat(objects, homs, units1, hcomp1, hcomp2, check=True)
    except AssertionError as exc:
        raise RecognitionError("presheaf does not assemble into a 2-category: %s" % exc)


def _vertical_comp_table(X, mors, bsrc, btgt):
    site = X.site
    o12 = parse_gs("[1;2]")
    slabs = [_vertical_map(site, 2, 0), _vertical_map(site, 2, 1)]
    outer = _site_morphism(
        site,
        "[1;1]",
        "[1;2]",
        {0: 0, 1: 1},
        {(0, 0, ()): (), (1, 1, ()): (), (0, 1, (0,)): (0,), (0, 1, (1,)): (2,)},
    )
    comp = {}
    for m1 in mors:
        for m2 in mors:
            if btgt[m1] != bsrc[m2]:
                continue
            chain = _segal_preimage(X, o12, slabs, (m1, m2))
            comp[(m2, m1)] = X.act(*outer, chain)
    return comp


def _whisker_table(X, shape_text, two_cell_first, bsrc, btgt, src, tgt):
    """Composite 2-cells out of [2;(1,0)] (2-cell in bead 0) or [2;(0,1)]."""
    site = X.site
    b = parse_gs(shape_text)
    beads = [_bead_map(site, shape_text, 0), _bead_map(site, shape_text, 1)]
    if two_cell_first:
        diag_onemap = {
            (0, 0, ()): (),
            (1, 1, ()): (),
            (0, 1, (0,)): (0, 0),
            (0, 1, (1,)): (1, 0),
        }
    else:
        diag_onemap = {
            (0, 0, ()): (),
            (1, 1, ()): (),
            (0, 1, (0,)): (0, 0),
            (0, 1, (1,)): (0, 1),
        }
    diag = _site_morphism(site, "[1;1]", shape_text, {0: 0, 1: 2}, diag_onemap)
    sq = parse_gs("[1;1]")
    o1 = parse_gs("[1]")
    table = {}
    for e0 in X.values[sq if two_cell_first else o1]:
        for e1 in X.values[o1 if two_cell_first else sq]:
            if two_cell_first:
                if tgt[bsrc[e0]] != src[e1]:
                    continue
            else:
                if tgt[e0] != src[bsrc[e1]]:
                    continue
            chain = _segal_preimage(X, b, beads, (e0, e1))
            if two_cell_first:
                table[(e1, e0)] = X.act(*diag, chain)
            else:
                table[(e1, e0)] = X.act(*diag, chain)
    return table


# -- completeness -------------------------------------------------------------


def is_complete(X, explain=False):
    """Invertible 1-cells and 2-cells of a Segal presheaf must be degenerate."""
    site = X.site
    o0, o1, o2 = parse_gs("[0]"), parse_gs("[1]"), parse_gs("[2]")
    sq, o12 = parse_gs("[1;1]"), parse_gs("[1;2]")
    v0, v1 = _vertex_map(site, "[1]", 0), _vertex_map(site, "[1]", 1)
    deg1 = _site_morphism(site, "[1]", "[0]", {0: 0, 1: 0}, _one_map(site.realize(o1), lambda x, y, f: ()))
    src = {f: X.act(*v0, f) for f in X.values[o1]}
    tgt = {f: X.act(*v1, f) for f in X.values[o1]}
    idmap = {x: X.act(*deg1, x) for x in X.values[o0]}
    spine2 = [_bead_map(site, "[2]", 0), _bead_map(site, "[2]", 1)]
    d1 = _site_morphism(
        site, "[1]", "[2]", {0: 0, 1: 2}, {(0, 0, ()): (), (1, 1, ()): (), (0, 1, (0,)): (0, 0)}
    )

    def comp(g, f):
        chain = _segal_preimage(X, o2, spine2, (f, g))
        return X.act(*d1, chain)

    degenerate1 = set(idmap.values())
    ok_objects = True
    for f in X.values[o1]:
        for g in X.values[o1]:
            if src[g] != tgt[f] or tgt[g] != src[f]:
                continue
            if comp(g, f) == idmap[src[f]] and comp(f, g) == idmap[tgt[f]]:
                if f not in degenerate1:
                    ok_objects = False
    bot, top = _edge_of_square(site, 0), _edge_of_square(site, 1)
    degsq = _site_morphism(
        site,
        "[1;1]",
        "[1]",
        {0: 0, 1: 1},
        {(0, 0, ()): (), (1, 1, ()): (), (0, 1, (0,)): (0,), (0, 1, (1,)): (0,)},
    )
    bsrc = {m: X.act(*bot, m) for m in X.values[sq]}
    btgt = {m: X.act(*top, m) for m in X.values[sq]}
    unit2 = {f: X.act(*degsq, f) for f in X.values[o1]}
    slabs = [_vertical_map(site, 2, 0), _vertical_map(site, 2, 1)]
    outer = _site_morphism(
        site,
        "[1;1]",
        "[1;2]",
        {0: 0, 1: 1},
        {(0, 0, ()): (), (1, 1, ()): (), (0, 1, (0,)): (0,), (0, 1, (1,)): (2,)},
    )

    def vcomp(m2, m1):
        chain = _segal_preimage(X, o12, slabs, (m1, m2))
        return X.act(*outer, chain)

    degenerate2 = set(unit2.values())
    ok_arrows = True
    for m in X.values[sq]:
        for m2 in X.values[sq]:
            if bsrc[m2] != btgt[m] or btgt[m2] != bsrc[m]:
                continue
            if vcomp(m2, m) == unit2[bsrc[m]] and vcomp(m, m2) == unit2[btgt[m]]:
                if m not in degenerate2:
                    ok_arrows = False
    out = {"objects": ok_objects, "arrows": ok_arrows, "complete": ok_objects and ok_arrows}
    if explain:
        return out
    return out["complete"]


# -- presheaf isomorphism ------------------------------------------------------


def _fingerprints(X):
    """Per-element invariants: preimage counts under every incoming action."""
    site = X.site
    fps = {}
    for b in site.objects:
        counts = {e: [] for e in X.values[b]}
        for c in site.objects:
            for j in range(len(site.hom(b, c))):
                pre = {}
                for e in X.values[c]:
                    img = X.act(b, c, j, e)
                    pre[img] = pre.get(img, 0) + 1
                for e in X.values[b]:
                    counts[e].append(pre.get(e, 0))
        for e in X.values[b]:
            fps[(b, e)] = tuple(counts[e])
    return fps


def are_isomorphic(X, Y, explain=False):
    """A natural levelwise bijection X -> Y, or None.

    Backtracks level by level; each element placement is checked against every
    action whose both endpoints are already assigned, so a full assignment is
    natural by induction.  Candidate images are pre-filtered by preimage-count
    fingerprints (full unconstrained bijection enumeration would be factorial).
    """
    site = X.site
    assert Y.site is site
    for a in site.objects:
        if len(X.values[a]) != len(Y.values[a]):
            return None
    fx, fy = _fingerprints(X), _fingerprints(Y)
    levels = list(site.objects)
    assign = {}

    def placement_ok(a, mapping, e, ye):
        # actions out of level a: X(a) -> X(b)
        for b in levels:
            mb = mapping if b == a else assign.get(b)
            if mb is None:
                continue
            for i in range(len(site.hom(b, a))):
                img = X.act(b, a, i, e)
                if img in mb and Y.act(b, a, i, ye) != mb[img]:
                    return False
        # actions into level a from assigned elements: X(c) -> X(a)
        for c in levels:
            mc = mapping if c == a else assign.get(c)
            if mc is None:
                continue
            for j in range(len(site.hom(a, c))):
                for e2, ye2 in mc.items():
                    if X.act(a, c, j, e2) == e and Y.act(a, c, j, ye2) != ye:
                        return False
        return True

    def solve(li):
        if li == len(levels):
            return True
        a = levels[li]
        xs = X.values[a]
        ys = Y.values[a]

        def place(k, used, mapping):
            if k == len(xs):
                assign[a] = dict(mapping)
                if solve(li + 1):
                    return True
                del assign[a]
                return False
            e = xs[k]
            for ye in ys:
                if ye in used or fy[(a, ye)] != fx[(a, e)]:
                    continue
                mapping[e] = ye
                if placement_ok(a, mapping, e, ye):
                    used.add(ye)
                    if place(k + 1, used, mapping):
                        return True
                    used.discard(ye)
                del mapping[e]
            return False

        return place(0, set(), {})

    if solve(0):
        return dict(assign)
    return None
