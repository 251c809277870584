"""Finite strict 2-categories with explicit pasting data.

A TwoCat stores hom-categories (FinCat) plus a horizontal composition table.
Thin 2-categories (every hom a poset built by poset_cat, arrows labelled as
(lower, upper) pairs) get horizontal composition of 2-cells derived for free;
general ones must supply it.
"""

from __future__ import annotations

from .fincat import (
    BudgetError,
    CatFunctor,
    FinCat,
    cat_functors,
    discrete_cat,
    poset_cat,
)

EMPTY_HOM = poset_cat([], lambda p, q: False)


def _key(x):
    return repr(x)


class TwoCat:
    def __init__(self, objects, homs, units, hcomp1, hcomp2=None, check=True, name=None):
        self.objects = list(objects)
        self.homs = dict(homs)
        self.units = dict(units)
        self.name = name
        self._cache = {}
        if callable(hcomp1):
            self._hcomp1_fn = hcomp1
            self._hcomp1_memo = {}
        else:
            self._hcomp1_fn = None
            self._hcomp1_memo = dict(hcomp1)
        self.thin = all(h.is_thin() for h in self.homs.values())
        if hcomp2 is None:
            assert self.thin, "non-thin 2-category needs an explicit hcomp2"
            for h in self.homs.values():
                for a in h.arrows:
                    assert a == (h.src[a], h.tgt[a]), (
                        "thin homs must use poset_cat labelling"
                    )
            self._hcomp2 = None
        else:
            self._hcomp2 = hcomp2 if callable(hcomp2) else (lambda *k, _t=dict(hcomp2): _t[k])
        if check:
            self.validate()

    # -- accessors ---------------------------------------------------------

    def hom_cat(self, x, y):
        return self.homs.get((x, y), EMPTY_HOM)

    def one_cells(self, x, y):
        return self.hom_cat(x, y).objects

    def one_cell_keys(self):
        k = "one_cell_keys"
        if k not in self._cache:
            out = []
            for x in self.objects:
                for y in self.objects:
                    for f in self.one_cells(x, y):
                        out.append((x, y, f))
            self._cache[k] = out
        return self._cache[k]

    def two_cell_keys(self):
        k = "two_cell_keys"
        if k not in self._cache:
            out = []
            for x in self.objects:
                for y in self.objects:
                    for m in self.hom_cat(x, y).arrows:
                        out.append((x, y, m))
            self._cache[k] = out
        return self._cache[k]

    def compose1(self, x, y, z, g, f):
        """Horizontal composite of 1-cells f: x -> y then g: y -> z."""
        key = (x, y, z, g, f)
        if key in self._hcomp1_memo:
            return self._hcomp1_memo[key]
        assert self._hcomp1_fn is not None, ("missing composite", key)
        out = self._hcomp1_fn(x, y, z, g, f)
        self._hcomp1_memo[key] = out
        return out

    def compose2(self, x, y, z, beta, alpha):
        """Horizontal composite of 2-cells alpha in hom(x,y), beta in hom(y,z)."""
        if self._hcomp2 is not None:
            return self._hcomp2(x, y, z, beta, alpha)
        p, q = alpha
        r, s = beta
        return (self.compose1(x, y, z, r, p), self.compose1(x, y, z, s, q))

    def leq(self, x, y, p, q):
        """Existence of a 2-cell p => q in a thin hom."""
        key = ("leqset", x, y)
        if key not in self._cache:
            h = self.hom_cat(x, y)
            self._cache[key] = {(h.src[m], h.tgt[m]) for m in h.arrows}
        return (p, q) in self._cache[key]

    def covers(self, x, y):
        """Covering pairs of a thin hom (relations with no strict midpoint)."""
        key = ("covers", x, y)
        if key not in self._cache:
            h = self.hom_cat(x, y)
            rel = [
                (h.src[m], h.tgt[m]) for m in h.arrows if h.src[m] != h.tgt[m]
            ]
            relset = set(rel)
            out = []
            for (p, q) in rel:
                if not any(
                    r != p and r != q and (p, r) in relset and (r, q) in relset
                    for r in h.objects
                ):
                    out.append((p, q))
            self._cache[key] = out
        return self._cache[key]

    def unit2(self, x, y, f):
        return self.hom_cat(x, y).unit[f]

    def count_cells(self):
        n1 = sum(len(self.one_cells(x, y)) for x in self.objects for y in self.objects)
        n2 = sum(
            len(self.hom_cat(x, y).arrows) for x in self.objects for y in self.objects
        )
        # non-identity counts alongside totals
        return {
            "objects": len(self.objects),
            "one_cells": n1,
            "two_cells": n2,
            "nonunit_one_cells": n1 - len(self.objects),
            "nonunit_two_cells": n2 - n1,
        }

    # -- validation --------------------------------------------------------

    def _triples(self):
        k = "triples"
        if k not in self._cache:
            self._cache[k] = [
                (x, y, z)
                for x in self.objects
                for y in self.objects
                for z in self.objects
                if self.one_cells(x, y) and self.one_cells(y, z)
            ]
        return self._cache[k]

    def validate(self):
        for (x, y), h in self.homs.items():
            assert x in self.objects and y in self.objects
            h.validate()
        for x in self.objects:
            assert self.units[x] in self.one_cells(x, x), ("missing unit 1-cell", x)
        for (x, y, z) in self._triples():
            for g in self.one_cells(y, z):
                for f in self.one_cells(x, y):
                    gf = self.compose1(x, y, z, g, f)
                    assert gf in set(self.one_cells(x, z)), ("bad composite", x, y, z, g, f)
        for x in self.objects:
            for y in self.objects:
                for f in self.one_cells(x, y):
                    assert self.compose1(x, y, y, self.units[y], f) == f
                    assert self.compose1(x, x, y, f, self.units[x]) == f
        for (x, y, z) in self._triples():
            for w in self.objects:
                if not self.one_cells(z, w):
                    continue
                for f in self.one_cells(x, y):
                    for g in self.one_cells(y, z):
                        gf = self.compose1(x, y, z, g, f)
                        for h in self.one_cells(z, w):
                            hg = self.compose1(y, z, w, h, g)
                            assert self.compose1(x, z, w, h, gf) == self.compose1(
                                x, y, w, hg, f
                            ), ("hcomp not associative", x, y, z, w, h, g, f)
        if self._hcomp2 is None:
            self._validate_thin_whiskering()
        else:
            self._validate_hcomp2()

    def _validate_thin_whiskering(self):
        # covering pairs suffice: general monotonicity follows by chaining
        for (x, y, z) in self._triples():
            for (r, s) in self.covers(y, z):
                for p in self.one_cells(x, y):
                    rp = self.compose1(x, y, z, r, p)
                    sp = self.compose1(x, y, z, s, p)
                    assert self.leq(x, z, rp, sp), ("whisker not monotone", x, y, z, r, s, p)
            for q in self.one_cells(y, z):
                for (p, p2) in self.covers(x, y):
                    qp = self.compose1(x, y, z, q, p)
                    qp2 = self.compose1(x, y, z, q, p2)
                    assert self.leq(x, z, qp, qp2), ("whisker not monotone", x, y, z, q, p, p2)

    def _validate_hcomp2(self):
        for (x, y, z) in self._triples():
            ha, hb, hc = self.hom_cat(x, y), self.hom_cat(y, z), self.hom_cat(x, z)
            for beta in hb.arrows:
                for alpha in ha.arrows:
                    out = self.compose2(x, y, z, beta, alpha)
                    assert hc.src[out] == self.compose1(x, y, z, hb.src[beta], ha.src[alpha])
                    assert hc.tgt[out] == self.compose1(x, y, z, hb.tgt[beta], ha.tgt[alpha])
            for g in hb.objects:
                for f in ha.objects:
                    assert self.compose2(x, y, z, hb.unit[g], ha.unit[f]) == hc.unit[
                        self.compose1(x, y, z, g, f)
                    ]
            for (b2, b1, bc) in hb.composable_pairs():
                for (a2, a1, ac) in ha.composable_pairs():
                    lhs = self.compose2(x, y, z, bc, ac)
                    rhs = hc.comp[
                        (self.compose2(x, y, z, b2, a2), self.compose2(x, y, z, b1, a1))
                    ]
                    assert lhs == rhs, ("interchange fails", x, y, z, b2, b1, a2, a1)
        for (x, y, z) in self._triples():
            for w in self.objects:
                if not self.one_cells(z, w):
                    continue
                hc = self.hom_cat(z, w)
                for gamma in hc.arrows:
                    for beta in self.hom_cat(y, z).arrows:
                        for alpha in self.hom_cat(x, y).arrows:
                            lhs = self.compose2(
                                x, y, w, self.compose2(y, z, w, gamma, beta), alpha
                            )
                            rhs = self.compose2(
                                x, z, w, gamma, self.compose2(x, y, z, beta, alpha)
                            )
                            assert lhs == rhs, ("hcomp2 not associative",)


# -- constructions ----------------------------------------------------------


def from_fincat(C):
    """A category viewed as a 2-category with only identity 2-cells."""
    homs = {}
    for x in C.objects:
        for y in C.objects:
            fs = C.hom(x, y)
            if fs:
                homs[(x, y)] = poset_cat(fs, lambda p, q: p == q)
    units = {x: C.unit[x] for x in C.objects}
    return TwoCat(C.objects, homs, units, lambda x, y, z, g, f: C.comp[(g, f)], check=False)


def tau1_cat(A):
    """The underlying category of 1-cells, arrows labelled (x, y, f)."""
    k = "tau1_cat"
    if k in A._cache:
        return A._cache[k]
    arrows = A.one_cell_keys()
    src = {a: a[0] for a in arrows}
    tgt = {a: a[1] for a in arrows}
    unit = {x: (x, x, A.units[x]) for x in A.objects}
    comp = {}
    for (x, y, z) in A._triples():
        for g in A.one_cells(y, z):
            for f in A.one_cells(x, y):
                comp[((y, z, g), (x, y, f))] = (x, z, A.compose1(x, y, z, g, f))
    out = FinCat(A.objects, arrows, src, tgt, unit, comp, check=False)
    A._cache[k] = out
    return out


def tau1(A):
    """1-truncation: same objects and 1-cells, only identity 2-cells."""
    homs = {}
    for (x, y), h in A.homs.items():
        if h.objects:
            homs[(x, y)] = poset_cat(list(h.objects), lambda p, q: p == q)
    return TwoCat(
        A.objects,
        homs,
        dict(A.units),
        lambda x, y, z, g, f: A.compose1(x, y, z, g, f),
        check=False,
    )


def tau0(A):
    """0-truncation: the discrete 2-category on the objects."""
    return from_fincat(discrete_cat(list(A.objects)))


def tau1_inclusion(A):
    """The identity-on-cells inclusion tau1(A) -> A."""
    T = tau1(A)
    onemap = {(x, y, f): f for (x, y, f) in T.one_cell_keys()}
    return TwoFunctor(T, A, {x: x for x in T.objects}, onemap)


def tau0_inclusion(A):
    T = tau0(A)
    onemap = {(x, x, f): A.units[x] for (x, x, f) in T.one_cell_keys()}
    return TwoFunctor(T, A, {x: x for x in T.objects}, onemap)


def cartesian_product(A, B):
    objects = [(x, u) for x in A.objects for u in B.objects]
    homs = {}
    thin = A.thin and B.thin
    for (x, u) in objects:
        for (y, v) in objects:
            fa = A.one_cells(x, y)
            fb = B.one_cells(u, v)
            if not fa or not fb:
                continue
            if thin:
                homs[((x, u), (y, v))] = poset_cat(
                    [(f, g) for f in fa for g in fb],
                    lambda p, q, x=x, y=y, u=u, v=v: A.leq(x, y, p[0], q[0])
                    and B.leq(u, v, p[1], q[1]),
                )
            else:
                homs[((x, u), (y, v))] = A.hom_cat(x, y).product(B.hom_cat(u, v))
    units = {(x, u): (A.units[x], B.units[u]) for (x, u) in objects}

    def hcomp1(xu, yv, zw, g, f):
        return (
            A.compose1(xu[0], yv[0], zw[0], g[0], f[0]),
            B.compose1(xu[1], yv[1], zw[1], g[1], f[1]),
        )

    if thin:
        return TwoCat(objects, homs, units, hcomp1, check=False)

    def hcomp2(xu, yv, zw, beta, alpha):
        return (
            A.compose2(xu[0], yv[0], zw[0], beta[0], alpha[0]),
            B.compose2(xu[1], yv[1], zw[1], beta[1], alpha[1]),
        )

    return TwoCat(objects, homs, units, hcomp1, hcomp2, check=False)


def coproduct_many(cats):
    """Disjoint union; objects tagged by component index."""
    objects = [(t, x) for t, c in enumerate(cats) for x in c.objects]
    homs = {}
    for t, c in enumerate(cats):
        for (x, y), h in c.homs.items():
            if h.objects:
                homs[((t, x), (t, y))] = h
    units = {(t, x): cats[t].units[x] for (t, x) in objects}

    def hcomp1(a, b, c, g, f):
        t = a[0]
        assert b[0] == t and c[0] == t
        return cats[t].compose1(a[1], b[1], c[1], g, f)

    if all(c.thin for c in cats):
        return TwoCat(objects, homs, units, hcomp1, check=False)

    def hcomp2(a, b, c, beta, alpha):
        t = a[0]
        return cats[t].compose2(a[1], b[1], c[1], beta, alpha)

    return TwoCat(objects, homs, units, hcomp1, hcomp2, check=False)


def op(A):
    """Reverse 1-cells; 2-cells keep their direction."""
    homs = {}
    for (x, y), h in A.homs.items():
        if h.objects:
            homs[(y, x)] = h

    def hcomp1(x, y, z, g, f):
        return A.compose1(z, y, x, f, g)

    if A.thin:
        return TwoCat(list(A.objects), homs, dict(A.units), hcomp1, check=False)

    def hcomp2(x, y, z, beta, alpha):
        return A.compose2(z, y, x, alpha, beta)

    return TwoCat(list(A.objects), homs, dict(A.units), hcomp1, hcomp2, check=False)


def two_op(A):
    """Reverse 2-cells; 1-cells keep their direction.  Thin inputs only."""
    assert A.thin, "two_op implemented for thin 2-categories"
    homs = {}
    for (x, y), h in A.homs.items():
        if h.objects:
            homs[(x, y)] = poset_cat(
                list(h.objects), lambda p, q, x=x, y=y: A.leq(x, y, q, p)
            )
    return TwoCat(
        list(A.objects),
        homs,
        dict(A.units),
        lambda x, y, z, g, f: A.compose1(x, y, z, g, f),
        check=False,
    )


def is_gaunt(A, explain=False):
    """No non-identity invertible 1-cells or 2-cells."""
    witness = None
    for x in A.objects:
        for y in A.objects:
            for f in A.one_cells(x, y):
                for g in A.one_cells(y, x):
                    if (
                        A.compose1(x, y, x, g, f) == A.units[x]
                        and A.compose1(y, x, y, f, g) == A.units[y]
                    ):
                        if not (x == y and f == A.units[x]):
                            witness = ("one_cell", x, y, f)
                        break
                if witness:
                    break
            if witness:
                break
        if witness:
            break
    if witness is None:
        for (x, y), h in A.homs.items():
            units = {h.unit[o] for o in h.objects}
            bad = [m for m in h.invertible_arrows() if m not in units]
            if bad:
                witness = ("two_cell", x, y, bad[0])
                break
    if explain:
        return witness is None, witness
    return witness is None


# -- 2-functors --------------------------------------------------------------


class TwoFunctor:
    def __init__(self, A, B, omap, onemap, twomap=None, check=True):
        self.A = A
        self.B = B
        self.omap = dict(omap)
        self.onemap = dict(onemap)
        if twomap is None and not B.thin:
            raise AssertionError("explicit twomap required for non-thin target")
        self.twomap = dict(twomap) if twomap is not None else None
        if check:
            self.validate()

    def one(self, x, y, f):
        return self.onemap[(x, y, f)]

    def two(self, x, y, m):
        if self.twomap is not None:
            return self.twomap[(x, y, m)]
        p, q = m
        return (self.one(x, y, p), self.one(x, y, q))

    def validate(self):
        A, B = self.A, self.B
        for x in A.objects:
            assert self.omap[x] in B.objects
        for (x, y, f) in A.one_cell_keys():
            ff = self.onemap[(x, y, f)]
            assert ff in set(B.one_cells(self.omap[x], self.omap[y])), (
                "1-cell image outside hom",
                x,
                y,
                f,
            )
        for x in A.objects:
            assert self.onemap[(x, x, A.units[x])] == B.units[self.omap[x]]
        for (x, y, z) in A._triples():
            for g in A.one_cells(y, z):
                for f in A.one_cells(x, y):
                    gf = A.compose1(x, y, z, g, f)
                    lhs = self.onemap[(x, z, gf)]
                    rhs = B.compose1(
                        self.omap[x],
                        self.omap[y],
                        self.omap[z],
                        self.onemap[(y, z, g)],
                        self.onemap[(x, y, f)],
                    )
                    assert lhs == rhs, ("hcomp1 not preserved", x, y, z, g, f)
        for (x, y), h in A.homs.items():
            bx, by = self.omap[x], self.omap[y]
            hb = B.hom_cat(bx, by)
            if B.thin and self.twomap is None:
                for m in h.arrows:
                    p, q = h.src[m], h.tgt[m]
                    assert B.leq(bx, by, self.onemap[(x, y, p)], self.onemap[(x, y, q)]), (
                        "2-cell image missing",
                        x,
                        y,
                        m,
                    )
            else:
                for m in h.arrows:
                    mm = self.twomap[(x, y, m)]
                    assert hb.src[mm] == self.onemap[(x, y, h.src[m])]
                    assert hb.tgt[mm] == self.onemap[(x, y, h.tgt[m])]
                for f in h.objects:
                    assert self.twomap[(x, y, h.unit[f])] == hb.unit[self.onemap[(x, y, f)]]
                for (m2, m1, mc) in h.composable_pairs():
                    assert self.twomap[(x, y, mc)] == hb.comp[
                        (self.twomap[(x, y, m2)], self.twomap[(x, y, m1)])
                    ]
        if not B.thin or self.twomap is not None:
            for (x, y, z) in A._triples():
                for beta in A.hom_cat(y, z).arrows:
                    for alpha in A.hom_cat(x, y).arrows:
                        lhs = self.two(x, z, A.compose2(x, y, z, beta, alpha))
                        rhs = B.compose2(
                            self.omap[x],
                            self.omap[y],
                            self.omap[z],
                            self.two(y, z, beta),
                            self.two(x, y, alpha),
                        )
                        assert lhs == rhs, ("hcomp2 not preserved", x, y, z, beta, alpha)

    def freeze(self):
        one = tuple(self.onemap[k] for k in self.A.one_cell_keys())
        two = (
            tuple(self.twomap[k] for k in self.A.two_cell_keys())
            if self.twomap is not None
            else None
        )
        return (tuple(self.omap[x] for x in self.A.objects), one, two)

    def __eq__(self, other):
        return isinstance(other, TwoFunctor) and self.freeze() == other.freeze()

    def __hash__(self):
        return hash(self.freeze())


def identity_two_functor(A):
    onemap = {(x, y, f): f for (x, y, f) in A.one_cell_keys()}
    twomap = None if A.thin else {(x, y, m): m for (x, y, m) in A.two_cell_keys()}
    return TwoFunctor(A, A, {x: x for x in A.objects}, onemap, twomap, check=False)


def compose_two_functors(G, F):
    assert F.B is G.A
    omap = {x: G.omap[F.omap[x]] for x in F.A.objects}
    onemap = {}
    for (x, y, f) in F.A.one_cell_keys():
        onemap[(x, y, f)] = G.onemap[(F.omap[x], F.omap[y], F.onemap[(x, y, f)])]
    twomap = None
    if not G.B.thin:
        twomap = {}
        for (x, y, m) in F.A.two_cell_keys():
            twomap[(x, y, m)] = G.two(F.omap[x], F.omap[y], F.two(x, y, m))
    return TwoFunctor(F.A, G.B, omap, onemap, twomap, check=False)


def enumerate_functors(A, B, fix_objects=None, budget=None):
    """All 2-functors A -> B, in a deterministic order."""
    A1 = tau1_cat(A)
    B1 = tau1_cat(B)
    skeletons = cat_functors(A1, B1, fix_objects=fix_objects, budget=budget)
    results = []
    nonempty = [(x, y) for (x, y), h in A.homs.items() if h.objects]
    for F1 in skeletons:
        omap = {x: F1.omap[x] for x in A.objects}
        onemap = {}
        for (x, y, f) in A.one_cell_keys():
            onemap[(x, y, f)] = F1.amap[(x, y, f)][2]
        if B.thin:
            ok = True
            for (x, y) in nonempty:
                h = A.hom_cat(x, y)
                bx, by = omap[x], omap[y]
                for m in h.arrows:
                    p, q = h.src[m], h.tgt[m]
                    if not B.leq(bx, by, onemap[(x, y, p)], onemap[(x, y, q)]):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                results.append(TwoFunctor(A, B, omap, onemap, check=False))
            continue
        # non-thin target: enumerate 2-cell images hom by hom
        hom_choices = []
        ok = True
        for (x, y) in nonempty:
            h = A.hom_cat(x, y)
            hb = B.hom_cat(omap[x], omap[y])
            fixed = {f: onemap[(x, y, f)] for f in h.objects}
            fs = cat_functors(h, hb, fix_objects=fixed, budget=budget)
            if not fs:
                ok = False
                break
            hom_choices.append(((x, y), fs))
        if not ok:
            continue

        def build(i, twomap):
            if i == len(hom_choices):
                cand = TwoFunctor(A, B, omap, onemap, dict(twomap), check=False)
                try:
                    cand.validate()
                except AssertionError:
                    return
                results.append(cand)
                return
            (x, y), fs = hom_choices[i]
            h = A.hom_cat(x, y)
            for Fh in fs:
                for m in h.arrows:
                    twomap[(x, y, m)] = Fh.amap[m]
                build(i + 1, twomap)
            for m in h.arrows:
                twomap.pop((x, y, m), None)

        build(0, {})
    results.sort(key=lambda F: _key(F.freeze()))
    return results


def are_isomorphic_twocats(A, B, budget=None):
    """An isomorphism A -> B if one exists, else None."""
    if len(A.objects) != len(B.objects):
        return None
    ca, cb = A.count_cells(), B.count_cells()
    if ca != cb:
        return None
    homsize = lambda C: sorted(
        (len(C.one_cells(x, y)), len(C.hom_cat(x, y).arrows))
        for x in C.objects
        for y in C.objects
    )
    if homsize(A) != homsize(B):
        return None
    for F in enumerate_functors(A, B, budget=budget):
        if _two_functor_is_iso(F):
            return F
    return None


def _two_functor_is_iso(F):
    A, B = F.A, F.B
    if len(set(F.omap.values())) != len(B.objects) or len(A.objects) != len(B.objects):
        return False
    images = set()
    for (x, y, f) in A.one_cell_keys():
        images.add((F.omap[x], F.omap[y], F.onemap[(x, y, f)]))
    if len(images) != len(A.one_cell_keys()) or len(images) != len(B.one_cell_keys()):
        return False
    if B.thin and F.twomap is None:
        # order-reflection makes the inverse order-preserving
        for (x, y), h in A.homs.items():
            bx, by = F.omap[x], F.omap[y]
            for p in h.objects:
                for q in h.objects:
                    if not A.leq(x, y, p, q) and B.leq(
                        bx, by, F.onemap[(x, y, p)], F.onemap[(x, y, q)]
                    ):
                        return False
        if len(A.two_cell_keys()) != len(B.two_cell_keys()):
            return False
        return True
    im2 = set()
    for (x, y, m) in A.two_cell_keys():
        im2.add((F.omap[x], F.omap[y], F.two(x, y, m)))
    return len(im2) == len(A.two_cell_keys()) == len(B.two_cell_keys())


def coproduct_functor(coprod, comps):
    """Glue functors out of the components of coproduct_many into one."""
    target = comps[0].B
    omap = {}
    onemap = {}
    twomap = None if target.thin else {}
    for (t, x) in coprod.objects:
        omap[(t, x)] = comps[t].omap[x]
    for (a, b, f) in coprod.one_cell_keys():
        t = a[0]
        onemap[(a, b, f)] = comps[t].onemap[(a[1], b[1], f)]
    if twomap is not None:
        for (a, b, m) in coprod.two_cell_keys():
            t = a[0]
            twomap[(a, b, m)] = comps[t].two(a[1], b[1], m)
    return TwoFunctor(coprod, target, omap, onemap, twomap)


def product_functor(P, Q, F, G):
    """F x G : P -> Q on cartesian products P = A x B, Q = C x D."""
    omap = {}
    for (x, u) in P.objects:
        omap[(x, u)] = (F.omap[x], G.omap[u])
    onemap = {}
    for (a, b, fg) in P.one_cell_keys():
        (x, u), (y, v) = a, b
        onemap[(a, b, fg)] = (F.onemap[(x, y, fg[0])], G.onemap[(u, v, fg[1])])
    return TwoFunctor(P, Q, omap, onemap)


# -- pushout verification ----------------------------------------------------


def _induced_pair(phi, pC, pD, compose):
    return (compose(phi, pC).freeze(), compose(phi, pD).freeze())


def pushout_battery_report(span, cocone, battery, enum, compose, budget=None):
    """Check X = C +_A D by comparing maps out of X with span fiber products.

    span = (f: A -> C, g: A -> D); cocone = (pC: C -> X, pD: D -> X).
    `enum` and `compose` abstract over the kind of functor (2-cat or double).
    """
    f, g = span
    pC, pD = cocone
    assert f.A is g.A
    assert pC.A is f.B and pD.A is g.B
    assert pC.B is pD.B
    X = pC.B
    assert compose(pC, f).freeze() == compose(pD, g).freeze(), "cocone does not commute"
    per_target = []
    passed = True
    for E in battery:
        homX = enum(X, E, budget)
        homC = enum(f.B, E, budget)
        homD = enum(g.B, E, budget)
        fiber = set()
        for u in homC:
            uf = compose(u, f).freeze()
            for v in homD:
                if compose(v, g).freeze() == uf:
                    fiber.add((u.freeze(), v.freeze()))
        induced = [_induced_pair(phi, pC, pD, compose) for phi in homX]
        ok = len(set(induced)) == len(induced) and set(induced) == fiber
        passed = passed and ok
        per_target.append(
            {
                "target": getattr(E, "name", None) or repr(len(getattr(E, "objects", []))),
                "maps_out_of_candidate": len(homX),
                "fiber_product": len(fiber),
                "bijective": ok,
            }
        )
    return {"passed": passed, "targets": per_target}


def _enum_two(X, E, budget):
    return enumerate_functors(X, E, budget=budget)


def verify_pushout_by_battery(span, cocone, battery, budget=None):
    return pushout_battery_report(
        span, cocone, battery, _enum_two, compose_two_functors, budget=budget
    )
