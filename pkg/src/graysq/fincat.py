"""Finite categories with explicit composition tables, and exhaustive functor enumeration."""

from __future__ import annotations

import itertools


class BudgetError(Exception):
    """Raised when an enumeration exceeds its configured budget."""


def _key(x):
    return repr(x)


class FinCat:
    """A finite category: object/arrow labels, endpoint maps, units, composition."""

    def __init__(self, objects, arrows, src, tgt, unit, comp, check=True):
        self.objects = list(objects)
        self.arrows = list(arrows)
        self.src = dict(src)
        self.tgt = dict(tgt)
        self.unit = dict(unit)
        self.comp = dict(comp)
        self._cache = {}
        if check:
            self.validate()

    def validate(self):
        objs = set(self.objects)
        arrs = set(self.arrows)
        assert len(objs) == len(self.objects), "duplicate object labels"
        assert len(arrs) == len(self.arrows), "duplicate arrow labels"
        for a in self.arrows:
            assert self.src[a] in objs and self.tgt[a] in objs
        for x in self.objects:
            u = self.unit[x]
            assert u in arrs and self.src[u] == x and self.tgt[u] == x
        for (g, f), h in self.comp.items():
            assert g in arrs and f in arrs and h in arrs
            assert self.src[g] == self.tgt[f]
            assert self.src[h] == self.src[f] and self.tgt[h] == self.tgt[g]
        for g in self.arrows:
            for f in self.arrows:
                if self.src[g] == self.tgt[f]:
                    assert (g, f) in self.comp, ("missing composite", g, f)
        for f in self.arrows:
            assert self.comp[(f, self.unit[self.src[f]])] == f
            assert self.comp[(self.unit[self.tgt[f]], f)] == f
        for h in self.arrows:
            for g in self.arrows:
                if self.src[h] != self.tgt[g]:
                    continue
                hg = self.comp[(h, g)]
                for f in self.arrows:
                    if self.src[g] != self.tgt[f]:
                        continue
                    assert self.comp[(hg, f)] == self.comp[(h, self.comp[(g, f)])], (
                        "associativity fails",
                        h,
                        g,
                        f,
                    )

    def is_unit(self, a):
        return self.unit[self.src[a]] == a

    def hom(self, x, y):
        k = ("hom", x, y)
        if k not in self._cache:
            self._cache[k] = [a for a in self.arrows if self.src[a] == x and self.tgt[a] == y]
        return self._cache[k]

    def compose(self, g, f):
        return self.comp[(g, f)]

    def nonunit_arrows(self):
        return [a for a in self.arrows if not self.is_unit(a)]

    def nonunit_from(self, x):
        k = ("from", x)
        if k not in self._cache:
            self._cache[k] = [a for a in self.nonunit_arrows() if self.src[a] == x]
        return self._cache[k]

    def composable_pairs(self):
        """All (g, f) with src g == tgt f, paired with their composite."""
        k = "pairs"
        if k not in self._cache:
            self._cache[k] = [
                (g, f, self.comp[(g, f)])
                for g in self.arrows
                for f in self.arrows
                if self.src[g] == self.tgt[f]
            ]
        return self._cache[k]

    def op(self):
        comp = {(f, g): h for (g, f), h in self.comp.items()}
        return FinCat(
            self.objects,
            self.arrows,
            self.tgt,
            self.src,
            self.unit,
            comp,
            check=False,
        )

    def product(self, other):
        objects = [(x, y) for x in self.objects for y in other.objects]
        arrows = [(a, b) for a in self.arrows for b in other.arrows]
        src = {(a, b): (self.src[a], other.src[b]) for (a, b) in arrows}
        tgt = {(a, b): (self.tgt[a], other.tgt[b]) for (a, b) in arrows}
        unit = {(x, y): (self.unit[x], other.unit[y]) for (x, y) in objects}
        comp = {}
        for (g1, f1, h1) in self.composable_pairs():
            for (g2, f2, h2) in other.composable_pairs():
                comp[((g1, g2), (f1, f2))] = (h1, h2)
        return FinCat(objects, arrows, src, tgt, unit, comp, check=False)

    def invertible_arrows(self):
        out = []
        for f in self.arrows:
            x, y = self.src[f], self.tgt[f]
            for g in self.hom(y, x):
                if self.comp[(g, f)] == self.unit[x] and self.comp[(f, g)] == self.unit[y]:
                    out.append(f)
                    break
        return out

    def components(self):
        """Connected components of the underlying graph, as a dict object -> root."""
        parent = {x: x for x in self.objects}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in self.arrows:
            rx, ry = find(self.src[a]), find(self.tgt[a])
            if rx != ry:
                parent[max(rx, ry, key=_key)] = min(rx, ry, key=_key)
        return {x: find(x) for x in self.objects}

    def is_thin(self):
        for x in self.objects:
            for y in self.objects:
                if len(self.hom(x, y)) > 1:
                    return False
        return True

    def generators(self):
        """Generating arrows plus a derivation of every arrow from them.

        Returns (gens, deriv) with deriv[a] one of ("unit", x), ("gen",),
        ("comp", g, f) where g, f are already derivable.  Indecomposables may
        fail to generate (e.g. a non-identity idempotent splits only through
        itself), so underivable arrows are promoted to generators until
        everything is covered.
        """
        k = "generators"
        if k in self._cache:
            return self._cache[k]
        nonunits = sorted(self.nonunit_arrows(), key=_key)
        splits = {
            a: [
                (g, f)
                for (g, f, h) in self.composable_pairs()
                if h == a and not self.is_unit(g) and not self.is_unit(f)
            ]
            for a in nonunits
        }
        gens = [a for a in nonunits if not splits[a]]
        deriv = {self.unit[x]: ("unit", x) for x in self.objects}
        for a in gens:
            deriv[a] = ("gen",)
        pending = [a for a in nonunits if a not in deriv]
        while pending:
            progress = True
            while progress:
                progress = False
                still = []
                for a in pending:
                    hit = None
                    for (g, f) in splits[a]:
                        if g in deriv and f in deriv:
                            hit = ("comp", g, f)
                            break
                    if hit:
                        deriv[a] = hit
                        progress = True
                    else:
                        still.append(a)
                pending = still
            if pending:
                a = pending.pop(0)
                gens.append(a)
                deriv[a] = ("gen",)
        self._cache[k] = (gens, deriv)
        return self._cache[k]

    def is_free(self):
        """True when the category is freely generated by its generator set."""
        k = "free"
        if k in self._cache:
            return self._cache[k]
        gens, _ = self.generators()
        outgoing = {x: [] for x in self.objects}
        for a in gens:
            outgoing[self.src[a]].append(a)
        # count generator paths; a cycle in the generator graph means not free
        counts = {}
        state = {}

        def paths_from(x):
            if x in counts:
                return counts[x]
            if state.get(x) == "open":
                return None
            state[x] = "open"
            total = 1
            for a in outgoing[x]:
                sub = paths_from(self.tgt[a])
                if sub is None:
                    return None
                total += sub
            state[x] = "done"
            counts[x] = total
            return total

        total = 0
        ok = True
        for x in self.objects:
            sub = paths_from(x)
            if sub is None:
                ok = False
                break
            total += sub
        self._cache[k] = ok and total == len(self.arrows)
        return self._cache[k]


class CatFunctor:
    """A functor between finite categories, stored as explicit label maps."""

    def __init__(self, A, B, omap, amap, check=True):
        self.A = A
        self.B = B
        self.omap = dict(omap)
        self.amap = dict(amap)
        if check:
            self.validate()

    def validate(self):
        A, B = self.A, self.B
        for x in A.objects:
            assert self.omap[x] in B.objects
        for a in A.arrows:
            fa = self.amap[a]
            assert B.src[fa] == self.omap[A.src[a]]
            assert B.tgt[fa] == self.omap[A.tgt[a]]
        for x in A.objects:
            assert self.amap[A.unit[x]] == B.unit[self.omap[x]]
        for (g, f, h) in A.composable_pairs():
            assert self.amap[h] == B.comp[(self.amap[g], self.amap[f])]

    def freeze(self):
        return (
            tuple(self.omap[x] for x in self.A.objects),
            tuple(self.amap[a] for a in self.A.arrows),
        )

    def __eq__(self, other):
        return isinstance(other, CatFunctor) and self.freeze() == other.freeze()

    def __hash__(self):
        return hash(self.freeze())

    def is_bijective(self):
        return len(set(self.omap.values())) == len(self.B.objects) and len(
            set(self.amap.values())
        ) == len(self.B.arrows) and len(self.A.objects) == len(self.B.objects) and len(
            self.A.arrows
        ) == len(self.B.arrows)


def identity_cat_functor(A):
    return CatFunctor(A, A, {x: x for x in A.objects}, {a: a for a in A.arrows}, check=False)


def compose_cat_functors(G, F):
    assert F.B is G.A
    return CatFunctor(
        F.A,
        G.B,
        {x: G.omap[F.omap[x]] for x in F.A.objects},
        {a: G.amap[F.amap[a]] for a in F.A.arrows},
        check=False,
    )


def _derive_images(A, B, deriv, omap, gen_images):
    """Extend generator images to all arrows along stored derivations."""
    amap = {}

    def image(a):
        if a in amap:
            return amap[a]
        d = deriv[a]
        if d[0] == "unit":
            out = B.unit[omap[d[1]]]
        elif d[0] == "gen":
            out = gen_images[a]
        else:
            out = B.comp[(image(d[1]), image(d[2]))]
        amap[a] = out
        return out

    for a in A.arrows:
        image(a)
    return amap


def cat_functors(A, B, fix_objects=None, budget=None):
    """All functors A -> B, optionally with a forced object map."""
    gens, deriv = A.generators()
    skip_comp_check = A.is_free()
    pairs = A.composable_pairs() if not skip_comp_check else []
    results = []
    explored = [0]

    def spend():
        explored[0] += 1
        if budget is not None and explored[0] > budget:
            raise BudgetError("cat_functors exceeded budget %d" % budget)

    hom_nonempty_A = {
        (x, y) for x in A.objects for y in A.objects if A.hom(x, y)
    }

    def assign_objects(i, omap):
        if i == len(A.objects):
            assign_gens(0, omap, {})
            return
        x = A.objects[i]
        if fix_objects is not None and x in fix_objects:
            candidates = [fix_objects[x]]
        else:
            candidates = B.objects
        for y in candidates:
            spend()
            ok = True
            for j in range(i):
                xj = A.objects[j]
                if (xj, x) in hom_nonempty_A and not B.hom(omap[xj], y):
                    ok = False
                    break
                if (x, xj) in hom_nonempty_A and not B.hom(y, omap[xj]):
                    ok = False
                    break
            if ok:
                if (x, x) in hom_nonempty_A and not B.hom(y, y):
                    ok = False
            if ok:
                omap[x] = y
                assign_objects(i + 1, omap)
                del omap[x]

    def assign_gens(i, omap, gen_images):
        if i == len(gens):
            amap = _derive_images(A, B, deriv, omap, gen_images)
            if not skip_comp_check:
                for (g, f, h) in pairs:
                    if amap[h] != B.comp[(amap[g], amap[f])]:
                        return
            results.append(CatFunctor(A, B, dict(omap), amap, check=False))
            return
        a = gens[i]
        for b in B.hom(omap[A.src[a]], omap[A.tgt[a]]):
            spend()
            gen_images[a] = b
            assign_gens(i + 1, omap, gen_images)
            del gen_images[a]

    assign_objects(0, {})
    results.sort(key=lambda F: _key(F.freeze()))
    return results


def poset_cat(elements, leq):
    """The thin category of a poset; arrows are (lower, upper) pairs."""
    elements = list(elements)
    arrows = [(p, q) for p in elements for q in elements if leq(p, q)]
    src = {(p, q): p for (p, q) in arrows}
    tgt = {(p, q): q for (p, q) in arrows}
    unit = {p: (p, p) for p in elements}
    comp = {}
    arrset = set(arrows)
    for (q, r) in arrows:
        for (p, q2) in arrows:
            if q2 == q:
                assert (p, r) in arrset, ("leq not transitive", p, q, r)
                comp[((q, r), (p, q2))] = (p, r)
    cat = FinCat(elements, arrows, src, tgt, unit, comp, check=False)
    for p in elements:
        assert leq(p, p), ("leq not reflexive", p)
    return cat


def discrete_cat(labels):
    return poset_cat(labels, lambda p, q: p == q)


def ordinal(n):
    """The poset category 0 -> 1 -> ... -> n."""
    return poset_cat(range(n + 1), lambda p, q: p <= q)


def monotone_maps(m, n):
    """All order-preserving maps {0..m} -> {0..n}, as (m+1)-tuples."""
    out = []
    for comb in itertools.combinations_with_replacement(range(n + 1), m + 1):
        out.append(comb)
    return out
