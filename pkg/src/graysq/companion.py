"""Companion pairs in double categories and the induced universal properties.

A companion pair is a vertical arrow f together with a horizontal arrow F
and two binding squares eta (identity verticals on the left, f on the
right, from the unit horizontal to F) and epsilon (the mirror) satisfying
the two triangle laws: vertically they compose to the unit square on f,
horizontally to the unit square on F.
"""

from __future__ import annotations

from .fincat import CatFunctor, FinCat
from .shapes import build_globular_sum
from .twocat import tau1_cat
from .double import (
    DoubleCat,
    DoubleFunctor,
    compose_double_functors,
    completeness,
    double_tables,
    enumerate_double_functors,
    inclusion,
    squares,
    unit_trip,
)


class HypothesisViolation(Exception):
    """An input fails a precondition of the statement being checked."""


class CompanionWitness:
    def __init__(self, f, F, eta, epsilon):
        self.f = f
        self.F = F
        self.eta = eta
        self.epsilon = epsilon

    def freeze(self):
        return (self.f, self.F, self.eta, self.epsilon)

    def __eq__(self, other):
        return isinstance(other, CompanionWitness) and self.freeze() == other.freeze()

    def __hash__(self):
        return hash(self.freeze())

    def __repr__(self):
        return "CompanionWitness(f=%r, F=%r)" % (self.f, self.F)


def is_companion_pair(Q, w):
    """Boundary mismatches raise; the triangle laws decide the answer."""
    P0, P1 = Q.P0, Q.P1
    f, F, eta, eps = w.f, w.F, w.eta, w.epsilon
    x, y = P0.src[f], P0.tgt[f]
    assert Q.s.omap[F] == x and Q.t.omap[F] == y, "horizontal side out of place"
    assert P1.src[eta] == Q.u.omap[x] and P1.tgt[eta] == F, "eta squares the wrong frame"
    assert Q.s.amap[eta] == P0.unit[x] and Q.t.amap[eta] == f, "eta sides mismatch"
    assert P1.src[eps] == F and P1.tgt[eps] == Q.u.omap[y], "epsilon squares the wrong frame"
    assert Q.s.amap[eps] == f and Q.t.amap[eps] == P0.unit[y], "epsilon sides mismatch"
    return P1.comp[(eps, eta)] == Q.u.amap[f] and Q.hcomp_mor[(eps, eta)] == P1.unit[F]


def find_companions(Q, f):
    """All companion witnesses for the vertical arrow f, in a fixed order."""
    key = ("companions", f)
    if key in Q._cache:
        return Q._cache[key]
    P0, P1 = Q.P0, Q.P1
    x, y = P0.src[f], P0.tgt[f]
    out = []
    for F in P1.objects:
        if Q.s.omap[F] != x or Q.t.omap[F] != y:
            continue
        etas = [
            a
            for a in P1.hom(Q.u.omap[x], F)
            if Q.s.amap[a] == P0.unit[x] and Q.t.amap[a] == f
        ]
        epss = [
            a
            for a in P1.hom(F, Q.u.omap[y])
            if Q.s.amap[a] == f and Q.t.amap[a] == P0.unit[y]
        ]
        for eta in etas:
            for eps in epss:
                w = CompanionWitness(f, F, eta, eps)
                if is_companion_pair(Q, w):
                    out.append(w)
    out.sort(key=lambda w: repr(w.freeze()))
    Q._cache[key] = out
    return out


def admits_companion(Q, f):
    return bool(find_companions(Q, f))


def companion_horizontals(Q):
    """The horizontal arrows appearing in some companion witness."""
    key = "companion_horizontals"
    if key not in Q._cache:
        out = []
        for f in Q.P0.arrows:
            for w in find_companions(Q, f):
                if w.F not in out:
                    out.append(w.F)
        Q._cache[key] = out
    return Q._cache[key]


def companions_equivalent(Q, F, G):
    """A vertically invertible square F -> G with identity vertical sides."""
    if Q.s.omap[F] != Q.s.omap[G] or Q.t.omap[F] != Q.t.omap[G]:
        return False
    inv = set(Q.P1.invertible_arrows())
    return any(
        a in inv and Q.P0.is_unit(Q.s.amap[a]) and Q.P0.is_unit(Q.t.amap[a])
        for a in Q.P1.hom(F, G)
    )


def companion_uniqueness_report(Q):
    """Any two companions of the same vertical must be isomorphic in place."""
    checked = 0
    failures = []
    for f in Q.P0.arrows:
        ws = find_companions(Q, f)
        for w1 in ws:
            for w2 in ws:
                checked += 1
                if not companions_equivalent(Q, w1.F, w2.F):
                    failures.append((f, w1.F, w2.F))
    return {"passed": not failures, "checked": checked, "failures": failures}


def companion_closure_report(Q):
    """Companion data must be closed under both composition directions."""
    admitting = [v for v in Q.P0.arrows if admits_companion(Q, v)]
    aset = set(admitting)
    vcomp_closed = all(
        Q.P0.comp[(g, f)] in aset
        for g in admitting
        for f in admitting
        if Q.P0.src[g] == Q.P0.tgt[f]
    )
    ch = companion_horizontals(Q)
    cset = set(ch)
    hcomp_closed = all(
        Q.hcomp_obj[(G, F)] in cset
        for G in ch
        for F in ch
        if Q.s.omap[G] == Q.t.omap[F]
    )
    units_in = all(Q.u.omap[x] in cset for x in Q.P0.objects) and all(
        Q.P0.unit[x] in aset for x in Q.P0.objects
    )
    return {
        "passed": vcomp_closed and hcomp_closed and units_in,
        "vcomp_closed": vcomp_closed,
        "hcomp_closed": hcomp_closed,
        "units_in": units_in,
        "admitting": len(admitting),
        "companions": len(ch),
    }


# -- companion subobjects --------------------------------------------------------


def _restrict_cat(C, keep_objects, keep_arrows):
    keep_objects = list(keep_objects)
    keep_arrows = list(keep_arrows)
    aset = set(keep_arrows)
    src = {a: C.src[a] for a in keep_arrows}
    tgt = {a: C.tgt[a] for a in keep_arrows}
    unit = {x: C.unit[x] for x in keep_objects}
    comp = {}
    for (g, f), h in C.comp.items():
        if g in aset and f in aset:
            assert h in aset, ("restriction not closed under composition", g, f)
            comp[(g, f)] = h
    return FinCat(keep_objects, keep_arrows, src, tgt, unit, comp)


def comp_subobject(Q, which):
    """The sub-double-category cut out by companion-admitting data."""
    assert which in ("vcomp", "hcomp")
    if which == "vcomp":
        admitting = [v for v in Q.P0.arrows if admits_companion(Q, v)]
        aset = set(admitting)
        P0 = _restrict_cat(Q.P0, Q.P0.objects, admitting)
        keep = [a for a in Q.P1.arrows if Q.s.amap[a] in aset and Q.t.amap[a] in aset]
        P1 = _restrict_cat(Q.P1, Q.P1.objects, keep)
        s = CatFunctor(P1, P0, dict(Q.s.omap), {a: Q.s.amap[a] for a in keep}, check=False)
        t = CatFunctor(P1, P0, dict(Q.t.omap), {a: Q.t.amap[a] for a in keep}, check=False)
        u = CatFunctor(P0, P1, dict(Q.u.omap), {v: Q.u.amap[v] for v in admitting}, check=False)
        hobj = dict(Q.hcomp_obj)
        kset = set(keep)
        hmor = {
            (b, a): c for (b, a), c in Q.hcomp_mor.items() if b in kset and a in kset
        }
        return DoubleCat(P0, P1, s, t, u, hobj, hmor, name="Comp_v(%s)" % (Q.name or "?"))
    ch = companion_horizontals(Q)
    cset = set(ch)
    keep = [a for a in Q.P1.arrows if Q.P1.src[a] in cset and Q.P1.tgt[a] in cset]
    P1 = _restrict_cat(Q.P1, ch, keep)
    s = CatFunctor(
        P1, Q.P0, {F: Q.s.omap[F] for F in ch}, {a: Q.s.amap[a] for a in keep}, check=False
    )
    t = CatFunctor(
        P1, Q.P0, {F: Q.t.omap[F] for F in ch}, {a: Q.t.amap[a] for a in keep}, check=False
    )
    u = CatFunctor(Q.P0, P1, dict(Q.u.omap), dict(Q.u.amap), check=False)
    hobj = {
        (G, F): H for (G, F), H in Q.hcomp_obj.items() if G in cset and F in cset
    }
    kset = set(keep)
    hmor = {(b, a): c for (b, a), c in Q.hcomp_mor.items() if b in kset and a in kset}
    return DoubleCat(Q.P0, P1, s, t, u, hobj, hmor, name="Comp_h(%s)" % (Q.name or "?"))


def comp_core(Q):
    """Both restrictions at once: companion verticals and companion horizontals."""
    admitting = [v for v in Q.P0.arrows if admits_companion(Q, v)]
    aset = set(admitting)
    ch = companion_horizontals(Q)
    cset = set(ch)
    P0 = _restrict_cat(Q.P0, Q.P0.objects, admitting)
    keep = [
        a
        for a in Q.P1.arrows
        if Q.s.amap[a] in aset
        and Q.t.amap[a] in aset
        and Q.P1.src[a] in cset
        and Q.P1.tgt[a] in cset
    ]
    P1 = _restrict_cat(Q.P1, ch, keep)
    s = CatFunctor(
        P1, P0, {F: Q.s.omap[F] for F in ch}, {a: Q.s.amap[a] for a in keep}, check=False
    )
    t = CatFunctor(
        P1, P0, {F: Q.t.omap[F] for F in ch}, {a: Q.t.amap[a] for a in keep}, check=False
    )
    u = CatFunctor(P0, P1, dict(Q.u.omap), {v: Q.u.amap[v] for v in admitting}, check=False)
    hobj = {(G, F): H for (G, F), H in Q.hcomp_obj.items() if G in cset and F in cset}
    kset = set(keep)
    hmor = {(b, a): c for (b, a), c in Q.hcomp_mor.items() if b in kset and a in kset}
    return DoubleCat(P0, P1, s, t, u, hobj, hmor, name="Core(%s)" % (Q.name or "?"))


def verify_comp_core(names=("[1]", "[2]", "[1;1]")):
    """In the squares of a gaunt 2-category everything is companion data."""
    shapes_report = {}
    passed = True
    for nm in names:
        Q = squares(build_globular_sum(nm))
        core = comp_core(Q)
        same = double_tables(core) == double_tables(Q)
        passed = passed and same
        shapes_report[nm] = {
            "equal": same,
            "counts": core.counts(),
        }
    return {"passed": passed, "shapes": shapes_report}


# -- universal properties ---------------------------------------------------------


def _unit_functor_v(C):
    """C embedded vertically into its squares, identity on the 1-skeleton."""
    A = inclusion(C, "v")
    B = squares(C)
    f0 = CatFunctor(
        A.P0, B.P0, {x: x for x in A.P0.objects}, {a: a for a in A.P0.arrows}, check=False
    )
    f1 = CatFunctor(
        A.P1,
        B.P1,
        {x: unit_trip(x, C) for x in A.P1.objects},
        {
            (f, g, m): (unit_trip(f[0], C), unit_trip(f[1], C), f, g, m)
            for (f, g, m) in A.P1.arrows
        },
    )
    return DoubleFunctor(A, B, f0, f1)


def _unit_functor_h(C):
    """C embedded horizontally into its squares, identity on 1- and 2-cells."""
    A = inclusion(C, "h")
    B = squares(C)
    P0 = tau1_cat(C)
    f0 = CatFunctor(
        A.P0,
        B.P0,
        {x: x for x in A.P0.objects},
        {a: P0.unit[a[0]] for a in A.P0.arrows},
        check=False,
    )
    f1 = CatFunctor(
        A.P1,
        B.P1,
        {F: F for F in A.P1.objects},
        {
            (F, G, m): (F, G, P0.unit[F[0]], P0.unit[F[1]], m)
            for (F, G, m) in A.P1.arrows
        },
    )
    return DoubleFunctor(A, B, f0, f1)


def verify_universal_property(C, Q, side, budget=None):
    """Restriction along the embedding is injective with the companion image.

    Maps out of squares(C) restrict to maps out of the vertical (resp.
    horizontal) embedding of C; the image is exactly the maps landing in
    companion-admitting verticals (resp. companion horizontals).  The
    horizontal form presupposes local completeness of Q.
    """
    assert side in ("vertical", "horizontal")
    if side == "horizontal" and not completeness(Q, "locally"):
        raise HypothesisViolation(
            "horizontal universal property needs a locally complete target"
        )
    S = squares(C)
    if side == "vertical":
        J = _unit_functor_v(C)
        A = J.A

        def lands(psi):
            return all(admits_companion(Q, psi.f0.amap[v]) for v in A.P0.arrows)

    else:
        J = _unit_functor_h(C)
        A = J.A
        cset = set(companion_horizontals(Q))

        def lands(psi):
            return all(psi.f1.omap[F] in cset for F in A.P1.objects)

    full = enumerate_double_functors(S, Q, budget=budget)
    keys = [compose_double_functors(phi, J).freeze() for phi in full]
    injective = len(set(keys)) == len(keys)
    down = enumerate_double_functors(A, Q, budget=budget)
    predicted = {psi.freeze() for psi in down if lands(psi)}
    matches = set(keys) == predicted
    return {
        "passed": injective and matches,
        "injective": injective,
        "image_size": len(set(keys)),
        "predicted_size": len(predicted),
        "total": len(down),
        "side": side,
        "C": C.name,
        "Q": Q.name,
    }
