"""Oplax Gray tensor products of thin gaunt 2-categories.

The tensor of a list of factors is built directly on words: objects are tuples,
1-cells are alternating words of non-identity factor arrows (runs), and 2-cells
are the reachability order generated by two move families:

  bump      replace one run f by f' when the factor hom has a 2-cell f => f'
  exchange  adjacent runs (i,f),(j,g) with i < j rewrite, for each
            factorization f = f2.f1 (f2 non-identity) and g = g2.g1
            (g1 non-identity), to (i,f1),(j,g1),(i,f2),(j,g2), dropping
            identity parts and re-merging runs

A single move is a whiskered generating 2-cell, so reachability is exactly the
existence of a 2-cell in the oplax tensor.  Antisymmetry of the reachability
order (gauntness of the result) is checked at build time, never assumed.
"""

from __future__ import annotations

import itertools

from .fincat import BudgetError, poset_cat
from .shapes import build_globular_sum, glob, parse_gs, simplex
from .twocat import (
    TwoCat,
    TwoFunctor,
    _two_functor_is_iso,
    cartesian_product,
    compose_two_functors,
    coproduct_functor,
    coproduct_many,
    enumerate_functors,
    identity_two_functor,
    is_gaunt,
    op,
    product_functor,
    tau0,
    tau1,
    tau1_cat,
    two_op,
    verify_pushout_by_battery,
)


class ThinnessError(Exception):
    """The move order on some hom failed antisymmetry."""


def _key(x):
    return repr(x)


def _as_twocat(A):
    if isinstance(A, TwoCat):
        return A
    return build_globular_sum(A)


class LatticePath:
    """A monotone grid path: start point plus a word in {H, V}."""

    __slots__ = ("start", "steps", "end")

    def __init__(self, start, steps):
        assert all(s in ("H", "V") for s in steps)
        self.start = start
        self.steps = tuple(steps)
        i, j = start
        for s in self.steps:
            if s == "H":
                i += 1
            else:
                j += 1
        self.end = (i, j)

    def __repr__(self):
        return "LatticePath(%r, %r)" % (self.start, "".join(self.steps))

    def dominates(self, other):
        """A 2-cell other => self: self moves every V at least as early."""
        return self.start == other.start and _path_leq(other.steps, self.steps)

    @staticmethod
    def between(start, end):
        di, dj = end[0] - start[0], end[1] - start[1]
        if di < 0 or dj < 0:
            return []
        words = sorted(set(itertools.permutations("H" * di + "V" * dj)))
        return [LatticePath(start, w) for w in words]


class _Factor:
    """Word-building data for one tensor factor: thin, with acyclic 1-cells."""

    def __init__(self, A, idx):
        assert A.thin, "tensor factors must be thin"
        self.A = A
        self.t1 = tau1_cat(A)
        self.unit_triples = {x: (x, x, A.units[x]) for x in A.objects}
        nonunit = [a for a in self.t1.arrows if not self.t1.is_unit(a)]
        for (x, y, f) in nonunit:
            assert x != y, ("factor %d has a non-identity endo 1-cell" % idx, x, f)
        # acyclicity: strict reachability must be irreflexive
        out = {x: [] for x in A.objects}
        for (x, y, f) in nonunit:
            out[x].append(y)
        seen = {}

        def dfs(x, stack):
            seen[x] = "open"
            for y in out[x]:
                if seen.get(y) == "open":
                    raise AssertionError("factor %d has a 1-cell cycle" % idx)
                if y not in seen:
                    dfs(y, stack)
            seen[x] = "done"

        for x in A.objects:
            if x not in seen:
                dfs(x, [])
        self._from = {}
        for a in sorted(nonunit, key=_key):
            self._from.setdefault(a[0], []).append(a)
        self._covers = {}
        for (x, y) in [(x, y) for x in A.objects for y in A.objects if A.one_cells(x, y)]:
            for (p, q) in A.covers(x, y):
                self._covers.setdefault((x, y, p), []).append(q)
        self._facts = {}
        for a in nonunit:
            (x, y, f) = a
            outs = []
            for w in A.objects:
                for a1 in self.t1.hom(x, w):
                    for a2 in self.t1.hom(w, y):
                        if self.t1.comp[(a2, a1)] == a:
                            outs.append(
                                (
                                    None if self.t1.is_unit(a1) else a1,
                                    None if self.t1.is_unit(a2) else a2,
                                )
                            )
            self._facts[a] = [p for p in outs if p != (None, None)]

    def arrows_from(self, x):
        return self._from.get(x, [])

    def covers_of(self, x, y, lab):
        return self._covers.get((x, y, lab), [])

    def factorizations(self, a):
        return self._facts[a]


def _normalize(seq, data):
    out = []
    for letter in seq:
        if out and out[-1][0] == letter[0]:
            i = letter[0]
            a1 = out[-1][1]
            a2 = letter[1]
            assert a1[1] == a2[0]
            comp = data[i].t1.comp[(a2, a1)]
            assert not data[i].t1.is_unit(comp)
            out[-1] = (i, comp)
        else:
            out.append(letter)
    return tuple(out)


def _word_moves(word, data):
    out = []
    for pos, (i, (x, y, lab)) in enumerate(word):
        for lab2 in data[i].covers_of(x, y, lab):
            out.append(word[:pos] + ((i, (x, y, lab2)),) + word[pos + 1 :])
    for pos in range(len(word) - 1):
        (i, fa) = word[pos]
        (j, ga) = word[pos + 1]
        if i >= j:
            continue
        for (f1, f2) in data[i].factorizations(fa):
            if f2 is None:
                continue
            for (g1, g2) in data[j].factorizations(ga):
                if g1 is None:
                    continue
                mid = [
                    l
                    for l in (
                        (i, f1) if f1 is not None else None,
                        (j, g1),
                        (i, f2),
                        (j, g2) if g2 is not None else None,
                    )
                    if l is not None
                ]
                out.append(_normalize(word[:pos] + tuple(mid) + word[pos + 2 :], data))
    return [w for w in out if w != word]


class GrayComputad:
    """Generating data and oriented moves presenting an oplax tensor.

    Words in the generating letters are the 1-cells; the bump and exchange
    moves are the generating 2-cells; normalization merges same-factor runs.
    """

    def __init__(self, factors):
        self.cats = [_as_twocat(A) for A in factors]
        self.factors = [_Factor(A, i) for i, A in enumerate(self.cats)]

    def objects(self):
        return [tuple(t) for t in itertools.product(*(A.objects for A in self.cats))]

    def generating_one_cells(self):
        out = []
        for obj in self.objects():
            for i in range(len(self.cats)):
                for arr in self.factors[i].arrows_from(obj[i]):
                    out.append((obj, (i, arr)))
        return out

    def normalize(self, seq):
        return _normalize(seq, self.factors)

    def moves(self, word):
        return _word_moves(word, self.factors)

    def enumerate_words(self, budget=None):
        """All normalized words, keyed by (source, target) object tuples."""
        words = {}
        count = 0
        for start in self.objects():
            stack = [(start, -1, ())]
            while stack:
                cur, last, word = stack.pop()
                words.setdefault((start, cur), []).append(word)
                count += 1
                if budget is not None and count > budget:
                    raise BudgetError(
                        "tensor word enumeration exceeded budget %d" % budget
                    )
                for i in range(len(self.cats)):
                    if i == last:
                        continue
                    for arr in self.factors[i].arrows_from(cur[i]):
                        nxt = cur[:i] + (arr[1],) + cur[i + 1 :]
                        stack.append((nxt, i, word + ((i, arr),)))
        return words


def tensor_many(factors, budget=None, name=None):
    """The oplax tensor of a list of thin gaunt 2-categories."""
    kom = GrayComputad(factors)
    cats, data = kom.cats, kom.factors
    objects = kom.objects()
    words = kom.enumerate_words(budget)
    homs = {}
    for (a, b), ws in sorted(words.items(), key=lambda kv: _key(kv[0])):
        ws = sorted(set(ws), key=lambda w: (len(w), _key(w)))
        wset = set(ws)
        adj = {}
        for w in ws:
            nbrs = []
            for w2 in _word_moves(w, data):
                assert w2 in wset, ("move left the hom", a, b, w, w2)
                nbrs.append(w2)
            adj[w] = sorted(set(nbrs), key=_key)
        reach = {}

        def explore(w):
            if w in reach:
                return reach[w]
            reach[w] = set()
            acc = set()
            for w2 in adj[w]:
                acc.add(w2)
                acc |= explore(w2)
            reach[w] = acc
            return acc

        for w in ws:
            explore(w)
        for w in ws:
            if w in reach[w]:
                raise ThinnessError("move order has a cycle at hom %r -> %r" % (a, b))
        homs[(a, b)] = poset_cat(ws, lambda p, q, _r=reach: p == q or q in _r[p])
    units = {a: () for a in objects}

    def hcomp1(x, y, z, g, f):
        return _normalize(f + g, data)

    T = TwoCat(objects, homs, units, hcomp1, name=name or "(%s)" % ")*(".join(
        c.name or "?" for c in cats
    ))
    T._tensor = {"cats": cats, "data": data, "computad": kom}
    return T


def tensor(A, B, budget=None):
    return tensor_many([A, B], budget=budget)


def tensor_triple(n1, n2, n3, budget=None):
    """The 2-truncated iterated tensor of three simplices."""
    return tensor_many([simplex(n1), simplex(n2), simplex(n3)], budget=budget)


# -- the lattice-path model for simplex factors (independent oracle) ---------


def _path_endpoint(start, steps):
    i, j = start
    for s in steps:
        if s == "H":
            i += 1
        else:
            j += 1
    return (i, j)


def _path_leq(p, q):
    """2-cell p => q iff q moves every V at least as early (prefix dominance)."""
    if len(p) != len(q):
        return False
    vp = vq = 0
    for k in range(len(p)):
        vp += p[k] == "V"
        vq += q[k] == "V"
        if vq < vp:
            return False
    return vp == vq


def tensor_simplices(n, m):
    """[n] (x) [m] as grid points, monotone step paths, and path dominance."""
    objects = [(i, j) for i in range(n + 1) for j in range(m + 1)]
    homs = {}
    for (i, j) in objects:
        for (i2, j2) in objects:
            if i2 < i or j2 < j:
                continue
            paths = [p.steps for p in LatticePath.between((i, j), (i2, j2))]
            homs[((i, j), (i2, j2))] = poset_cat(paths, _path_leq)
    units = {a: () for a in objects}

    def hcomp1(x, y, z, g, f):
        return f + g

    T = TwoCat(objects, homs, units, hcomp1, name="T(%d,%d)" % (n, m))
    T._paths = (n, m)
    return T


def tensor_simplices_map(phi, psi, src, dst):
    """The functor T(n,m) -> T(n',m') induced by monotone maps phi, psi."""
    omap = {(i, j): (phi[i], psi[j]) for (i, j) in src.objects}

    def map_path(a, w):
        i, j = a
        out = []
        for s in w:
            if s == "H":
                out.extend("H" * (phi[i + 1] - phi[i]))
                i += 1
            else:
                out.extend("V" * (psi[j + 1] - psi[j]))
                j += 1
        return tuple(out)

    onemap = {(a, b, w): map_path(a, w) for (a, b, w) in src.one_cell_keys()}
    return TwoFunctor(src, dst, omap, onemap)


def simplices_engine_to_paths(n, m):
    """The canonical identification of the word and path models of [n] (x) [m]."""
    E = tensor_many([simplex(n), simplex(m)])
    P = tensor_simplices(n, m)
    omap = {a: a for a in E.objects}
    onemap = {}
    for (a, b, w) in E.one_cell_keys():
        steps = []
        for (i, (x, y, lab)) in w:
            steps.extend(("H" if i == 0 else "V") * (y - x))
        onemap[(a, b, w)] = tuple(steps)
    F = TwoFunctor(E, P, omap, onemap)
    return E, P, F


# -- functors out of tensors ---------------------------------------------------


def word_functor(T, target, obj_fn, letter_fn):
    """Build a 2-functor out of a tensor by giving images of letters.

    letter_fn(state, i, arrow) must return a target 1-cell triple (u, v, g) or
    None for an identity; state is the object tuple before the letter fires.
    Functoriality and 2-cell order preservation are checked by validation.
    """
    assert hasattr(T, "_tensor"), "word_functor needs an engine tensor as source"
    omap = {a: obj_fn(a) for a in T.objects}
    onemap = {}
    for (x, y, w) in T.one_cell_keys():
        cur = x
        acc_s = omap[x]
        acc_t = acc_s
        acc = target.units[acc_s]
        for (i, arr) in w:
            out = letter_fn(cur, i, arr)
            if out is not None:
                (u, v, g) = out
                assert u == acc_t, ("letter image does not chain", x, y, w, i, arr)
                acc = target.compose1(acc_s, u, v, g, acc)
                acc_t = v
            cur = cur[:i] + (arr[1],) + cur[i + 1 :]
        assert acc_t == omap[y], ("word image has wrong target", x, y, w)
        onemap[(x, y, w)] = acc
    return TwoFunctor(T, target, omap, onemap)


def tensor_map(Fs, T_src, T_dst):
    """The tensor of a list of 2-functors, on word models."""
    dst_cats = T_dst._tensor["cats"]

    def obj_fn(a):
        return tuple(Fs[i].omap[a[i]] for i in range(len(a)))

    def letter_fn(state, i, arr):
        (x, y, lab) = arr
        img = Fs[i].onemap[(x, y, lab)]
        fx, fy = Fs[i].omap[x], Fs[i].omap[y]
        if fx == fy and img == dst_cats[i].units[fx]:
            return None
        src_obj = obj_fn(state)
        dst_obj = src_obj[:i] + (fy,) + src_obj[i + 1 :]
        return (src_obj, dst_obj, ((i, (fx, fy, img)),))

    return word_functor(T_src, T_dst, obj_fn, letter_fn)


def tensor_project(T, keep):
    """Project a tensor onto one factor, crushing the others."""
    target = T._tensor["cats"][keep]

    def letter_fn(state, i, arr):
        if i != keep:
            return None
        return arr

    return word_functor(T, target, lambda a: a[keep], letter_fn)


def tensor_to_product(T):
    """The canonical comparison A (x) B -> A x B (kills exchange 2-cells)."""
    A, B = T._tensor["cats"]
    P = cartesian_product(A, B)

    def letter_fn(state, i, arr):
        (x, y, lab) = arr
        if i == 0:
            b = state[1]
            return ((x, b), (y, b), (lab, B.units[b]))
        a = state[0]
        return ((a, x), (a, y), (A.units[a], lab))

    return word_functor(T, P, lambda a: a, letter_fn), P


# -- collapse functors ---------------------------------------------------------


def collapse_to_globular(n, m, T=None):
    """psi: [n] (x) [m] -> [n;m], crushing columns to heights."""
    if T is None:
        T = tensor_many([simplex(n), simplex(m)])
    G = build_globular_sum(glob((m,) * n))

    def letter_fn(state, i, arr):
        (x, y, lab) = arr
        if i == 1:
            return None
        j = state[1]
        return (x, y, (j,) * (y - x))

    return word_functor(T, G, lambda a: a[0], letter_fn), G


def row_collapse(n, m, T=None):
    """rho: [m]^op (x) [n] -> [n;m], crushing rows to heights.

    The op on the [m] factor is essential: from [m] (x) [n] the exchange move
    maps to a reversed inequality and the collapse is not order-preserving.
    """
    if T is None:
        T = tensor_many([op(build_globular_sum(simplex(m))), simplex(n)])
    G = build_globular_sum(glob((m,) * n))

    def letter_fn(state, i, arr):
        (x, y, lab) = arr
        if i == 0:
            return None
        j = state[0]
        return (x, y, (j,) * (y - x))

    return word_functor(T, G, lambda a: a[1], letter_fn), G


def funny_collapse(n, m, k):
    """chi: [n] (x) ([m] x [k]) -> [n;m] (x) [k].

    The [n]-letters collapse their [m]-position to a height; product letters
    keep only their [k]-part.  This is the unique factorization of psi (x) id
    through id (x) kappa, kappa the tensor-to-product comparison of [m], [k].
    """
    Sn, Sm, Sk = (build_globular_sum(simplex(v)) for v in (n, m, k))
    P = cartesian_product(Sm, Sk)
    T = tensor_many([Sn, P])
    G = build_globular_sum(glob((m,) * n))
    X = tensor_many([G, Sk])

    def obj_fn(a):
        return (a[0], a[1][1])

    def letter_fn(state, i, arr):
        if i == 0:
            (x, y, lab) = arr
            j, l = state[1]
            g = (x, y, (j,) * (y - x))
            return ((x, l), (y, l), ((0, g),))
        ((j, l), (j2, l2), (fm, fk)) = arr
        if l == l2:
            return None
        i0 = state[0]
        return ((i0, l), (i0, l2), ((1, (l, l2, fk)),))

    return word_functor(T, X, obj_fn, letter_fn), T, X


def funny_factorization(n, m, k):
    """chi together with its existence and uniqueness certificates.

    Existence: chi composed with q = id (x) kappa equals psi (x) id on the
    triple word model.  Uniqueness: q hits every object and its 1-cell image
    generates under composition, and the target is thin, so any two functors
    agreeing after q are equal.
    """
    chi, T, X = funny_collapse(n, m, k)
    Sn, Sm, Sk = (build_globular_sum(simplex(v)) for v in (n, m, k))
    W = tensor_many([Sn, Sm, Sk])

    def q_letter(state, i, arr):
        (x, y, lab) = arr
        if i == 0:
            s, t = (x, (state[1], state[2])), (y, (state[1], state[2]))
            return (s, t, ((0, (x, y, lab)),))
        if i == 1:
            p, p2 = (x, state[2]), (y, state[2])
            s, t = (state[0], p), (state[0], p2)
            return (s, t, ((1, (p, p2, (lab, Sk.units[state[2]]))),))
        p, p2 = (state[1], x), (state[1], y)
        s, t = (state[0], p), (state[0], p2)
        return (s, t, ((1, (p, p2, (Sm.units[state[1]], lab))),))

    q = word_functor(W, T, lambda a: (a[0], (a[1], a[2])), q_letter)

    def psi_id_letter(state, i, arr):
        (x, y, lab) = arr
        if i == 1:
            return None
        if i == 0:
            g = (x, y, (state[1],) * (y - x))
            return ((x, state[2]), (y, state[2]), ((0, g),))
        return ((state[0], x), (state[0], y), ((1, (x, y, lab)),))

    psi_id = word_functor(W, X, lambda a: (a[0], a[2]), psi_id_letter)
    exists = compose_two_functors(chi, q).freeze() == psi_id.freeze()
    # image generation: every generating letter of T is a composite of q-images
    image_letters = {w[0] for w in q.onemap.values() if len(w) == 1}
    pdata = T._tensor["data"][1]
    unique = set(q.omap.values()) == set(T.objects)
    for (obj, (i, arr)) in T._tensor["computad"].generating_one_cells():
        if (i, arr) in image_letters:
            continue
        if i != 1:
            unique = False
            break
        (p, p2, (fm, fk)) = arr
        mid = (p2[0], p[1])
        first = (p, mid, (fm, Sk.units[p[1]]))
        second = (mid, p2, (Sm.units[p2[0]], fk))
        if (
            (1, first) not in image_letters
            or (1, second) not in image_letters
            or pdata.t1.comp[(second, first)] != arr
        ):
            unique = False
            break
    return {"functor": chi, "exists": exists, "unique": unique}


# -- batteries and reports -----------------------------------------------------


def default_battery():
    out = [
        build_globular_sum(parse_gs(t))
        for t in ("[0]", "[1]", "[2]", "[1;1]", "[1;2]", "[2;(1,0)]")
    ]
    out.append(tensor_simplices(1, 1))
    return out


def _terminal_to_point(A, pts, k):
    """The functor A -> pts collapsing A onto tagged point k of a coproduct."""
    omap = {x: (k, 0) for x in A.objects}
    onemap = {(x, y, f): () for (x, y, f) in A.one_cell_keys()}
    return TwoFunctor(A, pts, omap, onemap)


def verify_quotient_prop(n, m, battery=None, budget=None):
    """Both column- and row-crush pushout squares onto [n;m]."""
    battery = battery if battery is not None else default_battery()
    Sm = build_globular_sum(simplex(m))
    S0 = build_globular_sum(simplex(0))
    pts = coproduct_many([S0] * (n + 1))
    G = build_globular_sum(glob((m,) * n))
    pts_to_G = TwoFunctor(
        pts, G, {(k, 0): k for k in range(n + 1)}, {((k, 0), (k, 0), f): () for k in range(n + 1) for f in pts.one_cells((k, 0), (k, 0))}
    )
    # left square: columns
    T = tensor_many([simplex(n), simplex(m)])
    cols = coproduct_many([Sm] * (n + 1))
    f = coproduct_functor(cols, [_terminal_to_point(Sm, pts, k) for k in range(n + 1)])
    col_incls = []
    for k in range(n + 1):
        omap = {j: (k, j) for j in Sm.objects}
        onemap = {
            (x, y, lab): (((1, (x, y, lab)),) if x != y else ())
            for (x, y, lab) in Sm.one_cell_keys()
        }
        col_incls.append(TwoFunctor(Sm, T, omap, onemap))
    g = coproduct_functor(cols, col_incls)
    psi, _ = collapse_to_globular(n, m, T)
    left = verify_pushout_by_battery((f, g), (pts_to_G, psi), battery, budget=budget)
    # right square: rows, from the op factor
    Om = op(Sm)
    T2 = tensor_many([Om, simplex(n)])
    rows = coproduct_many([Om] * (n + 1))
    f2 = coproduct_functor(rows, [_terminal_to_point(Om, pts, k) for k in range(n + 1)])
    row_incls = []
    for k in range(n + 1):
        omap = {j: (j, k) for j in Om.objects}
        onemap = {
            (x, y, lab): (((0, (x, y, lab)),) if x != y else ())
            for (x, y, lab) in Om.one_cell_keys()
        }
        row_incls.append(TwoFunctor(Om, T2, omap, onemap))
    g2 = coproduct_functor(rows, row_incls)
    rho, _ = row_collapse(n, m, T2)
    right = verify_pushout_by_battery((f2, g2), (pts_to_G, rho), battery, budget=budget)
    return {
        "passed": left["passed"] and right["passed"],
        "left": left,
        "right": right,
        "n": n,
        "m": m,
    }


def verify_square_colimit(site=None):
    """[1](x)[1] as a colimit of representables, computed levelwise."""
    from .presheaf import DiagramSpec, are_isomorphic, finite_colimit, nerve
    from .shapes import default_site

    site = site or default_site()
    C2 = build_globular_sum(simplex(2))
    C1 = build_globular_sum(simplex(1))
    C11 = build_globular_sum(parse_gs("[1;1]"))
    N2, N1, N11 = nerve(C2, site), nerve(C1, site), nerve(C11, site)

    def postcompose(Xsrc, F):
        return {
            a: {
                e: compose_two_functors(F, Xsrc._functors[(a, e)]).freeze()
                for e in Xsrc.values[a]
            }
            for a in site.objects
        }

    d1 = TwoFunctor(
        C1, C2, {0: 0, 1: 2}, {(0, 0, ()): (), (1, 1, ()): (), (0, 1, (0,)): (0, 0)}
    )
    iotas = [
        TwoFunctor(
            C1,
            C11,
            {0: 0, 1: 1},
            {(0, 0, ()): (), (1, 1, ()): (), (0, 1, (0,)): (eps,)},
        )
        for eps in (0, 1)
    ]
    nodes = {"left2": N2, "right2": N2, "mid": N11, "e0": N1, "e1": N1}
    edges = [
        ("e0", "left2", postcompose(N1, d1)),
        ("e0", "mid", postcompose(N1, iotas[0])),
        ("e1", "right2", postcompose(N1, d1)),
        ("e1", "mid", postcompose(N1, iotas[1])),
    ]
    colim, _ = finite_colimit(DiagramSpec(nodes, edges))
    target = nerve(tensor_simplices(1, 1), site)
    iso = are_isomorphic(colim, target)
    return {
        "passed": iso is not None,
        "colimit_levels": colim.level_counts(),
        "nerve_levels": target.level_counts(),
    }


def verify_duality(a, b):
    """(A (x) B)^op = B^op (x) A^op and the 2-cell dual, by canonical words."""
    A = _as_twocat(a)
    B = _as_twocat(b)
    T = tensor_many([A, B])
    results = {}
    # op: reverse words, swap factors
    Top = op(T)
    Rop = tensor_many([op(B), op(A)])
    omap = {x: (x[1], x[0]) for x in Top.objects}
    onemap = {}
    for (x, y, w) in Top.one_cell_keys():
        img = tuple((1 - i, (v, u, lab)) for (i, (u, v, lab)) in reversed(w))
        onemap[(x, y, w)] = img
    Fop = TwoFunctor(Top, Rop, omap, onemap)
    results["op"] = _two_functor_is_iso(Fop)
    # 2-op: keep word order, swap factors
    T2 = two_op(T)
    R2 = tensor_many([two_op(B), two_op(A)])
    omap2 = {x: (x[1], x[0]) for x in T2.objects}
    onemap2 = {}
    for (x, y, w) in T2.one_cell_keys():
        img = tuple((1 - i, (u, v, lab)) for (i, (u, v, lab)) in w)
        onemap2[(x, y, w)] = img
    F2 = TwoFunctor(T2, R2, omap2, onemap2)
    results["two_op"] = _two_functor_is_iso(F2)
    results["passed"] = results["op"] and results["two_op"]
    return results


def verify_rigidity(subsite=("[0]", "[1]", "[1;1]"), budget=None):
    """Count the endomorphism families of (x) natural over the subsite."""
    cats = [build_globular_sum(parse_gs(t)) for t in subsite]
    idx = range(len(cats))
    tensors = {}
    ends = {}
    for i in idx:
        for j in idx:
            tensors[(i, j)] = tensor_many([cats[i], cats[j]])
            ends[(i, j)] = enumerate_functors(tensors[(i, j)], tensors[(i, j)], budget=budget)
    maps = {}
    for i in idx:
        for j in idx:
            maps[(i, j)] = enumerate_functors(cats[i], cats[j], budget=budget)
    tmaps = {}
    for (i, j) in tensors:
        for (i2, j2) in tensors:
            for fi, F in enumerate(maps[(i, i2)]):
                for gj, G in enumerate(maps[(j, j2)]):
                    tmaps[(i, j, i2, j2, fi, gj)] = tensor_map(
                        [F, G], tensors[(i, j)], tensors[(i2, j2)]
                    )
    pairs = sorted(tensors.keys())
    solutions = [0]

    def consistent(assign, pq):
        for pq2 in assign:
            for ((a, b), (c, d)) in ((pq, pq2), (pq2, pq)):
                for fi in range(len(maps[(a, c)])):
                    for gj in range(len(maps[(b, d)])):
                        t = tmaps[(a, b, c, d, fi, gj)]
                        lhs = compose_two_functors(t, assign[(a, b)]).freeze()
                        rhs = compose_two_functors(assign[(c, d)], t).freeze()
                        if lhs != rhs:
                            return False
        return True

    def search(k, assign):
        if k == len(pairs):
            solutions[0] += 1
            return
        pq = pairs[k]
        for phi in ends[pq]:
            assign[pq] = phi
            if consistent(assign, pq):
                search(k + 1, assign)
            del assign[pq]

    search(0, {})
    return solutions[0]


def verify_funny_equation(n, m, k, battery=None, budget=None):
    """The vertex square presenting [n;m] (x) [k] from [n] (x) ([m] x [k])."""
    battery = battery if battery is not None else default_battery()
    Sn, Sm, Sk = (build_globular_sum(simplex(v)) for v in (n, m, k))
    P = cartesian_product(Sm, Sk)
    chi, T, X = funny_collapse(n, m, k)
    TP0 = cartesian_product(tau0(Sn), P)
    C = cartesian_product(tau0(Sn), Sk)
    proj_k = TwoFunctor(
        P,
        Sk,
        {(j, l): l for (j, l) in P.objects},
        {(a, b, fg): fg[1] for (a, b, fg) in P.one_cell_keys()},
    )
    f = product_functor(TP0, C, identity_two_functor(tau0(Sn)), proj_k)
    g = TwoFunctor(
        TP0,
        T,
        {x: x for x in TP0.objects},
        {
            (a, b, fg): (((1, (a[1], b[1], fg[1])),) if a[1] != b[1] else ())
            for (a, b, fg) in TP0.one_cell_keys()
        },
    )
    pC = TwoFunctor(
        C,
        X,
        {(i, l): (i, l) for (i, l) in C.objects},
        {
            (a, b, fg): (((1, (a[1], b[1], fg[1])),) if a[1] != b[1] else ())
            for (a, b, fg) in C.one_cell_keys()
        },
    )
    report = verify_pushout_by_battery((f, g), (pC, chi), battery, budget=budget)
    report["n"], report["m"], report["k"] = n, m, k
    return report


def verify_crush_product(n, m, k, battery=None, budget=None):
    """Right and outer crush squares over [n;m] (x) [k] -> [n;m] x [k] -> [n;m]."""
    battery = battery if battery is not None else default_battery()
    G = build_globular_sum(glob((m,) * n))
    Sk = build_globular_sum(simplex(k))
    tG = tau1(G)
    A = tensor_many([tG, Sk])
    D = tensor_many([G, Sk])
    incl = TwoFunctor(
        tG, G, {x: x for x in tG.objects}, {(x, y, f): f for (x, y, f) in tG.one_cell_keys()}
    )
    g = tensor_map([incl, identity_two_functor(Sk)], A, D)
    # right square
    fr, Cr = tensor_to_product(A)
    pDr, Xr = tensor_to_product(D)
    pCr = product_functor(Cr, Xr, incl, identity_two_functor(Sk))
    right = verify_pushout_by_battery((fr, g), (pCr, pDr), battery, budget=budget)
    # outer square
    fo = tensor_project(A, 0)
    pDo = tensor_project(D, 0)
    outer = verify_pushout_by_battery((fo, g), (incl, pDo), battery, budget=budget)
    return {
        "passed": right["passed"] and outer["passed"],
        "right": right,
        "outer": outer,
        "n": n,
        "m": m,
        "k": k,
    }


def verify_step2(n, m, k, battery=None, budget=None):
    """Two spans sharing the pushout [n;k] (x) [m]."""
    battery = battery if battery is not None else default_battery()
    Sn, Sm, Sk = (build_globular_sum(simplex(v)) for v in (n, m, k))
    chi2, Tsw, X = funny_collapse(n, k, m)
    C = cartesian_product(tau0(Sn), Sm)
    pC = TwoFunctor(
        C,
        X,
        {(i, j): (i, j) for (i, j) in C.objects},
        {
            (a, b, fg): (((1, (a[1], b[1], fg[1])),) if a[1] != b[1] else ())
            for (a, b, fg) in C.one_cell_keys()
        },
    )
    # LHS span: vertex inclusions into [n] (x) ([m] x [k])
    P = cartesian_product(Sm, Sk)
    T = tensor_many([Sn, P])
    TP0 = cartesian_product(tau0(Sn), P)
    proj_m = TwoFunctor(
        P,
        Sm,
        {(j, l): j for (j, l) in P.objects},
        {(a, b, fg): fg[0] for (a, b, fg) in P.one_cell_keys()},
    )
    f1 = product_functor(TP0, C, identity_two_functor(tau0(Sn)), proj_m)
    g1 = TwoFunctor(
        TP0,
        T,
        {x: x for x in TP0.objects},
        {
            (a, b, fg): (((1, (a[1], b[1], fg[1])),) if a[1] != b[1] else ())
            for (a, b, fg) in TP0.one_cell_keys()
        },
    )
    P2 = Tsw._tensor["cats"][1]
    swap = TwoFunctor(
        P,
        P2,
        {(j, l): (l, j) for (j, l) in P.objects},
        {(a, b, fg): (fg[1], fg[0]) for (a, b, fg) in P.one_cell_keys()},
    )
    id_swap = tensor_map([identity_two_functor(Sn), swap], T, Tsw)
    pD1 = compose_two_functors(chi2, id_swap)
    lhs = verify_pushout_by_battery((f1, g1), (pC, pD1), battery, budget=budget)
    # RHS span: [k]^op tensored with the vertex square of [n] x [m]
    Ok = op(Sk)
    A2 = tensor_many([Ok, C])
    f2 = tensor_project(A2, 1)
    D2 = tensor_many([Ok, Sn, Sm])

    def g2_letter(state, i, arr):
        if i == 0:
            (x, y, lab) = arr
            s = (x,) + state[1]
            t = (y,) + state[1]
            return (s, t, ((0, (x, y, lab)),))
        (a, b, fg) = arr
        if a[1] == b[1]:
            return None
        s = (state[0], a[0], a[1])
        t = (state[0], b[0], b[1])
        return (s, t, ((2, (a[1], b[1], fg[1])),))

    g2 = word_functor(A2, D2, lambda x: (x[0],) + x[1], g2_letter)

    def pd2_letter(state, i, arr):
        if i == 0:
            return None
        (x, y, lab) = arr
        if i == 1:
            l = state[0]
            gcell = (x, y, (l,) * (y - x))
            return ((x, state[2]), (y, state[2]), ((0, gcell),))
        return ((state[1], x), (state[1], y), ((1, (x, y, lab)),))

    pD2 = word_functor(D2, X, lambda x: (x[1], x[2]), pd2_letter)
    rhs = verify_pushout_by_battery((f2, g2), (pC, pD2), battery, budget=budget)
    return {
        "passed": lhs["passed"] and rhs["passed"],
        "lhs": lhs,
        "rhs": rhs,
        "n": n,
        "m": m,
        "k": k,
    }


def verify_triple_gaunt(max_nm=3, budget=None):
    """Gauntness of simplex tensors and of a triple tensor."""
    details = {}
    ok = True
    for n in range(max_nm + 1):
        for m in range(max_nm + 1):
            g = is_gaunt(tensor_simplices(n, m))
            details["T(%d,%d)" % (n, m)] = g
            ok = ok and g
    W = tensor_triple(1, 1, 1, budget=budget)
    g3 = is_gaunt(W)
    details["[1](x)[1](x)[1]"] = g3
    counts = W.count_cells()
    return {"passed": ok and g3, "details": details, "triple_cells": counts}
