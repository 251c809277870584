"""Globular sums [n; (m_0..m_{n-1})] and truncated sites of shapes."""

from __future__ import annotations

import itertools
from collections import namedtuple
from functools import lru_cache

from .fincat import BudgetError, monotone_maps, poset_cat
from .twocat import TwoCat, enumerate_functors, identity_two_functor

GlobularSum = namedtuple("GlobularSum", ["widths"])


def glob(widths):
    return GlobularSum(tuple(int(w) for w in widths))


def simplex(n):
    """[n] as a globular sum: n beads of width 0."""
    return glob((0,) * n)


def parse_gs(text):
    """Parse '[0]', '[2]', '[1;2]', '[2;(1,0)]' into a GlobularSum."""
    s = text.strip().replace(" ", "")
    assert s.startswith("[") and s.endswith("]"), ("bad globular sum notation", text)
    body = s[1:-1]
    if ";" not in body:
        return simplex(int(body))
    left, right = body.split(";", 1)
    n = int(left)
    if right.startswith("("):
        assert right.endswith(")")
        widths = tuple(int(p) for p in right[1:-1].split(",") if p != "")
    else:
        widths = tuple(int(p) for p in right.split(","))
        if len(widths) == 1 and n > 1:
            widths = widths * n
    assert len(widths) == n, ("width count mismatch", text)
    return glob(widths)


def format_gs(gs):
    n = len(gs.widths)
    if all(w == 0 for w in gs.widths):
        return "[%d]" % n
    if n == 1:
        return "[1;%d]" % gs.widths[0]
    return "[%d;(%s)]" % (n, ",".join(str(w) for w in gs.widths))


@lru_cache(maxsize=None)
def _build_globular_sum(widths):
    n = len(widths)
    objects = list(range(n + 1))
    homs = {}
    for i in objects:
        for j in objects:
            if i > j:
                continue
            cells = [
                tuple(t) for t in itertools.product(*(range(widths[k] + 1) for k in range(i, j)))
            ]
            homs[(i, j)] = poset_cat(
                cells, lambda p, q: all(a <= b for a, b in zip(p, q))
            )
    units = {i: () for i in objects}

    def hcomp1(x, y, z, g, f):
        return f + g

    out = TwoCat(objects, homs, units, hcomp1, name=format_gs(GlobularSum(widths)))
    return out


def build_globular_sum(gs):
    """The gaunt 2-category of [n; widths]: Hom(i,j) = prod of ordinals."""
    if isinstance(gs, str):
        gs = parse_gs(gs)
    return _build_globular_sum(tuple(gs.widths))


def dual(gs, kind):
    """op reverses 1-cells (bead order); 2op reverses 2-cells (fixes the shape)."""
    if isinstance(gs, str):
        gs = parse_gs(gs)
    if kind == "op":
        return glob(tuple(reversed(gs.widths)))
    if kind == "2op":
        return glob(gs.widths)
    raise ValueError("kind must be 'op' or '2op'")


RECOGNITION_OBJECTS = ("[0]", "[1]", "[2]", "[1;1]", "[1;2]", "[2;(1,0)]", "[2;(0,1)]")
DEFAULT_SITE_OBJECTS = RECOGNITION_OBJECTS + ("[3]", "[2;(1,1)]")


class SiteSpec:
    """A finite full subcategory of shapes, with memoized hom-sets and composition.

    kind 'theta2': objects are globular sums, morphisms are 2-functors between
    realizations.  kind 'delta_square': objects are (n, m) pairs, morphisms are
    pairs of monotone maps.  Composition tables are computed on demand: functor
    composition is associative by construction, so the associativity check is a
    bounded table-integrity test, not a storage requirement.
    """

    def __init__(self, kind, objects, budget=None):
        assert kind in ("theta2", "delta_square")
        self.kind = kind
        self.objects = list(objects)
        self.budget = budget
        self._realize = {}
        self._hom = {}
        self._index = {}
        self._comp = {}

    def realize(self, a):
        if a not in self._realize:
            if self.kind == "theta2":
                self._realize[a] = build_globular_sum(a)
            else:
                from .gray import tensor_simplices

                self._realize[a] = tensor_simplices(a[0], a[1])
        return self._realize[a]

    def hom(self, a, b):
        key = (a, b)
        if key not in self._hom:
            if self.kind == "theta2":
                ms = enumerate_functors(self.realize(a), self.realize(b), budget=self.budget)
            else:
                ms = [
                    (phi, psi)
                    for phi in monotone_maps(a[0], b[0])
                    for psi in monotone_maps(a[1], b[1])
                ]
            self._hom[key] = tuple(ms)
            self._index[key] = {self._freeze(m): i for i, m in enumerate(ms)}
        return self._hom[key]

    def _freeze(self, m):
        if self.kind == "theta2":
            return m.freeze()
        return m

    def index(self, a, b, m):
        self.hom(a, b)
        return self._index[(a, b)][self._freeze(m)]

    def identity_index(self, a):
        if self.kind == "theta2":
            ident = identity_two_functor(self.realize(a))
        else:
            ident = (tuple(range(a[0] + 1)), tuple(range(a[1] + 1)))
        return self.index(a, a, ident)

    def compose(self, a, b, c, j, i):
        """Index in hom(a,c) of hom(b,c)[j] after hom(a,b)[i]."""
        key = (a, b, c, j, i)
        if key not in self._comp:
            m1 = self.hom(a, b)[i]
            m2 = self.hom(b, c)[j]
            if self.kind == "theta2":
                from .twocat import compose_two_functors

                m = compose_two_functors(m2, m1)
            else:
                m = (
                    tuple(m2[0][v] for v in m1[0]),
                    tuple(m2[1][v] for v in m1[1]),
                )
            self._comp[key] = self.index(a, c, m)
        return self._comp[key]

    def validate(self, max_checks=20000):
        """Identities present, composition closed, associativity spot-checked."""
        for a in self.objects:
            self.identity_index(a)
        checks = 0
        complete = True
        for a in self.objects:
            for b in self.objects:
                for c in self.objects:
                    for d in self.objects:
                        for i in range(len(self.hom(a, b))):
                            for j in range(len(self.hom(b, c))):
                                ji = self.compose(a, b, c, j, i)
                                for k in range(len(self.hom(c, d))):
                                    if checks >= max_checks:
                                        complete = False
                                        break
                                    kj = self.compose(b, c, d, k, j)
                                    lhs = self.compose(a, c, d, k, ji)
                                    rhs = self.compose(a, b, d, kj, i)
                                    assert lhs == rhs, ("associativity", a, b, c, d)
                                    checks += 1
                                if not complete:
                                    break
                            if not complete:
                                break
                        if not complete:
                            break
                    if not complete:
                        break
                if not complete:
                    break
            if not complete:
                break
        return {"associativity_checks": checks, "complete": complete}


def site_from_objects(notations, budget=None):
    objs = [parse_gs(t) if isinstance(t, str) else t for t in notations]
    return SiteSpec("theta2", objs, budget=budget)


def default_site(budget=None):
    return site_from_objects(DEFAULT_SITE_OBJECTS, budget=budget)


def recognition_site(budget=None):
    return site_from_objects(RECOGNITION_OBJECTS, budget=budget)


def truncated_site(kind, max_n, max_w=None, budget=None):
    """The full window of shapes with n <= max_n (and widths <= max_w)."""
    if kind == "theta2":
        assert max_w is not None
        objs = []
        for n in range(max_n + 1):
            for widths in itertools.product(range(max_w + 1), repeat=n):
                objs.append(glob(widths))
        return SiteSpec("theta2", objs, budget=budget)
    if kind == "delta_square":
        objs = [(n, m) for n in range(max_n + 1) for m in range(max_n + 1)]
        return SiteSpec("delta_square", objs, budget=budget)
    raise ValueError("kind must be 'theta2' or 'delta_square'")
