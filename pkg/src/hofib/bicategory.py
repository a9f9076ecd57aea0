"""Finite bicategories, lax and oplax functors, transformations and icons.

Conventions: `v(b, a)` is vertical composition b.a (a first), `h(g, f)`
is horizontal composition g o f of 1-cells (f first) and `h2(b, a)` the
horizontal composite of 2-cells.  Constraints:

    a(h, g, f): (h o g) o f => h o (g o f)
    l(f): 1 o f => f          r(f): f o 1 => f

A lax functor has structure cells F(g) o F(f) => F(g o f) and
1 => F(1); an oplax functor has them the other way round.
"""

from collections.abc import Mapping

from ._util import LazyTable, ordered
from .algebra import ordinal
from .report import ValidationReport

LAX, OPLAX = "lax", "oplax"


class FiniteBicategory:
    """Tables of 0-, 1- and 2-cells with both compositions and constraints.

    Any table may be given as a dict or as a function; functions are
    wrapped in a LazyTable over the natural domain of that table.
    """

    TABLES = ("vcomp", "hcomp1", "hcomp2", "id1", "id2", "assoc", "lunit", "runit")

    def __init__(self, objects, cells1, cells2, vcomp, hcomp1, hcomp2, id1, id2,
                 assoc, lunit, runit, name="B"):
        self.objects = tuple(ordered(set(objects)))
        self.cells1 = dict(cells1)
        self.cells2 = dict(cells2)
        self.name = name
        self._idx = None
        self._inv = {}
        domains = {
            "vcomp": self.vertical_pairs, "hcomp1": self.composable1,
            "hcomp2": self.composable2, "id1": lambda: iter(self.objects),
            "id2": lambda: iter(self.cells1), "assoc": self.composable_triples,
            "lunit": lambda: iter(self.cells1), "runit": lambda: iter(self.cells1),
        }
        given = dict(vcomp=vcomp, hcomp1=hcomp1, hcomp2=hcomp2, id1=id1, id2=id2,
                     assoc=assoc, lunit=lunit, runit=runit)
        for t, val in given.items():
            if isinstance(val, Mapping):
                setattr(self, t, val)
            else:
                setattr(self, t, LazyTable(val, domains[t], unpack=t in ("vcomp", "hcomp1", "hcomp2", "assoc")))

    # ------------------------------------------------------------ indexes
    def _index(self):
        if self._idx is None:
            hom1, from1, hom2, from2, obj2 = {}, {}, {}, {}, {}
            for f in ordered(self.cells1):
                s, t = self.cells1[f]
                hom1.setdefault((s, t), []).append(f)
                from1.setdefault(s, []).append(f)
            for al in ordered(self.cells2):
                s, t = self.cells2[al]
                hom2.setdefault((s, t), []).append(al)
                from2.setdefault(s, []).append(al)
                obj2.setdefault(self.cells1[s][0], []).append(al)
            self._idx = (hom1, from1, hom2, from2, obj2)
        return self._idx

    def hom1(self, x, y):
        return self._index()[0].get((x, y), [])

    def from1(self, x):
        return self._index()[1].get(x, [])

    def hom2(self, f, g):
        return self._index()[2].get((f, g), [])

    def from2(self, f):
        return self._index()[3].get(f, [])

    def cells2_from_object(self, x):
        return self._index()[4].get(x, [])

    def vertical_pairs(self):
        for al, (_, g) in self.cells2.items():
            for be in self.from2(g):
                yield be, al

    def composable1(self):
        for f, (_, y) in self.cells1.items():
            for g in self.from1(y):
                yield g, f

    def composable2(self):
        for al, (f, _) in self.cells2.items():
            for be in self.cells2_from_object(self.cells1[f][1]):
                yield be, al

    def composable_triples(self):
        for g, f in self.composable1():
            for h in self.from1(self.cells1[g][1]):
                yield h, g, f

    def composable_quadruples(self):
        for h, g, f in self.composable_triples():
            for k in self.from1(self.cells1[h][1]):
                yield k, h, g, f

    # ------------------------------------------------------------ operations
    def s1(self, f):
        return self.cells1[f][0]

    def t1(self, f):
        return self.cells1[f][1]

    def s2(self, al):
        return self.cells2[al][0]

    def t2(self, al):
        return self.cells2[al][1]

    def v(self, be, al):
        return self.vcomp[(be, al)]

    def vc(self, *cells):
        """cells[0] . cells[1] . ... (the last one is applied first)."""
        res = cells[-1]
        for c in reversed(cells[:-1]):
            res = self.vcomp[(c, res)]
        return res

    def h(self, g, f):
        return self.hcomp1[(g, f)]

    def h2(self, be, al):
        return self.hcomp2[(be, al)]

    def i1(self, x):
        return self.id1[x]

    def i2(self, f):
        return self.id2[f]

    def a(self, h, g, f):
        return self.assoc[(h, g, f)]

    def l(self, f):
        return self.lunit[f]

    def r(self, f):
        return self.runit[f]

    def wl(self, g, al):
        """g o al, whiskering on the left by a 1-cell."""
        return self.hcomp2[(self.id2[g], al)]

    def wr(self, al, f):
        """al o f."""
        return self.hcomp2[(al, self.id2[f])]

    def find_inverse(self, al):
        if al in self._inv:
            return self._inv[al]
        s, t = self.cells2[al]
        res = None
        for be in self.hom2(t, s):
            if self.vcomp.get((be, al)) == self.id2[s] and self.vcomp.get((al, be)) == self.id2[t]:
                res = be
                break
        self._inv[al] = res
        return res

    def inv(self, al):
        be = self.find_inverse(al)
        if be is None:
            raise ValueError(f"2-cell {al!r} is not invertible")
        return be

    def is_iso(self, al):
        return self.find_inverse(al) is not None

    def is_identity2(self, al):
        return al == self.id2[self.cells2[al][0]]

    def materialize(self, name=None):
        return FiniteBicategory(self.objects, self.cells1, self.cells2,
                                *[dict(getattr(self, t).items()) for t in self.TABLES],
                                name=name or self.name)

    def sizes(self):
        return len(self.objects), len(self.cells1), len(self.cells2)

    def __repr__(self):
        return "<FiniteBicategory %s: %d objects, %d 1-cells, %d 2-cells>" % ((self.name,) + self.sizes())


def same_bicategory(A, B):
    return A is B or (A.objects == B.objects and A.cells1 == B.cells1 and A.cells2 == B.cells2)


def bicategories_equal(A, B):
    """Cellwise equality of all cells and tables."""
    if not same_bicategory(A, B):
        return False
    for t in FiniteBicategory.TABLES:
        ta, tb = getattr(A, t), getattr(B, t)
        ka, kb = set(ta), set(tb)
        if ka != kb or any(ta[k] != tb[k] for k in ka):
            return False
    return True


# ---------------------------------------------------------------- validation

def _check_schema(B, rep):
    objs = set(B.objects)
    for f, (x, y) in B.cells1.items():
        if x not in objs or y not in objs:
            rep.schema("dangling-id", ("cells1", f), "endpoint is not an object")
    for al, (f, g) in B.cells2.items():
        if f not in B.cells1 or g not in B.cells1:
            rep.schema("dangling-id", ("cells2", al), "endpoint is not a 1-cell")
        elif B.cells1[f] != B.cells1[g]:
            rep.schema("non-parallel-2-cell", ("cells2", al), (f, g))
    if rep.violations:
        return

    def get(table, k):
        try:
            return getattr(B, table)[k]
        except KeyError:
            rep.schema("missing-entry", (table, k), "no entry")
            return None

    for x in B.objects:
        f = get("id1", x)
        if f is not None and B.cells1.get(f) != (x, x):
            rep.schema("bad-type", ("id1", x), f)
    for f in B.cells1:
        al = get("id2", f)
        if al is not None and B.cells2.get(al) != (f, f):
            rep.schema("bad-type", ("id2", f), al)
    for g, f in B.composable1():
        gf = get("hcomp1", (g, f))
        if gf is not None and B.cells1.get(gf) != (B.s1(f), B.t1(g)):
            rep.schema("bad-type", ("hcomp1", g, f), gf)
    if rep.violations:
        return
    for be, al in B.vertical_pairs():
        c = get("vcomp", (be, al))
        if c is not None and B.cells2.get(c) != (B.s2(al), B.t2(be)):
            rep.schema("bad-type", ("vcomp", be, al), c)
    for be, al in B.composable2():
        c = get("hcomp2", (be, al))
        want = (B.h(B.s2(be), B.s2(al)), B.h(B.t2(be), B.t2(al)))
        if c is not None and B.cells2.get(c) != want:
            rep.schema("bad-type", ("hcomp2", be, al), c)
    for h, g, f in B.composable_triples():
        c = get("assoc", (h, g, f))
        want = (B.h(B.h(h, g), f), B.h(h, B.h(g, f)))
        if c is not None and B.cells2.get(c) != want:
            rep.schema("bad-type", ("assoc", h, g, f), c)
    for f in B.cells1:
        x, y = B.cells1[f]
        c = get("lunit", f)
        if c is not None and B.cells2.get(c) != (B.h(B.i1(y), f), f):
            rep.schema("bad-type", ("lunit", f), c)
        c = get("runit", f)
        if c is not None and B.cells2.get(c) != (B.h(f, B.i1(x)), f):
            rep.schema("bad-type", ("runit", f), c)


def validate_bicategory(B):
    """Exhaustive check of every bicategory axiom instance.

    Naturality of a, l and r is checked in each argument separately; given
    the interchange law (checked in full) this is equivalent to joint
    naturality.
    """
    rep = ValidationReport(f"bicategory {B.name}")
    _check_schema(B, rep)
    if rep.violations:
        return rep
    v, h, h2, i2 = B.v, B.h, B.h2, B.i2
    # vertical categories
    for al, (f, g) in B.cells2.items():
        rep.check("vertical-unit", (al,), (v(i2(g), al), v(al, i2(f))), (al, al))
    for be, al in B.vertical_pairs():
        ba = v(be, al)
        for ga in B.from2(B.t2(be)):
            rep.check("vertical-associativity", (ga, be, al), v(ga, ba), v(v(ga, be), al))
    # interchange
    for g, f in B.composable1():
        rep.check("interchange-identity", (g, f), h2(i2(g), i2(f)), i2(h(g, f)))
    vpairs = {}
    for be, al in B.vertical_pairs():
        vpairs.setdefault(B.s1(B.s2(al)), []).append((be, al))
    for b1, a1 in B.vertical_pairs():
        y = B.t1(B.s2(a1))
        for b2, a2 in vpairs.get(y, ()):
            rep.check("interchange", (b2, a2, b1, a1), h2(v(b2, a2), v(b1, a1)), v(h2(b2, b1), h2(a2, a1)))
    # invertibility
    for h_, g, f in B.composable_triples():
        if not B.is_iso(B.a(h_, g, f)):
            rep.add("assoc-invertible", (h_, g, f), B.a(h_, g, f), None)
    for f in B.cells1:
        if not B.is_iso(B.l(f)):
            rep.add("lunit-invertible", (f,), B.l(f), None)
        if not B.is_iso(B.r(f)):
            rep.add("runit-invertible", (f,), B.r(f), None)
    # naturality
    for al, (f, f2) in B.cells2.items():
        x, y = B.cells1[f]
        rep.check("lunit-naturality", (al,), v(B.l(f2), B.wl(B.i1(y), al)), v(al, B.l(f)))
        rep.check("runit-naturality", (al,), v(B.r(f2), B.wr(al, B.i1(x))), v(al, B.r(f)))
        for g in B.from1(y):
            for k in B.from1(B.t1(g)):
                rep.check("assoc-naturality-1", (k, g, al),
                          v(B.a(k, g, f2), B.wl(h(k, g), al)), v(B.wl(k, B.wl(g, al)), B.a(k, g, f)))
        for g in B.from1(y):
            for e in B.hom1_to(x):
                # al in the middle: g o al o e
                rep.check("assoc-naturality-2", (g, al, e),
                          v(B.a(g, f2, e), B.wr(B.wl(g, al), e)), v(B.wl(g, B.wr(al, e)), B.a(g, f, e)))
        for e in B.hom1_to(x):
            for d in B.hom1_to(B.s1(e)):
                rep.check("assoc-naturality-3", (al, e, d),
                          v(B.a(f2, e, d), B.wr(B.wr(al, e), d)), v(B.wr(al, h(e, d)), B.a(f, e, d)))
    # pentagon and triangle
    for k, h_, g, f in B.composable_quadruples():
        lhs = v(B.a(k, h_, h(g, f)), B.a(h(k, h_), g, f))
        rhs = B.vc(B.wl(k, B.a(h_, g, f)), B.a(k, h(h_, g), f), B.wr(B.a(k, h_, g), f))
        rep.check("pentagon", (k, h_, g, f), lhs, rhs)
    for g, f in B.composable1():
        one = B.i1(B.t1(f))
        rep.check("triangle", (g, f), v(B.wl(g, B.l(f)), B.a(g, one, f)), B.wr(B.r(g), f))
    return rep


def _hom1_to(self, y):
    idx = getattr(self, "_to1", None)
    if idx is None:
        idx = {}
        for f in ordered(self.cells1):
            idx.setdefault(self.cells1[f][1], []).append(f)
        self._to1 = idx
    return idx.get(y, [])


FiniteBicategory.hom1_to = _hom1_to


def is_strict(B):
    return all(B.is_identity2(c) for c in B.assoc.values()) and \
        all(B.is_identity2(B.l(f)) and B.is_identity2(B.r(f)) for f in B.cells1)


def is_two_groupoid(B):
    """Strict, every 2-cell invertible and every 1-cell strictly invertible."""
    if not is_strict(B):
        return False
    if not all(B.is_iso(al) for al in B.cells2):
        return False
    for f, (x, y) in B.cells1.items():
        if not any(B.h(g, f) == B.i1(x) and B.h(f, g) == B.i1(y) for g in B.hom1(y, x)):
            return False
    return True


# ---------------------------------------------------------------- constructors

def discrete_bicategory(C, name=None):
    """A category as a bicategory with only identity 2-cells ("1", f)."""
    one = {f: ("1", f) for f in C.morphisms}
    return FiniteBicategory(
        C.objects, C.morphisms, {one[f]: (f, f) for f in C.morphisms},
        vcomp={(one[f], one[f]): one[f] for f in C.morphisms},
        hcomp1=dict(C.compose),
        hcomp2={(one[g], one[f]): one[gf] for (g, f), gf in C.compose.items()},
        id1=dict(C.identity), id2=one,
        assoc={(h, g, f): one[C.comp(h, C.comp(g, f))] for (g, f) in C.compose
               for h in C.hom_from(C.dst(g))},
        lunit=one, runit=one, name=name or C.name)


TERMINAL = discrete_bicategory(ordinal(0), name="[0]")


def terminal_bicategory():
    return TERMINAL


# ---------------------------------------------------------------- lax morphisms

class LaxMorphism:
    """A lax (or oplax) functor given by its action on cells and its structure cells."""

    def __init__(self, direction, source, target, map0, map1, map2, comp_cell, unit_cell,
                 claims=(), name="F"):
        if direction not in (LAX, OPLAX):
            raise ValueError(f"unknown direction {direction!r}")
        self.direction = direction
        self.source, self.target = source, target
        self.name = name
        self.claims = frozenset(claims)
        S = source
        doms = {"map0": (lambda: iter(S.objects), False), "map1": (lambda: iter(S.cells1), False),
                "map2": (lambda: iter(S.cells2), False), "comp_cell": (S.composable1, True),
                "unit_cell": (lambda: iter(S.objects), False)}
        for t, val in dict(map0=map0, map1=map1, map2=map2, comp_cell=comp_cell, unit_cell=unit_cell).items():
            if isinstance(val, Mapping):
                setattr(self, t, val)
            else:
                setattr(self, t, LazyTable(val, doms[t][0], unpack=doms[t][1]))

    def F0(self, x):
        return self.map0[x]

    def F1(self, f):
        return self.map1[f]

    def F2(self, al):
        return self.map2[al]

    def comp(self, g, f):
        return self.comp_cell[(g, f)]

    def unit(self, x):
        return self.unit_cell[x]

    def is_normal(self):
        T = self.target
        return all(T.is_identity2(self.unit(x)) for x in self.source.objects)

    def is_pseudo(self):
        T = self.target
        return all(T.is_iso(c) for c in self.comp_cell.values()) and \
            all(T.is_iso(self.unit(x)) for x in self.source.objects)

    def is_strict(self):
        T = self.target
        return self.is_normal() and all(T.is_identity2(c) for c in self.comp_cell.values())

    def materialize(self):
        return LaxMorphism(self.direction, self.source, self.target,
                           *[dict(getattr(self, t).items()) for t in ("map0", "map1", "map2", "comp_cell", "unit_cell")],
                           claims=self.claims, name=self.name)

    def __repr__(self):
        return f"<LaxMorphism {self.name} ({self.direction}) {self.source.name} -> {self.target.name}>"


def lax_equal(F, G):
    """Cellwise table equality."""
    if F.direction != G.direction or not same_bicategory(F.source, G.source) \
            or not same_bicategory(F.target, G.target):
        return False
    for t in ("map0", "map1", "map2", "comp_cell", "unit_cell"):
        a, b = getattr(F, t), getattr(G, t)
        if any(a[k] != b[k] for k in a):
            return False
    return True


def lax_difference(F, G):
    """First table entry where F and G differ, or None."""
    for t in ("map0", "map1", "map2", "comp_cell", "unit_cell"):
        a, b = getattr(F, t), getattr(G, t)
        for k in a:
            if a[k] != b[k]:
                return t, k, a[k], b[k]
    return None


def validate_lax(F):
    rep = ValidationReport(f"{F.direction} functor {F.name}")
    S, T = F.source, F.target
    lax = F.direction == LAX
    for x in S.objects:
        if F.map0.get(x) not in set(T.objects):
            rep.schema("map0", (x,), F.map0.get(x))
    for f, (x, y) in S.cells1.items():
        Ff = F.map1.get(f)
        if Ff not in T.cells1:
            rep.schema("map1", (f,), Ff)
        elif T.cells1[Ff] != (F.map0.get(x), F.map0.get(y)):
            rep.schema("map1-type", (f,), Ff)
    if rep.violations:
        return rep
    for al, (f, g) in S.cells2.items():
        Fa = F.map2.get(al)
        if Fa not in T.cells2:
            rep.schema("map2", (al,), Fa)
        elif T.cells2[Fa] != (F.F1(f), F.F1(g)):
            rep.schema("map2-type", (al,), Fa)
    for g, f in S.composable1():
        c = F.comp_cell.get((g, f))
        want = (T.h(F.F1(g), F.F1(f)), F.F1(S.h(g, f)))
        if not lax:
            want = want[::-1]
        if c not in T.cells2:
            rep.schema("comp-cell", (g, f), c)
        elif T.cells2[c] != want:
            rep.schema("comp-cell-type", (g, f), c)
    for x in S.objects:
        c = F.unit_cell.get(x)
        want = (T.i1(F.F0(x)), F.F1(S.i1(x)))
        if not lax:
            want = want[::-1]
        if c not in T.cells2:
            rep.schema("unit-cell", (x,), c)
        elif T.cells2[c] != want:
            rep.schema("unit-cell-type", (x,), c)
    if rep.violations:
        return rep
    v, h2, F1, F2, C = T.v, T.h2, F.F1, F.F2, F.comp
    # local functoriality
    for be, al in S.vertical_pairs():
        rep.check("map2-vertical", (be, al), F2(S.v(be, al)), v(F2(be), F2(al)))
    for f in S.cells1:
        rep.check("map2-identity", (f,), F2(S.i2(f)), T.i2(F1(f)))
    # naturality of structure cells
    for be, al in S.composable2():
        g, g2 = S.cells2[be]
        f, f2 = S.cells2[al]
        if lax:
            rep.check("comp-naturality", (be, al), v(F2(S.h2(be, al)), C(g, f)), v(C(g2, f2), h2(F2(be), F2(al))))
        else:
            rep.check("comp-naturality", (be, al), v(h2(F2(be), F2(al)), C(g, f)), v(C(g2, f2), F2(S.h2(be, al))))
    for hh, g, f in S.composable_triples():
        Fh, Fg, Ff = F1(hh), F1(g), F1(f)
        if lax:
            lhs = T.vc(C(hh, S.h(g, f)), T.wl(Fh, C(g, f)), T.a(Fh, Fg, Ff))
            rhs = T.vc(F2(S.a(hh, g, f)), C(S.h(hh, g), f), T.wr(C(hh, g), Ff))
        else:
            lhs = T.vc(T.a(Fh, Fg, Ff), T.wr(C(hh, g), Ff), C(S.h(hh, g), f))
            rhs = T.vc(T.wl(Fh, C(g, f)), C(hh, S.h(g, f)), F2(S.a(hh, g, f)))
        rep.check("associativity", (hh, g, f), lhs, rhs)
    for f, (x, y) in S.cells1.items():
        Ff = F1(f)
        if lax:
            rep.check("left-unit", (f,), T.vc(F2(S.l(f)), C(S.i1(y), f), T.wr(F.unit(y), Ff)), T.l(Ff))
            rep.check("right-unit", (f,), T.vc(F2(S.r(f)), C(f, S.i1(x)), T.wl(Ff, F.unit(x))), T.r(Ff))
        else:
            rep.check("left-unit", (f,), T.vc(T.l(Ff), T.wr(F.unit(y), Ff), C(S.i1(y), f)), F2(S.l(f)))
            rep.check("right-unit", (f,), T.vc(T.r(Ff), T.wl(Ff, F.unit(x)), C(f, S.i1(x))), F2(S.r(f)))
    for flag, test in (("normal", F.is_normal), ("pseudo", F.is_pseudo), ("strict", F.is_strict)):
        if flag in F.claims and not test():
            rep.add(f"claimed-{flag}", (F.name,), flag, None)
    return rep


def identity_lax(B, direction=LAX):
    return LaxMorphism(direction, B, B, {x: x for x in B.objects}, {f: f for f in B.cells1},
                       {a: a for a in B.cells2},
                       lambda g, f: B.i2(B.h(g, f)), lambda x: B.i2(B.i1(x)),
                       claims=("normal", "pseudo", "strict"), name=f"1_{B.name}")


def compose_lax(G, F, name=None):
    """G after F with pasted structure cells."""
    if G.direction != F.direction:
        raise ValueError("direction mismatch")
    if not same_bicategory(F.target, G.source):
        raise ValueError("F.target is not G.source")
    T = G.target
    lax = F.direction == LAX

    def comp(g, f):
        inner = G.F2(F.comp(g, f))
        outer = G.comp(F.F1(g), F.F1(f))
        return T.v(inner, outer) if lax else T.v(outer, inner)

    def unit(x):
        inner = G.F2(F.unit(x))
        outer = G.unit(F.F0(x))
        return T.v(inner, outer) if lax else T.v(outer, inner)
    claims = F.claims & G.claims
    return LaxMorphism(F.direction, F.source, T,
                       {x: G.F0(F.F0(x)) for x in F.source.objects},
                       {f: G.F1(F.F1(f)) for f in F.source.cells1},
                       {a: G.F2(F.F2(a)) for a in F.source.cells2},
                       comp, unit, claims=claims, name=name or f"{G.name}{F.name}")


def invert_structure(F, name=None):
    """A pseudo functor read in the opposite direction (structure cells inverted)."""
    T = F.target
    d = OPLAX if F.direction == LAX else LAX
    return LaxMorphism(d, F.source, T, F.map0, F.map1, F.map2,
                       lambda g, f: T.inv(F.comp(g, f)), lambda x: T.inv(F.unit(x)),
                       claims=F.claims, name=name or F.name)


def as_direction(F, direction):
    return F if F.direction == direction else invert_structure(F)


def object_homomorphism(b, B, direction=LAX):
    """The normal homomorphism [0] -> B at b, with structure cell l: 1_b o 1_b => 1_b."""
    if b not in set(B.objects):
        raise ValueError(f"{b!r} is not an object of {B.name}")
    S = TERMINAL
    one = B.i1(b)
    cell = B.l(one) if direction == LAX else B.inv(B.l(one))
    return LaxMorphism(direction, S, B, {0: b}, {(0, 0): one}, {("1", (0, 0)): B.i2(one)},
                       {((0, 0), (0, 0)): cell}, {0: B.i2(one)},
                       claims=("normal", "pseudo"), name=f"<{b}>")


def functor_as_lax(Phi, source, target, direction=LAX, name=None):
    """A functor of categories as a strict 2-functor of their discrete bicategories."""
    return LaxMorphism(direction, source, target, dict(Phi.obj), dict(Phi.mor),
                       {("1", f): ("1", g) for f, g in Phi.mor.items()},
                       lambda g, f: target.i2(target.h(Phi.mor[g], Phi.mor[f])),
                       lambda x: target.i2(target.i1(Phi.obj[x])),
                       claims=("normal", "pseudo", "strict"), name=name or Phi.name)


def monotone_as_lax(a, q, p, Dq, Dp, direction=LAX):
    """A monotone map a: [q] -> [p] (tuple of images) as a strict functor."""
    mor = {(i, j): (a[i], a[j]) for i in range(q + 1) for j in range(i, q + 1)}
    return LaxMorphism(direction, Dq, Dp, {i: a[i] for i in range(q + 1)}, mor,
                       {("1", f): ("1", g) for f, g in mor.items()},
                       lambda g, f: ("1", Dp.h(mor[g], mor[f])),
                       lambda x: ("1", (a[x], a[x])),
                       claims=("normal", "pseudo", "strict"), name=f"a{tuple(a)}")


# ---------------------------------------------------------------- transformations

class LaxTransformation:
    """alpha: F => G.  A lax transformation has cells G(f) o alpha_a => alpha_b o F(f);
    an oplax one has them reversed."""

    def __init__(self, direction, source, target, comp0, natcell, name="alpha"):
        self.direction = direction
        self.source, self.target = source, target
        self.comp0 = dict(comp0)
        self.natcell = natcell if isinstance(natcell, Mapping) else \
            LazyTable(natcell, lambda: iter(source.source.cells1), unpack=False)
        self.name = name


def validate_transformation(al):
    F, G = al.source, al.target
    rep = ValidationReport(f"{al.direction} transformation {al.name}")
    if F.direction != G.direction or not same_bicategory(F.source, G.source) \
            or not same_bicategory(F.target, G.target):
        rep.schema("functor-mismatch", (al.name,))
        return rep
    S, T = F.source, F.target
    lax_t = al.direction == LAX
    lax_f = F.direction == LAX
    A = al.comp0
    for x in S.objects:
        if T.cells1.get(A.get(x)) != (F.F0(x), G.F0(x)):
            rep.schema("component-type", (x,), A.get(x))
    if rep.violations:
        return rep
    N = al.natcell
    for f, (x, y) in S.cells1.items():
        want = (T.h(G.F1(f), A[x]), T.h(A[y], F.F1(f)))
        if not lax_t:
            want = want[::-1]
        c = N.get(f)
        if T.cells2.get(c) != want:
            rep.schema("natcell-type", (f,), c)
    if rep.violations:
        return rep
    v, vc, wl, wr, a, ai = T.v, T.vc, T.wl, T.wr, T.a, lambda *k: T.inv(T.a(*k))
    for be, (f, f2) in S.cells2.items():
        x, y = S.cells1[f]
        if lax_t:
            rep.check("naturality", (be,), v(N[f2], wr(G.F2(be), A[x])), v(wl(A[y], F.F2(be)), N[f]))
        else:
            rep.check("naturality", (be,), v(wr(G.F2(be), A[x]), N[f]), v(N[f2], wl(A[y], F.F2(be))))
    for g, f in S.composable1():
        x, y = S.cells1[f]
        z = S.t1(g)
        Gg, Gf, Fg, Ff = G.F1(g), G.F1(f), F.F1(g), F.F1(f)
        ax, ay, az = A[x], A[y], A[z]
        Fc, Gc, gf = F.comp(g, f), G.comp(g, f), S.h(g, f)
        if lax_t and lax_f:
            lhs = vc(wl(az, Fc), a(az, Fg, Ff), wr(N[g], Ff), ai(Gg, ay, Ff), wl(Gg, N[f]), a(Gg, Gf, ax))
            rhs = v(N[gf], wr(Gc, ax))
        elif lax_t:
            lhs = v(wl(az, Fc), N[gf])
            rhs = vc(a(az, Fg, Ff), wr(N[g], Ff), ai(Gg, ay, Ff), wl(Gg, N[f]), a(Gg, Gf, ax), wr(Gc, ax))
        elif lax_f:
            lhs = v(N[gf], wl(az, Fc))
            rhs = vc(wr(Gc, ax), ai(Gg, Gf, ax), wl(Gg, N[f]), a(Gg, ay, Ff), wr(N[g], Ff), ai(az, Fg, Ff))
        else:
            lhs = v(wr(Gc, ax), N[gf])
            rhs = vc(ai(Gg, Gf, ax), wl(Gg, N[f]), a(Gg, ay, Ff), wr(N[g], Ff), ai(az, Fg, Ff), wl(az, Fc))
        rep.check("composition", (g, f), lhs, rhs)
    for x in S.objects:
        ax, one = A[x], S.i1(x)
        Fu, Gu = F.unit(x), G.unit(x)
        li, ri = T.inv(T.l(ax)), T.inv(T.r(ax))
        if lax_t and lax_f:
            rep.check("unit", (x,), vc(wl(ax, Fu), ri, T.l(ax)), v(N[one], wr(Gu, ax)))
        elif lax_t:
            rep.check("unit", (x,), v(wl(ax, Fu), N[one]), vc(ri, T.l(ax), wr(Gu, ax)))
        elif lax_f:
            rep.check("unit", (x,), v(N[one], wl(ax, Fu)), vc(wr(Gu, ax), li, T.r(ax)))
        else:
            rep.check("unit", (x,), v(wr(Gu, ax), N[one]), vc(li, T.r(ax), wl(ax, Fu)))
    return rep


class Icon:
    """Cells Phi_f: F(f) => G(f) between functors that agree on objects."""

    def __init__(self, source, target, cells, name="Phi"):
        self.source, self.target = source, target
        self.cells = dict(cells)
        self.name = name


def validate_icon(Phi):
    F, G = Phi.source, Phi.target
    S, T = F.source, F.target
    rep = ValidationReport(f"icon {Phi.name}")
    for x in S.objects:
        if F.F0(x) != G.F0(x):
            rep.schema("objects-differ", (x,), F.F0(x), G.F0(x))
    for f in S.cells1:
        c = Phi.cells.get(f)
        if T.cells2.get(c) != (F.F1(f), G.F1(f)):
            rep.schema("cell-type", (f,), c)
    if rep.violations:
        return rep
    P = Phi.cells
    lax = F.direction == LAX
    for be, (f, f2) in S.cells2.items():
        rep.check("naturality", (be,), T.v(G.F2(be), P[f]), T.v(P[f2], F.F2(be)))
    for g, f in S.composable1():
        gf = S.h(g, f)
        if lax:
            rep.check("composition", (g, f), T.v(P[gf], F.comp(g, f)), T.v(G.comp(g, f), T.h2(P[g], P[f])))
        else:
            rep.check("composition", (g, f), T.v(G.comp(g, f), P[gf]), T.v(T.h2(P[g], P[f]), F.comp(g, f)))
    for x in S.objects:
        one = S.i1(x)
        if lax:
            rep.check("unit", (x,), T.v(P[one], F.unit(x)), G.unit(x))
        else:
            rep.check("unit", (x,), T.v(G.unit(x), P[one]), F.unit(x))
    return rep


def identity_icon(F):
    return Icon(F, F, {f: F.target.i2(F.F1(f)) for f in F.source.cells1}, name="1")


def compose_icons(Psi, Phi):
    T = Phi.source.target
    return Icon(Phi.source, Psi.target, {f: T.v(Psi.cells[f], Phi.cells[f]) for f in Phi.cells})
