"""Geometric nerves, the Grothendieck pseudo-simplicial nerve and the
free-category adjunction for lax functors out of graphs.

A p-simplex of a geometric nerve is a lax (or oplax) functor x: [p] -> B,
stored as a tuple (objs, c1, c2, units):

    objs[i]        x_i
    c1[(i, j)]     x_ij: x_i -> x_j              for i <= j
    c2[(i, j, k)]  x_ijk: x_jk o x_ij => x_ik    (reversed when oplax)
    units[i]       x_i: 1 => x_ii                (reversed when oplax)

with c1 and c2 flattened in lexicographic order of their index tuples.
"""

from functools import cache

from ._util import ResourceLimit, max_cells, ordered
from .algebra import free_category, linear_graph, ordinal
from .bicategory import (
    LAX,
    Icon,
    LaxMorphism,
    compose_lax,
    discrete_bicategory,
    identity_lax,
    validate_icon,
    validate_lax,
)
from .report import ValidationReport
from .simplicial import compose_monotone, from_reindexing, monotone_maps, ordinary_nerve

VARIANTS = ("lax", "normal-lax", "oplax", "normal-oplax")


@cache
def _pairs(p):
    return tuple((i, j) for i in range(p + 1) for j in range(i, p + 1))


@cache
def _triples(p):
    return tuple((i, j, k) for i in range(p + 1) for j in range(i, p + 1) for k in range(j, p + 1))


@cache
def _pindex(p):
    return {ij: n for n, ij in enumerate(_pairs(p))}


@cache
def _tindex(p):
    return {ijk: n for n, ijk in enumerate(_triples(p))}


@cache
def delta(p):
    """[p] as a locally discrete bicategory."""
    return discrete_bicategory(ordinal(p), name=f"[{p}]")


def simplex_dim(x):
    return len(x[0]) - 1


@cache
def reindex_positions(a, q, p):
    """Positions in the pair and triple lists of [p] of the pairs and triples of [q] under a."""
    pi, ti = _pindex(p), _tindex(p)
    return (tuple(pi[(a[i], a[j])] for i, j in _pairs(q)),
            tuple(ti[(a[i], a[j], a[k])] for i, j, k in _triples(q)))


def reindex_simplex(x, a, q, p):
    """x o a for a monotone a: [q] -> [p]."""
    objs, c1, c2, units = x
    pp, tp = reindex_positions(tuple(a), q, p)
    return (tuple(objs[i] for i in a), tuple(c1[k] for k in pp), tuple(c2[k] for k in tp),
            tuple(units[i] for i in a))


def simplex_to_lax(x, B, direction=LAX, name=None):
    """The simplex as a LaxMorphism [p] -> B."""
    p = simplex_dim(x)
    D = delta(p)
    objs, c1, c2, units = x
    pi, ti = _pindex(p), _tindex(p)
    return LaxMorphism(direction, D, B, {i: objs[i] for i in range(p + 1)},
                       {ij: c1[pi[ij]] for ij in _pairs(p)},
                       {("1", ij): B.i2(c1[pi[ij]]) for ij in _pairs(p)},
                       {((j, k), (i, j)): c2[ti[(i, j, k)]] for i, j, k in _triples(p)},
                       {i: units[i] for i in range(p + 1)}, name=name or "x")


def lax_to_simplex(F, p):
    return (tuple(F.F0(i) for i in range(p + 1)),
            tuple(F.F1(ij) for ij in _pairs(p)),
            tuple(F.comp((j, k), (i, j)) for i, j, k in _triples(p)),
            tuple(F.unit(i) for i in range(p + 1)))


# ---------------------------------------------------------------- geometric nerves

class _Extender:
    """Enumerate the extensions of a (p-1)-simplex by a new last vertex p."""

    def __init__(self, B, variant, p):
        self.B = B
        self.lax = variant in ("lax", "normal-lax")
        self.normal = variant.startswith("normal")
        self.p = p
        order = [("o", p), ("c1", p, p), ("u", p), ("c2", p, p, p)]
        for i in range(p - 1, -1, -1):
            order.append(("c1", i, p))
            for j in range(p, i - 1, -1):
                order.append(("c2", i, j, p))
        self.order = order
        pos = {v: n for n, v in enumerate(order)}
        attached = {n: [] for n in range(len(order))}

        def attach(kind, idx, vars_):
            last = max(pos[v] for v in vars_ if v in pos)
            attached[last].append(self._constraint(kind, idx))
        for i in range(p + 1):
            for j in range(i, p + 1):
                for k in range(j, p + 1):
                    vs = [("c2", i, k, p), ("c2", i, j, p), ("c2", j, k, p), ("c2", i, j, k)]
                    attach("assoc", (i, j, k, p), vs)
        for i in range(p + 1):
            attach("lunit", (i, p), [("c2", i, p, p), ("u", p)])
            attach("runit", (i, p), [("c2", i, i, p), ("u", i)])
        self.attached = [tuple(attached[n]) for n in range(len(order))]

    def _constraint(self, kind, idx):
        """A closure (X1, X2, U) -> bool for one coherence equation."""
        B = self.B
        V, H2, I2, A, L, R = B.vcomp, B.hcomp2, B.id2, B.assoc, B.lunit, B.runit
        if kind == "assoc":
            i, j, k, l = idx
            ij, jk, kl = (i, j), (j, k), (k, l)
            ijk, ikl, ijl, jkl = (i, j, k), (i, k, l), (i, j, l), (j, k, l)
            if self.lax:
                def c(X1, X2, U):
                    f, g, h = X1[ij], X1[jk], X1[kl]
                    return V[(X2[ikl], V[(H2[(I2[h], X2[ijk])], A[(h, g, f)])])] == \
                        V[(X2[ijl], H2[(X2[jkl], I2[f])])]
            else:
                def c(X1, X2, U):
                    f, g, h = X1[ij], X1[jk], X1[kl]
                    return V[(A[(h, g, f)], V[(H2[(X2[jkl], I2[f])], X2[ijl])])] == \
                        V[(H2[(I2[h], X2[ijk])], X2[ikl])]
            return c
        i, j = idx
        ij = (i, j)
        if kind == "lunit":
            ijj = (i, j, j)
            if self.lax:
                return lambda X1, X2, U: V[(X2[ijj], H2[(U[j], I2[X1[ij]])])] == L[X1[ij]]
            return lambda X1, X2, U: V[(L[X1[ij]], V[(H2[(U[j], I2[X1[ij]])], X2[ijj])])] == I2[X1[ij]]
        iij = (i, i, j)
        if self.lax:
            return lambda X1, X2, U: V[(X2[iij], H2[(I2[X1[ij]], U[i])])] == R[X1[ij]]
        return lambda X1, X2, U: V[(R[X1[ij]], V[(H2[(I2[X1[ij]], U[i])], X2[iij])])] == I2[X1[ij]]

    def domain(self, var, X0, X1, X2, U):
        B = self.B
        if var[0] == "o":
            return B.objects
        if var[0] == "c1":
            _, i, j = var
            if i == j:
                return [B.i1(X0[i])] if self.normal else B.hom1(X0[i], X0[i])
            return B.hom1(X0[i], X0[j])
        if var[0] == "u":
            i = var[1]
            one = B.i1(X0[i])
            if self.normal:
                return [B.i2(one)]
            return B.hom2(one, X1[(i, i)]) if self.lax else B.hom2(X1[(i, i)], one)
        _, i, j, k = var
        comp = B.h(X1[(j, k)], X1[(i, j)])
        return B.hom2(comp, X1[(i, k)]) if self.lax else B.hom2(X1[(i, k)], comp)

    def extend(self, y, budget):
        """All p-simplices restricting to y on [0, p-1]."""
        p = self.p
        X0, X1, X2, U = {}, {}, {}, {}
        if y is not None:
            objs, c1, c2, units = y
            X0.update(enumerate(objs))
            X1.update(zip(_pairs(p - 1), c1))
            X2.update(zip(_triples(p - 1), c2))
            U.update(enumerate(units))
        order, attached = self.order, self.attached
        store = {"o": X0, "c1": X1, "u": U, "c2": X2}

        def put(var, val):
            if var[0] in ("o", "u"):
                store[var[0]][var[1]] = val
            else:
                store[var[0]][var[1:]] = val

        out = []
        last = len(order)
        doms = self.domain

        def rec(n):
            if n == last:
                out.append((tuple(X0[i] for i in range(p + 1)), tuple(X1[ij] for ij in _pairs(p)),
                            tuple(X2[t] for t in _triples(p)), tuple(U[i] for i in range(p + 1))))
                return
            var = order[n]
            cons = attached[n]
            for val in doms(var, X0, X1, X2, U):
                budget[0] += 1
                if budget[0] > budget[1]:
                    raise ResourceLimit(f"search for dimension-{p} simplices exceeded {budget[1]} steps")
                put(var, val)
                for c in cons:
                    if not c(X1, X2, U):
                        break
                else:
                    rec(n + 1)
        rec(0)
        return out


SEARCH_FACTOR = 32


def geometric_simplices(B, variant, N, limit=None):
    """p-simplices for p <= N in deterministic enumeration order.

    At most `limit` cells are produced per dimension and the search visits at
    most SEARCH_FACTOR * limit partial assignments; beyond either bound a
    ResourceLimit is raised.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    limit = max_cells(limit)
    cells = []
    prev = [None]
    for p in range(N + 1):
        ext = _Extender(B, variant, p)
        budget = [0, SEARCH_FACTOR * limit]
        cur = []
        for y in prev:
            for x in ext.extend(y, budget):
                cur.append(x)
                if len(cur) > limit:
                    raise ResourceLimit(f"more than {limit} {variant} simplices in dimension {p} of {B.name}")
        cells.append(cur)
        prev = cur
    return cells


def geometric_nerve(B, variant="normal-lax", N=4, limit=None):
    """The truncated geometric nerve; faces and degeneracies by reindexing."""
    cells = geometric_simplices(B, variant, N, limit)
    return from_reindexing(N, cells, reindex_simplex, name=f"{variant} nerve of {B.name}")


def discrete_nerve_map(S):
    """Geometric simplices of a discrete bicategory -> ordinary-nerve cells."""
    maps = []
    for p, cells in enumerate(S.cells):
        m = {}
        for x in cells:
            if p == 0:
                m[x] = (x[0][0],)
            else:
                pi = _pindex(p)
                m[x] = tuple(x[1][pi[(i - 1, i)]] for i in range(1, p + 1))
        maps.append(m)
    return maps


def compare_with_ordinary(C, variant="normal-lax", N=4):
    from .simplicial import check_simplicial_map
    B = discrete_bicategory(C)
    S = geometric_nerve(B, variant, N)
    T = ordinary_nerve(C, N)
    return check_simplicial_map(S, T, discrete_nerve_map(S), bijective=True, name=f"{variant} vs ordinary")


def nerve_map(F, S, T, variant):
    """x |-> F o x on geometric simplices (structure cells pasted as in compose_lax)."""
    _B, C = F.source, F.target
    lax = F.direction == LAX
    maps = []
    for p, cells in enumerate(S.cells):
        m = {}
        for x in cells:
            objs, c1, c2, units = x
            pi = _pindex(p)
            nc2 = []
            for (i, j, k), c in zip(_triples(p), c2):
                outer = F.comp(c1[pi[(j, k)]], c1[pi[(i, j)]])
                nc2.append(C.v(F.F2(c), outer) if lax else C.v(outer, F.F2(c)))
            nu = []
            for i, u in enumerate(units):
                outer = F.unit(objs[i])
                nu.append(C.v(F.F2(u), outer) if lax else C.v(outer, F.F2(u)))
            m[x] = (tuple(F.F0(o) for o in objs), tuple(F.F1(f) for f in c1), tuple(nc2), tuple(nu))
        maps.append(m)
    return maps


# ---------------------------------------------------------------- free categories and J, R, nu

def right_nested(B, cells, obj):
    """cells = (v_n, ..., v_1) composed as v_n o (v_{n-1} o (... o v_1)); 1_obj if empty."""
    if not cells:
        return B.i1(obj)
    res = cells[-1]
    for c in reversed(cells[:-1]):
        res = B.h(c, res)
    return res


def right_nested2(B, cells, obj):
    if not cells:
        return B.i2(B.i1(obj))
    res = cells[-1]
    for c in reversed(cells[:-1]):
        res = B.h2(c, res)
    return res


class GraphAdjunction:
    """J: graph morphisms g -> B  to  pseudo-functors free(g) -> B, R restriction,
    nu: JR(F) => F the counit icon."""

    def __init__(self, g, B):
        if not g.is_acyclic():
            raise ValueError("graph has a cycle")
        self.g, self.B = g, B
        self.FC = free_category(g)
        self.FB = discrete_bicategory(self.FC, name=f"free({g.name})")

    def graph_morphisms(self):
        g, B = self.g, self.B
        verts, edges = list(g.vertices), ordered(g.edges)
        out = []

        def rec_v(n, vm):
            if n == len(verts):
                yield from rec_e(0, vm, {})
                return
            for b in B.objects:
                vm[verts[n]] = b
                yield from rec_v(n + 1, vm)
            del vm[verts[n]]

        def rec_e(n, vm, em):
            if n == len(edges):
                yield (dict(vm), dict(em))
                return
            e = edges[n]
            s, t = g.edges[e]
            for f in B.hom1(vm[s], vm[t]):
                em[e] = f
                yield from rec_e(n + 1, vm, em)
            em.pop(e, None)
        out.extend(rec_v(0, {}))
        return out

    def J(self, f):
        vm, em = f
        B, FC = self.B, self.FC

        def val(path):
            v, es = path
            return right_nested(B, [em[e] for e in reversed(es)], vm[v])

        def comp(a, b):
            # a after b
            if not b[1]:
                return B.r(val(a))
            if not a[1]:
                return B.l(val(b))
            if len(a[1]) == 1:
                return B.i2(val(FC.comp(a, b)))
            top, rest = a[1][-1], (a[0], a[1][:-1])
            return B.v(B.wl(em[top], comp(rest, b)), B.a(em[top], val(rest), val(b)))
        mor = {pth: val(pth) for pth in FC.morphisms}
        return LaxMorphism(LAX, self.FB, B, dict(vm), mor, {("1", pth): B.i2(mor[pth]) for pth in FC.morphisms},
                           comp, lambda v: B.i2(B.i1(vm[v])), claims=("normal", "pseudo"), name="J(f)")

    def J_cells(self, phi, f):
        """J on a family of 2-cells phi[e]: f(e) => f'(e) (an icon J f => J f')."""
        vm, _ = f
        return {pth: right_nested2(self.B, [phi[e] for e in reversed(pth[1])], vm[pth[0]])
                for pth in self.FC.morphisms}

    def R(self, F):
        return ({v: F.F0(v) for v in self.g.vertices},
                {e: F.F1((self.g.edges[e][0], (e,))) for e in self.g.edges})

    def nu(self, F):
        B, FC = self.B, self.FC

        def cell(path):
            v, es = path
            if not es:
                return F.unit(v)
            if len(es) == 1:
                return B.i2(F.F1(path))
            top = (FC.dst((v, es[:-1])), (es[-1],))
            rest = (v, es[:-1])
            return B.v(F.comp(top, rest), B.wl(F.F1(top), cell(rest)))
        return Icon(self.J(self.R(F)), F, {pth: cell(pth) for pth in FC.morphisms}, name="nu")

    def check(self, extra=()):
        """RJ = 1, nu J = 1, R nu = 1 on every graph morphism; J(f) and nu validated."""
        rep = ValidationReport(f"graph adjunction {self.g.name} -> {self.B.name}")
        B = self.B
        for f in self.graph_morphisms():
            Jf = self.J(f)
            rep.extend(validate_lax(Jf), "J.")
            rep.check("J-unitary-pseudo", (repr(f),), (Jf.is_normal(), Jf.is_pseudo()), (True, True))
            rep.check("RJ=1", (repr(f),), self.R(Jf), f)
            n = self.nu(Jf)
            for pth, c in n.cells.items():
                rep.check("nuJ=1", (pth,), c, B.i2(Jf.F1(pth)))
        for F in extra:
            n = self.nu(F)
            rep.extend(validate_icon(n), "nu.")
            for e, (s, _) in self.g.edges.items():
                pth = (s, (e,))
                rep.check("Rnu=1", (pth,), n.cells[pth], B.i2(F.F1(pth)))
            if F.is_pseudo():
                for pth, c in n.cells.items():
                    if not B.is_iso(c):
                        rep.add("nu-iso-at-pseudo", (pth,), c, None)
        return rep


def graph_adjunction(g, B):
    return GraphAdjunction(g, B)


def simplex_on_free(x, B, p):
    """A lax simplex [p] -> B transported to free(linear_graph(p))."""
    adj = GraphAdjunction(linear_graph(p), B)
    F = simplex_to_lax(x, B)

    def to_ij(path):
        v, es = path
        return (v, v + len(es))
    FC = adj.FC
    return LaxMorphism(LAX, adj.FB, B, dict(F.map0), {pth: F.F1(to_ij(pth)) for pth in FC.morphisms},
                       {("1", pth): B.i2(F.F1(to_ij(pth))) for pth in FC.morphisms},
                       lambda g, f: F.comp(to_ij(g), to_ij(f)), F.unit_cell, name="x")


# ---------------------------------------------------------------- Grothendieck nerve

class GrothendieckNerve:
    """Ner_p(B): strings of composable 1-cells (u_p, ..., u_1) (the 0-dimensional
    objects are (b,)); morphisms are strings of 2-cells (al_p, ..., al_1).

    Ner_a = R_q a* J_p and chi_{a,b} = R_n b* nu_q a* J_p.
    """

    def __init__(self, B, N=3, limit=None):
        self.B, self.N = B, N
        self.limit = max_cells(limit)
        self._objs = {}
        self._jhat = {}
        self._act = {}
        self._chi = {}

    # objects and morphisms
    def objects(self, p):
        if p not in self._objs:
            B = self.B
            if p == 0:
                res = [(b,) for b in B.objects]
            else:
                res = []
                for s in self.objects(p - 1):
                    end = s[0] if p == 1 else B.t1(s[0])
                    for u in B.from1(end):
                        res.append((u,) if p == 1 else (u,) + s)
                        if len(res) > self.limit:
                            raise ResourceLimit(f"Ner_{p} has more than {self.limit} objects")
                res = ordered(res)
            self._objs[p] = res
        return self._objs[p]

    def morphisms(self, p):
        B = self.B
        if p == 0:
            return [(x, x, x) for x in self.objects(0)]
        out = []
        for x in self.objects(p):
            def rec(k, acc):
                if k == p:
                    yield tuple(acc)
                    return
                for al in B.from2(x[k]):
                    acc.append(al)
                    yield from rec(k + 1, acc)
                    acc.pop()
            for cells in rec(0, []):
                out.append((x, tuple(B.t2(c) for c in cells), cells))
        return out

    def category(self, p):
        from .algebra import FiniteCategory
        mors = {m[2] if p else m[0]: (m[0], m[1]) for m in self.morphisms(p)}
        comp = {}
        for g, (y, z) in mors.items():
            for f, (x, y2) in mors.items():
                if y2 == y:
                    comp[(g, f)] = self.vcomp(p, g, f)
        return FiniteCategory(self.objects(p), mors, comp, {x: self.ident(p, x) for x in self.objects(p)},
                              name=f"Ner_{p}")

    def vertex(self, p, x, i):
        if p == 0:
            return x[0]
        B = self.B
        return B.s1(x[p - 1]) if i == 0 else B.t1(x[p - i])

    def edge(self, p, x, k):
        """u_k (1-indexed) of a string stored last-first (u_p, ..., u_1)."""
        return x[p - k]

    def ident(self, p, x):
        if p == 0:
            return x
        return tuple(self.B.i2(u) for u in x)

    def vcomp(self, p, g, f):
        if p == 0:
            return f
        return tuple(self.B.v(b, a) for b, a in zip(g, f))

    # J_p x on [p]
    def J1(self, p, x, i, j):
        return right_nested(self.B, [self.edge(p, x, k) for k in range(j, i, -1)], self.vertex(p, x, i))

    def Jhat(self, p, x, i, j, k):
        """J(j,k) o J(i,j) => J(i,k)."""
        key_ = (x, i, j, k)
        if key_ in self._jhat:
            return self._jhat[key_]
        B = self.B
        if i == j:
            res = B.r(self.J1(p, x, j, k))
        elif j == k:
            res = B.l(self.J1(p, x, i, j))
        elif k == j + 1:
            res = B.i2(self.J1(p, x, i, k))
        else:
            top = self.edge(p, x, k)
            res = B.v(B.wl(top, self.Jhat(p, x, i, j, k - 1)),
                      B.a(top, self.J1(p, x, j, k - 1), self.J1(p, x, i, j)))
        self._jhat[key_] = res
        return res

    def J_lax(self, p, x):
        B = self.B
        if p == 0:
            b = x[0]
            return simplex_to_lax(((b,), (B.i1(b),), (B.l(B.i1(b)),), (B.i2(B.i1(b)),)), B)
        objs = tuple(self.vertex(p, x, i) for i in range(p + 1))
        c1 = tuple(self.J1(p, x, i, j) for i, j in _pairs(p))
        c2 = tuple(self.Jhat(p, x, i, j, k) for i, j, k in _triples(p))
        units = tuple(B.i2(B.i1(o)) for o in objs)
        return simplex_to_lax((objs, c1, c2, units), B, name="J_p x")

    def J_simplex(self, p, x):
        return lax_to_simplex(self.J_lax(p, x), p)

    # actions
    def act(self, a, q, p, x):
        """Ner_a(x) for a: [q] -> [p]."""
        key_ = (a, x)
        if key_ in self._act:
            return self._act[key_]
        if q == 0:
            res = (self.vertex(p, x, a[0]),)
        else:
            res = tuple(self.J1(p, x, a[k - 1], a[k]) for k in range(q, 0, -1))
        self._act[key_] = res
        return res

    def act_mor(self, a, q, p, x, cells):
        """Ner_a on a morphism with source x and component cells."""
        if q == 0:
            return (self.vertex(p, x, a[0]),)
        B = self.B
        out = []
        for k in range(q, 0, -1):
            i, j = a[k - 1], a[k]
            out.append(right_nested2(B, [cells[p - e] for e in range(j, i, -1)], self.vertex(p, x, i)))
        return tuple(out)

    def nu_cell(self, G1, Gcomp, Gunit, i, j):
        """nu of a lax functor G on [q] at i <= j."""
        return nu_path(self.B, G1, Gcomp, Gunit, i, j)

    def chi(self, a, b, p, q, n, x):
        """chi_{a,b}(x): Ner_b Ner_a x -> Ner_{ab} x for a: [q] -> [p], b: [n] -> [q]."""
        key_ = (a, b, x)
        if key_ in self._chi:
            return self._chi[key_]
        if n == 0:
            v = self.act(compose_monotone(a, b), n, p, x)
            res = v
        else:
            B = self.B
            G1 = lambda i, j: self.J1(p, x, a[i], a[j])
            Gc = lambda i, j, k: self.Jhat(p, x, a[i], a[j], a[k])
            Gu = lambda i: B.i2(B.i1(self.vertex(p, x, a[i])))
            res = tuple(self.nu_cell(G1, Gc, Gu, b[k - 1], b[k]) for k in range(n, 0, -1))
        self._chi[key_] = res
        return res

    def face(self, p, i, x):
        from .simplicial import coface
        return self.act(coface(p, i), p - 1, p, x)

    def degeneracy(self, p, i, x):
        from .simplicial import codegeneracy
        return self.act(codegeneracy(p, i), p + 1, p, x)

    # validation
    def _is_mor(self, n, m, src, dst):
        if n == 0:
            return m == src == dst
        B = self.B
        return len(m) == n and all(B.cells2[c] == (s, t) for c, s, t in zip(m, src, dst))

    def _chi_component_failures(self, p, a, objs):
        """Typing and invertibility of chi_{a,(0,q)} for a: [q] -> [p]."""
        q = len(a) - 1
        b = (0, q)
        out = []
        for x in objs:
            c = self.chi(a, b, p, q, 1, x)
            src = self.act(b, 1, q, self.act(a, q, p, x))
            dst = self.act(compose_monotone(a, b), 1, p, x)
            if not self._is_mor(1, c, src, dst):
                out.append(("chi-type", x, c, (src, dst)))
            elif not self.B.is_iso(c[0]):
                out.append(("chi-invertible", x, c, None))
        return out

    def _chi_unit_failures(self, p, a, objs):
        q = len(a) - 1
        b = (0, q)
        out = []
        for x in objs:
            c = self.chi(a, b, p, q, 1, x)
            if c != self.ident(1, self.act(compose_monotone(a, b), 1, p, x)):
                out.append((x, c))
        return out

    def _chi_naturality_failures(self, p, a, mors):
        q = len(a) - 1
        b = (0, q)
        ab = compose_monotone(a, b)
        out = []
        for x, y, cells in mors:
            lhs = self.vcomp(1, self.act_mor(ab, 1, p, x, cells), self.chi(a, b, p, q, 1, x))
            inner = self.act_mor(b, 1, q, self.act(a, q, p, x), self.act_mor(a, q, p, x, cells))
            rhs = self.vcomp(1, self.chi(a, b, p, q, 1, y), inner)
            if lhs != rhs:
                out.append(((x, cells), lhs, rhs))
        return out

    def _cocycle_failures(self, p, a, b, objs):
        """Cocycle for a: [q] -> [p], b: [n] -> [q], c = (0, n) on every x."""
        q, n = len(a) - 1, len(b) - 1
        c = (0, n)
        ab = compose_monotone(a, b)
        bc = compose_monotone(b, c)
        out = []
        for x in objs:
            y = self.act(a, q, p, x)
            z = self.act(b, n, q, y)
            lhs = self.vcomp(1, self.chi(ab, c, p, n, 1, x),
                             self.act_mor(c, 1, n, z, self.chi(a, b, p, q, n, x)))
            rhs = self.vcomp(1, self.chi(a, bc, p, q, 1, x), self.chi(b, c, q, n, 1, y))
            if lhs != rhs:
                out.append((x, lhs, rhs))
        return out

    def check(self, N=None, naturality=True):
        """Typing, unit constraints, naturality and invertibility of chi and the
        cocycle condition.

        Components of chi are computed edge by edge of the domain ordinal, so the
        cocycle for (a, b, c) with c: [m] -> [n] holds iff it holds for each
        restriction of c to an edge [1] -> [n]; those are the triples checked.
        Every pair (a, b) and triple (a, b, c) is visited; verdicts are shared
        between instances that involve the same data.
        """
        N = self.N if N is None else N
        B = self.B
        rep = ValidationReport(f"grothendieck nerve of {B.name} (N={N})")
        maps = {(q, p): monotone_maps(q, p) for q in range(N + 1) for p in range(N + 1)}
        mors = {p: self.morphisms(p) for p in range(N + 1)} if naturality else {}
        for p in range(N + 1):
            ident_p = tuple(range(p + 1))
            for x in self.objects(p):
                rep.check("identity-action", (p, x), self.act(ident_p, p, p, x), x)
        # Component k of chi_{a,b} only involves the segment a[b(k-1)..b(k)]:
        # per-component verdicts are memoised on (p, segment).
        comp_fail, unit_fail, nat_fail = {}, {}, {}
        for p in range(N + 1):
            objs = self.objects(p)
            for q in range(N + 1):
                for a in maps[(q, p)]:
                    for n in range(N + 1):
                        for b in maps[(n, q)]:
                            unit = a == tuple(range(p + 1)) or b == tuple(range(q + 1))
                            if n == 0:
                                for x in objs:
                                    c = self.chi(a, b, p, q, n, x)
                                    rep.check("chi-type", (a, b, x), c, self.act(compose_monotone(a, b), 0, p, x))
                                continue
                            for k in range(1, n + 1):
                                seg = (p, a[b[k - 1]:b[k] + 1])
                                if seg not in comp_fail:
                                    comp_fail[seg] = self._chi_component_failures(*seg, objs)
                                for axiom, x, lhs, rhs in comp_fail[seg]:
                                    rep.add(axiom, (a, b, k, x), lhs, rhs, kind="schema" if axiom == "chi-type" else "axiom")
                                if unit:
                                    if seg not in unit_fail:
                                        unit_fail[seg] = self._chi_unit_failures(*seg, objs)
                                    for x, lhs in unit_fail[seg]:
                                        rep.add("chi-unit", (a, b, k, x), lhs, None)
                                if naturality:
                                    if seg not in nat_fail:
                                        nat_fail[seg] = self._chi_naturality_failures(*seg, mors[p])
                                    for m, lhs, rhs in nat_fail[seg]:
                                        rep.add("chi-naturality", (a, b, k, m), lhs, rhs)
        # The verdict for (a, b, c, x) only involves x, the values of a on
        # [b(c0), b(c1)] and the steps of b on [c0, c1]; it is memoised on that data.
        verdicts = {}
        for p in range(N + 1):
            objs = self.objects(p)
            for q in range(N + 1):
                for a in maps[(q, p)]:
                    for n in range(N + 1):
                        for b in maps[(n, q)]:
                            for c in maps[(1, n)]:
                                lo, hi = b[c[0]], b[c[1]]
                                key_ = (p, a[lo:hi + 1], tuple(v - lo for v in b[c[0]:c[1] + 1]))
                                if key_ not in verdicts:
                                    verdicts[key_] = self._cocycle_failures(p, key_[1], key_[2], objs)
                                for x, lhs, rhs in verdicts[key_]:
                                    rep.add("cocycle", (a, b, c, x), lhs, rhs)
        return rep


def grothendieck_nerve(B, N=3, limit=None):
    return GrothendieckNerve(B, N, limit)


def nu_path(B, G1, Gcomp, Gunit, i, j):
    """The counit cell of a lax functor G on an ordinal at i <= j:
    the right-nested composite of the edges G(m-1, m) => G(i, j)."""
    if i == j:
        return Gunit(i)
    res = B.i2(G1(i, i + 1))
    for m in range(i + 2, j + 1):
        res = B.v(Gcomp(i, m - 1, m), B.wl(G1(m - 1, m), res))
    return res


def _simplex_accessors(x):
    objs, c1, c2, units = x
    p = simplex_dim(x)
    pi, ti = _pindex(p), _tindex(p)
    return (lambda i, j: c1[pi[(i, j)]], lambda i, j, k: c2[ti[(i, j, k)]], lambda i: units[i])


# ---------------------------------------------------------------- icons between lax simplices

def icons_between(x, y, B):
    """All icons x => y between lax simplices [p] -> B, as tuples of cells
    indexed like the 1-cells of the simplices."""
    if x[0] != y[0]:
        return []
    p = simplex_dim(x)
    x1, x2, xu = _simplex_accessors(x)
    y1, y2, yu = _simplex_accessors(y)
    order = sorted(_pairs(p), key=lambda ij: (ij[1] - ij[0], ij[0]))
    pi = _pindex(p)
    sig = {}
    out = []

    def ok(i, k):
        s = sig[(i, k)]
        if i == k:
            if B.v(s, xu(i)) != yu(i):
                return False
        for j in range(i, k + 1):
            if B.v(sig[(i, k)], x2(i, j, k)) != B.v(y2(i, j, k), B.h2(sig[(j, k)], sig[(i, j)])):
                return False
        return True

    def rec(n):
        if n == len(order):
            out.append(tuple(sig[ij] for ij in sorted(sig, key=pi.get)))
            return
        i, k = order[n]
        for s in B.hom2(x1(i, k), y1(i, k)):
            sig[(i, k)] = s
            if ok(i, k):
                rec(n + 1)
        sig.pop((i, k), None)
    rec(0)
    return out


def icon_category(p, B, limit=None):
    """Lax functors [p] -> B and icons between them."""
    from .algebra import FiniteCategory
    limit = max_cells(limit)
    objs = geometric_simplices(B, "lax", p, limit)[p]
    groups = {}
    for x in objs:
        groups.setdefault(x[0], []).append(x)
    mors, ident = {}, {}
    for xs in groups.values():
        for x in xs:
            for y in xs:
                for cells in icons_between(x, y, B):
                    mors[(x, y, cells)] = (x, y)
                    if len(mors) > limit:
                        raise ResourceLimit(f"more than {limit} icons between lax simplices of dimension {p}")
            ident[x] = (x, x, tuple(B.i2(f) for f in x[1]))
    by_src = {}
    for m, (s, _) in mors.items():
        by_src.setdefault(s, []).append(m)
    comp = {}
    for f, (_, y) in mors.items():
        for g in by_src.get(y, ()):
            comp[(g, f)] = (f[0], g[1], tuple(B.v(b, a) for b, a in zip(g[2], f[2])))
    return FiniteCategory(objs, mors, comp, ident, name=f"Icon([{p}], {B.name})")


# ---------------------------------------------------------------- the projection R and J_p -| R_p

class NerveProjection:
    """R_p: lax functors [p] -> B (with icons) to Ner_p B, restricting to the
    string of edge 1-cells, with constraints R^_a(F) = R_q(a* nu_F)."""

    def __init__(self, B, N=3, limit=None, nerve=None):
        self.B, self.N = B, N
        self.limit = max_cells(limit)
        self.GN = nerve or GrothendieckNerve(B, N, limit)
        self._simplices = None

    def simplices(self, p):
        if self._simplices is None:
            self._simplices = geometric_simplices(self.B, "lax", self.N, self.limit)
        return self._simplices[p]

    def R(self, p, x):
        if p == 0:
            return (x[0][0],)
        e, _, _ = _simplex_accessors(x)
        return tuple(e(k - 1, k) for k in range(p, 0, -1))

    def R_icon(self, p, x, cells):
        if p == 0:
            return (x[0][0],)
        pi = _pindex(p)
        return tuple(cells[pi[(k - 1, k)]] for k in range(p, 0, -1))

    def Rhat(self, a, q, p, x):
        """Ner_a(R_p x) -> R_q(a* x)."""
        if q == 0:
            return (x[0][a[0]],)
        G1, Gc, Gu = _simplex_accessors(x)
        return tuple(nu_path(self.B, G1, Gc, Gu, a[k - 1], a[k]) for k in range(q, 0, -1))

    def _law_failures(self, p, a, xs):
        """R^_{ab} . chi_{a,b}(R x) = R^_b(a* x) . Ner_b(R^_a x) for b = (0, q)."""
        GN = self.GN
        q = len(a) - 1
        b = (0, q)
        ab = compose_monotone(a, b)
        out = []
        for x in xs:
            Rx = self.R(p, x)
            ax = reindex_simplex(x, a, q, p)
            lhs = GN.vcomp(1, self.Rhat(ab, 1, p, x), GN.chi(a, b, p, q, 1, Rx))
            inner = GN.act_mor(b, 1, q, GN.act(a, q, p, Rx), self.Rhat(a, q, p, x))
            rhs = GN.vcomp(1, self.Rhat(b, 1, q, ax), inner)
            if lhs != rhs:
                out.append((x, lhs, rhs))
        return out

    def _edge_failures(self, p, i, j, xs):
        """Typing of the component of R^ at the edge (i, j) of [p]."""
        GN = self.GN
        a = (i, j)
        out = []
        for x in xs:
            c = self.Rhat(a, 1, p, x)
            src = GN.act(a, 1, p, self.R(p, x))
            dst = self.R(1, reindex_simplex(x, a, 1, p))
            if not GN._is_mor(1, c, src, dst):
                out.append((x, c))
        return out

    def _edge_naturality_failures(self, p, i, j, icons):
        GN = self.GN
        a = (i, j)
        pi = _pindex(p)
        out = []
        for m, (x, y) in icons:
            lhs = GN.vcomp(1, self.Rhat(a, 1, p, y), GN.act_mor(a, 1, p, self.R(p, x), self.R_icon(p, x, m[2])))
            rhs = GN.vcomp(1, (m[2][pi[a]],), self.Rhat(a, 1, p, x))
            if lhs != rhs:
                out.append((m, lhs, rhs))
        return out

    def check(self, N=None, naturality_dim=2):
        """Typing, unit and composition laws of R^ for all monotone pairs within
        N; naturality in icons and functoriality of R_p for p <= naturality_dim.

        Every component of R^_a(x) only involves one edge (a(k-1), a(k)); the
        verdicts are shared between maps a with the same edges."""
        N = self.N if N is None else N
        GN, B = self.GN, self.B
        rep = ValidationReport(f"nerve projection of {B.name} (N={N})")
        maps = {(q, p): monotone_maps(q, p) for q in range(N + 1) for p in range(N + 1)}
        typing, nat = {}, {}
        for p in range(N + 1):
            xs = self.simplices(p)
            objs = set(GN.objects(p))
            for x in xs:
                if self.R(p, x) not in objs:
                    rep.schema("R-type", (p, x), self.R(p, x))
            icons = None
            if p <= naturality_dim:
                I = icon_category(p, B, self.limit)
                icons = list(I.morphisms.items())
                for x in I.objects:
                    rep.check("R-identity", (p, x), self.R_icon(p, x, I.ident(x)[2]), GN.ident(p, self.R(p, x)))
                for (g, f), gf in I.compose.items():
                    rep.check("R-composition", (g, f), self.R_icon(p, f[0], gf[2]),
                              GN.vcomp(p, self.R_icon(p, g[0], g[2]), self.R_icon(p, f[0], f[2])))
            for q in range(N + 1):
                for a in maps[(q, p)]:
                    if q == 0:
                        for x in xs:
                            rep.check("Rhat-type", (a, x), self.Rhat(a, 0, p, x), self.R(0, reindex_simplex(x, a, 0, p)))
                        continue
                    for k in range(1, q + 1):
                        e = (p, a[k - 1], a[k])
                        if e not in typing:
                            typing[e] = self._edge_failures(*e, xs)
                        for x, c in typing[e]:
                            rep.schema("Rhat-type", (a, k, x), c)
                        if icons is not None:
                            if e not in nat:
                                nat[e] = self._edge_naturality_failures(*e, icons)
                            for m, lhs, rhs in nat[e]:
                                rep.add("Rhat-naturality", (a, k, m), lhs, rhs)
                    if a == tuple(range(p + 1)):
                        for x in xs:
                            rep.check("Rhat-unit", (a, x), self.Rhat(a, q, p, x), GN.ident(q, self.R(q, x)))
        # the law for (a, b) is edge-local in b; verdicts are shared per segment
        seen = {}
        for p in range(N + 1):
            xs = self.simplices(p)
            for q in range(N + 1):
                for a in maps[(q, p)]:
                    for n in range(1, N + 1):
                        for b in maps[(n, q)]:
                            for k in range(1, n + 1):
                                seg = (p, a[b[k - 1]:b[k] + 1])
                                if seg not in seen:
                                    seen[seg] = self._law_failures(*seg, xs)
                                for x, lhs, rhs in seen[seg]:
                                    rep.add("Rhat-composition", (a, b, k, x), lhs, rhs)
        return rep


def nerve_projection(B, N=3, limit=None):
    return NerveProjection(B, N, limit)


def adjunction_bijection(B, p, limit=None, nerve=None):
    """Hom(J_p x, F) ~= Hom(x, R_p F) for every x in Ner_p B and lax F: [p] -> B.

    phi |-> nu_F . J(phi) is checked to land in icons, to be inverted by
    restriction R, and to be onto by comparing with the enumerated icons."""
    GN = nerve or GrothendieckNerve(B, p, limit)
    rep = ValidationReport(f"J_{p} -| R_{p} on {B.name}")
    Fs = {}
    for F in geometric_simplices(B, "lax", p, limit)[p]:
        Fs.setdefault(F[0], []).append(F)
    pi = _pindex(p)
    pairs = 0
    for x in GN.objects(p):
        Jx = GN.J_simplex(p, x)
        for F in Fs.get(Jx[0], ()):
            pairs += 1
            left = set(icons_between(Jx, F, B))
            F1, Fc, Fu = _simplex_accessors(F)
            if p == 0:
                right = [()]
            else:
                right = [()]
                for k in range(1, p + 1):
                    right = [(c,) + r for r in right for c in B.hom2(GN.edge(p, x, k), F1(k - 1, k))]
            image = set()
            for phi in right:
                # phi is stored last-first (phi_p, ..., phi_1)
                cells = tuple(B.v(nu_path(B, F1, Fc, Fu, i, j),
                                  right_nested2(B, [phi[p - e] for e in range(j, i, -1)], GN.vertex(p, x, i)))
                              for i, j in _pairs(p))
                if cells not in left:
                    rep.add("image-is-icon", (x, F, phi), cells, None)
                    continue
                back = tuple(cells[pi[(k - 1, k)]] for k in range(p, 0, -1))
                rep.check("R-after-phi", (x, F, phi), back, phi)
                image.add(cells)
            rep.check("onto", (x, F), len(image), len(left))
    rep.pairs = pairs
    return rep


# ---------------------------------------------------------------- nerve of a lax functor

class LaxNerveMap:
    """Ner F: Ner B -> Ner B' for a lax F, with constraints
    F^_a(x): Ner_a(F_p x) -> F_q(Ner_a x) given by the counit of F J_p x."""

    def __init__(self, F, N=3, source=None, target=None, limit=None):
        if F.direction != LAX:
            raise ValueError("the nerve is functorial in lax morphisms")
        self.F, self.N = F, N
        self.S = source or GrothendieckNerve(F.source, N, limit)
        self.T = target or GrothendieckNerve(F.target, N, limit)
        self._nu = {}

    def obj(self, p, x):
        F = self.F
        return (F.F0(x[0]),) if p == 0 else tuple(F.F1(u) for u in x)

    def cells(self, p, c):
        F = self.F
        return (F.F0(c[0]),) if p == 0 else tuple(F.F2(al) for al in c)

    def _nu_cell(self, p, x, i, j):
        key_ = (p, x, i, j)
        if key_ not in self._nu:
            F, S, B = self.F, self.S, self.F.source
            T = self.F.target
            G1 = lambda s, t: F.F1(S.J1(p, x, s, t))
            Gc = lambda s, t, u: T.v(F.F2(S.Jhat(p, x, s, t, u)), F.comp(S.J1(p, x, t, u), S.J1(p, x, s, t)))
            Gu = lambda s: T.v(F.F2(B.i2(B.i1(S.vertex(p, x, s)))), F.unit(S.vertex(p, x, s)))
            self._nu[key_] = nu_path(T, G1, Gc, Gu, i, j)
        return self._nu[key_]

    def constraint(self, a, q, p, x):
        if q == 0:
            return (self.F.F0(self.S.vertex(p, x, a[0])),)
        return tuple(self._nu_cell(p, x, a[k - 1], a[k]) for k in range(q, 0, -1))

    def _law_failures(self, p, a, objs):
        """F_n(chi) . F^_b(Ner_a x) . Ner'_b(F^_a x) = F^_{ab}(x) . chi'(F_p x), b = (0, q)."""
        S, T = self.S, self.T
        q = len(a) - 1
        b = (0, q)
        ab = compose_monotone(a, b)
        out = []
        for x in objs:
            Fx = self.obj(p, x)
            y = S.act(a, q, p, x)
            lhs = T.vcomp(1, self.cells(1, S.chi(a, b, p, q, 1, x)),
                          T.vcomp(1, self.constraint(b, 1, q, y),
                                  T.act_mor(b, 1, q, T.act(a, q, p, Fx), self.constraint(a, q, p, x))))
            rhs = T.vcomp(1, self.constraint(ab, 1, p, x), T.chi(a, b, p, q, 1, Fx))
            if lhs != rhs:
                out.append((x, lhs, rhs))
        return out

    def check(self, N=None, naturality=True):
        """Components are functors; constraints are typed, unital, natural and
        satisfy the composition law for all monotone pairs within N."""
        N = self.N if N is None else N
        S, T = self.S, self.T
        rep = ValidationReport(f"nerve of {self.F.name} (N={N})")
        maps = {(q, p): monotone_maps(q, p) for q in range(N + 1) for p in range(N + 1)}
        for p in range(N + 1):
            tobjs = set(T.objects(p))
            for x in S.objects(p):
                if self.obj(p, x) not in tobjs:
                    rep.schema("component-type", (p, x), self.obj(p, x))
                rep.check("component-identity", (p, x), self.cells(p, S.ident(p, x)), T.ident(p, self.obj(p, x)))
            mors = S.morphisms(p)
            by_src = {}
            for m in mors:
                by_src.setdefault(m[0], []).append(m)
            for f in mors:
                for g in by_src.get(f[1], ()):
                    rep.check("component-composition", (g, f), self.cells(p, S.vcomp(p, g[2], f[2])),
                              T.vcomp(p, self.cells(p, g[2]), self.cells(p, f[2])))
            for q in range(N + 1):
                for a in maps[(q, p)]:
                    ident = a == tuple(range(p + 1))
                    for x in S.objects(p):
                        c = self.constraint(a, q, p, x)
                        src = T.act(a, q, p, self.obj(p, x))
                        dst = self.obj(q, S.act(a, q, p, x))
                        if not T._is_mor(q, c, src, dst):
                            rep.schema("constraint-type", (a, x), c)
                        elif ident:
                            rep.check("constraint-unit", (a, x), c, T.ident(q, dst))
                    if naturality:
                        for x, y, cells in mors:
                            lhs = T.vcomp(q, self.constraint(a, q, p, y),
                                          T.act_mor(a, q, p, self.obj(p, x), self.cells(p, cells)))
                            rhs = T.vcomp(q, self.cells(q, S.act_mor(a, q, p, x, cells)), self.constraint(a, q, p, x))
                            rep.check("constraint-naturality", (a, x, cells), lhs, rhs)
        seen = {}
        for p in range(N + 1):
            objs = S.objects(p)
            for q in range(N + 1):
                for a in maps[(q, p)]:
                    for n in range(1, N + 1):
                        for b in maps[(n, q)]:
                            for k in range(1, n + 1):
                                seg = (p, a[b[k - 1]:b[k] + 1])
                                if seg not in seen:
                                    seen[seg] = self._law_failures(*seg, objs)
                                for x, lhs, rhs in seen[seg]:
                                    rep.add("constraint-composition", (a, b, k, x), lhs, rhs)
        return rep

    def is_strictly_simplicial(self, N=None):
        """Every constraint is an identity."""
        N = self.N if N is None else N
        rep = ValidationReport(f"nerve of {self.F.name} strictly simplicial")
        for p in range(N + 1):
            for q in range(N + 1):
                for a in monotone_maps(q, p):
                    for x in self.S.objects(p):
                        dst = self.obj(q, self.S.act(a, q, p, x))
                        rep.check("constraint-identity", (a, x), self.constraint(a, q, p, x), self.T.ident(q, dst))
        return rep


def nerve_of_lax(F, N=3, source=None, target=None, limit=None):
    return LaxNerveMap(F, N, source, target, limit)


def nerve_identity_check(B, N=3, nerve=None):
    """Ner 1 = 1: identity components and identity constraints."""
    GN = nerve or GrothendieckNerve(B, N)
    NF = LaxNerveMap(identity_lax(B), N, GN, GN)
    rep = ValidationReport(f"Ner 1 = 1 on {B.name} (N={N})")
    for p in range(N + 1):
        for x in GN.objects(p):
            rep.check("identity-object", (p, x), NF.obj(p, x), x)
        for x, y, cells in GN.morphisms(p):
            rep.check("identity-morphism", (p, x, cells), NF.cells(p, cells), cells)
    rep.extend(NF.is_strictly_simplicial(N))
    return rep


def nerve_functoriality(F, Fp, N=3, nerves=None):
    """Ner F' o Ner F = Ner(F' F) on components and constraints."""
    A, B, C = F.source, F.target, Fp.target
    nerves = nerves or {}
    GA = nerves.get(A.name) or GrothendieckNerve(A, N)
    GB = nerves.get(B.name) or GrothendieckNerve(B, N)
    GC = nerves.get(C.name) or GrothendieckNerve(C, N)
    NF, NFp = LaxNerveMap(F, N, GA, GB), LaxNerveMap(Fp, N, GB, GC)
    NFFp = LaxNerveMap(compose_lax(Fp, F), N, GA, GC)
    rep = ValidationReport(f"Ner {Fp.name} o Ner {F.name} = Ner({Fp.name}{F.name}) (N={N})")
    for p in range(N + 1):
        for x in GA.objects(p):
            rep.check("composite-object", (p, x), NFp.obj(p, NF.obj(p, x)), NFFp.obj(p, x))
        for x, y, cells in GA.morphisms(p):
            rep.check("composite-morphism", (p, x, cells), NFp.cells(p, NF.cells(p, cells)), NFFp.cells(p, cells))
        for q in range(N + 1):
            for a in monotone_maps(q, p):
                for x in GA.objects(p):
                    lhs = GC.vcomp(q, NFp.cells(q, NF.constraint(a, q, p, x)), NFp.constraint(a, q, p, NF.obj(p, x)))
                    rep.check("composite-constraint", (a, x), lhs, NFFp.constraint(a, q, p, x))
    return rep
