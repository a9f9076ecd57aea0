"""Finite graphs, categories, groupoids, groups and P-groups.

Everything is table driven: a category is a set of object ids, a dict
from morphism id to (src, dst), a composition table keyed by (g, f)
meaning g after f, and an identity table.  Ids are hashable values made
of ints, strings and tuples, so constructed objects can use canonical
tuples of their defining data as ids.

>>> C = ordinal(2)
>>> len(C.morphisms)
6
>>> C.comp((1, 2), (0, 1))
(0, 2)
"""

from collections import deque
from itertools import permutations, product

from ._util import key, ordered
from .report import ValidationReport


class FiniteGraph:
    def __init__(self, vertices, edges, name="graph"):
        self.vertices = tuple(ordered(set(vertices)))
        self.edges = {e: (s, t) for e, s, t in edges}
        self.name = name
        if len(self.edges) != len(list(edges)):
            raise ValueError("duplicate edge id")
        vs = set(self.vertices)
        for e, (s, t) in self.edges.items():
            if s not in vs or t not in vs:
                raise ValueError(f"edge {e!r} references a missing vertex")

    def is_acyclic(self):
        indeg = {v: 0 for v in self.vertices}
        out = {v: [] for v in self.vertices}
        for s, t in self.edges.values():
            indeg[t] += 1
            out[s].append(t)
        queue = deque(v for v in self.vertices if indeg[v] == 0)
        seen = 0
        while queue:
            v = queue.popleft()
            seen += 1
            for t in out[v]:
                indeg[t] -= 1
                if indeg[t] == 0:
                    queue.append(t)
        return seen == len(self.vertices)


def linear_graph(p):
    """0 -> 1 -> ... -> p, edge k going from k-1 to k."""
    return FiniteGraph(range(p + 1), [(k, k - 1, k) for k in range(1, p + 1)], name=f"G{p}")


class FiniteCategory:
    def __init__(self, objects, morphisms, compose, identity, name="category"):
        self.objects = tuple(ordered(set(objects)))
        self.morphisms = dict(morphisms)
        self.compose = dict(compose)
        self.identity = dict(identity)
        self.name = name
        self._hom = None
        self._inv = None

    def src(self, f):
        return self.morphisms[f][0]

    def dst(self, f):
        return self.morphisms[f][1]

    def comp(self, g, f):
        return self.compose[(g, f)]

    def ident(self, x):
        return self.identity[x]

    def hom(self, x, y):
        if self._hom is None:
            h = {}
            for f in ordered(self.morphisms):
                h.setdefault(self.morphisms[f], []).append(f)
            self._hom = h
        return self._hom.get((x, y), [])

    def composable_pairs(self):
        for f, (_, y) in self.morphisms.items():
            for g in self.hom_from(y):
                yield g, f

    def hom_from(self, x):
        return [f for y in self.objects for f in self.hom(x, y)]

    def inverse(self, f):
        """Inverse of f found by search; None if f is not invertible."""
        if self._inv is None:
            self._inv = {}
        if f in self._inv:
            return self._inv[f]
        x, y = self.morphisms[f]
        res = None
        for g in self.hom(y, x):
            if self.compose.get((g, f)) == self.identity[x] and self.compose.get((f, g)) == self.identity[y]:
                res = g
                break
        self._inv[f] = res
        return res

    def is_groupoid(self):
        return all(self.inverse(f) is not None for f in self.morphisms)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}: {len(self.objects)} objects, {len(self.morphisms)} morphisms>"


class FiniteGroupoid(FiniteCategory):
    def __init__(self, objects, morphisms, compose, identity, inverse=None, name="groupoid"):
        super().__init__(objects, morphisms, compose, identity, name)
        if inverse is None:
            inverse = {}
            for f in self.morphisms:
                g = FiniteCategory.inverse(self, f)
                if g is None:
                    raise ValueError(f"morphism {f!r} has no inverse")
                inverse[f] = g
        self.inv = dict(inverse)

    def inverse(self, f):
        return self.inv[f]

    @classmethod
    def from_category(cls, C):
        return cls(C.objects, C.morphisms, C.compose, C.identity, name=C.name)

    def automorphism_group(self, a):
        els = self.hom(a, a)
        return FiniteGroup(els, {(x, y): self.compose[(x, y)] for x in els for y in els},
                           self.identity[a], name=f"Aut({a})")

    def components(self):
        """Connected components as a sorted list of sorted tuples."""
        parent = {x: x for x in self.objects}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x
        for s, t in self.morphisms.values():
            rs, rt = find(s), find(t)
            if rs != rt:
                parent[rt] = rs
        comps = {}
        for x in self.objects:
            comps.setdefault(find(x), []).append(x)
        return ordered(tuple(ordered(c)) for c in comps.values())

    def component_of(self, x):
        for c in self.components():
            if x in c:
                return c
        raise KeyError(x)


def discrete_category(objects, name="discrete"):
    objects = list(objects)
    return FiniteGroupoid(objects, {("id", x): (x, x) for x in objects},
                          {(("id", x), ("id", x)): ("id", x) for x in objects},
                          {x: ("id", x) for x in objects},
                          {("id", x): ("id", x) for x in objects}, name=name)


def ordinal(p):
    """The category [p] = {0 < ... < p}; morphism i -> j has id (i, j)."""
    objs = range(p + 1)
    mors = {(i, j): (i, j) for i in objs for j in objs if i <= j}
    comp = {((j, k), (i, j)): (i, k) for (i, j) in mors for k in objs if j <= k}
    return FiniteCategory(objs, mors, comp, {i: (i, i) for i in objs}, name=f"[{p}]")


def indiscrete_groupoid(objects, name=None):
    objects = list(objects)
    mors = {(x, y): (x, y) for x in objects for y in objects}
    comp = {((y, z), (x, y)): (x, z) for x in objects for y in objects for z in objects}
    return FiniteGroupoid(objects, mors, comp, {x: (x, x) for x in objects},
                          {(x, y): (y, x) for x, y in mors}, name=name or f"indiscrete{len(objects)}")


class FiniteGroup:
    def __init__(self, elements, mul, identity, name="group"):
        self.elements = tuple(ordered(set(elements)))
        self.mul = dict(mul)
        self.e = identity
        self.name = name
        self.inv = {}
        for x in self.elements:
            for y in self.elements:
                if self.mul.get((x, y)) == identity:
                    self.inv[x] = y
                    break

    def m(self, *xs):
        r = self.e
        for x in xs:
            r = self.mul[(r, x)]
        return r

    def order(self):
        return len(self.elements)

    def is_abelian(self):
        return all(self.mul[(x, y)] == self.mul[(y, x)] for x in self.elements for y in self.elements)

    def center(self):
        return [z for z in self.elements if all(self.mul[(z, x)] == self.mul[(x, z)] for x in self.elements)]

    def is_subgroup(self, S):
        S = set(S)
        return self.e in S and all(self.mul[(x, y)] in S for x in S for y in S)

    def is_normal(self, S):
        S = set(S)
        return self.is_subgroup(S) and all(self.m(g, s, self.inv[g]) in S for g in self.elements for s in S)

    def quotient(self, N, name=None):
        """G/N with each coset represented by its least element; returns (group, projection)."""
        N = set(N)
        proj = {}
        for g in self.elements:
            proj[g] = min((self.mul[(g, n)] for n in N), key=key)
        reps = ordered(set(proj.values()))
        mul = {(x, y): proj[self.mul[(x, y)]] for x in reps for y in reps}
        return FiniteGroup(reps, mul, proj[self.e], name=name or f"{self.name}/N"), proj

    def subgroup(self, S, name=None):
        S = ordered(set(S))
        return FiniteGroup(S, {(x, y): self.mul[(x, y)] for x in S for y in S}, self.e, name=name or f"sub({self.name})")

    def __repr__(self):
        return f"<FiniteGroup {self.name} of order {len(self.elements)}>"


def cyclic(n):
    return FiniteGroup(range(n), {(x, y): (x + y) % n for x in range(n) for y in range(n)}, 0, name=f"Z{n}")


def trivial_group():
    return cyclic(1)


def dihedral(n):
    """Symmetries of the n-gon; element (r, s) is rotation r followed by s reflections."""
    els = [(r, s) for s in (0, 1) for r in range(n)]

    def mul(a, b):
        (r1, s1), (r2, s2) = a, b
        return ((r1 + (r2 if s1 == 0 else -r2)) % n, (s1 + s2) % 2)
    return FiniteGroup(els, {(a, b): mul(a, b) for a in els for b in els}, (0, 0), name=f"D{n}")


def symmetric(n):
    els = list(permutations(range(n)))
    return FiniteGroup(els, {(p, q): tuple(p[q[i]] for i in range(n)) for p in els for q in els},
                       tuple(range(n)), name=f"S{n}")


def direct_product(G, H):
    els = list(product(G.elements, H.elements))
    mul = {((g1, h1), (g2, h2)): (G.mul[(g1, g2)], H.mul[(h1, h2)]) for g1, h1 in els for g2, h2 in els}
    return FiniteGroup(els, mul, (G.e, H.e), name=f"{G.name}x{H.name}")


def group_groupoid(G, obj="*"):
    """A group as a one-object groupoid; composition g o h is the product g.h."""
    return FiniteGroupoid([obj], {g: (obj, obj) for g in G.elements},
                          {(g, h): G.mul[(g, h)] for g in G.elements for h in G.elements},
                          {obj: G.e}, {g: G.inv[g] for g in G.elements}, name=G.name)


def is_homomorphism(G, H, f):
    return all(f[G.mul[(x, y)]] == H.mul[(f[x], f[y])] for x in G.elements for y in G.elements)


class PGroup:
    """Groups indexed by the objects of a groupoid, with transport along morphisms."""

    def __init__(self, base, fibers, action, name="P-group"):
        self.base = base
        self.fibers = dict(fibers)
        self.action = {p: dict(m) for p, m in action.items()}
        self.name = name

    def act(self, p, g):
        return self.action[p][g]


def trivial_pgroup(P):
    G = trivial_group()
    return PGroup(P, {a: G for a in P.objects}, {p: {0: 0} for p in P.morphisms}, name="1")


class GroupoidFunctor:
    def __init__(self, source, target, obj, mor, name="F"):
        self.source, self.target = source, target
        self.obj = dict(obj)
        self.mor = dict(mor)
        self.name = name

    def __call__(self, x):
        return self.mor[x] if x in self.mor else self.obj[x]


def identity_functor(C):
    return GroupoidFunctor(C, C, {x: x for x in C.objects}, {f: f for f in C.morphisms}, name="id")


def compose_functors(G, F):
    return GroupoidFunctor(F.source, G.target, {x: G.obj[F.obj[x]] for x in F.source.objects},
                           {f: G.mor[F.mor[f]] for f in F.source.morphisms}, name=f"{G.name}{F.name}")


def group_hom_functor(G, H, f, name="F"):
    """A group homomorphism viewed as a functor of one-object groupoids."""
    return GroupoidFunctor(group_groupoid(G), group_groupoid(H), {"*": "*"}, f, name=name)


# ---------------------------------------------------------------- validation

def _validate_category(C, rep):
    objs = set(C.objects)
    for f, (s, t) in C.morphisms.items():
        if s not in objs or t not in objs:
            rep.schema("dangling-id", (f,), "morphism endpoint is not an object")
    for x in C.objects:
        i = C.identity.get(x)
        if i is None:
            rep.schema("missing-identity", (x,))
        elif C.morphisms.get(i) != (x, x):
            rep.schema("identity-type", (x,), i)
    for g, f in C.composable_pairs():
        h = C.compose.get((g, f))
        if h is None:
            rep.schema("missing-compose", (g, f), "no entry for composable pair")
        elif C.morphisms.get(h) != (C.src(f), C.dst(g)):
            rep.schema("compose-type", (g, f), h)
    if rep.violations:
        return rep
    for f, (x, y) in C.morphisms.items():
        rep.check("left-identity", (f,), C.comp(C.ident(y), f), f)
        rep.check("right-identity", (f,), C.comp(f, C.ident(x)), f)
    for g, f in C.composable_pairs():
        gf = C.comp(g, f)
        for h in C.hom_from(C.dst(g)):
            rep.check("associativity", (h, g, f), C.comp(h, gf), C.comp(C.comp(h, g), f))
    return rep


def validate_group(G, rep=None):
    rep = rep or ValidationReport(f"group {G.name}")
    els = set(G.elements)
    for x in G.elements:
        for y in G.elements:
            z = G.mul.get((x, y))
            if z is None:
                rep.schema("missing-product", (x, y))
            elif z not in els:
                rep.schema("dangling-id", (x, y), z)
    if rep.violations:
        return rep
    if G.e not in els:
        rep.schema("missing-identity", (G.e,))
        return rep
    for x in G.elements:
        rep.check("unit", (x,), (G.mul[(G.e, x)], G.mul[(x, G.e)]), (x, x))
        if x not in G.inv or G.mul[(G.inv[x], x)] != G.e:
            rep.add("inverse", (x,), None, G.e)
        for y in G.elements:
            xy = G.mul[(x, y)]
            for z in G.elements:
                rep.check("associativity", (x, y, z), G.mul[(xy, z)], G.mul[(x, G.mul[(y, z)])])
    return rep


def validate_functor(F, rep=None):
    rep = rep or ValidationReport(f"functor {F.name}")
    C, D = F.source, F.target
    for x in C.objects:
        if F.obj.get(x) not in D.identity:
            rep.schema("object-map", (x,), F.obj.get(x))
    for f in C.morphisms:
        if F.mor.get(f) not in D.morphisms:
            rep.schema("morphism-map", (f,), F.mor.get(f))
    if rep.violations:
        return rep
    for f, (x, y) in C.morphisms.items():
        rep.check("preserves-endpoints", (f,), D.morphisms[F.mor[f]], (F.obj[x], F.obj[y]))
    for x in C.objects:
        rep.check("preserves-identity", (x,), F.mor[C.ident(x)], D.ident(F.obj[x]))
    if rep.violations:
        return rep
    for g, f in C.composable_pairs():
        rep.check("preserves-composition", (g, f), F.mor[C.comp(g, f)], D.comp(F.mor[g], F.mor[f]))
    return rep


def validate_pgroup(X, rep=None):
    rep = rep or ValidationReport(f"P-group {X.name}")
    P = X.base
    _validate_category(P, rep)
    for a in P.objects:
        if a not in X.fibers:
            rep.schema("missing-fiber", (a,))
        else:
            sub = validate_group(X.fibers[a])
            rep.extend(sub, prefix=f"fiber[{a}].")
    for p in P.morphisms:
        if p not in X.action:
            rep.schema("missing-action", (p,))
    if rep.violations:
        return rep
    for p, (a, b) in P.morphisms.items():
        Ga, Gb = X.fibers[a], X.fibers[b]
        act = X.action[p]
        if set(act) != set(Ga.elements) or not set(act.values()) <= set(Gb.elements):
            rep.schema("action-domain", (p,))
            continue
        for g in Ga.elements:
            for h in Ga.elements:
                rep.check("action-homomorphism", (p, g, h), act[Ga.mul[(g, h)]], Gb.mul[(act[g], act[h])])
    if rep.violations:
        return rep
    for a in P.objects:
        for g in X.fibers[a].elements:
            rep.check("action-identity", (a, g), X.action[P.ident(a)][g], g)
    for q, p in P.composable_pairs():
        for g in X.fibers[P.src(p)].elements:
            rep.check("action-composition", (q, p, g), X.action[P.comp(q, p)][g], X.action[q][X.action[p][g]])
    return rep


def validate_algebra(x):
    """Exhaustive axiom report for a category, groupoid, group, functor or P-group."""
    if isinstance(x, PGroup):
        return validate_pgroup(x)
    if isinstance(x, FiniteGroup):
        return validate_group(x)
    if isinstance(x, GroupoidFunctor):
        rep = ValidationReport(f"functor {x.name}")
        rep.extend(validate_algebra(x.source), "source.")
        rep.extend(validate_algebra(x.target), "target.")
        return validate_functor(x, rep) if rep.ok else rep
    kind = "groupoid" if isinstance(x, FiniteGroupoid) else "category"
    rep = ValidationReport(f"{kind} {x.name}")
    _validate_category(x, rep)
    if isinstance(x, FiniteGroupoid) and not rep.schema_errors:
        for f, (a, b) in x.morphisms.items():
            g = x.inv.get(f)
            if g not in x.morphisms:
                rep.schema("missing-inverse", (f,))
                continue
            rep.check("inverse", (f,), (x.comp(g, f), x.comp(f, g)), (x.ident(a), x.ident(b)))
    return rep


# ------------------------------------------------------------ constructions

def free_category(g):
    """Paths in an acyclic graph.  A path from v is (v, (e1, ..., ek)), edges in travel order."""
    if not g.is_acyclic():
        raise ValueError("infinite free category: graph has a cycle")
    out = {v: [] for v in g.vertices}
    for e in ordered(g.edges):
        out[g.edges[e][0]].append(e)
    paths = {}
    for v in g.vertices:
        stack = [(v, ())]
        while stack:
            end, edges = stack.pop()
            paths[(v, edges)] = (v, end)
            for e in out[end]:
                stack.append((g.edges[e][1], edges + (e,)))
    by_src = {}
    for pth, (s, _) in paths.items():
        by_src.setdefault(s, []).append(pth)
    comp = {}
    for f, (s, t) in paths.items():
        for h in by_src[t]:
            comp[(h, f)] = (s, f[1] + h[1])
    return FiniteCategory(g.vertices, paths, comp, {v: (v, ()) for v in g.vertices}, name=f"free({g.name})")


def ordinal_to_free(p):
    """Isomorphism [p] -> free(linear_graph(p)) on morphisms."""
    return {(i, j): (i, tuple(range(i + 1, j + 1))) for i in range(p + 1) for j in range(i, p + 1)}


def groupoid_fibration(F):
    """Every q: Fa -> b in the target lifts to some p: a -> a' with Fp = q."""
    C, D = F.source, F.target
    images = {}
    for p in C.morphisms:
        images.setdefault(C.src(p), set()).add(F.mor[p])
    for a in C.objects:
        for b in D.objects:
            for q in D.hom(F.obj[a], b):
                if q not in images.get(a, ()):
                    return False
    return True


def pullback_groupoid(F, Fp):
    """Strict pullback of F: P -> Q <- P': F'.  Returns (groupoid, proj, proj')."""
    if F.target is not Fp.target and F.target.objects != Fp.target.objects:
        raise ValueError("functors do not share a codomain")
    P, Pp = F.source, Fp.source
    objs = [(a, b) for a in P.objects for b in Pp.objects if F.obj[a] == Fp.obj[b]]
    mors = {}
    for p, (a0, a1) in P.morphisms.items():
        for q, (b0, b1) in Pp.morphisms.items():
            if F.mor[p] == Fp.mor[q] and F.obj[a0] == Fp.obj[b0]:
                mors[(p, q)] = ((a0, b0), (a1, b1))
    comp = {}
    by_src = {}
    for m, (s, _) in mors.items():
        by_src.setdefault(s, []).append(m)
    for (p, q), (_, t) in mors.items():
        for (p2, q2) in by_src.get(t, []):
            comp[((p2, q2), (p, q))] = (P.comp(p2, p), Pp.comp(q2, q))
    ident = {(a, b): (P.ident(a), Pp.ident(b)) for a, b in objs}
    inv = {(p, q): (P.inverse(p), Pp.inverse(q)) for p, q in mors}
    G = FiniteGroupoid(objs, mors, comp, ident, inv, name=f"{P.name}x{Pp.name}")
    pr = GroupoidFunctor(G, P, {x: x[0] for x in objs}, {m: m[0] for m in mors}, name="pr")
    prp = GroupoidFunctor(G, Pp, {x: x[1] for x in objs}, {m: m[1] for m in mors}, name="pr'")
    return G, pr, prp


def functors_between(C, D, limit=100_000):
    """All functors C -> D by backtracking (for small universal-property checks)."""
    objs = list(C.objects)
    mors = [f for f in ordered(C.morphisms) if f not in set(C.identity.values())]
    res = []

    def extend_mor(om, mm, i):
        if i == len(mors):
            for g, f in C.composable_pairs():
                if D.comp(mm[g], mm[f]) != mm[C.comp(g, f)]:
                    return
            res.append(GroupoidFunctor(C, D, dict(om), dict(mm)))
            if len(res) > limit:
                raise RuntimeError("too many functors")
            return
        f = mors[i]
        s, t = C.morphisms[f]
        for h in D.hom(om[s], om[t]):
            mm[f] = h
            extend_mor(om, mm, i + 1)
        mm.pop(f, None)

    for images in product(D.objects, repeat=len(objs)):
        om = dict(zip(objs, images))
        mm = {C.ident(x): D.ident(om[x]) for x in objs}
        extend_mor(om, mm, 0)
    return res
