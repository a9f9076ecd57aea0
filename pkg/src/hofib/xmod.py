"""Crossed modules of groupoids, the 2-groupoid equivalence beta, homotopy
pullbacks, homotopy groups, nerves, Mayer-Vietoris and loop groupoids.

Conventions: groupoid composition is P.comp(q, p) = q o p; the P-group
action of p: a -> b on g in G(a) is X.act(p, g) = ^p g; the boundary at a is
X.d(a, g), an automorphism of a.  A one-object groupoid built from a group
has object "*" and composition g o h = g.h.
"""


from ._util import ResourceLimit, max_cells, ordered
from .algebra import (
    FiniteGroup,
    FiniteGroupoid,
    GroupoidFunctor,
    PGroup,
    compose_functors,
    direct_product,
    group_groupoid,
    groupoid_fibration,
    identity_functor,
    is_homomorphism,
    pullback_groupoid,
    trivial_group,
    validate_functor,
    validate_pgroup,
)
from .bicategory import (
    LAX,
    FiniteBicategory,
    LaxMorphism,
    is_two_groupoid,
    validate_lax,
)
from .nerve import _pairs, _triples, geometric_nerve, reindex_positions
from .report import ValidationReport
from .simplicial import check_simplicial_map, from_reindexing

STAR = "*"


class CrossedModule:
    """(G, P, d): a groupoid P, a P-group G and boundary[a][g] in Aut_P(a)."""

    def __init__(self, fiber, boundary, name="X"):
        self.P = fiber.base
        self.G = fiber
        self.boundary = {a: dict(m) for a, m in boundary.items()}
        self.name = name

    def group(self, a):
        return self.G.fibers[a]

    def act(self, p, g):
        return self.G.act(p, g)

    def d(self, a, g):
        return self.boundary[a][g]

    def __repr__(self):
        return f"<CrossedModule {self.name}: {len(self.P.objects)} objects>"


class XmodMorphism:
    """(phi, F): X -> Y with F a functor of base groupoids and phi[a][g] in H(Fa)."""

    def __init__(self, source, target, F, phi, name="f"):
        self.source, self.target = source, target
        self.F = F
        self.phi = {a: dict(m) for a, m in phi.items()}
        self.name = name

    def __repr__(self):
        return f"<XmodMorphism {self.name}: {self.source.name} -> {self.target.name}>"


# ---------------------------------------------------------------- validation

def validate_xmod(X):
    """P-group axioms, boundary typing, equivariance and the Peiffer identity,
    followed by the consequences Ker d central and Im d normal."""
    rep = ValidationReport(f"crossed module {X.name}")
    validate_pgroup(X.G, rep)
    if rep.violations:
        return rep
    P = X.P
    for a in P.objects:
        auts = set(P.hom(a, a))
        bd = X.boundary.get(a)
        if bd is None or set(bd) != set(X.group(a).elements):
            rep.schema("boundary-domain", (a,))
            continue
        for g, p in bd.items():
            if p not in auts:
                rep.schema("boundary-type", (a, g), p)
    if rep.violations:
        return rep
    for a in P.objects:
        G = X.group(a)
        for g in G.elements:
            for h in G.elements:
                rep.check("boundary-homomorphism", (a, g, h), X.d(a, G.mul[(g, h)]),
                          P.comp(X.d(a, g), X.d(a, h)))
                rep.check("peiffer", (a, g, h), X.act(X.d(a, g), h), G.m(g, h, G.inv[g]))
    for p, (a, b) in P.morphisms.items():
        for g in X.group(a).elements:
            rep.check("equivariance", (p, g), X.d(b, X.act(p, g)),
                      P.comp(P.comp(p, X.d(a, g)), P.inverse(p)))
    if rep.violations:
        return rep
    for a in P.objects:
        G = X.group(a)
        K = kernel(X, a)
        for k in K:
            for g in G.elements:
                rep.check("kernel-central", (a, k, g), G.mul[(k, g)], G.mul[(g, k)])
        A = P.automorphism_group(a)
        if not A.is_normal(image(X, a)):
            rep.add("image-normal", (a,), ordered(image(X, a)), None)
    return rep


def validate_xmod_morphism(M):
    """F a functor, each phi_a a homomorphism, phi natural and d-square commuting."""
    X, Y, F = M.source, M.target, M.F
    rep = ValidationReport(f"crossed module morphism {M.name}")
    validate_functor(F, rep)
    if rep.violations:
        return rep
    for a in X.P.objects:
        G, H = X.group(a), Y.group(F.obj[a])
        f = M.phi.get(a)
        if f is None or set(f) != set(G.elements) or not set(f.values()) <= set(H.elements):
            rep.schema("phi-type", (a,))
    if rep.violations:
        return rep
    for a in X.P.objects:
        G, H = X.group(a), Y.group(F.obj[a])
        f = M.phi[a]
        for g in G.elements:
            for h in G.elements:
                rep.check("phi-homomorphism", (a, g, h), f[G.mul[(g, h)]], H.mul[(f[g], f[h])])
            rep.check("boundary-square", (a, g), Y.d(F.obj[a], f[g]), F.mor[X.d(a, g)])
    for p, (a, b) in X.P.morphisms.items():
        for g in X.group(a).elements:
            rep.check("phi-natural", (p, g), M.phi[b][X.act(p, g)], Y.act(F.mor[p], M.phi[a][g]))
    return rep


def kernel(X, a):
    one = X.P.ident(a)
    return [g for g in X.group(a).elements if X.d(a, g) == one]


def image(X, a):
    return {X.d(a, g) for g in X.group(a).elements}


# ---------------------------------------------------------------- constructors

def xmod_of_groups(G, P, boundary, action=None, name=None):
    """A crossed module of groups over the one-object groupoid of P.
    action[p][g] defaults to the trivial action."""
    base = group_groupoid(P, STAR)
    if action is None:
        action = {p: {g: g for g in G.elements} for p in P.elements}
    fiber = PGroup(base, {STAR: G}, action, name=G.name)
    return CrossedModule(fiber, {STAR: dict(boundary)}, name=name or f"({G.name},{P.name})")


def trivial_fiber_xmod(P, name=None):
    """(1, P, 1) over a groupoid P."""
    G = trivial_group()
    fiber = PGroup(P, {a: G for a in P.objects}, {p: {0: 0} for p in P.morphisms}, name="1")
    return CrossedModule(fiber, {a: {0: P.ident(a)} for a in P.objects}, name=name or f"(1,{P.name},1)")


def abelian_xmod(A, name=None):
    """(A, 1, 0): an abelian group over the trivial group."""
    return xmod_of_groups(A, trivial_group(), {g: 0 for g in A.elements}, name=name or f"({A.name},1,0)")


def conjugation_xmod(G, name=None):
    """(G, G, id) with the conjugation action."""
    action = {p: {g: G.m(p, g, G.inv[p]) for g in G.elements} for p in G.elements}
    return xmod_of_groups(G, G, {g: g for g in G.elements}, action, name=name or f"({G.name},{G.name},id)")


def normal_inclusion_xmod(G, N, name=None):
    """(N, G, inclusion) for a normal subgroup N of G, acting by conjugation."""
    Ns = G.subgroup(N, name=f"N<{G.name}")
    action = {p: {g: G.m(p, g, G.inv[p]) for g in Ns.elements} for p in G.elements}
    return xmod_of_groups(Ns, G, {g: g for g in Ns.elements}, action, name=name or f"({Ns.name},{G.name},incl)")


def central_quotient_xmod(G, P, d, name=None):
    """(G, P, d) for a homomorphism d with image in the centre of P and G
    abelian, with trivial action."""
    return xmod_of_groups(G, P, dict(d), name=name)


def constant_fiber_xmod(P, A, name=None):
    """(A, P, 0) over a groupoid P: constant abelian fibre, identity transport."""
    fiber = PGroup(P, {a: A for a in P.objects}, {p: {g: g for g in A.elements} for p in P.morphisms},
                   name=A.name)
    return CrossedModule(fiber, {a: {g: P.ident(a) for g in A.elements} for a in P.objects},
                         name=name or f"({A.name},{P.name},0)")


def trivial_xmod():
    return trivial_fiber_xmod(group_groupoid(trivial_group(), STAR), name="(1,1,1)")


def xmod_hom_of_groups(X, Y, f, phi, name="f"):
    """A morphism of crossed modules of groups from a base homomorphism f and
    a fibre homomorphism phi."""
    F = GroupoidFunctor(X.P, Y.P, {STAR: STAR}, dict(f), name=name)
    return XmodMorphism(X, Y, F, {STAR: dict(phi)}, name=name)


def identity_xmod(X):
    return XmodMorphism(X, X, identity_functor(X.P),
                        {a: {g: g for g in X.group(a).elements} for a in X.P.objects}, name=f"1_{X.name}")


def compose_xmod(M2, M1, name=None):
    F = compose_functors(M2.F, M1.F)
    phi = {a: {g: M2.phi[M1.F.obj[a]][h] for g, h in M1.phi[a].items()} for a in M1.source.P.objects}
    return XmodMorphism(M1.source, M2.target, F, phi, name=name or f"{M2.name}{M1.name}")


def xmod_point(Y, b):
    """The morphism (1,1,1) -> Y picking the object b."""
    T = trivial_xmod()
    F = GroupoidFunctor(T.P, Y.P, {STAR: b}, {T.P.ident(STAR): Y.P.ident(b)}, name=f"<{b}>")
    return XmodMorphism(T, Y, F, {STAR: {0: Y.group(b).e}}, name=f"<{b}>")


# ---------------------------------------------------------------- beta and its inverse

def beta(X, name=None):
    """The strict 2-groupoid of X: 2-cells (g, p, pbar): p => pbar with pbar o dg = p."""
    P = X.P
    cells2 = {}
    for p, (a0, a1) in P.morphisms.items():
        for g in X.group(a0).elements:
            pbar = P.comp(p, P.inverse(X.d(a0, g)))
            cells2[(g, p, pbar)] = (p, pbar)

    def vcomp(be, al):
        g, p, _ = al
        gb, _, pbb = be
        return (X.group(P.src(p)).mul[(gb, g)], p, pbb)

    def hcomp2(be, al):
        g2, p2, pb2 = be
        g1, p1, pb1 = al
        G = X.group(P.src(p1))
        return (G.mul[(X.act(P.inverse(pb1), g2), g1)], P.comp(p2, p1), P.comp(pb2, pb1))

    def id2(p):
        return (X.group(P.src(p)).e, p, p)
    return FiniteBicategory(
        P.objects, dict(P.morphisms), cells2, vcomp, lambda g, f: P.comp(g, f), hcomp2,
        lambda x: P.ident(x), id2, lambda h, g, f: id2(P.comp(h, P.comp(g, f))),
        id2, id2, name=name or f"beta{X.name}")


def beta_on_morphism(M, SX=None, SY=None):
    """The strict 2-functor beta(X) -> beta(Y) of a crossed module morphism."""
    SX = SX or beta(M.source)
    SY = SY or beta(M.target)
    F = M.F
    return LaxMorphism(LAX, SX, SY, dict(F.obj), dict(F.mor),
                       lambda c: (M.phi[SX.cells1[c[1]][0]][c[0]], F.mor[c[1]], F.mor[c[2]]),
                       lambda g, f: SY.i2(SY.h(F.mor[g], F.mor[f])),
                       lambda x: SY.i2(SY.i1(F.obj[x])),
                       claims=("normal", "pseudo", "strict"), name=f"beta{M.name}")


def underlying_groupoid(K):
    return FiniteGroupoid(K.objects, dict(K.cells1),
                          {(g, f): K.h(g, f) for g, f in K.composable1()},
                          {x: K.i1(x) for x in K.objects}, name=f"|{K.name}|")


def beta_inverse(K, name=None):
    """The crossed module of a strict 2-groupoid K: P the underlying groupoid,
    G(a) the 2-cells u => 1_a with product h2, d(alpha) = u, transport by
    whiskering with p and its inverse."""
    if not is_two_groupoid(K):
        raise ValueError(f"{K.name} is not a strict 2-groupoid")
    P = underlying_groupoid(K)
    fibers, bd = {}, {}
    for a in P.objects:
        one = K.i1(a)
        els = [al for u in K.hom1(a, a) for al in K.hom2(u, one)]
        mul = {(x, y): K.h2(x, y) for x in els for y in els}
        fibers[a] = FiniteGroup(els, mul, K.i2(one), name=f"G({a})")
        bd[a] = {al: K.s2(al) for al in els}
    action = {}
    for p, (a, b) in P.morphisms.items():
        pinv = P.inverse(p)
        action[p] = {al: K.h2(K.h2(K.i2(p), al), K.i2(pinv)) for al in fibers[a].elements}
    return CrossedModule(PGroup(P, fibers, action, name="G"), bd, name=name or f"betainv({K.name})")


def roundtrip_xmod(X):
    """beta_inverse(beta(X)) ~= X: identity on the base, g |-> (g, dg, 1)."""
    K = beta(X)
    Y = beta_inverse(K)
    P = X.P
    F = GroupoidFunctor(X.P, Y.P, {a: a for a in P.objects}, {p: p for p in P.morphisms}, name="iso")
    phi = {a: {g: (g, X.d(a, g), P.ident(a)) for g in X.group(a).elements} for a in P.objects}
    M = XmodMorphism(X, Y, F, phi, name="iso")
    rep = ValidationReport(f"betainv(beta({X.name})) ~= {X.name}")
    rep.extend(validate_xmod(Y), "target.")
    rep.extend(validate_xmod_morphism(M), "iso.")
    for a in P.objects:
        img = set(phi[a].values())
        rep.check("bijective", (a,), len(img), len(Y.group(a).elements))
        rep.check("bijective", (a,), len(img), len(X.group(a).elements))
    return rep, M


def roundtrip_two_groupoid(K):
    """beta(beta_inverse(K)) ~= K: identity on 0- and 1-cells, (alpha, p, pbar) |-> 1_pbar o alpha."""
    X = beta_inverse(K)
    B = beta(X)
    Phi = LaxMorphism(LAX, B, K, {x: x for x in B.objects}, {f: f for f in B.cells1},
                      lambda c: K.h2(K.i2(c[2]), c[0]),
                      lambda g, f: K.i2(K.h(g, f)), lambda x: K.i2(K.i1(x)),
                      claims=("normal", "pseudo", "strict"), name="iso")
    rep = ValidationReport(f"beta(betainv({K.name})) ~= {K.name}")
    rep.extend(validate_lax(Phi), "iso.")
    img = {Phi.F2(c) for c in B.cells2}
    rep.check("bijective-2-cells", (), len(img), len(K.cells2))
    rep.check("bijective-2-cells", (), len(B.cells2), len(K.cells2))
    for c in B.cells2:
        rep.check("typed", (c,), K.cells2[Phi.F2(c)], B.cells2[c])
    return rep, Phi


def two_groupoid_report(K):
    rep = ValidationReport(f"2-groupoid {K.name}")
    if not is_two_groupoid(K):
        rep.add("two-groupoid", (K.name,), None, None)
    return rep


def pasting_oracle(X):
    """For X with d injective at every object, a 2-cell of beta(X) is determined
    by its boundary; check each horizontal composite against the unique cell
    p2 o p1 => pbar2 o pbar1."""
    K = beta(X)
    rep = ValidationReport(f"horizontal composites of {K.name} by pasting")
    P = X.P
    for a in P.objects:
        if len(image(X, a)) != len(X.group(a).elements):
            raise ValueError("boundary is not injective")
    by_bd = {}
    for c, (s, t) in K.cells2.items():
        by_bd[(s, t)] = c
    for be, al in K.composable2():
        s = P.comp(K.s2(be), K.s2(al))
        t = P.comp(K.t2(be), K.t2(al))
        rep.check("pasting", (be, al), K.h2(be, al), by_bd.get((s, t)))
    return rep


# ---------------------------------------------------------------- pullbacks

def homotopy_pullback_xmod(M, Mp, name=None):
    """(phi, F) | (phi', F') with its projections (pi, P) and (pi', P').

    Objects (a, q, a') with q: Fa -> F'a'; a morphism (p, h, p', q0) starts
    at (a0, q0, a0') and satisfies dh = Fp^-1 o q1^-1 o F'p' o q0.
    """
    X, Xp, Y = M.source, Mp.source, M.target
    if Mp.target is not Y and Mp.target.P.objects != Y.P.objects:
        raise ValueError("morphisms do not share a codomain")
    F, Fp, Q = M.F, Mp.F, Y.P
    P, Pp = X.P, Xp.P
    objs = [(a, q, ap) for a in P.objects for ap in Pp.objects for q in Q.hom(F.obj[a], Fp.obj[ap])]
    limit = max_cells()
    mors = {}
    for (a0, q0, ap0) in objs:
        H = Y.group(F.obj[a0])
        for p in P.hom_from(a0):
            Fpinv = Q.inverse(F.mor[p])
            for pp in Pp.hom_from(ap0):
                for h in H.elements:
                    # q1 = F'p' o q0 o (dh)^-1 o Fp^-1
                    q1 = Q.comp(Q.comp(Fp.mor[pp], q0), Q.comp(Q.inverse(Y.d(F.obj[a0], h)), Fpinv))
                    mors[(p, h, pp, q0)] = ((a0, q0, ap0), (P.dst(p), q1, Pp.dst(pp)))
                    if len(mors) > limit:
                        raise ResourceLimit(f"more than {limit} morphisms in a homotopy pullback groupoid")
    by_src = {}
    for m, (s, _) in mors.items():
        by_src.setdefault(s, []).append(m)
    comp = {}
    for m1, (_, t) in mors.items():
        p1, h1, pp1, _ = m1
        H = Y.group(F.obj[P.src(p1)])
        Fp1inv = Q.inverse(F.mor[p1])
        for m2 in by_src[t]:
            p2, h2, pp2, _ = m2
            comp[(m2, m1)] = (P.comp(p2, p1), H.mul[(Y.act(Fp1inv, h2), h1)], Pp.comp(pp2, pp1), m1[3])
    ident = {o: (P.ident(o[0]), Y.group(F.obj[o[0]]).e, Pp.ident(o[2]), o[1]) for o in objs}
    inv = {}
    for m, (s, t) in mors.items():
        p, h, pp, q0 = m
        H = Y.group(F.obj[P.src(p)])
        inv[m] = (P.inverse(p), Y.act(F.mor[p], H.inv[h]), Pp.inverse(pp), t[1])
    base = FiniteGroupoid(objs, mors, comp, ident, inv, name=f"P({M.name}|{Mp.name})")
    fibers = {o: direct_product(X.group(o[0]), Xp.group(o[2])) for o in objs}
    action = {m: {(g, gp): (X.act(m[0], g), Xp.act(m[2], gp)) for g, gp in fibers[s].elements}
              for m, (s, _) in mors.items()}
    bd = {}
    for o in objs:
        a, q, ap = o
        H = Y.group(F.obj[a])
        qinv = Q.inverse(q)
        bd[o] = {(g, gp): (X.d(a, g), H.mul[(H.inv[M.phi[a][g]], Y.act(qinv, Mp.phi[ap][gp]))],
                           Xp.d(ap, gp), q)
                 for g, gp in fibers[o].elements}
    Z = CrossedModule(PGroup(base, fibers, action, name="GxG'"), bd, name=name or f"{M.name}|{Mp.name}")
    Pr = GroupoidFunctor(base, P, {o: o[0] for o in objs}, {m: m[0] for m in mors}, name="P")
    Prp = GroupoidFunctor(base, Pp, {o: o[2] for o in objs}, {m: m[2] for m in mors}, name="P'")
    pi = XmodMorphism(Z, X, Pr, {o: {x: x[0] for x in fibers[o].elements} for o in objs}, name="pi")
    pip = XmodMorphism(Z, Xp, Prp, {o: {x: x[1] for x in fibers[o].elements} for o in objs}, name="pi'")
    return Z, pi, pip


def homotopy_fibre_xmod(M, b):
    """(phi, F) | b."""
    return homotopy_pullback_xmod(M, xmod_point(M.target, b), name=f"{M.name}|{b}")[0]


def pullback_xmod(M, Mp, hpb=None, name=None):
    """The strict pullback crossed module and the canonical morphism into the
    homotopy pullback."""
    X, Xp, Y = M.source, Mp.source, M.target
    base, _, _ = pullback_groupoid(M.F, Mp.F)
    fibers = {}
    for (a, ap) in base.objects:
        D = direct_product(X.group(a), Xp.group(ap))
        els = [(g, gp) for g, gp in D.elements if M.phi[a][g] == Mp.phi[ap][gp]]
        fibers[(a, ap)] = D.subgroup(els, name=f"G({a})xG'({ap})")
    action = {m: {(g, gp): (X.act(m[0], g), Xp.act(m[1], gp)) for g, gp in fibers[s].elements}
              for m, (s, _) in base.morphisms.items()}
    bd = {o: {(g, gp): (X.d(o[0], g), Xp.d(o[1], gp)) for g, gp in fibers[o].elements} for o in base.objects}
    W = CrossedModule(PGroup(base, fibers, action, name="GxG'"), bd, name=name or f"{M.name}x{Mp.name}")
    Z = hpb or homotopy_pullback_xmod(M, Mp)[0]
    F, Q = M.F, Y.P
    J = GroupoidFunctor(base, Z.P, {(a, ap): (a, Q.ident(F.obj[a]), ap) for a, ap in base.objects},
                        {(p, pp): (p, Y.group(F.obj[P_src]).e, pp, Q.ident(F.obj[P_src]))
                         for (p, pp), ((P_src, _), _) in base.morphisms.items()}, name="J")
    j = XmodMorphism(W, Z, J, {o: {x: x for x in fibers[o].elements} for o in base.objects}, name="j")
    return W, j


# ---------------------------------------------------------------- fibrations and homotopy groups

def fibration_xmod(M):
    """Base functor a fibration of groupoids and every phi_a surjective."""
    if not groupoid_fibration(M.F):
        return False
    return all(set(M.phi[a].values()) == set(M.target.group(M.F.obj[a]).elements)
               for a in M.source.P.objects)


class HomotopyProfile:
    """pi0: components of P; pi1[a] = Aut(a)/Im d with the coset projection;
    pi2[a] = Ker d as a group."""

    def __init__(self, X):
        self.X = X
        P = X.P
        self.pi0 = P.components()
        self.pi1, self.proj1, self.pi2 = {}, {}, {}
        for a in P.objects:
            A = P.automorphism_group(a)
            Im = image(X, a)
            if not A.is_normal(Im):
                raise ValueError(f"image of the boundary at {a!r} is not normal")
            self.pi1[a], self.proj1[a] = A.quotient(Im, name=f"pi1({a})")
            self.pi2[a] = X.group(a).subgroup(kernel(X, a), name=f"pi2({a})")

    def component(self, a):
        for c in self.pi0:
            if a in c:
                return c
        raise KeyError(a)

    def orders(self, a):
        return (len(self.pi0), self.pi1[a].order(), self.pi2[a].order())

    def as_json(self):
        from ._util import to_json
        return {"pi0": to_json(self.pi0),
                "pi1": {repr(a): self.pi1[a].order() for a in self.X.P.objects},
                "pi2": {repr(a): self.pi2[a].order() for a in self.X.P.objects}}


def pi(X):
    return HomotopyProfile(X)


def induced_pi(M, SP=None, TP=None):
    """The maps on pi0, pi1 and pi2 induced by M, with a well-definedness report."""
    X, Y, F = M.source, M.target, M.F
    SP = SP or pi(X)
    TP = TP or pi(Y)
    rep = ValidationReport(f"induced maps of {M.name}")
    m0 = {c: TP.component(F.obj[c[0]]) for c in SP.pi0}
    for c in SP.pi0:
        for a in c:
            rep.check("pi0-well-defined", (a,), TP.component(F.obj[a]), m0[c])
    m1, m2 = {}, {}
    for a in X.P.objects:
        b = F.obj[a]
        m = {}
        for p in X.P.hom(a, a):
            cls, img = SP.proj1[a][p], TP.proj1[b][F.mor[p]]
            if cls in m:
                rep.check("pi1-well-defined", (a, p), img, m[cls])
            else:
                m[cls] = img
        m1[a] = m
        if not is_homomorphism(SP.pi1[a], TP.pi1[b], m):
            rep.add("pi1-homomorphism", (a,), None, None)
        m2[a] = {g: M.phi[a][g] for g in SP.pi2[a].elements}
        for g, h in m2[a].items():
            if h not in set(TP.pi2[b].elements):
                rep.add("pi2-type", (a, g), h, None)
        if not rep.violations and not is_homomorphism(SP.pi2[a], TP.pi2[b], m2[a]):
            rep.add("pi2-homomorphism", (a,), None, None)
    return {"pi0": m0, "pi1": m1, "pi2": m2, "report": rep, "source": SP, "target": TP}


def _bijective(m, codomain):
    return len(set(m.values())) == len(m) == len(codomain)


def weak_equivalence(M):
    """pi0 bijection and pi1, pi2 isomorphisms at every object of the source.
    Returns (verdict, details)."""
    ind = induced_pi(M)
    TP = ind["target"]
    det = {"pi0_bijective": _bijective(ind["pi0"], TP.pi0), "pi1_iso": {}, "pi2_iso": {},
           "well_defined": ind["report"].ok, "induced": ind}
    for a in M.source.P.objects:
        b = M.F.obj[a]
        det["pi1_iso"][a] = _bijective(ind["pi1"][a], TP.pi1[b].elements)
        det["pi2_iso"][a] = _bijective(ind["pi2"][a], TP.pi2[b].elements)
    ok = det["well_defined"] and det["pi0_bijective"] and all(det["pi1_iso"].values()) \
        and all(det["pi2_iso"].values())
    return ok, det


def induced_pi_functoriality(M2, M1):
    """induced_pi(M2 M1) = induced_pi(M2) induced_pi(M1) and identities go to identities."""
    rep = ValidationReport(f"induced maps functorial on {M2.name}{M1.name}")
    A, B, C = pi(M1.source), pi(M1.target), pi(M2.target)
    i1 = induced_pi(M1, A, B)
    i2 = induced_pi(M2, B, C)
    i21 = induced_pi(compose_xmod(M2, M1), A, C)
    for c, v in i21["pi0"].items():
        rep.check("pi0", (c,), v, i2["pi0"][i1["pi0"][c]])
    for a in M1.source.P.objects:
        b = M1.F.obj[a]
        for k, v in i21["pi1"][a].items():
            rep.check("pi1", (a, k), v, i2["pi1"][b][i1["pi1"][a][k]])
        for k, v in i21["pi2"][a].items():
            rep.check("pi2", (a, k), v, i2["pi2"][b][i1["pi2"][a][k]])
    iid = induced_pi(identity_xmod(M1.source), A, A)
    for a in M1.source.P.objects:
        for k, v in iid["pi1"][a].items():
            rep.check("pi1-identity", (a, k), v, k)
    return rep


# ---------------------------------------------------------------- nerves

def _quads(p):
    return [(i, j, k, l) for i in range(p + 1) for j in range(i, p + 1)
            for k in range(j, p + 1) for l in range(k, p + 1)]


def dakin_simplices(X, N=4, limit=None):
    """n-simplices (objs, p over pairs, g over triples) for n <= N."""
    limit = max_cells(limit)
    P = X.P
    cells = [[((a,), (P.ident(a),), (X.group(a).e,)) for a in P.objects]]
    for n in range(1, N + 1):
        pairs, triples = _pairs(n), _triples(n)
        oldp, oldt = {ij: k for k, ij in enumerate(_pairs(n - 1))}, {t: k for k, t in enumerate(_triples(n - 1))}
        out = []
        for y in cells[-1]:
            objs0, ps0, gs0 = y
            oldP = {ij: ps0[k] for ij, k in oldp.items()}
            oldG = {t: gs0[k] for t, k in oldt.items()}
            for an in P.objects:
                pv = dict(oldP)
                pv[(n, n)] = P.ident(an)
                gv = dict(oldG)
                a = list(objs0) + [an]
                for i in range(n + 1):
                    gv[(i, i, n)] = gv[(i, n, n)] = X.group(a[i]).e

                def rec_p(i):
                    if i < 0:
                        yield from rec_g(n - 1, n - 1)
                        return
                    for p in P.hom(a[i], an):
                        pv[(i, n)] = p
                        yield from rec_p(i - 1)

                def rec_g(i, j):
                    # assign g[(i, j, n)] for i < j < n, i descending then j descending
                    if i < 0:
                        yield True
                        return
                    if j <= i:
                        yield from rec_g(i - 1, n - 1)
                        return
                    want = P.comp(P.inverse(pv[(i, n)]), P.comp(pv[(j, n)], pv[(i, j)]))
                    G = X.group(a[i])
                    pij_inv = P.inverse(pv[(i, j)])
                    for g in G.elements:
                        if X.d(a[i], g) != want:
                            continue
                        gv[(i, j, n)] = g
                        ok = True
                        for k in range(j, n + 1):
                            # quadruple (i, j, k, n)
                            lhs = G.m(G.inv[gv[(i, j, k)]], G.inv[gv[(i, k, n)]], gv[(i, j, n)],
                                      X.act(pij_inv, gv[(j, k, n)]))
                            if lhs != G.e:
                                ok = False
                                break
                        if ok:
                            yield from rec_g(i, j - 1)
                    gv.pop((i, j, n), None)

                for _ in rec_p(n - 1):
                    out.append((tuple(a), tuple(pv[ij] for ij in pairs), tuple(gv[t] for t in triples)))
                    if len(out) > limit:
                        raise ResourceLimit(f"more than {limit} simplices in dimension {n} of the nerve of {X.name}")
        cells.append(out)
    return cells


def dakin_constraints_report(X, cells):
    """Re-check every simplex against the boundary and cocycle conditions."""
    rep = ValidationReport(f"nerve simplices of {X.name}")
    P = X.P
    for n, cs in enumerate(cells):
        pidx = {ij: k for k, ij in enumerate(_pairs(n))}
        tidx = {t: k for k, t in enumerate(_triples(n))}
        for x in cs:
            a, ps, gs = x
            pv = lambda i, j: ps[pidx[(i, j)]]
            gv = lambda i, j, k: gs[tidx[(i, j, k)]]
            for i, j, k in _triples(n):
                rep.check("boundary", (x, i, j, k), X.d(a[i], gv(i, j, k)),
                          P.comp(P.inverse(pv(i, k)), P.comp(pv(j, k), pv(i, j))))
            for i, j, k, l in _quads(n):
                G = X.group(a[i])
                lhs = G.m(G.inv[gv(i, j, k)], G.inv[gv(i, k, l)], gv(i, j, l), X.act(P.inverse(pv(i, j)), gv(j, k, l)))
                rep.check("cocycle", (x, i, j, k, l), lhs, G.e)
    return rep


def _reindex_dakin(x, a, q, p):
    objs, ps, gs = x
    pp, tp = reindex_positions(tuple(a), q, p)
    return (tuple(objs[i] for i in a), tuple(ps[k] for k in pp), tuple(gs[k] for k in tp))


def xmod_nerve(X, N=4, limit=None):
    """The nerve of X as a truncated simplicial set."""
    cells = dakin_simplices(X, N, limit)
    return from_reindexing(N, cells, _reindex_dakin, name=f"N{X.name}")


def compare_nerves(X, N=4, S=None, T=None, limit=None):
    """Normal lax simplices of beta(X) against nerve simplices of X, matched by
    (objs, c1, c2, units) |-> (objs, c1, first components of c2)."""
    S = S or geometric_nerve(beta(X), "normal-lax", N, limit)
    T = T or xmod_nerve(X, N, limit)
    maps = [{x: (x[0], x[1], tuple(c[0] for c in x[2])) for x in cells} for cells in S.cells]
    rep = check_simplicial_map(S, T, maps, bijective=True, name=f"beta nerve vs nerve of {X.name}")
    return rep, maps


# ---------------------------------------------------------------- Mayer-Vietoris

def mv_check(M, Mp, a, ap, Z=None):
    """Exactness of the long sequence at the basepoint (a, 1, a') of the
    homotopy pullback, with Fa = F'a'."""
    X, Xp, Y = M.source, Mp.source, M.target
    F, Fp, Q = M.F, Mp.F, Y.P
    b = F.obj[a]
    if Fp.obj[ap] != b:
        raise ValueError("no basepoint: Fa != F'a'")
    if Z is None:
        Z = homotopy_pullback_xmod(M, Mp)[0]
    o = (a, Q.ident(b), ap)
    PZ, PX, PXp, PY = pi(Z), pi(X), pi(Xp), pi(Y)
    rep = ValidationReport(f"Mayer-Vietoris for {M.name}, {Mp.name} at {o!r}")
    H = Y.group(b)
    # groups and maps
    pi2Z, pi2X, pi2Xp, pi2Y = PZ.pi2[o], PX.pi2[a], PXp.pi2[ap], PY.pi2[b]
    pi1Z, pi1X, pi1Xp, pi1Y = PZ.pi1[o], PX.pi1[a], PXp.pi1[ap], PY.pi1[b]
    prod2 = direct_product(pi2X, pi2Xp)
    prod1 = direct_product(pi1X, pi1Xp)
    al2 = {x: x for x in pi2Z.elements}
    be2 = {(g, gp): H.mul[(Mp.phi[ap][gp], H.inv[M.phi[a][g]])] for g, gp in prod2.elements}
    projZ = PZ.proj1[o]
    de2 = {h: projZ[(X.P.ident(a), h, Xp.P.ident(ap), Q.ident(b))] for h in pi2Y.elements}
    al1 = {}
    for m in Z.P.hom(o, o):
        cls = projZ[m]
        v = (PX.proj1[a][m[0]], PXp.proj1[ap][m[2]])
        if cls in al1:
            rep.check("alpha1-well-defined", (m,), v, al1[cls])
        al1.setdefault(cls, v)
    autX, autXp = X.P.hom(a, a), Xp.P.hom(ap, ap)
    be1 = {}
    for p in autX:
        for pp in autXp:
            k = (PX.proj1[a][p], PXp.proj1[ap][pp])
            v = PY.proj1[b][Q.comp(Fp.mor[pp], Q.inverse(F.mor[p]))]
            if k in be1:
                rep.check("beta1-well-defined", (p, pp), v, be1[k])
            be1.setdefault(k, v)
    de1 = {}
    for q in Q.hom(b, b):
        k = PY.proj1[b][q]
        v = PZ.component((a, q, ap))
        if k in de1:
            rep.check("delta1-well-defined", (q,), v, de1[k])
        de1.setdefault(k, v)
    al0 = {c: (PX.component(c[0][0]), PXp.component(c[0][2])) for c in PZ.pi0}
    # homomorphisms
    for nm, G, K, m in (("alpha2", pi2Z, prod2, al2), ("beta2", prod2, pi2Y, be2),
                        ("delta2", pi2Y, pi1Z, de2), ("alpha1", pi1Z, prod1, al1), ("beta1", prod1, pi1Y, be1)):
        if not set(m.values()) <= set(K.elements):
            rep.schema(f"{nm}-type", (), sorted(map(repr, set(m.values()) - set(K.elements))))
        elif nm != "beta1" and not is_homomorphism(G, K, m):
            rep.add(f"{nm}-homomorphism", (), None, None)
    if rep.violations:
        return rep

    def exact(joint, inc, out, unit):
        img = set(inc.values())
        ker = {x for x, y in out.items() if y == unit}
        rep.check(f"exact-at-{joint}", (), ordered(img), ordered(ker))
    exact("pi2(hpb)", {x: x for x in [pi2Z.e]}, al2, prod2.e)
    exact("pi2xpi2", al2, be2, H.e)
    exact("pi2(base)", be2, de2, pi1Z.e)
    exact("pi1(hpb)", de2, al1, prod1.e)
    exact("pi1xpi1", al1, be1, pi1Y.e)
    exact("pi1(base)", be1, de1, PZ.component(o))
    exact("pi0(hpb)", de1, al0, (PX.component(a), PXp.component(ap)))
    return rep


def mv_basepoints(M, Mp):
    return [(a, ap) for a in M.source.P.objects for ap in Mp.source.P.objects if M.F.obj[a] == Mp.F.obj[ap]]


# ---------------------------------------------------------------- loop groupoid

def endo_groupoid(X, a):
    """Objects the automorphisms p of a; arrows (g, p): p -> q with p = q o dg."""
    P = X.P
    G = X.group(a)
    objs = list(P.hom(a, a))
    mors = {}
    for p in objs:
        for g in G.elements:
            q = P.comp(p, P.inverse(X.d(a, g)))
            mors[(g, p)] = (p, q)
    comp = {}
    for (g1, p), (_, q) in mors.items():
        for g2 in G.elements:
            comp[((g2, q), (g1, p))] = (G.mul[(g2, g1)], p)
    ident = {p: (G.e, p) for p in objs}
    inv = {(g, p): (G.inv[g], mors[(g, p)][1]) for g, p in mors}
    return FiniteGroupoid(objs, mors, comp, ident, inv, name=f"{X.name}({a})")


def loop_report(X, a):
    """pi0(endo) ~= pi1(X, a) through p |-> [p]; Aut(1_a) ~= pi2(X, a) through (g, 1) |-> g."""
    E = endo_groupoid(X, a)
    prof = pi(X)
    rep = ValidationReport(f"loop groupoid of {X.name} at {a!r}")
    proj = prof.proj1[a]
    comps = E.components()
    m = {}
    for c in comps:
        classes = {proj[p] for p in c}
        if len(classes) != 1:
            rep.add("pi0-well-defined", (c,), ordered(classes), None)
        m[c] = proj[c[0]]
    rep.check("pi0-bijective", (), len(set(m.values())), len(prof.pi1[a].elements))
    rep.check("pi0-injective", (), len(set(m.values())), len(comps))
    one = X.P.ident(a)
    A = E.automorphism_group(one)
    phi = {x: x[0] for x in A.elements}
    K = prof.pi2[a]
    rep.check("pi2-bijective", (), ordered(set(phi.values())), ordered(K.elements))
    if not is_homomorphism(A, K, phi):
        rep.add("pi2-homomorphism", (), None, None)
    return rep


def compare_with_ordinary_nerve(X, N=4, S=None):
    """For trivial fibres: nerve simplices against the ordinary nerve of P,
    through (objs, p, g) |-> (p_01, p_12, ..., p_(n-1)n)."""
    from .simplicial import ordinary_nerve
    if any(X.group(a).order() != 1 for a in X.P.objects):
        raise ValueError("fibres are not trivial")
    S = S or xmod_nerve(X, N)
    T = ordinary_nerve(X.P, N)
    maps = []
    for n, cells in enumerate(S.cells):
        pos = [_pairs(n).index((k - 1, k)) for k in range(1, n + 1)]
        maps.append({x: (x[0] if n == 0 else tuple(x[1][i] for i in pos)) for x in cells})
    return check_simplicial_map(S, T, maps, bijective=True, name=f"nerve of {X.name} vs ordinary nerve")
