"""Comma bicategories of a lax functor over an oplax functor, and their calculus.

Cell encoding for F|F' (F: A -> B lax, F': A' -> B oplax):

    0-cell  (a, f, a')             f: Fa -> F'a'
    1-cell  (u, beta, u', f0, f1)  beta: F'u' o f0 => f1 o Fu
    2-cell  (al, al', s, t)        s, t 1-cells with  t.beta (F'al' o 1) = (1 o Fal) s.beta
"""

from itertools import product

from .bicategory import (
    LAX,
    OPLAX,
    FiniteBicategory,
    LaxMorphism,
    LaxTransformation,
    compose_lax,
    identity_lax,
    lax_difference,
    object_homomorphism,
    same_bicategory,
    validate_lax,
    validate_transformation,
)
from .report import ValidationReport


def comma(F, Fp, name=None):
    """The comma bicategory F|F' with its strict projections (P, P').

    P is returned lax and P' oplax, matching the sides they sit on.
    """
    if F.direction != LAX or Fp.direction != OPLAX:
        raise ValueError(f"comma needs (lax, oplax), got ({F.direction}, {Fp.direction})")
    if not same_bicategory(F.target, Fp.target):
        raise ValueError("F and F' have different codomains")
    A, B, Ap = F.source, F.target, Fp.source
    objects = [(a, f, ap) for a in A.objects for ap in Ap.objects for f in B.hom1(F.F0(a), Fp.F0(ap))]
    cells1, idx = {}, {}
    for x0 in objects:
        a0, f0, ap0 = x0
        for u in A.from1(a0):
            a1, Fu = A.t1(u), F.F1(u)
            for up in Ap.from1(ap0):
                ap1 = Ap.t1(up)
                src = B.h(Fp.F1(up), f0)
                for f1 in B.hom1(F.F0(a1), Fp.F0(ap1)):
                    for beta in B.hom2(src, B.h(f1, Fu)):
                        s = (u, beta, up, f0, f1)
                        cells1[s] = (x0, (a1, f1, ap1))
                        idx.setdefault((u, up, f0, f1), []).append(beta)
    cells2 = {}
    for s in cells1:
        u, beta, up, f0, f1 = s
        for al in A.from2(u):
            ub = A.t2(al)
            rhs = B.v(B.wl(f1, F.F2(al)), beta)
            for alp in Ap.from2(up):
                upb = Ap.t2(alp)
                lhs_r = B.wr(Fp.F2(alp), f0)
                for bb in idx.get((ub, upb, f0, f1), ()):
                    if B.v(bb, lhs_r) == rhs:
                        t = (ub, bb, upb, f0, f1)
                        cells2[(al, alp, s, t)] = (s, t)

    ai = lambda *k: B.inv(B.a(*k))

    def circ(s2, s1):
        u2, b2, u2p, f1, f2 = s2
        u1, b1, u1p, f0, _ = s1
        Fu2, Fu1, Fpu2, Fpu1 = F.F1(u2), F.F1(u1), Fp.F1(u2p), Fp.F1(u1p)
        beta = B.vc(B.wl(f2, F.comp(u2, u1)), B.a(f2, Fu2, Fu1), B.wr(b2, Fu1), ai(Fpu2, f1, Fu1),
                    B.wl(Fpu2, b1), B.a(Fpu2, Fpu1, f0), B.wr(Fp.comp(u2p, u1p), f0))
        return (A.h(u2, u1), beta, Ap.h(u2p, u1p), f0, f2)

    def ring(x):
        a, f, ap = x
        beta = B.vc(B.wl(f, F.unit(a)), B.inv(B.r(f)), B.l(f), B.wr(Fp.unit(ap), f))
        return (A.i1(a), beta, Ap.i1(ap), f, f)

    def tgt0(s):
        return cells1[s][1]

    C = FiniteBicategory(
        objects, cells1, cells2,
        vcomp=lambda tau, sig: (A.v(tau[0], sig[0]), Ap.v(tau[1], sig[1]), sig[2], tau[3]),
        hcomp1=circ,
        hcomp2=lambda tau, sig: (A.h2(tau[0], sig[0]), Ap.h2(tau[1], sig[1]),
                                 circ(tau[2], sig[2]), circ(tau[3], sig[3])),
        id1=ring,
        id2=lambda s: (A.i2(s[0]), Ap.i2(s[2]), s, s),
        assoc=lambda s3, s2, s1: (A.a(s3[0], s2[0], s1[0]), Ap.a(s3[2], s2[2], s1[2]),
                                  circ(circ(s3, s2), s1), circ(s3, circ(s2, s1))),
        lunit=lambda s: (A.l(s[0]), Ap.l(s[2]), circ(ring(tgt0(s)), s), s),
        runit=lambda s: (A.r(s[0]), Ap.r(s[2]), circ(s, ring(cells1[s][0])), s),
        name=name or f"{F.name}|{Fp.name}")
    C.F, C.Fp = F, Fp
    P = projection(C, 0, LAX)
    Pp = projection(C, 1, OPLAX)
    C.P, C.Pp = P, Pp
    return C, (P, Pp)


def projection(C, side, direction):
    """The strict projection of a comma bicategory onto A (side 0) or A' (side 1)."""
    T = C.F.source if side == 0 else C.Fp.source
    i0, i1, i2 = (0, 0, 0) if side == 0 else (2, 2, 1)
    return LaxMorphism(direction, C, T, {x: x[i0] for x in C.objects},
                       {s: s[i1] for s in C.cells1}, {c: c[i2] for c in C.cells2},
                       lambda g, f: T.i2(T.h(g[i1], f[i1])), lambda x: T.i2(T.i1(x[i0])),
                       claims=("normal", "pseudo", "strict"), name="P" if side == 0 else "P'")


def fibre(F, b, name=None):
    """The homotopy fibre F|b for lax F, or b|F' when called as fibre(b, F')."""
    if not isinstance(F, LaxMorphism):
        return cofibre(F, b, name=name)
    return comma(F, object_homomorphism(b, F.target, OPLAX), name=name or f"{F.name}|{b}")[0]


def cofibre(b, Fp, name=None):
    """b|F'."""
    return comma(object_homomorphism(b, Fp.target, LAX), Fp, name=name or f"{b}|{Fp.name}")[0]


# ---------------------------------------------------------------- translations

def translate(p, F=None, Fp=None, source=None, target=None):
    """p_*: F|b0 -> F|b1 (given F) or p^*: b1|F' -> b0|F' (given F').

    Both are strict 2-functors; source/target may be passed to reuse
    already built fibres.
    """
    if (F is None) == (Fp is None):
        raise ValueError("give exactly one of F, F'")
    if F is not None:
        B = F.target
        b0, b1 = B.cells1[p]
        S = source or fibre(F, b0)
        T = target or fibre(F, b1)

        def one_cell(s):
            u, beta, z, f0, f1 = s
            pf0 = B.h(p, f0)
            nb = B.vc(B.inv(B.a(p, f1, F.F1(u))), B.wl(p, beta), B.wl(p, B.inv(B.l(f0))), B.l(pf0))
            return (u, nb, z, pf0, B.h(p, f1))

        def obj(x):
            return (x[0], B.h(p, x[1]), x[2])
        nm = f"{p}_*"
    else:
        B = Fp.target
        b0, b1 = B.cells1[p]
        S = source or cofibre(b1, Fp)
        T = target or cofibre(b0, Fp)

        def one_cell(s):
            z, beta, up, f0, f1 = s
            f1p = B.h(f1, p)
            nb = B.vc(B.inv(B.r(f1p)), B.wr(B.r(f1), p), B.wr(beta, p), B.inv(B.a(Fp.F1(up), f0, p)))
            return (z, nb, up, B.h(f0, p), f1p)

        def obj(x):
            return (x[0], B.h(x[1], p), x[2])
        nm = f"{p}^*"
    m1 = {s: one_cell(s) for s in S.cells1}
    return LaxMorphism(
        LAX, S, T, {x: obj(x) for x in S.objects}, m1,
        {c: (c[0], c[1], m1[c[2]], m1[c[3]]) for c in S.cells2},
        lambda g, f: T.i2(T.h(m1[g], m1[f])), lambda x: T.i2(T.i1(obj(x))),
        claims=("normal", "strict"), name=nm)


def compare_translations(p, q, F):
    """Compare (p o q)_* with p_* q_* on F|b0 (q: b0 -> b1, p: b1 -> b2).

    When they agree cellwise, returns kind 'equal'.  Otherwise builds the
    comparison transformation with components (1_a, kappa, 1) where
    kappa = (1 o F1_a) r^-1 a_{p,q,f} l, and validates it.
    """
    B = F.target
    b0, b1 = B.cells1[q]
    _, b2 = B.cells1[p]
    S, M, T = fibre(F, b0), fibre(F, b1), fibre(F, b2)
    X = translate(B.h(p, q), F, source=S, target=T)
    Y = compose_lax(translate(p, F, source=M, target=T), translate(q, F, source=S, target=M))
    diff = lax_difference(X, Y)
    if diff is None:
        return {"kind": "equal", "report": ValidationReport("translations"), "difference": None}
    A = F.source
    comp0 = {}
    for x in S.objects:
        a, f, z = x
        pf = B.h(B.h(p, q), f)
        qf = B.h(p, B.h(q, f))
        kappa = B.vc(B.wl(qf, F.unit(a)), B.inv(B.r(qf)), B.a(p, q, f), B.l(pf))
        comp0[x] = (A.i1(a), kappa, T.Fp.source.i1(z), pf, qf)

    def nat(s):
        u = s[0]
        c0, c1 = comp0[S.s1(s)], comp0[S.t1(s)]
        Z = T.Fp.source
        return (A.v(A.inv(A.l(u)), A.r(u)), Z.i2(Z.h(s[2], c0[2])),
                T.h(Y.F1(s), c0), T.h(c1, X.F1(s)))
    bad = [s for s in S.cells1 if nat(s) not in T.cells2]
    th = LaxTransformation(LAX, X, Y, comp0, {s: nat(s) for s in S.cells1 if s not in bad}, name="kappa")
    rep = ValidationReport("translation comparison")
    for s in bad:
        rep.add("comparison-cell-exists", (s,), nat(s), None)
    if not bad:
        rep.extend(validate_transformation(th))
    return {"kind": "transformation", "report": rep, "difference": diff, "transformation": th}


# ---------------------------------------------------------------- pullback squares

def bar_lift(F, Fp, C=None):
    """F_bar: F|F' -> B|F' (lax) and F'_bar: F|F' -> F|B (oplax)."""
    if C is None:
        C, _ = comma(F, Fp)
    A, B, Ap = F.source, F.target, Fp.source
    BF, _ = comma(identity_lax(B, LAX), Fp)
    FB, _ = comma(F, identity_lax(B, OPLAX))

    def m1(s):
        return (F.F1(s[0]),) + s[1:]

    def m1p(s):
        return s[:2] + (Fp.F1(s[2]),) + s[3:]

    Fbar = LaxMorphism(
        LAX, C, BF, {x: (F.F0(x[0]), x[1], x[2]) for x in C.objects}, {s: m1(s) for s in C.cells1},
        {c: (F.F2(c[0]), c[1], m1(c[2]), m1(c[3])) for c in C.cells2},
        lambda g, f: (F.comp(g[0], f[0]), Ap.i2(Ap.h(g[2], f[2])), BF.h(m1(g), m1(f)), m1(C.h(g, f))),
        lambda x: (F.unit(x[0]), Ap.i2(Ap.i1(x[2])), BF.i1((F.F0(x[0]), x[1], x[2])), m1(C.i1(x))),
        name="Fbar")
    Fbarp = LaxMorphism(
        OPLAX, C, FB, {x: (x[0], x[1], Fp.F0(x[2])) for x in C.objects}, {s: m1p(s) for s in C.cells1},
        {c: (c[0], Fp.F2(c[1]), m1p(c[2]), m1p(c[3])) for c in C.cells2},
        lambda g, f: (A.i2(A.h(g[0], f[0])), Fp.comp(g[2], f[2]), m1p(C.h(g, f)), FB.h(m1p(g), m1p(f))),
        lambda x: (A.i2(A.i1(x[0])), Fp.unit(x[2]), m1p(C.i1(x)), FB.i1((x[0], x[1], Fp.F0(x[2])))),
        name="F'bar")
    return Fbar, Fbarp, BF, FB


def pullback_square_check(F, Fp, C=None):
    """Validate both lifts and the two commuting squares."""
    if C is None:
        C, _ = comma(F, Fp)
    Fbar, Fbarp, BF, FB = bar_lift(F, Fp, C)
    rep = ValidationReport(f"pullback squares of {C.name}")
    rep.extend(validate_lax(Fbar), "Fbar.")
    rep.extend(validate_lax(Fbarp), "F'bar.")
    if rep.violations:
        return rep
    d = lax_difference(compose_lax(BF.P, Fbar), compose_lax(F, C.P))
    if d is not None:
        rep.add("square-P", d[:2], d[2], d[3])
    d = lax_difference(compose_lax(FB.Pp, Fbarp), compose_lax(Fp, C.Pp))
    if d is not None:
        rep.add("square-P'", d[:2], d[2], d[3])
    for s in C.cells1:
        if BF.Pp.F1(Fbar.F1(s)) != C.Pp.F1(s):
            rep.add("square-P'-Fbar", (s,), BF.Pp.F1(Fbar.F1(s)), C.Pp.F1(s))
    return rep


def mediating(L, M, C=None, BF=None):
    """The unique N: D -> F|F' with P N = L and Fbar N = M, given F L = P M."""
    if C is None:
        raise ValueError("pass the comma bicategory F|F'")
    F, Fp = C.F, C.Fp
    if BF is None:
        BF = bar_lift(F, Fp, C)[2]
    d = lax_difference(compose_lax(F, L), compose_lax(BF.P, M))
    if d is not None:
        raise ValueError(f"F L != P M at {d[:2]}")
    D = L.source

    def m1(h):
        return (L.F1(h),) + M.F1(h)[1:]

    def obj(x):
        return (L.F0(x),) + M.F0(x)[1:]
    return LaxMorphism(
        LAX, D, C, {x: obj(x) for x in D.objects}, {h: m1(h) for h in D.cells1},
        {g: (L.F2(g), M.F2(g)[1], m1(D.s2(g)), m1(D.t2(g))) for g in D.cells2},
        lambda h2, h1: (L.comp(h2, h1), M.comp(h2, h1)[1], C.h(m1(h2), m1(h1)), m1(D.h(h2, h1))),
        lambda x: (L.unit(x), M.unit(x)[1], C.i1(obj(x)), m1(D.i1(x))),
        name="N")


def mediating_uniqueness(N, L, M, C, Fbar):
    """Check that each cell of N is the only cell with the prescribed images."""
    rep = ValidationReport("mediating uniqueness")
    D = L.source
    P = C.P
    by0, by1, by2 = {}, {}, {}
    for x in C.objects:
        by0.setdefault((P.F0(x), Fbar.F0(x)), []).append(x)
    for s in C.cells1:
        by1.setdefault((P.F1(s), Fbar.F1(s)), []).append(s)
    for c in C.cells2:
        by2.setdefault((P.F2(c), Fbar.F2(c)), []).append(c)
    for x in D.objects:
        got = by0.get((L.F0(x), M.F0(x)), [])
        if got != [N.F0(x)]:
            rep.add("unique-0-cell", (x,), got, N.F0(x))
    for h in D.cells1:
        got = by1.get((L.F1(h), M.F1(h)), [])
        if got != [N.F1(h)]:
            rep.add("unique-1-cell", (h,), got, N.F1(h))
    for g in D.cells2:
        got = by2.get((L.F2(g), M.F2(g)), [])
        if got != [N.F2(g)]:
            rep.add("unique-2-cell", (g,), got, N.F2(g))
    lax = N.direction == LAX

    def pasted(G, c, outer):
        T = G.target
        return T.v(G.F2(c), outer) if lax else T.v(outer, G.F2(c))

    def candidates(want, outers, targets):
        # cells of C with the boundary of want whose pastings give the structure cells of L and M
        s, t = C.cells2[want]
        return [c for c in C.hom2(s, t)
                if all(pasted(G, c, o) == r for G, o, r in zip((P, Fbar), outers, targets))]
    for h2, h1 in D.composable1():
        want = N.comp(h2, h1)
        outers = [G.comp(N.F1(h2), N.F1(h1)) for G in (P, Fbar)]
        got = candidates(want, outers, (L.comp(h2, h1), M.comp(h2, h1)))
        if got != [want]:
            rep.add("unique-comp-cell", (h2, h1), got, want)
    for x in D.objects:
        want = N.unit(x)
        outers = [G.unit(N.F0(x)) for G in (P, Fbar)]
        got = candidates(want, outers, (L.unit(x), M.unit(x)))
        if got != [want]:
            rep.add("unique-unit-cell", (x,), got, want)
    return rep


def pullback_lemma_check(F, Fp, K=None, C=None, lifts=None):
    """For a cone L = P K, M = Fbar K: the mediating N satisfies P N = L,
    Fbar N = M, each of its cells is the only candidate, and N = K."""
    if C is None:
        C, _ = comma(F, Fp)
    Fbar, _, BF, _ = lifts or bar_lift(F, Fp, C)
    K = K or identity_lax(C, LAX)
    L = compose_lax(C.P, K)
    M = compose_lax(Fbar, K)
    rep = ValidationReport(f"pullback lemma for {C.name} on cone {K.name}")
    N = mediating(L, M, C, BF)
    rep.extend(validate_lax(N), "N.")
    if rep.violations:
        return rep
    for nm, lhs, rhs in (("PN=L", compose_lax(C.P, N), L), ("FbarN=M", compose_lax(Fbar, N), M), ("N=K", N, K)):
        d = lax_difference(lhs, rhs)
        if d is not None:
            rep.add(nm, d[:2], d[2], d[3])
    rep.extend(mediating_uniqueness(N, L, M, C, Fbar))
    return rep


# ---------------------------------------------------------------- inclusions

def inclusion_J(a, F, Fp, C=None):
    """J: Fa|F' -> F|F', normal lax, with comparison cell (l_{1_a}, 1)."""
    if C is None:
        C, _ = comma(F, Fp)
    A, B, Ap = F.source, F.target, Fp.source
    S = comma(object_homomorphism(F.F0(a), B, LAX), Fp)[0]
    one = A.i1(a)

    def m1(s):
        _, beta, up, f0, f1 = s
        return (one, B.v(B.wl(f1, F.unit(a)), beta), up, f0, f1)

    def obj(x):
        return (a, x[1], x[2])
    return LaxMorphism(
        LAX, S, C, {x: obj(x) for x in S.objects}, {s: m1(s) for s in S.cells1},
        {c: (A.i2(one), c[1], m1(c[2]), m1(c[3])) for c in S.cells2},
        lambda g, f: (A.l(one), Ap.i2(Ap.h(g[2], f[2])), C.h(m1(g), m1(f)), m1(S.h(g, f))),
        lambda x: C.i2(C.i1(obj(x))),
        claims=("normal",), name=f"J_{a}")


def inclusion_Jp(ap, F, Fp, C=None):
    """J': F|F'a' -> F|F', normal oplax, with comparison cell (1, l_{1_a'})."""
    if C is None:
        C, _ = comma(F, Fp)
    A, B, Ap = F.source, F.target, Fp.source
    S = comma(F, object_homomorphism(Fp.F0(ap), B, OPLAX))[0]
    one = Ap.i1(ap)

    def m1(s):
        u, beta, _, f0, f1 = s
        return (u, B.v(beta, B.wr(Fp.unit(ap), f0)), one, f0, f1)

    def obj(x):
        return (x[0], x[1], ap)
    return LaxMorphism(
        OPLAX, S, C, {x: obj(x) for x in S.objects}, {s: m1(s) for s in S.cells1},
        {c: (c[0], Ap.i2(one), m1(c[2]), m1(c[3])) for c in S.cells2},
        lambda g, f: (A.i2(A.h(g[0], f[0])), Ap.l(one), m1(S.h(g, f)), C.h(m1(g), m1(f))),
        lambda x: C.i2(C.i1(obj(x))),
        claims=("normal",), name=f"J'_{ap}")


# ---------------------------------------------------------------- iterated commas

def comma2(F, G):
    """F|(G|B) via the oplax projection of G|B, for F: A -> B <- C: G (both lax)."""
    B = F.target
    GB, (_, Pp) = comma(G, identity_lax(B, OPLAX))
    return comma(F, Pp, name=f"{F.name}|{G.name}|B")[0]


def _swap1(s):
    u, beta, (v, betap, p, g0, g1), f0, f1 = s
    return (v, betap, (u, beta, p, f0, f1), g0, g1)


def _inner(s):
    u, beta, (_, _, p, _, _), f0, f1 = s
    return (u, beta, p, f0, f1)


def swap_cells(x, dim):
    if dim == 0:
        a, f, (c, g, b) = x
        return (c, g, (a, f, b))
    if dim == 1:
        return _swap1(x)
    al, (ga, pi, si, ti), s, t = x
    return (ga, (al, pi, _inner(s), _inner(t)), _swap1(s), _swap1(t))


def comma2_symmetry(X, Y):
    """Check that swapping the two sides is an isomorphism X = F|G|B -> Y = G|F|B."""
    rep = ValidationReport("comma symmetry")
    for dim, (cx, cy) in enumerate(((X.objects, Y.objects), (X.cells1, Y.cells1), (X.cells2, Y.cells2))):
        img = {swap_cells(c, dim) for c in cx}
        if len(img) != len(cx) or img != set(cy):
            rep.add("bijection", (dim,), len(img), len(cy))
    if rep.violations:
        return rep
    sw0 = lambda x: swap_cells(x, 0)
    sw1 = lambda x: swap_cells(x, 1)
    sw2 = lambda x: swap_cells(x, 2)
    for g, f in X.composable1():
        rep.check("hcomp1", (g, f), sw1(X.h(g, f)), Y.h(sw1(g), sw1(f)))
    for x in X.objects:
        rep.check("id1", (x,), sw1(X.i1(x)), Y.i1(sw0(x)))
    for f in X.cells1:
        rep.check("id2", (f,), sw2(X.i2(f)), Y.i2(sw1(f)))
        rep.check("lunit", (f,), sw2(X.l(f)), Y.l(sw1(f)))
        rep.check("runit", (f,), sw2(X.r(f)), Y.r(sw1(f)))
    for b, a in X.vertical_pairs():
        rep.check("vcomp", (b, a), sw2(X.v(b, a)), Y.v(sw2(b), sw2(a)))
    for b, a in X.composable2():
        rep.check("hcomp2", (b, a), sw2(X.h2(b, a)), Y.h2(sw2(b), sw2(a)))
    for h, g, f in X.composable_triples():
        rep.check("assoc", (h, g, f), sw2(X.a(h, g, f)), Y.a(sw1(h), sw1(g), sw1(f)))
    return rep


# ---------------------------------------------------------------- comparisons with B

def hom_iso(B, b, bp):
    """b|b' against the hom-category B(b, b'): sigma = r . beta . l^-1."""
    C = comma(object_homomorphism(b, B, LAX), object_homomorphism(bp, B, OPLAX))[0]
    rep = ValidationReport(f"{b}|{bp} vs {B.name}({b},{bp})")
    obj = {x: x[1] for x in C.objects}
    if sorted(obj.values(), key=repr) != sorted(B.hom1(b, bp), key=repr) or len(set(obj.values())) != len(obj):
        rep.add("objects", (b, bp), len(obj), len(B.hom1(b, bp)))
        return rep, C

    def sigma(s):
        _, beta, _, f0, f1 = s
        return B.vc(B.r(f1), beta, B.inv(B.l(f0)))
    img = {}
    for s in C.cells1:
        img.setdefault((s[3], s[4]), []).append(sigma(s))
    for f0 in B.hom1(b, bp):
        for f1 in B.hom1(b, bp):
            got = img.get((f0, f1), [])
            if sorted(got, key=repr) != sorted(B.hom2(f0, f1), key=repr) or len(set(got)) != len(got):
                rep.add("1-cells", (f0, f1), got, B.hom2(f0, f1))
    for c in C.cells2:
        if c[2] != c[3]:
            rep.add("discrete", (c,), c[2], c[3])
    for g, f in C.composable1():
        rep.check("composition", (g, f), sigma(C.h(g, f)), B.v(sigma(g), sigma(f)))
    for x in C.objects:
        rep.check("identity", (x,), sigma(C.i1(x)), B.i2(x[1]))
    return rep, C


def omega(Fp):
    """omega: P => F'P' on 1_B|F', a lax transformation of oplax functors."""
    B = Fp.target
    C, (P, Pp) = comma(identity_lax(B, LAX), Fp)
    src = projection(C, 0, OPLAX)
    tgt = compose_lax(Fp, Pp)
    return LaxTransformation(LAX, src, tgt, {x: x[1] for x in C.objects},
                             {s: s[1] for s in C.cells1}, name="omega")


def omega_prime(F):
    """omega': F P => P' on F|1_B, a lax transformation of lax functors."""
    B = F.target
    C, (P, Pp) = comma(F, identity_lax(B, OPLAX))
    src = compose_lax(F, P)
    tgt = projection(C, 1, LAX)
    return LaxTransformation(LAX, src, tgt, {x: x[1] for x in C.objects},
                             {s: s[1] for s in C.cells1}, name="omega'")


# ---------------------------------------------------------------- Property B

class _EquivCache:
    def __init__(self, C):
        self.C = C
        self.memo = {}

    def iso1(self, f, g):
        return any(self.C.is_iso(c) for c in self.C.hom2(f, g))

    def equivalent(self, x, y):
        k = (x, y)
        if k not in self.memo:
            C = self.C
            self.memo[k] = any(self.iso1(C.h(e2, e), C.i1(x)) and self.iso1(C.h(e, e2), C.i1(y))
                               for e in C.hom1(x, y) for e2 in C.hom1(y, x))
        return self.memo[k]


def is_biequivalence(G):
    """Local equivalences plus essential surjectivity up to internal equivalence.

    Returns (bool, witness) where the witness names the first failure.
    """
    S, T = G.source, G.target
    for x, y in product(S.objects, repeat=2):
        h1 = S.hom1(x, y)
        for f, g in product(h1, repeat=2):
            img = [G.F2(c) for c in S.hom2(f, g)]
            if len(set(img)) != len(img):
                return False, ("not locally faithful", f, g)
            if set(img) != set(T.hom2(G.F1(f), G.F1(g))):
                return False, ("not locally full", f, g)
        tc = _EquivCache(T)
        imgs = [G.F1(f) for f in h1]
        for w in T.hom1(G.F0(x), G.F0(y)):
            if not any(tc.iso1(w, i) for i in imgs):
                return False, ("not locally essentially surjective", x, y, w)
    ec = _EquivCache(T)
    imgs = {G.F0(x) for x in S.objects}
    for z in T.objects:
        if not any(ec.equivalent(i, z) for i in imgs):
            return False, ("not essentially surjective", z)
    return True, None


def property_B_witness(F):
    """A sufficient condition only: every p_* between fibres of F is a
    biequivalence.  A false result is inconclusive."""
    B = F.target
    fibres = {b: fibre(F, b) for b in B.objects}
    witnesses = {}
    holds = True
    for p, (b0, b1) in B.cells1.items():
        ps = translate(p, F, source=fibres[b0], target=fibres[b1])
        ok, why = is_biequivalence(ps)
        if not ok:
            holds = False
            witnesses[p] = why
    return {"holds_sufficient": holds, "witnesses": witnesses}


# ---------------------------------------------------------------- classical oracle

def classical_comma(Phi, Psi):
    """The ordinary comma category of functors Phi: C -> E <- D: Psi.

    Returns (objects, morphisms{(u, u', f0, f1): (x0, x1)}, compose).
    """
    C, D, E = Phi.source, Psi.source, Phi.target
    objs = [(c, f, d) for c in C.objects for d in D.objects for f in E.hom(Phi.obj[c], Psi.obj[d])]
    mors = {}
    for (c0, f0, d0), (c1, f1, d1) in product(objs, repeat=2):
        for u in C.hom(c0, c1):
            for up in D.hom(d0, d1):
                if E.comp(f1, Phi.mor[u]) == E.comp(Psi.mor[up], f0):
                    mors[(u, up, f0, f1)] = ((c0, f0, d0), (c1, f1, d1))
    comp = {}
    for g, (y, z) in mors.items():
        for f, (x, y2) in mors.items():
            if y2 == y:
                comp[(g, f)] = (C.comp(g[0], f[0]), D.comp(g[1], f[1]), f[2], g[3])
    return objs, mors, comp


def compare_with_classical(Phi, Psi, SC, SD, SE):
    """comma of the discrete 2-functors against the classical comma category."""
    from .bicategory import functor_as_lax
    F = functor_as_lax(Phi, SC, SE, LAX)
    G = functor_as_lax(Psi, SD, SE, OPLAX)
    X, _ = comma(F, G)
    objs, mors, comp = classical_comma(Phi, Psi)
    rep = ValidationReport("comma vs classical")
    rep.check("objects", (), sorted(X.objects, key=repr), sorted(objs, key=repr))
    flat = {(s[0], s[2], s[3], s[4]): X.cells1[s] for s in X.cells1}
    rep.check("1-cells", (), len(flat) == len(X.cells1) and flat == mors, True)
    for c in X.cells2:
        if c[2] != c[3]:
            rep.add("2-cells-discrete", (c,), c[2], c[3])
    for g, f in X.composable1():
        h = X.h(g, f)
        rep.check("composition", (g, f), (h[0], h[2], h[3], h[4]),
                  comp[((g[0], g[2], g[3], g[4]), (f[0], f[2], f[3], f[4]))])
    return rep
