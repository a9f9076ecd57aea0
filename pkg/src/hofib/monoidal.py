"""Monoidal categories, their deloopings and the monoidal fibre product."""

from itertools import product

from ._util import ordered
from .algebra import FiniteCategory, cyclic, trivial_group
from .bicategory import LAX, OPLAX, FiniteBicategory, LaxMorphism, as_direction
from .report import ValidationReport

STAR = "*"


class MonoidalCategory:
    """A finite category with tensor tables, unit object and constraint tables.

    assoc[(m3, m2, m1)]: (m3 x m2) x m1 -> m3 x (m2 x m1)
    lunit[m]: I x m -> m,  runit[m]: m x I -> m
    """

    def __init__(self, category, tensor_obj, tensor_mor, unit, assoc, lunit, runit, name="M"):
        self.C = category
        self.tensor_obj = dict(tensor_obj)
        self.tensor_mor = dict(tensor_mor)
        self.unit = unit
        self.assoc = dict(assoc)
        self.lunit = dict(lunit)
        self.runit = dict(runit)
        self.name = name

    def t(self, m, n):
        return self.tensor_obj[(m, n)]

    def tm(self, f, g):
        return self.tensor_mor[(f, g)]

    def a(self, m3, m2, m1):
        return self.assoc[(m3, m2, m1)]

    def l(self, m):
        return self.lunit[m]

    def r(self, m):
        return self.runit[m]

    def one(self, m):
        return self.C.ident(m)

    def c(self, *fs):
        """fs[0] o fs[1] o ... in the underlying category."""
        res = fs[-1]
        for f in reversed(fs[:-1]):
            res = self.C.comp(f, res)
        return res

    def inv(self, f):
        g = self.C.inverse(f)
        if g is None:
            raise ValueError(f"{f!r} is not invertible")
        return g

    def __repr__(self):
        return f"<MonoidalCategory {self.name}: {len(self.C.objects)} objects, {len(self.C.morphisms)} morphisms>"


def validate_monoidal(M):
    from .algebra import validate_algebra
    rep = ValidationReport(f"monoidal {M.name}")
    C = M.C
    rep.extend(validate_algebra(C), "category.")
    if rep.violations:
        return rep
    objs = set(C.objects)
    for m, n in product(C.objects, repeat=2):
        if M.tensor_obj.get((m, n)) not in objs:
            rep.schema("missing-tensor", (m, n))
    for f, g in product(C.morphisms, repeat=2):
        fg = M.tensor_mor.get((f, g))
        if fg not in C.morphisms:
            rep.schema("missing-tensor", (f, g))
        elif C.morphisms[fg] != (M.t(C.src(f), C.src(g)), M.t(C.dst(f), C.dst(g))):
            rep.schema("tensor-type", (f, g), fg)
    if M.unit not in objs:
        rep.schema("unit", (M.unit,))
    if rep.violations:
        return rep

    def typed(table, k, s, t):
        c = table.get(k)
        if c not in C.morphisms or C.morphisms[c] != (s, t):
            rep.schema("constraint-type", k, c)
    for m3, m2, m1 in product(C.objects, repeat=3):
        typed(M.assoc, (m3, m2, m1), M.t(M.t(m3, m2), m1), M.t(m3, M.t(m2, m1)))
    for m in C.objects:
        c = M.lunit.get(m)
        if C.morphisms.get(c) != (M.t(M.unit, m), m):
            rep.schema("lunit-type", (m,), c)
        c = M.runit.get(m)
        if C.morphisms.get(c) != (M.t(m, M.unit), m):
            rep.schema("runit-type", (m,), c)
    if rep.violations:
        return rep
    comp = C.comp
    for m, n in product(C.objects, repeat=2):
        rep.check("tensor-identity", (m, n), M.tm(C.ident(m), C.ident(n)), C.ident(M.t(m, n)))
    for (f2, f1) in C.composable_pairs():
        for (g2, g1) in C.composable_pairs():
            rep.check("tensor-functorial", (f2, f1, g2, g1),
                      M.tm(comp(f2, f1), comp(g2, g1)), comp(M.tm(f2, g2), M.tm(f1, g1)))
    for k, c in M.assoc.items():
        if C.inverse(c) is None:
            rep.add("assoc-invertible", k, c, None)
    for m in C.objects:
        for c, nm in ((M.l(m), "lunit"), (M.r(m), "runit")):
            if C.inverse(c) is None:
                rep.add(f"{nm}-invertible", (m,), c, None)
    I1 = C.ident(M.unit)
    for f, (m, n) in C.morphisms.items():
        rep.check("lunit-naturality", (f,), comp(M.l(n), M.tm(I1, f)), comp(f, M.l(m)))
        rep.check("runit-naturality", (f,), comp(M.r(n), M.tm(f, I1)), comp(f, M.r(m)))
    for f3, f2, f1 in product(C.morphisms, repeat=3):
        (s3, t3), (s2, t2), (s1, t1) = C.morphisms[f3], C.morphisms[f2], C.morphisms[f1]
        rep.check("assoc-naturality", (f3, f2, f1),
                  comp(M.a(t3, t2, t1), M.tm(M.tm(f3, f2), f1)),
                  comp(M.tm(f3, M.tm(f2, f1)), M.a(s3, s2, s1)))
    t, one = M.t, M.one
    for m4, m3, m2, m1 in product(C.objects, repeat=4):
        lhs = comp(M.a(m4, m3, t(m2, m1)), M.a(t(m4, m3), m2, m1))
        rhs = M.c(M.tm(one(m4), M.a(m3, m2, m1)), M.a(m4, t(m3, m2), m1), M.tm(M.a(m4, m3, m2), one(m1)))
        rep.check("pentagon", (m4, m3, m2, m1), lhs, rhs)
    for m2, m1 in product(C.objects, repeat=2):
        rep.check("triangle", (m2, m1), comp(M.tm(one(m2), M.l(m1)), M.a(m2, M.unit, m1)),
                  M.tm(M.r(m2), one(m1)))
    return rep


# ---------------------------------------------------------------- constructors

def discrete_monoidal(elements, mul, unit, name="M"):
    """Discrete monoidal category on a finite monoid; constraints are identities."""
    els = list(elements)
    C = FiniteCategory(els, {("id", x): (x, x) for x in els},
                       {(("id", x), ("id", x)): ("id", x) for x in els}, {x: ("id", x) for x in els}, name=name)
    return MonoidalCategory(
        C, {(x, y): mul[(x, y)] for x in els for y in els},
        {(("id", x), ("id", y)): ("id", mul[(x, y)]) for x in els for y in els}, unit,
        {(x, y, z): ("id", mul[(mul[(x, y)], z)]) for x in els for y in els for z in els},
        {x: ("id", x) for x in els}, {x: ("id", x) for x in els}, name=name)


def discrete_monoidal_group(G):
    return discrete_monoidal(G.elements, G.mul, G.e, name=G.name)


def truncated_monoid(n):
    """{0, ..., n} under addition capped at n: a finite monoid that is not a group."""
    els = range(n + 1)
    return discrete_monoidal(els, {(x, y): min(x + y, n) for x in els for y in els}, 0, name=f"N<={n}")


def ordered_monoid(n):
    """{0, ..., n} under capped addition with a morphism m -> k whenever m <= k:
    a monoidal preorder with non-invertible morphisms."""
    els = list(range(n + 1))
    cap = lambda x: min(x, n)
    mors = {("le", m, k): (m, k) for m in els for k in els if m <= k}
    comp = {(("le", j, k), ("le", i, j)): ("le", i, k) for i in els for j in els for k in els if i <= j <= k}
    C = FiniteCategory(els, mors, comp, {x: ("le", x, x) for x in els}, name=f"N<={n} ordered")
    return MonoidalCategory(
        C, {(x, y): cap(x + y) for x in els for y in els},
        {(f, g): ("le", cap(f[1] + g[1]), cap(f[2] + g[2])) for f in mors for g in mors}, 0,
        {(x, y, z): ("le", cap(x + y + z), cap(x + y + z)) for x in els for y in els for z in els},
        {x: ("le", x, x) for x in els}, {x: ("le", x, x) for x in els}, name=f"N<={n}ord")


def twisted_monoidal(G, A, omega, name=None):
    """Objects G, morphisms (g, x): g -> g for x in the abelian group A, tensor
    componentwise, associator (ghk, omega(g, h, k)).  omega must be a
    normalised 3-cocycle for the constraints to be coherent."""
    els = G.elements
    mors = {(g, x): (g, g) for g in els for x in A.elements}
    comp = {((g, x), (g, y)): (g, A.mul[(x, y)]) for g in els for x in A.elements for y in A.elements}
    C = FiniteCategory(els, mors, comp, {g: (g, A.e) for g in els}, name=name or "twisted")
    tm = {((g, x), (h, y)): (G.mul[(g, h)], A.mul[(x, y)]) for (g, x) in mors for (h, y) in mors}
    assoc = {(g, h, k): (G.m(g, h, k), omega(g, h, k)) for g in els for h in els for k in els}
    return MonoidalCategory(C, {(g, h): G.mul[(g, h)] for g in els for h in els}, tm, G.e, assoc,
                            {g: (g, A.e) for g in els}, {g: (g, A.e) for g in els}, name=name or "twisted")


def z2_twisted():
    """The 2-group with objects Z/2, automorphisms Z/2 and associator xyz."""
    Z2 = cyclic(2)
    return twisted_monoidal(Z2, Z2, lambda x, y, z: (x * y * z) % 2, name="Z2[w]")


def z2_strict_2group():
    Z2 = cyclic(2)
    return twisted_monoidal(Z2, Z2, lambda x, y, z: 0, name="Z2[0]")


def inflate(M, phi=lambda s, t: 1 - s, tags=(0, 1), name=None):
    """An equivalent, non-skeletal copy of M with objects (m, tag).

    Tags combine by phi, which need not be associative, so the tensor of
    objects is generally not strictly associative.  Morphisms (f, s, t)
    are morphisms of M between the underlying objects.
    """
    C = M.C
    objs = [(m, s) for m in C.objects for s in tags]
    mors = {(f, s, t): ((x, s), (y, t)) for f, (x, y) in C.morphisms.items() for s in tags for t in tags}
    comp = {((g, t, u), (f, s, t)): (C.comp(g, f), s, u) for (g, f) in C.compose
            for s in tags for t in tags for u in tags}
    cat = FiniteCategory(objs, mors, comp, {(m, s): (C.ident(m), s, s) for (m, s) in objs},
                         name=name or f"{M.name}+")
    tobj = {((m, s), (n, t)): (M.t(m, n), phi(s, t)) for (m, s) in objs for (n, t) in objs}
    tmor = {((f, s, t), (g, u, w)): (M.tm(f, g), phi(s, u), phi(t, w)) for (f, s, t) in mors for (g, u, w) in mors}
    assoc = {((m3, s3), (m2, s2), (m1, s1)): (M.a(m3, m2, m1), phi(phi(s3, s2), s1), phi(s3, phi(s2, s1)))
             for (m3, s3) in objs for (m2, s2) in objs for (m1, s1) in objs}
    u0 = tags[0]
    return MonoidalCategory(cat, tobj, tmor, (M.unit, u0), assoc,
                            {(m, s): (M.l(m), phi(u0, s), s) for (m, s) in objs},
                            {(m, s): (M.r(m), phi(s, u0), s) for (m, s) in objs}, name=name or f"{M.name}+")


def trivial_monoidal():
    G = trivial_group()
    return discrete_monoidal(G.elements, G.mul, G.e, name="1")


# ---------------------------------------------------------------- delooping

def delooping(M):
    """One object *, 1-cells the objects of M, 2-cells its morphisms, o = tensor."""
    C = M.C
    return FiniteBicategory(
        [STAR], {m: (STAR, STAR) for m in C.objects}, dict(C.morphisms),
        vcomp=dict(C.compose), hcomp1=dict(M.tensor_obj), hcomp2=dict(M.tensor_mor),
        id1={STAR: M.unit}, id2=dict(C.identity), assoc=dict(M.assoc),
        lunit=dict(M.lunit), runit=dict(M.runit), name=f"S{M.name}")


def hom_category(B, x, y):
    """The hom-category B(x, y) as a FiniteCategory."""
    f1 = B.hom1(x, y)
    mors = {al: B.cells2[al] for f in f1 for g in f1 for al in B.hom2(f, g)}
    comp = {(be, al): B.v(be, al) for al in mors for be in B.from2(B.t2(al))}
    return FiniteCategory(f1, mors, comp, {f: B.i2(f) for f in f1}, name=f"{B.name}({x},{y})")


class MonoidalFunctor:
    """F with mu[(m, n)]: Fm x Fn -> F(m x n) and eps: I -> FI."""

    def __init__(self, source, target, obj, mor, mu, eps, name="F"):
        self.source, self.target = source, target
        self.obj, self.mor, self.mu, self.eps = dict(obj), dict(mor), dict(mu), eps
        self.name = name

    def is_strong(self):
        C = self.target.C
        return all(C.inverse(f) is not None for f in list(self.mu.values()) + [self.eps])

    def sigma(self, SM=None, SN=None):
        """The induced lax functor of deloopings (a homomorphism when strong)."""
        SM = SM or delooping(self.source)
        SN = SN or delooping(self.target)
        return LaxMorphism(LAX, SM, SN, {STAR: STAR}, self.obj, self.mor, dict(self.mu),
                           {STAR: self.eps}, claims=("pseudo",) if self.is_strong() else (),
                           name=f"S{self.name}")


def identity_monoidal(M):
    C = M.C
    return MonoidalFunctor(M, M, {m: m for m in C.objects}, {f: f for f in C.morphisms},
                           {(m, n): C.ident(M.t(m, n)) for m in C.objects for n in C.objects},
                           C.ident(M.unit), name="1")


def unit_functor(M, T=None):
    """I: [0] -> M with structure l_I: I x I -> I (equal to r_I)."""
    T = T or trivial_monoidal()
    u = M.unit
    return MonoidalFunctor(T, M, {0: u}, {("id", 0): M.one(u)}, {(0, 0): M.l(u)}, M.one(u), name="I")


def constant_monoidal(M, T, m, mu, eps, name=None):
    """The constant lax monoidal functor M -> T at a monoid object (m, mu, eps) of T."""
    return MonoidalFunctor(M, T, {x: m for x in M.C.objects}, {f: T.one(m) for f in M.C.morphisms},
                           {(x, y): mu for x in M.C.objects for y in M.C.objects}, eps,
                           name=name or f"const{m}")


def group_hom_monoidal(MG, MH, f, name="f"):
    """A homomorphism of groups between discrete monoidal groups."""
    return MonoidalFunctor(MG, MH, dict(f), {("id", x): ("id", f[x]) for x in f},
                           {(x, y): ("id", MH.t(f[x], f[y])) for x in f for y in f},
                           ("id", MH.unit), name=name)


def validate_monoidal_functor(F):
    from .bicategory import validate_lax
    return validate_lax(F.sigma())


# ---------------------------------------------------------------- fibre product

def monoidal_fibre(F, Fp, SN=None, SNp=None, SM=None):
    """The bicategory of triples over monoidal functors F: N -> M <- N': F'.

    0-cells are objects m of M (encoded (*, m, *)); 1-cells m0 -> m1 are
    (n, f, n') with f: F'n' x m0 -> m1 x Fn; 2-cells are pairs (u, u') with
    f_bar (F'u' x 1) = (1 x Fu) f.
    """
    M = F.target
    if Fp.target is not M:
        raise ValueError("monoidal functors have different codomains")
    N, Np, C = F.source, Fp.source, M.C
    t, tm, comp, one, inv = M.t, M.tm, C.comp, M.one, M.inv
    objects = [(STAR, m, STAR) for m in C.objects]
    cells1, idx = {}, {}
    for m0 in C.objects:
        for n in N.C.objects:
            Fn = F.obj[n]
            for npr in Np.C.objects:
                src = t(Fp.obj[npr], m0)
                for m1 in C.objects:
                    for f in C.hom(src, t(m1, Fn)):
                        cid = (n, f, npr, m0, m1)
                        cells1[cid] = ((STAR, m0, STAR), (STAR, m1, STAR))
                        idx.setdefault((n, npr, m0, m1), []).append(f)
    cells2 = {}
    for s in cells1:
        n, f, npr, m0, m1 = s
        for u in N.C.hom_from(n):
            rhs = comp(tm(one(m1), F.mor[u]), f)
            for up in Np.C.hom_from(npr):
                lhs_r = tm(Fp.mor[up], one(m0))
                nb, nbp = N.C.dst(u), Np.C.dst(up)
                for fb in idx.get((nb, nbp, m0, m1), ()):
                    if comp(fb, lhs_r) == rhs:
                        cells2[(u, up, s, (nb, fb, nbp, m0, m1))] = (s, (nb, fb, nbp, m0, m1))

    def circ(s2, s1):
        n2, f2, n2p, m1, m2 = s2
        n1, f1, n1p, m0, _ = s1
        Fn2, Fn1, Fpn2, Fpn1 = F.obj[n2], F.obj[n1], Fp.obj[n2p], Fp.obj[n1p]
        f = M.c(tm(one(m2), F.mu[(n2, n1)]), M.a(m2, Fn2, Fn1), tm(f2, one(Fn1)),
                inv(M.a(Fpn2, m1, Fn1)), tm(one(Fpn2), f1), M.a(Fpn2, Fpn1, m0),
                tm(inv(Fp.mu[(n2p, n1p)]), one(m0)))
        return (N.t(n2, n1), f, Np.t(n2p, n1p), m0, m2)

    def ring(x):
        m = x[1]
        f = M.c(tm(one(m), F.eps), inv(M.r(m)), M.l(m), tm(inv(Fp.eps), one(m)))
        return (N.unit, f, Np.unit, m, m)

    def cell(u, up, s, t_):
        return (u, up, s, t_)

    def hcomp2(tau, sig):
        return (N.tm(tau[0], sig[0]), Np.tm(tau[1], sig[1]), circ(tau[2], sig[2]), circ(tau[3], sig[3]))

    def assoc(s3, s2, s1):
        return (N.a(s3[0], s2[0], s1[0]), Np.a(s3[2], s2[2], s1[2]), circ(circ(s3, s2), s1), circ(s3, circ(s2, s1)))

    def lunit(s):
        x1 = (STAR, s[4], STAR)
        return (N.l(s[0]), Np.l(s[2]), circ(ring(x1), s), s)

    def runit(s):
        x0 = (STAR, s[3], STAR)
        return (N.r(s[0]), Np.r(s[2]), circ(s, ring(x0)), s)

    return FiniteBicategory(
        objects, cells1, cells2,
        vcomp=lambda tau, sig: cell(N.C.comp(tau[0], sig[0]), Np.C.comp(tau[1], sig[1]), sig[2], tau[3]),
        hcomp1=circ, hcomp2=hcomp2, id1=ring,
        id2=lambda s: cell(N.one(s[0]), Np.one(s[2]), s, s),
        assoc=assoc, lunit=lunit, runit=runit, name=f"{F.name}|{Fp.name}")


def tensor_translation(m, side, F, I=None, fibre=None):
    """m x - on F|I (side 'left') or - x m on I|F (side 'right'), as a strict 2-endofunctor."""
    M = F.target
    I = I or unit_functor(M)
    t, tm, one, inv = M.t, M.tm, M.one, M.inv
    if side == "left":
        B = fibre or monoidal_fibre(F, I)

        def obj(x):
            return (STAR, t(m, x[1]), STAR)

        def one_cell(s):
            n, f, z, m0, m1 = s
            g = M.c(inv(M.a(m, m1, F.obj[n])), tm(one(m), f), tm(one(m), inv(M.l(m0))), M.l(t(m, m0)))
            return (n, g, z, t(m, m0), t(m, m1))
    elif side == "right":
        B = fibre or monoidal_fibre(I, F)

        def obj(x):
            return (STAR, t(x[1], m), STAR)

        def one_cell(s):
            z, g, npr, m0, m1 = s
            h = M.c(inv(M.r(t(m1, m))), tm(M.r(m1), one(m)), tm(g, one(m)), inv(M.a(F.obj[npr], m0, m)))
            return (z, h, npr, t(m0, m), t(m1, m))
    else:
        raise ValueError("side must be 'left' or 'right'")
    return LaxMorphism(
        LAX, B, B, {x: obj(x) for x in B.objects}, {s: one_cell(s) for s in B.cells1},
        {c: (c[0], c[1], one_cell(c[2]), one_cell(c[3])) for c in B.cells2},
        lambda g, f: B.i2(B.h(one_cell(g), one_cell(f))),
        lambda x: B.i2(B.i1(obj(x))),
        claims=("normal", "strict"), name=f"{m}{'x-' if side == 'left' else '-x'}")


# ---------------------------------------------------------------- regularity

def _iso(M, x, y):
    return any(M.C.inverse(f) is not None for f in M.C.hom(x, y))


def _is_equivalence(M, obj, mor):
    C = M.C
    for x in C.objects:
        for y in C.objects:
            image = [mor[f] for f in C.hom(x, y)]
            if len(set(image)) != len(image):
                return False, ("not faithful", x, y)
            if set(image) != set(C.hom(obj[x], obj[y])):
                return False, ("not full", x, y)
    for z in C.objects:
        if not any(_iso(M, obj[x], z) for x in C.objects):
            return False, ("not essentially surjective", z)
    return True, None


def regularity_check(M):
    C = M.C
    witnesses = {}
    regular = True
    for m in C.objects:
        for side in ("left", "right"):
            if side == "left":
                obj = {x: M.t(m, x) for x in C.objects}
                mor = {f: M.tm(M.one(m), f) for f in C.morphisms}
            else:
                obj = {x: M.t(x, m) for x in C.objects}
                mor = {f: M.tm(f, M.one(m)) for f in C.morphisms}
            ok, why = _is_equivalence(M, obj, mor)
            if not ok:
                regular = False
                witnesses[(m, side)] = why
    all_inv = all(C.inverse(f) is not None for f in C.morphisms)
    weak_inv = {}
    for m in C.objects:
        inv = [n for n in C.objects if _iso(M, M.t(m, n), M.unit) and _iso(M, M.t(n, m), M.unit)]
        weak_inv[m] = ordered(inv)[0] if inv else None
    cat_group = all_inv and all(v is not None for v in weak_inv.values())
    return {"regular": regular, "categorical_group": cat_group,
            "witnesses": {"translations": witnesses, "weak_inverses": weak_inv,
                          "morphisms_invertible": all_inv}}


def sigma_pair(F, Fp):
    """comma inputs for monoidal functors: (SF lax, SF' oplax) sharing deloopings."""
    SM = delooping(F.target)
    SF = F.sigma(delooping(F.source), SM)
    SFp = as_direction(Fp.sigma(delooping(Fp.source) if Fp.source is not F.source else SF.source, SM), OPLAX)
    return SF, SFp
