"""Named check suites over the corpus, with deterministic JSON reports.

Each check carries an anchor: a short description of the identity or
construction it exercises.
"""

import os
from concurrent.futures import ProcessPoolExecutor

from ._util import ResourceLimit, key, to_json
from .algebra import linear_graph, validate_algebra
from .bicategory import (
    FiniteBicategory,
    bicategories_equal,
    validate_bicategory,
    validate_lax,
)
from .comma import (
    bar_lift,
    comma,
    compare_with_classical,
    hom_iso,
    inclusion_J,
    pullback_lemma_check,
    pullback_square_check,
)
from .corpus import generate_corpus
from .monoidal import (
    monoidal_fibre,
    regularity_check,
    sigma_pair,
    tensor_translation,
    unit_functor,
    validate_monoidal,
)
from .nerve import (
    VARIANTS,
    adjunction_bijection,
    compare_with_ordinary,
    geometric_nerve,
    geometric_simplices,
    graph_adjunction,
    grothendieck_nerve,
    nerve_functoriality,
    nerve_identity_check,
    nerve_projection,
    simplex_on_free,
)
from .report import INVALID, LIMITED, VALID, ValidationReport
from .simplicial import kan_check, validate_simplicial
from .xmod import (
    beta,
    beta_on_morphism,
    compare_nerves,
    compare_with_ordinary_nerve,
    compose_xmod,
    fibration_xmod,
    homotopy_pullback_xmod,
    identity_xmod,
    induced_pi_functoriality,
    loop_report,
    mv_basepoints,
    mv_check,
    pasting_oracle,
    pi,
    pullback_xmod,
    roundtrip_two_groupoid,
    roundtrip_xmod,
    two_groupoid_report,
    validate_xmod,
    validate_xmod_morphism,
    weak_equivalence,
    xmod_nerve,
)

SUITES = ("axioms", "comma", "nerve", "appendix", "xmod", "mv", "monoidal")
MAX_VIOLATIONS = 20
ERROR = "error"


class Check:
    def __init__(self, cid, anchor, subject, fn):
        self.id, self.anchor, self.subject, self.fn = cid, anchor, subject, fn


def _report(subject, ok_pairs):
    """A report from (axiom, instance, lhs, rhs) checks."""
    rep = ValidationReport(subject)
    for ax, inst, lhs, rhs in ok_pairs:
        rep.check(ax, inst, lhs, rhs)
    return rep


# ---------------------------------------------------------------- fault injection

def corrupt_pentagon(B):
    """A copy of B whose associator differs at one triple, chosen so that a
    pentagon instance breaks; None when B has no parallel alternative."""
    B = B.materialize(name=f"{B.name}!pentagon")
    assoc = dict(B.assoc)
    for k in sorted(assoc, key=key):
        c = assoc[k]
        s, t = B.cells2[c]
        alts = [d for d in B.hom2(s, t) if d != c]
        if alts:
            assoc[k] = alts[0]
            return FiniteBicategory(B.objects, B.cells1, B.cells2, dict(B.vcomp), dict(B.hcomp1), dict(B.hcomp2),
                                    dict(B.id1), dict(B.id2), assoc, dict(B.lunit), dict(B.runit), name=B.name)
    return None


# ---------------------------------------------------------------- suites

def _axioms(c, inject=None):
    out = []
    for G in c.groups:
        out.append(Check(f"group/{G.name}", "group axioms", G.name, lambda G=G: validate_algebra(G)))
    for C in c.categories:
        out.append(Check(f"category/{C.name}", "category and groupoid axioms", C.name,
                         lambda C=C: validate_algebra(C)))
    for M in c.monoidals:
        out.append(Check(f"monoidal/{M.name}", "monoidal category: pentagon, triangle, naturality", M.name,
                         lambda M=M: validate_monoidal(M)))
    Bs = list(c.bicategories)
    if inject == "pentagon":
        bad = [corrupt_pentagon(B) for B in Bs]
        Bs = [b for b in bad if b is not None][:1] + Bs
    for B in Bs:
        out.append(Check(f"bicategory/{B.name}", "bicategory: pentagon, triangle, interchange, unit and "
                         "associator naturality", B.name, lambda B=B: validate_bicategory(B)))
    seen = set()
    for i, (F, Fp) in enumerate(c.comma_pairs):
        for j, G in enumerate((F, Fp)):
            if id(G) in seen:
                continue
            seen.add(id(G))
            out.append(Check(f"lax/{i}.{j}/{G.name}", f"{G.direction} functor axioms", G.name,
                             lambda G=G: validate_lax(G)))
    return out


def _comma(c, inject=None):
    out = []
    for i, (F, Fp) in enumerate(c.comma_pairs):
        subj = f"{F.name}|{Fp.name}"
        state = {}

        def build(F=F, Fp=Fp, state=state):
            if "C" not in state:
                state["C"], _ = comma(F, Fp)
                state["lifts"] = bar_lift(F, Fp, state["C"])
            return state["C"], state["lifts"]

        def axioms(build=build):
            C, _ = build()
            rep = ValidationReport(f"comma {C.name}")
            rep.extend(validate_bicategory(C))
            rep.extend(validate_lax(C.P), "P.")
            rep.extend(validate_lax(C.Pp), "P'.")
            return rep

        def squares(F=F, Fp=Fp, build=build):
            C, _ = build()
            return pullback_square_check(F, Fp, C)

        def lemma(F=F, Fp=Fp, build=build):
            C, lifts = build()
            rep = pullback_lemma_check(F, Fp, C=C, lifts=lifts)
            for a in F.source.objects:
                rep.extend(pullback_lemma_check(F, Fp, K=inclusion_J(a, F, Fp, C), C=C, lifts=lifts), f"J{a}.")
            return rep
        out.append(Check(f"comma/{i}/axioms", "homotopy pullback bicategory: full axiom suite with projections",
                         subj, axioms))
        out.append(Check(f"comma/{i}/squares", "the two pullback squares through the lifted functors",
                         subj, squares))
        out.append(Check(f"comma/{i}/lemma", "pullback lemma: mediating functor, its equations and uniqueness",
                         subj, lemma))
    for B in c.bicategories:
        def homs(B=B):
            rep = ValidationReport(f"b|b' against hom-categories of {B.name}")
            for b in B.objects:
                for bp in B.objects:
                    rep.extend(hom_iso(B, b, bp)[0], f"{b},{bp}.")
            return rep
        out.append(Check(f"hom-iso/{B.name}", "b|b' is isomorphic to the hom-category B(b,b')", B.name, homs))
    from .algebra import GroupoidFunctor, indiscrete_groupoid
    from .bicategory import discrete_bicategory
    P = indiscrete_groupoid([0, 1])
    Q = c.discrete_categories[0]
    SP, SQ = discrete_bicategory(P), discrete_bicategory(Q)
    Phi = GroupoidFunctor(Q, P, {0: 0, 1: 1, 2: 1}, {m: (m[0] if m[0] < 2 else 1, m[1] if m[1] < 2 else 1)
                                                     for m in Q.morphisms}, name="collapse")
    Id = GroupoidFunctor(P, P, {x: x for x in P.objects}, {m: m for m in P.morphisms}, name="1")
    out.append(Check("comma/classical", "discrete inputs reduce to the classical comma category",
                     "collapse|1", lambda: compare_with_classical(Phi, Id, SQ, SP, SP)))
    return out


def _nerve(c, inject=None):
    out = []
    for B in c.bicategories:
        for v in VARIANTS:
            out.append(Check(f"gnerve/{B.name}/{v}", "geometric nerve: simplicial identities through dimension 4",
                             B.name, lambda B=B, v=v: validate_simplicial(geometric_nerve(B, v, 4))))
    for C in c.discrete_categories:
        for v in VARIANTS:
            out.append(Check(f"gnerve-discrete/{C.name}/{v}", "geometric nerves of a discrete bicategory are "
                             "the ordinary nerve", C.name, lambda C=C, v=v: compare_with_ordinary(C, v, 4)))
    for B in c.bicategories:
        out.append(Check(f"grothendieck/{B.name}", "Grothendieck nerve: chi invertible, natural, unital and a "
                         "cocycle through N = 3", B.name, lambda B=B: grothendieck_nerve(B, 3).check(3)))
        out.append(Check(f"grothendieck-faces/{B.name}", "Grothendieck nerve: faces compose adjacent 1-cells, "
                         "degeneracies insert identities", B.name, lambda B=B: grothendieck_faces(B, 3)))
        out.append(Check(f"ner-identity/{B.name}", "Ner 1 = 1", B.name, lambda B=B: nerve_identity_check(B, 3)))
    for i, (F, Fp) in enumerate(c.lax_pairs):
        out.append(Check(f"ner-functor/{i}", "Ner F' Ner F = Ner(F'F) on objects, morphisms and constraints",
                         f"{Fp.name}.{F.name}", lambda F=F, Fp=Fp: nerve_functoriality(F, Fp, 3)))
    return out


def grothendieck_faces(B, N):
    """Faces and degeneracies of the Grothendieck nerve on objects, against
    composition of adjacent 1-cells and insertion of identities."""
    G = grothendieck_nerve(B, N)
    rep = ValidationReport(f"Grothendieck faces of {B.name}")

    def vert(L, i, p, x):
        if p == 0:
            return x[0]
        return B.s1(L[0]) if i == 0 else B.t1(L[i - 1])

    def as_obj(L, b):
        return (b,) if not L else tuple(reversed(L))
    for p in range(N + 1):
        for x in G.objects(p):
            L = [] if p == 0 else list(reversed(x))
            for i in range(p + 1):
                if p >= 1:
                    if i == 0:
                        want = as_obj(L[1:], B.t1(L[0]))
                    elif i == p:
                        want = as_obj(L[:-1], B.s1(L[-1]))
                    else:
                        want = as_obj(L[:i - 1] + [B.h(L[i], L[i - 1])] + L[i + 1:], None)
                    rep.check("face", (p, i, x), G.face(p, i, x), want)
                if p < N:
                    want = tuple(reversed(L[:i] + [B.i1(vert(L, i, p, x))] + L[i:]))
                    rep.check("degeneracy", (p, i, x), G.degeneracy(p, i, x), want)
    return rep


def _appendix(c, inject=None):
    out = []
    for B in c.bicategories:

        def adj(B=B):
            rep = ValidationReport(f"free-category adjunction into {B.name}")
            for p in range(4):
                g = linear_graph(p)
                A = graph_adjunction(g, B)
                extra = [simplex_on_free(x, B, p) for x in geometric_simplices(B, "lax", p)[p][:64]]
                rep.extend(A.check(extra), f"p{p}.")
            return rep

        def bij(B=B):
            rep = ValidationReport(f"hom-set bijection J_p -| R_p for {B.name}")
            for p in range(4):
                rep.extend(adjunction_bijection(B, p), f"p{p}.")
            return rep
        out.append(Check(f"adjunction/{B.name}", "RJ = 1, nu J = 1, R nu = 1; J(f) unitary pseudo", B.name, adj))
        out.append(Check(f"adjunction-bijection/{B.name}", "icons J_p x => F against maps x => R_p F, p <= 3",
                         B.name, bij))
        out.append(Check(f"projection-R/{B.name}", "projection R: icon categories to the Grothendieck nerve is "
                         "pseudo-simplicial", B.name, lambda B=B: nerve_projection(B, 3).check(3)))
    return out


def _xmod(c, inject=None):
    out = []
    for X in c.xmods + c.large_xmods:
        def core(X=X):
            rep = ValidationReport(f"crossed module {X.name}")
            rep.extend(validate_xmod(X))
            K = beta(X)
            rep.extend(two_groupoid_report(K), "beta.")
            rep.extend(validate_bicategory(K), "beta.")
            rep.extend(roundtrip_xmod(X)[0], "roundtrip-X.")
            rep.extend(roundtrip_two_groupoid(K)[0], "roundtrip-K.")
            return rep
        out.append(Check(f"xmod/{X.name}", "crossed module axioms, Ker d central, Im d normal, beta a 2-groupoid, "
                         "beta and its inverse", X.name, core))
        out.append(Check(f"loop/{X.name}", "loop groupoid: pi0 = pi1 and Aut(1) = pi2", X.name,
                         lambda X=X: _all_objects(X, loop_report)))
    for X in c.xmods:
        def nerve(X=X):
            rep = ValidationReport(f"nerves of {X.name}")
            T = xmod_nerve(X, 4)
            rep.extend(compare_nerves(X, 4, T=T)[0])
            rep.extend(validate_simplicial(T), "nerve.")
            for n in range(1, 4):
                for k in range(n + 1):
                    rep.extend(kan_check(T, n, k))
            if all(X.group(a).order() == 1 for a in X.P.objects):
                rep.extend(compare_with_ordinary_nerve(X, 4, T), "ordinary.")
            return rep
        out.append(Check(f"xmod-nerve/{X.name}", "normal lax nerve of beta against the nerve of the crossed "
                         "module through dimension 4; Kan for n <= 3", X.name, nerve))
    for X in c.large_xmods:
        out.append(Check(f"xmod-nerve-3/{X.name}", "normal lax nerve of beta against the nerve of the crossed "
                         "module through dimension 3", X.name, lambda X=X: compare_nerves(X, 3)[0]))
    out.append(Check("pasting/(S3,S3,id)", "horizontal composite in beta against pasting", "(S3,S3,id)",
                     lambda: pasting_oracle(c.large_xmods[0])))
    for p in c.xmod_pairs:
        for side in ("left", "right"):
            M = p[side]
            out.append(Check(f"xmod-morphism/{p['name']}/{side}", "crossed module morphism: natural, d-square, "
                             "beta strict 2-functor, induced maps functorial", M.name,
                             lambda M=M: _morphism_checks(M)))
    return out


def _all_objects(X, fn):
    rep = ValidationReport(f"{fn.__name__} on {X.name}")
    for a in X.P.objects:
        rep.extend(fn(X, a), f"{a}.")
    return rep


def _morphism_checks(M):
    from .bicategory import compose_lax, lax_difference
    rep = ValidationReport(f"morphism {M.name}")
    rep.extend(validate_xmod_morphism(M))
    if rep.violations:
        return rep
    bM = beta_on_morphism(M)
    rep.extend(validate_lax(bM), "beta.")
    one = identity_xmod(M.source)
    d = lax_difference(beta_on_morphism(compose_xmod(M, one)), compose_lax(bM, beta_on_morphism(one)))
    if d is not None:
        rep.add("beta-functorial", d[:2], d[2], d[3])
    rep.extend(induced_pi_functoriality(M, one), "pi.")
    return rep


def _mv(c, inject=None):
    out = []
    for p in c.xmod_pairs:
        M, Mp = p["left"], p["right"]

        def hpb(M=M, Mp=Mp, fib=p["fibration_leg"], name=p["name"]):
            rep = ValidationReport(f"homotopy pullback {name}")
            Z, pr, prp = homotopy_pullback_xmod(M, Mp)
            rep.extend(validate_xmod(Z), "hpb.")
            rep.extend(validate_xmod_morphism(pr), "pi.")
            rep.extend(validate_xmod_morphism(prp), "pi'.")
            W, j = pullback_xmod(M, Mp, Z)
            rep.extend(validate_xmod(W), "pullback.")
            rep.extend(validate_xmod_morphism(j), "canonical.")
            legs = (fibration_xmod(M), fibration_xmod(Mp))
            rep.check("fibration-leg", (name,), any(legs), fib)
            if fib:
                ok, det = weak_equivalence(j)
                rep.check("pi0-bijection", (name,), det["pi0_bijective"], True)
                for a, v in det["pi1_iso"].items():
                    rep.check("pi1-iso", (name, a), v, True)
                for a, v in det["pi2_iso"].items():
                    rep.check("pi2-iso", (name, a), v, True)
                rep.check("weak-equivalence", (name,), ok, True)
            return rep

        def mv(M=M, Mp=Mp, name=p["name"]):
            rep = ValidationReport(f"Mayer-Vietoris {name}")
            Z = homotopy_pullback_xmod(M, Mp)[0]
            pts = mv_basepoints(M, Mp)
            rep.check("basepoints", (name,), bool(pts), True)
            for a, ap in pts:
                rep.extend(mv_check(M, Mp, a, ap, Z), f"{a},{ap}.")
            return rep
        out.append(Check(f"hpb/{p['name']}", "homotopy pullback crossed module, strict pullback and the "
                         "canonical morphism (weak equivalence with a fibration leg)", p["name"], hpb))
        out.append(Check(f"mv/{p['name']}", "Mayer-Vietoris sequence exact at every joint", p["name"], mv))
    ex2 = c.examples["example-ii"]

    def ex2_values():
        Z = homotopy_pullback_xmod(*ex2)[0]
        W, _ = pullback_xmod(*ex2, Z)
        o = Z.P.objects[0]
        prof = pi(Z)
        return _report("example (ii) values", [
            ("hpb-fibre-order", (), Z.group(o).order(), 4),
            ("pullback-fibre-order", (), W.group(W.P.objects[0]).order(), 2),
            ("pi-orders", (), prof.orders(o), (1, 1, 2))])
    out.append(Check("example-ii/values", "example (ii): fibres and homotopy groups", "example-ii", ex2_values))
    ex1 = c.examples["example-i"]

    def ex1_values():
        Z = homotopy_pullback_xmod(*ex1)[0]
        prof = pi(Z)
        return _report("example (i) values", [
            ("objects", (), len(Z.P.objects), 2),
            ("contractible", (), sorted(prof.orders(o) for o in Z.P.objects), [(1, 1, 1)] * 2)])
    out.append(Check("example-i/values", "example (i): the homotopy pullback of groups", "example-i", ex1_values))
    return out


def _monoidal(c, inject=None):
    out = []
    for i, (F, Fp) in enumerate(c.monoidal_pairs):
        def same(F=F, Fp=Fp):
            SF, SFp = sigma_pair(F, Fp)
            rep = ValidationReport(f"monoidal fibre {F.name}|{Fp.name}")
            rep.extend(validate_lax(SF), "SF.")
            rep.extend(validate_lax(SFp), "SF'.")
            X = monoidal_fibre(F, Fp)
            Y = comma(SF, SFp)[0]
            rep.check("cellwise-equal", (F.name, Fp.name), bicategories_equal(X, Y), True)
            return rep
        out.append(Check(f"monoidal-fibre/{i}", "monoidal fibre equals the comma of the deloopings", f"{F.name}|"
                         f"{Fp.name}", same))
    for M in c.monoidals:
        def reg(M=M):
            r = regularity_check(M)
            group = all(M.C.inverse(f) is not None for f in M.C.morphisms) and len(M.C.morphisms) == len(M.C.objects)
            rep = ValidationReport(f"regularity of {M.name}")
            if group and _is_group_like(M):
                rep.check("regular", (M.name,), r["regular"], True)
                rep.check("categorical-group", (M.name,), r["categorical_group"], True)
            elif not _is_group_like(M):
                rep.check("categorical-group", (M.name,), r["categorical_group"], False)
            return rep
        out.append(Check(f"regularity/{M.name}", "discrete monoidal groups are regular categorical groups",
                         M.name, reg))
    for M in c.monoidals[:2]:
        def trans(M=M):
            I = unit_functor(M)
            rep = ValidationReport(f"tensor translations of {M.name}")
            for m in M.C.objects:
                for side in ("left", "right"):
                    rep.extend(validate_lax(tensor_translation(m, side, I)), f"{m}.{side}.")
            return rep
        out.append(Check(f"translation/{M.name}", "tensor translations are strict 2-endofunctors", M.name, trans))
    return out


def _is_group_like(M):
    """Discrete (only identities) with every object invertible under the tensor."""
    objs = M.C.objects
    return all(any(M.t(m, n) == M.unit for n in objs) for m in objs)


BUILDERS = {"axioms": _axioms, "comma": _comma, "nerve": _nerve, "appendix": _appendix, "xmod": _xmod,
            "mv": _mv, "monoidal": _monoidal}


# ---------------------------------------------------------------- running

def build_checks(name, seed=0, inject=None):
    c = generate_corpus(seed)
    names = SUITES if name == "all" else (name,)
    out = []
    for n in names:
        if n not in BUILDERS:
            raise ValueError(f"unknown suite {n!r}; choose from {', '.join(SUITES + ('all',))}")
        for ch in BUILDERS[n](c, inject):
            ch.id = f"{n}/{ch.id}"
            out.append(ch)
    return out


def run_check(ch):
    try:
        rep = ch.fn()
        status = rep.status
        vs = [v.as_json() for v in rep.sorted_violations()]
    except ResourceLimit as exc:
        status, vs = LIMITED, [{"axiom": "resource-limit", "kind": "resource", "instance": [], "lhs": str(exc),
                                "rhs": None}]
    except Exception as exc:  # reported, not raised: one broken check must not hide the rest
        status, vs = ERROR, [{"axiom": "exception", "kind": "error", "instance": [],
                              "lhs": f"{type(exc).__name__}: {exc}", "rhs": None}]
    return {"id": ch.id, "anchor": ch.anchor, "subject": ch.subject, "status": status,
            "violation_count": len(vs), "violations": to_json(vs[:MAX_VIOLATIONS])}


_WORKER = {}


def _run_index(args):
    name, seed, inject, idx, limit = args
    if limit is not None:
        os.environ["HOFIB_MAX_CELLS"] = str(limit)
    k = (name, seed, inject)
    if k not in _WORKER:
        _WORKER.clear()
        _WORKER[k] = build_checks(name, seed, inject)
    return run_check(_WORKER[k][idx])


def run_suite(name, seed=0, jobs=1, max_cells=None, inject=None, progress=None):
    """Run a suite; returns the report.v1 document.  Results are ordered by
    check position regardless of scheduling."""
    saved = os.environ.get("HOFIB_MAX_CELLS")
    if max_cells is not None:
        os.environ["HOFIB_MAX_CELLS"] = str(max_cells)
    try:
        return _run(name, seed, jobs, max_cells, inject, progress)
    finally:
        if saved is None:
            os.environ.pop("HOFIB_MAX_CELLS", None)
        else:
            os.environ["HOFIB_MAX_CELLS"] = saved


def _run(name, seed, jobs, max_cells, inject, progress):
    checks = build_checks(name, seed, inject)
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_run_index, [(name, seed, inject, i, max_cells) for i in range(len(checks))]))
    else:
        results = []
        for ch in checks:
            r = run_check(ch)
            results.append(r)
            if progress:
                progress(r)
    statuses = {r["status"] for r in results}
    status = next((s for s in (INVALID, ERROR, LIMITED) if s in statuses), VALID)
    summary = {s: sum(1 for r in results if r["status"] == s) for s in (VALID, INVALID, ERROR, LIMITED)}
    return {"schema": "report.v1", "suite": name, "seed": seed, "status": status, "summary": summary,
            "checks": results}


def exit_code(doc):
    return {VALID: 0, INVALID: 1, LIMITED: 2, ERROR: 2}[doc["status"]]


def first_failure(doc):
    for r in doc["checks"]:
        if r["status"] != VALID:
            v = r["violations"][0] if r["violations"] else {}
            return f"{r['id']}: {r['status']} ({v.get('axiom')} at {v.get('instance')})"
    return None

