"""Deterministic corpus of small structures for the check suites."""

import random
from dataclasses import dataclass, field

from .algebra import (
    GroupoidFunctor,
    cyclic,
    dihedral,
    group_groupoid,
    indiscrete_groupoid,
    ordinal,
    symmetric,
    trivial_group,
)
from .bicategory import (
    OPLAX,
    as_direction,
    discrete_bicategory,
    identity_lax,
    monotone_as_lax,
    terminal_bicategory,
)
from .monoidal import (
    constant_monoidal,
    delooping,
    discrete_monoidal_group,
    group_hom_monoidal,
    identity_monoidal,
    ordered_monoid,
    trivial_monoidal,
    truncated_monoid,
    unit_functor,
    z2_strict_2group,
    z2_twisted,
)
from .xmod import (
    STAR,
    XmodMorphism,
    abelian_xmod,
    conjugation_xmod,
    constant_fiber_xmod,
    identity_xmod,
    normal_inclusion_xmod,
    trivial_fiber_xmod,
    trivial_xmod,
    xmod_hom_of_groups,
    xmod_of_groups,
    xmod_point,
)


@dataclass
class CorpusSpec:
    seed: int = 0
    max_objects: int = 4
    max_cells_per_hom: int = 12
    include: tuple = ("algebra", "bicategories", "comma", "monoidal", "nerve", "xmod")


class BoundsExceeded(ValueError):
    pass


@dataclass
class Corpus:
    spec: CorpusSpec
    groups: list = field(default_factory=list)
    categories: list = field(default_factory=list)
    monoidals: list = field(default_factory=list)
    bicategories: list = field(default_factory=list)
    nerve_bicategories: list = field(default_factory=list)
    discrete_categories: list = field(default_factory=list)
    comma_pairs: list = field(default_factory=list)
    monoidal_pairs: list = field(default_factory=list)
    lax_pairs: list = field(default_factory=list)
    xmods: list = field(default_factory=list)
    large_xmods: list = field(default_factory=list)
    xmod_pairs: list = field(default_factory=list)
    examples: dict = field(default_factory=dict)

    def names(self):
        """Stable summary used to compare corpora."""
        out = {}
        for k in ("groups", "categories", "monoidals", "bicategories", "nerve_bicategories",
                  "discrete_categories", "xmods", "large_xmods"):
            out[k] = [x.name for x in getattr(self, k)]
        out["comma_pairs"] = [(a.name, b.name) for a, b in self.comma_pairs]
        out["monoidal_pairs"] = [(a.name, b.name) for a, b in self.monoidal_pairs]
        out["lax_pairs"] = [(a.name, b.name) for a, b in self.lax_pairs]
        out["xmod_pairs"] = [(p["name"], p["left"].name, p["right"].name) for p in self.xmod_pairs]
        out["examples"] = sorted(self.examples)
        return out


def _check_bounds(c, spec):
    def over(what, n, bound):
        if n > bound:
            raise BoundsExceeded(f"{what}: {n} > {bound}")
    for C in c.categories + c.discrete_categories:
        over(f"objects of {C.name}", len(C.objects), spec.max_objects)
        for x in C.objects:
            for y in C.objects:
                over(f"{C.name}({x},{y})", len(C.hom(x, y)), spec.max_cells_per_hom)
    for B in c.bicategories:
        over(f"objects of {B.name}", len(B.objects), spec.max_objects)
        for x in B.objects:
            for y in B.objects:
                hom = B.hom1(x, y)
                over(f"{B.name}({x},{y})", len(hom), spec.max_cells_per_hom)
                for f in hom:
                    for g in hom:
                        over(f"{B.name}({f},{g})", len(B.hom2(f, g)), spec.max_cells_per_hom)
    for X in c.xmods + c.large_xmods:
        over(f"objects of {X.name}", len(X.P.objects), spec.max_objects)
        for a in X.P.objects:
            over(f"fibre of {X.name} at {a}", X.group(a).order(), spec.max_cells_per_hom)
            over(f"automorphisms of {a} in {X.name}", len(X.P.hom(a, a)), spec.max_cells_per_hom)


def _one_object_trivial_fibre(G):
    return trivial_fiber_xmod(group_groupoid(G, STAR), name=f"(1,{G.name},1)")


def _base_hom(X, Y, f, name):
    """Morphism of trivial-fibre crossed modules from a base functor."""
    F = GroupoidFunctor(X.P, Y.P, {a: a if a in Y.P.objects else STAR for a in X.P.objects}, f, name=name)
    if set(F.obj.values()) - set(Y.P.objects):
        raise ValueError("object map leaves the target")
    return XmodMorphism(X, Y, F, {a: {0: 0} for a in X.P.objects}, name=name)


def generate_corpus(spec=None):
    """The corpus for a seed.  Seed-independent core plus a few seeded extras."""
    if spec is None or isinstance(spec, int):
        spec = CorpusSpec(seed=spec or 0)
    rng = random.Random(spec.seed)
    c = Corpus(spec)
    Z2, Z3, Z4 = cyclic(2), cyclic(3), cyclic(4)
    n_extra = rng.choice([2, 3, 4, 5])
    Zn = cyclic(n_extra)

    # algebra
    c.groups = [trivial_group(), Z2, Z3, Z4, dihedral(4), symmetric(3), Zn]
    c.categories = [ordinal(2), indiscrete_groupoid([0, 1]), indiscrete_groupoid([0, 1, 2]),
                    group_groupoid(Z2), group_groupoid(Z3)]
    c.discrete_categories = [ordinal(2), indiscrete_groupoid([0, 1]), group_groupoid(Z2)]

    # monoidal categories and bicategories
    W, W0, O, T2 = z2_twisted(), z2_strict_2group(), ordered_monoid(2), truncated_monoid(2)
    MZ2, MZ4, MZn, One = (discrete_monoidal_group(Z2), discrete_monoidal_group(Z4),
                          discrete_monoidal_group(Zn), trivial_monoidal())
    c.monoidals = [W, W0, O, T2, MZ2, MZ4, One]
    SW, SW0, SO, ST2, SZ2, SZ4 = (delooping(W), delooping(W0), delooping(O), delooping(T2),
                                  delooping(MZ2), delooping(MZ4))
    D2 = discrete_bicategory(ordinal(2))
    D1 = discrete_bicategory(ordinal(1))
    DI = discrete_bicategory(indiscrete_groupoid([0, 1]))
    T = terminal_bicategory()
    c.nerve_bicategories = [SW, SO, ST2, SZ2, D2, DI, T]
    c.bicategories = c.nerve_bicategories + [SW0, SZ4]

    # comma pairs (lax, oplax)
    IW = unit_functor(W).sigma(delooping(One), SW)
    E = constant_monoidal(One, O, 2, ("le", 2, 2), ("le", 0, 2)).sigma(delooping(One), SO)
    IO = unit_functor(O).sigma(delooping(One), SO)
    mod2 = group_hom_monoidal(MZ4, MZ2, {g: g % 2 for g in range(4)}, name="mod2")
    Smod2 = mod2.sigma(SZ4, SZ2)
    c.comma_pairs = [
        (identity_lax(SW), identity_lax(SW, OPLAX)),
        (IW, identity_lax(SW, OPLAX)),
        (IW, as_direction(IW, OPLAX)),
        (E, as_direction(IO, OPLAX)),
        (Smod2, identity_lax(SZ2, OPLAX)),
        (monotone_as_lax((0, 2), 1, 2, D1, D2), monotone_as_lax((1, 2), 1, 2, D1, D2, OPLAX)),
        (identity_lax(DI), identity_lax(DI, OPLAX)),
        (identity_lax(SW0), identity_lax(SW0, OPLAX)),
    ]
    modn = {g: g % n_extra for g in range(4)} if 4 % n_extra == 0 else None
    if modn is not None and n_extra != 2:
        hom = group_hom_monoidal(MZ4, MZn, modn, name=f"mod{n_extra}")
        c.comma_pairs.append((hom.sigma(SZ4, delooping(MZn)), identity_lax(delooping(MZn), OPLAX)))

    # monoidal pairs for the monoidal fibre
    c.monoidal_pairs = [
        (identity_monoidal(W), identity_monoidal(W)),
        (unit_functor(W), identity_monoidal(W)),
        (identity_monoidal(MZ2), identity_monoidal(MZ2)),
        (mod2, identity_monoidal(MZ2)),
        (identity_monoidal(O), unit_functor(O)),
    ]

    # composable lax pairs for nerve functoriality
    C2 = constant_monoidal(O, O, 2, ("le", 2, 2), ("le", 0, 2)).sigma(SO, SO)
    c.lax_pairs = [(E, C2), (C2, C2), (identity_lax(SO), C2), (IW, identity_lax(SW))]

    # crossed modules
    P2 = indiscrete_groupoid([0, 1])
    X_Z3 = conjugation_xmod(Z3)
    c.xmods = [
        trivial_xmod(), trivial_fiber_xmod(P2), _one_object_trivial_fibre(Z2),
        abelian_xmod(Z2), abelian_xmod(Z3), xmod_of_groups(Z2, Z2, {0: 0, 1: 0}, name="(Z2,Z2,0)"),
        conjugation_xmod(Z2), X_Z3, constant_fiber_xmod(P2, Z2),
    ]
    if n_extra <= 4:
        c.xmods.append(abelian_xmod(Zn, name=f"({Zn.name},1,0)*"))
    S3 = symmetric(3)
    A3 = [p for p in S3.elements if sum(1 for i in range(3) if p[i] != i) in (0, 3)]
    c.large_xmods = [conjugation_xmod(S3), normal_inclusion_xmod(S3, A3), conjugation_xmod(Z4),
                     xmod_of_groups(Z2, Z4, {0: 0, 1: 2}, name="(Z2,Z4,incl)"),
                     xmod_of_groups(Z4, Z2, {g: g % 2 for g in range(4)}, name="(Z4,Z2,mod2)")]

    # Example (i): F = identity of Z2, F' the trivial group into Z2
    PZ2, PT = _one_object_trivial_fibre(Z2), _one_object_trivial_fibre(trivial_group())
    ex_i = (_base_hom(PZ2, PZ2, {0: 0, 1: 1}, "id"), _base_hom(PT, PZ2, {0: 0}, "triv"))
    # Example (ii): A = A' = B = Z2, phi = phi' = id over the trivial base
    A = abelian_xmod(Z2)
    ex_ii = (xmod_hom_of_groups(A, A, {0: 0}, {0: 0, 1: 1}, "id"),
             xmod_hom_of_groups(abelian_xmod(Z2), A, {0: 0}, {0: 0, 1: 1}, "id'"))
    c.examples = {"example-i": ex_i, "example-ii": ex_ii}
    C4, C2x = c.large_xmods[2], conjugation_xmod(Z2)
    q = xmod_hom_of_groups(C4, C2x, {g: g % 2 for g in range(4)}, {g: g % 2 for g in range(4)}, "q")
    P1 = trivial_fiber_xmod(group_groupoid(trivial_group(), STAR), name="(1,1,1)'")
    to_pt = XmodMorphism(trivial_fiber_xmod(P2), P1,
                         GroupoidFunctor(P2, P1.P, {0: STAR, 1: STAR}, {m: 0 for m in P2.morphisms}, name="!"),
                         {0: {0: 0}, 1: {0: 0}}, name="!")
    incl = _base_hom(PT, PZ2, {0: 0}, "incl")
    c.xmod_pairs = [
        {"name": "example-i", "left": ex_i[0], "right": ex_i[1], "fibration_leg": True},
        {"name": "example-ii", "left": ex_ii[0], "right": ex_ii[1], "fibration_leg": True},
        {"name": "mod2-mod2", "left": q, "right": q, "fibration_leg": True},
        {"name": "id-point", "left": identity_xmod(X_Z3), "right": xmod_point(X_Z3, STAR), "fibration_leg": True},
        {"name": "groupoid-point", "left": to_pt, "right": xmod_point(P1, STAR), "fibration_leg": True},
        {"name": "incl-incl", "left": incl, "right": _base_hom(PT, PZ2, {0: 0}, "incl'"), "fibration_leg": False},
    ]
    if n_extra in (2, 4):
        An = abelian_xmod(Zn)
        phi = xmod_hom_of_groups(An, abelian_xmod(Z2), {0: 0}, {g: g % 2 for g in range(n_extra)}, "red")
        c.xmod_pairs.append({"name": f"{Zn.name}-reduction", "left": phi, "right": phi, "fibration_leg": True})
    _check_bounds(c, spec)
    return c
